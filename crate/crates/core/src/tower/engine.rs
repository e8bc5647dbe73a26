//! Normal-form arithmetic and extension of generator maps to whole
//! elements.
//!
//! Elements are finite sums `c * x_1^e_1 ... x_n^e_n` with coefficients on
//! the left. A product is normalized by pushing generators of the left
//! factor into the right one, innermost first, using
//! `x a = sigma(a) x + delta(a)` and `x^-1 a = sigma^-1(a) x^-1`.

use std::collections::btree_map::Entry;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use super::{Mutation, Terms, TowerData};
use crate::error::{Error, Result};
use crate::exact::{BasePoly, Coeff, Exponents, RatFun, UniPoly};

/// One generator or its inverse. Generators are indexed globally: base
/// variables first, then tower levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inv: false }
    }
}

#[derive(Clone, Copy)]
pub(crate) enum Images<'a> {
    Identity,
    Given(&'a [Terms]),
}

/// How a map on generators extends to products.
#[derive(Clone, Copy)]
pub(crate) enum Ext<'a> {
    Hom(Images<'a>),
    Anti(Images<'a>),
    /// `d(ab) = d(a) b + sigma(a) d(b)`.
    SigmaDer { sigma: Images<'a>, delta: &'a [Terms] },
}

pub(crate) fn add_term(acc: &mut Terms, e: Exponents, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match acc.entry(e) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub(crate) fn add_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (e, c) in b {
        add_term(&mut out, e.clone(), c.clone());
    }
    out
}

pub(crate) fn add_into(acc: &mut Terms, b: Terms) {
    for (e, c) in b {
        add_term(acc, e, c);
    }
}

pub(crate) fn neg_terms(a: &Terms) -> Terms {
    a.iter().map(|(e, c)| (e.clone(), c.neg())).collect()
}

pub(crate) fn sub_terms(a: &Terms, b: &Terms) -> Terms {
    add_terms(a, &neg_terms(b))
}

fn scalar_frac(t: &Terms) -> Option<RatFun> {
    let mut it = t.iter();
    match (it.next(), it.next()) {
        (None, _) => Some(RatFun::zero()),
        (Some((e, Coeff::Frac(f))), None) if e.is_zero() => Some(f.clone()),
        _ => None,
    }
}

fn horner(p: &UniPoly, s: &RatFun) -> RatFun {
    p.coeffs()
        .iter()
        .rev()
        .fold(RatFun::zero(), |acc, c| acc.mul(s).add(&RatFun::constant(c.clone())))
}

/// `f(s)`.
fn substitute(f: &RatFun, s: &RatFun) -> Result<RatFun> {
    let den = horner(f.den(), s).inverse().ok_or(Error::DivisionByZero)?;
    Ok(horner(f.num(), s).mul(&den))
}

/// `delta(p)` for the sigma-derivation with `x -> s`, `delta(x) = a` on a
/// commutative coefficient field: `delta(x^k) = a sum_i s^i x^(k-1-i)`.
fn sder_poly(p: &UniPoly, s: &RatFun, a: &RatFun) -> RatFun {
    if a.is_zero() {
        return RatFun::zero();
    }
    let x = RatFun::from_poly(UniPoly::x());
    if *s == x {
        return a.mul(&RatFun::from_poly(p.derivative()));
    }
    let mut acc = RatFun::zero();
    // geometric sums g_k = sum_{i<k} s^i x^(k-1-i), g_{k+1} = x g_k + s^k
    let mut g = RatFun::zero();
    let mut s_pow = RatFun::one();
    for (k, c) in p.coeffs().iter().enumerate() {
        if k > 0 {
            acc = acc.add(&g.scale(c));
        }
        g = g.mul(&x).add(&s_pow);
        s_pow = s_pow.mul(s);
    }
    a.mul(&acc)
}

pub(crate) fn scale_terms(a: &Terms, q: &BigRational) -> Terms {
    let mut out = Terms::new();
    for (e, c) in a {
        add_term(&mut out, e.clone(), c.scale(q));
    }
    out
}

/// `c * t` for a base coefficient `c`.
fn lmul_coeff(c: &Coeff, t: &Terms) -> Terms {
    let mut out = Terms::new();
    for (e, d) in t {
        add_term(&mut out, e.clone(), c.mul(d));
    }
    out
}

impl TowerData {
    pub(crate) fn n(&self) -> usize {
        self.levels.len()
    }

    pub(crate) fn m(&self) -> usize {
        self.base.nvars()
    }

    pub(crate) fn ngens(&self) -> usize {
        self.m() + self.n()
    }

    pub(crate) fn const_terms(&self, c: Coeff) -> Terms {
        let mut t = Terms::new();
        add_term(&mut t, Exponents::zero(self.n()), c);
        t
    }

    pub(crate) fn one_terms(&self) -> Terms {
        self.const_terms(self.base.one())
    }

    pub(crate) fn letter_terms(&self, l: Letter) -> Terms {
        let m = self.m();
        let k = if l.inv { -1 } else { 1 };
        if l.gen < m {
            let mut e = Exponents::zero(m);
            e.0[l.gen] = k;
            let c = self
                .base
                .monomial(&e, BigRational::one())
                .expect("inverse letters only for invertible variables");
            self.const_terms(c)
        } else {
            let mut e = Exponents::zero(self.n());
            e.0[l.gen - m] = k;
            let mut t = Terms::new();
            t.insert(e, self.base.one());
            t
        }
    }

    pub(crate) fn gen_terms(&self, g: usize) -> Terms {
        self.letter_terms(Letter::new(g))
    }

    /// Letters spelling a normal monomial: base letters (polynomial bases
    /// only) followed by level letters in tower order.
    pub(crate) fn letters(&self, base: Option<&Exponents>, gens: &Exponents) -> Vec<Letter> {
        let mut out = Vec::new();
        let push = |out: &mut Vec<Letter>, gen: usize, e: i64| {
            for _ in 0..e.unsigned_abs() {
                out.push(Letter { gen, inv: e < 0 });
            }
        };
        if let Some(b) = base {
            for (i, &e) in b.0.iter().enumerate() {
                push(&mut out, i, e);
            }
        }
        let m = self.m();
        for (j, &e) in gens.0.iter().enumerate() {
            push(&mut out, m + j, e);
        }
        out
    }

    fn is_normal_word(letters: &[Letter]) -> bool {
        letters.windows(2).all(|w| {
            w[0].gen < w[1].gen || (w[0].gen == w[1].gen && w[0].inv == w[1].inv)
        })
    }

    /// Product of the letters, in this order.
    pub(crate) fn word_terms(&self, letters: &[Letter]) -> Result<Terms> {
        if letters.is_empty() {
            return Ok(self.one_terms());
        }
        if self.base.is_ratfun() || !Self::is_normal_word(letters) {
            let mut acc = self.one_terms();
            for l in letters {
                acc = self.mul(&acc, &self.letter_terms(*l))?;
            }
            return Ok(acc);
        }
        let m = self.m();
        let mut b = Exponents::zero(m);
        let mut g = Exponents::zero(self.n());
        for l in letters {
            let k = if l.inv { -1 } else { 1 };
            if l.gen < m {
                b.0[l.gen] += k;
            } else {
                g.0[l.gen - m] += k;
            }
        }
        let mut t = Terms::new();
        t.insert(g, Coeff::Poly(BasePoly::monomial(b, BigRational::one())));
        Ok(t)
    }

    pub(crate) fn mul(&self, a: &Terms, b: &Terms) -> Result<Terms> {
        let mut acc = Terms::new();
        if b.is_empty() {
            return Ok(acc);
        }
        for (e, c) in a {
            let mut r = b.clone();
            for j in (0..self.n()).rev() {
                if e.0[j] != 0 {
                    r = self.lmul_pow(j, e.0[j], &r)?;
                }
            }
            add_into(&mut acc, lmul_coeff(c, &r));
        }
        Ok(acc)
    }

    pub(crate) fn lmul_pow(&self, level: usize, k: i64, t: &Terms) -> Result<Terms> {
        let mut r = t.clone();
        for _ in 0..k.unsigned_abs() {
            r = self.lmul_gen(level, k < 0, &r)?;
        }
        Ok(r)
    }

    /// `x_level^{±1} * t`.
    fn lmul_gen(&self, level: usize, inv: bool, t: &Terms) -> Result<Terms> {
        let n = self.n();
        let mut acc = Terms::new();
        for (f, d) in t {
            let mut low = f.clone();
            for x in &mut low.0[level..] {
                *x = 0;
            }
            let step = if inv { -1 } else { 1 };
            let mut shifted = f.0[level..].to_vec();
            shifted[0] += step;
            let same = f.0[level..].to_vec();
            match d {
                Coeff::Poly(p) => {
                    for (bm, q) in p.terms() {
                        let parts = self.twist(level, inv, bm, &low)?;
                        let q = &Coeff::Poly(BasePoly::constant(self.m(), q.clone()));
                        append_high(&mut acc, &parts.0, level, &shifted, q);
                        append_high(&mut acc, &parts.1, level, &same, q);
                    }
                }
                Coeff::Frac(_) => {
                    let mut mono = Terms::new();
                    mono.insert(low.clone(), d.clone());
                    let (s, dl) = self.twist_terms(level, inv, &mono)?;
                    let one = self.base.one();
                    append_high(&mut acc, &s, level, &shifted, &one);
                    append_high(&mut acc, &dl, level, &same, &one);
                }
            }
            debug_assert_eq!(f.len(), n);
        }
        Ok(acc)
    }

    /// `(sigma(t), delta(t))` for `t = v^bm x^low`, cached.
    fn twist(&self, level: usize, inv: bool, bm: &Exponents, low: &Exponents) -> Result<Arc<(Terms, Terms)>> {
        let key = (level, inv, bm.clone(), low.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let mut mono = Terms::new();
        mono.insert(low.clone(), Coeff::Poly(BasePoly::monomial(bm.clone(), BigRational::one())));
        let parts = Arc::new(self.twist_terms(level, inv, &mono)?);
        self.cache.lock().unwrap().insert(key, parts.clone());
        Ok(parts)
    }

    fn twist_terms(&self, level: usize, inv: bool, t: &Terms) -> Result<(Terms, Terms)> {
        let lv = &self.levels[level];
        let sigma = if inv {
            lv.sigma_inverse_images()
        } else {
            lv.sigma_images()
        };
        let s = self.ext_apply(Ext::Hom(sigma), t)?;
        let d = if inv || lv.delta_zero {
            Terms::new()
        } else {
            self.ext_apply(
                Ext::SigmaDer {
                    sigma: lv.sigma_images(),
                    delta: &lv.delta.images,
                },
                t,
            )?
        };
        Ok((s, d))
    }

    pub(crate) fn unit_inverse(&self, t: &Terms) -> Option<Terms> {
        if t.len() != 1 {
            return None;
        }
        let (e, c) = t.iter().next().unwrap();
        if e.0.iter().enumerate().any(|(j, &k)| k != 0 && !self.levels[j].invertible) {
            return None;
        }
        let cinv = self.base.unit_inverse(c)?;
        let mut r = self.const_terms(cinv);
        for j in 0..self.n() {
            if e.0[j] != 0 {
                r = self.lmul_pow(j, -e.0[j], &r).ok()?;
            }
        }
        Some(r)
    }

    fn inverse_or_err(&self, t: &Terms) -> Result<Terms> {
        self.unit_inverse(t)
            .ok_or_else(|| Error::NotAUnit(self.render(t)))
    }

    fn image(&self, imgs: Images, l: Letter) -> Result<Terms> {
        match imgs {
            Images::Identity => Ok(self.letter_terms(l)),
            Images::Given(v) => {
                if l.inv {
                    self.inverse_or_err(&v[l.gen])
                } else {
                    Ok(v[l.gen].clone())
                }
            }
        }
    }

    fn twist_dropped(&self) -> bool {
        self.mutation == Mutation::DropLeibnizTwist
    }

    /// The map applied to a product of letters.
    pub(crate) fn ext_word(&self, ext: Ext, letters: &[Letter]) -> Result<Terms> {
        match ext {
            Ext::Hom(Images::Identity) => self.word_terms(letters),
            Ext::Hom(imgs) => {
                let mut acc = self.one_terms();
                for l in letters {
                    acc = self.mul(&acc, &self.image(imgs, *l)?)?;
                }
                Ok(acc)
            }
            Ext::Anti(imgs) => {
                let mut acc = self.one_terms();
                for l in letters.iter().rev() {
                    acc = self.mul(&acc, &self.image(imgs, *l)?)?;
                }
                Ok(acc)
            }
            Ext::SigmaDer { sigma, delta } => {
                let sigma = if self.twist_dropped() { Images::Identity } else { sigma };
                let mut acc = Terms::new();
                let mut prefix = self.one_terms();
                for (j, l) in letters.iter().enumerate() {
                    let dl = self.letter_delta(sigma, delta, *l)?;
                    if !dl.is_empty() {
                        let suffix = self.word_terms(&letters[j + 1..])?;
                        let piece = self.mul(&self.mul(&prefix, &dl)?, &suffix)?;
                        add_into(&mut acc, piece);
                    }
                    if j + 1 < letters.len() {
                        prefix = match sigma {
                            Images::Identity => self.word_terms(&letters[..=j])?,
                            Images::Given(_) => self.mul(&prefix, &self.image(sigma, *l)?)?,
                        };
                    }
                }
                Ok(acc)
            }
        }
    }

    /// `delta(g)`, or `-sigma(g)^-1 delta(g) g^-1` for an inverse letter.
    fn letter_delta(&self, sigma: Images, delta: &[Terms], l: Letter) -> Result<Terms> {
        let d = &delta[l.gen];
        if !l.inv || d.is_empty() {
            return Ok(if l.inv { Terms::new() } else { d.clone() });
        }
        let s_inv = match sigma {
            Images::Identity => self.letter_terms(l),
            Images::Given(_) => {
                let s = self.image(sigma, Letter::new(l.gen))?;
                self.inverse_or_err(&s)?
            }
        };
        let g_inv = self.letter_terms(l);
        Ok(neg_terms(&self.mul(&self.mul(&s_inv, d)?, &g_inv)?))
    }

    /// The map applied to an arbitrary element.
    pub(crate) fn ext_apply(&self, ext: Ext, t: &Terms) -> Result<Terms> {
        if let Ext::Hom(Images::Identity) = ext {
            return Ok(t.clone());
        }
        let mut acc = Terms::new();
        for (e, c) in t {
            match c {
                Coeff::Poly(p) => {
                    for (bm, q) in p.terms() {
                        let w = self.ext_word(ext, &self.letters(Some(bm), e))?;
                        add_into(&mut acc, scale_terms(&w, q));
                    }
                }
                Coeff::Frac(f) => {
                    let x_letters = self.letters(None, e);
                    let piece = self.ext_frac_monomial(ext, f.num(), f.den(), &x_letters)?;
                    add_into(&mut acc, piece);
                }
            }
        }
        Ok(acc)
    }

    /// Univariate polynomial in the base variable, pushed through a homomorphism.
    fn hom_unipoly(&self, imgs: Images, p: &UniPoly) -> Result<Terms> {
        let x = self.image(imgs, Letter::new(0))?;
        let mut acc = Terms::new();
        let mut power = self.one_terms();
        for (k, c) in p.coeffs().iter().enumerate() {
            if k > 0 {
                power = self.mul(&power, &x)?;
            }
            add_into(&mut acc, scale_terms(&power, c));
        }
        Ok(acc)
    }

    fn sder_unipoly(&self, sigma: Images, delta: &[Terms], p: &UniPoly) -> Result<Terms> {
        let mut acc = Terms::new();
        for (k, c) in p.coeffs().iter().enumerate().skip(1) {
            let w = self.ext_word(Ext::SigmaDer { sigma, delta }, &vec![Letter::new(0); k])?;
            add_into(&mut acc, scale_terms(&w, c));
        }
        Ok(acc)
    }

    /// The image of the base variable when it is itself a coefficient.
    fn frac_image(&self, imgs: Images) -> Option<RatFun> {
        match imgs {
            Images::Identity => Some(RatFun::from_poly(UniPoly::x())),
            Images::Given(v) => scalar_frac(&v[0]),
        }
    }

    /// Commutative shortcut when `sigma(x)` and `delta(x)` are coefficients.
    fn ext_frac_scalar(&self, ext: Ext, f: &RatFun, x: &[Letter]) -> Result<Option<Terms>> {
        let frac = |g: RatFun| self.const_terms(Coeff::Frac(g));
        Ok(match ext {
            Ext::Hom(imgs) | Ext::Anti(imgs) => {
                let Some(s) = self.frac_image(imgs) else {
                    return Ok(None);
                };
                let c = frac(substitute(f, &s)?);
                let w = self.ext_word(ext, x)?;
                Some(match ext {
                    Ext::Hom(_) => self.mul(&c, &w)?,
                    _ => self.mul(&w, &c)?,
                })
            }
            Ext::SigmaDer { sigma, delta } => {
                let sigma = if self.twist_dropped() { Images::Identity } else { sigma };
                let (Some(s), Some(a)) = (self.frac_image(sigma), scalar_frac(&delta[0])) else {
                    return Ok(None);
                };
                let sf = substitute(f, &s)?;
                let dp = sder_poly(f.num(), &s, &a);
                let dq = sder_poly(f.den(), &s, &a);
                let q_inv = RatFun::from_poly(f.den().clone()).inverse().ok_or(Error::DivisionByZero)?;
                // delta(p/q) = (delta(p) - sigma(p/q) delta(q)) / q
                let dc = dp.sub(&sf.mul(&dq)).mul(&q_inv);
                let xw = self.word_terms(x)?;
                let dx = self.ext_word(ext, x)?;
                Some(add_terms(&self.mul(&frac(dc), &xw)?, &self.mul(&frac(sf), &dx)?))
            }
        })
    }

    /// `(num/den) * X` for a rational-function coefficient.
    fn ext_frac_monomial(&self, ext: Ext, num: &UniPoly, den: &UniPoly, x: &[Letter]) -> Result<Terms> {
        if let Some(f) = RatFun::new(num.clone(), den.clone()) {
            if let Some(t) = self.ext_frac_scalar(ext, &f, x)? {
                return Ok(t);
            }
        }
        let den_inv = |imgs: Images| -> Result<Terms> {
            let d = self.hom_unipoly(imgs, den)?;
            self.inverse_or_err(&d)
        };
        match ext {
            Ext::Hom(imgs) => {
                let c = self.mul(&self.hom_unipoly(imgs, num)?, &den_inv(imgs)?)?;
                self.mul(&c, &self.ext_word(ext, x)?)
            }
            Ext::Anti(imgs) => {
                let c = self.mul(&den_inv(imgs)?, &self.hom_unipoly(imgs, num)?)?;
                self.mul(&self.ext_word(ext, x)?, &c)
            }
            Ext::SigmaDer { sigma, delta } => {
                let sigma = if self.twist_dropped() { Images::Identity } else { sigma };
                let q_inv = self.inverse_or_err(&self.hom_unipoly(Images::Identity, den)?)?;
                let sp = self.hom_unipoly(sigma, num)?;
                let sq_inv = den_inv(sigma)?;
                let dp = self.sder_unipoly(sigma, delta, num)?;
                let dq = self.sder_unipoly(sigma, delta, den)?;
                // d(p q^-1) = d(p) q^-1 - sigma(p) sigma(q)^-1 d(q) q^-1
                let first = self.mul(&dp, &q_inv)?;
                let second = self.mul(&self.mul(&self.mul(&sp, &sq_inv)?, &dq)?, &q_inv)?;
                let dc = sub_terms(&first, &second);
                let xw = self.word_terms(x)?;
                let sc = self.mul(&sp, &sq_inv)?;
                let dx = self.ext_word(ext, x)?;
                Ok(add_terms(&self.mul(&dc, &xw)?, &self.mul(&sc, &dx)?))
            }
        }
    }
}

/// Adds `coeff * s'` where `s'` is `s` with exponents from `level` on
/// replaced by `high`.
fn append_high(acc: &mut Terms, s: &Terms, level: usize, high: &[i64], coeff: &Coeff) {
    for (g, c) in s {
        debug_assert!(g.0[level..].iter().all(|&x| x == 0), "image reaches above its level");
        let mut e = g.clone();
        e.0[level..].copy_from_slice(high);
        add_term(acc, e, coeff.mul(c));
    }
}
