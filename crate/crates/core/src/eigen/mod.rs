//! Weight theory for a commuting family of derivations or automorphisms
//! acting diagonally on the generators of a tower.

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::{group_from_generators, Ambient, GroupStructure, Weight};
use crate::endo::{apply_map, commuting_check, conj_automorphism, LinMap, MapKind};
use crate::error::{Error, Result};
use crate::exact::Exponents;
use crate::tower::{Element, Terms, Tower};

/// Search radius (sum of absolute exponents) for section monomials.
pub const SECTION_DEGREE_BOUND: i64 = 16;
/// Degree bound for the weight-zero monomials describing `D_0`.
pub const CONSTANTS_DEGREE_BOUND: i64 = 6;

/// A tower with a commuting family of maps under which every generator is
/// a simultaneous eigenvector.
#[derive(Clone, Debug)]
pub struct WeightedTower {
    tower: Tower,
    maps: Vec<LinMap>,
    ambient: Ambient,
    gen_weights: Vec<Weight>,
}

impl WeightedTower {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn maps(&self) -> &[LinMap] {
        &self.maps
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// `(generator name, weight)` in tower order.
    pub fn generator_weights(&self) -> Vec<(String, Weight)> {
        self.tower
            .generator_names()
            .into_iter()
            .zip(self.gen_weights.iter().cloned())
            .collect()
    }

    fn ngens(&self) -> usize {
        self.gen_weights.len()
    }

    fn admissible(&self, g: usize) -> bool {
        self.tower.data().gen_invertible(g)
    }

    /// Weight of `x_1^e_1 ... x_N^e_N` over all generators, base first.
    fn flat_weight(&self, e: &[i64]) -> Weight {
        let a = self.ambient;
        let mut acc = a.identity();
        for (w, &k) in self.gen_weights.iter().zip(e) {
            if k != 0 {
                acc = a.combine(&acc, &a.power(w, &BigInt::from(k)));
            }
        }
        acc
    }

    /// The normal-form monomial with exponent vector `e`, coefficient 1.
    fn flat_monomial(&self, e: &[i64]) -> Result<Element> {
        let d = self.tower.data();
        let m = d.m();
        let coeff = d.base.monomial(&Exponents(e[..m].to_vec()), BigRational::one())?;
        let mut t = Terms::new();
        t.insert(Exponents(e[m..].to_vec()), coeff);
        Ok(Element::from_terms(&self.tower, t))
    }

    /// Splits `a` into single-monomial pieces with their flat exponents.
    fn pieces(&self, a: &Element) -> Result<Vec<(Vec<i64>, Element)>> {
        if !a.tower().same(&self.tower) {
            return Err(Error::OwnerMismatch);
        }
        let d = self.tower.data();
        let m = d.m();
        let base_trivial = self.gen_weights[..m].iter().all(|w| self.ambient.is_identity(w));
        let mut out = Vec::new();
        for (e, c) in a.raw() {
            let atoms = match d.base.atoms(c) {
                Some(atoms) => atoms,
                None if base_trivial => {
                    let mut t = Terms::new();
                    t.insert(e.clone(), c.clone());
                    let mut flat = vec![0; m];
                    flat.extend_from_slice(&e.0);
                    out.push((flat, Element::from_terms(&self.tower, t)));
                    continue;
                }
                None => return Err(Error::NotHomogeneous(a.to_string())),
            };
            for (b, k) in atoms {
                let mut t = Terms::new();
                t.insert(e.clone(), d.base.monomial(&b, k)?);
                let mut flat = b.0.clone();
                flat.extend_from_slice(&e.0);
                out.push((flat, Element::from_terms(&self.tower, t)));
            }
        }
        Ok(out)
    }

    /// Applies every map and checks the eigenvalue equation for `w`.
    fn confirm(&self, a: &Element, w: &Weight) -> Result<bool> {
        for (m, lambda) in self.maps.iter().zip(&w.0) {
            if apply_map(m, a)? != a.scale(lambda) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Computes the weight of every generator, failing unless each is a
/// simultaneous eigenvector of the commuting family `maps`.
pub fn weigh_generators(tower: &Tower, maps: &[LinMap]) -> Result<WeightedTower> {
    let kind = maps.first().map(LinMap::kind).unwrap_or(MapKind::Derivation);
    if maps
        .iter()
        .any(|m| m.kind() != kind || m.kind() == MapKind::AntiAutomorphism)
    {
        return Err(Error::MixedKinds);
    }
    if maps.iter().any(|m| !m.owner().same(tower)) {
        return Err(Error::OwnerMismatch);
    }
    let verdict = commuting_check(maps)?;
    if let Some((first, second, generator)) = verdict.witness {
        return Err(Error::NotCommuting {
            first,
            second,
            generator,
        });
    }
    let t = maps.len();
    let ambient = match kind {
        MapKind::Automorphism => Ambient::Multiplicative(t),
        _ => Ambient::Additive(t),
    };
    let gens = tower.generators();
    let mut gen_weights = Vec::with_capacity(gens.len());
    for g in &gens {
        let mut w = Vec::with_capacity(t);
        for (i, m) in maps.iter().enumerate() {
            let img = apply_map(m, g)?;
            let lambda = eigenvalue(g, &img).ok_or_else(|| Error::NotDiagonal {
                generator: g.to_string(),
                map: i,
            })?;
            w.push(lambda);
        }
        gen_weights.push(Weight(w));
    }
    Ok(WeightedTower {
        tower: tower.clone(),
        maps: maps.to_vec(),
        ambient,
        gen_weights,
    })
}

/// The scalar `c` with `img = c * g` for a generator `g`.
fn eigenvalue(g: &Element, img: &Element) -> Option<BigRational> {
    if img.is_zero() {
        return Some(BigRational::zero());
    }
    let (e, c) = g.terms().next()?;
    let base = &g.tower().data().base;
    let (gb, k) = base.atoms(c)?.into_iter().next()?;
    let (_, ik) = base.atoms(img.raw().get(e)?)?.into_iter().find(|(b, _)| *b == gb)?;
    let lambda = ik / k;
    (img == &g.scale(&lambda)).then_some(lambda)
}

/// Weight of a homogeneous element; zero is reported with weight 0.
pub fn weight_of(wt: &WeightedTower, a: &Element) -> Result<Weight> {
    let pieces = wt.pieces(a)?;
    let mut weights = pieces.iter().map(|(e, _)| wt.flat_weight(e));
    let Some(first) = weights.next() else {
        return Ok(wt.ambient.identity());
    };
    if weights.any(|w| w != first) || !wt.confirm(a, &first)? {
        return Err(Error::NotHomogeneous(a.to_string()));
    }
    Ok(first)
}

/// Homogeneous decomposition of an element.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedElement {
    pub components: BTreeMap<Weight, Element>,
}

impl GradedElement {
    pub fn sum(&self, tower: &Tower) -> Element {
        self.components
            .values()
            .fold(tower.zero(), |acc, c| &acc + c)
    }
}

pub fn homogeneous_components(wt: &WeightedTower, a: &Element) -> Result<GradedElement> {
    let mut components: BTreeMap<Weight, Element> = BTreeMap::new();
    for (e, piece) in wt.pieces(a)? {
        let w = wt.flat_weight(&e);
        let slot = components.entry(w).or_insert_with(|| wt.tower.zero());
        *slot = &*slot + &piece;
    }
    Ok(GradedElement { components })
}

/// `Ev(Δ)` as the group closure of the generator weights.
#[derive(Clone, Debug)]
pub struct EvStructure {
    pub monoid_generators: Vec<Weight>,
    pub group: GroupStructure,
}

pub fn ev_structure(wt: &WeightedTower) -> Result<EvStructure> {
    let mut gens: Vec<Weight> = Vec::new();
    let mut push = |w: Weight| {
        if !gens.contains(&w) {
            gens.push(w);
        }
    };
    for w in &wt.gen_weights {
        push(w.clone());
    }
    for (g, w) in wt.gen_weights.iter().enumerate() {
        if wt.admissible(g) {
            push(wt.ambient.inverse(w));
        }
    }
    let group = group_from_generators(&gens, wt.ambient)?;
    Ok(EvStructure {
        monoid_generators: gens,
        group,
    })
}

impl EvStructure {
    pub fn report(&self, wt: &WeightedTower) -> Vec<(String, String)> {
        let ambient = match wt.ambient {
            Ambient::Additive(t) => format!("additive({t})"),
            Ambient::Multiplicative(t) => format!("multiplicative({t})"),
        };
        let mut out = vec![("ambient".to_string(), ambient)];
        for (g, w) in wt.generator_weights() {
            out.push((format!("weight.{g}"), w.to_string()));
        }
        out.push(("monoid".into(), weight_list(&self.monoid_generators)));
        out.push(("group".into(), self.group.report_line()));
        out.push(("rank".into(), self.group.rank.to_string()));
        let t: Vec<String> = self.group.invariant_factors.iter().map(|d| d.to_string()).collect();
        out.push(("invariant_factors".into(), format!("[{}]", t.join(", "))));
        out.push(("torsion_order".into(), self.group.torsion_order().to_string()));
        out
    }
}

fn weight_list(ws: &[Weight]) -> String {
    let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn element_list(es: &[Element]) -> String {
    let parts: Vec<String> = es.iter().map(|e| e.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Every exponent vector of absolute degree `d`, admissible for `wt`,
/// best candidate first: fewer negative entries, then lexicographically
/// larger.
fn exponent_shell(wt: &WeightedTower, d: i64) -> Vec<Vec<i64>> {
    fn go(wt: &WeightedTower, g: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if g == wt.ngens() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            go(wt, g + 1, left - k, cur, out);
            cur.pop();
            if k > 0 && wt.admissible(g) {
                cur.push(-k);
                go(wt, g + 1, left - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(wt, 0, d, &mut Vec::new(), &mut out);
    let negs = |e: &Vec<i64>| e.iter().filter(|&&x| x < 0).count();
    out.sort_by(|a, b| negs(a).cmp(&negs(b)).then_with(|| b.cmp(a)));
    out
}

/// Deterministic monomial representative `u_λ`: least absolute degree,
/// then fewest negative exponents, then lexicographically largest.
pub fn section_monomial(wt: &WeightedTower, lambda: &Weight) -> Result<Element> {
    wt.ambient.check(lambda)?;
    if wt.ambient.is_identity(lambda) {
        return Ok(wt.tower.one());
    }
    for d in 1..=SECTION_DEGREE_BOUND {
        for e in exponent_shell(wt, d) {
            if wt.flat_weight(&e) == *lambda {
                return wt.flat_monomial(&e);
            }
        }
    }
    Err(Error::NoRepresentative(lambda.to_string()))
}

/// Memoized section over `Ev(Δ)`.
#[derive(Debug)]
pub struct Section {
    wt: WeightedTower,
    ev: EvStructure,
    reps: Mutex<BTreeMap<Weight, Element>>,
}

impl Section {
    pub fn new(wt: &WeightedTower) -> Result<Section> {
        Ok(Section {
            wt: wt.clone(),
            ev: ev_structure(wt)?,
            reps: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn weighted(&self) -> &WeightedTower {
        &self.wt
    }

    pub fn ev(&self) -> &EvStructure {
        &self.ev
    }

    pub fn get(&self, lambda: &Weight) -> Result<Element> {
        if let Some(u) = self.reps.lock().unwrap().get(lambda) {
            return Ok(u.clone());
        }
        if !self.ev.group.contains(lambda) {
            return Err(Error::NoRepresentative(lambda.to_string()));
        }
        let u = section_monomial(&self.wt, lambda)?;
        self.reps.lock().unwrap().insert(lambda.clone(), u.clone());
        Ok(u)
    }

    /// Weights `sum c_i v_i + t` with `sum |c_i| <= h` over the free basis
    /// and all torsion elements `t`.
    pub fn ball(&self, h: i64) -> Vec<Weight> {
        let a = self.wt.ambient;
        let g = &self.ev.group;
        let mut coeffs: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..g.rank {
            let mut next = Vec::new();
            for c in &coeffs {
                let used: i64 = c.iter().map(|x: &i64| x.abs()).sum();
                for k in -(h - used)..=(h - used) {
                    let mut c = c.clone();
                    c.push(k);
                    next.push(c);
                }
            }
            coeffs = next;
        }
        let mut out = Vec::new();
        for t in g.torsion_elements() {
            for c in &coeffs {
                let mut w = t.clone();
                for (k, v) in c.iter().zip(&g.free_basis) {
                    w = a.combine(&w, &a.power(v, &BigInt::from(*k)));
                }
                out.push(w);
            }
        }
        out
    }
}

/// The weight-zero `c` with `u_λ u_μ = c u_{λ+μ}`.
pub fn cocycle(section: &Section, lambda: &Weight, mu: &Weight) -> Result<Element> {
    let a = section.wt.ambient;
    let ul = section.get(lambda)?;
    let um = section.get(mu)?;
    let sum = a.combine(lambda, mu);
    let us = section.get(&sum)?;
    let inv = us.inverse().ok_or_else(|| Error::SectionNotUnit(us.to_string()))?;
    let prod = ul.mul(&um)?;
    let c = prod.mul(&inv)?;
    debug_assert!(c.mul(&us)? == prod);
    Ok(c)
}

/// Coherence of the cocycle table on `(λ, μ, ν)`:
/// `(λ,μ)(λ+μ,ν) = u_λ (μ,ν) u_λ^-1 (λ,μ+ν)`.
pub fn cocycle_coherent(section: &Section, l: &Weight, m: &Weight, n: &Weight) -> Result<bool> {
    let a = section.wt.ambient;
    let lm = a.combine(l, m);
    let mn = a.combine(m, n);
    let left = cocycle(section, l, m)?.mul(&cocycle(section, &lm, n)?)?;
    let ul = section.get(l)?;
    let ul_inv = ul.inverse().ok_or_else(|| Error::SectionNotUnit(ul.to_string()))?;
    let twisted = ul.mul(&cocycle(section, m, n)?)?.mul(&ul_inv)?;
    let right = twisted.mul(&cocycle(section, l, &mn)?)?;
    Ok(left == right)
}

/// Skew Laurent presentation of the eigen-algebra over a subgroup of
/// `Ev(Δ)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: GroupStructure,
    pub basis: Vec<Weight>,
    pub representatives: Vec<Element>,
    pub sigma_actions: Vec<LinMap>,
    /// `(i, j, λ_ij)` for `j < i`, zero-based.
    pub commutation: Vec<(usize, usize, Element)>,
    pub torsion: Vec<(Weight, Element)>,
    pub constants: Vec<Element>,
    pub constants_commutative: bool,
}

/// Weight-zero monomials of absolute degree at most
/// [`CONSTANTS_DEGREE_BOUND`] that are not sums of two others.
fn constant_generators(wt: &WeightedTower) -> Result<(Vec<Element>, bool)> {
    let zero = wt.ambient.identity();
    let mut seen: Vec<Vec<i64>> = Vec::new();
    let mut found: Vec<Vec<i64>> = Vec::new();
    for d in 1..=CONSTANTS_DEGREE_BOUND {
        for e in exponent_shell(wt, d) {
            if wt.flat_weight(&e) != zero {
                continue;
            }
            let split = seen.iter().any(|f| {
                let rest: Vec<i64> = e.iter().zip(f).map(|(x, y)| x - y).collect();
                seen.contains(&rest)
            });
            if !split {
                found.push(e.clone());
            }
            seen.push(e);
        }
    }
    let gens = found
        .iter()
        .map(|e| wt.flat_monomial(e))
        .collect::<Result<Vec<_>>>()?;
    let mut commutative = true;
    'outer: for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.mul(b)? != b.mul(a)? {
                commutative = false;
                break 'outer;
            }
        }
    }
    Ok((gens, commutative))
}

pub fn presentation(section: &Section, subgroup: Option<&[Weight]>) -> Result<Presentation> {
    let wt = &section.wt;
    let group = match subgroup {
        None => section.ev.group.clone(),
        Some(gens) => {
            for g in gens {
                if !section.ev.group.contains(g) {
                    return Err(Error::NoRepresentative(g.to_string()));
                }
            }
            group_from_generators(gens, wt.ambient)?
        }
    };
    let basis = group.free_basis.clone();
    let mut representatives = Vec::new();
    let mut sigma_actions = Vec::new();
    for v in &basis {
        let u = section.get(v)?;
        if u.inverse().is_none() {
            return Err(Error::SectionNotUnit(u.to_string()));
        }
        sigma_actions.push(conj_automorphism(&u)?);
        representatives.push(u);
    }
    let mut commutation = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            let (ui, uj) = (&representatives[i], &representatives[j]);
            let lam = ui.mul(uj)?.mul(&ui.inverse().unwrap())?.mul(&uj.inverse().unwrap())?;
            if ui.mul(uj)? != lam.mul(uj)?.mul(ui)? || !wt.ambient.is_identity(&weight_of(wt, &lam)?) {
                return Err(Error::SectionNotUnit(format!("{ui}, {uj}")));
            }
            commutation.push((i, j, lam));
        }
    }
    let torsion = group
        .torsion_elements()
        .into_iter()
        .map(|t| Ok((t.clone(), section.get(&t)?)))
        .collect::<Result<Vec<_>>>()?;
    let (constants, constants_commutative) = constant_generators(wt)?;
    Ok(Presentation {
        group,
        basis,
        representatives,
        sigma_actions,
        commutation,
        torsion,
        constants,
        constants_commutative,
    })
}

impl Presentation {
    pub fn report(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("group".to_string(), self.group.report_line()),
            ("rank".into(), self.basis.len().to_string()),
            ("basis".into(), weight_list(&self.basis)),
        ];
        for (i, (u, s)) in self.representatives.iter().zip(&self.sigma_actions).enumerate() {
            out.push((format!("rep.{}", i + 1), u.to_string()));
            out.push((format!("sigma.{}", i + 1), s.to_string()));
        }
        for (i, j, l) in &self.commutation {
            out.push((format!("lambda.{}.{}", i + 1, j + 1), l.to_string()));
        }
        let t: Vec<Weight> = self.torsion.iter().map(|(w, _)| w.clone()).collect();
        let reps: Vec<Element> = self.torsion.iter().map(|(_, u)| u.clone()).collect();
        out.push(("torsion".into(), weight_list(&t)));
        out.push(("torsion_reps".into(), element_list(&reps)));
        out.push(("constants".into(), element_list(&self.constants)));
        out.push(("constants_commutative".into(), self.constants_commutative.to_string()));
        out
    }
}

/// Left multiplication by an element of `D_T` in the basis `{u_λ : λ ∈ T}`.
#[derive(Clone, Debug)]
pub struct DivisionCheck {
    /// `matrix[i][j]` is the `u_i` coordinate of `a u_j`.
    pub matrix: Vec<Vec<Element>>,
    pub determinant: Element,
    pub invertible: bool,
}

#[derive(Clone, Debug)]
pub struct TorsionBlock {
    pub basis: Vec<(Weight, Element)>,
    pub dimension: usize,
    pub constants: Vec<Element>,
    pub constants_commutative: bool,
    pub division: Option<DivisionCheck>,
}

/// The torsion block `D_T`; with `a` given, also the left-multiplication
/// matrix of `a` over `D_0` and its determinant.
pub fn torsion_block(section: &Section, a: Option<&Element>) -> Result<TorsionBlock> {
    let wt = &section.wt;
    let torsion = section.ev.group.torsion_elements();
    let basis = torsion
        .iter()
        .map(|t| Ok((t.clone(), section.get(t)?)))
        .collect::<Result<Vec<_>>>()?;
    let (constants, constants_commutative) = constant_generators(wt)?;
    let division = match a {
        None => None,
        Some(_) if !constants_commutative => {
            return Err(Error::NoncommutativeConstants(element_list(&constants)));
        }
        Some(a) => Some(left_multiplication(wt, &basis, a)?),
    };
    Ok(TorsionBlock {
        dimension: basis.len(),
        basis,
        constants,
        constants_commutative,
        division,
    })
}

fn left_multiplication(wt: &WeightedTower, basis: &[(Weight, Element)], a: &Element) -> Result<DivisionCheck> {
    let inverses = basis
        .iter()
        .map(|(_, u)| u.inverse().ok_or_else(|| Error::SectionNotUnit(u.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let k = basis.len();
    let mut matrix = vec![vec![wt.tower.zero(); k]; k];
    for (j, (_, uj)) in basis.iter().enumerate() {
        let prod = a.mul(uj)?;
        for (w, comp) in homogeneous_components(wt, &prod)?.components {
            let i = basis
                .iter()
                .position(|(t, _)| *t == w)
                .ok_or_else(|| Error::NotHomogeneous(a.to_string()))?;
            matrix[i][j] = comp.mul(&inverses[i])?;
        }
    }
    let determinant = det(&matrix, &wt.tower)?;
    Ok(DivisionCheck {
        invertible: !determinant.is_zero(),
        determinant,
        matrix,
    })
}

/// Laplace expansion along the first row; entries must commute.
fn det(m: &[Vec<Element>], tower: &Tower) -> Result<Element> {
    match m.len() {
        0 => Ok(tower.one()),
        1 => Ok(m[0][0].clone()),
        n => {
            let mut acc = tower.zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Element>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&det(&minor, tower)?)?;
                acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            Ok(acc)
        }
    }
}

/// An eigenvector `v = s^-1 w` with unit denominator.
#[derive(Clone, Debug)]
pub struct EigenFraction {
    pub denominator: Element,
    pub numerator: Element,
    pub value: Element,
    pub weight: Weight,
}

impl EigenFraction {
    pub const SCOPE: &'static str = "unit-denominator scope";
}

pub fn eigen_fraction(wt: &WeightedTower, s: &Element, w: &Element) -> Result<EigenFraction> {
    let s_inv = s.inverse().ok_or_else(|| Error::NotAUnit(s.to_string()))?;
    let ws = weight_of(wt, s)?;
    let ww = weight_of(wt, w)?;
    let value = s_inv.mul(w)?;
    debug_assert!(s.mul(&value)? == *w);
    let weight = wt.ambient.combine(&ww, &wt.ambient.inverse(&ws));
    Ok(EigenFraction {
        denominator: s.clone(),
        numerator: w.clone(),
        value,
        weight,
    })
}
