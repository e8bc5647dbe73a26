use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A weight: an eigenvalue vector, one rational per map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<BigRational>);

impl Weight {
    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn from_ratios(v: &[(i64, i64)]) -> Self {
        Weight(v.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The group a weight lives in: `Q^t` under addition (derivations) or
/// `(Q*)^t` under multiplication (automorphisms).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    Additive(usize),
    Multiplicative(usize),
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match *self {
            Ambient::Additive(t) | Ambient::Multiplicative(t) => t,
        }
    }

    pub fn is_additive(&self) -> bool {
        matches!(self, Ambient::Additive(_))
    }

    pub fn identity(&self) -> Weight {
        match *self {
            Ambient::Additive(t) => Weight(vec![BigRational::zero(); t]),
            Ambient::Multiplicative(t) => Weight(vec![BigRational::one(); t]),
        }
    }

    pub fn combine(&self, a: &Weight, b: &Weight) -> Weight {
        let op = |x: &BigRational, y: &BigRational| match self {
            Ambient::Additive(_) => x + y,
            Ambient::Multiplicative(_) => x * y,
        };
        Weight(a.0.iter().zip(&b.0).map(|(x, y)| op(x, y)).collect())
    }

    pub fn inverse(&self, a: &Weight) -> Weight {
        Weight(
            a.0.iter()
                .map(|x| match self {
                    Ambient::Additive(_) => -x,
                    Ambient::Multiplicative(_) => x.recip(),
                })
                .collect(),
        )
    }

    /// `k * a` written additively.
    pub fn power(&self, a: &Weight, k: &BigInt) -> Weight {
        match self {
            Ambient::Additive(_) => {
                let k = BigRational::from_integer(k.clone());
                Weight(a.0.iter().map(|x| x * &k).collect())
            }
            Ambient::Multiplicative(_) => {
                let e = k.to_i32().expect("exponent out of range");
                Weight(a.0.iter().map(|x| num_traits::pow::Pow::pow(x, e)).collect())
            }
        }
    }

    pub fn is_identity(&self, a: &Weight) -> bool {
        *a == self.identity()
    }

    pub fn check(&self, a: &Weight) -> Result<()> {
        if a.len() != self.dim() {
            return Err(Error::AmbientMismatch);
        }
        if !self.is_additive() && a.0.iter().any(Zero::is_zero) {
            return Err(Error::ZeroComponent);
        }
        Ok(())
    }
}

/// Encoding of an element of `(Q*)^t` in `(Z/2)^t ⊕ Z^{t×P}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeWeight {
    pub primes: Vec<BigUint>,
    pub signs: Vec<bool>,
    /// `exponents[k][p]` is the exponent of `primes[p]` in component `k`.
    pub exponents: Vec<Vec<BigInt>>,
}

impl MultiplicativeWeight {
    pub fn decode(&self) -> Weight {
        Weight(
            self.signs
                .iter()
                .zip(&self.exponents)
                .map(|(&neg, exps)| {
                    let mut v = BigRational::one();
                    for (p, e) in self.primes.iter().zip(exps) {
                        let p = BigRational::from_integer(BigInt::from(p.clone()));
                        let e = e.to_i32().expect("exponent out of range");
                        v *= num_traits::pow::Pow::pow(&p, e);
                    }
                    if neg {
                        -v
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// Group law in the encoding: signs xor, exponents add. Prime sets must agree.
    pub fn combine(&self, other: &MultiplicativeWeight) -> MultiplicativeWeight {
        assert_eq!(self.primes, other.primes, "prime sets differ");
        MultiplicativeWeight {
            primes: self.primes.clone(),
            signs: self.signs.iter().zip(&other.signs).map(|(a, b)| a ^ b).collect(),
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }
}

fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        let mut k = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        if k > 0 {
            out.push((p.clone(), k));
        }
        p += 1u32;
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}

fn primes_of(q: &BigRational) -> Vec<BigUint> {
    let mut out: Vec<BigUint> = factor(q.numer().magnitude()).into_iter().map(|(p, _)| p).collect();
    out.extend(factor(q.denom().magnitude()).into_iter().map(|(p, _)| p));
    out
}

/// Exponent of `p` in `q`, together with what is left after removing it.
fn valuation(q: &BigRational, p: &BigUint) -> (BigInt, BigRational) {
    let p = BigInt::from(p.clone());
    let (mut num, mut den) = (q.numer().clone(), q.denom().clone());
    let mut e = BigInt::zero();
    while !num.is_zero() && num.is_multiple_of(&p) {
        num /= &p;
        e += 1;
    }
    while den.is_multiple_of(&p) {
        den /= &p;
        e -= 1;
    }
    (e, BigRational::new(num, den))
}

fn encode_with_primes(q: &[BigRational], primes: &[BigUint]) -> Result<Option<MultiplicativeWeight>> {
    let mut signs = Vec::with_capacity(q.len());
    let mut exponents = Vec::with_capacity(q.len());
    for c in q {
        if c.is_zero() {
            return Err(Error::ZeroComponent);
        }
        signs.push(c.is_negative());
        let mut rest = c.abs();
        let mut row = Vec::with_capacity(primes.len());
        for p in primes {
            let (e, r) = valuation(&rest, p);
            row.push(e);
            rest = r;
        }
        if !rest.is_one() {
            return Ok(None);
        }
        exponents.push(row);
    }
    Ok(Some(MultiplicativeWeight {
        primes: primes.to_vec(),
        signs,
        exponents,
    }))
}

/// Encode a vector of nonzero rationals over the primes occurring in it.
pub fn encode_multiplicative(q: &[BigRational]) -> Result<MultiplicativeWeight> {
    if q.iter().any(Zero::is_zero) {
        return Err(Error::ZeroComponent);
    }
    let primes: BTreeSet<BigUint> = q.iter().flat_map(primes_of).collect();
    let primes: Vec<BigUint> = primes.into_iter().collect();
    Ok(encode_with_primes(q, &primes)?.expect("all primes present"))
}

/// Integer coordinates for weights of one ambient: additive weights are
/// scaled per coordinate to clear denominators, multiplicative ones use the
/// sign/prime-exponent encoding.
#[derive(Clone, Debug)]
struct Lattice {
    ambient: Ambient,
    scale: Vec<BigInt>,
    primes: Vec<BigUint>,
}

impl Lattice {
    fn for_generators(ambient: Ambient, gens: &[Weight]) -> Self {
        let t = ambient.dim();
        match ambient {
            Ambient::Additive(_) => {
                let scale = (0..t)
                    .map(|k| gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(g.0[k].denom())))
                    .collect();
                Lattice {
                    ambient,
                    scale,
                    primes: Vec::new(),
                }
            }
            Ambient::Multiplicative(_) => {
                let primes: BTreeSet<BigUint> =
                    gens.iter().flat_map(|g| g.0.iter().flat_map(primes_of)).collect();
                Lattice {
                    ambient,
                    scale: Vec::new(),
                    primes: primes.into_iter().collect(),
                }
            }
        }
    }

    fn width(&self) -> usize {
        let t = self.ambient.dim();
        match self.ambient {
            Ambient::Additive(_) => t,
            Ambient::Multiplicative(_) => t + t * self.primes.len(),
        }
    }

    /// Rows 2·e_k for each sign coordinate.
    fn relations(&self) -> Vec<Vec<BigInt>> {
        match self.ambient {
            Ambient::Additive(_) => Vec::new(),
            Ambient::Multiplicative(t) => (0..t)
                .map(|k| {
                    let mut r = vec![BigInt::zero(); self.width()];
                    r[k] = BigInt::from(2);
                    r
                })
                .collect(),
        }
    }

    /// `None` when the weight cannot lie in any subgroup this lattice sees.
    fn encode(&self, w: &Weight) -> Option<Vec<BigInt>> {
        match self.ambient {
            Ambient::Additive(_) => w
                .0
                .iter()
                .zip(&self.scale)
                .map(|(c, s)| {
                    let v = c * BigRational::from_integer(s.clone());
                    v.is_integer().then(|| v.to_integer())
                })
                .collect(),
            Ambient::Multiplicative(_) => {
                let m = encode_with_primes(&w.0, &self.primes).ok()??;
                let mut out: Vec<BigInt> = m
                    .signs
                    .iter()
                    .map(|&s| if s { BigInt::one() } else { BigInt::zero() })
                    .collect();
                for row in m.exponents {
                    out.extend(row);
                }
                Some(out)
            }
        }
    }

    fn decode(&self, v: &[BigInt]) -> Weight {
        match self.ambient {
            Ambient::Additive(_) => Weight(
                v.iter()
                    .zip(&self.scale)
                    .map(|(x, s)| BigRational::new(x.clone(), s.clone()))
                    .collect(),
            ),
            Ambient::Multiplicative(t) => {
                let p = self.primes.len();
                MultiplicativeWeight {
                    primes: self.primes.clone(),
                    signs: v[..t].iter().map(|s| s.is_odd()).collect(),
                    exponents: (0..t).map(|k| v[t + k * p..t + (k + 1) * p].to_vec()).collect(),
                }
                .decode()
            }
        }
    }
}

/// Coordinates of a group element against a [`GroupStructure`]'s
/// torsion generators (reduced mod the invariant factors) and free basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

/// Structure `T ⊕ Z^r` of the subgroup generated by a list of weights.
#[derive(Clone, Debug)]
pub struct GroupStructure {
    pub ambient: Ambient,
    pub rank: usize,
    /// `d_1 | d_2 | ...`, each at least 2.
    pub invariant_factors: Vec<BigInt>,
    pub free_basis: Vec<Weight>,
    pub torsion_generators: Vec<Weight>,
    pub generators: Vec<Weight>,
    /// Coordinates of each input generator.
    pub witnesses: Vec<Coordinates>,
    lattice: Lattice,
    /// Stacked generator and relation rows, with its Smith form.
    stacked_rows: usize,
    stacked: super::snf::SmithForm,
    /// `Q` from the Smith form of the kernel; columns give f-coordinates.
    kernel_v: IntMatrix,
    /// Positions (in f-coordinates) of torsion and free summands.
    torsion_slots: Vec<usize>,
    free_slots: Vec<usize>,
    /// Inverse of the chosen free basis in f-coordinates of `H/T`.
    free_change_inv: IntMatrix,
    /// Torsion f-coordinates of each chosen free basis vector.
    free_basis_torsion: Vec<Vec<BigInt>>,
}

impl GroupStructure {
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Integer combination `c` of the input generators hitting `w`, if any.
    fn solve(&self, w: &Weight) -> Option<Vec<BigInt>> {
        self.ambient.check(w).ok()?;
        let target = self.lattice.encode(w)?;
        let f = &self.stacked;
        // x·M = target  <=>  y·S = target·V with y = x·U^{-1}
        let tv = f.v.left_apply(&target);
        let rank = f.rank();
        let mut y = vec![BigInt::zero(); f.s.rows()];
        for (i, val) in tv.iter().enumerate() {
            if i < rank {
                let (q, r) = val.div_rem(&f.s[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !val.is_zero() {
                return None;
            }
        }
        let x = f.u.left_apply(&y);
        Some(x[..self.stacked_rows].to_vec())
    }

    fn f_coords(&self, c: &[BigInt]) -> Vec<BigInt> {
        self.kernel_v.left_apply(c)
    }

    /// Coordinates of `w`, or `None` if `w` is not in the group.
    pub fn decompose(&self, w: &Weight) -> Option<Coordinates> {
        let c = self.solve(w)?;
        Some(self.coords_from_combination(&c))
    }

    fn coords_from_combination(&self, c: &[BigInt]) -> Coordinates {
        let f = self.f_coords(c);
        let z: Vec<BigInt> = self.free_slots.iter().map(|&i| f[i].clone()).collect();
        let free = if z.is_empty() {
            Vec::new()
        } else {
            self.free_change_inv.left_apply(&z)
        };
        let torsion = self
            .torsion_slots
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let mut t = f[i].clone();
                for (j, wj) in free.iter().enumerate() {
                    t -= wj * &self.free_basis_torsion[j][k];
                }
                t.mod_floor(&self.invariant_factors[k])
            })
            .collect();
        Coordinates { torsion, free }
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.solve(w).is_some()
    }

    /// `sum t_i T_i + sum w_j v_j`.
    pub fn compose(&self, c: &Coordinates) -> Weight {
        let a = self.ambient;
        let mut acc = a.identity();
        for (t, g) in c.torsion.iter().zip(&self.torsion_generators) {
            acc = a.combine(&acc, &a.power(g, t));
        }
        for (w, v) in c.free.iter().zip(&self.free_basis) {
            acc = a.combine(&acc, &a.power(v, w));
        }
        acc
    }

    /// Every element of the torsion subgroup, in mixed-radix order.
    pub fn torsion_elements(&self) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut idx = vec![BigInt::zero(); self.invariant_factors.len()];
        loop {
            out.push(self.compose(&Coordinates {
                torsion: idx.clone(),
                free: vec![BigInt::zero(); self.rank],
            }));
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < self.invariant_factors[k] {
                    break;
                }
                idx[k] = BigInt::zero();
                k += 1;
            }
        }
    }

    /// Report line `T = Z/d1 ⊕ ...; rank r = N; basis = [...]`.
    pub fn report_line(&self) -> String {
        let t = if self.invariant_factors.is_empty() {
            "0".to_string()
        } else {
            self.invariant_factors
                .iter()
                .map(|d| format!("Z/{d}"))
                .collect::<Vec<_>>()
                .join(" ⊕ ")
        };
        let basis: Vec<String> = self.free_basis.iter().map(|w| w.to_string()).collect();
        format!("T = {t}; rank r = {}; basis = [{}]", self.rank, basis.join(", "))
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.report_line())
    }
}

fn left_kernel_projection(stacked: &super::snf::SmithForm, keep: usize) -> Vec<Vec<BigInt>> {
    let rank = stacked.rank();
    (rank..stacked.u.rows())
        .map(|i| stacked.u.row(i)[..keep].to_vec())
        .collect()
}

/// Greedy choice of generators forming part of a basis of the free
/// quotient, completed to a full basis. Returns the basis in
/// f-coordinates and the generator index each row came from.
fn choose_free_basis(free_coords: &[Vec<BigInt>], r: usize) -> (IntMatrix, Vec<Option<usize>>) {
    let mut chosen: Vec<usize> = Vec::new();
    for (j, row) in free_coords.iter().enumerate() {
        if chosen.len() == r {
            break;
        }
        let mut rows: Vec<Vec<BigInt>> = chosen.iter().map(|&i| free_coords[i].clone()).collect();
        rows.push(row.clone());
        let m = IntMatrix::from_rows(rows, r);
        let f = smith_normal_form(&m);
        if f.rank() == chosen.len() + 1 && f.diagonal().iter().all(One::is_one) {
            chosen.push(j);
        }
    }
    let mut rows: Vec<Vec<BigInt>> = chosen.iter().map(|&i| free_coords[i].clone()).collect();
    let mut origin: Vec<Option<usize>> = chosen.iter().map(|&i| Some(i)).collect();
    if chosen.len() < r {
        let c = IntMatrix::from_rows(rows.clone(), r);
        let f = smith_normal_form(&c);
        for i in chosen.len()..r {
            rows.push(f.v_inv.row(i).to_vec());
            origin.push(None);
        }
    }
    (IntMatrix::from_rows(rows, r), origin)
}

fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    // P m Q = I  =>  m^{-1} = Q P
    let f = smith_normal_form(m);
    debug_assert!(f.s == IntMatrix::identity(m.rows()));
    &f.v * &f.u
}

/// Structure of the subgroup generated by `gens` inside `ambient`.
pub fn group_from_generators(gens: &[Weight], ambient: Ambient) -> Result<GroupStructure> {
    for g in gens {
        ambient.check(g)?;
    }
    let lattice = Lattice::for_generators(ambient, gens);
    let n = lattice.width();
    let k = gens.len();
    let mut rows: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| lattice.encode(g).expect("generators encode over their own lattice"))
        .collect();
    rows.extend(lattice.relations());
    let stacked_matrix = IntMatrix::from_rows(rows, n);
    let stacked = smith_normal_form(&stacked_matrix);

    let kernel_rows = left_kernel_projection(&stacked, k);
    let kernel = IntMatrix::from_rows(kernel_rows, k);
    let kf = smith_normal_form(&kernel);
    let diag = kf.diagonal();
    let rho = diag.len();
    let kernel_v = kf.v.clone();
    let f_basis = &kf.v_inv;

    let gen_matrix = IntMatrix::from_rows(
        (0..k).map(|j| stacked_matrix.row(j).to_vec()).collect(),
        n,
    );
    let image = |coeffs: &[BigInt]| lattice.decode(&gen_matrix.left_apply(coeffs));

    let torsion_slots: Vec<usize> = (0..rho).filter(|&i| diag[i] > BigInt::one()).collect();
    let invariant_factors: Vec<BigInt> = torsion_slots.iter().map(|&i| diag[i].clone()).collect();
    let torsion_generators: Vec<Weight> = torsion_slots.iter().map(|&i| image(f_basis.row(i))).collect();
    let free_slots: Vec<usize> = (rho..k).collect();
    let r = free_slots.len();

    // f-coordinates of generator j are row j of Q.
    let gen_f: Vec<Vec<BigInt>> = (0..k).map(|j| kernel_v.row(j).to_vec()).collect();
    let free_coords: Vec<Vec<BigInt>> = gen_f
        .iter()
        .map(|f| free_slots.iter().map(|&i| f[i].clone()).collect())
        .collect();
    let (free_change, origin) = choose_free_basis(&free_coords, r);
    let free_change_inv = if r == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        unimodular_inverse(&free_change)
    };
    let mut free_basis = Vec::with_capacity(r);
    let mut free_basis_torsion = Vec::with_capacity(r);
    for (row, src) in origin.iter().enumerate() {
        match src {
            Some(j) => {
                free_basis.push(gens[*j].clone());
                free_basis_torsion.push(torsion_slots.iter().map(|&i| gen_f[*j][i].clone()).collect());
            }
            None => {
                let mut coeffs = vec![BigInt::zero(); k];
                for (c, &slot) in free_change.row(row).iter().zip(&free_slots) {
                    for (dst, b) in coeffs.iter_mut().zip(f_basis.row(slot)) {
                        *dst += c * b;
                    }
                }
                free_basis.push(image(&coeffs));
                free_basis_torsion.push(vec![BigInt::zero(); torsion_slots.len()]);
            }
        }
    }

    let mut out = GroupStructure {
        ambient,
        rank: r,
        invariant_factors,
        free_basis,
        torsion_generators,
        generators: gens.to_vec(),
        witnesses: Vec::new(),
        lattice,
        stacked_rows: k,
        stacked,
        kernel_v,
        torsion_slots,
        free_slots,
        free_change_inv,
        free_basis_torsion,
    };
    out.witnesses = (0..k)
        .map(|j| {
            let mut e = vec![BigInt::zero(); k];
            e[j] = BigInt::one();
            out.coords_from_combination(&e)
        })
        .collect();
    Ok(out)
}

/// Enveloping group of the monoid generated by `gens`.
pub fn monoid_group_closure(gens: &[Weight], ambient: Ambient) -> Result<(Vec<Weight>, GroupStructure)> {
    let g = group_from_generators(gens, ambient)?;
    Ok((gens.to_vec(), g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn standard_lattice() {
        let g = group_from_generators(
            &[Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, 1])],
            Ambient::Additive(2),
        )
        .unwrap();
        assert_eq!(g.rank, 2);
        assert!(g.is_torsion_free());
        assert_eq!(g.report_line(), "T = 0; rank r = 2; basis = [(1, 0), (0, 1)]");
    }

    #[test]
    fn sign_torsion() {
        let g = group_from_generators(&[Weight::from_ints(&[-1])], Ambient::Multiplicative(1)).unwrap();
        assert_eq!(g.rank, 0);
        assert_eq!(g.invariant_factors, ints(&[2]));
        assert_eq!(g.torsion_generators, vec![Weight::from_ints(&[-1])]);
        assert_eq!(g.torsion_elements(), vec![Weight::from_ints(&[1]), Weight::from_ints(&[-1])]);
    }

    #[test]
    fn prime_two_lattice() {
        let gens = [Weight::from_ratios(&[(1, 1), (2, 1)]), Weight::from_ratios(&[(1, 2), (1, 1)])];
        let g = group_from_generators(&gens, Ambient::Multiplicative(2)).unwrap();
        assert_eq!(g.rank, 2);
        assert!(g.is_torsion_free());
        assert_eq!(g.free_basis, gens.to_vec());
    }

    #[test]
    fn closure_examples() {
        let (echo, g) =
            monoid_group_closure(&[Weight::from_ints(&[1]), Weight::from_ints(&[-1])], Ambient::Additive(1)).unwrap();
        assert_eq!(echo.len(), 2);
        assert_eq!(g.rank, 1);

        let (_, g) = monoid_group_closure(&[Weight::from_ints(&[2])], Ambient::Additive(1)).unwrap();
        assert_eq!(g.rank, 1);
        assert_eq!(g.free_basis, vec![Weight::from_ints(&[2])]);
        assert!(!g.contains(&Weight::from_ints(&[1])));
        assert!(g.contains(&Weight::from_ints(&[-4])));

        let (_, g) = monoid_group_closure(
            &[Weight::from_ints(&[1, -1]), Weight::from_ints(&[1, 1])],
            Ambient::Additive(2),
        )
        .unwrap();
        assert_eq!(g.rank, 2);
        assert!(g.is_torsion_free());
        assert!(g.contains(&Weight::from_ints(&[2, 0])));
        assert!(!g.contains(&Weight::from_ints(&[1, 0])));
    }

    #[test]
    fn ambient_mismatch() {
        let err = group_from_generators(&[Weight::from_ints(&[1, 2])], Ambient::Additive(1)).unwrap_err();
        assert_eq!(err, Error::AmbientMismatch);
        let err = group_from_generators(&[Weight::from_ints(&[0])], Ambient::Multiplicative(1)).unwrap_err();
        assert_eq!(err, Error::ZeroComponent);
    }

    #[test]
    fn encoding_examples() {
        let one = encode_multiplicative(&[BigRational::one()]).unwrap();
        assert!(one.primes.is_empty());
        assert_eq!(one.signs, vec![false]);

        let m = encode_multiplicative(&[BigRational::from_integer((-12).into())]).unwrap();
        assert_eq!(m.primes, vec![BigUint::from(2u32), BigUint::from(3u32)]);
        assert_eq!(m.signs, vec![true]);
        assert_eq!(m.exponents, vec![ints(&[2, 1])]);

        let h = encode_multiplicative(&[BigRational::new(1.into(), 2.into())]).unwrap();
        assert_eq!(h.exponents, vec![ints(&[-1])]);
        assert_eq!(h.decode(), Weight::from_ratios(&[(1, 2)]));

        assert_eq!(
            encode_multiplicative(&[BigRational::zero()]).unwrap_err(),
            Error::ZeroComponent
        );
    }

    #[test]
    fn mixed_torsion_and_free() {
        // -2 generates {±2^k}: free of rank 1 (no torsion since (-2)^k is never -1).
        let g = group_from_generators(&[Weight::from_ints(&[-2])], Ambient::Multiplicative(1)).unwrap();
        assert_eq!(g.rank, 1);
        assert!(g.is_torsion_free());
        // -1 and 2 give Z/2 ⊕ Z.
        let gens = [Weight::from_ints(&[-1]), Weight::from_ints(&[2])];
        let g = group_from_generators(&gens, Ambient::Multiplicative(1)).unwrap();
        assert_eq!(g.rank, 1);
        assert_eq!(g.invariant_factors, ints(&[2]));
        for (w, c) in g.generators.iter().zip(&g.witnesses) {
            assert_eq!(&g.compose(c), w);
        }
        let probe = Weight::from_ints(&[-8]);
        let c = g.decompose(&probe).unwrap();
        assert_eq!(g.compose(&c), probe);
        assert!(!g.contains(&Weight::from_ints(&[3])));
    }
}
