use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<i64>);

impl Exponents {
    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponents(e)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        debug_assert_eq!(self.0.len(), other.0.len());
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Exponents {
        Exponents(self.0.iter().map(|e| -e).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over Q in a fixed number of commuting variables.
/// Exponents may be negative; whether that is allowed is the owning
/// algebra's business.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasePoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

impl BasePoly {
    pub fn zero(nvars: usize) -> Self {
        BasePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(Exponents::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponents::unit(nvars, i), BigRational::one())
    }

    pub fn monomial(exps: Exponents, c: BigRational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        BasePoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> Self {
        let mut p = BasePoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has no variable part.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Exponents, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> BasePoly {
        if c.is_zero() {
            return BasePoly::zero(self.nvars);
        }
        BasePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiply by the monomial `c * v^e`.
    pub fn shift(&self, e: &Exponents, c: &BigRational) -> BasePoly {
        if c.is_zero() {
            return BasePoly::zero(self.nvars);
        }
        BasePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(f, x)| (f.add(e), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> BasePoly {
        let mut acc = BasePoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> BasePoly {
        let mut out = BasePoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k != 0 {
                let mut f = e.clone();
                f.0[i] -= 1;
                out.add_term(f, c * BigRational::from_integer(k.into()));
            }
        }
        out
    }

    /// Largest exponent-vector entry magnitude, useful for random generation bounds.
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|e| e.0.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn min_exponent(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e.0[i]).min()
    }

    pub fn leading_is_negative(&self) -> bool {
        self.terms.values().next_back().is_some_and(|c| c.is_negative())
    }
}

impl Add for &BasePoly {
    type Output = BasePoly;
    fn add(self, rhs: &BasePoly) -> BasePoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials over different variable sets");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &BasePoly {
    type Output = BasePoly;
    fn sub(self, rhs: &BasePoly) -> BasePoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials over different variable sets");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &BasePoly {
    type Output = BasePoly;
    fn neg(self) -> BasePoly {
        BasePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &BasePoly {
    type Output = BasePoly;
    fn mul(self, rhs: &BasePoly) -> BasePoly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials over different variable sets");
        let mut out = BasePoly::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term(e.add(f), c * d);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn grlex_orders_by_degree_first() {
        let a = Exponents(vec![2, 0]);
        let b = Exponents(vec![0, 3]);
        let c = Exponents(vec![1, 1]);
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn difference_of_squares() {
        let x = BasePoly::var(1, 0);
        let one = BasePoly::one(1);
        let p = &(&x + &one) * &(&x - &one);
        let expected = BasePoly::from_terms(1, [(Exponents(vec![2]), q(1)), (Exponents(vec![0]), q(-1))]);
        assert_eq!(p, expected);
    }

    #[test]
    fn laurent_unit_cancels() {
        let x = BasePoly::var(1, 0);
        let xinv = BasePoly::monomial(Exponents(vec![-1]), q(1));
        assert!((&x * &xinv).is_one());
    }

    #[test]
    fn partial_handles_negative_powers() {
        let p = BasePoly::monomial(Exponents(vec![-2]), q(1));
        assert_eq!(p.partial(0), BasePoly::monomial(Exponents(vec![-3]), q(-2)));
        let cube = BasePoly::monomial(Exponents(vec![3]), q(1));
        assert_eq!(cube.partial(0), BasePoly::monomial(Exponents(vec![2]), q(3)));
    }
}
