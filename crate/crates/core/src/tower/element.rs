use std::fmt;
use std::ops;

use num_rational::BigRational;
use num_traits::Zero;

use super::engine::{add_terms, neg_terms, scale_terms, sub_terms};
use super::{Terms, Tower};
use crate::error::{Error, Result};
use crate::exact::{Coeff, Exponents};

/// A normal-form element: base coefficients on the left of ordered
/// generator monomials.
#[derive(Clone)]
pub struct Element {
    tower: Tower,
    terms: Terms,
}

impl Element {
    pub(crate) fn from_terms(tower: &Tower, terms: Terms) -> Element {
        Element {
            tower: tower.clone(),
            terms,
        }
    }

    pub(crate) fn raw(&self) -> &Terms {
        &self.terms
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.tower.same(&other.tower) {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    /// Number of (generator monomial, coefficient) pairs.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Generator exponent vectors with their base coefficients, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Coeff)> {
        self.terms.iter()
    }

    /// The rational value, when the element is a scalar.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.is_zero() {
                    c.as_constant()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(self.with(add_terms(&self.terms, &other.terms)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(self.with(sub_terms(&self.terms, &other.terms)))
    }

    pub fn neg(&self) -> Element {
        self.with(neg_terms(&self.terms))
    }

    pub fn scale(&self, q: &BigRational) -> Element {
        self.with(scale_terms(&self.terms, q))
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(self.with(self.tower.data().mul(&self.terms, &other.terms)?))
    }

    /// Powers; negative exponents need a monomial unit.
    pub fn pow(&self, k: i64) -> Result<Element> {
        let b = if k < 0 {
            self.inverse().ok_or_else(|| Error::NotAUnit(self.to_string()))?
        } else {
            self.clone()
        };
        let mut acc = self.tower.one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&b)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Option<Element> {
        self.tower.is_unit(self)
    }

    /// Each term as its own element, in descending order.
    pub fn monomials(&self) -> Vec<Element> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut t = Terms::new();
                t.insert(e.clone(), c.clone());
                self.with(t)
            })
            .collect()
    }

    /// The element with its `i`-th term (ascending order) removed.
    pub fn without_term(&self, i: usize) -> Element {
        let mut t = self.terms.clone();
        if let Some(k) = t.keys().nth(i).cloned() {
            t.remove(&k);
        }
        self.with(t)
    }

    /// Sum of absolute generator exponents, base exponents included where
    /// the base is polynomial.
    pub fn total_degree(&self) -> i64 {
        let abs = |e: &Exponents| -> i64 { e.0.iter().map(|x| x.abs()).sum() };
        self.terms
            .iter()
            .map(|(e, c)| {
                let b = match c {
                    Coeff::Poly(p) => p.terms().keys().map(abs).max().unwrap_or(0),
                    Coeff::Frac(_) => 0,
                };
                abs(e) + b
            })
            .max()
            .unwrap_or(0)
    }

    fn with(&self, terms: Terms) -> Element {
        Element {
            tower: self.tower.clone(),
            terms,
        }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Element) -> bool {
        self.tower.same(&other.tower) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tower.data().render(&self.terms))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl ops::$tr for &Element {
            type Output = Element;
            fn $f(self, rhs: &Element) -> Element {
                Element::$f(self, rhs).expect("operands from one tower")
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}
