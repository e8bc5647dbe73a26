//! Exact commutative coefficient arithmetic.
//!
//! Scalars are rationals. A base algebra is either a polynomial ring over Q
//! whose variables may individually be Laurent, or the field of rational
//! functions in a single variable. Rationals themselves are the polynomial
//! ring in zero variables.

mod poly;
mod ratfun;
mod unipoly;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use poly::{BasePoly, Exponents};
pub use ratfun::RatFun;
pub use unipoly::UniPoly;

/// A commuting indeterminate of a polynomial base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    #[serde(default)]
    pub laurent: bool,
}

impl Variable {
    pub fn new(name: impl Into<String>, laurent: bool) -> Self {
        Variable {
            name: name.into(),
            laurent,
        }
    }
}

/// The commutative algebra that tower coefficients live in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseAlgebra {
    Polynomial(Vec<Variable>),
    RationalFunction(String),
}

/// A coefficient value. Which variant is legal is fixed by the owning
/// [`BaseAlgebra`]; arithmetic between variants panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Poly(BasePoly),
    Frac(RatFun),
}

impl BaseAlgebra {
    pub fn rationals() -> Self {
        BaseAlgebra::Polynomial(Vec::new())
    }

    pub fn polynomial(vars: impl IntoIterator<Item = Variable>) -> Self {
        BaseAlgebra::Polynomial(vars.into_iter().collect())
    }

    pub fn rational_functions(var: impl Into<String>) -> Self {
        BaseAlgebra::RationalFunction(var.into())
    }

    pub fn nvars(&self) -> usize {
        match self {
            BaseAlgebra::Polynomial(v) => v.len(),
            BaseAlgebra::RationalFunction(_) => 1,
        }
    }

    pub fn var_names(&self) -> Vec<&str> {
        match self {
            BaseAlgebra::Polynomial(v) => v.iter().map(|v| v.name.as_str()).collect(),
            BaseAlgebra::RationalFunction(x) => vec![x.as_str()],
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names().iter().position(|n| *n == name)
    }

    /// Whether negative powers of variable `i` are elements of the algebra.
    pub fn var_invertible(&self, i: usize) -> bool {
        match self {
            BaseAlgebra::Polynomial(v) => v[i].laurent,
            BaseAlgebra::RationalFunction(_) => true,
        }
    }

    pub fn is_ratfun(&self) -> bool {
        matches!(self, BaseAlgebra::RationalFunction(_))
    }

    pub fn zero(&self) -> Coeff {
        self.constant(BigRational::zero())
    }

    pub fn one(&self) -> Coeff {
        self.constant(BigRational::one())
    }

    pub fn constant(&self, c: BigRational) -> Coeff {
        match self {
            BaseAlgebra::Polynomial(v) => Coeff::Poly(BasePoly::constant(v.len(), c)),
            BaseAlgebra::RationalFunction(_) => Coeff::Frac(RatFun::constant(c)),
        }
    }

    /// `c * v^e` with admissibility of negative exponents checked.
    pub fn monomial(&self, exps: &Exponents, c: BigRational) -> Result<Coeff> {
        for (i, &e) in exps.0.iter().enumerate() {
            if e < 0 && !self.var_invertible(i) {
                return Err(Error::NegativeExponent(self.var_names()[i].to_string()));
            }
        }
        Ok(match self {
            BaseAlgebra::Polynomial(_) => Coeff::Poly(BasePoly::monomial(exps.clone(), c)),
            BaseAlgebra::RationalFunction(_) => {
                let k = exps.0[0];
                let m = UniPoly::monomial(k.unsigned_abs() as usize, BigRational::one());
                let f = if k >= 0 {
                    RatFun::from_poly(m)
                } else {
                    RatFun::new(UniPoly::one(), m).unwrap()
                };
                Coeff::Frac(f.scale(&c))
            }
        })
    }

    pub fn var(&self, i: usize) -> Coeff {
        self.monomial(&Exponents::unit(self.nvars(), i), BigRational::one())
            .expect("positive power is always admissible")
    }

    /// Inverse of a unit: nonzero scalars, monomials in Laurent variables, and
    /// every nonzero rational function.
    pub fn unit_inverse(&self, c: &Coeff) -> Option<Coeff> {
        match c {
            Coeff::Poly(p) => {
                let (e, k) = p.as_monomial()?;
                if e.0.iter().enumerate().any(|(i, &x)| x != 0 && !self.var_invertible(i)) {
                    return None;
                }
                Some(Coeff::Poly(BasePoly::monomial(e.neg(), k.recip())))
            }
            Coeff::Frac(f) => f.inverse().map(Coeff::Frac),
        }
    }

    pub fn partial(&self, c: &Coeff, i: usize) -> Coeff {
        match c {
            Coeff::Poly(p) => Coeff::Poly(p.partial(i)),
            Coeff::Frac(f) => {
                debug_assert_eq!(i, 0);
                Coeff::Frac(f.derivative())
            }
        }
    }

    /// Monomial expansion `sum c_e v^e`, when the coefficient has one
    /// (always for polynomials; for rational functions only when the
    /// denominator is a power of the variable).
    pub fn atoms(&self, c: &Coeff) -> Option<Vec<(Exponents, BigRational)>> {
        match c {
            Coeff::Poly(p) => Some(p.terms().iter().map(|(e, k)| (e.clone(), k.clone())).collect()),
            Coeff::Frac(f) => {
                let (shift, _) = f.den().as_monomial()?;
                Some(
                    f.num()
                        .coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, k)| !k.is_zero())
                        .map(|(i, k)| (Exponents(vec![i as i64 - shift as i64]), k.clone()))
                        .collect(),
                )
            }
        }
    }

    pub fn admits(&self, c: &Coeff) -> bool {
        match (self, c) {
            (BaseAlgebra::Polynomial(v), Coeff::Poly(p)) => {
                p.nvars() == v.len()
                    && p.terms().keys().all(|e| {
                        e.0.iter().zip(v).all(|(&x, var)| x >= 0 || var.laurent)
                    })
            }
            (BaseAlgebra::RationalFunction(_), Coeff::Frac(_)) => true,
            _ => false,
        }
    }

    pub fn render(&self, c: &Coeff) -> String {
        match c {
            Coeff::Poly(p) => render_sum(poly_items(&self.var_names(), p)),
            Coeff::Frac(f) => self.render_ratfun(f),
        }
    }

    fn render_ratfun(&self, f: &RatFun) -> String {
        let name = self.var_names()[0];
        if f.den().is_one() {
            render_sum(unipoly_items(name, f.num()))
        } else {
            format!(
                "({})/({})",
                render_sum(unipoly_items(name, f.num())),
                render_sum(unipoly_items(name, f.den()))
            )
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BaseAlgebra::Polynomial(v) if v.is_empty() => "Q".to_string(),
            BaseAlgebra::Polynomial(v) => {
                let names: Vec<String> = v
                    .iter()
                    .map(|v| {
                        if v.laurent {
                            format!("{}^±1", v.name)
                        } else {
                            v.name.clone()
                        }
                    })
                    .collect();
                format!("Q[{}]", names.join(", "))
            }
            BaseAlgebra::RationalFunction(x) => format!("Q({x})"),
        }
    }
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Poly(p) => p.is_zero(),
            Coeff::Frac(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Poly(p) => p.is_one(),
            Coeff::Frac(f) => f.is_one(),
        }
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self {
            Coeff::Poly(p) => p.as_constant(),
            Coeff::Frac(f) => f.as_constant(),
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Poly(a), Coeff::Poly(b)) => Coeff::Poly(a + b),
            (Coeff::Frac(a), Coeff::Frac(b)) => Coeff::Frac(a.add(b)),
            _ => panic!("mixed coefficient kinds"),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Poly(a) => Coeff::Poly(-a),
            Coeff::Frac(a) => Coeff::Frac(a.neg()),
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Poly(a), Coeff::Poly(b)) => Coeff::Poly(a * b),
            (Coeff::Frac(a), Coeff::Frac(b)) => Coeff::Frac(a.mul(b)),
            _ => panic!("mixed coefficient kinds"),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Coeff {
        match self {
            Coeff::Poly(a) => Coeff::Poly(a.scale(c)),
            Coeff::Frac(a) => Coeff::Frac(a.scale(c)),
        }
    }
}

/// A base element paired with its algebra, for checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseElem {
    algebra: BaseAlgebra,
    value: Coeff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseOp {
    Add,
    Mul,
    Neg,
}

impl BaseElem {
    pub fn new(algebra: BaseAlgebra, value: Coeff) -> Result<Self> {
        if !algebra.admits(&value) {
            return Err(Error::MixedBase);
        }
        Ok(BaseElem { algebra, value })
    }

    pub fn constant(algebra: &BaseAlgebra, c: BigRational) -> Self {
        BaseElem {
            value: algebra.constant(c),
            algebra: algebra.clone(),
        }
    }

    pub fn var(algebra: &BaseAlgebra, name: &str) -> Result<Self> {
        let i = algebra
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(BaseElem {
            value: algebra.var(i),
            algebra: algebra.clone(),
        })
    }

    pub fn algebra(&self) -> &BaseAlgebra {
        &self.algebra
    }

    pub fn value(&self) -> &Coeff {
        &self.value
    }

    fn same_base(&self, other: &BaseElem) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::MixedBase)
        }
    }

    pub fn add(&self, other: &BaseElem) -> Result<BaseElem> {
        self.same_base(other)?;
        Ok(BaseElem {
            algebra: self.algebra.clone(),
            value: self.value.add(&other.value),
        })
    }

    pub fn mul(&self, other: &BaseElem) -> Result<BaseElem> {
        self.same_base(other)?;
        Ok(BaseElem {
            algebra: self.algebra.clone(),
            value: self.value.mul(&other.value),
        })
    }

    pub fn neg(&self) -> BaseElem {
        BaseElem {
            algebra: self.algebra.clone(),
            value: self.value.neg(),
        }
    }

    pub fn pow(&self, k: i64) -> Result<BaseElem> {
        let base = if k < 0 {
            self.inverse()
                .ok_or_else(|| Error::NotAUnit(self.to_string()))?
        } else {
            self.clone()
        };
        let mut acc = BaseElem::constant(&self.algebra, BigRational::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Option<BaseElem> {
        self.algebra.unit_inverse(&self.value).map(|value| BaseElem {
            algebra: self.algebra.clone(),
            value,
        })
    }

    /// Formal partial derivative in the named variable.
    pub fn partial(&self, var: &str) -> Result<BaseElem> {
        let i = self
            .algebra
            .var_index(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(BaseElem {
            algebra: self.algebra.clone(),
            value: self.algebra.partial(&self.value, i),
        })
    }
}

impl fmt::Display for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algebra.render(&self.value))
    }
}

/// Binary base-ring operation; `Neg` ignores `b`.
pub fn base_arith(a: &BaseElem, b: &BaseElem, op: BaseOp) -> Result<BaseElem> {
    match op {
        BaseOp::Add => a.add(b),
        BaseOp::Mul => a.mul(b),
        BaseOp::Neg => {
            a.same_base(b)?;
            Ok(a.neg())
        }
    }
}

/// Monic gcd of two univariate polynomials (`gcd(0, 0) = 0`).
pub fn gcd_univariate(a: &BasePoly, b: &BasePoly) -> Result<BasePoly> {
    let ua = to_unipoly(a)?;
    let ub = to_unipoly(b)?;
    Ok(from_unipoly(&ua.gcd(&ub)))
}

pub fn to_unipoly(p: &BasePoly) -> Result<UniPoly> {
    if p.nvars() != 1 && !(p.nvars() == 0) {
        return Err(Error::MixedBase);
    }
    let mut coeffs = Vec::new();
    for (e, c) in p.terms() {
        let k = e.0.first().copied().unwrap_or(0);
        if k < 0 {
            return Err(Error::MixedBase);
        }
        let k = k as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::zero());
        }
        coeffs[k] += c;
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

pub fn from_unipoly(p: &UniPoly) -> BasePoly {
    BasePoly::from_terms(
        1,
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (Exponents(vec![i as i64]), c.clone())),
    )
}

pub(crate) fn monomial_string(names: &[&str], exps: &[i64]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push((*name).to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// Items of a polynomial in descending graded-lex order.
pub(crate) fn poly_items(names: &[&str], p: &BasePoly) -> Vec<(BigRational, String)> {
    p.terms()
        .iter()
        .rev()
        .map(|(e, c)| (c.clone(), monomial_string(names, &e.0)))
        .collect()
}

fn unipoly_items(name: &str, p: &UniPoly) -> Vec<(BigRational, String)> {
    p.coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (c.clone(), monomial_string(&[name], &[k as i64])))
        .collect()
}

pub(crate) fn render_term(c: &BigRational, m: &str) -> String {
    if m.is_empty() {
        c.to_string()
    } else if c.is_one() {
        m.to_string()
    } else if (-c).is_one() {
        format!("-{m}")
    } else {
        format!("{c}*{m}")
    }
}

/// Joins `(coefficient, monomial)` items into `a + b - c` form.
pub(crate) fn render_sum(items: Vec<(BigRational, String)>) -> String {
    let mut out = String::new();
    for (i, (c, m)) in items.iter().enumerate() {
        let t = render_term(c, m);
        if i == 0 {
            out.push_str(&t);
        } else if c.is_negative() {
            out.push_str(" - ");
            out.push_str(&t[1..]);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_sum() {
        let b = BaseAlgebra::rationals();
        let s = BaseElem::constant(&b, q(1, 2)).add(&BaseElem::constant(&b, q(1, 3))).unwrap();
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn laurent_cancellation() {
        let b = BaseAlgebra::polynomial([Variable::new("x", true)]);
        let x = BaseElem::var(&b, "x").unwrap();
        let prod = x.mul(&x.pow(-1).unwrap()).unwrap();
        assert_eq!(prod.to_string(), "1");
    }

    #[test]
    fn difference_of_squares_renders_canonically() {
        let b = BaseAlgebra::polynomial([Variable::new("x", false)]);
        let x = BaseElem::var(&b, "x").unwrap();
        let one = BaseElem::constant(&b, q(1, 1));
        let p = base_arith(&x.add(&one).unwrap(), &x.add(&one.neg()).unwrap(), BaseOp::Mul).unwrap();
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn mixed_base_rejected() {
        let a = BaseAlgebra::polynomial([Variable::new("x", false)]);
        let b = BaseAlgebra::rational_functions("x");
        let x = BaseElem::var(&a, "x").unwrap();
        let y = BaseElem::var(&b, "x").unwrap();
        assert_eq!(x.add(&y), Err(Error::MixedBase));
        assert_eq!(base_arith(&x, &y, BaseOp::Neg), Err(Error::MixedBase));
    }

    #[test]
    fn partials() {
        let poly = BaseAlgebra::polynomial([Variable::new("x", true)]);
        let x = BaseElem::var(&poly, "x").unwrap();
        assert_eq!(x.pow(3).unwrap().partial("x").unwrap().to_string(), "3*x^2");
        assert_eq!(x.pow(-2).unwrap().partial("x").unwrap().to_string(), "-2*x^-3");
        assert_eq!(x.partial("y"), Err(Error::UnknownVariable("y".into())));

        let rf = BaseAlgebra::rational_functions("x");
        let x = BaseElem::var(&rf, "x").unwrap();
        assert_eq!(x.pow(-1).unwrap().partial("x").unwrap().to_string(), "(-1)/(x^2)");
    }

    #[test]
    fn negative_power_of_polynomial_variable_is_not_a_unit() {
        let b = BaseAlgebra::polynomial([Variable::new("x", false)]);
        let x = BaseElem::var(&b, "x").unwrap();
        assert!(x.pow(-1).is_err());
        assert!(b.monomial(&Exponents(vec![-1]), q(1, 1)).is_err());
    }

    #[test]
    fn univariate_gcd() {
        let x = BasePoly::var(1, 0);
        let one = BasePoly::one(1);
        let a = &(&x * &x) - &one;
        let b = &x - &one;
        assert_eq!(gcd_univariate(&a, &b).unwrap(), b);
        assert_eq!(gcd_univariate(&x, &one).unwrap(), one);
    }

    #[test]
    fn ratfun_atoms_only_for_monomial_denominators() {
        let rf = BaseAlgebra::rational_functions("x");
        let x = BaseElem::var(&rf, "x").unwrap();
        let inv = x.pow(-2).unwrap();
        assert_eq!(rf.atoms(inv.value()).unwrap(), vec![(Exponents(vec![-2]), q(1, 1))]);
        let one = BaseElem::constant(&rf, q(1, 1));
        let shifted = x.add(&one).unwrap().pow(-1).unwrap();
        assert!(rf.atoms(shifted.value()).is_none());
    }
}
