use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::exact::{Coeff, Exponents, RatFun, UniPoly};
use crate::tower::engine::add_term;
use crate::tower::{Element, Terms, Tower};

/// Shape of random elements.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_terms: usize,
    pub max_degree: i64,
    pub height: i64,
    pub laurent_span: i64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_terms: 4,
            max_degree: 4,
            height: 8,
            laurent_span: 2,
        }
    }
}

pub fn rational<R: Rng>(rng: &mut R, height: i64, nonzero: bool) -> BigRational {
    loop {
        let p = rng.gen_range(-height..=height);
        let q = rng.gen_range(1..=height);
        if p != 0 || !nonzero {
            return BigRational::new(BigInt::from(p), BigInt::from(q));
        }
    }
}

/// Flat exponent vector (base variables then levels) of degree at most
/// `max_degree`; negative entries only on invertible generators.
pub fn exponents<R: Rng>(rng: &mut R, tower: &Tower, shape: Shape, units_only: bool) -> Vec<i64> {
    let d = tower.data();
    let n = d.ngens();
    loop {
        let e: Vec<i64> = (0..n)
            .map(|g| match (d.gen_invertible(g), units_only) {
                (true, _) => rng.gen_range(-shape.laurent_span..=shape.laurent_span),
                (false, true) => 0,
                (false, false) => rng.gen_range(0..=shape.max_degree),
            })
            .collect();
        if e.iter().map(|x| x.abs()).sum::<i64>() <= shape.max_degree {
            return e;
        }
    }
}

fn coefficient(tower: &Tower, base_exps: &[i64], q: BigRational) -> Coeff {
    tower
        .data()
        .base
        .monomial(&Exponents(base_exps.to_vec()), q)
        .expect("sampled exponents are admissible")
}

/// `q * x^e` in normal form.
pub fn monomial(tower: &Tower, e: &[i64], q: BigRational) -> Element {
    let m = tower.data().m();
    let mut t = Terms::new();
    t.insert(Exponents(e[m..].to_vec()), coefficient(tower, &e[..m], q));
    Element::from_terms(tower, t)
}

pub fn element<R: Rng>(rng: &mut R, tower: &Tower, shape: Shape) -> Element {
    let d = tower.data();
    let m = d.m();
    // derivatives of rational coefficients grow fast; keep such samples small
    let shape = if d.base.is_ratfun() {
        Shape {
            max_terms: shape.max_terms.min(3),
            max_degree: shape.max_degree.min(3),
            ..shape
        }
    } else {
        shape
    };
    let k = rng.gen_range(1..=shape.max_terms);
    let mut t = Terms::new();
    for _ in 0..k {
        let e = exponents(rng, tower, shape, false);
        let mut c = coefficient(tower, &e[..m], rational(rng, shape.height, true));
        if d.base.is_ratfun() && rng.gen_bool(0.3) {
            let shift = BigRational::from_integer(rng.gen_range(1..=3).into());
            let den = UniPoly::from_coeffs(vec![shift, BigRational::from_integer(1.into())]);
            c = c.mul(&Coeff::Frac(RatFun::new(UniPoly::one(), den).unwrap()));
        }
        add_term(&mut t, Exponents(e[m..].to_vec()), c);
    }
    Element::from_terms(tower, t)
}

/// A random unit: a nonzero scalar times a monomial in invertible
/// generators.
pub fn unit<R: Rng>(rng: &mut R, tower: &Tower, shape: Shape) -> Element {
    let e = exponents(rng, tower, shape, true);
    monomial(tower, &e, rational(rng, shape.height, true))
}

pub fn random_monomial<R: Rng>(rng: &mut R, tower: &Tower, shape: Shape) -> Element {
    let e = exponents(rng, tower, shape, false);
    monomial(tower, &e, rational(rng, shape.height, true))
}

/// Greedily removes terms from the inputs while `fails` keeps holding.
pub fn shrink(mut inputs: Vec<Element>, fails: impl Fn(&[Element]) -> bool) -> Vec<Element> {
    loop {
        let mut progressed = false;
        for i in 0..inputs.len() {
            let mut j = 0;
            while j < inputs[i].len() {
                let mut trial = inputs.clone();
                trial[i] = inputs[i].without_term(j);
                if !trial[i].is_zero() && fails(&trial) {
                    inputs = trial;
                    progressed = true;
                } else {
                    j += 1;
                }
            }
        }
        if !progressed {
            return inputs;
        }
    }
}
