use num_rational::BigRational;
use num_traits::Zero;

use super::unipoly::UniPoly;

/// Univariate rational function `num/den`, reduced with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: UniPoly,
    den: UniPoly,
}

impl RatFun {
    pub fn new(num: UniPoly, den: UniPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().unwrap().recip();
        Some(RatFun {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFun {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        (self.den.is_one() && self.num.degree() == Some(0)).then(|| self.num.coeffs()[0].clone())
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.den == other.den {
            return RatFun::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&other.den);
        let (a, _) = self.den.div_rem(&g);
        let (b, _) = other.den.div_rem(&g);
        RatFun::new(&(&self.num * &b) + &(&other.num * &a), &self.den * &b).unwrap()
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        let g = self.num.gcd(&other.den);
        let h = other.num.gcd(&self.den);
        let (n1, _) = self.num.div_rem(&g);
        let (d2, _) = other.den.div_rem(&g);
        let (n2, _) = other.num.div_rem(&h);
        let (d1, _) = self.den.div_rem(&h);
        let den = &d1 * &d2;
        let lc = den.leading().unwrap().recip();
        RatFun {
            num: (&n1 * &n2).scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn scale(&self, c: &BigRational) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Option<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    /// Quotient rule: (n'd - nd') / d^2.
    pub fn derivative(&self) -> RatFun {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun::new(top, &self.den * &self.den).unwrap()
    }
}
