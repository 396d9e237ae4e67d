//! Rational functions of `P` in canonical form.

use core::fmt;

use super::{PPoly, Rational, Scalar};
use crate::error::Error;

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
///
/// Zero is `0 / 1`. Equality is structural, which coincides with
/// cross-multiplication equality because the form is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PRatFunc {
    num: PPoly,
    den: PPoly,
}

impl PRatFunc {
    /// Reduce an arbitrary quotient to canonical form.
    pub fn new(num: PPoly, den: PPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::usage("rational function with zero denominator"));
        }
        Ok(Self::normalize_parts(num, den))
    }

    fn normalize_parts(num: PPoly, den: PPoly) -> Self {
        if num.is_zero() {
            return PRatFunc::from_poly(PPoly::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().unwrap().recip().unwrap();
        PRatFunc { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn from_poly(p: PPoly) -> Self {
        PRatFunc { num: p, den: PPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        PRatFunc::from_poly(PPoly::constant(c))
    }

    /// The indeterminate `P` itself.
    pub fn p() -> Self {
        PRatFunc::from_poly(PPoly::p())
    }

    pub fn num(&self) -> &PPoly {
        &self.num
    }

    pub fn den(&self) -> &PPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn as_constant(&self) -> Option<Rational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.constant_term())
    }

    /// Cross-multiplication test, independent of canonical form.
    pub fn cross_eq(&self, rhs: &PRatFunc) -> bool {
        self.num.mul(&rhs.den) == rhs.num.mul(&self.den)
    }

    /// Value at a rational `P`; `None` at a pole.
    pub fn eval(&self, p: &Rational) -> Option<Rational> {
        let d = self.den.eval(p);
        if d.is_zero() {
            None
        } else {
            Some(&self.num.eval(p) / &d)
        }
    }

    pub fn eval_f64(&self, p: f64) -> f64 {
        self.num.eval_f64(p) / self.den.eval_f64(p)
    }
}

/// Canonicalize `f`; idempotent.
pub fn prat_normalize(f: &PRatFunc) -> Result<PRatFunc, Error> {
    PRatFunc::new(f.num.clone(), f.den.clone())
}

impl Scalar for PRatFunc {
    const KIND: &'static str = "p-rational";

    fn zero() -> Self {
        PRatFunc::from_poly(PPoly::zero())
    }

    fn one() -> Self {
        PRatFunc::from_poly(PPoly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return PRatFunc::from_poly(num);
            }
            return PRatFunc::normalize_parts(num, self.den.clone());
        }
        // Henrici: for reduced inputs gcd(result num, lcm) divides gcd(den_a, den_b).
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return PRatFunc { num, den: self.den.mul(&rhs.den) };
        }
        let a_cof = self.den.div_rem(&g).0;
        let b_cof = rhs.den.div_rem(&g).0;
        let num = self.num.mul(&b_cof).add(&rhs.num.mul(&a_cof));
        if num.is_zero() {
            return Self::zero();
        }
        let h = num.gcd(&g);
        let den = a_cof.mul(&rhs.den);
        if h.is_one() {
            PRatFunc { num, den }
        } else {
            PRatFunc { num: num.div_rem(&h).0, den: den.div_rem(&h).0 }
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (an, bd) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.div_rem(&g1).0, rhs.den.div_rem(&g1).0)
        };
        let (bn, ad) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.div_rem(&g2).0, self.den.div_rem(&g2).0)
        };
        let num = an.mul(&bn);
        let den = ad.mul(&bd);
        let lead = den.leading().unwrap().recip().unwrap();
        PRatFunc { num: num.scale(&lead), den: den.scale(&lead) }
    }

    fn neg(&self) -> Self {
        PRatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lead = self.num.leading().unwrap().recip().unwrap();
        Some(PRatFunc { num: self.den.scale(&lead), den: self.num.scale(&lead) })
    }

    fn from_rational(r: &Rational) -> Self {
        PRatFunc::constant(r.clone())
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        PRatFunc { num: self.num.scale(r), den: self.den.clone() }
    }
}

impl fmt::Display for PRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for PRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PRatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> PPoly {
        PPoly::from_ints(c)
    }

    #[test]
    fn normalize_cancels_common_factor() {
        // (P^2-1) / ((P-1)(P+1)^2) = 1/(P+1)
        let den = poly(&[-1, 1]).mul(&poly(&[1, 1]).pow(2));
        let f = PRatFunc::new(poly(&[-1, 0, 1]), den).unwrap();
        assert_eq!(f.num(), &PPoly::one());
        assert_eq!(f.den(), &poly(&[1, 1]));
    }

    #[test]
    fn normalize_idempotent_and_monic() {
        let f = PRatFunc::new(poly(&[0, 2]), poly(&[2])).unwrap();
        assert_eq!(f, PRatFunc::p());
        assert_eq!(prat_normalize(&f).unwrap(), f);
        let g = PRatFunc::new(poly(&[3, 1]), poly(&[4, 0, -2])).unwrap();
        assert!(g.den().leading().unwrap().is_one());
        assert_eq!(prat_normalize(&g).unwrap(), g);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(PRatFunc::new(PPoly::one(), PPoly::zero()).is_err());
    }

    #[test]
    fn partial_fractions_recombine() {
        // 1/(P-1) - 1/(P+1) = 2/(P^2-1)
        let a = PRatFunc::new(PPoly::one(), poly(&[-1, 1])).unwrap();
        let b = PRatFunc::new(PPoly::one(), poly(&[1, 1])).unwrap();
        let d = a.sub(&b);
        assert_eq!(d, PRatFunc::new(poly(&[2]), poly(&[-1, 0, 1])).unwrap());
        assert!(d.sub(&d).is_zero());
    }

    #[test]
    fn inverse_and_eval() {
        let f = PRatFunc::new(poly(&[1, 1]), poly(&[-2, 1])).unwrap();
        let prod = f.mul(&f.inv().unwrap());
        assert_eq!(prod, PRatFunc::one());
        assert_eq!(f.eval(&Rational::from_int(3)), Some(Rational::from_int(4)));
        assert_eq!(f.eval(&Rational::from_int(2)), None);
    }
}
