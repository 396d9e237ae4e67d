//! Dense univariate polynomials over `Rational` in the indeterminate `P`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Primes below 2³¹ for the modular coprimality test.
const GCD_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn trim_ints(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Divides out the content and makes the leading coefficient positive.
fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim_ints(&mut v);
    let mut g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    if v.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    if !g.is_one() {
        for c in &mut v {
            *c = &*c / &g;
        }
    }
    v
}

fn mod_p(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    v.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p")).collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Degree of `gcd(a, b)` over `F_p`; `None` if `p` divides a leading
/// coefficient, where the modular degree says nothing.
fn gcd_degree_mod(a: &[BigInt], b: &[BigInt], p: u64) -> Option<usize> {
    let mut x = mod_p(a, p);
    let mut y = mod_p(b, p);
    if x.last() == Some(&0) || y.last() == Some(&0) {
        return None;
    }
    while !y.is_empty() {
        // x <- x mod y
        let dy = y.len() - 1;
        let inv = pow_mod(y[dy], p - 2, p);
        while x.len() > dy {
            let k = x.len() - 1 - dy;
            let c = x[x.len() - 1] * inv % p;
            for (j, &d) in y.iter().enumerate() {
                x[k + j] = (x[k + j] + p - c * d % p) % p;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        core::mem::swap(&mut x, &mut y);
    }
    Some(x.len().saturating_sub(1))
}

/// Primitive remainder sequence; inputs and output primitive.
fn prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        // pseudo-remainder of a by b
        let db = b.len() - 1;
        let lb = b[db].clone();
        let mut r = a;
        while r.len() > db {
            let k = r.len() - 1 - db;
            let lr = r[r.len() - 1].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (j, d) in b.iter().enumerate() {
                r[k + j] -= &lr * d;
            }
            trim_ints(&mut r);
        }
        a = b;
        b = primitive_part(r);
    }
    a
}

/// Polynomial in `P`, coefficient of `P^i` at index `i`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PPoly {
    coeffs: Vec<Rational>,
}

impl PPoly {
    pub fn zero() -> Self {
        PPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PPoly::from_coeffs(vec![c])
    }

    /// The indeterminate `P`.
    pub fn p() -> Self {
        PPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `P + c`.
    pub fn linear(c: Rational) -> Self {
        PPoly::from_coeffs(vec![c, Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        PPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn add(&self, rhs: &PPoly) -> PPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        PPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> PPoly {
        PPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, rhs: &PPoly) -> PPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &PPoly) -> PPoly {
        if self.is_zero() || rhs.is_zero() {
            return PPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        PPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> PPoly {
        if c.is_zero() {
            return PPoly::zero();
        }
        PPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, exp: u32) -> PPoly {
        let mut acc = PPoly::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &PPoly) -> (PPoly, PPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (PPoly::from_coeffs(quot), PPoly::from_coeffs(rem))
    }

    /// Scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> PPoly {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip().unwrap()),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Coprime inputs are recognized modulo a word-sized prime; otherwise a
    /// primitive remainder sequence over the integers keeps coefficients small.
    pub fn gcd(&self, rhs: &PPoly) -> PPoly {
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        if self.is_constant() || rhs.is_constant() {
            return PPoly::one();
        }
        let a = self.primitive_ints();
        let b = rhs.primitive_ints();
        for &p in &GCD_PRIMES {
            match gcd_degree_mod(&a, &b, p) {
                Some(0) => return PPoly::one(),
                Some(_) => break,
                None => continue,
            }
        }
        let g = prs_gcd(a, b);
        PPoly::from_coeffs(g.into_iter().map(|c| Rational::from(BigRational::from_integer(c))).collect()).monic()
    }

    /// Integer polynomial with content 1 proportional to `self` (nonzero).
    fn primitive_ints(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        primitive_part(ints)
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, p: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * p) + c;
        }
        acc
    }

    pub fn eval_f64(&self, p: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * p + c.to_f64())
    }
}

impl fmt::Display for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{}P", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}P^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_dropped() {
        let p = PPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(PPoly::from_ints(&[0, 0]).is_zero());
    }

    #[test]
    fn degree_of_product_adds() {
        let a = PPoly::from_ints(&[1, 0, 3]);
        let b = PPoly::from_ints(&[-2, 5]);
        assert_eq!(a.mul(&b).degree(), Some(3));
    }

    #[test]
    fn division_identity() {
        let a = PPoly::from_ints(&[7, -3, 0, 2, 1]);
        let b = PPoly::from_ints(&[1, 0, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (P-1)(P+2) and (P-1)(P+5)
        let a = PPoly::from_ints(&[-2, 1, 1]);
        let b = PPoly::from_ints(&[-5, 4, 1]);
        assert_eq!(a.gcd(&b), PPoly::from_ints(&[-1, 1]));
        assert_eq!(a.gcd(&PPoly::from_ints(&[3, 1])), PPoly::one());
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", PPoly::from_ints(&[-1, 0, 1])), "P^2 - 1");
        assert_eq!(alloc::format!("{}", PPoly::from_ints(&[7, 5])), "5*P + 7");
    }
}
