//! Truncated bivariate power series in the markers `q²` and `γ`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::{Rational, Scalar};
use crate::error::Error;

/// Sparse truncated series `Σ c[ℓ,s] (q²)^ℓ γ^s`, `0 ≤ ℓ ≤ Lq`, `0 ≤ s ≤ Sγ`.
///
/// Terms are kept in `(ℓ, s)` lexicographic order; zero coefficients are
/// never stored. Products discard everything outside the rectangle.
#[derive(Clone, PartialEq)]
pub struct BiSeries<F> {
    q2_order: usize,
    gamma_order: usize,
    terms: BTreeMap<(usize, usize), F>,
}

impl<F: Scalar> BiSeries<F> {
    pub fn zero(q2_order: usize, gamma_order: usize) -> Self {
        BiSeries { q2_order, gamma_order, terms: BTreeMap::new() }
    }

    pub fn constant(c: F, q2_order: usize, gamma_order: usize) -> Self {
        Self::monomial(0, 0, c, q2_order, gamma_order)
    }

    pub fn one(q2_order: usize, gamma_order: usize) -> Self {
        Self::constant(F::one(), q2_order, gamma_order)
    }

    /// `c · (q²)^l · γ^s`, or zero when outside the window.
    pub fn monomial(l: usize, s: usize, c: F, q2_order: usize, gamma_order: usize) -> Self {
        let mut out = Self::zero(q2_order, gamma_order);
        out.add_term(l, s, c);
        out
    }

    /// Build from `(ℓ, s, value)` triples; repeated keys accumulate.
    pub fn from_terms<I>(q2_order: usize, gamma_order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, F)>,
    {
        let mut out = Self::zero(q2_order, gamma_order);
        for (l, s, c) in terms {
            out.add_term(l, s, c);
        }
        out
    }

    pub fn q2_order(&self) -> usize {
        self.q2_order
    }

    pub fn gamma_order(&self) -> usize {
        self.gamma_order
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.q2_order, self.gamma_order)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, l: usize, s: usize) -> Option<&F> {
        self.terms.get(&(l, s))
    }

    pub fn coeff(&self, l: usize, s: usize) -> F {
        self.get(l, s).cloned().unwrap_or_else(F::zero)
    }

    /// Nonzero terms in `(ℓ, s)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.terms.iter().map(|(&(l, s), c)| (l, s, c))
    }

    /// Accumulate `c (q²)^l γ^s`; silently dropped outside the window.
    pub fn add_term(&mut self, l: usize, s: usize, c: F) {
        if l > self.q2_order || s > self.gamma_order || c.is_zero() {
            return;
        }
        match self.terms.entry((l, s)) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_compatible(&self, rhs: &Self) -> Result<(), Error> {
        if self.orders() != rhs.orders() {
            return Err(Error::usage(alloc::format!(
                "truncation mismatch: {:?} vs {:?}",
                self.orders(),
                rhs.orders()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (&(l, s), c) in &rhs.terms {
            out.add_term(l, s, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (&(l, s), c) in &rhs.terms {
            out.add_term(l, s, c.neg());
        }
        Ok(out)
    }

    /// Truncated Cauchy product.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_compatible(rhs)?;
        let (lq, sg) = self.orders();
        let mut acc: BTreeMap<(usize, usize), F> = BTreeMap::new();
        for (&(l1, s1), a) in &self.terms {
            for (&(l2, s2), b) in &rhs.terms {
                if l1 + l2 > lq {
                    break;
                }
                if s1 + s2 > sg {
                    continue;
                }
                let p = a.mul(b);
                acc.entry((l1 + l2, s1 + s2))
                    .and_modify(|e| *e = e.add(&p))
                    .or_insert(p);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(BiSeries { q2_order: lq, gamma_order: sg, terms: acc })
    }

    /// Panicking form of [`checked_add`](Self::checked_add) for operands
    /// known to share a truncation window.
    pub fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("series truncation mismatch")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("series truncation mismatch")
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("series truncation mismatch")
    }

    pub fn add_assign(&mut self, rhs: &Self) {
        assert_eq!(self.orders(), rhs.orders(), "series truncation mismatch");
        for (&(l, s), c) in &rhs.terms {
            self.add_term(l, s, c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.q2_order, self.gamma_order);
        }
        self.map_coeffs(|a| a.mul(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.q2_order, self.gamma_order);
        }
        self.map_coeffs(|a| a.scale(r))
    }

    fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        BiSeries {
            q2_order: self.q2_order,
            gamma_order: self.gamma_order,
            terms: self.terms.iter().map(|(k, c)| (*k, f(c))).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.q2_order, self.gamma_order);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `γ^k`.
    pub fn shift_gamma(&self, k: usize) -> Self {
        let mut out = Self::zero(self.q2_order, self.gamma_order);
        for (&(l, s), c) in &self.terms {
            out.add_term(l, s + k, c.clone());
        }
        out
    }

    /// Multiply by `(q²)^k`.
    pub fn shift_q2(&self, k: usize) -> Self {
        let mut out = Self::zero(self.q2_order, self.gamma_order);
        for (&(l, s), c) in &self.terms {
            out.add_term(l + k, s, c.clone());
        }
        out
    }

    /// Drop every term with `q²`-power above `max_l`.
    pub fn truncate_q2(&mut self, max_l: usize) {
        self.terms.retain(|&(l, _), _| l <= max_l);
    }

    /// Same series with a (possibly smaller) truncation window.
    pub fn retruncate(&self, q2_order: usize, gamma_order: usize) -> Self {
        let mut out = Self::zero(q2_order, gamma_order);
        for (&(l, s), c) in &self.terms {
            out.add_term(l, s, c.clone());
        }
        out
    }

    pub fn min_q2_power(&self) -> Option<usize> {
        self.terms.keys().map(|&(l, _)| l).min()
    }

    pub fn min_gamma_power(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, s)| s).min()
    }

    /// Coefficient of `γ^s` as a vector indexed by the `q²`-power.
    pub fn gamma_slice(&self, s: usize) -> Vec<F> {
        (0..=self.q2_order).map(|l| self.coeff(l, s)).collect()
    }

    /// Coefficient of `(q²)^l` as a vector indexed by the `γ`-power.
    pub fn q2_slice(&self, l: usize) -> Vec<F> {
        (0..=self.gamma_order).map(|s| self.coeff(l, s)).collect()
    }

    /// Apply a ring homomorphism coefficient-wise (e.g. substituting a value of `P`).
    pub fn map_scalar<G: Scalar>(&self, f: impl Fn(&F) -> G) -> BiSeries<G> {
        BiSeries::from_terms(
            self.q2_order,
            self.gamma_order,
            self.terms.iter().map(|(&(l, s), c)| (l, s, f(c))),
        )
    }

    /// Fallible variant of [`map_scalar`](Self::map_scalar).
    pub fn try_map_scalar<G: Scalar, E>(
        &self,
        f: impl Fn(&F) -> Result<G, E>,
    ) -> Result<BiSeries<G>, E> {
        let mut out = BiSeries::zero(self.q2_order, self.gamma_order);
        for (&(l, s), c) in &self.terms {
            out.add_term(l, s, f(c)?);
        }
        Ok(out)
    }
}

/// `1 / (b0 − tail)` as the geometric series `(1/b0) Σ_k (tail/b0)^k`.
///
/// `tail` must have no constant term. A vanishing `b0` is a resonance; the
/// caller supplies the root vector to report through `mu`.
pub fn series_recip_shifted<F: Scalar>(
    b0: &F,
    tail: &BiSeries<F>,
    mu: &[i64],
) -> Result<BiSeries<F>, Error> {
    if tail.get(0, 0).is_some() {
        return Err(Error::usage("series_recip_shifted: tail has a constant term"));
    }
    let inv = b0.inv().ok_or_else(|| Error::Resonance { mu: mu.to_vec() })?;
    let (lq, sg) = tail.orders();
    let one = BiSeries::constant(inv.clone(), lq, sg);
    if tail.is_zero() {
        return Ok(one);
    }
    let ratio = tail.scale(&inv);
    // Every power of `ratio` raises the total (ℓ + s) degree by at least one.
    let mut out = one.clone();
    let mut power = one;
    for _ in 0..(lq + sg) {
        power = power.mul(&ratio);
        if power.is_zero() {
            break;
        }
        out.add_assign(&power);
    }
    Ok(out)
}

impl<F: Scalar + fmt::Display> fmt::Display for BiSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(l, s), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if l > 0 {
                write!(f, "·q^{}", 2 * l)?;
            }
            if s > 0 {
                write!(f, "·γ^{s}")?;
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for BiSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BiSeries")
            .field("q2_order", &self.q2_order)
            .field("gamma_order", &self.gamma_order)
            .field("terms", &self.terms)
            .finish()
    }
}
