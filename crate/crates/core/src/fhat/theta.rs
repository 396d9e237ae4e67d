//! Powers of `Θ(u) = (1−u) Π_{m≥1} (1−q^{2m}u)(1−q^{2m}/u)` as Laurent
//! series in `u` with `q²`-series coefficients.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::{BiSeries, Rational};

/// `Σ_d c_d(q²) u^d` for `−min(Lq, d_max) ≤ d ≤ d_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaExpansion {
    exponent: Rational,
    q2_order: usize,
    d_max: i64,
    coeffs: BTreeMap<i64, BiSeries<Rational>>,
}

impl ThetaExpansion {
    pub fn exponent(&self) -> &Rational {
        &self.exponent
    }

    pub fn q2_order(&self) -> usize {
        self.q2_order
    }

    pub fn degree_bound(&self) -> i64 {
        self.d_max
    }

    /// Coefficient of `u^d` (a series in `q²`, `γ`-order 0).
    pub fn coeff(&self, d: i64) -> BiSeries<Rational> {
        self.coeffs.get(&d).cloned().unwrap_or_else(|| BiSeries::zero(self.q2_order, 0))
    }

    pub fn get(&self, d: i64) -> Option<&BiSeries<Rational>> {
        self.coeffs.get(&d)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BiSeries<Rational>)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }
}

/// `binom(a, k)` for rational `a`.
pub fn generalized_binomial(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        let top = a - &Rational::from_int(i as i64);
        acc = &(&acc * &top) / &Rational::from_int(i as i64 + 1);
    }
    acc
}

/// Dense `[ℓ][d − lo]` scratch product used during expansion.
struct Grid {
    lq: usize,
    lo: i64,
    hi: i64,
    c: Vec<Vec<Rational>>,
}

impl Grid {
    fn one(lq: usize, lo: i64, hi: i64) -> Self {
        let width = (hi - lo + 1) as usize;
        let mut c = alloc::vec![alloc::vec![Rational::zero(); width]; lq + 1];
        c[0][(-lo) as usize] = Rational::one();
        Grid { lq, lo, hi, c }
    }

    /// Multiply by the factor given as `(ℓ, d, c)` triples for `c q^{2ℓ} u^d`.
    fn mul_sparse(&mut self, factor: &[(usize, i64, Rational)]) {
        let width = (self.hi - self.lo + 1) as usize;
        let mut out = alloc::vec![alloc::vec![Rational::zero(); width]; self.lq + 1];
        for l in 0..=self.lq {
            for (i, v) in self.c[l].iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let d = self.lo + i as i64;
                for (fl, fd, fc) in factor {
                    let (tl, td) = (l + fl, d + fd);
                    if tl > self.lq || td < self.lo || td > self.hi {
                        continue;
                    }
                    let slot = &mut out[tl][(td - self.lo) as usize];
                    *slot = &*slot + &(v * fc);
                }
            }
        }
        self.c = out;
    }
}

/// `Θ(u)^a` through `q^{2Lq}` and `|d| ≤ dmax`.
///
/// Negative `u`-powers come only from the `q^{2m}/u` factors, so they never
/// go below `−Lq`; positive powers are computed through `dmax + Lq` before
/// truncating, which keeps every retained coefficient exact.
pub fn expand_theta_power(a: &Rational, lq: usize, dmax: usize) -> ThetaExpansion {
    let dmax = dmax as i64;
    let lo = -(lq as i64);
    let hi = dmax + lq as i64;
    let mut g = Grid::one(lq, lo, hi);
    // (1 − u)^a
    let main: Vec<(usize, i64, Rational)> = (0..=hi as usize)
        .map(|k| {
            let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            (0, k as i64, &sign * &generalized_binomial(a, k))
        })
        .collect();
    g.mul_sparse(&main);
    for m in 1..=lq {
        for dir in [1i64, -1] {
            let factor: Vec<(usize, i64, Rational)> = (0..=lq / m)
                .map(|k| {
                    let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
                    (m * k, dir * k as i64, &sign * &generalized_binomial(a, k))
                })
                .collect();
            g.mul_sparse(&factor);
        }
    }
    let mut coeffs = BTreeMap::new();
    for d in lo.max(-dmax)..=dmax {
        let idx = (d - lo) as usize;
        let s = BiSeries::from_terms(lq, 0, (0..=lq).map(|l| (l, 0, g.c[l][idx].clone())));
        if !s.is_zero() {
            coeffs.insert(d, s);
        }
    }
    ThetaExpansion { exponent: a.clone(), q2_order: lq, d_max: dmax, coeffs }
}
