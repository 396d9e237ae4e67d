//! Eigenfunction coefficients `α(μ; n)`.
//!
//! `α(μ)` is the sum over walks `0 → μ_1 → … → μ_s = μ` of
//! `Π_r γ S_{ν_r} / (b(μ_r) − Ẽ)`, with `α(0) = 1` and no walk passing
//! through the origin. Entries are stored on the window
//! `{μ : m(μ) ≥ −(N−1)W}` (`m` the moment, `W` the window size) plus a halo of
//! points outside it. A halo point at distance `c = ⌈(floor − m(μ))/(N−1)⌉`
//! below the floor is exact through `q^{2(Lq−c)}`; window points are exact
//! through `q^{2Lq}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{series_recip_shifted, BiSeries, Scalar};
use crate::eigenvalue::EigenvalueSeries;
use crate::error::Error;
use crate::lattice::{pairs, RootVector, Spectrum};
use crate::walk::{mul_s, Layer, WalkBounds};

/// Default window: wide enough that every `F̂(n+μ)` contributing to `Φ`
/// through `q^{2Lq}` has its `μ` inside.
pub fn default_window(n: &[i64], lq: usize) -> usize {
    let nn = n.len().max(2) as i64;
    // Σ_{m≥2} of the tail sums Σ_{k≥m} n_k.
    let tails: i64 = (1..n.len()).map(|m| n[m..].iter().sum::<i64>()).sum();
    let base = if tails > 0 { (tails + nn - 2) / (nn - 1) } else { 0 };
    base as usize + lq
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaTable<F> {
    q2_order: usize,
    gamma_order: usize,
    n_particles: usize,
    window: usize,
    entries: BTreeMap<RootVector, BiSeries<F>>,
}

impl<F: Scalar> AlphaTable<F> {
    fn bounds(&self) -> WalkBounds {
        WalkBounds {
            lq: self.q2_order,
            n_particles: self.n_particles,
            floor_moment: -((self.n_particles as i64 - 1) * self.window as i64),
        }
    }

    pub fn q2_order(&self) -> usize {
        self.q2_order
    }

    pub fn gamma_order(&self) -> usize {
        self.gamma_order
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn get(&self, mu: &RootVector) -> Option<&BiSeries<F>> {
        self.entries.get(mu)
    }

    /// `α(μ)`, zero when absent.
    pub fn coeff(&self, mu: &RootVector) -> BiSeries<F> {
        self.entries
            .get(mu)
            .cloned()
            .unwrap_or_else(|| BiSeries::zero(self.q2_order, self.gamma_order))
    }

    pub fn in_window(&self, mu: &RootVector) -> bool {
        self.bounds().cost(mu) == 0
    }

    /// Highest `q²`-order through which the stored entry at `mu` is exact.
    pub fn exact_through(&self, mu: &RootVector) -> Option<usize> {
        self.q2_order.checked_sub(self.bounds().cost(mu))
    }

    /// All stored entries, window and halo.
    pub fn entries(&self) -> &BTreeMap<RootVector, BiSeries<F>> {
        &self.entries
    }

    pub fn window_entries(&self) -> impl Iterator<Item = (&RootVector, &BiSeries<F>)> {
        let b = self.bounds();
        self.entries.iter().filter(move |(mu, _)| b.cost(mu) == 0)
    }

    /// Replace one entry; used to test residual sensitivity.
    pub fn set(&mut self, mu: RootVector, value: BiSeries<F>) -> Result<(), Error> {
        if value.orders() != (self.q2_order, self.gamma_order) || mu.len() != self.n_particles {
            return Err(Error::usage("alpha entry with mismatched shape"));
        }
        self.entries.insert(mu, value);
        Ok(())
    }
}

/// Fill `α` on the window of size `window` (plus halo).
pub fn compute_alpha_table<S: Spectrum>(
    spectrum: &S,
    tilde_e: &BiSeries<S::Scalar>,
    window: usize,
) -> Result<AlphaTable<S::Scalar>, Error> {
    let (lq, sg) = tilde_e.orders();
    let nn = spectrum.n_particles();
    let bounds = WalkBounds {
        lq,
        n_particles: nn,
        floor_moment: -((nn as i64 - 1) * window as i64),
    };
    let origin = RootVector::zero(nn);
    let mut entries: BTreeMap<RootVector, BiSeries<S::Scalar>> = BTreeMap::new();
    entries.insert(origin.clone(), BiSeries::one(lq, sg));

    let mut layer: Layer<S::Scalar> = BTreeMap::new();
    layer.insert(origin, vec![BiSeries::one(lq, sg)]);
    let mut denominators: BTreeMap<RootVector, BiSeries<S::Scalar>> = BTreeMap::new();

    for _ in 1..=sg {
        let raw = bounds.step(&layer);
        let mut next: Layer<S::Scalar> = BTreeMap::new();
        for (mu, mut vals) in raw {
            if mu.is_zero() || !bounds.prune_values(&mu, &mut vals) {
                continue;
            }
            let r = match denominators.get(&mu) {
                Some(r) => r,
                None => {
                    let r = series_recip_shifted(&spectrum.b(&mu), tilde_e, mu.as_slice())?;
                    denominators.entry(mu.clone()).or_insert(r)
                }
            };
            let mut v = vals[0].mul(r);
            if !bounds.prune_values(&mu, core::slice::from_mut(&mut v)) {
                continue;
            }
            entries
                .entry(mu.clone())
                .or_insert_with(|| BiSeries::zero(lq, sg))
                .add_assign(&v);
            next.insert(mu, vec![v]);
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    entries.retain(|_, v| !v.is_zero());
    Ok(AlphaTable { q2_order: lq, gamma_order: sg, n_particles: nn, window, entries })
}

/// A single coefficient `α(μ)`; `α(0) = 1`.
pub fn alpha_elliptic<S: Spectrum>(
    mu: &RootVector,
    spectrum: &S,
    eigenvalue: &EigenvalueSeries<S::Scalar>,
) -> Result<BiSeries<S::Scalar>, Error> {
    let nn = spectrum.n_particles();
    if mu.len() != nn {
        return Err(Error::usage("root vector length does not match the model"));
    }
    let (lq, sg) = eigenvalue.tilde_e.orders();
    if mu.is_zero() {
        return Ok(BiSeries::one(lq, sg));
    }
    let per = nn as i64 - 1;
    let m = mu.moment();
    let window = if m < 0 { ((-m + per - 1) / per) as usize } else { 0 };
    let table = compute_alpha_table(spectrum, &eigenvalue.tilde_e, window)?;
    Ok(table.coeff(mu))
}

/// The `q = 0` coefficient as an explicit sum over positive-step walks:
/// `Σ_s γ^s Σ ν_1…ν_s / Π_r b(μ_r)`. Returned with `q²`-order 0.
pub fn alpha_trig_q0<S: Spectrum>(
    mu: &RootVector,
    spectrum: &S,
    smax: usize,
) -> Result<BiSeries<S::Scalar>, Error> {
    let nn = spectrum.n_particles();
    if mu.len() != nn {
        return Err(Error::usage("root vector length does not match the model"));
    }
    let mut coeffs = vec![<S::Scalar as Scalar>::zero(); smax + 1];
    if mu.is_zero() {
        coeffs[0] = <S::Scalar as Scalar>::one();
    } else {
        let target = mu.moment();
        let pl = pairs(nn);
        let mut stack: Vec<(RootVector, usize, S::Scalar)> =
            vec![(RootVector::zero(nn), 0, <S::Scalar as Scalar>::one())];
        // Every positive step strictly lowers the moment, so the search is finite;
        // points from which `mu` is not reachable by positive steps are skipped.
        while let Some((p, s, w)) = stack.pop() {
            if s == smax {
                continue;
            }
            for &pair in &pl {
                let max_nu = (p.moment() - target) / pair.span();
                for nu in 1..=max_nu {
                    let q = p.step(pair, nu);
                    if !in_positive_cone(&mu.add(&q.neg())) {
                        continue;
                    }
                    let inv = spectrum
                        .b(&q)
                        .inv()
                        .ok_or_else(|| Error::Resonance { mu: q.as_slice().to_vec() })?;
                    let wq = w.mul(&inv).scale(&crate::Rational::from_int(nu));
                    if q == *mu {
                        coeffs[s + 1] = coeffs[s + 1].add(&wq);
                    }
                    stack.push((q, s + 1, wq));
                }
            }
        }
    }
    Ok(BiSeries::from_terms(0, smax, coeffs.into_iter().enumerate().map(|(s, c)| (0, s, c))))
}

/// Whether `x` is a nonnegative integer combination of the `E_jk`, `j < k`
/// (every tail sum `Σ_{k≥m} x_k`, `m ≥ 2`, is nonpositive).
pub fn in_positive_cone(x: &RootVector) -> bool {
    let v = x.as_slice();
    let mut tail = 0i64;
    for &c in v[1..].iter().rev() {
        tail += c;
        if tail > 0 {
            return false;
        }
    }
    true
}

/// `f ↦ Σ_{j<k} Σ_ν S_ν f(μ − ν E_jk)` at fixed truncation.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConvolutionOperator;

impl ConvolutionOperator {
    /// Value at `mu` of the operator applied to the sparse function `f`.
    pub fn apply_at<F: Scalar>(
        &self,
        f: &BTreeMap<RootVector, BiSeries<F>>,
        mu: &RootVector,
        lq: usize,
        sg: usize,
    ) -> BiSeries<F> {
        let mut acc = BiSeries::zero(lq, sg);
        for (src, val) in f {
            let d = mu.add(&src.neg());
            if let Some(nu) = single_pair_multiple(&d) {
                acc.add_assign(&mul_s(val, nu));
            }
        }
        acc
    }
}

/// `Some(ν)` when `d = ν E_jk` for some pair `j < k` and `ν ≠ 0`.
fn single_pair_multiple(d: &RootVector) -> Option<i64> {
    let mut nz = d.as_slice().iter().enumerate().filter(|(_, &x)| x != 0);
    let (_, &a) = nz.next()?;
    let (_, &b) = nz.next()?;
    if nz.next().is_some() || a != -b {
        return None;
    }
    Some(a)
}

/// Outcome of checking `(b(μ) − Ẽ) α(μ) = γ 𝕊α(μ)` over a table.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport<F> {
    pub window_points: usize,
    pub halo_points: usize,
    /// Nonzero residuals at window points, through `q^{2Lq}`.
    pub window_residuals: BTreeMap<RootVector, BiSeries<F>>,
    /// Nonzero residuals at halo points, through each point's exact order.
    pub halo_residuals: BTreeMap<RootVector, BiSeries<F>>,
}

impl<F> ResidualReport<F> {
    pub fn is_exact(&self) -> bool {
        self.window_residuals.is_empty() && self.halo_residuals.is_empty()
    }
}

pub fn corollary_residual<S: Spectrum>(
    table: &AlphaTable<S::Scalar>,
    spectrum: &S,
    eigenvalue: &EigenvalueSeries<S::Scalar>,
) -> Result<ResidualReport<S::Scalar>, Error> {
    let (lq, sg) = (table.q2_order, table.gamma_order);
    if eigenvalue.tilde_e.orders() != (lq, sg) {
        return Err(Error::usage("eigenvalue and alpha table truncations differ"));
    }
    let mut report = ResidualReport {
        window_points: 0,
        halo_points: 0,
        window_residuals: BTreeMap::new(),
        halo_residuals: BTreeMap::new(),
    };
    let index = PairSteps::new(table);
    for (mu, alpha) in &table.entries {
        let Some(valid) = table.exact_through(mu) else { continue };
        let b = spectrum.b(mu);
        let lhs = alpha.scale(&b).sub(&alpha.mul(&eigenvalue.tilde_e));
        let rhs = index.apply(mu, lq, sg).shift_gamma(1);
        let mut res = lhs.sub(&rhs);
        res.truncate_q2(valid);
        let window = valid == lq;
        if window {
            report.window_points += 1;
        } else {
            report.halo_points += 1;
        }
        if !res.is_zero() {
            if window {
                report.window_residuals.insert(mu.clone(), res);
            } else {
                report.halo_residuals.insert(mu.clone(), res);
            }
        }
    }
    Ok(report)
}

/// Lookup helper for `𝕊α` over a table: steps `ν` are bounded by the table extent.
struct PairSteps<'a, F> {
    table: &'a AlphaTable<F>,
    max_nu: i64,
}

impl<'a, F: Scalar> PairSteps<'a, F> {
    fn new(table: &'a AlphaTable<F>) -> Self {
        let lo = table.entries.keys().flat_map(|m| m.as_slice().iter().copied()).min().unwrap_or(0);
        let hi = table.entries.keys().flat_map(|m| m.as_slice().iter().copied()).max().unwrap_or(0);
        PairSteps { table, max_nu: (hi - lo).max(1) }
    }

    fn apply(&self, mu: &RootVector, lq: usize, sg: usize) -> BiSeries<F> {
        let mut acc = BiSeries::zero(lq, sg);
        for pair in pairs(self.table.n_particles) {
            for nu in -self.max_nu..=self.max_nu {
                if nu == 0 || (nu < 0 && nu.unsigned_abs() as usize > lq) {
                    continue;
                }
                if let Some(v) = self.table.entries.get(&mu.step(pair, -nu)) {
                    acc.add_assign(&mul_s(v, nu));
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_multiples() {
        let d = RootVector::new(alloc::vec![0, 3, -3]).unwrap();
        assert_eq!(single_pair_multiple(&d), Some(3));
        let d = RootVector::new(alloc::vec![1, 1, -2]).unwrap();
        assert_eq!(single_pair_multiple(&d), None);
        assert_eq!(single_pair_multiple(&RootVector::zero(3)), None);
    }

    #[test]
    fn default_window_examples() {
        assert_eq!(default_window(&[1, 0], 2), 2);
        assert_eq!(default_window(&[2, 1], 0), 1);
        assert_eq!(default_window(&[2, 1, 1], 1), 2 + 1);
    }
}
