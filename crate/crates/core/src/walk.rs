//! Layered path sums over the root lattice.
//!
//! Both the `G_k` building blocks and the eigenfunction coefficients are sums
//! over walks `0 → μ_1 → … → μ_s` with steps `ν E_jk`, weight `γ S_ν` per step
//! and a denominator attached to every intermediate point. Walks are summed
//! layer by layer (one layer per power of `γ`), keyed by the current point,
//! so shared prefixes are computed once.
//!
//! Pruning uses the moment `m(μ) = Σ ℓ μ_ℓ`. Positive steps are free in `q²`
//! but lower the moment; negative steps raise it by at most `(N−1)|ν|` and
//! cost `(q²)^{|ν|}`. Reaching a target set `{m ≥ floor}` from `μ` therefore
//! costs at least `⌈(floor − m(μ))/(N−1)⌉` powers of `q²`, and every
//! coefficient that cannot be paid for is discarded.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::{BiSeries, Rational, Scalar};
use crate::lattice::{pairs, s_terms, PairIndex, RootVector};

#[derive(Clone, Debug)]
pub(crate) struct WalkBounds {
    pub lq: usize,
    pub n_particles: usize,
    pub floor_moment: i64,
}

/// One layer: point → graded values (index = ξ-power, length ≥ 1).
pub(crate) type Layer<F> = BTreeMap<RootVector, Vec<BiSeries<F>>>;

impl WalkBounds {
    /// Minimal `q²`-power needed to reach the target moment floor from `mu`.
    pub fn cost(&self, mu: &RootVector) -> usize {
        let deficit = self.floor_moment - mu.moment();
        if deficit <= 0 {
            return 0;
        }
        let per = (self.n_particles as i64 - 1).max(1);
        ((deficit + per - 1) / per) as usize
    }

    /// Drop coefficients that cannot reach the target within `(q²)^lq`.
    /// Returns `false` when nothing survives.
    pub fn prune_values<F: Scalar>(&self, mu: &RootVector, vals: &mut [BiSeries<F>]) -> bool {
        let cost = self.cost(mu);
        if cost > self.lq {
            return false;
        }
        let keep = self.lq - cost;
        let mut any = false;
        for v in vals.iter_mut() {
            v.truncate_q2(keep);
            any |= !v.is_zero();
        }
        any
    }

    /// Advance every walk in `layer` by one step, multiplying by `γ S_ν`.
    /// Denominators are not applied here.
    pub fn step<F: Scalar>(&self, layer: &Layer<F>) -> Layer<F> {
        let pair_list = pairs(self.n_particles);
        let mut next: Layer<F> = BTreeMap::new();
        for (mu, vals) in layer {
            let Some(o_min) = vals.iter().filter_map(|v| v.min_q2_power()).min() else {
                continue;
            };
            if o_min > self.lq {
                continue;
            }
            let budget = self.lq - o_min;
            for &pair in &pair_list {
                self.for_each_nu(mu, pair, budget, |nu, target| {
                    let contrib: Vec<BiSeries<F>> =
                        vals.iter().map(|v| mul_s(v, nu).shift_gamma(1)).collect();
                    match next.get_mut(&target) {
                        Some(acc) => {
                            for (a, c) in acc.iter_mut().zip(&contrib) {
                                a.add_assign(c);
                            }
                        }
                        None => {
                            next.insert(target, contrib);
                        }
                    }
                });
            }
        }
        next.retain(|_, v| v.iter().any(|s| !s.is_zero()));
        next
    }

    fn for_each_nu(
        &self,
        mu: &RootVector,
        pair: PairIndex,
        budget: usize,
        mut visit: impl FnMut(i64, RootVector),
    ) {
        // Positive steps cost nothing directly but lower the moment.
        let mut nu = 1;
        loop {
            let target = mu.step(pair, nu);
            if self.cost(&target) > budget {
                break;
            }
            visit(nu, target);
            nu += 1;
        }
        // Negative steps cost (q²)^|ν|.
        let mut nu: i64 = -1;
        while nu.unsigned_abs() as usize <= budget {
            let target = mu.step(pair, nu);
            if nu.unsigned_abs() as usize + self.cost(&target) <= budget {
                visit(nu, target);
            }
            nu -= 1;
        }
    }
}

/// `S_ν · v`.
pub(crate) fn mul_s<F: Scalar>(v: &BiSeries<F>, nu: i64) -> BiSeries<F> {
    let (lq, sg) = v.orders();
    let mut out = BiSeries::zero(lq, sg);
    for (shift, c) in s_terms(nu, lq) {
        let r = Rational::from_int(c);
        for (l, s, a) in v.terms() {
            if l + shift > lq {
                break;
            }
            out.add_term(l + shift, s, a.scale(&r));
        }
    }
    out
}
