//! Picard iteration of `Ẽ ← −Σ_k G_k Ẽ^k` in the truncated ring.

use super::gk::GkTable;
use crate::algebra::{BiSeries, Scalar};

/// One application of the map to `e`.
pub fn fixed_point_step<F: Scalar>(gk: &GkTable<F>, e: &BiSeries<F>) -> BiSeries<F> {
    // Horner: G_0 + Ẽ(G_1 + Ẽ(G_2 + …)).
    let (lq, sg) = (gk.q2_order(), gk.gamma_order());
    let mut acc = BiSeries::zero(lq, sg);
    for g in gk.entries().iter().rev() {
        acc = acc.mul(e).add(g);
    }
    acc.neg()
}

/// `iterations` steps from `Ẽ = 0`.
pub fn fixed_point_iterate<F: Scalar>(gk: &GkTable<F>, iterations: usize) -> BiSeries<F> {
    let mut e = BiSeries::zero(gk.q2_order(), gk.gamma_order());
    for _ in 0..iterations {
        let next = fixed_point_step(gk, &e);
        if next == e {
            break;
        }
        e = next;
    }
    e
}
