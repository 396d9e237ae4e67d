//! Eigenvalue series by three independent routes.
//!
//! * Lagrange inversion of `Ẽ = −G(Ẽ)` from the Taylor coefficients `G_k`.
//! * Picard iteration of the same equation.
//! * The two-particle recursion in `q²`, which also yields eigenfunction data.

mod closed_form;
mod fixed_point;
mod gk;
mod lagrange;
mod recursion;

pub use closed_form::{gamma2_closed_form, gamma2_resummed};
pub use fixed_point::{fixed_point_iterate, fixed_point_step};
pub use gk::{compute_gk, compute_gk_table, GkTable};
pub use lagrange::{lagrange_compose, lagrange_terms, LagrangeTerm, MAX_ETA_ORDER};
pub use recursion::{q2_recursion, Q2Solution};

use crate::algebra::{BiSeries, Scalar};
use crate::error::Error;
use crate::lattice::Spectrum;

/// `E = e0 + Ẽ`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueSeries<F> {
    pub e0: F,
    pub tilde_e: BiSeries<F>,
}

impl<F: Scalar> EigenvalueSeries<F> {
    /// The full series including `E_0` at `(q²)^0 γ^0`.
    pub fn total(&self) -> BiSeries<F> {
        let (lq, sg) = self.tilde_e.orders();
        self.tilde_e.add(&BiSeries::constant(self.e0.clone(), lq, sg))
    }
}

/// `G_k` table with `k ≤ Lq − 1`.
pub fn gk_table_for<S: Spectrum>(spectrum: &S, lq: usize, sg: usize) -> Result<GkTable<S::Scalar>, Error> {
    compute_gk_table(spectrum, lq, sg, lq.saturating_sub(1))
}

pub fn eigenvalue_via_lagrange<S: Spectrum>(
    spectrum: &S,
    lq: usize,
    sg: usize,
) -> Result<EigenvalueSeries<S::Scalar>, Error> {
    let table = gk_table_for(spectrum, lq, sg)?;
    eigenvalue_from_table_lagrange(spectrum, &table)
}

/// Lagrange composition on a precomputed (possibly cached) table.
pub fn eigenvalue_from_table_lagrange<S: Spectrum>(
    spectrum: &S,
    table: &GkTable<S::Scalar>,
) -> Result<EigenvalueSeries<S::Scalar>, Error> {
    let tilde_e = lagrange_compose(table, table.q2_order())?;
    Ok(EigenvalueSeries { e0: spectrum.e0(), tilde_e })
}

pub fn eigenvalue_via_fixed_point<S: Spectrum>(
    spectrum: &S,
    lq: usize,
    sg: usize,
    iterations: usize,
) -> Result<EigenvalueSeries<S::Scalar>, Error> {
    if iterations < lq {
        return Err(Error::usage(alloc::format!(
            "fixed-point iteration needs at least Lq = {lq} steps, got {iterations}"
        )));
    }
    let table = gk_table_for(spectrum, lq, sg)?;
    Ok(EigenvalueSeries { e0: spectrum.e0(), tilde_e: fixed_point_iterate(&table, iterations) })
}

pub fn eigenvalue_via_q2_recursion_n2<S: Spectrum>(
    spectrum: &S,
    lq: usize,
    sg: usize,
) -> Result<EigenvalueSeries<S::Scalar>, Error> {
    Ok(q2_recursion(spectrum, lq, sg)?.eigenvalue)
}
