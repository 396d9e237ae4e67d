//! Grid residual of an assembled two-particle eigenfunction.

use num_complex::Complex64;
use std::f64::consts::PI;

use ecs_core::eigenvalue::EigenvalueSeries;
use ecs_core::fhat::LaurentPoly;
use ecs_core::{BiSeries, Rational};

use super::elliptic::{eval_potential, eval_theta, EllipticParams};
use super::OracleError;

/// `Σ c_{ℓ,s} q^{2ℓ} γ^s`.
pub fn eval_series(x: &BiSeries<Rational>, q: f64, gamma: f64) -> f64 {
    x.terms().map(|(l, s, c)| c.to_f64() * q.powi(2 * l as i32) * gamma.powi(s as i32)).sum()
}

/// `Φ` with numeric `q`, `γ` as a list of `(exponents, value)`.
pub fn numeric_terms(phi: &LaurentPoly, q: f64, gamma: f64) -> Vec<(Vec<i64>, f64)> {
    phi.terms().map(|(k, c)| (k.to_vec(), eval_series(c, q, gamma))).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    /// `max |(H − E)ψ| / max |ψ|` over the grid.
    pub relative_residual: f64,
    /// Richardson estimate of the finite-difference error in the same units.
    pub fd_error: f64,
    pub grid_points: usize,
}

// Eighth-order central second derivative.
const STENCIL: [f64; 5] = [-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];

fn second_derivative(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let mut acc = STENCIL[0] * f(x);
    for (k, c) in STENCIL.iter().enumerate().skip(1) {
        let d = k as f64 * h;
        acc += c * (f(x + d) + f(x - d));
    }
    acc / (h * h)
}

/// Evaluates `ψ = Ψ Φ` at `X = 0` as a function of `x = x_1 − x_2 ∈ (0, 2π)`
/// and applies the relative Hamiltonian `K²/2 − 2∂_x² + γV`.
///
/// Samples 64 points at distance ≥ 0.8 from a collision, with stencil step
/// `2π/grid`. Fails with `GridTooCoarse` when the finite-difference error estimate exceeds
/// `fd_tolerance` (relative).
pub fn residual_check(
    phi: &LaurentPoly,
    e: &EigenvalueSeries<Rational>,
    lambda: &Rational,
    ep: &EllipticParams,
    grid: usize,
    fd_tolerance: f64,
) -> Result<ResidualReport, OracleError> {
    if phi.n_vars() != 2 {
        return Err(OracleError::Domain("residual_check handles two particles".into()));
    }
    let lam = lambda.to_f64();
    let gamma = 2.0 * lam * (lam - 1.0);
    let terms = numeric_terms(phi, ep.q, gamma);
    let k_total = match phi.total_degrees().into_iter().collect::<Vec<_>>()[..] {
        [k] => k,
        _ => return Err(OracleError::Domain("phi is not homogeneous".into())),
    };
    let energy = eval_series(&e.total(), ep.q, gamma);
    let f = |x: f64| -> f64 {
        let mut g = Complex64::new(0.0, 0.0);
        for (k, c) in &terms {
            g += Complex64::from_polar(*c, (k[0] - k[1]) as f64 * x / 2.0);
        }
        eval_theta(x, ep).powf(lam) * g.re
    };
    // Fixed sample points away from the collision; `grid` sets the stencil step.
    let margin = 0.8;
    let h = 2.0 * PI / grid as f64;
    if 8.0 * h >= margin {
        return Err(OracleError::GridTooCoarse { fd_error: f64::INFINITY });
    }
    let samples = 64;
    let (mut max_f, mut max_r, mut max_fd) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..samples {
        let x = margin + (2.0 * PI - 2.0 * margin) * i as f64 / (samples - 1) as f64;
        let fx = f(x);
        let d2 = second_derivative(&f, x, h);
        let d2_coarse = second_derivative(&f, x, 2.0 * h);
        let hf = (k_total * k_total) as f64 / 2.0 * fx - 2.0 * d2 + gamma * eval_potential(x, ep)? * fx;
        max_f = max_f.max(fx.abs());
        max_r = max_r.max((hf - energy * fx).abs());
        max_fd = max_fd.max(2.0 * (d2 - d2_coarse).abs() / 255.0);
    }
    let count = samples;
    if max_f == 0.0 {
        return Err(OracleError::Domain("psi vanishes on the grid".into()));
    }
    let report = ResidualReport { relative_residual: max_r / max_f, fd_error: max_fd / max_f, grid_points: count };
    if report.fd_error > fd_tolerance {
        return Err(OracleError::GridTooCoarse { fd_error: report.fd_error });
    }
    Ok(report)
}
