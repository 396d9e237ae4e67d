//! Floating point theta function, pair potential and Weierstrass `℘`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::OracleError;

/// Nome `q = e^{−β/2}` and the number of product/sum terms kept.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipticParams {
    pub q: f64,
    pub m_cut: usize,
}

impl EllipticParams {
    /// Chooses `m_cut` so that the first dropped factor is below `1e−18`.
    pub fn from_q(q: f64) -> Result<Self, OracleError> {
        if !(0.0..1.0).contains(&q) {
            return Err(OracleError::Domain(format!("nome q = {q} outside [0, 1)")));
        }
        let m_cut = if q == 0.0 { 1 } else { ((-18.0 * 10f64.ln()) / (2.0 * q.ln())).ceil().max(1.0) as usize };
        Ok(EllipticParams { q, m_cut })
    }

    pub fn from_beta(beta: f64) -> Result<Self, OracleError> {
        if beta <= 0.0 {
            return Err(OracleError::Domain("beta must be positive".into()));
        }
        Self::from_q((-beta / 2.0).exp())
    }

    /// `β = −2 ln q` (infinite at `q = 0`).
    pub fn beta(&self) -> f64 {
        -2.0 * self.q.ln()
    }

    fn q2_powers(&self) -> impl Iterator<Item = f64> + '_ {
        let q2 = self.q * self.q;
        (1..=self.m_cut as i32).map(move |n| q2.powi(n)).take_while(|a| *a > 0.0)
    }

    /// `Σ_m 2a sin z / (1 − 2a cos z + a²)` with `a = q^{2m}`: the smooth
    /// part of `θ'/θ`, and its derivative.
    fn log_derivative_tail(&self, z: f64) -> (f64, f64) {
        let (s, c) = z.sin_cos();
        let (mut t, mut dt) = (0.0, 0.0);
        for a in self.q2_powers() {
            let d = 1.0 - 2.0 * a * c + a * a;
            t += 2.0 * a * s / d;
            dt += 2.0 * a * c / d - (2.0 * a * s).powi(2) / (d * d);
        }
        (t, dt)
    }

    /// `Σ_{m≠0} 1/(4 sin²((r + iβm)/2))`, real for real `r`.
    fn potential_tail(&self, r: f64) -> f64 {
        let e = Complex64::from_polar(1.0, r);
        self.q2_powers()
            .map(|a| {
                let u = e * a;
                -2.0 * (u / ((1.0 - u) * (1.0 - u))).re
            })
            .sum()
    }
}

/// `θ(z) = sin(z/2) Π_{n≤m_cut} (1 − 2q^{2n} cos z + q^{4n})`.
pub fn eval_theta(z: f64, ep: &EllipticParams) -> f64 {
    let c = z.cos();
    ep.q2_powers().fold((z / 2.0).sin(), |acc, a| acc * (1.0 - 2.0 * a * c + a * a))
}

/// `V(r) = Σ_m 1/(4 sin²((r + iβm)/2))`.
pub fn eval_potential(r: f64, ep: &EllipticParams) -> Result<f64, OracleError> {
    let s = (r / 2.0).sin();
    if s.abs() < 1e-300 || (r / (2.0 * PI)).fract() == 0.0 {
        return Err(OracleError::Domain(format!("potential is singular at r = {r}")));
    }
    Ok(1.0 / (4.0 * s * s) + ep.potential_tail(r))
}

/// Pieces of the conjugated two-body operator that stay finite at `x = 0`:
/// `(V − (θ'/θ)², θ''/θ)`.
///
/// The `1/(4 sin²)` singularities cancel exactly between the terms, so they
/// are removed by hand: `1/sin² − cot² = 1`.
pub fn regular_parts(x: f64, ep: &EllipticParams) -> (f64, f64) {
    let (t, dt) = ep.log_derivative_tail(x);
    let cot = 1.0 / (x / 2.0).tan();
    let v_minus_l2 = 0.25 + ep.potential_tail(x) - cot * t - t * t;
    let theta2 = -0.25 + dt + cot * t + t * t;
    (v_minus_l2, theta2)
}

/// `c_0 = 1/12 − ½ Σ_{m≥1} sinh^{−2}(βm/2)`.
pub fn potential_constant(ep: &EllipticParams) -> f64 {
    let tail: f64 = ep.q2_powers().map(|a| 4.0 * a / ((1.0 - a) * (1.0 - a))).sum();
    1.0 / 12.0 - 0.5 * tail
}

/// Weierstrass `℘(z)` for periods `2π`, `iβ`, from its Laurent series with
/// Eisenstein sums taken directly over a square block of the lattice.
///
/// Only meant as an independent check; valid for `|z|` well inside
/// `min(2π, β)`.
pub fn weierstrass_p(z: f64, ep: &EllipticParams, radius: i64) -> Result<f64, OracleError> {
    let beta = ep.beta();
    if !beta.is_finite() {
        return Err(OracleError::Domain("weierstrass_p needs q > 0".into()));
    }
    let reach = (2.0 * PI).min(beta);
    if z.abs() >= 0.5 * reach {
        return Err(OracleError::Domain(format!("|z| = {} too large for the Laurent series", z.abs())));
    }
    const KMAX: usize = 40;
    let mut g = [0.0f64; KMAX + 2];
    for a in -radius..=radius {
        for b in -radius..=radius {
            if a == 0 && b == 0 {
                continue;
            }
            let w = Complex64::new(2.0 * PI * a as f64, beta * b as f64);
            let inv2 = (w * w).inv();
            let mut p = inv2 * inv2;
            for slot in g.iter_mut().skip(2) {
                // slot k holds G_{2k}
                *slot += p.re;
                p *= inv2;
            }
        }
    }
    let mut acc = 1.0 / (z * z);
    for k in 1..=KMAX {
        acc += (2 * k + 1) as f64 * g[k + 1] * z.powi(2 * k as i32);
    }
    Ok(acc)
}
