//! Two-particle recursion in powers of `q²`.
//!
//! With `α(μ) = Σ_ℓ α_ℓ(μ) q^{2ℓ}` and `E = E_0 + Σ_{ℓ≥1} E_ℓ q^{2ℓ}` the
//! eigenvalue equation reads, order by order,
//!
//! `b(μ) α_ℓ(μ) = Σ_{m=1}^{ℓ} E_m α_{ℓ−m}(μ) + γ [S α]_ℓ(μ)`
//!
//! with `α_ℓ(0) = δ_{ℓ0}` and `α_ℓ(μ) = 0` for `μ < −ℓ`. At `μ = 0` the
//! left side vanishes and the equation gives `E_ℓ = −γ [S α]_ℓ(0)`. Within
//! one order the negative `μ` are solved first (they do not involve `E_ℓ`),
//! then `E_ℓ`, then the positive `μ` in increasing order.

use alloc::collections::BTreeMap;

use crate::algebra::{BiSeries, Scalar};
use crate::error::Error;
use crate::lattice::{s_terms, PairIndex, RootVector, Spectrum};

use super::EigenvalueSeries;

/// Result of the recursion: the eigenvalue and the table `α_ℓ(μ)`.
///
/// Table values are polynomials in `γ` (stored with `q²`-order 0); the
/// entry for `(ℓ, μ)` is computed for `−ℓ ≤ μ ≤ Lq − ℓ` and
/// stored when nonzero.
#[derive(Clone, Debug)]
pub struct Q2Solution<F> {
    pub eigenvalue: EigenvalueSeries<F>,
    pub alpha: BTreeMap<(usize, i64), BiSeries<F>>,
}

impl<F: Scalar> Q2Solution<F> {
    /// `α_ℓ(μ)`, zero outside the stored range.
    pub fn alpha_coeff(&self, l: usize, mu: i64) -> BiSeries<F> {
        self.alpha
            .get(&(l, mu))
            .cloned()
            .unwrap_or_else(|| BiSeries::zero(0, self.eigenvalue.tilde_e.gamma_order()))
    }

    /// `α(μ)` reassembled as a series in `q²`, through order `Lq − max(μ, 0)`.
    pub fn alpha_series(&self, mu: i64) -> BiSeries<F> {
        let (lq, sg) = self.eigenvalue.tilde_e.orders();
        let mut out = BiSeries::zero(lq, sg);
        for l in 0..=lq {
            if let Some(v) = self.alpha.get(&(l, mu)) {
                for (_, s, c) in v.terms() {
                    out.add_term(l, s, c.clone());
                }
            }
        }
        out
    }
}

pub fn q2_recursion<S: Spectrum>(spectrum: &S, lq: usize, sg: usize) -> Result<Q2Solution<S::Scalar>, Error> {
    if spectrum.n_particles() != 2 {
        return Err(Error::usage("the q² recursion is for two particles only"));
    }
    let pair = PairIndex::new(1, 2)?;
    let root = |mu: i64| RootVector::pair(2, pair, mu);
    let zero = BiSeries::<S::Scalar>::zero(0, sg);

    let mut alpha: BTreeMap<(usize, i64), BiSeries<S::Scalar>> = BTreeMap::new();
    alpha.insert((0, 0), BiSeries::one(0, sg));
    let mut energies: alloc::vec::Vec<BiSeries<S::Scalar>> = alloc::vec![zero.clone()];

    // γ [S α]_ℓ(μ), reading only entries already in the table.
    let s_alpha = |alpha: &BTreeMap<(usize, i64), BiSeries<S::Scalar>>, l: usize, mu: i64| {
        let mut acc = zero.clone();
        let nu_max = mu + l as i64;
        for nu in (-(l as i64))..=nu_max {
            if nu == 0 {
                continue;
            }
            for (shift, c) in s_terms(nu, l) {
                if let Some(v) = alpha.get(&(l - shift, mu - nu)) {
                    acc.add_assign(&v.scale_rational(&crate::Rational::from_int(c)));
                }
            }
        }
        acc.shift_gamma(1)
    };

    for l in 0..=lq {
        let solve = |alpha: &BTreeMap<(usize, i64), BiSeries<S::Scalar>>,
                     energies: &[BiSeries<S::Scalar>],
                     mu: i64|
         -> Result<BiSeries<S::Scalar>, Error> {
            let mut rhs = s_alpha(alpha, l, mu);
            for (m, e) in energies.iter().enumerate().skip(1) {
                if let Some(a) = alpha.get(&(l - m, mu)) {
                    rhs.add_assign(&e.mul(a));
                }
            }
            if rhs.is_zero() {
                return Ok(rhs);
            }
            let inv = spectrum
                .b(&root(mu))
                .inv()
                .ok_or_else(|| Error::Resonance { mu: root(mu).as_slice().to_vec() })?;
            Ok(rhs.scale(&inv))
        };

        for mu in -(l as i64)..0 {
            let v = solve(&alpha, &energies, mu)?;
            alpha.insert((l, mu), v);
        }
        if l > 0 {
            let e_l = s_alpha(&alpha, l, 0).neg();
            energies.push(e_l);
        }
        for mu in 1..=(lq - l) as i64 {
            let v = solve(&alpha, &energies, mu)?;
            alpha.insert((l, mu), v);
        }
    }
    alpha.retain(|_, v| !v.is_zero());

    let mut tilde_e = BiSeries::zero(lq, sg);
    for (l, e) in energies.iter().enumerate() {
        for (_, s, c) in e.terms() {
            tilde_e.add_term(l, s, c.clone());
        }
    }
    Ok(Q2Solution { eigenvalue: EigenvalueSeries { e0: spectrum.e0(), tilde_e }, alpha })
}
