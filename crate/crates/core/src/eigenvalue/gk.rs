//! Taylor coefficients `G_k` of the self-consistency function
//! `G(ξ) = Σ_{s≥2} γ^s Σ S_{ν_s}…S_{ν_1} δ(Σ ν_r E_{j_r k_r}, 0) / Π_{r<s} [b(μ_r) − ξ]`.
//!
//! Expanding each `1/(b − ξ) = Σ_ℓ ξ^ℓ / b^{1+ℓ}` attaches the exponent
//! `1 + ℓ_r` to the `r`-th partial sum, with `Σ_r ℓ_r = k`. Walks that touch
//! the origin before their last step are excluded: the origin carries the
//! normalization `α(0) = 1` and is never a denominator.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BiSeries, Scalar};
use crate::error::Error;
use crate::lattice::{RootVector, Spectrum};
use crate::walk::{Layer, WalkBounds};

/// `G_0 … G_kmax` for one model and truncation window.
#[derive(Clone, Debug, PartialEq)]
pub struct GkTable<F> {
    q2_order: usize,
    gamma_order: usize,
    label: String,
    entries: Vec<BiSeries<F>>,
}

impl<F: Scalar> GkTable<F> {
    pub fn from_entries(
        q2_order: usize,
        gamma_order: usize,
        label: String,
        entries: Vec<BiSeries<F>>,
    ) -> Result<Self, Error> {
        if entries.iter().any(|e| e.orders() != (q2_order, gamma_order)) {
            return Err(Error::usage("G_k entry with mismatched truncation"));
        }
        Ok(GkTable { q2_order, gamma_order, label, entries })
    }

    pub fn q2_order(&self) -> usize {
        self.q2_order
    }

    pub fn gamma_order(&self) -> usize {
        self.gamma_order
    }

    /// Description of the model the table was computed for.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Highest available `k`; `None` for an empty table.
    pub fn kmax(&self) -> Option<usize> {
        self.entries.len().checked_sub(1)
    }

    pub fn get(&self, k: usize) -> Option<&BiSeries<F>> {
        self.entries.get(k)
    }

    pub fn entries(&self) -> &[BiSeries<F>] {
        &self.entries
    }
}

/// All `G_k`, `0 ≤ k ≤ kmax`, in one layered walk sum.
pub fn compute_gk_table<S: Spectrum>(
    spectrum: &S,
    lq: usize,
    sg: usize,
    kmax: usize,
) -> Result<GkTable<S::Scalar>, Error> {
    let nn = spectrum.n_particles();
    let width = kmax + 1;
    let bounds = WalkBounds { lq, n_particles: nn, floor_moment: 0 };
    let zero = BiSeries::<S::Scalar>::zero(lq, sg);

    let mut start = vec![zero.clone(); width];
    start[0] = BiSeries::one(lq, sg);
    let mut layer: Layer<S::Scalar> = BTreeMap::new();
    layer.insert(RootVector::zero(nn), start);

    let mut g = vec![zero.clone(); width];
    let mut inv_powers: BTreeMap<RootVector, Vec<S::Scalar>> = BTreeMap::new();

    for _ in 1..=sg {
        let raw = bounds.step(&layer);
        let mut next: Layer<S::Scalar> = BTreeMap::new();
        for (mu, mut vals) in raw {
            if mu.is_zero() {
                for (acc, v) in g.iter_mut().zip(&vals) {
                    acc.add_assign(v);
                }
                continue;
            }
            if !bounds.prune_values(&mu, &mut vals) {
                continue;
            }
            let pows = match inv_powers.get(&mu) {
                Some(p) => p,
                None => {
                    let inv = spectrum
                        .b(&mu)
                        .inv()
                        .ok_or_else(|| Error::Resonance { mu: mu.as_slice().to_vec() })?;
                    let mut p = Vec::with_capacity(width);
                    let mut acc = inv.clone();
                    for _ in 0..width {
                        p.push(acc.clone());
                        acc = acc.mul(&inv);
                    }
                    inv_powers.entry(mu.clone()).or_insert(p)
                }
            };
            let mut out = vec![zero.clone(); width];
            for (j, v) in vals.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for (l, p) in pows.iter().enumerate().take(width - j) {
                    out[j + l].add_assign(&v.scale(p));
                }
            }
            next.insert(mu, out);
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    GkTable::from_entries(lq, sg, spectrum.describe(), g)
}

/// A single `G_k`.
pub fn compute_gk<S: Spectrum>(
    k: usize,
    spectrum: &S,
    lq: usize,
    sg: usize,
) -> Result<BiSeries<S::Scalar>, Error> {
    let table = compute_gk_table(spectrum, lq, sg, k)?;
    Ok(table.entries[k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PPoly, PRatFunc, Rational};
    use crate::lattice::SymbolicPair;

    #[test]
    fn leading_g0_coefficient_symbolic() {
        let g0 = compute_gk(0, &SymbolicPair::new(1), 1, 2).unwrap();
        let expect = PRatFunc::new(PPoly::from_ints(&[-1]), PPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(g0.coeff(1, 2), expect);
        assert_eq!(g0.len(), 1);
    }

    #[test]
    fn no_q0_and_no_low_gamma_terms() {
        let table = compute_gk_table(&SymbolicPair::new(0), 3, 6, 2).unwrap();
        for g in table.entries() {
            assert!(g.terms().all(|(l, s, _)| l >= 1 && s >= 2), "{g:?}");
        }
        let _ = Rational::one();
    }
}
