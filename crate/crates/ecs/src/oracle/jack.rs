//! Trigonometric oracle: the conjugated Sutherland operator on a homogeneous
//! block of symmetric polynomials in two variables, diagonalized numerically.
//!
//! `D = Σ (z_j ∂_j)² + λ (z_1 + z_2)/(z_1 − z_2) (z_1 ∂_1 − z_2 ∂_2)` maps the
//! monomial symmetric function `m_(a,b)` (`a ≥ b`, `d = a − b`) to
//! `(a² + b²) m_(a,b) + λ d [m_(a,b) + 2 Σ_{0<i<d/2} m_(a−i,b+i) + 2 [d even] m_(b+d/2,b+d/2)]`.

use nalgebra::DMatrix;

use ecs_core::fhat::LaurentPoly;
use ecs_core::Rational;

use super::OracleError;

/// Partitions `(d − j, j)` of `d` with at most two parts, dominance order.
pub fn two_part_partitions(d: i64) -> Vec<[i64; 2]> {
    (0..=d / 2).map(|j| [d - j, j]).collect()
}

/// Matrix of `D` on `m_ν`, columns indexed like [`two_part_partitions`].
pub fn sutherland_matrix(d: i64, lambda: f64) -> DMatrix<f64> {
    let parts = two_part_partitions(d);
    let index = |p: [i64; 2]| parts.iter().position(|q| *q == p).expect("partition in block");
    let mut m = DMatrix::zeros(parts.len(), parts.len());
    for (c, &[a, b]) in parts.iter().enumerate() {
        let gap = a - b;
        m[(c, c)] += (a * a + b * b) as f64 + lambda * gap as f64;
        for i in 1..=gap / 2 {
            let target = [a - i, b + i];
            m[(index(target), c)] += 2.0 * lambda * gap as f64;
        }
    }
    m
}

/// Offset making both entries non-negative; multiplying by `(z_1 z_2)^c`
/// shifts `D` by a constant on a homogeneous block.
fn block_shift(n: [i64; 2]) -> i64 {
    n[1].min(0)
}

/// Coefficient vector of the eigenfunction of `D` for `n` on the full block
/// of degree `n_1 + n_2`, normalized so the `m_n` entry is 1. Obtained from
/// the smallest singular vector of `D − ε`, `ε = n_1² + n_2² + λ(n_1 − n_2)`.
pub fn jack_vector(n: [i64; 2], lambda: f64) -> Result<Vec<f64>, OracleError> {
    if n[0] < n[1] {
        return Err(OracleError::Domain("quantum numbers must be weakly decreasing".into()));
    }
    let c = block_shift(n);
    let m = [n[0] - c, n[1] - c];
    let eps = (m[0] * m[0] + m[1] * m[1]) as f64 + lambda * (m[0] - m[1]) as f64;
    let parts = two_part_partitions(m[0] + m[1]);
    let size = parts.len();
    let lead = parts.iter().position(|p| *p == m).expect("n lies in its block");
    let shifted = sutherland_matrix(m[0] + m[1], lambda) - DMatrix::identity(size, size) * eps;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.ok_or_else(|| OracleError::Linalg("SVD did not return vectors".into()))?;
    let (k, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .ok_or_else(|| OracleError::Linalg("empty block".into()))?;
    let v: Vec<f64> = v_t.row(k).iter().copied().collect();
    if v[lead].abs() < 1e-12 {
        return Err(OracleError::Linalg("eigenvector has no m_n component".into()));
    }
    Ok(v.iter().map(|x| x / v[lead]).collect())
}

/// Coefficients of `Φ` (already free of `q` and `γ`) on the `m_ν` of the
/// block of `n`, normalized like [`jack_vector`]. Fails if `Φ` is not
/// symmetric or has terms outside the block.
pub fn monomial_coefficients(phi: &LaurentPoly, n: [i64; 2]) -> Result<Vec<Rational>, OracleError> {
    let c = block_shift(n);
    let m = [n[0] - c, n[1] - c];
    let parts = two_part_partitions(m[0] + m[1]);
    let lead = parts.iter().position(|p| *p == m).expect("n lies in its block");
    let mut out = vec![Rational::zero(); parts.len()];
    for (exps, coeff) in phi.terms() {
        let val = coeff.coeff(0, 0);
        if val.is_zero() {
            continue;
        }
        let (a, b) = (exps[0] - c, exps[1] - c);
        let key = [a.max(b), a.min(b)];
        let idx = parts
            .iter()
            .position(|p| *p == key)
            .ok_or_else(|| OracleError::Domain(format!("term {exps:?} outside the homogeneous block")))?;
        let mirror = [exps[1], exps[0]];
        if phi.get(&mirror).map(|x| x.coeff(0, 0)) != Some(val.clone()) {
            return Err(OracleError::Domain(format!("phi is not symmetric at {exps:?}")));
        }
        out[idx] = val;
    }
    let norm = out[lead].clone();
    if norm.is_zero() {
        return Err(OracleError::Domain("phi has no m_n component".into()));
    }
    Ok(out.iter().map(|x| x / &norm).collect())
}
