//! Two-particle eigenvalues by Galerkin projection.
//!
//! With `x = x_1 − x_2` and total momentum `K = n_1 + n_2`, an eigenfunction
//! is `e^{iKX} θ(x)^λ g(x)` where `g` is even and `g(x + 2π) = (−1)^K g(x)`.
//! The trial space is `θ^λ cos((m + κ/2)x)`, `m < M`, `κ = K mod 2`, and the
//! operator is `K²/2 − 2 d²/dx² + γ V(x)`. After moving `θ^λ` through the
//! derivatives the bilinear form is `∫ θ^{2λ} (2 g_i' g_j' + U g_i g_j)` with
//! `U = γ(V − (θ'/θ)²) − 2λ θ''/θ`, bounded on the whole circle.
//!
//! In `t = cos(x/2)` the cosines are the polynomials of parity `κ` and degree
//! `< 2M`. They are represented by Gegenbauer polynomials `C_k^{(λ)}(t)`,
//! orthogonal for the `q = 0` weight, which keeps the overlap matrix close to
//! diagonal; the plain cosine basis loses three digits at `M = 61`.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use std::f64::consts::PI;

use super::elliptic::{eval_theta, regular_parts, EllipticParams};
use super::OracleError;

/// Quadrature points used when the caller has no preference.
pub const DEFAULT_QUADRATURE: usize = 4096;

/// Galerkin matrices for one momentum sector.
#[derive(Clone, Debug)]
pub struct GalerkinProblem {
    pub basis_size: usize,
    pub total_momentum: i64,
    pub lambda: f64,
    /// The operator matrix represents `H − shift`.
    pub shift: f64,
    pub overlap: DMatrix<f64>,
    pub operator: DMatrix<f64>,
}

/// `C_k^{(a)}(t)` for `k = 0..=kmax`.
fn gegenbauer(a: f64, t: f64, kmax: usize) -> Vec<f64> {
    let mut c = vec![1.0; kmax + 1];
    if kmax >= 1 {
        c[1] = 2.0 * a * t;
    }
    for k in 2..=kmax {
        let kf = k as f64;
        c[k] = (2.0 * t * (kf + a - 1.0) * c[k - 1] - (kf + 2.0 * a - 2.0) * c[k - 2]) / kf;
    }
    c
}

/// Compensated running sum.
#[derive(Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Operator and overlap matrices of `H − shift` (unit-diagonal overlap).
fn assemble(
    k_total: i64,
    lambda: f64,
    ep: &EllipticParams,
    m: usize,
    quad: usize,
    shift: f64,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let gamma = 2.0 * lambda * (lambda - 1.0);
    let kappa = k_total.rem_euclid(2) as usize;
    let kmax = 2 * (m - 1) + kappa;
    let du = 1.0 / quad as f64;
    let offset = (k_total * k_total) as f64 / 2.0 - shift;
    let rows: Vec<(Vec<Neumaier>, Vec<Neumaier>)> = (1..quad)
        .collect::<Vec<_>>()
        .par_chunks(256)
        .map(|chunk| {
            let mut a = vec![Neumaier::default(); m * m];
            let mut b = vec![Neumaier::default(); m * m];
            let mut g = vec![0.0; m];
            let mut dg = vec![0.0; m];
            for &j in chunk {
                // x = 2π(u − sin(2πu)/2π) flattens the |x|^{2λ} zero of the
                // weight at the collision to |u|^{6λ+2}, so the trapezoid
                // rule converges fast for any λ. The u = 0 node has weight 0.
                let u = j as f64 * du;
                let x = 2.0 * PI * u - (2.0 * PI * u).sin();
                let jac = 2.0 * PI * (1.0 - (2.0 * PI * u).cos());
                let w = eval_theta(x, ep).powf(2.0 * lambda) * jac * du;
                let (vl, tt) = regular_parts(x, ep);
                let u = gamma * vl - 2.0 * lambda * tt + offset;
                let (s, t) = (x / 2.0).sin_cos();
                let c = gegenbauer(lambda, t, kmax);
                let c1 = gegenbauer(lambda + 1.0, t, kmax);
                for i in 0..m {
                    let k = 2 * i + kappa;
                    g[i] = c[k];
                    // d/dx C_k(cos(x/2)) = −½ sin(x/2) · 2λ C_{k−1}^{(λ+1)}
                    dg[i] = if k == 0 { 0.0 } else { -lambda * s * c1[k - 1] };
                }
                for i in 0..m {
                    for jj in 0..=i {
                        b[i * m + jj].add(w * g[i] * g[jj]);
                        a[i * m + jj].add(w * (2.0 * dg[i] * dg[jj] + u * g[i] * g[jj]));
                    }
                }
            }
            (a, b)
        })
        .collect();
    let mut a = DMatrix::zeros(m, m);
    let mut b = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..=i {
            let (mut sa, mut sb) = (Neumaier::default(), Neumaier::default());
            for (ra, rb) in &rows {
                sa.add(ra[i * m + j].value());
                sb.add(rb[i * m + j].value());
            }
            a[(i, j)] = sa.value();
            a[(j, i)] = sa.value();
            b[(i, j)] = sb.value();
            b[(j, i)] = sb.value();
        }
    }
    // Unit diagonal overlap.
    let scale: Vec<f64> = (0..m).map(|i| 1.0 / b[(i, i)].sqrt()).collect();
    for i in 0..m {
        for j in 0..m {
            a[(i, j)] *= scale[i] * scale[j];
            b[(i, j)] *= scale[i] * scale[j];
        }
    }
    (a, b)
}

impl GalerkinProblem {
    /// Builds the matrices and checks the quadrature by repeating the overlap
    /// on every second node.
    pub fn new(n: [i64; 2], lambda: f64, ep: &EllipticParams, m: usize, quad: usize) -> Result<Self, OracleError> {
        Self::with_shift(n, lambda, ep, m, quad, 0.0)
    }

    /// As [`new`](Self::new) for `H − shift`. A shift near the wanted level
    /// keeps its offset free of the rounding of the level itself.
    pub fn with_shift(
        n: [i64; 2],
        lambda: f64,
        ep: &EllipticParams,
        m: usize,
        quad: usize,
        shift: f64,
    ) -> Result<Self, OracleError> {
        if lambda <= 0.0 {
            return Err(OracleError::Domain("lambda must be positive".into()));
        }
        if m == 0 || m.is_multiple_of(2) {
            return Err(OracleError::Domain(format!("basis size {m} must be odd")));
        }
        if quad < 8 * m {
            return Err(OracleError::Domain(format!("{quad} quadrature points are too few for {m} basis functions")));
        }
        let k_total = n[0] + n[1];
        let (a, b) = assemble(k_total, lambda, ep, m, quad, shift);
        let (_, b_half) = assemble(k_total, lambda, ep, m, quad / 2, shift);
        let scale = b.amax();
        let err = (&b - &b_half).amax() / scale;
        if err > 1e-10 {
            return Err(OracleError::QuadratureResolution { relative_error: err });
        }
        Ok(GalerkinProblem { basis_size: m, total_momentum: k_total, lambda, shift, overlap: b, operator: a })
    }

    /// Largest `|A − Aᵀ|` and `|B − Bᵀ|` relative to the entries.
    pub fn asymmetry(&self) -> f64 {
        let a = (&self.operator - self.operator.transpose()).amax() / self.operator.amax();
        let b = (&self.overlap - self.overlap.transpose()).amax() / self.overlap.amax();
        a.max(b)
    }

    fn reduced(&self) -> Result<(DMatrix<f64>, SymmetricEigen<f64, nalgebra::Dyn>), OracleError> {
        let chol = self
            .overlap
            .clone()
            .cholesky()
            .ok_or_else(|| OracleError::Linalg("overlap matrix is not positive definite".into()))?;
        let linv = chol
            .l()
            .try_inverse()
            .ok_or_else(|| OracleError::Linalg("singular Cholesky factor".into()))?;
        let c = &linv * &self.operator * linv.transpose();
        let c = (&c + c.transpose()) * 0.5;
        Ok((linv, SymmetricEigen::new(c)))
    }

    /// Eigenvalues of the full two-particle operator, ascending.
    ///
    /// Accurate to about `ε‖A‖`, which grows like `M²`; use
    /// [`refined_eigenvalue`](Self::refined_eigenvalue) for a single level.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, OracleError> {
        let (_, eig) = self.reduced()?;
        let mut ev: Vec<f64> = eig.eigenvalues.iter().map(|e| e + self.shift).collect();
        ev.sort_by(|x, y| x.total_cmp(y));
        Ok(ev)
    }

    /// The `index`-th eigenvalue.
    pub fn refined_eigenvalue(&self, index: usize) -> Result<f64, OracleError> {
        Ok(self.refined_offset(index)? + self.shift)
    }

    /// The `index`-th eigenvalue minus `shift`, polished by inverse iteration
    /// on the unreduced pencil and a Rayleigh quotient. The error then scales
    /// with the eigenvector, which lives on the low modes.
    pub fn refined_offset(&self, index: usize) -> Result<f64, OracleError> {
        let (linv, eig) = self.reduced()?;
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
        let k = *order
            .get(index)
            .ok_or_else(|| OracleError::Domain(format!("basis too small for level {index}")))?;
        let sigma = eig.eigenvalues[k];
        let mut v = linv.transpose() * eig.eigenvectors.column(k);
        let rayleigh = |v: &nalgebra::DVector<f64>| v.dot(&(&self.operator * v)) / v.dot(&(&self.overlap * v));
        let mut rho = rayleigh(&v);
        for _ in 0..3 {
            let pencil = &self.operator - &self.overlap * sigma;
            let rhs = &self.overlap * &v;
            let Some(y) = pencil.lu().solve(&rhs) else { break };
            let norm = y.norm();
            if !norm.is_finite() || norm == 0.0 {
                break;
            }
            v = y / norm;
            rho = rayleigh(&v);
        }
        Ok(rho)
    }
}

/// Sorted eigenvalues in the momentum sector of `n`.
pub fn lame_eigenvalues(n: [i64; 2], lambda: f64, ep: &EllipticParams, m: usize) -> Result<Vec<f64>, OracleError> {
    GalerkinProblem::new(n, lambda, ep, m, DEFAULT_QUADRATURE)?.eigenvalues()
}

/// The eigenvalue continuously connected to the free state `n`.
///
/// Within a sector the relative frequencies `(n_1 − n_2)/2` are ordered like
/// the eigenvalues for `λ > 0`, so the state sits at index `⌊(n_1 − n_2)/2⌋`.
pub fn galerkin_eigenvalue(n: [i64; 2], lambda: f64, ep: &EllipticParams, m: usize) -> Result<f64, OracleError> {
    if n[0] < n[1] {
        return Err(OracleError::Domain("quantum numbers must be weakly decreasing".into()));
    }
    let idx = ((n[0] - n[1]) / 2) as usize;
    GalerkinProblem::new(n, lambda, ep, m, DEFAULT_QUADRATURE)?.refined_eigenvalue(idx)
}

/// `E − shift` for the level connected to `n`, computed on `H − shift`.
pub fn galerkin_offset(n: [i64; 2], lambda: f64, ep: &EllipticParams, m: usize, shift: f64) -> Result<f64, OracleError> {
    if n[0] < n[1] {
        return Err(OracleError::Domain("quantum numbers must be weakly decreasing".into()));
    }
    let idx = ((n[0] - n[1]) / 2) as usize;
    GalerkinProblem::with_shift(n, lambda, ep, m, DEFAULT_QUADRATURE, shift)?.refined_offset(idx)
}
