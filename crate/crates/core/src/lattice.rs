//! Quantum numbers, root vectors, the free dispersion and the interaction
//! coefficients `S_ν`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::algebra::{BiSeries, PPoly, PRatFunc, Rational, Scalar};
use crate::error::Error;

/// Particle number and coupling. `γ = 2λ(λ−1)` is always derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    n_particles: usize,
    lambda: Rational,
    gamma: Rational,
}

impl ModelParams {
    pub fn new(n_particles: usize, lambda: Rational) -> Result<Self, Error> {
        if n_particles < 2 {
            return Err(Error::usage("particle number must be at least 2"));
        }
        if !lambda.is_positive() {
            return Err(Error::usage("lambda must be positive"));
        }
        let gamma = &(&Rational::from_int(2) * &lambda) * &(&lambda - &Rational::one());
        Ok(ModelParams { n_particles, lambda, gamma })
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }
}

/// Weakly decreasing integer vector `n_1 ≥ n_2 ≥ … ≥ n_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers(Vec<i64>);

impl QuantumNumbers {
    pub fn new(n: Vec<i64>) -> Result<Self, Error> {
        if n.is_empty() {
            return Err(Error::usage("empty quantum numbers"));
        }
        if n.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::usage(alloc::format!(
                "quantum numbers must be weakly decreasing, got {n:?}"
            )));
        }
        Ok(QuantumNumbers(n))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `n + μ` as a plain vector (may leave the ordered chamber).
    pub fn shifted(&self, mu: &RootVector) -> Vec<i64> {
        self.0.iter().zip(mu.as_slice()).map(|(a, b)| a + b).collect()
    }
}

impl FromStr for QuantumNumbers {
    type Err = Error;

    /// Comma-separated integers, e.g. `"2,1,0"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let parts: Result<Vec<i64>, _> = s.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let parts = parts.map_err(|_| Error::usage(alloc::format!("malformed quantum numbers '{s}'")))?;
        QuantumNumbers::new(parts)
    }
}

/// Integer vector with zero component sum, `μ = Σ μ_jk E_jk`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(Vec<i64>);

impl RootVector {
    pub fn new(mu: Vec<i64>) -> Result<Self, Error> {
        if mu.iter().sum::<i64>() != 0 {
            return Err(Error::usage(alloc::format!("root vector {mu:?} has nonzero sum")));
        }
        Ok(RootVector(mu))
    }

    pub fn zero(n_particles: usize) -> Self {
        RootVector(vec![0; n_particles])
    }

    /// `ν · E_jk` with 1-based `j < k`.
    pub fn pair(n_particles: usize, pair: PairIndex, nu: i64) -> Self {
        let mut v = vec![0; n_particles];
        v[pair.j - 1] += nu;
        v[pair.k - 1] -= nu;
        RootVector(v)
    }

    /// `Σ_r ν_r E_{j_r k_r}`.
    pub fn from_pairs(n_particles: usize, steps: &[(PairIndex, i64)]) -> Self {
        steps
            .iter()
            .fold(RootVector::zero(n_particles), |acc, &(p, nu)| acc.step(p, nu))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `self + ν E_jk`.
    pub fn step(&self, pair: PairIndex, nu: i64) -> Self {
        let mut v = self.0.clone();
        v[pair.j - 1] += nu;
        v[pair.k - 1] -= nu;
        RootVector(v)
    }

    pub fn add(&self, rhs: &RootVector) -> Self {
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|a| -a).collect())
    }

    /// `m(μ) = Σ_ℓ ℓ μ_ℓ`; every positive step `ν E_jk` (ν ≥ 1) lowers it by
    /// `ν (k − j) ≥ ν`.
    pub fn moment(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &x)| (i as i64 + 1) * x).sum()
    }

    /// `Σ_{μ_j > 0} μ_j`.
    pub fn positive_part(&self) -> i64 {
        self.0.iter().filter(|&&x| x > 0).sum()
    }

    /// Two-particle coordinate `μ` in `μ E_12`.
    pub fn pair_coordinate(&self) -> i64 {
        self.0[0]
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Pair `(j, k)` with `1 ≤ j < k ≤ N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairIndex {
    pub j: usize,
    pub k: usize,
}

impl PairIndex {
    pub fn new(j: usize, k: usize) -> Result<Self, Error> {
        if j == 0 || j >= k {
            return Err(Error::usage("pair index requires 1 <= j < k"));
        }
        Ok(PairIndex { j, k })
    }

    /// `k − j`, the moment drop of a unit positive step.
    pub fn span(&self) -> i64 {
        (self.k - self.j) as i64
    }
}

/// All pairs `j < k` in lexicographic order.
pub fn pairs(n_particles: usize) -> Vec<PairIndex> {
    let mut out = Vec::new();
    for j in 1..=n_particles {
        for k in (j + 1)..=n_particles {
            out.push(PairIndex { j, k });
        }
    }
    out
}

fn shifted_momenta(n: &[i64], params: &ModelParams) -> Vec<Rational> {
    let nn = n.len() as i64;
    // λ[(N+1)/2 − j] = λ (N + 1 − 2j) / 2
    let half_lambda = params.lambda() * &Rational::new(1, 2);
    n.iter()
        .enumerate()
        .map(|(i, &nj)| {
            let j = i as i64 + 1;
            &Rational::from_int(nj) + &(&half_lambda * &Rational::from_int(nn + 1 - 2 * j))
        })
        .collect()
}

/// Free dispersion `E_0(n) = Σ_j (n_j + λ[(N+1)/2 − j])²`.
pub fn e0(n: &QuantumNumbers, params: &ModelParams) -> Rational {
    e0_raw(n.as_slice(), params)
}

/// [`e0`] for an arbitrary integer vector (outside the ordered chamber too).
pub fn e0_raw(n: &[i64], params: &ModelParams) -> Rational {
    shifted_momenta(n, params)
        .iter()
        .fold(Rational::zero(), |acc, p| &acc + &(p * p))
}

/// `b(μ; n) = E_0(n + μ) − E_0(n) = Σ_j μ_j (2 p_j + μ_j)` with `p = n + ρ`.
pub fn b(mu: &RootVector, n: &QuantumNumbers, params: &ModelParams) -> Rational {
    let p = shifted_momenta(n.as_slice(), params);
    p.iter().zip(mu.as_slice()).fold(Rational::zero(), |acc, (pj, &mj)| {
        let m = Rational::from_int(mj);
        &acc + &(&m * &(&(pj + pj) + &m))
    })
}

/// Nonzero `(q²-power, coefficient)` pairs of `S_ν` up to `(q²)^lq`.
///
/// `S_ν = ν Σ_{m≥0} q^{2νm}` for `ν > 0`, `S_{−ν} = ν Σ_{m≥1} q^{2νm}`, `S_0 = 0`.
pub fn s_terms(nu: i64, lq: usize) -> Vec<(usize, i64)> {
    if nu == 0 {
        return Vec::new();
    }
    let step = nu.unsigned_abs() as usize;
    let start = if nu > 0 { 0 } else { step };
    (start..=lq).step_by(step).map(|l| (l, nu.abs())).collect()
}

/// `S_ν` as a series (no `γ` dependence).
pub fn s_coeff<F: Scalar>(nu: i64, lq: usize, gamma_order: usize) -> BiSeries<F> {
    BiSeries::from_terms(
        lq,
        gamma_order,
        s_terms(nu, lq).into_iter().map(|(l, c)| (l, 0, F::from_int(c))),
    )
}

/// Checks that the `q⁰` coefficient of `S_ν` vanishes exactly when `ν ≤ 0`.
pub fn q0_limit_check(nu: i64) -> bool {
    let s: BiSeries<Rational> = s_coeff(nu, 0, 0);
    s.get(0, 0).is_none() == (nu <= 0)
}

/// Every nonzero root vector with `max |μ_j| ≤ radius` and `b(μ; n) = 0`.
pub fn detect_resonance(
    n: &QuantumNumbers,
    params: &ModelParams,
    search_radius: i64,
) -> Vec<RootVector> {
    let nn = n.len();
    let mut out = Vec::new();
    let mut current = vec![0i64; nn];
    enumerate_box(&mut current, 0, search_radius, &mut |v| {
        let mu = RootVector(v.to_vec());
        if !mu.is_zero() && b(&mu, n, params).is_zero() {
            out.push(mu);
        }
    });
    out
}

fn enumerate_box(current: &mut Vec<i64>, idx: usize, radius: i64, visit: &mut impl FnMut(&[i64])) {
    let nn = current.len();
    if idx == nn - 1 {
        let last = -current[..idx].iter().sum::<i64>();
        if last.abs() <= radius {
            current[idx] = last;
            visit(current);
        }
        return;
    }
    for x in -radius..=radius {
        current[idx] = x;
        enumerate_box(current, idx + 1, radius, visit);
    }
}

/// Source of the perturbation denominators and the free eigenvalue.
///
/// Implemented for general-`N` numeric coupling ([`NumericModel`]) and for the
/// two-particle model with `P = n_1 − n_2 + λ` kept indeterminate
/// ([`SymbolicPair`]).
pub trait Spectrum {
    type Scalar: Scalar;

    fn n_particles(&self) -> usize;

    /// `b(μ; n)`.
    fn b(&self, mu: &RootVector) -> Self::Scalar;

    /// `E_0(n)`.
    fn e0(&self) -> Self::Scalar;

    /// `E_0(n + μ)`.
    fn e0_shifted(&self, mu: &RootVector) -> Self::Scalar {
        self.e0().add(&self.b(mu))
    }

    /// Human-readable description used in diagnostics and cache keys.
    fn describe(&self) -> String;
}

/// Numeric coupling, any particle number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericModel {
    params: ModelParams,
    n: QuantumNumbers,
}

impl NumericModel {
    pub fn new(params: ModelParams, n: QuantumNumbers) -> Result<Self, Error> {
        if n.len() != params.n_particles() {
            return Err(Error::usage(alloc::format!(
                "expected {} quantum numbers, got {}",
                params.n_particles(),
                n.len()
            )));
        }
        Ok(NumericModel { params, n })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn quantum_numbers(&self) -> &QuantumNumbers {
        &self.n
    }

    /// `P = n_1 − n_2 + λ` for two particles.
    pub fn pair_parameter(&self) -> Option<Rational> {
        (self.params.n_particles() == 2).then(|| {
            let n = self.n.as_slice();
            &Rational::from_int(n[0] - n[1]) + self.params.lambda()
        })
    }
}

impl Spectrum for NumericModel {
    type Scalar = Rational;

    fn n_particles(&self) -> usize {
        self.params.n_particles()
    }

    fn b(&self, mu: &RootVector) -> Rational {
        b(mu, &self.n, &self.params)
    }

    fn e0(&self) -> Rational {
        e0(&self.n, &self.params)
    }

    fn describe(&self) -> String {
        alloc::format!(
            "N={} n={:?} lambda={}",
            self.params.n_particles(),
            self.n.as_slice(),
            self.params.lambda().to_pq_string()
        )
    }
}

/// Two particles with `P = n_1 − n_2 + λ` indeterminate.
///
/// `b(μ E_12) = 2μ(P + μ)` and `E_0 = (P² + K²)/2` where `K = n_1 + n_2`
/// is the total momentum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPair {
    total_momentum: i64,
}

impl SymbolicPair {
    pub fn new(total_momentum: i64) -> Self {
        SymbolicPair { total_momentum }
    }

    pub fn from_quantum_numbers(n: &QuantumNumbers) -> Result<Self, Error> {
        if n.len() != 2 {
            return Err(Error::usage("symbolic P mode requires N = 2"));
        }
        Ok(SymbolicPair::new(n.total()))
    }

    pub fn total_momentum(&self) -> i64 {
        self.total_momentum
    }
}

/// `2μ(P + μ)` as a polynomial in `P`.
pub fn b_symbolic(mu: i64) -> PRatFunc {
    let two_mu = Rational::from_int(2 * mu);
    PRatFunc::from_poly(PPoly::linear(Rational::from_int(mu)).scale(&two_mu))
}

impl Spectrum for SymbolicPair {
    type Scalar = PRatFunc;

    fn n_particles(&self) -> usize {
        2
    }

    fn b(&self, mu: &RootVector) -> PRatFunc {
        b_symbolic(mu.pair_coordinate())
    }

    fn e0(&self) -> PRatFunc {
        let k2 = Rational::from_int(self.total_momentum * self.total_momentum);
        let half = Rational::new(1, 2);
        PRatFunc::from_poly(PPoly::from_coeffs(vec![&k2 * &half, Rational::zero(), half]))
    }

    fn describe(&self) -> String {
        alloc::format!("N=2 symbolic-P K={}", self.total_momentum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(nn: usize, num: i64, den: i64) -> ModelParams {
        ModelParams::new(nn, Rational::new(num, den)).unwrap()
    }

    fn qn(v: &[i64]) -> QuantumNumbers {
        QuantumNumbers::new(v.to_vec()).unwrap()
    }

    #[test]
    fn gamma_is_derived() {
        assert_eq!(params(2, 5, 2).gamma(), &Rational::new(15, 2));
        assert_eq!(params(2, 1, 1).gamma(), &Rational::zero());
        assert!(ModelParams::new(2, Rational::zero()).is_err());
        assert!(ModelParams::new(1, Rational::one()).is_err());
    }

    #[test]
    fn quantum_numbers_validated() {
        assert!(QuantumNumbers::new(vec![0, 1]).is_err());
        assert_eq!("2, 1,1".parse::<QuantumNumbers>().unwrap().as_slice(), &[2, 1, 1]);
        assert!("2,x".parse::<QuantumNumbers>().is_err());
    }

    #[test]
    fn e0_examples() {
        assert_eq!(e0(&qn(&[1, 0]), &params(2, 2, 1)), Rational::from_int(5));
        let l = Rational::new(7, 3);
        let p3 = ModelParams::new(3, l.clone()).unwrap();
        assert_eq!(e0(&qn(&[0, 0, 0]), &p3), &(&l * &l) * &Rational::from_int(2));
    }

    #[test]
    fn b_examples() {
        let p = params(2, 2, 1);
        let n = qn(&[1, 0]);
        let mu = RootVector::pair(2, PairIndex { j: 1, k: 2 }, -1);
        assert_eq!(b(&mu, &n, &p), Rational::from_int(-4));
        assert_eq!(b(&RootVector::zero(2), &n, &p), Rational::zero());
        assert_eq!(
            b_symbolic(1),
            PRatFunc::from_poly(PPoly::from_ints(&[2, 2]))
        );
    }

    #[test]
    fn symbolic_b_matches_numeric() {
        let p = params(2, 5, 2);
        let n = qn(&[3, 1]);
        let model = NumericModel::new(p, n).unwrap();
        let pp = model.pair_parameter().unwrap();
        for m in -4..=4 {
            let mu = RootVector::new(vec![m, -m]).unwrap();
            assert_eq!(b_symbolic(m).eval(&pp).unwrap(), model.b(&mu));
        }
        let sym = SymbolicPair::new(4);
        assert_eq!(sym.e0().eval(&pp).unwrap(), model.e0());
    }

    #[test]
    fn s_coeff_examples() {
        let s2: BiSeries<Rational> = s_coeff(2, 5, 0);
        let expect = BiSeries::from_terms(5, 0, [0usize, 2, 4].map(|l| (l, 0, Rational::from_int(2))));
        assert_eq!(s2, expect);
        assert!(s_coeff::<Rational>(0, 7, 2).is_zero());
        let sm1: BiSeries<Rational> = s_coeff(-1, 2, 0);
        assert_eq!(
            sm1,
            BiSeries::from_terms(2, 0, [(1, 0, Rational::one()), (2, 0, Rational::one())])
        );
    }

    #[test]
    fn q0_limit_examples() {
        for nu in -5..=5 {
            assert!(q0_limit_check(nu));
        }
        let s: BiSeries<Rational> = s_coeff(-3, 4, 0);
        assert!(s.get(0, 0).is_none());
        let s: BiSeries<Rational> = s_coeff(1, 4, 0);
        assert_eq!(s.coeff(0, 0), Rational::one());
    }

    #[test]
    fn resonance_examples() {
        assert!(detect_resonance(&qn(&[1, 0]), &params(2, 1, 2), 10).is_empty());
        let hits = detect_resonance(&qn(&[1, 0]), &params(2, 2, 1), 10);
        assert!(hits.contains(&RootVector::new(vec![-3, 3]).unwrap()));
        assert!(detect_resonance(&qn(&[0, 0]), &params(2, 2, 1), 1).is_empty());
    }

    #[test]
    fn moment_of_pair_steps() {
        for pr in pairs(4) {
            let e = RootVector::pair(4, pr, 1);
            assert_eq!(e.moment(), pr.j as i64 - pr.k as i64);
        }
    }
}
