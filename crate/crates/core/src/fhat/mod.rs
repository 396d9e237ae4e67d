//! The building blocks `F̂(x; n)` as Laurent series in `z_j = e^{i x_j}`,
//! and the assembled eigenfunction factor `Φ = Σ_μ α(μ) F̂(n+μ)`.
//!
//! `F̂` is the constant term in `ξ_1 … ξ_N` of
//! `Π_k ξ_k^{n_k} Π_{j<k} Θ(ξ_j/ξ_k)^λ / Π_{j,k} Θ(z_j/ξ_k)^λ`, expanded in
//! the region `|z| < |ξ_1| < … < |ξ_N|`. Writing `Θ(u)^λ = Σ a_e u^e` and
//! `Π_j Θ(t z_j)^{−λ} = Σ_D t^D H_D(z)`, the constant term is
//!
//! `F̂ = Σ_{e_jk} Π_{j<k} a_{e_jk} Π_k H_{D_k}(z)`,
//! `D_k = n_k + Σ_{l>k} e_kl − Σ_{j<k} e_jk`.
//!
//! Negative `e` or negative entries of `z`-exponents cost at least one power
//! of `q²` per unit, which makes the sum finite at fixed `q²`-order.

mod theta;

pub use theta::{expand_theta_power, generalized_binomial, ThetaExpansion};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BiSeries, Rational};
use crate::eigenfunction::AlphaTable;
use crate::error::Error;

/// `Σ_x c_x(q², γ) z^x` over integer exponent vectors of fixed length.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    n_vars: usize,
    q2_order: usize,
    gamma_order: usize,
    terms: BTreeMap<Vec<i64>, BiSeries<Rational>>,
}

impl LaurentPoly {
    pub fn zero(n_vars: usize, q2_order: usize, gamma_order: usize) -> Self {
        LaurentPoly { n_vars, q2_order, gamma_order, terms: BTreeMap::new() }
    }

    /// The constant `1`.
    pub fn one(n_vars: usize, q2_order: usize, gamma_order: usize) -> Self {
        let mut p = Self::zero(n_vars, q2_order, gamma_order);
        p.add_term(vec![0; n_vars], BiSeries::one(q2_order, gamma_order));
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.q2_order, self.gamma_order)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BiSeries<Rational>)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn get(&self, exps: &[i64]) -> Option<&BiSeries<Rational>> {
        self.terms.get(exps)
    }

    /// Accumulate `c · z^exps`; the coefficient is re-truncated to this
    /// polynomial's orders.
    pub fn add_term(&mut self, exps: Vec<i64>, c: BiSeries<Rational>) {
        assert_eq!(exps.len(), self.n_vars, "exponent vector length");
        let c = if c.orders() == (self.q2_order, self.gamma_order) {
            c
        } else {
            c.retruncate(self.q2_order, self.gamma_order)
        };
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(acc) => {
                acc.add_assign(&c);
                if acc.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    /// Product, truncated to this polynomial's orders.
    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n_vars, self.q2_order, self.gamma_order);
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let exps = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                let vb = vb.retruncate(self.q2_order, self.gamma_order);
                out.add_term(exps, va.mul(&vb));
            }
        }
        out
    }

    /// Every coefficient multiplied by `c`.
    pub fn scale_series(&self, c: &BiSeries<Rational>) -> LaurentPoly {
        let c = c.retruncate(self.q2_order, self.gamma_order);
        let mut out = LaurentPoly::zero(self.n_vars, self.q2_order, self.gamma_order);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.mul(&c));
        }
        out
    }

    /// Same terms with different truncation orders.
    pub fn retruncate(&self, q2_order: usize, gamma_order: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n_vars, q2_order, gamma_order);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    /// Invariance under every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(k, v)| {
            let mut sorted = k.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            self.terms.get(&sorted) == Some(v)
                && permutations_of(k).into_iter().all(|p| self.terms.get(&p) == Some(v))
        })
    }

    /// Distinct total degrees of the terms.
    pub fn total_degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|k| k.iter().sum()).collect()
    }

    /// Largest `|x_j|` over all terms.
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.keys().flat_map(|k| k.iter().map(|x| x.abs())).max().unwrap_or(0)
    }

    /// Terms with every `|x_j| ≤ dmax`.
    pub fn truncate_degree(&self, dmax: i64) -> LaurentPoly {
        let mut out = self.clone();
        out.terms.retain(|k, _| k.iter().all(|x| x.abs() <= dmax));
        out
    }

    /// Coefficients at `q²`-order 0 only.
    pub fn q0_slice(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n_vars, 0, self.gamma_order);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.retruncate(0, self.gamma_order));
        }
        out
    }

    /// Replace the formal `γ` by its value, leaving a `γ`-order-0 polynomial.
    pub fn substitute_gamma(&self, gamma: &Rational) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n_vars, self.q2_order, 0);
        for (k, v) in &self.terms {
            let mut c = BiSeries::zero(self.q2_order, 0);
            for (l, s, a) in v.terms() {
                c.add_term(l, 0, a * &gamma.pow(s as u32));
            }
            out.add_term(k.clone(), c);
        }
        out
    }
}

fn permutations_of(v: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = v.to_vec();
    fn rec(k: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// Default degree window `max|n_j| + (N−1)W + N·Lq`.
///
/// Exponents are absolute, so the reach grows with `|n|` and not only with
/// the spread of `n`; each α step moves one unit per pair and every `q²`
/// order lets one variable overshoot by one more.
pub fn default_dmax(n: &[i64], window: usize, lq: usize) -> usize {
    let reach = n.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0);
    let nn = n.len().max(1);
    reach + (nn - 1) * window + nn * lq
}

/// Tail sums `Σ_{k≥m} x_k` for `m = 1 … N` (0-based `m−1`).
fn tails(x: &[i64]) -> Vec<i64> {
    let mut t = vec![0; x.len()];
    let mut acc = 0;
    for m in (0..x.len()).rev() {
        acc += x[m];
        t[m] = acc;
    }
    t
}

struct FhatBuilder {
    nn: usize,
    lq: usize,
    pair_exp: ThetaExpansion,
    z_exp: ThetaExpansion,
    h_cache: BTreeMap<i64, LaurentPoly>,
}

impl FhatBuilder {
    fn new(nn: usize, lambda: &Rational, lq: usize, d_pair: usize, d_z: usize) -> Self {
        FhatBuilder {
            nn,
            lq,
            pair_exp: expand_theta_power(lambda, lq, d_pair),
            z_exp: expand_theta_power(&-lambda, lq, d_z),
            h_cache: BTreeMap::new(),
        }
    }

    /// `H_D(z)`: the `t^D` part of `Π_j Θ(t z_j)^{−λ}`.
    fn h(&mut self, d: i64) -> LaurentPoly {
        if let Some(h) = self.h_cache.get(&d) {
            return h.clone();
        }
        let mut out = LaurentPoly::zero(self.nn, self.lq, 0);
        let mut exps = vec![0i64; self.nn];
        self.h_rec(0, d, self.lq, BiSeries::one(self.lq, 0), &mut exps, &mut out);
        self.h_cache.insert(d, out.clone());
        out
    }

    fn h_rec(
        &self,
        j: usize,
        remaining: i64,
        budget: usize,
        acc: BiSeries<Rational>,
        exps: &mut Vec<i64>,
        out: &mut LaurentPoly,
    ) {
        let last = j + 1 == self.nn;
        let lo = -(budget as i64);
        let hi = if last { remaining } else { remaining + budget as i64 * (self.nn - j - 1) as i64 };
        let range = if last { remaining..=remaining } else { lo..=hi };
        for dj in range {
            let cost = if dj < 0 { (-dj) as usize } else { 0 };
            if cost > budget {
                continue;
            }
            let Some(c) = self.z_exp.get(dj) else { continue };
            let prod = acc.mul(c);
            if prod.is_zero() {
                continue;
            }
            exps[j] = dj;
            if last {
                out.add_term(exps.clone(), prod);
            } else {
                self.h_rec(j + 1, remaining - dj, budget - cost, prod, exps, out);
            }
        }
    }
}

/// Exact `F̂(x; n)` through `q^{2Lq}`, with no degree truncation.
fn fhat_exact(n: &[i64], lambda: &Rational, lq: usize) -> Result<LaurentPoly, Error> {
    let nn = n.len();
    if nn == 0 {
        return Err(Error::usage("empty quantum number vector"));
    }
    if !lambda.is_positive() {
        return Err(Error::usage("lambda must be positive"));
    }
    let t = tails(n);
    let lqi = lq as i64;
    // e_jk ≤ min_{j<m≤k} T_m(n) + 2Lq (tail sums of D cannot drop below −Lq).
    let mut pair_list = Vec::new();
    let mut e_hi = 0i64;
    for j in 0..nn {
        for k in j + 1..nn {
            let bound = t[j + 1..=k].iter().copied().min().unwrap() + 2 * lqi;
            pair_list.push((j, k, bound));
            e_hi = e_hi.max(bound);
        }
    }
    let d_top = t[0].abs() + (nn as i64) * (e_hi.max(0) + lqi) + lqi;
    let d_pair = e_hi.max(lqi) as usize;
    let mut builder = FhatBuilder::new(nn, lambda, lq, d_pair, d_top.max(lqi) as usize);
    let mut out = LaurentPoly::zero(nn, lq, 0);
    let mut es = vec![0i64; pair_list.len()];
    enumerate_pairs(0, &pair_list, &mut es, n, lq, &mut builder, &mut out);
    Ok(out)
}

fn enumerate_pairs(
    idx: usize,
    pair_list: &[(usize, usize, i64)],
    es: &mut Vec<i64>,
    n: &[i64],
    lq: usize,
    builder: &mut FhatBuilder,
    out: &mut LaurentPoly,
) {
    let neg_cost: usize = es[..idx].iter().filter(|&&e| e < 0).map(|e| (-e) as usize).sum();
    if neg_cost > lq {
        return;
    }
    if idx < pair_list.len() {
        let (_, _, hi) = pair_list[idx];
        for e in -((lq - neg_cost) as i64)..=hi {
            es[idx] = e;
            enumerate_pairs(idx + 1, pair_list, es, n, lq, builder, out);
        }
        es[idx] = 0;
        return;
    }
    let nn = n.len();
    let mut d = n.to_vec();
    for (&(j, k, _), &e) in pair_list.iter().zip(es.iter()) {
        d[j] += e;
        d[k] -= e;
    }
    let d_cost: usize = d.iter().filter(|&&x| x < 0).map(|x| (-x) as usize).sum();
    if neg_cost + d_cost > lq {
        return;
    }
    let mut coeff = BiSeries::one(lq, 0);
    for &e in es.iter() {
        match builder.pair_exp.get(e) {
            Some(a) => coeff = coeff.mul(a),
            None => return,
        }
        if coeff.is_zero() {
            return;
        }
    }
    let mut poly = LaurentPoly::one(nn, lq, 0).scale_series(&coeff);
    for &dk in &d {
        let h = builder.h(dk);
        if h.is_zero() {
            return;
        }
        poly = poly.mul(&h);
        if poly.is_zero() {
            return;
        }
    }
    out.add_assign(&poly);
}

/// `F̂(x; n)` through `q^{2Lq}`, truncated to `|x_j| ≤ dmax`.
pub fn fhat_series(n: &[i64], lambda: &Rational, lq: usize, dmax: usize) -> Result<LaurentPoly, Error> {
    Ok(fhat_exact(n, lambda, lq)?.truncate_degree(dmax as i64))
}

/// As [`fhat_series`], but a term outside the degree window is an error.
pub fn fhat_series_strict(
    n: &[i64],
    lambda: &Rational,
    lq: usize,
    dmax: usize,
) -> Result<LaurentPoly, Error> {
    let f = fhat_exact(n, lambda, lq)?;
    let reach = f.max_abs_exponent();
    if reach > dmax as i64 {
        return Err(Error::WindowTooSmall { needed: reach, dmax: dmax as i64 });
    }
    Ok(f)
}

/// `Φ = Σ_μ α(μ) F̂(n+μ)` over the window entries of `alpha`.
pub fn assemble_phi(
    n: &[i64],
    alpha: &AlphaTable<Rational>,
    lambda: &Rational,
    dmax: usize,
) -> Result<LaurentPoly, Error> {
    if n.len() != alpha.n_particles() {
        return Err(Error::usage("quantum numbers and alpha table differ in particle number"));
    }
    let (lq, sg) = (alpha.q2_order(), alpha.gamma_order());
    let mut phi = LaurentPoly::zero(n.len(), lq, sg);
    for (mu, a) in alpha.window_entries() {
        let shifted: Vec<i64> = n.iter().zip(mu.as_slice()).map(|(x, m)| x + m).collect();
        let f = fhat_series_strict(&shifted, lambda, lq, dmax)?;
        if f.is_zero() {
            continue;
        }
        phi.add_assign(&f.retruncate(lq, sg).scale_series(a));
    }
    Ok(phi)
}
