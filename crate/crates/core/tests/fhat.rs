use std::collections::BTreeMap;

use ecs_core::eigenfunction::*;
use ecs_core::eigenvalue::*;
use ecs_core::fhat::*;
use ecs_core::*;
use proptest::prelude::*;

fn numeric(nn: usize, lambda: Rational, n: &[i64]) -> NumericModel {
    let params = ModelParams::new(nn, lambda).unwrap();
    NumericModel::new(params, QuantumNumbers::new(n.to_vec()).unwrap()).unwrap()
}

fn binom(a: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    generalized_binomial(a, k as usize)
}

/// Coefficient of `u^k` in `(1−u)^a`.
fn one_minus(a: &Rational, k: i64) -> Rational {
    let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
    &sign * &binom(a, k)
}

/// Two-particle constant-term extraction through `q²`, written out factor by
/// factor: at order `q²` exactly one factor contributes its first correction.
/// `Θ(u)^a = (1−u)^a [1 − a q² (u + 1/u) + O(q⁴)]`.
fn brute_force_pair(n: [i64; 2], lambda: &Rational, order: usize) -> BTreeMap<(i64, i64), Rational> {
    // (pair shift, [z_j/ξ_k shifts], weight)
    let mut corrections: Vec<(i64, [[i64; 2]; 2], Rational)> = vec![(0, [[0; 2]; 2], Rational::one())];
    if order == 1 {
        corrections.clear();
        for s in [1i64, -1] {
            corrections.push((s, [[0; 2]; 2], -lambda.clone()));
            for j in 0..2 {
                for k in 0..2 {
                    let mut m = [[0; 2]; 2];
                    m[j][k] = s;
                    corrections.push((0, m, lambda.clone()));
                }
            }
        }
    }
    let neg = -lambda.clone();
    let bound = n[0].abs() + n[1].abs() + 4;
    let mut out: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
    for (pe, zs, w) in &corrections {
        for e in 0..=bound {
            for a11 in 0..=bound {
                for a21 in 0..=bound {
                    // ξ_1: n1 + (e + pe) − (a11 + s11) − (a21 + s21) = 0
                    let a_rest = n[0] + e + pe - a11 - zs[0][0] - a21 - zs[1][0];
                    if a_rest != 0 {
                        continue;
                    }
                    for a12 in 0..=bound {
                        let a22 = n[1] - e - pe - a12 - zs[0][1] - zs[1][1];
                        if a22 < 0 {
                            continue;
                        }
                        let c = &(&(&(&one_minus(lambda, e) * &one_minus(&neg, a11)) * &one_minus(&neg, a21))
                            * &one_minus(&neg, a12))
                            * &one_minus(&neg, a22);
                        let c = &c * w;
                        if c.is_zero() {
                            continue;
                        }
                        let x1 = a11 + zs[0][0] + a12 + zs[0][1];
                        let x2 = a21 + zs[1][0] + a22 + zs[1][1];
                        let slot = out.entry((x1, x2)).or_insert_with(Rational::zero);
                        *slot = &*slot + &c;
                    }
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn slice(f: &LaurentPoly, l: usize) -> BTreeMap<(i64, i64), Rational> {
    f.terms()
        .map(|(k, v)| ((k[0], k[1]), v.coeff(l, 0)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

#[test]
fn matches_brute_force_extraction() {
    for lambda in [Rational::new(5, 2), Rational::new(1, 3), Rational::one()] {
        for n in [[0i64, 0], [1, 0], [2, 0], [2, 1], [3, -1], [1, -2]] {
            let f = fhat_series(&n, &lambda, 1, 12).unwrap();
            for l in 0..=1 {
                assert_eq!(slice(&f, l), brute_force_pair(n, &lambda, l), "lambda={lambda} n={n:?} l={l}");
            }
        }
    }
}

#[test]
fn single_particle_is_a_monomial() {
    let lam = Rational::new(7, 3);
    for x in [-2i64, 0, 3] {
        let f = fhat_series(&[x], &lam, 2, 10).unwrap();
        assert!(f.terms().all(|(k, _)| k == [x]));
    }
}

#[test]
fn free_fermion_vacuum() {
    // (1 − ξ_1/ξ_2) / Π (1 − z_j/ξ_k) has constant term 1 at n = 0.
    let f = fhat_series(&[0, 0], &Rational::one(), 0, 6).unwrap();
    assert_eq!(f, LaurentPoly::one(2, 0, 0));
    assert!(f.is_symmetric());
}

#[test]
fn three_particles_symmetric_and_homogeneous() {
    let lam = Rational::new(3, 2);
    for n in [[1i64, 0, 0], [2, 1, 0], [1, 1, -1]] {
        let f = fhat_series_strict(&n, &lam, 1, 12).unwrap();
        assert!(!f.is_zero());
        assert!(f.is_symmetric(), "n={n:?}");
        let total: i64 = n.iter().sum();
        assert_eq!(f.total_degrees().into_iter().collect::<Vec<_>>(), vec![total]);
    }
}

#[test]
fn truncation_drops_only_far_terms() {
    let lam = Rational::new(5, 2);
    let full = fhat_series(&[3, 0], &lam, 2, 20).unwrap();
    let cut = fhat_series(&[3, 0], &lam, 2, 3).unwrap();
    assert_eq!(cut, full.truncate_degree(3));
    assert!(cut.len() < full.len());
}

fn phi_for(n: &[i64], lambda: Rational, lq: usize, sg: usize, window: usize) -> LaurentPoly {
    let sp = numeric(n.len(), lambda.clone(), n);
    let e = eigenvalue_via_lagrange(&sp, lq, sg).unwrap();
    let table = compute_alpha_table(&sp, &e.tilde_e, window).unwrap();
    let dmax = default_dmax(n, window, lq);
    assemble_phi(n, &table, &lambda, dmax).unwrap()
}

#[test]
fn phi_gamma0_slice_is_fhat() {
    let lam = Rational::new(5, 2);
    let n = [2i64, 0];
    let phi = phi_for(&n, lam.clone(), 2, 3, default_window(&n, 2));
    let f = fhat_series(&n, &lam, 2, 40).unwrap();
    let mut g0 = LaurentPoly::zero(2, 2, 0);
    for (k, v) in phi.terms() {
        g0.add_term(k.to_vec(), v.retruncate(2, 0));
    }
    assert_eq!(g0, f);
}

#[test]
fn phi_symmetric_and_homogeneous() {
    for n in [vec![1i64, 0], vec![2, 1], vec![1, 0, 0]] {
        let lq = if n.len() == 3 { 1 } else { 2 };
        let phi = phi_for(&n, Rational::new(7, 3), lq, 3, default_window(&n, lq));
        assert!(phi.is_symmetric(), "n={n:?}");
        let total: i64 = n.iter().sum();
        assert_eq!(phi.total_degrees().into_iter().collect::<Vec<_>>(), vec![total]);
    }
}

#[test]
fn phi_stable_under_window_growth() {
    let n = [1i64, 0];
    let w = default_window(&n, 2);
    let a = phi_for(&n, Rational::new(5, 2), 2, 3, w);
    let b = phi_for(&n, Rational::new(5, 2), 2, 3, w + 2);
    assert_eq!(a, b);
}

#[test]
fn phi_two_one_is_a_single_orbit_at_q0() {
    // (2,1) is e_2 times (1,0): at q = 0 only z_1²z_2 and z_1z_2² survive.
    let lam = Rational::new(1, 2);
    let n = [2i64, 1];
    let phi = phi_for(&n, lam.clone(), 0, 4, default_window(&n, 0));
    let gamma = &(&Rational::from_int(2) * &lam) * &(&lam - &Rational::one());
    let q0 = phi.substitute_gamma(&gamma);
    let keys: Vec<Vec<i64>> = q0.terms().map(|(k, _)| k.to_vec()).collect();
    assert_eq!(keys, vec![vec![1, 2], vec![2, 1]]);
}

#[test]
fn window_too_small_is_reported() {
    let n = [1i64, 0];
    let sp = numeric(2, Rational::new(5, 2), &n);
    let e = eigenvalue_via_lagrange(&sp, 2, 3).unwrap();
    let table = compute_alpha_table(&sp, &e.tilde_e, 3).unwrap();
    let err = assemble_phi(&n, &table, &Rational::new(5, 2), 1).unwrap_err();
    assert!(matches!(err, Error::WindowTooSmall { .. }));
}

fn lambda_strategy() -> impl Strategy<Value = Rational> {
    (1i64..30, 1i64..9).prop_map(|(p, q)| Rational::new(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fhat_symmetric_and_homogeneous(lambda in lambda_strategy(), a in -2i64..4, b in -2i64..4, lq in 0usize..2) {
        let n = [a.max(b), a.min(b)];
        let f = fhat_series_strict(&n, &lambda, lq, 24).unwrap();
        prop_assert!(f.is_symmetric());
        prop_assert!(f.total_degrees().iter().all(|&d| d == a + b));
    }

    #[test]
    fn theta_power_laws(lambda in lambda_strategy(), lq in 0usize..3) {
        // Θ^a Θ^b = Θ^{a+b} on the exact range of exponents.
        let mu = Rational::new(1, 2);
        let d = 6usize;
        let x = expand_theta_power(&lambda, lq, d + lq);
        let y = expand_theta_power(&mu, lq, d + lq);
        let z = expand_theta_power(&(&lambda + &mu), lq, d);
        for k in -(lq as i64)..=d as i64 {
            let mut acc = BiSeries::<Rational>::zero(lq, 0);
            for (i, ci) in x.terms() {
                if let Some(cj) = y.get(k - i) {
                    acc.add_assign(&ci.mul(cj));
                }
            }
            prop_assert_eq!(&acc, &z.coeff(k));
        }
    }
}
