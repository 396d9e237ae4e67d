use std::collections::BTreeMap;

use ecs_core::eigenfunction::*;
use ecs_core::eigenvalue::*;
use ecs_core::lattice::{pairs, s_coeff, PairIndex};
use ecs_core::*;
use proptest::prelude::*;

fn numeric(nn: usize, lambda: Rational, n: &[i64]) -> NumericModel {
    let params = ModelParams::new(nn, lambda).unwrap();
    NumericModel::new(params, QuantumNumbers::new(n.to_vec()).unwrap()).unwrap()
}

fn e12(mu: i64) -> RootVector {
    RootVector::pair(2, PairIndex::new(1, 2).unwrap(), mu)
}

fn gamma_slice<F: Scalar>(x: &BiSeries<F>, s: usize) -> BiSeries<F> {
    let (lq, sg) = x.orders();
    BiSeries::from_terms(lq, sg, x.terms().filter(|t| t.1 == s).map(|(l, _, c)| (l, 0, c.clone())))
}

fn q0_slice<F: Scalar>(x: &BiSeries<F>) -> BiSeries<F> {
    let sg = x.gamma_order();
    BiSeries::from_terms(0, sg, x.terms().filter(|t| t.0 == 0).map(|(_, s, c)| (0, s, c.clone())))
}

#[test]
fn first_order_coefficient() {
    let sp = SymbolicPair::new(1);
    let e = eigenvalue_via_q2_recursion_n2(&sp, 3, 3).unwrap();
    let a = alpha_elliptic(&e12(1), &sp, &e).unwrap();
    let s1: BiSeries<PRatFunc> = s_coeff(1, 3, 3);
    let expect = s1.scale(&sp.b(&e12(1)).inv().unwrap());
    assert_eq!(gamma_slice(&a, 1), expect);
    assert_eq!(alpha_elliptic(&RootVector::zero(2), &sp, &e).unwrap(), BiSeries::one(3, 3));
}

#[test]
fn second_order_coefficient() {
    let sp = SymbolicPair::new(0);
    let lq = 3;
    let e = eigenvalue_via_q2_recursion_n2(&sp, lq, 3).unwrap();
    let a = alpha_elliptic(&e12(2), &sp, &e).unwrap();
    let inv_b = |m: i64| sp.b(&e12(m)).inv().unwrap();
    let mut expect = BiSeries::<PRatFunc>::zero(lq, 3);
    for nu1 in -(lq as i64) - 2..=lq as i64 + 4 {
        let nu2 = 2 - nu1;
        if nu1 == 0 || nu2 == 0 {
            continue;
        }
        let w = s_coeff::<PRatFunc>(nu2, lq, 3).mul(&s_coeff(nu1, lq, 3));
        expect.add_assign(&w.scale(&inv_b(2).mul(&inv_b(nu1))));
    }
    assert_eq!(gamma_slice(&a, 2), expect);
}

#[test]
fn trig_examples() {
    let sp = SymbolicPair::new(1);
    let a = alpha_trig_q0(&e12(1), &sp, 4).unwrap();
    let expect = PRatFunc::new(PPoly::one(), PPoly::from_ints(&[2, 2])).unwrap();
    assert_eq!(a.coeff(0, 1), expect);
    assert_eq!(a.len(), 1);
    assert!(alpha_trig_q0(&e12(-1), &sp, 4).unwrap().is_zero());
    assert_eq!(alpha_trig_q0(&RootVector::zero(2), &sp, 4).unwrap(), BiSeries::one(0, 4));
}

#[test]
fn trig_limit_matches_elliptic_two_particles() {
    let sp = SymbolicPair::new(0);
    let e = eigenvalue_via_q2_recursion_n2(&sp, 2, 5).unwrap();
    let table = compute_alpha_table(&sp, &e.tilde_e, 5).unwrap();
    for mu in -2..=5 {
        let r = e12(mu);
        assert_eq!(q0_slice(&table.coeff(&r)), alpha_trig_q0(&r, &sp, 5).unwrap(), "mu={mu}");
    }
}

#[test]
fn trig_limit_matches_elliptic_three_particles() {
    let sp = numeric(3, Rational::new(7, 5), &[2, 1, 0]);
    let e = eigenvalue_via_lagrange(&sp, 2, 4).unwrap();
    let table = compute_alpha_table(&sp, &e.tilde_e, 2).unwrap();
    let mut checked = 0;
    for (mu, a) in table.window_entries() {
        assert_eq!(q0_slice(a), alpha_trig_q0(mu, &sp, 4).unwrap(), "mu={mu:?}");
        checked += 1;
    }
    assert!(checked > 10);
}

#[test]
fn f3_two_term_form() {
    // γ³ part of α(μ E_12): three-step walks to μ plus the correction from the
    // γ² eigenvalue shift acting on a one-step walk.
    let sp = numeric(2, Rational::new(9, 4), &[1, 0]);
    let (lq, sg) = (2, 3);
    let e = eigenvalue_via_lagrange(&sp, lq, sg).unwrap();
    let inv_b = |m: i64| sp.b(&e12(m)).inv().unwrap();
    let s = |nu: i64| s_coeff::<Rational>(nu, lq, sg);
    for mu in [-1i64, 1, 2] {
        let a = alpha_elliptic(&e12(mu), &sp, &e).unwrap();
        let bound = mu.abs() + 2 * lq as i64 + 1;
        let mut expect = BiSeries::<Rational>::zero(lq, sg);
        for n1 in -bound..=bound {
            for n2 in -bound..=bound {
                for n3 in -bound..=bound {
                    if n1 == 0 || n2 == 0 || n3 == 0 {
                        continue;
                    }
                    let w = s(n1).mul(&s(n2)).mul(&s(n3));
                    if n1 + n2 + n3 == mu && n1 + n2 != 0 {
                        expect.add_assign(&w.scale(&(&(&inv_b(mu) * &inv_b(n1 + n2)) * &inv_b(n1))));
                    }
                    if n2 + n3 == 0 && n1 == mu {
                        let d = &inv_b(n2) * &inv_b(n1).pow(2);
                        expect.add_assign(&w.scale(&-&d));
                    }
                }
            }
        }
        assert_eq!(gamma_slice(&a, 3), expect, "mu={mu}");
    }
}

#[test]
fn residual_exact_symbolic_pair() {
    let sp = SymbolicPair::new(1);
    let e = eigenvalue_via_q2_recursion_n2(&sp, 3, 5).unwrap();
    let table = compute_alpha_table(&sp, &e.tilde_e, 3).unwrap();
    let report = corollary_residual(&table, &sp, &e).unwrap();
    assert!(report.is_exact(), "{report:?}");
    assert!(report.window_points > 5);
    assert!(report.halo_points > 0);
}

#[test]
fn residual_exact_three_particles() {
    let sp = numeric(3, Rational::new(5, 2), &[1, 0, 0]);
    let e = eigenvalue_via_lagrange(&sp, 2, 4).unwrap();
    let table = compute_alpha_table(&sp, &e.tilde_e, 2).unwrap();
    let report = corollary_residual(&table, &sp, &e).unwrap();
    assert!(report.is_exact(), "{report:?}");
}

#[test]
fn residual_detects_corruption() {
    let sp = numeric(2, Rational::new(5, 2), &[1, 0]);
    let e = eigenvalue_via_lagrange(&sp, 2, 4).unwrap();
    let mut table = compute_alpha_table(&sp, &e.tilde_e, 2).unwrap();
    let target = e12(1);
    let bumped = table.coeff(&target).add(&BiSeries::monomial(1, 2, Rational::one(), 2, 4));
    table.set(target.clone(), bumped).unwrap();
    let report = corollary_residual(&table, &sp, &e).unwrap();
    assert!(report.window_residuals.contains_key(&target));
}

#[test]
fn residual_zero_at_q0_from_trig_formula() {
    let sp = numeric(3, Rational::new(3, 7), &[2, 1, 0]);
    let smax = 5;
    // Every positive-cone point with moment ≥ −4; sources of a point have
    // higher moment, so the set is closed under the q = 0 recursion.
    let mut f: BTreeMap<RootVector, BiSeries<Rational>> = BTreeMap::new();
    for a in 0..=4i64 {
        for b in 0..=4i64 {
            let mu = RootVector::new(vec![a, b - a, -b]).unwrap();
            if mu.moment() >= -4 && in_positive_cone(&mu) {
                f.insert(mu.clone(), alpha_trig_q0(&mu, &sp, smax).unwrap());
            }
        }
    }
    assert!(f.len() > 8);
    for mu in f.keys().filter(|m| !m.is_zero()) {
        let rhs = ConvolutionOperator.apply_at(&f, mu, 0, smax).shift_gamma(1);
        let mut lhs = f[mu].scale(&sp.b(mu));
        lhs = lhs.retruncate(0, smax);
        assert_eq!(lhs, rhs.retruncate(0, smax), "mu={mu:?}");
    }
}

#[test]
fn alpha_matches_q2_recursion_table() {
    let sp = SymbolicPair::new(2);
    let (lq, sg) = (3, 5);
    let sol = q2_recursion(&sp, lq, sg).unwrap();
    let table = compute_alpha_table(&sp, &sol.eigenvalue.tilde_e, lq).unwrap();
    for mu in -(lq as i64)..=lq as i64 {
        let keep = lq - mu.max(0) as usize;
        let mut from_dp = table.coeff(&e12(mu));
        from_dp.truncate_q2(keep);
        let mut from_rec = sol.alpha_series(mu);
        from_rec.truncate_q2(keep);
        assert_eq!(from_dp, from_rec, "mu={mu}");
    }
}

#[test]
fn triangular_structure_at_q0() {
    let sp = numeric(3, Rational::new(7, 5), &[1, 1, 0]);
    let e = eigenvalue_via_lagrange(&sp, 2, 4).unwrap();
    let table = compute_alpha_table(&sp, &e.tilde_e, 2).unwrap();
    for (mu, a) in table.entries() {
        if !in_positive_cone(mu) {
            assert!(a.terms().all(|(l, _, _)| l > 0), "mu={mu:?}");
        }
        if !mu.is_zero() {
            assert!(a.terms().all(|(_, s, _)| s > 0));
        }
    }
}

#[test]
fn center_of_mass_shift_of_b() {
    let a = numeric(3, Rational::new(4, 3), &[3, 1, 0]);
    let b = numeric(3, Rational::new(4, 3), &[5, 3, 2]);
    for p in pairs(3) {
        for nu in -3..=3 {
            let mu = RootVector::pair(3, p, nu);
            assert_eq!(a.b(&mu), b.b(&mu));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn convolution_is_linear(
        c in -5i64..5,
        vals in proptest::collection::vec(-9i64..9, 6),
        target in -2i64..3,
    ) {
        let lq = 2;
        let mut f = BTreeMap::new();
        let mut g = BTreeMap::new();
        for (i, v) in vals.iter().enumerate() {
            let mu = e12(i as i64 - 2);
            f.insert(mu.clone(), BiSeries::monomial(0, 0, Rational::from_int(*v), lq, 1));
            g.insert(mu, BiSeries::monomial(1, 1, Rational::from_int(v + 1), lq, 1));
        }
        let sum: BTreeMap<_, _> = f.iter().map(|(k, v)| (k.clone(), v.scale(&Rational::from_int(c)).add(&g[k]))).collect();
        let op = ConvolutionOperator;
        let mu = e12(target);
        let lhs = op.apply_at(&sum, &mu, lq, 1);
        let rhs = op.apply_at(&f, &mu, lq, 1).scale(&Rational::from_int(c)).add(&op.apply_at(&g, &mu, lq, 1));
        prop_assert_eq!(lhs, rhs);
    }
}
