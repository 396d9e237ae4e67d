use ecs_core::eigenvalue::*;
use ecs_core::lattice::{pairs, s_coeff, PairIndex};
use ecs_core::*;
use proptest::prelude::*;

fn numeric(nn: usize, lambda: Rational, n: &[i64]) -> NumericModel {
    let params = ModelParams::new(nn, lambda).unwrap();
    NumericModel::new(params, QuantumNumbers::new(n.to_vec()).unwrap()).unwrap()
}

/// Every `ℓ_1 + … + ℓ_m = k` with `ℓ_r ≥ 0`.
fn compositions(k: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Explicit walk-by-walk sum, no pruning beyond a generous step bound.
fn gk_brute_force<S: Spectrum>(sp: &S, k: usize, lq: usize, sg: usize) -> BiSeries<S::Scalar> {
    let nn = sp.n_particles();
    let bound = ((nn - 1) * lq) as i64 + 1;
    let mut steps = Vec::new();
    for p in pairs(nn) {
        for nu in -bound..=bound {
            if nu != 0 {
                steps.push((p, nu));
            }
        }
    }
    let mut total = BiSeries::zero(lq, sg);
    for s in 2..=sg {
        let mut idx = vec![0usize; s];
        'outer: loop {
            let walk: Vec<(PairIndex, i64)> = idx.iter().map(|&i| steps[i]).collect();
            let mut partial = RootVector::zero(nn);
            let mut points = Vec::new();
            let mut ok = true;
            for (r, &(p, nu)) in walk.iter().enumerate() {
                partial = partial.step(p, nu);
                if r + 1 < s {
                    if partial.is_zero() {
                        ok = false;
                        break;
                    }
                    points.push(partial.clone());
                }
            }
            if ok && partial.is_zero() {
                let mut weight = BiSeries::one(lq, sg).shift_gamma(s);
                for &(_, nu) in &walk {
                    weight = weight.mul(&s_coeff(nu, lq, sg));
                }
                if !weight.is_zero() {
                    let mut den_sum = <S::Scalar as Scalar>::zero();
                    for ls in compositions(k, s - 1) {
                        let mut term = <S::Scalar as Scalar>::one();
                        for (pt, &l) in points.iter().zip(&ls) {
                            let inv = sp.b(pt).inv().expect("resonance in oracle");
                            term = term.mul(&inv.pow(1 + l as u32));
                        }
                        den_sum = den_sum.add(&term);
                    }
                    total.add_assign(&weight.scale(&den_sum));
                }
            }
            for pos in (0..s).rev() {
                idx[pos] += 1;
                if idx[pos] < steps.len() {
                    continue 'outer;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    total
}

#[test]
fn gk_matches_brute_force_two_particles() {
    let sp = SymbolicPair::new(1);
    for lq in 0..=2 {
        let table = compute_gk_table(&sp, lq, 4, 2).unwrap();
        for k in 0..=2 {
            assert_eq!(table.entries()[k], gk_brute_force(&sp, k, lq, 4), "lq={lq} k={k}");
        }
    }
}

#[test]
fn gk_matches_brute_force_three_particles() {
    let sp = numeric(3, Rational::new(7, 5), &[2, 0, -1]);
    for lq in 1..=2 {
        let table = compute_gk_table(&sp, lq, 3, 1).unwrap();
        for k in 0..=1 {
            assert_eq!(table.entries()[k], gk_brute_force(&sp, k, lq, 3), "lq={lq} k={k}");
        }
    }
}

#[test]
fn gk_structural_vanishing() {
    let sp = numeric(3, Rational::new(7, 5), &[1, 0, 0]);
    let table = compute_gk_table(&sp, 3, 5, 2).unwrap();
    for g in table.entries() {
        assert!(g.terms().all(|(l, s, _)| l >= 1 && s >= 2));
    }
}

#[test]
fn symbolic_leading_order() {
    let sp = SymbolicPair::new(3);
    let e = eigenvalue_via_lagrange(&sp, 1, 2).unwrap();
    let expect = PRatFunc::new(PPoly::one(), PPoly::from_ints(&[-1, 0, 1])).unwrap();
    assert_eq!(e.tilde_e.coeff(1, 2), expect);
    assert_eq!(e.tilde_e.len(), 1);
}

#[test]
fn trivial_truncations() {
    let sp = numeric(2, Rational::new(5, 2), &[1, 0]);
    let e = eigenvalue_via_lagrange(&sp, 0, 6).unwrap();
    assert!(e.tilde_e.is_zero());
    assert_eq!(e.e0, sp.e0());
    let e = eigenvalue_via_lagrange(&sp, 3, 1).unwrap();
    assert!(e.tilde_e.is_zero());
    assert!(eigenvalue_via_q2_recursion_n2(&sp, 0, 4).unwrap().tilde_e.is_zero());
    assert!(eigenvalue_via_fixed_point(&sp, 0, 4, 0).unwrap().tilde_e.is_zero());
}

#[test]
fn fixed_point_properties() {
    let sp = numeric(2, Rational::new(5, 2), &[2, 0]);
    let table = gk_table_for(&sp, 3, 6).unwrap();
    let first = fixed_point_iterate(&table, 1);
    assert_eq!(first, table.entries()[0].neg());
    let e = fixed_point_iterate(&table, 3);
    assert_eq!(fixed_point_step(&table, &e), e);
    assert!(eigenvalue_via_fixed_point(&sp, 3, 6, 2).is_err());
}

#[test]
fn compose_needs_enough_entries() {
    let sp = numeric(2, Rational::new(5, 2), &[2, 0]);
    let table = compute_gk_table(&sp, 3, 4, 0).unwrap();
    assert!(matches!(lagrange_compose(&table, 3), Err(Error::Usage(_))));
    let two = lagrange_compose(&compute_gk_table(&sp, 3, 4, 1).unwrap(), 2).unwrap();
    let g = compute_gk_table(&sp, 3, 4, 1).unwrap();
    let expect = g.entries()[0].neg().add(&g.entries()[0].mul(&g.entries()[1]));
    assert_eq!(two, expect);
}

#[test]
fn eta_grading_starts_at_order_n() {
    let sp = numeric(2, Rational::new(7, 3), &[1, 0]);
    let table = gk_table_for(&sp, 4, 6).unwrap();
    let mut prev = BiSeries::zero(4, 6);
    for n in 1..=4 {
        let upto = lagrange_compose(&table, n).unwrap();
        let piece = upto.sub(&prev);
        assert!(piece.min_q2_power().is_none_or(|m| m >= n), "n={n}");
        prev = upto;
    }
}

#[test]
fn symbolic_matches_numeric_specialization() {
    let lambda = Rational::new(5, 3);
    let sp = numeric(2, lambda.clone(), &[3, 1]);
    let p = sp.pair_parameter().unwrap();
    let sym = eigenvalue_via_q2_recursion_n2(&SymbolicPair::new(4), 3, 5).unwrap();
    let num = eigenvalue_via_lagrange(&sp, 3, 5).unwrap();
    let specialized = sym.tilde_e.map_scalar(|c| c.eval(&p).unwrap());
    assert_eq!(specialized, num.tilde_e);
    assert_eq!(sym.e0.eval(&p).unwrap(), num.e0);
}

#[test]
fn gamma2_slice_matches_closed_form() {
    let sp = SymbolicPair::new(0);
    let e = eigenvalue_via_q2_recursion_n2(&sp, 7, 2).unwrap();
    let closed = gamma2_closed_form(&PRatFunc::p(), 7, 2).unwrap();
    assert_eq!(e.tilde_e, closed);
}

#[test]
fn resonance_is_reported() {
    // Integer λ gives integer P; b(−P E_12) = 0 is reached by negative steps.
    let sp = numeric(2, Rational::from_int(2), &[0, 0]);
    let err = eigenvalue_via_q2_recursion_n2(&sp, 3, 4).unwrap_err();
    assert!(matches!(err, Error::Resonance { .. }), "{err:?}");
    let err = eigenvalue_via_lagrange(&sp, 3, 4).unwrap_err();
    assert!(matches!(err, Error::Resonance { .. }), "{err:?}");
}

fn small_lambda() -> impl Strategy<Value = Rational> {
    (1i64..40, 2i64..12).prop_map(|(p, q)| Rational::new(p, q)).prop_filter("non-integer", |r| !r.is_integer())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn algorithms_agree_two_particles(lambda in small_lambda(), a in 0i64..4, b in -2i64..2) {
        let (n1, n2) = if a >= b { (a, b) } else { (b, a) };
        let sp = numeric(2, lambda, &[n1, n2]);
        let lag = eigenvalue_via_lagrange(&sp, 3, 6);
        prop_assume!(lag.is_ok());
        let lag = lag.unwrap();
        let fix = eigenvalue_via_fixed_point(&sp, 3, 6, 3).unwrap();
        let rec = eigenvalue_via_q2_recursion_n2(&sp, 3, 6).unwrap();
        prop_assert_eq!(&lag, &fix);
        prop_assert_eq!(&lag, &rec);
    }

    #[test]
    fn center_of_mass_shift(lambda in small_lambda(), c in -3i64..3) {
        let a = numeric(3, lambda.clone(), &[2, 1, 0]);
        let b = numeric(3, lambda, &[2 + c, 1 + c, c]);
        let ga = gk_table_for(&a, 2, 4);
        prop_assume!(ga.is_ok());
        let (ta, tb) = (ga.unwrap(), gk_table_for(&b, 2, 4).unwrap());
        prop_assert_eq!(ta.entries(), tb.entries());
    }
}
