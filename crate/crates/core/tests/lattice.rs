use ecs_core::lattice::{b, b_symbolic, e0_raw, pairs, q0_limit_check, s_coeff};
use ecs_core::*;
use proptest::prelude::*;

fn lambda() -> impl Strategy<Value = Rational> {
    (1i64..30, 1i64..9).prop_map(|(p, q)| Rational::new(p, q))
}

/// Weakly decreasing quantum numbers of length `nn`.
fn quantum_numbers(nn: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-4i64..5, nn).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn root_vector(nn: usize) -> impl Strategy<Value = RootVector> {
    proptest::collection::vec((0..nn, 0..nn, -3i64..4), 0..4).prop_map(move |steps| {
        let steps: Vec<_> = steps
            .into_iter()
            .filter(|(j, k, _)| j < k)
            .map(|(j, k, nu)| (ecs_core::lattice::PairIndex::new(j + 1, k + 1).unwrap(), nu))
            .collect();
        RootVector::from_pairs(nn, &steps)
    })
}

fn model(n: &[i64], lambda: Rational) -> (QuantumNumbers, ModelParams) {
    (QuantumNumbers::new(n.to_vec()).unwrap(), ModelParams::new(n.len(), lambda).unwrap())
}

#[test]
fn examples() {
    let (n, p) = model(&[1, 0], Rational::new(5, 2));
    // E_0 = (1 + 5/4)² + (−5/4)²
    assert_eq!(e0_raw(n.as_slice(), &p), Rational::new(53, 8));
    assert!(q0_limit_check(1) && q0_limit_check(-1) && q0_limit_check(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn b_is_an_energy_difference(
        (n, mu) in (2usize..5).prop_flat_map(|nn| (quantum_numbers(nn), root_vector(nn))),
        lam in lambda(),
    ) {
        let (qn, p) = model(&n, lam);
        let shifted = qn.shifted(&mu);
        let forward = b(&mu, &qn, &p);
        prop_assert_eq!(&forward, &(&e0_raw(&shifted, &p) - &e0_raw(&n, &p)));
        // b(μ; n) + b(−μ; n+μ) = 0 whenever n+μ is itself admissible
        if let Ok(qm) = QuantumNumbers::new(shifted) {
            prop_assert_eq!(&forward + &b(&mu.neg(), &qm, &p), Rational::zero());
        }
    }

    #[test]
    fn root_vectors_sum_to_zero(nn in 2usize..6, seed in proptest::collection::vec((0usize..6, 0usize..6, -5i64..6), 0..6)) {
        let steps: Vec<_> = seed
            .into_iter()
            .filter(|(j, k, _)| j < k && *k < nn)
            .map(|(j, k, nu)| (ecs_core::lattice::PairIndex::new(j + 1, k + 1).unwrap(), nu))
            .collect();
        let mu = RootVector::from_pairs(nn, &steps);
        prop_assert_eq!(mu.as_slice().iter().sum::<i64>(), 0);
        prop_assert_eq!(mu.len(), nn);
    }

    #[test]
    fn s_difference_is_nu(nu in 1i64..8, lq in 0usize..12, sg in 0usize..3) {
        let diff = s_coeff::<Rational>(nu, lq, sg).sub(&s_coeff(-nu, lq, sg));
        prop_assert_eq!(diff, BiSeries::constant(Rational::from_int(nu), lq, sg));
        prop_assert!(q0_limit_check(nu) && q0_limit_check(-nu));
    }

    #[test]
    fn symbolic_b_matches_numeric(mu in -6i64..7, a in 0i64..4, c in -3i64..3, lam in lambda()) {
        let n = [a + c, c];
        let (qn, p) = model(&n, lam.clone());
        let sym = b_symbolic(mu);
        // 2μ(P + μ) structurally
        let expect = PRatFunc::from_poly(PPoly::from_ints(&[2 * mu * mu, 2 * mu]));
        prop_assert_eq!(&sym, &expect);
        let pp = &Rational::from_int(a) + &lam;
        let mv = RootVector::pair(2, pairs(2)[0], mu);
        prop_assert_eq!(sym.eval(&pp).unwrap(), b(&mv, &qn, &p));
        let pair = SymbolicPair::from_quantum_numbers(&qn).unwrap();
        prop_assert_eq!(pair.e0().eval(&pp).unwrap(), e0_raw(&n, &p));
    }
}
