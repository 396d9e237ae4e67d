//! Built-in consistency suites run by `ecs selftest`.

use ecs_core::eigenvalue::eigenvalue_via_lagrange;
use ecs_core::{PRatFunc, Scalar, SymbolicPair};

use crate::golden::{
    divisor_law, eta_iteration, lagrange_poly, monomial_text, printed_bracket, printed_lists, reference_coefficients,
    CORRECTED_ENTRY, MISPRINTED_MONOMIAL,
};

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub notes: Vec<String>,
}

impl SuiteResult {
    pub fn line(&self) -> String {
        format!("{} {}", if self.passed { "PASS" } else { "FAIL" }, self.name)
    }
}

/// Symbolic `E_1 … E_4` at `(Lq, Sγ) = (4, 8)` against the reference table.
pub fn golden_suite() -> SuiteResult {
    let mut notes = Vec::new();
    let passed = match eigenvalue_via_lagrange(&SymbolicPair::new(1), 4, 8) {
        Err(e) => {
            notes.push(format!("engine error: {e}"));
            false
        }
        Ok(e) => {
            let mut ok = true;
            for l in 1..=4usize {
                let want = reference_coefficients(l as i64).expect("reference through l = 4");
                let got: Vec<(usize, PRatFunc)> =
                    e.tilde_e.terms().filter(|t| t.0 == l).map(|(_, s, c)| (s, c.clone())).collect();
                if got != want {
                    ok = false;
                    notes.push(format!("E_{l} differs: got {got:?}"));
                }
            }
            let (l, s) = CORRECTED_ENTRY;
            let printed = printed_bracket(l)
                .and_then(|b| b.into_iter().find(|t| t.0 == s))
                .map(|(_, c)| c.mul(&crate::golden::prefactor(l)));
            if printed.as_ref() != Some(&e.tilde_e.coeff(l as usize, s)) {
                notes.push(format!(
                    "note: the printed gamma^{s} coefficient of E_{l} has denominator factor (P^2-2)^2; \
                     the computed one has (P^2-4)^3 with the same numerator"
                ));
            }
            ok
        }
    };
    SuiteResult { name: "golden E_1..E_4 (symbolic, Lq=4, Sgamma=8)", passed, notes }
}

/// Closed Lagrange coefficients against the `η`-iteration for `n ≤ 8`, and
/// against the printed lists for `n ≤ 5`.
pub fn lagrange_suite() -> SuiteResult {
    let mut notes = Vec::new();
    let mut ok = true;
    let iterated = eta_iteration(8);
    for (i, it) in iterated.iter().enumerate() {
        let n = i + 1;
        match lagrange_poly(n) {
            Ok(closed) if &closed == it => {}
            Ok(closed) => {
                ok = false;
                notes.push(format!("n={n}: closed {closed:?} vs iterated {it:?}"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("n={n}: {e}"));
            }
        }
    }
    for (i, printed) in printed_lists().into_iter().enumerate() {
        let n = i + 1;
        let closed = lagrange_poly(n).unwrap_or_default();
        let mut expected: Vec<(Vec<usize>, i128)> = printed
            .into_iter()
            .map(|(c, k)| {
                let k = if n == MISPRINTED_MONOMIAL.0 && k == MISPRINTED_MONOMIAL.1 {
                    MISPRINTED_MONOMIAL.2.to_vec()
                } else {
                    k
                };
                (k, c)
            })
            .collect();
        expected.sort();
        let got: Vec<(Vec<usize>, i128)> = closed.iter().map(|(k, c)| (k.clone(), *c)).collect();
        if got != expected {
            ok = false;
            notes.push(format!("E~_{n}: printed list differs from the closed form"));
        }
        let text: Vec<String> = closed.iter().map(|(k, c)| format!("{c:+} {}", monomial_text(k))).collect();
        notes.push(format!("E~_{n} = {}", text.join(" ")));
    }
    notes.push(format!(
        "note: printed {} in E~_5 read as {} (weight constraint)",
        monomial_text(&MISPRINTED_MONOMIAL.1),
        monomial_text(&MISPRINTED_MONOMIAL.2)
    ));
    SuiteResult { name: "Lagrange inversion vs eta-iteration (n <= 8)", passed: ok, notes }
}

/// `γ²` slice of `E_ℓ` against the divisor sum, `ℓ ≤ 7`.
pub fn divisor_suite() -> SuiteResult {
    let mut notes = Vec::new();
    let passed = match eigenvalue_via_lagrange(&SymbolicPair::new(1), 7, 2) {
        Err(e) => {
            notes.push(format!("engine error: {e}"));
            false
        }
        Ok(e) => {
            let mut ok = true;
            for l in 1..=7usize {
                let got = e.tilde_e.coeff(l, 2);
                let want = divisor_law(l as i64);
                if got != want {
                    ok = false;
                    notes.push(format!("l={l}: {got} vs {want}"));
                }
            }
            ok
        }
    };
    SuiteResult { name: "divisor law for the gamma^2 slice (l <= 7)", passed, notes }
}

pub fn run_all() -> Vec<SuiteResult> {
    vec![golden_suite(), lagrange_suite(), divisor_suite()]
}
