//! Reference data for the two-particle eigenvalue series and the
//! Lagrange-inversion bookkeeping.
//!
//! `E_ℓ` (the coefficient of `q^{2ℓ}`) is stored for `ℓ ≤ 4` as a list of
//! `γ^s` coefficients, each a rational function of `P = n_1 − n_2 + λ`.

use std::collections::BTreeMap;

use ecs_core::eigenvalue::lagrange_terms;
use ecs_core::{PPoly, PRatFunc, Rational, Scalar};

/// Polynomial in `P²` from ascending integer coefficients.
fn even_poly(c: &[i64]) -> PPoly {
    let mut v = vec![0i64; 2 * c.len()];
    for (i, &x) in c.iter().enumerate() {
        v[2 * i] = x;
    }
    PPoly::from_ints(&v)
}

/// `P² − k²`.
fn gap(k: i64) -> PPoly {
    even_poly(&[-k * k, 1])
}

fn product(factors: &[(i64, u32)]) -> PPoly {
    factors.iter().fold(PPoly::one(), |acc, &(k, e)| acc.mul(&gap(k).pow(e)))
}

fn frac(num: PPoly, scale: i64, den: PPoly) -> PRatFunc {
    PRatFunc::new(num, den.scale(&Rational::from_int(scale))).expect("nonzero denominator")
}

/// `P² − 2`, the factor in the printed `γ⁴` denominator of `E_4`.
fn p2_minus_2() -> PPoly {
    even_poly(&[-2, 1])
}

/// `1/((P² − ℓ²)(P² − 1))` for `ℓ ≥ 2`, `1` for `ℓ = 1`.
pub fn prefactor(l: i64) -> PRatFunc {
    if l == 1 {
        PRatFunc::one()
    } else {
        frac(PPoly::one(), 1, product(&[(l, 1), (1, 1)]))
    }
}

/// Bracketed coefficients `[(s, c_s)]` with `E_ℓ = prefactor(ℓ) Σ c_s γ^s`,
/// as printed. `None` for `ℓ` outside `1..=4`.
pub fn printed_bracket(l: i64) -> Option<Vec<(usize, PRatFunc)>> {
    let poly = |c: &[i64], s: i64| PRatFunc::from_poly(even_poly(c).scale(&Rational::from_int(s)));
    let out = match l {
        1 => vec![(2, frac(PPoly::one(), 1, gap(1)))],
        2 => vec![
            (2, poly(&[-2, 1], 6)),
            (3, PRatFunc::from_int(-6)),
            (4, frac(even_poly(&[7, 5]), 4, product(&[(1, 2)]))),
        ],
        3 => vec![
            (2, poly(&[-3, 1], 12)),
            (3, PRatFunc::from_int(-48)),
            (4, frac(even_poly(&[-2, -37, 15]).scale(&Rational::from_int(4)), 1, product(&[(2, 1), (1, 2)]))),
            (5, frac(even_poly(&[17, 7]).scale(&Rational::from_int(-4)), 1, product(&[(2, 1), (1, 2)]))),
            (6, frac(even_poly(&[29, 58, 9]), 2, product(&[(2, 1), (1, 4)]))),
        ],
        4 => vec![
            (2, frac(even_poly(&[112, -74, 7]).scale(&Rational::from_int(4)), 1, gap(2))),
            (3, PRatFunc::from_int(-180)),
            (
                4,
                frac(
                    even_poly(&[-18528, 119816, -115640, 42249, -6662, 365]).scale(&Rational::from_int(3)),
                    2,
                    product(&[(3, 1), (1, 2)]).mul(&p2_minus_2().pow(2)),
                ),
            ),
            (
                5,
                frac(
                    even_poly(&[-25664, -4252, 11415, -3358, 259]).scale(&Rational::from_int(-3)),
                    1,
                    product(&[(3, 1), (2, 3), (1, 2)]),
                ),
            ),
            (
                6,
                frac(even_poly(&[79832, -501962, 293115, -10529, -18127, 2151]), 4, product(&[(3, 1), (2, 3), (1, 4)])),
            ),
            (
                7,
                frac(even_poly(&[104428, 94061, -43203, -481, 715]).scale(&Rational::from_int(-1)), 4, product(&[(3, 1), (2, 3), (1, 4)])),
            ),
            (
                8,
                frac(even_poly(&[274748, 827565, 64228, -140354, 9144, 1469]), 64, product(&[(3, 1), (2, 3), (1, 6)])),
            ),
        ],
        _ => return None,
    };
    Some(out)
}

/// The one coefficient whose printed form disagrees with every algorithm here:
/// `(ℓ, s)` and the denominator factor `(P² − 2)²` that should read `(P² − 4)³`.
pub const CORRECTED_ENTRY: (i64, usize) = (4, 4);

/// As [`printed_bracket`] with the `E_4 γ⁴` denominator corrected.
pub fn reference_bracket(l: i64) -> Option<Vec<(usize, PRatFunc)>> {
    let mut out = printed_bracket(l)?;
    if l == CORRECTED_ENTRY.0 {
        for (s, c) in &mut out {
            if *s == CORRECTED_ENTRY.1 {
                let den = c.den().mul(&product(&[(2, 3)])).div_rem(&p2_minus_2().pow(2)).0;
                *c = PRatFunc::new(c.num().clone(), den).expect("nonzero denominator");
            }
        }
    }
    Some(out)
}

/// `E_ℓ` as `[(s, coefficient)]`, prefactor multiplied in.
pub fn reference_coefficients(l: i64) -> Option<Vec<(usize, PRatFunc)>> {
    let pre = prefactor(l);
    Some(reference_bracket(l)?.into_iter().map(|(s, c)| (s, c.mul(&pre))).collect())
}

/// `(ℓ/2) Σ_{k | ℓ} (1/(P − k) − 1/(P + k))`, the `γ²` coefficient of `E_ℓ`.
pub fn divisor_law(l: i64) -> PRatFunc {
    let mut acc = PRatFunc::zero();
    for k in (1..=l).filter(|k| l % k == 0) {
        let minus = PRatFunc::new(PPoly::one(), PPoly::linear(Rational::from_int(-k))).expect("nonzero");
        let plus = PRatFunc::new(PPoly::one(), PPoly::linear(Rational::from_int(k))).expect("nonzero");
        acc = acc.add(&minus.sub(&plus));
    }
    acc.scale(&Rational::new(l, 2))
}

/// Monomial `Π G_j^{k_j}` as the exponent vector `k`, trailing zeros trimmed.
pub type Monomial = Vec<usize>;

fn trim(mut k: Monomial) -> Monomial {
    while k.last() == Some(&0) {
        k.pop();
    }
    k
}

/// Polynomial in the abstract symbols `G_0, G_1, …` with integer coefficients.
type GPoly = BTreeMap<Monomial, i128>;

fn gpoly_mul(a: &GPoly, b: &GPoly) -> GPoly {
    let mut out = GPoly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let len = ka.len().max(kb.len());
            let k: Monomial = (0..len).map(|i| ka.get(i).unwrap_or(&0) + kb.get(i).unwrap_or(&0)).collect();
            *out.entry(trim(k)).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `Ẽ_1 … Ẽ_n` from iterating `x ← −η Σ_k G_k x^k` with every series
/// truncated at `η^n`. Each pass fixes one more order.
pub fn eta_iteration(n: usize) -> Vec<GPoly> {
    // x[j] is the η^j coefficient, j = 0..=n.
    let mut x: Vec<GPoly> = vec![GPoly::new(); n + 1];
    for _ in 0..n {
        let mut next: Vec<GPoly> = vec![GPoly::new(); n + 1];
        // power[j] = η^j coefficient of x^k, starting from x^0 = 1
        let mut power: Vec<GPoly> = vec![GPoly::new(); n + 1];
        power[0].insert(Vec::new(), 1);
        for k in 0..n {
            let mut g = vec![0usize; k + 1];
            g[k] = 1;
            let gk: GPoly = [(g, 1i128)].into_iter().collect();
            for j in 0..n {
                for (m, c) in gpoly_mul(&gk, &power[j]) {
                    *next[j + 1].entry(m).or_insert(0) -= c;
                }
            }
            let mut np: Vec<GPoly> = vec![GPoly::new(); n + 1];
            for a in 0..=n {
                for b in 0..=n - a {
                    for (m, c) in gpoly_mul(&power[a], &x[b]) {
                        *np[a + b].entry(m).or_insert(0) += c;
                    }
                }
            }
            power = np;
        }
        for p in &mut next {
            p.retain(|_, c| *c != 0);
        }
        x = next;
    }
    x.into_iter().skip(1).collect()
}

/// `Ẽ_n` from the closed Lagrange-inversion formula, in the same form as
/// [`eta_iteration`].
pub fn lagrange_poly(n: usize) -> Result<GPoly, ecs_core::Error> {
    Ok(lagrange_terms(n)?.into_iter().map(|t| (trim(t.exponents), t.coefficient)).collect())
}

/// The printed lists of `Ẽ_1 … Ẽ_5` as `(coefficient, exponents)`, in
/// print order. Index 4 carries the printed `[G_0]^3 G_4` literally.
pub fn printed_lists() -> Vec<Vec<(i128, Monomial)>> {
    vec![
        vec![(-1, vec![1])],
        vec![(1, vec![1, 1])],
        vec![(-1, vec![2, 0, 1]), (-1, vec![1, 2])],
        vec![(3, vec![2, 1, 1]), (1, vec![1, 3]), (1, vec![3, 0, 0, 1])],
        vec![
            (-4, vec![3, 1, 0, 1]),
            (-6, vec![2, 2, 1]),
            (-2, vec![3, 0, 2]),
            (-1, vec![3, 0, 0, 0, 1]),
            (-1, vec![1, 4]),
        ],
    ]
}

/// Printed monomial that violates `Σ k_j = n`; the weight constraint gives `[G_0]^4 G_4`.
pub const MISPRINTED_MONOMIAL: (usize, [usize; 5], [usize; 5]) = (5, [3, 0, 0, 0, 1], [4, 0, 0, 0, 1]);

/// Human-readable `Π [G_j]^{k_j}`.
pub fn monomial_text(k: &[usize]) -> String {
    let parts: Vec<String> = k
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| if e == 1 { format!("G_{j}") } else { format!("[G_{j}]^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_low_orders() {
        let e = eta_iteration(3);
        assert_eq!(e[0], [(vec![1], -1)].into_iter().collect());
        assert_eq!(e[1], [(vec![1, 1], 1)].into_iter().collect());
        assert_eq!(e[2], [(vec![2, 0, 1], -1), (vec![1, 2], -1)].into_iter().collect());
    }

    #[test]
    fn divisor_law_at_one() {
        // 1/(P−1) − 1/(P+1) = 2/(P²−1), times 1/2
        assert_eq!(divisor_law(1), frac(PPoly::one(), 1, gap(1)));
    }

    #[test]
    fn correction_touches_one_entry() {
        for l in 1..=4 {
            let a = printed_bracket(l).unwrap();
            let b = reference_bracket(l).unwrap();
            for ((s, x), (_, y)) in a.iter().zip(&b) {
                assert_eq!(x == y, (l, *s) != CORRECTED_ENTRY);
            }
        }
    }
}
