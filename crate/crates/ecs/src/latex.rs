//! LaTeX rendering of symbolic two-particle eigenvalue coefficients.
//!
//! For `ℓ ≥ 2` the common factor `1/((P² − ℓ²)(P² − 1))` is pulled in front
//! of a bracket; denominators are written as products of `(P² − k²)` powers
//! with the integer content split off, so output can be compared with the
//! hand-written form line by line.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use ecs_core::eigenvalue::EigenvalueSeries;
use ecs_core::{BiSeries, PPoly, PRatFunc, Rational, Scalar};

use crate::golden::prefactor;

/// Largest `k` tried when splitting off `(P² − k²)` factors.
const MAX_GAP: i64 = 64;

/// `content · N` with `N` an integer polynomial of content 1 and positive
/// leading coefficient.
fn primitive(p: &PPoly) -> (Rational, Vec<BigInt>) {
    let coeffs = p.coeffs();
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return (Rational::zero(), Vec::new());
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    let n = ints.iter().map(|c| c / &g).collect();
    let content = Rational::from_bigints(g, lcm).expect("nonzero lcm");
    (content, n)
}

fn gap_poly(k: i64) -> PPoly {
    PPoly::from_ints(&[-k * k, 0, 1])
}

/// Monic `den` as `Π (P² − k²)^e` times a leftover factor.
fn split_gaps(den: &PPoly) -> (Vec<(i64, u32)>, PPoly) {
    let mut rest = den.clone();
    let mut out = Vec::new();
    for k in 1..=MAX_GAP {
        let g = gap_poly(k);
        let mut e = 0;
        loop {
            if rest.degree().unwrap_or(0) < 2 {
                break;
            }
            let (q, r) = rest.div_rem(&g);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((k, e));
        }
    }
    out.reverse();
    (out, rest)
}

fn int_poly_latex(c: &[BigInt]) -> String {
    let mut s = String::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let mag = a.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if i == 0 || !mag.is_one() {
            s.push_str(&mag.to_string());
        }
        match i {
            0 => {}
            1 => s.push('P'),
            _ => s.push_str(&format!("P^{{{i}}}")),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn rational_poly_latex(p: &PPoly) -> String {
    let (c, n) = primitive(p);
    if c.is_one() {
        int_poly_latex(&n)
    } else {
        format!("{}({})", latex_rational(&c), int_poly_latex(&n))
    }
}

fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn terms_count(n: &[BigInt]) -> usize {
    n.iter().filter(|c| !c.is_zero()).count()
}

/// `(negative, magnitude)` of a coefficient in the layout described above.
pub fn prat_latex(f: &PRatFunc) -> (bool, String) {
    if f.is_zero() {
        return (false, "0".into());
    }
    let (content, n) = primitive(f.num());
    let neg = content.is_negative();
    let content = content.abs();
    let (a, b) = (content.numer().clone(), content.denom().clone());
    let (gaps, rest) = split_gaps(f.den());

    let poly_text = int_poly_latex(&n);
    let is_one = n.len() == 1 && n[0].is_one();
    let num_text = if is_one {
        a.to_string()
    } else if a.is_one() {
        if terms_count(&n) > 1 && !gaps.is_empty() || terms_count(&n) > 1 && !b.is_one() {
            format!("({poly_text})")
        } else {
            poly_text
        }
    } else if terms_count(&n) > 1 {
        format!("{a}({poly_text})")
    } else {
        format!("{a}{poly_text}")
    };

    let mut factors: Vec<String> = gaps
        .iter()
        .map(|&(k, e)| {
            let base = format!("(P^{{2}} - {})", k * k);
            if e == 1 {
                base
            } else {
                format!("{base}^{{{e}}}")
            }
        })
        .collect();
    if !rest.is_one() {
        factors.push(format!("({})", rational_poly_latex(&rest)));
    }
    if factors.is_empty() && b.is_one() {
        return (neg, num_text);
    }
    let mut den_text = if b.is_one() { String::new() } else { b.to_string() };
    if factors.len() == 1 && den_text.is_empty() && gaps.first().is_some_and(|g| g.1 == 1) {
        den_text = factors[0].trim_start_matches('(').trim_end_matches(')').to_string();
    } else {
        den_text.extend(factors);
    }
    (neg, format!("\\frac{{{num_text}}}{{{den_text}}}"))
}

fn gamma_power(s: usize) -> String {
    match s {
        0 => String::new(),
        1 => "\\gamma".into(),
        _ => format!("\\gamma^{{{s}}}"),
    }
}

/// `Σ_s c_s γ^s` with signs folded into the joins.
fn gamma_sum(coeffs: &[(usize, PRatFunc)]) -> String {
    let mut s = String::new();
    for (k, c) in coeffs {
        let (neg, body) = prat_latex(c);
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let g = gamma_power(*k);
        if body == "1" && !g.is_empty() {
            s.push_str(&g);
        } else {
            s.push_str(&body);
            s.push_str(&g);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// `\mathcal{E}_ℓ = …` for one `q^{2ℓ}` slice (`ℓ ≥ 1`).
pub fn slice_latex(l: usize, coeffs: &[(usize, PRatFunc)]) -> String {
    if l <= 1 || coeffs.is_empty() {
        return format!("\\mathcal{{E}}_{{{l}}} = {}", gamma_sum(coeffs));
    }
    let pre = prefactor(l as i64);
    let inv = pre.inv().expect("prefactor is nonzero");
    let bracket: Vec<(usize, PRatFunc)> = coeffs.iter().map(|(s, c)| (*s, c.mul(&inv))).collect();
    let (_, pre_text) = prat_latex(&pre);
    format!("\\mathcal{{E}}_{{{l}}} = {pre_text}\\Bigl[ {} \\Bigr]", gamma_sum(&bracket))
}

fn slice(series: &BiSeries<PRatFunc>, l: usize) -> Vec<(usize, PRatFunc)> {
    series.terms().filter(|(ll, _, _)| *ll == l).map(|(_, s, c)| (s, c.clone())).collect()
}

/// One line for `E_0` followed by one line per `q^{2ℓ}`, `ℓ = 1..=Lq`.
pub fn eigenvalue_latex(e: &EigenvalueSeries<PRatFunc>) -> String {
    let (e0_neg, e0) = prat_latex(&e.e0);
    let mut out = format!("\\mathcal{{E}}_{{0}} = {}{}\n", if e0_neg { "-" } else { "" }, e0);
    for l in 1..=e.tilde_e.q2_order() {
        out.push_str(&slice_latex(l, &slice(&e.tilde_e, l)));
        out.push('\n');
    }
    out
}
