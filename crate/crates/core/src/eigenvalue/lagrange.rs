//! Inversion of `Ẽ = −G(Ẽ)` by Lagrange's theorem.
//!
//! With a grading `η` (`Ẽ = −η G(Ẽ)`), the `η^n` term is
//! `Ẽ_n = (−1)^n Σ (n−1)!/(k_0!…k_{n−1}!) Π_j G_j^{k_j}` over exponent vectors
//! with `Σ_j j k_j = n−1` and `Σ_j k_j = n`.

use alloc::vec;
use alloc::vec::Vec;

use super::gk::GkTable;
use num_bigint::BigInt;

use crate::algebra::{BiSeries, Rational, Scalar};
use crate::error::Error;

/// Largest grading whose coefficients fit comfortably in `i128`.
pub const MAX_ETA_ORDER: usize = 30;

/// One monomial `coefficient · Π G_j^{k_j}` of `Ẽ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangeTerm {
    pub n: usize,
    /// `k_0 … k_{n−1}`.
    pub exponents: Vec<usize>,
    pub coefficient: i128,
}

/// All monomials of `Ẽ_n`, in lexicographic order of `(k_{n−1}, …, k_0)` descending
/// from the pure `G_0` end.
pub fn lagrange_terms(n: usize) -> Result<Vec<LagrangeTerm>, Error> {
    if n == 0 || n > MAX_ETA_ORDER {
        return Err(Error::usage(alloc::format!(
            "eta order must lie in 1..={MAX_ETA_ORDER}, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut ks = vec![0usize; n];
    // Fill k_{n−1} … k_1 under the weight constraint; k_0 is then forced.
    fn rec(j: usize, weight_left: usize, count: usize, ks: &mut [usize], n: usize, out: &mut Vec<LagrangeTerm>) {
        if j == 0 {
            if weight_left != 0 || count > n {
                return;
            }
            ks[0] = n - count;
            let sign: i128 = if n.is_multiple_of(2) { 1 } else { -1 };
            let mut c = factorial(n - 1);
            for &k in ks.iter() {
                c /= factorial(k);
            }
            out.push(LagrangeTerm { n, exponents: ks.to_vec(), coefficient: sign * c });
            return;
        }
        for k in 0..=weight_left / j {
            ks[j] = k;
            rec(j - 1, weight_left - k * j, count + k, ks, n, out);
        }
        ks[j] = 0;
    }
    rec(n - 1, n - 1, 0, &mut ks, n, &mut out);
    out.sort_by(|a, b| a.exponents.iter().rev().cmp(b.exponents.iter().rev()));
    Ok(out)
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// `Σ_{n=1}^{n_eta} Ẽ_n`.
pub fn lagrange_compose<F: Scalar>(gk: &GkTable<F>, n_eta: usize) -> Result<BiSeries<F>, Error> {
    let (lq, sg) = (gk.q2_order(), gk.gamma_order());
    let mut total = BiSeries::zero(lq, sg);
    if n_eta == 0 {
        return Ok(total);
    }
    let have = gk.entries().len();
    if have < n_eta {
        return Err(Error::usage(alloc::format!(
            "G_k table holds k < {have}, composition to order {n_eta} needs k < {n_eta}"
        )));
    }
    // powers[j][e] = G_j^e, grown on demand.
    let mut powers: Vec<Vec<BiSeries<F>>> =
        gk.entries().iter().map(|g| vec![BiSeries::one(lq, sg), g.clone()]).collect();
    for n in 1..=n_eta {
        for term in lagrange_terms(n)? {
            let mut prod = BiSeries::one(lq, sg);
            for (j, &k) in term.exponents.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = &mut powers[j];
                while pw.len() <= k {
                    let next = pw.last().unwrap().mul(&pw[1]);
                    pw.push(next);
                }
                prod = prod.mul(&pw[k]);
                if prod.is_zero() {
                    break;
                }
            }
            if !prod.is_zero() {
                let c = Rational::from_bigints(BigInt::from(term.coefficient), BigInt::from(1))?;
                total.add_assign(&prod.scale_rational(&c));
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(terms: &[LagrangeTerm], ks: &[usize]) -> i128 {
        terms.iter().find(|t| t.exponents == ks).map(|t| t.coefficient).unwrap()
    }

    #[test]
    fn low_orders() {
        let t1 = lagrange_terms(1).unwrap();
        assert_eq!(t1, vec![LagrangeTerm { n: 1, exponents: vec![1], coefficient: -1 }]);
        let t2 = lagrange_terms(2).unwrap();
        assert_eq!(t2.len(), 1);
        assert_eq!(find(&t2, &[1, 1]), 1);
        let t3 = lagrange_terms(3).unwrap();
        assert_eq!(t3.len(), 2);
        assert_eq!(find(&t3, &[2, 0, 1]), -1);
        assert_eq!(find(&t3, &[1, 2, 0]), -1);
    }

    #[test]
    fn order_four_and_five_coefficients() {
        let t4 = lagrange_terms(4).unwrap();
        assert_eq!(find(&t4, &[2, 1, 1, 0]), 3);
        assert_eq!(find(&t4, &[1, 3, 0, 0]), 1);
        assert_eq!(find(&t4, &[3, 0, 0, 1]), 1);
        let t5 = lagrange_terms(5).unwrap();
        assert_eq!(find(&t5, &[3, 1, 0, 1, 0]), -4);
        assert_eq!(find(&t5, &[4, 0, 0, 0, 1]), -1);
    }

    #[test]
    fn constraints_hold() {
        for n in 1..=10 {
            for t in lagrange_terms(n).unwrap() {
                assert_eq!(t.exponents.iter().sum::<usize>(), n);
                let w: usize = t.exponents.iter().enumerate().map(|(j, k)| j * k).sum();
                assert_eq!(w, n - 1);
            }
        }
        assert!(lagrange_terms(0).is_err());
    }
}
