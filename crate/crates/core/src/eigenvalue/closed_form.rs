//! Closed forms for the `γ²` part of the two-particle eigenvalue.
//!
//! `E^(2) = Σ_{k≥1} (1/(P−k) − 1/(P+k)) · k q^{2k} / (2(1−q^{2k})²)`, whose
//! `q^{2ℓ}` coefficient is `(ℓ/2) Σ_{k|ℓ} (1/(P−k) − 1/(P+k))`.

use crate::algebra::{BiSeries, Rational, Scalar};
use crate::error::Error;

fn pole_pair<F: Scalar>(p: &F, k: i64) -> Result<F, Error> {
    let kk = F::from_int(k);
    let minus = p.sub(&kk).inv().ok_or_else(|| Error::Resonance { mu: alloc::vec![-k, k] })?;
    let plus = p.add(&kk).inv().ok_or_else(|| Error::Resonance { mu: alloc::vec![k, -k] })?;
    Ok(minus.sub(&plus))
}

/// Divisor-sum form. The result carries only `γ²` terms.
pub fn gamma2_closed_form<F: Scalar>(p: &F, lq: usize, sg: usize) -> Result<BiSeries<F>, Error> {
    let mut out = BiSeries::zero(lq, sg);
    for l in 1..=lq {
        let mut acc = F::zero();
        for k in (1..=l).filter(|k| l % k == 0) {
            acc = acc.add(&pole_pair(p, k as i64)?);
        }
        out.add_term(l, 2, acc.scale(&Rational::new(l as i64, 2)));
    }
    Ok(out)
}

/// Resummed form, expanding each `k x/(2(1−x)²)`, `x = q^{2k}`, as a series.
pub fn gamma2_resummed<F: Scalar>(p: &F, lq: usize, sg: usize) -> Result<BiSeries<F>, Error> {
    let mut out = BiSeries::zero(lq, sg);
    for k in 1..=lq {
        let x = BiSeries::monomial(k, 0, F::one(), lq, sg);
        let inv = crate::algebra::series_recip_shifted(&F::one(), &x, &[])?;
        let frac = x.mul(&inv).mul(&inv).scale_rational(&Rational::new(k as i64, 2));
        let c = pole_pair(p, k as i64)?;
        out.add_assign(&frac.scale(&c).shift_gamma(2));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PPoly, PRatFunc};

    #[test]
    fn first_order_is_one_over_p2_minus_1() {
        let e = gamma2_closed_form(&PRatFunc::p(), 1, 2).unwrap();
        let expect = PRatFunc::new(PPoly::one(), PPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(e.coeff(1, 2), expect);
    }

    #[test]
    fn forms_agree() {
        let p = PRatFunc::p();
        assert_eq!(gamma2_closed_form(&p, 7, 2).unwrap(), gamma2_resummed(&p, 7, 2).unwrap());
    }

    #[test]
    fn numeric_pole_is_resonance() {
        assert!(matches!(
            gamma2_closed_form(&Rational::from_int(2), 3, 2),
            Err(Error::Resonance { .. })
        ));
    }
}
