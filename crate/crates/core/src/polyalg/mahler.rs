//! Certified logarithmic Mahler measure.
//!
//! `log M(f) = log |lc(f)| + sum over roots of log max(1, |root|)`, computed
//! from certified root disks. A disk whose modulus enclosure straddles 1
//! contributes `[0, log hi]`; the enclosure still tightens as the disks
//! shrink, because `log hi -> 0` when the root modulus is exactly 1.

use super::poly::IntPolynomial;
use super::resultant::resultant;
use super::roots::certified_roots;
use crate::error::{Error, Result};
use crate::exactnum::{log_big_ratio, log_certified, CertifiedReal, Dyadic};
use num_bigint::BigUint;
use num_traits::{One, Zero};

fn log_big(n: BigUint, prec: u32) -> CertifiedReal {
    log_big_ratio(&n, &BigUint::one(), prec)
}

/// Certified enclosure of `log M(f)` for squarefree `f` of degree >= 1.
///
/// The enclosure width is at most `2^(4-prec)`; the working precision for
/// root isolation escalates internally until that holds.
pub fn log_mahler(f: &IntPolynomial, prec: u32) -> Result<CertifiedReal> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(Error::InvalidArgument("log Mahler measure needs degree >= 1".into()));
    }
    // gcd(f, f') is constant iff res(f, f') != 0.
    if resultant(f, &f.derivative()).is_zero() {
        return Err(Error::NotSquarefree);
    }

    // A zero root contributes log max(1, 0) = 0; strip it exactly.
    let mut g = f.clone();
    if g.coeff(0).is_zero() {
        g = IntPolynomial::new(g.coeffs()[1..].to_vec());
    }

    let lc_log = |prec: u32| log_big(g.lc().magnitude().clone(), prec);
    if g.degree() == 0 {
        return Ok(lc_log(prec));
    }
    if g.degree() == 1 {
        // M(a1 x + a0) = max(|a0|, |a1|), exactly.
        let m = g.coeff(0).magnitude().clone().max(g.lc().magnitude().clone());
        return Ok(log_big(m, prec));
    }

    let target = Dyadic::one().mul_pow2(4 - prec as i64);
    let mut w = (prec + 32).max(96);
    let cap = 4 * prec.max(64) + 4096;
    loop {
        if let Some(disks) = certified_roots(&g, w) {
            let mut total = lc_log(w);
            let one = CertifiedReal::one();
            for d in &disks {
                let m = d.modulus(w);
                if m.certainly_le(&one) {
                    continue;
                }
                let contrib = if m.certainly_gt(&one) {
                    log_certified(&m, w)
                } else {
                    // Modulus enclosure straddles 1.
                    let hi_log = log_certified(&CertifiedReal::new(Dyadic::one(), m.hi().clone()), w);
                    CertifiedReal::new(Dyadic::zero(), hi_log.hi().clone())
                };
                total = total.add(&contrib);
            }
            if total.width().cmp(&target) != std::cmp::Ordering::Greater {
                return Ok(total.compress(prec + 8));
            }
        }
        w *= 2;
        if w > cap {
            return Err(Error::PrecisionExhausted {
                cap,
                what: format!("log Mahler measure of {f}"),
            });
        }
    }
}

/// `log M(f) / deg f`: the absolute logarithmic height of any root of an
/// irreducible `f`, from its minimal polynomial.
pub fn height_from_minpoly(f: &IntPolynomial, prec: u32) -> Result<CertifiedReal> {
    let lm = log_mahler(f, prec)?;
    let d = num_bigint::BigInt::from(f.degree());
    Ok(lm.div_ratio(&d, &num_bigint::BigInt::one(), prec + 8))
}
