//! Certified real numbers as closed dyadic intervals `[lo, hi]`.
//!
//! Every operation returns an interval guaranteed to contain the exact
//! result. Ring operations are exact; quotients and mantissa compression
//! round outward.

use super::dyadic::{Dyadic, Round};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedReal {
    lo: Dyadic,
    hi: Dyadic,
}

impl CertifiedReal {
    pub fn new(lo: Dyadic, hi: Dyadic) -> CertifiedReal {
        assert!(lo.cmp(&hi) != Ordering::Greater, "inverted interval");
        CertifiedReal { lo, hi }
    }

    pub fn point(d: Dyadic) -> CertifiedReal {
        CertifiedReal { lo: d.clone(), hi: d }
    }

    pub fn zero() -> CertifiedReal {
        CertifiedReal::point(Dyadic::zero())
    }

    pub fn one() -> CertifiedReal {
        CertifiedReal::point(Dyadic::one())
    }

    pub fn from_int(n: i64) -> CertifiedReal {
        CertifiedReal::point(Dyadic::from_i64(n))
    }

    pub fn from_bigint(n: &BigInt) -> CertifiedReal {
        CertifiedReal::point(Dyadic::from_bigint(n.clone()))
    }

    pub fn from_biguint(n: &BigUint) -> CertifiedReal {
        CertifiedReal::point(Dyadic::from_biguint(n))
    }

    /// Tight outward enclosure of `num/den` with `prec`-bit endpoints.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> CertifiedReal {
        assert!(!den.is_zero());
        let n = Dyadic::from_bigint(num.clone());
        let d = Dyadic::from_bigint(den.clone());
        let (n, d) = if den.is_negative() { (n.neg(), d.neg()) } else { (n, d) };
        CertifiedReal::new(n.div(&d, prec, Round::Down), n.div(&d, prec, Round::Up))
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> CertifiedReal {
        CertifiedReal::from_ratio(r.numer(), r.denom(), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        self.lo.cmp(x) != Ordering::Greater && self.hi.cmp(x) != Ordering::Less
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        // lo <= r  <=>  lo*den <= num  (den > 0 after normalization)
        let num = Dyadic::from_bigint(r.numer().clone());
        let den = Dyadic::from_bigint(r.denom().clone());
        let lo_ok = self.lo.mul(&den).cmp(&num) != Ordering::Greater;
        let hi_ok = self.hi.mul(&den).cmp(&num) != Ordering::Less;
        lo_ok && hi_ok
    }

    pub fn contains(&self, other: &CertifiedReal) -> bool {
        self.lo.cmp(&other.lo) != Ordering::Greater && self.hi.cmp(&other.hi) != Ordering::Less
    }

    pub fn neg(&self) -> CertifiedReal {
        CertifiedReal { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn add(&self, other: &CertifiedReal) -> CertifiedReal {
        CertifiedReal { lo: self.lo.add(&other.lo), hi: self.hi.add(&other.hi) }
    }

    pub fn sub(&self, other: &CertifiedReal) -> CertifiedReal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CertifiedReal) -> CertifiedReal {
        let c = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for x in &c[1..] {
            lo = Dyadic::min(&lo, x);
            hi = Dyadic::max(&hi, x);
        }
        CertifiedReal { lo, hi }
    }

    pub fn mul_int(&self, k: &BigInt) -> CertifiedReal {
        let a = self.lo.mul_int(k);
        let b = self.hi.mul_int(k);
        if k.is_negative() {
            CertifiedReal { lo: b, hi: a }
        } else {
            CertifiedReal { lo: a, hi: b }
        }
    }

    pub fn mul_pow2(&self, k: i64) -> CertifiedReal {
        CertifiedReal { lo: self.lo.mul_pow2(k), hi: self.hi.mul_pow2(k) }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self, prec: u32) -> CertifiedReal {
        assert!(!self.contains_zero(), "reciprocal of interval containing zero");
        let one = Dyadic::one();
        CertifiedReal::new(
            one.div(&self.hi, prec, Round::Down),
            one.div(&self.lo, prec, Round::Up),
        )
    }

    pub fn div(&self, other: &CertifiedReal, prec: u32) -> CertifiedReal {
        self.mul(&other.recip(prec))
    }

    /// Divides by an exact positive rational `num/den`.
    pub fn div_ratio(&self, num: &BigInt, den: &BigInt, prec: u32) -> CertifiedReal {
        assert!(num.is_positive() && den.is_positive());
        let n = Dyadic::from_bigint(num.clone());
        let d = Dyadic::from_bigint(den.clone());
        CertifiedReal::new(
            self.lo.mul(&d).div(&n, prec, Round::Down),
            self.hi.mul(&d).div(&n, prec, Round::Up),
        )
    }

    /// Multiplies by an exact rational.
    pub fn mul_rational(&self, r: &BigRational, prec: u32) -> CertifiedReal {
        let scaled = self.mul_int(r.numer());
        scaled.div_ratio(r.denom(), &BigInt::from(1), prec)
    }

    /// Integer power by repeated interval multiplication (exact endpoints).
    pub fn pow_u32(&self, mut n: u32) -> CertifiedReal {
        let mut result = CertifiedReal::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Square root; interval must be nonnegative.
    pub fn sqrt(&self, prec: u32) -> CertifiedReal {
        CertifiedReal::new(self.lo.sqrt(prec, Round::Down), self.hi.sqrt(prec, Round::Up))
    }

    /// Outward-rounds both endpoints to `prec`-bit mantissas.
    pub fn compress(&self, prec: u32) -> CertifiedReal {
        CertifiedReal {
            lo: self.lo.round_to(prec, Round::Down),
            hi: self.hi.round_to(prec, Round::Up),
        }
    }

    pub fn hull(&self, other: &CertifiedReal) -> CertifiedReal {
        CertifiedReal {
            lo: Dyadic::min(&self.lo, &other.lo),
            hi: Dyadic::max(&self.hi, &other.hi),
        }
    }

    pub fn max_with(&self, other: &CertifiedReal) -> CertifiedReal {
        CertifiedReal {
            lo: Dyadic::max(&self.lo, &other.lo),
            hi: Dyadic::max(&self.hi, &other.hi),
        }
    }

    /// True when every point of `self` is strictly below every point of
    /// `other`.
    pub fn certainly_lt(&self, other: &CertifiedReal) -> bool {
        self.hi.cmp(&other.lo) == Ordering::Less
    }

    pub fn certainly_le(&self, other: &CertifiedReal) -> bool {
        self.hi.cmp(&other.lo) != Ordering::Greater
    }

    pub fn certainly_gt(&self, other: &CertifiedReal) -> bool {
        other.certainly_lt(self)
    }

    pub fn certainly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn certainly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Both endpoints rendered outward at `digits` decimal places.
    pub fn to_decimal_pair(&self, digits: u32) -> (String, String) {
        (self.lo.to_decimal(digits, Round::Down), self.hi.to_decimal(digits, Round::Up))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_pair(12);
        write!(f, "[{lo}, {hi}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, le: i64, hi: i64, he: i64) -> CertifiedReal {
        CertifiedReal::new(Dyadic::new(BigInt::from(lo), le), Dyadic::new(BigInt::from(hi), he))
    }

    #[test]
    fn mul_handles_sign_spanning_intervals() {
        let a = iv(-3, 0, 2, 0);
        let b = iv(-1, 0, 4, 0);
        let p = a.mul(&b);
        // extremes: -3*4 = -12, -3*-1 = 3, 2*4 = 8 -> [-12, 8]
        assert_eq!(p.lo(), &Dyadic::from_i64(-12));
        assert_eq!(p.hi(), &Dyadic::from_i64(8));
    }

    #[test]
    fn ratio_enclosure_contains_value() {
        let t = CertifiedReal::from_ratio(&BigInt::from(1), &BigInt::from(3), 64);
        assert!(t.contains_rational(&BigRational::new(BigInt::from(1), BigInt::from(3))));
        assert!(t.width().magnitude_exp() <= -62);
        let n = CertifiedReal::from_ratio(&BigInt::from(-1), &BigInt::from(3), 64);
        assert!(n.certainly_negative());
    }

    #[test]
    fn recip_brackets() {
        let t = CertifiedReal::from_int(7).recip(50);
        assert!(t.contains_rational(&BigRational::new(BigInt::from(1), BigInt::from(7))));
        let sum = t.mul_int(&BigInt::from(7));
        assert!(sum.contains_rational(&BigRational::from(BigInt::from(1))));
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let x = CertifiedReal::from_ratio(&BigInt::from(3), &BigInt::from(2), 64);
        let p = x.pow_u32(5);
        assert!(p.contains_rational(&BigRational::new(BigInt::from(243), BigInt::from(32))));
    }

    #[test]
    fn certified_comparisons_need_separation() {
        let a = iv(0, 0, 1, 0);
        let b = iv(1, 0, 2, 0);
        assert!(!a.certainly_lt(&b)); // touching endpoints
        assert!(a.certainly_le(&b));
        let c = iv(3, -1, 2, 0); // [1.5, 2]
        assert!(a.certainly_lt(&c));
    }
}
