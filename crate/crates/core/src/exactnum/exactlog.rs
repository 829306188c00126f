//! Exact symbolic values of the form `log(arg)/div` with `arg >= 1`.
//!
//! Heights of radicals live in this set, so keeping them symbolic makes
//! equalities and scalings exact; numeric enclosures are produced on demand.

use super::interval::CertifiedReal;
use super::logexp::{self, PrecisionLadder};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `log(arg) / div`, canonicalized so equal values compare structurally:
/// the argument is never a perfect power and the pair is reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactLog {
    arg: BigUint,
    div: BigUint,
}

impl ExactLog {
    pub fn new(arg: BigUint, div: BigUint) -> ExactLog {
        assert!(!arg.is_zero(), "log argument must be >= 1");
        assert!(!div.is_zero(), "log divisor must be >= 1");
        if arg.is_one() {
            return ExactLog { arg, div: BigUint::one() };
        }
        // Write arg = base^k with k maximal, then reduce k/div.
        let (base, k) = extract_perfect_power(&arg);
        let g = k.gcd(&div);
        let k2 = (&k / &g).to_u32().expect("reduced power fits u32");
        ExactLog { arg: base.pow(k2), div: &div / &g }
    }

    pub fn zero() -> ExactLog {
        ExactLog { arg: BigUint::one(), div: BigUint::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.arg.is_one()
    }

    pub fn arg(&self) -> &BigUint {
        &self.arg
    }

    pub fn div(&self) -> &BigUint {
        &self.div
    }

    /// `self * (num/den)` for a nonnegative rational scale, exact.
    pub fn mul_rational(&self, num: &BigUint, den: &BigUint) -> ExactLog {
        assert!(!den.is_zero());
        if num.is_zero() || self.is_zero() {
            return ExactLog::zero();
        }
        let n = num.to_u32().expect("log scaling exponent fits u32");
        ExactLog::new(self.arg.pow(n), &self.div * den)
    }

    /// `self + other`, exact: `log(a)/d + log(b)/e = log(a^e b^d)/(d e)`.
    pub fn add(&self, other: &ExactLog) -> ExactLog {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = other.div.to_u32().expect("log divisor fits u32");
        let d = self.div.to_u32().expect("log divisor fits u32");
        ExactLog::new(self.arg.pow(e) * other.arg.pow(d), &self.div * &other.div)
    }

    pub fn to_certified(&self, prec: u32) -> CertifiedReal {
        logexp::log_big_ratio(&self.arg, &BigUint::one(), prec + 4)
            .div_ratio(&BigInt::from(self.div.clone()), &BigInt::one(), prec + 4)
            .compress(prec + 2)
    }

    /// Total comparison. Intervals decide strict orderings; ties fall back
    /// to the exact cross-power test `a^e <=> b^d`, so equal values are
    /// recognized rather than escalating forever.
    pub fn compare(&self, other: &ExactLog, ladder: &PrecisionLadder) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        for prec in ladder.rungs() {
            let a = self.to_certified(prec);
            let b = other.to_certified(prec);
            if a.certainly_lt(&b) {
                return Ordering::Less;
            }
            if b.certainly_lt(&a) {
                return Ordering::Greater;
            }
        }
        // Values within 2^-cap of each other: decide exactly.
        // log(a)/d < log(b)/e  <=>  a^e < b^d.
        let e = other.div.to_u32().expect("log divisor fits u32");
        let d = self.div.to_u32().expect("log divisor fits u32");
        self.arg.pow(e).cmp(&other.arg.pow(d))
    }

    pub fn compare_to_rational(&self, r: &BigRational, ladder: &PrecisionLadder) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(BigRational::zero().cmp(r));
        }
        if !r.is_positive() {
            return Ok(Ordering::Greater);
        }
        for prec in ladder.rungs() {
            let a = self.to_certified(prec);
            let b = CertifiedReal::from_rational(r, prec);
            if a.certainly_lt(&b) {
                return Ok(Ordering::Less);
            }
            if b.certainly_lt(&a) {
                return Ok(Ordering::Greater);
            }
        }
        // log(a)/d vs num/den is transcendental vs rational; equality is
        // impossible for arg > 1, but separation may genuinely exceed the cap.
        Err(Error::UndecidableAtCap { cap: ladder.cap })
    }
}

impl fmt::Display for ExactLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else if self.div.is_one() {
            write!(f, "log({})", self.arg)
        } else {
            write!(f, "log({})/{}", self.arg, self.div)
        }
    }
}

/// Maximal `(base, k)` with `base^k == n` and `k` as large as possible.
pub fn extract_perfect_power(n: &BigUint) -> (BigUint, BigUint) {
    let mut base = n.clone();
    let mut power = BigUint::one();
    if base <= BigUint::one() {
        return (base, power);
    }
    'outer: loop {
        let max_k = base.bits() as u32;
        for p in crate::exactnum::primes::small_primes_to(max_k + 1) {
            let r = base.nth_root(p);
            if r.pow(p) == base && !r.is_one() {
                base = r;
                power *= BigUint::from(p);
                continue 'outer;
            }
        }
        return (base, power);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: u64, d: u64) -> ExactLog {
        ExactLog::new(BigUint::from(a), BigUint::from(d))
    }

    #[test]
    fn canonicalization_extracts_powers() {
        // log(8)/6 = 3 log(2)/6 = log(2)/2
        assert_eq!(el(8, 6), el(2, 2));
        // log(64)/4 = 6 log(2)/4 = log(8)/2 canonicalized to base 2: 3/2 -> log(2^3)/2
        assert_eq!(el(64, 4), ExactLog::new(BigUint::from(8u32), BigUint::from(2u32)));
        assert_eq!(el(1, 17), ExactLog::zero());
    }

    #[test]
    fn arithmetic_is_exact() {
        // log(4)/3 * (3/2) = log(2)
        let x = el(4, 3).mul_rational(&BigUint::from(3u32), &BigUint::from(2u32));
        assert_eq!(x, el(2, 1));
        // log(2) + log(3) = log(6)
        assert_eq!(el(2, 1).add(&el(3, 1)), el(6, 1));
        // log(2)/2 + log(2)/2 = log(2)
        assert_eq!(el(2, 2).add(&el(2, 2)), el(2, 1));
    }

    #[test]
    fn compare_decides_all_cases() {
        let ladder = PrecisionLadder::new(32, 512);
        // log(7)/2 vs log(50)/2: 49 < 50.
        assert_eq!(el(49, 2).compare(&el(50, 2), &ladder), Ordering::Less);
        // Equal values through different surface forms.
        assert_eq!(el(16, 4).compare(&el(4, 2), &ladder), Ordering::Equal);
        // Extremely close but unequal: log(2^30+1)/30 vs log(2): decided by
        // cross powers if intervals cannot separate them early.
        let a = ExactLog::new(BigUint::from((1u64 << 30) + 1), BigUint::from(30u32));
        assert_eq!(a.compare(&el(2, 1), &ladder), Ordering::Greater);
    }

    #[test]
    fn enclosure_contains_value() {
        // log(7)/5 via independent interval route.
        let x = el(7, 5);
        let iv = x.to_certified(96);
        let direct = logexp::log_big_ratio(&BigUint::from(7u32), &BigUint::one(), 96)
            .div_ratio(&BigInt::from(5), &BigInt::one(), 96);
        assert!(iv.lo().cmp(direct.hi()) != Ordering::Greater);
        assert!(direct.lo().cmp(iv.hi()) != Ordering::Greater);
    }

    #[test]
    fn perfect_power_extraction() {
        let (b, k) = extract_perfect_power(&BigUint::from(729u32));
        assert_eq!((b, k), (BigUint::from(3u32), BigUint::from(6u32)));
        let (b, k) = extract_perfect_power(&BigUint::from(12005u32));
        assert_eq!((b, k), (BigUint::from(12005u32), BigUint::one()));
    }
}
