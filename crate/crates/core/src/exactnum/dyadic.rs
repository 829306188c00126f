//! Arbitrary-precision dyadic rationals `mant * 2^exp`.
//!
//! Addition, subtraction and multiplication are exact. Division, roots and
//! mantissa truncation round in a caller-chosen direction, which is what the
//! interval layer needs for outward rounding.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction for inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// A dyadic rational in normalized form: mantissa odd, or zero with exp 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        Dyadic { mant, exp }.normalize()
    }

    fn normalize(mut self) -> Dyadic {
        if self.mant.is_zero() {
            self.exp = 0;
        } else if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    pub fn zero() -> Dyadic {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(n: BigInt) -> Dyadic {
        Dyadic::new(n, 0)
    }

    pub fn from_biguint(n: &BigUint) -> Dyadic {
        Dyadic::new(BigInt::from(n.clone()), 0)
    }

    pub fn from_i64(n: i64) -> Dyadic {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Smallest `e` with `|self| < 2^e`; `i64::MIN` for zero.
    pub fn magnitude_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.mant.bits() as i64 + self.exp
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            Dyadic::zero()
        } else {
            Dyadic { mant: self.mant.clone(), exp: self.exp + k }
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << u64::try_from(self.exp - e).expect("exponent gap");
        let b = &other.mant << u64::try_from(other.exp - e).expect("exponent gap");
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    pub fn mul_int(&self, k: &BigInt) -> Dyadic {
        Dyadic::new(&self.mant * k, self.exp)
    }

    /// Truncates the mantissa to at most `prec` bits, rounding as directed.
    pub fn round_to(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = bits - prec as u64;
        let q = shift_right_dir(&self.mant, drop, dir);
        Dyadic::new(q, self.exp + drop as i64)
    }

    /// `self / other` with a `prec`-bit mantissa, rounding as directed.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let scale = prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let s = scale.max(0) as u64;
        let num = &self.mant << s;
        let q = div_dir(&num, &other.mant, dir);
        Dyadic::new(q, self.exp - other.exp - s as i64)
    }

    /// Square root of a nonnegative dyadic, `prec`-bit mantissa.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut m = self.mant.magnitude().clone();
        let mut e = self.exp;
        if e % 2 != 0 {
            m <<= 1u32;
            e -= 1;
        }
        let s = ((prec as u64 + 2).saturating_sub(m.bits() / 2)) as u64;
        m <<= 2 * s;
        let r = m.sqrt();
        let half_exp = e / 2 - s as i64;
        match dir {
            Round::Down => Dyadic::new(BigInt::from(r), half_exp),
            Round::Up => {
                let exact = (&r * &r) == m;
                let r = if exact { r } else { r + 1u32 };
                Dyadic::new(BigInt::from(r), half_exp)
            }
        }
    }

    pub fn cmp(&self, other: &Dyadic) -> Ordering {
        let ls = self.mant.sign();
        let rs = other.mant.sign();
        if ls != rs {
            return match (ls, rs) {
                (Sign::Minus, _) => Ordering::Less,
                (Sign::Plus, _) => Ordering::Greater,
                (Sign::NoSign, Sign::Plus) => Ordering::Less,
                (Sign::NoSign, Sign::Minus) => Ordering::Greater,
                _ => Ordering::Equal,
            };
        }
        if ls == Sign::NoSign {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitude exponents before shifting so
        // wildly different scales never allocate huge shifts.
        let me = self.magnitude_exp();
        let oe = other.magnitude_exp();
        if me != oe {
            let mag = if me < oe { Ordering::Less } else { Ordering::Greater };
            return if ls == Sign::Plus { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << u64::try_from(self.exp - e).expect("exponent gap");
        let b = &other.mant << u64::try_from(other.exp - e).expect("exponent gap");
        a.cmp(&b)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp(b) == Ordering::Greater { b.clone() } else { a.clone() }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a.cmp(b) == Ordering::Less { b.clone() } else { a.clone() }
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << u64::try_from(self.exp).unwrap()
        } else {
            shift_right_dir(&self.mant, (-self.exp) as u64, Round::Down)
        }
    }

    /// Smallest integer `>= self`.
    pub fn ceil_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << u64::try_from(self.exp).unwrap()
        } else {
            shift_right_dir(&self.mant, (-self.exp) as u64, Round::Up)
        }
    }

    /// Nearest integer (ties toward even are not needed; ties round up).
    pub fn round_int(&self) -> BigInt {
        let shifted = self.mul_pow2(1).add(&Dyadic::one());
        shifted.floor_int().div_floor(&BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 64 {
            let drop = bits - 64;
            (shift_right_dir(&self.mant, drop, Round::Down), self.exp + drop as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf: f64 = i128::try_from(&m).map(|v| v as f64).unwrap_or(f64::NAN);
        mf * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    /// Decimal string with `digits` fractional digits, rounded as directed.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        let ten_pow = BigInt::from(10u32).pow(digits);
        let scaled = self.mul_int(&ten_pow);
        let int = match dir {
            Round::Down => scaled.floor_int(),
            Round::Up => scaled.ceil_int(),
        };
        let neg = int.is_negative();
        let mag = int.magnitude().to_string();
        let mag = if mag.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
        } else {
            mag
        };
        let split = mag.len() - digits as usize;
        let (ip, fp) = mag.split_at(split);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(12, Round::Down))
    }
}

/// `x / 2^k` rounded as directed.
fn shift_right_dir(x: &BigInt, k: u64, dir: Round) -> BigInt {
    match dir {
        Round::Down => x >> k,
        Round::Up => -((-x) >> k),
    }
}

/// Integer division rounded as directed (denominator sign handled).
fn div_dir(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => num.div_floor(den),
        Round::Up => num.div_ceil(den),
    }
}
