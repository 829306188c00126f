//! Certified natural log and exponential on dyadic intervals.
//!
//! `log` reduces the argument to `[1, 2)` and evaluates `2*atanh(z)` with
//! `z = (A-B)/(A+B) <= 1/3`; `exp` reduces modulo `log 2` and sums the Taylor
//! series. Both carry explicit tail bounds so the returned interval encloses
//! the exact value at every precision.

use super::dyadic::{Dyadic, Round};
use super::interval::CertifiedReal;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Guard bits added to the requested precision for internal work.
const GUARD: u32 = 32;

/// Precision escalation schedule for undecided comparisons: doubling rungs
/// from `start` up to and including `cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionLadder {
    pub start: u32,
    pub cap: u32,
}

impl PrecisionLadder {
    pub fn new(start: u32, cap: u32) -> PrecisionLadder {
        assert!(start >= 2 && start <= cap);
        PrecisionLadder { start, cap }
    }

    pub fn rungs(&self) -> impl Iterator<Item = u32> {
        let (start, cap) = (self.start, self.cap);
        std::iter::successors(
            Some(start),
            move |&p| {
                if p >= cap {
                    None
                } else {
                    Some(p.saturating_mul(2).min(cap))
                }
            },
        )
    }
}

impl Default for PrecisionLadder {
    fn default() -> PrecisionLadder {
        PrecisionLadder::new(64, 4096)
    }
}

/// Decides `a < b` by refining both sides along the ladder. Returns
/// `UndecidableAtCap` when the intervals still overlap at the cap, which is
/// what happens for equal values.
pub fn certified_less<F>(
    a0: &CertifiedReal,
    b0: &CertifiedReal,
    ladder: &PrecisionLadder,
    mut refine: F,
) -> Result<bool>
where
    F: FnMut(u32) -> (CertifiedReal, CertifiedReal),
{
    if a0.certainly_lt(b0) {
        return Ok(true);
    }
    if b0.certainly_le(a0) {
        return Ok(false);
    }
    for prec in ladder.rungs() {
        let (a, b) = refine(prec);
        if a.certainly_lt(&b) {
            return Ok(true);
        }
        if b.certainly_le(&a) {
            return Ok(false);
        }
    }
    Err(Error::UndecidableAtCap { cap: ladder.cap })
}

/// `2*atanh(num/den)` for `0 <= num/den <= 1/3`, enclosure width `~2^-w`.
fn two_atanh(num: &BigInt, den: &BigInt, w: u32) -> CertifiedReal {
    if num.is_zero() {
        return CertifiedReal::zero();
    }
    let z = CertifiedReal::from_ratio(num, den, w + 8);
    let z2 = z.mul(&z).compress(w + 8);
    let mut zpow = z.clone();
    let mut sum = CertifiedReal::zero();
    let mut k: u32 = 0;
    let tiny = Dyadic::new(BigInt::one(), -(w as i64) - 4);
    loop {
        let term = zpow.div_ratio(&BigInt::from(2 * k as i64 + 1), &BigInt::one(), w + 8);
        sum = sum.add(&term).compress(w + 8);
        zpow = zpow.mul(&z2).compress(w + 8);
        // Tail after term k: sum_{j>k} z^(2j+1)/(2j+1) <= z^(2k+3)/(2k+3) * 9/8.
        let tail = zpow
            .hi()
            .div(&Dyadic::from_i64(2 * k as i64 + 3), 32, Round::Up)
            .mul(&Dyadic::new(BigInt::from(9), -3));
        if tail.cmp(&tiny) == std::cmp::Ordering::Less {
            let enclosed = CertifiedReal::new(sum.lo().clone(), sum.hi().add(&tail));
            return enclosed.mul_pow2(1).compress(w);
        }
        k += 1;
    }
}

fn log2_cache() -> &'static Mutex<HashMap<u32, CertifiedReal>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, CertifiedReal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Certified enclosure of `log 2`.
pub fn log2(prec: u32) -> CertifiedReal {
    if let Some(v) = log2_cache().lock().unwrap().get(&prec) {
        return v.clone();
    }
    let v = two_atanh(&BigInt::one(), &BigInt::from(3), prec);
    log2_cache().lock().unwrap().insert(prec, v.clone());
    v
}

/// Certified `log(num/den)` for positive integers, relative width
/// `<= 2^(1-prec)` (exact zero for `num == den`).
pub fn log_big_ratio(num: &BigUint, den: &BigUint, prec: u32) -> CertifiedReal {
    assert!(!num.is_zero() && !den.is_zero(), "log of nonpositive rational");
    let w = prec + GUARD;
    // Find e with den*2^e <= num < 2*den*2^e.
    let mut e = num.bits() as i64 - den.bits() as i64;
    let (mut a, mut b) = scaled_pair(num, den, e);
    while a < b {
        e -= 1;
        let p = scaled_pair(num, den, e);
        a = p.0;
        b = p.1;
    }
    while a >= (&b << 1u32) {
        e += 1;
        let p = scaled_pair(num, den, e);
        a = p.0;
        b = p.1;
    }
    let scale = if e == 0 {
        CertifiedReal::zero()
    } else {
        log2(w).mul_int(&BigInt::from(e))
    };
    if a == b {
        return scale.compress(prec + 2);
    }
    let frac = two_atanh(&BigInt::from(&a - &b), &BigInt::from(&a + &b), w);
    scale.add(&frac).compress(prec + 2)
}

fn scaled_pair(num: &BigUint, den: &BigUint, e: i64) -> (BigUint, BigUint) {
    if e >= 0 {
        (num.clone(), den << e as u64)
    } else {
        (num << (-e) as u64, den.clone())
    }
}

/// Certified `log` of a positive rational.
pub fn log_interval(x: &BigRational, prec: u32) -> CertifiedReal {
    assert!(x.is_positive(), "log of nonpositive rational");
    log_big_ratio(
        x.numer().magnitude(),
        x.denom().magnitude(),
        prec,
    )
}

/// Certified `log` of a positive dyadic.
fn log_dyadic(d: &Dyadic, prec: u32) -> CertifiedReal {
    assert!(d.is_positive(), "log of nonpositive dyadic");
    let w = prec + GUARD;
    let mant = log_big_ratio(d.mant().magnitude(), &BigUint::one(), w);
    let shift = if d.exp() == 0 {
        CertifiedReal::zero()
    } else {
        log2(w).mul_int(&BigInt::from(d.exp()))
    };
    mant.add(&shift).compress(prec + 2)
}

/// Certified `log` over a strictly positive interval (monotone extension).
pub fn log_certified(x: &CertifiedReal, prec: u32) -> CertifiedReal {
    assert!(x.certainly_positive(), "log over interval touching zero");
    let lo = log_dyadic(x.lo(), prec);
    let hi = log_dyadic(x.hi(), prec);
    CertifiedReal::new(lo.lo().clone(), hi.hi().clone())
}

/// Internal guard: refuse exponent reductions beyond `2^40` shifts, which
/// would mean a result with more than a terabit of magnitude. Callers that
/// accept user-sized thresholds bound the argument before calling.
const MAX_EXP_SHIFT: i64 = 1 << 40;

/// Certified `exp` of a dyadic point.
fn exp_dyadic(x: &Dyadic, prec: u32) -> CertifiedReal {
    let w = prec + GUARD;
    if x.is_zero() {
        return CertifiedReal::one();
    }
    let l2 = log2(w + 8);
    // k = round(x / log 2); cheap approximate division is fine, the residue
    // interval below is exact regardless.
    let k_big = x.div(l2.lo(), 64, Round::Down).round_int();
    let k = k_big.to_i64().filter(|v| v.abs() < MAX_EXP_SHIFT).unwrap_or_else(|| {
        panic!("exp argument magnitude out of supported range")
    });
    let r = CertifiedReal::point(x.clone()).sub(&l2.mul_int(&BigInt::from(k)));
    // |r| <= log2/2 + slack < 0.36.
    let mut term = CertifiedReal::one();
    let mut sum = CertifiedReal::one();
    let mut j: u32 = 0;
    let tiny = Dyadic::new(BigInt::one(), -(w as i64) - 4);
    let r_abs = Dyadic::max(&r.lo().abs(), &r.hi().abs());
    loop {
        j += 1;
        term = term.mul(&r).div_ratio(&BigInt::from(j), &BigInt::one(), w + 8).compress(w + 8);
        sum = sum.add(&term).compress(w + 8);
        // Tail after term j: |r|^(j+1)/(j+1)! * 1/(1 - |r|/(j+2)) <= next * 1.25.
        let next = Dyadic::max(&term.lo().abs(), &term.hi().abs())
            .mul(&r_abs)
            .div(&Dyadic::from_i64(j as i64 + 1), 32, Round::Up)
            .mul(&Dyadic::new(BigInt::from(5), -2));
        if next.cmp(&tiny) == std::cmp::Ordering::Less {
            let lo = sum.lo().sub(&next);
            let hi = sum.hi().add(&next);
            return CertifiedReal::new(lo, hi).mul_pow2(k).compress(prec + 2);
        }
    }
}

/// Certified `exp` over an interval (monotone extension), relative width
/// `<= 2^(1-prec)`.
pub fn exp_interval(x: &CertifiedReal, prec: u32) -> CertifiedReal {
    let lo = exp_dyadic(x.lo(), prec);
    let hi = exp_dyadic(x.hi(), prec);
    CertifiedReal::new(lo.lo().clone(), hi.hi().clone())
}

/// `base^expo` as an exact positive rational, when it is one.
pub fn rational_pow_exact(
    base_num: &BigUint,
    base_den: &BigUint,
    expo: &BigRational,
) -> Option<(BigUint, BigUint)> {
    assert!(!base_num.is_zero() && !base_den.is_zero());
    if expo.is_zero() {
        return Some((BigUint::one(), BigUint::one()));
    }
    let v = expo.denom().magnitude().to_u32()?;
    let u = expo.numer().magnitude().to_u32()?;
    if u as u64 * base_num.bits().max(base_den.bits()) > 1 << 24 {
        return None;
    }
    let rn = base_num.nth_root(v);
    let rd = base_den.nth_root(v);
    if rn.pow(v) != *base_num || rd.pow(v) != *base_den {
        return None;
    }
    let (pn, pd) = (rn.pow(u), rd.pow(u));
    if expo.is_negative() {
        Some((pd, pn))
    } else {
        Some((pn, pd))
    }
}

/// Certified `(num/den)^expo` for a positive rational base and rational
/// exponent: exact-rational fast path, else `exp(expo * log(base))`.
pub fn pow_rational(
    base_num: &BigUint,
    base_den: &BigUint,
    expo: &BigRational,
    prec: u32,
) -> CertifiedReal {
    assert!(!base_num.is_zero() && !base_den.is_zero(), "power of nonpositive base");
    if let Some((n, d)) = rational_pow_exact(base_num, base_den, expo) {
        return CertifiedReal::from_ratio(&BigInt::from(n), &BigInt::from(d), prec + 2);
    }
    let w = prec + GUARD;
    let lg = log_big_ratio(base_num, base_den, w);
    let scaled = lg.mul_int(expo.numer()).div_ratio(expo.denom(), &BigInt::one(), w);
    exp_interval(&scaled, prec)
}
