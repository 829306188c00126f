//! Certified cosine and sine at rational fractions of a full turn.
//!
//! Conjugating a radical multiplies it by a root of unity, so the orbit
//! machinery needs enclosures of `cos(2 pi k / D)` and `sin(2 pi k / D)`.
//! pi comes from Machin's formula; the angle is reduced to the first
//! octant by exact rational arithmetic before the Taylor series runs, so
//! every branch decision is exact and the series argument stays below
//! pi/4 where the alternating-tail bound applies.

use crate::exactnum::dyadic::Dyadic;
use crate::exactnum::interval::CertifiedReal;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// Tail guard: series are summed until the next term drops below
/// `2^-(prec + 8)`, then one absolute-value bound is added.
const GUARD: u32 = 16;

/// `atan(1/n)` for integer `n >= 2`, from the alternating Gregory series.
fn atan_recip(n: u64, prec: u32) -> CertifiedReal {
    assert!(n >= 2);
    let w = prec + GUARD;
    let nsq = BigInt::from(n) * BigInt::from(n);
    let mut power = BigInt::from(n); // n^(2k+1)
    let mut k: u64 = 0;
    let mut sum = CertifiedReal::zero();
    loop {
        let denom = &power * BigInt::from(2 * k + 1);
        let term = CertifiedReal::from_ratio(&BigInt::one(), &denom, w);
        sum = if k % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        sum = sum.compress(w);
        power *= &nsq;
        k += 1;
        // Alternating series: the remainder is bounded by the next term.
        let next = Dyadic::one().div(&Dyadic::from_bigint(&power * BigInt::from(2 * k + 1)), w, crate::exactnum::dyadic::Round::Up);
        if next.magnitude_exp() < -i64::from(prec + 8) {
            let bound = next.abs();
            return sum.add(&CertifiedReal::new(bound.neg(), bound)).compress(prec);
        }
    }
}

/// Enclosure of pi from Machin's identity
/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub(crate) fn pi(prec: u32) -> CertifiedReal {
    let a = atan_recip(5, prec + GUARD);
    let b = atan_recip(239, prec + GUARD);
    a.mul_pow2(4).sub(&b.mul_pow2(2)).compress(prec)
}

/// `cos(theta)` and `sin(theta)` by Taylor series for an enclosed
/// `theta` with `0 <= theta <= pi/4`; both series alternate with
/// decreasing terms on that range, so the first omitted term bounds the
/// tail.
fn cos_sin_series(theta: &CertifiedReal, prec: u32) -> (CertifiedReal, CertifiedReal) {
    let w = prec + GUARD;
    let theta_sq = theta.mul(theta).compress(w);
    let mut cos = CertifiedReal::zero();
    let mut sin = CertifiedReal::zero();
    // cos: sum (-1)^k theta^(2k) / (2k)!; sin: same with odd powers.
    let mut cos_term = CertifiedReal::one();
    let mut sin_term = theta.clone();
    let mut k: u64 = 0;
    loop {
        cos = if k % 2 == 0 { cos.add(&cos_term) } else { cos.sub(&cos_term) };
        sin = if k % 2 == 0 { sin.add(&sin_term) } else { sin.sub(&sin_term) };
        cos = cos.compress(w);
        sin = sin.compress(w);
        let next_cos = cos_term
            .mul(&theta_sq)
            .div_ratio(&BigInt::from((2 * k + 1) * (2 * k + 2)), &BigInt::one(), w);
        let next_sin = sin_term
            .mul(&theta_sq)
            .div_ratio(&BigInt::from((2 * k + 2) * (2 * k + 3)), &BigInt::one(), w);
        k += 1;
        if next_cos.hi().magnitude_exp() < -i64::from(prec + 8)
            && next_sin.hi().magnitude_exp() < -i64::from(prec + 8)
        {
            let cb = next_cos.hi().abs();
            let sb = next_sin.hi().abs();
            let cos = cos.add(&CertifiedReal::new(cb.neg(), cb)).compress(prec);
            let sin = sin.add(&CertifiedReal::new(sb.neg(), sb)).compress(prec);
            return (cos, sin);
        }
        cos_term = next_cos;
        sin_term = next_sin;
    }
}

/// `(cos(2 pi r), sin(2 pi r))` for an exact rational turn count `r`.
pub(crate) fn cos_sin_turn(r: &BigRational, prec: u32) -> (CertifiedReal, CertifiedReal) {
    // Reduce to [0, 1) exactly.
    let r = r - r.floor();
    let four = BigRational::from_integer(BigInt::from(4));
    let four_r = &r * &four;
    let qfloor = four_r.floor();
    let quadrant = qfloor.to_integer().to_u32().expect("quadrant in 0..4");
    let t = (&four_r - &qfloor) / &four; // r - quadrant/4, in [0, 1/4)
    // Base angles stay in [0, pi/4]: use the cofunction for the upper
    // half of the quadrant.
    let eighth = BigRational::new(BigInt::one(), BigInt::from(8));
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let (s, swapped) = if t > eighth { (&quarter - &t, true) } else { (t.clone(), false) };
    let w = prec + GUARD;
    let theta = pi(w).mul_pow2(1).mul_rational(&s, w);
    let (c0, s0) = cos_sin_series(&theta, w);
    let (cos_t, sin_t) = if swapped { (s0, c0) } else { (c0, s0) };
    let out = match quadrant {
        0 => (cos_t, sin_t),
        1 => (sin_t.neg(), cos_t),
        2 => (cos_t.neg(), sin_t.neg()),
        _ => (sin_t, cos_t.neg()),
    };
    (out.0.compress(prec), out.1.compress(prec))
}
