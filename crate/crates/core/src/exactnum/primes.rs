//! Primality, prime search over certified ranges, and factorization.

use super::interval::CertifiedReal;
use super::logexp::PrecisionLadder;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All primes below `limit` by Eratosthenes.
pub fn small_primes_to(limit: u32) -> Vec<u32> {
    if limit <= 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 2..n {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// One strong-probable-prime round for witness `a` against odd `n = d*2^s + 1`.
fn sprp_round(n: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let n_minus_1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Deterministic Miller-Rabin below 2^64 with the first twelve prime
/// witnesses (proven correct there); above, 64 pseudo-random rounds seeded
/// from `n`, error probability below 4^-64.
pub fn is_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &p in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigUint::from(p);
        if *n == bp {
            return true;
        }
        if (n % bp).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    if n.bits() <= 64 {
        [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
            .iter()
            .all(|&a| sprp_round(n, &d, s, &BigUint::from(a)))
    } else {
        let mut seed = [0u8; 32];
        for (i, b) in n.to_bytes_le().into_iter().take(32).enumerate() {
            seed[i] = b;
        }
        let mut rng = ChaCha8Rng::from_seed(seed);
        let lo = BigUint::from(2u32);
        let hi = n - 2u32;
        (0..64).all(|_| {
            let a = rng.gen_biguint_range(&lo, &hi);
            sprp_round(n, &d, s, &a)
        })
    }
}

/// Smallest prime in the real range `[lower, upper]` that also exceeds
/// `exceeding`. The endpoints arrive as intervals plus a refinement
/// callback; both are refined until the integer range is certain.
pub fn next_prime_in<F>(
    lower: &CertifiedReal,
    upper: &CertifiedReal,
    exceeding: &BigUint,
    ladder: &PrecisionLadder,
    mut refine: F,
) -> Result<BigUint>
where
    F: FnMut(u32) -> (CertifiedReal, CertifiedReal),
{
    let mut lo_iv = lower.clone();
    let mut hi_iv = upper.clone();
    let mut rungs = ladder.rungs();
    let (start, end) = loop {
        let start = lo_iv.lo().ceil_int();
        let start_hi = lo_iv.hi().ceil_int();
        let end = hi_iv.hi().floor_int();
        let end_lo = hi_iv.lo().floor_int();
        if start == start_hi && end == end_lo {
            break (start, end);
        }
        match rungs.next() {
            Some(prec) => {
                let (l, u) = refine(prec);
                lo_iv = l;
                hi_iv = u;
            }
            None => return Err(Error::UndecidableBoundary { cap: ladder.cap }),
        }
    };
    let floor_excl = BigInt::from(exceeding.clone());
    let mut n = if start > floor_excl { start } else { &floor_excl + 1 };
    if n < BigInt::from(2) {
        n = BigInt::from(2);
    }
    while n <= end {
        let candidate = n.magnitude().clone();
        if is_prime(&candidate) {
            return Ok(candidate);
        }
        n += 1;
    }
    Err(Error::NoPrimeInRange {
        lo: lo_iv.lo().to_decimal(6, super::dyadic::Round::Down),
        hi: hi_iv.hi().to_decimal(6, super::dyadic::Round::Up),
    })
}

/// Prime factorization as `(prime, exponent)` pairs, ascending. Trial
/// division to 10^5 then deterministic Brent-Pollard rho.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut factors: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();
    if rest <= BigUint::one() {
        return Vec::new();
    }
    for p in small_primes_to(100_000) {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            factors.push(bp.clone());
            rest /= &bp;
        }
    }
    if rest > BigUint::one() {
        split_factor(&rest, &mut factors);
    }
    factors.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for f in factors {
        match out.last_mut() {
            Some((p, e)) if *p == f => *e += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}

fn split_factor(n: &BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(n) {
        out.push(n.clone());
        return;
    }
    let d = brent_rho(n);
    split_factor(&d, out);
    split_factor(&(n / &d), out);
}

/// Brent's cycle variant of Pollard rho; deterministic over increments.
fn brent_rho(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    for c in 1u32..64 {
        let cc = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cc) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut count = 0u64;
        while d.is_one() && count < 1 << 22 {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
            count += 1;
        }
        if !d.is_one() && d != *n {
            return d;
        }
    }
    panic!("rho failed to split composite {n}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn sieve_agrees_with_miller_rabin() {
        let primes = small_primes_to(2000);
        let mut idx = 0;
        for n in 2u32..2000 {
            let mr = is_prime(&BigUint::from(n));
            let sieved = idx < primes.len() && primes[idx] == n;
            assert_eq!(mr, sieved, "disagreement at {n}");
            if sieved {
                idx += 1;
            }
        }
    }

    #[test]
    fn known_large_primes_and_composites() {
        // 2^61 - 1 is a Mersenne prime; 2^67 - 1 famously is not.
        let m61 = (BigUint::one() << 61u32) - 1u32;
        let m67 = (BigUint::one() << 67u32) - 1u32;
        assert!(is_prime(&m61));
        assert!(!is_prime(&m67));
        // Carmichael number 561 must be rejected.
        assert!(!is_prime(&BigUint::from(561u32)));
        // A 128-bit prime: 2^89 - 1.
        let m89 = (BigUint::one() << 89u32) - 1u32;
        assert!(is_prime(&m89));
    }

    #[test]
    fn next_prime_respects_certified_bounds() {
        let mk = |_p: u32| {
            (
                CertifiedReal::from_ratio(&BigInt::from(35), &BigInt::from(10), 64),
                CertifiedReal::from_ratio(&BigInt::from(70), &BigInt::from(10), 64),
            )
        };
        let (lo, hi) = mk(64);
        let ladder = PrecisionLadder::default();
        // Range [3.5, 7.0], exceeding 3: ceil(3.5) = 4 -> first prime is 5.
        let p = next_prime_in(&lo, &hi, &BigUint::from(3u32), &ladder, mk).unwrap();
        assert_eq!(p, BigUint::from(5u32));
        // Exceeding 5 picks 7 (inclusive upper endpoint).
        let p = next_prime_in(&lo, &hi, &BigUint::from(5u32), &ladder, mk).unwrap();
        assert_eq!(p, BigUint::from(7u32));
        // Exceeding 7 leaves nothing.
        match next_prime_in(&lo, &hi, &BigUint::from(7u32), &ladder, mk) {
            Err(Error::NoPrimeInRange { .. }) => {}
            other => panic!("expected empty range, got {other:?}"),
        }
    }

    #[test]
    fn next_prime_inclusive_at_integer_endpoints() {
        let mk = |_p: u32| {
            (
                CertifiedReal::from_int(5),
                CertifiedReal::from_int(5),
            )
        };
        let (lo, hi) = mk(64);
        let p = next_prime_in(&lo, &hi, &BigUint::zero(), &PrecisionLadder::default(), mk).unwrap();
        assert_eq!(p, BigUint::from(5u32));
    }

    #[test]
    fn factorization_recomposes() {
        let n = BigUint::from(5u32).pow(9) * BigUint::from(7u32).pow(16);
        let f = factorize(&n);
        assert_eq!(
            f,
            vec![(BigUint::from(5u32), 9), (BigUint::from(7u32), 16)]
        );
        // A product of two 32-bit primes exercises rho.
        let a = BigUint::from(4_294_967_291u64);
        let b = BigUint::from(4_294_967_279u64);
        let f = factorize(&(&a * &b));
        assert_eq!(f, vec![(b.clone(), 1), (a.clone(), 1)]);
        assert!(factorize(&BigUint::one()).is_empty());
    }
}
