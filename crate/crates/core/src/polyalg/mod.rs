//! Integer polynomial algebra: resultants, discriminants, irreducibility
//! helpers, and certified Mahler measures.

mod mahler;
mod poly;
mod resultant;
pub(crate) mod roots;

pub use mahler::{height_from_minpoly, log_mahler};
pub use poly::IntPolynomial;
pub use resultant::{discriminant, resultant, resultant_bivariate};
pub(crate) use resultant::primitive_gcd;

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// The candidate primes at which a monic `f` satisfies the Eisenstein
/// criterion: `p` divides every non-leading coefficient and `p^2` does not
/// divide the constant term.
pub fn eisenstein_primes(f: &IntPolynomial, candidates: &[BigUint]) -> Result<Vec<BigUint>> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree();
    let mut out = Vec::new();
    'outer: for p in candidates {
        let p_int = num_bigint::BigInt::from(p.clone());
        for i in 0..n {
            if !f.coeff(i).mod_floor(&p_int).is_zero() {
                continue 'outer;
            }
        }
        let p_sq = &p_int * &p_int;
        if f.coeff(0).mod_floor(&p_sq).is_zero() {
            continue;
        }
        out.push(p.clone());
    }
    Ok(out)
}

/// True when `n` is an exact `p`-th power, returning the root.
fn exact_root(n: &BigUint, p: u32) -> Option<BigUint> {
    if n.is_one() {
        return Some(BigUint::one());
    }
    let r = n.nth_root(p);
    if r.pow(p) == *n {
        Some(r)
    } else {
        None
    }
}

/// Degree of `x^d - m/n` over the rationals, for positive coprime `m, n`.
///
/// The binomial is irreducible unless `m/n` is a `p`-th power for some prime
/// `p` dividing `d`; extracting such roots repeatedly canonicalizes the
/// radical and the remaining exponent is the degree. (The classical
/// `-4 * fourth power` obstruction never applies to positive rationals.)
pub fn capelli_degree(m: &BigUint, n: &BigUint, d: u32) -> Result<u32> {
    if m.is_zero() || n.is_zero() {
        return Err(Error::InvalidArgument("radicand must be a positive rational".into()));
    }
    if !m.gcd(n).is_one() {
        return Err(Error::InvalidArgument("radicand must be in lowest terms".into()));
    }
    if d == 0 {
        return Err(Error::InvalidArgument("root degree must be positive".into()));
    }
    Ok(canonical_radical(m, n, d).2)
}

/// Canonical form of the radical `(m/n)^(1/d)`: extracts every exact prime
/// root, so the returned root degree is minimal. Once a prime root fails to
/// extract it can never succeed after later extractions, so a single pass
/// over ascending primes suffices.
pub fn canonical_radical(m: &BigUint, n: &BigUint, d: u32) -> (BigUint, BigUint, u32) {
    let (mut m, mut n, mut d) = (m.clone(), n.clone(), d);
    let mut p = 2u32;
    while d > 1 && p <= d {
        if d % p == 0 {
            if let (Some(rm), Some(rn)) = (exact_root(&m, p), exact_root(&n, p)) {
                m = rm;
                n = rn;
                d /= p;
                continue;
            }
        }
        p += 1;
    }
    (m, n, d)
}
