//! Minimal polynomials of two-radical sums via certified conjugate
//! products.
//!
//! For `e = c1 r1 + c2 r2` with multiplicatively independent radicals,
//! the embeddings of `Q(r1, r2)` send `r1 -> zeta^i r1` and
//! `r2 -> zeta^j r2`, with `(i, j)` ranging over the annihilator of the
//! multiplicative relation lattice between the radicands. The product of
//! `x - sigma(e)` over those embeddings is the characteristic polynomial
//! of `e`, a power of its minimal polynomial. Complex conjugate
//! embeddings are paired so everything runs in real interval arithmetic;
//! coefficients are accepted only when their enclosures round to a unique
//! integer, and the result must divide the annihilating polynomial
//! exactly.

use super::trig::cos_sin_turn;
use crate::error::{Error, Result};
use crate::exactnum::interval::CertifiedReal;
use crate::exactnum::logexp::{pow_rational, PrecisionLadder};
use crate::exactnum::primes::factorize;
use crate::heights::RadicalRational;
use crate::polyalg::{primitive_gcd, resultant, IntPolynomial};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// A normalized two-radical sum `c1 r1 + c2 r2`: nonzero rational
/// coefficients, canonical radicals of degree at least 2 whose ratio is
/// irrational.
pub(crate) struct SumParts {
    pub c1: BigRational,
    pub r1: RadicalRational,
    pub c2: BigRational,
    pub r2: RadicalRational,
}

/// Exponent of each prime in the radicand `num/den` (negative for
/// denominator primes).
fn prime_exponents(r: &RadicalRational) -> Vec<(BigUint, i64)> {
    let mut out: Vec<(BigUint, i64)> = factorize(r.num())
        .into_iter()
        .map(|(p, e)| (p, i64::from(e)))
        .collect();
    out.extend(factorize(r.den()).into_iter().map(|(p, e)| (p, -i64::from(e))));
    out
}

/// The relation lattice: pairs `(a, b)` in `Z_d1 x Z_d2` with
/// `r1^a r2^b` rational, i.e. `a e1(p)/d1 + b e2(p)/d2` integral for
/// every prime `p`.
fn relation_lattice(r1: &RadicalRational, r2: &RadicalRational) -> Vec<(u64, u64)> {
    let d1 = u64::from(r1.root_deg());
    let d2 = u64::from(r2.root_deg());
    let m = i128::from(d1) * i128::from(d2);
    let mut support: BTreeMap<BigUint, (i64, i64)> = BTreeMap::new();
    for (p, e) in prime_exponents(r1) {
        support.entry(p).or_insert((0, 0)).0 = e;
    }
    for (p, e) in prime_exponents(r2) {
        support.entry(p).or_insert((0, 0)).1 = e;
    }
    let mut lattice = Vec::new();
    for a in 0..d1 {
        for b in 0..d2 {
            let ok = support.values().all(|&(e1, e2)| {
                let v = i128::from(a) * i128::from(e1) * i128::from(d2)
                    + i128::from(b) * i128::from(e2) * i128::from(d1);
                v.rem_euclid(m) == 0
            });
            if ok {
                lattice.push((a, b));
            }
        }
    }
    lattice
}

/// Embeddings of `Q(r1, r2)`: the annihilator of the relation lattice
/// under the pairing `((i, j), (a, b)) -> (i a d2 + j b d1) / (d1 d2)`.
fn embedding_group(lattice: &[(u64, u64)], d1: u64, d2: u64) -> Vec<(u64, u64)> {
    let m = i128::from(d1) * i128::from(d2);
    let mut out = Vec::new();
    for i in 0..d1 {
        for j in 0..d2 {
            let ok = lattice.iter().all(|&(a, b)| {
                let v = i128::from(i) * i128::from(a) * i128::from(d2)
                    + i128::from(j) * i128::from(b) * i128::from(d1);
                v.rem_euclid(m) == 0
            });
            if ok {
                out.push((i, j));
            }
        }
    }
    out
}

fn turn(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Interval polynomial product, coefficients compressed at `prec`.
fn poly_mul(a: &[CertifiedReal], b: &[CertifiedReal], prec: u32) -> Vec<CertifiedReal> {
    let mut out = vec![CertifiedReal::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out.iter().map(|c| c.compress(prec)).collect()
}

/// The unique integer in the interval, if there is exactly one.
fn round_unique_int(iv: &CertifiedReal) -> Option<BigInt> {
    let lo = iv.lo().ceil_int();
    let hi = iv.hi().floor_int();
    if lo == hi {
        Some(lo)
    } else {
        None
    }
}

/// One rounding attempt at working precision `w`; `None` when some
/// coefficient enclosure is still too wide.
fn try_round(
    parts: &SumParts,
    singles: &[(u64, u64)],
    pairs: &[(u64, u64)],
    lc: &BigInt,
    w: u32,
) -> Option<Vec<BigInt>> {
    let d1 = u64::from(parts.r1.root_deg());
    let d2 = u64::from(parts.r2.root_deg());
    let inv = |d: u64| BigRational::new(BigInt::one(), BigInt::from(d));
    let x1 = pow_rational(parts.r1.num(), parts.r1.den(), &inv(d1), w)
        .mul_rational(&parts.c1, w);
    let x2 = pow_rational(parts.r2.num(), parts.r2.den(), &inv(d2), w)
        .mul_rational(&parts.c2, w);
    let mut poly = vec![CertifiedReal::one()];
    for &(i, j) in singles {
        // Real embedding: zeta^i and zeta^j are +-1.
        let (cos1, _) = cos_sin_turn(&turn(i, d1), w);
        let (cos2, _) = cos_sin_turn(&turn(j, d2), w);
        let root = x1.mul(&cos1).add(&x2.mul(&cos2)).compress(w);
        poly = poly_mul(&poly, &[root.neg(), CertifiedReal::one()], w);
    }
    for &(i, j) in pairs {
        // The embedding and its complex conjugate contribute
        // x^2 - 2 Re(sigma e) x + |sigma e|^2.
        let (cos1, _) = cos_sin_turn(&turn(i, d1), w);
        let (cos2, _) = cos_sin_turn(&turn(j, d2), w);
        let re = x1.mul(&cos1).add(&x2.mul(&cos2)).compress(w);
        let delta = turn(i, d1) - turn(j, d2);
        let (cos_delta, _) = cos_sin_turn(&delta, w);
        let abs_sq = x1
            .mul(&x1)
            .add(&x2.mul(&x2))
            .add(&x1.mul(&x2).mul(&cos_delta).mul_pow2(1))
            .compress(w);
        poly = poly_mul(&poly, &[abs_sq, re.mul_pow2(1).neg(), CertifiedReal::one()], w);
    }
    poly.iter().map(|c| round_unique_int(&c.mul_int(lc))).collect()
}

/// Minimal polynomial of `c1 r1 + c2 r2` by certified conjugate
/// products, verified by exact division into `annihilator`.
pub(crate) fn minimal_from_sum(
    parts: &SumParts,
    annihilator: &IntPolynomial,
    prec: u32,
) -> Result<IntPolynomial> {
    let d1 = u64::from(parts.r1.root_deg());
    let d2 = u64::from(parts.r2.root_deg());
    let lattice = relation_lattice(&parts.r1, &parts.r2);
    let embeddings = embedding_group(&lattice, d1, d2);
    debug_assert_eq!(embeddings.len() * lattice.len(), (d1 * d2) as usize);

    let mut singles = Vec::new();
    let mut pairs = Vec::new();
    let mut seen: BTreeSet<(u64, u64)> = BTreeSet::new();
    for &(i, j) in &embeddings {
        if seen.contains(&(i, j)) {
            continue;
        }
        let partner = ((d1 - i) % d1, (d2 - j) % d2);
        if partner == (i, j) {
            singles.push((i, j));
        } else {
            pairs.push((i, j));
            seen.insert(partner);
        }
        seen.insert((i, j));
    }

    let start = prec.max(128);
    let ladder = PrecisionLadder::new(start, start.max(4096));
    for w in ladder.rungs() {
        let Some(ints) = try_round(parts, &singles, &pairs, annihilator.lc(), w) else {
            continue;
        };
        let mut p = IntPolynomial::new(ints).primitive_part();
        // A power of the minimal polynomial appears when the sum
        // generates a proper subfield; strip repeated factors exactly.
        if resultant(&p, &p.derivative()).is_zero() {
            let g = primitive_gcd(&p, &p.derivative());
            p = p.divide_exact(&g).expect("squarefree part divides").primitive_part();
        }
        assert!(
            annihilator.divide_exact(&p).is_some(),
            "conjugate orbit product must divide the annihilator"
        );
        return Ok(p);
    }
    Err(Error::PrecisionExhausted {
        cap: ladder.cap,
        what: "integer rounding of conjugate products".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rad(num: u64, den: u64, deg: u32) -> RadicalRational {
        RadicalRational::new(BigUint::from(num), BigUint::from(den), deg).unwrap()
    }

    #[test]
    fn independent_radicals_have_trivial_lattice() {
        let r1 = rad(2, 1, 2);
        let r2 = rad(3, 1, 2);
        assert_eq!(relation_lattice(&r1, &r2), vec![(0, 0)]);
        assert_eq!(embedding_group(&[(0, 0)], 2, 2).len(), 4);
    }

    #[test]
    fn dependent_radicals_cut_the_orbit() {
        // 8^(1/4) = 2^(3/4): the compositum with 2^(1/4) has degree 4,
        // not 16.
        let r1 = rad(2, 1, 4);
        let r2 = rad(8, 1, 4);
        let lattice = relation_lattice(&r1, &r2);
        assert_eq!(lattice.len(), 4);
        let emb = embedding_group(&lattice, 4, 4);
        assert_eq!(emb.len(), 4);
        // 8^(1/4) = (2^(1/4))^3, so j = 3i = -i mod 4.
        for &(i, j) in &emb {
            assert_eq!((i + j) % 4, 0, "({i}, {j})");
        }
    }

    #[test]
    fn powers_of_one_generator_stay_in_one_field() {
        // r and r^2 for r = (5/7)^(1/5): the orbit has 5 embeddings.
        let r1 = rad(5, 7, 5);
        let r2 = rad(25, 49, 5);
        let lattice = relation_lattice(&r1, &r2);
        assert_eq!(lattice.len(), 5);
        let emb = embedding_group(&lattice, 5, 5);
        assert_eq!(emb.len(), 5);
        for &(i, j) in &emb {
            assert_eq!(j, 2 * i % 5, "({i}, {j})");
        }
    }
}
