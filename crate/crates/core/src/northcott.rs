//! Certified height floors and level-by-level Northcott sandwiches.
//!
//! The per-level quantities are the two sides of the tower argument: a
//! discriminant-driven lower bound on the height of every element new at
//! that level, and the exactly-known weighted height of the level's own
//! generator as the upper bound. A finite tower truncation can only report
//! a sandwich and a trend, never the limit; the verdict here records the
//! predicted limit behaviour and whether the computed data is consistent
//! with it.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::logexp::{certified_less, log_big_ratio, pow_rational, PrecisionLadder};
use crate::exactnum::{CertifiedReal, ExactLog};
use crate::heights::{RadicalRational, WeightedHeightValue};
use crate::polyalg::{discriminant, eisenstein_primes, IntPolynomial};
use crate::towers::{BaseField, CaseTag, TowerSpec};

/// Height floor from the discriminant: for an extension of degree `d`
/// whose relative discriminant has norm `N`,
/// `h >= (1/(2(d-1))) * (log(N)/(d*degK) - log(d))`.
/// The result may be negative, in which case the bound is vacuous.
pub fn silverman_bound(
    log_norm_disc: &CertifiedReal,
    d: u32,
    deg_k: u32,
    prec: u32,
) -> CertifiedReal {
    assert!(d >= 2 && deg_k >= 1);
    let w = prec + 16;
    let scaled = log_norm_disc.div_ratio(&BigInt::from(u64::from(d) * u64::from(deg_k)), &BigInt::one(), w);
    let lg_d = log_big_ratio(&BigUint::from(d), &BigUint::one(), w);
    scaled
        .sub(&lg_d)
        .div_ratio(&BigInt::from(2 * (u64::from(d) - 1)), &BigInt::one(), w)
        .compress(prec)
}

/// Lower bound on `log N(D)` forced by total ramification at `p` and `q`:
/// both `p^(degK*(d-1))` and `q^(degK*(d-1))` divide the norm, so its log
/// is at least `degK*(d-1)*log(pq)`.
pub fn ramification_log_bound(
    p: &BigUint,
    q: &BigUint,
    d: u32,
    deg_k: u32,
    prec: u32,
) -> CertifiedReal {
    assert!(p < q, "the prime pair is ordered p < q");
    assert!(d >= 2 && deg_k >= 1);
    let w = prec + 16;
    let lg = log_big_ratio(&(p * q), &BigUint::one(), w);
    lg.mul_int(&BigInt::from(u64::from(deg_k) * (u64::from(d) - 1)))
        .compress(prec)
}

/// The closed-form height floor `log(p)/d - log(d)/(2(d-1))` for every
/// element outside the base field in the degree-`d`, prime-`p` setting.
pub fn corollary_lower_bound(p: &BigUint, d: &BigUint, prec: u32) -> CertifiedReal {
    assert!(*d >= BigUint::from(2u32));
    let w = prec + 16;
    let di = BigInt::from(d.clone());
    let lead = log_big_ratio(p, &BigUint::one(), w).div_ratio(&di, &BigInt::one(), w);
    let tail = log_big_ratio(d, &BigUint::one(), w).div_ratio(
        &(2 * (&di - 1)),
        &BigInt::one(),
        w,
    );
    lead.sub(&tail).compress(prec)
}

/// Desk-scale ramification divisibility: the discriminant of
/// `x^d - p*q^(d-1)` is computed exactly (subresultants) and checked for
/// divisibility by `p^(d-1)` and `q^(d-1)`; additionally the polynomial is
/// checked Eisenstein at `p`, and the companion presentation
/// `x^d - p^(d-1)*q` Eisenstein at `q`.
pub fn verify_divisibility(p: &BigUint, q: &BigUint, d: u32) -> bool {
    assert!(p != q, "the primes must be distinct");
    assert!(d >= 2);
    let m = BigInt::from(p * q.pow(d - 1));
    let f = IntPolynomial::monomial(BigInt::one(), d as usize)
        .sub(&IntPolynomial::constant(m));
    let disc = discriminant(&f);
    let pe = BigInt::from(p.pow(d - 1));
    let qe = BigInt::from(q.pow(d - 1));
    if !disc.is_multiple_of(&pe) || !disc.is_multiple_of(&qe) {
        return false;
    }
    let eis = eisenstein_primes(&f, &[p.clone()]);
    if eis.map_or(true, |v| v != vec![p.clone()]) {
        return false;
    }
    let companion = IntPolynomial::monomial(BigInt::one(), d as usize)
        .sub(&IntPolynomial::constant(BigInt::from(p.pow(d - 1) * q)));
    eisenstein_primes(&companion, &[q.clone()]).map_or(false, |v| v == vec![q.clone()])
}

/// The two sides of the sandwich at one level and one probe weight.
#[derive(Debug, Clone)]
pub struct LevelBounds {
    /// `d^delta * (log(p)/d - log(d)/(2(d-1)))`: floor for elements new at
    /// this level.
    pub lower: CertifiedReal,
    /// `log(q)/d^(1-delta)`: the weighted height of the level generator.
    pub upper: CertifiedReal,
    /// The upper bound as an exact logarithm when `delta` is 0 or 1.
    pub upper_exact: Option<ExactLog>,
}

/// Evaluates the sandwich at level `i` (0-based) for probe weight `delta`.
pub fn level_bounds(
    spec: &TowerSpec,
    i: usize,
    delta: &BigRational,
    prec: u32,
) -> Result<LevelBounds> {
    let lv = spec
        .levels
        .get(i)
        .ok_or_else(|| Error::InvalidArgument(format!("no level {i}")))?;
    let w = prec + 16;
    let floor = corollary_lower_bound(&lv.p, &lv.d, w);
    let lower = pow_rational(&lv.d, &BigUint::one(), delta, w)
        .mul(&floor)
        .compress(prec);

    let upper_exact = if delta.is_zero() {
        Some(ExactLog::new(lv.q.clone(), lv.d.clone()))
    } else if delta.is_one() {
        Some(ExactLog::new(lv.q.clone(), BigUint::one()))
    } else {
        None
    };
    let upper = match &upper_exact {
        Some(e) => e.to_certified(prec),
        None => {
            let expo = BigRational::one() - delta;
            let denom = pow_rational(&lv.d, &BigUint::one(), &expo, w);
            log_big_ratio(&lv.q, &BigUint::one(), w)
                .div(&denom, w)
                .compress(prec)
        }
    };
    Ok(LevelBounds {
        lower,
        upper,
        upper_exact,
    })
}

/// Predicted limit behaviour of the level infima at probe weight `delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prediction {
    ConvergesTo(BigRational),
    DivergesToInfinity,
    CollapsesToZero,
}

impl std::fmt::Display for Prediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Prediction::ConvergesTo(c) => write!(f, "converges to {c}"),
            Prediction::DivergesToInfinity => f.write_str("diverges to infinity"),
            Prediction::CollapsesToZero => f.write_str("collapses to zero"),
        }
    }
}

/// Enclosure of the liminf-style running value over the available levels,
/// or the empty-infimum tag. The infimum over an empty level set is
/// reported as `+inf` by convention, matching "Northcott holds iff the
/// number is infinite"; this situation never arises for generated towers.
#[derive(Debug, Clone, PartialEq)]
pub enum SandwichEstimate {
    Enclosure(CertifiedReal),
    EmptyInfimum,
}

/// `[min of lower ends, min of upper ends]` over the given levels; the
/// empty-infimum tag (`+inf`) when no levels are given.
pub fn sandwich_over(levels: &[LevelBounds]) -> SandwichEstimate {
    let mut it = levels.iter();
    let Some(first) = it.next() else {
        return SandwichEstimate::EmptyInfimum;
    };
    let mut lo = first.lower.lo().clone();
    let mut hi = first.upper.hi().clone();
    for b in it {
        lo = crate::exactnum::Dyadic::min(&lo, b.lower.lo());
        hi = crate::exactnum::Dyadic::min(&hi, b.upper.hi());
    }
    SandwichEstimate::Enclosure(CertifiedReal::new(lo, hi))
}

/// The full per-level report at one probe weight.
#[derive(Debug, Clone)]
pub struct NorthcottReport {
    pub delta: BigRational,
    pub per_level: Vec<LevelBounds>,
    pub sandwich: SandwichEstimate,
    pub prediction: Prediction,
    /// Whether the computed finite data is consistent with the prediction:
    /// uppers strictly decreasing for a collapse; uppers strictly
    /// decreasing, above the target, and lowers positive for convergence;
    /// lowers positive for divergence. All comparisons certified.
    pub consistent: bool,
}

/// What the tower's case predicts for the probe weight `delta` relative to
/// the case weight `gamma`: below `gamma` the infima collapse to zero,
/// above it they diverge, and at `gamma` the case's own conclusion applies.
pub fn predict(spec: &TowerSpec, delta: &BigRational) -> Prediction {
    let gamma = spec.case.gamma();
    if delta < gamma {
        return Prediction::CollapsesToZero;
    }
    if delta > gamma {
        return Prediction::DivergesToInfinity;
    }
    match spec.case.tag() {
        CaseTag::A | CaseTag::B2 => {
            Prediction::ConvergesTo(spec.case.c().expect("cases A/B2 carry c").clone())
        }
        CaseTag::B1 => Prediction::CollapsesToZero,
        CaseTag::B3 | CaseTag::C => Prediction::DivergesToInfinity,
    }
}

pub fn northcott_sandwich(
    spec: &TowerSpec,
    delta: &BigRational,
    prec: u32,
) -> Result<NorthcottReport> {
    if spec.levels.is_empty() {
        return Err(Error::InvalidArgument("the tower has no levels".into()));
    }
    let per_level: Vec<LevelBounds> = (0..spec.levels.len())
        .map(|i| level_bounds(spec, i, delta, prec))
        .collect::<Result<_>>()?;
    let sandwich = sandwich_over(&per_level);
    let prediction = predict(spec, delta);

    let ladder = PrecisionLadder::default();
    let mut uppers_decreasing = true;
    for i in 1..per_level.len() {
        let dec = certified_less(
            &per_level[i].upper,
            &per_level[i - 1].upper,
            &ladder,
            |w| {
                let a = level_bounds(spec, i, delta, w).expect("level exists");
                let b = level_bounds(spec, i - 1, delta, w).expect("level exists");
                (a.upper, b.upper)
            },
        )?;
        if !dec {
            uppers_decreasing = false;
            break;
        }
    }
    let lowers_positive = |per_level: &[LevelBounds]| -> Result<bool> {
        for (i, b) in per_level.iter().enumerate() {
            let pos = certified_less(&CertifiedReal::zero(), &b.lower, &ladder, |w| {
                let lb = level_bounds(spec, i, delta, w).expect("level exists");
                (CertifiedReal::zero(), lb.lower)
            })?;
            if !pos {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let consistent = match &prediction {
        Prediction::CollapsesToZero => uppers_decreasing,
        Prediction::DivergesToInfinity => lowers_positive(&per_level)?,
        Prediction::ConvergesTo(c) => {
            let mut above = true;
            for (i, b) in per_level.iter().enumerate() {
                let target = CertifiedReal::from_rational(c, prec);
                let gt = certified_less(&target, &b.upper, &ladder, |w| {
                    let lb = level_bounds(spec, i, delta, w).expect("level exists");
                    (CertifiedReal::from_rational(c, w), lb.upper)
                })?;
                if !gt {
                    above = false;
                    break;
                }
            }
            uppers_decreasing && above && lowers_positive(&per_level)?
        }
    };

    Ok(NorthcottReport {
        delta: delta.clone(),
        per_level,
        sandwich,
        prediction,
        consistent,
    })
}

impl NorthcottReport {
    /// CSV emission, one row per level, endpoints rounded outward.
    pub fn to_csv(&self, spec: &TowerSpec) -> String {
        let mut out = String::from("level,d,p,q,lower_lo,lower_hi,upper_lo,upper_hi\n");
        for (i, (lv, b)) in spec.levels.iter().zip(&self.per_level).enumerate() {
            let (llo, lhi) = b.lower.to_decimal_pair(12);
            let (ulo, uhi) = b.upper.to_decimal_pair(12);
            let _ = writeln!(
                out,
                "{},{},{},{},{llo},{lhi},{ulo},{uhi}",
                i + 1,
                lv.d,
                lv.p,
                lv.q
            );
        }
        out
    }

    /// Human-readable summary with the verdict line.
    pub fn to_text(&self, spec: &TowerSpec) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} at probe weight {}", spec.case, self.delta);
        for (i, (lv, b)) in spec.levels.iter().zip(&self.per_level).enumerate() {
            let (llo, _) = b.lower.to_decimal_pair(10);
            let (_, uhi) = b.upper.to_decimal_pair(10);
            let _ = writeln!(
                out,
                "level {}: d = {}, p = {}, q = {}, bounds [{llo}, {uhi}]",
                i + 1,
                lv.d,
                lv.p,
                lv.q
            );
        }
        match &self.sandwich {
            SandwichEstimate::Enclosure(iv) => {
                let (lo, hi) = iv.to_decimal_pair(10);
                let _ = writeln!(out, "sandwich estimate: [{lo}, {hi}]");
            }
            SandwichEstimate::EmptyInfimum => {
                let _ = writeln!(out, "sandwich estimate: +inf (empty level set)");
            }
        }
        let _ = writeln!(
            out,
            "prediction: {}; finite data {} with it",
            self.prediction,
            if self.consistent { "consistent" } else { "INCONSISTENT" }
        );
        out
    }
}

/// One row of the non-positive-weight demonstration table.
#[derive(Debug, Clone)]
pub struct DemoRow {
    pub n: u32,
    /// `2^(1/3^n)`, the n-th base-chain generator.
    pub a: RadicalRational,
    pub h_gamma_a: WeightedHeightValue,
    /// `b * a_n` as a canonical radical.
    pub product: RadicalRational,
    pub h_gamma_product: WeightedHeightValue,
    /// `deg(b)^(-gamma) * (h(b) * deg(a_n)^gamma + h_gamma(a_n))`.
    pub chain_bound: CertifiedReal,
    /// Certified `h_gamma(b * a_n) <= chain_bound`.
    pub chain_holds: bool,
}

/// Walks the base chain `a_n = 2^(1/3^n)` at a non-positive weight: the
/// weighted heights `h_gamma(a_n) = 3^(n(gamma-1)) * log 2` shrink to zero,
/// and multiplying by a fixed radical `b` cannot push the height above the
/// degree-weighted chain bound. This is the mechanism that denies the
/// Bogomolov property at every `gamma <= 0` over the base field.
pub fn demo_nonpositive(
    gamma: &BigRational,
    n_max: u32,
    b: &RadicalRational,
    prec: u32,
) -> Result<Vec<DemoRow>> {
    if gamma.is_positive() {
        return Err(Error::InvalidArgument(
            "the demonstration targets weights gamma <= 0".into(),
        ));
    }
    if b.is_one() {
        return Err(Error::InvalidArgument("b must not be 1".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let base = BaseField;
    let w = prec + 16;
    let deg_b = BigUint::from(b.degree());
    let h_b = b.height().to_certified(w);
    let neg_gamma = -gamma.clone();
    let deg_b_pow = pow_rational(&deg_b, &BigUint::one(), &neg_gamma, w);

    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let a = base.generator(n);
        let h_a = a.weighted_height(gamma, prec);
        let product = b.mul(&a);
        let h_prod = product.weighted_height(gamma, prec);

        let deg_a = BigUint::from(a.degree());
        let deg_a_pow = pow_rational(&deg_a, &BigUint::one(), gamma, w);
        let chain_bound = deg_b_pow
            .mul(&h_b.mul(&deg_a_pow).add(&h_a.enclosure))
            .compress(prec);

        let ladder = PrecisionLadder::default();
        let chain_holds = !certified_less(&chain_bound, &h_prod.enclosure, &ladder, |w2| {
            let hb = b.height().to_certified(w2);
            let dbp = pow_rational(&deg_b, &BigUint::one(), &neg_gamma, w2);
            let dap = pow_rational(&deg_a, &BigUint::one(), gamma, w2);
            let ha = a.weighted_height(gamma, w2);
            let bound = dbp.mul(&hb.mul(&dap).add(&ha.enclosure));
            let hp = product.weighted_height(gamma, w2);
            (bound, hp.enclosure)
        })?;

        rows.push(DemoRow {
            n,
            a,
            h_gamma_a: h_a,
            product,
            h_gamma_product: h_prod,
            chain_bound,
            chain_holds,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::primes::small_primes_to;
    use crate::towers::{generate_tower, TowerLevel, WeightCase};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn assert_encloses(iv: &CertifiedReal, x: f64) {
        let (lo, hi) = iv.to_f64_pair();
        let slop = 1e-13 * x.abs().max(1.0);
        assert!(lo - slop <= x && x <= hi + slop, "{x} not in [{lo}, {hi}]");
    }

    fn case_a_spec() -> TowerSpec {
        let case = WeightCase::new(CaseTag::A, Some(rat(1, 20)), None).unwrap();
        generate_tower(&case, 3, None, 4096).unwrap()
    }

    #[test]
    fn silverman_bound_pins() {
        // (1/8)(4 log 35 / 5 - log 5)
        let lnd = log_big_ratio(&big(35u64.pow(4)), &BigUint::one(), 96);
        let v = silverman_bound(&lnd, 5, 1, 64);
        assert_encloses(&v, 0.1543550670946788);

        // Unit discriminant: vacuous bound -(1/2) log 2.
        let v = silverman_bound(&CertifiedReal::zero(), 2, 1, 64);
        assert_encloses(&v, -(2f64.ln()) / 2.0);
        assert!(v.certainly_negative());

        // (1/2)(log 6 / 2 - log 2)
        let lnd = log_big_ratio(&big(6), &BigUint::one(), 96);
        let v = silverman_bound(&lnd, 2, 1, 64);
        assert_encloses(&v, 0.10136627702704110);
    }

    #[test]
    fn ramification_bound_pins() {
        let v = ramification_log_bound(&big(5), &big(7), 5, 1, 64);
        assert_encloses(&v, 4.0 * 35f64.ln()); // ~14.221392
        let v = ramification_log_bound(&big(11), &big(13), 2, 1, 64);
        assert_encloses(&v, 143f64.ln());
        let v = ramification_log_bound(&big(5), &big(7), 5, 3, 64);
        assert_encloses(&v, 12.0 * 35f64.ln());
    }

    #[test]
    fn corollary_bound_pins() {
        let v = corollary_lower_bound(&big(5), &big(5), 64);
        assert_encloses(&v, 0.1207078434325575);
        let v = corollary_lower_bound(&big(7), &big(11), 64);
        assert_encloses(&v, 0.05700615900147359);
        let v = corollary_lower_bound(&big(13), &big(19), 64);
        assert_encloses(&v, 0.053207362959726556);
    }

    #[test]
    fn silverman_through_ramification_dominates_corollary() {
        // (1/(2(d-1)))((d-1) log(pq)/d - log d) >= log(p)/d - log(d)/(2(d-1))
        // boils down to log q > log p; certified across a prime sample.
        let primes = small_primes_to(30);
        for d in [2u32, 3, 5, 7] {
            for (ai, &a) in primes.iter().enumerate() {
                for &b in &primes[ai + 1..] {
                    let (p, q) = (big(u64::from(a)), big(u64::from(b)));
                    let ram = ramification_log_bound(&p, &q, d, 1, 96);
                    let via_silverman = silverman_bound(&ram, d, 1, 96);
                    let direct = corollary_lower_bound(&p, &big(u64::from(d)), 96);
                    assert!(
                        !via_silverman.certainly_lt(&direct),
                        "p={p} q={q} d={d}: {via_silverman:?} < {direct:?}"
                    );
                    assert!(via_silverman.sub(&direct).hi().to_f64() > 0.0);
                }
            }
        }
    }

    #[test]
    fn divisibility_pins() {
        assert!(verify_divisibility(&big(5), &big(7), 5));
        assert!(verify_divisibility(&big(2), &big(3), 3));
        assert!(verify_divisibility(&big(3), &big(2), 3));
        assert!(verify_divisibility(&big(11), &big(5), 2));
        // disc(x^3 - 18) = -27 * 324 = -8748 = -2^2 * 3^7.
        let f = IntPolynomial::from_i64_slice(&[-18, 0, 0, 1]);
        assert_eq!(discriminant(&f), BigInt::from(-8748));
    }

    #[test]
    fn divisibility_sample_grid() {
        // Desk-scale slice of the exhaustive acceptance sweep.
        let primes = small_primes_to(20);
        for d in [2u32, 3, 5] {
            for &a in &primes {
                for &b in &primes {
                    if a != b {
                        let ok = verify_divisibility(&big(u64::from(a)), &big(u64::from(b)), d);
                        assert!(ok, "{a} {b} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn level_bounds_at_zero_weight() {
        let spec = case_a_spec();
        let b = level_bounds(&spec, 0, &rat(0, 1), 96).unwrap();
        assert_encloses(&b.lower, 0.1207078434325575);
        assert_encloses(&b.upper, 7f64.ln() / 5.0); // ~0.389182
        assert_eq!(b.upper_exact, Some(ExactLog::new(big(7), big(5))));

        let b = level_bounds(&spec, 1, &rat(0, 1), 96).unwrap();
        assert_encloses(&b.lower, 0.05700615900147359);
        assert_encloses(&b.upper, 11f64.ln() / 11.0); // ~0.217991
        let b = level_bounds(&spec, 2, &rat(0, 1), 96).unwrap();
        assert_encloses(&b.lower, 0.053207362959726556);
        assert_encloses(&b.upper, 17f64.ln() / 19.0); // ~0.149116

        assert!(level_bounds(&spec, 9, &rat(0, 1), 96).is_err());
    }

    #[test]
    fn level_bounds_at_unit_weight_are_exact_logs() {
        let spec = case_a_spec();
        let b = level_bounds(&spec, 0, &rat(1, 1), 96).unwrap();
        assert_eq!(b.upper_exact, Some(ExactLog::new(big(7), BigUint::one())));
        assert_encloses(&b.upper, 7f64.ln());
        assert_encloses(&b.lower, 5.0 * 0.1207078434325575);
    }

    #[test]
    fn level_bounds_at_half_weight() {
        let spec = case_a_spec();
        let deltas = rat(1, 2);
        let uppers: Vec<f64> = (0..3)
            .map(|i| {
                let b = level_bounds(&spec, i, &deltas, 96).unwrap();
                assert!(b.upper_exact.is_none());
                b.upper.midpoint().to_f64()
            })
            .collect();
        // log(q_i)/sqrt(d_i)
        assert!((uppers[0] - 7f64.ln() / 5f64.sqrt()).abs() < 1e-12); // ~0.8702
        assert!((uppers[1] - 11f64.ln() / 11f64.sqrt()).abs() < 1e-12); // ~0.7230
        assert!((uppers[2] - 17f64.ln() / 19f64.sqrt()).abs() < 1e-12); // ~0.6500
    }

    #[test]
    fn sandwich_report_case_a_at_zero() {
        let spec = case_a_spec();
        let report = northcott_sandwich(&spec, &rat(0, 1), 96).unwrap();
        assert_eq!(report.prediction, Prediction::ConvergesTo(rat(1, 20)));
        assert!(report.consistent);
        // Every lower certified above c = 1/20.
        let c = CertifiedReal::from_rational(&rat(1, 20), 96);
        for b in &report.per_level {
            assert!(c.certainly_lt(&b.lower));
            assert!(!b.upper.certainly_lt(&b.lower));
        }
        let SandwichEstimate::Enclosure(iv) = &report.sandwich else {
            panic!("nonempty tower");
        };
        // min lower = level 3's ~0.05321, min upper = level 3's ~0.14912.
        assert_encloses(iv, 0.054); // strictly inside
        assert_encloses(iv, 0.14);
        assert!(iv.lo().to_f64() > 0.0532 && iv.lo().to_f64() < 0.0533);
        assert!(iv.hi().to_f64() > 0.1491 && iv.hi().to_f64() < 0.1492);
    }

    #[test]
    fn sandwich_report_probe_weights() {
        let spec = case_a_spec();
        // Above the case weight: predicted divergence, lowers positive.
        let report = northcott_sandwich(&spec, &rat(1, 2), 96).unwrap();
        assert_eq!(report.prediction, Prediction::DivergesToInfinity);
        assert!(report.consistent);
        // Below the case weight: predicted collapse, uppers decreasing.
        let report = northcott_sandwich(&spec, &rat(-1, 2), 96).unwrap();
        assert_eq!(report.prediction, Prediction::CollapsesToZero);
        assert!(report.consistent);
    }

    #[test]
    fn sandwich_report_case_c_at_one() {
        let case = WeightCase::new(CaseTag::C, None, None).unwrap();
        let spec = generate_tower(&case, 5, None, 4096).unwrap();
        let report = northcott_sandwich(&spec, &rat(1, 1), 96).unwrap();
        assert_eq!(report.prediction, Prediction::DivergesToInfinity);
        assert!(report.consistent);
        // At unit weight the uppers are exactly log(q_i), strictly
        // increasing with q.
        for (i, b) in report.per_level.iter().enumerate() {
            assert_eq!(
                b.upper_exact,
                Some(ExactLog::new(spec.levels[i].q.clone(), BigUint::one()))
            );
            if i > 0 {
                assert!(report.per_level[i - 1].upper.certainly_lt(&b.upper));
            }
        }
    }

    #[test]
    fn sandwich_rejects_empty_and_flags_empty_infimum() {
        assert_eq!(sandwich_over(&[]), SandwichEstimate::EmptyInfimum);
        let case = WeightCase::new(CaseTag::A, Some(rat(1, 20)), None).unwrap();
        assert!(TowerSpec::new(case, vec![]).is_err());
    }

    #[test]
    fn inconsistent_data_is_reported() {
        // A hand-built "tower" whose uppers increase cannot be consistent
        // with the convergence prediction at weight 0.
        let case = WeightCase::new(CaseTag::A, Some(rat(1, 20)), None).unwrap();
        let spec = TowerSpec::new(
            case,
            vec![TowerLevel::new(5, 5, 7), TowerLevel::new(7, 11, 13)],
        )
        .unwrap();
        let report = northcott_sandwich(&spec, &rat(0, 1), 96).unwrap();
        // log(13)/7 ~ 0.366 < log(7)/5 ~ 0.389: still decreasing, so build
        // one that actually breaks: big q at similar degree.
        assert_eq!(report.prediction, Prediction::ConvergesTo(rat(1, 20)));
        let spec2 = TowerSpec::new(
            WeightCase::new(CaseTag::A, Some(rat(1, 20)), None).unwrap(),
            vec![TowerLevel::new(5, 5, 7), TowerLevel::new(7, 11, 13), TowerLevel::new(11, 97, 101)],
        )
        .unwrap();
        let report2 = northcott_sandwich(&spec2, &rat(0, 1), 96).unwrap();
        // log(101)/11 ~ 0.4196 > log(13)/7 ~ 0.3664: uppers not decreasing.
        assert!(!report2.consistent);
    }

    #[test]
    fn csv_and_text_emission() {
        let spec = case_a_spec();
        let report = northcott_sandwich(&spec, &rat(0, 1), 96).unwrap();
        let csv = report.to_csv(&spec);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "level,d,p,q,lower_lo,lower_hi,upper_lo,upper_hi");
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&first[..4], &["1", "5", "5", "7"]);
        assert!(first[4].starts_with("0.1207078434"));
        assert!(first[6].starts_with("0.3891820298"));
        assert_eq!(csv.lines().count(), 4);

        let text = report.to_text(&spec);
        assert!(text.contains("prediction: converges to 1/20"));
        assert!(text.contains("consistent"));
        assert!(text.contains("sandwich estimate"));
    }

    #[test]
    fn demo_rows_shrink_and_chain_holds() {
        let b = RadicalRational::parse("(5/7)^(1/5)").unwrap();
        let rows = demo_nonpositive(&rat(-1, 2), 6, &b, 96).unwrap();
        assert_eq!(rows.len(), 6);
        for row in &rows {
            assert!(row.chain_holds, "n = {}", row.n);
            // h_gamma(a_n) = 3^(n(gamma-1)) log 2: check against the
            // independent closed form.
            let expo = rat(-3, 2) * rat(row.n as i64, 1);
            let reference = pow_rational(&big(3), &BigUint::one(), &expo, 128)
                .mul(&crate::exactnum::logexp::log2(128));
            let hull = reference.hull(&row.h_gamma_a.enclosure);
            assert!(hull.width().to_f64() < 1e-20, "n = {}", row.n);
        }
        // Strictly decreasing and below 1e-3 from n = 4 on.
        for pair in rows.windows(2) {
            assert!(pair[1]
                .h_gamma_a
                .enclosure
                .certainly_lt(&pair[0].h_gamma_a.enclosure));
        }
        let thousandth = CertifiedReal::from_ratio(&BigInt::one(), &BigInt::from(1000), 96);
        for row in &rows[3..] {
            assert!(row.h_gamma_a.enclosure.certainly_lt(&thousandth));
        }
        // n = 4 row pins the worked value log2 / 729.
        assert_encloses(&rows[3].h_gamma_a.enclosure, 2f64.ln() / 729.0);
    }

    #[test]
    fn demo_zero_weight_collapses_to_plain_heights() {
        let b = RadicalRational::parse("(5/7)^(1/5)").unwrap();
        let rows = demo_nonpositive(&rat(0, 1), 3, &b, 96).unwrap();
        for row in &rows {
            // h_0(a_n) = log2 / 3^n, exact.
            let expected = ExactLog::new(big(2), big(3u64.pow(row.n)));
            assert_eq!(row.h_gamma_a.exact.as_ref(), Some(&expected));
            // Chain bound reduces to h(b) + h(a_n).
            let sum = b
                .height()
                .to_certified(128)
                .add(&row.h_gamma_a.enclosure);
            let hull = sum.hull(&row.chain_bound);
            assert!(hull.width().to_f64() < 1e-20);
        }
    }

    #[test]
    fn demo_rejects_bad_inputs() {
        let b = RadicalRational::parse("(5/7)^(1/5)").unwrap();
        assert!(demo_nonpositive(&rat(1, 2), 3, &b, 96).is_err());
        assert!(demo_nonpositive(&rat(-1, 2), 0, &b, 96).is_err());
        let one = RadicalRational::one();
        assert!(demo_nonpositive(&rat(-1, 2), 3, &one, 96).is_err());
    }

    #[test]
    fn demo_product_height_matches_closed_form() {
        // b * a_n = (5^(3^n) * 2^5 / 7^(3^n))^(1/(5*3^n)): the height is
        // log(max(numerator, denominator)) over the root degree. The
        // numerator dominates up to n = 2, the denominator from n = 3 on
        // (where the height settles at log(7)/5 exactly).
        let b = RadicalRational::parse("(5/7)^(1/5)").unwrap();
        let rows = demo_nonpositive(&rat(-1, 1), 4, &b, 96).unwrap();
        for row in &rows {
            assert_eq!(row.product.degree(), 5 * 3u32.pow(row.n));
            let e = 3u32.pow(row.n);
            let num = big(5).pow(e) * big(32);
            let den = big(7).pow(e);
            let plain = ExactLog::new(num.clone().max(den.clone()), big(5) * big(3).pow(row.n));
            assert_eq!(row.product.height(), plain);
            if row.n >= 3 {
                assert!(den > num);
            } else {
                assert!(num > den);
            }
        }
    }
}
