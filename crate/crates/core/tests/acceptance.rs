//! End-to-end acceptance checks for the certified-height toolkit.
//!
//! Each test certifies one externally checkable contract at a stated
//! tolerance: the exact height law on radicals, the prime-power lower
//! bound on sampled expressions, ramification divisibility, generated
//! towers and their sandwich bounds, interval classification, Mahler
//! reference values, the negative-weight collapse, and round-trip
//! soundness of the interval log/exp kernels. Every comparison that
//! decides a pass goes through certified interval endpoints; floating
//! point appears only in width checks and coarse reference pins.

use std::time::Instant;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use radnor::exactnum::{
    exp_interval, log2, log_big_ratio, log_certified, log_interval, pow_rational,
};
use radnor::northcott::{demo_nonpositive, northcott_sandwich, verify_divisibility, Prediction};
use radnor::oracle::{corollary_samples, cross_check_corollary, oracle_height, Term};
use radnor::polyalg::{discriminant, log_mahler};
use radnor::towers::{classify_intervals, generate_tower, NorValue};
use radnor::{
    BigInt, BigRational, BigUint, CaseTag, CertifiedReal, ExactLog, IntPolynomial, RadicalExpr,
    RadicalRational, WeightCase,
};

const PREC: u32 = 128;
const CAP: u64 = 256;

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn width_below(x: &CertifiedReal, bound: f64) -> bool {
    let (lo, hi) = x.to_f64_pair();
    hi - lo <= bound
}

/// Two enclosures of the same real number must intersect.
fn overlap(a: &CertifiedReal, b: &CertifiedReal) -> bool {
    !a.certainly_lt(b) && !b.certainly_lt(a)
}

#[test]
fn exact_height_law_on_random_radicals() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..200 {
        let m = rng.gen_range(1u64..=1_000_000);
        let n = rng.gen_range(1u64..=1_000_000);
        let d = rng.gen_range(1u32..=50);
        let r = RadicalRational::new(BigUint::from(m), BigUint::from(n), d)
            .expect("positive radicals are always valid");
        let max = r.num().max(r.den()).clone();
        let symbolic = r.height();
        assert_eq!(symbolic, ExactLog::new(max, BigUint::from(r.root_deg())));

        let reference = symbolic.to_certified(PREC);
        let expr = RadicalExpr::Term(Term::radical(r));
        let from_oracle =
            oracle_height(&expr, PREC, CAP).expect("oracle accepts canonical radicals");
        assert!(
            width_below(&reference, 1e-10),
            "height enclosure too wide for {expr}"
        );
        assert!(
            width_below(&from_oracle, 1e-10),
            "oracle enclosure too wide for {expr}"
        );
        assert!(
            overlap(&reference, &from_oracle),
            "oracle disagrees with log max(m,n)/D on {expr}"
        );
    }
    assert!(
        start.elapsed().as_secs() < 120,
        "exact-height sweep exceeded its time budget"
    );
}

#[test]
fn sampled_heights_exceed_prime_power_lower_bound() {
    let start = Instant::now();
    let p = BigUint::from(5u32);
    let q = BigUint::from(7u32);
    let samples = corollary_samples(&p, &q, 5, 20).expect("sample family exists");
    assert!(samples.len() >= 20);
    let report = cross_check_corollary(&p, 5, &samples, PREC, CAP).expect("cross-check runs");
    assert!(
        report.all_exceed,
        "a sample failed the certified bound:\n{report}"
    );

    // 0.120708 - 1e-9, just below the true bound log(5)/5 - log(5)/8.
    let threshold = CertifiedReal::from_rational(
        &BigRational::new(BigInt::from(120_707_999i64), BigInt::from(10i64).pow(9)),
        PREC,
    );
    for row in &report.samples {
        assert!(
            row.height.certainly_gt(&threshold),
            "height of {} not certified above the threshold",
            row.expr
        );
    }
    assert!(
        start.elapsed().as_secs() < 60,
        "cross-check exceeded its time budget"
    );
}

#[test]
fn ramification_divisibility_is_exhaustive_for_small_primes() {
    let primes: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let mut checked = 0u32;
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            for d in [2u32, 3, 5, 7] {
                let pu = BigUint::from(p);
                let qu = BigUint::from(q);
                assert!(
                    verify_divisibility(&pu, &qu, d),
                    "ramification checks failed for p={p}, q={q}, d={d}"
                );

                // Independent restatement: (pq)^(d-1) divides disc(x^d - p q^(d-1)).
                let a = BigInt::from(p) * BigInt::from(q).pow(d - 1);
                let mut coeffs = vec![BigInt::zero(); d as usize + 1];
                coeffs[0] = -a;
                coeffs[d as usize] = BigInt::one();
                let disc = discriminant(&IntPolynomial::new(coeffs));
                let modulus = (BigInt::from(p) * BigInt::from(q)).pow(d - 1);
                assert!(
                    (&disc % &modulus).is_zero(),
                    "disc {disc} not divisible by {modulus} for p={p}, q={q}, d={d}"
                );
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 105 * 4);
}

#[test]
fn reference_tower_generation_is_certified() {
    let start = Instant::now();
    let c = ratio(1, 20);
    let case = WeightCase::new(CaseTag::A, Some(c.clone()), None).expect("case A with c = 1/20");
    let tower = generate_tower(&case, 3, None, 4096).expect("three levels generate");

    let expect: [(u64, u64, u64); 3] = [(5, 5, 7), (11, 7, 11), (19, 13, 17)];
    for (level, &(d, p, q)) in tower.levels.iter().zip(&expect) {
        assert_eq!(level.d, BigUint::from(d));
        assert_eq!(level.p, BigUint::from(p));
        assert_eq!(level.q, BigUint::from(q));
    }

    let reports = tower.check_all().expect("constraint checks run");
    assert!(
        reports.iter().all(|r| r.passes()),
        "a required tower constraint failed"
    );

    let report =
        northcott_sandwich(&tower, &BigRational::zero(), PREC).expect("sandwich at weight 0");
    assert!(
        report.consistent,
        "sandwich bounds inconsistent with the predicted limit"
    );
    assert_eq!(report.prediction, Prediction::ConvergesTo(c.clone()));

    let floor = CertifiedReal::from_rational(&c, PREC);
    for (i, level) in report.per_level.iter().enumerate() {
        assert!(width_below(&level.lower, 1e-6) && width_below(&level.upper, 1e-6));
        assert!(
            level.lower.certainly_gt(&floor),
            "lower bound at level {} not certified above 1/20",
            i + 1
        );
    }
    for pair in report.per_level.windows(2) {
        assert!(
            pair[1].upper.certainly_lt(&pair[0].upper),
            "upper bounds must decrease strictly"
        );
    }

    // Each upper bound stays inside the envelope log(4)/d + log(d)/(2(d-1)) + 1/20.
    let one = BigUint::one();
    for (level, tower_level) in report.per_level.iter().zip(&tower.levels) {
        let d = u64::try_from(&tower_level.d).expect("generated degrees are small");
        let envelope = log_big_ratio(&BigUint::from(4u32), &one, PREC)
            .div_ratio(&BigInt::from(d), &BigInt::one(), PREC)
            .add(
                &log_big_ratio(&tower_level.d, &one, PREC).div_ratio(
                    &BigInt::from(2 * (d - 1)),
                    &BigInt::one(),
                    PREC,
                ),
            )
            .add(&floor);
        assert!(
            level.upper.certainly_lt(&envelope),
            "upper bound escapes its envelope at d = {d}"
        );
    }

    // Coarse reference pins for the six bounds.
    let pins = [(0.1207, 0.3892), (0.0570, 0.2180), (0.0532, 0.1491)];
    for (level, &(lo_pin, hi_pin)) in report.per_level.iter().zip(&pins) {
        let (l0, l1) = level.lower.to_f64_pair();
        let (u0, u1) = level.upper.to_f64_pair();
        assert!((0.5 * (l0 + l1) - lo_pin).abs() < 5e-5);
        assert!((0.5 * (u0 + u1) - hi_pin).abs() < 5e-5);
    }
    assert!(
        start.elapsed().as_secs() < 30,
        "tower generation exceeded its time budget"
    );
}

#[test]
fn growth_tower_upper_bounds_increase() {
    let case = WeightCase::new(CaseTag::C, None, None).expect("the full-weight case has no knobs");
    let tower = generate_tower(&case, 5, None, 4096).expect("five levels generate");

    let expect: [(u64, u64); 5] = [(5, 7), (11, 13), (23, 29), (47, 53), (97, 101)];
    for (level, &(p, q)) in tower.levels.iter().zip(&expect) {
        assert_eq!(level.d, level.p, "degrees track the ramified prime");
        assert_eq!(level.p, BigUint::from(p));
        assert_eq!(level.q, BigUint::from(q));
    }
    let reports = tower.check_all().expect("constraint checks run");
    assert!(reports.iter().all(|r| r.passes()));

    let report =
        northcott_sandwich(&tower, &BigRational::one(), PREC).expect("sandwich at weight 1");
    assert!(report.consistent);
    assert_eq!(report.prediction, Prediction::DivergesToInfinity);
    for (level, &(_, q)) in report.per_level.iter().zip(&expect) {
        assert_eq!(
            level.upper_exact,
            Some(ExactLog::new(BigUint::from(q), BigUint::one())),
            "upper bound at full weight is log q"
        );
    }
    for pair in report.per_level.windows(2) {
        assert!(
            pair[0].upper.certainly_lt(&pair[1].upper),
            "upper bounds must increase strictly"
        );
    }
}

#[test]
fn interval_classification_is_coherent() {
    let mut cases: Vec<WeightCase> = Vec::new();
    for c in [ratio(1, 20), ratio(1, 1), ratio(2, 1)] {
        cases.push(WeightCase::new(CaseTag::A, Some(c), None).unwrap());
    }
    for g in [ratio(0, 1), ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
        cases.push(WeightCase::new(CaseTag::B1, None, Some(g)).unwrap());
    }
    for g in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
        for c in [ratio(1, 20), ratio(3, 1)] {
            cases.push(WeightCase::new(CaseTag::B2, Some(c), Some(g.clone())).unwrap());
        }
        cases.push(WeightCase::new(CaseTag::B3, None, Some(g)).unwrap());
    }
    cases.push(WeightCase::new(CaseTag::C, None, None).unwrap());

    for case in &cases {
        let cls = classify_intervals(case);
        assert!(
            cls.i_n.subset_of(&cls.i_b),
            "boundedness must not be rarer than finiteness for case {:?}",
            case.tag()
        );
        assert_eq!(
            cls.i_n.infimum(),
            cls.i_b.infimum(),
            "interval infima must agree for case {:?}",
            case.tag()
        );
        if matches!(case.tag(), CaseTag::A | CaseTag::B2) {
            let c = case.c().expect("cases A and B2 carry c").clone();
            assert_eq!(cls.nor, NorValue::Finite(c));
        }
    }
}

#[test]
fn mahler_measure_reference_values() {
    let golden = IntPolynomial::new(vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]);
    let lm = log_mahler(&golden, PREC).expect("nonzero polynomial");
    let lo = CertifiedReal::from_rational(&ratio(4_812_108, 10_000_000), PREC);
    let hi = CertifiedReal::from_rational(&ratio(4_812_128, 10_000_000), PREC);
    assert!(
        lm.certainly_gt(&lo) && lm.certainly_lt(&hi),
        "log Mahler of x^2 - x - 1 out of range: {lm}"
    );

    let binomial = IntPolynomial::new(vec![
        BigInt::from(-5),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::from(7),
    ]);
    let lm7 = log_mahler(&binomial, PREC).expect("nonzero polynomial");
    let diff = lm7.sub(&log_big_ratio(&BigUint::from(7u32), &BigUint::one(), PREC));
    let eps = CertifiedReal::from_rational(&ratio(1, 1_000_000_000), PREC);
    assert!(
        diff.certainly_lt(&eps) && diff.certainly_gt(&eps.neg()),
        "log Mahler of 7x^5 - 5 must equal log 7 to within 1e-9"
    );
}

#[test]
fn negative_weight_heights_collapse_and_chain_bound_holds() {
    let gamma = ratio(-1, 2);
    let b = RadicalRational::new(BigUint::from(5u32), BigUint::from(7u32), 5).unwrap();
    let rows = demo_nonpositive(&gamma, 6, &b, PREC).expect("demonstration runs");
    assert_eq!(rows.len(), 6);

    let log2v = log2(PREC + 16);
    let milli = CertifiedReal::from_rational(&ratio(1, 1000), PREC);
    for row in &rows {
        assert_eq!(row.h_gamma_a.degree, 3u32.pow(row.n));
        // h_gamma(2^(1/3^n)) = log(2) * 3^(-3n/2).
        let expo = BigRational::new(BigInt::from(-3 * i64::from(row.n)), BigInt::from(2));
        let scale = pow_rational(&BigUint::from(3u32), &BigUint::one(), &expo, PREC + 16);
        let rhs = log2v.mul(&scale);
        assert!(
            overlap(&row.h_gamma_a.enclosure, &rhs),
            "collapse law violated at n = {}",
            row.n
        );
        assert!(width_below(&row.h_gamma_a.enclosure, 1e-10));
        if row.n % 2 == 0 {
            let div = BigUint::from(3u32).pow(3 * row.n / 2);
            assert_eq!(
                row.h_gamma_a.exact,
                Some(ExactLog::new(BigUint::from(2u32), div)),
                "even levels have an exact symbolic value"
            );
        }
        if row.n >= 4 {
            assert!(
                row.h_gamma_a.enclosure.certainly_lt(&milli),
                "height above 1/1000 at n = {}",
                row.n
            );
        }
        assert!(
            row.chain_holds,
            "chain inequality not certified at n = {}",
            row.n
        );
    }
    for pair in rows.windows(2) {
        assert!(
            pair[1]
                .h_gamma_a
                .enclosure
                .certainly_lt(&pair[0].h_gamma_a.enclosure),
            "weighted heights must decrease strictly"
        );
    }

    // Re-derive the chain bound deg(b)^(1/2) (h(b) deg(a)^(-1/2) + h_gamma(a))
    // from scratch and certify the product height sits strictly below it.
    let h_b = b.height().to_certified(PREC + 16);
    let sqrt5 = pow_rational(&BigUint::from(5u32), &BigUint::one(), &ratio(1, 2), PREC + 16);
    for row in &rows {
        let half_neg_n = BigRational::new(BigInt::from(-i64::from(row.n)), BigInt::from(2));
        let deg_a_pow = pow_rational(&BigUint::from(3u32), &BigUint::one(), &half_neg_n, PREC + 16);
        let bound = sqrt5.mul(&h_b.mul(&deg_a_pow).add(&row.h_gamma_a.enclosure));
        assert!(
            row.h_gamma_product.enclosure.certainly_lt(&bound),
            "product height must sit below the chain bound at n = {}",
            row.n
        );
    }
}

#[test]
fn log_exp_round_trips_never_violate_containment() {
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_0009);
    for _ in 0..5000 {
        let num = rng.gen_range(1u64..=1_000_000);
        let den = rng.gen_range(1u64..=1_000_000);
        let x = BigRational::new(BigInt::from(num), BigInt::from(den));
        let forward = exp_interval(&log_interval(&x, 64), 64);
        assert!(forward.contains_rational(&x), "exp(log x) lost {x}");
    }
    for _ in 0..5000 {
        let k = rng.gen_range(-6000i64..=6000);
        let t = BigRational::new(BigInt::from(k), BigInt::from(1000));
        let point = CertifiedReal::from_rational(&t, 64);
        let back = log_certified(&exp_interval(&point, 64), 64);
        assert!(back.contains_rational(&t), "log(exp t) lost {t}");
    }
}
