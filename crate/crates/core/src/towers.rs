//! Tower construction over the fixed base field.
//!
//! A tower is a sequence of levels, each adding one radical generator of
//! prime degree `d` built from a prime pair `(p, q)`: the level-`i`
//! generator is a root of `x^d - p*q^(d-1)`. The weight case fixes the
//! shape of the target height function `f` and thereby the admissible
//! windows for `d`, `p`, `q`. Everything numeric here is certified: each
//! inequality is decided by refining dyadic enclosures of both sides until
//! they separate, or reported as undecidable at the precision cap.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::logexp::{
    certified_less, exp_interval, log2, log_big_ratio, pow_rational, PrecisionLadder,
};
use crate::exactnum::primes::{is_prime, next_prime_in};
use crate::exactnum::CertifiedReal;
use crate::heights::RadicalRational;

/// The five shapes of target height function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `f(d) = d*log(d)/(2(d-1)) + c*d`; conclusions are stated at weight 0.
    A,
    /// `f(d) = 1/log(d)`, decaying.
    B1,
    /// `f(d) = c`, constant.
    B2,
    /// `f(d) = log(d)`, growing.
    B3,
    /// Degrees equal to the level primes themselves; no thresholds.
    C,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::A => "A",
            CaseTag::B1 => "B1",
            CaseTag::B2 => "B2",
            CaseTag::B3 => "B3",
            CaseTag::C => "C",
        }
    }

    pub fn parse(s: &str) -> Result<CaseTag> {
        match s {
            "A" => Ok(CaseTag::A),
            "B1" => Ok(CaseTag::B1),
            "B2" => Ok(CaseTag::B2),
            "B3" => Ok(CaseTag::B3),
            "C" => Ok(CaseTag::C),
            other => Err(Error::Parse(format!("unknown case tag {other:?}"))),
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A weight case: the tag plus its parameters, validated per case.
///
/// * `A`: requires `c > 0`; the weight is pinned to `gamma = 0` because the
///   case-A conclusion lives at weight zero.
/// * `B1`: `gamma` in `[0, 1)`, default `0`; no `c`.
/// * `B2`: `gamma` in `(0, 1)` required; `c > 0` required.
/// * `B3`: `gamma` in `(0, 1)` required; no `c`.
/// * `C`: `gamma` is pinned to `1`; no `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightCase {
    tag: CaseTag,
    c: Option<BigRational>,
    gamma: BigRational,
}

impl WeightCase {
    pub fn new(
        tag: CaseTag,
        c: Option<BigRational>,
        gamma: Option<BigRational>,
    ) -> Result<WeightCase> {
        let in_unit = |g: &BigRational, closed_left: bool| {
            let lo_ok = if closed_left {
                !g.is_negative()
            } else {
                g.is_positive()
            };
            lo_ok && *g < BigRational::one()
        };
        let gamma = match tag {
            CaseTag::A => {
                let g = gamma.unwrap_or_else(BigRational::zero);
                if !g.is_zero() {
                    return Err(Error::InvalidArgument(
                        "case A states its conclusion at weight 0; gamma must be 0".into(),
                    ));
                }
                g
            }
            CaseTag::B1 => {
                let g = gamma.unwrap_or_else(BigRational::zero);
                if !in_unit(&g, true) {
                    return Err(Error::InvalidArgument(
                        "case B1 needs gamma in [0, 1)".into(),
                    ));
                }
                g
            }
            CaseTag::B2 | CaseTag::B3 => {
                let g = gamma.ok_or_else(|| {
                    Error::InvalidArgument(format!("case {tag} needs an explicit gamma in (0, 1)"))
                })?;
                if !in_unit(&g, false) {
                    return Err(Error::InvalidArgument(format!(
                        "case {tag} needs gamma in (0, 1)"
                    )));
                }
                g
            }
            CaseTag::C => {
                let g = gamma.unwrap_or_else(BigRational::one);
                if !g.is_one() {
                    return Err(Error::InvalidArgument(
                        "case C is the weight-1 construction; gamma must be 1".into(),
                    ));
                }
                g
            }
        };
        let c = match tag {
            CaseTag::A | CaseTag::B2 => {
                let c = c.ok_or_else(|| {
                    Error::InvalidArgument(format!("case {tag} needs a constant c > 0"))
                })?;
                if !c.is_positive() {
                    return Err(Error::InvalidArgument(format!(
                        "case {tag} needs a constant c > 0"
                    )));
                }
                Some(c)
            }
            _ => {
                if c.is_some() {
                    return Err(Error::InvalidArgument(format!(
                        "case {tag} takes no constant c"
                    )));
                }
                None
            }
        };
        Ok(WeightCase { tag, c, gamma })
    }

    pub fn tag(&self) -> CaseTag {
        self.tag
    }

    pub fn c(&self) -> Option<&BigRational> {
        self.c.as_ref()
    }

    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }

    /// Enclosure of the target value `f(d)`. Case C has no target function.
    pub fn f_eval(&self, d: &BigUint, prec: u32) -> Result<CertifiedReal> {
        if *d < BigUint::from(2u32) {
            return Err(Error::InvalidArgument("f is evaluated at d >= 2".into()));
        }
        let w = prec + 16;
        match self.tag {
            CaseTag::A => {
                // d*log(d)/(2(d-1)) + c*d
                let di = BigInt::from(d.clone());
                let lg = log_big_ratio(d, &BigUint::one(), w);
                let ratio = BigRational::new(di.clone(), 2 * (&di - 1));
                let main = lg.mul_rational(&ratio, w);
                let c = self.c.as_ref().expect("case A carries c");
                let linear = CertifiedReal::from_rational(&(c.clone() * ratio_from_biguint(d)), w);
                Ok(main.add(&linear).compress(prec))
            }
            CaseTag::B1 => {
                let lg = log_big_ratio(d, &BigUint::one(), w);
                Ok(lg.recip(w).compress(prec))
            }
            CaseTag::B2 => {
                let c = self.c.as_ref().expect("case B2 carries c");
                Ok(CertifiedReal::from_rational(c, prec))
            }
            CaseTag::B3 => Ok(log_big_ratio(d, &BigUint::one(), prec)),
            CaseTag::C => Err(Error::InvalidArgument(
                "case C has no target function f".into(),
            )),
        }
    }

    /// Exponent of the level threshold: the threshold is `exp` of this.
    /// Case A uses `f(d)` directly; cases B use `f(d) * d^(1-gamma)`.
    pub fn threshold_exponent(&self, d: &BigUint, prec: u32) -> Result<CertifiedReal> {
        let w = prec + 16;
        match self.tag {
            CaseTag::A => self.f_eval(d, prec),
            CaseTag::B1 | CaseTag::B2 | CaseTag::B3 => {
                let f = self.f_eval(d, w)?;
                let expo = BigRational::one() - &self.gamma;
                let scale = pow_rational(d, &BigUint::one(), &expo, w);
                Ok(f.mul(&scale).compress(prec))
            }
            CaseTag::C => Err(Error::InvalidArgument("case C has no thresholds".into())),
        }
    }

    /// The prime window for a level of degree `d` is `[T, 2T)` with this `T`.
    pub fn threshold(&self, d: &BigUint, prec: u32) -> Result<CertifiedReal> {
        let e = self.threshold_exponent(d, prec + 8)?;
        Ok(exp_interval(&e, prec))
    }

    /// Left side of the case-B positivity requirement
    /// `d^gamma * log(d) / (2(d-1)) < f(d)`.
    fn positivity_lhs(&self, d: &BigUint, prec: u32) -> CertifiedReal {
        let w = prec + 16;
        let dg = pow_rational(d, &BigUint::one(), &self.gamma, w);
        let lg = log_big_ratio(d, &BigUint::one(), w);
        let di = BigInt::from(d.clone());
        dg.mul(&lg)
            .div_ratio(&(2 * (&di - 1)), &BigInt::one(), w)
            .compress(prec)
    }
}

impl fmt::Display for WeightCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {} (gamma = {})", self.tag, self.gamma)?;
        if let Some(c) = &self.c {
            write!(f, " (c = {c})")?;
        }
        Ok(())
    }
}

fn ratio_from_biguint(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// One tower level: the degree prime and the prime pair feeding the
/// generator polynomial `x^d - p*q^(d-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerLevel {
    pub d: BigUint,
    pub p: BigUint,
    pub q: BigUint,
}

impl TowerLevel {
    pub fn new(d: u64, p: u64, q: u64) -> TowerLevel {
        TowerLevel {
            d: BigUint::from(d),
            p: BigUint::from(p),
            q: BigUint::from(q),
        }
    }

    /// The generator's minimal-polynomial candidate `x^d - p*q^(d-1)`.
    pub fn generator_polynomial(&self) -> crate::polyalg::IntPolynomial {
        let d = self.d.to_u32().expect("level degree fits u32");
        let m = BigInt::from(&self.p * self.q.pow(d - 1));
        let lead = crate::polyalg::IntPolynomial::monomial(BigInt::one(), d as usize);
        lead.sub(&crate::polyalg::IntPolynomial::constant(m))
    }
}

/// The fixed base field: the union of `Q(2^(1/3^j))` over `j >= 1`. Its
/// ramification is supported at 2 and 3, so tower primes must avoid both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BaseField;

impl BaseField {
    pub fn excluded_primes(&self) -> [BigUint; 2] {
        [BigUint::from(2u32), BigUint::from(3u32)]
    }

    pub fn allows_prime(&self, p: &BigUint) -> bool {
        self.excluded_primes().iter().all(|e| e != p)
    }

    /// The `j`-th generator `2^(1/3^j)` of the base-field chain.
    pub fn generator(&self, j: u32) -> RadicalRational {
        let deg = 3u32.checked_pow(j).expect("3^j fits u32");
        RadicalRational::new(BigUint::from(2u32), BigUint::one(), deg)
            .expect("2^(1/3^j) is a valid radical")
    }

    /// Weights at which the base field itself has infima bounded away from
    /// zero: the open ray above 1.
    pub fn nonzero_infimum_weights(&self) -> IntervalDescriptor {
        IntervalDescriptor::open(BigRational::one())
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Q(2^(1/3^j) : j >= 1)")
    }
}

/// A weight case together with the chosen levels over the fixed base field.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerSpec {
    pub case: WeightCase,
    pub levels: Vec<TowerLevel>,
    pub base_field: BaseField,
}

impl TowerSpec {
    pub fn new(case: WeightCase, levels: Vec<TowerLevel>) -> Result<TowerSpec> {
        if levels.is_empty() {
            return Err(Error::InvalidArgument("a tower needs at least one level".into()));
        }
        for lv in &levels {
            if lv.d < BigUint::from(2u32) {
                return Err(Error::InvalidArgument("level degrees must be >= 2".into()));
            }
            if lv.d.to_u32().is_none() {
                return Err(Error::InvalidArgument("level degree too large".into()));
            }
        }
        Ok(TowerSpec {
            case,
            levels,
            base_field: BaseField,
        })
    }

    /// Certified constraint report for level `i` (0-based).
    pub fn check_level(&self, i: usize) -> Result<ConstraintReport> {
        check_level_constraints(self, i)
    }

    /// Runs every level's checks; `Ok(reports)` even when some fail, `Err`
    /// only when a comparison is undecidable at the cap.
    pub fn check_all(&self) -> Result<Vec<ConstraintReport>> {
        (0..self.levels.len()).map(|i| self.check_level(i)).collect()
    }

    /// Serializes to the key-value text format. Round-trips bit-exactly
    /// through `from_text`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "case = {}", self.case.tag);
        let _ = writeln!(out, "gamma = {}", self.case.gamma);
        if let Some(c) = &self.case.c {
            let _ = writeln!(out, "c = {c}");
        }
        let _ = writeln!(out, "levels = {}", self.levels.len());
        for (i, lv) in self.levels.iter().enumerate() {
            let _ = writeln!(out, "level {}: d = {}, p = {}, q = {}", i + 1, lv.d, lv.p, lv.q);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<TowerSpec> {
        let mut tag: Option<CaseTag> = None;
        let mut gamma: Option<BigRational> = None;
        let mut c: Option<BigRational> = None;
        let mut declared: Option<usize> = None;
        let mut levels: Vec<TowerLevel> = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("level ") {
                let (idx, fields) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("malformed level line {line:?}")))?;
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad level index in {line:?}")))?;
                if idx != levels.len() + 1 {
                    return Err(Error::Parse(format!(
                        "level lines out of order: saw {idx}, expected {}",
                        levels.len() + 1
                    )));
                }
                let mut d = None;
                let mut p = None;
                let mut q = None;
                for field in fields.split(',') {
                    let (key, val) = field
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("malformed field {field:?}")))?;
                    let val: BigUint = val
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer in {field:?}")))?;
                    match key.trim() {
                        "d" => d = Some(val),
                        "p" => p = Some(val),
                        "q" => q = Some(val),
                        other => {
                            return Err(Error::Parse(format!("unknown level field {other:?}")))
                        }
                    }
                }
                match (d, p, q) {
                    (Some(d), Some(p), Some(q)) => levels.push(TowerLevel { d, p, q }),
                    _ => return Err(Error::Parse(format!("level line {line:?} missing d/p/q"))),
                }
                continue;
            }
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed line {line:?}")))?;
            let val = val.trim();
            match key.trim() {
                "case" => tag = Some(CaseTag::parse(val)?),
                "gamma" => gamma = Some(parse_rational(val)?),
                "c" => c = Some(parse_rational(val)?),
                "levels" => {
                    declared = Some(
                        val.parse()
                            .map_err(|_| Error::Parse(format!("bad level count {val:?}")))?,
                    )
                }
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let tag = tag.ok_or_else(|| Error::Parse("missing case line".into()))?;
        if let Some(n) = declared {
            if n != levels.len() {
                return Err(Error::Parse(format!(
                    "declared {n} levels but found {}",
                    levels.len()
                )));
            }
        }
        let case = WeightCase::new(tag, c, gamma)?;
        TowerSpec::new(case, levels)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("bad rational {s:?}")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// One named inequality in a level report. `required` distinguishes the
/// gating conditions from informational ones that are reported but do not
/// decide validity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintCheck {
    pub name: String,
    pub holds: bool,
    pub required: bool,
}

/// All checks for one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintReport {
    pub level: usize,
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.holds || !c.required)
    }

    pub fn failed(&self) -> Vec<&ConstraintCheck> {
        self.checks
            .iter()
            .filter(|c| c.required && !c.holds)
            .collect()
    }

    fn push(&mut self, name: &str, holds: bool, required: bool) {
        self.checks.push(ConstraintCheck {
            name: name.to_string(),
            holds,
            required,
        });
    }
}

impl fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "level {}:", self.level + 1)?;
        for c in &self.checks {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            let kind = if c.required { "" } else { " (informational)" };
            writeln!(f, "  [{mark}] {}{kind}", c.name)?;
        }
        Ok(())
    }
}

/// Decides `a < b` where both sides are functions of precision. Escalates
/// through the default ladder; errs only when the cap cannot separate them.
fn cert_less<L, R>(mut lhs: L, mut rhs: R) -> Result<bool>
where
    L: FnMut(u32) -> Result<CertifiedReal>,
    R: FnMut(u32) -> Result<CertifiedReal>,
{
    let ladder = PrecisionLadder::default();
    let a0 = lhs(ladder.start)?;
    let b0 = rhs(ladder.start)?;
    let mut err: Option<Error> = None;
    let out = certified_less(&a0, &b0, &ladder, |prec| {
        match (lhs(prec), rhs(prec)) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                err = a.err().or(b.err());
                // Unseparable dummy: keeps the ladder running; the stored
                // error is surfaced below.
                (CertifiedReal::zero(), CertifiedReal::zero())
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    out
}

/// Certified per-level constraint report.
///
/// Required checks (the level is valid iff all hold):
/// * structural: `min(d_1, p_1) > 3` at the first level; `d`, `p`, `q`
///   strictly increasing afterwards; `p, q` avoid the base field's ramified
///   primes `{2, 3}`.
/// * window: `T <= p`, `p < q < 2p`, and `2p <= 4T` where `T` is the level
///   threshold (cases A and B; case C instead requires `d = p` and the
///   doubling gap `2 p_{i-1} < p_i`).
/// * positivity (cases B only): `d^gamma * log(d)/(2(d-1)) < f(d)`.
/// * gap (level `i >= 2`): `max(d_{i-1}, 4 f(d_{i-1})) < T_i` for case A,
///   `max(d_{i-1}, 4 T_{i-1}) < T_i` for cases B.
///
/// Informational checks (reported, never gating):
/// * `p exceeds previous q`: holds for generic towers but deliberately not
///   required; the canonical case-A tower reuses `p_2 = q_1 = 7`.
/// * case A `gap condition (strengthened)`: the variant with
///   `4 exp(f(d_{i-1}))` in place of `4 f(d_{i-1})`. Strictly stronger, and
///   the canonical case-A tower does not satisfy it.
pub fn check_level_constraints(spec: &TowerSpec, i: usize) -> Result<ConstraintReport> {
    let lv = spec
        .levels
        .get(i)
        .ok_or_else(|| Error::InvalidArgument(format!("no level {i}")))?;
    let case = &spec.case;
    let mut report = ConstraintReport {
        level: i,
        checks: Vec::new(),
    };
    let three = BigUint::from(3u32);
    let two = BigUint::from(2u32);

    report.push("d is prime", is_prime(&lv.d), true);
    report.push("p is prime", is_prime(&lv.p), true);
    report.push("q is prime", is_prime(&lv.q), true);
    if i == 0 {
        report.push("min(d_1, p_1) > 3", lv.d > three && lv.p > three, true);
    } else {
        let prev = &spec.levels[i - 1];
        report.push("d strictly increasing", lv.d > prev.d, true);
        report.push("p strictly increasing", lv.p > prev.p, true);
        report.push("q strictly increasing", lv.q > prev.q, true);
        report.push("p exceeds previous q", lv.p > prev.q, false);
    }
    report.push(
        "p avoids ramified primes {2, 3}",
        spec.base_field.allows_prime(&lv.p),
        true,
    );
    report.push(
        "q avoids ramified primes {2, 3}",
        spec.base_field.allows_prime(&lv.q),
        true,
    );
    report.push("p < q", lv.p < lv.q, true);
    report.push("q < 2p", lv.q < &two * &lv.p, true);

    if case.tag == CaseTag::C {
        report.push("d = p", lv.d == lv.p, true);
        if i > 0 {
            let prev = &spec.levels[i - 1];
            report.push("2 p_{i-1} < p_i", &two * &prev.p < lv.p, true);
        }
        return Ok(report);
    }

    // Window membership against the transcendental threshold T.
    let p_iv = CertifiedReal::from_biguint(&lv.p);
    let below = cert_less(|_| Ok(p_iv.clone()), |w| case.threshold(&lv.d, w))?;
    report.push("p at or above threshold", !below, true);
    let two_p = CertifiedReal::from_biguint(&(&two * &lv.p));
    let window_hi = cert_less(
        |_| Ok(two_p.clone()),
        |w| Ok(case.threshold(&lv.d, w)?.mul_int(&BigInt::from(4))),
    )?;
    report.push("2p within 4*threshold", window_hi, true);

    if matches!(case.tag, CaseTag::B1 | CaseTag::B2 | CaseTag::B3) {
        let pos = cert_less(
            |w| Ok(case.positivity_lhs(&lv.d, w)),
            |w| case.f_eval(&lv.d, w),
        )?;
        report.push("positivity d^g*log(d)/(2(d-1)) < f(d)", pos, true);
    }

    if i > 0 {
        let prev = &spec.levels[i - 1];
        let d_prev = CertifiedReal::from_biguint(&prev.d);
        match case.tag {
            CaseTag::A => {
                let printed = cert_less(
                    |w| {
                        let f_prev = case.f_eval(&prev.d, w)?;
                        Ok(d_prev.max_with(&f_prev.mul_int(&BigInt::from(4))))
                    },
                    |w| case.threshold(&lv.d, w),
                )?;
                report.push("gap condition (as printed)", printed, true);
                let strengthened = cert_less(
                    |w| {
                        let t_prev = case.threshold(&prev.d, w)?;
                        Ok(d_prev.max_with(&t_prev.mul_int(&BigInt::from(4))))
                    },
                    |w| case.threshold(&lv.d, w),
                )?;
                report.push("gap condition (strengthened)", strengthened, false);
            }
            _ => {
                let gap = cert_less(
                    |w| {
                        let t_prev = case.threshold(&prev.d, w)?;
                        Ok(d_prev.max_with(&t_prev.mul_int(&BigInt::from(4))))
                    },
                    |w| case.threshold(&lv.d, w),
                )?;
                report.push("gap condition", gap, true);
            }
        }
    }
    Ok(report)
}

/// Upper bound on how many candidate degrees / primes the greedy generator
/// will try for one slot before declaring itself stuck.
const SEARCH_BUDGET: u64 = 200_000;

/// Greedy deterministic tower generation: for each level take the smallest
/// admissible degree prime `d`, then the smallest prime `p` in `[T, 2T)`
/// compatible with monotonicity, then the smallest prime `q` in `(p, 2p)`
/// exceeding the previous `q`.
///
/// `d1_hint` starts the first degree search at the hinted value instead of
/// at 5. `max_bits` refuses levels whose threshold would exceed `2^max_bits`
/// (checked on the exponent, so the threshold itself is never materialized).
pub fn generate_tower(
    case: &WeightCase,
    level_count: usize,
    d1_hint: Option<&BigUint>,
    max_bits: u32,
) -> Result<TowerSpec> {
    if level_count == 0 {
        return Err(Error::InvalidArgument("level_count must be positive".into()));
    }
    let ladder = PrecisionLadder::default();
    let mut levels: Vec<TowerLevel> = Vec::new();
    let five = BigUint::from(5u32);
    let three = BigUint::from(3u32);
    let two = BigUint::from(2u32);

    for i in 0..level_count {
        if case.tag == CaseTag::C {
            // Degrees are the level primes themselves: p_1 >= 5, then the
            // smallest prime past the doubling gap.
            let start = match levels.last() {
                Some(prev) => &two * &prev.p + BigUint::one(),
                None => {
                    let hinted = d1_hint.cloned().unwrap_or_else(|| five.clone());
                    if hinted > five { hinted } else { five.clone() }
                }
            };
            let p = next_prime_at_least(&start, SEARCH_BUDGET).ok_or_else(|| {
                Error::GenerationStuck {
                    level: i,
                    reason: "no prime found past the doubling gap".into(),
                }
            })?;
            let q_floor = levels.last().map(|prev| prev.q.clone()).unwrap_or_default();
            let q = smallest_prime_between(&p, &(&two * &p), &q_floor).ok_or_else(|| {
                Error::GenerationStuck {
                    level: i,
                    reason: format!("no admissible prime q in ({p}, {})", &two * &p),
                }
            })?;
            levels.push(TowerLevel { d: p.clone(), p, q });
            continue;
        }

        // Smallest admissible degree prime: prime, above the previous degree
        // (or >= the hinted start at level 1), satisfying positivity (B) and
        // the gap condition against the previous level.
        let mut d_candidate = match levels.last() {
            Some(prev) => &prev.d + BigUint::one(),
            None => {
                let hinted = d1_hint.cloned().unwrap_or_else(|| five.clone());
                if hinted > five { hinted } else { five.clone() }
            }
        };
        let mut tried: u64 = 0;
        let d = loop {
            let Some(d) = next_prime_at_least(&d_candidate, SEARCH_BUDGET) else {
                return Err(Error::GenerationStuck {
                    level: i,
                    reason: "degree search exhausted".into(),
                });
            };
            tried += 1;
            if tried > SEARCH_BUDGET {
                return Err(Error::GenerationStuck {
                    level: i,
                    reason: "no degree satisfies the gap and positivity conditions".into(),
                });
            }
            if admissible_degree(case, &levels, &d)? {
                break d;
            }
            d_candidate = &d + BigUint::one();
        };

        // Refuse absurd thresholds before exponentiating.
        let exponent_cap = {
            let w = 96;
            log2(w).mul_int(&BigInt::from(max_bits))
        };
        let exp_iv = case.threshold_exponent(&d, 96)?;
        if exp_iv.certainly_gt(&exponent_cap) {
            return Err(Error::ThresholdTooLarge { max_bits });
        }

        let p_floor = match levels.last() {
            Some(prev) => {
                if prev.p > three {
                    prev.p.clone()
                } else {
                    three.clone()
                }
            }
            None => three.clone(),
        };
        let t0 = case.threshold(&d, ladder.start)?;
        let t2 = t0.mul_int(&BigInt::from(2));
        let p = next_prime_in(&t0, &t2, &p_floor, &ladder, |w| {
            let t = case
                .threshold(&d, w)
                .expect("threshold already evaluated once at this degree");
            let t2 = t.mul_int(&BigInt::from(2));
            (t, t2)
        })
        .map_err(|e| match e {
            Error::NoPrimeInRange { lo, hi } => Error::GenerationStuck {
                level: i,
                reason: format!("no admissible prime p in [{lo}, {hi})"),
            },
            Error::UndecidableBoundary { cap } => Error::UndecidableAtCap { cap },
            other => other,
        })?;

        let q_floor = levels.last().map(|prev| prev.q.clone()).unwrap_or_default();
        let q = smallest_prime_between(&p, &(&two * &p), &q_floor).ok_or_else(|| {
            Error::GenerationStuck {
                level: i,
                reason: format!("no admissible prime q in ({p}, {})", &two * &p),
            }
        })?;
        levels.push(TowerLevel { d, p, q });
    }

    let spec = TowerSpec::new(case.clone(), levels)?;
    debug_assert!(spec.check_all().map_or(true, |rs| rs.iter().all(|r| r.passes())));
    Ok(spec)
}

/// Whether degree `d` is admissible as the next level degree: positivity
/// for the B cases, and the gap condition against the previous level.
fn admissible_degree(case: &WeightCase, levels: &[TowerLevel], d: &BigUint) -> Result<bool> {
    if matches!(case.tag, CaseTag::B1 | CaseTag::B2 | CaseTag::B3) {
        let pos = cert_less(|w| Ok(case.positivity_lhs(d, w)), |w| case.f_eval(d, w))?;
        if !pos {
            return Ok(false);
        }
    }
    let Some(prev) = levels.last() else {
        return Ok(true);
    };
    let d_prev = CertifiedReal::from_biguint(&prev.d);
    let gap = match case.tag {
        CaseTag::A => cert_less(
            |w| {
                let f_prev = case.f_eval(&prev.d, w)?;
                Ok(d_prev.max_with(&f_prev.mul_int(&BigInt::from(4))))
            },
            |w| case.threshold(d, w),
        )?,
        _ => cert_less(
            |w| {
                let t_prev = case.threshold(&prev.d, w)?;
                Ok(d_prev.max_with(&t_prev.mul_int(&BigInt::from(4))))
            },
            |w| case.threshold(d, w),
        )?,
    };
    Ok(gap)
}

/// Smallest prime `>= start`, scanning at most `budget` candidates.
fn next_prime_at_least(start: &BigUint, budget: u64) -> Option<BigUint> {
    let mut n = start.clone();
    if n < BigUint::from(2u32) {
        n = BigUint::from(2u32);
    }
    for _ in 0..budget {
        if is_prime(&n) {
            return Some(n);
        }
        n += BigUint::one();
    }
    None
}

/// Smallest prime strictly between `lo` and `hi` that also exceeds `floor`.
fn smallest_prime_between(lo: &BigUint, hi: &BigUint, floor: &BigUint) -> Option<BigUint> {
    let mut n = lo + BigUint::one();
    if &n <= floor {
        n = floor + BigUint::one();
    }
    while n < *hi {
        if is_prime(&n) {
            return Some(n);
        }
        n += BigUint::one();
    }
    None
}

/// A right-unbounded interval of weights, described by its left endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalDescriptor {
    pub endpoint: LeftEndpoint,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeftEndpoint {
    NegInfinity,
    Finite(BigRational),
}

impl IntervalDescriptor {
    pub fn closed(endpoint: BigRational) -> IntervalDescriptor {
        IntervalDescriptor {
            endpoint: LeftEndpoint::Finite(endpoint),
            closed: true,
        }
    }

    pub fn open(endpoint: BigRational) -> IntervalDescriptor {
        IntervalDescriptor {
            endpoint: LeftEndpoint::Finite(endpoint),
            closed: false,
        }
    }

    pub fn all_weights() -> IntervalDescriptor {
        IntervalDescriptor {
            endpoint: LeftEndpoint::NegInfinity,
            closed: false,
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        match &self.endpoint {
            LeftEndpoint::NegInfinity => true,
            LeftEndpoint::Finite(e) => {
                if self.closed {
                    x >= e
                } else {
                    x > e
                }
            }
        }
    }

    /// Subset test for right-unbounded intervals: larger endpoint (or equal
    /// with a no-weaker openness) means contained.
    pub fn subset_of(&self, other: &IntervalDescriptor) -> bool {
        match (&self.endpoint, &other.endpoint) {
            (_, LeftEndpoint::NegInfinity) => true,
            (LeftEndpoint::NegInfinity, LeftEndpoint::Finite(_)) => false,
            (LeftEndpoint::Finite(a), LeftEndpoint::Finite(b)) => {
                a > b || (a == b && (other.closed || !self.closed))
            }
        }
    }

    pub fn infimum(&self) -> Option<&BigRational> {
        match &self.endpoint {
            LeftEndpoint::NegInfinity => None,
            LeftEndpoint::Finite(e) => Some(e),
        }
    }
}

impl fmt::Display for IntervalDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.endpoint {
            LeftEndpoint::NegInfinity => f.write_str("(-inf, inf)"),
            LeftEndpoint::Finite(e) => {
                let bracket = if self.closed { '[' } else { '(' };
                write!(f, "{bracket}{e}, inf)")
            }
        }
    }
}

/// The liminf of level infima at the case's own weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NorValue {
    Finite(BigRational),
    Infinite,
    Zero,
}

impl fmt::Display for NorValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NorValue::Finite(c) => write!(f, "{c}"),
            NorValue::Infinite => f.write_str("inf"),
            NorValue::Zero => f.write_str("0"),
        }
    }
}

/// What each case's tower certifies: the weight ranges with positive
/// infimum (`i_b`) and with the Northcott property (`i_n`), the liminf
/// value at the case's own weight, and the base-field range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalClassification {
    pub i_b: IntervalDescriptor,
    pub i_n: IntervalDescriptor,
    pub nor: NorValue,
    pub base_field_i_n: IntervalDescriptor,
}

/// The interval conclusions per case:
///
/// * `A`: `I_B = [0, inf)`, `I_N = (0, inf)`, liminf at weight 0 equal to `c`.
/// * `B1`: both open at `gamma`; the liminf at `gamma` itself is 0.
/// * `B2`: `I_B` closed, `I_N` open at `gamma`; liminf `c`.
/// * `B3`: both closed at `gamma`; liminf infinite.
/// * `C`: both closed at 1; liminf infinite.
///
/// The base field contributes `I_N(K) = (1, inf)` in every case.
pub fn classify_intervals(case: &WeightCase) -> IntervalClassification {
    let g = case.gamma.clone();
    let (i_b, i_n, nor) = match case.tag {
        CaseTag::A => (
            IntervalDescriptor::closed(g.clone()),
            IntervalDescriptor::open(g),
            NorValue::Finite(case.c.clone().expect("case A carries c")),
        ),
        CaseTag::B1 => (
            IntervalDescriptor::open(g.clone()),
            IntervalDescriptor::open(g),
            NorValue::Zero,
        ),
        CaseTag::B2 => (
            IntervalDescriptor::closed(g.clone()),
            IntervalDescriptor::open(g),
            NorValue::Finite(case.c.clone().expect("case B2 carries c")),
        ),
        CaseTag::B3 => (
            IntervalDescriptor::closed(g.clone()),
            IntervalDescriptor::closed(g),
            NorValue::Infinite,
        ),
        CaseTag::C => (
            IntervalDescriptor::closed(g.clone()),
            IntervalDescriptor::closed(g),
            NorValue::Infinite,
        ),
    };
    IntervalClassification {
        i_b,
        i_n,
        nor,
        base_field_i_n: BaseField.nonzero_infimum_weights(),
    }
}
