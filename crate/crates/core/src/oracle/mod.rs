//! An independent height oracle for radical expressions.
//!
//! Expressions are sums or products of at most two terms, each a rational
//! multiple of a real radical `(m/n)^(1/D)`. The oracle recomputes heights
//! from first principles, with no use of the closed-form height formulas:
//! it finds the expression's minimal polynomial (exactly where radical
//! arithmetic suffices, otherwise by certified conjugate products) and
//! takes the height from the polynomial's Mahler measure. Agreement with
//! the symbolic heights elsewhere in the crate is then meaningful
//! evidence rather than circular reasoning.

mod orbit;
mod trig;

use crate::error::{Error, Result};
use crate::exactnum::interval::CertifiedReal;
use crate::exactnum::logexp::{certified_less, pow_rational, PrecisionLadder};
use crate::heights::RadicalRational;
use crate::northcott::corollary_lower_bound;
use crate::polyalg::{height_from_minpoly, resultant_bivariate, IntPolynomial};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use orbit::SumParts;
use std::fmt;

/// Default bound on the conjugate count (the product of the leaf root
/// degrees) an expression may carry before the oracle refuses it.
pub const DEFAULT_CONJUGATE_CAP: u64 = 256;

/// One term of an expression: `coeff * radical`, with either side
/// optional in the source grammar.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    coeff: BigRational,
    radical: Option<RadicalRational>,
}

impl Term {
    pub fn rational(coeff: BigRational) -> Term {
        Term { coeff, radical: None }
    }

    pub fn radical(r: RadicalRational) -> Term {
        Term { coeff: BigRational::one(), radical: Some(r) }
    }

    pub fn scaled(coeff: BigRational, r: RadicalRational) -> Term {
        Term { coeff, radical: Some(r) }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radical_part(&self) -> Option<&RadicalRational> {
        self.radical.as_ref()
    }

    /// Enclosure of the term's real value.
    fn value(&self, prec: u32) -> CertifiedReal {
        match &self.radical {
            None => CertifiedReal::from_rational(&self.coeff, prec),
            Some(r) => {
                let expo = BigRational::new(BigInt::one(), BigInt::from(r.root_deg()));
                pow_rational(r.num(), r.den(), &expo, prec).mul_rational(&self.coeff, prec)
            }
        }
    }

    fn conjugate_count(&self) -> u64 {
        self.radical.as_ref().map_or(1, |r| u64::from(r.root_deg()))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radical {
            None => write!(f, "{}", self.coeff),
            Some(r) => {
                if !self.coeff.is_one() {
                    write!(f, "{} * ", self.coeff)?;
                }
                if r.den().is_one() {
                    write!(f, "({})^(1/{})", r.num(), r.root_deg())
                } else {
                    write!(f, "({}/{})^(1/{})", r.num(), r.den(), r.root_deg())
                }
            }
        }
    }
}

/// A radical expression: a single term, or two terms joined by `+` or
/// `*`. At most two distinct radicals ever appear, which keeps conjugate
/// enumeration tractable.
#[derive(Debug, Clone, PartialEq)]
pub enum RadicalExpr {
    Term(Term),
    Sum(Term, Term),
    Product(Term, Term),
}

impl RadicalExpr {
    /// Parses the grammar
    ///
    /// ```text
    /// rational ::= INT | INT "/" INT
    /// radical  ::= "(" rational ")" "^(1/" INT ")"
    /// term     ::= rational | radical | rational "*" radical
    /// expr     ::= term (("+" | "*") term)?
    /// ```
    pub fn parse(s: &str) -> Result<RadicalExpr> {
        let mut sc = Scanner::new(s);
        let first = sc.parse_term()?;
        sc.skip_ws();
        let expr = match sc.peek() {
            None => RadicalExpr::Term(first),
            Some(b'+') => {
                sc.bump();
                RadicalExpr::Sum(first, sc.parse_term()?)
            }
            Some(b'*') => {
                sc.bump();
                RadicalExpr::Product(first, sc.parse_term()?)
            }
            Some(c) => return Err(sc.err(&format!("expected '+' or '*', found {:?}", char::from(c)))),
        };
        sc.skip_ws();
        if sc.peek().is_some() {
            return Err(sc.err("trailing input after expression"));
        }
        Ok(expr)
    }

    /// Product of the leaf root degrees: the number of candidate
    /// conjugates the oracle may have to consider.
    pub fn conjugate_count(&self) -> u64 {
        match self {
            RadicalExpr::Term(t) => t.conjugate_count(),
            RadicalExpr::Sum(a, b) | RadicalExpr::Product(a, b) => {
                a.conjugate_count() * b.conjugate_count()
            }
        }
    }

    /// Enclosure of the expression's real value.
    pub fn evaluate(&self, prec: u32) -> CertifiedReal {
        match self {
            RadicalExpr::Term(t) => t.value(prec),
            RadicalExpr::Sum(a, b) => a.value(prec).add(&b.value(prec)).compress(prec),
            RadicalExpr::Product(a, b) => a.value(prec).mul(&b.value(prec)).compress(prec),
        }
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadicalExpr::Term(t) => write!(f, "{t}"),
            RadicalExpr::Sum(a, b) => write!(f, "{a} + {b}"),
            RadicalExpr::Product(a, b) => write!(f, "{a} * {b}"),
        }
    }
}

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Scanner<'a> {
        Scanner { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src.as_bytes().get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", char::from(c))))
        }
    }

    fn parse_digits(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        self.src[start..self.pos]
            .parse::<BigUint>()
            .map_err(|_| self.err("bad integer"))
    }

    fn parse_rational(&mut self) -> Result<(BigUint, BigUint)> {
        let num = self.parse_digits()?;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.bump();
            let den = self.parse_digits()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok((num, den))
        } else {
            Ok((num, BigUint::one()))
        }
    }

    /// Parses `"(" rational ")^(1/" INT ")"`; the caller has peeked `(`.
    fn parse_radical(&mut self) -> Result<RadicalRational> {
        self.expect(b'(')?;
        let (num, den) = self.parse_rational()?;
        self.expect(b')')?;
        self.expect(b'^')?;
        self.expect(b'(')?;
        self.skip_ws();
        if self.peek() != Some(b'1') {
            return Err(self.err("root must be written as 1/D"));
        }
        self.bump();
        self.expect(b'/')?;
        let deg = self.parse_digits()?;
        self.expect(b')')?;
        let deg = u32::try_from(&deg).map_err(|_| self.err("root degree too large"))?;
        RadicalRational::new(num, den, deg)
    }

    fn parse_term(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => Ok(Term::radical(self.parse_radical()?)),
            Some(b) if b.is_ascii_digit() => {
                let (num, den) = self.parse_rational()?;
                let coeff = BigRational::new(BigInt::from(num), BigInt::from(den));
                let save = self.pos;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.bump();
                    self.skip_ws();
                    if self.peek() == Some(b'(') {
                        return Ok(Term::scaled(coeff, self.parse_radical()?));
                    }
                    // A `*` followed by a rational is an expression-level
                    // product, not part of this term.
                    self.pos = save;
                }
                Ok(Term::rational(coeff))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Value-level shape after folding rational radicals into coefficients
/// and commensurable radicals into each other.
enum Normal {
    Rational(BigRational),
    Single { coeff: BigRational, rad: RadicalRational },
    Shifted { coeff: BigRational, rad: RadicalRational, shift: BigRational },
    Pair(SumParts),
}

/// Folds a term to `(coeff, radical)` with the radical genuinely
/// irrational and the coefficient nonzero, or no radical at all.
fn fold(t: &Term) -> (BigRational, Option<RadicalRational>) {
    match &t.radical {
        None => (t.coeff.clone(), None),
        Some(r) => {
            if t.coeff.is_zero() {
                (BigRational::zero(), None)
            } else if r.root_deg() == 1 {
                let v = BigRational::new(BigInt::from(r.num().clone()), BigInt::from(r.den().clone()));
                (&t.coeff * v, None)
            } else {
                (t.coeff.clone(), Some(r.clone()))
            }
        }
    }
}

fn single_normal(parts: (BigRational, Option<RadicalRational>)) -> Normal {
    match parts {
        (c, None) => Normal::Rational(c),
        (c, Some(r)) => Normal::Single { coeff: c, rad: r },
    }
}

fn normalize(e: &RadicalExpr) -> Normal {
    match e {
        RadicalExpr::Term(t) => single_normal(fold(t)),
        RadicalExpr::Product(t1, t2) => {
            let (c1, o1) = fold(t1);
            let (c2, o2) = fold(t2);
            let rad = match (o1, o2) {
                (None, None) => None,
                (Some(r), None) | (None, Some(r)) => Some(r),
                (Some(a), Some(b)) => Some(a.mul(&b)),
            };
            single_normal(fold(&Term { coeff: c1 * c2, radical: rad }))
        }
        RadicalExpr::Sum(t1, t2) => {
            let (c1, o1) = fold(t1);
            let (c2, o2) = fold(t2);
            match (o1, o2) {
                (None, None) => Normal::Rational(c1 + c2),
                (Some(r), None) => {
                    if c2.is_zero() {
                        Normal::Single { coeff: c1, rad: r }
                    } else {
                        Normal::Shifted { coeff: c1, rad: r, shift: c2 }
                    }
                }
                (None, Some(r)) => {
                    if c1.is_zero() {
                        Normal::Single { coeff: c2, rad: r }
                    } else {
                        Normal::Shifted { coeff: c2, rad: r, shift: c1 }
                    }
                }
                (Some(r1), Some(r2)) => {
                    // Commensurable radicals collapse onto one of them:
                    // r1 = t r2 with t rational.
                    let recip = RadicalRational::new(
                        r2.den().clone(),
                        r2.num().clone(),
                        r2.root_deg(),
                    )
                    .expect("reciprocal radical");
                    let s = r1.mul(&recip);
                    if s.root_deg() == 1 {
                        let t = BigRational::new(
                            BigInt::from(s.num().clone()),
                            BigInt::from(s.den().clone()),
                        );
                        let c = c1 * t + c2;
                        if c.is_zero() {
                            Normal::Rational(BigRational::zero())
                        } else {
                            Normal::Single { coeff: c, rad: r2 }
                        }
                    } else {
                        Normal::Pair(SumParts { c1, r1, c2, r2 })
                    }
                }
            }
        }
    }
}

fn check_cap(e: &RadicalExpr, cap: u64) -> Result<()> {
    let count = e.conjugate_count();
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    Ok(())
}

/// `den x - num`: the minimal polynomial of a rational.
fn linear_min(v: &BigRational) -> IntPolynomial {
    IntPolynomial::new(vec![-v.numer().clone(), v.denom().clone()])
}

/// Exact minimal polynomial of `c * r` for nonzero rational `c`: the
/// scale folds into the radicand, and a sign flip maps the roots.
fn scaled_radical_min(c: &BigRational, r: &RadicalRational) -> IntPolynomial {
    assert!(!c.is_zero());
    let mag = RadicalRational::from_rational(
        c.numer().magnitude().clone(),
        c.denom().magnitude().clone(),
    )
    .expect("nonzero coefficient");
    let f = mag.mul(r).minimal_polynomial();
    if c.is_negative() {
        f.transform_root_affine(&-BigRational::one(), &BigRational::zero())
    } else {
        f
    }
}

fn term_minimal(t: &Term) -> IntPolynomial {
    match fold(t) {
        (c, None) => linear_min(&c),
        (c, Some(r)) => scaled_radical_min(&c, &r),
    }
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// `Res_y(f(y), g(x - y))`: annihilates every `u + v` with `f(u) = 0`,
/// `g(v) = 0`.
fn sum_resultant(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    let fy: Vec<IntPolynomial> =
        f.coeffs().iter().map(|c| IntPolynomial::constant(c.clone())).collect();
    let m = g.degree();
    let mut gy = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let mut coeffs = vec![BigInt::zero(); m - k + 1];
        for j in k..=m {
            coeffs[j - k] = g.coeff(j) * binom(j, k);
        }
        let mut p = IntPolynomial::new(coeffs);
        if k % 2 == 1 {
            p = p.neg();
        }
        gy.push(p);
    }
    resultant_bivariate(&fy, &gy).primitive_part()
}

/// `Res_y(f(y), y^deg(g) g(x/y))`: annihilates every `u * v`.
fn product_resultant(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    let fy: Vec<IntPolynomial> =
        f.coeffs().iter().map(|c| IntPolynomial::constant(c.clone())).collect();
    let m = g.degree();
    let gy: Vec<IntPolynomial> =
        (0..=m).map(|k| IntPolynomial::monomial(g.coeff(m - k), m - k)).collect();
    resultant_bivariate(&fy, &gy).primitive_part()
}

fn linear_root(f: &IntPolynomial) -> BigRational {
    BigRational::new(-f.coeff(0), f.coeff(1))
}

fn scale_roots(g: &IntPolynomial, v: &BigRational) -> IntPolynomial {
    if v.is_zero() {
        // The product is zero; x annihilates it.
        IntPolynomial::monomial(BigInt::one(), 1)
    } else {
        g.transform_root_affine(v, &BigRational::zero())
    }
}

/// A primitive integer polynomial with positive leading coefficient that
/// vanishes at the expression's value, built structurally: resultants
/// eliminate one radical at a time, and rational operands act by exact
/// coefficient transforms. Not necessarily minimal.
pub fn annihilating_poly(e: &RadicalExpr, conjugate_cap: u64) -> Result<IntPolynomial> {
    check_cap(e, conjugate_cap)?;
    match e {
        RadicalExpr::Term(t) => Ok(term_minimal(t)),
        RadicalExpr::Sum(t1, t2) => {
            let f = term_minimal(t1);
            let g = term_minimal(t2);
            if f.degree() == 1 {
                Ok(g.transform_root_affine(&BigRational::one(), &linear_root(&f)))
            } else if g.degree() == 1 {
                Ok(f.transform_root_affine(&BigRational::one(), &linear_root(&g)))
            } else {
                Ok(sum_resultant(&f, &g))
            }
        }
        RadicalExpr::Product(t1, t2) => {
            let f = term_minimal(t1);
            let g = term_minimal(t2);
            if f.degree() == 1 {
                Ok(scale_roots(&g, &linear_root(&f)))
            } else if g.degree() == 1 {
                Ok(scale_roots(&f, &linear_root(&g)))
            } else {
                Ok(product_resultant(&f, &g))
            }
        }
    }
}

/// The minimal polynomial of the expression's value: primitive, positive
/// leading coefficient, irreducible. Exact radical arithmetic covers
/// every shape except a genuine two-radical sum, which goes through the
/// certified conjugate-product search at escalating precision.
pub fn minimal_poly(e: &RadicalExpr, prec: u32, conjugate_cap: u64) -> Result<IntPolynomial> {
    check_cap(e, conjugate_cap)?;
    match normalize(e) {
        Normal::Rational(v) => Ok(linear_min(&v)),
        Normal::Single { coeff, rad } => Ok(scaled_radical_min(&coeff, &rad)),
        Normal::Shifted { coeff, rad, shift } => {
            Ok(scaled_radical_min(&coeff, &rad).transform_root_affine(&BigRational::one(), &shift))
        }
        Normal::Pair(parts) => {
            let f = scaled_radical_min(&parts.c1, &parts.r1);
            let g = scaled_radical_min(&parts.c2, &parts.r2);
            let annihilator = sum_resultant(&f, &g);
            orbit::minimal_from_sum(&parts, &annihilator, prec)
        }
    }
}

/// Height of the expression's value, recomputed from scratch as
/// `log M(minpoly) / deg(minpoly)`.
pub fn oracle_height(e: &RadicalExpr, prec: u32, conjugate_cap: u64) -> Result<CertifiedReal> {
    let m = minimal_poly(e, prec, conjugate_cap)?;
    height_from_minpoly(&m, prec)
}

/// Decides `lhs < rhs` with both sides recomputable at higher precision.
fn decide_less<L, R>(mut lhs: L, mut rhs: R) -> Result<bool>
where
    L: FnMut(u32) -> Result<CertifiedReal>,
    R: FnMut(u32) -> Result<CertifiedReal>,
{
    let ladder = PrecisionLadder::default();
    let a0 = lhs(ladder.start)?;
    let b0 = rhs(ladder.start)?;
    let mut err: Option<Error> = None;
    let out = certified_less(&a0, &b0, &ladder, |prec| match (lhs(prec), rhs(prec)) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            err = a.err().or(b.err());
            (CertifiedReal::zero(), CertifiedReal::zero())
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    out
}

/// One sample of a cross-check run.
#[derive(Debug, Clone)]
pub struct CrossCheckSample {
    pub expr: String,
    pub height: CertifiedReal,
    pub exceeds_bound: bool,
}

/// Outcome of checking oracle heights against the certified lower bound
/// for a radical extension of prime parameters `(p, d)`.
#[derive(Debug, Clone)]
pub struct CrossCheckReport {
    pub prime: BigUint,
    pub extension_degree: u32,
    pub bound: CertifiedReal,
    pub samples: Vec<CrossCheckSample>,
    pub all_exceed: bool,
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.bound.to_decimal_pair(9);
        writeln!(
            f,
            "lower bound for heights outside the base, p = {}, d = {}: [{lo}, {hi}]",
            self.prime, self.extension_degree
        )?;
        for s in &self.samples {
            let (hlo, hhi) = s.height.to_decimal_pair(9);
            let verdict = if s.exceeds_bound { "ok" } else { "VIOLATION" };
            writeln!(f, "  h({}) = [{hlo}, {hhi}] {verdict}", s.expr)?;
        }
        if self.all_exceed {
            write!(f, "all {} samples exceed the bound", self.samples.len())
        } else {
            write!(f, "BOUND VIOLATED by at least one sample")
        }
    }
}

/// Certifies `oracle_height(e) > corollary_lower_bound(p, d)` for each
/// sample. Every sample must have a genuine radical component; a sample
/// inside the base field would make the comparison meaningless.
pub fn cross_check_corollary(
    prime: &BigUint,
    extension_degree: u32,
    samples: &[RadicalExpr],
    prec: u32,
    conjugate_cap: u64,
) -> Result<CrossCheckReport> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("cross-check needs at least one sample".into()));
    }
    for e in samples {
        if matches!(normalize(e), Normal::Rational(_)) {
            return Err(Error::InvalidArgument(format!("sample {e} lies in the base field")));
        }
    }
    let d = BigUint::from(extension_degree);
    let bound = corollary_lower_bound(prime, &d, prec);
    let mut rows = Vec::with_capacity(samples.len());
    let mut all_exceed = true;
    for e in samples {
        let m = minimal_poly(e, prec, conjugate_cap)?;
        let height = height_from_minpoly(&m, prec)?;
        let exceeds_bound = decide_less(
            |w| Ok(corollary_lower_bound(prime, &d, w)),
            |w| height_from_minpoly(&m, w),
        )?;
        all_exceed &= exceeds_bound;
        rows.push(CrossCheckSample { expr: e.to_string(), height, exceeds_bound });
    }
    Ok(CrossCheckReport {
        prime: prime.clone(),
        extension_degree,
        bound,
        samples: rows,
        all_exceed,
    })
}

/// A deterministic family of expressions in the degree-`d` radical
/// extension generated by `(p/q)^(1/d)`, all provably outside the base:
/// the generator, its square, their sum, and rational shifts and
/// multiples of each.
pub fn corollary_samples(
    p: &BigUint,
    q: &BigUint,
    d: u32,
    count: usize,
) -> Result<Vec<RadicalExpr>> {
    let g = RadicalRational::new(p.clone(), q.clone(), d)?;
    if g.root_deg() < 2 {
        return Err(Error::InvalidArgument(
            "sample generator lies in the base field".into(),
        ));
    }
    let g2 = g.pow(2);
    let mut out: Vec<RadicalExpr> = vec![RadicalExpr::Term(Term::radical(g.clone()))];
    if g2.root_deg() >= 2 {
        out.push(RadicalExpr::Term(Term::radical(g2.clone())));
        out.push(RadicalExpr::Sum(Term::radical(g.clone()), Term::radical(g2.clone())));
    }
    let mut k: i64 = 1;
    while out.len() < count {
        let kq = BigRational::from_integer(BigInt::from(k));
        let next = BigRational::from_integer(BigInt::from(k + 1));
        out.push(RadicalExpr::Sum(Term::radical(g.clone()), Term::rational(kq.clone())));
        out.push(RadicalExpr::Term(Term::scaled(next.clone(), g.clone())));
        out.push(RadicalExpr::Sum(
            Term::radical(g.clone()),
            Term::rational(&kq / &next),
        ));
        out.push(RadicalExpr::Sum(Term::scaled(next.clone(), g.clone()), Term::rational(kq.clone())));
        if g2.root_deg() >= 2 {
            out.push(RadicalExpr::Sum(Term::radical(g2.clone()), Term::rational(kq)));
            out.push(RadicalExpr::Term(Term::scaled(next, g2.clone())));
        }
        k += 1;
    }
    out.truncate(count);
    Ok(out)
}
