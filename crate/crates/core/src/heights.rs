//! Exact Weil heights and weighted heights of positive radical rationals.

use crate::error::{Error, Result};
use crate::exactnum::{pow_rational, rational_pow_exact, CertifiedReal, ExactLog};
use crate::polyalg::{canonical_radical, IntPolynomial};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// The positive real `(num/den)^(1/root_deg)`, stored canonically:
/// `gcd(num, den) = 1` and `num/den` is not a `p`-th power for any prime
/// `p` dividing `root_deg`. Canonical form makes `root_deg` the degree of
/// the number over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadicalRational {
    num: BigUint,
    den: BigUint,
    root_deg: u32,
}

/// A weighted height `deg^gamma * h`: always a certified enclosure, and an
/// exact `log k / D` value whenever `deg^gamma` is rational.
#[derive(Debug, Clone)]
pub struct WeightedHeightValue {
    pub exact: Option<ExactLog>,
    pub enclosure: CertifiedReal,
    pub gamma: BigRational,
    pub degree: u32,
}

impl RadicalRational {
    pub fn new(num: BigUint, den: BigUint, root_deg: u32) -> Result<RadicalRational> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::InvalidArgument("radical base must be positive".into()));
        }
        if root_deg == 0 {
            return Err(Error::InvalidArgument("root degree must be positive".into()));
        }
        let g = num.gcd(&den);
        let (num, den) = (num / &g, den / g);
        let (num, den, root_deg) = canonical_radical(&num, &den, root_deg);
        Ok(RadicalRational { num, den, root_deg })
    }

    pub fn one() -> RadicalRational {
        RadicalRational { num: BigUint::one(), den: BigUint::one(), root_deg: 1 }
    }

    pub fn from_rational(num: BigUint, den: BigUint) -> Result<RadicalRational> {
        RadicalRational::new(num, den, 1)
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn den(&self) -> &BigUint {
        &self.den
    }

    pub fn root_deg(&self) -> u32 {
        self.root_deg
    }

    /// Degree over the rationals; equals `root_deg` in canonical form.
    pub fn degree(&self) -> u32 {
        self.root_deg
    }

    /// Absolute logarithmic Weil height, exactly: `log(max(m, n)) / D`,
    /// from `h(b) = h(b^D)/D` and `h(m/n) = log max(m, n)`.
    pub fn height(&self) -> ExactLog {
        let k = self.num.clone().max(self.den.clone());
        ExactLog::new(k, BigUint::from(self.root_deg))
    }

    /// `deg^gamma * height` with the exact symbolic part retained whenever
    /// `deg^gamma` is rational (in particular for gamma = 0 and 1).
    pub fn weighted_height(&self, gamma: &BigRational, prec: u32) -> WeightedHeightValue {
        let deg = BigUint::from(self.degree());
        let h = self.height();
        let exact = rational_pow_exact(&deg, &BigUint::one(), gamma)
            .map(|(n, d)| h.mul_rational(&n, &d));
        let enclosure = match &exact {
            Some(e) => e.to_certified(prec),
            None => {
                let factor = pow_rational(&deg, &BigUint::one(), gamma, prec + 8);
                factor.mul(&h.to_certified(prec + 8)).compress(prec)
            }
        };
        WeightedHeightValue { exact, enclosure, gamma: gamma.clone(), degree: self.degree() }
    }

    /// `self^k` as a canonical radical.
    pub fn pow(&self, k: u32) -> RadicalRational {
        if k == 0 {
            return RadicalRational::one();
        }
        RadicalRational::new(self.num.pow(k), self.den.pow(k), self.root_deg)
            .expect("positive base stays positive")
    }

    /// The canonical radical representing the positive real product, via the
    /// common root degree `lcm(D_a, D_b)`.
    pub fn mul(&self, other: &RadicalRational) -> RadicalRational {
        let l = (u64::from(self.root_deg)).lcm(&u64::from(other.root_deg));
        let ea = (l / u64::from(self.root_deg)) as u32;
        let eb = (l / u64::from(other.root_deg)) as u32;
        let num = self.num.pow(ea) * other.num.pow(eb);
        let den = self.den.pow(ea) * other.den.pow(eb);
        RadicalRational::new(num, den, l as u32).expect("positive base stays positive")
    }

    /// Minimal polynomial `n x^D - m` (irreducible for canonical radicals).
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.root_deg as usize + 1];
        coeffs[0] = -BigInt::from(self.num.clone());
        coeffs[self.root_deg as usize] = BigInt::from(self.den.clone());
        IntPolynomial::new(coeffs)
    }

    /// Parses `"(m/n)^(1/D)"`, `"m^(1/D)"`, `"m/n"`, or `"m"`.
    pub fn parse(s: &str) -> Result<RadicalRational> {
        let s = s.trim();
        let bad = |m: &str| Error::Parse(format!("{m} in radical {s:?}"));
        let (base, deg) = match s.find("^(1/") {
            Some(i) => {
                let tail = &s[i + 4..];
                let close = tail.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
                let d: u32 = close.trim().parse().map_err(|_| bad("bad root degree"))?;
                (&s[..i], d)
            }
            None => (s, 1),
        };
        let base = base.trim();
        let base = if base.starts_with('(') && base.ends_with(')') {
            &base[1..base.len() - 1]
        } else {
            base
        };
        let (num, den) = match base.split_once('/') {
            Some((m, n)) => (m.trim(), n.trim()),
            None => (base.trim(), "1"),
        };
        let num = BigUint::from_str(num).map_err(|_| bad("bad numerator"))?;
        let den = BigUint::from_str(den).map_err(|_| bad("bad denominator"))?;
        RadicalRational::new(num, den, deg)
    }
}

/// Free-function form of [`RadicalRational::mul`].
pub fn product_as_radical(a: &RadicalRational, b: &RadicalRational) -> RadicalRational {
    a.mul(b)
}

impl fmt::Display for RadicalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root_deg == 1 {
            if self.den.is_one() {
                write!(f, "{}", self.num)
            } else {
                write!(f, "{}/{}", self.num, self.den)
            }
        } else if self.den.is_one() {
            write!(f, "{}^(1/{})", self.num, self.root_deg)
        } else {
            write!(f, "({}/{})^(1/{})", self.num, self.den, self.root_deg)
        }
    }
}

impl WeightedHeightValue {
    /// True when the weighted height is exactly zero.
    pub fn is_zero(&self) -> bool {
        match &self.exact {
            Some(e) => e.is_zero(),
            None => self.enclosure.is_point() && self.enclosure.lo().is_zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::PrecisionLadder;
    use std::cmp::Ordering;

    fn rad(s: &str) -> RadicalRational {
        RadicalRational::parse(s).unwrap()
    }

    fn gamma(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonicalization() {
        let r = rad("(8/27)^(1/6)");
        assert_eq!((r.num(), r.den(), r.root_deg()), (&BigUint::from(2u32), &BigUint::from(3u32), 2));
        assert_eq!(rad("(4)^(1/2)"), rad("2"));
        assert_eq!(rad("4^(1/4)"), rad("2^(1/2)"));
        assert_eq!(rad("(10/4)^(1/1)"), rad("5/2"));
        assert!(RadicalRational::parse("(0/3)^(1/2)").is_err());
        assert!(RadicalRational::parse("x").is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(rad("(5/7)^(1/11)").height(), ExactLog::new(BigUint::from(7u32), BigUint::from(11u32)));
        assert!(rad("1^(1/1)").height().is_zero());
        assert_eq!(rad("(3/5)^(1/1)").height(), ExactLog::new(BigUint::from(5u32), BigUint::one()));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(rad("(5/7)^(1/11)").degree(), 11);
        assert_eq!(rad("2^(1/27)").degree(), 27);
        assert_eq!(rad("1").degree(), 1);
        // degree agrees with the Capelli computation on the raw data
        let d = crate::polyalg::capelli_degree(&BigUint::from(5u32), &BigUint::from(7u32), 11).unwrap();
        assert_eq!(d, rad("(5/7)^(1/11)").degree());
    }

    #[test]
    fn weighted_height_examples() {
        let r = rad("(5/7)^(1/11)");
        let w0 = r.weighted_height(&gamma(0, 1), 96);
        assert_eq!(w0.exact, Some(ExactLog::new(BigUint::from(7u32), BigUint::from(11u32))));
        let w1 = r.weighted_height(&gamma(1, 1), 96);
        assert_eq!(w1.exact, Some(ExactLog::new(BigUint::from(7u32), BigUint::one())));
        // 2^(1/3) at gamma = 1/2: sqrt(3) log 2 / 3 ~ 0.400187.
        let w = rad("2^(1/3)").weighted_height(&gamma(1, 2), 96);
        assert!(w.exact.is_none());
        let (lo, hi) = (w.enclosure.lo().to_f64(), w.enclosure.hi().to_f64());
        let expect = 3f64.sqrt() * 2f64.ln() / 3.0;
        assert!(lo - 1e-13 <= expect && expect <= hi + 1e-13, "[{lo}, {hi}] vs {expect}");
        assert!(hi - lo < 1e-25);
        // Perfect-square degree keeps an exact value even at gamma = 1/2.
        let w = rad("(5/7)^(1/9)").weighted_height(&gamma(1, 2), 96);
        assert_eq!(w.exact, Some(ExactLog::new(BigUint::from(7u32), BigUint::from(3u32))));
    }

    #[test]
    fn product_examples() {
        let p = product_as_radical(&rad("(5/7)^(1/5)"), &rad("2^(1/3)"));
        assert_eq!(p, rad("(4000/343)^(1/15)"));
        let r = rad("(5/7)^(1/11)");
        assert_eq!(product_as_radical(&r, &RadicalRational::one()), r);
        assert_eq!(product_as_radical(&rad("2^(1/3)"), &rad("4^(1/3)")), rad("2"));
    }

    #[test]
    fn power_law_symbolic() {
        // height(r) * D = height of m/n as a rational, exactly.
        for s in ["(5/7)^(1/11)", "2^(1/27)", "(360/7)^(1/4)", "(123456/5)^(1/50)"] {
            let r = rad(s);
            let lifted = r.height().mul_rational(&BigUint::from(r.root_deg()), &BigUint::one());
            let plain = RadicalRational::new(r.num().clone(), r.den().clone(), 1).unwrap().height();
            assert_eq!(lifted, plain, "{s}");
        }
    }

    #[test]
    fn monotone_in_gamma() {
        let r = rad("(5/7)^(1/11)");
        let ladder = PrecisionLadder::default();
        let mut prev: Option<CertifiedReal> = None;
        for g in [gamma(-1, 1), gamma(-1, 2), gamma(0, 1), gamma(1, 3), gamma(1, 2), gamma(1, 1), gamma(2, 1)] {
            let w = r.weighted_height(&g, 160);
            if let Some(p) = &prev {
                assert!(p.certainly_lt(&w.enclosure), "strictly increasing in gamma");
            }
            prev = Some(w.enclosure);
        }
        let _ = ladder;
    }

    #[test]
    fn zero_iff_one() {
        assert!(RadicalRational::one().weighted_height(&gamma(1, 2), 64).is_zero());
        assert!(rad("1^(1/7)").height().is_zero());
        for s in ["2", "1/2", "(5/7)^(1/11)", "2^(1/27)"] {
            let w = rad(s).weighted_height(&gamma(-1, 2), 96);
            assert!(w.enclosure.certainly_positive(), "{s} has positive weighted height");
        }
    }

    #[test]
    fn submultiplicative_exact_compare() {
        let ladder = PrecisionLadder::default();
        let pairs = [
            ("(5/7)^(1/5)", "2^(1/3)"),
            ("(3/2)^(1/4)", "(2/3)^(1/4)"),
            ("(7/5)^(1/6)", "(5/7)^(1/6)"),
            ("2^(1/2)", "2^(1/2)"),
        ];
        for (a, b) in pairs {
            let (ra, rb) = (rad(a), rad(b));
            let lhs = ra.mul(&rb).height();
            let rhs = ra.height().add(&rb.height());
            assert_ne!(lhs.compare(&rhs, &ladder), Ordering::Greater, "{a} * {b}");
        }
    }

    #[test]
    fn minimal_polynomial_shape() {
        let f = rad("(5/7)^(1/11)").minimal_polynomial();
        assert_eq!(f.degree(), 11);
        assert_eq!(f.lc(), &BigInt::from(7));
        assert_eq!(f.coeff(0), BigInt::from(-5));
        assert_eq!(f.content(), BigInt::one());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["(5/7)^(1/11)", "2^(1/27)", "5/2", "2", "1"] {
            let r = rad(s);
            assert_eq!(rad(&format!("{r}")), r, "{s}");
        }
        assert_eq!(format!("{}", rad("(5/7)^(1/11)")), "(5/7)^(1/11)");
        assert_eq!(format!("{}", rad("2^(1/27)")), "2^(1/27)");
        assert_eq!(format!("{}", rad("8^(1/3)")), "2");
        assert_eq!(format!("{}", rad("10/4")), "5/2");
    }
}
