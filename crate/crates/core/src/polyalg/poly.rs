//! Dense integer polynomials, constant term first.

use crate::error::{Error, Result};
use crate::exactnum::interval::CertifiedReal;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// An integer polynomial; `coeffs[i]` is the coefficient of `x^i`, the last
/// entry is nonzero, and the empty vector is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> IntPolynomial {
        IntPolynomial::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPolynomial::new(coeffs)
    }

    pub fn from_i64_slice(v: &[i64]) -> IntPolynomial {
        IntPolynomial::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.coeffs.len() - 1
    }

    pub fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("lc of zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn mul_scalar(&self, k: &BigInt) -> IntPolynomial {
        if k.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs: out }
    }

    pub fn pow(&self, mut n: u32) -> IntPolynomial {
        let mut result = IntPolynomial::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation over an interval argument; the result encloses
    /// `f(t)` for every `t` in `x`.
    pub fn eval_interval(&self, x: &CertifiedReal, prec: u32) -> CertifiedReal {
        let mut acc = CertifiedReal::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&CertifiedReal::from_bigint(c)).compress(prec);
        }
        acc
    }

    /// Positive gcd of all coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Content-free form with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    /// Exact quotient `self / d`, `None` when the division is not exact.
    pub fn divide_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(d.lc());
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                let delta = dc * &qc;
                rem[k + i] -= delta;
            }
            q[k] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::new(q))
    }

    /// Integer polynomial with roots `c*r + s` for each root `r` of `self`,
    /// for exact rational `c != 0` and `s`; returned primitive.
    pub fn transform_root_affine(&self, c: &BigRational, s: &BigRational) -> IntPolynomial {
        assert!(!c.is_zero());
        assert!(!self.is_zero());
        let n = self.degree() as u32;
        let (cn, cd) = (c.numer().clone(), c.denom().clone());
        let (sn, sd) = (s.numer().clone(), s.denom().clone());
        // root r of f maps to v = c r + s; f((v-s)/c) cleared of denominators:
        // sum_i a_i (cd (sd x - sn))^i (cn sd)^(n-i).
        let inner = IntPolynomial::new(vec![-&sn * &cd, &sd * &cd]);
        let outer = &cn * &sd;
        let mut acc = IntPolynomial::zero();
        let mut inner_pow = IntPolynomial::one();
        let mut outer_pow = vec![BigInt::one()];
        for _ in 0..n {
            outer_pow.push(outer_pow.last().unwrap() * &outer);
        }
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                let term = inner_pow.mul_scalar(&(a * &outer_pow[n as usize - i]));
                acc = acc.add(&term);
            }
            if i < n as usize {
                inner_pow = inner_pow.mul(&inner);
            }
        }
        acc.primitive_part()
    }

    /// Parses the CLI coefficient format: comma-separated, constant first.
    pub fn parse_csv(s: &str) -> Result<IntPolynomial> {
        let coeffs: Result<Vec<BigInt>> = s
            .split(',')
            .map(|t| {
                BigInt::from_str(t.trim())
                    .map_err(|e| Error::Parse(format!("bad coefficient {t:?}: {e}")))
            })
            .collect();
        let coeffs = coeffs?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if i >= 1 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "x")?;
                if i >= 2 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}
