//! Resultants and discriminants via the subresultant remainder sequence.

use super::poly::IntPolynomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Commutative ring with exact division, enough to run the subresultant PRS.
/// All divisions performed by the algorithm are exact by the subresultant
/// theory; `exact_div` may panic otherwise.
pub trait PrsRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn exact_div(&self, other: &Self) -> Self;

    fn pow(&self, mut n: usize) -> Self {
        let mut result = Self::one();
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
}

impl PrsRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn exact_div(&self, other: &Self) -> Self {
        let (q, r) = num_integer::Integer::div_rem(self, other);
        debug_assert!(Zero::is_zero(&r), "inexact division in PRS");
        q
    }
}

impl PrsRing for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn one() -> Self {
        IntPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        IntPolynomial::is_zero(self)
    }
    fn neg(&self) -> Self {
        IntPolynomial::neg(self)
    }
    fn sub(&self, other: &Self) -> Self {
        IntPolynomial::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        IntPolynomial::mul(self, other)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self.divide_exact(other).expect("inexact division in PRS")
    }
}

/// Dense polynomial over an arbitrary `PrsRing`, highest coefficient nonzero.
#[derive(Debug, Clone)]
pub struct RingPoly<R> {
    coeffs: Vec<R>,
}

impl<R: PrsRing> RingPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RingPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn lc(&self) -> &R {
        self.coeffs.last().expect("lc of zero")
    }

    fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    fn scale(&self, k: &R) -> Self {
        RingPoly::new(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        RingPoly::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    fn shifted_scale(&self, k: &R, shift: usize) -> Self {
        let mut coeffs = vec![R::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|c| c.mul(k)));
        RingPoly::new(coeffs)
    }

    fn div_all(&self, k: &R) -> Self {
        RingPoly { coeffs: self.coeffs.iter().map(|c| c.exact_div(k)).collect() }
    }
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`, exact in the ring.
fn pseudo_rem<R: PrsRing>(a: &RingPoly<R>, b: &RingPoly<R>) -> RingPoly<R> {
    let db = b.degree();
    let d = b.lc().clone();
    let mut steps = a.degree() - db + 1;
    let mut r = a.clone();
    while !r.is_zero() && r.degree() >= db {
        let shift = r.degree() - db;
        let top = r.lc().clone();
        r = r.scale(&d).sub(&b.shifted_scale(&top, shift));
        steps -= 1;
    }
    // Degree can drop by more than one per step; pad the factor so the
    // result equals lc(b)^(delta+1) * a mod b exactly.
    r.scale(&d.pow(steps))
}

/// Resultant of `a` and `b` over any `PrsRing`, by the subresultant PRS.
pub fn resultant_ring<R: PrsRing>(a: &RingPoly<R>, b: &RingPoly<R>) -> R {
    if a.is_zero() || b.is_zero() {
        return R::zero();
    }
    if a.degree() == 0 {
        return a.lc().pow(b.degree());
    }
    if b.degree() == 0 {
        return b.lc().pow(a.degree());
    }
    let mut flip = false;
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.clone(), b.clone())
    } else {
        flip = (a.degree() * b.degree()) % 2 == 1;
        (b.clone(), a.clone())
    };
    let mut g = R::one();
    let mut h = R::one();
    let mut negate = flip;
    loop {
        let da = a.degree();
        let db = b.degree();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            // Positive-degree common factor: the resultant vanishes.
            return R::zero();
        }
        let divisor = g.mul(&h.pow(delta));
        a = b;
        b = r.div_all(&divisor);
        g = a.lc().clone();
        h = if delta == 0 { h } else { g.pow(delta).exact_div(&h.pow(delta - 1)) };
        if b.degree() == 0 {
            let da2 = a.degree();
            let res = b.lc().pow(da2).exact_div(&h.pow(da2 - 1));
            return if negate { res.neg() } else { res };
        }
    }
}

pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let a = RingPoly::new(f.coeffs().to_vec());
    let b = RingPoly::new(g.coeffs().to_vec());
    resultant_ring(&a, &b)
}

/// Resultant in `y` of two polynomials in `Z[x][y]`, given with `y`-coefficients
/// listed constant-in-`y` first; the result lives in `Z[x]`.
pub fn resultant_bivariate(f: &[IntPolynomial], g: &[IntPolynomial]) -> IntPolynomial {
    let a = RingPoly::new(f.to_vec());
    let b = RingPoly::new(g.to_vec());
    resultant_ring(&a, &b)
}

/// Primitive gcd of two integer polynomials, by the primitive
/// pseudo-remainder sequence; the result has positive leading coefficient.
/// Content is deliberately discarded: `primitive_gcd(2f, 4f) = f/cont(f)`.
pub(crate) fn primitive_gcd(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    if f.is_zero() {
        return g.primitive_part();
    }
    if g.is_zero() {
        return f.primitive_part();
    }
    let mut a = f.primitive_part();
    let mut b = g.primitive_part();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree() == 0 {
            return IntPolynomial::one();
        }
        let ra = RingPoly::new(a.coeffs().to_vec());
        let rb = RingPoly::new(b.coeffs().to_vec());
        let r = pseudo_rem(&ra, &rb);
        if r.is_zero() {
            return b;
        }
        a = b;
        b = IntPolynomial::new(r.coeffs).primitive_part();
    }
}

/// Discriminant `(-1)^(n(n-1)/2) res(f, f') / lc(f)` for `deg f >= 2`.
pub fn discriminant(f: &IntPolynomial) -> BigInt {
    assert!(!f.is_zero() && f.degree() >= 2, "discriminant needs degree >= 2");
    let n = f.degree();
    let r = resultant(f, &f.derivative());
    let (q, rem) = num_integer::Integer::div_rem(&r, f.lc());
    debug_assert!(Zero::is_zero(&rem), "lc(f) divides res(f, f')");
    if (n * (n - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::{discriminant, resultant, resultant_bivariate};
    use crate::polyalg::IntPolynomial;
    use num_bigint::BigInt;
    use num_traits::{One, Pow, Zero};

    fn p(v: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_slice(v)
    }

    /// Independent oracle: resultant as the determinant of the Sylvester
    /// matrix, by Bareiss fraction-free elimination.
    fn sylvester_resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
        let (m, n) = (f.degree(), g.degree());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut a = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for i in 0..=m {
                a[row][row + m - i] = f.coeff(i);
            }
        }
        for row in 0..m {
            for i in 0..=n {
                a[n + row][row + n - i] = g.coeff(i);
            }
        }
        // Bareiss: exact integer elimination.
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if a[k][k].is_zero() {
                let swap = (k + 1..size).find(|&r| !a[r][k].is_zero());
                match swap {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &t / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[size - 1][size - 1].clone()
    }

    #[test]
    fn resultant_pins() {
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])), BigInt::from(3));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 0, 1])), BigInt::from(4));
        assert_eq!(resultant(&p(&[0, 0, 1, 5, 7]), &p(&[1])), BigInt::one());
        // Shared root makes it vanish.
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])), BigInt::zero());
    }

    #[test]
    fn matches_sylvester_determinant() {
        let cases: &[(&[i64], &[i64])] = &[
            (&[-1, 0, 1], &[-2, 1]),
            (&[1, 0, 1], &[-1, 0, 1]),
            (&[3, -1, 4, -1, 5], &[2, 7, 1]),
            (&[-7, 0, 0, 2], &[5, 3, -2, 0, 1]),
            (&[11, -3], &[4, 9, -6, 1]),
        ];
        for (fv, gv) in cases {
            let (f, g) = (p(fv), p(gv));
            assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g), "f={f} g={g}");
        }
    }

    #[test]
    fn antisymmetry_sign() {
        let f = p(&[3, -1, 4, -1, 5]);
        let g = p(&[2, 7, 1]);
        // deg f * deg g even here
        assert_eq!(resultant(&f, &g), resultant(&g, &f));
        let h = p(&[1, 2, 0, 1]);
        // 4 * 3 even again; take odd-odd pair
        let a = p(&[1, 1, 0, 1]);
        let b = p(&[-2, 1]);
        assert_eq!(resultant(&a, &b), -resultant(&b, &a));
        assert_eq!(resultant(&h, &b), -resultant(&b, &h));
    }

    #[test]
    fn discriminant_pins() {
        assert_eq!(discriminant(&p(&[-1, -1, 1])), BigInt::from(5));
        assert_eq!(discriminant(&p(&[1, 0, 1])), BigInt::from(-4));
        let expected = BigInt::from(5).pow(9u32) * BigInt::from(7).pow(16u32);
        assert_eq!(discriminant(&p(&[-12005, 0, 0, 0, 0, 1])), expected);
    }

    #[test]
    fn binomial_discriminant_closed_form_spot() {
        // disc(x^n - a) = (-1)^((n-1)(n-2)/2) n^n a^(n-1) for a != 0; spot
        // checks here, exhaustive sweep lives in the workspace property suite.
        for n in 2usize..=9 {
            for a in [-17i64, -2, 1, 3, 9999] {
                let mut coeffs = vec![0i64; n + 1];
                coeffs[0] = -a;
                coeffs[n] = 1;
                let d = discriminant(&p(&coeffs));
                let mut expected = BigInt::from(n).pow(n as u32) * BigInt::from(a).pow((n - 1) as u32);
                if ((n - 1) * (n - 2) / 2) % 2 == 1 {
                    expected = -expected;
                }
                assert_eq!(d, expected, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn bivariate_resultant_eliminates_y() {
        // u = sqrt(2): f_u(y) = y^2 - 2; v = sqrt(3): f_v(z) = z^2 - 3.
        // Res_y(f_u(y), f_v(x - y)) annihilates sqrt(2) + sqrt(3):
        // expect x^4 - 10x^2 + 1.
        let fu = vec![p(&[-2]), p(&[]), p(&[1])];
        // f_v(x - y) = (x - y)^2 - 3 = (x^2 - 3) - 2x*y + y^2
        let fv = vec![p(&[-3, 0, 1]), p(&[0, -2]), p(&[1])];
        let r = resultant_bivariate(&fu, &fv);
        assert_eq!(r.primitive_part(), p(&[1, 0, -10, 0, 1]));
    }
}
