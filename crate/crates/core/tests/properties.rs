//! Randomized algebraic invariants tying the exact kernels together:
//! closed-form discriminants of binomials, resultant antisymmetry,
//! height submultiplicativity, irreducible-degree divisibility, and
//! the canonical form of symbolic logarithms.

use num_traits::Zero;
use proptest::prelude::*;

use radnor::exactnum::log_interval;
use radnor::polyalg::{capelli_degree, discriminant, log_mahler, resultant};
use radnor::{BigInt, BigRational, BigUint, ExactLog, IntPolynomial, RadicalRational};

fn poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

proptest! {
    // disc(x^n - a) = (-1)^(n(n-1)/2) n^n (-a)^(n-1), the resultant of the
    // binomial with its derivative collapsed at the lone critical point 0.
    #[test]
    fn binomial_discriminant_closed_form(n in 2u32..=9, a in -1_000_000i64..=1_000_000) {
        prop_assume!(a != 0);
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = BigInt::from(-a);
        coeffs[n as usize] = BigInt::from(1);
        let disc = discriminant(&IntPolynomial::new(coeffs));

        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let expected = BigInt::from(sign)
            * BigInt::from(n).pow(n)
            * BigInt::from(-a).pow(n - 1);
        prop_assert_eq!(disc, expected);
    }

    #[test]
    fn resultant_is_antisymmetric_up_to_sign(
        f_coeffs in proptest::collection::vec(-50i64..=50, 1..=7),
        g_coeffs in proptest::collection::vec(-50i64..=50, 1..=7),
    ) {
        let f = poly(&f_coeffs);
        let g = poly(&g_coeffs);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let forward = resultant(&f, &g);
        let backward = resultant(&g, &f);
        let sign = if (f.degree() * g.degree()) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(forward, BigInt::from(sign) * backward);
    }

    // h(ab) <= h(a) + h(b); the enclosures may touch, so only a certified
    // violation fails.
    #[test]
    fn height_is_submultiplicative(
        m1 in 1u64..=100_000, n1 in 1u64..=100_000, d1 in 1u32..=12,
        m2 in 1u64..=100_000, n2 in 1u64..=100_000, d2 in 1u32..=12,
    ) {
        let a = RadicalRational::new(BigUint::from(m1), BigUint::from(n1), d1).unwrap();
        let b = RadicalRational::new(BigUint::from(m2), BigUint::from(n2), d2).unwrap();
        let h_ab = a.mul(&b).height().to_certified(96);
        let sum = a.height().to_certified(96).add(&b.height().to_certified(96));
        prop_assert!(!h_ab.certainly_gt(&sum));
    }

    // The degree of x^d - m/n over the rationals divides d, and the
    // canonical radical reduces its root index to exactly that degree.
    #[test]
    fn irreducible_degree_divides_the_root_index(
        m in 1u64..=10_000, n in 1u64..=10_000, d in 1u32..=30,
    ) {
        let g = gcd(m, n);
        let mu = BigUint::from(m / g);
        let nu = BigUint::from(n / g);
        let deg = capelli_degree(&mu, &nu, d).unwrap();
        prop_assert!(deg >= 1 && d % deg == 0);
        let r = RadicalRational::new(mu, nu, d).unwrap();
        prop_assert_eq!(r.root_deg(), deg);
    }

    // log(a^k)/(k m) and log(a)/m are the same real number and must share
    // one canonical form.
    #[test]
    fn symbolic_logs_have_one_canonical_form(a in 2u64..=50, k in 1u32..=5, m in 1u64..=10) {
        let lifted = ExactLog::new(BigUint::from(a).pow(k), BigUint::from(u64::from(k) * m));
        prop_assert_eq!(lifted, ExactLog::new(BigUint::from(a), BigUint::from(m)));
    }

    // M(q x - p) = |q| max(1, p/q) = max(p, q), so two sound enclosures of
    // log max(p, q) must intersect: one through the root-modulus kernel,
    // one from the logarithm series.
    #[test]
    fn mahler_of_linear_agrees_with_log(p in 1i64..=1_000_000, q in 1i64..=1_000_000) {
        let via_mahler = log_mahler(&poly(&[-p, q]), 96).unwrap();
        let direct = log_interval(&BigRational::from_integer(BigInt::from(p.max(q))), 96);
        prop_assert!(!via_mahler.certainly_lt(&direct) && !direct.certainly_lt(&via_mahler));
    }
}
