//! Certified numeric kernel: dyadic intervals, exact log values, certified
//! transcendentals, and primality over certified ranges.

pub mod dyadic;
pub mod exactlog;
pub mod interval;
pub mod logexp;
pub mod primes;

pub use dyadic::{Dyadic, Round};
pub use exactlog::ExactLog;
pub use interval::CertifiedReal;
pub use logexp::{
    certified_less, exp_interval, log2, log_big_ratio, log_certified, log_interval, pow_rational,
    rational_pow_exact, PrecisionLadder,
};
pub use primes::{factorize, is_prime, next_prime_in, small_primes_to};
