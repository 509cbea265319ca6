//! Exact rational arithmetic helpers.
//!
//! The proof-style sequences and the interval feasibility sweep are
//! evaluated over `BigRational` so that order comparisons are exact at any
//! sequence depth. Conversions from `f64` are exact (every finite double
//! is rational); conversions back round to nearest.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::ToPrimitive;
use num::{One, Zero};

pub use num::rational::BigRational as Rat;

/// Exact conversion from a finite `f64`.
pub fn rat_from_f64(x: f64) -> Rat {
    BigRational::from_float(x).expect("finite value required")
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `p / q` as an exact rational; `q` must be nonzero.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_zero() -> Rat {
    BigRational::zero()
}

pub fn rat_one() -> Rat {
    BigRational::one()
}

/// Exact conversion of a full vector.
pub fn rats_from_f64s(xs: &[f64]) -> Vec<Rat> {
    xs.iter().map(|&x| rat_from_f64(x)).collect()
}

pub fn rats_to_f64s(xs: &[Rat]) -> Vec<f64> {
    xs.iter().map(rat_to_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip_is_exact() {
        for x in [0.0, 1.5, -3.25, 0.1, 1e-12, 123456.789] {
            assert_eq!(rat_to_f64(&rat_from_f64(x)), x);
        }
    }

    #[test]
    fn fractions() {
        assert_eq!(rat(1, 3) + rat(2, 3), rat_one());
        assert!(rat(1, 3) < rat(1, 2));
    }
}
