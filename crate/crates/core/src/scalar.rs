//! Scalar abstractions.
//!
//! Exact chain analysis runs over [`Probability`] so the same code produces
//! floating point or exact rational results. Statistics and curve fits only
//! need real arithmetic and use [`Real`].

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Arbitrary precision rational, used by the exact verification mode.
pub type Rational = BigRational;

/// A probability-like scalar: a field with an ordering, constructible from
/// integer ratios.
pub trait Probability: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_ratio(num: u128, den: u128) -> Self;
    fn from_big_ratio(num: &BigUint, den: &BigUint) -> Self;
    fn to_f64(&self) -> f64;
    /// Absolute tolerance used when comparing values that should be equal.
    /// Zero for exact types.
    fn tolerance() -> Self;
    fn is_exact() -> bool {
        false
    }
}

macro_rules! float_probability {
    ($t:ty, $tol:expr) => {
        impl Probability for $t {
            fn from_ratio(num: u128, den: u128) -> Self {
                (num as f64 / den as f64) as $t
            }
            fn from_big_ratio(num: &BigUint, den: &BigUint) -> Self {
                let r = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
                ToPrimitive::to_f64(&r).unwrap_or(f64::NAN) as $t
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn tolerance() -> Self {
                $tol
            }
        }
    };
}

float_probability!(f64, 1e-12);
float_probability!(f32, 1e-5);

impl Probability for BigRational {
    fn from_ratio(num: u128, den: u128) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_big_ratio(num: &BigUint, den: &BigUint) -> Self {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn tolerance() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }
    fn is_exact() -> bool {
        true
    }
}

/// Real scalar for statistics and fitting (f32 or f64).
pub trait Real: Float + FromPrimitive + Debug + Default + Send + Sync + 'static {}

impl<T: Float + FromPrimitive + Debug + Default + Send + Sync + 'static> Real for T {}

pub(crate) fn real<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("finite constant")
}
