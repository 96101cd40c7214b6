//! Exact scalar types.
//!
//! Integers are `num_bigint::BigInt`; rationals are `num_rational::BigRational`,
//! which keeps every value in lowest terms with a positive denominator.

use core::fmt::{Debug, Display};

use num_traits::{Signed, ToPrimitive};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Matrix entry type: arbitrary-precision integers or rationals.
pub trait Scalar: Clone + Ord + Signed + Debug + Display + Send + Sync + 'static {
    fn to_rational(&self) -> BigRational;

    /// Nearest `f64`; used only for floating estimates.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for BigInt {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `1 - 2^-exp` exactly.
pub fn one_minus_pow2_neg(exp: u64) -> BigRational {
    let den = BigInt::from(1u8) << exp;
    BigRational::new(&den - 1u8, den)
}
