//! Exact rational scalars.
//!
//! `Scalar` is a reduced fraction of arbitrary-precision integers with a
//! positive denominator; every field operation is exact.

use num_bigint::BigInt;

pub type Scalar = num_rational::BigRational;

/// Scalar from an integer.
pub fn rat(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Scalar from a fraction; `den` must be nonzero.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}
