//! Coefficient rings for [`Polynomial`](crate::poly::Polynomial).
//!
//! Every evaluator in this crate is generic over the coefficient type. The
//! bound is deliberately restricted to exact signed rings: `BigInt` is the
//! default (see [`TuttePolynomial`](crate::TuttePolynomial)), while `i64` and
//! `i128` are handy for tests and small inputs where overflow is impossible.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{Num, Signed};

/// Exact signed coefficient ring.
pub trait Coefficient:
    Clone + Eq + Hash + Debug + Display + FromStr + Num + Signed + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: Clone + Eq + Hash + Debug + Display + FromStr + Num + Signed + Send + Sync + 'static
{
}

/// Converts a nonnegative count into a coefficient by repeated doubling.
///
/// Only `Num` is available on the trait, so there is no `From<u64>`.
pub fn from_count<C: Coefficient>(mut n: u64) -> C {
    let mut acc = C::zero();
    let mut unit = C::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc + unit.clone();
        }
        unit = unit.clone() + unit;
        n >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn counts_convert_exactly() {
        assert_eq!(from_count::<i64>(0), 0);
        assert_eq!(from_count::<i64>(37), 37);
        assert_eq!(from_count::<BigInt>(u64::MAX), BigInt::from(u64::MAX));
    }
}
