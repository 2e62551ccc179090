use std::fmt::{Debug, Display};
use std::ops::{Add, Sub};

use num_traits::Zero;

/// Numeric type usable for weights, bounds, costs and the target value.
///
/// Every comparison the solvers make must be exact, so a total order is
/// required. Fixed-point integers (`i32`, `i64`, `i128`) and `Ratio<_>` all
/// qualify; IEEE floats do not.
pub trait Scalar: Copy + Ord + Zero + Add<Output = Self> + Sub<Output = Self> + Debug + Display + Send + Sync {}

impl<T> Scalar for T where T: Copy + Ord + Zero + Add<Output = T> + Sub<Output = T> + Debug + Display + Send + Sync {}

/// Sum of an iterator of scalars, starting from zero.
pub(crate) fn sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}
