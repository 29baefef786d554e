//! Scalar abstraction shared by the geometric modules.
//!
//! Everything that touches coordinates is generic over [`Scalar`], which is
//! implemented for `f32` and `f64`. The grid side of the crate is purely
//! combinatorial and works on integers.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point coordinate type.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Default absolute slack on squared distances for all `<= delta` tests.
    fn default_tol() -> Self;

    /// Lossy conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("scalar literal out of range")
    }
}

impl Scalar for f64 {
    fn default_tol() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn default_tol() -> Self {
        1e-4
    }
}

/// Absolute tolerance applied to squared distances.
///
/// A point `p` counts as inside the closed disk of radius `r` around `c`
/// iff `|p - c|^2 <= r^2 + tol`. Solver, brute-force oracles and the
/// arrangement all go through [`Tolerance::within`] so they never disagree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T>(pub T);

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Tolerance(T::default_tol())
    }
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(tol: T) -> Self {
        Tolerance(tol)
    }

    pub fn value(self) -> T {
        self.0
    }

    /// `sq_dist <= radius^2 + tol`.
    #[inline]
    pub fn within(self, sq_dist: T, radius: T) -> bool {
        sq_dist <= radius * radius + self.0
    }

    /// Radius inflated so that `within(d², r)` implies `d <= inflated(r)`.
    #[inline]
    pub fn inflated(self, radius: T) -> T {
        (radius * radius + self.0).sqrt()
    }
}
