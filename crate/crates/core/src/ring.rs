//! The minimal ring interface shared by exact and numeric scalars.
//!
//! Sparse matrices, tensor operators and representation images are all
//! generic over [`Ring`], so the same check code runs on exact Laurent
//! expressions ([`QExpr`](crate::coeff::QExpr)), exact fractions
//! ([`RatFun`](crate::coeff::RatFun)), noncommutative polynomials and
//! complex floating point values.

use num_complex::Complex64;
use std::fmt::{Debug, Display};

pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    /// Structural zero test. For floating point values this is `== 0.0`;
    /// use [`Ring::magnitude`] for tolerance-based decisions.
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }

    /// Size of a value for numeric verdicts: `None` for exact types.
    fn magnitude(&self) -> Option<f64> {
        None
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn magnitude(&self) -> Option<f64> {
        Some(self.norm())
    }
}
