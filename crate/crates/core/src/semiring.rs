//! Scalar semirings for matrix morphisms.

use std::fmt::Debug;

use num_complex::Complex64;
use serde_json::Value;

/// A commutative-or-not semiring: `add` is an associative commutative monoid
/// with unit `zero`, `mul` an associative monoid with unit `one`, `mul`
/// distributes over `add`, and `zero` is absorbing.
pub trait Semiring: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// Short name used in reports.
    const NAME: &'static str;
    /// Whether equality is exact (`distance` is 0 or 1).
    const EXACT: bool;
    /// Default comparison tolerance for diagram checks.
    const TOLERANCE: f64;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    /// Discrepancy between two scalars; 0 iff equal for exact semirings.
    fn distance(&self, other: &Self) -> f64;

    /// JSON encoding of one matrix entry.
    fn to_json(&self) -> Value;
}

/// The extra structure present for complex scalars but not booleans.
pub trait StarRing: Semiring {
    fn sub(&self, other: &Self) -> Self;
    fn conj(&self) -> Self;
    fn abs(&self) -> f64;
}

/// Booleans under `(∨, ∧)`: matrices are relations, composition is relational
/// composition. There is no subtraction.
impl Semiring for bool {
    const NAME: &'static str = "boolean";
    const EXACT: bool = true;
    const TOLERANCE: f64 = 0.0;

    fn zero() -> Self {
        false
    }

    fn one() -> Self {
        true
    }

    fn add(&self, other: &Self) -> Self {
        *self || *other
    }

    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }

    fn distance(&self, other: &Self) -> f64 {
        if self == other {
            0.0
        } else {
            1.0
        }
    }

    fn to_json(&self) -> Value {
        Value::from(u8::from(*self))
    }
}

impl Semiring for Complex64 {
    const NAME: &'static str = "complex";
    const EXACT: bool = false;
    const TOLERANCE: f64 = 1e-10;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    #[inline]
    fn add(&self, other: &Self) -> Self {
        self + other
    }

    #[inline]
    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }

    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
}

impl StarRing for Complex64 {
    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn abs(&self) -> f64 {
        self.norm()
    }
}
