//! Dense real vectors and the inner-product geometry the solvers rely on.
//!
//! Everything in this crate works in a finite-dimensional real inner-product
//! space modelled as `Vector`. Construction through [`Vector::new`] enforces
//! finite entries; arithmetic on references never reallocates more than the
//! result.

use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::Error;

/// A point of R^n. Entries are finite on construction via [`Vector::new`];
/// intermediate arithmetic may produce non-finite entries, which callers
/// detect with [`Vector::is_finite`].
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    /// Wraps coordinates after checking every entry is finite.
    pub fn new(coords: Vec<f64>) -> Result<Self, Error> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Vector { coords })
        } else {
            Err(Error::NonFiniteData)
        }
    }

    /// Builds from computed coordinates without the finiteness check.
    /// Used for arithmetic results, where divergence is legitimate and is
    /// detected downstream.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        Vector { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.coords.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    /// Euclidean inner product. Errors when the dimensions differ.
    pub fn inner(&self, other: &Vector) -> Result<f64, Error> {
        Error::check_dims(self.dim(), other.dim())?;
        Ok(self.dot_unchecked(other))
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot_unchecked(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Distance ‖self − other‖ without allocating the difference.
    ///
    /// Panics on dimension mismatch, like the arithmetic operators.
    pub fn dist(&self, other: &Vector) -> f64 {
        assert_eq!(
            self.dim(),
            other.dim(),
            "dimension mismatch: {} vs {}",
            self.dim(),
            other.dim()
        );
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, a: f64) -> Vector {
        Vector::from_raw(self.coords.iter().map(|c| a * c).collect())
    }

    fn dot_unchecked(&self, other: &Vector) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Euclidean inner product of two vectors of equal dimension.
pub fn inner(a: &Vector, b: &Vector) -> Result<f64, Error> {
    a.inner(b)
}

/// Euclidean norm.
pub fn norm(a: &Vector) -> f64 {
    a.norm()
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self, Error> {
        Vector::new(coords)
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

macro_rules! elementwise {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Vector> for &Vector {
            type Output = Vector;

            fn $method(self, rhs: &Vector) -> Vector {
                assert_eq!(
                    self.dim(),
                    rhs.dim(),
                    "dimension mismatch: {} vs {}",
                    self.dim(),
                    rhs.dim()
                );
                Vector::from_raw(
                    self.coords
                        .iter()
                        .zip(&rhs.coords)
                        .map(|(a, b)| a $op b)
                        .collect(),
                )
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl Mul<f64> for &Vector {
    type Output = Vector;

    fn mul(self, a: f64) -> Vector {
        self.scale(a)
    }
}

impl Mul<&Vector> for f64 {
    type Output = Vector;

    fn mul(self, v: &Vector) -> Vector {
        v.scale(self)
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_entries() {
        assert!(Vector::new(vec![1.0, f64::NAN]).is_err());
        assert!(Vector::new(vec![f64::INFINITY]).is_err());
        assert!(Vector::new(vec![1.0, -2.5]).is_ok());
    }

    #[test]
    fn inner_checks_dimensions() {
        let a = Vector::new(vec![1.0, 2.0]).unwrap();
        let b = Vector::new(vec![3.0]).unwrap();
        assert!(matches!(
            a.inner(&b),
            Err(Error::DimensionMismatch { left: 2, right: 1 })
        ));
        let c = Vector::new(vec![3.0, -1.0]).unwrap();
        assert_eq!(a.inner(&c).unwrap(), 1.0);
    }

    #[test]
    fn norm_matches_inner() {
        let a = Vector::new(vec![3.0, 4.0]).unwrap();
        assert_eq!(a.norm(), 5.0);
        assert_eq!(a.norm_sq(), a.inner(&a).unwrap());
    }

    #[test]
    fn arithmetic_is_componentwise() {
        let a = Vector::new(vec![1.0, 2.0]).unwrap();
        let b = Vector::new(vec![0.5, -1.0]).unwrap();
        assert_eq!((&a + &b).as_slice(), &[1.5, 1.0]);
        assert_eq!((&a - &b).as_slice(), &[0.5, 3.0]);
        assert_eq!((&a * 2.0).as_slice(), &[2.0, 4.0]);
        assert_eq!((2.0 * &a).as_slice(), &[2.0, 4.0]);
        assert_eq!((-&a).as_slice(), &[-1.0, -2.0]);
        assert_eq!(a.dist(&b), (&a - &b).norm());
    }
}
