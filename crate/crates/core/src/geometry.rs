//! Points of the plane, identified with complex numbers.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PlanarPoint<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> PlanarPoint<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn norm(&self) -> T {
        self.re.hypot(self.im)
    }

    pub fn norm_sqr(&self) -> T {
        self.re * self.re + self.im * self.im
    }

    /// Euclidean inner product `<self, other>`.
    pub fn dot(&self, other: &Self) -> T {
        self.re * other.re + self.im * other.im
    }

    /// `Im(conj(self) * other)`, the signed area spanned by the two vectors.
    pub fn cross(&self, other: &Self) -> T {
        self.re * other.im - self.im * other.re
    }

    /// Counter-clockwise rotation by a quarter turn (multiplication by `i`).
    pub fn rotate_quarter(&self) -> Self {
        Self::new(-self.im, self.re)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.re * s, self.im * s)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }

    /// Applies the similarity `z -> scale * e^{i rotation} * z`.
    pub fn similarity(&self, scale: T, rotation: T) -> Self {
        (Complex::from_polar(scale, rotation) * self.to_complex()).into()
    }
}

impl<T> From<Complex<T>> for PlanarPoint<T> {
    fn from(z: Complex<T>) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl<T> From<PlanarPoint<T>> for Complex<T> {
    fn from(p: PlanarPoint<T>) -> Self {
        Complex::new(p.re, p.im)
    }
}

impl<T: Scalar> Add for PlanarPoint<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<T: Scalar> Sub for PlanarPoint<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<T: Scalar> Neg for PlanarPoint<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl<T: Scalar> Mul<T> for PlanarPoint<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turn_is_multiplication_by_i() {
        let p = PlanarPoint::new(0.3f64, -1.7);
        let q: PlanarPoint<f64> = (Complex::<f64>::i() * p.to_complex()).into();
        assert_eq!(p.rotate_quarter(), q);
        assert_eq!(p.dot(&p.rotate_quarter()), 0.0);
    }

    #[test]
    fn cross_is_signed() {
        let e1 = PlanarPoint::new(1.0, 0.0);
        let e2 = PlanarPoint::new(0.0, 1.0);
        assert_eq!(e1.cross(&e2), 1.0);
        assert_eq!(e2.cross(&e1), -1.0);
    }
}
