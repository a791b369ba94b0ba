use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use super::MixedForm;

/// A section value of `T ⊕ 1 ⊕ T*`: vector components, a complex scalar and
/// one-form components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GenVector {
    pub x: [Complex64; 3],
    pub f: Complex64,
    pub alpha: [Complex64; 3],
}

impl GenVector {
    pub const ZERO: GenVector = GenVector {
        x: [Complex64::new(0.0, 0.0); 3],
        f: Complex64::new(0.0, 0.0),
        alpha: [Complex64::new(0.0, 0.0); 3],
    };

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn vector(x: [Complex64; 3]) -> Self {
        Self {
            x,
            ..Self::ZERO
        }
    }

    pub fn scalar(f: impl Into<Complex64>) -> Self {
        Self {
            f: f.into(),
            ..Self::ZERO
        }
    }

    pub fn one_form(alpha: [Complex64; 3]) -> Self {
        Self {
            alpha,
            ..Self::ZERO
        }
    }

    /// The unit coordinate vector ∂_i, `i` in `1..=3`.
    pub fn coordinate_vector(i: usize) -> Self {
        assert!((1..=3).contains(&i));
        let mut v = Self::ZERO;
        v.x[i - 1] = Complex64::new(1.0, 0.0);
        v
    }

    /// The one-form part as a mixed form.
    pub fn alpha_form(&self) -> MixedForm {
        MixedForm::one_form(self.alpha)
    }

    /// Symmetric pairing `½(α(Y) + β(X)) + f g`; at `w = v` this is the norm
    /// `α(X) + f²`.
    pub fn pairing(&self, other: &GenVector) -> Complex64 {
        let mut acc = self.f * other.f;
        for i in 0..3 {
            acc += 0.5 * (self.alpha[i] * other.x[i] + other.alpha[i] * self.x[i]);
        }
        acc
    }

    pub fn norm_value(&self) -> Complex64 {
        self.pairing(self)
    }

    /// Euclidean norm of the 7 complex components.
    pub fn norm(&self) -> f64 {
        let mut acc = self.f.norm_sqr();
        for i in 0..3 {
            acc += self.x[i].norm_sqr() + self.alpha[i].norm_sqr();
        }
        acc.sqrt()
    }

    pub fn scale(&self, z: impl Into<Complex64>) -> Self {
        let z = z.into();
        let mut v = *self;
        for i in 0..3 {
            v.x[i] *= z;
            v.alpha[i] *= z;
        }
        v.f *= z;
        v
    }

    /// Packs into the 7-component column used by the action matrix:
    /// `[x1, x2, x3, f, a1, a2, a3]`.
    pub fn to_column(&self) -> [Complex64; 7] {
        [
            self.x[0], self.x[1], self.x[2], self.f, self.alpha[0], self.alpha[1], self.alpha[2],
        ]
    }

    pub fn from_column(col: &[Complex64; 7]) -> Self {
        Self {
            x: [col[0], col[1], col[2]],
            f: col[3],
            alpha: [col[4], col[5], col[6]],
        }
    }
}

impl Add for GenVector {
    type Output = GenVector;
    fn add(self, rhs: Self) -> Self {
        let mut v = self;
        for i in 0..3 {
            v.x[i] += rhs.x[i];
            v.alpha[i] += rhs.alpha[i];
        }
        v.f += rhs.f;
        v
    }
}

impl Sub for GenVector {
    type Output = GenVector;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.neg()
    }
}

impl Neg for GenVector {
    type Output = GenVector;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norm_values() {
        // (∂1, 0, dx1) has norm α(X) = 1; flipping the form sign gives -1.
        let mut v = GenVector::coordinate_vector(1);
        v.alpha[0] = c(1.0, 0.0);
        assert_eq!(v.norm_value(), c(1.0, 0.0));
        v.alpha[0] = c(-1.0, 0.0);
        assert_eq!(v.norm_value(), c(-1.0, 0.0));

        let w = GenVector::scalar(c(0.0, 2.0));
        assert_eq!(w.norm_value(), c(-4.0, 0.0)); // f² = (2i)²
    }

    #[test]
    fn signature_of_standard_basis_gram() {
        // Gram matrix of the real basis {∂i, 1, dx^i}: three hyperbolic pairs
        // and one positive direction, signature (4, 3).
        let mut basis = Vec::new();
        for i in 1..=3 {
            basis.push(GenVector::coordinate_vector(i));
        }
        basis.push(GenVector::scalar(1.0));
        for i in 0..3 {
            let mut v = GenVector::ZERO;
            v.alpha[i] = c(1.0, 0.0);
            basis.push(v);
        }
        let mut gram = nalgebra::DMatrix::<f64>::zeros(7, 7);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                gram[(i, j)] = a.pairing(b).re;
            }
        }
        let eig = gram.symmetric_eigen();
        let pos = eig.eigenvalues.iter().filter(|&&l| l > 1e-12).count();
        let neg = eig.eigenvalues.iter().filter(|&&l| l < -1e-12).count();
        assert_eq!((pos, neg), (4, 3));
    }

    #[test]
    fn polarization_consistency() {
        // 2<v,w> = α_v(X_w) + α_w(X_v) + 2 f_v f_w matches the quadratic form.
        let v = GenVector {
            x: [c(1.0, 0.5), c(0.0, -1.0), c(2.0, 0.0)],
            f: c(0.5, 0.25),
            alpha: [c(0.0, 1.0), c(1.0, 0.0), c(-1.0, 2.0)],
        };
        let q = |u: &GenVector| u.pairing(u);
        let sum = v + v;
        let lhs = q(&sum);
        let rhs = q(&v) * 4.0;
        assert!((lhs - rhs).norm() < 1e-14);
    }
}
