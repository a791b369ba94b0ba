use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

/// Number of set bits below bit `i` in `mask`.
const fn bits_below(mask: u8, i: u8) -> u32 {
    (mask & ((1u8 << i) - 1)).count_ones()
}

const fn wedge_sign_const(a: u8, b: u8) -> i8 {
    if a & b != 0 {
        return 0;
    }
    // Parity of the permutation sorting (a ascending, b ascending) into
    // ascending order: each index of b jumps over the indices of a above it.
    let mut inversions = 0u32;
    let mut i = 0u8;
    while i < 3 {
        if b & (1 << i) != 0 {
            inversions += (a >> (i + 1)).count_ones();
        }
        i += 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

const fn build_wedge_table() -> [[i8; 8]; 8] {
    let mut t = [[0i8; 8]; 8];
    let mut a = 0;
    while a < 8 {
        let mut b = 0;
        while b < 8 {
            t[a][b] = wedge_sign_const(a as u8, b as u8);
            b += 1;
        }
        a += 1;
    }
    t
}

const WEDGE_SIGN: [[i8; 8]; 8] = build_wedge_table();

/// Sign of `e_a ∧ e_b` relative to the ascending basis monomial `e_{a|b}`;
/// zero when the index sets overlap.
pub fn wedge_sign(a: u8, b: u8) -> f64 {
    WEDGE_SIGN[a as usize][b as usize] as f64
}

/// Degree of each basis mask (popcount).
const DEGREE: [usize; 8] = [0, 1, 1, 2, 1, 2, 2, 3];

/// Reversal sign per degree: (-1)^{k(k-1)/2} for k = 0..3.
pub(crate) const REVERSE_SIGNS: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

/// A mixed-degree complex differential form at a point of a 3-dimensional
/// chart: one coefficient per subset of `{1,2,3}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedForm {
    coeff: [Complex64; 8],
}

impl MixedForm {
    pub const ZERO: MixedForm = MixedForm {
        coeff: [Complex64::new(0.0, 0.0); 8],
    };

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn scalar(z: impl Into<Complex64>) -> Self {
        let mut f = Self::ZERO;
        f.coeff[0] = z.into();
        f
    }

    pub fn one() -> Self {
        Self::scalar(1.0)
    }

    /// The coordinate one-form `dx^i`, `i` in `1..=3`.
    pub fn dx(i: usize) -> Self {
        assert!((1..=3).contains(&i), "coordinate index out of range");
        let mut f = Self::ZERO;
        f.coeff[1 << (i - 1)] = Complex64::new(1.0, 0.0);
        f
    }

    /// A basis monomial by mask, with unit coefficient.
    pub fn basis(mask: u8) -> Self {
        let mut f = Self::ZERO;
        f.coeff[mask as usize] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn from_coeffs(coeff: [Complex64; 8]) -> Self {
        Self { coeff }
    }

    /// A one-form with the given coefficients on `dx^1, dx^2, dx^3`.
    pub fn one_form(a: [Complex64; 3]) -> Self {
        let mut f = Self::ZERO;
        f.coeff[0b001] = a[0];
        f.coeff[0b010] = a[1];
        f.coeff[0b100] = a[2];
        f
    }

    /// A two-form with coefficients on `dx^1∧dx^2, dx^1∧dx^3, dx^2∧dx^3`.
    pub fn two_form(c12: Complex64, c13: Complex64, c23: Complex64) -> Self {
        let mut f = Self::ZERO;
        f.coeff[0b011] = c12;
        f.coeff[0b101] = c13;
        f.coeff[0b110] = c23;
        f
    }

    /// Volume-form coefficient times `dx^1∧dx^2∧dx^3`.
    pub fn top_form(c: Complex64) -> Self {
        let mut f = Self::ZERO;
        f.coeff[0b111] = c;
        f
    }

    pub fn get(&self, mask: u8) -> Complex64 {
        self.coeff[mask as usize]
    }

    pub fn set(&mut self, mask: u8, v: impl Into<Complex64>) {
        self.coeff[mask as usize] = v.into();
    }

    pub fn coeffs(&self) -> &[Complex64; 8] {
        &self.coeff
    }

    /// Coefficient of the top monomial `dx^1∧dx^2∧dx^3`.
    pub fn top(&self) -> Complex64 {
        self.coeff[0b111]
    }

    pub fn degree_of_mask(mask: u8) -> usize {
        DEGREE[mask as usize]
    }

    /// Projection onto the degree-`k` component.
    pub fn degree_part(&self, k: usize) -> Self {
        let mut f = Self::ZERO;
        for m in 0..8 {
            if DEGREE[m] == k {
                f.coeff[m] = self.coeff[m];
            }
        }
        f
    }

    pub fn even_part(&self) -> Self {
        let mut f = Self::ZERO;
        for m in 0..8 {
            if DEGREE[m] % 2 == 0 {
                f.coeff[m] = self.coeff[m];
            }
        }
        f
    }

    pub fn odd_part(&self) -> Self {
        *self - self.even_part()
    }

    /// True when every coefficient outside degree `k` vanishes.
    pub fn is_pure_degree(&self, k: usize) -> bool {
        (0..8).all(|m| DEGREE[m] == k || self.coeff[m].norm() == 0.0)
    }

    /// Degrees carrying a nonzero coefficient.
    pub fn present_degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..8)
            .filter(|&m| self.coeff[m].norm() > 0.0)
            .map(|m| DEGREE[m])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Grade involution: negates the odd-degree components. An involution.
    pub fn grade_involution(&self) -> Self {
        let mut f = *self;
        for m in 0..8 {
            if DEGREE[m] % 2 == 1 {
                f.coeff[m] = -f.coeff[m];
            }
        }
        f
    }

    /// Reversal antiautomorphism: multiplies the degree-k component by
    /// (-1)^{k(k-1)/2}, i.e. signs (+, +, -, -) for k = 0..3.
    pub fn reverse(&self) -> Self {
        self.reverse_with_signs(&REVERSE_SIGNS)
    }

    pub(crate) fn reverse_with_signs(&self, signs: &[f64; 4]) -> Self {
        let mut f = *self;
        for m in 0..8 {
            f.coeff[m] *= signs[DEGREE[m]];
        }
        f
    }

    /// Complex conjugation of all coefficients.
    pub fn conj(&self) -> Self {
        let mut f = *self;
        for c in f.coeff.iter_mut() {
            *c = c.conj();
        }
        f
    }

    /// Exterior product. Bilinear, associative, graded-commutative per degree.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::ZERO;
        for a in 0..8usize {
            let ca = self.coeff[a];
            if ca.norm_sqr() == 0.0 {
                continue;
            }
            for b in 0..8usize {
                let s = WEDGE_SIGN[a][b];
                if s != 0 {
                    out.coeff[a | b] += (s as f64) * ca * other.coeff[b];
                }
            }
        }
        out
    }

    /// Interior product with the (complex) vector `x = Σ x_i ∂_i`.
    pub fn contract(&self, x: &[Complex64; 3]) -> Self {
        let mut out = Self::ZERO;
        for m in 0..8u8 {
            let c = self.coeff[m as usize];
            if c.norm_sqr() == 0.0 {
                continue;
            }
            for i in 0..3u8 {
                if m & (1 << i) != 0 {
                    let sign = if bits_below(m, i) % 2 == 0 { 1.0 } else { -1.0 };
                    out.coeff[(m & !(1 << i)) as usize] += sign * x[i as usize] * c;
                }
            }
        }
        out
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeff.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn degree_norm(&self, k: usize) -> f64 {
        (0..8)
            .filter(|&m| DEGREE[m] == k)
            .map(|m| self.coeff[m].norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, z: impl Into<Complex64>) -> Self {
        let z = z.into();
        let mut f = *self;
        for c in f.coeff.iter_mut() {
            *c *= z;
        }
        f
    }

    /// True when all imaginary parts vanish to within `tol * ||self||`.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.norm().max(1.0);
        self.coeff.iter().all(|c| c.im.abs() <= tol * scale)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (*self - *other).norm() <= tol
    }
}

impl Default for MixedForm {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for MixedForm {
    type Output = MixedForm;
    fn add(self, rhs: Self) -> Self {
        let mut f = self;
        for m in 0..8 {
            f.coeff[m] += rhs.coeff[m];
        }
        f
    }
}

impl AddAssign for MixedForm {
    fn add_assign(&mut self, rhs: Self) {
        for m in 0..8 {
            self.coeff[m] += rhs.coeff[m];
        }
    }
}

impl Sub for MixedForm {
    type Output = MixedForm;
    fn sub(self, rhs: Self) -> Self {
        let mut f = self;
        for m in 0..8 {
            f.coeff[m] -= rhs.coeff[m];
        }
        f
    }
}

impl Neg for MixedForm {
    type Output = MixedForm;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul<MixedForm> for f64 {
    type Output = MixedForm;
    fn mul(self, rhs: MixedForm) -> MixedForm {
        rhs.scale(self)
    }
}

impl Mul<MixedForm> for Complex64 {
    type Output = MixedForm;
    fn mul(self, rhs: MixedForm) -> MixedForm {
        rhs.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Permutation-sign oracle: concatenate the ascending index lists of the
    /// two masks and count inversions by bubble sort.
    fn sign_oracle(a: u8, b: u8) -> i32 {
        if a & b != 0 {
            return 0;
        }
        let mut seq: Vec<u8> = Vec::new();
        for i in 0..3 {
            if a & (1 << i) != 0 {
                seq.push(i);
            }
        }
        for i in 0..3 {
            if b & (1 << i) != 0 {
                seq.push(i);
            }
        }
        let mut sign = 1;
        let n = seq.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if seq[i] > seq[j] {
                    sign = -sign;
                }
            }
        }
        sign
    }

    #[test]
    fn wedge_table_matches_permutation_oracle() {
        for a in 0..8u8 {
            for b in 0..8u8 {
                assert_eq!(
                    wedge_sign(a, b) as i32,
                    sign_oracle(a, b),
                    "sign mismatch at masks {a:#05b}, {b:#05b}"
                );
            }
        }
    }

    #[test]
    fn wedge_basis_products() {
        // dx1 ∧ dx2 = e_{12}
        let w = MixedForm::dx(1).wedge(&MixedForm::dx(2));
        assert_eq!(w.get(0b011), Complex64::new(1.0, 0.0));
        // dx2 ∧ dx1 = -e_{12}
        let w = MixedForm::dx(2).wedge(&MixedForm::dx(1));
        assert_eq!(w.get(0b011), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn wedge_of_inhomogeneous_factors() {
        // (1 + dx1) ∧ (1 + dx2) = 1 + dx1 + dx2 + e_{12},
        // cross-checked by brute force over all 8x8 basis products.
        let a = MixedForm::one() + MixedForm::dx(1);
        let b = MixedForm::one() + MixedForm::dx(2);
        let w = a.wedge(&b);

        let mut oracle = MixedForm::ZERO;
        for ma in 0..8u8 {
            for mb in 0..8u8 {
                let s = sign_oracle(ma, mb);
                if s != 0 {
                    let c = a.get(ma) * b.get(mb) * (s as f64);
                    let mut add = MixedForm::ZERO;
                    add.set(ma | mb, oracle.get(ma | mb) + c);
                    oracle.set(ma | mb, oracle.get(ma | mb) + c);
                }
            }
        }
        assert!(w.approx_eq(&oracle, 0.0));

        let expect =
            MixedForm::one() + MixedForm::dx(1) + MixedForm::dx(2) + MixedForm::basis(0b011);
        assert!(w.approx_eq(&expect, 0.0));
    }

    #[test]
    fn grade_involution_and_reverse_signs() {
        let rho = MixedForm::one()
            + MixedForm::dx(1)
            + MixedForm::basis(0b011)
            + MixedForm::basis(0b111);
        let t = rho.grade_involution();
        assert_eq!(t.get(0b000), Complex64::new(1.0, 0.0));
        assert_eq!(t.get(0b001), Complex64::new(-1.0, 0.0));
        assert_eq!(t.get(0b011), Complex64::new(1.0, 0.0));
        assert_eq!(t.get(0b111), Complex64::new(-1.0, 0.0));

        assert_eq!(
            MixedForm::basis(0b011).reverse().get(0b011),
            Complex64::new(-1.0, 0.0)
        );
        assert_eq!(
            MixedForm::basis(0b111).reverse().get(0b111),
            Complex64::new(-1.0, 0.0)
        );
        let low = MixedForm::one() + MixedForm::dx(1);
        assert!(low.reverse().approx_eq(&low, 0.0));
    }

    #[test]
    fn contraction_signs() {
        // ι_{∂1} e_{12} = dx2, ι_{∂2} e_{12} = -dx1.
        let e12 = MixedForm::basis(0b011);
        let d1 = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let d2 = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        assert!(e12.contract(&d1).approx_eq(&MixedForm::dx(2), 0.0));
        assert!(e12.contract(&d2).approx_eq(&(-MixedForm::dx(1)), 0.0));
    }
}
