use num_complex::Complex64;

use super::mixed_form::REVERSE_SIGNS;
use super::{GenVector, MixedForm};
use crate::error::{B3Error, Result};

/// Sign table backing the spinor operations.
///
/// Production code always uses [`Ops::STANDARD`]. The acceptance suite passes
/// deliberately corrupted tables through the same code paths to confirm that
/// a sign error in reversal, the pairing, or the A-action is caught by the
/// checks rather than cancelled by a compensating error elsewhere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ops {
    /// Per-degree reversal signs, (+, +, -, -) for degrees 0..3.
    pub reverse_signs: [f64; 4],
    /// Sign between the two top-degree terms of the pairing.
    pub pairing_cross: f64,
    /// Sign of the grade-involuted summand of the A-field action.
    pub a_sign: f64,
}

impl Ops {
    pub const STANDARD: Ops = Ops {
        reverse_signs: REVERSE_SIGNS,
        pairing_cross: -1.0,
        a_sign: 1.0,
    };

    pub fn flipped_reverse() -> Ops {
        Ops {
            reverse_signs: [1.0, 1.0, 1.0, -1.0],
            ..Ops::STANDARD
        }
    }

    pub fn flipped_pairing() -> Ops {
        Ops {
            pairing_cross: 1.0,
            ..Ops::STANDARD
        }
    }

    pub fn flipped_a_action() -> Ops {
        Ops {
            a_sign: -1.0,
            ..Ops::STANDARD
        }
    }
}

impl Default for Ops {
    fn default() -> Self {
        Ops::STANDARD
    }
}

/// Clifford action of `v = X + f + α` on a spinor:
/// `ι_X ρ + f·(grade involution of ρ) + α ∧ ρ`.
///
/// Squares to the norm: `v·(v·ρ) = <v,v> ρ`.
pub fn clifford_act(v: &GenVector, rho: &MixedForm) -> MixedForm {
    rho.contract(&v.x) + v.f * rho.grade_involution() + v.alpha_form().wedge(rho)
}

/// Spinor pairing with values in the top degree: the coefficient of
/// `dx^1∧dx^2∧dx^3` in `rev(ρ_odd) ∧ ψ_even − rev(ρ_even) ∧ ψ_odd`.
pub fn spinor_pairing(rho: &MixedForm, psi: &MixedForm) -> Complex64 {
    spinor_pairing_in(&Ops::STANDARD, rho, psi)
}

pub fn spinor_pairing_in(ops: &Ops, rho: &MixedForm, psi: &MixedForm) -> Complex64 {
    let rev = rho.reverse_with_signs(&ops.reverse_signs);
    let plus = rev.odd_part().wedge(&psi.even_part()).top();
    let minus = rev.even_part().wedge(&psi.odd_part()).top();
    plus + ops.pairing_cross * minus
}

/// B-field endomorphism `ρ ↦ ρ + B∧ρ` (the exponential series truncates in
/// three variables since `B∧B = 0`). Rejects payloads that are not pure
/// degree 2.
pub fn b_field_action(b: &MixedForm, rho: &MixedForm) -> Result<MixedForm> {
    if !b.is_pure_degree(2) {
        return Err(B3Error::DegreeViolation {
            expected: 2,
            found: b.present_degrees(),
        });
    }
    Ok(*rho + b.wedge(rho))
}

/// A-field endomorphism `ρ ↦ ρ + A∧(grade involution of ρ)`. Rejects payloads
/// that are not pure degree 1.
pub fn a_field_action(a: &MixedForm, rho: &MixedForm) -> Result<MixedForm> {
    a_field_action_in(&Ops::STANDARD, a, rho)
}

pub fn a_field_action_in(ops: &Ops, a: &MixedForm, rho: &MixedForm) -> Result<MixedForm> {
    if !a.is_pure_degree(1) {
        return Err(B3Error::DegreeViolation {
            expected: 1,
            found: a.present_degrees(),
        });
    }
    Ok(*rho + ops.a_sign * a.wedge(&rho.grade_involution()))
}

/// The 8x7 complex matrix of `v ↦ v·ρ` over the basis
/// `[∂1, ∂2, ∂3, 1, dx^1, dx^2, dx^3]` of the generalized tangent space.
/// Entry `[m][j]` is the coefficient of basis monomial `m` in the action of
/// basis vector `j`.
pub fn action_matrix(rho: &MixedForm) -> [[Complex64; 7]; 8] {
    let mut cols = [[Complex64::new(0.0, 0.0); 7]; 8];
    let mut write = |j: usize, form: MixedForm| {
        for m in 0..8 {
            cols[m][j] = form.get(m as u8);
        }
    };
    for i in 0..3 {
        let mut x = [Complex64::new(0.0, 0.0); 3];
        x[i] = Complex64::new(1.0, 0.0);
        write(i, rho.contract(&x));
    }
    write(3, rho.grade_involution());
    for i in 0..3 {
        write(4 + i, MixedForm::dx(i + 1).wedge(rho));
    }
    cols
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent expansion of the pairing over basis monomials, using its
    /// own permutation-sign bookkeeping rather than the wedge of MixedForm.
    fn pairing_oracle(rho: &MixedForm, psi: &MixedForm) -> Complex64 {
        fn perm_sign(a: u8, b: u8) -> f64 {
            if a & b != 0 {
                return 0.0;
            }
            let mut seq = Vec::new();
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
            let mut s = 1.0;
            for i in 0..seq.len() {
                for j in (i + 1)..seq.len() {
                    if seq[i] > seq[j] {
                        s = -s;
                    }
                }
            }
            s
        }
        let rev_sign = |k: usize| [1.0, 1.0, -1.0, -1.0][k];
        let mut total = c(0.0, 0.0);
        for a in 0..8u8 {
            let ka = MixedForm::degree_of_mask(a);
            for b in 0..8u8 {
                if a | b != 0b111 || a & b != 0 {
                    continue;
                }
                let kb = MixedForm::degree_of_mask(b);
                let term = rev_sign(ka) * perm_sign(a, b) * rho.get(a) * psi.get(b);
                if ka % 2 == 1 && kb % 2 == 0 {
                    total += term;
                } else if ka % 2 == 0 && kb % 2 == 1 {
                    total -= term;
                }
            }
        }
        total
    }

    fn sample_forms() -> Vec<MixedForm> {
        let mut out = Vec::new();
        for seed in 0..6u32 {
            let mut f = MixedForm::ZERO;
            for m in 0..8u8 {
                let t = (seed as f64 + 1.0) * (m as f64 + 1.0);
                f.set(m, c((t * 0.37).sin(), (t * 0.73).cos()));
            }
            out.push(f);
        }
        out
    }

    #[test]
    fn pairing_matches_bruteforce_expansion() {
        for rho in sample_forms() {
            for psi in sample_forms() {
                let got = spinor_pairing(&rho, &psi);
                let want = pairing_oracle(&rho, &psi);
                assert!((got - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn pairing_of_scalars_vanishes() {
        assert_eq!(
            spinor_pairing(&MixedForm::one(), &MixedForm::one()),
            c(0.0, 0.0)
        );
    }

    #[test]
    fn pairing_of_product_spinor_as_written() {
        // 1 + i dθ + i ω∧dθ − dθ∧ω with ω = dx∧dy, θ the third coordinate,
        // taken literally as a mixed form; its self-conjugate pairing is
        // 2·(dθ∧ω coefficient). Computed with the expansion oracle.
        let omega = MixedForm::basis(0b011);
        let dtheta = MixedForm::dx(3);
        let rho = MixedForm::one()
            + c(0.0, 1.0) * dtheta
            + c(0.0, 1.0) * omega.wedge(&dtheta)
            - dtheta.wedge(&omega);
        let got = spinor_pairing(&rho, &rho.conj());
        let want = pairing_oracle(&rho, &rho.conj());
        assert!((got - want).norm() < 1e-14);
        // dθ∧ω = dθ∧dx∧dy = +e_{123}; coefficient is 2.
        assert!((got - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn clifford_action_examples() {
        // Contraction: (∂1, 0, 0) · e_{12} = dx2.
        let v = GenVector::coordinate_vector(1);
        let got = clifford_act(&v, &MixedForm::basis(0b011));
        assert!(got.approx_eq(&MixedForm::dx(2), 0.0));

        // Scalar part acts by grade involution: (0, 1, 0) · dx1 = -dx1.
        let v = GenVector::scalar(1.0);
        let got = clifford_act(&v, &MixedForm::dx(1));
        assert!(got.approx_eq(&(-MixedForm::dx(1)), 0.0));

        // One-form part wedges: (0, 0, dx1) · dx2 = e_{12}.
        let v = GenVector::one_form([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let got = clifford_act(&v, &MixedForm::dx(2));
        assert!(got.approx_eq(&MixedForm::basis(0b011), 0.0));
    }

    #[test]
    fn contraction_of_complex_line_spinor() {
        // ρ = z + dz + i dz∧dt at a point: ι_{∂t} ρ = -i dz.
        let z = c(0.7, -0.3);
        let dz = MixedForm::one_form([c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let dt = MixedForm::dx(3);
        let rho = MixedForm::scalar(z) + dz + c(0.0, 1.0) * dz.wedge(&dt);
        let got = clifford_act(&GenVector::coordinate_vector(3), &rho);
        let want = c(0.0, -1.0) * dz;
        assert!(got.approx_eq(&want, 1e-15));
    }

    #[test]
    fn a_and_b_actions() {
        // B = 0 and A = 0 are identities.
        let rho = sample_forms()[0];
        assert!(b_field_action(&MixedForm::ZERO, &rho)
            .unwrap()
            .approx_eq(&rho, 0.0));
        assert!(a_field_action(&MixedForm::ZERO, &rho)
            .unwrap()
            .approx_eq(&rho, 0.0));

        // B = e_{12} on 1 gives 1 + e_{12}.
        let got = b_field_action(&MixedForm::basis(0b011), &MixedForm::one()).unwrap();
        assert!(got.approx_eq(&(MixedForm::one() + MixedForm::basis(0b011)), 0.0));

        // A = dx1 on 1 gives 1 + dx1; on dx2 gives dx2 - e_{12}.
        let a = MixedForm::dx(1);
        let got = a_field_action(&a, &MixedForm::one()).unwrap();
        assert!(got.approx_eq(&(MixedForm::one() + MixedForm::dx(1)), 0.0));
        let got = a_field_action(&a, &MixedForm::dx(2)).unwrap();
        assert!(got.approx_eq(&(MixedForm::dx(2) - MixedForm::basis(0b011)), 0.0));
    }

    #[test]
    fn degree_preconditions_are_hard_failures() {
        let bad = MixedForm::one() + MixedForm::basis(0b011);
        assert!(b_field_action(&bad, &MixedForm::one()).is_err());
        assert!(a_field_action(&bad, &MixedForm::one()).is_err());
    }

    #[test]
    fn action_matrix_columns_match_action() {
        let rho = sample_forms()[2];
        let m = action_matrix(&rho);
        let basis: Vec<GenVector> = (0..7)
            .map(|j| {
                let mut col = [c(0.0, 0.0); 7];
                col[j] = c(1.0, 0.0);
                GenVector::from_column(&col)
            })
            .collect();
        for (j, v) in basis.iter().enumerate() {
            let act = clifford_act(v, &rho);
            for mask in 0..8u8 {
                assert!((m[mask as usize][j] - act.get(mask)).norm() < 1e-15);
            }
        }
    }
}
