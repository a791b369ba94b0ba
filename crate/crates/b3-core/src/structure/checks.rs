use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{action_matrix, spinor_pairing_in, GenVector, MixedForm, Ops};
use crate::error::{B3Error, Result};

fn realified_action(rho: &MixedForm) -> DMatrix<f64> {
    let cols = action_matrix(rho);
    let mut out = DMatrix::<f64>::zeros(16, 14);
    for i in 0..8 {
        for j in 0..7 {
            let z = cols[i][j];
            out[(i, j)] = z.re;
            out[(i, j + 7)] = -z.im;
            out[(i + 8, j)] = z.im;
            out[(i + 8, j + 7)] = z.re;
        }
    }
    out
}

fn sorted_singular_values(rho: &MixedForm) -> Vec<f64> {
    let svd = realified_action(rho).svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().cloned().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Continuous purity measure: the 9th singular value of the realified action
/// matrix over the largest. A pure spinor has a 3-complex-dimensional
/// annihilator, hence complex rank 4 (real rank 8), so this ratio vanishes.
pub fn purity_defect(rho: &MixedForm) -> f64 {
    let s = sorted_singular_values(rho);
    if s[0] == 0.0 {
        return f64::INFINITY;
    }
    s[8] / s[0]
}

/// Purity test: builds the linear map `v ↦ v·ρ` from the 7-dimensional
/// generalized tangent space and decides its kernel dimension by singular
/// values against a relative threshold. Pure iff the kernel has the maximal
/// isotropic dimension 3.
pub fn check_pure(rho: &MixedForm, rel_cutoff: f64) -> Result<(bool, usize)> {
    if rho.norm() < 1e-300 {
        return Err(B3Error::ZeroSpinor { op: "check_pure" });
    }
    let s = sorted_singular_values(rho);
    let cutoff = rel_cutoff * s[0];
    let rank_real = s.iter().filter(|&&x| x > cutoff).count();
    let kernel_dim = (14 - rank_real) / 2;
    Ok((kernel_dim == 3, kernel_dim))
}

/// An orthonormal basis (over ℂ) of the annihilator `{v : v·ρ = 0}`.
pub fn annihilator_basis(rho: &MixedForm, rel_cutoff: f64) -> Vec<GenVector> {
    let ar = realified_action(rho);
    let svd = ar.svd(false, true);
    let vt = svd.v_t.as_ref().expect("svd v_t");
    let sigma = &svd.singular_values;
    let smax = sigma.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = rel_cutoff * smax;

    let mut basis: Vec<DVector<Complex64>> = Vec::new();
    for k in 0..sigma.len() {
        if sigma[k] <= cutoff {
            let row = vt.row(k).transpose();
            let mut v = DVector::from_fn(7, |i, _| Complex64::new(row[i], row[i + 7]));
            for e in &basis {
                let proj: Complex64 =
                    e.iter().zip(v.iter()).map(|(ei, vi)| ei.conj() * vi).sum();
                v = &v - &(e * proj);
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.5 {
                basis.push(v.unscale(norm));
            }
        }
    }
    basis
        .into_iter()
        .map(|v| {
            let mut col = [Complex64::new(0.0, 0.0); 7];
            for i in 0..7 {
                col[i] = v[i];
            }
            GenVector::from_column(&col)
        })
        .collect()
}

/// Real-index-zero test: `|(ρ, conj ρ)| > tol · ||ρ||²`. Returns the verdict
/// and the raw pairing magnitude.
pub fn check_real_index_zero(rho: &MixedForm, tol: f64) -> (bool, f64) {
    check_real_index_zero_in(&Ops::STANDARD, rho, tol)
}

pub fn check_real_index_zero_in(ops: &Ops, rho: &MixedForm, tol: f64) -> (bool, f64) {
    let value = spinor_pairing_in(ops, rho, &rho.conj()).norm();
    let scale = rho.norm_sqr();
    (value > tol * scale, value)
}

/// Type of a spinor: the lowest degree whose component is present
/// (relative threshold `tol · ||ρ||`). Upper-semicontinuous in ρ.
pub fn compute_type(rho: &MixedForm, tol: f64) -> Result<usize> {
    let scale = rho.norm();
    if scale < 1e-300 {
        return Err(B3Error::ZeroSpinor { op: "compute_type" });
    }
    for k in 0..4 {
        if rho.degree_norm(k) > tol * scale {
            return Ok(k);
        }
    }
    // Unreachable for nonzero rho: some degree carries the norm.
    Ok(3)
}
