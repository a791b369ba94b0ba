use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{action_matrix, GenVector, MixedForm};
use crate::calculus::{ext_d, FormField};
use crate::error::{B3Error, Result};
use crate::structure::{CheckConfig, TwistData};

#[derive(Clone, Copy, Debug)]
pub struct WitnessResult {
    pub witness: GenVector,
    /// Least-squares residual of the Clifford equation, relative to ||rho||.
    pub residual: f64,
}

/// Realification of a complex m×n matrix acting on stacked (Re, Im) vectors:
/// `[[Re A, -Im A], [Im A, Re A]]`.
fn realify(a: &DMatrix<Complex64>) -> DMatrix<f64> {
    let (m, n) = a.shape();
    let mut out = DMatrix::<f64>::zeros(2 * m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let z = a[(i, j)];
            out[(i, j)] = z.re;
            out[(i, j + n)] = -z.im;
            out[(i + m, j)] = z.im;
            out[(i + m, j + n)] = z.re;
        }
    }
    out
}

fn realify_vec(b: &DVector<Complex64>) -> DVector<f64> {
    let m = b.len();
    let mut out = DVector::<f64>::zeros(2 * m);
    for i in 0..m {
        out[i] = b[i].re;
        out[i + m] = b[i].im;
    }
    out
}

fn complexify_vec(x: &DVector<f64>) -> DVector<Complex64> {
    let n = x.len() / 2;
    DVector::from_fn(n, |i, _| Complex64::new(x[i], x[i + n]))
}

struct LlsSolution {
    min_norm: DVector<Complex64>,
    kernel: Vec<DVector<Complex64>>,
    residual: f64,
}

/// Minimum-norm complex least squares through the realified SVD, with the
/// complex kernel recovered by pivoted Gram-Schmidt over the real null
/// vectors (the null space is closed under multiplication by i).
fn complex_min_norm_lls(
    a: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
    rel_cutoff: f64,
) -> LlsSolution {
    let n = a.ncols();
    let ar = realify(a);
    let br = realify_vec(b);
    let svd = ar.clone().svd(true, true);
    let u = svd.u.as_ref().expect("svd u");
    let vt = svd.v_t.as_ref().expect("svd v_t");
    let sigma = &svd.singular_values;
    let smax = sigma.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = rel_cutoff * smax;

    let mut x = DVector::<f64>::zeros(2 * n);
    for k in 0..sigma.len() {
        if sigma[k] > cutoff {
            let coeff = u.column(k).dot(&br) / sigma[k];
            x.axpy(coeff, &vt.row(k).transpose(), 1.0);
        }
    }
    let residual = (&ar * &x - &br).norm();

    // Real null candidates -> complex vectors -> complex orthonormal basis.
    let mut kernel: Vec<DVector<Complex64>> = Vec::new();
    for k in 0..sigma.len() {
        if sigma[k] <= cutoff {
            let cand = complexify_vec(&vt.row(k).transpose());
            let mut v = cand;
            for e in &kernel {
                let proj: Complex64 = e.iter().zip(v.iter()).map(|(ei, vi)| ei.conj() * vi).sum();
                v = &v - &(e * proj);
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.5 {
                kernel.push(v.unscale(norm));
            }
        }
    }

    LlsSolution {
        min_norm: complexify_vec(&x),
        kernel,
        residual,
    }
}

/// Pointwise least-squares witness: among all minimizers of
/// `||v·ρ − target||`, pick the canonical one — first minimize the scalar and
/// one-form parts, then the vector part, then total norm. The solution set is
/// an affine space over the annihilator of ρ, so a tie-break is required for
/// reproducible witnesses; this one recovers plain vector-field witnesses
/// exactly where they exist.
///
/// Returns the witness and the absolute least-squares residual.
pub fn solve_witness(
    rho: &MixedForm,
    target: &MixedForm,
    rel_cutoff: f64,
) -> (GenVector, f64) {
    let cols = action_matrix(rho);
    let a = DMatrix::from_fn(8, 7, |i, j| cols[i][j]);
    let b = DVector::from_fn(8, |i, _| target.get(i as u8));

    let base = complex_min_norm_lls(&a, &b, rel_cutoff);
    let mut v = base.min_norm.clone();
    if !base.kernel.is_empty() {
        let kappa = base.kernel.len();
        let nmat = DMatrix::from_fn(7, kappa, |i, j| base.kernel[j][i]);

        // Stage 2: minimize the (f, alpha) components over the solution set.
        let proj_fa = |m: &DMatrix<Complex64>| m.rows(3, 4).into_owned();
        let a1 = proj_fa(&nmat);
        let b1 = -proj_fa(&DMatrix::from_column_slice(7, 1, v.as_slice())).column(0).into_owned();
        let stage2 = complex_min_norm_lls(&a1, &b1, rel_cutoff);
        v += &nmat * &stage2.min_norm;

        // Stage 3: minimize the vector components over what freedom remains.
        if !stage2.kernel.is_empty() {
            let kappa2 = stage2.kernel.len();
            let cmat = DMatrix::from_fn(kappa, kappa2, |i, j| stage2.kernel[j][i]);
            let n2 = &nmat * &cmat;
            let a2 = n2.rows(0, 3).into_owned();
            let b2 = -DVector::from_fn(3, |i, _| v[i]);
            let stage3 = complex_min_norm_lls(&a2, &b2, rel_cutoff);
            v += &n2 * &stage3.min_norm;
        }
    }

    let residual = {
        let col: Vec<Complex64> = v.iter().cloned().collect();
        let mut arr = [Complex64::new(0.0, 0.0); 7];
        arr.copy_from_slice(&col);
        let w = GenVector::from_column(&arr);
        let acted = crate::algebra::clifford_act(&w, rho);
        ((acted - *target).norm(), w)
    };
    (residual.1, residual.0)
}

/// Integrability witness at a point of a field: solves
/// `min_v ||v·ρ − D||` with `D = dρ` (plus `F∧τρ + H∧ρ` when twisted).
/// The residual is normalized by `||ρ||` at the point.
pub fn integrability_witness_at(
    field: &FormField,
    point: [f64; 3],
    twist: Option<&TwistData>,
    cfg: &CheckConfig,
) -> Result<WitnessResult> {
    let rho = field.at(point);
    let scale = rho.norm();
    if scale < 1e-12 {
        return Err(B3Error::ZeroSpinor {
            op: "integrability_witness",
        });
    }
    let opts = cfg.fd_options(&field.domain);
    let mut d = ext_d(field, point, &opts)?;
    if let Some(t) = twist {
        d += t.twisted_term(point, &rho);
    }
    let (witness, abs_res) = solve_witness(&rho, &d, cfg.tol_rank);
    Ok(WitnessResult {
        witness,
        residual: abs_res / scale,
    })
}

/// Grid sweep of the witness residual; points where ρ vanishes are skipped
/// (they belong to the stable-locus path).
pub fn integrability_witness(
    field: &FormField,
    twist: Option<&TwistData>,
    cfg: &CheckConfig,
) -> super::CheckReport {
    let grid = field.domain.grid(cfg.grid);
    let (worst, at) = super::sweep_max(&grid.points, |p| {
        match integrability_witness_at(field, p, twist, cfg) {
            Ok(w) => w.residual,
            Err(B3Error::ZeroSpinor { .. }) => 0.0,
            Err(_) => f64::INFINITY,
        }
    });
    super::CheckReport::below(
        if twist.is_some() {
            "twisted_integrability"
        } else {
            "integrability"
        },
        worst,
        cfg.tol_witness,
        at,
        super::Grid {
            per_axis: cfg.grid,
            fd_fraction: cfg.fd_fraction,
        },
    )
}
