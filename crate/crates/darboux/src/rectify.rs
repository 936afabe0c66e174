//! Position-vector decomposition in the Darboux frame and rectifying
//! classification: a curve is Darboux rectifying when its position vector
//! stays in the {T, P} plane, i.e. the U-component vanishes.

use crate::geom::FrameSample;
use crate::tol;
use crate::vec3::Vec3;

/// Per-sample coefficients of gamma = lambda T + mu P + nu U, plus the
/// aggregates the classifier needs. Ambient length units.
#[derive(Debug, Clone)]
pub struct PositionDecomposition {
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    pub max_abs_nu: f64,
    pub mean_abs_nu: f64,
    /// Largest ||gamma|| over the samples; sets the classification scale.
    pub max_norm: f64,
    /// Worst ||lambda T + mu P + nu U - gamma||, normalized by 1 + ||gamma||.
    pub max_reconstruction: f64,
    /// Index of the sample with the largest |nu|.
    pub witness: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RectifyingVerdict {
    Rectifying,
    NotRectifying,
}

#[derive(Debug, Clone)]
pub struct RectifyingClassification {
    pub verdict: RectifyingVerdict,
    /// |nu| at the witness sample.
    pub witness_nu: f64,
    pub witness_index: usize,
    /// The tolerance actually used: base * (1 + max ||gamma||).
    pub tolerance: f64,
}

/// Dot the position vector against the orthonormal Darboux frame at every
/// sample.
pub fn decompose_position(samples: &[FrameSample]) -> PositionDecomposition {
    let n = samples.len();
    let mut lambda = Vec::with_capacity(n);
    let mut mu = Vec::with_capacity(n);
    let mut nu = Vec::with_capacity(n);
    let mut max_abs_nu = 0.0_f64;
    let mut sum_abs_nu = 0.0_f64;
    let mut max_norm = 0.0_f64;
    let mut max_reconstruction = 0.0_f64;
    let mut witness = 0;
    for (i, fs) in samples.iter().enumerate() {
        let g = fs.point;
        let l = g.dot(fs.tangent);
        let m = g.dot(fs.tangent_normal);
        let v = g.dot(fs.surface_normal);
        let rebuilt: Vec3 =
            fs.tangent.scale(l) + fs.tangent_normal.scale(m) + fs.surface_normal.scale(v);
        let recon = (rebuilt - g).norm() / (1.0 + g.norm());
        if v.abs() > max_abs_nu {
            max_abs_nu = v.abs();
            witness = i;
        }
        sum_abs_nu += v.abs();
        max_norm = max_norm.max(g.norm());
        max_reconstruction = max_reconstruction.max(recon);
        lambda.push(l);
        mu.push(m);
        nu.push(v);
    }
    PositionDecomposition {
        lambda,
        mu,
        nu,
        max_abs_nu,
        mean_abs_nu: if n == 0 { 0.0 } else { sum_abs_nu / n as f64 },
        max_norm,
        max_reconstruction,
        witness,
    }
}

/// Rectifying iff max |nu| stays within a size-scaled tolerance
/// (default [`tol::RECTIFYING_BASE`] * (1 + max ||gamma||)). Requires at
/// least two samples.
pub fn classify_darboux_rectifying(
    decomposition: &PositionDecomposition,
    tolerance: Option<f64>,
) -> Result<RectifyingClassification, NotEnoughSamples> {
    if decomposition.nu.len() < 2 {
        return Err(NotEnoughSamples {
            got: decomposition.nu.len(),
        });
    }
    let tolerance = tolerance.unwrap_or(tol::RECTIFYING_BASE * (1.0 + decomposition.max_norm));
    let verdict = if decomposition.max_abs_nu <= tolerance {
        RectifyingVerdict::Rectifying
    } else {
        RectifyingVerdict::NotRectifying
    };
    Ok(RectifyingClassification {
        verdict,
        witness_nu: decomposition.max_abs_nu,
        witness_index: decomposition.witness,
        tolerance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("rectifying classification needs at least 2 samples, got {got}")]
pub struct NotEnoughSamples {
    pub got: usize,
}
