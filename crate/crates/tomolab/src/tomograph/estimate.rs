//! Synthetic measurement records, inverse covariance, and the regularized
//! maximum-likelihood estimate of the Bloch vector.

use super::design::DesignMatrix;
use crate::error::{Error, Result};
use crate::qcore::BlochVector;
use crate::{symmetrize, RMat, RVec};
use nalgebra::QR;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Relative eigenvalue threshold below which a Gram direction counts as
/// unprobed when deciding rank deficiency.
const RANK_REL_TOL: f64 = 1e-10;

/// A measurement record and the noise scale it was generated with.
#[derive(Debug, Clone)]
pub struct MeasurementRecord {
    values: RVec,
    sigma: f64,
}

impl MeasurementRecord {
    pub fn new(values: RVec, sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0) {
            return Err(Error::param("sigma", "noise scale must be >= 0"));
        }
        Ok(MeasurementRecord { values, sigma })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &RVec {
        &self.values
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// Draws `M_n = (X r)_n + sigma W_n` with iid standard normal `W`.
pub fn synth_record<R: Rng + ?Sized>(
    design: &DesignMatrix,
    r_true: &BlochVector,
    sigma: f64,
    rng: &mut R,
) -> Result<MeasurementRecord> {
    if !(sigma >= 0.0) {
        return Err(Error::param("sigma", "noise scale must be >= 0"));
    }
    if r_true.dim_op() != design.dim_op() {
        return Err(Error::DimensionMismatch {
            expected: design.dim_op(),
            got: r_true.dim_op(),
        });
    }
    let norm = StandardNormal;
    let mut values = design.apply(r_true.coords())?;
    for v in values.iter_mut() {
        let w: f64 = norm.sample(rng);
        *v += sigma * w;
    }
    MeasurementRecord::new(values, sigma)
}

/// `C^-1 = X^T X / sigma^2`: the Fisher information matrix of the record
/// about the Bloch vector. Symmetric PSD by construction.
#[derive(Debug, Clone)]
pub struct InverseCovariance {
    m: RMat,
}

impl InverseCovariance {
    /// Wraps an externally accumulated matrix; symmetrizes roundoff drift
    /// and rejects matrices with a clearly negative diagonal.
    pub fn from_matrix(mut m: RMat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::domain(format!(
                "inverse covariance must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        symmetrize(&mut m);
        if m.diagonal().iter().any(|&x| x < -1e-9) {
            return Err(Error::domain(
                "inverse covariance has a negative diagonal entry".to_string(),
            ));
        }
        Ok(InverseCovariance { m })
    }

    pub fn dim_op(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &RMat {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }
}

/// Builds `X^T X / sigma^2` from a dense design.
pub fn inverse_covariance(design: &DesignMatrix, sigma: f64) -> Result<InverseCovariance> {
    if !(sigma > 0.0) {
        return Err(Error::param("sigma", "inverse covariance needs sigma > 0"));
    }
    let gram = design.matrix().tr_mul(design.matrix());
    InverseCovariance::from_matrix(gram / (sigma * sigma))
}

/// Regularized least-squares estimate of the Bloch vector:
///
/// ```text
/// (X^T X + sigma^2 eps I) r = X^T M
/// ```
///
/// solved through a QR factorization of the augmented design
/// `[X; sigma sqrt(eps) I]` rather than by forming or inverting normal
/// equations, which squares the condition number.
///
/// With `sigma^2 eps = 0` the system must be full rank; a rank-deficient
/// design is a hard error naming how many directions are missing, so that
/// callers opt into regularization explicitly instead of receiving a silent
/// pseudo-inverse.
pub fn ml_estimate(
    design: &DesignMatrix,
    record: &MeasurementRecord,
    sigma: f64,
    epsilon: f64,
) -> Result<BlochVector> {
    if record.len() != design.len() {
        return Err(Error::DimensionMismatch {
            expected: design.len(),
            got: record.len(),
        });
    }
    if !(sigma >= 0.0) {
        return Err(Error::param("sigma", "noise scale must be >= 0"));
    }
    if !(epsilon >= 0.0) {
        return Err(Error::param("epsilon", "regularization must be >= 0"));
    }
    let n = design.len();
    let dim_op = design.dim_op();
    let ridge = sigma * epsilon.sqrt();

    if ridge == 0.0 {
        check_full_rank(design)?;
    }

    let mut aug = RMat::zeros(n + dim_op, dim_op);
    aug.view_mut((0, 0), (n, dim_op)).copy_from(design.matrix());
    for i in 0..dim_op {
        aug[(n + i, i)] = ridge;
    }
    let mut rhs = RVec::zeros(n + dim_op);
    rhs.rows_mut(0, n).copy_from(record.values());

    let qr = QR::new(aug);
    qr.q_tr_mul(&mut rhs);
    let r = qr.r();
    let top = rhs.rows(0, dim_op).into_owned();
    let sol = r
        .view((0, 0), (dim_op, dim_op))
        .solve_upper_triangular(&top)
        .ok_or_else(|| Error::Numerical {
            context: "ml_estimate",
            detail: "triangular solve failed on QR factor".to_string(),
        })?;
    BlochVector::from_vec(design.dim(), sol)
}

fn check_full_rank(design: &DesignMatrix) -> Result<()> {
    let dim_op = design.dim_op();
    let gram = design.matrix().tr_mul(design.matrix());
    let mut eigs: Vec<f64> = gram.symmetric_eigenvalues().iter().cloned().collect();
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let top = eigs.first().cloned().unwrap_or(0.0).max(0.0);
    let rank = eigs.iter().filter(|&&x| x > RANK_REL_TOL * top).count();
    if rank < dim_op {
        return Err(Error::RankDeficient {
            rank,
            expected: dim_op,
            missing: dim_op - rank,
        });
    }
    Ok(())
}
