//! Generalized Gell-Mann basis: `d^2 - 1` traceless Hermitian matrices,
//! orthonormal under the Hilbert-Schmidt inner product `Tr(E_a E_b) = delta`.
//!
//! Index layout, frozen for reproducibility of design matrices and CSVs:
//!
//! 1. symmetric pair elements `(|j><k| + |k><j|)/sqrt(2)` for `j < k`,
//!    pairs in lexicographic order;
//! 2. antisymmetric pair elements `(-i|j><k| + i|k><j|)/sqrt(2)`, same order;
//! 3. diagonal elements `h_l = (sum_{m<l} |m><m| - l |l><l|)/sqrt(l(l+1))`
//!    for `l = 1..d-1`.

use super::BlochVector;
use crate::error::{Error, Result};
use crate::{c64, CMat, RVec};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// The generalized Gell-Mann basis for one Hilbert-space dimension.
#[derive(Debug, Clone)]
pub struct OperatorBasis {
    d: usize,
    elems: Vec<CMat>,
}

impl OperatorBasis {
    /// Hilbert-space dimension `d`.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Number of basis elements, `d^2 - 1`.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, a: usize) -> &CMat {
        &self.elems[a]
    }

    pub fn iter(&self) -> impl Iterator<Item = &CMat> {
        self.elems.iter()
    }

    /// Index of the symmetric element for the pair `j < k`.
    pub fn sym_index(&self, j: usize, k: usize) -> usize {
        pair_index(self.d, j, k)
    }

    /// Index of the antisymmetric element for the pair `j < k`.
    pub fn asym_index(&self, j: usize, k: usize) -> usize {
        self.d * (self.d - 1) / 2 + pair_index(self.d, j, k)
    }

    /// Index of the diagonal element `h_l`, `1 <= l <= d-1`.
    pub fn diag_index(&self, l: usize) -> usize {
        self.d * (self.d - 1) + (l - 1)
    }
}

fn pair_index(d: usize, j: usize, k: usize) -> usize {
    debug_assert!(j < k && k < d);
    j * d - j * (j + 1) / 2 + (k - j - 1)
}

/// Builds the basis for dimension `d >= 2`.
pub fn make_hermitian_basis(d: usize) -> Result<OperatorBasis> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "operator basis needs d >= 2",
        });
    }
    let mut elems = Vec::with_capacity(d * d - 1);
    let inv_sqrt2 = 1.0 / SQRT2;
    for j in 0..d {
        for k in (j + 1)..d {
            let mut e = CMat::zeros(d, d);
            e[(j, k)] = c64(inv_sqrt2, 0.0);
            e[(k, j)] = c64(inv_sqrt2, 0.0);
            elems.push(e);
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let mut e = CMat::zeros(d, d);
            e[(j, k)] = c64(0.0, -inv_sqrt2);
            e[(k, j)] = c64(0.0, inv_sqrt2);
            elems.push(e);
        }
    }
    for l in 1..d {
        let c = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut e = CMat::zeros(d, d);
        for m in 0..l {
            e[(m, m)] = c64(c, 0.0);
        }
        e[(l, l)] = c64(-c * l as f64, 0.0);
        elems.push(e);
    }
    Ok(OperatorBasis { d, elems })
}

/// Coordinates of the traceless part of Hermitian `a`: `r_a = Tr(a E_a)`.
///
/// Exploits the sparsity pattern of the basis; `O(d^2)` instead of the
/// `O(d^4)` of elementwise trace contractions.
pub fn bloch_decompose(a: &CMat, basis: &OperatorBasis) -> Result<BlochVector> {
    let d = basis.dim();
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: a.nrows(),
        });
    }
    let pairs = d * (d - 1) / 2;
    let mut r = RVec::zeros(d * d - 1);
    let mut p = 0;
    for j in 0..d {
        for k in (j + 1)..d {
            let z = a[(j, k)];
            r[p] = SQRT2 * z.re;
            r[pairs + p] = -SQRT2 * z.im;
            p += 1;
        }
    }
    let mut partial = 0.0;
    for l in 1..d {
        partial += a[(l - 1, l - 1)].re;
        let c = 1.0 / ((l * (l + 1)) as f64).sqrt();
        r[2 * pairs + (l - 1)] = c * (partial - l as f64 * a[(l, l)].re);
    }
    BlochVector::from_vec(d, r)
}

/// Reference implementation of [`bloch_decompose`] by explicit trace
/// contraction against every stored basis element. Quadratically slower;
/// kept as an independent cross-check of the structured fast path.
pub fn bloch_decompose_generic(a: &CMat, basis: &OperatorBasis) -> Result<BlochVector> {
    let d = basis.dim();
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: a.nrows(),
        });
    }
    let mut r = RVec::zeros(basis.len());
    for (idx, e) in basis.iter().enumerate() {
        let mut tr = 0.0;
        for i in 0..d {
            for k in 0..d {
                tr += (a[(i, k)] * e[(k, i)]).re;
            }
        }
        r[idx] = tr;
    }
    BlochVector::from_vec(d, r)
}

/// Inverse of [`bloch_decompose`]: `(trace/d) I + sum_a r_a E_a`.
pub fn bloch_compose(r: &BlochVector, trace: f64) -> CMat {
    let d = r.dim();
    let pairs = d * (d - 1) / 2;
    let coords = r.coords();
    let mut a = CMat::zeros(d, d);
    let mut p = 0;
    for j in 0..d {
        for k in (j + 1)..d {
            let z = c64(coords[p] / SQRT2, -coords[pairs + p] / SQRT2);
            a[(j, k)] = z;
            a[(k, j)] = z.conj();
            p += 1;
        }
    }
    // suffix[m] = sum_{l > m} c_l r_l contributes to every diagonal entry
    // above l; the l-th entry additionally gets -l c_l r_l.
    let mut suffix = vec![0.0; d + 1];
    for l in (1..d).rev() {
        let c = 1.0 / ((l * (l + 1)) as f64).sqrt();
        suffix[l] = suffix[l + 1] + c * coords[2 * pairs + (l - 1)];
    }
    for m in 0..d {
        let mut v = trace / d as f64 + suffix[m + 1];
        if m >= 1 {
            let c = 1.0 / ((m * (m + 1)) as f64).sqrt();
            v -= m as f64 * c * coords[2 * pairs + (m - 1)];
        }
        a[(m, m)] = c64(v, 0.0);
    }
    a
}
