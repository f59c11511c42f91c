//! Angular momentum operators for spin `j` in the standard `|j, m>` basis,
//! `m` descending from `j` to `-j` (row 0 is `m = j`).

use super::Observable;
use crate::error::{Error, Result};
use crate::{c64, CMat};

#[derive(Debug, Clone)]
pub struct SpinOperators {
    j: f64,
    jx: Observable,
    jy: Observable,
    jz: Observable,
}

impl SpinOperators {
    pub fn j(&self) -> f64 {
        self.j
    }

    /// Hilbert-space dimension `2j + 1`.
    pub fn dim(&self) -> usize {
        self.jz.dim()
    }

    pub fn jx(&self) -> &Observable {
        &self.jx
    }

    pub fn jy(&self) -> &Observable {
        &self.jy
    }

    pub fn jz(&self) -> &Observable {
        &self.jz
    }
}

/// Builds `Jx, Jy, Jz` for half-integer or integer `j >= 1/2`.
pub fn spin_operators(j: f64) -> Result<SpinOperators> {
    let two_j = 2.0 * j;
    if !j.is_finite() || (two_j - two_j.round()).abs() > 1e-9 || two_j.round() < 1.0 {
        return Err(Error::param(
            "j",
            format!("spin must be a positive half-integer, got {j}"),
        ));
    }
    let two_j = two_j.round() as usize;
    let d = two_j + 1;
    let j = two_j as f64 / 2.0;

    let mut jz = CMat::zeros(d, d);
    for (row, mz) in (0..d).map(|i| (i, j - i as f64)) {
        jz[(row, row)] = c64(mz, 0.0);
    }
    // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; with m descending, |m> is
    // row j - m, so J+ has entries one above the diagonal.
    let mut jplus = CMat::zeros(d, d);
    for row in 1..d {
        let m = j - row as f64;
        let amp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
        jplus[(row - 1, row)] = c64(amp, 0.0);
    }
    let jminus = jplus.adjoint();
    let jx = (&jplus + &jminus) * c64(0.5, 0.0);
    let jy = (&jplus - &jminus) * c64(0.0, -0.5);

    Ok(SpinOperators {
        j,
        jx: Observable::new(jx)?,
        jy: Observable::new(jy)?,
        jz: Observable::new(jz)?,
    })
}
