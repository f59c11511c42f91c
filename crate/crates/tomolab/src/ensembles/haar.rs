//! Haar-uniform unitaries via QR of a complex Ginibre matrix with the
//! phase-of-R fix (plain QR alone is not Haar: the distribution of Q depends
//! on the sign convention of R; multiplying column `i` by `r_ii / |r_ii|`
//! makes the result exactly Haar).

use super::Unitary;
use crate::error::Result;
use crate::{c64, CMat};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn sample_haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Unitary> {
    let norm = StandardNormal;
    let g = CMat::from_fn(d, d, |_, _| c64(norm.sample(rng), norm.sample(rng)));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for i in 0..d {
        let rii = r[(i, i)];
        let phase = if rii.norm() > 0.0 {
            rii / c64(rii.norm(), 0.0)
        } else {
            c64(1.0, 0.0)
        };
        for row in 0..d {
            q[(row, i)] *= phase;
        }
    }
    Unitary::new(q)
}
