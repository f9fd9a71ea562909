//! Helpers shared by the integration suites: seeded random states and the
//! independent index-summation partial-trace oracle.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use selfrep_core::linalg::{HilbertLayout, RawVector, StateVector};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Coordinates of a flat index, last factor fastest.
pub fn decode(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut coords = vec![0usize; dims.len()];
    for k in (0..dims.len()).rev() {
        coords[k] = flat % dims[k];
        flat /= dims[k];
    }
    coords
}

/// Partial trace by scanning every matrix entry and keeping those whose
/// traced coordinates line up. Deliberately shares nothing with the
/// library's stride-based implementation.
pub fn oracle_partial_trace(
    entries: &[Complex64],
    dims: &[usize],
    keep: &[usize],
) -> Vec<Complex64> {
    let d: usize = dims.iter().product();
    let kept_dims: Vec<usize> = keep.iter().map(|&f| dims[f]).collect();
    let kd: usize = kept_dims.iter().product();
    let traced: Vec<usize> = (0..dims.len()).filter(|f| !keep.contains(f)).collect();
    let mut out = vec![c(0.0, 0.0); kd * kd];
    for row in 0..d {
        let rc = decode(dims, row);
        for col in 0..d {
            let cc = decode(dims, col);
            if traced.iter().any(|&f| rc[f] != cc[f]) {
                continue;
            }
            let mut ri = 0;
            let mut ci = 0;
            for (&f, &kdim) in keep.iter().zip(&kept_dims) {
                ri = ri * kdim + rc[f];
                ci = ci * kdim + cc[f];
            }
            out[ri * kd + ci] += entries[row * d + col];
        }
    }
    out
}

pub fn random_state(rng: &mut ChaCha8Rng, dims: &[usize]) -> StateVector {
    let layout = HilbertLayout::new(dims.to_vec()).unwrap();
    let mut raw = RawVector::zeros(layout.clone());
    let d = layout.total_dim();
    for i in 0..d {
        let basis = StateVector::basis(layout.clone(), i).unwrap();
        raw.accumulate(&basis, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .unwrap();
    }
    raw.into_normalized().unwrap()
}
