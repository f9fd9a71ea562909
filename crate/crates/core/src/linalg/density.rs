use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::eigen::{eig2, hermitian_eigenvalues};
use crate::linalg::layout::{sub_offsets, HilbertLayout};
use crate::linalg::state::{check_finite, StateVector};

/// Entrywise Hermiticity / trace tolerance for the checked constructor.
pub const DENSITY_TOL: f64 = 1e-9;
/// Smallest admissible eigenvalue: positive semidefinite up to this slack.
pub const PSD_TOL: f64 = -1e-9;

/// Largest and second eigenvalue of a 2×2 density matrix.
///
/// For a unit-trace matrix the pair sums to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

/// A density operator stored as a dense row-major grid over a layout.
///
/// The checked constructor enforces Hermiticity and unit trace within `1e-9`
/// and positive semidefiniteness (minimum eigenvalue ≥ −1e-9). Operators
/// produced internally from already-valid states skip the eigenvalue scan.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    layout: HilbertLayout,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn new(layout: HilbertLayout, entries: Vec<Complex64>) -> Result<Self> {
        let d = layout.total_dim();
        if entries.len() != d * d {
            return Err(Error::validation(format!(
                "entry count {} does not match {d}×{d}",
                entries.len()
            )));
        }
        check_finite(&entries, "density matrix")?;
        for i in 0..d {
            for j in i..d {
                let diff = (entries[i * d + j] - entries[j * d + i].conj()).norm();
                if diff > DENSITY_TOL {
                    return Err(Error::validation(format!(
                        "matrix is not Hermitian at ({i},{j}): deviation {diff}"
                    )));
                }
            }
        }
        let trace: Complex64 = (0..d).map(|i| entries[i * d + i]).sum();
        if (trace - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::validation(format!(
                "trace {trace} deviates from 1 by more than {DENSITY_TOL}"
            )));
        }
        let min_eig = hermitian_eigenvalues(&entries, d)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < PSD_TOL {
            return Err(Error::validation(format!(
                "matrix is not positive semidefinite: minimum eigenvalue {min_eig}"
            )));
        }
        Ok(Self { layout, entries })
    }

    /// Constructor for matrices that are valid by construction (pure-state
    /// projectors, partial traces of valid operators). Cheap invariants are
    /// still checked in debug builds.
    pub(crate) fn from_valid_parts(layout: HilbertLayout, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), layout.total_dim() * layout.total_dim());
        #[cfg(debug_assertions)]
        {
            let d = layout.total_dim();
            let trace: Complex64 = (0..d).map(|i| entries[i * d + i]).sum();
            debug_assert!(
                (trace - Complex64::new(1.0, 0.0)).norm() < 1e-7,
                "internal density matrix trace drifted: {trace}"
            );
        }
        Self { layout, entries }
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.total_dim()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.entry(i, i)).sum()
    }

    /// Partial trace keeping the listed factors (in their original order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let kept = self.layout.checked_keep_set(keep)?;
        let traced: Vec<usize> = (0..self.layout.num_factors())
            .filter(|f| !kept.contains(f))
            .collect();
        let kept_offs = sub_offsets(&self.layout, &kept);
        let traced_offs = sub_offsets(&self.layout, &traced);
        let kd = kept_offs.len();
        let d = self.dim();
        let kept_dims: Vec<usize> = kept.iter().map(|&f| self.layout.factor_dims()[f]).collect();
        let out_layout = HilbertLayout::new(kept_dims)?;
        let mut entries = vec![Complex64::new(0.0, 0.0); kd * kd];
        for (a, &oa) in kept_offs.iter().enumerate() {
            for (b, &ob) in kept_offs.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &ot in &traced_offs {
                    acc += self.entries[(oa + ot) * d + (ob + ot)];
                }
                entries[a * kd + b] = acc;
            }
        }
        Ok(DensityMatrix::from_valid_parts(out_layout, entries))
    }

    /// Analytic eigenvalues of a 2×2 density matrix, descending.
    pub fn eigenpair_2x2(&self) -> Result<EigenPair> {
        if self.dim() != 2 {
            return Err(Error::usage(format!(
                "eigenpair_2x2 requires a 2×2 matrix, got dimension {}",
                self.dim()
            )));
        }
        let (hi, lo) = eig2(self.entry(0, 0).re, self.entry(0, 1), self.entry(1, 1).re);
        Ok(EigenPair {
            lambda_plus: hi,
            lambda_minus: lo,
        })
    }

    /// Eigenvalues of the operator, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries, self.dim())
    }

    /// Trace distance `½ Σ |eig(self − other)|`; zero iff the operators
    /// coincide, at most 1 for density matrices.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.layout != other.layout {
            return Err(Error::usage(
                "trace distance requires operators over the same layout",
            ));
        }
        let d = self.dim();
        let mut diff: Vec<Complex64> = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        // canonicalize the overall sign so that swapping the arguments
        // feeds the eigensolver the bit-identical matrix
        if let Some(z) = diff
            .iter()
            .find(|z| z.re != 0.0 || z.im != 0.0)
        {
            if z.re < 0.0 || (z.re == 0.0 && z.im < 0.0) {
                for z in &mut diff {
                    *z = -*z;
                }
            }
        }
        let total: f64 = hermitian_eigenvalues(&diff, d).iter().map(|e| e.abs()).sum();
        Ok(0.5 * total)
    }

    /// Fidelity `⟨ψ|ρ|ψ⟩` against a pure state; real in `[0, 1]`.
    pub fn fidelity_to_pure(&self, psi: &StateVector) -> Result<f64> {
        if psi.total_dim() != self.dim() {
            return Err(Error::usage(format!(
                "fidelity dimension mismatch: state {} vs operator {}",
                psi.total_dim(),
                self.dim()
            )));
        }
        let d = self.dim();
        let amps = psi.amplitudes();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += amps[i].conj() * self.entries[i * d + j] * amps[j];
            }
        }
        debug_assert!(acc.im.abs() < 1e-9, "fidelity picked up an imaginary part");
        Ok(acc.re)
    }

    /// Maximum entrywise absolute difference to another operator.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64> {
        if self.layout != other.layout {
            return Err(Error::usage(
                "entrywise comparison requires operators over the same layout",
            ));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Shannon entropy of the `(λ, 1−λ)` distribution in bits, with `0·log 0 = 0`.
pub fn binary_entropy(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || !(0.0..=1.0).contains(&lambda) {
        return Err(Error::usage(format!(
            "binary entropy requires an argument in [0, 1], got {lambda}"
        )));
    }
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(lambda) + term(1.0 - lambda))
}
