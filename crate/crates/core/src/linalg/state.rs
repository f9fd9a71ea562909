use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::density::DensityMatrix;
use crate::linalg::layout::{sub_offsets, HilbertLayout};

/// Tolerance on `‖ψ‖ = 1` for the normalized constructor.
pub const NORM_TOL: f64 = 1e-9;

pub(crate) fn check_finite(amps: &[Complex64], what: &str) -> Result<()> {
    for (i, z) in amps.iter().enumerate() {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::validation(format!(
                "{what} has a non-finite component at index {i}: {z}"
            )));
        }
    }
    Ok(())
}

/// A normalized pure state over an explicit tensor layout.
///
/// Construction enforces unit Euclidean norm within `1e-9`; intermediate
/// linear combinations that are not yet normalized go through [`RawVector`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: HilbertLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(layout: HilbertLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.total_dim() {
            return Err(Error::validation(format!(
                "amplitude count {} does not match layout dimension {}",
                amps.len(),
                layout.total_dim()
            )));
        }
        check_finite(&amps, "state vector")?;
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::validation(format!(
                "state vector norm {norm} deviates from 1 by more than {NORM_TOL}"
            )));
        }
        Ok(Self { layout, amps })
    }

    /// Computational basis state `|index⟩` of the given layout.
    pub fn basis(layout: HilbertLayout, index: usize) -> Result<Self> {
        if index >= layout.total_dim() {
            return Err(Error::usage(format!(
                "basis index {index} out of range for dimension {}",
                layout.total_dim()
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { layout, amps })
    }

    /// Single qubit `a0|0⟩ + a1|1⟩`; must be normalized.
    pub fn qubit(a0: Complex64, a1: Complex64) -> Result<Self> {
        Self::new(HilbertLayout::qubit(), vec![a0, a1])
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn total_dim(&self) -> usize {
        self.layout.total_dim()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Tensor product `self ⊗ other`; the result layout is the concatenation
    /// of both layouts and the amplitude at composite index `(i, j)` is
    /// `self[i] * other[j]`.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let layout = self.layout.concat(&other.layout)?;
        let od = other.total_dim();
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
        for (i, &u) in self.amps.iter().enumerate() {
            if u == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &v) in other.amps.iter().enumerate() {
                amps[i * od + j] = u * v;
            }
        }
        Ok(StateVector { layout, amps })
    }

    /// Inner product `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        if self.total_dim() != other.total_dim() {
            return Err(Error::usage(format!(
                "inner product dimension mismatch: {} vs {}",
                self.total_dim(),
                other.total_dim()
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(u, v)| u.conj() * v)
            .sum())
    }

    /// Pure-state density operator `|ψ⟩⟨ψ|`.
    pub fn to_density(&self) -> DensityMatrix {
        let d = self.total_dim();
        let mut entries = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = self.amps[i] * self.amps[j].conj();
            }
        }
        DensityMatrix::from_valid_parts(self.layout.clone(), entries)
    }

    /// Reduced density matrix over the kept factors, tracing out the rest.
    ///
    /// Equivalent to `self.to_density().partial_trace(keep)` but never forms
    /// the full projector.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let kept = self.layout.checked_keep_set(keep)?;
        let traced: Vec<usize> = (0..self.layout.num_factors())
            .filter(|f| !kept.contains(f))
            .collect();
        let kept_offs = sub_offsets(&self.layout, &kept);
        let traced_offs = sub_offsets(&self.layout, &traced);
        let kd = kept_offs.len();
        let kept_dims: Vec<usize> = kept.iter().map(|&f| self.layout.factor_dims()[f]).collect();
        let out_layout = HilbertLayout::new(kept_dims)?;
        let mut entries = vec![Complex64::new(0.0, 0.0); kd * kd];
        for (a, &oa) in kept_offs.iter().enumerate() {
            for (b, &ob) in kept_offs.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &ot in &traced_offs {
                    acc += self.amps[oa + ot] * self.amps[ob + ot].conj();
                }
                entries[a * kd + b] = acc;
            }
        }
        Ok(DensityMatrix::from_valid_parts(out_layout, entries))
    }

    /// Normalized state orthogonal to a single qubit: `(v1*, -v0*)`.
    pub fn orthogonal_complement(&self) -> Result<StateVector> {
        if self.total_dim() != 2 {
            return Err(Error::usage(
                "orthogonal complement is defined here only for 2-dimensional states",
            ));
        }
        Ok(StateVector {
            layout: self.layout.clone(),
            amps: vec![self.amps[1].conj(), -self.amps[0].conj()],
        })
    }
}

/// Unnormalized working vector for building linear combinations.
///
/// Superpositions are accumulated on raw amplitudes and only converted into
/// a [`StateVector`] at a declared checkpoint.
#[derive(Debug, Clone)]
pub struct RawVector {
    layout: HilbertLayout,
    amps: Vec<Complex64>,
}

impl RawVector {
    pub fn zeros(layout: HilbertLayout) -> Self {
        let amps = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
        Self { layout, amps }
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Adds `coeff · state` into the accumulator.
    pub fn accumulate(&mut self, state: &StateVector, coeff: Complex64) -> Result<()> {
        if state.total_dim() != self.layout.total_dim() {
            return Err(Error::usage(format!(
                "accumulate dimension mismatch: {} vs {}",
                state.total_dim(),
                self.layout.total_dim()
            )));
        }
        for (a, &s) in self.amps.iter_mut().zip(state.amplitudes()) {
            *a += coeff * s;
        }
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Checkpoint for combinations that are unit-norm by construction;
    /// fails if the accumulated norm drifted from 1.
    pub fn into_state(self) -> Result<StateVector> {
        StateVector::new(self.layout, self.amps)
    }

    /// Rescales to unit norm; fails on (near-)zero vectors.
    pub fn into_normalized(mut self) -> Result<StateVector> {
        let n = self.norm();
        if n < 1e-12 {
            return Err(Error::usage("cannot normalize a (near-)zero vector"));
        }
        for a in &mut self.amps {
            *a /= n;
        }
        StateVector::new(self.layout, self.amps)
    }
}
