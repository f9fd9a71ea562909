use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::StateVector;

/// Tolerance on the normalization constraints of [`ParamQubit`].
pub const PARAM_TOL: f64 = 1e-12;

/// A qubit in one of the two parametrized families used throughout:
/// `Real`: `a|0⟩ + b|1⟩` with real `a, b`, `a² + b² = 1`, `a > 0`;
/// `Phased`: `c|0⟩ + d·e^{iθ}|1⟩` with real `c, d`, `c² + d² = 1`,
/// `c > 0` and `0 < θ < π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamQubit {
    Real { a: f64, b: f64 },
    Phased { c: f64, d: f64, theta: f64 },
}

impl ParamQubit {
    pub fn real(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::validation("components must be finite"));
        }
        let norm = a * a + b * b;
        if (norm - 1.0).abs() > PARAM_TOL {
            return Err(Error::validation(format!(
                "a^2 + b^2 = 1 violated: a^2 + b^2 = {norm}"
            )));
        }
        if a <= 0.0 {
            return Err(Error::validation(format!("a > 0 violated: a = {a}")));
        }
        Ok(ParamQubit::Real { a, b })
    }

    pub fn phased(c: f64, d: f64, theta: f64) -> Result<Self> {
        if !c.is_finite() || !d.is_finite() || !theta.is_finite() {
            return Err(Error::validation("components must be finite"));
        }
        let norm = c * c + d * d;
        if (norm - 1.0).abs() > PARAM_TOL {
            return Err(Error::validation(format!(
                "c^2 + d^2 = 1 violated: c^2 + d^2 = {norm}"
            )));
        }
        if c <= 0.0 {
            return Err(Error::validation(format!("c > 0 violated: c = {c}")));
        }
        if theta <= 0.0 || theta >= std::f64::consts::PI {
            return Err(Error::validation(format!(
                "0 < theta < pi violated: theta = {theta}"
            )));
        }
        Ok(ParamQubit::Phased { c, d, theta })
    }

    /// Basis amplitudes `(⟨0|ψ⟩, ⟨1|ψ⟩)`.
    pub fn amplitudes(&self) -> (Complex64, Complex64) {
        match *self {
            ParamQubit::Real { a, b } => (Complex64::new(a, 0.0), Complex64::new(b, 0.0)),
            ParamQubit::Phased { c, d, theta } => (
                Complex64::new(c, 0.0),
                Complex64::from_polar(d, theta),
            ),
        }
    }

    pub fn to_state(&self) -> StateVector {
        let (a0, a1) = self.amplitudes();
        StateVector::qubit(a0, a1).expect("parametrized qubits are normalized by construction")
    }
}

/// Closed-form overlap `⟨u|v⟩` of two parametrized qubits. For
/// `Real(a, b)` against `Phased(c, d, θ)` this is `ac + bd·e^{iθ}`.
pub fn state_overlap(u: &ParamQubit, v: &ParamQubit) -> Complex64 {
    let (u0, u1) = u.amplitudes();
    let (v0, v1) = v.amplitudes();
    u0.conj() * v0 + u1.conj() * v1
}

/// A machine's data state: either a parametrized qubit or an explicit
/// 2-dimensional vector (needed e.g. for exact orthogonal complements,
/// which fall outside the parametrized families).
#[derive(Debug, Clone, PartialEq)]
pub enum DataQubit {
    Param(ParamQubit),
    Explicit(StateVector),
}

impl DataQubit {
    pub fn explicit(state: StateVector) -> Result<Self> {
        if state.total_dim() != 2 {
            return Err(Error::usage(format!(
                "data state must be 2-dimensional, got {}",
                state.total_dim()
            )));
        }
        Ok(DataQubit::Explicit(state))
    }

    pub fn to_state(&self) -> StateVector {
        match self {
            DataQubit::Param(p) => p.to_state(),
            DataQubit::Explicit(v) => v.clone(),
        }
    }

    /// Overlap `⟨self|other⟩`.
    pub fn overlap(&self, other: &DataQubit) -> Complex64 {
        match (self, other) {
            (DataQubit::Param(u), DataQubit::Param(v)) => state_overlap(u, v),
            _ => self
                .to_state()
                .inner_product(&other.to_state())
                .expect("data qubits share dimension 2"),
        }
    }

    /// The state orthogonal to this one.
    pub fn orthogonal_complement(&self) -> DataQubit {
        let comp = self
            .to_state()
            .orthogonal_complement()
            .expect("data qubits are 2-dimensional");
        DataQubit::Explicit(comp)
    }
}

impl From<ParamQubit> for DataQubit {
    fn from(p: ParamQubit) -> Self {
        DataQubit::Param(p)
    }
}
