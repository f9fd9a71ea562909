use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::DensityMatrix;
use crate::machine::{DataQubit, OverlapRegistry};
use crate::verify::condition::{classify_existence_condition, ConditionClass};
use crate::verify::resource::{
    build_entangled_resource, reduced_alice_after, reduced_alice_before,
};

/// `|1 − p·q·r|` at or below this marks a point where the residual bracket
/// vanishes; such points are excluded from the strict-violation assertions
/// and flagged in reports.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Evidence that a local replication step moves (or provably cannot move)
/// Alice's reduced state.
#[derive(Debug, Clone)]
pub struct SignallingReport {
    pub rho_before: DensityMatrix,
    pub rho_after: DensityMatrix,
    pub trace_distance: f64,
    pub condition_class: ConditionClass,
    /// Largest entrywise gap between the numeric and closed-form matrices.
    pub residual_before: f64,
    pub residual_after: f64,
    /// True when `1 − p·q·r` vanishes, so before and after coincide even
    /// though neither `p` nor `q` is zero.
    pub boundary: bool,
    pub p: Complex64,
    pub q: Complex64,
    pub r: Complex64,
}

/// Builds the shared resource, applies one local replication step on Bob's
/// side, and measures how far Alice's reduced state moved.
pub fn verify_no_signalling(
    psi1: &DataQubit,
    psi2: &DataQubit,
    registry: &OverlapRegistry,
    aux_blanks: usize,
    total_blanks: usize,
) -> Result<SignallingReport> {
    let resource = build_entangled_resource(psi1, psi2, registry, aux_blanks, total_blanks)?;
    let before = reduced_alice_before(&resource)?;
    let after = reduced_alice_after(&resource, registry)?;
    let trace_distance = before.numeric.trace_distance(&after.numeric)?;
    let (p, q, r) = (resource.p(), resource.q(), resource.r());
    let condition_class = classify_existence_condition(p, q)?;
    let bracket = Complex64::new(1.0, 0.0) - p * q * r;
    Ok(SignallingReport {
        rho_before: before.numeric,
        rho_after: after.numeric,
        trace_distance,
        condition_class,
        residual_before: before.residual,
        residual_after: after.residual,
        boundary: bracket.norm() <= BOUNDARY_TOL,
        p,
        q,
        r,
    })
}
