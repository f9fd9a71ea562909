use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::binary_entropy;
use crate::machine::{DataQubit, OverlapRegistry};
use crate::verify::resource::{
    build_entangled_resource, reduced_alice_after, reduced_alice_before,
};

/// Largest Schmidt weights of the shared state before and after the local
/// step, their gap, and the closed-form gap `½|p||q|(1 − |p||q||r|)` it
/// must reproduce. Binary entropies give the same comparison as an
/// entanglement amount.
#[derive(Debug, Clone, Copy)]
pub struct EntanglementReport {
    pub lambda_before: f64,
    pub lambda_after: f64,
    pub gap: f64,
    pub gap_formula: f64,
    pub entropy_before: f64,
    pub entropy_after: f64,
    pub p: Complex64,
    pub q: Complex64,
    pub r: Complex64,
}

pub fn verify_entanglement_conservation(
    psi1: &DataQubit,
    psi2: &DataQubit,
    registry: &OverlapRegistry,
    aux_blanks: usize,
    total_blanks: usize,
) -> Result<EntanglementReport> {
    let resource = build_entangled_resource(psi1, psi2, registry, aux_blanks, total_blanks)?;
    let before = reduced_alice_before(&resource)?;
    let after = reduced_alice_after(&resource, registry)?;
    let lambda_before = before.numeric.eigenpair_2x2()?.lambda_plus;
    let lambda_after = after.numeric.eigenpair_2x2()?.lambda_plus;
    let (p, q, r) = (resource.p(), resource.q(), resource.r());
    let pq = p.norm() * q.norm();
    let gap_formula = 0.5 * pq * (1.0 - pq * r.norm());
    Ok(EntanglementReport {
        lambda_before,
        lambda_after,
        gap: lambda_before - lambda_after,
        gap_formula,
        entropy_before: binary_entropy(lambda_before.clamp(0.0, 1.0))?,
        entropy_after: binary_entropy(lambda_after.clamp(0.0, 1.0))?,
        p,
        q,
        r,
    })
}
