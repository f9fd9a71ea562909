use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{HilbertLayout, RawVector};
use crate::machine::{Branch, DataQubit, MachineConfiguration, OverlapRegistry};

/// Deviations above this mark the linear extension as contradicting the
/// defining replication contract.
pub const LINEARITY_TOL: f64 = 1e-9;

/// A superposition `α|ψ1⟩ + β|ψ2⟩` over an orthogonal basis pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionSpec {
    alpha: Complex64,
    beta: Complex64,
}

impl SuperpositionSpec {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::validation(format!("{name} must be finite")));
            }
        }
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::validation(format!(
                "|alpha|^2 + |beta|^2 = 1 violated: got {norm}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    pub fn balanced() -> Self {
        let s = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
        Self { alpha: s, beta: s }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// `|α|⁴ + |β|⁴` — the copy-register fidelity the linear extension can
    /// reach on an orthogonal basis.
    pub fn quartic_sum(&self) -> f64 {
        let a2 = self.alpha.norm_sqr();
        let b2 = self.beta.norm_sqr();
        a2 * a2 + b2 * b2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinearityVerdict {
    Consistent,
    Contradiction,
}

/// Evidence for one superposed input: fidelity of the linearly-extended
/// machine's copy register against the input, versus the fidelity 1 the
/// replication contract demands.
#[derive(Debug, Clone, Copy)]
pub struct LinearityReport {
    pub replication_fidelity: f64,
    pub ideal_fidelity: f64,
    pub deviation: f64,
    pub verdict: LinearityVerdict,
}

// The construction needs one auxiliary blank and the minimal legal budget.
const LIN_M: usize = 1;
const LIN_N: usize = 4;

/// Applies the machine linearly to `α|ψ1⟩ + β|ψ2⟩`.
///
/// Each orthogonal branch gets one formal replication step; the resulting
/// branch vectors (parent data ⊗ parent program ⊗ realized child image) are
/// combined with raw amplitudes `α`, `β`, everything but the copy register
/// is traced out, and the fidelity of what remains against the input
/// superposition is reported. Requires `⟨ψ1|ψ2⟩ = 0` and a non-orthogonal
/// program pair.
pub fn verify_linearity(
    psi1: &DataQubit,
    psi2: &DataQubit,
    spec: &SuperpositionSpec,
    registry: &OverlapRegistry,
) -> Result<LinearityReport> {
    let p = psi1.overlap(psi2);
    if p.norm() >= 1e-12 {
        return Err(Error::usage(format!(
            "the superposed input needs an orthogonal basis pair; |⟨ψ1|ψ2⟩| = {}",
            p.norm()
        )));
    }
    let (p1, p2) = registry
        .program_pair()
        .cloned()
        .ok_or_else(|| Error::usage("registry has no declared program pair"))?;
    let (c_base, _, _) = registry
        .control_chain()
        .cloned()
        .ok_or_else(|| Error::usage("registry has no declared control chain"))?;
    let q = registry.overlap(&p1, &p2)?;
    if q.norm() <= 1e-12 {
        return Err(Error::usage(
            "replicating orthogonal data states requires non-orthogonal program states \
             (|⟨P1|P2⟩| > 0)",
        ));
    }

    let cfg1 = MachineConfiguration::new(
        psi1.clone(),
        p1.clone(),
        c_base.clone(),
        LIN_M,
        LIN_N,
        Branch::First,
    )?;
    let cfg2 =
        MachineConfiguration::new(psi2.clone(), p2.clone(), c_base, LIN_M, LIN_N, Branch::Second)?;
    let out1 = cfg1.apply_replication_step()?;
    let out2 = cfg2.apply_replication_step()?;

    // ⟨child1|child2⟩ under the preservation rule (zero here, since the
    // data states are orthogonal; kept general on purpose).
    let child_overlap = out1.child.data().overlap(out2.child.data())
        * registry.overlap(out1.child.program(), out2.child.program())?
        * registry.overlap(out1.child.control(), out2.child.control())?;

    let mut scratch = OverlapRegistry::new();
    let l1 = scratch.add_label("L1")?;
    let l2 = scratch.add_label("L2")?;
    scratch.declare_overlap(&l1, &l2, child_overlap)?;
    let l_vecs = scratch.gram_realize(&[l1, l2])?;

    let prog_vecs = registry.gram_realize(&[p1, p2])?;
    let psi_vecs = [psi1.to_state(), psi2.to_state()];
    let branch1 = psi_vecs[0].tensor(&prog_vecs[0])?.tensor(&l_vecs[0])?;
    let branch2 = psi_vecs[1].tensor(&prog_vecs[1])?.tensor(&l_vecs[1])?;

    let mut raw = RawVector::zeros(branch1.layout().clone());
    raw.accumulate(&branch1, spec.alpha)?;
    raw.accumulate(&branch2, spec.beta)?;
    let output = raw.into_state()?;

    let mut xi_raw = RawVector::zeros(HilbertLayout::qubit());
    xi_raw.accumulate(&psi_vecs[0], spec.alpha)?;
    xi_raw.accumulate(&psi_vecs[1], spec.beta)?;
    let xi = xi_raw.into_state()?;

    let copy_register = output.reduced_density(&[0])?;
    let fidelity = copy_register.fidelity_to_pure(&xi)?;
    let deviation = 1.0 - fidelity;
    Ok(LinearityReport {
        replication_fidelity: fidelity,
        ideal_fidelity: 1.0,
        deviation,
        verdict: if deviation > LINEARITY_TOL {
            LinearityVerdict::Contradiction
        } else {
            LinearityVerdict::Consistent
        },
    })
}
