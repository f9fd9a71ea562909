use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, HilbertLayout, RawVector, StateVector};
use crate::machine::{
    Branch, DataQubit, MachineConfiguration, OverlapRegistry, ReplicationOutput,
};

/// The shared two-party resource: Alice's qubit entangled with the two
/// possible machine branches on Bob's side, every abstract factor realized
/// into a concrete vector. Alice's qubit is tensor factor 0.
#[derive(Debug, Clone)]
pub struct EntangledResource {
    state: StateVector,
    psi: [StateVector; 2],
    prog: [StateVector; 2],
    p: Complex64,
    q: Complex64,
    r: Complex64,
    aux_blanks: usize,
    total_blanks: usize,
    outputs: [ReplicationOutput; 2],
}

fn tensor_all(factors: &[StateVector]) -> Result<StateVector> {
    let mut iter = factors.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::usage("tensor product of zero factors"))?;
    let mut acc = first.clone();
    for f in iter {
        acc = acc.tensor(f)?;
    }
    Ok(acc)
}

fn blank() -> StateVector {
    StateVector::basis(HilbertLayout::qubit(), 0).expect("|0⟩ exists")
}

fn alice_basis(bit: usize) -> StateVector {
    StateVector::basis(HilbertLayout::qubit(), bit).expect("qubit basis")
}

/// Builds the shared resource for the two machine branches.
///
/// Bob's side of each branch is the full machine configuration — data state,
/// copy-slot blank, program factor, `m` auxiliary blanks, control factor —
/// followed by the `n−(m+1)` reservoir blanks. The registry must already
/// hold a program pair and a control chain.
pub fn build_entangled_resource(
    psi1: &DataQubit,
    psi2: &DataQubit,
    registry: &OverlapRegistry,
    aux_blanks: usize,
    total_blanks: usize,
) -> Result<EntangledResource> {
    let (m, n) = (aux_blanks, total_blanks);
    if n < 2 * (m + 1) {
        return Err(Error::resource(format!(
            "a replication step on the shared resource needs n >= 2(m+1) = {}, got n = {n}",
            2 * (m + 1)
        )));
    }
    let (p1, p2) = registry
        .program_pair()
        .cloned()
        .ok_or_else(|| Error::usage("registry has no declared program pair"))?;
    let (c_base, c1, c2) = registry
        .control_chain()
        .cloned()
        .ok_or_else(|| Error::usage("registry has no declared control chain"))?;

    let prog_vecs = registry.gram_realize(&[p1.clone(), p2.clone()])?;
    let ctrl_vecs = registry.gram_realize(&[c_base.clone(), c1.clone(), c2.clone()])?;

    let p = psi1.overlap(psi2);
    let q = registry.overlap(&p1, &p2)?;
    let r = registry.overlap(&c1, &c2)?;

    let cfg1 = MachineConfiguration::new(
        psi1.clone(),
        p1,
        c_base.clone(),
        m,
        n,
        Branch::First,
    )?;
    let cfg2 = MachineConfiguration::new(psi2.clone(), p2, c_base, m, n, Branch::Second)?;
    let out1 = cfg1.apply_replication_step()?;
    let out2 = cfg2.apply_replication_step()?;

    let psi_vecs = [psi1.to_state(), psi2.to_state()];
    let mut branches = Vec::with_capacity(2);
    for i in 0..2 {
        let mut factors = vec![psi_vecs[i].clone(), blank(), prog_vecs[i].clone()];
        factors.extend(std::iter::repeat_with(blank).take(m));
        factors.push(ctrl_vecs[0].clone());
        factors.extend(std::iter::repeat_with(blank).take(n - (m + 1)));
        branches.push(tensor_all(&factors)?);
    }

    let half = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
    let layout = HilbertLayout::qubit().concat(branches[0].layout())?;
    let mut raw = RawVector::zeros(layout);
    raw.accumulate(&alice_basis(0).tensor(&branches[0])?, half)?;
    raw.accumulate(&alice_basis(1).tensor(&branches[1])?, half)?;
    let state = raw.into_state()?;

    Ok(EntangledResource {
        state,
        psi: psi_vecs,
        prog: [prog_vecs[0].clone(), prog_vecs[1].clone()],
        p,
        q,
        r,
        aux_blanks: m,
        total_blanks: n,
        outputs: [out1, out2],
    })
}

impl EntangledResource {
    pub fn state(&self) -> &StateVector {
        &self.state
    }

    /// `p = ⟨ψ1|ψ2⟩`
    pub fn p(&self) -> Complex64 {
        self.p
    }

    /// `q = ⟨P1|P2⟩`
    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// `r = ⟨C1|C2⟩`
    pub fn r(&self) -> Complex64 {
        self.r
    }

    pub fn aux_blanks(&self) -> usize {
        self.aux_blanks
    }

    pub fn total_blanks(&self) -> usize {
        self.total_blanks
    }

    pub fn outputs(&self) -> &[ReplicationOutput; 2] {
        &self.outputs
    }
}

/// Alice's reduced state computed along both routes: the numeric partial
/// trace of an explicitly constructed vector, and the closed-form matrix in
/// terms of the scalar overlaps. `residual` is their largest entrywise gap.
#[derive(Debug, Clone)]
pub struct AliceReduced {
    pub numeric: DensityMatrix,
    pub closed_form: DensityMatrix,
    pub residual: f64,
}

fn closed_form_alice(off01: Complex64) -> Result<DensityMatrix> {
    let half = Complex64::new(0.5, 0.0);
    DensityMatrix::new(
        HilbertLayout::qubit(),
        vec![half, off01, off01.conj(), half],
    )
}

/// Alice's reduced state before any replication step.
///
/// Closed form: `½[I + |0⟩⟨1|·conj(p·q) + h.c.]`.
pub fn reduced_alice_before(resource: &EntangledResource) -> Result<AliceReduced> {
    let numeric = resource.state.reduced_density(&[0])?;
    let off01 = (resource.p * resource.q).conj() * 0.5;
    let closed_form = closed_form_alice(off01)?;
    let residual = numeric.max_abs_diff(&closed_form)?;
    Ok(AliceReduced {
        numeric,
        closed_form,
        residual,
    })
}

/// Alice's reduced state after Bob applies one replication step to each
/// branch.
///
/// The step's action on each branch is expanded once: the emitted parent
/// copies are tensored explicitly while the child images under the fixed
/// operator are realized as a vector pair whose overlap is fixed by the
/// inner-product-preservation rule (`p·q·r`). Closed form:
/// `½[I + |0⟩⟨1|·conj(p²·q²·r) + h.c.]`.
pub fn reduced_alice_after(
    resource: &EntangledResource,
    registry: &OverlapRegistry,
) -> Result<AliceReduced> {
    let [out1, out2] = &resource.outputs;

    // ⟨child1|child2⟩ under the preservation rule: data, program, control,
    // and blank factors multiply.
    let child_overlap = out1.child.data().overlap(out2.child.data())
        * registry.overlap(out1.child.program(), out2.child.program())?
        * registry.overlap(out1.child.control(), out2.child.control())?;

    let mut scratch = OverlapRegistry::new();
    let l1 = scratch.add_label("L1")?;
    let l2 = scratch.add_label("L2")?;
    scratch.declare_overlap(&l1, &l2, child_overlap)?;
    let l_vecs = scratch.gram_realize(&[l1, l2])?;

    let m = resource.aux_blanks;
    let n = resource.total_blanks;
    let reservoir_after = n - 2 * (m + 1);

    let mut branches = Vec::with_capacity(2);
    for i in 0..2 {
        let mut factors = vec![
            resource.psi[i].clone(),
            resource.prog[i].clone(),
            l_vecs[i].clone(),
        ];
        factors.extend(std::iter::repeat_with(blank).take(reservoir_after));
        branches.push(tensor_all(&factors)?);
    }

    let half = Complex64::new(1.0 / 2.0f64.sqrt(), 0.0);
    let layout = HilbertLayout::qubit().concat(branches[0].layout())?;
    let mut raw = RawVector::zeros(layout);
    raw.accumulate(&alice_basis(0).tensor(&branches[0])?, half)?;
    raw.accumulate(&alice_basis(1).tensor(&branches[1])?, half)?;
    let state = raw.into_state()?;

    let numeric = state.reduced_density(&[0])?;
    let pq = resource.p * resource.q;
    let off01 = (pq * pq * resource.r).conj() * 0.5;
    let closed_form = closed_form_alice(off01)?;
    let residual = numeric.max_abs_diff(&closed_form)?;
    Ok(AliceReduced {
        numeric,
        closed_form,
        residual,
    })
}

/// Registry holding exactly one program pair with overlap `q` and one
/// control chain with overlap `r`.
pub fn registry_with(q: Complex64, r: Complex64) -> Result<OverlapRegistry> {
    let mut reg = OverlapRegistry::new();
    reg.declare_program_pair(q)?;
    reg.declare_control_chain(r)?;
    Ok(reg)
}
