use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{HilbertLayout, RawVector, StateVector};
use crate::machine::{state_overlap, OverlapRegistry, ParamQubit};
use crate::verify::linearity::SuperpositionSpec;

/// Outcome of driving the explicit basis-state copier: exact replication of
/// `|0⟩` and `|1⟩`, and the quartic fidelity loss on a superposed input.
#[derive(Debug, Clone, Copy)]
pub struct ReplicationDemoReport {
    pub basis_fidelity: [f64; 2],
    pub max_basis_amplitude_error: f64,
    pub superposition_fidelity: f64,
    pub superposition_expected: f64,
    pub program_overlap: Complex64,
    pub aux_blanks: usize,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Small dense complex matrix, just enough to assemble the copier.
#[derive(Debug, Clone)]
struct CMat {
    dim: usize,
    e: Vec<Complex64>,
}

impl CMat {
    fn zeros(dim: usize) -> Self {
        Self {
            dim,
            e: vec![c(0.0, 0.0); dim * dim],
        }
    }

    fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.e[i * dim + i] = c(1.0, 0.0);
        }
        m
    }

    fn from_rows(dim: usize, rows: Vec<Complex64>) -> Self {
        assert_eq!(rows.len(), dim * dim);
        Self { dim, e: rows }
    }

    fn kron(&self, other: &CMat) -> CMat {
        let (d1, d2) = (self.dim, other.dim);
        let dim = d1 * d2;
        let mut out = CMat::zeros(dim);
        for i1 in 0..d1 {
            for j1 in 0..d1 {
                let a = self.e[i1 * d1 + j1];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for i2 in 0..d2 {
                    for j2 in 0..d2 {
                        out.e[(i1 * d2 + i2) * dim + (j1 * d2 + j2)] =
                            a * other.e[i2 * d2 + j2];
                    }
                }
            }
        }
        out
    }

    fn add_in_place(&mut self, other: &CMat) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.e.iter_mut().zip(&other.e) {
            *a += b;
        }
    }

    fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![c(0.0, 0.0); d];
        for i in 0..d {
            let mut acc = c(0.0, 0.0);
            for j in 0..d {
                acc += self.e[i * d + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    #[cfg(test)]
    fn unitarity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = c(0.0, 0.0);
                for k in 0..d {
                    acc += self.e[k * d + i].conj() * self.e[k * d + j];
                }
                let want = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
                worst = worst.max((acc - want).norm());
            }
        }
        worst
    }
}

/// Completes a unit vector into a unitary whose first column is that vector.
fn unitary_with_first_column(target: &[Complex64]) -> CMat {
    let n = target.len();
    let mut cols: Vec<Vec<Complex64>> = vec![target.to_vec()];
    let mut k = 0;
    while cols.len() < n && k < n {
        let mut v = vec![c(0.0, 0.0); n];
        v[k] = c(1.0, 0.0);
        for col in &cols {
            let proj: Complex64 = col.iter().zip(&v).map(|(u, w)| u.conj() * w).sum();
            for (vi, ci) in v.iter_mut().zip(col) {
                *vi -= proj * ci;
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-9 {
            for vi in &mut v {
                *vi /= norm;
            }
            cols.push(v);
        }
        k += 1;
    }
    assert_eq!(cols.len(), n, "Gram-Schmidt completion failed");
    let mut m = CMat::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            m.e[i * n + j] = col[i];
        }
    }
    m
}

/// The copier fixture: registers `[data, copy, program, program-copy,
/// m−1 spare blanks, control]` and the explicit block unitary acting on
/// them. Conditioned on the data bit `x`, the unitary flips the copy slot
/// to `|x⟩`, prepares `|P_x⟩` in the program-copy slot, and advances the
/// control from its base state to the branch-`x` successor.
struct CopierSetup {
    u: CMat,
    programs: [ParamQubit; 2],
    ctrl_vecs: Vec<StateVector>,
    spare_blanks: usize,
}

const DEMO_CTRL_OVERLAP: f64 = 0.5;

impl CopierSetup {
    fn build(aux_blanks: usize) -> Result<Self> {
        if aux_blanks == 0 {
            return Err(Error::validation(
                "copying the program register consumes one auxiliary blank; m >= 1 required",
            ));
        }
        let spare_blanks = aux_blanks - 1;
        // distinct, non-orthogonal program qubits
        let programs = [
            ParamQubit::real(1.0, 0.0)?,
            ParamQubit::real(0.6, 0.8)?,
        ];

        let mut reg = OverlapRegistry::new();
        let (cb, c1, c2) = reg.declare_control_chain(c(DEMO_CTRL_OVERLAP, 0.0))?;
        let ctrl_vecs = reg.gram_realize(&[cb, c1, c2])?;
        debug_assert!(
            (ctrl_vecs[0].amplitudes()[0] - c(1.0, 0.0)).norm() < 1e-12,
            "the base control realizes to the first ambient axis"
        );

        // layout: data, copy, program, program-copy, spares, control —
        // checked for the dimension cap before any matrix is assembled
        let mut dims = vec![2usize, 2, 2, 2];
        dims.extend(std::iter::repeat_n(2, spare_blanks));
        dims.push(3);
        HilbertLayout::new(dims)?;

        let zero_proj = CMat::from_rows(
            2,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        );
        let one_proj = CMat::from_rows(
            2,
            vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        let flip = CMat::from_rows(
            2,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        );

        let mut u: Option<CMat> = None;
        for x in 0..2 {
            let (a0, a1) = programs[x].amplitudes();
            // first column |P_x⟩, second its orthogonal partner
            let prep = CMat::from_rows(2, vec![a0, -a1.conj(), a1, a0.conj()]);
            let advance = unitary_with_first_column(ctrl_vecs[x + 1].amplitudes());
            let copy_action = if x == 0 { CMat::identity(2) } else { flip.clone() };
            let mut block = if x == 0 { zero_proj.clone() } else { one_proj.clone() };
            block = block.kron(&copy_action);
            block = block.kron(&CMat::identity(2));
            block = block.kron(&prep);
            if spare_blanks > 0 {
                block = block.kron(&CMat::identity(1 << spare_blanks));
            }
            block = block.kron(&advance);
            match &mut u {
                None => u = Some(block),
                Some(m) => m.add_in_place(&block),
            }
        }

        Ok(Self {
            u: u.expect("two blocks were assembled"),
            programs,
            ctrl_vecs,
            spare_blanks,
        })
    }

    fn layout(&self) -> HilbertLayout {
        let mut dims = vec![2usize, 2, 2, 2];
        dims.extend(std::iter::repeat_n(2, self.spare_blanks));
        dims.push(3);
        HilbertLayout::new(dims).expect("validated at build time")
    }

    fn blanks(&self) -> Vec<StateVector> {
        (0..self.spare_blanks)
            .map(|_| StateVector::basis(HilbertLayout::qubit(), 0).expect("|0⟩"))
            .collect()
    }

    fn basis_input(&self, x: usize) -> Result<StateVector> {
        let data = StateVector::basis(HilbertLayout::qubit(), x)?;
        let blank = StateVector::basis(HilbertLayout::qubit(), 0)?;
        let mut v = data.tensor(&blank)?;
        v = v.tensor(&self.programs[x].to_state())?;
        v = v.tensor(&blank)?;
        for b in self.blanks() {
            v = v.tensor(&b)?;
        }
        v.tensor(&self.ctrl_vecs[0])
    }

    fn expected_output(&self, x: usize) -> Result<StateVector> {
        let data = StateVector::basis(HilbertLayout::qubit(), x)?;
        let mut v = data.tensor(&StateVector::basis(HilbertLayout::qubit(), x)?)?;
        v = v.tensor(&self.programs[x].to_state())?;
        v = v.tensor(&self.programs[x].to_state())?;
        for b in self.blanks() {
            v = v.tensor(&b)?;
        }
        v.tensor(&self.ctrl_vecs[x + 1])
    }

    fn apply(&self, input: &StateVector) -> Result<StateVector> {
        StateVector::new(self.layout(), self.u.matvec(input.amplitudes()))
    }
}

/// Runs the explicit copier on both basis states and the balanced
/// superposition.
pub fn demo_orthogonal_replication(aux_blanks: usize) -> Result<ReplicationDemoReport> {
    let setup = CopierSetup::build(aux_blanks)?;
    let mut basis_fidelity = [0.0f64; 2];
    let mut max_err = 0.0f64;
    for x in 0..2 {
        let out = setup.apply(&setup.basis_input(x)?)?;
        let expected = setup.expected_output(x)?;
        for (a, b) in out.amplitudes().iter().zip(expected.amplitudes()) {
            max_err = max_err.max((a - b).norm());
        }
        let copy_register = out.reduced_density(&[1])?;
        basis_fidelity[x] =
            copy_register.fidelity_to_pure(&StateVector::basis(HilbertLayout::qubit(), x)?)?;
    }

    let spec = SuperpositionSpec::balanced();
    let superposition_fidelity = superposition_fidelity_with(&setup, &spec)?;

    Ok(ReplicationDemoReport {
        basis_fidelity,
        max_basis_amplitude_error: max_err,
        superposition_fidelity,
        superposition_expected: spec.quartic_sum(),
        program_overlap: state_overlap(&setup.programs[0], &setup.programs[1]),
        aux_blanks,
    })
}

/// Copy-register fidelity of the copier on `α|0⟩ + β|1⟩`.
pub fn demo_superposition_fidelity(aux_blanks: usize, spec: &SuperpositionSpec) -> Result<f64> {
    let setup = CopierSetup::build(aux_blanks)?;
    superposition_fidelity_with(&setup, spec)
}

fn superposition_fidelity_with(setup: &CopierSetup, spec: &SuperpositionSpec) -> Result<f64> {
    let mut raw = RawVector::zeros(setup.layout());
    raw.accumulate(&setup.basis_input(0)?, spec.alpha())?;
    raw.accumulate(&setup.basis_input(1)?, spec.beta())?;
    let input = raw.into_state()?;
    let out = setup.apply(&input)?;
    let copy_register = out.reduced_density(&[1])?;
    let xi = StateVector::qubit(spec.alpha(), spec.beta())?;
    copy_register.fidelity_to_pure(&xi)
}
