use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::machine::param::DataQubit;
use crate::machine::registry::{Label, OverlapRegistry};

/// Which of the two defined machine inputs a configuration plays: the
/// replication step advances the control to the matching successor
/// (`C → C1` or `C → C2`). The advance is deterministic per branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    First,
    Second,
}

impl Branch {
    fn digit(self) -> char {
        match self {
            Branch::First => '1',
            Branch::Second => '2',
        }
    }
}

/// One machine: a data state, a program factor, a control factor, and the
/// blank bookkeeping. The machine itself holds one copy slot plus `m`
/// auxiliary blanks; the remaining `n − (m+1)` blanks form the reservoir
/// consumed `m+1` at a time by replication steps.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineConfiguration {
    data: DataQubit,
    program: Label,
    aux_blanks: usize,
    control: Label,
    reservoir: usize,
    branch: Branch,
    depth: usize,
}

impl MachineConfiguration {
    /// Builds a fresh (depth-0) machine from a total blank budget `n`.
    pub fn new(
        data: DataQubit,
        program: Label,
        control: Label,
        aux_blanks: usize,
        total_blanks: usize,
        branch: Branch,
    ) -> Result<Self> {
        if total_blanks < aux_blanks + 1 {
            return Err(Error::validation(format!(
                "total blank count {total_blanks} cannot cover the machine's own \
                 {} blanks (m + 1)",
                aux_blanks + 1
            )));
        }
        Ok(Self {
            data,
            program,
            aux_blanks,
            control,
            reservoir: total_blanks - (aux_blanks + 1),
            branch,
            depth: 0,
        })
    }

    pub fn data(&self) -> &DataQubit {
        &self.data
    }

    pub fn program(&self) -> &Label {
        &self.program
    }

    pub fn control(&self) -> &Label {
        &self.control
    }

    pub fn aux_blanks(&self) -> usize {
        self.aux_blanks
    }

    pub fn reservoir(&self) -> usize {
        self.reservoir
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// One formal replication step.
    ///
    /// Emits a parent copy of the data and program and a child whose control
    /// label is advanced by the branch digit and whose reservoir shrank by
    /// `m + 1`. This rewrites the configuration; no operator matrix is ever
    /// constructed.
    pub fn apply_replication_step(&self) -> Result<ReplicationOutput> {
        let cost = self.aux_blanks + 1;
        if self.reservoir < cost {
            return Err(Error::resource(format!(
                "reservoir holds {} blanks but a step consumes {cost}; \
                 one step needs a total of n >= 2(m+1)",
                self.reservoir
            )));
        }
        let child = MachineConfiguration {
            data: self.data.clone(),
            program: self.program.clone(),
            aux_blanks: self.aux_blanks,
            control: Label::new(format!("{}{}", self.control, self.branch.digit())),
            reservoir: self.reservoir - cost,
            branch: self.branch,
            depth: self.depth + 1,
        };
        Ok(ReplicationOutput {
            parent_data: self.data.clone(),
            parent_program: self.program.clone(),
            depth: child.depth,
            child,
        })
    }
}

/// Result of one replication step: the emitted parent copy plus the child
/// configuration the fixed operator acts on next.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationOutput {
    pub parent_data: DataQubit,
    pub parent_program: Label,
    pub child: MachineConfiguration,
    pub depth: usize,
}

/// Overlap `⟨out_a|out_b⟩` of two one-step outputs.
///
/// The parent copies contribute `⟨ψ_a|ψ_b⟩⟨P_a|P_b⟩`; the child images under
/// the fixed operator contribute the same product again times the control
/// overlap, since the operator preserves inner products and blanks overlap
/// at 1. For the two defined inputs this is the `p²q²r` product.
pub fn branch_overlap_after(
    a: &ReplicationOutput,
    b: &ReplicationOutput,
    registry: &OverlapRegistry,
) -> Result<Complex64> {
    if a.child.aux_blanks != b.child.aux_blanks
        || a.depth != b.depth
        || a.child.reservoir != b.child.reservoir
    {
        return Err(Error::usage(
            "branch outputs are structurally incompatible (m, depth, or reservoir differ)",
        ));
    }
    let s = a.parent_data.overlap(&b.parent_data);
    let q = registry.overlap(&a.parent_program, &b.parent_program)?;
    let r = registry.overlap(&a.child.control, &b.child.control)?;
    let child = a.child.data.overlap(&b.child.data)
        * registry.overlap(&a.child.program, &b.child.program)?
        * r;
    Ok(s * q * child)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::param::ParamQubit;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn setup(q: f64, r: f64) -> (OverlapRegistry, Label, Label, Label) {
        let mut reg = OverlapRegistry::new();
        let (p1, p2) = reg.declare_program_pair(c(q, 0.0)).unwrap();
        let (base, _, _) = reg.declare_control_chain(c(r, 0.0)).unwrap();
        (reg, p1, p2, base)
    }

    #[test]
    fn step_bookkeeping() {
        let (_reg, p1, _p2, base) = setup(0.5, 0.5);
        let psi = DataQubit::from(ParamQubit::real(0.6, 0.8).unwrap());
        let cfg =
            MachineConfiguration::new(psi, p1, base, 1, 4, Branch::First).unwrap();
        assert_eq!(cfg.reservoir(), 2);

        let out = cfg.apply_replication_step().unwrap();
        assert_eq!(out.depth, 1);
        assert_eq!(out.child.reservoir(), 0);
        assert_eq!(out.child.control().as_str(), "C1");
        assert_eq!(out.parent_program.as_str(), "P1");
    }

    #[test]
    fn two_steps_fit_exactly_then_fail() {
        // reservoir 2(m+1) allows two steps; the third is a resource error
        let (_reg, p1, _p2, base) = setup(0.5, 0.5);
        let psi = DataQubit::from(ParamQubit::real(1.0, 0.0).unwrap());
        let cfg =
            MachineConfiguration::new(psi, p1, base, 1, 6, Branch::Second).unwrap();
        assert_eq!(cfg.reservoir(), 4);
        let first = cfg.apply_replication_step().unwrap();
        let second = first.child.apply_replication_step().unwrap();
        assert_eq!(second.depth, 2);
        assert_eq!(second.child.control().as_str(), "C22");
        let err = second.child.apply_replication_step().unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
    }

    #[test]
    fn depth_counts_steps() {
        let (_reg, p1, _p2, base) = setup(0.5, 0.5);
        let psi = DataQubit::from(ParamQubit::real(1.0, 0.0).unwrap());
        let mut cfg =
            MachineConfiguration::new(psi, p1, base, 0, 10, Branch::First).unwrap();
        for k in 1..=5 {
            let out = cfg.apply_replication_step().unwrap();
            assert_eq!(out.depth, k);
            cfg = out.child;
        }
        // 5 steps consumed 5(m+1) = 5 blanks of the 9 in reserve
        assert_eq!(cfg.reservoir(), 4);
    }

    #[test]
    fn identical_branches_overlap_at_one() {
        let (reg, p1, _p2, base) = setup(0.5, 0.5);
        let psi = DataQubit::from(ParamQubit::real(0.6, 0.8).unwrap());
        let cfg =
            MachineConfiguration::new(psi, p1, base, 1, 4, Branch::First).unwrap();
        let out = cfg.apply_replication_step().unwrap();
        let ov = branch_overlap_after(&out, &out, &reg).unwrap();
        assert!((ov - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn orthogonal_data_kills_the_overlap() {
        let (reg, p1, p2, base) = setup(0.8, 0.5);
        let psi1 = DataQubit::from(ParamQubit::real(0.6, 0.8).unwrap());
        let psi2 = psi1.orthogonal_complement();
        let cfg1 =
            MachineConfiguration::new(psi1, p1, base.clone(), 1, 4, Branch::First).unwrap();
        let cfg2 = MachineConfiguration::new(psi2, p2, base, 1, 4, Branch::Second).unwrap();
        let ov = branch_overlap_after(
            &cfg1.apply_replication_step().unwrap(),
            &cfg2.apply_replication_step().unwrap(),
            &reg,
        )
        .unwrap();
        assert!(ov.norm() < 1e-14);
    }

    #[test]
    fn product_structure_of_branch_overlap() {
        // |p| = 1/√2, q = r = 0.5, all real: p²q²r = 0.5 · 0.25 · 0.5
        let (reg, p1, p2, base) = setup(0.5, 0.5);
        let s = 1.0 / 2.0f64.sqrt();
        let psi1 = DataQubit::from(ParamQubit::real(1.0, 0.0).unwrap());
        let psi2 = DataQubit::from(ParamQubit::real(s, s).unwrap());
        let cfg1 =
            MachineConfiguration::new(psi1, p1, base.clone(), 1, 4, Branch::First).unwrap();
        let cfg2 = MachineConfiguration::new(psi2, p2, base, 1, 4, Branch::Second).unwrap();
        let ov = branch_overlap_after(
            &cfg1.apply_replication_step().unwrap(),
            &cfg2.apply_replication_step().unwrap(),
            &reg,
        )
        .unwrap();
        assert!((ov - c(0.0625, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn incompatible_outputs_are_rejected() {
        let (reg, p1, p2, base) = setup(0.5, 0.5);
        let psi = DataQubit::from(ParamQubit::real(1.0, 0.0).unwrap());
        let cfg1 = MachineConfiguration::new(psi.clone(), p1, base.clone(), 1, 4, Branch::First)
            .unwrap();
        let cfg2 = MachineConfiguration::new(psi, p2, base, 2, 6, Branch::Second).unwrap();
        let err = branch_overlap_after(
            &cfg1.apply_replication_step().unwrap(),
            &cfg2.apply_replication_step().unwrap(),
            &reg,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn construction_requires_enough_blanks() {
        let (_reg, p1, _p2, base) = setup(0.5, 0.5);
        let psi = DataQubit::from(ParamQubit::real(1.0, 0.0).unwrap());
        assert!(MachineConfiguration::new(psi, p1, base, 3, 2, Branch::First).is_err());
    }
}
