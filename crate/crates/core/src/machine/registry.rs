use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{HilbertLayout, StateVector};

/// Slack on `|overlap| ≤ 1` and on the PSD check of declared Gram matrices.
const MAG_TOL: f64 = 1e-12;
const GRAM_PSD_TOL: f64 = 1e-9;

/// Name of an abstract tensor factor (program state, control state, …)
/// whose identity is carried entirely by its declared overlaps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Label(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A table of labeled abstract factors with declared pairwise inner
/// products. `overlap(a, b)` always means `⟨a|b⟩`; the diagonal is fixed
/// at 1 and Hermitian symmetry is maintained automatically.
///
/// The registry is built once and then read concurrently; no operation
/// mutates it after the declaration phase.
#[derive(Debug, Clone, Default)]
pub struct OverlapRegistry {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    // key (i, j) with i < j, value ⟨labels[i]|labels[j]⟩
    overlaps: HashMap<(usize, usize), Complex64>,
    program_pair: Option<(Label, Label)>,
    control_chain: Option<(Label, Label, Label)>,
}

impl OverlapRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn add_label(&mut self, name: &str) -> Result<Label> {
        let label = Label::new(name);
        if self.index.contains_key(&label) {
            return Err(Error::validation(format!("label {label} already registered")));
        }
        self.index.insert(label.clone(), self.labels.len());
        self.labels.push(label.clone());
        Ok(label)
    }

    fn position(&self, label: &Label) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::usage(format!("unknown label {label}")))
    }

    /// Declares `⟨a|b⟩ = value`. Magnitudes above 1, non-finite values,
    /// redeclarations, and off-unit diagonal entries are rejected.
    pub fn declare_overlap(&mut self, a: &Label, b: &Label, value: Complex64) -> Result<()> {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::validation("overlap must be finite"));
        }
        if value.norm() > 1.0 + MAG_TOL {
            return Err(Error::validation(format!(
                "|overlap| <= 1 violated for ({a}, {b}): magnitude {}",
                value.norm()
            )));
        }
        let ia = self.position(a)?;
        let ib = self.position(b)?;
        if ia == ib {
            if (value - Complex64::new(1.0, 0.0)).norm() > MAG_TOL {
                return Err(Error::validation(format!(
                    "diagonal overlap of {a} is fixed at 1"
                )));
            }
            return Ok(());
        }
        let (key, stored) = if ia < ib {
            ((ia, ib), value)
        } else {
            ((ib, ia), value.conj())
        };
        if self.overlaps.contains_key(&key) {
            return Err(Error::validation(format!(
                "overlap between {a} and {b} already declared"
            )));
        }
        self.overlaps.insert(key, stored);
        Ok(())
    }

    /// Looks up `⟨a|b⟩`. Identical labels give 1; undeclared pairs are a
    /// usage error rather than an implicit zero.
    pub fn overlap(&self, a: &Label, b: &Label) -> Result<Complex64> {
        let ia = self.position(a)?;
        let ib = self.position(b)?;
        if ia == ib {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let (key, flip) = if ia < ib { ((ia, ib), false) } else { ((ib, ia), true) };
        let v = self.overlaps.get(&key).copied().ok_or_else(|| {
            Error::usage(format!("overlap between {a} and {b} was never declared"))
        })?;
        Ok(if flip { v.conj() } else { v })
    }

    /// Registers the program pair `P1`, `P2` with `⟨P1|P2⟩ = q`.
    pub fn declare_program_pair(&mut self, q: Complex64) -> Result<(Label, Label)> {
        if self.program_pair.is_some() {
            return Err(Error::validation("program pair already declared"));
        }
        let p1 = self.add_label("P1")?;
        let p2 = self.add_label("P2")?;
        self.declare_overlap(&p1, &p2, q)?;
        self.program_pair = Some((p1.clone(), p2.clone()));
        Ok((p1, p2))
    }

    /// Registers the control chain `C`, `C1`, `C2` with `⟨C1|C2⟩ = r` and
    /// `⟨C|C1⟩ = ⟨C|C2⟩ = 0`. The advanced labels are named by appending
    /// the branch digit to the base label, which is also how a replication
    /// step advances a configuration's control label.
    ///
    /// The two zero defaults never enter any verifier quantity; callers
    /// needing different values can build the chain by hand with
    /// [`OverlapRegistry::add_label`] and [`OverlapRegistry::declare_overlap`].
    pub fn declare_control_chain(&mut self, r: Complex64) -> Result<(Label, Label, Label)> {
        if self.control_chain.is_some() {
            return Err(Error::validation("control chain already declared"));
        }
        let c = self.add_label("C")?;
        let c1 = self.add_label("C1")?;
        let c2 = self.add_label("C2")?;
        self.declare_overlap(&c1, &c2, r)?;
        self.declare_overlap(&c, &c1, Complex64::new(0.0, 0.0))?;
        self.declare_overlap(&c, &c2, Complex64::new(0.0, 0.0))?;
        self.control_chain = Some((c.clone(), c1.clone(), c2.clone()));
        Ok((c, c1, c2))
    }

    pub fn program_pair(&self) -> Option<&(Label, Label)> {
        self.program_pair.as_ref()
    }

    pub fn control_chain(&self) -> Option<&(Label, Label, Label)> {
        self.control_chain.as_ref()
    }

    /// Gram matrix `G[i][j] = ⟨labels[i]|labels[j]⟩` of the given labels;
    /// every pair must be declared.
    pub fn gram(&self, labels: &[Label]) -> Result<Vec<Complex64>> {
        let n = labels.len();
        let mut g = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                g[i * n + j] = self.overlap(&labels[i], &labels[j])?;
            }
        }
        Ok(g)
    }

    /// Concrete unit vectors reproducing the declared pairwise overlaps.
    ///
    /// Uses a Cholesky-style embedding into an ambient space of dimension
    /// equal to the number of labels, with the positive-diagonal convention;
    /// rank-deficient (but PSD) Gram matrices are handled by zero pivots.
    /// Returned vectors are aligned with the input label order.
    pub fn gram_realize(&self, labels: &[Label]) -> Result<Vec<StateVector>> {
        if labels.is_empty() {
            return Err(Error::usage("gram_realize requires at least one label"));
        }
        let n = labels.len();
        let g = self.gram(labels)?;
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut d = g[j * n + j].re;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if d < -GRAM_PSD_TOL {
                return Err(Error::validation(format!(
                    "Gram matrix of {:?} is not positive semidefinite (pivot {d})",
                    labels.iter().map(Label::as_str).collect::<Vec<_>>()
                )));
            }
            let pivot = d.max(0.0).sqrt();
            l[j * n + j] = Complex64::new(pivot, 0.0);
            for i in (j + 1)..n {
                let mut s = g[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                if d > 1e-12 {
                    l[i * n + j] = s / pivot;
                } else {
                    if s.norm() > 1e-6 {
                        return Err(Error::validation(format!(
                            "Gram matrix of {:?} is not positive semidefinite \
                             (residual {} under a zero pivot)",
                            labels.iter().map(Label::as_str).collect::<Vec<_>>(),
                            s.norm()
                        )));
                    }
                    l[i * n + j] = Complex64::new(0.0, 0.0);
                }
            }
        }
        // v_i = conj(row i of L) satisfies ⟨v_i|v_j⟩ = G[i][j]
        let layout = HilbertLayout::single(n)?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let amps: Vec<Complex64> = (0..n).map(|k| l[i * n + k].conj()).collect();
            out.push(StateVector::new(layout.clone(), amps)?);
        }
        Ok(out)
    }
}
