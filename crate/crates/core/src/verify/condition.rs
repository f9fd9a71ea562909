use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Magnitudes at or below this count as zero for classification.
pub const CLASS_ZERO_TOL: f64 = 1e-12;

/// Existence regime of a self-replication step for a given pair of data
/// state and program overlaps `p = ⟨ψ1|ψ2⟩`, `q = ⟨P1|P2⟩`.
///
/// Alice's reduced state survives the step unchanged exactly when `p·q`
/// times the residual bracket vanishes, which splits into: orthogonal data
/// states (any programs), orthogonal programs (any data states), the
/// degenerate case with both vanishing, and everything else — where the
/// step would signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionClass {
    OrthogonalStates,
    OrthogonalPrograms,
    Degenerate,
    Violation,
}

impl ConditionClass {
    pub fn is_violation(self) -> bool {
        matches!(self, ConditionClass::Violation)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConditionClass::OrthogonalStates => "ORTHOGONAL_STATES",
            ConditionClass::OrthogonalPrograms => "ORTHOGONAL_PROGRAMS",
            ConditionClass::Degenerate => "DEGENERATE",
            ConditionClass::Violation => "VIOLATION",
        }
    }
}

impl fmt::Display for ConditionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_existence_condition(p: Complex64, q: Complex64) -> Result<ConditionClass> {
    for (name, v) in [("p", p), ("q", q)] {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::validation(format!("{name} must be finite")));
        }
        if v.norm() > 1.0 + CLASS_ZERO_TOL {
            return Err(Error::validation(format!(
                "|{name}| <= 1 violated: magnitude {}",
                v.norm()
            )));
        }
    }
    let p_zero = p.norm() <= CLASS_ZERO_TOL;
    let q_zero = q.norm() <= CLASS_ZERO_TOL;
    Ok(match (p_zero, q_zero) {
        (true, true) => ConditionClass::Degenerate,
        (true, false) => ConditionClass::OrthogonalStates,
        (false, true) => ConditionClass::OrthogonalPrograms,
        (false, false) => ConditionClass::Violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classification_table() {
        assert_eq!(
            classify_existence_condition(c(0.0, 0.0), c(0.7, 0.0)).unwrap(),
            ConditionClass::OrthogonalStates
        );
        assert_eq!(
            classify_existence_condition(c(0.3, 0.0), c(0.0, 0.0)).unwrap(),
            ConditionClass::OrthogonalPrograms
        );
        assert_eq!(
            classify_existence_condition(c(0.3, 0.0), c(0.7, 0.0)).unwrap(),
            ConditionClass::Violation
        );
        assert_eq!(
            classify_existence_condition(c(0.0, 0.0), c(0.0, 0.0)).unwrap(),
            ConditionClass::Degenerate
        );
    }

    #[test]
    fn complex_magnitudes_count() {
        assert_eq!(
            classify_existence_condition(c(0.0, 0.3), c(0.0, 0.0)).unwrap(),
            ConditionClass::OrthogonalPrograms
        );
    }

    #[test]
    fn magnitude_above_one_is_rejected() {
        assert!(classify_existence_condition(c(1.1, 0.0), c(0.0, 0.0)).is_err());
        assert!(classify_existence_condition(c(0.0, 0.0), c(0.8, 0.8)).is_err());
    }
}
