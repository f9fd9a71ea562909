use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::machine::{DataQubit, ParamQubit};

/// Parameter grid over the data-state pair and the program/control
/// overlaps.
///
/// `a` parametrizes `ψ1 = a|0⟩ + √(1−a²)|1⟩`; `c` and `theta` parametrize
/// `ψ2 = c|0⟩ + √(1−c²)·e^{iθ}|1⟩`. Inside the open constraints the two
/// states can never be exactly orthogonal, so the value `c = 1` is reserved
/// as the orthogonal limit: it selects the orthogonal complement of `ψ1`
/// instead of a parametrized state. Complex overlaps are given as
/// magnitude/phase lists; the phase list collapses to a single entry
/// wherever the magnitude is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub a: Vec<f64>,
    pub c: Vec<f64>,
    pub theta: Vec<f64>,
    pub q_mag: Vec<f64>,
    pub q_phase: Vec<f64>,
    pub r_mag: Vec<f64>,
    pub r_phase: Vec<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            a: vec![0.3, 0.6, FRAC_1_SQRT_2, 0.9, 1.0],
            c: vec![0.3, 0.6, FRAC_1_SQRT_2, 0.9, 1.0],
            theta: vec![PI / 6.0, PI / 2.0, 5.0 * PI / 6.0],
            q_mag: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            q_phase: vec![0.0, PI / 2.0],
            r_mag: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            r_phase: vec![0.0, PI / 2.0],
        }
    }
}

/// One fully resolved grid point: the concrete data states plus the complex
/// program and control overlaps.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub index: usize,
    pub a: f64,
    pub c: f64,
    pub theta: f64,
    pub q_mag: f64,
    pub q_phase: f64,
    pub r_mag: f64,
    pub r_phase: f64,
    pub q: Complex64,
    pub r: Complex64,
    pub psi1: DataQubit,
    pub psi2: DataQubit,
}

fn is_unit(x: f64) -> bool {
    (x - 1.0).abs() < 1e-12
}

impl GridSpec {
    /// Rejects out-of-domain axis values. Empty axes are legal and simply
    /// produce an empty grid.
    fn validate(&self) -> Result<()> {
        for (name, values) in [("a", &self.a), ("c", &self.c)] {
            for &v in values {
                if !v.is_finite() || v <= 0.0 || v > 1.0 {
                    return Err(Error::validation(format!(
                        "grid axis {name} requires values in (0, 1], got {v}"
                    )));
                }
            }
        }
        for &t in &self.theta {
            if !t.is_finite() || t <= 0.0 || t >= PI {
                return Err(Error::validation(format!(
                    "grid axis theta requires values in (0, pi), got {t}"
                )));
            }
        }
        for (name, values) in [("q_mag", &self.q_mag), ("r_mag", &self.r_mag)] {
            for &v in values {
                if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                    return Err(Error::validation(format!(
                        "grid axis {name} requires values in [0, 1], got {v}"
                    )));
                }
            }
        }
        for (name, values) in [("q_phase", &self.q_phase), ("r_phase", &self.r_phase)] {
            for &v in values {
                if !v.is_finite() {
                    return Err(Error::validation(format!(
                        "grid axis {name} requires finite values"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Enumerates the grid in canonical nested order
    /// (a, c, θ, |q|, arg q, |r|, arg r).
    pub fn points(&self) -> Result<Vec<GridPoint>> {
        self.validate()?;
        let mut points = Vec::new();
        let mut index = 0;
        for &a in &self.a {
            let b = (1.0 - a * a).max(0.0).sqrt();
            let psi1 = DataQubit::from(ParamQubit::real(a, b)?);
            for &cc in &self.c {
                for &theta in &self.theta {
                    let psi2 = if is_unit(cc) {
                        psi1.orthogonal_complement()
                    } else {
                        let d = (1.0 - cc * cc).max(0.0).sqrt();
                        DataQubit::from(ParamQubit::phased(cc, d, theta)?)
                    };
                    for &qm in &self.q_mag {
                        let q_phases: &[f64] = if qm == 0.0 {
                            &self.q_phase[..self.q_phase.len().min(1)]
                        } else {
                            &self.q_phase
                        };
                        for &qp in q_phases {
                            let q = Complex64::from_polar(qm, qp);
                            for &rm in &self.r_mag {
                                let r_phases: &[f64] = if rm == 0.0 {
                                    &self.r_phase[..self.r_phase.len().min(1)]
                                } else {
                                    &self.r_phase
                                };
                                for &rp in r_phases {
                                    let r = Complex64::from_polar(rm, rp);
                                    points.push(GridPoint {
                                        index,
                                        a,
                                        c: cc,
                                        theta,
                                        q_mag: qm,
                                        q_phase: qp,
                                        r_mag: rm,
                                        r_phase: rp,
                                        q,
                                        r,
                                        psi1: psi1.clone(),
                                        psi2: psi2.clone(),
                                    });
                                    index += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(points)
    }
}
