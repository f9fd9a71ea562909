//! Dense complex linear algebra over small explicit tensor-product spaces:
//! composition, inner products, partial traces, 2×2 spectra, and distances.
//!
//! All values are immutable once constructed and every operation is a pure
//! function, so everything here is safe to use from multiple threads.

mod density;
mod eigen;
mod layout;
mod state;

pub use num_complex::Complex64;

pub use density::{binary_entropy, DensityMatrix, EigenPair, DENSITY_TOL, PSD_TOL};
pub use eigen::hermitian_eigenvalues;
pub use layout::{HilbertLayout, MAX_TOTAL_DIM};
pub use state::{RawVector, StateVector, NORM_TOL};
