//! Dense complex linear algebra: Kronecker products, partial transpose and
//! trace, Hermitian eigensolver, trace norm and PSD square root.

mod eigen;
mod matrix;
mod ops;
pub mod random;
mod state;

pub use eigen::{
    eigh, matrix_sqrt_psd, trace_norm, Eigh, CLIP_TOL, HERMITIAN_TOL, NEGATIVE_EIGEN_TOL,
};
pub use matrix::{tensor, ComplexMatrix};
pub use ops::{partial_trace, partial_transpose, partial_transpose_many, partial_transpose_matrix};
pub use state::{DensityMatrix, Ket};
