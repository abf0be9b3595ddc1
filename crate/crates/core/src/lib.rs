//! Numerics for a qubit dressed by a bath of oscillators and entangled with a
//! second qubit.
//!
//! * [`hilbert`]: dense complex linear algebra and density matrices.
//! * [`dressed`]: qubit + N oscillators, perturbative and exact dressed levels.
//! * [`dielectric`]: transmon frequency and its shift under added permittivity.
//! * [`tomography`]: synthetic two-qubit tomography and maximum-likelihood
//!   reconstruction.
//! * [`tripartite`]: expansion of the dressed two-qubit state to three qubits.
//! * [`entanglement`]: doubled negativities and the π-tangle.
//! * [`io`]: JSON and CSV formats shared with the command-line tool.
//! * [`cli`]: the `qtangle` subcommands.
//!
//! Run `cargo run --example <name>` for a walk-through of each part.

pub mod cli;
pub mod dielectric;
pub mod dressed;
pub mod entanglement;
pub mod error;
pub mod hilbert;
pub mod io;
pub mod tomography;
pub mod tripartite;

pub use error::{Error, Result};
