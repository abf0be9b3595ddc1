//! Random states and unitaries for tests, examples and sweeps.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{ComplexMatrix, DensityMatrix, Ket};

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_vec(rows, cols, data).expect("finite gaussian samples")
}

/// Haar-random unitary via Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    let mut q = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let mut col: Vec<Complex64> = (0..n).map(|i| g[(i, k)]).collect();
        for prev in 0..k {
            let proj: Complex64 = (0..n).map(|i| q[(i, prev)].conj() * col[i]).sum();
            for (i, c) in col.iter_mut().enumerate() {
                *c -= proj * q[(i, prev)];
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (i, c) in col.iter().enumerate() {
            q[(i, k)] = c / norm;
        }
    }
    q
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    ginibre(rng, n, n).hermitian_part()
}

pub fn random_ket(rng: &mut impl Rng, dim: usize) -> Ket {
    Ket::normalized((0..dim).map(|_| gaussian(rng)).collect()).expect("non-zero gaussian vector")
}

/// Hilbert-Schmidt random mixed state `GG†/Tr(GG†)`; `rank` columns in `G`.
pub fn random_density(rng: &mut impl Rng, dims: &[usize], rank: usize) -> DensityMatrix {
    let n: usize = dims.iter().product();
    let g = ginibre(rng, n, rank.max(1));
    let gg = &g * &g.adjoint();
    DensityMatrix::new_tidy(dims.to_vec(), gg).expect("Ginibre product is PSD")
}

pub fn random_pure(rng: &mut impl Rng, dims: &[usize]) -> DensityMatrix {
    let n: usize = dims.iter().product();
    DensityMatrix::from_ket(dims.to_vec(), &random_ket(rng, n)).expect("normalized ket")
}
