use super::{ComplexMatrix, DensityMatrix};
use crate::error::{Error, Result};

/// Splits a flat index into per-subsystem digits (subsystem 0 most significant).
fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (k, &d) in dims.iter().enumerate().rev() {
        out[k] = index % d;
        index /= d;
    }
    out
}

fn flatten(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Transposes the indices of one subsystem.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.dims(), &[subsystem])
}

/// Partial transpose over every subsystem in `subsystems`.
pub fn partial_transpose_many(rho: &DensityMatrix, subsystems: &[usize]) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.matrix(), rho.dims(), subsystems)
}

pub fn partial_transpose_matrix(
    m: &ComplexMatrix,
    dims: &[usize],
    subsystems: &[usize],
) -> Result<ComplexMatrix> {
    for &s in subsystems {
        if s >= dims.len() {
            return Err(Error::SubsystemOutOfRange {
                index: s,
                count: dims.len(),
            });
        }
    }
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let di = digits(i, dims);
        for j in 0..n {
            let mut row = di.clone();
            let mut col = digits(j, dims);
            for &s in subsystems {
                std::mem::swap(&mut row[s], &mut col[s]);
            }
            out[(flatten(&row, dims), flatten(&col, dims))] = m[(i, j)];
        }
    }
    Ok(out)
}

/// Reduced state on the subsystems in `keep`, in ascending subsystem order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.dims();
    if keep.is_empty() {
        return Err(Error::InvalidSelection("keep set is empty".into()));
    }
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::SubsystemOutOfRange {
            index: bad,
            count: dims.len(),
        });
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let n_keep: usize = kept_dims.iter().product();
    let n_trace: usize = traced_dims.iter().product();

    let compose = |kept: &[usize], tr: &[usize]| -> usize {
        let mut full = vec![0; dims.len()];
        for (slot, &k) in keep.iter().enumerate() {
            full[k] = kept[slot];
        }
        for (slot, &k) in traced.iter().enumerate() {
            full[k] = tr[slot];
        }
        flatten(&full, dims)
    };

    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(n_keep, n_keep);
    for a in 0..n_keep {
        let da = digits(a, &kept_dims);
        for b in 0..n_keep {
            let db = digits(b, &kept_dims);
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for t in 0..n_trace {
                let dt = digits(t, &traced_dims);
                acc += m[(compose(&da, &dt), compose(&db, &dt))];
            }
            out[(a, b)] = acc;
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(kept_dims, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{eigh, Ket};

    fn bell() -> DensityMatrix {
        let k = Ket::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        DensityMatrix::from_ket(vec![2, 2], &k).unwrap()
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let pt = partial_transpose(&bell(), 0).unwrap();
        let vals = eigh(&pt).unwrap().values;
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-14, "{vals:?}");
        }
    }

    #[test]
    fn partial_transpose_is_involution() {
        let rho = bell();
        let once = partial_transpose(&rho, 1).unwrap();
        let twice = partial_transpose_matrix(&once, &[2, 2], &[1]).unwrap();
        assert_eq!(&twice, rho.matrix());
    }

    #[test]
    fn out_of_range_subsystem() {
        assert!(matches!(
            partial_transpose(&bell(), 2),
            Err(Error::SubsystemOutOfRange { index: 2, count: 2 })
        ));
        assert!(partial_trace(&bell(), &[5]).is_err());
        assert!(matches!(
            partial_trace(&bell(), &[]),
            Err(Error::InvalidSelection(_))
        ));
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let r = partial_trace(&bell(), &[0]).unwrap();
        assert!(
            r.matrix()
                .max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5))
                < 1e-15
        );
        assert_eq!(r.dims(), &[2]);
    }

    #[test]
    fn product_state_factorizes() {
        let a = DensityMatrix::new(
            vec![2],
            ComplexMatrix::from_real_rows(&[&[0.7, 0.2], &[0.2, 0.3]]).unwrap(),
        )
        .unwrap();
        let b = DensityMatrix::new(vec![3], ComplexMatrix::from_diag(&[0.5, 0.3, 0.2])).unwrap();
        let ab = a.tensor(&b);
        let ra = partial_trace(&ab, &[0]).unwrap();
        let rb = partial_trace(&ab, &[1]).unwrap();
        assert!(ra.matrix().max_abs_diff(a.matrix()) < 1e-12);
        assert!(rb.matrix().max_abs_diff(b.matrix()) < 1e-12);
        // ρ_A^T ⊗ ρ_B
        let pt = partial_transpose(&ab, 0).unwrap();
        assert!(pt.max_abs_diff(&a.matrix().transpose().kron(b.matrix())) < 1e-15);
        assert!(eigh(&pt).unwrap().values.last().unwrap() > &-1e-14);
    }

    #[test]
    fn middle_subsystem_trace() {
        // |0⟩|1⟩|0⟩ keep {0,2} -> |00⟩
        let k = Ket::basis(2, 0)
            .kron(&Ket::basis(2, 1))
            .kron(&Ket::basis(2, 0));
        let rho = DensityMatrix::from_ket(vec![2, 2, 2], &k).unwrap();
        let r = partial_trace(&rho, &[2, 0]).unwrap();
        assert_eq!(r.dims(), &[2, 2]);
        assert!((r.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
    }
}
