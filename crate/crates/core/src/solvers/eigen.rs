use faer::dyn_stack::{GlobalPodBuffer, PodStack};
use faer::linalg::evd::{compute_hermitian_evd, compute_hermitian_evd_req, ComputeVectors};
use faer::linalg::matmul::matmul;
use faer::{Col, Mat, Parallelism};

use super::matrix::SymmetricMatrix;
use crate::error::{Error, Result};

/// Lowest eigenpairs of a symmetric matrix, ascending.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector of `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    /// `‖M v − e v‖₂` per pair.
    pub residuals: Vec<f64>,
}

impl EigenPairs {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

fn to_faer(m: &SymmetricMatrix) -> Mat<f64> {
    Mat::from_fn(m.dim(), m.dim(), |i, j| m.get(i, j))
}

/// Runs the dense Householder + tridiagonal QR eigensolver single-threaded,
/// so results are reproducible bit for bit.
fn dense_evd(m: &SymmetricMatrix, vectors: bool) -> Result<(Vec<f64>, Option<Mat<f64>>)> {
    let n = m.dim();
    let a = to_faer(m);
    let mut s = Col::<f64>::zeros(n);
    let mut u = vectors.then(|| Mat::<f64>::zeros(n, n));
    let req = compute_hermitian_evd_req::<f64>(
        n,
        if vectors {
            ComputeVectors::Yes
        } else {
            ComputeVectors::No
        },
        Parallelism::None,
        Default::default(),
    )
    .map_err(|_| Error::numeric("eigen_spectrum", format!("workspace overflow for n = {n}")))?;
    let mut mem = GlobalPodBuffer::new(req);
    compute_hermitian_evd(
        a.as_ref(),
        s.as_mut(),
        u.as_mut().map(|u| u.as_mut()),
        Parallelism::None,
        PodStack::new(&mut mem),
        Default::default(),
    );
    let values: Vec<f64> = (0..n).map(|i| s.read(i)).collect();
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::numeric(
            "eigen_spectrum",
            format!("non-finite eigenvalue {bad} for a {n}x{n} matrix"),
        ));
    }
    Ok((values, u))
}

fn ascending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    idx
}

/// All eigenvalues, ascending.
pub fn eigenvalues(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    if m.dim() == 0 {
        return Ok(Vec::new());
    }
    let (mut values, _) = dense_evd(m, false)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// The lowest `count` eigenpairs with residuals.
pub fn eigen_spectrum(m: &SymmetricMatrix, count: usize) -> Result<EigenPairs> {
    let n = m.dim();
    if count == 0 || count > n {
        return Err(Error::Argument(format!(
            "eigen_spectrum: count {count} outside 1..={n}"
        )));
    }
    let (values, u) = dense_evd(m, true)?;
    let u = u.expect("eigenvectors requested");
    let order = ascending_order(&values);
    let keep = &order[..count];

    let mut v = Mat::<f64>::zeros(n, count);
    for (c, &k) in keep.iter().enumerate() {
        for i in 0..n {
            v.write(i, c, u.read(i, k));
        }
    }
    let a = to_faer(m);
    let mut av = Mat::<f64>::zeros(n, count);
    matmul(av.as_mut(), a.as_ref(), v.as_ref(), None, 1.0, Parallelism::None);

    let mut out = EigenPairs {
        values: Vec::with_capacity(count),
        vectors: Vec::with_capacity(count),
        residuals: Vec::with_capacity(count),
    };
    for (c, &k) in keep.iter().enumerate() {
        let e = values[k];
        let vec: Vec<f64> = (0..n).map(|i| v.read(i, c)).collect();
        let res = (0..n)
            .map(|i| {
                let r = av.read(i, c) - e * vec[i];
                r * r
            })
            .sum::<f64>()
            .sqrt();
        out.values.push(e);
        out.vectors.push(vec);
        out.residuals.push(res);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_swap() {
        let m = SymmetricMatrix::from_dense(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let p = eigen_spectrum(&m, 2).unwrap();
        assert!((p.values[0] + 1.0).abs() < 1e-15);
        assert!((p.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal_is_sorted() {
        let d = [3.0, -1.0, 7.5, 0.25, -4.0];
        let m = SymmetricMatrix::from_lower_fn(5, |i, j| if i == j { d[i] } else { 0.0 });
        let mut sorted = d.to_vec();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(eigenvalues(&m).unwrap(), sorted);
        let p = eigen_spectrum(&m, 3).unwrap();
        assert_eq!(p.values, sorted[..3].to_vec());
    }

    #[test]
    fn residual_and_orthonormality_bounds() {
        let n = 120;
        let m = SymmetricMatrix::from_lower_fn(n, |i, j| {
            if i == j {
                (i as f64).sin() * 10.0
            } else {
                1.0 / (1.0 + (i - j) as f64).powi(2)
            }
        });
        let p = eigen_spectrum(&m, n).unwrap();
        let fro = m.frobenius_norm();
        for (k, v) in p.vectors.iter().enumerate() {
            let norm2: f64 = v.iter().map(|x| x * x).sum();
            assert!((norm2 - 1.0).abs() <= 1e-12);
            assert!(p.residuals[k] <= 1e-9 * fro);
            if k > 0 {
                let dot: f64 = v.iter().zip(&p.vectors[k - 1]).map(|(a, b)| a * b).sum();
                assert!(dot.abs() < 1e-12);
            }
        }
        assert!(p.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn count_bounds() {
        let m = SymmetricMatrix::zeros(3);
        assert!(eigen_spectrum(&m, 0).is_err());
        assert!(eigen_spectrum(&m, 4).is_err());
    }
}
