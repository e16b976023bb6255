use crate::error::{Error, Result};

/// Real symmetric matrix, stored densely (row-major, both triangles).
///
/// `bandwidth` records the structural band when the builder knows it
/// (e.g. 2 for a parity block of the Hermite Hamiltonian); `None` means
/// dense.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
    bandwidth: Option<usize>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymmetricMatrix {
            dim,
            data: vec![0.0; dim * dim],
            bandwidth: None,
        }
    }

    pub fn banded(dim: usize, bandwidth: usize) -> Self {
        SymmetricMatrix {
            bandwidth: Some(bandwidth),
            ..SymmetricMatrix::zeros(dim)
        }
    }

    /// Builds from a function of `(i, j)` evaluated on the lower triangle.
    pub fn from_lower_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymmetricMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// From a full row-major array; rejects asymmetric input.
    pub fn from_dense(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::Argument(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                data.len()
            )));
        }
        for i in 0..dim {
            for j in 0..i {
                let (u, l) = (data[j * dim + i], data[i * dim + j]);
                if u != l {
                    return Err(Error::Argument(format!(
                        "matrix not symmetric at ({i}, {j}): {l} vs {u}"
                    )));
                }
            }
        }
        Ok(SymmetricMatrix {
            dim,
            data,
            bandwidth: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bandwidth(&self) -> Option<usize> {
        self.bandwidth
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Max absolute row sum; bounds the spectral radius.
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// True when the matrix commutes with index reversal `i ↦ n−1−i`.
    pub fn is_mirror_symmetric(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..=i).all(|j| (self.get(i, j) - self.get(n - 1 - i, n - 1 - j)).abs() <= tol)
        })
    }
}
