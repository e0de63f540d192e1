//! Dense LU with partial pivoting.

use crate::error::{Error, Result};

use super::PIVOT_RTOL;

/// Square row-major matrix.
#[derive(Debug, Clone)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "row-major data must have n*n entries");
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }
}

/// Dense linear system `A x = b`.
#[derive(Debug, Clone)]
pub struct DenseSystem {
    pub matrix: SquareMatrix,
    pub rhs: Vec<f64>,
}

impl DenseSystem {
    pub fn new(matrix: SquareMatrix, rhs: Vec<f64>) -> Self {
        assert_eq!(matrix.dim(), rhs.len(), "rhs length must match dimension");
        Self { matrix, rhs }
    }
}

/// Solve a dense system by LU with partial pivoting.
///
/// A pivot whose magnitude falls below `1e-14` times the largest entry of the
/// original matrix is treated as singular.
pub fn solve_dense(system: &DenseSystem) -> Result<Vec<f64>> {
    let n = system.matrix.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = system.matrix.clone();
    let mut x = system.rhs.clone();

    let max_entry = a.data.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if max_entry == 0.0 {
        return Err(Error::SingularMatrix {
            pivot: 0.0,
            threshold: 0.0,
        });
    }
    let threshold = PIVOT_RTOL * max_entry;

    for col in 0..n {
        // partial pivot
        let mut piv = col;
        let mut piv_abs = a.get(col, col).abs();
        for r in col + 1..n {
            let v = a.get(r, col).abs();
            if v > piv_abs {
                piv = r;
                piv_abs = v;
            }
        }
        if piv_abs < threshold {
            return Err(Error::SingularMatrix {
                pivot: piv_abs,
                threshold,
            });
        }
        if piv != col {
            for j in 0..n {
                let tmp = a.get(col, j);
                a.set(col, j, a.get(piv, j));
                a.set(piv, j, tmp);
            }
            x.swap(col, piv);
        }
        let d = a.get(col, col);
        for r in col + 1..n {
            let mult = a.get(r, col) / d;
            if mult == 0.0 {
                continue;
            }
            for j in col + 1..n {
                let v = a.get(r, j) - mult * a.get(col, j);
                a.set(r, j, v);
            }
            x[r] -= mult * x[col];
        }
    }

    // back substitution
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s -= a.get(i, j) * x[j];
        }
        x[i] = s / a.get(i, i);
    }
    Ok(x)
}
