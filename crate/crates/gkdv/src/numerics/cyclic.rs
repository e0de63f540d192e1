//! Cyclic banded solver: banded LU with partial pivoting plus a low-rank
//! Woodbury correction for the periodic corner blocks.
//!
//! A cyclic band matrix `A` splits as `B + sum_r e_r v_r^T`, where `B` keeps
//! the in-band entries and each `v_r` holds the wrapped entries of boundary
//! row `r` (at most `2k` such rows). `B` is factored once with partial
//! pivoting (upper bandwidth grows to `2k`), and the corner coupling is
//! restored through the dense `p x p` capacitance system with `p <= 2k`.
//! Total cost is `O(n k^2)` instead of the `O(n^3)` of a dense solve.

use crate::error::{Error, Result};

use super::dense::{solve_dense, DenseSystem, SquareMatrix};
use super::PIVOT_RTOL;

/// Periodic banded system `A x = rhs` with half-bandwidth `k`.
///
/// `diagonals[d][i]` multiplies `x[(i + d - k) mod n]` in row `i`, for
/// `d = 0..=2k`; entries that wrap around the ends form the periodic corner
/// blocks.
#[derive(Debug, Clone)]
pub struct CyclicBandedSystem {
    pub n: usize,
    pub half_bandwidth: usize,
    pub diagonals: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
}

impl CyclicBandedSystem {
    pub fn new(n: usize, half_bandwidth: usize, diagonals: Vec<Vec<f64>>, rhs: Vec<f64>) -> Self {
        let k = half_bandwidth;
        assert!(n > 2 * k, "need n > 2k (n = {n}, k = {k})");
        assert_eq!(diagonals.len(), 2 * k + 1, "expected 2k+1 diagonals");
        for diag in &diagonals {
            assert_eq!(diag.len(), n, "each diagonal must have n entries");
        }
        assert_eq!(rhs.len(), n);
        Self {
            n,
            half_bandwidth,
            diagonals,
            rhs,
        }
    }

    /// Densified equivalent, mostly useful for oracle comparisons.
    pub fn to_dense(&self) -> DenseSystem {
        let (n, k) = (self.n, self.half_bandwidth);
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            for d in 0..=2 * k {
                let j = (i + d + n - k) % n;
                m.set(i, j, self.diagonals[d][i]);
            }
        }
        DenseSystem::new(m, self.rhs.clone())
    }
}

/// Banded LU factors of the non-periodic core, row-pivoted.
///
/// Row `i` occupies columns `i-k ..= i+2k`; slot `s` of row `i` is column
/// `i + s - k`. Multipliers live below the diagonal in the same storage.
struct BandedLu {
    n: usize,
    k: usize,
    w: Vec<f64>,
    perm: Vec<usize>,
}

impl BandedLu {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.w[i * (3 * self.k + 1) + (j + self.k - i)]
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let (n, k) = (self.n, self.k);
        let mut x = b.to_vec();
        for c in 0..n {
            x.swap(c, self.perm[c]);
            let xc = x[c];
            if xc != 0.0 {
                for r in c + 1..=(c + k).min(n - 1) {
                    x[r] -= self.at(r, c) * xc;
                }
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..=(i + 2 * k).min(n - 1) {
                s -= self.at(i, j) * x[j];
            }
            x[i] = s / self.at(i, i);
        }
        x
    }
}

fn factor_banded(
    n: usize,
    k: usize,
    band: impl Fn(usize, usize) -> f64,
    threshold: f64,
) -> Result<BandedLu> {
    let width = 3 * k + 1;
    let mut w = vec![0.0; n * width];
    for i in 0..n {
        for d in 0..=2 * k {
            let j = i as isize + d as isize - k as isize;
            if j >= 0 && (j as usize) < n {
                w[i * width + d] = band(i, d);
            }
        }
    }
    let mut perm = vec![0usize; n];
    let slot = |i: usize, j: usize| i * width + (j + k - i);

    for c in 0..n {
        let rmax = (c + k).min(n - 1);
        let mut piv = c;
        let mut piv_abs = w[slot(c, c)].abs();
        for r in c + 1..=rmax {
            let v = w[slot(r, c)].abs();
            if v > piv_abs {
                piv = r;
                piv_abs = v;
            }
        }
        if piv_abs < threshold || piv_abs == 0.0 {
            return Err(Error::SingularMatrix {
                pivot: piv_abs,
                threshold,
            });
        }
        perm[c] = piv;
        let jmax = (c + 2 * k).min(n - 1);
        if piv != c {
            for j in c..=jmax {
                w.swap(slot(c, j), slot(piv, j));
            }
        }
        let d = w[slot(c, c)];
        for r in c + 1..=rmax {
            let mult = w[slot(r, c)] / d;
            w[slot(r, c)] = mult;
            if mult != 0.0 {
                for j in c + 1..=jmax {
                    w[slot(r, j)] -= mult * w[slot(c, j)];
                }
            }
        }
    }
    Ok(BandedLu { n, k, w, perm })
}

/// Solve a cyclic banded system.
///
/// Matches `solve_dense` on the densified matrix to solver precision; cost is
/// `O(n k^2)`. Returns a singular-matrix error if either the banded core or
/// the periodic capacitance system is singular to working precision.
pub fn solve_cyclic_banded(system: &CyclicBandedSystem) -> Result<Vec<f64>> {
    let (n, k) = (system.n, system.half_bandwidth);

    let max_entry = system
        .diagonals
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    if max_entry == 0.0 {
        return Err(Error::SingularMatrix {
            pivot: 0.0,
            threshold: 0.0,
        });
    }
    let threshold = PIVOT_RTOL * max_entry;

    let lu = factor_banded(n, k, |i, d| system.diagonals[d][i], threshold)?;

    // Wrapped entries of the boundary rows, sparse per row.
    let mut wrap_rows: Vec<(usize, Vec<(usize, f64)>)> = Vec::new();
    for i in (0..k).chain(n - k..n) {
        let mut entries = Vec::new();
        for d in 0..=2 * k {
            let j = i as isize + d as isize - k as isize;
            if j < 0 || j as usize >= n {
                let v = system.diagonals[d][i];
                if v != 0.0 {
                    entries.push(((i + d + n - k) % n, v));
                }
            }
        }
        if !entries.is_empty() {
            wrap_rows.push((i, entries));
        }
    }

    let x0 = lu.solve(&system.rhs);
    if wrap_rows.is_empty() {
        return Ok(x0);
    }

    // Woodbury: x = x0 - Y (I + V^T Y)^{-1} V^T x0, with Y = B^{-1} [e_r].
    let p = wrap_rows.len();
    let ys: Vec<Vec<f64>> = wrap_rows
        .iter()
        .map(|(r, _)| {
            let mut e = vec![0.0; n];
            e[*r] = 1.0;
            lu.solve(&e)
        })
        .collect();

    let dot = |entries: &[(usize, f64)], v: &[f64]| -> f64 {
        entries.iter().map(|&(j, a)| a * v[j]).sum()
    };

    let mut cap = SquareMatrix::zeros(p);
    for (s, (_, entries)) in wrap_rows.iter().enumerate() {
        for (t, y) in ys.iter().enumerate() {
            let mut v = dot(entries, y);
            if s == t {
                v += 1.0;
            }
            cap.set(s, t, v);
        }
    }
    let rhs_small: Vec<f64> = wrap_rows
        .iter()
        .map(|(_, entries)| dot(entries, &x0))
        .collect();
    let z = solve_dense(&DenseSystem::new(cap, rhs_small))?;

    let mut x = x0;
    for (zi, y) in z.iter().zip(&ys) {
        for (xi, yi) in x.iter_mut().zip(y) {
            *xi -= zi * yi;
        }
    }
    Ok(x)
}
