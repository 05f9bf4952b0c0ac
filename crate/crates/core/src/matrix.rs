//! Small dense integer matrices: fraction-free determinants and Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// The matrix with row `skip_row` and column `skip_col` removed.
    pub fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j).clone());
            }
        }
        IntMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Determinant by Bareiss fraction-free elimination; every intermediate
    /// division is exact.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.to_rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                negate = !negate;
            }
            let (top, rest) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in rest.iter_mut() {
                for j in k + 1..n {
                    let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Row-style Hermite normal form: rows in echelon form with positive
    /// pivots, entries above each pivot reduced into `[0, pivot)`, zero rows
    /// dropped. Returns the nonzero rows and their pivot columns.
    pub fn hermite_normal_form(&self) -> (IntMatrix, Vec<usize>) {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == m.len() {
                break;
            }
            while let Some(best) = (r..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))
            {
                m.swap(r, best);
                let (top, rest) = m.split_at_mut(r + 1);
                let pivot_row = &top[r];
                let mut done = true;
                for row in rest.iter_mut() {
                    if row[col].is_zero() {
                        continue;
                    }
                    let q = row[col].div_floor(&pivot_row[col]);
                    axpy(row, &q, pivot_row);
                    done &= row[col].is_zero();
                }
                if done {
                    break;
                }
            }
            if m.get(r).is_none_or(|row| row[col].is_zero()) {
                continue;
            }
            if m[r][col].is_negative() {
                for v in m[r].iter_mut() {
                    *v = -std::mem::take(v);
                }
            }
            let (top, rest) = m.split_at_mut(r);
            let pivot_row = &rest[0];
            for row in top.iter_mut() {
                let q = row[col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    axpy(row, &q, pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
        m.truncate(r);
        let hnf = if m.is_empty() {
            IntMatrix::zeros(0, self.cols)
        } else {
            IntMatrix::from_rows(m)
        };
        (hnf, pivots)
    }
}

/// `row -= q * pivot`
fn axpy(row: &mut [BigInt], q: &BigInt, pivot: &[BigInt]) {
    for (a, b) in row.iter_mut().zip(pivot) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}
