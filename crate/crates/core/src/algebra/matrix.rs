use std::fmt;

use num_traits::{One, Zero};

use super::{MultiPoly, Rational, Vars};
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone> DenseMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
}

impl DenseMatrix<Rational> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Lifts to constant polynomials over `vars`.
    pub fn to_poly(&self, vars: &Vars) -> DenseMatrix<MultiPoly> {
        self.map(|c| MultiPoly::constant(vars, c.clone()))
    }
}

impl DenseMatrix<MultiPoly> {
    /// `rows × cols` matrix whose `(i, j)` entry is the variable
    /// `{prefix}_{i+1}_{j+1}`, together with the table of those variables
    /// in row-major order.
    pub fn generic(prefix: &str, rows: usize, cols: usize) -> Result<(Self, Vars)> {
        let names = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| format!("{prefix}_{}_{}", i + 1, j + 1)))
            .collect::<Vec<_>>();
        let vars = super::VariableTable::new(names)?;
        let m = Self::from_fn(rows, cols, |i, j| MultiPoly::var(&vars, i * cols + j));
        Ok((m, vars))
    }
}

impl<T: fmt::Display> fmt::Display for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("|")?;
            for j in 0..self.cols {
                write!(f, " {}", self.entries[i * self.cols + j])?;
            }
            f.write_str(" |\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_checks() {
        assert!(DenseMatrix::new(2, 2, vec![1, 2, 3]).is_err());
        assert!(DenseMatrix::from_rows(vec![vec![1, 2], vec![3]]).is_err());
        let m = DenseMatrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(m.transpose().row(2), &[3, 6]);
        assert_eq!(m.column(1), vec![2, 5]);
    }

    #[test]
    fn generic_matrix_names() {
        let (m, vars) = DenseMatrix::generic("a", 3, 2).unwrap();
        assert_eq!(vars.names(), ["a_1_1", "a_1_2", "a_2_1", "a_2_2", "a_3_1", "a_3_2"]);
        assert_eq!(m.get(2, 1).to_string(), "a_3_2");
    }
}
