//! Baseline discrete Fréchet machinery: free-space matrix, monotone 1-path
//! decision and the exact value by dynamic programming.
//!
//! These routines are the reference semantics for everything else in the
//! crate and double as the inner oracle of the brute-force checks.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::Curve;
use crate::scalar::{Scalar, Tolerance};

/// Dense 0/1 matrix; row `i` belongs to `π_i`, column `j` to `σ_j`.
///
/// Accessors are 0-based; the grid-reachability layer addresses cells through
/// 1-based [`GridPos`](crate::gridreach::GridPos) instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeSpaceMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl FreeSpaceMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FreeSpaceMatrix {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        FreeSpaceMatrix {
            rows,
            cols,
            bits: vec![true; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                bits.push(f(i, j));
            }
        }
        FreeSpaceMatrix { rows, cols, bits }
    }

    /// Builds a matrix from rows of `'0'`/`'1'` characters.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|s| s.as_ref().len()).unwrap_or(0);
        let mut bits = Vec::with_capacity(r * c);
        for (line, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != c {
                return Err(Error::Parse {
                    line: line + 1,
                    msg: format!("expected {c} cells, found {}", row.len()),
                });
            }
            for ch in row.chars() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    other => {
                        return Err(Error::Parse {
                            line: line + 1,
                            msg: format!("unexpected character {other:?}"),
                        })
                    }
                }
            }
        }
        Ok(FreeSpaceMatrix {
            rows: r,
            cols: c,
            bits,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.bits[i * self.cols + j] = b;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Pointwise `self <= other`.
    pub fn dominated_by(&self, other: &FreeSpaceMatrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for FreeSpaceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FreeSpaceMatrix {}x{}", self.rows, self.cols)?;
        for row in self.row_strings() {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Bit `(i, j)` is set iff `|π_i − σ_j| <= δ` under the shared tolerance.
pub fn free_space_matrix<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    delta: T,
    tol: Tolerance<T>,
) -> Result<FreeSpaceMatrix> {
    if delta < T::zero() || delta.is_nan() {
        return Err(Error::NegativeDelta(delta.to_string()));
    }
    let (p, s) = (pi.points(), sigma.points());
    Ok(FreeSpaceMatrix::from_fn(p.len(), s.len(), |i, j| {
        tol.within(p[i].sq_dist(&s[j]), delta)
    }))
}

/// Is there a monotone 1-path from the top-left to the bottom-right cell?
pub fn monotone_path_exists(m: &FreeSpaceMatrix) -> bool {
    if m.rows == 0 || m.cols == 0 {
        return false;
    }
    let mut prev = vec![false; m.cols];
    let mut cur = vec![false; m.cols];
    for i in 0..m.rows {
        for j in 0..m.cols {
            cur[j] = m.get(i, j)
                && ((i == 0 && j == 0)
                    || (i > 0 && prev[j])
                    || (j > 0 && cur[j - 1])
                    || (i > 0 && j > 0 && prev[j - 1]));
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m.cols - 1]
}

/// Exact discrete Fréchet distance via the min-max recurrence.
pub fn frechet_value<T: Scalar>(pi: &Curve<T>, sigma: &Curve<T>) -> T {
    let (p, s) = (pi.points(), sigma.points());
    let m = s.len();
    let mut prev = vec![T::infinity(); m];
    let mut cur = vec![T::infinity(); m];
    for (i, pp) in p.iter().enumerate() {
        for j in 0..m {
            let d = pp.sq_dist(&s[j]).sqrt();
            let best = if i == 0 && j == 0 {
                T::neg_infinity()
            } else {
                let mut b = T::infinity();
                if i > 0 {
                    b = b.min(prev[j]);
                }
                if j > 0 {
                    b = b.min(cur[j - 1]);
                }
                if i > 0 && j > 0 {
                    b = b.min(prev[j - 1]);
                }
                b
            };
            cur[j] = d.max(best);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}

/// Decision `δ_F(π, σ) <= δ` straight from the definition.
pub fn frechet_decide<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    delta: T,
    tol: Tolerance<T>,
) -> bool {
    free_space_matrix(pi, sigma, delta, tol)
        .map(|m| monotone_path_exists(&m))
        .unwrap_or(false)
}
