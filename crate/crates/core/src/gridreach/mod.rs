//! Offline-friendly dynamic reachability on grid graphs.
//!
//! The square grid is split recursively into canonical blocks (columns on
//! even levels, rows on odd levels, children sharing their middle line).
//! Every block stores a succinct summary of which outputs each input can
//! reach; summaries merge bottom-up, are refreshed only where a batch of
//! changes touched them, and answer terminal-hopping reachability queries.
//!
//! Positions are 1-based: `x` indexes rows (the `π` curve), `y` columns
//! (the `σ` curve). A step goes to `(x+1, y)`, `(x, y+1)` or `(x+1, y+1)`.
//! `p ⇝ q` means a monotone walk from `p` to `q` inside the block whose
//! strictly interior positions are free; the endpoints themselves may be
//! blocked.

mod block;
mod ds;
mod info;

pub use block::{build_block_tree, Block, BlockTree};
pub use ds::{construct_ds, ReachDS};
pub use info::{base_block_info, merge_block_info, BlockInfo, EMPTY_SPAN};

use crate::error::{Error, Result};
use crate::frechet::FreeSpaceMatrix;

/// A grid position, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPos {
    pub x: usize,
    pub y: usize,
}

impl GridPos {
    pub const fn new(x: usize, y: usize) -> Self {
        GridPos { x, y }
    }
}

impl From<(usize, usize)> for GridPos {
    fn from((x, y): (usize, usize)) -> Self {
        GridPos { x, y }
    }
}

impl FreeSpaceMatrix {
    /// Bit at a 1-based position.
    #[inline]
    pub fn bit(&self, p: GridPos) -> bool {
        self.get(p.x - 1, p.y - 1)
    }

    #[inline]
    pub fn set_bit(&mut self, p: GridPos, b: bool) {
        self.set(p.x - 1, p.y - 1, b)
    }

    pub fn check_pos(&self, p: GridPos) -> Result<()> {
        if p.x == 0 || p.y == 0 || p.x > self.rows() || p.y > self.cols() {
            return Err(Error::OutOfBounds {
                x: p.x,
                y: p.y,
                n: self.rows(),
            });
        }
        Ok(())
    }
}

/// Index keys of a position for side length `n`.
///
/// `ind` enumerates positions by anti-diagonal offset and is injective;
/// `L = x + y`, `L_rev = -L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Keys {
    pub n: usize,
}

impl Keys {
    pub fn new(n: usize) -> Self {
        Keys { n }
    }

    #[inline]
    pub fn ind(&self, p: GridPos) -> i64 {
        (p.y as i64 - p.x as i64) * (2 * self.n as i64) + p.x as i64
    }

    #[inline]
    pub fn l(&self, p: GridPos) -> i64 {
        (p.x + p.y) as i64
    }

    #[inline]
    pub fn l_rev(&self, p: GridPos) -> i64 {
        -((p.x + p.y) as i64)
    }

    /// Inverse of [`Keys::ind`].
    pub fn from_ind(&self, ind: i64) -> GridPos {
        let m = 2 * self.n as i64;
        let x = ind.rem_euclid(m);
        // x lies in 1..=n < m, so the residue pins it down
        let d = (ind - x) / m;
        GridPos::new(x as usize, (d + x) as usize)
    }
}

/// `(ind(p), L(p), L_rev(p))`.
pub fn position_keys(p: GridPos, n: usize) -> (i64, i64, i64) {
    let k = Keys::new(n);
    (k.ind(p), k.l(p), k.l_rev(p))
}

/// Is `n = 2^k + 1` for some `k >= 0`?
pub fn is_canonical_side(n: usize) -> bool {
    n >= 2 && (n - 1).is_power_of_two()
}

/// Smallest side `2^k + 1 >= max(n, 3)`.
pub fn padded_side(n: usize) -> usize {
    (n.max(3) - 1).next_power_of_two() + 1
}

/// Embeds `m` into the top-left corner of a canonical square.
///
/// Outside the original square the filler is 1 exactly on the diagonal, so
/// `(n, n)` connects to the new corner iff it did before.
pub fn pad_matrix(m: &FreeSpaceMatrix) -> Result<FreeSpaceMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Err(Error::Precondition("empty matrix".into()));
    }
    let side = padded_side(n);
    Ok(FreeSpaceMatrix::from_fn(side, side, |i, j| {
        if i < n && j < n {
            m.get(i, j)
        } else {
            i == j
        }
    }))
}
