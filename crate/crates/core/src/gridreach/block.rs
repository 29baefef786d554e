use super::{is_canonical_side, GridPos};
use crate::error::{Error, Result};

/// Axis-aligned block `[x0, x1] × [y0, y1]` of the canonical decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub id: usize,
    pub level: usize,
    pub x0: usize,
    pub x1: usize,
    pub y0: usize,
    pub y1: usize,
}

impl Block {
    pub fn width(&self) -> usize {
        self.y1 - self.y0 + 1
    }

    pub fn height(&self) -> usize {
        self.x1 - self.x0 + 1
    }

    #[inline]
    pub fn contains(&self, p: GridPos) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }

    pub fn is_leaf(&self) -> bool {
        self.height() <= 2 && self.width() <= 2
    }

    /// Size of `B⁻` (and of `B⁺`).
    pub fn boundary_len(&self) -> usize {
        self.width() + self.height() - 1
    }

    /// Slot of `p` in `B⁻ = {x0}×J ∪ I×{y0}`: the top row left to right,
    /// then the left column below it.
    #[inline]
    pub fn minus_index(&self, p: GridPos) -> Option<usize> {
        if !self.contains(p) {
            None
        } else if p.x == self.x0 {
            Some(p.y - self.y0)
        } else if p.y == self.y0 {
            Some(self.width() + (p.x - self.x0 - 1))
        } else {
            None
        }
    }

    /// Slot of `q` in `B⁺ = {x1}×J ∪ I×{y1}`: the bottom row left to right,
    /// then the right column above it.
    #[inline]
    pub fn plus_index(&self, q: GridPos) -> Option<usize> {
        if !self.contains(q) {
            None
        } else if q.x == self.x1 {
            Some(q.y - self.y0)
        } else if q.y == self.y1 {
            Some(self.width() + (q.x - self.x0))
        } else {
            None
        }
    }

    pub fn minus_positions(&self) -> Vec<GridPos> {
        let mut v: Vec<GridPos> = (self.y0..=self.y1)
            .map(|y| GridPos::new(self.x0, y))
            .collect();
        v.extend((self.x0 + 1..=self.x1).map(|x| GridPos::new(x, self.y0)));
        v
    }

    pub fn plus_positions(&self) -> Vec<GridPos> {
        let mut v: Vec<GridPos> = (self.y0..=self.y1)
            .map(|y| GridPos::new(self.x1, y))
            .collect();
        v.extend((self.x0..self.x1).map(|x| GridPos::new(x, self.y1)));
        v
    }

    pub fn positions(&self) -> impl Iterator<Item = GridPos> + '_ {
        (self.x0..=self.x1).flat_map(move |x| (self.y0..=self.y1).map(move |y| GridPos::new(x, y)))
    }

    /// Even levels split the columns, odd levels the rows.
    pub fn splits_columns(&self) -> bool {
        self.level.is_multiple_of(2)
    }

    /// The line shared by both children.
    pub fn mid_coord(&self) -> usize {
        if self.splits_columns() {
            (self.y0 + self.y1) / 2
        } else {
            (self.x0 + self.x1) / 2
        }
    }

    pub fn on_mid(&self, p: GridPos) -> bool {
        self.contains(p)
            && if self.splits_columns() {
                p.y == self.mid_coord()
            } else {
                p.x == self.mid_coord()
            }
    }

    /// `B^mid`, ordered by increasing index (bottom to top for a column,
    /// left to right for a row).
    pub fn mid_positions(&self) -> Vec<GridPos> {
        let m = self.mid_coord();
        if self.splits_columns() {
            (self.x0..=self.x1)
                .rev()
                .map(|x| GridPos::new(x, m))
                .collect()
        } else {
            (self.y0..=self.y1).map(|y| GridPos::new(m, y)).collect()
        }
    }

    /// Child containing the smaller side of the split.
    pub fn lo_child(&self) -> Block {
        let m = self.mid_coord();
        let id = 2 * self.id + 1;
        if self.splits_columns() {
            Block {
                id,
                level: self.level + 1,
                y1: m,
                ..*self
            }
        } else {
            Block {
                id,
                level: self.level + 1,
                x1: m,
                ..*self
            }
        }
    }

    pub fn hi_child(&self) -> Block {
        let m = self.mid_coord();
        let id = 2 * self.id + 2;
        if self.splits_columns() {
            Block {
                id,
                level: self.level + 1,
                y0: m,
                ..*self
            }
        } else {
            Block {
                id,
                level: self.level + 1,
                x0: m,
                ..*self
            }
        }
    }
}

/// All canonical blocks, heap-indexed: the children of `id` are `2id+1`
/// (lo) and `2id+2` (hi), and level `ℓ` occupies ids `2^ℓ-1 .. 2^(ℓ+1)-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    pub n: usize,
    pub depth: usize,
    blocks: Vec<Block>,
}

impl BlockTree {
    pub fn root(&self) -> &Block {
        &self.blocks[0]
    }

    pub fn get(&self, id: usize) -> &Block {
        &self.blocks[id]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn level(&self, level: usize) -> &[Block] {
        &self.blocks[(1 << level) - 1..(1 << (level + 1)) - 1]
    }

    pub fn children(&self, id: usize) -> Option<(usize, usize)> {
        if self.blocks[id].is_leaf() {
            None
        } else {
            Some((2 * id + 1, 2 * id + 2))
        }
    }
}

pub fn build_block_tree(n: usize) -> Result<BlockTree> {
    if !is_canonical_side(n) {
        return Err(Error::BadSide(n));
    }
    let kappa = (n - 1).trailing_zeros() as usize;
    let depth = 2 * kappa;
    let mut blocks = Vec::with_capacity((1 << (depth + 1)) - 1);
    blocks.push(Block {
        id: 0,
        level: 0,
        x0: 1,
        x1: n,
        y0: 1,
        y1: n,
    });
    let mut i = 0;
    while i < blocks.len() {
        let b = blocks[i];
        if b.level < depth {
            blocks.push(b.lo_child());
            blocks.push(b.hi_child());
        }
        i += 1;
    }
    Ok(BlockTree { n, depth, blocks })
}
