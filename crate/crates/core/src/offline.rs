//! Offline dynamic grid reachability: answer corner-to-corner reachability
//! after every prefix of a known update sequence.
//!
//! Updates are processed in chunks of `k`. For each chunk, the positions it
//! touches become terminals and are zeroed in the structure's matrix; inside
//! the chunk, each prefix is a terminal query with the currently set
//! terminals as the free set.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::frechet::{monotone_path_exists, FreeSpaceMatrix};
use crate::gridreach::{pad_matrix, GridPos, ReachDS};

/// Set the bit at `pos` to `bit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UpdateOp {
    pub pos: GridPos,
    pub bit: bool,
}

impl UpdateOp {
    pub fn new(x: usize, y: usize, bit: bool) -> Self {
        UpdateOp {
            pos: GridPos::new(x, y),
            bit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChunkConfig {
    k: usize,
}

impl ChunkConfig {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroChunk);
        }
        Ok(ChunkConfig { k })
    }

    /// `max(1, ⌈n^(2/3)⌉)`.
    pub fn default_for(n: usize) -> Self {
        let k = (n as f64).powf(2.0 / 3.0).ceil() as usize;
        ChunkConfig { k: k.max(1) }
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

fn check(m: &FreeSpaceMatrix, updates: &[UpdateOp]) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    for u in updates {
        m.check_pos(u.pos)?;
    }
    Ok(())
}

/// Answers for every prefix of `updates`.
pub fn offline_grid_reachability(
    m: &FreeSpaceMatrix,
    updates: &[UpdateOp],
    cfg: Option<ChunkConfig>,
) -> Result<Vec<bool>> {
    offline_grid_reachability_until(m, updates, cfg, |_, _| ControlFlow::Continue(()))
}

/// Like [`offline_grid_reachability`], but `visit(i, answer)` sees each
/// answer as soon as it is known and may stop the run early. The returned
/// vector holds the answers produced so far.
pub fn offline_grid_reachability_until(
    m: &FreeSpaceMatrix,
    updates: &[UpdateOp],
    cfg: Option<ChunkConfig>,
    mut visit: impl FnMut(usize, bool) -> ControlFlow<()>,
) -> Result<Vec<bool>> {
    check(m, updates)?;
    let mut out = Vec::with_capacity(updates.len());
    if updates.is_empty() {
        return Ok(out);
    }
    let mut cur = pad_matrix(m)?;
    let k = cfg
        .unwrap_or_else(|| ChunkConfig::default_for(cur.rows()))
        .k;

    // the last chunk is filled up by repeating the final update
    let chunks = updates.len().div_ceil(k);
    let last = *updates.last().unwrap();
    let op = |i: usize| if i < updates.len() { updates[i] } else { last };
    let terms_of =
        |c: usize| -> BTreeSet<GridPos> { (c * k..(c + 1) * k).map(|i| op(i).pos).collect() };
    let zeroed = |cur: &FreeSpaceMatrix, t: &BTreeSet<GridPos>| {
        let mut z = cur.clone();
        for &p in t {
            z.set_bit(p, false);
        }
        z
    };

    let mut terms = terms_of(0);
    let mut base = zeroed(&cur, &terms);
    let mut ds = ReachDS::new(base.clone(), terms.iter().copied())?;
    for c in 0..chunks {
        if c > 0 {
            let next = terms_of(c);
            let next_base = zeroed(&cur, &next);
            let delta: Vec<(GridPos, bool)> = terms
                .union(&next)
                .filter(|&&p| base.bit(p) != next_base.bit(p))
                .map(|&p| (p, next_base.bit(p)))
                .collect();
            ds.update(&delta, next.iter().copied())?;
            terms = next;
            base = next_base;
        }
        let mut free: BTreeSet<GridPos> = terms.iter().copied().filter(|&p| cur.bit(p)).collect();
        let end = ((c + 1) * k).min(updates.len());
        for (i, &u) in updates.iter().enumerate().take(end).skip(c * k) {
            cur.set_bit(u.pos, u.bit);
            if u.bit {
                free.insert(u.pos);
            } else {
                free.remove(&u.pos);
            }
            let f: Vec<GridPos> = free.iter().copied().collect();
            let ans = ds.reach_query(&f)?;
            out.push(ans);
            if visit(i, ans).is_break() {
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Applies each update and reruns the monotone-path dynamic program.
pub fn offline_bruteforce(m: &FreeSpaceMatrix, updates: &[UpdateOp]) -> Result<Vec<bool>> {
    check(m, updates)?;
    let mut cur = m.clone();
    Ok(updates
        .iter()
        .map(|u| {
            cur.set_bit(u.pos, u.bit);
            monotone_path_exists(&cur)
        })
        .collect())
}
