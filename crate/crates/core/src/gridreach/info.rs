use super::block::Block;
use super::{GridPos, Keys};
use crate::error::{Error, Result};
use crate::frechet::FreeSpaceMatrix;
use crate::orthorange::{Entry2, RangeMinMaxIndex, Span, NEG_INF, POS_INF};

/// `[+∞, −∞]`, the interval of an input that reaches no output.
pub const EMPTY_SPAN: Span = Span {
    lo: POS_INF,
    hi: NEG_INF,
};

/// Free positions on the splitting line with their range index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MidSummary {
    /// `ind(j)` for free `j ∈ B^mid`, ascending.
    pub(crate) inds: Vec<i64>,
    /// `ℓ_hi^rev(j)` keyed by `(ind(j), ℓ_lo(j))`.
    pub(crate) index: RangeMinMaxIndex,
}

/// Succinct reachability summary of one canonical block.
///
/// For inputs `p ∈ B⁻` and terminals, `interval(p)` spans the indices of
/// the reachable outputs; for outputs `q ∈ B⁺`, `level(q)` is the least
/// `L(p)` over all `p ∈ B` with `p ⇝ q`. Then `p ⇝ q` iff
/// `ind(q) ∈ interval(p)` and `level(q) <= L(p)`. The reverse fields mirror
/// this with the roles of inputs and outputs swapped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockInfo {
    pub(crate) fwd: Vec<Span>,
    pub(crate) lvl: Vec<i64>,
    pub(crate) rev: Vec<Span>,
    pub(crate) lvl_rev: Vec<i64>,
    pub(crate) term_fwd: Vec<(GridPos, Span)>,
    pub(crate) term_rev: Vec<(GridPos, Span)>,
    pub(crate) mid: Option<MidSummary>,
}

fn lookup(v: &[(GridPos, Span)], p: GridPos) -> Option<Span> {
    v.binary_search_by_key(&p, |e| e.0).ok().map(|i| v[i].1)
}

impl BlockInfo {
    /// `I(p)` for `p ∈ B⁻ ∪ 𝒯_B`.
    pub fn interval(&self, b: &Block, p: GridPos) -> Option<Span> {
        match b.minus_index(p) {
            Some(i) => Some(self.fwd[i]),
            None => lookup(&self.term_fwd, p),
        }
    }

    /// `ℓ(q)` for `q ∈ B⁺`.
    pub fn level(&self, b: &Block, q: GridPos) -> Option<i64> {
        b.plus_index(q).map(|i| self.lvl[i])
    }

    /// `I^rev(q)` for `q ∈ B⁺ ∪ 𝒯_B`.
    pub fn rev_interval(&self, b: &Block, q: GridPos) -> Option<Span> {
        match b.plus_index(q) {
            Some(i) => Some(self.rev[i]),
            None => lookup(&self.term_rev, q),
        }
    }

    /// `ℓ^rev(p)` for `p ∈ B⁻`.
    pub fn rev_level(&self, b: &Block, p: GridPos) -> Option<i64> {
        b.minus_index(p).map(|i| self.lvl_rev[i])
    }

    pub fn terminals(&self) -> impl Iterator<Item = GridPos> + '_ {
        self.term_fwd.iter().map(|e| e.0)
    }

    pub fn mid_free_count(&self) -> usize {
        self.mid.as_ref().map_or(0, |m| m.inds.len())
    }

    fn interval_of(&self, b: &Block, p: GridPos) -> Span {
        self.interval(b, p)
            .expect("position is neither input nor terminal")
    }

    fn rev_interval_of(&self, b: &Block, q: GridPos) -> Span {
        self.rev_interval(b, q)
            .expect("position is neither output nor terminal")
    }
}

fn span_of(it: impl Iterator<Item = i64>) -> Span {
    it.fold(EMPTY_SPAN, |s, v| Span::new(s.lo.min(v), s.hi.max(v)))
}

/// `reach[i]` has bit `j` set iff `cells[i] ⇝ cells[j]`, for the at most
/// four cells of a leaf in row-major order.
pub(crate) fn leaf_reach(b: &Block, m: &FreeSpaceMatrix) -> ([GridPos; 4], usize, [u8; 4]) {
    let mut cells = [GridPos::new(0, 0); 4];
    let mut k = 0;
    for p in b.positions() {
        cells[k] = p;
        k += 1;
    }
    let mut reach = [0u8; 4];
    for (i, slot) in reach.iter_mut().enumerate().take(k) {
        let mut mask = 1u8 << i;
        // row-major order is a topological order of the step graph
        for u in i..k {
            if mask >> u & 1 == 0 || (u != i && !m.bit(cells[u])) {
                continue;
            }
            for v in u + 1..k {
                let (cu, cv) = (cells[u], cells[v]);
                if cv.x - cu.x <= 1 && cv.y >= cu.y && cv.y - cu.y <= 1 {
                    mask |= 1 << v;
                }
            }
        }
        *slot = mask;
    }
    (cells, k, reach)
}

/// Summary of a leaf by exhaustive enumeration.
pub fn base_block_info(b: &Block, m: &FreeSpaceMatrix, terms: &[GridPos], keys: Keys) -> BlockInfo {
    let (cells, k, reach) = leaf_reach(b, m);
    let cells = &cells[..k];
    let slot = |p: GridPos| cells.iter().position(|&c| c == p).unwrap();
    let reaches = |p: GridPos, q: GridPos| reach[slot(p)] >> slot(q) & 1 == 1;
    let minus = b.minus_positions();
    let plus = b.plus_positions();
    let fwd_of = |p: GridPos| {
        span_of(
            plus.iter()
                .filter(|&&q| reaches(p, q))
                .map(|&q| keys.ind(q)),
        )
    };
    let rev_of = |q: GridPos| {
        span_of(
            minus
                .iter()
                .filter(|&&p| reaches(p, q))
                .map(|&p| keys.ind(p)),
        )
    };
    BlockInfo {
        fwd: minus.iter().map(|&p| fwd_of(p)).collect(),
        lvl: plus
            .iter()
            .map(|&q| {
                cells
                    .iter()
                    .filter(|&&p| reaches(p, q))
                    .map(|&p| keys.l(p))
                    .min()
                    .unwrap()
            })
            .collect(),
        rev: plus.iter().map(|&q| rev_of(q)).collect(),
        lvl_rev: minus
            .iter()
            .map(|&p| {
                cells
                    .iter()
                    .filter(|&&q| reaches(p, q))
                    .map(|&q| keys.l_rev(q))
                    .min()
                    .unwrap()
            })
            .collect(),
        term_fwd: terms.iter().map(|&t| (t, fwd_of(t))).collect(),
        term_rev: terms.iter().map(|&t| (t, rev_of(t))).collect(),
        mid: None,
    }
}

#[inline]
fn min_in(ix: &RangeMinMaxIndex, x: Span, y: Span) -> i64 {
    if x.is_empty() {
        POS_INF
    } else {
        ix.range_min(x, y)
    }
}

fn combine(lo: i64, hi: i64) -> Span {
    if lo == POS_INF {
        EMPTY_SPAN
    } else {
        Span::new(lo, hi)
    }
}

/// Summary of `b` from the summaries of its two children.
///
/// `terms` must be the sorted terminals inside `b`; `lo`/`hi` must have been
/// built with the terminals inside the respective child.
#[allow(clippy::too_many_arguments)]
pub fn merge_block_info(
    b: &Block,
    lo_b: &Block,
    lo: &BlockInfo,
    hi_b: &Block,
    hi: &BlockInfo,
    m: &FreeSpaceMatrix,
    terms: &[GridPos],
    keys: Keys,
) -> Result<BlockInfo> {
    if b.is_leaf() || *lo_b != b.lo_child() || *hi_b != b.hi_child() {
        return Err(Error::MismatchedChildren(format!("{b:?}")));
    }
    let mid: Vec<GridPos> = b
        .mid_positions()
        .into_iter()
        .filter(|&j| m.bit(j))
        .collect();
    let mid_lvl_lo: Vec<i64> = mid
        .iter()
        .map(|&j| lo.lvl[lo_b.plus_index(j).unwrap()])
        .collect();
    let mid_lvl_rev_hi: Vec<i64> = mid
        .iter()
        .map(|&j| hi.lvl_rev[hi_b.minus_index(j).unwrap()])
        .collect();
    let mid_fwd_hi: Vec<Span> = mid
        .iter()
        .map(|&j| hi.fwd[hi_b.minus_index(j).unwrap()])
        .collect();
    let mid_rev_lo: Vec<Span> = mid
        .iter()
        .map(|&j| lo.rev[lo_b.plus_index(j).unwrap()])
        .collect();
    let mid_ind: Vec<i64> = mid.iter().map(|&j| keys.ind(j)).collect();

    let plus = b.plus_positions();
    let minus = b.minus_positions();

    // forward: outputs reachable inside lo, and hi outputs entered through the mid line
    let live = |s: &Span| !s.is_empty();
    let or_fwd = RangeMinMaxIndex::build(
        plus.iter()
            .filter(|&&q| lo_b.contains(q))
            .map(|&q| {
                Entry2::new(
                    keys.ind(q),
                    lo.lvl[lo_b.plus_index(q).unwrap()],
                    keys.ind(q),
                )
            })
            .chain((0..mid.len()).filter(|&i| live(&mid_fwd_hi[i])).map(|i| {
                Entry2::pair(
                    mid_ind[i],
                    mid_lvl_lo[i],
                    mid_fwd_hi[i].lo,
                    mid_fwd_hi[i].hi,
                )
            }))
            .collect(),
    );
    let fwd_of = |p: GridPos| -> Span {
        if hi_b.contains(p) {
            return hi.interval_of(hi_b, p);
        }
        let az = lo.interval_of(lo_b, p);
        if az.is_empty() {
            return EMPTY_SPAN;
        }
        let (a, z) = or_fwd.range_min_max(az, Span::at_most(keys.l(p)));
        combine(a, z)
    };

    let or_l = RangeMinMaxIndex::build(
        (0..mid.len())
            .map(|i| Entry2::new(mid_ind[i], mid_lvl_rev_hi[i], mid_lvl_lo[i]))
            .collect(),
    );
    let lvl: Vec<i64> = plus
        .iter()
        .map(|&q| {
            if lo_b.contains(q) {
                lo.lvl[lo_b.plus_index(q).unwrap()]
            } else {
                let own = hi.lvl[hi_b.plus_index(q).unwrap()];
                let r = hi.rev[hi_b.plus_index(q).unwrap()];
                own.min(min_in(&or_l, r, Span::at_most(keys.l_rev(q))))
            }
        })
        .collect();

    // reverse: inputs reaching inside hi, and lo inputs leaving through the mid line
    let or_rev = RangeMinMaxIndex::build(
        minus
            .iter()
            .filter(|&&p| hi_b.contains(p))
            .map(|&p| {
                Entry2::new(
                    keys.ind(p),
                    hi.lvl_rev[hi_b.minus_index(p).unwrap()],
                    keys.ind(p),
                )
            })
            .chain((0..mid.len()).filter(|&i| live(&mid_rev_lo[i])).map(|i| {
                Entry2::pair(
                    mid_ind[i],
                    mid_lvl_rev_hi[i],
                    mid_rev_lo[i].lo,
                    mid_rev_lo[i].hi,
                )
            }))
            .collect(),
    );
    let rev_of = |q: GridPos| -> Span {
        if lo_b.contains(q) {
            return lo.rev_interval_of(lo_b, q);
        }
        let az = hi.rev_interval_of(hi_b, q);
        if az.is_empty() {
            return EMPTY_SPAN;
        }
        let (a, z) = or_rev.range_min_max(az, Span::at_most(keys.l_rev(q)));
        combine(a, z)
    };

    let or_b = RangeMinMaxIndex::build(
        (0..mid.len())
            .map(|i| Entry2::new(mid_ind[i], mid_lvl_lo[i], mid_lvl_rev_hi[i]))
            .collect(),
    );
    let lvl_rev: Vec<i64> = minus
        .iter()
        .map(|&p| {
            if hi_b.contains(p) {
                hi.lvl_rev[hi_b.minus_index(p).unwrap()]
            } else {
                let own = lo.lvl_rev[lo_b.minus_index(p).unwrap()];
                let r = lo.fwd[lo_b.minus_index(p).unwrap()];
                own.min(min_in(&or_b, r, Span::at_most(keys.l(p))))
            }
        })
        .collect();

    Ok(BlockInfo {
        fwd: minus.iter().map(|&p| fwd_of(p)).collect(),
        lvl,
        rev: plus.iter().map(|&q| rev_of(q)).collect(),
        lvl_rev,
        term_fwd: terms.iter().map(|&t| (t, fwd_of(t))).collect(),
        term_rev: terms.iter().map(|&t| (t, rev_of(t))).collect(),
        mid: Some(MidSummary {
            inds: mid_ind,
            index: or_b,
        }),
    })
}

/// Largest block area summarized by direct search rather than by merging
/// child summaries. Must not exceed 128.
pub const DIRECT_AREA: usize = 9;

/// Cell bitsets of a block with at most 128 positions, row-major.
struct SmallGrid {
    x0: usize,
    y0: usize,
    w: usize,
    h: usize,
    free: u128,
}

impl SmallGrid {
    fn new(b: &Block, m: &FreeSpaceMatrix) -> Self {
        let (w, h) = (b.width(), b.height());
        debug_assert!(w * h <= 128);
        let mut free = 0u128;
        for (u, p) in b.positions().enumerate() {
            if m.bit(p) {
                free |= 1 << u;
            }
        }
        SmallGrid {
            x0: b.x0,
            y0: b.y0,
            w,
            h,
            free,
        }
    }

    fn cell(&self, p: GridPos) -> usize {
        (p.x - self.x0) * self.w + (p.y - self.y0)
    }

    fn passable(&self, u: usize, start: usize) -> bool {
        u == start || self.free >> u & 1 == 1
    }

    /// Cells `q` with `cells[c] ⇝ q`.
    fn forward(&self, c: usize) -> u128 {
        let mut r = 1u128 << c;
        for u in c..self.w * self.h {
            if r >> u & 1 == 0 || !self.passable(u, c) {
                continue;
            }
            let (right, down) = (u % self.w + 1 < self.w, u / self.w + 1 < self.h);
            if right {
                r |= 1 << (u + 1);
            }
            if down {
                r |= 1 << (u + self.w);
                if right {
                    r |= 1 << (u + self.w + 1);
                }
            }
        }
        r
    }

    /// Cells `p` with `p ⇝ cells[c]`.
    fn backward(&self, c: usize) -> u128 {
        let mut r = 1u128 << c;
        for u in (0..=c).rev() {
            if r >> u & 1 == 0 || !self.passable(u, c) {
                continue;
            }
            let (left, up) = (u % self.w > 0, u >= self.w);
            if left {
                r |= 1 << (u - 1);
            }
            if up {
                r |= 1 << (u - self.w);
                if left {
                    r |= 1 << (u - self.w - 1);
                }
            }
        }
        r
    }
}

/// Same result as [`merge_block_info`], computed by searching the block
/// directly; only the splitting-line summary is taken from the children.
/// For blocks of area at most [`DIRECT_AREA`].
#[allow(clippy::too_many_arguments)]
pub fn search_block_info(
    b: &Block,
    lo_b: &Block,
    lo: &BlockInfo,
    hi_b: &Block,
    hi: &BlockInfo,
    m: &FreeSpaceMatrix,
    terms: &[GridPos],
    keys: Keys,
) -> Result<BlockInfo> {
    if b.is_leaf() || *lo_b != b.lo_child() || *hi_b != b.hi_child() {
        return Err(Error::MismatchedChildren(format!("{b:?}")));
    }
    if b.width() * b.height() > DIRECT_AREA {
        return Err(Error::Precondition(format!(
            "block {b:?} too large for direct search"
        )));
    }
    let g = SmallGrid::new(b, m);
    let plus = b.plus_positions();
    let minus = b.minus_positions();
    let plus_c: Vec<(usize, i64)> = plus.iter().map(|&q| (g.cell(q), keys.ind(q))).collect();
    let minus_c: Vec<(usize, i64)> = minus.iter().map(|&p| (g.cell(p), keys.ind(p))).collect();
    let span_in = |set: u128, among: &[(usize, i64)]| {
        span_of(
            among
                .iter()
                .filter(|&&(c, _)| set >> c & 1 == 1)
                .map(|&(_, i)| i),
        )
    };
    let fwd_of = |p: GridPos| span_in(g.forward(g.cell(p)), &plus_c);
    let rev_of = |q: GridPos| span_in(g.backward(g.cell(q)), &minus_c);

    // least L(p) over p ⇝ u, and least L^rev(q) over u ⇝ q
    let a = g.w * g.h;
    let pos = |u: usize| GridPos::new(g.x0 + u / g.w, g.y0 + u % g.w);
    let mut best = [0i64; 128];
    for u in 0..a {
        let mut v = keys.l(pos(u));
        let (left, up) = (u % g.w > 0, u >= g.w);
        let via = |t: usize| {
            if g.free >> t & 1 == 1 {
                best[t]
            } else {
                keys.l(pos(t))
            }
        };
        if left {
            v = v.min(via(u - 1));
        }
        if up {
            v = v.min(via(u - g.w));
            if left {
                v = v.min(via(u - g.w - 1));
            }
        }
        best[u] = v;
    }
    let lvl = plus_c.iter().map(|&(c, _)| best[c]).collect();
    for u in (0..a).rev() {
        let mut v = keys.l_rev(pos(u));
        let (right, down) = (u % g.w + 1 < g.w, u / g.w + 1 < g.h);
        let via = |t: usize| {
            if g.free >> t & 1 == 1 {
                best[t]
            } else {
                keys.l_rev(pos(t))
            }
        };
        if right {
            v = v.min(via(u + 1));
        }
        if down {
            v = v.min(via(u + g.w));
            if right {
                v = v.min(via(u + g.w + 1));
            }
        }
        best[u] = v;
    }
    let lvl_rev = minus_c.iter().map(|&(c, _)| best[c]).collect();

    let mid: Vec<GridPos> = b
        .mid_positions()
        .into_iter()
        .filter(|&j| m.bit(j))
        .collect();
    let index = RangeMinMaxIndex::build(
        mid.iter()
            .map(|&j| {
                let l_lo = lo.lvl[lo_b.plus_index(j).unwrap()];
                let l_hi = hi.lvl_rev[hi_b.minus_index(j).unwrap()];
                Entry2::new(keys.ind(j), l_lo, l_hi)
            })
            .collect(),
    );
    Ok(BlockInfo {
        fwd: minus.iter().map(|&p| fwd_of(p)).collect(),
        lvl,
        rev: plus.iter().map(|&q| rev_of(q)).collect(),
        lvl_rev,
        term_fwd: terms.iter().map(|&t| (t, fwd_of(t))).collect(),
        term_rev: terms.iter().map(|&t| (t, rev_of(t))).collect(),
        mid: Some(MidSummary {
            inds: mid.iter().map(|&j| keys.ind(j)).collect(),
            index,
        }),
    })
}
