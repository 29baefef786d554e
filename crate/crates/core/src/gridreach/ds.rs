use std::collections::BTreeSet;

use super::block::{build_block_tree, Block, BlockTree};
use super::info::{
    base_block_info, leaf_reach, merge_block_info, search_block_info, BlockInfo, DIRECT_AREA,
};
use super::{GridPos, Keys};
use crate::error::{Error, Result};
use crate::frechet::FreeSpaceMatrix;
use crate::orthorange::{
    DecrementalReporter, Entry2, Entry3, RangeMinMaxIndex, Span, NEG_INF, POS_INF,
};

/// The block hierarchy over a canonical matrix with a terminal set.
#[derive(Clone, Debug)]
pub struct ReachDS {
    keys: Keys,
    tree: BlockTree,
    matrix: FreeSpaceMatrix,
    terminals: BTreeSet<GridPos>,
    infos: Vec<BlockInfo>,
    last_dirty: usize,
}

/// Builds the structure for `m` (side `2^k + 1`) with terminals `terms`;
/// the corners `(1,1)` and `(n,n)` are always added.
pub fn construct_ds(
    m: FreeSpaceMatrix,
    terms: impl IntoIterator<Item = GridPos>,
) -> Result<ReachDS> {
    ReachDS::new(m, terms)
}

fn split(v: &[GridPos], b: &Block) -> Vec<GridPos> {
    v.iter().copied().filter(|&p| b.contains(p)).collect()
}

impl ReachDS {
    pub fn new(m: FreeSpaceMatrix, terms: impl IntoIterator<Item = GridPos>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let tree = build_block_tree(m.rows())?;
        let n = m.rows();
        let mut terminals = BTreeSet::new();
        for t in terms {
            m.check_pos(t)?;
            terminals.insert(t);
        }
        terminals.insert(GridPos::new(1, 1));
        terminals.insert(GridPos::new(n, n));
        let mut ds = ReachDS {
            keys: Keys::new(n),
            infos: Vec::with_capacity(tree.len()),
            tree,
            matrix: m,
            terminals,
            last_dirty: 0,
        };
        let terms: Vec<GridPos> = ds.terminals.iter().copied().collect();
        ds.infos = vec![BlockInfo::default(); ds.tree.len()];
        ds.last_dirty = ds.build(0, &terms, None);
        Ok(ds)
    }

    fn compute(&self, id: usize, terms: &[GridPos]) -> BlockInfo {
        let b = self.tree.get(id);
        match self.tree.children(id) {
            None => base_block_info(b, &self.matrix, terms, self.keys),
            Some((l, h)) => {
                let summarize = if b.width() * b.height() <= DIRECT_AREA {
                    search_block_info
                } else {
                    merge_block_info
                };
                summarize(
                    b,
                    self.tree.get(l),
                    &self.infos[l],
                    self.tree.get(h),
                    &self.infos[h],
                    &self.matrix,
                    terms,
                    self.keys,
                )
                .expect("children come from the same tree")
            }
        }
    }

    /// Recomputes, children first and in place, every block meeting `dirty`
    /// (all blocks when `None`). Returns the number of recomputed blocks.
    fn build(&mut self, id: usize, terms: &[GridPos], dirty: Option<&[GridPos]>) -> usize {
        if matches!(dirty, Some(d) if d.is_empty()) {
            return 0;
        }
        let mut count = 1;
        if let Some((l, h)) = self.tree.children(id) {
            for c in [l, h] {
                let cb = self.tree.get(c);
                let ct = split(terms, cb);
                let cd = dirty.map(|d| split(d, cb));
                count += self.build(c, &ct, cd.as_deref());
            }
        }
        self.infos[id] = self.compute(id, terms);
        count
    }

    /// Applies `delta`, replaces the terminal set by `new_terms` (plus the
    /// corners) and recomputes only the blocks meeting `Δ ∪ 𝒯 ∪ 𝒯'`.
    pub fn update(
        &mut self,
        delta: &[(GridPos, bool)],
        new_terms: impl IntoIterator<Item = GridPos>,
    ) -> Result<()> {
        let n = self.n();
        let mut terms = BTreeSet::new();
        for t in new_terms {
            self.matrix.check_pos(t)?;
            terms.insert(t);
        }
        terms.insert(GridPos::new(1, 1));
        terms.insert(GridPos::new(n, n));
        for &(p, _) in delta {
            self.matrix.check_pos(p)?;
        }
        let mut x: BTreeSet<GridPos> = delta.iter().map(|d| d.0).collect();
        x.extend(self.terminals.iter().copied());
        x.extend(terms.iter().copied());
        for &(p, b) in delta {
            self.matrix.set_bit(p, b);
        }
        self.terminals = terms;
        let tv: Vec<GridPos> = self.terminals.iter().copied().collect();
        let xv: Vec<GridPos> = x.into_iter().collect();
        let dirty = self.build(0, &tv, Some(&xv));
        debug_assert!(dirty <= self.dirty_bound(xv.len()));
        self.last_dirty = dirty;
        Ok(())
    }

    /// `Σ_ℓ min(2^ℓ, 4|X|)`, the most blocks an update touching `|X|`
    /// positions can recompute.
    pub fn dirty_bound(&self, x: usize) -> usize {
        (0..=self.tree.depth)
            .map(|l| (1usize << l).min(4 * x))
            .sum()
    }

    /// Blocks recomputed by the most recent build or update.
    pub fn last_dirty_count(&self) -> usize {
        self.last_dirty
    }

    pub fn n(&self) -> usize {
        self.keys.n
    }

    pub fn keys(&self) -> Keys {
        self.keys
    }

    pub fn tree(&self) -> &BlockTree {
        &self.tree
    }

    pub fn matrix(&self) -> &FreeSpaceMatrix {
        &self.matrix
    }

    pub fn terminals(&self) -> &BTreeSet<GridPos> {
        &self.terminals
    }

    pub fn info(&self, id: usize) -> &BlockInfo {
        &self.infos[id]
    }

    pub fn infos(&self) -> &[BlockInfo] {
        &self.infos
    }

    fn check_terminals<'a>(
        &self,
        b: &Block,
        set: impl IntoIterator<Item = &'a GridPos>,
    ) -> Result<()> {
        for &p in set {
            if !self.terminals.contains(&p) || !b.contains(p) {
                return Err(Error::NotATerminal { x: p.x, y: p.y });
            }
        }
        Ok(())
    }

    /// Is there a monotone path from `(1,1)` to `(n,n)` through positions
    /// that are free in the matrix or belong to `free`?
    pub fn reach_query(&self, free: &[GridPos]) -> Result<bool> {
        let n = self.n();
        self.check_terminals(self.tree.root(), free)?;
        let mut f: BTreeSet<GridPos> = free.iter().copied().collect();
        let (s, t) = (GridPos::new(1, 1), GridPos::new(n, n));
        if !(self.matrix.bit(s) || f.contains(&s)) || !(self.matrix.bit(t) || f.contains(&t)) {
            return Ok(false);
        }
        f.insert(s);
        f.insert(t);
        let fv: Vec<GridPos> = f.into_iter().collect();
        Ok(self.reach_rec(0, vec![s], fv).contains(&t))
    }

    /// Terminals of `f` reachable from `s` by chains `f₁ ⇝ f₂ ⇝ …` inside
    /// block `id` whose links all lie in `f`.
    pub fn reach(
        &self,
        id: usize,
        s: &BTreeSet<GridPos>,
        f: &BTreeSet<GridPos>,
    ) -> Result<BTreeSet<GridPos>> {
        let b = self.tree.get(id);
        self.check_terminals(b, f)?;
        if !s.is_subset(f) {
            return Err(Error::Precondition("S must be a subset of F".into()));
        }
        Ok(self
            .reach_rec(id, s.iter().copied().collect(), f.iter().copied().collect())
            .into_iter()
            .collect())
    }

    /// Terminals of `f` (in the hi child, off the mid line) reachable by a
    /// single `⇝` from some terminal of `s` (in the lo child, off the mid line).
    pub fn single_step_reach(
        &self,
        id: usize,
        s: &BTreeSet<GridPos>,
        f: &BTreeSet<GridPos>,
    ) -> Result<BTreeSet<GridPos>> {
        let b = self.tree.get(id);
        if b.is_leaf() {
            return Err(Error::Precondition(
                "leaf blocks have no splitting line".into(),
            ));
        }
        self.check_terminals(b, s.iter().chain(f))?;
        let (lo, hi) = (b.lo_child(), b.hi_child());
        if s.iter().any(|&p| !lo.contains(p) || b.on_mid(p))
            || f.iter().any(|&p| !hi.contains(p) || b.on_mid(p))
        {
            return Err(Error::Precondition(
                "S must lie in lo and F in hi, both off the mid line".into(),
            ));
        }
        let sv: Vec<GridPos> = s.iter().copied().collect();
        let fv: Vec<GridPos> = f.iter().copied().collect();
        Ok(self.single_step(id, &sv, &fv).into_iter().collect())
    }

    fn reach_rec(&self, id: usize, s: Vec<GridPos>, f: Vec<GridPos>) -> Vec<GridPos> {
        if f.is_empty() || s.is_empty() {
            return Vec::new();
        }
        let b = self.tree.get(id);
        let Some((l, h)) = self.tree.children(id) else {
            return self.leaf_closure(b, s, &f);
        };
        let (lb, hb) = (self.tree.get(l), self.tree.get(h));
        let r1 = self.reach_rec(l, split(&s, lb), split(&f, lb));
        let s_step: Vec<GridPos> = r1.iter().copied().filter(|&p| !b.on_mid(p)).collect();
        let f_step: Vec<GridPos> = f.iter().copied().filter(|&p| !lb.contains(p)).collect();
        let t2 = self.single_step(id, &s_step, &f_step);
        let mut s_hi = split(&s, hb);
        s_hi.extend(t2);
        s_hi.extend(r1.iter().copied().filter(|&p| b.on_mid(p)));
        s_hi.sort_unstable();
        s_hi.dedup();
        let r2 = self.reach_rec(h, s_hi, split(&f, hb));
        let mut out = r1;
        out.extend(r2);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn leaf_closure(&self, b: &Block, s: Vec<GridPos>, f: &[GridPos]) -> Vec<GridPos> {
        let (cells, k, reach) = leaf_reach(b, &self.matrix);
        let bit = |p: GridPos| 1u8 << cells[..k].iter().position(|&c| c == p).unwrap();
        let fmask = f.iter().fold(0u8, |acc, &p| acc | bit(p));
        let mut got = s.iter().fold(0u8, |acc, &p| acc | bit(p));
        // cells are in topological order, so one forward pass closes the set
        for (i, r) in reach.iter().enumerate().take(k) {
            if got >> i & 1 == 1 {
                got |= r & fmask;
            }
        }
        let mut out: Vec<GridPos> = (0..k)
            .filter(|&i| got >> i & 1 == 1)
            .map(|i| cells[i])
            .collect();
        out.sort_unstable();
        out
    }

    fn single_step(&self, id: usize, s: &[GridPos], f: &[GridPos]) -> Vec<GridPos> {
        if s.is_empty() || f.is_empty() {
            return Vec::new();
        }
        let mid = self.infos[id].mid.as_ref().expect("inner block");
        let j = &mid.inds;
        if j.is_empty() {
            return Vec::new();
        }
        let b = self.tree.get(id);
        let (l, h) = self.tree.children(id).unwrap();
        let (lb, hb) = (self.tree.get(l), self.tree.get(h));
        let (lo, hi) = (&self.infos[l], &self.infos[h]);
        debug_assert!(s.iter().all(|&p| lb.contains(p) && !b.on_mid(p)));

        let mut cuts = vec![0, j.len()];
        let mut cut_at = |e: i64| {
            let pos = j.partition_point(|&v| v < e);
            cuts.push(pos);
            if pos < j.len() && j[pos] == e {
                cuts.push(pos + 1);
            }
        };
        let mut or_s = Vec::with_capacity(s.len());
        for &p in s {
            let i = lo.interval(lb, p).expect("terminal of lo");
            if i.is_empty() {
                continue;
            }
            cut_at(i.lo);
            cut_at(i.hi);
            or_s.push(Entry2::new(i.lo, i.hi, self.keys.l(p)));
        }
        let mut targets = Vec::with_capacity(f.len());
        for (k, &t) in f.iter().enumerate() {
            let i = hi.rev_interval(hb, t).expect("terminal of hi");
            if i.is_empty() {
                continue;
            }
            cut_at(i.lo);
            cut_at(i.hi);
            targets.push(Entry3::new(i.lo, i.hi, self.keys.l_rev(t), k as i64));
        }
        if or_s.is_empty() || targets.is_empty() {
            return Vec::new();
        }
        let or_s = RangeMinMaxIndex::build(or_s);
        let mut or_f = DecrementalReporter::new(targets);
        cuts.sort_unstable();
        cuts.dedup();

        let mut out = Vec::new();
        for w in cuts.windows(2) {
            let (i0, i1) = (w[0], w[1]);
            if i0 >= i1 {
                continue;
            }
            let (a, z) = (j[i0], j[i1 - 1]);
            let lj = or_s.range_max(Span::at_most(a), Span::at_least(z));
            if lj == NEG_INF {
                continue;
            }
            let level = mid.index.range_min(Span::new(a, z), Span::at_most(lj));
            if level == POS_INF {
                continue;
            }
            let hits = or_f.report_and_delete([
                Span::at_most(a),
                Span::at_least(z),
                Span::at_least(level),
            ]);
            out.extend(hits.into_iter().map(|k| f[k as usize]));
            if or_f.live_count() == 0 {
                break;
            }
        }
        out.sort_unstable();
        out
    }
}
