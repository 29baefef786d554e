//! Static 2-D range min/max and 3-D decremental range reporting.
//!
//! Bounds are closed; `i64::MIN` / `i64::MAX` stand for `-∞` / `+∞`.
//! Empty minima are `i64::MAX` and empty maxima `i64::MIN`.

pub const NEG_INF: i64 = i64::MIN;
pub const POS_INF: i64 = i64::MAX;

/// Closed integer interval; `lo > hi` means empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub const ALL: Span = Span {
        lo: NEG_INF,
        hi: POS_INF,
    };

    pub fn new(lo: i64, hi: i64) -> Self {
        Span { lo, hi }
    }

    pub fn at_most(hi: i64) -> Self {
        Span { lo: NEG_INF, hi }
    }

    pub fn at_least(lo: i64) -> Self {
        Span { lo, hi: POS_INF }
    }

    #[inline]
    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

/// Keyed entry of a [`RangeMinMaxIndex`]. Minima are taken over `lo`,
/// maxima over `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry2 {
    pub key: (i64, i64),
    pub lo: i64,
    pub hi: i64,
}

impl Entry2 {
    pub fn new(k0: i64, k1: i64, value: i64) -> Self {
        Entry2 {
            key: (k0, k1),
            lo: value,
            hi: value,
        }
    }

    pub fn pair(k0: i64, k1: i64, lo: i64, hi: i64) -> Self {
        Entry2 {
            key: (k0, k1),
            lo,
            hi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry3 {
    pub key: [i64; 3],
    pub value: i64,
}

impl Entry3 {
    pub fn new(k0: i64, k1: i64, k2: i64, value: i64) -> Self {
        Entry3 {
            key: [k0, k1, k2],
            value,
        }
    }
}

const FLAT_LIMIT: usize = 32;

/// Levels of the merge-sort tree, stored back to back: level `t` occupies
/// `[t·n, (t+1)·n)` and consists of blocks of `2^t` consecutive entries (by
/// first key), each sorted by second key, with prefix and suffix extrema of
/// the values inside its block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Levels {
    ys: Vec<i64>,
    vlo: Vec<i64>,
    vhi: Vec<i64>,
    pre_min: Vec<i64>,
    pre_max: Vec<i64>,
    suf_min: Vec<i64>,
    suf_max: Vec<i64>,
}

impl Levels {
    fn push(&mut self, items: &[(i64, i64, i64)], block: usize) {
        let n = items.len();
        let base = self.ys.len();
        self.ys.extend(items.iter().map(|e| e.0));
        self.vlo.extend(items.iter().map(|e| e.1));
        self.vhi.extend(items.iter().map(|e| e.2));
        self.pre_min.resize(base + n, 0);
        self.pre_max.resize(base + n, 0);
        self.suf_min.resize(base + n, 0);
        self.suf_max.resize(base + n, 0);
        for s in (base..base + n).step_by(block) {
            let e = (s + block).min(base + n);
            let (mut lo, mut hi) = (POS_INF, NEG_INF);
            for i in s..e {
                lo = lo.min(self.vlo[i]);
                hi = hi.max(self.vhi[i]);
                self.pre_min[i] = lo;
                self.pre_max[i] = hi;
            }
            let (mut lo, mut hi) = (POS_INF, NEG_INF);
            for i in (s..e).rev() {
                lo = lo.min(self.vlo[i]);
                hi = hi.max(self.vhi[i]);
                self.suf_min[i] = lo;
                self.suf_max[i] = hi;
            }
        }
    }

    /// `(min, max)` over entries of `[s, e)` whose second key lies in `y`.
    fn query(&self, s: usize, e: usize, y: Span) -> (i64, i64) {
        let ys = &self.ys[s..e];
        let a = s + ys.partition_point(|&k| k < y.lo);
        let b = s + ys.partition_point(|&k| k <= y.hi);
        if a >= b {
            (POS_INF, NEG_INF)
        } else if a == s {
            (self.pre_min[b - 1], self.pre_max[b - 1])
        } else if b == e {
            (self.suf_min[a], self.suf_max[a])
        } else {
            (a..b).fold((POS_INF, NEG_INF), |(lo, hi), i| {
                (lo.min(self.vlo[i]), hi.max(self.vhi[i]))
            })
        }
    }
}

/// Immutable 2-D orthogonal range min/max index.
///
/// A merge-sort tree over the first key, stored level by level in flat
/// arrays. Queries whose second-key range is one-sided (the only kind the
/// reachability code issues) are answered from prefix/suffix extrema in
/// `O(log² n)`; two-sided ranges fall back to a scan inside each canonical
/// block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RangeMinMaxIndex {
    xs: Vec<i64>,
    flat: Vec<Entry2>,
    levels: Levels,
}

impl RangeMinMaxIndex {
    pub fn build(mut entries: Vec<Entry2>) -> Self {
        entries.sort_unstable_by_key(|e| (e.key, e.lo, e.hi));
        let n = entries.len();
        let xs = entries.iter().map(|e| e.key.0).collect();
        if n <= FLAT_LIMIT {
            return RangeMinMaxIndex {
                xs,
                flat: entries,
                levels: Levels::default(),
            };
        }
        let depth = n.next_power_of_two().trailing_zeros() as usize + 1;
        let mut levels = Levels::default();
        for v in [&mut levels.ys, &mut levels.vlo, &mut levels.vhi] {
            v.reserve_exact(depth * n);
        }
        let mut cur: Vec<(i64, i64, i64)> = entries.iter().map(|e| (e.key.1, e.lo, e.hi)).collect();
        levels.push(&cur, 1);
        let mut block = 1;
        let mut next = Vec::with_capacity(n);
        while block < n {
            next.clear();
            for s in (0..n).step_by(2 * block) {
                let m = (s + block).min(n);
                let e = (s + 2 * block).min(n);
                let (mut i, mut j) = (s, m);
                while i < m && j < e {
                    if cur[j] < cur[i] {
                        next.push(cur[j]);
                        j += 1;
                    } else {
                        next.push(cur[i]);
                        i += 1;
                    }
                }
                next.extend_from_slice(&cur[i..m]);
                next.extend_from_slice(&cur[j..e]);
            }
            std::mem::swap(&mut cur, &mut next);
            block *= 2;
            levels.push(&cur, block);
        }
        RangeMinMaxIndex {
            xs,
            flat: Vec::new(),
            levels,
        }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    fn query(&self, x: Span, y: Span) -> (i64, i64) {
        if x.is_empty() || y.is_empty() {
            return (POS_INF, NEG_INF);
        }
        let mut l = self.xs.partition_point(|&k| k < x.lo);
        let mut r = self.xs.partition_point(|&k| k <= x.hi);
        if l >= r {
            return (POS_INF, NEG_INF);
        }
        if self.flat.len() == self.xs.len() {
            return self.flat[l..r]
                .iter()
                .filter(|e| y.contains(e.key.1))
                .fold((POS_INF, NEG_INF), |(lo, hi), e| {
                    (lo.min(e.lo), hi.max(e.hi))
                });
        }
        let n = self.xs.len();
        let (mut lo, mut hi) = (POS_INF, NEG_INF);
        let mut take = |b: usize, t: usize| {
            let (a, z) = self
                .levels
                .query(t * n + (b << t), t * n + ((b + 1) << t).min(n), y);
            lo = lo.min(a);
            hi = hi.max(z);
        };
        let mut t = 0;
        while l < r {
            if l & 1 == 1 {
                take(l, t);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                take(r, t);
            }
            l >>= 1;
            r >>= 1;
            t += 1;
        }
        (lo, hi)
    }

    /// `(range_min, range_max)` in one pass.
    pub fn range_min_max(&self, x: Span, y: Span) -> (i64, i64) {
        self.query(x, y)
    }

    /// Minimum value with key in `x × y`; `i64::MAX` if there is none.
    pub fn range_min(&self, x: Span, y: Span) -> i64 {
        self.query(x, y).0
    }

    /// Maximum value with key in `x × y`; `i64::MIN` if there is none.
    pub fn range_max(&self, x: Span, y: Span) -> i64 {
        self.query(x, y).1
    }
}

/// 3-D reporter supporting report-and-delete over orthogonal boxes.
///
/// An implicit k-d tree: the node for slice `[l, r)` sits at its midpoint
/// and keeps a bounding box plus the number of live entries below it, so
/// exhausted or disjoint subtrees are skipped.
#[derive(Clone, Debug)]
pub struct DecrementalReporter {
    pts: Vec<Entry3>,
    alive: Vec<bool>,
    live: Vec<usize>,
    lo: Vec<[i64; 3]>,
    hi: Vec<[i64; 3]>,
}

impl DecrementalReporter {
    pub fn new(mut entries: Vec<Entry3>) -> Self {
        let n = entries.len();
        Self::arrange(&mut entries, 0);
        let mut rep = DecrementalReporter {
            pts: entries,
            alive: vec![true; n],
            live: vec![0; n],
            lo: vec![[POS_INF; 3]; n],
            hi: vec![[NEG_INF; 3]; n],
        };
        rep.summarize(0, n);
        rep
    }

    fn arrange(slice: &mut [Entry3], depth: usize) {
        if slice.len() <= 1 {
            return;
        }
        let axis = depth % 3;
        let mid = slice.len() / 2;
        slice.select_nth_unstable_by_key(mid, |e| e.key[axis]);
        let (left, right) = slice.split_at_mut(mid);
        Self::arrange(left, depth + 1);
        Self::arrange(&mut right[1..], depth + 1);
    }

    fn summarize(&mut self, l: usize, r: usize) {
        if l >= r {
            return;
        }
        let m = (l + r) / 2;
        self.summarize(l, m);
        self.summarize(m + 1, r);
        let mut lo = self.pts[m].key;
        let mut hi = self.pts[m].key;
        for c in [(l, m), (m + 1, r)] {
            if c.0 < c.1 {
                let cm = (c.0 + c.1) / 2;
                for a in 0..3 {
                    lo[a] = lo[a].min(self.lo[cm][a]);
                    hi[a] = hi[a].max(self.hi[cm][a]);
                }
            }
        }
        self.lo[m] = lo;
        self.hi[m] = hi;
        self.live[m] = r - l;
    }

    pub fn live_count(&self) -> usize {
        if self.pts.is_empty() {
            0
        } else {
            self.live[self.pts.len() / 2]
        }
    }

    /// Returns the values of all live entries inside `bx` and deletes them.
    pub fn report_and_delete(&mut self, bx: [Span; 3]) -> Vec<i64> {
        let mut out = Vec::new();
        if bx.iter().any(Span::is_empty) {
            return out;
        }
        self.visit(0, self.pts.len(), &bx, &mut out);
        out
    }

    fn visit(&mut self, l: usize, r: usize, bx: &[Span; 3], out: &mut Vec<i64>) -> usize {
        if l >= r {
            return 0;
        }
        let m = (l + r) / 2;
        if self.live[m] == 0 {
            return 0;
        }
        let (lo, hi) = (self.lo[m], self.hi[m]);
        if (0..3).any(|a| hi[a] < bx[a].lo || lo[a] > bx[a].hi) {
            return 0;
        }
        let mut removed = 0;
        if self.alive[m] && (0..3).all(|a| bx[a].contains(self.pts[m].key[a])) {
            self.alive[m] = false;
            out.push(self.pts[m].value);
            removed += 1;
        }
        removed += self.visit(l, m, bx, out);
        removed += self.visit(m + 1, r, bx, out);
        self.live[m] -= removed;
        removed
    }
}
