//! Translation-space disk arrangement, its Euler walk, and the bit-flip
//! stream that walk induces on the free-space matrix.
//!
//! A translation `τ` makes `(i, j)` free iff `τ` lies in the radius-δ disk
//! around `π_i − σ_j`. Walking between arrangement vertices and emitting
//! the bits that change turns the decision problem into offline grid
//! reachability.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::frechet::FreeSpaceMatrix;
use crate::geometry::{difference_points, Curve, Point2};
use crate::offline::UpdateOp;
use crate::scalar::{Scalar, Tolerance};

/// Closed axis-aligned rectangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect<T> {
    pub min: Point2<T>,
    pub max: Point2<T>,
}

impl<T: Scalar> Rect<T> {
    pub fn new(min: Point2<T>, max: Point2<T>) -> Self {
        Rect { min, max }
    }

    /// Bounding box of the disk of radius `r` around `c`.
    pub fn around(c: Point2<T>, r: T) -> Self {
        Rect::new(Point2::new(c.x - r, c.y - r), Point2::new(c.x + r, c.y + r))
    }

    pub fn spanning(a: Point2<T>, b: Point2<T>) -> Self {
        Rect::new(
            Point2::new(a.x.min(b.x), a.y.min(b.y)),
            Point2::new(a.x.max(b.x), a.y.max(b.y)),
        )
    }

    pub fn is_empty(&self) -> bool {
        !(self.min.x <= self.max.x && self.min.y <= self.max.y)
    }

    pub fn intersect(&self, o: &Rect<T>) -> Rect<T> {
        Rect::new(
            Point2::new(self.min.x.max(o.min.x), self.min.y.max(o.min.y)),
            Point2::new(self.max.x.min(o.max.x), self.max.y.min(o.max.y)),
        )
    }

    pub fn hull(&self, o: &Rect<T>) -> Rect<T> {
        if self.is_empty() {
            return *o;
        }
        if o.is_empty() {
            return *self;
        }
        Rect::new(
            Point2::new(self.min.x.min(o.min.x), self.min.y.min(o.min.y)),
            Point2::new(self.max.x.max(o.max.x), self.max.y.max(o.max.y)),
        )
    }

    pub fn expand(&self, by: T) -> Rect<T> {
        Rect::new(
            Point2::new(self.min.x - by, self.min.y - by),
            Point2::new(self.max.x + by, self.max.y + by),
        )
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    pub fn center(&self) -> Point2<T> {
        let two = T::lit(2.0);
        Point2::new(
            (self.min.x + self.max.x) / two,
            (self.min.y + self.max.y) / two,
        )
    }

    pub fn corners(&self) -> [Point2<T>; 4] {
        [
            self.min,
            Point2::new(self.max.x, self.min.y),
            self.max,
            Point2::new(self.min.x, self.max.y),
        ]
    }

    /// Squared distance from `p` to the nearest point of the rectangle.
    pub fn sq_dist_to(&self, p: Point2<T>) -> T {
        let dx = (self.min.x - p.x).max(T::zero()).max(p.x - self.max.x);
        let dy = (self.min.y - p.y).max(T::zero()).max(p.y - self.max.y);
        dx * dx + dy * dy
    }

    /// Squared distance from `p` to the farthest corner.
    pub fn sq_far_to(&self, p: Point2<T>) -> T {
        let dx = (p.x - self.min.x).abs().max((self.max.x - p.x).abs());
        let dy = (p.y - self.min.y).abs().max((self.max.y - p.y).abs());
        dx * dx + dy * dy
    }
}

/// Free-space matrix of `π` against `σ + τ`.
pub fn matrix_at<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    delta: T,
    tau: Point2<T>,
    tol: Tolerance<T>,
) -> Result<FreeSpaceMatrix> {
    if delta < T::zero() || delta.is_nan() {
        return Err(Error::NegativeDelta(delta.to_string()));
    }
    let (p, s) = (pi.points(), sigma.points());
    Ok(FreeSpaceMatrix::from_fn(p.len(), s.len(), |i, j| {
        tol.within(((p[i] - s[j]) - tau).sq_dist(&Point2::origin()), delta)
    }))
}

/// Intersection points of the radius-`r` circles around `a` and `b`.
///
/// Near-tangent pairs (within `tol` on squared distances) yield the single
/// midpoint; identical centers yield nothing.
pub fn circle_intersections<T: Scalar>(
    a: Point2<T>,
    b: Point2<T>,
    r: T,
    tol: Tolerance<T>,
) -> Vec<Point2<T>> {
    let d2 = a.sq_dist(&b);
    if d2 == T::zero() {
        return Vec::new();
    }
    let four = T::lit(4.0);
    let h2 = r * r - d2 / four;
    if h2 < -tol.value() {
        return Vec::new();
    }
    let two = T::lit(2.0);
    let mid = Point2::new((a.x + b.x) / two, (a.y + b.y) / two);
    if h2 <= T::zero() {
        return vec![mid];
    }
    let d = d2.sqrt();
    let h = h2.sqrt();
    let (ux, uy) = (-(b.y - a.y) / d, (b.x - a.x) / d);
    vec![
        Point2::new(mid.x + h * ux, mid.y + h * uy),
        Point2::new(mid.x - h * ux, mid.y - h * uy),
    ]
}

/// Points where the circle of radius `r` around `c` meets the boundary of `w`.
fn circle_rect_crossings<T: Scalar>(c: Point2<T>, r: T, w: &Rect<T>) -> Vec<Point2<T>> {
    let mut out = Vec::new();
    for x in [w.min.x, w.max.x] {
        let h2 = r * r - (x - c.x) * (x - c.x);
        if h2 >= T::zero() {
            let h = h2.sqrt();
            for y in [c.y - h, c.y + h] {
                if w.min.y <= y && y <= w.max.y {
                    out.push(Point2::new(x, y));
                }
            }
        }
    }
    for y in [w.min.y, w.max.y] {
        let h2 = r * r - (y - c.y) * (y - c.y);
        if h2 >= T::zero() {
            let h = h2.sqrt();
            for x in [c.x - h, c.x + h] {
                if w.min.x <= x && x <= w.max.x {
                    out.push(Point2::new(x, y));
                }
            }
        }
    }
    out
}

/// Uniform grid over points for fixed-radius neighbor queries.
struct Buckets {
    cell: f64,
    map: HashMap<(i64, i64), Vec<usize>>,
    len: usize,
}

impl Buckets {
    fn new<T: Scalar>(pts: &[Point2<T>], cell: f64) -> Self {
        let cell = if cell > 0.0 && cell.is_finite() {
            cell
        } else {
            1.0
        };
        let mut map: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, p) in pts.iter().enumerate() {
            map.entry(Self::key(p, cell)).or_default().push(i);
        }
        Buckets {
            cell,
            map,
            len: pts.len(),
        }
    }

    fn key<T: Scalar>(p: &Point2<T>, cell: f64) -> (i64, i64) {
        (
            (p.x.to_f64().unwrap() / cell).floor() as i64,
            (p.y.to_f64().unwrap() / cell).floor() as i64,
        )
    }

    /// Indices of points that may lie in `r` (a superset).
    fn query<T: Scalar>(&self, r: &Rect<T>) -> Vec<usize> {
        let lo = Self::key(&r.min, self.cell);
        let hi = Self::key(&r.max, self.cell);
        let cells = (hi.0 - lo.0 + 1) as f64 * (hi.1 - lo.1 + 1) as f64;
        if cells > (self.map.len().max(1) as f64) {
            return (0..self.len).collect();
        }
        let mut out = Vec::new();
        for cx in lo.0..=hi.0 {
            for cy in lo.1..=hi.1 {
                if let Some(v) = self.map.get(&(cx, cy)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out
    }
}

/// Graph on translations: arrangement vertices, representatives of disks
/// without vertices and an outer point `τ₀`, with edges along circle arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskArrangement<T> {
    pub centers: Vec<Point2<T>>,
    pub radius: T,
    pub nodes: Vec<Point2<T>>,
    pub edges: Vec<(usize, usize)>,
    /// Index of `τ₀` in `nodes`.
    pub outer: usize,
}

impl<T: Scalar> DiskArrangement<T> {
    pub fn outer_point(&self) -> Point2<T> {
        self.nodes[self.outer]
    }
}

/// Full arrangement graph of the radius-`delta` disks around `q`.
pub fn build_arrangement_graph<T: Scalar>(
    q: &[Point2<T>],
    delta: T,
    tol: Tolerance<T>,
) -> Result<DiskArrangement<T>> {
    if delta.is_nan() || delta <= T::zero() {
        return Err(Error::NonPositiveRadius(delta.to_string()));
    }
    if q.is_empty() {
        return Err(Error::Precondition("no disk centers".into()));
    }
    Ok(build_graph(q, delta, None, tol))
}

/// Arrangement graph clipped to `window`: only circles meeting the window,
/// vertices inside it, the window's corners and its crossings with circles.
/// Every face of the full arrangement that meets the window has a node in
/// its closure whose free-space matrix dominates the face's.
pub fn build_windowed_graph<T: Scalar>(
    q: &[Point2<T>],
    delta: T,
    window: Rect<T>,
    tol: Tolerance<T>,
) -> Result<DiskArrangement<T>> {
    if delta < T::zero() || delta.is_nan() {
        return Err(Error::NegativeDelta(delta.to_string()));
    }
    if q.is_empty() {
        return Err(Error::Precondition("no disk centers".into()));
    }
    Ok(build_graph(q, delta, Some(window), tol))
}

fn build_graph<T: Scalar>(
    q: &[Point2<T>],
    delta: T,
    window: Option<Rect<T>>,
    tol: Tolerance<T>,
) -> DiskArrangement<T> {
    let r_in = tol.inflated(delta);
    let slack = r_in - delta;
    // circles that matter
    let active: Vec<usize> = match &window {
        None => (0..q.len()).collect(),
        Some(w) => (0..q.len())
            .filter(|&i| {
                let c = q[i];
                w.sq_dist_to(c) <= r_in * r_in && w.sq_far_to(c) >= delta * delta - tol.value()
            })
            .collect(),
    };
    let mut nodes: Vec<Point2<T>> = Vec::new();
    let mut on_circle: Vec<Vec<usize>> = vec![Vec::new(); active.len()];
    let inside = |p: Point2<T>| window.as_ref().is_none_or(|w| w.expand(slack).contains(p));

    let mut min = Point2::new(T::infinity(), T::infinity());
    for c in q {
        min = Point2::new(min.x.min(c.x), min.y.min(c.y));
    }
    let off = if delta > T::zero() {
        T::lit(3.0) * delta
    } else {
        T::one()
    };
    nodes.push(Point2::new(min.x - off, min.y - off));

    if delta > T::zero() {
        let pts: Vec<Point2<T>> = active.iter().map(|&i| q[i]).collect();
        let buckets = Buckets::new(&pts, (r_in * T::lit(2.0)).to_f64().unwrap());
        for a in 0..pts.len() {
            let reach = Rect::around(pts[a], r_in * T::lit(2.0));
            let mut near = buckets.query(&reach);
            near.retain(|&b| b > a);
            near.sort_unstable();
            for b in near {
                for p in circle_intersections(pts[a], pts[b], delta, tol) {
                    if inside(p) {
                        on_circle[a].push(nodes.len());
                        on_circle[b].push(nodes.len());
                        nodes.push(p);
                    }
                }
            }
        }
    }
    let mut border: Vec<usize> = Vec::new();
    if let Some(w) = &window {
        for (a, &i) in active.iter().enumerate() {
            for p in circle_rect_crossings(q[i], delta, w) {
                on_circle[a].push(nodes.len());
                border.push(nodes.len());
                nodes.push(p);
            }
        }
        for c in w.corners() {
            border.push(nodes.len());
            nodes.push(c);
        }
    }
    for (a, &i) in active.iter().enumerate() {
        if on_circle[a].is_empty() {
            let c = q[i];
            let rep = Point2::new(c.x + delta, c.y);
            if window.is_none() || inside(rep) || delta == T::zero() {
                on_circle[a].push(nodes.len());
                nodes.push(rep);
            }
        }
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut link = |list: &mut Vec<usize>, key: &dyn Fn(&Point2<T>) -> T| {
        list.sort_by(|&u, &v| {
            key(&nodes[u])
                .partial_cmp(&key(&nodes[v]))
                .unwrap()
                .then(u.cmp(&v))
        });
        for w in list.windows(2) {
            if w[0] != w[1] {
                edges.push((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
    };
    for (a, &i) in active.iter().enumerate() {
        let c = q[i];
        link(&mut on_circle[a], &|p: &Point2<T>| {
            (p.y - c.y).atan2(p.x - c.x)
        });
    }
    if let Some(w) = &window {
        // walk the window boundary counter-clockwise by perimeter coordinate
        let (wx, wy) = (w.max.x - w.min.x, w.max.y - w.min.y);
        let w = *w;
        let perim = move |p: &Point2<T>| {
            if p.y == w.min.y {
                p.x - w.min.x
            } else if p.x == w.max.x {
                wx + (p.y - w.min.y)
            } else if p.y == w.max.y {
                wx + wy + (w.max.x - p.x)
            } else {
                wx + wy + wx + (w.max.y - p.y)
            }
        };
        link(&mut border, &perim);
    }
    edges.sort_unstable();
    edges.dedup();

    // join every component to τ₀ through its lexicographically smallest node
    let n = nodes.len();
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(d: &mut [usize], mut x: usize) -> usize {
        while d[x] != x {
            d[x] = d[d[x]];
            x = d[x];
        }
        x
    }
    for &(u, v) in &edges {
        let (a, b) = (find(&mut dsu, u), find(&mut dsu, v));
        if a != b {
            dsu[a] = b;
        }
    }
    let mut best: HashMap<usize, usize> = HashMap::new();
    for v in 1..n {
        let root = find(&mut dsu, v);
        let e = best.entry(root).or_insert(v);
        if nodes[v].lex_cmp(&nodes[*e]).is_lt() {
            *e = v;
        }
    }
    let tau0_root = find(&mut dsu, 0);
    let mut extra: Vec<(usize, usize)> = best
        .into_iter()
        .filter(|&(root, _)| root != tau0_root)
        .map(|(_, v)| (0, v))
        .collect();
    extra.sort_unstable();
    edges.extend(extra);
    edges.sort_unstable();
    edges.dedup();

    DiskArrangement {
        centers: active.iter().map(|&i| q[i]).collect(),
        radius: delta,
        nodes,
        edges,
        outer: 0,
    }
}

/// Closed walk from `root` through a spanning tree with doubled edges.
pub fn euler_walk_edges(
    node_count: usize,
    edges: &[(usize, usize)],
    root: usize,
) -> Result<Vec<usize>> {
    if root >= node_count {
        return Err(Error::Precondition("root out of range".into()));
    }
    let mut adj = vec![Vec::new(); node_count];
    for &(u, v) in edges {
        if u >= node_count || v >= node_count {
            return Err(Error::Precondition("edge endpoint out of range".into()));
        }
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    // breadth-first spanning tree
    let mut parent = vec![usize::MAX; node_count];
    let mut children = vec![Vec::new(); node_count];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    let mut seen = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                children[u].push(v);
                queue.push_back(v);
                seen += 1;
            }
        }
    }
    if seen != node_count {
        return Err(Error::Disconnected);
    }
    let mut walk = vec![root];
    let mut stack = vec![(root, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (u, i) = *top;
        if i < children[u].len() {
            top.1 += 1;
            let v = children[u][i];
            walk.push(v);
            stack.push((v, 0));
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                walk.push(p);
            }
        }
    }
    Ok(walk)
}

/// Euler walk over a spanning tree of `g`, starting and ending at `τ₀`.
pub fn euler_walk<T: Scalar>(g: &DiskArrangement<T>) -> Result<Vec<usize>> {
    euler_walk_edges(g.nodes.len(), &g.edges, g.outer)
}

/// Bit flips turning the matrix at the first walk node into the matrix at
/// each following node.
#[derive(Clone, Debug, PartialEq)]
pub struct UpdateStream {
    pub initial: FreeSpaceMatrix,
    pub updates: Vec<UpdateOp>,
    /// `checkpoints[i]` = number of updates applied once walk node `i` is reached.
    pub checkpoints: Vec<usize>,
}

/// Difference points with the matrix cells they control.
struct CellIndex<T> {
    centers: Vec<Point2<T>>,
    cells: Vec<Vec<(usize, usize)>>,
    buckets: Buckets,
}

impl<T: Scalar> CellIndex<T> {
    fn new(pi: &Curve<T>, sigma: &Curve<T>, r: T) -> Self {
        let centers = difference_points(pi, sigma);
        let mut cells = vec![Vec::new(); centers.len()];
        for (i, &p) in pi.points().iter().enumerate() {
            for (j, &s) in sigma.points().iter().enumerate() {
                let d = p - s;
                let k = centers
                    .binary_search_by(|c| c.lex_cmp(&d))
                    .expect("difference point present");
                cells[k].push((i, j));
            }
        }
        let buckets = Buckets::new(&centers, (r * T::lit(2.0)).to_f64().unwrap());
        CellIndex {
            centers,
            cells,
            buckets,
        }
    }
}

/// Updates along `walk`: each step first clears the bits that turn off,
/// then sets the bits that turn on.
pub fn update_sequence<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    delta: T,
    nodes: &[Point2<T>],
    walk: &[usize],
    tol: Tolerance<T>,
) -> Result<UpdateStream> {
    if walk.is_empty() {
        return Err(Error::Precondition("empty walk".into()));
    }
    let initial = matrix_at(pi, sigma, delta, nodes[walk[0]], tol)?;
    let r = tol.inflated(delta);
    let index = CellIndex::new(pi, sigma, r);
    let inside =
        |tau: Point2<T>, c: Point2<T>| tol.within((c - tau).sq_dist(&Point2::origin()), delta);
    let mut updates = Vec::new();
    let mut checkpoints = vec![0];
    let mut on = Vec::new();
    #[cfg(debug_assertions)]
    let mut current = initial.clone();
    for w in walk.windows(2) {
        let (u, v) = (nodes[w[0]], nodes[w[1]]);
        if u != v {
            let bx = Rect::spanning(u, v);
            on.clear();
            let mut cand = index.buckets.query(&bx.expand(r));
            cand.sort_unstable();
            for k in cand {
                let c = index.centers[k];
                if bx.sq_dist_to(c) > r * r || bx.sq_far_to(c) < delta * delta - tol.value() {
                    continue;
                }
                let (a, b) = (inside(u, c), inside(v, c));
                if a && !b {
                    for &(i, j) in &index.cells[k] {
                        updates.push(UpdateOp::new(i + 1, j + 1, false));
                    }
                } else if !a && b {
                    on.extend(
                        index.cells[k]
                            .iter()
                            .map(|&(i, j)| UpdateOp::new(i + 1, j + 1, true)),
                    );
                }
            }
            updates.extend_from_slice(&on);
        }
        #[cfg(debug_assertions)]
        {
            for op in &updates[*checkpoints.last().unwrap()..] {
                current.set_bit(op.pos, op.bit);
            }
            debug_assert_eq!(current, matrix_at(pi, sigma, delta, v, tol)?);
        }
        checkpoints.push(updates.len());
    }
    Ok(UpdateStream {
        initial,
        updates,
        checkpoints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    #[test]
    fn intersections() {
        let tol = Tolerance::default();
        let v = circle_intersections(pt(0.0, 0.0), pt(1.0, 0.0), 1.0, tol);
        assert_eq!(v.len(), 2);
        for p in &v {
            assert!((p.x - 0.5).abs() < 1e-12);
            assert!((p.y.abs() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        }
        assert_eq!(
            circle_intersections(pt(0.0, 0.0), pt(2.0, 0.0), 1.0, tol),
            vec![pt(1.0, 0.0)]
        );
        assert!(circle_intersections(pt(0.0, 0.0), pt(3.0, 0.0), 1.0, tol).is_empty());
        assert!(circle_intersections(pt(0.0, 0.0), pt(0.0, 0.0), 1.0, tol).is_empty());
    }

    #[test]
    fn rect_crossings() {
        let w = Rect::new(pt(-1.0, -1.0), pt(1.0, 1.0));
        let v = circle_rect_crossings(pt(2.0, 0.0), 1.5, &w);
        assert_eq!(v.len(), 2);
        for p in v {
            assert_eq!(p.y.abs(), 1.0);
            assert!(((p - pt(2.0, 0.0)).norm() - 1.5).abs() < 1e-12);
        }
    }
}
