//! Decision and value of the discrete Fréchet distance under translation.
//!
//! The decision runs the arrangement walk through the offline reachability
//! solver. The value is the smallest critical radius (half pairwise
//! distances and circumradii of difference points) the decision accepts,
//! found by binary search.

use std::ops::ControlFlow;

use crate::arrangement::{
    build_arrangement_graph, build_windowed_graph, circle_intersections, euler_walk, matrix_at,
    update_sequence, Rect,
};
use crate::error::{Error, Result};
use crate::frechet::monotone_path_exists;
use crate::geometry::{difference_points, Curve, Point2};
use crate::offline::{offline_grid_reachability_until, ChunkConfig};
use crate::scalar::{Scalar, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecideOptions {
    /// Restrict the arrangement to the bounding box every feasible
    /// translation must lie in.
    pub prune: bool,
    pub chunk: Option<ChunkConfig>,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            prune: true,
            chunk: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decision<T> {
    pub feasible: bool,
    /// A translation of `σ` achieving distance `<= δ`.
    pub witness: Option<Point2<T>>,
    /// Length of the update prefix at which reachability first held.
    pub prefix: Option<usize>,
}

impl<T> Decision<T> {
    fn no() -> Self {
        Decision {
            feasible: false,
            witness: None,
            prefix: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TranslationResult<T> {
    pub value: T,
    pub witness: Point2<T>,
    pub prefix: usize,
}

fn squared<T: Scalar>(pi: &Curve<T>, sigma: &Curve<T>) -> (Curve<T>, Curve<T>) {
    let n = pi.len().max(sigma.len());
    (pi.padded_to(n), sigma.padded_to(n))
}

/// Box containing every translation `τ` with `δ_F(π, σ + τ) <= δ`, or
/// `None` if there is provably none.
///
/// Starts from the disks of the two corner cells and repeatedly shrinks to
/// the hull of the disks reachable in every row and every column.
pub fn feasible_window<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    delta: T,
    tol: Tolerance<T>,
) -> Option<Rect<T>> {
    let r = tol.inflated(delta);
    let (p, s) = (pi.points(), sigma.points());
    let disk = |i: usize, j: usize| Rect::around(p[i] - s[j], r);
    let mut w = disk(0, 0).intersect(&disk(p.len() - 1, s.len() - 1));
    for _ in 0..64 {
        if w.is_empty() {
            return None;
        }
        let prev = w;
        for i in 0..p.len() {
            let mut h = Rect::new(
                Point2::new(T::infinity(), T::infinity()),
                Point2::new(T::neg_infinity(), T::neg_infinity()),
            );
            for j in 0..s.len() {
                let c = w.intersect(&disk(i, j));
                if !c.is_empty() {
                    h = h.hull(&c);
                }
            }
            if h.is_empty() {
                return None;
            }
            w = h;
        }
        for j in 0..s.len() {
            let mut h = Rect::new(
                Point2::new(T::infinity(), T::infinity()),
                Point2::new(T::neg_infinity(), T::neg_infinity()),
            );
            for i in 0..p.len() {
                let c = w.intersect(&disk(i, j));
                if !c.is_empty() {
                    h = h.hull(&c);
                }
            }
            if h.is_empty() {
                return None;
            }
            w = h;
        }
        if w == prev {
            break;
        }
    }
    Some(w)
}

/// Is there a translation `τ` with `δ_F(π, σ + τ) <= δ`?
pub fn decide_translation<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    delta: T,
    tol: Tolerance<T>,
) -> Result<Decision<T>> {
    decide_translation_with(pi, sigma, delta, tol, DecideOptions::default())
}

pub fn decide_translation_with<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    delta: T,
    tol: Tolerance<T>,
    opts: DecideOptions,
) -> Result<Decision<T>> {
    if delta < T::zero() || delta.is_nan() {
        return Err(Error::NegativeDelta(delta.to_string()));
    }
    let (pi, sigma) = squared(pi, sigma);
    let q = difference_points(&pi, &sigma);
    let graph = if opts.prune {
        match feasible_window(&pi, &sigma, delta, tol) {
            None => return Ok(Decision::no()),
            Some(w) => build_windowed_graph(&q, delta, w, tol)?,
        }
    } else if delta > T::zero() {
        build_arrangement_graph(&q, delta, tol)?
    } else {
        let mut w = Rect::around(q[0], T::zero());
        for &c in &q {
            w = w.hull(&Rect::around(c, T::zero()));
        }
        build_windowed_graph(&q, delta, w, tol)?
    };
    let walk = euler_walk(&graph)?;
    let stream = update_sequence(&pi, &sigma, delta, &graph.nodes, &walk, tol)?;
    if monotone_path_exists(&stream.initial) {
        return Ok(Decision {
            feasible: true,
            witness: Some(graph.nodes[walk[0]]),
            prefix: Some(0),
        });
    }
    let mut first = None;
    offline_grid_reachability_until(&stream.initial, &stream.updates, opts.chunk, |i, ans| {
        if ans {
            first = Some(i + 1);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    let Some(prefix) = first else {
        return Ok(Decision::no());
    };
    // flips within a step clear bits before setting any, so the first
    // reachable prefix is dominated by the matrix at the step's target node
    let step = stream.checkpoints.partition_point(|&c| c < prefix);
    Ok(Decision {
        feasible: true,
        witness: Some(graph.nodes[walk[step]]),
        prefix: Some(prefix),
    })
}

fn circumradius<T: Scalar>(a: Point2<T>, b: Point2<T>, c: Point2<T>) -> Option<T> {
    let (ab, bc, ca) = ((a - b).norm(), (b - c).norm(), (c - a).norm());
    let cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let scale = (ab * ca).max(T::min_positive_value());
    if cross.abs() <= T::epsilon() * T::lit(16.0) * scale {
        return None;
    }
    Some(ab * bc * ca / (T::lit(2.0) * cross.abs()))
}

/// `{0}` ∪ half pairwise distances ∪ circumradii of non-collinear triples
/// of difference points, ascending, merged within `tol`.
pub fn critical_values<T: Scalar>(pi: &Curve<T>, sigma: &Curve<T>, tol: Tolerance<T>) -> Vec<T> {
    let q = difference_points(pi, sigma);
    let two = T::lit(2.0);
    let mut v = vec![T::zero()];
    for a in 0..q.len() {
        for b in a + 1..q.len() {
            v.push((q[a] - q[b]).norm() / two);
            for c in b + 1..q.len() {
                if let Some(r) = circumradius(q[a], q[b], q[c]) {
                    v.push(r);
                }
            }
        }
    }
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<T> = Vec::with_capacity(v.len());
    for x in v {
        if out.last().is_none_or(|&l| x - l > tol.value()) {
            out.push(x);
        }
    }
    out
}

/// Smallest critical value accepted by the decision procedure.
pub fn compute_translation_distance<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    tol: Tolerance<T>,
) -> Result<TranslationResult<T>> {
    let cands = critical_values(pi, sigma, tol);
    let (mut lo, mut hi) = (0usize, cands.len());
    let mut best: Option<(T, Decision<T>)> = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let d = decide_translation(pi, sigma, cands[mid], tol)?;
        if d.feasible {
            best = Some((cands[mid], d));
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let (value, d) = best.ok_or(Error::NoFeasibleValue)?;
    Ok(TranslationResult {
        value,
        witness: d.witness.unwrap(),
        prefix: d.prefix.unwrap(),
    })
}

/// Candidate translations: every difference point and every pairwise
/// intersection of the radius-`δ` circles around them.
pub fn candidate_translations<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    delta: T,
    tol: Tolerance<T>,
) -> Vec<Point2<T>> {
    let q = difference_points(pi, sigma);
    let mut out = q.clone();
    if delta > T::zero() {
        for a in 0..q.len() {
            for b in a + 1..q.len() {
                out.extend(circle_intersections(q[a], q[b], delta, tol));
            }
        }
    }
    out
}

/// Tries every candidate translation with the baseline decision.
pub fn decide_bruteforce<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    delta: T,
    tol: Tolerance<T>,
) -> Result<bool> {
    if delta < T::zero() || delta.is_nan() {
        return Err(Error::NegativeDelta(delta.to_string()));
    }
    for tau in candidate_translations(pi, sigma, delta, tol) {
        if monotone_path_exists(&matrix_at(pi, sigma, delta, tau, tol)?) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Linear scan of the critical values with [`decide_bruteforce`].
pub fn value_bruteforce<T: Scalar>(
    pi: &Curve<T>,
    sigma: &Curve<T>,
    tol: Tolerance<T>,
) -> Result<T> {
    for d in critical_values(pi, sigma, tol) {
        if decide_bruteforce(pi, sigma, d, tol)? {
            return Ok(d);
        }
    }
    Err(Error::NoFeasibleValue)
}
