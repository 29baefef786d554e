//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fretrans::gridreach::{Block, GridPos};
use fretrans::{monotone_path_exists, FreeSpaceMatrix};
use rand::Rng;

/// `p ⇝ q` inside `b` by a forward sweep over the rectangle spanned by `p`
/// and `q`: a cell is reached if a reached predecessor is `p` itself or free.
pub fn leads_to(m: &FreeSpaceMatrix, b: &Block, p: GridPos, q: GridPos) -> bool {
    if !b.contains(p) || !b.contains(q) || q.x < p.x || q.y < p.y {
        return false;
    }
    let (h, w) = (q.x - p.x + 1, q.y - p.y + 1);
    let mut r = vec![false; h * w];
    r[0] = true;
    for dx in 0..h {
        for dy in 0..w {
            if dx == 0 && dy == 0 {
                continue;
            }
            let mut ok = false;
            for (ax, ay) in [(1, 0), (0, 1), (1, 1)] {
                if dx >= ax && dy >= ay {
                    let (px, py) = (dx - ax, dy - ay);
                    let open = (px == 0 && py == 0) || m.get(p.x + px - 1, p.y + py - 1);
                    ok |= r[px * w + py] && open;
                }
            }
            r[dx * w + dy] = ok;
        }
    }
    r[h * w - 1]
}

/// Monotone path from corner to corner with `free` overlaid as 1-entries.
pub fn overlay_path(m: &FreeSpaceMatrix, free: &[GridPos]) -> bool {
    let mut o = m.clone();
    for &p in free {
        o.set(p.x - 1, p.y - 1, true);
    }
    monotone_path_exists(&o)
}

/// Closure of `s` under `⇝` restricted to `f`.
pub fn chain_closure(
    m: &FreeSpaceMatrix,
    b: &Block,
    s: &BTreeSet<GridPos>,
    f: &BTreeSet<GridPos>,
) -> BTreeSet<GridPos> {
    let mut reached: Vec<GridPos> = s.iter().copied().collect();
    let mut head = 0;
    while head < reached.len() {
        let u = reached[head];
        head += 1;
        for &t in f {
            if !reached.contains(&t) && leads_to(m, b, u, t) {
                reached.push(t);
            }
        }
    }
    reached.into_iter().collect()
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> FreeSpaceMatrix {
    let density = rng.gen_range(0.35..0.95);
    FreeSpaceMatrix::from_fn(n, n, |_, _| rng.gen_bool(density))
}

pub fn random_positions(rng: &mut impl Rng, n: usize, k: usize) -> Vec<GridPos> {
    let mut v: Vec<GridPos> = (0..k)
        .map(|_| GridPos::new(rng.gen_range(1..=n), rng.gen_range(1..=n)))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}
