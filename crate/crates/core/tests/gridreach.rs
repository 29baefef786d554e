mod common;

use std::collections::BTreeSet;

use common::*;
use fretrans::gridreach::{construct_ds, GridPos, Keys, ReachDS};
use fretrans::FreeSpaceMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gp(x: usize, y: usize) -> GridPos {
    GridPos::new(x, y)
}

/// Checks both characterizations on every block of `ds`.
fn check_characterization(ds: &ReachDS) {
    let m = ds.matrix();
    let k: Keys = ds.keys();
    for b in ds.tree().blocks() {
        let info = ds.info(b.id);
        let terms: Vec<GridPos> = ds
            .terminals()
            .iter()
            .copied()
            .filter(|&t| b.contains(t))
            .collect();
        let mut inputs = b.minus_positions();
        inputs.extend(terms.iter().copied());
        let mut outputs = b.plus_positions();
        outputs.extend(terms.iter().copied());
        for &p in &inputs {
            let ip = info.interval(b, p).unwrap();
            for q in b.plus_positions() {
                let truth = leads_to(m, b, p, q);
                let claim = ip.contains(k.ind(q)) && info.level(b, q).unwrap() <= k.l(p);
                assert_eq!(truth, claim, "forward {p:?} -> {q:?} in {b:?}\n{m:?}");
            }
        }
        for p in b.minus_positions() {
            for &q in &outputs {
                let truth = leads_to(m, b, p, q);
                let iq = info.rev_interval(b, q).unwrap();
                let claim = iq.contains(k.ind(p)) && info.rev_level(b, p).unwrap() <= k.l_rev(q);
                assert_eq!(truth, claim, "reverse {p:?} -> {q:?} in {b:?}\n{m:?}");
            }
        }
        // levels are minima over the whole block
        for q in b.plus_positions() {
            let best = b
                .positions()
                .filter(|&p| leads_to(m, b, p, q))
                .map(|p| k.l(p))
                .min()
                .unwrap();
            assert_eq!(info.level(b, q), Some(best));
        }
        for p in b.minus_positions() {
            let best = b
                .positions()
                .filter(|&q| leads_to(m, b, p, q))
                .map(|q| k.l_rev(q))
                .min()
                .unwrap();
            assert_eq!(info.rev_level(b, p), Some(best));
        }
    }
}

#[test]
fn characterization_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for round in 0..300 {
        let n = [3, 5, 9][round % 3];
        let m = random_matrix(&mut rng, n);
        let k = rng.gen_range(0..6);
        let t = random_positions(&mut rng, n, k);
        let ds = construct_ds(m, t).unwrap();
        check_characterization(&ds);
    }
}

#[test]
fn leaf_examples() {
    let ones = construct_ds(FreeSpaceMatrix::ones(3, 3), []).unwrap();
    let zeros = construct_ds(FreeSpaceMatrix::zeros(3, 3), []).unwrap();
    let k = Keys::new(3);
    let leaf = *ones.tree().level(2).first().unwrap();
    assert_eq!((leaf.x0, leaf.y0, leaf.x1, leaf.y1), (1, 1, 2, 2));
    let i = ones.info(leaf.id).interval(&leaf, gp(1, 1)).unwrap();
    for q in leaf.plus_positions() {
        assert!(i.contains(k.ind(q)));
    }
    let i = zeros.info(leaf.id).interval(&leaf, gp(1, 1)).unwrap();
    assert!(i.contains(k.ind(gp(2, 2))));
    // an output that is also an input reaches itself
    for q in leaf.plus_positions() {
        if let Some(ip) = zeros.info(leaf.id).interval(&leaf, q) {
            assert!(ip.contains(k.ind(q)));
        }
    }
}

#[test]
fn root_merge_examples() {
    let k = Keys::new(3);
    let ones = construct_ds(FreeSpaceMatrix::ones(3, 3), []).unwrap();
    let root = *ones.tree().root();
    let i = ones.info(0).interval(&root, gp(1, 1)).unwrap();
    assert_eq!((i.lo, i.hi), (-9, 13));

    let zeros = construct_ds(FreeSpaceMatrix::zeros(3, 3), []).unwrap();
    assert!(zeros.info(0).interval(&root, gp(1, 1)).unwrap().is_empty());
    assert_eq!(zeros.info(0).level(&root, gp(3, 3)), Some(4));
    assert_eq!(k.l(gp(2, 2)), 4);
}

#[test]
fn construct_examples() {
    let ds = construct_ds(FreeSpaceMatrix::ones(5, 5), [gp(1, 1), gp(5, 5)]).unwrap();
    let root = *ds.tree().root();
    let i = ds.info(0).interval(&root, gp(1, 1)).unwrap();
    assert!(i.contains(ds.keys().ind(gp(5, 5))));

    let ds = construct_ds(FreeSpaceMatrix::zeros(5, 5), []).unwrap();
    assert!(!ds.reach_query(&[gp(1, 1), gp(5, 5)]).unwrap());

    let diag = FreeSpaceMatrix::from_fn(5, 5, |i, j| i == j);
    let ds = construct_ds(diag, []).unwrap();
    assert!(ds.reach_query(&[gp(1, 1), gp(5, 5)]).unwrap());

    assert!(construct_ds(FreeSpaceMatrix::ones(4, 4), []).is_err());
}

#[test]
fn query_examples() {
    let mut m = FreeSpaceMatrix::ones(3, 3);
    m.set(0, 0, false);
    m.set(2, 2, false);
    let ds = construct_ds(m, []).unwrap();
    assert!(ds.reach_query(&[gp(1, 1), gp(3, 3)]).unwrap());
    assert!(!ds.reach_query(&[]).unwrap());

    let ds = construct_ds(FreeSpaceMatrix::zeros(3, 3), [gp(2, 2)]).unwrap();
    assert!(!ds.reach_query(&[gp(1, 1), gp(3, 3)]).unwrap());
    assert!(ds.reach_query(&[gp(1, 1), gp(2, 2), gp(3, 3)]).unwrap());
    assert!(ds.reach_query(&[gp(1, 2)]).is_err());
}

#[test]
fn reach_query_matches_overlay() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..1000 {
        let n = [3, 5, 9, 17][round % 4];
        let m = random_matrix(&mut rng, n);
        let k = rng.gen_range(0..=8);
        let t = random_positions(&mut rng, n, k);
        let ds = construct_ds(m.clone(), t.clone()).unwrap();
        let all: Vec<GridPos> = ds.terminals().iter().copied().collect();
        for _ in 0..3 {
            let f: Vec<GridPos> = all.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
            assert_eq!(
                ds.reach_query(&f).unwrap(),
                overlay_path(&m, &f),
                "{m:?} F={f:?}"
            );
        }
    }
}

#[test]
fn reach_examples_and_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let ds = construct_ds(FreeSpaceMatrix::ones(9, 9), [gp(4, 4)]).unwrap();
    assert!(ds
        .reach(0, &BTreeSet::new(), &BTreeSet::new())
        .unwrap()
        .is_empty());
    let single: BTreeSet<GridPos> = [gp(4, 4)].into();
    assert_eq!(ds.reach(0, &single, &single).unwrap(), single);

    for _ in 0..300 {
        let n = 9;
        let m = random_matrix(&mut rng, n);
        let k = rng.gen_range(1..=6);
        let t = random_positions(&mut rng, n, k);
        let ds = construct_ds(m.clone(), t).unwrap();
        let terms: Vec<GridPos> = ds.terminals().iter().copied().collect();
        for b in ds.tree().blocks() {
            if !rng.gen_bool(0.2) {
                continue;
            }
            let inside: Vec<GridPos> = terms.iter().copied().filter(|&t| b.contains(t)).collect();
            let mut f = BTreeSet::new();
            let mut s = BTreeSet::new();
            for t in inside {
                if rng.gen_bool(0.7) {
                    f.insert(t);
                    if rng.gen_bool(0.5) {
                        s.insert(t);
                    }
                }
            }
            let got = ds.reach(b.id, &s, &f).unwrap();
            assert_eq!(got, chain_closure(&m, b, &s, &f), "block {b:?}\n{m:?}");
        }
    }
}

#[test]
fn single_step_matches_direct() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut nontrivial = 0;
    for _ in 0..400 {
        let n = 9;
        let m = random_matrix(&mut rng, n);
        let t = random_positions(&mut rng, n, 10);
        let ds = construct_ds(m.clone(), t).unwrap();
        for b in ds.tree().blocks().iter().filter(|b| !b.is_leaf()) {
            let (lo, hi) = (b.lo_child(), b.hi_child());
            let cand: Vec<GridPos> = ds
                .terminals()
                .iter()
                .copied()
                .filter(|&p| b.contains(p) && !b.on_mid(p))
                .collect();
            let s: BTreeSet<GridPos> = cand
                .iter()
                .copied()
                .filter(|&p| lo.contains(p))
                .take(4)
                .collect();
            let f: BTreeSet<GridPos> = cand
                .iter()
                .copied()
                .filter(|&p| hi.contains(p))
                .take(4)
                .collect();
            let want: BTreeSet<GridPos> = f
                .iter()
                .copied()
                .filter(|&q| s.iter().any(|&p| leads_to(&m, b, p, q)))
                .collect();
            nontrivial += usize::from(!want.is_empty());
            assert_eq!(
                ds.single_step_reach(b.id, &s, &f).unwrap(),
                want,
                "block {b:?}\n{m:?}"
            );
        }
    }
    assert!(nontrivial > 50);

    let blocked = FreeSpaceMatrix::from_fn(9, 9, |_, j| j != 4);
    let ds = construct_ds(blocked, [gp(2, 2), gp(8, 8)]).unwrap();
    let s: BTreeSet<GridPos> = [gp(2, 2)].into();
    let f: BTreeSet<GridPos> = [gp(8, 8)].into();
    assert!(ds.single_step_reach(0, &s, &f).unwrap().is_empty());
    assert!(ds
        .single_step_reach(0, &BTreeSet::new(), &f)
        .unwrap()
        .is_empty());
    assert!(ds.single_step_reach(0, &f, &s).is_err());
}

#[test]
fn update_matches_fresh_build() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for round in 0..200 {
        let n = [5, 9, 17][round % 3];
        let mut m = random_matrix(&mut rng, n);
        let t = random_positions(&mut rng, n, 4);
        let mut ds = construct_ds(m.clone(), t).unwrap();
        for _ in 0..3 {
            let k = rng.gen_range(0..6);
            let mut delta: Vec<(GridPos, bool)> = Vec::new();
            for p in random_positions(&mut rng, n, k) {
                delta.push((p, rng.gen_bool(0.5)));
            }
            let k = rng.gen_range(0..6);
            let t2 = random_positions(&mut rng, n, k);
            for &(p, b) in &delta {
                m.set(p.x - 1, p.y - 1, b);
            }
            let x: BTreeSet<GridPos> = delta
                .iter()
                .map(|d| d.0)
                .chain(ds.terminals().iter().copied())
                .chain(t2.iter().copied())
                .chain([gp(1, 1), gp(n, n)])
                .collect();
            ds.update(&delta, t2.clone()).unwrap();
            let fresh = construct_ds(m.clone(), t2).unwrap();
            assert_eq!(ds.matrix(), fresh.matrix());
            assert_eq!(ds.terminals(), fresh.terminals());
            assert_eq!(ds.infos(), fresh.infos());
            assert!(ds.last_dirty_count() <= ds.dirty_bound(x.len()));
        }
    }
}

#[test]
fn update_touches_only_dirty_blocks() {
    let m = FreeSpaceMatrix::ones(17, 17);
    let mut ds = construct_ds(m, []).unwrap();
    let before = ds.clone();
    ds.update(&[], []).unwrap();
    assert_eq!(before.infos(), ds.infos());

    ds.update(&[(gp(16, 3), false)], []).unwrap();
    let far = ds
        .tree()
        .blocks()
        .iter()
        .find(|b| {
            b.level == 4
                && !b.contains(gp(16, 3))
                && !b.contains(gp(1, 1))
                && !b.contains(gp(17, 17))
        })
        .unwrap();
    assert_eq!(before.info(far.id), ds.info(far.id));
    assert!(ds.last_dirty_count() < ds.tree().len());
}
