//! Plain-text formats for curves, matrices, position sets, update streams
//! and 4-OV instances.
//!
//! Every `format_*` output is accepted by the matching `parse_*`. Reals are
//! written with Rust's shortest round-trip representation.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::frechet::FreeSpaceMatrix;
use crate::geometry::{Curve, Point2};
use crate::gridreach::GridPos;
use crate::hardness::OvInstance;
use crate::offline::UpdateOp;
use crate::scalar::Scalar;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn fields<const K: usize>(line: usize, s: &str) -> Result<[&str; K]> {
    let v: Vec<&str> = s.split_whitespace().collect();
    v.try_into()
        .map_err(|v: Vec<&str>| perr(line, format!("expected {K} fields, found {}", v.len())))
}

fn num<T: FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| perr(line, format!("invalid number {s:?}")))
}

fn header<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(usize, &'a str)> {
    it.next().ok_or_else(|| perr(1, "missing header"))
}

fn expect_end<'a>(mut it: impl Iterator<Item = (usize, &'a str)>) -> Result<()> {
    match it.next() {
        Some((l, _)) => Err(perr(l, "unexpected trailing line")),
        None => Ok(()),
    }
}

pub fn parse_curve<T: Scalar + FromStr>(text: &str) -> Result<Curve<T>> {
    let mut it = lines(text);
    let (l, h) = header(&mut it)?;
    let [n] = fields(l, h)?;
    let n: usize = num(l, n)?;
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let (l, s) = it
            .next()
            .ok_or_else(|| perr(l + pts.len() + 1, format!("expected {n} points")))?;
        let [x, y] = fields(l, s)?;
        pts.push(Point2::new(num(l, x)?, num(l, y)?));
    }
    expect_end(it)?;
    Curve::new(pts)
}

pub fn format_curve<T: Scalar>(c: &Curve<T>) -> String {
    let mut s = format!("{}\n", c.len());
    for p in c.points() {
        writeln!(s, "{} {}", p.x, p.y).unwrap();
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<FreeSpaceMatrix> {
    let mut it = lines(text);
    let (l, h) = header(&mut it)?;
    let [n] = fields(l, h)?;
    let n: usize = num(l, n)?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (l, s) = it
            .next()
            .ok_or_else(|| perr(l + rows.len() + 1, format!("expected {n} rows")))?;
        if s.len() != n || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(perr(l, format!("expected {n} characters over {{0,1}}")));
        }
        rows.push(s);
    }
    expect_end(it)?;
    if n == 0 {
        return Err(perr(l, "empty matrix"));
    }
    FreeSpaceMatrix::from_rows(&rows)
}

pub fn format_matrix(m: &FreeSpaceMatrix) -> String {
    let mut s = format!("{}\n", m.rows());
    for r in m.row_strings() {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

/// Lines `x y`, 1-based.
pub fn parse_positions(text: &str) -> Result<Vec<GridPos>> {
    lines(text)
        .map(|(l, s)| {
            let [x, y] = fields(l, s)?;
            Ok(GridPos::new(num(l, x)?, num(l, y)?))
        })
        .collect()
}

pub fn format_positions(ps: &[GridPos]) -> String {
    ps.iter().map(|p| format!("{} {}\n", p.x, p.y)).collect()
}

/// Header `n U`, then `U` lines `x y b`.
pub fn parse_updates(text: &str) -> Result<(usize, Vec<UpdateOp>)> {
    let mut it = lines(text);
    let (l, h) = header(&mut it)?;
    let [n, u] = fields(l, h)?;
    let (n, u): (usize, usize) = (num(l, n)?, num(l, u)?);
    let mut ops = Vec::with_capacity(u);
    for _ in 0..u {
        let (l, s) = it
            .next()
            .ok_or_else(|| perr(l + ops.len() + 1, format!("expected {u} updates")))?;
        let [x, y, b] = fields(l, s)?;
        let (x, y): (usize, usize) = (num(l, x)?, num(l, y)?);
        if x == 0 || y == 0 || x > n || y > n {
            return Err(perr(l, format!("position ({x}, {y}) outside 1..={n}")));
        }
        let bit = match b {
            "0" => false,
            "1" => true,
            _ => return Err(perr(l, format!("bit must be 0 or 1, got {b:?}"))),
        };
        ops.push(UpdateOp::new(x, y, bit));
    }
    expect_end(it)?;
    Ok((n, ops))
}

pub fn format_updates(n: usize, ops: &[UpdateOp]) -> String {
    let mut s = format!("{n} {}\n", ops.len());
    for op in ops {
        writeln!(s, "{} {} {}", op.pos.x, op.pos.y, u8::from(op.bit)).unwrap();
    }
    s
}

/// Header `N D`, then four blocks of `N` lines of `D` bits.
pub fn parse_ov(text: &str) -> Result<OvInstance> {
    let mut it = lines(text);
    let (l, h) = header(&mut it)?;
    let [n, d] = fields(l, h)?;
    let (n, d): (usize, usize) = (num(l, n)?, num(l, d)?);
    let mut sets: [Vec<Vec<bool>>; 4] = Default::default();
    let mut last = l;
    for set in sets.iter_mut() {
        for _ in 0..n {
            let (l, s) = it
                .next()
                .ok_or_else(|| perr(last + 1, format!("expected {} vectors", 4 * n)))?;
            last = l;
            if s.len() != d || !s.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(perr(l, format!("expected {d} characters over {{0,1}}")));
            }
            set.push(s.bytes().map(|b| b == b'1').collect());
        }
    }
    expect_end(it)?;
    OvInstance::new(n, d, sets)
}

pub fn format_ov(ov: &OvInstance) -> String {
    let mut s = format!("{} {}\n", ov.n(), ov.d());
    for set in ov.sets() {
        for v in set {
            s.extend(v.iter().map(|&b| if b { '1' } else { '0' }));
            s.push('\n');
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_round_trip_is_exact() {
        let c = Curve::from_xy(&[(0.1, -2.5e-17), (1.0 / 3.0, 1e300), (-0.0, 7.0)]).unwrap();
        let back: Curve<f64> = parse_curve(&format_curve(&c)).unwrap();
        assert_eq!(back, c);
        let c32 = Curve::from_xy(&[(0.1f32, 3.3f32)]).unwrap();
        assert_eq!(parse_curve::<f32>(&format_curve(&c32)).unwrap(), c32);
    }

    #[test]
    fn curve_errors() {
        assert!(matches!(
            parse_curve::<f64>("2\n0 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_curve::<f64>("1\n0 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_curve::<f64>("1\n0 0 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_curve::<f64>("1\n0 0\n1 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert_eq!(parse_curve::<f64>("0\n"), Err(Error::EmptyCurve));
        assert!(matches!(
            parse_curve::<f64>("1\nNaN 0\n"),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn matrix_round_trip() {
        let m = FreeSpaceMatrix::from_rows(&["101", "011", "111"]).unwrap();
        assert_eq!(parse_matrix(&format_matrix(&m)).unwrap(), m);
        assert!(parse_matrix("2\n10\n1\n").is_err());
        assert!(parse_matrix("2\n10\n12\n").is_err());
    }

    #[test]
    fn updates_and_positions_round_trip() {
        let ops = vec![UpdateOp::new(1, 2, true), UpdateOp::new(3, 3, false)];
        assert_eq!(parse_updates(&format_updates(3, &ops)).unwrap(), (3, ops));
        assert!(parse_updates("3 1\n4 1 1\n").is_err());
        assert!(parse_updates("3 1\n1 1 2\n").is_err());
        let ps = vec![GridPos::new(2, 1), GridPos::new(5, 4)];
        assert_eq!(parse_positions(&format_positions(&ps)).unwrap(), ps);
    }

    #[test]
    fn ov_round_trip() {
        let text = "1 2\n01\n10\n11\n00\n";
        let ov = parse_ov(text).unwrap();
        assert_eq!(ov.set(3)[0], vec![false, false]);
        assert_eq!(format_ov(&ov), text);
        assert!(parse_ov("1 2\n01\n10\n11\n").is_err());
        assert!(parse_ov("1 2\n01\n10\n11\n0\n").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn any_finite_curve_round_trips(xs in prop::collection::vec((any::<f64>(), any::<f64>()), 1..20)) {
                let xs: Vec<_> = xs.into_iter().filter(|(x, y)| x.is_finite() && y.is_finite()).collect();
                prop_assume!(!xs.is_empty());
                let c = Curve::from_xy(&xs).unwrap();
                prop_assert_eq!(parse_curve::<f64>(&format_curve(&c)).unwrap(), c);
            }

            #[test]
            fn any_ov_round_trips(n in 1usize..4, d in 1usize..6, bits in any::<u64>()) {
                let ov = OvInstance::from_bits(n, d, bits).unwrap();
                prop_assert_eq!(parse_ov(&format_ov(&ov)).unwrap(), ov);
            }
        }
    }
}
