//! Planar points, curves and the difference set underlying the arrangement.

use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point (or translation vector) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn origin() -> Self {
        Point2::new(T::zero(), T::zero())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn sq_dist(&self, other: &Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn norm(&self) -> T {
        self.x.hypot(self.y)
    }

    /// Lexicographic order on `(x, y)`; coordinates are assumed finite.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.x
            .partial_cmp(&other.x)
            .unwrap_or(Ordering::Equal)
            .then(self.y.partial_cmp(&other.y).unwrap_or(Ordering::Equal))
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Neg for Point2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Point2::new(-self.x, -self.y)
    }
}

/// A polygonal curve, i.e. a non-empty sequence of points.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve<T> {
    points: Vec<Point2<T>>,
}

impl<T: Scalar> Curve<T> {
    /// Rejects empty input and non-finite coordinates.
    pub fn new(points: Vec<Point2<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCurve);
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::NonFinite(format!("({}, {})", p.x, p.y)));
        }
        Ok(Curve { points })
    }

    /// Convenience constructor from coordinate pairs.
    pub fn from_xy(coords: &[(T, T)]) -> Result<Self> {
        Curve::new(coords.iter().map(|&(x, y)| Point2::new(x, y)).collect())
    }

    pub fn points(&self) -> &[Point2<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; present for API symmetry with collections.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> Point2<T> {
        self.points[0]
    }

    pub fn last(&self) -> Point2<T> {
        self.points[self.points.len() - 1]
    }

    /// Concatenation `self ∘ other`.
    pub fn concat(&self, other: &Curve<T>) -> Curve<T> {
        let mut points = self.points.clone();
        points.extend_from_slice(&other.points);
        Curve { points }
    }

    /// Repeats the final point until the curve has `len` points.
    ///
    /// Stuttering on the last vertex leaves every discrete Fréchet distance
    /// unchanged.
    pub fn padded_to(&self, len: usize) -> Curve<T> {
        let mut points = self.points.clone();
        let last = self.last();
        while points.len() < len {
            points.push(last);
        }
        Curve { points }
    }

    pub fn into_points(self) -> Vec<Point2<T>> {
        self.points
    }
}

pub fn euclidean_distance<T: Scalar>(p: Point2<T>, q: Point2<T>) -> T {
    (p.x - q.x).hypot(p.y - q.y)
}

pub fn translate_curve<T: Scalar>(c: &Curve<T>, t: Point2<T>) -> Curve<T> {
    Curve {
        points: c.points.iter().map(|&p| p + t).collect(),
    }
}

/// The set `{π_i − σ_j}`, sorted lexicographically, exact duplicates removed.
pub fn difference_points<T: Scalar>(pi: &Curve<T>, sigma: &Curve<T>) -> Vec<Point2<T>> {
    let mut q: Vec<Point2<T>> = Vec::with_capacity(pi.len() * sigma.len());
    for &p in pi.points() {
        for &s in sigma.points() {
            q.push(p - s);
        }
    }
    q.sort_by(|a, b| a.lex_cmp(b));
    q.dedup();
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    #[test]
    fn distance_examples() {
        assert_eq!(euclidean_distance(pt(0.0, 0.0), pt(0.0, 0.0)), 0.0);
        assert_eq!(euclidean_distance(pt(0.0, 0.0), pt(3.0, 4.0)), 5.0);
        assert!((euclidean_distance(pt(1.0, 1.0), pt(2.0, 2.0)) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn translate_examples() {
        let c = Curve::from_xy(&[(0.0, 0.0), (1.0, 0.0)]).unwrap();
        let t = translate_curve(&c, pt(2.0, 3.0));
        assert_eq!(t.points(), &[pt(2.0, 3.0), pt(3.0, 3.0)]);
        assert_eq!(translate_curve(&c, pt(0.0, 0.0)), c);
        let single = Curve::from_xy(&[(5.0, 5.0)]).unwrap();
        assert_eq!(
            translate_curve(&single, pt(-5.0, -5.0)).points(),
            &[pt(0.0, 0.0)]
        );
    }

    #[test]
    fn difference_examples() {
        let pi = Curve::from_xy(&[(0.0, 0.0), (2.0, 0.0)]).unwrap();
        let sigma = Curve::from_xy(&[(0.0, 0.0), (0.0, 0.0)]).unwrap();
        assert_eq!(
            difference_points(&pi, &sigma),
            vec![pt(0.0, 0.0), pt(2.0, 0.0)]
        );

        let one = Curve::from_xy(&[(1.0, 1.0)]).unwrap();
        assert_eq!(difference_points(&one, &one), vec![pt(0.0, 0.0)]);

        let pi = Curve::from_xy(&[(0.0, 0.0)]).unwrap();
        let sigma = Curve::from_xy(&[(1.0, 2.0), (3.0, 4.0)]).unwrap();
        assert_eq!(
            difference_points(&pi, &sigma),
            vec![pt(-3.0, -4.0), pt(-1.0, -2.0)]
        );
    }

    #[test]
    fn curve_rejects_bad_input() {
        assert_eq!(Curve::<f64>::new(vec![]), Err(Error::EmptyCurve));
        assert!(matches!(
            Curve::from_xy(&[(f64::NAN, 0.0)]),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            Curve::from_xy(&[(0.0, f64::INFINITY)]),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn generic_over_f32() {
        let d: f32 = euclidean_distance(Point2::new(0.0f32, 0.0), Point2::new(3.0, 4.0));
        assert_eq!(d, 5.0);
    }

    fn coord() -> impl Strategy<Value = f64> {
        -100.0..100.0f64
    }

    proptest! {
        #[test]
        fn triangle_inequality(a in (coord(), coord()), b in (coord(), coord()), c in (coord(), coord())) {
            let (a, b, c) = (pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1));
            let ab = euclidean_distance(a, b);
            let bc = euclidean_distance(b, c);
            let ac = euclidean_distance(a, c);
            prop_assert!(ac <= (ab + bc) * (1.0 + 1e-12) + 1e-12);
            prop_assert_eq!(ab, euclidean_distance(b, a));
        }

        #[test]
        fn translation_round_trip(pts in prop::collection::vec((-1000i32..1000, -1000i32..1000), 1..10),
                                  t in (-512i32..512, -512i32..512)) {
            // Quarter-integers are exactly representable, so the round trip is exact.
            let c = Curve::new(pts.iter().map(|&(x, y)| pt(x as f64 / 4.0, y as f64 / 4.0)).collect()).unwrap();
            let t = pt(t.0 as f64 / 4.0, t.1 as f64 / 4.0);
            prop_assert_eq!(translate_curve(&translate_curve(&c, t), -t), c);
        }

        #[test]
        fn difference_set_bounded(a in prop::collection::vec((-3i32..3, -3i32..3), 1..6),
                                  b in prop::collection::vec((-3i32..3, -3i32..3), 1..6)) {
            let pi = Curve::new(a.iter().map(|&(x, y)| pt(x as f64, y as f64)).collect()).unwrap();
            let sigma = Curve::new(b.iter().map(|&(x, y)| pt(x as f64, y as f64)).collect()).unwrap();
            let q = difference_points(&pi, &sigma);
            prop_assert!(q.len() <= pi.len() * sigma.len());
            for p in pi.points() {
                for s in sigma.points() {
                    prop_assert!(q.contains(&(*p - *s)));
                }
            }
        }
    }
}
