//! Exact planar predicates and canonical point/line representations.
//!
//! Every predicate works on homogeneous integer coordinates `(X, Y, W)` with
//! `W > 0`. Points whose coordinates are small rationals map into `i128`
//! exactly; the arithmetic on top of that is checked and falls back to
//! arbitrary precision whenever a product would overflow.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GpssError, Result};
use crate::rational::{Coord, Rational};

/// A point of the plane with exact rational coordinates.
///
/// Ordering is lexicographic on `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(x.into(), y.into())
    }

    pub fn is_lattice(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Integer coordinates, when the point is a lattice point that fits in `i64`.
    pub fn as_lattice(&self) -> Option<(i64, i64)> {
        Some((self.x.to_i64()?, self.y.to_i64()?))
    }

    fn homogeneous(&self) -> Homogeneous {
        match (self.x.as_small(), self.y.as_small()) {
            (Some((xn, xd)), Some((yn, yd))) => {
                let (xd, yd) = (xd as i128, yd as i128);
                let w = xd.lcm(&yd);
                // |xn| < 2^63 and w / xd < 2^63, so these cannot overflow.
                Homogeneous::Small([xn as i128 * (w / xd), yn as i128 * (w / yd), w])
            }
            _ => {
                let (xd, yd) = (self.x.denom(), self.y.denom());
                let w = xd.lcm(&yd);
                Homogeneous::Big([self.x.numer() * (&w / xd), self.y.numer() * (&w / yd), w])
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point::int(x, y)
    }
}

enum Homogeneous {
    Small([i128; 3]),
    Big([BigInt; 3]),
}

impl Homogeneous {
    fn big(&self) -> [BigInt; 3] {
        match self {
            Homogeneous::Small(v) => v.map(BigInt::from),
            Homogeneous::Big(v) => v.clone(),
        }
    }
}

fn cross_small(u: &[i128; 3], v: &[i128; 3]) -> Option<[i128; 3]> {
    let c = |a: i128, b: i128, c: i128, d: i128| a.checked_mul(b)?.checked_sub(c.checked_mul(d)?);
    Some([
        c(u[1], v[2], u[2], v[1])?,
        c(u[2], v[0], u[0], v[2])?,
        c(u[0], v[1], u[1], v[0])?,
    ])
}

fn cross_big(u: &[BigInt; 3], v: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

fn dot_small(u: &[i128; 3], v: &[i128; 3]) -> Option<i128> {
    u[0].checked_mul(v[0])?
        .checked_add(u[1].checked_mul(v[1])?)?
        .checked_add(u[2].checked_mul(v[2])?)
}

fn dot_big(u: &[BigInt; 3], v: &[BigInt; 3]) -> BigInt {
    &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2]
}

/// Sign of the exact cross product `(q - p) x (r - p)`.
///
/// `+1` for a counterclockwise turn, `-1` for clockwise, `0` when collinear
/// (including coincident arguments).
pub fn orientation(p: &Point, q: &Point, r: &Point) -> i8 {
    if let (Some((px, py)), Some((qx, qy)), Some((rx, ry))) =
        (p.as_lattice(), q.as_lattice(), r.as_lattice())
    {
        let (ax, ay) = (qx as i128 - px as i128, qy as i128 - py as i128);
        let (bx, by) = (rx as i128 - px as i128, ry as i128 - py as i128);
        if let (Some(l), Some(r)) = (ax.checked_mul(by), ay.checked_mul(bx)) {
            if let Some(d) = l.checked_sub(r) {
                return d.signum() as i8;
            }
        }
    }
    // det[p; q; r] in homogeneous form; all weights are positive so its sign is the orientation.
    let (hp, hq, hr) = (p.homogeneous(), q.homogeneous(), r.homogeneous());
    if let (Homogeneous::Small(a), Homogeneous::Small(b), Homogeneous::Small(c)) = (&hp, &hq, &hr) {
        if let Some(d) = cross_small(b, c).and_then(|bc| dot_small(a, &bc)) {
            return d.signum() as i8;
        }
    }
    let d = dot_big(&hp.big(), &cross_big(&hq.big(), &hr.big()));
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

/// True iff the three points lie on a common line.
pub fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    orientation(p, q, r) == 0
}

/// Exact squared Euclidean distance.
pub fn squared_distance(p: &Point, q: &Point) -> Coord {
    if let (Some((px, py)), Some((qx, qy))) = (p.as_lattice(), q.as_lattice()) {
        let dx = px as i128 - qx as i128;
        let dy = py as i128 - qy as i128;
        if let Some(s) = dx
            .checked_mul(dx)
            .and_then(|a| a.checked_add(dy.checked_mul(dy)?))
        {
            return Rational::from_i128(s, 1);
        }
    }
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    &(&dx * &dx) + &(&dy * &dy)
}

/// Canonical integer coefficients `(a, b, c)` of the line `a x + b y + c = 0`.
///
/// The coefficients are coprime, `(a, b) != (0, 0)`, and the first nonzero
/// coefficient is positive, so two keys are equal iff they name the same line.
/// Ordering is lexicographic on `(a, b, c)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LineKey(LineRepr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum LineRepr {
    Small([i128; 3]),
    Big(Box<[BigInt; 3]>),
}

impl LineKey {
    /// Canonicalizes arbitrary integer coefficients.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let v = [a.into(), b.into(), c.into()];
        if v[0].is_zero() && v[1].is_zero() {
            return Err(GpssError::DegenerateLine);
        }
        Ok(Self::canonical_big(v))
    }

    fn canonical_small(mut v: [i128; 3]) -> Option<Self> {
        if v.contains(&i128::MIN) {
            return None;
        }
        let g = v[0].gcd(&v[1]).gcd(&v[2]);
        debug_assert!(g > 0);
        let lead = v.iter().find(|x| **x != 0).copied().unwrap_or(1);
        let g = if lead < 0 { -g } else { g };
        for x in &mut v {
            *x /= g;
        }
        Some(LineKey(LineRepr::Small(v)))
    }

    fn canonical_big(mut v: [BigInt; 3]) -> Self {
        let g = v[0].gcd(&v[1]).gcd(&v[2]);
        let neg = v
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative());
        for x in &mut v {
            *x = &*x / &g;
            if neg {
                *x = -&*x;
            }
        }
        match (v[0].to_i128(), v[1].to_i128(), v[2].to_i128()) {
            (Some(a), Some(b), Some(c)) => LineKey(LineRepr::Small([a, b, c])),
            _ => LineKey(LineRepr::Big(Box::new(v))),
        }
    }

    pub fn coefficients(&self) -> [BigInt; 3] {
        match &self.0 {
            LineRepr::Small(v) => v.map(BigInt::from),
            LineRepr::Big(v) => (**v).clone(),
        }
    }

    /// Coefficients as machine integers, when they fit.
    pub fn small_coefficients(&self) -> Option<[i128; 3]> {
        match &self.0 {
            LineRepr::Small(v) => Some(*v),
            LineRepr::Big(_) => None,
        }
    }

    /// True iff `p` satisfies the line equation.
    pub fn contains(&self, p: &Point) -> bool {
        let h = p.homogeneous();
        if let (LineRepr::Small(l), Homogeneous::Small(q)) = (&self.0, &h) {
            if let Some(d) = dot_small(l, q) {
                return d == 0;
            }
        }
        dot_big(&self.coefficients(), &h.big()).is_zero()
    }

    /// The unique common point of two lines, or `None` when they are parallel.
    pub fn intersection(&self, other: &LineKey) -> Option<Point> {
        if let (LineRepr::Small(u), LineRepr::Small(v)) = (&self.0, &other.0) {
            if let Some([x, y, w]) = cross_small(u, v) {
                if w == 0 {
                    return None;
                }
                return Some(Point::new(
                    Rational::from_i128(x, w),
                    Rational::from_i128(y, w),
                ));
            }
        }
        let [x, y, w] = cross_big(&self.coefficients(), &other.coefficients());
        if w.is_zero() {
            return None;
        }
        Some(Point::new(
            Rational::from_big_ratio(x, w.clone()),
            Rational::from_big_ratio(y, w),
        ))
    }

    /// The vertical line through `p`.
    pub fn vertical_through(p: &Point) -> LineKey {
        // d x - n = 0 for x = n / d
        LineKey::canonical_big([p.x.denom(), BigInt::zero(), -p.x.numer()])
    }
}

impl Ord for LineKey {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (LineRepr::Small(a), LineRepr::Small(b)) => a.cmp(b),
            _ => self.coefficients().cmp(&other.coefficients()),
        }
    }
}

impl PartialOrd for LineKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LineKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            LineRepr::Small([a, b, c]) => write!(f, "{a} {b} {c}"),
            LineRepr::Big(v) => write!(f, "{} {} {}", v[0], v[1], v[2]),
        }
    }
}

impl fmt::Debug for LineKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LineKey({self})")
    }
}

/// The canonical line through two distinct points.
pub fn line_through(p: &Point, q: &Point) -> Result<LineKey> {
    if p == q {
        return Err(GpssError::IdenticalPoints);
    }
    Ok(line_through_unchecked(p, q))
}

pub(crate) fn line_through_unchecked(p: &Point, q: &Point) -> LineKey {
    if let (Some((px, py)), Some((qx, qy))) = (p.as_lattice(), q.as_lattice()) {
        let (px, py, qx, qy) = (px as i128, py as i128, qx as i128, qy as i128);
        let a = py - qy;
        let b = qx - px;
        if let Some(c) = px
            .checked_mul(qy)
            .and_then(|l| l.checked_sub(py.checked_mul(qx)?))
        {
            if let Some(k) = LineKey::canonical_small([a, b, c]) {
                return k;
            }
        }
    }
    let (hp, hq) = (p.homogeneous(), q.homogeneous());
    if let (Homogeneous::Small(u), Homogeneous::Small(v)) = (&hp, &hq) {
        if let Some(k) = cross_small(u, v).and_then(LineKey::canonical_small) {
            return k;
        }
    }
    LineKey::canonical_big(cross_big(&hp.big(), &hq.big()))
}

/// An ordered collection of distinct points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Fails on the first repeated point.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if !seen.insert(p) {
                return Err(GpssError::DuplicatePoint(p.to_string()));
            }
        }
        Ok(PointSet { points })
    }

    /// Keeps the first occurrence of every point.
    pub fn dedup(points: impl IntoIterator<Item = Point>) -> Self {
        let mut seen = HashSet::new();
        let points = points
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
        PointSet { points }
    }

    pub(crate) fn from_distinct(points: Vec<Point>) -> Self {
        debug_assert_eq!(points.iter().collect::<HashSet<_>>().len(), points.len());
        PointSet { points }
    }

    pub fn from_lattice(coords: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        Self::new(coords.into_iter().map(Point::from).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// Same points, lexicographically sorted.
    pub fn sorted(&self) -> PointSet {
        let mut points = self.points.clone();
        points.sort();
        PointSet { points }
    }

    /// Point to position lookup.
    pub fn index(&self) -> HashMap<&Point, usize> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect()
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        let idx = other.index();
        self.points.iter().all(|p| idx.contains_key(p))
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// A collection of pairwise distinct lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LineSet {
    lines: Vec<LineKey>,
}

impl LineSet {
    pub fn new(lines: Vec<LineKey>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(lines.len());
        for l in &lines {
            if !seen.insert(l) {
                return Err(GpssError::DuplicateLine(l.to_string()));
            }
        }
        Ok(LineSet { lines })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[LineKey] {
        &self.lines
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LineKey> {
        self.lines.iter()
    }
}

/// True iff no line holds three or more points of `s`.
///
/// Two distinct pairs with the same line key always span at least three points,
/// so it suffices to look for a repeated key.
pub fn is_general_position(s: &PointSet) -> bool {
    let pts = s.points();
    let mut keys = HashSet::with_capacity(pts.len() * pts.len().saturating_sub(1) / 2);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if !keys.insert(line_through_unchecked(&pts[i], &pts[j])) {
                return false;
            }
        }
    }
    true
}
