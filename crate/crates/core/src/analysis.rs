//! Structural measurements of point sets and line arrangements.
//!
//! Everything here is exact: incidences come from canonical [`LineKey`]s and
//! distances stay squared.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use serde::Serialize;

use crate::geometry::{line_through_unchecked, LineKey, LineSet, Point, PointSet};
use crate::rational::{Coord, Rational};

/// A line determined by at least two points of a set, with the positions of
/// all points of the set on it (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminedLine {
    pub key: LineKey,
    pub members: Vec<usize>,
}

impl DeterminedLine {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// Every line determined by a point set, sorted by key.
///
/// Each unordered pair of points lies on exactly one determined line, so the
/// sum of `C(t, 2)` over lines equals `C(n, 2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LineProfile {
    lines: Vec<DeterminedLine>,
}

impl LineProfile {
    pub fn lines(&self) -> &[DeterminedLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Number of points on `key`, if it is a determined line.
    pub fn count(&self, key: &LineKey) -> Option<usize> {
        self.lines
            .binary_search_by(|l| l.key.cmp(key))
            .ok()
            .map(|i| self.lines[i].count())
    }

    /// `(key, t)` pairs in key order.
    pub fn counts(&self) -> impl Iterator<Item = (&LineKey, usize)> {
        self.lines.iter().map(|l| (&l.key, l.count()))
    }

    pub fn pair_sum(&self) -> u128 {
        self.lines.iter().map(|l| choose2(l.count())).sum()
    }

    pub fn triple_sum(&self) -> u128 {
        self.lines.iter().map(|l| choose3(l.count())).sum()
    }

    pub fn max_count(&self) -> usize {
        self.lines
            .iter()
            .map(DeterminedLine::count)
            .max()
            .unwrap_or(0)
    }
}

pub(crate) fn choose2(t: usize) -> u128 {
    let t = t as u128;
    t * t.saturating_sub(1) / 2
}

pub(crate) fn choose3(t: usize) -> u128 {
    let t = t as u128;
    if t < 3 {
        0
    } else {
        t * (t - 1) * (t - 2) / 6
    }
}

/// Groups all pairs of `s` by the line they span.
pub fn line_profile(s: &PointSet) -> LineProfile {
    line_profile_of(s.points())
}

pub(crate) fn line_profile_of(pts: &[Point]) -> LineProfile {
    let n = pts.len();
    let mut map: HashMap<LineKey, Vec<usize>> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let members = map
                .entry(line_through_unchecked(&pts[i], &pts[j]))
                .or_default();
            // The smallest index on a line sees every other member during its own
            // pass, so the list is complete once its anchor has been processed.
            if members.is_empty() {
                members.push(i);
                members.push(j);
            } else if members[0] == i {
                members.push(j);
            }
        }
    }
    let mut lines: Vec<DeterminedLine> = map
        .into_iter()
        .map(|(key, members)| DeterminedLine { key, members })
        .collect();
    lines.sort_unstable_by(|a, b| a.key.cmp(&b.key));
    LineProfile { lines }
}

/// Number of collinear triples `T`.
pub fn collinear_triples(s: &PointSet) -> u128 {
    line_profile(s).triple_sum()
}

/// Largest number of points on one line determined by `s` (0 for fewer than two points).
pub fn max_collinear(s: &PointSet) -> usize {
    line_profile(s).max_count()
}

/// Minimum and maximum squared pairwise distance and their ratio.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub min_sq: Coord,
    pub max_sq: Coord,
    pub spread_sq: Coord,
}

/// Squared spread of `s`; `None` with fewer than two points.
pub fn density_report(s: &PointSet) -> Option<DensityReport> {
    if let Some(r) = small_lattice_density(s) {
        return r;
    }
    let pts = s.points();
    let mut min_sq: Option<Coord> = None;
    let mut max_sq: Option<Coord> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = crate::geometry::squared_distance(&pts[i], &pts[j]);
            if min_sq.as_ref().is_none_or(|m| &d < m) {
                min_sq = Some(d.clone());
            }
            if max_sq.as_ref().is_none_or(|m| &d > m) {
                max_sq = Some(d);
            }
        }
    }
    let (min_sq, max_sq) = (min_sq?, max_sq?);
    let spread_sq = &max_sq / &min_sq;
    Some(DensityReport {
        min_sq,
        max_sq,
        spread_sq,
    })
}

/// Integer version for lattice points with coordinates below 2^30, where every
/// squared distance fits in `i64`.
fn small_lattice_density(s: &PointSet) -> Option<Option<DensityReport>> {
    const LIMIT: i64 = 1 << 30;
    let mut xy = Vec::with_capacity(s.len());
    for p in s {
        let (x, y) = p.as_lattice()?;
        if x.abs() >= LIMIT || y.abs() >= LIMIT {
            return None;
        }
        xy.push((x, y));
    }
    let (mut lo, mut hi) = (i64::MAX, 0i64);
    for (i, &(ax, ay)) in xy.iter().enumerate() {
        for &(bx, by) in &xy[i + 1..] {
            let d = (ax - bx) * (ax - bx) + (ay - by) * (ay - by);
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    if xy.len() < 2 {
        return Some(None);
    }
    let (min_sq, max_sq) = (Rational::from_integer(lo), Rational::from_integer(hi));
    let spread_sq = &max_sq / &min_sq;
    Some(Some(DensityReport {
        min_sq,
        max_sq,
        spread_sq,
    }))
}

/// True iff `spread_sq <= alpha^2 n`. Sets with fewer than two points are dense.
pub fn is_alpha_dense(s: &PointSet, alpha: &Rational) -> bool {
    match density_report(s) {
        None => true,
        Some(r) => r.spread_sq <= density_bound(s.len(), alpha),
    }
}

pub(crate) fn density_bound(n: usize, alpha: &Rational) -> Rational {
    &(alpha * alpha) * &Rational::from_integer(n as i64)
}

/// A set of lines covering a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    pub lines: LineSet,
    pub size: usize,
    pub covered: bool,
}

/// Greedy line cover: repeatedly take the determined line with the most
/// uncovered points (smallest key on ties), then give every remaining
/// isolated point its own vertical line.
pub fn greedy_line_cover(s: &PointSet) -> CoverCertificate {
    let profile = line_profile(s);
    let chosen = greedy_cover_indices(s.len(), profile.lines(), |_| true);
    let mut lines: Vec<LineKey> = chosen
        .selected
        .iter()
        .map(|&i| profile.lines()[i].key.clone())
        .collect();
    lines.extend(
        chosen
            .isolated
            .iter()
            .map(|&p| LineKey::vertical_through(&s.points()[p])),
    );
    let covered = s.iter().all(|p| lines.iter().any(|l| l.contains(p)));
    let size = lines.len();
    let lines = LineSet::new(lines).expect("greedy cover never repeats a line");
    CoverCertificate {
        lines,
        size,
        covered,
    }
}

pub(crate) struct GreedyCover {
    /// Indices into the line slice, in selection order.
    pub selected: Vec<usize>,
    /// Number of newly covered points for each selected line.
    pub gains: Vec<usize>,
    /// Points left for single-point lines.
    pub isolated: Vec<usize>,
}

/// Greedy cover over the points `p < n` with `active(p)`, using `lines`
/// (sorted by key) as candidates.
pub(crate) fn greedy_cover_indices(
    n: usize,
    lines: &[DeterminedLine],
    active: impl Fn(usize) -> bool,
) -> GreedyCover {
    let mut uncovered: Vec<bool> = (0..n).map(&active).collect();
    let live = |l: &DeterminedLine, unc: &[bool]| l.members.iter().filter(|&&m| unc[m]).count();
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = lines
        .iter()
        .enumerate()
        .map(|(i, l)| (live(l, &uncovered), Reverse(i)))
        .filter(|(c, _)| *c >= 2)
        .collect();
    let mut selected = Vec::new();
    let mut gains = Vec::new();
    // Counts only shrink, so a popped entry whose stored count is still exact is
    // a maximum, and the heap order makes it the smallest key among the maxima.
    while let Some((stored, Reverse(i))) = heap.pop() {
        let now = live(&lines[i], &uncovered);
        if now < 2 {
            continue;
        }
        if now < stored {
            heap.push((now, Reverse(i)));
            continue;
        }
        for &m in &lines[i].members {
            uncovered[m] = false;
        }
        selected.push(i);
        gains.push(now);
    }
    let isolated = (0..n).filter(|&p| uncovered[p]).collect();
    GreedyCover {
        selected,
        gains,
        isolated,
    }
}

/// All pairwise intersection points of `l`, deduplicated and sorted.
pub fn arrangement_vertices(l: &LineSet) -> PointSet {
    let lines = l.lines();
    let mut seen = HashSet::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(v) = lines[i].intersection(&lines[j]) {
                seen.insert(v);
            }
        }
    }
    let mut points: Vec<Point> = seen.into_iter().collect();
    points.sort();
    PointSet::from_distinct(points)
}

/// True iff the arrangement has at least `c n^2` vertices.
pub fn is_generic(l: &LineSet, c: &Rational) -> bool {
    vertex_count_is_generic(arrangement_vertices(l).len(), l.len(), c)
}

pub(crate) fn vertex_count_is_generic(vertices: usize, lines: usize, c: &Rational) -> bool {
    let n = Rational::from_integer(lines as i64);
    Rational::from_integer(vertices as i64) >= &(c * &n) * &n
}

/// `T / (n^2 log2 l + l^2 n)`, the collinear-triple count normalized by its
/// incidence-geometry upper bound shape.
pub fn triple_bound_ratio(n: usize, max_collinear: usize, triples: u128) -> f64 {
    let (n, l) = (n as f64, max_collinear as f64);
    triples as f64 / (n * n * l.log2() + l * l * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{collinear, is_general_position};

    fn grid(m: i64) -> PointSet {
        PointSet::from_lattice((0..m).flat_map(|y| (0..m).map(move |x| (x, y)))).unwrap()
    }

    fn brute_triples(s: &PointSet) -> u128 {
        let p = s.points();
        let mut t = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                for k in j + 1..p.len() {
                    if collinear(&p[i], &p[j], &p[k]) {
                        t += 1;
                    }
                }
            }
        }
        t
    }

    #[test]
    fn unit_square_profile() {
        let prof = line_profile(&grid(2));
        assert_eq!(prof.len(), 6);
        assert!(prof.counts().all(|(_, t)| t == 2));
    }

    #[test]
    fn three_by_three_profile() {
        let g = grid(3);
        let prof = line_profile(&g);
        let heavy = prof.counts().filter(|(_, t)| *t == 3).count();
        assert_eq!(heavy, 8);
        assert!(prof.counts().all(|(_, t)| t == 2 || t == 3));
        assert_eq!(prof.pair_sum(), 36);
        assert_eq!(collinear_triples(&g), 8);
        assert_eq!(brute_triples(&g), 8);
        assert_eq!(max_collinear(&g), 3);
        let rows = LineKey::new(0, 1, -1).unwrap();
        assert_eq!(prof.count(&rows), Some(3));
    }

    #[test]
    fn diagonal_profile() {
        let s = PointSet::from_lattice([(0, 0), (1, 1), (2, 2)]).unwrap();
        let prof = line_profile(&s);
        assert_eq!(prof.len(), 1);
        assert_eq!(prof.lines()[0].members, vec![0, 1, 2]);
        let four = PointSet::from_lattice([(0, 0), (1, 1), (2, 2), (3, 3)]).unwrap();
        assert_eq!(collinear_triples(&four), 4);
        assert_eq!(max_collinear(&four), 4);
    }

    #[test]
    fn full_grid_max_collinear() {
        for m in 2..=8 {
            assert_eq!(max_collinear(&grid(m)), m as usize);
            assert_eq!(collinear_triples(&grid(m)), brute_triples(&grid(m)));
        }
    }

    #[test]
    fn density() {
        let r = density_report(&grid(8)).unwrap();
        assert_eq!(r.max_sq, Rational::from_integer(98));
        assert_eq!(r.min_sq, Rational::one());
        assert!(is_alpha_dense(&grid(8), &Rational::from_integer(2)));
        let two = PointSet::from_lattice([(0, 0), (1, 0)]).unwrap();
        assert_eq!(density_report(&two).unwrap().spread_sq, Rational::one());
        // spread^2 = 1 <= alpha^2 * 2 iff alpha^2 >= 1/2
        assert!(is_alpha_dense(&two, &Rational::new(3, 4)));
        assert!(!is_alpha_dense(&two, &Rational::new(7, 10)));
        assert!(density_report(&PointSet::default()).is_none());
        let half = Rational::new(1, 2);
        let shifted = PointSet::new(
            grid(8)
                .iter()
                .map(|p| Point::new(&p.x + &half, &p.y - &half))
                .collect(),
        )
        .unwrap();
        assert_eq!(density_report(&shifted), Some(r));
    }

    #[test]
    fn g8_subset_is_dense() {
        // any 25 lattice points inside G_8 with unit min distance have spread^2 <= 98 <= 100
        let pts: Vec<(i64, i64)> = (0..8)
            .flat_map(|y| (0..8).map(move |x| (x, y)))
            .step_by(2)
            .take(24)
            .chain([(1, 0)])
            .collect();
        let s = PointSet::from_lattice(pts).unwrap();
        assert_eq!(s.len(), 25);
        assert!(is_alpha_dense(&s, &Rational::from_integer(2)));
    }

    fn exhaustive_cover(s: &PointSet) -> usize {
        // smallest k such that some k determined lines (plus singletons) cover s
        let prof = line_profile(s);
        let n = s.len();
        let masks: Vec<u32> = prof
            .lines()
            .iter()
            .map(|l| l.members.iter().fold(0u32, |m, &i| m | (1 << i)))
            .collect();
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut best = vec![usize::MAX; 1 << n];
        best[0] = 0;
        for mask in 0..=full as usize {
            if best[mask] == usize::MAX {
                continue;
            }
            let rest = full as usize & !mask;
            if rest == 0 {
                continue;
            }
            let low = rest.trailing_zeros();
            let mut opts: Vec<usize> = vec![1 << low];
            opts.extend(
                masks
                    .iter()
                    .filter(|&&m| m >> low & 1 == 1)
                    .map(|&m| m as usize),
            );
            for o in opts {
                let next = mask | o;
                best[next] = best[next].min(best[mask] + 1);
            }
        }
        best[full as usize]
    }

    #[test]
    fn greedy_cover_examples() {
        let line = PointSet::from_lattice((0..7).map(|i| (i, 2 * i + 1))).unwrap();
        let c = greedy_line_cover(&line);
        assert_eq!(c.size, 1);
        assert!(c.covered);
        for m in 1..=4 {
            let c = greedy_line_cover(&grid(m));
            assert_eq!(c.size, m as usize);
            assert!(c.covered);
            assert_eq!(exhaustive_cover(&grid(m)), m as usize);
        }
        let c8 = greedy_line_cover(&grid(8));
        assert_eq!(c8.size, 8);
        // rows come first in key order
        assert!(c8
            .lines
            .iter()
            .all(|l| l.small_coefficients().unwrap()[..2] == [0, 1]));
    }

    #[test]
    fn greedy_cover_general_position() {
        for n in 1..=9i64 {
            let s = PointSet::from_lattice((0..n).map(|x| (x, x * x))).unwrap();
            assert!(is_general_position(&s));
            let c = greedy_line_cover(&s);
            assert_eq!(c.size, (n as usize).div_ceil(2));
            assert!(c.covered);
            assert_eq!(exhaustive_cover(&s), (n as usize).div_ceil(2));
        }
    }

    #[test]
    fn cover_handles_rational_singletons() {
        let s = PointSet::new(vec![
            Point::new(Rational::new(1, 3), Rational::zero()),
            Point::int(5, 5),
            Point::int(1, 7),
        ])
        .unwrap();
        let c = greedy_line_cover(&s);
        assert!(c.covered);
        assert_eq!(c.size, 2);
    }

    fn lines(v: &[(i64, i64, i64)]) -> LineSet {
        LineSet::new(
            v.iter()
                .map(|&(a, b, c)| LineKey::new(a, b, c).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn arrangement_examples() {
        let v = arrangement_vertices(&lines(&[(1, 0, 0), (0, 1, 0)]));
        assert_eq!(v.points(), &[Point::int(0, 0)]);
        let pencil = lines(&[(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (1, 2, 0)]);
        assert_eq!(arrangement_vertices(&pencil).len(), 1);
        let grid_lines = lines(&[
            (1, 0, 0),
            (1, 0, -1),
            (1, 0, -2),
            (0, 1, 0),
            (0, 1, -1),
            (0, 1, -2),
        ]);
        assert_eq!(arrangement_vertices(&grid_lines).len(), 9);
        assert!(is_generic(
            &lines(&[(1, 0, 0), (0, 1, 0)]),
            &Rational::new(1, 4)
        ));
    }
}
