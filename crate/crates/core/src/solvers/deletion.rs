use crate::analysis::{line_profile_of, LineProfile};
use crate::geometry::{Point, PointSet};

/// Deletes points until no line carries three or more of them.
///
/// Each step removes the point lying on the most lines that still carry at
/// least three points, breaking ties by the lexicographically smallest point.
/// Every deletion destroys at least one collinear triple, so the number of
/// deletions never exceeds the triple count of the input. Survivors keep
/// their input order.
pub fn make_general_position(x: &PointSet) -> (PointSet, usize) {
    let profile = line_profile_of(x.points());
    delete_with_profile(x.points(), &profile)
}

pub(crate) fn delete_with_profile(pts: &[Point], profile: &LineProfile) -> (PointSet, usize) {
    let n = pts.len();
    let heavy: Vec<&[usize]> = profile
        .lines()
        .iter()
        .filter(|l| l.count() >= 3)
        .map(|l| l.members.as_slice())
        .collect();
    let mut alive_on = heavy.iter().map(|m| m.len()).collect::<Vec<_>>();
    let mut lines_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (li, members) in heavy.iter().enumerate() {
        for &p in *members {
            lines_of[p].push(li);
        }
    }
    let mut degree: Vec<usize> = lines_of.iter().map(Vec::len).collect();
    let mut alive = vec![true; n];
    let mut deletions = 0;
    loop {
        let victim = (0..n)
            .filter(|&p| alive[p] && degree[p] > 0)
            .max_by(|&a, &b| degree[a].cmp(&degree[b]).then_with(|| pts[b].cmp(&pts[a])));
        let Some(v) = victim else { break };
        alive[v] = false;
        deletions += 1;
        for &li in &lines_of[v] {
            if alive_on[li] < 3 {
                continue;
            }
            alive_on[li] -= 1;
            if alive_on[li] == 2 {
                for &q in heavy[li] {
                    if alive[q] {
                        degree[q] -= 1;
                    }
                }
            }
        }
    }
    let survivors = (0..n)
        .filter(|&p| alive[p])
        .map(|p| pts[p].clone())
        .collect();
    (PointSet::from_distinct(survivors), deletions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::collinear_triples;
    use crate::generators::grid;
    use crate::geometry::is_general_position;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let gp = PointSet::from_lattice([(0, 0), (1, 0), (0, 1)]).unwrap();
        assert_eq!(make_general_position(&gp), (gp.clone(), 0));

        let diag = PointSet::from_lattice([(0, 0), (1, 1), (2, 2)]).unwrap();
        let (out, d) = make_general_position(&diag);
        assert_eq!(d, 1);
        // every point has degree one; the smallest goes first
        assert_eq!(out.points(), &[Point::int(1, 1), Point::int(2, 2)]);

        let g3 = grid(3);
        let (out, d) = make_general_position(&g3);
        assert!(is_general_position(&out));
        assert!(d as u128 <= collinear_triples(&g3));
        // centre (four heavy lines), then (0,0) clears row 0 and column 0,
        // then (2,2) clears row 2 and column 2
        assert_eq!(d, 3);
        assert_eq!(out.len(), 6);
        assert!(!out.points().contains(&Point::int(1, 1)));
        assert!(!out.points().contains(&Point::int(0, 0)));
        assert!(!out.points().contains(&Point::int(2, 2)));
    }

    proptest! {
        #[test]
        fn output_is_general_position_within_budget(
            coords in proptest::collection::hash_set((0i64..6, 0i64..6), 0..30)
        ) {
            let s = PointSet::from_lattice(coords).unwrap();
            let (out, d) = make_general_position(&s);
            prop_assert!(is_general_position(&out));
            prop_assert!(out.is_subset_of(&s));
            prop_assert_eq!(out.len() + d, s.len());
            prop_assert!(d as u128 <= collinear_triples(&s));
        }
    }
}
