use std::collections::HashMap;

use super::{greedy_gpss, Algorithm, BoundSource, ScanOrder, SolveResult};
use crate::analysis::{greedy_cover_indices, line_profile_of, DeterminedLine};
use crate::generators::Seed;
use crate::geometry::PointSet;

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and_not(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

struct Search<'a> {
    n: usize,
    lines: &'a [DeterminedLine],
    masks: Vec<Bits>,
    lines_of: Vec<Vec<usize>>,
    chosen: Vec<usize>,
    /// Number of chosen points on each line.
    on_line: Vec<u8>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    /// `|chosen|` plus, for each line of a greedy cover of the candidates, the
    /// most points that line can still take.
    fn bound(&self, cand: &Bits) -> usize {
        let cover = greedy_cover_indices(self.n, self.lines, |p| cand.get(p));
        let room: usize = cover
            .selected
            .iter()
            .zip(&cover.gains)
            .map(|(&li, &gain)| gain.min(2 - self.on_line[li] as usize))
            .sum();
        self.chosen.len() + room + cover.isolated.len()
    }

    fn run(&mut self, cand: Bits) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        let Some(v) = cand.first() else {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        };
        if self.chosen.len() + cand.count() <= self.best.len()
            || self.bound(&cand) <= self.best.len()
        {
            return;
        }
        // include v: a line reaching two chosen points loses its other candidates
        let mut with = cand.clone();
        with.clear(v);
        for &li in &self.lines_of[v] {
            self.on_line[li] += 1;
            if self.on_line[li] == 2 {
                with.and_not(&self.masks[li]);
            }
        }
        self.chosen.push(v);
        self.run(with);
        self.chosen.pop();
        for &li in &self.lines_of[v] {
            self.on_line[li] -= 1;
        }
        let mut without = cand;
        without.clear(v);
        self.run(without);
    }
}

/// Branch and bound for a maximum general-position subset.
///
/// Nodes decide one point at a time, including it first. A node is pruned when
/// a greedy line cover of its remaining candidates shows it cannot beat the
/// incumbent, which starts as the greedy scan. When the search visits more
/// than `node_budget` nodes it stops with the best set found, flags
/// `budget_exhausted`, and reports the root cover bound instead of the optimum.
pub fn exact_gpss(s: &PointSet, node_budget: u64) -> SolveResult {
    let n = s.len();
    let pts = s.points();
    let profile = line_profile_of(pts);
    let lines = profile.lines();
    let mut lines_of = vec![Vec::new(); n];
    let mut masks = Vec::with_capacity(lines.len());
    for (li, l) in lines.iter().enumerate() {
        let mut m = Bits::empty(n);
        for &a in &l.members {
            m.set(a);
            lines_of[a].push(li);
        }
        masks.push(m);
    }
    let index: HashMap<_, _> = s.index();
    let incumbent: Vec<usize> = greedy_gpss(s, ScanOrder::Input, Seed(0))
        .chosen
        .iter()
        .map(|p| index[p])
        .collect();
    let mut search = Search {
        n,
        lines,
        masks,
        lines_of,
        chosen: Vec::new(),
        on_line: vec![0; lines.len()],
        best: incumbent,
        nodes: 0,
        budget: node_budget.max(1),
        exhausted: false,
    };
    let root = Bits::full(n);
    let root_bound = search.bound(&root);
    if search.best.len() < root_bound {
        search.run(root);
    }
    let mut best = search.best.clone();
    best.sort_unstable();
    let chosen = PointSet::from_distinct(best.iter().map(|&i| pts[i].clone()).collect());
    let (bound, source) = if search.exhausted {
        (root_bound, BoundSource::CoverBound)
    } else {
        (chosen.len(), BoundSource::Exact)
    };
    let mut res = SolveResult::new(chosen, Algorithm::Exact, bound, source);
    res.stat("nodes", search.nodes as f64);
    res.stat("budget_exhausted", if search.exhausted { 1.0 } else { 0.0 });
    res.stat("root_bound", root_bound as f64);
    res
}
