//! Bipartite matching machinery with exact rational weights.
//!
//! Provides maximum-cardinality matching by augmenting paths, Hall
//! violator extraction from the final alternating-reachability structure,
//! maximum-weight assignment with exact dual potentials (the duals are
//! consumed downstream, so they are part of the contract, not a detail),
//! and the semi-matching with degree q-1 on the left side.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::Error;
use crate::scalar::Rat;

/// Which color class of the bipartite graph an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub left: usize,
    pub right: usize,
    pub weight: Option<Rat>,
}

/// Finite bipartite graph with vertex sets 0..left_count and
/// 0..right_count. Multi-edges are tolerated; unweighted algorithms treat
/// them as one edge and the assignment keeps the heaviest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<Edge>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize, edges: Vec<Edge>) -> Result<Self, Error> {
        for e in &edges {
            if e.left >= left_count || e.right >= right_count {
                return Err(Error::Precondition(format!(
                    "edge ({}, {}) references a missing vertex",
                    e.left, e.right
                )));
            }
        }
        Ok(BipartiteGraph {
            left_count,
            right_count,
            edges,
        })
    }

    pub fn unweighted(left_count: usize, right_count: usize, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        BipartiteGraph::new(
            left_count,
            right_count,
            pairs
                .iter()
                .map(|&(l, r)| Edge {
                    left: l,
                    right: r,
                    weight: None,
                })
                .collect(),
        )
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Right neighbors of each left vertex, deduplicated, ascending.
    pub fn adjacency_left(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![BTreeSet::new(); self.left_count];
        for e in &self.edges {
            adj[e.left].insert(e.right);
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Left neighbors of each right vertex, deduplicated, ascending.
    pub fn adjacency_right(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![BTreeSet::new(); self.right_count];
        for e in &self.edges {
            adj[e.right].insert(e.left);
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Neighborhood of a set of right vertices.
    pub fn neighborhood_of_right(&self, set: &[usize]) -> Vec<usize> {
        let wanted: BTreeSet<usize> = set.iter().copied().collect();
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if wanted.contains(&e.right) {
                out.insert(e.left);
            }
        }
        out.into_iter().collect()
    }

    /// Neighborhood of a set of left vertices.
    pub fn neighborhood_of_left(&self, set: &[usize]) -> Vec<usize> {
        let wanted: BTreeSet<usize> = set.iter().copied().collect();
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if wanted.contains(&e.left) {
                out.insert(e.right);
            }
        }
        out.into_iter().collect()
    }
}

/// A matching as left→right pairs, ascending in the left vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.pairs.len()
    }
}

/// Kuhn's augmenting-path maximum matching. Left vertices are processed
/// in index order and adjacency lists ascending, so the result is
/// deterministic.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    let adj = g.adjacency_left();
    let mut match_right: Vec<Option<usize>> = vec![None; g.right_count];
    let mut match_left: Vec<Option<usize>> = vec![None; g.left_count];

    fn try_augment(
        v: usize,
        adj: &[Vec<usize>],
        match_right: &mut [Option<usize>],
        match_left: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &u in &adj[v] {
            if visited[u] {
                continue;
            }
            visited[u] = true;
            let free = match match_right[u] {
                None => true,
                Some(w) => try_augment(w, adj, match_right, match_left, visited),
            };
            if free {
                match_right[u] = Some(v);
                match_left[v] = Some(u);
                return true;
            }
        }
        false
    }

    for v in 0..g.left_count {
        let mut visited = vec![false; g.right_count];
        try_augment(v, &adj, &mut match_right, &mut match_left, &mut visited);
    }

    let pairs = (0..g.left_count)
        .filter_map(|v| match_left[v].map(|u| (v, u)))
        .collect();
    Matching { pairs }
}

/// Alternating reachability from the unmatched vertices of the side being
/// saturated. Returns (reachable left set, reachable right set).
fn alternating_reachable(
    g: &BipartiteGraph,
    m: &Matching,
    saturate: Side,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let adj_l = g.adjacency_left();
    let adj_r = g.adjacency_right();
    let mut match_left: Vec<Option<usize>> = vec![None; g.left_count];
    let mut match_right: Vec<Option<usize>> = vec![None; g.right_count];
    for &(l, r) in &m.pairs {
        match_left[l] = Some(r);
        match_right[r] = Some(l);
    }

    let mut seen_l = BTreeSet::new();
    let mut seen_r = BTreeSet::new();
    // queue of (side, vertex); from the saturated side we cross
    // non-matching edges, back we cross matching edges
    let mut queue: Vec<(Side, usize)> = Vec::new();
    match saturate {
        Side::Left => {
            for v in 0..g.left_count {
                if match_left[v].is_none() {
                    seen_l.insert(v);
                    queue.push((Side::Left, v));
                }
            }
        }
        Side::Right => {
            for u in 0..g.right_count {
                if match_right[u].is_none() {
                    seen_r.insert(u);
                    queue.push((Side::Right, u));
                }
            }
        }
    }
    while let Some((side, v)) = queue.pop() {
        match (side, saturate) {
            (Side::Left, Side::Left) => {
                for &u in &adj_l[v] {
                    if match_left[v] == Some(u) {
                        continue;
                    }
                    if seen_r.insert(u) {
                        queue.push((Side::Right, u));
                    }
                }
            }
            (Side::Right, Side::Left) => {
                if let Some(w) = match_right[v] {
                    if seen_l.insert(w) {
                        queue.push((Side::Left, w));
                    }
                }
            }
            (Side::Right, Side::Right) => {
                for &w in &adj_r[v] {
                    if match_right[v] == Some(w) {
                        continue;
                    }
                    if seen_l.insert(w) {
                        queue.push((Side::Left, w));
                    }
                }
            }
            (Side::Left, Side::Right) => {
                if let Some(u) = match_left[v] {
                    if seen_r.insert(u) {
                        queue.push((Side::Right, u));
                    }
                }
            }
        }
    }
    (seen_l, seen_r)
}

/// Hall violator for saturating the given side: a subset X of that side
/// with |N(X)| < |X|, or `None` when a saturating matching exists. The
/// violator is the reachable part of the saturated side in the final
/// alternating structure, which is deterministic.
pub fn hall_violator(g: &BipartiteGraph, saturate: Side) -> Option<Vec<usize>> {
    let m = max_matching(g);
    let want = match saturate {
        Side::Left => g.left_count,
        Side::Right => g.right_count,
    };
    if m.size() == want {
        return None;
    }
    let (seen_l, seen_r) = alternating_reachable(g, &m, saturate);
    let violator: Vec<usize> = match saturate {
        Side::Left => seen_l.into_iter().collect(),
        Side::Right => seen_r.into_iter().collect(),
    };
    debug_assert!(!violator.is_empty());
    debug_assert!({
        let n = match saturate {
            Side::Left => g.neighborhood_of_left(&violator),
            Side::Right => g.neighborhood_of_right(&violator),
        };
        n.len() < violator.len()
    });
    Some(violator)
}

/// Complement violator used by the column-offset recursion: when no
/// matching saturates the LEFT side, the unreached right vertices X
/// satisfy |N(X)| < |X| (the König cover argument). `None` when the left
/// side is saturable.
pub fn right_violator_for_left_saturation(g: &BipartiteGraph) -> Option<Vec<usize>> {
    let m = max_matching(g);
    if m.size() == g.left_count {
        return None;
    }
    let (_, seen_r) = alternating_reachable(g, &m, Side::Left);
    let violator: Vec<usize> = (0..g.right_count).filter(|u| !seen_r.contains(u)).collect();
    debug_assert!(g.neighborhood_of_right(&violator).len() < violator.len());
    Some(violator)
}

/// A maximum-weight assignment saturating the left side, with dual
/// potentials certifying optimality: y_l + y_r ≥ w(l,r) on every edge,
/// with equality on assigned edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    /// assigned right vertex per left vertex
    pub assigned: Vec<usize>,
    pub left_duals: Vec<Rat>,
    pub right_duals: Vec<Rat>,
}

impl Assignment {
    /// Exact complementary-slackness check against the weight grid.
    pub fn certifies(&self, weights: &[Vec<Option<Rat>>]) -> bool {
        for (l, row) in weights.iter().enumerate() {
            for (r, w) in row.iter().enumerate() {
                if let Some(w) = w {
                    if &self.left_duals[l] + &self.right_duals[r] < *w {
                        return false;
                    }
                }
            }
        }
        for (l, &r) in self.assigned.iter().enumerate() {
            match &weights[l][r] {
                Some(w) => {
                    if &self.left_duals[l] + &self.right_duals[r] != *w {
                        return false;
                    }
                }
                None => return false,
            }
        }
        let mut used = BTreeSet::new();
        self.assigned.iter().all(|r| used.insert(*r))
    }
}

/// Hungarian-style maximum-weight assignment over a rectangular grid of
/// optional weights (absent entries are not edges). Requires and checks
/// that a left-saturating matching over the present entries exists.
pub fn max_weight_assignment(weights: &[Vec<Option<Rat>>]) -> Result<Assignment, Error> {
    let n = weights.len();
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let m = weights[0].len();
    if weights.iter().any(|row| row.len() != m) {
        return Err(Error::Precondition("ragged weight grid".into()));
    }

    // feasible initial duals: y_l = max weight in row, y_r = 0
    let mut y: Vec<Rat> = Vec::with_capacity(n);
    for (i, row) in weights.iter().enumerate() {
        let best = row.iter().flatten().max().cloned();
        match best {
            Some(b) => y.push(b),
            None => return Err(Error::RowAllBottom(i)),
        }
    }
    let mut z: Vec<Rat> = vec![Rat::from_integer(0.into()); m];
    let mut match_right: Vec<Option<usize>> = vec![None; m];

    for root in 0..n {
        // grow an alternating tree of tight edges from `root`
        let mut in_tree_left = vec![false; n];
        let mut in_tree_right = vec![false; m];
        in_tree_left[root] = true;
        // slack[r] = min over tree rows l of y_l + z_r - w(l,r), with arg row
        let mut slack: Vec<Option<(Rat, usize)>> = vec![None; m];
        let mut parent_right: Vec<Option<usize>> = vec![None; m]; // tree row that reached r
        let update_slack =
            |l: usize, slack: &mut Vec<Option<(Rat, usize)>>, y: &Vec<Rat>, z: &Vec<Rat>| {
                for r in 0..m {
                    if let Some(w) = &weights[l][r] {
                        let s = &y[l] + &z[r] - w;
                        if slack[r].as_ref().map_or(true, |(cur, _)| s < *cur) {
                            slack[r] = Some((s, l));
                        }
                    }
                }
            };
        update_slack(root, &mut slack, &y, &z);

        let augmenting_end = loop {
            // pick a tight edge to a right vertex outside the tree
            let mut tight: Option<usize> = None;
            for r in 0..m {
                if in_tree_right[r] {
                    continue;
                }
                if let Some((s, _)) = &slack[r] {
                    if s.is_zero() {
                        tight = Some(r);
                        break;
                    }
                }
            }
            let r = match tight {
                Some(r) => r,
                None => {
                    // dual update by the minimum positive slack
                    let delta = slack
                        .iter()
                        .enumerate()
                        .filter(|(r, _)| !in_tree_right[*r])
                        .filter_map(|(_, s)| s.as_ref().map(|(v, _)| v.clone()))
                        .min();
                    let delta = match delta {
                        Some(d) => d,
                        None => return Err(Error::InfeasibleAssignment),
                    };
                    for (l, flag) in in_tree_left.iter().enumerate() {
                        if *flag {
                            y[l] -= &delta;
                        }
                    }
                    for (r, flag) in in_tree_right.iter().enumerate() {
                        if *flag {
                            z[r] += &delta;
                        }
                    }
                    for (r, s) in slack.iter_mut().enumerate() {
                        if !in_tree_right[r] {
                            if let Some((v, _)) = s {
                                *v -= &delta;
                            }
                        }
                    }
                    continue;
                }
            };
            in_tree_right[r] = true;
            parent_right[r] = Some(slack[r].as_ref().unwrap().1);
            match match_right[r] {
                None => break r,
                Some(l) => {
                    in_tree_left[l] = true;
                    update_slack(l, &mut slack, &y, &z);
                }
            }
        };

        // augment along parents
        let mut r = augmenting_end;
        loop {
            let l = parent_right[r].expect("tree edge");
            let prev = match_right
                .iter()
                .position(|&mr| mr == Some(l))
                .map(|old_r| old_r);
            match_right[r] = Some(l);
            match prev {
                Some(old_r) if old_r != r => {
                    r = old_r;
                }
                _ => break,
            }
        }
    }

    let mut assigned = vec![usize::MAX; n];
    for (r, l) in match_right.iter().enumerate() {
        if let Some(l) = l {
            assigned[*l] = r;
        }
    }
    debug_assert!(assigned.iter().all(|&r| r != usize::MAX));
    let out = Assignment {
        assigned,
        left_duals: y,
        right_duals: z,
    };
    debug_assert!(out.certifies(weights));
    Ok(out)
}

/// Edge set F with deg_F(w) = q-1 for every left vertex and deg_F(u) ≤ 1
/// on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiMatching {
    pub q: usize,
    /// the q-1 right vertices matched to each left vertex
    pub groups: Vec<Vec<usize>>,
}

impl SemiMatching {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (w, group) in self.groups.iter().enumerate() {
            for &u in group {
                out.push((w, u));
            }
        }
        out
    }
}

/// Finds F with deg_F(w) = q-1 per left vertex and deg_F(u) ≤ 1 per right
/// vertex, by matching q-1 copies of each left vertex. On Hall failure the
/// error carries the base left vertices whose copies form the violator.
pub fn semi_matching(g: &BipartiteGraph, q: usize) -> Result<SemiMatching, Error> {
    if q < 2 {
        return Err(Error::Precondition("semi-matching requires q >= 2".into()));
    }
    let copies = g.left_count * (q - 1);
    let mut pairs = Vec::new();
    let adj = g.adjacency_left();
    for (w, neigh) in adj.iter().enumerate() {
        for c in 0..q - 1 {
            let copy_id = w * (q - 1) + c;
            for &u in neigh {
                pairs.push((copy_id, u));
            }
        }
    }
    let copy_graph = BipartiteGraph::unweighted(copies, g.right_count, &pairs)?;
    if let Some(violator) = hall_violator(&copy_graph, Side::Left) {
        let mut base: Vec<usize> = violator.iter().map(|c| c / (q - 1)).collect();
        base.dedup();
        return Err(Error::HallViolation(base));
    }
    let m = max_matching(&copy_graph);
    let mut groups = vec![Vec::new(); g.left_count];
    for (copy_id, u) in m.pairs {
        groups[copy_id / (q - 1)].push(u);
    }
    for group in &mut groups {
        group.sort_unstable();
        debug_assert_eq!(group.len(), q - 1);
    }
    Ok(SemiMatching { q, groups })
}
