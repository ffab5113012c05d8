//! Independent brute-force decision procedures.
//!
//! These decide, by exhaustive enumeration over attainment patterns, the
//! existence of coefficients making several max-plus combinations agree.
//! They share only the value types with the constructive modules — the
//! decisions here never call membership, residuation, or any certificate
//! construction, so they can anchor tests of all of them.
//!
//! An attainment pattern fixes, per coordinate, either "this coordinate of
//! the common point is bottom" or one attaining generator index per side.
//! Each pattern induces a system of difference constraints over the
//! coefficients and the common point, solved exactly by negative-cycle
//! detection (Bellman-Ford) over rationals. Feasibility of the original
//! two-sided (or q-sided) max-plus equality is exactly the disjunction
//! over patterns, so the procedure is a complete decision method, not a
//! heuristic. Pattern spaces above a hard cap are refused, never sampled.

use num_traits::Zero;

use crate::error::Error;
use crate::geometry::{Mode, Point, PointSet};
use crate::scalar::{Rat, Scalar};

/// Hard cap on the number of attainment patterns examined per query.
pub const PATTERN_CAP: u128 = 4_000_000;

/// One attainment pattern: for every coordinate, either bottom or the
/// attaining generator index chosen inside each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttainmentPattern {
    /// `None` marks a bottom coordinate; otherwise one index per side.
    pub per_coordinate: Vec<Option<Vec<usize>>>,
}

/// A difference-constraint system x_u - x_v ≤ c over rational constants,
/// solved by Bellman-Ford from a virtual source. Node 0 is the source and
/// is pinned to 0, so "x_u = c" constraints can be anchored against it.
struct DiffSystem {
    nodes: usize,
    /// (from, to, weight) meaning x_to - x_from ≤ weight
    edges: Vec<(usize, usize, Rat)>,
}

impl DiffSystem {
    fn new(vars: usize) -> Self {
        DiffSystem {
            nodes: vars + 1,
            edges: Vec::new(),
        }
    }

    fn le(&mut self, u: usize, v: usize, c: Rat) {
        // x_u - x_v <= c
        self.edges.push((v + 1, u + 1, c));
    }

    fn eq(&mut self, u: usize, v: usize, c: Rat) {
        // x_u - x_v = c
        self.le(u, v, c.clone());
        self.le(v, u, -c);
    }

    fn pin(&mut self, u: usize, c: Rat) {
        // x_u = c relative to the source
        self.edges.push((0, u + 1, c.clone()));
        self.edges.push((u + 1, 0, -c));
    }

    /// Returns a satisfying assignment or `None` on a negative cycle.
    /// Distances start at 0 everywhere (a virtual source used only for
    /// reachability, adding no constraint of its own); the final values
    /// are shifted so the anchor node sits exactly at 0.
    fn solve(&self) -> Option<Vec<Rat>> {
        let mut dist: Vec<Rat> = vec![Rat::zero(); self.nodes];
        for _ in 0..=self.nodes {
            let mut changed = false;
            for (from, to, w) in &self.edges {
                let cand = &dist[*from] + w;
                if cand < dist[*to] {
                    dist[*to] = cand;
                    changed = true;
                }
            }
            if !changed {
                let base = dist[0].clone();
                return Some(dist.into_iter().skip(1).map(|v| v - &base).collect());
            }
        }
        None
    }
}

fn check_disjoint_nonempty(sides: &[Vec<usize>], n: usize) -> Result<(), Error> {
    let mut seen = vec![false; n];
    for side in sides {
        if side.is_empty() {
            return Err(Error::Precondition("empty side".into()));
        }
        for &i in side {
            if i >= n {
                return Err(Error::Precondition(format!("index {} out of range", i)));
            }
            if seen[i] {
                return Err(Error::Precondition(format!("index {} repeated", i)));
            }
            seen[i] = true;
        }
    }
    Ok(())
}

/// Decides whether coefficients λ exist making the combinations of every
/// side equal. `Mode::Conic` asks for finite λ on every involved index
/// (the conic theorems are about real coefficients); `Mode::Convex` asks
/// for λ in Rmax with max λ = 0 inside every side, which is checked on the
/// lifted points. Returns λ (bottom off the involved indices) and the
/// common point, or `None` after exhausting every pattern.
pub fn tropical_system_feasible(
    sides: &[Vec<usize>],
    points: &PointSet,
    mode: Mode,
) -> Result<Option<(Vec<Scalar>, Point)>, Error> {
    check_disjoint_nonempty(sides, points.len())?;
    if sides.len() < 2 {
        return Err(Error::Precondition("need at least two sides".into()));
    }
    let work;
    let set = match mode {
        Mode::Convex => {
            work = points.lift();
            &work
        }
        Mode::Conic => points,
    };
    let d = set.dim();
    let involved: Vec<usize> = sides.iter().flatten().copied().collect();

    let mut per_coord: u128 = 1;
    for side in sides {
        per_coord = per_coord.saturating_mul(side.len() as u128);
    }
    let total = (per_coord + 1).saturating_pow(d as u32);
    if total > PATTERN_CAP {
        return Err(Error::PatternSpaceExceeded(total, PATTERN_CAP));
    }

    // odometer over coordinates: 0 = bottom, 1..=per_coord = attainer tuple
    let per_coord = per_coord as usize;
    let mut odo = vec![0usize; d];
    loop {
        if let Some(found) = try_pattern(&odo, sides, set, &involved, mode)? {
            let common = match mode {
                Mode::Convex => found.1.unlift(),
                Mode::Conic => found.1,
            };
            let mut lambdas = vec![Scalar::Bottom; points.len()];
            for (&i, l) in involved.iter().zip(found.0) {
                lambdas[i] = l;
            }
            return Ok(Some((lambdas, common)));
        }
        // advance odometer
        let mut k = 0;
        loop {
            if k == d {
                return Ok(None);
            }
            odo[k] += 1;
            if odo[k] <= per_coord {
                break;
            }
            odo[k] = 0;
            k += 1;
        }
    }
}

/// Decodes choice `c` in 1..=prod(|side|) into one index per side.
fn decode_attainers(mut c: usize, sides: &[Vec<usize>]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sides.len());
    for side in sides {
        out.push(side[c % side.len()]);
        c /= side.len();
    }
    out
}

/// Tries one pattern; returns (λ over `involved`, lifted/raw common point)
/// if it is consistent.
fn try_pattern(
    odo: &[usize],
    sides: &[Vec<usize>],
    set: &PointSet,
    involved: &[usize],
    mode: Mode,
) -> Result<Option<(Vec<Scalar>, Point)>, Error> {
    let d = set.dim();
    // dead = indices forced to λ = bottom by a bottom coordinate
    let mut dead = vec![false; involved.len()];
    for (j, &choice) in odo.iter().enumerate() {
        if choice == 0 {
            for (k, &i) in involved.iter().enumerate() {
                if set.point(i).coord(j).is_finite() {
                    dead[k] = true;
                }
            }
        }
    }
    if mode == Mode::Conic && dead.iter().any(|&x| x) {
        // conic feasibility is about finite coefficients
        return Ok(None);
    }

    // variables: λ per involved index, then v per coordinate
    let pos_of = |i: usize| involved.iter().position(|&x| x == i).unwrap();
    let nvars = involved.len() + d;
    let mut sys = DiffSystem::new(nvars);
    for (j, &choice) in odo.iter().enumerate() {
        if choice == 0 {
            continue;
        }
        let vj = involved.len() + j;
        if mode == Mode::Convex && j == d - 1 {
            sys.pin(vj, Rat::zero());
        }
        let atts = decode_attainers(choice - 1, sides);
        for &a in &atts {
            let k = pos_of(a);
            if dead[k] {
                return Ok(None);
            }
            match set.point(a).coord(j) {
                Scalar::Finite(x) => sys.eq(vj, k, x.clone()),
                Scalar::Bottom => return Ok(None),
            }
        }
        for (k, &i) in involved.iter().enumerate() {
            if dead[k] {
                continue;
            }
            if let Scalar::Finite(x) = set.point(i).coord(j) {
                // λ_i + x ≤ v_j
                sys.le(k, vj, -x.clone());
            }
        }
    }
    let sol = match sys.solve() {
        Some(s) => s,
        None => return Ok(None),
    };

    let lambdas: Vec<Scalar> = involved
        .iter()
        .enumerate()
        .map(|(k, _)| {
            if dead[k] {
                Scalar::Bottom
            } else {
                Scalar::Finite(sol[k].clone())
            }
        })
        .collect();
    let common = Point::new(
        (0..d)
            .map(|j| {
                if odo[j] == 0 {
                    Scalar::Bottom
                } else {
                    Scalar::Finite(sol[involved.len() + j].clone())
                }
            })
            .collect(),
    );

    // direct verification of the candidate, independent of the solver
    for side in sides {
        let mut acc = Point::all_bottom(d);
        let mut side_max = Scalar::Bottom;
        for &i in side {
            let l = &lambdas[pos_of(i)];
            acc = acc.join(&set.point(i).add_scalar(l));
            side_max = side_max.join(l);
        }
        if acc != common {
            return Ok(None);
        }
        if mode == Mode::Convex && side_max != Scalar::zero() {
            return Ok(None);
        }
    }
    Ok(Some((lambdas, common)))
}

/// Membership decision by pure attainment enumeration: the target point is
/// fixed and each finite coordinate picks its attaining generator. No
/// residuation is involved; attainers get their forced coefficient and all
/// other generators get bottom.
pub fn membership_patterns(
    p: &Point,
    generators: &PointSet,
    mode: Mode,
) -> Result<Option<Vec<Scalar>>, Error> {
    if generators.is_empty() {
        return Err(Error::EmptySet);
    }
    if p.dim() != generators.dim() {
        return Err(Error::DimensionMismatch {
            expected: generators.dim(),
            got: p.dim(),
        });
    }
    let (target, set) = match mode {
        Mode::Convex => (p.lift(), generators.lift()),
        Mode::Conic => (p.clone(), generators.clone()),
    };
    let d = set.dim();
    let n = set.len();
    let finite_coords: Vec<usize> = (0..d).filter(|&j| target.coord(j).is_finite()).collect();
    let total = (n as u128).saturating_pow(finite_coords.len() as u32);
    if total > PATTERN_CAP {
        return Err(Error::PatternSpaceExceeded(total, PATTERN_CAP));
    }

    // a generator is usable only if it is bottom on every bottom target
    // coordinate; in convex mode a generator that was entirely bottom
    // before lifting is excluded as well
    let usable: Vec<bool> = (0..n)
        .map(|i| {
            let ok_bottoms = (0..d).all(|j| {
                target.coord(j).is_finite() || set.point(i).coord(j).is_bottom()
            });
            let ok_degenerate = match mode {
                Mode::Convex => !generators.point(i).is_all_bottom(),
                Mode::Conic => true,
            };
            ok_bottoms && ok_degenerate
        })
        .collect();

    if finite_coords.is_empty() {
        // all-bottom target: empty combination works conically
        return Ok(match mode {
            Mode::Conic => Some(vec![Scalar::Bottom; generators.len()]),
            // convex needs max λ = 0 which no usable generator can give
            Mode::Convex => None,
        });
    }

    let mut odo = vec![0usize; finite_coords.len()];
    'pattern: loop {
        // forced coefficient per attainer, consistent across coordinates
        let mut forced: Vec<Option<Rat>> = vec![None; n];
        let mut ok = true;
        for (slot, &j) in finite_coords.iter().enumerate() {
            let a = odo[slot];
            if !usable[a] {
                ok = false;
                break;
            }
            match (target.coord(j), set.point(a).coord(j)) {
                (Scalar::Finite(t), Scalar::Finite(x)) => {
                    let val = t - x;
                    match &forced[a] {
                        None => forced[a] = Some(val),
                        Some(prev) if *prev == val => {}
                        Some(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            // attainers must stay below the target everywhere
            'check: for (a, f) in forced.iter().enumerate() {
                if let Some(l) = f {
                    for j in 0..d {
                        if let Scalar::Finite(x) = set.point(a).coord(j) {
                            match target.coord(j) {
                                Scalar::Finite(t) => {
                                    if l + x > *t {
                                        ok = false;
                                        break 'check;
                                    }
                                }
                                Scalar::Bottom => {
                                    ok = false;
                                    break 'check;
                                }
                            }
                        }
                    }
                }
            }
        }
        if ok {
            let lambdas: Vec<Scalar> = forced
                .iter()
                .map(|f| match f {
                    Some(v) => Scalar::Finite(v.clone()),
                    None => Scalar::Bottom,
                })
                .collect();
            // in convex mode the lifted coordinate forces max λ = 0
            return Ok(Some(lambdas));
        }
        let mut k = 0;
        loop {
            if k == finite_coords.len() {
                break 'pattern;
            }
            odo[k] += 1;
            if odo[k] < n {
                break;
            }
            odo[k] = 0;
            k += 1;
        }
    }
    Ok(None)
}

/// All unordered partitions of 0..n into exactly q nonempty parts, by
/// restricted-growth strings.
fn set_partitions(n: usize, q: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if n == 0 || q == 0 || q > n {
        return out;
    }
    let mut labels = vec![0usize; n];
    fn rec(i: usize, used: usize, labels: &mut Vec<usize>, n: usize, q: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            if used == q {
                let mut parts = vec![Vec::new(); q];
                for (idx, &l) in labels.iter().enumerate() {
                    parts[l].push(idx);
                }
                out.push(parts);
            }
            return;
        }
        // pruning: remaining elements must be able to open enough parts
        if used + (n - i) < q {
            return;
        }
        for l in 0..=used.min(q - 1) {
            labels[i] = l;
            rec(i + 1, used.max(l + 1), labels, n, q, out);
        }
    }
    rec(0, 0, &mut labels, n, q, &mut out);
    out
}

/// A Tverberg partition found by exhaustive search, with its witness.
#[derive(Clone, Debug)]
pub struct OracleTverberg {
    pub parts: Vec<Vec<usize>>,
    pub lambdas: Vec<Scalar>,
    pub common: Point,
}

/// Exhaustively enumerates the unordered partitions of all points into q
/// nonempty parts whose hulls share a common point (convex semantics).
/// Refuses instances beyond the small-instance caps.
pub fn enumerate_all_tverberg(points: &PointSet, q: usize) -> Result<Vec<OracleTverberg>, Error> {
    if points.len() > 9 || points.dim() > 2 || q > 3 || q == 0 {
        return Err(Error::Precondition(
            "oracle enumeration is capped at 9 points, dimension 2, q ≤ 3".into(),
        ));
    }
    let mut found = Vec::new();
    if q == 1 {
        // single part containing everything combines to its own sup
        let sides = vec![(0..points.len()).collect::<Vec<_>>()];
        let lambdas = vec![Scalar::zero(); points.len()];
        let mut acc = Point::all_bottom(points.dim());
        for p in points.iter() {
            acc = acc.join(p);
        }
        found.push(OracleTverberg {
            parts: sides,
            lambdas,
            common: acc,
        });
        return Ok(found);
    }
    for parts in set_partitions(points.len(), q) {
        if let Some((lambdas, common)) = tropical_system_feasible(&parts, points, Mode::Convex)? {
            found.push(OracleTverberg {
                parts,
                lambdas,
                common,
            });
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn pts_1d(vals: &[i64]) -> PointSet {
        PointSet::new(1, vals.iter().map(|&v| Point::from_ints(&[v])).collect()).unwrap()
    }

    #[test]
    fn equal_points_are_feasible() {
        let x = PointSet::from_rows(&[&[1, 2], &[1, 2]]);
        let (l, common) =
            tropical_system_feasible(&[vec![0], vec![1]], &x, Mode::Conic)
                .unwrap()
                .unwrap();
        assert!(l.iter().all(Scalar::is_finite));
        assert!(common.coords().iter().all(Scalar::is_finite));
    }

    #[test]
    fn radon_pattern_on_the_line() {
        // {2} vs {1, 3} on points 0, 1, 2: feasible convexly at the point 1
        let x = pts_1d(&[0, 1, 2]);
        let (l, common) =
            tropical_system_feasible(&[vec![1], vec![0, 2]], &x, Mode::Convex)
                .unwrap()
                .unwrap();
        assert_eq!(common, Point::from_ints(&[1]));
        assert_eq!(l[1], Scalar::zero());
    }

    #[test]
    fn separated_singletons_conic_but_not_convex() {
        let x = pts_1d(&[0, 5]);
        // conic: one-point conic hulls on the line cover all of R
        assert!(tropical_system_feasible(&[vec![0], vec![1]], &x, Mode::Conic)
            .unwrap()
            .is_some());
        // convex: hull{0} ∩ hull{5} = ∅
        assert!(tropical_system_feasible(&[vec![0], vec![1]], &x, Mode::Convex)
            .unwrap()
            .is_none());
    }

    #[test]
    fn feasibility_is_symmetric_in_sides() {
        let x = pts_1d(&[0, 1, 2]);
        let a = tropical_system_feasible(&[vec![1], vec![0, 2]], &x, Mode::Convex).unwrap();
        let b = tropical_system_feasible(&[vec![0, 2], vec![1]], &x, Mode::Convex).unwrap();
        assert_eq!(a.is_some(), b.is_some());
    }

    #[test]
    fn conic_feasibility_is_shift_invariant() {
        let x = PointSet::from_rows(&[&[0, 3], &[2, 1], &[1, 1]]);
        let shifted = PointSet::new(
            2,
            x.iter()
                .map(|p| p.add_scalar(&Scalar::from_rat(rat(7, 3))))
                .collect(),
        )
        .unwrap();
        let sides = vec![vec![0, 1], vec![2]];
        let a = tropical_system_feasible(&sides, &x, Mode::Conic).unwrap();
        let b = tropical_system_feasible(&sides, &shifted, Mode::Conic).unwrap();
        assert_eq!(a.is_some(), b.is_some());
    }

    #[test]
    fn membership_patterns_match_hand_values() {
        let x = PointSet::from_rows(&[&[0, 0], &[0, 2], &[2, 0]]);
        assert!(membership_patterns(&Point::from_ints(&[1, 1]), &x, Mode::Convex)
            .unwrap()
            .is_some());
        assert!(membership_patterns(&Point::from_ints(&[3, 3]), &x, Mode::Convex)
            .unwrap()
            .is_none());
        assert!(membership_patterns(&Point::from_ints(&[3, 3]), &x, Mode::Conic)
            .unwrap()
            .is_some());
    }

    #[test]
    fn enumerate_line_instance() {
        // the two partitions of {0,1,2,3,4} for q = 3
        let x = pts_1d(&[0, 1, 2, 3, 4]);
        let found = enumerate_all_tverberg(&x, 3).unwrap();
        let mut parts: Vec<Vec<Vec<usize>>> = found.iter().map(|f| f.parts.clone()).collect();
        parts.sort();
        assert_eq!(
            parts,
            vec![
                vec![vec![0, 3], vec![1, 4], vec![2]],
                vec![vec![0, 4], vec![1, 3], vec![2]],
            ]
        );
    }

    #[test]
    fn duplicate_pair_contains_singleton_partition() {
        let x = pts_1d(&[5, 5]);
        let found = enumerate_all_tverberg(&x, 2).unwrap();
        assert!(found.iter().any(|f| f.parts == vec![vec![0], vec![1]]));
    }

    #[test]
    fn too_few_points_no_partition() {
        // 2 points on the line in convex position, q = 3 impossible;
        // also 4 generic points, q = 3, d = 1 (the tight bound)
        let x = pts_1d(&[0, 1]);
        assert!(enumerate_all_tverberg(&x, 3).unwrap().is_empty());
        let x = PointSet::new(
            1,
            vec![
                Point::new(vec![Scalar::from_rat(rat(0, 1))]),
                Point::new(vec![Scalar::from_rat(rat(13, 7))]),
                Point::new(vec![Scalar::from_rat(rat(29, 5))]),
                Point::new(vec![Scalar::from_rat(rat(97, 11))]),
            ],
        )
        .unwrap();
        assert!(enumerate_all_tverberg(&x, 3).unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let x = PointSet::new(3, (0..20).map(|v| Point::from_ints(&[v, v, v])).collect()).unwrap();
        let sides: Vec<Vec<usize>> = vec![(0..10).collect(), (10..20).collect()];
        assert!(matches!(
            tropical_system_feasible(&sides, &x, Mode::Convex),
            Err(Error::PatternSpaceExceeded(_, _))
        ));
    }
}
