//! Carathéodory-type constructions: support reduction, the colorful
//! transversal, column offsets from assignment duality, the generalized
//! colorful theorem against a max-plus convex set, and a bounded
//! alternating-projection intersection finder.

use crate::bipartite::{max_weight_assignment, right_violator_for_left_saturation, BipartiteGraph, Edge};
use crate::error::Error;
use crate::geometry::{combine, membership, project, Combination, Mode, Point, PointSet};
use crate::scalar::{Rat, Scalar};

/// Reduces a convex hull certificate for `p` to at most d+1 generators:
/// one witness per finite coordinate plus one generator carrying the
/// normalization λ = 0. Errors if `p` is not a member.
pub fn reduce_support(p: &Point, generators: &PointSet) -> Result<Combination, Error> {
    let full = membership(p, generators, Mode::Convex)?.ok_or(Error::NotAMember)?;
    if generators.len() <= generators.dim() + 1 {
        return Ok(full);
    }

    let shifted: Vec<Point> = generators
        .iter()
        .zip(&full.lambdas)
        .map(|(x, l)| x.add_scalar(l))
        .collect();
    let attains = |i: usize, j: usize| shifted[i].coord(j).is_finite() && shifted[i].coord(j) == p.coord(j);

    // normalization witness: among λ = 0 generators, the one attaining the
    // most coordinates (ties to the lowest index)
    let mut best: Option<(usize, usize)> = None;
    for (i, l) in full.lambdas.iter().enumerate() {
        if *l == Scalar::zero() {
            let coverage = (0..p.dim()).filter(|&j| attains(i, j)).count();
            if best.as_ref().map_or(true, |&(c, _)| coverage > c) {
                best = Some((coverage, i));
            }
        }
    }
    let (_, zero_witness) = best.ok_or_else(|| {
        Error::Internal("convex membership without a zero coefficient".into())
    })?;

    let mut keep = vec![false; generators.len()];
    keep[zero_witness] = true;
    for j in 0..p.dim() {
        if p.coord(j).is_bottom() {
            continue;
        }
        if keep.iter().enumerate().any(|(i, &k)| k && attains(i, j)) {
            continue;
        }
        let witness = (0..generators.len())
            .find(|&i| attains(i, j))
            .ok_or_else(|| Error::Internal("member without attaining generator".into()))?;
        keep[witness] = true;
    }

    let lambdas: Vec<Scalar> = full
        .lambdas
        .iter()
        .enumerate()
        .map(|(i, l)| if keep[i] { l.clone() } else { Scalar::Bottom })
        .collect();
    let reduced = combine(generators, &lambdas, Mode::Convex)?;
    if &reduced.result != p {
        return Err(Error::Internal("support reduction changed the point".into()));
    }
    Ok(reduced)
}

/// d+1 color classes in dimension d whose hulls all contain the target.
#[derive(Clone, Debug)]
pub struct ColorfulInstance {
    classes: Vec<PointSet>,
    target: Point,
    /// principal certificates of target membership, one per class
    memberships: Vec<Combination>,
}

impl ColorfulInstance {
    pub fn new(classes: Vec<PointSet>, target: Point) -> Result<Self, Error> {
        let d = target.dim();
        if classes.len() != d + 1 {
            return Err(Error::SizeMismatch {
                expected: d + 1,
                got: classes.len(),
            });
        }
        let mut memberships = Vec::with_capacity(classes.len());
        for (i, class) in classes.iter().enumerate() {
            if class.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: class.dim(),
                });
            }
            match membership(&target, class, Mode::Convex)? {
                Some(c) => memberships.push(c),
                None => return Err(Error::ClassMembershipFailure(i)),
            }
        }
        Ok(ColorfulInstance {
            classes,
            target,
            memberships,
        })
    }

    pub fn classes(&self) -> &[PointSet] {
        &self.classes
    }

    pub fn target(&self) -> &Point {
        &self.target
    }
}

/// One point per class with coefficients combining to the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    /// chosen point index inside each class
    pub picks: Vec<usize>,
    /// coefficient per class, max = 0
    pub lambdas: Vec<Scalar>,
    /// the combined point
    pub result: Point,
}

impl Transversal {
    /// Exact re-check against the classes: max λ = 0, each shifted pick
    /// stays below the result, and the coordinatewise max reproduces it.
    pub fn verify(&self, classes: &[PointSet], target: &Point) -> bool {
        if self.picks.len() != classes.len() || self.lambdas.len() != classes.len() {
            return false;
        }
        let max = self.lambdas.iter().fold(Scalar::Bottom, |m, l| m.join(l));
        if max != Scalar::zero() {
            return false;
        }
        let mut acc = Point::all_bottom(target.dim());
        for ((class, &pick), l) in classes.iter().zip(&self.picks).zip(&self.lambdas) {
            if pick >= class.len() {
                return false;
            }
            let shifted = class.point(pick).add_scalar(l);
            if !shifted.le(target) {
                return false;
            }
            acc = acc.join(&shifted);
        }
        &acc == target && &self.result == target
    }
}

/// Max-plus colorful Carathéodory: picks one point from each of the d+1
/// classes so that the picks combine exactly to the target. Class i
/// witnesses coordinate i (for i < d) through the attainment of its
/// membership certificate; the last class contributes a coefficient-0
/// point, which provides the normalization.
pub fn colorful(instance: &ColorfulInstance) -> Result<Transversal, Error> {
    let d = instance.target.dim();
    let p = &instance.target;
    let mut picks = Vec::with_capacity(d + 1);
    let mut lambdas = Vec::with_capacity(d + 1);

    for i in 0..d {
        let cert = &instance.memberships[i];
        let class = &instance.classes[i];
        let pick = if p.coord(i).is_bottom() {
            // vacuous coordinate: any point with a shift below p works;
            // every generator qualifies because the combination equals p
            0
        } else {
            (0..class.len())
                .find(|&j| {
                    let v = &cert.lambdas[j] + class.point(j).coord(i);
                    v.is_finite() && &v == p.coord(i)
                })
                .ok_or_else(|| Error::Internal("membership without coordinate witness".into()))?
        };
        picks.push(pick);
        lambdas.push(cert.lambdas[pick].clone());
    }

    // last class: the pick whose principal coefficient is 0
    let cert = &instance.memberships[d];
    let pick = (0..instance.classes[d].len())
        .find(|&j| cert.lambdas[j] == Scalar::zero())
        .ok_or_else(|| Error::Internal("convex membership without a zero coefficient".into()))?;
    picks.push(pick);
    lambdas.push(Scalar::zero());

    let t = Transversal {
        picks,
        lambdas,
        result: p.clone(),
    };
    if !t.verify(&instance.classes, p) {
        return Err(Error::Internal("colorful transversal failed verification".into()));
    }
    Ok(t)
}

/// Column offsets and the injective attainment map of the offset lemma:
/// offsets λ_j (max λ = 0) so that after adding λ_j to column j, every
/// row's maximum is attained at its assigned column and the assignment is
/// injective. Recursion: a maximum-weight assignment with its duals when
/// the rows can be saturated, otherwise a Hall violator on the columns,
/// recursion inside it, and bottom offsets outside.
pub fn column_offsets(matrix: &[Vec<Scalar>]) -> Result<(Vec<Scalar>, Vec<usize>), Error> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let m = matrix[0].len();
    if matrix.iter().any(|row| row.len() != m) {
        return Err(Error::Precondition("ragged matrix".into()));
    }
    if m < n {
        return Err(Error::Precondition("need at least as many columns as rows".into()));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.iter().all(Scalar::is_bottom) {
            return Err(Error::RowAllBottom(i));
        }
    }
    let (lambdas, assignment) = column_offsets_rec(matrix, n, m);
    debug_assert!(offsets_are_valid(matrix, &lambdas, &assignment));
    Ok((lambdas, assignment))
}

fn column_offsets_rec(matrix: &[Vec<Scalar>], n: usize, m: usize) -> (Vec<Scalar>, Vec<usize>) {
    // finite entries as weighted edges, rows on the left
    let mut edges = Vec::new();
    for (i, row) in matrix.iter().enumerate() {
        for (j, a) in row.iter().enumerate() {
            if let Scalar::Finite(w) = a {
                edges.push(Edge {
                    left: i,
                    right: j,
                    weight: Some(w.clone()),
                });
            }
        }
    }
    let g = BipartiteGraph::new(n, m, edges).expect("edges in range");

    match right_violator_for_left_saturation(&g) {
        None => {
            // saturating branch: duals of a maximum-weight assignment
            let weights: Vec<Vec<Option<Rat>>> = matrix
                .iter()
                .map(|row| row.iter().map(|a| a.as_rat().cloned()).collect())
                .collect();
            let a = max_weight_assignment(&weights).expect("saturating matching exists");
            // λ_j = -z_j, normalized so the maximum is 0
            let min_z = a.right_duals.iter().min().cloned().expect("m >= 1");
            let lambdas: Vec<Scalar> = a
                .right_duals
                .iter()
                .map(|z| Scalar::Finite(&min_z - z))
                .collect();
            (lambdas, a.assigned)
        }
        Some(violator) => {
            // rows adjacent to the violating columns
            let sub_rows = g.neighborhood_of_right(&violator);
            let (sub_lambdas, sub_assignment) = if sub_rows.is_empty() {
                (vec![Scalar::zero(); violator.len()], Vec::new())
            } else {
                let sub: Vec<Vec<Scalar>> = sub_rows
                    .iter()
                    .map(|&i| violator.iter().map(|&j| matrix[i][j].clone()).collect())
                    .collect();
                column_offsets_rec(&sub, sub_rows.len(), violator.len())
            };
            let mut lambdas = vec![Scalar::Bottom; m];
            for (k, &j) in violator.iter().enumerate() {
                lambdas[j] = sub_lambdas[k].clone();
            }
            // rows inside the recursion keep their assigned columns; the
            // remaining rows are all bottom after the offsets and take the
            // lowest-index unused columns
            let mut assignment = vec![usize::MAX; n];
            let mut used = vec![false; m];
            for (k, &i) in sub_rows.iter().enumerate() {
                let j = violator[sub_assignment[k]];
                assignment[i] = j;
                used[j] = true;
            }
            for slot in assignment.iter_mut() {
                if *slot == usize::MAX {
                    let j = used.iter().position(|&u| !u).expect("m >= n columns");
                    *slot = j;
                    used[j] = true;
                }
            }
            (lambdas, assignment)
        }
    }
}

/// Exact validity check for column offsets: max λ = 0, assignment
/// injective, every row's maximum over offset entries equals its value at
/// the assigned column.
pub fn offsets_are_valid(matrix: &[Vec<Scalar>], lambdas: &[Scalar], assignment: &[usize]) -> bool {
    let max = lambdas.iter().fold(Scalar::Bottom, |acc, l| acc.join(l));
    if max != Scalar::zero() {
        return false;
    }
    let mut seen = vec![false; lambdas.len()];
    for &j in assignment {
        if seen[j] {
            return false;
        }
        seen[j] = true;
    }
    for (i, row) in matrix.iter().enumerate() {
        let value = |j: usize| &lambdas[j] + &row[j];
        let row_max = (0..row.len()).fold(Scalar::Bottom, |acc, j| acc.join(&value(j)));
        if value(assignment[i]) != row_max {
            return false;
        }
    }
    true
}

/// Result of the generalized colorful theorem: the transversal plus the
/// point of C that its hull meets.
#[derive(Clone, Debug)]
pub struct GeneralizedColorful {
    pub transversal: Transversal,
    pub meeting_point: Point,
}

/// Generalized colorful Carathéodory against a max-plus convex set C
/// given by generators. Witnesses b_i in C ∩ mpconv(X_i) are validated
/// when supplied and searched by bounded alternating projection when not.
/// The lifted witness matrix goes through [`column_offsets`]; each
/// coordinate of the meeting point is then attained by a different class,
/// and per-class attainment pulls the certificate back to original points.
pub fn generalized_colorful(
    classes: &[PointSet],
    convex_set: &PointSet,
    witnesses: Option<&[Point]>,
    max_iters: usize,
) -> Result<GeneralizedColorful, Error> {
    let d = convex_set.dim();
    if classes.len() != d + 1 {
        return Err(Error::SizeMismatch {
            expected: d + 1,
            got: classes.len(),
        });
    }
    for class in classes {
        if class.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: class.dim(),
            });
        }
    }

    // gather one witness per class
    let mut bs: Vec<Point> = Vec::with_capacity(d + 1);
    match witnesses {
        Some(ws) => {
            if ws.len() != d + 1 {
                return Err(Error::SizeMismatch {
                    expected: d + 1,
                    got: ws.len(),
                });
            }
            for (i, w) in ws.iter().enumerate() {
                let in_c = membership(w, convex_set, Mode::Convex)?.is_some();
                let in_class = membership(w, &classes[i], Mode::Convex)?.is_some();
                if !in_c || !in_class {
                    return Err(Error::WitnessInvalid(i));
                }
                bs.push(w.clone());
            }
        }
        None => {
            for (i, class) in classes.iter().enumerate() {
                match intersect_two_hulls(convex_set, class, max_iters)? {
                    Some(b) => bs.push(b),
                    None => return Err(Error::WitnessNotFound(i)),
                }
            }
        }
    }

    // lifted witness matrix: rows = d+1 coordinates, columns = classes
    let matrix: Vec<Vec<Scalar>> = (0..d + 1)
        .map(|r| {
            (0..d + 1)
                .map(|i| {
                    if r < d {
                        bs[i].coord(r).clone()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    let (offsets, assignment) = column_offsets(&matrix)?;

    // meeting point: coordinatewise max of offset lifted witnesses
    let lifted_meet = {
        let mut acc = Point::all_bottom(d + 1);
        for (i, b) in bs.iter().enumerate() {
            acc = acc.join(&b.lift().add_scalar(&offsets[i]));
        }
        acc
    };
    if lifted_meet.coord(d) != &Scalar::zero() {
        return Err(Error::Internal("offset normalization lost the lifted coordinate".into()));
    }
    let meeting_point = lifted_meet.unlift();

    // row assigned to each column: with a square matrix the assignment is
    // a bijection
    let mut row_of_class = vec![usize::MAX; d + 1];
    for (row, &col) in assignment.iter().enumerate() {
        row_of_class[col] = row;
    }

    // pull back through each witness's own membership certificate
    let mut picks = Vec::with_capacity(d + 1);
    let mut lambdas = Vec::with_capacity(d + 1);
    for (i, class) in classes.iter().enumerate() {
        let cert = membership(&bs[i], class, Mode::Convex)?
            .ok_or(Error::WitnessInvalid(i))?;
        let r = row_of_class[i];
        let lifted_b = bs[i].lift();
        let target = lifted_b.coord(r);
        let pick = if target.is_bottom() {
            0
        } else {
            (0..class.len())
                .find(|&h| {
                    let v = if r < d {
                        &cert.lambdas[h] + class.point(h).coord(r)
                    } else {
                        cert.lambdas[h].clone()
                    };
                    v.is_finite() && &v == target
                })
                .ok_or_else(|| Error::Internal("witness combination without attainment".into()))?
        };
        picks.push(pick);
        lambdas.push(&offsets[i] + &cert.lambdas[pick]);
    }

    let t = Transversal {
        picks,
        lambdas,
        result: meeting_point.clone(),
    };
    if !t.verify(classes, &meeting_point) {
        return Err(Error::Internal("generalized colorful transversal failed verification".into()));
    }
    if membership(&meeting_point, convex_set, Mode::Convex)?.is_none() {
        return Err(Error::Internal("meeting point escaped the convex set".into()));
    }
    Ok(GeneralizedColorful {
        transversal: t,
        meeting_point,
    })
}

/// Bounded cyclic projection over several convex hulls: starting from the
/// coordinatewise min of the hull tops, project through every hull in turn
/// until the point is an exact fixed point of all of them, then normalize
/// the lifted coordinate away. Returns `None` after `max_iters` rounds —
/// inconclusive, not a proof of emptiness.
pub fn intersect_hull_family(
    hulls: &[&PointSet],
    max_iters: usize,
) -> Result<Option<Point>, Error> {
    if hulls.is_empty() {
        return Err(Error::EmptySet);
    }
    let d = hulls[0].dim();
    for h in hulls {
        if h.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: h.dim(),
            });
        }
        if h.is_empty() {
            return Err(Error::EmptySet);
        }
    }
    let lifted: Vec<PointSet> = hulls.iter().map(|h| h.lift()).collect();
    let mut z = lifted
        .iter()
        .skip(1)
        .fold(lifted[0].generator_sup(), |acc, h| acc.meet(&h.generator_sup()));

    for _ in 0..max_iters {
        let mut fixed = true;
        for h in &lifted {
            let next = project(&z, h, Mode::Conic)?;
            if next != z {
                fixed = false;
                z = next;
            }
        }
        if fixed {
            let last = z.coord(d).clone();
            let shift = match last {
                Scalar::Bottom => return Ok(None),
                Scalar::Finite(c) => Scalar::Finite(-c),
            };
            let normalized = z.add_scalar(&shift).unlift();
            for h in hulls {
                if membership(&normalized, h, Mode::Convex)?.is_none() {
                    return Err(Error::Internal("fixed point escaped a hull".into()));
                }
            }
            return Ok(Some(normalized));
        }
    }
    Ok(None)
}

/// Two-hull convenience wrapper over [`intersect_hull_family`].
pub fn intersect_two_hulls(
    a: &PointSet,
    b: &PointSet,
    max_iters: usize,
) -> Result<Option<Point>, Error> {
    intersect_hull_family(&[a, b], max_iters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn pts_1d(vals: &[i64]) -> PointSet {
        PointSet::new(1, vals.iter().map(|&v| Point::from_ints(&[v])).collect()).unwrap()
    }

    fn half(n: i64, d: i64) -> Point {
        Point::new(vec![Scalar::from_rat(rat(n, d))])
    }

    #[test]
    fn reduce_small_set_unchanged() {
        let x = PointSet::from_rows(&[&[0, 0], &[0, 2], &[2, 0]]);
        let p = Point::from_ints(&[1, 1]);
        let c = reduce_support(&p, &x).unwrap();
        assert_eq!(c.support(), vec![0, 1, 2]);
        assert_eq!(c.result, p);
    }

    #[test]
    fn reduce_on_the_line() {
        let x = pts_1d(&[0, 1, 2, 3]);
        let c = reduce_support(&half(3, 2), &x).unwrap();
        assert!(c.support_size() <= 2);
        assert_eq!(c.result, half(3, 2));
        assert!(c.verify(&x));
    }

    #[test]
    fn reduce_generator_to_singleton() {
        let x = PointSet::from_rows(&[&[0, 5], &[5, 5], &[1, 2], &[3, 0]]);
        let c = reduce_support(&Point::from_ints(&[5, 5]), &x).unwrap();
        assert_eq!(c.support(), vec![1]);
    }

    #[test]
    fn reduce_rejects_non_member() {
        let x = pts_1d(&[0, 1]);
        assert!(matches!(
            reduce_support(&Point::from_ints(&[7]), &x),
            Err(Error::NotAMember)
        ));
    }

    #[test]
    fn colorful_all_classes_equal_to_target() {
        let p = Point::from_ints(&[2, 3]);
        let class = PointSet::new(2, vec![p.clone()]).unwrap();
        let inst = ColorfulInstance::new(vec![class.clone(), class.clone(), class], p.clone()).unwrap();
        let t = colorful(&inst).unwrap();
        assert_eq!(t.picks, vec![0, 0, 0]);
        assert!(t.lambdas.iter().all(|l| *l == Scalar::zero()));
    }

    #[test]
    fn colorful_line_instance() {
        // d = 1: classes {0,2} and {1,3}, target 3/2
        let inst = ColorfulInstance::new(vec![pts_1d(&[0, 2]), pts_1d(&[1, 3])], half(3, 2)).unwrap();
        let t = colorful(&inst).unwrap();
        // class 1 witnesses the coordinate: the pick 2 with coefficient -1/2
        assert_eq!(t.picks[0], 1);
        assert_eq!(t.lambdas[0], Scalar::from_rat(rat(-1, 2)));
        assert_eq!(t.lambdas[1], Scalar::zero());
        assert!(t.verify(inst.classes(), inst.target()));
    }

    #[test]
    fn colorful_is_stable_under_class_permutation() {
        let a = pts_1d(&[0, 2]);
        let b = pts_1d(&[1, 3]);
        let p = half(3, 2);
        for classes in [vec![a.clone(), b.clone()], vec![b, a]] {
            let inst = ColorfulInstance::new(classes, p.clone()).unwrap();
            let t = colorful(&inst).unwrap();
            assert!(t.verify(inst.classes(), inst.target()));
        }
    }

    #[test]
    fn colorful_rejects_failing_class() {
        let err = ColorfulInstance::new(vec![pts_1d(&[0, 2]), pts_1d(&[5])], half(3, 2));
        assert!(matches!(err, Err(Error::ClassMembershipFailure(1))));
    }

    #[test]
    fn offsets_one_by_one() {
        let (l, a) = column_offsets(&[vec![Scalar::zero()]]).unwrap();
        assert_eq!(l, vec![Scalar::zero()]);
        assert_eq!(a, vec![0]);
    }

    #[test]
    fn offsets_two_by_two_with_bottom() {
        let m = vec![
            vec![Scalar::zero(), Scalar::Bottom],
            vec![Scalar::zero(), Scalar::zero()],
        ];
        let (l, a) = column_offsets(&m).unwrap();
        assert_eq!(l, vec![Scalar::zero(), Scalar::zero()]);
        assert_eq!(a, vec![0, 1]);
        assert!(offsets_are_valid(&m, &l, &a));
    }

    #[test]
    fn offsets_rectangular() {
        let m = vec![
            vec![Scalar::zero(), Scalar::from_int(1), Scalar::Bottom],
            vec![Scalar::Bottom, Scalar::zero(), Scalar::zero()],
        ];
        let (l, a) = column_offsets(&m).unwrap();
        assert!(offsets_are_valid(&m, &l, &a));
    }

    #[test]
    fn offsets_recursion_branch() {
        // rows share one useful column; the other column is isolated, so
        // the Hall branch runs
        let m = vec![
            vec![Scalar::zero(), Scalar::Bottom],
            vec![Scalar::from_int(3), Scalar::Bottom],
        ];
        assert!(matches!(column_offsets(&m), Ok((l, a)) if offsets_are_valid(&m, &l, &a)));
    }

    #[test]
    fn offsets_reject_bad_rows() {
        assert!(matches!(
            column_offsets(&[vec![Scalar::Bottom]]),
            Err(Error::RowAllBottom(0))
        ));
        let tall = vec![vec![Scalar::zero()], vec![Scalar::zero()]];
        assert!(matches!(column_offsets(&tall), Err(Error::Precondition(_))));
    }

    #[test]
    fn intersect_identical_hulls() {
        let a = pts_1d(&[0, 2]);
        let z = intersect_two_hulls(&a, &a, 10).unwrap().unwrap();
        assert!(membership(&z, &a, Mode::Convex).unwrap().is_some());
    }

    #[test]
    fn intersect_overlapping_segments() {
        let a = pts_1d(&[0, 2]);
        let b = pts_1d(&[1, 3]);
        let z = intersect_two_hulls(&a, &b, 32).unwrap().unwrap();
        assert!(membership(&z, &a, Mode::Convex).unwrap().is_some());
        assert!(membership(&z, &b, Mode::Convex).unwrap().is_some());
        // a point of [1, 2]
        assert!(half(1, 1).le(&z) && z.le(&half(2, 1)));
    }

    #[test]
    fn intersect_disjoint_segments_inconclusive() {
        let a = pts_1d(&[0, 1]);
        let b = pts_1d(&[2, 3]);
        assert_eq!(intersect_two_hulls(&a, &b, 24).unwrap(), None);
    }

    #[test]
    fn generalized_colorful_shared_point() {
        let z = Point::from_ints(&[1, 1]);
        let class = PointSet::from_rows(&[&[1, 1], &[0, 0]]);
        let c = PointSet::from_rows(&[&[1, 1], &[2, 2]]);
        let out = generalized_colorful(
            &[class.clone(), class.clone(), class],
            &c,
            Some(&[z.clone(), z.clone(), z.clone()]),
            16,
        )
        .unwrap();
        assert_eq!(out.meeting_point, z);
    }

    #[test]
    fn generalized_colorful_line_instance() {
        // C = hull{1,2}, X_1 = {0,3}, X_2 = {1}, witnesses 3/2 and 1
        let classes = vec![pts_1d(&[0, 3]), pts_1d(&[1])];
        let c = pts_1d(&[1, 2]);
        let out = generalized_colorful(&classes, &c, Some(&[half(3, 2), half(1, 1)]), 16).unwrap();
        assert!(out.transversal.verify(&classes, &out.meeting_point));
        assert!(membership(&out.meeting_point, &c, Mode::Convex).unwrap().is_some());
    }

    #[test]
    fn generalized_colorful_rejects_bad_witness() {
        let classes = vec![pts_1d(&[0, 3]), pts_1d(&[1])];
        let c = pts_1d(&[1, 2]);
        // 3 is in X_1's hull but not in C
        let err = generalized_colorful(&classes, &c, Some(&[half(3, 1), half(1, 1)]), 16);
        assert!(matches!(err, Err(Error::WitnessInvalid(0))));
    }

    #[test]
    fn generalized_colorful_searches_witnesses() {
        let classes = vec![pts_1d(&[0, 3]), pts_1d(&[1])];
        let c = pts_1d(&[1, 2]);
        let out = generalized_colorful(&classes, &c, None, 64).unwrap();
        assert!(out.transversal.verify(&classes, &out.meeting_point));
    }
}
