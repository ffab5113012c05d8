//! Max-plus Helly: the constructive d+2 case through a Radon partition of
//! witness points, and a bounded diagnostic sweep over (d+1)-subfamilies.

use crate::caratheodory::intersect_hull_family;
use crate::error::Error;
use crate::geometry::{membership, Mode, Point, PointSet};
use crate::radon::radon;

/// Common point of d+2 max-plus convex sets (generator form), given one
/// witness per set lying in the intersection of the d+1 others. If two
/// witnesses coincide that point is already common to everything;
/// otherwise the Radon partition of the witnesses yields the point, and
/// membership in every set is re-checked exactly.
pub fn helly_point(collection: &[PointSet], witnesses: &[Point]) -> Result<Point, Error> {
    if collection.is_empty() {
        return Err(Error::EmptySet);
    }
    let d = collection[0].dim();
    let n = collection.len();
    if n != d + 2 {
        return Err(Error::SizeMismatch {
            expected: d + 2,
            got: n,
        });
    }
    if witnesses.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: witnesses.len(),
        });
    }
    for set in collection {
        if set.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: set.dim(),
            });
        }
    }
    for (i, w) in witnesses.iter().enumerate() {
        for (j, set) in collection.iter().enumerate() {
            if j != i && membership(w, set, Mode::Convex)?.is_none() {
                return Err(Error::WitnessInvalid(i));
            }
        }
    }

    // two equal witnesses already lie in the whole intersection
    for i in 0..n {
        for j in i + 1..n {
            if witnesses[i] == witnesses[j] {
                return Ok(witnesses[i].clone());
            }
        }
    }

    let witness_set = PointSet::new(d, witnesses.to_vec())?;
    let cert = radon(&witness_set)?;
    // every index is avoided by one side, whose members all lie in that
    // set, so the common point does too; check it anyway
    for set in collection {
        if membership(&cert.common, set, Mode::Convex)?.is_none() {
            return Err(Error::Internal(
                "Radon point of the witnesses escaped one of the sets".into(),
            ));
        }
    }
    Ok(cert.common)
}

/// Outcome of the bounded intersection attempt on one subfamily.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubfamilyOutcome {
    Found(Point),
    /// iteration budget exhausted; says nothing about emptiness
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct HellyReport {
    /// one entry per (d+1)-subfamily: member indices plus the outcome
    pub entries: Vec<(Vec<usize>, SubfamilyOutcome)>,
}

impl HellyReport {
    pub fn all_found(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, o)| matches!(o, SubfamilyOutcome::Found(_)))
    }
}

/// Attempts a common point for every (d+1)-subfamily by bounded cyclic
/// projection. Emptiness is never claimed: a subfamily is either `Found`
/// with a verified point or `Inconclusive`.
pub fn helly_check(collection: &[PointSet], max_iters: usize) -> Result<HellyReport, Error> {
    if collection.is_empty() {
        return Err(Error::EmptySet);
    }
    let d = collection[0].dim();
    let k = (d + 1).min(collection.len());
    let subfamilies = crate::genpoly::subsets_lex(collection.len(), k);
    let mut entries = Vec::with_capacity(subfamilies.len());
    for subset in subfamilies {
        let members: Vec<&PointSet> = subset.iter().map(|&i| &collection[i]).collect();
        let outcome = match intersect_hull_family(&members, max_iters)? {
            Some(p) => SubfamilyOutcome::Found(p),
            None => SubfamilyOutcome::Inconclusive,
        };
        entries.push((subset, outcome));
    }
    Ok(HellyReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Scalar};

    fn pts_1d(vals: &[i64]) -> PointSet {
        PointSet::new(1, vals.iter().map(|&v| Point::from_ints(&[v])).collect()).unwrap()
    }

    #[test]
    fn three_segments_on_the_line() {
        // hull{0,2}, hull{1,3}, hull{2,4}: pairwise witnesses exist and
        // the common point is 2
        let sets = vec![pts_1d(&[0, 2]), pts_1d(&[1, 3]), pts_1d(&[2, 4])];
        let witnesses = vec![
            Point::from_ints(&[2]),                       // in C2 ∩ C3
            Point::from_ints(&[2]),                       // in C1 ∩ C3
            Point::new(vec![Scalar::from_rat(rat(3, 2))]) // in C1 ∩ C2
        ];
        let p = helly_point(&sets, &witnesses).unwrap();
        assert_eq!(p, Point::from_ints(&[2]));
    }

    #[test]
    fn distinct_witnesses_go_through_radon() {
        let sets = vec![pts_1d(&[0, 2]), pts_1d(&[1, 3]), pts_1d(&[2, 4])];
        let witnesses = vec![
            Point::new(vec![Scalar::from_rat(rat(5, 2))]),
            Point::from_ints(&[2]),
            Point::new(vec![Scalar::from_rat(rat(3, 2))]),
        ];
        let p = helly_point(&sets, &witnesses).unwrap();
        for s in &sets {
            assert!(membership(&p, s, Mode::Convex).unwrap().is_some());
        }
    }

    #[test]
    fn witness_validation_failure() {
        let sets = vec![pts_1d(&[0, 2]), pts_1d(&[1, 3]), pts_1d(&[2, 4])];
        let witnesses = vec![
            Point::from_ints(&[0]), // not in C2 or C3
            Point::from_ints(&[2]),
            Point::from_ints(&[2]),
        ];
        assert!(matches!(
            helly_point(&sets, &witnesses),
            Err(Error::WitnessInvalid(0))
        ));
    }

    #[test]
    fn planar_instance_sharing_a_point() {
        // four hulls in the plane all containing (1, 1)
        let z = [1i64, 1];
        let sets = vec![
            PointSet::from_rows(&[&z, &[0, 0]]),
            PointSet::from_rows(&[&z, &[3, 1]]),
            PointSet::from_rows(&[&z, &[1, 3]]),
            PointSet::from_rows(&[&z, &[2, 2]]),
        ];
        let witnesses = vec![
            Point::from_ints(&z),
            Point::from_ints(&z),
            Point::from_ints(&z),
            Point::from_ints(&z),
        ];
        let p = helly_point(&sets, &witnesses).unwrap();
        assert_eq!(p, Point::from_ints(&z));
    }

    #[test]
    fn check_reports_pairs_on_the_line() {
        let sets = vec![pts_1d(&[0, 2]), pts_1d(&[1, 3]), pts_1d(&[2, 4])];
        let report = helly_check(&sets, 64).unwrap();
        assert_eq!(report.entries.len(), 3);
        assert!(report.all_found());
    }

    #[test]
    fn check_flags_disjoint_pair() {
        let sets = vec![pts_1d(&[0, 1]), pts_1d(&[2, 3])];
        let report = helly_check(&sets, 24).unwrap();
        assert_eq!(report.entries.len(), 1);
        assert!(matches!(report.entries[0].1, SubfamilyOutcome::Inconclusive));
    }

    #[test]
    fn check_on_identical_sets() {
        let sets = vec![pts_1d(&[0, 5]); 4];
        let report = helly_check(&sets, 16).unwrap();
        assert!(report.all_found());
    }
}
