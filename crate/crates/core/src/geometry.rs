//! Points, point sets and max-plus convex/conic combinations.
//!
//! A point of Rmax^d is a fixed-length vector of [`Scalar`]s. The max-plus
//! convex hull of generators x_1..x_n is the set of coordinatewise maxima
//! max_i (λ_i + x_i) over coefficient vectors λ with max_i λ_i = 0; the
//! conic hull drops the normalization. Membership is decided exactly by
//! residuation: the principal solution λ*_i = min_j (p_j − x_{i,j}) is the
//! greatest coefficient vector with combine(X, λ*) ≤ p, so p lies in the
//! hull iff the principal combination reproduces p.

use crate::error::Error;
use crate::scalar::{Rat, Scalar};

/// Convex combinations carry the normalization max λ_i = 0; conic ones
/// do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Convex,
    Conic,
}

/// A point of Rmax^d.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<Scalar>,
}

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, j: usize) -> &Scalar {
        &self.coords[j]
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_all_bottom(&self) -> bool {
        self.coords.iter().all(Scalar::is_bottom)
    }

    /// All-bottom point of the given dimension.
    pub fn all_bottom(dim: usize) -> Self {
        Point::new(vec![Scalar::Bottom; dim])
    }

    /// λ + x, coordinatewise.
    pub fn add_scalar(&self, lambda: &Scalar) -> Point {
        Point::new(self.coords.iter().map(|c| lambda + c).collect())
    }

    /// Coordinatewise max.
    pub fn join(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.join(b))
                .collect(),
        )
    }

    /// Coordinatewise min.
    pub fn meet(&self, other: &Point) -> Point {
        debug_assert_eq!(self.dim(), other.dim());
        Point::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    /// Coordinatewise ≤.
    pub fn le(&self, other: &Point) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Appends a 0 coordinate.
    pub fn lift(&self) -> Point {
        let mut coords = self.coords.clone();
        coords.push(Scalar::zero());
        Point::new(coords)
    }

    /// Drops the last coordinate.
    pub fn unlift(&self) -> Point {
        let mut coords = self.coords.clone();
        coords.pop();
        Point::new(coords)
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.coords.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// An ordered, index-stable family of points sharing one dimension.
/// Certificates refer to generators by their position in this list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidDimension);
        }
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let points: Vec<Point> = rows.iter().map(|r| Point::from_ints(r)).collect();
        PointSet::new(rows[0].len(), points).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    /// Adds a 0 coordinate to every point.
    pub fn lift(&self) -> PointSet {
        PointSet {
            dim: self.dim + 1,
            points: self.points.iter().map(Point::lift).collect(),
        }
    }

    /// Inverse of [`PointSet::lift`].
    pub fn unlift(&self) -> PointSet {
        PointSet {
            dim: self.dim - 1,
            points: self.points.iter().map(Point::unlift).collect(),
        }
    }

    /// Coordinatewise max over all generators: the top of the convex hull.
    pub fn generator_sup(&self) -> Point {
        let mut sup = Point::all_bottom(self.dim);
        for p in &self.points {
            sup = sup.join(p);
        }
        sup
    }
}

/// A coefficient vector together with the point it combines to.
/// The certificate payload used everywhere: `result` is recomputable from
/// `lambdas` exactly, so a combination is self-verifying.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    pub mode: Mode,
    pub lambdas: Vec<Scalar>,
    pub result: Point,
}

impl Combination {
    /// Number of non-bottom coefficients.
    pub fn support_size(&self) -> usize {
        self.lambdas.iter().filter(|l| l.is_finite()).count()
    }

    /// Indices with non-bottom coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.lambdas.len())
            .filter(|&i| self.lambdas[i].is_finite())
            .collect()
    }

    /// Re-checks the combination against its generators from scratch.
    pub fn verify(&self, generators: &PointSet) -> bool {
        if self.lambdas.len() != generators.len() {
            return false;
        }
        if self.mode == Mode::Convex {
            let max = self
                .lambdas
                .iter()
                .fold(Scalar::Bottom, |m, l| m.join(l));
            if max != Scalar::zero() {
                return false;
            }
        }
        let mut acc = Point::all_bottom(generators.dim());
        for (l, p) in self.lambdas.iter().zip(generators.iter()) {
            acc = acc.join(&p.add_scalar(l));
        }
        acc == self.result
    }
}

/// Forms max_i (λ_i + x_i) and packages it as a [`Combination`].
pub fn combine(generators: &PointSet, lambdas: &[Scalar], mode: Mode) -> Result<Combination, Error> {
    if lambdas.len() != generators.len() {
        return Err(Error::LengthMismatch {
            expected: generators.len(),
            got: lambdas.len(),
        });
    }
    if mode == Mode::Convex {
        let max = lambdas.iter().fold(Scalar::Bottom, |m, l| m.join(l));
        if max != Scalar::zero() {
            return Err(Error::NotNormalized);
        }
    }
    let mut acc = Point::all_bottom(generators.dim());
    for (l, p) in lambdas.iter().zip(generators.iter()) {
        acc = acc.join(&p.add_scalar(l));
    }
    Ok(Combination {
        mode,
        lambdas: lambdas.to_vec(),
        result: acc,
    })
}

/// Principal (residuated) coefficients for a conic combination below `p`:
/// λ*_i = min_j (p_j − x_{i,j}), with the conventions
///   - a bottom generator coordinate contributes no constraint,
///   - a bottom target coordinate over a finite generator coordinate
///     forces λ*_i = bottom,
///   - an all-bottom generator gets λ*_i = bottom (it cannot contribute).
fn principal_lambdas(p: &Point, generators: &PointSet) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(generators.len());
    for x in generators.iter() {
        let mut best: Option<Rat> = None;
        let mut forced_bottom = x.is_all_bottom();
        for j in 0..p.dim() {
            match (p.coord(j), x.coord(j)) {
                (_, Scalar::Bottom) => {}
                (Scalar::Bottom, Scalar::Finite(_)) => {
                    forced_bottom = true;
                    break;
                }
                (Scalar::Finite(pj), Scalar::Finite(xj)) => {
                    let diff = pj - xj;
                    best = Some(match best {
                        None => diff,
                        Some(b) => {
                            if diff < b {
                                diff
                            } else {
                                b
                            }
                        }
                    });
                }
            }
        }
        if forced_bottom {
            out.push(Scalar::Bottom);
        } else {
            match best {
                Some(b) => out.push(Scalar::Finite(b)),
                // no finite generator coordinate at all
                None => out.push(Scalar::Bottom),
            }
        }
    }
    out
}

/// Decides hull membership by residuation. Returns the principal
/// combination when `p` belongs to the hull of `generators`, `None`
/// otherwise. Convex queries are lifted: the appended 0 coordinate makes
/// the normalization max λ_i = 0 equivalent to exactness on that
/// coordinate. Generators that are entirely bottom are never used.
pub fn membership(
    p: &Point,
    generators: &PointSet,
    mode: Mode,
) -> Result<Option<Combination>, Error> {
    if generators.is_empty() {
        return Err(Error::EmptySet);
    }
    if p.dim() != generators.dim() {
        return Err(Error::DimensionMismatch {
            expected: generators.dim(),
            got: p.dim(),
        });
    }
    match mode {
        Mode::Conic => {
            let lambdas = principal_lambdas(p, generators);
            let c = combine(generators, &lambdas, Mode::Conic)?;
            Ok(if &c.result == p { Some(c) } else { None })
        }
        Mode::Convex => {
            let lifted_p = p.lift();
            let lifted = generators.lift();
            let mut lambdas = principal_lambdas(&lifted_p, &lifted);
            // all-bottom generators are rejected for convex queries even
            // though lifting would let them carry the normalization
            for (l, g) in lambdas.iter_mut().zip(generators.iter()) {
                if g.is_all_bottom() {
                    *l = Scalar::Bottom;
                }
            }
            let c = combine(&lifted, &lambdas, Mode::Conic)?;
            if c.result != lifted_p {
                return Ok(None);
            }
            // exactness on the lifted coordinate gives max λ_i = 0
            Ok(Some(Combination {
                mode: Mode::Convex,
                lambdas,
                result: p.clone(),
            }))
        }
    }
}

/// Nearest hull point below `p`: combine(X, λ*(p)). Idempotent and
/// order-preserving. Convex projections go through the lift.
pub fn project(p: &Point, generators: &PointSet, mode: Mode) -> Result<Point, Error> {
    if generators.is_empty() {
        return Err(Error::EmptySet);
    }
    if p.dim() != generators.dim() {
        return Err(Error::DimensionMismatch {
            expected: generators.dim(),
            got: p.dim(),
        });
    }
    match mode {
        Mode::Conic => {
            let lambdas = principal_lambdas(p, generators);
            Ok(combine(generators, &lambdas, Mode::Conic)?.result)
        }
        Mode::Convex => {
            let lifted = generators.lift();
            let projected = project(&p.lift(), &lifted, Mode::Conic)?;
            Ok(projected.unlift())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn triangle() -> PointSet {
        PointSet::from_rows(&[&[0, 0], &[0, 2], &[2, 0]])
    }

    #[test]
    fn combine_identity_case() {
        let x = PointSet::from_rows(&[&[0, 0]]);
        let c = combine(&x, &[Scalar::zero()], Mode::Convex).unwrap();
        assert_eq!(c.result, Point::from_ints(&[0, 0]));
    }

    #[test]
    fn combine_coordinatewise_max() {
        let c = combine(
            &triangle(),
            &[Scalar::zero(), Scalar::from_int(-1), Scalar::from_int(-1)],
            Mode::Convex,
        )
        .unwrap();
        assert_eq!(c.result, Point::from_ints(&[1, 1]));
        assert!(c.verify(&triangle()));
    }

    #[test]
    fn combine_bottom_coefficient_erases_generator() {
        let x = PointSet::from_rows(&[&[0, 0], &[5, 5]]);
        let c = combine(&x, &[Scalar::zero(), Scalar::Bottom], Mode::Convex).unwrap();
        assert_eq!(c.result, Point::from_ints(&[0, 0]));
    }

    #[test]
    fn combine_rejects_bad_inputs() {
        let x = triangle();
        assert!(matches!(
            combine(&x, &[Scalar::zero()], Mode::Convex),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            combine(
                &x,
                &[Scalar::from_int(-1), Scalar::from_int(-2), Scalar::from_int(-3)],
                Mode::Convex
            ),
            Err(Error::NotNormalized)
        ));
    }

    #[test]
    fn membership_inside_triangle() {
        let c = membership(&Point::from_ints(&[1, 1]), &triangle(), Mode::Convex)
            .unwrap()
            .expect("interior point is a member");
        assert_eq!(
            c.lambdas,
            vec![Scalar::zero(), Scalar::from_int(-1), Scalar::from_int(-1)]
        );
    }

    #[test]
    fn membership_outside_triangle() {
        // the principal solution only reaches (2,2)
        let r = membership(&Point::from_ints(&[3, 3]), &triangle(), Mode::Convex).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn membership_of_a_generator() {
        let x = triangle();
        let c = membership(x.point(1), &x, Mode::Convex).unwrap().unwrap();
        assert_eq!(c.lambdas[1], Scalar::zero());
        assert!(c.verify(&x));
    }

    #[test]
    fn membership_errors() {
        let empty = PointSet {
            dim: 2,
            points: vec![],
        };
        assert!(matches!(
            membership(&Point::from_ints(&[0, 0]), &empty, Mode::Conic),
            Err(Error::EmptySet)
        ));
        assert!(matches!(
            membership(&Point::from_ints(&[0]), &triangle(), Mode::Conic),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn all_bottom_generator_rejected_in_convex_mode() {
        let x = PointSet::new(
            2,
            vec![Point::all_bottom(2), Point::from_ints(&[1, 1])],
        )
        .unwrap();
        // the all-bottom point is not usable, so the all-bottom target
        // has no convex certificate
        let r = membership(&Point::all_bottom(2), &x, Mode::Convex).unwrap();
        assert!(r.is_none());
        // but the finite generator still certifies itself
        let c = membership(&Point::from_ints(&[1, 1]), &x, Mode::Convex)
            .unwrap()
            .unwrap();
        assert_eq!(c.lambdas[0], Scalar::Bottom);
    }

    #[test]
    fn lift_and_unlift() {
        let x = PointSet::from_rows(&[&[0]]);
        assert_eq!(x.lift().point(0), &Point::from_ints(&[0, 0]));
        let y = PointSet::new(
            2,
            vec![Point::new(vec![Scalar::from_int(1), Scalar::Bottom])],
        )
        .unwrap();
        assert_eq!(
            y.lift().point(0),
            &Point::new(vec![
                Scalar::from_int(1),
                Scalar::Bottom,
                Scalar::zero()
            ])
        );
        assert_eq!(y.lift().unlift(), y);
    }

    #[test]
    fn project_is_identity_on_members() {
        let x = triangle();
        let p = Point::from_ints(&[1, 1]);
        assert_eq!(project(&p, &x, Mode::Convex).unwrap(), p);
    }

    #[test]
    fn project_conic_vs_convex() {
        let x = triangle();
        let p = Point::from_ints(&[3, 3]);
        // conic: λ* = (3,1,1) reaches p itself
        assert_eq!(project(&p, &x, Mode::Conic).unwrap(), p);
        // convex (through the lift): only (2,2)
        assert_eq!(project(&p, &x, Mode::Convex).unwrap(), Point::from_ints(&[2, 2]));
    }

    #[test]
    fn project_idempotent_on_rationals() {
        let x = PointSet::new(
            1,
            vec![
                Point::new(vec![Scalar::from_rat(rat(1, 2))]),
                Point::new(vec![Scalar::from_rat(rat(5, 2))]),
            ],
        )
        .unwrap();
        let p = Point::from_ints(&[7]);
        let q = project(&p, &x, Mode::Convex).unwrap();
        assert_eq!(project(&q, &x, Mode::Convex).unwrap(), q);
    }
}
