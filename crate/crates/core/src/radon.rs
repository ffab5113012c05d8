//! Max-plus Radon partitions through parametric determinants.
//!
//! The conic construction builds the matrix A(u) with entries u^{a_{ij}}
//! (u^{-inf} := 0), finds a maximal nonsingular r×r submatrix, borders it
//! to r×(r+1), and expands the bordered determinants into an exact
//! polynomial identity Σ_i p_i(u)·column_i = 0 where p_i is the signed
//! minor. Reading that identity at the top exponents splits the support
//! by leading sign into the two sides of the partition, with the leading
//! exponents as coefficients. The identity and the resulting max-plus
//! equality are both checked exactly before returning.

use crate::error::Error;
use crate::genpoly::{max_nonzero_minor, GenPoly, PolyMatrix};
use crate::geometry::{Mode, Point, PointSet};
use crate::scalar::Scalar;

/// A two-sided common-point certificate: both index sets combine, with the
/// stored coefficients, to exactly the same point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadonCertificate {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    /// coefficient per original index; bottom off the two supports
    pub lambdas: Vec<Scalar>,
    pub common: Point,
    pub mode: Mode,
}

impl RadonCertificate {
    /// Independent re-check: disjoint nonempty sides, both combining to
    /// the stored common point, and per-side normalization in convex mode.
    pub fn verify(&self, points: &PointSet) -> bool {
        if self.s.is_empty() || self.t.is_empty() {
            return false;
        }
        if self.s.iter().any(|i| self.t.contains(i)) {
            return false;
        }
        if self.lambdas.len() != points.len() {
            return false;
        }
        if self
            .s
            .iter()
            .chain(&self.t)
            .any(|&i| i >= points.len())
        {
            return false;
        }
        for side in [&self.s, &self.t] {
            let mut acc = Point::all_bottom(points.dim());
            let mut side_max = Scalar::Bottom;
            for &i in side.iter() {
                acc = acc.join(&points.point(i).add_scalar(&self.lambdas[i]));
                side_max = side_max.join(&self.lambdas[i]);
            }
            if acc != self.common {
                return false;
            }
            if self.mode == Mode::Convex && side_max != Scalar::zero() {
                return false;
            }
        }
        true
    }
}

fn side_combination(points: &PointSet, side: &[usize], lambdas: &[Scalar]) -> Point {
    let mut acc = Point::all_bottom(points.dim());
    for &i in side {
        acc = acc.join(&points.point(i).add_scalar(&lambdas[i]));
    }
    acc
}

/// Conic Radon partition of d+1 points in Rmax^d. Points that are
/// entirely bottom short-circuit into the degenerate certificate whose
/// common point is bottom everywhere; with no such point the determinant
/// route below always produces two nonempty sides.
pub fn radon_conic(points: &PointSet) -> Result<RadonCertificate, Error> {
    let d = points.dim();
    let n = points.len();
    if n != d + 1 {
        return Err(Error::SizeMismatch {
            expected: d + 1,
            got: n,
        });
    }

    if let Some(k) = (0..n).find(|&i| points.point(i).is_all_bottom()) {
        let other = (0..n).find(|&i| i != k).expect("n >= 2");
        let mut lambdas = vec![Scalar::Bottom; n];
        lambdas[k] = Scalar::zero();
        let cert = RadonCertificate {
            s: vec![k],
            t: vec![other],
            lambdas,
            common: Point::all_bottom(d),
            mode: Mode::Conic,
        };
        debug_assert!(cert.verify(points));
        return Ok(cert);
    }

    // A(u): rows are coordinates, columns are points
    let a = PolyMatrix::from_fn(d, n, |j, i| GenPoly::monomial(points.point(i).coord(j)));
    let (r, rows, cols) = max_nonzero_minor(&a);
    debug_assert!(r >= 1, "no all-bottom point, so some entry is finite");

    // border the witness minor by the lowest column outside it
    let extra = (0..n)
        .find(|c| !cols.contains(c))
        .expect("r <= d < n columns");
    let mut selected = cols.clone();
    selected.push(extra);
    selected.sort_unstable();

    // signed minors of the bordered matrix
    let b = a.submatrix(&rows, &selected);
    let mut p = vec![GenPoly::zero(); n];
    for (pos, &col) in selected.iter().enumerate() {
        let minor_cols: Vec<usize> = (0..selected.len()).filter(|&k| k != pos).collect();
        let det = b
            .submatrix(&(0..r).collect::<Vec<_>>(), &minor_cols)
            .determinant()?;
        p[col] = if pos % 2 == 0 { det } else { det.negate() };
    }

    // the expansion identity holds on every coordinate of the full matrix
    for j in 0..d {
        let mut acc = GenPoly::zero();
        for &col in &selected {
            acc = acc.add(&p[col].mul(a.entry(j, col)));
        }
        if !acc.is_zero() {
            return Err(Error::Internal(format!(
                "minor expansion identity failed on coordinate {}",
                j
            )));
        }
    }

    // leading terms: exponents become coefficients, signs split the sides
    let mut s = Vec::new();
    let mut t = Vec::new();
    let mut lambdas = vec![Scalar::Bottom; n];
    for (i, poly) in p.iter().enumerate() {
        if poly.is_zero() {
            continue;
        }
        let lead = poly.leading()?;
        lambdas[i] = Scalar::Finite(lead.exponent);
        if lead.sign > 0 {
            s.push(i);
        } else {
            t.push(i);
        }
    }
    if s.is_empty() || t.is_empty() {
        return Err(Error::Internal("one side of the Radon split came out empty".into()));
    }

    let common = side_combination(points, &s, &lambdas);
    let other = side_combination(points, &t, &lambdas);
    if common != other {
        return Err(Error::Internal("leading-term reading produced unequal sides".into()));
    }
    let cert = RadonCertificate {
        s,
        t,
        lambdas,
        common,
        mode: Mode::Conic,
    };
    debug_assert!(cert.verify(points));
    Ok(cert)
}

/// Convex Radon partition of d+2 points in Rmax^d: lift, run the conic
/// construction one dimension up, then shift both sides jointly so that
/// each side's coefficient maximum is 0. The lifted coordinate of the
/// conic common point equals both side maxima, which makes the joint
/// shift exact.
pub fn radon(points: &PointSet) -> Result<RadonCertificate, Error> {
    let d = points.dim();
    if points.len() != d + 2 {
        return Err(Error::SizeMismatch {
            expected: d + 2,
            got: points.len(),
        });
    }
    let lifted = points.lift();
    let conic = radon_conic(&lifted)?;

    let side_max = |side: &[usize]| {
        side.iter()
            .fold(Scalar::Bottom, |m, &i| m.join(&conic.lambdas[i]))
    };
    let max_s = side_max(&conic.s);
    let max_t = side_max(&conic.t);
    if max_s != max_t {
        return Err(Error::Internal("lifted side maxima disagree".into()));
    }
    let shift = match &max_s {
        // lifted points are never all bottom, so the sides carry finite
        // coefficients
        Scalar::Bottom => return Err(Error::Internal("lifted certificate with bottom sides".into())),
        Scalar::Finite(c) => Scalar::Finite(-c),
    };
    let lambdas: Vec<Scalar> = conic.lambdas.iter().map(|l| &shift + l).collect();
    let cert = RadonCertificate {
        s: conic.s,
        t: conic.t,
        lambdas,
        common: conic.common.add_scalar(&shift).unlift(),
        mode: Mode::Convex,
    };
    if !cert.verify(points) {
        return Err(Error::Internal("convex Radon certificate failed verification".into()));
    }
    Ok(cert)
}
