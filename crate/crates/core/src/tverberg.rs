//! Max-plus Tverberg partitions.
//!
//! The conic construction embeds each point column α_i(u) = (u^{a_1i}, …)
//! into q blocks: color c < q-1 places the column in block c, the last
//! color places its negation in every block. A coloring is usable when the
//! zero vector is a convex combination of the embedded columns, which is
//! decided exactly at a concrete rational u > 1. With the colors fixed,
//! the same system is solved symbolically over generalized polynomials:
//! the largest invertible subsystem gives μ_i(u) as quotients with the
//! shared denominator det of that subsystem. Reading the solution at its
//! top exponents yields the parts (by color) and the coefficients (by
//! leading exponent); the resulting q-fold max-plus equality is verified
//! exactly, and any failure moves on to the next coloring or a larger u.
//! The verification gate, not the schedule, is what makes the output
//! correct.

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::genpoly::{cramer_solve, GenPoly, PolyMatrix};
use crate::geometry::{Mode, Point, PointSet};
use crate::scalar::{denominator_lcm, scale, Rat, Scalar};

/// q pairwise-disjoint parts whose combinations all equal the common
/// point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TverbergCertificate {
    pub parts: Vec<Vec<usize>>,
    /// coefficient per original index, bottom outside the parts
    pub lambdas: Vec<Scalar>,
    pub common: Point,
    pub mode: Mode,
}

impl TverbergCertificate {
    /// Independent exact re-check of the q-fold equality, disjointness,
    /// and (in convex mode) per-part normalization.
    pub fn verify(&self, points: &PointSet) -> bool {
        if self.parts.is_empty() || self.lambdas.len() != points.len() {
            return false;
        }
        let mut seen = vec![false; points.len()];
        for part in &self.parts {
            if part.is_empty() {
                return false;
            }
            for &i in part {
                if i >= points.len() || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        for part in &self.parts {
            let mut acc = Point::all_bottom(points.dim());
            let mut part_max = Scalar::Bottom;
            for &i in part {
                acc = acc.join(&points.point(i).add_scalar(&self.lambdas[i]));
                part_max = part_max.join(&self.lambdas[i]);
            }
            if acc != self.common {
                return false;
            }
            if self.mode == Mode::Convex && part_max != Scalar::zero() {
                return false;
            }
        }
        true
    }
}

/// The linear system behind one coloring: Σ μ_i φ_{c_i}(α_i(u)) = 0
/// together with Σ μ_i = 1.
#[derive(Clone, Debug)]
pub struct SarkariaSystem {
    pub colors: Vec<usize>,
    pub matrix: PolyMatrix,
    pub rhs: Vec<GenPoly>,
}

/// Embedded column of one point: for color < q-1 the monomial column sits
/// in that block of the (dim·(q-1))-dimensional target; the last color
/// contributes its negation to every block.
pub fn sarkaria_embed(point: &Point, color: usize, q: usize) -> Vec<GenPoly> {
    let dim = point.dim();
    let mut out = vec![GenPoly::zero(); dim * (q - 1)];
    for block in 0..q - 1 {
        for k in 0..dim {
            if color == q - 1 {
                out[block * dim + k] = GenPoly::monomial(point.coord(k)).negate();
            } else if block == color {
                out[block * dim + k] = GenPoly::monomial(point.coord(k));
            }
        }
    }
    out
}

/// Assembles the square system for a fixed coloring.
pub fn sarkaria_system(points: &PointSet, colors: &[usize], q: usize) -> SarkariaSystem {
    let dim = points.dim();
    let n = points.len();
    let rows = dim * (q - 1) + 1;
    let columns: Vec<Vec<GenPoly>> = (0..n)
        .map(|i| sarkaria_embed(points.point(i), colors[i], q))
        .collect();
    let matrix = PolyMatrix::from_fn(rows, n, |r, i| {
        if r < dim * (q - 1) {
            columns[i][r].clone()
        } else {
            GenPoly::one()
        }
    });
    let mut rhs = vec![GenPoly::zero(); rows];
    rhs[rows - 1] = GenPoly::one();
    SarkariaSystem {
        colors: colors.to_vec(),
        matrix,
        rhs,
    }
}

/// Exact phase-1 simplex for A·x = b, x ≥ 0 with rational data: returns
/// the optimum of the artificial objective (0 exactly when feasible) and a
/// feasible point when one exists. Bland's rule, so it terminates.
fn phase1(a: &[Vec<Rat>], b: &[Rat]) -> (Rat, Option<Vec<Rat>>) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let width = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut r: Vec<Rat> = Vec::with_capacity(width);
        let flip = b[i].is_negative();
        for v in row {
            r.push(if flip { -v } else { v.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        r.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // objective row: sum of constraint rows, so basic artificials read 0
    let mut obj: Vec<Rat> = (0..width)
        .map(|j| t.iter().map(|r| r[j].clone()).sum())
        .collect();
    for j in n..n + m {
        obj[j] = Rat::zero();
    }

    loop {
        // Bland: lowest-index original column with positive reduced cost
        let entering = (0..n).find(|&j| obj[j].is_positive());
        let j = match entering {
            Some(j) => j,
            None => break,
        };
        // ratio test, ties to the lowest basis index
        let mut pivot: Option<(usize, Rat)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[j].is_positive() {
                let ratio = &row[width - 1] / &row[j];
                let better = match &pivot {
                    None => true,
                    Some((pi, pr)) => ratio < *pr || (ratio == *pr && basis[i] < basis[*pi]),
                };
                if better {
                    pivot = Some((i, ratio));
                }
            }
        }
        let (pi, _) = match pivot {
            Some(p) => p,
            None => break, // unbounded cannot happen: objective is bounded by 0
        };
        let factor = t[pi][j].clone();
        for v in t[pi].iter_mut() {
            *v /= &factor;
        }
        for i in 0..m {
            if i != pi && !t[i][j].is_zero() {
                let f = t[i][j].clone();
                for k in 0..width {
                    let delta = &t[pi][k] * &f;
                    t[i][k] -= delta;
                }
            }
        }
        if !obj[j].is_zero() {
            let f = obj[j].clone();
            for k in 0..width {
                let delta = &t[pi][k] * &f;
                obj[k] -= delta;
            }
        }
        basis[pi] = j;
    }

    let optimum = obj[width - 1].clone();
    if optimum.is_zero() {
        let mut x = vec![Rat::zero(); n];
        for (i, &bj) in basis.iter().enumerate() {
            if bj < n {
                x[bj] = t[i][width - 1].clone();
            }
        }
        (Rat::zero(), Some(x))
    } else {
        (optimum, None)
    }
}

/// Exponents beyond this bound would make the exact evaluation of u^a
/// explode in bit length; inputs are expected at desk scale.
const MAX_EVAL_EXPONENT: i64 = 100_000;

/// u^a for integer a (negative allowed), u > 0.
fn rational_power(u: &Rat, a: &Rat) -> Result<Rat, Error> {
    if !a.is_integer() {
        return Err(Error::Precondition(
            "coordinates must be integers; clear denominators first".into(),
        ));
    }
    let e: i64 = a
        .to_integer()
        .try_into()
        .map_err(|_| Error::Precondition("exponent out of range".into()))?;
    if e.abs() > MAX_EVAL_EXPONENT {
        return Err(Error::Precondition(format!(
            "coordinate spread {} is too large for exact power evaluation",
            e
        )));
    }
    Ok(u.pow(e as i32))
}

/// Floating screen of the coloring-feasibility question, used purely to
/// order candidates. Exponents are renormalized per coordinate to a fixed
/// dynamic range, which amounts to probing the system at a numerically
/// benign evaluation point; every candidate it suggests is re-checked
/// exactly (by the exact solver or the symbolic gate) before being
/// believed.
struct Screen {
    dim: usize,
    q: usize,
    n: usize,
    approx: Vec<Vec<f64>>,
}

const SCREEN_EPS: f64 = 1e-9;

impl Screen {
    /// `range` is the natural-log dynamic range each coordinate is mapped
    /// onto; larger values imitate larger evaluation points.
    fn new(points: &PointSet, q: usize, range: f64) -> Self {
        let dim = points.dim();
        let to_f64 = |r: &Rat| -> f64 {
            let nf: f64 = r.numer().to_string().parse().unwrap_or(0.0);
            let df: f64 = r.denom().to_string().parse().unwrap_or(1.0);
            nf / df
        };
        let mut approx = vec![vec![0.0f64; dim]; points.len()];
        for k in 0..dim {
            let finite: Vec<f64> = points
                .iter()
                .filter_map(|p| p.coord(k).as_rat())
                .map(|r| to_f64(r))
                .collect();
            if finite.is_empty() {
                continue;
            }
            let max = finite.iter().cloned().fold(f64::MIN, f64::max);
            let min = finite.iter().cloned().fold(f64::MAX, f64::min);
            let spread = (max - min).max(1.0);
            for (i, p) in points.iter().enumerate() {
                if let Scalar::Finite(a) = p.coord(k) {
                    approx[i][k] = ((to_f64(a) - max) * range / spread).exp();
                }
            }
        }
        Screen {
            dim,
            q,
            n: points.len(),
            approx,
        }
    }

    fn feasibility_screen(&self, colors: &[usize]) -> f64 {
        let rows = self.dim * (self.q - 1) + 1;
        let mut a = vec![vec![0.0f64; self.n]; rows];
        for i in 0..self.n {
            for k in 0..self.dim {
                let v = self.approx[i][k];
                for block in 0..self.q - 1 {
                    if colors[i] == self.q - 1 {
                        a[block * self.dim + k][i] = -v;
                    } else if block == colors[i] {
                        a[block * self.dim + k][i] = v;
                    }
                }
            }
            a[rows - 1][i] = 1.0;
        }
        let mut b = vec![0.0f64; rows];
        b[rows - 1] = 1.0;
        phase1_f64(&a, &b)
    }

    /// Greedy descent: repeatedly apply the single color swap that lowers
    /// the measured infeasibility most, with a step cap.
    fn descend(&self) -> Option<Vec<usize>> {
        let mut colors: Vec<usize> = (0..self.n).map(|i| i % self.q).collect();
        let mut current = self.feasibility_screen(&colors);
        if current <= SCREEN_EPS {
            return Some(colors);
        }
        for _ in 0..60 {
            let mut best: Option<(usize, usize, f64)> = None;
            for i in 0..self.n {
                let original = colors[i];
                for c in 0..self.q {
                    if c == original {
                        continue;
                    }
                    colors[i] = c;
                    let value = self.feasibility_screen(&colors);
                    if value < current && best.as_ref().map_or(true, |&(_, _, bv)| value < bv) {
                        best = Some((i, c, value));
                    }
                }
                colors[i] = original;
            }
            match best {
                Some((i, c, value)) => {
                    colors[i] = c;
                    current = value;
                    if current <= SCREEN_EPS {
                        return Some(colors);
                    }
                }
                None => return None,
            }
        }
        None
    }
}

/// Exact powers u^{a_ik}, shared by the exact feasibility probes at one u.
struct ExactEval {
    dim: usize,
    q: usize,
    n: usize,
    /// n x dim grid; bottom coordinates evaluate to 0
    powers: Vec<Vec<Rat>>,
}

impl ExactEval {
    fn new(points: &PointSet, q: usize, u: &Rat) -> Result<Self, Error> {
        let mut powers = Vec::with_capacity(points.len());
        for p in points.iter() {
            let row: Result<Vec<Rat>, Error> = p
                .coords()
                .iter()
                .map(|c| match c {
                    Scalar::Bottom => Ok(Rat::zero()),
                    Scalar::Finite(a) => rational_power(u, a),
                })
                .collect();
            powers.push(row?);
        }
        Ok(ExactEval {
            dim: points.dim(),
            q,
            n: points.len(),
            powers,
        })
    }

    /// Exact feasibility of one coloring: does 0 lie in the convex hull of
    /// the embedded columns? Returns the phase-1 optimum and the weights
    /// on success.
    fn feasibility(&self, colors: &[usize]) -> (Rat, Option<Vec<Rat>>) {
        let rows = self.dim * (self.q - 1) + 1;
        let mut a = vec![vec![Rat::zero(); self.n]; rows];
        for i in 0..self.n {
            for k in 0..self.dim {
                let v = &self.powers[i][k];
                for block in 0..self.q - 1 {
                    if colors[i] == self.q - 1 {
                        a[block * self.dim + k][i] = -v;
                    } else if block == colors[i] {
                        a[block * self.dim + k][i] = v.clone();
                    }
                }
            }
            a[rows - 1][i] = Rat::one();
        }
        let mut b = vec![Rat::zero(); rows];
        b[rows - 1] = Rat::one();
        phase1(&a, &b)
    }
}

/// Float phase-1 used as a screen: the same tableau dance as the exact
/// solver with a pivot tolerance and an iteration cap.
fn phase1_f64(a: &[Vec<f64>], b: &[f64]) -> f64 {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let width = n + m + 1;
    let mut t: Vec<Vec<f64>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i] < 0.0;
        let mut r: Vec<f64> = row.iter().map(|v| if flip { -v } else { *v }).collect();
        for k in 0..m {
            r.push(if k == i { 1.0 } else { 0.0 });
        }
        r.push(if flip { -b[i] } else { b[i] });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut obj: Vec<f64> = (0..width).map(|j| t.iter().map(|r| r[j]).sum()).collect();
    for j in n..n + m {
        obj[j] = 0.0;
    }
    for _ in 0..600 {
        let entering = (0..n).find(|&j| obj[j] > SCREEN_EPS);
        let j = match entering {
            Some(j) => j,
            None => break,
        };
        let mut pivot: Option<(usize, f64)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[j] > SCREEN_EPS {
                let ratio = row[width - 1] / row[j];
                let better = match &pivot {
                    None => true,
                    Some((pi, pr)) => ratio < *pr || (ratio == *pr && basis[i] < basis[*pi]),
                };
                if better {
                    pivot = Some((i, ratio));
                }
            }
        }
        let (pi, _) = match pivot {
            Some(p) => p,
            None => break,
        };
        let factor = t[pi][j];
        for v in t[pi].iter_mut() {
            *v /= factor;
        }
        for i in 0..m {
            if i != pi && t[i][j] != 0.0 {
                let f = t[i][j];
                for k in 0..width {
                    t[i][k] -= t[pi][k] * f;
                }
            }
        }
        if obj[j] != 0.0 {
            let f = obj[j];
            for k in 0..width {
                obj[k] -= t[pi][k] * f;
            }
        }
        basis[pi] = j;
    }
    obj[width - 1].max(0.0)
}

/// Searches a coloring whose embedded columns capture the origin at the
/// given u. A floating screen orders the candidates; a candidate is
/// accepted only by the exact phase-1 solve, whose nonnegative weights
/// summing to 1 are returned.
pub fn find_colors(
    points: &PointSet,
    q: usize,
    u: &Rat,
) -> Result<(Vec<usize>, Vec<Rat>), Error> {
    if *u <= Rat::one() {
        return Err(Error::Precondition("u must exceed 1".into()));
    }
    let exact = ExactEval::new(points, q, u)?;
    let screen = Screen::new(points, q, 60.0);
    if let Some(colors) = screen.descend() {
        if let (_, Some(w)) = exact.feasibility(&colors) {
            return Ok((colors, w));
        }
    }
    // screened lexicographic pass, then an unconditional exact pass so a
    // pessimistic screen can never lose completeness
    for screened in [true, false] {
        let mut colors = vec![0usize; points.len()];
        loop {
            if !screened || screen.feasibility_screen(&colors) <= SCREEN_EPS {
                if let (_, Some(w)) = exact.feasibility(&colors) {
                    return Ok((colors, w));
                }
            }
            if !advance(&mut colors, q) {
                break;
            }
        }
    }
    Err(Error::Internal(
        "no feasible coloring exists, contradicting the colorful theorem".into(),
    ))
}

fn advance(colors: &mut [usize], q: usize) -> bool {
    for c in colors.iter_mut() {
        *c += 1;
        if *c < q {
            return true;
        }
        *c = 0;
    }
    false
}

/// Symbolic solve for a fixed coloring. In the common nonsingular case
/// the Cramer numerators are the last-row cofactors of the system matrix
/// (the right-hand side is the last unit vector), all obtained in one
/// memoized expansion. Singular systems fall back to a maximal invertible
/// subsystem with the free weights at zero, trying a few alternative
/// witness minors since the sign pattern can depend on the selection.
fn attempt_symbolic(
    points: &PointSet,
    colors: &[usize],
    q: usize,
    allow_singular: bool,
) -> Result<Option<TverbergCertificate>, Error> {
    let sys = sarkaria_system(points, colors, q);
    let (det, cofactors) = sys.matrix.det_and_last_row_cofactors()?;
    if !det.is_zero() {
        // a nonsingular square system satisfies every row identically
        return certificate_from_solution(points, colors, q, cofactors, det);
    }
    if !allow_singular {
        return Ok(None);
    }
    // singular system: solve a maximal invertible subsystem with the free
    // weights at zero. Only subsystems containing the normalization row
    // can be consistent (the other rows are homogeneous), and the sign
    // pattern can depend on the witness, so several are tried.
    let m_rows = sys.matrix.rows();
    let norm_row = m_rows - 1;
    let mut tried = 0usize;
    for r in (1..m_rows).rev() {
        let mut found_at_this_rank = false;
        for head in crate::genpoly::subsets_lex(norm_row, r - 1) {
            let mut rows: Vec<usize> = head.clone();
            rows.push(norm_row);
            for cols in crate::genpoly::subsets_lex(sys.matrix.cols(), r) {
                if tried >= 60 {
                    return Ok(None);
                }
                if sys.matrix.submatrix(&rows, &cols).determinant()?.is_zero() {
                    continue;
                }
                found_at_this_rank = true;
                tried += 1;
                if let Some(cert) =
                    attempt_with_minor(points, colors, q, &sys, &rows, &cols)?
                {
                    return Ok(Some(cert));
                }
            }
        }
        if found_at_this_rank {
            // lower ranks drop independent rows and cannot be consistent
            break;
        }
    }
    Ok(None)
}

fn attempt_with_minor(
    points: &PointSet,
    colors: &[usize],
    q: usize,
    sys: &SarkariaSystem,
    rows: &[usize],
    cols: &[usize],
) -> Result<Option<TverbergCertificate>, Error> {
    let n = points.len();
    let sub = sys.matrix.submatrix(rows, cols);
    let sub_rhs: Vec<GenPoly> = rows.iter().map(|&i| sys.rhs[i].clone()).collect();
    let sol = match cramer_solve(&sub, &sub_rhs) {
        Ok(s) => s,
        Err(Error::SingularMatrix) => return Ok(None),
        Err(e) => return Err(e),
    };
    let denom = sol[0].denominator.clone();

    // full numerator vector with zeros on the free columns
    let mut numerators = vec![GenPoly::zero(); n];
    for (k, &col) in cols.iter().enumerate() {
        numerators[col] = sol[k].numerator.clone();
    }
    // symbolic consistency on every row of the full system; rows outside
    // the selected subsystem are not satisfied automatically
    for row in 0..sys.rhs.len() {
        let mut acc = GenPoly::zero();
        for (j, num) in numerators.iter().enumerate() {
            acc = acc.add(&sys.matrix.entry(row, j).mul(num));
        }
        if acc != sys.rhs[row].mul(&denom) {
            return Ok(None);
        }
    }
    certificate_from_solution(points, colors, q, numerators, denom)
}

/// Reads a candidate certificate off a symbolic solution μ_i = n_i/b:
/// normalize the denominator sign, require nonnegative leading signs
/// (weights positive for large u), split the support by color, take the
/// leading exponents as coefficients, and verify the q-fold equality.
fn certificate_from_solution(
    points: &PointSet,
    colors: &[usize],
    q: usize,
    numerators: Vec<GenPoly>,
    denom: GenPoly,
) -> Result<Option<TverbergCertificate>, Error> {
    let n = points.len();
    let flip = denom.leading()?.sign < 0;
    let denom = if flip { denom.negate() } else { denom };
    let numerators: Vec<GenPoly> = numerators
        .into_iter()
        .map(|p| if flip { p.negate() } else { p })
        .collect();
    let denom_exp = denom.leading()?.exponent;

    let mut lambdas = vec![Scalar::Bottom; n];
    for (i, num) in numerators.iter().enumerate() {
        if num.is_zero() {
            continue;
        }
        let lead = num.leading()?;
        if lead.sign < 0 {
            return Ok(None);
        }
        lambdas[i] = Scalar::Finite(lead.exponent - &denom_exp);
    }

    let mut parts = vec![Vec::new(); q];
    for (i, &c) in colors.iter().enumerate() {
        if lambdas[i].is_finite() {
            parts[c].push(i);
        }
    }
    if parts.iter().any(Vec::is_empty) {
        return Ok(None);
    }

    let common = {
        let mut acc = Point::all_bottom(points.dim());
        for &i in &parts[0] {
            acc = acc.join(&points.point(i).add_scalar(&lambdas[i]));
        }
        acc
    };
    let cert = TverbergCertificate {
        parts,
        lambdas,
        common,
        mode: Mode::Conic,
    };
    if cert.verify(points) {
        Ok(Some(cert))
    } else {
        Ok(None)
    }
}

/// Conic Tverberg partition of dim·(q-1)+1 points in Rmax^dim. Points with
/// rational coordinates are scaled to integers for the run and the
/// certificate is scaled back, which is an exact bijection of
/// certificates.
pub fn tverberg_conic(points: &PointSet, q: usize) -> Result<TverbergCertificate, Error> {
    let dim = points.dim();
    let n = points.len();
    if q < 2 {
        return Err(Error::Precondition("q must be at least 2".into()));
    }
    let expected = dim * (q - 1) + 1;
    if n != expected {
        return Err(Error::SizeMismatch { expected, got: n });
    }

    if points.iter().any(Point::is_all_bottom) {
        // with an all-bottom point the only robust certificate is the
        // degenerate one whose every side is bottom
        let parts: Vec<Vec<usize>> = (0..q).map(|l| vec![l]).collect();
        let cert = TverbergCertificate {
            parts,
            lambdas: vec![Scalar::Bottom; n],
            common: Point::all_bottom(dim),
            mode: Mode::Conic,
        };
        debug_assert!(cert.verify(points));
        return Ok(cert);
    }

    let factor = denominator_lcm(points.iter().flat_map(|p| p.coords().iter()));
    let scaled = PointSet::new(
        dim,
        points
            .iter()
            .map(|p| Point::new(p.coords().iter().map(|c| scale(c, &factor)).collect()))
            .collect(),
    )?;
    // center every coordinate on its minimum finite value so that the
    // exponents fed to the evaluation are bounded by the coordinate
    // spread; coefficients are untouched and the common point shifts back
    let offsets: Vec<Scalar> = (0..dim)
        .map(|k| {
            scaled
                .iter()
                .map(|p| p.coord(k))
                .filter(|c| c.is_finite())
                .min()
                .cloned()
                .unwrap_or(Scalar::Bottom)
        })
        .collect();
    let scaled = PointSet::new(
        dim,
        scaled
            .iter()
            .map(|p| {
                Point::new(
                    p.coords()
                        .iter()
                        .zip(&offsets)
                        .map(|(c, t)| match (c, t) {
                            (Scalar::Finite(c), Scalar::Finite(t)) => Scalar::Finite(c - t),
                            _ => c.clone(),
                        })
                        .collect(),
                )
            })
            .collect(),
    )?;

    // candidate order: the descent suggestion first, then every coloring
    // with no empty class sorted by its floating infeasibility measure.
    // The measure only orders the sweep; the symbolic gate decides.
    // Singular systems are skipped on the first pass and revisited only
    // if no nonsingular candidate verifies, so the exhaustive fallback
    // stays exhaustive.
    let screen = Screen::new(&scaled, q, 60.0);
    if let Some(colors) = screen.descend() {
        if let Some(cert) = attempt_symbolic(&scaled, &colors, q, false)? {
            return finish_conic(cert, &offsets, &factor, points);
        }
    }
    let total = (q as u128).checked_pow(n as u32);
    if total.map_or(false, |t| t <= 100_000) {
        let mut candidates: Vec<(f64, Vec<usize>)> = Vec::new();
        let mut colors = vec![0usize; n];
        loop {
            let mut seen = vec![false; q];
            for &c in &colors {
                seen[c] = true;
            }
            if seen.iter().all(|&s| s) {
                candidates.push((screen.feasibility_screen(&colors), colors.clone()));
            }
            if !advance(&mut colors, q) {
                break;
            }
        }
        candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        for allow_singular in [false, true] {
            for (_, colors) in &candidates {
                if let Some(cert) = attempt_symbolic(&scaled, colors, q, allow_singular)? {
                    return finish_conic(cert, &offsets, &factor, points);
                }
            }
        }
    } else {
        // beyond desk scale: plain lexicographic sweep
        for allow_singular in [false, true] {
            let mut colors = vec![0usize; n];
            loop {
                if let Some(cert) = attempt_symbolic(&scaled, &colors, q, allow_singular)? {
                    return finish_conic(cert, &offsets, &factor, points);
                }
                if !advance(&mut colors, q) {
                    break;
                }
            }
        }
    }
    Err(Error::RetryExhausted(
        "no coloring produced a verifying certificate across the u schedule".into(),
    ))
}

/// Undoes the centering and the integer scaling on a certificate found
/// over the transformed points, then re-verifies it against the original
/// rationals. Coefficients only pick up the 1/factor rescale; the common
/// point also shifts back by the per-coordinate offsets.
fn finish_conic(
    cert: TverbergCertificate,
    offsets: &[Scalar],
    factor: &Rat,
    original: &PointSet,
) -> Result<TverbergCertificate, Error> {
    let inv = Rat::one() / factor;
    let common = Point::new(
        cert.common
            .coords()
            .iter()
            .zip(offsets)
            .map(|(c, t)| match (c, t) {
                (Scalar::Finite(c), Scalar::Finite(t)) => scale(&Scalar::Finite(c + t), &inv),
                _ => scale(c, &inv),
            })
            .collect(),
    );
    let cert = TverbergCertificate {
        parts: cert.parts,
        lambdas: cert.lambdas.iter().map(|l| scale(l, &inv)).collect(),
        common,
        mode: Mode::Conic,
    };
    if !cert.verify(original) {
        return Err(Error::Internal("certificate did not survive unscaling".into()));
    }
    Ok(cert)
}

/// Convex Tverberg partition of (d+1)(q-1)+1 points in Rmax^d: lift, run
/// the conic construction, then shift all parts jointly by the lifted
/// coordinate of the common point.
pub fn tverberg(points: &PointSet, q: usize) -> Result<TverbergCertificate, Error> {
    let d = points.dim();
    if q < 2 {
        return Err(Error::Precondition("q must be at least 2".into()));
    }
    let expected = (d + 1) * (q - 1) + 1;
    if points.len() != expected {
        return Err(Error::SizeMismatch {
            expected,
            got: points.len(),
        });
    }
    let lifted = points.lift();
    let conic = tverberg_conic(&lifted, q)?;
    let c = match conic.common.coord(d) {
        Scalar::Finite(c) => c.clone(),
        Scalar::Bottom => {
            return Err(Error::Internal("lifted common point lost its 0 coordinate".into()))
        }
    };
    let shift = Scalar::Finite(-c);
    let cert = TverbergCertificate {
        parts: conic.parts,
        lambdas: conic.lambdas.iter().map(|l| &shift + l).collect(),
        common: conic.common.add_scalar(&shift).unlift(),
        mode: Mode::Convex,
    };
    if !cert.verify(points) {
        return Err(Error::Internal("convex Tverberg certificate failed verification".into()));
    }
    Ok(cert)
}
