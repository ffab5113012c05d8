//! Generalized polynomials Σ α_k u^{β_k} with exact rational coefficients
//! and exact rational exponents, their matrices and determinants.
//!
//! These carry the parametric proofs: a max-plus scalar a becomes the
//! monomial u^a (with u^{-inf} := 0), a matrix of scalars becomes a matrix
//! of monomials, and identities between determinants translate back into
//! max-plus equalities by reading leading terms. Exponents stay rational
//! throughout so that "largest exponent" is an exact comparison.
//!
//! The exponent set of any finite family of these polynomials generates a
//! cyclic subgroup of (Q, +), so division chains terminate; the ring is an
//! integral domain because leading terms multiply.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::scalar::{Rat, Scalar};

/// Finite sum of terms α·u^β, stored sparsely by exponent. The zero
/// polynomial is the empty map and encodes u^{-inf}.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GenPoly {
    terms: BTreeMap<Rat, Rat>,
}

/// Sign and exponent of the highest-exponent term of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub sign: i8,
    pub exponent: Rat,
}

impl GenPoly {
    pub fn zero() -> Self {
        GenPoly::default()
    }

    pub fn one() -> Self {
        GenPoly::monomial_rat(Rat::one(), Rat::zero())
    }

    /// α·u^β; dropped when α = 0.
    pub fn monomial_rat(coeff: Rat, exponent: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        GenPoly { terms }
    }

    /// u^a for a max-plus scalar a, with u^{-inf} := 0.
    pub fn monomial(a: &Scalar) -> Self {
        match a {
            Scalar::Bottom => GenPoly::zero(),
            Scalar::Finite(r) => GenPoly::monomial_rat(Rat::one(), r.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &Rat) -> Rat {
        self.terms.get(exponent).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &GenPoly) -> GenPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        GenPoly { terms }
    }

    pub fn negate(&self) -> GenPoly {
        GenPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &GenPoly) -> GenPoly {
        self.add(&other.negate())
    }

    pub fn mul(&self, other: &GenPoly) -> GenPoly {
        let mut terms: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        GenPoly { terms }
    }

    pub fn scale(&self, c: &Rat) -> GenPoly {
        if c.is_zero() {
            return GenPoly::zero();
        }
        GenPoly {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Leading (highest-exponent) term of a nonzero polynomial.
    pub fn leading(&self) -> Result<LeadingTerm, Error> {
        let (e, c) = self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)?;
        Ok(LeadingTerm {
            sign: if c.is_positive() { 1 } else { -1 },
            exponent: e.clone(),
        })
    }

    fn leading_pair(&self) -> Option<(&Rat, &Rat)> {
        self.terms.iter().next_back()
    }

    fn lowest_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    /// Exact division; panics if `divisor` does not divide `self`.
    /// Only reachable from fraction-free elimination, where divisions are
    /// exact by construction.
    fn div_exact(&self, divisor: &GenPoly) -> GenPoly {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return GenPoly::zero();
        }
        // every quotient exponent lies in [low(f)-low(g), lead(f)-lead(g)]
        let floor = self.lowest_exponent().unwrap() - divisor.lowest_exponent().unwrap();
        let (dlead_e, dlead_c) = divisor.leading_pair().unwrap();
        let (dlead_e, dlead_c) = (dlead_e.clone(), dlead_c.clone());
        let mut rem = self.clone();
        let mut quot = GenPoly::zero();
        while !rem.is_zero() {
            let (re, rc) = rem.leading_pair().unwrap();
            let qe = re - &dlead_e;
            assert!(qe >= floor, "non-exact polynomial division");
            let qc = rc / &dlead_c;
            let t = GenPoly::monomial_rat(qc, qe);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        quot
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if e.is_zero() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "u^{}", e)?;
            } else {
                write!(f, "{}*u^{}", a, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Quotient of two generalized polynomials with a nonzero denominator.
/// No canonical reduction is performed; equality is by cross-multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    pub numerator: GenPoly,
    pub denominator: GenPoly,
}

impl RatFn {
    pub fn new(numerator: GenPoly, denominator: GenPoly) -> Result<Self, Error> {
        if denominator.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(RatFn {
            numerator,
            denominator,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn eq_cross(&self, other: &RatFn) -> bool {
        self.numerator.mul(&other.denominator) == other.numerator.mul(&self.denominator)
    }

    /// Leading exponent of the quotient: lead(num) − lead(den).
    pub fn leading_exponent(&self) -> Result<Rat, Error> {
        let n = self.numerator.leading()?;
        let d = self.denominator.leading()?;
        Ok(n.exponent - d.exponent)
    }
}

/// Rectangular grid of generalized polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GenPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GenPoly>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GenPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    /// Entrywise u^{a_{ij}} of a scalar grid.
    pub fn from_scalars(grid: &[Vec<Scalar>]) -> Self {
        let rows = grid.len();
        let cols = if rows == 0 { 0 } else { grid[0].len() };
        PolyMatrix::from_fn(rows, cols, |i, j| GenPoly::monomial(&grid[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &GenPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.entry(row_idx[i], col_idx[j]).clone()
        })
    }

    /// Replaces column `col` with `column`.
    pub fn with_column(&self, col: usize, column: &[GenPoly]) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| {
            if j == col {
                column[i].clone()
            } else {
                self.entry(i, j).clone()
            }
        })
    }

    /// Exact determinant: matrices whose entries are all monomials (the
    /// common case here) go through a memoized expansion where every
    /// product is monomial-by-polynomial; otherwise Laplace expansion for
    /// orders up to 5 and fraction-free (Bareiss) elimination above.
    pub fn determinant(&self) -> Result<GenPoly, Error> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        if self.entries.iter().all(|e| e.term_count() <= 1) {
            return Ok(self.det_monomial_memo());
        }
        if self.rows <= 5 {
            Ok(self.det_laplace())
        } else {
            Ok(self.det_bareiss())
        }
    }

    /// Expansion with memoization on the set of remaining columns; sound
    /// only for all-monomial matrices, where it avoids polynomial-by-
    /// polynomial products entirely. Minors run over prefix row ranges so
    /// that the same memo pass also serves the last-row cofactors.
    fn det_monomial_memo(&self) -> GenPoly {
        let mut memo = std::collections::HashMap::new();
        self.prefix_minor(self.rows, (1u32 << self.cols) - 1, &mut memo)
    }

    /// Determinant of the submatrix on rows 0..row_count and the columns
    /// in `mask` (with |mask| = row_count), expanding along the last row.
    fn prefix_minor(
        &self,
        row_count: usize,
        mask: u32,
        memo: &mut std::collections::HashMap<u32, GenPoly>,
    ) -> GenPoly {
        if row_count == 0 {
            return GenPoly::one();
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let row = row_count - 1;
        let mut acc = GenPoly::zero();
        let mut pos = 0usize;
        for j in 0..self.cols {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = self.entry(row, j);
            if !entry.is_zero() {
                let minor = self.prefix_minor(row_count - 1, mask & !(1 << j), memo);
                let term = minor.mul(entry);
                // sign (-1)^{row + pos} with row = row_count - 1
                acc = if (row + pos) % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// For an all-monomial square matrix, the determinant together with
    /// the signed last-row cofactors (−1)^{(n−1)+j}·minor(n−1, j), all
    /// from a single memoized expansion. These are exactly the Cramer
    /// numerators for a right-hand side that is the last unit vector.
    pub fn det_and_last_row_cofactors(&self) -> Result<(GenPoly, Vec<GenPoly>), Error> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        if !self.entries.iter().all(|e| e.term_count() <= 1) {
            return Err(Error::Precondition(
                "cofactor fast path requires monomial entries".into(),
            ));
        }
        let n = self.rows;
        let mut memo = std::collections::HashMap::new();
        let full = (1u32 << n) - 1;
        let det = self.prefix_minor(n, full, &mut memo);
        let mut cofactors = Vec::with_capacity(n);
        for j in 0..n {
            let minor = self.prefix_minor(n - 1, full & !(1 << j), &mut memo);
            cofactors.push(if (n - 1 + j) % 2 == 0 {
                minor
            } else {
                minor.negate()
            });
        }
        Ok((det, cofactors))
    }

    fn det_laplace(&self) -> GenPoly {
        let n = self.rows;
        if n == 0 {
            return GenPoly::one();
        }
        if n == 1 {
            return self.entry(0, 0).clone();
        }
        let cols: Vec<usize> = (0..n).collect();
        self.det_laplace_rec(1, &cols)
            .into_iter()
            .enumerate()
            .fold(GenPoly::zero(), |acc, (j, minor)| {
                let term = self.entry(0, j).mul(&minor);
                if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                }
            })
    }

    /// Minors of rows `row..n` over each column subset of `cols` missing
    /// one position; recursion over the first remaining row.
    fn det_laplace_rec(&self, row: usize, cols: &[usize]) -> Vec<GenPoly> {
        let mut out = Vec::with_capacity(cols.len());
        for skip in 0..cols.len() {
            let sub: Vec<usize> = cols
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &c)| c)
                .collect();
            out.push(self.det_on(row, &sub));
        }
        out
    }

    fn det_on(&self, row: usize, cols: &[usize]) -> GenPoly {
        if cols.is_empty() {
            return GenPoly::one();
        }
        if cols.len() == 1 {
            return self.entry(row, cols[0]).clone();
        }
        let minors = self.det_laplace_rec(row + 1, cols);
        minors
            .into_iter()
            .enumerate()
            .fold(GenPoly::zero(), |acc, (j, minor)| {
                let term = self.entry(row, cols[j]).mul(&minor);
                if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                }
            })
    }

    fn det_bareiss(&self) -> GenPoly {
        let n = self.rows;
        let mut m: Vec<Vec<GenPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut sign = 1i8;
        let mut prev = GenPoly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return GenPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.div_exact(&prev);
                }
                m[i][k] = GenPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign < 0 {
            det.negate()
        } else {
            det
        }
    }
}

/// Largest r with a nonsingular r×r submatrix, plus the first witness in
/// lexicographic order over row then column index sets. r = 0 with empty
/// witness sets for the all-zero matrix.
pub fn max_nonzero_minor(m: &PolyMatrix) -> (usize, Vec<usize>, Vec<usize>) {
    let bound = m.rows().min(m.cols());
    for r in (1..=bound).rev() {
        for rows in subsets_lex(m.rows(), r) {
            for cols in subsets_lex(m.cols(), r) {
                let sub = m.submatrix(&rows, &cols);
                if !sub.determinant().expect("square by construction").is_zero() {
                    return (r, rows, cols);
                }
            }
        }
    }
    (0, Vec::new(), Vec::new())
}

/// k-subsets of 0..n in lexicographic order.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        for v in start..=n.saturating_sub(remaining) {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(n, k, 0, &mut cur, &mut out);
    }
    out
}

/// Exact Cramer solution of M·x = rhs for square nonsingular M; every
/// component shares the denominator det(M).
pub fn cramer_solve(m: &PolyMatrix, rhs: &[GenPoly]) -> Result<Vec<RatFn>, Error> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare);
    }
    if rhs.len() != m.rows() {
        return Err(Error::LengthMismatch {
            expected: m.rows(),
            got: rhs.len(),
        });
    }
    let det = m.determinant()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let mut out = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let num = m.with_column(j, rhs).determinant()?;
        out.push(RatFn::new(num, det.clone())?);
    }
    Ok(out)
}
