//! Exact linear algebra over the rationals.
//!
//! Every dimension count in the pipeline reduces to a rank, kernel, or
//! membership computation here, so everything is exact: ranks run through
//! fraction-free Bareiss elimination on integer matrices obtained by
//! clearing denominators, and kernels/solves use rational Gauss–Jordan.
//! No floating point anywhere.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar. `BigRational` keeps the invariants
/// we need: always reduced and the denominator always positive.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse `"p/q"`, an integer string, or a finite decimal like `"0.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| bad())?;
        let den: BigInt = q.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!(
            "{}{}",
            if int_part.is_empty() { "0" } else { int_part },
            frac_part
        );
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(Rat::new(num, den));
    }
    let num: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(num))
}

/// Dense matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::input("ragged rows in matrix"));
        }
        Ok(QMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix with the given row count and no columns lost: rows of length
    /// `cols`, for building empty span matrices with the right width.
    pub fn with_cols(cols: usize) -> Self {
        QMatrix {
            rows: 0,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<Rat>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.entries.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    /// Vertical stack; column counts must agree.
    pub fn stack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.cols {
            return Err(Error::input(format!(
                "cannot stack {}-column and {}-column matrices",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Rank over the rationals by fraction-free Bareiss elimination.
    ///
    /// Denominators are cleared row by row first; the elimination then
    /// stays in integers with exact divisions, which bounds entry growth
    /// compared to naive integer cross-multiplication.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminating the smaller dimension is cheaper.
        if self.cols > self.rows {
            return self.transpose().rank();
        }
        let mut m = self.cleared_rows();

        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                    m[r][c] = v;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    fn cleared_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let lcm = self.row(r).iter().fold(BigInt::one(), |acc, x| {
                    num::integer::lcm(acc, x.denom().clone())
                });
                self.row(r)
                    .iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect()
    }

    /// Fraction-free Gauss–Jordan on the denominator-cleared matrix:
    /// every update is `(pivot·a_ij − a_ic·p_j) / previous_pivot` with the
    /// division exact (entries stay minors of the input), applied to all
    /// rows so every pivot entry ends up equal to the final pivot `δ`.
    /// Dividing by `δ` yields the rational reduced echelon form without a
    /// single gcd along the way.
    fn jordan_int(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, BigInt) {
        let mut m = self.cleared_rows();
        let rows = self.rows;
        let cols = self.cols;
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..cols {
            if r >= rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            let pivot = m[r][col].clone();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = std::mem::replace(&mut m[i][col], BigInt::zero());
                for j in 0..cols {
                    if j == col {
                        continue;
                    }
                    let v = (&pivot * &m[i][j] - &factor * &m[r][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = pivot;
            pivots.push(col);
            r += 1;
        }
        (m, pivots, prev)
    }

    /// Reduced row echelon form; returns the reduced matrix and the pivot
    /// column indices.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let (m, pivots, delta) = self.jordan_int();
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for (r, row) in m.iter().enumerate().take(pivots.len()) {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    *out.get_mut(r, c) = Rat::new(v.clone(), delta.clone());
                }
            }
        }
        (out, pivots)
    }

    /// Basis of the right null space `{ v : M v = 0 }`. The count always
    /// equals `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (m, pivots, delta) = self.jordan_int();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                if !m[row][free].is_zero() {
                    v[pc] = -Rat::new(m[row][free].clone(), delta.clone());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Rows of `self` that form a basis of its row space, in reduced
    /// echelon form.
    pub fn row_space_basis(&self) -> QMatrix {
        let (m, pivots, delta) = self.jordan_int();
        let mut out = QMatrix::with_cols(self.cols);
        for row in m.iter().take(pivots.len()) {
            out.push_row(
                row.iter()
                    .map(|v| {
                        if v.is_zero() {
                            Rat::zero()
                        } else {
                            Rat::new(v.clone(), delta.clone())
                        }
                    })
                    .collect(),
            );
        }
        out
    }
}

/// Dimension of the span of a list of vectors (all the same length).
pub fn span_dim(vectors: &[Vec<Rat>]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let len = vectors[0].len();
    if vectors.iter().any(|v| v.len() != len) {
        return Err(Error::input("span_dim: vectors of unequal length"));
    }
    Ok(QMatrix::from_rows(vectors.to_vec())?.rank())
}

/// Coefficients expressing `target` in the span of `span`, or `None` when
/// the target lies outside it.
pub fn solve_membership(target: &[Rat], span: &[Vec<Rat>]) -> Result<Option<Vec<Rat>>> {
    if span.iter().any(|v| v.len() != target.len()) {
        return Err(Error::input("solve_membership: dimension mismatch"));
    }
    if target.iter().all(|x| x.is_zero()) {
        return Ok(Some(vec![Rat::zero(); span.len()]));
    }
    if span.is_empty() {
        return Ok(None);
    }
    // Columns are the span vectors; augment with the target and reduce.
    let dim = target.len();
    let mut aug = QMatrix::zeros(dim, span.len() + 1);
    for (j, v) in span.iter().enumerate() {
        for i in 0..dim {
            *aug.get_mut(i, j) = v[i].clone();
        }
    }
    for i in 0..dim {
        *aug.get_mut(i, span.len()) = target[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&span.len()) {
        return Ok(None);
    }
    let mut coeffs = vec![Rat::zero(); span.len()];
    for (row, &pc) in pivots.iter().enumerate() {
        coeffs[pc] = r.get(row, span.len()).clone();
    }
    Ok(Some(coeffs))
}

/// Basis (as echelon rows) of the intersection of the row spaces of `a`
/// and `b`. A vector lies in both row spaces exactly when it is `x·a` for
/// some left-kernel witness `(x, -y)` of the stacked matrix.
pub fn row_space_intersection(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::input("row_space_intersection: column mismatch"));
    }
    let stacked = a.stack(b)?;
    let left_kernel = stacked.transpose().kernel_basis();
    let mut rows = QMatrix::with_cols(a.cols());
    for k in &left_kernel {
        let mut v = vec![Rat::zero(); a.cols()];
        for (i, coeff) in k.iter().take(a.rows()).enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for c in 0..a.cols() {
                v[c] += coeff * a.get(i, c);
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            rows.push_row(v);
        }
    }
    Ok(rows.row_space_basis())
}

/// Incrementally maintained reduced echelon basis of a growing span.
/// Used where generators arrive one at a time and each step needs the
/// span so far (colon-space checks, graded intersections).
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        EchelonBasis {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after reduction against the current basis.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for c in p..self.cols {
                let delta = &factor * &row[c];
                v[c] -= delta;
            }
        }
        v
    }

    /// Returns whether `v` lies in the current span.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].clone();
        for x in r.iter_mut().skip(p) {
            *x /= &inv;
        }
        // back-substitute into existing rows to stay fully reduced
        for (row, &rp) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(rp != p);
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for c in p..self.cols {
                let delta = &factor * &r[c];
                row[c] -= delta;
            }
        }
        let idx = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(idx, r);
        self.pivots.insert(idx, p);
        true
    }

    pub fn basis_rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }
}
