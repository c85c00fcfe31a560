//! Dense and sparse exact matrices, generic field elimination, and
//! fraction-free (Bareiss) elimination over Q(q).
//!
//! The generic routines work for any [`Scalar`]; the Bareiss path clears
//! denominators row-wise and eliminates inside the Laurent-polynomial ring,
//! which keeps intermediate entries as genuine minors instead of letting
//! numerator/denominator pairs swell.

use thiserror::Error;

use super::laurent::LaurentPoly;
use super::modp::Fp;
use super::ratfunc::RationalFunction;
use super::scalar::Scalar;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("singular matrix: no solution exists for the right-hand side")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Dense matrix over an exact scalar field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| f(v)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.minus(b))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        self.map(|v| v.times(factor))
    }

    /// Matrix product skipping zero entries, so sparse contents stay cheap
    /// even in dense storage.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (j, x) in v.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let a = self.get(i, j);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.plus(&a.times(x));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if pivot_row != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pivot_row * self.cols + c);
                }
            }
            let inv = self.get(row, col).recip();
            for c in col..self.cols {
                let v = self.get(row, c).times(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c).minus(&factor.times(self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Solves `self * x = rhs`; free variables (if any) are set to zero.
    pub fn solve(&self, rhs: &[S]) -> Result<Vec<S>, LinAlgError> {
        if rhs.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "matrix has {} rows, rhs has {} entries",
                self.rows,
                rhs.len()
            )));
        }
        let mut aug = Mat::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs[r].clone()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            // pivot in the augmented column: inconsistent system
            return Err(LinAlgError::SingularMatrix);
        }
        let mut x = vec![S::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.cols).clone();
        }
        Ok(x)
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &col) in pivot_set.iter().enumerate() {
                v[col] = m.get(row, free).negate();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |r, c| aug.get(r, n + c).clone()))
    }

    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return S::zero();
            };
            if pivot_row != col {
                for c in 0..n {
                    m.data.swap(col * n + c, pivot_row * n + c);
                }
                det = det.negate();
            }
            let pivot = m.get(col, col).clone();
            det = det.times(&pivot);
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).divide(&pivot);
                for c in col..n {
                    let v = m.get(r, c).minus(&factor.times(m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

/// Exact linear solving with the elimination strategy suited to the scalar:
/// plain Gaussian elimination over Q; over Q(q), modular interpolation with
/// exact verification, falling back to fraction-free Bareiss.
pub trait FieldSolve: Scalar {
    fn solve_linear(m: &Mat<Self>, rhs: &[Self]) -> Result<Vec<Self>, LinAlgError>;
    fn matrix_rank(m: &Mat<Self>) -> usize;
    fn matrix_nullspace(m: &Mat<Self>) -> Vec<Vec<Self>>;
}

impl FieldSolve for super::rational::BigRational {
    fn solve_linear(m: &Mat<Self>, rhs: &[Self]) -> Result<Vec<Self>, LinAlgError> {
        m.solve(rhs)
    }
    fn matrix_rank(m: &Mat<Self>) -> usize {
        m.rank()
    }
    fn matrix_nullspace(m: &Mat<Self>) -> Vec<Vec<Self>> {
        m.nullspace()
    }
}

impl FieldSolve for RationalFunction {
    fn solve_linear(m: &Mat<Self>, rhs: &[Self]) -> Result<Vec<Self>, LinAlgError> {
        if let Some(solution) = ratfunc_solve_by_reconstruction(m, rhs) {
            return Ok(solution);
        }
        ratfunc_matrix_solve(m, rhs)
    }
    fn matrix_rank(m: &Mat<Self>) -> usize {
        ratfunc_rank(m)
    }
    fn matrix_nullspace(m: &Mat<Self>) -> Vec<Vec<Self>> {
        ratfunc_nullspace(m)
    }
}

/// Gaussian elimination over the probe prime field; `None` when singular.
fn fp_solve(mut a: Vec<Vec<Fp>>, mut b: Vec<Fp>) -> Option<Vec<Fp>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !Scalar::is_zero(&a[r][col]))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inv();
        for c in col..n {
            a[col][c] = a[col][c].times(&inv);
        }
        b[col] = b[col].times(&inv);
        for r in 0..n {
            if r == col || Scalar::is_zero(&a[r][col]) {
                continue;
            }
            let f = a[r][col];
            for c in col..n {
                let v = a[r][c].minus(&f.times(&a[col][c]));
                a[r][c] = v;
            }
            b[r] = b[r].minus(&f.times(&b[col]));
        }
    }
    Some(b)
}

/// Solves a square system over Q(q) by evaluating at points of the probe
/// prime field, interpolating each coordinate as a Laurent polynomial, and
/// lifting the coefficients back to Q. The guessed solution is only returned
/// after it has been verified exactly against the symbolic system, so a
/// `Some` answer is unconditionally correct; solutions that are not Laurent
/// polynomials (or exceed the search window) come back as `None`.
pub fn ratfunc_solve_by_reconstruction(
    m: &Mat<RationalFunction>,
    rhs: &[RationalFunction],
) -> Option<Vec<RationalFunction>> {
    use super::modp::{interpolate, Fp};
    let n = m.rows();
    if n != m.cols() || rhs.len() != n {
        return None;
    }
    for window in [16i64, 64, 192] {
        let needed = (2 * window + 1) as usize;
        let mut points: Vec<Fp> = Vec::with_capacity(needed);
        let mut samples: Vec<Vec<Fp>> = Vec::with_capacity(needed);
        let mut t = 2u64;
        while points.len() < needed && t < 2 + 8 * needed as u64 {
            let point = Fp::new(t);
            t += 1;
            let eval_rf = |f: &RationalFunction| -> Option<Fp> {
                let num = Fp::eval_laurent(f.num(), point)?;
                let den = Fp::eval_laurent(f.den(), point)?;
                if Scalar::is_zero(&den) {
                    None
                } else {
                    Some(num.divide(&den))
                }
            };
            let mut a = Vec::with_capacity(n);
            let mut ok = true;
            for r in 0..n {
                let mut row = Vec::with_capacity(n);
                for c in 0..n {
                    match eval_rf(m.get(r, c)) {
                        Some(v) => row.push(v),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    break;
                }
                a.push(row);
            }
            if !ok {
                continue;
            }
            let b: Option<Vec<Fp>> = rhs.iter().map(eval_rf).collect();
            let Some(b) = b else { continue };
            let Some(x) = fp_solve(a, b) else { continue };
            points.push(point);
            samples.push(x);
        }
        if points.len() < needed {
            continue;
        }
        // interpolate x_j(q) * q^window as an ordinary polynomial
        let mut solution = Vec::with_capacity(n);
        let mut lifted_all = true;
        for j in 0..n {
            let values: Vec<Fp> = points
                .iter()
                .zip(&samples)
                .map(|(p, x)| x[j].times(&p.pow(window as u64)))
                .collect();
            let coeffs = interpolate(&points, &values);
            let mut terms = Vec::new();
            for (k, c) in coeffs.iter().enumerate() {
                if Scalar::is_zero(c) {
                    continue;
                }
                match c.to_rational() {
                    Some(r) => terms.push((k as i64 - window, r)),
                    None => {
                        lifted_all = false;
                        break;
                    }
                }
            }
            if !lifted_all {
                break;
            }
            solution.push(RationalFunction::from_laurent(LaurentPoly::from_terms(terms)));
        }
        if !lifted_all {
            continue;
        }
        // exact verification; a false guess falls through to a wider window
        let residual_ok = (0..n).all(|r| {
            let mut acc = RationalFunction::zero();
            for c in 0..n {
                if solution[c].is_zero() {
                    continue;
                }
                acc = acc.plus(&m.get(r, c).times(&solution[c]));
            }
            acc == rhs[r]
        });
        if residual_ok {
            return Some(solution);
        }
    }
    None
}

/// Row-major sparse matrix used for representation evaluation, where factors
/// have only a handful of nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat<S> {
    rows: Vec<Vec<(usize, S)>>,
    cols: usize,
}

impl<S: Scalar> SparseMat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![Vec::new(); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| vec![(i, S::one())]).collect(),
            cols: n,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn insert(&mut self, r: usize, c: usize, value: S) {
        if value.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |(col, _)| *col) {
            Ok(pos) => {
                let sum = row[pos].1.plus(&value);
                if sum.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = sum;
                }
            }
            Err(pos) => row.insert(pos, (c, value)),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.rows[r]
            .binary_search_by_key(&c, |(col, _)| *col)
            .map(|pos| self.rows[r][pos].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    pub fn row_entries(&self, r: usize) -> &[(usize, S)] {
        &self.rows[r]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows.len(), "inner dimensions must agree");
        let mut out = Self::zeros(self.rows.len(), rhs.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &rhs.rows[*k] {
                    out.insert(i, *j, a.times(b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows.len(), self.cols), (rhs.rows.len(), rhs.cols));
        let mut out = self.clone();
        for (i, row) in rhs.rows.iter().enumerate() {
            for (j, v) in row {
                out.insert(i, *j, v.clone());
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows.len(), self.cols), (rhs.rows.len(), rhs.cols));
        let mut out = self.clone();
        for (i, row) in rhs.rows.iter().enumerate() {
            for (j, v) in row {
                out.insert(i, *j, v.negate());
            }
        }
        out
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.rows.len(), self.cols);
        }
        Self {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(j, v)| (*j, v.times(factor))).collect())
                .collect(),
            cols: self.cols,
        }
    }

    /// Kronecker product; index (i1, i2) maps to i1 * rhs.dim + i2.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows.len() * rhs.rows.len(), self.cols * rhs.cols);
        for (i1, row1) in self.rows.iter().enumerate() {
            for (j1, a) in row1 {
                for (i2, row2) in rhs.rows.iter().enumerate() {
                    for (j2, b) in row2 {
                        out.insert(i1 * rhs.rows.len() + i2, j1 * rhs.cols + j2, a.times(b));
                    }
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Mat<S> {
        let mut m = Mat::zeros(self.rows.len(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn from_dense(m: &Mat<S>) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    out.insert(i, j, v.clone());
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Fraction-free elimination over Q(q)
// ---------------------------------------------------------------------------

struct BareissEchelon {
    /// Rows after forward elimination (including any augmented columns).
    rows: Vec<Vec<LaurentPoly>>,
    /// (row, col) of each pivot, in elimination order.
    pivots: Vec<(usize, usize)>,
}

/// Fraction-free forward elimination on Laurent-polynomial rows.
///
/// `width` is the number of structural columns; anything beyond is carried
/// along as augmented right-hand sides.
fn bareiss_echelon(mut rows: Vec<Vec<LaurentPoly>>, width: usize) -> BareissEchelon {
    let nrows = rows.len();
    let total = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut prev = LaurentPoly::one();
    let mut rank = 0;
    for col in 0..width {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        for r in rank + 1..nrows {
            for c in 0..total {
                if c == col {
                    continue;
                }
                let numer = rows[rank][col]
                    .mul(&rows[r][c])
                    .sub(&rows[r][col].mul(&rows[rank][c]));
                rows[r][c] = numer
                    .div_exact(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
            rows[r][col] = LaurentPoly::zero();
        }
        prev = rows[rank][col].clone();
        pivots.push((rank, col));
        rank += 1;
    }
    BareissEchelon { rows, pivots }
}

/// Scales a row of rational functions to Laurent polynomials by the least
/// common multiple of the denominators.
fn clear_row_denominators(row: &[RationalFunction]) -> Vec<LaurentPoly> {
    let mut lcm = LaurentPoly::one();
    for entry in row {
        let den = entry.den();
        let g = lcm.gcd(den);
        lcm = lcm.mul(&den.div_exact(&g).expect("gcd divides"));
    }
    row.iter()
        .map(|entry| {
            let cofactor = lcm.div_exact(entry.den()).expect("lcm divisible by denominator");
            entry.num().mul(&cofactor)
        })
        .collect()
}

/// Exact solve of `m x = rhs` via fraction-free elimination.
///
/// Free variables are set to zero; an inconsistent system reports
/// `SingularMatrix`.
pub fn ratfunc_matrix_solve(
    m: &Mat<RationalFunction>,
    rhs: &[RationalFunction],
) -> Result<Vec<RationalFunction>, LinAlgError> {
    if rhs.len() != m.rows() {
        return Err(LinAlgError::DimensionMismatch(format!(
            "matrix has {} rows, rhs has {} entries",
            m.rows(),
            rhs.len()
        )));
    }
    let width = m.cols();
    let rows: Vec<Vec<LaurentPoly>> = (0..m.rows())
        .map(|r| {
            let mut row: Vec<RationalFunction> = m.row(r).to_vec();
            row.push(rhs[r].clone());
            clear_row_denominators(&row)
        })
        .collect();
    let ech = bareiss_echelon(rows, width);
    // consistency: a zero structural row with a nonzero augmented entry
    let pivot_rows = ech.pivots.len();
    for row in ech.rows.iter().skip(pivot_rows) {
        if !row[width].is_zero() {
            return Err(LinAlgError::SingularMatrix);
        }
    }
    let mut x = vec![RationalFunction::zero(); width];
    for &(row, col) in ech.pivots.iter().rev() {
        let mut acc = RationalFunction::from_laurent(ech.rows[row][width].clone());
        for c in col + 1..width {
            if ech.rows[row][c].is_zero() || x[c].is_zero() {
                continue;
            }
            acc = acc.sub(&RationalFunction::from_laurent(ech.rows[row][c].clone()).mul(&x[c]));
        }
        x[col] = acc
            .checked_div(&RationalFunction::from_laurent(ech.rows[row][col].clone()))
            .expect("pivot is nonzero");
    }
    Ok(x)
}

pub fn ratfunc_rank(m: &Mat<RationalFunction>) -> usize {
    let rows: Vec<Vec<LaurentPoly>> = (0..m.rows())
        .map(|r| clear_row_denominators(m.row(r)))
        .collect();
    bareiss_echelon(rows, m.cols()).pivots.len()
}

/// Basis of the right nullspace over Q(q), via fraction-free echelon.
pub fn ratfunc_nullspace(m: &Mat<RationalFunction>) -> Vec<Vec<RationalFunction>> {
    let width = m.cols();
    let rows: Vec<Vec<LaurentPoly>> = (0..m.rows())
        .map(|r| clear_row_denominators(m.row(r)))
        .collect();
    let ech = bareiss_echelon(rows, width);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..width {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![RationalFunction::zero(); width];
        v[free] = RationalFunction::one();
        for &(row, col) in ech.pivots.iter().rev() {
            let mut acc = RationalFunction::zero();
            for c in col + 1..width {
                if ech.rows[row][c].is_zero() || v[c].is_zero() {
                    continue;
                }
                acc = acc.plus(&RationalFunction::from_laurent(ech.rows[row][c].clone()).mul(&v[c]));
            }
            v[col] = acc
                .negate()
                .checked_div(&RationalFunction::from_laurent(ech.rows[row][col].clone()))
                .expect("pivot is nonzero");
        }
        basis.push(v);
    }
    basis
}
