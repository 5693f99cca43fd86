//! Dense matrices and echelon-form linear algebra over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// A dense `rows x cols` matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        assert!(entries.iter().all(|e| e.field() == &field), "entry field mismatch");
        Matrix { field, rows, cols, entries }
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        let entries = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, entries }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field.clone(), n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    /// Block-diagonal assembly; all blocks must share one field.
    pub fn block_diagonal(blocks: &[Matrix]) -> Matrix {
        assert!(!blocks.is_empty(), "need at least one block");
        let field = blocks[0].field.clone();
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zero(field, n, n);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, b.cols, "blocks must be square");
            for i in 0..b.rows {
                for j in 0..b.cols {
                    *m.at_mut(off + i, off + j) = b.at(i, j).clone();
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut FieldElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        assert!(self.field == rhs.field, "field mismatch");
        let mut out = Matrix::zero(self.field.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * rhs.at(k, j);
                    *out.at_mut(i, j) = &*out.at(i, j) + &prod;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut acc = Matrix::identity(self.field.clone(), self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Matrix::new(self.field.clone(), self.rows, self.cols, entries)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.at(i, j).is_one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    /// Multiplicative order; fails if it exceeds `cap`.
    pub fn order(&self, cap: u64) -> Result<u64> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Ok(k);
            }
            acc = acc.mul(self);
        }
        Err(Error::InvalidInput(format!("matrix order exceeds cap {cap}")))
    }

    pub fn rank(&self) -> usize {
        let mut span = RowSpan::new(self.field.clone(), self.cols);
        for i in 0..self.rows {
            span.insert(self.row(i).to_vec());
        }
        span.rank()
    }

    pub fn det(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "det needs a square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(pivot) = pivot else {
                return self.field.zero();
            };
            if pivot != col {
                for j in 0..n {
                    let a = m.at(pivot, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(pivot, j) = b;
                    *m.at_mut(col, j) = a;
                }
                det = det.neg();
            }
            let lead = m.at(col, col).clone();
            det = &det * &lead;
            let inv = lead.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = &*m.at(r, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = &factor * m.at(col, j);
                    *m.at_mut(r, j) = &*m.at(r, j) - &delta;
                }
            }
        }
        det
    }

    /// Echelonized basis of the right kernel `{v : Mv = 0}`, deterministic:
    /// one vector per free column in increasing column order, reduced so that
    /// each basis vector has a 1 in its free coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let mut span = RowSpan::new(self.field.clone(), self.cols);
        for i in 0..self.rows {
            span.insert(self.row(i).to_vec());
        }
        let rref = span.rows();
        let pivot_cols: Vec<usize> = rref.iter().map(|(p, _)| *p).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (pivot, row) in rref {
                // pivot coefficient of v is -row[free]
                v[*pivot] = row[free].neg();
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// An incrementally maintained reduced row echelon span.
///
/// Rows are kept fully reduced with monic pivots, ordered by pivot column,
/// so the stored basis is canonical for the spanned subspace.
pub struct RowSpan {
    field: Field,
    width: usize,
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl RowSpan {
    pub fn new(field: Field, width: usize) -> RowSpan {
        RowSpan { field, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[(usize, Vec<FieldElement>)] {
        &self.rows
    }

    /// Reduces `v` against the span, returning the remainder.
    pub fn reduce(&self, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.width);
        for (pivot, row) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                let delta = &c * y;
                *x = &*x - &delta;
            }
        }
        v
    }

    /// Inserts `v`; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, v: Vec<FieldElement>) -> Option<usize> {
        let mut v = self.reduce(v);
        let pivot = v.iter().position(|c| !c.is_zero())?;
        let inv = v[pivot].inv().expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        // Back-substitute into existing rows to keep the span in RREF.
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&v) {
                let delta = &c * y;
                *x = &*x - &delta;
            }
        }
        let pos = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(pos, (pivot, v));
        Some(pivot)
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: Vec<FieldElement>) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn mat(field: &Field, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        let entries = vals.iter().map(|&v| field.from_int(v)).collect();
        Matrix::new(field.clone(), rows, cols, entries)
    }

    #[test]
    fn rank_and_det_of_jordan_blocks() {
        let f5 = f(5);
        // 3x3 Jordan block, diagonal 1, subdiagonal 1.
        let j = mat(&f5, 3, 3, &[1, 0, 0, 1, 1, 0, 0, 1, 1]);
        assert_eq!(j.det(), f5.one());
        let n = j.sub(&Matrix::identity(f5.clone(), 3));
        assert_eq!(n.rank(), 2);
        assert_eq!(n.mul(&n).rank(), 1);
        assert_eq!(n.mul(&n).mul(&n).rank(), 0);
        assert_eq!(j.order(100).unwrap(), 5);
    }

    #[test]
    fn order_of_negative_jordan_block() {
        let f5 = f(5);
        let j = mat(&f5, 2, 2, &[-1, 0, 1, -1]);
        assert_eq!(j.order(100).unwrap(), 10);
        assert_eq!(j.det(), f5.one());
    }

    #[test]
    fn kernel_basis_is_echelonized() {
        let f3 = f(3);
        // x + y + z = 0 over F_3: kernel of a 1x3 matrix.
        let m = mat(&f3, 1, 3, &[1, 1, 1]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        // Free columns 1 and 2, each basis vector has a 1 there.
        assert_eq!(basis[0][1], f3.one());
        assert_eq!(basis[1][2], f3.one());
        for v in &basis {
            let s = v.iter().fold(f3.zero(), |acc, c| &acc + c);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn row_span_reduction_is_canonical() {
        let f2 = f(2);
        let mut span = RowSpan::new(f2.clone(), 3);
        assert!(span.insert(vec![f2.one(), f2.one(), f2.zero()]).is_some());
        assert!(span.insert(vec![f2.zero(), f2.one(), f2.one()]).is_some());
        assert!(span.insert(vec![f2.one(), f2.zero(), f2.one()]).is_none());
        assert_eq!(span.rank(), 2);
        assert!(span.contains(vec![f2.one(), f2.zero(), f2.one()]));
        assert!(!span.contains(vec![f2.one(), f2.zero(), f2.zero()]));
    }
}
