use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx};

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
    field: Arc<FieldCtx>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl PartialEq for FqMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data && self.field == other.field
    }
}

impl Eq for FqMatrix {}

impl FqMatrix {
    pub fn new(field: Arc<FieldCtx>, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        for &x in &data {
            field.check(x)?;
        }
        Ok(FqMatrix { rows, cols, data, field })
    }

    pub fn zeros(field: Arc<FieldCtx>, rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, data: vec![Elem::ZERO; rows * cols], field }
    }

    pub fn identity(field: Arc<FieldCtx>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Elem::ONE;
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have length `cols`.
    pub fn from_rows(field: Arc<FieldCtx>, cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} in a matrix with {cols} columns", r.len())));
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Self {
        FqMatrix { data: self.data.iter().map(|&x| f(x)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        FqMatrix { rows: self.rows, cols: cols.len(), data, field: self.field.clone() }
    }

    pub fn vstack(&self, other: &FqMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("stacking {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FqMatrix { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() })
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let s = f.sum((0..self.cols).map(|i| f.mul(self.get(r, i), other.get(i, c))));
                out.set(r, c, s);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// In-place Gauss-Jordan elimination. Returns the pivot columns; rows
    /// below `pivots.len()` are zero afterwards.
    fn eliminate(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let x = self.get(r, j);
                self.set(r, j, f.mul(x, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let x = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form with zero rows dropped, plus pivot columns.
    pub fn rref_with_pivots(&self) -> (FqMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate();
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        (m, pivots)
    }

    pub fn rref(&self) -> FqMatrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate().len()
    }

    /// Basis (as rows) of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> FqMatrix {
        let f = self.field.clone();
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = FqMatrix::zeros(f.clone(), free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, Elem::ONE);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(row, pc, f.neg(r.get(pr, fc)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = gf(3, 1);
        let id = FqMatrix::identity(f.clone(), 4);
        assert_eq!(id.rref(), id);
        let z = FqMatrix::zeros(f, 3, 5);
        let r = z.rref();
        assert_eq!(r.rows(), 0);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn rref_dependent_rows_gf4() {
        let f = gf(2, 2);
        let w = f.primitive();
        let w2 = f.mul(w, w);
        assert_eq!(f.mul(w, w), w2);
        let m = FqMatrix::from_rows(f.clone(), 2, &[vec![Elem::ONE, w], vec![w, w2]]).unwrap();
        let r = m.rref();
        assert_eq!(r.row_vecs(), vec![vec![Elem::ONE, w]]);
        assert_eq!(r.rref(), r);
    }

    #[test]
    fn kernel_annihilates() {
        let f = gf(5, 1);
        let m = FqMatrix::from_rows(
            f.clone(),
            4,
            &[vec![Elem(1), Elem(2), Elem(3), Elem(4)], vec![Elem(0), Elem(1), Elem(1), Elem(2)]],
        )
        .unwrap();
        let k = m.kernel();
        assert_eq!(k.rows(), 2);
        assert!(m.mul(&k.transpose()).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        let f = gf(2, 1);
        assert!(FqMatrix::new(f.clone(), 2, 2, vec![Elem(0); 3]).is_err());
        assert!(matches!(FqMatrix::new(f.clone(), 1, 1, vec![Elem(2)]), Err(Error::ForeignElement { .. })));
        let a = FqMatrix::zeros(f.clone(), 1, 2);
        let b = FqMatrix::zeros(gf(3, 1), 1, 2);
        assert_eq!(a.vstack(&b).unwrap_err(), Error::FieldMismatch);
    }
}
