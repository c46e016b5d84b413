use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx, TowerCtx};

use super::matrix::FqMatrix;

/// A linear code held as its canonical (RREF, full row rank) generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    gen: FqMatrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Row space of `m`.
    pub fn from_generator(m: &FqMatrix) -> Self {
        let (gen, pivots) = m.rref_with_pivots();
        LinearCode { gen, pivots }
    }

    pub fn zero(field: Arc<FieldCtx>, n: usize) -> Self {
        LinearCode { gen: FqMatrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: Arc<FieldCtx>, n: usize) -> Self {
        LinearCode { gen: FqMatrix::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn generator(&self) -> &FqMatrix {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn len(&self) -> usize {
        self.gen.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        self.gen.field()
    }

    /// Parity-check matrix: generator of the Euclidean dual.
    pub fn parity_check(&self) -> FqMatrix {
        self.gen.kernel()
    }

    /// Euclidean dual.
    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generator(&self.gen.kernel())
    }

    /// Entrywise Frobenius image of the code.
    pub fn conjugate(&self, tower: &TowerCtx) -> Result<LinearCode> {
        if **self.field() != **tower.ext() {
            return Err(Error::FieldMismatch);
        }
        Ok(LinearCode::from_generator(&self.gen.map(|x| tower.conj(x))))
    }

    /// `{x : Σ x_i y_i^q = 0 for all y in self}`.
    pub fn hermitian_dual(&self, tower: &TowerCtx) -> Result<LinearCode> {
        Ok(self.conjugate(tower)?.dual())
    }

    /// Membership by reducing against the RREF pivots.
    pub fn contains_word(&self, w: &[Elem]) -> bool {
        if w.len() != self.len() {
            return false;
        }
        let f = self.field();
        let mut residual = w.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = residual[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &g) in residual.iter_mut().zip(self.gen.row(r)) {
                *x = f.sub(*x, f.mul(c, g));
            }
        }
        residual.iter().all(|x| x.is_zero())
    }

    /// Encodes a message against the canonical generator.
    pub fn encode(&self, msg: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut out = vec![Elem::ZERO; self.len()];
        for (r, &c) in msg.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, &g) in out.iter_mut().zip(self.gen.row(r)) {
                *x = f.add(*x, f.mul(c, g));
            }
        }
        out
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!("lengths {} and {}", self.len(), other.len())));
        }
        Ok(())
    }

    /// Every generator of `inner` lies in `outer`.
    pub fn contains(outer: &LinearCode, inner: &LinearCode) -> Result<bool> {
        outer.check_compatible(inner)?;
        Ok((0..inner.dim()).all(|r| outer.contains_word(inner.gen.row(r))))
    }

    /// `self ⊆ hermitian_dual(self)`.
    pub fn is_hermitian_self_orthogonal(&self, tower: &TowerCtx) -> Result<bool> {
        Ok(hermitian_gram(self.generator(), self.generator(), tower)?.is_zero())
    }

    /// `{x in GF(q)^n : x in self}` as a code over the base field. Each
    /// parity check `h = aγ + b` splits into the two base-field checks `a`, `b`.
    pub fn subfield_subcode(&self, tower: &TowerCtx) -> Result<LinearCode> {
        if **self.field() != **tower.ext() {
            return Err(Error::FieldMismatch);
        }
        let h = self.parity_check();
        let n = self.len();
        let mut data = Vec::with_capacity(2 * h.rows() * n);
        for r in 0..h.rows() {
            let parts: Vec<(Elem, Elem)> = h.row(r).iter().map(|&x| tower.decompose(x)).collect();
            data.extend(parts.iter().map(|&(a, _)| a));
            data.extend(parts.iter().map(|&(_, b)| b));
        }
        let expanded = FqMatrix::new(tower.base().clone(), 2 * h.rows(), n, data)?;
        Ok(LinearCode::from_generator(&expanded.kernel()))
    }

    /// Lifts a base-field code into the extension field.
    pub fn embed(&self, tower: &TowerCtx) -> Result<LinearCode> {
        if **self.field() != **tower.base() {
            return Err(Error::FieldMismatch);
        }
        let data = (0..self.dim()).flat_map(|r| self.gen.row(r).iter().map(|&x| tower.embed(x))).collect();
        Ok(LinearCode::from_generator(&FqMatrix::new(tower.ext().clone(), self.dim(), self.len(), data)?))
    }
}

/// `G[s] · conj(H[t])` for every pair of rows.
pub fn hermitian_gram(a: &FqMatrix, b: &FqMatrix, tower: &TowerCtx) -> Result<FqMatrix> {
    if **a.field() != **tower.ext() || **b.field() != **tower.ext() {
        return Err(Error::FieldMismatch);
    }
    if a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!("lengths {} and {}", a.cols(), b.cols())));
    }
    let f = tower.ext();
    let mut out = FqMatrix::zeros(f.clone(), a.rows(), b.rows());
    for s in 0..a.rows() {
        for t in 0..b.rows() {
            let v = f.sum(a.row(s).iter().zip(b.row(t)).map(|(&x, &y)| f.mul(x, tower.conj(y))));
            out.set(s, t, v);
        }
    }
    Ok(out)
}
