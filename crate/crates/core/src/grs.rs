//! Generalized Reed-Solomon codes and their singly/doubly extended forms.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fqlinalg::{FqMatrix, LinearCode};
use crate::galois::{Elem, FieldCtx, FieldDescriptor, TowerCtx};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extension {
    None,
    /// One extra column, all zero except 1 in the last row.
    Single,
    /// Two extra columns `(0,1,0)ᵀ` and `(0,0,1)ᵀ`; only for `k = 3` in
    /// characteristic 2.
    Double,
}

impl Extension {
    pub fn extra_columns(self) -> usize {
        match self {
            Extension::None => 0,
            Extension::Single => 1,
            Extension::Double => 2,
        }
    }
}

/// Recipe for a GRS generator: evaluation points, column multipliers,
/// dimension and extension mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GrsSpecRepr", into = "GrsSpecRepr")]
pub struct GrsSpec {
    field: Arc<FieldCtx>,
    alpha: Vec<Elem>,
    v: Vec<Elem>,
    k: usize,
    ext: Extension,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GrsSpecRepr {
    field: FieldDescriptor,
    alpha: Vec<u32>,
    v: Vec<u32>,
    k: usize,
    ext: Extension,
}

impl From<GrsSpec> for GrsSpecRepr {
    fn from(s: GrsSpec) -> Self {
        GrsSpecRepr {
            field: s.field.descriptor(),
            alpha: s.alpha.iter().map(|x| x.0).collect(),
            v: s.v.iter().map(|x| x.0).collect(),
            k: s.k,
            ext: s.ext,
        }
    }
}

impl TryFrom<GrsSpecRepr> for GrsSpec {
    type Error = Error;

    fn try_from(r: GrsSpecRepr) -> Result<Self> {
        let field = Arc::new(FieldCtx::from_descriptor(&r.field)?);
        GrsSpec::new(field, r.alpha.into_iter().map(Elem).collect(), r.v.into_iter().map(Elem).collect(), r.k, r.ext)
    }
}

impl GrsSpec {
    pub fn new(field: Arc<FieldCtx>, alpha: Vec<Elem>, v: Vec<Elem>, k: usize, ext: Extension) -> Result<Self> {
        if alpha.len() != v.len() {
            return Err(Error::InvalidSpec(format!("{} points but {} multipliers", alpha.len(), v.len())));
        }
        for &x in alpha.iter().chain(&v) {
            field.check(x)?;
        }
        let mut sorted = alpha.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        if let Some(i) = v.iter().position(|x| x.is_zero()) {
            return Err(Error::ZeroMultiplier(i));
        }
        if k == 0 {
            return Err(Error::InvalidSpec("dimension must be at least 1".into()));
        }
        if k > alpha.len() {
            return Err(Error::InvalidSpec(format!("dimension {k} exceeds {} evaluation points", alpha.len())));
        }
        if ext == Extension::Double && (k != 3 || field.characteristic() != 2) {
            return Err(Error::InvalidSpec("double extension requires k = 3 over a field of characteristic 2".into()));
        }
        Ok(GrsSpec { field, alpha, v, k, ext })
    }

    /// All-ones multipliers.
    pub fn with_unit_multipliers(field: Arc<FieldCtx>, alpha: Vec<Elem>, k: usize, ext: Extension) -> Result<Self> {
        let v = vec![Elem::ONE; alpha.len()];
        Self::new(field, alpha, v, k, ext)
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn alpha(&self) -> &[Elem] {
        &self.alpha
    }

    pub fn v(&self) -> &[Elem] {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ext(&self) -> Extension {
        self.ext
    }

    /// Code length including extension columns.
    pub fn len(&self) -> usize {
        self.alpha.len() + self.ext.extra_columns()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same spec with multiplier `i` replaced, re-validated.
    pub fn with_multiplier(&self, i: usize, x: Elem) -> Result<Self> {
        let mut v = self.v.clone();
        v[i] = x;
        Self::new(self.field.clone(), self.alpha.clone(), v, self.k, self.ext)
    }

    /// Codeword of the polynomial with coefficients `coeffs` (low degree
    /// first, at most `k` of them): `(v_i F(α_i))` followed by the extension
    /// coordinates, which carry the top coefficient(s) of `F`.
    pub fn encode_polynomial(&self, coeffs: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let coef = |i: usize| coeffs.get(i).copied().unwrap_or(Elem::ZERO);
        let mut out: Vec<Elem> = self
            .alpha
            .iter()
            .zip(&self.v)
            .map(|(&a, &v)| {
                let val = (0..self.k).rev().fold(Elem::ZERO, |acc, i| f.add(f.mul(acc, a), coef(i)));
                f.mul(v, val)
            })
            .collect();
        match self.ext {
            Extension::None => {}
            Extension::Single => out.push(coef(self.k - 1)),
            Extension::Double => {
                out.push(coef(1));
                out.push(coef(2));
            }
        }
        out
    }
}

/// `k × n'` generator: row `s` holds `v_i α_i^s`, then the extension columns.
pub fn grs_generator(spec: &GrsSpec) -> FqMatrix {
    let f = &spec.field;
    let n = spec.len();
    let mut g = FqMatrix::zeros(f.clone(), spec.k, n);
    for (i, (&a, &v)) in spec.alpha.iter().zip(&spec.v).enumerate() {
        let mut x = v;
        for s in 0..spec.k {
            g.set(s, i, x);
            x = f.mul(x, a);
        }
    }
    let base = spec.alpha.len();
    match spec.ext {
        Extension::None => {}
        Extension::Single => g.set(spec.k - 1, base, Elem::ONE),
        Extension::Double => {
            g.set(1, base, Elem::ONE);
            g.set(2, base + 1, Elem::ONE);
        }
    }
    g
}

pub fn grs_code(spec: &GrsSpec) -> LinearCode {
    LinearCode::from_generator(&grs_generator(spec))
}

/// Entrywise Frobenius image `α ↦ α^q`.
pub fn conjugate_points(alpha: &[Elem], tower: &TowerCtx) -> Result<Vec<Elem>> {
    alpha.iter().map(|&a| tower.frobenius(a)).collect()
}
