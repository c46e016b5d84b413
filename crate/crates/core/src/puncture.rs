//! Existence of self-orthogonal GRS codes via the puncture code.
//!
//! For a code `C` over GF(q²) the puncture code is
//! `P(C) = ⟨(c_i d_i^q) : c, d ∈ C⟩^⊥ ∩ GF(q)^n`. Taking `C` to be the
//! extended GRS code on every point of GF(q²) with unit multipliers, a
//! weight-`r` word `w` of `P(C)` gives a length-`r` Hermitian self-orthogonal
//! GRS code by restricting to the support of `w` and choosing multipliers
//! `u_i` with `u_i^{q+1} = w_i`, and every such code arises this way.

use std::fmt;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analytic::{construct, FamilyParams};
use crate::error::{Error, Result};
use crate::fqlinalg::weight::{hamming_weight, scan_projective, within_budget};
use crate::fqlinalg::{FqMatrix, LinearCode, DEFAULT_BUDGET};
use crate::galois::{Elem, TowerCtx};
use crate::grs::{grs_code, grs_generator, Extension, GrsSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundClause {
    /// `k ≤ q` when `q ≥ 3`.
    DimensionAtMostQ,
    /// `n ≤ q² + 1` unless `k = 3` and `q` is even.
    LengthAtMostQ2Plus1,
    /// `n ≤ q² + 2` when `k = 3` and `q` is even.
    LengthAtMostQ2Plus2,
}

impl fmt::Display for BoundClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundClause::DimensionAtMostQ => write!(f, "bound (i): k <= q when q >= 3"),
            BoundClause::LengthAtMostQ2Plus1 => write!(f, "bound (ii): n <= q^2 + 1 unless k = 3 and q is even"),
            BoundClause::LengthAtMostQ2Plus2 => write!(f, "bound (iii): n <= q^2 + 2 when k = 3 and q is even"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundCheck {
    Allowed,
    Forbidden(BoundClause),
}

/// Necessary conditions on `[[n, n - 2k, k + 1]]_q` codes of this type.
pub fn check_bounds(q: u32, n: usize, k: usize) -> BoundCheck {
    let qq = q as usize;
    let doubly = k == 3 && q.is_multiple_of(2);
    if q >= 3 && k > qq {
        BoundCheck::Forbidden(BoundClause::DimensionAtMostQ)
    } else if !doubly && n > qq * qq + 1 {
        BoundCheck::Forbidden(BoundClause::LengthAtMostQ2Plus1)
    } else if doubly && n > qq * qq + 2 {
        BoundCheck::Forbidden(BoundClause::LengthAtMostQ2Plus2)
    } else {
        BoundCheck::Allowed
    }
}

/// Extension mode of the search parent for dimension `k`.
pub fn parent_extension(q: u32, k: usize) -> Extension {
    if k == 3 && q.is_multiple_of(2) {
        Extension::Double
    } else {
        Extension::Single
    }
}

/// The extended GRS code on all of GF(q²) (in coset order) with unit
/// multipliers, doubly extended when `k = 3` and `q` is even.
pub fn parent_spec(tower: &TowerCtx, k: usize) -> Result<GrsSpec> {
    GrsSpec::with_unit_multipliers(tower.ext().clone(), tower.enumerate_elements(), k, parent_extension(tower.q(), k))
}

#[derive(Clone, Debug)]
pub struct PunctureCode {
    /// `P(C)` as a code over GF(q).
    pub code: LinearCode,
    pub source: GrsSpec,
    /// Dimension of the span of the products `c ⊙ d^q` over GF(q²).
    pub product_dim: usize,
}

/// Rows `g_s ⊙ conj(g_t)` for all generator pairs.
pub fn product_span(spec: &GrsSpec, tower: &TowerCtx) -> Result<FqMatrix> {
    if **spec.field() != **tower.ext() {
        return Err(Error::FieldMismatch);
    }
    let g = grs_generator(spec);
    let e = tower.ext();
    let mut rows = Vec::with_capacity(spec.k() * spec.k());
    for s in 0..g.rows() {
        for t in 0..g.rows() {
            rows.push(g.row(s).iter().zip(g.row(t)).map(|(&a, &b)| e.mul(a, tower.conj(b))).collect());
        }
    }
    FqMatrix::from_rows(e.clone(), g.cols(), &rows)
}

pub fn puncture_code(spec: &GrsSpec, tower: &TowerCtx) -> Result<PunctureCode> {
    let span = LinearCode::from_generator(&product_span(spec, tower)?);
    let code = span.dual().subfield_subcode(tower)?;
    Ok(PunctureCode { code, source: spec.clone(), product_dim: span.dim() })
}

impl PunctureCode {
    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> usize {
        self.code.dim()
    }

    pub fn k(&self) -> usize {
        self.source.k()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Exhaustive,
    Analytic,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotExistsReason {
    /// `r < 2k` would give a negative logical dimension.
    BelowTwiceDimension,
    /// `r` exceeds the puncture code length.
    LongerThanParent,
    /// Every codeword was enumerated.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Exists {
        /// Puncture-code word as GF(q) element indices.
        witness: Vec<Elem>,
        spec: GrsSpec,
        method: SearchMethod,
    },
    NotExists {
        reason: NotExistsReason,
    },
    Forbidden {
        clause: BoundClause,
    },
    /// Search budget exhausted without a witness.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceVerdict {
    pub q: u32,
    pub r: usize,
    pub k: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl ExistenceVerdict {
    pub fn exists(&self) -> bool {
        matches!(self.verdict, Verdict::Exists { .. })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    pub seed: u64,
    /// Random linear combinations tried when exhaustion is over budget.
    pub random_iterations: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, seed: 0, random_iterations: 200_000 }
    }
}

/// Full weight enumeration of a puncture code.
#[derive(Clone, Debug)]
pub struct WeightScan {
    /// `counts[w]` = number of codewords of weight `w`.
    pub counts: Vec<u64>,
    /// First word of each weight in enumeration order (up to scaling).
    pub witnesses: Vec<Option<Vec<Elem>>>,
}

/// Enumerates all of `P(C)` if `q^dim` fits the budget.
pub fn weight_scan(p: &PunctureCode, budget: u64) -> Option<WeightScan> {
    let field = p.code.field();
    let n = p.len();
    if !within_budget(field.size(), p.dim(), budget) {
        return None;
    }
    let mut counts = vec![0u64; n + 1];
    let mut witnesses = vec![None; n + 1];
    counts[0] = 1;
    if p.dim() == 0 {
        return Some(WeightScan { counts, witnesses });
    }
    let rows = p.code.generator().row_vecs();
    let parts = scan_projective(
        field,
        &rows,
        &[],
        || (vec![0u64; n + 1], vec![None::<Vec<Elem>>; n + 1]),
        |(c, w), word| {
            let wt = hamming_weight(word);
            c[wt] += 1;
            if w[wt].is_none() {
                w[wt] = Some(word.to_vec());
            }
            ControlFlow::Continue(())
        },
    );
    let scale = field.size() as u64 - 1;
    for (c, w) in parts {
        for wt in 0..=n {
            counts[wt] += c[wt] * scale;
            if witnesses[wt].is_none() {
                witnesses[wt] = w[wt].clone();
            }
        }
    }
    Some(WeightScan { counts, witnesses })
}

fn find_weight_exhaustive(p: &PunctureCode, r: usize) -> Option<Vec<Elem>> {
    let rows = p.code.generator().row_vecs();
    scan_projective(
        p.code.field(),
        &rows,
        &[],
        || None,
        |found: &mut Option<Vec<Elem>>, word| {
            if hamming_weight(word) == r {
                *found = Some(word.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    )
    .into_iter()
    .flatten()
    .next()
}

/// Decides whether `P(C)` has a word of weight `r`, returning a verified
/// reconstruction when it does. Never reports non-existence without a
/// complete enumeration.
pub fn exists_weight(p: &PunctureCode, tower: &TowerCtx, r: usize, opts: SearchOptions) -> Result<ExistenceVerdict> {
    let (q, k) = (tower.q(), p.k());
    let done = |verdict| Ok(ExistenceVerdict { q, r, k, verdict });
    if let BoundCheck::Forbidden(clause) = check_bounds(q, r, k) {
        return done(Verdict::Forbidden { clause });
    }
    if r < 2 * k || r == 0 {
        return done(Verdict::NotExists { reason: NotExistsReason::BelowTwiceDimension });
    }
    if r > p.len() {
        return done(Verdict::NotExists { reason: NotExistsReason::LongerThanParent });
    }
    if p.dim() == 0 {
        return done(Verdict::NotExists { reason: NotExistsReason::Exhausted });
    }
    if within_budget(tower.base().size(), p.dim(), opts.budget) {
        return match find_weight_exhaustive(p, r) {
            Some(w) => {
                let spec = reconstruct_grs(&w, p, tower)?;
                done(Verdict::Exists { witness: w, spec, method: SearchMethod::Exhaustive })
            }
            None => done(Verdict::NotExists { reason: NotExistsReason::Exhausted }),
        };
    }
    if let Some(w) = analytic_witnesses(p, tower, r)?.into_iter().next() {
        let spec = reconstruct_grs(&w, p, tower)?;
        return done(Verdict::Exists { witness: w, spec, method: SearchMethod::Analytic });
    }
    if let Some(w) = random_search(p, r, opts) {
        let spec = reconstruct_grs(&w, p, tower)?;
        return done(Verdict::Exists { witness: w, spec, method: SearchMethod::Random });
    }
    done(Verdict::Unknown)
}

fn random_search(p: &PunctureCode, r: usize, opts: SearchOptions) -> Option<Vec<Elem>> {
    let field = p.code.field();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut msg = vec![Elem::ZERO; p.dim()];
    for _ in 0..opts.random_iterations {
        for x in msg.iter_mut() {
            *x = Elem(rng.random_range(0..field.size()));
        }
        let w = p.code.encode(&msg);
        if hamming_weight(&w) == r {
            return Some(w);
        }
    }
    None
}

/// Puncture-code words obtained from the closed-form constructions of
/// length `r` and the parent's dimension.
pub fn analytic_witnesses(p: &PunctureCode, tower: &TowerCtx, r: usize) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    for fp in FamilyParams::enumerate(tower.q()) {
        if fp.n != r || fp.k != p.k() {
            continue;
        }
        let c = construct(tower, &fp)?;
        let w = witness_from_spec(&c.inner, &p.source, tower)?;
        if p.code.contains_word(&w) && hamming_weight(&w) == r {
            out.push(w);
        }
    }
    Ok(out)
}

/// Maps a self-orthogonal code whose points are distinct elements of GF(q²)
/// to the parent's coordinates: the coordinate of point `α_j` gets
/// `u_j^{q+1}`, extension columns map to the parent's matching columns.
pub fn witness_from_spec(spec: &GrsSpec, parent: &GrsSpec, tower: &TowerCtx) -> Result<Vec<Elem>> {
    if spec.k() != parent.k() {
        return Err(Error::DimensionMismatch(format!("dimension {} against parent dimension {}", spec.k(), parent.k())));
    }
    let e = tower.ext();
    let mut position = vec![usize::MAX; e.size() as usize];
    for (i, &a) in parent.alpha().iter().enumerate() {
        position[a.0 as usize] = i;
    }
    let mut w = vec![Elem::ZERO; parent.len()];
    for (&a, &u) in spec.alpha().iter().zip(spec.v()) {
        let pos = position[a.0 as usize];
        if pos == usize::MAX {
            return Err(Error::InvalidSpec(format!("point {a} is not a parent point")));
        }
        // u^{q+1} / v_parent^{q+1}
        let ratio = e.div(tower.norm(u), tower.norm(parent.v()[pos]));
        w[pos] = tower.project(ratio).expect("norms lie in GF(q)");
    }
    let base = parent.alpha().len();
    match (spec.ext(), parent.ext()) {
        (Extension::None, _) => {}
        (Extension::Single, Extension::Single) => w[base] = Elem::ONE,
        (Extension::Single, Extension::Double) => w[base + 1] = Elem::ONE,
        (Extension::Double, Extension::Double) => {
            w[base] = Elem::ONE;
            w[base + 1] = Elem::ONE;
        }
        _ => return Err(Error::InvalidSpec("extension mode not representable in the parent".into())),
    }
    Ok(w)
}

/// Rebuilds a Hermitian self-orthogonal GRS spec of length `wt(witness)` and
/// the parent's dimension from a puncture-code word.
///
/// Finite support points keep their position order and get multipliers
/// `norm_root(w_i)·v_i`. Extension coordinates in the support are rescaled
/// to the unit columns of an extended spec by substituting `F(z) ↦ e·F(z/c)`.
/// A doubly extended parent whose witness uses only the `(0,1,0)ᵀ` column is
/// first moved by `z ↦ α_j + 1/z`, which sends the first support point to
/// the `(0,0,1)ᵀ` column; that coordinate then appears last.
pub fn reconstruct_grs(witness: &[Elem], p: &PunctureCode, tower: &TowerCtx) -> Result<GrsSpec> {
    let parent = &p.source;
    let k = parent.k();
    if witness.len() != p.len() || !p.code.contains_word(witness) {
        return Err(Error::NotInPunctureCode);
    }
    let support = hamming_weight(witness);
    if support < 2 * k {
        return Err(Error::WitnessTooSmall { support, min: 2 * k });
    }
    let e = tower.ext();
    let base_len = parent.alpha().len();
    let mut alpha = Vec::new();
    let mut u = Vec::new();
    for i in 0..base_len {
        if !witness[i].is_zero() {
            alpha.push(parent.alpha()[i]);
            u.push(e.mul(tower.norm_root(witness[i])?, parent.v()[i]));
        }
    }
    let ext_root = |i: usize| -> Result<Option<Elem>> {
        witness.get(base_len + i).filter(|x| !x.is_zero()).map(|&x| tower.norm_root(x)).transpose()
    };

    let spec = match parent.ext() {
        Extension::None => GrsSpec::new(e.clone(), alpha, u, k, Extension::None)?,
        Extension::Single => match ext_root(0)? {
            None => GrsSpec::new(e.clone(), alpha, u, k, Extension::None)?,
            Some(x) => {
                let inv = e.inv(x);
                GrsSpec::new(e.clone(), alpha, u.iter().map(|&ui| e.mul(ui, inv)).collect(), k, Extension::Single)?
            }
        },
        Extension::Double => match (ext_root(0)?, ext_root(1)?) {
            (None, None) => GrsSpec::new(e.clone(), alpha, u, k, Extension::None)?,
            (None, Some(xb)) => {
                let inv = e.inv(xb);
                GrsSpec::new(e.clone(), alpha, u.iter().map(|&ui| e.mul(ui, inv)).collect(), k, Extension::Single)?
            }
            (Some(xa), Some(xb)) => rescale_double(tower, &alpha, &u, xa, xb)?,
            (Some(xa), None) => {
                let (aj, uj) = (alpha[0], u[0]);
                let mut moved = Vec::with_capacity(alpha.len() - 1);
                let mut mult = Vec::with_capacity(alpha.len() - 1);
                for (&ai, &ui) in alpha.iter().zip(&u).skip(1) {
                    let diff = e.sub(ai, aj);
                    moved.push(e.inv(diff));
                    mult.push(e.mul(ui, e.mul(diff, diff)));
                }
                rescale_double(tower, &moved, &mult, xa, uj)?
            }
        },
    };
    if spec.len() != support || spec.k() != k {
        return Err(Error::Internal("reconstructed spec has the wrong shape".into()));
    }
    if !grs_code(&spec).is_hermitian_self_orthogonal(tower)? {
        return Err(Error::Internal("reconstructed code is not Hermitian self-orthogonal".into()));
    }
    Ok(spec)
}

/// Code `(u_i F(α_i), xa·f_1, xb·f_2)` as a doubly extended spec with unit
/// extension columns: points `c·α_i`, multipliers `u_i / e`, where
/// `c = xa / xb` and `e = xa² / xb`.
fn rescale_double(tower: &TowerCtx, alpha: &[Elem], u: &[Elem], xa: Elem, xb: Elem) -> Result<GrsSpec> {
    let f = tower.ext();
    let c = f.div(xa, xb);
    let scale = f.div(f.mul(xa, xa), xb);
    let inv = f.inv(scale);
    GrsSpec::new(
        f.clone(),
        alpha.iter().map(|&a| f.mul(c, a)).collect(),
        u.iter().map(|&ui| f.mul(ui, inv)).collect(),
        3,
        Extension::Double,
    )
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub q: u32,
    pub k: usize,
    pub parent_len: usize,
    pub puncture_dim: usize,
    pub product_dim: usize,
    /// Weight distribution when the puncture code was fully enumerated.
    pub distribution: Option<Vec<u64>>,
    pub verdicts: Vec<ExistenceVerdict>,
}

/// Verdicts for every length `r` in `[2k, parent length]`.
pub fn existence_scan(tower: &TowerCtx, k: usize, opts: SearchOptions) -> Result<ScanReport> {
    let q = tower.q();
    if k == 0 {
        return Err(Error::Inadmissible("k must be at least 1".into()));
    }
    if let BoundCheck::Forbidden(clause) = check_bounds(q, 2 * k, k) {
        return Err(Error::Forbidden(clause.to_string()));
    }
    let parent = parent_spec(tower, k)?;
    let p = puncture_code(&parent, tower)?;
    let n = p.len();
    let scan = weight_scan(&p, opts.budget);
    let mut verdicts = Vec::new();
    for r in 2 * k..=n {
        let verdict = match (&scan, check_bounds(q, r, k)) {
            (_, BoundCheck::Forbidden(clause)) => ExistenceVerdict { q, r, k, verdict: Verdict::Forbidden { clause } },
            (Some(s), BoundCheck::Allowed) => match &s.witnesses[r] {
                Some(w) => {
                    let spec = reconstruct_grs(w, &p, tower)?;
                    ExistenceVerdict { q, r, k, verdict: Verdict::Exists { witness: w.clone(), spec, method: SearchMethod::Exhaustive } }
                }
                None => ExistenceVerdict { q, r, k, verdict: Verdict::NotExists { reason: NotExistsReason::Exhausted } },
            },
            (None, BoundCheck::Allowed) => exists_weight(&p, tower, r, opts)?,
        };
        verdicts.push(verdict);
    }
    Ok(ScanReport {
        q,
        k,
        parent_len: n,
        puncture_dim: p.dim(),
        product_dim: p.product_dim,
        distribution: scan.map(|s| s.counts),
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_examples() {
        assert_eq!(check_bounds(3, 10, 3), BoundCheck::Allowed);
        assert_eq!(check_bounds(3, 11, 2), BoundCheck::Forbidden(BoundClause::LengthAtMostQ2Plus1));
        assert_eq!(check_bounds(2, 6, 3), BoundCheck::Allowed);
        assert_eq!(check_bounds(2, 7, 3), BoundCheck::Forbidden(BoundClause::LengthAtMostQ2Plus2));
        assert_eq!(check_bounds(3, 8, 4), BoundCheck::Forbidden(BoundClause::DimensionAtMostQ));
        assert_eq!(check_bounds(2, 5, 4), BoundCheck::Allowed);
    }

    #[test]
    fn zero_dimensional_source_gives_full_space() {
        // Built by hand: the product span of an empty generator is empty.
        let t = TowerCtx::for_q(2).unwrap();
        let empty = LinearCode::zero(t.ext().clone(), 5);
        let p = empty.dual().subfield_subcode(&t).unwrap();
        assert_eq!(p, LinearCode::full(t.base().clone(), 5));
    }

    #[test]
    fn q2_k2_puncture_code() {
        let t = TowerCtx::for_q(2).unwrap();
        let p = puncture_code(&parent_spec(&t, 2).unwrap(), &t).unwrap();
        assert!(p.product_dim <= 4);
        let scan = weight_scan(&p, DEFAULT_BUDGET).unwrap();
        assert!(scan.counts[5] > 0);
        let v = exists_weight(&p, &t, 5, SearchOptions::default()).unwrap();
        assert!(v.exists());
        let v = exists_weight(&p, &t, 0, SearchOptions::default()).unwrap();
        assert_eq!(v.verdict, Verdict::NotExists { reason: NotExistsReason::BelowTwiceDimension });
    }

    #[test]
    fn unit_witness_round_trip() {
        for q in [2, 3, 4] {
            let t = TowerCtx::for_q(q).unwrap();
            let parent = parent_spec(&t, q as usize).unwrap();
            if parent.ext() != Extension::Single {
                continue;
            }
            let p = puncture_code(&parent, &t).unwrap();
            let w = vec![Elem::ONE; p.len()];
            assert!(p.code.contains_word(&w));
            let spec = reconstruct_grs(&w, &p, &t).unwrap();
            assert_eq!(spec, parent);
        }
    }

    #[test]
    fn reconstruct_rejects_bad_witnesses() {
        let t = TowerCtx::for_q(2).unwrap();
        let p = puncture_code(&parent_spec(&t, 2).unwrap(), &t).unwrap();
        let mut w = vec![Elem::ZERO; p.len()];
        w[0] = Elem::ONE;
        assert_eq!(reconstruct_grs(&w, &p, &t).unwrap_err(), Error::NotInPunctureCode);
        assert_eq!(reconstruct_grs(&vec![Elem::ZERO; p.len()], &p, &t).unwrap_err(), Error::WitnessTooSmall { support: 0, min: 4 });
    }

    #[test]
    fn scan_rejects_forbidden_dimension() {
        let t = TowerCtx::for_q(3).unwrap();
        assert!(matches!(existence_scan(&t, 4, SearchOptions::default()), Err(Error::Forbidden(_))));
    }
}
