//! Closed-form Hermitian self-orthogonal GRS constructions.
//!
//! Four parameter families are covered, each giving `[[n, n - 2k, k + 1]]_q`:
//!
//! | family      | length        | dimension            |
//! |-------------|---------------|----------------------|
//! | `Q2Plus1`   | `q² + 1`      | `k = q`              |
//! | `Q2MinusL`  | `q² - l`      | `k ≤ q - l - 1`, `0 ≤ l ≤ q - 2` |
//! | `MqMinusL`  | `mq - l`      | `k ≤ m - l`, `0 ≤ l < m`, `1 < m < q` |
//! | `AtMostQ`   | `n ≤ q`       | `k ≤ ⌊n/2⌋`          |
//!
//! Apart from `Q2Plus1`, which is a single self-orthogonal extended code, every
//! construction returns a pair `inner ⊆ outer` where `outer` is the Hermitian
//! dual of `inner`. Points come from [`TowerCtx::enumerate_elements`], so the
//! removed points are always the tail of that ordering.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fqlinalg::{hermitian_gram, LinearCode};
use crate::galois::{Elem, FieldCtx, TowerCtx};
use crate::grs::{conjugate_points, grs_code, grs_generator, Extension, GrsSpec};
use crate::quantum::QuantumParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Q2Plus1,
    Q2MinusL,
    MqMinusL,
    AtMostQ,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Q2Plus1 => "q2plus1",
            Family::Q2MinusL => "q2-l",
            Family::MqMinusL => "mq-l",
            Family::AtMostQ => "at-most-q",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q2plus1" => Ok(Family::Q2Plus1),
            "q2-l" | "q2minusl" => Ok(Family::Q2MinusL),
            "mq-l" | "mqminusl" => Ok(Family::MqMinusL),
            "at-most-q" | "atmostq" => Ok(Family::AtMostQ),
            other => Err(Error::Inadmissible(format!("unknown family `{other}`"))),
        }
    }
}

/// An admissible point of one of the families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

fn inadmissible(msg: String) -> Error {
    Error::Inadmissible(msg)
}

impl FamilyParams {
    pub fn q2plus1(q: u32) -> Self {
        FamilyParams { family: Family::Q2Plus1, q, n: (q * q + 1) as usize, k: q as usize, l: None, m: None }
    }

    pub fn q2minus_l(q: u32, l: usize, k: usize) -> Result<Self> {
        let qq = q as usize;
        if l + 2 > qq {
            return Err(inadmissible(format!("l <= q - 2 violated (l = {l}, q = {q})")));
        }
        if k == 0 || k + l + 1 > qq {
            return Err(inadmissible(format!("1 <= k <= q - l - 1 = {} violated (k = {k})", qq - l - 1)));
        }
        Ok(FamilyParams { family: Family::Q2MinusL, q, n: qq * qq - l, k, l: Some(l), m: None })
    }

    pub fn mq_minus_l(q: u32, m: usize, l: usize, k: usize) -> Result<Self> {
        let qq = q as usize;
        if m <= 1 || m >= qq {
            return Err(inadmissible(format!("1 < m < q violated (m = {m}, q = {q})")));
        }
        if l >= m {
            return Err(inadmissible(format!("0 <= l < m violated (l = {l}, m = {m})")));
        }
        if k == 0 || k + l > m {
            return Err(inadmissible(format!("1 <= k <= m - l = {} violated (k = {k})", m - l)));
        }
        Ok(FamilyParams { family: Family::MqMinusL, q, n: m * qq - l, k, l: Some(l), m: Some(m) })
    }

    pub fn at_most_q(q: u32, n: usize, k: usize) -> Result<Self> {
        if n < 2 || n > q as usize {
            return Err(inadmissible(format!("2 <= n <= q violated (n = {n}, q = {q})")));
        }
        if k == 0 || k > n / 2 {
            return Err(inadmissible(format!("1 <= k <= floor(n/2) = {} violated (k = {k})", n / 2)));
        }
        Ok(FamilyParams { family: Family::AtMostQ, q, n, k, l: None, m: None })
    }

    /// Every admissible parameter point for one `q`, in a fixed order.
    pub fn enumerate(q: u32) -> Vec<FamilyParams> {
        let qq = q as usize;
        let mut out = vec![Self::q2plus1(q)];
        for l in 0..=qq.saturating_sub(2) {
            for k in 1..qq - l {
                out.extend(Self::q2minus_l(q, l, k));
            }
        }
        for m in 2..qq {
            for l in 0..m {
                for k in 1..=m - l {
                    out.extend(Self::mq_minus_l(q, m, l, k));
                }
            }
        }
        for n in 2..=qq {
            for k in 1..=n / 2 {
                out.extend(Self::at_most_q(q, n, k));
            }
        }
        out
    }

    /// `[[n, n - 2k, k + 1]]_q`, with the distance marked as claimed.
    pub fn nominal_params(&self) -> QuantumParams {
        QuantumParams::new(self.q, self.n, self.n - 2 * self.k, self.k + 1, false, 1, self.to_string())
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Q2Plus1 => write!(f, "q2plus1"),
            Family::Q2MinusL => write!(f, "q2-l(l={},k={})", self.l.unwrap_or(0), self.k),
            Family::MqMinusL => write!(f, "mq-l(m={},l={},k={})", self.m.unwrap_or(0), self.l.unwrap_or(0), self.k),
            Family::AtMostQ => write!(f, "at-most-q(n={},k={})", self.n, self.k),
        }
    }
}

/// Output of a construction: the self-orthogonal code and, when it is
/// given in closed form, its Hermitian dual.
#[derive(Clone, Debug)]
pub struct Construction {
    pub params: FamilyParams,
    pub inner: GrsSpec,
    pub outer: Option<GrsSpec>,
}

pub fn construct(tower: &TowerCtx, params: &FamilyParams) -> Result<Construction> {
    if params.q != tower.q() {
        return Err(Error::FieldMismatch);
    }
    let (inner, outer) = match params.family {
        Family::Q2Plus1 => (construct_q2plus1(tower)?, None),
        Family::Q2MinusL => {
            let (i, o) = construct_q2minus_l(tower, params.l.unwrap_or(0), params.k)?;
            (i, Some(o))
        }
        Family::MqMinusL => {
            let (i, o) = construct_mq_minus_l(tower, params.m.unwrap_or(0), params.l.unwrap_or(0), params.k)?;
            (i, Some(o))
        }
        Family::AtMostQ => {
            let (i, o) = construct_at_most_q(tower, params.n, params.k)?;
            (i, Some(o))
        }
    };
    Ok(Construction { params: *params, inner, outer })
}

/// `Σ_i α_i^h / ∏_{j≠i} (α_i - α_j)`: zero for `h ≤ n - 2`, one for `h = n - 1`.
pub fn lagrange_power_sum(field: &FieldCtx, alpha: &[Elem], h: u64) -> Result<Elem> {
    if alpha.len() < 2 {
        return Err(Error::InvalidSpec("need at least two points".into()));
    }
    let mut terms = Vec::with_capacity(alpha.len());
    for (i, &a) in alpha.iter().enumerate() {
        let denom = field.product(alpha.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &b)| field.sub(a, b)));
        if denom.is_zero() {
            return Err(Error::DuplicatePoint);
        }
        terms.push(field.div(field.pow(a, h), denom));
    }
    Ok(field.sum(terms))
}

/// The extended code on all of GF(q²) with unit multipliers and `k = q`.
pub fn construct_q2plus1(tower: &TowerCtx) -> Result<GrsSpec> {
    let spec =
        GrsSpec::with_unit_multipliers(tower.ext().clone(), tower.enumerate_elements(), tower.q() as usize, Extension::Single)?;
    if !grs_code(&spec).is_hermitian_self_orthogonal(tower)? {
        return Err(Error::Internal("q²+1 construction is not self-orthogonal".into()));
    }
    Ok(spec)
}

/// `∏_{r ∈ removed} (x^q - r^q)`.
fn conjugate_vanishing(tower: &TowerCtx, x: Elem, removed: &[Elem]) -> Elem {
    let e = tower.ext();
    e.product(removed.iter().map(|&r| e.sub(tower.conj(x), tower.conj(r))))
}

/// Inner `GRS(α^q, v, k)` with `v_i = ∏ (α_i^q - α_j^q)` over the `l`
/// dropped points, outer `GRS(α, 1, n - k)`, `n = q² - l`.
pub fn construct_q2minus_l(tower: &TowerCtx, l: usize, k: usize) -> Result<(GrsSpec, GrsSpec)> {
    let p = FamilyParams::q2minus_l(tower.q(), l, k)?;
    let pts = tower.enumerate_elements();
    let (alpha, removed) = pts.split_at(p.n);
    let v: Vec<Elem> = alpha.iter().map(|&a| conjugate_vanishing(tower, a, removed)).collect();
    if v.iter().any(|x| x.is_zero()) {
        return Err(Error::Internal("vanishing multiplier in q²-l construction".into()));
    }
    let inner = GrsSpec::new(tower.ext().clone(), conjugate_points(alpha, tower)?, v, k, Extension::None)?;
    let outer = GrsSpec::with_unit_multipliers(tower.ext().clone(), alpha.to_vec(), p.n - k, Extension::None)?;
    check_dual_pair(tower, &inner, &outer)?;
    Ok((inner, outer))
}

/// `λ_i = ∏_{j≠i, j<mq} (α_i - α_j) / ζ^{m-1}` for the first `mq` points,
/// returned as base-field elements.
pub fn coset_lambdas(tower: &TowerCtx, m: usize) -> Result<Vec<Elem>> {
    let e = tower.ext();
    let q = tower.q() as usize;
    let pts = &tower.enumerate_elements()[..m * q];
    let zeta_pow = e.pow(tower.zeta(), m as u64 - 1);
    pts.iter()
        .enumerate()
        .map(|(i, &a)| {
            let full = e.product(pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &b)| e.sub(a, b)));
            let lambda = e.div(full, zeta_pow);
            match tower.project(lambda) {
                Some(x) if !x.is_zero() => Ok(x),
                _ => Err(Error::Internal(format!("lambda at point {i} is not in GF(q)*"))),
            }
        })
        .collect()
}

/// Inner `GRS(α^q, μ, k)`, outer `GRS(α, v, n - k)` on the first `n = mq - l`
/// points, with `v_i^{q+1} = λ_i^{-1}` and `μ_i = v_i ∏ (α_i^q - α_j^q)` over
/// the dropped points of the first `m` cosets.
pub fn construct_mq_minus_l(tower: &TowerCtx, m: usize, l: usize, k: usize) -> Result<(GrsSpec, GrsSpec)> {
    let p = FamilyParams::mq_minus_l(tower.q(), m, l, k)?;
    let e = tower.ext();
    let b = tower.base();
    let q = tower.q() as usize;
    let lambdas = coset_lambdas(tower, m)?;
    let pts = tower.enumerate_elements();
    let (alpha, removed) = pts[..m * q].split_at(p.n);
    let v: Vec<Elem> = lambdas[..p.n].iter().map(|&lam| tower.norm_root(b.inv(lam))).collect::<Result<_>>()?;
    let mu: Vec<Elem> = alpha.iter().zip(&v).map(|(&a, &vi)| e.mul(vi, conjugate_vanishing(tower, a, removed))).collect();
    let inner = GrsSpec::new(e.clone(), conjugate_points(alpha, tower)?, mu, k, Extension::None)?;
    let outer = GrsSpec::new(e.clone(), alpha.to_vec(), v, p.n - k, Extension::None)?;
    check_dual_pair(tower, &inner, &outer)?;
    Ok((inner, outer))
}

/// Base-field points `β_1..β_n` with `v_i^{q+1} = 1 / ∏_{j≠i} (β_i - β_j)`;
/// inner `GRS(β, v, k)`, outer `GRS(β, v, n - k)`.
pub fn construct_at_most_q(tower: &TowerCtx, n: usize, k: usize) -> Result<(GrsSpec, GrsSpec)> {
    FamilyParams::at_most_q(tower.q(), n, k)?;
    let b = tower.base();
    let betas = &tower.betas()[..n];
    let v: Vec<Elem> = betas
        .iter()
        .enumerate()
        .map(|(i, &bi)| {
            let prod = b.product(betas.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &bj)| b.sub(bi, bj)));
            tower.norm_root(b.inv(prod))
        })
        .collect::<Result<_>>()?;
    let alpha: Vec<Elem> = betas.iter().map(|&x| tower.embed(x)).collect();
    let inner = GrsSpec::new(tower.ext().clone(), alpha.clone(), v.clone(), k, Extension::None)?;
    let outer = GrsSpec::new(tower.ext().clone(), alpha, v, n - k, Extension::None)?;
    check_dual_pair(tower, &inner, &outer)?;
    Ok((inner, outer))
}

fn check_dual_pair(tower: &TowerCtx, inner: &GrsSpec, outer: &GrsSpec) -> Result<()> {
    if !hermitian_gram(&grs_generator(inner), &grs_generator(outer), tower)?.is_zero() {
        return Err(Error::Internal("constructed pair is not Hermitian-orthogonal".into()));
    }
    if !LinearCode::contains(&grs_code(outer), &grs_code(inner))? {
        return Err(Error::Internal("inner code is not contained in the outer code".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_counts() {
        // q = 3: q2plus1; q2-l: (0,1),(0,2),(1,1); mq-l: m=2 (0,1),(0,2),(1,1); at-most-q: (2,1),(3,1)
        assert_eq!(FamilyParams::enumerate(3).len(), 1 + 3 + 3 + 2);
        assert_eq!(FamilyParams::enumerate(2).len(), (1 + 1) + 1);
    }

    #[test]
    fn admissibility_errors_name_constraint() {
        let e = FamilyParams::q2minus_l(3, 1, 3).unwrap_err();
        assert!(e.to_string().contains("k <= q - l - 1 = 1"), "{e}");
        assert!(FamilyParams::q2minus_l(3, 2, 1).is_err());
        assert!(FamilyParams::mq_minus_l(3, 3, 0, 1).is_err());
        assert!(FamilyParams::mq_minus_l(4, 3, 3, 1).is_err());
        assert!(FamilyParams::mq_minus_l(4, 3, 1, 3).is_err());
        assert!(FamilyParams::at_most_q(3, 4, 1).is_err());
        assert!(FamilyParams::at_most_q(5, 5, 3).is_err());
    }

    #[test]
    fn nominal_params() {
        let p = FamilyParams::q2plus1(3).nominal_params();
        assert_eq!((p.n, p.kappa, p.d), (10, 4, 4));
        let p = FamilyParams::at_most_q(5, 4, 2).unwrap().nominal_params();
        assert_eq!((p.n, p.kappa, p.d), (4, 0, 3));
        let p = FamilyParams::q2minus_l(4, 1, 2).unwrap().nominal_params();
        assert_eq!((p.n, p.kappa, p.d), (15, 11, 3));
        assert!(p.mds);
    }

    #[test]
    fn lagrange_sum_small_cases() {
        let t = TowerCtx::for_q(3).unwrap();
        let e = t.ext();
        let pts = [Elem(3), Elem(7)];
        assert_eq!(lagrange_power_sum(e, &pts, 0).unwrap(), Elem::ZERO);
        assert_eq!(lagrange_power_sum(e, &pts, 1).unwrap(), Elem::ONE);
        assert_eq!(lagrange_power_sum(e, &[Elem(3), Elem(3)], 0).unwrap_err(), Error::DuplicatePoint);
    }

    #[test]
    fn lambdas_lie_in_base_field() {
        for q in [3, 4, 5] {
            let t = TowerCtx::for_q(q).unwrap();
            for m in 2..q as usize {
                assert_eq!(coset_lambdas(&t, m).unwrap().len(), m * q as usize);
            }
        }
    }

    #[test]
    fn every_family_point_builds() {
        for q in [2, 3, 4, 5] {
            let t = TowerCtx::for_q(q).unwrap();
            for p in FamilyParams::enumerate(q) {
                let c = construct(&t, &p).unwrap_or_else(|e| panic!("{p}: {e}"));
                assert_eq!(c.inner.len(), p.n);
                assert_eq!(c.inner.k(), p.k);
                let inner = grs_code(&c.inner);
                assert!(inner.is_hermitian_self_orthogonal(&t).unwrap(), "{p}");
                if let Some(outer) = &c.outer {
                    assert_eq!(grs_code(outer), inner.hermitian_dual(&t).unwrap(), "{p}");
                }
            }
        }
    }
}
