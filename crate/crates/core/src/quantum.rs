//! Quantum code parameters from Hermitian self-orthogonal classical codes.
//!
//! A `[n, k]` code `C` over GF(q²) with `C ⊆ C^{⊥h}` yields an
//! `[[n, n - 2k, d]]_q` quantum code with `d = min wt(C^{⊥h} \ C)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fqlinalg::{distance_lower_bound, min_weight, min_weight_outside, LinearCode, Weight};
use crate::galois::TowerCtx;

/// Note attached to `[[n, 0, d]]` parameters.
pub const KAPPA_ZERO_CONVENTION: &str = "kappa = 0: d is the minimum nonzero weight of the self-dual code";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumParams {
    pub n: usize,
    pub kappa: usize,
    /// Exact distance when `d_exact`, otherwise the claimed value.
    pub d: usize,
    pub d_exact: bool,
    /// Distance proven by enumeration or column-independence certificates.
    pub d_lower_bound: usize,
    pub q: u32,
    pub mds: bool,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl QuantumParams {
    pub fn new(q: u32, n: usize, kappa: usize, d: usize, d_exact: bool, d_lower_bound: usize, provenance: impl Into<String>) -> Self {
        QuantumParams {
            n,
            kappa,
            d,
            d_exact,
            d_lower_bound,
            q,
            mds: singleton_status(n, kappa, d) == SingletonStatus::Mds,
            provenance: provenance.into(),
            convention: (kappa == 0).then(|| KAPPA_ZERO_CONVENTION.to_string()),
        }
    }

    pub fn singleton(&self) -> SingletonStatus {
        singleton_status(self.n, self.kappa, self.d)
    }

    /// `[[n,κ,d]]_q`, with a trailing `*` when the distance is only claimed.
    pub fn label(&self) -> String {
        format!("[[{},{},{}{}]]_{}", self.n, self.kappa, self.d, if self.d_exact { "" } else { "*" }, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SingletonStatus {
    Mds,
    BelowBound,
    ViolatesBound,
}

/// Compares `κ` against `n - 2(d - 1)`.
pub fn singleton_status(n: usize, kappa: usize, d: usize) -> SingletonStatus {
    let bound = n as i64 - 2 * (d as i64 - 1);
    match (kappa as i64).cmp(&bound) {
        std::cmp::Ordering::Equal => SingletonStatus::Mds,
        std::cmp::Ordering::Less => SingletonStatus::BelowBound,
        std::cmp::Ordering::Greater => SingletonStatus::ViolatesBound,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DistanceOptions {
    /// Codeword budget for exhaustive scans.
    pub budget: u64,
    /// Column-subset budget for the lower-bound certificate.
    pub subset_budget: u64,
}

impl DistanceOptions {
    pub fn with_budget(budget: u64) -> Self {
        DistanceOptions { budget, subset_budget: budget }
    }
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self::with_budget(crate::fqlinalg::DEFAULT_BUDGET)
    }
}

/// Quantum parameters of the Hermitian construction applied to `inner`.
///
/// The distance is exact when the scan fits the budget. Otherwise it is the
/// `claimed` value (typically `k + 1` for a GRS construction), backed by a
/// proven lower bound; without a claim the lower bound itself is reported.
pub fn hermitian_construction(
    inner: &LinearCode,
    tower: &TowerCtx,
    opts: DistanceOptions,
    claimed: Option<usize>,
    provenance: impl Into<String>,
) -> Result<QuantumParams> {
    if !inner.is_hermitian_self_orthogonal(tower)? {
        return Err(Error::NotSelfOrthogonal);
    }
    let n = inner.len();
    let k = inner.dim();
    let kappa = n - 2 * k;
    let q = tower.q();

    // For κ = 0 the difference set is empty; use the self-dual code's own weight.
    let (weight, certified) = if kappa == 0 {
        (min_weight(inner, opts.budget)?, inner.clone())
    } else {
        let outer = inner.hermitian_dual(tower)?;
        (min_weight_outside(&outer, inner, opts.budget)?, outer)
    };
    let params = match weight {
        Weight::Exact(d) => QuantumParams::new(q, n, kappa, d, true, d, provenance),
        Weight::Unknown => {
            let target = claimed.unwrap_or(n);
            let lb = distance_lower_bound(&certified, target, opts.subset_budget)?;
            if lb.exact && kappa == 0 {
                QuantumParams::new(q, n, kappa, lb.value, true, lb.value, provenance)
            } else {
                let d = claimed.map_or(lb.value, |c| c.max(lb.value));
                QuantumParams::new(q, n, kappa, d, false, lb.value, provenance)
            }
        }
    };
    if params.singleton() == SingletonStatus::ViolatesBound && params.d_exact {
        return Err(Error::Internal(format!("{} exceeds the quantum Singleton bound", params.label())));
    }
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_examples() {
        assert_eq!(singleton_status(5, 1, 3), SingletonStatus::Mds);
        assert_eq!(singleton_status(5, 1, 2), SingletonStatus::BelowBound);
        assert_eq!(singleton_status(5, 2, 3), SingletonStatus::ViolatesBound);
        assert_eq!(singleton_status(6, 0, 4), SingletonStatus::Mds);
    }

    #[test]
    fn labels() {
        let p = QuantumParams::new(2, 5, 1, 3, true, 3, "x");
        assert!(p.mds);
        assert_eq!(p.label(), "[[5,1,3]]_2");
        assert!(p.convention.is_none());
        let z = QuantumParams::new(4, 17, 9, 5, false, 5, "x");
        assert_eq!(z.label(), "[[17,9,5*]]_4");
        assert!(QuantumParams::new(2, 6, 0, 4, true, 4, "x").convention.is_some());
    }
}
