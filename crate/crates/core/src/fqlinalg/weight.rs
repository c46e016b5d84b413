//! Exhaustive codeword enumeration.
//!
//! Weights are invariant under nonzero scaling, so scans walk one
//! representative per projective class: the first nonzero coefficient among
//! the "lead" rows is fixed to one. Work is split into independent tasks by
//! message prefix and run on rayon; per-task results come back in task order
//! so callers can merge deterministically.

use std::ops::ControlFlow;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx};

use super::code::LinearCode;
use super::matrix::FqMatrix;

/// Default cap on the number of codewords an exhaustive scan may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weight {
    Exact(usize),
    /// The scan would exceed the budget.
    Unknown,
}

impl Weight {
    pub fn exact(self) -> Option<usize> {
        match self {
            Weight::Exact(w) => Some(w),
            Weight::Unknown => None,
        }
    }
}

/// `q^k`, or `None` on overflow.
pub fn word_count(q: u32, k: usize) -> Option<u64> {
    (q as u64).checked_pow(u32::try_from(k).ok()?)
}

pub fn within_budget(q: u32, k: usize, budget: u64) -> bool {
    word_count(q, k).is_some_and(|c| c <= budget)
}

#[inline]
pub fn hamming_weight(w: &[Elem]) -> usize {
    w.iter().filter(|x| !x.is_zero()).count()
}

struct Task {
    start: Vec<Elem>,
    rest: Vec<usize>,
}

/// Visits `Σ c_i lead_i + Σ d_j tail_j` over all coefficient vectors with
/// `c ≠ 0` and first nonzero `c_i = 1`. Returns one accumulator per task.
pub fn scan_projective<R, I, V>(field: &FieldCtx, lead: &[Vec<Elem>], tail: &[Vec<Elem>], init: I, visit: V) -> Vec<R>
where
    R: Send,
    I: Fn() -> R + Sync,
    V: Fn(&mut R, &[Elem]) -> ControlFlow<()> + Sync,
{
    let n = lead.first().or(tail.first()).map_or(0, Vec::len);
    let rows: Vec<&Vec<Elem>> = lead.iter().chain(tail).collect();
    // scaled[r][c] = c * rows[r]
    let scaled: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|row| field.elements().map(|c| row.iter().map(|&x| field.mul(c, x)).collect()).collect())
        .collect();

    let mut tasks = Vec::new();
    for j in 0..lead.len() {
        let rest: Vec<usize> = (j + 1..rows.len()).collect();
        match rest.split_first() {
            Some((&first, others)) => {
                for c in field.elements() {
                    let start = rows[j].iter().zip(&scaled[first][c.0 as usize]).map(|(&a, &b)| field.add(a, b)).collect();
                    tasks.push(Task { start, rest: others.to_vec() });
                }
            }
            None => tasks.push(Task { start: rows[j].clone(), rest }),
        }
    }

    tasks
        .par_iter()
        .map(|task| {
            let mut acc = init();
            let mut scratch = vec![vec![Elem::ZERO; n]; task.rest.len()];
            let _ = walk(field, &scaled, &task.rest, &task.start, &mut scratch, &mut acc, &visit);
            acc
        })
        .collect()
}

fn walk<R, V>(
    field: &FieldCtx,
    scaled: &[Vec<Vec<Elem>>],
    rest: &[usize],
    cur: &[Elem],
    scratch: &mut [Vec<Elem>],
    acc: &mut R,
    visit: &V,
) -> ControlFlow<()>
where
    V: Fn(&mut R, &[Elem]) -> ControlFlow<()>,
{
    let Some((&row, rest)) = rest.split_first() else {
        return visit(acc, cur);
    };
    let (buf, scratch) = scratch.split_first_mut().expect("one buffer per level");
    for mult in &scaled[row] {
        for ((b, &x), &y) in buf.iter_mut().zip(cur).zip(mult) {
            *b = field.add(x, y);
        }
        walk(field, scaled, rest, buf, scratch, acc, visit)?;
    }
    ControlFlow::Continue(())
}

/// Minimum nonzero weight by full message-space enumeration.
pub fn min_weight(code: &LinearCode, budget: u64) -> Result<Weight> {
    if code.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    if !within_budget(code.field().size(), code.dim(), budget) {
        return Ok(Weight::Unknown);
    }
    let rows = code.generator().row_vecs();
    Ok(Weight::Exact(scan_min(code.field(), &rows, &[])))
}

/// Minimum weight over `outer \ inner`. The outer basis is completed from
/// the inner one, so a word lies outside `inner` exactly when its
/// coefficients on the completing rows are not all zero.
pub fn min_weight_outside(outer: &LinearCode, inner: &LinearCode, budget: u64) -> Result<Weight> {
    if !LinearCode::contains(outer, inner)? {
        return Err(Error::NotContained);
    }
    if inner.dim() == outer.dim() {
        return Err(Error::EmptyDifference);
    }
    if !within_budget(outer.field().size(), outer.dim(), budget) {
        return Ok(Weight::Unknown);
    }
    let complement = complete_basis(outer, inner);
    let inner_rows = inner.generator().row_vecs();
    Ok(Weight::Exact(scan_min(outer.field(), &complement, &inner_rows)))
}

fn scan_min(field: &FieldCtx, lead: &[Vec<Elem>], tail: &[Vec<Elem>]) -> usize {
    scan_projective(
        field,
        lead,
        tail,
        || usize::MAX,
        |best, w| {
            let wt = hamming_weight(w);
            if wt < *best {
                *best = wt;
            }
            if *best <= 1 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    )
    .into_iter()
    .min()
    .expect("at least one task")
}

/// Rows of `outer`'s generator that extend a basis of `inner` to one of `outer`.
pub fn complete_basis(outer: &LinearCode, inner: &LinearCode) -> Vec<Vec<Elem>> {
    let mut span = inner.clone();
    let mut out = Vec::new();
    for row in outer.generator().row_vecs() {
        if !span.contains_word(&row) {
            let stacked = span
                .generator()
                .vstack(&FqMatrix::from_rows(outer.field().clone(), outer.len(), std::slice::from_ref(&row)).expect("same length"))
                .expect("same field");
            span = LinearCode::from_generator(&stacked);
            out.push(row);
        }
    }
    out
}

/// Result of a column-independence certificate on a parity-check matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceBound {
    /// Proven lower bound on the minimum distance.
    pub value: usize,
    /// True when a dependent column set was found, so `value` is the distance.
    pub exact: bool,
}

/// Certifies `d ≥ w + 1` by checking that every `w` columns of the parity-check
/// matrix are independent, for `w = 1, 2, …` until `target` is reached, a
/// dependency pins the distance, or `subset_budget` column sets were examined.
pub fn distance_lower_bound(code: &LinearCode, target: usize, subset_budget: u64) -> Result<DistanceBound> {
    if code.dim() == 0 {
        return Err(Error::ZeroCode);
    }
    let h = code.parity_check();
    let n = code.len();
    let mut bound = DistanceBound { value: 1, exact: false };
    let mut spent = 0u64;
    for w in 1..=n {
        if bound.value >= target {
            break;
        }
        let subsets = binomial(n as u64, w as u64);
        if subsets.is_none_or(|s| spent.saturating_add(s) > subset_budget) {
            break;
        }
        spent += subsets.unwrap();
        let dependent = (0..n).combinations(w).par_bridge().any(|cols| h.select_columns(&cols).rank() < w);
        if dependent {
            bound.exact = true;
            return Ok(bound);
        }
        bound.value = w + 1;
    }
    Ok(bound)
}

pub(crate) fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}
