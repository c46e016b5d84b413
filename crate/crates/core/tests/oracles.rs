//! Library results against exhaustive enumeration on small random instances.

use std::collections::HashSet;
use std::sync::Arc;

use qgrs_core::fqlinalg::weight::hamming_weight;
use qgrs_core::fqlinalg::{min_weight, min_weight_outside, FqMatrix, LinearCode, Weight, DEFAULT_BUDGET};
use qgrs_core::galois::{Elem, FieldCtx, TowerCtx};
use qgrs_core::grs::{grs_code, grs_generator, Extension, GrsSpec};
use qgrs_core::puncture::{parent_spec, puncture_code};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_vectors(size: u32, n: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = (size as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let d = (idx % size as u64) as u32;
                idx /= size as u64;
                Elem(d)
            })
            .collect()
    })
}

/// Every `m·G` for the given rows, message by message.
fn span(field: &FieldCtx, rows: &[Vec<Elem>], n: usize) -> HashSet<Vec<Elem>> {
    all_vectors(field.size(), rows.len())
        .map(|msg| {
            let mut w = vec![Elem::ZERO; n];
            for (c, row) in msg.iter().zip(rows) {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(*c, y));
                }
            }
            w
        })
        .collect()
}

fn words(code: &LinearCode) -> HashSet<Vec<Elem>> {
    span(code.field(), &code.generator().row_vecs(), code.len())
}

fn random_rows(rng: &mut ChaCha8Rng, field: &FieldCtx, k: usize, n: usize) -> Vec<Vec<Elem>> {
    (0..k).map(|_| (0..n).map(|_| Elem(rng.random_range(0..field.size()))).collect()).collect()
}

fn random_code(rng: &mut ChaCha8Rng, field: &Arc<FieldCtx>, n: usize) -> (Vec<Vec<Elem>>, LinearCode) {
    let k = rng.random_range(1..n);
    let rows = random_rows(rng, field, k, n);
    let code = LinearCode::from_generator(&FqMatrix::from_rows(field.clone(), n, &rows).unwrap());
    (rows, code)
}

/// Largest length whose full space fits in about a million vectors.
fn max_len(size: u32) -> usize {
    match size {
        4 => 8,
        9 => 6,
        _ => 5,
    }
}

#[test]
fn row_space_matches_span() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for q in [2, 3, 4] {
        let t = TowerCtx::for_q(q).unwrap();
        for _ in 0..10 {
            let n = rng.random_range(2..=5);
            let (rows, code) = random_code(&mut rng, t.ext(), n);
            assert_eq!(words(&code), span(t.ext(), &rows, n));
        }
    }
}

#[test]
fn hermitian_dual_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for q in [2, 3, 4] {
        let t = TowerCtx::for_q(q).unwrap();
        let e = t.ext();
        for _ in 0..20 {
            let n = rng.random_range(2..=max_len(e.size()).min(6));
            let (rows, code) = random_code(&mut rng, e, n);
            let oracle: HashSet<Vec<Elem>> = all_vectors(e.size(), n)
                .filter(|x| {
                    rows.iter().all(|y| {
                        let s = x.iter().zip(y).fold(Elem::ZERO, |acc, (&a, &b)| e.add(acc, e.mul(a, e.pow(b, q as u64))));
                        s.is_zero()
                    })
                })
                .collect();
            let dual = code.hermitian_dual(&t).unwrap();
            assert_eq!(words(&dual), oracle, "q = {q}, n = {n}");
            assert_eq!(dual.dim() + code.dim(), n);
        }
    }
}

#[test]
fn euclidean_dual_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let f = Arc::new(FieldCtx::new(p, m).unwrap());
        for _ in 0..10 {
            let n = rng.random_range(2..=5);
            let (rows, code) = random_code(&mut rng, &f, n);
            let oracle: HashSet<Vec<Elem>> = all_vectors(f.size(), n)
                .filter(|x| rows.iter().all(|y| f.sum(x.iter().zip(y).map(|(&a, &b)| f.mul(a, b))).is_zero()))
                .collect();
            assert_eq!(words(&code.dual()), oracle);
        }
    }
}

#[test]
fn subfield_subcode_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for q in [2, 3, 4] {
        let t = TowerCtx::for_q(q).unwrap();
        for _ in 0..20 {
            let n = rng.random_range(2..=max_len(t.ext().size()).min(6));
            // Mix of random codes and codes with base-field generators.
            let (_, mut code) = random_code(&mut rng, t.ext(), n);
            if rng.random_bool(0.5) {
                let rows: Vec<Vec<Elem>> = random_rows(&mut rng, t.base(), code.dim(), n)
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| t.embed(x)).collect())
                    .collect();
                code = LinearCode::from_generator(&FqMatrix::from_rows(t.ext().clone(), n, &rows).unwrap());
            }
            let oracle: HashSet<Vec<Elem>> = words(&code)
                .into_iter()
                .filter(|w| w.iter().all(|&x| t.in_base(x)))
                .map(|w| w.into_iter().map(|x| t.project(x).unwrap()).collect())
                .collect();
            let sub = code.subfield_subcode(&t).unwrap();
            assert_eq!(**sub.field(), **t.base());
            assert_eq!(words(&sub), oracle, "q = {q}");
        }
    }
}

#[test]
fn min_weight_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, m) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 4)] {
        let f = Arc::new(FieldCtx::new(p, m).unwrap());
        for _ in 0..12 {
            let n = rng.random_range(2..=8);
            let k = rng.random_range(1..=3.min(n));
            let rows = random_rows(&mut rng, &f, k, n);
            let code = LinearCode::from_generator(&FqMatrix::from_rows(f.clone(), n, &rows).unwrap());
            if code.dim() == 0 {
                continue;
            }
            let oracle = words(&code).iter().map(|w| hamming_weight(w)).filter(|&w| w > 0).min().unwrap();
            assert_eq!(min_weight(&code, DEFAULT_BUDGET).unwrap(), Weight::Exact(oracle));
        }
    }
}

#[test]
fn min_weight_outside_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (p, m) in [(2, 1), (3, 1), (2, 2)] {
        let f = Arc::new(FieldCtx::new(p, m).unwrap());
        for _ in 0..15 {
            let n = rng.random_range(3..=7);
            let (_, outer) = random_code(&mut rng, &f, n);
            if outer.dim() < 2 {
                continue;
            }
            let keep = rng.random_range(0..outer.dim());
            let inner_rows: Vec<Vec<Elem>> = outer.generator().row_vecs().into_iter().take(keep).collect();
            let inner = if keep == 0 {
                LinearCode::zero(f.clone(), n)
            } else {
                LinearCode::from_generator(&FqMatrix::from_rows(f.clone(), n, &inner_rows).unwrap())
            };
            let inside = words(&inner);
            let oracle = words(&outer).iter().filter(|w| !inside.contains(*w)).map(|w| hamming_weight(w)).min().unwrap();
            assert_eq!(min_weight_outside(&outer, &inner, DEFAULT_BUDGET).unwrap(), Weight::Exact(oracle));
        }
    }
}

#[test]
fn grs_codewords_are_polynomial_evaluations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = TowerCtx::for_q(3).unwrap();
    let e = t.ext();
    for ext in [Extension::None, Extension::Single] {
        for _ in 0..10 {
            let n = rng.random_range(3..=8);
            let mut pts: Vec<Elem> = e.elements().collect();
            for i in 0..n {
                let j = rng.random_range(i..pts.len());
                pts.swap(i, j);
            }
            pts.truncate(n);
            let v: Vec<Elem> = (0..n).map(|_| Elem(rng.random_range(1..e.size()))).collect();
            let k = rng.random_range(1..=n);
            let spec = GrsSpec::new(e.clone(), pts.clone(), v.clone(), k, ext).unwrap();
            let code = grs_code(&spec);
            assert_eq!(code.dim(), k);
            let coeffs: Vec<Elem> = (0..k).map(|_| Elem(rng.random_range(0..e.size()))).collect();
            let w = spec.encode_polynomial(&coeffs);
            // Horner-free evaluation: Σ c_s α^s.
            for i in 0..n {
                let val = e.sum(coeffs.iter().enumerate().map(|(s, &c)| e.mul(c, e.pow(pts[i], s as u64))));
                assert_eq!(w[i], e.mul(v[i], val));
            }
            assert!(code.contains_word(&w));
            let g = grs_generator(&spec);
            let via_matrix: Vec<Elem> = (0..g.cols()).map(|c| e.sum((0..k).map(|r| e.mul(coeffs[r], g.get(r, c))))).collect();
            assert_eq!(w, via_matrix);
        }
    }
}

#[test]
fn puncture_code_matches_definition() {
    for (q, k) in [(2, 1), (2, 2), (2, 3), (3, 3)] {
        let t = TowerCtx::for_q(q).unwrap();
        let e = t.ext();
        let parent = parent_spec(&t, k).unwrap();
        let p = puncture_code(&parent, &t).unwrap();
        let codewords = words(&grs_code(&parent));
        let n = parent.len();
        if (q as u64).pow(n as u32) > 2_000_000 {
            continue;
        }
        // Orthogonal to c ⊙ d^q for every pair of codewords, not just generator pairs.
        let sample: Vec<&Vec<Elem>> = codewords.iter().take(40).collect();
        let oracle: HashSet<Vec<Elem>> = all_vectors(q, n)
            .filter(|w| {
                sample.iter().all(|c| {
                    sample.iter().all(|d| {
                        e.sum((0..n).map(|i| e.mul(t.embed(w[i]), e.mul(c[i], t.conj(d[i]))))).is_zero()
                    })
                })
            })
            .collect();
        let lib = words(&p.code);
        assert!(oracle.is_superset(&lib));
        assert_eq!(lib.len(), oracle.len(), "q = {q}, k = {k}");
        assert!(p.product_dim <= n.min(k * k));
    }
}
