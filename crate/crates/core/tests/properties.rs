use std::sync::Arc;

use proptest::prelude::*;
use qgrs_core::fqlinalg::{FqMatrix, LinearCode};
use qgrs_core::galois::{Elem, FieldCtx, TowerCtx};

fn gf(p: u32, m: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(p, m).unwrap())
}

fn matrix(field: &Arc<FieldCtx>, k: usize, n: usize, entries: &[u32]) -> FqMatrix {
    let data = entries.iter().take(k * n).map(|&x| Elem(x % field.size())).collect();
    FqMatrix::new(field.clone(), k, n, data).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_involutive(k in 1usize..5, n in 1usize..9, entries in prop::collection::vec(0u32..1000, 40)) {
        let f = gf(3, 2);
        let c = LinearCode::from_generator(&matrix(&f, k, n, &entries));
        let d = c.dual();
        prop_assert_eq!(c.dim() + d.dim(), n);
        prop_assert_eq!(d.dual(), c.clone());
        let h = c.parity_check();
        prop_assert!(c.generator().mul(&h.transpose()).unwrap().is_zero());
    }

    #[test]
    fn hermitian_dual_is_involutive(q in prop::sample::select(vec![2u32, 3, 4]), k in 1usize..4, n in 1usize..8, entries in prop::collection::vec(0u32..1000, 32)) {
        let t = TowerCtx::for_q(q).unwrap();
        let c = LinearCode::from_generator(&matrix(t.ext(), k, n, &entries));
        let d = c.hermitian_dual(&t).unwrap();
        prop_assert_eq!(c.dim() + d.dim(), n);
        prop_assert_eq!(d.hermitian_dual(&t).unwrap(), c);
    }

    #[test]
    fn rank_is_transpose_invariant(k in 1usize..6, n in 1usize..6, entries in prop::collection::vec(0u32..1000, 36)) {
        let f = gf(2, 3);
        let m = matrix(&f, k, n, &entries);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let ker = m.kernel();
        prop_assert_eq!(ker.rows() + m.rank(), n);
        if ker.rows() > 0 {
            prop_assert!(m.mul(&ker.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn encoded_words_belong(k in 1usize..4, n in 4usize..8, entries in prop::collection::vec(0u32..1000, 32), msg in prop::collection::vec(0u32..16, 4)) {
        let f = gf(2, 4);
        let c = LinearCode::from_generator(&matrix(&f, k, n, &entries));
        let m: Vec<Elem> = msg.iter().take(c.dim()).map(|&x| Elem(x)).collect();
        prop_assert!(c.contains_word(&c.encode(&m)));
    }

    #[test]
    fn field_ops_agree_with_logs(p in prop::sample::select(vec![2u32, 3, 5, 7]), m in 1u32..4, a in 0u32..10_000, b in 0u32..10_000) {
        let f = gf(p, m);
        let (a, b) = (Elem(a % f.size()), Elem(b % f.size()));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b), b), a);
        }
        if !a.is_zero() && !b.is_zero() {
            let la = f.log(a).unwrap() as u64;
            let lb = f.log(b).unwrap() as u64;
            prop_assert_eq!(f.mul(a, b), f.exp(la + lb));
        }
    }
}
