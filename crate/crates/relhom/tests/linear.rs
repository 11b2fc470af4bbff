use proptest::prelude::*;
use relhom::exactlin::{FpMatrix, Subspace};

fn matrix(max: usize) -> impl Strategy<Value = FpMatrix> {
    (prop::sample::select(vec![2u32, 5, 7, 65521]), 0..=max, 0..=max).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0..p, r * c).prop_map(move |data| FpMatrix::from_vec(p, r, c, data).unwrap())
    })
}

proptest! {
    #[test]
    fn rank_plus_nullity(m in matrix(9)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn rref_is_idempotent(m in matrix(9)) {
        let r = m.rref();
        let rr = r.matrix.rref();
        prop_assert_eq!(&rr.matrix, &r.matrix);
        prop_assert_eq!(rr.pivots, r.pivots);
    }

    #[test]
    fn solve_recovers_consistent_systems(m in matrix(8), seed in any::<u64>()) {
        let p = m.p();
        let x: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 60)) as u32 ^ i as u32) % p).collect();
        let b = m.mul_vec(&x);
        let (y, k) = m.solve(&b).expect("consistent");
        prop_assert_eq!(m.mul_vec(&y), b);
        prop_assert_eq!(k.cols(), m.cols() - m.rank());
    }

    #[test]
    fn transpose_preserves_rank(m in matrix(9)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn span_dimension_is_rank(m in matrix(9)) {
        let s = Subspace::span(&m);
        prop_assert_eq!(s.dim(), m.rank());
        prop_assert!(s.contains_columns(&m));
    }
}
