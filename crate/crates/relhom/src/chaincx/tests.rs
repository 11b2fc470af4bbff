use super::*;
use crate::algmod::{find_isomorphism, kernel, projective_cover};
use crate::sample;
use crate::shipped::{a3, kxx2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mult_by_x() -> (Arc<Algebra>, Complex) {
    let a = kxx2();
    let r = Module::regular(&a);
    let x = r.action(1).into_owned();
    let c = Complex::new(&a, 0, vec![r.clone(), r], vec![x]).unwrap();
    (a, c)
}

/// 0 -> k -> A -> k -> 0 over F_5[x]/(x²), in degrees 2, 1, 0.
fn socle_sequence() -> (Arc<Algebra>, Complex) {
    let a = kxx2();
    let k = Module::residue_field(&a);
    let r = Module::regular(&a);
    let inc = ModMap::new(k.clone(), r.clone(), FpMatrix::from_rows(5, &[vec![0], vec![1]])).unwrap();
    let aug = ModMap::new(r, k, FpMatrix::from_rows(5, &[vec![1, 0]])).unwrap();
    (a, Complex::from_maps(&[inc, aug]).unwrap())
}

#[test]
fn zero_differentials_give_objects() {
    let a = a3();
    let k = Module::residue_field(&a);
    let r = Module::regular(&a);
    let c = Complex::new(&a, 3, vec![k.clone(), r.clone()], vec![FpMatrix::zeros(5, 1, 3)]).unwrap();
    assert_eq!(c.homology(3).dim(), 1);
    assert_eq!(c.homology(4).dim(), 3);
    assert_eq!(c.homology(5).dim(), 0);
}

#[test]
fn multiplication_by_x_homology() {
    let (a, c) = mult_by_x();
    let k = Module::residue_field(&a);
    for n in 0..=1 {
        assert_eq!(c.homology(n).dim(), 1);
        let (h, _, _) = homology_module(&c, n).unwrap();
        assert!(find_isomorphism(&h, &k, 10, 0).found());
    }
}

#[test]
fn cone_of_identity_is_exact() {
    let (_, c) = mult_by_x();
    let cn = cone(&ChainMap::identity(&c));
    cn.validate().unwrap();
    assert!(cn.is_exact());
    assert!(ChainMap::identity(&c).is_quasiiso());
}

#[test]
fn cone_of_map_from_zero_is_target() {
    let (a, c) = mult_by_x();
    let z = Complex::zero(&a);
    let cn = cone(&ChainMap::zero(&z, &c));
    for n in -1..=3 {
        assert_eq!(cn.dim(n), c.dim(n));
        assert_eq!(cn.differential(n), c.differential(n));
    }
    assert!(!ChainMap::zero(&z, &c).is_quasiiso());
}

#[test]
fn cone_block_signs() {
    let (_, c) = mult_by_x();
    let f = ChainMap::identity(&c);
    let cn = cone(&f);
    // Degree 2 -> 1: Y_2 ⊕ X_1 = 0 ⊕ A onto Y_1 ⊕ X_0 = A ⊕ A.
    let d = cn.differential(2);
    assert_eq!(d.block(0, 0, 2, 2), FpMatrix::identity(5, 2));
    assert_eq!(d.block(2, 0, 2, 2), c.differential(1).neg());
    let bad = cone_with_sign(&f, true);
    assert!(bad.validate().is_err());
}

#[test]
fn hom_complex_of_single_objects_is_hom() {
    let a = a3();
    let k = Module::residue_field(&a);
    let d = Module::regular(&a).dual();
    let hc = HomComplex::full(&Complex::single(&k, 0), &Complex::single(&d, 0)).unwrap();
    assert_eq!(hc.lo(), 0);
    assert_eq!(hc.hi(), 0);
    assert_eq!(hc.complex.dim(0), HomSpace::new(&k, &d).unwrap().dim());
}

#[test]
fn hom_complex_differential_sign() {
    // Hom(X, N)_0 -> Hom(X, N)_{-1} is α ↦ -(α ∘ ∂_1).
    let (a, c) = mult_by_x();
    let k = Module::residue_field(&a);
    let hc = HomComplex::full(&c, &Complex::single(&k, 0)).unwrap();
    assert_eq!((hc.lo(), hc.hi()), (-1, 0));
    let h0 = HomSpace::new(&c.object(0), &k).unwrap();
    let h1 = HomSpace::new(&c.object(1), &k).unwrap();
    let pre = h0.precompose(&c.differential(1), &h1);
    assert_eq!(hc.complex.differential(0), pre.neg());
    // Degree 1 of Hom(N, X) maps by ∂ ∘ α with no sign.
    let r = Module::regular(&a);
    let hc = HomComplex::full(&Complex::single(&r, 0), &c).unwrap();
    let s0 = HomSpace::new(&r, &c.object(0)).unwrap();
    let s1 = HomSpace::new(&r, &c.object(1)).unwrap();
    assert_eq!(hc.complex.differential(1), s1.postcompose(&c.differential(1), &s0));
}

#[test]
fn hom_complex_of_presentation_recovers_hom() {
    let a = a3();
    let k = Module::residue_field(&a);
    let cover = projective_cover(&k);
    let (_, inc) = kernel(&cover);
    let next = projective_cover(&inc.source);
    let d1 = inc.compose(&next);
    let p = Complex::from_maps(&[d1]).unwrap();
    for n in [k.clone(), Module::regular(&a), Module::regular(&a).dual()] {
        let hc = HomComplex::new(&p, &Complex::single(&n, 0), -2, 1, false).unwrap();
        hc.complex.validate().unwrap();
        assert_eq!(hc.complex.homology_dim(0), HomSpace::new(&k, &n).unwrap().dim());
    }
}

#[test]
fn socle_sequence_hom_exactness() {
    let (a, s) = socle_sequence();
    assert!(s.is_exact());
    let k = Module::residue_field(&a);
    let r = Module::regular(&a);
    assert!(!is_hom_exact(&s, &[k.clone()], Side::Covariant).unwrap());
    assert!(is_hom_exact(&s, &[r.clone()], Side::Covariant).unwrap());
    assert!(!is_hom_exact(&s, &[k.clone()], Side::Contravariant).unwrap());
    assert!(matches!(
        is_hom_exact(&s, &[], Side::Covariant),
        Err(Error::EmptyProbes)
    ));
}

#[test]
fn split_sequence_is_hom_exact() {
    let a = a3();
    let k = Module::residue_field(&a);
    let d = Module::regular(&a).dual();
    let (s, inc, proj) = crate::algmod::direct_sum(&k, &d);
    assert_eq!(s.dim(), 4);
    let c = Complex::from_maps(&[inc[0].clone(), proj[1].clone()]).unwrap();
    let probes = vec![k, d, Module::regular(&a)];
    assert!(is_hom_exact(&c, &probes, Side::Covariant).unwrap());
    assert!(is_hom_exact(&c, &probes, Side::Contravariant).unwrap());
}

#[test]
fn shift_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = a3();
    let x = sample::complex(&a, &mut rng, 3);
    let s0 = x.shift(0);
    for n in -1..=4 {
        assert_eq!(s0.differential(n), x.differential(n));
    }
    let back = x.shift(1).shift(-1);
    for n in -1..=4 {
        assert_eq!(back.differential(n), x.differential(n));
    }
    for i in [-2, 1, 3] {
        let s = x.shift(i);
        s.validate().unwrap();
        for n in -3..=7 {
            assert_eq!(s.homology_dim(n), x.homology_dim(n - i));
        }
    }
}

#[test]
fn null_homotopy_of_contractible_identity() {
    let (_, c) = mult_by_x();
    let cn = cone(&ChainMap::identity(&c));
    let id = ChainMap::identity(&cn);
    let (lo, s) = id.null_homotopy().expect("cone of identity is contractible");
    for (i, sn) in s.iter().enumerate() {
        let n = lo + i as i64;
        let lhs = cn.differential(n + 1).mul(sn);
        let prev = if i == 0 {
            FpMatrix::zeros(5, cn.dim(n), cn.dim(n - 1))
        } else {
            s[i - 1].clone()
        };
        let rhs = prev.mul(&cn.differential(n));
        assert_eq!(lhs.add(&rhs), FpMatrix::identity(5, cn.dim(n)));
    }
    assert!(ChainMap::identity(&c).null_homotopy().is_none());
}
