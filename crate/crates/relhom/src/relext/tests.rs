use super::*;
use crate::algmod::{cokernel, injective_envelope, projective_cover, Module};
use crate::catclass::{Bounds, ClassKind, ClassOracle};
use crate::resolve::Style;
use crate::shipped::{a3, all, cyclic_quotient, kxx2, kxx3};

fn oracle(kind: ClassKind, m: &Module) -> ClassOracle {
    ClassOracle::new(kind, Bounds::for_algebra(m.algebra())).unwrap()
}

#[test]
fn projective_flavor_matches_absolute_ext() {
    for s in all() {
        let proj = oracle(ClassKind::Proj, s.c());
        let k = Module::residue_field(&s.algebra);
        let d = Module::regular(&s.algebra).dual();
        for (_, m) in &s.modules {
            for n in [&k, &d] {
                let expected = absolute_ext(m, n, 3);
                for style in [Style::Minimal, Style::Full] {
                    let t = relative_ext(m, n, &proj, 3, style).unwrap();
                    assert_eq!(t.dims(), expected, "{} {style:?}", s.name);
                }
            }
        }
    }
}

#[test]
fn injective_flavor_matches_absolute_ext() {
    let a = a3();
    let inj = oracle(ClassKind::Inj, &Module::regular(&a));
    let k = Module::residue_field(&a);
    let t = relative_ext_co(&k, &k, &inj, 3, Style::Minimal).unwrap();
    assert_eq!(t.dims(), vec![1, 2, 4, 8]);
    assert_eq!(t.dims(), absolute_ext(&k, &k, 3));
}

#[test]
fn cocycles_are_maps_out_of_the_resolution() {
    let a = kxx2();
    let k = Module::residue_field(&a);
    let t = relative_ext(&k, &k, &oracle(ClassKind::Proj, &k), 2, Style::Minimal).unwrap();
    for n in 0..=2 {
        let cs = t.cocycles(n);
        assert_eq!(cs.len(), 1);
        let (q, f) = &cs[0][0];
        assert_eq!(*q, n as i64);
        assert!(!f.is_zero());
    }
}

#[test]
fn pc_flavor_with_regular_parameter_is_absolute() {
    let a = kxx3();
    let reg = Module::regular(&a);
    let pc = oracle(ClassKind::ProjC(reg.clone()), &reg);
    let q = cyclic_quotient(&a, &[a.basis_vector(2)]);
    let k = Module::residue_field(&a);
    let t = relative_ext(&q, &k, &pc, 3, Style::Minimal).unwrap();
    assert_eq!(t.dims(), absolute_ext(&q, &k, 3));
    let kappa = comparison_kappa(&q, &k, &pc, 3, Style::Minimal).unwrap();
    assert!((0..=3).all(|n| kappa.is_bijective(n)));
}

#[test]
fn kappa_over_a3_with_dualizing_parameter() {
    let a = a3();
    let d = Module::regular(&a).dual();
    let k = Module::residue_field(&a);
    let pc = oracle(ClassKind::ProjC(d.clone()), &d);
    // D is its own P_D-resolution; absolute Ext(D, k) does not vanish.
    let kappa = comparison_kappa(&d, &k, &pc, 2, Style::Minimal).unwrap();
    assert_eq!(kappa.source_dims, vec![2, 0, 0]);
    assert_eq!(kappa.target_dims, absolute_ext(&d, &k, 2));
    assert!(kappa.is_bijective(0));
    // k has no proper P_D-resolution: the kernel of D ->> k is not
    // generated by maps from D.
    assert!(matches!(
        relative_ext(&k, &k, &pc, 1, Style::Minimal),
        Err(Error::ApproximationNotSurjective { stage: 1 })
    ));
    let gp = oracle(ClassKind::GProjC(d.clone()), &d);
    // Every module is in GP_D here, so only degree 0 survives.
    let t = relative_ext(&k, &k, &gp, 2, Style::Minimal).unwrap();
    assert_eq!(t.dims(), vec![1, 0, 0]);
    let theta = comparison_theta(&d, &k, &pc, &gp, 2, Style::Minimal).unwrap();
    assert!((0..=2).all(|n| theta.is_bijective(n)));
}

#[test]
fn theta_with_equal_classes_is_identity_up_to_iso() {
    let a = kxx2();
    let k = Module::residue_field(&a);
    let proj = oracle(ClassKind::Proj, &k);
    let theta = comparison_theta(&k, &k, &proj, &proj, 3, Style::Minimal).unwrap();
    assert!((0..=3).all(|n| theta.is_bijective(n)));
}

fn envelope_sequence(m: &Module) -> (ModMap, ModMap) {
    let e = injective_envelope(m);
    let (_, q, _) = cokernel(&e);
    (e, q)
}

fn cover_sequence(m: &Module) -> (ModMap, ModMap) {
    let c = projective_cover(m);
    let (_, inc) = kernel(&c);
    (inc, c)
}

#[test]
fn les_variants_are_exact() {
    let a = a3();
    let k = Module::residue_field(&a);
    let reg = Module::regular(&a);
    let d = reg.dual();
    let proj = oracle(ClassKind::Proj, &k);
    let inj = oracle(ClassKind::Inj, &k);
    let (f, g) = cover_sequence(&d);
    for (variant, o, probe) in [
        (LesVariant::Second, &proj, &reg),
        (LesVariant::First, &proj, &reg),
        (LesVariant::FirstCo, &inj, &d),
        (LesVariant::SecondCo, &inj, &d),
    ] {
        let r = les(variant, o, &f, &g, &k, 2, std::slice::from_ref(probe), Style::Minimal).unwrap();
        assert_eq!(r.slots.len(), 9);
        assert!(r.is_exact(), "{variant:?}: {:?}", r.exact);
    }
}

#[test]
fn connecting_maps_shift_dimension() {
    let a = a3();
    let k = Module::residue_field(&a);
    let reg = Module::regular(&a);
    let proj = oracle(ClassKind::Proj, &k);
    // 0 -> k -> D(A) -> D(A)/k -> 0 with injective middle.
    let (f, g) = envelope_sequence(&k);
    let r = les(LesVariant::Second, &proj, &f, &g, &k, 3, &[reg.clone()], Style::Minimal).unwrap();
    for n in 1..3 {
        assert!(r.connecting_is_bijective(n), "degree {n}");
    }
    // 0 -> m -> A -> k -> 0 with projective middle.
    let (f, g) = cover_sequence(&k);
    let r = les(LesVariant::First, &proj, &f, &g, &k, 3, &[reg], Style::Minimal).unwrap();
    assert!(r.is_exact());
    for n in 1..3 {
        assert!(r.connecting_is_bijective(n), "degree {n}");
    }
}

#[test]
fn les_rejects_non_proper_sequences() {
    let a = a3();
    let k = Module::residue_field(&a);
    let (f, g) = cover_sequence(&k);
    let ak = oracle(ClassKind::Proj, &k);
    // Hom(k, -) does not preserve the surjection A ->> k.
    let err = les(LesVariant::Second, &ak, &f, &g, &k, 1, &[k.clone()], Style::Minimal).unwrap_err();
    assert!(matches!(err, Error::Hypothesis(_)));
    let err = les(LesVariant::Second, &ak, &f, &g, &k, 1, &[], Style::Minimal).unwrap_err();
    assert_eq!(err, Error::EmptyProbes);
}

#[test]
fn detect_pd_examples() {
    let a = a3();
    let reg = Module::regular(&a);
    let k = Module::residue_field(&a);
    let proj = oracle(ClassKind::Proj, &k);
    let r = detect_pd(&reg.direct_sum(&reg), &proj, 3, &[k.clone()], Style::Minimal).unwrap();
    assert_eq!(r.value, Some(0));
    let r = detect_pd(&k, &proj, 2, &[k.clone()], Style::Minimal).unwrap();
    assert_eq!(r.value, None);
    assert_eq!(r.ext_dims, vec![vec![2], vec![4], vec![8]]);
    let d = reg.dual();
    let gp = oracle(ClassKind::GProjC(d.clone()), &d);
    let r = detect_pd(&k, &gp, 2, &[k.clone(), d], Style::Minimal).unwrap();
    assert_eq!(r.value, Some(0));
}

#[test]
fn classical_balance_over_a3() {
    let a = a3();
    let k = Module::residue_field(&a);
    let (proj, inj) = (oracle(ClassKind::Proj, &k), oracle(ClassKind::Inj, &k));
    let r = check_balance(&k, &k, &proj, &inj, 3, &[k.clone()], Style::Minimal).unwrap();
    assert_eq!(r.resolved, vec![1, 2, 4, 8]);
    assert!(r.balanced());
    // Orthogonality holds; finiteness does not.
    assert!(r.hypotheses[0].verdict.holds && r.hypotheses[1].verdict.holds);
    assert!(!r.hypotheses[2].verdict.holds);
}

#[test]
fn gorenstein_balance_over_a3_without_orthogonality() {
    let a = a3();
    let k = Module::residue_field(&a);
    let d = Module::regular(&a).dual();
    let gp = oracle(ClassKind::GProjC(d.clone()), &d);
    let gi = oracle(ClassKind::GInjC(d.clone()), &d);
    let r = check_balance(&k, &k, &gp, &gi, 2, &[k.clone()], Style::Minimal).unwrap();
    assert_eq!(r.resolved, vec![1, 0, 0]);
    assert!(r.balanced());
    // Ext^1(D, k) != 0, so P_D is not orthogonal to GI_D.
    assert!(!r.hypotheses[0].verdict.holds);
    assert!(!r.hypotheses_hold());
}
