//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Each criterion returns a short detail string on success and a witness on
//! failure. Panics are caught and reported as failures of that criterion.

mod common;

use rand::Rng;
use relhom::algmod::{injective_envelope, kernel, cokernel, projective_cover, Algebra, HomSpace, ModMap, Module};
use relhom::catclass::{ext_vanishing, in_auslander_class, in_bass_class, tor_vanishing, Bounds, ClassKind, ClassOracle};
use relhom::exactlin::FpMatrix;
use relhom::perfection::{is_perfect, perfect_dual};
use relhom::relext::{
    absolute_ext, check_balance, comparison_kappa, comparison_theta, detect_pd, les, relative_ext, relative_ext_co,
    LesVariant,
};
use relhom::resolve::{
    class_coresolution, class_resolution, horseshoe, horseshoe_co, injective_coresolution, lift, projective_resolution,
    roundtrip_homotopy, Direction, Horseshoe, Resolution, Style,
};
use relhom::sample;
use relhom::shipped::{self, Shipped};
use std::panic;
use std::sync::Arc;
use std::time::Instant;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T>(r: relhom::Result<T>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn oracle(kind: ClassKind, alg: &Algebra) -> Result<ClassOracle, String> {
    e(ClassOracle::with_defaults(kind, alg))
}

fn probes(s: &Shipped) -> Vec<(String, Module)> {
    s.modules.iter().map(|(n, m)| (n.to_string(), m.clone())).collect()
}

fn with_random(s: &Shipped, seed: u64, count: usize, max_dim: usize) -> Vec<(String, Module)> {
    let mut rng = common::rng(seed);
    let mut out = probes(s);
    for i in 0..count {
        let m = sample::module(&s.algebra, &mut rng, max_dim);
        if !m.is_zero() {
            out.push((format!("random{i}"), m));
        }
    }
    out
}

fn is_iso_between(f: &ModMap, m: &Module, n: &Module) -> bool {
    f.matrix.is_square() && f.matrix.inverse().is_some() && m.is_linear_map(n, &f.matrix)
}

// 1

fn functor_sanity() -> Outcome {
    let mut pairs = 0;
    for i in 0..4 {
        let alg = common::algebra(i);
        let proj = oracle(ClassKind::Proj, &alg)?;
        for case in 0..28u64 {
            let mut rng = common::rng(1000 * i as u64 + case);
            let m = sample::module(&alg, &mut rng, 4);
            let n = sample::module(&alg, &mut rng, 4);
            let hom = e(HomSpace::new(&m, &n))?.dim();
            let rel = e(relative_ext(&m, &n, &proj, 6, Style::Minimal))?.dims();
            let abs = absolute_ext(&m, &n, 6);
            ensure!(rel[0] == hom && abs[0] == hom, "algebra {i} case {case}: Ext^0 {} vs Hom {hom}", rel[0]);
            ensure!(rel == abs, "algebra {i} case {case}: relative {rel:?} vs absolute {abs:?}");
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, degrees 0..6"))
}

// 2

/// `dim Ext^n(k, k)` for `n <= top` from a free resolution built here by
/// taking every kernel basis vector (plus one redundant sum) as a
/// generator, then computing cocycles and coboundaries of `Hom(F, k)`.
fn cocycle_ext_kk(alg: &Arc<Algebra>, top: usize) -> Vec<usize> {
    let p = alg.p();
    let d = alg.dim();
    let aug: Vec<u32> = alg.augmentation().to_vec();
    let mut ranks = vec![1usize];
    let mut gens: Vec<Vec<Vec<u32>>> = Vec::new();
    let eps = FpMatrix::from_vec(p, 1, d, aug.clone()).unwrap();
    let mut syz = eps.kernel_basis();
    for n in 0..=top {
        let r = ranks[n];
        let mut g: Vec<Vec<u32>> = (0..syz.cols()).map(|c| syz.column(c)).collect();
        if g.len() >= 2 {
            let s = g[0].iter().zip(&g[1]).map(|(a, b)| (a + b) % p).collect();
            g.push(s);
        }
        let act: Vec<FpMatrix> = (0..d).map(|j| alg.left(j).repeat_diag(r)).collect();
        let cols: Vec<Vec<u32>> = g
            .iter()
            .flat_map(|gt| act.iter().map(move |a| a.mul_vec(gt)))
            .collect();
        let dmat = FpMatrix::from_columns(p, r * d, &cols);
        syz = dmat.kernel_basis();
        ranks.push(g.len());
        gens.push(g);
    }
    // δ^n : Hom(F_n, k) = k^{r_n} -> k^{r_{n+1}}, φ ↦ φ ∘ ∂.
    let deltas: Vec<FpMatrix> = (0..=top)
        .map(|n| {
            let (r, s) = (ranks[n], ranks[n + 1]);
            let mut m = FpMatrix::zeros(p, s, r);
            for (t, gt) in gens[n].iter().enumerate() {
                for tp in 0..r {
                    let v = (0..d).fold(0u64, |acc, j| acc + gt[tp * d + j] as u64 * aug[j] as u64);
                    m.set(t, tp, (v % p as u64) as u32);
                }
            }
            m
        })
        .collect();
    (0..=top)
        .map(|n| {
            let cocycles = ranks[n] - deltas[n].rank();
            let coboundaries = if n == 0 { 0 } else { deltas[n - 1].rank() };
            cocycles - coboundaries
        })
        .collect()
}

fn derived_fixtures() -> Outcome {
    let cases: [(Arc<Algebra>, usize, fn(usize) -> usize, &str); 2] = [
        (shipped::kxx2(), 6, |_| 1, "F_5[x]/(x^2)"),
        (shipped::a3(), 4, |n| 1 << n, "F_5[x,y]/(x^2,xy,y^2)"),
    ];
    for (alg, top, expect, name) in cases {
        let k = Module::residue_field(&alg);
        let want: Vec<usize> = (0..=top).map(expect).collect();
        let oracle_dims = cocycle_ext_kk(&alg, top);
        ensure!(oracle_dims == want, "{name}: cocycle oracle {oracle_dims:?}, expected {want:?}");
        let abs = absolute_ext(&k, &k, top);
        ensure!(abs == want, "{name}: engine {abs:?}, expected {want:?}");
        let proj = oracle(ClassKind::Proj, &alg)?;
        let rel = e(relative_ext(&k, &k, &proj, top, Style::Full))?.dims();
        ensure!(rel == want, "{name}: relative {rel:?}, expected {want:?}");
    }
    Ok("1^7 over kxx2, 2^n (n<=4) over a3, oracle and engine agree".into())
}

// 3

fn kinds(c: &Module) -> Vec<ClassKind> {
    vec![
        ClassKind::Proj,
        ClassKind::Inj,
        ClassKind::ProjC(c.clone()),
        ClassKind::InjC(c.clone()),
        ClassKind::GProjC(c.clone()),
        ClassKind::GInjC(c.clone()),
    ]
}

fn vanishing() -> Outcome {
    let (mut members, mut pd_checked, mut unresolvable) = (0, 0, 0);
    for (si, s) in shipped::all().iter().enumerate() {
        let ps: Vec<Module> = probes(s).into_iter().map(|(_, m)| m).collect();
        for kind in kinds(s.c()) {
            let o = oracle(kind.clone(), &s.algebra)?;
            let co = kind.is_injective_side();
            for (name, x) in probes(s) {
                if !e(o.contains(&x))?.holds {
                    continue;
                }
                members += 1;
                for p in &ps {
                    let dims = if co {
                        e(relative_ext_co(p, &x, &o, 6, Style::Minimal))?.dims()
                    } else {
                        e(relative_ext(&x, p, &o, 6, Style::Minimal))?.dims()
                    };
                    ensure!(
                        dims[1..].iter().all(|&d| d == 0),
                        "{} {} member {name}: dims {dims:?}",
                        s.name,
                        kind.tag()
                    );
                }
            }
            if co {
                continue;
            }
            for (name, m) in with_random(s, 30 + si as u64, 2, 4) {
                let Ok(r) = detect_pd(&m, &o, 6, &ps, Style::Minimal) else {
                    unresolvable += 1;
                    continue;
                };
                let Some(d) = r.value else { continue };
                for p in &ps {
                    let dims = e(relative_ext(&m, p, &o, 6, Style::Minimal))?.dims();
                    ensure!(
                        dims[d + 1..].iter().all(|&x| x == 0),
                        "{} {} {name}: pd {d} but dims {dims:?}",
                        s.name,
                        kind.tag()
                    );
                }
                pd_checked += 1;
            }
        }
    }
    Ok(format!(
        "{members} members, {pd_checked} finite pd cases, {unresolvable} without a proper resolution"
    ))
}

// 4

fn variant_setup(v: LesVariant, alg: &Arc<Algebra>) -> Result<(ClassOracle, Module), String> {
    let reg = Module::regular(alg);
    Ok(match v {
        LesVariant::Second | LesVariant::First => (oracle(ClassKind::Proj, alg)?, reg),
        LesVariant::FirstCo | LesVariant::SecondCo => (oracle(ClassKind::Inj, alg)?, reg.dual()),
    })
}

fn les_exactness() -> Outcome {
    let mut sequences = 0;
    let mut shifts = 0;
    for (vi, v) in LesVariant::ALL.into_iter().enumerate() {
        for i in 0..4 {
            let alg = common::algebra(i);
            let (o, probe) = variant_setup(v, &alg)?;
            for case in 0..5u64 {
                let mut rng = common::rng(4000 + 100 * vi as u64 + 10 * i as u64 + case);
                let (f, g) = sample::short_exact(&alg, &mut rng, 4);
                let fixed = sample::module(&alg, &mut rng, 4);
                let r = e(les(v, &o, &f, &g, &fixed, 6, &[probe.clone()], Style::Minimal))?;
                ensure!(r.slots.len() == 21, "{v:?}: {} slots", r.slots.len());
                ensure!(r.is_exact(), "{v:?} algebra {i} case {case}: exactness {:?}", r.exact);
                sequences += 1;
            }
            // Free middle term (cover) or injective middle term (envelope):
            // the connecting maps shift dimension in positive degrees.
            let mut rng = common::rng(4900 + 10 * vi as u64 + i as u64);
            let mods = [Module::residue_field(&alg), sample::module(&alg, &mut rng, 4)];
            for m in mods.iter().filter(|m| !m.is_zero()) {
                let (f, g) = match v {
                    LesVariant::First | LesVariant::FirstCo => {
                        let g = projective_cover(m);
                        (kernel(&g).1, g)
                    }
                    _ => {
                        let f = injective_envelope(m);
                        let g = cokernel(&f).1;
                        (f, g)
                    }
                };
                let fixed = sample::module(&alg, &mut rng, 4);
                let r = e(les(v, &o, &f, &g, &fixed, 6, &[probe.clone()], Style::Minimal))?;
                ensure!(r.is_exact(), "{v:?} shift sequence: exactness {:?}", r.exact);
                for n in 1..6 {
                    ensure!(r.connecting_is_bijective(n), "{v:?} algebra {i}: connecting map {n} not bijective");
                }
                shifts += 1;
            }
        }
    }
    Ok(format!("{sequences} sequences (20 per variant), {shifts} dimension shifts"))
}

// 5

fn check_horseshoe(h: &Horseshoe, f: &ModMap, g: &ModMap, left: &Resolution, right: &Resolution) -> Result<(), String> {
    let p = f.source.p();
    let co = h.middle.direction == Direction::Coresolution;
    ensure!(h.middle.is_exact(), "middle resolution not exact");
    ensure!(e(h.inclusion.validate()).is_ok(), "inclusion is not a chain map");
    ensure!(e(h.projection.validate()).is_ok(), "projection is not a chain map");
    let (i0, p0) = (h.inclusion.component(0), h.projection.component(0));
    let (al, am, ar) = (&left.augmentation.matrix, &h.middle.augmentation.matrix, &right.augmentation.matrix);
    let commutes = if co {
        i0.mul(al) == am.mul(&f.matrix) && p0.mul(am) == ar.mul(&g.matrix)
    } else {
        am.mul(&i0) == f.matrix.mul(al) && ar.mul(&p0) == g.matrix.mul(am)
    };
    ensure!(commutes, "augmentation squares do not commute");
    for n in 0..=h.middle.length {
        let deg = if co { -(n as i64) } else { n as i64 };
        let (i, pr) = (h.inclusion.component(deg), h.projection.component(deg));
        let (s, r) = (&h.sections[n], &h.retractions[n]);
        let x = h.middle.object(n);
        ensure!(x.is_linear_map(&h.projection.target.object(deg), &pr), "degree {n}: projection not linear");
        ensure!(h.inclusion.source.object(deg).is_linear_map(&x, &i), "degree {n}: inclusion not linear");
        ensure!(pr.mul(&i).is_zero(), "degree {n}: row is not a complex");
        ensure!(pr.mul(s).is_identity(), "degree {n}: section fails");
        ensure!(r.mul(&i).is_identity(), "degree {n}: retraction fails");
        let s2 = s.sub(&i.mul(&r.mul(s)));
        let total = i.mul(r).add(&s2.mul(&pr));
        ensure!(total == FpMatrix::identity(p, x.dim()), "degree {n}: row does not split");
    }
    ensure!(h.report.ok(), "engine report {:?}", h.report);
    Ok(())
}

fn horseshoes() -> Outcome {
    let mut built = 0;
    for i in 0..4 {
        let alg = common::algebra(i);
        for case in 0..6u64 {
            let mut rng = common::rng(5000 + 10 * i as u64 + case);
            let (f, g) = sample::short_exact(&alg, &mut rng, 5);
            let (left, right) = (projective_resolution(&f.source, 5), projective_resolution(&g.target, 5));
            let h = e(horseshoe(&f, &g, &left, &right))?;
            check_horseshoe(&h, &f, &g, &left, &right).map_err(|w| format!("algebra {i} case {case}: {w}"))?;
            let (left, right) = (injective_coresolution(&f.source, 5), injective_coresolution(&g.target, 5));
            let h = e(horseshoe_co(&f, &g, &left, &right))?;
            check_horseshoe(&h, &f, &g, &left, &right).map_err(|w| format!("algebra {i} case {case} (co): {w}"))?;
            built += 2;
        }
    }
    Ok(format!("{built} horseshoes, degrees 0..5"))
}

// 6

fn all_bijective(c: &relhom::relext::Comparison, max: usize) -> Option<usize> {
    (0..=max).find(|&n| !c.is_bijective(n))
}

fn comparison_maps() -> Outcome {
    let (mut thetas, mut kappas) = (0, 0);
    for (si, s) in shipped::all().iter().enumerate() {
        let c = s.c();
        let ps: Vec<Module> = probes(s).into_iter().map(|(_, m)| m).collect();
        let x = oracle(ClassKind::GProjC(c.clone()), &s.algebra)?;
        let pc = oracle(ClassKind::ProjC(c.clone()), &s.algebra)?;
        let proj = oracle(ClassKind::Proj, &s.algebra)?;
        let candidates = with_random(s, 60 + si as u64, 2, 4);
        let finite = |m: &Module, w: &ClassOracle| {
            detect_pd(m, w, 4, &ps, Style::Minimal).ok().and_then(|r| r.value).is_some()
        };
        for w in [&proj, &pc] {
            for (name, m) in &candidates {
                if !finite(m, w) {
                    continue;
                }
                for n in &ps {
                    let t = e(comparison_theta(m, n, w, &x, 6, Style::Minimal))?;
                    if let Some(d) = all_bijective(&t, 6) {
                        return Err(format!("{} theta {} {name}: degree {d} not bijective", s.name, w.kind.tag()));
                    }
                    thetas += 1;
                }
            }
        }
        let targets: Vec<&Module> = candidates.iter().map(|(_, m)| m).filter(|m| finite(m, &pc)).collect();
        for (name, m) in &candidates {
            if class_resolution(m, &x, 7, Style::Minimal).is_err() {
                continue;
            }
            for n in &targets {
                let k = e(comparison_kappa(m, n, &x, 6, Style::Minimal))?;
                if let Some(d) = all_bijective(&k, 6) {
                    return Err(format!("{} kappa {name}: degree {d} not bijective", s.name));
                }
                kappas += 1;
            }
        }
    }
    // k has infinite P_D-dimension over a3, so the pair is outside the
    // hypotheses and the comparison must fail somewhere.
    let s = shipped::shipped_a3();
    let k = Module::residue_field(&s.algebra);
    let pd = oracle(ClassKind::ProjC(s.c().clone()), &s.algebra)?;
    let ps: Vec<Module> = probes(&s).into_iter().map(|(_, m)| m).collect();
    let outside = detect_pd(&k, &pd, 6, &ps, Style::Minimal).map_or(true, |r| r.value.is_none());
    ensure!(outside, "k unexpectedly has finite P_D-dimension over a3");
    let x = oracle(ClassKind::GProjC(s.c().clone()), &s.algebra)?;
    let kappa = e(comparison_kappa(&k, &k, &x, 6, Style::Minimal))?;
    let bad = all_bijective(&kappa, 6);
    ensure!(bad.is_some(), "kappa for (GP_D, k, k) over a3 is bijective in 0..6");
    Ok(format!(
        "{thetas} theta and {kappas} kappa cases bijective, (GP_D,k,k) fails in degree {}",
        bad.unwrap()
    ))
}

// 7

fn balance() -> Outcome {
    let mut cases = 0;
    let mut run = |alg: &Arc<Algebra>, x: &ClassOracle, y: &ClassOracle, mods: &[(String, Module)], tag: &str| {
        for (a, m) in mods {
            for (b, n) in mods {
                let r = e(check_balance(m, n, x, y, 6, &[], Style::Minimal))?;
                ensure!(r.resolved.len() == 7, "{tag} ({a}, {b}): {} degrees", r.resolved.len());
                ensure!(
                    r.balanced(),
                    "{tag} ({a}, {b}): resolved {:?} coresolved {:?} quasi-isos {} {}",
                    r.resolved,
                    r.coresolved,
                    r.left_quasiiso,
                    r.right_quasiiso
                );
                if matches!(x.kind, ClassKind::Proj) {
                    ensure!(r.resolved == absolute_ext(m, n, 6), "{tag} ({a}, {b}): differs from absolute Ext");
                }
                cases += 1;
            }
        }
        let _ = alg;
        Ok::<(), String>(())
    };
    for (si, s) in shipped::all().iter().enumerate() {
        let mods = with_random(s, 70 + si as u64, 1, 3);
        let proj = oracle(ClassKind::Proj, &s.algebra)?;
        let inj = oracle(ClassKind::Inj, &s.algebra)?;
        run(&s.algebra, &proj, &inj, &mods, &format!("{} proj/inj", s.name))?;
    }
    for s in [shipped::shipped_a4(), shipped::shipped_a3()] {
        let mods = with_random(&s, 80, 1, 3);
        let gp = oracle(ClassKind::GProjC(s.c().clone()), &s.algebra)?;
        let gi = oracle(ClassKind::GInjC(s.c().clone()), &s.algebra)?;
        run(&s.algebra, &gp, &gi, &mods, &format!("{} gp/gi", s.name))?;
    }
    Ok(format!("{cases} pairs balanced in degrees 0..6"))
}

// 8

fn perfection() -> Outcome {
    let mut perfect = 0;
    let mut determined = 0;
    for (si, s) in shipped::all().iter().enumerate() {
        let c = s.c();
        let b = Bounds::for_algebra(&s.algebra).with_bound(4);
        // Over the self-injective algebras every module is perfect of grade 0.
        let extra = if matches!(s.name, "kxx2" | "a4") { 3 } else { 0 };
        let mut mods = with_random(s, 90 + si as u64, extra, 5);
        for (name, m) in &mods {
            let pd = perfect_dual(m, c, b).map_err(|err| format!("{} {name}: {err}", s.name))?;
            ensure!(pd.holds(), "{} {name}: duality fails ({:?})", s.name, pd.dual_report.grade);
            let iso = pd.iso.map().ok_or(format!("{} {name}: no isomorphism", s.name))?;
            ensure!(is_iso_between(iso, &pd.double, m), "{} {name}: map is not an isomorphism", s.name);
            perfect += 1;
        }
        mods.extend(with_random(s, 95 + si as u64, 3, 5).into_iter().skip(s.modules.len()));
        for (name, m) in &mods {
            let r = is_perfect(m, c, b);
            if let Some(ok) = r.grade_bounded_by_gc_dim() {
                ensure!(ok, "{} {name}: grade {:?} above GP_C-dimension {:?}", s.name, r.grade, r.gc_dim.value);
                determined += 1;
            }
        }
    }
    ensure!(perfect >= 10, "only {perfect} perfect modules");
    Ok(format!("{perfect} perfect modules reflexive, grade <= gcdim in {determined} determined cases"))
}

// 9

fn coherence() -> Outcome {
    let (mut members, mut sequences, mut perps, mut outside) = (0, 0, 0, 0);
    for (si, s) in shipped::all().iter().enumerate() {
        let alg = &s.algebra;
        let c = s.c();
        let b = Bounds::for_algebra(alg).with_bound(4);
        let d = Module::regular(alg).dual();
        let hom_cd = e(HomSpace::new(c, &d))?.module();
        let gp = oracle(ClassKind::GProjC(c.clone()), alg)?;
        let gi = oracle(ClassKind::GInjC(c.clone()), alg)?;
        let lower = [
            (oracle(ClassKind::Proj, alg)?, &gp),
            (oracle(ClassKind::ProjC(c.clone()), alg)?, &gp),
            (oracle(ClassKind::Inj, alg)?, &gi),
            (oracle(ClassKind::InjC(c.clone()), alg)?, &gi),
        ];
        let mut mods = with_random(s, 100 + si as u64, 3, 4);
        for (name, m) in [
            ("A^2", Module::free(alg, 2)),
            ("C^2", c.power(2)),
            ("D^2", d.power(2)),
            ("Hom(C,D)", hom_cd.clone()),
        ] {
            mods.push((name.into(), m));
        }
        for (small, big) in &lower {
            for (name, m) in &mods {
                if e(small.contains(m))?.holds {
                    ensure!(
                        e(big.contains(m))?.holds,
                        "{} {name}: in {} but not in {}",
                        s.name,
                        small.kind.tag(),
                        big.kind.tag()
                    );
                    members += 1;
                }
            }
        }

        let mut rng = common::rng(110 + si as u64);
        let mut seqs: Vec<(ModMap, ModMap)> = (0..4).map(|_| sample::short_exact(alg, &mut rng, 4)).collect();
        for m in [Module::residue_field(alg), c.clone()] {
            let g = projective_cover(&m);
            seqs.push((kernel(&g).1, g));
            let f = injective_envelope(&m);
            let g = cokernel(&f).1;
            seqs.push((f, g));
        }
        for (f, g) in &seqs {
            let terms = [&f.source, &f.target, &g.target];
            for (class, test) in [
                ("Auslander", in_auslander_class as fn(&Module, &Module, Bounds) -> _),
                ("Bass", in_bass_class),
            ] {
                let inside: Vec<bool> = terms.iter().map(|m| test(m, c, b).holds).collect();
                let count = inside.iter().filter(|&&x| x).count();
                ensure!(count != 2, "{} {class} class: two of three but not all ({inside:?})", s.name);
            }
            sequences += 1;
        }

        // P_B ⊥ I_B' when Tor_{>=1}(B, B') = 0, for B, B' among A and C.
        let reg = Module::regular(alg);
        for (bn, bm) in [("A", &reg), ("C", c)] {
            for (cn, cm) in [("A", &reg), ("C", c)] {
                let hom_bd = e(HomSpace::new(cm, &d))?.module();
                let tor = tor_vanishing(bm, cm, b);
                for _ in 0..2 {
                    let (r, t) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
                    let v = ext_vanishing(&bm.power(r), &hom_bd.power(t), b);
                    if tor.holds {
                        ensure!(v.holds, "{} Ext(P_{bn}, I_{cn}) nonzero: {v}", s.name);
                        perps += 1;
                    } else if !v.holds {
                        outside += 1;
                    }
                }
            }
        }
    }
    ensure!(sequences >= 20, "only {sequences} sequences");
    Ok(format!(
        "{members} inclusions confirmed, {sequences} sequences two-of-three, {perps} P_B/I_B' pairs orthogonal, \
         {outside} nonorthogonal pairs all with Tor(B, B') != 0"
    ))
}

// 10

/// Recomputes both lifts and checks `g f - 1 = ∂ s + s ∂` degreewise with
/// A-linear `s`.
fn verify_homotopy(res: &Resolution, res2: &Resolution, len: usize, s: &[FpMatrix]) -> Result<(), String> {
    let id = ModMap::identity(&res.module);
    let f = e(lift(&id, res, res2))?;
    let g = e(lift(&id, res2, res))?;
    let x = &res.complex;
    ensure!(s.len() == len + 1, "{} homotopy components for length {len}", s.len());
    let co = res.direction == Direction::Coresolution;
    for n in 0..=len {
        // In complex degrees, s[n] runs from degree a to degree a + 1.
        let (d, a) = if co { (-(n as i64), -(n as i64) - 1) } else { (n as i64, n as i64) };
        ensure!(x.object(a).is_linear_map(&x.object(a + 1), &s[n]), "s_{n} is not A-linear");
        let lhs = g.component(d).mul(&f.component(d)).sub(&FpMatrix::identity(x.p(), x.dim(d)));
        let rhs = match (co, n) {
            (false, 0) => x.differential(1).mul(&s[0]),
            (false, _) => x.differential(d + 1).mul(&s[n]).add(&s[n - 1].mul(&x.differential(d))),
            (true, 0) => s[0].mul(&x.differential(0)),
            (true, _) => x.differential(d + 1).mul(&s[n - 1]).add(&s[n].mul(&x.differential(d))),
        };
        ensure!(lhs == rhs, "homotopy equation fails in degree {d}");
    }
    Ok(())
}

fn homotopy_invariance() -> Outcome {
    let mut cases = 0;
    for i in 0..4 {
        let alg = common::algebra(i);
        let s = &shipped::all()[i];
        let c = s.c();
        let choices = [
            oracle(ClassKind::Proj, &alg)?,
            oracle(ClassKind::GProjC(c.clone()), &alg)?,
            oracle(ClassKind::Inj, &alg)?,
            oracle(ClassKind::GInjC(c.clone()), &alg)?,
        ];
        for case in 0..13u64 {
            let mut rng = common::rng(10_000 + 100 * i as u64 + case);
            let m = sample::module(&alg, &mut rng, 5);
            let n = sample::module(&alg, &mut rng, 5);
            let o = &choices[case as usize % 4];
            let co = o.kind.is_injective_side();
            let tag = format!("algebra {i} case {case} {}", o.kind.tag());
            let ext = |style| {
                if co {
                    relative_ext_co(&m, &n, o, 3, style)
                } else {
                    relative_ext(&m, &n, o, 3, style)
                }
            };
            let (a, b) = (e(ext(Style::Minimal))?.dims(), e(ext(Style::Full))?.dims());
            ensure!(a == b, "{tag}: minimal {a:?} vs full {b:?}");
            let (r1, r2) = if co {
                (
                    e(class_coresolution(&n, o, 4, Style::Minimal))?,
                    e(class_coresolution(&n, o, 4, Style::Full))?,
                )
            } else {
                (
                    e(class_resolution(&m, o, 4, Style::Minimal))?,
                    e(class_resolution(&m, o, 4, Style::Full))?,
                )
            };
            let h = e(roundtrip_homotopy(&r1, &r2, 3))?.ok_or(format!("{tag}: no null-homotopy"))?;
            verify_homotopy(&r1, &r2, 3, &h).map_err(|w| format!("{tag}: {w}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, Minimal and Full agree in degrees 0..3, round trips null-homotopic"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("functor sanity", functor_sanity),
        ("derived dimension fixtures", derived_fixtures),
        ("vanishing", vanishing),
        ("long exact sequences", les_exactness),
        ("horseshoe", horseshoes),
        ("comparison maps", comparison_maps),
        ("balance", balance),
        ("perfection duality", perfection),
        ("class coherence", coherence),
        ("homotopy invariance", homotopy_invariance),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        let over = secs > 60.0;
        let (status, detail) = match &outcome {
            Ok(d) if !over => ("pass", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; took longer than 60 s")),
            Err(w) => ("FAIL", w.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2}  {status}  {name:<27} {secs:>6.1}s  {detail}", i + 1);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria pass", criteria.len());
}
