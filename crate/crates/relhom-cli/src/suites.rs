//! Seeded property suites. Every case draws from its own generator, seeded
//! from the run seed, the property name and the case index, so results do
//! not depend on scheduling. Failures are retried at smaller module sizes
//! and reported at the smallest size that still fails.

use crate::workspace::Workspace;
use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use relhom::algmod::{tensor_module, Algebra, HomSpace, Module};
use relhom::catclass::{Bounds, ClassKind, ClassOracle};
use relhom::chaincx::{cone_with_sign, ChainMap};
use relhom::perfection::{is_perfect, perfect_dual};
use relhom::relext::{absolute_ext, absolute_tor, check_balance, les, relative_ext, relative_ext_co, LesVariant};
use relhom::resolve::{class_resolution, horseshoe, projective_resolution, roundtrip_homotopy, Style};
use relhom::sample;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Complexes,
    Functors,
    Resolutions,
    Relext,
    Perfection,
    Balance,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Complexes => "complexes",
            Suite::Functors => "functors",
            Suite::Resolutions => "resolutions",
            Suite::Relext => "relext",
            Suite::Perfection => "perfection",
            Suite::Balance => "balance",
            Suite::All => "all",
        }
    }
}

/// Deliberate defects for checking that the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mutation {
    /// Wrong sign on the lower block of the cone differential.
    ConeSign,
}

/// Inputs for one case.
struct Case {
    alg: Arc<Algebra>,
    alg_name: String,
    /// The parameter `C`: the module named `C`, else `A`.
    c: Module,
    rng: ChaCha8Rng,
    max_dim: usize,
    depth: usize,
    index: usize,
    mutation: Option<Mutation>,
}

impl Case {
    fn module(&mut self) -> Module {
        sample::module(&self.alg, &mut self.rng, self.max_dim)
    }
    fn oracle(&self, kind: ClassKind) -> Result<ClassOracle, String> {
        ClassOracle::new(kind, Bounds::for_algebra(&self.alg)).map_err(|e| e.to_string())
    }
}

type Check = fn(&mut Case) -> Result<(), String>;

struct Property {
    suite: Suite,
    name: &'static str,
    check: Check,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const PROPERTIES: &[Property] = &[
    Property { suite: Suite::Complexes, name: "euler characteristic of homology", check: euler },
    Property { suite: Suite::Complexes, name: "cone of the identity is exact", check: cone_identity },
    Property { suite: Suite::Complexes, name: "cone detects quasi-isomorphisms", check: cone_quasiiso },
    Property { suite: Suite::Functors, name: "Ext^0 is Hom", check: ext_zero },
    Property { suite: Suite::Functors, name: "Tor_0 is the tensor product", check: tor_zero },
    Property { suite: Suite::Functors, name: "duality is involutive", check: double_dual },
    Property { suite: Suite::Functors, name: "duality reverses Hom", check: hom_dual },
    Property { suite: Suite::Resolutions, name: "projective resolutions are exact", check: resolution_exact },
    Property { suite: Suite::Resolutions, name: "two constructions give the same Ext", check: constructions_agree },
    Property { suite: Suite::Resolutions, name: "horseshoe rows split", check: horseshoe_splits },
    Property { suite: Suite::Resolutions, name: "comparison lifts are homotopy inverse", check: lifts_invert },
    Property { suite: Suite::Relext, name: "projective flavor is absolute", check: projective_flavor },
    Property { suite: Suite::Relext, name: "injective flavor is absolute", check: injective_flavor },
    Property { suite: Suite::Relext, name: "class members have no higher Ext", check: members_vanish },
    Property { suite: Suite::Relext, name: "long exact sequences are exact", check: les_exact },
    Property { suite: Suite::Perfection, name: "grade is at most the GP_C-dimension", check: grade_bound },
    Property { suite: Suite::Perfection, name: "perfect modules are reflexive", check: perfect_reflexive },
    Property { suite: Suite::Balance, name: "classical balance", check: classical_balance },
    Property { suite: Suite::Balance, name: "Gorenstein balance", check: gorenstein_balance },
];

fn euler(c: &mut Case) -> Result<(), String> {
    let x = sample::complex(&c.alg, &mut c.rng, 3);
    let h: i64 = (x.lo()..=x.hi())
        .map(|n| if n % 2 == 0 { 1 } else { -1 } * x.homology_dim(n) as i64)
        .sum();
    expect(h == x.euler_characteristic(), || {
        format!("homology gives {h}, terms give {}", x.euler_characteristic())
    })
}

fn cone_identity(c: &mut Case) -> Result<(), String> {
    let x = sample::complex(&c.alg, &mut c.rng, 3);
    let cone = cone_with_sign(&ChainMap::identity(&x), c.mutation == Some(Mutation::ConeSign));
    cone.validate().map_err(|e| format!("cone of the identity is not a complex: {e}"))?;
    expect(cone.is_exact(), || "cone of the identity has homology".into())
}

fn cone_quasiiso(c: &mut Case) -> Result<(), String> {
    let x = sample::complex(&c.alg, &mut c.rng, 3);
    let f = sample::scalar_chain_map(&x, &mut c.rng);
    let cone = cone_with_sign(&f, c.mutation == Some(Mutation::ConeSign));
    cone.validate().map_err(|e| format!("cone is not a complex: {e}"))?;
    let on_homology = (x.lo()..=x.hi()).all(|n| {
        let h = x.homology(n);
        f.induced(n, &h, &h).rank() == h.dim()
    });
    expect(cone.is_exact() == on_homology, || {
        format!("cone exact: {}, induced maps invertible: {on_homology}", cone.is_exact())
    })
}

fn ext_zero(c: &mut Case) -> Result<(), String> {
    let (m, n) = (c.module(), c.module());
    let e = absolute_ext(&m, &n, 0)[0];
    let h = HomSpace::new(&m, &n).map_err(err)?.dim();
    expect(e == h, || format!("dim Ext^0 = {e}, dim Hom = {h} (dims {}, {})", m.dim(), n.dim()))
}

fn tor_zero(c: &mut Case) -> Result<(), String> {
    let (m, n) = (c.module(), c.module());
    let t = absolute_tor(&m, &n, 0)[0];
    let d = tensor_module(&m, &n).map_err(err)?.module.dim();
    expect(t == d, || format!("dim Tor_0 = {t}, dim tensor = {d}"))
}

fn double_dual(c: &mut Case) -> Result<(), String> {
    let m = c.module();
    expect(m.dual().dual() == m, || format!("D(D(M)) differs from M for dim {}", m.dim()))
}

fn hom_dual(c: &mut Case) -> Result<(), String> {
    let (m, n) = (c.module(), c.module());
    let a = HomSpace::new(&m, &n).map_err(err)?.dim();
    let b = HomSpace::new(&n.dual(), &m.dual()).map_err(err)?.dim();
    expect(a == b, || format!("dim Hom(M, N) = {a}, dim Hom(DN, DM) = {b}"))
}

fn resolution_exact(c: &mut Case) -> Result<(), String> {
    let m = c.module();
    let res = projective_resolution(&m, c.depth + 1);
    expect(res.is_exact(), || format!("resolution of a module of dim {} is not exact", m.dim()))
}

fn constructions_agree(c: &mut Case) -> Result<(), String> {
    let (m, n) = (c.module(), c.module());
    let proj = c.oracle(ClassKind::Proj)?;
    let a = relative_ext(&m, &n, &proj, c.depth, Style::Minimal).map_err(err)?.dims();
    let b = relative_ext(&m, &n, &proj, c.depth, Style::Full).map_err(err)?.dims();
    expect(a == b, || format!("minimal gives {a:?}, full gives {b:?}"))
}

fn horseshoe_splits(c: &mut Case) -> Result<(), String> {
    let (f, g) = sample::short_exact(&c.alg, &mut c.rng, c.max_dim);
    let left = projective_resolution(&f.source, c.depth);
    let right = projective_resolution(&g.target, c.depth);
    let h = horseshoe(&f, &g, &left, &right).map_err(err)?;
    expect(h.report.ok(), || format!("{:?}", h.report))
}

fn lifts_invert(c: &mut Case) -> Result<(), String> {
    let m = c.module();
    let proj = c.oracle(ClassKind::Proj)?;
    let a = class_resolution(&m, &proj, c.depth + 1, Style::Minimal).map_err(err)?;
    let b = class_resolution(&m, &proj, c.depth + 1, Style::Full).map_err(err)?;
    let h = roundtrip_homotopy(&a, &b, c.depth).map_err(err)?;
    expect(h.is_some(), || "no null-homotopy for the round trip".into())
}

fn projective_flavor(c: &mut Case) -> Result<(), String> {
    let (m, n) = (c.module(), c.module());
    let proj = c.oracle(ClassKind::Proj)?;
    let r = relative_ext(&m, &n, &proj, c.depth, Style::Minimal).map_err(err)?.dims();
    let a = absolute_ext(&m, &n, c.depth);
    expect(r == a, || format!("relative {r:?}, absolute {a:?}"))
}

fn injective_flavor(c: &mut Case) -> Result<(), String> {
    let (m, n) = (c.module(), c.module());
    let inj = c.oracle(ClassKind::Inj)?;
    let r = relative_ext_co(&m, &n, &inj, c.depth, Style::Minimal).map_err(err)?.dims();
    let a = absolute_ext(&m, &n, c.depth);
    expect(r == a, || format!("relative {r:?}, absolute {a:?}"))
}

fn members_vanish(c: &mut Case) -> Result<(), String> {
    let n = c.module();
    let free = Module::free(&c.alg, 1 + c.index % 2);
    let cases = [
        (c.oracle(ClassKind::Proj)?, free),
        (c.oracle(ClassKind::GProjC(c.c.clone()))?, c.c.clone()),
    ];
    for (o, x) in cases {
        let d = relative_ext(&x, &n, &o, c.depth, Style::Minimal).map_err(err)?.dims();
        expect(d[1..].iter().all(|&e| e == 0), || format!("{}: Ext of a member is {d:?}", o.kind.tag()))?;
    }
    Ok(())
}

fn les_exact(c: &mut Case) -> Result<(), String> {
    let (f, g) = sample::short_exact(&c.alg, &mut c.rng, c.max_dim);
    let fixed = c.module();
    let variant = LesVariant::ALL[c.index % 4];
    let a = Module::regular(&c.alg);
    let (o, probe) = match variant {
        LesVariant::Second | LesVariant::First => (c.oracle(ClassKind::Proj)?, a),
        _ => (c.oracle(ClassKind::Inj)?, a.dual()),
    };
    let r = les(variant, &o, &f, &g, &fixed, c.depth, &[probe], Style::Minimal).map_err(err)?;
    expect(r.is_exact(), || format!("{variant:?} fails at slots {:?}", r.exact))
}

fn grade_bound(c: &mut Case) -> Result<(), String> {
    let m = c.module();
    let b = Bounds::for_algebra(&c.alg).with_bound(c.depth);
    let r = is_perfect(&m, &c.c, b);
    expect(r.grade_bounded_by_gc_dim() != Some(false), || {
        format!("grade {:?} exceeds GP_C-dimension {:?}", r.grade, r.gc_dim.value)
    })
}

fn perfect_reflexive(c: &mut Case) -> Result<(), String> {
    let m = c.module();
    let b = Bounds::for_algebra(&c.alg).with_bound(c.depth + 1);
    if !is_perfect(&m, &c.c, b).perfect {
        return Ok(());
    }
    let d = perfect_dual(&m, &c.c, b).map_err(err)?;
    expect(d.holds(), || format!("double dual of dim {} not isomorphic to M of dim {}", d.double.dim(), m.dim()))
}

fn balance(c: &mut Case, x: ClassKind, y: ClassKind) -> Result<(), String> {
    let (m, n) = (c.module(), c.module());
    let (ox, oy) = (c.oracle(x)?, c.oracle(y)?);
    let r = check_balance(&m, &n, &ox, &oy, c.depth, &[], Style::Minimal).map_err(err)?;
    expect(r.balanced(), || {
        format!(
            "resolved {:?}, coresolved {:?}, quasi-isomorphisms {} {}",
            r.resolved, r.coresolved, r.left_quasiiso, r.right_quasiiso
        )
    })
}

fn classical_balance(c: &mut Case) -> Result<(), String> {
    balance(c, ClassKind::Proj, ClassKind::Inj)
}

fn gorenstein_balance(c: &mut Case) -> Result<(), String> {
    let p = c.c.clone();
    balance(c, ClassKind::GProjC(p.clone()), ClassKind::GInjC(p))
}

/// Result of one case.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub suite: &'static str,
    pub property: &'static str,
    pub case: usize,
    pub seed: u64,
    /// The minimized counterexample, for a failure.
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub outcomes: Vec<Outcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.witness.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.witness.is_some())
    }

    /// `(property, cases, failures)` in suite order.
    pub fn properties(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> = Vec::new();
        for o in &self.outcomes {
            let name = format!("{}: {}", o.suite, o.property);
            if out.last().map(|(n, _, _)| n) != Some(&name) {
                out.push((name, 0, 0));
            }
            let last = out.last_mut().expect("pushed");
            last.1 += 1;
            last.2 += o.witness.is_some() as usize;
        }
        out
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The seed for one case, independent of evaluation order.
pub fn case_seed(seed: u64, property: &str, case: usize) -> u64 {
    let tag = property.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    splitmix(splitmix(seed ^ tag) ^ case as u64)
}

const MAX_DIM: usize = 6;

/// Runs `cases` cases of every property in `suite`, spread over the
/// workspace algebras, with Ext and resolutions checked through `depth`.
pub fn run_suite(
    ws: &Workspace,
    suite: Suite,
    seed: u64,
    cases: usize,
    depth: usize,
    mutation: Option<Mutation>,
) -> SuiteReport {
    let algebras: Vec<(String, Arc<Algebra>, Module)> = ws
        .algebras
        .iter()
        .map(|(n, a)| {
            let c = ws.module(n, "C").unwrap_or_else(|| Module::regular(a));
            (n.clone(), a.clone(), c)
        })
        .collect();
    let jobs: Vec<(&Property, usize)> = PROPERTIES
        .iter()
        .filter(|p| suite == Suite::All || p.suite == suite)
        .flat_map(|p| (0..cases).map(move |i| (p, i)))
        .collect();
    if algebras.is_empty() {
        return SuiteReport { outcomes: Vec::new() };
    }
    let outcomes = jobs
        .par_iter()
        .map(|&(p, i)| {
            let s = case_seed(seed, p.name, i);
            let (name, alg, c) = &algebras[i % algebras.len()];
            let run = |max_dim: usize| {
                let mut case = Case {
                    alg: alg.clone(),
                    alg_name: name.clone(),
                    c: c.clone(),
                    rng: ChaCha8Rng::seed_from_u64(s),
                    max_dim,
                    depth,
                    index: i,
                    mutation,
                };
                (p.check)(&mut case).map_err(|e| (case.alg_name, e))
            };
            let witness = run(MAX_DIM).err().map(|first| {
                let (d, (alg_name, msg)) = (1..MAX_DIM)
                    .find_map(|d| run(d).err().map(|e| (d, e)))
                    .unwrap_or((MAX_DIM, first));
                format!(
                    "{} / {} case {i} over {alg_name} (seed {s}, module dim <= {d}): {msg}",
                    p.suite.name(),
                    p.name
                )
            });
            Outcome {
                suite: p.suite.name(),
                property: p.name,
                case: i,
                seed: s,
                witness,
            }
        })
        .collect();
    SuiteReport { outcomes }
}
