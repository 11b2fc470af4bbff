//! Argument types and dispatch from commands to the engine.

use crate::report::{verdict_json, Report, Status};
use crate::suites::{run_suite, Mutation, Suite};
use crate::workspace::{parse_workspace, parse_workspace_over, Diagnostic, Workspace};
use clap::{Args, Parser, Subcommand, ValueEnum};
use relhom::algmod::{cokernel, direct_sum, injective_envelope, kernel, projective_cover, Algebra, ModMap, Module};
use relhom::catclass::{is_semidualizing, Bounds, ClassKind, ClassOracle};
use relhom::perfection::{grade, is_perfect, perfect_dual, Grade};
use relhom::relext::{
    absolute_ext, absolute_tor, check_balance, comparison_kappa, comparison_theta, detect_pd, les,
    relative_ext, relative_ext_co, Comparison, LesVariant,
};
use relhom::resolve::{
    check_proper, class_coresolution, class_resolution, wx_approximation, wx_hull, Properness, Style,
};
use serde_json::json;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}", .0.iter().map(Diagnostic::to_string).collect::<Vec<_>>().join("\n"))]
    Parse(Vec<Diagnostic>),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] relhom::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "relhom", version, about = "Relative Ext, class oracles and balance checks over local F_p-algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug, Default)]
pub struct Global {
    /// Workspace file merged over the shipped algebras.
    #[arg(long, global = true)]
    pub workspace: Option<PathBuf>,
    /// Highest degree reported (default 6).
    #[arg(long, global = true)]
    pub max: Option<usize>,
    /// Degree bound for bounded checks (default 2·dim+2).
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    /// Probe modules, by name.
    #[arg(long, global = true, value_delimiter = ',', num_args = 1..)]
    pub probes: Vec<String>,
    /// Isomorphism-search budget (default 200).
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Seed for randomized searches and suites (default 0)
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Which construction of class resolutions to use.
    #[arg(long, global = true, value_enum)]
    pub style: Option<StyleArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StyleArg {
    Minimal,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    /// Ext_X(M, -) along the sequence.
    Second,
    /// Ext_X(-, N) along the sequence.
    First,
    /// Ext_Y(-, N) along the sequence.
    FirstCo,
    /// Ext_Y(M, -) along the sequence.
    SecondCo,
}

impl From<VariantArg> for LesVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Second => LesVariant::Second,
            VariantArg::First => LesVariant::First,
            VariantArg::FirstCo => LesVariant::FirstCo,
            VariantArg::SecondCo => LesVariant::SecondCo,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a workspace file.
    Check { file: PathBuf },
    /// Absolute Ext^n(M, N).
    Ext { alg: String, m: String, n: String },
    /// Relative Ext through a proper resolution (or coresolution) by a class.
    Relext {
        alg: String,
        m: String,
        n: String,
        #[arg(long)]
        oracle: String,
    },
    /// Absolute Tor_n(C, M).
    Tor { alg: String, c: String, m: String },
    /// Whether C is semidualizing.
    Semidualizing { alg: String, c: String },
    /// Class membership.
    Class {
        alg: String,
        m: String,
        #[arg(long)]
        oracle: String,
    },
    /// A proper resolution or coresolution by a class.
    Resolve {
        alg: String,
        m: String,
        #[arg(long)]
        oracle: String,
        #[arg(long, default_value_t = 4)]
        len: usize,
    },
    /// The approximation 0 -> K -> X_0 -> M -> 0 with X_0 in GP_C.
    Approx { alg: String, m: String, c: Option<String> },
    /// The hull 0 -> M -> H -> X'' -> 0 with X'' in GP_C.
    Hull { alg: String, m: String, c: Option<String> },
    /// The least n with Ext^n(M, C) nonzero.
    Grade { alg: String, m: String, c: Option<String> },
    /// Perfection against C and the duality for perfect modules.
    Perfect { alg: String, m: String, c: Option<String> },
    /// Balance of Ext computed from an X-resolution and a Y-coresolution.
    Balance {
        alg: String,
        #[arg(long = "X")]
        x: String,
        #[arg(long = "Y")]
        y: String,
        m: String,
        n: String,
    },
    /// The comparison Ext_X -> Ext_W for W inside X.
    Theta {
        alg: String,
        m: String,
        n: String,
        #[arg(long = "W")]
        w: String,
        #[arg(long = "X")]
        x: String,
    },
    /// The comparison Ext_X -> Ext.
    Kappa {
        alg: String,
        m: String,
        n: String,
        #[arg(long)]
        oracle: String,
    },
    /// The long exact sequence of a short exact sequence given as
    /// `cover:M`, `envelope:M` or `split:M,N`.
    Les {
        alg: String,
        ses: String,
        fixed: String,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Defaults to `proj` or `inj` by variant.
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Relative projective dimension, tested against the probes.
    Pd {
        alg: String,
        m: String,
        #[arg(long)]
        oracle: String,
    },
    /// Print the workspace (or one algebra of it) in the workspace format.
    Emit { alg: Option<String> },
    /// Seeded property suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Cases per property.
        #[arg(long, default_value_t = 12)]
        cases: usize,
        #[arg(long, value_enum)]
        mutate: Option<Mutation>,
    },
}

/// Global flags resolved against the workspace config and defaults.
#[derive(Clone, Debug)]
pub struct Settings {
    pub max: usize,
    pub bound: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub probes: Vec<String>,
    pub style: Style,
}

impl Settings {
    pub fn resolve(g: &Global, ws: &Workspace) -> Settings {
        let c = &ws.config;
        Settings {
            max: g.max.or(c.max).unwrap_or(6),
            bound: g.bound.or(c.bound),
            trials: g.trials.or(c.trials).unwrap_or(relhom::algmod::DEFAULT_TRIALS),
            seed: g.seed.or(c.seed).unwrap_or(0),
            probes: if g.probes.is_empty() { c.probes.clone() } else { g.probes.clone() },
            style: match g.style {
                Some(StyleArg::Full) => Style::Full,
                _ => Style::Minimal,
            },
        }
    }

    pub fn bounds(&self, alg: &Algebra) -> Bounds {
        let b = Bounds::for_algebra(alg);
        Bounds {
            bound: self.bound.unwrap_or(b.bound),
            trials: self.trials,
            seed: self.seed,
        }
    }
}

/// Everything a command needs about one algebra.
struct Ctx<'a> {
    ws: &'a Workspace,
    name: &'a str,
    alg: Arc<Algebra>,
    s: &'a Settings,
}

impl Ctx<'_> {
    fn new<'a>(ws: &'a Workspace, name: &'a str, s: &'a Settings) -> CliResult<Ctx<'a>> {
        let alg = ws
            .algebra(name)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("unknown algebra `{name}`")))?;
        Ok(Ctx { ws, name, alg, s })
    }

    fn module(&self, name: &str) -> CliResult<Module> {
        self.ws
            .module(self.name, name)
            .ok_or_else(|| CliError::Input(format!("unknown module `{name}` over `{}`", self.name)))
    }

    /// The named parameter, else the module called `C`, else `A`.
    fn parameter(&self, c: Option<&str>) -> CliResult<(String, Module)> {
        let name = match c {
            Some(c) => c,
            None if self.ws.module(self.name, "C").is_some() => "C",
            None => "A",
        };
        Ok((name.to_string(), self.module(name)?))
    }

    fn bounds(&self) -> Bounds {
        self.s.bounds(&self.alg)
    }

    fn probes(&self) -> CliResult<Vec<Module>> {
        if self.s.probes.is_empty() {
            return Ok(self.ws.modules_over(self.name).into_iter().map(|(_, m)| m).collect());
        }
        self.s.probes.iter().map(|p| self.module(p)).collect()
    }

    /// `proj`, `inj`, `pc:C`, `ic:C`, `gp:C`, `gi:C` or `add:T`.
    fn class(&self, spec: &str) -> CliResult<ClassKind> {
        let (tag, param) = match spec.split_once(':') {
            Some((t, p)) => (t, Some(p)),
            None => (spec, None),
        };
        let param = || -> CliResult<Module> {
            let p = param.ok_or_else(|| CliError::Input(format!("class `{tag}` needs a parameter, as in `{tag}:C`")))?;
            self.module(p)
        };
        Ok(match tag {
            "proj" => ClassKind::Proj,
            "inj" => ClassKind::Inj,
            "pc" => ClassKind::ProjC(param()?),
            "ic" => ClassKind::InjC(param()?),
            "gp" => ClassKind::GProjC(param()?),
            "gi" => ClassKind::GInjC(param()?),
            "add" => ClassKind::AddT(param()?),
            _ => return Err(CliError::Input(format!("unknown class `{spec}`"))),
        })
    }

    fn oracle(&self, spec: &str) -> CliResult<ClassOracle> {
        Ok(ClassOracle::new(self.class(spec)?, self.bounds())?)
    }

    /// Generators of the class together with the probes it accepts: the
    /// modules against which properness is tested.
    fn members(&self, oracle: &ClassOracle) -> CliResult<Vec<Module>> {
        let a = Module::regular(&self.alg);
        let mut out = match &oracle.kind {
            ClassKind::Proj => vec![a],
            ClassKind::Inj => vec![a.dual()],
            ClassKind::ProjC(c) | ClassKind::AddT(c) => vec![c.clone()],
            ClassKind::InjC(c) => vec![c.dual()],
            ClassKind::GProjC(c) => vec![a, c.clone()],
            ClassKind::GInjC(c) => vec![a.dual(), c.dual()],
        };
        if matches!(oracle.kind, ClassKind::AddT(_)) {
            return Ok(out);
        }
        for p in self.probes()? {
            if !out.contains(&p) && oracle.contains(&p)?.holds {
                out.push(p);
            }
        }
        Ok(out)
    }
}

fn degree_rows(cols: &[&[usize]]) -> Vec<Vec<String>> {
    let n = cols.first().map_or(0, |c| c.len());
    (0..n)
        .map(|i| std::iter::once(i.to_string()).chain(cols.iter().map(|c| c[i].to_string())).collect())
        .collect()
}

fn comparison_report(r: &mut Report, c: &Comparison, source: &str, target: &str) -> bool {
    let max = c.matrices.len();
    let rows: Vec<Vec<String>> = (0..max)
        .map(|n| {
            vec![
                n.to_string(),
                c.source_dims[n].to_string(),
                c.target_dims[n].to_string(),
                c.rank(n).to_string(),
                if c.is_bijective(n) { "yes" } else { "no" }.into(),
            ]
        })
        .collect();
    r.table(&["n", source, target, "rank", "iso"], &rows);
    let iso: Vec<bool> = (0..max).map(|n| c.is_bijective(n)).collect();
    r.set("source_dims", &c.source_dims)
        .set("target_dims", &c.target_dims)
        .set("ranks", (0..max).map(|n| c.rank(n)).collect::<Vec<_>>())
        .set("bijective", &iso);
    iso.iter().all(|&b| b)
}

fn grade_json(g: Grade) -> serde_json::Value {
    match g {
        Grade::Finite(n) => json!(n),
        Grade::Infinite => json!("infinite"),
        Grade::Unknown(b) => json!(format!("unknown beyond {b}")),
    }
}

fn grade_text(g: Grade) -> String {
    match g {
        Grade::Finite(n) => n.to_string(),
        Grade::Infinite => "infinite".into(),
        Grade::Unknown(b) => format!("no nonzero Ext up to {b}"),
    }
}

/// `(f, g)` for a short exact sequence spec.
fn parse_ses(ctx: &Ctx, spec: &str) -> CliResult<(ModMap, ModMap)> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Input(format!("expected cover:M, envelope:M or split:M,N, found `{spec}`")))?;
    Ok(match kind {
        "cover" => {
            let g = projective_cover(&ctx.module(arg)?);
            (kernel(&g).1, g)
        }
        "envelope" => {
            let f = injective_envelope(&ctx.module(arg)?);
            let (_, g, _) = cokernel(&f);
            (f, g)
        }
        "split" => {
            let (a, b) = arg
                .split_once(',')
                .ok_or_else(|| CliError::Input("split needs two modules, as in split:M,N".into()))?;
            let (_, [i, _], [_, p]) = direct_sum(&ctx.module(a)?, &ctx.module(b)?);
            (i, p)
        }
        _ => return Err(CliError::Input(format!("unknown sequence kind `{kind}`"))),
    })
}

fn read_file(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// The shipped workspace with `--workspace` merged over it.
pub fn load_workspace(g: &Global) -> CliResult<Workspace> {
    let mut ws = crate::workspace::shipped();
    if let Some(path) = &g.workspace {
        let extra = parse_workspace_over(&read_file(path)?, &ws).map_err(CliError::Parse)?;
        ws.merge(extra);
    }
    Ok(ws)
}

pub fn run_command(ws: &Workspace, g: &Global, cmd: &Command) -> CliResult<Report> {
    let s = Settings::resolve(g, ws);
    let max = s.max;
    match cmd {
        Command::Check { file } => check(file),
        Command::Emit { .. } => Err(CliError::Input("emit prints workspace text, not a report".into())),
        Command::Ext { alg, m, n } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let dims = absolute_ext(&ctx.module(m)?, &ctx.module(n)?, max);
            let mut r = Report::new("ext", format!("Ext^n({m}, {n}) over {alg}"));
            r.table(&["n", "dim"], &degree_rows(&[&dims]));
            r.set("algebra", alg).set("m", m).set("n", n).set("dims", &dims);
            Ok(r)
        }
        Command::Relext { alg, m, n, oracle } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let o = ctx.oracle(oracle)?;
            let (mm, nn) = (ctx.module(m)?, ctx.module(n)?);
            let (t, direction) = if o.kind.is_injective_side() {
                (relative_ext_co(&mm, &nn, &o, max, s.style)?, "coresolution")
            } else {
                (relative_ext(&mm, &nn, &o, max, s.style)?, "resolution")
            };
            let dims = t.dims();
            let mut r = Report::new("relext", format!("Ext_{oracle}^n({m}, {n}) over {alg}"));
            r.line(format!("computed from a proper {direction}"));
            r.table(&["n", "dim"], &degree_rows(&[&dims]));
            r.set("algebra", alg).set("oracle", oracle).set("direction", direction).set("dims", &dims);
            Ok(r)
        }
        Command::Tor { alg, c, m } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let dims = absolute_tor(&ctx.module(c)?, &ctx.module(m)?, max);
            let mut r = Report::new("tor", format!("Tor_n({c}, {m}) over {alg}"));
            r.table(&["n", "dim"], &degree_rows(&[&dims]));
            r.set("algebra", alg).set("dims", &dims);
            Ok(r)
        }
        Command::Semidualizing { alg, c } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let v = is_semidualizing(&ctx.module(c)?, ctx.bounds());
            let mut r = Report::new("semidualizing", format!("Is {c} semidualizing over {alg}?"));
            r.line(format!("{c}: {v}"));
            r.set("algebra", alg).set("module", c).set("verdict", verdict_json(&v));
            r.status(Status::from_bool(v.holds));
            Ok(r)
        }
        Command::Class { alg, m, oracle } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let v = ctx.oracle(oracle)?.contains(&ctx.module(m)?)?;
            let mut r = Report::new("class", format!("Is {m} in {oracle} over {alg}?"));
            r.line(format!("{m}: {v}"));
            r.set("algebra", alg).set("oracle", oracle).set("verdict", verdict_json(&v));
            r.status(Status::from_bool(v.holds));
            Ok(r)
        }
        Command::Resolve { alg, m, oracle, len } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let o = ctx.oracle(oracle)?;
            let mm = ctx.module(m)?;
            let res = if o.kind.is_injective_side() {
                class_coresolution(&mm, &o, *len, s.style)?
            } else {
                class_resolution(&mm, &o, *len, s.style)?
            };
            let dims: Vec<usize> = (0..=res.length).map(|i| res.object(i).dim()).collect();
            let proper = check_proper(&res, &ctx.members(&o)?)?;
            let exact = res.is_exact();
            let properness = match res.properness {
                Properness::ByConstruction => "by construction".to_string(),
                Properness::Sampled(n) => format!("sampled on {n} probes"),
            };
            let mut r = Report::new("resolve", format!("{oracle}-resolution of {m} over {alg}"));
            r.table(&["n", "dim"], &degree_rows(&[&dims]));
            r.line(format!("complete: {}", res.is_complete()));
            r.line(format!("exact: {exact}; proper on class members: {proper}; properness {properness}"));
            r.set("algebra", alg)
                .set("oracle", oracle)
                .set("dims", &dims)
                .set("complete", res.is_complete())
                .set("exact", exact)
                .set("proper", proper);
            r.status(Status::from_bool(exact && proper));
            Ok(r)
        }
        Command::Approx { alg, m, c } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let (cname, cm) = ctx.parameter(c.as_deref())?;
            let a = wx_approximation(&ctx.module(m)?, &cm, ctx.bounds())?;
            let w: Vec<usize> = a.kernel_resolution.iter().map(|f| f.source.dim()).collect();
            let mut r = Report::new("approx", format!("GP_{cname}-approximation of {m} over {alg}"));
            r.line(format!("X_0: dim {}", a.approximation.source.dim()));
            r.line(format!("K: dim {}", a.kernel.source.dim()));
            r.line(format!("P_{cname}-resolution of K: dims {w:?}"));
            r.line(format!("exact: {}", a.is_exact()));
            r.set("x0", a.approximation.source.dim())
                .set("kernel", a.kernel.source.dim())
                .set("kernel_resolution", &w)
                .set("exact", a.is_exact());
            r.status(Status::from_bool(a.is_exact()));
            Ok(r)
        }
        Command::Hull { alg, m, c } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let (cname, cm) = ctx.parameter(c.as_deref())?;
            let h = wx_hull(&ctx.module(m)?, &cm, ctx.bounds())?;
            let (f, g) = (&h.inclusion, &h.projection);
            let exact = f.is_injective()
                && g.is_surjective()
                && g.matrix.mul(&f.matrix).is_zero()
                && f.rank() + g.rank() == f.target.dim();
            let mut r = Report::new("hull", format!("GP_{cname}-hull of {m} over {alg}"));
            r.line(format!("0 -> M ({}) -> H ({}) -> X'' ({}) -> 0", f.source.dim(), f.target.dim(), g.target.dim()));
            r.line(format!("exact: {exact}"));
            r.set("m", f.source.dim()).set("h", f.target.dim()).set("x", g.target.dim()).set("exact", exact);
            r.status(Status::from_bool(exact));
            Ok(r)
        }
        Command::Grade { alg, m, c } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let (cname, cm) = ctx.parameter(c.as_deref())?;
            let gr = grade(&ctx.module(m)?, &cm, ctx.bounds());
            let mut r = Report::new("grade", format!("grade of {m} against {cname} over {alg}"));
            r.line(format!("grade: {}", grade_text(gr)));
            r.set("grade", grade_json(gr));
            Ok(r)
        }
        Command::Perfect { alg, m, c } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let (cname, cm) = ctx.parameter(c.as_deref())?;
            let mm = ctx.module(m)?;
            let rep = is_perfect(&mm, &cm, ctx.bounds());
            let mut r = Report::new("perfect", format!("perfection of {m} against {cname} over {alg}"));
            r.line(format!("grade: {}", grade_text(rep.grade)));
            r.line(match rep.gc_dim.value {
                Some(d) => format!("GP_{cname}-dimension: {d}"),
                None => format!("GP_{cname}-dimension: not found ({})", rep.gc_dim.verdict),
            });
            r.line(format!("dim Ext^n({m}, {cname}): {:?}", rep.ext_dims));
            r.set("grade", grade_json(rep.grade))
                .set("gc_dim", rep.gc_dim.value)
                .set("ext_dims", &rep.ext_dims)
                .set("perfect", rep.perfect);
            let mut holds = rep.perfect;
            if rep.perfect {
                let d = perfect_dual(&mm, &cm, ctx.bounds())?;
                r.line(format!("dual Ext^{g}({m}, {cname}): dim {}", d.dual.dim(), g = d.grade));
                r.line(format!("dual perfect of the same grade: {}", d.dual_report.perfect && d.dual_report.grade == rep.grade));
                r.line(format!("isomorphism onto the double dual found: {}", d.iso.found()));
                r.set("dual_dim", d.dual.dim()).set("iso_found", d.iso.found()).set("duality", d.holds());
                holds = d.holds();
            } else {
                r.line("not perfect");
            }
            r.status(Status::from_bool(holds));
            Ok(r)
        }
        Command::Balance { alg, x, y, m, n } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let (ox, oy) = (ctx.oracle(x)?, ctx.oracle(y)?);
            let b = check_balance(&ctx.module(m)?, &ctx.module(n)?, &ox, &oy, max, &ctx.probes()?, s.style)?;
            let agree: Vec<usize> = b.resolved.iter().zip(&b.coresolved).map(|(a, c)| (a == c) as usize).collect();
            let rows: Vec<Vec<String>> = (0..b.resolved.len())
                .map(|i| {
                    vec![
                        i.to_string(),
                        b.resolved[i].to_string(),
                        b.coresolved[i].to_string(),
                        if agree[i] == 1 { "yes" } else { "no" }.into(),
                    ]
                })
                .collect();
            let mut r = Report::new("balance", format!("balance of {x} against {y} on ({m}, {n}) over {alg}"));
            r.table(&["n", "from X-resolution", "from Y-coresolution", "agree"], &rows);
            r.line(format!("Hom(M, Y) -> Hom(X, Y) quasi-isomorphism: {}", b.left_quasiiso));
            r.line(format!("Hom(X, N) -> Hom(X, Y) quasi-isomorphism: {}", b.right_quasiiso));
            for h in &b.hypotheses {
                r.line(format!("hypothesis {}: {}", h.name, h.verdict));
            }
            let hyps: Vec<_> = b
                .hypotheses
                .iter()
                .map(|h| json!({ "name": h.name, "verdict": verdict_json(&h.verdict) }))
                .collect();
            r.set("resolved", &b.resolved)
                .set("coresolved", &b.coresolved)
                .set("left_quasiiso", b.left_quasiiso)
                .set("right_quasiiso", b.right_quasiiso)
                .set("hypotheses", hyps);
            r.status(Status::from_bool(b.balanced()));
            Ok(r)
        }
        Command::Theta { alg, m, n, w, x } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let (ow, ox) = (ctx.oracle(w)?, ctx.oracle(x)?);
            let c = comparison_theta(&ctx.module(m)?, &ctx.module(n)?, &ow, &ox, max, s.style)?;
            let mut r = Report::new("theta", format!("Ext_{x} -> Ext_{w} on ({m}, {n}) over {alg}"));
            let iso = comparison_report(&mut r, &c, &format!("Ext_{x}"), &format!("Ext_{w}"));
            r.status(Status::from_bool(iso));
            Ok(r)
        }
        Command::Kappa { alg, m, n, oracle } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let o = ctx.oracle(oracle)?;
            let c = comparison_kappa(&ctx.module(m)?, &ctx.module(n)?, &o, max, s.style)?;
            let mut r = Report::new("kappa", format!("Ext_{oracle} -> Ext on ({m}, {n}) over {alg}"));
            let iso = comparison_report(&mut r, &c, &format!("Ext_{oracle}"), "Ext");
            r.status(Status::from_bool(iso));
            Ok(r)
        }
        Command::Les { alg, ses, fixed, variant, oracle } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let v = LesVariant::from(*variant);
            let spec = oracle.clone().unwrap_or_else(|| match variant {
                VariantArg::Second | VariantArg::First => "proj".into(),
                _ => "inj".into(),
            });
            let o = ctx.oracle(&spec)?;
            let (f, g) = parse_ses(&ctx, ses)?;
            let rep = les(v, &o, &f, &g, &ctx.module(fixed)?, max, &ctx.members(&o)?, s.style)?;
            let rows: Vec<Vec<String>> = rep
                .slots
                .iter()
                .enumerate()
                .map(|(i, sl)| {
                    let ex = rep.exact.get(i).map_or("-", |&e| if e { "yes" } else { "no" });
                    vec![sl.label.clone(), sl.dim.to_string(), ex.into()]
                })
                .collect();
            let mut r = Report::new("les", format!("long exact sequence for {ses} with {fixed} fixed over {alg}"));
            r.table(&["group", "dim", "exact"], &rows);
            let connecting: Vec<usize> = (0..max).map(|n| rep.connecting(n).rank()).collect();
            r.line(format!("connecting map ranks: {connecting:?}"));
            let slots: Vec<_> = rep.slots.iter().map(|sl| json!({ "label": sl.label, "dim": sl.dim })).collect();
            r.set("slots", slots).set("exact", &rep.exact).set("connecting_ranks", &connecting);
            r.status(Status::from_bool(rep.is_exact()));
            Ok(r)
        }
        Command::Pd { alg, m, oracle } => {
            let ctx = Ctx::new(ws, alg, &s)?;
            let o = ctx.oracle(oracle)?;
            let bound = ctx.bounds().bound.min(max);
            let p = detect_pd(&ctx.module(m)?, &o, bound, &ctx.probes()?, s.style)?;
            let mut r = Report::new("pd", format!("{oracle}-dimension of {m} over {alg}"));
            r.line(match p.value {
                Some(v) => format!("dimension: {v} ({})", p.verdict),
                None => format!("dimension: not found up to {bound}"),
            });
            r.set("value", p.value).set("ext_dims", &p.ext_dims).set("verdict", verdict_json(&p.verdict));
            Ok(r)
        }
        Command::Verify { suite, cases, mutate } => {
            let depth = g.max.unwrap_or(3);
            let rep = run_suite(ws, *suite, s.seed, *cases, depth, *mutate);
            let mut r = Report::new("verify", format!("suite {} with seed {}", suite.name(), s.seed));
            let rows: Vec<Vec<String>> = rep
                .properties()
                .into_iter()
                .map(|(name, total, failed)| vec![name, total.to_string(), failed.to_string()])
                .collect();
            r.table(&["property", "cases", "failed"], &rows);
            for f in rep.failures() {
                r.line(format!("counterexample: {}", f.witness.as_deref().unwrap_or("")));
            }
            let failures: Vec<_> = rep
                .failures()
                .map(|f| json!({ "property": f.property, "case": f.case, "seed": f.seed, "witness": f.witness }))
                .collect();
            r.set("suite", suite.name())
                .set("seed", s.seed)
                .set("cases", rep.outcomes.len())
                .set("failures", failures);
            r.status(Status::from_bool(rep.passed()));
            Ok(r)
        }
    }
}

fn check(file: &PathBuf) -> CliResult<Report> {
    let ws = parse_workspace(&read_file(file)?).map_err(CliError::Parse)?;
    let mut r = Report::new("check", format!("{} is valid", file.display()));
    let rows: Vec<Vec<String>> = ws
        .algebras
        .iter()
        .map(|(n, a)| {
            let rep = a.report();
            vec![
                n.clone(),
                a.p().to_string(),
                a.dim().to_string(),
                rep.loewy_length.to_string(),
                format!("{:?}", rep.radical_dims),
            ]
        })
        .collect();
    r.table(&["algebra", "p", "dim", "loewy length", "radical dims"], &rows);
    let rows: Vec<Vec<String>> = ws
        .modules
        .iter()
        .map(|m| {
            vec![
                m.name.clone(),
                m.over.clone(),
                m.module.dim().to_string(),
                m.module.top_dim().to_string(),
                m.module.socle_dim().to_string(),
            ]
        })
        .collect();
    r.table(&["module", "over", "dim", "top", "socle"], &rows);
    r.set("algebras", ws.algebras.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>())
        .set("modules", ws.modules.iter().map(|m| format!("{} over {}", m.name, m.over)).collect::<Vec<_>>());
    Ok(r)
}

/// The workspace text for `emit`, restricted to one algebra if named.
pub fn emit(ws: &Workspace, alg: Option<&str>) -> CliResult<String> {
    let Some(name) = alg else {
        return Ok(ws.emit());
    };
    let a = ws.algebra(name).ok_or_else(|| CliError::Input(format!("unknown algebra `{name}`")))?;
    let one = Workspace {
        algebras: vec![(name.to_string(), a.clone())],
        modules: ws.modules.iter().filter(|m| m.over == name).cloned().collect(),
        config: Default::default(),
    };
    Ok(one.emit())
}

/// Runs a parsed command line: the text to print and the exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let result = load_workspace(&cli.global).and_then(|ws| match &cli.command {
        Command::Emit { alg } => emit(&ws, alg.as_deref()).map(|t| (t, 0)),
        cmd => run_command(&ws, &cli.global, cmd).map(|r| (r.render(), r.exit_code())),
    });
    match result {
        Ok(out) => out,
        Err(e) => (format!("error: {e}\n"), 2),
    }
}
