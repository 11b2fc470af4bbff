//! The workspace text format: `algebra`, `module ... over ...` and `config`
//! sections, one field per line, `#` comments.
//!
//! ```text
//! algebra kxx2
//!   prime 5
//!   dim 2
//!   basis 1 x
//!   unit 1 0
//!   mult
//!     1 0 | 0 1
//!     0 1 | 0 0
//! module k over kxx2
//!   dim 1
//!   action 1
//!     1
//!   action x
//!     0
//! ```
//!
//! Row `i` of `mult` lists the products `b_i b_j` as coefficient vectors
//! separated by `|`. Each `action` block is a `dim × dim` matrix, row by
//! row, acting on column vectors.

use relhom::algmod::{Algebra, Module};
use relhom::exactlin::FpMatrix;
use std::fmt::{self, Write as _};
use std::sync::Arc;

/// A parse or validation failure at a line of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub max: Option<usize>,
    pub bound: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub probes: Vec<String>,
}

impl Config {
    fn is_empty(&self) -> bool {
        *self == Config::default()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedModule {
    pub name: String,
    pub over: String,
    pub module: Module,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Workspace {
    pub algebras: Vec<(String, Arc<Algebra>)>,
    pub modules: Vec<NamedModule>,
    pub config: Config,
}

/// Names resolved without a declaration: the regular module, the residue
/// field and the dual of the regular module.
const BUILTINS: [&str; 3] = ["A", "k", "D"];

impl Workspace {
    pub fn algebra(&self, name: &str) -> Option<&Arc<Algebra>> {
        self.algebras.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    /// A declared module, or one of `A`, `k`, `D`.
    pub fn module(&self, alg: &str, name: &str) -> Option<Module> {
        if let Some(m) = self.modules.iter().find(|m| m.over == alg && m.name == name) {
            return Some(m.module.clone());
        }
        let a = self.algebra(alg)?;
        match name {
            "A" => Some(Module::regular(a)),
            "k" => Some(Module::residue_field(a)),
            "D" => Some(Module::regular(a).dual()),
            _ => None,
        }
    }

    /// Declared modules over `alg` followed by the builtins they do not
    /// shadow.
    pub fn modules_over(&self, alg: &str) -> Vec<(String, Module)> {
        let mut out: Vec<(String, Module)> = self
            .modules
            .iter()
            .filter(|m| m.over == alg)
            .map(|m| (m.name.clone(), m.module.clone()))
            .collect();
        for b in BUILTINS {
            if !out.iter().any(|(n, _)| n == b) {
                if let Some(m) = self.module(alg, b) {
                    out.push((b.to_string(), m));
                }
            }
        }
        out
    }

    /// Adds everything from `other`; its config fields win where set.
    pub fn merge(&mut self, other: Workspace) {
        for (name, a) in other.algebras {
            self.algebras.retain(|(n, _)| *n != name);
            self.modules.retain(|m| m.over != name);
            self.algebras.push((name, a));
        }
        for m in other.modules {
            self.modules.retain(|x| !(x.over == m.over && x.name == m.name));
            self.modules.push(m);
        }
        let c = other.config;
        self.config.max = c.max.or(self.config.max);
        self.config.bound = c.bound.or(self.config.bound);
        self.config.trials = c.trials.or(self.config.trials);
        self.config.seed = c.seed.or(self.config.seed);
        if !c.probes.is_empty() {
            self.config.probes = c.probes;
        }
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for (name, a) in &self.algebras {
            emit_algebra(&mut out, name, a);
            for m in self.modules.iter().filter(|m| &m.over == name) {
                emit_module(&mut out, m);
            }
        }
        let c = &self.config;
        if !c.is_empty() {
            out.push_str("config\n");
            let fields = [
                ("max", c.max.map(|v| v as u64)),
                ("bound", c.bound.map(|v| v as u64)),
                ("trials", c.trials.map(|v| v as u64)),
                ("seed", c.seed),
            ];
            for (key, v) in fields {
                if let Some(v) = v {
                    let _ = writeln!(out, "  {key} {v}");
                }
            }
            if !c.probes.is_empty() {
                let _ = writeln!(out, "  probes {}", c.probes.join(" "));
            }
        }
        out
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn emit_algebra(out: &mut String, name: &str, a: &Algebra) {
    let d = a.dim();
    let _ = writeln!(out, "algebra {name}");
    let _ = writeln!(out, "  prime {}", a.p());
    let _ = writeln!(out, "  dim {d}");
    let _ = writeln!(out, "  basis {}", a.names().join(" "));
    let _ = writeln!(out, "  unit {}", join(a.unit()));
    out.push_str("  mult\n");
    for i in 0..d {
        let row: Vec<String> = (0..d).map(|j| join(a.basis_product(i, j))).collect();
        let _ = writeln!(out, "    {}", row.join(" | "));
    }
}

fn emit_module(out: &mut String, m: &NamedModule) {
    let module = &m.module;
    let alg = module.algebra();
    let _ = writeln!(out, "module {} over {}", m.name, m.over);
    let _ = writeln!(out, "  dim {}", module.dim());
    for (i, b) in alg.names().iter().enumerate() {
        let _ = writeln!(out, "  action {b}");
        let mat = module.action(i);
        for r in 0..mat.rows() {
            let _ = writeln!(out, "    {}", join(mat.row(r)));
        }
    }
}

/// Lines with comments stripped, numbered from 1.
struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, pos: 0 }
    }
    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }
    fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek();
        self.pos += 1;
        l
    }
}

fn is_header(line: &str) -> bool {
    matches!(line.split_whitespace().next(), Some("algebra" | "module" | "config"))
}

fn diag(line: usize, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        line,
        message: message.into(),
    }
}

fn ints(line: usize, s: &str) -> Result<Vec<i64>, Diagnostic> {
    s.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| diag(line, format!("expected an integer, found `{t}`"))))
        .collect()
}

fn one_int<T: std::str::FromStr>(line: usize, key: &str, rest: &[&str]) -> Result<T, Diagnostic> {
    match rest {
        [v] => v
            .parse()
            .map_err(|_| diag(line, format!("`{key}` expects a nonnegative integer, found `{v}`"))),
        _ => Err(diag(line, format!("`{key}` expects one value"))),
    }
}

fn reduce(p: u32, xs: &[i64]) -> Vec<u32> {
    xs.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect()
}

/// Parses and validates a workspace, or lists everything wrong with it.
pub fn parse_workspace(text: &str) -> Result<Workspace, Vec<Diagnostic>> {
    parse_workspace_over(text, &Workspace::default())
}

/// As [`parse_workspace`], with modules allowed over the algebras of
/// `base` too.
pub fn parse_workspace_over(text: &str, base: &Workspace) -> Result<Workspace, Vec<Diagnostic>> {
    let mut ws = Workspace::default();
    let mut errors = Vec::new();
    let mut lines = Lines::new(text);
    while let Some((n, line)) = lines.next() {
        let words: Vec<&str> = line.split_whitespace().collect();
        let result = match words.as_slice() {
            ["algebra", name] => parse_algebra(&mut lines, n)
                .and_then(|a| {
                    if ws.algebra(name).is_some() {
                        Err(vec![diag(n, format!("algebra `{name}` is declared twice"))])
                    } else {
                        Ok(a)
                    }
                })
                .map(|a| ws.algebras.push((name.to_string(), a))),
            ["module", name, "over", alg] => match ws.algebra(alg).or_else(|| base.algebra(alg)).cloned() {
                None => {
                    skip_section(&mut lines);
                    Err(vec![diag(n, format!("unknown algebra `{alg}`"))])
                }
                Some(a) => parse_module(&mut lines, n, &a).and_then(|m| {
                    if ws.modules.iter().any(|x| x.over == *alg && x.name == *name) {
                        return Err(vec![diag(n, format!("module `{name}` over `{alg}` is declared twice"))]);
                    }
                    ws.modules.push(NamedModule {
                        name: name.to_string(),
                        over: alg.to_string(),
                        module: m,
                    });
                    Ok(())
                }),
            },
            ["config"] => parse_config(&mut lines, &mut ws.config),
            _ => {
                skip_section(&mut lines);
                Err(vec![diag(
                    n,
                    format!("expected `algebra <name>`, `module <name> over <algebra>` or `config`, found `{line}`"),
                )])
            }
        };
        if let Err(mut e) = result {
            errors.append(&mut e);
        }
    }
    for name in &ws.config.probes {
        let declared = |w: &Workspace| w.modules.iter().any(|m| &m.name == name);
        if !BUILTINS.contains(&name.as_str()) && !declared(&ws) && !declared(base) {
            errors.push(diag(0, format!("probe `{name}` names no module")));
        }
    }
    if errors.is_empty() {
        Ok(ws)
    } else {
        Err(errors)
    }
}

fn skip_section(lines: &mut Lines) {
    while lines.peek().is_some_and(|(_, l)| !is_header(l)) {
        lines.next();
    }
}

fn parse_algebra(lines: &mut Lines, header: usize) -> Result<Arc<Algebra>, Vec<Diagnostic>> {
    let mut errors = Vec::new();
    let (mut prime, mut dim, mut basis, mut unit, mut mult) = (None, None, None, None, None);
    while let Some((n, line)) = lines.peek().filter(|(_, l)| !is_header(l)) {
        lines.next();
        let words: Vec<&str> = line.split_whitespace().collect();
        let r: Result<(), Diagnostic> = match words[0] {
            "prime" => one_int(n, "prime", &words[1..]).map(|v: u32| prime = Some(v)),
            "dim" => one_int(n, "dim", &words[1..]).map(|v: usize| dim = Some(v)),
            "basis" => {
                basis = Some(words[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>());
                Ok(())
            }
            "unit" => ints(n, &line[4..]).map(|v| unit = Some(v)),
            "mult" => match dim {
                None => Err(diag(n, "`mult` must come after `dim`")),
                Some(d) => read_mult(lines, n, d).map(|v| mult = Some(v)),
            },
            other => Err(diag(n, format!("unknown algebra field `{other}`"))),
        };
        if let Err(e) = r {
            errors.push(e);
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let (Some(p), Some(d), Some(unit), Some(mult)) = (prime, dim, unit, mult) else {
        return Err(vec![diag(header, "algebra needs `prime`, `dim`, `unit` and `mult`")]);
    };
    let basis = basis.unwrap_or_else(|| (0..d).map(|i| format!("b{i}")).collect());
    if basis.len() != d {
        return Err(vec![diag(header, format!("{} basis names for dimension {d}", basis.len()))]);
    }
    if p == 0 {
        return Err(vec![diag(header, "prime must be positive")]);
    }
    let mult = mult.iter().map(|v| reduce(p, v)).collect();
    Algebra::new(p, basis, reduce(p, &unit), mult).map_err(|e| vec![diag(header, e.to_string())])
}

fn read_mult(lines: &mut Lines, at: usize, d: usize) -> Result<Vec<Vec<i64>>, Diagnostic> {
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        let Some((n, line)) = lines.next() else {
            return Err(diag(at, format!("`mult` ends after {i} of {d} rows")));
        };
        let groups: Vec<&str> = line.split('|').collect();
        if groups.len() != d {
            return Err(diag(n, format!("expected {d} products separated by `|`, found {}", groups.len())));
        }
        for g in groups {
            let v = ints(n, g)?;
            if v.len() != d {
                return Err(diag(n, format!("product has {} coefficients, expected {d}", v.len())));
            }
            out.push(v);
        }
    }
    Ok(out)
}

fn parse_module(lines: &mut Lines, header: usize, alg: &Arc<Algebra>) -> Result<Module, Vec<Diagnostic>> {
    let p = alg.p();
    let mut errors = Vec::new();
    let mut dim = None;
    let mut action: Vec<Option<FpMatrix>> = vec![None; alg.dim()];
    while let Some((n, line)) = lines.peek().filter(|(_, l)| !is_header(l)) {
        lines.next();
        let words: Vec<&str> = line.split_whitespace().collect();
        let r: Result<(), Diagnostic> = match words.as_slice() {
            ["dim", rest @ ..] => one_int(n, "dim", rest).map(|v: usize| dim = Some(v)),
            ["action", b] => match (alg.basis_index(b), dim) {
                (None, _) => Err(diag(n, format!("`{b}` is not a basis element of the algebra"))),
                (_, None) => Err(diag(n, "`action` must come after `dim`")),
                (Some(i), Some(d)) => read_matrix(lines, n, d, p).map(|m| action[i] = Some(m)),
            },
            _ => Err(diag(n, format!("unknown module field `{line}`"))),
        };
        if let Err(e) = r {
            errors.push(e);
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    if dim.is_none() {
        return Err(vec![diag(header, "module needs `dim`")]);
    }
    let missing: Vec<&str> = alg
        .names()
        .iter()
        .zip(&action)
        .filter(|(_, a)| a.is_none())
        .map(|(b, _)| b.as_str())
        .collect();
    if !missing.is_empty() {
        return Err(vec![diag(header, format!("no action given for {}", missing.join(", ")))]);
    }
    let action = action.into_iter().map(|a| a.expect("checked")).collect();
    Module::new(alg.clone(), action).map_err(|e| vec![diag(header, e.to_string())])
}

fn read_matrix(lines: &mut Lines, at: usize, d: usize, p: u32) -> Result<FpMatrix, Diagnostic> {
    let mut data = Vec::with_capacity(d * d);
    for r in 0..d {
        let Some((n, line)) = lines.next().filter(|(_, l)| !is_header(l)) else {
            return Err(diag(at, format!("matrix ends after {r} of {d} rows")));
        };
        let row = ints(n, line)?;
        if row.len() != d {
            return Err(diag(n, format!("row has {} entries, expected {d}", row.len())));
        }
        data.extend(reduce(p, &row));
    }
    FpMatrix::from_vec(p, d, d, data).map_err(|e| diag(at, e.to_string()))
}

fn parse_config(lines: &mut Lines, config: &mut Config) -> Result<(), Vec<Diagnostic>> {
    let mut errors = Vec::new();
    while let Some((n, line)) = lines.peek().filter(|(_, l)| !is_header(l)) {
        lines.next();
        let words: Vec<&str> = line.split_whitespace().collect();
        let rest = &words[1..];
        let r = match words[0] {
            "max" => one_int(n, "max", rest).map(|v| config.max = Some(v)),
            "bound" => one_int(n, "bound", rest).map(|v| config.bound = Some(v)),
            "trials" => one_int(n, "trials", rest).map(|v| config.trials = Some(v)),
            "seed" => one_int(n, "seed", rest).map(|v| config.seed = Some(v)),
            "probes" => {
                config.probes = rest.iter().map(|s| s.to_string()).collect();
                Ok(())
            }
            other => Err(diag(n, format!("unknown config field `{other}`"))),
        };
        if let Err(e) = r {
            errors.push(e);
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

/// A workspace holding one of the library's shipped algebras and its
/// named modules.
pub fn from_library(s: &relhom::shipped::Shipped) -> Workspace {
    Workspace {
        algebras: vec![(s.name.to_string(), s.algebra.clone())],
        modules: s
            .modules
            .iter()
            .map(|(n, m)| NamedModule {
                name: n.to_string(),
                over: s.name.to_string(),
                module: m.clone(),
            })
            .collect(),
        config: Config::default(),
    }
}

/// The shipped algebras and modules, parsed from the bundled data files.
pub fn shipped() -> Workspace {
    let mut ws = Workspace::default();
    for text in SHIPPED_FILES {
        ws.merge(parse_workspace(text).expect("bundled workspace files are valid"));
    }
    ws
}

pub const SHIPPED_FILES: [&str; 4] = [
    include_str!("../data/kxx2.ws"),
    include_str!("../data/a3.ws"),
    include_str!("../data/a4.ws"),
    include_str!("../data/kxx3.ws"),
];
