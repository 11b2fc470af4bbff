//! Command output: a human-readable table followed by a JSON machine block
//! between marker lines.

use relhom::catclass::{Mode, Verdict};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const BEGIN: &str = "--- machine ---";
pub const END: &str = "--- end ---";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// A computation with nothing to verify.
    Ok,
    Holds,
    Fails,
}

impl Status {
    pub fn from_bool(holds: bool) -> Status {
        if holds {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Machine {
    pub command: String,
    pub status: Status,
    pub data: BTreeMap<String, Value>,
}

impl Machine {
    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("machine blocks serialize")
    }
}

/// Reads the machine block back out of rendered report text.
pub fn parse_machine(text: &str) -> Result<Machine, String> {
    let start = text.find(BEGIN).ok_or("no machine block")? + BEGIN.len();
    let len = text[start..].find(END).ok_or("unterminated machine block")?;
    serde_json::from_str(&text[start..start + len]).map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub lines: Vec<String>,
    pub machine: Machine,
}

impl Report {
    pub fn new(command: &str, title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            lines: Vec::new(),
            machine: Machine {
                command: command.into(),
                status: Status::Ok,
                data: BTreeMap::new(),
            },
        }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn table(&mut self, headers: &[&str], rows: &[Vec<String>]) -> &mut Self {
        self.lines.extend(table(headers, rows));
        self
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.machine
            .data
            .insert(key.into(), serde_json::to_value(v).expect("report values serialize"));
        self
    }

    pub fn status(&mut self, s: Status) -> &mut Self {
        self.machine.status = s;
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.machine.status {
            Status::Fails => 1,
            _ => 0,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        for l in &self.lines {
            let _ = writeln!(out, "  {l}");
        }
        let status = match self.machine.status {
            Status::Ok => "ok",
            Status::Holds => "holds",
            Status::Fails => "fails",
        };
        let _ = writeln!(out, "status: {status}");
        let _ = writeln!(out, "{BEGIN}");
        let _ = writeln!(out, "{}", self.machine.emit());
        let _ = writeln!(out, "{END}");
        out
    }
}

/// Columns padded to their widest cell.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let fmt_row = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![fmt_row(headers.to_vec())];
    out.push(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "));
    for r in rows {
        out.push(fmt_row(r.iter().map(String::as_str).collect()));
    }
    out
}

pub fn verdict_json(v: &Verdict) -> Value {
    let (mode, bound) = match v.mode {
        Mode::Certified => ("certified", None),
        Mode::Bounded(n) => ("bounded", Some(n)),
    };
    json!({ "holds": v.holds, "mode": mode, "bound": bound, "witness": v.witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_block_round_trips() {
        let mut r = Report::new("ext", "Ext");
        r.set("dims", vec![1, 2, 4]).set("name", "k").status(Status::Holds);
        r.set("verdict", verdict_json(&Verdict::bounded(8)));
        let text = r.render();
        assert_eq!(parse_machine(&text).unwrap(), r.machine);
    }

    #[test]
    fn tables_align() {
        let t = table(&["n", "dim"], &[vec!["0".into(), "1".into()], vec!["10".into(), "128".into()]]);
        assert_eq!(t[0], "n   dim");
        assert_eq!(t[1], "--  ---");
        assert_eq!(t[3], "10  128");
    }
}
