//! Plain-text instance documents and JSON result documents.
//!
//! Instance documents are line oriented. Blank lines and lines starting with
//! `#` are ignored; everything else is a keyword followed by
//! whitespace-separated fields:
//!
//! ```text
//! treeinv-instance 1
//! scale 1
//! root v1
//! t0 v3
//! target 19
//! edge v1 v2 7 3 9 7
//! edge v2 v3 12 7 18 2
//! ```
//!
//! The header must come first. `scale` (a power of ten, default 1) fixes the
//! number of fractional digits; every decimal is stored as the integer
//! `value * scale`. `t0` and `target` are optional. Each `edge` line is
//! `parent child w l u c`. The canonical form written by [`write_instance`]
//! lists the keys in the order above and edges in canonical edge order.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{InstanceError, ParseError};
use crate::interdiction::InterdictionReport;
use crate::riovspt::SolveReport;
use crate::solution::{Status, WeightAssignment};
use crate::tree::{build_instance, EdgeRecord, Instance};

pub const FORMAT_HEADER: &str = "treeinv-instance";
pub const FORMAT_VERSION: u32 = 1;

/// Fixed-point scale factor: a power of ten.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scale {
    factor: i64,
    digits: u32,
}

impl Default for Scale {
    fn default() -> Self {
        Scale { factor: 1, digits: 0 }
    }
}

impl Scale {
    pub fn new(factor: i64) -> Option<Scale> {
        let mut digits = 0;
        let mut rest = factor;
        while rest > 1 && rest % 10 == 0 {
            rest /= 10;
            digits += 1;
        }
        (rest == 1 && factor >= 1).then_some(Scale { factor, digits })
    }

    pub fn factor(self) -> i64 {
        self.factor
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Parses a decimal such as `-12.5` into `value * factor`.
    pub fn parse(self, text: &str) -> Result<i64, String> {
        let bad = || {
            format!(
                "`{text}` is not a decimal with at most {} fractional digits",
                self.digits
            )
        };
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
        if whole.is_empty()
            || !whole.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
            || frac.len() > self.digits as usize
            || (body.contains('.') && frac.is_empty())
        {
            return Err(bad());
        }
        let overflow = || format!("`{text}` overflows at scale {}", self.factor);
        let whole: i64 = whole.parse().map_err(|_| overflow())?;
        let mut frac_value: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        for _ in frac.len()..self.digits as usize {
            frac_value *= 10;
        }
        let magnitude = whole
            .checked_mul(self.factor)
            .and_then(|v| v.checked_add(frac_value))
            .ok_or_else(overflow)?;
        Ok(if negative { -magnitude } else { magnitude })
    }

    /// Formats `value / factor` with exactly `digits` fractional digits.
    pub fn format(self, value: i64) -> String {
        let sign = if value < 0 { "-" } else { "" };
        let magnitude = value.unsigned_abs();
        let factor = self.factor as u64;
        if self.digits == 0 {
            format!("{sign}{magnitude}")
        } else {
            format!(
                "{sign}{}.{:0width$}",
                magnitude / factor,
                magnitude % factor,
                width = self.digits as usize
            )
        }
    }
}

/// An instance read from a document together with its scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedInstance {
    pub instance: Instance<i64>,
    pub scale: Scale,
}

struct Located<'a> {
    line: usize,
    fields: Vec<&'a str>,
}

pub fn parse_instance(text: &str) -> Result<ParsedInstance, ParseError> {
    parse_instance_with_scale(text, None)
}

/// Parses a document, optionally reading its decimals at `scale` instead of
/// the scale it declares.
pub fn parse_instance_with_scale(text: &str, scale: Option<Scale>) -> Result<ParsedInstance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.trim()))
        .filter(|(_, raw)| !raw.is_empty() && !raw.starts_with('#'))
        .map(|(line, raw)| Located {
            line,
            fields: raw.split_whitespace().collect(),
        });

    let header = lines.next().ok_or_else(|| ParseError::new(0, "empty document"))?;
    match header.fields.as_slice() {
        [FORMAT_HEADER, version] => {
            let version: u32 = version
                .parse()
                .map_err(|_| ParseError::new(header.line, format!("bad format version `{version}`")))?;
            if version != FORMAT_VERSION {
                return Err(ParseError::new(
                    header.line,
                    format!("unsupported format version {version}"),
                ));
            }
        }
        _ => {
            return Err(ParseError::new(
                header.line,
                format!("expected `{FORMAT_HEADER} {FORMAT_VERSION}` header"),
            ))
        }
    }

    let mut declared_scale: Option<(usize, Scale)> = None;
    let mut root: Option<(usize, &str)> = None;
    let mut t0: Option<(usize, &str)> = None;
    let mut target: Option<(usize, &str)> = None;
    let mut edges: Vec<(usize, [&str; 6])> = Vec::new();

    fn once<T>(slot: &mut Option<(usize, T)>, line: usize, key: &str, value: T) -> Result<(), ParseError> {
        if let Some((first, _)) = slot {
            return Err(ParseError::new(
                line,
                format!("duplicate `{key}` (first on line {first})"),
            ));
        }
        *slot = Some((line, value));
        Ok(())
    }

    for loc in lines {
        let line = loc.line;
        match loc.fields.as_slice() {
            ["scale", factor] => {
                let parsed = factor
                    .parse()
                    .ok()
                    .and_then(Scale::new)
                    .ok_or_else(|| ParseError::new(line, format!("scale `{factor}` is not a power of ten")))?;
                once(&mut declared_scale, line, "scale", parsed)?;
            }
            ["root", label] => once(&mut root, line, "root", *label)?,
            ["t0", label] => once(&mut t0, line, "t0", *label)?,
            ["target", value] => once(&mut target, line, "target", *value)?,
            ["edge", parent, child, w, l, u, c] => edges.push((line, [parent, child, w, l, u, c])),
            ["edge", ..] => {
                return Err(ParseError::new(line, "edge needs `parent child w l u c`"));
            }
            [key, ..] => {
                let known = ["scale", "root", "t0", "target", FORMAT_HEADER];
                let message = if known.contains(key) {
                    format!("`{key}` takes exactly one value")
                } else {
                    format!("unknown keyword `{key}`")
                };
                return Err(ParseError::new(line, message));
            }
            [] => unreachable!("blank lines are filtered"),
        }
    }

    let scale = scale.or(declared_scale.map(|(_, s)| s)).unwrap_or_default();
    let (root_line, root) = root.ok_or_else(|| ParseError::new(0, "missing `root`"))?;
    let decimal = |line: usize, field: &str, text: &str| {
        scale
            .parse(text)
            .map_err(|msg| ParseError::new(line, format!("{field}: {msg}")))
    };

    let target = target.map(|(line, text)| decimal(line, "target", text)).transpose()?;
    let mut records = Vec::with_capacity(edges.len());
    for &(line, [parent, child, w, l, u, c]) in &edges {
        records.push(EdgeRecord::new(
            parent,
            child,
            decimal(line, "w", w)?,
            decimal(line, "l", l)?,
            decimal(line, "u", u)?,
            decimal(line, "c", c)?,
        ));
    }

    let instance = build_instance(&records, root, t0.map(|(_, l)| l), target).map_err(|err| {
        let line = locate(&err, &edges, root_line, t0.map(|(line, _)| line));
        ParseError::new(line, err.to_string())
    })?;
    Ok(ParsedInstance { instance, scale })
}

fn locate(err: &InstanceError, edges: &[(usize, [&str; 6])], root_line: usize, t0_line: Option<usize>) -> usize {
    let by_child = |label: &str, last: bool| {
        let mut hits = edges.iter().filter(|(_, f)| f[1] == label).map(|(line, _)| *line);
        if last {
            hits.next_back()
        } else {
            hits.next()
        }
    };
    let found = match err {
        InstanceError::DuplicateChild { child } => by_child(child, true),
        InstanceError::BoundsViolated { child, .. } | InstanceError::NonPositiveCost { child, .. } => {
            by_child(child, false)
        }
        InstanceError::RootHasParent { root, .. } => by_child(root, false),
        InstanceError::Cycle { node } => by_child(node, false),
        InstanceError::Disconnected { node } => edges.iter().find(|(_, f)| f[0] == node).map(|(line, _)| *line),
        InstanceError::NotALeaf { .. } | InstanceError::UnknownNode { .. } => t0_line,
        InstanceError::UnknownRoot { .. } => Some(root_line),
        InstanceError::Empty => None,
    };
    found.unwrap_or(0)
}

/// Canonical document for `instance` at `scale`.
pub fn write_instance(instance: &Instance<i64>, scale: Scale) -> String {
    let tree = instance.tree();
    let mut out = String::new();
    let _ = writeln!(out, "{FORMAT_HEADER} {FORMAT_VERSION}");
    let _ = writeln!(out, "scale {}", scale.factor());
    let _ = writeln!(out, "root {}", tree.label(tree.root()));
    if let Some(t0) = instance.t0() {
        let _ = writeln!(out, "t0 {}", tree.label(t0));
    }
    if let Some(target) = instance.target() {
        let _ = writeln!(out, "target {}", scale.format(target));
    }
    for rec in instance.edge_records() {
        let _ = writeln!(
            out,
            "edge {} {} {} {} {} {}",
            rec.parent,
            rec.child,
            scale.format(rec.w),
            scale.format(rec.l),
            scale.format(rec.u),
            scale.format(rec.c)
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeChangeDoc {
    pub parent: String,
    pub child: String,
    pub old: String,
    pub new: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeWeightDoc {
    pub parent: String,
    pub child: String,
    pub weight: String,
}

/// Solver output as written by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultDocument {
    pub problem: &'static str,
    pub status: Status,
    pub objective: Option<String>,
    pub rung: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achieved_shortest: Option<String>,
    pub iterations: u64,
    pub changed_edges: Vec<EdgeChangeDoc>,
    pub assignment: Option<Vec<EdgeWeightDoc>>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("result documents serialize");
        text.push('\n');
        text
    }
}

fn assignment_docs(
    instance: &Instance<i64>,
    scale: Scale,
    assignment: Option<&WeightAssignment<i64>>,
) -> (Vec<EdgeChangeDoc>, Option<Vec<EdgeWeightDoc>>) {
    let Some(assignment) = assignment else {
        return (Vec::new(), None);
    };
    let tree = instance.tree();
    let parent_of = |e| tree.label(tree.edge_parent(e)).to_string();
    let changes = assignment
        .changed_edges(instance)
        .into_iter()
        .map(|ch| EdgeChangeDoc {
            parent: parent_of(ch.edge),
            child: tree.edge_label(ch.edge).to_string(),
            old: scale.format(ch.old),
            new: scale.format(ch.new),
        })
        .collect();
    let weights = tree
        .edges()
        .map(|e| EdgeWeightDoc {
            parent: parent_of(e),
            child: tree.edge_label(e).to_string(),
            weight: scale.format(assignment.get(e)),
        })
        .collect();
    (changes, Some(weights))
}

pub fn riovspt_result(instance: &Instance<i64>, scale: Scale, report: &SolveReport<i64>) -> ResultDocument {
    let (changed_edges, assignment) = assignment_docs(instance, scale, report.assignment.as_ref());
    ResultDocument {
        problem: "riovspt",
        status: report.status,
        objective: report.objective.map(|v| scale.format(v)),
        rung: report.rung,
        achieved_shortest: None,
        iterations: report.iterations,
        changed_edges,
        assignment,
    }
}

pub fn mcspit_result(instance: &Instance<i64>, scale: Scale, report: &InterdictionReport<i64>) -> ResultDocument {
    let (changed_edges, assignment) = assignment_docs(instance, scale, report.assignment.as_ref());
    ResultDocument {
        problem: "mcspit",
        status: report.status,
        objective: report.objective.map(|v| scale.format(v)),
        rung: report.rung,
        achieved_shortest: report.achieved_shortest.map(|v| scale.format(v)),
        iterations: report.iterations,
        changed_edges,
        assignment,
    }
}
