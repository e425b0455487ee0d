//! Machine-readable reports and their human renderings.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use nichols::braiding::word_label;
use nichols::{Field, RankReport, StageReport, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageJson {
    pub hilbert: Vec<usize>,
    pub new_relation_dims: Vec<usize>,
    pub iso: bool,
}

impl From<&StageReport> for StageJson {
    fn from(s: &StageReport) -> Self {
        StageJson {
            hilbert: s.hilbert.clone(),
            new_relation_dims: s.new_relation_dims.clone(),
            iso: s.stage_map_iso,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankJson {
    pub rank_le_cutoff: Option<usize>,
    pub stabilized: bool,
    pub stages: Vec<StageJson>,
    pub final_hilbert: Vec<usize>,
    pub oracle_match: Option<bool>,
}

impl RankJson {
    pub fn new<F: Field>(r: &RankReport<F>) -> Self {
        RankJson {
            rank_le_cutoff: r.rank_le_cutoff,
            stabilized: r.stabilized,
            stages: r.stages.iter().map(StageJson::from).collect(),
            final_hilbert: r.final_hilbert(),
            oracle_match: r.oracle_match,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckJson {
    pub valid: bool,
    pub witness: Option<[usize; 3]>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorJson {
    pub label: String,
    pub coordinates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimitivesJson {
    pub stage: usize,
    pub degree: usize,
    pub dimension: usize,
    pub vectors: Vec<VectorJson>,
}

impl PrimitivesJson {
    pub fn new<F: Field>(stage: usize, degree: usize, n: usize, s: &Subspace<F>) -> Self {
        let f = s.field();
        PrimitivesJson {
            stage,
            degree,
            dimension: s.dim(),
            vectors: s
                .vectors()
                .map(|v| VectorJson {
                    label: label(f, n, degree, v),
                    coordinates: v.iter().map(|x| f.format(x)).collect(),
                })
                .collect(),
        }
    }
}

/// Pretty JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Writes a vector of `V^{⊗d}` as a combination of basis words, e.g.
/// `e01 - e10`.
pub fn label<F: Field>(f: &F, n: usize, d: usize, v: &[F::Elem]) -> String {
    let mut out = String::new();
    for (w, x) in v.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
        let word = word_label(n, d, w);
        let c = f.format(x);
        let (negative, magnitude) = match c.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, c),
        };
        let term = if magnitude == "1" {
            word
        } else {
            format!("{magnitude} {word}")
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&term),
            (true, true) => write!(out, "-{term}").unwrap(),
            (false, false) => write!(out, " + {term}").unwrap(),
            (false, true) => write!(out, " - {term}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Stage table for the `rank` and `nichols` commands.
pub fn render_rank(report: &RankJson, header: &str, cutoff: usize) -> String {
    let mut out = String::new();
    writeln!(out, "{header}").unwrap();
    writeln!(
        out,
        "{:<6} {:<4} {:<32} new relations (degrees 2..{cutoff})",
        "stage", "iso", "hilbert"
    )
    .unwrap();
    for (k, s) in report.stages.iter().enumerate() {
        let iso = if s.iso { "yes" } else { "no" };
        writeln!(
            out,
            "{:<6} {:<4} {:<32} {}",
            k,
            iso,
            join(&s.hilbert),
            join(&s.new_relation_dims)
        )
        .unwrap();
    }
    match report.rank_le_cutoff {
        Some(r) => writeln!(
            out,
            "rank at cutoff {cutoff}: {r} (lower bound on the untruncated rank)"
        )
        .unwrap(),
        None => writeln!(
            out,
            "rank at cutoff {cutoff}: not stabilized within {} stages",
            report.stages.len()
        )
        .unwrap(),
    }
    writeln!(out, "final hilbert: {}", join(&report.final_hilbert)).unwrap();
    if let Some(m) = report.oracle_match {
        writeln!(out, "matches symmetrizer oracle: {m}").unwrap();
    }
    out
}

pub fn render_nichols(report: &RankJson, oracle_hilbert: &[usize], header: &str, cutoff: usize) -> String {
    let mut out = render_rank(report, header, cutoff);
    writeln!(out, "oracle hilbert: {}", join(oracle_hilbert)).unwrap();
    out
}

pub fn render_primitives(p: &PrimitivesJson) -> String {
    let mut out = String::new();
    let noun = if p.dimension == 1 { "primitive" } else { "primitives" };
    writeln!(out, "stage {}, degree {}: {} {noun}", p.stage, p.degree, p.dimension).unwrap();
    for v in &p.vectors {
        writeln!(out, "  {}", v.label).unwrap();
    }
    out
}
