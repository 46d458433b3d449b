//! Report types shared by text and JSON output.
//!
//! Exact numbers are serialized as strings (`p` or `p/q`) so JSON consumers
//! never see a rounded value.

use serde::Serialize;

/// Bumped on any incompatible change to the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    True,
    False,
    Found,
    Infeasible,
    Unknown,
    Rejected,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::True | Status::Found => 0,
            Status::False | Status::Infeasible | Status::Rejected => 1,
            Status::Unknown => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::True => "true",
            Status::False => "false",
            Status::Found => "found",
            Status::Infeasible => "infeasible",
            Status::Unknown => "unknown",
            Status::Rejected => "rejected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    pub status: Status,
    pub exit_code: i32,
    #[serde(flatten)]
    pub body: Body,
}

impl Report {
    pub fn new(command: &'static str, status: Status, body: Body) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            status,
            exit_code: status.exit_code(),
            body,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Body {
    Analyze(AnalyzeBody),
    Check(CheckBody),
    Realize(RealizeBody),
    Eliminate(EliminateBody),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyzeBody {
    pub mode: String,
    pub species: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeEntry>,
    pub num_components: usize,
    pub num_strong_components: usize,
    pub source_vertices: Vec<String>,
    pub reversible: bool,
    pub weakly_reversible: bool,
    pub stoichiometric_dim: usize,
    pub deficiency: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kinetic_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    pub lints: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeEntry {
    pub source: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub steady_state: bool,
    pub complex_balanced: bool,
    pub detailed_balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckBody {
    pub relation: &'static str,
    pub equivalent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateBody {
    pub checks: Vec<CheckEntry>,
    pub lp_variables: usize,
    pub lp_equalities: usize,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Canonical text of the realized system.
    pub document: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizeBody {
    pub target: &'static str,
    pub method: &'static str,
    pub certificate: CertificateBody,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PotentialEntry {
    pub vertex: String,
    pub potential: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopEntry {
    pub vertex: String,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaEntry {
    pub source: String,
    pub target: String,
    pub before: String,
    pub after: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationBody {
    pub potentials_before: Vec<PotentialEntry>,
    pub potentials_after: Vec<PotentialEntry>,
    pub deltas: Vec<DeltaEntry>,
    pub dropped_self_loops: Vec<LoopEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminateBody {
    pub variant: &'static str,
    pub vertex: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<EliminationBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn push_block(out: &mut String, title: &str, text: &str) {
    out.push_str(title);
    out.push_str(":\n");
    for line in text.lines() {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
}

impl Report {
    /// Human-readable rendering, one `key: value` per line.
    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let mut kv = |k: &str, v: &str| {
            o.push_str(k);
            o.push_str(": ");
            o.push_str(v);
            o.push('\n');
        };
        kv("command", self.command);
        match &self.body {
            Body::Analyze(a) => {
                kv("mode", &a.mode);
                kv("species", &a.species.join(" "));
                kv("vertices", &a.vertices.len().to_string());
                kv("edges", &a.edges.len().to_string());
                kv("components", &a.num_components.to_string());
                kv("strong components", &a.num_strong_components.to_string());
                kv("source vertices", &a.source_vertices.join(", "));
                kv("reversible", yes_no(a.reversible));
                kv("weakly reversible", yes_no(a.weakly_reversible));
                kv("stoichiometric dim", &a.stoichiometric_dim.to_string());
                kv("deficiency", &a.deficiency.to_string());
                if let Some(d) = a.kinetic_dim {
                    kv("kinetic dim", &d.to_string());
                }
                if let Some(s) = &a.state {
                    kv("state", s);
                }
                if let Some(c) = &a.classification {
                    kv("steady state", yes_no(c.steady_state));
                    kv("complex-balanced", yes_no(c.complex_balanced));
                    kv("detailed-balanced", yes_no(c.detailed_balanced));
                }
                for l in &a.lints {
                    kv("lint", l);
                }
            }
            Body::Check(c) => {
                kv("relation", c.relation);
                kv("equivalent", yes_no(c.equivalent));
            }
            Body::Realize(r) => {
                kv("target", r.target);
                kv("method", r.method);
                let c = &r.certificate;
                kv("lp variables", &c.lp_variables.to_string());
                kv("lp equalities", &c.lp_equalities.to_string());
                kv("iterations", &c.iterations.to_string());
                for check in &c.checks {
                    kv(&format!("check {}", check.name), pass_fail(check.passed));
                }
                if let Some(w) = &r.witness {
                    if let Some(s) = &w.state {
                        kv("state", s);
                    }
                    if let Some(a) = &w.alpha {
                        kv("alpha", &a.join(" "));
                    }
                }
            }
            Body::Eliminate(e) => {
                kv("variant", e.variant);
                kv("vertex", &e.vertex);
                if let Some(err) = &e.error {
                    kv("error", err);
                }
                if let Some(r) = &e.report {
                    for d in &r.deltas {
                        kv(
                            "delta",
                            &format!("{} -> {} : {} => {}", d.source, d.target, d.before, d.after),
                        );
                    }
                    for p in &r.dropped_self_loops {
                        kv("dropped self-loop", &format!("{} : {}", p.vertex, p.weight));
                    }
                    for p in &r.potentials_after {
                        kv("potential", &format!("{} : {}", p.vertex, p.potential));
                    }
                }
            }
        }
        kv("status", self.status.name());
        match &self.body {
            Body::Realize(RealizeBody {
                witness: Some(w), ..
            }) => push_block(&mut o, "witness", &w.document),
            Body::Eliminate(EliminateBody {
                result: Some(r), ..
            }) => push_block(&mut o, "result", r),
            _ => {}
        }
        o
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
