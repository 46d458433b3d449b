//! Text format for networks and weighted systems, and DOT export.
//!
//! ```text
//! # comment
//! species: X Y
//! mode: flux
//! 0 -> Y : 3
//! X + Y <-> 2X : 5, 5
//! ```
//!
//! The `species:` line comes first. `mode:` is optional; without it a
//! document is a mass-action system if any reaction carries a weight and a
//! plain network otherwise. Complexes are `0` or `c1 S1 + c2 S2 + ...` with
//! exact rational coefficients, where a coefficient of one may be omitted.
//! Weights are positive exact rationals (`p`, `p/q` or a finite decimal).

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::network::{ReactionNetwork, SpeciesList, Vertex};
use crate::scalar::Scalar;
use crate::weighted::{FluxSystem, MassActionSystem, WeightKind, WeightedSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Network,
    Flux,
    MassAction,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Network => "network",
            Mode::Flux => "flux",
            Mode::MassAction => "mass-action",
        }
    }

    fn parse(text: &str) -> Option<Self> {
        match text {
            "network" => Some(Mode::Network),
            "flux" => Some(Mode::Flux),
            "mass-action" => Some(Mode::MassAction),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A syntax or validation error at a 1-based line and column.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A parsed document: a network, its mode, and one weight per edge unless the
/// mode is [`Mode::Network`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkDocument<T> {
    pub mode: Mode,
    pub network: ReactionNetwork<T>,
    pub weights: Option<Vec<T>>,
}

impl<T: Scalar> NetworkDocument<T> {
    pub fn from_system<K: WeightKind>(system: &WeightedSystem<T, K>, mode: Mode) -> Self {
        Self {
            mode,
            network: system.network().clone(),
            weights: Some(system.weights().to_vec()),
        }
    }

    pub fn from_network(network: ReactionNetwork<T>) -> Self {
        Self {
            mode: Mode::Network,
            network,
            weights: None,
        }
    }

    fn system<K: WeightKind>(&self) -> Option<WeightedSystem<T, K>> {
        let w = self.weights.clone()?;
        WeightedSystem::new(self.network.clone(), w).ok()
    }

    /// The flux system, when the document is in flux mode.
    pub fn flux_system(&self) -> Option<FluxSystem<T>> {
        (self.mode == Mode::Flux).then(|| self.system()).flatten()
    }

    /// The mass-action system, when the document is in mass-action mode.
    pub fn mass_action_system(&self) -> Option<MassActionSystem<T>> {
        (self.mode == Mode::MassAction)
            .then(|| self.system())
            .flatten()
    }
}

/// Strips a trailing `#` comment.
fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses a complex such as `0`, `X`, `2X + 1/2 Y` over `species`.
/// `column` is the 1-based column of `text` within its line.
pub fn parse_complex<T: Scalar>(
    text: &str,
    species: &SpeciesList,
    line: usize,
    column: usize,
) -> Result<Vertex<T>, ParseError> {
    let trimmed = text.trim();
    let lead = column + (text.len() - text.trim_start().len());
    if trimmed.is_empty() {
        return Err(ParseError::new(line, lead, "expected a complex"));
    }
    let mut coords = vec![T::zero(); species.len()];
    if trimmed == "0" {
        return Ok(Vertex::new(coords));
    }
    let mut offset = 0;
    for term in text.split('+') {
        let col = column + offset + (term.len() - term.trim_start().len());
        offset += term.len() + 1;
        let term = term.trim();
        if term.is_empty() {
            return Err(ParseError::new(line, col, "empty term in complex"));
        }
        let split = term
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || c == '.' || c == '/' || (i == 0 && c == '-')))
            .map_or(term.len(), |(i, _)| i);
        let (coeff_text, name) = term.split_at(split);
        let name = name.trim();
        if name.is_empty() {
            return Err(ParseError::new(
                line,
                col,
                format!("term `{term}` names no species"),
            ));
        }
        let Some(index) = species.index_of(name) else {
            return Err(ParseError::new(
                line,
                col + split,
                format!("unknown species `{name}`"),
            ));
        };
        let coeff = if coeff_text.is_empty() {
            T::one()
        } else {
            T::parse_exact(coeff_text).ok_or_else(|| {
                ParseError::new(line, col, format!("invalid coefficient `{coeff_text}`"))
            })?
        };
        if coeff.is_zero() {
            return Err(ParseError::new(line, col, "coefficient must be nonzero"));
        }
        coords[index] = coords[index].clone() + coeff;
    }
    Ok(Vertex::new(coords))
}

fn parse_weight<T: Scalar>(text: &str, line: usize, column: usize) -> Result<T, ParseError> {
    let t = text.trim();
    let col = column + (text.len() - text.trim_start().len());
    let w = T::parse_exact(t)
        .ok_or_else(|| ParseError::new(line, col, format!("invalid exact rational `{t}`")))?;
    if !w.is_positive() {
        return Err(ParseError::new(
            line,
            col,
            format!("weight `{t}` is not positive"),
        ));
    }
    Ok(w)
}

struct RawReaction<T> {
    source: Vertex<T>,
    target: Vertex<T>,
    weight: Option<T>,
    line: usize,
}

/// Parses a document.
pub fn parse<T: Scalar>(text: &str) -> Result<NetworkDocument<T>, ParseError> {
    let mut species: Option<SpeciesList> = None;
    let mut mode: Option<Mode> = None;
    let mut reactions: Vec<RawReaction<T>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let content = body.trim_start();

        let Some(sp) = &species else {
            let Some(rest) = content.strip_prefix("species:") else {
                return Err(ParseError::new(
                    line,
                    indent + 1,
                    "expected `species:` declaration",
                ));
            };
            let names: Vec<&str> = rest.split_whitespace().collect();
            if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
                let col = indent + 1 + "species:".len() + rest.find(bad).unwrap_or(0);
                return Err(ParseError::new(
                    line,
                    col,
                    format!("invalid species name `{bad}`"),
                ));
            }
            species = Some(
                SpeciesList::new(names)
                    .map_err(|e| ParseError::new(line, indent + 1, e.to_string()))?,
            );
            continue;
        };

        if let Some(rest) = content.strip_prefix("mode:") {
            if mode.is_some() || !reactions.is_empty() {
                return Err(ParseError::new(
                    line,
                    indent + 1,
                    "`mode:` must appear once, before any reaction",
                ));
            }
            mode = Some(Mode::parse(rest.trim()).ok_or_else(|| {
                ParseError::new(line, indent + 1, format!("unknown mode `{}`", rest.trim()))
            })?);
            continue;
        }

        let (lhs_end, arrow_len, reversible) = if let Some(p) = body.find("<->") {
            (p, 3, true)
        } else if let Some(p) = body.find("->") {
            (p, 2, false)
        } else {
            return Err(ParseError::new(line, indent + 1, "expected `->` or `<->`"));
        };
        let after_arrow = lhs_end + arrow_len;
        let (rhs_text, weight_text) = match body[after_arrow..].split_once(':') {
            Some((r, w)) => (r, Some(w)),
            None => (&body[after_arrow..], None),
        };
        let source = parse_complex::<T>(&body[..lhs_end], sp, line, 1)?;
        let target = parse_complex::<T>(rhs_text, sp, line, after_arrow + 1)?;
        if source == target {
            return Err(ParseError::new(
                line,
                indent + 1,
                "self-loop: source equals target",
            ));
        }
        let weight_col = after_arrow + rhs_text.len() + 2;
        let (w_fwd, w_rev) = match weight_text {
            None => (None, None),
            Some(w) => match w.split_once(',') {
                Some((a, b)) if reversible => (
                    Some(parse_weight::<T>(a, line, weight_col)?),
                    Some(parse_weight::<T>(b, line, weight_col + a.len() + 1)?),
                ),
                Some(_) => {
                    return Err(ParseError::new(
                        line,
                        weight_col,
                        "two weights given for a one-way reaction",
                    ))
                }
                None => {
                    let v = parse_weight::<T>(w, line, weight_col)?;
                    (Some(v.clone()), Some(v))
                }
            },
        };
        reactions.push(RawReaction {
            source: source.clone(),
            target: target.clone(),
            weight: w_fwd,
            line,
        });
        if reversible {
            reactions.push(RawReaction {
                source: target,
                target: source,
                weight: w_rev,
                line,
            });
        }
    }

    let Some(species) = species else {
        return Err(ParseError::new(
            last_line.max(1),
            1,
            "missing `species:` declaration",
        ));
    };
    if reactions.is_empty() {
        return Err(ParseError::new(
            last_line.max(1),
            1,
            "document has no reactions",
        ));
    }
    let any_weight = reactions.iter().any(|r| r.weight.is_some());
    let mode = mode.unwrap_or(if any_weight {
        Mode::MassAction
    } else {
        Mode::Network
    });
    match mode {
        Mode::Network => {
            if let Some(r) = reactions.iter().find(|r| r.weight.is_some()) {
                return Err(ParseError::new(r.line, 1, "weight given in network mode"));
            }
        }
        Mode::Flux | Mode::MassAction => {
            if let Some(r) = reactions.iter().find(|r| r.weight.is_none()) {
                return Err(ParseError::new(
                    r.line,
                    1,
                    format!("missing weight in {mode} mode"),
                ));
            }
        }
    }

    let mut seen = std::collections::HashSet::new();
    for r in &reactions {
        if !seen.insert((&r.source, &r.target)) {
            return Err(ParseError::new(r.line, 1, "duplicate reaction"));
        }
    }
    let weights: Vec<Option<T>> = reactions.iter().map(|r| r.weight.clone()).collect();
    let network = ReactionNetwork::from_reactions(
        species,
        reactions.into_iter().map(|r| (r.source, r.target)),
    )
    .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    let weights = match mode {
        Mode::Network => None,
        _ => Some(
            weights
                .into_iter()
                .map(|w| w.expect("checked above"))
                .collect(),
        ),
    };
    Ok(NetworkDocument {
        mode,
        network,
        weights,
    })
}

/// `2X + 1/2 Y`, `X`, or `0`.
pub fn format_complex<T: Scalar>(y: &Vertex<T>, species: &SpeciesList) -> String {
    let terms: Vec<String> = y
        .coords()
        .iter()
        .zip(species.names())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, name)| {
            if c.is_one() {
                name.clone()
            } else if c.is_integral() {
                format!("{c}{name}")
            } else {
                format!("{c} {name}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

/// Canonical text: normalized spacing and numbers, one reaction per line in
/// edge order, and an explicit mode line.
pub fn format_document<T: Scalar>(doc: &NetworkDocument<T>) -> String {
    let net = &doc.network;
    let sp = net.species();
    let mut out = String::new();
    let _ = writeln!(out, "species: {}", sp.names().join(" "));
    let _ = writeln!(out, "mode: {}", doc.mode);
    for (e, &(s, t)) in net.edges().iter().enumerate() {
        let _ = write!(
            out,
            "{} -> {}",
            format_complex(net.vertex(s), sp),
            format_complex(net.vertex(t), sp)
        );
        if let Some(w) = &doc.weights {
            let _ = write!(out, " : {}", w[e]);
        }
        out.push('\n');
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Deterministic DOT digraph. Vertices are labelled by complex and
/// coordinates, edges by weight when given.
pub fn emit_dot<T: Scalar>(net: &ReactionNetwork<T>, weights: Option<&[T]>) -> String {
    let sp = net.species();
    let mut out = String::from("digraph crn {\n  rankdir=LR;\n  node [shape=box];\n");
    for (i, y) in net.vertices().iter().enumerate() {
        let label = format!(
            "{}\\n{}",
            dot_escape(&format_complex(y, sp)),
            dot_escape(&y.to_string())
        );
        let _ = writeln!(out, "  v{i} [label=\"{label}\"];");
    }
    for (e, &(s, t)) in net.edges().iter().enumerate() {
        match weights {
            Some(w) => {
                let _ = writeln!(
                    out,
                    "  v{s} -> v{t} [label=\"{}\"];",
                    dot_escape(&w[e].to_string())
                );
            }
            None => {
                let _ = writeln!(out, "  v{s} -> v{t};");
            }
        }
    }
    out.push_str("}\n");
    out
}
