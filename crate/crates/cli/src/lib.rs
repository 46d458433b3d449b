//! The `crn` command line: parsing arguments, running one analysis, and
//! rendering its report.
//!
//! Exit codes: 0 found/true/ok, 1 infeasible/false/rejected, 2 unknown,
//! 64 usage (including unreadable files), 65 input that does not parse.

pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use crn_core::io::{emit_dot, format_complex, format_document, parse, parse_complex};
use crn_core::realize::{
    check_dynamical_equivalence, check_flux_equivalence, eliminate_with, realize_flux_cb,
    realize_flux_db, realize_ma_cb_at_state, realize_ma_cb_search, realize_ma_db_at_state,
    realize_ma_rev, realize_ma_wr, Certificate, EliminationReport, EliminationVariant,
    RealizationResult, SearchConfig, Target,
};
use crn_core::{
    Lint, Mode, NetworkDocument, QNetwork, QState, Rational, ReactionNetwork, SpeciesList, State,
    Vertex, WeightKind, WeightedSystem,
};

use report::{
    AnalyzeBody, Body, CertificateBody, CheckBody, CheckEntry, Classification, DeltaEntry,
    EdgeEntry, EliminateBody, EliminationBody, LoopEntry, PotentialEntry, RealizeBody, Report,
    Status, Witness,
};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;

/// Environment variable capping the worker threads of the state search.
pub const THREADS_ENV: &str = "CRN_REALIZE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "crn",
    version,
    about = "Exact analysis and realization of reaction networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct Common {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Write a DOT rendering of the relevant system to this path.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Write the resulting system in the text format to this path.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for the state search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random starting points for the state search.
    #[arg(long, global = true, default_value_t = 200)]
    multistarts: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural summary, plus kinetics when weighted.
    Analyze {
        file: PathBuf,
        /// Positive state `x1,x2,...`; entries may be `p/q` or `p/q^(1/d)`.
        #[arg(long, value_name = "STATE")]
        at: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Flux or dynamical equivalence of two systems.
    Check {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Complex-balanced realization.
    RealizeCb {
        file: PathBuf,
        /// Mass-action input: require this state to be complex-balanced.
        #[arg(long, value_name = "STATE", conflicts_with = "search")]
        at: Option<String>,
        /// Mass-action input: search over candidate states.
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Detailed-balanced realization.
    RealizeDb {
        file: PathBuf,
        /// Mass-action input: require this state to be detailed-balanced.
        #[arg(long, value_name = "STATE")]
        at: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Weakly reversible realization of a mass-action system.
    RealizeWr {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Reversible realization of a mass-action system.
    RealizeRev {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Remove a virtual source.
    Eliminate {
        file: PathBuf,
        /// The complex to remove, e.g. `X + Y`.
        #[arg(long, value_name = "COMPLEX")]
        vertex: String,
        #[command(flatten)]
        common: Common,
    },
}

/// A failure that ends the run before a report exists.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Doc = NetworkDocument<Rational>;

fn load(path: &Path) -> Result<Doc, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse::<Rational>(&text).map_err(|e| Failure {
        code: EXIT_PARSE,
        message: format!("{}: {e}", path.display()),
    })
}

fn parse_state(text: &str, dim: usize) -> Result<QState, Failure> {
    let x =
        State::<Rational>::parse(text).ok_or_else(|| usage(format!("invalid state `{text}`")))?;
    if x.dim() != dim {
        return Err(usage(format!(
            "state has {} coordinates, expected {dim}",
            x.dim()
        )));
    }
    Ok(x)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn complex(net: &QNetwork, v: usize) -> String {
    format_complex(net.vertex(v), net.species())
}

fn complexes(net: &QNetwork, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter().map(|v| complex(net, v)).collect()
}

fn lint_text(net: &QNetwork, lint: &Lint) -> String {
    match lint {
        Lint::NegativeCoordinate { vertex } => {
            format!("vertex {} has a negative coordinate", complex(net, *vertex))
        }
        Lint::IsolatedVertex { vertex } => {
            format!(
                "vertex {} is not incident to any reaction",
                complex(net, *vertex)
            )
        }
    }
}

fn dot_of(doc: &Doc) -> String {
    emit_dot(&doc.network, doc.weights.as_deref())
}

fn analyze(doc: &Doc, at: Option<&str>) -> Result<Report, Failure> {
    let net = &doc.network;
    let edges = net
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(s, t))| EdgeEntry {
            source: complex(net, s),
            target: complex(net, t),
            weight: doc.weights.as_ref().map(|w| w[e].to_string()),
        })
        .collect();
    let mut body = AnalyzeBody {
        mode: doc.mode.name().to_string(),
        species: net.species().names().to_vec(),
        vertices: complexes(net, 0..net.num_vertices()),
        edges,
        num_components: net.num_components(),
        num_strong_components: net.num_strong_components(),
        source_vertices: complexes(net, net.source_vertices()),
        reversible: net.is_reversible(),
        weakly_reversible: net.is_weakly_reversible(),
        stoichiometric_dim: net.stoichiometric_subspace_dim(),
        deficiency: net.deficiency(),
        kinetic_dim: None,
        state: None,
        classification: None,
        lints: net.lints().iter().map(|l| lint_text(net, l)).collect(),
    };
    let classify = |c: crn_core::FluxClassification| Classification {
        steady_state: c.is_steady_state,
        complex_balanced: c.is_complex_balanced,
        detailed_balanced: c.is_detailed_balanced,
    };
    match doc.mode {
        Mode::Network => {
            if at.is_some() {
                return Err(usage("--at needs a weighted system"));
            }
        }
        Mode::Flux => {
            if at.is_some() {
                return Err(usage(
                    "--at applies to mass-action systems; fluxes are classified directly",
                ));
            }
            body.classification = Some(classify(doc.flux_system().expect("flux mode").classify()));
        }
        Mode::MassAction => {
            let m = doc.mass_action_system().expect("mass-action mode");
            body.kinetic_dim = Some(m.kinetic_subspace_dim());
            if let Some(text) = at {
                let x = parse_state(text, net.dim())?;
                let c = m.classify_state(&x).map_err(|e| usage(e.to_string()))?;
                body.state = Some(x.to_string());
                body.classification = Some(classify(c));
            }
        }
    }
    Ok(Report::new("analyze", Status::Ok, Body::Analyze(body)))
}

fn check(a: &Doc, b: &Doc) -> Result<Report, Failure> {
    let (relation, result) = match (a.mode, b.mode) {
        (Mode::Flux, Mode::Flux) => (
            "flux equivalence",
            check_flux_equivalence(&a.flux_system().unwrap(), &b.flux_system().unwrap()),
        ),
        (Mode::MassAction, Mode::MassAction) => (
            "dynamical equivalence",
            check_dynamical_equivalence(
                &a.mass_action_system().unwrap(),
                &b.mass_action_system().unwrap(),
            ),
        ),
        (x, y) => {
            return Err(usage(format!(
                "check needs two flux or two mass-action systems, got {x} and {y}"
            )))
        }
    };
    let equivalent = result.map_err(|e| usage(e.to_string()))?;
    let status = if equivalent {
        Status::True
    } else {
        Status::False
    };
    Ok(Report::new(
        "check",
        status,
        Body::Check(CheckBody {
            relation,
            equivalent,
        }),
    ))
}

fn certificate_body(c: &Certificate) -> CertificateBody {
    CertificateBody {
        checks: c
            .checks
            .iter()
            .map(|k| CheckEntry {
                name: k.name,
                passed: k.passed,
            })
            .collect(),
        lp_variables: c.lp_variables,
        lp_equalities: c.lp_equalities,
        iterations: c.iterations,
    }
}

/// The realized system as a document, and the report for `result`.
fn realize_report<K: WeightKind>(
    command: &'static str,
    target: Target,
    method: &'static str,
    mode: Mode,
    result: &RealizationResult<Rational, K>,
) -> (Report, Option<Doc>) {
    let status = match result.status() {
        crn_core::realize::Status::Found => Status::Found,
        crn_core::realize::Status::Infeasible => Status::Infeasible,
        crn_core::realize::Status::Unknown => Status::Unknown,
    };
    let doc = result
        .realization()
        .map(|r| NetworkDocument::from_system(&r.system, mode));
    let witness = result
        .realization()
        .zip(doc.as_ref())
        .map(|(r, d)| Witness {
            document: format_document(d),
            state: r.state.as_ref().map(ToString::to_string),
            alpha: r
                .alpha
                .as_ref()
                .map(|a| a.iter().map(ToString::to_string).collect()),
        });
    let body = RealizeBody {
        target: target.name(),
        method,
        certificate: certificate_body(&result.certificate),
        witness,
    };
    (Report::new(command, status, Body::Realize(body)), doc)
}

fn search_config(common: &Common) -> Result<SearchConfig, Failure> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| usage(format!("{THREADS_ENV} must be a positive integer")))?,
        ),
        Err(_) => None,
    };
    Ok(SearchConfig {
        multistarts: common.multistarts,
        seed: common.seed,
        threads,
        ..SearchConfig::default()
    })
}

fn realize_balanced(
    command: &'static str,
    target: Target,
    doc: &Doc,
    at: Option<&str>,
    search: bool,
    common: &Common,
) -> Result<(Report, Option<Doc>), Failure> {
    match doc.mode {
        Mode::Flux => {
            if at.is_some() || search {
                return Err(usage("--at and --search apply to mass-action systems"));
            }
            let f = doc.flux_system().expect("flux mode");
            let r = if target == Target::ComplexBalanced {
                realize_flux_cb(&f)
            } else {
                realize_flux_db(&f)
            };
            Ok(realize_report(
                command,
                target,
                "linear program",
                Mode::Flux,
                &r,
            ))
        }
        Mode::MassAction => {
            let m = doc.mass_action_system().expect("mass-action mode");
            if search {
                let r = realize_ma_cb_search(&m, &search_config(common)?);
                return Ok(realize_report(
                    command,
                    target,
                    "state search",
                    Mode::MassAction,
                    &r,
                ));
            }
            let Some(text) = at else {
                return Err(usage("mass-action input needs --at <state> or --search"));
            };
            let x = parse_state(text, m.network().dim())?;
            let r = if target == Target::ComplexBalanced {
                realize_ma_cb_at_state(&m, &x)
            } else {
                realize_ma_db_at_state(&m, &x)
            }
            .map_err(|e| usage(e.to_string()))?;
            Ok(realize_report(
                command,
                target,
                "linear program at state",
                Mode::MassAction,
                &r,
            ))
        }
        Mode::Network => Err(usage("realization needs a flux or mass-action system")),
    }
}

fn realize_graph(
    command: &'static str,
    target: Target,
    doc: &Doc,
) -> Result<(Report, Option<Doc>), Failure> {
    let Some(m) = doc.mass_action_system() else {
        return Err(usage(format!("{command} needs a mass-action system")));
    };
    let r = if target == Target::WeaklyReversible {
        realize_ma_wr(&m)
    } else {
        realize_ma_rev(&m)
    };
    Ok(realize_report(
        command,
        target,
        "dense support trimming",
        Mode::MassAction,
        &r,
    ))
}

fn variant_name(v: EliminationVariant) -> &'static str {
    match v {
        EliminationVariant::FluxComplexBalanced => "flux complex-balanced",
        EliminationVariant::FluxDetailedBalanced => "flux detailed-balanced",
        EliminationVariant::MassActionWeaklyReversible => "mass-action weakly reversible",
        EliminationVariant::MassActionReversible => "mass-action reversible",
    }
}

fn potentials(sp: &SpeciesList, p: &[(Vertex<Rational>, Rational)]) -> Vec<PotentialEntry> {
    p.iter()
        .map(|(y, v)| PotentialEntry {
            vertex: format_complex(y, sp),
            potential: v.to_string(),
        })
        .collect()
}

fn elimination_body(sp: &SpeciesList, r: &EliminationReport<Rational>) -> EliminationBody {
    EliminationBody {
        potentials_before: potentials(sp, &r.potentials_before),
        potentials_after: potentials(sp, &r.potentials_after),
        deltas: r
            .deltas
            .iter()
            .map(|d| DeltaEntry {
                source: format_complex(&d.source, sp),
                target: format_complex(&d.target, sp),
                before: d.before.to_string(),
                after: d.after.to_string(),
            })
            .collect(),
        dropped_self_loops: r
            .dropped_self_loops
            .iter()
            .map(|(y, w)| LoopEntry {
                vertex: format_complex(y, sp),
                weight: w.to_string(),
            })
            .collect(),
    }
}

fn eliminate_in<K: WeightKind>(
    s: &WeightedSystem<Rational, K>,
    y: &Vertex<Rational>,
    variant: EliminationVariant,
    vertex: String,
    mode: Mode,
) -> (Report, Option<Doc>) {
    let sp = s.network().species();
    let (status, body, doc) = match eliminate_with(s, y, variant) {
        Ok((result, report)) => {
            let doc = NetworkDocument::from_system(&result, mode);
            let body = EliminateBody {
                variant: variant_name(variant),
                vertex,
                error: None,
                report: Some(elimination_body(sp, &report)),
                result: Some(format_document(&doc)),
            };
            (Status::Ok, body, Some(doc))
        }
        Err(e) => {
            let body = EliminateBody {
                variant: variant_name(variant),
                vertex,
                error: Some(e.to_string()),
                report: None,
                result: None,
            };
            (Status::Rejected, body, None)
        }
    };
    (Report::new("eliminate", status, Body::Eliminate(body)), doc)
}

fn eliminate(doc: &Doc, vertex: &str) -> Result<(Report, Option<Doc>), Failure> {
    let net: &ReactionNetwork<Rational> = &doc.network;
    let y = parse_complex::<Rational>(vertex, net.species(), 1, 1)
        .map_err(|e| usage(format!("--vertex: {}", e.message)))?;
    let name = format_complex(&y, net.species());
    // The strongest applicable variant: detailed balance and reversibility
    // imply their weaker counterparts.
    match doc.mode {
        Mode::Flux => {
            let f = doc.flux_system().expect("flux mode");
            let variant = if f.is_detailed_balanced() {
                EliminationVariant::FluxDetailedBalanced
            } else {
                EliminationVariant::FluxComplexBalanced
            };
            Ok(eliminate_in(&f, &y, variant, name, Mode::Flux))
        }
        Mode::MassAction => {
            let m = doc.mass_action_system().expect("mass-action mode");
            let variant = if m.network().is_reversible() {
                EliminationVariant::MassActionReversible
            } else {
                EliminationVariant::MassActionWeaklyReversible
            };
            Ok(eliminate_in(&m, &y, variant, name, Mode::MassAction))
        }
        Mode::Network => Err(usage("eliminate needs a flux or mass-action system")),
    }
}

fn dispatch(cli: Cli) -> Result<(Report, Common), Failure> {
    // `input` is what --dot renders when there is no resulting system.
    let (report, input, result, common) = match cli.command {
        Command::Analyze { file, at, common } => {
            let doc = load(&file)?;
            (analyze(&doc, at.as_deref())?, doc, None, common)
        }
        Command::Check {
            first,
            second,
            common,
        } => {
            let a = load(&first)?;
            let b = load(&second)?;
            (check(&a, &b)?, a, None, common)
        }
        Command::RealizeCb {
            file,
            at,
            search,
            common,
        } => {
            let doc = load(&file)?;
            let (r, out) = realize_balanced(
                "realize-cb",
                Target::ComplexBalanced,
                &doc,
                at.as_deref(),
                search,
                &common,
            )?;
            (r, doc, out, common)
        }
        Command::RealizeDb { file, at, common } => {
            let doc = load(&file)?;
            let (r, out) = realize_balanced(
                "realize-db",
                Target::DetailedBalanced,
                &doc,
                at.as_deref(),
                false,
                &common,
            )?;
            (r, doc, out, common)
        }
        Command::RealizeWr { file, common } => {
            let doc = load(&file)?;
            let (r, out) = realize_graph("realize-wr", Target::WeaklyReversible, &doc)?;
            (r, doc, out, common)
        }
        Command::RealizeRev { file, common } => {
            let doc = load(&file)?;
            let (r, out) = realize_graph("realize-rev", Target::Reversible, &doc)?;
            (r, doc, out, common)
        }
        Command::Eliminate {
            file,
            vertex,
            common,
        } => {
            let doc = load(&file)?;
            let (r, out) = eliminate(&doc, &vertex)?;
            (r, doc, out, common)
        }
    };
    if let Some(path) = &common.out {
        if let Some(doc) = &result {
            write_file(path, &format_document(doc))?;
        }
    }
    if let Some(path) = &common.dot {
        write_file(path, &dot_of(result.as_ref().unwrap_or(&input)))?;
    }
    Ok((report, common))
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json = match &cli.command {
        Command::Analyze { common, .. }
        | Command::Check { common, .. }
        | Command::RealizeCb { common, .. }
        | Command::RealizeDb { common, .. }
        | Command::RealizeWr { common, .. }
        | Command::RealizeRev { common, .. }
        | Command::Eliminate { common, .. } => common.json,
    };
    match dispatch(cli) {
        Ok((report, _)) => {
            let text = if json {
                report.to_json()
            } else {
                report.to_text()
            };
            let _ = stdout.write_all(text.as_bytes());
            report.exit_code
        }
        Err(f) => {
            let _ = writeln!(stderr, "crn: {}", f.message);
            f.code
        }
    }
}
