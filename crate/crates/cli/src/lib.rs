//! The `bitype` command-line front end.
//!
//! Every subcommand writes one JSON document to standard output (or a CSV
//! table for `report`), so identical arguments give byte-identical output
//! whatever the thread count. Failures are reported as
//! `{"error":{"kind":…,"message":…}}` with these exit codes:
//!
//! | code | meaning |
//! |---|---|
//! | 0 | success |
//! | 2 | usage error (unknown flag, malformed value) |
//! | 3 | parameter, range, domain, structure or overflow error |
//! | 4 | a size guard tripped |

use std::fmt::Write as _;

use bitype_core::betti::{betti_numbers, BettiTable};
use bitype_core::covers::{
    cover_number, dim_formula, dim_oracle, is_unmixed, minimal_vertex_covers, regularity_formula,
    unmixed_predicate, VertexCover,
};
use bitype_core::graphs::{build_strong_graph, edge_ideal, generalized_graph_ideal, AdjacencyMode};
use bitype_core::primes::{ass_formula, ass_oracle, witness_monomial};
use bitype_core::sorting::{
    is_sortable, quadratic_gb_evidence, sorting_relations, FiberViolation, ToricPresentation,
};
use bitype_core::{
    build_generalized, build_generalized_by_compositions, BlockStructure, Error, IdealParameters,
    Limits, MonomialIdeal, PrimeSupport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub mod report;

use report::{report_grid, GridSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RANGE: i32 = 3;
pub const EXIT_GUARD: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "bitype",
    version,
    about = "Formulas and brute-force oracles for generalized Veronese bi-type ideals"
)]
struct Cli {
    /// Worker threads for the oracles (0 = one per core).
    #[arg(long, global = true, env = "BITYPE_THREADS", default_value_t = 0)]
    threads: usize,
    /// Print readable text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    #[command(flatten)]
    guards: GuardArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GuardArgs {
    /// Largest variable count for vertex-cover enumeration.
    #[arg(long, global = true, env = "BITYPE_MAX_VARS")]
    max_vars: Option<usize>,
    /// Largest multidegree box scanned for Betti numbers.
    #[arg(long, global = true, env = "BITYPE_MAX_BOX")]
    max_box: Option<u64>,
    /// Largest box scanned for associated-prime witnesses.
    #[arg(long, global = true, env = "BITYPE_MAX_WITNESS_BOX")]
    max_witness_box: Option<u64>,
    /// Largest number of rewriting steps per normal form.
    #[arg(long, global = true, env = "BITYPE_MAX_REWRITE_STEPS")]
    max_rewrite_steps: Option<usize>,
    /// Largest number of generator multisets per fiber degree.
    #[arg(long, global = true, env = "BITYPE_MAX_MULTISETS")]
    max_multisets: Option<u64>,
}

impl GuardArgs {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_vars: self.max_vars.unwrap_or(d.max_vars),
            max_betti_box: self.max_box.unwrap_or(d.max_betti_box),
            max_witness_box: self.max_witness_box.unwrap_or(d.max_witness_box),
            max_rewrite_steps: self.max_rewrite_steps.unwrap_or(d.max_rewrite_steps),
            max_multisets: self.max_multisets.unwrap_or(d.max_multisets),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Block sizes, e.g. `2,2,3`.
    #[arg(long, value_delimiter = ',', required = true)]
    blocks: Vec<usize>,
    /// Total degree.
    #[arg(long)]
    t: u32,
    /// Exponent cap.
    #[arg(long)]
    s: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<IdealParameters, Error> {
        IdealParameters::from_blocks(&self.blocks, self.t, self.s)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Consecutive,
    All,
}

impl From<ModeArg> for AdjacencyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Consecutive => AdjacencyMode::Consecutive,
            ModeArg::All => AdjacencyMode::AllDistinctBlocks,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal generators of L*_{t,s}.
    Gen {
        #[command(flatten)]
        params: ParamArgs,
        /// Build from the sum over compositions instead of the direct description.
        #[arg(long)]
        by_compositions: bool,
    },
    /// Dimension, unmixedness and regularity: closed forms beside cover enumeration.
    Invariants {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Associated primes from the closed form, optionally checked by search.
    Ass {
        #[command(flatten)]
        params: ParamArgs,
        /// Also run the exhaustive colon-ideal search.
        #[arg(long)]
        oracle: bool,
        /// Attach a witness monomial to every predicted prime.
        #[arg(long)]
        witnesses: bool,
    },
    /// Multigraded Betti numbers of T/I and the regularity.
    Betti {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Sortability and sorting relations, optionally with fiber checks.
    SortCheck {
        #[command(flatten)]
        params: ParamArgs,
        /// Check connectivity and unique normal forms on every fiber.
        #[arg(long)]
        gb_evidence: bool,
        /// Highest fiber degree examined by `--gb-evidence`.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Walk ideal of the looped complete multipartite graph.
    Graph {
        /// Block sizes, e.g. `2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<usize>,
        /// Number of vertices on a walk.
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value = "all")]
        mode: ModeArg,
        /// Only walks whose block index never decreases.
        #[arg(long)]
        ordered: bool,
        /// Emit the graph in DOT format instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Cross-validate every closed form over a parameter grid.
    Report {
        #[arg(long, value_enum, default_value = "small")]
        grid: GridSpec,
        #[arg(long, value_enum, default_value = "csv")]
        format: ReportFormat,
        /// Add a wall-clock column (makes the output nondeterministic).
        #[arg(long)]
        timings: bool,
        /// Restrict to these quantities (regularity, dim, unmixed, ass, sortable, gb-evidence, graph).
        #[arg(long, value_delimiter = ',')]
        quantities: Vec<String>,
    },
}

/// Exit status and the text destined for standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn error_outcome(code: i32, kind: &str, message: String) -> Outcome {
    let doc = ErrorDoc {
        error: ErrorBody { kind, message },
    };
    Outcome {
        code,
        stdout: serde_json::to_string(&doc).expect("serializable") + "\n",
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuard(_) => EXIT_GUARD,
        _ => EXIT_RANGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                },
                _ => error_outcome(
                    EXIT_USAGE,
                    "usage",
                    e.render().to_string().trim_end().to_string(),
                ),
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => return error_outcome(EXIT_USAGE, "usage", format!("thread pool: {e}")),
    };
    let limits = cli.guards.limits();
    match pool.install(|| dispatch(&cli.command, &limits, cli.human)) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
        },
        Err(e) => error_outcome(exit_code(&e), e.kind(), e.to_string()),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn dispatch(command: &Command, limits: &Limits, human: bool) -> Result<String, Error> {
    match command {
        Command::Gen {
            params,
            by_compositions,
        } => {
            let p = params.params()?;
            let ideal = if *by_compositions {
                build_generalized_by_compositions(&p)?
            } else {
                build_generalized(&p)
            };
            Ok(if human {
                human_ideal(&p, &ideal)
            } else {
                to_json(&ideal)
            })
        }
        Command::Invariants { params } => {
            let doc = invariants(&params.params()?, limits)?;
            Ok(if human { doc.human() } else { to_json(&doc) })
        }
        Command::Ass {
            params,
            oracle,
            witnesses,
        } => {
            let doc = ass(&params.params()?, *oracle, *witnesses, limits)?;
            Ok(if human { doc.human() } else { to_json(&doc) })
        }
        Command::Betti { params } => {
            let p = params.params()?;
            let ideal = build_generalized(&p);
            let table = betti_numbers(&ideal, limits)?.to_quotient();
            let doc = BettiDoc {
                params: p.clone(),
                regularity: table.regularity(),
                reg_formula: regularity_formula(&p),
                table,
            };
            Ok(if human { doc.human() } else { to_json(&doc) })
        }
        Command::SortCheck {
            params,
            gb_evidence,
            max_degree,
        } => {
            let doc = sort_check(&params.params()?, *gb_evidence, *max_degree, limits)?;
            Ok(if human { doc.human() } else { to_json(&doc) })
        }
        Command::Graph {
            blocks,
            t,
            mode,
            ordered,
            dot,
        } => {
            let structure = BlockStructure::new(blocks.clone())?;
            let graph = build_strong_graph(structure.clone(), (*mode).into());
            if *dot {
                return Ok(graph.to_dot());
            }
            let walk = generalized_graph_ideal(&graph, *t as usize, *ordered)?;
            let lstar = |t: u32| {
                IdealParameters::new(structure.clone(), t, 2)
                    .ok()
                    .map(|p| build_generalized(&p))
            };
            let edges = edge_ideal(&graph);
            let doc = GraphDoc {
                blocks: blocks.clone(),
                t: *t,
                mode: graph.mode(),
                ordered: *ordered,
                edges: graph
                    .named_edges()
                    .into_iter()
                    .map(|(u, v)| [u, v])
                    .collect(),
                loops: graph.loop_count(),
                equals_l_star: lstar(*t).is_some_and(|l| l == walk),
                edge_ideal_equals_l_star: lstar(2).is_some_and(|l| l == edges),
                generators: walk,
            };
            Ok(if human { doc.human() } else { to_json(&doc) })
        }
        Command::Report {
            grid,
            format,
            timings,
            quantities,
        } => {
            let rep = report_grid(*grid, limits, *timings, quantities)?;
            Ok(match format {
                ReportFormat::Csv => rep.to_csv(),
                ReportFormat::Json => to_json(&rep),
            })
        }
    }
}

fn human_ideal(p: &IdealParameters, ideal: &MonomialIdeal) -> String {
    let mut out = format!(
        "L*_{{{},{}}} on blocks ({}): {} generators\n",
        p.t,
        p.s,
        join(p.structure.sizes()),
        ideal.len()
    );
    for g in ideal.gens() {
        let _ = writeln!(out, "  {g}");
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn show<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".to_string(), T::to_string)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct InvariantsDoc {
    params: IdealParameters,
    dim_formula: Option<usize>,
    dim_oracle: usize,
    h: usize,
    minimal_covers: Vec<VertexCover>,
    unmixed_formula: Option<bool>,
    unmixed_oracle: bool,
    reg_formula: u32,
}

/// Closed forms that do not apply to the parameters become `null`.
fn in_range<T>(r: Result<T, Error>) -> Result<Option<T>, Error> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Range(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn invariants(p: &IdealParameters, limits: &Limits) -> Result<InvariantsDoc, Error> {
    let ideal = build_generalized(p);
    Ok(InvariantsDoc {
        params: p.clone(),
        dim_formula: in_range(dim_formula(p))?,
        dim_oracle: dim_oracle(&ideal, limits)?,
        h: cover_number(&ideal, limits)?,
        minimal_covers: minimal_vertex_covers(&ideal, limits)?,
        unmixed_formula: in_range(unmixed_predicate(p))?,
        unmixed_oracle: is_unmixed(&ideal, limits)?,
        reg_formula: regularity_formula(p),
    })
}

impl InvariantsDoc {
    fn human(&self) -> String {
        let mut out = format!("{}\n", self.params);
        let _ = writeln!(
            out,
            "dim      formula {:>5}  oracle {}",
            show(&self.dim_formula),
            self.dim_oracle
        );
        let _ = writeln!(
            out,
            "unmixed  formula {:>5}  oracle {}",
            show(&self.unmixed_formula),
            self.unmixed_oracle
        );
        let _ = writeln!(out, "h        {}", self.h);
        let _ = writeln!(out, "reg      formula {}", self.reg_formula);
        let _ = writeln!(out, "minimal covers:");
        for c in &self.minimal_covers {
            let _ = writeln!(out, "  {{{}}}", c.var_names().join(", "));
        }
        out
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WitnessEntry {
    support: PrimeSupport,
    witness: bitype_core::ExponentVector,
    pretty: String,
    degree: u64,
    colon_is_support: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AssDoc {
    params: IdealParameters,
    formula: Option<Vec<PrimeSupport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Vec<PrimeSupport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<WitnessEntry>>,
}

fn ass(
    p: &IdealParameters,
    run_oracle: bool,
    witnesses: bool,
    limits: &Limits,
) -> Result<AssDoc, Error> {
    // Without the search there is nothing to report outside the formula's range.
    let formula = if run_oracle {
        in_range(ass_formula(p))?
    } else {
        Some(ass_formula(p)?)
    };
    let ideal = build_generalized(p);
    let oracle = if run_oracle {
        Some(
            ass_oracle(&ideal, limits)?
                .into_iter()
                .map(|w| w.support)
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    let witnesses = match (&formula, witnesses) {
        (Some(f), true) => Some(
            f.iter()
                .map(|support| {
                    let witness = witness_monomial(p, support)?;
                    Ok(WitnessEntry {
                        colon_is_support: ideal.colon(&witness)? == support.to_ideal(),
                        degree: witness.total_degree(),
                        pretty: witness.to_string(),
                        support: support.clone(),
                        witness,
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?,
        ),
        _ => None,
    };
    let agree = oracle.as_ref().zip(formula.as_ref()).map(|(o, f)| o == f);
    Ok(AssDoc {
        params: p.clone(),
        formula,
        oracle,
        agree,
        witnesses,
    })
}

fn primes_line(ps: &[PrimeSupport]) -> String {
    ps.iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl AssDoc {
    fn human(&self) -> String {
        let mut out = format!("{}\n", self.params);
        match &self.formula {
            Some(f) => {
                let _ = writeln!(out, "formula ({}): {}", f.len(), primes_line(f));
            }
            None => out.push_str("formula: n/a\n"),
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(out, "oracle  ({}): {}", o.len(), primes_line(o));
        }
        if let Some(a) = self.agree {
            let _ = writeln!(out, "agree: {a}");
        }
        for w in self.witnesses.iter().flatten() {
            let _ = writeln!(
                out,
                "  {}  witness {} (degree {}, colon ok: {})",
                w.support, w.pretty, w.degree, w.colon_is_support
            );
        }
        out
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BettiDoc {
    params: IdealParameters,
    table: BettiTable,
    regularity: Option<i64>,
    reg_formula: u32,
}

impl BettiDoc {
    fn human(&self) -> String {
        let mut out = format!("{}\nBetti numbers of T/I (i, j: rank)\n", self.params);
        for ((i, j), r) in self.table.coarse() {
            let _ = writeln!(out, "  beta_{{{i},{j}}} = {r}");
        }
        let _ = writeln!(out, "totals: {}", join(&self.table.totals()));
        let _ = writeln!(
            out,
            "regularity: {}  formula: {}",
            show(&self.regularity),
            self.reg_formula
        );
        out
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SortDoc {
    params: IdealParameters,
    sortable: bool,
    generator_count: usize,
    relation_count: usize,
    fibers_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    quadratic_kernel_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
    violations: Vec<FiberViolation>,
}

fn sort_check(
    p: &IdealParameters,
    gb: bool,
    max_degree: usize,
    limits: &Limits,
) -> Result<SortDoc, Error> {
    let ideal = build_generalized(p);
    let sortable = is_sortable(ideal.gens())?;
    let presentation = ToricPresentation::new(&ideal)?;
    if gb {
        let ev = quadratic_gb_evidence(&presentation, max_degree, limits)?;
        return Ok(SortDoc {
            params: p.clone(),
            sortable,
            passed: Some(ev.passed()),
            generator_count: ev.generator_count,
            relation_count: ev.relation_count,
            fibers_checked: ev.fibers_checked,
            quadratic_kernel_dim: Some(ev.quadratic_kernel_dim),
            violations: ev.violations,
        });
    }
    let relation_count = if sortable {
        sorting_relations(&presentation)?.len()
    } else {
        0
    };
    Ok(SortDoc {
        params: p.clone(),
        sortable,
        generator_count: presentation.len(),
        relation_count,
        fibers_checked: 0,
        quadratic_kernel_dim: None,
        passed: None,
        violations: Vec::new(),
    })
}

impl SortDoc {
    fn human(&self) -> String {
        let mut out = format!("{}\n", self.params);
        let _ = writeln!(out, "sortable: {}", self.sortable);
        let _ = writeln!(
            out,
            "generators: {}  sorting relations: {}",
            self.generator_count, self.relation_count
        );
        if let Some(k) = self.quadratic_kernel_dim {
            let _ = writeln!(out, "quadratic kernel dimension: {k}");
        }
        if let Some(ok) = self.passed {
            let _ = writeln!(out, "fibers checked: {}  passed: {ok}", self.fibers_checked);
        }
        for v in &self.violations {
            let _ = writeln!(
                out,
                "  degree {} at {:?}: {} ({})",
                v.degree, v.target, v.kind, v.detail
            );
        }
        out
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GraphDoc {
    blocks: Vec<usize>,
    t: u32,
    mode: AdjacencyMode,
    ordered: bool,
    edges: Vec<[String; 2]>,
    loops: usize,
    generators: MonomialIdeal,
    equals_l_star: bool,
    edge_ideal_equals_l_star: bool,
}

impl GraphDoc {
    fn human(&self) -> String {
        let mut out = format!(
            "graph on blocks ({}), {} edges incl. {} loops\n",
            join(&self.blocks),
            self.edges.len(),
            self.loops
        );
        let _ = writeln!(
            out,
            "I_{} has {} generators; equals L*_{{{},2}}: {}",
            self.t,
            self.generators.len(),
            self.t,
            self.equals_l_star
        );
        for g in self.generators.gens() {
            let _ = writeln!(out, "  {g}");
        }
        let _ = writeln!(
            out,
            "edge ideal equals L*_{{2,2}}: {}",
            self.edge_ideal_equals_l_star
        );
        out
    }
}
