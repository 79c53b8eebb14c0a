//! Grid reports comparing every closed form with its oracle.

use std::time::Instant;

use bitype_core::builders::{build_generalized, IdealParameters};
use bitype_core::covers::{
    dim_formula, dim_oracle, is_unmixed, regularity_formula, unmixed_predicate,
};
use bitype_core::graphs::{build_strong_graph, generalized_graph_ideal, AdjacencyMode};
use bitype_core::grid::{params_for, structures, structures_up_to};
use bitype_core::primes::{ass_formula, ass_oracle};
use bitype_core::sorting::{is_sortable, quadratic_gb_evidence, ToricPresentation};
use bitype_core::{betti, Error, Limits, PrimeSupport};
use rayon::prelude::*;
use serde::Serialize;

/// Which parameter ranges to sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GridSpec {
    /// The ranges on which every closed form is expected to agree with its oracle.
    Small,
    /// Adds the full dimension range and the graph-ideal identification sweep;
    /// disagreements there are recorded, not asserted.
    Extended,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Row {
    pub blocks: String,
    pub t: u32,
    pub s: u32,
    pub quantity: String,
    pub formula: String,
    pub oracle: String,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_millis: Option<u64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GridReport {
    pub rows: Vec<Row>,
}

impl GridReport {
    pub fn disagreements(&self) -> usize {
        self.rows.iter().filter(|r| !r.agree).count()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let timed = self.rows.iter().any(|r| r.runtime_millis.is_some());
        let mut header = vec!["blocks", "t", "s", "quantity", "formula", "oracle", "agree"];
        if timed {
            header.push("runtime_ms");
        }
        w.write_record(&header).expect("in-memory write");
        for r in &self.rows {
            let mut rec = vec![
                r.blocks.clone(),
                r.t.to_string(),
                r.s.to_string(),
                r.quantity.clone(),
                r.formula.clone(),
                r.oracle.clone(),
                r.agree.to_string(),
            ];
            if timed {
                rec.push(r.runtime_millis.unwrap_or(0).to_string());
            }
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Quantity {
    Regularity,
    Dim,
    Unmixed,
    Ass,
    Sortable,
    GbEvidence,
    Graph(AdjacencyModeKey, bool),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum AdjacencyModeKey {
    Consecutive,
    All,
}

impl Quantity {
    fn name(self) -> String {
        match self {
            Quantity::Regularity => "regularity".into(),
            Quantity::Dim => "dim".into(),
            Quantity::Unmixed => "unmixed".into(),
            Quantity::Ass => "ass".into(),
            Quantity::Sortable => "sortable".into(),
            Quantity::GbEvidence => "gb-evidence".into(),
            Quantity::Graph(mode, ordered) => {
                let m = match mode {
                    AdjacencyModeKey::Consecutive => "consecutive",
                    AdjacencyModeKey::All => "all",
                };
                format!(
                    "graph-{m}-{}",
                    if ordered { "ordered" } else { "unordered" }
                )
            }
        }
    }
}

fn fmt_supports(ps: &[PrimeSupport]) -> String {
    ps.iter()
        .map(|p| p.var_names().join(""))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_err(e: &Error) -> String {
    format!("error:{}", e.kind())
}

/// Formula and oracle values as strings.
fn evaluate(q: Quantity, p: &IdealParameters, limits: &Limits) -> (String, String) {
    let ideal = build_generalized(p);
    let show = |r: Result<String, Error>| r.unwrap_or_else(|e| fmt_err(&e));
    match q {
        Quantity::Regularity => (
            regularity_formula(p).to_string(),
            show(betti::regularity_oracle(&ideal, limits).map(|r| r.to_string())),
        ),
        Quantity::Dim => (
            show(dim_formula(p).map(|d| d.to_string())),
            show(dim_oracle(&ideal, limits).map(|d| d.to_string())),
        ),
        Quantity::Unmixed => (
            show(unmixed_predicate(p).map(|b| b.to_string())),
            show(is_unmixed(&ideal, limits).map(|b| b.to_string())),
        ),
        Quantity::Ass => (
            show(ass_formula(p).map(|f| fmt_supports(&f))),
            show(
                ass_oracle(&ideal, limits)
                    .map(|w| fmt_supports(&w.into_iter().map(|x| x.support).collect::<Vec<_>>())),
            ),
        ),
        Quantity::Sortable => (
            "true".into(),
            show(is_sortable(ideal.gens()).map(|b| b.to_string())),
        ),
        Quantity::GbEvidence => (
            "pass".into(),
            show(
                ToricPresentation::new(&ideal)
                    .and_then(|tp| quadratic_gb_evidence(&tp, 3, limits))
                    .map(|e| {
                        if e.passed() {
                            "pass".to_string()
                        } else {
                            format!("{} violations", e.violations.len())
                        }
                    }),
            ),
        ),
        Quantity::Graph(mode, ordered) => {
            let mode = match mode {
                AdjacencyModeKey::Consecutive => AdjacencyMode::Consecutive,
                AdjacencyModeKey::All => AdjacencyMode::AllDistinctBlocks,
            };
            let graph = build_strong_graph(p.structure.clone(), mode);
            let walk = generalized_graph_ideal(&graph, p.t as usize, ordered);
            (
                format!("{} gens", ideal.len()),
                show(walk.map(|w| {
                    if w == ideal {
                        format!("{} gens", w.len())
                    } else {
                        format!("{} gens (differs)", w.len())
                    }
                })),
            )
        }
    }
}

fn jobs(grid: GridSpec) -> Vec<(Quantity, IdealParameters)> {
    let mut jobs = Vec::new();
    // regularity: n in 1..=3, m_i in {1,2}, s in 1..=3, t <= min(sN, 6)
    for b in structures(&[1, 2, 3], &[1, 2]) {
        for p in params_for(&b, &[1, 2, 3], |_, t, _| t <= 6) {
            jobs.push((Quantity::Regularity, p));
        }
    }
    // dimension and unmixedness: regime (b) fully, regime (a) restricted to t <= s*n
    for b in structures(&[2, 3], &[1, 2, 3]) {
        let n = b.len() as u32;
        let n_vars: u32 = b.iter().sum::<usize>() as u32;
        let filter = |t: u32, s: u32| {
            let top = s * n_vars;
            let regime_b = t < top && t + s > top;
            let regime_a = t >= 2 && t + s <= top;
            match grid {
                GridSpec::Small => regime_b || (regime_a && t <= s * n),
                GridSpec::Extended => regime_b || regime_a,
            }
        };
        for p in params_for(&b, &[2, 3], |_, t, s| filter(t, s)) {
            jobs.push((Quantity::Dim, p.clone()));
            jobs.push((Quantity::Unmixed, p));
        }
    }
    // associated primes: N <= 5, s <= 4, r = sN - t in 1..=s-1
    for b in structures_up_to(5) {
        let n_vars: u32 = b.iter().sum::<usize>() as u32;
        for p in params_for(&b, &[2, 3, 4], |_, t, s| {
            t < s * n_vars && t + s > s * n_vars
        }) {
            jobs.push((Quantity::Ass, p));
        }
    }
    // sortability: n <= 3, m_i <= 3, s <= 3
    for b in structures(&[1, 2, 3], &[1, 2, 3]) {
        for p in params_for(&b, &[1, 2, 3], |_, _, _| true) {
            jobs.push((Quantity::Sortable, p));
        }
    }
    for (b, t, s) in [
        (vec![2, 2], 2, 2),
        (vec![2, 2], 4, 2),
        (vec![2, 2, 2], 3, 2),
        (vec![2, 2], 11, 3),
    ] {
        jobs.push((
            Quantity::GbEvidence,
            IdealParameters::from_blocks(&b, t, s).expect("valid instance"),
        ));
    }
    if grid == GridSpec::Extended {
        let modes = [AdjacencyModeKey::All, AdjacencyModeKey::Consecutive];
        for b in structures(&[2, 3], &[1, 2, 3]) {
            let n_vars: u32 = b.iter().sum::<usize>() as u32;
            for p in params_for(&b, &[2], |bl, t, _| {
                t >= 3 && t < 2 * n_vars && (bl.len() == 2 || t <= 5)
            }) {
                for mode in modes {
                    for ordered in [false, true] {
                        jobs.push((Quantity::Graph(mode, ordered), p.clone()));
                    }
                }
            }
        }
    }
    jobs.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    jobs
}

/// Quantity names accepted by [`report_grid`]; `graph` selects every graph variant.
pub const QUANTITIES: [&str; 7] = [
    "regularity",
    "dim",
    "unmixed",
    "ass",
    "sortable",
    "gb-evidence",
    "graph",
];

fn selected(name: &str, only: &[String]) -> bool {
    only.is_empty()
        || only.iter().any(|q| {
            name == q
                || name
                    .strip_prefix(q.as_str())
                    .is_some_and(|rest| rest.starts_with('-'))
        })
}

/// Runs every job of the grid, or only those whose quantity is listed in
/// `only`. Disagreements and guard trips become rows.
pub fn report_grid(
    grid: GridSpec,
    limits: &Limits,
    timings: bool,
    only: &[String],
) -> Result<GridReport, Error> {
    if let Some(bad) = only.iter().find(|q| !QUANTITIES.contains(&q.as_str())) {
        return Err(Error::Parameter(format!(
            "unknown quantity {bad:?}; expected one of {}",
            QUANTITIES.join(", ")
        )));
    }
    let rows = jobs(grid)
        .into_iter()
        .filter(|(q, _)| selected(&q.name(), only))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(q, p)| {
            let start = Instant::now();
            let (formula, oracle) = evaluate(q, &p, limits);
            let elapsed = start.elapsed().as_millis() as u64;
            let blocks = p
                .structure
                .sizes()
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",");
            Row {
                blocks,
                t: p.t,
                s: p.s,
                quantity: q.name(),
                agree: formula == oracle,
                formula,
                oracle,
                runtime_millis: timings.then_some(elapsed),
            }
        })
        .collect();
    Ok(GridReport { rows })
}
