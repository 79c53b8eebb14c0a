//! Strong quasi-n-partite graphs with loops, their walks and the generalized
//! graph ideals `I_t(G)` generated by the vertex multidegrees of walks of
//! length `t - 1`.
//!
//! A walk monomial keeps every exponent at most 2 and involves every block;
//! walks violating either are discarded. Two knobs select how literally the
//! graph definitions are read: which block pairs are joined by edges
//! ([`AdjacencyMode`]) and whether block indices must be nondecreasing along
//! a walk (`ordered`).

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{BlockStructure, Exp};

/// Largest exponent a walk monomial may carry.
pub const WALK_EXPONENT_CAP: Exp = 2;

/// Which pairs of distinct blocks are completely joined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdjacencyMode {
    /// Only blocks `i` and `i + 1`.
    Consecutive,
    /// Every pair of distinct blocks.
    #[default]
    AllDistinctBlocks,
}

impl std::str::FromStr for AdjacencyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "consecutive" => Ok(AdjacencyMode::Consecutive),
            "all" | "all-distinct-blocks" => Ok(AdjacencyMode::AllDistinctBlocks),
            other => Err(Error::Parameter(format!(
                "unknown adjacency mode {other:?}"
            ))),
        }
    }
}

/// An undirected graph on the flattened variables, loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopGraph {
    structure: Arc<BlockStructure>,
    /// Edges `(u, v)` with `u <= v`; `(v, v)` is a loop.
    edges: BTreeSet<(usize, usize)>,
    mode: AdjacencyMode,
}

impl LoopGraph {
    /// A graph from explicit edges; edges inside one block must be loops.
    pub fn new(
        structure: Arc<BlockStructure>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        mode: AdjacencyMode,
    ) -> Result<Self> {
        let n = structure.n_vars();
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) leaves the vertex set"
                )));
            }
            let (a, b) = (u.min(v), u.max(v));
            let (ba, bb) = (structure.block_of(a), structure.block_of(b));
            if a != b && ba == bb {
                return Err(Error::Parameter(format!(
                    "edge {}-{} joins one block",
                    structure.var_name(a),
                    structure.var_name(b)
                )));
            }
            if a != b && mode == AdjacencyMode::Consecutive && ba.abs_diff(bb) != 1 {
                return Err(Error::Parameter(format!(
                    "edge {}-{} skips a block",
                    structure.var_name(a),
                    structure.var_name(b)
                )));
            }
            set.insert((a, b));
        }
        Ok(LoopGraph {
            structure,
            edges: set,
            mode,
        })
    }

    pub fn structure(&self) -> &Arc<BlockStructure> {
        &self.structure
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn mode(&self) -> AdjacencyMode {
        self.mode
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.structure.n_vars()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            if a != b {
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Edges printed with variable names.
    pub fn named_edges(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.structure.var_name(a), self.structure.var_name(b)))
            .collect()
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for k in 0..self.structure.n_vars() {
            out.push_str(&format!("  {};\n", self.structure.var_name(k)));
        }
        for (a, b) in self.named_edges() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// `K'_{m_1,...,m_n}`: a loop at every vertex, and every vertex pair from
/// admissible distinct blocks joined.
pub fn build_strong_graph(structure: Arc<BlockStructure>, mode: AdjacencyMode) -> LoopGraph {
    let n = structure.n_vars();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a..n {
            let (ba, bb) = (structure.block_of(a), structure.block_of(b));
            let joined = match mode {
                _ if a == b => true,
                _ if ba == bb => false,
                AdjacencyMode::Consecutive => ba.abs_diff(bb) == 1,
                AdjacencyMode::AllDistinctBlocks => true,
            };
            if joined {
                edges.push((a, b));
            }
        }
    }
    LoopGraph::new(structure, edges, mode).expect("strong graph edges are admissible")
}

/// Vertex multidegrees of the walks with `length` edges that involve every
/// block and visit no vertex more than twice. With `ordered`, the block index
/// may not decrease along the walk.
pub fn walk_monomials(
    graph: &LoopGraph,
    length: usize,
    ordered: bool,
) -> Result<BTreeSet<Vec<Exp>>> {
    if length == 0 {
        return Err(Error::Parameter("walk length must be at least 1".into()));
    }
    let structure = &graph.structure;
    let adj = graph.neighbours();
    let n_blocks = structure.n_blocks();
    let found: Vec<BTreeSet<Vec<Exp>>> = (0..structure.n_vars())
        .into_par_iter()
        .map(|start| {
            let mut out = BTreeSet::new();
            let mut counts = vec![0 as Exp; structure.n_vars()];
            let mut per_block = vec![0usize; n_blocks];
            counts[start] = 1;
            per_block[structure.block_of(start)] = 1;
            extend_walk(
                graph,
                &adj,
                start,
                length,
                ordered,
                &mut counts,
                &mut per_block,
                &mut out,
            );
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

#[allow(clippy::too_many_arguments)]
fn extend_walk(
    graph: &LoopGraph,
    adj: &[Vec<usize>],
    at: usize,
    left: usize,
    ordered: bool,
    counts: &mut [Exp],
    per_block: &mut [usize],
    out: &mut BTreeSet<Vec<Exp>>,
) {
    if left == 0 {
        if per_block.iter().all(|&c| c > 0) {
            out.insert(counts.to_vec());
        }
        return;
    }
    let structure = &graph.structure;
    let here = structure.block_of(at);
    // unreachable blocks: in ordered mode, blocks below the current one can never be visited again
    if ordered && per_block[..here].contains(&0) {
        return;
    }
    let missing = per_block.iter().filter(|&&c| c == 0).count();
    if missing > left {
        return;
    }
    for &next in &adj[at] {
        if counts[next] >= WALK_EXPONENT_CAP {
            continue;
        }
        let b = structure.block_of(next);
        if ordered && b < here {
            continue;
        }
        counts[next] += 1;
        per_block[b] += 1;
        extend_walk(graph, adj, next, left - 1, ordered, counts, per_block, out);
        counts[next] -= 1;
        per_block[b] -= 1;
    }
}

/// `I_t(G)`, generated by the walk monomials of length `t - 1`.
pub fn generalized_graph_ideal(
    graph: &LoopGraph,
    t: usize,
    ordered: bool,
) -> Result<MonomialIdeal> {
    if t < 3 {
        return Err(Error::Parameter(format!(
            "generalized graph ideals need t >= 3, got {t}; use the edge ideal for t = 2"
        )));
    }
    let monomials = walk_monomials(graph, t - 1, ordered)?;
    Ok(MonomialIdeal::from_raw(
        graph.structure.clone(),
        monomials.into_iter().collect(),
    ))
}

/// `I(G)`: one quadratic generator per edge or loop.
pub fn edge_ideal(graph: &LoopGraph) -> MonomialIdeal {
    let n = graph.structure.n_vars();
    let raw = graph
        .edges
        .iter()
        .map(|&(a, b)| {
            let mut e = vec![0; n];
            e[a] += 1;
            e[b] += 1;
            e
        })
        .collect();
    MonomialIdeal::from_raw(graph.structure.clone(), raw)
}
