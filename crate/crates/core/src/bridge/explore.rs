use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{check_intertwining, polygon_seed, BridgeError};
use crate::cluster::{dynkin_type, has_kronecker, DynkinType, SearchStatus};
use crate::lattice::LatticeVector;
use crate::mutation::{combinatorial_mutate, MutationError};
use crate::polygon::FanoPolytope;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExploreOptions {
    pub max_nodes: usize,
    pub max_coord: BigInt,
    /// Worker threads for expanding a BFS level; 1 runs inline.
    pub jobs: usize,
    /// Check seed intertwining and singularity content on every mutation.
    pub verify: bool,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { max_nodes: 10_000, max_coord: BigInt::from(1_000_000), jobs: 1, verify: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    /// Unfrozen index of `from`'s polygon seed (first copy of its edge).
    pub index: usize,
    /// Number of unfrozen indices sharing that edge.
    pub multiplicity: usize,
}

/// Polygons mutation-equivalent to a start polygon, in canonical form, in
/// breadth-first discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationGraph {
    pub nodes: Vec<FanoPolytope>,
    pub depth: Vec<usize>,
    pub edges: Vec<GraphEdge>,
    pub status: SearchStatus,
}

impl MutationGraph {
    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }
}

type Expansion = Vec<(usize, usize, FanoPolytope)>;

fn expand(p: &FanoPolytope, verify: bool) -> Result<Expansion, BridgeError> {
    let seed = polygon_seed(p)?;
    let content = if verify { Some(p.singularity_content()?) } else { None };
    let mut out = Vec::new();
    for k in seed.edge_representatives() {
        let mult = seed.edge_of.iter().filter(|&&e| e == seed.edge_of[k]).count();
        let q = match combinatorial_mutate(p, &seed.mutation_data(k)?) {
            Ok(q) => q,
            Err(MutationError::NotConvex) => continue,
            Err(e) => return Err(e.into()),
        };
        if let Some(c) = &content {
            check_intertwining(&seed, k, &polygon_seed(&q)?)?;
            if !q.singularity_content()?.equivalent(c) {
                return Err(BridgeError::InvariantViolation(format!("singularity content changed: {p} -> {q}")));
            }
        }
        out.push((k, mult, q.canonical_form()?.0));
    }
    Ok(out)
}

/// Breadth-first exploration of the mutation class of a Fano polygon up to
/// GL(2,Z), over every edge carrying a T-cone.
///
/// Stops with [`SearchStatus::Exceeded`] when a node beyond `max_nodes` or a
/// canonical coordinate beyond `max_coord` appears. Levels are expanded in
/// parallel and merged in a fixed order, so the result does not depend on
/// `jobs`.
pub fn polygon_mutation_graph(p: &FanoPolytope, opts: &ExploreOptions) -> Result<MutationGraph, BridgeError> {
    let start = p.canonical_form()?.0;
    let mut index: HashMap<Vec<LatticeVector>, usize> = HashMap::from([(start.vertices().to_vec(), 0)]);
    let mut g = MutationGraph { nodes: vec![start], depth: vec![0], edges: Vec::new(), status: SearchStatus::Complete };
    if g.nodes[0].max_abs_coord() > opts.max_coord {
        g.status = SearchStatus::Exceeded;
        return Ok(g);
    }
    let pool = if opts.jobs > 1 {
        Some(rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().expect("thread pool"))
    } else {
        None
    };
    let mut frontier = vec![0usize];
    let mut level = 0;
    while !frontier.is_empty() {
        level += 1;
        let nodes = &g.nodes;
        let results: Vec<Result<Expansion, BridgeError>> = match &pool {
            Some(pool) => pool.install(|| frontier.par_iter().map(|&i| expand(&nodes[i], opts.verify)).collect()),
            None => frontier.iter().map(|&i| expand(&nodes[i], opts.verify)).collect(),
        };
        let mut next = Vec::new();
        for (&from, res) in frontier.iter().zip(results) {
            for (k, mult, q) in res? {
                let to = match index.get(q.vertices()) {
                    Some(&to) => to,
                    None => {
                        if g.nodes.len() >= opts.max_nodes || q.max_abs_coord() > opts.max_coord {
                            g.status = SearchStatus::Exceeded;
                            return Ok(g);
                        }
                        let to = g.nodes.len();
                        index.insert(q.vertices().to_vec(), to);
                        g.nodes.push(q);
                        g.depth.push(level);
                        next.push(to);
                        to
                    }
                };
                g.edges.push(GraphEdge { from, to, index: k, multiplicity: mult });
            }
        }
        frontier = next;
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Finite,
    Infinite,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Finite => "finite",
            Verdict::Infinite => "infinite",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub explore: ExploreOptions,
    /// Cutoff for the quiver mutation-class search.
    pub quiver_cutoff: usize,
    /// Report `Infinite` straight away when the quiver has a Kronecker pair.
    pub kronecker_fast_path: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { explore: ExploreOptions::default(), quiver_cutoff: 1000, kronecker_fast_path: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTypeReport {
    pub quiver_type: DynkinType,
    pub has_kronecker: bool,
    /// Number of polygons found, or `None` if the search was skipped.
    pub class_size: Option<usize>,
    pub class_status: Option<SearchStatus>,
    pub verdict: Verdict,
    pub fast_path: bool,
}

/// Finite-type verdict from the quiver type and the polygon search.
///
/// Finite needs a Dynkin type from the list and a complete search; a
/// Dynkin type with an exhausted search is inconclusive, as is a complete
/// search with no type found.
pub fn classify(p: &FanoPolytope, opts: &ClassifyOptions) -> Result<FiniteTypeReport, BridgeError> {
    let seed = polygon_seed(p)?;
    let quiver_type = dynkin_type(&seed.quiver, opts.quiver_cutoff)?;
    let kron = has_kronecker(&seed.quiver);
    if kron && opts.kronecker_fast_path {
        return Ok(FiniteTypeReport {
            quiver_type,
            has_kronecker: true,
            class_size: None,
            class_status: None,
            verdict: Verdict::Infinite,
            fast_path: true,
        });
    }
    let g = polygon_mutation_graph(p, &opts.explore)?;
    let verdict = match (quiver_type.is_finite(), g.status) {
        (true, SearchStatus::Complete) => Verdict::Finite,
        (false, SearchStatus::Exceeded) => Verdict::Infinite,
        _ => Verdict::Inconclusive,
    };
    Ok(FiniteTypeReport {
        quiver_type,
        has_kronecker: kron,
        class_size: Some(g.nodes.len()),
        class_status: Some(g.status),
        verdict,
        fast_path: false,
    })
}
