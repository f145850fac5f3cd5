//! Activity-growth classification from the cycle structure of the
//! non-trivial part of an automaton.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::algebra::{minimize, trivial_classes};
use crate::automaton::{Automaton, StateId, Transformation};
use crate::error::Result;

pub const POWER_ITERATION_STEPS: usize = 10_000;
pub const POWER_ITERATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthClass {
    Bounded,
    /// `NS(g, l)` grows like `l^degree`, `degree >= 1`.
    Polynomial(usize),
    /// `NS(g, l)` grows like `rate^l`.
    Exponential(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthReport {
    pub class: GrowthClass,
}

impl GrowthReport {
    pub fn degree(&self) -> Option<usize> {
        match self.class {
            GrowthClass::Polynomial(d) => Some(d),
            _ => None,
        }
    }

    pub fn rate(&self) -> Option<f64> {
        match self.class {
            GrowthClass::Exponential(r) => Some(r),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self.class {
            GrowthClass::Bounded => "bounded",
            GrowthClass::Polynomial(_) => "polynomial",
            GrowthClass::Exponential(_) => "exponential",
        }
    }
}

/// Sub-automaton of live states reachable from `start`, as a multigraph.
pub(crate) struct LiveGraph {
    pub states: Vec<StateId>,
    /// `edges[i]` lists local targets, one entry per letter.
    pub edges: Vec<Vec<usize>>,
}

pub(crate) fn live_graph(a: &Automaton, start: StateId, live: &[bool]) -> LiveGraph {
    let mut local = vec![usize::MAX; a.num_states()];
    let mut states = Vec::new();
    if live[start] {
        local[start] = 0;
        states.push(start);
        let mut queue = VecDeque::from([start]);
        while let Some(q) = queue.pop_front() {
            for &t in a.next_row(q) {
                if live[t] && local[t] == usize::MAX {
                    local[t] = states.len();
                    states.push(t);
                    queue.push_back(t);
                }
            }
        }
    }
    let edges = states
        .iter()
        .map(|&q| {
            a.next_row(q)
                .iter()
                .filter(|&&t| live[t])
                .map(|&t| local[t])
                .collect()
        })
        .collect();
    LiveGraph { states, edges }
}

/// Strongly connected components in reverse topological order.
fn strongly_connected(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut graph = DiGraph::<(), ()>::from_edges(
        edges
            .iter()
            .enumerate()
            .flat_map(|(v, ts)| ts.iter().map(move |&t| (v as u32, t as u32))),
    );
    // vertices without edges are not created by `from_edges`
    while graph.node_count() < edges.len() {
        graph.add_node(());
    }
    tarjan_scc(&graph)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v.index()).collect())
        .collect()
}

/// Spectral radius of the live adjacency (with letter multiplicity) seen
/// from the start state, by power iteration on `M + I`.
pub(crate) fn estimate_rate(graph: &LiveGraph) -> f64 {
    let n = graph.states.len();
    if n == 0 {
        return 0.0;
    }
    let mut v = vec![0.0; n];
    v[0] = 1.0;
    let mut estimate = f64::NAN;
    for _ in 0..POWER_ITERATION_STEPS {
        let mut u = v.clone();
        for (q, targets) in graph.edges.iter().enumerate() {
            for &t in targets {
                u[t] += v[q];
            }
        }
        let norm: f64 = u.iter().sum();
        let next = norm - 1.0;
        u.iter_mut().for_each(|x| *x /= norm);
        // the scalar alone can repeat before the vector has settled
        let drift = u
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = u;
        if (next - estimate).abs() < POWER_ITERATION_TOLERANCE && drift < POWER_ITERATION_TOLERANCE
        {
            return next;
        }
        estimate = next;
    }
    estimate
}

/// Classifies the growth of `NS(g, l)` on the minimized automaton.
///
/// Exponential iff some reachable non-trivial state lies on two distinct
/// cycles; otherwise the degree is one less than the largest number of
/// cycles met along a path. Truncated materializations are classified as
/// given.
pub fn classify_growth(g: &Transformation) -> Result<GrowthReport> {
    let min = minimize(g.automaton());
    let live: Vec<bool> = trivial_classes(&min.automaton).iter().map(|t| !t).collect();
    let graph = live_graph(&min.automaton, min.class_of[g.initial()], &live);
    let k = g.alphabet().size();

    let components = strongly_connected(&graph.edges);
    let mut comp_of = vec![0; graph.states.len()];
    for (c, members) in components.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }

    let mut cyclic = vec![false; components.len()];
    for (c, members) in components.iter().enumerate() {
        let internal: usize = members
            .iter()
            .map(|&v| graph.edges[v].iter().filter(|&&t| comp_of[t] == c).count())
            .sum();
        if internal > members.len() {
            let core = super::membership::full_degree_core_reachable(&graph, k);
            let rate = if core {
                k as f64
            } else {
                estimate_rate(&graph).min(k as f64)
            };
            return Ok(GrowthReport {
                class: GrowthClass::Exponential(rate),
            });
        }
        cyclic[c] = internal > 0;
    }

    // components are in reverse topological order: successors come first
    let mut best = vec![0usize; components.len()];
    for (c, members) in components.iter().enumerate() {
        let downstream = members
            .iter()
            .flat_map(|&v| graph.edges[v].iter().map(|&t| comp_of[t]))
            .filter(|&d| d != c)
            .map(|d| best[d])
            .max()
            .unwrap_or(0);
        best[c] = downstream + usize::from(cyclic[c]);
    }
    let cycles = best.iter().copied().max().unwrap_or(0);
    let class = if cycles <= 1 {
        GrowthClass::Bounded
    } else {
        GrowthClass::Polynomial(cycles - 1)
    };
    Ok(GrowthReport { class })
}
