//! Dependency graphs and syntactic program classes.

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::syntax::{eliminate_constraints, AtomId, AtomTable, Program};

/// Edge `(p, q)` means head atom `p` depends on body atom `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyGraph {
    /// Table of the constraint-free program the edges were computed on.
    pub atoms: AtomTable,
    pub pos_edges: BTreeSet<(AtomId, AtomId)>,
    pub neg_edges: BTreeSet<(AtomId, AtomId)>,
}

impl DependencyGraph {
    pub fn nodes(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.atoms.ids()
    }

    pub fn named_edges(&self, negative: bool) -> Vec<(String, String)> {
        let edges = if negative {
            &self.neg_edges
        } else {
            &self.pos_edges
        };
        edges
            .iter()
            .map(|&(p, q)| {
                (
                    self.atoms.name(p).to_string(),
                    self.atoms.name(q).to_string(),
                )
            })
            .collect()
    }

    /// Strongly connected component index per atom, over the selected edges.
    fn components(&self, include_negative: bool) -> Vec<usize> {
        let n = self.atoms.len();
        let mut g = DiGraph::<(), ()>::with_capacity(n, self.pos_edges.len());
        for _ in 0..n {
            g.add_node(());
        }
        let edges = self
            .pos_edges
            .iter()
            .chain(self.neg_edges.iter().filter(|_| include_negative));
        for &(p, q) in edges {
            g.add_edge(NodeIndex::new(p.index()), NodeIndex::new(q.index()), ());
        }
        let mut comp = vec![0; n];
        for (k, scc) in tarjan_scc(&g).into_iter().enumerate() {
            for node in scc {
                comp[node.index()] = k;
            }
        }
        comp
    }

    /// Does some cycle pass through a negative edge?
    pub fn has_negative_cycle(&self) -> bool {
        let comp = self.components(true);
        self.neg_edges
            .iter()
            .any(|&(p, q)| comp[p.index()] == comp[q.index()])
    }

    /// Does some cycle contain an odd number of negative edges?
    ///
    /// Within each strongly connected component, label atoms with the parity of
    /// negative edges on a path from a root; the component has an odd cycle iff
    /// some internal edge contradicts the labelling.
    pub fn has_odd_cycle(&self) -> bool {
        let n = self.atoms.len();
        let comp = self.components(true);
        let mut out: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
        let weighted = self
            .pos_edges
            .iter()
            .map(|e| (e, 0u8))
            .chain(self.neg_edges.iter().map(|e| (e, 1u8)));
        for (&(p, q), w) in weighted {
            if comp[p.index()] == comp[q.index()] {
                out[p.index()].push((q.index(), w));
            }
        }
        let mut parity: Vec<Option<u8>> = vec![None; n];
        for root in 0..n {
            if parity[root].is_some() {
                continue;
            }
            parity[root] = Some(0);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let pu = parity[u].unwrap();
                for &(v, w) in &out[u] {
                    match parity[v] {
                        None => {
                            parity[v] = Some(pu ^ w);
                            stack.push(v);
                        }
                        Some(pv) if pv != pu ^ w => return true,
                        Some(_) => {}
                    }
                }
            }
        }
        false
    }
}

/// Dependency graph of `p` after constraint elimination.
pub fn dependency_graph(p: &Program) -> DependencyGraph {
    let p = eliminate_constraints(p);
    let mut pos_edges = BTreeSet::new();
    let mut neg_edges = BTreeSet::new();
    for r in p.rules() {
        for &h in r.head() {
            pos_edges.extend(r.pos_body().iter().map(|&q| (h, q)));
            neg_edges.extend(r.neg_body().iter().map(|&q| (h, q)));
        }
    }
    DependencyGraph {
        atoms: p.atoms().clone(),
        pos_edges,
        neg_edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub is_normal: bool,
    pub is_positive: bool,
    pub is_stratified: bool,
    pub is_odd_cycle_free: bool,
    pub is_head_cycle_free: bool,
    pub is_definite_horn: bool,
}

impl ClassReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Normality, positivity and Horn-ness are read off the rules as written;
/// the cycle-based classes are computed on the constraint-eliminated program.
pub fn classify(p: &Program) -> ClassReport {
    let is_normal = p.rules().iter().all(|r| r.is_normal());
    let is_positive = p.rules().iter().all(|r| r.is_positive());
    let is_definite_horn =
        is_normal && is_positive && p.rules().iter().all(|r| r.head().len() == 1);

    let graph = dependency_graph(p);
    let positive_comp = graph.components(false);
    let is_head_cycle_free = p.rules().iter().all(|r| {
        let head = r.head();
        head.iter().enumerate().all(|(i, a)| {
            head[i + 1..]
                .iter()
                .all(|b| positive_comp[a.index()] != positive_comp[b.index()])
        })
    });

    ClassReport {
        is_normal,
        is_positive,
        is_stratified: !graph.has_negative_cycle(),
        is_odd_cycle_free: !graph.has_odd_cycle(),
        is_head_cycle_free,
        is_definite_horn,
    }
}
