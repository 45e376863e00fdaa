//! The compatibility graph on alternating trees and its clique structure.
//!
//! Vertices are all (or all positive) alternating trees on `[n]`; edges join
//! sign-compatible pairs. Maximal cliques are the candidate labels for
//! resonance chambers; classifying them by indexability recovers the chamber
//! count independently of the arrangement pipeline.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::flows::is_indexable;
use crate::subset::SubsetMask;
use crate::tree::{enumerate_alternating_trees, enumerate_positive_alternating_trees, AlternatingTree};
use crate::{Error, Result};

/// Vertex count cutoff beyond which graph construction must be explicitly
/// allowed: the full graph on `[7]` already has 33,614 vertices and half a
/// billion candidate pairs.
pub const LARGE_GRAPH_THRESHOLD: usize = 7;

/// Compatibility graph over the alternating trees on `[n]`, with a bitset
/// adjacency matrix and packed sign vectors per vertex.
pub struct CompatGraph {
    n: usize,
    positive_only: bool,
    vertices: Vec<AlternatingTree>,
    adjacency: Vec<Vec<u64>>,
}

impl CompatGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positive_only(&self) -> bool {
        self.positive_only
    }

    pub fn vertices(&self) -> &[AlternatingTree] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices
            .iter()
            .enumerate()
            .map(|(v, _)| self.degree(v))
            .sum::<usize>()
            / 2
    }

    fn neighbors_row(&self, v: usize) -> &[u64] {
        &self.adjacency[v]
    }
}

/// Builds the compatibility graph for `n` from the canonical tree
/// enumeration; adjacency is sign compatibility.
pub fn build_compatibility_graph(
    n: usize,
    positive_only: bool,
    allow_large: bool,
) -> Result<CompatGraph> {
    if n < 2 {
        return Err(Error::bounds(format!("compatibility graph needs n >= 2, got {n}")));
    }
    if n >= LARGE_GRAPH_THRESHOLD && !allow_large {
        return Err(Error::bounds(format!(
            "compatibility graph on [{n}] is a long-running build; pass allow_large"
        )));
    }
    let vertices = if positive_only {
        enumerate_positive_alternating_trees(n)?
    } else {
        enumerate_alternating_trees(n)?
    };
    let packed_signs: Vec<(u64, u64)> = vertices
        .par_iter()
        .map(|t| t.sign_vector().packed())
        .collect();
    let count = vertices.len();
    let words = count.div_ceil(64);
    let adjacency: Vec<Vec<u64>> = (0..count)
        .into_par_iter()
        .map(|a| {
            let (pa, ma) = packed_signs[a];
            let mut row = vec![0u64; words];
            for b in 0..count {
                if b != a {
                    let (pb, mb) = packed_signs[b];
                    if (pa & mb) | (ma & pb) == 0 {
                        row[b / 64] |= 1 << (b % 64);
                    }
                }
            }
            row
        })
        .collect();
    Ok(CompatGraph {
        n,
        positive_only,
        vertices,
        adjacency,
    })
}

/// Connected components as sorted vertex-index lists, ordered by smallest
/// member.
pub fn connected_components(g: &CompatGraph) -> Vec<Vec<usize>> {
    let count = g.vertex_count();
    let mut seen = vec![false; count];
    let mut components = Vec::new();
    for start in 0..count {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for (w, &word) in g.neighbors_row(v).iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let b = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    components
}

/// Multiset of component sizes, for structure checks.
pub fn component_size_counts(g: &CompatGraph) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for c in connected_components(g) {
        *counts.entry(c.len()).or_insert(0) += 1;
    }
    counts
}

struct BronKerbosch<'a> {
    g: &'a CompatGraph,
    members: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl BronKerbosch<'_> {
    fn run(&mut self, r: &mut Vec<usize>, p: Vec<u64>, x: Vec<u64>) {
        if p.iter().all(|&w| w == 0) && x.iter().all(|&w| w == 0) {
            self.out.push(r.iter().map(|&i| self.members[i]).collect());
            return;
        }
        // greedy pivot: candidate from P ∪ X with most neighbors in P
        let mut pivot = usize::MAX;
        let mut best = usize::MAX;
        for w in 0..p.len() {
            let mut bits = p[w] | x[w];
            while bits != 0 {
                let v = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let nb = self.row(v);
                let missing: usize = p
                    .iter()
                    .zip(&nb)
                    .map(|(&pw, &nw)| (pw & !nw).count_ones() as usize)
                    .sum();
                if missing < best {
                    best = missing;
                    pivot = v;
                }
            }
        }
        let pivot_row = if pivot == usize::MAX {
            vec![0u64; p.len()]
        } else {
            self.row(pivot)
        };
        // iterate P minus N(pivot) in ascending order for determinism
        let mut candidates = Vec::new();
        for w in 0..p.len() {
            let mut bits = p[w] & !pivot_row[w];
            while bits != 0 {
                candidates.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        let mut p = p;
        let mut x = x;
        for v in candidates {
            let nb = self.row(v);
            let np: Vec<u64> = p.iter().zip(&nb).map(|(&a, &b)| a & b).collect();
            let nx: Vec<u64> = x.iter().zip(&nb).map(|(&a, &b)| a & b).collect();
            r.push(v);
            self.run(r, np, nx);
            r.pop();
            p[v / 64] &= !(1 << (v % 64));
            x[v / 64] |= 1 << (v % 64);
        }
    }

    /// Adjacency of local vertex `v` restricted to the component, in local
    /// indexing.
    fn row(&self, v: usize) -> Vec<u64> {
        let words = self.members.len().div_ceil(64);
        let mut row = vec![0u64; words];
        let global = self.g.neighbors_row(self.members[v]);
        for (local, &m) in self.members.iter().enumerate() {
            if global[m / 64] >> (m % 64) & 1 == 1 {
                row[local / 64] |= 1 << (local % 64);
            }
        }
        row
    }
}

/// All maximal cliques, component by component, as sorted vertex-index
/// lists in canonical order.
pub fn enumerate_maximal_cliques(g: &CompatGraph) -> Vec<Vec<usize>> {
    let components = connected_components(g);
    let mut cliques: Vec<Vec<usize>> = components
        .into_par_iter()
        .flat_map(|members| {
            let words = members.len().div_ceil(64);
            let mut p = vec![0u64; words];
            for i in 0..members.len() {
                p[i / 64] |= 1 << (i % 64);
            }
            let mut bk = BronKerbosch {
                g,
                members,
                out: Vec::new(),
            };
            bk.run(&mut Vec::new(), p, vec![0u64; words]);
            let mut local: Vec<Vec<usize>> = bk
                .out
                .into_iter()
                .map(|mut c| {
                    c.sort_unstable();
                    c
                })
                .collect();
            local.sort();
            local
        })
        .collect();
    cliques.sort();
    cliques
}

/// Classification of every maximal clique by indexability, with counts per
/// common source set.
#[derive(Clone, Debug, Serialize)]
pub struct CliqueReport {
    pub n: usize,
    pub positive_only: bool,
    pub clique_count: usize,
    pub indexable_count: usize,
    /// cliques (vertex-index lists) in canonical order
    #[serde(skip)]
    pub cliques: Vec<Vec<usize>>,
    /// parallel to `cliques`
    #[serde(skip)]
    pub indexable_flags: Vec<bool>,
    /// indexable collections per common source set among `[n-1]`
    pub per_source_set: BTreeMap<String, usize>,
    #[serde(skip)]
    pub per_source_mask: BTreeMap<u32, usize>,
}

/// Runs the indexability LP on every maximal clique of the graph.
///
/// Every clique's trees share one source set (vertices that disagree on a
/// singleton sign are incompatible), which keys the per-source-set counts.
pub fn classify_cliques(g: &CompatGraph) -> Result<CliqueReport> {
    let cliques = enumerate_maximal_cliques(g);
    let flags: Vec<bool> = cliques
        .par_iter()
        .map(|c| {
            let trees: Vec<AlternatingTree> =
                c.iter().map(|&v| g.vertices()[v].clone()).collect();
            is_indexable(&trees)
        })
        .collect::<Result<Vec<bool>>>()?;
    let mut per_source_mask: BTreeMap<u32, usize> = BTreeMap::new();
    for (clique, &ok) in cliques.iter().zip(&flags) {
        if !ok {
            continue;
        }
        let first = &g.vertices()[clique[0]];
        let key = first.sources_among_first();
        debug_assert!(clique
            .iter()
            .all(|&v| g.vertices()[v].sources_among_first() == key));
        *per_source_mask.entry(key.bits()).or_insert(0) += 1;
    }
    let per_source_set = per_source_mask
        .iter()
        .map(|(&bits, &count)| {
            (
                SubsetMask::from_bits(bits, g.n() - 1).unwrap().to_string(),
                count,
            )
        })
        .collect();
    let indexable_count = flags.iter().filter(|&&f| f).count();
    Ok(CliqueReport {
        n: g.n(),
        positive_only: g.positive_only(),
        clique_count: cliques.len(),
        indexable_count,
        cliques,
        indexable_flags: flags,
        per_source_set,
        per_source_mask,
    })
}

/// Per-cardinality summary of the source-set decomposition: for each
/// `k = |I|`, the component count of the subgraph with source set `[k]`,
/// its maximal clique count `h_k`, and the count of indexable collections.
#[derive(Clone, Debug, Serialize)]
pub struct SourceSetRow {
    pub k: usize,
    pub component_count: usize,
    pub h_k: usize,
    pub indexable: usize,
}

/// Decomposes a full graph by source set among `[n-1]` and verifies the
/// permutation and complement symmetries of the per-set counts.
pub fn source_set_decomposition(g: &CompatGraph, report: &CliqueReport) -> Result<Vec<SourceSetRow>> {
    if g.positive_only() {
        return Err(Error::domain(
            "source-set decomposition applies to the full graph".to_string(),
        ));
    }
    let n = g.n();
    // indexable collections per source set I (not just per cardinality)
    let per_mask = &report.per_source_mask;
    // symmetry: |In^I| depends only on |I|, and equals |In^([n-1]-I)|
    for s in SubsetMask::all_subsets(n - 1) {
        let count = per_mask.get(&s.bits()).copied().unwrap_or(0);
        let prefix = SubsetMask::prefix(s.len(), n - 1)?;
        let of_prefix = per_mask.get(&prefix.bits()).copied().unwrap_or(0);
        if count != of_prefix {
            return Err(Error::invariant(format!(
                "source-set symmetry broken: {s} has {count}, {prefix} has {of_prefix}"
            )));
        }
        let comp = s.complement(n - 1);
        let of_comp = per_mask.get(&comp.bits()).copied().unwrap_or(0);
        if count != of_comp {
            return Err(Error::invariant(format!(
                "complement symmetry broken: {s} has {count}, {comp} has {of_comp}"
            )));
        }
    }

    // h_k and component counts come from the subgraph with source set [k],
    // which is a union of connected components of the full graph
    let components = connected_components(g);
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let key = SubsetMask::prefix(k, n - 1)?;
        let component_count = components
            .iter()
            .filter(|c| g.vertices()[c[0]].sources_among_first() == key)
            .count();
        let h_k = report
            .cliques
            .iter()
            .filter(|c| g.vertices()[c[0]].sources_among_first() == key)
            .count();
        let indexable = per_mask.get(&key.bits()).copied().unwrap_or(0);
        if indexable > h_k {
            return Err(Error::invariant(format!(
                "more indexable collections than cliques at k={k}"
            )));
        }
        rows.push(SourceSetRow {
            k,
            component_count,
            h_k,
            indexable,
        });
    }
    Ok(rows)
}

/// DOT export with trees as vertex labels, one cluster per connected
/// component.
pub fn to_dot(g: &CompatGraph) -> String {
    let mut out = String::from("graph compatibility {\n");
    for (cid, comp) in connected_components(g).iter().enumerate() {
        out.push_str(&format!("  subgraph cluster_{cid} {{\n"));
        for &v in comp {
            out.push_str(&format!("    v{v} [label=\"{}\"];\n", g.vertices()[v]));
        }
        for &v in comp {
            for &w in comp {
                if v < w && g.adjacent(v, w) {
                    out.push_str(&format!("    v{v} -- v{w};\n"));
                }
            }
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
