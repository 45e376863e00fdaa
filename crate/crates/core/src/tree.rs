use std::fmt;
use std::str::FromStr;

use crate::sign::{TreeSign, TreeSignVector};
use crate::subset::SubsetMask;
use crate::{Error, Result};

/// Largest vertex count accepted by the tree enumerators. `n = 9` already
/// produces 9,565,938 trees; anything larger is a memory hazard.
pub const MAX_TREE_VERTICES: usize = 9;

/// A directed tree on `[n]` in which every vertex is a pure source or a
/// pure sink. Arcs are kept sorted lexicographically; `sources` records the
/// source vertices as a mask over `[n]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AlternatingTree {
    n: usize,
    arcs: Vec<(u8, u8)>,
    sources: SubsetMask,
}

impl AlternatingTree {
    /// Validates and canonicalizes an arc list into an alternating tree.
    pub fn new(n: usize, mut arcs: Vec<(u8, u8)>) -> Result<Self> {
        if n < 2 || n > MAX_TREE_VERTICES {
            return Err(Error::bounds(format!(
                "vertex count {n} outside supported range 2..={MAX_TREE_VERTICES}"
            )));
        }
        if arcs.len() != n - 1 {
            return Err(Error::structural(format!(
                "a tree on [{n}] needs {} arcs, got {}",
                n - 1,
                arcs.len()
            )));
        }
        arcs.sort_unstable();
        let mut out_deg = vec![0usize; n + 1];
        let mut in_deg = vec![0usize; n + 1];
        let mut dsu: Vec<usize> = (0..=n).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                let r = find(dsu, dsu[x]);
                dsu[x] = r;
            }
            dsu[x]
        }
        for &(i, j) in &arcs {
            let (i, j) = (i as usize, j as usize);
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::structural(format!("invalid arc ({i},{j}) on [{n}]")));
            }
            out_deg[i] += 1;
            in_deg[j] += 1;
            let (ri, rj) = (find(&mut dsu, i), find(&mut dsu, j));
            if ri == rj {
                return Err(Error::structural("arc set contains a cycle".to_string()));
            }
            dsu[ri] = rj;
        }
        let mut sources = 0u32;
        for v in 1..=n {
            match (out_deg[v] > 0, in_deg[v] > 0) {
                (true, true) => {
                    return Err(Error::structural(format!(
                        "vertex {v} has both incoming and outgoing arcs"
                    )))
                }
                (true, false) => sources |= 1 << (v - 1),
                (false, true) => {}
                (false, false) => {
                    return Err(Error::structural(format!("vertex {v} is isolated")))
                }
            }
        }
        Ok(AlternatingTree {
            n,
            arcs,
            sources: SubsetMask::from_bits(sources, n)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(u8, u8)] {
        &self.arcs
    }

    pub fn sources(&self) -> SubsetMask {
        self.sources
    }

    /// Source set restricted to `[n-1]`, the grouping key used by the
    /// compatibility graph decomposition.
    pub fn sources_among_first(&self) -> SubsetMask {
        SubsetMask::from_bits(self.sources.bits() & !(1 << (self.n - 1)), self.n).unwrap()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.sources.contains(v)
    }

    /// True when every arc ascends in vertex label.
    pub fn is_positive(&self) -> bool {
        self.arcs.iter().all(|&(i, j)| i < j)
    }

    /// Sort key implementing the canonical tree order.
    pub fn canonical_key(&self) -> (u32, &[(u8, u8)]) {
        (self.sources.bits(), &self.arcs)
    }

    /// The `{+, -, ?}` sign vector over nonempty subsets of `[n-1]`.
    ///
    /// An entry is `+` when no arc enters the subset, `-` when no arc leaves
    /// it, and `?` otherwise; connectivity rules out the empty case.
    pub fn sign_vector(&self) -> TreeSignVector {
        let n = self.n;
        let mut entries = Vec::with_capacity((1 << (n - 1)) - 1);
        for s in 1u32..(1 << (n - 1)) {
            let mut has_in = false;
            let mut has_out = false;
            for &(i, j) in &self.arcs {
                let i_in = s >> (i as u32 - 1) & 1 == 1;
                let j_in = s >> (j as u32 - 1) & 1 == 1;
                has_in |= !i_in && j_in;
                has_out |= i_in && !j_in;
            }
            debug_assert!(
                has_in || has_out,
                "connected tree must have an arc crossing every proper subset"
            );
            entries.push(if !has_in {
                TreeSign::Plus
            } else if !has_out {
                TreeSign::Minus
            } else {
                TreeSign::Unknown
            });
        }
        TreeSignVector::from_entries(n, entries)
    }
}

impl fmt::Display for AlternatingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; arcs=", self.n)?;
        for (k, &(i, j)) in self.arcs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

impl FromStr for AlternatingTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .trim()
            .strip_prefix("n=")
            .ok_or_else(|| Error::structural(format!("tree line must start with n=: {s:?}")))?;
        let (n_str, arcs_str) = rest
            .split_once("; arcs=")
            .ok_or_else(|| Error::structural(format!("missing arcs section: {s:?}")))?;
        let n: usize = n_str
            .parse()
            .map_err(|_| Error::structural(format!("bad vertex count: {n_str:?}")))?;
        let mut arcs = Vec::new();
        for part in arcs_str.split("),(") {
            let part = part.trim_start_matches('(').trim_end_matches(')');
            let (a, b) = part
                .split_once(',')
                .ok_or_else(|| Error::structural(format!("bad arc: {part:?}")))?;
            let i: u8 = a
                .parse()
                .map_err(|_| Error::structural(format!("bad arc endpoint: {a:?}")))?;
            let j: u8 = b
                .parse()
                .map_err(|_| Error::structural(format!("bad arc endpoint: {b:?}")))?;
            arcs.push((i, j));
        }
        AlternatingTree::new(n, arcs)
    }
}

/// Two trees are sign compatible when no subset index carries `+` in one
/// sign vector and `-` in the other.
pub fn is_sign_compatible(a: &AlternatingTree, b: &AlternatingTree) -> crate::Result<bool> {
    if a.n() != b.n() {
        return Err(Error::dimension(format!(
            "trees on [{}] and [{}]",
            a.n(),
            b.n()
        )));
    }
    let sa = a.sign_vector();
    let sb = b.sign_vector();
    Ok(sa
        .entries()
        .iter()
        .zip(sb.entries())
        .all(|(&x, &y)| {
            !matches!(
                (x, y),
                (TreeSign::Plus, TreeSign::Minus) | (TreeSign::Minus, TreeSign::Plus)
            )
        }))
}

/// Decodes a Prüfer sequence over `[n]` into the undirected edge list of a
/// labeled tree.
fn decode_pruefer(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len(), n.saturating_sub(2));
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 1;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n));
    edges
}

/// Splits the vertices of an undirected tree into the two parity classes of
/// its unique 2-coloring, with vertex 1 in the first class.
fn bipartition(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut adj = vec![Vec::new(); n + 1];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color = vec![None; n + 1];
    color[1] = Some(true);
    let mut stack = vec![1usize];
    while let Some(v) = stack.pop() {
        let c = color[v].unwrap();
        for &w in &adj[v] {
            if color[w].is_none() {
                color[w] = Some(!c);
                stack.push(w);
            }
        }
    }
    color.into_iter().map(|c| c.unwrap_or(false)).collect()
}

fn orient(n: usize, edges: &[(usize, usize)], source_class: &[bool], flip: bool) -> AlternatingTree {
    let arcs = edges
        .iter()
        .map(|&(a, b)| {
            if source_class[a] != flip {
                (a as u8, b as u8)
            } else {
                (b as u8, a as u8)
            }
        })
        .collect();
    AlternatingTree::new(n, arcs).expect("orientation of a labeled tree is alternating")
}

/// Enumerates all alternating trees on `[n]` in canonical order.
///
/// Every labeled tree is generated once from its Prüfer sequence and
/// oriented both ways, giving `2 * n^(n-2)` trees.
pub fn enumerate_alternating_trees(n: usize) -> Result<Vec<AlternatingTree>> {
    if n < 2 || n > MAX_TREE_VERTICES {
        return Err(Error::bounds(format!(
            "vertex count {n} outside supported range 2..={MAX_TREE_VERTICES}"
        )));
    }
    let mut trees = Vec::with_capacity(2 * n.pow(n as u32 - 2));
    let mut seq = vec![1usize; n.saturating_sub(2)];
    loop {
        let edges = decode_pruefer(n, &seq);
        let classes = bipartition(n, &edges);
        trees.push(orient(n, &edges, &classes, false));
        trees.push(orient(n, &edges, &classes, true));
        // odometer over [n]^(n-2)
        let mut pos = seq.len();
        loop {
            if pos == 0 {
                trees.sort_unstable_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
                return Ok(trees);
            }
            pos -= 1;
            if seq[pos] < n {
                seq[pos] += 1;
                break;
            }
            seq[pos] = 1;
        }
    }
}

/// Enumerates the positive alternating trees on `[n]` (every arc ascends),
/// in canonical order.
pub fn enumerate_positive_alternating_trees(n: usize) -> Result<Vec<AlternatingTree>> {
    let mut trees = enumerate_alternating_trees(n)?;
    trees.retain(|t| t.is_positive());
    Ok(trees)
}

/// Closed-form count of positive alternating trees on `[n]`:
/// `(1 / (n * 2^(n-1))) * sum_k C(n,k) k^(n-1)`.
pub fn positive_tree_count(n: usize) -> Result<u64> {
    if n < 2 || n > MAX_TREE_VERTICES {
        return Err(Error::bounds(format!(
            "vertex count {n} outside supported range 2..={MAX_TREE_VERTICES}"
        )));
    }
    let mut sum: u128 = 0;
    let mut binom: u128 = 1;
    for k in 1..=n as u128 {
        binom = binom * (n as u128 - k + 1) / k;
        sum += binom * k.pow(n as u32 - 1);
    }
    let denom = n as u128 * (1u128 << (n - 1));
    debug_assert_eq!(sum % denom, 0, "closed form must divide exactly");
    Ok((sum / denom) as u64)
}
