//! Circulations on tree-pair graphs, indexability of tree collections, and
//! flow rerouting.
//!
//! Full-dimensional intersection of two root cones is decided by asking for
//! a strictly positive circulation on the combined graph `C(T, T')`; by
//! homogeneity "strictly positive" is encoded as lower bound 1 and handed to
//! the exact LP engine. Indexability of a whole collection asks for flows on
//! every tree, all arc values at least 1, inducing one common point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lp::{lp_feasible, LinearSystem};
use crate::point::{induce_point, FlowAssignment, RationalPoint};
use crate::sign::Sign;
use crate::subset::SubsetMask;
use crate::tree::{is_sign_compatible, AlternatingTree};
use crate::{Error, Result};

/// A directed multigraph on `[n]`; parallel arcs are allowed and the arc
/// list is kept sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirectedMultigraph {
    n: usize,
    arcs: Vec<(u8, u8)>,
}

impl DirectedMultigraph {
    pub fn new(n: usize, mut arcs: Vec<(u8, u8)>) -> Result<Self> {
        for &(i, j) in &arcs {
            if i == 0 || j == 0 || i as usize > n || j as usize > n {
                return Err(Error::structural(format!("arc ({i},{j}) outside [{n}]")));
            }
        }
        arcs.sort_unstable();
        Ok(DirectedMultigraph { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(u8, u8)] {
        &self.arcs
    }

    /// Arcs entering the subset (1-based mask over `[n]`).
    pub fn indegree_arcs(&self, s: SubsetMask) -> Vec<(u8, u8)> {
        self.arcs
            .iter()
            .copied()
            .filter(|&(i, j)| !s.contains(i as usize) && s.contains(j as usize))
            .collect()
    }

    pub fn outdegree_arcs(&self, s: SubsetMask) -> Vec<(u8, u8)> {
        self.arcs
            .iter()
            .copied()
            .filter(|&(i, j)| s.contains(i as usize) && !s.contains(j as usize))
            .collect()
    }
}

/// The circulation graph `C(T, T')`: arcs of `T` plus the reversed arcs of
/// `T'`, as a multiset of `2(n-1)` arcs.
pub fn circulation_graph(t1: &AlternatingTree, t2: &AlternatingTree) -> Result<DirectedMultigraph> {
    if t1.n() != t2.n() {
        return Err(Error::dimension(format!(
            "trees on [{}] and [{}]",
            t1.n(),
            t2.n()
        )));
    }
    let mut arcs: Vec<(u8, u8)> = t1.arcs().to_vec();
    arcs.extend(t2.arcs().iter().map(|&(i, j)| (j, i)));
    DirectedMultigraph::new(t1.n(), arcs)
}

fn arc_variable_names(arcs: &[(u8, u8)]) -> Vec<String> {
    let mut names = Vec::with_capacity(arcs.len());
    for (idx, &(i, j)) in arcs.iter().enumerate() {
        let dup = arcs[..idx].iter().filter(|&&a| a == (i, j)).count();
        if dup == 0 {
            names.push(format!("f{i}_{j}"));
        } else {
            names.push(format!("f{i}_{j}_dup{dup}"));
        }
    }
    names
}

/// Conservation-of-flow equalities for a multigraph, one per vertex.
fn conservation_system(d: &DirectedMultigraph) -> LinearSystem {
    let mut sys = LinearSystem::new(arc_variable_names(d.arcs()));
    for v in 1..=d.n() {
        let coeffs = d
            .arcs()
            .iter()
            .map(|&(i, j)| {
                let mut c = BigRational::zero();
                if i as usize == v {
                    c += BigRational::one();
                }
                if j as usize == v {
                    c -= BigRational::one();
                }
                c
            })
            .collect();
        sys.add_equality(coeffs, BigRational::zero())
            .expect("row built to length");
    }
    sys
}

/// Searches for a circulation with every arc value at least 1; homogeneity
/// of the conservation cone makes this equivalent to strict positivity.
pub fn strictly_positive_circulation(d: &DirectedMultigraph) -> Result<Option<FlowAssignment>> {
    circulation_with_lower_bound(d, &BigRational::one(), None)
}

pub fn has_strictly_positive_circulation(d: &DirectedMultigraph) -> Result<bool> {
    Ok(strictly_positive_circulation(d)?.is_some())
}

/// Circulation search with an explicit lower bound and optional uniform
/// upper bound, for checking that the finite Hoffman-style upper bound is
/// immaterial.
pub fn circulation_with_lower_bound(
    d: &DirectedMultigraph,
    lower: &BigRational,
    upper: Option<&BigRational>,
) -> Result<Option<FlowAssignment>> {
    let sys = conservation_system(d);
    let na = d.arcs().len();
    if let Some(u) = upper {
        // f_a + s_a = u with s_a >= 0
        let names: Vec<String> = sys
            .variables()
            .iter()
            .cloned()
            .chain((0..na).map(|a| format!("s{a}")))
            .collect();
        let mut wide = LinearSystem::new(names);
        for (row, rhs) in sys.equalities() {
            let mut coeffs = row.clone();
            coeffs.extend(vec![BigRational::zero(); na]);
            wide.add_equality(coeffs, rhs.clone())?;
        }
        for a in 0..na {
            let mut coeffs = vec![BigRational::zero(); 2 * na];
            coeffs[a] = BigRational::one();
            coeffs[na + a] = BigRational::one();
            wide.add_equality(coeffs, u.clone())?;
            wide.set_lower_bound(a, lower.clone())?;
            wide.set_lower_bound(na + a, BigRational::zero())?;
        }
        let res = lp_feasible(&wide)?;
        return Ok(res.witness.map(|w| {
            FlowAssignment::new(d.arcs().to_vec(), w[..na].to_vec())
                .expect("circulation witness is nonnegative")
        }));
    }
    let mut sys = sys;
    for a in 0..na {
        sys.set_lower_bound(a, lower.clone())?;
    }
    let res = lp_feasible(&sys)?;
    Ok(res.witness.map(|w| {
        FlowAssignment::new(d.arcs().to_vec(), w).expect("circulation witness is nonnegative")
    }))
}

/// Whether `dim(C(T) ∩ C(T')) = n - 1`, decided through the circulation
/// criterion on `C(T, T')`. Agrees with [`is_sign_compatible`]; the test
/// suites check the equivalence pair by pair.
pub fn cones_intersect_fulldim(t1: &AlternatingTree, t2: &AlternatingTree) -> Result<bool> {
    let d = circulation_graph(t1, t2)?;
    has_strictly_positive_circulation(&d)
}

/// Whether a collection of trees is indexable: there exist flows, one per
/// tree and at least 1 on every arc, all inducing the same point.
///
/// Pairwise sign compatibility is a precondition of the definition; its
/// violation short-circuits to `false`.
pub fn is_indexable(trees: &[AlternatingTree]) -> Result<bool> {
    let Some(first) = trees.first() else {
        return Err(Error::domain(
            "indexability of an empty collection is undefined".to_string(),
        ));
    };
    let n = first.n();
    if trees.iter().any(|t| t.n() != n) {
        return Err(Error::dimension("trees of mixed vertex counts".to_string()));
    }
    for (a, ta) in trees.iter().enumerate() {
        for tb in &trees[a + 1..] {
            if !is_sign_compatible(ta, tb)? {
                return Ok(false);
            }
        }
    }
    if trees.len() == 1 {
        return Ok(true);
    }
    // flow variables per tree; x(T_1; f_1) = x(T_t; f_t) componentwise
    let arcs_per_tree = n - 1;
    let mut names = Vec::with_capacity(trees.len() * arcs_per_tree);
    for (t, tree) in trees.iter().enumerate() {
        for &(i, j) in tree.arcs() {
            names.push(format!("t{t}_f{i}_{j}"));
        }
    }
    let mut sys = LinearSystem::new(names);
    let nvars = trees.len() * arcs_per_tree;
    for t in 1..trees.len() {
        for v in 1..=n {
            let mut coeffs = vec![BigRational::zero(); nvars];
            for (src, sign) in [(0usize, 1i64), (t, -1i64)] {
                for (a, &(i, j)) in trees[src].arcs().iter().enumerate() {
                    let col = src * arcs_per_tree + a;
                    if i as usize == v {
                        coeffs[col] += BigRational::from_integer(BigInt::from(sign));
                    }
                    if j as usize == v {
                        coeffs[col] -= BigRational::from_integer(BigInt::from(sign));
                    }
                }
            }
            sys.add_equality(coeffs, BigRational::zero())?;
        }
    }
    for a in 0..nvars {
        sys.set_lower_bound(a, BigRational::one())?;
    }
    Ok(lp_feasible(&sys)?.feasible)
}

/// Membership of `x` (summing to zero) in the cone spanned by the positive
/// roots `e_i - e_j`, `i < j`; interior membership when `strict`.
///
/// This is the prefix-sum test `x_1 + ... + x_k >= 0` (resp. `> 0`) for
/// `k < n`. The facet description is validated against the flow-feasibility
/// oracle [`positive_root_cone_contains_oracle`] in the test suites rather
/// than assumed.
pub fn positive_root_cone_contains(x: &RationalPoint, strict: bool) -> Result<bool> {
    if !x.sums_to_zero() {
        return Err(Error::domain(format!(
            "positive root cone membership needs a zero-sum point, got sum {}",
            x.sum()
        )));
    }
    let mut prefix = BigRational::zero();
    for k in 0..x.dim() - 1 {
        prefix += x.coord(k);
        if strict {
            if !prefix.is_positive() {
                return Ok(false);
            }
        } else if prefix.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// LP oracle for the same membership question: a nonnegative (resp. scaled
/// all-at-least-1) flow on the ascending complete graph inducing `x`.
pub fn positive_root_cone_contains_oracle(x: &RationalPoint, strict: bool) -> Result<bool> {
    if !x.sums_to_zero() {
        return Err(Error::domain(format!(
            "positive root cone membership needs a zero-sum point, got sum {}",
            x.sum()
        )));
    }
    let n = x.dim();
    let mut arcs = Vec::new();
    for i in 1..=n as u8 {
        for j in i + 1..=n as u8 {
            arcs.push((i, j));
        }
    }
    let mut names = arc_variable_names(&arcs);
    if strict {
        names.push("scale".to_string());
    }
    let nvars = names.len();
    let mut sys = LinearSystem::new(names);
    for v in 1..=n {
        let mut coeffs = vec![BigRational::zero(); nvars];
        for (a, &(i, j)) in arcs.iter().enumerate() {
            if i as usize == v {
                coeffs[a] += BigRational::one();
            }
            if j as usize == v {
                coeffs[a] -= BigRational::one();
            }
        }
        if strict {
            // induced point = scale * x with scale >= 1; the cone is
            // homogeneous so interiority is scale-invariant
            coeffs[nvars - 1] = -x.coord(v - 1).clone();
            sys.add_equality(coeffs, BigRational::zero())?;
        } else {
            sys.add_equality(coeffs, x.coord(v - 1).clone())?;
        }
    }
    let bound = if strict {
        BigRational::one()
    } else {
        BigRational::zero()
    };
    for a in 0..arcs.len() {
        sys.set_lower_bound(a, bound.clone())?;
    }
    if strict {
        sys.set_lower_bound(nvars - 1, BigRational::one())?;
    }
    Ok(lp_feasible(&sys)?.feasible)
}

/// Undirected path between two vertices of a tree, as the list of tree arc
/// indices along it.
fn tree_path(tree: &AlternatingTree, from: u8, to: u8) -> Vec<usize> {
    let n = tree.n();
    let mut adj: Vec<Vec<(u8, usize)>> = vec![Vec::new(); n + 1];
    for (idx, &(i, j)) in tree.arcs().iter().enumerate() {
        adj[i as usize].push((j, idx));
        adj[j as usize].push((i, idx));
    }
    let mut parent: Vec<Option<(u8, usize)>> = vec![None; n + 1];
    let mut visited = vec![false; n + 1];
    let mut stack = vec![from];
    visited[from as usize] = true;
    while let Some(v) = stack.pop() {
        if v == to {
            break;
        }
        for &(w, idx) in &adj[v as usize] {
            if !visited[w as usize] {
                visited[w as usize] = true;
                parent[w as usize] = Some((v, idx));
                stack.push(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (prev, idx) = parent[cur as usize].expect("tree is connected");
        path.push(idx);
        cur = prev;
    }
    path.reverse();
    path
}

fn check_positive_integer_flow(flow: &FlowAssignment) -> Result<()> {
    for v in flow.values() {
        if !v.is_integer() || !v.is_positive() {
            return Err(Error::domain(format!(
                "flow value {v} is not a positive integer"
            )));
        }
    }
    Ok(())
}

/// One rerouting step: given a positive integer flow on `T` inducing a point
/// with no vanishing subset sums and with positive sign on `I`, and an arc
/// `(k, l)` entering `I`, produces another alternating tree and positive
/// integer flow inducing the same point, where `(k, l)` is either gone or
/// carries strictly less flow, and no new arc into `I` appears.
pub fn reroute_flow(
    tree: &AlternatingTree,
    flow: &FlowAssignment,
    i_set: SubsetMask,
    arc_kl: (u8, u8),
) -> Result<(AlternatingTree, FlowAssignment)> {
    let n = tree.n();
    if flow.arcs() != tree.arcs() {
        return Err(Error::domain(
            "flow is not indexed by the tree's arcs".to_string(),
        ));
    }
    check_positive_integer_flow(flow)?;
    if i_set.is_empty() || u64::from(i_set.bits()) >= 1u64 << (n - 1) {
        return Err(Error::domain(format!(
            "subset {i_set} is not a nonempty subset of [{}]",
            n - 1
        )));
    }
    let (k, l) = arc_kl;
    if !tree.arcs().contains(&arc_kl) {
        return Err(Error::domain(format!("arc ({k},{l}) not in the tree")));
    }
    if i_set.contains(k as usize) || !i_set.contains(l as usize) {
        return Err(Error::domain(format!(
            "arc ({k},{l}) does not enter {i_set}"
        )));
    }
    let x = induce_point(n, flow);
    let sv = crate::point::resonance_sign_vector(&x)?;
    if !sv.is_generic() {
        return Err(Error::domain(
            "induced point has a vanishing subset sum".to_string(),
        ));
    }
    if sv.get(i_set) != Sign::Plus {
        return Err(Error::domain(format!("sign at {i_set} is not positive")));
    }

    // net flow out of I is positive, so some arc leaves I; take the least
    let (i_src, j_dst) = tree
        .arcs()
        .iter()
        .copied()
        .find(|&(a, b)| i_set.contains(a as usize) && !i_set.contains(b as usize))
        .ok_or_else(|| {
            Error::invariant("positive sign but no arc leaves the subset".to_string())
        })?;

    // the new arc depends on which marked arcs the k..j path uses
    let kl_idx = tree.arcs().iter().position(|&a| a == arc_kl).unwrap();
    let path_kj = tree_path(tree, k, j_dst);
    let new_arc = if path_kj.contains(&kl_idx) {
        (k, j_dst)
    } else {
        (i_src, l)
    };
    debug_assert!(
        !tree.arcs().contains(&new_arc),
        "augmenting arc already present"
    );

    // unique cycle of T plus the new arc
    let cycle_path = tree_path(tree, new_arc.0, new_arc.1);
    let mut cycle: Vec<(u8, u8)> = cycle_path.iter().map(|&idx| tree.arcs()[idx]).collect();
    cycle.push(new_arc);
    if !cycle.contains(&arc_kl) {
        return Err(Error::invariant(
            "augmentation cycle misses the entering arc".to_string(),
        ));
    }

    // walk the cycle starting with (k, l); odd positions run with the walk,
    // even positions against it
    let mut order: Vec<(usize, bool)> = Vec::with_capacity(cycle.len());
    let start = cycle.iter().position(|&a| a == arc_kl).unwrap();
    let mut used = vec![false; cycle.len()];
    used[start] = true;
    order.push((start, true));
    let mut at = l;
    while at != k {
        let (next, forward) = cycle
            .iter()
            .enumerate()
            .find_map(|(idx, &(a, b))| {
                if used[idx] {
                    None
                } else if a == at {
                    Some((idx, true))
                } else if b == at {
                    Some((idx, false))
                } else {
                    None
                }
            })
            .ok_or_else(|| Error::invariant("cycle walk stuck".to_string()))?;
        used[next] = true;
        at = if forward { cycle[next].1 } else { cycle[next].0 };
        order.push((next, forward));
    }
    debug_assert!(order.len() % 2 == 0 && order.len() >= 4);
    debug_assert!(order
        .iter()
        .enumerate()
        .all(|(pos, &(_, fwd))| fwd == (pos % 2 == 0)));

    // f* = least flow among the with-walk arcs (the new arc runs against)
    let flow_of = |arc: (u8, u8)| -> BigRational {
        if arc == new_arc {
            BigRational::zero()
        } else {
            let idx = tree.arcs().iter().position(|&a| a == arc).unwrap();
            flow.values()[idx].clone()
        }
    };
    let fstar = order
        .iter()
        .filter(|&&(_, fwd)| fwd)
        .map(|&(idx, _)| flow_of(cycle[idx]))
        .min()
        .expect("cycle has forward arcs");
    debug_assert!(fstar >= BigRational::one());

    // shift f* around the cycle; exactly one arc must drain to zero
    let delta = |arc: (u8, u8)| -> Option<BigRational> {
        order
            .iter()
            .find(|&&(idx, _)| cycle[idx] == arc)
            .map(|&(_, fwd)| if fwd { -fstar.clone() } else { fstar.clone() })
    };
    let mut kept: Vec<((u8, u8), BigRational)> = Vec::with_capacity(n - 1);
    let mut drained = 0usize;
    for (arc, value) in tree
        .arcs()
        .iter()
        .copied()
        .zip(flow.values().iter().cloned())
        .chain(std::iter::once((new_arc, BigRational::zero())))
    {
        let value = match delta(arc) {
            Some(d) => value + d,
            None => value,
        };
        if value.is_zero() {
            drained += 1;
        } else {
            kept.push((arc, value));
        }
    }
    if drained != 1 {
        return Err(Error::invariant(format!(
            "expected exactly one drained arc, found {drained}"
        )));
    }
    kept.sort_by_key(|&(a, _)| a);
    let t2 = AlternatingTree::new(n, kept.iter().map(|&(a, _)| a).collect())?;
    let f2 = FlowAssignment::new(
        t2.arcs().to_vec(),
        kept.into_iter().map(|(_, v)| v).collect(),
    )?;
    check_positive_integer_flow(&f2)?;
    debug_assert_eq!(induce_point(n, &f2), x);
    debug_assert!(t2
        .arcs()
        .iter()
        .all(|&(a, b)| !(i_set.contains(b as usize) && !i_set.contains(a as usize))
            || tree.arcs().contains(&(a, b))));
    Ok((t2, f2))
}

/// Applies [`reroute_flow`] until no arc enters `I`, producing a tree with
/// positive sign on `I` inducing the same point.
pub fn reroute_until_plus(
    tree: &AlternatingTree,
    flow: &FlowAssignment,
    i_set: SubsetMask,
) -> Result<(AlternatingTree, FlowAssignment)> {
    let mut t = tree.clone();
    let mut f = flow.clone();
    loop {
        let Some(&arc) = t
            .arcs()
            .iter()
            .find(|&&(a, b)| !i_set.contains(a as usize) && i_set.contains(b as usize))
        else {
            return Ok((t, f));
        };
        let (t2, f2) = reroute_flow(&t, &f, i_set, arc)?;
        t = t2;
        f = f2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::resonance_sign_vector;
    use crate::sign::TreeSign;
    use crate::tree::enumerate_alternating_trees;
    use rand::{Rng, SeedableRng};

    fn tree(n: usize, arcs: &[(u8, u8)]) -> AlternatingTree {
        AlternatingTree::new(n, arcs.to_vec()).unwrap()
    }

    fn fig5_pair() -> (AlternatingTree, AlternatingTree) {
        (
            tree(7, &[(1, 2), (1, 3), (4, 3), (4, 5), (6, 5), (7, 2)]),
            tree(7, &[(1, 2), (1, 3), (4, 2), (4, 5), (6, 5), (7, 3)]),
        )
    }

    pub(crate) fn bad_triple() -> [AlternatingTree; 3] {
        [
            tree(6, &[(1, 4), (1, 5), (2, 4), (3, 5), (3, 6)]),
            tree(6, &[(1, 6), (2, 5), (2, 6), (3, 4), (3, 6)]),
            tree(6, &[(1, 4), (1, 5), (2, 4), (2, 6), (3, 5)]),
        ]
    }

    #[test]
    fn circulation_graph_shape() {
        let (t, t2) = fig5_pair();
        let c = circulation_graph(&t, &t2).unwrap();
        assert_eq!(c.arcs().len(), 2 * (7 - 1));
        // the highlighted directed 4-cycle
        for arc in [(1, 3), (3, 7), (7, 2), (2, 1)] {
            assert!(c.arcs().contains(&arc), "missing {arc:?}");
        }
        // C(T,T) is every arc plus its reversal
        let c2 = circulation_graph(&t, &t).unwrap();
        for &(i, j) in t.arcs() {
            assert!(c2.arcs().contains(&(i, j)) && c2.arcs().contains(&(j, i)));
        }
    }

    #[test]
    fn self_pair_always_circulates() {
        for t in enumerate_alternating_trees(4).unwrap() {
            let c = circulation_graph(&t, &t).unwrap();
            let w = strictly_positive_circulation(&c).unwrap().unwrap();
            assert!(w.is_strictly_positive());
        }
    }

    #[test]
    fn source_only_vertex_blocks_circulation() {
        let d = DirectedMultigraph::new(3, vec![(1, 2), (1, 3), (2, 3), (3, 2)]).unwrap();
        assert!(!has_strictly_positive_circulation(&d).unwrap());
    }

    #[test]
    fn all_rank3_tree_pairs_are_disjoint() {
        let trees = enumerate_alternating_trees(3).unwrap();
        assert_eq!(trees.len(), 6);
        for (a, ta) in trees.iter().enumerate() {
            for tb in &trees[a + 1..] {
                assert!(!cones_intersect_fulldim(ta, tb).unwrap());
                assert!(!is_sign_compatible(ta, tb).unwrap());
            }
        }
    }

    #[test]
    fn equivalence_on_rank4_pairs() {
        let trees = enumerate_alternating_trees(4).unwrap();
        for (a, ta) in trees.iter().enumerate() {
            for tb in trees.iter().skip(a) {
                assert_eq!(
                    cones_intersect_fulldim(ta, tb).unwrap(),
                    is_sign_compatible(ta, tb).unwrap(),
                );
            }
        }
    }

    #[test]
    fn hoffman_upper_bound_is_immaterial() {
        let trees = enumerate_alternating_trees(4).unwrap();
        let two_n = BigRational::from_integer(BigInt::from(8));
        for (a, ta) in trees.iter().enumerate() {
            for tb in trees.iter().skip(a) {
                let c = circulation_graph(ta, tb).unwrap();
                let unbounded = strictly_positive_circulation(&c).unwrap().is_some();
                let bounded = circulation_with_lower_bound(&c, &BigRational::one(), Some(&two_n))
                    .unwrap()
                    .is_some();
                assert_eq!(unbounded, bounded);
            }
        }
    }

    #[test]
    fn compatible_pairs_cross_every_cut() {
        // arcs of C(T,T') enter and leave every proper nonempty subset
        let trees = enumerate_alternating_trees(5).unwrap();
        let mut checked = 0;
        for (a, ta) in trees.iter().enumerate() {
            for tb in &trees[a + 1..] {
                if !is_sign_compatible(ta, tb).unwrap() {
                    continue;
                }
                let c = circulation_graph(ta, tb).unwrap();
                for s in SubsetMask::nonempty_subsets(5) {
                    if s.bits() == (1 << 5) - 1 {
                        continue;
                    }
                    assert!(!c.indegree_arcs(s).is_empty(), "no arc into {s}");
                    assert!(!c.outdegree_arcs(s).is_empty(), "no arc out of {s}");
                }
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn single_tree_is_indexable() {
        let t = tree(4, &[(1, 3), (2, 3), (2, 4)]);
        assert!(is_indexable(std::slice::from_ref(&t)).unwrap());
        assert!(is_indexable(&[]).is_err());
    }

    #[test]
    fn bad_triple_is_pairwise_good_but_not_indexable() {
        let [t1, t2, t3] = bad_triple();
        assert!(is_sign_compatible(&t1, &t2).unwrap());
        assert!(is_sign_compatible(&t1, &t3).unwrap());
        assert!(is_sign_compatible(&t2, &t3).unwrap());
        assert!(is_indexable(&[t1.clone(), t2.clone()]).unwrap());
        assert!(is_indexable(&[t1.clone(), t3.clone()]).unwrap());
        assert!(is_indexable(&[t2.clone(), t3.clone()]).unwrap());
        assert!(!is_indexable(&[t1, t2, t3]).unwrap());
    }

    #[test]
    fn trees_with_different_sources_are_incompatible() {
        let a = tree(3, &[(1, 2), (1, 3)]);
        let b = tree(3, &[(2, 1), (2, 3)]);
        assert!(!is_sign_compatible(&a, &b).unwrap());
    }

    #[test]
    fn positive_cone_examples() {
        let root = RationalPoint::from_integers([1, -1]);
        assert!(positive_root_cone_contains(&root, false).unwrap());
        assert!(positive_root_cone_contains_oracle(&root, false).unwrap());
        let x = RationalPoint::from_integers([1, -2, 1]);
        assert!(!positive_root_cone_contains(&x, false).unwrap());
        assert!(!positive_root_cone_contains_oracle(&x, false).unwrap());
        assert!(positive_root_cone_contains(&RationalPoint::zero(3), false).unwrap());
        assert!(!positive_root_cone_contains(&RationalPoint::zero(3), true).unwrap());
        assert!(
            positive_root_cone_contains(&RationalPoint::from_integers([5, -1, -3, -1]), true)
                .unwrap()
        );
        assert!(positive_root_cone_contains(&RationalPoint::from_integers([1, 1]), false).is_err());
    }

    #[test]
    fn prefix_test_matches_oracle_on_random_points() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(2..=5);
            let mut vals: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-6..=6)).collect();
            let last = -vals.iter().sum::<i64>();
            vals.push(last);
            let x = RationalPoint::from_integers(vals.iter().copied());
            for strict in [false, true] {
                assert_eq!(
                    positive_root_cone_contains(&x, strict).unwrap(),
                    positive_root_cone_contains_oracle(&x, strict).unwrap(),
                    "x={x} strict={strict}"
                );
            }
        }
    }

    #[test]
    fn exactly_one_rotation_lands_in_cone() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let mut tested = 0;
        for _ in 0..200 {
            let n = rng.gen_range(2..=5);
            let mut vals: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
            let last = -vals.iter().sum::<i64>();
            vals.push(last);
            let x = RationalPoint::from_integers(vals.iter().copied());
            if resonance_sign_vector(&x)
                .map(|sv| !sv.is_generic())
                .unwrap_or(true)
            {
                continue;
            }
            let mut hits = 0;
            let mut rot = x.clone();
            for _ in 0..=n {
                if positive_root_cone_contains(&rot, false).unwrap() {
                    hits += 1;
                }
                rot = rot.rotate();
            }
            assert_eq!(hits, 1, "x={x}");
            tested += 1;
        }
        assert!(tested > 50);
    }

    fn random_positive_flow(
        t: &AlternatingTree,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> FlowAssignment {
        let vals: Vec<i64> = (0..t.arcs().len())
            .map(|_| rng.gen_range(1..=1000))
            .collect();
        FlowAssignment::from_integers(t.arcs().to_vec(), &vals).unwrap()
    }

    #[test]
    fn reroute_preserves_point_and_terminates() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 60 {
            let n = rng.gen_range(4..=6);
            let trees = enumerate_alternating_trees(n).unwrap();
            let t = trees[rng.gen_range(0..trees.len())].clone();
            let f = random_positive_flow(&t, &mut rng);
            let x = induce_point(n, &f);
            let sv = resonance_sign_vector(&x).unwrap();
            if !sv.is_generic() {
                continue;
            }
            let sv_t = t.sign_vector();
            let Some(i_set) = SubsetMask::nonempty_subsets(n - 1)
                .find(|&s| sv.get(s) == Sign::Plus && sv_t.get(s) == TreeSign::Unknown)
            else {
                continue;
            };
            let (t2, f2) = reroute_until_plus(&t, &f, i_set).unwrap();
            assert_eq!(induce_point(n, &f2), x);
            assert_eq!(t2.sign_vector().get(i_set), TreeSign::Plus);
            done += 1;
        }
    }

    #[test]
    fn reroute_noop_when_no_entering_arc() {
        let t = tree(4, &[(1, 3), (2, 3), (2, 4)]);
        let f = FlowAssignment::from_integers(t.arcs().to_vec(), &[2, 1, 1]).unwrap();
        // sigma_12 = + and nothing enters {1,2}
        let s = SubsetMask::from_elements([1, 2], 3).unwrap();
        let (t2, f2) = reroute_until_plus(&t, &f, s).unwrap();
        assert_eq!(t2, t);
        assert_eq!(f2, f);
    }
}
