//! Exact chamber enumeration for central hyperplane arrangements, wall
//! censuses, and the chamber-to-tree-set pipeline.
//!
//! Hyperplanes are inserted one at a time. Each existing chamber is probed
//! against the new hyperplane: its integer witness settles one side for
//! free, and an exact LP feasibility call on the chamber's margin-1 system
//! decides whether the opposite side is populated. Split chambers get fresh
//! margin-1 witnesses from the LP, with denominators cleared so every
//! witness stays integral.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::flows::positive_root_cone_contains;
use crate::linalg;
use crate::lp::cone_feasible;
use crate::point::{threshold_normal, RationalPoint};
use crate::sign::Sign;
use crate::subset::SubsetMask;
use crate::tree::AlternatingTree;
use crate::{Error, Result};

/// A central arrangement: hyperplane normals through the origin, optional
/// ambient equality constraints, and optional open-cone restrictions
/// (normals required strictly positive on every chamber).
#[derive(Clone, Debug)]
pub struct CentralArrangement {
    ambient_dim: usize,
    normals: Vec<Vec<BigInt>>,
    equality_normals: Vec<Vec<BigInt>>,
    restriction_normals: Vec<Vec<BigInt>>,
}

impl CentralArrangement {
    pub fn new(
        ambient_dim: usize,
        normals: Vec<Vec<BigInt>>,
        equality_normals: Vec<Vec<BigInt>>,
        restriction_normals: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        let a = CentralArrangement {
            ambient_dim,
            normals,
            equality_normals,
            restriction_normals,
        };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        for v in self
            .normals
            .iter()
            .chain(&self.equality_normals)
            .chain(&self.restriction_normals)
        {
            if v.len() != self.ambient_dim {
                return Err(Error::structural(format!(
                    "normal of length {} in ambient dimension {}",
                    v.len(),
                    self.ambient_dim
                )));
            }
        }
        let eq_rank = self.equality_rank();
        for (i, v) in self.normals.iter().enumerate() {
            if v.iter().all(|c| c.is_zero()) {
                return Err(Error::structural(format!("normal {i} is zero")));
            }
            if self.rank_with(&[v]) == eq_rank {
                return Err(Error::structural(format!(
                    "normal {i} vanishes on the equality subspace"
                )));
            }
        }
        for i in 0..self.normals.len() {
            for j in i + 1..self.normals.len() {
                if self.rank_with(&[&self.normals[i], &self.normals[j]]) < eq_rank + 2 {
                    return Err(Error::structural(format!(
                        "normals {i} and {j} give the same hyperplane on the equality subspace"
                    )));
                }
            }
        }
        Ok(())
    }

    fn equality_rank(&self) -> usize {
        linalg::rank(
            self.equality_normals
                .iter()
                .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
                .collect(),
        )
    }

    fn rank_with(&self, extra: &[&Vec<BigInt>]) -> usize {
        let rows = self
            .equality_normals
            .iter()
            .chain(extra.iter().copied())
            .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
            .collect();
        linalg::rank(rows)
    }

    /// Rank of the arrangement within the equality subspace.
    pub fn rank(&self) -> usize {
        let all: Vec<&Vec<BigInt>> = self.normals.iter().collect();
        self.rank_with(&all) - self.equality_rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    pub fn equality_normals(&self) -> &[Vec<BigInt>] {
        &self.equality_normals
    }

    pub fn restriction_normals(&self) -> &[Vec<BigInt>] {
        &self.restriction_normals
    }

    /// The same arrangement restricted to an open cone.
    pub fn with_restrictions(mut self, restrictions: Vec<Vec<BigInt>>) -> Result<Self> {
        self.restriction_normals.extend(restrictions);
        self.validate()?;
        Ok(self)
    }
}

/// The threshold arrangement `Th_n`: all sign patterns `v_S` over subsets
/// `S` of `[n-1]` (entry `n` fixed at -1), in ascending bitmask order. Its
/// chamber count is the number of threshold functions on `n - 1` variables.
pub fn threshold_arrangement(n: usize) -> Result<CentralArrangement> {
    if !(2..=6).contains(&n) {
        return Err(Error::bounds(format!(
            "threshold arrangement supported for 2 <= n <= 6, got {n}"
        )));
    }
    let normals = SubsetMask::all_subsets(n - 1)
        .map(|s| threshold_normal(n, s))
        .collect();
    CentralArrangement::new(n, normals, Vec::new(), Vec::new())
}

/// The 0/1 normal vector `u_S` in the given ambient dimension.
pub fn resonance_normal(ambient: usize, s: SubsetMask) -> Vec<BigInt> {
    (1..=ambient)
        .map(|i| {
            if s.contains(i) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

/// The rank-`n` resonance arrangement in ambient `R^(n+1)`: normals `u_S`
/// for nonempty `S` within `[n]`, together with the all-ones equality.
pub fn resonance_arrangement(n: usize) -> Result<CentralArrangement> {
    if !(1..=6).contains(&n) {
        return Err(Error::bounds(format!(
            "resonance arrangement supported for 1 <= n <= 6, got {n}"
        )));
    }
    let ambient = n + 1;
    let normals = SubsetMask::nonempty_subsets(n)
        .map(|s| resonance_normal(ambient, s))
        .collect();
    let ones = vec![BigInt::one(); ambient];
    CentralArrangement::new(ambient, normals, vec![ones], Vec::new())
}

/// Prefix-sum normals cutting out the positive root cone of `R^(n+1)`.
pub fn positive_cone_restrictions(n: usize) -> Vec<Vec<BigInt>> {
    (1..=n)
        .map(|k| resonance_normal(n + 1, SubsetMask::prefix(k, n).unwrap()))
        .collect()
}

/// A chamber: its full sign vector over the arrangement's normals plus an
/// integral interior witness with margin at least 1 on every constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub signs: Vec<Sign>,
    pub witness: RationalPoint,
}

impl Chamber {
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.as_char()).collect()
    }

    /// Packed (plus, minus) masks over the hyperplane list; usable while the
    /// arrangement has at most 64 hyperplanes.
    pub fn packed_signs(&self) -> (u64, u64) {
        debug_assert!(self.signs.len() <= 64);
        let mut plus = 0u64;
        let mut minus = 0u64;
        for (i, &s) in self.signs.iter().enumerate() {
            match s {
                Sign::Plus => plus |= 1 << i,
                Sign::Minus => minus |= 1 << i,
                Sign::Zero => unreachable!("chamber signs are never zero"),
            }
        }
        (plus, minus)
    }
}

struct WorkChamber {
    signs: Vec<Sign>,
    witness: Vec<BigInt>,
}

fn dot(v: &[BigInt], w: &[BigInt]) -> BigInt {
    v.iter().zip(w).map(|(a, b)| a * b).sum()
}

fn signed_row(normal: &[BigInt], sign: Sign) -> Vec<BigInt> {
    match sign {
        Sign::Plus => normal.to_vec(),
        Sign::Minus => normal.iter().map(|c| -c).collect(),
        Sign::Zero => unreachable!(),
    }
}

fn clear_denoms(w: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in w {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    w.iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Enumerates the chambers of a central arrangement by incremental
/// insertion, sorted by sign vector.
pub fn enumerate_chambers(arr: &CentralArrangement) -> Result<Vec<Chamber>> {
    arr.validate()?;
    // antipodal reduction: without restrictions, chambers come in +/- pairs,
    // so fix the first sign positive and mirror at the end
    let reduce = arr.restriction_normals.is_empty() && !arr.normals.is_empty();

    let initial_witness = {
        let ineqs: Vec<Vec<BigInt>> = if reduce {
            vec![arr.normals[0].clone()]
        } else {
            arr.restriction_normals.clone()
        };
        let w = cone_feasible(&ineqs, &arr.equality_normals)?.ok_or_else(|| {
            Error::domain("restriction cone is empty on the equality subspace".to_string())
        })?;
        let mut w = clear_denoms(&w);
        if w.iter().all(|c| c.is_zero()) {
            // no constraints at all pin the start; any point of the
            // equality subspace serves (margins are vacuous)
            w = vec![BigInt::zero(); arr.ambient_dim];
        }
        w
    };

    let mut chambers = vec![WorkChamber {
        signs: if reduce { vec![Sign::Plus] } else { Vec::new() },
        witness: initial_witness,
    }];
    let start = usize::from(reduce);

    for round in start..arr.normals.len() {
        let v = &arr.normals[round];
        chambers = chambers
            .into_par_iter()
            .map(|ch| split_chamber(arr, ch, v, round))
            .collect::<Result<Vec<Vec<WorkChamber>>>>()?
            .into_iter()
            .flatten()
            .collect();
    }

    let mut out: Vec<Chamber> = chambers
        .into_iter()
        .flat_map(|ch| {
            let mirror = reduce.then(|| Chamber {
                signs: ch.signs.iter().map(|s| s.negate()).collect(),
                witness: RationalPoint::new(
                    ch.witness
                        .iter()
                        .map(|c| BigRational::from_integer(-c))
                        .collect(),
                ),
            });
            let main = Chamber {
                signs: ch.signs.clone(),
                witness: RationalPoint::new(
                    ch.witness
                        .iter()
                        .map(|c| BigRational::from_integer(c.clone()))
                        .collect(),
                ),
            };
            std::iter::once(main).chain(mirror)
        })
        .collect();
    out.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(out)
}

/// The margin-1 constraint rows of a chamber-in-progress.
fn chamber_rows(arr: &CentralArrangement, ch: &WorkChamber) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(ch.signs.len() + arr.restriction_normals.len() + 1);
    rows.extend(arr.restriction_normals.iter().cloned());
    for (i, &s) in ch.signs.iter().enumerate() {
        rows.push(signed_row(&arr.normals[i], s));
    }
    rows
}

fn split_chamber(
    arr: &CentralArrangement,
    ch: WorkChamber,
    v: &[BigInt],
    round: usize,
) -> Result<Vec<WorkChamber>> {
    debug_assert_eq!(ch.signs.len(), round);
    let s = dot(&ch.witness, v);
    let (known_side, known_witness) = match s.sign() {
        num_bigint::Sign::Plus => (Some(Sign::Plus), ch.witness.clone()),
        num_bigint::Sign::Minus => (Some(Sign::Minus), ch.witness.clone()),
        num_bigint::Sign::NoSign => (None, Vec::new()),
    };
    let mut results = Vec::with_capacity(2);
    for side in [Sign::Plus, Sign::Minus] {
        if known_side == Some(side) {
            let mut signs = ch.signs.clone();
            signs.push(side);
            results.push(WorkChamber {
                signs,
                witness: known_witness.clone(),
            });
            continue;
        }
        let mut rows = chamber_rows(arr, &ch);
        rows.push(signed_row(v, side));
        if let Some(w) = cone_feasible(&rows, &arr.equality_normals)? {
            let mut signs = ch.signs.clone();
            signs.push(side);
            results.push(WorkChamber {
                signs,
                witness: clear_denoms(&w),
            });
        }
    }
    if results.is_empty() {
        return Err(Error::invariant(
            "chamber lost both sides of a hyperplane".to_string(),
        ));
    }
    Ok(results)
}

/// Wall counts per hyperplane plus the derived census quantities.
#[derive(Clone, Debug, Serialize)]
pub struct WallCensus {
    pub per_hyperplane_wall_counts: Vec<u64>,
    pub total_walls: u64,
    pub chamber_count: u64,
}

impl WallCensus {
    /// Average walls per chamber, exact: `2W / C`.
    pub fn average(&self) -> BigRational {
        BigRational::new(
            BigInt::from(2 * self.total_walls),
            BigInt::from(self.chamber_count),
        )
    }
}

/// The arrangement induced within hyperplane `index`: the hyperplane joins
/// the equalities and the other normals are deduplicated modulo the larger
/// equality span (normals that vanish there are dropped).
pub fn induced_arrangement(arr: &CentralArrangement, index: usize) -> Result<CentralArrangement> {
    let mut equalities = arr.equality_normals.clone();
    equalities.push(arr.normals[index].clone());
    let eq_rows: Vec<Vec<BigRational>> = equalities
        .iter()
        .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
        .collect();
    let eq_rank = linalg::rank(eq_rows.clone());
    let mut kept: Vec<Vec<BigInt>> = Vec::new();
    'next: for (j, w) in arr.normals.iter().enumerate() {
        if j == index {
            continue;
        }
        let as_q = |v: &Vec<BigInt>| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let mut with_w = eq_rows.clone();
        with_w.push(as_q(w));
        if linalg::rank(with_w.clone()) == eq_rank {
            continue; // w vanishes on the induced subspace
        }
        for seen in &kept {
            let mut both = with_w.clone();
            both.push(as_q(seen));
            if linalg::rank(both) == eq_rank + 1 {
                continue 'next; // same induced hyperplane
            }
        }
        kept.push(w.clone());
    }
    CentralArrangement::new(
        arr.ambient_dim,
        kept,
        equalities,
        arr.restriction_normals.clone(),
    )
}

/// Counts walls hyperplane by hyperplane (each as the chambers of the
/// induced arrangement) and verifies the two chamber/wall inequalities:
/// `2 W(H_i) <= C` for every hyperplane and `rank * C <= 2 W`.
pub fn wall_census(arr: &CentralArrangement, chamber_count: u64) -> Result<WallCensus> {
    let per: Vec<u64> = (0..arr.normals.len())
        .into_par_iter()
        .map(|i| {
            let induced = induced_arrangement(arr, i)?;
            Ok(enumerate_chambers(&induced)?.len() as u64)
        })
        .collect::<Result<Vec<u64>>>()?;
    let total: u64 = per.iter().sum();
    for (i, &w) in per.iter().enumerate() {
        if 2 * w > chamber_count {
            return Err(Error::invariant(format!(
                "hyperplane {i} has {w} walls but only {chamber_count} chambers exist"
            )));
        }
    }
    let rank = arr.rank() as u64;
    if rank * chamber_count > 2 * total {
        return Err(Error::invariant(format!(
            "rank*chambers = {} exceeds twice the wall count {}",
            rank * chamber_count,
            total
        )));
    }
    Ok(WallCensus {
        per_hyperplane_wall_counts: per,
        total_walls: total,
        chamber_count,
    })
}

/// Indices of the trees whose root cone contains the chamber: every subset
/// entry of the tree sign vector must admit the chamber's sign.
pub fn chamber_tree_set(chamber: &Chamber, trees: &[AlternatingTree]) -> Result<Vec<usize>> {
    let Some(first) = trees.first() else {
        return Err(Error::domain("no trees supplied".to_string()));
    };
    let entries = (1usize << (first.n() - 1)) - 1;
    if chamber.signs.len() != entries {
        return Err(Error::dimension(format!(
            "chamber over {} hyperplanes vs trees needing {entries}",
            chamber.signs.len()
        )));
    }
    let (cplus, cminus) = chamber.packed_signs();
    let set: Vec<usize> = trees
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            let (tplus, tminus) = t.sign_vector().packed();
            (tplus & cminus) | (tminus & cplus) == 0
        })
        .map(|(i, _)| i)
        .collect();
    if set.is_empty() {
        return Err(Error::invariant(format!(
            "chamber {} is covered by no tree cone",
            chamber.sign_string()
        )));
    }
    Ok(set)
}

/// Tree-index sets labeling resonance chambers, with the number of chambers
/// carrying each set.
///
/// In the full case the map chamber -> set is a bijection onto the maximal
/// indexable collections. Restricted to the positive cone (chambers with
/// positive sign on every prefix subset, cross-checked against the exact
/// cone membership of the witness), distinct chambers may share a positive
/// tree set; the groups are the Kostant chamber labels.
pub fn maximal_indexable_via_chambers(
    n: usize,
    positive_only: bool,
    trees: &[AlternatingTree],
    chambers: &[Chamber],
) -> Result<Vec<(Vec<usize>, usize)>> {
    if trees.iter().any(|t| t.n() != n + 1) {
        return Err(Error::dimension(format!("trees must live on [{}]", n + 1)));
    }
    let selected: Vec<&Chamber> = if positive_only {
        let prefix_masks: Vec<usize> = (1..=n)
            .map(|k| SubsetMask::prefix(k, n).unwrap().bits() as usize - 1)
            .collect();
        let picked: Vec<&Chamber> = chambers
            .iter()
            .filter(|c| prefix_masks.iter().all(|&i| c.signs[i] == Sign::Plus))
            .collect();
        for c in &picked {
            if !positive_root_cone_contains(&c.witness, true)? {
                return Err(Error::invariant(
                    "prefix-sign filter disagrees with cone membership".to_string(),
                ));
            }
        }
        for c in chambers {
            if !picked.iter().any(|p| std::ptr::eq(*p, c))
                && positive_root_cone_contains(&c.witness, true)?
            {
                return Err(Error::invariant(
                    "cone member escaped the prefix-sign filter".to_string(),
                ));
            }
        }
        picked
    } else {
        chambers.iter().collect()
    };

    let mut groups: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for c in &selected {
        *groups.entry(chamber_tree_set(c, trees)?).or_insert(0) += 1;
    }
    if !positive_only && groups.len() != selected.len() {
        return Err(Error::invariant(format!(
            "{} chambers map to {} distinct tree sets",
            selected.len(),
            groups.len()
        )));
    }
    Ok(groups.into_iter().collect())
}

/// Chamber dump as JSON lines `{"signs": "+-...", "witness": ["p/q", ...]}`.
pub fn chambers_to_jsonl(chambers: &[Chamber]) -> String {
    let mut out = String::new();
    for c in chambers {
        let witness: Vec<String> = c.witness.coords().iter().map(|q| q.to_string()).collect();
        out.push_str(
            &serde_json::to_string(&ChamberLine {
                signs: c.sign_string(),
                witness,
            })
            .expect("chamber line serializes"),
        );
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct ChamberLine {
    signs: String,
    witness: Vec<String>,
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse()
            .map_err(|_| Error::structural(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        Some((num, den)) => Ok(BigRational::new(parse_int(num)?, parse_int(den)?)),
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Parses a chamber dump produced by [`chambers_to_jsonl`].
pub fn chambers_from_jsonl(text: &str) -> Result<Vec<Chamber>> {
    let mut out = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed: ChamberLine = serde_json::from_str(line)
            .map_err(|e| Error::structural(format!("bad chamber line: {e}")))?;
        let signs = parsed
            .signs
            .chars()
            .map(Sign::from_char)
            .collect::<Result<Vec<Sign>>>()?;
        let witness = parsed
            .witness
            .iter()
            .map(|w| parse_rational(w))
            .collect::<Result<Vec<BigRational>>>()?;
        out.push(Chamber {
            signs,
            witness: RationalPoint::new(witness),
        });
    }
    Ok(out)
}

/// Verifies that every chamber's witness reproduces its sign vector with
/// margin at least 1, that sign vectors are pairwise distinct, and that the
/// set is closed under negation.
pub fn check_chambers(arr: &CentralArrangement, chambers: &[Chamber]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for c in chambers {
        if c.signs.len() != arr.normals.len() {
            return Err(Error::invariant("sign vector length mismatch".to_string()));
        }
        for (v, &s) in arr.normals.iter().zip(&c.signs) {
            let value = c.witness.dot_int(v);
            let expect = match s {
                Sign::Plus => value >= BigRational::one(),
                Sign::Minus => value <= -BigRational::one(),
                Sign::Zero => false,
            };
            if !expect {
                return Err(Error::invariant(format!(
                    "witness margin violated at sign {s} with value {value}"
                )));
            }
        }
        for e in arr.equality_normals() {
            if !c.witness.dot_int(e).is_zero() {
                return Err(Error::invariant("witness escapes equality subspace".to_string()));
            }
        }
        for r in arr.restriction_normals() {
            if !c.witness.dot_int(r).is_positive() {
                return Err(Error::invariant("witness violates a restriction".to_string()));
            }
        }
        if !seen.insert(c.signs.clone()) {
            return Err(Error::invariant("duplicate chamber sign vector".to_string()));
        }
    }
    if arr.restriction_normals().is_empty() {
        for c in chambers {
            let neg: Vec<Sign> = c.signs.iter().map(|s| s.negate()).collect();
            if !seen.contains(&neg) {
                return Err(Error::invariant("antipodal chamber missing".to_string()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{enumerate_alternating_trees, enumerate_positive_alternating_trees};

    #[test]
    fn threshold_normals_worked_example() {
        // v_{1,3,4,6} in R^8
        let s = SubsetMask::from_elements([1, 3, 4, 6], 7).unwrap();
        let v = threshold_normal(8, s);
        let expect: Vec<i64> = vec![1, -1, 1, 1, -1, 1, -1, -1];
        assert_eq!(v, expect.into_iter().map(BigInt::from).collect::<Vec<_>>());
        // Th_3 has the four normals of rank 3
        let arr = threshold_arrangement(3).unwrap();
        assert_eq!(arr.normals().len(), 4);
        assert_eq!(arr.rank(), 3);
        assert_eq!(threshold_arrangement(4).unwrap().normals().len(), 8);
    }

    #[test]
    fn resonance_normals_worked_example() {
        let s = SubsetMask::from_elements([1, 3, 4, 6], 8).unwrap();
        let u = resonance_normal(8, s);
        let expect: Vec<i64> = vec![1, 0, 1, 1, 0, 1, 0, 0];
        assert_eq!(u, expect.into_iter().map(BigInt::from).collect::<Vec<_>>());
        let arr = resonance_arrangement(2).unwrap();
        assert_eq!(arr.normals().len(), 3);
        assert_eq!(arr.ambient_dim(), 3);
        assert_eq!(arr.rank(), 2);
        assert_eq!(resonance_arrangement(4).unwrap().normals().len(), 15);
    }

    #[test]
    fn small_chamber_counts() {
        // T_1, T_2, T_3 and R_1, R_2, R_3
        assert_eq!(enumerate_chambers(&threshold_arrangement(2).unwrap()).unwrap().len(), 4);
        assert_eq!(enumerate_chambers(&threshold_arrangement(3).unwrap()).unwrap().len(), 14);
        assert_eq!(enumerate_chambers(&threshold_arrangement(4).unwrap()).unwrap().len(), 104);
        assert_eq!(enumerate_chambers(&resonance_arrangement(1).unwrap()).unwrap().len(), 2);
        assert_eq!(enumerate_chambers(&resonance_arrangement(2).unwrap()).unwrap().len(), 6);
        assert_eq!(enumerate_chambers(&resonance_arrangement(3).unwrap()).unwrap().len(), 32);
    }

    #[test]
    fn chambers_are_certified() {
        for arr in [threshold_arrangement(3).unwrap(), resonance_arrangement(3).unwrap()] {
            let chambers = enumerate_chambers(&arr).unwrap();
            check_chambers(&arr, &chambers).unwrap();
        }
    }

    #[test]
    fn restriction_filters_chambers() {
        // chambers of Res_2 in the positive root cone: R_2 / 3 = 2
        let arr = resonance_arrangement(2)
            .unwrap()
            .with_restrictions(positive_cone_restrictions(2))
            .unwrap();
        let chambers = enumerate_chambers(&arr).unwrap();
        assert_eq!(chambers.len(), 2);
        check_chambers(&arr, &chambers).unwrap();
    }

    #[test]
    fn restriction_matches_sign_filter() {
        // restricted enumeration equals prefix-sign filtering of the full one
        for n in [2usize, 3] {
            let full = enumerate_chambers(&resonance_arrangement(n).unwrap()).unwrap();
            let prefix_masks: Vec<usize> = (1..=n)
                .map(|k| SubsetMask::prefix(k, n).unwrap().bits() as usize - 1)
                .collect();
            let filtered: Vec<String> = full
                .iter()
                .filter(|c| prefix_masks.iter().all(|&i| c.signs[i] == Sign::Plus))
                .map(|c| c.sign_string())
                .collect();
            let arr = resonance_arrangement(n)
                .unwrap()
                .with_restrictions(positive_cone_restrictions(n))
                .unwrap();
            let restricted: Vec<String> = enumerate_chambers(&arr)
                .unwrap()
                .iter()
                .map(|c| c.sign_string())
                .collect();
            assert_eq!(filtered, restricted, "n={n}");
        }
    }

    #[test]
    fn wall_census_rank2() {
        // three lines through the origin in the plane: 6 chambers, 6 walls
        let arr = resonance_arrangement(2).unwrap();
        let chambers = enumerate_chambers(&arr).unwrap();
        let census = wall_census(&arr, chambers.len() as u64).unwrap();
        assert_eq!(census.per_hyperplane_wall_counts, vec![2, 2, 2]);
        assert_eq!(census.total_walls, 6);
        assert_eq!(census.average(), BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn threshold_walls_count_resonance_chambers() {
        // every hyperplane of Th_n holds R_{n-1} walls
        for (n, r_prev) in [(2usize, 2u64), (3, 6), (4, 32)] {
            let arr = threshold_arrangement(n).unwrap();
            let chambers = enumerate_chambers(&arr).unwrap();
            let census = wall_census(&arr, chambers.len() as u64).unwrap();
            assert!(census
                .per_hyperplane_wall_counts
                .iter()
                .all(|&w| w == r_prev), "n={n}: {:?}", census.per_hyperplane_wall_counts);
            assert_eq!(2 * census.total_walls, (1 << n) * r_prev);
        }
    }

    #[test]
    fn rank2_chambers_have_singleton_tree_sets() {
        let trees = enumerate_alternating_trees(3).unwrap();
        let chambers = enumerate_chambers(&resonance_arrangement(2).unwrap()).unwrap();
        for c in &chambers {
            assert_eq!(chamber_tree_set(c, &trees).unwrap().len(), 1);
        }
        // all six cones appear
        let sets = maximal_indexable_via_chambers(2, false, &trees, &chambers).unwrap();
        assert_eq!(sets.len(), 6);
    }

    #[test]
    fn rank3_positive_groups() {
        let chambers = enumerate_chambers(&resonance_arrangement(3).unwrap()).unwrap();
        let all = enumerate_alternating_trees(4).unwrap();
        let full = maximal_indexable_via_chambers(3, false, &all, &chambers).unwrap();
        assert_eq!(full.len(), 32);
        assert!(full.iter().all(|(_, mult)| *mult == 1));

        let positive = enumerate_positive_alternating_trees(4).unwrap();
        let groups = maximal_indexable_via_chambers(3, true, &positive, &chambers).unwrap();
        assert_eq!(groups.len(), 7); // K_3
        let multiplicities: usize = groups.iter().map(|(_, m)| m).sum();
        assert_eq!(multiplicities, 8); // 8 resonance chambers in the cone
        // the all-sinks star labels a chamber on its own
        let star = positive
            .iter()
            .position(|t| t.arcs() == [(1, 2), (1, 3), (1, 4)])
            .unwrap();
        assert!(groups.iter().any(|(set, _)| set == &vec![star]));
        // some chamber carries two trees
        assert!(groups.iter().any(|(set, _)| set.len() == 2));
    }

    #[test]
    fn jsonl_roundtrip() {
        let chambers = enumerate_chambers(&resonance_arrangement(2).unwrap()).unwrap();
        let text = chambers_to_jsonl(&chambers);
        let back = chambers_from_jsonl(&text).unwrap();
        assert_eq!(chambers, back);
        let first = text.lines().next().unwrap();
        assert!(first.starts_with("{\"signs\":\""), "{first}");
    }

    #[test]
    fn degenerate_normals_rejected() {
        // duplicate hyperplane modulo the equality: u_{1} and u_{2,3} agree
        // on x1+x2+x3 = 0 up to sign
        let normals = vec![
            resonance_normal(3, SubsetMask::from_elements([1], 2).unwrap()),
            vec![BigInt::zero(), BigInt::one(), BigInt::one()],
        ];
        let ones = vec![BigInt::one(); 3];
        assert!(CentralArrangement::new(3, normals, vec![ones], Vec::new()).is_err());
    }
}
