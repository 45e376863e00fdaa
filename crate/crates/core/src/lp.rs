//! Exact rational LP feasibility.
//!
//! Two entry points share the same simplex machinery. [`lp_feasible`] decides
//! a general system of exact equalities plus per-variable lower bounds with a
//! phase-1 simplex under Bland's rule. [`cone_feasible`] decides systems of
//! the special shape `B x >= 1, E x = 0` that chamber splitting generates in
//! bulk; it runs the simplex on the dual, whose tableau has only as many rows
//! as the ambient dimension, and reads the primal witness off the optimal
//! multipliers. The two paths are checked against each other in the tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::{Error, Result};

/// A system of exact linear equalities with optional per-variable lower
/// bounds. Variables without a bound are free.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    variables: Vec<String>,
    equalities: Vec<(Vec<BigRational>, BigRational)>,
    lower_bounds: Vec<Option<BigRational>>,
}

impl LinearSystem {
    pub fn new(variables: Vec<String>) -> Self {
        let n = variables.len();
        LinearSystem {
            variables,
            equalities: Vec::new(),
            lower_bounds: vec![None; n],
        }
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn add_equality(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) -> Result<()> {
        if coeffs.len() != self.variables.len() {
            return Err(Error::structural(format!(
                "equality row has {} coefficients for {} variables",
                coeffs.len(),
                self.variables.len()
            )));
        }
        self.equalities.push((coeffs, rhs));
        Ok(())
    }

    pub fn set_lower_bound(&mut self, var: usize, bound: BigRational) -> Result<()> {
        if var >= self.variables.len() {
            return Err(Error::structural(format!("no variable with index {var}")));
        }
        self.lower_bounds[var] = Some(bound);
        Ok(())
    }

    pub fn equalities(&self) -> &[(Vec<BigRational>, BigRational)] {
        &self.equalities
    }

    pub fn lower_bounds(&self) -> &[Option<BigRational>] {
        &self.lower_bounds
    }

    /// Debug dump, one equality per line: `c1*v1 + c2*v2 ... = rhs`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (coeffs, rhs) in &self.equalities {
            let mut first = true;
            for (c, v) in coeffs.iter().zip(&self.variables) {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    out.push_str(" + ");
                }
                out.push_str(&format!("{c}*{v}"));
                first = false;
            }
            if first {
                out.push('0');
            }
            out.push_str(&format!(" = {rhs}\n"));
        }
        out
    }
}

/// Outcome of a feasibility solve. A witness, when present, satisfies every
/// equality exactly and every lower bound.
#[derive(Clone, Debug)]
pub struct FeasibilityResult {
    pub feasible: bool,
    pub witness: Option<Vec<BigRational>>,
}

const PIVOT_LIMIT_BASE: usize = 20_000;

/// Decides feasibility of a [`LinearSystem`] by a phase-1 simplex with
/// Bland's rule; exact arithmetic throughout, deterministic pivoting.
pub fn lp_feasible(sys: &LinearSystem) -> Result<FeasibilityResult> {
    let nvars = sys.num_variables();
    // shift bounded variables to zero, split free variables in two
    let mut col_of_var: Vec<(usize, Option<usize>)> = Vec::with_capacity(nvars);
    let mut ncols = 0usize;
    for lb in &sys.lower_bounds {
        if lb.is_some() {
            col_of_var.push((ncols, None));
            ncols += 1;
        } else {
            col_of_var.push((ncols, Some(ncols + 1)));
            ncols += 2;
        }
    }
    let m = sys.equalities.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    for (coeffs, b) in &sys.equalities {
        let mut row = vec![BigRational::zero(); ncols];
        let mut b = b.clone();
        for (v, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (pos, neg) = col_of_var[v];
            match (&sys.lower_bounds[v], neg) {
                (Some(l), _) => {
                    row[pos] = c.clone();
                    b -= c * l;
                }
                (None, Some(negcol)) => {
                    row[pos] = c.clone();
                    row[negcol] = -c.clone();
                }
                _ => unreachable!(),
            }
        }
        if b.is_negative() {
            for e in row.iter_mut() {
                *e = -std::mem::take(e);
            }
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
    }

    // phase-1 tableau: [A | I] with artificial basis, minimize sum of
    // artificials. Reduced costs for the y-columns start at -colsum.
    let total_cols = ncols + m;
    for (i, row) in rows.iter_mut().enumerate() {
        row.extend((0..m).map(|k| {
            if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        debug_assert_eq!(row.len(), total_cols);
    }
    let mut reduced: Vec<BigRational> = (0..total_cols)
        .map(|j| {
            let colsum: BigRational = rows.iter().map(|r| r[j].clone()).sum();
            let cost = if j >= ncols {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            cost - colsum
        })
        .collect();
    let mut basis: Vec<usize> = (ncols..total_cols).collect();

    let limit = PIVOT_LIMIT_BASE + 200 * (m + ncols);
    let mut pivots = 0usize;
    loop {
        // Bland: entering column = smallest index with negative reduced cost
        let Some(enter) = (0..total_cols).find(|&j| reduced[j].is_negative()) else {
            break;
        };
        // ratio test, ties broken by smallest basic variable index
        let mut best: Option<(BigRational, usize)> = None;
        for i in 0..m {
            if rows[i][enter].is_positive() {
                let ratio = &rhs[i] / &rows[i][enter];
                let better = match &best {
                    None => true,
                    Some((r, bi)) => {
                        ratio < *r || (ratio == *r && basis[i] < basis[*bi])
                    }
                };
                if better {
                    best = Some((ratio, i));
                }
            }
        }
        let Some((_, leave)) = best else {
            // phase-1 objective is bounded below by zero
            return Err(Error::invariant(
                "phase-1 simplex reported an unbounded direction".to_string(),
            ));
        };
        pivot(&mut rows, &mut rhs, &mut reduced, &mut basis, leave, enter);
        pivots += 1;
        if pivots > limit {
            return Err(Error::invariant(format!(
                "phase-1 simplex exceeded {limit} pivots"
            )));
        }
    }

    let infeasibility: BigRational = basis
        .iter()
        .zip(&rhs)
        .filter(|(&b, _)| b >= ncols)
        .map(|(_, v)| v.clone())
        .sum();
    if !infeasibility.is_zero() {
        return Ok(FeasibilityResult {
            feasible: false,
            witness: None,
        });
    }

    // read the witness back through the variable transformation
    let mut y = vec![BigRational::zero(); ncols];
    for (i, &b) in basis.iter().enumerate() {
        if b < ncols {
            y[b] = rhs[i].clone();
        }
    }
    let witness = (0..nvars)
        .map(|v| {
            let (pos, neg) = col_of_var[v];
            match (&sys.lower_bounds[v], neg) {
                (Some(l), _) => &y[pos] + l,
                (None, Some(negcol)) => &y[pos] - &y[negcol],
                _ => unreachable!(),
            }
        })
        .collect();
    Ok(FeasibilityResult {
        feasible: true,
        witness: Some(witness),
    })
}

fn pivot(
    rows: &mut [Vec<BigRational>],
    rhs: &mut [BigRational],
    reduced: &mut [BigRational],
    basis: &mut [usize],
    leave: usize,
    enter: usize,
) {
    let pv = rows[leave][enter].clone();
    if !pv.is_one() {
        for e in rows[leave].iter_mut() {
            if !e.is_zero() {
                *e /= &pv;
            }
        }
        rhs[leave] /= &pv;
    }
    let prow = rows[leave].clone();
    let prhs = rhs[leave].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == leave || row[enter].is_zero() {
            continue;
        }
        let f = row[enter].clone();
        for (e, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *e -= &f * p;
            }
        }
        rhs[i] -= &f * &prhs;
    }
    if !reduced[enter].is_zero() {
        let f = reduced[enter].clone();
        for (e, p) in reduced.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *e -= &f * p;
            }
        }
    }
    basis[leave] = enter;
}

/// Decides whether `{x : row . x >= 1 for every inequality row, eq . x = 0
/// for every equality row}` is nonempty, returning a witness when it is.
///
/// The simplex runs on the dual cone program, so the tableau has one row per
/// ambient coordinate regardless of how many inequalities pile up; for the
/// homogeneous margin-1 systems of chamber splitting this is dramatically
/// smaller than the primal tableau. Optimal multipliers of the dual are the
/// primal witness.
pub fn cone_feasible(ineqs: &[Vec<BigInt>], eqs: &[Vec<BigInt>]) -> Result<Option<Vec<BigRational>>> {
    let Some(dim) = ineqs.first().or_else(|| eqs.first()).map(|r| r.len()) else {
        return Ok(Some(Vec::new()));
    };
    if ineqs.is_empty() {
        // no margin constraints; any point of the equality subspace works
        return Ok(Some(vec![BigRational::zero(); dim]));
    }
    let m = ineqs.len();
    let e = eqs.len();
    // columns: m inequality duals (cost 1), 2e signed equality duals,
    // dim artificials kept pinned at zero
    let total_cols = m + 2 * e + dim;
    let art_base = m + 2 * e;
    let original = |j: usize, i: usize| -> BigRational {
        if j < m {
            BigRational::from_integer(ineqs[j][i].clone())
        } else if j < m + e {
            BigRational::from_integer(eqs[j - m][i].clone())
        } else if j < art_base {
            BigRational::from_integer(-eqs[j - m - e][i].clone())
        } else if j - art_base == i {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    let mut rows: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| (0..total_cols).map(|j| original(j, i)).collect())
        .collect();
    // every basic value is zero throughout, so no rhs column is carried;
    // maximize the sum of the inequality duals
    let mut reduced: Vec<BigRational> = (0..total_cols)
        .map(|j| {
            if j < m {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let mut basis: Vec<usize> = (art_base..total_cols).collect();
    let mut alive = vec![true; total_cols];

    let limit = PIVOT_LIMIT_BASE + 200 * (m + e + dim);
    let mut pivots = 0usize;
    loop {
        let Some(enter) = (0..total_cols).find(|&j| alive[j] && reduced[j].is_positive()) else {
            // optimal with value 0: primal feasible, witness from multipliers
            return Ok(Some(multipliers(ineqs, eqs, &basis, m, e, dim)?));
        };
        // all ratios are zero; a row blocks if its entry is positive, or if
        // it holds an artificial that any nonzero entry would move
        let mut leave: Option<usize> = None;
        for i in 0..dim {
            let entry = &rows[i][enter];
            let is_art = basis[i] >= art_base;
            let blocks = if is_art {
                !entry.is_zero()
            } else {
                entry.is_positive()
            };
            if blocks {
                let better = match leave {
                    None => true,
                    Some(l) => basis[i] < basis[l],
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // unbounded ray with zero artificial components: Farkas
            // certificate that the primal cone side is empty
            return Ok(None);
        };
        if basis[leave] >= art_base {
            alive[basis[leave]] = false;
        }
        cone_pivot(&mut rows, &mut reduced, &mut basis, leave, enter);
        pivots += 1;
        if pivots > limit {
            return Err(Error::invariant(format!(
                "dual simplex exceeded {limit} pivots"
            )));
        }
    }
}

fn cone_pivot(
    rows: &mut [Vec<BigRational>],
    reduced: &mut [BigRational],
    basis: &mut [usize],
    leave: usize,
    enter: usize,
) {
    let pv = rows[leave][enter].clone();
    if !pv.is_one() {
        for e in rows[leave].iter_mut() {
            if !e.is_zero() {
                *e /= &pv;
            }
        }
    }
    let prow = rows[leave].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == leave || row[enter].is_zero() {
            continue;
        }
        let f = row[enter].clone();
        for (e, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *e -= &f * p;
            }
        }
    }
    if !reduced[enter].is_zero() {
        let f = reduced[enter].clone();
        for (e, p) in reduced.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *e -= &f * p;
            }
        }
    }
    basis[leave] = enter;
}

/// Solves `A_B^T pi = c_B` for the optimal dual multipliers, which satisfy
/// `ineq . pi >= 1` and `eq . pi = 0`.
fn multipliers(
    ineqs: &[Vec<BigInt>],
    eqs: &[Vec<BigInt>],
    basis: &[usize],
    m: usize,
    e: usize,
    dim: usize,
) -> Result<Vec<BigRational>> {
    let art_base = m + 2 * e;
    let column = |j: usize, i: usize| -> BigRational {
        if j < m {
            BigRational::from_integer(ineqs[j][i].clone())
        } else if j < m + e {
            BigRational::from_integer(eqs[j - m][i].clone())
        } else if j < art_base {
            BigRational::from_integer(-eqs[j - m - e][i].clone())
        } else if j - art_base == i {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    // rows of the transposed basis matrix, one per basic column
    let a = basis
        .iter()
        .map(|&j| (0..dim).map(|i| column(j, i)).collect())
        .collect::<Vec<Vec<BigRational>>>();
    let c = basis
        .iter()
        .map(|&j| {
            if j < m {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let pi = linalg::solve_square(a, c)
        .ok_or_else(|| Error::invariant("singular basis at dual optimum".to_string()))?;
    debug_assert!(ineqs.iter().all(|r| {
        pi.iter()
            .zip(r)
            .map(|(p, c)| p * BigRational::from_integer(c.clone()))
            .sum::<BigRational>()
            >= BigRational::one()
    }));
    debug_assert!(eqs.iter().all(|r| {
        pi.iter()
            .zip(r)
            .map(|(p, c)| p * BigRational::from_integer(c.clone()))
            .sum::<BigRational>()
            .is_zero()
    }));
    Ok(pi)
}
