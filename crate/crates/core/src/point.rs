use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::sign::{Sign, SignConvention, SignVector};
use crate::subset::SubsetMask;
use crate::{Error, Result};

/// A point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalPoint {
    coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint { coords }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(vals: I) -> Self {
        RationalPoint {
            coords: vals
                .into_iter()
                .map(|v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        RationalPoint {
            coords: vec![BigRational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BigRational {
        &self.coords[i]
    }

    pub fn sum(&self) -> BigRational {
        self.coords.iter().sum()
    }

    pub fn sums_to_zero(&self) -> bool {
        self.sum().is_zero()
    }

    /// Sum of the coordinates indexed by `s` (1-based mask elements).
    pub fn subset_sum(&self, s: SubsetMask) -> BigRational {
        s.elements().map(|e| self.coords[e - 1].clone()).sum()
    }

    /// Inner product with an integer vector.
    pub fn dot_int(&self, v: &[BigInt]) -> BigRational {
        debug_assert_eq!(self.coords.len(), v.len());
        self.coords
            .iter()
            .zip(v)
            .map(|(c, w)| c * BigRational::from_integer(w.clone()))
            .sum()
    }

    /// Rescales so every coordinate is an integer; direction is unchanged.
    pub fn clear_denominators(&self) -> RationalPoint {
        let mut lcm = BigInt::one();
        for c in &self.coords {
            lcm = num_integer::lcm(lcm, c.denom().clone());
        }
        let factor = BigRational::from_integer(lcm);
        RationalPoint {
            coords: self.coords.iter().map(|c| c * &factor).collect(),
        }
    }

    /// Negated point.
    pub fn negate(&self) -> RationalPoint {
        RationalPoint {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Cyclic coordinate rotation `(x_1, ..., x_n) -> (x_2, ..., x_n, x_1)`.
    pub fn rotate(&self) -> RationalPoint {
        let mut coords = self.coords.clone();
        coords.rotate_left(1);
        RationalPoint { coords }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A nonnegative flow on the arcs of a directed graph, stored alongside the
/// arc list it labels (in the graph's canonical arc order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlowAssignment {
    arcs: Vec<(u8, u8)>,
    values: Vec<BigRational>,
}

impl FlowAssignment {
    pub fn new(arcs: Vec<(u8, u8)>, values: Vec<BigRational>) -> Result<Self> {
        if arcs.len() != values.len() {
            return Err(Error::structural(format!(
                "flow needs one value per arc: {} arcs, {} values",
                arcs.len(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| v.is_negative()) {
            return Err(Error::domain(format!("negative flow value {v}")));
        }
        Ok(FlowAssignment { arcs, values })
    }

    pub fn from_integers(arcs: Vec<(u8, u8)>, values: &[i64]) -> Result<Self> {
        Self::new(
            arcs,
            values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn arcs(&self) -> &[(u8, u8)] {
        &self.arcs
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.values.iter().all(|v| v.is_positive())
    }
}

/// The point induced by a nonnegative flow on an acyclic alternating graph:
/// `x_i = sum of flow out of i - sum of flow into i`. The result always sums
/// to zero exactly.
pub fn induce_point(n: usize, flow: &FlowAssignment) -> RationalPoint {
    let mut coords = vec![BigRational::zero(); n];
    for (&(i, j), v) in flow.arcs().iter().zip(flow.values()) {
        coords[i as usize - 1] += v;
        coords[j as usize - 1] -= v;
    }
    RationalPoint::new(coords)
}

/// Resonance sign vector of a point in `V_0 = {sum x_i = 0}`: for each
/// nonempty `S` contained in `[n-1]`, the sign of the subset sum over `S`.
pub fn resonance_sign_vector(x: &RationalPoint) -> Result<SignVector> {
    if !x.sums_to_zero() {
        return Err(Error::domain(format!(
            "resonance sign vectors need coordinates summing to zero, got sum {}",
            x.sum()
        )));
    }
    let n = x.dim();
    let mut entries = Vec::with_capacity((1 << (n - 1)) - 1);
    // subset sums by Gray-code-free DP: sum(s) = sum(s without lowest bit) + x_low
    let mut sums: Vec<BigRational> = Vec::with_capacity(1 << (n - 1));
    sums.push(BigRational::zero());
    for bits in 1u32..(1 << (n - 1)) {
        let low = bits.trailing_zeros() as usize;
        let rest = (bits & (bits - 1)) as usize;
        let sum = &sums[rest] + x.coord(low);
        entries.push(Sign::of_rational(&sum));
        sums.push(sum);
    }
    SignVector::new(n, SignConvention::Resonance, entries)
}

/// The `+/-1` normal vector `v_S` of the threshold arrangement: `+1` on `S`
/// (a subset of `[n-1]`), `-1` elsewhere including position `n`.
pub fn threshold_normal(n: usize, s: SubsetMask) -> Vec<BigInt> {
    (1..=n)
        .map(|i| {
            if s.contains(i) {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        })
        .collect()
}

/// Threshold sign vector of any point in `R^n`: sign of `<x, v_S>` for all
/// `S` contained in `[n-1]`, empty set included.
pub fn threshold_sign_vector(x: &RationalPoint) -> Result<SignVector> {
    let n = x.dim();
    if n < 1 {
        return Err(Error::bounds("threshold sign vectors need dimension >= 1"));
    }
    let total = x.sum();
    let mut entries = Vec::with_capacity(1 << (n - 1));
    let mut sums: Vec<BigRational> = Vec::with_capacity(1 << (n - 1));
    for bits in 0u32..(1 << (n - 1)) {
        let sum = if bits == 0 {
            BigRational::zero()
        } else {
            let low = bits.trailing_zeros() as usize;
            let rest = (bits & (bits - 1)) as usize;
            &sums[rest] + x.coord(low)
        };
        // <x, v_S> = 2 * sum_S - total
        let inner = &sum + &sum - &total;
        entries.push(Sign::of_rational(&inner));
        sums.push(sum);
    }
    SignVector::new(n, SignConvention::Threshold, entries)
}

/// Reflection negating the coordinates indexed by `J`; an involution.
pub fn reflect(x: &RationalPoint, j: SubsetMask) -> RationalPoint {
    RationalPoint::new(
        x.coords()
            .iter()
            .enumerate()
            .map(|(idx, c)| if j.contains(idx + 1) { -c } else { c.clone() })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::AlternatingTree;

    fn pt(vals: &[i64]) -> RationalPoint {
        RationalPoint::from_integers(vals.iter().copied())
    }

    #[test]
    fn induced_point_fig_example() {
        // arcs (1,2),(1,3),(4,3),(4,5),(6,5),(7,2) with flows a..f
        let t = AlternatingTree::new(7, vec![(1, 2), (1, 3), (4, 3), (4, 5), (6, 5), (7, 2)])
            .unwrap();
        let (a, b, c, d, e, f) = (1i64, 2, 3, 4, 5, 6);
        let flow = FlowAssignment::from_integers(t.arcs().to_vec(), &[a, b, c, d, e, f]).unwrap();
        let x = induce_point(7, &flow);
        assert_eq!(
            x,
            pt(&[a + b, -a - f, -b - c, c + d, -d - e, e, f])
        );
        assert!(x.sums_to_zero());
    }

    #[test]
    fn induced_point_small_example() {
        let t = AlternatingTree::new(4, vec![(1, 3), (2, 3), (2, 4)]).unwrap();
        let flow = FlowAssignment::from_integers(t.arcs().to_vec(), &[2, 1, 1]).unwrap();
        assert_eq!(induce_point(4, &flow), pt(&[2, 2, -3, -1]));
    }

    #[test]
    fn zero_flow_induces_origin() {
        let t = AlternatingTree::new(4, vec![(1, 3), (2, 3), (2, 4)]).unwrap();
        let flow = FlowAssignment::from_integers(t.arcs().to_vec(), &[0, 0, 0]).unwrap();
        assert_eq!(induce_point(4, &flow), RationalPoint::zero(4));
    }

    #[test]
    fn negative_flow_rejected() {
        assert!(FlowAssignment::from_integers(vec![(1, 2)], &[-1]).is_err());
    }

    #[test]
    fn resonance_worked_example() {
        // (sigma_1, sigma_2, sigma_3, sigma_12, sigma_13, sigma_23, sigma_123)
        // = (+, -, 0, -, +, -, -); entries are stored by ascending bitmask
        let sv = resonance_sign_vector(&pt(&[1, -2, 0, 1])).unwrap();
        let expect = [
            ([1].as_slice(), Sign::Plus),
            (&[2], Sign::Minus),
            (&[3], Sign::Zero),
            (&[1, 2], Sign::Minus),
            (&[1, 3], Sign::Plus),
            (&[2, 3], Sign::Minus),
            (&[1, 2, 3], Sign::Minus),
        ];
        for (elems, sign) in expect {
            let s = SubsetMask::from_elements(elems.iter().copied(), 3).unwrap();
            assert_eq!(sv.get(s), sign, "S={s}");
        }
        assert_eq!(sv.to_string(), "+,-,-,0,+,-,-");
    }

    #[test]
    fn resonance_rejects_nonzero_sum() {
        assert!(resonance_sign_vector(&pt(&[1, 1, 1])).is_err());
    }

    #[test]
    fn resonance_zero_vector() {
        let sv = resonance_sign_vector(&RationalPoint::zero(4)).unwrap();
        assert!(sv.entries().iter().all(|&s| s == Sign::Zero));
    }

    #[test]
    fn resonance_sign_23_pair() {
        let s23 = SubsetMask::from_elements([2, 3], 3).unwrap();
        let a = resonance_sign_vector(&pt(&[2, 2, -3, -1])).unwrap();
        assert_eq!(a.get(s23), Sign::Minus);
        let b = resonance_sign_vector(&pt(&[1, 3, -2, -2])).unwrap();
        assert_eq!(b.get(s23), Sign::Plus);
    }

    #[test]
    fn threshold_worked_examples() {
        // (tau_empty, tau_1, tau_2, tau_12) = (-, -, 0, +)
        let sv = threshold_sign_vector(&pt(&[1, 2, 1])).unwrap();
        assert_eq!(sv.to_string(), "-,-,0,+");
        // (tau_empty, tau_1, tau_2, tau_3, tau_12, tau_13, tau_23, tau_123)
        // = (-, -, +, -, 0, -, +, +)
        let sv = threshold_sign_vector(&pt(&[-1, 3, 1, 1])).unwrap();
        let expect = [
            ([].as_slice(), Sign::Minus),
            (&[1], Sign::Minus),
            (&[2], Sign::Plus),
            (&[3], Sign::Minus),
            (&[1, 2], Sign::Zero),
            (&[1, 3], Sign::Minus),
            (&[2, 3], Sign::Plus),
            (&[1, 2, 3], Sign::Plus),
        ];
        for (elems, sign) in expect {
            let s = SubsetMask::from_elements(elems.iter().copied(), 3).unwrap();
            assert_eq!(sv.get(s), sign, "S={s}");
        }
        assert_eq!(sv.to_string(), "-,-,+,0,-,-,+,+");
        let sv = threshold_sign_vector(&RationalPoint::zero(3)).unwrap();
        assert!(sv.entries().iter().all(|&s| s == Sign::Zero));
    }

    #[test]
    fn threshold_normals_match_subset_sums() {
        let x = pt(&[3, -1, 4, -5]);
        let sv = threshold_sign_vector(&x).unwrap();
        for s in SubsetMask::all_subsets(3) {
            let normal = threshold_normal(4, s);
            assert_eq!(sv.get(s), Sign::of_rational(&x.dot_int(&normal)), "S={s}");
        }
    }

    #[test]
    fn reflect_examples() {
        let x = pt(&[-1, 3, 1, 1]);
        let j = SubsetMask::from_elements([1, 2], 3).unwrap();
        assert_eq!(reflect(&x, j), pt(&[1, -3, 1, 1]));
        assert_eq!(reflect(&x, SubsetMask::EMPTY), x);
        assert_eq!(reflect(&reflect(&x, j), j), x);
    }

    #[test]
    fn resonance_threshold_agree_on_shared_indices() {
        // x in V_0 with no vanishing subset sums
        let x = pt(&[5, -1, -3, -1]);
        let res = resonance_sign_vector(&x).unwrap();
        let thr = threshold_sign_vector(&x).unwrap();
        for s in SubsetMask::nonempty_subsets(3) {
            assert_eq!(res.get(s), thr.get(s), "S={s}");
        }
    }

    #[test]
    fn clear_denominators_keeps_direction() {
        let x = RationalPoint::new(vec![
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(3)),
            BigRational::new(BigInt::from(-1), BigInt::from(6)),
        ]);
        let y = x.clear_denominators();
        assert_eq!(y, pt(&[3, -2, -1]));
    }
}
