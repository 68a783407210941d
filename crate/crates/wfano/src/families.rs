//! Classification of quasi-smooth terminal Fano 3-fold weighted hypersurfaces:
//! the combinatorial acceptance conditions, the quasi-smoothness criterion for
//! a general member, singularity baskets, anticanonical invariants, and the
//! bounded enumeration producing the full list of families.
//!
//! Everything here is integer arithmetic until the final exact invariants, so
//! the search over weight tuples stays fast. The enumeration is data-parallel
//! over degrees when the `parallel` feature is enabled.

use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::ambient::{normalize_quotient_type, QuotType};
use crate::rat::{fmt_rat, int, Rat};
use crate::{Error, Result};

/// Terminal cyclic quotient point `1/r (1, a, r-a)` with a multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct QuotSing {
    pub r: u32,
    pub a: u32,
    pub mult: u32,
}

/// Multiset of quotient singularities.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Basket(pub Vec<QuotSing>);

impl Basket {
    pub fn push(&mut self, r: u32, a: u32, mult: u32) {
        if let Some(e) = self.0.iter_mut().find(|e| e.r == r && e.a == a) {
            e.mult += mult;
        } else {
            self.0.push(QuotSing { r, a, mult });
        }
        self.0.sort();
    }

    /// Types present, ignoring multiplicities.
    pub fn types(&self) -> Vec<(u32, u32)> {
        self.0.iter().map(|e| (e.r, e.a)).collect()
    }
}

/// `sum mult * (r - 1/r)`, and the comparison against the global bound 24.
pub fn reid_sum(b: &Basket) -> (Rat, bool) {
    let mut s = int(0);
    for e in &b.0 {
        s += (int(e.r as i64) - int(1) / int(e.r as i64)) * int(e.mult as i64);
    }
    let pass = s <= int(24);
    (s, pass)
}

/// One classified family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub degree: u32,
    pub weights: [u32; 5],
    pub index: u32,
    #[serde(rename = "A3", serialize_with = "crate::cli::ser_rat")]
    pub a3: Rat,
    #[serde(rename = "minusK3", serialize_with = "crate::cli::ser_rat")]
    pub minus_k3: Rat,
    pub basket: Basket,
}

/// Per-bullet verdicts of the combinatorial acceptance condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub ascending: bool,
    pub top_weight_below_degree: bool,
    pub subset_gcds_one: bool,
    pub degree_below_weight_sum: bool,
}

impl ConditionVerdict {
    pub fn all(&self) -> bool {
        self.ascending
            && self.top_weight_below_degree
            && self.subset_gcds_one
            && self.degree_below_weight_sum
    }
}

/// Check the combinatorial bullets (everything except existence of a
/// quasi-smooth terminal member).
pub fn condition_check(d: u32, w: &[u32; 5]) -> ConditionVerdict {
    ConditionVerdict {
        ascending: w.windows(2).all(|p| p[0] <= p[1]),
        top_weight_below_degree: w[4] < d,
        subset_gcds_one: crate::ambient::wellformed_wps(w),
        degree_below_weight_sum: d < w.iter().sum::<u32>(),
    }
}

/// Which degrees are representable as non-negative combinations of the listed
/// weights, up to `max` inclusive.
fn representable(max: u32, weights: &[u32]) -> Vec<bool> {
    let mut f = vec![false; max as usize + 1];
    f[0] = true;
    for &a in weights {
        let a = a as usize;
        if a == 0 || a > max as usize {
            continue;
        }
        for n in a..=max as usize {
            if f[n - a] {
                f[n] = true;
            }
        }
    }
    f
}

/// Quasi-smoothness of a general degree-`d` hypersurface: for every nonempty
/// coordinate subset `I`, either a monomial of degree `d` purely in `I`
/// exists, or there are `|I|` monomials `x_I^M x_e` with pairwise distinct
/// `e` outside `I`. Linear cones are rejected.
pub fn general_qsmooth(d: u32, w: &[u32; 5]) -> bool {
    if w.contains(&d) {
        return false;
    }
    for mask in 1u32..(1 << 5) {
        let inside: Vec<u32> = (0..5)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| w[i])
            .collect();
        let f = representable(d, &inside);
        if f[d as usize] {
            continue;
        }
        let k = inside.len();
        let hits = (0..5)
            .filter(|i| mask & (1 << i) == 0)
            .filter(|&e| w[e] <= d && f[(d - w[e]) as usize])
            .count();
        if hits < k {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasketReject {
    /// A positive-dimensional singular stratum lies inside the general member.
    StratumInMember(Vec<usize>),
    /// A quotient point fails to be isolated or terminal.
    BadType(u32, [i64; 3]),
    /// No tangent monomial at a coordinate point on the member.
    NoTangent(usize),
}

impl From<BasketReject> for Error {
    fn from(r: BasketReject) -> Error {
        Error::NonTerminal(format!("{r:?}"))
    }
}

/// Tangent coordinates at the coordinate point `p_i`: all `j != i` with a
/// monomial `x_i^k x_j` of degree `d` (`k >= 1`).
pub fn tangent_coords(d: u32, w: &[u32; 5], i: usize) -> Vec<usize> {
    (0..5)
        .filter(|&j| j != i)
        .filter(|&j| w[j] < d && (d - w[j]).is_multiple_of(w[i]) && (d - w[j]) >= w[i])
        .collect()
}

/// Basket of the general quasi-smooth member: coordinate points with
/// `a_i >= 2` and `a_i` not dividing `d` contribute their normalized type;
/// each one-dimensional singular stratum contributes its count of non-vertex
/// zeros of the restricted binary form.
pub fn basket(d: u32, w: &[u32; 5]) -> std::result::Result<Basket, BasketReject> {
    let mut out = Basket::default();

    // Two-dimensional (or larger) singular strata would meet the member in a
    // positive-dimensional singular locus.
    for mask in 1u32..(1 << 5) {
        let subset: Vec<usize> = (0..5).filter(|i| mask & (1 << i) != 0).collect();
        if subset.len() >= 3 {
            let g = subset.iter().fold(0u32, |g, &i| g.gcd(&w[i]));
            if g > 1 {
                return Err(BasketReject::StratumInMember(subset));
            }
        }
    }

    // Coordinate points.
    for i in 0..5 {
        if w[i] < 2 || d.is_multiple_of(w[i]) {
            continue;
        }
        let tangents = tangent_coords(d, w, i);
        let Some(&j) = tangents.first() else {
            return Err(BasketReject::NoTangent(i));
        };
        let locals: Vec<i64> = (0..5)
            .filter(|&l| l != i && l != j)
            .map(|l| w[l] as i64)
            .collect();
        let tri = [locals[0], locals[1], locals[2]];
        match normalize_quotient_type(w[i], tri) {
            QuotType::Terminal { r, a } => out.push(r, a, 1),
            _ => return Err(BasketReject::BadType(w[i], tri)),
        }
    }

    // One-dimensional strata: edges with a common factor.
    for i in 0..5 {
        for j in i + 1..5 {
            let g = w[i].gcd(&w[j]);
            if g <= 1 {
                continue;
            }
            // Monomials x_i^alpha x_j^beta of degree d.
            let sols: Vec<(u32, u32)> = (0..=d / w[i])
                .filter_map(|alpha| {
                    let rest = d - alpha * w[i];
                    rest.is_multiple_of(w[j]).then_some((alpha, rest / w[j]))
                })
                .collect();
            if sols.is_empty() {
                return Err(BasketReject::StratumInMember(vec![i, j]));
            }
            let roots = (sols.len() - 1) as u32;
            if roots == 0 {
                continue;
            }
            let locals: Vec<i64> = (0..5)
                .filter(|&l| l != i && l != j)
                .map(|l| w[l] as i64)
                .collect();
            let tri = [locals[0], locals[1], locals[2]];
            match normalize_quotient_type(g, tri) {
                QuotType::Terminal { r, a } => out.push(r, a, roots),
                _ => return Err(BasketReject::BadType(g, tri)),
            }
        }
    }

    Ok(out)
}

/// Fano index, `(A^3)` and `(-K)^3` as exact rationals.
pub fn invariants(d: u32, w: &[u32; 5]) -> (i64, Rat, Rat) {
    let iota = w.iter().map(|&a| a as i64).sum::<i64>() - d as i64;
    let prod = w.iter().fold(int(1), |p, &a| p * int(a as i64));
    let a3 = int(d as i64) / prod;
    let k3 = int(iota).pow(3) * &a3;
    (iota, a3, k3)
}

fn record_for(d: u32, w: &[u32; 5]) -> Option<FamilyRecord> {
    if !condition_check(d, w).all() {
        return None;
    }
    if !general_qsmooth(d, w) {
        return None;
    }
    let basket = basket(d, w).ok()?;
    let (iota, a3, k3) = invariants(d, w);
    if iota < 1 || !k3.is_positive() {
        return None;
    }
    Some(FamilyRecord {
        degree: d,
        weights: *w,
        index: iota as u32,
        a3,
        minus_k3: k3,
        basket,
    })
}

/// All candidate tuples for one degree, weights drawn from values that are
/// either at most 24 or divide `d` (any coordinate point surviving on the
/// member is a quotient point of index equal to its weight, so indices above
/// 24 force divisibility).
fn records_for_degree(d: u32, bound: u32) -> Vec<FamilyRecord> {
    let pool: Vec<u32> = (1..=bound.min(d.saturating_sub(1)))
        .filter(|&a| a <= 24 || d.is_multiple_of(a))
        .collect();
    let mut out = Vec::new();
    let sum_needed = d + 1;
    // Descending choices with cascading lower bounds from d < a0 + .. + a4.
    for &a4 in pool.iter().rev() {
        if 5 * a4 < sum_needed {
            break;
        }
        for &a3 in pool.iter().rev().filter(|&&a| a <= a4) {
            if a4 + 4 * a3 < sum_needed {
                break;
            }
            for &a2 in pool.iter().rev().filter(|&&a| a <= a3) {
                if a4 + a3 + 3 * a2 < sum_needed {
                    break;
                }
                for &a1 in pool.iter().rev().filter(|&&a| a <= a2) {
                    if a4 + a3 + a2 + 2 * a1 < sum_needed {
                        break;
                    }
                    for &a0 in pool.iter().rev().filter(|&&a| a <= a1) {
                        if a4 + a3 + a2 + a1 + a0 < sum_needed {
                            break;
                        }
                        let w = [a0, a1, a2, a3, a4];
                        if let Some(r) = record_for(d, &w) {
                            out.push(r);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Enumerate every family with all weights at most `bound`. The classification
/// is complete from `bound = 168` onwards.
pub fn enumerate(bound: u32) -> Vec<FamilyRecord> {
    let degrees: Vec<u32> = (2..=5 * bound).collect();
    let mut out: Vec<FamilyRecord> = map_degrees(&degrees, bound);
    out.sort_by_key(|r| (r.degree, r.weights));
    out
}

#[cfg(feature = "parallel")]
fn map_degrees(degrees: &[u32], bound: u32) -> Vec<FamilyRecord> {
    use rayon::prelude::*;
    degrees
        .par_iter()
        .flat_map(|&d| records_for_degree(d, bound))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn map_degrees(degrees: &[u32], bound: u32) -> Vec<FamilyRecord> {
    degrees
        .iter()
        .flat_map(|&d| records_for_degree(d, bound))
        .collect()
}

/// Strictly sequential enumeration, kept available for benchmarking against
/// the data-parallel path.
pub fn enumerate_serial(bound: u32) -> Vec<FamilyRecord> {
    let mut out: Vec<FamilyRecord> = (2..=5 * bound)
        .flat_map(|d| records_for_degree(d, bound))
        .collect();
    out.sort_by_key(|r| (r.degree, r.weights));
    out
}

/// Record for one (degree, weights) pair, with errors explaining rejection.
pub fn family_record(d: u32, w: &[u32; 5]) -> Result<FamilyRecord> {
    let cond = condition_check(d, w);
    if !cond.all() {
        return Err(Error::input(format!(
            "combinatorial condition fails: {cond:?}"
        )));
    }
    if !general_qsmooth(d, w) {
        return Err(Error::input("general member is not quasi-smooth"));
    }
    let basket = basket(d, w).map_err(Error::from)?;
    let (iota, a3, k3) = invariants(d, w);
    if iota < 1 {
        return Err(Error::input("index must be positive"));
    }
    Ok(FamilyRecord {
        degree: d,
        weights: *w,
        index: iota as u32,
        a3,
        minus_k3: k3,
        basket,
    })
}

impl std::fmt::Display for FamilyRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "X_{} in P({},{},{},{},{})  iota={}  A^3={}  basket {:?}",
            self.degree,
            self.weights[0],
            self.weights[1],
            self.weights[2],
            self.weights[3],
            self.weights[4],
            self.index,
            fmt_rat(&self.a3),
            self.basket.types(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn condition_examples() {
        assert!(condition_check(18, &[1, 2, 3, 5, 9]).all());
        let v = condition_check(5, &[1, 1, 1, 2, 5]);
        assert!(!v.top_weight_below_degree);
        let v = condition_check(10, &[1, 1, 1, 1, 1]);
        assert!(!v.degree_below_weight_sum);
    }

    #[test]
    fn qsmooth_examples() {
        assert!(general_qsmooth(21, &[1, 3, 5, 7, 8]));
        assert!(general_qsmooth(7, &[1, 1, 1, 2, 3]));
        assert!(!general_qsmooth(6, &[1, 1, 2, 3, 6]));
        assert!(general_qsmooth(18, &[1, 2, 3, 5, 9]));
        assert!(general_qsmooth(38, &[2, 3, 5, 11, 19]));
    }

    #[test]
    fn basket_examples() {
        let b = basket(18, &[1, 2, 3, 5, 9]).unwrap();
        assert_eq!(
            b.0,
            vec![
                QuotSing { r: 3, a: 1, mult: 2 },
                QuotSing { r: 5, a: 2, mult: 1 }
            ]
        );
        let b = basket(21, &[1, 3, 5, 7, 8]).unwrap();
        assert_eq!(
            b.0,
            vec![
                QuotSing { r: 5, a: 1, mult: 1 },
                QuotSing { r: 8, a: 3, mult: 1 }
            ]
        );
        let b = basket(38, &[2, 3, 5, 11, 19]).unwrap();
        assert_eq!(
            b.0,
            vec![
                QuotSing { r: 3, a: 1, mult: 1 },
                QuotSing { r: 5, a: 2, mult: 1 },
                QuotSing { r: 11, a: 4, mult: 1 }
            ]
        );
    }

    #[test]
    fn basket_tangent_choice_is_immaterial() {
        // Whenever several tangent monomials exist at a point, the normalized
        // type agrees across all choices.
        for rec in enumerate(9) {
            let (d, w) = (rec.degree, rec.weights);
            for i in 0..5 {
                if w[i] < 2 || d % w[i] == 0 {
                    continue;
                }
                let mut types = Vec::new();
                for j in tangent_coords(d, &w, i) {
                    let locals: Vec<i64> = (0..5)
                        .filter(|&l| l != i && l != j)
                        .map(|l| w[l] as i64)
                        .collect();
                    types.push(normalize_quotient_type(
                        w[i],
                        [locals[0], locals[1], locals[2]],
                    ));
                }
                assert!(
                    types.windows(2).all(|p| p[0] == p[1]),
                    "{d} {w:?} point {i}"
                );
            }
        }
    }

    #[test]
    fn invariants_examples() {
        let (i, a3, _) = invariants(18, &[1, 2, 3, 5, 9]);
        assert_eq!((i, a3), (2, rat(1, 15)));
        let (i, a3, _) = invariants(38, &[2, 3, 5, 11, 19]);
        assert_eq!((i, a3), (2, rat(1, 165)));
        let (i, a3, _) = invariants(7, &[1, 1, 1, 2, 3]);
        assert_eq!((i, a3), (1, rat(7, 6)));
        let (i, a3, _) = invariants(21, &[1, 3, 5, 7, 8]);
        assert_eq!((i, a3), (3, rat(1, 40)));
    }

    #[test]
    fn reid_sum_examples() {
        let mut b = Basket::default();
        b.push(5, 1, 1);
        b.push(8, 3, 1);
        let (s, ok) = reid_sum(&b);
        assert_eq!(s, rat(507, 40));
        assert!(ok);
        let (s, ok) = reid_sum(&Basket::default());
        assert_eq!(s, int(0));
        assert!(ok);
        let mut b = Basket::default();
        b.push(25, 1, 1);
        let (s, ok) = reid_sum(&b);
        assert_eq!(s, rat(624, 25));
        assert!(!ok);
    }

    #[test]
    fn enumerate_tiny_bounds() {
        let r1 = enumerate(1);
        let dws: Vec<(u32, [u32; 5])> = r1.iter().map(|r| (r.degree, r.weights)).collect();
        assert_eq!(
            dws,
            vec![
                (2, [1, 1, 1, 1, 1]),
                (3, [1, 1, 1, 1, 1]),
                (4, [1, 1, 1, 1, 1])
            ]
        );
        let idx: Vec<u32> = r1.iter().map(|r| r.index).collect();
        assert_eq!(idx, vec![3, 2, 1]);

        let r9 = enumerate(9);
        assert!(r9
            .iter()
            .any(|r| r.degree == 18 && r.weights == [1, 2, 3, 5, 9]));
        assert!(r9
            .iter()
            .any(|r| r.degree == 21 && r.weights == [1, 3, 5, 7, 8]));
    }

    #[test]
    fn five_families_present() {
        let recs = enumerate(19);
        for (d, w) in [
            (18u32, [1u32, 2, 3, 5, 9]),
            (22, [1, 2, 3, 7, 11]),
            (26, [1, 2, 5, 7, 13]),
            (38, [2, 3, 5, 11, 19]),
            (21, [1, 3, 5, 7, 8]),
        ] {
            assert!(
                recs.iter().any(|r| r.degree == d && r.weights == w),
                "{d} {w:?}"
            );
        }
    }
}
