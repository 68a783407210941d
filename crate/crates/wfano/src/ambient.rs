//! Weighted projective spaces, their singular strata, and rank-2 toric
//! varieties with the 2-ray game.
//!
//! A rank-2 toric variety is a 2 x n integer grading matrix with an
//! irrelevant-ideal split. The game orders the column rays by angle inside the
//! (strictly convex) effective cone, walks the chambers from the first block
//! to the last ray and reports each interior ray as a wall. Target weighted
//! projective data is read off through a primitive linear functional, which
//! makes it invariant under integral row operations on the grading.

use num_integer::Integer;
use serde::Serialize;

use crate::{Error, Result};

/// Weighted projective space: positive integer weights with coordinate names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wps {
    pub weights: Vec<u32>,
    pub names: Vec<String>,
}

impl Wps {
    pub fn new(weights: &[u32], names: &[&str]) -> Self {
        assert_eq!(weights.len(), names.len());
        assert!(weights.iter().all(|&w| w >= 1));
        Wps {
            weights: weights.to_vec(),
            names: names.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// `gcd` of every (n-1)-subset of the weights is 1.
pub fn wellformed_wps(weights: &[u32]) -> bool {
    let n = weights.len();
    (0..n).all(|k| {
        weights
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .fold(0u32, |g, (_, &a)| g.gcd(&a))
            == 1
    })
}

/// Maximal coordinate subsets whose weights share a common factor, with that
/// factor. A subset is maximal when no strict superset has the same gcd.
/// Ordered by subset size, then by indices.
pub fn singular_strata(w: &Wps) -> Result<Vec<(Vec<usize>, u32)>> {
    if !wellformed_wps(&w.weights) {
        return Err(Error::input("weighted projective space is not well-formed"));
    }
    let n = w.weights.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let g = subset.iter().fold(0u32, |g, &i| g.gcd(&w.weights[i]));
        if g <= 1 {
            continue;
        }
        let maximal = (0..n)
            .filter(|i| !subset.contains(i))
            .all(|j| g.gcd(&w.weights[j]) < g);
        if maximal {
            out.push((subset, g));
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(out)
}

/// Outcome of reducing a cyclic quotient `1/r (w1, w2, w3)` to canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuotType {
    /// Terminal type `1/r (1, a, r-a)`.
    Terminal { r: u32, a: u32 },
    /// Some weight is divisible enough that a group element fixes a positive
    /// dimensional locus.
    NonIsolated,
    /// Isolated but not of the terminal form.
    NonTerminal,
}

/// Reduce weights mod `r` and search unit multiples for the `1/r (1, a, r-a)`
/// form; `a` is reported as the smaller member of the complementary pair.
pub fn normalize_quotient_type(r: u32, w: [i64; 3]) -> QuotType {
    assert!(r >= 2);
    let red: Vec<u32> = w
        .iter()
        .map(|&x| (x.rem_euclid(r as i64)) as u32)
        .collect();
    if red.contains(&0) {
        return QuotType::NonIsolated;
    }
    if red.iter().any(|&x| x.gcd(&r) != 1) {
        return QuotType::NonIsolated;
    }
    let mut best: Option<u32> = None;
    for i in 0..3 {
        let lambda = mod_inverse(red[i], r).expect("coprime");
        let m: Vec<u32> = red.iter().map(|&x| (x as u64 * lambda as u64 % r as u64) as u32).collect();
        let mut others: Vec<u32> = (0..3).filter(|&j| j != i).map(|j| m[j]).collect();
        others.sort_unstable();
        if (others[0] + others[1]).is_multiple_of(r) {
            let a = others[0].min(r - others[0]);
            best = Some(best.map_or(a, |b: u32| b.min(a)));
        }
    }
    match best {
        Some(a) => QuotType::Terminal { r, a },
        None => QuotType::NonTerminal,
    }
}

fn mod_inverse(a: u32, m: u32) -> Option<u32> {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i64) as u32)
}

/// Rank-2 toric variety: 2 x n grading, irrelevant split after `split`
/// columns, one label per column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricRank2 {
    pub rows: [Vec<i64>; 2],
    pub split: usize,
    pub labels: Vec<String>,
}

/// Parse a grading from JSON `{"rows": [[..],[..]], "split": m, "labels": [..]}`,
/// validating the invariants.
pub fn toric_from_json(text: &str) -> Result<ToricRank2> {
    #[derive(serde::Deserialize)]
    struct Raw {
        rows: [Vec<i64>; 2],
        split: usize,
        labels: Vec<String>,
    }
    let raw: Raw = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("malformed matrix JSON: {e}")))?;
    let labels: Vec<&str> = raw.labels.iter().map(|s| s.as_str()).collect();
    ToricRank2::new(raw.rows, raw.split, &labels)
}

impl ToricRank2 {
    pub fn new(rows: [Vec<i64>; 2], split: usize, labels: &[&str]) -> Result<Self> {
        let n = rows[0].len();
        if rows[1].len() != n || labels.len() != n {
            return Err(Error::input("ragged toric data"));
        }
        if split == 0 || split >= n {
            return Err(Error::input("irrelevant split must be interior"));
        }
        let t = ToricRank2 {
            rows,
            split,
            labels: labels.iter().map(|s| s.to_string()).collect(),
        };
        for i in 0..n {
            if t.col(i) == (0, 0) {
                return Err(Error::input(format!("zero column {i}")));
            }
        }
        Ok(t)
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn col(&self, i: usize) -> (i64, i64) {
        (self.rows[0][i], self.rows[1][i])
    }

    /// Bidegree of a monomial with the given exponents.
    pub fn bidegree(&self, exps: &[u32]) -> (i64, i64) {
        let mut d = (0i64, 0i64);
        for (i, &e) in exps.iter().enumerate() {
            d.0 += self.rows[0][i] * e as i64;
            d.1 += self.rows[1][i] * e as i64;
        }
        d
    }
}

fn primitive(v: (i64, i64)) -> (i64, i64) {
    let g = v.0.unsigned_abs().gcd(&v.1.unsigned_abs()) as i64;
    (v.0 / g, v.1 / g)
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// One wall of the chamber walk: the primitive ray with the columns on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub ray: (i64, i64),
    pub columns: Vec<usize>,
}

/// How the walk ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GameEnd {
    /// The final ray carries one column; contracting it maps onto a weighted
    /// projective space whose weights are listed with their column labels.
    DivisorialContraction {
        eliminated: usize,
        target_weights: Vec<u32>,
        target_labels: Vec<String>,
    },
    /// The final ray carries several columns; the model fibres over a weighted
    /// projective space built from those columns.
    Fibration {
        ray_columns: Vec<usize>,
        base_weights: Vec<u32>,
        base_labels: Vec<String>,
    },
}

/// Trace of the 2-ray game: ordered walls and the terminal event.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameTrace {
    pub walls: Vec<Wall>,
    pub end: GameEnd,
}

/// Run the 2-ray game from the first-block boundary towards the last ray.
pub fn two_ray_game(t: &ToricRank2) -> Result<GameTrace> {
    let n = t.ncols();
    let cols: Vec<(i64, i64)> = (0..n).map(|i| t.col(i)).collect();

    // The effective cone must be strictly convex for the angular order to be
    // meaningful: find a functional strictly positive on all columns.
    let mut boundary: Vec<usize> = Vec::new();
    for i in 0..n {
        let pos = cols.iter().all(|&c| cross(cols[i], c) >= 0);
        let neg = cols.iter().all(|&c| cross(cols[i], c) <= 0);
        if pos || neg {
            boundary.push(i);
        }
        if cols.iter().any(|&c| c == (-cols[i].0, -cols[i].1))
            || cols.iter().any(|&c| {
                cross(cols[i], c) == 0 && c.0 * cols[i].0 + c.1 * cols[i].1 < 0
            })
        {
            return Err(Error::input("effective cone is not strictly convex"));
        }
    }
    if boundary.is_empty() {
        return Err(Error::input("degenerate grading: no boundary ray"));
    }

    // Group columns by primitive ray and order rays by angle from one
    // boundary; inside a strictly convex cone the cross product is a total
    // order.
    let mut rays: Vec<(i64, i64)> = cols.iter().map(|&c| primitive(c)).collect();
    rays.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if cross(a, b) > 0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    rays.dedup();

    // Orient the sweep so the first block occupies a prefix of the rays.
    let ray_of = |i: usize| primitive(cols[i]);
    let index_of = |rays: &[(i64, i64)], r: (i64, i64)| rays.iter().position(|&x| x == r).unwrap();
    let first_is_prefix = |rays: &[(i64, i64)]| -> bool {
        let max_first = (0..t.split)
            .map(|i| index_of(rays, ray_of(i)))
            .max()
            .unwrap();
        let min_second = (t.split..n)
            .map(|i| index_of(rays, ray_of(i)))
            .min()
            .unwrap();
        max_first < min_second
    };
    if !first_is_prefix(&rays) {
        rays.reverse();
        if !first_is_prefix(&rays) {
            return Err(Error::input(
                "irrelevant split does not separate the rays into a prefix and a suffix",
            ));
        }
    }

    let block_end = (0..t.split).map(|i| index_of(&rays, ray_of(i))).max().unwrap();
    // Both blocks must span 2-dimensional cones.
    let block_is_2d = |lo: usize, hi: usize| {
        (lo..hi).any(|i| (lo..hi).any(|j| cross(cols[i], cols[j]) != 0))
    };
    if !block_is_2d(0, t.split) {
        return Err(Error::input("first block is collinear"));
    }
    if !block_is_2d(t.split, n) {
        return Err(Error::input("second block is collinear"));
    }

    let cols_on = |r: (i64, i64)| -> Vec<usize> {
        (0..n).filter(|&i| ray_of(i) == r).collect()
    };

    let walls: Vec<Wall> = rays[block_end + 1..rays.len() - 1]
        .iter()
        .map(|&r| Wall {
            ray: r,
            columns: cols_on(r),
        })
        .collect();

    let last = *rays.last().unwrap();
    let last_cols = cols_on(last);
    let end = if last_cols.len() == 1 {
        let eliminated = last_cols[0];
        let lam = lambda_for(cols[eliminated], &cols, eliminated)?;
        let mut vals: Vec<i64> = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        for i in 0..n {
            if i == eliminated {
                continue;
            }
            vals.push(lam.0 * cols[i].0 + lam.1 * cols[i].1);
            labels.push(t.labels[i].clone());
        }
        let g = vals.iter().fold(0u64, |g, &v| g.gcd(&(v as u64)));
        let target_weights: Vec<u32> = vals.iter().map(|&v| (v as u64 / g) as u32).collect();
        GameEnd::DivisorialContraction {
            eliminated,
            target_weights,
            target_labels: labels,
        }
    } else {
        // Base weights are the multiples of the primitive ray.
        let mut ws: Vec<u64> = Vec::new();
        for &i in &last_cols {
            let c = cols[i];
            let m = if last.0 != 0 { c.0 / last.0 } else { c.1 / last.1 };
            ws.push(m as u64);
        }
        let g = ws.iter().fold(0u64, |g, &v| g.gcd(&v));
        GameEnd::Fibration {
            base_weights: ws.iter().map(|&w| (w / g) as u32).collect(),
            base_labels: last_cols.iter().map(|&i| t.labels[i].clone()).collect(),
            ray_columns: last_cols,
        }
    };

    Ok(GameTrace { walls, end })
}

/// Primitive functional vanishing on `v`, positive on the remaining columns.
fn lambda_for(v: (i64, i64), cols: &[(i64, i64)], skip: usize) -> Result<(i64, i64)> {
    let mut lam = primitive((v.1, -v.0));
    let probe = cols
        .iter()
        .enumerate()
        .find(|(i, _)| *i != skip)
        .map(|(_, &c)| c)
        .ok_or_else(|| Error::input("single-column grading"))?;
    if lam.0 * probe.0 + lam.1 * probe.1 < 0 {
        lam = (-lam.0, -lam.1);
    }
    for (i, &c) in cols.iter().enumerate() {
        if i != skip && lam.0 * c.0 + lam.1 * c.1 <= 0 {
            return Err(Error::input("functional not positive off the eliminated ray"));
        }
    }
    Ok(lam)
}

/// The weighted blow-up presentation: blowing up `p` at the coordinate point
/// `center` with weights `bw/ a_center` on the remaining coordinates gives the
/// rank-2 matrix with a new exceptional column `u = (0, -a_center)`, the
/// center column `(a_center, 0)`, and `(a_j, bw_j)` for the others, split
/// after the (u, center) block.
pub fn wbl_matrix(p: &Wps, center: usize, bw: &[u32]) -> Result<ToricRank2> {
    let n = p.weights.len();
    if bw.len() != n - 1 {
        return Err(Error::input("one blow-up weight per non-center coordinate"));
    }
    if bw.contains(&0) {
        return Err(Error::input("blow-up weights must be positive"));
    }
    let r = p.weights[center] as i64;
    let mut row0 = vec![0i64, r];
    let mut row1 = vec![-r, 0i64];
    let mut labels: Vec<&str> = vec!["u", &p.names[center]];
    let mut k = 0;
    for j in 0..n {
        if j == center {
            continue;
        }
        row0.push(p.weights[j] as i64);
        row1.push(bw[k] as i64);
        labels.push(&p.names[j]);
        k += 1;
    }
    ToricRank2::new([row0, row1], 2, &labels)
}
