//! Construction and verification of the Sarkisov-link data for families
//! 100, 101, 102, 103 and 110: the Kawamata blow-up grading matrix at the
//! highest singular point, the 2-ray game to the target weighted projective
//! space, the transformed equation, the target invariants and quotient
//! basket, the cE/cD germ data at the new non-quotient point, and for family
//! 110 the unprojection to the (6,7) complete intersection together with the
//! link back.
//!
//! Everything derivable is recomputed; only the source family shapes live in
//! a table. The five-family verification suite runs the families in parallel
//! when the `parallel` feature is on.

mod data;
mod verify;

pub use data::{family_data, sample_member, FamilyData, FAMILIES, SOURCE_VARS};
pub use verify::{verify_all, verify_artifacts, verify_family, VerifyEntry};

use num_integer::Integer;
use num_traits::Zero;

use crate::ambient::{two_ray_game, wbl_matrix, GameEnd, GameTrace, ToricRank2, Wps};
use crate::families::{family_record, tangent_coords, Basket, FamilyRecord};
use crate::germs::{CEGerm, CeType, MIN_TRUNCATION};
use crate::qpoly::{substitute, QPoly, SubstRule, WeightVec};
use crate::rat::{int, rat, Rat};
use crate::{Error, Result};

/// The computed link data for one family member.
#[derive(Debug, Clone)]
pub struct HatLink {
    pub family: u32,
    pub source: FamilyRecord,
    /// Index of the blow-up center among the source coordinates.
    pub center: usize,
    /// Terminal type (r, a) at the center.
    pub center_type: (u32, u32),
    /// Tangent coordinate eliminated in the local chart.
    pub tangent: usize,
    /// Unit multiplier putting the local action in `(1, a, r-a)` form.
    pub unit: u32,
    /// Kawamata weight numerators for the non-center coordinates, in source
    /// coordinate order.
    pub bw: Vec<(String, u32)>,
    pub source_matrix: ToricRank2,
    pub target_matrix: ToricRank2,
    pub trace: GameTrace,
    pub eliminated: String,
    /// Target coordinate labels with their weights, in matrix order.
    pub target: Vec<(String, u32)>,
    /// Coordinate of the new non-quotient point.
    pub qhat: String,
    /// Transformed equation, variables `u` plus the surviving source names.
    pub fhat: QPoly,
    pub dhat: u32,
    pub iota_hat: i64,
    pub khat3: Rat,
    pub target_basket: Basket,
    /// Blow-up weights of the contraction back from the target, keyed by
    /// target coordinate.
    pub realized: Vec<(String, i64)>,
}

/// Germ data at the target's non-quotient point.
#[derive(Debug, Clone)]
pub enum HatGerm {
    /// Hypersurface cE germ in the prepared normal form; the germ variables
    /// `(x, y, z, u)` correspond to the listed target coordinates.
    Ce { germ: CEGerm, order: [String; 4] },
    /// The same data for the index-2 quotient (cE/2) case.
    CeHalf { germ: CEGerm, order: [String; 4] },
    /// The raw four-variable germ when no normal form is prepared.
    Raw { phi: QPoly },
}

/// The (6,7) complete intersection produced by the unprojection.
#[derive(Debug, Clone)]
pub struct CIModel {
    pub ambient_weights: [u32; 6],
    pub ambient_labels: [&'static str; 6],
    pub degrees: [u32; 2],
    pub eq1: QPoly,
    pub eq2: QPoly,
    pub minus_k3: Rat,
    pub basket: Basket,
}

/// Extra artifacts for family 110.
#[derive(Debug, Clone)]
pub struct BreveArtifacts {
    pub ci: CIModel,
    /// The transform back agrees with the target equation as a polynomial
    /// identity.
    pub rho_identity: bool,
    /// Ambient weights of the projection model used by the link back.
    pub rho_ambient: [u32; 5],
    /// `(E^3)` of the extraction at the cD/2 point, from the blow-up data.
    pub breve_e3: Rat,
}

/// Everything computed for one family member.
#[derive(Debug, Clone)]
pub struct LinkArtifacts {
    pub fam: FamilyData,
    pub f: QPoly,
    pub link: HatLink,
    pub germ: HatGerm,
    pub breve: Option<BreveArtifacts>,
}

/// Build the full link data for a member of the family. With `None` the
/// deterministic seed-0 sample member is used.
pub fn build_link_artifacts(id: u32, f: Option<QPoly>) -> Result<LinkArtifacts> {
    let fam = family_data(id)?;
    let f = match f {
        Some(f) => f,
        None => sample_member(id, 0)?,
    };
    let link = build_hat_link(&fam, &f)?;
    let germ = hat_germ(&fam, &link)?;
    let breve = if id == 110 {
        Some(build_breve(&fam, &f, &link)?)
    } else {
        None
    };
    Ok(LinkArtifacts {
        fam,
        f,
        link,
        germ,
        breve,
    })
}

fn validate_member(fam: &FamilyData, f: &QPoly) -> Result<()> {
    let names: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
    if names != SOURCE_VARS {
        return Err(Error::input("member must use the source coordinates x,y,z,t,w"));
    }
    let w = WeightVec::from_ints(&fam.weights.map(|a| a as i64));
    if f.quasi_homogeneous_degree(&w) != Some(int(fam.degree as i64)) {
        return Err(Error::input(format!(
            "member must be quasi-homogeneous of degree {}",
            fam.degree
        )));
    }
    Ok(())
}

/// Assemble the blow-up matrix at the highest-index point, run the 2-ray
/// game, transform the equation and collect the target data.
pub fn build_hat_link(fam: &FamilyData, f: &QPoly) -> Result<HatLink> {
    validate_member(fam, f)?;
    let (d, w) = (fam.degree, fam.weights);
    let source = family_record(d, &w)?;

    // Highest-index singular point on the member.
    let center = (0..5)
        .filter(|&i| w[i] >= 2 && d % w[i] != 0)
        .max_by_key(|&i| w[i])
        .ok_or_else(|| Error::input("no singular coordinate point on the member"))?;
    let r = w[center];
    let tangent = *tangent_coords(d, &w, center)
        .first()
        .ok_or_else(|| Error::input("no tangent monomial at the center"))?;

    // Unit putting the local action in (1, a, r-a) form.
    let locals: Vec<u32> = (0..5)
        .filter(|&l| l != center && l != tangent)
        .map(|l| w[l] % r)
        .collect();
    let mut units = Vec::new();
    for lam in 1..r {
        if lam.gcd(&r) != 1 {
            continue;
        }
        let mut m: Vec<u32> = locals.iter().map(|&x| (x as u64 * lam as u64 % r as u64) as u32).collect();
        m.sort_unstable();
        if m[0] == 1 && (m[1] + m[2]).is_multiple_of(r) {
            units.push(lam);
        }
    }
    let unit = *units
        .first()
        .ok_or_else(|| Error::NonTerminal(format!("center 1/{r} is not terminal")))?;
    let a = {
        let mut m: Vec<u32> = locals
            .iter()
            .map(|&x| (x as u64 * unit as u64 % r as u64) as u32)
            .collect();
        m.sort_unstable();
        m[1].min(r - m[1])
    };

    // Kawamata weight numerators [unit * a_l]_r on the non-center coordinates.
    let bw_vals: Vec<u32> = (0..5)
        .filter(|&l| l != center)
        .map(|l| {
            let v = (w[l] as u64 * unit as u64 % r as u64) as u32;
            if v == 0 {
                r
            } else {
                v
            }
        })
        .collect();
    let bw_labels: Vec<(String, u32)> = (0..5)
        .filter(|&l| l != center)
        .zip(bw_vals.iter())
        .map(|(l, &v)| (SOURCE_VARS[l].to_string(), v))
        .collect();

    let p = Wps::new(&w, &SOURCE_VARS);
    let source_matrix = wbl_matrix(&p, center, &bw_vals)?;
    let trace = two_ray_game(&source_matrix)?;
    let (eliminated_col, target_weights, target_labels) = match &trace.end {
        GameEnd::DivisorialContraction {
            eliminated,
            target_weights,
            target_labels,
        } => (*eliminated, target_weights.clone(), target_labels.clone()),
        GameEnd::Fibration { .. } => {
            return Err(Error::input("game ended in a fibration; no hat model"))
        }
    };
    let eliminated = source_matrix.labels[eliminated_col].clone();
    let qhat_cols = &trace
        .walls
        .last()
        .ok_or_else(|| Error::input("game has no walls"))?
        .columns;
    if qhat_cols.len() != 1 {
        return Err(Error::input("last wall carries more than one column"));
    }
    let qhat = source_matrix.labels[qhat_cols[0]].clone();

    // Transform the equation: x_l -> u^{bw_l/r} x_l away from the center.
    let mut out_vars: Vec<&str> = vec!["u"];
    out_vars.extend_from_slice(&SOURCE_VARS);
    let mut rules = Vec::new();
    let mut bw_by_index = [0u32; 5];
    {
        let mut k = 0;
        for l in 0..5 {
            if l != center {
                bw_by_index[l] = bw_vals[k];
                k += 1;
            }
        }
    }
    for (l, name) in SOURCE_VARS.iter().enumerate() {
        let q = rat(bw_by_index[l] as i64, r as i64);
        rules.push(SubstRule::rescale(&out_vars, name, q));
    }
    let ord = f
        .terms()
        .map(|(e, _)| {
            (0..5)
                .map(|l| bw_by_index[l] as i64 * e[l] as i64)
                .sum::<i64>()
        })
        .min()
        .ok_or_else(|| Error::input("zero member"))?;
    let g = substitute(f, &out_vars, "u", &rules, &rat(-ord, r as i64))?;
    let fhat = g.set_var_one(&eliminated)?;

    // Weights of the surviving coordinates, by label.
    let weight_of = |name: &str| -> u32 {
        target_labels
            .iter()
            .position(|l| l == name)
            .map(|i| target_weights[i])
            .expect("label present")
    };
    let fhat_weights: Vec<i64> = fhat.vars().iter().map(|v| weight_of(v) as i64).collect();
    let dhat_r = fhat
        .quasi_homogeneous_degree(&WeightVec::from_ints(&fhat_weights))
        .ok_or_else(|| Error::input("transformed equation is not quasi-homogeneous"))?;
    let dhat: u32 = dhat_r
        .numer()
        .try_into()
        .map_err(|_| Error::input("bad target degree"))?;
    let iota_hat = fhat_weights.iter().sum::<i64>() - dhat as i64;
    let prod = fhat_weights.iter().fold(int(1), |p, &a| p * int(a));
    let khat3 = int(iota_hat).pow(3) * int(dhat as i64) / prod;

    let target: Vec<(String, u32)> = target_labels
        .iter()
        .cloned()
        .zip(target_weights.iter().copied())
        .collect();
    let target_basket = target_quotient_basket(&fhat, &target, &qhat)?;
    let realized = realized_weights(&source_matrix, qhat_cols[0], eliminated_col, &weight_of)?;
    let target_matrix = reorder_by_angle(&source_matrix)?;

    Ok(HatLink {
        family: fam.id,
        source,
        center,
        center_type: (r, a),
        tangent,
        unit,
        bw: bw_labels,
        source_matrix,
        target_matrix,
        trace,
        eliminated,
        target,
        qhat,
        fhat,
        dhat,
        iota_hat,
        khat3,
        target_basket,
        realized,
    })
}

/// The same grading with columns in angular order and the irrelevant split
/// in front of the last two rays: the endpoint chamber carrying the
/// contraction onto the target.
fn reorder_by_angle(t: &ToricRank2) -> Result<ToricRank2> {
    let n = t.ncols();
    let cols: Vec<(i64, i64)> = (0..n).map(|i| t.col(i)).collect();
    let mut idx: Vec<usize> = (0..n).collect();
    // Strict convexity was checked by the game; cross product orders angles.
    idx.sort_by(|&i, &j| {
        let c = cols[i].0 * cols[j].1 - cols[i].1 * cols[j].0;
        c.cmp(&0).reverse()
    });
    let primitive = |c: (i64, i64)| {
        let g = c.0.unsigned_abs().gcd(&c.1.unsigned_abs()) as i64;
        (c.0 / g, c.1 / g)
    };
    let mut rays: Vec<(i64, i64)> = idx.iter().map(|&i| primitive(cols[i])).collect();
    rays.dedup();
    if rays.len() < 3 {
        return Err(Error::input("too few rays for an endpoint chamber"));
    }
    let tail: Vec<(i64, i64)> = rays[rays.len() - 2..].to_vec();
    let on_tail = idx
        .iter()
        .filter(|&&i| tail.contains(&primitive(cols[i])))
        .count();
    let labels: Vec<&str> = idx.iter().map(|&i| t.labels[i].as_str()).collect();
    ToricRank2::new(
        [
            idx.iter().map(|&i| t.rows[0][i]).collect(),
            idx.iter().map(|&i| t.rows[1][i]).collect(),
        ],
        n - on_tail,
        &labels,
    )
}

/// Blow-up weights of the contraction from the endpoint model onto the
/// target, per target coordinate: the primitive functional vanishing on the
/// new center's column, normalized against the eliminated column.
fn realized_weights(
    t: &ToricRank2,
    qhat_col: usize,
    elim_col: usize,
    weight_of: &dyn Fn(&str) -> u32,
) -> Result<Vec<(String, i64)>> {
    let q = t.col(qhat_col);
    let mut mu = (q.1, -q.0);
    let g = mu.0.unsigned_abs().gcd(&mu.1.unsigned_abs()) as i64;
    mu = (mu.0 / g, mu.1 / g);
    let e = t.col(elim_col);
    let val_e = mu.0 * e.0 + mu.1 * e.1;
    if val_e > 0 {
        mu = (-mu.0, -mu.1);
    }
    let val_e = mu.0 * e.0 + mu.1 * e.1;
    let a_q = weight_of(&t.labels[qhat_col]) as i64;
    if val_e >= 0 || (-val_e) % a_q != 0 {
        return Err(Error::input("degenerate contraction data"));
    }
    let s = (-val_e) / a_q;
    let mut out = Vec::new();
    for i in 0..t.ncols() {
        if i == qhat_col || i == elim_col {
            continue;
        }
        let c = t.col(i);
        let v = mu.0 * c.0 + mu.1 * c.1;
        if v % s != 0 || v <= 0 {
            return Err(Error::input("non-integral realized weight"));
        }
        out.push((t.labels[i].clone(), v / s));
    }
    Ok(out)
}

/// Quotient basket of the target away from the new non-quotient point, read
/// off the transformed equation: coordinate points by pure-power and tangent
/// monomials, one-dimensional strata by distinct non-vertex roots of the
/// restricted form.
fn target_quotient_basket(
    fhat: &QPoly,
    target: &[(String, u32)],
    qhat: &str,
) -> Result<Basket> {
    let mut out = Basket::default();
    let weight_of = |name: &str| -> u32 {
        target
            .iter()
            .find(|(l, _)| l == name)
            .map(|(_, w)| *w)
            .unwrap()
    };
    let names: Vec<String> = fhat.vars().to_vec();

    // Coordinate points.
    for name in &names {
        if name == qhat || weight_of(name) < 2 {
            continue;
        }
        let on_member = !fhat.terms().any(|(e, _)| {
            // A pure power in this coordinate alone.
            names
                .iter()
                .enumerate()
                .all(|(j, v)| v == name || e[j] == 0)
        });
        if !on_member {
            continue;
        }
        let r = weight_of(name);
        // Tangent: a monomial name^k * other with the rest zero.
        let i = fhat.var_index(name).unwrap();
        let mut tangent: Option<usize> = None;
        for (j, v) in names.iter().enumerate() {
            if v == name {
                continue;
            }
            let found = fhat.terms().any(|(e, _)| {
                e[j] == 1
                    && e[i] >= 1
                    && names
                        .iter()
                        .enumerate()
                        .all(|(k, _)| k == i || k == j || e[k] == 0)
            });
            if found {
                tangent = Some(j);
                break;
            }
        }
        let Some(j) = tangent else {
            return Err(Error::Normalization(format!(
                "no tangent monomial at the {name}-point"
            )));
        };
        let locals: Vec<i64> = names
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i && *k != j)
            .map(|(_, v)| weight_of(v) as i64)
            .collect();
        match crate::ambient::normalize_quotient_type(r, [locals[0], locals[1], locals[2]]) {
            crate::ambient::QuotType::Terminal { r, a } => out.push(r, a, 1),
            other => {
                return Err(Error::NonTerminal(format!(
                    "{name}-point reduces to {other:?}"
                )))
            }
        }
    }

    // One-dimensional strata.
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let (wi, wj) = (weight_of(&names[i]), weight_of(&names[j]));
            let g = wi.gcd(&wj);
            if g <= 1 {
                continue;
            }
            let restricted: Vec<(u32, u32, Rat)> = fhat
                .terms()
                .filter(|(e, _)| {
                    (0..names.len()).all(|k| k == i || k == j || e[k] == 0)
                })
                .map(|(e, c)| (e[i], e[j], c.clone()))
                .collect();
            if restricted.is_empty() {
                return Err(Error::NonTerminal(format!(
                    "member contains the ({}, {}) stratum",
                    names[i], names[j]
                )));
            }
            let imin = restricted.iter().map(|t| t.0).min().unwrap();
            // Exponents of the normalized coordinate step by wj/g.
            let step = wj / g;
            let mut dense: Vec<Rat> = Vec::new();
            for (a, _, c) in &restricted {
                let k = ((a - imin) / step) as usize;
                if dense.len() <= k {
                    dense.resize(k + 1, Rat::zero());
                }
                dense[k] += c.clone();
            }
            while dense.last().is_some_and(|c| c.is_zero()) {
                dense.pop();
            }
            let core_deg = dense.len().saturating_sub(1);
            let low_zeros = dense.iter().take_while(|c| c.is_zero()).count();
            let nonvertex = core_deg.saturating_sub(low_zeros);
            if nonvertex == 0 {
                continue;
            }
            // Distinct roots via the squarefree part.
            let distinct: u32 = crate::qpoly::upoly_squarefree(&dense[low_zeros..])
                .iter()
                .map(|(f, _)| (f.len() - 1) as u32)
                .sum();
            let locals: Vec<i64> = names
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .map(|(_, v)| weight_of(v) as i64)
                .collect();
            match crate::ambient::normalize_quotient_type(g, [locals[0], locals[1], locals[2]]) {
                crate::ambient::QuotType::Terminal { r, a } => out.push(r, a, distinct),
                other => {
                    return Err(Error::NonTerminal(format!(
                        "stratum point reduces to {other:?}"
                    )))
                }
            }
        }
    }
    Ok(out)
}

/// Extract the germ at the target's non-quotient point.
pub fn hat_germ(fam: &FamilyData, link: &HatLink) -> Result<HatGerm> {
    let phi = link.fhat.set_var_one(&link.qhat)?;
    if fam.id == 110 {
        return Ok(HatGerm::Raw { phi });
    }
    // Normal form w^2 + t^3 + t^2 f + t g + h.
    if phi.max_exponent("w") != Some(2) {
        return Err(Error::Normalization("missing w^2".into()));
    }
    let w2 = phi.coeff_of_power("w", 2)?;
    if !(w2.num_terms() == 1 && w2.coeff(&vec![0; w2.nvars()]).is_ok_and(|c| c == int(1))) {
        return Err(Error::Normalization("w^2 must have unit constant coefficient".into()));
    }
    if !phi.coeff_of_power("w", 1)?.is_zero() {
        return Err(Error::Normalization("unexpected w-linear terms".into()));
    }
    let w0 = phi.coeff_of_power("w", 0)?;
    if w0.max_exponent("t") != Some(3) {
        return Err(Error::Normalization("missing t^3".into()));
    }
    let t3 = w0.coeff_of_power("t", 3)?;
    if !(t3.num_terms() == 1 && t3.coeff(&vec![0; t3.nvars()]).is_ok_and(|c| c == int(1))) {
        return Err(Error::Normalization("t^3 must have unit constant coefficient".into()));
    }
    let f = w0.coeff_of_power("t", 2)?;
    let g = w0.coeff_of_power("t", 1)?;
    let h = w0.coeff_of_power("t", 0)?;
    let uvar = f.vars()[1].clone();
    let germ = CEGerm::new(
        &f,
        &g,
        &h,
        f.max_total_degree()
            .max(g.max_total_degree())
            .max(h.max_total_degree())
            .max(MIN_TRUNCATION),
    )?;
    let order = [
        "w".to_string(),
        "t".to_string(),
        "u".to_string(),
        uvar,
    ];
    if fam.id == 102 {
        Ok(HatGerm::CeHalf { germ, order })
    } else {
        Ok(HatGerm::Ce { germ, order })
    }
}

/// Split `F = z F1 + F2`, transform both parts through the Kawamata chart of
/// the 1/5 point, and assemble the two equations of the complete
/// intersection model.
pub fn unprojection_110(f: &QPoly) -> Result<CIModel> {
    let fam = family_data(110)?;
    validate_member(&fam, f)?;
    // Normalized shape checks.
    let w2 = f.coeff_of_power("w", 2)?;
    let zvar = QPoly::var(&w2.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>(), "z");
    if w2 != zvar {
        return Err(Error::Normalization("w^2 must multiply exactly z".into()));
    }
    if !f.coeff_of_power("t", 2)?.is_zero() {
        return Err(Error::Normalization("unexpected t^2 terms".into()));
    }
    let t3 = f.coeff_of_power("t", 3)?;
    if !(t3.num_terms() == 1 && t3.coeff(&vec![0; t3.nvars()]).is_ok_and(|c| c == int(1))) {
        return Err(Error::Normalization("t^3 must have unit coefficient".into()));
    }
    if f.coeff(&[0, 7, 0, 0, 0])? != int(1) {
        return Err(Error::Normalization("coefficient of y^7 must be 1".into()));
    }

    // F1 = z-divisible part / z; F2 the z-free rest.
    let mut f1 = QPoly::zero(&SOURCE_VARS);
    let mut f2 = QPoly::zero(&SOURCE_VARS);
    let zi = f.var_index("z").unwrap();
    for (e, c) in f.terms() {
        if e[zi] > 0 {
            let mut e2 = e.clone();
            e2[zi] -= 1;
            f1.add_term(e2, c.clone());
        } else {
            f2.add_term(e.clone(), c.clone());
        }
    }

    // Kawamata chart of the 1/5 point: wt(w, y, t, x) = (1, 1, 4, 2)/5.
    let mut out_vars: Vec<&str> = vec!["u"];
    out_vars.extend_from_slice(&SOURCE_VARS);
    let q = |n: i64| rat(n, 5);
    let rules = vec![
        SubstRule::rescale(&out_vars, "x", q(2)),
        SubstRule::rescale(&out_vars, "y", q(1)),
        SubstRule::rescale(&out_vars, "z", q(0)),
        SubstRule::rescale(&out_vars, "t", q(4)),
        SubstRule::rescale(&out_vars, "w", q(1)),
    ];
    let g1 = substitute(&f1, &out_vars, "u", &rules, &q(-2))?;
    let g2 = substitute(&f2, &out_vars, "u", &rules, &q(-7))?;
    let breve_f1 = g1.set_var_one("x")?;
    let breve_f2 = g2.set_var_one("x")?;

    let labels: [&str; 6] = ["u", "y", "z", "t", "w", "v"];
    let weights: [u32; 6] = [1, 1, 2, 2, 3, 5];
    let v = QPoly::var(&labels, "v");
    let u = QPoly::var(&labels, "u");
    let z6 = QPoly::var(&labels, "z");
    let eq1 = v.mul(&u).sub(&breve_f1.embed(&labels));
    let eq2 = v.mul(&z6).add(&breve_f2.embed(&labels));
    let wv = WeightVec::from_ints(&weights.map(|a| a as i64));
    let d1 = eq1
        .quasi_homogeneous_degree(&wv)
        .ok_or_else(|| Error::input("first equation is not quasi-homogeneous"))?;
    let d2 = eq2
        .quasi_homogeneous_degree(&wv)
        .ok_or_else(|| Error::input("second equation is not quasi-homogeneous"))?;
    if (d1.clone(), d2.clone()) != (int(6), int(7)) {
        return Err(Error::input(format!("unexpected degrees ({d1}, {d2})")));
    }

    // iota = sum(weights) - 6 - 7 = 1; (-K)^3 = 6*7/prod = 7/10.
    let prod = weights.iter().fold(int(1), |p, &a| p * int(a as i64));
    let minus_k3 = int(6 * 7) / prod;

    // Quotient basket: the v-point is eliminated by vu and vz; the other
    // coordinate points are off the model or the cD/2 point.
    if eq1.coeff_of("v*u")? != int(1) || eq2.coeff_of("v*z")? != int(1) {
        return Err(Error::Normalization("missing unprojection tangent monomials".into()));
    }
    // z is off: eq1 contains z^3 with unit coefficient.
    if eq1.coeff_of("z^3")? != int(-1) {
        return Err(Error::Normalization("missing z^3 in the first equation".into()));
    }
    let mut basket = Basket::default();
    // v-point: remaining coordinates (y, t, w) of weights (1, 2, 3) mod 5.
    match crate::ambient::normalize_quotient_type(5, [1, 2, 3]) {
        crate::ambient::QuotType::Terminal { r, a } => basket.push(r, a, 1),
        other => return Err(Error::NonTerminal(format!("{other:?}"))),
    }

    Ok(CIModel {
        ambient_weights: weights,
        ambient_labels: labels,
        degrees: [6, 7],
        eq1,
        eq2,
        minus_k3,
        basket,
    })
}

/// Build the breve side for family 110 and check the link back: the
/// composite polynomial identity `z * F1(u, y, z u, t, w) + F2 = Fhat`.
fn build_breve(fam: &FamilyData, f: &QPoly, link: &HatLink) -> Result<BreveArtifacts> {
    let _ = fam;
    let ci = unprojection_110(f)?;
    // breve_f1 and breve_f2 over (u, y, z, t, w).
    let breve_f1 = {
        let v0 = ci.eq1.coeff_of_power("v", 0)?;
        v0.neg()
    };
    let breve_f2 = ci.eq2.coeff_of_power("v", 0)?;
    let five: Vec<&str> = breve_f1.vars().iter().map(|s| s.as_str()).collect();
    let z = QPoly::var(&five, "z");
    let u = QPoly::var(&five, "u");
    let lhs = breve_f1
        .substitute_var("z", &z.mul(&u))?
        .mul(&z)
        .add(&breve_f2.embed(&five));
    let rho_identity = lhs == link.fhat;

    // (E^3) of the extraction at the cD/2 point: complete intersection of
    // integer degrees (10, 7) in weights (7, 1, 4, 5, 3) with index r = 2.
    let prod = [7u32, 1, 4, 5, 3].iter().fold(int(1), |p, &a| p * int(a as i64));
    let breve_e3 = int(4 * 10 * 7) / prod;

    Ok(BreveArtifacts {
        ci,
        rho_identity,
        rho_ambient: [1, 1, 2, 2, 3],
        breve_e3,
    })
}

/// Reference label for the non-quotient singularity of the target.
pub fn nonquotient_label(artifacts: &LinkArtifacts) -> Result<String> {
    match &artifacts.germ {
        HatGerm::Ce { germ, .. } => {
            let ty = crate::germs::ce_classify(&crate::germs::absorb_f(germ)?)?;
            Ok(ty.to_string())
        }
        HatGerm::CeHalf { .. } => Ok("cE/2".to_string()),
        HatGerm::Raw { phi } => {
            // Complete the square in w, take the cubic of the rest.
            let c1 = phi.coeff_of_power("w", 1)?;
            let names: Vec<&str> = phi.vars().iter().map(|s| s.as_str()).collect();
            let wv = QPoly::var(&names, "w");
            let completed = phi.substitute_var("w", &wv.sub(&c1.embed(&names).scale(&rat(1, 2))))?;
            let rest = completed.coeff_of_power("w", 0)?;
            let cubic = rest.degree_part(3);
            match crate::germs::cd_or_ce(&cubic)? {
                crate::germs::CdCe::CE => {
                    // Refine with the hyperplane-section weight test.
                    if e7_section_check(phi)? {
                        Ok(format!("{}", CeType::CE7))
                    } else {
                        Ok("cE".to_string())
                    }
                }
                crate::germs::CdCe::CD => Ok("cD".to_string()),
                crate::germs::CdCe::Undecided => Ok("undecided".to_string()),
            }
        }
    }
}

/// The general hyperplane section of the family-110 hat germ is E7: for any
/// section value `e(u, t, w)` of weight at least 4 the lowest piece for
/// `w(u, t, w) = (6, 4, 9)` is `w^2 + u^3 + t^3 u`.
pub fn e7_section_check(phi: &QPoly) -> Result<bool> {
    let names: Vec<&str> = phi.vars().iter().map(|s| s.as_str()).collect();
    let expected = crate::qpoly::parse_poly(&["u", "t", "w"], "w^2 + u^3 + t^3*u")?;
    for e_src in ["0", "t", "u + t", "2*u - 3*t + t*w"] {
        let e = crate::qpoly::parse_poly(&["u", "t", "w"], e_src)?.embed(&names);
        let cut = phi.substitute_var("y", &e)?.coeff_of_power("y", 0)?;
        let w = WeightVec::from_ints(&[6, 4, 9]);
        let d = cut.weight(&w)?;
        if d != int(18) {
            return Ok(false);
        }
        if cut.filter_eq(&w, &int(18)) != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
