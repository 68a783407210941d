//! Substitutions carrying formal fractional powers of an auxiliary variable.
//!
//! A rule sends an input variable to `aux^q * image` where `q` is rational and
//! `image` is a polynomial in the output variables. A global fractional shift
//! is applied to every term; each resulting aux exponent must clear to a
//! non-negative integer, otherwise the substitution is undefined on the input.

use num_traits::Zero;

use super::{QPoly, WeightVec};
use crate::rat::{int, Rat};
use crate::{Error, Result};

/// Image of one variable: `aux^aux_exp * image`.
#[derive(Debug, Clone)]
pub struct SubstRule {
    pub image: QPoly,
    pub aux_exp: Rat,
}

impl SubstRule {
    /// The common case `x -> aux^q * x`.
    pub fn rescale(out_vars: &[&str], var: &str, q: Rat) -> Self {
        SubstRule {
            image: QPoly::var(out_vars, var),
            aux_exp: q,
        }
    }
}

/// Apply `rules` (one per input variable, in the input's variable order) to
/// `p`, multiplying every term by `aux^global_shift`.
pub fn substitute(
    p: &QPoly,
    out_vars: &[&str],
    aux: &str,
    rules: &[SubstRule],
    global_shift: &Rat,
) -> Result<QPoly> {
    if rules.len() != p.nvars() {
        return Err(Error::input("one substitution rule per variable required"));
    }
    let aux_idx = out_vars
        .iter()
        .position(|v| *v == aux)
        .ok_or_else(|| Error::input(format!("auxiliary variable `{aux}` not in output list")))?;
    for r in rules {
        if r.image.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>() != out_vars {
            return Err(Error::input("rule image over wrong variable list"));
        }
    }

    let mut out = QPoly::zero(out_vars);
    for (exps, c) in p.terms() {
        let mut aux_total = global_shift.clone();
        for (r, &e) in rules.iter().zip(exps) {
            aux_total += &r.aux_exp * int(e as i64);
        }
        if !aux_total.denom().eq(&num_bigint::BigInt::from(1)) || aux_total < Rat::zero() {
            return Err(Error::Substitution(format!(
                "monomial {:?} produces aux exponent {}",
                exps,
                crate::rat::fmt_rat(&aux_total)
            )));
        }
        let aux_pow: u32 = aux_total
            .numer()
            .try_into()
            .map_err(|_| Error::Substitution("aux exponent overflow".into()))?;
        let mut term = QPoly::constant(out_vars, c.clone());
        for (r, &e) in rules.iter().zip(exps) {
            if e > 0 {
                term = term.mul(&r.image.pow(e));
            }
        }
        let mut shift = vec![0u32; out_vars.len()];
        shift[aux_idx] = aux_pow;
        for (e, tc) in term.terms() {
            let mut e2 = e.clone();
            e2[aux_idx] += shift[aux_idx];
            out.add_term(e2, tc.clone());
        }
    }
    Ok(out)
}

/// The transform `e(y, x) -> u^{-m/3} e(y, u^{1/3})` on a quasi-homogeneous
/// polynomial of degree `d` with `wt(y, x) = (3, 1)`, where `m = d mod 3`.
/// The result is homogeneous of degree `floor(d/3)` in `(y, u)`.
pub fn grave_transform(e: &QPoly, heavy: &str, light: &str, aux: &str, d: u32) -> Result<QPoly> {
    let hi = e
        .var_index(heavy)
        .ok_or_else(|| Error::input(format!("unknown variable `{heavy}`")))?;
    let li = e
        .var_index(light)
        .ok_or_else(|| Error::input(format!("unknown variable `{light}`")))?;
    if e.nvars() != 2 || hi == li {
        return Err(Error::input("grave transform needs two distinct variables"));
    }
    let mut w = vec![int(0); 2];
    w[hi] = int(3);
    w[li] = int(1);
    let w = WeightVec(w);
    if !e.is_zero() && e.quasi_homogeneous_degree(&w) != Some(int(d as i64)) {
        return Err(Error::input(format!(
            "not quasi-homogeneous of degree {d} for wt({heavy},{light})=(3,1)"
        )));
    }
    let m = d % 3;
    let out_vars: Vec<&str> = vec![heavy, aux];
    let mut rules = vec![
        SubstRule {
            image: QPoly::zero(&out_vars),
            aux_exp: int(0),
        };
        2
    ];
    rules[hi] = SubstRule::rescale(&out_vars, heavy, int(0));
    rules[li] = SubstRule {
        image: QPoly::constant(&out_vars, crate::rat::int(1)),
        aux_exp: crate::rat::rat(1, 3),
    };
    substitute(e, &out_vars, aux, &rules, &crate::rat::rat(-(m as i64), 3))
}
