//! Local analysis of cE and cD/2 terminal hypersurface germs: classification,
//! discrepancy-1 divisor candidates over a cE point, necessary conditions for
//! contractions of discrepancy greater than 1, and the standard-model
//! invariants of cD/2 points.
//!
//! A cE germ is `x^2 + y^3 + y^2 f(z,u) + y g(z,u) + h(z,u)`. All predicates
//! read finitely many graded pieces for the weights `w_i(z,u) = (i,1)`; the
//! truncation order of a germ must cover weight 24, and every predicate
//! errors on insufficient truncation rather than silently passing.

mod disc1;

pub use disc1::{candidate_phi, disc1_candidates, Disc1Candidate, Disc1Label};

use num_traits::Zero;
use serde::Serialize;

use crate::qpoly::{
    bf_gcd, common_linear_factor_degree, divides, is_power_of_linear, parse_poly, QPoly,
    WeightVec,
};
use crate::rat::{int, rat, Rat};
use crate::{Error, Result};

pub(crate) const GERM_VARS: [&str; 2] = ["z", "u"];

/// Minimal truncation order every graded predicate requires.
pub const MIN_TRUNCATION: u32 = 24;

/// A cE hypersurface germ `x^2 + y^3 + y^2 f + y g + h` with `f, g, h` in two
/// variables `(z, u)`, exact up to total degree `trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CEGerm {
    pub f: QPoly,
    pub g: QPoly,
    pub h: QPoly,
    pub trunc: u32,
}

impl CEGerm {
    /// Build a germ; `f`, `g`, `h` are renamed onto the canonical `(z, u)`.
    pub fn new(f: &QPoly, g: &QPoly, h: &QPoly, trunc: u32) -> Result<CEGerm> {
        for p in [f, g, h] {
            if p.nvars() != 2 {
                return Err(Error::input(
                    "germ data must be polynomials in two variables",
                ));
            }
        }
        let f = f.rename_vars(&GERM_VARS);
        let g = g.rename_vars(&GERM_VARS);
        let h = h.rename_vars(&GERM_VARS);
        if f.order().is_some_and(|o| o < 1) {
            return Err(Error::input("f must vanish at the origin"));
        }
        if g.order().is_some_and(|o| o < 3) {
            return Err(Error::input("g must have order at least 3"));
        }
        if h.order().is_some_and(|o| o < 4) {
            return Err(Error::input("h must have order at least 4"));
        }
        if trunc < MIN_TRUNCATION {
            return Err(Error::Truncation {
                have: trunc,
                need: MIN_TRUNCATION,
            });
        }
        Ok(CEGerm { f, g, h, trunc })
    }

    pub fn parse(f: &str, g: &str, h: &str) -> Result<CEGerm> {
        let f = parse_poly(&GERM_VARS, f)?;
        let g = parse_poly(&GERM_VARS, g)?;
        let h = parse_poly(&GERM_VARS, h)?;
        let deg = f
            .max_total_degree()
            .max(g.max_total_degree())
            .max(h.max_total_degree());
        CEGerm::new(&f, &g, &h, deg.max(MIN_TRUNCATION))
    }

    /// Weight of a component for `w_i(z, u) = (i, 1)`; `None` when zero.
    pub(crate) fn wmin(p: &QPoly, i: i64) -> Option<i64> {
        let w = WeightVec::from_ints(&[i, 1]);
        p.weight(&w)
            .ok()
            .map(|r| i64::try_from(r.numer().clone()).unwrap())
    }

    /// The piece of weight `v` for `w_i(z, u) = (i, 1)`.
    pub(crate) fn wpiece(p: &QPoly, i: i64, v: i64) -> QPoly {
        p.filter_eq(&WeightVec::from_ints(&[i, 1]), &int(v))
    }

    /// The full germ as `phi` in variables `(x, y, z, u)`.
    pub fn phi(&self) -> QPoly {
        let vars = ["x", "y", "z", "u"];
        let x = QPoly::var(&vars, "x");
        let y = QPoly::var(&vars, "y");
        let f = self.f.embed(&vars);
        let g = self.g.embed(&vars);
        let h = self.h.embed(&vars);
        x.mul(&x)
            .add(&y.pow(3))
            .add(&y.mul(&y).mul(&f))
            .add(&y.mul(&g))
            .add(&h)
    }
}

/// Type of a cE germ in the `f = 0` normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CeType {
    CE6,
    CE7,
    CE8,
    NotCE,
}

impl std::fmt::Display for CeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CeType::CE6 => "cE6",
            CeType::CE7 => "cE7",
            CeType::CE8 => "cE8",
            CeType::NotCE => "not-cE",
        };
        write!(f, "{s}")
    }
}

/// Classify by the lowest parts: cE6 iff `h4 != 0`; cE7 iff `h4 = 0` and
/// `g3 != 0`; cE8 iff `h4 = g3 = 0` and `h5 != 0`. Requires the `f = 0` form.
pub fn ce_classify(germ: &CEGerm) -> Result<CeType> {
    if !germ.f.is_zero() {
        return Err(Error::input(
            "classification needs the f = 0 form; absorb f first",
        ));
    }
    let h4 = germ.h.degree_part(4);
    let g3 = germ.g.degree_part(3);
    let h5 = germ.h.degree_part(5);
    Ok(if !h4.is_zero() {
        CeType::CE6
    } else if !g3.is_zero() {
        CeType::CE7
    } else if !h5.is_zero() {
        CeType::CE8
    } else {
        CeType::NotCE
    })
}

/// Complete the cube: `y -> y - f/3` turns `y^3 + y^2 f + y g + h` into
/// `y^3 + y g' + h'` with `g' = g - f^2/3` and `h' = h + 2 f^3/27 - f g/3`.
pub fn absorb_f(germ: &CEGerm) -> Result<CEGerm> {
    if germ.f.is_zero() {
        return Ok(germ.clone());
    }
    let f = &germ.f;
    let f2 = f.mul(f);
    let f3 = f2.mul(f);
    let g = germ.g.sub(&f2.scale(&rat(1, 3)));
    let h = germ
        .h
        .add(&f3.scale(&rat(2, 27)))
        .sub(&f.mul(&germ.g).scale(&rat(1, 3)));
    // Polynomial inputs are exact; a genuinely truncated germ loses at most
    // deg(f) - 1 orders through the f-mixing terms.
    let exact = germ.trunc >= germ.f.max_total_degree()
        && germ.trunc >= germ.g.max_total_degree()
        && germ.trunc >= germ.h.max_total_degree();
    let trunc = if exact {
        germ.trunc
    } else {
        germ.trunc
            .saturating_sub(f.max_total_degree().saturating_sub(1))
    };
    if trunc < MIN_TRUNCATION {
        return Err(Error::Truncation {
            have: trunc,
            need: MIN_TRUNCATION,
        });
    }
    Ok(CEGerm {
        f: QPoly::zero(&GERM_VARS),
        g,
        h,
        trunc,
    })
}

/// One necessary condition for a discrepancy-above-1 contraction of a shape.
#[derive(Debug, Clone, Serialize)]
pub struct NecessaryCondition {
    /// Contraction shape the condition belongs to.
    pub shape: &'static str,
    /// True when the condition holds; a failing condition certifies that no
    /// contraction of this shape exists.
    pub holds: bool,
    pub note: String,
}

/// Evaluate the necessary conditions for contractions of discrepancy greater
/// than 1 over a cE point in the `f = 0` form.
pub fn high_disc_necessary(germ: &CEGerm, ty: CeType) -> Result<Vec<NecessaryCondition>> {
    if !germ.f.is_zero() {
        return Err(Error::input("necessary conditions need the f = 0 form"));
    }
    if ce_classify(germ)? != ty {
        return Err(Error::input("stated type does not match the germ"));
    }
    let g3 = germ.g.degree_part(3);
    let h4 = germ.h.degree_part(4);
    let h5 = germ.h.degree_part(5);
    let mut out = Vec::new();
    match ty {
        CeType::CE6 => {
            let quad = is_power_of_linear(&h4, 4)?;
            out.push(NecessaryCondition {
                shape: "e2",
                holds: quad.is_none(),
                note: match quad {
                    Some(l) => format!("h4 is the quadruple of {l}"),
                    None => "h4 is not the quadruple of a linear form".into(),
                },
            });
        }
        CeType::CE7 => {
            let (holds, note) = if h5.is_zero() {
                (false, "h5 = 0 shares every factor of g3".to_string())
            } else {
                let g = bf_gcd(&g3, &h5)?;
                (g.max_total_degree() == 0, format!("gcd(g3, h5) = {g}"))
            };
            out.push(NecessaryCondition {
                shape: "e5",
                holds,
                note,
            });
            let cube = is_power_of_linear(&g3, 3)?;
            let (holds, note) = match cube {
                Some(l) => {
                    let div = h5.is_zero() || divides(&l.pow(4), &h5);
                    (
                        div,
                        format!(
                            "g3 = ({l})^3 and l^4 {} h5",
                            if div { "divides" } else { "does not divide" }
                        ),
                    )
                }
                None => (false, "g3 is not the cube of a linear form".into()),
            };
            out.push(NecessaryCondition {
                shape: "e9",
                holds,
                note,
            });
        }
        CeType::CE8 => {
            let d = common_linear_factor_degree(&[(&h5, 4)])?;
            let holds = d.is_none_or(|d| d >= 1);
            out.push(NecessaryCondition {
                shape: "e9",
                holds,
                note: if holds {
                    "h5 is divisible by the quadruple of a linear form".into()
                } else {
                    "h5 has no linear factor of multiplicity 4".into()
                },
            });
        }
        CeType::NotCE => return Err(Error::input("not a cE germ")),
    }
    Ok(out)
}

/// Standard model of a cD/2 point:
/// `u^2 + y^2 z + lambda y x^(2a+1) + g(x^2, z)` with `g` in the monomial
/// ideal `(x^4, x^2 z^2, z^3)` and only even x-exponents. `a = None` encodes
/// infinity, which happens exactly when `lambda = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CD2Std {
    pub lambda: Rat,
    pub a: Option<u32>,
    pub g: QPoly,
}

impl CD2Std {
    pub fn new(lambda: Rat, a: Option<u32>, g: &QPoly) -> Result<CD2Std> {
        if lambda.is_zero() != a.is_none() {
            return Err(Error::input("a is infinite exactly when lambda = 0"));
        }
        if let Some(a) = a {
            if a < 1 {
                return Err(Error::input("a must be at least 1"));
            }
        }
        if g.nvars() != 2 {
            return Err(Error::input("g must be a polynomial in (x, z)"));
        }
        let g = g.rename_vars(&["x", "z"]);
        if g.is_zero() {
            return Err(Error::input("g must be nonzero"));
        }
        for (e, _) in g.terms() {
            let (x2, j) = (e[0], e[1]);
            if x2 % 2 != 0 {
                return Err(Error::input("g must have even x-exponents"));
            }
            let i = x2 / 2;
            if !(i >= 2 || (i >= 1 && j >= 2) || j >= 3) {
                return Err(Error::input(format!(
                    "monomial x^{x2} z^{j} is outside (x^4, x^2 z^2, z^3)"
                )));
            }
        }
        Ok(CD2Std { lambda, a, g })
    }

    pub fn parse(lambda: &str, a: Option<u32>, g: &str) -> Result<CD2Std> {
        let lambda = crate::rat::parse_rat(lambda)?;
        let g = parse_poly(&["x", "z"], g)?;
        CD2Std::new(lambda, a, &g)
    }
}

/// The invariants of a standard cD/2 model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cd2Invariants {
    /// `b = w(g)` for `w(x, z) = (1, 4)/2`.
    pub b: i64,
    /// `b' = w'(g)` for `w'(x, z) = (1, 2)/2`.
    pub b_prime: i64,
    /// The odd integers `1 <= k <= min(2a-3, b-2)`.
    pub a_set: Vec<i64>,
    /// Largest member of the set, when nonempty.
    pub l: Option<i64>,
    /// `(E^3) = 2/l` for the associated extraction.
    #[serde(serialize_with = "crate::cli::ser_opt_rat")]
    pub e3: Option<Rat>,
}

/// Compute `b`, `b'`, the odd-index set, `l`, and `(E^3) = 2/l`.
pub fn cd2_invariants(std: &CD2Std) -> Cd2Invariants {
    // The monomial x^{2i} z^j has w-weight i + 2j and w'-weight i + j.
    let b = std
        .g
        .terms()
        .map(|(e, _)| (e[0] / 2) as i64 + 2 * e[1] as i64)
        .min()
        .unwrap();
    let b_prime = std
        .g
        .terms()
        .map(|(e, _)| (e[0] / 2) as i64 + e[1] as i64)
        .min()
        .unwrap();
    let bound = match std.a {
        Some(a) => (2 * a as i64 - 3).min(b - 2),
        None => b - 2,
    };
    let a_set: Vec<i64> = (1..=bound.max(0)).filter(|k| k % 2 == 1).collect();
    let l = a_set.last().copied();
    let e3 = l.map(|l| rat(2, l));
    Cd2Invariants {
        b,
        b_prime,
        a_set,
        l,
        e3,
    }
}

/// Uniqueness hypotheses: the parity-split inequalities on `(2a, b, b')` and
/// the pure power `z^{b'}` appearing in `g`.
pub fn cd2_uniqueness_check(std: &CD2Std) -> bool {
    let inv = cd2_invariants(std);
    let (b, bp) = (inv.b, inv.b_prime);
    let two_a = std.a.map(|a| 2 * a as i64);
    let ineq = if bp % 2 != 0 {
        two_a.is_none_or(|ta| ta - 1 > bp) && b > bp + 1
    } else {
        two_a.is_none_or(|ta| ta - 2 > bp) && b > bp + 2
    };
    if !ineq || bp < 0 {
        return false;
    }
    !std.g
        .coeff(&[0, bp as u32])
        .map(|c| c.is_zero())
        .unwrap_or(true)
}

/// cD versus cE for a terminal `x^2 + f` germ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CdCe {
    CD,
    CE,
    Undecided,
}

/// cE exactly when the degree-3 part of `f(0, ..)` is the cube of a linear
/// form; the zero cubic is reported undecided.
pub fn cd_or_ce(cubic: &QPoly) -> Result<CdCe> {
    if cubic.is_zero() {
        return Ok(CdCe::Undecided);
    }
    let ones = WeightVec::from_ints(&vec![1i64; cubic.nvars()]);
    if cubic.quasi_homogeneous_degree(&ones) != Some(int(3)) {
        return Err(Error::input("degree-3 part expected"));
    }
    let n = cubic.nvars();
    let names: Vec<&str> = cubic.vars().iter().map(|s| s.as_str()).collect();
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = 3;
        let c = cubic.coeff(&e).unwrap();
        if c.is_zero() {
            continue;
        }
        // Candidate l = x_i + sum beta_j x_j from the x_i^2 x_j coefficients.
        let mut ell = QPoly::var(&names, names[i]);
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut e2 = vec![0u32; n];
            e2[i] = 2;
            e2[j] = 1;
            let beta = cubic.coeff(&e2).unwrap() / (&c * int(3));
            let mut ej = vec![0u32; n];
            ej[j] = 1;
            ell.add_term(ej, beta);
        }
        return Ok(if cubic == &ell.pow(3).scale(&c) {
            CdCe::CE
        } else {
            CdCe::CD
        });
    }
    // No pure cube: the cube of a nonzero linear form always has one.
    Ok(CdCe::CD)
}
