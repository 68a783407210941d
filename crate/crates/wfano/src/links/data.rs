//! Static data for the five families and deterministic sample members.
//!
//! Sample members carry random rational coefficients on the full monomial
//! basis of the prepared coordinate shape, with the normalizations imposed
//! (unit coefficients on the structure monomials, and the vanishing
//! coefficients that the prepared coordinates guarantee).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::qpoly::QPoly;
use crate::rat::int;
use crate::{Error, Result};

/// Coordinate names shared by all five source hypersurfaces.
pub const SOURCE_VARS: [&str; 5] = ["x", "y", "z", "t", "w"];

/// Degree and weights of one family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyData {
    pub id: u32,
    pub degree: u32,
    pub weights: [u32; 5],
}

pub const FAMILIES: [FamilyData; 5] = [
    FamilyData {
        id: 100,
        degree: 18,
        weights: [1, 2, 3, 5, 9],
    },
    FamilyData {
        id: 101,
        degree: 22,
        weights: [1, 2, 3, 7, 11],
    },
    FamilyData {
        id: 102,
        degree: 26,
        weights: [1, 2, 5, 7, 13],
    },
    FamilyData {
        id: 103,
        degree: 38,
        weights: [2, 3, 5, 11, 19],
    },
    FamilyData {
        id: 110,
        degree: 21,
        weights: [1, 3, 5, 7, 8],
    },
];

pub fn family_data(id: u32) -> Result<FamilyData> {
    FAMILIES
        .iter()
        .copied()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::input(format!("unknown family {id}")))
}

/// All exponent tuples of the given weighted degree over a variable subset.
fn monomials_of_degree(weights: &[u32], degree: u32) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], degree: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if weights.is_empty() {
            if degree == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let w = weights[0];
        for e in 0..=degree / w {
            acc.push(e);
            rec(&weights[1..], degree - e * w, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, degree, &mut Vec::new(), &mut out);
    out
}

/// Random polynomial of the given weighted degree in a subset of the source
/// coordinates, with small nonzero-biased integer coefficients.
fn random_form(
    rng: &mut ChaCha20Rng,
    vars: &[&str],
    var_weights: &[u32],
    degree: u32,
) -> QPoly {
    let mut p = QPoly::zero(vars);
    for e in monomials_of_degree(var_weights, degree) {
        // Keep a few structural zeros so samples are not artificially dense.
        let c: i64 = if rng.gen_ratio(1, 5) {
            0
        } else {
            let v = rng.gen_range(1..=9i64);
            if rng.gen_bool(0.5) {
                v
            } else {
                -v
            }
        };
        if c != 0 {
            p.add_term(e, int(c));
        }
    }
    p
}

fn set_coeff(p: &mut QPoly, monomial: &str, value: i64) {
    let vars: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    let m = crate::qpoly::parse_poly(&vars, monomial).unwrap();
    let (e, _) = m.terms().next().unwrap();
    let current = p.coeff(e).unwrap();
    p.add_term(e.clone(), int(value) - current);
}

fn xyz(rng: &mut ChaCha20Rng, weights: [u32; 3], degree: u32) -> QPoly {
    random_form(rng, &["x", "y", "z"], &weights, degree)
}

/// A deterministic member of the family in the prepared coordinate shape.
/// For family 101 the member is of the first kind (the generic branch) on
/// even seeds and of the second kind on odd seeds.
pub fn sample_member(id: u32, seed: u64) -> Result<QPoly> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ id as u64);
    let vars = &SOURCE_VARS;
    let v5 = |p: &QPoly| p.embed(vars);
    let var = |n: &str| QPoly::var(vars, n);
    match id {
        100 => {
            // t^3 z + t^2 e8 + t e13 + w^2 + e18 over wt(x,y,z) = (1,2,3),
            // with coeff(z^6) = -1 and the two degree-18 monomials that the
            // prepared coordinates remove set to zero.
            let e8 = xyz(&mut rng, [1, 2, 3], 8);
            let mut e13 = xyz(&mut rng, [1, 2, 3], 13);
            set_coeff(&mut e13, "z^4*x", rng.gen_range(1..=6));
            let mut e18 = xyz(&mut rng, [1, 2, 3], 18);
            set_coeff(&mut e18, "z^6", -1);
            set_coeff(&mut e18, "x^3*z^5", 0);
            set_coeff(&mut e18, "x*y*z^5", 0);
            let t = var("t");
            let f = t
                .pow(3)
                .mul(&var("z"))
                .add(&t.pow(2).mul(&v5(&e8)))
                .add(&t.mul(&v5(&e13)))
                .add(&var("w").pow(2))
                .add(&v5(&e18));
            Ok(f)
        }
        101 => {
            // w^2 + t^3 x + t^2 e8 + t e15 + e22; the two branches set
            // (coeff z^5, coeff z^7 x) to (nonzero, 0) or (0, nonzero).
            // The y z^2 coefficient feeds the structure constant of the
            // shifted blow-up and is kept nonzero.
            let mut e8 = xyz(&mut rng, [1, 2, 3], 8);
            set_coeff(&mut e8, "y*z^2", rng.gen_range(1..=6));
            let mut e15 = xyz(&mut rng, [1, 2, 3], 15);
            let mut e22 = xyz(&mut rng, [1, 2, 3], 22);
            if seed.is_multiple_of(2) {
                set_coeff(&mut e15, "z^5", rng.gen_range(1..=6));
                set_coeff(&mut e22, "z^7*x", 0);
            } else {
                set_coeff(&mut e15, "z^5", 0);
                set_coeff(&mut e22, "z^7*x", rng.gen_range(1..=6));
            }
            let t = var("t");
            let f = var("w")
                .pow(2)
                .add(&t.pow(3).mul(&var("x")))
                .add(&t.pow(2).mul(&v5(&e8)))
                .add(&t.mul(&v5(&e15)))
                .add(&v5(&e22));
            Ok(f)
        }
        102 => {
            // w^2 + t^3 z + t^2 e12 + t e19 + e26 over wt(x,y,z) = (1,2,5),
            // with coeff(z^5 x) = 1.
            let e12 = xyz(&mut rng, [1, 2, 5], 12);
            let e19 = xyz(&mut rng, [1, 2, 5], 19);
            let mut e26 = xyz(&mut rng, [1, 2, 5], 26);
            set_coeff(&mut e26, "z^5*x", 1);
            let t = var("t");
            let f = var("w")
                .pow(2)
                .add(&t.pow(3).mul(&var("z")))
                .add(&t.pow(2).mul(&v5(&e12)))
                .add(&t.mul(&v5(&e19)))
                .add(&v5(&e26));
            Ok(f)
        }
        103 => {
            // w^2 + t^3 z + t^2 e16 + t e27 + e38 over wt(x,y,z) = (2,3,5),
            // with coeff(z^7 y) = 1.
            let e16 = xyz(&mut rng, [2, 3, 5], 16);
            let e27 = xyz(&mut rng, [2, 3, 5], 27);
            let mut e38 = xyz(&mut rng, [2, 3, 5], 38);
            set_coeff(&mut e38, "z^7*y", 1);
            let t = var("t");
            let f = var("w")
                .pow(2)
                .add(&t.pow(3).mul(&var("z")))
                .add(&t.pow(2).mul(&v5(&e16)))
                .add(&t.mul(&v5(&e27)))
                .add(&v5(&e38));
            Ok(f)
        }
        110 => {
            // w^2 z + w (t d6 + d13) + z^4 x + z^3 a6 + z^2 (t b4 + b11)
            //   + z (t c9 + c16) + t^3 + t d14 + d21, all in C[x, y],
            // with coeff(y^7) = 1 and coeff(y^2 | d6) nonzero.
            let xy = |rng: &mut ChaCha20Rng, d: u32| random_form(rng, &["x", "y"], &[1, 3], d);
            let a6 = xy(&mut rng, 6);
            let b4 = xy(&mut rng, 4);
            let b11 = xy(&mut rng, 11);
            let c9 = xy(&mut rng, 9);
            let c16 = xy(&mut rng, 16);
            let mut d6 = xy(&mut rng, 6);
            set_coeff(&mut d6, "y^2", rng.gen_range(1..=6));
            let d13 = xy(&mut rng, 13);
            let d14 = xy(&mut rng, 14);
            let mut d21 = xy(&mut rng, 21);
            set_coeff(&mut d21, "y^7", 1);
            let (z, t, w) = (var("z"), var("t"), var("w"));
            let f = w
                .pow(2)
                .mul(&z)
                .add(&w.mul(&t.mul(&v5(&d6)).add(&v5(&d13))))
                .add(&z.pow(4).mul(&var("x")))
                .add(&z.pow(3).mul(&v5(&a6)))
                .add(&z.pow(2).mul(&t.mul(&v5(&b4)).add(&v5(&b11))))
                .add(&z.mul(&t.mul(&v5(&c9)).add(&v5(&c16))))
                .add(&t.pow(3))
                .add(&t.mul(&v5(&d14)))
                .add(&v5(&d21));
            Ok(f)
        }
        other => Err(Error::input(format!("unknown family {other}"))),
    }
}
