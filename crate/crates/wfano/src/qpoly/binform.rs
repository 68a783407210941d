//! Binary-form utilities: gcd over the rationals, pure-power detection,
//! squarefree structure, and common-linear-factor tests.
//!
//! Gcds are computed on dehomogenizations after splitting off the shared power
//! of each variable. Irrational linear factors are never extracted explicitly;
//! their presence is detected through squarefree decomposition, which is all
//! the coprimality and pure-power predicates need.

use num_traits::{One, Zero};

use super::QPoly;
use crate::rat::{int, Rat};
use crate::{Error, Result};

/// Dense univariate polynomial, coefficients by ascending degree, no trailing
/// zeros. The zero polynomial is the empty vector.
pub(crate) type UPoly = Vec<Rat>;

fn u_trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn u_deg(p: &UPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn u_monic(p: &UPoly) -> UPoly {
    match p.last() {
        None => Vec::new(),
        Some(l) => p.iter().map(|c| c / l).collect(),
    }
}

fn u_rem(a: &UPoly, b: &UPoly) -> UPoly {
    assert!(!b.is_empty());
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let q = r.last().unwrap() / &lead;
        for i in 0..b.len() {
            let idx = dr - db + i;
            let sub = &q * &b[i];
            r[idx] -= sub;
        }
        u_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    if r.len() > db {
        u_trim(&mut r);
    }
    r
}

fn u_div_exact(a: &UPoly, b: &UPoly) -> UPoly {
    assert!(!b.is_empty());
    if a.is_empty() {
        return Vec::new();
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    let mut q = vec![Rat::zero(); a.len() - b.len() + 1];
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let c = r.last().unwrap() / &lead;
        q[dr - db] = c.clone();
        for i in 0..b.len() {
            let idx = dr - db + i;
            let sub = &c * &b[i];
            r[idx] -= sub;
        }
        u_trim(&mut r);
    }
    assert!(r.is_empty(), "division was not exact");
    q
}

pub(crate) fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = u_rem(&a, &b);
        a = b;
        b = r;
    }
    u_monic(&a)
}

fn u_derivative(p: &UPoly) -> UPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out: UPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * int(i as i64))
        .collect();
    u_trim(&mut out);
    out
}

/// Yun squarefree decomposition: `p = c * prod q_i^i` with the `q_i` monic,
/// squarefree and pairwise coprime. Constant input gives an empty list.
pub(crate) fn u_squarefree(p: &UPoly) -> Vec<(UPoly, u32)> {
    if u_deg(p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = u_monic(p);
    let dp = u_derivative(&p);
    let g = u_gcd(&p, &dp);
    let mut out = Vec::new();
    if u_deg(&g) == Some(0) {
        out.push((p, 1));
        return out;
    }
    let mut c = u_div_exact(&p, &g);
    let mut d = {
        let t = u_div_exact(&dp, &g);
        let mut d = t;
        let cd = u_derivative(&c);
        sub_in_place(&mut d, &cd);
        d
    };
    let mut i = 1u32;
    while u_deg(&c).unwrap_or(0) > 0 {
        let a = u_gcd(&c, &d);
        if u_deg(&a).unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = u_div_exact(&c, &a);
        let t = u_div_exact(&d, &a);
        let cd = u_derivative(&c);
        d = t;
        sub_in_place(&mut d, &cd);
        i += 1;
    }
    out
}

/// Squarefree decomposition of a dense rational polynomial given by ascending
/// coefficients; shared with the germ predicates.
pub(crate) fn upoly_squarefree(p: &[Rat]) -> Vec<(Vec<Rat>, u32)> {
    let mut v = p.to_vec();
    u_trim(&mut v);
    u_squarefree(&v)
}

fn sub_in_place(a: &mut UPoly, b: &UPoly) {
    if a.len() < b.len() {
        a.resize(b.len(), Rat::zero());
    }
    for (i, c) in b.iter().enumerate() {
        a[i] -= c.clone();
    }
    u_trim(a);
}

/// Structure of a nonzero binary form: `z^a * u^b * core` with the core
/// carrying neither variable as a factor, plus its dehomogenization in z.
struct BinParts {
    z_pow: u32,
    u_pow: u32,
    /// Core dehomogenized at `u = 1`, as a dense polynomial in z.
    core: UPoly,
    /// Total degree of the core (inputs must be homogeneous).
    #[allow(dead_code)]
    core_deg: u32,
}

fn bin_parts(p: &QPoly) -> Result<BinParts> {
    if p.nvars() != 2 {
        return Err(Error::input("binary form expected"));
    }
    if p.is_zero() {
        return Err(Error::input("zero polynomial has no binary-form structure"));
    }
    let ones = super::WeightVec::from_ints(&[1, 1]);
    let deg = p
        .quasi_homogeneous_degree(&ones)
        .ok_or_else(|| Error::input("binary form must be homogeneous"))?;
    let deg: u32 = deg
        .numer()
        .try_into()
        .map_err(|_| Error::input("bad degree"))?;
    let z_pow = p.terms().map(|(e, _)| e[0]).min().unwrap();
    let u_pow = p.terms().map(|(e, _)| e[1]).min().unwrap();
    let core_deg = deg - z_pow - u_pow;
    let mut core = vec![Rat::zero(); core_deg as usize + 1];
    for (e, c) in p.terms() {
        core[(e[0] - z_pow) as usize] = c.clone();
    }
    u_trim(&mut core);
    Ok(BinParts {
        z_pow,
        u_pow,
        core,
        core_deg,
    })
}

fn rehomogenize(vars: &[&str], core: &UPoly, z_extra: u32, u_extra: u32, core_deg: u32) -> QPoly {
    let mut out = QPoly::zero(vars);
    for (i, c) in core.iter().enumerate() {
        if !c.is_zero() {
            out.add_term(
                vec![i as u32 + z_extra, core_deg - i as u32 + u_extra],
                c.clone(),
            );
        }
    }
    out
}

/// Gcd of two nonzero homogeneous binary forms over the same two variables,
/// normalized so the leading coefficient in the first variable is 1.
pub fn bf_gcd(p: &QPoly, q: &QPoly) -> Result<QPoly> {
    if p.vars() != q.vars() {
        return Err(Error::input("binary forms over different variables"));
    }
    let a = bin_parts(p)?;
    let b = bin_parts(q)?;
    let g = u_gcd(&a.core, &b.core);
    let gdeg = u_deg(&g).unwrap_or(0) as u32;
    let vars: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    Ok(rehomogenize(
        &vars,
        &g,
        a.z_pow.min(b.z_pow),
        a.u_pow.min(b.u_pow),
        gdeg,
    ))
}

/// Does `d` divide `p` exactly (multivariate, single divisor)?
pub fn divides(d: &QPoly, p: &QPoly) -> bool {
    if p.is_zero() {
        return true;
    }
    p.divisible_by(d)
}

/// Detect `p = c * l^k` for a linear form `l`; returns the monic `l`.
/// Errors when `p` is zero or not homogeneous of degree `k`.
pub fn is_power_of_linear(p: &QPoly, k: u32) -> Result<Option<QPoly>> {
    if p.nvars() != 2 {
        return Err(Error::input("binary form expected"));
    }
    if p.is_zero() {
        return Err(Error::input("zero polynomial"));
    }
    let ones = super::WeightVec::from_ints(&[1, 1]);
    if p.quasi_homogeneous_degree(&ones) != Some(int(k as i64)) {
        return Err(Error::input(format!("not homogeneous of degree {k}")));
    }
    let vars: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    let c0 = p.coeff(&[k, 0])?;
    if c0.is_zero() {
        // Only remaining possibility is a multiple of u^k.
        let ck = p.coeff(&[0, k])?;
        if !ck.is_zero() && p.num_terms() == 1 {
            return Ok(Some(QPoly::var(&vars, vars[1])));
        }
        return Ok(None);
    }
    let beta = if k == 0 {
        Rat::zero()
    } else {
        p.coeff(&[k - 1, 1])? / (&c0 * int(k as i64))
    };
    let mut ell = QPoly::var(&vars, vars[0]);
    ell.add_term(vec![0, 1], beta);
    if p == &ell.pow(k).scale(&c0) {
        Ok(Some(ell))
    } else {
        Ok(None)
    }
}

/// Is the nonzero homogeneous binary form a square over the complex numbers
/// (every root of even multiplicity)? Zero counts as a square.
pub fn is_square_binary(p: &QPoly) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let parts = bin_parts(p)?;
    if parts.z_pow % 2 != 0 || parts.u_pow % 2 != 0 {
        return Ok(false);
    }
    Ok(u_squarefree(&parts.core).iter().all(|(_, m)| m % 2 == 0))
}

/// Squarefree decomposition of a nonzero homogeneous binary form: pairwise
/// coprime squarefree factors with multiplicities, variable powers included.
pub fn squarefree_decomposition(p: &QPoly) -> Result<Vec<(QPoly, u32)>> {
    let parts = bin_parts(p)?;
    let vars: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    let mut out = Vec::new();
    if parts.z_pow > 0 {
        out.push((QPoly::var(&vars, vars[0]), parts.z_pow));
    }
    if parts.u_pow > 0 {
        out.push((QPoly::var(&vars, vars[1]), parts.u_pow));
    }
    for (f, m) in u_squarefree(&parts.core) {
        let d = u_deg(&f).unwrap_or(0) as u32;
        out.push((rehomogenize(&vars, &f, 0, 0, d), m));
    }
    Ok(out)
}

fn rad_k_binary(p: &QPoly, k: u32) -> Result<QPoly> {
    let vars: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    let mut out = QPoly::constant(&vars, Rat::one());
    for (f, m) in squarefree_decomposition(p)? {
        if m >= k {
            out = out.mul(&f);
        }
    }
    Ok(out)
}

/// Degree of the common factor available to satisfy all constraints
/// `l^k | P` simultaneously, where `l` ranges over linear forms in both
/// variables (complex coefficients allowed). `None` means unconstrained
/// (every listed piece was zero); a linear `l` exists iff the degree is
/// positive or the constraints are vacuous.
pub fn common_linear_factor_degree(constraints: &[(&QPoly, u32)]) -> Result<Option<u32>> {
    let mut acc: Option<QPoly> = None;
    for (p, k) in constraints {
        if p.is_zero() {
            continue;
        }
        let r = rad_k_binary(p, *k)?;
        acc = Some(match acc {
            None => r,
            Some(a) => bf_gcd(&a, &r)?,
        });
    }
    match acc {
        None => Ok(None),
        Some(g) => {
            let ones = super::WeightVec::from_ints(&[1, 1]);
            let d = g.quasi_homogeneous_degree(&ones).unwrap();
            Ok(Some(d.numer().try_into().unwrap()))
        }
    }
}

/// Same test for the weighted shapes `l = z - lambda * u^j`: only roots in the
/// first variable count, so everything happens on the dehomogenization at
/// `u = 1`. Pieces may be quasi-homogeneous of any weight.
pub fn common_root_factor_degree(constraints: &[(&QPoly, u32)]) -> Result<Option<u32>> {
    let mut acc: Option<UPoly> = None;
    for (p, k) in constraints {
        if p.is_zero() {
            continue;
        }
        if p.nvars() != 2 {
            return Err(Error::input("binary piece expected"));
        }
        // Dehomogenize at u = 1: collect by z-exponent.
        let maxz = p.terms().map(|(e, _)| e[0]).max().unwrap() as usize;
        let mut dense = vec![Rat::zero(); maxz + 1];
        for (e, c) in p.terms() {
            dense[e[0] as usize] += c.clone();
        }
        u_trim(&mut dense);
        if dense.is_empty() {
            // Cancellation cannot happen for quasi-homogeneous pieces, but a
            // caller could pass anything; treat as unconstrained.
            continue;
        }
        let mut r: UPoly = vec![Rat::one()];
        for (f, m) in u_squarefree(&dense) {
            if m >= *k {
                r = u_mul(&r, &f);
            }
        }
        // Root 0 (plain z-power factor) is part of the dehomogenization.
        acc = Some(match acc {
            None => r,
            Some(a) => u_gcd(&a, &r),
        });
    }
    Ok(acc.map(|g| u_deg(&g).unwrap_or(0) as u32))
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    fn p(s: &str) -> QPoly {
        parse_poly(&["z", "u"], s).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(bf_gcd(&p("z^3"), &p("z^4 + z^3*u")).unwrap(), p("z^3"));
        assert_eq!(bf_gcd(&p("z^3"), &p("u^5")).unwrap(), p("1"));
        // z^3 - z*u^2 = z(z-u)(z+u), z^2 - u^2 = (z-u)(z+u).
        assert_eq!(
            bf_gcd(&p("z^3 - z*u^2"), &p("z^2 - u^2")).unwrap(),
            p("z^2 - u^2")
        );
        assert!(bf_gcd(&p("0"), &p("z")).is_err());
    }

    #[test]
    fn gcd_divides_both() {
        let a = p("z^5 - z^3*u^2");
        let b = p("z^4*u - z^2*u^3");
        let g = bf_gcd(&a, &b).unwrap();
        assert!(divides(&g, &a));
        assert!(divides(&g, &b));
        // Monic in the leading z-power.
        let lead = g.terms().max_by_key(|(e, _)| e[0]).unwrap();
        assert_eq!(lead.1, &crate::rat::int(1));
    }

    #[test]
    fn power_of_linear() {
        assert_eq!(
            is_power_of_linear(&p("z^4"), 4).unwrap(),
            Some(p("z"))
        );
        assert_eq!(is_power_of_linear(&p("z^3*u"), 4).unwrap(), None);
        assert_eq!(
            is_power_of_linear(&p("z^4 + 4*z^3*u + 6*z^2*u^2 + 4*z*u^3 + u^4"), 4).unwrap(),
            Some(p("z + u"))
        );
        assert_eq!(is_power_of_linear(&p("3*u^5"), 5).unwrap(), Some(p("u")));
        assert!(is_power_of_linear(&p("z^2"), 4).is_err());
        // Certificate identity: p - c*l^k = 0.
        let q = p("2*z^3 - 6*z^2*u + 6*z*u^2 - 2*u^3");
        let l = is_power_of_linear(&q, 3).unwrap().unwrap();
        assert_eq!(l.pow(3).scale(&crate::rat::int(2)), q);
    }

    #[test]
    fn squares_over_c() {
        assert!(is_square_binary(&p("z^2 - 2*z*u + u^2")).unwrap());
        // z^2 - 2u^2 has two simple irrational roots: not a square.
        assert!(!is_square_binary(&p("z^2 - 2*u^2")).unwrap());
        // (z^2 - 2u^2)^2 is a square even though the factor is irrational.
        assert!(is_square_binary(&p("z^4 - 4*z^2*u^2 + 4*u^4")).unwrap());
        assert!(is_square_binary(&p("z^2*u^4")).unwrap());
        assert!(!is_square_binary(&p("z^3*u^4")).unwrap());
        assert!(is_square_binary(&p("0")).unwrap());
        // -u^2 is a square over C.
        assert!(is_square_binary(&p("-u^2")).unwrap());
    }

    #[test]
    fn common_factors() {
        // l = z works: z^2 | z^3, z | z^2*u.
        let a = p("z^3");
        let b = p("z^2*u");
        let d = common_linear_factor_degree(&[(&a, 2), (&b, 1)]).unwrap();
        assert_eq!(d, Some(1));
        // No common linear factor.
        let c = p("u^3");
        let d = common_linear_factor_degree(&[(&a, 2), (&c, 2)]).unwrap();
        assert_eq!(d, Some(0));
        // All-zero constraint set is unconstrained.
        let z = p("0");
        assert_eq!(common_linear_factor_degree(&[(&z, 2)]).unwrap(), None);
        // Irrational common root is still detected: z^2 - 2u^2 twice.
        let e = p("z^4 - 4*z^2*u^2 + 4*u^4");
        let f = p("z^2 - 2*u^2");
        assert_eq!(
            common_linear_factor_degree(&[(&e, 2), (&f, 1)]).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn weighted_root_factors() {
        // Pieces quasi-homogeneous for w(z,u) = (2,1); l = z - u^2 shapes.
        let a = p("z^2 - 2*z*u^2 + u^4"); // (z - u^2)^2
        let b = p("z*u^2 - u^4"); // u^2 (z - u^2)
        assert_eq!(
            common_root_factor_degree(&[(&a, 2), (&b, 1)]).unwrap(),
            Some(1)
        );
        // u-powers alone satisfy nothing here.
        let c = p("u^6");
        assert_eq!(
            common_root_factor_degree(&[(&a, 2), (&c, 1)]).unwrap(),
            Some(0)
        );
    }

    #[test]
    fn squarefree_structure() {
        let q = p("z^4*u - 2*z^3*u^2 + z^2*u^3"); // z^2 u (z-u)^2
        let dec = squarefree_decomposition(&q).unwrap();
        let mut prod = QPoly::constant(&["z", "u"], crate::rat::int(1));
        for (f, m) in &dec {
            prod = prod.mul(&f.pow(*m));
        }
        // Reconstruction up to the leading scalar.
        let scale = q.terms().next().unwrap().1 / prod.coeff(q.terms().next().unwrap().0).unwrap();
        assert_eq!(prod.scale(&scale), q);
    }
}
