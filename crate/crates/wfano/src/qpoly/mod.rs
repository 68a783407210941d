//! Sparse quasi-homogeneous polynomials with exact rational coefficients.
//!
//! Terms are stored as a `BTreeMap` from exponent vectors to nonzero
//! coefficients, aligned with an ordered variable list. Weight systems,
//! filtrations and substitutions follow the conventions of the blow-up
//! calculus: `w(f) = min` over monomials and `f_{w=r}` is the exact sub-sum.

mod binform;
mod parse;
mod subst;

pub use binform::{
    bf_gcd, common_linear_factor_degree, common_root_factor_degree, divides, is_power_of_linear,
    is_square_binary, squarefree_decomposition,
};
pub(crate) use binform::upoly_squarefree;
pub use parse::parse_poly;
pub use subst::{grave_transform, substitute, SubstRule};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::rat::{fmt_rat, Rat};
use crate::{Error, Result};

/// Per-variable positive rational weights; length must match the polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVec(pub Vec<Rat>);

impl WeightVec {
    pub fn from_ints(ws: &[i64]) -> Self {
        WeightVec(ws.iter().map(|&w| crate::rat::int(w)).collect())
    }

    pub fn monomial_weight(&self, exps: &[u32]) -> Rat {
        let mut acc = Rat::zero();
        for (w, &e) in self.0.iter().zip(exps) {
            acc += w * crate::rat::int(e as i64);
        }
        acc
    }
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl QPoly {
    pub fn zero(vars: &[&str]) -> Self {
        QPoly {
            vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_with(vars: Arc<Vec<String>>) -> Self {
        QPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let i = p.var_index(name).expect("unknown variable");
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.terms.insert(e, Rat::one());
        p
    }

    /// Build from raw (exponents, coefficient) pairs; repeated monomials add up.
    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn vars_arc(&self) -> Arc<Vec<String>> {
        Arc::clone(&self.vars)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rat) {
        assert_eq!(exps.len(), self.vars.len(), "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_vars(&self, other: &QPoly) {
        assert_eq!(
            *self.vars, *other.vars,
            "polynomials over different variable lists"
        );
    }

    /// Stored coefficient of the monomial, or zero.
    pub fn coeff(&self, exps: &[u32]) -> Result<Rat> {
        if exps.len() != self.vars.len() {
            return Err(Error::input(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                self.vars.len()
            )));
        }
        Ok(self.terms.get(exps).cloned().unwrap_or_else(Rat::zero))
    }

    /// Coefficient by a monomial written in the text grammar, e.g. `w^2*z`.
    pub fn coeff_of(&self, monomial: &str) -> Result<Rat> {
        let m = parse_poly(&self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(), monomial)?;
        let mut it = m.terms();
        let (e, c) = it
            .next()
            .ok_or_else(|| Error::input("empty monomial"))?;
        if it.next().is_some() || !c.is_one() {
            return Err(Error::input(format!("`{monomial}` is not a plain monomial")));
        }
        self.coeff(e)
    }

    pub fn neg(&self) -> QPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        self.same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        if c.is_zero() {
            return QPoly::zero_with(self.vars_arc());
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        self.same_vars(other);
        let mut out = QPoly::zero_with(self.vars_arc());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> QPoly {
        let mut out = QPoly::constant(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            Rat::one(),
        );
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// `w(p) = min` over stored monomials of the weighted degree.
    pub fn weight(&self, w: &WeightVec) -> Result<Rat> {
        if w.0.len() != self.vars.len() {
            return Err(Error::input("weight vector length mismatch"));
        }
        self.terms
            .keys()
            .map(|e| w.monomial_weight(e))
            .min()
            .ok_or(Error::ZeroWeight)
    }

    /// Weighted degree when quasi-homogeneous (all terms equal weight); zero
    /// polynomial counts as quasi-homogeneous of any degree.
    pub fn quasi_homogeneous_degree(&self, w: &WeightVec) -> Option<Rat> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let d = w.monomial_weight(first);
        for e in it {
            if w.monomial_weight(e) != d {
                return None;
            }
        }
        Some(d)
    }

    /// Exact sub-sum of the terms of weight `r`.
    pub fn filter_eq(&self, w: &WeightVec, r: &Rat) -> QPoly {
        let mut out = QPoly::zero_with(self.vars_arc());
        for (e, c) in &self.terms {
            if &w.monomial_weight(e) == r {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Exact sub-sum of the terms of weight at least `r`.
    pub fn filter_ge(&self, w: &WeightVec, r: &Rat) -> QPoly {
        let mut out = QPoly::zero_with(self.vars_arc());
        for (e, c) in &self.terms {
            if w.monomial_weight(e) >= *r {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Sub-sum of terms of weight strictly below `r`.
    pub fn filter_lt(&self, w: &WeightVec, r: &Rat) -> QPoly {
        self.sub(&self.filter_ge(w, r))
    }

    /// Total-degree-`d` homogeneous part.
    pub fn degree_part(&self, d: u32) -> QPoly {
        let ones = WeightVec::from_ints(&vec![1i64; self.vars.len()]);
        self.filter_eq(&ones, &crate::rat::int(d as i64))
    }

    /// Lowest total degree among stored monomials.
    pub fn order(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .min()
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Partial derivative with respect to the `i`-th variable.
    pub fn derivative(&self, i: usize) -> QPoly {
        let mut out = QPoly::zero_with(self.vars_arc());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * crate::rat::int(e[i] as i64));
        }
        out
    }

    /// Set one variable to 1 and drop it from the variable list.
    pub fn set_var_one(&self, name: &str) -> Result<QPoly> {
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::input(format!("unknown variable `{name}`")))?;
        let vars: Vec<&str> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, s)| s.as_str())
            .collect();
        let mut out = QPoly::zero(&vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.remove(i);
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Set one variable to 0 (keeping the variable list).
    pub fn set_var_zero(&self, name: &str) -> Result<QPoly> {
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::input(format!("unknown variable `{name}`")))?;
        let mut out = QPoly::zero_with(self.vars_arc());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Coefficient of `name^k` as a polynomial in the remaining variables.
    pub fn coeff_of_power(&self, name: &str, k: u32) -> Result<QPoly> {
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::input(format!("unknown variable `{name}`")))?;
        let vars: Vec<&str> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, s)| s.as_str())
            .collect();
        let mut out = QPoly::zero(&vars);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2.remove(i);
                out.add_term(e2, c.clone());
            }
        }
        Ok(out)
    }

    /// Largest `k` with `name^k` dividing every term; zero polynomial gives `None`.
    pub fn min_exponent(&self, name: &str) -> Option<u32> {
        let i = self.var_index(name)?;
        self.terms.keys().map(|e| e[i]).min()
    }

    /// Largest exponent of `name` among stored terms.
    pub fn max_exponent(&self, name: &str) -> Option<u32> {
        let i = self.var_index(name)?;
        self.terms.keys().map(|e| e[i]).max()
    }

    /// True iff every monomial has total exponent at least `k` in the listed
    /// variables, i.e. membership in the `k`-th power of the monomial ideal
    /// they generate. The zero polynomial belongs vacuously.
    pub fn piece_in_power_ideal(&self, var_names: &[&str], k: u32) -> bool {
        let idx: Vec<usize> = var_names
            .iter()
            .map(|n| self.var_index(n).expect("unknown variable"))
            .collect();
        self.terms
            .keys()
            .all(|e| idx.iter().map(|&i| e[i]).sum::<u32>() >= k)
    }

    /// Substitute a polynomial (over the same variable list) for one variable.
    pub fn substitute_var(&self, name: &str, image: &QPoly) -> Result<QPoly> {
        self.same_vars(image);
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::input(format!("unknown variable `{name}`")))?;
        let mut out = QPoly::zero_with(self.vars_arc());
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            let mut term = QPoly::zero_with(self.vars_arc());
            term.add_term(rest, c.clone());
            let term = term.mul(&image.pow(e[i]));
            for (te, tc) in term.terms() {
                out.add_term(te.clone(), tc.clone());
            }
        }
        Ok(out)
    }

    /// Rename the variable list (same arity, exponents unchanged).
    pub fn rename_vars(&self, vars: &[&str]) -> QPoly {
        assert_eq!(vars.len(), self.vars.len());
        let mut out = QPoly::zero(vars);
        out.terms = self.terms.clone();
        out
    }

    /// View in a larger variable list; existing variables keep their names.
    pub fn embed(&self, vars: &[&str]) -> QPoly {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|t| t == v)
                    .expect("variable missing from target list")
            })
            .collect();
        let mut out = QPoly::zero(vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; vars.len()];
            for (j, &x) in e.iter().enumerate() {
                e2[map[j]] = x;
            }
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// Exact division by a monomial; errors when some term is not divisible.
    pub fn div_monomial(&self, exps: &[u32]) -> Result<QPoly> {
        let mut out = QPoly::zero_with(self.vars_arc());
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            for (x, d) in e2.iter_mut().zip(exps) {
                if *x < *d {
                    return Err(Error::input("monomial division with remainder"));
                }
                *x -= d;
            }
            out.terms.insert(e2, c.clone());
        }
        Ok(out)
    }

    /// Exact single-divisor multivariate division test: `self = q * d` for some
    /// polynomial `q`? Requires `d != 0`.
    pub fn divisible_by(&self, d: &QPoly) -> bool {
        self.same_vars(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        // Leading term under the BTreeMap (lex) order.
        let (lead_e, lead_c) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        'outer: while !rem.is_zero() {
            let candidates: Vec<Vec<u32>> = rem.terms.keys().rev().cloned().collect();
            for e in candidates {
                if e.iter().zip(&lead_e).all(|(a, b)| a >= b) {
                    let q_e: Vec<u32> = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
                    let q_c = &rem.terms[&e] / &lead_c;
                    for (de, dc) in &d.terms {
                        let m: Vec<u32> = q_e.iter().zip(de).map(|(a, b)| a + b).collect();
                        rem.add_term(m, -(&q_c * dc));
                    }
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest monomials first reads closest to hand-written polynomials.
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || e.iter().all(|&x| x == 0) {
                parts.push(fmt_rat(&abs));
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(self.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.vars[i], x)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly[{}]({})", self.vars.join(","), self)
    }
}
