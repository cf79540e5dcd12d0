//! Sparse multivariate polynomials with exact rational coefficients:
//! the engine behind the Weierstrass formulas and the weighted-ring
//! verification. Canonical form (no stored zeros) makes equality syntactic.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::{format, vec, vec::Vec};
use core::fmt::Write as _;
use core::ops::{Add, Mul, Neg, Sub};
use num::{One, Signed, Zero};

use crate::arith::{denominator_coprime_to, Rat};

/// A polynomial in a fixed number of variables, keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn var(vars: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(vars, e, Rat::one())
    }

    pub fn monomial(vars: usize, exps: Vec<u32>, coeff: Rat) -> Self {
        assert_eq!(exps.len(), vars);
        let mut p = Poly::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.vars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(self.vars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Total weight when homogeneous under the given variable weights;
    /// None when inhomogeneous. The zero polynomial reports weight 0.
    pub fn weight(&self, weights: &[u32]) -> Option<u32> {
        assert_eq!(weights.len(), self.vars);
        let mut seen: Option<u32> = None;
        for e in self.terms.keys() {
            let w: u32 = e.iter().zip(weights).map(|(a, b)| a * b).sum();
            match seen {
                None => seen = Some(w),
                Some(s) if s != w => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(0))
    }

    /// Ring-homomorphic substitution: variable i ↦ images[i].
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars);
        let target_vars = images
            .first()
            .map(|p| p.vars)
            .unwrap_or(self.vars);
        assert!(images.iter().all(|p| p.vars == target_vars));
        let mut out = Poly::zero(target_vars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target_vars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = &term * &images[i].pow(exp);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// True when every coefficient's denominator is coprime to p.
    pub fn denominators_coprime_to(&self, p: u64) -> bool {
        self.terms.values().all(|c| denominator_coprime_to(c, p))
    }

    /// Human-readable form with the given variable names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.vars);
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(format!("{mag}"));
            }
            for (j, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => factors.push(String::from(names[j])),
                    _ => factors.push(format!("{}^{}", names[j], exp)),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.vars, o.vars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.vars, o.vars);
        let mut out = Poly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1 * c2;
                let entry = out.terms.entry(e.clone()).or_insert_with(Rat::zero);
                *entry += &c;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn arithmetic_canonical_form() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let sum = &x + &y;
        let diff = &sum - &y;
        assert_eq!(diff, x);
        let cancel = &x - &x;
        assert!(cancel.is_zero());
        let prod = &(&x + &y) * &(&x - &y);
        let expect = &x.pow(2) - &y.pow(2);
        assert_eq!(prod, expect);
    }

    #[test]
    fn weights() {
        let x = Poly::var(2, 0); // weight 4
        let y = Poly::var(2, 1); // weight 6
        let w = [4, 6];
        assert_eq!(x.pow(3).weight(&w), Some(12));
        assert_eq!((&x.pow(3) - &y.pow(2)).weight(&w), Some(12));
        assert_eq!((&x + &y).weight(&w), None);
        assert_eq!(Poly::zero(2).weight(&w), Some(0));
    }

    #[test]
    fn substitution_is_ring_hom() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&x * &y) + &x.pow(2);
        // x ↦ y, y ↦ x+y in the same ring.
        let images = [y.clone(), &x + &y];
        let q = p.substitute(&images);
        let expect = &(&y * &(&x + &y)) + &y.pow(2);
        assert_eq!(q, expect);
        // Composition with a second substitution matches direct image.
        let images2 = [x.clone(), x.clone()];
        assert_eq!(
            q.substitute(&images2),
            p.substitute(&[x.clone(), &x + &x])
        );
    }

    #[test]
    fn integrality_scan() {
        let p = Poly::monomial(1, vec![2], ratio(3, 4));
        assert!(!p.denominators_coprime_to(2));
        assert!(p.denominators_coprime_to(3));
        assert!(p.denominators_coprime_to(5));
    }

    #[test]
    fn display_names() {
        let q2 = Poly::var(2, 0);
        let q4 = Poly::var(2, 1);
        let d = &(&q2.pow(2) * &q4).scale(&rat(16)) - &q4.pow(2).scale(&rat(64));
        assert_eq!(d.to_string_with(&["q2", "q4"]), "16*q2^2*q4 - 64*q4^2");
        assert_eq!(Poly::zero(1).to_string_with(&["x"]), "0");
        let neg = Poly::constant(1, rat(-3));
        assert_eq!(neg.to_string_with(&["x"]), "-3");
    }
}
