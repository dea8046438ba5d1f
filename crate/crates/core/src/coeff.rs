//! The coefficient ring: commutative polynomials in the central parameters
//! `D` with rational coefficients. With no parameters in scope this
//! degenerates to a plain scalar.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{AlgebraError, Result};
use crate::scalar::{self, Scalar};

/// Sparse polynomial over the central parameters. Keys are fixed-width
/// exponent vectors (one slot per parameter); zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffPoly {
    nparams: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl CoeffPoly {
    pub fn zero(nparams: usize) -> Self {
        CoeffPoly { nparams, terms: BTreeMap::new() }
    }

    pub fn constant(nparams: usize, value: Scalar) -> Self {
        let mut p = Self::zero(nparams);
        if !value.is_zero() {
            p.terms.insert(vec![0; nparams], value);
        }
        p
    }

    pub fn one(nparams: usize) -> Self {
        Self::constant(nparams, scalar::one())
    }

    /// The parameter `D_idx` as a polynomial.
    pub fn param(nparams: usize, idx: usize) -> Result<Self> {
        if idx >= nparams {
            return Err(AlgebraError::BadGenerator(idx, nparams));
        }
        let mut exps = vec![0; nparams];
        exps[idx] = 1;
        let mut p = Self::zero(nparams);
        p.terms.insert(exps, scalar::one());
        Ok(p)
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(scalar) when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(scalar::zero()),
            1 => {
                let (exps, c) = self.terms.iter().next().unwrap();
                exps.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.nparams != other.nparams {
            return Err(AlgebraError::ContextMismatch(0, self.nparams, 0, other.nparams));
        }
        Ok(())
    }

    pub fn add_assign_term(&mut self, exps: Vec<u32>, c: Scalar) {
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

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_assign_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.nparams);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = Self::zero(self.nparams);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_assign_term(exps, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Renders with the given parameter names, exponent vectors in
    /// lexicographic order. Constants render as bare rationals.
    pub fn render(&self, params: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (exps, c) in &self.terms {
            let mut factors = Vec::new();
            let coeff = scalar::format(c);
            if exps.iter().all(|&e| e == 0) {
                factors.push(coeff);
            } else {
                if coeff != "1" {
                    if coeff == "-1" {
                        factors.push("-1".into());
                    } else {
                        factors.push(coeff);
                    }
                }
                for (i, &e) in exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(params[i].clone()),
                        _ => factors.push(format!("{}^{}", params[i], e)),
                    }
                }
            }
            parts.push(factors.join("*"));
        }
        join_signed(parts)
    }
}

/// Joins rendered terms, folding leading minus signs into " - " separators.
pub(crate) fn join_signed(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}
