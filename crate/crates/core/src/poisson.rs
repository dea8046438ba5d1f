//! Commutative polynomials in the generators over the coefficient ring,
//! Leibniz representations of Poisson brackets for the three bracket
//! cases, and Casimir verification on Lie co-algebras.

use std::collections::BTreeMap;

use crate::coeff::{join_signed, CoeffPoly};
use crate::error::{AlgebraError, Result};
use crate::relations::{BracketCase, RelationSystem};
use crate::scalar::{self, Scalar};

/// Sparse commutative polynomial: exponent vectors over the generator set
/// with [`CoeffPoly`] coefficients. Exponent vectors have fixed width equal
/// to the generator count of the context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CPoly {
    ngens: usize,
    nparams: usize,
    terms: BTreeMap<Vec<u32>, CoeffPoly>,
}

impl CPoly {
    pub fn zero(ngens: usize, nparams: usize) -> Self {
        CPoly { ngens, nparams, terms: BTreeMap::new() }
    }

    pub fn constant(ngens: usize, coeff: CoeffPoly) -> Self {
        let nparams = coeff.nparams();
        let mut p = Self::zero(ngens, nparams);
        p.add_assign_term(vec![0; ngens], coeff);
        p
    }

    pub fn scalar(ngens: usize, nparams: usize, s: Scalar) -> Self {
        Self::constant(ngens, CoeffPoly::constant(nparams, s))
    }

    pub fn one(ngens: usize, nparams: usize) -> Self {
        Self::scalar(ngens, nparams, scalar::one())
    }

    pub fn generator(ngens: usize, nparams: usize, i: usize) -> Result<Self> {
        if i >= ngens {
            return Err(AlgebraError::BadGenerator(i, ngens));
        }
        let mut exps = vec![0; ngens];
        exps[i] = 1;
        let mut p = Self::zero(ngens, nparams);
        p.add_assign_term(exps, CoeffPoly::one(nparams));
        Ok(p)
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, exps: &[u32]) -> CoeffPoly {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| CoeffPoly::zero(self.nparams))
    }

    /// Total degree in the generators (exponents of central parameters do
    /// not count).
    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ngens != other.ngens || self.nparams != other.nparams {
            return Err(AlgebraError::ContextMismatch(
                self.ngens,
                self.nparams,
                other.ngens,
                other.nparams,
            ));
        }
        Ok(())
    }

    pub fn add_assign_term(&mut self, exps: Vec<u32>, coeff: CoeffPoly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let merged = o.get().add(&coeff).expect("same context");
                if merged.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = merged;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_assign_term(e.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.ngens, self.nparams);
        for (e, c) in &self.terms {
            out.add_assign_term(e.clone(), c.scale(s));
        }
        out
    }

    pub fn scale_coeff(&self, k: &CoeffPoly) -> Result<Self> {
        let mut out = Self::zero(self.ngens, self.nparams);
        for (e, c) in &self.terms {
            out.add_assign_term(e.clone(), c.mul(k)?);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = Self::zero(self.ngens, self.nparams);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_assign_term(exps, ca.mul(cb)?);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::one(self.ngens, self.nparams);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Exact partial derivative with respect to generator `i`.
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i >= self.ngens {
            return Err(AlgebraError::BadGenerator(i, self.ngens));
        }
        let mut out = Self::zero(self.ngens, self.nparams);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.add_assign_term(exps, c.scale(&scalar::int(e[i] as i64)));
        }
        Ok(out)
    }

    /// Inclusion into a wider generator context (the original generators
    /// stay a prefix of the new alphabet).
    pub fn embed(&self, new_ngens: usize) -> Result<Self> {
        if new_ngens < self.ngens {
            return Err(AlgebraError::BadGenerator(new_ngens, self.ngens));
        }
        let mut out = Self::zero(new_ngens, self.nparams);
        for (e, c) in &self.terms {
            let mut exps = e.clone();
            exps.resize(new_ngens, 0);
            out.add_assign_term(exps, c.clone());
        }
        Ok(out)
    }

    pub fn render(&self, gens: &[String], params: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (exps, c) in &self.terms {
            let mut mono = Vec::new();
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => mono.push(gens[i].clone()),
                    _ => mono.push(format!("{}^{}", gens[i], e)),
                }
            }
            let word = mono.join("*");
            let coeff = c.render(params);
            let part = if word.is_empty() {
                coeff
            } else if coeff == "1" {
                word
            } else if coeff == "-1" {
                format!("-{word}")
            } else if coeff.contains(" + ") || coeff.contains(" - ") {
                format!("({coeff})*{word}")
            } else {
                format!("{coeff}*{word}")
            };
            parts.push(part);
        }
        join_signed(parts)
    }
}

/// The Leibniz representation of the Poisson bracket `{H, F}` determined by
/// the structure constants of `rel`.
///
/// Inputs live over the base generator set `B`; in the general case the
/// result lives over the extended set `T`.
pub fn leibniz_bracket(h: &CPoly, f: &CPoly, rel: &RelationSystem) -> Result<CPoly> {
    h.check_ctx(f)?;
    if h.ngens() != rel.base_len() || h.nparams() != rel.nparams() {
        return Err(AlgebraError::ContextMismatch(
            h.ngens(),
            h.nparams(),
            rel.base_len(),
            rel.nparams(),
        ));
    }
    let out_gens = rel.alphabet_len();
    let mut out = CPoly::zero(out_gens, rel.nparams());
    for i in 0..rel.base_len() {
        let hi = h.partial(i)?;
        if hi.is_zero() {
            continue;
        }
        for j in 0..rel.base_len() {
            if i == j {
                continue;
            }
            let value = rel.bracket(i, j)?;
            if value.is_zero() {
                continue;
            }
            let fj = f.partial(j)?;
            if fj.is_zero() {
                continue;
            }
            let prod = hi.mul(&fj)?.embed(out_gens)?;
            out.add_assign(&prod.mul(&value.as_cpoly(out_gens))?);
        }
    }
    Ok(out)
}

/// True iff `{C, B_i}_N = 0` as a polynomial for every generator. Only
/// meaningful for linear systems (Lie co-algebras).
pub fn casimir_check(c: &CPoly, rel: &RelationSystem) -> Result<bool> {
    if rel.case() != BracketCase::Linear {
        return Err(AlgebraError::WrongCase {
            required: "linear",
            found: rel.case().name(),
        });
    }
    for i in 0..rel.base_len() {
        let bi = CPoly::generator(rel.base_len(), rel.nparams(), i)?;
        if !leibniz_bracket(c, &bi, rel)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
