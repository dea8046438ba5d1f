//! Words and noncommutative polynomials of the free associative algebra,
//! with commutators, symmetrized products and abelianization.
//!
//! Equality of two [`NCPoly`] values is term-map equality, which by the
//! canonical sparse form is exactly free-algebra equality (no relations
//! applied).

use std::collections::BTreeMap;

use crate::coeff::{join_signed, CoeffPoly};
use crate::error::{AlgebraError, Result};
use crate::poisson::CPoly;
use crate::scalar::{self, Scalar};
use crate::{par, DEGREE_CAP, SYM_CAP};

/// Generator/parameter counts shared by all values of one algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ctx {
    pub ngens: usize,
    pub nparams: usize,
}

impl Ctx {
    pub fn new(ngens: usize, nparams: usize) -> Self {
        Ctx { ngens, nparams }
    }

    pub(crate) fn check(&self, other: &Ctx) -> Result<()> {
        if self != other {
            return Err(AlgebraError::ContextMismatch(
                self.ngens,
                self.nparams,
                other.ngens,
                other.nparams,
            ));
        }
        Ok(())
    }
}

/// A monomial of the free algebra: a finite sequence of generator indices.
/// The empty word is the multiplicative identity.
///
/// Ordered by (length, lexicographic), which fixes the printing order and
/// the rewriting strategy downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse element of the free associative algebra: a finite map from words
/// to coefficient polynomials, zero coefficients elided.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NCPoly {
    ctx: Ctx,
    terms: BTreeMap<Word, CoeffPoly>,
}

impl NCPoly {
    pub fn zero(ctx: Ctx) -> Self {
        NCPoly { ctx, terms: BTreeMap::new() }
    }

    /// The identity element of the algebra.
    pub fn one(ctx: Ctx) -> Self {
        Self::scalar(ctx, scalar::one())
    }

    pub fn scalar(ctx: Ctx, s: Scalar) -> Self {
        Self::from_term(ctx, Word::empty(), CoeffPoly::constant(ctx.nparams, s))
    }

    pub fn constant(ctx: Ctx, c: CoeffPoly) -> Self {
        Self::from_term(ctx, Word::empty(), c)
    }

    pub fn generator(ctx: Ctx, i: usize) -> Result<Self> {
        if i >= ctx.ngens {
            return Err(AlgebraError::BadGenerator(i, ctx.ngens));
        }
        Ok(Self::from_term(ctx, Word(vec![i as u16]), CoeffPoly::one(ctx.nparams)))
    }

    pub fn from_term(ctx: Ctx, word: Word, coeff: CoeffPoly) -> Self {
        let mut p = Self::zero(ctx);
        p.add_assign_term(word, coeff);
        p
    }

    pub fn ctx(&self) -> Ctx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CoeffPoly)> {
        self.terms.iter()
    }

    /// Longest word length present.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn coeff_of(&self, word: &Word) -> CoeffPoly {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(|| CoeffPoly::zero(self.ctx.nparams))
    }

    pub fn add_assign_term(&mut self, word: Word, coeff: CoeffPoly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
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
        for (w, c) in &other.terms {
            self.add_assign_term(w.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
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
        let mut out = Self::zero(self.ctx);
        for (w, c) in &self.terms {
            out.add_assign_term(w.clone(), c.scale(s));
        }
        out
    }

    pub fn scale_coeff(&self, k: &CoeffPoly) -> Result<Self> {
        let mut out = Self::zero(self.ctx);
        for (w, c) in &self.terms {
            out.add_assign_term(w.clone(), c.mul(k)?);
        }
        Ok(out)
    }

    /// Bilinear concatenation product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let mut out = Self::zero(self.ctx);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let len = wa.len() + wb.len();
                if len > DEGREE_CAP {
                    return Err(AlgebraError::DegreeCap(len, DEGREE_CAP));
                }
                let mut w = wa.0.clone();
                w.extend_from_slice(&wb.0);
                out.add_assign_term(Word(w), ca.mul(cb)?);
            }
        }
        Ok(out)
    }

    /// Deterministic textual form with the given generator and parameter
    /// names.
    pub fn render(&self, gens: &[String], params: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, c) in &self.terms {
            let word = w
                .0
                .iter()
                .map(|&i| gens[i as usize].clone())
                .collect::<Vec<_>>()
                .join("*");
            let coeff = c.render(params);
            let part = if w.is_empty() {
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

/// `a*b - b*a`.
pub fn commutator(a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// The symmetrized product `Sym_k`: the average of the concatenation
/// products over all `k!` orderings of the arguments.
///
/// Repeated arguments are detected structurally, so only distinct multiset
/// arrangements are expanded (with the multinomial weight).
pub fn sym_k(args: &[NCPoly]) -> Result<NCPoly> {
    let k = args.len();
    if k == 0 || k > SYM_CAP {
        return Err(AlgebraError::SymCap(k, SYM_CAP));
    }
    let ctx = args[0].ctx();
    for a in args {
        ctx.check(&a.ctx())?;
    }
    if k == 1 {
        return Ok(args[0].clone());
    }

    // Group structurally equal arguments.
    let mut groups: Vec<(&NCPoly, usize)> = Vec::new();
    for a in args {
        match groups.iter_mut().find(|(g, _)| *g == a) {
            Some((_, n)) => *n += 1,
            None => groups.push((a, 1)),
        }
    }

    // Every distinct arrangement stands for prod(mult_i!) raw orderings.
    let mut weight = scalar::one();
    for (_, n) in &groups {
        weight *= scalar::factorial(*n);
    }
    weight /= scalar::factorial(k);

    let mut arrangements: Vec<Vec<usize>> = Vec::new();
    let mut counts: Vec<usize> = groups.iter().map(|(_, n)| *n).collect();
    let mut current = Vec::with_capacity(k);
    enumerate_arrangements(&mut counts, &mut current, k, &mut arrangements);

    let products = par::map_collect(arrangements, |arr| -> Result<NCPoly> {
        let mut acc = groups[arr[0]].0.clone();
        for &g in &arr[1..] {
            acc = acc.mul(groups[g].0)?;
        }
        Ok(acc)
    });

    let mut sum = NCPoly::zero(ctx);
    for p in products {
        sum.add_assign(&p?);
    }
    Ok(sum.scale(&weight))
}

/// All distinct arrangements of a multiset, given per-class counts.
pub(crate) fn multiset_arrangements(counts: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = counts.iter().sum();
    let mut out = Vec::new();
    let mut counts = counts.to_vec();
    let mut current = Vec::with_capacity(total);
    enumerate_arrangements(&mut counts, &mut current, total, &mut out);
    out
}

fn enumerate_arrangements(
    counts: &mut Vec<usize>,
    current: &mut Vec<usize>,
    remaining: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for g in 0..counts.len() {
        if counts[g] == 0 {
            continue;
        }
        counts[g] -= 1;
        current.push(g);
        enumerate_arrangements(counts, current, remaining - 1, out);
        current.pop();
        counts[g] += 1;
    }
}

/// `Sym_2`, the diamond operation. Commutative and distributive but not
/// associative.
pub fn diamond(a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
    sym_k(&[a.clone(), b.clone()])
}

/// Ring homomorphism onto the commutative polynomial algebra: letters of
/// each word are merged into an exponent vector.
pub fn abelianize(p: &NCPoly) -> CPoly {
    let ctx = p.ctx();
    let mut out = CPoly::zero(ctx.ngens, ctx.nparams);
    for (w, c) in p.terms() {
        let mut exps = vec![0u32; ctx.ngens];
        for &l in &w.0 {
            exps[l as usize] += 1;
        }
        out.add_assign_term(exps, c.clone());
    }
    out
}
