//! Relation systems: named generator sets with structure constants for the
//! constant, linear and general bracket cases, plus the PBW rewriting that
//! serves as the equality oracle modulo relations.

use std::collections::BTreeMap;

use once_cell::sync::OnceCell;
use serde::Deserialize;

use crate::coeff::CoeffPoly;
use crate::error::{AlgebraError, Result};
use crate::expr;
use crate::freealg::{Ctx, NCPoly, Word};
use crate::poisson::CPoly;
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketCase {
    Constant,
    Linear,
    General,
}

impl BracketCase {
    pub fn name(&self) -> &'static str {
        match self {
            BracketCase::Constant => "constant",
            BracketCase::Linear => "linear",
            BracketCase::General => "general",
        }
    }
}

/// The value of one bracket `{B_i, B_j}`: a central-parameter polynomial
/// plus a linear combination of target generators (over the full alphabet
/// `T` in the general case).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketValue {
    pub constant: CoeffPoly,
    pub linear: BTreeMap<usize, CoeffPoly>,
}

impl BracketValue {
    pub fn zero(nparams: usize) -> Self {
        BracketValue { constant: CoeffPoly::zero(nparams), linear: BTreeMap::new() }
    }

    pub fn from_scalar(nparams: usize, s: Scalar) -> Self {
        BracketValue { constant: CoeffPoly::constant(nparams, s), linear: BTreeMap::new() }
    }

    pub fn from_target(nparams: usize, target: usize, c: Scalar) -> Self {
        let mut v = Self::zero(nparams);
        v.add_target(target, CoeffPoly::constant(nparams, c));
        v
    }

    pub fn add_target(&mut self, target: usize, c: CoeffPoly) {
        let merged = match self.linear.get(&target) {
            Some(old) => old.add(&c).expect("same context"),
            None => c,
        };
        if merged.is_zero() {
            self.linear.remove(&target);
        } else {
            self.linear.insert(target, merged);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.is_empty()
    }

    pub fn neg(&self) -> Self {
        BracketValue {
            constant: self.constant.neg(),
            linear: self.linear.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    /// Signed coefficient of target `k` (None = the central part).
    pub fn coeff(&self, target: Option<usize>) -> CoeffPoly {
        match target {
            None => self.constant.clone(),
            Some(k) => self
                .linear
                .get(&k)
                .cloned()
                .unwrap_or_else(|| CoeffPoly::zero(self.constant.nparams())),
        }
    }

    pub fn as_ncpoly(&self, ctx: Ctx) -> NCPoly {
        let mut p = NCPoly::zero(ctx);
        p.add_assign_term(Word::empty(), self.constant.clone());
        for (&k, c) in &self.linear {
            p.add_assign_term(Word(vec![k as u16]), c.clone());
        }
        p
    }

    pub fn as_cpoly(&self, ngens: usize) -> CPoly {
        let mut p = CPoly::constant(ngens, self.constant.clone());
        for (&k, c) in &self.linear {
            let mut exps = vec![0u32; ngens];
            exps[k] = 1;
            p.add_assign_term(exps, c.clone());
        }
        p
    }
}

/// One violated Jacobi quadruple from a linear system.
#[derive(Debug, Clone)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub h: usize,
    /// Target generator index, or None for the central slot.
    pub target: Option<usize>,
    pub residual: CoeffPoly,
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub index_errors: Vec<String>,
    pub jacobi_violations: Vec<JacobiViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.index_errors.is_empty() && self.jacobi_violations.is_empty()
    }
}

/// A named generator set with its bracket case and structure constants.
/// Immutable after construction; validation results are cached.
#[derive(Debug)]
pub struct RelationSystem {
    name: String,
    case: BracketCase,
    generators: Vec<String>,
    extended: Vec<String>,
    central_params: Vec<String>,
    /// Stored for i < j over the base set only; the opposite order is the
    /// negation.
    brackets: BTreeMap<(usize, usize), BracketValue>,
    jacobi_ok: OnceCell<bool>,
}

impl RelationSystem {
    pub fn new(
        name: impl Into<String>,
        case: BracketCase,
        generators: Vec<String>,
        extended: Vec<String>,
        central_params: Vec<String>,
        brackets: Vec<(usize, usize, BracketValue)>,
    ) -> Result<Self> {
        let mut sys = RelationSystem {
            name: name.into(),
            case,
            generators,
            extended,
            central_params,
            brackets: BTreeMap::new(),
            jacobi_ok: OnceCell::new(),
        };
        if sys.case != BracketCase::General && !sys.extended.is_empty() {
            return Err(AlgebraError::InvalidInput(
                "extended generators are only allowed in the general case".into(),
            ));
        }
        let l = sys.base_len();
        let m = sys.alphabet_len();
        for (i, j, value) in brackets {
            if i >= l || j >= l || i == j {
                return Err(AlgebraError::InvalidInput(format!(
                    "bracket pair ({i}, {j}) out of range for {l} base generators"
                )));
            }
            for (&k, _) in &value.linear {
                if k >= m {
                    return Err(AlgebraError::BadGenerator(k, m));
                }
                if sys.case == BracketCase::Linear && k >= l {
                    return Err(AlgebraError::BadGenerator(k, l));
                }
                if sys.case == BracketCase::Constant {
                    return Err(AlgebraError::InvalidInput(
                        "constant-case brackets cannot reference generators".into(),
                    ));
                }
            }
            let (key, value) = if i < j { ((i, j), value) } else { ((j, i), value.neg()) };
            if sys.brackets.contains_key(&key) {
                return Err(AlgebraError::InvalidInput(format!(
                    "duplicate bracket for pair ({}, {})",
                    key.0, key.1
                )));
            }
            if !value.is_zero() {
                sys.brackets.insert(key, value);
            }
        }
        Ok(sys)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn case(&self) -> BracketCase {
        self.case
    }

    /// Size of the base set `B`.
    pub fn base_len(&self) -> usize {
        self.generators.len()
    }

    /// Size of the full alphabet: `T` in the general case, `B` otherwise.
    pub fn alphabet_len(&self) -> usize {
        self.generators.len() + self.extended.len()
    }

    pub fn nparams(&self) -> usize {
        self.central_params.len()
    }

    pub fn central_params(&self) -> &[String] {
        &self.central_params
    }

    pub fn base_names(&self) -> &[String] {
        &self.generators
    }

    /// All alphabet names, base first.
    pub fn alphabet_names(&self) -> Vec<String> {
        let mut names = self.generators.clone();
        names.extend(self.extended.iter().cloned());
        names
    }

    /// Context for noncommutative polynomials over the full alphabet.
    pub fn word_ctx(&self) -> Ctx {
        Ctx::new(self.alphabet_len(), self.nparams())
    }

    /// Context for polynomials over the base set only.
    pub fn base_ctx(&self) -> Ctx {
        Ctx::new(self.base_len(), self.nparams())
    }

    /// `{B_i, B_j}` with the antisymmetry sign applied.
    pub fn bracket(&self, i: usize, j: usize) -> Result<BracketValue> {
        let l = self.base_len();
        if i >= l || j >= l {
            return Err(AlgebraError::BadGenerator(i.max(j), l));
        }
        if i == j {
            return Ok(BracketValue::zero(self.nparams()));
        }
        Ok(if i < j {
            self.brackets
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| BracketValue::zero(self.nparams()))
        } else {
            self.brackets
                .get(&(j, i))
                .map(BracketValue::neg)
                .unwrap_or_else(|| BracketValue::zero(self.nparams()))
        })
    }

    /// Index and Jacobi checks. Constant and general systems get index
    /// checks only (no closure condition constrains them); linear systems
    /// get the full structure-constant Jacobi sum, one entry per violated
    /// (i, j, h, target) quadruple with i < j < h.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if self.case == BracketCase::General && self.extended.is_empty() {
            // Allowed, but worth flagging: T == B makes the general case a
            // linear system without its oracle.
        }
        if self.case != BracketCase::Linear {
            return report;
        }
        let l = self.base_len();
        let signed = |a: usize, b: usize, t: Option<usize>| -> CoeffPoly {
            self.bracket(a, b).expect("validated index").coeff(t)
        };
        let mut targets: Vec<Option<usize>> = vec![None];
        targets.extend((0..l).map(Some));
        for i in 0..l {
            for j in (i + 1)..l {
                for h in (j + 1)..l {
                    for &t in &targets {
                        let mut residual = CoeffPoly::zero(self.nparams());
                        for k in 0..l {
                            let s1 = signed(i, j, Some(k)).mul(&signed(k, h, t)).unwrap();
                            let s2 = signed(h, i, Some(k)).mul(&signed(k, j, t)).unwrap();
                            let s3 = signed(j, h, Some(k)).mul(&signed(k, i, t)).unwrap();
                            residual = residual.add(&s1).unwrap().add(&s2).unwrap().add(&s3).unwrap();
                        }
                        if !residual.is_zero() {
                            report.jacobi_violations.push(JacobiViolation {
                                i,
                                j,
                                h,
                                target: t,
                                residual,
                            });
                        }
                    }
                }
            }
        }
        report
    }

    fn jacobi_ok(&self) -> bool {
        *self
            .jacobi_ok
            .get_or_init(|| self.validate().is_valid())
    }

    /// Leibniz expansion of `[B_i, w]` with every generator bracket
    /// replaced by its relation value. The result lives over the full
    /// alphabet. In the general case `w` must contain base generators only.
    pub fn substituting_commutator(&self, i: usize, w: &Word) -> Result<NCPoly> {
        let l = self.base_len();
        if i >= l {
            return Err(AlgebraError::BadGenerator(i, l));
        }
        let ctx = self.word_ctx();
        let mut out = NCPoly::zero(ctx);
        for (r, &letter) in w.0.iter().enumerate() {
            let letter = letter as usize;
            if letter >= l {
                return Err(AlgebraError::UnknownBracket(i, letter));
            }
            let value = self.bracket(i, letter)?;
            if value.is_zero() {
                continue;
            }
            let prefix = NCPoly::from_term(ctx, Word(w.0[..r].to_vec()), CoeffPoly::one(ctx.nparams));
            let suffix =
                NCPoly::from_term(ctx, Word(w.0[r + 1..].to_vec()), CoeffPoly::one(ctx.nparams));
            out.add_assign(&prefix.mul(&value.as_ncpoly(ctx))?.mul(&suffix)?);
        }
        Ok(out)
    }

    /// PBW normal form: rewrites every word into nondecreasing generator
    /// order using `B_j B_i -> B_i B_j + {B_j, B_i}` until no inversion is
    /// left. Unique by the diamond lemma (antisymmetry plus Jacobi), so the
    /// result is a canonical representative modulo the relations.
    ///
    /// Defined for the constant and linear cases only; linear systems must
    /// pass the Jacobi check first, otherwise rewriting is not confluent.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        match self.case {
            BracketCase::General => {
                return Err(AlgebraError::WrongCase {
                    required: "constant or linear",
                    found: "general",
                })
            }
            BracketCase::Linear => {
                if !self.jacobi_ok() {
                    return Err(AlgebraError::NotConfluent(self.name.clone()));
                }
            }
            BracketCase::Constant => {}
        }
        let ctx = self.word_ctx();
        p.ctx().check(&ctx)?;
        // Worklist ordered so that every rewrite moves strictly down: a
        // swap keeps the length and removes exactly one inversion, a
        // relation value shortens the word. Coefficients merge at equal
        // words, so each distinct word is rewritten at most once.
        let mut pending: BTreeMap<(usize, usize, Word), CoeffPoly> = BTreeMap::new();
        for (w, c) in p.terms() {
            push_pending(&mut pending, w.clone(), c.clone());
        }
        let mut out = NCPoly::zero(ctx);
        while let Some(((_, inv, w), coeff)) = pending.pop_last() {
            if inv == 0 {
                out.add_assign_term(w, coeff);
                continue;
            }
            // Leftmost inversion.
            let r = w.0.windows(2).position(|pair| pair[0] > pair[1]).expect("inv > 0");
            let mut swapped = w.0.clone();
            swapped.swap(r, r + 1);
            let value = self.bracket(w.0[r] as usize, w.0[r + 1] as usize)?;
            if !value.constant.is_zero() {
                let mut rest = w.0[..r].to_vec();
                rest.extend_from_slice(&w.0[r + 2..]);
                push_pending(&mut pending, Word(rest), coeff.mul(&value.constant)?);
            }
            for (&k, c) in &value.linear {
                let mut word = w.0[..r].to_vec();
                word.push(k as u16);
                word.extend_from_slice(&w.0[r + 2..]);
                push_pending(&mut pending, Word(word), coeff.mul(c)?);
            }
            push_pending(&mut pending, Word(swapped), coeff);
        }
        Ok(out)
    }

    /// Equality modulo relations: the normal form of the difference is zero.
    pub fn equal_mod_relations(&self, a: &NCPoly, b: &NCPoly) -> Result<bool> {
        Ok(self.normal_form(&a.sub(b)?)?.is_zero())
    }

    /// The canonical phase-space system on `2n` generators
    /// `(x_1..x_n, p_1..p_n)` with `{p_i, x_j} = delta_ij`.
    pub fn canonical(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::InvalidInput("canonical system needs n >= 1".into()));
        }
        let mut gens = Vec::new();
        if n == 1 {
            gens.push("x".to_string());
            gens.push("p".to_string());
        } else {
            for i in 1..=n {
                gens.push(format!("x{i}"));
            }
            for i in 1..=n {
                gens.push(format!("p{i}"));
            }
        }
        // Stored pair (x_i, p_i): {x_i, p_i} = -{p_i, x_i} = -1.
        let brackets = (0..n)
            .map(|i| (i, n + i, BracketValue::from_scalar(0, scalar::int(-1))))
            .collect();
        Self::new(format!("canonical{n}"), BracketCase::Constant, gens, vec![], vec![], brackets)
    }

    /// so(3): `{L1,L2}=L3`, `{L2,L3}=L1`, `{L3,L1}=L2`.
    pub fn so3() -> Self {
        Self::new(
            "so3",
            BracketCase::Linear,
            vec!["L1".into(), "L2".into(), "L3".into()],
            vec![],
            vec![],
            vec![
                (0, 1, BracketValue::from_target(0, 2, scalar::one())),
                (1, 2, BracketValue::from_target(0, 0, scalar::one())),
                (2, 0, BracketValue::from_target(0, 1, scalar::one())),
            ],
        )
        .expect("valid preset")
    }

    /// The 2-step nilpotent Heisenberg algebra: `{X,Y}=Z`, Z central.
    pub fn heisenberg() -> Self {
        Self::new(
            "heisenberg",
            BracketCase::Linear,
            vec!["X".into(), "Y".into(), "Z".into()],
            vec![],
            vec![],
            vec![(0, 1, BracketValue::from_target(0, 2, scalar::one()))],
        )
        .expect("valid preset")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(src)
            .map_err(|e| AlgebraError::InvalidInput(format!("algebra file: {e}")))?;
        file.build()
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| AlgebraError::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }
}

fn inversions(w: &Word) -> usize {
    let mut count = 0;
    for (t, &a) in w.0.iter().enumerate() {
        count += w.0[t + 1..].iter().filter(|&&b| a > b).count();
    }
    count
}

fn push_pending(pending: &mut BTreeMap<(usize, usize, Word), CoeffPoly>, w: Word, c: CoeffPoly) {
    if c.is_zero() {
        return;
    }
    let key = (w.0.len(), inversions(&w), w);
    let merged = match pending.remove(&key) {
        Some(old) => old.add(&c).expect("same context"),
        None => c,
    };
    if !merged.is_zero() {
        pending.insert(key, merged);
    }
}

#[derive(Deserialize)]
struct AlgebraFile {
    name: String,
    case: String,
    generators: Vec<String>,
    #[serde(default)]
    extended_generators: Vec<String>,
    #[serde(default)]
    central_params: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Deserialize)]
struct BracketEntry {
    i: String,
    j: String,
    terms: Vec<TermEntry>,
}

#[derive(Deserialize)]
struct TermEntry {
    #[serde(default)]
    target: Option<String>,
    coeff: String,
}

impl AlgebraFile {
    fn build(self) -> Result<RelationSystem> {
        let case = match self.case.as_str() {
            "constant" => BracketCase::Constant,
            "linear" => BracketCase::Linear,
            "general" => BracketCase::General,
            other => {
                return Err(AlgebraError::InvalidInput(format!("unknown bracket case '{other}'")))
            }
        };
        let nparams = self.central_params.len();
        let mut alphabet: Vec<String> = self.generators.clone();
        alphabet.extend(self.extended_generators.iter().cloned());
        let gen_index = |name: &str| -> Option<usize> {
            alphabet.iter().position(|g| g == name)
        };
        let base_index = |name: &str| -> Result<usize> {
            self.generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| AlgebraError::InvalidInput(format!("unknown generator '{name}'")))
        };
        let mut brackets = Vec::new();
        for entry in &self.brackets {
            let i = base_index(&entry.i)?;
            let j = base_index(&entry.j)?;
            let mut value = BracketValue::zero(nparams);
            for term in &entry.terms {
                let coeff = expr::parse_coeff(&term.coeff, &self.central_params)?;
                match &term.target {
                    None => value.constant = value.constant.add(&coeff)?,
                    Some(t) => match gen_index(t) {
                        Some(k) => value.add_target(k, coeff),
                        // A D-monomial string in target position folds into
                        // the central part (D-dependent constant brackets).
                        None => {
                            let mono = expr::parse_coeff(t, &self.central_params)?;
                            value.constant = value.constant.add(&coeff.mul(&mono)?)?;
                        }
                    },
                }
            }
            brackets.push((i, j, value));
        }
        RelationSystem::new(
            self.name,
            case,
            self.generators,
            self.extended_generators,
            self.central_params,
            brackets,
        )
    }
}
