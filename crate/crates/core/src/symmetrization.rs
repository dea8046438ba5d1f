//! Quantization by symmetrization: the symmetrization map from commutative
//! to noncommutative polynomials, the bracket correspondence theorems, and
//! the batch pipelines (integrable-set checking and Casimir quantization).

use rand::Rng;

use crate::error::{AlgebraError, Result};
use crate::freealg::{self, commutator, NCPoly, Word};
use crate::par;
use crate::poisson::{casimir_check, leibniz_bracket, CPoly};
use crate::relations::{BracketCase, RelationSystem};
use crate::sample;
use crate::scalar;
use crate::SYM_CAP;

/// `P^sym`: each monomial of total degree `k` becomes the symmetrized
/// product `Sym_k` of its letters; coefficients (including central
/// parameters) ride along unchanged. Linear in `P` and a section of
/// [`freealg::abelianize`].
pub fn symmetrize(p: &CPoly) -> Result<NCPoly> {
    let ctx = crate::freealg::Ctx::new(p.ngens(), p.nparams());
    let mut out = NCPoly::zero(ctx);
    for (exps, coeff) in p.terms() {
        let k: usize = exps.iter().map(|&e| e as usize).sum();
        if k > SYM_CAP {
            return Err(AlgebraError::SymCap(k, SYM_CAP));
        }
        if k == 0 {
            out.add_assign_term(Word::empty(), coeff.clone());
            continue;
        }
        // Classes = generators with nonzero exponent.
        let classes: Vec<usize> = (0..p.ngens()).filter(|&i| exps[i] > 0).collect();
        let counts: Vec<usize> = classes.iter().map(|&i| exps[i] as usize).collect();
        let mut weight = scalar::one();
        for &m in &counts {
            weight *= scalar::factorial(m);
        }
        weight /= scalar::factorial(k);
        let scaled = coeff.scale(&weight);
        for arr in freealg::multiset_arrangements(&counts) {
            let word = Word(arr.into_iter().map(|g| classes[g] as u16).collect());
            out.add_assign_term(word, scaled.clone());
        }
    }
    Ok(out)
}

/// Outcome of comparing `[H^sym, F^sym]` with `{H, F}_N^sym`.
#[derive(Debug, Clone)]
pub struct CorrespondenceResult {
    pub lhs: NCPoly,
    pub rhs: NCPoly,
    pub equal: bool,
    /// `rhs - lhs` as a canonical representative: the normal form in the
    /// constant and linear cases, the free difference over `T` in the
    /// general case. Zero exactly when `equal`.
    pub discrepancy: NCPoly,
}

/// Compares the operator commutator of the symmetrized polynomials with
/// the symmetrization of their Leibniz bracket.
///
/// Constant/linear: both sides are compared modulo the relations. General:
/// `H` must be affine; the commutator is expanded one substitution level
/// into the free algebra over `T` and compared there.
pub fn bracket_correspondence(
    h: &CPoly,
    f: &CPoly,
    rel: &RelationSystem,
) -> Result<CorrespondenceResult> {
    check_base(h, rel)?;
    check_base(f, rel)?;
    match rel.case() {
        BracketCase::Constant | BracketCase::Linear => {
            let lhs = commutator(&symmetrize(h)?, &symmetrize(f)?)?;
            let rhs = symmetrize(&leibniz_bracket(h, f, rel)?)?;
            let discrepancy = rel.normal_form(&rhs.sub(&lhs)?)?;
            let equal = discrepancy.is_zero();
            Ok(CorrespondenceResult { lhs, rhs, equal, discrepancy })
        }
        BracketCase::General => {
            let lhs = substituted_commutator_with_sym(h, f, rel)?;
            let rhs = symmetrize(&leibniz_bracket(h, f, rel)?)?;
            let discrepancy = rhs.sub(&lhs)?;
            let equal = discrepancy.is_zero();
            Ok(CorrespondenceResult { lhs, rhs, equal, discrepancy })
        }
    }
}

fn check_base(p: &CPoly, rel: &RelationSystem) -> Result<()> {
    if p.ngens() != rel.base_len() || p.nparams() != rel.nparams() {
        return Err(AlgebraError::ContextMismatch(
            p.ngens(),
            p.nparams(),
            rel.base_len(),
            rel.nparams(),
        ));
    }
    Ok(())
}

/// `[H^sym, F^sym]` for affine `H`, expanded over the full alphabet by
/// substituting every generator bracket with its relation value. Works in
/// any case; it is the only route to a commutator in the general case.
fn substituted_commutator_with_sym(h: &CPoly, f: &CPoly, rel: &RelationSystem) -> Result<NCPoly> {
    if h.total_degree() > 1 {
        return Err(AlgebraError::CentralNotAffine(h.total_degree(), 1));
    }
    let l = rel.base_len();
    let ctx = rel.word_ctx();
    // Coefficients of the generators in the affine H.
    let b: Vec<crate::coeff::CoeffPoly> = (0..l)
        .map(|j| {
            let mut e = vec![0u32; l];
            e[j] = 1;
            h.coeff_of(&e)
        })
        .collect();
    let mut out = NCPoly::zero(ctx);
    for (exps, coeff) in f.terms() {
        let k: usize = exps.iter().map(|&e| e as usize).sum();
        if k > SYM_CAP {
            return Err(AlgebraError::SymCap(k, SYM_CAP));
        }
        if k == 0 {
            continue;
        }
        let classes: Vec<usize> = (0..l).filter(|&i| exps[i] > 0).collect();
        let counts: Vec<usize> = classes.iter().map(|&i| exps[i] as usize).collect();
        let mut weight = scalar::one();
        for &m in &counts {
            weight *= scalar::factorial(m);
        }
        weight /= scalar::factorial(k);
        for arr in freealg::multiset_arrangements(&counts) {
            let word = Word(arr.into_iter().map(|g| classes[g] as u16).collect());
            for (j, b_j) in b.iter().enumerate() {
                if b_j.is_zero() {
                    continue;
                }
                let c = rel.substituting_commutator(j, &word)?;
                out.add_assign(&c.scale_coeff(&coeff.scale(&weight).mul(b_j)?)?);
            }
        }
    }
    Ok(out)
}

/// One (central, member) pair inside a quantization report.
#[derive(Debug, Clone)]
pub struct PairResult {
    /// Index into the central group.
    pub i: usize,
    /// Index into the combined list (centrals first, then others).
    pub j: usize,
    pub leibniz_zero: bool,
    pub commutator_zero: bool,
    /// Canonical form of `[F_i, F_j]`; zero exactly when `commutator_zero`.
    pub discrepancy: NCPoly,
}

#[derive(Debug, Clone)]
pub struct QuantizationReport {
    pub case: BracketCase,
    /// Number of central polynomials (`r`) and total set size (`s`).
    pub r: usize,
    pub s: usize,
    pub pairs: Vec<PairResult>,
    /// Degree condition (a): every central polynomial within the case
    /// bound (2 in the constant case, 1 otherwise).
    pub cond_a: bool,
    /// Degree condition (b) read over the non-central group.
    pub cond_b: bool,
    /// Degree condition (b) read literally over members 2..s of the
    /// combined list.
    pub cond_b_literal: bool,
    pub all_leibniz_zero: bool,
    pub all_commutators_zero: bool,
    /// The vanishing theorem is in force: a degree condition holds and all
    /// Leibniz brackets vanish.
    pub theorem_applies: bool,
    /// Pairs where the theorem promises zero but the commutator is not.
    pub defects: Vec<(usize, usize)>,
    pub verdict: String,
}

/// Checks an integrable set: every central polynomial against every member
/// of the whole set. Pair checks are independent and run through the
/// data-parallel map; the report order is deterministic.
pub fn quantize_check(
    rel: &RelationSystem,
    centrals: &[CPoly],
    others: &[CPoly],
) -> Result<QuantizationReport> {
    let r = centrals.len();
    let s = r + others.len();
    if r == 0 {
        return Err(AlgebraError::InvalidInput("the central group is empty".into()));
    }
    let mut combined: Vec<&CPoly> = centrals.iter().collect();
    combined.extend(others.iter());
    for p in &combined {
        check_base(p, rel)?;
    }

    let bound = match rel.case() {
        BracketCase::Constant => 2,
        BracketCase::Linear | BracketCase::General => 1,
    };
    let cond_a = centrals.iter().all(|p| p.total_degree() <= bound);
    let cond_b = others.iter().all(|p| p.total_degree() <= bound);
    let cond_b_literal = combined[1..].iter().all(|p| p.total_degree() <= bound);

    if rel.case() == BracketCase::General {
        for c in centrals {
            if c.total_degree() > 1 {
                return Err(AlgebraError::CentralNotAffine(c.total_degree(), 1));
            }
        }
    }

    let index_pairs: Vec<(usize, usize)> =
        (0..r).flat_map(|i| (0..s).map(move |j| (i, j))).collect();
    let results = par::map_collect(index_pairs, |(i, j)| -> Result<PairResult> {
        let pi = combined[i];
        let pj = combined[j];
        let leibniz = leibniz_bracket(pi, pj, rel)?;
        let discrepancy = match rel.case() {
            BracketCase::Constant | BracketCase::Linear => {
                let c = commutator(&symmetrize(pi)?, &symmetrize(pj)?)?;
                rel.normal_form(&c)?
            }
            BracketCase::General => substituted_commutator_with_sym(pi, pj, rel)?,
        };
        Ok(PairResult {
            i,
            j,
            leibniz_zero: leibniz.is_zero(),
            commutator_zero: discrepancy.is_zero(),
            discrepancy,
        })
    });
    let mut pairs = Vec::with_capacity(results.len());
    for p in results {
        pairs.push(p?);
    }

    let all_leibniz_zero = pairs.iter().all(|p| p.leibniz_zero);
    let all_commutators_zero = pairs.iter().all(|p| p.commutator_zero);
    let theorem_applies = (cond_a || cond_b) && all_leibniz_zero;
    let defects: Vec<(usize, usize)> = if theorem_applies {
        pairs.iter().filter(|p| !p.commutator_zero).map(|p| (p.i, p.j)).collect()
    } else {
        Vec::new()
    };

    let verdict = build_verdict(
        rel.case(),
        r,
        s,
        cond_a,
        cond_b,
        all_leibniz_zero,
        all_commutators_zero,
        theorem_applies,
        &defects,
    );

    Ok(QuantizationReport {
        case: rel.case(),
        r,
        s,
        pairs,
        cond_a,
        cond_b,
        cond_b_literal,
        all_leibniz_zero,
        all_commutators_zero,
        theorem_applies,
        defects,
        verdict,
    })
}

#[allow(clippy::too_many_arguments)]
fn build_verdict(
    case: BracketCase,
    r: usize,
    s: usize,
    cond_a: bool,
    cond_b: bool,
    all_leibniz_zero: bool,
    all_commutators_zero: bool,
    theorem_applies: bool,
    defects: &[(usize, usize)],
) -> String {
    let mut v = String::new();
    if !all_leibniz_zero {
        v.push_str(
            "Some Leibniz brackets are nonzero: the set is not in involution, \
             so no vanishing claim is made for the operator commutators.",
        );
        return v;
    }
    v.push_str("All Leibniz brackets vanish (the set is in involution). ");
    if !(cond_a || cond_b) {
        v.push_str(&format!(
            "Neither degree condition holds for the {} case; \
             commutators were verified directly: {}.",
            case.name(),
            if all_commutators_zero { "all vanish" } else { "some are nonzero" }
        ));
        return v;
    }
    v.push_str(&format!(
        "Degree condition ({}) holds, so every commutator must vanish. ",
        if cond_a { "a" } else { "b" }
    ));
    if defects.is_empty() {
        v.push_str(&format!(
            "Verified: all {r}x{s} commutators are zero. Contingent on \
             quasi-independence of the operators (asserted by the user, not \
             computable from structure constants), the set is \
             quasi-integrable with {r} central operators."
        ));
    } else {
        v.push_str(&format!(
            "DEFECT: {} commutator(s) are nonzero where the theorem requires zero.",
            defects.len()
        ));
    }
    let _ = theorem_applies;
    v
}

#[derive(Debug, Clone)]
pub struct CasimirReport {
    pub is_casimir: bool,
    pub commutes_with_all: bool,
    /// Human-readable failure witnesses; empty on full success.
    pub witnesses: Vec<String>,
}

/// Verifies that a Casimir candidate quantizes to a central operator:
/// `{C, B_j}_N = 0` for all generators, then `[C^sym, B_j] = 0` modulo
/// relations, then seeded spot-checks against random noncommutative
/// polynomials.
pub fn casimir_quantization(c: &CPoly, rel: &RelationSystem, seed: u64) -> Result<CasimirReport> {
    if rel.case() != BracketCase::Linear {
        return Err(AlgebraError::WrongCase { required: "linear", found: rel.case().name() });
    }
    check_base(c, rel)?;
    let mut witnesses = Vec::new();
    let names = rel.alphabet_names();
    let params: Vec<String> = rel.central_params().to_vec();

    let is_casimir = casimir_check(c, rel)?;
    if !is_casimir {
        for j in 0..rel.base_len() {
            let bj = CPoly::generator(rel.base_len(), rel.nparams(), j)?;
            let lb = leibniz_bracket(c, &bj, rel)?;
            if !lb.is_zero() {
                witnesses.push(format!(
                    "{{C, {}}}_N = {}",
                    names[j],
                    lb.render(&names, &params)
                ));
            }
        }
    }

    let csym = symmetrize(c)?;
    let mut commutes_with_all = true;
    for j in 0..rel.base_len() {
        let bj = NCPoly::generator(rel.word_ctx(), j)?;
        let nf = rel.normal_form(&commutator(&csym, &bj)?)?;
        if !nf.is_zero() {
            commutes_with_all = false;
            witnesses.push(format!(
                "[C^sym, {}] = {}{}",
                names[j],
                nf.render(&names, &params),
                if is_casimir { "  (defect: the corollary requires zero)" } else { "" }
            ));
        }
    }

    if is_casimir && commutes_with_all {
        let mut rng = sample::rng(seed);
        for _ in 0..5 {
            let deg = rng.gen_range(1..=3);
            let p = sample::random_ncpoly(&mut rng, rel.word_ctx(), deg, 4);
            let nf = rel.normal_form(&commutator(&csym, &p)?)?;
            if !nf.is_zero() {
                commutes_with_all = false;
                witnesses.push(format!(
                    "[C^sym, P] = {} for P = {}  (defect)",
                    nf.render(&names, &params),
                    p.render(&names, &params)
                ));
            }
        }
    }

    Ok(CasimirReport { is_casimir, commutes_with_all, witnesses })
}
