//! Free-algebra identity machinery: the Bernoulli coefficient table, the
//! symmetrized-product correction sums and their verification at fixed
//! order, the Wick pairing expansions, the transposition formula, and the
//! Moyal bracket for canonical systems.
//!
//! Everything here is verified on distinct free generators, so a passing
//! check certifies the identity in every associative algebra.

use itertools::Itertools;

use crate::coeff::CoeffPoly;
use crate::error::{AlgebraError, Result};
use crate::freealg::{commutator, diamond, sym_k, Ctx, NCPoly, Word};
use crate::poisson::CPoly;
use crate::relations::{BracketCase, BracketValue, RelationSystem};
use crate::scalar::{self, Scalar};
use crate::{DEGREE_CAP, SYM_CAP};

/// The coefficients `c_h` of the symmetrization corrections, `h = 1..`.
/// They satisfy `c_h = B_{2h}/(2h)!` with `B` the Bernoulli numbers.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    c: Vec<Scalar>,
}

impl BernoulliTable {
    /// `c_h` for `1 <= h <= h_max`.
    pub fn get(&self, h: usize) -> &Scalar {
        &self.c[h - 1]
    }

    pub fn h_max(&self) -> usize {
        self.c.len()
    }
}

/// Builds the table from the recursion
/// `c_1 = 1/12`, `c_h = -(1/(2h+1)) sum_{i=1}^{h-1} c_i c_{h-i}`.
pub fn bernoulli_coeffs(h_max: usize) -> Result<BernoulliTable> {
    if h_max == 0 {
        return Err(AlgebraError::BadRange(0, "h_max must be at least 1"));
    }
    let mut c: Vec<Scalar> = vec![scalar::ratio(1, 12)];
    for h in 2..=h_max {
        let mut sum = scalar::zero();
        for i in 1..h {
            sum += c[i - 1].clone() * c[h - i - 1].clone();
        }
        c.push(-sum / scalar::int(2 * h as i64 + 1));
    }
    Ok(BernoulliTable { c })
}

/// Iterated left-nested commutator `[[..[a, b_1], b_2], .., b_r]`.
fn iterated_commutator(a: &NCPoly, bs: &[&NCPoly]) -> Result<NCPoly> {
    let mut acc = a.clone();
    for b in bs {
        acc = commutator(&acc, b)?;
    }
    Ok(acc)
}

/// `A_k(a; b_1..b_k) = a <> Sym_k(bs) - Sym_{k+1}(a, bs)`, the residual of
/// the naive product rule for the diamond operation.
pub fn residual_a_k(a: &NCPoly, bs: &[NCPoly]) -> Result<NCPoly> {
    let k = bs.len();
    if k == 0 || k + 1 > SYM_CAP {
        return Err(AlgebraError::SymCap(k + 1, SYM_CAP));
    }
    let lhs = diamond(a, &sym_k(bs)?)?;
    let mut args = Vec::with_capacity(k + 1);
    args.push(a.clone());
    args.extend(bs.iter().cloned());
    lhs.sub(&sym_k(&args)?)
}

/// The correction sum `C_{k,h}`: over all ordered all-distinct 2h-tuples
/// of indices, the iterated commutator of `a` with the chosen `b`s wrapped
/// in `Sym_{k-2h+1}` together with the complementary `b`s.
pub fn correction_c(k: usize, h: usize, a: &NCPoly, bs: &[NCPoly]) -> Result<NCPoly> {
    if bs.len() != k {
        return Err(AlgebraError::BadShape(bs.len(), k));
    }
    if h == 0 || 2 * h > k {
        return Err(AlgebraError::BadRange(h, "C_{k,h} needs 1 <= h <= k/2"));
    }
    let ctx = a.ctx();
    let mut out = NCPoly::zero(ctx);
    for tuple in (0..k).permutations(2 * h) {
        let chosen: Vec<&NCPoly> = tuple.iter().map(|&i| &bs[i]).collect();
        let comm = iterated_commutator(a, &chosen)?;
        let mut args = vec![comm];
        args.extend((0..k).filter(|i| !tuple.contains(i)).map(|i| bs[i].clone()));
        out.add_assign(&sym_k(&args)?);
    }
    Ok(out)
}

/// The two pc2 correction sums `(D_{k,h}, E_{k,h})`.
///
/// `D`: ordered 2h-tuples, commutator pattern `[^{2h+1} a1, b.., a2]`.
/// `E`: ordered (2h+1)-tuples, pattern `[^{2h} a1, b..]` paired with the
/// single bracket `[a2, b_last]`.
pub fn correction_d_e(
    k: usize,
    h: usize,
    a1: &NCPoly,
    a2: &NCPoly,
    bs: &[NCPoly],
) -> Result<(NCPoly, NCPoly)> {
    if bs.len() != k {
        return Err(AlgebraError::BadShape(bs.len(), k));
    }
    if h == 0 || 2 * h > k {
        return Err(AlgebraError::BadRange(h, "D_{k,h} needs 1 <= h <= k/2"));
    }
    let ctx = a1.ctx();

    let mut d_sum = NCPoly::zero(ctx);
    for tuple in (0..k).permutations(2 * h) {
        let mut chain: Vec<&NCPoly> = tuple.iter().map(|&i| &bs[i]).collect();
        chain.push(a2);
        let comm = iterated_commutator(a1, &chain)?;
        let mut args = vec![comm];
        args.extend((0..k).filter(|i| !tuple.contains(i)).map(|i| bs[i].clone()));
        d_sum.add_assign(&sym_k(&args)?);
    }

    let mut e_sum = NCPoly::zero(ctx);
    if 2 * h + 1 <= k {
        for tuple in (0..k).permutations(2 * h + 1) {
            let chain: Vec<&NCPoly> = tuple[..2 * h].iter().map(|&i| &bs[i]).collect();
            let comm = iterated_commutator(a1, &chain)?;
            let single = commutator(a2, &bs[tuple[2 * h]])?;
            let mut args = vec![comm, single];
            args.extend((0..k).filter(|i| !tuple.contains(i)).map(|i| bs[i].clone()));
            e_sum.add_assign(&sym_k(&args)?);
        }
    }
    Ok((d_sum, e_sum))
}

/// The outcome of an exact identity check: the residual is the difference
/// of the two sides and must be structurally zero.
#[derive(Debug, Clone)]
pub struct VerificationResult {
    pub holds: bool,
    pub residual: NCPoly,
}

impl VerificationResult {
    fn from_residual(residual: NCPoly) -> Self {
        VerificationResult { holds: residual.is_zero(), residual }
    }
}

fn free_gens(ctx: Ctx) -> Vec<NCPoly> {
    (0..ctx.ngens)
        .map(|i| NCPoly::generator(ctx, i).expect("index in range"))
        .collect()
}

/// `[A, Sym_k(B)] = sum_i Sym_k(B_1, .., [A, B_i], .., B_k)` on `k + 1`
/// distinct free generators.
pub fn verify_pc1(k: usize) -> Result<VerificationResult> {
    if k == 0 || k + 1 > SYM_CAP {
        return Err(AlgebraError::SymCap(k + 1, SYM_CAP));
    }
    let ctx = Ctx::new(k + 1, 0);
    let g = free_gens(ctx);
    let a = &g[0];
    let bs = &g[1..];
    let lhs = commutator(a, &sym_k(bs)?)?;
    let mut rhs = NCPoly::zero(ctx);
    for i in 0..k {
        let mut args = bs.to_vec();
        args[i] = commutator(a, &bs[i])?;
        rhs.add_assign(&sym_k(&args)?);
    }
    Ok(VerificationResult::from_residual(lhs.sub(&rhs)?))
}

/// `A_k(A; B) = sum_h c_h C_{k,h}(A; B)` on `k + 1` distinct free
/// generators.
pub fn verify_lemma1(k: usize) -> Result<VerificationResult> {
    if k < 2 || k + 1 > SYM_CAP {
        return Err(AlgebraError::SymCap(k + 1, SYM_CAP));
    }
    let ctx = Ctx::new(k + 1, 0);
    let g = free_gens(ctx);
    let a = &g[0];
    let bs = &g[1..];
    let lhs = residual_a_k(a, bs)?;
    let table = bernoulli_coeffs(k / 2)?;
    let mut rhs = NCPoly::zero(ctx);
    for h in 1..=k / 2 {
        rhs.add_assign(&correction_c(k, h, a, bs)?.scale(table.get(h)));
    }
    Ok(VerificationResult::from_residual(lhs.sub(&rhs)?))
}

/// The full pc2 expansion of `[A1 <> A2, Sym_k(B)]` on `k + 2` distinct
/// free generators.
pub fn verify_pc2(k: usize) -> Result<VerificationResult> {
    if k < 2 || k + 2 > SYM_CAP {
        return Err(AlgebraError::SymCap(k + 2, SYM_CAP));
    }
    let ctx = Ctx::new(k + 2, 0);
    let g = free_gens(ctx);
    let (a1, a2) = (&g[0], &g[1]);
    let bs = &g[2..];
    let lhs = commutator(&diamond(a1, a2)?, &sym_k(bs)?)?;

    let table = bernoulli_coeffs((k / 2).max(1))?;
    let mut rhs = NCPoly::zero(ctx);
    for (first, second) in [(a1, a2), (a2, a1)] {
        // Insertion sum.
        for i in 0..k {
            let mut args = vec![first.clone()];
            args.extend(bs.iter().cloned());
            args[i + 1] = commutator(second, &bs[i])?;
            rhs.add_assign(&sym_k(&args)?);
        }
        // Correction sums.
        for h in 1..=k / 2 {
            let (d_sum, e_sum) = correction_d_e(k, h, first, second, bs)?;
            rhs.add_assign(&d_sum.scale(&-table.get(h).clone()));
            rhs.add_assign(&e_sum.scale(table.get(h)));
        }
        // E_{k,h} ranges up to [(k-1)/2]; correction_d_e returns a zero
        // E-sum at h = k/2 for even k, so one loop covers both bounds.
    }
    Ok(VerificationResult::from_residual(lhs.sub(&rhs)?))
}

fn check_shape(l: usize, m: usize, d: &[Vec<Scalar>]) -> Result<()> {
    if l == 0 || m == 0 || l + m > DEGREE_CAP || l + m > SYM_CAP {
        return Err(AlgebraError::SymCap(l + m, SYM_CAP.min(DEGREE_CAP)));
    }
    if d.len() != l || d.iter().any(|row| row.len() != m) {
        return Err(AlgebraError::BadShape(d.len(), l));
    }
    Ok(())
}

/// Context for the Wick alphabet: generators `0..l` are the `L`s,
/// `l..l+m` the `M`s.
pub fn wick_ctx(l: usize, m: usize) -> Ctx {
    Ctx::new(l + m, 0)
}

/// Common core of the two Wick expansions: the pairing sum over `h` in
/// `hs`, with per-`h` weight `weight(h)`.
fn wick_sum(
    l: usize,
    m: usize,
    d: &[Vec<Scalar>],
    hs: &[usize],
    weight: impl Fn(usize) -> Scalar,
) -> Result<NCPoly> {
    let ctx = wick_ctx(l, m);
    let g = free_gens(ctx);
    let mut out = NCPoly::zero(ctx);
    for &h in hs {
        let w = weight(h);
        for i_set in (0..l).combinations(h) {
            for j_set in (0..m).combinations(h) {
                for perm in (0..h).permutations(h) {
                    let mut coeff = w.clone();
                    for (r, &pi) in perm.iter().enumerate() {
                        coeff *= d[i_set[r]][j_set[pi]].clone();
                    }
                    if coeff == scalar::zero() {
                        continue;
                    }
                    let mut args: Vec<NCPoly> = Vec::with_capacity(l + m - 2 * h);
                    args.extend((0..l).filter(|i| !i_set.contains(i)).map(|i| g[i].clone()));
                    args.extend(
                        (0..m).filter(|j| !j_set.contains(j)).map(|j| g[l + j].clone()),
                    );
                    let sym = if args.is_empty() { NCPoly::one(ctx) } else { sym_k(&args)? };
                    out.add_assign(&sym.scale(&coeff));
                }
            }
        }
    }
    Ok(out)
}

/// The Wick product formula: `Sym_l(L) Sym_m(M)` as a pairing sum, valid
/// whenever every `[L_i, M_j]` is the number `d_ij`.
pub fn wick_product(l: usize, m: usize, d: &[Vec<Scalar>]) -> Result<NCPoly> {
    check_shape(l, m, d)?;
    let hs: Vec<usize> = (0..=l.min(m)).collect();
    wick_sum(l, m, d, &hs, |h| {
        scalar::one() / scalar::int(1 << h)
    })
}

/// The Wick commutator formula: `[Sym_l(L), Sym_m(M)]`, keeping only odd
/// pairing orders with doubled weight.
pub fn wick_commutator(l: usize, m: usize, d: &[Vec<Scalar>]) -> Result<NCPoly> {
    check_shape(l, m, d)?;
    let hs: Vec<usize> = (1..=l.min(m)).step_by(2).collect();
    wick_sum(l, m, d, &hs, |h| {
        scalar::int(2) / scalar::int(1 << h)
    })
}

/// A constant relation system realizing the Wick hypotheses:
/// `[L_i, M_j] = d_ij`, all other generator brackets zero. Serves as the
/// PBW-rewriting oracle for the closed formulas.
pub fn wick_system(l: usize, m: usize, d: &[Vec<Scalar>]) -> Result<RelationSystem> {
    check_shape(l, m, d)?;
    let mut gens = Vec::with_capacity(l + m);
    for i in 1..=l {
        gens.push(format!("L{i}"));
    }
    for j in 1..=m {
        gens.push(format!("M{j}"));
    }
    let mut brackets = Vec::new();
    for (i, row) in d.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            brackets.push((i, l + j, BracketValue::from_scalar(0, v.clone())));
        }
    }
    RelationSystem::new("wick", BracketCase::Constant, gens, vec![], vec![], brackets)
}

/// Expands the concatenation word `L_1..L_l M_1..M_m` along the shuffle
/// `sigma` (one-line notation over `1..=l+m`): the sigma-ordered word plus
/// the gated lower-order pairing terms.
///
/// `sigma` must preserve the internal order of the `L` group and of the
/// `M` group.
pub fn transposition_expand(
    l: usize,
    m: usize,
    d: &[Vec<Scalar>],
    sigma: &[usize],
) -> Result<NCPoly> {
    check_shape(l, m, d)?;
    let n = l + m;
    if sigma.len() != n {
        return Err(AlgebraError::BadShuffle);
    }
    // sigma maps positions to letters (1-based); invert it.
    let mut inv = vec![0usize; n + 1];
    let mut seen = vec![false; n + 1];
    for (pos, &letter) in sigma.iter().enumerate() {
        if letter == 0 || letter > n || seen[letter] {
            return Err(AlgebraError::BadShuffle);
        }
        seen[letter] = true;
        inv[letter] = pos;
    }
    // Order preservation within each group.
    for i in 1..l {
        if inv[i] >= inv[i + 1] {
            return Err(AlgebraError::BadShuffle);
        }
    }
    for j in 1..m {
        if inv[l + j] >= inv[l + j + 1] {
            return Err(AlgebraError::BadShuffle);
        }
    }

    // Gated pairings: d~_ij = d_ij when L_i ends up after M_j.
    let gated = |i: usize, j: usize| -> Scalar {
        if inv[i + 1] > inv[l + j + 1] {
            d[i][j].clone()
        } else {
            scalar::zero()
        }
    };

    let ctx = wick_ctx(l, m);
    let mut out = NCPoly::zero(ctx);
    for h in 0..=l.min(m) {
        for i_set in (0..l).combinations(h) {
            for j_set in (0..m).combinations(h) {
                for perm in (0..h).permutations(h) {
                    let mut coeff = scalar::one();
                    for (r, &pi) in perm.iter().enumerate() {
                        coeff *= gated(i_set[r], j_set[pi]);
                    }
                    if coeff == scalar::zero() {
                        continue;
                    }
                    // Surviving letters in sigma order.
                    let mut letters: Vec<u16> = Vec::with_capacity(n - 2 * h);
                    for &letter in sigma {
                        let gen = letter - 1;
                        let survives = if gen < l {
                            !i_set.contains(&gen)
                        } else {
                            !j_set.contains(&(gen - l))
                        };
                        if survives {
                            letters.push(gen as u16);
                        }
                    }
                    out.add_assign_term(Word(letters), CoeffPoly::constant(0, coeff));
                }
            }
        }
    }
    Ok(out)
}

/// The exact Moyal bracket for the canonical system on `2n` generators
/// `(x_1..x_n, p_1..p_n)`:
///
/// `G = sum_k sum_{|a+b| = 2k+1} (-1)^{|b|} / (2^{2k} a! b!)
///      (d^{|a+b|} H / dx^b dp^a) (d^{|a+b|} F / dx^a dp^b)`.
///
/// Its symmetrization equals `[H^sym, F^sym]` under the canonical
/// relations; the `k = 0` part is the Leibniz bracket.
pub fn moyal_bracket(h: &CPoly, f: &CPoly, n: usize) -> Result<CPoly> {
    if n == 0 || h.ngens() != 2 * n || f.ngens() != 2 * n || h.nparams() != f.nparams() {
        return Err(AlgebraError::ContextMismatch(
            h.ngens(),
            h.nparams(),
            f.ngens(),
            f.nparams(),
        ));
    }
    let bound = h.total_degree().min(f.total_degree());
    let mut out = CPoly::zero(2 * n, h.nparams());
    let mut total: usize = 1;
    while total <= bound {
        for ab in compositions(total as u32, 2 * n) {
            let alpha = &ab[..n];
            let beta = &ab[n..];
            // H differentiated by x^beta p^alpha.
            let dh = multi_partial(h, beta, alpha, n)?;
            if dh.is_zero() {
                continue;
            }
            // F differentiated by x^alpha p^beta.
            let df = multi_partial(f, alpha, beta, n)?;
            if df.is_zero() {
                continue;
            }
            let abs_beta: u32 = beta.iter().sum();
            let mut coeff = scalar::one() / scalar::int(1i64 << (total - 1));
            if abs_beta % 2 == 1 {
                coeff = -coeff;
            }
            for &e in &ab {
                coeff /= scalar::factorial(e as usize);
            }
            out.add_assign(&dh.mul(&df)?.scale(&coeff));
        }
        total += 2;
    }
    Ok(out)
}

/// All vectors of `slots` nonnegative integers summing to `total`.
fn compositions(total: u32, slots: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; slots];
    fn rec(slot: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slot + 1 == current.len() {
            current[slot] = left;
            out.push(current.clone());
            return;
        }
        for v in 0..=left {
            current[slot] = v;
            rec(slot + 1, left - v, current, out);
        }
    }
    rec(0, total, &mut current, &mut out);
    out
}

/// `d^{xdeg}/dx^xdeg d^{pdeg}/dp^pdeg` applied slotwise; `xdeg`, `pdeg`
/// have length `n`, x-generators come first.
fn multi_partial(p: &CPoly, xdeg: &[u32], pdeg: &[u32], n: usize) -> Result<CPoly> {
    let mut out = p.clone();
    for (i, &e) in xdeg.iter().enumerate() {
        for _ in 0..e {
            out = out.partial(i)?;
            if out.is_zero() {
                return Ok(out);
            }
        }
    }
    for (i, &e) in pdeg.iter().enumerate() {
        for _ in 0..e {
            out = out.partial(n + i)?;
            if out.is_zero() {
                return Ok(out);
            }
        }
    }
    Ok(out)
}
