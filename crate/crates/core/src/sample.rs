//! Seeded random instance generation for property tests and spot checks.
//! All draws go through a deterministic ChaCha stream, so any failure
//! reproduces from its seed. Coefficients come from a small rational pool.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::CoeffPoly;
use crate::freealg::{Ctx, NCPoly, Word};
use crate::poisson::CPoly;
use crate::scalar::{ratio, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational from the pool {-3..3}/{1,2}, excluding zero.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let num = rng.gen_range(-3i64..=3);
        if num == 0 {
            continue;
        }
        let den = rng.gen_range(1i64..=2);
        return ratio(num, den);
    }
}

/// A nonzero coefficient: a pool rational times a parameter monomial of
/// degree at most `max_param_deg`.
pub fn random_coeff(rng: &mut impl Rng, nparams: usize, max_param_deg: u32) -> CoeffPoly {
    let mut exps = vec![0u32; nparams];
    for e in exps.iter_mut() {
        *e = rng.gen_range(0..=max_param_deg);
    }
    let mut c = CoeffPoly::zero(nparams);
    c.add_assign_term(exps, random_scalar(rng));
    c
}

/// A random exponent vector with total degree at most `max_deg`.
fn random_exps(rng: &mut impl Rng, ngens: usize, max_deg: usize) -> Vec<u32> {
    let deg = rng.gen_range(0..=max_deg);
    let mut exps = vec![0u32; ngens];
    for _ in 0..deg {
        exps[rng.gen_range(0..ngens)] += 1;
    }
    exps
}

/// A commutative polynomial with up to `max_terms` monomials of total
/// degree at most `max_deg`.
pub fn random_cpoly(
    rng: &mut impl Rng,
    ngens: usize,
    nparams: usize,
    max_deg: usize,
    max_terms: usize,
) -> CPoly {
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let mut p = CPoly::zero(ngens, nparams);
    for _ in 0..nterms {
        let exps = random_exps(rng, ngens, max_deg);
        p.add_assign_term(exps, random_coeff(rng, nparams, 1));
    }
    p
}

/// A random affine polynomial `c + sum b_j B_j` with every slot populated
/// from the pool (some may cancel to zero when added elsewhere).
pub fn random_affine(rng: &mut impl Rng, ngens: usize, nparams: usize) -> CPoly {
    let mut p = CPoly::zero(ngens, nparams);
    p.add_assign_term(vec![0; ngens], random_coeff(rng, nparams, 1));
    for j in 0..ngens {
        if rng.gen_bool(0.7) {
            let mut exps = vec![0u32; ngens];
            exps[j] = 1;
            p.add_assign_term(exps, random_coeff(rng, nparams, 1));
        }
    }
    p
}

/// A noncommutative polynomial with up to `max_terms` words of length at
/// most `max_len`.
pub fn random_ncpoly(rng: &mut impl Rng, ctx: Ctx, max_len: usize, max_terms: usize) -> NCPoly {
    let nterms = rng.gen_range(1..=max_terms.max(1));
    let mut p = NCPoly::zero(ctx);
    for _ in 0..nterms {
        let len = rng.gen_range(0..=max_len);
        let word = Word(
            (0..len)
                .map(|_| rng.gen_range(0..ctx.ngens) as u16)
                .collect(),
        );
        p.add_assign_term(word, random_coeff(rng, ctx.nparams, 1));
    }
    p
}
