//! Acceptance gate: twelve end-to-end criteria, one pass/fail line each.
//! Runs without the libtest harness so every line is printed unconditionally;
//! the process exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use symq_core::coeff::CoeffPoly;
use symq_core::expr::parse_cpoly;
use symq_core::freealg::{abelianize, commutator, diamond, sym_k, Ctx, NCPoly, Word};
use symq_core::identities::{
    transposition_expand, verify_lemma1, verify_pc1, verify_pc2, wick_commutator, wick_ctx,
    wick_product, wick_system,
};
use symq_core::poisson::leibniz_bracket;
use symq_core::relations::{BracketCase, BracketValue, RelationSystem};
use symq_core::sample;
use symq_core::scalar::{self, Scalar};
use symq_core::symmetrization::{
    bracket_correspondence, casimir_quantization, quantize_check, symmetrize,
};

type Check = fn() -> Result<(), String>;

fn main() {
    let criteria: Vec<(&str, Check)> = vec![
        ("bernoulli coefficients c_1..c_5", c01_bernoulli),
        ("diamond correction identity, k = 2..5", c02_lemma1),
        ("insertion and product-commutator identities", c03_pc1_pc2),
        ("double-diamond commutator identity", c04_distr),
        ("wick expansions vs rewriting oracle, l,m <= 4", c05_wick),
        ("transposition formula vs rewriting oracle", c06_transposition),
        ("moyal bracket vs operator commutator, n <= 2", c07_moyal),
        ("bracket correspondence, constant and linear cases", c08_correspondence),
        ("constant-case counterexample discrepancy -3/2", c09_counterexample),
        ("general-case correspondence, affine H", c10_general),
        ("end-to-end quantization pipelines", c11_end_to_end),
        ("structural invariant suite", c12_invariants),
    ];
    let mut failed = 0usize;
    for (idx, (label, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .map_err(|p| panic_message(&p))
            .and_then(|r| r);
        let elapsed = start.elapsed();
        match outcome {
            Ok(()) => {
                println!("criterion {:02} ({label}): PASS [{:.2?}]", idx + 1, elapsed);
            }
            Err(msg) => {
                failed += 1;
                println!("criterion {:02} ({label}): FAIL [{:.2?}] — {msg}", idx + 1, elapsed);
            }
        }
    }
    if failed > 0 {
        println!("acceptance: {failed}/12 criteria FAILED");
        std::process::exit(1);
    }
    println!("acceptance: all 12 criteria passed");
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        format!("panic: {s}")
    } else if let Some(s) = p.downcast_ref::<String>() {
        format!("panic: {s}")
    } else {
        "panic".to_string()
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, budget_secs: u64, what: &str) -> Result<(), String> {
    ensure(
        elapsed <= Duration::from_secs(budget_secs),
        format!("{what} took {elapsed:.2?}, budget {budget_secs}s"),
    )
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symq"))
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

// --- criterion 1 -----------------------------------------------------------

fn c01_bernoulli() -> Result<(), String> {
    let start = Instant::now();
    let out = cli()
        .args(["verify", "bernoulli", "--hmax", "5"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), "nonzero exit")?;
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    for expected in [
        "c_1 = 1/12",
        "c_2 = -1/720",
        "c_3 = 1/30240",
        "c_4 = -1/1209600",
        "c_5 = 1/47900160",
    ] {
        ensure(text.contains(expected), format!("missing '{expected}' in output"))?;
    }
    within(elapsed, 1, "verify bernoulli")
}

// --- criterion 2 -----------------------------------------------------------

fn c02_lemma1() -> Result<(), String> {
    for k in 2..=5 {
        let start = Instant::now();
        let res = verify_lemma1(k).map_err(|e| e.to_string())?;
        ensure(res.holds, format!("fails at k={k}"))?;
        if k == 5 {
            within(start.elapsed(), 30, "k=5")?;
        }
    }
    Ok(())
}

// --- criterion 3 -----------------------------------------------------------

fn c03_pc1_pc2() -> Result<(), String> {
    for k in 1..=5 {
        let res = verify_pc1(k).map_err(|e| e.to_string())?;
        ensure(res.holds, format!("insertion identity fails at k={k}"))?;
    }
    for k in 2..=4 {
        let start = Instant::now();
        let res = verify_pc2(k).map_err(|e| e.to_string())?;
        ensure(res.holds, format!("product-commutator identity fails at k={k}"))?;
        if k == 4 {
            within(start.elapsed(), 60, "k=4")?;
        }
    }
    Ok(())
}

// --- criterion 4 -----------------------------------------------------------

/// `B1 <> (B2 <> A) - B2 <> (B1 <> A) = (1/4) [[B1, B2], A]` on free
/// generators.
fn c04_distr() -> Result<(), String> {
    let ctx = Ctx::new(3, 0);
    let b1 = NCPoly::generator(ctx, 0).unwrap();
    let b2 = NCPoly::generator(ctx, 1).unwrap();
    let a = NCPoly::generator(ctx, 2).unwrap();
    let lhs = diamond(&b1, &diamond(&b2, &a).unwrap())
        .unwrap()
        .sub(&diamond(&b2, &diamond(&b1, &a).unwrap()).unwrap())
        .unwrap();
    let rhs = commutator(&commutator(&b1, &b2).unwrap(), &a)
        .unwrap()
        .scale(&scalar::ratio(1, 4));
    ensure(lhs == rhs, "identity does not hold")
}

// --- criterion 5 -----------------------------------------------------------

fn random_matrix(rng: &mut impl Rng, l: usize, m: usize) -> Vec<Vec<Scalar>> {
    (0..l)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if rng.gen_bool(0.25) {
                        scalar::zero()
                    } else {
                        sample::random_scalar(rng)
                    }
                })
                .collect()
        })
        .collect()
}

fn c05_wick() -> Result<(), String> {
    let start = Instant::now();

    // The displayed l=2, m=3 expansion, term for term.
    let d = vec![
        vec![scalar::int(2), scalar::int(3), scalar::int(5)],
        vec![scalar::int(7), scalar::int(11), scalar::int(13)],
    ];
    let ctx = wick_ctx(2, 3);
    let g: Vec<NCPoly> = (0..5).map(|i| NCPoly::generator(ctx, i).unwrap()).collect();
    let (l1, l2, m1, m2, m3) = (&g[0], &g[1], &g[2], &g[3], &g[4]);
    let sym3 = |a: &NCPoly, b: &NCPoly, c: &NCPoly| {
        sym_k(&[a.clone(), b.clone(), c.clone()]).unwrap()
    };
    let half = scalar::ratio(1, 2);
    let quarter = scalar::ratio(1, 4);
    let mut expected = sym_k(&g.clone()).unwrap();
    // h = 1: one pairing, weight 1/2.
    for (i, j, rest) in [
        (0, 0, sym3(l2, m2, m3)),
        (0, 1, sym3(l2, m1, m3)),
        (0, 2, sym3(l2, m1, m2)),
        (1, 0, sym3(l1, m2, m3)),
        (1, 1, sym3(l1, m1, m3)),
        (1, 2, sym3(l1, m1, m2)),
    ] {
        expected = expected
            .add(&rest.scale(&(half.clone() * d[i][j].clone())))
            .unwrap();
    }
    // h = 2: two pairings, weight 1/4; the survivor is the unpaired M.
    for (j1, j2, rest) in [
        (0, 1, m3),
        (0, 2, m2),
        (1, 2, m1),
    ] {
        let coeff = d[0][j1].clone() * d[1][j2].clone() + d[0][j2].clone() * d[1][j1].clone();
        expected = expected.add(&rest.scale(&(quarter.clone() * coeff))).unwrap();
    }
    let got = wick_product(2, 3, &d).map_err(|e| e.to_string())?;
    ensure(got == expected, "l=2, m=3 display mismatch")?;

    // Random matrices vs the rewriting oracle, all l, m <= 4.
    let mut rng = sample::rng(5);
    for l in 1..=4usize {
        for m in 1..=4usize {
            for trial in 0..20 {
                let d = random_matrix(&mut rng, l, m);
                let rel = wick_system(l, m, &d).map_err(|e| e.to_string())?;
                let ctx = wick_ctx(l, m);
                let g: Vec<NCPoly> =
                    (0..l + m).map(|i| NCPoly::generator(ctx, i).unwrap()).collect();
                let prod = sym_k(&g[..l]).unwrap().mul(&sym_k(&g[l..]).unwrap()).unwrap();
                let comm = commutator(&sym_k(&g[..l]).unwrap(), &sym_k(&g[l..]).unwrap()).unwrap();
                let prod_ok = rel
                    .equal_mod_relations(&prod, &wick_product(l, m, &d).unwrap())
                    .unwrap();
                let comm_ok = rel
                    .equal_mod_relations(&comm, &wick_commutator(l, m, &d).unwrap())
                    .unwrap();
                ensure(prod_ok, format!("product mismatch at l={l}, m={m}, trial {trial}"))?;
                ensure(comm_ok, format!("commutator mismatch at l={l}, m={m}, trial {trial}"))?;
            }
        }
    }
    within(start.elapsed(), 60, "wick suite")
}

// --- criterion 6 -----------------------------------------------------------

/// A uniformly random order-preserving shuffle of `l` L's and `m` M's, in
/// one-line notation.
fn random_shuffle(rng: &mut impl Rng, l: usize, m: usize) -> Vec<usize> {
    let n = l + m;
    let mut positions: Vec<usize> = rand::seq::index::sample(rng, n, l).into_vec();
    positions.sort_unstable();
    let mut sigma = vec![0usize; n];
    let mut next_l = 1;
    for &pos in &positions {
        sigma[pos] = next_l;
        next_l += 1;
    }
    let mut next_m = l + 1;
    for slot in sigma.iter_mut() {
        if *slot == 0 {
            *slot = next_m;
            next_m += 1;
        }
    }
    sigma
}

fn c06_transposition() -> Result<(), String> {
    // The sigma = (31425) display for l=2, m=3: M1 L1 M2 L2 M3 plus the
    // gated pairing terms.
    let d = vec![
        vec![scalar::int(2), scalar::int(3), scalar::int(5)],
        vec![scalar::int(7), scalar::int(11), scalar::int(13)],
    ];
    let got = transposition_expand(2, 3, &d, &[3, 1, 4, 2, 5]).map_err(|e| e.to_string())?;
    let ctx = wick_ctx(2, 3);
    let mut expected = NCPoly::zero(ctx);
    let term = |w: &[u16], c: Scalar| {
        NCPoly::from_term(ctx, Word(w.to_vec()), CoeffPoly::constant(0, c))
    };
    expected = expected.add(&term(&[2, 0, 3, 1, 4], scalar::one())).unwrap(); // M1 L1 M2 L2 M3
    expected = expected.add(&term(&[3, 1, 4], d[0][0].clone())).unwrap(); // d11 M2 L2 M3
    expected = expected.add(&term(&[0, 3, 4], d[1][0].clone())).unwrap(); // d21 L1 M2 M3
    expected = expected.add(&term(&[2, 0, 4], d[1][1].clone())).unwrap(); // d22 M1 L1 M3
    expected = expected
        .add(&term(&[4], d[0][0].clone() * d[1][1].clone()))
        .unwrap(); // d11 d22 M3
    ensure(got == expected, "sigma = (31425) display mismatch")?;

    // 50 random (sigma, d) instances against the rewriting oracle.
    let mut rng = sample::rng(6);
    for trial in 0..50 {
        let l = rng.gen_range(1..=3usize);
        let m = rng.gen_range(1..=3usize);
        let d = random_matrix(&mut rng, l, m);
        let sigma = random_shuffle(&mut rng, l, m);
        let expanded = transposition_expand(l, m, &d, &sigma).map_err(|e| e.to_string())?;
        let rel = wick_system(l, m, &d).map_err(|e| e.to_string())?;
        let word = NCPoly::from_term(
            wick_ctx(l, m),
            Word((0..(l + m) as u16).collect()),
            CoeffPoly::one(0),
        );
        let ok = rel.equal_mod_relations(&word, &expanded).unwrap();
        ensure(ok, format!("mismatch at trial {trial}: l={l}, m={m}, sigma={sigma:?}"))?;
    }
    Ok(())
}

// --- criterion 7 -----------------------------------------------------------

fn c07_moyal() -> Result<(), String> {
    let start = Instant::now();
    let mut rng = sample::rng(7);
    for n in 1..=2usize {
        let rel = RelationSystem::canonical(n).unwrap();
        for trial in 0..25 {
            let h = sample::random_cpoly(&mut rng, 2 * n, 0, 4, 3);
            let f = sample::random_cpoly(&mut rng, 2 * n, 0, 4, 3);
            let lhs = rel
                .normal_form(&commutator(&symmetrize(&h).unwrap(), &symmetrize(&f).unwrap()).unwrap())
                .unwrap();
            let g = symq_core::identities::moyal_bracket(&h, &f, n).map_err(|e| e.to_string())?;
            let rhs = rel.normal_form(&symmetrize(&g).unwrap()).unwrap();
            ensure(lhs == rhs, format!("mismatch at n={n}, trial {trial}"))?;
        }
    }
    within(start.elapsed(), 60, "moyal suite")
}

// --- criterion 8 -----------------------------------------------------------

fn c08_correspondence() -> Result<(), String> {
    // Constant case: deg H <= 2, F arbitrary within the symmetrization cap.
    let mut rng = sample::rng(8);
    let rel = RelationSystem::canonical(2).unwrap();
    for trial in 0..100 {
        let h = sample::random_cpoly(&mut rng, 4, 0, 2, 3);
        let f = sample::random_cpoly(&mut rng, 4, 0, 4, 3);
        let res = bracket_correspondence(&h, &f, &rel).map_err(|e| e.to_string())?;
        ensure(res.equal, format!("constant case fails at trial {trial}"))?;
    }
    // Linear case: deg H <= 1, over so(3) and a 2-step nilpotent algebra.
    for rel in [RelationSystem::so3(), RelationSystem::heisenberg()] {
        let n = rel.base_len();
        for trial in 0..100 {
            let h = sample::random_cpoly(&mut rng, n, rel.nparams(), 1, 3);
            let f = sample::random_cpoly(&mut rng, n, rel.nparams(), 4, 3);
            let res = bracket_correspondence(&h, &f, &rel).map_err(|e| e.to_string())?;
            ensure(res.equal, format!("{} fails at trial {trial}", rel.name()))?;
        }
    }
    Ok(())
}

// --- criterion 9 -----------------------------------------------------------

fn c09_counterexample() -> Result<(), String> {
    let out = cli()
        .args(["counterexample", "--case", "constant"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), "nonzero exit: the witness did not reproduce")?;
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    ensure(text.contains("-3/2"), format!("discrepancy -3/2 missing from: {text}"))
}

// --- criterion 10 ----------------------------------------------------------

/// B = (B1, B2) inside T = (B1, B2, T3) with the quadratic-closure bracket
/// {B1, B2} = T3, T3 standing for the product B1 B2.
fn general_system() -> RelationSystem {
    RelationSystem::new(
        "quadratic-closure",
        BracketCase::General,
        names(&["B1", "B2"]),
        names(&["T3"]),
        vec![],
        vec![(0, 1, BracketValue::from_target(0, 2, scalar::one()))],
    )
    .unwrap()
}

fn c10_general() -> Result<(), String> {
    let rel = general_system();
    let mut rng = sample::rng(10);
    for trial in 0..50 {
        let h = sample::random_affine(&mut rng, 2, 0);
        let f = sample::random_cpoly(&mut rng, 2, 0, 3, 3);
        let res = bracket_correspondence(&h, &f, &rel).map_err(|e| e.to_string())?;
        ensure(res.equal, format!("affine-H trial {trial} fails"))?;
    }
    Ok(())
}

// --- criterion 11 ----------------------------------------------------------

fn c11_end_to_end() -> Result<(), String> {
    // Canonical 2D oscillator: H and the angular momentum L.
    let start = Instant::now();
    let rel = RelationSystem::canonical(2).unwrap();
    let gens = rel.base_names().to_vec();
    let h = parse_cpoly("1/2*(p1^2 + p2^2 + x1^2 + x2^2)", &gens, &[]).unwrap();
    let l = parse_cpoly("x1p2 - x2p1", &gens, &[]).unwrap();
    let qr = quantize_check(&rel, &[h, l], &[]).map_err(|e| e.to_string())?;
    ensure(qr.all_leibniz_zero, "oscillator set is not in involution")?;
    ensure(qr.all_commutators_zero, "oscillator commutators do not vanish")?;
    within(start.elapsed(), 5, "oscillator quantize_check")?;

    // so(3) Casimir.
    let start = Instant::now();
    let rel = RelationSystem::so3();
    let gens = rel.base_names().to_vec();
    let c = parse_cpoly("L1^2 + L2^2 + L3^2", &gens, &[]).unwrap();
    let res = casimir_quantization(&c, &rel, 0).map_err(|e| e.to_string())?;
    ensure(res.is_casimir, "L1^2+L2^2+L3^2 not recognized as a Casimir")?;
    ensure(res.commutes_with_all, "quantized Casimir is not central")?;
    within(start.elapsed(), 5, "so(3) Casimir pipeline")
}

// --- criterion 12 ----------------------------------------------------------

fn c12_invariants() -> Result<(), String> {
    let mut rng = sample::rng(12);

    // Abelianization inverts symmetrization.
    for trial in 0..100 {
        let p = sample::random_cpoly(&mut rng, 3, 1, 4, 4);
        ensure(
            abelianize(&symmetrize(&p).unwrap()) == p,
            format!("abelianize . symmetrize != id at trial {trial}"),
        )?;
    }

    // Sym_k permutation invariance.
    let ctx = Ctx::new(2, 0);
    for trial in 0..100 {
        let args: Vec<NCPoly> =
            (0..4).map(|_| sample::random_ncpoly(&mut rng, ctx, 2, 2)).collect();
        let mut shuffled = args.clone();
        let i = rng.gen_range(0..3);
        shuffled.swap(i, i + 1);
        ensure(
            sym_k(&args).unwrap() == sym_k(&shuffled).unwrap(),
            format!("sym_k not symmetric at trial {trial}"),
        )?;
    }

    // Normal-form idempotence and the quotient-homomorphism property.
    for rel in [RelationSystem::canonical(1).unwrap(), RelationSystem::so3()] {
        let ctx = rel.word_ctx();
        for trial in 0..100 {
            let a = sample::random_ncpoly(&mut rng, ctx, 3, 3);
            let b = sample::random_ncpoly(&mut rng, ctx, 3, 3);
            let na = rel.normal_form(&a).unwrap();
            ensure(
                rel.normal_form(&na).unwrap() == na,
                format!("{}: NF not idempotent at trial {trial}", rel.name()),
            )?;
            let lhs = rel.normal_form(&a.mul(&b).unwrap()).unwrap();
            let rhs = rel
                .normal_form(&na.mul(&rel.normal_form(&b).unwrap()).unwrap())
                .unwrap();
            ensure(
                lhs == rhs,
                format!("{}: NF not a quotient homomorphism at trial {trial}", rel.name()),
            )?;
        }
    }

    // Leibniz rule and Jacobi identity for the bracket representation.
    let rel = RelationSystem::so3();
    for trial in 0..100 {
        let h = sample::random_cpoly(&mut rng, 3, 0, 2, 3);
        let f = sample::random_cpoly(&mut rng, 3, 0, 2, 3);
        let g = sample::random_cpoly(&mut rng, 3, 0, 2, 3);
        let hf = leibniz_bracket(&h, &f, &rel).unwrap();
        let hg = leibniz_bracket(&h, &g, &rel).unwrap();
        let lhs = leibniz_bracket(&h, &f.mul(&g).unwrap(), &rel).unwrap();
        let rhs = hf.mul(&g).unwrap().add(&f.mul(&hg).unwrap()).unwrap();
        ensure(lhs == rhs, format!("Leibniz rule fails at trial {trial}"))?;
        let a = leibniz_bracket(&h, &leibniz_bracket(&f, &g, &rel).unwrap(), &rel).unwrap();
        let b = leibniz_bracket(&f, &leibniz_bracket(&g, &h, &rel).unwrap(), &rel).unwrap();
        let c = leibniz_bracket(&g, &leibniz_bracket(&h, &f, &rel).unwrap(), &rel).unwrap();
        ensure(
            a.add(&b).unwrap().add(&c).unwrap().is_zero(),
            format!("Jacobi identity fails at trial {trial}"),
        )?;
    }
    Ok(())
}
