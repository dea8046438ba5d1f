//! `symq`: command-line front end for the exact symmetrization calculus.
//!
//! Every subcommand maps onto one library pipeline; input polynomials are
//! always commutative expressions (the classical side), and symmetrization
//! is the only route into the operator algebra. Exit codes: 0 = positive
//! report, 1 = negative report or failed verification, 2 = input error.

pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use serde::Deserialize;
use serde_json::json;

use symq_core::error::AlgebraError;
use symq_core::expr::parse_cpoly;
use symq_core::freealg::{commutator, sym_k, NCPoly};
use symq_core::identities::{
    bernoulli_coeffs, verify_lemma1, verify_pc1, verify_pc2, wick_commutator, wick_ctx,
    wick_product, wick_system,
};
use symq_core::poisson::{leibniz_bracket, CPoly};
use symq_core::relations::RelationSystem;
use symq_core::sample;
use symq_core::scalar::{self, Scalar};
use symq_core::symmetrization::{
    bracket_correspondence, casimir_quantization, quantize_check, symmetrize,
};

use report::Report;

#[derive(Parser)]
#[command(name = "symq", version, about = "Exact quantization-by-symmetrization calculus")]
struct Cli {
    /// Emit machine-readable JSON (reports on stdout, errors on stderr).
    #[arg(long, global = true)]
    json: bool,

    /// Seed for every randomized trial sequence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct AlgebraOpt {
    /// Algebra description file (JSON).
    #[arg(short = 'a', long = "algebra")]
    algebra: Option<PathBuf>,

    /// Built-in algebra: canonical:<n>, so3, heisenberg.
    #[arg(long, conflicts_with = "algebra")]
    preset: Option<String>,
}

impl AlgebraOpt {
    fn load(&self) -> Result<RelationSystem, AlgebraError> {
        match (&self.algebra, &self.preset) {
            (Some(path), _) => RelationSystem::from_path(path),
            (None, Some(p)) => load_preset(p),
            (None, None) => Err(AlgebraError::InvalidInput(
                "no algebra given: use --algebra <file> or --preset <name>".into(),
            )),
        }
    }
}

fn load_preset(name: &str) -> Result<RelationSystem, AlgebraError> {
    if let Some(n) = name.strip_prefix("canonical:") {
        let n: usize = n
            .parse()
            .map_err(|_| AlgebraError::InvalidInput(format!("bad preset '{name}'")))?;
        return RelationSystem::canonical(n);
    }
    match name {
        "so3" => Ok(RelationSystem::so3()),
        "heisenberg" => Ok(RelationSystem::heisenberg()),
        _ => Err(AlgebraError::InvalidInput(format!("unknown preset '{name}'"))),
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check indices and (for linear systems) the Jacobi identity.
    Validate {
        /// Algebra description file (JSON).
        path: Option<PathBuf>,
        #[command(flatten)]
        algebra: AlgebraOpt,
    },
    /// Symmetrize a commutative polynomial into the operator algebra.
    Symmetrize {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(short, long)]
        expr: String,
        /// Also reduce the result to its PBW normal form.
        #[arg(long)]
        normal_form: bool,
    },
    /// The Leibniz representation {H, F}_N.
    Bracket {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        h: String,
        #[arg(long)]
        f: String,
    },
    /// Compare [H^sym, F^sym] with {H, F}_N^sym.
    Correspond {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(long)]
        h: String,
        #[arg(long)]
        f: String,
    },
    /// Check an integrable set: centrals against the whole set.
    QuantizeCheck {
        #[command(flatten)]
        algebra: AlgebraOpt,
        /// Set file: {"algebra": "<file>", "centrals": [..], "others": [..]}.
        #[arg(long)]
        set: PathBuf,
        /// Record that the generators are asserted polynomially independent.
        #[arg(long)]
        assume_poly_independent: bool,
    },
    /// Verify that a Casimir candidate quantizes to a central operator.
    Casimir {
        #[command(flatten)]
        algebra: AlgebraOpt,
        #[arg(short, long)]
        expr: String,
    },
    /// Run one of the identity verification suites.
    Verify {
        #[command(subcommand)]
        suite: VerifyCmd,
    },
    /// Reproduce a documented failure witness.
    Counterexample {
        /// Which witness; currently only "constant" (p^3 vs x^3).
        #[arg(long)]
        case: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// [A, Sym_k] insertion identity.
    Pc1 {
        #[arg(long)]
        k: usize,
    },
    /// Diamond/Sym_k correction identity.
    Lemma1 {
        #[arg(long)]
        k: usize,
    },
    /// [A1<>A2, Sym_k] expansion identity.
    Pc2 {
        #[arg(long)]
        k: usize,
    },
    /// Wick pairing formulas against the PBW rewriting oracle.
    Wick {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Moyal bracket against the operator commutator.
    Moyal {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        deg: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// The Bernoulli coefficient table.
    Bernoulli {
        #[arg(long)]
        hmax: usize,
    },
}

/// Parses and executes; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with code 0 itself.
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(err) => {
            if cli.json {
                eprintln!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"error": err.to_string(), "code": 2}))
                        .unwrap()
                );
            } else {
                eprintln!("error: {err}");
            }
            2
        }
    }
}

fn emit(cli: &Cli, report: &Report, human: &str) {
    if cli.json {
        println!("{}", report.to_json());
    } else {
        println!("{human}");
    }
}

fn names(rel: &RelationSystem) -> (Vec<String>, Vec<String>) {
    (rel.alphabet_names(), rel.central_params().to_vec())
}

fn parse_in(rel: &RelationSystem, src: &str) -> Result<CPoly, AlgebraError> {
    let base: Vec<String> = rel.base_names().to_vec();
    parse_cpoly(src, &base, rel.central_params())
}

fn execute(cli: &Cli) -> Result<i32, AlgebraError> {
    match &cli.cmd {
        Cmd::Validate { path, algebra } => {
            let rel = match path {
                Some(p) => RelationSystem::from_path(p)?,
                None => algebra.load()?,
            };
            let vr = rel.validate();
            let mut report = Report::new("validate");
            report.input("algebra", rel.name()).input("case", rel.case().name());
            let mut lines = vec![format!(
                "algebra '{}' ({} case, {} generators)",
                rel.name(),
                rel.case().name(),
                rel.base_len()
            )];
            for v in &vr.jacobi_violations {
                let target = match v.target {
                    None => "1".to_string(),
                    Some(t) => rel.alphabet_names()[t].clone(),
                };
                let line = format!(
                    "jacobi violation at ({}, {}, {}) target {}: residual {}",
                    v.i,
                    v.j,
                    v.h,
                    target,
                    v.residual.render(rel.central_params())
                );
                report.result(json!({
                    "i": v.i, "j": v.j, "h": v.h,
                    "target": target,
                    "residual": v.residual.render(rel.central_params()),
                }));
                lines.push(line);
            }
            report.verdict =
                if vr.is_valid() { "valid".into() } else { "invalid: Jacobi fails".into() };
            lines.push(report.verdict.clone());
            emit(cli, &report, &lines.join("\n"));
            Ok(if vr.is_valid() { 0 } else { 1 })
        }

        Cmd::Symmetrize { algebra, expr, normal_form } => {
            let rel = algebra.load()?;
            let p = parse_in(&rel, expr)?;
            let mut s = symmetrize(&p)?;
            if *normal_form {
                s = rel.normal_form(&s)?;
            }
            let (gens, params) = names(&rel);
            let rendered = s.render(&gens, &params);
            let mut report = Report::new("symmetrize");
            report.input("algebra", rel.name()).input("expr", expr);
            report.result(json!({"symmetrized": rendered, "normal_form": *normal_form}));
            report.verdict = "ok".into();
            emit(cli, &report, &rendered);
            Ok(0)
        }

        Cmd::Bracket { algebra, h, f } => {
            let rel = algebra.load()?;
            let hp = parse_in(&rel, h)?;
            let fp = parse_in(&rel, f)?;
            let g = leibniz_bracket(&hp, &fp, &rel)?;
            let (gens, params) = names(&rel);
            let rendered = g.render(&gens, &params);
            let mut report = Report::new("bracket");
            report.input("algebra", rel.name()).input("h", h).input("f", f);
            report.result(json!({"bracket": rendered}));
            report.verdict = "ok".into();
            emit(cli, &report, &rendered);
            Ok(0)
        }

        Cmd::Correspond { algebra, h, f } => {
            let rel = algebra.load()?;
            let hp = parse_in(&rel, h)?;
            let fp = parse_in(&rel, f)?;
            let res = bracket_correspondence(&hp, &fp, &rel)?;
            let (gens, params) = names(&rel);
            let disc = res.discrepancy.render(&gens, &params);
            let mut report = Report::new("correspond");
            report.input("algebra", rel.name()).input("h", h).input("f", f);
            report.result(json!({"equal": res.equal, "discrepancy": disc}));
            report.verdict = if res.equal {
                "equal: the correspondence holds for this pair".into()
            } else {
                format!("not equal: discrepancy = {disc}")
            };
            emit(cli, &report, &report.verdict.clone());
            Ok(if res.equal { 0 } else { 1 })
        }

        Cmd::QuantizeCheck { algebra, set, assume_poly_independent } => {
            let set_file = SetFile::load(set)?;
            let rel = match (&algebra.algebra, &algebra.preset) {
                (None, None) => set_file.load_algebra(set)?,
                _ => algebra.load()?,
            };
            let centrals = set_file.parse(&rel, &set_file.centrals)?;
            let others = set_file.parse(&rel, &set_file.others)?;
            let qr = quantize_check(&rel, &centrals, &others)?;
            let (gens, params) = names(&rel);
            let mut report = Report::new("quantize-check");
            report
                .input("algebra", rel.name())
                .input("set", set.display())
                .input("assume_poly_independent", assume_poly_independent);
            let mut lines = Vec::new();
            for p in &qr.pairs {
                report.result(json!({
                    "i": p.i, "j": p.j,
                    "leibniz_zero": p.leibniz_zero,
                    "commutator_zero": p.commutator_zero,
                    "discrepancy": p.discrepancy.render(&gens, &params),
                }));
                lines.push(format!(
                    "pair ({}, {}): leibniz {} commutator {}",
                    p.i,
                    p.j,
                    if p.leibniz_zero { "zero" } else { "NONZERO" },
                    if p.commutator_zero { "zero" } else { "NONZERO" },
                ));
            }
            report.result(json!({
                "cond_a": qr.cond_a,
                "cond_b": qr.cond_b,
                "cond_b_literal": qr.cond_b_literal,
                "theorem_applies": qr.theorem_applies,
                "defects": qr.defects,
            }));
            report.verdict = qr.verdict.clone();
            if *assume_poly_independent {
                report.verdict.push_str(
                    " Generators asserted polynomially independent: vanishing classical \
                     brackets imply vanishing Leibniz representations.",
                );
            }
            lines.push(report.verdict.clone());
            emit(cli, &report, &lines.join("\n"));
            Ok(if qr.all_leibniz_zero && qr.all_commutators_zero { 0 } else { 1 })
        }

        Cmd::Casimir { algebra, expr } => {
            let rel = algebra.load()?;
            let c = parse_in(&rel, expr)?;
            let res = casimir_quantization(&c, &rel, cli.seed)?;
            let mut report = Report::new("casimir");
            report.input("algebra", rel.name()).input("expr", expr);
            report.seed = Some(cli.seed);
            report.result(json!({
                "is_casimir": res.is_casimir,
                "commutes_with_all": res.commutes_with_all,
                "witnesses": res.witnesses,
            }));
            report.verdict = format!(
                "is_casimir={} commutes_with_all={}",
                res.is_casimir, res.commutes_with_all
            );
            let mut lines = vec![report.verdict.clone()];
            lines.extend(res.witnesses.iter().cloned());
            emit(cli, &report, &lines.join("\n"));
            Ok(if res.is_casimir && res.commutes_with_all { 0 } else { 1 })
        }

        Cmd::Verify { suite } => run_verify(cli, suite),

        Cmd::Counterexample { case } => {
            if case != "constant" {
                return Err(AlgebraError::InvalidInput(format!(
                    "unknown counterexample case '{case}'"
                )));
            }
            let rel = RelationSystem::canonical(1)?;
            let h = parse_in(&rel, "p^3")?;
            let f = parse_in(&rel, "x^3")?;
            let res = bracket_correspondence(&h, &f, &rel)?;
            let (gens, params) = names(&rel);
            let disc = res.discrepancy.render(&gens, &params);
            let reproduced = !res.equal && disc == "-3/2";
            let mut report = Report::new("counterexample");
            report.input("case", case).input("h", "p^3").input("f", "x^3");
            report.result(json!({"equal": res.equal, "discrepancy": disc}));
            report.verdict = format!(
                "H=p^3, F=x^3 in canonical 1D: [H^sym, F^sym] != {{H,F}}_N^sym; \
                 discrepancy = {disc}"
            );
            emit(cli, &report, &report.verdict.clone());
            Ok(if reproduced { 0 } else { 1 })
        }
    }
}

fn run_verify(cli: &Cli, suite: &VerifyCmd) -> Result<i32, AlgebraError> {
    match suite {
        VerifyCmd::Pc1 { k } | VerifyCmd::Lemma1 { k } | VerifyCmd::Pc2 { k } => {
            let (name, res) = match suite {
                VerifyCmd::Pc1 { .. } => ("pc1", verify_pc1(*k)?),
                VerifyCmd::Lemma1 { .. } => ("lemma1", verify_lemma1(*k)?),
                VerifyCmd::Pc2 { .. } => ("pc2", verify_pc2(*k)?),
                _ => unreachable!(),
            };
            let mut report = Report::new(&format!("verify {name}"));
            report.input("k", k);
            report.result(json!({"holds": res.holds, "residual_terms": res.residual.num_terms()}));
            report.verdict = if res.holds {
                format!("{name} holds exactly at k={k}")
            } else {
                format!("{name} FAILS at k={k}: {} residual terms", res.residual.num_terms())
            };
            emit(cli, &report, &report.verdict.clone());
            Ok(if res.holds { 0 } else { 1 })
        }

        VerifyCmd::Wick { l, m, trials } => {
            let mut rng = sample::rng(cli.seed);
            let mut failures = 0usize;
            for _ in 0..*trials {
                let d = random_matrix(&mut rng, *l, *m);
                let rel = wick_system(*l, *m, &d)?;
                let ctx = wick_ctx(*l, *m);
                let g: Vec<NCPoly> = (0..l + m)
                    .map(|i| NCPoly::generator(ctx, i))
                    .collect::<Result<_, _>>()?;
                let syml = sym_k(&g[..*l])?;
                let symm = sym_k(&g[*l..])?;
                let prod_ok = rel.normal_form(&syml.mul(&symm)?)?
                    == rel.normal_form(&wick_product(*l, *m, &d)?)?;
                let comm_ok = rel.normal_form(&commutator(&syml, &symm)?)?
                    == rel.normal_form(&wick_commutator(*l, *m, &d)?)?;
                if !(prod_ok && comm_ok) {
                    failures += 1;
                }
            }
            let mut report = Report::new("verify wick");
            report.input("l", l).input("m", m).input("trials", trials);
            report.seed = Some(cli.seed);
            report.result(json!({"trials": trials, "failures": failures}));
            report.verdict = if failures == 0 {
                format!("wick formulas match the rewriting oracle on {trials} trials")
            } else {
                format!("wick FAILS on {failures}/{trials} trials")
            };
            emit(cli, &report, &report.verdict.clone());
            Ok(if failures == 0 { 0 } else { 1 })
        }

        VerifyCmd::Moyal { n, deg, trials } => {
            if *n == 0 {
                return Err(AlgebraError::BadRange(0, "n must be at least 1"));
            }
            let rel = RelationSystem::canonical(*n)?;
            let mut rng = sample::rng(cli.seed);
            let mut failures = 0usize;
            for _ in 0..*trials {
                let h = sample::random_cpoly(&mut rng, 2 * n, 0, *deg, 4);
                let f = sample::random_cpoly(&mut rng, 2 * n, 0, *deg, 4);
                let lhs =
                    rel.normal_form(&commutator(&symmetrize(&h)?, &symmetrize(&f)?)?)?;
                let g = symq_core::identities::moyal_bracket(&h, &f, *n)?;
                let rhs = rel.normal_form(&symmetrize(&g)?)?;
                if lhs != rhs {
                    failures += 1;
                }
            }
            let mut report = Report::new("verify moyal");
            report.input("n", n).input("deg", deg).input("trials", trials);
            report.seed = Some(cli.seed);
            report.result(json!({"trials": trials, "failures": failures}));
            report.verdict = if failures == 0 {
                format!("moyal bracket matches the operator commutator on {trials} trials")
            } else {
                format!("moyal FAILS on {failures}/{trials} trials")
            };
            emit(cli, &report, &report.verdict.clone());
            Ok(if failures == 0 { 0 } else { 1 })
        }

        VerifyCmd::Bernoulli { hmax } => {
            let table = bernoulli_coeffs(*hmax)?;
            let mut report = Report::new("verify bernoulli");
            report.input("hmax", hmax);
            let mut lines = Vec::new();
            for h in 1..=*hmax {
                let v = scalar::format(table.get(h));
                report.result(json!({"h": h, "c": v}));
                lines.push(format!("c_{h} = {v}"));
            }
            report.verdict = format!("computed c_1..c_{hmax} exactly");
            lines.push(report.verdict.clone());
            emit(cli, &report, &lines.join("\n"));
            Ok(0)
        }
    }
}

/// Pairing matrix with small rational entries; about a quarter are zero so
/// the gated sums are exercised.
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

#[derive(Deserialize)]
struct SetFile {
    #[serde(default)]
    algebra: Option<String>,
    #[serde(default)]
    centrals: Vec<String>,
    #[serde(default)]
    others: Vec<String>,
}

impl SetFile {
    fn load(path: &Path) -> Result<Self, AlgebraError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| AlgebraError::InvalidInput(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&src)
            .map_err(|e| AlgebraError::InvalidInput(format!("set file: {e}")))
    }

    fn load_algebra(&self, set_path: &Path) -> Result<RelationSystem, AlgebraError> {
        let name = self.algebra.as_ref().ok_or_else(|| {
            AlgebraError::InvalidInput(
                "no algebra: give --algebra/--preset or an \"algebra\" entry in the set file"
                    .into(),
            )
        })?;
        if let Ok(rel) = load_preset(name) {
            return Ok(rel);
        }
        let mut path = PathBuf::from(name);
        if path.is_relative() {
            if let Some(dir) = set_path.parent() {
                path = dir.join(path);
            }
        }
        RelationSystem::from_path(&path)
    }

    fn parse(&self, rel: &RelationSystem, exprs: &[String]) -> Result<Vec<CPoly>, AlgebraError> {
        exprs.iter().map(|e| parse_in(rel, e)).collect()
    }
}
