//! Command-line surface: witt, lambda, f1, carlitz, moore, verify-all.
//!
//! Computational subcommands print their results directly; verification
//! subcommands print a structured report (human table plus machine block)
//! and exit 0 only when every check passed. Parse errors exit 2.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use wittlambda::error::Error;
use wittlambda::f1::{f1_points_affine, fan::complemented_closed_subspaces, fan::complemented_f1_points};
use wittlambda::fq::{FqElem, FqField};
use wittlambda::lambda::sub::{kernel_frobenius_congruence, sublambda_check};
use wittlambda::parse::parse_poly;
use wittlambda::poly::Vars;
use wittlambda::report::Report;
use wittlambda::scalar::{BaseRing, Scalar};
use wittlambda::textio;
use wittlambda::verify::{verify_all, VerifyOptions};
use wittlambda::witt::{TruncationSet, WittVector};
use wittlambda::{arith, carlitz};

#[derive(Parser)]
#[command(
    name = "wittlambda",
    about = "Exact lambda-ring, Witt-vector, F_1 and Carlitz computations",
    version
)]
struct Cli {
    /// Seed for all randomized verification sweeps.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Enumeration budget (also via WITTLAMBDA_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Witt vector arithmetic over a truncation set.
    Witt(WittArgs),
    /// Verify a lambda-structure file.
    Lambda(LambdaArgs),
    /// F_1-points and toric fan combinatorics.
    F1(F1Args),
    /// Carlitz module operations.
    Carlitz(CarlitzArgs),
    /// Moore matrix determinant and dependence test.
    Moore(MooreArgs),
    /// Run the full verification suite.
    VerifyAll,
}

#[derive(Args)]
struct WittArgs {
    #[command(subcommand)]
    op: WittOp,
}

#[derive(Args, Clone)]
struct WittCommon {
    /// Truncation set, e.g. 1,2,3,6 (must be divisor-closed).
    #[arg(long)]
    trunc: String,
    /// Coefficient ring: Z, Z/m, GF(q), or a structure file path.
    #[arg(long, default_value = "Z")]
    ring: String,
}

#[derive(Subcommand)]
enum WittOp {
    /// Sum of two Witt vectors.
    Add {
        #[command(flatten)]
        common: WittCommon,
        a: String,
        b: String,
    },
    /// Product of two Witt vectors.
    Mul {
        #[command(flatten)]
        common: WittCommon,
        a: String,
        b: String,
    },
    /// Ghost components of a Witt vector.
    Ghost {
        #[command(flatten)]
        common: WittCommon,
        a: String,
    },
    /// Teichmueller lift of a ring element.
    Teich {
        #[command(flatten)]
        common: WittCommon,
        value: String,
    },
    /// Frobenius F_n; lands in the truncation set S/n.
    Frob {
        #[command(flatten)]
        common: WittCommon,
        #[arg(long, short = 'n')]
        index: u64,
        a: String,
    },
    /// Verschiebung V_n into S; the input lives on S/n.
    Versch {
        #[command(flatten)]
        common: WittCommon,
        #[arg(long, short = 'n')]
        index: u64,
        a: String,
    },
}

#[derive(Args)]
struct LambdaArgs {
    #[command(subcommand)]
    op: LambdaOp,
}

#[derive(Subcommand)]
enum LambdaOp {
    /// Verify commutation, Frobenius lifts, and any sub-ring conditions.
    Verify {
        file: PathBuf,
        /// Primes to verify, e.g. 2,3,5,7.
        #[arg(long, default_value = "2,3,5,7,11,13")]
        primes: String,
        /// Check the Frobenius-lift congruence psi_p = (.)^p mod p.
        #[arg(long)]
        frobenius: bool,
        /// Check pairwise commutation of the psi_p.
        #[arg(long)]
        commute: bool,
        /// Degree bound for condition-kernel checks.
        #[arg(long, default_value_t = 6)]
        degree: i32,
    },
}

#[derive(Args)]
struct F1Args {
    #[command(subcommand)]
    op: F1Op,
}

#[derive(Subcommand)]
enum F1Op {
    /// Enumerate F_1-valued points of an affine structure.
    Points {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        bound: u64,
        #[arg(long, default_value = "2,3")]
        primes: String,
    },
    /// Fan combinatorics: Hodge polynomial, complemented subspaces, counts.
    Toric {
        file: PathBuf,
        /// Print the Hodge polynomial P(t).
        #[arg(long)]
        hodge: bool,
        /// List complemented F_1-points and count closed subspaces.
        #[arg(long)]
        complemented: bool,
        /// Count F_q-points for these q, e.g. 2,3,4,5.
        #[arg(long)]
        count_fq: Option<String>,
        /// Cross-check orbit formula against brute force and P(q).
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Args)]
struct CarlitzArgs {
    #[command(subcommand)]
    op: CarlitzOp,
}

#[derive(Subcommand)]
enum CarlitzOp {
    /// Verify rho(m) is a Frobenius lift for every monic irreducible m of
    /// degree <= the bound.
    Verify {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        deg_bound: u32,
    },
    /// Print rho(f) as a twisted polynomial.
    Rho {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        poly: String,
    },
}

#[derive(Args)]
struct MooreArgs {
    /// Base field order q.
    #[arg(long)]
    q: u64,
    /// Extension degree k: entries live in F_{q^k}.
    #[arg(long, default_value_t = 1)]
    ext: u32,
    /// Comma-separated entries, polynomials in w, e.g. "1,w,w+1".
    #[arg(long)]
    vector: String,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let echo = argv[1..].join(" ");
    let cli = Cli::parse();
    let budget = cli
        .budget
        .or_else(|| {
            std::env::var("WITTLAMBDA_BUDGET")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(10_000_000);
    match run(cli, &echo, budget) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli, echo: &str, budget: u64) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Witt(args) => run_witt(args),
        Command::Lambda(args) => run_lambda(args, echo),
        Command::F1(args) => run_f1(args, echo, budget),
        Command::Carlitz(args) => run_carlitz(args, echo),
        Command::Moore(args) => run_moore(args),
        Command::VerifyAll => {
            let opts = VerifyOptions {
                seed: cli.seed,
                enum_budget: budget,
                upset_budget: budget.min(1_000_000),
            };
            let report = verify_all(&format!("wittlambda {echo}"), &opts);
            print!("{}", report.render());
            Ok(ExitCode::from(report.exit_code() as u8))
        }
    }
}

fn parse_trunc(s: &str) -> Result<TruncationSet, Error> {
    let elems = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::invalid(format!("bad truncation element {t}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    TruncationSet::new(elems)
}

fn parse_ring(s: &str) -> Result<BaseRing, Error> {
    if let Ok(r) = BaseRing::parse(s) {
        return Ok(r);
    }
    let text = std::fs::read_to_string(s)
        .map_err(|e| Error::invalid(format!("cannot read ring file {s}: {e}")))?;
    let f = textio::parse_structure("ring", &text)?;
    Ok(f.lambda.ring().base().clone())
}

fn parse_scalar(ring: &BaseRing, token: &str) -> Result<Scalar, Error> {
    let token = token.trim();
    if let Ok(n) = token.parse::<i64>() {
        return Ok(ring.from_i64(n));
    }
    match ring {
        BaseRing::Gf(field) => parse_fq_elem(field, token).map(Scalar::Fq),
        _ => Err(Error::invalid(format!("bad element {token} of {ring}"))),
    }
}

fn parse_fq_elem(field: &Arc<FqField>, token: &str) -> Result<FqElem, Error> {
    let vars = Vars::new(&["w"]);
    let p = parse_poly(&vars, token)?;
    if field.degree() == 1 && p.degree_in(0) > 0 {
        return Err(Error::invalid("w is only meaningful in a proper extension"));
    }
    let mut acc = field.zero();
    let w = field.generator();
    for (m, c) in p.terms() {
        let e = m.0[0];
        if e < 0 {
            return Err(Error::invalid("negative powers of w are not supported"));
        }
        let coeff = BaseRing::Gf(field.clone()).from_bigint(c);
        let Scalar::Fq(coeff) = coeff else { unreachable!() };
        acc = acc.add(&coeff.mul(&w.pow(e as u64)));
    }
    Ok(acc)
}

fn parse_witt(common: &WittCommon, coords: &str) -> Result<(TruncationSet, BaseRing, WittVector), Error> {
    let trunc = parse_trunc(&common.trunc)?;
    let ring = parse_ring(&common.ring)?;
    let values = coords
        .split(',')
        .map(|t| parse_scalar(&ring, t))
        .collect::<Result<Vec<_>, _>>()?;
    let w = WittVector::new(trunc.clone(), ring.clone(), values)?;
    Ok((trunc, ring, w))
}

fn print_coords(trunc: &TruncationSet, values: &[Scalar]) {
    for (n, v) in trunc.elems().iter().zip(values) {
        println!("{n}={v}");
    }
}

fn run_witt(args: WittArgs) -> Result<ExitCode, Error> {
    match args.op {
        WittOp::Add { common, a, b } => {
            let (trunc, _, u) = parse_witt(&common, &a)?;
            let (_, _, v) = parse_witt(&common, &b)?;
            let s = u.add(&v)?;
            print_coords(&trunc, s.coords());
        }
        WittOp::Mul { common, a, b } => {
            let (trunc, _, u) = parse_witt(&common, &a)?;
            let (_, _, v) = parse_witt(&common, &b)?;
            let s = u.mul(&v)?;
            print_coords(&trunc, s.coords());
        }
        WittOp::Ghost { common, a } => {
            let (trunc, _, u) = parse_witt(&common, &a)?;
            let g = u.ghost()?;
            print_coords(&trunc, &g.values);
        }
        WittOp::Teich { common, value } => {
            let trunc = parse_trunc(&common.trunc)?;
            let ring = parse_ring(&common.ring)?;
            let a = parse_scalar(&ring, &value)?;
            let w = WittVector::teichmuller(trunc.clone(), a);
            print_coords(&trunc, w.coords());
        }
        WittOp::Frob { common, index, a } => {
            let (_, _, u) = parse_witt(&common, &a)?;
            let f = u.frobenius(index)?;
            print_coords(f.trunc(), f.coords());
        }
        WittOp::Versch { common, index, a } => {
            // --trunc gives the target set S; the input lives on S/n
            let target = parse_trunc(&common.trunc)?;
            let ring = parse_ring(&common.ring)?;
            let source = target.quotient(index);
            let values = a
                .split(',')
                .map(|t| parse_scalar(&ring, t))
                .collect::<Result<Vec<_>, _>>()?;
            let u = WittVector::new(source, ring, values)?;
            let v = u.verschiebung(index, &target)?;
            print_coords(&target, v.coords());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_primes(s: &str) -> Result<Vec<u64>, Error> {
    let out = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::invalid(format!("bad prime {t}")))
        })
        .collect::<Result<Vec<u64>, _>>()?;
    for &p in &out {
        if !arith::is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
    }
    Ok(out)
}

fn run_lambda(args: LambdaArgs, echo: &str) -> Result<ExitCode, Error> {
    let LambdaOp::Verify { file, primes, frobenius, commute, degree } = args.op;
    let text = std::fs::read_to_string(&file)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", file.display())))?;
    let label = file
        .file_stem()
        .map(|s| s.to_string_lossy().to_string())
        .unwrap_or_else(|| "structure".into());
    let parsed = textio::parse_structure(&label, &text)?;
    let l = &parsed.lambda;
    let primes = parse_primes(&primes)?;
    // with neither flag given, run everything
    let all = !frobenius && !commute;

    let mut report = Report::new(format!("wittlambda {echo}"));
    if commute || all {
        for (i, &p) in primes.iter().enumerate() {
            for &q in &primes[i + 1..] {
                match l.commutation_witness(p, q) {
                    Ok(None) => report.pass(format!("commute-{p}-{q}"), ""),
                    Ok(Some(w)) => report.fail(format!("commute-{p}-{q}"), w),
                    Err(e) => report.fail(format!("commute-{p}-{q}"), e.to_string()),
                }
            }
        }
    }
    if frobenius || all {
        for &p in &primes {
            match l.verify_frobenius_lift(p) {
                Ok(rep) if rep.pass() => report.pass(format!("frobenius-{p}"), ""),
                Ok(rep) => report.fail(
                    format!("frobenius-{p}"),
                    rep.first_witness().unwrap_or("failed").to_string(),
                ),
                Err(e) => report.fail(format!("frobenius-{p}"), e.to_string()),
            }
        }
    }
    if !parsed.conditions.is_empty() {
        match sublambda_check(l, &parsed.conditions, degree, &primes) {
            Ok(rep) if rep.pass() => report.pass(
                "condition-kernel-closure",
                format!("kernel dimension {}", rep.kernel_dim),
            ),
            Ok(rep) => {
                let w = &rep.failures[0];
                report.fail(
                    "condition-kernel-closure",
                    format!("psi_{} breaks {} on {}", w.prime, w.condition, w.element),
                );
            }
            Err(e) => report.fail("condition-kernel-closure", e.to_string()),
        }
        for &p in &primes {
            match kernel_frobenius_congruence(l, &parsed.conditions, degree, p) {
                Ok(None) => report.pass(format!("condition-frobenius-{p}"), ""),
                Ok(Some(w)) => report.fail(format!("condition-frobenius-{p}"), w),
                Err(e) => report.fail(format!("condition-frobenius-{p}"), e.to_string()),
            }
        }
    }
    print!("{}", report.render());
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn run_f1(args: F1Args, echo: &str, budget: u64) -> Result<ExitCode, Error> {
    match args.op {
        F1Op::Points { file, bound, primes } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", file.display())))?;
            let parsed = textio::parse_structure("structure", &text)?;
            let primes = parse_primes(&primes)?;
            let found = f1_points_affine(&parsed.lambda, bound, &primes, budget)?;
            for p in &found.points {
                println!("{p}");
            }
            println!(
                "count={} complete={}",
                found.points.len(),
                if found.complete { "yes" } else { "no" }
            );
            Ok(ExitCode::SUCCESS)
        }
        F1Op::Toric { file, hodge, complemented, count_fq, verify } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", file.display())))?;
            let fan = textio::parse_fan(&text)?;
            if !fan.is_smooth() {
                eprintln!(
                    "warning: fan is not smooth; counts remain valid but P(t) is not a Hodge polynomial"
                );
            }
            let mut report = Report::new(format!("wittlambda {echo}"));
            let p = fan.hodge_poly();
            if hodge {
                println!("P(t) = {p}");
            }
            if complemented {
                let fixed = complemented_f1_points(&fan);
                println!("complemented-points={}", fixed.len());
                for ci in &fixed {
                    let rays: Vec<String> =
                        fan.cones()[*ci].iter().map(|r| r.to_string()).collect();
                    println!("fixed-point-cone rays {}", rays.join(" "));
                }
                let ups = complemented_closed_subspaces(&fan, budget.min(1_000_000))?;
                println!("complemented-closed-subspaces={}", ups.len());
            }
            if let Some(qs) = count_fq {
                for q in qs.split(',') {
                    let q: u64 = q
                        .trim()
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad q {q}")))?;
                    let orbit = fan.count_fq(q)?;
                    println!("count-F{q}={orbit}");
                    if verify {
                        let brute = fan.count_fq_bruteforce(q, budget)?;
                        let pq = p.eval(&BaseRing::Int, &[BaseRing::Int.from_i64(q as i64)])?;
                        report.check(
                            format!("count-F{q}"),
                            orbit == brute && pq.to_string() == orbit.to_string(),
                            format!("orbit={orbit} brute={brute} P({q})={pq}"),
                        );
                    }
                }
            }
            if verify {
                let fixed = complemented_f1_points(&fan).len();
                let p1 = p.eval(&BaseRing::Int, &[BaseRing::Int.one()])?;
                report.check(
                    "hodge-at-1",
                    p1.to_string() == fixed.to_string(),
                    format!("P(1)={p1} complemented={fixed}"),
                );
                print!("{}", report.render());
                return Ok(ExitCode::from(report.exit_code() as u8));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_carlitz(args: CarlitzArgs, echo: &str) -> Result<ExitCode, Error> {
    match args.op {
        CarlitzOp::Verify { q, deg_bound } => {
            let (p, e) = arith::prime_power(q)
                .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
            let field = FqField::get(p, e)?;
            let mut report = Report::new(format!("wittlambda {echo}"));
            for m in carlitz::monic_irreducibles(&field, deg_bound) {
                let check = carlitz::verify_carlitz_frobenius_lift(&m)?;
                report.check(
                    format!("lift-{}", check.modulus),
                    check.pass,
                    check
                        .witness
                        .unwrap_or_else(|| format!("conormal coefficient {}", check.conormal_coefficient)),
                );
            }
            print!("{}", report.render());
            Ok(ExitCode::from(report.exit_code() as u8))
        }
        CarlitzOp::Rho { q, poly } => {
            let (p, e) = arith::prime_power(q)
                .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
            let field = FqField::get(p, e)?;
            let vars = Vars::new(&["t"]);
            let parsed = parse_poly(&vars, &poly)?;
            let coeffs = parsed
                .univariate_coeffs(0)
                .ok_or_else(|| Error::invalid("polynomial must be univariate in t"))?;
            let f = carlitz::TPoly::from_coeffs(
                &field,
                coeffs
                    .iter()
                    .map(|c| {
                        let Scalar::Fq(x) = BaseRing::Gf(field.clone()).from_bigint(c) else {
                            unreachable!()
                        };
                        x
                    })
                    .collect(),
            );
            println!("rho({f}) = {}", carlitz::carlitz_rho(&f));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_moore(args: MooreArgs) -> Result<ExitCode, Error> {
    let (p, e) = arith::prime_power(args.q)
        .ok_or_else(|| Error::invalid(format!("{} is not a prime power", args.q)))?;
    let field = FqField::get(p, e * args.ext)?;
    let entries = args
        .vector
        .split(',')
        .map(|t| parse_fq_elem(&field, t))
        .collect::<Result<Vec<_>, _>>()?;
    let det = carlitz::moore_det(&entries, args.q)?;
    let dep = carlitz::brute_force_dependent(&entries, args.q)?;
    println!("det={det}");
    println!(
        "independent-over-F{}={}",
        args.q,
        if dep { "no" } else { "yes" }
    );
    Ok(ExitCode::SUCCESS)
}
