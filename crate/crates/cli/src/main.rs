use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use msrd::codes::FqLinearCode;
use msrd::combiners::{glue_bases, stack_product, GlueSpec, StackSpec};
use msrd::compare::{compare, render_csv, render_table, DEFAULT_BUDGET};
use msrd::extenders::{
    build_lattice_t2, build_lattice_t3, check_one_weight, extend_lattice, extend_systematic, MatrixPartition,
};
use msrd::format::{parse_profile, CodeBody, CodeFile};
use msrd::msrd_gen::{build_lrs, build_msrd, BetaVector};
use msrd::{expand_distance, linalg, singleton_bound, BlockProfile, Error, FieldTower, FqmLinearCode, LengthPartition};

#[derive(Parser)]
#[command(name = "msrd", version, about = "Build and verify sum-rank metric codes")]
struct Cli {
    /// Largest number of codewords an oracle may enumerate.
    #[arg(long, global = true, default_value_t = msrd::DEFAULT_GUARD)]
    guard: u128,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Singleton bound of a block profile for a given distance.
    Bound {
        /// Blocks as `MxN`, comma separated.
        #[arg(long)]
        profile: String,
        #[arg(long)]
        d: usize,
    },
    /// Build a code and write it in the text format.
    Build {
        #[command(subcommand)]
        which: Build,
    },
    /// Run an oracle on a code file.
    Check { what: CheckKind, file: PathBuf },
    /// Build and verify a fixed grid of small instances.
    Compare {
        /// Total number of codewords the sweep may enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Keep only rows over GF(q).
        #[arg(long)]
        q: Option<u32>,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Add oracle runtimes (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
        /// Random glue inputs to check for `d >= d1 + d2`, drawn from `--seed`.
        #[arg(long, default_value_t = 0)]
        glue_trials: usize,
    },
    /// Rewrite a code file with an explicit GF(q) basis.
    Export {
        file: PathBuf,
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Msrd,
    Weights,
    OneWeight,
    DualMsrd,
}

#[derive(clap::Args)]
struct FieldArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: usize,
}

#[derive(clap::Args)]
struct Out {
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Build {
    /// Linearized Reed-Solomon code.
    Lrs {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Generator matrix with `mu` subspaces per norm class.
    MsrdGeneral {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Stack codes on square blocks into row bands.
    Stack {
        /// Input files, comma separated.
        #[arg(long)]
        inputs: String,
        #[command(flatten)]
        out: Out,
    },
    /// Glue two codes by pairing their bases.
    Glue {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Lattice extension of a code with two extra rows.
    #[command(name = "cons3-t2")]
    Cons3T2 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        mu: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        /// Extension blocks, e.g. `(2,1);(2,1)`.
        #[arg(long)]
        ext: String,
        /// Cumulative group ends, e.g. `1,2`.
        #[arg(long)]
        breakpoints: String,
        #[command(flatten)]
        out: Out,
    },
    /// Lattice extension of a code with three extra rows (q even, m odd).
    #[command(name = "cons3-t3")]
    Cons3T3 {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 1)]
        mu: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        ext: String,
        #[arg(long)]
        breakpoints: String,
        #[command(flatten)]
        out: Out,
    },
    /// Extension through a systematic generator matrix and a matrix partition.
    Cons4 {
        #[command(flatten)]
        field: FieldArgs,
        /// Block length of the linearized Reed-Solomon input code.
        #[arg(long)]
        r: usize,
        /// Dimension of the input code over GF(q^m).
        #[arg(long)]
        k: usize,
        /// Number of systematic columns; defaults to `r`.
        #[arg(long)]
        t: Option<usize>,
        /// Pieces `ROWSxCOLS` separated by `;`, 1-based, e.g. `1-2x1;1x2;2x2`.
        #[arg(long)]
        pieces: String,
        /// Use a generator-matrix file as input instead of building one.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
}

enum Fail {
    Usage(String),
    Guard(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Fail::Guard(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail::Usage(msg.into())
}

fn tower(f: &FieldArgs) -> CliResult<Arc<FieldTower>> {
    Ok(Arc::new(FieldTower::for_q(f.q, f.m)?))
}

fn read_code(path: &Path) -> CliResult<CodeFile> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    CodeFile::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_usizes(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| usage(format!("bad number {x:?}"))))
        .collect()
}

fn parse_ext(s: &str) -> CliResult<Vec<(usize, usize)>> {
    parse_profile(&s.replace(';', " ")).map_err(usage)
}

/// `MxN,MxN,...`
fn parse_blocks(s: &str) -> CliResult<Vec<(usize, usize)>> {
    s.split(',')
        .map(|b| {
            let (m, n) = b.split_once('x').ok_or_else(|| usage(format!("bad block {b:?}")))?;
            let m = m.trim().parse().map_err(|_| usage(format!("bad block {b:?}")))?;
            let n = n.trim().parse().map_err(|_| usage(format!("bad block {b:?}")))?;
            Ok((m, n))
        })
        .collect()
}

/// `1-2,4` to 0-based `[0, 1, 3]`.
fn parse_index_set(s: &str) -> CliResult<Vec<usize>> {
    let bad = || usage(format!("bad index set {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',') {
        let (lo, hi) = match part.split_once('-') {
            Some((a, b)) => (a.trim().parse::<usize>(), b.trim().parse::<usize>()),
            None => (part.trim().parse(), part.trim().parse()),
        };
        let (lo, hi) = (lo.map_err(|_| bad())?, hi.map_err(|_| bad())?);
        if lo == 0 || hi < lo {
            return Err(bad());
        }
        out.extend(lo - 1..hi);
    }
    Ok(out)
}

fn parse_pieces(s: &str) -> CliResult<Vec<(Vec<usize>, Vec<usize>)>> {
    s.split(';')
        .map(|p| {
            let (x, y) = p.split_once('x').ok_or_else(|| usage(format!("bad piece {p:?}")))?;
            Ok((parse_index_set(x)?, parse_index_set(y)?))
        })
        .collect()
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn emit(file: CodeFile, out: &Out) -> CliResult<u8> {
    let code = file.fq_linear();
    let summary = format!("dim={} blocks={}", code.dim(), code.profile());
    let text = file.serialize();
    match &out.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            eprintln!("{summary}");
            print!("{text}");
        }
    }
    Ok(0)
}

fn lattice_meta(file: CodeFile, name: &str, breakpoints: &[usize], beta: &BetaVector) -> CodeFile {
    file.with_meta("construction", name)
        .with_meta("breakpoints", join(breakpoints))
        .with_meta("beta", join(beta.beta.iter().map(|b| b.code())))
        .with_meta("mu", beta.mu)
        .with_meta("r", beta.r)
        .with_meta("k", beta.k)
}

fn build(which: Build) -> CliResult<u8> {
    match which {
        Build::Lrs { field, r, k, out } => {
            let code = build_lrs(&tower(&field)?, r, k)?;
            emit(CodeFile::generator(code).with_meta("construction", "lrs"), &out)
        }
        Build::MsrdGeneral { field, mu, r, k, out } => {
            let code = build_msrd(&tower(&field)?, mu, r, k)?;
            emit(CodeFile::generator(code).with_meta("construction", "msrd-general"), &out)
        }
        Build::Stack { inputs, out } => {
            let codes = inputs
                .split(',')
                .map(|p| read_code(Path::new(p.trim())).map(|f| f.fq_linear()))
                .collect::<CliResult<Vec<_>>>()?;
            let code = stack_product(&StackSpec::new(codes)?);
            emit(CodeFile::basis(code).with_meta("construction", "stack"), &out)
        }
        Build::Glue { c1, c2, out } => {
            let spec = GlueSpec::new(read_code(&c1)?.fq_linear(), read_code(&c2)?.fq_linear())?;
            emit(CodeFile::basis(glue_bases(&spec)).with_meta("construction", "glue"), &out)
        }
        Build::Cons3T2 { field, mu, r, k, ext, breakpoints, out } => {
            let rows = build_lattice_t2(&tower(&field)?, mu, r, k)?;
            let bp = parse_usizes(&breakpoints)?;
            let code = extend_lattice(&rows.spec(parse_ext(&ext)?, bp.clone())?)?;
            emit(lattice_meta(CodeFile::basis(code), "cons3-t2", &bp, &rows.beta), &out)
        }
        Build::Cons3T3 { field, mu, r, ext, breakpoints, out } => {
            let rows = build_lattice_t3(&tower(&field)?, mu, r)?;
            let bp = parse_usizes(&breakpoints)?;
            let code = extend_lattice(&rows.spec(parse_ext(&ext)?, bp.clone())?)?;
            emit(lattice_meta(CodeFile::basis(code), "cons3-t3", &bp, &rows.beta), &out)
        }
        Build::Cons4 { field, r, k, t, pieces, input, out } => {
            let t = t.unwrap_or(r);
            let partition = MatrixPartition::new(field.m, t, parse_pieces(&pieces)?)?;
            let d0 = match input {
                Some(path) => match read_code(&path)?.body {
                    CodeBody::Generator(c) => c,
                    CodeBody::Basis(_) => return Err(usage("cons4 input needs a generator body")),
                },
                None => build_lrs(&tower(&field)?, r, k)?,
            };
            let code = extend_systematic(&d0, t, &partition)?;
            emit(CodeFile::basis(code).with_meta("construction", "cons4"), &out)
        }
    }
}

fn guarded(code: &FqLinearCode, guard: u128) -> CliResult<()> {
    let needed = code.size();
    if needed > guard {
        return Err(Error::GuardExceeded { needed, guard }.into());
    }
    Ok(())
}

fn meta_beta(file: &CodeFile) -> CliResult<Option<(Vec<usize>, BetaVector)>> {
    let keys = ["breakpoints", "beta", "mu", "r", "k"];
    let Some(vals) = keys.iter().map(|k| file.meta_value(k)).collect::<Option<Vec<_>>>() else {
        return Ok(None);
    };
    let tw = file.tower();
    let beta = vals[1]
        .split(',')
        .map(|c| {
            let code = c.trim().parse().map_err(|_| usage(format!("bad beta entry {c:?}")))?;
            Ok(tw.element(code)?)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let one = |s: &str| s.parse::<usize>().map_err(|_| usage(format!("bad meta value {s:?}")));
    Ok(Some((
        parse_usizes(vals[0])?,
        BetaVector {
            beta,
            mu: one(vals[2])?,
            r: one(vals[3])?,
            k: one(vals[4])?,
        },
    )))
}

fn check(what: CheckKind, path: &Path, guard: u128) -> CliResult<u8> {
    let file = read_code(path)?;
    let code = file.fq_linear();
    let verdict = |pass: bool| if pass { 0 } else { 1 };
    match what {
        CheckKind::Msrd => {
            let cert = code.is_msrd_with_guard(guard)?;
            println!("{cert}");
            println!("{}", describe(cert.dim, cert.bound));
            Ok(verdict(cert.msrd))
        }
        CheckKind::DualMsrd => {
            let CodeBody::Generator(g) = &file.body else {
                return Err(usage("the dual needs a generator-matrix body"));
            };
            let cert = g.dual().to_fq_linear().is_msrd_with_guard(guard)?;
            println!("{cert}");
            println!("dual {}", describe(cert.dim, cert.bound));
            Ok(verdict(cert.msrd))
        }
        CheckKind::Weights => {
            println!("{}", code.weight_distribution(guard)?);
            Ok(0)
        }
        CheckKind::OneWeight => {
            guarded(&code, guard)?;
            match meta_beta(&file)? {
                Some((bp, beta)) => {
                    let rep = check_one_weight(&code, &bp, &beta)?;
                    println!(
                        "criterion={} one_weight={} agree={}",
                        rep.criterion,
                        rep.one_weight,
                        rep.agree()
                    );
                    println!("{}", rep.distribution);
                    Ok(verdict(rep.one_weight && rep.agree()))
                }
                None => {
                    let dist = code.weight_distribution(guard)?;
                    let one = dist.nonzero_weights().len() == 1;
                    println!("criterion=n/a one_weight={one}");
                    println!("{dist}");
                    Ok(verdict(one))
                }
            }
        }
    }
}

fn describe(dim: usize, bound: usize) -> String {
    if dim == bound {
        "code meets the Singleton bound".to_string()
    } else {
        format!("code is {} dimension(s) short of the Singleton bound", bound - dim)
    }
}

/// `count` elements of GF(q^m) that are independent over GF(q).
fn independent(tw: &FieldTower, count: usize, rng: &mut ChaCha8Rng) -> Vec<msrd::FieldElement> {
    loop {
        let xs: Vec<_> = (0..count)
            .map(|_| tw.element(rng.gen_range(1..tw.order())).expect("in range"))
            .collect();
        let coords: Vec<Vec<u32>> = xs.iter().map(|&x| tw.coords(x)).collect();
        if linalg::rank(tw.base(), &coords) == count {
            return xs;
        }
    }
}

fn line(tw: &Arc<FieldTower>, n: usize, rng: &mut ChaCha8Rng) -> CliResult<FqLinearCode> {
    let g = vec![independent(tw, n, rng)];
    let code = FqmLinearCode::new(tw.clone(), LengthPartition::new(vec![n], tw.m())?, g)?.to_fq_linear();
    let mut order: Vec<usize> = (0..code.dim()).collect();
    order.shuffle(rng);
    Ok(code.with_basis_order(&order)?)
}

/// Random full-distance `c1` on one `m × m` block glued to a random
/// one-dimensional code on an `m × n` block; returns the violations.
fn glue_sweep(trials: usize, seed: u64) -> CliResult<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [(2, 2), (2, 3), (3, 2), (4, 2), (5, 2)];
    let mut bad = 0;
    for _ in 0..trials {
        let &(q, m) = fields.choose(&mut rng).expect("nonempty");
        let tw = Arc::new(FieldTower::for_q(q, m)?);
        let c1 = line(&tw, m, &mut rng)?;
        let c2 = line(&tw, rng.gen_range(1..=m), &mut rng)?;
        let (d1, d2) = (c1.min_sumrank_distance()?, c2.min_sumrank_distance()?);
        let glued = glue_bases(&GlueSpec::new(c1, c2)?);
        if glued.min_sumrank_distance()? < d1 + d2 {
            bad += 1;
        }
    }
    Ok(bad)
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.cmd {
        Cmd::Bound { profile, d } => {
            let profile = BlockProfile::new(parse_blocks(&profile)?)?.canonicalize();
            let bound = singleton_bound(&profile, d)?;
            let exp = expand_distance(&profile, d)?;
            println!("bound={bound} j={} delta={}", exp.j, exp.delta);
            Ok(0)
        }
        Cmd::Build { which } => build(which),
        Cmd::Check { what, file } => check(what, &file, cli.guard),
        Cmd::Compare { budget, q, csv, timings, glue_trials } => {
            let rows = compare(budget, q)?;
            print!("{}", render_table(&rows, timings));
            if let Some(path) = csv {
                fs::write(&path, render_csv(&rows, timings)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            let mut code = if rows.iter().all(|r| r.msrd != Some(false)) { 0 } else { 1 };
            if glue_trials > 0 {
                let bad = glue_sweep(glue_trials, cli.seed)?;
                println!("glue-sweep seed={} trials={glue_trials} violations={bad}", cli.seed);
                if bad > 0 {
                    code = 1;
                }
            }
            Ok(code)
        }
        Cmd::Export { file, out } => {
            let f = read_code(&file)?;
            let mut basis = CodeFile::basis(f.fq_linear());
            basis.meta = f.meta.clone();
            emit(basis, &Out { out })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
