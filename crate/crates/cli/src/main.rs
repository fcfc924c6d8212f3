//! `canon`: build canonical algebras and their modules, compute Hom/Ext,
//! run the Schofield induction and the verification suite.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on invalid
//! input. `CANON_WORKERS` sets the number of worker threads.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use canonical_core::homext::{hom_ext, is_exceptional, orthogonal_pair_report};
use canonical_core::io::{emit_algebra, emit_kron, emit_rep, latex_kron, latex_rep, parse_rep};
use canonical_core::scalar::{format_scalar, parse_scalar};
use canonical_core::schofield::{
    induction_step, run_pipeline, verify_induction_step, KronSide, PipelineConfig,
};
use canonical_core::small_rank::{
    all_regular_specs, rank_one, regular_exceptional, RankOneSpec, RegularSpec,
};
use canonical_core::suite::{exit_code_for, run_suite, EXIT_INVALID, EXIT_OK, EXIT_VERIFICATION};
use canonical_core::{CanonicalAlgebra, Rational, Rep, ThetaRep, WeightSequence};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] canonical_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => exit_code_for(e),
            CliError::Io { .. } | CliError::Usage(_) => EXIT_INVALID,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "canon",
    version,
    about = "Exceptional modules over canonical algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Describe an algebra and optionally write its descriptor.
    Algebra {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a regular or rank-one exceptional module.
    Module {
        #[command(subcommand)]
        kind: ModuleKind,
    },
    /// Print dim Hom(X, Y) and dim Ext¹(X, Y).
    Ext {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Build an exceptional Θ(n)-representation.
    Kron {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Side::Preprojective)]
        side: Side,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Assemble the middle term for an orthogonal pair, or run the pipeline.
    Schofield {
        #[arg(long, requires = "y")]
        x: Option<PathBuf>,
        #[arg(long, requires = "x")]
        y: Option<PathBuf>,
        /// Index of the Kronecker representation.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Side::Preprojective)]
        side: Side,
        /// Run the pair search and pipeline over this algebra instead.
        #[command(flatten)]
        alg: OptionalAlgebraArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Relation, exceptionality, coefficient and acceptability audits.
    Audit {
        #[arg(long)]
        m: PathBuf,
    },
    /// Run every verification check over one algebra.
    VerifySuite {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
}

#[derive(Debug, Subcommand)]
enum ModuleKind {
    /// The regular module S_a^[l] in the tube of arm i.
    Regular {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        arm: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        l: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The rank-one module with offsets r and shift n.
    Rank1 {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<usize>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    /// Weights, e.g. 2,3,7.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<i64>,
    /// λ_2..λ_t as rationals; defaults to 0,1,2,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct OptionalAlgebraArgs {
    #[arg(long, value_delimiter = ',', conflicts_with = "x")]
    p: Option<Vec<i64>>,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "p"
    )]
    lambda: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Rep)]
    emit: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Rep,
    Latex,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Side {
    Preprojective,
    Preinjective,
}

impl From<Side> for KronSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Preprojective => KronSide::Preprojective,
            Side::Preinjective => KronSide::Preinjective,
        }
    }
}

fn build_algebra(p: &[i64], lambda: Option<&[String]>) -> CliResult<Arc<CanonicalAlgebra>> {
    let weights = WeightSequence::new(p.to_vec())?;
    let alg = match lambda {
        Some(ls) => {
            let lambdas = ls
                .iter()
                .map(|s| parse_scalar(s))
                .collect::<Result<Vec<Rational>, _>>()?;
            CanonicalAlgebra::new(weights, lambdas)?
        }
        None => CanonicalAlgebra::with_default_lambdas(weights)?,
    };
    Ok(Arc::new(alg))
}

impl AlgebraArgs {
    fn build(&self) -> CliResult<Arc<CanonicalAlgebra>> {
        build_algebra(&self.p, self.lambda.as_deref())
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_rep(path: &Path) -> CliResult<Rep> {
    let text = read(path)?;
    parse_rep(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_or_print(output: &OutputArgs, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_module(m: &Rep, output: &OutputArgs) -> CliResult<()> {
    let text = match output.emit {
        Format::Rep => emit_rep(m),
        Format::Latex => latex_rep(m),
    };
    write_or_print(output, &text)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Algebra { alg, out } => {
            let a = alg.build()?;
            let w = a.weights();
            let lambdas: Vec<String> = a.lambdas().iter().map(format_scalar).collect();
            println!("weights={}", w);
            println!("lambdas={}", lambdas.join(","));
            println!(
                "vertices={} arrows={} relations={}",
                a.num_vertices(),
                a.num_arrows(),
                a.num_relations()
            );
            println!(
                "chi={} wild={}",
                format_scalar(&w.euler_characteristic()),
                w.is_wild()
            );
            if let Some(path) = out {
                fs::write(&path, emit_algebra(&a)).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                println!("wrote {}", path.display());
            }
            Ok(EXIT_OK)
        }
        Command::Module { kind } => {
            let (m, output) = match kind {
                ModuleKind::Regular {
                    alg,
                    arm,
                    a,
                    l,
                    output,
                } => (
                    regular_exceptional(&alg.build()?, RegularSpec::new(arm, a, l))?,
                    output,
                ),
                ModuleKind::Rank1 { alg, r, n, output } => {
                    (rank_one(&alg.build()?, &RankOneSpec::new(r, n))?, output)
                }
            };
            emit_module(&m, &output)?;
            Ok(EXIT_OK)
        }
        Command::Ext { x, y } => {
            let (x, y) = (read_rep(&x)?, read_rep(&y)?);
            for m in [&x, &y] {
                m.ensure_relations()
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            let (h, e) = hom_ext(&x, &y)?;
            println!("hom={h} ext={e}");
            Ok(EXIT_OK)
        }
        Command::Kron { n, k, side, output } => {
            let rep: ThetaRep = KronSide::from(side).build(n, k)?;
            let text = match output.emit {
                Format::Rep => emit_kron(&rep),
                Format::Latex => latex_kron(&rep),
            };
            write_or_print(&output, &text)?;
            Ok(EXIT_OK)
        }
        Command::Schofield {
            x,
            y,
            k,
            side,
            alg,
            output,
        } => match (x, y, alg.p) {
            (Some(x), Some(y), _) => {
                schofield_step(&read_rep(&x)?, &read_rep(&y)?, k, side.into(), &output)
            }
            (None, None, Some(p)) => {
                let a = build_algebra(&p, alg.lambda.as_deref())?;
                schofield_pipeline(&a, k, side.into())
            }
            _ => Err(CliError::Usage("give --x and --y, or --p".into())),
        },
        Command::Audit { m } => audit(&read_rep(&m)?),
        Command::VerifySuite { alg } => {
            let a = alg.build()?;
            let report = run_suite(&a)?;
            print!("{}", report.render());
            Ok(report.exit_code())
        }
    }
}

fn schofield_step(
    x: &Rep,
    y: &Rep,
    k: usize,
    side: KronSide,
    output: &OutputArgs,
) -> CliResult<i32> {
    for m in [x, y] {
        m.ensure_relations()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let pair = orthogonal_pair_report(x, y)?;
    println!(
        "{} orthogonal exceptional pair, n={}",
        status(pair.is_orthogonal()),
        pair.n
    );
    if !pair.is_orthogonal() || pair.n == 0 {
        for axis in pair.failing_axes() {
            println!("  {axis}");
        }
        if pair.n == 0 {
            println!("  Ext(X,Y) = 0");
        }
        return Ok(EXIT_VERIFICATION);
    }
    let regular = all_regular_specs(x.algebra())
        .into_iter()
        .find(|&s| regular_exceptional(x.algebra(), s).is_ok_and(|r| &r == x));
    let rec = induction_step(x, y, ("X".into(), "Y".into()), regular, |n| {
        side.build(n, k)
    })?;
    let rep = verify_induction_step(&rec)?;
    println!(
        "basis={:?} kron=({}, {}) dims={:?} rank={}",
        rec.provenance,
        rec.kron.v(),
        rec.kron.u(),
        rec.m.dims(),
        rec.m.rank()
    );
    println!("{} relations", status(rep.relations));
    println!("{} exceptional", status(rep.exceptional));
    println!("{} dims additive", status(rep.dims_additive));
    println!("{} rank additive", status(rep.rank_additive));
    println!(
        "{} coefficients in D(lambda)",
        status(rep.coefficients.is_ok())
    );
    if let Some(acc) = &rep.acceptability {
        println!("{} acceptability", status(acc.is_ok()));
    }
    emit_module(&rec.m, output)?;
    Ok(if rep.structural_ok() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn schofield_pipeline(alg: &Arc<CanonicalAlgebra>, k: usize, side: KronSide) -> CliResult<i32> {
    let cfg = PipelineConfig {
        kron_k: k,
        kron_side: side,
        ..PipelineConfig::default()
    };
    let out = run_pipeline(alg, &cfg)?;
    println!(
        "pairs={} with_regular_x={}",
        out.pairs_found, out.pairs_with_regular_x
    );
    let mut ok = true;
    for (rec, rep) in &out.records {
        ok &= rep.all_ok() || (rep.structural_ok() && rep.acceptability.is_none());
        println!(
            "{} M({}, {}) n={} kron=({}, {}) rank={} basis={:?} coefficients={}",
            status(rep.structural_ok()),
            rec.x_label,
            rec.y_label,
            rec.n,
            rec.kron.v(),
            rec.kron.u(),
            rec.m.rank(),
            rec.provenance,
            status(rep.coefficients.is_ok())
        );
    }
    if let Some(ex) = out.negative_control {
        ok &= !ex;
        println!("{} negative control rejected", status(!ex));
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFICATION })
}

fn audit(m: &Rep) -> CliResult<i32> {
    let rel = m.check_relations();
    println!("{} relations", status(rel.is_ok()));
    for f in &rel.failures {
        println!("  arm {} residual {}", f.arm, f.residual);
    }
    if rel.is_ok() {
        println!("rank={} exceptional={}", m.rank(), is_exceptional(m)?);
    }
    let coeff = m.coefficient_audit();
    println!("{} coefficients in D(lambda)", status(coeff.is_ok()));
    for e in &coeff.offending {
        println!(
            "  {}[{}][{}] = {}",
            e.location,
            e.row,
            e.col,
            format_scalar(&e.value)
        );
    }
    let acc = m.acceptability_audit();
    for c in &acc.conditions {
        println!("{} {}", status(c.is_ok()), c.name);
        for e in &c.offending {
            println!(
                "  {}[{}][{}] = {}",
                e.location,
                e.row,
                e.col,
                format_scalar(&e.value)
            );
        }
    }
    if acc.outside_positive_rank {
        println!("NOTE acceptability applied outside positive rank");
    }
    if acc.non_normalized {
        println!("NOTE parameters are not normalized");
    }
    Ok(if rel.is_ok() && coeff.is_ok() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}

fn init_workers() -> CliResult<()> {
    if let Ok(v) = std::env::var("CANON_WORKERS") {
        let n: usize = v.parse().map_err(|_| {
            CliError::Usage(format!(
                "CANON_WORKERS must be a positive integer, got `{v}`"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match init_workers().and_then(|()| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
