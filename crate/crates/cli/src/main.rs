mod cache;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclo_hecke::clifford::{bitrace_of_spec, chi_irreducible, GPElementSpec, IrredLabelGP};
use cyclo_hecke::content::ContentModel;
use cyclo_hecke::cyclo::Cyclo;
use cyclo_hecke::group::{check_orthogonality, ReflectionGroup};
use cyclo_hecke::laurent::{Bindings, Laurent};
use cyclo_hecke::mn::{mn_character, StandardElementSpec};
use cyclo_hecke::seminormal::SeminormalRep;
use cyclo_hecke::shapes::MultiPartition;
use cyclo_hecke::table::character_table_hrpn;
use cyclo_hecke::verify::{run_suite, DeltaUnderTest, Scale, Suite};
use cyclo_hecke::{BigRational, Error, RationalFn, Table};

use cache::Cache;

#[derive(Parser)]
#[command(name = "cyclo-hecke", version, about = "Character values of cyclotomic Hecke algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full character table of H(r,n) (p = 1) or H(r,p,n).
    Table(TableArgs),
    /// One character value.
    Char(CharArgs),
    /// Substitute values for q and the parameters in a table.
    Specialize(SpecializeArgs),
    /// Run an invariant suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct Algebra {
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    algebra: Algebra,
    #[command(flatten)]
    output: Output,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, env = "CYCLO_HECKE_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct CharArgs {
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// r-partition, e.g. `2,1|-|1`.
    #[arg(long)]
    shape: String,
    /// Element, e.g. `ell=3,4 i=0,2` (H(r,p,n) also accepts `tilde=1 alpha=1`).
    #[arg(long)]
    element: String,
    #[arg(long)]
    tilde: Option<u8>,
    /// Evaluate the twisted bitrace χ^λ(X σ^{α f_λ}) instead of an irreducible.
    #[arg(long)]
    alpha: Option<usize>,
    /// Clifford index of the irreducible χ^{(λ,j)}.
    #[arg(long)]
    j: Option<usize>,
    /// Recompute through the seminormal representation and compare.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct SpecializeArgs {
    /// A JSON table written by `table --format json`.
    #[arg(long, conflicts_with_all = ["r", "p", "n"])]
    table: Option<PathBuf>,
    #[arg(long, required_unless_present = "table")]
    r: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, required_unless_present = "table")]
    n: Option<u32>,
    /// `name=value`, e.g. `q=(1)` or `u2=(-1)`; without any, the group point.
    #[arg(long = "bind")]
    binds: Vec<String>,
    /// Check orthogonality against the brute-force group (group point only).
    #[arg(long)]
    check_group: bool,
    #[command(flatten)]
    output: Output,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, env = "CYCLO_HECKE_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Small ranges only.
    #[arg(long)]
    quick: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidShape(_)
            | Error::InvalidElement(_)
            | Error::InvalidArgument(_)
            | Error::UnknownVariable(_)
            | Error::Entry { .. } => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Check(format!("{}: {e}", path.display()))
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--jobs must be positive".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Failure::Check(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(table: &Table, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Text => table.to_text(),
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json(),
    })
}

/// Cached when a cache directory is configured; the computation runs on `jobs` workers.
fn load_table(r: usize, p: usize, n: u32, jobs: Option<usize>, cache: Option<&Path>) -> Result<Table, Failure> {
    if p == 0 || r == 0 || !r.is_multiple_of(p) {
        return Err(Failure::Usage(format!("p = {p} must divide r = {r}")));
    }
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let cache = cache.map(Cache::new);
    let key = Cache::key(r, p, n);
    if let Some(t) = cache.as_ref().and_then(|c| c.load(&key)) {
        return Ok(t);
    }
    let table = with_jobs(jobs, || character_table_hrpn::<BigRational>(r, p, n))??;
    if let Some(c) = &cache {
        c.store(&key, &table).map_err(|e| Failure::Check(format!("cache: {e}")))?;
    }
    Ok(table)
}

fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    let Algebra { r, p, n } = args.algebra;
    let table = load_table(r, p, n, args.jobs, args.cache.as_deref())?;
    emit(&render(&table, args.output.format)?, args.output.out.as_deref())
}

fn cmd_char(args: CharArgs) -> Result<(), Failure> {
    let shape: MultiPartition = args.shape.parse()?;
    if args.p == 1 {
        if args.tilde.is_some() || args.alpha.is_some() || args.j.is_some() {
            return Err(Failure::Usage("--tilde, --alpha and --j need --p > 1".into()));
        }
        let model = ContentModel::<BigRational>::hrn(args.r)?;
        let spec: StandardElementSpec = args.element.parse()?;
        let value = mn_character(&model, &shape, &spec)?;
        let oracle = || -> Result<RationalFn, Error> { SeminormalRep::build(&shape, &model)?.trace_of(&spec.word()) };
        return report_value(&value, args.oracle.then(oracle).transpose()?);
    }
    let model = ContentModel::<BigRational>::hrpn(args.r, args.p)?;
    let parsed: GPElementSpec = args.element.parse()?;
    let tilde = match args.tilde {
        None => parsed.tilde(),
        Some(0) => false,
        Some(1) => true,
        Some(t) => return Err(Failure::Usage(format!("--tilde must be 0 or 1, got {t}"))),
    };
    let spec = GPElementSpec::new(tilde, parsed.spec().clone(), None)?;
    let (f, k) = shape.stabilizer(args.p);
    match (args.alpha.or(parsed.alpha()), args.j) {
        (Some(_), Some(_)) => Err(Failure::Usage("give either --alpha or --j".into())),
        (Some(alpha), None) => {
            let value = bitrace_of_spec(&model, &shape, &spec, alpha)?;
            let oracle = || SeminormalRep::build(&shape, &model)?.twisted_bitrace(&spec.word(), alpha);
            report_value(&value, args.oracle.then(oracle).transpose()?)
        }
        (None, j) => {
            let label = IrredLabelGP::new(&shape, j.unwrap_or(0), args.p)?;
            let value = chi_irreducible(&model, &label, &spec)?;
            let oracle = || -> Result<RationalFn, Error> {
                let rep = SeminormalRep::build(label.shape(), &model)?;
                let d = (args.r / args.p) as i64;
                let mut acc = model.zero();
                for alpha in 0..k {
                    let twist = Cyclo::root_of_unity(model.order(), -d * label.j() as i64 * (alpha * f) as i64);
                    acc = &acc + &rep.twisted_bitrace(&spec.word(), alpha)?.scale(&twist);
                }
                Ok(&acc / &model.int(k as i64))
            };
            report_value(&value, args.oracle.then(oracle).transpose()?)
        }
    }
}

fn report_value(value: &RationalFn, oracle: Option<RationalFn>) -> Result<(), Failure> {
    println!("{value}");
    match oracle {
        None => Ok(()),
        Some(o) if o.rf_equal(value) => {
            println!("AGREE");
            Ok(())
        }
        Some(o) => {
            println!("DISAGREE oracle={o}");
            Err(Failure::Check("closed form and oracle differ".into()))
        }
    }
}

fn parse_binding(table: &Table, raw: &str) -> Result<(String, Laurent<BigRational>), Failure> {
    let (name, value) = raw
        .split_once('=')
        .ok_or_else(|| Failure::Usage(format!("expected name=value, got `{raw}`")))?;
    if table.vars().index_of(name).is_none() {
        return Err(Failure::Usage(format!("unknown parameter `{name}`; the table has {:?}", table.vars().names())));
    }
    let poly = Laurent::parse(table.vars(), table.order(), value).or_else(|_| {
        Cyclo::parse(table.order(), value).map(|c| Laurent::constant(table.vars(), table.order(), c))
    })?;
    Ok((name.to_string(), poly))
}

fn cmd_specialize(args: SpecializeArgs) -> Result<(), Failure> {
    let table = match &args.table {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            Table::from_json(&text)?
        }
        None => load_table(
            args.r.expect("required by clap"),
            args.p.unwrap_or(1),
            args.n.expect("required by clap"),
            args.jobs,
            args.cache.as_deref(),
        )?,
    };
    let group_point = args.binds.is_empty();
    let bindings = if group_point {
        table.model().group_bindings()
    } else {
        let mut b = Bindings::new();
        for raw in &args.binds {
            let (name, value) = parse_binding(&table, raw)?;
            b = b.bind(&name, value);
        }
        b
    };
    let special = table.specialize(&bindings)?;
    emit(&render(&special, args.output.format)?, args.output.out.as_deref())?;
    if args.check_group {
        if !group_point {
            return Err(Failure::Usage("--check-group needs the group point (no --bind)".into()));
        }
        let group = ReflectionGroup::generate(table.r() as u32, table.p() as u32, table.n() as usize, 10_000)?;
        let report = check_orthogonality(&special, &group);
        eprintln!("|G| = {}, {} classes", report.group_order, report.classes);
        if !report.passed() {
            for f in &report.failures {
                eprintln!("FAIL {f}");
            }
            return Err(Failure::Check("orthogonality fails".into()));
        }
        eprintln!("orthogonality: pass");
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = args.suite.parse()?;
    let scale = if args.quick { Scale::Quick } else { Scale::Full };
    let checks = with_jobs(args.jobs, || run_suite(suite, scale, &DeltaUnderTest::default()))?;
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    println!("{}: {} checks, {failed} failed", args.suite, checks.len());
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} checks failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table(a) => cmd_table(a),
        Command::Char(a) => cmd_char(a),
        Command::Specialize(a) => cmd_specialize(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
