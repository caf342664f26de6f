//! Command-line front end: construct code directories, verify their
//! structural guarantees, and run Monte Carlo decoding sweeps.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qdldpc::codes::{
    self, build_camel_pair, build_classical, code_params, default_multiplier_sets, validate_pair,
    AffineRowSpec, ClassicalCode, CssCodePair,
};
use qdldpc::error::Error;
use qdldpc::f2linalg::{count_4cycles, girth, TannerGraph};
use qdldpc::gf2e::{make_field, FieldSpec};
use qdldpc::sim::{run_point, DecoderKind, LerRow, SweepConfig};

#[derive(Parser)]
#[command(name = "qdldpc", about = "Quasi-dyadic LDPC code construction, verification, and decoding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code directory (HX.alist/HZ.alist/meta.json, or H.alist for
    /// classical codes)
    Construct(ConstructArgs),
    /// Check the structural guarantees of a code directory
    Verify { dir: PathBuf },
    /// Estimate logical error rates over the depolarizing channel
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Field extension degree ℓ
    #[arg(long, required_unless_present = "from_meta", conflicts_with = "from_meta")]
    ell: Option<u32>,
    #[arg(long, value_enum, default_value = "css")]
    kind: CodeKind,
    /// Multipliers as comma-separated ψ-labels (defaults: the standard
    /// consecutive α-power sets with b = 0)
    #[arg(long, value_delimiter = ',')]
    multipliers_x: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    multipliers_z: Option<Vec<u32>>,
    /// Offsets as comma-separated ψ-labels (default: all zero)
    #[arg(long, value_delimiter = ',')]
    offsets_x: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    offsets_z: Option<Vec<u32>>,
    /// Rebuild from an existing meta.json instead of flags
    #[arg(long)]
    from_meta: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodeKind {
    Css,
    Classical,
}

#[derive(Args)]
struct SimulateArgs {
    /// Code directory created by `construct`
    #[arg(long)]
    code: PathBuf,
    #[arg(long, value_enum)]
    decoder: DecoderArg,
    /// Depolarizing probabilities, comma separated
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    target_errors: u64,
    #[arg(long, default_value_t = 15)]
    max_iters: usize,
    /// Multiplicative message clamp for BP
    #[arg(long)]
    message_floor: Option<f64>,
    /// Check-message damping factor in [0, 1)
    #[arg(long)]
    damping: Option<f64>,
    /// Message-update schedule
    #[arg(long, value_enum)]
    schedule: Option<ScheduleArg>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 10_000_000)]
    max_trials: u64,
    /// Run all iterations instead of stopping at the first syndrome match
    #[arg(long)]
    no_early_stop: bool,
    /// Worker threads (default: all cores); results do not depend on this
    #[arg(long)]
    threads: Option<usize>,
    /// Record measured wall time in the CSV (makes output nondeterministic)
    #[arg(long)]
    timing: bool,
    /// Write a JSON sidecar with the full sweep configuration
    #[arg(long)]
    sidecar: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecoderArg {
    Bp4,
    Camel,
    Genie,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScheduleArg {
    Flooding,
    AlternatingXz,
    SerialCheck,
}

impl From<ScheduleArg> for qdldpc::bp4::Schedule {
    fn from(s: ScheduleArg) -> Self {
        match s {
            ScheduleArg::Flooding => qdldpc::bp4::Schedule::Flooding,
            ScheduleArg::AlternatingXz => qdldpc::bp4::Schedule::AlternatingXz,
            ScheduleArg::SerialCheck => qdldpc::bp4::Schedule::SerialCheck,
        }
    }
}

impl From<DecoderArg> for DecoderKind {
    fn from(d: DecoderArg) -> DecoderKind {
        match d {
            DecoderArg::Bp4 => DecoderKind::PlainBp4,
            DecoderArg::Camel => DecoderKind::Camel,
            DecoderArg::Genie => DecoderKind::Genie,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify { dir } => cmd_verify(&dir),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// 1 for validation failures, 2 for bad flag values, 3 for I/O trouble.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::DuplicateMultiplier { .. }
        | Error::ZeroMultiplier { .. }
        | Error::Internal(_)
        | Error::ZeroInverse => 1,
        Error::Io(_) | Error::Json(_) | Error::AlistParse(_) | Error::InconsistentCodeDir(_) => 3,
        _ => 2,
    }
}

fn parse_rows(
    field: &FieldSpec,
    multipliers: &[u32],
    offsets: Option<&Vec<u32>>,
) -> Result<Vec<AffineRowSpec>, Error> {
    let offsets = match offsets {
        Some(o) => {
            if o.len() != multipliers.len() {
                return Err(Error::DimensionMismatch { expected: multipliers.len(), got: o.len() });
            }
            o.clone()
        }
        None => vec![0; multipliers.len()],
    };
    multipliers
        .iter()
        .zip(&offsets)
        .map(|(&a, &b)| Ok(AffineRowSpec::new(field.element(a)?, field.element(b)?)))
        .collect()
}

fn describe_rows(field: &FieldSpec, name: &str, rows: &[AffineRowSpec]) {
    let fmt_el = |e: qdldpc::gf2e::FieldElement| match field.alpha_exponent(e) {
        None => "0".to_string(),
        Some(0) => "1".to_string(),
        Some(k) => format!("a^{k}"),
    };
    let items: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "(a={}={}, b={}={})",
                r.multiplier.label(),
                fmt_el(r.multiplier),
                r.offset.label(),
                fmt_el(r.offset)
            )
        })
        .collect();
    println!("{name}: {}", items.join(" "));
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode, Error> {
    if let Some(meta_path) = &args.from_meta {
        let meta: codes::CodeMeta =
            serde_json::from_str(&std::fs::read_to_string(meta_path)?)?;
        if meta.is_css() {
            let code = codes::regenerate_css(&meta)?;
            codes::save_css_dir(&code, &args.out)?;
            report_css(&code);
        } else {
            let code = codes::regenerate_classical(&meta)?;
            codes::save_classical_dir(&code, &args.out)?;
            report_classical(&code);
        }
        return Ok(ExitCode::SUCCESS);
    }

    let ell = args.ell.expect("clap enforces --ell without --from-meta");
    let field = make_field(ell)?;
    match args.kind {
        CodeKind::Css => {
            let (default_x, default_z) = if args.multipliers_x.is_none() || args.multipliers_z.is_none()
            {
                let (x, z) = default_multiplier_sets(&field)?;
                (Some(x), Some(z))
            } else {
                (None, None)
            };
            let rows_x = match &args.multipliers_x {
                Some(m) => parse_rows(&field, m, args.offsets_x.as_ref())?,
                None => default_x.unwrap(),
            };
            let rows_z = match &args.multipliers_z {
                Some(m) => parse_rows(&field, m, args.offsets_z.as_ref())?,
                None => default_z.unwrap(),
            };
            let code = build_camel_pair(&field, &rows_x, &rows_z)?;
            codes::save_css_dir(&code, &args.out)?;
            report_css(&code);
        }
        CodeKind::Classical => {
            let rows = match &args.multipliers_x {
                Some(m) => parse_rows(&field, m, args.offsets_x.as_ref())?,
                None => (0..3u64)
                    .map(|i| AffineRowSpec::new(field.alpha_pow(i), qdldpc::gf2e::FieldElement::ZERO))
                    .collect(),
            };
            if rows.len() < 3 {
                println!("warning: w = {} < 3 is outside the construction's stated range", rows.len());
            }
            let code = build_classical(&field, &rows)?;
            codes::save_classical_dir(&code, &args.out)?;
            report_classical(&code);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn report_css(code: &CssCodePair) {
    describe_rows(code.field(), "rows_X", code.rows_x());
    describe_rows(code.field(), "rows_Z", code.rows_z());
    let (n, k, rate) = code_params(code);
    println!("rate {rate:.4}");
    println!("[[{n},{k}]]");
}

fn report_classical(code: &ClassicalCode) {
    describe_rows(code.field(), "rows", code.rows());
    println!("[{},{}]", code.n(), code.k());
}

fn fmt_girth(g: Option<usize>) -> String {
    g.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

fn cmd_verify(dir: &Path) -> Result<ExitCode, Error> {
    let meta = codes::load_meta(dir)?;
    if meta.is_css() {
        let code = codes::load_css_dir(dir)?;
        let report = validate_pair(&code)?;
        println!("girth(H'_X) = {}", fmt_girth(report.girth_x));
        println!("girth(H'_Z) = {}", fmt_girth(report.girth_z));
        println!("4-cycles: H'_X {}, H'_Z {}", report.four_cycles_x, report.four_cycles_z);
        println!("all-one column:      {}", pass(report.allone_column_ok));
        println!("CAMEL condition:     {}", pass(report.camel_ok));
        println!("symplectic product:  {}", pass(report.symplectic_ok));
        println!(
            "cross-row overlaps:  {}",
            if report.all_overlaps_one() { "all 1" } else { "NOT all 1" }
        );
        println!("[[{},{}]]", code.n(), code.k());
        Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
    } else {
        let h = qdldpc::alist::read_file(&dir.join("H.alist"))?;
        let g = girth(&TannerGraph::new(&h));
        let c4 = count_4cycles(&h);
        let k = h.cols() - qdldpc::f2linalg::rank_f2(&h);
        println!("girth(H) = {}", fmt_girth(g));
        println!("4-cycles: {c4}");
        println!("[{},{}]", h.cols(), k);
        let ok = c4 == 0 && g.map_or(true, |v| v >= 6);
        Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, Error> {
    if let Some(t) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::BadConfig(format!("thread pool: {e}")))?;
    }
    let code = codes::load_css_dir(&args.code)?;
    let code_id = args
        .code
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "code".to_string());

    let mut cfg = SweepConfig::new(args.decoder.into(), args.p.clone(), args.seed);
    cfg.target_logical_errors = args.target_errors;
    cfg.max_trials = args.max_trials;
    cfg.bp.max_iters = args.max_iters;
    cfg.bp.early_stop = !args.no_early_stop;
    if let Some(floor) = args.message_floor {
        cfg.bp.message_floor = floor;
    }
    if let Some(d) = args.damping {
        cfg.bp.damping = d;
    }
    if let Some(s) = args.schedule {
        cfg.bp.schedule = s.into();
    }
    cfg.record_timing = args.timing;
    cfg.validate()?;

    println!("code {code_id}: [[{},{}]], decoder {}", code.n(), code.k(), cfg.decoder);
    println!("{:>12} {:>12} {:>8} {:>12} {:>12}", "p", "trials", "errors", "ler", "ci95");
    let mut rows = Vec::new();
    let start = std::time::Instant::now();
    for i in 0..cfg.p_values.len() {
        let point = run_point(&code, i, &cfg)?;
        println!(
            "{:>12} {:>12} {:>8} {:>12.4e} {:>12.4e}{}",
            point.p,
            point.trials,
            point.logical_errors,
            point.ler,
            point.ci95,
            if point.censored { "  (censored)" } else { "" }
        );
        if point.censored {
            println!(
                "warning: p={} reached max_trials={} with only {} logical errors",
                point.p, cfg.max_trials, point.logical_errors
            );
        }
        rows.push(LerRow { code_id: code_id.clone(), decoder: cfg.decoder, point });
    }
    qdldpc::sim::write_results(&rows, &args.out)?;
    if args.sidecar {
        let sidecar = args.out.with_extension("config.json");
        std::fs::write(&sidecar, serde_json::to_string_pretty(&cfg)?)?;
    }
    println!("wrote {} ({:.1}s total)", args.out.display(), start.elapsed().as_secs_f64());
    Ok(ExitCode::SUCCESS)
}
