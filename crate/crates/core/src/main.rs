use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lebesgue_interp::bench::report::fmt_f64;
use lebesgue_interp::bench::{
    discover_datasets, emit_report, generate_synthetic_corpus, run_benchmark, CorpusSpec,
    ExperimentConfig, ExperimentMode, ReportFormat,
};
use lebesgue_interp::sampling::{lebesgue_sample, riemann_sample, SampleBudget};
use lebesgue_interp::verify::{run_checks, VerifyConfig};
use lebesgue_interp::{
    reconstruct, Error, Knot, Method, ReconstructionParams, Result, SampledSeries, TimeSeries,
};

const THREADS_ENV: &str = "LEBESGUE_INTERP_THREADS";

/// Event-based sampling and event-aware reconstruction of time series.
#[derive(Parser, Debug)]
#[command(name = "lebesgue-interp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample one signal file and write the kept points as CSV.
    Sample(SampleArgs),
    /// Rebuild a full-length signal from a sampled-points CSV.
    Reconstruct(ReconstructArgs),
    /// Run a benchmark on a dataset directory or a synthetic corpus.
    Bench(BenchArgs),
    /// Run the built-in property checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Regime {
    Lebesgue,
    Riemann,
}

#[derive(Args, Debug)]
struct SampleArgs {
    /// Signal file: numbers separated by commas, whitespace or newlines.
    #[arg(long, short)]
    input: PathBuf,
    /// Output CSV (stdout when omitted).
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "lebesgue")]
    regime: Regime,
    /// Lebesgue threshold.
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    threshold: f64,
    /// Fraction of points kept by Riemann sampling.
    #[arg(long, default_value_t = 0.15, allow_negative_numbers = true)]
    fraction: f64,
    /// Rescale the signal to [0, 1] before sampling.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args, Debug)]
struct ReconstructArgs {
    /// Sampled-points CSV as written by `sample`.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_parser = parse_method)]
    method: Method,
    /// Threshold used by event-aware methods (defaults to the file's).
    #[arg(long, allow_negative_numbers = true)]
    threshold: Option<f64>,
    #[arg(long, default_value_t = ReconstructionParams::DEFAULT_TOLERANCE_RATIO, allow_negative_numbers = true)]
    tolerance_ratio: f64,
    #[arg(long, default_value_t = ReconstructionParams::DEFAULT_PREVIOUS_DISTANCE)]
    prev_dist: usize,
    #[arg(long, default_value_t = ReconstructionParams::DEFAULT_SUBSEQUENT_MIN_DISTANCE)]
    min_dist: usize,
    /// Upper gap bound for the convexity gate (unbounded when omitted).
    #[arg(long)]
    max_dist: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Directory of UCR-style datasets; a synthetic corpus is used otherwise.
    #[arg(long)]
    data: Option<PathBuf>,
    /// 1: fixed threshold; 2: per-dataset threshold tuned to a sample budget.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    experiment: u8,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    threshold: f64,
    /// Target fraction of kept points for experiment 2.
    #[arg(long, default_value_t = 0.15, allow_negative_numbers = true)]
    budget: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "bench-out")]
    out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "csv,json")]
    format: Vec<Format>,
    /// Methods to score (all when omitted).
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<Method>,
    #[arg(long, default_value_t = ReconstructionParams::DEFAULT_TOLERANCE_RATIO, allow_negative_numbers = true)]
    tolerance_ratio: f64,
    #[arg(long, default_value_t = ReconstructionParams::DEFAULT_PREVIOUS_DISTANCE)]
    prev_dist: usize,
    #[arg(long, default_value_t = ReconstructionParams::DEFAULT_SUBSEQUENT_MIN_DISTANCE)]
    min_dist: usize,
    #[arg(long)]
    max_dist: Option<usize>,
    /// Synthetic corpus: signals per kind.
    #[arg(long, default_value_t = 50)]
    signals_per_kind: usize,
    /// Synthetic corpus: signal length.
    #[arg(long, default_value_t = 500)]
    length: usize,
    /// Synthetic corpus: explicit mix such as `step:10,sine:5`.
    #[arg(long)]
    components: Option<String>,
    /// Synthetic corpus: number of datasets, each with its own seed.
    #[arg(long, default_value_t = 1)]
    datasets: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Monte-Carlo samples for the convexity-area check.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Random cases per check.
    #[arg(long, default_value_t = 1_000)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io {
            path: p.to_path_buf(),
            source: e,
        }),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io {
                path: PathBuf::from("<stdout>"),
                source: e,
            }),
    }
}

fn parse_error(path: &Path, row: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        row,
        column,
        message: message.into(),
    }
}

fn read_signal(path: &Path) -> Result<TimeSeries> {
    let text = read_text(path)?;
    let mut values = Vec::new();
    for (row, line) in text.lines().enumerate() {
        let fields = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty());
        for (column, field) in fields.enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                parse_error(path, row + 1, column + 1, format!("cannot parse '{field}'"))
            })?;
            values.push(v);
        }
    }
    TimeSeries::new(values)
}

fn format_sampled(s: &SampledSeries) -> String {
    let mut out = format!(
        "# source_length={}\n# threshold={}\nindex,value\n",
        s.source_length(),
        fmt_f64(s.threshold())
    );
    for k in s.points() {
        out.push_str(&format!("{},{}\n", k.index, fmt_f64(k.value)));
    }
    out
}

fn read_sampled(path: &Path) -> Result<SampledSeries> {
    let text = read_text(path)?;
    let mut length = None;
    let mut threshold = None;
    let mut points = Vec::new();
    for (row, line) in text.lines().enumerate() {
        let row = row + 1;
        let line = line.trim();
        if line.is_empty() || line == "index,value" {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let Some((key, value)) = meta.split_once('=') else {
                continue;
            };
            let bad = || parse_error(path, row, 1, format!("bad value for {}", key.trim()));
            match key.trim() {
                "source_length" => length = Some(value.trim().parse::<usize>().map_err(|_| bad())?),
                "threshold" => threshold = Some(value.trim().parse::<f64>().map_err(|_| bad())?),
                _ => {}
            }
            continue;
        }
        let (index, value) = line
            .split_once(',')
            .ok_or_else(|| parse_error(path, row, 1, "expected 'index,value'"))?;
        let index = index
            .trim()
            .parse::<usize>()
            .map_err(|_| parse_error(path, row, 1, format!("bad index '{index}'")))?;
        let value = value
            .trim()
            .parse::<f64>()
            .map_err(|_| parse_error(path, row, 2, format!("bad value '{value}'")))?;
        points.push(Knot::new(index, value));
    }
    let length = match length {
        Some(n) => n,
        None => points.last().map_or(0, |k| k.index + 1),
    };
    SampledSeries::new(points, length, threshold.unwrap_or(0.0))
}

fn run_sample(args: SampleArgs) -> Result<()> {
    let mut signal = read_signal(&args.input)?;
    if args.normalize {
        signal = signal.normalize_unit_interval();
    }
    let sampled = match args.regime {
        Regime::Lebesgue => lebesgue_sample(&signal, args.threshold)?,
        Regime::Riemann => riemann_sample(&signal, SampleBudget::new(args.fraction)?),
    };
    write_output(args.output.as_deref(), &format_sampled(&sampled))
}

fn run_reconstruct(args: ReconstructArgs) -> Result<()> {
    let sampled = read_sampled(&args.input)?;
    let params = ReconstructionParams {
        threshold: args.threshold.unwrap_or(sampled.threshold()),
        tolerance_ratio: args.tolerance_ratio,
        previous_distance: args.prev_dist,
        subsequent_min_distance: args.min_dist,
        subsequent_max_distance: args.max_dist,
    };
    params.validate()?;
    let rec = reconstruct(args.method, &sampled, &params);
    let mut out = String::from("index,value\n");
    for (i, v) in rec.values.iter().enumerate() {
        out.push_str(&format!("{i},{}\n", fmt_f64(*v)));
    }
    write_output(args.output.as_deref(), &out)
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let config = ExperimentConfig {
        mode: if args.experiment == 2 {
            ExperimentMode::Budget
        } else {
            ExperimentMode::FixedThreshold
        },
        threshold: args.threshold,
        target_fraction: args.budget,
        params: ReconstructionParams {
            threshold: args.threshold,
            tolerance_ratio: args.tolerance_ratio,
            previous_distance: args.prev_dist,
            subsequent_min_distance: args.min_dist,
            subsequent_max_distance: args.max_dist,
        },
        methods: if args.methods.is_empty() {
            Method::ALL.to_vec()
        } else {
            args.methods.clone()
        },
        seed: args.seed,
    };
    config.validate()?;

    let (name, bundles) = match &args.data {
        Some(dir) => {
            let found = discover_datasets(dir)?;
            if found.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "no *_TRAIN.tsv or *_TRAIN.csv files under {}",
                    dir.display()
                )));
            }
            let bundles = found.iter().map(|d| d.load()).collect::<Result<Vec<_>>>()?;
            let name = dir
                .file_name()
                .and_then(|n| n.to_str())
                .unwrap_or("datasets")
                .to_string();
            (name, bundles)
        }
        None => {
            if args.datasets == 0 {
                return Err(Error::InvalidInput("--datasets must be at least 1".into()));
            }
            let bundles = (0..args.datasets)
                .map(|i| {
                    let name = if args.datasets == 1 {
                        "synthetic".to_string()
                    } else {
                        format!("synthetic-{i:02}")
                    };
                    let spec = match &args.components {
                        Some(text) => {
                            CorpusSpec::new(name, args.length, CorpusSpec::parse_components(text)?)
                        }
                        None => CorpusSpec::mixed(name, args.signals_per_kind, args.length),
                    };
                    generate_synthetic_corpus(args.seed.wrapping_add(i as u64), &spec)
                })
                .collect::<Result<Vec<_>>>()?;
            ("synthetic".to_string(), bundles)
        }
    };

    let report = run_benchmark(name, &bundles, &config)?;
    let formats: Vec<ReportFormat> = args
        .format
        .iter()
        .map(|f| match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        })
        .collect();
    for path in emit_report(&report, &args.out, &formats)? {
        println!("wrote {}", path.display());
    }
    for s in &report.summary {
        println!(
            "{:>2}  {:<10} mean {:.6}  mean rank {:.2}  wins {}",
            s.position, s.method_name, s.mean_rmse, s.mean_rank, s.wins
        );
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<bool> {
    let outcomes = run_checks(&VerifyConfig {
        seed: args.seed,
        samples: args.samples,
        cases: args.cases,
    })?;
    let mut all = true;
    for o in &outcomes {
        all &= o.passed;
        println!(
            "{} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
    }
    Ok(all)
}

fn configure_threads() -> Result<()> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse::<usize>().map_err(|_| {
            Error::InvalidInput(format!(
                "{THREADS_ENV} must be a non-negative integer, got '{v}'"
            ))
        })?,
        _ => 0,
    };
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::InvalidInput(format!("cannot configure thread pool: {e}")))?;
    }
    Ok(())
}

fn exit_code(err: &Error) -> ExitCode {
    ExitCode::from(if err.is_io() { 2 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return exit_code(&e);
    }
    let result = match cli.command {
        Command::Sample(a) => run_sample(a).map(|_| true),
        Command::Reconstruct(a) => run_reconstruct(a).map(|_| true),
        Command::Bench(a) => run_bench(a).map(|_| true),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
