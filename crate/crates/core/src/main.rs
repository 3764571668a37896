use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use seat2head::io::bench::{benchmark, BenchReport};
use seat2head::io::compare::compare;
use seat2head::io::config::RunConfig;
use seat2head::io::report::{emit_report, msi_to_csv, ReportPaths};
use seat2head::io::synth::{broadband_trace, synth_trace, SynthComponent};
use seat2head::io::trace::{load_trace, save_trace};
use seat2head::io::write_atomic;
use seat2head::{builtin_bundle, run_svc, transmit_head, Error, ModelId, MotionTrace, Result};

/// Seat-to-head motion transmission and comfort assessment.
#[derive(Parser, Debug)]
#[command(name = "seat2head", version)]
struct Cli {
    /// Run configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Human model: EXP, AHM, EHM or NHM. Overrides the config.
    #[arg(long, global = true)]
    model: Option<ModelId>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TraceArg {
    /// Trace CSV; overrides the config.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Carry a seat trace to the head; writes head.csv.
    Transmit(TraceArg),
    /// Full assessment; writes report.json, msi.csv and report.svg.
    Assess(TraceArg),
    /// Assess under several models; writes comparison.csv and prints a table.
    Compare {
        #[command(flatten)]
        trace: TraceArg,
        /// Comma-separated model ids.
        #[arg(long, value_delimiter = ',', default_value = "EXP,AHM,EHM,NHM")]
        models: Vec<ModelId>,
    },
    /// Run the SVC model on a head trace; writes msi.csv.
    Svc(TraceArg),
    /// Write a synthetic seat trace.
    Synth {
        /// JSON list of components; without it a broadband 6-axis trace is made.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 600.0)]
        duration: f64,
        #[arg(long, default_value_t = 100.0)]
        rate: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// File name inside the output directory.
        #[arg(long, default_value = "seat.csv")]
        name: String,
    },
    /// Time transmit + assess on a synthetic trace.
    Bench {
        #[arg(long, default_value_t = 19807.0)]
        duration: f64,
        #[arg(long, default_value_t = 100.0)]
        rate: f64,
        /// Previous bench JSON; fail if the realtime factor dropped by more than 2x.
        #[arg(long)]
        baseline: Option<PathBuf>,
    },
}

struct Context {
    config: RunConfig,
    out: PathBuf,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self> {
        let mut config = match &cli.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(m) = cli.model {
            config.model = Some(m);
            config.manifest = None;
        }
        let out = cli.out.clone().or_else(|| config.out_dir.clone()).unwrap_or_else(|| PathBuf::from("."));
        std::fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
        Ok(Context { config, out })
    }

    fn trace(&self, arg: &TraceArg) -> Result<MotionTrace> {
        match arg.trace.as_ref().or(self.config.trace.as_ref()) {
            Some(p) => load_trace(p),
            None => Err(Error::Config("no trace given (use --trace or the config's \"trace\")".into())),
        }
    }

    fn write(&self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.out.join(name);
        write_atomic(&path, bytes)?;
        Ok(path)
    }
}

fn run(cli: Cli) -> Result<()> {
    let ctx = Context::new(&cli)?;
    match &cli.command {
        Command::Transmit(t) => {
            let seat = ctx.trace(t)?;
            let bundle = ctx.config.bundle()?;
            let head = transmit_head(&seat, &bundle)?.with_frame_label("head");
            let path = ctx.out.join("head.csv");
            save_trace(&path, &head)?;
            println!("{}", path.display());
        }
        Command::Assess(t) => {
            let seat = ctx.trace(t)?;
            let bundle = ctx.config.bundle()?;
            let report = seat2head::full_assessment_with(&seat, &bundle, &ctx.config.assessment_config()?)?;
            let written = emit_report(&report, &ReportPaths::in_dir(&ctx.out))?;
            println!(
                "{} rc_total={} ms_total={} msi_final={}",
                written.model_id, written.rc.total, written.ms.total, written.msi.final_percent
            );
        }
        Command::Compare { trace, models } => {
            let seat = ctx.trace(trace)?;
            let bundles = models
                .iter()
                .map(|&m| ctx.config.resample(builtin_bundle(m)))
                .collect::<Result<Vec<_>>>()?;
            let table = compare(&seat, &bundles, &ctx.config.assessment_config()?)?;
            ctx.write("comparison.csv", table.to_csv().as_bytes())?;
            print!("{}", table.to_pretty());
        }
        Command::Svc(t) => {
            let head = ctx.trace(t)?;
            let series = run_svc(&head, &ctx.config.svc)?;
            ctx.write("msi.csv", msi_to_csv(&series).as_bytes())?;
            println!("msi_final={}", series.final_value());
        }
        Command::Synth { spec, duration, rate, seed, name } => {
            let trace = match spec {
                Some(p) => synth_trace(&read_spec(p)?, *duration, *rate)?,
                None => broadband_trace(*duration, *rate, *seed)?,
            };
            let path = ctx.out.join(name);
            save_trace(&path, &trace)?;
            println!("{}", path.display());
        }
        Command::Bench { duration, rate, baseline } => {
            let bundle = ctx.config.bundle()?;
            let report = benchmark(*duration, *rate, &bundle)?;
            let json = serde_json::to_string_pretty(&report)?;
            ctx.write("bench.json", json.as_bytes())?;
            println!("{json}");
            if let Some(b) = baseline {
                check_regression(&report, b)?;
            }
        }
    }
    Ok(())
}

fn read_spec(path: &Path) -> Result<Vec<SynthComponent>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn check_regression(report: &BenchReport, baseline: &Path) -> Result<()> {
    let text = std::fs::read_to_string(baseline).map_err(|e| Error::io(baseline, e))?;
    let base: BenchReport =
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", baseline.display())))?;
    if report.realtime_factor * 2.0 < base.realtime_factor {
        return Err(Error::Numeric(format!(
            "realtime factor {:.0} regressed more than 2x against baseline {:.0}",
            report.realtime_factor, base.realtime_factor
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("error[usage]: {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {msg}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
