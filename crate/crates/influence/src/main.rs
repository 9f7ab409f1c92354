use std::path::PathBuf;
use std::process::ExitCode;

use apriori_influence::commands::{self, MeasureKind, PartitionSource, RunConfig};
use apriori_influence::csvio::Schema;
use apriori_influence::report::Format;
use apriori_influence::{CliError, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "influence", version, about = "Feature influence under a-priori unions")]
struct Cli {
    /// Print errors as a JSON object on stderr.
    #[arg(long, global = true)]
    error_json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an influence measure or power index.
    Compute(ComputeArgs),
    /// Correlate two reports and compare their top features.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 3)]
        top_k: usize,
    },
    /// Draw a class-balanced subsample of a dataset.
    Subsample {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        per_class: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute the four-player worked example for every partition.
    Table4,
}

#[derive(Args)]
struct InputArgs {
    /// Input CSV with a header row.
    #[arg(long)]
    data: PathBuf,
    /// Column holding the predicted response.
    #[arg(long, conflicts_with = "pred_file")]
    pred_col: Option<String>,
    /// One-column CSV of predictions, one per data row.
    #[arg(long)]
    pred_file: Option<PathBuf>,
    /// Comma-separated feature columns (default: all other columns).
    #[arg(long, value_delimiter = ',')]
    features: Option<Vec<String>>,
    /// Column of observation counts.
    #[arg(long)]
    freq_col: Option<String>,
}

impl InputArgs {
    fn schema(&self) -> Schema {
        Schema {
            features: self.features.clone(),
            response: self.pred_col.clone(),
            predictions: self.pred_file.clone(),
            freq: self.freq_col.clone(),
            state_counts: None,
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, conflicts_with = "game")]
    data: Option<PathBuf>,
    #[arg(long, requires = "data", conflicts_with = "pred_file")]
    pred_col: Option<String>,
    #[arg(long, requires = "data")]
    pred_file: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', requires = "data")]
    features: Option<Vec<String>>,
    #[arg(long, requires = "data")]
    freq_col: Option<String>,
    /// Game JSON: `{"weights": [...], "quota": q}` or `{"table": [...]}`.
    #[arg(long)]
    game: Option<PathBuf>,
    /// `singletons`, `cluster:k=K[,linkage=complete|average|single]`, or a
    /// partition JSON file.
    #[arg(long, default_value = "singletons")]
    partition: String,
    /// Dependency model JSON mapping features to `+` or `-`.
    #[arg(long)]
    dep: Option<PathBuf>,
    #[arg(long, value_enum)]
    measure: MeasureKind,
    /// Divide raw counts by the restricted space size.
    #[arg(long)]
    normalize: bool,
    /// Monte-Carlo samples per player.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Balanced subsample with this many observations per class.
    #[arg(long, requires = "data")]
    per_class: Option<u64>,
    #[arg(long, default_value_t = 0)]
    subsample_seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

impl ComputeArgs {
    fn config(self) -> Result<RunConfig> {
        let partition: PartitionSource = self.partition.parse()?;
        Ok(RunConfig {
            data: self.data,
            schema: Schema {
                features: self.features,
                response: self.pred_col,
                predictions: self.pred_file,
                freq: self.freq_col,
                state_counts: None,
            },
            game: self.game,
            partition,
            dependency: self.dep,
            measure: self.measure,
            normalize: self.normalize,
            mc_samples: self.samples,
            mc_seed: self.seed,
            subsample: self.per_class.map(|n| (n, self.subsample_seed)),
            threads: self.threads,
            out: self.out,
            format: self.format,
        })
    }
}

fn run(command: Command) -> Result<()> {
    let outcome = match command {
        Command::Compute(args) => commands::compute(&args.config()?)?,
        Command::Compare { a, b, top_k } => commands::compare(&a, &b, top_k)?,
        Command::Subsample {
            input,
            per_class,
            seed,
            out,
        } => commands::subsample(&input.data, &input.schema(), per_class, seed, &out)?,
        Command::Table4 => {
            let (text, mismatches) = commands::table4()?;
            print!("{text}");
            if mismatches > 0 {
                return Err(CliError::SelfTestFailure(mismatches));
            }
            eprintln!("table4: all 15 scenarios match");
            return Ok(());
        }
    };
    if outcome.to_stdout {
        print!("{}", outcome.text);
    }
    eprintln!("{}", outcome.summary);
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are validation errors; help and version are not errors
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if cli.error_json {
                eprintln!("{}", e.to_json());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
