use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mltk::core::{
    evaluate, partition, partition_2x5, sparsity, MlDataset, PartitionSet, PartitionSpec, Scheme, Strategy,
};
use mltk::export::{write_dataset, write_partitions, WriteOptions};
use mltk::indices::index_document;
use mltk::predictions::read_predictions;
use mltk::repo::{build_repository, serve, Assets, BuildOptions, DatasetRecord, RepoConfig};
use mltk::{read_any, Error, Format, ReadOptions, Result, Schema};

#[derive(Parser)]
#[command(name = "mltk", version, about = "Multi-label dataset toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the characterization measures and label table of a dataset.
    Info {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Write a dataset in one or more formats.
    Convert {
        #[command(flatten)]
        input: Input,
        /// Comma-separated output formats.
        #[arg(long, value_delimiter = ',', required = true)]
        to: Vec<Format>,
        #[command(flatten)]
        output: Output,
    },
    /// Split a dataset into train/test folds or parts.
    Partition {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "iterative")]
        strategy: Strategy,
        /// holdout[:percent], kfolds[:k], ratios:r1,r2,... or 2x5.
        #[arg(long, default_value = "kfolds:5")]
        scheme: SchemeArg,
        /// For 2x5 the second run uses seed + 1.
        #[arg(long, default_value_t = mltk::core::partition::DEFAULT_SEED)]
        seed: u64,
        /// Print the partition indices as JSON (the default).
        #[arg(long, conflicts_with = "write")]
        indices: bool,
        /// Export the partitions in these comma-separated formats.
        #[arg(long, value_delimiter = ',')]
        write: Vec<Format>,
        #[command(flatten)]
        output: Output,
    },
    /// Compute evaluation metrics from a CSV of truth, predictions and scores.
    Evaluate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the share of zero-valued cells.
    Sparsity {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Build a static dataset repository from a directory of dataset files.
    RepoBuild {
        input_dir: PathBuf,
        /// Defaults to $MLTK_OUT_DIR, then ./site.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// JSON file with title, accent_color, partition and formats.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Only write metadata and full datasets.
        #[arg(long)]
        no_partitions: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory with a built catalog bundle to use instead of the embedded one.
        #[arg(long, conflicts_with = "no_site")]
        assets: Option<PathBuf>,
        /// Skip index.html and assets/.
        #[arg(long)]
        no_site: bool,
        /// Serve the result over HTTP after building.
        #[arg(long, value_name = "ADDR", num_args = 0..=1, default_missing_value = "127.0.0.1:8000")]
        serve: Option<String>,
    },
    /// Print the BibTeX entry of a dataset.
    Cite {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Input {
    path: PathBuf,
    /// Input format; guessed from the extension and header otherwise.
    #[arg(long, visible_alias = "format")]
    from: Option<Format>,
    /// MULAN label XML file.
    #[arg(long, conflicts_with = "labels")]
    xml: Option<PathBuf>,
    /// Label-names file for CSV and LibSVM input.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Number of labels in LibSVM input.
    #[arg(long)]
    num_labels: Option<usize>,
    /// Dataset whose attribute names and types the CSV or LibSVM input follows.
    #[arg(long)]
    schema: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    /// Defaults to $MLTK_OUT_DIR, then the current directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    basename: Option<String>,
    /// Sparse ARFF data sections.
    #[arg(long)]
    sparse: bool,
    #[arg(long)]
    overwrite: bool,
}

#[derive(Clone)]
enum SchemeArg {
    Single(Scheme),
    TwoByFive,
}

impl std::str::FromStr for SchemeArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "2x5" | "5x2" | "2x5fcv" => Ok(SchemeArg::TwoByFive),
            _ => s.parse().map(SchemeArg::Single),
        }
    }
}

fn out_dir(flag: Option<PathBuf>, fallback: &str) -> PathBuf {
    flag.or_else(|| std::env::var_os("MLTK_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(fallback))
}

impl Input {
    fn load(&self) -> Result<MlDataset> {
        let schema = match &self.schema {
            Some(path) => Some(Schema::of(&read_any(path, None, &ReadOptions::default())?.0)),
            None => None,
        };
        let options = ReadOptions {
            companion: self.xml.clone().or_else(|| self.labels.clone()),
            num_labels: self.num_labels,
            schema,
            name: None,
        };
        Ok(read_any(&self.path, self.from, &options)?.0)
    }
}

impl Output {
    fn options(&self, formats: Vec<Format>) -> WriteOptions {
        WriteOptions {
            formats,
            sparse: self.sparse,
            basename: self.basename.clone(),
            overwrite: self.overwrite,
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |v| format!("{v:.6}"))
}

fn print_info(record: &DatasetRecord, out: &mut impl Write) -> std::io::Result<()> {
    let m = &record.measures;
    writeln!(out, "{}", record.name)?;
    writeln!(out, "  attributes          {}", m.num_attributes)?;
    writeln!(out, "  inputs              {}", m.num_inputs)?;
    writeln!(out, "  labels              {}", m.num_labels)?;
    writeln!(out, "  instances           {}", m.num_instances)?;
    writeln!(out, "  labelsets           {}", m.num_labelsets)?;
    writeln!(out, "  single labelsets    {}", m.num_single_labelsets)?;
    writeln!(out, "  max frequency       {}", m.max_frequency)?;
    writeln!(out, "  cardinality         {:.6}", m.cardinality)?;
    writeln!(out, "  density             {:.6}", m.density)?;
    writeln!(out, "  mean IR             {}", opt(m.mean_ir))?;
    writeln!(out, "  SCUMBLE             {:.6}", m.scumble)?;
    writeln!(out, "  SCUMBLE CV          {:.6}", m.scumble_cv)?;
    writeln!(out, "  TCS                 {:.6}", m.tcs)?;
    writeln!(out)?;
    let width = record.labels.iter().map(|l| l.name.len()).max().unwrap_or(5).max(5);
    writeln!(
        out,
        "  {:width$}  {:>8}  {:>9}  {:>10}  {:>9}",
        "label", "count", "freq", "IRLbl", "SCUMBLE"
    )?;
    for l in &record.labels {
        writeln!(
            out,
            "  {:width$}  {:>8}  {:>9.6}  {:>10}  {:>9.6}",
            l.name,
            l.count,
            l.frequency,
            opt(l.irlbl),
            l.scumble
        )?;
    }
    Ok(())
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn partition_sets(
    dataset: &MlDataset,
    strategy: Strategy,
    scheme: &SchemeArg,
    seed: u64,
) -> Result<(Vec<PartitionSet>, String)> {
    Ok(match scheme {
        SchemeArg::TwoByFive => (
            partition_2x5(dataset, strategy, (seed, seed.wrapping_add(1)))?.to_vec(),
            "2x5".to_string(),
        ),
        SchemeArg::Single(s) => (
            vec![partition(
                dataset,
                &PartitionSpec::new(strategy, s.clone()).with_seed(seed),
            )?],
            s.to_string(),
        ),
    })
}

fn report_paths(paths: &[PathBuf]) {
    for p in paths {
        println!("{}", p.display());
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Info { input, json } => {
            let record = DatasetRecord::describe(&input.load()?);
            if json {
                print_json(&record)?;
            } else {
                print_info(&record, &mut std::io::stdout().lock()).map_err(|e| Error::io("<stdout>", e))?;
            }
        }
        Command::Convert { input, to, output } => {
            let dataset = input.load()?;
            let dir = out_dir(output.out_dir.clone(), ".");
            report_paths(&write_dataset(&dataset, &dir, &output.options(to))?);
        }
        Command::Partition {
            input,
            strategy,
            scheme,
            seed,
            indices: _,
            write,
            output,
        } => {
            let dataset = input.load()?;
            let (sets, scheme_text) = partition_sets(&dataset, strategy, &scheme, seed)?;
            if write.is_empty() {
                print_json(&index_document(&sets, &scheme_text))?;
            } else {
                let dir = out_dir(output.out_dir.clone(), ".");
                report_paths(&write_partitions(&dataset, &sets, &dir, &output.options(write))?);
            }
        }
        Command::Evaluate { file, json } => {
            let report = evaluate(&read_predictions(&file)?);
            if json {
                print_json(&report)?;
            } else {
                print_evaluation(&report);
            }
        }
        Command::Sparsity { input, json } => {
            let report = sparsity(&input.load()?);
            if json {
                print_json(&report)?;
            } else {
                println!("{:.8}", report.ratio);
                println!("with summary columns {:.8}", report.ratio_with_summary_columns);
            }
        }
        Command::RepoBuild {
            input_dir,
            out_dir: out,
            config,
            no_partitions,
            jobs,
            assets,
            no_site,
            serve: addr,
        } => {
            let mut config = match config {
                Some(path) => RepoConfig::load(&path)?,
                None => RepoConfig::default(),
            };
            if no_partitions {
                config.partition = false;
            }
            let out = out_dir(out, "site");
            let options = BuildOptions {
                config,
                jobs,
                site: !no_site,
                assets: assets.map_or(Assets::Embedded, Assets::Dir),
            };
            let summary = build_repository(&input_dir, &out, &options)?;
            for row in &summary.manifest.index.datasets {
                println!("{}", row.name);
            }
            for path in &summary.skipped {
                log::warn!("skipped {}", path.display());
            }
            for (path, reason) in &summary.failures {
                let path = path.display().to_string();
                match reason.starts_with(&path) {
                    true => eprintln!("error: {reason}"),
                    false => eprintln!("error: {path}: {reason}"),
                }
            }
            if let Some(addr) = addr {
                serve(&out, &addr)?;
            }
            if !summary.failures.is_empty() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Cite { input } => {
            let dataset = input.load()?;
            match dataset.citation() {
                Some(c) => print!(
                    "{}",
                    if c.ends_with('\n') {
                        c.to_string()
                    } else {
                        format!("{c}\n")
                    }
                ),
                None => return Err(Error::NoCitation(dataset.name().to_string())),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_evaluation(report: &mltk::core::EvaluationReport) {
    if let Some(e) = &report.example_based {
        println!("example-based");
        println!("  hamming loss        {:.6}", e.hamming_loss);
        println!("  accuracy            {:.6}", e.accuracy);
        println!("  precision           {:.6}", e.precision);
        println!("  recall              {:.6}", e.recall);
        println!("  F-measure           {:.6}", e.f_measure);
        println!("  subset accuracy     {:.6}", e.subset_accuracy);
    }
    for (title, block) in [
        ("macro-averaged", &report.macro_averaged),
        ("micro-averaged", &report.micro_averaged),
    ] {
        if let Some(b) = block {
            println!("{title}");
            println!("  precision           {:.6}", b.precision);
            println!("  recall              {:.6}", b.recall);
            println!("  F-measure           {:.6}", b.f_measure);
        }
    }
    if let Some(r) = &report.ranking {
        println!("ranking");
        println!("  one-error           {}", opt(r.one_error));
        println!("  ranking loss        {}", opt(r.ranking_loss));
        println!("  coverage            {}", opt(r.coverage));
        println!("  average precision   {}", opt(r.average_precision));
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
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
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_data_error() { 2 } else { 1 })
        }
    }
}
