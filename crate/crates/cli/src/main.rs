//! `memnet` command-line tool.
//!
//! Exit codes: 0 success, 2 configuration or input error, 3 training did not
//! converge, 4 I/O error, 5 netlist self-check failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use memnet::harness::{evaluate, fault_sweep, load_model, model_to_text, FaultKind};
use memnet::imaging::{load_glyphs, GlyphSource};
use memnet::netlist::{self_check, Netlist};
use memnet::{Error, GlyphSet, RunConfig, TrainedModel64};

const EXIT_CONFIG: u8 = 2;
const EXIT_NOT_CONVERGED: u8 = 3;
const EXIT_IO: u8 = 4;
const EXIT_SELF_CHECK: u8 = 5;

#[derive(Parser)]
#[command(
    name = "memnet",
    version,
    about = "Train, evaluate and export resistive memory networks"
)]
struct Cli {
    /// Worker threads for the parallel stages (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutArgs {
    /// Output directory; created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Overwrite existing output files.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run selection, genetic and refinement stages and write the model.
    Train {
        config: PathBuf,
        /// Master seed; defaults to `seed` from the config.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate a model under the config's test protocol.
    Eval {
        model: PathBuf,
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Accuracy under injected resistor faults at increasing rates.
    FaultSweep {
        model: PathBuf,
        config: PathBuf,
        /// Comma-separated, ascending fault rates.
        #[arg(long, value_delimiter = ',', required = true)]
        rates: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        /// open, short or random-revalue.
        #[arg(long, default_value = "open")]
        kind: FaultKind,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Write the model as a SPICE-like netlist after a DC self-check.
    ExportNetlist {
        model: PathBuf,
        /// Seed for the self-check's random input patterns.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print a model's architecture, codebook and training metadata.
    Inspect { model: PathBuf },
    /// Export the built-in glyphs or validate a glyph directory.
    Glyphs {
        #[arg(
            long,
            conflicts_with = "validate",
            required_unless_present = "validate"
        )]
        export: Option<PathBuf>,
        #[arg(long)]
        validate: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

enum Failure {
    Lib(Error),
    NotConverged,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Stage { source, .. } => exit_code(source),
        Error::Io { .. } => EXIT_IO,
        Error::SelfCheck(_) => EXIT_SELF_CHECK,
        Error::SelectionStarvation { .. } => EXIT_NOT_CONVERGED,
        _ => EXIT_CONFIG,
    }
}

/// Collects output files and writes them, plus `manifest.txt`, only after
/// checking that nothing would be overwritten without `--force`.
struct Outputs<'a> {
    args: &'a OutArgs,
    command: &'static str,
    header: Vec<(String, String)>,
    files: Vec<(&'static str, String)>,
}

impl<'a> Outputs<'a> {
    fn new(args: &'a OutArgs, command: &'static str) -> Self {
        Outputs {
            args,
            command,
            header: Vec::new(),
            files: Vec::new(),
        }
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.header.push((key.to_string(), value.to_string()));
    }

    fn file(&mut self, name: &'static str, contents: String) {
        self.files.push((name, contents));
    }

    fn check_free(&self) -> Result<(), Error> {
        refuse_overwrite(&self.args.out, self.names(), self.args.force)
    }

    fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|(n, _)| *n).chain(["manifest.txt"])
    }

    fn write(self) -> Result<(), Error> {
        self.check_free()?;
        let dir = &self.args.out;
        std::fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.clone(),
            source: e,
        })?;
        let mut manifest = format!("command {}\n", self.command);
        for (k, v) in &self.header {
            let _ = writeln!(manifest, "{k} {v}");
        }
        for (name, contents) in &self.files {
            write_file(&dir.join(name), contents)?;
            let _ = writeln!(manifest, "file {name}");
        }
        write_file(&dir.join("manifest.txt"), &manifest)
    }
}

fn refuse_overwrite<'n>(
    dir: &Path,
    names: impl IntoIterator<Item = &'n str>,
    force: bool,
) -> Result<(), Error> {
    if force {
        return Ok(());
    }
    for name in names {
        let path = dir.join(name);
        if path.exists() {
            return Err(Error::Io {
                path,
                source: std::io::Error::new(
                    std::io::ErrorKind::AlreadyExists,
                    "output exists; pass --force to overwrite",
                ),
            });
        }
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn load_run(config: &Path) -> Result<(RunConfig, GlyphSet), Error> {
    let cfg = RunConfig::load(config)?;
    let glyphs = load_glyphs(&cfg.glyph_source())?;
    Ok((cfg, glyphs))
}

fn load_model64(path: &Path) -> Result<TrainedModel64, Error> {
    load_model(path)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Train { config, seed, out } => {
            let (cfg, glyphs) = load_run(&config)?;
            let seed = seed.unwrap_or(cfg.seed);
            let mut outputs = Outputs::new(&out, "train");
            outputs.file("model.txt", String::new());
            outputs.file("training_log.txt", String::new());
            outputs.check_free()?;
            outputs.files.clear();

            let arch = cfg.arch::<f64>()?;
            let (model, log) =
                memnet::evolution::train_with_log(&arch, &glyphs, &cfg.train_config()?, seed)?;
            println!(
                "converged {} after {} refine iterations, final ABE {:.4}, min spacing {}",
                model.meta.converged,
                model.meta.iterations,
                model.meta.final_abe,
                model.codebook.min_pairwise_distance()?
            );
            outputs.note("config", config.display());
            outputs.note("seed", seed);
            outputs.note("converged", model.meta.converged);
            outputs.file("model.txt", model_to_text(&model));
            outputs.file("training_log.txt", log.to_text());
            outputs.write()?;
            if !model.meta.converged {
                return Err(Failure::NotConverged);
            }
        }
        Command::Eval {
            model,
            config,
            seed,
            out,
        } => {
            let (cfg, glyphs) = load_run(&config)?;
            let seed = seed.unwrap_or(cfg.seed);
            let mut outputs = Outputs::new(&out, "eval");
            outputs.file("report.txt", String::new());
            outputs.check_free()?;
            outputs.files.clear();

            let trained = load_model64(&model)?;
            let report = evaluate(&trained, &glyphs, &cfg.test, seed)?;
            println!(
                "accuracy {:.6}  ABE {:.6}  max bit error {}",
                report.accuracy, report.abe, report.max_bit_error
            );
            outputs.note("model", model.display());
            outputs.note("config", config.display());
            outputs.note("seed", seed);
            outputs.file("report.txt", report.to_text());
            outputs.file("summary.csv", report.summary_csv());
            outputs.file("confusion.csv", report.confusion_csv());
            outputs.write()?;
        }
        Command::FaultSweep {
            model,
            config,
            rates,
            reps,
            kind,
            seed,
            out,
        } => {
            let (cfg, glyphs) = load_run(&config)?;
            let seed = seed.unwrap_or(cfg.seed);
            let mut outputs = Outputs::new(&out, "fault-sweep");
            outputs.file("faults.csv", String::new());
            outputs.check_free()?;
            outputs.files.clear();

            let trained = load_model64(&model)?;
            let sweep = fault_sweep(&trained, &glyphs, &cfg.test, kind, &rates, reps, seed)?;
            print!("{}", sweep.to_csv());
            outputs.note("model", model.display());
            outputs.note("config", config.display());
            outputs.note("seed", seed);
            outputs.note("kind", kind);
            outputs.file("faults.csv", sweep.to_csv());
            outputs.write()?;
        }
        Command::ExportNetlist { model, seed, out } => {
            let mut outputs = Outputs::new(&out, "export-netlist");
            outputs.file("netlist.cir", String::new());
            outputs.check_free()?;
            outputs.files.clear();

            let trained = load_model64(&model)?;
            let net = trained.network()?;
            let text = Netlist::from_network(&net).to_text();
            // Check what was written, not the in-memory statements.
            let parsed = Netlist::<f64>::parse(&text)?;
            let report = self_check(&parsed, &net, 100, seed)?;
            println!(
                "{} resistors, {} inverters; self-check passed on {} patterns (max rel. error {:.2e})",
                parsed.resistor_count(),
                parsed.inverter_count(),
                report.trials,
                report.max_rel_error
            );
            outputs.note("model", model.display());
            outputs.note("self_check_seed", seed);
            outputs.file("netlist.cir", text);
            outputs.write()?;
        }
        Command::Inspect { model } => {
            let m = load_model64(&model)?;
            let arch = &m.arch;
            println!("inputs      {}", arch.n_inputs());
            println!("fan-ins     {:?}", arch.fan_ins());
            println!("layers      {:?}", arch.layer_sizes());
            println!("resistors   {}", arch.rset_len());
            println!("seed        {}", m.meta.seed);
            println!("converged   {}", m.meta.converged);
            println!("iterations  {}", m.meta.iterations);
            println!("final ABE   {:.6}", m.meta.final_abe);
            println!("min spacing {}", m.codebook.min_pairwise_distance()?);
            print!("{}", m.codebook.to_text());
        }
        Command::Glyphs {
            export,
            validate,
            force,
        } => {
            if let Some(dir) = export {
                let set = GlyphSet::builtin();
                let names: Vec<String> = ('A'..='Z').map(|c| format!("{c}.pbm")).collect();
                refuse_overwrite(&dir, names.iter().map(String::as_str), force)?;
                set.export(&dir)?;
                println!("wrote 26 glyphs to {}", dir.display());
            } else if let Some(dir) = validate {
                let set = load_glyphs(&GlyphSource::Dir(dir.clone()))?;
                let ink: usize = set.bitmaps().iter().map(|b| b.ink_count()).sum();
                println!(
                    "{}: 26 glyphs, 36x36, {ink} ink pixels in total",
                    dir.display()
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NotConverged) => {
            eprintln!("training did not converge; best model written anyway");
            ExitCode::from(EXIT_NOT_CONVERGED)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
