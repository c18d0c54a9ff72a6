use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use equistat::harness::{acceptance, emit_report, run_experiment, ConfigOverrides};

/// Deterministic-sample estimator experiments and table reproductions.
#[derive(Debug, Parser)]
#[command(name = "equistat", version)]
struct Cli {
    /// Built-in table setup to start from: 1, 2 or 3.
    #[arg(long)]
    table: Option<String>,
    /// Noise family: gaussian or cauchy.
    #[arg(long)]
    dist: Option<String>,
    /// Noise location.
    #[arg(long, allow_hyphen_values = true)]
    loc: Option<String>,
    /// Noise scale.
    #[arg(long)]
    scale: Option<String>,
    /// Useful signal added to the noise.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Probe point x* for cdf_point, limsup and liminf.
    #[arg(long, allow_hyphen_values = true)]
    probe: Option<String>,
    /// Sample sizes: a:b:step, a comma list, or one size.
    #[arg(long = "n-grid")]
    n_grid: Option<String>,
    /// Comma-separated estimator names.
    #[arg(long)]
    estimators: Option<String>,
    /// Sample generator: weyl or pseudo.
    #[arg(long)]
    gen: Option<String>,
    /// Weyl multiplier: pi, sqrt2 or phi.
    #[arg(long)]
    alpha: Option<String>,
    /// Fixed-point working precision of the Weyl terms.
    #[arg(long = "precision-bits")]
    precision_bits: Option<String>,
    /// Seed of the pseudo-random generator.
    #[arg(long)]
    seed: Option<String>,
    /// Tail start: half or a fixed index.
    #[arg(long)]
    n0: Option<String>,
    /// Output format: csv or md.
    #[arg(long)]
    format: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<String>,
    /// `key = value` file read before the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Run the acceptance checks instead of an experiment.
    #[arg(long)]
    check: bool,
}

impl Cli {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            table: self.table.clone(),
            dist: self.dist.clone(),
            loc: self.loc.clone(),
            scale: self.scale.clone(),
            theta: self.theta.clone(),
            probe: self.probe.clone(),
            n_grid: self.n_grid.clone(),
            estimators: self.estimators.clone(),
            gen: self.gen.clone(),
            alpha: self.alpha.clone(),
            precision_bits: self.precision_bits.clone(),
            seed: self.seed.clone(),
            n0: self.n0.clone(),
            format: self.format.clone(),
            out: self.out.clone(),
            ..ConfigOverrides::default()
        }
    }
}

fn run(cli: &Cli) -> Result<(), String> {
    let file = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            ConfigOverrides::parse_text(&text).map_err(|e| e.to_string())?
        }
        None => ConfigOverrides::default(),
    };
    let cfg = file.merge(cli.overrides()).resolve().map_err(|e| e.to_string())?;
    let report = run_experiment(&cfg).map_err(|e| e.to_string())?;
    let text = emit_report(&report, cfg.output.format);
    match &cfg.output.path {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    if cli.check {
        let outcomes = acceptance::run_all();
        for o in &outcomes {
            println!("{o}");
        }
        let failed = outcomes.iter().filter(|o| !o.passed).count();
        println!("{} of {} criteria passed", outcomes.len() - failed, outcomes.len());
        return ExitCode::from(if failed == 0 { 0 } else { 2 });
    }

    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("equistat: {msg}");
            ExitCode::from(1)
        }
    }
}
