use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fdcrn::harness::{
    emit_csv, load_config, run_experiment, summarize, write_csv, ExperimentKind, ExperimentSpec,
};
use fdcrn::model::NetworkConfig;

#[derive(Parser, Debug)]
#[command(author, version, about = "Power control for full-duplex cognitive relay networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Network configuration file (`key = value` lines).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Seed of the first channel realization.
    #[arg(long)]
    seed: Option<u64>,

    /// Number of channel realizations.
    #[arg(long)]
    realizations: Option<usize>,

    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an experiment and write its rows as CSV.
    Run {
        #[arg(long)]
        experiment: ExperimentKind,
        #[command(flatten)]
        common: Common,
    },
    /// Run the curvature checks and print one line per check.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Compare the optimized rate with the brute-force oracle per interference cap.
    OracleGap {
        #[command(flatten)]
        common: Common,
    },
}

impl Common {
    fn config(&self) -> fdcrn::Result<NetworkConfig> {
        match &self.config {
            Some(p) => load_config(p),
            None => Ok(NetworkConfig::default()),
        }
    }

    fn spec(&self, kind: ExperimentKind) -> ExperimentSpec {
        let mut spec = ExperimentSpec::preset(kind);
        if let Some(s) = self.seed {
            spec.base_seed = s;
        }
        if let Some(n) = self.realizations {
            spec.num_realizations = n;
        }
        spec
    }

    fn write(&self, rows: &[fdcrn::harness::ResultRow]) -> fdcrn::Result<()> {
        match &self.out {
            Some(p) => emit_csv(rows, p),
            None => write_csv(rows, std::io::stdout().lock()).map_err(|source| fdcrn::Error::Csv {
                path: PathBuf::from("<stdout>"),
                source,
            }),
        }
    }
}

fn run(cli: Cli) -> fdcrn::Result<bool> {
    match cli.command {
        Command::Run { experiment, common } => {
            let rows = run_experiment(&common.spec(experiment), &common.config()?)?;
            common.write(&rows)?;
            Ok(true)
        }
        Command::Verify { common } => {
            let rows = run_experiment(&common.spec(ExperimentKind::LemmaSuite), &common.config()?)?;
            let mut ok = true;
            for r in &rows {
                let failures = r.failures.unwrap_or(0);
                let pass = failures == 0 && r.checked.unwrap_or(0) > 0;
                ok &= pass;
                println!(
                    "{} zeta={} {}: {} of {} failed",
                    if pass { "PASS" } else { "FAIL" },
                    r.zeta,
                    r.check.as_deref().unwrap_or(""),
                    failures,
                    r.checked.unwrap_or(0),
                );
            }
            if common.out.is_some() {
                common.write(&rows)?;
            }
            Ok(ok)
        }
        Command::OracleGap { common } => {
            let rows = run_experiment(&common.spec(ExperimentKind::OptimalityGap), &common.config()?)?;
            println!(
                "{:<12} {:>8} {:>10} {:>10} {:>9} {:>9}",
                "scenario", "ibar_db", "solved", "optimal", "gap_%", "max_gap_%"
            );
            for c in summarize(&rows) {
                println!(
                    "{:<12} {:>8} {:>10.4} {:>10.4} {:>9.4} {:>9.4}",
                    c.scenario.map_or("", |s| s.name()),
                    c.ibar_db.unwrap_or(f64::NAN),
                    c.mean_rate,
                    c.mean_oracle.unwrap_or(f64::NAN),
                    c.mean_gap_pct.unwrap_or(f64::NAN),
                    c.max_gap_pct.unwrap_or(f64::NAN),
                );
            }
            if common.out.is_some() {
                common.write(&rows)?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
