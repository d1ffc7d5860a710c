use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use noma_intersection::config;
use noma_intersection::monte_carlo::{self, Coupling, SlotModel, TrialConfig};
use noma_intersection::outage::{self, Scheme};
use noma_intersection::sweep;
use noma_intersection::validate::{self, ValidationOptions};

/// Outage analysis for cooperative NOMA at road intersections.
#[derive(Parser)]
#[command(name = "noma-intersection", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct McFlags {
    /// Number of Monte Carlo trials.
    #[arg(long)]
    trials: Option<u64>,
    /// Base seed of the counter-based trial streams.
    #[arg(long)]
    seed: Option<u64>,
    /// Field coupling between receivers.
    #[arg(long, value_parser = Coupling::parse)]
    coupling: Option<Coupling>,
    /// Slot-2 interference model.
    #[arg(long, value_parser = SlotModel::parse)]
    slot: Option<SlotModel>,
}

impl McFlags {
    fn apply(&self, mut cfg: TrialConfig) -> TrialConfig {
        if let Some(trials) = self.trials {
            cfg.n_trials = trials;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(coupling) = self.coupling {
            cfg.coupling = coupling;
        }
        if let Some(slot) = self.slot {
            cfg.slot_model = slot;
        }
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form outage report of all four schemes for one scenario.
    Analytic {
        /// Scenario config file.
        #[arg(long)]
        config: PathBuf,
    },
    /// Monte Carlo outage estimate for one scenario.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        mc: McFlags,
    },
    /// Evaluate a parameter sweep described by a config file, writing CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        mc: McFlags,
    },
    /// Run the validation battery; exits nonzero if any check fails.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        mc: McFlags,
    },
}

fn run(cli: Cli) -> noma_intersection::Result<bool> {
    match cli.command {
        Command::Analytic { config } => {
            let scn = config::load_scenario(&config)?;
            println!("scheme      dest1                 dest2                 feasible");
            for scheme in Scheme::ALL {
                let r = outage::report(&scn, scheme)?;
                println!(
                    "{:<11} {:<21} {:<21} {}",
                    scheme.label(),
                    r.p_out_d1,
                    r.p_out_d2,
                    r.feasible
                );
            }
            Ok(true)
        }
        Command::Simulate { config, mc } => {
            let kv = config::KeyValues::load(&config)?;
            let scn = config::scenario_from_values(&kv)?;
            let base = config::trial_config_from_values(&kv)?
                .unwrap_or_else(|| TrialConfig::new(100_000, 0));
            let cfg = mc.apply(base);
            let (d1, d2) = monte_carlo::estimate_outage(&scn, &cfg)?;
            println!("dest mean                  std_err               trials  seed");
            println!(
                "1    {:<21} {:<21} {:<7} {}",
                d1.mean, d1.std_err, d1.n_trials, d1.seed
            );
            println!(
                "2    {:<21} {:<21} {:<7} {}",
                d2.mean, d2.std_err, d2.n_trials, d2.seed
            );
            Ok(true)
        }
        Command::Sweep { config, out, mc } => {
            let kv = config::KeyValues::load(&config)?;
            let mut spec = config::sweep_from_values(&kv)?;
            let base_mc = spec.mc().copied();
            if let Some(cfg) = base_mc {
                spec = spec.with_mc(Some(mc.apply(cfg)));
            } else if mc.trials.is_some() {
                spec = spec.with_mc(Some(mc.apply(TrialConfig::new(100_000, 0))));
            }
            let rows = sweep::run(&spec)?;
            match out {
                Some(path) => {
                    let mut file = std::fs::File::create(&path).map_err(|e| {
                        noma_intersection::Error::Config(format!("{}: {e}", path.display()))
                    })?;
                    sweep::write_csv(&rows, &spec, &mut file).map_err(|e| {
                        noma_intersection::Error::Config(format!("{}: {e}", path.display()))
                    })?;
                }
                None => print!("{}", sweep::csv_string(&rows, &spec)),
            }
            Ok(true)
        }
        Command::Validate { config, mc } => {
            let kv = config::KeyValues::load(&config)?;
            let scn = config::scenario_from_values(&kv)?;
            let base = config::trial_config_from_values(&kv)?
                .unwrap_or_else(|| TrialConfig::new(100_000, 42));
            let opts = ValidationOptions {
                mc: mc.apply(base),
                ..ValidationOptions::default()
            };
            let report = validate::run(&scn, &opts)?;
            print!("{report}");
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
