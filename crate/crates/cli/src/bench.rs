use std::path::PathBuf;

use clap::Args;
use rqcs::attack::DEFAULT_MAX_RETRIES;
use rqcs::experiment::{run_bench, run_trial, trial_seed, BenchRow, TrialOutcome};
use rqcs::params::INSTANCES;
use rqcs::Params;
use serde::Serialize;

use crate::{emit, seed_arg, write_text, CliError, CliResult};

#[derive(Args)]
pub struct BenchArgs {
    /// "all" or a comma-separated list (instance names or custom:m:n:w:w_g:w_r).
    #[arg(long, default_value = "all")]
    instances: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Master seed as up to 64 hex digits.
    #[arg(long)]
    seed: String,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    max_retries: usize,
    /// Re-run only this trial of each instance and print its outcome.
    #[arg(long)]
    only_trial: Option<u64>,
}

#[derive(Serialize)]
struct BenchJson<'a> {
    master_seed: String,
    max_retries: usize,
    rows: &'a [BenchRow],
    trials: Vec<TrialJson<'a>>,
}

#[derive(Serialize)]
struct TrialJson<'a> {
    trial_seed: String,
    #[serde(flatten)]
    outcome: &'a TrialOutcome,
}

fn parse_instances(list: &str) -> CliResult<Vec<Params>> {
    if list.eq_ignore_ascii_case("all") {
        return INSTANCES
            .iter()
            .map(|i| Params::setup(i.name).map_err(CliError::from))
            .collect();
    }
    list.split(',')
        .map(|name| Params::setup(name.trim()).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

pub fn run(a: BenchArgs) -> CliResult<()> {
    let master = seed_arg(&a.seed)?;
    let instances = parse_instances(&a.instances)?;
    let with_seed = |o: &'_ TrialOutcome, p: &Params| -> String {
        hex::encode(trial_seed(&master, &p.token(), o.trial))
    };

    if let Some(trial) = a.only_trial {
        for p in &instances {
            let outcome = run_trial(p, &master, trial, a.max_retries);
            let line = TrialJson {
                trial_seed: with_seed(&outcome, p),
                outcome: &outcome,
            };
            emit(&serde_json::to_string(&line).expect("json"));
        }
        return Ok(());
    }

    if a.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let jobs = if a.jobs == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        a.jobs
    };
    let (rows, outcomes) = run_bench(&instances, a.trials, &master, jobs, a.max_retries);

    emit(&format!(
        "{:<8} {:<22} {:>8} {:>12} {:>12} {:>7} {:>8} {:>8}",
        "instance",
        "(q,m,n,w)",
        "security",
        "mean KRA s",
        "median s",
        "trials",
        "success",
        "retries"
    ));
    for r in &rows {
        emit(&format!(
            "{:<8} {:<22} {:>8} {:>12.4} {:>12.4} {:>7} {:>8.3} {:>8.3}",
            r.instance,
            r.params,
            r.claimed_security,
            r.mean_attack_seconds,
            r.median_attack_seconds,
            r.trials,
            r.success_rate,
            r.mean_retries
        ));
    }

    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &rows {
            w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        write_text(path, &String::from_utf8(bytes).expect("csv is utf-8"))?;
    }
    if let Some(path) = &a.json {
        // outcomes come back grouped by instance, `trials` apiece
        let trials = outcomes
            .chunks(a.trials as usize)
            .zip(&instances)
            .flat_map(|(chunk, p)| {
                chunk.iter().map(move |o| TrialJson {
                    trial_seed: with_seed(o, p),
                    outcome: o,
                })
            })
            .collect();
        let doc = BenchJson {
            master_seed: hex::encode(master),
            max_retries: a.max_retries,
            rows: &rows,
            trials,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("json");
        text.push('\n');
        write_text(path, &text)?;
    }
    Ok(())
}
