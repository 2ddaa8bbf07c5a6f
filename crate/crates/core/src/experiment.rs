//! Repeated key-recovery trials and their aggregation into timing rows.
//!
//! Trial seeds come from a counter scheme over the master seed:
//!
//! ```text
//! trial_seed = SHA3-256("RQCS-bench/v1" || master_seed || instance_token || u64_le(trial))
//! ```
//!
//! so any single trial can be re-run on its own.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha3::{Digest, Sha3_256};

use crate::attack::{forge, run_attack, KeyMatch, SelfOracle};
use crate::params::Params;
use crate::scheme::{keygen, verify};

pub type Seed = [u8; 32];

/// One key-recovery run against a fresh key.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub instance: String,
    pub trial: u64,
    pub success: bool,
    pub retries: usize,
    pub signatures_consumed: usize,
    pub step1_seconds: f64,
    pub step2_seconds: f64,
    pub total_seconds: f64,
    pub equivalent_or_exact: Option<KeyMatch>,
    /// A forgery with the recovered key on a fresh message verified.
    pub forgery_verified: bool,
}

/// Aggregated results for one instance, in the column order of the
/// published timing table followed by success and retry statistics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub params: String,
    pub claimed_security: u32,
    pub mean_attack_seconds: f64,
    pub median_attack_seconds: f64,
    pub trials: usize,
    pub success_rate: f64,
    pub mean_retries: f64,
}

pub fn trial_seed(master: &Seed, instance_token: &str, trial: u64) -> Seed {
    let mut h = Sha3_256::new();
    h.update(b"RQCS-bench/v1");
    h.update(master);
    h.update(instance_token.as_bytes());
    h.update(trial.to_le_bytes());
    h.finalize().into()
}

/// Parses up to 64 hex digits into a seed, left-padding with zeros.
pub fn parse_seed(hex_str: &str) -> Result<Seed, String> {
    let s = hex_str.trim().trim_start_matches("0x");
    if s.is_empty() || s.len() > 64 {
        return Err(format!("seed must be 1 to 64 hex digits, got {}", s.len()));
    }
    let padded = format!("{s:0>64}");
    let bytes = hex::decode(&padded).map_err(|e| format!("bad seed {hex_str:?}: {e}"))?;
    Ok(bytes.try_into().expect("64 hex digits are 32 bytes"))
}

/// Key generation, chosen-message attack and a forgery check, all driven
/// by the trial's own seed.
pub fn run_trial(params: &Params, master: &Seed, trial: u64, max_retries: usize) -> TrialOutcome {
    let mut rng = ChaCha20Rng::from_seed(trial_seed(master, &params.token(), trial));
    let keys = keygen(params, &mut rng);
    let mut oracle_seed = [0u8; 32];
    rng.fill_bytes(&mut oracle_seed);
    let mut oracle = SelfOracle::new(params, &keys, ChaCha20Rng::from_seed(oracle_seed));
    let report = run_attack(params, &keys.pk, &mut oracle, max_retries, Some(&keys.sk));

    let forgery_verified = report.recovered_sk.as_ref().is_some_and(|sk| {
        let msg = format!("forged message for trial {trial}");
        forge(params, sk, &keys.pk, msg.as_bytes(), &mut rng)
            .is_ok_and(|sig| verify(params, &keys.pk, msg.as_bytes(), &sig).is_ok())
    });

    TrialOutcome {
        instance: params.instance.clone(),
        trial,
        success: report.success,
        retries: report.retries,
        signatures_consumed: report.signatures_consumed,
        step1_seconds: report.step1_seconds,
        step2_seconds: report.step2_seconds,
        total_seconds: report.total_seconds,
        equivalent_or_exact: report.equivalent_or_exact,
        forgery_verified,
    }
}

pub fn aggregate(params: &Params, outcomes: &[TrialOutcome]) -> BenchRow {
    assert!(!outcomes.is_empty(), "at least one trial is required");
    let count = outcomes.len() as f64;
    let mut times: Vec<f64> = outcomes.iter().map(|o| o.total_seconds).collect();
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    let median = if times.len().is_multiple_of(2) {
        (times[mid - 1] + times[mid]) / 2.0
    } else {
        times[mid]
    };
    BenchRow {
        instance: params.instance.clone(),
        params: params.label(),
        claimed_security: params.lambda,
        mean_attack_seconds: times.iter().sum::<f64>() / count,
        median_attack_seconds: median,
        trials: outcomes.len(),
        success_rate: outcomes.iter().filter(|o| o.success).count() as f64 / count,
        mean_retries: outcomes.iter().map(|o| o.retries as f64).sum::<f64>() / count,
    }
}

/// Runs `trials` trials per parameter set on `jobs` worker threads.
/// Outcomes are returned in (instance, trial) order whatever the schedule.
pub fn run_bench(
    instances: &[Params],
    trials: u64,
    master: &Seed,
    jobs: usize,
    max_retries: usize,
) -> (Vec<BenchRow>, Vec<TrialOutcome>) {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let mut rows = Vec::new();
    let mut all = Vec::new();
    for params in instances {
        let outcomes: Vec<TrialOutcome> = pool.install(|| {
            (0..trials)
                .into_par_iter()
                .map(|t| run_trial(params, master, t, max_retries))
                .collect()
        });
        rows.push(aggregate(params, &outcomes));
        all.extend(outcomes);
    }
    (rows, all)
}
