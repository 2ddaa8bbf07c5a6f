//! `rqcs`: key generation, signing, verification, key recovery and the
//! timing benchmark.
//!
//! Exit status is 0 on success, 1 when a signature is rejected or the
//! attack fails, and 2 on usage or format errors. Errors go to stderr as a
//! single JSON line.

mod bench;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rqcs::attack::{run_attack, SelfOracle, SignatureList, SignatureSource, DEFAULT_MAX_RETRIES};
use rqcs::codec;
use rqcs::experiment::{parse_seed, Seed};
use rqcs::params::INSTANCES;
use rqcs::scheme::{keygen, sign, verify, KeyPair, PublicKey, SecretKey};
use rqcs::Params;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "rqcs",
    version,
    about = "RQCS signatures and their key-recovery attack"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or show parameter sets.
    Params {
        #[command(subcommand)]
        action: ParamsAction,
    },
    /// Generate a key pair.
    Keygen {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Seed as up to 64 hex digits.
        #[arg(long)]
        seed: String,
        /// Key-pair file.
        #[arg(long)]
        out: PathBuf,
        /// Also write the public key alone.
        #[arg(long)]
        pk_out: Option<PathBuf>,
    },
    /// Sign a message file.
    Sign {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Seed for the signing randomness; fresh entropy when absent.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Verify a signature on a message file.
    Verify {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        #[arg(long)]
        sig: PathBuf,
    },
    /// Recover a secret key from signatures.
    Attack(AttackArgs),
    /// Time the attack over many fresh keys.
    Bench(bench::BenchArgs),
}

#[derive(Subcommand)]
enum ParamsAction {
    List,
    Show { instance: String },
}

#[derive(Args)]
struct InstanceArgs {
    /// rqcs-1, rqcs-2, rqcs-3, custom (with --m ... --w-r) or custom:m:n:w:w_g:w_r.
    #[arg(long)]
    instance: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    w_g: Option<usize>,
    #[arg(long)]
    w_r: Option<usize>,
}

#[derive(Args)]
struct AttackArgs {
    /// Public key under attack. Without it a target is generated from
    /// --instance and --seed.
    #[arg(long)]
    pk: Option<PathBuf>,
    /// Target secret key, used by the self oracle and to tell an exact
    /// recovery from an equivalent one.
    #[arg(long)]
    target_sk: Option<PathBuf>,
    #[arg(long)]
    instance: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// "self" to sign with the target key, or a signature file.
    #[arg(long, default_value = "self")]
    oracle: String,
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    max_retries: usize,
    #[arg(long)]
    out: PathBuf,
    /// Write the recovered secret key here.
    #[arg(long)]
    sk_out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Format(String),
    Io(String),
    Rejected(String),
    AttackFailed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Rejected(_) | CliError::AttackFailed(_) => 1,
            _ => 2,
        }
    }

    fn to_json(&self) -> String {
        let (kind, message) = match self {
            CliError::Usage(m) => ("usage", m),
            CliError::Format(m) => ("format", m),
            CliError::Io(m) => ("io", m),
            CliError::Rejected(m) => ("rejected", m),
            CliError::AttackFailed(m) => ("attack_failed", m),
        };
        json!({ "error": kind, "message": message }).to_string()
    }
}

impl From<rqcs::Error> for CliError {
    fn from(e: rqcs::Error) -> Self {
        CliError::Format(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Prints a line to stdout, ignoring a closed pipe.
pub fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

pub fn seed_arg(hex: &str) -> CliResult<Seed> {
    parse_seed(hex).map_err(CliError::Usage)
}

fn resolve_instance(a: &InstanceArgs) -> CliResult<Params> {
    let extras = [a.m, a.n, a.w, a.w_g, a.w_r];
    if a.instance.eq_ignore_ascii_case("custom") {
        let [Some(m), Some(n), Some(w), Some(w_g), Some(w_r)] = extras else {
            return Err(CliError::Usage(
                "--instance custom needs --m, --n, --w, --w-g and --w-r".into(),
            ));
        };
        return Params::custom(m, n, w, w_g, w_r).map_err(|e| CliError::Usage(e.to_string()));
    }
    if extras.iter().any(Option::is_some) {
        return Err(CliError::Usage(
            "--m, --n, --w, --w-g and --w-r only apply to --instance custom".into(),
        ));
    }
    Params::setup(&a.instance).map_err(|e| CliError::Usage(e.to_string()))
}

fn params_json(p: &Params) -> serde_json::Value {
    json!({
        "instance": p.instance,
        "claimed_security": p.lambda,
        "q": 2,
        "m": p.m,
        "n": p.n,
        "w": p.w,
        "w_r": p.w_r,
        "w_g": p.w_g,
        "modulus": p.field.modulus_hex(),
        "modulus_poly": p.field.to_string(),
        "weight_bound": p.weight_bound(),
    })
}

fn cmd_params(action: ParamsAction) -> CliResult<()> {
    match action {
        ParamsAction::List => {
            emit(&format!(
                "{:<8} {:<18} {:>8}  modulus",
                "instance", "(q,m,n,w)", "security"
            ));
            for spec in INSTANCES {
                let p = Params::setup(spec.name)?;
                emit(&format!(
                    "{:<8} {:<18} {:>8}  {}",
                    p.instance,
                    p.label(),
                    p.lambda,
                    p.field
                ));
            }
        }
        ParamsAction::Show { instance } => {
            let p = Params::setup(&instance).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&serde_json::to_string_pretty(&params_json(&p)).expect("json"));
        }
    }
    Ok(())
}

fn cmd_keygen(
    instance: InstanceArgs,
    seed: &str,
    out: &Path,
    pk_out: Option<&Path>,
) -> CliResult<()> {
    let params = resolve_instance(&instance)?;
    let mut rng = ChaCha20Rng::from_seed(seed_arg(seed)?);
    let kp = keygen(&params, &mut rng);
    write_text(out, &codec::encode_keypair(&params, &kp))?;
    if let Some(path) = pk_out {
        write_text(path, &codec::encode_public_key(&params, &kp.pk))?;
    }
    Ok(())
}

fn load_pk(path: &Path) -> CliResult<(Params, PublicKey)> {
    Ok(codec::decode_public_key(&read_text(path)?)?)
}

fn load_sk(path: &Path) -> CliResult<(Params, SecretKey)> {
    Ok(codec::decode_secret_key(&read_text(path)?)?)
}

fn same_params(a: &Params, b: &Params, what: &str) -> CliResult<()> {
    if a != b {
        return Err(CliError::Format(format!(
            "{what}: parameters {} do not match {}",
            b.label(),
            a.label()
        )));
    }
    Ok(())
}

fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn cmd_sign(sk: &Path, pk: &Path, msg: &Path, out: &Path, seed: Option<&str>) -> CliResult<()> {
    let (params, pk) = load_pk(pk)?;
    let (sk_params, sk) = load_sk(sk)?;
    same_params(&params, &sk_params, "secret key")?;
    let message = read_bytes(msg)?;
    let mut rng = match seed {
        Some(s) => ChaCha20Rng::from_seed(seed_arg(s)?),
        None => ChaCha20Rng::from_rng(&mut rand::rng()),
    };
    let sig = sign(&params, &sk, &pk, &message, &mut rng)?;
    write_text(out, &codec::encode_signature(&params, &sig))
}

fn cmd_verify(pk: &Path, msg: &Path, sig: &Path) -> CliResult<()> {
    let (params, pk) = load_pk(pk)?;
    let (sig_params, sig) = codec::decode_signature(&read_text(sig)?)?;
    same_params(&params, &sig_params, "signature")?;
    let message = read_bytes(msg)?;
    match verify(&params, &pk, &message, &sig) {
        Ok(()) => {
            emit(&json!({ "valid": true }).to_string());
            Ok(())
        }
        Err(reason) => {
            emit(&json!({ "valid": false }).to_string());
            Err(CliError::Rejected(reason.to_string()))
        }
    }
}

fn cmd_attack(a: AttackArgs) -> CliResult<()> {
    let target = match &a.target_sk {
        Some(path) => Some(load_sk(path)?),
        None => None,
    };
    let mut oracle_rng = match &a.seed {
        Some(s) => ChaCha20Rng::from_seed(seed_arg(s)?),
        None => ChaCha20Rng::from_rng(&mut rand::rng()),
    };
    // (params, public key, secret key known to the self oracle)
    let (params, pk, known): (Params, PublicKey, Option<SecretKey>) = match (&a.pk, &a.instance) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either --pk or --instance, not both".into(),
            ));
        }
        (Some(path), None) => {
            let (params, pk) = load_pk(path)?;
            let known = match target {
                Some((sk_params, sk)) => {
                    same_params(&params, &sk_params, "target secret key")?;
                    if !pk.matches(&sk) {
                        return Err(CliError::Format(
                            "target secret key does not satisfy s = x + h·y".into(),
                        ));
                    }
                    Some(sk)
                }
                None => None,
            };
            (params, pk, known)
        }
        (None, Some(name)) => {
            if target.is_some() {
                return Err(CliError::Usage("--target-sk needs --pk".into()));
            }
            if a.seed.is_none() {
                return Err(CliError::Usage("--instance needs --seed".into()));
            }
            let params = Params::setup(name).map_err(|e| CliError::Usage(e.to_string()))?;
            // the target key comes first from the seeded stream, then the oracle's masks
            let KeyPair { pk, sk } = keygen(&params, &mut oracle_rng);
            (params, pk, Some(sk))
        }
        (None, None) => return Err(CliError::Usage("give --pk or --instance".into())),
    };

    let keys;
    let mut source: Box<dyn SignatureSource + '_> = if a.oracle == "self" {
        let sk = known.clone().ok_or_else(|| {
            CliError::Usage("--oracle self needs --target-sk or a generated target".into())
        })?;
        keys = KeyPair { pk: pk.clone(), sk };
        Box::new(SelfOracle::new(&params, &keys, oracle_rng))
    } else {
        let (sig_params, sig) = codec::decode_signature(&read_text(Path::new(&a.oracle))?)?;
        same_params(&params, &sig_params, "signature")?;
        Box::new(SignatureList::new(vec![(Vec::new(), sig)]))
    };

    let report = run_attack(&params, &pk, source.as_mut(), a.max_retries, known.as_ref());
    write_text(&a.out, &codec::encode_report(&report))?;
    if let (Some(path), Some(sk)) = (&a.sk_out, &report.recovered_sk) {
        write_text(path, &codec::encode_secret_key(&params, sk))?;
    }
    emit(
        &json!({
            "instance": report.instance,
            "success": report.success,
            "signatures_consumed": report.signatures_consumed,
            "total_seconds": report.total_seconds,
        })
        .to_string(),
    );
    if report.success {
        Ok(())
    } else {
        Err(CliError::AttackFailed(
            report
                .failures
                .last()
                .cloned()
                .unwrap_or_else(|| "no signatures".into()),
        ))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Params { action } => cmd_params(action),
        Command::Keygen {
            instance,
            seed,
            out,
            pk_out,
        } => cmd_keygen(instance, &seed, &out, pk_out.as_deref()),
        Command::Sign {
            sk,
            pk,
            msg,
            out,
            seed,
        } => cmd_sign(&sk, &pk, &msg, &out, seed.as_deref()),
        Command::Verify { pk, msg, sig } => cmd_verify(&pk, &msg, &sig),
        Command::Attack(args) => cmd_attack(args),
        Command::Bench(args) => bench::run(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e
                .to_string()
                .trim_start_matches("error: ")
                .trim()
                .to_string();
            eprintln!("{}", CliError::Usage(message).to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.code())
        }
    }
}
