//! Key recovery from one signature and the public key.
//!
//! Step 1 reads the secret supports off a signature: every coordinate of
//! x·g lies in Supp(x)·Supp(g), so γ⁻¹·Supp(u₁) contains Supp(x) for each
//! basis element γ of Supp(g), and intersecting those spaces generically
//! leaves exactly Supp(x). Step 2 then writes x = αX, y = βY with unknown
//! binary X, Y and solves s = αX + βY·R (R = rot(h)^T) as nm linear equations
//! over F_2 in 2wn unknowns.

use std::time::{Duration, Instant};

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::BitMatrix;
use crate::params::Params;
use crate::rank::{combine, RkVector};
use crate::scheme::{sign, KeyPair, PublicKey, SecretKey, Signature};
use crate::subspace::Subspace;

pub const DEFAULT_MAX_RETRIES: usize = 10;

/// ⋂_i γ_i⁻¹·Supp(u) over the canonical basis {γ_i} of Supp(g).
pub fn recover_support(field: &Field, u: &RkVector, g: &RkVector) -> Result<Subspace> {
    let g_support = g.support();
    if g_support.dim() == 0 {
        return Err(Error::ZeroVector);
    }
    let u_support = u.support();
    let mut acc: Option<Subspace> = None;
    for &gamma in g_support.basis() {
        let scaled = u_support.scale(field, field.inv(gamma)?)?;
        acc = Some(match acc {
            None => scaled,
            Some(prev) => prev.intersect(&scaled),
        });
        if acc.as_ref().is_some_and(|s| s.dim() == 0) {
            break;
        }
    }
    Ok(acc.expect("Supp(g) is nonzero"))
}

/// The F_2 system A·[vec(X) | vec(Y)] = vec(s).
///
/// Unknown X_{ij} sits in column i·n + j and Y_{ik} in column wn + i·n + k;
/// the equation for bit b of coordinate j sits in row j·m + b.
#[derive(Clone, Debug)]
pub struct KeySystem {
    pub matrix: BitMatrix,
    pub rhs: Vec<bool>,
    pub w: usize,
    pub n: usize,
}

/// Binary support matrices recovered by Step 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportMatrices {
    pub x: BitMatrix,
    pub y: BitMatrix,
}

fn check_basis(field: &Field, basis: &[FieldElement], w: usize) -> Result<()> {
    if basis.len() != w {
        return Err(Error::LengthMismatch {
            expected: w,
            found: basis.len(),
        });
    }
    for b in basis {
        field.element(*b)?;
    }
    if Subspace::from_generators(field.m(), basis.iter().copied()).dim() != w {
        return Err(Error::DependentBasis);
    }
    Ok(())
}

pub fn build_key_system(
    params: &Params,
    pk: &PublicKey,
    alpha: &[FieldElement],
    beta: &[FieldElement],
) -> Result<KeySystem> {
    let (m, n, w) = (params.m, params.n, params.w);
    let field = &params.field;
    if m <= 2 * w {
        return Err(Error::InvalidParams(format!(
            "m > 2w fails: m = {m}, 2w = {}",
            2 * w
        )));
    }
    check_basis(field, alpha, w)?;
    check_basis(field, beta, w)?;
    for v in [&pk.h, &pk.s] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: v.len(),
            });
        }
        if v.field() != field {
            return Err(Error::FieldMismatch);
        }
    }

    let mut matrix = BitMatrix::zeros(n * m, 2 * w * n);
    for (i, a) in alpha.iter().enumerate() {
        for b in (0..m).filter(|&b| a.bit(b)) {
            for j in 0..n {
                matrix.set(j * m + b, i * n + j, true);
            }
        }
    }
    // y·h: coordinate j picks up Y_{ik}·β_i·h_{(j-k) mod n}.
    let h = pk.h.coords();
    for (i, &b_i) in beta.iter().enumerate() {
        let beta_h: Vec<FieldElement> = h.iter().map(|&ht| field.mul(b_i, ht)).collect();
        for k in 0..n {
            let col = w * n + i * n + k;
            for j in 0..n {
                let c = beta_h[(j + n - k) % n];
                for b in (0..m).filter(|&b| c.bit(b)) {
                    matrix.set(j * m + b, col, true);
                }
            }
        }
    }
    let rhs =
        pk.s.coords()
            .iter()
            .flat_map(|s_j| (0..m).map(move |b| s_j.bit(b)))
            .collect();
    Ok(KeySystem { matrix, rhs, w, n })
}

/// Step 2: any (X, Y) with s = αX + βY·R, or [`Error::InconsistentSystem`]
/// when α, β do not span supports of a valid key.
pub fn solve_support_matrices(
    params: &Params,
    pk: &PublicKey,
    alpha: &[FieldElement],
    beta: &[FieldElement],
) -> Result<SupportMatrices> {
    let system = build_key_system(params, pk, alpha, beta)?;
    let solution = system
        .matrix
        .solve(&system.rhs)
        .map_err(|_| Error::InconsistentSystem)?;
    let (w, n) = (system.w, system.n);
    let p = &solution.particular;
    Ok(SupportMatrices {
        x: BitMatrix::from_fn(w, n, |i, j| p[i * n + j]),
        y: BitMatrix::from_fn(w, n, |i, k| p[w * n + i * n + k]),
    })
}

/// Supplies message/signature pairs under the target key.
pub trait SignatureSource {
    fn next_signature(&mut self) -> Option<(Vec<u8>, Signature)>;
}

/// A chosen-message signing oracle backed by the target's own key pair.
pub struct SelfOracle<'a, R: RngCore> {
    params: &'a Params,
    keys: &'a KeyPair,
    rng: R,
    issued: u64,
}

impl<'a, R: RngCore> SelfOracle<'a, R> {
    pub fn new(params: &'a Params, keys: &'a KeyPair, rng: R) -> Self {
        SelfOracle {
            params,
            keys,
            rng,
            issued: 0,
        }
    }
}

impl<R: RngCore> SignatureSource for SelfOracle<'_, R> {
    fn next_signature(&mut self) -> Option<(Vec<u8>, Signature)> {
        let mut msg = format!("oracle message {} ", self.issued).into_bytes();
        let mut nonce = [0u8; 16];
        self.rng.fill_bytes(&mut nonce);
        msg.extend_from_slice(&nonce);
        self.issued += 1;
        let sig = sign(
            self.params,
            &self.keys.sk,
            &self.keys.pk,
            &msg,
            &mut self.rng,
        )
        .ok()?;
        Some((msg, sig))
    }
}

/// A fixed list of signatures, consumed in order.
pub struct SignatureList(pub std::vec::IntoIter<(Vec<u8>, Signature)>);

impl SignatureList {
    pub fn new(items: Vec<(Vec<u8>, Signature)>) -> Self {
        SignatureList(items.into_iter())
    }
}

impl SignatureSource for SignatureList {
    fn next_signature(&mut self) -> Option<(Vec<u8>, Signature)> {
        self.0.next()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeyMatch {
    /// Bit-identical to the planted key.
    Exact,
    /// Satisfies s = x' + h·y' with ‖x'‖, ‖y'‖ ≤ w but differs from the
    /// planted key (or the planted key is unknown).
    Equivalent,
}

/// Outcome of [`run_attack`]; the serialized form omits the key itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    pub instance: String,
    pub success: bool,
    pub retries: usize,
    pub signatures_consumed: usize,
    pub step1_seconds: f64,
    pub step2_seconds: f64,
    pub total_seconds: f64,
    pub equivalent_or_exact: Option<KeyMatch>,
    #[serde(skip)]
    pub recovered_sk: Option<SecretKey>,
    #[serde(skip)]
    pub failures: Vec<String>,
}

/// Supports recovered from one signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredSupports {
    pub x: Subspace,
    pub y: Subspace,
}

pub fn recover_supports(params: &Params, sig: &Signature) -> Result<RecoveredSupports> {
    Ok(RecoveredSupports {
        x: recover_support(&params.field, &sig.u1, &sig.g)?,
        y: recover_support(&params.field, &sig.u2, &sig.g)?,
    })
}

/// Runs the attack, fetching a fresh signature for every attempt, for at
/// most `1 + max_retries` attempts. Never fails: the report says whether
/// a key was recovered.
pub fn run_attack(
    params: &Params,
    pk: &PublicKey,
    source: &mut dyn SignatureSource,
    max_retries: usize,
    target: Option<&SecretKey>,
) -> AttackReport {
    let start = Instant::now();
    let (mut step1, mut step2) = (Duration::ZERO, Duration::ZERO);
    let mut failures = Vec::new();
    let mut consumed = 0;
    let mut recovered = None;

    while consumed <= max_retries {
        let Some((_msg, sig)) = source.next_signature() else {
            failures.push("signature source exhausted".to_string());
            break;
        };
        consumed += 1;

        let t = Instant::now();
        let supports = recover_supports(params, &sig);
        step1 += t.elapsed();
        let supports = match supports {
            Ok(s) if s.x.dim() == params.w && s.y.dim() == params.w => s,
            Ok(s) => {
                failures.push(format!(
                    "recovered support dimensions ({}, {}), expected {}",
                    s.x.dim(),
                    s.y.dim(),
                    params.w
                ));
                continue;
            }
            Err(e) => {
                failures.push(format!("step 1 failed: {e}"));
                continue;
            }
        };

        let t = Instant::now();
        let solved = solve_support_matrices(params, pk, supports.x.basis(), supports.y.basis());
        step2 += t.elapsed();
        match solved {
            Ok(mats) => {
                let sk = SecretKey {
                    x: combine(&params.field, supports.x.basis(), &mats.x),
                    y: combine(&params.field, supports.y.basis(), &mats.y),
                };
                if pk.accepts_equivalent(params, &sk) {
                    recovered = Some(sk);
                    break;
                }
                failures.push("solution violates the key equation".to_string());
            }
            Err(e) => failures.push(format!("step 2 failed: {e}")),
        }
    }

    let key_match = recovered.as_ref().map(|sk| match target {
        Some(t) if t == sk => KeyMatch::Exact,
        _ => KeyMatch::Equivalent,
    });
    AttackReport {
        instance: params.instance.clone(),
        success: recovered.is_some(),
        retries: consumed.saturating_sub(1),
        signatures_consumed: consumed,
        step1_seconds: step1.as_secs_f64(),
        step2_seconds: step2.as_secs_f64(),
        total_seconds: start.elapsed().as_secs_f64(),
        equivalent_or_exact: key_match,
        recovered_sk: recovered,
        failures,
    }
}

/// [`run_attack`], turning an unsuccessful run into an error.
pub fn recover_key(
    params: &Params,
    pk: &PublicKey,
    source: &mut dyn SignatureSource,
    max_retries: usize,
    target: Option<&SecretKey>,
) -> Result<AttackReport> {
    let report = run_attack(params, pk, source, max_retries, target);
    if report.success {
        Ok(report)
    } else {
        Err(Error::RetriesExhausted {
            attempts: report.signatures_consumed,
            last_failure: report
                .failures
                .last()
                .cloned()
                .unwrap_or_else(|| "no attempts made".to_string()),
        })
    }
}

/// Signs `msg` under `pk` with a recovered key.
pub fn forge<R: RngCore + ?Sized>(
    params: &Params,
    recovered: &SecretKey,
    pk: &PublicKey,
    msg: &[u8],
    rng: &mut R,
) -> Result<Signature> {
    sign(params, recovered, pk, msg, rng)
}
