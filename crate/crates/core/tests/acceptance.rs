//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{ring_product, span_dim, span_elements};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rqcs::attack::{build_key_system, forge, recover_support, run_attack, SelfOracle};
use rqcs::codec;
use rqcs::quasi_cyclic::rot_product;
use rqcs::rank::sample_rank_vector;
use rqcs::scheme::{keygen, sign, verify};
use rqcs::{AttackReport, Field, KeyMatch, Params, RkVector, Subspace};

const INSTANCES: [&str; 3] = ["RQCS-1", "RQCS-2", "RQCS-3"];

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { id, pass, detail }
}

fn rng(label: &str) -> ChaCha20Rng {
    let mut seed = [0u8; 32];
    let bytes = label.as_bytes();
    seed[..bytes.len().min(32)].copy_from_slice(&bytes[..bytes.len().min(32)]);
    ChaCha20Rng::from_seed(seed)
}

fn scheme_correctness() -> Outcome {
    let start = Instant::now();
    let mut accepted = 0;
    let mut rejected = 0;
    for name in INSTANCES {
        let p = Params::setup(name).unwrap();
        let mut rng = rng(&format!("ac1 {name}"));
        for i in 0..100u32 {
            let kp = keygen(&p, &mut rng);
            let msg = format!("{name} message {i}").into_bytes();
            let sig = sign(&p, &kp.sk, &kp.pk, &msg, &mut rng).unwrap();
            accepted += verify(&p, &kp.pk, &msg, &sig).is_ok() as usize;
            let mut tampered = msg.clone();
            let pos = rng.random_range(0..tampered.len());
            tampered[pos] ^= 1 << rng.random_range(0..8);
            rejected += verify(&p, &kp.pk, &tampered, &sig).is_err() as usize;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        "AC1 scheme correctness",
        accepted == 300 && rejected == 300 && elapsed < Duration::from_secs(120),
        format!("{accepted}/300 accepted, {rejected}/300 tampered rejected, {elapsed:.2?}"),
    )
}

fn attack_success() -> Outcome {
    const TRIALS: u64 = 20;
    let mut ok = true;
    let mut lines = Vec::new();
    let mut means = Vec::new();
    for name in INSTANCES {
        let p = Params::setup(name).unwrap();
        let mut successes = 0;
        let mut exact = 0;
        let mut times = Vec::new();
        for trial in 0..TRIALS {
            let mut rng = rng(&format!("ac2 {name} {trial}"));
            let kp = keygen(&p, &mut rng);
            let mut oracle = SelfOracle::new(&p, &kp, ChaCha20Rng::seed_from_u64(rng.next_u64()));
            let report = run_attack(&p, &kp.pk, &mut oracle, 10, Some(&kp.sk));
            times.push(report.total_seconds);
            ok &= report.total_seconds < 600.0;
            let Some(sk) = report.recovered_sk else {
                continue;
            };
            let key_equation = kp.pk.matches(&sk);
            let msg = format!("fresh message {name} {trial}");
            let forged = forge(&p, &sk, &kp.pk, msg.as_bytes(), &mut rng)
                .is_ok_and(|sig| verify(&p, &kp.pk, msg.as_bytes(), &sig).is_ok());
            ok &= key_equation && forged;
            if report.success && key_equation && forged {
                successes += 1;
            }
            exact += (report.equivalent_or_exact == Some(KeyMatch::Exact)) as usize;
        }
        let rate = successes as f64 / TRIALS as f64;
        ok &= rate >= 0.95;
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        let max = times.iter().copied().fold(0.0, f64::max);
        means.push(mean);
        lines.push(format!(
            "{name} {}: success {successes}/{TRIALS} ({exact} exact), mean {mean:.3}s, max {max:.3}s",
            p.label()
        ));
    }
    let fastest = means[0] < means[1] && means[0] < means[2];
    ok &= fastest;
    lines.push(format!("RQCS-1 fastest: {fastest}"));
    outcome("AC2 attack success", ok, lines.join("; "))
}

fn inclusion_invariant() -> Vec<Outcome> {
    let p = Params::custom(12, 10, 2, 2, 2).unwrap();
    let bound = p.weight_bound();
    let mut rng = rng("ac3");
    let mut failures = 0;
    let mut full_weight = 0;
    let mut full_weight_failures = 0;
    let mut kp = keygen(&p, &mut rng);
    for i in 0..1000u32 {
        if i % 10 == 0 {
            kp = keygen(&p, &mut rng);
        }
        let sig = sign(&p, &kp.sk, &kp.pk, &i.to_le_bytes(), &mut rng).unwrap();
        for (secret, u) in [(&kp.sk.x, &sig.u1), (&kp.sk.y, &sig.u2)] {
            let recovered = recover_support(&p.field, u, &sig.g).unwrap();
            let included = secret.support().is_subspace_of(&recovered);
            failures += !included as usize;
            if u.rank_weight() == bound {
                full_weight += 1;
                full_weight_failures += !included as usize;
            }
        }
    }
    vec![
        outcome(
            "AC3 step-1 inclusion",
            failures == 0,
            format!("{failures} of 2000 supports not included"),
        ),
        outcome(
            "AC3 step-1 inclusion, full-weight u_i only",
            full_weight_failures == 0,
            format!("{full_weight_failures} of {full_weight} supports not included"),
        ),
    ]
}

fn system_shape() -> Outcome {
    let sets = [
        Params::setup("RQCS-1").unwrap(),
        Params::setup("RQCS-2").unwrap(),
        Params::setup("RQCS-3").unwrap(),
        Params::custom(12, 10, 2, 2, 2).unwrap(),
        Params::custom(24, 20, 2, 2, 2).unwrap(),
    ];
    let mut ok = true;
    let mut shapes = Vec::new();
    for p in &sets {
        let mut rng = rng(&format!("ac4 {}", p.token()));
        let kp = keygen(p, &mut rng);
        let alpha = kp.sk.x.support().basis().to_vec();
        let beta = kp.sk.y.support().basis().to_vec();
        let sys = build_key_system(p, &kp.pk, &alpha, &beta).unwrap();
        let (rows, cols) = (sys.matrix.rows(), sys.matrix.cols());
        ok &= rows == p.n * p.m && cols == 2 * p.w * p.n && rows > cols && sys.rhs.len() == rows;
        shapes.push(format!("{} {rows}x{cols}", p.label()));
    }
    let first = &shapes[0];
    ok &= first.ends_with(" 5963x670");
    outcome("AC4 step-2 system shape", ok, shapes.join(", "))
}

fn oracle_suites() -> Outcome {
    let mut rng = rng("ac5");
    let (mut weight_bad, mut meet_bad, mut product_bad) = (0, 0, 0);
    for _ in 0..1000 {
        let m = rng.random_range(2..=10);
        let field = Field::standard(m).unwrap();
        let n = rng.random_range(1..=10);
        let v = sample_rank_vector(&field, n, rng.random_range(0..=m.min(n)), &mut rng).unwrap();
        weight_bad += (v.rank_weight() != span_dim(v.coords())) as usize;

        let gu: Vec<_> = (0..rng.random_range(0..=m))
            .map(|_| field.random(&mut rng))
            .collect();
        let gv: Vec<_> = (0..rng.random_range(0..=m))
            .map(|_| field.random(&mut rng))
            .collect();
        let meet = Subspace::from_generators(m, gu.iter().copied())
            .intersect(&Subspace::from_generators(m, gv.iter().copied()));
        let su = span_elements(&gu);
        let expected: BTreeSet<_> = span_elements(&gv).intersection(&su).copied().collect();
        meet_bad += (span_elements(meet.basis()) != expected) as usize;

        let a = RkVector::random(&field, n, &mut rng);
        let b = RkVector::random(&field, n, &mut rng);
        let got = rot_product(&a, &b).unwrap();
        product_bad += (got.coords() != ring_product(&field, a.coords(), b.coords())) as usize;
    }
    outcome(
        "AC5 oracle equivalence (m <= 10)",
        weight_bad + meet_bad + product_bad == 0,
        format!(
            "mismatches: rank_weight {weight_bad}/1000, intersect {meet_bad}/1000, rot_product {product_bad}/1000"
        ),
    )
}

fn weight_bound() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    for name in INSTANCES {
        let p = Params::setup(name).unwrap();
        let bound = p.weight_bound();
        let mut rng = rng(&format!("ac6 {name}"));
        let mut kp = keygen(&p, &mut rng);
        let mut within = 0;
        let mut max_seen = 0;
        for i in 0..1000u32 {
            if i % 100 == 0 {
                kp = keygen(&p, &mut rng);
            }
            let sig = sign(&p, &kp.sk, &kp.pk, &i.to_le_bytes(), &mut rng).unwrap();
            let (w1, w2) = (sig.u1.rank_weight(), sig.u2.rank_weight());
            max_seen = max_seen.max(w1).max(w2);
            within += (w1 <= bound && w2 <= bound) as usize;
        }
        ok &= within == 1000;
        lines.push(format!(
            "{name}: {within}/1000 within {bound} (max {max_seen})"
        ));
    }
    outcome("AC6 weight bound", ok, lines.join("; "))
}

fn serialization() -> Outcome {
    let mut rng = rng("ac7");
    let sets = [
        Params::setup("RQCS-1").unwrap(),
        Params::setup("RQCS-2").unwrap(),
        Params::setup("RQCS-3").unwrap(),
        Params::custom(12, 10, 2, 2, 2).unwrap(),
    ];
    let (mut keys_ok, mut sigs_ok, mut reports_ok) = (0, 0, 0);
    for i in 0..100 {
        let p = &sets[i % sets.len()];
        let kp = keygen(p, &mut rng);
        let first = codec::encode_keypair(p, &kp);
        let (p2, kp2) = codec::decode_keypair(&first).unwrap();
        keys_ok += (codec::encode_keypair(&p2, &kp2) == first && kp2 == kp) as usize;

        let sig = sign(p, &kp.sk, &kp.pk, &rng.next_u64().to_le_bytes(), &mut rng).unwrap();
        let first = codec::encode_signature(p, &sig);
        let (p2, sig2) = codec::decode_signature(&first).unwrap();
        sigs_ok += (codec::encode_signature(&p2, &sig2) == first && sig2 == sig) as usize;

        let consumed = rng.random_range(1..=11);
        let report = AttackReport {
            instance: p.instance.clone(),
            success: rng.random(),
            retries: consumed - 1,
            signatures_consumed: consumed,
            step1_seconds: rng.random::<f64>(),
            step2_seconds: rng.random::<f64>() * 10.0,
            total_seconds: rng.random::<f64>() * 100.0,
            equivalent_or_exact: [None, Some(KeyMatch::Exact), Some(KeyMatch::Equivalent)]
                [rng.random_range(0..3)],
            recovered_sk: None,
            failures: Vec::new(),
        };
        let first = codec::encode_report(&report);
        let again = codec::encode_report(&codec::decode_report(&first).unwrap());
        reports_ok += (again == first) as usize;
    }
    outcome(
        "AC7 serialization round trip",
        keys_ok == 100 && sigs_ok == 100 && reports_ok == 100,
        format!("key pairs {keys_ok}/100, signatures {sigs_ok}/100, reports {reports_ok}/100"),
    )
}

fn main() -> ExitCode {
    let mut results = vec![scheme_correctness(), attack_success()];
    results.extend(inclusion_invariant());
    results.extend([
        system_shape(),
        oracle_suites(),
        weight_bound(),
        serialization(),
    ]);

    println!();
    for r in &results {
        println!(
            "[{}] {}: {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.detail
        );
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!(
        "\nacceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
