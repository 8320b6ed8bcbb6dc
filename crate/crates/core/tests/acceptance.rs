//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use distcat::coherence::run_suite;
use distcat::iterator::{gate_counts, verify_equivalence, Form, IteratorBuild};
use distcat::morphisms::Mor;
use distcat::quantum::{check_controlled_power_action, qft, swap_decomposition_check};
use distcat::random::{random_perm, random_state, random_unitary, rng, rng_for};
use distcat::shapes::{dr_perm, ObjExpr};
use distcat::shor::{convergents, outcome_distribution};
use num_complex::Complex64;
use rand::Rng;
use serde_json::Value;

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn circuit_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut worst_complex, mut worst_perm, mut checks) = (0.0f64, 0.0f64, 0);
    for n in 1..=6 {
        for d in [2, 3, 4] {
            let x = ObjExpr::atom("X", d);
            for t in 0..20 {
                let mut g = rng_for(SEED, &format!("acceptance.1/{n}/{d}"), t);
                let u = random_unitary(&x, &mut g);
                worst_complex = worst_complex.max(verify_equivalence(&u, n).unwrap().discrepancy);
                let p = Mor::<bool>::from_perm(&random_perm(&x, &mut g));
                worst_perm = worst_perm.max(verify_equivalence(&p, n).unwrap().discrepancy);
                let pc = Mor::<Complex64>::from_perm(&random_perm(&x, &mut g));
                worst_perm = worst_perm.max(verify_equivalence(&pc, n).unwrap().discrepancy);
                checks += 3;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst_complex <= 1e-10 && worst_perm == 0.0 && elapsed < Duration::from_secs(60),
        format!("{checks} checks, unitary max {worst_complex:.2e} (<= 1e-10), permutation max {worst_perm} (exact), {elapsed:.2?} (< 60s)"),
    )
}

fn median_build_time(f: &Mor<Complex64>, n: usize, form: Form, reps: usize) -> Duration {
    let mut times: Vec<Duration> = (0..reps)
        .map(|_| {
            let t = Instant::now();
            let b = IteratorBuild::build(f, n, form).unwrap();
            let e = t.elapsed();
            std::hint::black_box(b);
            e
        })
        .collect();
    times.sort();
    times[reps / 2]
}

fn exponential_gap() -> Outcome {
    let counts_ok = (1..=30).all(|n| {
        let c = gate_counts(n).unwrap();
        (c.naive, c.efficient) == ((1u64 << n) - 1, n as u64)
    });
    let c10 = gate_counts(10).unwrap();
    let u = random_unitary(&ObjExpr::atom("X", 2), &mut rng(SEED));
    median_build_time(&u, 10, Form::Naive, 3);
    let naive = median_build_time(&u, 10, Form::Naive, 21);
    let eff = median_build_time(&u, 10, Form::Efficient, 21);
    let ratio = naive.as_secs_f64() / eff.as_secs_f64().max(1e-12);
    outcome(
        counts_ok && (c10.naive, c10.efficient) == (1023, 10) && ratio >= 50.0,
        format!(
            "n=10 counts ({}, {}), median build naive {naive:.2?} vs efficient {eff:.2?}, ratio {ratio:.0}x (>= 50x)",
            c10.naive, c10.efficient
        ),
    )
}

fn oracle_action() -> Outcome {
    let mut g = rng_for(SEED, "acceptance.3", 0);
    let u = random_unitary(&ObjExpr::atom("X", 5), &mut g);
    let psi = random_state(5, &mut g);
    let r = check_controlled_power_action(&u, 6, &psi).unwrap();
    outcome(r.discrepancy <= 1e-10, format!("n=6 d=5, all 64 control states, max error {:.2e} (<= 1e-10)", r.discrepancy))
}

fn coherence_suite() -> Outcome {
    let complex = run_suite::<Complex64>(SEED, 100, 5).unwrap();
    let boolean = run_suite::<bool>(SEED, 100, 5).unwrap();
    let failures = complex.iter().chain(&boolean).filter(|r| !r.pass).count();
    let exact_ok = complex.iter().chain(&boolean).filter(|r| r.semiring != "complex").all(|r| r.discrepancy == 0.0);
    let worst = complex.iter().map(|r| r.discrepancy).fold(0.0, f64::max);
    outcome(
        failures == 0 && exact_ok,
        format!(
            "{} reports over 100 complex + 100 boolean instances, {failures} failures, complex max {worst:.2e}, exact paths exact: {exact_ok}",
            complex.len() + boolean.len()
        ),
    )
}

fn factor_cli(k: &str, seed: &str) -> (Vec<u64>, usize, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_distcat"))
        .args(["factor", "--K", k, "--seed", seed, "--json"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let run: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    let factors = run["factors"].as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default();
    let attempts = run["attempts"].as_array().map_or(usize::MAX, Vec::len);
    (factors, attempts, elapsed)
}

fn shor_end_to_end() -> Outcome {
    let (f15, a15, t15) = factor_cli("15", "7");
    let (f21, a21, t21) = factor_cli("21", "3");
    let ten = Duration::from_secs(10);
    let p = outcome_distribution(7, 15, 8).unwrap();
    let mass: f64 = [0, 64, 128, 192].iter().map(|&y| p[y]).sum();
    outcome(
        f15 == [3, 5] && f21 == [3, 7] && a15 <= 8 && a21 <= 8 && t15 <= ten && t21 <= ten && mass >= 0.99,
        format!(
            "15 -> {f15:?} ({a15} attempts, {t15:.2?}), 21 -> {f21:?} ({a21} attempts, {t21:.2?}), mass on {{0,64,128,192}} = {mass:.12}"
        ),
    )
}

fn continued_fractions() -> Outcome {
    let last = *convergents(192, 256).last().unwrap();
    let mut g = rng_for(SEED, "acceptance.6", 0);
    let mut checked = 0u64;
    let mut violations = 0u64;
    for _ in 0..1000 {
        let q_big: u64 = g.random_range(1..=1 << 24);
        let y: u64 = g.random_range(0..q_big);
        for (p, q) in convergents(y, q_big) {
            // |y/Q - p/q| <= 1/q^2  <=>  |y q - p Q| q <= Q
            let lhs = (y as i128 * q as i128 - p as i128 * q_big as i128).unsigned_abs() * q as u128;
            checked += 1;
            if lhs > q_big as u128 {
                violations += 1;
            }
        }
    }
    outcome(
        last == (3, 4) && violations == 0,
        format!("convergents(192,256) ends at {last:?}; {checked} convergents of 1000 random fractions, {violations} bound violations"),
    )
}

fn random_object(g: &mut impl Rng, depth: u32) -> ObjExpr {
    if depth == 0 || g.random_bool(0.4) {
        return match g.random_range(0..6) {
            0 => ObjExpr::Unit,
            1 => ObjExpr::Zero,
            _ => ObjExpr::atom("A", g.random_range(1..=4)),
        };
    }
    let (a, b) = (random_object(g, depth - 1), random_object(g, depth - 1));
    if g.random_bool(0.5) {
        ObjExpr::sum(a, b)
    } else {
        ObjExpr::prod(a, b)
    }
}

fn structural_identities() -> Outcome {
    let mut g = rng_for(SEED, "acceptance.7", 0);
    let mut dr_ok = true;
    for _ in 0..200 {
        let (x, y, z) = (random_object(&mut g, 2), random_object(&mut g, 2), random_object(&mut g, 2));
        let p = dr_perm(&x, &y, &z);
        dr_ok &= p.is_identity() && p.map() == common::dr_oracle(&x, &y, &z).as_slice();
    }
    let swap = swap_decomposition_check().unwrap();
    let worst_qft = (1..=10).map(|n| qft(n, false).unwrap().unitarity_defect()).fold(0.0, f64::max);
    outcome(
        dr_ok && swap.discrepancy == 0.0 && worst_qft <= 1e-10,
        format!(
            "dr identity on 200 random triples: {dr_ok}; three-CNOT swap mismatch {}; QFT n<=10 max |F*F - I| {worst_qft:.2e}",
            swap.discrepancy
        ),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("circuit equivalence", circuit_equivalence),
        ("exponential gap", exponential_gap),
        ("oracle action", oracle_action),
        ("coherence suite", coherence_suite),
        ("shor end to end", shor_end_to_end),
        ("continued fractions", continued_fractions),
        ("structural identities", structural_identities),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!("criterion {} {:<22} {}  {}", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
