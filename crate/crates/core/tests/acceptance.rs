//! Acceptance criteria, one PASS/FAIL line each. Runs under `cargo test`
//! (custom harness) and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sylvester_core::arith::{binomial, divisor_set, totient};
use sylvester_core::bernoulli::{
    bernoulli_numbers, bernoulli_poly, hob_constants, hob_poly, multiplication_rhs,
    multiplication_sum, rational_generators,
};
use sylvester_core::circulator::{psi, psi_float_check};
use sylvester_core::oracle::{dp_count, series_count};
use sylvester_core::waves::GeneratorSet;
use sylvester_core::{
    eval_quasipoly, partition_quasipoly, sigma, unit_weight_lhs, wave1, wave_j, wave_j_reference,
    Rational,
};

const CORPUS: [&[u64]; 9] = [
    &[1],
    &[2],
    &[1, 2],
    &[1, 2, 3],
    &[2, 3, 5],
    &[1, 1, 2],
    &[2, 4],
    &[6, 10, 15],
    &[1, 2, 3, 4, 5],
];

const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const SIGMA_INSTANCES: usize = 200;
const PSI_FLOAT_TOLERANCE: f64 = 1e-9;
const LARGE_S: u64 = 1_000_000;
const LARGE_S_EVAL_BUDGET: Duration = Duration::from_secs(1);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn gs(d: &[u64]) -> GeneratorSet {
    GeneratorSet::new(d.to_vec()).unwrap()
}

/// Every corpus pair (j, d) with j >= 2 dividing some generator.
fn corpus_waves() -> Vec<(u64, &'static [u64])> {
    CORPUS
        .iter()
        .flat_map(|&d| {
            divisor_set(d)
                .unwrap()
                .into_iter()
                .filter(|&j| j >= 2)
                .map(move |j| (j, d))
        })
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut points = 0;
    for d in CORPUS {
        let g = gs(d);
        let horizon = 3 * g.lcm() + 50;
        let w = partition_quasipoly(&g).map_err(|e| e.to_string())?;
        let dp = dp_count(horizon, d).unwrap();
        let series = series_count(horizon, d).unwrap();
        for s in 0..=horizon {
            let closed = eval_quasipoly(&w, s);
            let dp_s = dp.get(s);
            if closed != Rational::from(dp_s.clone()) || dp_s != &series[s as usize] {
                return Err(format!(
                    "d = {d:?}, s = {s}: closed {closed}, dp {dp_s}, series {}",
                    series[s as usize]
                ));
            }
            points += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > ORACLE_BUDGET {
        return Err(format!("took {elapsed:?}, budget {ORACLE_BUDGET:?}"));
    }
    Ok(format!("{points} points, {elapsed:.2?}"))
}

fn formula_equivalence() -> Outcome {
    let pairs = corpus_waves();
    for &(j, d) in &pairs {
        let g = gs(d);
        let single = wave_j(j, &g).map_err(|e| e.to_string())?;
        let double = wave_j_reference(j, &g).map_err(|e| e.to_string())?;
        if single != double {
            return Err(format!("d = {d:?}, j = {j}: {single:?} vs {double:?}"));
        }
    }
    Ok(format!("{} (j, d) pairs", pairs.len()))
}

fn sigma_vanishing() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5157_0001);
    let mut evaluations = 0;
    for instance in 0..SIGMA_INSTANCES {
        let j: u64 = rng.gen_range(2..=5);
        let mu = rng.gen_range(1..=3);
        let d: Vec<u64> = (0..mu)
            .map(|_| loop {
                let x = rng.gen_range(1..=12u64);
                if x % j != 0 {
                    break x;
                }
            })
            .collect();
        let e_len = rng.gen_range(1..=3);
        let e: Vec<Rational> = (0..e_len)
            .map(|_| Rational::from(rng.gen_range(1..=6u64)))
            .collect();
        let s = rng.gen_range(0..2 * j as i64);
        let t = Rational::new(rng.gen_range(-20..=20i64), rng.gen_range(1..=20i64));
        for nu in 0..mu {
            let v = sigma(nu, s, &t, &d, &e, j).map_err(|err| err.to_string())?;
            evaluations += 1;
            if !v.is_zero() {
                return Err(format!(
                    "instance {instance}: nu = {nu}, s = {s}, t = {t}, d = {d:?}, e = {e:?}, j = {j}: {v}"
                ));
            }
        }
    }
    Ok(format!(
        "{SIGMA_INSTANCES} instances, {evaluations} sigma values all zero"
    ))
}

fn unit_weight() -> Outcome {
    let pairs = corpus_waves();
    for &(j, d) in &pairs {
        let g = gs(d);
        let lhs = unit_weight_lhs(j, &g).map_err(|e| e.to_string())?;
        if lhs != wave1(&g) {
            return Err(format!("d = {d:?}, j = {j}: {lhs} vs {}", wave1(&g)));
        }
    }
    Ok(format!("{} (j, d) pairs", pairs.len()))
}

fn multiplication_theorem() -> Outcome {
    let mut cases = 0;
    for d in [&[1u64, 2][..], &[2, 3], &[1, 2, 3]] {
        let gens = rational_generators(d);
        let mut factor_sets = vec![vec![]];
        for a in 1..=3 {
            factor_sets.push(vec![a]);
            for b in 1..=3 {
                factor_sets.push(vec![a, b]);
            }
        }
        for factors in &factor_sets {
            for k in 0..=4 {
                let lhs = multiplication_sum(k, &gens, factors).map_err(|e| e.to_string())?;
                let rhs = multiplication_rhs(k, &gens, factors).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!(
                        "d = {d:?}, k = {k}, m = {factors:?}: {lhs} vs {rhs}"
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn degree_collapse() -> Outcome {
    let pairs = corpus_waves();
    for &(j, d) in &pairs {
        let g = gs(d);
        let k_j = g.split(j).unwrap().k_j();
        let w = wave_j(j, &g).map_err(|e| e.to_string())?;
        if let Some(deg) = w.max_degree().filter(|&deg| deg > k_j - 1) {
            return Err(format!("d = {d:?}, j = {j}: degree {deg}, k_j = {k_j}"));
        }
    }
    Ok(format!("{} (j, d) pairs", pairs.len()))
}

fn circulators() -> Outcome {
    let mut worst = 0.0f64;
    for j in 1..=60 {
        let dev = psi_float_check(j);
        if dev.is_nan() || dev >= PSI_FLOAT_TOLERANCE {
            return Err(format!("j = {j}: deviation {dev:e}"));
        }
        worst = worst.max(dev);
    }
    for j in 2..=100u64 {
        let sum: i64 = (0..j as i64).map(|c| psi(j, c)).sum();
        if sum != 0 {
            return Err(format!("j = {j}: period sum {sum}"));
        }
    }
    for j in 1..=100u64 {
        if psi(j, 0) != totient(j) as i64 {
            return Err(format!(
                "j = {j}: psi(j, 0) = {}, totient {}",
                psi(j, 0),
                totient(j)
            ));
        }
    }
    Ok(format!("max float deviation {worst:.1e}"))
}

/// Akiyama-Tanigawa, which yields B_1 = +1/2; the sign is flipped to compare.
fn akiyama_tanigawa(n: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::new();
    let mut out = Vec::new();
    for m in 0..=n {
        row.push(Rational::new(1, m as i64 + 1));
        for k in (1..=m).rev() {
            row[k - 1] = Rational::from(k as u64) * (&row[k - 1] - &row[k]);
        }
        out.push(row[0].clone());
    }
    out[1] = -&out[1];
    out
}

fn bernoulli_sanity() -> Outcome {
    let b = bernoulli_numbers(20);
    let oracle = akiyama_tanigawa(20);
    if b != oracle {
        return Err(format!("B_0..B_20 = {b:?}, expected {oracle:?}"));
    }
    for n in 1..=20u64 {
        let s: Rational = (0..=n)
            .map(|k| Rational::from(binomial(n + 1, k)) * &b[k as usize])
            .sum();
        if !s.is_zero() {
            return Err(format!("recurrence fails at n = {n}"));
        }
    }
    if b[1] != Rational::new(-1, 2) || b[20] != Rational::new(-174611, 330) {
        return Err(format!("B_1 = {}, B_20 = {}", b[1], b[20]));
    }
    for n in 0..=10 {
        if hob_poly(n, &[Rational::one()]).unwrap() != bernoulli_poly(n) {
            return Err(format!("order-1 higher polynomial differs at n = {n}"));
        }
    }
    let c = hob_constants(2, &[Rational::one(), Rational::one()]).unwrap();
    if c[2] != Rational::new(5, 6) {
        return Err(format!("B_2^(2)(0 | 1, 1) = {}", c[2]));
    }
    Ok("B_0..B_20, order-1 reduction, B_2^(2)(0|1,1) = 5/6".into())
}

fn large_s_performance() -> Outcome {
    let d = [1, 2, 3, 4, 5];
    let build = Instant::now();
    let w = partition_quasipoly(&gs(&d)).map_err(|e| e.to_string())?;
    let build = build.elapsed();
    let start = Instant::now();
    let closed = eval_quasipoly(&w, LARGE_S);
    let eval = start.elapsed();
    let dp = dp_count(LARGE_S, &d).unwrap();
    let expect: &BigUint = dp.get(LARGE_S);
    if closed != Rational::from(expect.clone()) {
        return Err(format!("W(10^6) closed {closed}, dp {expect}"));
    }
    if eval >= LARGE_S_EVAL_BUDGET {
        return Err(format!("evaluation took {eval:?}"));
    }
    Ok(format!(
        "W(10^6) = {closed}, eval {eval:.2?} (construction {build:.2?})"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 formula equivalence", formula_equivalence),
        ("3 sigma vanishing", sigma_vanishing),
        ("4 unit-weight identity", unit_weight),
        ("5 multiplication theorem", multiplication_theorem),
        ("6 degree collapse", degree_collapse),
        ("7 circulator validation", circulators),
        ("8 bernoulli sanity", bernoulli_sanity),
        ("9 large-s performance", large_s_performance),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(msg) => println!("[PASS] {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name}: {msg}");
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
