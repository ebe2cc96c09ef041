//! Verification sweep for one generator set: closed form against both
//! oracles, and each wave identity checked exactly.

use std::fmt;

use num_bigint::BigUint;

use crate::arith::{gcd, Rational};
use crate::bernoulli::{multiplication_rhs, multiplication_sum, rational_generators};
use crate::error::Result;
use crate::oracle::{dp_count, series_count};
use crate::par;
use crate::quasi::QuasiPoly;
use crate::waves::{
    assemble, sigma_capped, sylvester_waves, unit_weight_lhs_capped, wave1,
    wave_j_reference_capped, GeneratorSet,
};

/// Closed-form value next to both oracle values at one `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRow {
    pub s: u64,
    pub closed_form: Rational,
    pub dp: BigUint,
    pub series: BigUint,
}

impl OracleRow {
    pub fn agrees(&self) -> bool {
        self.dp == self.series && self.closed_form == Rational::from(self.dp.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Summary on success, first counterexample on failure.
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, failure: Option<String>, summary: impl Into<String>) -> Self {
        let name = name.into();
        match failure {
            None => CheckResult {
                name,
                passed: true,
                detail: summary.into(),
            },
            Some(detail) => CheckResult {
                name,
                passed: false,
                detail,
            },
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct WaveReport {
    pub generators: Vec<u64>,
    pub horizon: u64,
    pub quasipoly: QuasiPoly,
    pub rows: Vec<OracleRow>,
    pub checks: Vec<CheckResult>,
}

impl WaveReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

const SIGMA_T: [(i64, i64); 3] = [(0, 1), (1, 2), (-7, 3)];
const MULTIPLICATION_MAX_K: usize = 4;
const MULTIPLICATION_MAX_FACTOR: u64 = 3;

/// Runs every check for `g` with oracle comparison over `0..=horizon`.
pub fn verify(g: &GeneratorSet, horizon: u64, cap: u64) -> Result<WaveReport> {
    let d = g.generators();
    let waves = sylvester_waves(g, cap)?;
    let w = assemble(g, &waves);
    let mut checks = Vec::new();

    let dp = dp_count(horizon, d)?;
    let series = series_count(horizon, d)?;
    let rows: Vec<OracleRow> = par::map_range(0, horizon + 1, |s| OracleRow {
        s,
        closed_form: w.eval(s),
        dp: dp.get(s).clone(),
        series: series[s as usize].clone(),
    });
    let failure = rows.iter().find(|r| !r.agrees()).map(|r| {
        format!(
            "s = {}: closed form {}, dp {}, series {}",
            r.s, r.closed_form, r.dp, r.series
        )
    });
    checks.push(CheckResult::new(
        "oracle-equality",
        failure,
        format!("s = 0..={horizon}, period {}", w.period()),
    ));

    let w1 = wave1(g);
    for (&j, wave) in waves.iter().filter(|(&j, _)| j >= 2) {
        let split = g.split(j)?;
        let k_j = split.k_j();

        let reference = wave_j_reference_capped(j, g, cap)?;
        let failure = (0..j)
            .find(|&c| wave.class(c) != reference.class(c))
            .map(|c| {
                format!(
                    "class {c}: single sum {} vs double sum {}",
                    wave.class(c),
                    reference.class(c)
                )
            });
        checks.push(CheckResult::new(
            format!("formula-equivalence[j={j}]"),
            failure,
            "exact match on every residue class",
        ));

        let failure = (0..j)
            .find(|&c| wave.class(c).degree().is_some_and(|deg| deg >= k_j))
            .map(|c| {
                format!(
                    "class {c} has degree {:?}, k_j = {k_j}",
                    wave.class(c).degree()
                )
            });
        checks.push(CheckResult::new(
            format!("degree-collapse[j={j}]"),
            failure,
            format!("degree < k_j = {k_j}"),
        ));

        let unit = unit_weight_lhs_capped(j, g, cap)?;
        let failure = (unit != w1).then(|| format!("unit-weight sum {unit} vs W_1 {w1}"));
        checks.push(CheckResult::new(
            format!("unit-weight[j={j}]"),
            failure,
            "equals W_1",
        ));

        let (failure, cases) = sigma_sweep(j, &split.nondivisible, cap)?;
        checks.push(CheckResult::new(
            format!("sigma-vanishing[j={j}]"),
            failure,
            if cases == 0 {
                "vacuous, every generator divisible".to_string()
            } else {
                format!("{cases} instances vanish")
            },
        ));
    }

    // Waves with j | gcd(d) reach full degree too, so the top coefficient is
    // G / ((m-1)! pi_m) on classes divisible by G = gcd(d) and zero elsewhere.
    let m = g.m();
    let gcd_all = d.iter().fold(0, |acc, &x| gcd(acc, x));
    let leading = w1.leading_coeff();
    let failure = (0..w.period())
        .map(|c| {
            let expect = if c % gcd_all == 0 {
                &leading * Rational::from(gcd_all)
            } else {
                Rational::zero()
            };
            (c, expect)
        })
        .find(|(c, expect)| &w.class(*c).coeff(m - 1) != expect)
        .map(|(c, expect)| {
            format!(
                "class {c}: s^{} coefficient {}, expected {expect}",
                m - 1,
                w.class(c).coeff(m - 1)
            )
        });
    checks.push(CheckResult::new(
        "leading-term",
        failure,
        format!("1/((m-1)! pi_m) = {leading}, gcd {gcd_all}"),
    ));

    let (failure, cases) = multiplication_sweep(d)?;
    checks.push(CheckResult::new(
        "multiplication-theorem",
        failure,
        format!("{cases} instances"),
    ));

    Ok(WaveReport {
        generators: d.to_vec(),
        horizon,
        quasipoly: w,
        rows,
        checks,
    })
}

/// sigma over `nu < mu` for `e = j d'` and `e = d'`, all `s` in one period.
fn sigma_sweep(j: u64, nondivisible: &[u64], cap: u64) -> Result<(Option<String>, usize)> {
    if nondivisible.is_empty() {
        return Ok((None, 0));
    }
    let mu = nondivisible.len();
    let scaled: Vec<Rational> = nondivisible
        .iter()
        .map(|&x| Rational::from(x * j))
        .collect();
    let plain = rational_generators(nondivisible);
    let mut cases = 0;
    for e in [&scaled, &plain] {
        for nu in 0..mu {
            for s in 0..j as i64 {
                for (tp, tq) in SIGMA_T {
                    let t = Rational::new(tp, tq);
                    let v = sigma_capped(nu, s, &t, nondivisible, e, j, cap)?;
                    cases += 1;
                    if !v.is_zero() {
                        let msg = format!(
                            "nu = {nu}, s = {s}, t = {t}, d = {nondivisible:?}, e = {e:?}: sigma = {v}"
                        );
                        return Ok((Some(msg), cases));
                    }
                }
            }
        }
    }
    Ok((None, cases))
}

/// Multiplication theorem for `k <= 4`, up to two scaled generators, factors
/// up to 3.
fn multiplication_sweep(d: &[u64]) -> Result<(Option<String>, usize)> {
    let gens = rational_generators(d);
    let mut cases = 0;
    let mut factor_sets: Vec<Vec<u64>> = vec![vec![]];
    for p in 1..=d.len().min(2) {
        let mut next = Vec::new();
        for f in factor_sets.iter().filter(|f| f.len() == p - 1) {
            for m in 1..=MULTIPLICATION_MAX_FACTOR {
                let mut g = f.clone();
                g.push(m);
                next.push(g);
            }
        }
        factor_sets.extend(next);
    }
    for factors in &factor_sets {
        for k in 0..=MULTIPLICATION_MAX_K {
            let lhs = multiplication_sum(k, &gens, factors)?;
            let rhs = multiplication_rhs(k, &gens, factors)?;
            cases += 1;
            if lhs != rhs {
                return Ok((
                    Some(format!("k = {k}, factors {factors:?}: {lhs} vs {rhs}")),
                    cases,
                ));
            }
        }
    }
    Ok((None, cases))
}
