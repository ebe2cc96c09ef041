//! Sylvester waves of the restricted partition function.
//!
//! `W(s, d) = sum_j W_j(s, d)` over every `j` dividing some generator. The
//! polynomial part is
//!
//! ```text
//! W_1(s) = B_{m-1}^(m)(s + s_m | d) / ((m-1)! pi_m)
//! ```
//!
//! and for `j >= 2` each wave is a circulator-weighted sum of the same kind
//! of polynomial with shifted arguments:
//!
//! ```text
//! W_j(s) = j^{k_j-m} / ((m-1)! pi_m)
//!        * sum_r B_{m-1}^(m)(s + s_m + r.d' | d_j) Psi_j(s + s_m + r.d')
//! ```
//!
//! where `d'` are the generators not divisible by `j` (there are `m - k_j` of
//! them), `r` ranges over `{0..j-1}^{m-k_j}`, and `d_j` keeps the divisible
//! generators and multiplies the others by `j`.
//!
//! The sum over `r` only depends on `r.d'`, so it is carried out over the
//! histogram of those dot products. The enumeration cap still applies to the
//! nominal `j^{m-k_j}` vector count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::arith::{binomial, divisor_set, factorial, lcm, Rational};
use crate::bernoulli::{hob_poly, hob_poly_any_order, rational_generators};
use crate::circulator::psi;
use crate::error::{Error, Result};
use crate::par;
use crate::poly::Poly;
use crate::quasi::QuasiPoly;

/// Upper bound on `j^{m-k_j}` shift vectors per wave.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// The generator multiset `d_1..d_m`, order preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    d: Vec<u64>,
    s_m: u64,
    pi_m: BigUint,
}

impl GeneratorSet {
    pub fn new(d: Vec<u64>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidGenerators("generator list is empty".into()));
        }
        if d.contains(&0) {
            return Err(Error::InvalidGenerators(
                "generator 0 is not positive".into(),
            ));
        }
        let s_m = d.iter().sum();
        let pi_m = d.iter().map(|&x| BigUint::from(x)).product();
        Ok(GeneratorSet { d, s_m, pi_m })
    }

    pub fn generators(&self) -> &[u64] {
        &self.d
    }

    pub fn m(&self) -> usize {
        self.d.len()
    }

    /// Sum of the generators.
    pub fn s_m(&self) -> u64 {
        self.s_m
    }

    /// Product of the generators.
    pub fn pi_m(&self) -> &BigUint {
        &self.pi_m
    }

    /// Common period of the assembled quasipolynomial.
    pub fn lcm(&self) -> u64 {
        self.d.iter().fold(1, |acc, &x| lcm(acc, x))
    }

    /// Every `j` with a wave, ascending, starting at 1.
    pub fn divisors(&self) -> Vec<u64> {
        divisor_set(&self.d).expect("validated generators")
    }

    pub fn split(&self, j: u64) -> Result<WaveSplit> {
        WaveSplit::new(j, self)
    }

    /// `1 / ((m-1)! pi_m)`
    fn normalizer(&self) -> Rational {
        Rational::from(factorial(self.m() as u64 - 1) * &self.pi_m).recip()
    }
}

impl FromStr for GeneratorSet {
    type Err = Error;

    /// Comma-separated positive integers, duplicates kept.
    fn from_str(s: &str) -> Result<Self> {
        let d = s
            .split(',')
            .map(|part| {
                part.trim().parse::<u64>().map_err(|_| {
                    Error::InvalidGenerators(format!("not a positive integer: {part:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(d)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.d.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Generators split by divisibility by `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaveSplit {
    pub j: u64,
    /// Generators divisible by `j`.
    pub divisible: Vec<u64>,
    /// Generators not divisible by `j`.
    pub nondivisible: Vec<u64>,
    /// `divisible` followed by `j * nondivisible`.
    pub modified: Vec<u64>,
}

impl WaveSplit {
    pub fn new(j: u64, g: &GeneratorSet) -> Result<Self> {
        if j < 2 {
            return Err(Error::Domain(format!(
                "wave index must be at least 2, got {j}"
            )));
        }
        let (divisible, nondivisible): (Vec<u64>, Vec<u64>) =
            g.generators().iter().partition(|&&x| x % j == 0);
        if divisible.is_empty() {
            return Err(Error::Domain(format!("{j} divides no generator of {g}")));
        }
        let modified = divisible
            .iter()
            .copied()
            .chain(nondivisible.iter().map(|&x| x * j))
            .collect();
        Ok(WaveSplit {
            j,
            divisible,
            nondivisible,
            modified,
        })
    }

    /// Number of generators divisible by `j`.
    pub fn k_j(&self) -> usize {
        self.divisible.len()
    }
}

fn check_cap(j: u64, exponent: usize, cap: u64) -> Result<()> {
    let count = u32::try_from(exponent)
        .ok()
        .and_then(|e| (j as u128).checked_pow(e))
        .unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::CapExceeded {
            j,
            exponent,
            count,
            cap,
        });
    }
    Ok(())
}

/// Distinct values of `r.d` over `r in {0..j-1}^len(d)` with their
/// multiplicities, ascending. Empty `d` gives the single entry `(0, 1)`.
pub fn shift_histogram(j: u64, d: &[u64], cap: u64) -> Result<Vec<(u64, u64)>> {
    check_cap(j, d.len(), cap)?;
    let mut counts = vec![1u64];
    for &g in d {
        let mut next = vec![0u64; counts.len() + ((j - 1) * g) as usize];
        for (h, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
            for r in 0..j {
                next[h + (r * g) as usize] += c;
            }
        }
        counts = next;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(h, c)| (h as u64, c))
        .collect())
}

/// Polynomial part `W_1(s)`.
pub fn wave1(g: &GeneratorSet) -> Poly {
    let m = g.m();
    hob_poly(m - 1, &rational_generators(g.generators()))
        .expect("validated generators")
        .shift(&Rational::from(g.s_m()))
        .scale(&g.normalizer())
}

/// `j^{k_j-m} / ((m-1)! pi_m)`
fn wave_prefactor(split: &WaveSplit, g: &GeneratorSet) -> Rational {
    let spread = Rational::from(split.j).pow(split.nondivisible.len() as u32);
    g.normalizer() / spread
}

/// The wave `W_j` for `j >= 2` as a period-`j` quasipolynomial, from the
/// single-sum form over `B_{m-1}^(m)(. | d_j)`.
pub fn wave_j(j: u64, g: &GeneratorSet) -> Result<QuasiPoly> {
    wave_j_capped(j, g, DEFAULT_ENUMERATION_CAP)
}

pub fn wave_j_capped(j: u64, g: &GeneratorSet, cap: u64) -> Result<QuasiPoly> {
    let split = g.split(j)?;
    let hist = shift_histogram(j, &split.nondivisible, cap)?;
    let s_m = g.s_m() as i64;
    let base =
        hob_poly(g.m() - 1, &rational_generators(&split.modified))?.shift(&Rational::from(s_m));
    let shifted = par::map(&hist, |&(h, _)| base.shift(&Rational::from(h)));
    let prefactor = wave_prefactor(&split, g);
    let classes = par::map_range(0, j, |c| {
        let mut acc = Poly::zero();
        for (&(h, count), p) in hist.iter().zip(&shifted) {
            let weight = count as i64 * psi(j, c as i64 + s_m + h as i64);
            acc.add_scaled(p, &Rational::from(weight));
        }
        acc.scale(&prefactor)
    });
    QuasiPoly::new(j, classes)
}

/// The same wave from the original double sum, which splits the argument of
/// the Bernoulli polynomial between the divisible generators and the rest:
///
/// ```text
/// W_j(s) = j^{k_j-m} / ((m-1)! pi_m)
///        * sum_{n<k_j} C(m-1, n) B_n^(k_j)(s + s_m | d_div)
///        * sum_r B_{m-n-1}^(m-k_j)(r.d' | j d') Psi_j(s + s_m + r.d')
/// ```
///
/// Every residue class has degree below `k_j` by construction.
pub fn wave_j_reference(j: u64, g: &GeneratorSet) -> Result<QuasiPoly> {
    wave_j_reference_capped(j, g, DEFAULT_ENUMERATION_CAP)
}

pub fn wave_j_reference_capped(j: u64, g: &GeneratorSet, cap: u64) -> Result<QuasiPoly> {
    let split = g.split(j)?;
    let hist = shift_histogram(j, &split.nondivisible, cap)?;
    let m = g.m();
    let k_j = split.k_j();
    let s_m = g.s_m() as i64;
    let divisible = rational_generators(&split.divisible);
    let outer: Vec<Poly> = (0..k_j)
        .map(|n| {
            let c = Rational::from(binomial(m as u64 - 1, n as u64));
            Ok(hob_poly(n, &divisible)?
                .shift(&Rational::from(s_m))
                .scale(&c))
        })
        .collect::<Result<_>>()?;
    let scaled_rest: Vec<Rational> = split
        .nondivisible
        .iter()
        .map(|&x| Rational::from(x * j))
        .collect();
    // inner[n][i] = B_{m-n-1}(h_i | j d')
    let inner: Vec<Vec<Rational>> = (0..k_j)
        .map(|n| {
            let p = hob_poly_any_order(m - n - 1, &scaled_rest)?;
            Ok(hist
                .iter()
                .map(|&(h, _)| p.eval(&Rational::from(h)))
                .collect())
        })
        .collect::<Result<_>>()?;
    let prefactor = wave_prefactor(&split, g);
    let classes = par::map_range(0, j, |c| {
        let mut acc = Poly::zero();
        for (n, outer_n) in outer.iter().enumerate() {
            let weight: Rational = hist
                .iter()
                .zip(&inner[n])
                .map(|(&(h, count), b)| {
                    b * Rational::from(count as i64 * psi(j, c as i64 + s_m + h as i64))
                })
                .sum();
            acc.add_scaled(outer_n, &weight);
        }
        acc.scale(&prefactor)
    });
    QuasiPoly::new(j, classes)
}

/// Every wave keyed by `j`, with `W_1` as a period-1 quasipolynomial.
pub fn sylvester_waves(g: &GeneratorSet, cap: u64) -> Result<BTreeMap<u64, QuasiPoly>> {
    let divisors = g.divisors();
    let waves = par::map(&divisors, |&j| {
        if j == 1 {
            Ok(QuasiPoly::from_poly(wave1(g)))
        } else {
            wave_j_capped(j, g, cap)
        }
    });
    divisors
        .into_iter()
        .zip(waves)
        .map(|(j, w)| Ok((j, w?)))
        .collect()
}

/// `W(s, d)` as a quasipolynomial over the period `lcm(d)`.
pub fn partition_quasipoly(g: &GeneratorSet) -> Result<QuasiPoly> {
    partition_quasipoly_capped(g, DEFAULT_ENUMERATION_CAP)
}

pub fn partition_quasipoly_capped(g: &GeneratorSet, cap: u64) -> Result<QuasiPoly> {
    Ok(assemble(g, &sylvester_waves(g, cap)?))
}

/// Sums waves over the common period `lcm(d)`.
pub fn assemble(g: &GeneratorSet, waves: &BTreeMap<u64, QuasiPoly>) -> QuasiPoly {
    let period = g.lcm();
    let classes = par::map_range(0, period, |c| {
        let mut acc = Poly::zero();
        for w in waves.values() {
            acc.add_scaled(w.class(c), &Rational::one());
        }
        acc
    });
    QuasiPoly::new(period, classes).expect("one class per residue")
}

/// The wave sum with every circulator weight replaced by one. Equals `W_1`
/// by the multiplication theorem.
pub fn unit_weight_lhs(j: u64, g: &GeneratorSet) -> Result<Poly> {
    unit_weight_lhs_capped(j, g, DEFAULT_ENUMERATION_CAP)
}

pub fn unit_weight_lhs_capped(j: u64, g: &GeneratorSet, cap: u64) -> Result<Poly> {
    let split = g.split(j)?;
    let hist = shift_histogram(j, &split.nondivisible, cap)?;
    let base =
        hob_poly(g.m() - 1, &rational_generators(&split.modified))?.shift(&Rational::from(g.s_m()));
    let shifted = par::map(&hist, |&(h, count)| {
        base.shift(&Rational::from(h)).scale(&Rational::from(count))
    });
    let mut acc = Poly::zero();
    for p in &shifted {
        acc.add_scaled(p, &Rational::one());
    }
    Ok(acc.scale(&wave_prefactor(&split, g)))
}

/// `sum_{r in {0..j-1}^mu} B_nu^(q)(t + r.d | e) Psi_j(s + r.d)`.
///
/// Vanishes for `nu < mu` when no `d_i` is divisible by `j`; that condition
/// is required here.
pub fn sigma(
    nu: usize,
    s: i64,
    t: &Rational,
    d: &[u64],
    e: &[Rational],
    j: u64,
) -> Result<Rational> {
    sigma_capped(nu, s, t, d, e, j, DEFAULT_ENUMERATION_CAP)
}

pub fn sigma_capped(
    nu: usize,
    s: i64,
    t: &Rational,
    d: &[u64],
    e: &[Rational],
    j: u64,
    cap: u64,
) -> Result<Rational> {
    if j < 2 {
        return Err(Error::Domain(format!("sigma needs j >= 2, got {j}")));
    }
    if d.is_empty() || d.contains(&0) {
        return Err(Error::Domain(
            "sigma needs a non-empty list of positive d".into(),
        ));
    }
    if let Some(bad) = d.iter().find(|&&x| x % j == 0) {
        return Err(Error::Domain(format!("{j} divides d_i = {bad}")));
    }
    let hist = shift_histogram(j, d, cap)?;
    let p = hob_poly(nu, e)?;
    let terms = par::map(&hist, |&(h, count)| {
        let weight = count as i64 * psi(j, s + h as i64);
        p.eval(&(t + Rational::from(h))) * Rational::from(weight)
    });
    Ok(terms.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::bernoulli_poly;
    use crate::oracle::dp_count;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn gs(d: &[u64]) -> GeneratorSet {
        GeneratorSet::new(d.to_vec()).unwrap()
    }

    fn consts(v: &[Rational]) -> Vec<Poly> {
        v.iter().cloned().map(Poly::constant).collect()
    }

    /// Every r vector, enumerated explicitly.
    fn all_shift_vectors(j: u64, d: &[u64]) -> Vec<u64> {
        let mut sums = vec![0u64];
        for &g in d {
            sums = sums
                .iter()
                .flat_map(|&h| (0..j).map(move |r| h + r * g))
                .collect();
        }
        sums
    }

    #[test]
    fn generator_set_basics() {
        let g = gs(&[6, 10, 15]);
        assert_eq!(g.m(), 3);
        assert_eq!(g.s_m(), 31);
        assert_eq!(g.pi_m(), &BigUint::from(900u32));
        assert_eq!(g.lcm(), 30);
        assert_eq!(g.divisors(), vec![1, 2, 3, 5, 6, 10, 15]);
        assert_eq!(
            "1, 1,2".parse::<GeneratorSet>().unwrap().generators(),
            &[1, 1, 2]
        );
        assert!("1,0".parse::<GeneratorSet>().is_err());
        assert!("".parse::<GeneratorSet>().is_err());
        assert!("1,-2".parse::<GeneratorSet>().is_err());
        assert!(GeneratorSet::new(vec![]).is_err());
    }

    #[test]
    fn split_structure() {
        let s = gs(&[2, 4]).split(4).unwrap();
        assert_eq!(s.divisible, vec![4]);
        assert_eq!(s.nondivisible, vec![2]);
        assert_eq!(s.modified, vec![4, 8]);
        assert_eq!(s.k_j(), 1);
        assert!(s.modified.iter().all(|x| x % 4 == 0));
        assert!(gs(&[2, 3]).split(5).is_err());
        assert!(gs(&[2, 3]).split(1).is_err());
    }

    #[test]
    fn histogram_matches_enumeration() {
        for (j, d) in [
            (2, vec![1, 3, 5]),
            (5, vec![1, 2, 3, 4]),
            (4, vec![2]),
            (3, vec![]),
        ] {
            let mut expect: BTreeMap<u64, u64> = BTreeMap::new();
            for h in all_shift_vectors(j, &d) {
                *expect.entry(h).or_default() += 1;
            }
            let got: BTreeMap<u64, u64> = shift_histogram(j, &d, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = shift_histogram(10, &[1, 3, 7], 999).unwrap_err();
        assert_eq!(
            err,
            Error::CapExceeded {
                j: 10,
                exponent: 3,
                count: 1000,
                cap: 999
            }
        );
        assert!(shift_histogram(10, &[1, 3, 7], 1000).is_ok());
        let g = gs(&[1, 2, 3, 4, 5, 60]);
        assert!(matches!(
            wave_j_capped(60, &g, 1000),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            partition_quasipoly_capped(&g, 1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn polynomial_part() {
        assert_eq!(wave1(&gs(&[1])), Poly::constant(Rational::one()));
        assert_eq!(wave1(&gs(&[1, 2])), Poly::new(vec![q(3, 4), q(1, 2)]));
        assert_eq!(wave1(&gs(&[1, 2])).eval(&Rational::from(5)), q(13, 4));
    }

    #[test]
    fn second_wave_of_one_two() {
        let expect = QuasiPoly::new(2, consts(&[q(1, 4), q(-1, 4)])).unwrap();
        assert_eq!(wave_j(2, &gs(&[1, 2])).unwrap(), expect);
        assert_eq!(wave_j_reference(2, &gs(&[1, 2])).unwrap(), expect);
        // (1/4)[(s+1)(-1)^{s+1} + (s+2)(-1)^s]
        for s in 0..10u64 {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let hand = q(1, 4) * Rational::from(-(s as i64 + 1) * sign + (s as i64 + 2) * sign);
            assert_eq!(expect.eval(s), hand);
        }
    }

    #[test]
    fn all_divisible_wave_is_single_term() {
        // every generator divisible by j: no r enumeration
        let g = gs(&[2, 4]);
        let w = wave_j(2, &g).unwrap();
        let base = hob_poly(1, &rational_generators(&[2, 4]))
            .unwrap()
            .shift(&Rational::from(6))
            .scale(&g.normalizer());
        for c in 0..2 {
            assert_eq!(
                w.class(c),
                &base.scale(&Rational::from(psi(2, c as i64 + 6)))
            );
        }
        assert_eq!(unit_weight_lhs(2, &g).unwrap(), wave1(&g));
    }

    #[test]
    fn assembled_small_cases() {
        let w = partition_quasipoly(&gs(&[1])).unwrap();
        assert_eq!(w, QuasiPoly::from_poly(Poly::constant(Rational::one())));
        let w = partition_quasipoly(&gs(&[1, 2])).unwrap();
        assert_eq!(w.classes()[0], Poly::new(vec![q(1, 1), q(1, 2)]));
        assert_eq!(w.classes()[1], Poly::new(vec![q(1, 2), q(1, 2)]));
        assert_eq!(w.eval(4), Rational::from(3));
        assert_eq!(w.eval(5), Rational::from(3));
        assert_eq!(
            partition_quasipoly(&gs(&[2, 4])).unwrap().eval(3),
            Rational::zero()
        );
        let w = partition_quasipoly(&gs(&[1, 2, 3])).unwrap();
        assert_eq!(w.eval(6), Rational::from(7));
        assert_eq!(w.eval(0), Rational::one());
        assert_eq!(w.eval(60), Rational::from(331));
    }

    #[test]
    fn matches_dp_on_small_sets() {
        for d in [vec![1, 2, 3], vec![3, 5], vec![2, 2, 3], vec![4, 6]] {
            let g = gs(&d);
            let w = partition_quasipoly(&g).unwrap();
            let t = dp_count(150, &d).unwrap();
            for s in 0..=150 {
                assert_eq!(
                    w.eval(s),
                    Rational::from(t.get(s).clone()),
                    "d = {d:?}, s = {s}"
                );
            }
        }
    }

    #[test]
    fn formulas_agree() {
        for d in [vec![1, 2, 3], vec![2, 4], vec![2, 3, 4, 6], vec![1, 1, 2]] {
            let g = gs(&d);
            for j in g.divisors().into_iter().skip(1) {
                let a = wave_j(j, &g).unwrap();
                let b = wave_j_reference(j, &g).unwrap();
                assert_eq!(a, b, "d = {d:?}, j = {j}");
                let k_j = g.split(j).unwrap().k_j();
                assert!(a.max_degree().is_none_or(|deg| deg < k_j));
                assert_eq!(unit_weight_lhs(j, &g).unwrap(), wave1(&g));
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let e = [Rational::from(1)];
        for s in 0..4 {
            for t in [q(0, 1), q(3, 7), q(-5, 2)] {
                assert!(sigma(0, s, &t, &[1], &e, 2).unwrap().is_zero());
                assert!(sigma(1, s, &t, &[1, 3], &e, 2).unwrap().is_zero());
            }
        }
        assert!(sigma(0, 0, &q(0, 1), &[2], &e, 2).is_err());
        assert!(sigma(0, 0, &q(0, 1), &[], &e, 2).is_err());
    }

    #[test]
    fn sigma_past_vanishing_range() {
        // nu = mu = 1, d = {1}, e = {1}, j = 2, by direct summation over r
        let b1 = bernoulli_poly(1);
        for s in 0..4i64 {
            for t in [q(0, 1), q(2, 3)] {
                let direct: Rational = (0..2i64)
                    .map(|r| {
                        let sign = if (s + r) % 2 == 0 { 1 } else { -1 };
                        b1.eval(&(&t + Rational::from(r))) * Rational::from(sign)
                    })
                    .sum();
                let got = sigma(1, s, &t, &[1], &[Rational::one()], 2).unwrap();
                assert_eq!(got, direct);
                assert_eq!(got, Rational::from(if s % 2 == 0 { -1 } else { 1 }));
            }
        }
    }
}
