//! Bernoulli numbers, Bernoulli polynomials, and Nörlund's higher-order
//! Bernoulli polynomials `B_n^(m)(x | d_1..d_m)`, generated by
//!
//! ```text
//! e^{xt} * prod_i d_i t / (e^{d_i t} - 1) = sum_n B_n^(m)(x | d) t^n / n!
//! ```
//!
//! The sign convention is `B_1 = -1/2`. Generators are rationals here so the
//! multiplication theorem, whose right side divides generators by integer
//! factors, can be stated directly.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{binomial, Rational};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Memo table for Bernoulli numbers and higher-order constants
/// `B_n^(m)(0 | d)`.
///
/// Entries are computed outside the lock and published whole, so a reader
/// only ever sees a complete prefix. Keys are the sorted generator multiset.
#[derive(Default)]
pub struct BernoulliCache {
    numbers: RwLock<Arc<Vec<Rational>>>,
    constants: RwLock<HashMap<Vec<Rational>, Arc<Vec<Rational>>>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache used by the free functions in this module.
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    /// `B_0..=B_n`, possibly longer.
    pub fn numbers(&self, n: usize) -> Arc<Vec<Rational>> {
        {
            let cur = self.numbers.read().unwrap();
            if cur.len() > n {
                return Arc::clone(&cur);
            }
        }
        let computed = Arc::new(compute_bernoulli_numbers(n));
        let mut slot = self.numbers.write().unwrap();
        if slot.len() <= n {
            *slot = Arc::clone(&computed);
        }
        computed
    }

    /// `B_0^(m)(0 | d) ..= B_{n_max}^(m)(0 | d)`, possibly with more entries
    /// if a longer prefix is already cached.
    pub fn hob_constants(&self, n_max: usize, d: &[Rational]) -> Result<Arc<Vec<Rational>>> {
        check_generators(d)?;
        let mut key = d.to_vec();
        key.sort();
        {
            let map = self.constants.read().unwrap();
            if let Some(v) = map.get(&key) {
                if v.len() > n_max {
                    return Ok(Arc::clone(v));
                }
            }
        }
        let numbers = self.numbers(n_max);
        let computed = Arc::new(convolve_tower(&numbers[..=n_max], &key));
        let mut map = self.constants.write().unwrap();
        let slot = map.entry(key).or_default();
        if slot.len() <= n_max {
            *slot = Arc::clone(&computed);
        }
        Ok(computed)
    }
}

fn check_generators(d: &[Rational]) -> Result<()> {
    if d.is_empty() {
        return Err(Error::InvalidGenerators("generator list is empty".into()));
    }
    if let Some(bad) = d.iter().find(|g| g.is_negative() || g.is_zero()) {
        return Err(Error::InvalidGenerators(format!(
            "generator {bad} is not positive"
        )));
    }
    Ok(())
}

fn compute_bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for k in 1..=n as u64 {
        // sum_{i=0}^{k} C(k+1, i) B_i = 0
        let s: Rational = b
            .iter()
            .enumerate()
            .map(|(i, bi)| bi * Rational::from(binomial(k + 1, i as u64)))
            .sum();
        b.push(-s / Rational::from(k + 1));
    }
    b
}

/// c_n = sum_k C(n, k) a_k b_{n-k}
fn binomial_convolution(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    (0..a.len().min(b.len()))
        .map(|n| {
            (0..=n)
                .filter(|&k| !a[k].is_zero() && !b[n - k].is_zero())
                .map(|k| &a[k] * &b[n - k] * Rational::from(binomial(n as u64, k as u64)))
                .sum()
        })
        .collect()
}

/// Constants of `prod_i d_i t / (e^{d_i t} - 1)`; the order-0 tower (empty
/// `d`) is `1, 0, 0, ...`.
fn convolve_tower(numbers: &[Rational], d: &[Rational]) -> Vec<Rational> {
    let mut acc: Vec<Rational> = (0..numbers.len())
        .map(|n| {
            if n == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    for g in d {
        let mut power = Rational::one();
        let scaled: Vec<Rational> = numbers
            .iter()
            .map(|b| {
                let v = b * &power;
                power *= g;
                v
            })
            .collect();
        acc = binomial_convolution(&acc, &scaled);
    }
    acc
}

/// `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    BernoulliCache::global().numbers(n)[..=n].to_vec()
}

/// The classical Bernoulli polynomial `B_n(x) = sum_k C(n, k) B_k x^{n-k}`.
pub fn bernoulli_poly(n: usize) -> Poly {
    let b = BernoulliCache::global().numbers(n);
    Poly::new(
        (0..=n)
            .map(|k| &b[n - k] * Rational::from(binomial(n as u64, k as u64)))
            .collect(),
    )
}

/// `B_n^(m)(0 | d)` for `n = 0..=n_max`, by m-fold binomial convolution of
/// the scaled sequences `B_k d_i^k`.
pub fn hob_constants(n_max: usize, d: &[Rational]) -> Result<Vec<Rational>> {
    Ok(BernoulliCache::global().hob_constants(n_max, d)?[..=n_max].to_vec())
}

/// `B_n^(m)(x | d) = sum_k C(n, k) B_{n-k}^(m)(0 | d) x^k`, monic of degree n.
pub fn hob_poly(n: usize, d: &[Rational]) -> Result<Poly> {
    let c = BernoulliCache::global().hob_constants(n, d)?;
    Ok(poly_from_constants(n, &c))
}

/// Same as [`hob_poly`] but also accepts the empty generator list, where the
/// order-0 polynomial is `x^n`.
pub(crate) fn hob_poly_any_order(n: usize, d: &[Rational]) -> Result<Poly> {
    if d.is_empty() {
        return Ok(Poly::monomial(Rational::one(), n));
    }
    hob_poly(n, d)
}

fn poly_from_constants(n: usize, c: &[Rational]) -> Poly {
    Poly::new(
        (0..=n)
            .map(|k| &c[n - k] * Rational::from(binomial(n as u64, k as u64)))
            .collect(),
    )
}

/// Integer generators as rationals.
pub fn rational_generators(d: &[u64]) -> Vec<Rational> {
    d.iter().map(|&x| Rational::from(x)).collect()
}

/// Left side of the multiplication theorem:
/// `sum_{r_i = 0}^{m_i - 1} B_k^(n)(s + sum_i r_i d_i / m_i | d)` as a
/// polynomial in `s`, where `scale_factors[i] = m_i` applies to `d[i]`.
pub fn multiplication_sum(k: usize, d: &[Rational], scale_factors: &[u64]) -> Result<Poly> {
    check_scale_factors(d, scale_factors)?;
    let base = hob_poly(k, d)?;
    let steps: Vec<Rational> = d
        .iter()
        .zip(scale_factors)
        .map(|(g, &m)| g / &Rational::from(m))
        .collect();
    let mut total = Poly::zero();
    let mut r = vec![0u64; scale_factors.len()];
    loop {
        let shift: Rational = r
            .iter()
            .zip(&steps)
            .map(|(&ri, st)| st * Rational::from(ri))
            .sum();
        total.add_scaled(&base.shift(&shift), &Rational::one());
        // odometer over r
        let mut i = 0;
        loop {
            if i == r.len() {
                return Ok(total);
            }
            r[i] += 1;
            if r[i] < scale_factors[i] {
                break;
            }
            r[i] = 0;
            i += 1;
        }
    }
}

/// Right side of the multiplication theorem:
/// `(prod_i m_i) B_k^(n)(s | d_1/m_1, .., d_p/m_p, d_{p+1}, .., d_n)`.
pub fn multiplication_rhs(k: usize, d: &[Rational], scale_factors: &[u64]) -> Result<Poly> {
    check_scale_factors(d, scale_factors)?;
    let mut scaled = d.to_vec();
    for (g, &m) in scaled.iter_mut().zip(scale_factors) {
        *g = &*g / &Rational::from(m);
    }
    let factor: u64 = scale_factors.iter().product();
    Ok(hob_poly(k, &scaled)?.scale(&Rational::from(factor)))
}

fn check_scale_factors(d: &[Rational], scale_factors: &[u64]) -> Result<()> {
    if scale_factors.len() > d.len() {
        return Err(Error::Domain(format!(
            "{} scale factors for {} generators",
            scale_factors.len(),
            d.len()
        )));
    }
    if scale_factors.contains(&0) {
        return Err(Error::Domain("scale factors must be positive".into()));
    }
    Ok(())
}
