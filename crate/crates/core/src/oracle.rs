//! Brute-force ground truth for `W(s, d)`: a coin-counting recurrence and a
//! truncated power-series product. The two share no code with each other or
//! with the closed form.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `counts[s] = W(s, d)` for `s = 0..=s_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenumerantTable {
    d: Vec<u64>,
    s_max: u64,
    counts: Vec<BigUint>,
}

impl DenumerantTable {
    pub fn generators(&self) -> &[u64] {
        &self.d
    }

    pub fn s_max(&self) -> u64 {
        self.s_max
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, s: u64) -> &BigUint {
        &self.counts[s as usize]
    }
}

fn check(d: &[u64]) -> Result<()> {
    if d.is_empty() {
        return Err(Error::InvalidGenerators("generator list is empty".into()));
    }
    if d.contains(&0) {
        return Err(Error::InvalidGenerators(
            "generator 0 is not positive".into(),
        ));
    }
    Ok(())
}

/// Coin-counting recurrence: for each generator `g`, `counts[t] += counts[t - g]`
/// for ascending `t`.
pub fn dp_count(s_max: u64, d: &[u64]) -> Result<DenumerantTable> {
    check(d)?;
    let n = s_max as usize;
    let mut counts = vec![BigUint::zero(); n + 1];
    counts[0] = BigUint::one();
    for &g in d {
        let g = g as usize;
        for t in g..=n {
            let (lo, hi) = counts.split_at_mut(t);
            hi[0] += &lo[t - g];
        }
    }
    Ok(DenumerantTable {
        d: d.to_vec(),
        s_max,
        counts,
    })
}

/// Coefficients of `x^0..=x^s_max` in `prod_i 1 / (1 - x^{d_i})`, by
/// multiplying out the truncated geometric series one factor at a time.
pub fn series_count(s_max: u64, d: &[u64]) -> Result<Vec<BigUint>> {
    check(d)?;
    let n = s_max as usize;
    let mut series = vec![BigUint::zero(); n + 1];
    series[0] = BigUint::one();
    for &g in d {
        let g = g as usize;
        let geometric: Vec<usize> = (0..=n).step_by(g).collect();
        let mut product = vec![BigUint::zero(); n + 1];
        for (i, a) in series.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for &e in geometric.iter().take_while(|&&e| i + e <= n) {
                product[i + e] += a;
            }
        }
        series = product;
    }
    Ok(series)
}
