//! The prime circulator `Psi_j(s)`: the sum of `rho^s` over the primitive
//! j-th roots of unity `rho`. This is Ramanujan's sum `c_j(s)`, evaluated
//! exactly as `sum_{d | gcd(j, s)} mu(j / d) d`.

use crate::arith::{divisors, gcd, mobius, totient};

/// `Psi_j(s)` for any integer `s`.
pub fn psi(j: u64, s: i64) -> i64 {
    assert!(j >= 1, "circulator period must be positive");
    let r = s.rem_euclid(j as i64) as u64;
    let g = if r == 0 { j } else { gcd(j, r) };
    divisors(g)
        .into_iter()
        .map(|d| mobius(j / d) * d as i64)
        .sum()
}

/// One period of `Psi_j`, `values[c] = Psi_j(c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculatorTable {
    j: u64,
    values: Vec<i64>,
}

impl CirculatorTable {
    pub fn new(j: u64) -> Self {
        CirculatorTable {
            j,
            values: (0..j as i64).map(|c| psi(j, c)).collect(),
        }
    }

    pub fn period(&self) -> u64 {
        self.j
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, s: i64) -> i64 {
        self.values[s.rem_euclid(self.j as i64) as usize]
    }
}

/// Largest deviation over one period between [`psi`] and the defining
/// floating-point sum of `exp(2 pi i n s / j)` over `n` coprime to `j`.
pub fn psi_float_check(j: u64) -> f64 {
    assert!(j >= 1, "circulator period must be positive");
    let roots: Vec<u64> = (0..j).filter(|&n| gcd(n, j) == 1).collect();
    debug_assert_eq!(roots.len() as u64, totient(j));
    (0..j)
        .map(|s| {
            let (re, im) = roots.iter().fold((0.0f64, 0.0f64), |(re, im), &n| {
                let angle = std::f64::consts::TAU * ((n * s) % j) as f64 / j as f64;
                (re + angle.cos(), im + angle.sin())
            });
            let exact = psi(j, s as i64) as f64;
            (re - exact).hypot(im)
        })
        .fold(0.0, f64::max)
}
