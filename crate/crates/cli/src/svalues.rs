use std::str::FromStr;

/// Requested values of `s`: `6`, `10^6`, `0..20` (inclusive), or `1,5,9`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SValues {
    Range(u64, u64),
    List(Vec<u64>),
}

impl SValues {
    pub fn values(&self) -> Vec<u64> {
        match self {
            SValues::Range(a, b) => (*a..=*b).collect(),
            SValues::List(v) => v.clone(),
        }
    }

    pub fn max(&self) -> u64 {
        match self {
            SValues::Range(_, b) => *b,
            SValues::List(v) => v.iter().copied().max().unwrap_or(0),
        }
    }
}

fn parse_value(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let bad = || format!("not a nonnegative integer: {s:?}");
    match s.split_once('^') {
        Some((base, exp)) => {
            let base: u64 = base.trim().parse().map_err(|_| bad())?;
            let exp: u32 = exp.trim().parse().map_err(|_| bad())?;
            base.checked_pow(exp)
                .ok_or_else(|| format!("{s} overflows"))
        }
        None => s.parse().map_err(|_| bad()),
    }
}

impl FromStr for SValues {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some((a, b)) = s.split_once("..") {
            let (a, b) = (parse_value(a)?, parse_value(b)?);
            if a > b {
                return Err(format!("empty range {a}..{b}"));
            }
            return Ok(SValues::Range(a, b));
        }
        let list = s
            .split(',')
            .map(parse_value)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SValues::List(list))
    }
}
