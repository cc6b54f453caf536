//! Shared validation of the `(p, g, c, eps)` parameter space.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// `d = (p - 1) / 2`.
pub fn half(p: u32) -> u32 {
    (p - 1) / 2
}

pub fn check_prime(p: u32) -> Result<()> {
    if p < 5 || !is_prime(p as u64) {
        return Err(Error::bad("p must be an odd prime ≥ 5"));
    }
    Ok(())
}

pub fn check(p: u32, g: usize, c: u32, eps: u8) -> Result<()> {
    check_prime(p)?;
    if g == 0 {
        return Err(Error::bad("g must be ≥ 1"));
    }
    if c >= half(p) {
        return Err(Error::bad(format!(
            "c must satisfy 0 ≤ c ≤ (p-1)/2 - 1 = {}",
            half(p) - 1
        )));
    }
    if eps > 1 {
        return Err(Error::bad("eps must be 0 or 1"));
    }
    Ok(())
}

/// The four families of highest weights, selected by `(c, eps)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    I,
    II,
    III,
    IV,
}

impl Case {
    pub fn of(c: u32, eps: u8) -> Case {
        match (c, eps) {
            (0, 0) => Case::I,
            (_, 0) => Case::II,
            (0, _) => Case::IV,
            _ => Case::III,
        }
    }

    pub fn eps(self) -> u8 {
        match self {
            Case::I | Case::II => 0,
            Case::III | Case::IV => 1,
        }
    }

    pub fn all() -> [Case; 4] {
        [Case::I, Case::II, Case::III, Case::IV]
    }
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
            Case::IV => "IV",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Case> {
        match s {
            "I" | "1" => Ok(Case::I),
            "II" | "2" => Ok(Case::II),
            "III" | "3" => Ok(Case::III),
            "IV" | "4" => Ok(Case::IV),
            _ => Err(Error::bad(format!("unknown case {s:?}"))),
        }
    }
}

/// Primes in `[lo, hi]`.
pub fn primes_between(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).filter(|&n| is_prime(n as u64)).collect()
}
