//! Weight lattice of type `C_g`.
//!
//! Weights live in the ε-basis (`ω_i = ε_1 + … + ε_i`); the fundamental
//! weight basis is a view produced by [`DominantWeight`]. Simple roots are
//! `α_i = ε_i − ε_{i+1}` for `i < g` and `α_g = 2ε_g`, and the Weyl group acts
//! by signed permutations of the coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integral weight, coordinates in the ε-basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WeightJson", into = "WeightJson")]
pub struct Weight {
    coords: Vec<i64>,
}

/// A dominant weight, coefficients in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "WeightJson", into = "WeightJson")]
pub struct DominantWeight {
    omega: Vec<u64>,
}

/// A weight of the finite torus: coordinates reduced into `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedWeight {
    modulus: u64,
    coords: Vec<u64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "rank must be positive");
        Weight { coords }
    }

    pub fn zero(g: usize) -> Self {
        Weight::new(vec![0; g])
    }

    pub fn g(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1]) && *self.coords.last().unwrap() >= 0
    }

    fn zip_with(&self, other: &Weight, f: impl Fn(i64, i64) -> i64) -> Result<Weight> {
        if self.g() != other.g() {
            return Err(Error::RankMismatch(self.g(), other.g()));
        }
        Ok(Weight::new(
            self.coords.iter().zip(&other.coords).map(|(&a, &b)| f(a, b)).collect(),
        ))
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Simple root `α_i`, 1-based.
    pub fn simple_root(g: usize, i: usize) -> Weight {
        assert!((1..=g).contains(&i));
        let mut v = vec![0; g];
        if i < g {
            v[i - 1] = 1;
            v[i] = -1;
        } else {
            v[g - 1] = 2;
        }
        Weight::new(v)
    }

    /// Applies a signed permutation: coordinate `i` of the result is
    /// `signs[i] * self[perm[i]]`.
    pub fn signed_permute(&self, perm: &[usize], negate: &[bool]) -> Weight {
        Weight::new(
            perm.iter()
                .zip(negate)
                .map(|(&j, &neg)| if neg { -self.coords[j] } else { self.coords[j] })
                .collect(),
        )
    }

    /// True when every coordinate lies in `[lo, hi]`.
    pub fn in_box(&self, lo: i64, hi: i64) -> bool {
        self.coords.iter().all(|&n| (lo..=hi).contains(&n))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl DominantWeight {
    pub fn new(omega: Vec<u64>) -> Self {
        assert!(!omega.is_empty(), "rank must be positive");
        DominantWeight { omega }
    }

    pub fn zero(g: usize) -> Self {
        DominantWeight::new(vec![0; g])
    }

    /// `ω_i`, 1-based; `ω_0` is the zero weight.
    pub fn fundamental(g: usize, i: usize) -> Self {
        assert!(i <= g);
        let mut v = vec![0; g];
        if i > 0 {
            v[i - 1] = 1;
        }
        DominantWeight::new(v)
    }

    pub fn g(&self) -> usize {
        self.omega.len()
    }

    pub fn omega_coeffs(&self) -> &[u64] {
        &self.omega
    }

    pub fn to_epsilon(&self) -> Weight {
        omega_to_epsilon(self)
    }

    pub fn add(&self, other: &DominantWeight) -> Result<DominantWeight> {
        if self.g() != other.g() {
            return Err(Error::RankMismatch(self.g(), other.g()));
        }
        Ok(DominantWeight::new(
            self.omega.iter().zip(&other.omega).map(|(a, b)| a + b).collect(),
        ))
    }

    /// `self − other` in the ω-basis; fails if the difference is not dominant.
    pub fn checked_sub(&self, other: &DominantWeight) -> Result<DominantWeight> {
        if self.g() != other.g() {
            return Err(Error::RankMismatch(self.g(), other.g()));
        }
        let diff: Vec<i64> = self
            .omega
            .iter()
            .zip(&other.omega)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect();
        if diff.iter().any(|&x| x < 0) {
            let eps = self.to_epsilon().sub(&other.to_epsilon())?;
            return Err(Error::NotDominant(eps.coords));
        }
        Ok(DominantWeight::new(diff.into_iter().map(|x| x as u64).collect()))
    }

    /// `k · ω_i`, added in place; `i = 0` is a no-op.
    pub fn add_fundamental(&mut self, i: usize, k: u64) {
        if i > 0 {
            self.omega[i - 1] += k;
        }
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .omega
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| if k == 1 { format!("w{}", i + 1) } else { format!("{k}*w{}", i + 1) })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl ReducedWeight {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn g(&self) -> usize {
        self.coords.len()
    }

    /// The unique representative in `[1−h, h−1]^g` where `modulus = 2h`, if
    /// one exists. Residue `h` has two candidates and yields `None`.
    pub fn lift_symmetric(&self) -> Option<Weight> {
        if self.modulus % 2 != 0 {
            return None;
        }
        let h = self.modulus / 2;
        let coords = self
            .coords
            .iter()
            .map(|&r| match r.cmp(&h) {
                std::cmp::Ordering::Less => Some(r as i64),
                std::cmp::Ordering::Greater => Some(r as i64 - self.modulus as i64),
                std::cmp::Ordering::Equal => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Weight::new(coords))
    }
}

pub fn omega_to_epsilon(dw: &DominantWeight) -> Weight {
    let mut acc = 0i64;
    let mut coords = vec![0i64; dw.g()];
    for i in (0..dw.g()).rev() {
        acc += dw.omega[i] as i64;
        coords[i] = acc;
    }
    Weight::new(coords)
}

pub fn epsilon_to_omega(w: &Weight) -> Result<DominantWeight> {
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.coords.clone()));
    }
    let g = w.g();
    let omega = (0..g)
        .map(|i| {
            let next = if i + 1 < g { w.coords[i + 1] } else { 0 };
            (w.coords[i] - next) as u64
        })
        .collect();
    Ok(DominantWeight::new(omega))
}

/// `lhs ≤ rhs` in the dominance order: `rhs − lhs` is a nonnegative integer
/// combination of simple roots. Equivalent to every partial sum of the
/// difference being nonnegative with an even total.
pub fn dominance_leq(lhs: &Weight, rhs: &Weight) -> Result<bool> {
    let diff = rhs.sub(lhs)?;
    let mut s = 0i64;
    for &m in &diff.coords {
        s += m;
        if s < 0 {
            return Ok(false);
        }
    }
    Ok(s % 2 == 0)
}

/// The dominant weight in the Weyl orbit of `w`.
pub fn dominant_representative(w: &Weight) -> Weight {
    let mut coords: Vec<i64> = w.coords.iter().map(|n| n.abs()).collect();
    coords.sort_unstable_by(|a, b| b.cmp(a));
    Weight::new(coords)
}

/// `ρ = ω_1 + … + ω_g`.
pub fn rho(g: usize) -> DominantWeight {
    DominantWeight::new(vec![1; g])
}

/// `⟨λ + ρ, β^∨⟩` with `β^∨ = α_1^∨ + 2α_2^∨ + … + 2α_g^∨`. A dominant weight
/// lies in the closed fundamental alcove iff this is at most `p`.
pub fn alcove_pairing(lam: &DominantWeight) -> i64 {
    lam.omega
        .iter()
        .enumerate()
        .map(|(i, &eta)| if i == 0 { eta as i64 + 1 } else { 2 * (eta as i64 + 1) })
        .sum()
}

pub fn reduce_weight(w: &Weight, modulus: u64) -> ReducedWeight {
    assert!(modulus >= 1, "modulus must be positive");
    ReducedWeight {
        modulus,
        coords: w.coords.iter().map(|&n| n.rem_euclid(modulus as i64) as u64).collect(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Basis {
    Epsilon,
    Omega,
}

#[derive(Serialize, Deserialize)]
struct WeightJson {
    g: usize,
    basis: Basis,
    coords: Vec<i64>,
}

impl From<Weight> for WeightJson {
    fn from(w: Weight) -> Self {
        WeightJson { g: w.g(), basis: Basis::Epsilon, coords: w.coords }
    }
}

impl From<DominantWeight> for WeightJson {
    fn from(w: DominantWeight) -> Self {
        WeightJson {
            g: w.g(),
            basis: Basis::Omega,
            coords: w.omega.into_iter().map(|x| x as i64).collect(),
        }
    }
}

impl TryFrom<WeightJson> for Weight {
    type Error = Error;

    fn try_from(j: WeightJson) -> Result<Self> {
        if j.g == 0 || j.coords.len() != j.g {
            return Err(Error::bad(format!("expected {} coordinates, got {}", j.g, j.coords.len())));
        }
        match j.basis {
            Basis::Epsilon => Ok(Weight::new(j.coords)),
            Basis::Omega => Ok(DominantWeight::try_from(j)?.to_epsilon()),
        }
    }
}

impl TryFrom<WeightJson> for DominantWeight {
    type Error = Error;

    fn try_from(j: WeightJson) -> Result<Self> {
        if j.g == 0 || j.coords.len() != j.g {
            return Err(Error::bad(format!("expected {} coordinates, got {}", j.g, j.coords.len())));
        }
        match j.basis {
            Basis::Omega => {
                if j.coords.iter().any(|&x| x < 0) {
                    return Err(Error::NotDominant(j.coords));
                }
                Ok(DominantWeight::new(j.coords.into_iter().map(|x| x as u64).collect()))
            }
            Basis::Epsilon => epsilon_to_omega(&Weight::new(j.coords)),
        }
    }
}
