//! Characteristic-zero comparisons: the Weyl dimension formula in type C and
//! the rank-3 difference of two Weyl modules.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::params::{self, half};
use crate::weights::{rho, DominantWeight};

/// Dimension of the Weyl module of highest weight `lam` for `Sp(2g)`.
///
/// With `ℓ = λ + ρ` and `r = ρ = (g, …, 1)` in ε-coordinates this is
/// `Π_{i<j} (ℓ_i² − ℓ_j²)/(r_i² − r_j²) · Π_i ℓ_i / r_i`.
pub fn weyl_dim(g: usize, lam: &DominantWeight) -> Result<BigUint> {
    if lam.g() != g {
        return Err(Error::RankMismatch(g, lam.g()));
    }
    let shifted = lam.add(&rho(g))?.to_epsilon();
    let l: Vec<BigInt> = shifted.coords().iter().map(|&x| BigInt::from(x)).collect();
    let r: Vec<BigInt> = rho(g).to_epsilon().coords().iter().map(|&x| BigInt::from(x)).collect();

    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..g {
        num *= &l[i];
        den *= &r[i];
        for j in i + 1..g {
            num *= &l[i] * &l[i] - &l[j] * &l[j];
            den *= &r[i] * &r[i] - &r[j] * &r[j];
        }
    }
    let q = BigRational::new(num, den);
    if !q.is_integer() || !q.is_positive() {
        return Err(Error::NonIntegralResult(format!("Weyl dimension of {lam}: {q}")));
    }
    Ok(q.to_integer().to_biguint().expect("positive"))
}

/// Rank-3, even-type dimension via Weyl modules: for
/// `λ = c·ω_2 + (d−1−c)·ω_3` this is `dim Δ(λ)` when `c ≤ 1` and
/// `dim Δ(λ) − dim Δ(λ − 2ω_2)` otherwise.
pub fn jantzen_rank3_dim(p: u32, c: u32) -> Result<BigUint> {
    params::check(p, 3, c, 0)?;
    let d = half(p);
    let lam = DominantWeight::new(vec![0, c as u64, (d - 1 - c) as u64]);
    let top = weyl_dim(3, &lam)?;
    if c <= 1 {
        return Ok(top);
    }
    let mut two_w2 = DominantWeight::zero(3);
    two_w2.add_fundamental(2, 2);
    let sub = weyl_dim(3, &lam.checked_sub(&two_w2)?)?;
    if sub >= top {
        return Err(Error::NonIntegralResult(format!("nonpositive difference {top} − {sub}")));
    }
    Ok(top - sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lollipop;

    fn w(omega: &[u64]) -> DominantWeight {
        DominantWeight::new(omega.to_vec())
    }

    #[test]
    fn examples() {
        assert_eq!(weyl_dim(2, &w(&[1, 0])).unwrap(), 4u32.into());
        assert_eq!(weyl_dim(2, &w(&[0, 1])).unwrap(), 5u32.into());
        assert_eq!(weyl_dim(3, &w(&[0, 0, 1])).unwrap(), 14u32.into());
        assert_eq!(weyl_dim(3, &w(&[0, 1, 0])).unwrap(), 14u32.into());
        // adjoint = Sym²(standard)
        assert_eq!(weyl_dim(3, &w(&[2, 0, 0])).unwrap(), 21u32.into());
        assert_eq!(weyl_dim(4, &w(&[2, 0, 0, 0])).unwrap(), 36u32.into());
    }

    #[test]
    fn trivial_module() {
        for g in 1..=8 {
            assert_eq!(weyl_dim(g, &DominantWeight::zero(g)).unwrap(), 1u32.into());
        }
    }

    #[test]
    fn fundamental_dims() {
        // dim Λ^k(2g) − dim Λ^{k−2}(2g)
        fn binom(n: u64, k: i64) -> u64 {
            if k < 0 {
                return 0;
            }
            (0..k as u64).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for g in 1..=7 {
            for k in 1..=g {
                let expect = binom(2 * g as u64, k as i64) - binom(2 * g as u64, k as i64 - 2);
                let got = weyl_dim(g, &DominantWeight::fundamental(g, k)).unwrap();
                assert_eq!(got, expect.into(), "g={g} k={k}");
            }
        }
    }

    #[test]
    fn rank_mismatch() {
        assert!(matches!(weyl_dim(3, &w(&[1, 0])), Err(Error::RankMismatch(3, 2))));
    }

    #[test]
    fn jantzen_examples() {
        assert_eq!(jantzen_rank3_dim(5, 0).unwrap(), 14u32.into());
        assert_eq!(jantzen_rank3_dim(7, 1).unwrap(), weyl_dim(3, &w(&[0, 1, 1])).unwrap());
        let expect = weyl_dim(3, &w(&[0, 2, 2])).unwrap() - weyl_dim(3, &w(&[0, 0, 2])).unwrap();
        assert_eq!(jantzen_rank3_dim(11, 2).unwrap(), expect);
        assert!(jantzen_rank3_dim(11, 5).is_err());
        assert!(jantzen_rank3_dim(9, 1).is_err());
    }

    #[test]
    fn jantzen_matches_count() {
        for p in [5, 7, 11, 13] {
            for c in 0..half(p) {
                let n = lollipop::count(p, 3, c, 0).unwrap();
                assert_eq!(jantzen_rank3_dim(p, c).unwrap(), n, "p={p} c={c}");
            }
        }
    }
}
