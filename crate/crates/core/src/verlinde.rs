//! Verlinde-type trigonometric sums, the closed-form dimension polynomials
//! for ranks 2–4, and exact interpolation of dimensions in `p`.
//!
//! The sums are evaluated in binary floating point at a configurable
//! precision and rounded to the nearest integer; the distance to that
//! integer must stay below a residual bound or the evaluation fails with
//! [`Error::PrecisionExhausted`].

use std::sync::OnceLock;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lollipop;
use crate::params::{self, half, Case};
use crate::poly::{self, Bivariate, RationalPolynomial};

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrigEvalConfig {
    pub precision_bits: usize,
    /// Maximum allowed distance from the nearest integer.
    pub residual_bound: Ratio<u64>,
}

impl TrigEvalConfig {
    pub fn new(precision_bits: usize, residual_bound: Ratio<u64>) -> Result<Self> {
        if precision_bits == 0 {
            return Err(Error::bad("precision_bits must be positive"));
        }
        if residual_bound.is_zero() || residual_bound > Ratio::new(1, 4) {
            return Err(Error::bad("residual bound must lie in (0, 1/4]"));
        }
        Ok(TrigEvalConfig { precision_bits, residual_bound })
    }

    /// `128 + (2g + 4)·⌈log2 p⌉` bits, residual bound `2^-32`.
    pub fn for_params(p: u32, g: usize) -> Self {
        let log2p = (u32::BITS - (p - 1).leading_zeros()) as usize;
        TrigEvalConfig {
            precision_bits: 128 + (2 * g + 4) * log2p,
            residual_bound: Ratio::new(1, 1 << 32),
        }
    }

    pub fn with_bits(&self, precision_bits: usize) -> Self {
        TrigEvalConfig { precision_bits, ..self.clone() }
    }
}

/// Runs `eval` at the configured precision, doubling it up to four times
/// the original on [`Error::PrecisionExhausted`].
pub fn with_retry<T>(cfg: &TrigEvalConfig, eval: impl Fn(&TrigEvalConfig) -> Result<T>) -> Result<T> {
    let mut last = Error::PrecisionExhausted { bits: cfg.precision_bits };
    for shift in 0..3 {
        match eval(&cfg.with_bits(cfg.precision_bits << shift)) {
            Err(e @ Error::PrecisionExhausted { .. }) => last = e,
            other => return other,
        }
    }
    Err(last)
}

struct Ctx {
    bits: usize,
    cc: Consts,
    pi: BigFloat,
}

impl Ctx {
    fn new(bits: usize) -> Self {
        let mut cc = Consts::new().expect("constants cache");
        let pi = cc.pi(bits, RM);
        Ctx { bits, cc, pi }
    }

    fn int(&self, n: u64) -> BigFloat {
        BigFloat::from_u64(n, self.bits)
    }

    /// `π · num / den`.
    fn angle(&self, num: u64, den: u64) -> BigFloat {
        self.pi.mul(&self.int(num), self.bits, RM).div(&self.int(den), self.bits, RM)
    }

    fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.bits, RM, &mut self.cc)
    }

    fn cos(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(self.bits, RM, &mut self.cc)
    }
}

/// Exact value of an integral `BigFloat`.
fn float_to_bigint(x: &BigFloat) -> Option<BigInt> {
    if x.is_zero() {
        return Some(BigInt::zero());
    }
    let (words, _, sign, exp, _) = x.as_raw_parts()?;
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let mantissa = BigUint::from_bytes_le(&bytes);
    let width = (bytes.len() * 8) as i64;
    let shift = exp as i64 - width;
    let magnitude = if shift >= 0 { mantissa << shift as usize } else { mantissa >> (-shift) as usize };
    let v = BigInt::from(magnitude);
    Some(if sign == Sign::Neg { -v } else { v })
}

/// Nearest integer to `x`, provided `|x − n|` is below the residual bound.
fn round_certified(x: &BigFloat, cfg: &TrigEvalConfig, ctx: &Ctx) -> Result<BigInt> {
    let exhausted = Error::PrecisionExhausted { bits: cfg.precision_bits };
    if x.is_nan() || x.is_inf() {
        return Err(exhausted);
    }
    let half = ctx.int(1).div(&ctx.int(2), ctx.bits, RM);
    let nearest = x.add(&half, ctx.bits, RM).floor();
    let residual = x.sub(&nearest, ctx.bits, RM).abs();
    let scaled = residual.mul(&ctx.int(*cfg.residual_bound.denom()), ctx.bits, RM);
    match scaled.cmp(&ctx.int(*cfg.residual_bound.numer())) {
        Some(ord) if ord < 0 => float_to_bigint(&nearest).ok_or(exhausted),
        _ => Err(exhausted),
    }
}

/// `D_g^{(2c)}(p) = (p/4)^{g−1} Σ_{j=1}^{d} sin(πj(2c+1)/p) · sin(πj/p)^{1−2g}`.
pub fn verlinde_d(p: u32, g: usize, c: u32, cfg: &TrigEvalConfig) -> Result<BigUint> {
    params::check(p, g, c, 0)?;
    let mut ctx = Ctx::new(cfg.precision_bits);
    let bits = ctx.bits;
    let mut sum = ctx.int(0);
    for j in 1..=half(p) as u64 {
        let num = ctx.angle(j * (2 * c as u64 + 1), p as u64);
        let num = ctx.sin(&num);
        let base = ctx.angle(j, p as u64);
        let den = ctx.sin(&base).powi(2 * g - 1, bits, RM);
        sum = sum.add(&num.div(&den, bits, RM), bits, RM);
    }
    let prefactor = ctx.int(p as u64).div(&ctx.int(4), bits, RM).powi(g - 1, bits, RM);
    let value = sum.mul(&prefactor, bits, RM);
    round_certified(&value, cfg, &ctx)?
        .to_biguint()
        .ok_or_else(|| Error::NonIntegralResult("negative Verlinde sum".into()))
}

/// `δ_g^{(2c)}(p) = (−1)^c (4^{1−g}/p) Σ_{j=1}^{d} sin(πj(2c+1)/p) · sin(πj/p) · cos(πj/p)^{−2g}`.
pub fn verlinde_delta(p: u32, g: usize, c: u32, cfg: &TrigEvalConfig) -> Result<BigInt> {
    params::check(p, g, c, 0)?;
    let mut ctx = Ctx::new(cfg.precision_bits);
    let bits = ctx.bits;
    let mut sum = ctx.int(0);
    for j in 1..=half(p) as u64 {
        let num = ctx.angle(j * (2 * c as u64 + 1), p as u64);
        let num = ctx.sin(&num);
        let base = ctx.angle(j, p as u64);
        let s = ctx.sin(&base);
        let den = ctx.cos(&base).powi(2 * g, bits, RM);
        sum = sum.add(&num.mul(&s, bits, RM).div(&den, bits, RM), bits, RM);
    }
    let scale = ctx.int(4).powi(g - 1, bits, RM).mul(&ctx.int(p as u64), bits, RM);
    let mut value = sum.div(&scale, bits, RM);
    if c % 2 == 1 {
        value.inv_sign();
    }
    round_certified(&value, cfg, &ctx)
}

/// `½(D + (−1)^eps δ)`, each sum evaluated with the retry policy of
/// [`with_retry`].
pub fn dim_formula(p: u32, g: usize, c: u32, eps: u8, cfg: &TrigEvalConfig) -> Result<BigUint> {
    params::check(p, g, c, eps)?;
    let big_d = BigInt::from(with_retry(cfg, |cfg| verlinde_d(p, g, c, cfg))?);
    let delta = with_retry(cfg, |cfg| verlinde_delta(p, g, c, cfg))?;
    let total = if eps == 0 { big_d + delta } else { big_d - delta };
    if total.is_odd() {
        return Err(Error::ParityViolation(total.to_string()));
    }
    (total / BigInt::from(2))
        .to_biguint()
        .ok_or_else(|| Error::NonIntegralResult("negative dimension".into()))
}

struct Formula {
    g: usize,
    case: Case,
    denom: i64,
    expr: &'static str,
}

/// Dimension polynomials in `(p, c)` for ranks 2, 3 and 4. Case I is Case II
/// at `c = 0` and Case IV is Case III at `c = 0` (ranks 3 and 4).
const FORMULAS: &[Formula] = &[
    Formula { g: 2, case: Case::I, denom: 24, expr: "(p-1)p(p+1)" },
    Formula { g: 2, case: Case::II, denom: 24, expr: "(c+1)(p+1)(p-2c-1)(p-c)" },
    Formula { g: 2, case: Case::III, denom: 24, expr: "c(p-1)(p-2c-1)(p-c-1)" },
    Formula { g: 3, case: Case::I, denom: 2880, expr: "(p-1)p(p+1)^2(p+2)(p+3)" },
    Formula {
        g: 3,
        case: Case::II,
        denom: 2880,
        expr: "(p-2c-1)(p^5(2c+1) + p^4(4c^2+4c+7) + p^3(-12c^3-18c^2+28c+17) \
               + p^2(6c^4+12c^3-22c^2-28c+17) + 6p(-2c^3-3c^2+c+1) + 6c(c^3+2c^2-c-2))",
    },
    Formula {
        g: 3,
        case: Case::III,
        denom: 2880,
        expr: "(p-1)(p+1)(p-2c-1)(p^3(2c+1) + p^2(4c^2+4c-5) + 6p(-2c^3-3c^2+c+1) \
               + 6c(c^3+2c^2-c-2))",
    },
    Formula { g: 3, case: Case::IV, denom: 2880, expr: "(p-3)(p-2)(p-1)^2 p(p+1)" },
    Formula { g: 4, case: Case::I, denom: 120960, expr: "(p-1)p(p+1)(p^6+37p^4+142p^2+36)" },
    Formula {
        g: 4,
        case: Case::II,
        denom: 120960,
        expr: "(p+1)(p-2c-1)(p^7(2c+1) + 2p^6 c(2c+1) + p^5(-6c^3-13c^2+18c+37) \
               + 2p^4 c(-6c^3-9c^2+22c+38) + p^3(18c^5+57c^4-84c^3-266c^2+22c+142) \
               - 6p^2 c(c^5+6c^4+c^3-28c^2-12c+24) + 3p(2c^6+12c^5+5c^4-50c^3-37c^2+32c+12) \
               - 6c(c^5+3c^4-5c^3-15c^2+4c+12))",
    },
    Formula {
        g: 4,
        case: Case::III,
        denom: 120960,
        expr: "(p-1)(p-2c-1)(p^7(2c+1) + p^6(4c^2+6c+2) + p^5(-6c^3-5c^2+26c-12) \
               - 2p^4(6c^4+15c^3-13c^2-9c+13) + p^3(18c^5+33c^4-132c^3-148c^2+164c+23) \
               - 6p^2(c^6-14c^4-8c^3+33c^2+16c-12) + p(-6c^6+75c^4+30c^3-159c^2-48c+36) \
               - 6c(c^5+3c^4-5c^3-15c^2+4c+12))",
    },
    Formula {
        g: 4,
        case: Case::IV,
        denom: 120960,
        expr: "(p-3)(p-2)(p-1)^2 p(p+1)^2(p+2)(p+3)",
    },
];

fn parsed_formulas() -> &'static [(usize, Case, Bivariate)] {
    static PARSED: OnceLock<Vec<(usize, Case, Bivariate)>> = OnceLock::new();
    PARSED.get_or_init(|| {
        FORMULAS
            .iter()
            .map(|f| {
                let body = Bivariate::parse(f.expr).expect("formula table parses");
                let scale = BigRational::new(BigInt::one(), BigInt::from(f.denom));
                (f.g, f.case, body.scale(&scale))
            })
            .collect()
    })
}

/// The closed-form dimension polynomial for `(g, case)` in `p` and `c`.
pub fn closed_form_poly(g: usize, case: Case) -> Result<&'static Bivariate> {
    parsed_formulas()
        .iter()
        .find(|(fg, fc, _)| *fg == g && *fc == case)
        .map(|(_, _, poly)| poly)
        .ok_or(Error::NoSuchFormula { g, case: case.to_string() })
}

/// The closed-form polynomial with `c` substituted, as a polynomial in `p`.
pub fn closed_form_at_c(g: usize, case: Case, c: u32) -> Result<RationalPolynomial> {
    Ok(closed_form_poly(g, case)?.at_c(&BigRational::from_integer(c.into())))
}

/// Exact evaluation of the closed-form polynomial. Cases I and IV take
/// `c = 0`; Cases II and III need `1 ≤ c ≤ d − 1`.
pub fn closed_form_eval(g: usize, case: Case, p: u32, c: u32) -> Result<BigInt> {
    let poly = closed_form_poly(g, case)?;
    params::check(p, g, c, case.eps())?;
    if matches!(case, Case::I | Case::IV) != (c == 0) {
        return Err(Error::bad(format!("c = {c} is not valid for case {case}")));
    }
    let v = poly.eval(&BigRational::from_integer(p.into()), &BigRational::from_integer(c.into()));
    if !v.is_integer() {
        return Err(Error::NonIntegralResult(format!("rank {g} case {case} at p={p}, c={c}: {v}")));
    }
    Ok(v.to_integer())
}

/// Number of sample points required by [`interpolate_dim`]: one more than the
/// expected degree `3g − 3`, and at least two.
pub fn required_points(g: usize) -> usize {
    (3 * g).saturating_sub(2).max(2)
}

/// The first `n` primes usable for fixed `c`, i.e. at least `max(5, 2c + 3)`.
pub fn sample_primes(c: u32, n: usize) -> Vec<u32> {
    let lo = (2 * c + 3).max(5);
    (lo..).filter(|&q| params::is_prime(q as u64)).take(n).collect()
}

/// Lagrange interpolation of `p ↦ |C_p(g, c, eps)|` through the given primes,
/// in exact rational arithmetic.
pub fn interpolate_dim(g: usize, c: u32, eps: u8, primes: &[u32]) -> Result<RationalPolynomial> {
    let needed = required_points(g);
    if primes.len() < needed {
        return Err(Error::InsufficientPoints { needed, got: primes.len() });
    }
    let points = primes
        .iter()
        .map(|&p| {
            let n = lollipop::count(p, g, c, eps)?;
            Ok((BigRational::from_integer(p.into()), BigRational::from_integer(n.into())))
        })
        .collect::<Result<Vec<_>>>()?;
    let poly = poly::lagrange("p", &points)?;
    debug_assert!(points.iter().all(|(x, y)| poly.eval(x) == *y));
    Ok(poly)
}

/// Absolute value of `x` as a `BigUint`; used by callers comparing signed
/// and unsigned routes.
pub fn magnitude(x: &BigInt) -> BigUint {
    x.abs().to_biguint().expect("nonnegative")
}
