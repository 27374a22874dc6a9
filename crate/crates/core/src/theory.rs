//! Closed-form predictions for Erdős–Rényi factors `G(n, p)`.
//!
//! Means, variances and variance bounds are evaluated exactly over
//! rationals: a [`Probability`] parsed from a decimal or fraction is exact,
//! and one built from an `f64` is the exact dyadic value of that double.
//! `p^(k(k-1))` underflows `f64` long before the clique-number regime, so
//! nothing is rounded until a caller asks for [`PredictionValue::to_f64`].
//! The clique-number thresholds are real-valued logarithmic expressions and
//! are evaluated in `f64`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{pow, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cliques::factorial;
use crate::error::{Error, Result};

/// Default `M` for the lower clique-number threshold (any `M > 4` is admissible).
pub const DEFAULT_LOWER_M: f64 = 4.01;

/// An exact probability in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(BigRational);

impl Probability {
    pub fn new(p: BigRational) -> Result<Self> {
        if p.is_negative() || p > BigRational::one() {
            return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
        }
        Ok(Probability(p))
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Probability::new(BigRational::new(num.into(), den.into()))
    }

    /// The exact binary value of `p`.
    pub fn from_f64(p: f64) -> Result<Self> {
        let r = BigRational::from_float(p)
            .ok_or_else(|| Error::Domain(format!("probability {p} is not finite")))?;
        Probability::new(r)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn complement(&self) -> BigRational {
        BigRational::one() - &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn is_interior(&self) -> bool {
        self.0.is_positive() && self.0 < BigRational::one()
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl FromStr for Probability {
    type Err = Error;

    /// Accepts `a/b` or a plain decimal such as `0.3` or `1e-3`, both exact.
    fn from_str(s: &str) -> Result<Self> {
        Probability::new(parse_rational(s)?)
    }
}

/// Parses `a/b`, `-1.25`, `3e-2` etc. into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("cannot parse '{s}' as a number"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits == "-" || digits == "+" || digits.is_empty() { return Err(bad()) } else { digits };
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * pow(ten, scale as usize))
    } else {
        BigRational::new(num, pow(ten, (-scale) as usize))
    })
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn big(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn c2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn check_k(n: usize, k: usize, min_k: usize) -> Result<()> {
    if k < min_k || k > n {
        return Err(Error::Domain(format!("need {min_k} <= k <= n, got k = {k}, n = {n}")));
    }
    Ok(())
}

fn check_interior(p: &Probability) -> Result<()> {
    if !p.is_interior() {
        return Err(Error::Domain(format!("need 0 < p < 1, got {p}")));
    }
    Ok(())
}

/// `E[X_k] = C(n, k) p^C(k, 2)`.
pub fn expected_xk(n: usize, p: &Probability, k: usize) -> Result<BigRational> {
    check_k(n, k, 1)?;
    Ok(big(binomial(n, k)) * pow(p.0.clone(), c2(k)))
}

/// `E[Z_k] = k! C(n, k)^2 p^(k(k-1))` for the tensor product of two
/// independent `G(n, p)`.
pub fn expected_zk(n: usize, p: &Probability, k: usize) -> Result<BigRational> {
    check_k(n, k, 1)?;
    let b = binomial(n, k);
    Ok(big(factorial(k) * &b * &b) * pow(p.0.clone(), k * (k - 1)))
}

/// Exact `Var(X_k)`: the covariance sum over pairs of k-sets sharing `i >= 2`
/// vertices, `sum_i C(n,k) C(k,i) C(n-k,k-i) (p^(2C(k,2)-C(i,2)) - p^(2C(k,2)))`.
pub fn var_xk_exact(n: usize, p: &Probability, k: usize) -> Result<BigRational> {
    check_k(n, k, 1)?;
    let both = pow(p.0.clone(), 2 * c2(k));
    let mut total = BigRational::zero();
    for i in 2..=k {
        let pairs = binomial(n, k) * binomial(k, i) * binomial(n - k, k - i);
        if pairs.is_zero() {
            continue;
        }
        total += big(pairs) * (pow(p.0.clone(), 2 * c2(k) - c2(i)) - &both);
    }
    Ok(total)
}

/// `Var(Z_k) = (k!)^2 (Var(X_k)^2 + 2 Var(X_k) E[X_k]^2)`.
pub fn var_zk_from_varxk(var_xk: &BigRational, mean_xk: &BigRational, k: usize) -> Result<BigRational> {
    if var_xk.is_negative() {
        return Err(Error::Domain(format!("negative variance {var_xk}")));
    }
    let kf = big(factorial(k));
    Ok(&kf * &kf * (var_xk * var_xk + BigRational::from_integer(2.into()) * var_xk * mean_xk * mean_xk))
}

/// Upper bound on `Var(X_k)` keeping the full overlap sum over `i = 2..k-1`.
pub fn varxk_bound_full(n: usize, p: &Probability, k: usize) -> Result<BigRational> {
    check_k(n, k, 2)?;
    check_interior(p)?;
    let first = expected_xk(n, p, k)?;
    let mut sum = BigRational::zero();
    for i in 2..k {
        let w = binomial(k, i) * binomial(n - k, k - i);
        sum += big(w) * pow(p.0.clone(), c2(k) - c2(i));
    }
    Ok(&first + &first * sum)
}

/// Simplified bound keeping only the dominant `i = 2` overlap:
/// `C(n,k) p^C(k,2) + C(n,k) C(n-k,k-2) p^(k(k-1)) (k^3 / 2) / p`.
pub fn varxk_bound_corollary(n: usize, p: &Probability, k: usize) -> Result<BigRational> {
    check_k(n, k, 3)?;
    check_interior(p)?;
    let first = expected_xk(n, p, k)?;
    let cube = BigRational::new(BigInt::from(k * k * k), BigInt::from(2));
    let second = big(binomial(n, k) * binomial(n - k, k - 2)) * pow(p.0.clone(), k * (k - 1)) * cube / &p.0;
    Ok(first + second)
}

/// The overlap terms `a_i = C(k,i) C(n-k,k-i) p^(-C(i,2))` for `i = 2..k-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTermSequence {
    pub n: usize,
    pub k: usize,
    pub p: Probability,
    pub terms: Vec<BigRational>,
}

impl BoundTermSequence {
    pub fn is_strictly_decreasing(&self) -> bool {
        self.terms.windows(2).all(|w| w[1] < w[0])
    }
}

pub fn bound_term_sequence(n: usize, p: &Probability, k: usize) -> Result<BoundTermSequence> {
    if k < 3 || 2 * k > n {
        return Err(Error::Domain(format!("need 3 <= k <= n/2, got k = {k}, n = {n}")));
    }
    check_interior(p)?;
    let terms = (2..k)
        .map(|i| big(binomial(k, i) * binomial(n - k, k - i)) / pow(p.0.clone(), c2(i)))
        .collect();
    Ok(BoundTermSequence {
        n,
        k,
        p: p.clone(),
        terms,
    })
}

fn log_base(x: f64, p: f64) -> f64 {
    x.ln() / (1.0 / p).ln()
}

fn check_threshold_args(n: f64, p: f64) -> Result<()> {
    if !(n >= 3.0 && n.is_finite()) {
        return Err(Error::Domain(format!("need n >= 3, got {n}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("need 0 < p < 1, got {p}")));
    }
    Ok(())
}

/// `k^* = (2 + a_n) log_{1/p} n` with `a_n = log_{1/p}(log2 n) / log_{1/p} n`,
/// i.e. `2 log_{1/p} n + log_{1/p} log2 n`. Callers round up.
pub fn clique_threshold_upper(n: f64, p: f64) -> Result<f64> {
    check_threshold_args(n, p)?;
    Ok(2.0 * log_base(n, p) + log_base(n.log2(), p))
}

/// `k_* = 2 log_{1/p} n - M log_{1/p} log2 n` for `M > 4`. Callers round down.
pub fn clique_threshold_lower(n: f64, p: f64, m: f64) -> Result<f64> {
    check_threshold_args(n, p)?;
    if m.is_nan() || m <= 4.0 {
        return Err(Error::Domain(format!("need M > 4, got {m}")));
    }
    Ok(2.0 * log_base(n, p) - m * log_base(n.log2(), p))
}

/// `(E[I(G)], Var(I(G)))` for the number of isolated vertices of `G(n, p)`.
pub fn isolated_moments(n: usize, p: &Probability) -> Result<(BigRational, BigRational)> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    if n == 1 {
        return Ok((BigRational::one(), BigRational::zero()));
    }
    let q = p.complement();
    let nn = BigRational::from_integer(BigInt::from(n));
    let mean = &nn * pow(q.clone(), n - 1);
    let var = &mean * (BigRational::one() + (&nn * &p.0 - BigRational::one()) * pow(q, n - 2));
    Ok((mean, var))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedProductMean {
    /// `2 n^2 (1-p)^(n-1) - n^2 (1-p)^(2n-2)`.
    pub exact: BigRational,
    /// `2 n^2 (1-p)^(n-1)`.
    pub normalizer: BigRational,
}

impl IsolatedProductMean {
    pub fn ratio(&self) -> Option<BigRational> {
        (!self.normalizer.is_zero()).then(|| &self.exact / &self.normalizer)
    }
}

/// Mean number of isolated vertices of `G x H` for independent `G(n, p)`.
pub fn isolated_product_mean(n: usize, p: &Probability) -> Result<IsolatedProductMean> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    let q = p.complement();
    let n2 = BigRational::from_integer(BigInt::from(n * n));
    let single = pow(q, n - 1);
    let normalizer = BigRational::from_integer(2.into()) * &n2 * &single;
    let exact = &normalizer - &n2 * &single * &single;
    Ok(IsolatedProductMean { exact, normalizer })
}

/// `Var(XY) = Var(X) (Var(X) + 2 E[X]^2)` for independent, identically
/// distributed `X, Y`.
pub fn var_product_iid(var_x: &BigRational, mean_x: &BigRational) -> Result<BigRational> {
    if var_x.is_negative() {
        return Err(Error::Domain(format!("negative variance {var_x}")));
    }
    Ok(var_x * (var_x + BigRational::from_integer(2.into()) * mean_x * mean_x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionKind {
    MeanXk,
    MeanZk,
    VarXkExact,
    VarZkExactFromVarxk,
    VarxkBoundFull,
    VarxkBoundCorollary,
    KStarUpper,
    KStarLower,
    IsolatedMean,
    IsolatedVar,
    IsolatedProductMean,
}

impl PredictionKind {
    pub const ALL: [PredictionKind; 11] = [
        PredictionKind::MeanXk,
        PredictionKind::MeanZk,
        PredictionKind::VarXkExact,
        PredictionKind::VarZkExactFromVarxk,
        PredictionKind::VarxkBoundFull,
        PredictionKind::VarxkBoundCorollary,
        PredictionKind::KStarUpper,
        PredictionKind::KStarLower,
        PredictionKind::IsolatedMean,
        PredictionKind::IsolatedVar,
        PredictionKind::IsolatedProductMean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PredictionKind::MeanXk => "mean-xk",
            PredictionKind::MeanZk => "mean-zk",
            PredictionKind::VarXkExact => "var-xk-exact",
            PredictionKind::VarZkExactFromVarxk => "var-zk-exact-from-varxk",
            PredictionKind::VarxkBoundFull => "varxk-bound-full",
            PredictionKind::VarxkBoundCorollary => "varxk-bound-corollary",
            PredictionKind::KStarUpper => "k-star-upper",
            PredictionKind::KStarLower => "k-star-lower",
            PredictionKind::IsolatedMean => "isolated-mean",
            PredictionKind::IsolatedVar => "isolated-var",
            PredictionKind::IsolatedProductMean => "isolated-product-mean",
        }
    }

    pub fn needs_k(self) -> bool {
        matches!(
            self,
            PredictionKind::MeanXk
                | PredictionKind::MeanZk
                | PredictionKind::VarXkExact
                | PredictionKind::VarZkExactFromVarxk
                | PredictionKind::VarxkBoundFull
                | PredictionKind::VarxkBoundCorollary
        )
    }
}

impl fmt::Display for PredictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PredictionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PredictionKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown prediction kind '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PredictionValue {
    Exact(BigRational),
    Real(f64),
}

impl PredictionValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            PredictionValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            PredictionValue::Real(x) => *x,
        }
    }

    /// Natural log of the value, accurate even when `to_f64` would underflow.
    pub fn ln(&self) -> f64 {
        match self {
            PredictionValue::Exact(r) => ln_rational(r),
            PredictionValue::Real(x) => x.ln(),
        }
    }
}

impl fmt::Display for PredictionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictionValue::Exact(r) => f.write_str(&format_rational(r)),
            PredictionValue::Real(x) => write!(f, "{x}"),
        }
    }
}

/// Decimal rendering; values outside the normal `f64` range fall back to
/// scientific notation computed from the exact logarithm.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let x = r.to_f64().unwrap_or(f64::NAN);
    if x.is_normal() {
        return format!("{x}");
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let log10 = ln_rational(&r.abs()) / std::f64::consts::LN_10;
    let exp = log10.floor();
    let mantissa = 10f64.powf(log10 - exp);
    format!("{sign}{mantissa:.12}e{exp}")
}

/// `ln |r|` computed from the big-integer parts.
pub fn ln_rational(r: &BigRational) -> f64 {
    ln_big(&r.numer().abs().to_biguint().expect("abs")) - ln_big(&r.denom().abs().to_biguint().expect("abs"))
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64-bit").ln() + shift as f64 * std::f64::consts::LN_2
}

/// One evaluated formula, as printed by the CLI.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryPrediction {
    pub kind: PredictionKind,
    pub n: usize,
    pub p: Probability,
    pub k: Option<usize>,
    pub value: PredictionValue,
}

/// Evaluates `kind` at `(n, p, k)`; `m` is only used by [`PredictionKind::KStarLower`].
pub fn predict(kind: PredictionKind, n: usize, p: &Probability, k: Option<usize>, m: f64) -> Result<TheoryPrediction> {
    let need_k = || k.ok_or_else(|| Error::Domain(format!("{kind} needs k")));
    let exact = PredictionValue::Exact;
    let value = match kind {
        PredictionKind::MeanXk => exact(expected_xk(n, p, need_k()?)?),
        PredictionKind::MeanZk => exact(expected_zk(n, p, need_k()?)?),
        PredictionKind::VarXkExact => exact(var_xk_exact(n, p, need_k()?)?),
        PredictionKind::VarZkExactFromVarxk => {
            let k = need_k()?;
            exact(var_zk_from_varxk(&var_xk_exact(n, p, k)?, &expected_xk(n, p, k)?, k)?)
        }
        PredictionKind::VarxkBoundFull => exact(varxk_bound_full(n, p, need_k()?)?),
        PredictionKind::VarxkBoundCorollary => exact(varxk_bound_corollary(n, p, need_k()?)?),
        PredictionKind::KStarUpper => PredictionValue::Real(clique_threshold_upper(n as f64, p.to_f64())?),
        PredictionKind::KStarLower => PredictionValue::Real(clique_threshold_lower(n as f64, p.to_f64(), m)?),
        PredictionKind::IsolatedMean => exact(isolated_moments(n, p)?.0),
        PredictionKind::IsolatedVar => exact(isolated_moments(n, p)?.1),
        PredictionKind::IsolatedProductMean => exact(isolated_product_mean(n, p)?.exact),
    };
    Ok(TheoryPrediction {
        kind,
        n,
        p: p.clone(),
        k: if kind.needs_k() { k } else { None },
        value,
    })
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Probability {
        s.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn parses_probabilities() {
        assert_eq!(p("0.5").value(), &q(1, 2));
        assert_eq!(p("3/4").value(), &q(3, 4));
        assert_eq!(p("1e-1").value(), &q(1, 10));
        assert_eq!(p(".25").value(), &q(1, 4));
        assert_eq!(p("1").value(), &q(1, 1));
        assert!("1.5".parse::<Probability>().is_err());
        assert!("-0.1".parse::<Probability>().is_err());
        assert!("abc".parse::<Probability>().is_err());
        assert!("1/0".parse::<Probability>().is_err());
        assert_eq!(Probability::from_f64(0.5).unwrap(), p("1/2"));
        assert!(Probability::from_f64(f64::NAN).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn means() {
        assert_eq!(expected_xk(3, &p("0.5"), 2).unwrap(), q(3, 2));
        assert_eq!(expected_xk(4, &p("0.5"), 3).unwrap(), q(1, 2));
        assert_eq!(expected_xk(7, &p("1"), 3).unwrap(), q(35, 1));
        assert_eq!(expected_zk(3, &p("0.5"), 2).unwrap(), q(9, 2));
        assert_eq!(expected_zk(2, &p("0.5"), 2).unwrap(), q(1, 2));
        assert_eq!(expected_zk(6, &p("1"), 2).unwrap(), q(2 * 15 * 15, 1));
        assert_eq!(expected_zk(8, &p("0.5"), 3).unwrap(), q(294, 1));
        assert!(expected_xk(3, &p("0.5"), 4).is_err());
        assert!(expected_xk(3, &p("0.5"), 0).is_err());
    }

    #[test]
    fn variances() {
        assert_eq!(var_xk_exact(4, &p("0.5"), 3).unwrap(), q(5, 8));
        assert_eq!(var_xk_exact(3, &p("0.5"), 2).unwrap(), q(3, 4));
        assert_eq!(var_zk_from_varxk(&q(0, 1), &q(7, 1), 3).unwrap(), q(0, 1));
        assert_eq!(var_zk_from_varxk(&q(1, 4), &q(1, 2), 2).unwrap(), q(3, 4));
        assert_eq!(var_zk_from_varxk(&q(5, 8), &q(1, 2), 3).unwrap(), q(405, 16));
        assert!(var_zk_from_varxk(&q(-1, 8), &q(1, 2), 3).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(varxk_bound_full(4, &p("0.5"), 3).unwrap(), q(7, 8));
        assert_eq!(varxk_bound_full(3, &p("0.5"), 2).unwrap(), q(3, 2));
        assert_eq!(varxk_bound_corollary(4, &p("0.5"), 3).unwrap(), q(35, 16));
        assert!(varxk_bound_corollary(4, &p("0.5"), 2).is_err());
        assert!(varxk_bound_full(4, &p("1"), 3).is_err());
        let big = varxk_bound_corollary(100, &p("0.5"), 4).unwrap();
        assert!(big > varxk_bound_full(100, &p("0.5"), 4).unwrap() * q(0, 1));
    }

    #[test]
    fn term_sequence() {
        let s = bound_term_sequence(1000, &p("0.5"), 6).unwrap();
        assert_eq!(s.terms.len(), 4);
        assert!(s.is_strictly_decreasing());
        assert_eq!(bound_term_sequence(6, &p("0.5"), 3).unwrap().terms.len(), 1);
        assert!(bound_term_sequence(5, &p("0.5"), 3).is_err());
        assert!(bound_term_sequence(10, &p("0.5"), 2).is_err());
    }

    #[test]
    fn thresholds() {
        let up = clique_threshold_upper(100.0, 0.5).unwrap();
        assert!((up - 16.0197).abs() < 1e-3, "{up}");
        let n = 1e4f64;
        let lo = clique_threshold_lower(n, 0.5, 5.0).unwrap();
        let oracle = 2.0 * n.log2() - 5.0 * n.log2().log2();
        assert!((lo - oracle).abs() < 1e-12);
        assert!((lo - 7.9153).abs() < 1e-3, "{lo}");
        assert!(clique_threshold_lower(n, 0.5, 4.0).is_err());
        assert!(clique_threshold_upper(2.0, 0.5).is_err());
        assert!(clique_threshold_upper(100.0, 1.0).is_err());
    }

    #[test]
    fn isolated() {
        assert_eq!(isolated_moments(2, &p("0.5")).unwrap(), (q(1, 1), q(1, 1)));
        assert_eq!(isolated_moments(7, &p("0")).unwrap(), (q(7, 1), q(0, 1)));
        assert_eq!(isolated_moments(7, &p("1")).unwrap(), (q(0, 1), q(0, 1)));
        assert_eq!(isolated_moments(2, &p("1")).unwrap(), (q(0, 1), q(0, 1)));
        assert_eq!(isolated_moments(1, &p("0.3")).unwrap(), (q(1, 1), q(0, 1)));
        assert_eq!(isolated_product_mean(2, &p("0.5")).unwrap().exact, q(3, 1));
        assert_eq!(isolated_product_mean(5, &p("0")).unwrap().exact, q(25, 1));
        assert_eq!(var_product_iid(&q(1, 1), &q(1, 1)).unwrap(), q(3, 1));
        assert_eq!(var_product_iid(&q(1, 1), &q(0, 1)).unwrap(), q(1, 1));
    }

    #[test]
    fn predictions_and_formatting() {
        let pr = predict(PredictionKind::MeanZk, 3, &p("0.5"), Some(2), DEFAULT_LOWER_M).unwrap();
        assert_eq!(pr.value.to_string(), "4.5");
        assert!(predict(PredictionKind::MeanZk, 3, &p("0.5"), None, DEFAULT_LOWER_M).is_err());
        let tiny = expected_zk(2000, &p("0.5"), 60).unwrap();
        assert_eq!(tiny.to_f64(), Some(0.0));
        let v = PredictionValue::Exact(tiny);
        assert!(v.ln() < -700.0 * std::f64::consts::LN_2);
        assert!(v.to_string().contains('e'));
        for kind in PredictionKind::ALL {
            assert_eq!(kind.as_str().parse::<PredictionKind>().unwrap(), kind);
        }
        assert_eq!(format_rational(&q(-1, 2)), "-0.5");
    }
}
