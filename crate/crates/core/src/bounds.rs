//! Closed-form degrees at which standard identities are guaranteed.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Finitely generated: `n > 1` derivations, D-order `m`.
    #[serde(rename = "FG")]
    FiniteGeneration,
    /// Finite-dimensional Lie algebra of derivations, g-order `m`.
    #[serde(rename = "FD")]
    FiniteDimension,
    /// Rankin–Cohen bracket `[-,-]_n`.
    #[serde(rename = "RC")]
    RankinCohen,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_g: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub theorem: Theorem,
    pub inputs: BoundInputs,
    pub p: u64,
    /// Serialized as a JSON number when it fits in `u64`, else as a decimal string.
    #[serde(serialize_with = "ser_big")]
    pub d: BigUint,
}

fn ser_big<S: Serializer>(d: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match d.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&d.to_string()),
    }
}

impl BoundResult {
    pub fn degree(&self) -> Option<u64> {
        self.d.to_u64()
    }
}

/// `p = m + 1`, `d = 1 + (n^(p+1) - 1)/(n - 1)`.
pub fn bound_fg(n: u64, m: u64) -> Result<BoundResult> {
    if n <= 1 {
        return Err(Error::InvalidArgument(format!(
            "the finite-generation bound needs n > 1 derivations (got {n}); use the fd bound with dim g = 1"
        )));
    }
    let p = m
        .checked_add(1)
        .ok_or_else(|| Error::InvalidArgument("m too large".into()))?;
    let exp = p
        .checked_add(1)
        .and_then(|e| u32::try_from(e).ok())
        .ok_or_else(|| Error::InvalidArgument("m too large".into()))?;
    let nb = BigUint::from(n);
    let geometric = (nb.pow(exp) - BigUint::one()) / (nb - BigUint::one());
    Ok(BoundResult {
        theorem: Theorem::FiniteGeneration,
        inputs: BoundInputs { n: Some(n), dim_g: None, m: Some(m) },
        p,
        d: geometric + BigUint::one(),
    })
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `p` = smallest integer `> m(dim+1)/dim`, `d = 1 + C(dim + p, dim)`.
pub fn bound_fd(dim_g: u64, m: u64) -> Result<BoundResult> {
    if dim_g == 0 {
        return Err(Error::InvalidArgument("dim g must be at least 1".into()));
    }
    let scaled = (m as u128) * (dim_g as u128 + 1);
    let p = u64::try_from(scaled / dim_g as u128 + 1)
        .map_err(|_| Error::InvalidArgument("m too large".into()))?;
    let top = dim_g
        .checked_add(p)
        .ok_or_else(|| Error::InvalidArgument("dim g + p overflows".into()))?;
    Ok(BoundResult {
        theorem: Theorem::FiniteDimension,
        inputs: BoundInputs { n: None, dim_g: Some(dim_g), m: Some(m) },
        p,
        d: binomial(top, dim_g) + BigUint::one(),
    })
}

/// `d = 9n(n+1)/2 - 1 = 1 + 2 + ... + 3n + (3n - 1)`. The operator factors lie in the
/// augmentation ideal of the two-dimensional Lie algebra spanned by `W, D`,
/// which sharpens the finite-dimension count; `p = 3n` is the largest
/// monomial degree that count reaches.
pub fn bound_rc(n: u64) -> Result<BoundResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("the Rankin-Cohen bound needs n >= 1".into()));
    }
    let nb = BigUint::from(n);
    let d = BigUint::from(9u32) * &nb * (&nb + BigUint::one()) / BigUint::from(2u32) - BigUint::one();
    Ok(BoundResult {
        theorem: Theorem::RankinCohen,
        inputs: BoundInputs { n: Some(n), dim_g: None, m: None },
        p: 3 * n,
        d,
    })
}
