//! Evaluation and verification of standard identities.

mod sampler;
mod standard;
mod verify;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::operation::DerivedOperation;
use crate::poly::Polynomial;

pub use sampler::{monomials_up_to, Sampler};
pub use standard::{
    kary_standard, kary_standard_naive, standard, standard_left_dp, standard_left_naive,
    standard_naive, standard_right, standard_right_naive,
};
pub use verify::{
    exhaustive_tuple_count, search_min_degree, verify, Counterexample, Mode, SearchReport,
    VerificationReport, Verdict,
};

/// Which nesting the standard polynomial uses. `Right` is evaluated as
/// `Left` of the opposite operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Size limits for the evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest number of antisymmetrized arguments for the permutation sum.
    pub naive: usize,
    /// Largest number of antisymmetrized arguments for the subset DP.
    pub dp: usize,
    /// Largest monomial-tuple count for exhaustive verification.
    pub exhaustive_budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            naive: 8,
            dp: 22,
            exhaustive_budget: 10_000_000,
        }
    }
}

/// `{a,{b,c}} + {b,{c,a}} + {c,{a,b}}`.
pub fn jacobiator(op: &DerivedOperation, a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Result<Polynomial> {
    let br = |x: &Polynomial, y: &Polynomial| op.apply(&[x.clone(), y.clone()]);
    let mut out = br(a, &br(b, c)?)?;
    out = out.checked_add(&br(b, &br(c, a)?)?)?;
    out.checked_add(&br(c, &br(a, b)?)?)
}

/// `{a, bc} - {a,b}c - b{a,c}`: the failure of the first slot to act by derivations.
pub fn leibnizator(op: &DerivedOperation, a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Result<Polynomial> {
    let br = |x: &Polynomial, y: &Polynomial| op.apply(&[x.clone(), y.clone()]);
    let lhs = br(a, &b.checked_mul(c)?)?;
    let r1 = br(a, b)?.checked_mul(c)?;
    let r2 = b.checked_mul(&br(a, c)?)?;
    lhs.checked_sub(&r1)?.checked_sub(&r2)
}

/// Defects of the two Novikov axioms for `a∘b = op(a, b)`:
/// left symmetry `(a∘b)∘c - a∘(b∘c) - (b∘a)∘c + b∘(a∘c)` and
/// right commutativity `(a∘b)∘c - (a∘c)∘b`.
pub fn novikov_defects(
    op: &DerivedOperation,
    a: &Polynomial,
    b: &Polynomial,
    c: &Polynomial,
) -> Result<(Polynomial, Polynomial)> {
    let m = |x: &Polynomial, y: &Polynomial| op.apply(&[x.clone(), y.clone()]);
    let ab_c = m(&m(a, b)?, c)?;
    let a_bc = m(a, &m(b, c)?)?;
    let ba_c = m(&m(b, a)?, c)?;
    let b_ac = m(b, &m(a, c)?)?;
    let left = ab_c.checked_sub(&a_bc)?.checked_sub(&ba_c)?.checked_add(&b_ac)?;
    let ac_b = m(&m(a, c)?, b)?;
    let right = ab_c.checked_sub(&ac_b)?;
    Ok((left, right))
}
