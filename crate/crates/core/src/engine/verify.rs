use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operation::DerivedOperation;
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;

use super::standard::{standard, standard_naive};
use super::{Caps, Sampler, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    #[serde(rename = "RANDOM")]
    Random,
    #[serde(rename = "EXHAUSTIVE")]
    Exhaustive,
    /// Random trials, each evaluated by both the subset DP and the permutation sum.
    #[serde(rename = "DP/NAIVE")]
    CrossCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    HoldsOnAllTested,
    Refuted,
    Proved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Arguments `a_1..a_d` as polynomial literals.
    pub args: Vec<String>,
    /// The nonzero value of the standard polynomial at `args`.
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub operation: String,
    pub side: Side,
    pub degree: usize,
    pub mode: Mode,
    pub verdict: Verdict,
    pub guarantee: String,
    pub counterexample: Option<Counterexample>,
    pub seed: u64,
    /// Random trials run, or monomial tuples covered in exhaustive mode.
    pub tested: u64,
    pub wall_time_ms: u64,
}

/// `(r, monomials per slot, tuple count)` for exhaustive verification, where
/// `r = (d-1) * total_order` bounds the per-variable exponent. The count is
/// `None` when it does not fit in a `u128`.
pub fn exhaustive_tuple_count(op: &DerivedOperation, d: usize) -> (u32, u128, Option<u128>) {
    let r = (d.saturating_sub(1) * op.orders().total) as u32;
    let per_slot = (r as u128 + 1).checked_pow(op.context().len() as u32);
    let tuples = per_slot.and_then(|m| m.checked_pow(d as u32));
    (r, per_slot.unwrap_or(u128::MAX), tuples)
}

fn monomial_box(nvars: usize, r: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    for i in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=r).map(move |e| {
                    let mut ex = m.exponents().to_vec();
                    ex[i] = e;
                    Monomial::from_exponents(&ex)
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// Strictly increasing `len`-tuples of indices below `n`.
fn combinations(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < len - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, len, &mut Vec::new(), &mut out);
    out
}

fn counterexample(args: &[Polynomial], value: &Polynomial) -> Counterexample {
    Counterexample {
        args: args.iter().map(ToString::to_string).collect(),
        value: value.to_string(),
    }
}

/// Check `s_{d,side}` of a binary operation.
///
/// `Random` evaluates `sampler.trials` random tuples exactly: a refutation is
/// certain, a pass is probabilistic. `Exhaustive` is a decision procedure on
/// the polynomial algebra: the standard polynomial is a multidifferential
/// operator with polynomial coefficients and per-slot order at most
/// `r = (d-1) * total_order`, so it is zero iff it vanishes on every tuple of
/// monomials with all exponents `<= r`. Tuples with a repeated monomial among
/// the antisymmetrized slots vanish identically and permuting them only
/// flips the sign, so only increasing tuples are evaluated.
pub fn verify(
    op: &DerivedOperation,
    side: Side,
    d: usize,
    mode: Mode,
    sampler: &Sampler,
    caps: &Caps,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if op.arity() != 2 {
        return Err(Error::InvalidOperation(format!(
            "{} has arity {}; standard identities are checked for binary operations",
            op.name(),
            op.arity()
        )));
    }
    if d < 2 {
        return Err(Error::InvalidArgument(format!("degree must be at least 2, got {d}")));
    }
    if d - 1 > caps.dp {
        return Err(Error::CapExceeded {
            what: "dp",
            requested: d - 1,
            cap: caps.dp,
        });
    }
    let ctx = op.context();
    let (found, tested, guarantee) = match mode {
        Mode::Random | Mode::CrossCheck => {
            if mode == Mode::CrossCheck && d - 1 > caps.naive {
                return Err(Error::CapExceeded {
                    what: "naive",
                    requested: d - 1,
                    cap: caps.naive,
                });
            }
            let found = (0..sampler.trials)
                .into_par_iter()
                .map(|t| -> Result<Option<Counterexample>> {
                    let args = sampler.arguments(ctx, d, t);
                    let value = standard(op, side, d, &args, caps)?;
                    if mode == Mode::CrossCheck && standard_naive(op, side, d, &args, caps)? != value {
                        return Err(Error::CrossCheckMismatch { trial: t });
                    }
                    Ok((!value.is_zero()).then(|| counterexample(&args, &value)))
                })
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .transpose()?
                .flatten();
            let guarantee = match mode {
                Mode::CrossCheck => format!(
                    "probabilistic: {} random tuples, each evaluated exactly by subset DP and by permutation sum with identical results",
                    sampler.trials
                ),
                _ => format!(
                    "probabilistic: {} random tuples evaluated exactly; a refutation is certain",
                    sampler.trials
                ),
            };
            (found, sampler.trials, guarantee)
        }
        Mode::Exhaustive => {
            let (r, _, tuples) = exhaustive_tuple_count(op, d);
            let budget = caps.exhaustive_budget as u128;
            match tuples {
                Some(t) if t <= budget => {}
                _ => {
                    return Err(Error::BudgetExceeded {
                        required: tuples.map_or_else(|| "more than 2^128".to_string(), |t| t.to_string()),
                        budget: caps.exhaustive_budget,
                    })
                }
            }
            let monomials: Vec<Polynomial> = monomial_box(ctx.len(), r)
                .into_iter()
                .map(|m| Polynomial::monomial(ctx, m, Rational::one()))
                .collect();
            let combos = combinations(monomials.len(), d - 1);
            let tested = (combos.len() * monomials.len()) as u64;
            let found = combos
                .par_iter()
                .map(|combo| -> Result<Option<Counterexample>> {
                    let mut args: Vec<Polynomial> = combo.iter().map(|&i| monomials[i].clone()).collect();
                    args.push(Polynomial::zero(ctx));
                    for last in &monomials {
                        args[d - 1] = last.clone();
                        let value = standard(op, side, d, &args, caps)?;
                        if !value.is_zero() {
                            return Ok(Some(counterexample(&args, &value)));
                        }
                    }
                    Ok(None)
                })
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .transpose()?
                .flatten();
            let guarantee = format!(
                "decision procedure on the polynomial algebra: all monomial tuples with per-variable exponent <= {r} checked ({tested} evaluations)"
            );
            (found, tested, guarantee)
        }
    };
    let verdict = match (&found, mode) {
        (Some(_), _) => Verdict::Refuted,
        (None, Mode::Exhaustive) => Verdict::Proved,
        (None, _) => Verdict::HoldsOnAllTested,
    };
    Ok(VerificationReport {
        operation: op.name().to_string(),
        side,
        degree: d,
        mode,
        verdict,
        guarantee,
        counterexample: found,
        seed: sampler.master_seed,
        tested,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub operation: String,
    pub side: Side,
    pub reports: Vec<VerificationReport>,
    /// Smallest degree from which no tested degree was refuted.
    pub min_degree: Option<usize>,
}

/// Run `verify` for `d = 2..=d_max`, exhaustively whenever the tuple count is
/// within budget and randomly otherwise.
pub fn search_min_degree(
    op: &DerivedOperation,
    side: Side,
    d_max: usize,
    sampler: &Sampler,
    caps: &Caps,
) -> Result<SearchReport> {
    if d_max < 2 {
        return Err(Error::InvalidArgument(format!("max degree must be at least 2, got {d_max}")));
    }
    let mut reports = Vec::new();
    for d in 2..=d_max {
        let within_budget = matches!(exhaustive_tuple_count(op, d).2, Some(t) if t <= caps.exhaustive_budget as u128);
        let mode = if within_budget { Mode::Exhaustive } else { Mode::Random };
        reports.push(verify(op, side, d, mode, sampler, caps)?);
    }
    let min_degree = reports
        .iter()
        .rposition(|r| r.verdict == Verdict::Refuted)
        .map_or(Some(2), |i| (i + 1 < reports.len()).then(|| reports[i + 1].degree));
    Ok(SearchReport {
        operation: op.name().to_string(),
        side,
        reports,
        min_degree,
    })
}
