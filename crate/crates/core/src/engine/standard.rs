//! Standard polynomials of derived operations.
//!
//! For a binary operation, `s_{d,l}(a_1..a_d) = Σ_{σ ∈ S_{d-1}} sgn(σ) {a_σ1, {a_σ2, ... {a_σ(d-1), a_d}}}`.
//! The k-ary version antisymmetrizes `(k-1)d` arguments over `d` nested
//! brackets, each taking `k-1` permuted arguments followed by the inner value.
//!
//! Two evaluators are provided: a literal permutation sum (`*_naive`) and a
//! subset dynamic program. Writing `v(S)` for the antisymmetrized nest over
//! the index set `S` (in ascending order) with the fixed argument innermost,
//!
//! ```text
//! v(∅) = a_last
//! v(S) = Σ_{(i_1..i_{k-1}) ordered, distinct ⊂ S} sign · {a_i1, ..., a_i(k-1), v(S ∖ {i_1..i_{k-1}})}
//! ```
//!
//! where the sign is the product of `(-1)^(rank(i_t, S_t) - 1)` as the
//! arguments are peeled off one at a time from the shrinking set `S_t`.
//! Layers are processed by cardinality and only the previous layer is kept.

use rayon::prelude::*;

use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::operation::DerivedOperation;
use crate::poly::{same_context, Polynomial};
use crate::rational::Rational;

use super::{Caps, Side};

/// Calls `f(perm, sign)` for every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation<F>(n: usize, mut f: F) -> Result<()>
where
    F: FnMut(&[usize], i64) -> Result<()>,
{
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1i64;
    let mut c = vec![0usize; n];
    f(&perm, sign)?;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            f(&perm, sign)?;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(())
}

fn check_binary(op: &DerivedOperation) -> Result<()> {
    if op.arity() != 2 {
        return Err(Error::InvalidOperation(format!(
            "{} has arity {}, expected a binary operation",
            op.name(),
            op.arity()
        )));
    }
    Ok(())
}

fn check_degree(d: usize, args: &[Polynomial]) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("degree must be at least 2, got {d}")));
    }
    if args.len() != d {
        return Err(Error::ArityMismatch {
            expected: d,
            got: args.len(),
        });
    }
    Ok(())
}

fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        return Err(Error::CapExceeded { what, requested, cap });
    }
    Ok(())
}

/// Literal `(d-1)!`-term sum for `s_{d,l}`.
pub fn standard_left_naive(op: &DerivedOperation, d: usize, args: &[Polynomial], caps: &Caps) -> Result<Polynomial> {
    check_binary(op)?;
    check_degree(d, args)?;
    check_cap("naive", d - 1, caps.naive)?;
    let mut total = Polynomial::zero(op.context());
    for_each_permutation(d - 1, |perm, sign| {
        let mut acc = args[d - 1].clone();
        for &i in perm.iter().rev() {
            acc = op.apply(&[args[i].clone(), acc])?;
        }
        total.add_scaled(&Rational::from_integer(sign), &acc)
    })?;
    Ok(total)
}

/// Literal sum for `s_{d,r}`, nesting to the right with the original operation:
/// `{{...{{a_d, a_σ(d-1)}, a_σ(d-2)}, ...}, a_σ1}`.
pub fn standard_right_naive(op: &DerivedOperation, d: usize, args: &[Polynomial], caps: &Caps) -> Result<Polynomial> {
    check_binary(op)?;
    check_degree(d, args)?;
    check_cap("naive", d - 1, caps.naive)?;
    let mut total = Polynomial::zero(op.context());
    for_each_permutation(d - 1, |perm, sign| {
        let mut acc = args[d - 1].clone();
        for &i in perm.iter().rev() {
            acc = op.apply(&[acc, args[i].clone()])?;
        }
        total.add_scaled(&Rational::from_integer(sign), &acc)
    })?;
    Ok(total)
}

/// `s_{d,l}` by the subset dynamic program.
pub fn standard_left_dp(op: &DerivedOperation, d: usize, args: &[Polynomial], caps: &Caps) -> Result<Polynomial> {
    check_binary(op)?;
    check_degree(d, args)?;
    check_cap("dp", d - 1, caps.dp)?;
    block_dp(op, d - 1, args)
}

/// `s_{d,r}`, evaluated as `s_{d,l}` of the opposite operation.
pub fn standard_right(op: &DerivedOperation, d: usize, args: &[Polynomial], caps: &Caps) -> Result<Polynomial> {
    check_binary(op)?;
    standard_left_dp(&op.opposite()?, d, args, caps)
}

pub fn standard(op: &DerivedOperation, side: Side, d: usize, args: &[Polynomial], caps: &Caps) -> Result<Polynomial> {
    match side {
        Side::Left => standard_left_dp(op, d, args, caps),
        Side::Right => standard_right(op, d, args, caps),
    }
}

pub fn standard_naive(op: &DerivedOperation, side: Side, d: usize, args: &[Polynomial], caps: &Caps) -> Result<Polynomial> {
    match side {
        Side::Left => standard_left_naive(op, d, args, caps),
        Side::Right => standard_right_naive(op, d, args, caps),
    }
}

fn check_kary(op: &DerivedOperation, d: usize, args: &[Polynomial]) -> Result<usize> {
    if d < 1 {
        return Err(Error::InvalidArgument("k-ary degree must be at least 1".into()));
    }
    let permuted = (op.arity() - 1) * d;
    if args.len() != permuted + 1 {
        return Err(Error::ArityMismatch {
            expected: permuted + 1,
            got: args.len(),
        });
    }
    Ok(permuted)
}

/// Literal sum over `S_{(k-1)d}` of the k-ary standard polynomial.
pub fn kary_standard_naive(op: &DerivedOperation, d: usize, args: &[Polynomial], caps: &Caps) -> Result<Polynomial> {
    let permuted = check_kary(op, d, args)?;
    check_cap("naive", permuted, caps.naive)?;
    let block = op.arity() - 1;
    let mut total = Polynomial::zero(op.context());
    for_each_permutation(permuted, |perm, sign| {
        let mut acc = args[permuted].clone();
        for chunk in perm.chunks(block).rev() {
            let mut call: Vec<Polynomial> = chunk.iter().map(|&i| args[i].clone()).collect();
            call.push(acc);
            acc = op.apply(&call)?;
        }
        total.add_scaled(&Rational::from_integer(sign), &acc)
    })?;
    Ok(total)
}

/// The k-ary standard polynomial by the block subset DP.
pub fn kary_standard(op: &DerivedOperation, d: usize, args: &[Polynomial], caps: &Caps) -> Result<Polynomial> {
    let permuted = check_kary(op, d, args)?;
    check_cap("dp", permuted, caps.dp)?;
    block_dp(op, d, args)
}

/// Each slot's distinct factor operators, and each summand as indices into them.
struct Prepared<'a> {
    slot_ops: Vec<Vec<&'a DiffOperator>>,
    summands: Vec<(&'a Rational, Vec<usize>)>,
}

impl<'a> Prepared<'a> {
    fn new(op: &'a DerivedOperation) -> Self {
        let mut slot_ops: Vec<Vec<&DiffOperator>> = vec![Vec::new(); op.arity()];
        let mut summands = Vec::with_capacity(op.summands().len());
        for s in op.summands() {
            let idx = s
                .factors
                .iter()
                .enumerate()
                .map(|(slot, f)| match slot_ops[slot].iter().position(|g| *g == f) {
                    Some(i) => i,
                    None => {
                        slot_ops[slot].push(f);
                        slot_ops[slot].len() - 1
                    }
                })
                .collect();
            summands.push((&s.coeff, idx));
        }
        Prepared { slot_ops, summands }
    }

    fn images(&self, op: &DerivedOperation, slot: usize, p: &Polynomial) -> Result<Vec<Polynomial>> {
        self.slot_ops[slot]
            .iter()
            .map(|f| f.apply(op.algebra(), p))
            .collect()
    }
}

fn binomials(n: usize) -> Vec<Vec<usize>> {
    let mut c = vec![vec![0usize; n + 2]; n + 1];
    for i in 0..=n {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + if j < i { c[i - 1][j] } else { 0 };
        }
    }
    c
}

/// Index of `mask` among same-size subsets in increasing numeric (colex) order.
fn colex_rank(mut mask: u32, binom: &[Vec<usize>]) -> usize {
    let mut rank = 0;
    let mut j = 1;
    while mask != 0 {
        let e = mask.trailing_zeros() as usize;
        rank += binom[e][j];
        j += 1;
        mask &= mask - 1;
    }
    rank
}

/// All `size`-subsets of `0..n` in colex order (Gosper's hack).
fn subsets_of_size(n: usize, size: usize) -> Vec<u32> {
    if size == 0 {
        return vec![0];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut x: u64 = (1 << size) - 1;
    while x < limit {
        out.push(x as u32);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// Calls `f(sign, picked, rest)` for every ordered `len`-tuple of distinct
/// elements of `set`, with the peeling sign described in the module docs.
fn for_each_peel<F>(set: u32, len: usize, picked: &mut Vec<usize>, sign: i64, f: &mut F) -> Result<()>
where
    F: FnMut(i64, &[usize], u32) -> Result<()>,
{
    if len == 0 {
        return f(sign, picked, set);
    }
    let mut rest = set;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        let below = (set & ((1u32 << i) - 1)).count_ones();
        let s = if below.is_multiple_of(2) { sign } else { -sign };
        picked.push(i as usize);
        for_each_peel(set & !(1u32 << i), len - 1, picked, s, f)?;
        picked.pop();
    }
    Ok(())
}

fn block_dp(op: &DerivedOperation, d: usize, args: &[Polynomial]) -> Result<Polynomial> {
    if args.iter().any(|a| !same_context(a.context(), op.context())) {
        return Err(Error::ContextMismatch);
    }
    let k = op.arity();
    let block = k - 1;
    let n = block * d;
    debug_assert!(n < 31);
    let ctx = op.context();
    let prepared = Prepared::new(op);
    let last = k - 1;

    // arg_images[slot][arg][op]
    let arg_images: Vec<Vec<Vec<Polynomial>>> = (0..block)
        .map(|slot| {
            args[..n]
                .iter()
                .map(|a| prepared.images(op, slot, a))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let binom = binomials(n);

    // Images of v(T) under the last-slot operators, for every T in the previous layer.
    let mut prev: Vec<Vec<Polynomial>> = vec![prepared.images(op, last, &args[n])?];
    for layer in 1..=d {
        let masks = subsets_of_size(n, layer * block);
        let is_final = layer == d;
        let values: Vec<Polynomial> = masks
            .par_iter()
            .map(|&mask| {
                let mut v = Polynomial::zero(ctx);
                let mut picked = Vec::with_capacity(block);
                for_each_peel(mask, block, &mut picked, 1, &mut |sign, picked, rest| {
                    let inner = &prev[colex_rank(rest, &binom)];
                    for (coeff, idx) in &prepared.summands {
                        let g = &inner[idx[last]];
                        if g.is_zero() {
                            continue;
                        }
                        let c = if sign > 0 { (*coeff).clone() } else { -*coeff };
                        if block == 1 {
                            v.add_scaled_product(&c, &arg_images[0][picked[0]][idx[0]], g)?;
                        } else {
                            let mut f = arg_images[0][picked[0]][idx[0]].clone();
                            for slot in 1..block {
                                if f.is_zero() {
                                    break;
                                }
                                f = f.checked_mul(&arg_images[slot][picked[slot]][idx[slot]])?;
                            }
                            v.add_scaled_product(&c, &f, g)?;
                        }
                    }
                    Ok(())
                })?;
                Ok(v)
            })
            .collect::<Result<_>>()?;
        if is_final {
            return Ok(values.into_iter().next().expect("single full subset"));
        }
        prev = values
            .par_iter()
            .map(|v| prepared.images(op, last, v))
            .collect::<Result<_>>()?;
    }
    unreachable!("d >= 1 always reaches the final layer")
}
