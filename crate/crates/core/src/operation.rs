//! Derived operations: multilinear maps `Σ_j c_j f_j¹(a_1)⋯f_jᵏ(a_k)` built
//! from differential operators on a commutative polynomial algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::diffop::{binomial_in_operator, Derivation, DiffAlgebra, DiffOperator, OperatorWord};
use crate::error::{Error, Result};
use crate::poly::{same_context, AlgebraContext, Polynomial};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub coeff: Rational,
    pub factors: Vec<DiffOperator>,
}

impl Summand {
    pub fn new(coeff: Rational, factors: Vec<DiffOperator>) -> Self {
        Summand { coeff, factors }
    }
}

/// Word-length orders of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperationOrders {
    /// Max word length in each argument slot, over all summands.
    pub per_slot: Vec<usize>,
    /// Max over summands of the summed word lengths across slots.
    pub total: usize,
}

#[derive(Clone)]
pub struct DerivedOperation {
    name: String,
    arity: usize,
    algebra: Arc<DiffAlgebra>,
    summands: Vec<Summand>,
}

impl DerivedOperation {
    /// Validates letters and arity, then merges summands whose factor tuples
    /// coincide and drops the ones that vanish.
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<DiffAlgebra>,
        arity: usize,
        summands: impl IntoIterator<Item = Summand>,
    ) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidOperation(format!("arity must be at least 2, got {arity}")));
        }
        let mut merged: BTreeMap<Vec<DiffOperator>, Rational> = BTreeMap::new();
        let mut order: Vec<Vec<DiffOperator>> = Vec::new();
        for s in summands {
            if s.factors.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: s.factors.len(),
                });
            }
            for f in &s.factors {
                for letter in f.letters() {
                    algebra.get(letter)?;
                }
            }
            if s.coeff.is_zero() || s.factors.iter().any(DiffOperator::is_zero) {
                continue;
            }
            match merged.get_mut(&s.factors) {
                Some(c) => *c += &s.coeff,
                None => {
                    order.push(s.factors.clone());
                    merged.insert(s.factors, s.coeff);
                }
            }
        }
        let summands = order
            .into_iter()
            .filter_map(|factors| {
                let coeff = merged.remove(&factors).expect("recorded");
                (!coeff.is_zero()).then_some(Summand { coeff, factors })
            })
            .collect();
        Ok(DerivedOperation {
            name: name.into(),
            arity,
            algebra,
            summands,
        })
    }

    /// Binary operation from `(coeff, f, g)` triples meaning `coeff * f(a) g(b)`.
    pub fn binary(
        name: impl Into<String>,
        algebra: Arc<DiffAlgebra>,
        terms: impl IntoIterator<Item = (Rational, DiffOperator, DiffOperator)>,
    ) -> Result<Self> {
        Self::new(
            name,
            algebra,
            2,
            terms.into_iter().map(|(c, f, g)| Summand::new(c, vec![f, g])),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn algebra(&self) -> &Arc<DiffAlgebra> {
        &self.algebra
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        self.algebra.context()
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Derivation names appearing in some factor.
    pub fn letters_used(&self) -> BTreeSet<String> {
        self.summands
            .iter()
            .flat_map(|s| s.factors.iter())
            .flat_map(|f| f.letters().map(str::to_string).collect::<Vec<_>>())
            .collect()
    }

    pub(crate) fn check_args(&self, args: &[Polynomial]) -> Result<()> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        if args.iter().any(|a| !same_context(a.context(), self.context())) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn apply(&self, args: &[Polynomial]) -> Result<Polynomial> {
        self.check_args(args)?;
        let mut out = Polynomial::zero(self.context());
        for s in &self.summands {
            let mut prod = Polynomial::constant(self.context(), s.coeff.clone());
            for (f, a) in s.factors.iter().zip(args) {
                if prod.is_zero() {
                    break;
                }
                prod = prod.checked_mul(&f.apply(&self.algebra, a)?)?;
            }
            out.add_scaled(&Rational::one(), &prod)?;
        }
        Ok(out)
    }

    /// `{a, b}^op = {b, a}`.
    pub fn opposite(&self) -> Result<Self> {
        if self.arity != 2 {
            return Err(Error::InvalidOperation(format!(
                "opposite needs a binary operation, {} has arity {}",
                self.name, self.arity
            )));
        }
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        Ok(DerivedOperation {
            name,
            arity: 2,
            algebra: self.algebra.clone(),
            summands: self
                .summands
                .iter()
                .map(|s| Summand::new(s.coeff.clone(), vec![s.factors[1].clone(), s.factors[0].clone()]))
                .collect(),
        })
    }

    pub fn orders(&self) -> OperationOrders {
        let mut per_slot = vec![0; self.arity];
        let mut total = 0;
        for s in &self.summands {
            let mut sum = 0;
            for (i, f) in s.factors.iter().enumerate() {
                let o = f.order();
                per_slot[i] = per_slot[i].max(o);
                sum += o;
            }
            total = total.max(sum);
        }
        OperationOrders { per_slot, total }
    }

    /// Same summands; compares presentations, not actions.
    pub fn same_presentation(&self, other: &DerivedOperation) -> bool {
        self.arity == other.arity && self.summands == other.summands
    }
}

impl fmt::Display for DerivedOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !s.coeff.is_one() {
                write!(f, "({})*", s.coeff)?;
            }
            let parts: Vec<String> = s.factors.iter().map(|op| format!("[{op}]")).collect();
            f.write_str(&parts.join("⊗"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for DerivedOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self)
    }
}

/// The generalized Rankin–Cohen bracket
/// `[a,b]_n = Σ_{r+s=n} (-1)^r D^r binom(W+n-1, s)(a) · D^s binom(W+n-1, r)(b)`.
///
/// `w` and `d` name derivations registered in `algebra`.
pub fn rankin_cohen(algebra: &Arc<DiffAlgebra>, n: usize, w: &str, d: &str) -> Result<DerivedOperation> {
    algebra.get(w)?;
    algebra.get(d)?;
    let shift = Rational::from_integer(n as i64 - 1);
    let summands = (0..=n).map(|r| {
        let s = n - r;
        let left = DiffOperator::word(OperatorWord::power(d, r)).compose(&binomial_in_operator(w, &shift, s));
        let right = DiffOperator::word(OperatorWord::power(d, s)).compose(&binomial_in_operator(w, &shift, r));
        let sign = if r % 2 == 0 { 1 } else { -1 };
        Summand::new(Rational::from_integer(sign), vec![left, right])
    });
    DerivedOperation::new(format!("rc:{n}"), algebra.clone(), 2, summands)
}

/// The almost-Poisson bracket `ω(df, dg)` of a bivector `ω = Σ_{i<j} ω^{ij} ∂_i ∧ ∂_j`.
///
/// Registers `E{i} = ∂/∂x_i` and `V{i} = Σ_{j>i} ω^{ij} ∂/∂x_j` (1-based) and
/// returns `Σ_i (E_i ⊗ V_i - V_i ⊗ E_i)`. Rows with `V_i = 0` are skipped.
/// `omega` maps 0-based pairs `(i, j)`, `i < j`, to coefficients.
pub fn bivector_bracket(
    ctx: &Arc<AlgebraContext>,
    omega: &BTreeMap<(usize, usize), Polynomial>,
) -> Result<DerivedOperation> {
    let n = ctx.len();
    for (&(i, j), p) in omega {
        if i >= j || j >= n {
            return Err(Error::InvalidArgument(format!(
                "bivector entry ({}, {}) must satisfy i < j <= {n}",
                i + 1,
                j + 1
            )));
        }
        if !same_context(p.context(), ctx) {
            return Err(Error::ContextMismatch);
        }
    }
    let mut alg = DiffAlgebra::new(ctx.clone());
    let mut terms = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let images: Vec<Polynomial> = (0..n)
            .map(|j| {
                omega
                    .get(&(i, j))
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(ctx))
            })
            .collect();
        let v = Derivation::new(format!("V{}", i + 1), ctx, images)?;
        if v.is_zero() {
            continue;
        }
        let e = Derivation::partial(format!("E{}", i + 1), ctx, i);
        let (en, vn) = (e.name().to_string(), v.name().to_string());
        alg.register(e)?;
        alg.register(v)?;
        terms.push((Rational::one(), DiffOperator::letter(&en), DiffOperator::letter(&vn)));
        terms.push((-Rational::one(), DiffOperator::letter(&vn), DiffOperator::letter(&en)));
    }
    DerivedOperation::binary("bivector", Arc::new(alg), terms)
}

/// `a ⋆ b = -a ∂^m(b) + ∂^m(a) b + ∂^m(ab)`, with `∂^m(ab)` expanded by the
/// binomial Leibniz rule into `Σ_i C(m,i) ∂^i(a) ∂^{m-i}(b)`.
pub fn leibniz_expand_product_rule(algebra: &Arc<DiffAlgebra>, d: &str, m: usize) -> Result<DerivedOperation> {
    if m < 1 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    algebra.get(d)?;
    let pw = |k: usize| DiffOperator::word(OperatorWord::power(d, k));
    let mut terms = vec![
        (-Rational::one(), pw(0), pw(m)),
        (Rational::one(), pw(m), pw(0)),
    ];
    let mut binom = Rational::one();
    for i in 0..=m {
        terms.push((binom.clone(), pw(i), pw(m - i)));
        binom = binom * Rational::from_integer((m - i) as i64) / Rational::from_integer(i as i64 + 1);
    }
    DerivedOperation::binary(format!("dzh_star2:{m}"), algebra.clone(), terms)
}
