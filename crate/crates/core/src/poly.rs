//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub weight: i64,
}

/// The generators of a polynomial algebra, each with an integer weight.
///
/// All-zero weights model an ungraded algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraContext {
    variables: Vec<Variable>,
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl AlgebraContext {
    pub fn new<I, S>(variables: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut out: Vec<Variable> = Vec::new();
        for (name, weight) in variables {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::InvalidVariableName(name));
            }
            if out.iter().any(|v| v.name == name) {
                return Err(Error::DuplicateVariable(name));
            }
            out.push(Variable { name, weight });
        }
        Ok(Arc::new(AlgebraContext { variables: out }))
    }

    /// Context with every weight zero.
    pub fn ungraded<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        Self::new(names.iter().map(|n| (n.as_ref().to_string(), 0)))
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.variables[index].name
    }

    pub fn weight(&self, index: usize) -> i64 {
        self.variables[index].weight
    }
}

pub(crate) fn same_context(a: &Arc<AlgebraContext>, b: &Arc<AlgebraContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector, one entry per context variable.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors compared left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exponents: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weight(&self, ctx: &AlgebraContext) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| e as i64 * ctx.weight(i))
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Lower the exponent of `index` by one; `None` if it is already zero.
    pub(crate) fn lowered(&self, index: usize) -> Option<Monomial> {
        if self.0[index] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[index] -= 1;
        Some(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of [`Polynomial::weight_of`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(i64),
    Inhomogeneous,
    Zero,
}

/// An element of the commutative algebra `k[x_1, ..., x_N]`, `k = Q`.
///
/// The term map never stores a zero coefficient, so two polynomials are
/// equal exactly when their term maps are.
#[derive(Clone)]
pub struct Polynomial {
    ctx: Arc<AlgebraContext>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ctx: &Arc<AlgebraContext>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<AlgebraContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Arc<AlgebraContext>, c: Rational) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn monomial(ctx: &Arc<AlgebraContext>, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.0.len(), ctx.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn variable(ctx: &Arc<AlgebraContext>, index: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), index), Rational::one())
    }

    pub fn var(ctx: &Arc<AlgebraContext>, name: &str) -> Result<Self> {
        ctx.index_of(name)
            .map(|i| Self::variable(ctx, i))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I>(ctx: &Arc<AlgebraContext>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), ctx.len());
            p.add_term(m, &c);
        }
        p
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Common weight of all terms, or why there is none.
    pub fn weight_of(&self) -> Weight {
        let mut weights = self.terms.keys().map(|m| m.weight(&self.ctx));
        match weights.next() {
            None => Weight::Zero,
            Some(w) if weights.all(|x| x == w) => Weight::Homogeneous(w),
            Some(_) => Weight::Inhomogeneous,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &Polynomial) -> Result<()> {
        self.check(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (m, k) in &other.terms {
            self.add_term(m.clone(), &(c * k));
        }
        Ok(())
    }

    /// `self += c * a * b`, without materializing the product.
    pub fn add_scaled_product(
        &mut self,
        c: &Rational,
        a: &Polynomial,
        b: &Polynomial,
    ) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if c.is_zero() {
            return Ok(());
        }
        for (ma, ka) in &a.terms {
            let cka = c * ka;
            for (mb, kb) in &b.terms {
                self.add_term(ma.mul(mb), &(&cka * kb));
            }
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other)?;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other)?;
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = Self::zero(&self.ctx);
        out.add_scaled_product(&Rational::one(), self, other)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

// The operator impls panic on a context mismatch; use the `checked_*`
// methods where contexts are not known to agree.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial context mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial context mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ctx: &AlgebraContext, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ctx.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Prints in the literal grammar accepted by [`crate::parse::parse_polynomial`],
/// terms in descending graded-lex order.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &self.ctx, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
