//! Derivations of a polynomial algebra and the operator algebra they generate.
//!
//! A [`DiffOperator`] is a rational combination of words in named derivations,
//! i.e. an element of the free associative algebra on the derivation names
//! acting on polynomials. Words are never rewritten modulo commutation
//! relations; only their action matters.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{same_context, AlgebraContext, Polynomial};
use crate::rational::Rational;

/// A linear map satisfying the Leibniz rule, fixed by its images on the
/// generators.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    name: String,
    ctx: Arc<AlgebraContext>,
    images: Vec<Polynomial>,
}

impl Derivation {
    /// `images[i]` is the image of the i-th context variable.
    pub fn new(name: impl Into<String>, ctx: &Arc<AlgebraContext>, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != ctx.len() {
            return Err(Error::InvalidArgument(format!(
                "derivation needs {} images, got {}",
                ctx.len(),
                images.len()
            )));
        }
        if images.iter().any(|p| !same_context(p.context(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        Ok(Derivation {
            name: name.into(),
            ctx: ctx.clone(),
            images,
        })
    }

    /// Build from `(variable name, image)` pairs; unlisted variables map to 0.
    pub fn from_images<'a, I>(name: impl Into<String>, ctx: &Arc<AlgebraContext>, images: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Polynomial)>,
    {
        let mut out = vec![Polynomial::zero(ctx); ctx.len()];
        for (var, image) in images {
            let i = ctx
                .index_of(var)
                .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
            out[i] = image;
        }
        Self::new(name, ctx, out)
    }

    /// The partial derivative with respect to the variable at `index`.
    pub fn partial(name: impl Into<String>, ctx: &Arc<AlgebraContext>, index: usize) -> Self {
        let images = (0..ctx.len())
            .map(|i| {
                if i == index {
                    Polynomial::one(ctx)
                } else {
                    Polynomial::zero(ctx)
                }
            })
            .collect();
        Derivation {
            name: name.into(),
            ctx: ctx.clone(),
            images,
        }
    }

    /// The Euler derivation: multiplies a homogeneous element by its weight.
    pub fn euler(name: impl Into<String>, ctx: &Arc<AlgebraContext>) -> Self {
        let images = (0..ctx.len())
            .map(|i| Polynomial::variable(ctx, i).scale(&Rational::from_integer(ctx.weight(i))))
            .collect();
        Derivation {
            name: name.into(),
            ctx: ctx.clone(),
            images,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Derivation {
            name: name.into(),
            ctx: self.ctx.clone(),
            images: self.images.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    /// Apply to `p` via the Leibniz rule: `D(x^e) = sum_i e_i x^(e - 1_i) D(x_i)`.
    pub fn derive(&self, p: &Polynomial) -> Result<Polynomial> {
        if !same_context(p.context(), self.context()) {
            return Err(Error::ContextMismatch);
        }
        let mut out = Polynomial::zero(p.context());
        for (m, c) in p.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                let image = &self.images[i];
                if e == 0 || image.is_zero() {
                    continue;
                }
                let lowered = m.lowered(i).expect("positive exponent");
                let coeff = c * &Rational::from_integer(e as i64);
                for (mi, ci) in image.terms() {
                    out.add_term(lowered.mul(mi), &(&coeff * ci));
                }
            }
        }
        Ok(out)
    }

    /// `[self, other]`, determined by `x_i -> self(other(x_i)) - other(self(x_i))`.
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation> {
        if !same_context(self.context(), other.context()) {
            return Err(Error::ContextMismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(si, oi)| Ok(&self.derive(oi)? - &other.derive(si)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation {
            name: format!("[{},{}]", self.name, other.name),
            ctx: self.ctx.clone(),
            images,
        })
    }

    /// `a * self + b * other`, keeping the name of `self`.
    pub fn linear_combination(&self, a: &Rational, other: &Derivation, b: &Rational) -> Result<Derivation> {
        if !same_context(self.context(), other.context()) {
            return Err(Error::ContextMismatch);
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(s, o)| &s.scale(a) + &o.scale(b))
            .collect();
        Ok(Derivation {
            name: self.name.clone(),
            ctx: self.ctx.clone(),
            images,
        })
    }

    /// Equality of the underlying maps, ignoring names.
    pub fn same_action(&self, other: &Derivation) -> bool {
        self.images == other.images
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.context();
        write!(f, "{} {{", self.name)?;
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {} -> {}", ctx.name(i), image)?;
        }
        f.write_str(" }")
    }
}

/// The commutator `[d1, d2]`; commutators of derivations are derivations.
pub fn derivation_commutator(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    d1.commutator(d2)
}

/// A polynomial algebra together with its registered derivations.
#[derive(Clone)]
pub struct DiffAlgebra {
    ctx: Arc<AlgebraContext>,
    derivations: BTreeMap<String, Derivation>,
    order: Vec<String>,
}

impl DiffAlgebra {
    pub fn new(ctx: Arc<AlgebraContext>) -> Self {
        DiffAlgebra {
            ctx,
            derivations: BTreeMap::new(),
            order: Vec::new(),
        }
    }

    pub fn with_derivations(ctx: Arc<AlgebraContext>, derivations: impl IntoIterator<Item = Derivation>) -> Result<Self> {
        let mut alg = Self::new(ctx);
        for d in derivations {
            alg.register(d)?;
        }
        Ok(alg)
    }

    pub fn register(&mut self, d: Derivation) -> Result<()> {
        if !same_context(d.context(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        if self.derivations.contains_key(d.name()) {
            return Err(Error::DuplicateDerivation(d.name().to_string()));
        }
        self.order.push(d.name().to_string());
        self.derivations.insert(d.name().to_string(), d);
        Ok(())
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn get(&self, name: &str) -> Result<&Derivation> {
        self.derivations
            .get(name)
            .ok_or_else(|| Error::UnknownDerivation(name.to_string()))
    }

    /// Derivations in registration order.
    pub fn derivations(&self) -> impl Iterator<Item = &Derivation> {
        self.order.iter().map(|n| &self.derivations[n])
    }

    pub fn num_derivations(&self) -> usize {
        self.order.len()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::parse::parse_polynomial(text, &self.ctx)
    }
}

impl fmt::Debug for DiffAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.derivations()).finish()
    }
}

/// A composition of derivations; `(D1, D2)` acts as `D1 ∘ D2`.
/// The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OperatorWord(Vec<String>);

impl OperatorWord {
    pub fn identity() -> Self {
        OperatorWord(Vec::new())
    }

    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Self {
        OperatorWord(letters.into_iter().map(Into::into).collect())
    }

    /// `letter` repeated `n` times.
    pub fn power(letter: &str, n: usize) -> Self {
        OperatorWord(vec![letter.to_string(); n])
    }

    pub fn letters(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ∘ other`.
    pub fn then_inner(&self, other: &OperatorWord) -> OperatorWord {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        OperatorWord(letters)
    }

    pub fn apply(&self, alg: &DiffAlgebra, p: &Polynomial) -> Result<Polynomial> {
        let mut out = p.clone();
        for letter in self.0.iter().rev() {
            out = alg.get(letter)?.derive(&out)?;
            if out.is_zero() {
                break;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        f.write_str(&self.0.join("."))
    }
}

pub fn apply_word(w: &OperatorWord, alg: &DiffAlgebra, p: &Polynomial) -> Result<Polynomial> {
    w.apply(alg, p)
}

/// A rational linear combination of operator words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DiffOperator {
    terms: BTreeMap<OperatorWord, Rational>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::word(OperatorWord::identity())
    }

    pub fn word(w: OperatorWord) -> Self {
        Self::from_terms([(w, Rational::one())])
    }

    /// Single derivation letter.
    pub fn letter(name: &str) -> Self {
        Self::word(OperatorWord::new([name]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (OperatorWord, Rational)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    fn add_term(&mut self, w: OperatorWord, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OperatorWord, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum word length; 0 for the zero operator.
    pub fn order(&self) -> usize {
        self.terms.keys().map(OperatorWord::len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, k)| (w.clone(), c * k)))
    }

    pub fn add(&self, other: &DiffOperator) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    /// `self ∘ other`, by concatenating words.
    pub fn compose(&self, other: &DiffOperator) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.then_inner(w2), &(c1 * c2));
            }
        }
        out
    }

    /// Letters used by this operator.
    pub fn letters(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().flat_map(|w| w.letters().iter().map(String::as_str))
    }

    pub fn apply(&self, alg: &DiffAlgebra, p: &Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(p.context());
        for (w, c) in &self.terms {
            out.add_scaled(c, &w.apply(alg, p)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

pub fn apply_operator(t: &DiffOperator, alg: &DiffAlgebra, p: &Polynomial) -> Result<Polynomial> {
    t.apply(alg, p)
}

/// The operator `binom(D + shift, top) = (D+shift)(D+shift-1)...(D+shift-top+1) / top!`,
/// expanded into powers of `D`.
pub fn binomial_in_operator(derivation: &str, shift: &Rational, top: usize) -> DiffOperator {
    // coefficients of the polynomial in D, lowest degree first
    let mut coeffs = vec![Rational::one()];
    for i in 0..top {
        let c0 = shift - &Rational::from_integer(i as i64);
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j] += &(c * &c0);
            next[j + 1] += c;
        }
        coeffs = next;
    }
    let factorial: Rational = (1..=top as i64).map(Rational::from_integer).product();
    DiffOperator::from_terms(
        coeffs
            .into_iter()
            .enumerate()
            .map(|(j, c)| (OperatorWord::power(derivation, j), c / &factorial)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn kx() -> (Arc<AlgebraContext>, DiffAlgebra) {
        let ctx = AlgebraContext::ungraded(&["x"]).unwrap();
        let alg = DiffAlgebra::with_derivations(ctx.clone(), [Derivation::partial("d", &ctx, 0)]).unwrap();
        (ctx, alg)
    }

    fn rc1() -> (Arc<AlgebraContext>, Derivation, Derivation) {
        let ctx = AlgebraContext::new([("y", 2)]).unwrap();
        let w = Derivation::euler("W", &ctx);
        let d = Derivation::from_images("D", &ctx, [("y", parse_polynomial("y^2", &ctx).unwrap())]).unwrap();
        (ctx, w, d)
    }

    #[test]
    fn derive_examples() {
        let (ctx, alg) = kx();
        let p = parse_polynomial("x^3", &ctx).unwrap();
        assert_eq!(alg.get("d").unwrap().derive(&p).unwrap().to_string(), "3*x^2");

        let (ctx, w, d) = rc1();
        let y2 = parse_polynomial("y^2", &ctx).unwrap();
        assert_eq!(w.derive(&y2).unwrap().to_string(), "4*y^2");
        let y3 = parse_polynomial("y^3", &ctx).unwrap();
        assert_eq!(d.derive(&y3).unwrap().to_string(), "3*y^4");
    }

    #[test]
    fn apply_word_examples() {
        let (ctx, alg) = kx();
        let p = parse_polynomial("x+1", &ctx).unwrap();
        assert_eq!(OperatorWord::identity().apply(&alg, &p).unwrap(), p);
        let x3 = parse_polynomial("x^3", &ctx).unwrap();
        assert_eq!(OperatorWord::power("d", 2).apply(&alg, &x3).unwrap().to_string(), "6*x");

        let ctx2 = AlgebraContext::ungraded(&["x", "y"]).unwrap();
        let alg2 = DiffAlgebra::with_derivations(
            ctx2.clone(),
            [Derivation::partial("dx", &ctx2, 0), Derivation::partial("dy", &ctx2, 1)],
        )
        .unwrap();
        let p = parse_polynomial("x^2*y", &ctx2).unwrap();
        assert_eq!(OperatorWord::new(["dx", "dy"]).apply(&alg2, &p).unwrap().to_string(), "2*x");
        assert!(matches!(
            OperatorWord::new(["dz"]).apply(&alg2, &p),
            Err(Error::UnknownDerivation(_))
        ));
    }

    #[test]
    fn apply_operator_examples() {
        let (ctx, alg) = kx();
        let x = parse_polynomial("x", &ctx).unwrap();
        let t = DiffOperator::letter("d").scale(&Rational::from_integer(2)).add(&DiffOperator::identity().scale(&Rational::from_integer(-1)));
        assert_eq!(t.apply(&alg, &x).unwrap().to_string(), "-x + 2");
        assert!(DiffOperator::zero().apply(&alg, &x).unwrap().is_zero());
        let t2 = DiffOperator::word(OperatorWord::power("d", 2)).add(&DiffOperator::letter("d"));
        let x2 = parse_polynomial("x^2", &ctx).unwrap();
        assert_eq!(t2.apply(&alg, &x2).unwrap().to_string(), "2*x + 2");
    }

    #[test]
    fn commutator_examples() {
        // [W, D](y) = W(y^2) - D(2y) = 4y^2 - 2y^2 = 2y^2
        let (ctx, w, d) = rc1();
        let c = w.commutator(&d).unwrap();
        assert_eq!(c.images()[0], parse_polynomial("2*y^2", &ctx).unwrap());
        let two_d = d.linear_combination(&Rational::from_integer(2), &d, &Rational::zero()).unwrap();
        assert!(c.same_action(&two_d));

        let ctx2 = AlgebraContext::ungraded(&["x", "y"]).unwrap();
        let dx = Derivation::partial("dx", &ctx2, 0);
        let dy = Derivation::partial("dy", &ctx2, 1);
        assert!(dx.commutator(&dy).unwrap().is_zero());

        // Contact model: X = d1, Y = d2 + x1 d3, Z = d3; [X, Y] = Z
        let ctx3 = AlgebraContext::ungraded(&["x1", "x2", "x3"]).unwrap();
        let x = Derivation::partial("X", &ctx3, 0);
        let y = Derivation::from_images(
            "Y",
            &ctx3,
            [
                ("x2", Polynomial::one(&ctx3)),
                ("x3", parse_polynomial("x1", &ctx3).unwrap()),
            ],
        )
        .unwrap();
        let z = Derivation::partial("Z", &ctx3, 2);
        assert!(x.commutator(&y).unwrap().same_action(&z));
    }

    #[test]
    fn binomial_operator_examples() {
        assert_eq!(binomial_in_operator("W", &Rational::zero(), 0), DiffOperator::identity());
        assert_eq!(binomial_in_operator("W", &Rational::zero(), 1), DiffOperator::letter("W"));
        let half = Rational::new(1, 2).unwrap();
        let expected = DiffOperator::from_terms([
            (OperatorWord::power("W", 2), half.clone()),
            (OperatorWord::power("W", 1), half),
        ]);
        assert_eq!(binomial_in_operator("W", &Rational::one(), 2), expected);
    }

    #[test]
    fn binomial_operator_acts_as_binomial_on_eigenvectors() {
        // W y^k = 2k y^k, so binom(W + s, t) y^k = C(2k + s, t) y^k.
        let (ctx, w, _) = rc1();
        let alg = DiffAlgebra::with_derivations(ctx.clone(), [w]).unwrap();
        for k in 0..4u32 {
            for s in 0..3i64 {
                for t in 0..4usize {
                    let p = Polynomial::variable(&ctx, 0).pow(k);
                    let op = binomial_in_operator("W", &Rational::from_integer(s), t);
                    let z = 2 * k as i64 + s;
                    let mut binom = Rational::one();
                    for i in 0..t as i64 {
                        binom = binom * Rational::from_integer(z - i) / Rational::from_integer(i + 1);
                    }
                    assert_eq!(op.apply(&alg, &p).unwrap(), p.scale(&binom));
                }
            }
        }
    }
}
