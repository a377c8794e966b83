//! Built-in derived operations with their model algebras and expected properties.
//!
//! Names are `base` or `base:param` (`poisson:2`, `rc:3`); a bare parametric
//! name means parameter 1.

use std::sync::Arc;

use serde::Serialize;

use crate::bounds::{bound_fd, bound_fg, bound_rc, BoundResult};
use crate::diffop::{Derivation, DiffAlgebra, DiffOperator, OperatorWord};
use crate::engine::{
    jacobiator, leibnizator, monomials_up_to, novikov_defects, verify, Caps, Mode, Sampler, Side, Verdict,
};
use crate::error::{Error, Result};
use crate::operation::{leibniz_expand_product_rule, rankin_cohen, DerivedOperation};
use crate::poly::{AlgebraContext, Polynomial, Weight};
use crate::rational::Rational;

/// A machine-checkable claim about a catalog operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fact {
    /// `s_{degree,side} = 0`.
    StandardIdentity { side: Side, degree: usize },
    Jacobi { holds: bool },
    /// Leibniz rule in the first slot.
    Leibniz { holds: bool },
    /// `{a,b} = sign * {b,a}`.
    Symmetry { sign: i8 },
    /// Left symmetry and right commutativity.
    NovikovAxioms,
    /// `[a,b]_1 W(c) + [b,c]_1 W(a) + [c,a]_1 W(b) = 0` on homogeneous inputs.
    RcWeightIdentity,
    /// Agreement with the weight form `Σ (-1)^r C(n+k-1,s) C(n+l-1,r) D^r(a) D^s(b)`.
    RcWeightFormula { n: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    #[serde(serialize_with = "ser_op")]
    pub operation: DerivedOperation,
    /// Dimension of the Lie algebra spanned by the derivations, when finite.
    pub lie_dim: Option<u64>,
    /// Sample weight-homogeneous arguments when checking facts.
    pub homogeneous_inputs: bool,
    pub facts: Vec<Fact>,
}

fn ser_op<S: serde::Serializer>(op: &DerivedOperation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(op)
}

impl CatalogEntry {
    pub fn context(&self) -> &Arc<AlgebraContext> {
        self.operation.context()
    }

    /// A sampler configured for this entry's inputs.
    pub fn sampler(&self, base: &Sampler) -> Sampler {
        base.clone().homogeneous(base.homogeneous || self.homogeneous_inputs)
    }

    /// Bounds that apply to this presentation. `g_order` overrides the
    /// word-length total order for the finite-dimension bound.
    pub fn bounds(&self, g_order: Option<u64>) -> Vec<BoundResult> {
        let m = self.operation.orders().total as u64;
        let n = self.operation.algebra().num_derivations() as u64;
        let mut out = Vec::new();
        if n > 1 {
            out.extend(bound_fg(n, m).ok());
        }
        if let Some(dim) = self.lie_dim {
            out.extend(bound_fd(dim, g_order.unwrap_or(m)).ok());
        }
        if let Some(k) = self.name.strip_prefix("rc:").and_then(|k| k.parse().ok()) {
            out.extend(bound_rc(k).ok());
        }
        out
    }
}

// ---------------------------------------------------------------------------
// model algebras

fn var_names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// `k[x1..x2n]` with `Xi = ∂/∂xi`, `Yi = ∂/∂x(n+i)`.
pub fn symplectic_model(n: usize) -> Result<Arc<DiffAlgebra>> {
    let ctx = AlgebraContext::ungraded(&var_names("x", 2 * n))?;
    let mut alg = DiffAlgebra::new(ctx.clone());
    for i in 0..n {
        alg.register(Derivation::partial(format!("X{}", i + 1), &ctx, i))?;
        alg.register(Derivation::partial(format!("Y{}", i + 1), &ctx, n + i))?;
    }
    Ok(Arc::new(alg))
}

/// `k[x1..x(2n+1)]` with `Xi = ∂/∂xi`, `Yi = ∂/∂x(n+i) + xi ∂/∂x(2n+1)`,
/// `Z = ∂/∂x(2n+1)`, spanning a Heisenberg Lie algebra.
pub fn contact_model(n: usize) -> Result<Arc<DiffAlgebra>> {
    let ctx = AlgebraContext::ungraded(&var_names("x", 2 * n + 1))?;
    let t = 2 * n;
    let mut alg = DiffAlgebra::new(ctx.clone());
    for i in 0..n {
        alg.register(Derivation::partial(format!("X{}", i + 1), &ctx, i))?;
        let mut images = vec![Polynomial::zero(&ctx); ctx.len()];
        images[n + i] = Polynomial::one(&ctx);
        images[t] = Polynomial::variable(&ctx, i);
        alg.register(Derivation::new(format!("Y{}", i + 1), &ctx, images)?)?;
    }
    alg.register(Derivation::partial("Z", &ctx, t))?;
    Ok(Arc::new(alg))
}

/// `k[x]` with `d = ∂/∂x`.
pub fn line_model() -> Arc<DiffAlgebra> {
    let ctx = AlgebraContext::ungraded(&["x"]).expect("valid names");
    Arc::new(DiffAlgebra::with_derivations(ctx.clone(), [Derivation::partial("d", &ctx, 0)]).expect("fresh"))
}

/// `k[x,y]` with `d1 = ∂/∂x`, `d2 = ∂/∂y`.
pub fn plane_model() -> Arc<DiffAlgebra> {
    let ctx = AlgebraContext::ungraded(&["x", "y"]).expect("valid names");
    Arc::new(
        DiffAlgebra::with_derivations(
            ctx.clone(),
            [Derivation::partial("d1", &ctx, 0), Derivation::partial("d2", &ctx, 1)],
        )
        .expect("fresh"),
    )
}

/// `k[y]`, weight 2, `W` Euler, `D(y) = y^2`. Here `[-,-]_1` vanishes identically.
pub fn rc_model_1() -> Arc<DiffAlgebra> {
    let ctx = AlgebraContext::new([("y", 2)]).expect("valid names");
    let y = Polynomial::variable(&ctx, 0);
    let d = Derivation::new("D", &ctx, vec![y.pow(2)]).expect("one image");
    Arc::new(DiffAlgebra::with_derivations(ctx.clone(), [Derivation::euler("W", &ctx), d]).expect("fresh"))
}

/// `k[y,z]`, weights 2 and 4, `W` Euler, `D(y) = z`, `D(z) = yz`.
pub fn rc_model_2() -> Arc<DiffAlgebra> {
    let ctx = AlgebraContext::new([("y", 2), ("z", 4)]).expect("valid names");
    let y = Polynomial::variable(&ctx, 0);
    let z = Polynomial::variable(&ctx, 1);
    let d = Derivation::new("D", &ctx, vec![z.clone(), &y * &z]).expect("two images");
    Arc::new(DiffAlgebra::with_derivations(ctx.clone(), [Derivation::euler("W", &ctx), d]).expect("fresh"))
}

// ---------------------------------------------------------------------------
// operations

fn one() -> Rational {
    Rational::one()
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn pw(letter: &str, k: usize) -> DiffOperator {
    DiffOperator::word(OperatorWord::power(letter, k))
}

fn id() -> DiffOperator {
    DiffOperator::identity()
}

fn skew_sum(n: usize) -> Vec<(Rational, DiffOperator, DiffOperator)> {
    let mut terms = Vec::new();
    for i in 1..=n {
        let (x, y) = (format!("X{i}"), format!("Y{i}"));
        terms.push((one(), DiffOperator::letter(&x), DiffOperator::letter(&y)));
        terms.push((-one(), DiffOperator::letter(&y), DiffOperator::letter(&x)));
    }
    terms
}

pub fn poisson(n: usize) -> Result<DerivedOperation> {
    DerivedOperation::binary(format!("poisson:{n}"), symplectic_model(n)?, skew_sum(n))
}

/// `g Z(f) - f Z(g) + Σ (Xi(f) Yi(g) - Xi(g) Yi(f))` on the contact model.
///
/// With `[Xi, Yi] = Z` this sign of the zeroth-order part is the one for
/// which the Jacobi identity holds.
pub fn jacobi(n: usize) -> Result<DerivedOperation> {
    let mut terms = vec![(one(), DiffOperator::letter("Z"), id()), (-one(), id(), DiffOperator::letter("Z"))];
    terms.extend(skew_sum(n));
    DerivedOperation::binary(format!("jacobi:{n}"), contact_model(n)?, terms)
}

pub fn mayer(n: usize) -> Result<DerivedOperation> {
    DerivedOperation::binary(format!("mayer:{n}"), contact_model(n)?, skew_sum(n))
}

fn line_op(name: &str, terms: Vec<(i64, usize, usize)>) -> DerivedOperation {
    DerivedOperation::binary(
        name,
        line_model(),
        terms.into_iter().map(|(c, i, j)| (int(c), pw("d", i), pw("d", j))),
    )
    .expect("letters registered")
}

pub fn twoder_skew() -> DerivedOperation {
    DerivedOperation::binary(
        "twoder_skew",
        plane_model(),
        [
            (one(), DiffOperator::letter("d1"), DiffOperator::letter("d2")),
            (-one(), DiffOperator::letter("d2"), DiffOperator::letter("d1")),
        ],
    )
    .expect("letters registered")
}

pub fn rc(n: usize) -> Result<DerivedOperation> {
    rankin_cohen(&rc_model_2(), n, "W", "D")
}

fn parse_param(name: &str, param: Option<&str>) -> Result<usize> {
    match param {
        None => Ok(1),
        Some(p) => p
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad parameter '{p}' in catalog name '{name}'"))),
    }
}

fn entry(name: &str, description: &str, operation: DerivedOperation, lie_dim: Option<u64>, facts: Vec<Fact>) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        description: description.to_string(),
        operation: operation.with_name(name),
        lie_dim,
        homogeneous_inputs: false,
        facts,
    }
}

use Fact::*;

fn std_id(side: Side, degree: usize) -> Fact {
    StandardIdentity { side, degree }
}

/// Look up `base` or `base:param`.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (name, None),
    };
    let no_param = || -> Result<()> {
        match param {
            None => Ok(()),
            Some(_) => Err(Error::InvalidArgument(format!("catalog entry '{base}' takes no parameter"))),
        }
    };
    let positive = |what: &str| -> Result<usize> {
        let v = parse_param(name, param)?;
        if v == 0 {
            return Err(Error::InvalidArgument(format!("{what} must be at least 1")));
        }
        Ok(v)
    };
    let e = match base {
        "poisson" => {
            let n = positive("n")?;
            entry(
                &format!("poisson:{n}"),
                "Poisson bracket on k[x1..x2n]",
                poisson(n)?,
                Some(2 * n as u64),
                vec![Jacobi { holds: true }, Leibniz { holds: true }, Symmetry { sign: -1 }],
            )
        }
        "jacobi" => {
            let n = positive("n")?;
            entry(
                &format!("jacobi:{n}"),
                "Jacobi bracket on the contact model k[x1..x(2n+1)]",
                jacobi(n)?,
                Some(2 * n as u64 + 1),
                vec![Jacobi { holds: true }, Leibniz { holds: false }, Symmetry { sign: -1 }],
            )
        }
        "mayer" => {
            let n = positive("n")?;
            entry(
                &format!("mayer:{n}"),
                "Mayer bracket on the contact model k[x1..x(2n+1)]",
                mayer(n)?,
                Some(2 * n as u64 + 1),
                vec![Leibniz { holds: true }, Jacobi { holds: false }, Symmetry { sign: -1 }],
            )
        }
        "novikov" => {
            no_param()?;
            entry(
                "novikov",
                "Novikov product a*d(b) on k[x]",
                line_op("novikov", vec![(1, 0, 1)]),
                Some(1),
                vec![std_id(Side::Right, 3), std_id(Side::Left, 4), NovikovAxioms],
            )
        }
        "novikov_comm" => {
            no_param()?;
            entry(
                "novikov_comm",
                "commutator a*d(b) - b*d(a) of the Novikov product",
                line_op("novikov_comm", vec![(1, 0, 1), (-1, 1, 0)]),
                Some(1),
                vec![std_id(Side::Left, 5), Symmetry { sign: -1 }],
            )
        }
        "novikov_anti" => {
            no_param()?;
            entry(
                "novikov_anti",
                "anticommutator a*d(b) + b*d(a) of the Novikov product",
                line_op("novikov_anti", vec![(1, 0, 1), (1, 1, 0)]),
                Some(1),
                vec![std_id(Side::Left, 4), Symmetry { sign: 1 }],
            )
        }
        "dzh_skew2" => {
            no_param()?;
            entry(
                "dzh_skew2",
                "a*d^2(b) - b*d^2(a)",
                line_op("dzh_skew2", vec![(1, 0, 2), (-1, 2, 0)]),
                Some(1),
                vec![Symmetry { sign: -1 }],
            )
        }
        "dzh_skew12" => {
            no_param()?;
            entry(
                "dzh_skew12",
                "d(a)*d^2(b) - d(b)*d^2(a)",
                line_op("dzh_skew12", vec![(1, 1, 2), (-1, 2, 1)]),
                Some(1),
                vec![Symmetry { sign: -1 }],
            )
        }
        "dzh_order3" => {
            no_param()?;
            entry(
                "dzh_order3",
                "d^3(a)*b - 2*d^2(a)*d(b) + 2*d(a)*d^2(b) - a*d^3(b)",
                line_op("dzh_order3", vec![(1, 3, 0), (-2, 2, 1), (2, 1, 2), (-1, 0, 3)]),
                Some(1),
                vec![Symmetry { sign: -1 }],
            )
        }
        "dzh_0alia" => {
            no_param()?;
            entry(
                "dzh_0alia",
                "d^3(a)*b + 4*d^2(a)*d(b) + 5*d(a)*d^2(b) + 2*a*d^3(b)",
                line_op("dzh_0alia", vec![(1, 3, 0), (4, 2, 1), (5, 1, 2), (2, 0, 3)]),
                Some(1),
                vec![],
            )
        }
        "dzh_star1" => {
            no_param()?;
            entry(
                "dzh_star1",
                "d(a)*d^2(b)",
                line_op("dzh_star1", vec![(1, 1, 2)]),
                Some(1),
                vec![std_id(Side::Right, 4)],
            )
        }
        "dzh_star2" => {
            let m = positive("m")?;
            entry(
                &format!("dzh_star2:{m}"),
                "-a*d^m(b) + d^m(a)*b + d^m(a*b), expanded by the Leibniz rule",
                leibniz_expand_product_rule(&line_model(), "d", m)?,
                Some(1),
                vec![],
            )
        }
        "dzh_star3" => {
            no_param()?;
            entry(
                "dzh_star3",
                "d(d(a)*b) = d^2(a)*b + d(a)*d(b)",
                line_op("dzh_star3", vec![(1, 2, 0), (1, 1, 1)]),
                Some(1),
                vec![],
            )
        }
        "twoder_skew" => {
            no_param()?;
            entry(
                "twoder_skew",
                "d1(a)*d2(b) - d1(b)*d2(a) on k[x,y]",
                twoder_skew(),
                Some(2),
                vec![std_id(Side::Left, 16), Symmetry { sign: -1 }],
            )
        }
        "rc" => {
            let n = parse_param(name, param)?;
            let mut facts = vec![Symmetry { sign: if n % 2 == 0 { 1 } else { -1 } }, RcWeightFormula { n }];
            if n == 1 {
                facts.extend([std_id(Side::Left, 8), std_id(Side::Right, 8), RcWeightIdentity]);
            }
            let mut e = entry(
                &format!("rc:{n}"),
                "generalized Rankin-Cohen bracket on k[y,z] (weights 2, 4; D(y) = z, D(z) = yz)",
                rc(n)?,
                Some(2),
                facts,
            );
            e.homogeneous_inputs = true;
            e
        }
        _ => return Err(Error::InvalidArgument(format!("unknown catalog entry '{name}'"))),
    };
    Ok(e)
}

pub const CATALOG_NAMES: &[&str] = &[
    "poisson:1",
    "jacobi:1",
    "mayer:1",
    "novikov",
    "novikov_comm",
    "novikov_anti",
    "dzh_skew2",
    "dzh_skew12",
    "dzh_order3",
    "dzh_0alia",
    "dzh_star1",
    "dzh_star2:1",
    "dzh_star2:2",
    "dzh_star3",
    "twoder_skew",
    "rc:1",
    "rc:2",
    "rc:3",
];

pub fn catalog_list() -> Vec<CatalogEntry> {
    CATALOG_NAMES
        .iter()
        .map(|n| lookup(n).expect("built-in entries construct"))
        .collect()
}

// ---------------------------------------------------------------------------
// checkers

/// `[a,b]_1 W(c) + [b,c]_1 W(a) + [c,a]_1 W(b)` in rc-model-2.
pub fn rc_weight_identity_check(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Result<Polynomial> {
    for p in [a, b, c] {
        if p.weight_of() == Weight::Inhomogeneous {
            return Err(Error::InvalidArgument(format!("{p} is not weight-homogeneous")));
        }
    }
    let alg = rc_model_2();
    let bracket = rankin_cohen(&alg, 1, "W", "D")?;
    let w = alg.get("W")?;
    let term = |x: &Polynomial, y: &Polynomial, z: &Polynomial| -> Result<Polynomial> {
        bracket.apply(&[x.clone(), y.clone()])?.checked_mul(&w.derive(z)?)
    };
    term(a, b, c)?.checked_add(&term(b, c, a)?)?.checked_add(&term(c, a, b)?)
}

/// `C(z, s) = z(z-1)...(z-s+1)/s!` for an integer `z`.
fn binomial(z: i64, s: usize) -> Rational {
    (0..s as i64)
        .map(|i| Rational::from_integer(z - i) / Rational::from_integer(i + 1))
        .product()
}

/// `Σ_{r+s=n} (-1)^r C(n+k-1, s) C(n+l-1, r) D^r(a) D^s(b)` for homogeneous
/// `a` of weight `k` and `b` of weight `l`.
pub fn rc_weight_formula(alg: &DiffAlgebra, n: usize, d: &str, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let weight = |p: &Polynomial| match p.weight_of() {
        Weight::Homogeneous(w) => Ok(w),
        Weight::Zero => Ok(0),
        Weight::Inhomogeneous => Err(Error::InvalidArgument(format!("{p} is not weight-homogeneous"))),
    };
    let (k, l) = (weight(a)?, weight(b)?);
    let mut out = Polynomial::zero(a.context());
    for r in 0..=n {
        let s = n - r;
        let sign = if r % 2 == 0 { one() } else { -one() };
        let c = sign * binomial(n as i64 + k - 1, s) * binomial(n as i64 + l - 1, r);
        let da = OperatorWord::power(d, r).apply(alg, a)?;
        let db = OperatorWord::power(d, s).apply(alg, b)?;
        out.add_scaled_product(&c, &da, &db)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct FactCheck {
    pub fact: Fact,
    pub passed: bool,
    pub detail: String,
    /// Arguments of a witness (for failures that were expected) or of a violation.
    pub witness: Option<Vec<String>>,
}

fn strings(ps: &[&Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// First triple of monomials of degree `<= 3` (graded-lex, first argument
/// outermost) on which `f` is nonzero.
pub fn monomial_witness<F>(ctx: &Arc<AlgebraContext>, f: F) -> Result<Option<[Polynomial; 3]>>
where
    F: Fn(&Polynomial, &Polynomial, &Polynomial) -> Result<Polynomial>,
{
    let ms: Vec<Polynomial> = monomials_up_to(ctx.len(), 3)
        .into_iter()
        .map(|m| Polynomial::monomial(ctx, m, one()))
        .collect();
    for a in &ms {
        for b in &ms {
            for c in &ms {
                if !f(a, b, c)?.is_zero() {
                    return Ok(Some([a.clone(), b.clone(), c.clone()]));
                }
            }
        }
    }
    Ok(None)
}

/// Check a three-argument expression that should vanish (`expect_zero`) on
/// `sampler.trials` random triples, or should have a monomial witness.
fn check_triple<F>(entry: &CatalogEntry, sampler: &Sampler, expect_zero: bool, f: F) -> Result<(bool, String, Option<Vec<String>>)>
where
    F: Fn(&Polynomial, &Polynomial, &Polynomial) -> Result<Polynomial>,
{
    let ctx = entry.context();
    if expect_zero {
        for t in 0..sampler.trials {
            let args = sampler.arguments(ctx, 3, t);
            if !f(&args[0], &args[1], &args[2])?.is_zero() {
                return Ok((false, format!("nonzero on trial {t}"), Some(strings(&[&args[0], &args[1], &args[2]]))));
            }
        }
        Ok((true, format!("zero on {} random triples", sampler.trials), None))
    } else {
        match monomial_witness(ctx, f)? {
            Some(w) => Ok((true, "monomial witness found".into(), Some(strings(&[&w[0], &w[1], &w[2]])))),
            None => Ok((false, "no monomial witness of degree <= 3".into(), None)),
        }
    }
}

pub fn check_fact(entry: &CatalogEntry, fact: Fact, sampler: &Sampler, caps: &Caps) -> Result<FactCheck> {
    let op = &entry.operation;
    let sampler = entry.sampler(sampler);
    let (passed, detail, witness) = match fact {
        StandardIdentity { side, degree } => {
            let r = verify(op, side, degree, Mode::Random, &sampler, caps)?;
            let passed = r.verdict != Verdict::Refuted;
            (passed, r.guarantee, r.counterexample.map(|c| c.args))
        }
        Jacobi { holds } => check_triple(entry, &sampler, holds, |a, b, c| jacobiator(op, a, b, c))?,
        Leibniz { holds } => check_triple(entry, &sampler, holds, |a, b, c| leibnizator(op, a, b, c))?,
        Symmetry { sign } => check_triple(entry, &sampler, true, |a, b, _| {
            let ab = op.apply(&[a.clone(), b.clone()])?;
            let ba = op.apply(&[b.clone(), a.clone()])?;
            ab.checked_sub(&ba.scale(&int(sign as i64)))
        })?,
        NovikovAxioms => check_triple(entry, &sampler, true, |a, b, c| {
            let (l, r) = novikov_defects(op, a, b, c)?;
            Ok(if l.is_zero() { r } else { l })
        })?,
        RcWeightIdentity => check_triple(entry, &sampler, true, rc_weight_identity_check)?,
        RcWeightFormula { n } => {
            let alg = op.algebra().clone();
            check_triple(entry, &sampler, true, |a, b, _| {
                op.apply(&[a.clone(), b.clone()])?
                    .checked_sub(&rc_weight_formula(&alg, n, "D", a, b)?)
            })?
        }
    };
    Ok(FactCheck {
        fact,
        passed,
        detail,
        witness,
    })
}
