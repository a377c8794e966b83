//! Property tests: algebraic laws of the polynomial and operator layers, and
//! structural invariants of the standard polynomials.

use std::sync::Arc;

use derivid::catalog::{self, contact_model, rc_model_2};
use derivid::engine::{
    kary_standard, kary_standard_naive, standard, standard_left_dp, standard_left_naive,
    standard_right_naive, verify, Caps, Mode, Sampler, Side, Verdict,
};
use derivid::problem::load_problem;
use derivid::{
    parse_polynomial, AlgebraContext, DerivedOperation, Monomial, OperatorWord, Polynomial,
    Rational, Weight,
};
use proptest::prelude::*;

fn build(ctx: &Arc<AlgebraContext>, terms: Vec<(Vec<u32>, i64, i64)>) -> Polynomial {
    Polynomial::from_terms(
        ctx,
        terms
            .into_iter()
            .map(|(e, n, d)| (Monomial::from_exponents(&e), Rational::new(n as i128, d as i128).unwrap())),
    )
}

/// Raw terms: exponent vector, numerator, positive denominator.
fn raw_terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
}

fn poly_in(ctx: Arc<AlgebraContext>, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    raw_terms(ctx.len(), max_exp, max_terms).prop_map(move |t| build(&ctx, t))
}

fn polys_in(ctx: Arc<AlgebraContext>, max_exp: u32, max_terms: usize, n: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(poly_in(ctx, max_exp, max_terms), n)
}

fn ctx3() -> Arc<AlgebraContext> {
    AlgebraContext::ungraded(&["x", "y", "z"]).unwrap()
}

fn op(name: &str) -> DerivedOperation {
    catalog::lookup(name).unwrap().operation
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::new(n as i128, d as i128).unwrap())
}

/// y^i z^j with 2i + 4j = w on rc-model-2.
fn homogeneous(ctx: Arc<AlgebraContext>) -> impl Strategy<Value = Polynomial> {
    (0u32..=6, prop::collection::vec(-5i64..=5, 4)).prop_map(move |(half, coeffs)| {
        let w = 2 * half;
        let terms = (0..=w / 4).zip(coeffs).map(|(j, c)| {
            let i = (w - 4 * j) / 2;
            (Monomial::from_exponents(&[i, j]), Rational::from_integer(c))
        });
        Polynomial::from_terms(&ctx, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(v in polys_in(ctx3(), 3, 5, 3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        let zero = Polynomial::zero(a.context());
        let one = Polynomial::one(a.context());
        prop_assert_eq!(&(a + b), &(b + a));
        prop_assert_eq!(&(a * b), &(b * a));
        prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
        prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
        prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
        prop_assert_eq!(&(a + &zero), a);
        prop_assert_eq!(&(a * &one), a);
        prop_assert!((a + &(-a)).is_zero());
        prop_assert_eq!(&(a - b), &(a + &(-b)));
        prop_assert!((a * &zero).is_zero());
    }

    #[test]
    fn display_parse_round_trip(a in poly_in(ctx3(), 4, 6)) {
        let text = a.to_string();
        let back = parse_polynomial(&text, a.context()).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn weight_is_multiplicative(a in homogeneous(rc_model_2().context().clone()),
                                b in homogeneous(rc_model_2().context().clone())) {
        match (a.weight_of(), b.weight_of()) {
            (Weight::Homogeneous(wa), Weight::Homogeneous(wb)) => {
                prop_assert_eq!((&a * &b).weight_of(), Weight::Homogeneous(wa + wb));
            }
            (wa, wb) => {
                prop_assert!(wa == Weight::Zero || wb == Weight::Zero);
                prop_assert_eq!((&a * &b).weight_of(), Weight::Zero);
            }
        }
    }

    #[test]
    fn derivations_obey_leibniz(v in polys_in(contact_model(1).unwrap().context().clone(), 3, 4, 2)) {
        let alg = contact_model(1).unwrap();
        let (a, b) = (&v[0], &v[1]);
        for d in alg.derivations() {
            let lhs = d.derive(&(a * b)).unwrap();
            let rhs = &(&d.derive(a).unwrap() * b) + &(a * &d.derive(b).unwrap());
            prop_assert_eq!(lhs, rhs, "{}", d.name());
        }
    }

    #[test]
    fn word_concatenation_is_composition(
        p in poly_in(rc_model_2().context().clone(), 3, 4),
        w1 in prop::collection::vec(prop::sample::select(vec!["W", "D"]), 0..3),
        w2 in prop::collection::vec(prop::sample::select(vec!["W", "D"]), 0..3),
    ) {
        let alg = rc_model_2();
        let (u, v) = (OperatorWord::new(w1), OperatorWord::new(w2));
        let inner = v.apply(&alg, &p).unwrap();
        prop_assert_eq!(u.then_inner(&v).apply(&alg, &p).unwrap(), u.apply(&alg, &inner).unwrap());
    }

    #[test]
    fn commutator_laws(p in poly_in(contact_model(1).unwrap().context().clone(), 3, 4)) {
        let alg = contact_model(1).unwrap();
        let ds: Vec<_> = alg.derivations().collect();
        for a in &ds {
            for b in &ds {
                let ab = a.commutator(b).unwrap();
                let ba = b.commutator(a).unwrap();
                let neg = ba.linear_combination(&Rational::from_integer(-1), &ba, &Rational::zero()).unwrap();
                prop_assert!(ab.same_action(&neg));
                let direct = &a.derive(&b.derive(&p).unwrap()).unwrap() - &b.derive(&a.derive(&p).unwrap()).unwrap();
                prop_assert_eq!(ab.derive(&p).unwrap(), direct);
                for c in &ds {
                    let t1 = a.commutator(&b.commutator(c).unwrap()).unwrap().derive(&p).unwrap();
                    let t2 = b.commutator(&c.commutator(a).unwrap()).unwrap().derive(&p).unwrap();
                    let t3 = c.commutator(&a.commutator(b).unwrap()).unwrap().derive(&p).unwrap();
                    prop_assert!((&(&t1 + &t2) + &t3).is_zero());
                }
            }
        }
    }

    #[test]
    fn operations_are_bilinear(
        v in polys_in(contact_model(1).unwrap().context().clone(), 2, 4, 3),
        c in small_rational(),
    ) {
        for name in ["jacobi:1", "mayer:1"] {
            let o = op(name);
            let (a, a2, b) = (&v[0], &v[1], &v[2]);
            let mixed = a + &a2.scale(&c);
            let lhs = o.apply(&[mixed.clone(), b.clone()]).unwrap();
            let rhs = &o.apply(&[a.clone(), b.clone()]).unwrap() + &o.apply(&[a2.clone(), b.clone()]).unwrap().scale(&c);
            prop_assert_eq!(lhs, rhs);
            let lhs = o.apply(&[b.clone(), mixed]).unwrap();
            let rhs = &o.apply(&[b.clone(), a.clone()]).unwrap() + &o.apply(&[b.clone(), a2.clone()]).unwrap().scale(&c);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rc_brackets_have_parity_symmetry(a in homogeneous(rc_model_2().context().clone()),
                                        b in homogeneous(rc_model_2().context().clone()),
                                        n in 0usize..=3) {
        let o = catalog::rc(n).unwrap();
        let ab = o.apply(&[a.clone(), b.clone()]).unwrap();
        let ba = o.apply(&[b, a]).unwrap();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(ab, ba.scale(&Rational::from_integer(sign)));
    }
}

const BINARY: [&str; 6] = ["novikov", "novikov_comm", "dzh_star1", "dzh_order3", "twoder_skew", "mayer:1"];

fn binary_instance() -> impl Strategy<Value = (DerivedOperation, usize, Vec<Polynomial>)> {
    (prop::sample::select(BINARY.to_vec()), 2usize..=6).prop_flat_map(|(name, d)| {
        let o = op(name);
        let ctx = o.context().clone();
        (Just(o), Just(d), polys_in(ctx, 2, 3, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn dp_matches_naive((o, d, args) in binary_instance()) {
        let caps = Caps::default();
        prop_assert_eq!(
            standard_left_dp(&o, d, &args, &caps).unwrap(),
            standard_left_naive(&o, d, &args, &caps).unwrap()
        );
    }

    #[test]
    fn sides_are_dual((o, d, args) in binary_instance()) {
        let caps = Caps::default();
        let right = standard(&o, Side::Right, d, &args, &caps).unwrap();
        prop_assert_eq!(&right, &standard_right_naive(&o, d, &args, &caps).unwrap());
        prop_assert_eq!(&right, &standard_left_naive(&o.opposite().unwrap(), d, &args, &caps).unwrap());
    }

    #[test]
    fn repeated_argument_annihilates(
        name in prop::sample::select(BINARY.to_vec()),
        d in 3usize..=8,
        seed in any::<u64>(),
        picks in (0usize..100, 0usize..100),
    ) {
        let o = op(name);
        let s = Sampler::default().with_seed(seed).with_max_degree(2);
        let mut args = s.arguments(o.context(), d, 0);
        let i = picks.0 % (d - 1);
        let j = (i + 1 + picks.1 % (d - 2)) % (d - 1);
        prop_assume!(i != j);
        args[j] = args[i].clone();
        prop_assert!(standard_left_dp(&o, d, &args, &Caps::default()).unwrap().is_zero());
    }

    #[test]
    fn standard_left_is_multilinear(
        ((o, d, args), extra) in binary_instance().prop_flat_map(|inst| {
            let ctx = inst.0.context().clone();
            (Just(inst), poly_in(ctx, 2, 3))
        }),
        slot in 0usize..6,
        c in small_rational(),
    ) {
        let caps = Caps::default();
        let slot = slot % d;
        let base = standard_left_dp(&o, d, &args, &caps).unwrap();
        let mut swapped = args.clone();
        swapped[slot] = extra.clone();
        let other = standard_left_dp(&o, d, &swapped, &caps).unwrap();
        let mut mixed = args.clone();
        mixed[slot] = &args[slot] + &extra.scale(&c);
        prop_assert_eq!(standard_left_dp(&o, d, &mixed, &caps).unwrap(), &base + &other.scale(&c));
    }

    #[test]
    fn kary_at_two_is_standard_left((o, d, args) in binary_instance()) {
        let caps = Caps::default();
        prop_assert_eq!(
            kary_standard(&o, d - 1, &args, &caps).unwrap(),
            standard_left_dp(&o, d, &args, &caps).unwrap()
        );
    }

    #[test]
    fn ternary_block_dp_matches_naive(
        d in 1usize..=3,
        args in polys_in(AlgebraContext::ungraded(&["x", "y"]).unwrap(), 2, 3, 7),
    ) {
        let o = ternary();
        let args: Vec<Polynomial> = args[..2 * d + 1]
            .iter()
            .map(|a| Polynomial::from_terms(o.context(), a.terms().map(|(m, c)| (m.clone(), c.clone()))))
            .collect();
        let caps = Caps::default();
        prop_assert_eq!(
            kary_standard(&o, d, &args, &caps).unwrap(),
            kary_standard_naive(&o, d, &args, &caps).unwrap()
        );
    }

    #[test]
    fn exhaustive_proof_is_never_contradicted(seed in any::<u64>(), which in 0usize..3) {
        let (name, side, d) = [("novikov", Side::Right, 3), ("novikov", Side::Left, 4), ("novikov_anti", Side::Left, 4)][which];
        let o = op(name);
        let caps = Caps::default();
        let s = Sampler::default().with_seed(seed).with_trials(5);
        prop_assert_eq!(verify(&o, side, d, Mode::Exhaustive, &s, &caps).unwrap().verdict, Verdict::Proved);
        prop_assert_eq!(verify(&o, side, d, Mode::Random, &s, &caps).unwrap().verdict, Verdict::HoldsOnAllTested);
    }
}

fn ternary() -> DerivedOperation {
    load_problem(
        r#"{"variables": [{"name": "x"}, {"name": "y"}],
            "derivations": {"p": {"x": "1"}, "q": {"y": "1", "x": "y"}},
            "operation": {"arity": 3, "summands": [
                {"coeff": "1", "factors": [["p"], ["q"], []]},
                {"coeff": "-2", "factors": [[], ["p"], ["q", "p"]]},
                {"coeff": "1/3", "factors": [["q"], [], ["p"]]}]}}"#,
    )
    .unwrap()
}
