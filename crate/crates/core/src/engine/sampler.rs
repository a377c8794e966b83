use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::poly::{AlgebraContext, Monomial, Polynomial};
use crate::rational::Rational;

/// Deterministic source of random polynomial arguments.
///
/// Trial `t` draws from the ChaCha stream `t` keyed by `master_seed`, so any
/// trial can be replayed in isolation and trials can run in any order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sampler {
    pub master_seed: u64,
    /// Bound on the total degree of every term.
    pub max_degree: u32,
    /// Coefficients are uniform in `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: u32,
    pub trials: u64,
    /// Draw weight-homogeneous polynomials (one random weight per argument).
    pub homogeneous: bool,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler {
            master_seed: 0,
            max_degree: 3,
            coeff_bound: 5,
            trials: 50,
            homogeneous: false,
        }
    }
}

/// All monomials of total degree `<= max_degree`, in graded-lex order.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_degree, &mut vec![0; nvars], &mut out);
    out.sort();
    out
}

impl Sampler {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_max_degree(mut self, max_degree: u32) -> Self {
        self.max_degree = max_degree;
        self
    }

    pub fn homogeneous(mut self, yes: bool) -> Self {
        self.homogeneous = yes;
        self
    }

    pub fn rng_for_trial(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(trial);
        rng
    }

    fn coefficient(&self, rng: &mut ChaCha8Rng) -> Rational {
        let b = self.coeff_bound as i64;
        Rational::from_integer(rng.random_range(-b..=b))
    }

    /// A nonzero random polynomial.
    pub fn polynomial(&self, ctx: &Arc<AlgebraContext>, rng: &mut ChaCha8Rng) -> Polynomial {
        let monomials = monomials_up_to(ctx.len(), self.max_degree);
        let pool: Vec<Monomial> = if self.homogeneous {
            let mut by_weight: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
            for m in monomials {
                by_weight.entry(m.weight(ctx)).or_default().push(m);
            }
            let groups: Vec<Vec<Monomial>> = by_weight.into_values().collect();
            groups[rng.random_range(0..groups.len())].clone()
        } else {
            monomials
        };
        loop {
            let p = Polynomial::from_terms(
                ctx,
                pool.iter().map(|m| (m.clone(), self.coefficient(rng))),
            );
            if !p.is_zero() || self.coeff_bound == 0 {
                return p;
            }
        }
    }

    /// `count` arguments for trial `trial`.
    pub fn arguments(&self, ctx: &Arc<AlgebraContext>, count: usize, trial: u64) -> Vec<Polynomial> {
        let mut rng = self.rng_for_trial(trial);
        (0..count).map(|_| self.polynomial(ctx, &mut rng)).collect()
    }
}
