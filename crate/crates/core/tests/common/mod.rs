//! Reference arithmetic for cross-checking the library: a dense-map
//! polynomial over `BigRational`, derivations given by generator images,
//! and the standard polynomials written as literal permutation sums.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use derivid::{AlgebraContext, Monomial, Polynomial, Rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Dense {
    pub fn zero(nvars: usize) -> Self {
        Dense { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Dense::zero(nvars);
        p.push(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Dense::zero(nvars);
        p.push(e, BigRational::one());
        p
    }

    fn push(&mut self, e: Vec<u32>, c: BigRational) {
        let slot = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.push(e.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, k: &BigRational) -> Dense {
        let mut r = Dense::zero(self.nvars);
        for (e, c) in &self.terms {
            r.push(e.clone(), c * k);
        }
        r
    }

    pub fn sub(&self, o: &Dense) -> Dense {
        self.add(&o.scale(&q(-1)))
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        let mut r = Dense::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.push(e, c1 * c2);
            }
        }
        r
    }

    /// Apply the derivation with `images[i]` = image of variable `i`.
    pub fn derive(&self, images: &[Dense]) -> Dense {
        let mut r = Dense::zero(self.nvars);
        for (e, c) in &self.terms {
            for (i, img) in images.iter().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                let mut lowered = e.clone();
                lowered[i] -= 1;
                let mut mono = Dense::zero(self.nvars);
                mono.push(lowered, c * q(e[i] as i64));
                r = r.add(&mono.mul(img));
            }
        }
        r
    }

    pub fn from_poly(p: &Polynomial) -> Dense {
        let n = p.context().len();
        let mut r = Dense::zero(n);
        for (m, c) in p.terms() {
            r.push(m.exponents().to_vec(), c.to_big());
        }
        r
    }

    pub fn to_poly(&self, ctx: &Arc<AlgebraContext>) -> Polynomial {
        Polynomial::from_terms(
            ctx,
            self.terms
                .iter()
                .map(|(e, c)| (Monomial::from_exponents(e), Rational::from_big(c.clone()))),
        )
    }
}

/// A derivation as a list of generator images.
pub type Der = Vec<Dense>;

pub fn partial(nvars: usize, i: usize) -> Der {
    (0..nvars)
        .map(|j| if i == j { Dense::constant(nvars, q(1)) } else { Dense::zero(nvars) })
        .collect()
}

pub fn iterate(d: &Der, p: &Dense, k: usize) -> Dense {
    (0..k).fold(p.clone(), |acc, _| acc.derive(d))
}

/// All permutations of `0..n` with signs from the inversion count.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|p| {
            let inv = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, if inv % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// `Σ_σ sgn(σ) {a_σ1, {a_σ2, ... {a_σ(d-1), a_d}}}`.
pub fn standard_left<F: Fn(&Dense, &Dense) -> Dense>(br: F, args: &[Dense]) -> Dense {
    let d = args.len();
    let mut total = Dense::zero(args[0].nvars);
    for (perm, sign) in permutations(d - 1) {
        let mut v = args[d - 1].clone();
        for &i in perm.iter().rev() {
            v = br(&args[i], &v);
        }
        total = total.add(&v.scale(&q(sign)));
    }
    total
}

/// `Σ_σ sgn(σ) {{...{a_d, a_σ(d-1)}, ...}, a_σ1}`.
pub fn standard_right<F: Fn(&Dense, &Dense) -> Dense>(br: F, args: &[Dense]) -> Dense {
    let d = args.len();
    let mut total = Dense::zero(args[0].nvars);
    for (perm, sign) in permutations(d - 1) {
        let mut v = args[d - 1].clone();
        for &i in perm.iter().rev() {
            v = br(&v, &args[i]);
        }
        total = total.add(&v.scale(&q(sign)));
    }
    total
}

/// Literal k-ary standard sum: `(k-1)d` permuted arguments, `a_last` innermost.
pub fn kary_standard<F: Fn(&[Dense]) -> Dense>(op: F, k: usize, args: &[Dense]) -> Dense {
    let n = args.len() - 1;
    let d = n / (k - 1);
    let mut total = Dense::zero(args[0].nvars);
    for (perm, sign) in permutations(n) {
        let mut v = args[n].clone();
        for level in (0..d).rev() {
            let mut slot: Vec<Dense> = perm[level * (k - 1)..(level + 1) * (k - 1)]
                .iter()
                .map(|&i| args[i].clone())
                .collect();
            slot.push(v);
            v = op(&slot);
        }
        total = total.add(&v.scale(&q(sign)));
    }
    total
}

/// Small deterministic pseudo-random polynomials (an LCG, independent of the library sampler).
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn poly(&mut self, nvars: usize, max_degree: u32) -> Dense {
        let mut p = Dense::zero(nvars);
        for _ in 0..4 {
            let mut e = vec![0u32; nvars];
            let mut budget = (self.next() % (max_degree as u64 + 1)) as u32;
            for slot in e.iter_mut() {
                let take = (self.next() % (budget as u64 + 1)) as u32;
                *slot = take;
                budget -= take;
            }
            let c = (self.next() % 7) as i64 - 3;
            p.push(e, q(c));
        }
        if p.is_zero() {
            p = Dense::constant(nvars, q(1));
        }
        p
    }
}
