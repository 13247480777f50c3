#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tategb::term::{divides, same_class, Term};
use tategb::{
    divide, parse_series, AlgebraContext, Coefficient, Context, Exponent, MonomialOrder, RingMode, TateSeries,
};

pub const DEMO_GENERATORS: [&str; 2] = ["2*x^2 + 5*x*y^2", "4 + 2*x^2*y"];

pub fn demo_ctx(prec: i64) -> Context {
    AlgebraContext::unit_polydisk(2, &["x", "y"], MonomialOrder::Grevlex, prec).unwrap()
}

pub fn demo_generators(ctx: &Context) -> Vec<TateSeries> {
    DEMO_GENERATORS.iter().map(|s| parse_series(s, ctx).unwrap()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const NAMES: [&str; 3] = ["x", "y", "z"];

/// A random polynomial with at most `max_terms` terms of total degree at most
/// `max_deg` and integer coefficients in `[-bound, bound]`.
pub fn random_poly(rng: &mut ChaCha8Rng, ctx: &Context, max_terms: usize, max_deg: u32, bound: i64, cap: i64) -> TateSeries {
    let n = ctx.nvars();
    let count = rng.gen_range(1..=max_terms);
    let mut terms = Vec::new();
    for _ in 0..count {
        let mut exp = vec![0u32; n];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            exp[rng.gen_range(0..n)] += 1;
        }
        let c = loop {
            let c = rng.gen_range(-bound..=bound);
            if c != 0 {
                break c;
            }
        };
        terms.push((Exponent(exp), Coefficient::from_i64(ctx.prime(), c, cap)));
    }
    TateSeries::from_terms(ctx, terms, cap).unwrap()
}

/// A random ideal of the acceptance corpus: p in {2,3}, 2 or 3 variables,
/// at most 4 generators with at most 5 terms each.
#[derive(Debug, Clone)]
pub struct RandomIdeal {
    pub seed: u64,
    pub ctx: Context,
    pub gens: Vec<TateSeries>,
}

pub fn random_ideal(seed: u64, cap: i64) -> RandomIdeal {
    let mut r = rng(seed);
    let p = if r.gen_bool(0.5) { 2 } else { 3 };
    let n = r.gen_range(2..=3);
    random_ideal_in(seed, p, n, cap, &mut r)
}

pub fn random_ideal_in(seed: u64, p: u64, n: usize, cap: i64, r: &mut ChaCha8Rng) -> RandomIdeal {
    let ctx = AlgebraContext::unit_polydisk(p, &NAMES[..n], MonomialOrder::Grevlex, cap).unwrap();
    let ngens = r.gen_range(1..=4);
    let bound = (p * p * p) as i64;
    let gens = loop {
        let gens: Vec<TateSeries> = (0..ngens).map(|_| random_poly(r, &ctx, 5, 3, bound, cap)).collect();
        if gens.iter().all(|g| !g.is_zero()) {
            break gens;
        }
    };
    RandomIdeal { seed, ctx, gens }
}

/// Leading terms of a basis, as (exponent, valuation) pairs, sorted.
pub fn lt_classes(g: &[TateSeries], mode: RingMode) -> Vec<(Vec<u32>, Option<i64>)> {
    let mut out: Vec<_> = g
        .iter()
        .map(|s| {
            let t = s.leading_term().unwrap();
            let v = match mode {
                RingMode::Rational => None,
                RingMode::Integral => Some(t.val(s.ctx())),
            };
            (t.exp.0.clone(), v)
        })
        .collect();
    out.sort();
    out
}

pub fn same_lt_classes(a: &[TateSeries], b: &[TateSeries], mode: RingMode) -> bool {
    a.len() == b.len()
        && a.iter().all(|s| {
            let t = s.leading_term().unwrap();
            b.iter().any(|u| same_class(t, u.leading_term().unwrap(), mode, s.ctx()))
        })
}

/// Checks the division identity, remainder irreducibility and, in integral
/// mode, integrality of the quotients. Returns a description of the failure.
pub fn division_contract(f: &TateSeries, hs: &[TateSeries], mode: RingMode) -> Result<(), String> {
    let ctx = f.ctx();
    let d = divide(f, hs, mode).map_err(|e| e.to_string())?;
    let mut acc = d.remainder.clone();
    for (q, h) in d.quotients.iter().zip(hs) {
        acc = acc.add(&q.mul(h).unwrap()).unwrap();
        if mode == RingMode::Integral && q.terms().iter().any(|t| t.val(ctx) < 0) {
            return Err(format!("non-integral quotient {q}"));
        }
    }
    let diff = f.sub(&acc).unwrap();
    if !diff.is_zero() {
        return Err(format!("identity fails: f = {f}, sum = {acc}"));
    }
    let lts: Vec<&Term> = hs.iter().map(|h| h.leading_term().unwrap()).collect();
    for t in d.remainder.terms() {
        if lts.iter().any(|l| divides(l, t, mode, ctx)) {
            return Err(format!("reducible remainder term {}", t.format(ctx)));
        }
    }
    Ok(())
}
