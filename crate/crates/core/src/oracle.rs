//! Independent reference engines for checking results.
//!
//! [`classical_gb`] is a plain Buchberger algorithm over `F_p` with full
//! reduction, and [`brute_ideal_contains`] searches linear combinations
//! exhaustively. Both are deliberately naive.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::context::MonomialOrder;
use crate::error::{Error, Result};
use crate::series::TateSeries;

/// Polynomial over `F_p` with exponent vectors as keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub prime: u64,
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    e.x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

impl FpPoly {
    pub fn zero(prime: u64, nvars: usize) -> FpPoly {
        FpPoly { prime, nvars, terms: BTreeMap::new() }
    }

    /// Builds a polynomial from signed integer coefficients.
    pub fn from_terms(prime: u64, nvars: usize, terms: &[(&[u32], i64)]) -> FpPoly {
        let mut f = FpPoly::zero(prime, nvars);
        for (e, c) in terms {
            let c = c.rem_euclid(prime as i64) as u64;
            f.add_term(e.to_vec(), c);
        }
        f
    }

    fn add_term(&mut self, e: Vec<u32>, c: u64) {
        let p = self.prime;
        let entry = self.terms.entry(e.clone()).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial and coefficient.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Vec<u32>, u64)> {
        self.terms.iter().max_by(|a, b| order.cmp_exponents(a.0, b.0)).map(|(e, &c)| (e, c))
    }

    fn sub_multiple(&mut self, c: u64, shift: &[u32], g: &FpPoly) {
        let p = self.prime;
        for (e, &gc) in &g.terms {
            let e: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            self.add_term(e, (p - (c * gc) % p) % p);
        }
    }

    fn monic(&self, order: MonomialOrder) -> FpPoly {
        let Some((_, c)) = self.leading(order) else {
            return self.clone();
        };
        let inv = inv_mod(c, self.prime);
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = (*v * inv) % self.prime;
        }
        out
    }

    pub fn format(&self, names: &[String], order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ts: Vec<(&Vec<u32>, &u64)> = self.terms.iter().collect();
        ts.sort_by(|a, b| order.cmp_exponents(b.0, a.0));
        let parts: Vec<String> = ts
            .iter()
            .map(|(e, c)| {
                let m: Vec<String> = e
                    .iter()
                    .zip(names)
                    .filter(|(&k, _)| k > 0)
                    .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
                    .collect();
                match (m.is_empty(), **c) {
                    (true, c) => c.to_string(),
                    (false, 1) => m.join("*"),
                    (false, c) => format!("{c}*{}", m.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&names, MonomialOrder::Grevlex))
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Full reduction of `f` modulo `g` (every term, not only the leading one).
pub fn classical_reduce(f: &FpPoly, g: &[FpPoly], order: MonomialOrder) -> FpPoly {
    let mut p = f.clone();
    let mut r = FpPoly::zero(f.prime, f.nvars);
    while let Some((e, c)) = p.leading(order).map(|(e, c)| (e.clone(), c)) {
        let hit = g.iter().find_map(|h| {
            let (he, hc) = h.leading(order)?;
            divides(he, &e).then(|| (h, he.clone(), hc))
        });
        match hit {
            Some((h, he, hc)) => {
                let shift: Vec<u32> = e.iter().zip(&he).map(|(a, b)| a - b).collect();
                let m = (c * inv_mod(hc, f.prime)) % f.prime;
                p.sub_multiple(m, &shift, h);
            }
            None => {
                p.terms.remove(&e);
                r.add_term(e, c);
            }
        }
    }
    r
}

pub fn classical_s_poly(f: &FpPoly, g: &FpPoly, order: MonomialOrder) -> FpPoly {
    let (fe, fc) = f.leading(order).expect("nonzero");
    let (ge, gc) = g.leading(order).expect("nonzero");
    let l: Vec<u32> = fe.iter().zip(ge).map(|(a, b)| *a.max(b)).collect();
    let sf: Vec<u32> = l.iter().zip(fe).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(ge).map(|(a, b)| a - b).collect();
    let p = f.prime;
    let mut s = FpPoly::zero(p, f.nvars);
    s.sub_multiple((p - inv_mod(fc, p)) % p, &sf, f);
    s.sub_multiple(inv_mod(gc, p), &sg, g);
    s
}

/// Every S-polynomial of `g` reduces to zero.
pub fn classical_criterion(g: &[FpPoly], order: MonomialOrder) -> bool {
    let g: Vec<FpPoly> = g.iter().filter(|f| !f.is_zero()).cloned().collect();
    (0..g.len()).all(|i| {
        (i + 1..g.len()).all(|j| classical_reduce(&classical_s_poly(&g[i], &g[j], order), &g, order).is_zero())
    })
}

/// Reduced Gröbner basis over `F_p`, sorted by descending leading monomial.
pub fn classical_gb(polys: &[FpPoly], order: MonomialOrder) -> Vec<FpPoly> {
    let mut g: Vec<FpPoly> = polys.iter().filter(|f| !f.is_zero()).map(|f| f.monic(order)).collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let r = classical_reduce(&classical_s_poly(&g[i], &g[j], order), &g, order);
        if !r.is_zero() {
            let k = g.len();
            g.push(r.monic(order));
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimalize, then interreduce
    let lm = |f: &FpPoly| f.leading(order).expect("nonzero").0.clone();
    let mut keep: Vec<FpPoly> = Vec::new();
    for (i, f) in g.iter().enumerate() {
        let fe = lm(f);
        let redundant = g.iter().enumerate().any(|(j, h)| {
            let he = lm(h);
            j != i && divides(&he, &fe) && (he != fe || j < i)
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    let mut out: Vec<FpPoly> = (0..keep.len())
        .map(|i| {
            let others: Vec<FpPoly> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f.clone()).collect();
            let (e, c) = keep[i].leading(order).map(|(e, c)| (e.clone(), c)).expect("nonzero");
            let mut tail = keep[i].clone();
            tail.terms.remove(&e);
            let mut r = classical_reduce(&tail, &others, order);
            r.add_term(e, c);
            r.monic(order)
        })
        .collect();
    out.sort_by(|a, b| order.cmp_exponents(lm(b).as_slice(), lm(a).as_slice()));
    out
}

/// Same ideal: each reduced basis reduces the other to zero.
pub fn same_ideal(a: &[FpPoly], b: &[FpPoly], order: MonomialOrder) -> bool {
    let ga = classical_gb(a, order);
    let gb = classical_gb(b, order);
    a.iter().all(|f| classical_reduce(f, &gb, order).is_zero()) && b.iter().all(|f| classical_reduce(f, &ga, order).is_zero())
}

/// Outcome of an exhaustive membership search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Contained,
    /// No combination found within the search bound.
    Unknown,
}

/// Bounds for [`brute_ideal_contains`].
#[derive(Clone, Copy, Debug)]
pub struct SearchBound {
    /// Maximal total degree of the multiplier monomials.
    pub degree: u32,
    /// Maximal number of combinations tried.
    pub budget: u64,
}

/// Dense vector of residues mod `p^N` over a fixed monomial list.
fn dense(f: &TateSeries, index: &BTreeMap<Vec<u32>, usize>, len: usize, modulus: &BigInt) -> Result<Option<Vec<BigInt>>> {
    let mut v = vec![BigInt::zero(); len];
    for t in f.terms() {
        let r = t.coeff.residue().ok_or_else(|| Error::NotNormalized("non-integral coefficient".into()))?;
        match index.get(&t.exp.0) {
            Some(&k) => v[k] = BigInt::from(r).mod_floor(modulus),
            None => return Ok(None),
        }
    }
    Ok(Some(v))
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for mut rest in monomials_up_to(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Searches integer multipliers `qᵢ` (monomials of degree ≤ `bound.degree`,
/// coefficients in `[0, p^N)`) with `Σ qᵢ·gensᵢ ≡ f mod p^N`, where `N` is the
/// smallest cap involved. Integral unit-polydisk inputs over `Q_p` only.
pub fn brute_ideal_contains(f: &TateSeries, gens: &[TateSeries], bound: SearchBound) -> Result<Containment> {
    let ctx = f.ctx();
    if !ctx.has_zero_radii() || ctx.ramification() != 1 {
        return Err(Error::NonZeroRadii);
    }
    if f.is_zero() {
        return Ok(Containment::Contained);
    }
    let cap = gens.iter().map(|g| g.cap()).chain([f.cap()]).min().unwrap_or(f.cap());
    if cap <= 0 {
        return Ok(Containment::Contained);
    }
    let modulus = BigInt::from(ctx.prime()).pow(cap as u32);
    let mults = monomials_up_to(ctx.nvars(), bound.degree);
    // products m·g for every multiplier and generator
    let mut products: Vec<TateSeries> = Vec::new();
    for g in gens {
        for m in &mults {
            let t = crate::term::Term::monomial(ctx, 0, crate::term::Exponent(m.clone()));
            products.push(g.term_mul(&t)?.truncate(cap));
        }
    }
    let mut monos: Vec<Vec<u32>> = products.iter().chain([f]).flat_map(|s| s.terms().iter().map(|t| t.exp.0.clone())).collect();
    monos.sort();
    monos.dedup();
    let index: BTreeMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let len = monos.len();
    let target = dense(&f.truncate(cap), &index, len, &modulus)?.expect("indexed");
    let vecs: Vec<Vec<BigInt>> = products
        .iter()
        .map(|s| dense(s, &index, len, &modulus).map(|v| v.expect("indexed")))
        .collect::<Result<_>>()?;
    // odometer over coefficient choices; `acc` tracks the running combination
    let base = modulus.to_u64().unwrap_or(u64::MAX);
    let mut digits = vec![0u64; vecs.len()];
    let mut acc = vec![BigInt::zero(); len];
    let mut tried = 0u64;
    loop {
        if acc == target {
            return Ok(Containment::Contained);
        }
        tried += 1;
        if tried >= bound.budget {
            return Ok(Containment::Unknown);
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(Containment::Unknown);
            }
            digits[k] += 1;
            for (a, b) in acc.iter_mut().zip(&vecs[k]) {
                *a = (&*a + b).mod_floor(&modulus);
            }
            if digits[k] < base {
                break;
            }
            // wrapped around: the added multiples sum to 0 mod p^N
            digits[k] = 0;
            k += 1;
        }
    }
}
