//! S-polynomials, Buchberger's algorithm and minimal Gröbner bases.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::context::Context;
use crate::division::reduce;
use crate::error::{Error, Result};
use crate::oracle::FpPoly;
use crate::series::TateSeries;
use crate::term::{divides, gcd_term, same_class, skel_geq, term_cmp, RingMode, Term};

/// A pending critical pair `(i, j)`, `i < j`, keyed by the total degree of
/// the lcm of the two leading monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SPair {
    pub i: usize,
    pub j: usize,
    pub lcm_deg: u64,
}

impl SPair {
    pub fn new(i: usize, j: usize, basis: &[TateSeries]) -> SPair {
        let (i, j) = (i.min(j), i.max(j));
        let a = &basis[i].terms()[0].exp;
        let b = &basis[j].terms()[0].exp;
        SPair { i, j, lcm_deg: a.sup(b).degree() }
    }
}

impl Ord for SPair {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.lcm_deg, self.i, self.j).cmp(&(other.lcm_deg, other.i, other.j))
    }
}

impl PartialOrd for SPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Pending pairs, popped by increasing `(lcm_deg, i, j)`.
#[derive(Default)]
pub(crate) struct PairQueue(BinaryHeap<Reverse<SPair>>);

impl PairQueue {
    /// Adds the pairs between the new element `k` and all earlier ones.
    pub(crate) fn add_element(&mut self, k: usize, basis: &[TateSeries]) {
        for i in 0..k {
            self.0.push(Reverse(SPair::new(i, k, basis)));
        }
    }

    pub(crate) fn pop(&mut self) -> Option<SPair> {
        self.0.pop().map(|Reverse(p)| p)
    }

    /// All pairs of the smallest pending lcm degree.
    pub(crate) fn pop_lowest_degree(&mut self) -> Vec<SPair> {
        let Some(first) = self.pop() else {
            return Vec::new();
        };
        let mut out = vec![first];
        while let Some(Reverse(p)) = self.0.peek() {
            if p.lcm_deg != first.lcm_deg {
                break;
            }
            out.push(self.pop().expect("peeked"));
        }
        out
    }
}

/// A Gröbner basis sorted by descending leading term.
///
/// Rational-mode bases come from a computation over the fractional ideal at
/// finite precision and are only `likely` bases of the ideal over `K`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub elements: Vec<TateSeries>,
    pub mode: RingMode,
    pub likely: bool,
}

impl GroebnerBasis {
    pub(crate) fn new(mut elements: Vec<TateSeries>, mode: RingMode) -> GroebnerBasis {
        sort_by_leading_term(&mut elements);
        GroebnerBasis { elements, mode, likely: mode == RingMode::Rational }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<&Term> {
        self.elements.iter().map(|g| &g.terms()[0]).collect()
    }
}

pub(crate) fn sort_by_leading_term(elements: &mut [TateSeries]) {
    if let Some(ctx) = elements.first().map(|g| g.ctx().clone()) {
        elements.sort_by(|a, b| term_cmp(&b.terms()[0], &a.terms()[0], &ctx));
    }
}

fn require_zero_radii(ctx: &Context) -> Result<()> {
    if ctx.has_zero_radii() {
        Ok(())
    } else {
        Err(Error::NonZeroRadii)
    }
}

/// `S(f, g) = (LT(g)/d)·f − (LT(f)/d)·g` with `d = gcd(LT f, LT g)`.
pub fn s_poly(f: &TateSeries, g: &TateSeries) -> Result<TateSeries> {
    let ctx = f.ctx();
    require_zero_radii(ctx)?;
    let lf = f.leading_term()?;
    let lg = g.leading_term()?;
    let d = gcd_term(lf, lg, ctx)?;
    let cf = lg.quotient(&d, RingMode::Integral, ctx)?;
    let cg = lf.quotient(&d, RingMode::Integral, ctx)?;
    f.term_mul(&cf)?.sub(&g.term_mul(&cg)?)
}

/// Canonical form of a basis element: the unit part of the leading
/// coefficient becomes 1, and in rational mode the Gauss valuation becomes 0.
pub fn normalize(f: &TateSeries, mode: RingMode) -> Result<TateSeries> {
    let f = match mode {
        RingMode::Integral => f.clone(),
        RingMode::Rational => {
            let v = f.leading_term()?.coeff.valuation().bound();
            f.shift(-v)
        }
    };
    f.unit_normalized()
}

pub(crate) fn normalized_generators(gens: &[TateSeries], mode: RingMode) -> Result<Vec<TateSeries>> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    require_zero_radii(first.ctx())?;
    for g in gens {
        if g.ctx() != first.ctx() {
            return Err(Error::ContextMismatch);
        }
    }
    let out: Vec<TateSeries> = gens.iter().filter(|g| !g.is_zero()).map(|g| normalize(g, mode)).collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::AllZero);
    }
    Ok(out)
}

/// Buchberger's algorithm, followed by extraction of a minimal basis.
pub fn buchberger(gens: &[TateSeries], mode: RingMode) -> Result<GroebnerBasis> {
    let mut basis = normalized_generators(gens, mode)?;
    let mut pairs = PairQueue::default();
    for k in 1..basis.len() {
        pairs.add_element(k, &basis);
    }
    while let Some(pair) = pairs.pop() {
        let s = s_poly(&basis[pair.i], &basis[pair.j])?;
        let r = reduce(&s, &basis, mode)?;
        if !r.is_zero() {
            basis.push(normalize(&r, mode)?);
            pairs.add_element(basis.len() - 1, &basis);
        }
    }
    Ok(GroebnerBasis::new(minimal_gb(&basis, mode), mode))
}

/// Every S-polynomial of `g` reduces to zero modulo `g` at precision.
pub fn buchberger_criterion(g: &[TateSeries], mode: RingMode) -> Result<bool> {
    let g: Vec<TateSeries> = g.iter().filter(|s| !s.is_zero()).cloned().collect();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !reduce(&s_poly(&g[i], &g[j])?, &g, mode)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The sub-family whose leading terms form the skeleton of all leading terms:
/// elements whose leading term is properly divisible by another one are
/// dropped, and of several equal-class leading terms the first is kept.
pub fn minimal_gb(g: &[TateSeries], mode: RingMode) -> Vec<TateSeries> {
    let g: Vec<&TateSeries> = g.iter().filter(|s| !s.is_zero()).collect();
    let Some(ctx) = g.first().map(|s| s.ctx().clone()) else {
        return Vec::new();
    };
    let lts: Vec<&Term> = g.iter().map(|s| &s.terms()[0]).collect();
    (0..g.len())
        .filter(|&i| {
            !(0..g.len()).any(|j| {
                j != i && divides(lts[j], lts[i], mode, &ctx) && (!same_class(lts[j], lts[i], mode, &ctx) || j < i)
            })
        })
        .map(|i| g[i].clone())
        .collect()
}

/// Scales each element to Gauss valuation 0: from a Gröbner basis of `J` this
/// gives one of `J ∩ K°{X;r}` for integer log-radii.
pub fn integral_from_rational(g: &[TateSeries]) -> Result<Vec<TateSeries>> {
    g.iter()
        .map(|s| {
            if !s.ctx().has_integer_radii() {
                return Err(Error::NonIntegerRadii);
            }
            let v = s.gauss_val().exact().ok_or(Error::ZeroAtPrecision)?;
            Ok(s.shift(-v))
        })
        .collect()
}

/// Generators of `J ∩ K°{X;r}` in one variable: each generator times every
/// minimal term of valuation at least minus its own Gauss valuation.
pub fn saturate_integral(gens: &[TateSeries]) -> Result<Vec<TateSeries>> {
    let mut out = Vec::new();
    for g in gens {
        if g.ctx().nvars() != 1 {
            return Err(Error::UnsupportedDimension);
        }
        let v = g.gauss_val().exact().ok_or(Error::ZeroAtPrecision)?;
        for t in skel_geq(-v, g.ctx())? {
            out.push(g.term_mul(&t)?);
        }
    }
    Ok(out)
}

/// Reduction modulo `p` of a basis of Gauss valuation 0.
pub fn residue_gb(g: &[TateSeries]) -> Result<Vec<FpPoly>> {
    g.iter()
        .map(|s| {
            let ctx = s.ctx();
            require_zero_radii(ctx)?;
            if ctx.ramification() != 1 || s.gauss_val().exact() != Some(0) {
                return Err(Error::NotNormalized("residue map needs Gauss valuation 0".into()));
            }
            let mut f = FpPoly::zero(ctx.prime(), ctx.nvars());
            for t in s.terms() {
                if let Some(c) = t.coeff.reduce_mod_p().filter(|&c| c != 0) {
                    f.terms.insert(t.exp.0.clone(), c);
                }
            }
            Ok(f)
        })
        .collect()
}
