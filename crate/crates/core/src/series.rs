//! Tate series known at finite precision.
//!
//! A [`TateSeries`] stores finitely many terms together with an absolute cap
//! `N` (in units of `1/D`): it stands for `f + O(π^N)`, every term of Gauss
//! valuation `≥ N` being dropped. Terms are kept sorted in descending term
//! order so that the leading term is always the first one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::coefficient::{Coefficient, Valuation};
use crate::context::{AlgebraContext, Context};
use crate::error::{Error, Result};
use crate::term::{term_cmp, Exponent, Term};

#[derive(Clone, Debug)]
pub struct TateSeries {
    ctx: Context,
    terms: Vec<Term>,
    cap: i64,
}

impl TateSeries {
    /// Zero series `O(π^cap)`.
    pub fn zero(ctx: &Context, cap: i64) -> TateSeries {
        TateSeries { ctx: ctx.clone(), terms: Vec::new(), cap }
    }

    /// Builds a series from (exponent, coefficient) pairs, summing repeated
    /// exponents and reducing every coefficient to the series cap.
    pub fn from_terms<I>(ctx: &Context, terms: I, cap: i64) -> Result<TateSeries>
    where
        I: IntoIterator<Item = (Exponent, Coefficient)>,
    {
        let mut map: BTreeMap<Exponent, Coefficient> = BTreeMap::new();
        for (e, c) in terms {
            if e.0.len() != ctx.nvars() {
                return Err(Error::Parse(format!("exponent {e} has wrong length")));
            }
            if c.prime() != ctx.prime() {
                return Err(Error::PrimeMismatch(ctx.prime(), c.prime()));
            }
            if c.ramification() != ctx.ramification() {
                return Err(Error::RamificationMismatch);
            }
            match map.get_mut(&e) {
                Some(acc) => *acc = acc.add(&c)?,
                None => {
                    map.insert(e, c);
                }
            }
        }
        Ok(Self::build(ctx, map, cap))
    }

    /// Integer coefficients at the context's default precision.
    pub fn from_ints(ctx: &Context, terms: &[(&[u32], i64)]) -> Result<TateSeries> {
        let cap = ctx.default_cap();
        let terms = terms.iter().map(|(e, a)| {
            let exp = Exponent(e.to_vec());
            let m = ctx.coefficient_cap(cap, e);
            (exp, Coefficient::from_parts(ctx.prime(), ctx.ramification(), 0, BigInt::from(*a), Some(m)))
        });
        Self::from_terms(ctx, terms, cap)
    }

    pub fn constant(ctx: &Context, c: Coefficient, cap: i64) -> Result<TateSeries> {
        Self::from_terms(ctx, [(Exponent::zero(ctx.nvars()), c)], cap)
    }

    /// The constant `1 + O(π^cap)`.
    pub fn one(ctx: &Context, cap: i64) -> TateSeries {
        let c = Coefficient::uniformizer_power(ctx.prime(), ctx.ramification(), 0);
        Self::build(ctx, BTreeMap::from([(Exponent::zero(ctx.nvars()), c)]), cap)
    }

    pub fn from_term(ctx: &Context, t: Term, cap: i64) -> TateSeries {
        Self::build(ctx, BTreeMap::from([(t.exp, t.coeff)]), cap)
    }

    fn build(ctx: &Context, map: BTreeMap<Exponent, Coefficient>, cap: i64) -> TateSeries {
        let mut terms: Vec<Term> = Vec::with_capacity(map.len());
        for (exp, c) in map {
            let m = ctx.coefficient_cap(cap, &exp.0);
            let c = c.truncate(m);
            if c.is_zero() {
                continue;
            }
            let t = Term { coeff: c, exp };
            if t.val(ctx) < cap {
                terms.push(t);
            }
        }
        terms.sort_by(|a, b| term_cmp(b, a, ctx));
        TateSeries { ctx: ctx.clone(), terms, cap }
    }

    fn to_map(&self) -> BTreeMap<Exponent, Coefficient> {
        self.terms.iter().map(|t| (t.exp.clone(), t.coeff.clone())).collect()
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    /// Absolute precision in units of `1/D`.
    pub fn cap(&self) -> i64 {
        self.cap
    }

    /// Terms in descending term order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Zero at the working precision.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &Exponent) -> Option<&Coefficient> {
        self.terms.iter().find(|t| &t.exp == exp).map(|t| &t.coeff)
    }

    /// Gauss valuation, in units of `1/D`.
    pub fn gauss_val(&self) -> Valuation {
        match self.terms.first() {
            Some(t) => Valuation::Exact(t.val(&self.ctx)),
            None => Valuation::AtLeast(self.cap),
        }
    }

    pub fn leading_term(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroAtPrecision)
    }

    fn check(&self, other: &TateSeries) -> Result<()> {
        if std::sync::Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn combine(&self, other: &TateSeries, negate: bool) -> Result<TateSeries> {
        self.check(other)?;
        let mut map = self.to_map();
        for t in &other.terms {
            let c = if negate { t.coeff.neg() } else { t.coeff.clone() };
            match map.get_mut(&t.exp) {
                Some(acc) => *acc = acc.add(&c)?,
                None => {
                    map.insert(t.exp.clone(), c);
                }
            }
        }
        Ok(Self::build(&self.ctx, map, self.cap.min(other.cap)))
    }

    pub fn add(&self, other: &TateSeries) -> Result<TateSeries> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &TateSeries) -> Result<TateSeries> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> TateSeries {
        TateSeries {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|t| Term { coeff: t.coeff.neg(), exp: t.exp.clone() }).collect(),
            cap: self.cap,
        }
    }

    /// Gauss valuation, the cap standing in for a zero series.
    fn val_bound(&self) -> i64 {
        self.gauss_val().bound()
    }

    /// Cap contributed by a term's own coefficient precision.
    fn term_cap(&self, t: &Term) -> Option<i64> {
        t.coeff
            .cap()
            .map(|c| c * self.ctx.valuation_scale() - self.ctx.radius_shift(&t.exp.0))
    }

    /// Product by a single term; the cap moves by the term's valuation.
    pub fn term_mul(&self, t: &Term) -> Result<TateSeries> {
        let mut cap = self.cap + t.val(&self.ctx);
        if let Some(tc) = self.term_cap(t) {
            cap = cap.min(tc + self.val_bound());
        }
        let mut map = BTreeMap::new();
        for s in &self.terms {
            let p = s.mul(t)?;
            map.insert(p.exp, p.coeff);
        }
        Ok(Self::build(&self.ctx, map, cap))
    }

    /// Product by a scalar.
    pub fn scale(&self, c: &Coefficient) -> Result<TateSeries> {
        self.term_mul(&Term { coeff: c.clone(), exp: Exponent::zero(self.ctx.nvars()) })
    }

    /// Product by the exact uniformizer power `η^k` (`p^k` over `Q_p`).
    pub fn shift(&self, k: i64) -> TateSeries {
        let s = self.ctx.valuation_scale();
        TateSeries {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|t| Term { coeff: t.coeff.shift(k), exp: t.exp.clone() }).collect(),
            cap: self.cap + k * s,
        }
    }

    pub fn mul(&self, other: &TateSeries) -> Result<TateSeries> {
        self.check(other)?;
        let cap = (self.cap + other.val_bound()).min(other.cap + self.val_bound());
        let mut map: BTreeMap<Exponent, Coefficient> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let p = a.mul(b)?;
                match map.get_mut(&p.exp) {
                    Some(acc) => *acc = acc.add(&p.coeff)?,
                    None => {
                        map.insert(p.exp, p.coeff);
                    }
                }
            }
        }
        Ok(Self::build(&self.ctx, map, cap))
    }

    /// `self − t·h`.
    pub fn sub_term_multiple(&self, t: &Term, h: &TateSeries) -> Result<TateSeries> {
        self.sub(&h.term_mul(t)?)
    }

    /// The same series with its cap lowered to `cap`.
    pub fn truncate(&self, cap: i64) -> TateSeries {
        if cap >= self.cap {
            return self.clone();
        }
        Self::build(&self.ctx, self.to_map(), cap)
    }

    /// Drops the leading term.
    pub fn without_leading_term(&self) -> TateSeries {
        TateSeries { ctx: self.ctx.clone(), terms: self.terms[1.min(self.terms.len())..].to_vec(), cap: self.cap }
    }

    /// Removes the term at `exp`, if any.
    pub(crate) fn without_exponent(mut self, exp: &Exponent) -> TateSeries {
        self.terms.retain(|t| &t.exp != exp);
        self
    }

    /// Equal at the weaker of the two caps.
    pub fn eq_at_precision(&self, other: &TateSeries) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Multiplies by the inverse of the leading coefficient's unit part, so
    /// that the leading coefficient becomes a pure power of the uniformizer.
    pub fn unit_normalized(&self) -> Result<TateSeries> {
        let lt = self.leading_term()?;
        let v = lt.coeff.val_or_cap();
        let unit = lt.coeff.shift(-v).inv_unit()?;
        let s = self.scale(&unit)?;
        let exp = lt.exp.clone();
        // the leading coefficient is η^v up to precision; store it exactly
        let mut terms = s.terms;
        if let Some(t) = terms.iter_mut().find(|t| t.exp == exp) {
            let m = self.ctx.coefficient_cap(s.cap, &exp.0);
            t.coeff = Coefficient::uniformizer_power(self.ctx.prime(), self.ctx.ramification(), v).truncate(m);
        }
        Ok(TateSeries { ctx: s.ctx, terms, cap: s.cap })
    }

    /// Inverse of a series whose constant term strictly dominates every other
    /// term, by Newton iteration `g ← g + g(1 − fg)`.
    pub fn inverse_of_unit(&self) -> Result<TateSeries> {
        let lt = self.leading_term().map_err(|_| Error::NotInvertible)?;
        if !lt.exp.is_constant() {
            return Err(Error::NotInvertible);
        }
        let v0 = lt.val(&self.ctx);
        if self.terms.iter().skip(1).any(|t| t.val(&self.ctx) <= v0) {
            return Err(Error::NotInvertible);
        }
        let a0_inv = lt.coeff.inverse()?;
        let f1 = self.scale(&a0_inv)?;
        let one = TateSeries::one(&self.ctx, f1.cap);
        let mut g = one.clone();
        for _ in 0..64 {
            let err = one.sub(&f1.mul(&g)?)?;
            if err.is_zero() {
                return g.scale(&a0_inv);
            }
            g = g.add(&g.mul(&err)?)?;
        }
        Err(Error::NotInvertible)
    }

    /// Renders coefficients as p-adic digit strings (`...01101*x^2*y`).
    pub fn display_digits(&self) -> String {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let c = t.coeff.digits_string().unwrap_or_else(|| t.coeff.to_string());
                let m = t.exp.format(&self.ctx);
                if m.is_empty() {
                    c
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + {}", parts.join(" + "), self.format_cap())
    }

    fn format_cap(&self) -> String {
        format!("O({}^{})", self.ctx.prime(), self.ctx.format_scaled(self.cap))
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }
}

impl fmt::Display for TateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + {}", self.format_cap());
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.format(&self.ctx)).collect();
        write!(f, "{} + {}", parts.join(" + "), self.format_cap())
    }
}

/// Structural equality: same context, cap and term map.
impl PartialEq for TateSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.cap == other.cap && self.terms == other.terms
    }
}
