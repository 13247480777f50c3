//! Nonzero log-radii.
//!
//! With log-radii `r = num/D`, put `Yᵢ = η^{numᵢ}·Xᵢ` over `L = Q_p[η]`,
//! `η^D = p`. A series of `K{X;r}` becomes a series of the unit-polydisk
//! algebra `L{Y}` with the same term valuations, where the r = 0 engines
//! apply. Results come back as pairs `η^v·f` with `f ∈ K{X;r}`. For integer
//! radii (`D = 1`) this is the plain change of variables `Y = p^r·X`.

use std::path::Path;

use crate::buchberger::{buchberger, GroebnerBasis};
use crate::coefficient::Coefficient;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::f4::f4_with_dump;
use crate::series::TateSeries;
use crate::term::{Exponent, RingMode};

/// Gröbner basis engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    #[default]
    Buchberger,
    F4,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "buchberger" => Ok(Algorithm::Buchberger),
            "f4" => Ok(Algorithm::F4),
            other => Err(Error::Parse(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// `η^v·body` with `0 ≤ v < D` and `body ∈ K{X;r}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaSeries {
    pub v: i64,
    pub body: TateSeries,
}

impl EtaSeries {
    /// The element as a series of `L{Y}`.
    pub fn to_extension(&self) -> TateSeries {
        to_extension(&self.body).shift(self.v)
    }

    /// Gauss valuation over `L`, in units of `1/D`.
    pub fn gauss_val(&self) -> Option<i64> {
        self.body.gauss_val().exact().map(|s| s + self.v)
    }
}

/// Rewrites `f ∈ K{X;r}` in the coordinates `Y` of `L{Y}`: the coefficient
/// `a` of `X^i` becomes `η^{−num·i}·a`, so term valuations are unchanged.
pub fn to_extension(f: &TateSeries) -> TateSeries {
    let ctx = f.ctx();
    let target = ctx.extension();
    let d = ctx.log_radii_den();
    let terms: Vec<(Exponent, Coefficient)> = f
        .terms()
        .iter()
        .map(|t| {
            let shift = ctx.radius_shift(&t.exp.0);
            let val = d * t.coeff.valuation().bound() - shift;
            let cap = t.coeff.cap().map(|c| d * c - shift);
            (t.exp.clone(), Coefficient::from_parts(ctx.prime(), d, val, t.coeff.unit().clone(), cap))
        })
        .collect();
    TateSeries::from_terms(&target, terms, f.cap()).expect("same prime and ramification")
}

/// Inverse of [`to_extension`] for a series of `L{Y}` all of whose terms have
/// `η`-valuations in one class `v` modulo `D` once written in `X`.
pub fn from_extension(g: &TateSeries, ctx: &Context) -> Result<EtaSeries> {
    let d = ctx.log_radii_den();
    if g.ctx().ramification() != d || g.ctx().nvars() != ctx.nvars() {
        return Err(Error::ContextMismatch);
    }
    let mut v: Option<i64> = None;
    let mut terms = Vec::with_capacity(g.len());
    for t in g.terms() {
        let e = t.coeff.valuation().bound() + ctx.radius_shift(&t.exp.0);
        let class = e.rem_euclid(d);
        match v {
            None => v = Some(class),
            Some(c) if c != class => return Err(Error::ClassMismatch),
            Some(_) => {}
        }
        let k = (e - class) / d;
        let cap = t.coeff.cap().map(|c| {
            let c = c + ctx.radius_shift(&t.exp.0) - class;
            // digits of the unit known: ceil(c / d) in units of p
            crate::context::ceil_div(c, d)
        });
        terms.push((t.exp.clone(), Coefficient::from_parts(ctx.prime(), 1, k, t.coeff.unit().clone(), cap)));
    }
    let v = v.unwrap_or(0);
    let body = TateSeries::from_terms(ctx, terms, g.cap() - v)?;
    Ok(EtaSeries { v, body })
}

/// The change of variables `X = p^{−r}·X'` for integer log-radii, giving a
/// series of the unit polydisk with the same Gauss valuation.
pub fn normalize_integer_radii(f: &TateSeries) -> Result<TateSeries> {
    if !f.ctx().has_integer_radii() {
        return Err(Error::NonIntegerRadii);
    }
    Ok(to_extension(f))
}

/// Inverse of [`normalize_integer_radii`], back into `ctx`.
pub fn denormalize_integer_radii(g: &TateSeries, ctx: &Context) -> Result<TateSeries> {
    if !ctx.has_integer_radii() {
        return Err(Error::NonIntegerRadii);
    }
    Ok(from_extension(g, ctx)?.body)
}

/// Pairs `f` with the power `η^v`, `0 ≤ v < D`, that makes the Gauss
/// valuation of `η^v·f` an integer.
pub fn eta_lift(f: &TateSeries) -> EtaSeries {
    let d = f.ctx().log_radii_den();
    let s = f.gauss_val().bound();
    EtaSeries { v: (-s).rem_euclid(d), body: f.clone() }
}

/// Gröbner basis for arbitrary rational log-radii, computed over `L{Y}` and
/// brought back to `K{X;r}`.
///
/// Rational mode lifts generators with [`eta_lift`] and strips the `η`-power
/// of each minimal element. Integral mode embeds generators unchanged and
/// requires every minimal element to descend with `v = 0`.
pub fn eta_gb(gens: &[TateSeries], mode: RingMode, algorithm: Algorithm) -> Result<GroebnerBasis> {
    eta_gb_with_dump(gens, mode, algorithm, None)
}

fn eta_gb_with_dump(gens: &[TateSeries], mode: RingMode, algorithm: Algorithm, dump: Option<&Path>) -> Result<GroebnerBasis> {
    let ctx = gens.first().ok_or(Error::NoGenerators)?.ctx().clone();
    let lifted: Vec<TateSeries> = gens
        .iter()
        .map(|f| match mode {
            RingMode::Rational => eta_lift(f).to_extension(),
            RingMode::Integral => to_extension(f),
        })
        .collect();
    let gb = run(&lifted, mode, algorithm, dump)?;
    let mut out = Vec::with_capacity(gb.len());
    for g in &gb.elements {
        let e = from_extension(g, &ctx)?;
        if mode == RingMode::Integral && e.v != 0 {
            return Err(Error::DescentFailure);
        }
        out.push(e.body);
    }
    Ok(GroebnerBasis::new(out, mode))
}

fn run(gens: &[TateSeries], mode: RingMode, algorithm: Algorithm, dump: Option<&Path>) -> Result<GroebnerBasis> {
    match algorithm {
        Algorithm::Buchberger => buchberger(gens, mode),
        Algorithm::F4 => f4_with_dump(gens, mode, dump),
    }
}

/// Gröbner basis in any context: directly for zero log-radii, through the
/// change of coordinates otherwise.
pub fn groebner_basis(gens: &[TateSeries], mode: RingMode, algorithm: Algorithm) -> Result<GroebnerBasis> {
    groebner_basis_with_dump(gens, mode, algorithm, None)
}

/// [`groebner_basis`], dumping F4 matrices into `dump` when given.
pub fn groebner_basis_with_dump(
    gens: &[TateSeries],
    mode: RingMode,
    algorithm: Algorithm,
    dump: Option<&Path>,
) -> Result<GroebnerBasis> {
    let ctx = gens.first().ok_or(Error::NoGenerators)?.ctx();
    if ctx.has_zero_radii() {
        run(gens, mode, algorithm, dump)
    } else {
        eta_gb_with_dump(gens, mode, algorithm, dump)
    }
}
