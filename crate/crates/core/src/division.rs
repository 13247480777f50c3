//! Multivariate division with remainder and ideal membership.

use crate::error::{Error, Result};
use crate::series::TateSeries;
use crate::term::{divides, RingMode, Term};

/// Quotients and remainder of a division.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<TateSeries>,
    pub remainder: TateSeries,
}

/// Divides `f` by `divisors`, returning `f = Σ qᵢhᵢ + r` at the working
/// precision.
///
/// The leading term of the running dividend is divided by the first divisor
/// (in list order) whose leading term divides it: in `T` for
/// [`RingMode::Rational`], in `T°` for [`RingMode::Integral`]. Otherwise it
/// moves to the remainder.
pub fn divide(f: &TateSeries, divisors: &[TateSeries], mode: RingMode) -> Result<Division> {
    let ctx = f.ctx().clone();
    let mut lts: Vec<&Term> = Vec::with_capacity(divisors.len());
    for h in divisors {
        if *h.ctx() != ctx {
            return Err(Error::ContextMismatch);
        }
        lts.push(h.leading_term().map_err(|_| Error::DivisionByZero)?);
    }
    let mut quotient_terms: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
    let mut rem_terms: Vec<Term> = Vec::new();
    let mut p = f.clone();
    while let Some(t) = p.terms().first().cloned() {
        match lts.iter().position(|lt| divides(lt, &t, mode, &ctx)) {
            Some(i) => {
                let delta = t.quotient(lts[i], mode, &ctx)?;
                p = p.sub_term_multiple(&delta, &divisors[i])?.without_exponent(&t.exp);
                quotient_terms[i].push(delta);
            }
            None => {
                p = p.without_leading_term();
                rem_terms.push(t);
            }
        }
    }
    let cap = p.cap();
    let remainder = TateSeries::from_terms(&ctx, rem_terms.into_iter().map(|t| (t.exp, t.coeff)), cap)?;
    let quotients = quotient_terms
        .into_iter()
        .zip(divisors)
        .map(|(ts, h)| {
            let qcap = cap - h.gauss_val().bound();
            TateSeries::from_terms(&ctx, ts.into_iter().map(|t| (t.exp, t.coeff)), qcap)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Division { quotients, remainder })
}

/// Remainder of `f` on division by `g`.
pub fn reduce(f: &TateSeries, g: &[TateSeries], mode: RingMode) -> Result<TateSeries> {
    Ok(divide(f, g, mode)?.remainder)
}

/// Membership of `f` in the ideal generated by the Gröbner basis `gb`,
/// modulo the working precision.
pub fn is_member(f: &TateSeries, gb: &[TateSeries], mode: RingMode) -> Result<bool> {
    Ok(reduce(f, gb, mode)?.is_zero())
}
