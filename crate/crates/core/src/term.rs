//! Terms `a·X^i`, the valuation-aware term preorder, divisibility in the
//! term monoids `T` and `T°`, gcd/lcm at zero log-radii and skeletons of
//! monoid ideals.

use std::cmp::Ordering;
use std::fmt;

use crate::coefficient::Coefficient;
use crate::context::{ceil_div, AlgebraContext};
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Exponent {
        Exponent(vec![0; n])
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, when `other` divides `self`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Exponent)
    }

    pub fn inf(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn sup(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `x^2*y` style rendering; empty for the constant monomial.
    pub fn format(&self, ctx: &AlgebraContext) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(ctx.var_names())
            .filter(|(&e, _)| e > 0)
            .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
            .collect();
        parts.join("*")
    }
}

/// Ring in which quotients are taken: `K{X;r}` (rational) or `K°{X;r}`
/// (integral). Selects divisibility in `T` or in `T°`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingMode {
    Rational,
    Integral,
}

impl std::str::FromStr for RingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tate" | "rational" => Ok(RingMode::Rational),
            "integral" => Ok(RingMode::Integral),
            other => Err(Error::Parse(format!("unknown ring `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Coefficient,
    pub exp: Exponent,
}

impl Term {
    /// A term; its coefficient must be nonzero at precision.
    pub fn new(coeff: Coefficient, exp: Exponent) -> Result<Term> {
        if coeff.is_zero() {
            return Err(Error::ZeroAtPrecision);
        }
        Ok(Term { coeff, exp })
    }

    /// The exact term `η^k·X^exp`.
    pub fn monomial(ctx: &AlgebraContext, k: i64, exp: Exponent) -> Term {
        Term { coeff: Coefficient::uniformizer_power(ctx.prime(), ctx.ramification(), k), exp }
    }

    /// Gauss valuation `val(a) − r·i` of the term, in units of `1/D`.
    pub fn val(&self, ctx: &AlgebraContext) -> i64 {
        ctx.valuation_scale() * self.coeff.val_or_cap() - ctx.radius_shift(&self.exp.0)
    }

    pub fn degree(&self) -> u64 {
        self.exp.degree()
    }

    pub fn mul(&self, other: &Term) -> Result<Term> {
        Ok(Term { coeff: self.coeff.mul(&other.coeff)?, exp: self.exp.add(&other.exp) })
    }

    /// The unique term `q` with `q·divisor = self` (exponents and, at the
    /// working precision, coefficients). Integral mode requires `q ∈ T°`.
    pub fn quotient(&self, divisor: &Term, mode: RingMode, ctx: &AlgebraContext) -> Result<Term> {
        let exp = self.exp.checked_sub(&divisor.exp).ok_or(Error::ZeroAtPrecision)?;
        let coeff = self.coeff.quotient(&divisor.coeff)?;
        let q = Term { coeff, exp };
        if mode == RingMode::Integral && q.val(ctx) < 0 {
            return Err(Error::NonIntegralQuotient { numerator: self.val(ctx), denominator: divisor.val(ctx) });
        }
        Ok(q)
    }

    pub fn format(&self, ctx: &AlgebraContext) -> String {
        let m = self.exp.format(ctx);
        let c = self.coeff.to_string();
        if m.is_empty() {
            c
        } else if c == "1" {
            m
        } else {
            format!("{c}*{m}")
        }
    }
}

/// The term preorder: lower Gauss valuation is greater; ties are broken by
/// the monomial order. `Equal` means the terms differ by a unit of `K°`.
pub fn term_cmp(t1: &Term, t2: &Term, ctx: &AlgebraContext) -> Ordering {
    t2.val(ctx)
        .cmp(&t1.val(ctx))
        .then_with(|| ctx.order().cmp_exponents(&t1.exp.0, &t2.exp.0))
}

/// Divisibility in `T`: exponents only, coefficients being invertible in `K`.
pub fn divides_t(t1: &Term, t2: &Term) -> bool {
    t1.exp.divides(&t2.exp)
}

/// Divisibility in `T°`: the cofactor must have nonnegative valuation.
pub fn divides_to(t1: &Term, t2: &Term, ctx: &AlgebraContext) -> bool {
    t1.exp.divides(&t2.exp) && t1.val(ctx) <= t2.val(ctx)
}

pub fn divides(t1: &Term, t2: &Term, mode: RingMode, ctx: &AlgebraContext) -> bool {
    match mode {
        RingMode::Rational => divides_t(t1, t2),
        RingMode::Integral => divides_to(t1, t2, ctx),
    }
}

/// Same class in `T/K^×` (rational) or `T°/(K°)^×` (integral).
pub fn same_class(t1: &Term, t2: &Term, mode: RingMode, ctx: &AlgebraContext) -> bool {
    t1.exp == t2.exp && (mode == RingMode::Rational || t1.val(ctx) == t2.val(ctx))
}

fn require_zero_radii(ctx: &AlgebraContext) -> Result<()> {
    if ctx.has_zero_radii() {
        Ok(())
    } else {
        Err(Error::NonZeroRadii)
    }
}

/// `gcd(a·X^i, b·X^j) = π^{min(val a, val b)}·X^{inf(i,j)}`.
pub fn gcd_term(t1: &Term, t2: &Term, ctx: &AlgebraContext) -> Result<Term> {
    require_zero_radii(ctx)?;
    let v = t1.coeff.val_or_cap().min(t2.coeff.val_or_cap());
    Ok(Term::monomial(ctx, v, t1.exp.inf(&t2.exp)))
}

/// `lcm(a·X^i, b·X^j) = π^{max(val a, val b)}·X^{sup(i,j)}`.
pub fn lcm_term(t1: &Term, t2: &Term, ctx: &AlgebraContext) -> Result<Term> {
    require_zero_radii(ctx)?;
    let v = t1.coeff.val_or_cap().max(t2.coeff.val_or_cap());
    Ok(Term::monomial(ctx, v, t1.exp.sup(&t2.exp)))
}

/// Minimal elements of `ts` for divisibility in `T` or `T°`, one per class.
///
/// Candidates are scanned in descending term order; within a class the first
/// one met is kept.
pub fn skeleton(ts: &[Term], mode: RingMode, ctx: &AlgebraContext) -> Vec<Term> {
    let mut sorted: Vec<&Term> = ts.iter().collect();
    sorted.sort_by(|a, b| term_cmp(b, a, ctx));
    let mut kept: Vec<Term> = Vec::new();
    for (k, t) in sorted.iter().enumerate() {
        let redundant = sorted.iter().enumerate().any(|(j, s)| {
            j != k
                && divides(s, t, mode, ctx)
                && (!same_class(s, t, mode, ctx) || j < k)
        });
        if !redundant {
            kept.push((*t).clone());
        }
    }
    kept
}

/// Skeleton of the fractional ideal `{t : val_r(t) ≥ v}` of `T°` for a single
/// variable; `v` is in units of `1/D`.
///
/// For each exponent `i` the smallest admissible power `p^a` is taken; the
/// enumeration stops once `D` consecutive exponents contribute no new minimal
/// element.
pub fn skel_geq(v: i64, ctx: &AlgebraContext) -> Result<Vec<Term>> {
    if ctx.nvars() != 1 {
        return Err(Error::UnsupportedDimension);
    }
    let scale = ctx.valuation_scale();
    let num = ctx.log_radii_num()[0];
    let d = ctx.log_radii_den() as u32;
    let mut candidates: Vec<Term> = Vec::new();
    let mut best = i64::MAX;
    let mut quiet = 0;
    let mut i = 0u32;
    while quiet < d {
        let a = ceil_div(v + num * i as i64, scale);
        let t = Term::monomial(ctx, a, Exponent(vec![i]));
        let tv = t.val(ctx);
        if tv < best {
            best = tv;
            candidates.push(t);
            quiet = 0;
        } else {
            quiet += 1;
        }
        i += 1;
    }
    Ok(skeleton(&candidates, RingMode::Integral, ctx))
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{Context, MonomialOrder};
    use num_rational::Rational64;

    fn ctx(order: MonomialOrder) -> Context {
        AlgebraContext::unit_polydisk(2, &["x", "y"], order, 5).unwrap()
    }

    fn half() -> Context {
        AlgebraContext::new(2, &["x"], &[Rational64::new(1, 2)], MonomialOrder::Grevlex, 5).unwrap()
    }

    fn t(c: &AlgebraContext, a: i64, e: &[u32]) -> Term {
        Term::new(Coefficient::from_i64(c.prime(), a, 5), Exponent(e.to_vec())).unwrap()
    }

    #[test]
    fn term_valuations() {
        let c = ctx(MonomialOrder::Grevlex);
        assert_eq!(t(&c, 2, &[2, 0]).val(&c), 1);
        assert_eq!(t(&c, 1, &[0, 0]).val(&c), 0);
        let h = half();
        assert_eq!(t(&h, 2, &[1]).val(&h), 1);
    }

    #[test]
    fn order_examples() {
        let c = ctx(MonomialOrder::Lex);
        assert_eq!(term_cmp(&t(&c, 1, &[1, 0]), &t(&c, 1, &[0, 1]), &c), Ordering::Greater);
        assert_eq!(term_cmp(&t(&c, 1, &[0, 0]), &t(&c, 2, &[1, 2]), &c), Ordering::Greater);
        assert_eq!(term_cmp(&t(&c, 1, &[1, 1]), &t(&c, -1, &[1, 1]), &c), Ordering::Equal);
        assert_eq!(term_cmp(&t(&c, 1, &[1, 1]), &t(&c, 3, &[1, 1]), &c), Ordering::Equal);
        // XY^2 > XY > X > Y > 1 > pXY^2 > p > p^2 XY^2
        let chain = [
            t(&c, 1, &[1, 2]),
            t(&c, 1, &[1, 1]),
            t(&c, 1, &[1, 0]),
            t(&c, 1, &[0, 1]),
            t(&c, 1, &[0, 0]),
            t(&c, 2, &[1, 2]),
            t(&c, 2, &[0, 0]),
            t(&c, 4, &[1, 2]),
        ];
        for w in chain.windows(2) {
            assert_eq!(term_cmp(&w[0], &w[1], &c), Ordering::Greater);
        }
    }

    #[test]
    fn divisibility() {
        let c = ctx(MonomialOrder::Grevlex);
        assert!(divides_t(&t(&c, 2, &[1, 0]), &t(&c, 5, &[1, 2])));
        assert!(!divides_t(&t(&c, 1, &[2, 0]), &t(&c, 1, &[1, 0])));
        let x = t(&c, 3, &[1, 1]);
        assert!(divides_t(&x, &x) && divides_to(&x, &x, &c));
        assert!(!divides_to(&t(&c, 2, &[1, 0]), &t(&c, 1, &[2, 0]), &c));
        assert!(divides_to(&t(&c, 1, &[1, 0]), &t(&c, 2, &[2, 0]), &c));
        let h = half();
        assert!(!divides_to(&t(&h, 2, &[1]), &t(&h, 2, &[2]), &h));
    }

    #[test]
    fn gcd_lcm() {
        let c = ctx(MonomialOrder::Grevlex);
        let a = t(&c, 2, &[2, 0]);
        let b = t(&c, 4, &[1, 3]);
        let g = gcd_term(&a, &b, &c).unwrap();
        let l = lcm_term(&a, &b, &c).unwrap();
        assert_eq!((g.val(&c), &g.exp.0[..]), (1, &[1u32, 0][..]));
        assert_eq!((l.val(&c), &l.exp.0[..]), (2, &[2u32, 3][..]));
        assert_eq!(l.degree(), 5);
        let g = gcd_term(&t(&c, 5, &[1, 2]), &t(&c, 2, &[2, 1]), &c).unwrap();
        assert_eq!((g.val(&c), &g.exp.0[..]), (0, &[1u32, 1][..]));
        let s = t(&c, 12, &[3, 1]);
        let g = gcd_term(&s, &s, &c).unwrap();
        assert_eq!(term_cmp(&g, &s, &c), Ordering::Equal);
        assert_eq!(gcd_term(&t(&half(), 1, &[1]), &t(&half(), 1, &[0]), &half()).unwrap_err(), Error::NonZeroRadii);
    }

    #[test]
    fn skeleton_examples() {
        let c = ctx(MonomialOrder::Grevlex);
        let ts = [t(&c, 1, &[2, 1]), t(&c, 1, &[3, 0]), t(&c, 1, &[1, 2]), t(&c, 1, &[2, 2])];
        let s = skeleton(&ts, RingMode::Rational, &c);
        let mut exps: Vec<_> = s.iter().map(|t| t.exp.0.clone()).collect();
        exps.sort();
        assert_eq!(exps, vec![vec![1, 2], vec![2, 1], vec![3, 0]]);
        let ts = [t(&c, 2, &[1, 0]), t(&c, 1, &[2, 0])];
        assert_eq!(skeleton(&ts, RingMode::Integral, &c).len(), 2);
        assert_eq!(skeleton(&ts, RingMode::Rational, &c).len(), 1);
        assert_eq!(skeleton(&ts[..1], RingMode::Integral, &c), vec![ts[0].clone()]);
        // duplicates up to units collapse to one representative
        let ts = [t(&c, 3, &[1, 0]), t(&c, 1, &[1, 0])];
        assert_eq!(skeleton(&ts, RingMode::Integral, &c).len(), 1);
    }

    #[test]
    fn skel_geq_examples() {
        let h = half();
        let s = skel_geq(1, &h).unwrap();
        let mut got: Vec<(i64, Vec<u32>)> = s.iter().map(|t| (t.coeff.val_or_cap(), t.exp.0.clone())).collect();
        got.sort();
        assert_eq!(got, vec![(1, vec![0]), (1, vec![1])]);
        let c1 = AlgebraContext::unit_polydisk(2, &["x"], MonomialOrder::Grevlex, 5).unwrap();
        let s = skel_geq(1, &c1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].coeff.val_or_cap(), s[0].exp.0.clone()), (1, vec![0]));
        let s = skel_geq(0, &c1).unwrap();
        assert_eq!((s[0].coeff.val_or_cap(), s[0].exp.0.clone()), (0, vec![0]));
        assert_eq!(skel_geq(0, &ctx(MonomialOrder::Lex)).unwrap_err(), Error::UnsupportedDimension);
    }
}
