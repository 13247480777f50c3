//! Algebra contexts: the base field Q_p, the variables, the log-radii and
//! the monomial order, shared read-only by every series built over them.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};

/// Monomial order used to break valuation ties in the term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
}

impl MonomialOrder {
    /// Compares two exponent vectors of equal length.
    pub fn cmp_exponents(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| {
                    // smaller exponent in the last differing variable wins
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grevlex" => Ok(MonomialOrder::Grevlex),
            other => Err(Error::Parse(format!("unknown monomial order `{other}`"))),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Grevlex => f.write_str("grevlex"),
        }
    }
}

/// The algebra `K{X;r}` over `K = Q_p` at a fixed precision cap.
///
/// Log-radii are stored as integers over a common denominator `D`, and every
/// valuation produced under the context is an integer in units of `1/D`.
/// The `ramification` index `e` (a divisor of `D`) describes the coefficient
/// field: `e = 1` for `Q_p` itself, `e = D` for the totally ramified extension
/// `Q_p[η]`, `η^D = p`, used internally for rational log-radii.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraContext {
    prime: u64,
    var_names: Vec<String>,
    log_radii_num: Vec<i64>,
    log_radii_den: i64,
    ramification: i64,
    order: MonomialOrder,
    prec_cap: i64,
}

pub type Context = Arc<AlgebraContext>;

/// `⌈a / b⌉` for `b > 0`.
pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl AlgebraContext {
    /// Builds a context; the log-radii are brought to their least common
    /// denominator.
    pub fn new<S: AsRef<str>>(
        prime: u64,
        var_names: &[S],
        log_radii: &[Rational64],
        order: MonomialOrder,
        prec_cap: i64,
    ) -> Result<Context> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if var_names.is_empty() {
            return Err(Error::NoVariables);
        }
        if prec_cap < 1 {
            return Err(Error::BadPrecision(prec_cap));
        }
        if log_radii.len() != var_names.len() {
            return Err(Error::RadiiLength { expected: var_names.len(), got: log_radii.len() });
        }
        let den = log_radii.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
        let num = log_radii.iter().map(|r| r.numer() * (den / r.denom())).collect();
        Ok(Arc::new(AlgebraContext {
            prime,
            var_names: var_names.iter().map(|s| s.as_ref().to_string()).collect(),
            log_radii_num: num,
            log_radii_den: den,
            ramification: 1,
            order,
            prec_cap,
        }))
    }

    /// Context with all log-radii zero.
    pub fn unit_polydisk<S: AsRef<str>>(
        prime: u64,
        var_names: &[S],
        order: MonomialOrder,
        prec_cap: i64,
    ) -> Result<Context> {
        let zeros = vec![Rational64::from_integer(0); var_names.len()];
        Self::new(prime, var_names, &zeros, order, prec_cap)
    }

    /// Same variables, prime, order and precision, over the unit polydisk of
    /// the extension `Q_p[η]` with `η^D = p` (`D` the radii denominator).
    pub fn extension(&self) -> Context {
        Arc::new(AlgebraContext {
            log_radii_num: vec![0; self.nvars()],
            ramification: self.log_radii_den,
            ..self.clone()
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn log_radii_num(&self) -> &[i64] {
        &self.log_radii_num
    }

    /// The common denominator `D` of the log-radii.
    pub fn log_radii_den(&self) -> i64 {
        self.log_radii_den
    }

    pub fn log_radii(&self) -> Vec<Rational64> {
        self.log_radii_num.iter().map(|&n| Rational64::new(n, self.log_radii_den)).collect()
    }

    pub fn ramification(&self) -> i64 {
        self.ramification
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn prec_cap(&self) -> i64 {
        self.prec_cap
    }

    /// Number of `1/D` valuation units in one unit of coefficient valuation.
    pub fn valuation_scale(&self) -> i64 {
        self.log_radii_den / self.ramification
    }

    /// Default absolute precision of a series, in units of `1/D`.
    pub fn default_cap(&self) -> i64 {
        self.prec_cap * self.log_radii_den
    }

    pub fn has_zero_radii(&self) -> bool {
        self.log_radii_num.iter().all(|&n| n == 0)
    }

    pub fn has_integer_radii(&self) -> bool {
        self.log_radii_den == 1
    }

    /// Coefficient cap (in coefficient valuation units) needed at exponent
    /// `exp` for the term to be known up to series cap `cap`.
    pub(crate) fn coefficient_cap(&self, cap: i64, exp: &[u32]) -> i64 {
        let shift: i64 = exp.iter().zip(&self.log_radii_num).map(|(&e, &r)| e as i64 * r).sum();
        ceil_div(cap + shift, self.valuation_scale())
    }

    /// `r·i` in units of `1/D`.
    pub(crate) fn radius_shift(&self, exp: &[u32]) -> i64 {
        exp.iter().zip(&self.log_radii_num).map(|(&e, &r)| e as i64 * r).sum()
    }

    /// Formats a valuation given in units of `1/D`.
    pub fn format_scaled(&self, v: i64) -> String {
        let q = Rational64::new(v, self.log_radii_den);
        if *q.denom() == 1 {
            q.numer().to_string()
        } else {
            format!("({}/{})", q.numer(), q.denom())
        }
    }
}

impl fmt::Display for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}", self.prime)?;
        if self.ramification > 1 {
            write!(f, "[eta], eta^{} = {}", self.ramification, self.prime)?;
        }
        write!(f, "{{{}", self.var_names.join(","))?;
        if !self.has_zero_radii() {
            let radii: Vec<String> = self.log_radii().iter().map(|r| r.to_string()).collect();
            write!(f, "; r=({})", radii.join(","))?;
        }
        write!(f, "}} ({}, prec {})", self.order, self.prec_cap)
    }
}
