//! Text syntax for Tate series.
//!
//! ```text
//! series := ["-"] term (("+" | "-") term)* ["+" "O(" prime "^" exp ")"]
//! term   := factor ("*" factor)*
//! factor := integer | "p^" signed-int | var ["^" int]
//! ```
//!
//! Coefficients are rational numbers of the form `p^k·m`. The optional `O(..)`
//! suffix sets the absolute precision (`O(2^5)`, `O(2^(7/2))`); without it the
//! context's default precision is used. This is the format produced by
//! `Display` on [`TateSeries`].

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::coefficient::Coefficient;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::series::TateSeries;
use crate::term::Exponent;

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn small(&mut self) -> Result<i64> {
        let n = self.number()?;
        i64::try_from(n).map_err(|_| self.error("number too large"))
    }

    fn signed_small(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let n = self.small()?;
        Ok(if neg { -n } else { n })
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            if self.pos == start && self.s[self.pos].is_ascii_digit() {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// True if the upcoming text is the precision suffix `O(`.
    fn at_big_o(&mut self) -> bool {
        self.skip_ws();
        self.s[self.pos..].starts_with(b"O(")
    }
}

/// `(p-power, integer, exponent)`.
type RawTerm = (i64, BigInt, Vec<u32>);

fn parse_term(lx: &mut Lexer, ctx: &Context) -> Result<RawTerm> {
    let mut pk = 0i64;
    let mut m = BigInt::one();
    let mut exp = vec![0u32; ctx.nvars()];
    let mut seen = vec![false; ctx.nvars()];
    loop {
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => m *= lx.number()?,
            Some(_) => {
                let name = lx.ident().ok_or_else(|| lx.error("expected a factor"))?;
                if let Some(i) = ctx.var_names().iter().position(|v| *v == name) {
                    if seen[i] {
                        return Err(lx.error(&format!("variable `{name}` repeated in a term")));
                    }
                    seen[i] = true;
                    exp[i] = if lx.eat(b'^') {
                        if lx.peek() == Some(b'-') {
                            return Err(lx.error("negative exponent"));
                        }
                        u32::try_from(lx.small()?).map_err(|_| lx.error("exponent too large"))?
                    } else {
                        1
                    };
                } else if name == "p" {
                    lx.expect(b'^')?;
                    pk += lx.signed_small()?;
                } else {
                    return Err(lx.error(&format!("unknown variable `{name}`")));
                }
            }
            None => return Err(lx.error("unexpected end of input")),
        }
        if !lx.eat(b'*') {
            return Ok((pk, m, exp));
        }
    }
}

fn parse_cap(lx: &mut Lexer, ctx: &Context) -> Result<i64> {
    lx.expect(b'O')?;
    lx.expect(b'(')?;
    let p = lx.number()?;
    if p != BigInt::from(ctx.prime()) {
        return Err(lx.error("precision prime differs from the context prime"));
    }
    lx.expect(b'^')?;
    let q = if lx.eat(b'(') {
        let num = lx.signed_small()?;
        lx.expect(b'/')?;
        let den = lx.small()?;
        lx.expect(b')')?;
        if den == 0 {
            return Err(lx.error("zero denominator"));
        }
        Rational64::new(num, den)
    } else {
        let num = lx.signed_small()?;
        if lx.eat(b'/') {
            let den = lx.small()?;
            if den == 0 {
                return Err(lx.error("zero denominator"));
            }
            Rational64::new(num, den)
        } else {
            Rational64::from_integer(num)
        }
    };
    lx.expect(b')')?;
    let scaled = q * Rational64::from_integer(ctx.log_radii_den());
    if !scaled.is_integer() {
        return Err(lx.error("precision not a multiple of 1/D"));
    }
    Ok(scaled.to_integer())
}

/// Parses a series in the context's variables.
pub fn parse_series(text: &str, ctx: &Context) -> Result<TateSeries> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut raw: Vec<RawTerm> = Vec::new();
    let mut cap = ctx.default_cap();
    let mut negate = lx.eat(b'-');
    if lx.at_end() {
        return Err(lx.error("empty input"));
    }
    loop {
        if lx.at_big_o() {
            if negate {
                return Err(lx.error("negated precision term"));
            }
            cap = parse_cap(&mut lx, ctx)?;
            if !lx.at_end() {
                return Err(lx.error("trailing input after precision"));
            }
            break;
        }
        let (pk, m, exp) = parse_term(&mut lx, ctx)?;
        raw.push((pk, if negate { -m } else { m }, exp));
        if lx.at_end() {
            break;
        }
        negate = if lx.eat(b'+') {
            false
        } else if lx.eat(b'-') {
            true
        } else {
            return Err(lx.error("expected `+` or `-`"));
        };
    }
    let terms = raw.into_iter().filter(|(_, m, _)| !m.is_zero()).map(|(pk, m, exp)| {
        let c = Coefficient::from_parts(ctx.prime(), 1, pk, m, None);
        (Exponent(exp), c)
    });
    if ctx.ramification() != 1 {
        return Err(Error::Parse("text input is only supported over Q_p".into()));
    }
    TateSeries::from_terms(ctx, terms, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{AlgebraContext, MonomialOrder};
    use proptest::prelude::*;

    fn demo() -> Context {
        AlgebraContext::unit_polydisk(2, &["x", "y"], MonomialOrder::Grevlex, 5).unwrap()
    }

    #[test]
    fn parses_demo_generator() {
        let c = demo();
        let f = parse_series("2*x^2 + 5*x*y^2", &c).unwrap();
        assert_eq!(f.to_string(), "5*x*y^2 + 2*x^2 + O(2^5)");
        assert_eq!(f.cap(), 5);
        let z = parse_series("0", &c).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.to_string(), "0 + O(2^5)");
    }

    #[test]
    fn signs_powers_and_precision() {
        let c = demo();
        let f = parse_series("x - 1 + p^-1*3*y + O(2^3)", &c).unwrap();
        assert_eq!(f.cap(), 3);
        assert_eq!(f.to_string(), "p^-1*3*y + x + 7 + O(2^3)");
        let g = parse_series("-x", &c).unwrap();
        assert_eq!(g.to_string(), "31*x + O(2^5)");
        let h = parse_series("x*y + 2*x*y", &c).unwrap();
        assert_eq!(h.to_string(), "3*x*y + O(2^5)");
    }

    #[test]
    fn fractional_precision() {
        let c = AlgebraContext::new(2, &["x"], &[Rational64::new(1, 2)], MonomialOrder::Grevlex, 3).unwrap();
        let f = parse_series("x + 1 + O(2^(7/2))", &c).unwrap();
        assert_eq!(f.cap(), 7);
        assert_eq!(f.to_string(), "x + 1 + O(2^(7/2))");
        assert!(parse_series("x + O(2^(1/3))", &c).is_err());
    }

    #[test]
    fn rejects_malformed_input() {
        let c = demo();
        for bad in ["x*x", "z", "x^-1", "", "x +", "2 ** x", "x + O(3^5)", "x y"] {
            assert!(matches!(parse_series(bad, &c), Err(Error::Parse(_))), "{bad}");
        }
    }

    fn arb_series() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
        prop::collection::vec((-40i64..40, 0u32..4, 0u32..4), 0..6)
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(raw in arb_series(), shift in -2i64..2) {
            let c = demo();
            let terms = raw.iter().map(|&(a, i, j)| {
                (Exponent(vec![i, j]), Coefficient::from_parts(2, 1, shift, BigInt::from(a), None))
            });
            let f = TateSeries::from_terms(&c, terms, 5).unwrap();
            let g = parse_series(&f.to_string(), &c).unwrap();
            prop_assert_eq!(f, g);
        }
    }
}
