//! Capped-precision p-adic scalars.
//!
//! A [`Coefficient`] is `η^val · unit + O(η^cap)` where `η` is a uniformizer
//! of valuation `1/e` (`e` the ramification index, `η = p` when `e = 1`) and
//! `unit` is an integer prime to `p`, reduced modulo `p^⌈(cap − val)/e⌉`.
//! A coefficient whose unit is zero is indistinguishable from zero at its cap.
//! Exact coefficients (no cap) are only used for pure uniformizer powers and
//! other multipliers known exactly.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::context::ceil_div;
use crate::error::{Error, Result};

/// Cap given to a zero produced by exact arithmetic.
const EXACT_ZERO_CAP: i64 = i64::MAX / 4;

/// Valuation of a coefficient: exact, or only bounded below when the
/// coefficient is indistinguishable from zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Exact(i64),
    AtLeast(i64),
}

impl Valuation {
    /// The exact value, or the lower bound.
    pub fn bound(self) -> i64 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn exact(self) -> Option<i64> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

pub(crate) fn pow_p(p: u64, k: i64) -> BigInt {
    debug_assert!(k >= 0);
    BigInt::from(p).pow(k as u32)
}

/// p-adic valuation of a nonzero integer, and the cofactor.
fn split_p(p: u64, n: &BigInt) -> (i64, BigInt) {
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&bp);
        if !r.is_zero() {
            return (k, n);
        }
        n = q;
        k += 1;
    }
}

#[derive(Clone, Debug)]
pub struct Coefficient {
    prime: u64,
    ram: i64,
    val: i64,
    unit: BigInt,
    cap: Option<i64>,
}

/// Caps at or beyond the exact-zero sentinel mean "exact".
fn norm_cap(c: Option<i64>) -> Option<i64> {
    c.filter(|&c| c < EXACT_ZERO_CAP / 2)
}

fn min_cap(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (norm_cap(a), norm_cap(b)) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_cap(c: Option<i64>, k: i64) -> Option<i64> {
    norm_cap(c).map(|c| c.saturating_add(k))
}

impl Coefficient {
    /// Number of base-p digits kept for a unit with relative precision `rel`.
    fn digits(ram: i64, rel: i64) -> i64 {
        ceil_div(rel, ram).max(0)
    }

    /// Builds `η^base · value + O(η^cap)`, extracting the valuation of `value`.
    fn make(prime: u64, ram: i64, base: i64, value: BigInt, cap: Option<i64>) -> Coefficient {
        let cap = norm_cap(cap);
        let value = match cap {
            Some(c) => {
                if base >= c {
                    return Coefficient::zero(prime, ram, c);
                }
                value.mod_floor(&pow_p(prime, Self::digits(ram, c - base)))
            }
            None => value,
        };
        if value.is_zero() {
            return Coefficient::zero(prime, ram, cap.unwrap_or(EXACT_ZERO_CAP));
        }
        let (k, unit) = split_p(prime, &value);
        let val = base + ram * k;
        match cap {
            Some(c) if val >= c => Coefficient::zero(prime, ram, c),
            Some(c) => {
                let unit = unit.mod_floor(&pow_p(prime, Self::digits(ram, c - val)));
                Coefficient { prime, ram, val, unit, cap }
            }
            None => Coefficient { prime, ram, val, unit, cap },
        }
    }

    /// `residue + O(p^cap)` over `Q_p`.
    pub fn new(prime: u64, residue: BigUint, cap: i64) -> Coefficient {
        Self::from_bigint(prime, &BigInt::from(residue), cap)
    }

    pub fn from_i64(prime: u64, n: i64, cap: i64) -> Coefficient {
        Self::from_bigint(prime, &BigInt::from(n), cap)
    }

    /// An integer known modulo `p^cap` (negative integers allowed).
    pub fn from_bigint(prime: u64, n: &BigInt, cap: i64) -> Coefficient {
        Self::make(prime, 1, 0, n.clone(), Some(cap))
    }

    /// `η^val · unit + O(η^cap)`; `unit` may carry factors of `p`.
    pub fn from_parts(prime: u64, ram: i64, val: i64, unit: BigInt, cap: Option<i64>) -> Coefficient {
        Self::make(prime, ram, val, unit, cap)
    }

    /// The exact uniformizer power `η^k`.
    pub fn uniformizer_power(prime: u64, ram: i64, k: i64) -> Coefficient {
        Coefficient { prime, ram, val: k, unit: BigInt::one(), cap: None }
    }

    /// An exactly known nonzero integer (zero becomes a zero of huge cap).
    pub fn exact(prime: u64, n: &BigInt) -> Coefficient {
        Self::make(prime, 1, 0, n.clone(), None)
    }

    pub fn zero(prime: u64, ram: i64, cap: i64) -> Coefficient {
        Coefficient { prime, ram, val: cap, unit: BigInt::zero(), cap: Some(cap) }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn ramification(&self) -> i64 {
        self.ram
    }

    /// Absolute precision, `None` when exact.
    pub fn cap(&self) -> Option<i64> {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.cap.is_none()
    }

    /// The unit part (zero when the coefficient is zero at precision).
    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::AtLeast(self.val)
        } else {
            Valuation::Exact(self.val)
        }
    }

    /// Valuation, or the cap for a zero coefficient.
    pub(crate) fn val_or_cap(&self) -> i64 {
        self.val
    }

    /// Relative precision `cap − val`, `None` when exact.
    pub fn relative_precision(&self) -> Option<i64> {
        self.cap.map(|c| c - self.val)
    }

    /// The integer `p^val · unit mod p^cap` for coefficients of `Z_p`
    /// (ramification 1, nonnegative valuation, finite cap).
    pub fn residue(&self) -> Option<BigUint> {
        if self.ram != 1 || self.val < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(BigUint::zero());
        }
        let v = &self.unit * pow_p(self.prime, self.val);
        let v = match self.cap {
            Some(c) => v.mod_floor(&pow_p(self.prime, c.max(0))),
            None => v,
        };
        v.to_biguint()
    }

    /// Signed integer `m` with value `p^{−k} m`, `k = max(0, −val)`, for
    /// ramification 1.
    pub(crate) fn scaled_integer(&self) -> Option<(i64, BigInt)> {
        if self.ram != 1 {
            return None;
        }
        if self.is_zero() {
            Some((0, BigInt::zero()))
        } else if self.val >= 0 {
            Some((0, &self.unit * pow_p(self.prime, self.val)))
        } else {
            Some((-self.val, self.unit.clone()))
        }
    }

    fn check(&self, other: &Coefficient) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.ram != other.ram {
            return Err(Error::RamificationMismatch);
        }
        Ok(())
    }

    /// Lowers the cap to `cap` (never raises it).
    pub fn truncate(&self, cap: i64) -> Coefficient {
        let cap = min_cap(self.cap, Some(cap));
        if self.is_zero() {
            return Coefficient::zero(self.prime, self.ram, cap.unwrap_or(EXACT_ZERO_CAP));
        }
        if cap == self.cap {
            return self.clone();
        }
        Self::make(self.prime, self.ram, self.val, self.unit.clone(), cap)
    }

    fn combine(&self, other: &Coefficient, negate: bool) -> Result<Coefficient> {
        self.check(other)?;
        let cap = min_cap(self.cap, other.cap);
        if other.is_zero() {
            return Ok(self.truncate(cap.unwrap_or(EXACT_ZERO_CAP)));
        }
        if self.is_zero() {
            let o = other.truncate(cap.unwrap_or(EXACT_ZERO_CAP));
            return Ok(if negate { o.neg() } else { o });
        }
        if (self.val - other.val).rem_euclid(self.ram) != 0 {
            return Err(Error::ClassMismatch);
        }
        let base = self.val.min(other.val);
        let a = &self.unit * pow_p(self.prime, (self.val - base) / self.ram);
        let b = &other.unit * pow_p(self.prime, (other.val - base) / self.ram);
        let s = if negate { a - b } else { a + b };
        Ok(Self::make(self.prime, self.ram, base, s, cap))
    }

    pub fn add(&self, other: &Coefficient) -> Result<Coefficient> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Coefficient) -> Result<Coefficient> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Coefficient {
        if self.is_zero() {
            return self.clone();
        }
        Self::make(self.prime, self.ram, self.val, -&self.unit, self.cap)
    }

    pub fn mul(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check(other)?;
        let cap = min_cap(add_cap(self.cap, other.val), add_cap(other.cap, self.val));
        let val = self.val.saturating_add(other.val);
        if self.is_zero() || other.is_zero() {
            return Ok(Coefficient::zero(self.prime, self.ram, cap.unwrap_or(EXACT_ZERO_CAP)));
        }
        Ok(Self::make(self.prime, self.ram, val, &self.unit * &other.unit, cap))
    }

    /// Multiplication by the exact power `η^k`.
    pub fn shift(&self, k: i64) -> Coefficient {
        Coefficient {
            prime: self.prime,
            ram: self.ram,
            val: self.val + k,
            unit: self.unit.clone(),
            cap: add_cap(self.cap, k),
        }
    }

    fn unit_inverse(&self, rel: Option<i64>) -> Result<BigInt> {
        match rel {
            Some(rel) => {
                let m = pow_p(self.prime, Self::digits(self.ram, rel));
                if m.is_one() {
                    return Ok(BigInt::zero());
                }
                self.unit.modinv(&m).ok_or(Error::NotAUnit)
            }
            None if self.unit.abs().is_one() => Ok(self.unit.clone()),
            // an exact unit other than ±1 has no exact integer inverse
            None => Err(Error::NotAUnit),
        }
    }

    /// Inverse of a unit (valuation 0) modulo the same cap.
    pub fn inv_unit(&self) -> Result<Coefficient> {
        if self.is_zero() || self.val != 0 {
            return Err(Error::NotAUnit);
        }
        let inv = self.unit_inverse(self.cap)?;
        Ok(Self::make(self.prime, self.ram, 0, inv, self.cap))
    }

    /// Inverse of any coefficient that is nonzero at precision; the relative
    /// precision is preserved.
    pub fn inverse(&self) -> Result<Coefficient> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rel = self.relative_precision();
        let inv = self.unit_inverse(rel)?;
        Ok(Self::make(self.prime, self.ram, -self.val, inv, rel.map(|r| r - self.val)))
    }

    /// Quotient `a / b` in `K`, keeping the smaller of the two relative
    /// precisions: no digit is lost beyond the valuation shift.
    pub fn quotient(&self, b: &Coefficient) -> Result<Coefficient> {
        self.check(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            let cap = self.val - b.val;
            return Ok(Coefficient::zero(self.prime, self.ram, cap));
        }
        let rel = match (self.relative_precision(), b.relative_precision()) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        };
        let inv = b.unit_inverse(rel)?;
        let val = self.val - b.val;
        Ok(Self::make(self.prime, self.ram, val, &self.unit * inv, rel.map(|r| r + val)))
    }

    /// The exact term `t` with `t·b ≡ a` at precision `min(cap_a, cap_b)`,
    /// required to lie in the valuation ring.
    pub fn exact_quotient(&self, b: &Coefficient) -> Result<Coefficient> {
        self.check(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.val < b.val {
            return Err(Error::NonIntegralQuotient { numerator: self.val, denominator: b.val });
        }
        self.quotient(b)
    }

    /// Base-p digits of the residue, most significant first, padded to the
    /// cap (`...01101` display).
    pub fn digits_string(&self) -> Option<String> {
        let cap = self.cap?;
        let r = self.residue()?;
        let p = self.prime;
        let mut digits = Vec::new();
        let mut n = r;
        let bp = BigUint::from(p);
        for _ in 0..cap.max(0) {
            let (q, d) = n.div_rem(&bp);
            digits.push(d);
            n = q;
        }
        let sep = if p > 10 { "|" } else { "" };
        let body: Vec<String> = digits.iter().rev().map(|d| d.to_string()).collect();
        Some(format!("...{}", body.join(sep)))
    }

    /// Value reduced modulo p as an element of F_p (ramification 1, val ≥ 0).
    pub fn reduce_mod_p(&self) -> Option<u64> {
        if self.ram != 1 || self.val < 0 {
            return None;
        }
        if self.is_zero() || self.val > 0 {
            return Some(0);
        }
        let r = self.unit.mod_floor(&BigInt::from(self.prime));
        let (_, digits) = r.to_u64_digits();
        Some(digits.first().copied().unwrap_or(0))
    }

    /// Equality of values at the weaker of the two caps.
    pub fn eq_at_precision(&self, other: &Coefficient) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl PartialEq for Coefficient {
    /// Structural equality: same value and same cap.
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime
            && self.ram == other.ram
            && self.cap == other.cap
            && self.val == other.val
            && self.unit == other.unit
    }
}

impl Eq for Coefficient {}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scaled_integer() {
            Some((0, m)) => {
                let m = match self.cap {
                    Some(c) => m.mod_floor(&pow_p(self.prime, c.max(0))),
                    None => m,
                };
                write!(f, "{m}")
            }
            Some((k, m)) if m.is_one() => write!(f, "p^-{k}"),
            Some((k, m)) => write!(f, "p^-{k}*{m}"),
            None => {
                let sign = if self.unit.sign() == Sign::Minus { "-" } else { "" };
                write!(f, "{sign}eta^{}*{}", self.val, self.unit.abs())
            }
        }?;
        Ok(())
    }
}
