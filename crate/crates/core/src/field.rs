//! Exact scalar arithmetic over the rationals and prime fields GF(p).
//!
//! Every [`FieldElement`] carries enough information to recover its
//! [`FieldCtx`], and binary operations refuse to mix contexts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 62;

/// The field a computation takes place in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldCtx {
    Rational,
    Prime { p: u64 },
}

impl FieldCtx {
    /// GF(p); fails unless `p` is a prime below 2^62.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldCtx::Prime { p })
    }

    pub fn zero(&self) -> FieldElement {
        self.from_integer(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match *self {
            FieldCtx::Rational => FieldElement::Rational(BigRational::from_integer(n.clone())),
            FieldCtx::Prime { p } => FieldElement::Prime {
                p,
                r: reduce_bigint(n, p),
            },
        }
    }

    /// `num/den` reduced into this field. Fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        let n = self.from_integer(num);
        let d = self.from_integer(den);
        n.div(&d)
    }

    /// Parses `"n"` or `"n/d"`. Over GF(p) a fraction is evaluated as `n * d^-1`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        let den = match den {
            Some(d) => {
                BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?
            }
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match *self {
            FieldCtx::Rational => Ok(FieldElement::Rational(BigRational::new(num, den))),
            FieldCtx::Prime { .. } => self.from_bigint(&num).div(&self.from_bigint(&den)),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldCtx::Rational)
    }

    /// Short label used by the CLI: `rational` or `prime:P`.
    pub fn label(&self) -> String {
        match self {
            FieldCtx::Rational => "rational".to_string(),
            FieldCtx::Prime { p } => format!("prime:{p}"),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    /// Accepts `rational`, `q`, `prime:P` or `gf:P`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "rational" | "q" | "rationals" => return Ok(FieldCtx::Rational),
            _ => {}
        }
        let rest = s
            .split_once(':')
            .filter(|(k, _)| matches!(k.to_ascii_lowercase().as_str(), "prime" | "gf"))
            .map(|(_, v)| v)
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in {s:?}")))?;
        FieldCtx::prime(p)
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rational => write!(f, "Q"),
            FieldCtx::Prime { p } => write!(f, "GF({p})"),
        }
    }
}

/// A value in a [`FieldCtx`], always held in canonical form.
///
/// Rationals are gcd-reduced with a positive denominator; residues lie in
/// `[0, p)`. Structural equality is therefore field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { p: u64, r: u64 },
}

/// Operation selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Dispatches a field operation. Unary operations ignore `b`; binary ones
/// require it.
pub fn arith(op: ArithOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement> {
    let need_b = || b.ok_or_else(|| Error::Parse(format!("{op:?} needs two operands")));
    match op {
        ArithOp::Add => a.add(need_b()?),
        ArithOp::Sub => a.sub(need_b()?),
        ArithOp::Mul => a.mul(need_b()?),
        ArithOp::Div => a.div(need_b()?),
        ArithOp::Neg => Ok(a.neg()),
        ArithOp::Inv => a.inv(),
    }
}

impl FieldElement {
    pub fn ctx(&self) -> FieldCtx {
        match self {
            FieldElement::Rational(_) => FieldCtx::Rational,
            FieldElement::Prime { p, .. } => FieldCtx::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Prime { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Prime { r, .. } => *r == 1,
        }
    }

    fn check_ctx(&self, other: &FieldElement) -> Result<()> {
        if self.ctx() == other.ctx() {
            Ok(())
        } else {
            Err(Error::CtxMismatch(self.ctx(), other.ctx()))
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Prime { p, r: a }, FieldElement::Prime { r: b, .. }) => {
                FieldElement::Prime {
                    p: *p,
                    r: add_mod(*a, *b, *p),
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        Ok(match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Prime { p, r: a }, FieldElement::Prime { r: b, .. }) => {
                FieldElement::Prime {
                    p: *p,
                    r: mul_mod(*a, *b, *p),
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        self.mul(&other.inv()?)
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime { p, r } => FieldElement::Prime {
                p: *p,
                r: if *r == 0 { 0 } else { p - r },
            },
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Prime { p, r } => FieldElement::Prime {
                p: *p,
                r: inv_mod(*r, *p),
            },
        })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.ctx().one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            sq = sq.mul(&sq)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Residue of a GF(p) element, `None` for rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Prime { r, .. } => Some(*r),
            FieldElement::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Prime { .. } => None,
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            FieldElement::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            FieldElement::Prime { r, .. } => write!(f, "{r}"),
        }
    }
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b; // both < 2^62, no overflow
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse via the extended Euclidean algorithm; `a` must be a nonzero residue.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i128) as u64
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = n.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> FieldElement {
        FieldCtx::Rational.parse_element(s).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(q("1/2").add(&q("1/3")).unwrap(), q("5/6"));
        assert_eq!(q("1/2").add(&q("1/3")).unwrap().to_string(), "5/6");
    }

    #[test]
    fn inverse_mod_seven() {
        let gf7 = FieldCtx::prime(7).unwrap();
        let three = gf7.from_integer(3);
        assert_eq!(three.inv().unwrap(), gf7.from_integer(5));
        assert_eq!(
            arith(ArithOp::Inv, &three, None).unwrap().residue(),
            Some(5)
        );
    }

    #[test]
    fn division_by_zero() {
        let x = q("3/4");
        assert!(matches!(x.div(&q("0")), Err(Error::DivisionByZero)));
        let gf7 = FieldCtx::prime(7).unwrap();
        assert!(matches!(
            gf7.from_integer(14).inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn integer_images() {
        let gf7 = FieldCtx::prime(7).unwrap();
        assert_eq!(gf7.from_integer(7).residue(), Some(0));
        assert_eq!(gf7.from_integer(10).residue(), Some(3));
        assert_eq!(gf7.from_integer(-1).residue(), Some(6));
        assert_eq!(FieldCtx::Rational.from_integer(-2).to_string(), "-2");
        assert_eq!(FieldCtx::Rational.from_integer(-2), q("-2/1"));
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let gf7 = FieldCtx::prime(7).unwrap();
        let gf11 = FieldCtx::prime(11).unwrap();
        assert!(matches!(
            gf7.one().add(&gf11.one()),
            Err(Error::CtxMismatch(..))
        ));
        assert!(matches!(
            gf7.one().mul(&q("1")),
            Err(Error::CtxMismatch(..))
        ));
    }

    #[test]
    fn prime_validation() {
        assert!(FieldCtx::prime(1_000_003).is_ok());
        assert!(matches!(
            FieldCtx::prime(1_000_001),
            Err(Error::NotPrime(_))
        ));
        assert!(matches!(FieldCtx::prime(1), Err(Error::NotPrime(_))));
        // 2^61 - 1 is a Mersenne prime
        assert!(FieldCtx::prime((1 << 61) - 1).is_ok());
        assert!(FieldCtx::prime(MAX_PRIME + 1).is_err());
    }

    #[test]
    fn large_prime_multiplication_does_not_overflow() {
        let p = (1u64 << 61) - 1;
        let f = FieldCtx::prime(p).unwrap();
        let a = f.from_integer(-1);
        assert!(a.mul(&a).unwrap().is_one());
        assert!(a.inv().unwrap().mul(&a).unwrap().is_one());
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(q("6/-4").to_string(), "-3/2");
        assert_eq!(q(" 8/4 ").to_string(), "2");
        let gf7 = FieldCtx::prime(7).unwrap();
        assert_eq!(gf7.parse_element("1/3").unwrap().residue(), Some(5));
        assert!(FieldCtx::Rational.parse_element("x").is_err());
        assert!(matches!(
            FieldCtx::Rational.parse_element("1/0"),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn ctx_parsing_and_json() {
        assert_eq!("rational".parse::<FieldCtx>().unwrap(), FieldCtx::Rational);
        assert_eq!(
            "prime:13".parse::<FieldCtx>().unwrap(),
            FieldCtx::Prime { p: 13 }
        );
        assert!("prime:12".parse::<FieldCtx>().is_err());
        assert_eq!(
            serde_json::to_string(&FieldCtx::Rational).unwrap(),
            r#"{"kind":"rational"}"#
        );
        assert_eq!(
            serde_json::to_string(&FieldCtx::Prime { p: 7 }).unwrap(),
            r#"{"kind":"prime","p":7}"#
        );
    }

    #[test]
    fn powers() {
        assert_eq!(q("2").pow(-3).unwrap(), q("1/8"));
        assert_eq!(q("2/3").pow(0).unwrap(), q("1"));
        let gf13 = FieldCtx::prime(13).unwrap();
        assert!(gf13.from_integer(3).pow(3).unwrap().is_one());
    }
}
