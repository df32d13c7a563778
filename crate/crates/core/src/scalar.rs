//! Exact scalars of the form `sum_k c_k * sqrt(r_k)` with rational `c_k` and
//! distinct square-free integers `r_k >= 1`.
//!
//! Square roots of distinct square-free integers are linearly independent over
//! the rationals, so the canonical term map decides equality exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a plain decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole}{frac}");
        let num = BigInt::from_str(&digits).map_err(|_| bad())?;
        return Ok(Rational::new(num, BigInt::from(10).pow(frac.len() as u32)));
    }
    Rational::from_str(s).map_err(|_| bad())
}

/// Writes `n = outer^2 * inner` with `inner` square-free.
pub fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    if let Some(small) = n.to_u64() {
        let (o, i) = square_free_split_u64(small);
        return (BigUint::from(o), BigUint::from(i));
    }
    let mut rest = n.clone();
    let mut outer = BigUint::one();
    let mut inner = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            outer *= &p;
        }
        if (&rest % &p).is_zero() {
            rest /= &p;
            inner *= &p;
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    (outer, inner * rest)
}

fn square_free_split_u64(mut rest: u64) -> (u64, u64) {
    let mut outer = 1u64;
    let mut inner = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            outer *= p;
        }
        if rest % p == 0 {
            rest /= p;
            inner *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (outer, inner * rest)
}

/// An element of the rational span of square roots of square-free integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<BigUint, Rational>,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        RadicalScalar::default()
    }

    pub fn one() -> Self {
        RadicalScalar::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(BigUint::one(), c);
        }
        RadicalScalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        RadicalScalar::from_rational(int(n))
    }

    /// `coeff * sqrt(radicand)` in canonical form.
    pub fn radical(coeff: Rational, radicand: &Rational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::NegativeRadicand(radicand.to_string()));
        }
        if coeff.is_zero() || radicand.is_zero() {
            return Ok(RadicalScalar::zero());
        }
        // sqrt(a/b) = sqrt(a*b)/b
        let a = radicand.numer().magnitude();
        let b = radicand.denom().magnitude();
        let (outer, inner) = square_free_split(&(a * b));
        let c = coeff * Rational::new(uint_to_int(outer), uint_to_int(b.clone()));
        let mut terms = BTreeMap::new();
        terms.insert(inner, c);
        Ok(RadicalScalar { terms })
    }

    /// `sqrt(radicand)`.
    pub fn sqrt(radicand: &Rational) -> Result<Self> {
        RadicalScalar::radical(Rational::one(), radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The rational value, if there is no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    /// `(coeff, radicand)` when the scalar is a single nonzero term.
    pub fn single_term(&self) -> Option<(&Rational, &BigUint)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(r, c)| (c, r))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RadicalScalar::zero();
        }
        RadicalScalar {
            terms: self.terms.iter().map(|(r, v)| (r.clone(), v * c)).collect(),
        }
    }

    /// Inverse of a nonzero single-term scalar: `1/(c sqrt r) = sqrt(r) / (c r)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (c, r) = self.single_term().ok_or(Error::UnsupportedDivisor)?;
        let mut terms = BTreeMap::new();
        terms.insert(
            r.clone(),
            Rational::one() / (c * Rational::from_integer(uint_to_int(r.clone()))),
        );
        Ok(RadicalScalar { terms })
    }

    pub fn checked_div(&self, rhs: &RadicalScalar) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| c.to_f64().unwrap_or(f64::NAN) * r.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }

    fn add_term(&mut self, radicand: BigUint, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(radicand).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Recomputes the canonical form from scratch.
    pub fn normalized(&self) -> Self {
        let mut out = RadicalScalar::zero();
        for (r, c) in &self.terms {
            let (outer, inner) = square_free_split(r);
            out.add_term(inner, c * Rational::from_integer(uint_to_int(outer)));
        }
        out
    }

    /// Whether every stored radicand is square-free and every coefficient nonzero.
    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|(r, c)| !c.is_zero() && !r.is_zero() && square_free_split(r).0.is_one())
    }
}

fn uint_to_int(u: BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, u)
}

impl From<Rational> for RadicalScalar {
    fn from(c: Rational) -> Self {
        RadicalScalar::from_rational(c)
    }
}

impl Add for &RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(r.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        for (r, c) in &rhs.terms {
            out.add_term(r.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = RadicalScalar::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &rhs.terms {
                // sqrt(r1 r2) = g sqrt((r1/g)(r2/g)); the cofactors are coprime and square-free
                let g = r1.gcd(r2);
                let radicand = (r1 / &g) * (r2 / &g);
                out.add_term(radicand, c1 * c2 * Rational::from_integer(uint_to_int(g)));
            }
        }
        out
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RadicalScalar {
            type Output = RadicalScalar;
            fn $m(self, rhs: RadicalScalar) -> RadicalScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        -&self
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (r, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let c = c.abs();
            if r.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "√{r}")?;
            } else {
                write!(f, "{c}·√{r}")?;
            }
        }
        Ok(())
    }
}

/// JSON form `[["radicand", "num/den"], ...]`.
/// Rational values are written as a plain string, others as `[[radicand, coeff], ...]`.
impl Serialize for RadicalScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if let Some(c) = self.as_rational() {
            return c.to_string().serialize(s);
        }
        let wire: Vec<[String; 2]> = self
            .terms
            .iter()
            .map(|(r, c)| [r.to_string(), c.to_string()])
            .collect();
        wire.serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarWire {
    Rational(String),
    Terms(Vec<[String; 2]>),
}

/// Accepts the term list `[[radicand, coeff], ...]` or a plain rational string.
impl<'de> Deserialize<'de> for RadicalScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = match ScalarWire::deserialize(d)? {
            ScalarWire::Rational(c) => {
                return parse_rational(&c).map(RadicalScalar::from_rational).map_err(D::Error::custom)
            }
            ScalarWire::Terms(t) => t,
        };
        let mut out = RadicalScalar::zero();
        for [r, c] in wire {
            let r = parse_rational(&r).map_err(D::Error::custom)?;
            let c = parse_rational(&c).map_err(D::Error::custom)?;
            let term = RadicalScalar::radical(c, &r).map_err(D::Error::custom)?;
            out = &out + &term;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> RadicalScalar {
        RadicalScalar::sqrt(&int(n)).unwrap()
    }

    fn single(c: Rational, r: u64) -> RadicalScalar {
        let mut terms = BTreeMap::new();
        terms.insert(BigUint::from(r), c);
        RadicalScalar { terms }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(RadicalScalar::radical(int(1), &int(8)).unwrap(), single(int(2), 2));
        assert!(RadicalScalar::radical(int(1), &int(0)).unwrap().is_zero());
        let r = RadicalScalar::radical(int(1), &rat(9, 4)).unwrap();
        assert_eq!(r, single(rat(3, 2), 1));
        assert_eq!(r.as_rational(), Some(rat(3, 2)));
        assert_eq!(
            RadicalScalar::radical(int(1), &int(-2)),
            Err(Error::NegativeRadicand("-2".into()))
        );
        let r = RadicalScalar::sqrt(&rat(2, 5)).unwrap();
        assert_eq!(r, single(rat(1, 5), 10));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&s(2) * &s(2), RadicalScalar::from_int(2));
        assert_eq!(&s(2) * &s(3), s(6));
        assert_eq!(&s(6) * &s(10), single(int(2), 15));
        assert!((&s(2) - &s(2)).is_zero());
        assert!(!(&s(2) - &s(3)).is_zero());
        let two_root2 = RadicalScalar::radical(int(2), &int(2)).unwrap();
        assert!((&two_root2 - &s(8)).is_zero());
    }

    #[test]
    fn inverse_single_term() {
        let x = RadicalScalar::radical(rat(3, 2), &int(6)).unwrap();
        assert_eq!(&x * &x.inverse().unwrap(), RadicalScalar::one());
        assert_eq!(RadicalScalar::zero().inverse(), Err(Error::DivisionByZero));
        assert_eq!((&s(2) + &s(3)).inverse(), Err(Error::UnsupportedDivisor));
    }

    #[test]
    fn display_and_f64() {
        let x = &RadicalScalar::radical(rat(-1, 2), &int(3)).unwrap() + &RadicalScalar::from_int(2);
        assert_eq!(x.to_string(), "2 - 1/2·√3");
        assert!((x.to_f64() - (2.0 - 0.5 * 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn big_radicands_split() {
        let n = BigUint::from(2u64).pow(70) * BigUint::from(3u32 * 5 * 5 * 7);
        let (o, i) = square_free_split(&n);
        assert_eq!(i, BigUint::from(21u32));
        assert_eq!(&o * &o * &i, n);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        for bad in ["", "1.", "x", "1/0x", "0.5.5", "1.-5"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn json_form() {
        let x = &RadicalScalar::radical(rat(3, 4), &int(2)).unwrap() + &RadicalScalar::from_int(-1);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"[["1","-1"],["2","3/4"]]"#);
        assert_eq!(serde_json::from_str::<RadicalScalar>(&j).unwrap(), x);
        // non-canonical input is canonicalized
        let y: RadicalScalar = serde_json::from_str(r#"[["8","1"],["2","-2"]]"#).unwrap();
        assert!(y.is_zero());
        let z: RadicalScalar = serde_json::from_str(r#""-3/4""#).unwrap();
        assert_eq!(z, RadicalScalar::from_rational(rat(-3, 4)));
        assert_eq!(serde_json::to_string(&z).unwrap(), r#""-3/4""#);
        assert!(serde_json::from_str::<RadicalScalar>(r#""x""#).is_err());
    }

    fn arb_scalar() -> impl Strategy<Value = RadicalScalar> {
        prop::collection::vec((-6i64..7, 1i64..5, 0i64..40), 0..4).prop_map(|ts| {
            ts.into_iter().fold(RadicalScalar::zero(), |acc, (n, d, r)| {
                &acc + &RadicalScalar::radical(rat(n, d), &int(r)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert!((&a * &b).is_canonical());
        }

        #[test]
        fn normalization_idempotent(c in -50i64..50, d in 1i64..30, r in 0i64..2000, rd in 1i64..50) {
            let x = RadicalScalar::radical(rat(c, d), &rat(r, rd)).unwrap();
            prop_assert!(x.is_canonical());
            prop_assert_eq!(x.normalized(), x.clone());
            let expect = (c as f64 / d as f64) * (r as f64 / rd as f64).sqrt();
            prop_assert!((x.to_f64() - expect).abs() <= 1e-12 * expect.abs().max(1.0));
        }
    }
}
