//! Functions `(1-x)^(e_minus/2) (1+x)^(e_plus/2) p(x)` with rational `p`.
//!
//! Every operator in this crate maps such functions to sums of such functions,
//! so derivatives, products and integrals are all computed exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::params::JmqTriple;
use crate::scalar::{int, parse_rational, RadicalScalar, Rational};

mod poly {
    use super::*;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let z = Rational::zero();
        let out = (0..n)
            .map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z))
            .collect();
        trim(out)
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, y) in b.iter().enumerate() {
                out[i + k] += x * y;
            }
        }
        trim(out)
    }

    pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
        if c.is_zero() {
            return Vec::new();
        }
        a.iter().map(|x| x * c).collect()
    }

    /// Multiplies by `(1 + s x)`, `s = ±1`.
    pub fn mul_linear(a: &[Rational], s: i64) -> Vec<Rational> {
        if a.is_empty() {
            return Vec::new();
        }
        let s = int(s);
        let mut out = a.to_vec();
        out.push(Rational::zero());
        for k in (1..out.len()).rev() {
            let prev = &a[k - 1] * &s;
            out[k] += prev;
        }
        trim(out)
    }

    pub fn mul_linear_pow(a: &[Rational], s: i64, k: i64) -> Vec<Rational> {
        (0..k).fold(a.to_vec(), |acc, _| mul_linear(&acc, s))
    }

    /// Exact quotient by `(1 + s x)`, or `None` if `x = -s` is not a root.
    pub fn div_linear(a: &[Rational], s: i64) -> Option<Vec<Rational>> {
        if a.is_empty() {
            return Some(Vec::new());
        }
        // p(x) = (1 + s x) r(x): synthetic division at root x0 = -s.
        let x0 = int(-s);
        let n = a.len() - 1;
        let mut b = vec![Rational::zero(); n];
        let mut carry = Rational::zero();
        for k in (0..=n).rev() {
            let v = &a[k] + &carry * &x0;
            if k == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                b[k - 1] = v.clone();
            }
            carry = v;
        }
        // b is the quotient by (x - x0); (1 + s x) = s (x - x0)
        let inv_s = int(s);
        Some(trim(b.iter().map(|c| c * &inv_s).collect()))
    }

    pub fn derivative(a: &[Rational]) -> Vec<Rational> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn eval_f64(a: &[Rational], x: f64) -> f64 {
        a.iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval(a: &[Rational], x: &Rational) -> Rational {
        a.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Integral over [-1, 1].
    pub fn integrate_sym(a: &[Rational]) -> Rational {
        a.iter()
            .enumerate()
            .filter(|(k, _)| k % 2 == 0)
            .map(|(k, c)| c * Rational::new(2.into(), (k as i64 + 1).into()))
            .sum()
    }
}

/// `(1-x)^(e_minus/2) (1+x)^(e_plus/2) * poly(x)`, always held in canonical form:
/// `poly` has no root at `x = ±1` (the factors are absorbed into the exponents),
/// and the zero function has empty `poly` and zero exponents.
///
/// Negative exponents are allowed as intermediate values; public constructors
/// that promise a regular function go through [`WeightedPoly::normalize_exponents`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedPoly {
    e_minus: i64,
    e_plus: i64,
    poly: Vec<Rational>,
}

impl WeightedPoly {
    /// Builds and normalizes; fails if a negative exponent cannot be cleared.
    pub fn new(e_minus: i64, e_plus: i64, poly: Vec<Rational>) -> Result<Self> {
        WeightedPoly::raw(e_minus, e_plus, poly).normalize_exponents()
    }

    /// Canonical form without the regularity requirement (poles allowed).
    pub fn raw(e_minus: i64, e_plus: i64, poly: Vec<Rational>) -> Self {
        WeightedPoly {
            e_minus,
            e_plus,
            poly: poly::trim(poly),
        }
        .canonical()
    }

    pub fn zero() -> Self {
        WeightedPoly {
            e_minus: 0,
            e_plus: 0,
            poly: Vec::new(),
        }
    }

    pub fn one() -> Self {
        WeightedPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        WeightedPoly::polynomial(vec![c])
    }

    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        WeightedPoly::raw(0, 0, coeffs)
    }

    /// The pure weight `(1-x)^(e_minus/2) (1+x)^(e_plus/2)`.
    pub fn weight(e_minus: i64, e_plus: i64) -> Self {
        WeightedPoly::raw(e_minus, e_plus, vec![Rational::one()])
    }

    pub fn x() -> Self {
        WeightedPoly::polynomial(vec![Rational::zero(), Rational::one()])
    }

    pub fn e_minus(&self) -> i64 {
        self.e_minus
    }

    pub fn e_plus(&self) -> i64 {
        self.e_plus
    }

    pub fn poly(&self) -> &[Rational] {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    /// Parity class of the two weights; functions in different classes never combine
    /// additively into a single weighted polynomial.
    pub fn parity(&self) -> (u8, u8) {
        (
            self.e_minus.rem_euclid(2) as u8,
            self.e_plus.rem_euclid(2) as u8,
        )
    }

    pub fn is_regular(&self) -> bool {
        self.e_minus >= 0 && self.e_plus >= 0
    }

    fn canonical(mut self) -> Self {
        if self.poly.is_empty() {
            return WeightedPoly::zero();
        }
        while let Some(p) = poly::div_linear(&self.poly, -1) {
            self.poly = p;
            self.e_minus += 2;
        }
        while let Some(p) = poly::div_linear(&self.poly, 1) {
            self.poly = p;
            self.e_plus += 2;
        }
        self
    }

    /// Clears negative exponents by dividing the polynomial part by `(1∓x)`;
    /// fails with `NotDivisible` when the function has a genuine endpoint pole.
    pub fn normalize_exponents(&self) -> Result<Self> {
        let w = self.clone().canonical();
        if w.e_minus < 0 {
            return Err(Error::NotDivisible { sign: '-' });
        }
        if w.e_plus < 0 {
            return Err(Error::NotDivisible { sign: '+' });
        }
        Ok(w)
    }

    pub fn add(&self, other: &WeightedPoly) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.parity() != other.parity() {
            return Err(Error::ParityMismatch);
        }
        let em = self.e_minus.min(other.e_minus);
        let ep = self.e_plus.min(other.e_plus);
        let lift = |w: &WeightedPoly| {
            let p = poly::mul_linear_pow(&w.poly, -1, (w.e_minus - em) / 2);
            poly::mul_linear_pow(&p, 1, (w.e_plus - ep) / 2)
        };
        Ok(WeightedPoly::raw(em, ep, poly::add(&lift(self), &lift(other))))
    }

    pub fn sub(&self, other: &WeightedPoly) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &WeightedPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return WeightedPoly::zero();
        }
        WeightedPoly::raw(
            self.e_minus + other.e_minus,
            self.e_plus + other.e_plus,
            poly::mul(&self.poly, &other.poly),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return WeightedPoly::zero();
        }
        WeightedPoly {
            e_minus: self.e_minus,
            e_plus: self.e_plus,
            poly: poly::scale(&self.poly, c),
        }
    }

    /// Exact `d/dx` by the product rule on both weights.
    pub fn differentiate(&self) -> Self {
        if self.is_zero() {
            return WeightedPoly::zero();
        }
        let half_m = Rational::new(self.e_minus.into(), 2.into());
        let half_p = Rational::new(self.e_plus.into(), 2.into());
        let p = &self.poly;
        let t1 = poly::scale(&poly::mul_linear(p, 1), &-half_m);
        let t2 = poly::scale(&poly::mul_linear(p, -1), &half_p);
        let t3 = poly::mul_linear(&poly::mul_linear(&poly::derivative(p), 1), -1);
        WeightedPoly::raw(
            self.e_minus - 2,
            self.e_plus - 2,
            poly::add(&poly::add(&t1, &t2), &t3),
        )
    }

    /// `x -> -x`.
    pub fn reflect(&self) -> Self {
        WeightedPoly {
            e_minus: self.e_plus,
            e_plus: self.e_minus,
            poly: self
                .poly
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// The function as a plain polynomial, if both weights are even and non-negative.
    pub fn expand(&self) -> Option<Vec<Rational>> {
        if self.e_minus < 0 || self.e_plus < 0 || self.e_minus % 2 != 0 || self.e_plus % 2 != 0 {
            return None;
        }
        let p = poly::mul_linear_pow(&self.poly, -1, self.e_minus / 2);
        Some(poly::mul_linear_pow(&p, 1, self.e_plus / 2))
    }

    /// Exact integral over `[-1, 1]`; the integrand must be a polynomial.
    pub fn integrate_exact(&self) -> Result<Rational> {
        let p = self.expand().ok_or(Error::NonPolynomialIntegrand {
            e_minus: self.e_minus,
            e_plus: self.e_plus,
        })?;
        Ok(poly::integrate_sym(&p))
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&x) || x.is_nan() {
            return Err(Error::OutOfDomain(x));
        }
        if self.is_zero() {
            return Ok(0.0);
        }
        let factor = |base: f64, e: i64| -> Result<f64> {
            if e == 0 {
                Ok(1.0)
            } else if base == 0.0 {
                if e < 0 {
                    Err(Error::PoleAtEndpoint(x))
                } else {
                    Ok(0.0)
                }
            } else {
                Ok(base.sqrt().powi(e as i32))
            }
        };
        let wm = factor(1.0 - x, self.e_minus)?;
        let wp = factor(1.0 + x, self.e_plus)?;
        Ok(wm * wp * poly::eval_f64(&self.poly, x))
    }
}

impl WeightedPoly {
    /// Exact value at a rational point of `[-1, 1]`.
    pub fn evaluate_exact(&self, x: &Rational) -> Result<RadicalScalar> {
        let one = Rational::one();
        if *x > one || *x < -one.clone() {
            return Err(Error::OutOfDomain(x.to_f64().unwrap_or(f64::NAN)));
        }
        if self.is_zero() {
            return Ok(RadicalScalar::zero());
        }
        let factor = |base: Rational, e: i64| -> Result<RadicalScalar> {
            if base.is_zero() {
                return match e {
                    0 => Ok(RadicalScalar::one()),
                    e if e > 0 => Ok(RadicalScalar::zero()),
                    _ => Err(Error::PoleAtEndpoint(x.to_f64().unwrap_or(f64::NAN))),
                };
            }
            // base^(e/2) = sqrt(base^e)
            RadicalScalar::sqrt(&num_traits::pow::pow(base, e.unsigned_abs() as usize))
                .and_then(|r| if e < 0 { r.inverse() } else { Ok(r) })
        };
        let wm = factor(&one - x, self.e_minus)?;
        let wp = factor(&one + x, self.e_plus)?;
        Ok((&wm * &wp).scale(&poly::eval(&self.poly, x)))
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.e_minus != 0 {
            write!(f, "(1-x)^({}/2)·", self.e_minus)?;
        }
        if self.e_plus != 0 {
            write!(f, "(1+x)^({}/2)·", self.e_plus)?;
        }
        f.write_str("[")?;
        for (k, c) in self.poly.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[derive(Serialize, Deserialize)]
struct WeightedPolyWire {
    e_minus: i64,
    e_plus: i64,
    poly: Vec<String>,
}

impl Serialize for WeightedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightedPolyWire {
            e_minus: self.e_minus,
            e_plus: self.e_plus,
            poly: self.poly.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WeightedPolyWire::deserialize(d)?;
        let poly = w
            .poly
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        WeightedPoly::new(w.e_minus, w.e_plus, poly).map_err(D::Error::custom)
    }
}

/// A finite sum `sum_k sqrt(r_k) * w_k(x)`, keyed by radicand and weight parity.
///
/// Functions with distinct keys are linearly independent, so the canonical map
/// decides equality of values exactly.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FunctionSum {
    parts: BTreeMap<(BigUint, (u8, u8)), WeightedPoly>,
}

impl FunctionSum {
    pub fn zero() -> Self {
        FunctionSum::default()
    }

    pub fn from_scaled(scale: &RadicalScalar, body: &WeightedPoly) -> Self {
        let mut out = FunctionSum::zero();
        out.add_scaled(scale, body);
        out
    }

    pub fn add_scaled(&mut self, scale: &RadicalScalar, body: &WeightedPoly) {
        if body.is_zero() {
            return;
        }
        for (r, c) in scale.terms() {
            let key = (r.clone(), body.parity());
            let term = body.scale(c);
            let entry = self.parts.entry(key.clone()).or_insert_with(WeightedPoly::zero);
            *entry = entry.add(&term).expect("parity keyed");
            if entry.is_zero() {
                self.parts.remove(&key);
            }
        }
    }

    pub fn add(&self, other: &FunctionSum) -> FunctionSum {
        let mut out = self.clone();
        for ((r, _), w) in &other.parts {
            out.add_scaled(&RadicalScalar::sqrt(&Rational::from_integer(r.clone().into())).expect("positive"), w);
        }
        out
    }

    pub fn scaled(&self, c: &RadicalScalar) -> FunctionSum {
        let mut out = FunctionSum::zero();
        for ((r, _), w) in &self.parts {
            let root = RadicalScalar::sqrt(&Rational::from_integer(r.clone().into())).expect("positive");
            out.add_scaled(&(&root * c), w);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&BigUint, &WeightedPoly)> {
        self.parts.iter().map(|((r, _), w)| (r, w))
    }

    /// The sum as a single rational weighted polynomial, when it is one.
    pub fn as_weighted_poly(&self) -> Option<WeightedPoly> {
        match self.parts.len() {
            0 => Some(WeightedPoly::zero()),
            1 => {
                let ((r, _), w) = self.parts.iter().next()?;
                r.is_one().then(|| w.clone())
            }
            _ => None,
        }
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        self.parts.iter().try_fold(0.0, |acc, ((r, _), w)| {
            Ok(acc + r.to_f64().unwrap_or(f64::NAN).sqrt() * w.evaluate(x)?)
        })
    }
}

#[derive(Serialize, Deserialize)]
struct FunctionPartWire {
    radicand: String,
    body: WeightedPoly,
}

/// Written as `[{"radicand": "r", "body": ...}, ...]`.
impl Serialize for FunctionSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire: Vec<FunctionPartWire> = self
            .parts()
            .map(|(r, w)| FunctionPartWire {
                radicand: r.to_string(),
                body: w.clone(),
            })
            .collect();
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FunctionSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire: Vec<FunctionPartWire> = Vec::deserialize(d)?;
        let mut out = FunctionSum::zero();
        for part in wire {
            let r = parse_rational(&part.radicand).map_err(D::Error::custom)?;
            out.add_scaled(&RadicalScalar::sqrt(&r).map_err(D::Error::custom)?, &part.body);
        }
        Ok(out)
    }
}

/// A scaled weighted polynomial carrying the label of the Jacobi function it claims to be.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledFunction {
    pub label: JmqTriple,
    pub scale: RadicalScalar,
    pub body: WeightedPoly,
}

impl LabeledFunction {
    pub fn value(&self) -> FunctionSum {
        FunctionSum::from_scaled(&self.scale, &self.body)
    }

    /// Exact equality of represented values, ignoring labels.
    pub fn same_value(&self, other: &LabeledFunction) -> bool {
        self.value() == other.value()
    }

    pub fn scaled(&self, c: &RadicalScalar) -> LabeledFunction {
        LabeledFunction {
            label: self.label,
            scale: &self.scale * c,
            body: self.body.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero() || self.body.is_zero()
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        Ok(self.scale.to_f64() * self.body.evaluate(x)?)
    }

    pub fn evaluate_exact(&self, x: &Rational) -> Result<RadicalScalar> {
        Ok(&self.scale * &self.body.evaluate_exact(x)?)
    }

    /// The value as a rational weighted polynomial, when the scale is rational.
    pub fn as_weighted_poly(&self) -> Option<WeightedPoly> {
        self.value().as_weighted_poly()
    }
}

/// Result of applying an operator: a labelled function, or exactly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Function(LabeledFunction),
    Zero,
}

impl Image {
    pub fn value(&self) -> FunctionSum {
        match self {
            Image::Function(f) => f.value(),
            Image::Zero => FunctionSum::zero(),
        }
    }

    pub fn function(&self) -> Option<&LabeledFunction> {
        match self {
            Image::Function(f) => Some(f),
            Image::Zero => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Image::Function(f) => f.is_zero(),
            Image::Zero => true,
        }
    }
}
