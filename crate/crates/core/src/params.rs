//! Half-integer labels and the two parametrizations of the Jacobi lattice.
//!
//! `(j, m, q)` and `(n, alpha, beta)` are related by
//! `n = j - m`, `alpha = m + q`, `beta = m - q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `3`, `-1`, `1/2`, `-3/2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad()),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => Ok(HalfInt::from_int(num)),
                    "2" => Ok(HalfInt::from_twice(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// The clause of the lattice conditions that a label failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    JAtLeastAbsM,
    JAtLeastAbsQ,
    TwoJNatural,
    JMinusMNatural,
    JMinusQNatural,
    NNatural,
    AlphaAtLeastMinusN,
    BetaAtLeastMinusN,
    AlphaPlusBetaAtLeastMinusN,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::JAtLeastAbsM => "j >= |m|",
            Condition::JAtLeastAbsQ => "j >= |q|",
            Condition::TwoJNatural => "2j in N",
            Condition::JMinusMNatural => "j - m in N",
            Condition::JMinusQNatural => "j - q in N",
            Condition::NNatural => "n in N",
            Condition::AlphaAtLeastMinusN => "alpha >= -n",
            Condition::BetaAtLeastMinusN => "beta >= -n",
            Condition::AlphaPlusBetaAtLeastMinusN => "alpha + beta >= -n",
        };
        f.write_str(s)
    }
}

/// A validated `(j, m, q)` label of an algebraic Jacobi function.
///
/// Ordered by `j`, then `m`, then `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JmqTriple {
    j: HalfInt,
    m: HalfInt,
    q: HalfInt,
}

/// Checks every lattice condition, reporting the first one that fails.
pub fn check_jmq(two_j: i64, two_m: i64, two_q: i64) -> std::result::Result<(), Condition> {
    if two_j < 0 {
        return Err(Condition::TwoJNatural);
    }
    if two_j < two_m.abs() {
        return Err(Condition::JAtLeastAbsM);
    }
    if two_j < two_q.abs() {
        return Err(Condition::JAtLeastAbsQ);
    }
    if (two_j - two_m) % 2 != 0 {
        return Err(Condition::JMinusMNatural);
    }
    if (two_j - two_q) % 2 != 0 {
        return Err(Condition::JMinusQNatural);
    }
    Ok(())
}

/// Builds a label from doubled values, validating every lattice condition.
pub fn make_jmq(two_j: i64, two_m: i64, two_q: i64) -> Result<JmqTriple> {
    check_jmq(two_j, two_m, two_q).map_err(Error::ConditionViolation)?;
    Ok(JmqTriple {
        j: HalfInt::from_twice(two_j),
        m: HalfInt::from_twice(two_m),
        q: HalfInt::from_twice(two_q),
    })
}

impl JmqTriple {
    pub fn new(j: HalfInt, m: HalfInt, q: HalfInt) -> Result<Self> {
        make_jmq(j.twice(), m.twice(), q.twice())
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn m(&self) -> HalfInt {
        self.m
    }

    pub fn q(&self) -> HalfInt {
        self.q
    }

    /// Shifts all three labels by doubled offsets; `None` if the result is off the lattice.
    pub fn shifted(&self, dj: i64, dm: i64, dq: i64) -> Option<JmqTriple> {
        make_jmq(
            self.j.twice() + dj,
            self.m.twice() + dm,
            self.q.twice() + dq,
        )
        .ok()
    }

    /// Every valid label with `2j <= two_j_max`, in ascending order.
    pub fn window(two_j_max: i64) -> Vec<JmqTriple> {
        let mut out = Vec::new();
        for two_j in 0..=two_j_max.max(-1) {
            for two_m in (-two_j..=two_j).step_by(2) {
                for two_q in (-two_j..=two_j).step_by(2) {
                    out.push(JmqTriple {
                        j: HalfInt::from_twice(two_j),
                        m: HalfInt::from_twice(two_m),
                        q: HalfInt::from_twice(two_q),
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for JmqTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "j={},m={},q={}", self.j, self.m, self.q)
    }
}

impl FromStr for JmqTriple {
    type Err = Error;

    /// Accepts `j=a/2,m=b/2,q=c/2` (any half-integer literal on the right of `=`)
    /// or the bare form `J,M,Q`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three labels in {s:?}")));
        }
        let mut vals = [HalfInt::ZERO; 3];
        for (slot, (part, key)) in vals.iter_mut().zip(parts.iter().zip(["j", "m", "q"])) {
            let lit = match part.split_once('=') {
                Some((k, v)) if k.trim() == key => v,
                Some((k, _)) => {
                    return Err(Error::Parse(format!("expected label {key}, found {k:?}")))
                }
                None => part,
            };
            *slot = lit.parse()?;
        }
        JmqTriple::new(vals[0], vals[1], vals[2])
    }
}

#[derive(Serialize, Deserialize)]
struct JmqWire {
    two_j: i64,
    two_m: i64,
    two_q: i64,
}

impl Serialize for JmqTriple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JmqWire {
            two_j: self.j.twice(),
            two_m: self.m.twice(),
            two_q: self.q.twice(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for JmqTriple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = JmqWire::deserialize(d)?;
        make_jmq(w.two_j, w.two_m, w.two_q).map_err(serde::de::Error::custom)
    }
}

/// Classical Jacobi parameters `(n, alpha, beta)` restricted to the integer lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NabTriple {
    n: i64,
    alpha: i64,
    beta: i64,
}

impl NabTriple {
    pub fn new(n: i64, alpha: i64, beta: i64) -> Result<Self> {
        let fail = |c| Err(Error::ConditionViolation(c));
        if n < 0 {
            return fail(Condition::NNatural);
        }
        if alpha < -n {
            return fail(Condition::AlphaAtLeastMinusN);
        }
        if beta < -n {
            return fail(Condition::BetaAtLeastMinusN);
        }
        if alpha + beta < -n {
            return fail(Condition::AlphaPlusBetaAtLeastMinusN);
        }
        Ok(NabTriple { n, alpha, beta })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }
}

/// `j = n + (alpha+beta)/2`, `m = (alpha+beta)/2`, `q = (alpha-beta)/2`.
pub fn jmq_from_nab(t: NabTriple) -> Result<JmqTriple> {
    let t = NabTriple::new(t.n, t.alpha, t.beta)?;
    make_jmq(
        2 * t.n + t.alpha + t.beta,
        t.alpha + t.beta,
        t.alpha - t.beta,
    )
}

/// `n = j - m`, `alpha = m + q`, `beta = m - q`.
pub fn nab_from_jmq(t: JmqTriple) -> NabTriple {
    let (j, m, q) = (t.j.twice(), t.m.twice(), t.q.twice());
    NabTriple {
        n: (j - m) / 2,
        alpha: (m + q) / 2,
        beta: (m - q) / 2,
    }
}

impl PartialOrd for NabTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NabTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.alpha, self.beta).cmp(&(other.n, other.alpha, other.beta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_jmq_examples() {
        let t = make_jmq(2, 0, 0).unwrap();
        assert_eq!((t.j(), t.m(), t.q()), (HalfInt::ONE, HalfInt::ZERO, HalfInt::ZERO));
        let t = make_jmq(1, 1, 1).unwrap();
        assert_eq!((t.j(), t.m(), t.q()), (HalfInt::HALF, HalfInt::HALF, HalfInt::HALF));
        assert_eq!(
            make_jmq(1, 2, 0),
            Err(Error::ConditionViolation(Condition::JAtLeastAbsM))
        );
    }

    #[test]
    fn magnitude_violations() {
        assert_eq!(
            make_jmq(1, 3, 1),
            Err(Error::ConditionViolation(Condition::JAtLeastAbsM))
        );
        assert_eq!(
            make_jmq(2, 0, -4),
            Err(Error::ConditionViolation(Condition::JAtLeastAbsQ))
        );
        assert_eq!(
            make_jmq(-2, 0, 0),
            Err(Error::ConditionViolation(Condition::TwoJNatural))
        );
        assert_eq!(
            make_jmq(2, 0, 1),
            Err(Error::ConditionViolation(Condition::JMinusQNatural))
        );
    }

    #[test]
    fn nab_conversions() {
        let cases = [
            ((0, 0, 0), (0, 0, 0)),
            ((1, 0, 0), (2, 0, 0)),
            ((0, 1, 0), (1, 1, 1)),
        ];
        for ((n, a, b), (tj, tm, tq)) in cases {
            let t = jmq_from_nab(NabTriple::new(n, a, b).unwrap()).unwrap();
            assert_eq!(t, make_jmq(tj, tm, tq).unwrap());
        }
        let nab = nab_from_jmq(make_jmq(2, 2, 0).unwrap());
        assert_eq!((nab.n(), nab.alpha(), nab.beta()), (0, 1, 1));
        let nab = nab_from_jmq(make_jmq(5, 3, 1).unwrap());
        assert_eq!((nab.n(), nab.alpha(), nab.beta()), (1, 2, 1));
    }

    #[test]
    fn nab_conditions() {
        assert!(NabTriple::new(-1, 0, 0).is_err());
        assert!(NabTriple::new(1, -2, 0).is_err());
        assert!(NabTriple::new(1, 0, -2).is_err());
        assert!(NabTriple::new(2, -1, -2).is_err());
        assert!(NabTriple::new(2, -1, -1).is_ok());
    }

    #[test]
    fn round_trip_exhaustive() {
        for t in JmqTriple::window(10) {
            assert_eq!(jmq_from_nab(nab_from_jmq(t)).unwrap(), t);
        }
    }

    #[test]
    fn lattice_cardinality() {
        for two_j in 0..=6i64 {
            let mut count = 0;
            for two_m in -10..=10 {
                for two_q in -10..=10 {
                    if make_jmq(two_j, two_m, two_q).is_ok() {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, (two_j + 1) * (two_j + 1));
        }
    }

    #[test]
    fn every_admissible_nab_maps_onto_lattice() {
        for n in 0..6 {
            for alpha in -8..8 {
                for beta in -8..8 {
                    if let Ok(nab) = NabTriple::new(n, alpha, beta) {
                        let t = jmq_from_nab(nab).unwrap();
                        assert_eq!(nab_from_jmq(t), nab);
                    }
                }
            }
        }
    }

    #[test]
    fn text_forms() {
        let t: JmqTriple = "j=5/2,m=3/2,q=1/2".parse().unwrap();
        assert_eq!(t, make_jmq(5, 3, 1).unwrap());
        assert_eq!(t.to_string(), "j=5/2,m=3/2,q=1/2");
        assert_eq!(make_jmq(2, 0, -2).unwrap().to_string(), "j=1,m=0,q=-1");
        let t: JmqTriple = "1, -1, 0".parse().unwrap();
        assert_eq!(t, make_jmq(2, -2, 0).unwrap());
        assert!("1,2".parse::<JmqTriple>().is_err());
        assert!("j=1,q=0,m=0".parse::<JmqTriple>().is_err());
        assert_eq!("-3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-3));
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn json_form() {
        let t = make_jmq(3, -1, 1).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"two_j":3,"two_m":-1,"two_q":1}"#);
        assert_eq!(serde_json::from_str::<JmqTriple>(&s).unwrap(), t);
        assert!(serde_json::from_str::<JmqTriple>(r#"{"two_j":1,"two_m":3,"two_q":1}"#).is_err());
    }
}
