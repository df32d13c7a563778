//! Analysis and synthesis between functions on `[-1, 1]` and coefficient vectors
//! over the labels `j` at fixed `(m, q)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::{FunctionSum, LabeledFunction, WeightedPoly};
use crate::jacobi::ajf;
use crate::params::{check_jmq, make_jmq, Condition, JmqTriple};
use crate::scalar::{rat, RadicalScalar, Rational};

/// Coefficients `c_j` for fixed `(m, q)`, keyed by `2j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    pub two_m: i64,
    pub two_q: i64,
    pub entries: BTreeMap<i64, RadicalScalar>,
}

#[derive(Serialize, Deserialize)]
struct CoefficientWire {
    two_m: i64,
    two_q: i64,
    entries: Vec<(i64, RadicalScalar)>,
}

impl Serialize for CoefficientVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoefficientWire {
            two_m: self.two_m,
            two_q: self.two_q,
            entries: self.entries.iter().map(|(j, c)| (*j, c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoefficientVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CoefficientWire::deserialize(d)?;
        let mut v = CoefficientVector::new(w.two_m, w.two_q);
        for (two_j, c) in w.entries {
            v.insert(two_j, c).map_err(serde::de::Error::custom)?;
        }
        Ok(v)
    }
}

impl CoefficientVector {
    pub fn new(two_m: i64, two_q: i64) -> Self {
        CoefficientVector {
            two_m,
            two_q,
            entries: BTreeMap::new(),
        }
    }

    /// Adds `c` to the entry at `2j`, which must be a valid label with this `(m, q)`.
    pub fn insert(&mut self, two_j: i64, c: RadicalScalar) -> Result<()> {
        check_jmq(two_j, self.two_m, self.two_q).map_err(Error::ConditionViolation)?;
        let slot = self.entries.entry(two_j).or_insert_with(RadicalScalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.entries.remove(&two_j);
        }
        Ok(())
    }

    pub fn get(&self, two_j: i64) -> RadicalScalar {
        self.entries.get(&two_j).cloned().unwrap_or_else(RadicalScalar::zero)
    }

    /// `sum_j c_j^2`.
    pub fn norm_squared(&self) -> RadicalScalar {
        self.entries
            .values()
            .fold(RadicalScalar::zero(), |acc, c| &acc + &(c * c))
    }
}

/// Labels `(j, m, q)` with `2j <= two_j_max`, ascending in `j`.
pub fn column_labels(two_m: i64, two_q: i64, two_j_max: i64) -> Result<Vec<JmqTriple>> {
    if (two_m - two_q).rem_euclid(2) != 0 {
        return Err(Error::ConditionViolation(Condition::JMinusQNatural));
    }
    let start = two_m.abs().max(two_q.abs());
    (start..=two_j_max)
        .step_by(2)
        .map(|two_j| make_jmq(two_j, two_m, two_q))
        .collect()
}

/// `sqrt(j + 1/2)`.
fn weight_root(t: &JmqTriple) -> RadicalScalar {
    RadicalScalar::sqrt(&(t.j().to_rational() + rat(1, 2))).expect("positive")
}

/// `sqrt(j + 1/2) * ajf(t)`, the orthonormal basis function.
fn normalized(t: &JmqTriple) -> LabeledFunction {
    ajf(t).scaled(&weight_root(t))
}

/// `<u, f> = u.scale * integral(u.body * f)`.
fn inner(u: &LabeledFunction, f: &WeightedPoly) -> Result<RadicalScalar> {
    Ok(u.scale.scale(&u.body.mul(f).integrate_exact()?))
}

/// Gram matrix of the orthonormal basis functions, exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gram {
    pub two_j: Vec<i64>,
    pub entries: Vec<Vec<RadicalScalar>>,
}

impl Gram {
    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, v)| {
                *v == if r == c { RadicalScalar::one() } else { RadicalScalar::zero() }
            })
        })
    }
}

pub fn gram(two_m: i64, two_q: i64, two_j_max: i64) -> Result<Gram> {
    let labels = column_labels(two_m, two_q, two_j_max)?;
    let basis: Vec<LabeledFunction> = labels.iter().map(normalized).collect();
    let entries = basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|v| Ok(&inner(u, &v.body)? * &v.scale))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Gram {
        two_j: labels.iter().map(|t| t.j().twice()).collect(),
        entries,
    })
}

/// `c_j = sqrt(j + 1/2) * integral(ajf_j * f)` for every `j` in the window.
pub fn analyze(f: &WeightedPoly, two_m: i64, two_q: i64, two_j_max: i64) -> Result<CoefficientVector> {
    let mut out = CoefficientVector::new(two_m, two_q);
    for t in column_labels(two_m, two_q, two_j_max)? {
        out.insert(t.j().twice(), inner(&normalized(&t), f)?)?;
    }
    Ok(out)
}

/// `sum_j sqrt(j + 1/2) * c_j * ajf_j`.
pub fn synthesize(c: &CoefficientVector) -> Result<FunctionSum> {
    let mut out = FunctionSum::zero();
    for (two_j, v) in &c.entries {
        let u = normalized(&make_jmq(*two_j, c.two_m, c.two_q)?);
        out.add_scaled(&(&u.scale * v), &u.body);
    }
    Ok(out)
}

/// Whether `synthesize(analyze(f)) == f` exactly.
pub fn round_trip_exact(f: &WeightedPoly, two_m: i64, two_q: i64, two_j_max: i64) -> Result<bool> {
    let back = synthesize(&analyze(f, two_m, two_q, two_j_max)?)?;
    Ok(back == FunctionSum::from_scaled(&RadicalScalar::one(), f))
}

/// `(integral(f^2), sum_j c_j^2)`; equal when `f` lies in the window span.
pub fn parseval(f: &WeightedPoly, two_m: i64, two_q: i64, two_j_max: i64) -> Result<(Rational, RadicalScalar)> {
    let norm = f.mul(f).integrate_exact()?;
    Ok((norm, analyze(f, two_m, two_q, two_j_max)?.norm_squared()))
}

/// Truncated completeness kernel `sum_j (j + 1/2) ajf_j(x) ajf_j(y)`.
pub fn completeness_kernel(two_m: i64, two_q: i64, two_j_max: i64, x: f64, y: f64) -> Result<f64> {
    column_labels(two_m, two_q, two_j_max)?
        .iter()
        .map(|t| {
            let f = ajf(t);
            Ok((t.j().to_f64() + 0.5) * f.evaluate(x)? * f.evaluate(y)?)
        })
        .sum()
}

/// `integral K_N(x, y) g(y) dy`, computed exactly as the projection of `g` and evaluated at `x`.
pub fn kernel_reproduce(g: &WeightedPoly, two_m: i64, two_q: i64, two_j_max: i64, x: f64) -> Result<f64> {
    synthesize(&analyze(g, two_m, two_q, two_j_max)?)?.evaluate(x)
}
