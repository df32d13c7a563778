//! Wigner d-matrices from the algebraic Jacobi functions:
//! `d^j_{q m}(beta) = J_j^{m,-q}(cos beta)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::ajf;
use crate::params::make_jmq;
use crate::scalar::{int, RadicalScalar, Rational};

/// One matrix element as `s^a c^b sum_k coeffs[k] s^(2k)` with `s = sin(beta/2)`,
/// `c = cos(beta/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DElementForm {
    pub sin_power: i64,
    pub cos_power: i64,
    pub coeffs: Vec<f64>,
}

impl DElementForm {
    pub fn eval(&self, beta: f64) -> f64 {
        let (s, c) = (beta / 2.0).sin_cos();
        let s2 = s * s;
        let series = self.coeffs.iter().rev().fold(0.0, |acc, k| acc * s2 + k);
        s.powi(self.sin_power as i32) * c.powi(self.cos_power as i32) * series
    }
}

/// `p(1 - u)` as coefficients in `u`.
fn in_powers_of_one_minus_x(p: &[Rational]) -> Vec<Rational> {
    let mut acc: Vec<Rational> = Vec::new();
    for c in p.iter().rev() {
        // acc * (1 - u) + c
        let mut next = vec![Rational::zero(); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            next[k] += a;
            next[k + 1] -= a;
        }
        next[0] += c;
        acc = next;
    }
    acc
}

/// The exact form of `d^j_{q m}`; all constants are combined exactly before rounding.
pub fn d_element_form(two_j: i64, two_q: i64, two_m: i64) -> Result<DElementForm> {
    let f = ajf(&make_jmq(two_j, two_m, -two_q)?);
    let (em, ep) = (f.body.e_minus(), f.body.e_plus());
    // (1-x)^(em/2) (1+x)^(ep/2) = 2^((em+ep)/2) s^em c^ep and (1-x)^k = 2^k s^(2k)
    let lead = &f.scale * &RadicalScalar::sqrt(&int(2).pow((em + ep) as i32))?;
    let mut pow2 = int(1);
    let coeffs = in_powers_of_one_minus_x(f.body.poly())
        .into_iter()
        .map(|b| {
            let v = lead.scale(&(b * &pow2)).to_f64();
            pow2 *= int(2);
            v
        })
        .collect();
    Ok(DElementForm {
        sin_power: em,
        cos_power: ep,
        coeffs,
    })
}

pub fn d_element(two_j: i64, two_q: i64, two_m: i64, beta: f64) -> Result<f64> {
    Ok(d_element_form(two_j, two_q, two_m)?.eval(beta))
}

/// `d^j(beta)`, rows indexed by `q` and columns by `m`, both descending from `j` to `-j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DMatrix {
    pub two_j: i64,
    pub beta: f64,
    pub entries: Vec<Vec<f64>>,
}

fn check_two_j(two_j: i64) -> Result<()> {
    if two_j < 0 {
        return Err(Error::ConditionViolation(crate::params::Condition::TwoJNatural));
    }
    Ok(())
}

/// Twice the label at row or column `i`.
pub fn two_label(two_j: i64, i: usize) -> i64 {
    two_j - 2 * i as i64
}

pub fn d_matrix(two_j: i64, beta: f64) -> Result<DMatrix> {
    check_two_j(two_j)?;
    if !beta.is_finite() {
        return Err(Error::OutOfDomain(beta));
    }
    let n = (two_j + 1) as usize;
    let entries = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| d_element(two_j, two_label(two_j, r), two_label(two_j, c), beta))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let d = DMatrix {
        two_j,
        beta,
        entries,
    };
    debug_assert!(d.mul(&d.transpose()).map(|p| p.identity_distance() < 1e-9).unwrap_or(false));
    Ok(d)
}

/// `d_{q m}(beta) = (-1)^(q-m) d_{m q}(beta)` entry-wise within `1e-12`.
pub fn d_symmetry_check(two_j: i64, beta: f64) -> Result<bool> {
    Ok(d_matrix(two_j, beta)?.symmetry_defect() <= 1e-12)
}

impl DMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, two_q: i64, two_m: i64) -> Option<f64> {
        let idx = |t: i64| {
            let k = self.two_j - t;
            (k >= 0 && k % 2 == 0 && t >= -self.two_j).then(|| (k / 2) as usize)
        };
        Some(self.entries[idx(two_q)?][idx(two_m)?])
    }

    pub fn transpose(&self) -> DMatrix {
        let n = self.dim();
        DMatrix {
            two_j: self.two_j,
            beta: -self.beta,
            entries: (0..n).map(|r| (0..n).map(|c| self.entries[c][r]).collect()).collect(),
        }
    }

    /// Matrix product; the angle of the result is the sum of the angles.
    pub fn mul(&self, other: &DMatrix) -> Result<DMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let n = self.dim();
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).map(|k| self.entries[r][k] * other.entries[k][c]).sum())
                    .collect()
            })
            .collect();
        Ok(DMatrix {
            two_j: self.two_j,
            beta: self.beta + other.beta,
            entries,
        })
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &DMatrix) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(if self.dim() == other.dim() { 0.0 } else { f64::INFINITY }, f64::max)
    }

    pub fn identity_distance(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                let want = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((self.entries[r][c] - want).abs());
            }
        }
        worst
    }

    /// Largest deviation from `d_{q m} = (-1)^(q-m) d_{m q}`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                let sign = if (r + c) % 2 == 0 { 1.0 } else { -1.0 };
                worst = worst.max((self.entries[r][c] - sign * self.entries[c][r]).abs());
            }
        }
        worst
    }

    /// Largest deviation of a row's sum of squares from 1.
    pub fn row_norm_defect(&self) -> f64 {
        self.entries
            .iter()
            .map(|row| (row.iter().map(|v| v * v).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with a header of `2m` values and a leading `2q` column.
    pub fn to_csv(&self) -> String {
        let n = self.dim();
        let mut out = String::from("two_q");
        for c in 0..n {
            out.push_str(&format!(",{}", two_label(self.two_j, c)));
        }
        out.push('\n');
        for (r, row) in self.entries.iter().enumerate() {
            out.push_str(&two_label(self.two_j, r).to_string());
            for v in row {
                // adding 0.0 turns -0 into 0
                out.push_str(&format!(",{}", v + 0.0));
            }
            out.push('\n');
        }
        out
    }
}

/// Applies `d^j(beta)` to components indexed by `m` descending.
pub fn rotate_state(two_j: i64, beta: f64, state: &[f64]) -> Result<Vec<f64>> {
    let d = d_matrix(two_j, beta)?;
    if state.len() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            got: state.len(),
        });
    }
    Ok(d
        .entries
        .iter()
        .map(|row| row.iter().zip(state).map(|(a, b)| a * b).sum())
        .collect())
}

/// Worst defects of unitarity, composition and transpose symmetry at the given angles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DChecks {
    pub identity_at_zero: f64,
    pub unitarity: f64,
    pub composition: f64,
    pub symmetry: f64,
}

pub fn d_checks(two_j: i64, b1: f64, b2: f64) -> Result<DChecks> {
    let d1 = d_matrix(two_j, b1)?;
    let d2 = d_matrix(two_j, b2)?;
    let d12 = d_matrix(two_j, b1 + b2)?;
    Ok(DChecks {
        identity_at_zero: d_matrix(two_j, 0.0)?.identity_distance(),
        unitarity: d1.mul(&d1.transpose())?.identity_distance(),
        composition: d1.mul(&d2)?.max_abs_diff(&d12),
        symmetry: d1.symmetry_defect(),
    })
}

impl DChecks {
    pub fn worst(&self) -> f64 {
        self.unitarity.max(self.composition).max(self.symmetry)
    }

    pub fn exact_identity(&self) -> bool {
        self.identity_at_zero == 0.0
    }
}
