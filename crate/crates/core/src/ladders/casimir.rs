//! Casimir operators and factorization identities.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use super::expr::OperatorExpr;
use super::generator::Generator;
use crate::error::{Error, Result};
use crate::funcspace::FunctionSum;
use crate::jacobi::ajf;
use crate::params::JmqTriple;
use crate::scalar::{rat, RadicalScalar, Rational};

use Generator::*;

/// The six ladder families `X±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Family {
    pub const ALL: [Family; 6] = [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F];

    pub fn raising(self) -> Generator {
        match self {
            Family::A => APlus,
            Family::B => BPlus,
            Family::C => CPlus,
            Family::D => DPlus,
            Family::E => EPlus,
            Family::F => FPlus,
        }
    }

    pub fn lowering(self) -> Generator {
        self.raising().adjoint()
    }

    /// `A` and `B` close an su(2); the others close an su(1,1).
    pub fn is_compact(self) -> bool {
        matches!(self, Family::A | Family::B)
    }

    /// The Cartan element `X3` with `[X3, X±] = ±X±`.
    pub fn x3(self) -> OperatorExpr {
        let half = |g: Generator, s: i64| gen(g).scaled(&RadicalScalar::from_rational(rat(s, 2)));
        let (sm, sq) = match self {
            Family::A => return gen(M),
            Family::B => return gen(Q),
            Family::C => (1, 1),
            Family::D => (1, -1),
            Family::E => (-1, 1),
            Family::F => (-1, -1),
        };
        gen(J)
            .add(&half(M, sm))
            .add(&half(Q, sq))
            .add(&OperatorExpr::rational(rat(1, 2)))
    }

    /// Eigenvalues of `X+ X-` and `X- X+` on the label `t`.
    pub fn factorization_eigenvalues(self, t: &JmqTriple) -> (Rational, Rational) {
        let j = t.j().to_rational();
        let m = t.m().to_rational();
        let q = t.q().to_rational();
        let one = Rational::one();
        let j1 = &j + &one;
        match self {
            Family::A => ((&j + &m) * (&j - &m + &one), (&j - &m) * (&j + &m + &one)),
            Family::B => ((&j + &q) * (&j - &q + &one), (&j - &q) * (&j + &q + &one)),
            Family::C => ((&j + &m) * (&j + &q), (&j1 + &m) * (&j1 + &q)),
            Family::D => ((&j + &m) * (&j - &q), (&j1 + &m) * (&j1 - &q)),
            Family::E => ((&j - &m) * (&j + &q), (&j1 - &m) * (&j1 + &q)),
            Family::F => ((&j - &m) * (&j - &q), (&j1 - &m) * (&j1 - &q)),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

fn gen(g: Generator) -> OperatorExpr {
    OperatorExpr::generator(g)
}

/// The quadratic Casimirs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Casimir {
    SuA,
    SuB,
    SuC,
    SuD,
    SuE,
    SuF,
    SuK,
    Su22,
}

impl Casimir {
    pub const ALL: [Casimir; 8] = [
        Casimir::SuA,
        Casimir::SuB,
        Casimir::SuC,
        Casimir::SuD,
        Casimir::SuE,
        Casimir::SuF,
        Casimir::SuK,
        Casimir::Su22,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Casimir::SuA => "suA",
            Casimir::SuB => "suB",
            Casimir::SuC => "suC",
            Casimir::SuD => "suD",
            Casimir::SuE => "suE",
            Casimir::SuF => "suF",
            Casimir::SuK => "suK",
            Casimir::Su22 => "su22",
        }
    }

    fn family(self) -> Option<Family> {
        match self {
            Casimir::SuA => Some(Family::A),
            Casimir::SuB => Some(Family::B),
            Casimir::SuC => Some(Family::C),
            Casimir::SuD => Some(Family::D),
            Casimir::SuE => Some(Family::E),
            Casimir::SuF => Some(Family::F),
            Casimir::SuK | Casimir::Su22 => None,
        }
    }

    /// The Casimir as an operator expression.
    pub fn expr(self) -> OperatorExpr {
        let half = RadicalScalar::from_rational(rat(1, 2));
        let anti = |f: Family| OperatorExpr::anticommutator(&gen(f.raising()), &gen(f.lowering()));
        if let Some(f) = self.family() {
            let x3 = f.x3();
            let sq = x3.compose(&x3);
            // su(2): X3^2 + {X+,X-}/2; su(1,1): X3^2 - {X+,X-}/2
            return if f.is_compact() {
                sq.add(&anti(f).scaled(&half))
            } else {
                sq.sub(&anti(f).scaled(&half))
            };
        }
        match self {
            Casimir::SuK => {
                let k3 = OperatorExpr::k3();
                let pm = OperatorExpr::anticommutator(&gen(KPlus), &gen(KMinus));
                k3.compose(&k3).sub(&pm.scaled(&half))
            }
            _ => {
                let compact = anti(Family::A).add(&anti(Family::B));
                let noncompact = [Family::C, Family::D, Family::E, Family::F]
                    .into_iter()
                    .fold(OperatorExpr::zero(), |acc, f| acc.add(&anti(f)));
                let j = gen(J);
                compact
                    .sub(&noncompact)
                    .scaled(&half)
                    .add(&j.compose(&j.add(&OperatorExpr::identity())).scaled(&RadicalScalar::from_int(2)))
                    .add(&gen(M).compose(&gen(M)))
                    .add(&gen(Q).compose(&gen(Q)))
                    .add(&OperatorExpr::scalar(half))
            }
        }
    }

    /// The eigenvalue on the irreducible component containing `t`.
    pub fn eigenvalue(self, t: &JmqTriple) -> Rational {
        let j = t.j().to_rational();
        let m = t.m().to_rational();
        let q = t.q().to_rational();
        let quarter = rat(1, 4);
        let chain = |d: Rational| (&d * &d - Rational::one()) * &quarter;
        match self {
            Casimir::SuA | Casimir::SuB => &j * (&j + Rational::one()),
            Casimir::SuC | Casimir::SuF => chain(&m - &q),
            Casimir::SuD | Casimir::SuE => chain(&m + &q),
            Casimir::SuK => {
                let d = if m.abs() >= q.abs() { m } else { q };
                &d * &d - quarter
            }
            Casimir::Su22 => rat(-3, 2),
        }
    }
}

impl fmt::Display for Casimir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Casimir {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Casimir::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown Casimir {s:?}")))
    }
}

/// The Casimir's value on `t` computed from the closed-form actions.
///
/// Fails with `OffDiagonal` if the image has any component other than `t`.
pub fn casimir_apply(which: Casimir, t: &JmqTriple) -> Result<RadicalScalar> {
    let mut image = which.expr().apply_closed(t);
    let value = image.remove(t).unwrap_or_else(RadicalScalar::zero);
    if let Some((leak, _)) = image.into_iter().next() {
        return Err(Error::OffDiagonal(format!("{which} on {t} reaches {leak}")));
    }
    Ok(value)
}

/// The scalar `c` with `s = c * ajf(t)`, if there is one.
fn eigen_ratio(s: &FunctionSum, t: &JmqTriple) -> Result<RadicalScalar> {
    let f = ajf(t);
    let leak = || Error::OffDiagonal(format!("image of {t} is not proportional to it"));
    let Some((r, w)) = s.parts().next() else {
        return Ok(RadicalScalar::zero());
    };
    let lead = |p: &[Rational]| p.last().cloned().expect("nonzero");
    let (fr, fw) = f.value().parts().next().map(|(a, b)| (a.clone(), b.clone())).ok_or_else(leak)?;
    if w.e_minus() != fw.e_minus() || w.e_plus() != fw.e_plus() {
        return Err(leak());
    }
    let to_rat = |u: &num_bigint::BigUint| Rational::from_integer(u.clone().into());
    let c = RadicalScalar::sqrt(&(to_rat(r) / to_rat(&fr)))?.scale(&(lead(w.poly()) / lead(fw.poly())));
    if FunctionSum::from_scaled(&(&f.scale * &c), &f.body) != *s {
        return Err(leak());
    }
    Ok(c)
}

/// The Casimir's value on `t` computed from the differential forms acting on `ajf(t)`.
pub fn casimir_apply_diff(which: Casimir, t: &JmqTriple) -> Result<RadicalScalar> {
    let s = which.expr().apply_diff(&ajf(t))?;
    eigen_ratio(&s, t)
}

/// `X+X-` and `X-X+` equal their factorized eigenvalues on `t`, by both routes.
pub fn factorization_check(family: Family, t: &JmqTriple) -> Result<bool> {
    let (up_down, down_up) = family.factorization_eigenvalues(t);
    let (p, m) = (gen(family.raising()), gen(family.lowering()));
    let mut ok = true;
    for (e, want) in [(p.compose(&m), up_down), (m.compose(&p), down_up)] {
        ok &= !want.is_negative();
        let want = RadicalScalar::from_rational(want);
        let closed = e.apply_closed(t);
        let closed_ok = closed.len() <= 1 && closed.get(t).cloned().unwrap_or_else(RadicalScalar::zero) == want;
        let diff = eigen_ratio(&e.apply_diff(&ajf(t))?, t);
        ok &= closed_ok && diff.as_ref() == Ok(&want);
    }
    Ok(ok)
}
