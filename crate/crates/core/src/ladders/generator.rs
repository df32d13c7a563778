//! Generator names and their closed-form action on the label basis.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::params::JmqTriple;
use crate::scalar::{RadicalScalar, Rational};

/// The fifteen su(2,2) generators plus the composite `K±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    APlus,
    AMinus,
    BPlus,
    BMinus,
    CPlus,
    CMinus,
    DPlus,
    DMinus,
    EPlus,
    EMinus,
    FPlus,
    FMinus,
    J,
    M,
    Q,
    KPlus,
    KMinus,
}

use Generator::*;

impl Generator {
    /// The su(2,2) basis, Cartan elements last.
    pub const SU22: [Generator; 15] = [
        APlus, AMinus, BPlus, BMinus, CPlus, CMinus, DPlus, DMinus, EPlus, EMinus, FPlus, FMinus,
        J, M, Q,
    ];

    pub const ALL: [Generator; 17] = [
        APlus, AMinus, BPlus, BMinus, CPlus, CMinus, DPlus, DMinus, EPlus, EMinus, FPlus, FMinus,
        J, M, Q, KPlus, KMinus,
    ];

    pub fn is_cartan(self) -> bool {
        matches!(self, J | M | Q)
    }

    /// The conjugate ladder (`X± -> X∓`); Cartan elements are self-adjoint.
    pub fn adjoint(self) -> Generator {
        match self {
            APlus => AMinus,
            AMinus => APlus,
            BPlus => BMinus,
            BMinus => BPlus,
            CPlus => CMinus,
            CMinus => CPlus,
            DPlus => DMinus,
            DMinus => DPlus,
            EPlus => EMinus,
            EMinus => EPlus,
            FPlus => FMinus,
            FMinus => FPlus,
            KPlus => KMinus,
            KMinus => KPlus,
            g => g,
        }
    }

    /// Label shift `(2Δj, 2Δm, 2Δq)`.
    pub fn shift(self) -> (i64, i64, i64) {
        match self {
            APlus => (0, 2, 0),
            AMinus => (0, -2, 0),
            BPlus => (0, 0, 2),
            BMinus => (0, 0, -2),
            CPlus => (1, 1, 1),
            CMinus => (-1, -1, -1),
            DPlus => (1, 1, -1),
            DMinus => (-1, -1, 1),
            EPlus => (1, -1, 1),
            EMinus => (-1, 1, -1),
            FPlus => (1, -1, -1),
            FMinus => (-1, 1, 1),
            KPlus => (2, 0, 0),
            KMinus => (-2, 0, 0),
            J | M | Q => (0, 0, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            APlus => "A+",
            AMinus => "A-",
            BPlus => "B+",
            BMinus => "B-",
            CPlus => "C+",
            CMinus => "C-",
            DPlus => "D+",
            DMinus => "D-",
            EPlus => "E+",
            EMinus => "E-",
            FPlus => "F+",
            FMinus => "F-",
            J => "J",
            M => "M",
            Q => "Q",
            KPlus => "K+",
            KMinus => "K-",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('−', "-");
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown generator {s:?}")))
    }
}

/// Closed-form image of a basis label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Shift {
        coef: RadicalScalar,
        target: JmqTriple,
    },
    Annihilated,
}

impl Action {
    pub fn coefficient(&self) -> RadicalScalar {
        match self {
            Action::Shift { coef, .. } => coef.clone(),
            Action::Annihilated => RadicalScalar::zero(),
        }
    }
}

/// Radicand of the ladder coefficient, or the eigenvalue itself for Cartan elements.
pub(crate) fn closed_radicand(g: Generator, t: &JmqTriple) -> Rational {
    let j = t.j().to_rational();
    let m = t.m().to_rational();
    let q = t.q().to_rational();
    let one = Rational::from_integer(1.into());
    let j1 = &j + &one;
    // |m| >= |q| uses m in the K coefficients, otherwise q
    let dominant = if m.abs() >= q.abs() { &m } else { &q };
    match g {
        APlus => (&j - &m) * (&j + &m + &one),
        AMinus => (&j + &m) * (&j - &m + &one),
        BPlus => (&j - &q) * (&j + &q + &one),
        BMinus => (&j + &q) * (&j - &q + &one),
        CPlus => (&j1 + &m) * (&j1 + &q),
        CMinus => (&j + &m) * (&j + &q),
        DPlus => (&j1 + &m) * (&j1 - &q),
        DMinus => (&j + &m) * (&j - &q),
        EPlus => (&j1 - &m) * (&j1 + &q),
        EMinus => (&j - &m) * (&j + &q),
        FPlus => (&j1 - &m) * (&j1 - &q),
        FMinus => (&j - &m) * (&j - &q),
        KPlus => &j1 * &j1 - dominant * dominant,
        KMinus => &j * &j - dominant * dominant,
        J => j,
        M => m,
        Q => q,
    }
}

/// The closed-form action of `g` on the basis function labelled `t`.
///
/// `K-` at `j = |m| = |q|` is annihilated, as the limit of its differential form.
pub fn apply_generator_closed(g: Generator, t: &JmqTriple) -> Action {
    let r = closed_radicand(g, t);
    if r.is_zero() {
        return Action::Annihilated;
    }
    let coef = if g.is_cartan() {
        RadicalScalar::from_rational(r)
    } else {
        assert!(!r.is_negative(), "negative ladder radicand {r} for {g} on {t}");
        RadicalScalar::sqrt(&r).expect("non-negative")
    };
    let (dj, dm, dq) = g.shift();
    let target = t
        .shifted(dj, dm, dq)
        .unwrap_or_else(|| panic!("{g} on {t}: nonzero coefficient but target off the lattice"));
    Action::Shift { coef, target }
}
