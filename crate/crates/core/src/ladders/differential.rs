//! First-order differential forms of the generators.
//!
//! Each ladder operator is `scale * (a(X) D + b(X))` where the coefficients of
//! `a` and `b` are affine in the Cartan labels, written to the right of `X` and
//! `D`. Acting on a basis function the labels become its eigenvalues, leaving a
//! concrete operator on weighted polynomials.

use num_traits::{One, Zero};

use super::generator::{apply_generator_closed, Action, Generator};
use crate::error::{Error, Result};
use crate::funcspace::{Image, LabeledFunction, WeightedPoly};
use crate::params::JmqTriple;
use crate::scalar::{int, rat, RadicalScalar, Rational};

use Generator::*;

/// `j J + m M + q Q + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelAffine {
    pub j: Rational,
    pub m: Rational,
    pub q: Rational,
    pub c: Rational,
}

impl LabelAffine {
    pub fn new(j: i64, m: i64, q: i64, c: i64) -> Self {
        LabelAffine {
            j: int(j),
            m: int(m),
            q: int(q),
            c: int(c),
        }
    }

    pub fn constant(c: i64) -> Self {
        LabelAffine::new(0, 0, 0, c)
    }

    pub fn eval(&self, t: &JmqTriple) -> Rational {
        &self.j * t.j().to_rational() + &self.m * t.m().to_rational() + &self.q * t.q().to_rational()
            + &self.c
    }

    fn scale(&self, s: &Rational) -> Self {
        LabelAffine {
            j: &self.j * s,
            m: &self.m * s,
            q: &self.q * s,
            c: &self.c * s,
        }
    }

    fn negate_m(&self) -> Self {
        LabelAffine {
            m: -self.m.clone(),
            ..self.clone()
        }
    }

    fn negate_q(&self) -> Self {
        LabelAffine {
            q: -self.q.clone(),
            ..self.clone()
        }
    }
}

/// `(1-X)^(e_minus/2) (1+X)^(e_plus/2) sum_k coeffs[k] X^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicTerm {
    pub e_minus: i64,
    pub e_plus: i64,
    pub coeffs: Vec<LabelAffine>,
}

impl SymbolicTerm {
    fn new(e_minus: i64, e_plus: i64, coeffs: Vec<LabelAffine>) -> Self {
        SymbolicTerm {
            e_minus,
            e_plus,
            coeffs,
        }
    }

    pub fn at(&self, t: &JmqTriple) -> WeightedPoly {
        WeightedPoly::raw(
            self.e_minus,
            self.e_plus,
            self.coeffs.iter().map(|c| c.eval(t)).collect(),
        )
    }

    fn map(&self, f: impl Fn(&LabelAffine) -> LabelAffine) -> Self {
        SymbolicTerm::new(self.e_minus, self.e_plus, self.coeffs.iter().map(f).collect())
    }

    /// `X -> -X`.
    fn reflect(&self) -> Self {
        let minus = -Rational::one();
        SymbolicTerm {
            e_minus: self.e_plus,
            e_plus: self.e_minus,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.scale(&minus) } else { c.clone() })
                .collect(),
        }
    }
}

/// `scale * (deriv(X) D + mult(X))` with labels to the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicOp {
    pub scale: RadicalScalar,
    pub deriv: SymbolicTerm,
    pub mult: SymbolicTerm,
}

impl SymbolicOp {
    pub fn at(&self, t: &JmqTriple) -> ConcreteOp {
        ConcreteOp {
            scale: self.scale.clone(),
            deriv: self.deriv.at(t),
            mult: self.mult.at(t),
        }
    }

    /// Substitutes `X -> -X, D -> -D` (when `reflect`), `M -> -M`, `Q -> -Q`, and an overall sign.
    pub fn substitute(&self, reflect: bool, negate_m: bool, negate_q: bool, negate: bool) -> Self {
        let mut deriv = self.deriv.clone();
        let mut mult = self.mult.clone();
        if reflect {
            deriv = deriv.reflect().map(|c| c.scale(&-Rational::one()));
            mult = mult.reflect();
        }
        if negate_m {
            deriv = deriv.map(LabelAffine::negate_m);
            mult = mult.map(LabelAffine::negate_m);
        }
        if negate_q {
            deriv = deriv.map(LabelAffine::negate_q);
            mult = mult.map(LabelAffine::negate_q);
        }
        let scale = if negate { -self.scale.clone() } else { self.scale.clone() };
        SymbolicOp { scale, deriv, mult }
    }

    /// Moves the rational part of a single-term scale into the label coefficients,
    /// so that equal operators have equal descriptions.
    fn canonical(&self) -> Self {
        let Some((c, r)) = self.scale.single_term() else {
            return self.clone();
        };
        let c = c.clone();
        let root = RadicalScalar::sqrt(&Rational::from_integer(r.clone().into())).expect("positive");
        SymbolicOp {
            scale: root,
            deriv: self.deriv.map(|a| a.scale(&c)),
            mult: self.mult.map(|a| a.scale(&c)),
        }
    }
}

/// The operator on one basis function: `scale * (deriv D + mult)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteOp {
    pub scale: RadicalScalar,
    pub deriv: WeightedPoly,
    pub mult: WeightedPoly,
}

impl ConcreteOp {
    fn diagonal(eigenvalue: Rational) -> Self {
        ConcreteOp {
            scale: RadicalScalar::one(),
            deriv: WeightedPoly::zero(),
            mult: WeightedPoly::constant(eigenvalue),
        }
    }

    /// `deriv * body' + mult * body`, without the scale.
    pub fn apply_body(&self, body: &WeightedPoly) -> Result<WeightedPoly> {
        self.deriv
            .mul(&body.differentiate())
            .add(&self.mult.mul(body))?
            .normalize_exponents()
    }
}

fn term(e_minus: i64, e_plus: i64, coeffs: Vec<LabelAffine>) -> SymbolicTerm {
    SymbolicTerm::new(e_minus, e_plus, coeffs)
}

/// Symbolic description of the twelve ladder generators; `None` for the others.
pub fn symbolic_op(g: Generator) -> Option<SymbolicOp> {
    let la = LabelAffine::new;
    let k = LabelAffine::constant;
    let root_half = RadicalScalar::radical(rat(1, 2), &int(2)).expect("positive");
    let (scale, deriv, mult) = match g {
        APlus | AMinus => {
            let s = if g == APlus { 1 } else { -1 };
            (
                RadicalScalar::one(),
                term(1, 1, vec![k(s)]),
                term(-1, -1, vec![la(0, 0, 1, 0), la(0, 1, 0, 0)]),
            )
        }
        BPlus | BMinus => {
            let s = if g == BPlus { 1 } else { -1 };
            (
                RadicalScalar::one(),
                term(1, 1, vec![k(s)]),
                term(-1, -1, vec![la(0, 1, 0, 0), la(0, 0, 1, 0)]),
            )
        }
        CPlus => (
            root_half,
            term(1, 2, vec![k(1)]),
            term(-1, 0, vec![la(1, 1, 1, 1), la(-1, 0, 0, -1)]),
        ),
        CMinus => (
            root_half,
            term(1, 2, vec![k(-1)]),
            term(-1, 0, vec![la(1, 1, 1, 0), la(-1, 0, 0, 0)]),
        ),
        DPlus => (
            root_half,
            term(2, 1, vec![k(-1)]),
            term(0, -1, vec![la(1, 1, -1, 1), la(1, 0, 0, 1)]),
        ),
        DMinus => (
            root_half,
            term(2, 1, vec![k(1)]),
            term(0, -1, vec![la(1, 1, -1, 0), la(1, 0, 0, 0)]),
        ),
        EPlus => (
            root_half,
            term(2, 1, vec![k(-1)]),
            term(0, -1, vec![la(1, -1, 1, 1), la(1, 0, 0, 1)]),
        ),
        EMinus => (
            root_half,
            term(2, 1, vec![k(1)]),
            term(0, -1, vec![la(1, -1, 1, 0), la(1, 0, 0, 0)]),
        ),
        FPlus => (
            root_half,
            term(1, 2, vec![k(-1)]),
            term(-1, 0, vec![la(-1, 1, 1, -1), la(1, 0, 0, 1)]),
        ),
        FMinus => (
            root_half,
            term(1, 2, vec![k(1)]),
            term(-1, 0, vec![la(-1, 1, 1, 0), la(1, 0, 0, 0)]),
        ),
        J | M | Q | KPlus | KMinus => return None,
    };
    Some(SymbolicOp { scale, deriv, mult })
}

/// Radicand of the K normalizer: `(j+1)^2 - q^2` for `K+`, `j^2 - q^2` for `K-`, with
/// `q` replaced by `m` when `|m| < |q|`.
fn k_normalizer(g: Generator, t: &JmqTriple) -> Rational {
    let j = t.j().to_rational();
    let (m, q) = (t.m(), t.q());
    let other = if m.abs() >= q.abs() { q } else { m }.to_rational();
    let base = if g == KPlus { j + Rational::one() } else { j };
    &base * &base - &other * &other
}

/// The concrete first-order operator of `g` on the basis function labelled `t`.
pub fn differential_form(g: Generator, t: &JmqTriple) -> Result<ConcreteOp> {
    if let Some(op) = symbolic_op(g) {
        return Ok(op.at(t));
    }
    let j = t.j().to_rational();
    let m = t.m().to_rational();
    let q = t.q().to_rational();
    match g {
        J => Ok(ConcreteOp::diagonal(j)),
        M => Ok(ConcreteOp::diagonal(m)),
        Q => Ok(ConcreteOp::diagonal(q)),
        KPlus | KMinus => {
            let r = k_normalizer(g, t);
            if r.is_zero() {
                return Err(Error::BoundaryCase);
            }
            let (base, sign) = if g == KPlus {
                (&j + Rational::one(), -1)
            } else {
                (j, 1)
            };
            let scale = RadicalScalar::sqrt(&r)?.inverse()?.scale(&base);
            Ok(ConcreteOp {
                scale,
                deriv: WeightedPoly::weight(2, 2).scale(&int(sign)),
                mult: WeightedPoly::polynomial(vec![m * q / &base, base]),
            })
        }
        _ => unreachable!("ladder generators have symbolic forms"),
    }
}

/// Applies the differential form of `g`, labelling the result with the shifted triple.
///
/// A zero result is [`Image::Zero`]; a nonzero result whose label leaves the
/// lattice is a defect and reported as `NonzeroOutsideLattice`.
pub fn apply_generator_diff(g: Generator, f: &LabeledFunction) -> Result<Image> {
    let op = differential_form(g, &f.label)?;
    let body = op.apply_body(&f.body)?;
    if body.is_zero() || f.scale.is_zero() {
        return Ok(Image::Zero);
    }
    let (dj, dm, dq) = g.shift();
    let label = f.label.shifted(dj, dm, dq).ok_or_else(|| {
        Error::NonzeroOutsideLattice(format!("{g} on {}", f.label))
    })?;
    Ok(Image::Function(LabeledFunction {
        label,
        scale: &op.scale * &f.scale,
        body,
    }))
}

/// Like [`apply_generator_diff`], but resolves the `K-` boundary case by its closed-form limit.
pub fn apply_generator_diff_or_limit(g: Generator, f: &LabeledFunction) -> Result<Image> {
    match apply_generator_diff(g, f) {
        Err(Error::BoundaryCase) => match apply_generator_closed(g, &f.label) {
            Action::Annihilated => Ok(Image::Zero),
            Action::Shift { .. } => Err(Error::BoundaryCase),
        },
        other => other,
    }
}

/// `K±` by the second-order route `F± C± / sqrt(normalizer)`, normalizer taken on the input label.
pub fn k_via_products(g: Generator, f: &LabeledFunction) -> Result<Image> {
    let (c, fl) = match g {
        KPlus => (CPlus, FPlus),
        KMinus => (CMinus, FMinus),
        _ => return Err(Error::Parse(format!("{g} is not a K operator"))),
    };
    let r = k_normalizer(g, &f.label);
    if r.is_zero() {
        return Err(Error::BoundaryCase);
    }
    let norm = RadicalScalar::sqrt(&r)?.inverse()?;
    let mid = match apply_generator_diff(c, f)? {
        Image::Function(h) => h,
        Image::Zero => return Ok(Image::Zero),
    };
    Ok(match apply_generator_diff(fl, &mid)? {
        Image::Function(h) => Image::Function(h.scaled(&norm)),
        Image::Zero => Image::Zero,
    })
}

/// `(j (1-x^2) D + j^2 x + m q) f`, the `K-` numerator multiplied through by `j`.
pub fn k_minus_numerator(f: &LabeledFunction) -> Result<WeightedPoly> {
    let t = f.label;
    let j = t.j().to_rational();
    let mq = t.m().to_rational() * t.q().to_rational();
    let op = ConcreteOp {
        scale: RadicalScalar::one(),
        deriv: WeightedPoly::weight(2, 2).scale(&j),
        mult: WeightedPoly::polynomial(vec![mq, &j * &j]),
    };
    op.apply_body(&f.body)
}

/// Whether the stored form of `g` in `D±, E±, F±` is the Weyl image of `C±`:
/// `D±(X,D,M,Q) = C±(-X,-D,M,-Q)`, `E±(X,D,M,Q) = C±(-X,-D,-M,Q)`, `F±(X,D,M,Q) = -C±(X,D,-M,-Q)`.
pub fn weyl_substitution_check(g: Generator) -> bool {
    let (base, reflect, nm, nq, neg) = match g {
        DPlus => (CPlus, true, false, true, false),
        DMinus => (CMinus, true, false, true, false),
        EPlus => (CPlus, true, true, false, false),
        EMinus => (CMinus, true, true, false, false),
        FPlus => (CPlus, false, true, true, true),
        FMinus => (CMinus, false, true, true, true),
        _ => return false,
    };
    let (Some(target), Some(base)) = (symbolic_op(g), symbolic_op(base)) else {
        return false;
    };
    base.substitute(reflect, nm, nq, neg).canonical() == target.canonical()
}
