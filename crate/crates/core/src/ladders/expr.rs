//! Formal operator expressions and their matrices on finite label windows.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::differential::apply_generator_diff_or_limit;
use super::generator::{apply_generator_closed, Action, Generator};
use crate::error::{Error, Result};
use crate::funcspace::{FunctionSum, Image, LabeledFunction};
use crate::params::JmqTriple;
use crate::scalar::{rat, RadicalScalar, Rational};

/// A word of generators, applied right to left.
pub type Word = Vec<Generator>;

/// A finite linear combination of generator words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorExpr {
    terms: BTreeMap<Word, RadicalScalar>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr::default()
    }

    pub fn identity() -> Self {
        OperatorExpr::word(Vec::new())
    }

    pub fn generator(g: Generator) -> Self {
        OperatorExpr::word(vec![g])
    }

    pub fn word(w: Word) -> Self {
        OperatorExpr::term(RadicalScalar::one(), w)
    }

    pub fn term(c: RadicalScalar, w: Word) -> Self {
        let mut e = OperatorExpr::zero();
        e.add_term(w, c);
        e
    }

    pub fn scalar(c: RadicalScalar) -> Self {
        OperatorExpr::term(c, Vec::new())
    }

    pub fn rational(c: Rational) -> Self {
        OperatorExpr::scalar(RadicalScalar::from_rational(c))
    }

    fn add_term(&mut self, w: Word, c: RadicalScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(RadicalScalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RadicalScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &OperatorExpr) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &OperatorExpr) -> Self {
        self.add(&other.scaled(&RadicalScalar::from_int(-1)))
    }

    pub fn scaled(&self, c: &RadicalScalar) -> Self {
        let mut out = OperatorExpr::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &OperatorExpr) -> Self {
        let mut out = OperatorExpr::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let w = wa.iter().chain(wb).copied().collect();
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    pub fn commutator(a: &OperatorExpr, b: &OperatorExpr) -> Self {
        a.compose(b).sub(&b.compose(a))
    }

    pub fn anticommutator(a: &OperatorExpr, b: &OperatorExpr) -> Self {
        a.compose(b).add(&b.compose(a))
    }

    /// `J + 1/2`, the Cartan element of the `K` algebra.
    pub fn k3() -> Self {
        OperatorExpr::generator(Generator::J).add(&OperatorExpr::rational(rat(1, 2)))
    }

    /// Image of a single basis label under the closed-form actions.
    pub fn apply_closed(&self, t: &JmqTriple) -> State {
        let mut out = State::new();
        for (w, c) in &self.terms {
            if let WordImage::Term(v, target) = apply_word(w, t, None) {
                add_to_state(&mut out, target, &(&v * c));
            }
        }
        out
    }

    /// Image of a state (finite combination of labels) under the closed-form actions.
    pub fn apply_state(&self, s: &State) -> State {
        let mut out = State::new();
        for (t, v) in s {
            for (target, c) in self.apply_closed(t) {
                add_to_state(&mut out, target, &(&c * v));
            }
        }
        out
    }

    /// Applies the differential forms word by word to a function.
    pub fn apply_diff(&self, f: &LabeledFunction) -> Result<FunctionSum> {
        let mut out = FunctionSum::zero();
        for (w, c) in &self.terms {
            let mut img = Image::Function(f.clone());
            for g in w.iter().rev() {
                img = match img {
                    Image::Function(h) => apply_generator_diff_or_limit(*g, &h)?,
                    Image::Zero => break,
                };
            }
            if let Image::Function(h) = img {
                out.add_scaled(&(&h.scale * c), &h.body);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for g in w {
                write!(f, "·{g}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for OperatorExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire: Vec<(&RadicalScalar, Vec<&str>)> = self
            .terms
            .iter()
            .map(|(w, c)| (c, w.iter().map(|g| g.name()).collect()))
            .collect();
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire: Vec<(RadicalScalar, Vec<String>)> = Vec::deserialize(d)?;
        let mut out = OperatorExpr::zero();
        for (c, names) in wire {
            let w = names
                .iter()
                .map(|n| n.parse::<Generator>())
                .collect::<Result<Word>>()
                .map_err(D::Error::custom)?;
            out.add_term(w, c);
        }
        Ok(out)
    }
}

/// A finite combination of basis labels.
pub type State = BTreeMap<JmqTriple, RadicalScalar>;

fn add_to_state(s: &mut State, t: JmqTriple, c: &RadicalScalar) {
    if c.is_zero() {
        return;
    }
    let slot = s.entry(t).or_insert_with(RadicalScalar::zero);
    *slot = &*slot + c;
    if slot.is_zero() {
        s.remove(&t);
    }
}

enum WordImage {
    Zero,
    Term(RadicalScalar, JmqTriple),
    Exits,
}

/// Chains closed-form actions; with a window bound, any step beyond it is reported as `Exits`.
fn apply_word(w: &[Generator], t: &JmqTriple, two_j_max: Option<i64>) -> WordImage {
    let mut coef = RadicalScalar::one();
    let mut cur = *t;
    for g in w.iter().rev() {
        match apply_generator_closed(*g, &cur) {
            Action::Annihilated => return WordImage::Zero,
            Action::Shift { coef: c, target } => {
                if two_j_max.is_some_and(|n| target.j().twice() > n) {
                    return WordImage::Exits;
                }
                coef = &coef * &c;
                cur = target;
            }
        }
    }
    WordImage::Term(coef, cur)
}

/// All valid labels with `2j <= two_j_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisWindow {
    two_j_max: i64,
    labels: Vec<JmqTriple>,
}

impl BasisWindow {
    pub fn new(two_j_max: i64) -> Self {
        BasisWindow {
            two_j_max,
            labels: JmqTriple::window(two_j_max),
        }
    }

    pub fn two_j_max(&self) -> i64 {
        self.two_j_max
    }

    pub fn labels(&self) -> &[JmqTriple] {
        &self.labels
    }

    pub fn contains(&self, t: &JmqTriple) -> bool {
        t.j().twice() <= self.two_j_max
    }
}

/// One column of an operator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Column {
    /// Every path stayed inside the window; the entries are exact.
    Exact(State),
    /// Some path left the window, so the truncated column is not faithful.
    OutOfWindow,
}

/// Sparse matrix `<t'|e|t>` over a window, stored by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    window: BasisWindow,
    columns: BTreeMap<JmqTriple, Column>,
}

pub fn operator_matrix(e: &OperatorExpr, w: &BasisWindow) -> OperatorMatrix {
    let columns = w
        .labels()
        .iter()
        .map(|t| {
            let mut col = State::new();
            for (word, c) in e.terms() {
                match apply_word(word, t, Some(w.two_j_max())) {
                    WordImage::Zero => {}
                    WordImage::Exits => return (*t, Column::OutOfWindow),
                    WordImage::Term(v, target) => add_to_state(&mut col, target, &(&v * c)),
                }
            }
            (*t, Column::Exact(col))
        })
        .collect();
    OperatorMatrix {
        window: w.clone(),
        columns,
    }
}

impl OperatorMatrix {
    pub fn window(&self) -> &BasisWindow {
        &self.window
    }

    pub fn column(&self, t: &JmqTriple) -> Result<&State> {
        match self.columns.get(t) {
            Some(Column::Exact(s)) => Ok(s),
            Some(Column::OutOfWindow) => Err(Error::OutOfWindowUnhandled(t.to_string())),
            None => Err(Error::OutOfWindowUnhandled(format!("{t} is not in the window"))),
        }
    }

    pub fn entry(&self, row: &JmqTriple, col: &JmqTriple) -> Result<RadicalScalar> {
        if !self.window.contains(row) {
            return Err(Error::OutOfWindowUnhandled(format!("{row} is not in the window")));
        }
        Ok(self.column(col)?.get(row).cloned().unwrap_or_else(RadicalScalar::zero))
    }

    /// Exact columns with their entries.
    pub fn interior(&self) -> impl Iterator<Item = (&JmqTriple, &State)> {
        self.columns.iter().filter_map(|(t, c)| match c {
            Column::Exact(s) => Some((t, s)),
            Column::OutOfWindow => None,
        })
    }

    pub fn interior_count(&self) -> usize {
        self.interior().count()
    }

    pub fn out_of_window_count(&self) -> usize {
        self.columns.len() - self.interior_count()
    }

    pub fn nonzero_interior_entries(&self) -> usize {
        self.interior().map(|(_, s)| s.len()).sum()
    }

    /// All exact columns vanish, and there is at least one.
    pub fn is_zero_on_interior(&self) -> bool {
        self.interior_count() > 0 && self.nonzero_interior_entries() == 0
    }
}

/// Whether `b` is the transpose of `a` wherever both columns involved are exact.
/// Returns the verdict and the number of nonzero entries compared.
pub fn transpose_matches(a: &OperatorMatrix, b: &OperatorMatrix) -> (bool, usize) {
    let mut compared = 0;
    for (x, y) in [(a, b), (b, a)] {
        for (col, entries) in x.interior() {
            for (row, v) in entries {
                if let Ok(other) = y.column(row) {
                    compared += 1;
                    if other.get(col) != Some(v) {
                        return (false, compared);
                    }
                }
            }
        }
    }
    (true, compared)
}
