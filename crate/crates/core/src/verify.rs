//! Verification suites producing machine-readable reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::WeightedPoly;
use crate::jacobi::{ajf, ode_residual, symmetry_holds, Symmetry};
use crate::ladders::{
    apply_generator_closed, apply_generator_diff, casimir_apply, casimir_apply_diff, check_relation,
    commutator_table, covers_all_pairs, factorization_check, k_minus_numerator, k_via_products,
    operator_matrix, transpose_matches, weyl_substitution_check, Action, BasisWindow, Casimir,
    Family, Generator, OperatorExpr,
};
use crate::params::{make_jmq, JmqTriple};
use crate::scalar::{int, RadicalScalar};
use crate::transforms::{
    analyze, column_labels, gram, kernel_reproduce, parseval, round_trip_exact, synthesize,
    CoefficientVector,
};
use crate::wigner::{d_checks, d_matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyItem {
    pub id: String,
    pub status: Status,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub window: i64,
    pub items: Vec<VerifyItem>,
    pub passed: bool,
}

impl VerifyReport {
    fn new(suite: Suite, window: i64) -> Self {
        VerifyReport {
            suite: suite.name().to_string(),
            window,
            items: Vec::new(),
            passed: true,
        }
    }

    fn push(&mut self, id: impl Into<String>, ok: bool, residual: impl Into<String>) {
        self.passed &= ok;
        self.items.push(VerifyItem {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: residual.into(),
        });
    }

    fn push_result(&mut self, id: impl Into<String>, r: Result<(bool, String)>) {
        match r {
            Ok((ok, detail)) => self.push(id, ok, detail),
            Err(e) => self.push(id, false, format!("error: {e}")),
        }
    }

    fn absorb(&mut self, other: VerifyReport) {
        for item in other.items {
            let ok = item.status == Status::Pass;
            self.push(format!("{}/{}", other.suite, item.id), ok, item.residual);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerifyItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        writeln!(
            f,
            "suite {} (window 2j <= {}): {} checks, {} failed",
            self.suite,
            self.window,
            self.items.len(),
            failed
        )?;
        for item in self.failures() {
            writeln!(f, "FAIL {}  {}", item.id, item.residual)?;
        }
        write!(f, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Commutators,
    Casimirs,
    Factorizations,
    DiffClosed,
    Hermiticity,
    Weyl,
    Ode,
    Symmetries,
    Orthogonality,
    Boundary,
    Transforms,
    Wigner,
    All,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Commutators,
        Suite::Casimirs,
        Suite::Factorizations,
        Suite::DiffClosed,
        Suite::Hermiticity,
        Suite::Weyl,
        Suite::Ode,
        Suite::Symmetries,
        Suite::Orthogonality,
        Suite::Boundary,
        Suite::Transforms,
        Suite::Wigner,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Commutators => "commutators",
            Suite::Casimirs => "casimirs",
            Suite::Factorizations => "factorizations",
            Suite::DiffClosed => "diffclosed",
            Suite::Hermiticity => "hermiticity",
            Suite::Weyl => "weyl",
            Suite::Ode => "ode",
            Suite::Symmetries => "symmetries",
            Suite::Orthogonality => "orthogonality",
            Suite::Boundary => "boundary",
            Suite::Transforms => "transforms",
            Suite::Wigner => "wigner",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

pub fn run_suite(suite: Suite, two_j_max: i64) -> VerifyReport {
    let mut r = VerifyReport::new(suite, two_j_max);
    match suite {
        Suite::Commutators => commutators(&mut r, two_j_max),
        Suite::Casimirs => casimirs(&mut r, two_j_max),
        Suite::Factorizations => factorizations(&mut r, two_j_max),
        Suite::DiffClosed => diff_closed(&mut r, two_j_max),
        Suite::Hermiticity => hermiticity(&mut r, two_j_max),
        Suite::Weyl => weyl(&mut r),
        Suite::Ode => ode(&mut r, two_j_max),
        Suite::Symmetries => symmetries(&mut r, two_j_max),
        Suite::Orthogonality => orthogonality(&mut r, two_j_max),
        Suite::Boundary => boundary(&mut r, two_j_max),
        Suite::Transforms => transforms(&mut r, two_j_max),
        Suite::Wigner => wigner(&mut r, two_j_max),
        Suite::All => {
            for s in Suite::ALL.into_iter().filter(|s| *s != Suite::All) {
                r.absorb(run_suite(s, two_j_max));
            }
        }
    }
    r
}

fn commutators(r: &mut VerifyReport, n: i64) {
    let table = match commutator_table() {
        Ok(t) => t,
        Err(e) => return r.push("fixture", false, format!("error: {e}")),
    };
    r.push("fixture covers all generator pairs", covers_all_pairs(&table), "");
    let w = BasisWindow::new(n);
    for rel in &table.relations {
        let c = check_relation(rel, &w);
        let detail = format!(
            "[a,b] - ({}) vanishes on {} exact columns ({} out of window)",
            rel.rhs, c.interior_columns, c.out_of_window_columns
        );
        r.push(rel.name.clone(), c.holds, detail);
    }
}

fn casimirs(r: &mut VerifyReport, n: i64) {
    for c in Casimir::ALL {
        for t in JmqTriple::window(n) {
            let want = RadicalScalar::from_rational(c.eigenvalue(&t));
            r.push_result(format!("{c} closed {t}"), casimir_apply(c, &t).map(|v| (v == want, format!("value {v}"))));
            r.push_result(format!("{c} diff {t}"), casimir_apply_diff(c, &t).map(|v| (v == want, format!("value {v}"))));
        }
    }
}

fn factorizations(r: &mut VerifyReport, n: i64) {
    for f in Family::ALL {
        for t in JmqTriple::window(n) {
            let (a, b) = f.factorization_eigenvalues(&t);
            r.push_result(
                format!("{f}+{f}- and {f}-{f}+ on {t}"),
                factorization_check(f, &t).map(|ok| (ok, format!("eigenvalues {a}, {b}"))),
            );
        }
    }
}

/// Differential image of `g` on `ajf(t)` against the closed-form coefficient times `ajf(t')`.
pub fn diff_matches_closed(g: Generator, t: &JmqTriple) -> Result<(bool, String)> {
    let f = ajf(t);
    let boundary = g == Generator::KMinus && t.j() == t.m().abs() && t.j() == t.q().abs();
    if boundary {
        let closed = apply_generator_closed(g, t) == Action::Annihilated;
        let limit = k_minus_numerator(&f)?.is_zero();
        return Ok((closed && limit, "boundary: closed form annihilates, numerator vanishes".into()));
    }
    let got = apply_generator_diff(g, &f)?;
    let (want, label, detail) = match apply_generator_closed(g, t) {
        Action::Shift { coef, target } => (ajf(&target).scaled(&coef).value(), Some(target), format!("{coef} -> {target}")),
        Action::Annihilated => (Default::default(), None, "annihilated".to_string()),
    };
    let mut ok = got.value() == want && got.function().map(|h| h.label) == label;
    if matches!(g, Generator::KPlus | Generator::KMinus) {
        ok &= k_via_products(g, &f)?.value() == want;
    }
    Ok((ok, detail))
}

fn diff_closed(r: &mut VerifyReport, n: i64) {
    for g in Generator::ALL {
        for t in JmqTriple::window(n) {
            r.push_result(format!("{g} on {t}"), diff_matches_closed(g, &t));
        }
    }
}

fn hermiticity(r: &mut VerifyReport, n: i64) {
    let w = BasisWindow::new(n);
    for g in Generator::ALL {
        if g.adjoint() < g {
            continue;
        }
        let a = operator_matrix(&OperatorExpr::generator(g), &w);
        let b = operator_matrix(&OperatorExpr::generator(g.adjoint()), &w);
        let (ok, compared) = transpose_matches(&a, &b);
        r.push(format!("{g} vs {}", g.adjoint()), ok && compared > 0, format!("{compared} entries compared"));
    }
}

fn weyl(r: &mut VerifyReport) {
    use Generator::*;
    for g in [DPlus, DMinus, EPlus, EMinus, FPlus, FMinus] {
        r.push(format!("{g} from C"), weyl_substitution_check(g), "");
    }
}

fn ode(r: &mut VerifyReport, n: i64) {
    for t in JmqTriple::window(n) {
        r.push_result(format!("ode {t}"), ode_residual(&t).map(|w| (w.is_zero(), format!("residual {w}"))));
    }
}

fn symmetries(r: &mut VerifyReport, n: i64) {
    for t in JmqTriple::window(n) {
        for s in Symmetry::ALL {
            r.push(format!("{s:?} {t}"), symmetry_holds(&t, s), "");
        }
    }
}

fn orthogonality(r: &mut VerifyReport, n: i64) {
    for two_m in -4..=4i64 {
        for two_q in -4..=4i64 {
            if (two_m - two_q) % 2 != 0 {
                continue;
            }
            r.push_result(
                format!("gram m={two_m}/2 q={two_q}/2"),
                gram(two_m, two_q, n).map(|g| (g.is_identity(), format!("{} x {}", g.two_j.len(), g.two_j.len()))),
            );
        }
    }
}

fn boundary(r: &mut VerifyReport, n: i64) {
    for two_j in 0..=n {
        for (sm, sq) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            if two_j == 0 && (sm, sq) != (1, 1) {
                continue;
            }
            let t = make_jmq(two_j, sm * two_j, sq * two_j).expect("boundary label");
            let closed = apply_generator_closed(Generator::KMinus, &t) == Action::Annihilated;
            r.push_result(
                format!("K- on {t}"),
                k_minus_numerator(&ajf(&t)).map(|w| (closed && w.is_zero(), format!("numerator {w}"))),
            );
        }
    }
}

/// Deterministic points in (-1, 1).
pub fn sample_points(count: usize) -> Vec<f64> {
    (1..=count).map(|k| (k as f64 * 2.399963229728653).cos() * 0.999).collect()
}

fn transforms(r: &mut VerifyReport, n: i64) {
    for (two_m, two_q) in [(0, 0), (2, 0), (1, 1)] {
        let labels = match column_labels(two_m, two_q, n) {
            Ok(l) => l,
            Err(e) => return r.push("labels", false, format!("error: {e}")),
        };
        // a function in the span: sum of basis functions with rational weights
        let mut c = CoefficientVector::new(two_m, two_q);
        for (k, t) in labels.iter().enumerate() {
            let _ = c.insert(t.j().twice(), RadicalScalar::from_rational(int(k as i64 + 1) / int(3)));
        }
        let id = format!("m={two_m}/2 q={two_q}/2");
        r.push_result(
            format!("analyze after synthesize {id}"),
            synthesize(&c).and_then(|f| {
                let back = f
                    .parts()
                    .map(|(rad, w)| {
                        let root = RadicalScalar::sqrt(&crate::scalar::Rational::from_integer(rad.clone().into()))?;
                        Ok(analyze(w, two_m, two_q, n)?.entries.into_iter().map(move |(j, v)| (j, &v * &root)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut total = CoefficientVector::new(two_m, two_q);
                for (j, v) in back.into_iter().flatten() {
                    total.insert(j, v)?;
                }
                Ok((total == c, format!("{} entries", c.entries.len())))
            }),
        );
        let f = match span_sum(&labels) {
            Ok(f) => f,
            Err(e) => return r.push(format!("span {id}"), false, format!("error: {e}")),
        };
        r.push_result(format!("round trip {id}"), round_trip_exact(&f, two_m, two_q, n).map(|ok| (ok, format!("{f}"))));
        r.push_result(
            format!("parseval {id}"),
            parseval(&f, two_m, two_q, n).map(|(a, b)| (RadicalScalar::from_rational(a.clone()) == b, format!("{a} vs {b}"))),
        );
        for x in sample_points(20) {
            r.push_result(
                format!("kernel reproduction {id} x={x:.6}"),
                kernel_reproduce(&f, two_m, two_q, n, x).and_then(|v| {
                    let want = f.evaluate(x)?;
                    Ok(((v - want).abs() <= 1e-12, format!("defect {:e}", (v - want).abs())))
                }),
            );
        }
    }
}

/// The sum of the (rational) bodies of every basis function in a column; it lies in the span.
pub fn span_sum(labels: &[JmqTriple]) -> Result<WeightedPoly> {
    labels
        .iter()
        .try_fold(WeightedPoly::zero(), |acc, t| acc.add(&ajf(t).body))
}

fn wigner(r: &mut VerifyReport, n: i64) {
    let angles: Vec<(f64, f64)> = sample_points(20).chunks(2).map(|p| (p[0] * 3.1, p[1] * 2.7)).collect();
    for two_j in 0..=n {
        match d_matrix(two_j, 0.0) {
            Ok(d) => r.push(format!("d^{two_j}/2(0) = I"), d.identity_distance() == 0.0, ""),
            Err(e) => r.push(format!("d^{two_j}/2(0) = I"), false, format!("error: {e}")),
        }
        for (b1, b2) in &angles {
            r.push_result(
                format!("group laws 2j={two_j} b1={b1:.4} b2={b2:.4}"),
                d_checks(two_j, *b1, *b2).map(|c| (c.worst() <= 1e-11, format!("{c:?}"))),
            );
        }
    }
}
