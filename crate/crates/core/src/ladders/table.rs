//! The su(2,2) commutator table, stored as a verified fixture.

use serde::{Deserialize, Serialize};

use super::expr::{operator_matrix, BasisWindow, OperatorExpr};
use super::generator::Generator;
use crate::error::{Error, Result};

const FIXTURE: &str = include_str!("../../fixtures/su22_commutators.json");

/// `[left, right] = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub left: OperatorExpr,
    pub right: OperatorExpr,
    pub rhs: OperatorExpr,
}

impl Relation {
    /// `[left, right] - rhs`, zero when the relation holds.
    pub fn residual(&self) -> OperatorExpr {
        OperatorExpr::commutator(&self.left, &self.right).sub(&self.rhs)
    }

    /// The same relation read in the opposite order: `[right, left] + rhs`.
    pub fn reversed_residual(&self) -> OperatorExpr {
        OperatorExpr::commutator(&self.right, &self.left).add(&self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorTable {
    pub window_two_j_max: i64,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

pub fn commutator_table() -> Result<CommutatorTable> {
    serde_json::from_str(FIXTURE).map_err(|e| Error::Parse(e.to_string()))
}

/// Outcome of checking one relation on a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    pub interior_columns: usize,
    pub out_of_window_columns: usize,
}

/// Both orderings must vanish on every exact column, with at least one exact column.
pub fn check_relation(r: &Relation, w: &BasisWindow) -> RelationCheck {
    let fwd = operator_matrix(&r.residual(), w);
    let rev = operator_matrix(&r.reversed_residual(), w);
    RelationCheck {
        name: r.name.clone(),
        holds: fwd.is_zero_on_interior() && rev.is_zero_on_interior(),
        interior_columns: fwd.interior_count(),
        out_of_window_columns: fwd.out_of_window_count(),
    }
}

/// Whether every unordered pair of distinct su(2,2) generators has a relation.
pub fn covers_all_pairs(table: &CommutatorTable) -> bool {
    let gens = Generator::SU22;
    gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..].iter().all(|b| {
            let single = |e: &OperatorExpr, g: &Generator| *e == OperatorExpr::generator(*g);
            table.relations.iter().any(|r| {
                (single(&r.left, a) && single(&r.right, b)) || (single(&r.left, b) && single(&r.right, a))
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RadicalScalar;
    use Generator::*;

    #[test]
    fn fixture_covers_every_pair() {
        let t = commutator_table().unwrap();
        assert!(covers_all_pairs(&t));
        assert_eq!(t.generators.len(), 15);
    }

    #[test]
    fn fixture_holds() {
        let t = commutator_table().unwrap();
        let w = BasisWindow::new(t.window_two_j_max);
        for r in &t.relations {
            let c = check_relation(r, &w);
            assert!(c.holds, "{}", r.name);
        }
    }

    #[test]
    fn flipped_sign_fails() {
        let t = commutator_table().unwrap();
        let w = BasisWindow::new(5);
        let mut r = t
            .relations
            .iter()
            .find(|r| r.left == OperatorExpr::generator(APlus) && r.right == OperatorExpr::generator(CMinus))
            .unwrap()
            .clone();
        assert!(!r.rhs.is_zero());
        r.rhs = r.rhs.scaled(&RadicalScalar::from_int(-1));
        assert!(!check_relation(&r, &w).holds);
    }
}
