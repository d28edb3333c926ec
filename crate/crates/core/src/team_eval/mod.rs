//! Lax team semantics for quantified propositional team logic and its atom
//! extensions, plus modal team semantics on Kripke models.
//!
//! Formulas whose subformulas all have at most [`TABLE_VARS`] free variables
//! are evaluated through satisfaction tables; others fall back to the direct
//! clause-by-clause evaluator, which enumerates splits and supplementing
//! functions and is bounded by [`Budget::split_rows`].

mod direct;
mod kripke;
mod sat_table;
mod team;

pub use kripke::{eval_minc, KripkeModel, WorldSet, MAX_WORLDS};
pub use sat_table::{sat_table, SatTable, TABLE_VARS};
pub use team::{all_assignments, Choice, SupplementChoice, Team};

use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::error::{budget, Error, Result};
use crate::formula::{PropVar, TeamFormula};
use crate::gda::GdaRegistry;
use crate::so2_eval::join;

fn is_table_overflow(e: &Error) -> bool {
    matches!(e, Error::BudgetExceeded { what, .. } if *what == sat_table::TABLE_WHAT)
}

fn check_inputs(phi: &TeamFormula, x: &Team, gdas: &GdaRegistry) -> Result<()> {
    for v in phi.free_vars() {
        x.require(&v)?;
    }
    for name in phi.gda_names() {
        gdas.get(&name)?;
    }
    Ok(())
}

pub fn eval_team(phi: &TeamFormula, x: &Team, gdas: &GdaRegistry) -> Result<bool> {
    eval_team_with(phi, x, gdas, &Budget::default())
}

pub fn eval_team_with(phi: &TeamFormula, x: &Team, gdas: &GdaRegistry, budget_: &Budget) -> Result<bool> {
    check_inputs(phi, x, gdas)?;
    match sat_table(phi, gdas, budget_) {
        Ok(t) => t.holds(x),
        Err(e) if is_table_overflow(&e) => eval_team_direct(phi, x, gdas, budget_),
        Err(e) => Err(e),
    }
}

/// The clause-by-clause evaluator, without satisfaction tables.
pub fn eval_team_direct(phi: &TeamFormula, x: &Team, gdas: &GdaRegistry, budget_: &Budget) -> Result<bool> {
    check_inputs(phi, x, gdas)?;
    direct::Direct { gdas, budget: budget_ }.eval(phi, x)
}

/// Truth of a sentence: satisfaction by the unit team `{∅}`.
pub fn is_true_sentence_team(phi: &TeamFormula, gdas: &GdaRegistry) -> Result<bool> {
    is_true_sentence_team_with(phi, gdas, &Budget::default())
}

pub fn is_true_sentence_team_with(phi: &TeamFormula, gdas: &GdaRegistry, budget_: &Budget) -> Result<bool> {
    let free = phi.free_vars();
    if !free.is_empty() {
        return Err(Error::NotASentence(join(free.iter())));
    }
    eval_team_with(phi, &Team::unit(), gdas, budget_)
}

/// Classical satisfaction by a single assignment.
pub fn classical_eval(phi: &TeamFormula, s: &BTreeMap<PropVar, bool>) -> Result<bool> {
    use TeamFormula::*;
    Ok(match phi {
        Lit(v, sign) => *s.get(v).ok_or_else(|| Error::FreeVarOutsideDomain(v.to_string()))? == *sign,
        And(a, b) => classical_eval(a, s)? && classical_eval(b, s)?,
        Or(a, b) => classical_eval(a, s)? || classical_eval(b, s)?,
        Exists(p, a) | Forall(p, a) => {
            let mut r = Vec::with_capacity(2);
            for b in [false, true] {
                let mut s2 = s.clone();
                s2.insert(p.clone(), b);
                r.push(classical_eval(a, &s2)?);
            }
            if matches!(phi, Exists(..)) {
                r[0] || r[1]
            } else {
                r[0] && r[1]
            }
        }
        Tilde(_) | Dep(..) | Inc(..) | Gda(..) => return Err(Error::NotFlatFragment),
    })
}

/// Whether `eval_team(φ, X)` equals the conjunction of classical truth
/// over the rows of `X`.
pub fn check_flatness(phi: &TeamFormula, x: &Team) -> Result<bool> {
    if !phi.is_flat_fragment() {
        return Err(Error::NotFlatFragment);
    }
    let team_side = eval_team(phi, x, &GdaRegistry::new())?;
    let mut rows_side = true;
    for row in x.assignments() {
        let s: BTreeMap<PropVar, bool> = x.domain().iter().cloned().zip(row).collect();
        rows_side &= classical_eval(phi, &s)?;
    }
    Ok(team_side == rows_side)
}

fn decide(phi: &TeamFormula, gdas: &GdaRegistry, budget_: &Budget, include_empty: bool, want_all: bool) -> Result<bool> {
    let vars: Vec<PropVar> = phi.free_vars().into_iter().collect();
    budget("satisfiability variables", vars.len() as u128, budget_.sat_vars as u128)?;
    for name in phi.gda_names() {
        gdas.get(&name)?;
    }
    let first = if include_empty { 0 } else { 1 };
    match sat_table(phi, gdas, budget_) {
        Ok(t) => {
            let mut teams = first..t.team_count();
            Ok(if want_all { teams.all(|m| t.get(m)) } else { teams.any(|m| t.get(m)) })
        }
        Err(e) if is_table_overflow(&e) => {
            let full = Team::all_assignments(vars, &Budget { team_domain: budget_.sat_vars, ..*budget_ })?;
            let count = 1u64 << full.len();
            for mask in first as u64..count {
                let v = eval_team_direct(phi, &full.subteam(mask), gdas, budget_)?;
                if v != want_all {
                    return Ok(v);
                }
            }
            Ok(want_all)
        }
        Err(e) => Err(e),
    }
}

/// Some nonempty team over `Fr(φ)` satisfies `φ`. For sentences this is
/// truth on the unit team.
pub fn team_satisfiable(phi: &TeamFormula, gdas: &GdaRegistry) -> Result<bool> {
    team_satisfiable_with(phi, gdas, &Budget::default())
}

pub fn team_satisfiable_with(phi: &TeamFormula, gdas: &GdaRegistry, budget_: &Budget) -> Result<bool> {
    decide(phi, gdas, budget_, false, false)
}

/// Every team over `Fr(φ)`, the empty one included, satisfies `φ`.
pub fn team_valid(phi: &TeamFormula, gdas: &GdaRegistry) -> Result<bool> {
    team_valid_with(phi, gdas, &Budget::default())
}

pub fn team_valid_with(phi: &TeamFormula, gdas: &GdaRegistry, budget_: &Budget) -> Result<bool> {
    decide(phi, gdas, budget_, true, true)
}
