//! Differential testing: generate an input, run a pass, and compare the
//! oracles on both sides. Budget overruns are counted as skips.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use super::gen::{self, AtomMix, GenConfig};
use super::{print_adqbf, print_modal, print_so2, print_team, Logic};
use crate::adqbf_eval::eval_adqbf_with;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::formula::{AdqbfInstance, BlockKind, FuncSymbol, ModalFormula, PropVar, So2Formula, TeamFormula};
use crate::gda::{Gda, GdaRegistry};
use crate::so2_eval::{check_valid_with, eval_so2_with, is_true_with, Interpretation};
use crate::table::Relation;
use crate::team_eval::{eval_minc, eval_team_with, is_true_sentence_team_with, team_satisfiable_with, team_valid_with, Team, WorldSet};
use crate::translate::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub seed: u64,
    pub input: String,
    pub output: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail { input: String, output: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffReport {
    pub name: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Failures caused by an output exceeding the declared size bound.
    pub bound_violations: usize,
    pub first_failure: Option<Failure>,
}

impl DiffReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} run, {} passed, {} failed, {} skipped", self.name, self.total, self.passed, self.failed, self.skipped)?;
        if let Some(x) = &self.first_failure {
            write!(f, "\nfirst failing seed {}: {}\n  input:  {}\n  output: {}", x.seed, x.reason, x.input, x.output)?;
        }
        Ok(())
    }
}

const SIZE_BOUND: &str = "output exceeds the declared size bound";

/// Runs `check` on every seed. `BudgetExceeded` counts as a skip; any
/// other error is a failure.
pub fn run(name: &str, seeds: Range<u64>, check: impl Fn(u64) -> Result<Outcome>) -> DiffReport {
    let mut report = DiffReport { name: name.to_string(), ..DiffReport::default() };
    for seed in seeds {
        report.total += 1;
        let outcome = match check(seed) {
            Ok(o) => o,
            Err(Error::BudgetExceeded { .. }) => {
                report.skipped += 1;
                continue;
            }
            Err(e) => Outcome::Fail { input: String::new(), output: String::new(), reason: e.to_string() },
        };
        match outcome {
            Outcome::Pass => report.passed += 1,
            Outcome::Fail { input, output, reason } => {
                report.failed += 1;
                report.bound_violations += (reason == SIZE_BOUND) as usize;
                report.first_failure.get_or_insert(Failure { seed, input, output, reason });
            }
        }
    }
    report
}

/// Input parameters shared by all passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiffConfig {
    /// Target node count of generated inputs.
    pub size: usize,
    /// Variable pool size for team inputs and block-variable count for
    /// ADQBF inputs.
    pub vars: usize,
}

impl Default for DiffConfig {
    fn default() -> Self {
        DiffConfig { size: 6, vars: 2 }
    }
}

/// Generates and checks inputs for `pass` on each seed in `seeds`.
pub fn difftest(pass: Pass, seeds: Range<u64>, cfg: DiffConfig, budget: &Budget) -> DiffReport {
    run(pass.name(), seeds, |seed| check_seed(pass, seed, cfg, budget))
}

/// The atom `one` of arity 1: the relation contains the tuple `(1)`.
pub fn sample_gdas() -> GdaRegistry {
    let rels = Relation::all(1).expect("arity 1").filter(|r| r.contains(&[true]));
    let def = So2Formula::exists(
        FuncSymbol::new("x", 0),
        So2Formula::and(So2Formula::var("x"), So2Formula::apply(FuncSymbol::new("f", 1), vec![So2Formula::var("x")])),
    );
    let one = Gda::from_relations("one", 1, rels).and_then(|g| g.with_definition(def)).expect("well-formed atom");
    let mut reg = GdaRegistry::new();
    reg.insert(one);
    reg
}

fn names_so2(f: &So2Formula) -> BTreeSet<String> {
    f.names()
}

fn names_team(f: &TeamFormula) -> BTreeSet<String> {
    f.all_vars().into_iter().map(|v| v.name().to_string()).collect()
}

fn names_adqbf(i: &AdqbfInstance) -> BTreeSet<String> {
    i.all_vars().into_iter().map(|v| v.name().to_string()).collect()
}

fn names_modal(f: &ModalFormula) -> BTreeSet<String> {
    f.vars().into_iter().map(|v| v.name().to_string()).collect()
}

/// Every team over `domain`, smallest first.
pub fn all_teams(domain: &[PropVar]) -> Result<Vec<Team>> {
    let rows = 1u64 << domain.len();
    if rows > 16 {
        return Err(Error::BudgetExceeded { what: "team enumeration domain", needed: domain.len() as u128, cap: 4 });
    }
    (0..1u64 << rows).map(|mask| Team::from_words(domain.to_vec(), (0..rows).filter(|r| mask >> r & 1 == 1))).collect()
}

struct Check {
    input: String,
    output: String,
    report: PassReport,
}

impl Check {
    fn verdict(self, agree: bool, what: &str) -> Outcome {
        if !self.report.within_bound() {
            return Outcome::Fail { input: self.input, output: self.output, reason: SIZE_BOUND.into() };
        }
        if agree {
            Outcome::Pass
        } else {
            Outcome::Fail { input: self.input, output: self.output, reason: what.into() }
        }
    }
}

fn so2_check(pass: Pass, a: &So2Formula, b: &So2Formula) -> Check {
    Check {
        input: print_so2(a),
        output: print_so2(b),
        report: PassReport::new(pass, a.size(), b.size(), &names_so2(a), &names_so2(b)),
    }
}

fn team_check(pass: Pass, a: &TeamFormula, b: &TeamFormula) -> Check {
    Check {
        input: print_team(a),
        output: print_team(b),
        report: PassReport::new(pass, a.size(), b.size(), &names_team(a), &names_team(b)),
    }
}

fn adqbf_team_check(pass: Pass, a: &AdqbfInstance, b: &TeamFormula) -> Check {
    Check {
        input: print_adqbf(a),
        output: print_team(b),
        report: PassReport::new(pass, a.size(), b.size(), &names_adqbf(a), &names_team(b)),
    }
}

/// Both formulas agree on every team over `domain`.
fn team_equivalent(a: &TeamFormula, b: &TeamFormula, domain: &[PropVar], gdas: &GdaRegistry, budget: &Budget) -> Result<bool> {
    for x in all_teams(domain)? {
        if eval_team_with(a, &x, gdas, budget)? != eval_team_with(b, &x, gdas, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pool(n: usize) -> Vec<PropVar> {
    (1..=n.max(1)).map(|i| PropVar::new(format!("p{i}"))).collect()
}

/// Generates the input of `pass` for `seed`, runs the pass, and compares
/// the oracles.
pub fn check_seed(pass: Pass, seed: u64, cfg: DiffConfig, budget: &Budget) -> Result<Outcome> {
    let (check, agree, what) = seed_run(pass, seed, cfg, budget, true)?;
    Ok(check.verdict(agree, what))
}

/// The size report of `pass` on the input generated for `seed`, without
/// running the oracles.
pub fn size_report(pass: Pass, seed: u64, cfg: DiffConfig) -> Result<PassReport> {
    Ok(seed_run(pass, seed, cfg, &Budget::default(), false)?.0.report)
}

/// Runs `pass` on the input for `seed`; with `oracles`, also decides
/// whether both sides agree.
fn seed_run(pass: Pass, seed: u64, cfg: DiffConfig, budget: &Budget, oracles: bool) -> Result<(Check, bool, &'static str)> {
    let so2 = GenConfig { vars: cfg.vars, ..GenConfig::new(Logic::So2, seed, cfg.size) };
    let adqbf = GenConfig { vars: cfg.vars, ..GenConfig::new(Logic::Adqbf, seed, cfg.size) };
    let team = GenConfig { vars: cfg.vars, ..GenConfig::new(Logic::Team, seed, cfg.size) };
    let gdas = GdaRegistry::new();
    let judge = |agree: &dyn Fn() -> Result<bool>| if oracles { agree() } else { Ok(true) };
    Ok(match pass {
        Pass::Swap => {
            let (phi, x, f) = gen::swap_shape(&so2);
            let out = swap_quantifier(&phi, &x, &f)?;
            let agree = judge(&|| check_valid_with(&So2Formula::iff(phi.clone(), out.clone()), budget))?;
            (so2_check(pass, &phi, &out), agree, "not equivalent under every interpretation")
        }
        Pass::Simplify => {
            let phi = gen::so2_sentence(&so2);
            let out = simplify_applications(&phi);
            let agree = judge(&|| Ok(out.is_simple() && is_true_with(&phi, budget)? == is_true_with(&out, budget)?))?;
            (so2_check(pass, &phi, &out), agree, "truth or simplicity differs")
        }
        Pass::PrenexUnique => {
            let phi = simplify_applications(&gen::so2_sentence(&so2));
            let out = to_prenex_unique(&phi)?;
            let shape = out.is_simple() && out.is_prenex() && out.is_unique_argument();
            let agree = judge(&|| Ok(shape && is_true_with(&phi, budget)? == is_true_with(&out, budget)?))?;
            (so2_check(pass, &phi, &out), agree, "truth or normal form differs")
        }
        Pass::So2uToAdqbf => {
            let phi = to_prenex_unique(&simplify_applications(&gen::so2_sentence(&so2)))?;
            let out = so2u_to_adqbf(&phi)?;
            let agree = judge(&|| Ok(is_true_with(&phi, budget)? == eval_adqbf_with(&out, budget)?))?;
            let check = Check {
                input: print_so2(&phi),
                output: print_adqbf(&out),
                report: PassReport::new(pass, phi.size(), out.size(), &names_so2(&phi), &names_adqbf(&out)),
            };
            (check, agree, "truth differs")
        }
        Pass::Collapse => {
            let mut inst = gen::adqbf(&adqbf);
            if inst.blocks().last().map(|b| b.kind) != Some(BlockKind::Union) {
                inst = inst.dual();
            }
            let out = collapse_last_universal_block(&inst)?;
            let level = inst.blocks().len() < 2 || out.classify().level + 1 == inst.classify().level;
            let agree = judge(&|| Ok(level && eval_adqbf_with(&inst, budget)? == eval_adqbf_with(&out, budget)?))?;
            let check = Check {
                input: print_adqbf(&inst),
                output: print_adqbf(&out),
                report: PassReport::new(pass, inst.size(), out.size(), &names_adqbf(&inst), &names_adqbf(&out))
                    .with_fragments(inst.classify(), out.classify()),
            };
            (check, agree, "truth or fragment level differs")
        }
        Pass::AdqbfToQptlDep => {
            let inst = gen::adqbf(&adqbf);
            let out = adqbf_to_qptl_dep(&inst)?;
            let agree = judge(&|| Ok(eval_adqbf_with(&inst, budget)? == is_true_sentence_team_with(&out, &gdas, budget)?))?;
            (adqbf_team_check(pass, &inst, &out), agree, "truth differs")
        }
        Pass::QptlToPtlDep => {
            let inst = gen::adqbf(&adqbf);
            let out = qptl_dep_to_ptl_dep(&inst)?;
            let agree = judge(&|| Ok(eval_adqbf_with(&inst, budget)? == team_satisfiable_with(&out, &gdas, budget)?))?;
            (adqbf_team_check(pass, &inst, &out), agree, "truth differs from satisfiability")
        }
        Pass::DepToUnary => {
            let phi = gen::team(&GenConfig { mix: AtomMix { dep: 2, inc: 0, gda: 0 }, ..team.clone() });
            let r = PropVar::new("r");
            let out = dep_to_unary(&phi, &r)?;
            let mut domain = pool(cfg.vars);
            domain.push(r);
            let agree = judge(&|| team_equivalent(&phi, &out, &domain, &gdas, budget))?;
            (team_check(pass, &phi, &out), agree, "differs on some team")
        }
        Pass::UnaryDepElim => {
            let phi = gen::team(&GenConfig { mix: AtomMix { dep: 2, inc: 0, gda: 0 }, ..team.clone() });
            let out = unary_dep_elim(&phi);
            let agree = judge(&|| team_equivalent(&phi, &out, &pool(cfg.vars), &gdas, budget))?;
            (team_check(pass, &phi, &out), agree, "differs on some team")
        }
        Pass::QplincToMinc => {
            let n = cfg.vars.clamp(1, 3);
            let phi = gen::prenex_qplinc(&GenConfig { mix: AtomMix { dep: 0, inc: 1, gda: 0 }, ..team.clone() }, n, 2);
            let out = qplinc_to_minc(&phi)?;
            let agree = judge(&|| {
                let model = canonical_tree_model(n)?;
                Ok(is_true_sentence_team_with(&phi, &gdas, budget)? == eval_minc(&out, &model, WorldSet::single(0))?)
            })?;
            let check = Check {
                input: print_team(&phi),
                output: print_modal(&out),
                report: PassReport::new(pass, phi.size(), out.size(), &names_team(&phi), &names_modal(&out)),
            };
            (check, agree, "team truth differs from modal truth at the root")
        }
        Pass::PdValidityWrapper => {
            let phi = gen::qf_team(&GenConfig { mix: AtomMix { dep: 1, inc: 0, gda: 0 }, tilde: false, ..team.clone() });
            let out = pd_validity_wrapper(&phi)?;
            let agree = judge(&|| Ok(team_valid_with(&phi, &gdas, budget)? == is_true_sentence_team_with(&out, &gdas, budget)?))?;
            (team_check(pass, &phi, &out), agree, "validity differs from sentence truth")
        }
        Pass::TeamToSo2 | Pass::CloseSentence => {
            let gdas = sample_gdas();
            let phi = gen::team(&GenConfig {
                mix: AtomMix { dep: 1, inc: 1, gda: 1 },
                gdas: vec![("one".into(), 1)],
                ..team.clone()
            });
            let vars = pool(cfg.vars);
            let f = FuncSymbol::new("f", vars.len());
            let psi = team_to_so2(&phi, &vars, &f, &gdas)?;
            if pass == Pass::TeamToSo2 {
                let agree = judge(&|| {
                    for x in &all_teams(&vars)? {
                        let s = Interpretation::new().with(f.clone(), x.char_table(&vars)?)?;
                        if eval_team_with(&phi, x, &gdas, budget)? != eval_so2_with(&psi, &s, budget)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })?;
                let check = Check {
                    input: print_team(&phi),
                    output: print_so2(&psi),
                    report: PassReport::new(pass, phi.size(), psi.size(), &names_team(&phi), &names_so2(&psi)),
                };
                (check, agree, "differs from the characteristic-function interpretation")
            } else {
                let closed = close_sentence(&psi, &vars)?;
                let agree = judge(&|| {
                    let mut some = false;
                    for x in all_teams(&vars)?.iter().filter(|x| !x.is_empty()) {
                        if eval_team_with(&phi, x, &gdas, budget)? {
                            some = true;
                            break;
                        }
                    }
                    Ok(is_true_with(&closed, budget)? == some)
                })?;
                (so2_check(pass, &psi, &closed), agree, "truth differs from nonempty-team satisfiability")
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broken_stub_is_reported() {
        let report = run("broken", 0..10, |seed| {
            Ok(if seed == 3 || seed == 7 {
                Outcome::Fail { input: "p".into(), output: "q".into(), reason: "stub".into() }
            } else {
                Outcome::Pass
            })
        });
        assert_eq!((report.total, report.passed, report.failed), (10, 8, 2));
        assert_eq!(report.first_failure.as_ref().unwrap().seed, 3);
        assert!(report.to_string().contains("seed 3"));
    }

    #[test]
    fn budget_overruns_are_skips() {
        let report = run("skip", 0..4, |_| Err(Error::BudgetExceeded { what: "x", needed: 2, cap: 1 }));
        assert_eq!((report.skipped, report.failed), (4, 0));
    }

    #[test]
    fn every_pass_smoke() {
        for pass in Pass::ALL {
            let r = difftest(pass, 0..10, DiffConfig { size: 4, vars: 2 }, &Budget::default());
            assert!(r.ok(), "{r}");
        }
    }
}
