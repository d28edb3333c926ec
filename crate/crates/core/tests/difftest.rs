use tlwb_core::formula::{PropVar, TeamFormula};
use tlwb_core::frontend::difftest::{all_teams, check_seed, difftest, run, DiffConfig, Outcome};
use tlwb_core::gda::GdaRegistry;
use tlwb_core::team_eval::eval_team;
use tlwb_core::translate::{dep_to_unary, unary_dep_elim, Pass};
use tlwb_core::Budget;

#[test]
fn collapse_on_500_tiny_seeds() {
    let r = difftest(Pass::Collapse, 0..500, DiffConfig { size: 3, vars: 2 }, &Budget::default());
    assert_eq!((r.failed, r.skipped, r.passed), (0, 0, 500), "{r}");
}

#[test]
fn dep_to_unary_exhaustive_on_three_variables() {
    // Every dependence atom over p, q with the gadget variable r: teams on
    // three variables.
    let vars = [PropVar::new("p"), PropVar::new("q")];
    let r = PropVar::new("r");
    let domain = [vars[0].clone(), vars[1].clone(), r.clone()];
    let teams = all_teams(&domain).unwrap();
    assert_eq!(teams.len(), 256);
    let gdas = GdaRegistry::new();
    let mut atoms = Vec::new();
    for q in &vars {
        atoms.push(TeamFormula::dep(vec![], q.clone()));
        for p in &vars {
            atoms.push(TeamFormula::dep(vec![p.clone()], q.clone()));
        }
        atoms.push(TeamFormula::dep(vars.to_vec(), q.clone()));
    }
    for atom in &atoms {
        let gadget = dep_to_unary(atom, &r).unwrap();
        let elim = unary_dep_elim(&gadget);
        for x in &teams {
            let native = eval_team(atom, x, &gdas).unwrap();
            assert_eq!(eval_team(&gadget, x, &gdas).unwrap(), native);
            assert_eq!(eval_team(&elim, x, &gdas).unwrap(), native);
        }
    }
    let seeded = difftest(Pass::DepToUnary, 0..200, DiffConfig { size: 5, vars: 2 }, &Budget::default());
    assert_eq!(seeded.failed, 0, "{seeded}");
}

#[test]
fn broken_stub_names_the_seed() {
    // A stub that disagrees on every seed ≡ 3 (mod 7).
    let report = run("broken", 10..40, |seed| {
        Ok(if seed % 7 == 3 { Outcome::Fail { input: format!("in{seed}"), output: "out".into(), reason: "disagree".into() } } else { Outcome::Pass })
    });
    let first = report.first_failure.clone().unwrap();
    assert_eq!(first.seed, 10);
    assert_eq!(first.input, "in10");
    assert!(!report.ok());
    assert!(report.to_string().contains("first failing seed 10"));
}

#[test]
fn difftest_is_deterministic() {
    for pass in [Pass::Swap, Pass::So2uToAdqbf, Pass::QptlToPtlDep, Pass::TeamToSo2] {
        let a = difftest(pass, 0..30, DiffConfig::default(), &Budget::default());
        let b = difftest(pass, 0..30, DiffConfig::default(), &Budget::default());
        assert_eq!(a, b);
    }
}

#[test]
fn every_pass_has_no_failures_on_small_inputs() {
    for pass in Pass::ALL {
        let r = difftest(pass, 0..100, DiffConfig { size: 5, vars: 2 }, &Budget::default());
        assert_eq!(r.failed, 0, "{r}");
        assert!(r.passed > 0, "{r}");
    }
}

#[test]
fn single_seed_checks_are_reproducible() {
    let budget = Budget::default();
    let a = check_seed(Pass::PrenexUnique, 42, DiffConfig::default(), &budget).ok();
    let b = check_seed(Pass::PrenexUnique, 42, DiffConfig::default(), &budget).ok();
    assert_eq!(a, b);
}
