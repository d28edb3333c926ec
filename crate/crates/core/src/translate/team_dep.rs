//! ADQBF instances to quantified and quantifier-free propositional team
//! logic with dependence atoms, and rewrites of the atoms themselves.

use crate::error::{Error, Result};
use crate::formula::{AdqbfInstance, BlockKind, FreshNames, PropFormula, PropVar, TeamFormula};

/// A classical matrix as a flat team formula.
fn flat(p: &PropFormula) -> TeamFormula {
    fn go(p: &PropFormula) -> TeamFormula {
        match p {
            PropFormula::Lit(v, s) => TeamFormula::lit(v, *s),
            PropFormula::And(a, b) => TeamFormula::and(go(a), go(b)),
            PropFormula::Or(a, b) => TeamFormula::or(go(a), go(b)),
            PropFormula::Not(_) => unreachable!("negation normal form"),
        }
    }
    go(&p.nnf())
}

fn deps_of(inst: &AdqbfInstance, kind: BlockKind) -> Option<TeamFormula> {
    TeamFormula::and_all(inst.block_vars().filter(|(k, _)| *k == kind).map(|(_, qv)| TeamFormula::dep(qv.deps.clone(), qv.var.clone())))
}

/// `∀p̄ Q̄q̄ ∼[∼(p₁ ∧ ¬p₁) ∧ ⋀dep(c̄, q)ᵤ] ∨ [⋀dep(c̄, q)ₑ ∧ θ]`, with `∪q`
/// written `∼∃q∼`. The first conjunction ranges over `U`-block variables
/// and the second over `E`-block variables; an empty conjunction is
/// dropped.
pub fn adqbf_to_qptl_dep(inst: &AdqbfInstance) -> Result<TeamFormula> {
    let p1 = inst.universals().first().ok_or(Error::EmptyUniversalPrefix)?;
    let nonempty = TeamFormula::tilde(TeamFormula::and(TeamFormula::pos(p1.clone()), TeamFormula::neg(p1.clone())));
    let guard = match deps_of(inst, BlockKind::Union) {
        Some(d) => TeamFormula::and(nonempty, d),
        None => nonempty,
    };
    let theta = flat(inst.matrix());
    let checked = match deps_of(inst, BlockKind::Exists) {
        Some(d) => TeamFormula::and(d, theta),
        None => theta,
    };
    let mut body = TeamFormula::or(TeamFormula::tilde(guard), checked);
    for (kind, qv) in inst.block_vars().collect::<Vec<_>>().into_iter().rev() {
        body = match kind {
            BlockKind::Exists => TeamFormula::exists(qv.var.clone(), body),
            BlockKind::Union => TeamFormula::union(qv.var.clone(), body),
        };
    }
    Ok(TeamFormula::forall_all(inst.universals(), body))
}

/// `max(p̄) = ∼⋁ dep(pᵢ)`: every assignment over `p̄` extends into the team.
pub fn build_max(vars: &[PropVar]) -> Result<TeamFormula> {
    let disj = TeamFormula::or_all(vars.iter().map(|p| TeamFormula::dep(Vec::new(), p.clone()))).ok_or(Error::EmptyVarList)?;
    Ok(TeamFormula::tilde(disj))
}

/// `max(p̄, q̄) ∧ ψ`, where `ψ` eliminates the block quantifiers left to
/// right: `∃q ↦ dep(c̄,q) ∨ (dep(c̄,q) ∧ ψ)` and
/// `∪q ↦ ∼(dep(c̄,q) ∨ (dep(c̄,q) ∧ ∼ψ))`, ending in `θ`.
pub fn qptl_dep_to_ptl_dep(inst: &AdqbfInstance) -> Result<TeamFormula> {
    let mut body = flat(inst.matrix());
    for (kind, qv) in inst.block_vars().collect::<Vec<_>>().into_iter().rev() {
        let dep = TeamFormula::dep(qv.deps.clone(), qv.var.clone());
        body = match kind {
            BlockKind::Exists => TeamFormula::or(dep.clone(), TeamFormula::and(dep, body)),
            BlockKind::Union => TeamFormula::tilde(TeamFormula::or(dep.clone(), TeamFormula::and(dep, TeamFormula::tilde(body)))),
        };
    }
    Ok(TeamFormula::and(build_max(&inst.all_vars())?, body))
}

/// The unary-atom gadget for `dep(p̄, q)` with a nonempty antecedent:
/// `∼((r ∨ ¬r) ∨ (⋀dep(pᵢ) ∧ ∼dep(q)))`, i.e. no subteam fixes `p̄` while
/// varying `q`.
fn gadget(ante: &[PropVar], q: &PropVar, r: &PropVar) -> TeamFormula {
    let constant = TeamFormula::and_all(ante.iter().map(|p| TeamFormula::dep(Vec::new(), p.clone()))).expect("nonempty antecedent");
    let witness = TeamFormula::and(constant, TeamFormula::tilde(TeamFormula::dep(Vec::new(), q.clone())));
    TeamFormula::tilde(TeamFormula::or(TeamFormula::top(r.clone()), witness))
}

fn map_deps(phi: &TeamFormula, f: &impl Fn(&[PropVar], &PropVar) -> Option<TeamFormula>) -> TeamFormula {
    use TeamFormula::*;
    match phi {
        Dep(ante, q) => f(ante, q).unwrap_or_else(|| phi.clone()),
        And(a, b) => TeamFormula::and(map_deps(a, f), map_deps(b, f)),
        Or(a, b) => TeamFormula::or(map_deps(a, f), map_deps(b, f)),
        Tilde(a) => TeamFormula::tilde(map_deps(a, f)),
        Exists(p, a) => TeamFormula::exists(p.clone(), map_deps(a, f)),
        Forall(p, a) => TeamFormula::forall(p.clone(), map_deps(a, f)),
        Lit(..) | Inc(..) | Gda(..) => phi.clone(),
    }
}

/// Replaces every dependence atom with a nonempty antecedent by the
/// unary-atom gadget over `r`, which must not occur in `φ`. The result is
/// equivalent on teams whose domain contains `r`.
pub fn dep_to_unary(phi: &TeamFormula, r: &PropVar) -> Result<TeamFormula> {
    if phi.all_vars().contains(r) {
        return Err(Error::SymbolClash(r.to_string()));
    }
    Ok(map_deps(phi, &|ante, q| (!ante.is_empty()).then(|| gadget(ante, q, r))))
}

/// [`dep_to_unary`] for sentences: each gadget is wrapped in its own `∀r`
/// over a fresh `r`, so no evaluation domain needs widening.
pub fn dep_to_unary_sentence(phi: &TeamFormula) -> TeamFormula {
    let mut fresh = FreshNames::new(phi.all_vars().iter().map(|v| v.name().to_string()));
    let r = fresh.fresh_var("r");
    map_deps(phi, &|ante, q| (!ante.is_empty()).then(|| TeamFormula::forall(r.clone(), gadget(ante, q, &r))))
}

/// Replaces each `dep(q)` by `∼(∼q ∧ ∼¬q)`.
pub fn unary_dep_elim(phi: &TeamFormula) -> TeamFormula {
    map_deps(phi, &|ante, q| {
        ante.is_empty().then(|| {
            TeamFormula::tilde(TeamFormula::and(TeamFormula::tilde(TeamFormula::pos(q.clone())), TeamFormula::tilde(TeamFormula::neg(q.clone()))))
        })
    })
}

/// The atom-free sentence `unary_dep_elim(dep_to_unary(adqbf_to_qptl_dep))`.
pub fn adqbf_to_qptl(inst: &AdqbfInstance) -> Result<TeamFormula> {
    Ok(unary_dep_elim(&dep_to_unary_sentence(&adqbf_to_qptl_dep(inst)?)))
}

/// `∀p̄ φ` over the sorted free variables of a quantifier-free, ∼-free
/// formula whose only atoms are dependence atoms.
pub fn pd_validity_wrapper(phi: &TeamFormula) -> Result<TeamFormula> {
    use TeamFormula::*;
    if phi.any(&|n| matches!(n, Tilde(_) | Exists(..) | Forall(..) | Inc(..) | Gda(..))) {
        return Err(Error::WrongFragment("expected a quantifier-free dependence formula".into()));
    }
    let vars: Vec<PropVar> = phi.free_vars().into_iter().collect();
    Ok(TeamFormula::forall_all(&vars, phi.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adqbf_eval::eval_adqbf;
    use crate::formula::Block;
    use crate::gda::GdaRegistry;
    use crate::team_eval::{all_assignments, eval_team, is_true_sentence_team, team_satisfiable, team_valid};

    fn v(s: &str) -> PropVar {
        PropVar::new(s)
    }

    fn copy_inst() -> AdqbfInstance {
        AdqbfInstance::new(
            vec![v("p")],
            vec![Block::new(BlockKind::Exists, [(v("q"), vec![v("p")])])],
            PropFormula::iff(PropFormula::pos("q"), PropFormula::pos("p")),
        )
        .unwrap()
    }

    #[test]
    fn eq3_shape_and_truth() {
        let inst = copy_inst();
        let phi = adqbf_to_qptl_dep(&inst).unwrap();
        assert_eq!(phi.sim_degree(), 2);
        let g = GdaRegistry::new();
        assert!(is_true_sentence_team(&phi, &g).unwrap());
        assert!(is_true_sentence_team(&adqbf_to_qptl(&inst).unwrap(), &g).unwrap());
        let none = AdqbfInstance::new(vec![], vec![Block::new(BlockKind::Exists, [(v("q"), Vec::<PropVar>::new())])], PropFormula::pos("q")).unwrap();
        assert!(matches!(adqbf_to_qptl_dep(&none), Err(Error::EmptyUniversalPrefix)));
    }

    #[test]
    fn elimination_example() {
        let inst = copy_inst();
        let out = qptl_dep_to_ptl_dep(&inst).unwrap();
        let dep = TeamFormula::dep(vec![v("p")], v("q"));
        let theta = flat(inst.matrix());
        let expected = TeamFormula::and(build_max(&[v("p"), v("q")]).unwrap(), TeamFormula::or(dep.clone(), TeamFormula::and(dep, theta)));
        assert_eq!(out, expected);
        assert_eq!(team_satisfiable(&out, &GdaRegistry::new()).unwrap(), eval_adqbf(&inst).unwrap());
    }

    #[test]
    fn max_characterization() {
        let g = GdaRegistry::new();
        let pq = vec![v("p"), v("q")];
        let m = build_max(&pq).unwrap();
        let full = all_assignments(pq.clone()).unwrap();
        for mask in 0..16 {
            let x = full.subteam(mask);
            assert_eq!(eval_team(&m, &x, &g).unwrap(), mask == 15, "{x:?}");
        }
        assert!(matches!(build_max(&[]), Err(Error::EmptyVarList)));
    }

    #[test]
    fn unary_rewrites() {
        let g = GdaRegistry::new();
        let dq = TeamFormula::dep(vec![], v("q"));
        let rewritten = unary_dep_elim(&dq);
        assert_eq!(
            rewritten,
            TeamFormula::tilde(TeamFormula::and(TeamFormula::tilde(TeamFormula::pos("q")), TeamFormula::tilde(TeamFormula::neg("q"))))
        );
        let dep = TeamFormula::dep(vec![v("p")], v("q"));
        let gadget = dep_to_unary(&dep, &v("r")).unwrap();
        let full = all_assignments(vec![v("p"), v("q"), v("r")]).unwrap();
        for mask in 0..256 {
            let x = full.subteam(mask);
            assert_eq!(eval_team(&gadget, &x, &g).unwrap(), eval_team(&dep, &x, &g).unwrap());
            assert_eq!(eval_team(&rewritten, &x, &g).unwrap(), eval_team(&dq, &x, &g).unwrap());
        }
        assert!(matches!(dep_to_unary(&dep, &v("p")), Err(Error::SymbolClash(_))));
        let plain = TeamFormula::or(TeamFormula::pos("p"), TeamFormula::neg("p"));
        assert_eq!(dep_to_unary(&plain, &v("r")).unwrap(), plain);
    }

    #[test]
    fn pd_wrapper() {
        let g = GdaRegistry::new();
        let dep = TeamFormula::dep(vec![v("p")], v("q"));
        let w = pd_validity_wrapper(&dep).unwrap();
        assert_eq!(w, TeamFormula::forall_all(&[v("p"), v("q")], dep.clone()));
        assert!(!is_true_sentence_team(&w, &g).unwrap());
        assert_eq!(team_valid(&dep, &g).unwrap(), false);
        let taut = TeamFormula::top("p");
        assert!(is_true_sentence_team(&pd_validity_wrapper(&taut).unwrap(), &g).unwrap());
        assert!(matches!(pd_validity_wrapper(&TeamFormula::tilde(taut)), Err(Error::WrongFragment(_))));
    }
}
