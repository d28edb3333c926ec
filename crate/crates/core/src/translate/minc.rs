//! Prenex quantified propositional inclusion logic to modal inclusion logic.

use crate::budget::Budget;
use crate::error::{budget, Error, Result};
use crate::formula::{ModalFormula, PropVar, TeamFormula};
use crate::team_eval::KripkeModel;

fn branch(p: &PropVar) -> ModalFormula {
    ModalFormula::and(ModalFormula::diamond(ModalFormula::pos(p.clone())), ModalFormula::diamond(ModalFormula::neg(p.clone())))
}

fn store(p: &PropVar) -> ModalFormula {
    ModalFormula::or(
        ModalFormula::and(ModalFormula::pos(p.clone()), ModalFormula::boxed(ModalFormula::pos(p.clone()))),
        ModalFormula::and(ModalFormula::neg(p.clone()), ModalFormula::boxed(ModalFormula::neg(p.clone()))),
    )
}

fn boxes(n: usize, phi: ModalFormula) -> ModalFormula {
    (0..n).fold(phi, |acc, _| ModalFormula::boxed(acc))
}

/// `branch(p₁) ∧ ⋀ᵢ □ⁱ(branch(pᵢ₊₁) ∧ ⋀_{j≤i} store(pⱼ))`, forcing a complete
/// binary assignment tree of depth `n`. `None` for no variables.
pub fn tree(vars: &[PropVar]) -> Option<ModalFormula> {
    let first = branch(vars.first()?);
    let levels = (1..vars.len()).map(|i| {
        let stores = vars[..i].iter().map(store);
        boxes(i, ModalFormula::and_all(std::iter::once(branch(&vars[i])).chain(stores)).expect("nonempty"))
    });
    ModalFormula::and_all(std::iter::once(first).chain(levels))
}

fn modal_matrix(phi: &TeamFormula) -> Result<ModalFormula> {
    use TeamFormula::*;
    Ok(match phi {
        Lit(v, s) => if *s { ModalFormula::pos(v.clone()) } else { ModalFormula::neg(v.clone()) },
        And(a, b) => ModalFormula::and(modal_matrix(a)?, modal_matrix(b)?),
        Or(a, b) => ModalFormula::or(modal_matrix(a)?, modal_matrix(b)?),
        Inc(l, r) => ModalFormula::inc(l.clone(), r.clone()),
        Exists(..) | Forall(..) => return Err(Error::NotPrenex("quantifier inside the matrix".into())),
        Tilde(_) | Dep(..) | Gda(..) => return Err(Error::NotPrenex("the matrix must be built from literals, ∧, ∨ and inclusion atoms".into())),
    })
}

/// `∂₁p₁…∂ₙpₙ ψ ↦ tree(p̄) ∧ ψ′`, where `ψ′` turns `∃` into `◇` and `∀` into
/// `□`. The sentence is true iff `ψ′ ∧ tree` holds at the root of
/// [`tree_model`] over `p₁…pₙ`.
pub fn qplinc_to_minc(phi: &TeamFormula) -> Result<ModalFormula> {
    let mut prefix = Vec::new();
    let mut cur = phi;
    loop {
        match cur {
            TeamFormula::Exists(p, b) => {
                prefix.push((true, p.clone()));
                cur = b;
            }
            TeamFormula::Forall(p, b) => {
                prefix.push((false, p.clone()));
                cur = b;
            }
            _ => break,
        }
    }
    let vars: Vec<PropVar> = prefix.iter().map(|(_, p)| p.clone()).collect();
    for (i, p) in vars.iter().enumerate() {
        if vars[..i].contains(p) {
            return Err(Error::NotPrenex(format!("`{p}` is quantified twice")));
        }
    }
    if let Some(v) = cur.free_vars().into_iter().find(|v| !vars.contains(v)) {
        return Err(Error::NotPrenex(format!("`{v}` is not quantified")));
    }
    let body = prefix.iter().rev().fold(modal_matrix(cur)?, |acc, (e, _)| {
        if *e {
            ModalFormula::diamond(acc)
        } else {
            ModalFormula::boxed(acc)
        }
    });
    Ok(match tree(&vars) {
        Some(t) => ModalFormula::and(t, body),
        None => body,
    })
}

/// The complete binary assignment tree over `vars`: a world per partial
/// assignment fixing a prefix of `vars`, edges extending it by one variable.
/// A variable not yet fixed at a world is false there, or true with
/// `unfixed = true`. World 0 is the root.
pub fn tree_model(vars: &[PropVar], unfixed: bool, budget_: &Budget) -> Result<KripkeModel> {
    budget("tree depth", vars.len() as u128, budget_.tree_depth as u128)?;
    let n = vars.len();
    // Worlds are numbered heap-style: children of w are 2w+1 and 2w+2.
    let count = (1usize << (n + 1)) - 1;
    let mut names = Vec::with_capacity(count);
    let mut paths: Vec<Vec<bool>> = Vec::with_capacity(count);
    for w in 0..count {
        let path = if w == 0 {
            Vec::new()
        } else {
            let mut p = paths[(w - 1) / 2].clone();
            p.push(w % 2 == 0);
            p
        };
        names.push(format!("w{}", path.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()));
        paths.push(path);
    }
    let mut m = KripkeModel::new(names)?;
    for (w, path) in paths.iter().enumerate() {
        if path.len() < n {
            m.add_edge(w, 2 * w + 1)?;
            m.add_edge(w, 2 * w + 2)?;
        }
        for (i, p) in vars.iter().enumerate() {
            if path.get(i).copied().unwrap_or(unfixed) {
                m.set_true(w, p.clone())?;
            }
        }
    }
    Ok(m)
}

/// [`tree_model`] over `p1…pn` with unfixed variables false.
pub fn canonical_tree_model(n: usize) -> Result<KripkeModel> {
    let vars: Vec<PropVar> = (1..=n).map(|i| PropVar::new(format!("p{i}"))).collect();
    tree_model(&vars, false, &Budget::default())
}
