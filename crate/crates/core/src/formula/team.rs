use std::collections::BTreeSet;

use super::symbols::PropVar;

/// Quantified propositional team logic with ∼ and dependency atoms.
///
/// There is no node for the ∪ quantifier: [`TeamFormula::union`] builds the
/// desugaring `∼∃q∼φ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TeamFormula {
    Lit(PropVar, bool),
    And(Box<TeamFormula>, Box<TeamFormula>),
    /// Lax split disjunction.
    Or(Box<TeamFormula>, Box<TeamFormula>),
    Tilde(Box<TeamFormula>),
    Exists(PropVar, Box<TeamFormula>),
    Forall(PropVar, Box<TeamFormula>),
    Dep(Vec<PropVar>, PropVar),
    /// Invariant: both sides have equal length.
    Inc(Vec<PropVar>, Vec<PropVar>),
    Gda(String, Vec<PropVar>),
}

use TeamFormula::*;

impl TeamFormula {
    pub fn pos(v: impl Into<PropVar>) -> Self {
        Lit(v.into(), true)
    }

    pub fn neg(v: impl Into<PropVar>) -> Self {
        Lit(v.into(), false)
    }

    pub fn lit(v: &PropVar, sign: bool) -> Self {
        Lit(v.clone(), sign)
    }

    pub fn and(a: TeamFormula, b: TeamFormula) -> Self {
        And(Box::new(a), Box::new(b))
    }

    pub fn or(a: TeamFormula, b: TeamFormula) -> Self {
        Or(Box::new(a), Box::new(b))
    }

    pub fn tilde(a: TeamFormula) -> Self {
        Tilde(Box::new(a))
    }

    pub fn exists(v: impl Into<PropVar>, body: TeamFormula) -> Self {
        Exists(v.into(), Box::new(body))
    }

    pub fn forall(v: impl Into<PropVar>, body: TeamFormula) -> Self {
        Forall(v.into(), Box::new(body))
    }

    /// `∪q φ`, stored as `∼∃q∼φ`.
    pub fn union(v: impl Into<PropVar>, body: TeamFormula) -> Self {
        Self::tilde(Self::exists(v, Self::tilde(body)))
    }

    pub fn dep(antecedent: Vec<PropVar>, consequent: PropVar) -> Self {
        Dep(antecedent, consequent)
    }

    /// Panics if the sides differ in length.
    pub fn inc(lhs: Vec<PropVar>, rhs: Vec<PropVar>) -> Self {
        assert_eq!(lhs.len(), rhs.len(), "inclusion atom sides differ in length");
        Inc(lhs, rhs)
    }

    pub fn gda(name: impl Into<String>, args: Vec<PropVar>) -> Self {
        Gda(name.into(), args)
    }

    pub fn and_all<I: IntoIterator<Item = TeamFormula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Self::and)
    }

    pub fn or_all<I: IntoIterator<Item = TeamFormula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Self::or)
    }

    /// `p ∨ ¬p`: true in every team.
    pub fn top(v: impl Into<PropVar>) -> Self {
        let v = v.into();
        Self::or(Lit(v.clone(), true), Lit(v, false))
    }

    pub fn exists_all(vars: &[PropVar], body: TeamFormula) -> Self {
        vars.iter().rev().fold(body, |acc, v| Self::exists(v.clone(), acc))
    }

    pub fn forall_all(vars: &[PropVar], body: TeamFormula) -> Self {
        vars.iter().rev().fold(body, |acc, v| Self::forall(v.clone(), acc))
    }

    pub fn size(&self) -> usize {
        match self {
            Lit(..) | Dep(..) | Inc(..) | Gda(..) => 1,
            And(a, b) | Or(a, b) => 1 + a.size() + b.size(),
            Tilde(a) | Exists(_, a) | Forall(_, a) => 1 + a.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<PropVar> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<PropVar>, out: &mut BTreeSet<PropVar>) {
        let add = |v: &PropVar, out: &mut BTreeSet<PropVar>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Lit(v, _) => add(v, out),
            Dep(ante, q) => {
                for v in ante.iter().chain([q]) {
                    add(v, out);
                }
            }
            Inc(l, r) => {
                for v in l.iter().chain(r) {
                    add(v, out);
                }
            }
            Gda(_, args) => {
                for v in args {
                    add(v, out);
                }
            }
            And(a, b) | Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Tilde(a) => a.collect_free(bound, out),
            Exists(v, a) | Forall(v, a) => {
                bound.push(v.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<PropVar> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| match n {
            Lit(v, _) => {
                out.insert(v.clone());
            }
            Exists(v, _) | Forall(v, _) => {
                out.insert(v.clone());
            }
            Dep(a, q) => out.extend(a.iter().chain([q]).cloned()),
            Inc(l, r) => out.extend(l.iter().chain(r).cloned()),
            Gda(_, args) => out.extend(args.iter().cloned()),
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a TeamFormula)) {
        f(self);
        match self {
            And(a, b) | Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Tilde(a) | Exists(_, a) | Forall(_, a) => a.visit(f),
            _ => {}
        }
    }

    /// Nesting depth of ∼: +1 under ∼, max over binary connectives, 0 at atoms.
    pub fn sim_degree(&self) -> usize {
        match self {
            Lit(..) | Dep(..) | Inc(..) | Gda(..) => 0,
            And(a, b) | Or(a, b) => a.sim_degree().max(b.sim_degree()),
            Tilde(a) => a.sim_degree() + 1,
            Exists(_, a) | Forall(_, a) => a.sim_degree(),
        }
    }

    pub fn has_tilde(&self) -> bool {
        self.any(&|n| matches!(n, Tilde(_)))
    }

    pub fn has_atoms(&self) -> bool {
        self.any(&|n| matches!(n, Dep(..) | Inc(..) | Gda(..)))
    }

    /// Neither ∼ nor dependency atoms: the classical (flat) fragment.
    pub fn is_flat_fragment(&self) -> bool {
        !self.any(&|n| matches!(n, Tilde(_) | Dep(..) | Inc(..) | Gda(..)))
    }

    pub fn is_quantifier_free(&self) -> bool {
        !self.any(&|n| matches!(n, Exists(..) | Forall(..)))
    }

    pub fn any(&self, pred: &impl Fn(&TeamFormula) -> bool) -> bool {
        let mut found = false;
        self.visit(&mut |n| found |= pred(n));
        found
    }

    pub fn gda_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |n| {
            if let Gda(name, _) = n {
                out.insert(name.clone());
            }
        });
        out
    }

    /// Renames free occurrences of `from` to `to`. The caller guarantees that
    /// `to` is not captured.
    pub fn rename_free(&self, from: &PropVar, to: &PropVar) -> TeamFormula {
        let r = |v: &PropVar| if v == from { to.clone() } else { v.clone() };
        let rs = |vs: &[PropVar]| vs.iter().map(r).collect::<Vec<_>>();
        match self {
            Lit(v, s) => Lit(r(v), *s),
            Dep(a, q) => Dep(rs(a), r(q)),
            Inc(a, b) => Inc(rs(a), rs(b)),
            Gda(n, a) => Gda(n.clone(), rs(a)),
            And(a, b) => Self::and(a.rename_free(from, to), b.rename_free(from, to)),
            Or(a, b) => Self::or(a.rename_free(from, to), b.rename_free(from, to)),
            Tilde(a) => Self::tilde(a.rename_free(from, to)),
            Exists(v, _) | Forall(v, _) if v == from => self.clone(),
            Exists(v, a) => Self::exists(v.clone(), a.rename_free(from, to)),
            Forall(v, a) => Self::forall(v.clone(), a.rename_free(from, to)),
        }
    }
}
