use std::collections::BTreeSet;

use super::symbols::PropVar;

/// Modal inclusion logic: no quantifiers, no ∼.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ModalFormula {
    Lit(PropVar, bool),
    And(Box<ModalFormula>, Box<ModalFormula>),
    Or(Box<ModalFormula>, Box<ModalFormula>),
    Diamond(Box<ModalFormula>),
    Boxed(Box<ModalFormula>),
    Inc(Vec<PropVar>, Vec<PropVar>),
}

use ModalFormula::*;

impl ModalFormula {
    pub fn pos(v: impl Into<PropVar>) -> Self {
        Lit(v.into(), true)
    }

    pub fn neg(v: impl Into<PropVar>) -> Self {
        Lit(v.into(), false)
    }

    pub fn and(a: ModalFormula, b: ModalFormula) -> Self {
        And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ModalFormula, b: ModalFormula) -> Self {
        Or(Box::new(a), Box::new(b))
    }

    pub fn diamond(a: ModalFormula) -> Self {
        Diamond(Box::new(a))
    }

    pub fn boxed(a: ModalFormula) -> Self {
        Boxed(Box::new(a))
    }

    /// Panics if the sides differ in length.
    pub fn inc(lhs: Vec<PropVar>, rhs: Vec<PropVar>) -> Self {
        assert_eq!(lhs.len(), rhs.len(), "inclusion atom sides differ in length");
        Inc(lhs, rhs)
    }

    pub fn and_all<I: IntoIterator<Item = ModalFormula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Self::and)
    }

    pub fn size(&self) -> usize {
        match self {
            Lit(..) | Inc(..) => 1,
            And(a, b) | Or(a, b) => 1 + a.size() + b.size(),
            Diamond(a) | Boxed(a) => 1 + a.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<PropVar> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<PropVar>) {
        match self {
            Lit(v, _) => {
                out.insert(v.clone());
            }
            Inc(l, r) => out.extend(l.iter().chain(r).cloned()),
            And(a, b) | Or(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            Diamond(a) | Boxed(a) => a.collect(out),
        }
    }

    pub fn modal_depth(&self) -> usize {
        match self {
            Lit(..) | Inc(..) => 0,
            And(a, b) | Or(a, b) => a.modal_depth().max(b.modal_depth()),
            Diamond(a) | Boxed(a) => 1 + a.modal_depth(),
        }
    }
}
