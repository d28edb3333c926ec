use std::collections::BTreeSet;

use super::symbols::PropVar;

/// Classical quantifier-free propositional formula.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PropFormula {
    /// `sign == true` is the positive literal.
    Lit(PropVar, bool),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Not(Box<PropFormula>),
}

use PropFormula::*;

impl PropFormula {
    pub fn pos(v: impl Into<PropVar>) -> Self {
        Lit(v.into(), true)
    }

    pub fn neg(v: impl Into<PropVar>) -> Self {
        Lit(v.into(), false)
    }

    pub fn and(a: PropFormula, b: PropFormula) -> Self {
        And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PropFormula, b: PropFormula) -> Self {
        Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: PropFormula) -> Self {
        Not(Box::new(a))
    }

    pub fn implies(a: PropFormula, b: PropFormula) -> Self {
        Self::or(Self::not(a), b)
    }

    pub fn iff(a: PropFormula, b: PropFormula) -> Self {
        Self::and(Self::implies(a.clone(), b.clone()), Self::implies(b, a))
    }

    pub fn and_all<I: IntoIterator<Item = PropFormula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Self::and)
    }

    pub fn or_all<I: IntoIterator<Item = PropFormula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Self::or)
    }

    pub fn size(&self) -> usize {
        match self {
            Lit(..) => 1,
            And(a, b) | Or(a, b) => 1 + a.size() + b.size(),
            Not(a) => 1 + a.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<PropVar> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<PropVar>) {
        match self {
            Lit(v, _) => {
                out.insert(v.clone());
            }
            And(a, b) | Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Not(a) => a.collect_vars(out),
        }
    }

    /// Classical evaluation under `value`.
    pub fn eval(&self, value: &impl Fn(&PropVar) -> bool) -> bool {
        match self {
            Lit(v, sign) => value(v) == *sign,
            And(a, b) => a.eval(value) && b.eval(value),
            Or(a, b) => a.eval(value) || b.eval(value),
            Not(a) => !a.eval(value),
        }
    }

    /// Negation normal form: no `Not` nodes remain.
    pub fn nnf(&self) -> PropFormula {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> PropFormula {
        match self {
            Lit(v, s) => Lit(v.clone(), *s == positive),
            Not(a) => a.nnf_signed(!positive),
            And(a, b) if positive => Self::and(a.nnf_signed(true), b.nnf_signed(true)),
            And(a, b) => Self::or(a.nnf_signed(false), b.nnf_signed(false)),
            Or(a, b) if positive => Self::or(a.nnf_signed(true), b.nnf_signed(true)),
            Or(a, b) => Self::and(a.nnf_signed(false), b.nnf_signed(false)),
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Lit(..) => true,
            And(a, b) | Or(a, b) => a.is_nnf() && b.is_nnf(),
            Not(_) => false,
        }
    }

    /// Replaces variables through `map`; variables mapped to `None` stay.
    pub fn rename(&self, map: &impl Fn(&PropVar) -> Option<PropVar>) -> PropFormula {
        match self {
            Lit(v, s) => Lit(map(v).unwrap_or_else(|| v.clone()), *s),
            And(a, b) => Self::and(a.rename(map), b.rename(map)),
            Or(a, b) => Self::or(a.rename(map), b.rename(map)),
            Not(a) => Self::not(a.rename(map)),
        }
    }

    /// Compiles against a variable order: variable `order[i]` is read from
    /// bit `i` of the assignment word.
    pub fn compile(&self, order: &[PropVar]) -> Option<CompiledProp> {
        let mut nodes = Vec::new();
        let root = self.compile_into(order, &mut nodes)?;
        Some(CompiledProp { nodes, root })
    }

    fn compile_into(&self, order: &[PropVar], nodes: &mut Vec<PropNode>) -> Option<usize> {
        let node = match self {
            Lit(v, s) => PropNode::Lit(order.iter().position(|x| x == v)?, *s),
            And(a, b) => {
                let a = a.compile_into(order, nodes)?;
                let b = b.compile_into(order, nodes)?;
                PropNode::And(a, b)
            }
            Or(a, b) => {
                let a = a.compile_into(order, nodes)?;
                let b = b.compile_into(order, nodes)?;
                PropNode::Or(a, b)
            }
            Not(a) => PropNode::Not(a.compile_into(order, nodes)?),
        };
        nodes.push(node);
        Some(nodes.len() - 1)
    }
}

#[derive(Clone, Copy, Debug)]
enum PropNode {
    Lit(usize, bool),
    And(usize, usize),
    Or(usize, usize),
    Not(usize),
}

/// A [`PropFormula`] with variables resolved to bit positions.
#[derive(Clone, Debug)]
pub struct CompiledProp {
    nodes: Vec<PropNode>,
    root: usize,
}

impl CompiledProp {
    pub fn eval(&self, bits: u64) -> bool {
        self.eval_node(self.root, bits)
    }

    fn eval_node(&self, i: usize, bits: u64) -> bool {
        match self.nodes[i] {
            PropNode::Lit(k, s) => ((bits >> k) & 1 == 1) == s,
            PropNode::And(a, b) => self.eval_node(a, bits) && self.eval_node(b, bits),
            PropNode::Or(a, b) => self.eval_node(a, bits) || self.eval_node(b, bits),
            PropNode::Not(a) => !self.eval_node(a, bits),
        }
    }
}
