use std::collections::{BTreeMap, BTreeSet};

use super::symbols::{FuncSymbol, PropVar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Quant {
    Exists,
    Forall,
}

impl Quant {
    pub fn dual(self) -> Self {
        match self {
            Quant::Exists => Quant::Forall,
            Quant::Forall => Quant::Exists,
        }
    }
}

/// Second-order propositional formula over the core connectives.
///
/// Disjunction, implication, equivalence and universal quantification are
/// only available as builders that desugar into these four node kinds.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum So2Formula {
    And(Box<So2Formula>, Box<So2Formula>),
    Not(Box<So2Formula>),
    Exists(FuncSymbol, Box<So2Formula>),
    /// Invariant: `args.len() == symbol.arity()`.
    Apply(FuncSymbol, Vec<So2Formula>),
}

use So2Formula::*;

impl So2Formula {
    /// An arity-0 symbol used as a proposition.
    pub fn var(name: impl AsRef<str>) -> Self {
        Apply(FuncSymbol::new(name, 0), Vec::new())
    }

    pub fn prop(v: &PropVar) -> Self {
        Apply(v.as_symbol(), Vec::new())
    }

    /// Panics if the argument count differs from the arity.
    pub fn apply(symbol: FuncSymbol, args: Vec<So2Formula>) -> Self {
        assert_eq!(symbol.arity(), args.len(), "arity mismatch applying {symbol}");
        Apply(symbol, args)
    }

    /// Applies `symbol` to a tuple of propositions.
    pub fn apply_vars(symbol: &FuncSymbol, args: &[PropVar]) -> Self {
        Self::apply(symbol.clone(), args.iter().map(So2Formula::prop).collect())
    }

    pub fn and(a: So2Formula, b: So2Formula) -> Self {
        And(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: So2Formula) -> Self {
        Not(Box::new(a))
    }

    pub fn or(a: So2Formula, b: So2Formula) -> Self {
        Self::not(Self::and(Self::not(a), Self::not(b)))
    }

    pub fn implies(a: So2Formula, b: So2Formula) -> Self {
        Self::not(Self::and(a, Self::not(b)))
    }

    pub fn iff(a: So2Formula, b: So2Formula) -> Self {
        Self::and(Self::implies(a.clone(), b.clone()), Self::implies(b, a))
    }

    pub fn exists(f: FuncSymbol, body: So2Formula) -> Self {
        Exists(f, Box::new(body))
    }

    pub fn forall(f: FuncSymbol, body: So2Formula) -> Self {
        Self::not(Self::exists(f, Self::not(body)))
    }

    pub fn exists_all(symbols: &[FuncSymbol], body: So2Formula) -> Self {
        symbols.iter().rev().fold(body, |acc, f| Self::exists(f.clone(), acc))
    }

    pub fn forall_all(symbols: &[FuncSymbol], body: So2Formula) -> Self {
        symbols.iter().rev().fold(body, |acc, f| Self::forall(f.clone(), acc))
    }

    pub fn exists_vars(vars: &[PropVar], body: So2Formula) -> Self {
        vars.iter().rev().fold(body, |acc, v| Self::exists(v.as_symbol(), acc))
    }

    pub fn forall_vars(vars: &[PropVar], body: So2Formula) -> Self {
        vars.iter().rev().fold(body, |acc, v| Self::forall(v.as_symbol(), acc))
    }

    /// Left-nested conjunction; `None` for an empty sequence.
    pub fn and_all<I: IntoIterator<Item = So2Formula>>(items: I) -> Option<Self> {
        items.into_iter().reduce(Self::and)
    }

    /// Pairwise equivalence of two equally long proposition tuples.
    pub fn tuple_iff(a: &[PropVar], b: &[PropVar]) -> Option<Self> {
        debug_assert_eq!(a.len(), b.len());
        Self::and_all(a.iter().zip(b).map(|(x, y)| Self::iff(Self::prop(x), Self::prop(y))))
    }

    /// Matches `Not(Exists(f, Not(body)))`, the desugared universal.
    pub fn as_forall(&self) -> Option<(&FuncSymbol, &So2Formula)> {
        match self {
            Not(inner) => match inner.as_ref() {
                Exists(f, body) => match body.as_ref() {
                    Not(b) => Some((f, b)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// `Some(name)` when this node is an arity-0 application.
    pub fn as_proposition(&self) -> Option<&FuncSymbol> {
        match self {
            Apply(f, args) if f.arity() == 0 && args.is_empty() => Some(f),
            _ => None,
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            And(a, b) => 1 + a.size() + b.size(),
            Not(a) => 1 + a.size(),
            Exists(_, b) => 1 + b.size(),
            Apply(_, args) => 1 + args.iter().map(So2Formula::size).sum::<usize>(),
        }
    }

    pub fn free_symbols(&self) -> BTreeSet<FuncSymbol> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<FuncSymbol>, out: &mut BTreeSet<FuncSymbol>) {
        match self {
            And(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Not(a) => a.collect_free(bound, out),
            Exists(f, body) => {
                bound.push(f.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Apply(f, args) => {
                if !bound.contains(f) {
                    out.insert(f.clone());
                }
                for a in args {
                    a.collect_free(bound, out);
                }
            }
        }
    }

    /// Every symbol occurring anywhere, bound or free.
    pub fn all_symbols(&self) -> BTreeSet<FuncSymbol> {
        let mut out = BTreeSet::new();
        self.visit(&mut |node| match node {
            Exists(f, _) | Apply(f, _) => {
                out.insert(f.clone());
            }
            _ => {}
        });
        out
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.all_symbols().into_iter().map(|f| f.name().to_string()).collect()
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a So2Formula)) {
        f(self);
        match self {
            And(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Not(a) => a.visit(f),
            Exists(_, b) => b.visit(f),
            Apply(_, args) => args.iter().for_each(|a| a.visit(f)),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_symbols().is_empty()
    }

    /// Every application takes only propositions as arguments.
    pub fn is_simple(&self) -> bool {
        let mut simple = true;
        self.visit(&mut |node| {
            if let Apply(_, args) = node {
                if args.iter().any(|a| a.as_proposition().is_none()) {
                    simple = false;
                }
            }
        });
        simple
    }

    pub fn is_quantifier_free(&self) -> bool {
        let mut qf = true;
        self.visit(&mut |node| {
            if matches!(node, Exists(..)) {
                qf = false;
            }
        });
        qf
    }

    /// Splits a prenex formula into its quantifier prefix and quantifier-free
    /// matrix. Negations between binders fold into the quantifier kind.
    pub fn prenex_parts(&self) -> Option<(Vec<(Quant, FuncSymbol)>, So2Formula)> {
        let mut prefix = Vec::new();
        let mut negated = false;
        let mut cur = self;
        loop {
            match cur {
                Not(a) => {
                    negated = !negated;
                    cur = a;
                }
                Exists(f, b) => {
                    prefix.push((if negated { Quant::Forall } else { Quant::Exists }, f.clone()));
                    cur = b;
                }
                Apply(..) | And(..) => break,
            }
        }
        if !cur.is_quantifier_free() {
            return None;
        }
        let matrix = if negated { Self::not(cur.clone()) } else { cur.clone() };
        Some((prefix, matrix))
    }

    pub fn from_prenex(prefix: &[(Quant, FuncSymbol)], matrix: So2Formula) -> Self {
        prefix.iter().rev().fold(matrix, |acc, (q, f)| match q {
            Quant::Exists => Self::exists(f.clone(), acc),
            Quant::Forall => Self::not(Self::exists(f.clone(), acc.negated())),
        })
    }

    /// Negation that cancels an outermost negation instead of stacking.
    pub fn negated(&self) -> Self {
        match self {
            Not(a) => (**a).clone(),
            _ => Self::not(self.clone()),
        }
    }

    pub fn is_prenex(&self) -> bool {
        self.prenex_parts().is_some()
    }

    /// The distinct argument tuples each proper symbol is applied to.
    pub fn argument_tuples(&self) -> BTreeMap<FuncSymbol, BTreeSet<Vec<So2Formula>>> {
        let mut out: BTreeMap<FuncSymbol, BTreeSet<Vec<So2Formula>>> = BTreeMap::new();
        self.visit(&mut |node| {
            if let Apply(f, args) = node {
                if f.is_proper() {
                    out.entry(f.clone()).or_default().insert(args.clone());
                }
            }
        });
        out
    }

    /// Every proper symbol occurs with a single argument tuple.
    pub fn is_unique_argument(&self) -> bool {
        self.argument_tuples().values().all(|t| t.len() <= 1)
    }

    /// Replaces free occurrences of `from` by `to` (same arity), respecting
    /// shadowing. The caller guarantees `to` is not captured.
    pub fn rename_free(&self, from: &FuncSymbol, to: &FuncSymbol) -> So2Formula {
        debug_assert_eq!(from.arity(), to.arity());
        match self {
            And(a, b) => Self::and(a.rename_free(from, to), b.rename_free(from, to)),
            Not(a) => Self::not(a.rename_free(from, to)),
            Exists(f, _) if f == from => self.clone(),
            Exists(f, body) => Self::exists(f.clone(), body.rename_free(from, to)),
            Apply(f, args) => {
                let args = args.iter().map(|a| a.rename_free(from, to)).collect();
                let f = if f == from { to.clone() } else { f.clone() };
                Apply(f, args)
            }
        }
    }

    /// True iff no proper function symbol is quantified under an odd number
    /// of negations, i.e. the formula is in the existential fragment.
    pub fn is_existential_so2(&self) -> bool {
        fn go(phi: &So2Formula, negated: bool) -> bool {
            match phi {
                And(a, b) => go(a, negated) && go(b, negated),
                Not(a) => go(a, !negated),
                Exists(f, b) => !(f.is_proper() && negated) && go(b, negated),
                Apply(_, args) => args.iter().all(|a| go(a, false) && go(a, true)),
            }
        }
        go(self, false)
    }

    /// Negation normal form over the derived connectives.
    pub fn nnf(&self) -> So2Nnf {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> So2Nnf {
        match (self, positive) {
            (And(a, b), true) => So2Nnf::And(Box::new(a.nnf_signed(true)), Box::new(b.nnf_signed(true))),
            (And(a, b), false) => So2Nnf::Or(Box::new(a.nnf_signed(false)), Box::new(b.nnf_signed(false))),
            (Not(a), p) => a.nnf_signed(!p),
            (Exists(f, b), true) => So2Nnf::Exists(f.clone(), Box::new(b.nnf_signed(true))),
            (Exists(f, b), false) => So2Nnf::Forall(f.clone(), Box::new(b.nnf_signed(false))),
            (Apply(f, args), p) => So2Nnf::Lit { positive: p, symbol: f.clone(), args: args.clone() },
        }
    }
}

/// Negation normal form of an [`So2Formula`]. Negation only occurs on
/// applications; arguments of applications are kept as core formulas.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum So2Nnf {
    And(Box<So2Nnf>, Box<So2Nnf>),
    Or(Box<So2Nnf>, Box<So2Nnf>),
    Exists(FuncSymbol, Box<So2Nnf>),
    Forall(FuncSymbol, Box<So2Nnf>),
    Lit { positive: bool, symbol: FuncSymbol, args: Vec<So2Formula> },
}

impl So2Nnf {
    /// Desugars back into the core connectives.
    pub fn to_core(&self) -> So2Formula {
        match self {
            So2Nnf::And(a, b) => So2Formula::and(a.to_core(), b.to_core()),
            So2Nnf::Or(a, b) => So2Formula::or(a.to_core(), b.to_core()),
            So2Nnf::Exists(f, b) => So2Formula::exists(f.clone(), b.to_core()),
            So2Nnf::Forall(f, b) => So2Formula::forall(f.clone(), b.to_core()),
            So2Nnf::Lit { positive, symbol, args } => {
                let atom = Apply(symbol.clone(), args.clone());
                if *positive {
                    atom
                } else {
                    So2Formula::not(atom)
                }
            }
        }
    }

    /// Negation only directly above applications.
    pub fn is_nnf(&self) -> bool {
        match self {
            So2Nnf::And(a, b) | So2Nnf::Or(a, b) => a.is_nnf() && b.is_nnf(),
            So2Nnf::Exists(_, b) | So2Nnf::Forall(_, b) => b.is_nnf(),
            So2Nnf::Lit { .. } => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(name: &str, arity: usize) -> FuncSymbol {
        FuncSymbol::new(name, arity)
    }

    #[test]
    fn free_symbols_of_unbound_constant() {
        let phi = So2Formula::var("f");
        assert_eq!(phi.free_symbols(), BTreeSet::from([f("f", 0)]));
    }

    #[test]
    fn free_symbols_respect_binders() {
        // E p. (p & q)
        let phi = So2Formula::exists(f("p", 0), So2Formula::and(So2Formula::var("p"), So2Formula::var("q")));
        assert_eq!(phi.free_symbols(), BTreeSet::from([f("q", 0)]));
    }

    #[test]
    fn binder_arity_matters() {
        // E f/1. f() -- the nullary f stays free
        let phi = So2Formula::exists(f("f", 1), So2Formula::var("f"));
        assert_eq!(phi.free_symbols(), BTreeSet::from([f("f", 0)]));
    }

    #[test]
    fn nnf_de_morgan_and_double_negation() {
        let a = So2Formula::var("a");
        let b = So2Formula::var("b");
        let neg_and = So2Formula::not(So2Formula::and(a.clone(), b.clone()));
        let lit = |p: bool, n: &str| So2Nnf::Lit { positive: p, symbol: f(n, 0), args: vec![] };
        assert_eq!(neg_and.nnf(), So2Nnf::Or(Box::new(lit(false, "a")), Box::new(lit(false, "b"))));
        assert_eq!(So2Formula::not(So2Formula::not(a)).nnf(), lit(true, "a"));
    }

    #[test]
    fn nnf_pushes_negation_through_exists() {
        let phi = So2Formula::not(So2Formula::exists(f("g", 1), So2Formula::apply(f("g", 1), vec![So2Formula::var("x")])));
        match phi.nnf() {
            So2Nnf::Forall(g, body) => {
                assert_eq!(g, f("g", 1));
                assert!(matches!(*body, So2Nnf::Lit { positive: false, .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn forall_pattern() {
        let phi = So2Formula::forall(f("x", 0), So2Formula::var("x"));
        let (x, body) = phi.as_forall().unwrap();
        assert_eq!(x, &f("x", 0));
        assert_eq!(body, &So2Formula::var("x"));
    }

    #[test]
    fn simple_detection() {
        let g = So2Formula::apply(f("g", 1), vec![So2Formula::var("x")]);
        assert!(g.is_simple());
        assert!(!So2Formula::apply(f("h", 1), vec![g]).is_simple());
    }

    #[test]
    fn existential_fragment() {
        let body = So2Formula::apply(f("g", 1), vec![So2Formula::var("x")]);
        assert!(So2Formula::exists(f("g", 1), body.clone()).is_existential_so2());
        assert!(!So2Formula::forall(f("g", 1), body.clone()).is_existential_so2());
        // universal propositions are fine
        assert!(So2Formula::forall(f("x", 0), So2Formula::exists(f("g", 1), body)).is_existential_so2());
    }
}
