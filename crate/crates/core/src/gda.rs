//! Generalized dependence atoms: sets of relations, given extensionally, by
//! an SO₂ definition over the reserved symbol `f`, or both.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use crate::budget::Budget;
use crate::error::{budget, Error, Result};
use crate::formula::{FuncSymbol, PropVar, So2Formula};
use crate::so2_eval::{eval_so2_with, Interpretation};
use crate::table::Relation;
use crate::team_eval::Team;

/// Largest arity stored as an explicit relation set.
pub const MAX_EXPLICIT_ARITY: usize = 3;

/// The name of the free symbol of a GDA definition.
pub const RESERVED_SYMBOL: &str = "f";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Relations(BTreeSet<Relation>),
    /// Membership decided by a built-in family predicate.
    Family(Family, usize),
}

impl Extension {
    fn contains(&self, r: &Relation) -> bool {
        match self {
            Extension::Relations(set) => set.contains(r),
            Extension::Family(fam, n) => fam.member(*n, r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gda {
    name: String,
    arity: usize,
    extension: Option<Extension>,
    definition: Option<So2Formula>,
}

impl Gda {
    pub fn from_relations(name: impl Into<String>, arity: usize, rels: impl IntoIterator<Item = Relation>) -> Result<Self> {
        let name = name.into();
        if arity > MAX_EXPLICIT_ARITY {
            return Err(Error::Invalid(format!("explicit extensions are limited to arity {MAX_EXPLICIT_ARITY}")));
        }
        let rels: BTreeSet<Relation> = rels.into_iter().collect();
        if let Some(r) = rels.iter().find(|r| r.arity() != arity) {
            return Err(Error::ArityMismatch(format!("relation of arity {} in atom `{name}` of arity {arity}", r.arity())));
        }
        Ok(Gda { name, arity, extension: Some(Extension::Relations(rels)), definition: None })
    }

    pub fn from_definition(name: impl Into<String>, arity: usize, def: So2Formula) -> Result<Self> {
        let name = name.into();
        check_definition(arity, &def)?;
        Ok(Gda { name, arity, extension: None, definition: Some(def) })
    }

    /// Adds a definition to an extensional atom (or replaces it).
    pub fn with_definition(mut self, def: So2Formula) -> Result<Self> {
        check_definition(self.arity, &def)?;
        self.definition = Some(def);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn extension(&self) -> Option<&Extension> {
        self.extension.as_ref()
    }

    pub fn definition(&self) -> Option<&So2Formula> {
        self.definition.as_ref()
    }

    /// Membership of a relation, through every available representation.
    pub fn contains(&self, r: &Relation, budget_: &Budget) -> Result<bool> {
        if r.arity() != self.arity {
            return Err(Error::ArityMismatch(format!(
                "atom `{}` of arity {} given a relation of arity {}",
                self.name,
                self.arity,
                r.arity()
            )));
        }
        let by_ext = self.extension.as_ref().map(|e| e.contains(r));
        let by_def = match &self.definition {
            Some(def) => Some(self.eval_definition(def, r, budget_)?),
            None => None,
        };
        match (by_ext, by_def) {
            (Some(a), Some(b)) if a != b => Err(Error::DefinitionMismatch(self.name.clone())),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => unreachable!("a GDA has at least one representation"),
        }
    }

    fn eval_definition(&self, def: &So2Formula, r: &Relation, budget_: &Budget) -> Result<bool> {
        let s = Interpretation::new().with(self.symbol(), r.char_table())?;
        eval_so2_with(def, &s, budget_)
    }

    pub fn symbol(&self) -> FuncSymbol {
        FuncSymbol::new(RESERVED_SYMBOL, self.arity)
    }
}

fn check_definition(arity: usize, def: &So2Formula) -> Result<()> {
    let f = FuncSymbol::new(RESERVED_SYMBOL, arity);
    let extra: Vec<String> = def.free_symbols().into_iter().filter(|s| *s != f).map(|s| s.to_string()).collect();
    if !extra.is_empty() {
        return Err(Error::UnexpectedFreeSymbols(extra.join(", ")));
    }
    Ok(())
}

/// `X ⊨ A_G(args)` iff `rel(X, args) ∈ G`.
pub fn gda_holds(g: &Gda, x: &Team, args: &[PropVar], budget_: &Budget) -> Result<bool> {
    if args.len() != g.arity {
        return Err(Error::ArityMismatch(format!("atom `{}` of arity {} applied to {} arguments", g.name, g.arity, args.len())));
    }
    g.contains(&x.rel_of(args)?, budget_)
}

/// Whether extension and definition agree on every relation of the arity.
pub fn check_agreement(g: &Gda, budget_: &Budget) -> Result<bool> {
    budget("GDA agreement arity", g.arity as u128, budget_.gda_arity as u128)?;
    let (Some(ext), Some(def)) = (&g.extension, &g.definition) else {
        return Err(Error::Invalid(format!("atom `{}` lacks one of its representations", g.name)));
    };
    for r in Relation::all(g.arity)? {
        if ext.contains(&r) != g.eval_definition(def, &r, budget_)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Built-in atom families, each given for every parameter `n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `dep(x1..x(n-1); xn)`, arity `n`.
    Dep,
    /// All rows agree on every argument, arity `n`.
    Constancy,
    /// `inc(x1..xn ; y1..yn)`, arity `2n`.
    Inclusion,
}

impl Family {
    pub fn arity(self, n: usize) -> usize {
        match self {
            Family::Dep | Family::Constancy => n,
            Family::Inclusion => 2 * n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Dep => "dep",
            Family::Constancy => "constancy",
            Family::Inclusion => "inc",
        }
    }

    fn member(self, n: usize, r: &Relation) -> bool {
        let tuples: Vec<Vec<bool>> = r.tuples().collect();
        match self {
            Family::Dep => tuples.iter().all(|s| tuples.iter().all(|t| s[..n - 1] != t[..n - 1] || s[n - 1] == t[n - 1])),
            Family::Constancy => tuples.len() <= 1,
            Family::Inclusion => tuples.iter().all(|s| tuples.iter().any(|t| t[n..] == s[..n])),
        }
    }

    /// The defining formula `φ_n(f)`.
    pub fn formula(self, n: usize) -> So2Formula {
        assert!(n >= 1, "families start at n = 1");
        let f = FuncSymbol::new(RESERVED_SYMBOL, self.arity(n));
        let vars = |p: &str, k: usize| (1..=k).map(|i| PropVar::new(format!("{p}{i}"))).collect::<Vec<_>>();
        let pairwise = |a: &[PropVar], b: &[PropVar]| {
            So2Formula::and_all(a.iter().zip(b).map(|(x, y)| So2Formula::iff(So2Formula::prop(x), So2Formula::prop(y))))
        };
        match self {
            Family::Dep | Family::Constancy => {
                let xs = vars("x", n);
                let ys = vars("y", n);
                let both = So2Formula::and(So2Formula::apply_vars(&f, &xs), So2Formula::apply_vars(&f, &ys));
                let (ante, concl) = match self {
                    Family::Dep => (pairwise(&xs[..n - 1], &ys[..n - 1]), pairwise(&xs[n - 1..], &ys[n - 1..])),
                    _ => (None, pairwise(&xs, &ys)),
                };
                let ante = match ante {
                    Some(a) => So2Formula::and(both, a),
                    None => both,
                };
                let body = So2Formula::implies(ante, concl.expect("n >= 1"));
                let all: Vec<PropVar> = xs.into_iter().chain(ys).collect();
                So2Formula::forall_vars(&all, body)
            }
            Family::Inclusion => {
                let xs = vars("x", n);
                let ys = vars("y", n);
                let us = vars("u", n);
                let vs = vars("v", n);
                let lhs: Vec<PropVar> = xs.iter().chain(&ys).cloned().collect();
                let rhs: Vec<PropVar> = us.iter().chain(&vs).cloned().collect();
                let witness = So2Formula::and(So2Formula::apply_vars(&f, &rhs), pairwise(&vs, &xs).expect("n >= 1"));
                So2Formula::forall_vars(
                    &lhs,
                    So2Formula::implies(So2Formula::apply_vars(&f, &lhs), So2Formula::exists_vars(&rhs, witness)),
                )
            }
        }
    }

    /// The atom `φ_n` as a [`Gda`] named after the family, with both
    /// representations.
    pub fn gda(self, n: usize) -> Gda {
        Gda {
            name: format!("{}{}", self.name(), n),
            arity: self.arity(n),
            extension: Some(Extension::Family(self, n)),
            definition: Some(self.formula(n)),
        }
    }
}

/// Looks up a built-in family by name (`dep`, `constancy`, `inc`).
pub fn translatable_family(name: &str) -> Result<Family> {
    match name {
        "dep" => Ok(Family::Dep),
        "constancy" => Ok(Family::Constancy),
        "inc" | "inclusion" => Ok(Family::Inclusion),
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

#[derive(Clone, Debug)]
pub struct FamilyEmission {
    pub formula: So2Formula,
    pub nodes: usize,
    pub elapsed: Duration,
}

pub fn emit_family(family: Family, n: usize) -> FamilyEmission {
    let start = Instant::now();
    let formula = family.formula(n);
    let elapsed = start.elapsed();
    FamilyEmission { nodes: formula.size(), formula, elapsed }
}

/// The dependence atom of arity `n` (antecedents `n-1`, one consequent).
pub fn builtin_dep(n: usize) -> Gda {
    Family::Dep.gda(n)
}

/// The inclusion atom over two `m`-tuples.
pub fn builtin_inc(m: usize) -> Gda {
    Family::Inclusion.gda(m)
}

/// Name-indexed set of atoms available to team formulas.
#[derive(Clone, Debug, Default)]
pub struct GdaRegistry {
    atoms: BTreeMap<String, Gda>,
}

impl GdaRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, g: Gda) -> Option<Gda> {
        self.atoms.insert(g.name.clone(), g)
    }

    pub fn get(&self, name: &str) -> Result<&Gda> {
        self.atoms.get(name).ok_or_else(|| Error::UnknownGda(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Gda> {
        self.atoms.values()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

impl FromIterator<Gda> for GdaRegistry {
    fn from_iter<I: IntoIterator<Item = Gda>>(iter: I) -> Self {
        let mut r = GdaRegistry::new();
        for g in iter {
            r.insert(g);
        }
        r
    }
}
