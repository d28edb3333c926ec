//! Normalized SO₂ sentences to alternating dependency QBFs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::formula::{AdqbfInstance, Block, BlockKind, FreshNames, PropFormula, PropVar, Quant, So2Formula};

fn not_normalized(why: impl Into<String>) -> Error {
    Error::NotNormalized(why.into())
}

fn kind(q: Quant) -> BlockKind {
    match q {
        Quant::Exists => BlockKind::Exists,
        Quant::Forall => BlockKind::Union,
    }
}

/// Translates a closed, simple, prenex, unique-argument sentence whose
/// function quantifiers precede its propositional ones.
///
/// Each function becomes a block variable constrained by the universal
/// propositions of its argument tuple; an existential proposition becomes
/// an existential variable constrained by the universals quantified before
/// it and joins the last block. A function whose tuple mentions an
/// existential proposition reads fresh universals `r̄` instead, each of its
/// literals `±f(ā)` becoming `(ā ≠ r̄) ∨ ±f`. If the last function block is
/// universal, an existential block headed by an unused dummy variable is
/// added for the propositions to join.
pub fn so2u_to_adqbf(phi: &So2Formula) -> Result<AdqbfInstance> {
    if !phi.is_closed() {
        return Err(not_normalized("the sentence has free symbols"));
    }
    if !phi.is_simple() {
        return Err(not_normalized("an application has a compound argument"));
    }
    if !phi.is_unique_argument() {
        return Err(not_normalized("a function occurs with two argument tuples"));
    }
    let (prefix, matrix) = phi.prenex_parts().ok_or_else(|| not_normalized("the sentence is not prenex"))?;
    let first_prop = prefix.iter().position(|(_, f)| !f.is_proper()).unwrap_or(prefix.len());
    if prefix[first_prop..].iter().any(|(_, f)| f.is_proper()) {
        return Err(not_normalized("a function quantifier follows a propositional one"));
    }
    let mut names = BTreeSet::new();
    for (_, f) in &prefix {
        if !names.insert(f.name().to_string()) {
            return Err(not_normalized(format!("`{}` is quantified twice", f.name())));
        }
    }
    let mut fresh = FreshNames::new(phi.names());

    let mut universals: Vec<PropVar> = Vec::new();
    let mut tail: Vec<(PropVar, Vec<PropVar>)> = Vec::new();
    for (q, x) in &prefix[first_prop..] {
        match q {
            Quant::Forall => universals.push(x.as_var()),
            Quant::Exists => tail.push((x.as_var(), universals.clone())),
        }
    }

    let tuples = phi.argument_tuples();
    let mut blocks: Vec<Block> = Vec::new();
    let mut rewrites: BTreeMap<PropVar, Vec<(PropVar, PropVar)>> = BTreeMap::new();
    let mut extra_universals = Vec::new();
    for (q, f) in &prefix[..first_prop] {
        let var = f.as_var();
        let args: Vec<PropVar> = tuples
            .get(f)
            .and_then(|t| t.iter().next())
            .map(|t| t.iter().map(|a| a.as_proposition().expect("simple").as_var()).collect())
            .unwrap_or_default();
        let deps = if args.iter().all(|a| universals.contains(a)) {
            args
        } else {
            let rs: Vec<PropVar> = args.iter().map(|_| fresh.fresh_var("r")).collect();
            rewrites.insert(var.clone(), args.into_iter().zip(rs.iter().cloned()).collect());
            extra_universals.extend(rs.iter().cloned());
            rs
        };
        match blocks.last_mut() {
            Some(b) if b.kind == kind(*q) => b.vars.push(crate::formula::QuantVar { var, deps }),
            _ => blocks.push(Block::new(kind(*q), [(var, deps)])),
        }
    }
    let dummy = matches!(blocks.last(), Some(b) if b.kind == BlockKind::Union);
    if dummy {
        blocks.push(Block::new(BlockKind::Exists, [(fresh.fresh_var("d"), Vec::<PropVar>::new())]));
    }
    if !tail.is_empty() {
        if blocks.last().map(|b| b.kind) != Some(BlockKind::Exists) {
            blocks.push(Block::new(BlockKind::Exists, Vec::<(PropVar, Vec<PropVar>)>::new()));
        }
        blocks.last_mut().expect("pushed").vars.extend(tail.into_iter().map(|(var, deps)| crate::formula::QuantVar { var, deps }));
    }
    universals.extend(extra_universals);

    let prop = to_prop(&matrix)?.nnf();
    let prop = guard_literals(&prop, &rewrites);
    AdqbfInstance::new(universals, blocks, prop)
}

/// A quantifier-free simple matrix as a propositional formula, reading
/// `f(ā)` as the variable named `f`.
fn to_prop(m: &So2Formula) -> Result<PropFormula> {
    use So2Formula::*;
    Ok(match m {
        And(a, b) => PropFormula::and(to_prop(a)?, to_prop(b)?),
        Not(a) => PropFormula::not(to_prop(a)?),
        Apply(f, _) => PropFormula::pos(f.as_var()),
        Exists(..) => return Err(not_normalized("quantifier inside the matrix")),
    })
}

fn guard_literals(p: &PropFormula, rewrites: &BTreeMap<PropVar, Vec<(PropVar, PropVar)>>) -> PropFormula {
    match p {
        PropFormula::Lit(v, _) => match rewrites.get(v) {
            Some(pairs) => {
                let differs = PropFormula::or_all(pairs.iter().map(|(a, r)| {
                    PropFormula::or(
                        PropFormula::and(PropFormula::pos(a.clone()), PropFormula::neg(r.clone())),
                        PropFormula::and(PropFormula::neg(a.clone()), PropFormula::pos(r.clone())),
                    )
                }))
                .expect("proper function");
                PropFormula::or(differs, p.clone())
            }
            None => p.clone(),
        },
        PropFormula::And(a, b) => PropFormula::and(guard_literals(a, rewrites), guard_literals(b, rewrites)),
        PropFormula::Or(a, b) => PropFormula::or(guard_literals(a, rewrites), guard_literals(b, rewrites)),
        PropFormula::Not(a) => PropFormula::not(guard_literals(a, rewrites)),
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::adqbf_eval::eval_adqbf;
    use crate::formula::FuncSymbol;
    use crate::so2_eval::is_true;

    fn sym(n: &str, a: usize) -> FuncSymbol {
        FuncSymbol::new(n, a)
    }

    fn app(n: &str, args: &[&str]) -> So2Formula {
        So2Formula::apply(sym(n, args.len()), args.iter().map(So2Formula::var).collect())
    }

    #[test]
    fn example_instance() {
        // ∀g ∃h ∀x (h(x) ↔ ¬g(x))
        let body = So2Formula::iff(app("h", &["x"]), So2Formula::not(app("g", &["x"])));
        let phi = So2Formula::forall(sym("g", 1), So2Formula::exists(sym("h", 1), So2Formula::forall(sym("x", 0), body)));
        let inst = so2u_to_adqbf(&phi).unwrap();
        assert_eq!(inst.universals(), &[PropVar::new("x")]);
        let kinds: Vec<BlockKind> = inst.blocks().iter().map(|b| b.kind).collect();
        assert_eq!(kinds, vec![BlockKind::Union, BlockKind::Exists]);
        for b in inst.blocks() {
            assert_eq!(b.vars[0].deps, vec![PropVar::new("x")]);
        }
        assert!(is_true(&phi).unwrap());
        assert!(eval_adqbf(&inst).unwrap());
    }

    #[test]
    fn pure_dqbf() {
        let phi = So2Formula::forall(
            sym("p", 0),
            So2Formula::exists(sym("q", 0), So2Formula::iff(So2Formula::var("q"), So2Formula::var("p"))),
        );
        let inst = so2u_to_adqbf(&phi).unwrap();
        assert!(inst.is_dqbf());
        assert_eq!(inst.blocks()[0].vars[0].deps, vec![PropVar::new("p")]);
        assert!(eval_adqbf(&inst).unwrap());
    }

    #[test]
    fn existential_argument_gets_fresh_universals() {
        // ∃f ∀p ∃q (f(q) ↔ p): f would have to read the existential q.
        let body = So2Formula::iff(app("f", &["q"]), So2Formula::var("p"));
        let phi = So2Formula::exists(sym("f", 1), So2Formula::forall(sym("p", 0), So2Formula::exists(sym("q", 0), body)));
        let inst = so2u_to_adqbf(&phi).unwrap();
        assert_eq!(inst.universals().len(), 2);
        assert_eq!(is_true(&phi).unwrap(), eval_adqbf(&inst).unwrap());
        let flipped = So2Formula::forall(sym("f", 1), So2Formula::forall(sym("p", 0), So2Formula::exists(sym("q", 0), So2Formula::iff(app("f", &["q"]), So2Formula::var("p")))));
        let inst = so2u_to_adqbf(&flipped).unwrap();
        assert_eq!(inst.blocks().last().unwrap().kind, BlockKind::Exists);
        assert_eq!(is_true(&flipped).unwrap(), eval_adqbf(&inst).unwrap());
    }

    #[test]
    fn rejects_unnormalized() {
        let phi = So2Formula::forall(sym("x", 0), So2Formula::exists(sym("f", 1), app("f", &["x"])));
        assert!(matches!(so2u_to_adqbf(&phi), Err(Error::NotNormalized(_))));
        let open = app("f", &["x"]);
        assert!(matches!(so2u_to_adqbf(&open), Err(Error::NotNormalized(_))));
    }
}
