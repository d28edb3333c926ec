//! Making every application take only propositions as arguments.

use crate::formula::{FreshNames, PropVar, So2Formula};

/// Rewrites each application with compound arguments `f(…ψ…)` into
/// `∀b̄((b₁ ↔ d₁) → … → f(…b…))`, naming every compound argument and,
/// recursively, every compound sub-argument by a fresh proposition `bᵢ`.
/// Naming sub-arguments instead of nesting the rule keeps the output
/// polynomial: an argument is copied twice by `↔` only where a quantifier
/// stops the naming.
pub fn simplify_applications(phi: &So2Formula) -> So2Formula {
    if phi.is_simple() {
        return phi.clone();
    }
    let mut fresh = FreshNames::new(phi.names());
    go(phi, &mut fresh)
}

fn go(phi: &So2Formula, fresh: &mut FreshNames) -> So2Formula {
    use So2Formula::*;
    match phi {
        And(a, b) => So2Formula::and(go(a, fresh), go(b, fresh)),
        Not(a) => So2Formula::not(go(a, fresh)),
        Exists(f, b) => So2Formula::exists(f.clone(), go(b, fresh)),
        Apply(f, args) => {
            if args.iter().all(|a| a.as_proposition().is_some()) {
                return phi.clone();
            }
            let mut defs = Vec::new();
            let args = args.iter().map(|a| name(a, fresh, &mut defs)).collect();
            let body = So2Formula::apply(f.clone(), args);
            let guarded =
                defs.iter().rev().fold(body, |acc, (b, e)| So2Formula::implies(So2Formula::iff(So2Formula::prop(b), e.clone()), acc));
            let names: Vec<PropVar> = defs.iter().map(|(b, _)| b.clone()).collect();
            So2Formula::forall_vars(&names, guarded)
        }
    }
}

fn name(arg: &So2Formula, fresh: &mut FreshNames, defs: &mut Vec<(PropVar, So2Formula)>) -> So2Formula {
    use So2Formula::*;
    if arg.as_proposition().is_some() {
        return arg.clone();
    }
    let b = fresh.fresh_var("b");
    let def = match arg {
        Apply(g, args) => So2Formula::apply(g.clone(), args.iter().map(|a| name(a, fresh, defs)).collect()),
        Not(c) => So2Formula::not(name(c, fresh, defs)),
        And(c, d) => {
            let c = name(c, fresh, defs);
            So2Formula::and(c, name(d, fresh, defs))
        }
        Exists(h, body) => So2Formula::exists(h.clone(), go(body, fresh)),
    };
    defs.push((b.clone(), def));
    So2Formula::prop(&b)
}
