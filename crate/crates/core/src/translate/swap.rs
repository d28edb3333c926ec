//! Exchanging a propositional quantifier with a function quantifier by
//! widening the function with the proposition as a new first argument.

use crate::error::{Error, Result};
use crate::formula::{FreshNames, FuncSymbol, So2Formula};

/// `∀x∃f ψ ↦ ∃f′∀x ψ′` and `∃x∀f ψ ↦ ∀f′∃x ψ′`, where `ψ′` replaces each
/// `f(ȳ)` by `f′(x, ȳ)` and `f′` is a fresh symbol of arity `ar(f) + 1`.
pub fn swap_quantifier(phi: &So2Formula, x: &FuncSymbol, f: &FuncSymbol) -> Result<So2Formula> {
    let mut fresh = FreshNames::new(phi.names());
    let widened = fresh.fresh_symbol(f.name(), f.arity() + 1);
    swap_quantifier_to(phi, x, f, &widened)
}

/// As [`swap_quantifier`] with a caller-chosen `f′`.
pub fn swap_quantifier_to(phi: &So2Formula, x: &FuncSymbol, f: &FuncSymbol, widened: &FuncSymbol) -> Result<So2Formula> {
    if x.arity() != 0 || !f.is_proper() || widened.arity() != f.arity() + 1 {
        return Err(Error::ShapeMismatch(format!("cannot swap {x} with {f} into {widened}")));
    }
    if phi.names().contains(widened.name()) {
        return Err(Error::SymbolClash(widened.to_string()));
    }
    let (outer_exists, body) = match_shape(phi, x, f)
        .ok_or_else(|| Error::ShapeMismatch(format!("expected ∀{x}∃{f} or ∃{x}∀{f} at the top")))?;
    let mut rebinds = false;
    body.visit(&mut |n| {
        if let So2Formula::Exists(g, _) = n {
            rebinds |= g == x || g == f;
        }
    });
    if rebinds {
        return Err(Error::ShapeMismatch(format!("{x} or {f} is rebound inside the body")));
    }
    let body = widen(body, f, widened, x);
    Ok(if outer_exists {
        So2Formula::forall(widened.clone(), So2Formula::exists(x.clone(), body))
    } else {
        So2Formula::exists(widened.clone(), So2Formula::forall(x.clone(), body))
    })
}

/// Returns whether the outer propositional quantifier is existential, and
/// the body under both quantifiers.
fn match_shape<'a>(phi: &'a So2Formula, x: &FuncSymbol, f: &FuncSymbol) -> Option<(bool, &'a So2Formula)> {
    if let Some((y, inner)) = phi.as_forall() {
        if let So2Formula::Exists(g, body) = inner {
            if y == x && g == f {
                return Some((false, body));
            }
        }
    }
    if let So2Formula::Exists(y, inner) = phi {
        if let Some((g, body)) = inner.as_forall() {
            if y == x && g == f {
                return Some((true, body));
            }
        }
    }
    None
}

/// Replaces `f(ȳ)` by `to(x, ȳ)` everywhere; `f` is not rebound.
pub(super) fn widen(phi: &So2Formula, f: &FuncSymbol, to: &FuncSymbol, x: &FuncSymbol) -> So2Formula {
    widen_many(phi, f, to, &[So2Formula::apply(x.clone(), Vec::new())])
}

pub(super) fn widen_many(phi: &So2Formula, f: &FuncSymbol, to: &FuncSymbol, extra: &[So2Formula]) -> So2Formula {
    use So2Formula::*;
    match phi {
        And(a, b) => So2Formula::and(widen_many(a, f, to, extra), widen_many(b, f, to, extra)),
        Not(a) => So2Formula::not(widen_many(a, f, to, extra)),
        Exists(g, b) => So2Formula::exists(g.clone(), widen_many(b, f, to, extra)),
        Apply(g, args) => {
            let args: Vec<So2Formula> = args.iter().map(|a| widen_many(a, f, to, extra)).collect();
            if g == f {
                So2Formula::apply(to.clone(), extra.iter().cloned().chain(args).collect())
            } else {
                Apply(g.clone(), args)
            }
        }
    }
}
