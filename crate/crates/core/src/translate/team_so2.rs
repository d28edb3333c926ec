//! Team formulas to SO₂ over the characteristic function of the team.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::formula::{FreshNames, FuncSymbol, PropVar, So2Formula, TeamFormula};
use crate::gda::{builtin_dep, builtin_inc, Gda, GdaRegistry};
use crate::so2_eval::join;

struct Ctx<'a> {
    gdas: &'a GdaRegistry,
    fresh: FreshNames,
}

fn prop(v: &PropVar) -> So2Formula {
    So2Formula::prop(v)
}

/// `ψ(f)` with `X ⊨ φ` iff `ψ` holds with `f` read as the characteristic
/// function of `rel(X, p̄)`, for every team `X` over a domain containing
/// `p̄`. Atoms, including `dep` and `⊆`, go through their SO₂ definitions.
/// ∼-free input with existential definitions yields an existential
/// formula.
pub fn team_to_so2(phi: &TeamFormula, vars: &[PropVar], f: &FuncSymbol, gdas: &GdaRegistry) -> Result<So2Formula> {
    if f.arity() != vars.len() {
        return Err(Error::ArityMismatch(format!("{f} encodes a team over {} variables", vars.len())));
    }
    let listed: BTreeSet<&PropVar> = vars.iter().collect();
    if listed.len() != vars.len() {
        return Err(Error::Invalid("the variable sequence repeats a variable".into()));
    }
    if let Some(v) = phi.free_vars().into_iter().find(|v| !listed.contains(v)) {
        return Err(Error::FreeVarOutsideDomain(v.to_string()));
    }
    let mut taken: BTreeSet<String> = phi.all_vars().iter().chain(vars).map(|v| v.name().to_string()).collect();
    if taken.contains(f.name()) {
        return Err(Error::SymbolClash(f.to_string()));
    }
    taken.insert(f.name().to_string());
    for name in phi.gda_names() {
        if let Some(def) = gdas.get(&name)?.definition() {
            taken.extend(def.names());
        }
    }
    let mut ctx = Ctx { gdas, fresh: FreshNames::new(taken) };
    ctx.go(phi, vars, f)
}

impl Ctx<'_> {
    fn go(&mut self, phi: &TeamFormula, ps: &[PropVar], f: &FuncSymbol) -> Result<So2Formula> {
        use TeamFormula::*;
        let fp = So2Formula::apply_vars(f, ps);
        Ok(match phi {
            Lit(v, sign) => {
                let lit = if *sign { prop(v) } else { So2Formula::not(prop(v)) };
                So2Formula::forall_vars(ps, So2Formula::implies(fp, lit))
            }
            And(a, b) => {
                let a = self.go(a, ps, f)?;
                So2Formula::and(a, self.go(b, ps, f)?)
            }
            Or(a, b) => {
                // ∃f₀(f₀ ⊆ f ∧ ψ₀(f₀) ∧ ∃f₁(f₁ ⊆ f ∧ f ⊆ f₀ ∪ f₁ ∧ ψ₁(f₁))): the
                // split with each half checked as soon as it is chosen.
                let f0 = self.fresh.fresh_symbol("f", ps.len());
                let f1 = self.fresh.fresh_symbol("f", ps.len());
                let a = self.go(a, ps, &f0)?;
                let b = self.go(b, ps, &f1)?;
                let within = |g: &FuncSymbol| So2Formula::forall_vars(ps, So2Formula::implies(So2Formula::apply_vars(g, ps), fp.clone()));
                let either = So2Formula::or(So2Formula::apply_vars(&f0, ps), So2Formula::apply_vars(&f1, ps));
                let covered = So2Formula::forall_vars(ps, So2Formula::implies(fp.clone(), either));
                let second = So2Formula::exists(f1.clone(), So2Formula::and_all([within(&f1), covered, b]).expect("nonempty"));
                So2Formula::exists(f0.clone(), So2Formula::and_all([within(&f0), a, second]).expect("nonempty"))
            }
            Exists(q, body) | Forall(q, body) => {
                // A rebound q reuses its column: only the projection onto p̄
                // is visible, so the old values can be overwritten in place.
                let reuse = ps.contains(q);
                let cols: Vec<PropVar> = if reuse { ps.to_vec() } else { ps.iter().cloned().chain([q.clone()]).collect() };
                let g = self.fresh.fresh_symbol("g", cols.len());
                let inner = self.go(body, &cols, &g)?;
                let gq = So2Formula::apply_vars(&g, &cols);
                let q0 = [q.clone()];
                let spread = match phi {
                    Exists(..) => So2Formula::exists_vars(&q0, gq.clone()),
                    _ => So2Formula::forall_vars(&q0, gq.clone()),
                };
                let ext = So2Formula::forall_vars(ps, So2Formula::implies(fp.clone(), spread));
                let origin = if reuse { So2Formula::exists_vars(&q0, fp) } else { fp };
                let back = So2Formula::forall_vars(&cols, So2Formula::implies(gq, origin));
                So2Formula::exists(g, So2Formula::and_all([ext, back, inner]).expect("nonempty"))
            }
            Tilde(a) => So2Formula::not(self.go(a, ps, f)?),
            Dep(ante, q) => {
                let args: Vec<PropVar> = ante.iter().cloned().chain([q.clone()]).collect();
                self.atom(&builtin_dep(args.len()), &args, ps, f)?
            }
            Inc(l, r) if l.is_empty() => So2Formula::forall_vars(ps, So2Formula::implies(fp.clone(), fp)),
            Inc(l, r) => {
                let args: Vec<PropVar> = l.iter().chain(r).cloned().collect();
                self.atom(&builtin_inc(l.len()), &args, ps, f)?
            }
            Gda(name, args) => {
                let g = self.gdas.get(name)?.clone();
                if g.arity() != args.len() {
                    return Err(Error::ArityMismatch(format!("atom `{name}` of arity {} applied to {} arguments", g.arity(), args.len())));
                }
                self.atom(&g, args, ps, f)?
            }
        })
    }

    /// `∃g(ψ_G(g) ∧ π(f, g))`, where `π` says `g` encodes the projection of
    /// the team onto `args`: forwards `∀p̄(f(p̄) → g(args))`, backwards
    /// `∀z̄∃p̄(g(z̄) → (f(p̄) ∧ z̄ ↔ args))` with fresh `z̄`, which also
    /// handles repeated arguments.
    fn atom(&mut self, gda: &Gda, args: &[PropVar], ps: &[PropVar], f: &FuncSymbol) -> Result<So2Formula> {
        let def = gda.definition().ok_or_else(|| Error::UndefinableGda(gda.name().to_string()))?;
        let g = self.fresh.fresh_symbol("g", args.len());
        let psi = def.rename_free(&gda.symbol(), &g);
        let fp = So2Formula::apply_vars(f, ps);
        let forward = So2Formula::forall_vars(ps, So2Formula::implies(fp.clone(), So2Formula::apply_vars(&g, args)));
        let zs: Vec<PropVar> = args.iter().map(|_| self.fresh.fresh_var("z")).collect();
        let matched = match So2Formula::tuple_iff(&zs, args) {
            Some(m) => So2Formula::and(fp, m),
            None => fp,
        };
        let backward = So2Formula::forall_vars(
            &zs,
            So2Formula::exists_vars(ps, So2Formula::implies(So2Formula::apply_vars(&g, &zs), matched)),
        );
        Ok(So2Formula::exists(g, So2Formula::and_all([forward, backward, psi]).expect("nonempty")))
    }
}

/// `∃f∃p̄(f(p̄) ∧ ψ(f))` for `ψ` whose only free symbol is `f`, of arity
/// `|p̄|`: true iff some nonempty team satisfies the source formula.
pub fn close_sentence(psi: &So2Formula, vars: &[PropVar]) -> Result<So2Formula> {
    let free = psi.free_symbols();
    let f = match free.iter().next() {
        Some(f) if free.len() == 1 && f.arity() == vars.len() => f.clone(),
        _ => return Err(Error::UnexpectedFreeSymbols(join(free.iter()))),
    };
    let body = So2Formula::and(So2Formula::apply_vars(&f, vars), psi.clone());
    Ok(So2Formula::exists(f, So2Formula::exists_vars(vars, body)))
}
