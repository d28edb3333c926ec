//! Fully parenthesized printers. Desugared patterns (∀, ∨, →, ↔, ∪) are
//! printed with their surface connective whenever re-parsing rebuilds the
//! identical tree.

use std::fmt::Write;

use crate::formula::{AdqbfInstance, BlockKind, ModalFormula, PropFormula, PropVar, So2Formula, TeamFormula};

fn join(vars: &[PropVar], sep: &str) -> String {
    vars.iter().map(|v| v.name()).collect::<Vec<_>>().join(sep)
}

fn so2_implication(f: &So2Formula) -> Option<(&So2Formula, &So2Formula)> {
    match f {
        So2Formula::Not(a) => match &**a {
            So2Formula::And(x, y) => match &**y {
                So2Formula::Not(y) => Some((x, y)),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

pub fn print_so2(f: &So2Formula) -> String {
    use So2Formula::*;
    if let Some((g, body)) = f.as_forall() {
        return format!("A {}. {}", binder(g), print_so2(body));
    }
    if let And(a, b) = f {
        if let (Some((x, y)), Some((y2, x2))) = (so2_implication(a), so2_implication(b)) {
            if x == x2 && y == y2 {
                return format!("({} <-> {})", print_so2(x), print_so2(y));
            }
        }
    }
    if let Some((x, y)) = so2_implication(f) {
        if let Not(x) = x {
            return format!("({} | {})", print_so2(x), print_so2(y));
        }
        return format!("({} -> {})", print_so2(x), print_so2(y));
    }
    match f {
        And(a, b) => format!("({} & {})", print_so2(a), print_so2(b)),
        Not(a) => format!("-{}", print_so2(a)),
        Exists(g, body) => format!("E {}. {}", binder(g), print_so2(body)),
        Apply(g, args) if args.is_empty() => g.name().to_string(),
        Apply(g, args) => {
            let args: Vec<String> = args.iter().map(print_so2).collect();
            format!("{}({})", g.name(), args.join(", "))
        }
    }
}

fn binder(g: &crate::formula::FuncSymbol) -> String {
    if g.arity() == 0 {
        g.name().to_string()
    } else {
        format!("{}/{}", g.name(), g.arity())
    }
}

pub fn print_prop(f: &PropFormula) -> String {
    use PropFormula::*;
    if let And(a, b) = f {
        if let (Or(na, y), Or(ny, x)) = (&**a, &**b) {
            if let (Not(x1), Not(y1)) = (&**na, &**ny) {
                if x1 == x && y1 == y {
                    return format!("({} <-> {})", print_prop(x), print_prop(y));
                }
            }
        }
    }
    match f {
        Lit(v, true) => v.name().to_string(),
        Lit(v, false) => format!("-{v}"),
        Or(a, b) => match &**a {
            Not(x) => format!("({} -> {})", print_prop(x), print_prop(b)),
            _ => format!("({} | {})", print_prop(a), print_prop(b)),
        },
        And(a, b) => format!("({} & {})", print_prop(a), print_prop(b)),
        Not(a) if matches!(**a, Lit(..)) => format!("-({})", print_prop(a)),
        Not(a) => format!("-{}", print_prop(a)),
    }
}

pub fn print_team(f: &TeamFormula) -> String {
    use TeamFormula::*;
    match f {
        Tilde(a) => match &**a {
            Exists(v, body) => match &**body {
                Tilde(inner) => format!("U {v}. {}", print_team(inner)),
                _ => format!("~{}", print_team(a)),
            },
            _ => format!("~{}", print_team(a)),
        },
        Lit(v, true) => v.name().to_string(),
        Lit(v, false) => format!("-{v}"),
        And(a, b) => format!("({} & {})", print_team(a), print_team(b)),
        Or(a, b) => format!("({} | {})", print_team(a), print_team(b)),
        Exists(v, body) => format!("E {v}. {}", print_team(body)),
        Forall(v, body) => format!("A {v}. {}", print_team(body)),
        Dep(ante, q) if ante.is_empty() => format!("dep({q})"),
        Dep(ante, q) => format!("dep({}; {q})", join(ante, ", ")),
        Inc(l, r) => format!("inc({}; {})", join(l, ", "), join(r, ", ")),
        Gda(name, args) => format!("gda:{name}({})", join(args, ", ")),
    }
}

pub fn print_modal(f: &ModalFormula) -> String {
    use ModalFormula::*;
    match f {
        Lit(v, true) => v.name().to_string(),
        Lit(v, false) => format!("-{v}"),
        And(a, b) => format!("({} & {})", print_modal(a), print_modal(b)),
        Or(a, b) => format!("({} | {})", print_modal(a), print_modal(b)),
        Diamond(a) => format!("<>{}", print_modal(a)),
        Boxed(a) => format!("[]{}", print_modal(a)),
        Inc(l, r) => format!("inc({}; {})", join(l, ", "), join(r, ", ")),
    }
}

pub fn print_adqbf(inst: &AdqbfInstance) -> String {
    let mut out = String::from("A");
    for u in inst.universals() {
        write!(out, " {u}").expect("string write");
    }
    out.push_str(" ;");
    for b in inst.blocks() {
        out.push(' ');
        out.push(match b.kind {
            BlockKind::Exists => 'E',
            BlockKind::Union => 'U',
        });
        for qv in &b.vars {
            write!(out, " {}{{{}}}", qv.var, join(&qv.deps, ", ")).expect("string write");
        }
    }
    write!(out, " ; {}", print_prop(inst.matrix())).expect("string write");
    out
}
