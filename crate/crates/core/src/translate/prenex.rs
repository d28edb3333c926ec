//! Prenex normal form with unique function arguments.

use std::collections::{BTreeMap, BTreeSet};

use super::simplify::simplify_applications;
use super::swap::widen_many;
use crate::error::{Error, Result};
use crate::formula::{FreshNames, FuncSymbol, PropVar, Quant, So2Formula};
use crate::so2_eval::join;

type Item = (Quant, FuncSymbol);

/// Quantifier blocks; block `i` quantifies functions of the start kind when
/// `i` is even and of the dual kind when odd. Propositional quantifiers sit
/// inside blocks but carry their own kind.
#[derive(Clone, Default)]
struct Prefix(Vec<Vec<Item>>);

impl Prefix {
    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|b| b.is_empty()) {
            self.0.pop();
        }
        self
    }

    fn shifted(&self) -> Self {
        let mut blocks = vec![Vec::new()];
        blocks.extend(self.0.iter().cloned());
        Prefix(blocks).trimmed()
    }

    fn dual(&self) -> Self {
        Prefix(self.0.iter().map(|b| b.iter().map(|(q, f)| (q.dual(), f.clone())).collect()).collect())
    }

    fn push_front(&self, item: Item) -> Self {
        let mut blocks = self.0.clone();
        if blocks.is_empty() {
            blocks.push(Vec::new());
        }
        blocks[0].insert(0, item);
        Prefix(blocks)
    }

    /// Aligned merge of two prefixes with the same start kind. Within a
    /// block, function quantifiers go first where order permits, so fewer
    /// of them end up behind propositional quantifiers.
    fn merge(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let empty = Vec::new();
        let blocks = (0..n)
            .map(|i| {
                let a = self.0.get(i).unwrap_or(&empty);
                let b = other.0.get(i).unwrap_or(&empty);
                let (mut x, mut y) = (0, 0);
                let mut out = Vec::with_capacity(a.len() + b.len());
                while x < a.len() || y < b.len() {
                    let take_a = y == b.len() || (x < a.len() && (a[x].1.is_proper() || !b[y].1.is_proper()));
                    if take_a {
                        out.push(a[x].clone());
                        x += 1;
                    } else {
                        out.push(b[y].clone());
                        y += 1;
                    }
                }
                out
            })
            .collect();
        Prefix(blocks)
    }
}

fn better(a: Prefix, b: Prefix) -> Prefix {
    if b.0.len() < a.0.len() {
        b
    } else {
        a
    }
}

/// Fewest-block prefixes starting with an existential, resp. universal,
/// function block.
fn options(phi: &So2Formula) -> [Prefix; 2] {
    use So2Formula::*;
    let [e, a] = match phi {
        Apply(..) => return [Prefix::default(), Prefix::default()],
        Not(x) => {
            let [e, a] = options(x);
            [a.dual(), e.dual()]
        }
        And(x, y) => {
            let ([xe, xa], [ye, ya]) = (options(x), options(y));
            [xe.merge(&ye), xa.merge(&ya)]
        }
        Exists(f, body) if !f.is_proper() => {
            let [e, a] = options(body);
            [e.push_front((Quant::Exists, f.clone())), a.push_front((Quant::Exists, f.clone()))]
        }
        Exists(f, body) => {
            let e = options(body)[0].push_front((Quant::Exists, f.clone()));
            let a = e.shifted();
            [e, a]
        }
    };
    let (e, a) = (e.trimmed(), a.trimmed());
    [better(e.clone(), a.shifted()), better(a, e.shifted())]
}

fn strip(phi: &So2Formula) -> So2Formula {
    use So2Formula::*;
    match phi {
        And(a, b) => So2Formula::and(strip(a), strip(b)),
        Not(a) => strip(a).negated(),
        Exists(_, b) => strip(b),
        Apply(..) => phi.clone(),
    }
}

/// Gives every binder a distinct name, distinct from all names in `phi`
/// except for the first binder of each name, which keeps it.
fn rename_apart(phi: &So2Formula, fresh: &mut FreshNames, used: &mut BTreeSet<String>) -> So2Formula {
    use So2Formula::*;
    match phi {
        And(a, b) => {
            let a = rename_apart(a, fresh, used);
            So2Formula::and(a, rename_apart(b, fresh, used))
        }
        Not(a) => So2Formula::not(rename_apart(a, fresh, used)),
        Exists(f, body) => {
            if used.insert(f.name().to_string()) {
                So2Formula::exists(f.clone(), rename_apart(body, fresh, used))
            } else {
                let g = fresh.fresh_symbol(f.name(), f.arity());
                used.insert(g.name().to_string());
                So2Formula::exists(g.clone(), rename_apart(&body.rename_free(f, &g), fresh, used))
            }
        }
        Apply(..) => phi.clone(),
    }
}

/// Closed sentence to an equivalent simple prenex sentence whose function
/// quantifiers precede its propositional ones and whose proper symbols each
/// occur with a single argument tuple. The number of function-quantifier
/// blocks is the least achievable by prenexing the input.
pub fn to_prenex_unique(phi: &So2Formula) -> Result<So2Formula> {
    let free = phi.free_symbols();
    if !free.is_empty() {
        return Err(Error::NotClosed(join(free.iter())));
    }
    let simple = simplify_applications(phi);
    let mut fresh = FreshNames::new(simple.names());
    let apart = rename_apart(&simple, &mut fresh, &mut BTreeSet::new());
    let [e, a] = options(&apart);
    let prefix = if a.0.len() < e.0.len() { a } else { e };
    let mut matrix = strip(&apart);

    // Quantifier swaps: a function behind propositional quantifiers of the
    // dual kind takes them as leading arguments, in prefix order, which is
    // the result of swapping innermost-first.
    let mut funcs: Vec<Item> = Vec::new();
    let mut props: Vec<Item> = Vec::new();
    for (q, f) in prefix.0.into_iter().flatten() {
        if !f.is_proper() {
            props.push((q, f));
            continue;
        }
        let extra: Vec<So2Formula> =
            props.iter().filter(|(p, _)| *p != q).map(|(_, x)| So2Formula::apply(x.clone(), Vec::new())).collect();
        if extra.is_empty() {
            funcs.push((q, f));
        } else {
            let g = fresh.fresh_symbol(f.name(), f.arity() + extra.len());
            matrix = widen_many(&matrix, &f, &g, &extra);
            funcs.push((q, g));
        }
    }

    let mut out_funcs = Vec::new();
    for (q, f) in funcs {
        let tuples = tuples_of(&matrix, &f);
        if tuples.len() < 2 {
            out_funcs.push((q, f));
            continue;
        }
        let (m, parts, ys) = split(&matrix, q, &f, &tuples, &mut fresh);
        matrix = m;
        out_funcs.extend(parts.into_iter().map(|g| (q, g)));
        props.extend(ys.into_iter().map(|y| (q.dual(), y.as_symbol())));
    }
    out_funcs.extend(props);
    Ok(So2Formula::from_prenex(&out_funcs, matrix))
}

/// Distinct argument tuples of `f`, in order of first occurrence.
fn tuples_of(matrix: &So2Formula, f: &FuncSymbol) -> Vec<Vec<PropVar>> {
    let mut out: Vec<Vec<PropVar>> = Vec::new();
    matrix.visit(&mut |n| {
        if let So2Formula::Apply(g, args) = n {
            if g == f {
                let t: Vec<PropVar> = args.iter().map(|a| a.as_proposition().expect("simple").as_var()).collect();
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    });
    out
}

/// Replaces `f` occurring with tuples `x̄₁…x̄ₙ` by `f₁…fₙ` applied to fresh
/// tuples `ȳ₁…ȳₙ`. For `∃f` the matrix becomes `ψ₁ ∧ ((⋀x̄ᵢ↔ȳᵢ) → θ′)`
/// under appended `∀ȳ`; for `∀f` it becomes `ψ₁ → ((⋀x̄ᵢ↔ȳᵢ) ∧ θ′)` under
/// appended `∃ȳ`, where `ψ₁` chains the tables of neighbouring copies.
fn split(
    matrix: &So2Formula,
    q: Quant,
    f: &FuncSymbol,
    tuples: &[Vec<PropVar>],
    fresh: &mut FreshNames,
) -> (So2Formula, Vec<FuncSymbol>, Vec<PropVar>) {
    let copies: Vec<FuncSymbol> = tuples.iter().map(|_| fresh.fresh_symbol(f.name(), f.arity())).collect();
    let ys: Vec<Vec<PropVar>> = tuples.iter().map(|t| t.iter().map(|_| fresh.fresh_var("y")).collect()).collect();
    let map: BTreeMap<Vec<PropVar>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let theta = replace(matrix, f, &|args: &[PropVar]| {
        let i = map[args];
        So2Formula::apply_vars(&copies[i], &ys[i])
    });
    let chain = So2Formula::and_all((0..tuples.len() - 1).map(|i| {
        So2Formula::implies(
            So2Formula::tuple_iff(&ys[i], &ys[i + 1]).expect("proper"),
            So2Formula::iff(So2Formula::apply_vars(&copies[i], &ys[i]), So2Formula::apply_vars(&copies[i + 1], &ys[i + 1])),
        )
    }))
    .expect("at least two tuples");
    let matching = So2Formula::and_all(tuples.iter().zip(&ys).map(|(x, y)| So2Formula::tuple_iff(x, y).expect("proper")))
        .expect("at least two tuples");
    let m = match q {
        Quant::Exists => So2Formula::and(chain, So2Formula::implies(matching, theta)),
        Quant::Forall => So2Formula::implies(chain, So2Formula::and(matching, theta)),
    };
    (m, copies, ys.into_iter().flatten().collect())
}

fn replace(phi: &So2Formula, f: &FuncSymbol, by: &impl Fn(&[PropVar]) -> So2Formula) -> So2Formula {
    use So2Formula::*;
    match phi {
        And(a, b) => So2Formula::and(replace(a, f, by), replace(b, f, by)),
        Not(a) => So2Formula::not(replace(a, f, by)),
        Exists(g, b) => So2Formula::exists(g.clone(), replace(b, f, by)),
        Apply(g, args) if g == f => {
            let t: Vec<PropVar> = args.iter().map(|a| a.as_proposition().expect("simple").as_var()).collect();
            by(&t)
        }
        Apply(..) => phi.clone(),
    }
}

/// Least `(k, l)` with the formula in `Σₖ` resp. `Πₗ`, counting only
/// proper-function quantifiers; quantifier-free and purely propositional
/// formulas get `(0, 0)`.
pub fn so2_level(phi: &So2Formula) -> (usize, usize) {
    use So2Formula::*;
    match phi {
        Apply(..) => (0, 0),
        Not(a) => {
            let (s, p) = so2_level(a);
            (p, s)
        }
        And(a, b) => {
            let (s1, p1) = so2_level(a);
            let (s2, p2) = so2_level(b);
            (s1.max(s2), p1.max(p2))
        }
        Exists(f, b) if !f.is_proper() => so2_level(b),
        Exists(_, b) => {
            let (s, p) = so2_level(b);
            let s = s.min(p + 1).max(1);
            (s, s + 1)
        }
    }
}

/// Number of maximal same-kind runs among the proper-function quantifiers
/// of a prenex formula's prefix.
pub fn function_blocks(phi: &So2Formula) -> Option<usize> {
    let (prefix, _) = phi.prenex_parts()?;
    let kinds: Vec<Quant> = prefix.iter().filter(|(_, f)| f.is_proper()).map(|(q, _)| *q).collect();
    Some(if kinds.is_empty() { 0 } else { 1 + kinds.windows(2).filter(|w| w[0] != w[1]).count() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::so2_eval::is_true;

    fn sym(n: &str, a: usize) -> FuncSymbol {
        FuncSymbol::new(n, a)
    }

    fn app(n: &str, args: &[&str]) -> So2Formula {
        So2Formula::apply(sym(n, args.len()), args.iter().map(So2Formula::var).collect())
    }

    fn normal(out: &So2Formula) -> bool {
        let Some((prefix, _)) = out.prenex_parts() else { return false };
        let first_prop = prefix.iter().position(|(_, f)| !f.is_proper()).unwrap_or(prefix.len());
        out.is_simple() && out.is_unique_argument() && prefix[first_prop..].iter().all(|(_, f)| !f.is_proper())
    }

    #[test]
    fn rejects_open() {
        assert!(matches!(to_prenex_unique(&app("f", &["x"])), Err(Error::NotClosed(_))));
    }

    #[test]
    fn coinciding_tuples_need_no_split() {
        let body = So2Formula::and(app("f", &["x"]), app("f", &["x"]));
        let phi = So2Formula::exists(sym("f", 1), So2Formula::forall(sym("x", 0), body));
        let out = to_prenex_unique(&phi).unwrap();
        assert_eq!(out, phi);
    }

    #[test]
    fn split_preserves_falsity() {
        let body = So2Formula::iff(app("f", &["x"]), So2Formula::not(app("f", &["y"])));
        let phi = So2Formula::exists(sym("f", 1), So2Formula::forall_vars(&[PropVar::new("x"), PropVar::new("y")], body));
        let out = to_prenex_unique(&phi).unwrap();
        assert!(normal(&out));
        assert_eq!(out.argument_tuples().len(), 2);
        assert!(!is_true(&phi).unwrap());
        assert!(!is_true(&out).unwrap());
    }

    #[test]
    fn universal_split_and_swaps() {
        // ∀x ∃f ∀g (g(x) ∨ ¬g(¬x)) ∧ f(x) has a swap and a ∀-split.
        let gx = app("g", &["x"]);
        let gnx = So2Formula::apply(sym("g", 1), vec![So2Formula::not(So2Formula::var("x"))]);
        let body = So2Formula::and(
            So2Formula::forall(sym("g", 1), So2Formula::or(gx, So2Formula::not(gnx))),
            app("f", &["x"]),
        );
        let phi = So2Formula::forall(sym("x", 0), So2Formula::exists(sym("f", 1), body));
        let out = to_prenex_unique(&phi).unwrap();
        assert!(normal(&out));
        assert_eq!(is_true(&phi).unwrap(), is_true(&out).unwrap());
        assert!(function_blocks(&out).unwrap() <= 2);
    }

    #[test]
    fn levels() {
        let e = So2Formula::exists(sym("f", 1), app("f", &["x"]));
        let a = So2Formula::forall(sym("g", 1), app("g", &["x"]));
        assert_eq!(so2_level(&e), (1, 2));
        assert_eq!(so2_level(&a), (2, 1));
        assert_eq!(so2_level(&So2Formula::and(e.clone(), a.clone())), (2, 2));
        let both = So2Formula::forall_vars(&[PropVar::new("x")], So2Formula::and(e, a));
        let out = to_prenex_unique(&both).unwrap();
        assert_eq!(function_blocks(&out), Some(2));
    }
}
