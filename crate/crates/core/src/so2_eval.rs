//! Evaluation of second-order propositional formulas by lazy search over
//! the quantified tables.

use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::error::{budget, Error, Result};
use crate::formula::{FuncSymbol, So2Formula};
use crate::table::{BoolTable, MAX_ARITY};

/// Assignment of tables to function symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    bindings: BTreeMap<FuncSymbol, BoolTable>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, f: FuncSymbol, table: BoolTable) -> Result<()> {
        if f.arity() != table.arity() {
            return Err(Error::ArityMismatch(format!("{f} bound to a table of arity {}", table.arity())));
        }
        self.bindings.insert(f, table);
        Ok(())
    }

    /// The updated interpretation `S[f ↦ F]`.
    pub fn with(&self, f: FuncSymbol, table: BoolTable) -> Result<Self> {
        let mut s = self.clone();
        s.bind(f, table)?;
        Ok(s)
    }

    pub fn get(&self, f: &FuncSymbol) -> Option<&BoolTable> {
        self.bindings.get(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FuncSymbol, &BoolTable)> {
        self.bindings.iter()
    }
}

#[derive(Clone, Copy, Debug)]
enum Node {
    And(u32, u32),
    Not(u32),
    Exists { slot: u32, body: u32 },
    Apply { slot: u32, args: u32, len: u32 },
}

/// A formula with symbols resolved to table slots. The free symbols occupy
/// the first slots, in the order given at compile time.
#[derive(Clone, Debug)]
pub struct CompiledSo2 {
    nodes: Vec<Node>,
    args: Vec<u32>,
    root: u32,
    free: Vec<FuncSymbol>,
    slots: usize,
}

impl CompiledSo2 {
    /// Fails with `UnboundSymbol` if a free symbol is missing from `free`.
    pub fn new(phi: &So2Formula, free: &[FuncSymbol], budget_: &Budget) -> Result<Self> {
        let mut c = Compiler {
            nodes: Vec::new(),
            args: Vec::new(),
            scope: free.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect(),
            slots: free.len(),
        };
        for f in free {
            check_symbol_arity(f)?;
        }
        let (root, path_bits) = c.compile(phi)?;
        budget("SO2 quantified table bits", path_bits, budget_.so2_quantified_bits as u128)?;
        Ok(CompiledSo2 { nodes: c.nodes, args: c.args, root, free: free.to_vec(), slots: c.slots })
    }

    pub fn free(&self) -> &[FuncSymbol] {
        &self.free
    }

    /// Evaluates with `tables[i]` (as a bit word) interpreting `free[i]`.
    pub fn eval_words(&self, tables: &[u64]) -> bool {
        debug_assert_eq!(tables.len(), self.free.len());
        let mut env = Env { words: vec![0u64; self.slots], known: vec![u64::MAX; self.slots] };
        env.words[..tables.len()].copy_from_slice(tables);
        self.eval_node(self.root, &mut env).expect("free tables are fully known")
    }

    pub fn eval(&self, s: &Interpretation) -> Result<bool> {
        let words = self
            .free
            .iter()
            .map(|f| s.get(f).map(|t| t.bits()).ok_or_else(|| Error::UnboundSymbol(f.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_words(&words))
    }

    fn eval_node(&self, n: u32, env: &mut Env) -> Eval {
        match self.nodes[n as usize] {
            Node::And(a, b) => Ok(self.eval_node(a, env)? && self.eval_node(b, env)?),
            Node::Not(a) => Ok(!self.eval_node(a, env)?),
            Node::Exists { slot, body, .. } => {
                let s = slot as usize;
                let saved = (env.words[s], env.known[s]);
                env.known[s] = 0;
                let r = self.search(slot, body, env);
                (env.words[s], env.known[s]) = saved;
                r
            }
            Node::Apply { slot, args, len } => {
                let mut index = 0u32;
                for k in 0..len {
                    let a = self.args[(args + k) as usize];
                    index = (index << 1) | self.eval_node(a, env)? as u32;
                }
                let s = slot as usize;
                if (env.known[s] >> index) & 1 == 0 {
                    return Err((slot, index));
                }
                Ok((env.words[s] >> index) & 1 == 1)
            }
        }
    }

    /// Whether some completion of the partial table in `slot` satisfies
    /// `body`. Evaluation reads only known entries, so a result reached on a
    /// partial table holds for all its completions; an unknown entry of this
    /// slot is branched on, one of an outer slot is passed up.
    fn search(&self, slot: u32, body: u32, env: &mut Env) -> Eval {
        match self.eval_node(body, env) {
            Err((s, index)) if s == slot => {
                let (s, bit) = (s as usize, 1u64 << index);
                env.known[s] |= bit;
                env.words[s] &= !bit;
                let mut r = self.search(slot, body, env);
                if r == Ok(false) {
                    env.words[s] |= bit;
                    r = self.search(slot, body, env);
                }
                env.known[s] &= !bit;
                env.words[s] &= !bit;
                r
            }
            r => r,
        }
    }
}

/// Table words per slot, with a mask of the entries fixed so far.
struct Env {
    words: Vec<u64>,
    known: Vec<u64>,
}

/// A truth value, or the (slot, entry) of an unfixed table entry it needs.
type Eval = std::result::Result<bool, (u32, u32)>;

fn check_symbol_arity(f: &FuncSymbol) -> Result<()> {
    if f.arity() > MAX_ARITY {
        return Err(Error::BudgetExceeded { what: "function arity", needed: f.arity() as u128, cap: MAX_ARITY as u128 });
    }
    Ok(())
}

struct Compiler {
    nodes: Vec<Node>,
    args: Vec<u32>,
    scope: Vec<(FuncSymbol, u32)>,
    slots: usize,
}

impl Compiler {
    /// Returns the node and the largest Σ 2^arity of binders on a path below it.
    fn compile(&mut self, phi: &So2Formula) -> Result<(u32, u128)> {
        let (node, bits) = match phi {
            So2Formula::And(a, b) => {
                let (a, x) = self.compile(a)?;
                let (b, y) = self.compile(b)?;
                (Node::And(a, b), x.max(y))
            }
            So2Formula::Not(a) => {
                let (a, x) = self.compile(a)?;
                (Node::Not(a), x)
            }
            So2Formula::Exists(f, body) => {
                check_symbol_arity(f)?;
                let slot = self.slots as u32;
                self.slots += 1;
                self.scope.push((f.clone(), slot));
                let (body, x) = self.compile(body)?;
                self.scope.pop();
                (Node::Exists { slot, body }, x + (1u128 << f.arity()))
            }
            So2Formula::Apply(f, args) => {
                if args.len() != f.arity() {
                    return Err(Error::ArityMismatch(format!("{f} applied to {} arguments", args.len())));
                }
                let slot = self
                    .scope
                    .iter()
                    .rev()
                    .find(|(g, _)| g == f)
                    .map(|(_, s)| *s)
                    .ok_or_else(|| Error::UnboundSymbol(f.to_string()))?;
                let mut ids = Vec::with_capacity(args.len());
                let mut bits = 0;
                for a in args {
                    let (id, x) = self.compile(a)?;
                    ids.push(id);
                    bits = bits.max(x);
                }
                let start = self.args.len() as u32;
                self.args.extend(ids);
                (Node::Apply { slot, args: start, len: args.len() as u32 }, bits)
            }
        };
        self.nodes.push(node);
        Ok(((self.nodes.len() - 1) as u32, bits))
    }
}

/// `⟦φ⟧_S` under the default budget.
pub fn eval_so2(phi: &So2Formula, s: &Interpretation) -> Result<bool> {
    eval_so2_with(phi, s, &Budget::default())
}

pub fn eval_so2_with(phi: &So2Formula, s: &Interpretation, budget_: &Budget) -> Result<bool> {
    let free: Vec<FuncSymbol> = phi.free_symbols().into_iter().collect();
    for f in &free {
        if s.get(f).is_none() {
            return Err(Error::UnboundSymbol(f.to_string()));
        }
    }
    CompiledSo2::new(phi, &free, budget_)?.eval(s)
}

/// Truth of a sentence: evaluation under the empty interpretation.
pub fn is_true(phi: &So2Formula) -> Result<bool> {
    is_true_with(phi, &Budget::default())
}

pub fn is_true_with(phi: &So2Formula, budget_: &Budget) -> Result<bool> {
    let free = phi.free_symbols();
    if !free.is_empty() {
        return Err(Error::NotASentence(join(free.iter())));
    }
    Ok(CompiledSo2::new(phi, &[], budget_)?.eval_words(&[]))
}

pub(crate) fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

/// Calls `visit` with every interpretation of the free symbols of `phi`
/// until it returns `false`. Returns whether the enumeration completed.
fn for_each_interpretation(
    phi: &So2Formula,
    budget_: &Budget,
    mut visit: impl FnMut(bool) -> bool,
) -> Result<bool> {
    let free: Vec<FuncSymbol> = phi.free_symbols().into_iter().collect();
    let widths: Vec<u32> = free.iter().map(|f| 1u32 << f.arity().min(31)).collect();
    let total: u128 = widths.iter().map(|&w| w as u128).sum();
    budget("SO2 free table bits", total, budget_.so2_free_bits as u128)?;
    let compiled = CompiledSo2::new(phi, &free, budget_)?;
    let mut words = vec![0u64; free.len()];
    for code in 0..1u64 << total {
        let mut rest = code;
        for (w, &width) in words.iter_mut().zip(&widths) {
            *w = rest & ((1u64 << width) - 1);
            rest >>= width;
        }
        if !visit(compiled.eval_words(&words)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True in every interpretation of the free symbols.
pub fn check_valid(phi: &So2Formula) -> Result<bool> {
    check_valid_with(phi, &Budget::default())
}

pub fn check_valid_with(phi: &So2Formula, budget_: &Budget) -> Result<bool> {
    for_each_interpretation(phi, budget_, |v| v)
}

/// True in some interpretation of the free symbols.
pub fn check_sat(phi: &So2Formula) -> Result<bool> {
    check_sat_with(phi, &Budget::default())
}

pub fn check_sat_with(phi: &So2Formula, budget_: &Budget) -> Result<bool> {
    Ok(!for_each_interpretation(phi, budget_, |v| !v)?)
}
