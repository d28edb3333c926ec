//! Truth of (alternating) dependency quantified Boolean formulas by
//! enumerating Skolem tables block by block.

use crate::budget::Budget;
use crate::error::{budget, Error, Result};
use crate::formula::{AdqbfInstance, Block, BlockKind, CompiledProp, PropVar};
use crate::table::BoolTable;

struct VarInfo {
    /// Positions of the dependencies within the universal prefix, in order.
    deps: Vec<usize>,
}

impl VarInfo {
    fn index(&self, s: u64) -> usize {
        self.deps.iter().fold(0, |acc, &p| (acc << 1) | ((s >> p) & 1) as usize)
    }
}

struct Prepared {
    n: usize,
    vars: Vec<VarInfo>,
    /// (kind, first var, end var) per block, indices into `vars`.
    blocks: Vec<(BlockKind, usize, usize)>,
    matrix: CompiledProp,
}

impl Prepared {
    fn new(inst: &AdqbfInstance, budget_: &Budget) -> Result<Self> {
        let n = inst.universals().len();
        budget("universal variables", n as u128, budget_.adqbf_bits as u128)?;
        budget("ADQBF Skolem table bits", inst.skolem_bits(), budget_.adqbf_bits as u128)?;
        let order = inst.all_vars();
        if order.len() > 64 {
            return Err(Error::BudgetExceeded { what: "ADQBF variables", needed: order.len() as u128, cap: 64 });
        }
        let matrix = inst.matrix().compile(&order).expect("instance invariant: matrix variables are declared");
        let mut vars = Vec::new();
        let mut blocks = Vec::new();
        for b in inst.blocks() {
            let start = vars.len();
            for qv in &b.vars {
                let deps = qv.deps.iter().map(|d| position(inst.universals(), d)).collect();
                vars.push(VarInfo { deps });
            }
            blocks.push((b.kind, start, vars.len()));
        }
        Ok(Prepared { n, vars, blocks, matrix })
    }

    fn assignments(&self) -> u64 {
        1u64 << self.n
    }

    /// Matrix input word for assignment `s` with the first `fixed` block
    /// variables read from `tables` and the rest set from `rest`.
    fn word(&self, s: u64, tables: &[u64], fixed: usize, rest: u64) -> u64 {
        let mut w = s;
        for (j, info) in self.vars.iter().enumerate().take(fixed) {
            w |= ((tables[j] >> info.index(s)) & 1) << (self.n + j);
        }
        w | (rest << (self.n + fixed))
    }

    fn eval(&self, tables: &mut Vec<u64>, block: usize) -> bool {
        let k = self.blocks.len();
        if block == k {
            return (0..self.assignments()).all(|s| self.matrix.eval(self.word(s, tables, tables.len(), 0)));
        }
        let (kind, start, end) = self.blocks[block];
        if block + 1 == k {
            return match kind {
                // Skolem values are independent per assignment, so ∀ over
                // tables is ∀ over values.
                BlockKind::Union => (0..self.assignments())
                    .all(|s| (0..1u64 << (end - start)).all(|v| self.matrix.eval(self.word(s, tables, start, v)))),
                BlockKind::Exists => self.search_last(tables, start, end),
            };
        }
        let widths: Vec<u32> = self.vars[start..end].iter().map(|v| 1u32 << v.deps.len()).collect();
        let mut found = kind == BlockKind::Union;
        for words in LexBindings::new(widths) {
            tables.truncate(start);
            tables.extend(words);
            let r = self.eval(tables, block + 1);
            if r != found {
                found = r;
                break;
            }
        }
        tables.truncate(start);
        found
    }

    /// Backtracking search for tables of the last (existential) block,
    /// assigning each table entry the first time an assignment reads it.
    fn search_last(&self, tables: &mut Vec<u64>, start: usize, end: usize) -> bool {
        struct Frame {
            s: u64,
            open: Vec<(usize, usize)>,
            next: u64,
        }
        let m = end - start;
        tables.truncate(start);
        tables.extend(std::iter::repeat(0).take(m));
        let mut known = vec![0u64; m];
        let open_entries = |s: u64, known: &[u64]| -> Vec<(usize, usize)> {
            (0..m)
                .map(|j| (j, self.vars[start + j].index(s)))
                .filter(|&(j, i)| (known[j] >> i) & 1 == 0)
                .collect()
        };
        let mut stack = vec![Frame { s: 0, open: open_entries(0, &known), next: 0 }];
        for &(j, i) in &stack[0].open {
            known[j] |= 1 << i;
        }
        let total = self.assignments();
        let result = loop {
            let Some(top) = stack.last_mut() else { break false };
            if top.next == 1u64 << top.open.len() {
                for &(j, i) in &top.open {
                    known[j] &= !(1 << i);
                }
                stack.pop();
                continue;
            }
            let combo = top.next;
            top.next += 1;
            // First open entry is the most significant bit of the combo.
            let u = top.open.len();
            for (k, &(j, i)) in top.open.iter().enumerate() {
                let bit = (combo >> (u - 1 - k)) & 1;
                tables[start + j] = (tables[start + j] & !(1 << i)) | (bit << i);
            }
            let s = top.s;
            let mut rest = 0u64;
            for j in 0..m {
                rest |= ((tables[start + j] >> self.vars[start + j].index(s)) & 1) << j;
            }
            if !self.matrix.eval(self.word(s, tables, start, rest)) {
                continue;
            }
            if s + 1 == total {
                break true;
            }
            let open = open_entries(s + 1, &known);
            for &(j, i) in &open {
                known[j] |= 1 << i;
            }
            stack.push(Frame { s: s + 1, open, next: 0 });
        };
        tables.truncate(start);
        result
    }
}

fn position(universals: &[PropVar], v: &PropVar) -> usize {
    universals.iter().position(|u| u == v).expect("instance invariant: dependencies are universals")
}

/// Lexicographic stream of table combinations: the concatenated entry vector
/// of the block (first variable's first entry most significant) counts up.
struct LexBindings {
    widths: Vec<u32>,
    total: u32,
    rank: u64,
    end: u64,
}

impl LexBindings {
    fn new(widths: Vec<u32>) -> Self {
        let total: u32 = widths.iter().sum();
        assert!(total < 64, "binding stream too wide");
        LexBindings { widths, total, rank: 0, end: 1u64 << total }
    }
}

impl Iterator for LexBindings {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.rank == self.end {
            return None;
        }
        // Entry e of the concatenation sits at bit (total-1-e) of the rank.
        let mut rev = if self.total == 0 { 0 } else { self.rank.reverse_bits() >> (64 - self.total) };
        self.rank += 1;
        let mut out = Vec::with_capacity(self.widths.len());
        for &w in &self.widths {
            out.push(rev & ((1u64 << w) - 1));
            rev >>= w;
        }
        Some(out)
    }
}

/// Every combination of Skolem tables for the block, each exactly once, in
/// lexicographic order of the concatenated entry vectors.
pub fn enumerate_bindings(block: &Block, budget_: &Budget) -> Result<impl Iterator<Item = Vec<BoolTable>>> {
    let arities: Vec<usize> = block.vars.iter().map(|qv| qv.deps.len()).collect();
    let total: u128 = arities.iter().map(|&a| 1u128 << a.min(100)).sum();
    budget("ADQBF Skolem table bits", total, budget_.adqbf_bits as u128)?;
    let widths = arities.iter().map(|&a| 1u32 << a).collect();
    Ok(LexBindings::new(widths).map(move |words| {
        words.iter().zip(&arities).map(|(&w, &a)| BoolTable::new(a, w).expect("arity within budget")).collect()
    }))
}

pub fn eval_adqbf(inst: &AdqbfInstance) -> Result<bool> {
    eval_adqbf_with(inst, &Budget::default())
}

pub fn eval_adqbf_with(inst: &AdqbfInstance, budget_: &Budget) -> Result<bool> {
    let p = Prepared::new(inst, budget_)?;
    Ok(p.eval(&mut Vec::new(), 0))
}

/// Truth of a DQBF instance (no `U` block).
pub fn eval_dqbf(inst: &AdqbfInstance) -> Result<bool> {
    eval_dqbf_with(inst, &Budget::default())
}

pub fn eval_dqbf_with(inst: &AdqbfInstance, budget_: &Budget) -> Result<bool> {
    if !inst.is_dqbf() {
        return Err(Error::NotExistential);
    }
    eval_adqbf_with(inst, budget_)
}

/// The lexicographically first binding of the outermost block that decides
/// the instance: a witness when that block is existential and the instance
/// is true, a counterexample when it is universal and the instance is false.
pub fn outermost_witness(inst: &AdqbfInstance, budget_: &Budget) -> Result<Option<Vec<(PropVar, BoolTable)>>> {
    let p = Prepared::new(inst, budget_)?;
    let Some(first) = inst.blocks().first() else { return Ok(None) };
    let want = first.kind == BlockKind::Exists;
    for tables in enumerate_bindings(first, budget_)? {
        let mut words: Vec<u64> = tables.iter().map(|t| t.bits()).collect();
        if p.eval(&mut words, 1) == want {
            return Ok(Some(first.vars.iter().map(|qv| qv.var.clone()).zip(tables).collect()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::PropFormula as P;

    fn v(s: &str) -> PropVar {
        PropVar::new(s)
    }

    fn vs(names: &[&str]) -> Vec<PropVar> {
        names.iter().map(|s| v(s)).collect()
    }

    fn one_block(univ: &[&str], kind: BlockKind, vars: &[(&str, &[&str])], m: P) -> AdqbfInstance {
        AdqbfInstance::new(vs(univ), vec![Block::new(kind, vars.iter().map(|(q, d)| (v(q), vs(d))))], m).unwrap()
    }

    #[test]
    fn negation_example() {
        let inst = AdqbfInstance::new(
            vs(&["x"]),
            vec![
                Block::new(BlockKind::Union, [(v("y"), vs(&["x"]))]),
                Block::new(BlockKind::Exists, [(v("z"), vs(&["x"]))]),
            ],
            P::iff(P::neg("y"), P::pos("z")),
        )
        .unwrap();
        assert!(eval_adqbf(&inst).unwrap());
    }

    #[test]
    fn single_block_examples() {
        let id = one_block(&["p"], BlockKind::Exists, &[("q", &["p"])], P::iff(P::pos("q"), P::pos("p")));
        assert!(eval_adqbf(&id).unwrap());
        assert!(eval_dqbf(&id).unwrap());
        let constant = one_block(&["p"], BlockKind::Exists, &[("q", &[])], P::iff(P::pos("q"), P::pos("p")));
        // Oracle: neither constant equals the identity on both inputs.
        let oracle = [false, true].iter().any(|&c| [false, true].iter().all(|&p| c == p));
        assert_eq!(eval_adqbf(&constant).unwrap(), oracle);
        let and = P::iff(P::pos("q"), P::and(P::pos("p1"), P::pos("p2")));
        assert!(eval_dqbf(&one_block(&["p1", "p2"], BlockKind::Exists, &[("q", &["p1", "p2"])], and.clone())).unwrap());
        // Oracle: no unary f has f(p1) = p1 ∧ p2 for all p1, p2.
        let oracle = (0..4u32).any(|f| (0..4u32).all(|s| ((f >> (s >> 1)) & 1) == ((s >> 1) & s & 1)));
        assert_eq!(eval_dqbf(&one_block(&["p1", "p2"], BlockKind::Exists, &[("q", &["p1"])], and)).unwrap(), oracle);
    }

    #[test]
    fn dqbf_rejects_union() {
        let u = one_block(&["p"], BlockKind::Union, &[("q", &[])], P::pos("q"));
        assert!(matches!(eval_dqbf(&u), Err(Error::NotExistential)));
    }

    #[test]
    fn binding_stream_lengths() {
        let b = |deps: &[usize]| {
            Block::new(
                BlockKind::Exists,
                deps.iter().enumerate().map(|(i, &d)| (v(&format!("q{i}")), (0..d).map(|k| v(&format!("p{k}"))).collect::<Vec<_>>())),
            )
        };
        let budget_ = Budget::default();
        assert_eq!(enumerate_bindings(&b(&[0]), &budget_).unwrap().count(), 2);
        assert_eq!(enumerate_bindings(&b(&[1]), &budget_).unwrap().count(), 4);
        assert_eq!(enumerate_bindings(&b(&[1, 1]), &budget_).unwrap().count(), 16);
        let all: Vec<_> = enumerate_bindings(&b(&[1, 1]), &budget_).unwrap().collect();
        let distinct: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 16);
        assert_eq!(all[1][1].entries(), vec![false, true]);
        assert_eq!(all[4][0].entries(), vec![false, true]);
    }

    #[test]
    fn witness_is_lexicographically_first() {
        // Any table works; the first is the all-zero table.
        let inst = one_block(&["p"], BlockKind::Exists, &[("q", &["p"])], P::or(P::pos("q"), P::neg("q")));
        let w = outermost_witness(&inst, &Budget::default()).unwrap().unwrap();
        assert_eq!(w[0].1.entries(), vec![false, false]);
    }

    #[test]
    fn budget_is_enforced() {
        let deps: Vec<&str> = vec!["a", "b", "c", "d", "e"];
        let inst = one_block(&deps, BlockKind::Exists, &[("q", &deps)], P::pos("q"));
        let tight = Budget { adqbf_bits: 16, ..Budget::default() };
        assert!(matches!(eval_adqbf_with(&inst, &tight), Err(Error::BudgetExceeded { .. })));
    }
}
