//! Satisfaction tables: the set of all teams satisfying a formula, over the
//! formula's free variables.
//!
//! With `d` sorted variables a row is an index in `0..2^d` (bit `i` is the
//! value of `vars[i]`) and a team is a mask over rows, so a table is a
//! bitset of `2^(2^d)` teams. By locality, a team satisfies the formula iff
//! its projection onto the free variables is in the table.

use std::collections::HashMap;

use super::team::Team;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::formula::{PropVar, TeamFormula};
use crate::gda::{Gda, GdaRegistry};
use crate::table::{Relation, MAX_ARITY};

/// Most variables a table may range over.
pub const TABLE_VARS: usize = 4;

pub(crate) const TABLE_WHAT: &str = "satisfaction table variables";

fn team_count(d: usize) -> usize {
    1 << (1 << d)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SatTable {
    vars: Vec<PropVar>,
    bits: Vec<u64>,
}

fn check_vars(vars: &[PropVar]) -> Result<()> {
    if vars.len() > TABLE_VARS {
        return Err(Error::BudgetExceeded { what: TABLE_WHAT, needed: vars.len() as u128, cap: TABLE_VARS as u128 });
    }
    debug_assert!(vars.windows(2).all(|w| w[0] < w[1]), "table variables must be sorted and distinct");
    Ok(())
}

fn sorted_union(a: &[PropVar], b: &[PropVar]) -> Vec<PropVar> {
    let mut v: Vec<PropVar> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

/// Projection of rows over `from` onto `to ⊆ from`.
fn row_projection(from: &[PropVar], to: &[PropVar]) -> Vec<usize> {
    let pos: Vec<usize> = to.iter().map(|v| from.iter().position(|f| f == v).expect("subset")).collect();
    (0..1usize << from.len())
        .map(|r| pos.iter().enumerate().fold(0, |acc, (i, &p)| acc | (((r >> p) & 1) << i)))
        .collect()
}

/// For each team over `from`, its projection onto `to`, as a team over `to`.
fn team_projection(from: &[PropVar], to: &[PropVar]) -> Vec<u32> {
    let rows = row_projection(from, to);
    let n = team_count(from.len());
    let mut proj = vec![0u32; n];
    for t in 1..n {
        proj[t] = proj[t & (t - 1)] | (1 << rows[t.trailing_zeros() as usize]);
    }
    proj
}

impl SatTable {
    fn empty_over(vars: Vec<PropVar>) -> Self {
        let words = team_count(vars.len()).div_ceil(64);
        SatTable { vars, bits: vec![0; words] }
    }

    pub fn vars(&self) -> &[PropVar] {
        &self.vars
    }

    pub fn team_count(&self) -> usize {
        team_count(self.vars.len())
    }

    /// Whether team `t` (a mask over rows) satisfies the formula.
    pub fn get(&self, t: usize) -> bool {
        (self.bits[t / 64] >> (t % 64)) & 1 == 1
    }

    fn set(&mut self, t: usize) {
        self.bits[t / 64] |= 1 << (t % 64);
    }

    /// Table of the teams whose row list satisfies `pred`. `vars` must be
    /// sorted and distinct.
    pub fn from_predicate(vars: Vec<PropVar>, mut pred: impl FnMut(&[usize]) -> bool) -> Result<Self> {
        check_vars(&vars)?;
        let mut out = Self::empty_over(vars);
        let mut rows = Vec::with_capacity(16);
        for t in 0..out.team_count() {
            rows.clear();
            rows.extend((0..16).filter(|r| (t >> r) & 1 == 1));
            if pred(&rows) {
                out.set(t);
            }
        }
        Ok(out)
    }

    pub fn constant(vars: Vec<PropVar>, value: bool) -> Result<Self> {
        Self::from_predicate(vars, |_| value)
    }

    pub fn literal(v: &PropVar, sign: bool) -> Self {
        Self::from_predicate(vec![v.clone()], |rows| rows.iter().all(|&r| (r == 1) == sign)).expect("one variable")
    }

    /// Table over the distinct variables of `args`, computed from the
    /// relation `rel(X, args)` of each team.
    fn from_relation(args: &[PropVar], mut member: impl FnMut(&Relation) -> Result<bool>) -> Result<Self> {
        if args.len() > MAX_ARITY {
            return Err(Error::BudgetExceeded { what: "atom arity", needed: args.len() as u128, cap: MAX_ARITY as u128 });
        }
        let mut vars = args.to_vec();
        vars.sort();
        vars.dedup();
        check_vars(&vars)?;
        let pos: Vec<usize> = args.iter().map(|a| vars.iter().position(|v| v == a).expect("present")).collect();
        let k = args.len();
        let tuple = |r: usize| pos.iter().fold(0usize, |acc, &p| (acc << 1) | ((r >> p) & 1));
        let mut memo: HashMap<u64, bool> = HashMap::new();
        let mut err = None;
        let table = Self::from_predicate(vars, |rows| {
            let mask = rows.iter().fold(0u64, |m, &r| m | (1 << tuple(r)));
            *memo.entry(mask).or_insert_with(|| {
                let rel = Relation::new(k, mask).expect("arity checked by caller");
                member(&rel).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    false
                })
            })
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(table),
        }
    }

    pub fn dep(ante: &[PropVar], q: &PropVar) -> Result<Self> {
        let args: Vec<PropVar> = ante.iter().chain([q]).cloned().collect();
        let n = ante.len();
        Self::from_relation(&args, |rel| {
            let mut fixed = [u8::MAX; 64];
            for i in 0..1usize << (n + 1) {
                if rel.contains_index(i) {
                    let (key, val) = (i >> 1, (i & 1) as u8);
                    if fixed[key] != u8::MAX && fixed[key] != val {
                        return Ok(false);
                    }
                    fixed[key] = val;
                }
            }
            Ok(true)
        })
    }

    pub fn inc(lhs: &[PropVar], rhs: &[PropVar]) -> Result<Self> {
        let k = lhs.len();
        let args: Vec<PropVar> = lhs.iter().chain(rhs).cloned().collect();
        Self::from_relation(&args, |rel| {
            let (mut l, mut r) = (0u64, 0u64);
            for i in 0..1usize << (2 * k) {
                if rel.contains_index(i) {
                    l |= 1 << (i >> k);
                    r |= 1 << (i & ((1 << k) - 1));
                }
            }
            Ok(l & !r == 0)
        })
    }

    pub fn gda(g: &Gda, args: &[PropVar], budget_: &Budget) -> Result<Self> {
        if args.len() != g.arity() {
            return Err(Error::ArityMismatch(format!("atom `{}` of arity {} applied to {} arguments", g.name(), g.arity(), args.len())));
        }
        Self::from_relation(args, |rel| g.contains(rel, budget_))
    }

    /// The same table read over a superset of its variables.
    pub fn lift(&self, to: &[PropVar]) -> Result<Self> {
        if self.vars == to {
            return Ok(self.clone());
        }
        check_vars(to)?;
        let proj = team_projection(to, &self.vars);
        let mut out = Self::empty_over(to.to_vec());
        for (t, &p) in proj.iter().enumerate() {
            if self.get(p as usize) {
                out.set(t);
            }
        }
        Ok(out)
    }

    pub fn and(&self, other: &SatTable) -> Result<Self> {
        let vars = sorted_union(&self.vars, &other.vars);
        let (a, b) = (self.lift(&vars)?, other.lift(&vars)?);
        Ok(SatTable { vars, bits: a.bits.iter().zip(&b.bits).map(|(x, y)| x & y).collect() })
    }

    /// Lax split: some `Y ∪ Z = X` with `Y` in `self` and `Z` in `other`.
    /// Counts such pairs by subset convolution (zeta, pointwise product,
    /// Möbius). A count is at most 3^16 < 2^32, so wrapping `u32`
    /// arithmetic is exact.
    pub fn or(&self, other: &SatTable) -> Result<Self> {
        let vars = sorted_union(&self.vars, &other.vars);
        let (a, b) = (self.lift(&vars)?, other.lift(&vars)?);
        let n = 1usize << vars.len();
        let mut fa = a.counts();
        let mut fb = b.counts();
        zeta(&mut fa, n);
        zeta(&mut fb, n);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = x.wrapping_mul(*y);
        }
        mobius(&mut fa, n);
        let mut out = Self::empty_over(vars);
        for (w, chunk) in out.bits.iter_mut().zip(fa.chunks(64)) {
            *w = chunk.iter().enumerate().fold(0u64, |m, (i, &c)| m | ((c != 0) as u64) << i);
        }
        Ok(out)
    }

    /// The table as a 0/1 vector over teams.
    fn counts(&self) -> Vec<u32> {
        (0..self.team_count()).map(|t| self.get(t) as u32).collect()
    }

    pub fn tilde(&self) -> Self {
        let size = self.team_count();
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        if size < 64 {
            bits[0] &= (1u64 << size) - 1;
        }
        SatTable { vars: self.vars.clone(), bits }
    }

    /// `∃q`: some supplement of `X` is in the table, i.e. some team whose
    /// projection is `X`.
    pub fn exists(&self, q: &PropVar) -> Self {
        if !self.vars.contains(q) {
            return self.clone();
        }
        let rest: Vec<PropVar> = self.vars.iter().filter(|v| *v != q).cloned().collect();
        let proj = team_projection(&self.vars, &rest);
        let mut out = Self::empty_over(rest);
        for (t, &p) in proj.iter().enumerate() {
            if self.get(t) {
                out.set(p as usize);
            }
        }
        out
    }

    /// `∀q`: the duplicated team is in the table.
    pub fn forall(&self, q: &PropVar) -> Self {
        if !self.vars.contains(q) {
            return self.clone();
        }
        let rest: Vec<PropVar> = self.vars.iter().filter(|v| *v != q).cloned().collect();
        let rows = row_projection(&self.vars, &rest);
        let mut ext = vec![0u32; 1 << rest.len()];
        for (r, &p) in rows.iter().enumerate() {
            ext[p] |= 1 << r;
        }
        let n = team_count(rest.len());
        let mut dup = vec![0u32; n];
        let mut out = Self::empty_over(rest);
        for x in 0..n {
            if x > 0 {
                dup[x] = dup[x & (x - 1)] | ext[x.trailing_zeros() as usize];
            }
            if self.get(dup[x] as usize) {
                out.set(x);
            }
        }
        out
    }

    /// The mask of the projection of `x` onto the table variables.
    pub fn team_mask(&self, x: &Team) -> Result<usize> {
        let pos = self.vars.iter().map(|v| x.require(v)).collect::<Result<Vec<_>>>()?;
        Ok(x.rows().iter().fold(0usize, |m, &r| {
            m | 1 << pos.iter().enumerate().fold(0usize, |acc, (i, &p)| acc | ((((r >> p) & 1) as usize) << i))
        }))
    }

    pub fn holds(&self, x: &Team) -> Result<bool> {
        Ok(self.get(self.team_mask(x)?))
    }

    /// Some nonempty team satisfies the formula.
    pub fn any_nonempty(&self) -> bool {
        (1..self.team_count()).any(|t| self.get(t))
    }

    pub fn all(&self) -> bool {
        (0..self.team_count()).all(|t| self.get(t))
    }
}

fn zeta(f: &mut [u32], n: usize) {
    for i in 0..n {
        let bit = 1 << i;
        for block in f.chunks_exact_mut(2 * bit) {
            let (lo, hi) = block.split_at_mut(bit);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h = h.wrapping_add(*l);
            }
        }
    }
}

fn mobius(f: &mut [u32], n: usize) {
    for i in 0..n {
        let bit = 1 << i;
        for block in f.chunks_exact_mut(2 * bit) {
            let (lo, hi) = block.split_at_mut(bit);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h = h.wrapping_sub(*l);
            }
        }
    }
}

/// The satisfaction table of `phi` over `Fr(phi)`. Fails with
/// `BudgetExceeded` when some subformula has more than [`TABLE_VARS`] free
/// variables.
pub fn sat_table(phi: &TeamFormula, gdas: &GdaRegistry, budget_: &Budget) -> Result<SatTable> {
    use TeamFormula::*;
    Ok(match phi {
        Lit(v, s) => SatTable::literal(v, *s),
        And(a, b) => sat_table(a, gdas, budget_)?.and(&sat_table(b, gdas, budget_)?)?,
        Or(a, b) => sat_table(a, gdas, budget_)?.or(&sat_table(b, gdas, budget_)?)?,
        Tilde(a) => sat_table(a, gdas, budget_)?.tilde(),
        Exists(q, a) => sat_table(a, gdas, budget_)?.exists(q),
        Forall(q, a) => sat_table(a, gdas, budget_)?.forall(q),
        Dep(ante, q) => SatTable::dep(ante, q)?,
        Inc(l, r) => SatTable::inc(l, r)?,
        Gda(name, args) => SatTable::gda(gdas.get(name)?, args, budget_)?,
    })
}
