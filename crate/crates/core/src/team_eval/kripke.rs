//! Lax team semantics of modal inclusion logic on finite Kripke models.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::formula::{ModalFormula, PropVar};

/// Most worlds a model may have; world sets are 128-bit masks.
pub const MAX_WORLDS: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    names: Vec<String>,
    succ: Vec<u128>,
    val: Vec<BTreeSet<PropVar>>,
}

/// A set of worlds, bit `i` standing for world `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct WorldSet(pub u128);

impl WorldSet {
    pub fn single(w: usize) -> Self {
        WorldSet(1 << w)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_WORLDS).filter(|i| (self.0 >> i) & 1 == 1)
    }
}

impl KripkeModel {
    pub fn new<S: Into<String>>(worlds: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = worlds.into_iter().map(Into::into).collect();
        if names.len() > MAX_WORLDS {
            return Err(Error::BudgetExceeded { what: "Kripke worlds", needed: names.len() as u128, cap: MAX_WORLDS as u128 });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("world `{n}` declared twice")));
            }
        }
        let k = names.len();
        Ok(KripkeModel { names, succ: vec![0; k], val: vec![BTreeSet::new(); k] })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, w: usize) -> &str {
        &self.names[w]
    }

    pub fn world(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn world_set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<WorldSet> {
        let mut s = 0u128;
        for n in names {
            s |= 1 << self.world(n)?;
        }
        Ok(WorldSet(s))
    }

    pub fn add_edge(&mut self, from: usize, to: usize) -> Result<()> {
        if from >= self.len() || to >= self.len() {
            return Err(Error::UnknownWorld(format!("#{}", from.max(to))));
        }
        self.succ[from] |= 1 << to;
        Ok(())
    }

    pub fn add_edge_by_name(&mut self, from: &str, to: &str) -> Result<()> {
        let (a, b) = (self.world(from)?, self.world(to)?);
        self.add_edge(a, b)
    }

    pub fn set_true(&mut self, w: usize, p: PropVar) -> Result<()> {
        if w >= self.len() {
            return Err(Error::UnknownWorld(format!("#{w}")));
        }
        self.val[w].insert(p);
        Ok(())
    }

    pub fn is_true_at(&self, w: usize, p: &PropVar) -> bool {
        self.val[w].contains(p)
    }

    pub fn successors(&self, w: usize) -> WorldSet {
        WorldSet(self.succ[w])
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(|s| s.count_ones() as usize).sum()
    }

    pub fn valuation(&self, w: usize) -> &BTreeSet<PropVar> {
        &self.val[w]
    }

    /// `R[T]`: all successors of worlds in `t`.
    pub fn image(&self, t: WorldSet) -> WorldSet {
        WorldSet(t.iter().fold(0, |acc, w| acc | self.succ[w]))
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet(if self.len() == 128 { u128::MAX } else { (1u128 << self.len()) - 1 })
    }
}

fn submasks(set: u128) -> impl Iterator<Item = u128> {
    // Ascending enumeration of all submasks of `set`.
    let mut cur: Option<u128> = Some(0);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == set { None } else { Some(((out | !set).wrapping_add(1)) & set) };
        Some(out)
    })
}

struct Minc<'a> {
    model: &'a KripkeModel,
    memo: HashMap<(usize, u128), bool>,
}

impl Minc<'_> {
    fn eval(&mut self, phi: &ModalFormula, t: u128) -> bool {
        let key = (phi as *const ModalFormula as usize, t);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let m = self.model;
        let ws = WorldSet(t);
        let v = match phi {
            ModalFormula::Lit(p, sign) => ws.iter().all(|w| m.is_true_at(w, p) == *sign),
            ModalFormula::And(a, b) => self.eval(a, t) && self.eval(b, t),
            ModalFormula::Or(a, b) => {
                // Y ∪ Z = T: choose Y ⊆ T, then Z = (T \ Y) ∪ S for S ⊆ Y.
                let mut found = false;
                'outer: for y in submasks(t) {
                    if !self.eval(a, y) {
                        continue;
                    }
                    for s in submasks(y) {
                        if self.eval(b, (t & !y) | s) {
                            found = true;
                            break 'outer;
                        }
                    }
                }
                found
            }
            ModalFormula::Boxed(a) => self.eval(a, m.image(ws).0),
            ModalFormula::Diamond(a) => {
                // Unions of per-world nonempty successor choices are exactly
                // the U ⊆ R[T] meeting every R(w), w ∈ T.
                let image = m.image(ws).0;
                let succs: Vec<u128> = ws.iter().map(|w| m.succ[w]).collect();
                succs.iter().all(|&s| s != 0)
                    && submasks(image).any(|u| succs.iter().all(|&s| s & u != 0) && self.eval(a, u))
            }
            ModalFormula::Inc(l, r) => {
                let tuple = |w: usize, vs: &[PropVar]| vs.iter().map(|v| m.is_true_at(w, v)).collect::<Vec<_>>();
                let rhs: BTreeSet<Vec<bool>> = ws.iter().map(|w| tuple(w, r)).collect();
                ws.iter().all(|w| rhs.contains(&tuple(w, l)))
            }
        };
        self.memo.insert(key, v);
        v
    }
}

/// `M, T ⊨ φ` under lax semantics: `□` passes the full successor image,
/// `◇` some union of nonempty successor sets, one per world of `T`.
pub fn eval_minc(phi: &ModalFormula, model: &KripkeModel, t: WorldSet) -> Result<bool> {
    if t.0 & !model.all_worlds().0 != 0 {
        return Err(Error::UnknownWorld(format!("#{}", 127 - (t.0 & !model.all_worlds().0).leading_zeros())));
    }
    Ok(Minc { model, memo: HashMap::new() }.eval(phi, t.0))
}
