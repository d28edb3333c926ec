use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::prop::PropFormula;
use super::symbols::PropVar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BlockKind {
    /// Existential quantification over Skolem functions.
    Exists,
    /// Universal quantification over Skolem functions (written `U`).
    Union,
}

impl BlockKind {
    pub fn dual(self) -> Self {
        match self {
            BlockKind::Exists => BlockKind::Union,
            BlockKind::Union => BlockKind::Exists,
        }
    }

    pub fn letter(self) -> char {
        match self {
            BlockKind::Exists => 'E',
            BlockKind::Union => 'U',
        }
    }
}

/// A block variable together with its dependency set. `deps` is kept in the
/// order of the universal prefix, which is the canonical tuple order used to
/// index Skolem tables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuantVar {
    pub var: PropVar,
    pub deps: Vec<PropVar>,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Block {
    pub kind: BlockKind,
    pub vars: Vec<QuantVar>,
}

impl Block {
    pub fn new<I, D>(kind: BlockKind, vars: I) -> Self
    where
        I: IntoIterator<Item = (PropVar, D)>,
        D: IntoIterator<Item = PropVar>,
    {
        Block {
            kind,
            vars: vars.into_iter().map(|(var, deps)| QuantVar { var, deps: deps.into_iter().collect() }).collect(),
        }
    }
}

/// A simple alternating qBf together with its dependency constraint.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AdqbfInstance {
    universals: Vec<PropVar>,
    blocks: Vec<Block>,
    matrix: PropFormula,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FragmentKind {
    Sigma,
    Pi,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FragmentClass {
    pub kind: FragmentKind,
    pub level: usize,
}

impl fmt::Display for FragmentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            FragmentKind::Sigma => "Sigma",
            FragmentKind::Pi => "Pi",
        };
        write!(f, "{k}_{}", self.level)
    }
}

impl AdqbfInstance {
    /// Validates the instance invariants and canonicalizes dependency order.
    pub fn new(universals: Vec<PropVar>, mut blocks: Vec<Block>, matrix: PropFormula) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for u in &universals {
            if !seen.insert(u.clone()) {
                return Err(Error::InvalidInstance(format!("variable `{u}` quantified twice")));
            }
        }
        for block in blocks.iter_mut() {
            for qv in &mut block.vars {
                if !seen.insert(qv.var.clone()) {
                    return Err(Error::InvalidInstance(format!("variable `{}` quantified twice", qv.var)));
                }
                for d in &qv.deps {
                    if !universals.contains(d) {
                        return Err(Error::InvalidInstance(format!(
                            "dependency `{d}` of `{}` is not a universal variable",
                            qv.var
                        )));
                    }
                }
                let deps: BTreeSet<&PropVar> = qv.deps.iter().collect();
                qv.deps = universals.iter().filter(|u| deps.contains(u)).cloned().collect();
            }
        }
        for pair in blocks.windows(2) {
            if pair[0].kind == pair[1].kind {
                return Err(Error::InvalidInstance("block kinds must alternate".into()));
            }
        }
        for v in matrix.vars() {
            if !seen.contains(&v) {
                return Err(Error::InvalidInstance(format!("matrix variable `{v}` is not quantified")));
            }
        }
        Ok(AdqbfInstance { universals, blocks, matrix })
    }

    /// Groups consecutive same-kind quantified variables into blocks.
    pub fn from_prefix(
        universals: Vec<PropVar>,
        prefix: Vec<(BlockKind, PropVar, Vec<PropVar>)>,
        matrix: PropFormula,
    ) -> Result<Self> {
        let mut blocks: Vec<Block> = Vec::new();
        for (kind, var, deps) in prefix {
            match blocks.last_mut() {
                Some(b) if b.kind == kind => b.vars.push(QuantVar { var, deps }),
                _ => blocks.push(Block { kind, vars: vec![QuantVar { var, deps }] }),
            }
        }
        Self::new(universals, blocks, matrix)
    }

    pub fn universals(&self) -> &[PropVar] {
        &self.universals
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn matrix(&self) -> &PropFormula {
        &self.matrix
    }

    pub fn block_vars(&self) -> impl Iterator<Item = (BlockKind, &QuantVar)> {
        self.blocks.iter().flat_map(|b| b.vars.iter().map(move |qv| (b.kind, qv)))
    }

    /// Map from each block variable to its dependency set.
    pub fn constraint(&self) -> BTreeMap<PropVar, BTreeSet<PropVar>> {
        self.block_vars().map(|(_, qv)| (qv.var.clone(), qv.deps.iter().cloned().collect())).collect()
    }

    /// Universals first, then block variables in prefix order.
    pub fn all_vars(&self) -> Vec<PropVar> {
        self.universals.iter().cloned().chain(self.block_vars().map(|(_, qv)| qv.var.clone())).collect()
    }

    /// Sum over block variables of the Skolem table sizes.
    pub fn skolem_bits(&self) -> u128 {
        self.block_vars().map(|(_, qv)| 1u128 << qv.deps.len().min(120)).sum()
    }

    pub fn size(&self) -> usize {
        self.universals.len() + self.block_vars().count() + self.matrix.size()
    }

    pub fn classify(&self) -> FragmentClass {
        classify_fragment(self)
    }

    /// Flips every block kind and negates the matrix.
    pub fn dual(&self) -> AdqbfInstance {
        AdqbfInstance {
            universals: self.universals.clone(),
            blocks: self.blocks.iter().map(|b| Block { kind: b.kind.dual(), vars: b.vars.clone() }).collect(),
            matrix: PropFormula::not(self.matrix.clone()),
        }
    }

    /// The instance is a DQBF instance: no U block.
    pub fn is_dqbf(&self) -> bool {
        self.blocks.iter().all(|b| b.kind == BlockKind::Exists)
    }
}

/// Sigma iff the first block is existential; level is the number of blocks.
/// An instance without blocks is Sigma_1 by convention.
pub fn classify_fragment(inst: &AdqbfInstance) -> FragmentClass {
    match inst.blocks.first() {
        None => FragmentClass { kind: FragmentKind::Sigma, level: 1 },
        Some(b) => FragmentClass {
            kind: match b.kind {
                BlockKind::Exists => FragmentKind::Sigma,
                BlockKind::Union => FragmentKind::Pi,
            },
            level: inst.blocks.len(),
        },
    }
}
