//! Formula-to-formula compiler passes between SO₂, ADQBF, team logics and
//! modal inclusion logic. Every pass is a pure function; [`PassReport`]
//! records its size behaviour against a declared polynomial bound.

mod collapse;
mod minc;
mod prenex;
mod simplify;
mod so2u;
mod swap;
mod team_dep;
mod team_so2;

pub use collapse::collapse_last_universal_block;
pub use minc::{canonical_tree_model, qplinc_to_minc, tree, tree_model};
pub use prenex::{function_blocks, so2_level, to_prenex_unique};
pub use simplify::simplify_applications;
pub use so2u::so2u_to_adqbf;
pub use swap::{swap_quantifier, swap_quantifier_to};
pub use team_dep::{
    adqbf_to_qptl, adqbf_to_qptl_dep, build_max, dep_to_unary, dep_to_unary_sentence, pd_validity_wrapper,
    qptl_dep_to_ptl_dep, unary_dep_elim,
};
pub use team_so2::{close_sentence, team_to_so2};

use std::collections::BTreeSet;
use std::fmt;

/// The passes by their command-line names.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Pass {
    Swap,
    Simplify,
    PrenexUnique,
    So2uToAdqbf,
    Collapse,
    AdqbfToQptlDep,
    QptlToPtlDep,
    DepToUnary,
    UnaryDepElim,
    QplincToMinc,
    PdValidityWrapper,
    TeamToSo2,
    CloseSentence,
}

impl Pass {
    pub const ALL: [Pass; 13] = [
        Pass::Swap,
        Pass::Simplify,
        Pass::PrenexUnique,
        Pass::So2uToAdqbf,
        Pass::Collapse,
        Pass::AdqbfToQptlDep,
        Pass::QptlToPtlDep,
        Pass::DepToUnary,
        Pass::UnaryDepElim,
        Pass::QplincToMinc,
        Pass::PdValidityWrapper,
        Pass::TeamToSo2,
        Pass::CloseSentence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pass::Swap => "swap",
            Pass::Simplify => "simplify",
            Pass::PrenexUnique => "prenex-unique",
            Pass::So2uToAdqbf => "so2u-to-adqbf",
            Pass::Collapse => "collapse",
            Pass::AdqbfToQptlDep => "adqbf-to-qptl-dep",
            Pass::QptlToPtlDep => "qptl-to-ptl-dep",
            Pass::DepToUnary => "dep-to-unary",
            Pass::UnaryDepElim => "unary-dep-elim",
            Pass::QplincToMinc => "qplinc-to-minc",
            Pass::PdValidityWrapper => "pd-validity-wrapper",
            Pass::TeamToSo2 => "team-to-so2",
            Pass::CloseSentence => "close-sentence",
        }
    }

    pub fn from_name(name: &str) -> Option<Pass> {
        Pass::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Declared size bound `c·n^d` on output node count for input size `n`.
    pub fn bound(self) -> PolyBound {
        let (c, d) = match self {
            Pass::Swap => (2, 1),
            Pass::Simplify => (8, 2),
            Pass::PrenexUnique => (16, 2),
            Pass::So2uToAdqbf => (8, 2),
            Pass::Collapse => (1, 1),
            Pass::AdqbfToQptlDep => (8, 1),
            Pass::QptlToPtlDep => (8, 1),
            Pass::DepToUnary => (8, 2),
            Pass::UnaryDepElim => (8, 1),
            Pass::QplincToMinc => (8, 2),
            Pass::PdValidityWrapper => (2, 1),
            Pass::TeamToSo2 => (64, 2),
            Pass::CloseSentence => (4, 1),
        };
        PolyBound { c, d }
    }
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PolyBound {
    pub c: u64,
    pub d: u32,
}

impl PolyBound {
    /// Inputs below size 2 are measured as 2, so constant overheads fit.
    pub fn allows(&self, input: usize, output: usize) -> bool {
        let n = input.max(2) as u128;
        (output as u128) <= self.c as u128 * n.pow(self.d)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PassReport {
    pub pass: Pass,
    pub input_size: usize,
    pub output_size: usize,
    /// Names present in the output but not in the input.
    pub fresh: Vec<String>,
    pub fragment_before: Option<String>,
    pub fragment_after: Option<String>,
    pub bound: PolyBound,
}

impl PassReport {
    pub fn new(
        pass: Pass,
        input_size: usize,
        output_size: usize,
        input_names: &BTreeSet<String>,
        output_names: &BTreeSet<String>,
    ) -> Self {
        PassReport {
            pass,
            input_size,
            output_size,
            fresh: output_names.difference(input_names).cloned().collect(),
            fragment_before: None,
            fragment_after: None,
            bound: pass.bound(),
        }
    }

    pub fn with_fragments(mut self, before: impl fmt::Display, after: impl fmt::Display) -> Self {
        self.fragment_before = Some(before.to_string());
        self.fragment_after = Some(after.to_string());
        self
    }

    pub fn within_bound(&self) -> bool {
        self.bound.allows(self.input_size, self.output_size)
    }
}

impl fmt::Display for PassReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pass {}: {} -> {} nodes (bound {}*n^{}: {})",
            self.pass,
            self.input_size,
            self.output_size,
            self.bound.c,
            self.bound.d,
            if self.within_bound() { "ok" } else { "exceeded" }
        )?;
        if !self.fresh.is_empty() {
            write!(f, "; fresh {}", self.fresh.join(", "))?;
        }
        if let (Some(a), Some(b)) = (&self.fragment_before, &self.fragment_after) {
            write!(f, "; fragment {a} -> {b}")?;
        }
        Ok(())
    }
}
