/// Caps on the exhaustive searches. Exceeding a cap yields
/// [`Error::BudgetExceeded`](crate::Error::BudgetExceeded) instead of an
/// unbounded computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Σ 2^arity over the free symbols enumerated by SO₂ validity/satisfiability.
    pub so2_free_bits: u32,
    /// Σ 2^arity over nested SO₂ quantifiers along any root-to-leaf path.
    pub so2_quantified_bits: u32,
    /// Σ 2^|C| over the block variables of an ADQBF instance.
    pub adqbf_bits: u32,
    /// Largest domain for which all assignments are materialized.
    pub team_domain: usize,
    /// Largest team split or supplemented by the direct team evaluator.
    pub split_rows: usize,
    /// Largest |Fr(φ)| for team satisfiability and validity.
    pub sat_vars: usize,
    /// Largest n accepted by the canonical tree model.
    pub tree_depth: usize,
    /// Largest arity for which GDA agreement is checked exhaustively.
    pub gda_arity: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            so2_free_bits: 16,
            so2_quantified_bits: 24,
            adqbf_bits: 24,
            team_domain: 5,
            split_rows: 12,
            sat_vars: 4,
            tree_depth: 4,
            gda_arity: 3,
        }
    }
}
