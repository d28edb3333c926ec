//! Folding a trailing universally ranged block into the universal prefix.

use crate::error::{Error, Result};
use crate::formula::{AdqbfInstance, BlockKind};

/// Drops the last block, which must be a `U` block, and appends its
/// variables to the universal prefix. Other constraints are kept verbatim.
pub fn collapse_last_universal_block(inst: &AdqbfInstance) -> Result<AdqbfInstance> {
    let (last, rest) = inst.blocks().split_last().ok_or(Error::LastBlockNotUnion)?;
    if last.kind != BlockKind::Union {
        return Err(Error::LastBlockNotUnion);
    }
    let mut universals = inst.universals().to_vec();
    universals.extend(last.vars.iter().map(|qv| qv.var.clone()));
    AdqbfInstance::new(universals, rest.to_vec(), inst.matrix().clone())
}
