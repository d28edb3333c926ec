mod adqbf;
mod modal;
mod prop;
mod so2;
mod symbols;
mod team;

pub use adqbf::{classify_fragment, AdqbfInstance, Block, BlockKind, FragmentClass, FragmentKind, QuantVar};
pub use modal::ModalFormula;
pub use prop::{CompiledProp, PropFormula};
pub use so2::{Quant, So2Formula, So2Nnf};
pub use symbols::{is_identifier, FreshNames, FuncSymbol, PropVar};
pub use team::TeamFormula;
