//! Evaluators and translations between second-order propositional logic,
//! alternating dependency quantified Boolean formulas and propositional team
//! logics.

pub mod adqbf_eval;
pub mod budget;
pub mod error;
pub mod formula;
pub mod gda;
pub mod so2_eval;
pub mod table;
pub mod team_eval;
pub mod frontend;
pub mod translate;

pub use budget::Budget;
pub use error::{Error, Result};
