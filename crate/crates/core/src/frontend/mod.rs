//! Concrete syntax, file loaders, random generators and the differential
//! test runner.

pub mod difftest;
pub mod files;
pub mod gen;
mod lexer;
mod parser;
mod printer;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};
use crate::formula::{AdqbfInstance, ModalFormula, PropFormula, So2Formula, TeamFormula};

pub use parser::{parse_adqbf, parse_modal, parse_prop, parse_so2, parse_team};
pub use gen::{generate, GenConfig};
pub use printer::{print_adqbf, print_modal, print_prop, print_so2, print_team};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Logic {
    So2,
    Adqbf,
    Prop,
    Team,
    Modal,
}

impl Logic {
    pub const ALL: [Logic; 5] = [Logic::So2, Logic::Adqbf, Logic::Prop, Logic::Team, Logic::Modal];

    pub fn name(self) -> &'static str {
        match self {
            Logic::So2 => "so2",
            Logic::Adqbf => "adqbf",
            Logic::Prop => "prop",
            Logic::Team => "team",
            Logic::Modal => "modal",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Logic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Logic::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown logic `{s}` (expected so2, adqbf, prop, team or modal)")))
    }
}

/// A parsed formula or instance of any logic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    So2(So2Formula),
    Adqbf(AdqbfInstance),
    Prop(PropFormula),
    Team(TeamFormula),
    Modal(ModalFormula),
}

impl Value {
    pub fn logic(&self) -> Logic {
        match self {
            Value::So2(_) => Logic::So2,
            Value::Adqbf(_) => Logic::Adqbf,
            Value::Prop(_) => Logic::Prop,
            Value::Team(_) => Logic::Team,
            Value::Modal(_) => Logic::Modal,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

pub fn parse(logic: Logic, text: &str) -> Result<Value, ParseError> {
    Ok(match logic {
        Logic::So2 => Value::So2(parse_so2(text)?),
        Logic::Adqbf => Value::Adqbf(parse_adqbf(text)?),
        Logic::Prop => Value::Prop(parse_prop(text)?),
        Logic::Team => Value::Team(parse_team(text)?),
        Logic::Modal => Value::Modal(parse_modal(text)?),
    })
}

pub fn print(value: &Value) -> String {
    match value {
        Value::So2(f) => print_so2(f),
        Value::Adqbf(i) => print_adqbf(i),
        Value::Prop(f) => print_prop(f),
        Value::Team(f) => print_team(f),
        Value::Modal(f) => print_modal(f),
    }
}
