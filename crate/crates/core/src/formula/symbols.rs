use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A proposition symbol. Names are compared by exact string equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PropVar(Arc<str>);

impl PropVar {
    /// Builds a variable from a user-facing identifier (`[A-Za-z0-9_]+`).
    pub fn parse(name: &str) -> Result<Self> {
        if is_identifier(name) {
            Ok(PropVar(name.into()))
        } else {
            Err(Error::Invalid(format!("`{name}` is not a valid identifier")))
        }
    }

    /// Builds a variable without validating the name. Used for generated names.
    pub fn new(name: impl AsRef<str>) -> Self {
        PropVar(name.as_ref().into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// The arity-0 function symbol sharing this name.
    pub fn as_symbol(&self) -> FuncSymbol {
        FuncSymbol::new(self.name(), 0)
    }
}

impl fmt::Debug for PropVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for PropVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PropVar {
    fn from(s: &str) -> Self {
        PropVar::new(s)
    }
}

/// A function symbol with a fixed arity. Two symbols are equal iff name and
/// arity are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncSymbol {
    name: Arc<str>,
    arity: usize,
}

impl FuncSymbol {
    pub fn new(name: impl AsRef<str>, arity: usize) -> Self {
        FuncSymbol { name: name.as_ref().into(), arity }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Arity >= 1.
    pub fn is_proper(&self) -> bool {
        self.arity > 0
    }

    pub fn as_var(&self) -> PropVar {
        PropVar::new(self.name())
    }
}

impl fmt::Debug for FuncSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

impl fmt::Display for FuncSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Generator of symbol names that are absent from a reserved set.
///
/// Fresh names have the shape `base#k`; the reserved set is extended with
/// every name handed out.
#[derive(Clone, Debug, Default)]
pub struct FreshNames {
    taken: BTreeSet<String>,
    counter: usize,
}

impl FreshNames {
    pub fn new<I, S>(taken: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        FreshNames { taken: taken.into_iter().map(Into::into).collect(), counter: 0 }
    }

    pub fn reserve(&mut self, name: impl Into<String>) {
        self.taken.insert(name.into());
    }

    pub fn is_taken(&self, name: &str) -> bool {
        self.taken.contains(name)
    }

    pub fn fresh(&mut self, base: &str) -> String {
        let base = base.split('#').next().unwrap_or(base);
        let base = if base.is_empty() { "v" } else { base };
        loop {
            self.counter += 1;
            let candidate = format!("{base}#{}", self.counter);
            if !self.taken.contains(&candidate) {
                self.taken.insert(candidate.clone());
                return candidate;
            }
        }
    }

    pub fn fresh_var(&mut self, base: &str) -> PropVar {
        PropVar::new(self.fresh(base))
    }

    pub fn fresh_symbol(&mut self, base: &str, arity: usize) -> FuncSymbol {
        FuncSymbol::new(self.fresh(base), arity)
    }

    /// Keeps `name` if it is still free, otherwise returns a fresh variant.
    pub fn keep_or_fresh(&mut self, name: &str) -> String {
        if self.taken.insert(name.to_string()) {
            name.to_string()
        } else {
            self.fresh(name)
        }
    }
}
