use std::fmt;

use crate::budget::Budget;
use crate::error::{budget, Error, Result};
use crate::formula::PropVar;
use crate::table::{BoolTable, Relation};

/// A finite set of assignments over a shared, ordered domain.
///
/// A row is a word whose bit `i` is the value of `domain[i]`. Rows are kept
/// sorted and distinct.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Team {
    domain: Vec<PropVar>,
    rows: Vec<u64>,
}

/// Per-row value set of a supplementing function.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Choice {
    Zero,
    One,
    Both,
}

impl Choice {
    pub const ALL: [Choice; 3] = [Choice::Zero, Choice::One, Choice::Both];

    fn values(self) -> &'static [u64] {
        match self {
            Choice::Zero => &[0],
            Choice::One => &[1],
            Choice::Both => &[0, 1],
        }
    }
}

/// A supplementing function, given positionally: `choices[i]` is the value
/// set of the `i`-th row of the team (in [`Team::rows`] order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SupplementChoice(pub Vec<Choice>);

impl Team {
    pub fn from_words(domain: Vec<PropVar>, rows: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_domain(&domain)?;
        let width_mask = if domain.len() == 64 { u64::MAX } else { (1u64 << domain.len()) - 1 };
        let mut rows: Vec<u64> = rows.into_iter().collect();
        if rows.iter().any(|r| r & !width_mask != 0) {
            return Err(Error::Invalid("row has bits outside the domain".into()));
        }
        rows.sort_unstable();
        rows.dedup();
        Ok(Team { domain, rows })
    }

    /// Rows given as value vectors aligned with `domain`.
    pub fn new<R: AsRef<[bool]>>(domain: Vec<PropVar>, rows: impl IntoIterator<Item = R>) -> Result<Self> {
        let n = domain.len();
        let mut words = Vec::new();
        for r in rows {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::Invalid(format!("row of length {} over a domain of size {n}", r.len())));
            }
            words.push(r.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i)));
        }
        Self::from_words(domain, words)
    }

    /// The team `{∅}`.
    pub fn unit() -> Self {
        Team { domain: Vec::new(), rows: vec![0] }
    }

    pub fn empty(domain: Vec<PropVar>) -> Result<Self> {
        check_domain(&domain)?;
        Ok(Team { domain, rows: Vec::new() })
    }

    /// All `2^|domain|` assignments.
    pub fn all_assignments(domain: Vec<PropVar>, budget_: &Budget) -> Result<Self> {
        check_domain(&domain)?;
        budget("team domain", domain.len() as u128, budget_.team_domain as u128)?;
        let rows = (0..1u64 << domain.len()).collect();
        Ok(Team { domain, rows })
    }

    pub fn domain(&self) -> &[PropVar] {
        &self.domain
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn position(&self, v: &PropVar) -> Option<usize> {
        self.domain.iter().position(|d| d == v)
    }

    pub(crate) fn require(&self, v: &PropVar) -> Result<usize> {
        self.position(v).ok_or_else(|| Error::FreeVarOutsideDomain(v.to_string()))
    }

    /// The rows as value vectors aligned with the domain.
    pub fn assignments(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        let n = self.domain.len();
        self.rows.iter().map(move |&r| (0..n).map(|i| (r >> i) & 1 == 1).collect())
    }

    pub fn contains(&self, row: &[bool]) -> bool {
        let w = row.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        row.len() == self.domain.len() && self.rows.binary_search(&w).is_ok()
    }

    /// Rows of `self` selected by bit `i` of `mask` for the `i`-th row.
    pub fn subteam(&self, mask: u64) -> Team {
        let rows = self.rows.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, &r)| r).collect();
        Team { domain: self.domain.clone(), rows }
    }

    pub fn is_subteam_of(&self, other: &Team) -> bool {
        self.domain == other.domain && self.rows.iter().all(|r| other.rows.binary_search(r).is_ok())
    }

    pub fn union(&self, other: &Team) -> Result<Team> {
        if self.domain != other.domain {
            return Err(Error::Invalid("union of teams over different domains".into()));
        }
        Team::from_words(self.domain.clone(), self.rows.iter().chain(&other.rows).copied())
    }

    /// Position of `p` in the extended domain, appending it if absent.
    fn extended_domain(&self, p: &PropVar) -> Result<(Vec<PropVar>, usize)> {
        match self.position(p) {
            Some(i) => Ok((self.domain.clone(), i)),
            None => {
                let mut d = self.domain.clone();
                d.push(p.clone());
                check_domain(&d)?;
                Ok((d, self.domain.len()))
            }
        }
    }

    /// `X[F/p]`. If `p` is already in the domain its value is overwritten.
    pub fn supplement(&self, f: &SupplementChoice, p: &PropVar) -> Result<Team> {
        if f.0.len() != self.rows.len() {
            return Err(Error::IncompleteChoice);
        }
        let (domain, i) = self.extended_domain(p)?;
        let mut rows = Vec::with_capacity(self.rows.len() * 2);
        for (&r, c) in self.rows.iter().zip(&f.0) {
            for &b in c.values() {
                rows.push((r & !(1 << i)) | (b << i));
            }
        }
        Team::from_words(domain, rows)
    }

    /// `X[{0,1}/p]`.
    pub fn duplicate(&self, p: &PropVar) -> Team {
        let both = SupplementChoice(vec![Choice::Both; self.rows.len()]);
        self.supplement(&both, p).expect("choice is total")
    }

    /// Restriction of every row to `vars` (in that order).
    pub fn project(&self, vars: &[PropVar]) -> Result<Team> {
        let pos = vars.iter().map(|v| self.require(v)).collect::<Result<Vec<_>>>()?;
        let rows = self.rows.iter().map(|&r| pos.iter().enumerate().fold(0u64, |acc, (k, &p)| acc | (((r >> p) & 1) << k)));
        Team::from_words(vars.to_vec(), rows)
    }

    /// `rel(X, args)`: the set of projections of the rows onto `args`.
    pub fn rel_of(&self, args: &[PropVar]) -> Result<Relation> {
        let pos = args.iter().map(|v| self.require(v)).collect::<Result<Vec<_>>>()?;
        Relation::from_tuples(args.len(), self.rows.iter().map(|&r| pos.iter().map(|&p| (r >> p) & 1 == 1).collect::<Vec<_>>()))
    }

    /// `χ(X, args)`: the characteristic function of `rel(X, args)`.
    pub fn char_table(&self, args: &[PropVar]) -> Result<BoolTable> {
        Ok(self.rel_of(args)?.char_table())
    }
}

fn check_domain(domain: &[PropVar]) -> Result<()> {
    if domain.len() > 64 {
        return Err(Error::BudgetExceeded { what: "team domain", needed: domain.len() as u128, cap: 64 });
    }
    for (i, v) in domain.iter().enumerate() {
        if domain[..i].contains(v) {
            return Err(Error::Invalid(format!("variable `{v}` occurs twice in the domain")));
        }
    }
    Ok(())
}

pub fn all_assignments(domain: Vec<PropVar>) -> Result<Team> {
    Team::all_assignments(domain, &Budget::default())
}

impl fmt::Display for Team {
    /// The team file format: a header of variable names, then one row of bits
    /// per line. An empty domain is written as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.domain.is_empty() {
            writeln!(f, "()")?;
        } else {
            let names: Vec<&str> = self.domain.iter().map(|v| v.name()).collect();
            writeln!(f, "{}", names.join(" "))?;
        }
        for row in self.assignments() {
            if row.is_empty() {
                writeln!(f, "()")?;
            } else {
                let bits: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
                writeln!(f, "{}", bits.join(" "))?;
            }
        }
        Ok(())
    }
}
