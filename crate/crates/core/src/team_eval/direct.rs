//! Clause-by-clause lax team semantics over explicit teams.

use std::collections::HashMap;

use super::team::{Choice, SupplementChoice, Team};
use crate::budget::Budget;
use crate::error::{budget, Result};
use crate::formula::{PropVar, TeamFormula};
use crate::gda::{gda_holds, GdaRegistry};

pub struct Direct<'a> {
    pub gdas: &'a GdaRegistry,
    pub budget: &'a Budget,
}

impl Direct<'_> {
    pub fn eval(&self, phi: &TeamFormula, x: &Team) -> Result<bool> {
        for v in phi.free_vars() {
            x.require(&v)?;
        }
        self.go(phi, x)
    }

    fn go(&self, phi: &TeamFormula, x: &Team) -> Result<bool> {
        use TeamFormula::*;
        match phi {
            Lit(v, sign) => {
                let i = x.require(v)?;
                Ok(x.rows().iter().all(|r| ((r >> i) & 1 == 1) == *sign))
            }
            And(a, b) => Ok(self.go(a, x)? && self.go(b, x)?),
            Tilde(a) => Ok(!self.go(a, x)?),
            Or(a, b) => self.split(a, b, x),
            Exists(p, body) => self.exists(p, body, x),
            Forall(p, body) => self.go(body, &x.duplicate(p)),
            Dep(ante, q) => {
                let pos = ante.iter().map(|v| x.require(v)).collect::<Result<Vec<_>>>()?;
                let qi = x.require(q)?;
                let mut seen: HashMap<Vec<bool>, bool> = HashMap::new();
                for r in x.rows() {
                    let key: Vec<bool> = pos.iter().map(|&p| (r >> p) & 1 == 1).collect();
                    let val = (r >> qi) & 1 == 1;
                    if *seen.entry(key).or_insert(val) != val {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Inc(lhs, rhs) => {
                let l = x.rel_of(lhs)?;
                let r = x.rel_of(rhs)?;
                Ok(l.mask() & !r.mask() == 0)
            }
            Gda(name, args) => gda_holds(self.gdas.get(name)?, x, args, self.budget),
        }
    }

    /// Every ordered pair `(Y, Z)` with `Y ∪ Z = X`, by assigning each row to
    /// Y only, Z only, or both.
    fn split(&self, a: &TeamFormula, b: &TeamFormula, x: &Team) -> Result<bool> {
        let n = x.len();
        budget("split team rows", n as u128, self.budget.split_rows as u128)?;
        let mut memo_a: HashMap<u64, bool> = HashMap::new();
        let mut memo_b: HashMap<u64, bool> = HashMap::new();
        let mut digits = vec![0u8; n];
        loop {
            let (mut y, mut z) = (0u64, 0u64);
            for (i, &d) in digits.iter().enumerate() {
                if d != 1 {
                    y |= 1 << i;
                }
                if d != 0 {
                    z |= 1 << i;
                }
            }
            let ya = match memo_a.get(&y) {
                Some(&v) => v,
                None => {
                    let v = self.go(a, &x.subteam(y))?;
                    memo_a.insert(y, v);
                    v
                }
            };
            if ya {
                let zb = match memo_b.get(&z) {
                    Some(&v) => v,
                    None => {
                        let v = self.go(b, &x.subteam(z))?;
                        memo_b.insert(z, v);
                        v
                    }
                };
                if zb {
                    return Ok(true);
                }
            }
            if !next_digits(&mut digits) {
                return Ok(false);
            }
        }
    }

    fn exists(&self, p: &PropVar, body: &TeamFormula, x: &Team) -> Result<bool> {
        let n = x.len();
        budget("supplemented team rows", n as u128, self.budget.split_rows as u128)?;
        let mut digits = vec![0u8; n];
        loop {
            let f = SupplementChoice(digits.iter().map(|&d| Choice::ALL[d as usize]).collect());
            if self.go(body, &x.supplement(&f, p)?)? {
                return Ok(true);
            }
            if !next_digits(&mut digits) {
                return Ok(false);
            }
        }
    }
}

/// Base-3 counter, least significant digit first. False on wrap-around.
fn next_digits(d: &mut [u8]) -> bool {
    for x in d.iter_mut() {
        if *x < 2 {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}
