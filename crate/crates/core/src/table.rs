//! Fixed-size Boolean function tables and relations.
//!
//! Both are stored as a 64-bit word, so arity is limited to [`MAX_ARITY`].
//! Tuples are indexed big-endian: the first argument is the most significant
//! bit of the index.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ARITY: usize = 6;

fn check_arity(arity: usize) -> Result<()> {
    if arity > MAX_ARITY {
        Err(Error::BudgetExceeded { what: "table arity", needed: arity as u128, cap: MAX_ARITY as u128 })
    } else {
        Ok(())
    }
}

fn full_mask(arity: usize) -> u64 {
    let n = 1u32 << arity;
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Index of a tuple of bits, first bit most significant.
pub fn tuple_index(bits: impl IntoIterator<Item = bool>) -> usize {
    bits.into_iter().fold(0, |acc, b| (acc << 1) | b as usize)
}

/// The bits of tuple `index` for the given arity, first bit most significant.
pub fn tuple_bits(index: usize, arity: usize) -> Vec<bool> {
    (0..arity).map(|i| (index >> (arity - 1 - i)) & 1 == 1).collect()
}

/// A Boolean function `{0,1}^arity -> {0,1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolTable {
    arity: usize,
    bits: u64,
}

impl BoolTable {
    /// Bit `i` of `bits` is the value on tuple `i`.
    pub fn new(arity: usize, bits: u64) -> Result<Self> {
        check_arity(arity)?;
        Ok(BoolTable { arity, bits: bits & full_mask(arity) })
    }

    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        Self::new(arity, if value { u64::MAX } else { 0 })
    }

    pub fn from_entries(entries: &[bool]) -> Result<Self> {
        let arity = entries.len().trailing_zeros() as usize;
        if entries.len() != 1 << arity {
            return Err(Error::Invalid(format!("{} entries is not a power of two", entries.len())));
        }
        let bits = entries.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        Self::new(arity, bits)
    }

    pub fn from_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Result<Self> {
        check_arity(arity)?;
        let mut bits = 0;
        for i in 0..1usize << arity {
            if f(&tuple_bits(i, arity)) {
                bits |= 1 << i;
            }
        }
        Ok(BoolTable { arity, bits })
    }

    /// The `rank`-th table in lexicographic order of entry vectors
    /// `(F(0…0), …, F(1…1))`.
    pub fn nth_lex(arity: usize, rank: u64) -> Result<Self> {
        check_arity(arity)?;
        let m = 1u32 << arity;
        let bits = if m == 64 { rank.reverse_bits() } else { rank.reverse_bits() >> (64 - m) };
        Ok(BoolTable { arity, bits })
    }

    /// Number of tables of this arity, if it fits in a u64.
    pub fn count(arity: usize) -> Option<u64> {
        1u64.checked_shl(1 << arity)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, index: usize) -> bool {
        (self.bits >> index) & 1 == 1
    }

    pub fn apply(&self, args: &[bool]) -> bool {
        debug_assert_eq!(args.len(), self.arity);
        self.get(tuple_index(args.iter().copied()))
    }

    pub fn entries(&self) -> Vec<bool> {
        (0..1usize << self.arity).map(|i| self.get(i)).collect()
    }

    pub fn set(&mut self, index: usize, value: bool) {
        if value {
            self.bits |= 1 << index;
        } else {
            self.bits &= !(1 << index);
        }
    }
}

impl fmt::Debug for BoolTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for b in self.entries() {
            write!(f, "{}", b as u8)?;
        }
        write!(f, "]")
    }
}

/// A set of bit tuples of a fixed arity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    arity: usize,
    mask: u64,
}

impl Relation {
    /// Bit `i` of `mask` says whether tuple `i` is a member.
    pub fn new(arity: usize, mask: u64) -> Result<Self> {
        check_arity(arity)?;
        Ok(Relation { arity, mask: mask & full_mask(arity) })
    }

    pub fn empty(arity: usize) -> Result<Self> {
        Self::new(arity, 0)
    }

    pub fn from_tuples<I, T>(arity: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[bool]>,
    {
        check_arity(arity)?;
        let mut mask = 0;
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(Error::ArityMismatch(format!("tuple of length {} in relation of arity {arity}", t.len())));
            }
            mask |= 1u64 << tuple_index(t.iter().copied());
        }
        Ok(Relation { arity, mask })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains_index(&self, index: usize) -> bool {
        (self.mask >> index) & 1 == 1
    }

    pub fn contains(&self, tuple: &[bool]) -> bool {
        tuple.len() == self.arity && self.contains_index(tuple_index(tuple.iter().copied()))
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        (0..1usize << self.arity).filter(|&i| self.contains_index(i)).map(|i| tuple_bits(i, self.arity))
    }

    /// The characteristic function of the relation.
    pub fn char_table(&self) -> BoolTable {
        BoolTable { arity: self.arity, bits: self.mask }
    }

    pub fn from_table(table: BoolTable) -> Self {
        Relation { arity: table.arity, mask: table.bits }
    }

    /// All relations of the arity, in mask order.
    pub fn all(arity: usize) -> Result<impl Iterator<Item = Relation>> {
        check_arity(arity)?;
        let count = BoolTable::count(arity)
            .ok_or(Error::BudgetExceeded { what: "relation enumeration", needed: 1 << 64, cap: u64::MAX as u128 })?;
        Ok((0..count).map(move |mask| Relation { arity, mask }))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, t) in self.tuples().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            for b in t {
                write!(f, "{}", b as u8)?;
            }
        }
        write!(f, "}}")
    }
}
