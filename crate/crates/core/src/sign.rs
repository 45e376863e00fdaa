use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::subset::SubsetMask;
use crate::{Error, Result};

/// Sign of an exact inner product.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn of_bigint(v: &BigInt) -> Sign {
        match v.sign() {
            num_bigint::Sign::Minus => Sign::Minus,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Plus,
        }
    }

    pub fn of_rational(v: &num_rational::BigRational) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.numer().sign() == num_bigint::Sign::Plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn from_char(c: char) -> Result<Sign> {
        match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            '0' => Ok(Sign::Zero),
            other => Err(Error::structural(format!("invalid sign character {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Sign entry for a tree: determined entries are `Plus`/`Minus`, everything
/// else is `Unknown` and prints as `?`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TreeSign {
    Minus,
    Unknown,
    Plus,
}

impl TreeSign {
    pub fn as_char(self) -> char {
        match self {
            TreeSign::Plus => '+',
            TreeSign::Minus => '-',
            TreeSign::Unknown => '?',
        }
    }

    /// Whether a point sign is consistent with this entry: a determined
    /// entry admits itself and zero, an unknown entry admits anything.
    pub fn admits(self, s: Sign) -> bool {
        match self {
            TreeSign::Plus => s != Sign::Minus,
            TreeSign::Minus => s != Sign::Plus,
            TreeSign::Unknown => true,
        }
    }
}

impl fmt::Display for TreeSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Indexing convention for a [`SignVector`] over points in dimension `n`.
///
/// Resonance vectors are indexed by the nonempty subsets of `[n-1]`;
/// threshold vectors by all subsets of `[n-1]` including the empty one.
/// Entries are stored in ascending bitmask order either way.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SignConvention {
    Resonance,
    Threshold,
}

impl SignConvention {
    pub fn entry_count(self, n: usize) -> usize {
        match self {
            SignConvention::Resonance => (1usize << (n - 1)) - 1,
            SignConvention::Threshold => 1usize << (n - 1),
        }
    }

    /// Position of subset `s` in the entry array.
    pub fn index_of(self, s: SubsetMask) -> usize {
        match self {
            SignConvention::Resonance => s.bits() as usize - 1,
            SignConvention::Threshold => s.bits() as usize,
        }
    }
}

/// A ternary sign vector indexed by subsets of `[n-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignVector {
    n: usize,
    convention: SignConvention,
    entries: Vec<Sign>,
}

impl SignVector {
    pub fn new(n: usize, convention: SignConvention, entries: Vec<Sign>) -> Result<Self> {
        if n < 1 {
            return Err(Error::bounds("sign vector dimension must be at least 1"));
        }
        if entries.len() != convention.entry_count(n) {
            return Err(Error::structural(format!(
                "sign vector for n={n} needs {} entries, got {}",
                convention.entry_count(n),
                entries.len()
            )));
        }
        Ok(SignVector {
            n,
            convention,
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    pub fn entries(&self) -> &[Sign] {
        &self.entries
    }

    pub fn get(&self, s: SubsetMask) -> Sign {
        self.entries[self.convention.index_of(s)]
    }

    /// True when no entry is zero, i.e. the point is in an open chamber.
    pub fn is_generic(&self) -> bool {
        self.entries.iter().all(|&s| s != Sign::Zero)
    }

    pub fn negate(&self) -> SignVector {
        SignVector {
            n: self.n,
            convention: self.convention,
            entries: self.entries.iter().map(|s| s.negate()).collect(),
        }
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The `{+, -, ?}` sign vector of an alternating tree on `[n]`, indexed by
/// the nonempty subsets of `[n-1]` in ascending bitmask order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TreeSignVector {
    n: usize,
    entries: Vec<TreeSign>,
}

impl TreeSignVector {
    pub(crate) fn from_entries(n: usize, entries: Vec<TreeSign>) -> Self {
        debug_assert_eq!(entries.len(), (1usize << (n - 1)) - 1);
        TreeSignVector { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[TreeSign] {
        &self.entries
    }

    pub fn get(&self, s: SubsetMask) -> TreeSign {
        self.entries[s.bits() as usize - 1]
    }

    /// Packs the determined entries into `(plus, minus)` bitmasks, with bit
    /// `i` describing the subset of mask value `i + 1`. Requires `n <= 7`.
    pub fn packed(&self) -> (u64, u64) {
        debug_assert!(self.entries.len() <= 64);
        let mut plus = 0u64;
        let mut minus = 0u64;
        for (i, &e) in self.entries.iter().enumerate() {
            match e {
                TreeSign::Plus => plus |= 1 << i,
                TreeSign::Minus => minus |= 1 << i,
                TreeSign::Unknown => {}
            }
        }
        (plus, minus)
    }
}

impl fmt::Display for TreeSignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_vector_lengths() {
        let e = vec![Sign::Plus; 7];
        assert!(SignVector::new(4, SignConvention::Resonance, e.clone()).is_ok());
        assert!(SignVector::new(4, SignConvention::Threshold, e.clone()).is_err());
        let e8 = vec![Sign::Plus; 8];
        assert!(SignVector::new(4, SignConvention::Threshold, e8).is_ok());
    }

    #[test]
    fn display_uses_ascii() {
        let v = SignVector::new(
            3,
            SignConvention::Resonance,
            vec![Sign::Plus, Sign::Minus, Sign::Zero],
        )
        .unwrap();
        assert_eq!(v.to_string(), "+,-,0");
    }

    #[test]
    fn tree_sign_admits() {
        assert!(TreeSign::Plus.admits(Sign::Plus));
        assert!(TreeSign::Plus.admits(Sign::Zero));
        assert!(!TreeSign::Plus.admits(Sign::Minus));
        assert!(TreeSign::Unknown.admits(Sign::Minus));
    }
}
