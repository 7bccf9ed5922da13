use std::fmt;

use bitvec::prelude::*;

/// The state of every vertex at one time step, stored as a dense bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    bits: BitVec<u64, Lsb0>,
}

impl Configuration {
    pub fn zeros(n: usize) -> Self {
        Configuration { bits: bitvec![u64, Lsb0; 0; n] }
    }

    pub fn ones(n: usize) -> Self {
        Configuration { bits: bitvec![u64, Lsb0; 1; n] }
    }

    /// Configuration of length `n` with exactly the listed vertices at state 1.
    pub fn from_support(n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut c = Self::zeros(n);
        for v in support {
            c.set(v, true);
        }
        c
    }

    /// Low `n` bits of `mask`, bit `i` giving the state of vertex `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        Self::from_support(n, (0..n).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, v: usize) -> bool {
        self.bits[v]
    }

    pub fn set(&mut self, v: usize, state: bool) {
        self.bits.set(v, state);
    }

    /// Number of state-1 vertices, `H(C)`.
    pub fn hamming_weight(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.not_any()
    }

    /// Indices of the state-1 vertices, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    /// Componentwise order `self ⪯ other`.
    pub fn precedes(&self, other: &Configuration) -> bool {
        self.len() == other.len() && self.support().all(|v| other.get(v))
    }

    pub fn union(&self, other: &Configuration) -> Configuration {
        let mut bits = self.bits.clone();
        bits |= other.bits.as_bitslice();
        Configuration { bits }
    }
}

impl FromIterator<bool> for Configuration {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Configuration { bits: iter.into_iter().collect() }
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Tuple notation, e.g. `(1,0,0,1)`.
impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", *b as u8)?;
        }
        write!(f, ")")
    }
}

pub fn hamming_weight(c: &Configuration) -> usize {
    c.hamming_weight()
}
