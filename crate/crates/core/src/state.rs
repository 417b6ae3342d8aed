use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Working/failed flag per arc. Bit `i` (zero-based) is arc `a_{i+1}`.
///
/// Stored as little-endian words so the vector doubles as the binary number
/// whose order is the BAT order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateVector {
    words: Vec<u64>,
    len: usize,
}

impl StateVector {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn ones(len: usize) -> Self {
        let mut x = Self::zeros(len);
        for i in 0..len {
            x.set(i, true);
        }
        x
    }

    /// Builds a vector of length `len` from the low bits of `mask`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        let mut x = Self::zeros(len);
        if len > 0 {
            let keep = if len >= 64 { u64::MAX } else { (1u64 << len) - 1 };
            x.words[0] = mask & keep;
        }
        x
    }

    /// Indicator vector of one-based arc indices.
    pub fn from_arcs<I: IntoIterator<Item = usize>>(arcs: I, len: usize) -> Self {
        let mut x = Self::zeros(len);
        for a in arcs {
            x.set(a - 1, true);
        }
        x
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 bits; exact only when `len <= 64`.
    pub fn as_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    /// Zero-based bit access.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, on: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % 64);
        if on {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// One-based indices of working arcs, ascending.
    pub fn arcs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i)).map(|i| i + 1)
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.len
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for StateVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mut x = StateVector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => x.set(i, true),
                _ => return Err(Error::BadVector(s.to_string())),
            }
        }
        Ok(x)
    }
}
