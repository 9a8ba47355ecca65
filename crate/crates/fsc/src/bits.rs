//! Binary strings.
//!
//! A [`BitString`] is a finite sequence over `{0, 1}`. The same type serves
//! as transducer input, transducer output, program, and encoding string.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// A finite sequence over the alphabet `{0, 1}`.
///
/// The derived `Ord` is plain lexicographic (a proper prefix sorts before
/// its extensions); use [`BitString::shortlex`] for length-then-lex order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    bits: Vec<u8>, // each element is 0 or 1
}

impl BitString {
    /// The empty string ε.
    pub fn empty() -> Self {
        Self { bits: Vec::new() }
    }

    pub fn with_capacity(cap: usize) -> Self {
        Self { bits: Vec::with_capacity(cap) }
    }

    /// `0^n`
    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![0; n] }
    }

    /// `1^n`
    pub fn ones(n: usize) -> Self {
        Self { bits: vec![1; n] }
    }

    pub fn from_bits<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let bits: Vec<u8> = iter.into_iter().collect();
        assert!(bits.iter().all(|&b| b <= 1), "bit values must be 0 or 1");
        Self { bits }
    }

    /// All bit strings of the given length, in lexicographic order.
    pub fn all_of_len(len: usize) -> Vec<BitString> {
        assert!(len < usize::BITS as usize - 1, "length too large to enumerate");
        let mut out = Vec::with_capacity(1usize << len);
        for v in 0..(1usize << len) {
            let mut s = BitString::with_capacity(len);
            for i in (0..len).rev() {
                s.push(((v >> i) & 1) as u8);
            }
            out.push(s);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The bit at position `i` (0-based). Panics when out of range.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        self.bits.iter().copied()
    }

    pub fn push(&mut self, bit: u8) {
        assert!(bit <= 1, "bit values must be 0 or 1");
        self.bits.push(bit);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.bits.pop()
    }

    pub fn extend(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    /// Concatenation of `self` with `other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    /// `self` repeated `k` times.
    pub fn repeat(&self, k: usize) -> BitString {
        let mut out = BitString::with_capacity(self.len() * k);
        for _ in 0..k {
            out.extend(self);
        }
        out
    }

    /// Bitwise negation (`0 ↔ 1`).
    pub fn negated(&self) -> BitString {
        BitString { bits: self.bits.iter().map(|&b| 1 - b).collect() }
    }

    /// The substring `self[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> BitString {
        BitString { bits: self.bits[start..end].to_vec() }
    }

    /// Length-then-lexicographic comparison.
    pub fn shortlex(&self, other: &BitString) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Error for text that is not an ASCII 0/1 string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid bit character {ch:?} at position {pos}")]
pub struct ParseBitStringError {
    pub pos: usize,
    pub ch: char,
}

impl FromStr for BitString {
    type Err = ParseBitStringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(ParseBitStringError { pos, ch }),
            }
        }
        Ok(BitString { bits })
    }
}
