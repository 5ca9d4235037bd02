//! Bit strings, exact dyadic rationals and prefix-code utilities.
//!
//! Every probability mass handled by the crate is a finite sum of terms
//! `2^-n`, so [`DyadicRational`] never rounds. Bit strings are written
//! earliest-read bit first.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitsError {
    #[error("invalid bit character {found:?} at index {index}")]
    BadChar { index: usize, found: char },
    #[error("malformed dyadic rational {0:?} (expected \"num/2^exp\")")]
    BadDyadic(String),
    #[error("dyadic value {0} outside [0, 1)")]
    OutOfRange(DyadicRational),
}

/// A finite sequence of bits.
///
/// The derived `Ord` is plain lexicographic order, in which a string sorts
/// before all of its extensions. Use [`BitString::shortlex_cmp`] for the
/// enumeration order (length first).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        BitString(Vec::new())
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        BitString(bits)
    }

    /// The `len` low bits of `value`, most significant first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        BitString((0..len).rev().map(|i| (value >> i) & 1 == 1).collect())
    }

    /// Big-endian binary numeral without leading zeros; zero is the empty string.
    pub fn from_natural(n: &BigUint) -> Self {
        let bits = n.bits();
        BitString((0..bits).rev().map(|i| n.bit(i)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<bool> {
        self.0
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        BitString(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> BitString {
        BitString(self.0[from..to].to_vec())
    }

    pub fn with_bit(&self, bit: bool) -> BitString {
        let mut v = self.0.clone();
        v.push(bit);
        BitString(v)
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.0.iter().copied()
    }

    /// Length first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &BitString) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Replace the contents with the next string in shortlex order.
    pub fn increment(&mut self) {
        for i in (0..self.0.len()).rev() {
            if self.0[i] {
                self.0[i] = false;
            } else {
                self.0[i] = true;
                return;
            }
        }
        self.0.push(false);
    }
}

pub fn bs_parse(text: &str) -> Result<BitString, BitsError> {
    text.chars()
        .enumerate()
        .map(|(index, c)| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            found => Err(BitsError::BadChar { index, found }),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(BitString)
}

impl FromStr for BitString {
    type Err = BitsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        bs_parse(s)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
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
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        bs_parse(&s).map_err(serde::de::Error::custom)
    }
}

/// An exact non-negative number `numerator / 2^exponent`, kept reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: BigUint,
    exponent: u64,
}

impl DyadicRational {
    pub fn new(numerator: BigUint, exponent: u64) -> Self {
        let mut d = DyadicRational {
            numerator,
            exponent,
        };
        d.reduce();
        d
    }

    pub fn zero() -> Self {
        DyadicRational {
            numerator: BigUint::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        DyadicRational {
            numerator: BigUint::one(),
            exponent: 0,
        }
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u64) -> Self {
        DyadicRational {
            numerator: BigUint::one(),
            exponent: k,
        }
    }

    /// The value `0.b1 b2 ... bk` of a bit string read as a binary fraction.
    pub fn from_fraction_bits(bits: &BitString) -> Self {
        let mut num = BigUint::zero();
        for b in bits.iter() {
            num <<= 1u32;
            if b {
                num += 1u32;
            }
        }
        DyadicRational::new(num, bits.len() as u64)
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self
            .numerator
            .trailing_zeros()
            .unwrap_or(0)
            .min(self.exponent);
        if tz > 0 {
            self.numerator >>= tz;
            self.exponent -= tz;
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn scaled(&self, exponent: u64) -> BigUint {
        debug_assert!(exponent >= self.exponent);
        &self.numerator << (exponent - self.exponent)
    }

    /// `ceil(-log2(self))`, or `None` for zero. Exact.
    pub fn neg_log2_ceil(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        // value = n / 2^e with 2^(b-1) <= n < 2^b, so
        // -log2 = e - log2 n lies in (e - b, e - b + 1]; it equals e - b + 1
        // exactly when n is a power of two.
        let b = self.numerator.bits() as i64;
        Some(self.exponent as i64 - b + 1)
    }

    pub fn checked_sub(&self, other: &DyadicRational) -> Option<DyadicRational> {
        let e = self.exponent.max(other.exponent);
        let (a, b) = (self.scaled(e), other.scaled(e));
        if a < b {
            None
        } else {
            Some(DyadicRational::new(a - b, e))
        }
    }
}

impl Default for DyadicRational {
    fn default() -> Self {
        DyadicRational::zero()
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let e = self.exponent.max(rhs.exponent);
        DyadicRational::new(self.scaled(e) + rhs.scaled(e), e)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: DyadicRational) -> DyadicRational {
        &self + &rhs
    }
}

impl AddAssign<&DyadicRational> for DyadicRational {
    fn add_assign(&mut self, rhs: &DyadicRational) {
        *self = &*self + rhs;
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        self.scaled(e).cmp(&other.scaled(e))
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DyadicRational {
    type Err = BitsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BitsError::BadDyadic(s.to_string());
        let (num, exp) = s.split_once("/2^").ok_or_else(bad)?;
        let num = num.parse::<BigUint>().map_err(|_| bad())?;
        let exp = exp.parse::<u64>().map_err(|_| bad())?;
        Ok(DyadicRational::new(num, exp))
    }
}

impl Serialize for DyadicRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DyadicRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// First `k` digits of the binary expansion of `d`, which must lie in `[0, 1)`.
pub fn dyadic_bits(d: &DyadicRational, k: usize) -> Result<BitString, BitsError> {
    if *d >= DyadicRational::one() {
        return Err(BitsError::OutOfRange(d.clone()));
    }
    // d = n / 2^e; digit i (1-based) is bit (e - i) of n.
    let e = d.exponent;
    let bits = (1..=k as u64)
        .map(|i| i <= e && d.numerator.bit(e - i))
        .collect();
    Ok(BitString(bits))
}

/// A finite set of code words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSet {
    members: BTreeSet<BitString>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixFreeReport {
    pub prefix_free: bool,
    /// `(shorter, longer)` with `shorter` a proper prefix of `longer`.
    pub witness: Option<(BitString, BitString)>,
}

impl CodeSet {
    pub fn new() -> Self {
        CodeSet::default()
    }

    pub fn insert(&mut self, word: BitString) -> bool {
        self.members.insert(word)
    }

    pub fn contains(&self, word: &BitString) -> bool {
        self.members.contains(word)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BitString> {
        self.members.iter()
    }
}

impl FromIterator<BitString> for CodeSet {
    fn from_iter<I: IntoIterator<Item = BitString>>(iter: I) -> Self {
        CodeSet {
            members: iter.into_iter().collect(),
        }
    }
}

/// In lexicographic order every string lying between `a` and an extension
/// of `a` also extends `a`, so checking neighbours is enough.
pub fn is_prefix_free(s: &CodeSet) -> PrefixFreeReport {
    let witness = s
        .members
        .iter()
        .zip(s.members.iter().skip(1))
        .find(|(a, b)| a.is_prefix_of(b))
        .map(|(a, b)| (a.clone(), b.clone()));
    PrefixFreeReport {
        prefix_free: witness.is_none(),
        witness,
    }
}

/// Exact `sum 2^-|p|`. Prefix-freeness is not required.
pub fn kraft_sum(s: &CodeSet) -> DyadicRational {
    kraft_sum_of(s.iter().map(|w| w.len()))
}

/// Kraft sum of a multiset of code-word lengths.
pub fn kraft_sum_of<I: IntoIterator<Item = usize>>(lengths: I) -> DyadicRational {
    let mut counts: Vec<u64> = Vec::new();
    for len in lengths {
        if counts.len() <= len {
            counts.resize(len + 1, 0);
        }
        counts[len] += 1;
    }
    let Some(max) = counts.len().checked_sub(1) else {
        return DyadicRational::zero();
    };
    let mut num = BigUint::zero();
    for (len, &c) in counts.iter().enumerate() {
        if c > 0 {
            num += BigUint::from(c) << (max - len);
        }
    }
    DyadicRational::new(num, max as u64)
}
