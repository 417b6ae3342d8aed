//! Exact power-of-two arc weights and the ordering they induce on arc sets.
//!
//! A [`LexWeight`] is an unbounded natural number (or infinity) stored as a
//! little-endian array of 64-bit words with no trailing zero words. Arc `i`
//! contributes exactly one bit, so the sum over any set of distinct arcs is
//! the bitwise union of their weights and distinct sets never collide.

use std::cmp::Ordering;
use std::fmt;

use crate::graph::ArcId;
use crate::state::StateVector;
use crate::Error;

const WORD_BITS: usize = 64;

/// Which end of the arc numbering receives the small weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Arc `i` weighs `2^(i-1)`.
    Earliest,
    /// Arc `i` weighs `2^(m-i)`.
    Latest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightScheme {
    kind: SchemeKind,
    m: usize,
}

impl WeightScheme {
    pub fn new(kind: SchemeKind, m: usize) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::EmptyScheme);
        }
        Ok(Self { kind, m })
    }

    pub fn earliest(m: usize) -> Result<Self, Error> {
        Self::new(SchemeKind::Earliest, m)
    }

    pub fn latest(m: usize) -> Result<Self, Error> {
        Self::new(SchemeKind::Latest, m)
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Zero-based bit position that arc `id` occupies under this scheme.
    pub fn bit_of_arc(&self, id: ArcId) -> Result<usize, Error> {
        let i = id.get();
        if i == 0 || i > self.m {
            return Err(Error::ArcOutOfRange { index: i, m: self.m });
        }
        Ok(match self.kind {
            SchemeKind::Earliest => i - 1,
            SchemeKind::Latest => self.m - i,
        })
    }

    pub fn weight_of_arc(&self, id: ArcId) -> Result<LexWeight, Error> {
        self.bit_of_arc(id).map(LexWeight::pow2)
    }
}

/// Exact path weight. `Infinity` is strictly greater than every finite value
/// and absorbs addition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LexWeight {
    Finite(Magnitude),
    Infinity,
}

/// Canonical little-endian word array; the last word is never zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Magnitude {
    words: Vec<u64>,
}

impl Magnitude {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    pub fn pow2(bit: usize) -> Self {
        let mut words = vec![0u64; bit / WORD_BITS + 1];
        words[bit / WORD_BITS] = 1u64 << (bit % WORD_BITS);
        Self { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Number of significant bits (0 for zero).
    pub fn bit_len(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&top) => (self.words.len() - 1) * WORD_BITS + (WORD_BITS - top.leading_zeros() as usize),
        }
    }

    pub fn bit(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn add(&self, other: &Magnitude) -> Magnitude {
        let (long, short) = if self.words.len() >= other.words.len() {
            (&self.words, &other.words)
        } else {
            (&other.words, &self.words)
        };
        let mut out = Vec::with_capacity(long.len() + 1);
        let mut carry = false;
        for (i, &a) in long.iter().enumerate() {
            let b = short.get(i).copied().unwrap_or(0);
            let (s1, c1) = a.overflowing_add(b);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            out.push(s2);
            carry = c1 || c2;
        }
        if carry {
            out.push(1);
        }
        Magnitude::from_words(out)
    }

    /// In-place `self += 2^bit`.
    pub fn add_pow2(&mut self, bit: usize) {
        let mut w = bit / WORD_BITS;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let (s, mut carry) = self.words[w].overflowing_add(1u64 << (bit % WORD_BITS));
        self.words[w] = s;
        while carry {
            w += 1;
            if w == self.words.len() {
                self.words.push(1);
                break;
            }
            let (s, c) = self.words[w].overflowing_add(1);
            self.words[w] = s;
            carry = c;
        }
    }

    /// Compares `self + 2^bit` against `other` without materialising the sum.
    pub fn cmp_plus_pow2(&self, bit: usize, other: &Magnitude) -> Ordering {
        let w = bit / WORD_BITS;
        let len = self.words.len();
        let word = |i: usize| self.words.get(i).copied().unwrap_or(0);

        // Words of the sum: unchanged below `w`, bumped at `w`, and +1 on the
        // run of carries above it.
        let (low, mut carry) = word(w).overflowing_add(1u64 << (bit % WORD_BITS));
        let mut carry_end = w + 1;
        while carry {
            let (_, c) = word(carry_end).overflowing_add(1);
            carry = c;
            carry_end += 1;
        }
        // carry_end is one past the last word touched by the carry run.
        let sum_len = len.max(w + 1).max(carry_end);
        let sum_word = |i: usize| -> u64 {
            if i < w {
                word(i)
            } else if i == w {
                low
            } else if i < carry_end {
                word(i).wrapping_add(1)
            } else {
                word(i)
            }
        };
        let mut sum_top = sum_len;
        while sum_top > 0 && sum_word(sum_top - 1) == 0 {
            sum_top -= 1;
        }
        match sum_top.cmp(&other.words.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..sum_top).rev() {
            match sum_word(i).cmp(&other.words[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Bit string, least significant bit first, padded or truncated to `width`.
    pub fn to_bit_string(&self, width: usize) -> String {
        (0..width).map(|i| if self.bit(i) { '1' } else { '0' }).collect()
    }

    fn div_rem_small(&self, divisor: u64) -> (Magnitude, u64) {
        let mut out = vec![0u64; self.words.len()];
        let mut rem: u128 = 0;
        for i in (0..self.words.len()).rev() {
            let cur = (rem << 64) | self.words[i] as u128;
            out[i] = (cur / divisor as u128) as u64;
            rem = cur % divisor as u128;
        }
        (Magnitude::from_words(out), rem as u64)
    }
}

impl Ord for Magnitude {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        const CHUNK: u64 = 10_000_000_000_000_000_000;
        let mut chunks = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem_small(CHUNK);
            chunks.push(r);
            cur = q;
        }
        let mut s = chunks.pop().unwrap().to_string();
        for c in chunks.iter().rev() {
            s.push_str(&format!("{c:019}"));
        }
        f.write_str(&s)
    }
}

impl From<u64> for Magnitude {
    fn from(v: u64) -> Self {
        Magnitude::from_words(vec![v])
    }
}

impl LexWeight {
    pub fn zero() -> Self {
        LexWeight::Finite(Magnitude::zero())
    }

    pub fn pow2(bit: usize) -> Self {
        LexWeight::Finite(Magnitude::pow2(bit))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, LexWeight::Infinity)
    }

    pub fn magnitude(&self) -> Option<&Magnitude> {
        match self {
            LexWeight::Finite(m) => Some(m),
            LexWeight::Infinity => None,
        }
    }

    /// Decimal rendering; `inf` for infinity.
    pub fn to_decimal(&self) -> String {
        self.to_string()
    }

    /// Bit string with bit 0 (arc `a_1` under the earliest scheme) first.
    pub fn to_bit_string(&self, width: usize) -> String {
        match self {
            LexWeight::Finite(m) => m.to_bit_string(width),
            LexWeight::Infinity => "inf".to_string(),
        }
    }

    /// Parses the decimal rendering produced by [`LexWeight::to_decimal`].
    pub fn parse_decimal(s: &str) -> Result<Self, Error> {
        if s == "inf" {
            return Ok(LexWeight::Infinity);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::BadWeight(s.to_string()));
        }
        let mut words: Vec<u64> = Vec::new();
        for b in s.bytes() {
            // words = words * 10 + digit
            let mut carry = (b - b'0') as u128;
            for w in words.iter_mut() {
                let cur = *w as u128 * 10 + carry;
                *w = cur as u64;
                carry = cur >> 64;
            }
            if carry > 0 {
                words.push(carry as u64);
            }
        }
        Ok(LexWeight::Finite(Magnitude::from_words(words)))
    }
}

impl From<u64> for LexWeight {
    fn from(v: u64) -> Self {
        LexWeight::Finite(Magnitude::from(v))
    }
}

impl Ord for LexWeight {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LexWeight::Infinity, LexWeight::Infinity) => Ordering::Equal,
            (LexWeight::Infinity, _) => Ordering::Greater,
            (_, LexWeight::Infinity) => Ordering::Less,
            (LexWeight::Finite(a), LexWeight::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for LexWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LexWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexWeight::Finite(m) => m.fmt(f),
            LexWeight::Infinity => f.write_str("inf"),
        }
    }
}

pub fn weight_of_arc(scheme: &WeightScheme, id: ArcId) -> Result<LexWeight, Error> {
    scheme.weight_of_arc(id)
}

pub fn lex_add(a: &LexWeight, b: &LexWeight) -> LexWeight {
    match (a, b) {
        (LexWeight::Finite(x), LexWeight::Finite(y)) => LexWeight::Finite(x.add(y)),
        _ => LexWeight::Infinity,
    }
}

pub fn lex_cmp(a: &LexWeight, b: &LexWeight) -> Ordering {
    a.cmp(b)
}

/// `Σ 2^(i-1)` over the set bits of `x`: the state vector read as a binary
/// number with `a_1` least significant.
pub fn vector_value(x: &StateVector) -> LexWeight {
    LexWeight::Finite(Magnitude::from_words(x.words().to_vec()))
}

/// `x ≪ y`: at the highest index where the two differ, `x` has 0 and `y` has 1.
///
/// Scans bit by bit from the top so it stays an independent check of the
/// numeric order used everywhere else.
pub fn bat_precedes(x: &StateVector, y: &StateVector) -> Result<bool, Error> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), found: y.len() });
    }
    for i in (0..x.len()).rev() {
        match (x.get(i), y.get(i)) {
            (false, true) => return Ok(true),
            (true, false) => return Ok(false),
            _ => {}
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn big(w: &LexWeight) -> BigUint {
        let m = w.magnitude().unwrap();
        let bytes: Vec<u8> = m.words().iter().flat_map(|w| w.to_le_bytes()).collect();
        BigUint::from_bytes_le(&bytes)
    }

    fn arc(i: usize) -> ArcId {
        ArcId::new(i).unwrap()
    }

    #[test]
    fn arc_weights_for_eight_arcs() {
        let e = WeightScheme::earliest(8).unwrap();
        let l = WeightScheme::latest(8).unwrap();
        assert_eq!(e.weight_of_arc(arc(1)).unwrap(), LexWeight::from(1));
        assert_eq!(e.weight_of_arc(arc(8)).unwrap(), LexWeight::from(128));
        assert_eq!(l.weight_of_arc(arc(1)).unwrap(), LexWeight::from(128));
        assert_eq!(l.weight_of_arc(arc(8)).unwrap(), LexWeight::from(1));
        assert!(matches!(e.weight_of_arc(arc(9)), Err(Error::ArcOutOfRange { .. })));
        assert!(WeightScheme::earliest(0).is_err());
    }

    #[test]
    fn addition_examples() {
        assert_eq!(lex_add(&1.into(), &4.into()), LexWeight::from(5));
        assert_eq!(lex_add(&5.into(), &64.into()), LexWeight::from(69));
        let p100 = LexWeight::pow2(100);
        let sum = lex_add(&p100, &p100);
        assert_eq!(sum, LexWeight::pow2(101));
        assert_eq!(big(&sum), BigUint::from(1u8) << 101u32);
        assert!(lex_add(&LexWeight::Infinity, &3.into()).is_infinite());
        assert!(lex_add(&3.into(), &LexWeight::Infinity).is_infinite());
    }

    #[test]
    fn carry_across_full_words() {
        let all_ones = LexWeight::Finite(Magnitude::from_words(vec![u64::MAX, u64::MAX]));
        let sum = lex_add(&all_ones, &1.into());
        assert_eq!(sum, LexWeight::pow2(128));
        let mut m = Magnitude::from_words(vec![u64::MAX, u64::MAX]);
        m.add_pow2(0);
        assert_eq!(m, Magnitude::pow2(128));
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(lex_cmp(&69.into(), &137.into()), Ordering::Less);
        assert_eq!(lex_cmp(&69.into(), &69.into()), Ordering::Equal);
        assert_eq!(lex_cmp(&LexWeight::pow2(63), &LexWeight::Infinity), Ordering::Less);
        assert_eq!(lex_cmp(&LexWeight::Infinity, &LexWeight::Infinity), Ordering::Equal);
    }

    #[test]
    fn vector_value_examples() {
        let v = |s: &str| vector_value(&s.parse::<StateVector>().unwrap());
        assert_eq!(v("10000"), LexWeight::from(1));
        assert_eq!(v("00001"), LexWeight::from(16));
        assert_eq!(v("00000"), LexWeight::zero());
        assert_eq!(v("10100010"), LexWeight::from(69));
        assert_eq!(v("01001001"), LexWeight::from(146));
    }

    #[test]
    fn precedes_examples() {
        let sv = |s: &str| s.parse::<StateVector>().unwrap();
        assert!(bat_precedes(&sv("10010"), &sv("10110")).unwrap());
        assert!(!bat_precedes(&sv("10010"), &sv("10010")).unwrap());
        assert!(bat_precedes(&sv("01100"), &sv("10010")).unwrap());
        assert!(bat_precedes(&sv("01"), &sv("011")).is_err());
    }

    #[test]
    fn precedes_is_isomorphic_to_value_order_up_to_m8() {
        for m in 1..=8usize {
            let all: Vec<StateVector> = (0..1u64 << m).map(|v| StateVector::from_mask(v, m)).collect();
            for x in &all {
                for y in &all {
                    let by_def = bat_precedes(x, y).unwrap();
                    let by_value = vector_value(x) < vector_value(y);
                    assert_eq!(by_def, by_value, "{x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn geometric_sum_identity_up_to_1000() {
        let mut partial = Magnitude::zero();
        for i in 1..=1000usize {
            let top = Magnitude::pow2(i - 1);
            assert!(top > partial);
            // partial + 1 == 2^(i-1)
            assert_eq!(partial.cmp_plus_pow2(0, &top), Ordering::Equal);
            partial.add_pow2(i - 1);
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(LexWeight::zero().to_decimal(), "0");
        assert_eq!(LexWeight::from(69).to_decimal(), "69");
        assert_eq!(LexWeight::Infinity.to_decimal(), "inf");
        let p = LexWeight::pow2(200);
        assert_eq!(p.to_decimal(), big(&p).to_string());
        assert_eq!(LexWeight::parse_decimal(&p.to_decimal()).unwrap(), p);
        assert!(LexWeight::parse_decimal("12a").is_err());
        assert_eq!(LexWeight::from(69).to_bit_string(8), "10100010");
    }

    fn arb_mag() -> impl Strategy<Value = Magnitude> {
        prop::collection::vec(any::<u64>(), 0..5).prop_map(Magnitude::from_words)
    }

    fn to_big(m: &Magnitude) -> BigUint {
        big(&LexWeight::Finite(m.clone()))
    }

    proptest! {
        #[test]
        fn add_and_cmp_agree_with_reference(a in arb_mag(), b in arb_mag()) {
            prop_assert_eq!(to_big(&a.add(&b)), to_big(&a) + to_big(&b));
            prop_assert_eq!(a.cmp(&b), to_big(&a).cmp(&to_big(&b)));
            prop_assert_eq!(a.add(&b), b.add(&a));
        }

        #[test]
        fn plus_pow2_cmp_matches_materialised_sum(a in arb_mag(), b in arb_mag(), bit in 0usize..320) {
            let mut sum = a.clone();
            sum.add_pow2(bit);
            prop_assert_eq!(to_big(&sum), to_big(&a) + (BigUint::from(1u8) << bit));
            prop_assert_eq!(a.cmp_plus_pow2(bit, &b), sum.cmp(&b));
            prop_assert_eq!(a.cmp_plus_pow2(bit, &sum), Ordering::Equal);
        }

        #[test]
        fn decimal_round_trip(a in arb_mag()) {
            let w = LexWeight::Finite(a.clone());
            prop_assert_eq!(w.to_decimal(), to_big(&a).to_string());
            prop_assert_eq!(LexWeight::parse_decimal(&w.to_decimal()).unwrap(), w);
        }

        #[test]
        fn disjoint_single_bits_add_as_union(bits in prop::collection::btree_set(0usize..400, 0..20)) {
            let mut total = LexWeight::zero();
            for &b in &bits {
                total = lex_add(&total, &LexWeight::pow2(b));
            }
            let m = total.magnitude().unwrap();
            prop_assert_eq!(m.count_ones(), bits.len());
            for &b in &bits {
                prop_assert!(m.bit(b));
            }
        }
    }
}
