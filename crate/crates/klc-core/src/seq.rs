//! Bit-packed periodic binary sequences and the exact complexity primitives.
//!
//! A [`PeriodicSequence`] holds one period of a binary sequence whose period
//! length is a power of two, `2^n`. Linear complexity is computed by the
//! Games-Chan recursion: compare the two halves of a period; if they agree
//! the complexity is that of the half, otherwise it is half the period plus
//! the complexity of the XOR of the halves. An independent route to the same
//! quantity divides the period polynomial by `(1 + x)` over GF(2) as many
//! times as possible; the period length minus that multiplicity equals the
//! linear complexity. Both routes are implemented here and cross-checked in
//! the test suites.
//!
//! Sequences are value types: equality is exponent plus bit-for-bit equality,
//! all operations are pure, and values can be shared freely across threads.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported exponent for point queries (period `2^16`, 8 KiB of bits).
/// The verification engines declare their own, tighter bounds.
pub const MAX_EXPONENT: u32 = 16;

#[inline]
fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

#[inline]
fn words_for(n: u32) -> usize {
    (1u64 << n).div_ceil(64) as usize
}

/// One period of a `2^n`-periodic binary sequence, bit-packed into words.
///
/// Bit `i` of the period (the coefficient `s_i`) lives at bit `i % 64` of
/// word `i / 64`. Bits beyond the period are kept zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSequence {
    n: u32,
    words: Vec<u64>,
}

impl PeriodicSequence {
    /// The all-zero sequence of exponent `n`.
    pub fn zero(n: u32) -> Self {
        assert!(n <= MAX_EXPONENT, "exponent {n} exceeds {MAX_EXPONENT}");
        PeriodicSequence {
            n,
            words: vec![0; words_for(n)],
        }
    }

    /// Build from explicit bits; the iterator must yield exactly `2^n` items.
    pub fn from_bits<I: IntoIterator<Item = bool>>(n: u32, bits: I) -> Self {
        let mut seq = Self::zero(n);
        let mut count = 0u64;
        for (i, b) in bits.into_iter().enumerate() {
            assert!((i as u64) < seq.period(), "more than 2^{n} bits supplied");
            if b {
                seq.words[i / 64] |= 1u64 << (i % 64);
            }
            count += 1;
        }
        assert_eq!(count, seq.period(), "expected exactly 2^{n} bits");
        seq
    }

    /// Build from the positions of the nonzero elements.
    pub fn from_support<I: IntoIterator<Item = u64>>(n: u32, support: I) -> Self {
        let mut seq = Self::zero(n);
        for i in support {
            assert!(i < seq.period(), "position {i} outside period");
            seq.words[(i / 64) as usize] |= 1u64 << (i % 64);
        }
        seq
    }

    /// Build from a compact integer encoding (bit `i` of `index` is `s_i`).
    /// Only exponents whose period fits one word (`n <= 6`) are supported.
    pub fn from_index(n: u32, index: u64) -> Self {
        assert!(n <= 6, "index form requires n <= 6");
        debug_assert!(n == 6 || index < (1u64 << (1u64 << n)));
        PeriodicSequence {
            n,
            words: vec![index],
        }
    }

    /// Inverse of [`PeriodicSequence::from_index`]; requires `n <= 6`.
    pub fn to_index(&self) -> u64 {
        assert!(self.n <= 6, "index form requires n <= 6");
        self.words[0]
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    /// Period length `2^n`.
    pub fn period(&self) -> u64 {
        1u64 << self.n
    }

    pub fn bit(&self, i: u64) -> bool {
        assert!(i < self.period(), "position {i} outside period");
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.period()).map(move |i| self.bit(i))
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight of one period.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn has_odd_weight(&self) -> bool {
        self.words
            .iter()
            .fold(0u32, |p, w| p ^ (w.count_ones() & 1))
            == 1
    }

    /// First half of the period as a sequence of exponent `n - 1`.
    pub fn left_half(&self) -> Result<PeriodicSequence> {
        self.half(false)
    }

    /// Second half of the period as a sequence of exponent `n - 1`.
    pub fn right_half(&self) -> Result<PeriodicSequence> {
        self.half(true)
    }

    fn half(&self, upper: bool) -> Result<PeriodicSequence> {
        if self.n == 0 {
            return Err(Error::InvalidArgument(
                "a period-1 sequence has no half period".into(),
            ));
        }
        let half = 1u64 << (self.n - 1);
        let words = if half >= 64 {
            let hw = (half / 64) as usize;
            let src = if upper { &self.words[hw..] } else { &self.words[..hw] };
            src.to_vec()
        } else {
            let w = self.words[0];
            let w = if upper { w >> half } else { w };
            vec![w & low_mask(half as u32)]
        };
        Ok(PeriodicSequence {
            n: self.n - 1,
            words,
        })
    }

    /// The halving map: bit `i` of the result is `s_i XOR s_{i + 2^{n-1}}`.
    ///
    /// Weight never increases under folding, and for `n >= 2` the weight
    /// parity is preserved.
    pub fn fold(&self) -> Result<PeriodicSequence> {
        if self.n == 0 {
            return Err(Error::InvalidArgument(
                "cannot fold a period-1 sequence (no half period)".into(),
            ));
        }
        let half = 1u64 << (self.n - 1);
        let words = if half >= 64 {
            let hw = (half / 64) as usize;
            (0..hw).map(|i| self.words[i] ^ self.words[i + hw]).collect()
        } else {
            let w = self.words[0];
            vec![(w ^ (w >> half)) & low_mask(half as u32)]
        };
        Ok(PeriodicSequence {
            n: self.n - 1,
            words,
        })
    }

    /// Linear complexity via the Games-Chan recursion.
    ///
    /// The result lies in `[0, 2^n]`; it is `0` exactly for the zero
    /// sequence and `2^n` exactly when the period weight is odd.
    pub fn linear_complexity(&self) -> u64 {
        if self.n <= 6 {
            return u64::from(linear_complexity_word(self.words[0], self.n));
        }
        let mut buf = self.words.clone();
        let mut n = self.n;
        let mut acc = 0u64;
        while n > 6 {
            let hw = (1usize << (n - 1)) / 64;
            let (left, right) = buf.split_at_mut(hw);
            if left != &right[..hw] {
                acc += 1u64 << (n - 1);
                for (l, r) in left.iter_mut().zip(right.iter()) {
                    *l ^= r;
                }
            }
            buf.truncate(hw);
            n -= 1;
        }
        acc + u64::from(linear_complexity_word(buf[0], n))
    }

    /// Multiplicity of the factor `(1 + x)` in the period polynomial
    /// `s_0 + s_1 x + ... + s_{2^n - 1} x^{2^n - 1}` over GF(2).
    ///
    /// For the zero sequence the multiplicity is `2^n` by convention, so
    /// that `period - multiplicity` equals the linear complexity uniformly.
    /// Computed by repeated synthetic division, independent of Games-Chan.
    pub fn minpoly_multiplicity(&self) -> u64 {
        if self.is_zero() {
            return self.period();
        }
        let mut coeffs = self.words.clone();
        let mut mult = 0u64;
        while word_parity(&coeffs) == 0 {
            divide_by_one_plus_x(&mut coeffs);
            mult += 1;
            debug_assert!(mult < self.period());
        }
        mult
    }

    /// Bitwise XOR of two sequences of equal exponent.
    pub fn xor(&self, other: &PeriodicSequence) -> Result<PeriodicSequence> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(format!(
                "exponent mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(PeriodicSequence { n: self.n, words })
    }

    /// Parse the binary text form: one character per bit, `s_0` first.
    pub fn from_bin_str(text: &str) -> Result<PeriodicSequence> {
        if text.is_empty() {
            return Err(Error::InvalidArgument("empty sequence text".into()));
        }
        for (pos, ch) in text.chars().enumerate() {
            if ch != '0' && ch != '1' {
                return Err(Error::InvalidArgument(format!(
                    "invalid character {ch:?} at position {pos} (expected '0' or '1')"
                )));
            }
        }
        let len = text.len() as u64;
        if !len.is_power_of_two() || len > (1u64 << MAX_EXPONENT) {
            return Err(Error::InvalidArgument(format!(
                "length {len} is not a power of two within 2^{MAX_EXPONENT}"
            )));
        }
        let n = len.ilog2();
        Ok(Self::from_bits(n, text.bytes().map(|b| b == b'1')))
    }

    /// Parse the hexadecimal text form: most significant nibble first,
    /// bit `i` is bit `3 - (i mod 4)` of nibble `i / 4`. Requires `n >= 2`.
    pub fn from_hex_str(text: &str) -> Result<PeriodicSequence> {
        if text.is_empty() {
            return Err(Error::InvalidArgument("empty sequence text".into()));
        }
        let mut nibbles = Vec::with_capacity(text.len());
        for (pos, ch) in text.chars().enumerate() {
            match ch.to_digit(16) {
                Some(d) => nibbles.push(d as u8),
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "invalid character {ch:?} at position {pos} (expected a hex digit)"
                    )))
                }
            }
        }
        let bits = 4 * nibbles.len() as u64;
        if !bits.is_power_of_two() || !(4..=(1u64 << MAX_EXPONENT)).contains(&bits) {
            return Err(Error::InvalidArgument(format!(
                "hex length {} encodes {bits} bits, not a power of two in [4, 2^{MAX_EXPONENT}]",
                nibbles.len()
            )));
        }
        let n = bits.ilog2();
        Ok(Self::from_bits(
            n,
            (0..bits).map(|i| (nibbles[(i / 4) as usize] >> (3 - (i % 4))) & 1 == 1),
        ))
    }

    /// Render as the binary text form.
    pub fn to_bin_string(&self) -> String {
        self.bits().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Render as the hexadecimal text form (uppercase); requires `n >= 2`.
    pub fn to_hex_string(&self) -> Result<String> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(
                "hex form requires at least one full nibble (n >= 2)".into(),
            ));
        }
        let mut out = String::with_capacity((self.period() / 4) as usize);
        for d in 0..self.period() / 4 {
            let mut v = 0u32;
            for t in 0..4 {
                v |= u32::from(self.bit(4 * d + t)) << (3 - t);
            }
            out.push(char::from_digit(v, 16).unwrap().to_ascii_uppercase());
        }
        Ok(out)
    }
}

impl fmt::Debug for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 6 {
            write!(f, "PeriodicSequence(n={}, {})", self.n, self.to_bin_string())
        } else {
            write!(
                f,
                "PeriodicSequence(n={}, weight={})",
                self.n,
                self.weight()
            )
        }
    }
}

impl fmt::Display for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bin_string())
    }
}

/// Games-Chan on a single-word period (`n <= 6`): the workhorse of the
/// exhaustive engines, which run it billions of times.
#[inline]
pub fn linear_complexity_word(mut bits: u64, n: u32) -> u32 {
    debug_assert!(n <= 6);
    debug_assert!(n == 6 || bits < (1u64 << (1u32 << n)));
    let mut len = 1u32 << n;
    let mut acc = 0u32;
    while len > 1 {
        let half = len >> 1;
        let left = bits & low_mask(half);
        let diff = left ^ (bits >> half);
        if diff == 0 {
            bits = left;
        } else {
            acc += half;
            bits = diff;
        }
        len = half;
    }
    acc + (bits & 1) as u32
}

fn word_parity(words: &[u64]) -> u32 {
    words.iter().fold(0u32, |p, w| p ^ (w.count_ones() & 1))
}

/// Replace bit `i` with the XOR of bits `i..64` (suffix parity, inclusive).
#[inline]
fn suffix_xor_incl(mut w: u64) -> u64 {
    w ^= w >> 1;
    w ^= w >> 2;
    w ^= w >> 4;
    w ^= w >> 8;
    w ^= w >> 16;
    w ^= w >> 32;
    w
}

/// One synthetic-division step by `(1 + x)` over GF(2), in place.
/// Quotient coefficient `q_i` is the XOR of all coefficients above `i`.
/// The caller guarantees even parity (i.e. exact divisibility).
fn divide_by_one_plus_x(words: &mut [u64]) {
    let mut carry = 0u64; // all-ones when the parity of higher words is odd
    for w in words.iter_mut().rev() {
        let orig = *w;
        *w = (suffix_xor_incl(orig) >> 1) ^ carry;
        if orig.count_ones() & 1 == 1 {
            carry = !carry;
        }
    }
}

/// Two unit impulses within one period: positions `i < j` of a `2^n`-periodic
/// sequence that is zero elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitPairSpec {
    n: u32,
    i: u64,
    j: u64,
}

impl UnitPairSpec {
    pub fn new(n: u32, i: u64, j: u64) -> Result<Self> {
        if n > MAX_EXPONENT {
            return Err(Error::InvalidArgument(format!(
                "exponent {n} exceeds {MAX_EXPONENT}"
            )));
        }
        if i >= j || j >= (1u64 << n) {
            return Err(Error::InvalidArgument(format!(
                "positions must satisfy i < j < 2^n; got i={i}, j={j}, n={n}"
            )));
        }
        Ok(UnitPairSpec { n, i, j })
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn positions(&self) -> (u64, u64) {
        (self.i, self.j)
    }

    /// Closed-form linear complexity `2^n - 2^r`, where `2^r` is the largest
    /// power of two dividing `j - i`. Equals Games-Chan on the two-bit
    /// sequence with support `{i, j}`.
    pub fn complexity(&self) -> u64 {
        let r = (self.j - self.i).trailing_zeros();
        (1u64 << self.n) - (1u64 << r)
    }

    /// The two-bit sequence this spec describes.
    pub fn sequence(&self) -> PeriodicSequence {
        PeriodicSequence::from_support(self.n, [self.i, self.j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(text: &str) -> PeriodicSequence {
        PeriodicSequence::from_bin_str(text).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(PeriodicSequence::zero(3).weight(), 0);
        assert_eq!(seq("1100").weight(), 2);
        assert_eq!(seq("1111").weight(), 4);
    }

    #[test]
    fn fold_examples() {
        assert_eq!(seq("1100").fold().unwrap(), seq("11"));
        assert_eq!(seq("1010").fold().unwrap(), seq("00"));
        assert_eq!(seq("10000000").fold().unwrap(), seq("1000"));
        assert!(matches!(
            seq("1").fold(),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn linear_complexity_examples() {
        for n in 0..=8 {
            assert_eq!(PeriodicSequence::zero(n).linear_complexity(), 0);
        }
        // odd weight forces the maximum
        assert_eq!(
            PeriodicSequence::from_support(3, [5]).linear_complexity(),
            8
        );
        assert_eq!(seq("1100").linear_complexity(), 3);
        assert_eq!(seq("1111").linear_complexity(), 1);
        assert_eq!(seq("1010").linear_complexity(), 2);
        assert_eq!(seq("0110").linear_complexity(), 3);
    }

    #[test]
    fn linear_complexity_base_cases() {
        assert_eq!(seq("0").linear_complexity(), 0);
        assert_eq!(seq("1").linear_complexity(), 1);
        assert_eq!(seq("01").linear_complexity(), 2);
        assert_eq!(seq("11").linear_complexity(), 1);
    }

    #[test]
    fn word_and_general_paths_agree_across_boundary() {
        // n = 7 exercises the multi-word recursion down to the word path
        for support in [vec![0u64], vec![0, 1], vec![3, 64], vec![5, 37, 99, 100]] {
            let s = PeriodicSequence::from_support(7, support.clone());
            let mut brute = s.clone();
            // reference: fold-based recursion using halves only
            let mut acc = 0u64;
            loop {
                if brute.exponent() == 0 {
                    acc += u64::from(brute.bit(0));
                    break;
                }
                let l = brute.left_half().unwrap();
                let r = brute.right_half().unwrap();
                if l == r {
                    brute = l;
                } else {
                    acc += brute.period() / 2;
                    brute = l.xor(&r).unwrap();
                }
            }
            assert_eq!(s.linear_complexity(), acc, "support {support:?}");
        }
    }

    #[test]
    fn unit_pair_examples() {
        assert_eq!(UnitPairSpec::new(2, 0, 2).unwrap().complexity(), 2);
        assert_eq!(UnitPairSpec::new(4, 0, 8).unwrap().complexity(), 8);
        assert_eq!(UnitPairSpec::new(3, 1, 4).unwrap().complexity(), 7);
        assert_eq!(UnitPairSpec::new(2, 0, 1).unwrap().complexity(), 3);
        assert!(UnitPairSpec::new(2, 2, 2).is_err());
        assert!(UnitPairSpec::new(2, 0, 4).is_err());
    }

    #[test]
    fn minpoly_examples() {
        assert_eq!(seq("1100").minpoly_multiplicity(), 1);
        assert_eq!(seq("1111").minpoly_multiplicity(), 3);
        assert_eq!(PeriodicSequence::zero(2).minpoly_multiplicity(), 4);
        assert_eq!(seq("1").minpoly_multiplicity(), 0);
        assert_eq!(seq("0").minpoly_multiplicity(), 1);
    }

    #[test]
    fn xor_examples() {
        let s = seq("1100");
        assert_eq!(s.xor(&s).unwrap(), PeriodicSequence::zero(2));
        let sum = s.xor(&seq("0011")).unwrap();
        assert_eq!(sum, seq("1111"));
        assert_eq!(sum.linear_complexity(), 1);
        let sum = s.xor(&seq("1010")).unwrap();
        assert_eq!(sum, seq("0110"));
        assert_eq!(sum.linear_complexity(), 3);
        assert!(s.xor(&seq("11")).is_err());
    }

    #[test]
    fn parse_bin_rejects_bad_input() {
        assert!(PeriodicSequence::from_bin_str("").is_err());
        assert!(PeriodicSequence::from_bin_str("110").is_err());
        let err = PeriodicSequence::from_bin_str("10x0").unwrap_err();
        assert!(err.to_string().contains("position 2"), "{err}");
    }

    #[test]
    fn parse_hex_matches_bin() {
        assert_eq!(PeriodicSequence::from_hex_str("C").unwrap(), seq("1100"));
        assert_eq!(
            PeriodicSequence::from_hex_str("a5").unwrap(),
            seq("10100101")
        );
        assert!(PeriodicSequence::from_hex_str("abc").is_err()); // 12 bits
        let err = PeriodicSequence::from_hex_str("0g").unwrap_err();
        assert!(err.to_string().contains("position 1"), "{err}");
    }

    #[test]
    fn render_round_trips() {
        for n in 0..=3u32 {
            for idx in 0..(1u64 << (1u64 << n)) {
                let s = PeriodicSequence::from_index(n, idx);
                assert_eq!(
                    PeriodicSequence::from_bin_str(&s.to_bin_string()).unwrap(),
                    s
                );
                if n >= 2 {
                    assert_eq!(
                        PeriodicSequence::from_hex_str(&s.to_hex_string().unwrap()).unwrap(),
                        s
                    );
                }
            }
        }
        assert!(seq("11").to_hex_string().is_err());
    }

    #[test]
    fn value_semantics() {
        assert_eq!(seq("1100"), seq("1100"));
        assert_ne!(seq("1100"), seq("0011"));
        assert_ne!(seq("11"), seq("1100"));
    }

    #[test]
    fn index_round_trip() {
        for idx in 0..256u64 {
            let s = PeriodicSequence::from_index(3, idx);
            assert_eq!(s.to_index(), idx);
            assert_eq!(
                u64::from(linear_complexity_word(idx, 3)),
                s.linear_complexity()
            );
        }
    }

    #[test]
    fn halves() {
        let s = seq("10110010");
        assert_eq!(s.left_half().unwrap(), seq("1011"));
        assert_eq!(s.right_half().unwrap(), seq("0010"));
    }
}
