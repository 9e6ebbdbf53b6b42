//! k-error linear complexity: error-pattern enumeration, brute-force
//! minimization, complexity-bounded subspaces, and the Hamming-ball
//! membership machinery used by large-scale verification.
//!
//! The brute-force [`kerror_lc`] is the normative definition of the k-error
//! linear complexity: the minimum Games-Chan value over all sequences within
//! Hamming distance `k` of the input. Every optimized route elsewhere in the
//! crate is cross-checked against it on exhaustive suites.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::seq::{linear_complexity_word, PeriodicSequence, MAX_EXPONENT};
use crate::shard;

/// Which weights an enumeration covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternMode {
    /// Only patterns of exactly the requested weight.
    ExactWeight,
    /// Patterns of every weight from zero up to the requested bound.
    AtMost,
}

/// Weight-parity restriction for set-level counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Any,
}

impl Parity {
    pub fn matches(&self, weight_is_odd: bool) -> bool {
        match self {
            Parity::Even => !weight_is_odd,
            Parity::Odd => weight_is_odd,
            Parity::Any => true,
        }
    }
}

/// A weight-bounded change vector over one period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorPattern {
    bits: PeriodicSequence,
    declared_max_weight: u64,
}

impl ErrorPattern {
    pub fn new(bits: PeriodicSequence, declared_max_weight: u64) -> Result<Self> {
        if bits.weight() > declared_max_weight {
            return Err(Error::InvalidArgument(format!(
                "pattern weight {} exceeds declared bound {declared_max_weight}",
                bits.weight()
            )));
        }
        Ok(ErrorPattern {
            bits,
            declared_max_weight,
        })
    }

    pub fn bits(&self) -> &PeriodicSequence {
        &self.bits
    }

    pub fn weight(&self) -> u64 {
        self.bits.weight()
    }

    pub fn declared_max_weight(&self) -> u64 {
        self.declared_max_weight
    }

    /// Flip this pattern's positions in `s`.
    pub fn apply(&self, s: &PeriodicSequence) -> Result<PeriodicSequence> {
        s.xor(&self.bits)
    }
}

/// Streaming enumeration of error patterns in a fixed order: weight-major,
/// then position-lexicographic within each weight. The order makes streamed
/// computations reproducible and shardable by prefix.
pub struct ErrorPatterns {
    n: u32,
    bound: u64,
    mode: PatternMode,
    weight: u64,
    positions: Vec<u64>,
    state: IterState,
}

enum IterState {
    Fresh,
    Running,
    Done,
}

/// Enumerate the patterns of exponent `n` and weight bound `k`.
pub fn error_patterns(n: u32, k: u64, mode: PatternMode) -> Result<ErrorPatterns> {
    if n > MAX_EXPONENT {
        return Err(Error::InvalidArgument(format!(
            "exponent {n} exceeds {MAX_EXPONENT}"
        )));
    }
    if k > (1u64 << n) {
        return Err(Error::InvalidArgument(format!(
            "weight bound {k} exceeds the period {}",
            1u64 << n
        )));
    }
    Ok(ErrorPatterns {
        n,
        bound: k,
        mode,
        weight: match mode {
            PatternMode::AtMost => 0,
            PatternMode::ExactWeight => k,
        },
        positions: Vec::new(),
        state: IterState::Fresh,
    })
}

impl ErrorPatterns {
    fn emit(&self) -> ErrorPattern {
        ErrorPattern {
            bits: PeriodicSequence::from_support(self.n, self.positions.iter().copied()),
            declared_max_weight: self.bound,
        }
    }

    /// Advance to the next combination of the current weight; false when the
    /// current weight is exhausted.
    fn advance_combination(&mut self) -> bool {
        let period = 1u64 << self.n;
        let w = self.positions.len();
        for t in (0..w).rev() {
            if self.positions[t] < period - (w - t) as u64 {
                self.positions[t] += 1;
                for u in t + 1..w {
                    self.positions[u] = self.positions[u - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn start_weight(&mut self) {
        self.positions = (0..self.weight).collect();
    }
}

impl Iterator for ErrorPatterns {
    type Item = ErrorPattern;

    fn next(&mut self) -> Option<ErrorPattern> {
        match self.state {
            IterState::Done => return None,
            IterState::Fresh => {
                self.state = IterState::Running;
                self.start_weight();
                return Some(self.emit());
            }
            IterState::Running => {}
        }
        if self.advance_combination() {
            return Some(self.emit());
        }
        match self.mode {
            PatternMode::ExactWeight => {
                self.state = IterState::Done;
                None
            }
            PatternMode::AtMost => {
                if self.weight >= self.bound {
                    self.state = IterState::Done;
                    return None;
                }
                self.weight += 1;
                self.start_weight();
                Some(self.emit())
            }
        }
    }
}

/// Compact single-word pattern enumeration for `n <= 6`, in the same order
/// as [`error_patterns`]. This is what the verification engines iterate.
pub fn pattern_masks(n: u32, k: u64, mode: PatternMode) -> Result<Vec<u64>> {
    if n > 6 {
        return Err(Error::InvalidArgument(
            "mask form requires a single-word period (n <= 6)".into(),
        ));
    }
    let period = 1u64 << n;
    if k > period {
        return Err(Error::InvalidArgument(format!(
            "weight bound {k} exceeds the period {period}"
        )));
    }
    let weights: Vec<u64> = match mode {
        PatternMode::ExactWeight => vec![k],
        PatternMode::AtMost => (0..=k).collect(),
    };
    let mut out = Vec::new();
    let mut positions: Vec<u64> = Vec::new();
    for w in weights {
        positions.clear();
        positions.extend(0..w);
        loop {
            let mask = positions.iter().fold(0u64, |m, &p| m | (1u64 << p));
            out.push(mask);
            // lexicographic next combination
            let len = positions.len();
            let mut advanced = false;
            for t in (0..len).rev() {
                if positions[t] < period - (len - t) as u64 {
                    positions[t] += 1;
                    for u in t + 1..len {
                        positions[u] = positions[u - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    Ok(out)
}

/// k-error linear complexity: the smallest linear complexity reachable by
/// changing at most `k` bits of one period. Brute force over all patterns;
/// this is the normative definition the optimized engines are checked
/// against.
pub fn kerror_lc(s: &PeriodicSequence, k: u64) -> Result<u64> {
    let n = s.exponent();
    if k > s.period() {
        return Err(Error::InvalidArgument(format!(
            "weight bound {k} exceeds the period {}",
            s.period()
        )));
    }
    if n <= 6 {
        let masks = pattern_masks(n, k, PatternMode::AtMost)?;
        let idx = s.to_index();
        let mut best = u64::MAX;
        for &e in &masks {
            let l = u64::from(linear_complexity_word(idx ^ e, n));
            if l < best {
                best = l;
                if best == 0 {
                    break;
                }
            }
        }
        Ok(best)
    } else {
        let mut best = s.linear_complexity();
        for pat in error_patterns(n, k, PatternMode::AtMost)? {
            let l = pat.apply(s)?.linear_complexity();
            if l < best {
                best = l;
                if best == 0 {
                    break;
                }
            }
        }
        Ok(best)
    }
}

/// The k-error linear complexity profile `[L_0, L_1, ..., L_kmax]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    n: u32,
    values: Vec<u64>,
}

impl ComplexityProfile {
    pub fn exponent(&self) -> u32 {
        self.n
    }

    /// Entry `k` is the k-error linear complexity.
    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Profile of `s` for every error bound up to `kmax` inclusive.
pub fn profile(s: &PeriodicSequence, kmax: u64) -> Result<ComplexityProfile> {
    if kmax > s.period() {
        return Err(Error::InvalidArgument(format!(
            "kmax {kmax} exceeds the period {}",
            s.period()
        )));
    }
    let mut values = Vec::with_capacity(kmax as usize + 1);
    for k in 0..=kmax {
        values.push(kerror_lc(s, k)?);
    }
    debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
    Ok(ComplexityProfile {
        n: s.exponent(),
        values,
    })
}

/// The least number of bit changes that strictly reduces the linear
/// complexity: two raised to the Hamming weight of the binary representation
/// of `2^n - L(s)`.
pub fn kurosawa_kmin(s: &PeriodicSequence) -> Result<u64> {
    let l = s.linear_complexity();
    if l == 0 {
        return Err(Error::InvalidArgument(
            "the zero sequence has no complexity to reduce".into(),
        ));
    }
    Ok(1u64 << (s.period() - l).count_ones())
}

/// The linear span of the first `c` binomial-coefficient basis sequences:
/// exactly the set of sequences with linear complexity at most `c`.
///
/// Basis sequence `t` (0-indexed) has bit `i` equal to `C(i, t) mod 2`, which
/// by Lucas reduces to `(i & t) == t`; its linear complexity is `t + 1`, and
/// the construction verifies that before returning.
#[derive(Debug, Clone)]
pub struct ComplexitySubspace {
    n: u32,
    c: u64,
    basis: Vec<PeriodicSequence>,
}

impl ComplexitySubspace {
    pub fn new(n: u32, c: u64) -> Result<Self> {
        if n > MAX_EXPONENT {
            return Err(Error::InvalidArgument(format!(
                "exponent {n} exceeds {MAX_EXPONENT}"
            )));
        }
        if c > (1u64 << n) {
            return Err(Error::InvalidArgument(format!(
                "complexity bound {c} exceeds the period {}",
                1u64 << n
            )));
        }
        let period = 1u64 << n;
        let mut basis = Vec::with_capacity(c as usize);
        for t in 0..c {
            let b = PeriodicSequence::from_bits(n, (0..period).map(|i| i & t == t));
            let lc = b.linear_complexity();
            if lc != t + 1 {
                return Err(Error::Inconsistency(format!(
                    "basis sequence {t} has linear complexity {lc}, expected {}",
                    t + 1
                )));
            }
            basis.push(b);
        }
        Ok(ComplexitySubspace { n, c, basis })
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    /// The complexity bound `c`; the span holds `2^c` sequences.
    pub fn bound(&self) -> u64 {
        self.c
    }

    pub fn basis(&self) -> &[PeriodicSequence] {
        &self.basis
    }

    /// Enumerate all `2^c` members (Gray-code order: one basis XOR per step).
    /// Requires `c <= 63`.
    pub fn members(&self) -> SubspaceMembers<'_> {
        assert!(self.c <= 63, "member enumeration requires c <= 63");
        SubspaceMembers {
            space: self,
            current: PeriodicSequence::zero(self.n),
            index: 0,
        }
    }
}

pub struct SubspaceMembers<'a> {
    space: &'a ComplexitySubspace,
    current: PeriodicSequence,
    index: u64,
}

impl Iterator for SubspaceMembers<'_> {
    type Item = PeriodicSequence;

    fn next(&mut self) -> Option<PeriodicSequence> {
        if self.index >= (1u64 << self.space.c) {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current = self.current.xor(&self.space.basis[flip]).unwrap();
        }
        self.index += 1;
        Some(self.current.clone())
    }
}

const BALL_MAX_EXPONENT: u32 = 5;

/// Bits `j` of a word whose position index has even popcount.
const EVEN_POS: u64 = {
    let mut mask = 0u64;
    let mut j = 0u32;
    while j < 64 {
        if j.count_ones() & 1 == 0 {
            mask |= 1u64 << j;
        }
        j += 1;
    }
    mask
};

/// Presence bitmap over the full `2^{2^n}` sequence space, with every
/// sequence within Hamming distance `k` of the complexity-`c` subspace
/// marked. Workers partition the subspace members; marking is an idempotent
/// set-bit, so the final bitmap is independent of the worker count.
pub(crate) fn ball_bitmap(n: u32, c: u64, k: u64, workers: usize) -> Result<Vec<AtomicU64>> {
    if n > BALL_MAX_EXPONENT {
        return Err(Error::ResourceLimit(format!(
            "the ball method needs a 2^(2^n)-bit presence bitmap; n={n} exceeds n <= {BALL_MAX_EXPONENT}"
        )));
    }
    if c > (1u64 << n) {
        return Err(Error::InvalidArgument(format!(
            "complexity bound {c} exceeds the period {}",
            1u64 << n
        )));
    }
    let patterns = pattern_masks(n, k, PatternMode::AtMost)?;
    let subspace = ComplexitySubspace::new(n, c)?;
    let basis: Vec<u64> = subspace.basis().iter().map(|b| b.to_index()).collect();

    let space_bits = 1u64 << (1u64 << n);
    let words = (space_bits.max(64) / 64) as usize;
    let bitmap: Vec<AtomicU64> = (0..words).map(|_| AtomicU64::new(0)).collect();

    let members = 1u64 << c;
    shard::map_ranges(members, workers, |range| {
        // Gray-code walk: reconstruct the member at the range start, then
        // flip one basis vector per step.
        let gray = range.start ^ (range.start >> 1);
        let mut v = 0u64;
        for (b, basis_val) in basis.iter().enumerate() {
            if gray >> b & 1 == 1 {
                v ^= basis_val;
            }
        }
        for idx in range.clone() {
            if idx != range.start {
                v ^= basis[idx.trailing_zeros() as usize];
            }
            for &e in &patterns {
                let t = v ^ e;
                bitmap[(t >> 6) as usize].fetch_or(1u64 << (t & 63), Ordering::Relaxed);
            }
        }
    });
    Ok(bitmap)
}

/// Population count of the bitmap restricted to indices of the given
/// weight parity.
pub(crate) fn count_bits_with_parity(bitmap: &[AtomicU64], parity: Parity) -> u64 {
    let mut total = 0u64;
    for (wi, word) in bitmap.iter().enumerate() {
        let w = word.load(Ordering::Relaxed);
        let selected = match parity {
            Parity::Any => w,
            Parity::Even | Parity::Odd => {
                let base_odd = (wi as u64).count_ones() & 1 == 1;
                let want_even_j = matches!(parity, Parity::Even) != base_odd;
                w & if want_even_j { EVEN_POS } else { !EVEN_POS }
            }
        };
        total += u64::from(selected.count_ones());
    }
    total
}

/// Number of sequences within Hamming distance `k` of the complexity-`c`
/// subspace whose weight parity matches, i.e. the size of
/// `{t in parity class : L_k(t) <= c}`.
pub fn ball_membership_count(n: u32, c: u64, k: u64, parity: Parity) -> Result<u64> {
    ball_membership_count_with_workers(n, c, k, parity, 1)
}

/// As [`ball_membership_count`], with the bitmap built by `workers` threads.
pub fn ball_membership_count_with_workers(
    n: u32,
    c: u64,
    k: u64,
    parity: Parity,
    workers: usize,
) -> Result<u64> {
    let bitmap = ball_bitmap(n, c, k, workers)?;
    Ok(count_bits_with_parity(&bitmap, parity))
}
