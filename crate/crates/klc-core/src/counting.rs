//! Exact evaluation of the closed-form counting functions for the number of
//! `2^n`-periodic binary sequences with a given k-error linear complexity,
//! plus the classifier that maps a target complexity value onto its
//! structural category.
//!
//! Every count is an unbounded integer (the `2^(L-1)` factors overflow 64
//! bits from `n = 7` on). Fractional coefficients inside the four-error
//! sieve brackets are applied as exact rational scalings with a runtime
//! divisibility check; a non-exact division signals a transcription defect
//! and surfaces as [`Error::Inconsistency`], never as a rounded value.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigUint, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::kerror::Parity;
use crate::seq::MAX_EXPONENT;

fn ensure_exponent(n: u32) -> Result<()> {
    if n > MAX_EXPONENT {
        return Err(Error::InvalidArgument(format!(
            "exponent {n} exceeds {MAX_EXPONENT}"
        )));
    }
    Ok(())
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << (e as usize)
}

/// Exact binomial coefficient; zero when `r > x`.
fn binom_u(x: u64, r: u64) -> BigInt {
    if r > x {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..r {
        acc = acc * big(x - t) / big(t + 1);
    }
    acc
}

/// `C(2^e, r)`.
fn binom2(e: u32, r: u64) -> BigInt {
    binom_u(1u64 << e, r)
}

fn exact_div(v: &BigInt, d: u64, what: &str) -> Result<BigInt> {
    let (q, r) = v.div_rem(&big(d));
    if !r.is_zero() {
        return Err(Error::Inconsistency(format!(
            "{what}: {v} is not divisible by {d}"
        )));
    }
    Ok(q)
}

/// `(num/den) * term` with an exactness check on the division.
fn scaled(term: &BigInt, num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let prod = term * num;
    let (q, r) = prod.div_rem(den);
    if !r.is_zero() {
        return Err(Error::Inconsistency(format!(
            "{what}: {prod} is not divisible by {den}"
        )));
    }
    Ok(q)
}

fn to_count(v: BigInt, what: &str) -> Result<BigUint> {
    v.to_biguint()
        .ok_or_else(|| Error::Inconsistency(format!("{what} evaluated to a negative count")))
}

/// Which sequences a table or report covers, split by the weight parity that
/// decides whether the plain linear complexity reaches the period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqClass {
    /// Linear complexity below the period (even period weight).
    Lt,
    /// Linear complexity equal to the period (odd period weight).
    Eq,
    /// Both classes together.
    All,
}

impl SeqClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SeqClass::Lt => "lt",
            SeqClass::Eq => "eq",
            SeqClass::All => "all",
        }
    }

    pub fn parity(&self) -> Parity {
        match self {
            SeqClass::Lt => Parity::Even,
            SeqClass::Eq => Parity::Odd,
            SeqClass::All => Parity::Any,
        }
    }
}

impl fmt::Display for SeqClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeqClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lt" => Ok(SeqClass::Lt),
            "eq" => Ok(SeqClass::Eq),
            "all" => Ok(SeqClass::All),
            _ => Err(Error::InvalidArgument(format!(
                "unknown class {s:?} (expected lt, eq, or all)"
            ))),
        }
    }
}

/// Number of sequences in a class: `2^(2^n - 1)` per parity side, `2^(2^n)`
/// for both together.
pub fn class_size(n: u32, class: SeqClass) -> BigUint {
    let bits = 1usize << n;
    match class {
        SeqClass::Lt | SeqClass::Eq => BigUint::one() << (bits - 1),
        SeqClass::All => BigUint::one() << bits,
    }
}

/// How a table entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    EmpiricalOnly,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::EmpiricalOnly => "empirical-only",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    /// Exact count, absent when no closed form covers the entry and no
    /// oracle has filled it in.
    pub count: Option<BigUint>,
    pub provenance: Provenance,
}

/// Map from complexity value to an exact count, tagged with its origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingTable {
    n: u32,
    k: u32,
    class: SeqClass,
    entries: BTreeMap<u64, TableEntry>,
}

impl CountingTable {
    pub fn new(n: u32, k: u32, class: SeqClass) -> Self {
        CountingTable {
            n,
            k,
            class,
            entries: BTreeMap::new(),
        }
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    pub fn error_bound(&self) -> u32 {
        self.k
    }

    pub fn class(&self) -> SeqClass {
        self.class
    }

    pub fn insert(&mut self, l: u64, count: Option<BigUint>, provenance: Provenance) {
        self.entries.insert(l, TableEntry { count, provenance });
    }

    pub fn get(&self, l: u64) -> Option<&TableEntry> {
        self.entries.get(&l)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &TableEntry)> {
        self.entries.iter().map(|(&l, e)| (l, e))
    }

    /// Sum of all counts; `None` while any entry is still uncounted.
    pub fn total(&self) -> Option<BigUint> {
        let mut acc = BigUint::zero();
        for entry in self.entries.values() {
            acc += entry.count.as_ref()?;
        }
        Some(acc)
    }

    /// The class size this table must total when fully counted.
    pub fn expected_total(&self) -> BigUint {
        class_size(self.n, self.class)
    }

    /// Deterministic JSON form: counts as decimal strings, keys in ascending
    /// complexity order.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{{\"n\":{},\"k\":{},\"class\":\"{}\",\"entries\":{{",
            self.n,
            self.k,
            self.class.as_str()
        ));
        let mut first = true;
        for (l, e) in self.entries() {
            if let Some(count) = &e.count {
                if !first {
                    out.push(',');
                }
                first = false;
                out.push_str(&format!("\"{l}\":\"{count}\""));
            }
        }
        out.push_str("},\"provenance\":{");
        let mut first = true;
        for (l, e) in self.entries() {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("\"{l}\":\"{}\"", e.provenance.as_str()));
        }
        out.push_str("}}");
        out
    }

    /// Deterministic CSV form with columns `L,count,provenance`; the count
    /// field is empty for uncounted entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("L,count,provenance\n");
        for (l, e) in self.entries() {
            let count = e
                .count
                .as_ref()
                .map(|c| c.to_string())
                .unwrap_or_default();
            out.push_str(&format!("{l},{count},{}\n", e.provenance.as_str()));
        }
        out
    }

    /// Human-readable table text.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "counting table  n={} k={} class={}\n{:>6}  {:>24}  provenance\n",
            self.n, self.k, self.class, "L", "count"
        );
        for (l, e) in self.entries() {
            let count = e
                .count
                .as_ref()
                .map(|c| c.to_string())
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{l:>6}  {count:>24}  {}\n",
                e.provenance.as_str()
            ));
        }
        match self.total() {
            Some(total) => out.push_str(&format!(
                "total: {total} (class size {})\n",
                self.expected_total()
            )),
            None => out.push_str(&format!(
                "total: incomplete (class size {})\n",
                self.expected_total()
            )),
        }
        out
    }
}

/// Structural category of a complexity value under the gap decomposition
/// `L = 2^n - 2^r + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LClass {
    /// `L = 0`.
    Zero,
    /// `c` in the low range `1 <= c <= 2^(r-2) - 1`.
    Plain { r: u32, c: u64 },
    /// `c = 2^(r-1) - 2^(r-m)`.
    PowGap { r: u32, m: u32 },
    /// `c = 2^(r-1) - 2^(r-m) + x` with `0 < x < 2^(r-m-1)`.
    PowGapOffset { r: u32, m: u32, x: u64 },
    /// `c = 2^(r-1) - (2^(r-m) + 2^(r-j))`.
    TwoGap { r: u32, m: u32, j: u32 },
    /// No decomposition exists (`2^n - L` is a power of two).
    NotRepresentable,
}

impl LClass {
    /// Reconstruct the complexity value this class describes at exponent
    /// `n`; `None` for [`LClass::NotRepresentable`].
    pub fn complexity(&self, n: u32) -> Option<u64> {
        let period = 1u64 << n;
        match *self {
            LClass::Zero => Some(0),
            LClass::Plain { r, c } => Some(period - (1u64 << r) + c),
            LClass::PowGap { r, m } => {
                Some(period - (1u64 << r) + (1u64 << (r - 1)) - (1u64 << (r - m)))
            }
            LClass::PowGapOffset { r, m, x } => {
                Some(period - (1u64 << r) + (1u64 << (r - 1)) - (1u64 << (r - m)) + x)
            }
            LClass::TwoGap { r, m, j } => Some(
                period - (1u64 << r) + (1u64 << (r - 1))
                    - (1u64 << (r - m))
                    - (1u64 << (r - j)),
            ),
            LClass::NotRepresentable => None,
        }
    }
}

/// Decompose a target two-error complexity value: find the unique `r` with
/// `2^n - 2^r + 1 <= L <= 2^n - 2^(r-1) - 1`, split the offset `c` on its
/// distance below `2^(r-1)`.
pub fn classify_2error(n: u32, l: u64) -> Result<LClass> {
    ensure_exponent(n)?;
    if l >= (1u64 << n) {
        return Err(Error::InvalidArgument(format!(
            "L={l} is not below the period 2^{n}"
        )));
    }
    if l == 0 {
        return Ok(LClass::Zero);
    }
    let gap = (1u64 << n) - l;
    if gap.is_power_of_two() {
        return Ok(LClass::NotRepresentable);
    }
    let r = 64 - gap.leading_zeros(); // bit length; >= 2 since gap is not a power
    let c = (1u64 << r) - gap;
    let plain_max = (1u64 << (r - 2)) - 1;
    if c <= plain_max {
        return Ok(LClass::Plain { r, c });
    }
    let cp = (1u64 << (r - 1)) - c; // in [1, 2^(r-2)]
    if cp.is_power_of_two() {
        return Ok(LClass::PowGap {
            r,
            m: r - cp.trailing_zeros(),
        });
    }
    let m = r - (64 - cp.leading_zeros());
    let x = (1u64 << (r - m)) - cp;
    Ok(LClass::PowGapOffset { r, m, x })
}

/// Category of a four-error complexity value in the lt class. Only the
/// top-level gap shapes carry closed forms: `L = 2^(n-1) - 2^(n-m)` and
/// `L = 2^(n-1) - (2^(n-m) + 2^(n-j))`.
pub fn classify_4error_lt(n: u32, l: u64) -> Result<LClass> {
    ensure_exponent(n)?;
    if l >= (1u64 << n) {
        return Err(Error::InvalidArgument(format!(
            "L={l} is not below the period 2^{n}"
        )));
    }
    if l == 0 {
        return Ok(LClass::Zero);
    }
    if n >= 1 {
        for m in 2..=n {
            if l == (1u64 << (n - 1)) - (1u64 << (n - m)) {
                return Ok(LClass::PowGap { r: n, m });
            }
        }
        for m in 3..n {
            for j in m + 1..=n {
                if l == (1u64 << (n - 1)) - (1u64 << (n - m)) - (1u64 << (n - j)) {
                    return Ok(LClass::TwoGap { r: n, m, j });
                }
            }
        }
    }
    Ok(LClass::NotRepresentable)
}

/// Number of sequences with a given plain linear complexity: `1` at `L = 0`,
/// otherwise `2^(L-1)`.
pub fn rueppel_count(n: u32, l: u64) -> Result<BigUint> {
    ensure_exponent(n)?;
    if l > (1u64 << n) {
        return Err(Error::InvalidArgument(format!(
            "L={l} exceeds the period 2^{n}"
        )));
    }
    if l == 0 {
        Ok(BigUint::one())
    } else {
        Ok(BigUint::one() << ((l - 1) as usize))
    }
}

/// Count of even-weight sequences whose two-error linear complexity equals
/// `l`, by the category of `l`.
pub fn two_error_lt(n: u32, l: u64) -> Result<BigUint> {
    ensure_exponent(n)?;
    if n < 2 {
        return Err(Error::InvalidArgument(
            "two-error counting requires n >= 2".into(),
        ));
    }
    let shift = |v: BigInt| v << ((l - 1) as usize);
    let v = match classify_2error(n, l)? {
        LClass::Zero => binom2(n, 2) + 1,
        LClass::Plain { r, c } if r > 2 && (1..=(1u64 << (r - 2)) - 1).contains(&c) => {
            shift(binom2(r, 2) + 1)
        }
        LClass::PowGap { r, m } if m > 1 && m <= r && r >= 2 => {
            shift(binom2(r, 2) + 1 - big(3) * pow2(u64::from(r + m) - 3))
        }
        LClass::PowGapOffset { r, m, x }
            if m > 1 && m + 1 < r && x > 0 && x < (1u64 << (r - m - 1)) && r > 3 =>
        {
            shift(binom2(r, 2) + 1 + pow2(u64::from(r - m)) - pow2(u64::from(r + m) - 2))
        }
        _ => BigInt::zero(),
    };
    to_count(v, "two-error lt count")
}

/// Count of even-weight sequences with three-error complexity `l`. Changing
/// an odd number of bits of an even-weight period always lands on the odd
/// class where the complexity snaps to the period, so a third change never
/// helps: the distribution is exactly the two-error one.
pub fn three_error_lt(n: u32, l: u64) -> Result<BigUint> {
    two_error_lt(n, l)
}

/// Bracket factor for the three-error eq count at `c = 2^(r-1) - 2^(r-m)`.
/// Transcribed term-for-term; the single fractional term is checked exact.
pub fn powgap_eq_factor(r: u32, m: u32) -> Result<BigInt> {
    if m < 2 || m > r {
        return Err(Error::InvalidArgument(format!(
            "power-gap factor needs 2 <= m <= r; got r={r}, m={m}"
        )));
    }
    let half_term = if r > m {
        pow2(u64::from(r - m) - 1) * binom2(m - 1, 3)
    } else {
        exact_div(&binom2(m - 1, 3), 2, "power-gap eq factor half term")?
    };
    Ok(binom2(r, 3)
        - pow2(u64::from(r - m)) * binom2(m, 3)
        - binom2(r - m, 2) * binom2(m, 2) * pow2(u64::from(m) + 1)
        + binom2(r - m, 2) * pow2(2 * u64::from(m)) * (pow2(u64::from(m) - 2) - 1)
        + half_term
        - pow2(u64::from(r) - 2) * (pow2(u64::from(m) - 2) - 1))
}

/// Bracket factor for the three-error eq count at
/// `c = 2^(r-1) - 2^(r-m) + x`. Transcribed term-for-term.
pub fn offset_eq_factor(r: u32, m: u32) -> Result<BigInt> {
    if m < 2 || m + 1 >= r {
        return Err(Error::InvalidArgument(format!(
            "offset factor needs 1 < m < r - 1; got r={r}, m={m}"
        )));
    }
    Ok(binom2(r, 3)
        - (pow2(u64::from(m) - 2) - 1) * pow2(u64::from(r) + 1)
        - (pow2(u64::from(m) - 1) - 1) * binom2(r - m, 2) * pow2(u64::from(m) + 1)
        - big(3)
            * pow2(u64::from(r - m) - 2)
            * (binom2(m, 3) - big(4) * binom2(m - 1, 2))
        - binom2(r - m, 2) * (binom2(m, 2) - pow2(u64::from(m) - 1)) * pow2(u64::from(m)))
}

/// Count of odd-weight sequences (plain complexity equal to the period)
/// whose three-error linear complexity equals `l`.
pub fn three_error_eq(n: u32, l: u64) -> Result<BigUint> {
    ensure_exponent(n)?;
    if n < 4 {
        return Err(Error::InvalidArgument(
            "three-error eq counting requires n >= 4".into(),
        ));
    }
    let shift = |v: BigInt| v << ((l - 1) as usize);
    let v = match classify_2error(n, l)? {
        LClass::Zero => binom2(n, 3) + pow2(u64::from(n)),
        LClass::Plain { r, c } if r > 2 && (1..=(1u64 << (r - 2)) - 1).contains(&c) => {
            shift(binom2(r, 3) + pow2(u64::from(r)))
        }
        LClass::PowGap { r, m } if m > 1 && m <= r && r > 3 => {
            shift(powgap_eq_factor(r, m)?)
        }
        LClass::PowGapOffset { r, m, x }
            if m > 1 && m + 1 < r && x > 0 && x < (1u64 << (r - m - 1)) && r > 3 =>
        {
            shift(offset_eq_factor(r, m)?)
        }
        _ => BigInt::zero(),
    };
    to_count(v, "three-error eq count")
}

/// Count over both parity classes with three-error complexity `l`: the
/// row-wise sum of the lt and eq counts.
pub fn three_error_all(n: u32, l: u64) -> Result<BigUint> {
    Ok(three_error_lt(n, l)? + three_error_eq(n, l)?)
}

/// The eight sieve-correction terms of the four-error power-gap bracket,
/// in bracket order, transcribed verbatim.
pub fn four_error_powgap_terms(n: u32, m: u32) -> Result<[BigInt; 8]> {
    ensure_exponent(n)?;
    if m < 2 || m > n {
        return Err(Error::InvalidArgument(format!(
            "power-gap terms need 2 <= m <= n; got n={n}, m={m}"
        )));
    }
    let m64 = u64::from(m);
    let nm = n - m; // >= 0
    let e1 = binom2(nm, 2) * binom2(m, 2) * binom2(m, 2);
    let e2 = big(4) * binom2(nm, 2) * binom2(m - 1, 2) * binom2(m - 1, 2)
        - binom2(nm, 2)
            * (pow2(2 * m64 - 2) + pow2(m64 + 1) * (binom2(m - 1, 2) - pow2(m64 - 2)));
    let e3 = binom2(nm, 3) * big(3) * binom2(m, 2) * pow2(m64) * pow2(m64);
    let e4 = binom2(nm, 3) * big(3) * binom2(m - 1, 2) * pow2(2 * m64 + 1)
        - binom2(nm, 3) * big(3) * pow2(3 * m64 - 1);
    let e5 = binom2(nm, 2) * big(2) * binom2(m, 3) * pow2(m64);
    let e6 = pow2(m64 + 2) * binom2(nm, 2) * binom2(m - 1, 3)
        - binom2(nm, 2) * (pow2(m64 - 1) - 2) * pow2(2 * m64);
    let e7 = pow2(u64::from(nm)) * binom2(m, 4);
    let e8 = pow2(u64::from(nm) + 1) * binom2(m - 1, 4)
        - (pow2(u64::from(nm) + 1) * pow2(m64 - 2) * binom_u((1u64 << (m - 1)) - 2, 2)
            - pow2(u64::from(nm) + 1) * binom2(m - 2, 2));
    Ok([e1, e2, e3, e4, e5, e6, e7, e8])
}

/// Count of even-weight sequences with four-error complexity
/// `2^(n-1) - 2^(n-m)`, by the inclusion-exclusion bracket over the
/// correction terms. Every fractional coefficient is checked exact.
pub fn four_error_powgap_lt(n: u32, m: u32) -> Result<BigUint> {
    let e = four_error_powgap_terms(n, m)?;
    let bracket = binom2(n, 4) - &e[0] + exact_div(&e[1], 4, "power-gap term 2")?
        - &e[2]
        + exact_div(&e[3], 2, "power-gap term 4")?
        - &e[4]
        + exact_div(&e[5], 4, "power-gap term 6")?
        - &e[6]
        + exact_div(&e[7], 8, "power-gap term 8")?;
    let l = (1u64 << (n - 1)) - (1u64 << (n - m));
    to_count(bracket << ((l - 1) as usize), "four-error power-gap count")
}

/// The fixed sieve-correction terms of the four-error two-gap bracket,
/// keyed by their slot number in the bracket.
#[derive(Debug, Clone)]
pub struct TwoGapTerms {
    pub t4: BigInt,
    pub t10: BigInt,
    pub t11: BigInt,
    pub t13: BigInt,
    pub t14: BigInt,
    pub t17: BigInt,
    pub t18: BigInt,
    pub t19: BigInt,
    pub t22: BigInt,
    pub t23: BigInt,
    pub t25: BigInt,
    pub t26: BigInt,
    pub t27: BigInt,
}

fn ensure_twogap_guards(n: u32, m: u32, j: u32) -> Result<()> {
    ensure_exponent(n)?;
    if n <= 3 || m <= 2 || m >= j || j > n {
        return Err(Error::InvalidArgument(format!(
            "two-gap counting needs n > 3 and 2 < m < j <= n; got n={n}, m={m}, j={j}"
        )));
    }
    Ok(())
}

/// The summation-indexed correction terms (slots 6, 7, 8) at index `k`.
pub fn four_error_twogap_k_terms(n: u32, m: u32, k: u32) -> (BigInt, BigInt, BigInt) {
    let (n64, m64, k64) = (u64::from(n), u64::from(m), u64::from(k));
    (
        pow2(n64 + k64 - 4),
        big(3) * pow2(n64 + m64 + k64 - 4),
        pow2(n64 + 2 * m64 + k64 - 6),
    )
}

pub fn four_error_twogap_terms(n: u32, m: u32, j: u32) -> Result<TwoGapTerms> {
    ensure_twogap_guards(n, m, j)?;
    let (n64, m64, j64) = (u64::from(n), u64::from(m), u64::from(j));
    let nm1 = n - m + 1;
    let t4 = pow2(n64 + 2 * m64 + j64 - 6)
        + pow2(n64 + m64 - 4)
        + pow2(n64 + j64 - 4)
        + big(3) * pow2(n64 + m64 + j64 - 4);
    let t10 = pow2(n64 - 1);
    let t11 = pow2(n64 - m64 + 1) * binom2(m - 1, 2) - pow2(n64 - 1);
    let t13 = binom2(nm1, 2) * big(2) * pow2(m64 - 2) * (pow2(m64 - 1) - 2) * pow2(m64 - 1);
    let t14 = exact_div(
        &(binom2(nm1, 2) * (pow2(m64 - 1) - 4) * (pow2(m64 - 1) - 2) * pow2(2 * m64 - 2)),
        3,
        "two-gap term 14",
    )?;
    let t17 = binom2(nm1, 2) * big(2) * pow2(m64 - 2) * (binom2(m - 1, 2) - pow2(m64 - 2));
    let bracket18 = binom2(m - 1, 2) - pow2(m64 - 2);
    let t18 = binom2(nm1, 2) * &bracket18 * &bracket18;
    let mut sum_hi = BigInt::zero();
    let mut sum_hi_m = BigInt::zero();
    for k in m + 1..=j {
        sum_hi += pow2(n64 + u64::from(k) - 4);
        sum_hi_m += pow2(n64 + m64 + u64::from(k) - 4);
    }
    let t19 = binom2(nm1, 2) * binom2(m - 1, 2) * binom2(m - 1, 2)
        - pow2(n64 + m64 - 4)
        - sum_hi
        - &t17
        - &t18;
    let t22 =
        binom2(nm1, 3) * big(3) * (binom2(m - 1, 2) - pow2(m64 - 2)) * pow2(2 * (m64 - 1));
    let t23 = binom2(nm1, 3) * big(3) * binom2(m - 1, 2) * pow2(2 * (m64 - 1))
        - big(3) * sum_hi_m
        - &t22;
    let t25 = pow2(n64 - m64 + 1) * binom2(m - 2, 2);
    let t26 = pow2(n64 - m64 + 1)
        * pow2(m64 - 2)
        * (binom_u((1u64 << (m - 1)) - 2, 2) - (pow2(m64 - 2) - 1));
    let t27 = pow2(n64 - m64 + 1) * binom2(m - 1, 4) - &t25 - &t26;
    Ok(TwoGapTerms {
        t4,
        t10,
        t11,
        t13,
        t14,
        t17,
        t18,
        t19,
        t22,
        t23,
        t25,
        t26,
        t27,
    })
}

/// Count of even-weight sequences with four-error complexity
/// `2^(n-1) - (2^(n-m) + 2^(n-j))`.
pub fn four_error_twogap_lt(n: u32, m: u32, j: u32) -> Result<BigUint> {
    let t = four_error_twogap_terms(n, m, j)?;
    let m64 = u64::from(m);
    let mut bracket = BigInt::one() + binom2(n, 2) + binom2(n, 4) - &t.t4;
    for k in m + 1..j {
        let (t6, t7, t8) = four_error_twogap_k_terms(n, m, k);
        bracket -= scaled(
            &t6,
            &(pow2(2 * m64 - 3) - 1),
            &pow2(2 * m64 - 3),
            "two-gap term 6",
        )?;
        bracket -= scaled(
            &t7,
            &(pow2(m64 - 1) - 1),
            &pow2(m64 - 1),
            "two-gap term 7",
        )?;
        bracket -= exact_div(&t8, 2, "two-gap term 8")?;
    }
    bracket -= scaled(
        &t.t10,
        &(pow2(m64 - 2) - 1),
        &pow2(m64 - 2),
        "two-gap term 10",
    )?;
    bracket -= exact_div(&t.t11, 2, "two-gap term 11")?;
    bracket -= &t.t13;
    bracket -= scaled(&t.t14, &big(3), &big(4), "two-gap term 14")?;
    bracket -= scaled(
        &t.t17,
        &(pow2(m64 - 1) - 1),
        &pow2(m64 - 1),
        "two-gap term 17",
    )?;
    bracket -= scaled(&t.t18, &big(3), &big(4), "two-gap term 18")?;
    bracket -= scaled(
        &t.t19,
        &(pow2(2 * m64 - 4) - 1),
        &pow2(2 * m64 - 4),
        "two-gap term 19",
    )?;
    bracket -= exact_div(&t.t22, 2, "two-gap term 22")?;
    bracket -= scaled(
        &t.t23,
        &(pow2(m64 - 2) - 1),
        &pow2(m64 - 2),
        "two-gap term 23",
    )?;
    bracket -= &t.t25;
    bracket -= &t.t26;
    bracket -= scaled(&t.t27, &big(7), &big(8), "two-gap term 27")?;
    let l = (1u64 << (n - 1)) - (1u64 << (n - m)) - (1u64 << (n - j));
    to_count(bracket << ((l - 1) as usize), "four-error two-gap count")
}

/// Assemble a full closed-form table over every complexity value below the
/// period. Supported combinations: `k=2` lt; `k=3` lt, eq, all; `k=4` lt
/// (partial coverage, uncovered rows tagged empirical-only) and eq (equal to
/// the three-error eq table, since an odd class never benefits from the
/// fourth change).
pub fn counting_table(n: u32, k: u32, class: SeqClass) -> Result<CountingTable> {
    ensure_exponent(n)?;
    let period = 1u64 << n;
    let mut table = CountingTable::new(n, k, class);
    match (k, class) {
        (2, SeqClass::Lt) => {
            for l in 0..period {
                table.insert(l, Some(two_error_lt(n, l)?), Provenance::ClosedForm);
            }
        }
        (2, _) => {
            return Err(Error::InvalidArgument(
                "k=2 closed forms cover only the lt class; the eq side would need \
                 one-error results outside this crate's scope"
                    .into(),
            ))
        }
        (3, SeqClass::Lt) => {
            for l in 0..period {
                table.insert(l, Some(three_error_lt(n, l)?), Provenance::ClosedForm);
            }
        }
        (3, SeqClass::Eq) => {
            for l in 0..period {
                table.insert(l, Some(three_error_eq(n, l)?), Provenance::ClosedForm);
            }
        }
        (3, SeqClass::All) => {
            for l in 0..period {
                table.insert(l, Some(three_error_all(n, l)?), Provenance::ClosedForm);
            }
        }
        (4, SeqClass::Eq) => {
            // odd k pairs with k+1 on the odd-weight class
            for l in 0..period {
                table.insert(l, Some(three_error_eq(n, l)?), Provenance::ClosedForm);
            }
        }
        (4, SeqClass::Lt) => {
            if n < 4 {
                return Err(Error::InvalidArgument(
                    "k=4 lt closed forms require n >= 4".into(),
                ));
            }
            for l in 0..period {
                match classify_4error_lt(n, l)? {
                    LClass::PowGap { m, .. } => table.insert(
                        l,
                        Some(four_error_powgap_lt(n, m)?),
                        Provenance::ClosedForm,
                    ),
                    LClass::TwoGap { m, j, .. } => table.insert(
                        l,
                        Some(four_error_twogap_lt(n, m, j)?),
                        Provenance::ClosedForm,
                    ),
                    _ => table.insert(l, None, Provenance::EmpiricalOnly),
                }
            }
        }
        (4, SeqClass::All) => {
            return Err(Error::InvalidArgument(
                "k=4 lt closed forms are partial, so no all-class table exists; \
                 request lt or eq separately"
                    .into(),
            ))
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no closed-form table for k={k}; supported: k=2 (lt), k=3 (lt/eq/all), k=4 (lt/eq)"
            )))
        }
    }
    Ok(table)
}
