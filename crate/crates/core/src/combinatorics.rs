//! Subsets of `[n]`, their runs, the relations between them, and integer
//! compositions.
//!
//! A subset `I` of `[n] = {1, ..., n}` is stored as an `n`-bit mask with
//! element `i` at bit `i - 1`. Elements in the public API are 1-based.

use std::fmt;

use crate::error::{Error, Result};

/// A subset of `[n]` as a characteristic bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    n: u32,
    bits: u64,
}

impl SubsetMask {
    /// Largest ambient size representable by a single `u64` mask.
    pub const MAX_N: u32 = 63;

    pub fn new(n: u32, bits: u64) -> Result<Self> {
        if n > Self::MAX_N {
            return Err(Error::CapExceeded { n, cap: Self::MAX_N });
        }
        if bits & !universe(n) != 0 {
            let element = 64 - u64::from(bits.leading_zeros());
            return Err(Error::ElementOutOfRange { element, n });
        }
        Ok(Self { n, bits })
    }

    pub(crate) const fn from_bits_unchecked(n: u32, bits: u64) -> Self {
        Self { n, bits }
    }

    pub fn empty(n: u32) -> Self {
        assert!(n <= Self::MAX_N);
        Self { n, bits: 0 }
    }

    /// The whole of `[n]`.
    pub fn full(n: u32) -> Self {
        assert!(n <= Self::MAX_N);
        Self { n, bits: universe(n) }
    }

    /// The interval `[1, k]` inside `[n]`.
    pub fn prefix(n: u32, k: u32) -> Self {
        assert!(k <= n && n <= Self::MAX_N);
        Self { n, bits: universe(k) }
    }

    pub fn from_elements(n: u32, elements: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e.into(), n });
            }
            bits |= 1 << (e - 1);
        }
        Self::new(n, bits)
    }

    /// The subset at 1-based position `index` in binary order, the inverse of
    /// [`SubsetMask::r_index`].
    pub fn from_r_index(index: u64, n: u32) -> Result<Self> {
        if n > Self::MAX_N {
            return Err(Error::CapExceeded { n, cap: Self::MAX_N });
        }
        let max = 1u64 << n;
        if index == 0 || index > max {
            return Err(Error::IndexOutOfRange { index, max });
        }
        Ok(Self { n, bits: index - 1 })
    }

    /// Parses a set literal such as `{1,4,5}` or `{}`.
    pub fn parse(s: &str, n: u32) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("not a set literal: {s:?}")))?;
        let mut elements = Vec::new();
        if !inner.trim().is_empty() {
            for tok in inner.split(',') {
                let e: u32 = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad element {tok:?} in {s:?}")))?;
                elements.push(e);
            }
        }
        Self::from_elements(n, &elements)
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// `1 + sum of 2^(i-1) over i in I`; ranges over `[1, 2^n]`.
    pub fn r_index(&self) -> u64 {
        self.bits + 1
    }

    pub fn contains(&self, element: u32) -> bool {
        element >= 1 && element <= self.n && self.bits >> (element - 1) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn complement(&self) -> Self {
        Self { n: self.n, bits: !self.bits & universe(self.n) }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self { n: self.n, bits: self.bits & other.bits }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self { n: self.n, bits: self.bits | other.bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self { n: self.n, bits: self.bits & !other.bits }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// `I + k = {i + k : i in I}`, re-embedded in `[new_n]`.
    pub(crate) fn shifted(&self, k: u32, new_n: u32) -> Self {
        debug_assert!(self.n + k <= new_n && new_n <= Self::MAX_N);
        Self { n: new_n, bits: self.bits << k }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=self.n).filter(move |&e| self.contains(e))
    }

    pub fn runs(&self) -> Vec<Run> {
        runs(self)
    }

    /// Bits at the minimum of each run.
    fn run_starts(&self) -> u64 {
        self.bits & !(self.bits << 1)
    }

    /// Every subset of `[n]` in binary order.
    pub fn all(n: u32) -> impl Iterator<Item = SubsetMask> {
        assert!(n <= Self::MAX_N);
        (0..=universe(n)).map(move |bits| SubsetMask { n, bits })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}⊆[{}]", self.n)
    }
}

const fn universe(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A maximal interval `[lo, hi]` contained in a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub lo: u32,
    pub hi: u32,
}

impl Run {
    pub fn len(&self) -> u32 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The runs of `set` in ascending order.
pub fn runs(set: &SubsetMask) -> Vec<Run> {
    let mut out = Vec::new();
    let mut bits = set.bits;
    let mut offset = 0u32;
    while bits != 0 {
        let skip = bits.trailing_zeros();
        bits >>= skip;
        offset += skip;
        let len = bits.trailing_ones();
        out.push(Run { lo: offset + 1, hi: offset + len });
        bits = if len >= 64 { 0 } else { bits >> len };
        offset += len;
    }
    out
}

/// `I ≫ J`: every run of `I ∩ J` is a prefix of a run of `I`.
///
/// A run of `I ∩ J` always sits inside some run of `I`, so only its minimum
/// matters: the element just below it must not be in `I`.
pub fn dominates(i: &SubsetMask, j: &SubsetMask) -> bool {
    let common = i.bits & j.bits;
    let starts = common & !(common << 1);
    starts & (i.bits << 1) == 0
}

/// Product of `(run length + 1)` over the runs of `set`.
pub fn pi(set: &SubsetMask) -> u64 {
    runs(set).iter().map(|r| u64::from(r.len()) + 1).product()
}

/// As [`pi`], but skipping the run that contains the top element `n`.
pub fn pi_prime(set: &SubsetMask) -> u64 {
    let n = set.ambient();
    runs(set)
        .iter()
        .filter(|r| r.hi != n)
        .map(|r| u64::from(r.len()) + 1)
        .product()
}

/// `E ⪯ I`: `E ⊆ I`, `E` holds no run minimum of `I` and no two consecutive
/// elements.
pub fn admissible(e: &SubsetMask, i: &SubsetMask) -> bool {
    e.is_subset_of(i) && e.bits & i.run_starts() == 0 && e.bits & (e.bits >> 1) == 0
}

/// `I ↷ J`: `J = Ī ∪ E` for some `E ⪯ I`.
pub fn arrow(i: &SubsetMask, j: &SubsetMask) -> bool {
    i.complement().is_subset_of(j) && admissible(&j.intersection(i), i)
}

/// The sets `J` with `I ↷ J`, in binary order.
pub fn arrow_targets(i: &SubsetMask) -> Vec<SubsetMask> {
    let base = i.complement();
    // candidates for E: non-minimal elements of I
    let free = i.bits & !i.run_starts();
    let mut out = Vec::new();
    let mut sub = 0u64;
    loop {
        if sub & (sub >> 1) == 0 {
            out.push(SubsetMask { n: i.n, bits: base.bits | sub });
        }
        if sub == free {
            break;
        }
        sub = (sub.wrapping_sub(free)) & free;
    }
    out.sort();
    out
}

/// An ordered sequence of positive parts. The composition of `0` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("composition parts must be positive: {parts:?}")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `∏ (μ_i + 1)` over all parts.
    pub fn pi(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p) + 1).product()
    }

    /// `∏ (μ_i + 1)` over all parts but the last.
    pub fn pi_prime(&self) -> u64 {
        match self.parts.split_last() {
            Some((_, init)) => init.iter().map(|&p| u64::from(p) + 1).product(),
            None => 1,
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// All compositions of `n`, ordered as the images under [`mu_of_set`] of the
/// sets containing 1, taken in binary order.
pub fn compositions(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition { parts: Vec::new() }];
    }
    assert!(n <= SubsetMask::MAX_N);
    (0..1u64 << (n - 1))
        .map(|half| {
            let set = SubsetMask { n, bits: half << 1 | 1 };
            mu_of_set(&set).expect("set contains 1")
        })
        .collect()
}

/// Interleaves the run lengths of `I` and of its complement, starting with the
/// first run of `I`. Requires `1 ∈ I`.
pub fn mu_of_set(set: &SubsetMask) -> Result<Composition> {
    if !set.contains(1) {
        return Err(Error::MissingOne(set.to_string()));
    }
    let mut parts = Vec::new();
    let mut pos = 0u32;
    let mut inside = true;
    while pos < set.n {
        let rest = set.bits >> pos;
        let len = if inside { rest.trailing_ones() } else { rest.trailing_zeros() };
        let len = len.min(set.n - pos);
        parts.push(len);
        pos += len;
        inside = !inside;
    }
    Ok(Composition { parts })
}

/// Inverse of [`mu_of_set`].
pub fn set_of_composition(mu: &Composition) -> Result<SubsetMask> {
    let n = mu.total();
    if n > SubsetMask::MAX_N {
        return Err(Error::CapExceeded { n, cap: SubsetMask::MAX_N });
    }
    let mut bits = 0u64;
    let mut pos = 0u32;
    for (k, &p) in mu.parts.iter().enumerate() {
        if k % 2 == 0 {
            bits |= universe(p) << pos;
        }
        pos += p;
    }
    Ok(SubsetMask { n, bits })
}
