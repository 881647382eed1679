//! The complement-pairing permutation `σ_n : [2^n] → P([n])`.
//!
//! `σ_n` lists all subsets of `[n]` in adjacent complementary pairs, the odd
//! position of each pair holding the set that contains 1, such that whenever
//! `σ_n(i) ↷ σ_n(j)` either the two sets are complements or `j ≤ i`. This is
//! exactly what makes the permuted conjugate 2x2 block lower triangular.

use std::fmt;

use crate::combinatorics::{arrow, SubsetMask};
use crate::error::{Error, Result};
use crate::matrix::Limits;

/// `σ_n` stored by position; `values()[p]` is `σ_n(p + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaTable {
    n: u32,
    values: Vec<SubsetMask>,
}

impl SigmaTable {
    /// Wraps an arbitrary table of `2^n` subsets of `[n]`. No permutation or
    /// pairing property is checked here; see [`pairing_violation`].
    pub fn new(n: u32, values: Vec<SubsetMask>) -> Result<Self> {
        if n > SubsetMask::MAX_N {
            return Err(Error::CapExceeded { n, cap: SubsetMask::MAX_N });
        }
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::DimensionMismatch { left: expected, right: values.len() });
        }
        if let Some(bad) = values.iter().find(|v| v.ambient() != n) {
            return Err(Error::AmbientMismatch(bad.ambient(), n));
        }
        Ok(Self { n, values })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[SubsetMask] {
        &self.values
    }

    /// `σ_n(position)` for a 1-based position.
    pub fn get(&self, position: usize) -> Option<&SubsetMask> {
        position.checked_sub(1).and_then(|p| self.values.get(p))
    }

    /// 0-based matrix offsets `r_n(σ(i)) - 1`, checked to form a permutation.
    pub fn as_offsets(&self) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.values.len()];
        let mut out = Vec::with_capacity(self.values.len());
        for v in &self.values {
            let off = v.bits() as usize;
            if std::mem::replace(&mut seen[off], true) {
                return Err(Error::NotAPermutation(self.n));
            }
            out.push(off);
        }
        Ok(out)
    }

    /// Position `i` maps to `r_n(σ_n(i))`, both 1-based.
    pub fn as_permutation(&self) -> Result<Vec<u64>> {
        Ok(self.as_offsets()?.into_iter().map(|o| o as u64 + 1).collect())
    }

    /// The table of the inverse permutation.
    pub fn inverse(&self) -> Result<SigmaTable> {
        let offsets = self.as_offsets()?;
        let mut values = vec![SubsetMask::empty(self.n); self.values.len()];
        for (pos, off) in offsets.into_iter().enumerate() {
            values[off] = SubsetMask::from_bits_unchecked(self.n, pos as u64);
        }
        Ok(Self { n: self.n, values })
    }

    /// Membership word of element `j` down the table: bit `i` is set iff
    /// `j ∈ σ_n(i + 1)`.
    pub fn membership_word(&self, j: u32) -> Result<BinaryWord> {
        if j == 0 || j > self.n {
            return Err(Error::ElementOutOfRange { element: j.into(), n: self.n });
        }
        Ok(BinaryWord { bits: self.values.iter().map(|v| v.contains(j)).collect() })
    }
}

/// One line per pair: `i<TAB>σ(2i-1)<TAB>σ(2i)`. A table with a single entry
/// (`n = 0`) prints as `1<TAB>{}`.
impl fmt::Display for SigmaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pair) in self.values.chunks(2).enumerate() {
            write!(f, "{}", i + 1)?;
            for v in pair {
                write!(f, "\t{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A finite word over `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryWord {
    bits: Vec<bool>,
}

impl BinaryWord {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("not a binary word: {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The canonical `σ_n`, built chunk by chunk from the lower-order tables.
///
/// Chunk `k` (for `0 ≤ k ≤ n - 2`) fills positions `2^n - 2^{n-k} + 1 ..` with
/// the pairs `[k+1] ∪ (σ_{n-k-1}(2i) + k + 1)`, `σ_{n-k-1}(2i-1) + k + 1`;
/// the table closes with `[n]`, `∅`.
pub fn sigma_recursive(n: u32, limits: &Limits) -> Result<SigmaTable> {
    limits.check_table_n(n)?;
    if n == 0 {
        return SigmaTable::new(0, vec![SubsetMask::empty(0)]);
    }
    // tables[m] holds σ_m; index 0 is unused by the recursion
    let mut tables: Vec<Vec<SubsetMask>> = vec![vec![SubsetMask::empty(0)]];
    for m in 1..=n {
        let mut values = Vec::with_capacity(1 << m);
        for k in 0..m.saturating_sub(1) {
            let lower = &tables[(m - k - 1) as usize];
            let head = SubsetMask::prefix(m, k + 1);
            for pair in lower.chunks_exact(2) {
                values.push(head.union(&pair[1].shifted(k + 1, m)));
                values.push(pair[0].shifted(k + 1, m));
            }
        }
        values.push(SubsetMask::full(m));
        values.push(SubsetMask::empty(m));
        debug_assert_eq!(values.len(), 1 << m);
        tables.push(values);
    }
    SigmaTable::new(n, tables.pop().expect("n >= 1"))
}

/// `σ_n(r_n(I))` without recursion: `t` belongs to the image iff
/// `|({1} ∪ [n - t + 2, n]) \ I|` is odd.
pub fn sigma_closed_form(n: u32, set: &SubsetMask) -> SubsetMask {
    debug_assert_eq!(set.ambient(), n);
    let full = SubsetMask::full(n).bits();
    let outside = !set.bits() & full;
    let mut bits = 0u64;
    for t in 1..=n {
        let high = full & !((1u64 << (n - t + 1)) - 1);
        let probe = 1 | high;
        if (probe & outside).count_ones() % 2 == 1 {
            bits |= 1 << (t - 1);
        }
    }
    SubsetMask::from_bits_unchecked(n, bits)
}

/// The whole table of `σ_n` from [`sigma_closed_form`].
pub fn sigma_closed_table(n: u32, limits: &Limits) -> Result<SigmaTable> {
    limits.check_table_n(n)?;
    let values = SubsetMask::all(n).map(|s| sigma_closed_form(n, &s)).collect();
    SigmaTable::new(n, values)
}

/// `t_k`: parity of the binary digit sum of `k`.
pub fn thue_morse(k: u64) -> bool {
    k.count_ones() % 2 == 1
}

/// `w_m` of length `2^m` by the doubling rule `w_0 = 0`, `w_{m+1} = w_m w̄_m`.
pub fn thue_morse_word(m: u32) -> BinaryWord {
    let mut bits = vec![false];
    for _ in 0..m {
        let flipped: Vec<bool> = bits.iter().map(|b| !b).collect();
        bits.extend(flipped);
    }
    BinaryWord { bits }
}

/// `W_{n,j}` read off the canonical table.
pub fn sigma_word(n: u32, j: u32, limits: &Limits) -> Result<BinaryWord> {
    sigma_recursive(n, limits)?.membership_word(j)
}

/// `W_{n,j}` as Thue-Morse blocks: for `q = 0 .. 2^{j-1} - 1`, the pair
/// `t_q t̄_q` (even `j`) or `t̄_q t_q` (odd `j`) repeated `2^{n-j}` times.
pub fn sigma_word_thue_morse(n: u32, j: u32, limits: &Limits) -> Result<BinaryWord> {
    limits.check_table_n(n)?;
    if j == 0 || j > n {
        return Err(Error::ElementOutOfRange { element: j.into(), n });
    }
    let reps = 1usize << (n - j);
    let mut bits = Vec::with_capacity(1 << n);
    for q in 0..1u64 << (j - 1) {
        let t = thue_morse(q);
        let pair = if j.is_multiple_of(2) { [t, !t] } else { [!t, t] };
        for _ in 0..reps {
            bits.extend_from_slice(&pair);
        }
    }
    Ok(BinaryWord { bits })
}

/// Why a table fails the pairing-permutation requirements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairingViolation {
    NotAPermutation,
    /// `σ(2i) ≠ complement of σ(2i-1)`; carries the odd position.
    Pairing { position: usize },
    /// `1 ∉ σ(2i-1)`.
    MissingOne { position: usize },
    /// `σ(i) ↷ σ(j)` with `j > i` and the two sets not complementary.
    Order { i: usize, j: usize },
}

impl fmt::Display for PairingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotAPermutation => f.write_str("not a permutation"),
            Self::Pairing { position } => write!(f, "pairing broken at position {position}"),
            Self::MissingOne { position } => write!(f, "1 missing at position {position}"),
            Self::Order { i, j } => write!(f, "arrow from position {i} to later position {j}"),
        }
    }
}

/// First violation found by an exhaustive scan over all position pairs.
pub fn pairing_violation(sigma: &SigmaTable) -> Option<PairingViolation> {
    if sigma.as_offsets().is_err() {
        return Some(PairingViolation::NotAPermutation);
    }
    let v = &sigma.values;
    if sigma.n > 0 {
        for (k, pair) in v.chunks_exact(2).enumerate() {
            let position = 2 * k + 1;
            if pair[1] != pair[0].complement() {
                return Some(PairingViolation::Pairing { position });
            }
            if !pair[0].contains(1) {
                return Some(PairingViolation::MissingOne { position });
            }
        }
    }
    for (i, si) in v.iter().enumerate() {
        let comp = si.complement();
        for (j, sj) in v.iter().enumerate().skip(i + 1) {
            if *sj != comp && arrow(si, sj) {
                return Some(PairingViolation::Order { i: i + 1, j: j + 1 });
            }
        }
    }
    None
}

pub fn verify_pairing(sigma: &SigmaTable) -> bool {
    pairing_violation(sigma).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn set(n: u32, e: &[u32]) -> SubsetMask {
        SubsetMask::from_elements(n, e).unwrap()
    }

    fn example_table() -> SigmaTable {
        let v = [
            &[1, 3][..],
            &[2],
            &[1],
            &[2, 3],
            &[1, 2],
            &[3],
            &[1, 2, 3],
            &[],
        ];
        SigmaTable::new(3, v.iter().map(|e| set(3, e)).collect()).unwrap()
    }

    #[test]
    fn sigma_three_matches_worked_table() {
        assert_eq!(sigma_recursive(3, &lim()).unwrap(), example_table());
        assert_eq!(
            sigma_recursive(3, &lim()).unwrap().to_string(),
            "1\t{1,3}\t{2}\n2\t{1}\t{2,3}\n3\t{1,2}\t{3}\n4\t{1,2,3}\t{}\n"
        );
    }

    #[test]
    fn sigma_base_cases() {
        let s1 = sigma_recursive(1, &lim()).unwrap();
        assert_eq!(s1.values(), &[SubsetMask::full(1), SubsetMask::empty(1)]);
        let s0 = sigma_recursive(0, &lim()).unwrap();
        assert_eq!(s0.values(), &[SubsetMask::empty(0)]);
        assert!(verify_pairing(&s0));
    }

    #[test]
    fn sigma_ends() {
        for n in 1..=12 {
            let s = sigma_recursive(n, &lim()).unwrap();
            let odd: Vec<u32> = (1..=n).step_by(2).collect();
            assert_eq!(s.get(1).unwrap(), &set(n, &odd));
            assert_eq!(s.get(s.len()).unwrap(), &SubsetMask::empty(n));
            assert_eq!(s.get(s.len() - 1).unwrap(), &SubsetMask::full(n));
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(sigma_closed_form(1, &SubsetMask::empty(1)), SubsetMask::full(1));
        assert_eq!(sigma_closed_form(1, &SubsetMask::full(1)), SubsetMask::empty(1));
        assert_eq!(sigma_closed_form(3, &set(3, &[1, 3])), set(3, &[3]));
    }

    #[test]
    fn closed_form_agrees_with_recursion() {
        for n in 0..=12 {
            assert_eq!(sigma_closed_table(n, &lim()).unwrap(), sigma_recursive(n, &lim()).unwrap());
        }
    }

    #[test]
    fn pairing_holds_for_canonical_tables() {
        assert!(verify_pairing(&example_table()));
        for n in 0..=8 {
            assert_eq!(pairing_violation(&sigma_recursive(n, &lim()).unwrap()), None, "n = {n}");
        }
    }

    #[test]
    fn pairing_rejects_mutations() {
        let mut v = example_table().values().to_vec();
        v.swap(2, 4);
        let swapped = SigmaTable::new(3, v).unwrap();
        assert!(!verify_pairing(&swapped));

        // swap two whole pairs: pairing survives, ordering does not
        let mut v = example_table().values().to_vec();
        v.swap(0, 2);
        v.swap(1, 3);
        let reordered = SigmaTable::new(3, v).unwrap();
        assert!(matches!(pairing_violation(&reordered), Some(PairingViolation::Order { .. })));

        // odd and even swapped inside a pair
        let mut v = example_table().values().to_vec();
        v.swap(0, 1);
        let flipped = SigmaTable::new(3, v).unwrap();
        assert_eq!(pairing_violation(&flipped), Some(PairingViolation::MissingOne { position: 1 }));

        let e = SubsetMask::empty(1);
        let dup = SigmaTable::new(1, vec![e, e]).unwrap();
        assert_eq!(pairing_violation(&dup), Some(PairingViolation::NotAPermutation));
    }

    #[test]
    fn chunks_have_the_stated_contents() {
        for n in 2..=12u32 {
            let s = sigma_recursive(n, &lim()).unwrap();
            let total = 1usize << n;
            for k in 0..=n - 2 {
                let start = total - (total >> k);
                let len = total >> (k + 1);
                let head = SubsetMask::prefix(n, k + 1);
                let mut got: Vec<SubsetMask> = s.values()[start..start + len].to_vec();
                let mut want: Vec<SubsetMask> = SubsetMask::all(n)
                    .filter(|t| head.is_subset_of(t) && !t.contains(k + 2))
                    .flat_map(|t| [t, t.complement()])
                    .collect();
                got.sort();
                want.sort();
                assert_eq!(got, want, "n = {n}, chunk {k}");
            }
        }
    }

    #[test]
    fn permutation_form() {
        let s = sigma_recursive(3, &lim()).unwrap();
        assert_eq!(s.as_permutation().unwrap(), vec![6, 3, 2, 7, 4, 5, 8, 1]);
        let back: Vec<SubsetMask> = s
            .as_permutation()
            .unwrap()
            .into_iter()
            .map(|r| SubsetMask::from_r_index(r, 3).unwrap())
            .collect();
        assert_eq!(back, s.values());
        let inv = s.inverse().unwrap();
        let p = s.as_offsets().unwrap();
        let q = inv.as_offsets().unwrap();
        for i in 0..8 {
            assert_eq!(q[p[i]], i);
        }
    }

    #[test]
    fn thue_morse_terms() {
        let first: Vec<bool> = (0..8).map(thue_morse).collect();
        let want: Vec<bool> = [0, 1, 1, 0, 1, 0, 0, 1].iter().map(|&b| b == 1).collect();
        assert_eq!(first, want);
        for k in 0..1000u64 {
            assert_eq!(thue_morse(2 * k), thue_morse(k));
            assert_eq!(thue_morse(2 * k + 1), !thue_morse(k));
        }
    }

    #[test]
    fn thue_morse_words() {
        assert_eq!(thue_morse_word(0).to_string(), "0");
        assert_eq!(thue_morse_word(2).to_string(), "0110");
        assert_eq!(thue_morse_word(3).to_string(), "01101001");
        for m in 0..=20 {
            let w = thue_morse_word(m);
            assert_eq!(w.len(), 1 << m);
            for (k, &b) in w.bits().iter().enumerate() {
                assert_eq!(b, thue_morse(k as u64));
            }
        }
    }

    #[test]
    fn sigma_words() {
        assert_eq!(sigma_word(3, 1, &lim()).unwrap().to_string(), "10101010");
        assert_eq!(sigma_word(3, 3, &lim()).unwrap().to_string(), "10010110");
        assert_eq!(sigma_word_thue_morse(3, 1, &lim()).unwrap().to_string(), "10101010");
        assert_eq!(sigma_word_thue_morse(3, 3, &lim()).unwrap().to_string(), "10010110");
        assert!(sigma_word(3, 0, &lim()).is_err());
        assert!(sigma_word(3, 4, &lim()).is_err());
        assert!(sigma_word_thue_morse(3, 4, &lim()).is_err());
        for n in 1..=12 {
            let table = sigma_recursive(n, &lim()).unwrap();
            for j in 1..=n {
                assert_eq!(
                    table.membership_word(j).unwrap(),
                    sigma_word_thue_morse(n, j, &lim()).unwrap(),
                    "W_{{{n},{j}}}"
                );
            }
        }
    }

    #[test]
    fn binary_word_parsing() {
        assert_eq!(BinaryWord::parse("0110").unwrap(), thue_morse_word(2));
        assert!(BinaryWord::parse("012").is_err());
    }

    #[test]
    fn table_shape_is_checked() {
        assert!(SigmaTable::new(2, vec![SubsetMask::empty(2)]).is_err());
        assert!(SigmaTable::new(1, vec![SubsetMask::empty(2), SubsetMask::empty(1)]).is_err());
        let tight = Limits { max_table_n: 4, ..Limits::default() };
        assert_eq!(sigma_recursive(5, &tight), Err(Error::CapExceeded { n: 5, cap: 4 }));
    }
}
