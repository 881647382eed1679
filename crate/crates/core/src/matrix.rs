//! Exact dense integer matrices indexed by subsets of `[n]`.
//!
//! Row and column `i` (1-based) of a `2^n x 2^n` matrix stand for the subset
//! `SubsetMask::from_r_index(i, n)`. Internally all accessors are 0-based, so
//! the subset with mask `bits` lives at offset `bits`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{dominates, SubsetMask};
use crate::error::{Error, Result};
use crate::permutation::{sigma_recursive, SigmaTable};

/// Selects between the two matrix families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Which {
    A,
    B,
}

impl Which {
    pub const BOTH: [Which; 2] = [Which::A, Which::B];

    /// The run weight that sits on the anti-diagonal of the conjugated
    /// matrix: `pi` for `A`, `pi_prime` for `B`.
    pub fn weight(self, set: &SubsetMask) -> u64 {
        match self {
            Which::A => crate::combinatorics::pi(set),
            Which::B => crate::combinatorics::pi_prime(set),
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::A => "A",
            Which::B => "B",
        })
    }
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Which::A),
            "B" | "b" => Ok(Which::B),
            _ => Err(Error::Parse(format!("expected A or B, got {s:?}"))),
        }
    }
}

/// Resource caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which dense `2^n x 2^n` matrices are built.
    pub max_n: u32,
    /// Largest dimension handed to the brute-force oracle.
    pub oracle_max_dim: usize,
    /// Largest `n` for `2^n`-sized tables and words.
    pub max_table_n: u32,
}

impl Limits {
    pub const DEFAULT_MAX_N: u32 = 14;
    pub const DEFAULT_ORACLE_MAX_DIM: usize = 64;
    pub const DEFAULT_MAX_TABLE_N: u32 = 24;

    pub fn check_n(&self, n: u32) -> Result<()> {
        if n > self.max_n {
            return Err(Error::CapExceeded { n, cap: self.max_n });
        }
        Ok(())
    }

    pub fn check_table_n(&self, n: u32) -> Result<()> {
        if n > self.max_table_n {
            return Err(Error::CapExceeded { n, cap: self.max_table_n });
        }
        Ok(())
    }

    pub fn check_oracle_dim(&self, dim: usize) -> Result<()> {
        if dim > self.oracle_max_dim {
            return Err(Error::OracleCapExceeded { dim, cap: self.oracle_max_dim });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_n: Self::DEFAULT_MAX_N,
            oracle_max_dim: Self::DEFAULT_ORACLE_MAX_DIM,
            max_table_n: Self::DEFAULT_MAX_TABLE_N,
        }
    }
}

/// Square matrix of big integers in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![BigInt::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { dim, entries }
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            entries.extend(row.iter().map(|&v| v.into()));
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `log2(dim)` when the dimension is a power of two.
    pub fn order(&self) -> Result<u32> {
        if self.dim.is_power_of_two() {
            Ok(self.dim.trailing_zeros())
        } else {
            Err(Error::NotPowerOfTwo(self.dim))
        }
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.dim + col] = value;
    }

    /// Entry at the row and column labelled by the given subsets.
    pub fn at(&self, row: &SubsetMask, col: &SubsetMask) -> &BigInt {
        self.get(row.bits() as usize, col.bits() as usize)
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn is_identity(&self) -> bool {
        self.rows()
            .enumerate()
            .all(|(r, row)| row.iter().enumerate().all(|(c, v)| if r == c { v.is_one() } else { v.is_zero() }))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|v| !v.is_zero()).count()
    }

    /// Classical cubic product.
    pub fn mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: rhs.dim });
        }
        let d = self.dim;
        let mut out = ExactMatrix::zeros(d);
        for i in 0..d {
            let out_row = &mut out.entries[i * d..(i + 1) * d];
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Dense matrix-vector product.
    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: x.len() });
        }
        Ok(self
            .rows()
            .map(|row| {
                let mut acc = BigInt::zero();
                for (a, v) in row.iter().zip(x) {
                    if a.is_zero() {
                        continue;
                    }
                    if a.is_one() {
                        acc += v;
                    } else if *a == BigInt::from(-1) {
                        acc -= v;
                    } else {
                        acc += a * v;
                    }
                }
                acc
            })
            .collect())
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `dim=<d>` followed by `d` lines of space-separated integers.
impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim={}", self.dim)?;
        for row in self.rows() {
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for ExactMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dim: usize = header
            .trim()
            .strip_prefix("dim=")
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        let mut entries = Vec::with_capacity(dim * dim);
        let mut rows = 0;
        for line in lines {
            let before = entries.len();
            for tok in line.split_whitespace() {
                let v: BigInt =
                    tok.parse().map_err(|_| Error::Parse(format!("bad entry {tok:?}")))?;
                entries.push(v);
            }
            if entries.len() - before != dim {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {dim}",
                    rows + 1,
                    entries.len() - before
                )));
            }
            rows += 1;
        }
        if rows != dim {
            return Err(Error::Parse(format!("expected {dim} rows, found {rows}")));
        }
        Ok(Self { dim, entries })
    }
}

fn block_matrix(
    tl: &ExactMatrix,
    tr: &ExactMatrix,
    bl: Option<&ExactMatrix>,
    br: &ExactMatrix,
    negate_br: bool,
) -> ExactMatrix {
    let h = tl.dim;
    let d = 2 * h;
    let mut entries = Vec::with_capacity(d * d);
    for r in 0..h {
        entries.extend_from_slice(tl.row(r));
        entries.extend_from_slice(tr.row(r));
    }
    for r in 0..h {
        match bl {
            Some(m) => entries.extend_from_slice(m.row(r)),
            None => entries.extend(std::iter::repeat_with(BigInt::zero).take(h)),
        }
        if negate_br {
            entries.extend(br.row(r).iter().map(|v| -v));
        } else {
            entries.extend_from_slice(br.row(r));
        }
    }
    ExactMatrix { dim: d, entries }
}

/// `A_n` and `B_n` from the block recursion.
pub fn build_pair_recursive(n: u32, limits: &Limits) -> Result<(ExactMatrix, ExactMatrix)> {
    limits.check_n(n)?;
    let mut a = ExactMatrix::identity(1);
    let mut b = ExactMatrix::identity(1);
    for _ in 0..n {
        let next_a = block_matrix(&a, &a, Some(&a), &b, true);
        let next_b = block_matrix(&a, &a, None, &b, true);
        a = next_a;
        b = next_b;
    }
    Ok((a, b))
}

/// `A_n` or `B_n` from the block recursion.
pub fn build_recursive(which: Which, n: u32, limits: &Limits) -> Result<ExactMatrix> {
    limits.check_n(n)?;
    if n == 0 {
        return Ok(ExactMatrix::identity(1));
    }
    let (a, b) = build_pair_recursive(n - 1, limits)?;
    Ok(match which {
        Which::A => block_matrix(&a, &a, Some(&a), &b, true),
        Which::B => block_matrix(&a, &a, None, &b, true),
    })
}

/// Closed-form entry of `A_n`: `(-1)^|I ∩ J|` when `I ≫ J`, else 0.
pub fn entry_a(i: &SubsetMask, j: &SubsetMask) -> i32 {
    if dominates(i, j) {
        if i.intersection(j).len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// Closed-form entry of `B_n`: as [`entry_a`], and zero when `n ∈ I \ J`.
pub fn entry_b(i: &SubsetMask, j: &SubsetMask) -> i32 {
    let n = i.ambient();
    if n > 0 && i.difference(j).contains(n) {
        0
    } else {
        entry_a(i, j)
    }
}

pub fn build_entrywise(which: Which, n: u32, limits: &Limits) -> Result<ExactMatrix> {
    limits.check_n(n)?;
    let entry = match which {
        Which::A => entry_a,
        Which::B => entry_b,
    };
    let dim = 1usize << n;
    Ok(ExactMatrix::from_fn(dim, |r, c| {
        let i = SubsetMask::from_bits_unchecked(n, r as u64);
        let j = SubsetMask::from_bits_unchecked(n, c as u64);
        BigInt::from(entry(&i, &j))
    }))
}

/// Zeta matrix of the subset lattice: `U(I, J) = 1` iff `I ⊇ J`.
pub fn build_u(n: u32, limits: &Limits) -> Result<ExactMatrix> {
    limits.check_n(n)?;
    let dim = 1usize << n;
    Ok(ExactMatrix::from_fn(dim, |r, c| {
        if c & !r == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }))
}

/// Möbius matrix: `U^{-1}(I, J) = (-1)^|I \ J|` iff `I ⊇ J`.
pub fn build_u_inverse(n: u32, limits: &Limits) -> Result<ExactMatrix> {
    limits.check_n(n)?;
    let dim = 1usize << n;
    Ok(ExactMatrix::from_fn(dim, |r, c| {
        if c & !r != 0 {
            BigInt::zero()
        } else if (r & !c).count_ones() % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    }))
}

/// `C · M · C_inv` by classical products.
pub fn conjugate(m: &ExactMatrix, c: &ExactMatrix, c_inv: &ExactMatrix) -> Result<ExactMatrix> {
    c.mul(m)?.mul(c_inv)
}

/// `U · M · U^{-1}` through subset-sum transforms, `O(n 4^n)` additions.
///
/// Left multiplication by `U` sums rows over subsets; right multiplication by
/// `U^{-1}` is the alternating superset difference along each row.
pub fn zeta_conjugate(mut m: ExactMatrix) -> Result<ExactMatrix> {
    let n = m.order()?;
    let d = m.dim;
    for bit in 0..n {
        let h = 1usize << bit;
        for block in m.entries.chunks_mut(2 * h * d) {
            let (lo, hi) = block.split_at_mut(h * d);
            for (dst, src) in hi.iter_mut().zip(lo.iter()) {
                if !src.is_zero() {
                    *dst += src;
                }
            }
        }
    }
    for row in m.entries.chunks_mut(d) {
        for bit in 0..n {
            let h = 1usize << bit;
            for block in row.chunks_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for (dst, src) in lo.iter_mut().zip(hi.iter()) {
                    if !src.is_zero() {
                        *dst -= src;
                    }
                }
            }
        }
    }
    Ok(m)
}

/// `result(i, j) = M(r(σ(i)), r(σ(j)))`, i.e. `P M P^{-1}` with
/// `P(i, j) = δ_{r(σ(i)), j}`.
pub fn permute_conjugate(m: &ExactMatrix, sigma: &SigmaTable) -> Result<ExactMatrix> {
    if sigma.len() != m.dim {
        return Err(Error::DimensionMismatch { left: m.dim, right: sigma.len() });
    }
    let perm = sigma.as_offsets()?;
    Ok(ExactMatrix::from_fn(m.dim, |r, c| m.get(perm[r], perm[c]).clone()))
}

/// `U_n M_n U_n^{-1}` for `M = A` or `B`.
pub fn conjugated(which: Which, n: u32, limits: &Limits) -> Result<ExactMatrix> {
    zeta_conjugate(build_recursive(which, n, limits)?)
}

/// The 2x2 block-triangular form `P_n U_n M_n U_n^{-1} P_n^{-1}`.
pub fn blocked(which: Which, n: u32, limits: &Limits) -> Result<ExactMatrix> {
    let conj = conjugated(which, n, limits)?;
    let sigma = sigma_recursive(n, limits)?;
    permute_conjugate(&conj, &sigma)
}

/// `A_n x` or `B_n x` without building the matrix, via
/// `A_n (x1; x2) = (A(x1 + x2); A x1 - B x2)` and
/// `B_n (x1; x2) = (A(x1 + x2); -B x2)`.
pub fn fast_matvec(which: Which, n: u32, x: &[BigInt]) -> Result<Vec<BigInt>> {
    let expected = 1usize
        .checked_shl(n)
        .filter(|_| n < usize::BITS)
        .ok_or(Error::CapExceeded { n, cap: usize::BITS - 1 })?;
    if x.len() != expected {
        return Err(Error::DimensionMismatch { left: expected, right: x.len() });
    }
    Ok(match which {
        Which::A => apply_a(x),
        Which::B => apply_b(x),
    })
}

fn apply_a(x: &[BigInt]) -> Vec<BigInt> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let (x1, x2) = x.split_at(x.len() / 2);
    let sum: Vec<BigInt> = x1.iter().zip(x2).map(|(a, b)| a + b).collect();
    let mut out = apply_a(&sum);
    let mut bottom = apply_a(x1);
    for (dst, v) in bottom.iter_mut().zip(apply_b(x2)) {
        *dst -= v;
    }
    out.append(&mut bottom);
    out
}

fn apply_b(x: &[BigInt]) -> Vec<BigInt> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let (x1, x2) = x.split_at(x.len() / 2);
    let sum: Vec<BigInt> = x1.iter().zip(x2).map(|(a, b)| a + b).collect();
    let mut out = apply_a(&sum);
    out.extend(apply_b(x2).into_iter().map(|v| -v));
    out
}
