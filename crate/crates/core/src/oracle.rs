//! Independent ground truth: brute-force characteristic polynomials and
//! determinants, and structural verifiers that report a witness on failure.
//!
//! Nothing here goes through the composition formula. The characteristic
//! polynomial has two unrelated routes (trace recursion and determinant
//! interpolation) so the oracle can be checked against itself.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::combinatorics::{arrow, compositions, mu_of_set, set_of_composition, SubsetMask};
use crate::error::Result;
use crate::matrix::{
    build_entrywise, build_recursive, permute_conjugate, zeta_conjugate,
    ExactMatrix, Limits, Which,
};
use crate::permutation::{
    pairing_violation, sigma_closed_table, sigma_recursive, sigma_word_thue_morse, SigmaTable,
};
use crate::polynomial::IntPolynomial;
use crate::spectrum::{char_poly_blockform, char_poly_formula};

/// `det(tI - M)` by the Faddeev-LeVerrier trace recursion. Every division is
/// exact over the integers.
pub fn oracle_char_poly(m: &ExactMatrix, limits: &Limits) -> Result<IntPolynomial> {
    let d = m.dim();
    limits.check_oracle_dim(d)?;
    let mut coeffs = vec![BigInt::zero(); d + 1];
    coeffs[d] = BigInt::one();
    let mut acc = ExactMatrix::zeros(d);
    for k in 1..=d {
        // acc <- M * acc + c_{d-k+1} I
        let mut next = m.mul(&acc)?;
        for i in 0..d {
            let v = next.get(i, i) + &coeffs[d - k + 1];
            next.set(i, i, v);
        }
        let prod = m.mul(&next)?;
        let trace: BigInt = (0..d).map(|i| prod.get(i, i).clone()).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "trace recursion division must be exact");
        coeffs[d - k] = -q;
        acc = next;
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// `det(tI - M)` from `det(xI - M)` at `x = 0..=dim` (Bareiss) followed by
/// exact Newton interpolation.
pub fn char_poly_by_interpolation(m: &ExactMatrix, limits: &Limits) -> Result<IntPolynomial> {
    let d = m.dim();
    limits.check_oracle_dim(d)?;
    let mut diffs: Vec<BigInt> = (0..=d).map(|x| det_shifted(m, &BigInt::from(x))).collect();
    // forward differences in place: diffs[k] becomes Δ^k f(0)
    for k in 1..=d {
        for i in (k..=d).rev() {
            let prev = diffs[i - 1].clone();
            diffs[i] -= prev;
        }
    }
    // d! p(x) = Σ_k Δ^k f(0) (d!/k!) x(x-1)...(x-k+1)
    let fact = |k: usize| -> BigInt { (1..=k).fold(BigInt::one(), |a, i| a * i) };
    let d_fact = fact(d);
    let mut falling = IntPolynomial::one();
    let mut total = vec![BigInt::zero(); d + 1];
    for (k, delta) in diffs.iter().enumerate() {
        if k > 0 {
            falling = &falling * &IntPolynomial::linear(BigInt::from(k - 1));
        }
        let scale = delta * (&d_fact / fact(k));
        for (slot, c) in total.iter_mut().zip(falling.coeffs()) {
            *slot += &scale * c;
        }
    }
    let coeffs = total
        .into_iter()
        .map(|c| {
            let (q, r) = c.div_rem(&d_fact);
            debug_assert!(r.is_zero(), "interpolated coefficient must be integral");
            q
        })
        .collect();
    Ok(IntPolynomial::from_coeffs(coeffs))
}

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
pub fn oracle_det(m: &ExactMatrix) -> BigInt {
    let d = m.dim();
    if d == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.rows().map(<[BigInt]>::to_vec).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..d - 1 {
        if a[k][k].is_zero() {
            match (k + 1..d).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..d {
                let mut v = pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[d - 1][d - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `det(x I - M)`.
pub fn det_shifted(m: &ExactMatrix, x: &BigInt) -> BigInt {
    let d = m.dim();
    let shifted = ExactMatrix::from_fn(d, |r, c| {
        let v = -m.get(r, c);
        if r == c {
            v + x
        } else {
            v
        }
    });
    oracle_det(&shifted)
}

/// Evidence attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A matrix entry; indices are 1-based, sets are the row and column
    /// labels when the dimension is a power of two.
    Entry {
        row: usize,
        col: usize,
        row_set: Option<SubsetMask>,
        col_set: Option<SubsetMask>,
        found: BigInt,
        expected: String,
    },
    Other(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Entry { row, col, row_set, col_set, found, expected } => {
                write!(f, "(i={row},j={col}")?;
                if let (Some(rs), Some(cs)) = (row_set, col_set) {
                    write!(f, ",I={rs},J={cs}")?;
                }
                write!(f, ",found={found},expected={expected})")
            }
            Witness::Other(s) => f.write_str(s),
        }
    }
}

/// Result of one structural check. A failure always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationOutcome {
    pub claim: String,
    pub n: u32,
    pub witness: Option<Witness>,
}

impl VerificationOutcome {
    fn new(claim: &str, n: u32, witness: Option<Witness>) -> Self {
        Self { claim: claim.to_string(), n, witness }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    /// Appends `/A` or `/B` to the claim id.
    pub fn tagged(mut self, which: Which) -> Self {
        self.claim = format!("{}/{which}", self.claim);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "claim": self.claim,
            "n": self.n,
            "pass": self.passed(),
            "witness": self.witness.as_ref().map(ToString::to_string),
        })
    }
}

/// `CLAIM <id> n=<n> PASS` or `CLAIM <id> n=<n> FAIL witness=<...>`.
impl fmt::Display for VerificationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CLAIM {} n={} ", self.claim, self.n)?;
        match &self.witness {
            None => f.write_str("PASS"),
            Some(w) => write!(f, "FAIL witness={w}"),
        }
    }
}

fn order_of(m: &ExactMatrix) -> Option<u32> {
    m.order().ok()
}

fn entry_witness(m: &ExactMatrix, r: usize, c: usize, expected: impl ToString) -> Witness {
    let n = order_of(m);
    let label = |k: usize| n.map(|n| SubsetMask::new(n, k as u64).expect("offset below 2^n"));
    Witness::Entry {
        row: r + 1,
        col: c + 1,
        row_set: label(r),
        col_set: label(c),
        found: m.get(r, c).clone(),
        expected: expected.to_string(),
    }
}

fn first_nonzero(m: &ExactMatrix, mut bad: impl FnMut(usize, usize) -> bool) -> Option<(usize, usize)> {
    for (r, row) in m.rows().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if !v.is_zero() && bad(r, c) {
                return Some((r, c));
            }
        }
    }
    None
}

/// Zero whenever `i + j ≤ dim` (1-based), i.e. nothing strictly above the
/// anti-diagonal.
pub fn verify_anti_triangular(m: &ExactMatrix) -> VerificationOutcome {
    let d = m.dim();
    let witness = first_nonzero(m, |r, c| r + c + 2 <= d).map(|(r, c)| entry_witness(m, r, c, 0));
    VerificationOutcome::new("anti-triangular", order_of(m).unwrap_or(0), witness)
}

/// Entry `(I, Ī)` equals `π(I)` (`A`) or `π'_n(I)` (`B`) for every `I`.
pub fn verify_antidiagonal_values(m: &ExactMatrix, which: Which) -> VerificationOutcome {
    let witness = match m.order() {
        Err(e) => Some(Witness::Other(e.to_string())),
        Ok(n) => SubsetMask::all(n).find_map(|s| {
            let want = BigInt::from(which.weight(&s));
            let c = s.complement();
            (m.at(&s, &c) != &want)
                .then(|| entry_witness(m, s.bits() as usize, c.bits() as usize, want))
        }),
    };
    VerificationOutcome::new("antidiagonal", order_of(m).unwrap_or(0), witness).tagged(which)
}

/// Every nonzero entry `(I, J)` satisfies `I ↷ J`.
pub fn verify_support(m: &ExactMatrix, which: Which) -> VerificationOutcome {
    let witness = match m.order() {
        Err(e) => Some(Witness::Other(e.to_string())),
        Ok(n) => first_nonzero(m, |r, c| {
            let i = SubsetMask::new(n, r as u64).expect("row below 2^n");
            let j = SubsetMask::new(n, c as u64).expect("col below 2^n");
            !arrow(&i, &j)
        })
        .map(|(r, c)| entry_witness(m, r, c, 0)),
    };
    VerificationOutcome::new("support", order_of(m).unwrap_or(0), witness).tagged(which)
}

/// Lower triangular in 2x2 blocks: `(i, j)` with `j > i` is zero unless
/// `{i, j} = {2t+1, 2t+2}`.
pub fn verify_block_form(m: &ExactMatrix) -> VerificationOutcome {
    let witness = first_nonzero(m, |r, c| c > r && !(r % 2 == 0 && c == r + 1))
        .map(|(r, c)| entry_witness(m, r, c, 0));
    VerificationOutcome::new("block-form", order_of(m).unwrap_or(0), witness)
}

/// Diagonal block `t` is `[[0, w(I)], [w(Ī), 0]]` with `I = σ(2t - 1)`.
pub fn verify_diagonal_blocks(m: &ExactMatrix, which: Which, sigma: &SigmaTable) -> VerificationOutcome {
    let n = order_of(m).unwrap_or(0);
    let witness = if sigma.len() != m.dim() {
        Some(Witness::Other(format!(
            "dimension {} does not fit a table of {} entries",
            m.dim(),
            sigma.len()
        )))
    } else if m.dim() == 1 {
        // n = 0: a single 1x1 block holding the lone eigenvalue 1
        (!m.get(0, 0).is_one()).then(|| entry_witness(m, 0, 0, 1))
    } else if !m.dim().is_multiple_of(2) {
        Some(Witness::Other(format!(
            "dimension {} does not fit a table of {} entries",
            m.dim(),
            sigma.len()
        )))
    } else {
        sigma.values().chunks_exact(2).enumerate().find_map(|(t, pair)| {
            let r = 2 * t;
            let expected = [
                (r, r, BigInt::zero()),
                (r, r + 1, BigInt::from(which.weight(&pair[0]))),
                (r + 1, r, BigInt::from(which.weight(&pair[1]))),
                (r + 1, r + 1, BigInt::zero()),
            ];
            expected
                .into_iter()
                .find(|(i, j, want)| m.get(*i, *j) != want)
                .map(|(i, j, want)| entry_witness(m, i, j, want))
        })
    };
    VerificationOutcome::new("diagonal-blocks", n, witness).tagged(which)
}

fn first_difference(found: &ExactMatrix, expected: &ExactMatrix) -> Option<Witness> {
    if found.dim() != expected.dim() {
        return Some(Witness::Other(format!("dimension {} vs {}", found.dim(), expected.dim())));
    }
    for r in 0..found.dim() {
        for c in 0..found.dim() {
            if found.get(r, c) != expected.get(r, c) {
                return Some(entry_witness(found, r, c, expected.get(r, c)));
            }
        }
    }
    None
}

/// Options for [`run_suite`].
#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Keep only claims whose id starts with this prefix.
    pub only: Option<String>,
    /// Adds 1 to the `(∅, ∅)` entry of every conjugated `A` matrix before it
    /// is checked; a negative control that must make the suite fail.
    pub inject_fault: bool,
}

impl SuiteOptions {
    fn wants(&self, claim: &str) -> bool {
        self.only.as_deref().is_none_or(|p| claim.starts_with(p))
    }
}

/// Claim ids emitted by [`run_suite`], without the `/A` `/B` suffix.
pub const SUITE_CLAIMS: &[&str] = &[
    "entrywise",
    "anti-triangular",
    "antidiagonal",
    "support",
    "block-form",
    "diagonal-blocks",
    "charpoly-blockform",
    "charpoly-oracle",
    "determinant",
    "pairing",
    "closed-form",
    "thue-morse-words",
    "compositions",
];

/// Runs every check for `n = 0..=n_max`, streaming outcomes to `sink` as
/// they are produced.
pub fn run_suite_with(
    n_max: u32,
    limits: &Limits,
    options: &SuiteOptions,
    mut sink: impl FnMut(VerificationOutcome),
) -> Result<()> {
    limits.check_n(n_max)?;
    for n in 0..=n_max {
        for which in Which::BOTH {
            check_matrices(n, which, limits, options, &mut sink)?;
        }
        check_permutation(n, limits, options, &mut sink)?;
        if options.wants("compositions") {
            sink(check_compositions(n));
        }
    }
    Ok(())
}

/// [`run_suite_with`] collected into a vector.
pub fn run_suite(n_max: u32, limits: &Limits, options: &SuiteOptions) -> Result<Vec<VerificationOutcome>> {
    let mut out = Vec::new();
    run_suite_with(n_max, limits, options, |o| out.push(o))?;
    Ok(out)
}

fn check_matrices(
    n: u32,
    which: Which,
    limits: &Limits,
    options: &SuiteOptions,
    sink: &mut impl FnMut(VerificationOutcome),
) -> Result<()> {
    let raw = build_recursive(which, n, limits)?;

    if options.wants("entrywise") {
        let entrywise = build_entrywise(which, n, limits)?;
        let w = first_difference(&entrywise, &raw);
        sink(VerificationOutcome::new("entrywise", n, w).tagged(which));
    }

    let oracle_ok = raw.dim() <= limits.oracle_max_dim;
    if oracle_ok && options.wants("charpoly-oracle") {
        let formula = char_poly_formula(which, n, limits)?;
        let brute = oracle_char_poly(&raw, limits)?;
        let w = (formula != brute).then(|| {
            Witness::Other(format!("formula {formula} vs oracle {brute}"))
        });
        sink(VerificationOutcome::new("charpoly-oracle", n, w).tagged(which));
    }
    if oracle_ok && options.wants("determinant") {
        let det = oracle_det(&raw);
        let product: BigInt = compositions(n)
            .iter()
            .map(|mu| match which {
                Which::A => mu.pi(),
                Which::B => mu.pi_prime(),
            })
            .map(BigInt::from)
            .product();
        let w = (det.abs() != product).then(|| Witness::Other(format!("|det| = {} vs {product}", det.abs())));
        sink(VerificationOutcome::new("determinant", n, w).tagged(which));
    }
    if options.wants("charpoly-blockform") {
        let a = char_poly_blockform(which, n, limits)?;
        let b = char_poly_formula(which, n, limits)?;
        let w = (a != b).then(|| Witness::Other(format!("blocks {a} vs compositions {b}")));
        sink(VerificationOutcome::new("charpoly-blockform", n, w).tagged(which));
    }

    let structural = ["anti-triangular", "antidiagonal", "support", "block-form", "diagonal-blocks"];
    if !structural.iter().any(|c| options.wants(c)) {
        return Ok(());
    }
    let mut conj = zeta_conjugate(raw)?;
    if options.inject_fault && which == Which::A {
        let v = conj.get(0, 0) + 1;
        conj.set(0, 0, v);
    }
    if options.wants("anti-triangular") {
        sink(verify_anti_triangular(&conj).tagged(which));
    }
    if options.wants("antidiagonal") {
        sink(verify_antidiagonal_values(&conj, which));
    }
    if options.wants("support") {
        sink(verify_support(&conj, which));
    }
    if options.wants("block-form") || options.wants("diagonal-blocks") {
        let sigma = sigma_recursive(n, limits)?;
        let blocked = permute_conjugate(&conj, &sigma)?;
        drop(conj);
        if options.wants("block-form") {
            sink(verify_block_form(&blocked).tagged(which));
        }
        if options.wants("diagonal-blocks") {
            sink(verify_diagonal_blocks(&blocked, which, &sigma));
        }
    }
    Ok(())
}

fn check_permutation(
    n: u32,
    limits: &Limits,
    options: &SuiteOptions,
    sink: &mut impl FnMut(VerificationOutcome),
) -> Result<()> {
    if !["pairing", "closed-form", "thue-morse-words"].iter().any(|c| options.wants(c)) {
        return Ok(());
    }
    let sigma = sigma_recursive(n, limits)?;
    if options.wants("pairing") {
        let w = pairing_violation(&sigma).map(|v| Witness::Other(v.to_string()));
        sink(VerificationOutcome::new("pairing", n, w));
    }
    if options.wants("closed-form") {
        let closed = sigma_closed_table(n, limits)?;
        let w = sigma
            .values()
            .iter()
            .zip(closed.values())
            .position(|(a, b)| a != b)
            .map(|p| {
                Witness::Other(format!(
                    "position {}: recursive {} vs closed {}",
                    p + 1,
                    sigma.values()[p],
                    closed.values()[p]
                ))
            });
        sink(VerificationOutcome::new("closed-form", n, w));
    }
    if options.wants("thue-morse-words") {
        let mut w = None;
        for j in 1..=n {
            let table = sigma.membership_word(j)?;
            let closed = sigma_word_thue_morse(n, j, limits)?;
            if table != closed {
                w = Some(Witness::Other(format!("j={j}: table {table} vs thue-morse {closed}")));
                break;
            }
        }
        sink(VerificationOutcome::new("thue-morse-words", n, w));
    }
    Ok(())
}

fn check_compositions(n: u32) -> VerificationOutcome {
    let all = compositions(n);
    let expected_count = if n == 0 { 1 } else { 1usize << (n - 1) };
    let mut w = (all.len() != expected_count)
        .then(|| Witness::Other(format!("{} compositions, expected {expected_count}", all.len())));
    if w.is_none() && n > 0 {
        let mut seen = std::collections::HashSet::new();
        for s in SubsetMask::all(n).filter(|s| s.contains(1)) {
            let mu = mu_of_set(&s).expect("contains 1");
            let c = s.complement();
            let ok = mu.total() == n
                && mu.pi() == crate::combinatorics::pi(&s) * crate::combinatorics::pi(&c)
                && mu.pi_prime() == crate::combinatorics::pi_prime(&s) * crate::combinatorics::pi_prime(&c)
                && set_of_composition(&mu).ok() == Some(s)
                && seen.insert(mu.clone());
            if !ok {
                w = Some(Witness::Other(format!("I={s} mu={mu}")));
                break;
            }
        }
    }
    VerificationOutcome::new("compositions", n, w)
}
