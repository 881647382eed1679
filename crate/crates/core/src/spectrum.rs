//! Characteristic polynomials and eigenvalues of `A_n` and `B_n`.
//!
//! Each composition `μ` of `n ≥ 1` contributes the factor `t^2 - π_μ` to the
//! characteristic polynomial of `A_n` (and `t^2 - π'_μ` to that of `B_n`), so
//! the eigenvalues come in pairs `±√π_μ`. Radicands are kept exact; decimal
//! approximations are only produced for display.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::combinatorics::{compositions, Composition, SubsetMask};
use crate::matrix::{Limits, Which};
use crate::polynomial::IntPolynomial;
use crate::Result;

/// Default number of significant digits for the decimal approximations.
pub const DEFAULT_PRECISION: usize = 12;

fn radicand(which: Which, mu: &Composition) -> u64 {
    match which {
        Which::A => mu.pi(),
        Which::B => mu.pi_prime(),
    }
}

fn product_of_quadratics(values: impl IntoIterator<Item = u64>) -> IntPolynomial {
    let mut p = IntPolynomial::one();
    for v in values {
        p.mul_quadratic_in_place(&BigInt::from(v));
    }
    p
}

/// `∏_μ (t^2 - π_μ)` (or `π'_μ` for `B`) over all compositions of `n`; `t - 1`
/// for `n = 0`.
pub fn char_poly_formula(which: Which, n: u32, limits: &Limits) -> Result<IntPolynomial> {
    limits.check_n(n)?;
    if n == 0 {
        return Ok(IntPolynomial::linear(BigInt::one()));
    }
    Ok(product_of_quadratics(compositions(n).iter().map(|mu| radicand(which, mu))))
}

/// `∏ (t^2 - w(I) w(Ī))` over the sets `I ∋ 1`, where `w` is `π` for `A` and
/// `π'_n` for `B`: the product of the characteristic polynomials of the 2x2
/// diagonal blocks `[[0, w(I)], [w(Ī), 0]]`.
pub fn char_poly_blockform(which: Which, n: u32, limits: &Limits) -> Result<IntPolynomial> {
    limits.check_n(n)?;
    if n == 0 {
        return Ok(IntPolynomial::linear(BigInt::one()));
    }
    Ok(product_of_quadratics(
        SubsetMask::all(n)
            .filter(|s| s.contains(1))
            .map(|s| which.weight(&s) * which.weight(&s.complement())),
    ))
}

/// One composition and the eigenvalues it accounts for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenRecord {
    pub composition: Composition,
    pub radicand: u64,
    /// `true` for the pair `±√radicand`; `false` only for the lone
    /// eigenvalue `1` of the `1 x 1` matrix at `n = 0`.
    pub paired: bool,
    /// `√radicand` to the requested number of significant digits.
    pub approximation: String,
}

impl EigenRecord {
    pub fn multiplicity(&self) -> usize {
        if self.paired {
            2
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub n: u32,
    pub which: Which,
    pub records: Vec<EigenRecord>,
    pub charpoly: IntPolynomial,
}

impl SpectrumReport {
    pub fn eigenvalue_count(&self) -> usize {
        self.records.iter().map(EigenRecord::multiplicity).sum()
    }

    /// Radicands in report order, one per record.
    pub fn radicands(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.radicand).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Rec<'a> {
            composition: &'a [u32],
            radicand: String,
            paired: bool,
            approximation: &'a str,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            n: u32,
            matrix: String,
            records: Vec<Rec<'a>>,
            charpoly: Vec<String>,
        }
        let doc = Doc {
            n: self.n,
            matrix: self.which.to_string(),
            records: self
                .records
                .iter()
                .map(|r| Rec {
                    composition: r.composition.parts(),
                    radicand: r.radicand.to_string(),
                    paired: r.paired,
                    approximation: &r.approximation,
                })
                .collect(),
            charpoly: self.charpoly.coeffs().iter().map(ToString::to_string).collect(),
        };
        serde_json::to_value(doc).expect("report is always serializable")
    }
}

/// Plain text: a header line, one `composition<TAB>radicand<TAB>±approx` line
/// per record, and the ascending coefficient list.
impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} matrix={} compositions={} eigenvalues={}",
            self.n,
            self.which,
            self.records.len(),
            self.eigenvalue_count()
        )?;
        for r in &self.records {
            let sign = if r.paired { "±" } else { "" };
            writeln!(f, "{}\t{}\t{sign}{}", r.composition, r.radicand, r.approximation)?;
        }
        f.write_str("charpoly=")?;
        for (k, c) in self.charpoly.coeffs().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        writeln!(f)
    }
}

/// Full eigenvalue report for `A_n` or `B_n`, records sorted by descending
/// radicand and then by composition.
pub fn spectrum(which: Which, n: u32, precision: usize, limits: &Limits) -> Result<SpectrumReport> {
    let charpoly = char_poly_formula(which, n, limits)?;
    let records = if n == 0 {
        vec![EigenRecord {
            composition: Composition::new(Vec::new())?,
            radicand: 1,
            paired: false,
            approximation: sqrt_significant(1, precision),
        }]
    } else {
        let mut recs: Vec<EigenRecord> = compositions(n)
            .into_iter()
            .map(|mu| {
                let r = radicand(which, &mu);
                EigenRecord {
                    composition: mu,
                    radicand: r,
                    paired: true,
                    approximation: sqrt_significant(r, precision),
                }
            })
            .collect();
        recs.sort_by(|a, b| {
            b.radicand.cmp(&a.radicand).then_with(|| a.composition.parts().cmp(b.composition.parts()))
        });
        recs
    };
    Ok(SpectrumReport { n, which, records, charpoly })
}

/// `√value` rounded half-up to `digits` significant digits, computed with
/// integer square roots so every digit is exact.
pub fn sqrt_significant(value: u64, digits: usize) -> String {
    if value == 0 {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let v = BigInt::from(value);
    let int_digits = v.sqrt().to_string().len();
    let frac = digits.saturating_sub(int_digits);
    let drop = int_digits.saturating_sub(digits);
    let ten = BigInt::from(10u32);
    // floor(10^(frac+1) * sqrt(value))
    let y = (&v * num_traits::pow(BigInt::from(100u32), frac + 1)).sqrt();
    let unit = num_traits::pow(ten.clone(), drop);
    let rounded = (y + &unit * 5u32) / (&unit * &ten);
    if frac == 0 {
        return (rounded * unit).to_string();
    }
    let s = rounded.to_string();
    let split = s.len() - frac;
    format!("{}.{}", &s[..split], &s[split..])
}
