use ar_spectra::combinatorics::compositions;
use ar_spectra::matrix::{blocked, build_entrywise, build_recursive, conjugated};
use ar_spectra::oracle::{char_poly_by_interpolation, det_shifted, oracle_char_poly, oracle_det};
use ar_spectra::spectrum::{char_poly_blockform, char_poly_formula, spectrum};
use ar_spectra::{ExactMatrix, Limits, SubsetMask, Which};
use num_bigint::BigInt;

fn lim() -> Limits {
    Limits::default()
}

fn weight_product(which: Which, n: u32) -> BigInt {
    compositions(n)
        .iter()
        .map(|mu| match which {
            Which::A => mu.pi(),
            Which::B => mu.pi_prime(),
        })
        .map(BigInt::from)
        .product()
}

#[test]
fn empty_set_row_is_all_ones() {
    for n in 0..=6 {
        for which in Which::BOTH {
            let m = build_recursive(which, n, &lim()).unwrap();
            let e = SubsetMask::empty(n);
            assert!(m.row(e.r_index() as usize - 1).iter().all(|v| *v == BigInt::from(1)), "{which} n={n}");
        }
    }
}

#[test]
fn determinant_magnitude_is_weight_product() {
    for n in 0..=6 {
        for which in Which::BOTH {
            let m = build_recursive(which, n, &lim()).unwrap();
            assert_eq!(oracle_det(&m).magnitude(), weight_product(which, n).magnitude(), "{which} n={n}");
        }
    }
}

#[test]
fn squared_eigenvalues_multiply_to_det_squared() {
    for n in 1..=6 {
        let det = oracle_det(&build_recursive(Which::A, n, &lim()).unwrap());
        let report = spectrum(Which::A, n, 6, &lim()).unwrap();
        assert_eq!(report.records.len(), 1 << (n - 1));
        let product: BigInt = report.radicands().into_iter().map(BigInt::from).product();
        assert_eq!(&product * &product, &det * &det, "n={n}");
    }
}

#[test]
fn three_char_poly_routes_agree() {
    for n in 0..=5 {
        for which in Which::BOTH {
            let m = build_entrywise(which, n, &lim()).unwrap();
            let formula = char_poly_formula(which, n, &lim()).unwrap();
            assert_eq!(formula, oracle_char_poly(&m, &lim()).unwrap(), "{which} n={n}");
            assert_eq!(formula, char_poly_by_interpolation(&m, &lim()).unwrap(), "{which} n={n}");
            assert_eq!(formula, char_poly_blockform(which, n, &lim()).unwrap(), "{which} n={n}");
        }
    }
}

#[test]
fn conjugation_preserves_char_poly() {
    for n in 0..=5 {
        for which in Which::BOTH {
            let raw = oracle_char_poly(&build_recursive(which, n, &lim()).unwrap(), &lim()).unwrap();
            let conj = oracle_char_poly(&conjugated(which, n, &lim()).unwrap(), &lim()).unwrap();
            let blk = oracle_char_poly(&blocked(which, n, &lim()).unwrap(), &lim()).unwrap();
            assert_eq!(raw, conj, "{which} n={n}");
            assert_eq!(raw, blk, "{which} n={n}");
        }
    }
}

#[test]
fn formula_evaluates_to_shifted_determinant() {
    for n in 0..=6 {
        for which in Which::BOTH {
            let m = build_recursive(which, n, &lim()).unwrap();
            let poly = char_poly_formula(which, n, &lim()).unwrap();
            for x in [-7i64, -1, 0, 2, 13] {
                let x = BigInt::from(x);
                assert_eq!(poly.eval(&x), det_shifted(&m, &x), "{which} n={n} x={x}");
            }
        }
    }
}

#[test]
fn matrix_text_round_trips() {
    for which in Which::BOTH {
        let m = blocked(which, 4, &lim()).unwrap();
        let text = m.to_string();
        let back: ExactMatrix = text.parse().unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_string(), text);
    }
}

#[test]
fn oracle_refuses_large_inputs() {
    let m = build_recursive(Which::A, 7, &lim()).unwrap();
    assert!(oracle_char_poly(&m, &lim()).is_err());
    let small = Limits { max_n: 3, ..lim() };
    assert!(build_recursive(Which::A, 4, &small).is_err());
}
