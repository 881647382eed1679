//! Acceptance suite. Each criterion prints one `[PASS]` / `[FAIL]` line; the
//! process exits non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ar_spectra::combinatorics::{compositions, mu_of_set, pi, pi_prime, set_of_composition};
use ar_spectra::matrix::{
    build_entrywise, build_pair_recursive, build_recursive, build_u, build_u_inverse, conjugate,
    conjugated, fast_matvec, permute_conjugate, zeta_conjugate,
};
use ar_spectra::oracle::{
    det_shifted, oracle_char_poly, verify_anti_triangular, verify_antidiagonal_values,
    verify_block_form, verify_diagonal_blocks, verify_support, VerificationOutcome, Witness,
};
use ar_spectra::permutation::{
    sigma_closed_table, sigma_recursive, sigma_word_thue_morse, verify_pairing,
};
use ar_spectra::spectrum::char_poly_formula;
use ar_spectra::{ExactMatrix, Limits, SigmaTable, SubsetMask, Which};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(o: VerificationOutcome) -> Result<(), String> {
    ensure(o.passed(), || o.to_string())
}

fn fixture(name: &str) -> ExactMatrix {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap().parse().unwrap()
}

fn lim() -> Limits {
    Limits::default()
}

/// The permutation displayed next to the worked example: 1→6, 2→3, ...
fn worked_sigma() -> SigmaTable {
    let r = [6u64, 3, 2, 7, 4, 5, 8, 1];
    SigmaTable::new(3, r.iter().map(|&i| SubsetMask::from_r_index(i, 3).unwrap()).collect()).unwrap()
}

fn ac1_golden() -> Outcome {
    let a3 = build_recursive(Which::A, 3, &lim()).unwrap();
    let u = build_u(3, &lim()).unwrap();
    let ui = build_u_inverse(3, &lim()).unwrap();
    let conj = conjugate(&a3, &u, &ui).unwrap();
    ensure(conj == fixture("conjugated_a3.txt"), || format!("U A U^-1 differs:\n{conj}"))?;
    ensure(zeta_conjugate(a3).unwrap() == conj, || "transform route differs".into())?;
    let blocked = permute_conjugate(&conj, &worked_sigma()).unwrap();
    ensure(blocked == fixture("blocked_a3.txt"), || format!("P A' P^-1 differs:\n{blocked}"))?;
    ensure(sigma_recursive(3, &lim()).unwrap() == worked_sigma(), || "sigma_3 differs".into())?;
    Ok("both 8x8 displays reproduced bit-exactly".into())
}

fn ac2_formula_vs_oracle() -> Outcome {
    let mut coeffs = 0;
    for n in 1..=6 {
        let (a, b) = build_pair_recursive(n, &lim()).unwrap();
        for (which, m) in [(Which::A, &a), (Which::B, &b)] {
            let formula = char_poly_formula(which, n, &lim()).unwrap();
            let brute = oracle_char_poly(m, &lim()).unwrap();
            ensure(formula == brute, || format!("{which}_{n}: {formula} != {brute}"))?;
            ensure(formula.degree() == Some(1 << n), || format!("{which}_{n}: degree"))?;
            coeffs += formula.coeffs().len();
        }
    }
    Ok(format!("n=1..6, A and B, {coeffs} coefficients equal"))
}

fn ac3_evaluation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa3_e7a1);
    let mut checked = 0;
    for n in [7u32, 8] {
        let a = build_recursive(Which::A, n, &lim()).unwrap();
        let p = char_poly_formula(Which::A, n, &lim()).unwrap();
        for _ in 0..5 {
            let x0 = BigInt::from(rng.gen::<i32>());
            let lhs = p.eval(&x0);
            let rhs = det_shifted(&a, &x0);
            ensure(lhs == rhs, || format!("n={n}, x0={x0}: formula {lhs} vs det {rhs}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} evaluations equal"))
}

fn ac4_structural() -> Outcome {
    let mut checks = 0;
    for n in 0..=12 {
        let sigma = sigma_recursive(n, &lim()).unwrap();
        for which in Which::BOTH {
            let conj = conjugated(which, n, &lim()).unwrap();
            passed(verify_anti_triangular(&conj))?;
            passed(verify_antidiagonal_values(&conj, which))?;
            passed(verify_support(&conj, which))?;
            let blocked = permute_conjugate(&conj, &sigma).unwrap();
            drop(conj);
            passed(verify_block_form(&blocked))?;
            passed(verify_diagonal_blocks(&blocked, which, &sigma))?;
            checks += 5;
        }
    }
    Ok(format!("n=0..12, {checks} exact checks"))
}

fn ac5_permutation() -> Outcome {
    for n in 0..=14 {
        let rec = sigma_recursive(n, &lim()).unwrap();
        let closed = sigma_closed_table(n, &lim()).unwrap();
        ensure(rec == closed, || format!("closed form differs at n={n}"))?;
        for j in 1..=n {
            let table = rec.membership_word(j).unwrap();
            let tm = sigma_word_thue_morse(n, j, &lim()).unwrap();
            ensure(table == tm, || format!("W_{{{n},{j}}} differs"))?;
        }
        if n <= 10 {
            ensure(verify_pairing(&rec), || format!("ordering fails at n={n}"))?;
        }
    }
    let path = format!("{}/tests/fixtures/sigma3.txt", env!("CARGO_MANIFEST_DIR"));
    let want = std::fs::read_to_string(path).unwrap();
    let got = sigma_recursive(3, &lim()).unwrap().to_string();
    ensure(got == want, || format!("worked table differs:\n{got}"))?;
    Ok("closed form and words n<=14, ordering n<=10, worked table byte-exact".into())
}

fn ac6_entrywise() -> Outcome {
    for n in 0..=10 {
        let (a, b) = build_pair_recursive(n, &lim()).unwrap();
        ensure(build_entrywise(Which::A, n, &lim()).unwrap() == a, || format!("A_{n}"))?;
        ensure(build_entrywise(Which::B, n, &lim()).unwrap() == b, || format!("B_{n}"))?;
    }
    Ok("recursive == entrywise for n=0..10".into())
}

fn ac7_combinatorics() -> Outcome {
    for n in 1..=12u32 {
        let comps = compositions(n);
        ensure(comps.len() == 1 << (n - 1), || format!("count at n={n}"))?;
        let mut seen = std::collections::HashSet::new();
        for s in SubsetMask::all(n).filter(|s| s.contains(1)) {
            let mu = mu_of_set(&s).unwrap();
            let c = s.complement();
            ensure(mu.total() == n, || format!("{s}: sum"))?;
            ensure(mu.pi() == pi(&s) * pi(&c), || format!("{s}: pi identity"))?;
            ensure(mu.pi_prime() == pi_prime(&s) * pi_prime(&c), || format!("{s}: pi' identity"))?;
            ensure(set_of_composition(&mu).unwrap() == s, || format!("{s}: inverse"))?;
            ensure(seen.insert(mu), || format!("{s}: duplicate image"))?;
        }
        let mut listed = comps.clone();
        listed.sort();
        let mut images: Vec<_> = seen.into_iter().collect();
        images.sort();
        ensure(listed == images, || format!("image is not all compositions at n={n}"))?;
    }
    ensure(compositions(0).len() == 1, || "n=0".into())?;
    Ok("bijection and both product identities for n=1..12".into())
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<BigInt> {
    (0..dim)
        .map(|_| {
            let hi = BigInt::from(rng.gen::<i64>());
            (hi << 64u32) + BigInt::from(rng.gen::<u64>())
        })
        .collect()
}

fn best_of(reps: usize, mut f: impl FnMut()) -> Duration {
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn ac8_fast_matvec() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfa57);
    let mut speedup = 0.0;
    for n in 0..=12u32 {
        let dim = 1usize << n;
        for which in Which::BOTH {
            let dense = build_recursive(which, n, &lim()).unwrap();
            for _ in 0..100 {
                let x = random_vector(&mut rng, dim);
                let fast = fast_matvec(which, n, &x).unwrap();
                ensure(fast == dense.mul_vec(&x).unwrap(), || format!("{which}_{n} mismatch"))?;
            }
            if n == 12 && which == Which::A {
                let x = random_vector(&mut rng, dim);
                let t_dense = best_of(3, || {
                    std::hint::black_box(dense.mul_vec(&x).unwrap());
                });
                let t_fast = best_of(3, || {
                    std::hint::black_box(fast_matvec(which, n, &x).unwrap());
                });
                speedup = t_dense.as_secs_f64() / t_fast.as_secs_f64();
                ensure(speedup >= 2.0, || {
                    format!("speedup {speedup:.2} < 2 (dense {t_dense:?}, fast {t_fast:?})")
                })?;
            }
        }
    }
    Ok(format!("1300 vectors per family agree; n=12 speedup {speedup:.1}x"))
}

fn entry_at(w: &Option<Witness>) -> Option<(usize, usize)> {
    match w {
        Some(Witness::Entry { row, col, .. }) => Some((*row, *col)),
        _ => None,
    }
}

fn expect_witness(o: VerificationOutcome, at: (usize, usize)) -> Result<(), String> {
    ensure(!o.passed() && entry_at(&o.witness) == Some(at), || {
        format!("{o}: expected a witness at {at:?}")
    })
}

fn ac9_negative_controls() -> Outcome {
    let conj = conjugated(Which::A, 3, &lim()).unwrap();
    let sigma = sigma_recursive(3, &lim()).unwrap();
    let blocked = permute_conjugate(&conj, &sigma).unwrap();
    let one = BigInt::from(1);

    let mut m = conj.clone();
    m.set(0, 0, one.clone());
    expect_witness(verify_anti_triangular(&m), (1, 1))?;

    // row {1,3} (index 6), column {2} (index 3)
    let mut m = conj.clone();
    m.set(5, 2, BigInt::from(5));
    expect_witness(verify_antidiagonal_values(&m, Which::A), (6, 3))?;

    // ({1,2,3}, {1,2,3}) is below the anti-diagonal but not an arrow pair
    let mut m = conj.clone();
    m.set(7, 7, one.clone());
    passed(verify_anti_triangular(&m))?;
    expect_witness(verify_support(&m, Which::A), (8, 8))?;

    let mut m = blocked.clone();
    m.set(0, 2, one.clone());
    expect_witness(verify_block_form(&m), (1, 3))?;

    let mut m = blocked.clone();
    m.set(0, 1, BigInt::from(7));
    passed(verify_block_form(&m))?;
    expect_witness(verify_diagonal_blocks(&m, Which::A, &sigma), (1, 2))?;

    let mut values = sigma.values().to_vec();
    values.swap(2, 4);
    ensure(!verify_pairing(&SigmaTable::new(3, values).unwrap()), || "mutated table accepted".into())?;

    Ok("six verifiers reject single-entry mutations with the right witness".into())
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("AC1", "golden 8x8 fixtures", ac1_golden),
        ("AC2", "char poly formula = oracle, n<=6", ac2_formula_vs_oracle),
        ("AC3", "char poly evaluation = Bareiss det, n=7,8", ac3_evaluation),
        ("AC4", "structural suite, n<=12", ac4_structural),
        ("AC5", "permutation suite", ac5_permutation),
        ("AC6", "recursive = entrywise, n<=10", ac6_entrywise),
        ("AC7", "composition identities, n<=12", ac7_combinatorics),
        ("AC8", "fast matvec agreement and speed", ac8_fast_matvec),
        ("AC9", "negative controls", ac9_negative_controls),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (id, name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| id.eq_ignore_ascii_case(f)) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {id} {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {id} {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
