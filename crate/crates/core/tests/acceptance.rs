//! End-to-end acceptance gate.
//!
//! Ten criteria cover the full surface: the exact quantization pipeline on
//! nilpotent algebras, the Virasoro/Fock verification suite, the symmetric
//! algebra dimension series, parabolic tower enumeration, and the CLI
//! determinism contract. Each criterion prints one `criterion N: PASS/FAIL`
//! line (visible with `cargo test -- --nocapture`) and fails its test on any
//! violation. Every numeric expectation is an independently derived oracle;
//! nothing is compared against the code under test itself.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use orbifock::fock::{
    exp_graded_dims, standard_central_term, virasoro_check, virasoro_check_with, GradedDims,
};
use orbifock::lie::{catalog, Functional, LieAlgebra};
use orbifock::orbit::{quantize_nilpotent, vergne_polarization, verify_homomorphism};
use orbifock::partitions::partitions_of;
use orbifock::rational::Rational;
use orbifock::towers::{compositions_of, towers, Composition};
use orbifock::verma::{
    act, gram_matrix, irreducible_graded_dims, kac_determinant, singular_vectors, VermaModule,
};
use orbifock::weyl::WeylOperator;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn criterion(n: u32, name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("criterion {n}: PASS - {name}"),
        Err(cause) => {
            println!("criterion {n}: FAIL - {name}");
            resume_unwind(cause);
        }
    }
}

fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// A random functional that is not identically zero (the zero functional
/// quantizes to the zero representation, which would make the homomorphism
/// check vacuous).
fn random_functional(rng: &mut ChaCha8Rng, dim: usize) -> Functional {
    loop {
        let coords: Vec<Rational> = (0..dim).map(|_| random_rational(rng)).collect();
        if coords.iter().any(|c| !c.is_zero()) {
            return Functional(coords);
        }
    }
}

fn quantize_and_verify(g: &LieAlgebra, f: &Functional) {
    let p = vergne_polarization(g, f, None).expect("nilpotent algebras always polarize");
    let rep = quantize_nilpotent(g, f, &p).expect("polarized functional quantizes");
    let report = verify_homomorphism(g, &rep.operators);
    assert!(
        report.pass,
        "commutation defect for functional {:?}: {} failing pair(s)",
        f.0,
        report.failures.len()
    );
}

#[test]
fn criterion_01_weyl_homomorphism_across_nilpotent_catalog() {
    criterion(1, "quantization is a Lie homomorphism into the Weyl algebra", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0B1F0C01);
        for name in ["heisenberg3", "heisenberg5", "heisenberg7", "filiform4"] {
            let g = catalog::by_name(name).unwrap();
            let center_dual = Functional::dual_basis(g.dim(), g.dim() - 1);
            quantize_and_verify(&g, &center_dual);
            for _ in 0..2 {
                let f = random_functional(&mut rng, g.dim());
                quantize_and_verify(&g, &f);
            }
        }
        assert!(
            start.elapsed() < Duration::from_secs(5),
            "homomorphism sweep took {:?}",
            start.elapsed()
        );
    });
}

#[test]
fn criterion_02_heisenberg_golden_representation() {
    criterion(2, "Heisenberg golden case: (X, Y, Z) -> (l*d, q, l)", || {
        let g = catalog::by_name("heisenberg3").unwrap();
        let f = Functional::dual_basis(3, 2);
        let p = vergne_polarization(&g, &f, None).unwrap();
        assert_eq!(p.describe(&g), ["Y", "Z"], "Vergne polarization is <Y, Z>");

        let rep = quantize_nilpotent(&g, &f, &p).unwrap();
        assert_eq!(rep.variables, 1);

        let mut x = WeylOperator::zero(1);
        x.add_term(1, vec![0], vec![1], Rational::one());
        let y = WeylOperator::position(1, 0);
        let z = WeylOperator::lambda_power(1, 1);
        assert_eq!(rep.operators, [x, y, z]);
    });
}

#[test]
fn criterion_03_virasoro_relations_on_verma_modules() {
    criterion(3, "Virasoro commutation relations on Verma basis vectors", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0B1F0C03);
        let random = (random_rational(&mut rng), random_rational(&mut rng));
        let pairs =
            [(rat(1, 2), rat(1, 16)), (rat(1, 2), rat(1, 2)), (rat(25, 2), rat(3, 1)), random];

        for (c, h) in pairs {
            let module = VermaModule::new(c.clone(), h.clone());
            for level in 0..=6u32 {
                for partition in partitions_of(level) {
                    let v = module.basis_vector(&partition);
                    for m in -3..=3i64 {
                        for n in -3..=3i64 {
                            let lhs =
                                act(m, &act(n, &v)).add(&act(n, &act(m, &v)).scale(&rat(-1, 1)));
                            let mut rhs =
                                act(m + n, &v).scale(&Rational::from_integer(m - n));
                            if m + n == 0 {
                                let central = &c * rat(m * (m * m - 1), 12);
                                rhs = rhs.add(&v.scale(&central));
                            }
                            assert_eq!(
                                lhs, rhs,
                                "[L_{m}, L_{n}] on {partition} at c={c}, h={h}"
                            );
                        }
                    }
                }
            }
        }
        assert!(
            start.elapsed() < Duration::from_secs(30),
            "Virasoro sweep took {:?}",
            start.elapsed()
        );
    });
}

#[test]
fn criterion_04_kac_determinant_zeros_and_gram_closed_form() {
    criterion(4, "level-2 Kac determinant zeros and Gram closed form", || {
        assert!(kac_determinant(&VermaModule::new(rat(1, 2), rat(1, 16)), 2).is_zero());
        assert!(kac_determinant(&VermaModule::new(rat(1, 2), rat(1, 2)), 2).is_zero());
        assert!(!kac_determinant(&VermaModule::new(rat(7, 1), rat(5, 1)), 2).is_zero());

        let mut rng = ChaCha8Rng::seed_from_u64(0x0B1F0C04);
        for _ in 0..5 {
            let c = random_rational(&mut rng);
            let h = random_rational(&mut rng);
            let gm = gram_matrix(&VermaModule::new(c.clone(), h.clone()), 2);
            // Hand-derived from the commutation relations:
            //   <L_-2 h | L_-2 h>     = 4h + c/2
            //   <L_-2 h | L_-1^2 h>   = 6h
            //   <L_-1^2 h | L_-1^2 h> = 4h(2h + 1)
            let four_h = rat(4, 1) * &h;
            assert_eq!(gm.matrix.get(0, 0), &four_h + &c * rat(1, 2), "c={c}, h={h}");
            assert_eq!(gm.matrix.get(0, 1), rat(6, 1) * &h, "c={c}, h={h}");
            assert_eq!(gm.matrix.get(1, 0), rat(6, 1) * &h, "c={c}, h={h}");
            assert_eq!(
                gm.matrix.get(1, 1),
                four_h * (rat(2, 1) * &h + Rational::one()),
                "c={c}, h={h}"
            );
        }
    });
}

#[test]
fn criterion_05_ising_singular_vector() {
    criterion(5, "singular vector at (c, h) = (1/2, 1/16)", || {
        let module = VermaModule::new(rat(1, 2), rat(1, 16));
        let found = singular_vectors(&module, 2);
        assert_eq!(found.len(), 1, "exactly one level-2 singular vector");
        let v = &found[0];

        let coeffs: Vec<(Vec<u32>, Rational)> =
            v.coeffs().map(|(p, c)| (p.parts().to_vec(), c.clone())).collect();
        assert_eq!(coeffs, [(vec![2], rat(1, 1)), (vec![1, 1], rat(-4, 3))]);

        for m in [1, 2, 3] {
            assert!(act(m, v).is_zero(), "L_{m} annihilates the singular vector");
        }

        let gm = gram_matrix(&module, 2);
        for r in 0..gm.partitions.len() {
            let mut pairing = Rational::zero();
            for (j, partition) in gm.partitions.iter().enumerate() {
                pairing = pairing + gm.matrix.get(r, j) * v.coefficient(partition);
            }
            assert!(pairing.is_zero(), "row {r} of the Gram matrix pairs to zero");
        }
    });
}

#[test]
fn criterion_06_irreducible_quotient_dimensions() {
    criterion(6, "irreducible graded dimensions from Gram ranks", || {
        let generic = VermaModule::new(rat(7, 1), rat(5, 1));
        assert_eq!(irreducible_graded_dims(&generic, 5), [1, 1, 2, 3, 5, 7]);

        let degenerate = VermaModule::new(rat(1, 2), Rational::zero());
        assert_eq!(irreducible_graded_dims(&degenerate, 1), [1, 0]);
    });
}

#[test]
fn criterion_07_sugawara_virasoro_check_and_tamper_detection() {
    criterion(7, "Fock-space Virasoro check at central charge 1", || {
        let start = Instant::now();
        for momentum in [Rational::zero(), rat(1, 2), Rational::one()] {
            let report = virasoro_check(3, 6, &momentum);
            assert!(report.pass, "momentum {momentum}");
            assert_eq!(report.inferred_central_charge, Rational::one(), "momentum {momentum}");
        }

        // Halving the central term must be detected.
        let tampered = virasoro_check_with(3, 6, &rat(1, 2), |m| {
            standard_central_term(m) * rat(1, 2)
        });
        assert!(!tampered.pass, "tampered cocycle goes unnoticed");
        assert!(!tampered.failures.is_empty());

        assert!(
            start.elapsed() < Duration::from_secs(60),
            "Virasoro Fock sweep took {:?}",
            start.elapsed()
        );
    });
}

/// Brute-force oracle: the number of multisets of generators with total
/// level `n`, where `dims[i]` independent generators live at level `i + 1`.
/// Counted as order-free combinations over one generator kind at a time.
fn multiset_count(kinds: &[u32], n: u32) -> u64 {
    fn go(kinds: &[u32], n: u32) -> u64 {
        match (kinds, n) {
            (_, 0) => 1,
            ([], _) => 0,
            ([first, rest @ ..], n) => {
                let mut total = 0;
                let mut used = 0;
                while used <= n {
                    total += go(rest, n - used);
                    used += first;
                }
                total
            }
        }
    }
    go(kinds, n)
}

#[test]
fn criterion_08_exponential_graded_dimensions() {
    criterion(8, "symmetric-algebra dimension series vs multiset oracle", || {
        let dims = GradedDims(vec![1, 1, 1, 1, 1]);
        let series = exp_graded_dims(&dims, 5);
        assert_eq!(series, [1, 1, 2, 3, 5, 7]);

        // One generator kind per level-i slot, repeated dims[i] times.
        let kinds: Vec<u32> = dims
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| std::iter::repeat_n(i as u32 + 1, d as usize))
            .collect();
        for (level, &dim) in series.iter().enumerate() {
            assert_eq!(dim, multiset_count(&kinds, level as u32), "level {level}");
        }

        // A second, non-uniform profile against the same oracle.
        let rich = GradedDims(vec![1, 2, 0, 3]);
        let rich_series = exp_graded_dims(&rich, 6);
        let rich_kinds: Vec<u32> = rich
            .0
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| std::iter::repeat_n(i as u32 + 1, d as usize))
            .collect();
        for (level, &dim) in rich_series.iter().enumerate() {
            assert_eq!(dim, multiset_count(&rich_kinds, level as u32), "level {level}");
        }
    });
}

#[test]
fn criterion_09_tower_counts_are_factorials() {
    criterion(9, "maximal parabolic tower counts equal (l-1)!", || {
        let start = Instant::now();
        let borel = Composition::new(vec![1, 1, 1, 1]).unwrap();
        assert_eq!(towers(&borel).len(), 6);

        let factorial = |k: usize| -> usize { (1..=k).product::<usize>().max(1) };
        for n in 1..=6u32 {
            for composition in compositions_of(n) {
                assert_eq!(
                    towers(&composition).len(),
                    factorial(composition.len() - 1),
                    "composition {composition}"
                );
            }
        }
        assert!(
            start.elapsed() < Duration::from_secs(5),
            "tower enumeration took {:?}",
            start.elapsed()
        );
    });
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let output = Command::new(env!("CARGO_BIN_EXE_orbifock"))
        .args(args)
        .output()
        .expect("CLI binary runs");
    (output.status.code().unwrap_or(-1), output.stdout)
}

#[test]
fn criterion_10_cli_determinism() {
    criterion(10, "identical CLI configs produce byte-identical output", || {
        let configs: &[&[&str]] = &[
            &["jacobi", "heisenberg3", "--format", "json"],
            &["classify", "filiform4", "--format", "json"],
            &["quantize", "heisenberg5", "--functional", "0,0,0,0,1", "--format", "json"],
            &["quantize", "heisenberg3", "--functional", "1/3,-2,5"],
            &["verma", "--c", "1/2", "--h", "1/16", "--level", "3", "--format", "json"],
            &["sugawara", "--max-mode", "2", "--level", "3", "--momentum", "1/2", "--format", "json"],
            &["expdim", "--dims", "1,1,1,1,1", "--max", "5", "--format", "json"],
            &[
                "loopbracket", "heisenberg3", "--a", "X@1", "--b", "Y@-1", "--functional",
                "0,0,1", "--quantized", "--format", "json",
            ],
            &["towers", "--composition", "1,1,1,1", "--format", "json"],
            &["towers", "--composition", "1,2,1"],
        ];
        for config in configs {
            let (code_a, out_a) = run_cli(config);
            let (code_b, out_b) = run_cli(config);
            assert_eq!(code_a, 0, "config {config:?} succeeds");
            assert_eq!(code_a, code_b, "config {config:?} exit code is stable");
            assert_eq!(out_a, out_b, "config {config:?} output is byte-identical");
            assert!(!out_a.is_empty(), "config {config:?} produces output");
        }
    });
}
