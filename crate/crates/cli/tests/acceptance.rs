//! Acceptance suite: one test per headline claim, each asserting exact
//! integer/rational equality (no tolerances) and the documented time
//! budget.  Run with `--nocapture` to see one pass line per criterion.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use kummer_lattice::covers::{cover_invariants, gamma_invariants, sing_configs};
use kummer_lattice::isometry::{extension_check, lefschetz_number, phi, theta};
use kummer_lattice::lattice::{disc_form, discriminant_group, is_isometry};
use kummer_lattice::nikulin::{
    a_prime, kummer_structure_count, l_prime, projective_model_stats, verify_nef_big, NefTarget,
};
use kummer_lattice::ns::{
    build_ns_basis, intersect, ns_disc_model, KummerContext, NsClass, RANK,
};
use kummer_lattice::pell::{is_perfect_square, neg2_in_rank2, pell_fundamental};
use kummer_lattice::poly::{
    characteristic_polynomial_int, quadratic_salem_check, IntPoly, SalemClass,
};
use kummer_lattice::report::CheckStatus;
use kummer_lattice::{Int, Rat, DEFAULT_BUDGET, DEFAULT_GROUP_CAP};

fn rat_i(x: i64) -> Rat {
    Rat::from_integer(Int::from(x))
}

fn pass(n: u32, what: &str) {
    println!("criterion {n}: pass — {what}");
}

fn class_set(classes: &[NsClass]) -> BTreeSet<Vec<Rat>> {
    classes.iter().map(|c| c.la_coords()).collect()
}

/// Intersection table: A1.A1' = 6, 10, 14, 18 and L^2 = 4, 12, 24, 40 for
/// k = 1..4, in under a second.
#[test]
fn criterion_01_intersection_tables() {
    let started = Instant::now();
    let expected_pairing = [6, 10, 14, 18];
    let expected_l2 = [4, 12, 24, 40];
    for k in 1..=4i64 {
        let ctx = KummerContext::new(k).unwrap();
        let pairing = intersect(&NsClass::node(1), &a_prime(&ctx, 1), &ctx);
        assert_eq!(pairing, rat_i(expected_pairing[(k - 1) as usize]));
        assert_eq!(ctx.l_square(), expected_l2[(k - 1) as usize]);
    }
    assert!(started.elapsed() < Duration::from_secs(1));
    pass(1, "A1.A1' = 6 10 14 18 and L^2 = 4 12 24 40 for k = 1..4");
}

/// The modified polarization L' meets no (-2)-class negatively and is
/// orthogonal to exactly the 16 disjoint classes of the swapped
/// configuration, for k = 1..6 at t = 1.
#[test]
fn criterion_02_lprime_enumeration() {
    for k in 1..=6i64 {
        let per_k = Instant::now();
        let ctx = KummerContext::new(k).unwrap();
        let basis = build_ns_basis(&ctx);
        let cert = verify_nef_big(&basis, NefTarget::Lprime, 1, DEFAULT_BUDGET).unwrap();
        assert!(cert.is_nef_certified, "k = {k}");
        assert!(cert.is_big, "k = {k}");
        assert!(cert.violators.is_empty(), "k = {k}");
        assert_eq!(cert.zero_classes.len(), 16, "k = {k}");
        assert!(cert.zero_classes_pairwise_orthogonal, "k = {k}");

        let mut expected: Vec<NsClass> = vec![a_prime(&ctx, 1)];
        expected.extend((2..=16).map(NsClass::node));
        assert_eq!(class_set(&cert.zero_classes), class_set(&expected), "k = {k}");
        assert!(per_k.elapsed() < Duration::from_secs(60), "k = {k}");
    }
    pass(
        2,
        "L' certificates for k = 1..6: no violators, exactly the 16 swapped classes contracted",
    );
}

/// The divisor D = L - kA1 is nef and big for k = 2..6 with exactly the 15
/// undisturbed nodes contracted, and its model has dimension k + 1 with
/// both image curves of degree 2k.
#[test]
fn criterion_03_contraction_model() {
    for k in 2..=6i64 {
        let per_k = Instant::now();
        let ctx = KummerContext::new(k).unwrap();
        let basis = build_ns_basis(&ctx);
        let cert = verify_nef_big(&basis, NefTarget::LminusKA, 1, DEFAULT_BUDGET).unwrap();
        assert!(cert.is_nef_certified && cert.is_big, "k = {k}");
        assert!(cert.violators.is_empty(), "k = {k}");
        let expected: Vec<NsClass> = (2..=16).map(NsClass::node).collect();
        assert_eq!(cert.zero_classes.len(), 15, "k = {k}");
        assert_eq!(class_set(&cert.zero_classes), class_set(&expected), "k = {k}");

        let stats = projective_model_stats(&ctx, 1);
        assert_eq!(stats.dim_d_target, Int::from(k + 1), "k = {k}");
        assert_eq!(stats.deg_a1_image, Int::from(2 * k), "k = {k}");
        assert_eq!(stats.deg_a1prime_image, Int::from(2 * k), "k = {k}");
        assert!(per_k.elapsed() < Duration::from_secs(60), "k = {k}");
    }
    pass(
        3,
        "D = L - kA1 certified for k = 2..6: 15 contracted nodes, model dimension k+1, degrees 2k",
    );
}

/// Lattice structure for k = 1..8: invariant factors (2,2,2,2,2k(k+1)),
/// discriminant-form value histogram equal to the rank-5 reference model,
/// and node-span discriminant (Z/2)^6.
#[test]
fn criterion_04_discriminant_structure() {
    for k in 1..=8i64 {
        let per_k = Instant::now();
        let ctx = KummerContext::new(k).unwrap();
        let basis = build_ns_basis(&ctx);

        let group = discriminant_group(basis.gram()).unwrap();
        let mut expected: Vec<Int> = vec![Int::from(2); 4];
        expected.push(Int::from(2 * k * (k + 1)));
        assert_eq!(group.invariant_factors, expected, "k = {k}");

        let ns_hist = disc_form(basis.gram())
            .unwrap()
            .histogram(DEFAULT_GROUP_CAP)
            .unwrap();
        let model_hist = disc_form(&ns_disc_model(&ctx))
            .unwrap()
            .histogram(DEFAULT_GROUP_CAP)
            .unwrap();
        assert_eq!(ns_hist, model_hist, "k = {k}");

        let (_, _, report) = kummer_lattice::ns::disc_structure_ns(&basis).unwrap();
        let node_span = report
            .checks
            .iter()
            .find(|c| c.name == "node_span_disc_factors")
            .expect("node-span check present");
        assert_eq!(node_span.status, CheckStatus::Pass, "k = {k}");
        assert_eq!(node_span.actual, "(2, 2, 2, 2, 2, 2)", "k = {k}");
        assert!(per_k.elapsed() < Duration::from_secs(30), "k = {k}");
    }
    pass(
        4,
        "k = 1..8: factors (2,2,2,2,2k(k+1)), histogram matches model, node span (Z/2)^6",
    );
}

/// Gluing for k = 1..8: the composite involution extends to a rank-22
/// even unimodular overlattice of signature (3,19); the single-node
/// involution extends with a sign flip exactly at k = 1 and never with +1.
#[test]
fn criterion_05_unimodular_gluing() {
    for k in 1..=8i64 {
        let ctx = KummerContext::new(k).unwrap();
        let basis = build_ns_basis(&ctx);

        let composite = phi(&basis, 1, 2).unwrap();
        let verdict = extension_check(&basis, &composite, 1).unwrap();
        assert!(verdict.extends, "k = {k}");
        let glued = verdict.glued.expect("glued model within cap");
        assert_eq!(glued.rank, 22, "k = {k}");
        assert_eq!(glued.det, Int::from(-1), "k = {k}");
        assert_eq!(glued.signature, (3, 19), "k = {k}");
        assert!(glued.is_even, "k = {k}");

        let single = theta(&basis, 1);
        let minus = extension_check(&basis, &single, -1).unwrap();
        assert_eq!(minus.extends, k == 1, "k = {k}");
        let plus = extension_check(&basis, &single, 1).unwrap();
        assert!(!plus.extends, "k = {k}");
    }
    pass(
        5,
        "k = 1..8: glued rank 22, |det| = 1, signature (3,19); sign-flip extension iff k = 1",
    );
}

/// Spectral data for k = 1..8: characteristic polynomial
/// (T-1)^15 (T^2 + (2-4k^2)T + 1), quadratic factor of Salem type for
/// k >= 2 and unipotent (but non-identity) at k = 1, Lefschetz number
/// 20 + 4k^2.
#[test]
fn criterion_06_spectral_data() {
    for k in 1..=8i64 {
        let ctx = KummerContext::new(k).unwrap();
        let basis = build_ns_basis(&ctx);
        let composite = phi(&basis, 1, 2).unwrap();

        let actual = characteristic_polynomial_int(&composite.matrix_v).unwrap();
        let quadratic = IntPoly::from_i64(&[1, 2 - 4 * k * k, 1]);
        let expected = IntPoly::linear(1).pow(15).mul(&quadratic);
        assert_eq!(actual, expected, "k = {k}");

        let class = quadratic_salem_check(&quadratic).unwrap();
        if k == 1 {
            assert_eq!(class, SalemClass::Unipotent, "k = {k}");
            assert!(!composite.matrix_v.is_identity(), "k = {k}");
        } else {
            assert_eq!(class, SalemClass::Salem, "k = {k}");
        }

        assert_eq!(lefschetz_number(&basis).unwrap(), Int::from(20 + 4 * k * k));
    }
    pass(
        6,
        "k = 1..8: char poly (T-1)^15(T^2+(2-4k^2)T+1), Salem for k >= 2, Lefschetz 20+4k^2",
    );
}

/// Pell arithmetic for k = 1..8: fundamental solution (2k+1, 2) with
/// minimality, the rank-2 decomposition identities up to m = 10, and the
/// rank-17 obstruction for k = 3..6 (no 2-elementary option, traces > 6).
#[test]
fn criterion_07_pell_and_obstruction() {
    for k in 1..=8i64 {
        let ctx = KummerContext::new(k).unwrap();
        let fundamental = pell_fundamental(&ctx);
        assert_eq!(fundamental.a, Int::from(2 * k + 1), "k = {k}");
        assert_eq!(fundamental.b, Int::from(2), "k = {k}");
        // b = 1 would need k(k+1) + 1 to be a perfect square; it never is,
        // so b = 2 is minimal.
        assert!(!is_perfect_square(&Int::from(k * (k + 1) + 1)), "k = {k}");

        let report = neg2_in_rank2(&ctx, 1, 10);
        assert!(report.passed(), "k = {k}: {:?}", report.failed_checks());
    }
    for k in 3..=6i64 {
        let ctx = KummerContext::new(k).unwrap();
        let report = kummer_lattice::isometry::obstruction_report(&ctx).unwrap();
        assert!(report.passed(), "k = {k}: {:?}", report.failed_checks());
        for s in (1..=15i64).step_by(2) {
            let name = format!("fixed_disc_not_two_elementary_s{s}");
            let check = report
                .checks
                .iter()
                .find(|c| c.name == name)
                .unwrap_or_else(|| panic!("missing {name}"));
            assert_eq!(check.status, CheckStatus::Pass, "k = {k}, s = {s}");
            assert!(6 + s > 6 && 8 + s > 6, "involution traces exceed 6");
        }
    }
    pass(
        7,
        "fundamental solution (2k+1, 2) minimal, decompositions to m = 10, obstruction for k = 3..6",
    );
}

/// Structure counts: 1, 2, 4 distinct Kummer structures at k = 1, 2, 3.
#[test]
fn criterion_08_structure_counts() {
    for (k, expected) in [(1i64, 1u64), (2, 2), (3, 4)] {
        let ctx = KummerContext::new(k).unwrap();
        assert_eq!(kummer_structure_count(&ctx), expected, "k = {k}");
    }
    pass(8, "kummer structure counts 1, 2, 4 at k = 1, 2, 3");
}

/// Bidouble-cover invariants for k = 1..8, reproducing the known k = 2
/// surface values.
#[test]
fn criterion_09_cover_invariants() {
    for k in 1..=8i64 {
        let ctx = KummerContext::new(k).unwrap();
        let inv = cover_invariants(&ctx);
        assert_eq!(inv.chi, k, "k = {k}");
        assert_eq!(inv.k_v_sq, 8 * k - 30, "k = {k}");
        assert_eq!(inv.p_g_v, k + 3, "k = {k}");
        assert_eq!(inv.p_g_z, k + 3, "k = {k}");
        assert_eq!(inv.k_z_sq, 8 * k, "k = {k}");
        assert_eq!(inv.q, 4, "k = {k}");
    }
    let schoen = cover_invariants(&KummerContext::new(2).unwrap());
    assert_eq!(schoen.chi, 2);
    assert_eq!(schoen.k_v_sq, -14);
    assert_eq!(schoen.p_g_v, 5);
    assert_eq!(schoen.k_z_sq, 16);
    pass(
        9,
        "chi = k, K_V^2 = 8k-30, p_g = k+3, K_Z^2 = 8k for k = 1..8; k = 2 gives (2, -14, 5, 16)",
    );
}

/// Singularity configuration lists at k = 1, 2, 3, compared as sets, in
/// under a second.
#[test]
fn criterion_10_singularity_lists() {
    let started = Instant::now();
    let as_set = |k: i64| -> BTreeSet<String> {
        sing_configs(&KummerContext::new(k).unwrap())
            .iter()
            .map(|c| c.to_string())
            .collect()
    };
    let expect = |items: &[&str]| -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    };
    assert_eq!(as_set(1), expect(&["6a1"]));
    assert_eq!(as_set(2), expect(&["10a1", "8a1+a3", "7a1+a5"]));
    assert_eq!(
        as_set(3),
        expect(&["14a1", "12a1+a3", "10a1+2a3", "11a1+a5", "10a1+a7"])
    );
    assert!(started.elapsed() < Duration::from_secs(1));
    pass(10, "singularity lists at k = 1, 2, 3 match as sets");
}

/// The local negativity ratio of the branch curve is -4 for k = 1..20.
#[test]
fn criterion_11_h_constant() {
    for k in 1..=20i64 {
        let ctx = KummerContext::new(k).unwrap();
        assert_eq!(gamma_invariants(&ctx).h_constant, -4, "k = {k}");
    }
    pass(11, "h-constant -4 for k = 1..20");
}

/// Property legs: isometry closure, label equivariance between indices 1
/// and 7, determinism under parallelism, empty margin scans, and a seeded
/// fault flipping the process exit code.
#[test]
fn criterion_12_property_suites() {
    let started = Instant::now();

    // Closure: a product of distinct node involutions is still an isometry.
    let ctx = KummerContext::new(2).unwrap();
    let basis = build_ns_basis(&ctx);
    let product = theta(&basis, 1)
        .matrix_v
        .mul(&theta(&basis, 2).matrix_v)
        .mul(&theta(&basis, 3).matrix_v);
    assert!(is_isometry(basis.gram(), &product).unwrap());

    // Label equivariance: translating labels by 0110 sends index 1 to 7
    // and intertwines the attached classes and enumerations.
    let bits = ctx.label_bits(1);
    let pi_of = |i: usize| {
        let b = ctx.label_bits(i);
        ctx.label_index(b[0], b[1] ^ 1, b[2] ^ 1, b[3])
    };
    assert_eq!(bits, [0, 0, 0, 0]);
    assert_eq!(pi_of(1), 7);
    let permute = |c: &NsClass| -> NsClass {
        let coords = c.la_coords();
        let mut out = vec![rat_i(0); RANK];
        out[0] = coords[0].clone();
        for i in 1..=16 {
            out[pi_of(i)] = coords[i].clone();
        }
        NsClass::from_la_coords(&out)
    };
    assert_eq!(
        permute(&a_prime(&ctx, 1)).la_coords(),
        a_prime(&ctx, 7).la_coords()
    );
    assert_eq!(
        permute(&l_prime(&ctx, 1)).la_coords(),
        l_prime(&ctx, 7).la_coords()
    );
    let cert1 = verify_nef_big(&basis, NefTarget::Lprime, 1, DEFAULT_BUDGET).unwrap();
    let cert7 = verify_nef_big(&basis, NefTarget::Lprime, 7, DEFAULT_BUDGET).unwrap();
    let mapped: Vec<NsClass> = cert1.zero_classes.iter().map(permute).collect();
    assert_eq!(class_set(&mapped), class_set(&cert7.zero_classes));

    // Determinism: enumeration results do not depend on the thread count.
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| verify_nef_big(&basis, NefTarget::Lprime, 1, DEFAULT_BUDGET).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(class_set(&one.zero_classes), class_set(&four.zero_classes));
    assert_eq!(one.candidates_scanned, four.candidates_scanned);

    // Margin scans: nothing sits just beyond the derived bounds, k <= 6.
    for k in 1..=6i64 {
        let ctx = KummerContext::new(k).unwrap();
        let basis = build_ns_basis(&ctx);
        for target in [NefTarget::Lprime, NefTarget::LminusKA] {
            let cert = verify_nef_big(&basis, target, 1, DEFAULT_BUDGET).unwrap();
            assert_eq!(cert.margin_candidates, 0, "k = {k}");
        }
    }

    // Falsifiability: a seeded fault flips the binary's exit code.
    let clean = Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(["verify", "--k", "2", "--suites", ""])
        .output()
        .unwrap();
    assert_eq!(clean.status.code(), Some(0));
    let faulty = Command::new(env!("CARGO_BIN_EXE_kummer"))
        .args(["verify", "--k", "2", "--suites", "", "--inject-fault"])
        .output()
        .unwrap();
    assert_eq!(faulty.status.code(), Some(1));

    assert!(started.elapsed() < Duration::from_secs(600));
    pass(
        12,
        "closure, 1<->7 equivariance, thread determinism, empty margins, fault flips exit code",
    );
}
