//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. All comparisons are exact; runtime budgets are
//! asserted where stated.

use std::time::{Duration, Instant};

use dilworth_core::arrangement::{
    compute_rank_function, contained_subspaces, flats, prefix_vectors, sample_generic_bases,
    Arrangement, GenericBases, RankFunction,
};
use dilworth_core::combi::{box_points, members};
use dilworth_core::ideals::{
    grlex_extension, poset_betti, random_extension, verify_linear_quotients, PosetIdeal,
};
use dilworth_core::invariants::{
    associated_primes, betti_from_gamma, multiview_hilbert, multiview_span_oracle,
    powers_invariants, primary_decomposition, product_vs_intersection_dims,
    projective_dimension, verify_decomposition_degreewise, PowersMode, PrimaryComponent,
};
use dilworth_core::linalg::span_dim;
use dilworth_core::polymatroid::{
    brute_force_truncation_oracle, dilworth_truncation, enumerate_points, gamma_vector,
    generator_box,
};
use dilworth_core::resolution::{
    build_generic_complex, specialize, verify_d_squared, verify_minimality, verify_strands,
};
use dilworth_core::sampling::{linearly_general, random_arrangement};
use dilworth_core::SparsePoly;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Criterion {
    name: &'static str,
    start: Instant,
    budget: Option<Duration>,
}

impl Criterion {
    fn new(name: &'static str, budget_secs: Option<u64>) -> Self {
        Criterion {
            name,
            start: Instant::now(),
            budget: budget_secs.map(Duration::from_secs),
        }
    }

    fn pass(self) {
        let elapsed = self.start.elapsed();
        println!("{}: PASS ({:.2?})", self.name, elapsed);
        if let Some(budget) = self.budget {
            assert!(
                elapsed < budget,
                "{} exceeded its runtime budget: {:.2?} >= {:.2?}",
                self.name,
                elapsed,
                budget
            );
        }
    }
}

fn certified(arr: &Arrangement, seed: u64) -> GenericBases {
    sample_generic_bases(arr, seed).expect("certification over the rationals")
}

fn suite() -> Vec<Arrangement> {
    (0..24u64).map(random_arrangement).collect()
}

fn generator_box_ideal(arr: &Arrangement) -> (RankFunction, PosetIdeal) {
    let rk = compute_rank_function(arr);
    let dv = generator_box(&arr.dims(), &enumerate_points(&rk, true));
    let p = PosetIdeal::from_lattice_points(&arr.dims(), &dv);
    (rk, p)
}

#[test]
fn criterion_01_transversal_planes() {
    let c = Criterion::new("criterion 1 (transversal planes in Q^4)", Some(1));
    let arr = linearly_general(4, &[2, 2], 101).unwrap();
    let f = certified(&arr, 102);
    let rk = compute_rank_function(&arr);
    let trunc = dilworth_truncation(&rk);
    let star = enumerate_points(&rk, true);
    assert_eq!(gamma_vector(&star), vec![1, 2, 1]);

    let table = betti_from_gamma(&gamma_vector(&star), 2);
    assert_eq!(table.betti, vec![4, 4, 1]);
    assert_eq!(projective_dimension(&trunc).value, 2);

    let fl = flats(&rk);
    assert_eq!(associated_primes(&rk, &trunc, &fl), vec![0b01, 0b10]);
    let dec = primary_decomposition(&rk, &trunc, &fl, &PowersMode::Single).unwrap();
    assert_eq!(
        dec.components,
        vec![
            PrimaryComponent {
                subset: 0b01,
                multiplicity: 1
            },
            PrimaryComponent {
                subset: 0b10,
                multiplicity: 1
            },
        ]
    );
    let evidence = verify_decomposition_degreewise(&arr, &f, &dec, &[2, 3, 4]).unwrap();
    assert!(evidence.iter().all(|e| e.matches()));

    let dv = generator_box(&arr.dims(), &star);
    let p = PosetIdeal::from_lattice_points(&arr.dims(), &dv);
    let cx = specialize(&build_generic_complex(&p), &arr, &f).unwrap();
    assert_eq!(cx.betti_census(), vec![4, 4, 1]);
    verify_d_squared(&cx).unwrap();
    assert!(verify_minimality(&cx));
    let degrees: Vec<u32> = (2..=6).collect();
    verify_strands(&cx, &degrees, 4).unwrap();
    c.pass();
}

#[test]
fn criterion_02_equal_planes_and_their_cube() {
    let c = Criterion::new("criterion 2 (equal planes in Q^2, J and J^3)", Some(1));
    let plane = vec![
        vec![dilworth_core::linalg::rat_int(1), dilworth_core::linalg::rat_int(0)],
        vec![dilworth_core::linalg::rat_int(0), dilworth_core::linalg::rat_int(1)],
    ];
    let arr = Arrangement::new(2, vec![plane.clone(), plane]).unwrap();
    let rk = compute_rank_function(&arr);
    let trunc = dilworth_truncation(&rk);
    let star = enumerate_points(&rk, true);
    let dv = generator_box(&arr.dims(), &star);
    assert_eq!(
        dv.points(),
        &[vec![1, 1], vec![1, 2], vec![2, 1]],
        "generator box"
    );

    let table = betti_from_gamma(&gamma_vector(&star), 2);
    assert_eq!(table.betti, vec![3, 2]);
    assert_eq!(projective_dimension(&trunc).value, 1);

    let fl = flats(&rk);
    assert_eq!(associated_primes(&rk, &trunc, &fl), vec![0b11]);
    let dec = primary_decomposition(&rk, &trunc, &fl, &PowersMode::Single).unwrap();
    assert_eq!(
        dec.components,
        vec![PrimaryComponent {
            subset: 0b11,
            multiplicity: 2
        }]
    );

    let cubed = primary_decomposition(&rk, &trunc, &fl, &PowersMode::Power(3)).unwrap();
    assert_eq!(
        cubed.components,
        vec![PrimaryComponent {
            subset: 0b11,
            multiplicity: 6
        }]
    );
    let powers = powers_invariants(&rk, &trunc, &fl, &star, 3).unwrap();
    assert_eq!(powers.betti.betti, vec![7, 6], "J^3 = m^6 in two variables");
    assert_eq!(powers.pd.value, 1);
    assert_eq!(powers.ass, vec![0b11]);
    c.pass();
}

#[test]
fn criterion_03_three_way_betti_agreement() {
    let c = Criterion::new("criterion 3 (three-way Betti agreement, 24 arrangements)", Some(120));
    let arrangements = suite();
    assert!(arrangements.len() >= 20);
    let mut saw_special = false;
    for (i, arr) in arrangements.iter().enumerate() {
        let rk = compute_rank_function(arr);
        let trunc = dilworth_truncation(&rk);
        let star = enumerate_points(&rk, true);
        let dv = generator_box(&arr.dims(), &star);
        let p = PosetIdeal::from_lattice_points(&arr.dims(), &dv);

        let from_gamma = betti_from_gamma(&gamma_vector(&star), arr.n());
        let from_poset = poset_betti(&p, &dv).unwrap();
        let cx = build_generic_complex(&p);
        assert_eq!(from_gamma.betti, from_poset, "arrangement {i}");
        assert_eq!(from_gamma.betti, cx.betti_census(), "arrangement {i}");
        assert_eq!(
            projective_dimension(&trunc).value,
            cx.length(),
            "arrangement {i}"
        );

        for a in 0..arr.n() {
            for b in a + 1..arr.n() {
                let pair = (1u32 << a) | (1 << b);
                saw_special |= rk.rank(pair) == rk.rank(1 << a).max(rk.rank(1 << b));
            }
        }
    }
    assert!(saw_special, "suite must include repeated or nested subspaces");
    c.pass();
}

#[test]
fn criterion_04_truncation_dp_vs_oracle() {
    let c = Criterion::new("criterion 4 (truncation DP vs all-partitions oracle)", Some(60));
    let mut rng = ChaCha8Rng::seed_from_u64(4040);
    let mut checked = 0usize;
    while checked < 1000 {
        let n = rng.random_range(1..=6usize);
        // sums of truncated weight functions are monotone and submodular
        let pieces: Vec<(usize, Vec<usize>)> = (0..rng.random_range(1..=3))
            .map(|_| {
                let cap = rng.random_range(1..=5);
                let weights = (0..n).map(|_| rng.random_range(0..=3)).collect();
                (cap, weights)
            })
            .collect();
        let values: Vec<usize> = (0..1u32 << n)
            .map(|mask| {
                pieces
                    .iter()
                    .map(|(cap, w)| {
                        let s: usize = members(mask).iter().map(|&i| w[i]).sum();
                        s.min(*cap)
                    })
                    .sum()
            })
            .collect();
        if (0..n).any(|i| values[1 << i] == 0) {
            continue;
        }
        let rk = RankFunction::new(n, values).expect("construction is submodular");
        let trunc = dilworth_truncation(&rk);
        for a in 0..1u32 << n {
            assert_eq!(
                trunc.value(a),
                brute_force_truncation_oracle(&rk, a).unwrap(),
                "function {checked}, subset {a:b}"
            );
        }
        checked += 1;
    }
    c.pass();
}

#[test]
fn criterion_05_membership_equivalences() {
    let c = Criterion::new("criterion 5 (prefix-space membership equivalences)", None);
    for seed in 0..12u64 {
        let arr = random_arrangement(seed);
        let f = certified(&arr, seed + 50);
        let rk = compute_rank_function(&arr);
        let pm = enumerate_points(&rk, false);
        let star = enumerate_points(&rk, true);
        for a in box_points(1, &arr.dims()) {
            let w = prefix_vectors(&f, &a).unwrap();
            let dim = span_dim(&w).unwrap();
            assert_eq!(
                dim == a.iter().sum::<usize>(),
                pm.contains(&a),
                "independence at {a:?} (seed {seed})"
            );
            assert_eq!(
                contained_subspaces(&arr, &f, &a).unwrap() == 0,
                star.contains(&a),
                "containment at {a:?} (seed {seed})"
            );
        }
    }
    c.pass();
}

#[test]
fn criterion_06_linear_quotients_random_extensions() {
    let c = Criterion::new("criterion 6 (linear quotients, 3 extensions each)", None);
    for (i, arr) in suite().iter().enumerate() {
        let f = certified(arr, 600 + i as u64);
        let (_, p) = generator_box_ideal(arr);
        let orders = [
            grlex_extension(&p),
            random_extension(&p, 2 * i as u64),
            random_extension(&p, 2 * i as u64 + 1),
        ];
        for order in orders {
            verify_linear_quotients(arr, &f, &p, &order)
                .unwrap_or_else(|e| panic!("arrangement {i}: {e}"));
        }
    }
    c.pass();
}

#[test]
fn criterion_07_powers_consistency() {
    let c = Criterion::new("criterion 7 (powers vs repeated arrangement)", Some(120));
    for seed in [700u64, 701, 702, 703] {
        let arr = random_arrangement(seed);
        if arr.n() > 3 {
            continue;
        }
        let rk = compute_rank_function(&arr);
        let trunc = dilworth_truncation(&rk);
        let fl = flats(&rk);
        let star = enumerate_points(&rk, true);
        for nu in 2..=3usize {
            // the explicitly repeated arrangement: each subspace listed ν times
            let repeated_subspaces: Vec<Vec<Vec<dilworth_core::Rat>>> = (0..arr.n())
                .flat_map(|i| {
                    let rows: Vec<Vec<dilworth_core::Rat>> = (0..arr.basis(i).rows())
                        .map(|r| arr.basis(i).row(r).to_vec())
                        .collect();
                    std::iter::repeat_n(rows, nu)
                })
                .collect();
            let rep_arr = Arrangement::new(arr.ambient_dim(), repeated_subspaces).unwrap();
            let rep_rk = compute_rank_function(&rep_arr);
            let rep_star = enumerate_points(&rep_rk, true);
            let base_route = betti_from_gamma(&gamma_vector(&rep_star), rep_arr.n());

            let formula_route =
                powers_invariants(&rk, &trunc, &fl, &star, nu as u64).unwrap();
            assert_eq!(
                formula_route.betti.betti, base_route.betti,
                "seed {seed}, nu {nu}"
            );

            let rep_trunc = dilworth_truncation(&rep_rk);
            assert_eq!(
                projective_dimension(&rep_trunc).value,
                formula_route.pd.value,
                "seed {seed}, nu {nu}"
            );
        }
    }
    c.pass();
}

#[test]
fn criterion_08_multiview_hilbert_vs_oracle() {
    let c = Criterion::new("criterion 8 (Hilbert function vs span oracle)", None);
    let rows = |xs: &[&[i64]]| -> Vec<Vec<dilworth_core::Rat>> {
        xs.iter()
            .map(|r| r.iter().map(|&x| dilworth_core::linalg::rat_int(x)).collect())
            .collect()
    };
    let arrangements = vec![
        // equal planes
        Arrangement::new(2, vec![rows(&[&[1, 0], &[0, 1]]); 2]).unwrap(),
        // transversal planes
        Arrangement::coordinate(4, &[2, 2]).unwrap(),
        // three subspaces with a nesting
        Arrangement::new(
            3,
            vec![
                rows(&[&[1, 0, 0], &[0, 1, 0]]),
                rows(&[&[1, 0, 0]]),
                rows(&[&[0, 1, 1], &[1, 0, 2]]),
            ],
        )
        .unwrap(),
        // sampled linearly general triple in Q^4
        linearly_general(4, &[2, 1, 2], 808).unwrap(),
    ];
    for (i, arr) in arrangements.iter().enumerate() {
        let rk = compute_rank_function(arr);
        let star = enumerate_points(&rk, true);
        for u in box_points(0, &vec![2; arr.n()]) {
            let u64s: Vec<u64> = u.iter().map(|&x| x as u64).collect();
            assert_eq!(
                multiview_hilbert(&star, &u64s) as usize,
                multiview_span_oracle(arr, &u64s).unwrap(),
                "arrangement {i}, u = {u:?}"
            );
        }
    }
    c.pass();
}

#[test]
fn criterion_09_linearly_general_product_vs_intersection() {
    let c = Criterion::new(
        "criterion 9 (product = intersection iff Σd_i < d+n-1, evidence to degree n+2)",
        None,
    );
    let profiles: [(usize, &[usize]); 12] = [
        (3, &[1, 1]),
        (3, &[2, 2]),
        (4, &[2, 2]),
        (4, &[3, 2]),
        (4, &[1, 1, 1]),
        (4, &[2, 2, 1]),
        (4, &[2, 2, 2]),
        (4, &[2, 2, 2, 1]),
        (5, &[2, 2, 1]),
        (5, &[3, 3]),
        (5, &[1, 1, 1, 1]),
        (6, &[1, 1]),
    ];
    for (k, (d, dims)) in profiles.iter().enumerate() {
        let arr = linearly_general(*d, dims, 900 + k as u64).unwrap();
        let f = certified(&arr, 950 + k as u64);
        let n = arr.n();
        let sum: usize = dims.iter().sum();
        let expected_equal = sum < d + n - 1;
        // the two ideals agree from degree n on, so the check must reach
        // below the generation degree, where the product is zero
        let mut all_equal = true;
        for t in 1..=(n as u32 + 2) {
            let (prod, inter) = product_vs_intersection_dims(&arr, &f, t).unwrap();
            assert!(prod <= inter, "product is always inside the intersection");
            all_equal &= prod == inter;
        }
        assert_eq!(
            all_equal, expected_equal,
            "profile {k}: d = {d}, dims = {dims:?}"
        );
    }
    c.pass();
}

#[test]
fn criterion_10_primary_decomposition_degreewise() {
    let c = Criterion::new(
        "criterion 10 (primary decomposition, evidence to degree n+2)",
        None,
    );
    let mut verified = 0usize;
    for (i, arr) in suite().iter().enumerate() {
        if arr.n() > 3 || arr.ambient_dim() > 5 {
            continue;
        }
        let f = certified(arr, 1000 + i as u64);
        let rk = compute_rank_function(arr);
        let trunc = dilworth_truncation(&rk);
        let fl = flats(&rk);
        let dec = primary_decomposition(&rk, &trunc, &fl, &PowersMode::Single).unwrap();
        let n = arr.n() as u32;
        let degrees: Vec<u32> = (n..=n + 2).collect();
        let evidence = verify_decomposition_degreewise(arr, &f, &dec, &degrees).unwrap();
        for e in &evidence {
            assert!(
                e.matches(),
                "arrangement {i}, degree {}: {} vs {}",
                e.degree,
                e.ideal_dim,
                e.intersection_dim
            );
        }
        verified += 1;
    }
    assert!(verified >= 8, "need a meaningful sample, got {verified}");
    c.pass();
}

#[test]
fn criterion_11_negative_controls() {
    let c = Criterion::new("criterion 11 (negative controls carry witnesses)", None);
    let p = PosetIdeal::new(&[2, 2], &[vec![2, 2]]).unwrap();

    // corrupted sign breaks the complex
    let mut cx = build_generic_complex(&p);
    let flipped = cx.differential_entry_mut(2, 0).neg();
    *cx.differential_entry_mut(2, 0) = flipped;
    let err = verify_d_squared(&cx).unwrap_err();
    assert_eq!(err.kind(), "theorem_violation");
    assert!(err.to_string().contains("row"), "witness names the entry");

    // constant entry breaks minimality
    let mut cx = build_generic_complex(&p);
    assert!(verify_minimality(&cx));
    let poisoned = &cx.differential_entry_mut(1, 0).clone()
        + &SparsePoly::constant(4, dilworth_core::linalg::rat_int(1));
    *cx.differential_entry_mut(1, 0) = poisoned;
    assert!(!verify_minimality(&cx));

    // a degenerate basis choice fails certification
    let one = dilworth_core::linalg::rat_int(1);
    let zero = dilworth_core::linalg::rat_int(0);
    let plane = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
    let arr = Arrangement::new(2, vec![plane.clone(), plane.clone()]).unwrap();
    let degenerate = GenericBases::from_vectors(vec![plane.clone(), plane]);
    assert!(!dilworth_core::certify_general_position(&arr, &degenerate).unwrap());
    c.pass();
}
