//! One line per acceptance criterion, each at its stated tolerance.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pd3_core::checks::{mutation_audit, CheckResult, Status, Workbench};
use pd3_core::complex::fox_derivative;
use pd3_core::corpus::Corpus;
use pd3_core::group::{normalize, Generator, GroupHom, GroupId, Syllable, Word};
use pd3_core::intmat::{smith, IntMatrix, Transforms};
use pd3_core::par::Parallelism;
use pd3_core::report::run_suite;
use pd3_core::ring::{OrientationCharacter, RingElement};

const L: usize = 5;

struct Criterion {
    n: usize,
    name: &'static str,
    ok: bool,
    note: String,
}

fn pass(results: &BTreeMap<&str, CheckResult>, ids: &[&str]) -> bool {
    ids.iter().all(|id| results[id].status == Status::Pass)
}

fn time(results: &BTreeMap<&str, CheckResult>, ids: &[&str]) -> Duration {
    ids.iter().map(|id| results[id].wall_time).sum()
}

fn detail<'a>(results: &'a BTreeMap<&str, CheckResult>, id: &str, key: &str) -> &'a str {
    results[id].details.get(key).map_or("", String::as_str)
}

fn suite_criteria(results: &BTreeMap<&str, CheckResult>) -> Vec<Criterion> {
    let mut out = Vec::new();
    let mut push = |n, name, ok, note: String| out.push(Criterion { n, name, ok, note });
    let t = |ids: &[&str]| time(results, ids);

    let ok = detail(results, "X5", "universal cover") == "(Z, 0, 0, Z)" && t(&["X5"]) < Duration::from_secs(1);
    push(
        1,
        "homology of the universal cover of X is (Z,0,0,Z) in < 1 s",
        ok && pass(results, &["X5"]),
        format!("{:?}", t(&["X5"])),
    );

    let ok = detail(results, "X5", "X") == "(Z, Z/2, 0, Z)" && detail(results, "Y7", "Y") == "(Z, Z/2, 0, Z)";
    let fast = t(&["X5"]) < Duration::from_secs(1) && t(&["Y7"]) < Duration::from_secs(1);
    push(
        2,
        "H(X) = H(Y) = (Z,Z/2,0,Z) in < 1 s each",
        ok && fast && pass(results, &["X5", "Y7"]),
        format!("{:?}", t(&["X5", "Y7"])),
    );

    push(3, "Fox-Lyndon matrices equal the displayed ones", pass(results, &["X1", "Y1"]), String::new());
    push(
        4,
        "diagonal hermitian d2 and d3 = conj-transpose(d1) for X, Y, Z",
        pass(results, &["X3", "X4", "Y2", "Y3", "Z1"]),
        String::new(),
    );
    push(
        5,
        "annihilator lattices equal principal ideals in < 1 s",
        pass(results, &["X6"]) && t(&["X6"]) < Duration::from_secs(1),
        format!("{:?}", t(&["X6"])),
    );
    push(
        6,
        "lifting identity for all 9 pairs",
        pass(results, &["X7"]) && detail(results, "X7", "pairs") == "9",
        String::new(),
    );
    let ok = pass(results, &["X8"])
        && detail(results, "X8", "rank of ker d3") == "1"
        && detail(results, "X8", "support of nu") == "6";
    push(7, "ker d3 has rank 1 generated by nu g, nu = beta(a+1) of support 6", ok, String::new());
    push(
        8,
        "diagonal counit, chain-map and compatibility with zero residual in < 5 s",
        pass(results, &["Y9", "Y10"]) && t(&["Y9", "Y10"]) < Duration::from_secs(5),
        format!("{:?}", t(&["Y9", "Y10"])),
    );
    let ok = pass(results, &["Y8"]) && detail(results, "Y8", "F2 Betti numbers") == "[1, 1, 1, 1]";
    push(
        9,
        "mod 2 Betti numbers (1,1,1,1) and u cup u != 0",
        ok,
        detail(results, "Y8", "u cup u on (f1, f2, f3)").to_string(),
    );
    let ok = results["Y5"].status == Status::Partial(L)
        && results["Y6"].status == Status::Partial(L)
        && detail(results, "Y6", "kernel rank") == "0";
    push(
        10,
        "bounded kernel completeness and injectivity: PARTIAL(5) in < 5 min",
        ok && t(&["Y5", "Y6"]) < Duration::from_secs(300),
        format!("{:?}", t(&["Y5", "Y6"])),
    );
    let ok = pass(results, &["O1"])
        && detail(results, "O1", "comparison, w = +1") == "MATCH"
        && detail(results, "O1", "comparison, w = -1") == "MISMATCH";
    push(11, "R-module invariants of I(pi) and J, mismatch exactly at w = -1", ok, String::new());
    let ok = pass(results, &["H1"])
        && detail(results, "H1", "H3(pi)") == "(Z/3)^2 + Z/2"
        && t(&["H1"]) < Duration::from_secs(60);
    push(12, "H3(Z/2) = Z/2, H3(S3) = Z/6, H3(pi) = (Z/3)^2 + Z/2 in < 60 s", ok, format!("{:?}", t(&["H1"])));
    let ok = pass(results, &["Y11"])
        && detail(results, "Y11", "H1(Y')") == "(Z/3)^2"
        && detail(results, "Y11", "H1(Z')") == "(Z/3)^2";
    push(13, "H1 of the double covers of Y and Z is (Z/3)^2", ok, String::new());
    out
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let gens = [Generator::A, Generator::B, Generator::C];
    let len = rng.gen_range(0..=max_len);
    Word::from_syllables((0..len).map(|_| {
        let exp = if rng.gen_bool(0.5) { rng.gen_range(1..=2) } else { -rng.gen_range(1..=2) };
        Syllable { gen: gens[rng.gen_range(0..3)], exp }
    }))
}

fn fox_identity_failures(rng: &mut ChaCha8Rng) -> usize {
    let one = RingElement::one(GroupId::Pi);
    let minus = |x: &RingElement, y: &RingElement| x.try_add(&y.scale(&BigInt::from(-1))).unwrap();
    (0..200)
        .filter(|_| {
            let w = random_word(rng, 12);
            let mut sum = RingElement::zero(GroupId::Pi);
            for x in [Generator::A, Generator::B, Generator::C] {
                let gen = RingElement::from_element(normalize(GroupId::Pi, &Word::gen(x)).unwrap());
                let term = fox_derivative(&w, x, GroupId::Pi).unwrap().try_mul(&minus(&gen, &one)).unwrap();
                sum = sum.try_add(&term).unwrap();
            }
            sum != minus(&RingElement::from_element(normalize(GroupId::Pi, &w).unwrap()), &one)
        })
        .count()
}

fn smith_failures(rng: &mut ChaCha8Rng) -> usize {
    (0..100)
        .filter(|_| {
            let (r, c) = (rng.gen_range(1..=40), rng.gen_range(1..=40));
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-9..=9) } else { 0 }).collect())
                .collect();
            let a = IntMatrix::from_i64(&rows);
            smith(&a, Transforms::BOTH, Parallelism::Parallel).verify(&a).is_err()
        })
        .count()
}

fn complex_failures() -> Vec<String> {
    let b = Workbench::new(Corpus::embedded(), 2, Parallelism::Parallel);
    let mut all = vec![
        ("K", b.k().unwrap().clone()),
        ("L", b.l().unwrap().clone()),
        ("X", b.x().unwrap().clone()),
        ("Y", b.y().unwrap().clone()),
        ("Z", b.z().unwrap().clone()),
        ("X e/f", b.x_adapted().unwrap().clone()),
        ("Y e~/f~", b.y_adapted().unwrap().clone()),
        ("Z e~/f~", b.z_adapted().unwrap().clone()),
        ("Y'", b.y().unwrap().restrict_to_index_two().unwrap()),
        ("Z'", b.z().unwrap().restrict_to_index_two().unwrap()),
        ("dual Y", b.y_adapted().unwrap().dual_conjugate_transpose(OrientationCharacter::TRIVIAL)),
    ];
    for h in [GroupHom::retraction_b(), GroupHom::retraction_c(), GroupHom::abelianization()] {
        all.push(("pushed Y", b.y().unwrap().map_ring(&h).unwrap()));
        all.push(("pushed Z", b.z().unwrap().map_ring(&h).unwrap()));
    }
    let mut bad = Vec::new();
    for (name, cx) in &all {
        if cx.check().is_err() || cx.augment().check().is_err() {
            bad.push(name.to_string());
        }
        if cx.group().is_finite() && cx.flatten().unwrap().check().is_err() {
            bad.push(format!("{name} flattened"));
        }
    }
    bad
}

fn property_criterion() -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let confluence: Vec<GroupId> = [GroupId::S3, GroupId::Pi, GroupId::Z2, GroupId::Z3, GroupId::PiPrime]
        .into_iter()
        .filter(|g| !g.context().check_confluence().passed())
        .collect();
    let fox = fox_identity_failures(&mut rng);
    let snf = smith_failures(&mut rng);
    let complexes = complex_failures();
    let ok = confluence.is_empty() && fox == 0 && snf == 0 && complexes.is_empty();
    Criterion {
        n: 14,
        name: "confluence, Fox identity (200 words), dd = 0, SNF postconditions (100 matrices)",
        ok,
        note: format!("confluence {confluence:?}, fox {fox}, snf {snf}, complexes {complexes:?}"),
    }
}

fn mutation_criterion() -> Criterion {
    let outcomes = mutation_audit(&Corpus::embedded(), 20, 15, 2, Parallelism::Parallel).unwrap();
    let escaped: Vec<&str> = outcomes.iter().filter(|o| o.failing.is_empty()).map(|o| o.site.as_str()).collect();
    Criterion {
        n: 15,
        name: "each of 20 sampled corpus mutations causes a FAIL",
        ok: outcomes.len() == 20 && escaped.is_empty(),
        note: format!("{} sampled, undetected {escaped:?}", outcomes.len()),
    }
}

fn main() {
    let start = Instant::now();
    let report = run_suite(Corpus::embedded(), None, L, Parallelism::Parallel).unwrap();
    let results: BTreeMap<&str, CheckResult> = report.checks.iter().map(|c| (c.id, c.clone())).collect();
    let mut criteria = suite_criteria(&results);
    criteria.push(property_criterion());
    criteria.push(mutation_criterion());
    criteria.sort_by_key(|c| c.n);

    for c in &criteria {
        let verdict = if c.ok { "PASS" } else { "FAIL" };
        let note = if c.note.is_empty() { String::new() } else { format!(" ({})", c.note) };
        println!("criterion {:>2} {verdict}: {}{note}", c.n, c.name);
    }
    println!("acceptance finished in {:?}", start.elapsed());
    let failed: Vec<usize> = criteria.iter().filter(|c| !c.ok).map(|c| c.n).collect();
    assert_eq!(criteria.len(), 15);
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
