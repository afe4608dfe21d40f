use num_bigint::BigInt;
use proptest::prelude::*;

use pd3_core::checks::Workbench;
use pd3_core::complex::{fox_derivative, FreeComplex};
use pd3_core::corpus::Corpus;
use pd3_core::group::{normalize, Generator, GroupElement, GroupHom, GroupId, Syllable, Word};
use pd3_core::intmat::{smith, IntMatrix, Transforms};
use pd3_core::matrix::RingMatrix;
use pd3_core::par::Parallelism;
use pd3_core::ring::{restrict_scalars, OrientationCharacter, RingElement};
use pd3_core::tensor::{Cell, Chain, TensorElement};

fn letters(group: GroupId) -> &'static [Generator] {
    match group {
        GroupId::Pi => &[Generator::A, Generator::B, Generator::C],
        _ => &[Generator::A, Generator::B],
    }
}

fn word(group: GroupId, max_len: usize) -> impl Strategy<Value = Word> {
    let gens = letters(group);
    prop::collection::vec((0..gens.len(), prop_oneof![-2i32..=-1, 1i32..=2]), 0..=max_len)
        .prop_map(move |s| Word::from_syllables(s.into_iter().map(|(i, exp)| Syllable { gen: gens[i], exp })))
}

fn element(group: GroupId) -> impl Strategy<Value = GroupElement> {
    word(group, 8).prop_map(move |w| normalize(group, &w).unwrap())
}

fn ring(group: GroupId) -> impl Strategy<Value = RingElement> {
    prop::collection::vec((element(group), -4i64..=4), 0..5).prop_map(move |terms| {
        RingElement::from_terms(group, terms.into_iter().map(|(g, n)| (g, BigInt::from(n)))).unwrap()
    })
}

fn ring_pair() -> impl Strategy<Value = GroupId> {
    prop_oneof![Just(GroupId::S3), Just(GroupId::Pi)]
}

fn sub(x: &RingElement, y: &RingElement) -> RingElement {
    x.try_add(&y.scale(&BigInt::from(-1))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((x, y, z) in ring_pair().prop_flat_map(|g| (ring(g), ring(g), ring(g)))) {
        let m = |p: &RingElement, q: &RingElement| p.try_mul(q).unwrap();
        let a = |p: &RingElement, q: &RingElement| p.try_add(q).unwrap();
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &a(&y, &z)), a(&m(&x, &y), &m(&x, &z)));
        prop_assert_eq!(m(&a(&x, &y), &z), a(&m(&x, &z), &m(&y, &z)));
        prop_assert_eq!(a(&x, &y), a(&y, &x));
        prop_assert_eq!(m(&x, &RingElement::one(x.group())), x.clone());
        prop_assert!(sub(&x, &x).is_zero());
    }

    #[test]
    fn involution_is_an_anti_automorphism((x, y) in ring_pair().prop_flat_map(|g| (ring(g), ring(g))), w in prop_oneof![Just(1i8), Just(-1i8)]) {
        let chi = OrientationCharacter::new(w).unwrap();
        prop_assert_eq!(x.try_mul(&y).unwrap().involute(chi), y.involute(chi).try_mul(&x.involute(chi)).unwrap());
        prop_assert_eq!(x.involute(chi).involute(chi), x.clone());
    }

    #[test]
    fn augmentation_is_multiplicative((x, y) in ring_pair().prop_flat_map(|g| (ring(g), ring(g)))) {
        prop_assert_eq!(x.try_mul(&y).unwrap().augment(), x.augment() * y.augment());
    }

    #[test]
    fn normal_forms_are_idempotent(g in ring_pair(), w in word(GroupId::Pi, 12)) {
        let w = if g == GroupId::Pi { w } else { Word::from_syllables(w.syllables().iter().copied().filter(|s| s.gen != Generator::C)) };
        let x = normalize(g, &w).unwrap();
        prop_assert_eq!(normalize(g, x.word()).unwrap(), x);
    }

    #[test]
    fn homomorphisms_respect_products(x in element(GroupId::Pi), y in element(GroupId::Pi), s in element(GroupId::S3)) {
        for h in [GroupHom::retraction_b(), GroupHom::retraction_c(), GroupHom::abelianization()] {
            prop_assert_eq!(h.apply(&(&x * &y)).unwrap(), &h.apply(&x).unwrap() * &h.apply(&y).unwrap());
        }
        let back = |r: GroupHom, i: GroupHom| r.apply(&i.apply(&s).unwrap()).unwrap();
        prop_assert_eq!(back(GroupHom::retraction_b(), GroupHom::inclusion_b()), s.clone());
        prop_assert_eq!(back(GroupHom::retraction_c(), GroupHom::inclusion_c()), s.clone());
    }

    #[test]
    fn restriction_of_scalars_is_multiplicative(x in ring(GroupId::Pi), y in ring(GroupId::Pi)) {
        let lhs = restrict_scalars(&x.try_mul(&y).unwrap()).unwrap();
        let rhs = restrict_scalars(&x).unwrap().then(&restrict_scalars(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn flattening_is_functorial(a in prop::collection::vec(ring(GroupId::S3), 4), b in prop::collection::vec(ring(GroupId::S3), 2)) {
        let a = RingMatrix::from_rows(GroupId::S3, vec![a[..2].to_vec(), a[2..].to_vec()]).unwrap();
        let b = RingMatrix::from_rows(GroupId::S3, vec![b]).unwrap();
        let lhs = a.then(&b).unwrap().flatten().unwrap();
        let rhs = b.flatten().unwrap().mul(&a.flatten().unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fox_fundamental_identity(w in word(GroupId::Pi, 12)) {
        let mut sum = RingElement::zero(GroupId::Pi);
        for &x in letters(GroupId::Pi) {
            let gen = RingElement::from_element(normalize(GroupId::Pi, &Word::gen(x)).unwrap());
            let x_minus_1 = sub(&gen, &RingElement::one(GroupId::Pi));
            sum = sum.try_add(&fox_derivative(&w, x, GroupId::Pi).unwrap().try_mul(&x_minus_1).unwrap()).unwrap();
        }
        let w_minus_1 = sub(&RingElement::from_element(normalize(GroupId::Pi, &w).unwrap()), &RingElement::one(GroupId::Pi));
        prop_assert_eq!(sum, w_minus_1);
    }
}

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=40, 1usize..=40).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -9i64..=9], r * c)
            .prop_map(move |v| IntMatrix::from_i64(&v.chunks(c).map(<[i64]>::to_vec).collect::<Vec<_>>()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn smith_postconditions(a in int_matrix(), parallel in any::<bool>()) {
        let par = if parallel { Parallelism::Parallel } else { Parallelism::Sequential };
        let s = smith(&a, Transforms::BOTH, par);
        prop_assert!(s.verify(&a).is_ok(), "{:?}", s.verify(&a));
        prop_assert_eq!(s.rank(), a.rank());
    }
}

fn bench() -> Workbench {
    Workbench::new(Corpus::embedded(), 2, Parallelism::Sequential)
}

fn chain(cx: &FreeComplex, degree: usize) -> impl Strategy<Value = Chain> {
    let n = cx.ranks()[degree];
    prop::collection::vec(ring(GroupId::Pi), n).prop_map(move |coords| Chain { degree, coords })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_boundary_squares_to_zero_and_tau_is_an_involution(
        (p, q) in (0usize..=3, 0usize..=3),
        seed in prop::collection::vec(ring(GroupId::Pi), 6),
    ) {
        let b = bench();
        let cx = b.y_adapted().unwrap();
        let pick = |d: usize, off: usize| Chain { degree: d, coords: (0..cx.ranks()[d]).map(|i| seed[(i + off) % 6].clone()).collect() };
        let t = TensorElement::tensor(&pick(p, 0), &pick(q, 3));
        prop_assert!(t.boundary(cx).boundary(cx).is_zero());
        prop_assert_eq!(t.transpose_tau().transpose_tau(), t);
    }

    #[test]
    fn diagonal_is_equivariant(g in element(GroupId::Pi), degree in 1usize..=2, index in 0usize..3) {
        let b = bench();
        let cx = b.y_adapted().unwrap();
        let table = b.delta_l().unwrap();
        let cell = Chain::basis(cx, degree, index);
        let moved = cell.left_mul(&RingElement::from_element(g.clone())).unwrap();
        let value = table.apply(cx, &moved).unwrap();
        prop_assert_eq!(&value, &table.get(Cell { degree, index }).unwrap().translate(&g));
        prop_assert_eq!(value.boundary(cx), table.apply(cx, &moved.boundary(cx).unwrap()).unwrap());
    }

    #[test]
    fn boundaries_of_random_chains_are_cycles(c in chain(bench().y_adapted().unwrap(), 3)) {
        let b = bench();
        let cx = b.y_adapted().unwrap();
        prop_assert!(c.boundary(cx).unwrap().boundary(cx).unwrap().is_zero());
    }
}

#[test]
fn rewriting_systems_are_confluent() {
    for g in [GroupId::S3, GroupId::Pi, GroupId::Z2, GroupId::Z3, GroupId::PiPrime, GroupId::Free] {
        let report = g.context().check_confluence();
        assert!(report.passed(), "{g}: {:?}", report);
    }
}

#[test]
fn every_constructed_complex_is_a_complex() {
    let b = bench();
    let mut all: Vec<(&str, FreeComplex)> = vec![
        ("K", b.k().unwrap().clone()),
        ("L", b.l().unwrap().clone()),
        ("X", b.x().unwrap().clone()),
        ("Y", b.y().unwrap().clone()),
        ("Z", b.z().unwrap().clone()),
        ("X adapted", b.x_adapted().unwrap().clone()),
        ("Y adapted", b.y_adapted().unwrap().clone()),
        ("Z adapted", b.z_adapted().unwrap().clone()),
    ];
    for (name, h) in
        [("r_b", GroupHom::retraction_b()), ("r_c", GroupHom::retraction_c()), ("ab", GroupHom::abelianization())]
    {
        all.push((name, b.y().unwrap().map_ring(&h).unwrap()));
        all.push((name, b.z().unwrap().map_ring(&h).unwrap()));
    }
    all.push(("Y'", b.y().unwrap().restrict_to_index_two().unwrap()));
    all.push(("Z'", b.z().unwrap().restrict_to_index_two().unwrap()));
    all.push(("dual Y", b.y_adapted().unwrap().dual_conjugate_transpose(OrientationCharacter::TRIVIAL)));
    for (name, cx) in &all {
        assert!(cx.check().is_ok(), "{name}");
        assert!(cx.augment().check().is_ok(), "{name} augmented");
        if cx.group().is_finite() {
            assert!(cx.flatten().unwrap().check().is_ok(), "{name} flattened");
        }
    }
    assert!(b.x().unwrap().flatten().unwrap().check().is_ok());
}

#[test]
fn perturbing_d3_breaks_self_duality() {
    let b = bench();
    let cx = b.x_adapted().unwrap();
    let mut d = cx.differentials().to_vec();
    let entry = d[2].get(0, 0).try_add(&RingElement::one(GroupId::S3)).unwrap();
    d[2].set(0, 0, entry);
    let broken = FreeComplex::new(GroupId::S3, d, cx.all_labels().to_vec());
    let self_dual = broken
        .map(|c| c.self_duality(OrientationCharacter::TRIVIAL).map(|s| s.passed()).unwrap_or(false))
        .unwrap_or(false);
    assert!(!self_dual);
}
