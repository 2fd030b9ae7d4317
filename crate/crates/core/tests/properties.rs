use proptest::prelude::*;

use spanbicat::axioms::check_beck_pullback;
use spanbicat::comonad::{comultiplication_by_pasting, tabulate, Comonad};
use spanbicat::direct_sum::{matrix_of_span, span_of_matrix};
use spanbicat::equiv::{check_roundtrips, MapSpan};
use spanbicat::finset::{FiniteFunction, FiniteSet};
use spanbicat::local::local_product;
use spanbicat::maps::{is_map, make_adjunction, map_from_function};
use spanbicat::report::AxiomReport;
use spanbicat::span::{
    associator, compose_spans, find_iso, id_span, left_unitor, morphisms_between, right_unitor,
    vertical_compose, Span, SpanMorphism,
};

fn table(dom: usize, cod: usize) -> impl Strategy<Value = Vec<usize>> {
    if cod == 0 {
        Just(Vec::new()).boxed()
    } else {
        proptest::collection::vec(0..cod, dom).boxed()
    }
}

fn span_between(src: usize, tgt: usize, max_apex: usize) -> impl Strategy<Value = Span> {
    let apex = if src == 0 || tgt == 0 { 0..1 } else { 0..max_apex + 1 };
    apex.prop_flat_map(move |n| (table(n, src), table(n, tgt)))
        .prop_map(move |(l, r)| Span::from_tables(src, tgt, l, r).unwrap())
}

fn span(max_end: usize, max_apex: usize) -> impl Strategy<Value = Span> {
    (0..=max_end, 0..=max_end).prop_flat_map(move |(s, t)| span_between(s, t, max_apex))
}

/// Three composable spans.
fn chain() -> impl Strategy<Value = (Span, Span, Span)> {
    (1..=3usize, 1..=3usize, 1..=3usize, 1..=3usize).prop_flat_map(|(w, x, y, z)| {
        (span_between(w, x, 4), span_between(x, y, 4), span_between(y, z, 4))
    })
}

fn function(max: usize) -> impl Strategy<Value = FiniteFunction> {
    (0..=max, 1..=max).prop_flat_map(|(d, c)| {
        table(d, c).prop_map(move |t| FiniteFunction::from_table(d, c, t).unwrap())
    })
}

fn permuted(r: &Span, seed: u64) -> Span {
    let n = r.apex().size();
    let mut order: Vec<usize> = (0..n).collect();
    let mut state = seed;
    for i in (1..n).rev() {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        order.swap(i, (state >> 33) as usize % (i + 1));
    }
    let l = order.iter().map(|&s| r.left().apply(s)).collect();
    let rr = order.iter().map(|&s| r.right().apply(s)).collect();
    Span::from_tables(r.src().size(), r.tgt().size(), l, rr).unwrap()
}

proptest! {
    #[test]
    fn associator_is_an_isomorphism((r, s, t) in chain()) {
        let al = associator(&r, &s, &t).unwrap();
        prop_assert!(al.is_invertible());
        let back = al.inverse();
        prop_assert!(al.then(&back).unwrap().is_identity());
    }

    #[test]
    fn unitors_are_isomorphisms(r in span(3, 5)) {
        prop_assert!(left_unitor(&r).is_invertible());
        prop_assert!(right_unitor(&r).is_invertible());
        prop_assert_eq!(compose_spans(&id_span(r.src()), &r).unwrap().apex().size(), r.apex().size());
    }

    #[test]
    fn isomorphism_ignores_apex_order(r in span(3, 5), seed in any::<u64>()) {
        let p = permuted(&r, seed);
        let iso = find_iso(&r, &p).expect("relabelled spans are isomorphic");
        prop_assert!(iso.inverse().then(&iso).unwrap().is_identity());
    }

    #[test]
    fn vertical_composition_is_associative(r in span(2, 3)) {
        let ends: Vec<SpanMorphism> = morphisms_between(&r, &r);
        for a in ends.iter().take(4) {
            for b in ends.iter().take(4) {
                for c in ends.iter().take(4) {
                    let left = vertical_compose(&vertical_compose(a, b).unwrap(), c).unwrap();
                    let right = vertical_compose(a, &vertical_compose(b, c).unwrap()).unwrap();
                    prop_assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn maps_are_exactly_adjunctions(r in span(3, 4)) {
        match make_adjunction(&r) {
            Ok(adj) => {
                prop_assert!(is_map(&r));
                prop_assert!(adj.triangles_hold());
            }
            Err(_) => prop_assert!(!is_map(&r)),
        }
    }

    #[test]
    fn beck_condition_for_maps(f in function(3), g in function(3)) {
        prop_assume!(f.cod() == g.cod());
        let report = check_beck_pullback(&map_from_function(&f), &map_from_function(&g)).unwrap();
        prop_assert!(report.holds);
        prop_assert!(report.is_consistent());
    }

    #[test]
    fn pasted_comultiplication_is_the_diagonal(f in function(3)) {
        let g = Span::new(f.clone(), f).unwrap();
        let c = Comonad::new(&g).unwrap();
        prop_assert!(c.laws_hold().unwrap());
        prop_assert_eq!(&comultiplication_by_pasting(&g).unwrap(), c.comult());
    }

    #[test]
    fn tabulation_mate_is_invertible(r in span(3, 4)) {
        prop_assert!(tabulate(&r).unwrap().mate(&r).unwrap().is_invertible());
    }

    #[test]
    fn spans_of_maps_round_trip(r in span(3, 4)) {
        let ms = MapSpan::new(r.left().clone(), r.right().clone()).unwrap();
        prop_assert!(check_roundtrips(&r, &ms).unwrap().holds);
    }

    #[test]
    fn local_product_projects_onto_factors(
        (r, s) in (1..=2usize, 1..=2usize)
            .prop_flat_map(|(x, a)| (span_between(x, a, 3), span_between(x, a, 3)))
    ) {
        let p = local_product(&r, &s).unwrap();
        prop_assert_eq!(p.pi().target(), &r);
        prop_assert_eq!(p.rho().target(), &s);
    }

    #[test]
    fn matrix_round_trip(r in span_between(3, 3, 4), cut in 0..=3usize, cut2 in 0..=3usize) {
        let rows = [FiniteSet::new(cut), FiniteSet::new(3 - cut)];
        let cols = [FiniteSet::new(cut2), FiniteSet::new(3 - cut2)];
        let m = matrix_of_span(&r, &rows, &cols).unwrap();
        prop_assert!(find_iso(&span_of_matrix(&m), &r).is_some());
    }

    #[test]
    fn reports_survive_serialization(f in function(3), g in function(3)) {
        prop_assume!(f.cod() == g.cod());
        let report = check_beck_pullback(&map_from_function(&f), &map_from_function(&g)).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: AxiomReport = serde_json::from_str(&text).unwrap();
        prop_assert!(back.validate().is_ok());
        prop_assert_eq!(back, report);
    }
}
