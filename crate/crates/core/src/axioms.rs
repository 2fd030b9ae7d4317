//! Checkers for the axioms satisfied by spans of finite sets: separability,
//! the Frobenius condition, the Beck condition for pullbacks, comonadicity
//! of maps and discreteness, together with judges that re-check a supplied
//! witness table and so detect corrupted witnesses.

use crate::comonad::{em_object, find_copoint, Comonad};
use crate::composite::{Cell, Composite};
use crate::enumerate::{all_functions, equal_leg_endospans, spans_up_to_iso, spans_with_apex_up_to_iso};
use crate::error::{Error, Result};
use crate::finset::{self, FiniteSet};
use crate::local::{
    diagonal_map, diagonal_tensor_one, is_product_diagram, one_tensor_diagonal,
};
use crate::maps::{
    function_from_map, is_map, make_adjunction, map_from_function, mate, path, GSquare,
};
use crate::report::{AxiomReport, Counterexample, Witness};
use crate::span::{
    compose_spans, count_morphisms, find_iso, for_each_morphism, id_span, interchange,
    morphisms_between, opposite, tensor, tensor_morphism, whisker, Span, SpanMorphism,
};

/// The square with `1_A` on top and left and the diagonal on the right and
/// bottom. Its mate is the unit of `d ⊣ d*`.
pub fn separability_square(a: &FiniteSet) -> Result<GSquare> {
    let d = diagonal_map(a);
    GSquare::unique_fill(id_span(a), id_span(a), d.clone(), d)
}

/// The square `d;(1⊗d) = d;(d⊗1)` on `A → A⊗A⊗A`, with `d` on top and left,
/// `1⊗d` on the right and `d⊗1` along the bottom.
pub fn frobenius_square(a: &FiniteSet) -> Result<GSquare> {
    let d = diagonal_map(a);
    GSquare::unique_fill(d.clone(), d, one_tensor_diagonal(a), diagonal_tensor_one(a))
}

/// The mate `d*;d ⇒ (1⊗d);(d⊗1)*` of the Frobenius square.
pub fn frobenius_mate(a: &FiniteSet) -> Result<SpanMorphism> {
    let square = frobenius_square(a)?;
    mate(
        &square,
        &make_adjunction(square.top())?,
        &make_adjunction(square.bottom())?,
    )
}

pub fn check_separable(a: &FiniteSet) -> AxiomReport {
    let subject = format!("object of size {} is separable", a.size());
    let adj = make_adjunction(&diagonal_map(a)).expect("the diagonal is a map");
    judge_unit(subject, &adj.unit().clone())
}

/// Re-checks a candidate table for the unit `1_A ⇒ d;d*`.
pub fn judge_separable(a: &FiniteSet, table: Vec<usize>) -> AxiomReport {
    let subject = format!("object of size {} is separable", a.size());
    let d = diagonal_map(a);
    match SpanMorphism::from_table(&id_span(a), &compose_spans(&d, &opposite(&d)).expect("d;d* composes"), table) {
        Ok(candidate) => {
            let unit = make_adjunction(&d).expect("the diagonal is a map").unit().clone();
            if candidate != unit {
                return AxiomReport::fail(
                    subject,
                    Counterexample::new("not-the-unit", "candidate differs from the unit of d ⊣ d*")
                        .with_cell((&candidate).into()),
                );
            }
            judge_unit(subject, &candidate)
        }
        Err(e) => AxiomReport::fail(subject, Counterexample::new("not-a-cell", e.to_string())),
    }
}

fn judge_unit(subject: String, unit: &SpanMorphism) -> AxiomReport {
    if unit.is_invertible() {
        AxiomReport::pass(subject, Witness::iso(unit))
    } else {
        AxiomReport::fail(
            subject,
            Counterexample::new("not-invertible", "unit of d ⊣ d* is not a bijection")
                .with_cell(unit.into()),
        )
    }
}

pub fn check_frobenius(a: &FiniteSet) -> AxiomReport {
    let subject = format!("object of size {} is Frobenius", a.size());
    match frobenius_mate(a) {
        Ok(m) if m.is_invertible() => AxiomReport::pass(subject, Witness::iso(&m)),
        Ok(m) => AxiomReport::fail(
            subject,
            Counterexample::new("not-invertible", "mate of the Frobenius square")
                .with_cell((&m).into()),
        ),
        Err(e) => AxiomReport::fail(subject, Counterexample::new("no-square", e.to_string())),
    }
}

/// Re-checks a candidate fill table for the Frobenius square.
pub fn judge_frobenius(a: &FiniteSet, fill: Vec<usize>) -> AxiomReport {
    let subject = format!("object of size {} is Frobenius", a.size());
    let d = diagonal_map(a);
    let (right, bottom) = (one_tensor_diagonal(a), diagonal_tensor_one(a));
    let source = compose_spans(&d, &bottom).expect("d;(d⊗1) composes");
    let target = compose_spans(&d, &right).expect("d;(1⊗d) composes");
    let fill = match SpanMorphism::from_table(&source, &target, fill) {
        Ok(f) => f,
        Err(e) => {
            return AxiomReport::fail(
                subject,
                Counterexample::new("non-commuting-fill", e.to_string()),
            )
        }
    };
    let square = GSquare::new(d.clone(), d, right, bottom, fill).expect("boundaries match");
    let m = mate(
        &square,
        &make_adjunction(square.top()).expect("map"),
        &make_adjunction(square.bottom()).expect("map"),
    )
    .expect("mate of a well-formed square");
    if m.is_invertible() {
        AxiomReport::pass(subject, Witness::iso(&m))
    } else {
        AxiomReport::fail(
            subject,
            Counterexample::new("not-invertible", "mate of the Frobenius square")
                .with_cell((&m).into()),
        )
    }
}

pub fn check_discrete(a: &FiniteSet) -> AxiomReport {
    AxiomReport::all(
        format!("object of size {} is discrete", a.size()),
        vec![check_separable(a), check_frobenius(a)],
    )
}

/// The pullback square of a cospan of maps `a: N → A ← M: b`, with the
/// projections `p: P → N` on the left and `r: P → M` on top.
pub fn beck_square(a: &Span, b: &Span) -> Result<GSquare> {
    if !is_map(a) || !is_map(b) {
        return Err(Error::NotAMap);
    }
    if a.tgt() != b.tgt() {
        return Err(Error::BoundaryMismatch("the maps must share a codomain".into()));
    }
    let pb = finset::pullback(&function_from_map(a)?, &function_from_map(b)?)?;
    let p = map_from_function(&pb.legs[0]);
    let r = map_from_function(&pb.legs[1]);
    GSquare::unique_fill(r, p, b.clone(), a.clone())
}

/// The mate `r*;p ⇒ b;a*` of the pullback square.
pub fn beck_mate(a: &Span, b: &Span) -> Result<SpanMorphism> {
    let square = beck_square(a, b)?;
    mate(
        &square,
        &make_adjunction(square.top())?,
        &make_adjunction(square.bottom())?,
    )
}

/// The mate `r*;p ⇒ b;a*` of the pullback square is invertible.
pub fn check_beck_pullback(a: &Span, b: &Span) -> Result<AxiomReport> {
    let subject = format!(
        "Beck condition for a pullback over an object of size {}",
        a.tgt().size()
    );
    let m = beck_mate(a, b)?;
    if !m.is_invertible() {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("not-invertible", "mate of the pullback square")
                .with_cell((&m).into())
                .with_spans([a, b]),
        ));
    }
    if find_iso(m.source(), m.target()).is_none() {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("no-iso", "the two composites are not isomorphic")
                .with_spans([a, b]),
        ));
    }
    Ok(AxiomReport::pass(subject, Witness::iso(&m)))
}

/// Re-checks a candidate table for the Beck 2-cell `r*;p ⇒ b;a*`.
pub fn judge_beck_pullback(a: &Span, b: &Span, table: Vec<usize>) -> Result<AxiomReport> {
    let expected = check_beck_pullback(a, b)?;
    let square = beck_square(a, b)?;
    let source = compose_spans(&opposite(square.top()), square.left())?;
    let target = compose_spans(b, &opposite(a))?;
    let subject = expected.subject.clone();
    let candidate = match SpanMorphism::from_table(&source, &target, table) {
        Ok(c) => c,
        Err(e) => {
            return Ok(AxiomReport::fail(
                subject,
                Counterexample::new("not-a-cell", e.to_string()),
            ))
        }
    };
    if Some(Witness::iso(&candidate)) != expected.witness {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("not-the-mate", "candidate differs from the mate of the square")
                .with_cell((&candidate).into()),
        ));
    }
    Ok(expected)
}

/// The comparison from `dom(g)` to the Eilenberg-Moore object of `g*;g`,
/// returned as the function classifying the coalgebra `g ⇒ g;g*;g`.
pub fn comonadic_comparison(g: &Span) -> Result<finset::FiniteFunction> {
    let f = function_from_map(g)?;
    let g = map_from_function(&f);
    let c = Comonad::new(&compose_spans(&opposite(&g), &g)?)?;
    let em = em_object(&c)?;
    let adj = make_adjunction(&g)?;
    let start = Composite::new(vec![
        crate::composite::Factor::identity(g.src()),
        crate::maps::tracked(&g),
    ])?;
    let eta = adj.unit_cell().at(&start, 0)?;
    let fold = Cell::from_morphism(
        &path(&[adj.right(), &g])?,
        &path(&[c.carrier()])?,
        &SpanMorphism::identity(c.carrier()),
    )?;
    let theta = Cell::canonical(&path(&[&g])?, &start)?
        .then(&eta)?
        .then(&fold.at(eta.target(), 1)?)?
        .to_morphism();
    let found = em.mediators(&c, &g, &theta)?;
    match found.as_slice() {
        [k] => Ok(k.clone()),
        _ => Err(Error::NoMediator(format!(
            "{} candidate comparisons",
            found.len()
        ))),
    }
}

/// `g` is comonadic: the Eilenberg-Moore transpose is invertible, the
/// comparison is a bijection, and whiskering by `g` reflects invertibility
/// and is faithful on 2-cells between spans `T → dom(g)` with `|T| ≤ 2` and
/// apex at most `bound`.
pub fn check_maps_comonadic(g: &Span, bound: usize) -> Result<AxiomReport> {
    if !is_map(g) {
        return Err(Error::NotAMap);
    }
    let f = function_from_map(g)?;
    let subject = format!(
        "map {} → {} is comonadic (reflection sweep up to apex {bound})",
        f.dom().size(),
        f.cod().size()
    );
    let normal = map_from_function(&f);
    let c = Comonad::new(&compose_spans(&opposite(&normal), &normal)?)?;
    let em = em_object(&c)?;
    let transpose = em.mate(&c)?;
    if !transpose.is_invertible() {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("not-invertible", "Eilenberg-Moore transpose")
                .with_cell((&transpose).into()),
        )
        .bounded());
    }
    let k = comonadic_comparison(g)?;
    let comparison = comparison_cell(&k);
    let Some(comparison) = comparison else {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("not-invertible", format!("comparison {:?} is not a bijection", k.table())),
        )
        .bounded());
    };
    if let Some(ce) = reflection_counterexample(g, bound)? {
        return Ok(AxiomReport::fail(subject, ce).bounded());
    }
    Ok(AxiomReport::pass(subject, Witness::iso(&comparison)).bounded())
}

/// A bijection `k: X → Y` as the invertible 2-cell `k° ⇒ graph(k⁻¹)` between
/// spans `Y → X`.
fn comparison_cell(k: &finset::FiniteFunction) -> Option<SpanMorphism> {
    let inverse = k.inverse().ok()?;
    SpanMorphism::new(
        opposite(&map_from_function(k)),
        map_from_function(&inverse),
        k.clone(),
    )
    .ok()
}

/// Re-checks a candidate comparison table for `g`.
pub fn judge_maps_comonadic(g: &Span, table: Vec<usize>) -> Result<AxiomReport> {
    let f = function_from_map(g)?;
    let subject = format!("map {} → {} is comonadic", f.dom().size(), f.cod().size());
    let expected = comonadic_comparison(g)?;
    let candidate = match finset::FiniteFunction::new(
        expected.dom().clone(),
        expected.cod().clone(),
        table,
    ) {
        Ok(c) => c,
        Err(e) => {
            return Ok(AxiomReport::fail(
                subject,
                Counterexample::new("not-a-function", e.to_string()),
            ))
        }
    };
    if candidate != expected {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new(
                "not-a-mediator",
                format!("{:?} does not classify the coalgebra", candidate.table()),
            ),
        ));
    }
    match comparison_cell(&candidate) {
        Some(cell) => Ok(AxiomReport::pass(subject, Witness::iso(&cell))),
        None => Ok(AxiomReport::fail(
            subject,
            Counterexample::new("not-invertible", "comparison is not a bijection"),
        )),
    }
}

/// Looks for a 2-cell `α` between spans `T → dom(g)` such that `α;g` is
/// invertible while `α` is not, or two distinct cells identified by `;g`.
fn reflection_counterexample(g: &Span, bound: usize) -> Result<Option<Counterexample>> {
    let x = g.src().size();
    for t in 1..=2 {
        for n in 0..=bound {
            let spans = spans_with_apex_up_to_iso(t, x, n);
            for r in &spans {
                for s in &spans {
                    let cells = morphisms_between(r, s);
                    let mut images = Vec::with_capacity(cells.len());
                    for alpha in &cells {
                        let image = whisker(alpha, g)?;
                        if image.is_invertible() && !alpha.is_invertible() {
                            return Ok(Some(
                                Counterexample::new("not-reflected", "α;g invertible but α is not")
                                    .with_cell(alpha.into()),
                            ));
                        }
                        if images.contains(&image) {
                            return Ok(Some(
                                Counterexample::new("not-faithful", "two 2-cells identified by ;g")
                                    .with_cell(alpha.into()),
                            ));
                        }
                        images.push(image);
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Between any two maps `X → A` there is at most one 2-cell, it is
/// invertible, and it only exists between equal maps.
pub fn check_hom_discreteness(x: &FiniteSet, a: &FiniteSet) -> AxiomReport {
    let subject = format!("maps {} → {} form a discrete category", x.size(), a.size());
    let maps: Vec<Span> = all_functions(x.size(), a.size())
        .iter()
        .map(map_from_function)
        .collect();
    let mut checked = 0;
    for f in &maps {
        for g in &maps {
            checked += 1;
            let cells = morphisms_between(f, g);
            let bad = match cells.as_slice() {
                [] => f == g,
                [only] => !only.is_invertible() || f != g,
                _ => true,
            };
            if bad {
                return AxiomReport::fail(
                    subject,
                    Counterexample::new("not-discrete", format!("{} 2-cells", cells.len()))
                        .with_spans([f, g]),
                );
            }
        }
    }
    AxiomReport::pass(subject, Witness::Exhaustive { checked })
}

/// Separability and the Frobenius condition hold for `A⊗B`, and the unit
/// for `A⊗B` is the tensor of the units for `A` and `B` up to the canonical
/// identification of `(d_A;d_A*)⊗(d_B;d_B*)` with `d_{A⊗B};d_{A⊗B}*`.
pub fn check_closure_properties(a: &FiniteSet, b: &FiniteSet) -> AxiomReport {
    let ab = FiniteSet::new(a.size() * b.size());
    let subject = format!("objects of sizes {} and {} have a discrete product", a.size(), b.size());
    let (sep, frob) = (check_separable(&ab), check_frobenius(&ab));
    let unit = |s: &FiniteSet| {
        make_adjunction(&diagonal_map(s)).expect("diagonal is a map").unit().clone()
    };
    let product_of_units = tensor_morphism(&unit(a), &unit(b));
    let dd = |s: &FiniteSet| {
        let d = diagonal_map(s);
        (d.clone(), opposite(&d))
    };
    let ((da, das), (db, dbs)) = (dd(a), dd(b));
    let agrees = interchange(&da, &das, &db, &dbs).ok().and_then(|mid| {
        let direct = compose_spans(&diagonal_map(&ab), &opposite(&diagonal_map(&ab))).ok()?;
        let rearranged = compose_spans(&tensor(&da, &db), &tensor(&das, &dbs)).ok()?;
        let to_direct = find_iso(&rearranged, &direct)?;
        let via = product_of_units.then(&mid).ok()?.then(&to_direct).ok()?;
        Some(via == unit(&ab))
    });
    let coherence = if agrees == Some(true) {
        AxiomReport::pass("unit of the product", Witness::iso(&unit(&ab)))
    } else {
        AxiomReport::fail(
            "unit of the product",
            Counterexample::new("incoherent", "tensor of units differs from the unit of the product"),
        )
    };
    AxiomReport::all(subject, vec![sep, frob, coherence])
}

/// The five equivalent conditions on an object, each checked by its own
/// procedure. Test spans have apex at most `bound`.
pub fn unit_of_diagonal_invertible(a: &FiniteSet) -> bool {
    let d = diagonal_map(a);
    let unit = make_adjunction(&d).expect("diagonal is a map").unit().clone();
    unit.is_invertible()
}

/// Every map `f: X → A` with `|X| ≤ 2` is its own product with itself via
/// identity projections.
pub fn maps_are_self_products(a: &FiniteSet, bound: usize) -> bool {
    (0..=2).all(|x| {
        all_functions(x, a.size()).iter().all(|f| {
            let f = map_from_function(f);
            let id = SpanMorphism::identity(&f);
            is_product_diagram(&id, &id, bound)
        })
    })
}

pub fn identity_is_self_product(a: &FiniteSet, bound: usize) -> bool {
    let id = SpanMorphism::identity(&id_span(a));
    is_product_diagram(&id, &id, bound)
}

/// The unique 2-cell `1_A ⇒ ⊤` is a monomorphism: two 2-cells into `1_A`
/// from the same test span always coincide.
pub fn identity_to_top_is_mono(a: &FiniteSet, bound: usize) -> bool {
    let one = id_span(a);
    spans_up_to_iso(a.size(), a.size(), bound).iter().all(|t| {
        let mut seen: Option<SpanMorphism> = None;
        let mut ok = true;
        for_each_morphism(t, &one, |m| {
            match &seen {
                Some(prev) => ok = prev == &m,
                None => seen = Some(m),
            }
            ok
        });
        ok
    })
}

/// Every copointed endospan `G` with apex at most 3 is the product of `G`
/// and `1_A` via its identity and its copoint.
pub fn copointed_are_products_with_identity(a: &FiniteSet, bound: usize) -> bool {
    equal_leg_endospans(a.size(), 3).iter().all(|g| {
        let eps = find_copoint(g).expect("equal legs");
        is_product_diagram(&SpanMorphism::identity(g), &eps, bound)
    })
}

pub fn separability_conditions(a: &FiniteSet, bound: usize) -> [bool; 5] {
    [
        unit_of_diagonal_invertible(a),
        maps_are_self_products(a, bound),
        identity_is_self_product(a, bound),
        identity_to_top_is_mono(a, bound),
        copointed_are_products_with_identity(a, bound),
    ]
}

/// Number of 2-cells between two spans; exposed for sweeps.
pub fn cells_between(r: &Span, s: &Span) -> u64 {
    count_morphisms(r, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> FiniteSet {
        FiniteSet::new(n)
    }

    #[test]
    fn separable_examples() {
        for n in 0..4 {
            assert!(check_separable(&set(n)).holds);
        }
        let d = diagonal_map(&set(3));
        assert_eq!(compose_spans(&opposite(&d), &d).unwrap().apex().size(), 3);
        let square = separability_square(&set(2)).unwrap();
        let m = mate(
            &square,
            &make_adjunction(square.top()).unwrap(),
            &make_adjunction(square.bottom()).unwrap(),
        )
        .unwrap();
        assert_eq!(&m, make_adjunction(&d_of(2)).unwrap().unit());
    }

    fn d_of(n: usize) -> Span {
        diagonal_map(&set(n))
    }

    #[test]
    fn frobenius_examples() {
        let m = frobenius_mate(&set(2)).unwrap();
        assert_eq!(m.source().apex().size(), 2);
        assert_eq!(m.target().apex().size(), 2);
        for n in 0..4 {
            assert!(check_frobenius(&set(n)).holds);
            assert!(check_discrete(&set(n)).holds);
        }
    }

    #[test]
    fn beck_examples() {
        let f = |d, c, t: &[usize]| map_from_function(&finset::FiniteFunction::from_table(d, c, t.to_vec()).unwrap());
        let a = f(2, 1, &[0, 0]);
        let b = f(3, 1, &[0, 0, 0]);
        let r = check_beck_pullback(&a, &b).unwrap();
        assert!(r.holds);
        match r.witness.unwrap() {
            Witness::Iso(c) => assert_eq!(c.map.len(), 6),
            other => panic!("unexpected witness {other:?}"),
        }
        let id = map_from_function(&finset::FiniteFunction::identity(&set(2)));
        assert!(check_beck_pullback(&id, &id).unwrap().holds);
    }

    #[test]
    fn comonadic_examples() {
        let f = |d, c, t: &[usize]| map_from_function(&finset::FiniteFunction::from_table(d, c, t.to_vec()).unwrap());
        for g in [f(3, 2, &[0, 1, 1]), f(2, 3, &[0, 2]), f(2, 2, &[0, 1])] {
            let report = check_maps_comonadic(&g, 2).unwrap();
            assert!(report.holds, "{report:?}");
            assert!(report.bounded);
        }
        let id = f(3, 3, &[0, 1, 2]);
        assert_eq!(comonadic_comparison(&id).unwrap().table(), &[0, 1, 2]);
    }

    #[test]
    fn corrupted_witnesses_are_rejected() {
        let a = set(2);
        // A valid unit, then a table that does not commute with the legs.
        let unit = make_adjunction(&d_of(2)).unwrap().unit().map().table().to_vec();
        assert!(judge_separable(&a, unit.clone()).holds);
        let mut bad = unit;
        bad.swap(0, 1);
        let r = judge_separable(&a, bad);
        assert!(!r.holds && r.counterexample.is_some());

        let fill = frobenius_square(&a).unwrap().fill().map().table().to_vec();
        assert!(judge_frobenius(&a, fill.clone()).holds);
        let r = judge_frobenius(&a, vec![fill[1], fill[0]]);
        assert_eq!(r.counterexample.unwrap().kind, "non-commuting-fill");

        let g = map_from_function(&finset::FiniteFunction::from_table(3, 2, vec![0, 1, 1]).unwrap());
        assert!(judge_maps_comonadic(&g, vec![0, 1, 2]).unwrap().holds);
        assert!(!judge_maps_comonadic(&g, vec![0, 0, 2]).unwrap().holds);
    }

    #[test]
    fn hom_discreteness_examples() {
        let r = check_hom_discreteness(&set(2), &set(2));
        assert_eq!(r.witness, Some(Witness::Exhaustive { checked: 16 }));
        assert!(check_hom_discreteness(&set(0), &set(3)).holds);
        assert!(check_hom_discreteness(&set(3), &set(1)).holds);
    }

    #[test]
    fn closure_examples() {
        assert!(check_closure_properties(&set(2), &set(3)).holds);
        assert!(check_closure_properties(&set(2), &set(1)).holds);
        assert!(check_closure_properties(&set(0), &set(0)).holds);
    }

    #[test]
    fn five_conditions_agree() {
        for n in 0..3 {
            assert_eq!(separability_conditions(&set(n), 2), [true; 5]);
        }
    }
}
