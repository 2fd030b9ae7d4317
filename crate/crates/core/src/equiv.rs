//! Spans of maps and the comparison with spans.
//!
//! A span of maps `X ←y N →b A` is sent to the span `y*;b`, and a span is
//! sent back to the span of maps read off its tabulation. Both directions
//! are computed by the general constructions, so the round trips and the
//! comparison of composites are genuine checks rather than definitions.

use crate::comonad::tabulate;
use crate::composite::{Cell, Composite, Factor};
use crate::enumerate::{all_functions, spans_up_to_iso};
use crate::error::{Error, Result};
use crate::finset::{self, FiniteFunction, FiniteSet};
use crate::axioms::beck_mate;
use crate::maps::{function_from_map, make_adjunction, map_from_function, path};
use crate::report::{AxiomReport, Counterexample, Witness};
use crate::span::{
    associator, compose_spans, find_iso, id_span, opposite, whisker, whisker_left, Span,
    SpanMorphism,
};

/// A span `X ←y N →b A` in the category of finite sets, kept apart from
/// [`Span`] so the two sides of the comparison are not confused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpan {
    left: FiniteFunction,
    right: FiniteFunction,
}

impl MapSpan {
    pub fn new(left: FiniteFunction, right: FiniteFunction) -> Result<Self> {
        if left.dom() != right.dom() {
            return Err(Error::BoundaryMismatch("legs must share a domain".into()));
        }
        Ok(MapSpan { left, right })
    }

    pub fn identity(x: &FiniteSet) -> Self {
        let id = FiniteFunction::identity(x);
        MapSpan {
            left: id.clone(),
            right: id,
        }
    }

    pub fn left(&self) -> &FiniteFunction {
        &self.left
    }

    pub fn right(&self) -> &FiniteFunction {
        &self.right
    }

    pub fn apex(&self) -> &FiniteSet {
        self.left.dom()
    }

    fn as_span(&self) -> Span {
        Span::new(self.left.clone(), self.right.clone()).expect("legs share a domain")
    }
}

/// An arrow `h: N → N'` of spans of maps with both triangles commuting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpanMorphism {
    source: MapSpan,
    target: MapSpan,
    h: FiniteFunction,
}

impl MapSpanMorphism {
    pub fn new(source: MapSpan, target: MapSpan, h: FiniteFunction) -> Result<Self> {
        if h.dom() != source.apex() || h.cod() != target.apex() {
            return Err(Error::BoundaryMismatch("h must run between the apexes".into()));
        }
        if finset::compose_fn(&h, &target.left)? != source.left
            || finset::compose_fn(&h, &target.right)? != source.right
        {
            return Err(Error::NotACell("h does not commute with the legs".into()));
        }
        Ok(MapSpanMorphism { source, target, h })
    }

    pub fn source(&self) -> &MapSpan {
        &self.source
    }

    pub fn target(&self) -> &MapSpan {
        &self.target
    }

    pub fn h(&self) -> &FiniteFunction {
        &self.h
    }
}

/// `C(y, N, b) = y*;b`, checked against the span with legs `(y, b)`.
pub fn functor_c(ms: &MapSpan) -> Result<Span> {
    let composite = compose_spans(
        &opposite(&map_from_function(&ms.left)),
        &map_from_function(&ms.right),
    )?;
    if find_iso(&composite, &ms.as_span()).is_none() {
        return Err(Error::Precondition(
            "y*;b is not the span with legs (y, b)".into(),
        ));
    }
    Ok(composite)
}

/// `C(h)`, computed through `(yh)*;(bh) ≅ y*;h*;h;b ⇒ y*;b` using the counit
/// of `h ⊣ h*`, and checked to have apex map `h`.
pub fn functor_c_on_2cells(h: &MapSpanMorphism) -> Result<SpanMorphism> {
    let (source, target) = (functor_c(&h.source)?, functor_c(&h.target)?);
    let y = map_from_function(&h.target.left);
    let b = map_from_function(&h.target.right);
    let hm = map_from_function(&h.h);
    let adj = make_adjunction(&hm)?;
    let (ys, hs) = (opposite(&y), adj.right().clone());
    let long = path(&[&ys, &hs, &hm, &b])?;
    let eps = adj.counit_cell().at(&long, 1)?;
    let short = path(&[&ys, &b])?;
    let cell = eps.then(&Cell::canonical(eps.target(), &short)?)?;
    let table: Vec<usize> = h
        .source
        .apex()
        .elements()
        .map(|m| {
            let n = h.h.apply(m);
            let k = long.index_of(&[n, m, m, n]).expect("tuple of the long path");
            short.tuple(cell.map()[k])[0]
        })
        .collect();
    let result = SpanMorphism::from_table(&source, &target, table)?;
    if result.map().table() != h.h.table() {
        return Err(Error::Precondition(
            "the composite 2-cell does not have apex map h".into(),
        ));
    }
    Ok(result)
}

/// `F(R)`, the span of maps read off the tabulation of `R`.
pub fn functor_f(r: &Span) -> Result<MapSpan> {
    let tab = tabulate(r)?;
    MapSpan::new(function_from_map(tab.u())?, function_from_map(tab.v())?)
}

/// `F(α)`: the unique arrow of spans of maps sent to `α` by `C`, found by
/// trying every function between the apexes.
pub fn functor_f_on_2cells(alpha: &SpanMorphism) -> Result<MapSpanMorphism> {
    let (fs, ft) = (functor_f(alpha.source())?, functor_f(alpha.target())?);
    let mut found = Vec::new();
    for h in all_functions(fs.apex().size(), ft.apex().size()) {
        let Ok(m) = MapSpanMorphism::new(fs.clone(), ft.clone(), h) else {
            continue;
        };
        let c = functor_c_on_2cells(&m)?;
        if c.map().table() == alpha.map().table() {
            found.push(m);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one element")),
        0 => Err(Error::NoMediator("no arrow of spans of maps".into())),
        n => Err(Error::Ambiguous(format!("{n} arrows of spans of maps"))),
    }
}

/// An isomorphism of spans of maps, as a bijection of apexes.
pub fn map_span_iso(a: &MapSpan, b: &MapSpan) -> Option<FiniteFunction> {
    find_iso(&a.as_span(), &b.as_span()).map(|iso| iso.map().clone())
}

pub fn check_roundtrips(r: &Span, ms: &MapSpan) -> Result<AxiomReport> {
    let subject = "span and span-of-maps round trips".to_string();
    let cf = functor_c(&functor_f(r)?)?;
    let Some(iso) = find_iso(&cf, r) else {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("no-iso", "C(F(R)) is not isomorphic to R").with_spans([r]),
        ));
    };
    let fc = functor_f(&functor_c(ms)?)?;
    if map_span_iso(&fc, ms).is_none() {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("no-iso", "F(C(M)) is not isomorphic to M")
                .with_spans([&ms.as_span()]),
        ));
    }
    Ok(AxiomReport::pass(subject, Witness::iso(&iso)))
}

/// Composite of spans of maps by pullback, with the projections of the
/// pullback onto the two apexes.
pub fn compose_map_spans(
    m1: &MapSpan,
    m2: &MapSpan,
) -> Result<(MapSpan, FiniteFunction, FiniteFunction)> {
    if m1.right.cod() != m2.left.cod() {
        return Err(Error::BoundaryMismatch(
            "spans of maps are not composable".into(),
        ));
    }
    // pullback of y2 and b1, so that the Beck 2-cell lands on b1;y2*
    let pb = finset::pullback(&m2.left, &m1.right)?;
    let (to2, to1) = (pb.legs[0].clone(), pb.legs[1].clone());
    let composite = MapSpan::new(
        finset::compose_fn(&to1, &m1.left)?,
        finset::compose_fn(&to2, &m2.right)?,
    )?;
    Ok((composite, to1, to2))
}

/// The comparison `C(M1);C(M2) ⇒ C(M1;M2)` built from the inverse of the
/// Beck 2-cell of the pullback square.
pub fn composition_comparison(m1: &MapSpan, m2: &MapSpan) -> Result<SpanMorphism> {
    let (c1, c2) = (functor_c(m1)?, functor_c(m2)?);
    let (m12, to1, to2) = compose_map_spans(m1, m2)?;
    let y1s = opposite(&map_from_function(&m1.left));
    let b1 = map_from_function(&m1.right);
    let y2s = opposite(&map_from_function(&m2.left));
    let b2 = map_from_function(&m2.right);
    let (rs, p) = (opposite(&map_from_function(&to1)), map_from_function(&to2));

    let pair = Composite::new(vec![Factor::plain(&c1), Factor::plain(&c2)])?;
    let long = path(&[&y1s, &b1, &y2s, &b2])?;
    let spread = Cell::from_fn(&pair, &long, |t| vec![t[0], t[0], t[1], t[1]])?;
    let beck = beck_mate(&map_from_function(&m2.left), &b1)?;
    let beck_inv = Cell::from_morphism(&path(&[&b1, &y2s])?, &path(&[&rs, &p])?, &beck.inverse()?)?;
    let moved = beck_inv.at(&long, 1)?;
    let target = Composite::new(vec![
        Factor::plain(&opposite(&map_from_function(&m12.left))),
        Factor::plain(&map_from_function(&m12.right)),
    ])?;
    let fold = Cell::from_fn(moved.target(), &target, |t| vec![t[1], t[2]])?;
    let cell = spread.then(&moved)?.then(&fold)?.to_morphism();
    let expected = functor_c(&m12)?;
    if cell.target() != &expected {
        return Err(Error::Precondition("comparison lands outside C(M1;M2)".into()));
    }
    Ok(cell)
}

/// The comparison sending a compatible pair `(n1, n2)` straight to the
/// pullback element over it.
fn direct_comparison(m1: &MapSpan, m2: &MapSpan) -> Result<SpanMorphism> {
    let (c1, c2) = (functor_c(m1)?, functor_c(m2)?);
    let (m12, to1, to2) = compose_map_spans(m1, m2)?;
    let pair = Composite::new(vec![Factor::plain(&c1), Factor::plain(&c2)])?;
    let table = (0..pair.size())
        .map(|k| {
            let t = pair.tuple(k);
            m12.apex()
                .elements()
                .find(|&q| to1.apply(q) == t[0] && to2.apply(q) == t[1])
                .ok_or_else(|| Error::NoMediator("pair missing from the pullback".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    SpanMorphism::from_table(pair.span(), &functor_c(&m12)?, table)
}

pub fn check_pseudofunctoriality(m1: &MapSpan, m2: &MapSpan) -> Result<AxiomReport> {
    let subject = "composition of spans of maps is preserved".to_string();
    let via_beck = composition_comparison(m1, m2)?;
    let composed = compose_spans(&functor_c(m1)?, &functor_c(m2)?)?;
    let (m12, _, _) = compose_map_spans(m1, m2)?;
    if find_iso(&composed, &functor_c(&m12)?).is_none() {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("no-iso", "C(M1);C(M2) and C(M1;M2) differ"),
        ));
    }
    if !via_beck.is_invertible() || via_beck != direct_comparison(m1, m2)? {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("incoherent", "comparison differs from the Beck-induced one")
                .with_cell((&via_beck).into()),
        ));
    }
    Ok(AxiomReport::pass(subject, Witness::iso(&via_beck)))
}

/// Elements of `(M1;M2);M3` or `M1;(M2;M3)` labelled by the triple of apex
/// elements they lie over.
fn triples_left(m1: &MapSpan, m2: &MapSpan, m3: &MapSpan) -> Result<(MapSpan, Vec<[usize; 3]>)> {
    let (m12, a1, a2) = compose_map_spans(m1, m2)?;
    let (all, b12, b3) = compose_map_spans(&m12, m3)?;
    let labels = all
        .apex()
        .elements()
        .map(|q| {
            let p = b12.apply(q);
            [a1.apply(p), a2.apply(p), b3.apply(q)]
        })
        .collect();
    Ok((all, labels))
}

fn triples_right(m1: &MapSpan, m2: &MapSpan, m3: &MapSpan) -> Result<(MapSpan, Vec<[usize; 3]>)> {
    let (m23, a2, a3) = compose_map_spans(m2, m3)?;
    let (all, b1, b23) = compose_map_spans(m1, &m23)?;
    let labels = all
        .apex()
        .elements()
        .map(|q| {
            let p = b23.apply(q);
            [b1.apply(q), a2.apply(p), a3.apply(p)]
        })
        .collect();
    Ok((all, labels))
}

/// Both ways of comparing `C(M1);C(M2);C(M3)` with the triple composite
/// agree once the associators on each side are taken into account.
pub fn check_triple_coherence(m1: &MapSpan, m2: &MapSpan, m3: &MapSpan) -> Result<AxiomReport> {
    let subject = "comparison is coherent on a triple composite".to_string();
    let (c1, c2, c3) = (functor_c(m1)?, functor_c(m2)?, functor_c(m3)?);
    let (m12, _, _) = compose_map_spans(m1, m2)?;
    let (m23, _, _) = compose_map_spans(m2, m3)?;

    let route_a = whisker(&composition_comparison(m1, m2)?, &c3)?
        .then(&composition_comparison(&m12, m3)?)?;
    let route_b = associator(&c1, &c2, &c3)?
        .cell()
        .then(&whisker_left(&c1, &composition_comparison(m2, m3)?)?)?
        .then(&composition_comparison(m1, &m23)?)?;

    let (left, left_labels) = triples_left(m1, m2, m3)?;
    let (right, right_labels) = triples_right(m1, m2, m3)?;
    let table = right_labels
        .iter()
        .map(|l| left_labels.iter().position(|x| x == l).expect("same triples"))
        .collect();
    let assoc = SpanMorphism::from_table(&functor_c(&right)?, &functor_c(&left)?, table)?;
    if route_b.then(&assoc)? == route_a {
        Ok(AxiomReport::pass(subject, Witness::iso(&route_a)))
    } else {
        Ok(AxiomReport::fail(
            subject,
            Counterexample::new("incoherent", "the two routes differ").with_cell((&route_a).into()),
        ))
    }
}

/// `C` preserves identities: `C(1_X) ≅ 1_X`.
pub fn check_identity_preserved(x: &FiniteSet) -> AxiomReport {
    let subject = format!("identity on an object of size {} is preserved", x.size());
    match functor_c(&MapSpan::identity(x))
        .ok()
        .and_then(|c| find_iso(&c, &id_span(x)))
    {
        Some(iso) => AxiomReport::pass(subject, Witness::iso(&iso)),
        None => AxiomReport::fail(subject, Counterexample::new("no-iso", "C(1) is not 1")),
    }
}

/// `C` is a bijection on isomorphism classes of spans `X → A` with apex at
/// most `bound`.
pub fn check_local_equivalence(x: usize, a: usize, bound: usize) -> Result<AxiomReport> {
    let subject = format!("C is bijective on classes of spans {x} → {a} (apex up to {bound})");
    let classes = spans_up_to_iso(x, a, bound);
    for (i, rep) in classes.iter().enumerate() {
        let ms = MapSpan::new(rep.left().clone(), rep.right().clone())?;
        let image = functor_c(&ms)?;
        let hits: Vec<usize> = classes
            .iter()
            .enumerate()
            .filter(|(_, s)| find_iso(&image, s).is_some())
            .map(|(j, _)| j)
            .collect();
        if hits != [i] {
            return Ok(AxiomReport::fail(
                subject,
                Counterexample::new("not-bijective", format!("class {i} lands on {hits:?}"))
                    .with_spans([rep]),
            )
            .bounded());
        }
    }
    Ok(AxiomReport::pass(subject, Witness::Exhaustive { checked: classes.len() }).bounded())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn func(d: usize, c: usize, t: &[usize]) -> FiniteFunction {
        FiniteFunction::from_table(d, c, t.to_vec()).unwrap()
    }

    #[test]
    fn functor_c_examples() {
        let x = FiniteSet::new(3);
        assert!(find_iso(&functor_c(&MapSpan::identity(&x)).unwrap(), &id_span(&x)).is_some());
        let b = func(3, 2, &[1, 0, 1]);
        let graph = MapSpan::new(FiniteFunction::identity(&x), b.clone()).unwrap();
        assert_eq!(functor_c(&graph).unwrap(), map_from_function(&b));
        let ms = MapSpan::new(func(4, 2, &[0, 0, 1, 1]), func(4, 3, &[0, 1, 2, 2])).unwrap();
        assert_eq!(functor_c(&ms).unwrap().apex().size(), 4);
    }

    #[test]
    fn two_cell_examples() {
        let target = MapSpan::new(func(1, 2, &[0]), func(1, 2, &[1])).unwrap();
        let source = MapSpan::new(func(2, 2, &[0, 0]), func(2, 2, &[1, 1])).unwrap();
        let h = MapSpanMorphism::new(source.clone(), target, func(2, 1, &[0, 0])).unwrap();
        let c = functor_c_on_2cells(&h).unwrap();
        assert_eq!(c.map().table(), &[0, 0]);
        let id = MapSpanMorphism::new(source.clone(), source.clone(), func(2, 2, &[0, 1])).unwrap();
        assert!(functor_c_on_2cells(&id).unwrap().is_identity());
        let swap = MapSpanMorphism::new(source.clone(), source, func(2, 2, &[1, 0])).unwrap();
        assert!(functor_c_on_2cells(&swap).unwrap().is_invertible());
    }

    #[test]
    fn functor_f_examples() {
        let x = FiniteSet::new(2);
        assert_eq!(functor_f(&id_span(&x)).unwrap(), MapSpan::identity(&x));
        let top = Span::new(
            finset::product(&x, &FiniteSet::new(3)).proj1,
            finset::product(&x, &FiniteSet::new(3)).proj2,
        )
        .unwrap();
        let f = functor_f(&top).unwrap();
        assert_eq!(f.apex().size(), 6);
    }

    #[test]
    fn roundtrip_and_composition_examples() {
        let r = Span::from_tables(2, 3, vec![0, 1, 1], vec![2, 2, 0]).unwrap();
        let ms = MapSpan::new(func(4, 2, &[0, 1, 1, 0]), func(4, 2, &[1, 1, 0, 0])).unwrap();
        assert!(check_roundtrips(&r, &ms).unwrap().holds);
        let m2 = MapSpan::new(func(3, 2, &[0, 1, 1]), func(3, 1, &[0, 0, 0])).unwrap();
        assert!(check_pseudofunctoriality(&ms, &m2).unwrap().holds);
        let m0 = MapSpan::new(func(2, 3, &[0, 2]), func(2, 2, &[1, 0])).unwrap();
        assert!(check_triple_coherence(&m0, &ms, &m2).unwrap().holds);
        let alpha = SpanMorphism::identity(&r);
        assert!(functor_f_on_2cells(&alpha).unwrap().h().table() == [0, 1, 2]);
    }

    #[test]
    fn local_equivalence() {
        assert!(check_local_equivalence(2, 2, 3).unwrap().holds);
        assert!(check_identity_preserved(&FiniteSet::new(3)).holds);
    }
}
