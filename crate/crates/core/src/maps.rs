//! Maps (spans with an invertible left leg), their adjunctions, squares of
//! maps filled by 2-cells, pasting, and the mate correspondence.
//!
//! A square is drawn with the map `top: X → Y`, the span `left: X → A`, the
//! span `right: Y → B` and the map `bottom: A → B`; its fill is a 2-cell
//! `left;bottom ⇒ top;right`. The mate of the fill is the 2-cell
//! `top*;left ⇒ right;bottom*` between spans `Y → A`.

use crate::composite::{Cell, Composite, Factor};
use crate::error::{Error, Result};
use crate::finset::{compose_fn, FiniteFunction};
use crate::span::{compose_spans, find_iso, opposite, Span, SpanMorphism};

pub fn is_map(r: &Span) -> bool {
    r.left().is_bijection()
}

/// The graph `X ← X → A` of a function.
pub fn map_from_function(f: &FiniteFunction) -> Span {
    Span::new(FiniteFunction::identity(f.dom()), f.clone()).expect("legs share a domain")
}

/// The function `a∘x⁻¹` of a map `X ←x S →a A`.
pub fn function_from_map(r: &Span) -> Result<FiniteFunction> {
    let inverse = r.left().inverse().map_err(|_| Error::NotAMap)?;
    compose_fn(&inverse, r.right())
}

pub(crate) fn tracked(s: &Span) -> Factor {
    Factor::tracked(s)
}

pub(crate) fn path(spans: &[&Span]) -> Result<Composite> {
    Composite::new(spans.iter().map(|s| tracked(s)).collect())
}

/// The chosen adjunction `f ⊣ f*` of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjunction {
    left: Span,
    right: Span,
    unit: SpanMorphism,
    counit: SpanMorphism,
}

impl Adjunction {
    pub fn left(&self) -> &Span {
        &self.left
    }

    pub fn right(&self) -> &Span {
        &self.right
    }

    /// `η: 1_X ⇒ f;f*`.
    pub fn unit(&self) -> &SpanMorphism {
        &self.unit
    }

    /// `ε: f*;f ⇒ 1_A`.
    pub fn counit(&self) -> &SpanMorphism {
        &self.counit
    }

    pub fn unit_cell(&self) -> Cell {
        Cell::from_morphism(
            &Composite::identity(self.left.src()),
            &path(&[&self.left, &self.right]).expect("f;f* composes"),
            &self.unit,
        )
        .expect("unit runs between the realized composites")
    }

    pub fn counit_cell(&self) -> Cell {
        Cell::from_morphism(
            &path(&[&self.right, &self.left]).expect("f*;f composes"),
            &Composite::identity(self.left.tgt()),
            &self.counit,
        )
        .expect("counit runs between the realized composites")
    }

    /// `f ≅ 1;f ⇒ f;f*;f ⇒ f;1 ≅ f`, which should be the identity.
    pub fn left_triangle(&self) -> Result<Cell> {
        let f = path(&[&self.left])?;
        let start = Composite::new(vec![Factor::identity(self.left.src()), tracked(&self.left)])?;
        let end = Composite::new(vec![tracked(&self.left), Factor::identity(self.left.tgt())])?;
        let eta = self.unit_cell().at(&start, 0)?;
        let eps = self.counit_cell().at(eta.target(), 1)?;
        Cell::canonical(&f, &start)?
            .then(&eta)?
            .then(&eps)?
            .then(&Cell::canonical(&end, &f)?)
    }

    /// `f* ≅ f*;1 ⇒ f*;f;f* ⇒ 1;f* ≅ f*`, which should be the identity.
    pub fn right_triangle(&self) -> Result<Cell> {
        let fs = path(&[&self.right])?;
        let start = Composite::new(vec![tracked(&self.right), Factor::identity(self.left.src())])?;
        let end = Composite::new(vec![Factor::identity(self.left.tgt()), tracked(&self.right)])?;
        let eta = self.unit_cell().at(&start, 1)?;
        let eps = self.counit_cell().at(eta.target(), 0)?;
        Cell::canonical(&fs, &start)?
            .then(&eta)?
            .then(&eps)?
            .then(&Cell::canonical(&end, &fs)?)
    }

    pub fn triangles_hold(&self) -> bool {
        let is_id = |c: Result<Cell>| c.map(|c| c.to_morphism().is_identity()).unwrap_or(false);
        is_id(self.left_triangle()) && is_id(self.right_triangle())
    }
}

pub fn make_adjunction(f: &Span) -> Result<Adjunction> {
    let inverse = f.left().inverse().map_err(|_| Error::NotAMap)?;
    let fs = opposite(f);
    let unit = Cell::from_fn(
        &Composite::identity(f.src()),
        &path(&[f, &fs])?,
        |t| {
            let s = inverse.apply(t[0]);
            vec![s, s]
        },
    )?
    .to_morphism();
    let counit = Cell::from_fn(&path(&[&fs, f])?, &Composite::identity(f.tgt()), |t| {
        vec![f.right().apply(t[0])]
    })?
    .to_morphism();
    Ok(Adjunction {
        left: f.clone(),
        right: fs,
        unit,
        counit,
    })
}

/// A square of spans with maps along the top and bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSquare {
    top: Span,
    left: Span,
    right: Span,
    bottom: Span,
    fill: SpanMorphism,
}

impl GSquare {
    /// `fill: left;bottom ⇒ top;right`.
    pub fn new(top: Span, left: Span, right: Span, bottom: Span, fill: SpanMorphism) -> Result<Self> {
        if !is_map(&top) || !is_map(&bottom) {
            return Err(Error::NotAMap);
        }
        if fill.source() != &compose_spans(&left, &bottom)?
            || fill.target() != &compose_spans(&top, &right)?
        {
            return Err(Error::BoundaryMismatch(
                "fill must run from left;bottom to top;right".into(),
            ));
        }
        Ok(GSquare {
            top,
            left,
            right,
            bottom,
            fill,
        })
    }

    /// Builds a square from an invertible 2-cell `top;right ⇒ left;bottom`.
    pub fn from_reverse_fill(
        top: Span,
        left: Span,
        right: Span,
        bottom: Span,
        reverse: &SpanMorphism,
    ) -> Result<Self> {
        GSquare::new(top, left, right, bottom, reverse.inverse()?)
    }

    /// A square whose fill is the unique 2-cell between the two composites.
    pub fn unique_fill(top: Span, left: Span, right: Span, bottom: Span) -> Result<Self> {
        let source = compose_spans(&left, &bottom)?;
        let target = compose_spans(&top, &right)?;
        let mut found = None;
        let mut count = 0;
        crate::span::for_each_morphism(&source, &target, |m| {
            count += 1;
            found = Some(m);
            count < 2
        });
        match (count, found) {
            (1, Some(fill)) => GSquare::new(top, left, right, bottom, fill),
            (0, _) => Err(Error::NoMediator("the square admits no fill".into())),
            _ => Err(Error::Ambiguous("the square admits several fills".into())),
        }
    }

    pub fn top(&self) -> &Span {
        &self.top
    }

    pub fn left(&self) -> &Span {
        &self.left
    }

    pub fn right(&self) -> &Span {
        &self.right
    }

    pub fn bottom(&self) -> &Span {
        &self.bottom
    }

    pub fn fill(&self) -> &SpanMorphism {
        &self.fill
    }

    pub fn fill_cell(&self) -> Cell {
        Cell::from_morphism(
            &path(&[&self.left, &self.bottom]).expect("left;bottom composes"),
            &path(&[&self.top, &self.right]).expect("top;right composes"),
            &self.fill,
        )
        .expect("fill runs between the realized composites")
    }
}

fn check_adjunctions(square: &GSquare, top: &Adjunction, bottom: &Adjunction) -> Result<()> {
    if top.left() != square.top() || bottom.left() != square.bottom() {
        return Err(Error::BoundaryMismatch(
            "adjunctions do not belong to the square's maps".into(),
        ));
    }
    Ok(())
}

/// The mate `top*;left ⇒ right;bottom*` as a cell between composites.
///
/// `top*;left ≅ top*;left;1 ⇒ top*;left;bottom;bottom* ⇒ top*;top;right;bottom*
/// ⇒ 1;right;bottom* ≅ right;bottom*`.
pub fn mate_cell(square: &GSquare, adj_top: &Adjunction, adj_bottom: &Adjunction) -> Result<Cell> {
    check_adjunctions(square, adj_top, adj_bottom)?;
    let fs = adj_top.right();
    let (u, us) = (adj_bottom.left(), adj_bottom.right());
    let source = path(&[fs, square.left()])?;
    let start = Composite::new(vec![
        tracked(fs),
        tracked(square.left()),
        Factor::identity(u.src()),
    ])?;
    let eta = adj_bottom.unit_cell().at(&start, 2)?;
    let beta = square.fill_cell().at(eta.target(), 1)?;
    let eps = adj_top.counit_cell().at(beta.target(), 0)?;
    let target = path(&[square.right(), us])?;
    Cell::canonical(&source, &start)?
        .then(&eta)?
        .then(&beta)?
        .then(&eps)?
        .then(&Cell::canonical(eps.target(), &target)?)
}

pub fn mate(square: &GSquare, adj_top: &Adjunction, adj_bottom: &Adjunction) -> Result<SpanMorphism> {
    mate_cell(square, adj_top, adj_bottom).map(|c| c.to_morphism())
}

/// Recovers a fill `left;bottom ⇒ top;right` from a 2-cell
/// `gamma: top*;left ⇒ right;bottom*`.
///
/// `left;bottom ≅ 1;left;bottom ⇒ top;top*;left;bottom ⇒ top;right;bottom*;bottom
/// ⇒ top;right;1 ≅ top;right`.
pub fn unmate(
    gamma: &SpanMorphism,
    top: &Adjunction,
    left: &Span,
    right: &Span,
    bottom: &Adjunction,
) -> Result<SpanMorphism> {
    let (f, fs) = (top.left(), top.right());
    let (u, us) = (bottom.left(), bottom.right());
    let gamma = Cell::from_morphism(&path(&[fs, left])?, &path(&[right, us])?, gamma)?;
    let source = path(&[left, u])?;
    let start = Composite::new(vec![Factor::identity(f.src()), tracked(left), tracked(u)])?;
    let eta = top.unit_cell().at(&start, 0)?;
    let g = gamma.at(eta.target(), 1)?;
    let eps = bottom.counit_cell().at(g.target(), 2)?;
    let target = path(&[f, right])?;
    Ok(Cell::canonical(&source, &start)?
        .then(&eta)?
        .then(&g)?
        .then(&eps)?
        .then(&Cell::canonical(eps.target(), &target)?)?
        .to_morphism())
}

/// Transposes a cell `V ⇒ u;R` along `u ⊣ u*` to `u*;V ⇒ R`.
pub fn transpose_left(cell: &Cell, adj: &Adjunction) -> Result<Cell> {
    let u = adj.left();
    let us = adj.right();
    let factors = cell.target().factors();
    if factors.first().map(Factor::span) != Some(u) {
        return Err(Error::BoundaryMismatch(
            "cell target does not start with the map".into(),
        ));
    }
    let rest = Composite::new(factors[1..].to_vec())?;
    let mut start = vec![tracked(us)];
    start.extend_from_slice(cell.source().factors());
    let start = Composite::new(start)?;
    let moved = cell.at(&start, 1)?;
    let eps = adj.counit_cell().at(moved.target(), 0)?;
    moved.then(&eps)?.then(&Cell::canonical(eps.target(), &rest)?)
}

/// Side-by-side pasting: `first` on the left, `second` on the right.
pub fn paste_horizontal(first: &GSquare, second: &GSquare) -> Result<GSquare> {
    if first.right() != second.left() {
        return Err(Error::BoundaryMismatch(
            "adjacent squares must share their vertical side".into(),
        ));
    }
    let source = path(&[first.left(), first.bottom(), second.bottom()])?;
    let one = first.fill_cell().at(&source, 0)?;
    let two = second.fill_cell().at(one.target(), 1)?;
    let fill = one.then(&two)?.to_morphism();
    GSquare::new(
        compose_spans(first.top(), second.top())?,
        first.left().clone(),
        second.right().clone(),
        compose_spans(first.bottom(), second.bottom())?,
        fill,
    )
}

/// Stacked pasting: `upper` above `lower`.
pub fn paste_vertical(upper: &GSquare, lower: &GSquare) -> Result<GSquare> {
    if upper.bottom() != lower.top() {
        return Err(Error::BoundaryMismatch(
            "stacked squares must share their horizontal side".into(),
        ));
    }
    let source = path(&[upper.left(), lower.left(), lower.bottom()])?;
    let two = lower.fill_cell().at(&source, 1)?;
    let one = upper.fill_cell().at(two.target(), 0)?;
    let fill = two.then(&one)?.to_morphism();
    GSquare::new(
        upper.top().clone(),
        compose_spans(upper.left(), lower.left())?,
        compose_spans(upper.right(), lower.right())?,
        lower.bottom().clone(),
        fill,
    )
}

/// Pastes a rectangular grid of squares given row by row, top row first.
pub fn paste(grid: &[Vec<GSquare>]) -> Result<GSquare> {
    let rows = grid
        .iter()
        .map(|row| {
            let (first, rest) = row
                .split_first()
                .ok_or_else(|| Error::Precondition("empty row in grid".into()))?;
            rest.iter()
                .try_fold(first.clone(), |acc, sq| paste_horizontal(&acc, sq))
        })
        .collect::<Result<Vec<_>>>()?;
    let (first, rest) = rows
        .split_first()
        .ok_or_else(|| Error::Precondition("empty grid".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, sq| paste_vertical(&acc, sq))
}

/// If `F;g ≅ h` with `g` and `h` maps, reports whether `F` is a map.
pub fn reflects_map(f: &Span, g: &Span, h: &Span) -> Result<bool> {
    if !is_map(g) || !is_map(h) {
        return Err(Error::Precondition("g and h must be maps".into()));
    }
    if find_iso(&compose_spans(f, g)?, h).is_none() {
        return Err(Error::Precondition("F;g is not isomorphic to h".into()));
    }
    Ok(is_map(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{diagonal, pullback, FiniteSet};
    use crate::span::{id_span, morphisms_between};

    fn func(dom: usize, cod: usize, table: &[usize]) -> FiniteFunction {
        FiniteFunction::from_table(dom, cod, table.to_vec()).unwrap()
    }

    #[test]
    fn map_criterion() {
        let f = func(2, 3, &[2, 0]);
        assert!(is_map(&map_from_function(&f)));
        let collapsed = Span::new(func(2, 1, &[0, 0]), func(2, 1, &[0, 0])).unwrap();
        assert!(!is_map(&collapsed));
        assert!(is_map(&id_span(&FiniteSet::new(3))));
    }

    #[test]
    fn function_round_trip() {
        let id = FiniteFunction::identity(&FiniteSet::new(3));
        assert_eq!(map_from_function(&id), id_span(&FiniteSet::new(3)));
        let r = Span::new(func(3, 3, &[2, 0, 1]), func(3, 2, &[1, 1, 0])).unwrap();
        // a∘x⁻¹: 0 ↦ s=1 ↦ 1, 1 ↦ s=2 ↦ 0, 2 ↦ s=0 ↦ 1
        assert_eq!(function_from_map(&r).unwrap().table(), &[1, 0, 1]);
        let f = func(4, 2, &[1, 0, 0, 1]);
        assert_eq!(function_from_map(&map_from_function(&f)).unwrap(), f);
        assert_eq!(
            function_from_map(&opposite(&map_from_function(&f))),
            Err(Error::NotAMap)
        );
    }

    #[test]
    fn adjunction_examples() {
        let id = id_span(&FiniteSet::new(2));
        let adj = make_adjunction(&id).unwrap();
        assert!(adj.unit().is_invertible() && adj.counit().is_invertible());

        let f = map_from_function(&func(2, 1, &[0, 0]));
        let adj = make_adjunction(&f).unwrap();
        assert_eq!(adj.unit().target().apex().size(), 4);
        assert!(adj.triangles_hold());

        let g = map_from_function(&func(2, 3, &[2, 0]));
        let adj = make_adjunction(&g).unwrap();
        assert!(adj.unit().is_invertible());
        assert!(adj.triangles_hold());
    }

    #[test]
    fn identity_square_has_invertible_mate() {
        let f = map_from_function(&func(3, 2, &[1, 0, 1]));
        let one_x = id_span(f.src());
        let one_y = id_span(f.tgt());
        let square = GSquare::unique_fill(f.clone(), one_x, one_y, f.clone()).unwrap();
        let adj = make_adjunction(&f).unwrap();
        assert!(mate(&square, &adj, &adj).unwrap().is_invertible());
        let bij = map_from_function(&func(2, 2, &[1, 0]));
        let square =
            GSquare::unique_fill(bij.clone(), id_span(bij.src()), id_span(bij.tgt()), bij.clone())
                .unwrap();
        let adj = make_adjunction(&bij).unwrap();
        assert!(mate(&square, &adj, &adj).unwrap().is_invertible());
    }

    #[test]
    fn pullback_square_mate() {
        let a = func(2, 1, &[0, 0]);
        let b = func(3, 1, &[0, 0, 0]);
        let cone = pullback(&a, &b).unwrap();
        let (p, r) = (map_from_function(&cone.legs[0]), map_from_function(&cone.legs[1]));
        let (am, bm) = (map_from_function(&a), map_from_function(&b));
        let square = GSquare::unique_fill(r.clone(), p, bm, am.clone()).unwrap();
        let m = mate(
            &square,
            &make_adjunction(&r).unwrap(),
            &make_adjunction(&am).unwrap(),
        )
        .unwrap();
        assert_eq!(m.source().apex().size(), 6);
        assert!(m.is_invertible());
    }

    #[test]
    fn separability_square_mate_is_the_unit() {
        let a = FiniteSet::new(3);
        let d = map_from_function(&diagonal(&a));
        let one = id_span(&a);
        let square = GSquare::unique_fill(one.clone(), one.clone(), d.clone(), d.clone()).unwrap();
        let adj_d = make_adjunction(&d).unwrap();
        let m = mate(&square, &make_adjunction(&one).unwrap(), &adj_d).unwrap();
        let eta = adj_d.unit();
        assert_eq!(m.target(), eta.target());
        assert_eq!(m.map().table(), eta.map().table());
    }

    #[test]
    fn mate_then_unmate_is_identity() {
        let a = func(2, 2, &[0, 1]);
        let b = func(2, 2, &[1, 1]);
        let cone = pullback(&a, &b).unwrap();
        let (p, r) = (map_from_function(&cone.legs[0]), map_from_function(&cone.legs[1]));
        let (am, bm) = (map_from_function(&a), map_from_function(&b));
        let square = GSquare::unique_fill(r.clone(), p.clone(), bm.clone(), am.clone()).unwrap();
        let (ar, aa) = (make_adjunction(&r).unwrap(), make_adjunction(&am).unwrap());
        let m = mate(&square, &ar, &aa).unwrap();
        let back = unmate(&m, &ar, &p, &bm, &aa).unwrap();
        assert_eq!(&back, square.fill());
    }

    #[test]
    fn stacked_pullback_squares_paste() {
        let m = map_from_function;
        let a = func(2, 1, &[0, 0]);
        let b = func(3, 1, &[0, 0, 0]);
        let c = func(2, 3, &[0, 2]);
        let lower = pullback(&a, &b).unwrap();
        let (p, r) = (&lower.legs[0], &lower.legs[1]);
        let lower_sq = GSquare::unique_fill(m(r), m(p), m(&b), m(&a)).unwrap();
        let upper = pullback(r, &c).unwrap();
        let (q1, q2) = (&upper.legs[0], &upper.legs[1]);
        let upper_sq = GSquare::unique_fill(m(q2), m(q1), m(&c), m(r)).unwrap();
        let rect = paste(&[vec![upper_sq], vec![lower_sq]]).unwrap();
        let direct = GSquare::unique_fill(
            rect.top().clone(),
            rect.left().clone(),
            rect.right().clone(),
            rect.bottom().clone(),
        )
        .unwrap();
        assert_eq!(rect, direct);
        let id_sq = GSquare::unique_fill(
            m(&FiniteFunction::identity(a.dom())),
            id_span(a.dom()),
            id_span(a.dom()),
            m(&FiniteFunction::identity(a.dom())),
        )
        .unwrap();
        let sq = GSquare::unique_fill(m(r), m(p), m(&b), m(&a)).unwrap();
        let pasted = paste_vertical(&paste_horizontal(&id_sq, &id_sq).unwrap(), &id_sq).unwrap();
        assert!(pasted.fill().is_invertible());
        assert!(paste_horizontal(&sq, &id_sq).is_err());
    }

    #[test]
    fn maps_are_subterminal() {
        let f = map_from_function(&func(2, 2, &[1, 1]));
        let g = Span::new(func(3, 2, &[0, 1, 0]), func(3, 2, &[1, 1, 1])).unwrap();
        assert!(morphisms_between(&g, &f).len() <= 1);
    }

    #[test]
    fn reflection_examples() {
        let g = map_from_function(&func(2, 2, &[1, 0]));
        let id = id_span(&FiniteSet::new(2));
        assert!(reflects_map(&id, &g, &g).unwrap());
    }
}
