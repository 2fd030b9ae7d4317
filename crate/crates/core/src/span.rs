//! Spans of finite sets as 1-cells and span morphisms as 2-cells.
//!
//! A span `X ← S → A` is stored by its two legs; composition is by pullback of
//! the adjacent legs. Throughout the crate `compose_spans(r, t)` means "`r`
//! first, then `t`", so the composite of `r: X → A` and `t: A → B` is a span
//! `X → B`. Composition is associative and unital only up to the canonical
//! isomorphisms provided here.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{
    self, compose_fn, decode_pair, encode_pair, product_map, Cone, FiniteFunction, FiniteSet,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Span {
    left: FiniteFunction,
    right: FiniteFunction,
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} <-{:?}- {:?} -{:?}-> {:?}",
            self.src(),
            self.left.table(),
            self.apex(),
            self.right.table(),
            self.tgt()
        )
    }
}

impl Span {
    pub fn new(left: FiniteFunction, right: FiniteFunction) -> Result<Self> {
        if left.dom() != right.dom() {
            return Err(Error::BoundaryMismatch(
                "the legs of a span must share their domain".into(),
            ));
        }
        Ok(Span { left, right })
    }

    /// Convenience constructor from sizes and tables.
    pub fn from_tables(src: usize, tgt: usize, left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        let apex = left.len();
        Span::new(
            FiniteFunction::from_table(apex, src, left)?,
            FiniteFunction::from_table(apex, tgt, right)?,
        )
    }

    pub fn src(&self) -> &FiniteSet {
        self.left.cod()
    }

    pub fn tgt(&self) -> &FiniteSet {
        self.right.cod()
    }

    pub fn apex(&self) -> &FiniteSet {
        self.left.dom()
    }

    pub fn left(&self) -> &FiniteFunction {
        &self.left
    }

    pub fn right(&self) -> &FiniteFunction {
        &self.right
    }

    pub fn is_endo(&self) -> bool {
        self.src() == self.tgt()
    }

    /// Leg values of an apex element.
    pub fn legs_at(&self, s: usize) -> (usize, usize) {
        (self.left.apply(s), self.right.apply(s))
    }
}

pub fn id_span(a: &FiniteSet) -> Span {
    let id = FiniteFunction::identity(a);
    Span {
        left: id.clone(),
        right: id,
    }
}

/// Composite together with the pullback cone it was built from.
pub(crate) fn compose_with_cone(r: &Span, t: &Span) -> Result<(Span, Cone)> {
    if r.tgt() != t.src() {
        return Err(Error::BoundaryMismatch(format!(
            "cannot compose a span into {:?} with a span out of {:?}",
            r.tgt(),
            t.src()
        )));
    }
    let cone = finset::pullback(&r.right, &t.left)?;
    let span = Span {
        left: compose_fn(&cone.legs[0], &r.left)?,
        right: compose_fn(&cone.legs[1], &t.right)?,
    };
    Ok((span, cone))
}

/// `r` followed by `t`.
pub fn compose_spans(r: &Span, t: &Span) -> Result<Span> {
    compose_with_cone(r, t).map(|(span, _)| span)
}

/// Composite of a non-empty path of spans, associated to the left.
pub fn compose_path(path: &[Span]) -> Result<Span> {
    let (first, rest) = path
        .split_first()
        .ok_or_else(|| Error::Precondition("empty path".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, next| compose_spans(&acc, next))
}

/// The product span `X×Y ← S×T → A×B`.
pub fn tensor(r: &Span, t: &Span) -> Span {
    Span {
        left: product_map(&r.left, &t.left),
        right: product_map(&r.right, &t.right),
    }
}

pub fn tensor_all(spans: &[Span]) -> Span {
    spans
        .iter()
        .skip(1)
        .fold(spans[0].clone(), |acc, s| tensor(&acc, s))
}

/// Swaps the legs.
pub fn opposite(r: &Span) -> Span {
    Span {
        left: r.right.clone(),
        right: r.left.clone(),
    }
}

/// A function between apexes commuting with both legs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpanMorphism {
    source: Span,
    target: Span,
    map: FiniteFunction,
}

impl fmt::Debug for SpanMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} : {:?} => {:?}", self.map.table(), self.source, self.target)
    }
}

impl SpanMorphism {
    pub fn new(source: Span, target: Span, map: FiniteFunction) -> Result<Self> {
        if source.src() != target.src() || source.tgt() != target.tgt() {
            return Err(Error::NotACell(
                "source and target spans are not parallel".into(),
            ));
        }
        if map.dom() != source.apex() || map.cod() != target.apex() {
            return Err(Error::NotACell(
                "apex map does not run between the two apexes".into(),
            ));
        }
        if let Some(s) = source
            .apex()
            .elements()
            .find(|&s| target.legs_at(map.apply(s)) != source.legs_at(s))
        {
            return Err(Error::NotACell(format!(
                "apex element {s} is sent to {} but the legs disagree",
                map.apply(s)
            )));
        }
        Ok(SpanMorphism {
            source,
            target,
            map,
        })
    }

    /// Validates a raw table as a 2-cell.
    pub fn from_table(source: &Span, target: &Span, table: Vec<usize>) -> Result<Self> {
        let map = FiniteFunction::new(source.apex().clone(), target.apex().clone(), table)?;
        SpanMorphism::new(source.clone(), target.clone(), map)
    }

    pub(crate) fn new_unchecked(source: Span, target: Span, map: FiniteFunction) -> Self {
        debug_assert!(SpanMorphism::new(source.clone(), target.clone(), map.clone()).is_ok());
        SpanMorphism {
            source,
            target,
            map,
        }
    }

    pub fn identity(r: &Span) -> Self {
        SpanMorphism {
            source: r.clone(),
            target: r.clone(),
            map: FiniteFunction::identity(r.apex()),
        }
    }

    pub fn source(&self) -> &Span {
        &self.source
    }

    pub fn target(&self) -> &Span {
        &self.target
    }

    pub fn map(&self) -> &FiniteFunction {
        &self.map
    }

    pub fn is_invertible(&self) -> bool {
        self.map.is_bijection()
    }

    pub fn inverse(&self) -> Result<SpanMorphism> {
        Ok(SpanMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            map: self.map.inverse()?,
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SpanMorphism) -> Result<SpanMorphism> {
        vertical_compose(self, next)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map == FiniteFunction::identity(self.source.apex())
    }
}

/// A 2-cell known to be invertible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalIso(SpanMorphism);

impl CanonicalIso {
    pub fn new(cell: SpanMorphism) -> Result<Self> {
        if cell.is_invertible() {
            Ok(CanonicalIso(cell))
        } else {
            Err(Error::NotBijection)
        }
    }

    pub fn identity(r: &Span) -> Self {
        CanonicalIso(SpanMorphism::identity(r))
    }

    pub fn cell(&self) -> &SpanMorphism {
        &self.0
    }

    pub fn into_cell(self) -> SpanMorphism {
        self.0
    }

    pub fn inverse(&self) -> CanonicalIso {
        CanonicalIso(self.0.inverse().expect("canonical isos are bijective"))
    }
}

impl std::ops::Deref for CanonicalIso {
    type Target = SpanMorphism;

    fn deref(&self) -> &SpanMorphism {
        &self.0
    }
}

/// `alpha` followed by `beta`.
pub fn vertical_compose(alpha: &SpanMorphism, beta: &SpanMorphism) -> Result<SpanMorphism> {
    if alpha.target != beta.source {
        return Err(Error::BoundaryMismatch(
            "vertical composition needs matching middle spans".into(),
        ));
    }
    Ok(SpanMorphism {
        source: alpha.source.clone(),
        target: beta.target.clone(),
        map: compose_fn(&alpha.map, &beta.map)?,
    })
}

/// Horizontal composite of `alpha: R ⇒ R'` (on `X → A`) and `beta: T ⇒ T'`
/// (on `A → B`), a 2-cell `R;T ⇒ R';T'`.
pub fn horizontal(alpha: &SpanMorphism, beta: &SpanMorphism) -> Result<SpanMorphism> {
    let (source, source_cone) = compose_with_cone(&alpha.source, &beta.source)?;
    let (target, target_cone) = compose_with_cone(&alpha.target, &beta.target)?;
    let map = target_cone.mediate(&[
        compose_fn(&source_cone.legs[0], &alpha.map)?,
        compose_fn(&source_cone.legs[1], &beta.map)?,
    ])?;
    Ok(SpanMorphism {
        source,
        target,
        map,
    })
}

/// `alpha: R ⇒ R'` followed by the span `t`, giving `R;t ⇒ R';t`.
pub fn whisker(alpha: &SpanMorphism, t: &Span) -> Result<SpanMorphism> {
    horizontal(alpha, &SpanMorphism::identity(t))
}

/// The span `t` followed by `alpha: R ⇒ R'`, giving `t;R ⇒ t;R'`.
pub fn whisker_left(t: &Span, alpha: &SpanMorphism) -> Result<SpanMorphism> {
    horizontal(&SpanMorphism::identity(t), alpha)
}

/// `1_X ; R ≅ R`.
pub fn left_unitor(r: &Span) -> CanonicalIso {
    let (source, cone) = compose_with_cone(&id_span(r.src()), r).expect("identity composes");
    CanonicalIso(SpanMorphism::new_unchecked(source, r.clone(), cone.legs[1].clone()))
}

/// `R ; 1_A ≅ R`.
pub fn right_unitor(r: &Span) -> CanonicalIso {
    let (source, cone) = compose_with_cone(r, &id_span(r.tgt())).expect("identity composes");
    CanonicalIso(SpanMorphism::new_unchecked(source, r.clone(), cone.legs[0].clone()))
}

/// `(R;S);T ≅ R;(S;T)`.
pub fn associator(r: &Span, s: &Span, t: &Span) -> Result<CanonicalIso> {
    let (rs, rs_cone) = compose_with_cone(r, s)?;
    let (source, outer) = compose_with_cone(&rs, t)?;
    let (st, st_cone) = compose_with_cone(s, t)?;
    let (target, target_cone) = compose_with_cone(r, &st)?;
    // ((r, s), t) ↦ (r, (s, t))
    let to_r = compose_fn(&outer.legs[0], &rs_cone.legs[0])?;
    let to_s = compose_fn(&outer.legs[0], &rs_cone.legs[1])?;
    let to_st = st_cone.mediate(&[to_s, outer.legs[1].clone()])?;
    let map = target_cone.mediate(&[to_r, to_st])?;
    CanonicalIso::new(SpanMorphism::new(source, target, map)?)
}

pub fn tensor_morphism(alpha: &SpanMorphism, beta: &SpanMorphism) -> SpanMorphism {
    SpanMorphism {
        source: tensor(&alpha.source, &beta.source),
        target: tensor(&alpha.target, &beta.target),
        map: product_map(&alpha.map, &beta.map),
    }
}

/// A 2-cell `R ⇒ R'` is also a 2-cell between the opposite spans.
pub fn opposite_morphism(alpha: &SpanMorphism) -> SpanMorphism {
    SpanMorphism {
        source: opposite(&alpha.source),
        target: opposite(&alpha.target),
        map: alpha.map.clone(),
    }
}

/// The middle-four interchange `(R;S)⊗(R';S') ≅ (R⊗R');(S⊗S')`.
pub fn interchange(r: &Span, s: &Span, r2: &Span, s2: &Span) -> Result<CanonicalIso> {
    let (rs, rs_cone) = compose_with_cone(r, s)?;
    let (rs2, rs2_cone) = compose_with_cone(r2, s2)?;
    let source = tensor(&rs, &rs2);
    let (target, cone) = compose_with_cone(&tensor(r, r2), &tensor(s, s2))?;
    let n = rs2.apex().size();
    let (nr2, ns2) = (r2.apex().size(), s2.apex().size());
    let first: Vec<usize> = source
        .apex()
        .elements()
        .map(|k| {
            let (i, j) = decode_pair(k, n);
            encode_pair(rs_cone.legs[0].apply(i), rs2_cone.legs[0].apply(j), nr2)
        })
        .collect();
    let second: Vec<usize> = source
        .apex()
        .elements()
        .map(|k| {
            let (i, j) = decode_pair(k, n);
            encode_pair(rs_cone.legs[1].apply(i), rs2_cone.legs[1].apply(j), ns2)
        })
        .collect();
    let map = cone.mediate(&[
        FiniteFunction::new(source.apex().clone(), cone.legs[0].cod().clone(), first)?,
        FiniteFunction::new(source.apex().clone(), cone.legs[1].cod().clone(), second)?,
    ])?;
    CanonicalIso::new(SpanMorphism::new(source, target, map)?)
}

fn fibers(r: &Span) -> HashMap<(usize, usize), Vec<usize>> {
    let mut fibers: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for s in r.apex().elements() {
        fibers.entry(r.legs_at(s)).or_default().push(s);
    }
    fibers
}

/// Searches for an invertible 2-cell `r ⇒ r2`.
///
/// A bijection commuting with both legs exists exactly when every fiber of
/// `(left, right)` has the same size on both sides, so the search pairs the
/// fibers off in order rather than trying all bijections of the apex.
pub fn find_iso(r: &Span, r2: &Span) -> Option<CanonicalIso> {
    if r.src() != r2.src() || r.tgt() != r2.tgt() || r.apex().size() != r2.apex().size() {
        return None;
    }
    let mut target_fibers = fibers(r2);
    let mut next: HashMap<(usize, usize), usize> = HashMap::new();
    let mut table = Vec::with_capacity(r.apex().size());
    for s in r.apex().elements() {
        let key = r.legs_at(s);
        let fiber = target_fibers.get_mut(&key)?;
        let k = next.entry(key).or_insert(0);
        table.push(*fiber.get(*k)?);
        *k += 1;
    }
    if next
        .iter()
        .any(|(key, &used)| target_fibers[key].len() != used)
    {
        return None;
    }
    target_fibers.clear();
    let map = FiniteFunction::new(r.apex().clone(), r2.apex().clone(), table).ok()?;
    Some(CanonicalIso(SpanMorphism::new_unchecked(
        r.clone(),
        r2.clone(),
        map,
    )))
}

/// Number of 2-cells `r ⇒ r2`, saturating.
pub fn count_morphisms(r: &Span, r2: &Span) -> u64 {
    if r.src() != r2.src() || r.tgt() != r2.tgt() {
        return 0;
    }
    let target_fibers = fibers(r2);
    r.apex().elements().fold(1u64, |acc, s| {
        let n = target_fibers.get(&r.legs_at(s)).map_or(0, Vec::len) as u64;
        acc.saturating_mul(n)
    })
}

/// Calls `visit` on every 2-cell `r ⇒ r2`, stopping early if it returns
/// `false`.
pub fn for_each_morphism(r: &Span, r2: &Span, mut visit: impl FnMut(SpanMorphism) -> bool) {
    if r.src() != r2.src() || r.tgt() != r2.tgt() {
        return;
    }
    let target_fibers = fibers(r2);
    let empty = Vec::new();
    let choices: Vec<&Vec<usize>> = r
        .apex()
        .elements()
        .map(|s| target_fibers.get(&r.legs_at(s)).unwrap_or(&empty))
        .collect();
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut odometer = vec![0usize; choices.len()];
    loop {
        let table = odometer
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i])
            .collect();
        let map = FiniteFunction::new(r.apex().clone(), r2.apex().clone(), table)
            .expect("fiber choices are in range");
        if !visit(SpanMorphism::new_unchecked(r.clone(), r2.clone(), map)) {
            return;
        }
        let mut pos = 0;
        loop {
            if pos == odometer.len() {
                return;
            }
            odometer[pos] += 1;
            if odometer[pos] < choices[pos].len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

/// Every 2-cell `r ⇒ r2`, found by exhaustive search over fiber choices.
pub fn morphisms_between(r: &Span, r2: &Span) -> Vec<SpanMorphism> {
    let mut all = Vec::new();
    for_each_morphism(r, r2, |m| {
        all.push(m);
        true
    });
    all
}
