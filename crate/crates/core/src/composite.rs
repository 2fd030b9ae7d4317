//! Paths of spans and 2-cells between them.
//!
//! Pasting diagrams in a bicategory involve many structural isomorphisms
//! (associators, unitors, and identifications such as `1;R ≅ R`). Here a
//! composite is kept as a path of factors whose apex is the set of compatible
//! tuples, so associators are literally identities. Each apex element of a
//! factor carries a *content* record; a structural identification between two
//! composites is the unique leg-preserving map that also preserves content.
//! Structural factors (identities, diagonals) carry no content, tracked factors
//! record which of their own apex elements was used.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::finset::{decode_pair, encode_pair, FiniteFunction, FiniteSet};
use crate::span::{compose_path, id_span, tensor, Span, SpanMorphism};

pub type Tag = u64;

pub fn tag_of(span: &Span) -> Tag {
    let mut hasher = DefaultHasher::new();
    span.hash(&mut hasher);
    hasher.finish()
}

#[derive(Clone, PartialEq, Eq)]
pub struct Factor {
    span: Span,
    content: Vec<Vec<(Tag, usize)>>,
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.span)
    }
}

impl Factor {
    /// A factor whose apex elements carry no identity of their own.
    pub fn plain(span: &Span) -> Self {
        Factor {
            span: span.clone(),
            content: vec![Vec::new(); span.apex().size()],
        }
    }

    /// A factor whose apex elements are remembered under the span's own tag.
    pub fn tracked(span: &Span) -> Self {
        Factor::atom(span, tag_of(span))
    }

    pub fn atom(span: &Span, tag: Tag) -> Self {
        Factor {
            span: span.clone(),
            content: span.apex().elements().map(|s| vec![(tag, s)]).collect(),
        }
    }

    pub fn identity(set: &FiniteSet) -> Self {
        Factor::plain(&id_span(set))
    }

    pub fn tensor(a: &Factor, b: &Factor) -> Self {
        let span = tensor(&a.span, &b.span);
        let content = span
            .apex()
            .elements()
            .map(|k| {
                let (i, j) = decode_pair(k, b.span.apex().size());
                let mut c = a.content[i].clone();
                c.extend_from_slice(&b.content[j]);
                c
            })
            .collect();
        Factor { span, content }
    }

    pub fn tensor_all(factors: &[Factor]) -> Self {
        factors
            .iter()
            .skip(1)
            .fold(factors[0].clone(), |acc, f| Factor::tensor(&acc, f))
    }

    pub fn span(&self) -> &Span {
        &self.span
    }
}

/// A non-empty path of factors, read left to right.
#[derive(Clone)]
pub struct Composite {
    factors: Vec<Factor>,
    span: Span,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl PartialEq for Composite {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for Composite {}

impl fmt::Debug for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.factors).finish()
    }
}

impl Composite {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Precondition("a composite needs at least one factor".into()));
        }
        let spans: Vec<Span> = factors.iter().map(|f| f.span.clone()).collect();
        let span = compose_path(&spans)?;
        let fibers: Vec<Vec<Vec<usize>>> = spans
            .iter()
            .map(|s| {
                let mut by_left = vec![Vec::new(); s.src().size()];
                for e in s.apex().elements() {
                    by_left[s.left().apply(e)].push(e);
                }
                by_left
            })
            .collect();
        let mut tuples = Vec::with_capacity(span.apex().size());
        let mut current = Vec::with_capacity(spans.len());
        for e in spans[0].apex().elements() {
            current.push(e);
            extend(&spans, &fibers, &mut current, &mut tuples);
            current.pop();
        }
        debug_assert_eq!(tuples.len(), span.apex().size());
        let index = tuples
            .iter()
            .enumerate()
            .map(|(k, t)| (t.clone(), k))
            .collect();
        Ok(Composite {
            factors,
            span,
            tuples,
            index,
        })
    }

    pub fn single(factor: Factor) -> Self {
        Composite::new(vec![factor]).expect("a single factor always composes")
    }

    pub fn identity(set: &FiniteSet) -> Self {
        Composite::single(Factor::identity(set))
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The realized composite span, equal to the nested pullback composite.
    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn size(&self) -> usize {
        self.tuples.len()
    }

    pub fn tuple(&self, k: usize) -> &[usize] {
        &self.tuples[k]
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    pub fn content(&self, k: usize) -> Vec<(Tag, usize)> {
        self.tuples[k]
            .iter()
            .zip(&self.factors)
            .flat_map(|(&e, f)| f.content[e].iter().copied())
            .collect()
    }

    pub fn then(&self, other: &Composite) -> Result<Composite> {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Composite::new(factors)
    }

    /// Replaces `len` factors starting at `start`.
    pub fn splice(&self, start: usize, len: usize, replacement: &[Factor]) -> Result<Composite> {
        if start + len > self.factors.len() {
            return Err(Error::Precondition("splice range out of bounds".into()));
        }
        let mut factors = self.factors[..start].to_vec();
        factors.extend_from_slice(replacement);
        factors.extend_from_slice(&self.factors[start + len..]);
        Composite::new(factors)
    }

    /// The whole path as one factor, keeping the content of every tuple.
    pub fn collapse(&self) -> Factor {
        Factor {
            span: self.span.clone(),
            content: (0..self.size()).map(|k| self.content(k)).collect(),
        }
    }
}

fn extend(
    spans: &[Span],
    fibers: &[Vec<Vec<usize>>],
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let depth = current.len();
    if depth == spans.len() {
        out.push(current.clone());
        return;
    }
    let meet = spans[depth - 1].right().apply(current[depth - 1]);
    for &e in &fibers[depth][meet] {
        current.push(e);
        extend(spans, fibers, current, out);
        current.pop();
    }
}

/// A 2-cell between composites, given by its action on tuples.
#[derive(Clone, PartialEq, Eq)]
pub struct Cell {
    source: Composite,
    target: Composite,
    map: Vec<usize>,
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} : {:?} => {:?}", self.map, self.source, self.target)
    }
}

impl Cell {
    fn checked(source: Composite, target: Composite, map: Vec<usize>) -> Result<Cell> {
        SpanMorphism::new(
            source.span.clone(),
            target.span.clone(),
            FiniteFunction::new(
                source.span.apex().clone(),
                target.span.apex().clone(),
                map.clone(),
            )?,
        )?;
        Ok(Cell {
            source,
            target,
            map,
        })
    }

    pub fn identity(c: &Composite) -> Cell {
        Cell {
            source: c.clone(),
            target: c.clone(),
            map: (0..c.size()).collect(),
        }
    }

    /// Reads a 2-cell between the realized spans as a cell between composites.
    pub fn from_morphism(source: &Composite, target: &Composite, m: &SpanMorphism) -> Result<Cell> {
        if m.source() != source.span() || m.target() != target.span() {
            return Err(Error::BoundaryMismatch(
                "2-cell does not run between the realized composites".into(),
            ));
        }
        Ok(Cell {
            source: source.clone(),
            target: target.clone(),
            map: m.map().table().to_vec(),
        })
    }

    /// The unique leg- and content-preserving cell, if there is exactly one.
    pub fn canonical(source: &Composite, target: &Composite) -> Result<Cell> {
        let mut by_key: HashMap<(usize, usize, Vec<(Tag, usize)>), Vec<usize>> = HashMap::new();
        for k in 0..target.size() {
            by_key
                .entry((
                    target.span.left().apply(k),
                    target.span.right().apply(k),
                    target.content(k),
                ))
                .or_default()
                .push(k);
        }
        let mut map = Vec::with_capacity(source.size());
        for k in 0..source.size() {
            let key = (
                source.span.left().apply(k),
                source.span.right().apply(k),
                source.content(k),
            );
            match by_key.get(&key).map(Vec::as_slice) {
                Some([only]) => map.push(*only),
                Some([]) | None => {
                    return Err(Error::NoMediator(format!(
                        "no structural image for tuple {:?}",
                        source.tuple(k)
                    )))
                }
                Some(_) => {
                    return Err(Error::Ambiguous(format!(
                        "tuple {:?} has several structural images",
                        source.tuple(k)
                    )))
                }
            }
        }
        Cell::checked(source.clone(), target.clone(), map)
    }

    /// A cell given by a function on tuples; the result is checked against
    /// both legs.
    pub fn from_fn(
        source: &Composite,
        target: &Composite,
        f: impl Fn(&[usize]) -> Vec<usize>,
    ) -> Result<Cell> {
        let map = (0..source.size())
            .map(|k| {
                let image = f(source.tuple(k));
                target.index_of(&image).ok_or_else(|| {
                    Error::NotACell(format!(
                        "{:?} is sent to {:?}, which is not a compatible tuple",
                        source.tuple(k),
                        image
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Cell::checked(source.clone(), target.clone(), map)
    }

    pub fn source(&self) -> &Composite {
        &self.source
    }

    pub fn target(&self) -> &Composite {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn to_morphism(&self) -> SpanMorphism {
        SpanMorphism::new_unchecked(
            self.source.span.clone(),
            self.target.span.clone(),
            FiniteFunction::new(
                self.source.span.apex().clone(),
                self.target.span.apex().clone(),
                self.map.clone(),
            )
            .expect("cell maps are in range"),
        )
    }

    pub fn is_invertible(&self) -> bool {
        self.to_morphism().is_invertible()
    }

    pub fn inverse(&self) -> Result<Cell> {
        let inv = self.to_morphism().inverse()?;
        Ok(Cell {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv.map().table().to_vec(),
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Cell) -> Result<Cell> {
        if self.target != next.source {
            return Err(Error::BoundaryMismatch(format!(
                "cannot stack a cell into {:?} on a cell out of {:?}",
                self.target, next.source
            )));
        }
        Ok(Cell {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&k| next.map[k]).collect(),
        })
    }

    /// Applies the cell to the factors of `outer` starting at `start`.
    pub fn at(&self, outer: &Composite, start: usize) -> Result<Cell> {
        let n = self.source.len();
        if start + n > outer.len() || outer.factors[start..start + n] != self.source.factors[..] {
            return Err(Error::BoundaryMismatch(format!(
                "the cell's source does not occur at position {start}"
            )));
        }
        let target = outer.splice(start, n, &self.target.factors)?;
        let map = (0..outer.size())
            .map(|k| {
                let t = outer.tuple(k);
                let inner = self.source.index_of(&t[start..start + n]).expect("sub-tuple");
                let mut image = t[..start].to_vec();
                image.extend_from_slice(self.target.tuple(self.map[inner]));
                image.extend_from_slice(&t[start + n..]);
                target.index_of(&image).expect("boundaries are preserved")
            })
            .collect();
        Ok(Cell {
            source: outer.clone(),
            target,
            map,
        })
    }

    /// The cell with the given factors placed before and after it.
    pub fn whisker(&self, before: &[Factor], after: &[Factor]) -> Result<Cell> {
        let mut factors = before.to_vec();
        factors.extend_from_slice(&self.source.factors);
        factors.extend_from_slice(after);
        self.at(&Composite::new(factors)?, before.len())
    }

    /// Horizontal composite: `self` on the left, `other` on the right.
    pub fn beside(&self, other: &Cell) -> Result<Cell> {
        let left = self.whisker(&[], &other.source.factors)?;
        let right = other.whisker(&self.target.factors, &[])?;
        left.then(&right)
    }

    /// Product of two cells, with both sides collapsed to single factors.
    pub fn tensor(a: &Cell, b: &Cell) -> Cell {
        let source = Composite::single(Factor::tensor(&a.source.collapse(), &b.source.collapse()));
        let target = Composite::single(Factor::tensor(&a.target.collapse(), &b.target.collapse()));
        let width = b.target.size();
        let map = (0..source.size())
            .map(|k| {
                let (i, j) = decode_pair(k, b.source.size());
                encode_pair(a.map[i], b.map[j], width)
            })
            .collect();
        Cell {
            source,
            target,
            map,
        }
    }

    /// The identification of a composite with its collapsed form.
    pub fn collapse(c: &Composite) -> Cell {
        Cell {
            source: c.clone(),
            target: Composite::single(c.collapse()),
            map: (0..c.size()).collect(),
        }
    }
}
