//! Disjoint unions as direct sums of spans: the zero object, injections,
//! the codiagonal, the splitting of homs out of and into a sum, block
//! matrices of spans, and the extensivity properties of finite sets.

use serde::{Deserialize, Serialize};

use crate::enumerate::{all_functions, spans_up_to_iso};
use crate::error::{Error, Result};
use crate::finset::{self, FiniteFunction, FiniteSet};
use crate::maps::{is_map, map_from_function};
use crate::report::{AxiomReport, Counterexample, Witness};
use crate::span::{compose_spans, find_iso, id_span, opposite, Span};

/// Sum of parallel spans: the apexes are laid side by side.
pub fn sum_of_spans(src: &FiniteSet, tgt: &FiniteSet, parts: &[Span]) -> Result<Span> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for p in parts {
        if p.src() != src || p.tgt() != tgt {
            return Err(Error::BoundaryMismatch("summands must be parallel".into()));
        }
        left.extend_from_slice(p.left().table());
        right.extend_from_slice(p.right().table());
    }
    Span::from_tables(src.size(), tgt.size(), left, right)
}

fn empty_span(src: &FiniteSet, tgt: &FiniteSet) -> Span {
    Span::from_tables(src.size(), tgt.size(), Vec::new(), Vec::new()).expect("empty legs")
}

/// Every span into or out of the empty set is empty, so each hom with `0`
/// at one end has exactly one class, checked for `|Z| ≤ max` with test apex
/// at most `bound`.
pub fn zero_object_check(max: usize, bound: usize) -> AxiomReport {
    let subject = format!("the empty set is a zero object (sizes up to {max})");
    let mut checked = 0;
    for z in 0..=max {
        for (src, tgt) in [(0, z), (z, 0)] {
            checked += 1;
            let classes = spans_up_to_iso(src, tgt, bound);
            if classes.len() != 1 || classes[0].apex().size() != 0 {
                return AxiomReport::fail(
                    subject,
                    Counterexample::new("not-zero", format!("{} classes of spans {src} → {tgt}", classes.len())),
                );
            }
        }
        let (zs, zero) = (FiniteSet::new(z), FiniteSet::empty());
        let through = compose_spans(&empty_span(&zs, &zero), &empty_span(&zero, &zs))
            .expect("composable");
        if through.apex().size() != 0 {
            return AxiomReport::fail(
                subject,
                Counterexample::new("not-zero", "composite through 0 is not empty"),
            );
        }
    }
    AxiomReport::pass(subject, Witness::Exhaustive { checked }).bounded()
}

/// Graphs of the coproduct injections `X → X+Y ← Y`.
pub fn injection_spans(x: &FiniteSet, y: &FiniteSet) -> (Span, Span) {
    let c = finset::coproduct(x, y);
    (map_from_function(&c.inj1), map_from_function(&c.inj2))
}

/// The injections are maps and are fully faithful: `i;i* ≅ 1`.
pub fn check_injections(x: &FiniteSet, y: &FiniteSet) -> AxiomReport {
    let subject = format!("injections {} → {} ← {} are fully faithful maps", x.size(), x.size() + y.size(), y.size());
    let (i1, i2) = injection_spans(x, y);
    let mut parts = Vec::new();
    for (i, obj) in [(&i1, x), (&i2, y)] {
        if !is_map(i) {
            return AxiomReport::fail(subject, Counterexample::new("not-a-map", "injection"));
        }
        match find_iso(&compose_spans(i, &opposite(i)).expect("composable"), &id_span(obj)) {
            Some(iso) => parts.push(AxiomReport::pass("i;i* ≅ 1", Witness::iso(&iso))),
            None => {
                return AxiomReport::fail(
                    subject,
                    Counterexample::new("not-faithful", "i;i* is not the identity").with_spans([i]),
                )
            }
        }
    }
    AxiomReport::all(subject, parts)
}

/// The codiagonal `X+X → X` built directly as the graph of `[1, 1]` and again
/// as the span whose restriction along each injection is the identity.
pub fn codiagonal_is_map(x: &FiniteSet) -> AxiomReport {
    let subject = format!("codiagonal on an object of size {} is a map", x.size());
    let direct = map_from_function(&finset::codiagonal(x));
    let (i1, i2) = injection_spans(x, x);
    let one = id_span(x);
    let rebuilt = combine_from_sum(x, x, x, &one, &one).expect("identities are parallel");
    let restricted = [&i1, &i2].map(|i| compose_spans(i, &direct).expect("composable"));
    let ok = is_map(&direct)
        && is_map(&rebuilt)
        && restricted.iter().all(|r| find_iso(r, &one).is_some());
    match find_iso(&rebuilt, &direct) {
        Some(iso) if ok => AxiomReport::pass(subject, Witness::iso(&iso)),
        _ => AxiomReport::fail(
            subject,
            Counterexample::new("not-a-map", "the two codiagonals disagree")
                .with_spans([&direct, &rebuilt]),
        ),
    }
}

/// Restricts `R: X+Y → Z` along the two injections.
pub fn split_from_sum(x: &FiniteSet, y: &FiniteSet, r: &Span) -> Result<(Span, Span)> {
    let (i1, i2) = injection_spans(x, y);
    Ok((compose_spans(&i1, r)?, compose_spans(&i2, r)?))
}

/// The span `X+Y → Z` whose restrictions are `r1` and `r2`.
pub fn combine_from_sum(
    x: &FiniteSet,
    y: &FiniteSet,
    z: &FiniteSet,
    r1: &Span,
    r2: &Span,
) -> Result<Span> {
    let c = finset::coproduct(x, y);
    let left = finset::copair(
        &finset::compose_fn(r1.left(), &c.inj1)?,
        &finset::compose_fn(r2.left(), &c.inj2)?,
    )?;
    let right = finset::copair(r1.right(), r2.right())?;
    if right.cod() != z {
        return Err(Error::BoundaryMismatch("summands must land in Z".into()));
    }
    Span::new(left, right)
}

/// Corestricts `R: Z → X+Y` along the opposite injections.
pub fn split_into_sum(x: &FiniteSet, y: &FiniteSet, r: &Span) -> Result<(Span, Span)> {
    let (i1, i2) = injection_spans(x, y);
    Ok((compose_spans(r, &opposite(&i1))?, compose_spans(r, &opposite(&i2))?))
}

pub fn combine_into_sum(x: &FiniteSet, y: &FiniteSet, r1: &Span, r2: &Span) -> Result<Span> {
    Ok(opposite(&combine_from_sum(
        x,
        y,
        r1.src(),
        &opposite(r1),
        &opposite(r2),
    )?))
}

/// `B(X+Y, Z) ≃ B(X, Z) × B(Y, Z)` and `B(Z, X+Y) ≃ B(Z, X) × B(Z, Y)` on the
/// given samples: splitting then recombining returns an isomorphic span.
pub fn direct_sum_hom_equivalence(
    x: &FiniteSet,
    y: &FiniteSet,
    z: &FiniteSet,
    samples: &[Span],
) -> Result<AxiomReport> {
    let subject = format!(
        "homs out of and into a sum split (sizes {}, {}, {})",
        x.size(),
        y.size(),
        z.size()
    );
    let sum = FiniteSet::new(x.size() + y.size());
    for r in samples {
        if r.src() != &sum || r.tgt() != z {
            return Err(Error::BoundaryMismatch("samples must run X+Y → Z".into()));
        }
        let (r1, r2) = split_from_sum(x, y, r)?;
        let back = combine_from_sum(x, y, z, &r1, &r2)?;
        let op = opposite(r);
        let (s1, s2) = split_into_sum(x, y, &op)?;
        let back_op = combine_into_sum(x, y, &s1, &s2)?;
        if find_iso(&back, r).is_none() || find_iso(&back_op, &op).is_none() {
            return Ok(AxiomReport::fail(
                subject,
                Counterexample::new("no-iso", "recombined span differs").with_spans([r]),
            ));
        }
    }
    Ok(AxiomReport::pass(subject, Witness::Exhaustive { checked: samples.len() }))
}

/// A block matrix of spans: entry `(i, j)` runs from `rows[i]` to `cols[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMatrix {
    rows: Vec<FiniteSet>,
    cols: Vec<FiniteSet>,
    entries: Vec<Vec<Span>>,
}

impl SpanMatrix {
    pub fn new(rows: Vec<FiniteSet>, cols: Vec<FiniteSet>, entries: Vec<Vec<Span>>) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::BoundaryMismatch(
                "entry grid does not match the block structure".into(),
            ));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.src() != &rows[i] || e.tgt() != &cols[j] {
                    return Err(Error::BoundaryMismatch(format!(
                        "entry ({i}, {j}) does not run between its blocks"
                    )));
                }
            }
        }
        Ok(SpanMatrix { rows, cols, entries })
    }

    pub fn identity(objects: &[FiniteSet]) -> Self {
        let entries = objects
            .iter()
            .enumerate()
            .map(|(i, a)| {
                objects
                    .iter()
                    .enumerate()
                    .map(|(j, b)| if i == j { id_span(a) } else { empty_span(a, b) })
                    .collect()
            })
            .collect();
        SpanMatrix {
            rows: objects.to_vec(),
            cols: objects.to_vec(),
            entries,
        }
    }

    pub fn rows(&self) -> &[FiniteSet] {
        &self.rows
    }

    pub fn cols(&self) -> &[FiniteSet] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Span {
        &self.entries[i][j]
    }

    pub fn transpose(&self) -> SpanMatrix {
        let entries = (0..self.cols.len())
            .map(|j| (0..self.rows.len()).map(|i| opposite(&self.entries[i][j])).collect())
            .collect();
        SpanMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries,
        }
    }
}

fn offsets(blocks: &[FiniteSet]) -> Vec<usize> {
    let mut out = Vec::with_capacity(blocks.len() + 1);
    let mut acc = 0;
    out.push(0);
    for b in blocks {
        acc += b.size();
        out.push(acc);
    }
    out
}

fn block_of(offsets: &[usize], e: usize) -> usize {
    offsets.windows(2).position(|w| w[0] <= e && e < w[1]).expect("element lies in a block")
}

/// Cuts `R` into blocks according to the given decompositions of its ends.
pub fn matrix_of_span(r: &Span, rows: &[FiniteSet], cols: &[FiniteSet]) -> Result<SpanMatrix> {
    let (ro, co) = (offsets(rows), offsets(cols));
    if ro[rows.len()] != r.src().size() || co[cols.len()] != r.tgt().size() {
        return Err(Error::BoundaryMismatch(
            "block sizes do not add up to the ends of the span".into(),
        ));
    }
    let mut cells = vec![vec![(Vec::new(), Vec::new()); cols.len()]; rows.len()];
    for s in r.apex().elements() {
        let (l, rr) = r.legs_at(s);
        let (i, j) = (block_of(&ro, l), block_of(&co, rr));
        cells[i][j].0.push(l - ro[i]);
        cells[i][j].1.push(rr - co[j]);
    }
    let entries = cells
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, (l, rr))| Span::from_tables(rows[i].size(), cols[j].size(), l, rr))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SpanMatrix::new(rows.to_vec(), cols.to_vec(), entries)
}

/// Reassembles a span from its blocks, entries in row-major order.
pub fn span_of_matrix(m: &SpanMatrix) -> Span {
    let (ro, co) = (offsets(&m.rows), offsets(&m.cols));
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, row) in m.entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            left.extend(e.left().table().iter().map(|&l| l + ro[i]));
            right.extend(e.right().table().iter().map(|&r| r + co[j]));
        }
    }
    Span::from_tables(ro[m.rows.len()], co[m.cols.len()], left, right).expect("blocks in range")
}

/// Entry `(i, k)` is the sum over `j` of `M[i][j];N[j][k]`.
pub fn matrix_compose(m: &SpanMatrix, n: &SpanMatrix) -> Result<SpanMatrix> {
    if m.cols != n.rows {
        return Err(Error::BoundaryMismatch("inner block structures differ".into()));
    }
    let entries = (0..m.rows.len())
        .map(|i| {
            (0..n.cols.len())
                .map(|k| {
                    let parts = (0..m.cols.len())
                        .map(|j| compose_spans(&m.entries[i][j], &n.entries[j][k]))
                        .collect::<Result<Vec<_>>>()?;
                    sum_of_spans(&m.rows[i], &n.cols[k], &parts)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SpanMatrix::new(m.rows.clone(), n.cols.clone(), entries)
}

/// Entry-wise isomorphism of matrices with the same blocks.
pub fn matrices_isomorphic(a: &SpanMatrix, b: &SpanMatrix) -> bool {
    a.rows == b.rows
        && a.cols == b.cols
        && a.entries
            .iter()
            .flatten()
            .zip(b.entries.iter().flatten())
            .all(|(x, y)| find_iso(x, y).is_some())
}

/// The arrow `X+Y → X×Y` with components `δ_ij`, where the product of
/// objects among spans is again the disjoint union. Its pseudo-inverse is
/// the transposed matrix, and both composites are isomorphic to identities.
pub fn canonical_sum_to_product(x: &FiniteSet, y: &FiniteSet) -> AxiomReport {
    let subject = format!("sum of objects of sizes {} and {} is a product", x.size(), y.size());
    let blocks = [x.clone(), y.clone()];
    let arrow = SpanMatrix::identity(&blocks);
    let arrow_span = span_of_matrix(&arrow);
    let inverse = span_of_matrix(&arrow.transpose());
    let sum = FiniteSet::new(x.size() + y.size());
    let (i1, i2) = injection_spans(x, y);
    // the components i_a;arrow;i_b* must be identities on the diagonal and
    // empty off it
    let components_ok = [(&i1, x), (&i2, y)].iter().enumerate().all(|(a, (ia, oa))| {
        [(&i1, x), (&i2, y)].iter().enumerate().all(|(b, (ib, ob))| {
            let c = compose_spans(ia, &arrow_span)
                .and_then(|s| compose_spans(&s, &opposite(ib)))
                .expect("composable");
            if a == b {
                find_iso(&c, &id_span(oa)).is_some()
            } else {
                c.apex().size() == 0 && c.tgt() == *ob
            }
        })
    });
    let unit = compose_spans(&arrow_span, &inverse).ok().and_then(|c| find_iso(&c, &id_span(&sum)));
    let counit = compose_spans(&inverse, &arrow_span).ok().and_then(|c| find_iso(&c, &id_span(&sum)));
    match (unit, counit) {
        (Some(u), Some(_)) if components_ok => AxiomReport::pass(subject, Witness::iso(&u)),
        _ => AxiomReport::fail(
            subject,
            Counterexample::new("not-an-equivalence", "canonical arrow has no pseudo-inverse"),
        ),
    }
}

/// `X×Y + X×Z → X×(Y+Z)` is a bijection.
pub fn check_distributivity(x: &FiniteSet, y: &FiniteSet, z: &FiniteSet) -> AxiomReport {
    let subject = format!("products distribute over sums (sizes {}, {}, {})", x.size(), y.size(), z.size());
    let yz = finset::coproduct(y, z);
    let id = FiniteFunction::identity(x);
    let map = finset::copair(
        &finset::product_map(&id, &yz.inj1),
        &finset::product_map(&id, &yz.inj2),
    )
    .expect("common codomain");
    if map.is_bijection() {
        AxiomReport::pass(subject, Witness::Exhaustive { checked: map.dom().size() })
    } else {
        AxiomReport::fail(
            subject,
            Counterexample::new("not-bijective", format!("{:?}", map.table())),
        )
    }
}

/// For every `f: W → Y+Z` with `|W| ≤ max_w`, the pullbacks along the two
/// injections decompose `W`, and the injections themselves are disjoint.
pub fn check_sum_pullback_stability(y: &FiniteSet, z: &FiniteSet, max_w: usize) -> AxiomReport {
    let subject = format!("sums of sizes {} and {} are stable under pullback", y.size(), z.size());
    let yz = finset::coproduct(y, z);
    let disjoint = finset::pullback(&yz.inj1, &yz.inj2).expect("common codomain");
    if disjoint.apex.size() != 0 {
        return AxiomReport::fail(subject, Counterexample::new("not-disjoint", "injections meet"));
    }
    let mut checked = 0;
    for w in 0..=max_w {
        for f in all_functions(w, yz.set.size()) {
            checked += 1;
            let p1 = finset::pullback(&f, &yz.inj1).expect("common codomain");
            let p2 = finset::pullback(&f, &yz.inj2).expect("common codomain");
            let joined = finset::copair(&p1.legs[0], &p2.legs[0]).expect("common codomain");
            if !joined.is_bijection() {
                return AxiomReport::fail(
                    subject,
                    Counterexample::new("not-stable", format!("{:?}", f.table())),
                );
            }
        }
    }
    AxiomReport::pass(subject, Witness::Exhaustive { checked }).bounded()
}

/// Serializable form of a matrix for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixData {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<crate::report::SpanData>>,
}

impl From<&SpanMatrix> for MatrixData {
    fn from(m: &SpanMatrix) -> Self {
        MatrixData {
            rows: m.rows.iter().map(FiniteSet::size).collect(),
            cols: m.cols.iter().map(FiniteSet::size).collect(),
            entries: m
                .entries
                .iter()
                .map(|r| r.iter().map(Into::into).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> FiniteSet {
        FiniteSet::new(n)
    }

    #[test]
    fn zero_and_injections() {
        assert!(zero_object_check(3, 2).holds);
        let (i1, i2) = injection_spans(&set(2), &set(3));
        assert_eq!((i1.tgt().size(), i2.tgt().size()), (5, 5));
        assert!(check_injections(&set(2), &set(3)).holds);
        let (i, _) = injection_spans(&set(2), &set(0));
        assert!(i.right().is_bijection());
    }

    #[test]
    fn codiagonal_examples() {
        for n in 0..4 {
            assert!(codiagonal_is_map(&set(n)).holds);
        }
        assert_eq!(map_from_function(&finset::codiagonal(&set(2))).right().table(), &[0, 1, 0, 1]);
    }

    #[test]
    fn hom_splitting() {
        let r = Span::from_tables(4, 2, vec![0, 1, 3, 3], vec![1, 0, 0, 1]).unwrap();
        assert!(direct_sum_hom_equivalence(&set(2), &set(2), &set(2), &[r]).unwrap().holds);
        assert!(direct_sum_hom_equivalence(&set(1), &set(1), &set(1), &[]).unwrap().holds);
        let (i1, _) = injection_spans(&set(2), &set(1));
        let (a, b) = split_from_sum(&set(2), &set(1), &opposite(&i1)).unwrap();
        assert!(find_iso(&a, &id_span(&set(2))).is_some());
        assert_eq!(b.apex().size(), 0);
    }

    #[test]
    fn matrix_examples() {
        let blocks = [set(2), set(1)];
        let m = matrix_of_span(&id_span(&set(3)), &blocks, &blocks).unwrap();
        assert!(matrices_isomorphic(&m, &SpanMatrix::identity(&blocks)));

        let r = Span::from_tables(3, 3, vec![0, 1, 2, 2, 0], vec![0, 1, 2, 0, 2]).unwrap();
        let m = matrix_of_span(&r, &blocks, &[set(1), set(2)]).unwrap();
        let sizes: usize = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| m.entry(i, j).apex().size()).sum();
        assert_eq!(sizes, 5);
        assert!(find_iso(&span_of_matrix(&m), &r).is_some());

        let id = SpanMatrix::identity(&blocks);
        let sq = matrix_of_span(&r, &blocks, &blocks).unwrap();
        assert!(matrices_isomorphic(&matrix_compose(&id, &sq).unwrap(), &sq));
    }

    #[test]
    fn sums_are_products() {
        for (x, y) in [(0, 0), (1, 1), (2, 3)] {
            assert!(canonical_sum_to_product(&set(x), &set(y)).holds);
        }
        assert!(check_distributivity(&set(2), &set(1), &set(2)).holds);
        assert!(check_sum_pullback_stability(&set(1), &set(2), 3).holds);
    }
}
