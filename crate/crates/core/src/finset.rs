//! Finite sets and total functions between them, with every finite limit and
//! finite coproduct computed by explicit enumeration.
//!
//! Elements of a set of size `n` are the integers `0..n`. Labels are carried
//! for display only and never take part in equality. Every limit apex is
//! enumerated in lexicographic order so that results are reproducible down to
//! the table.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

#[derive(Clone, Default)]
pub struct FiniteSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl FiniteSet {
    pub fn new(size: usize) -> Self {
        FiniteSet { size, labels: None }
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        if !labels.iter().all(|l| seen.insert(l.as_str())) {
            return Err(Error::BadLabels);
        }
        Ok(FiniteSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn empty() -> Self {
        FiniteSet::new(0)
    }

    pub fn point() -> Self {
        FiniteSet::new(1)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// Display name of an element: its label if present, else the integer.
    pub fn name_of(&self, element: usize) -> String {
        match &self.labels {
            Some(labels) => labels[element].clone(),
            None => element.to_string(),
        }
    }
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl Eq for FiniteSet {}

impl Hash for FiniteSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.size)
    }
}

/// A total function given by its table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteFunction {
    dom: FiniteSet,
    cod: FiniteSet,
    table: Vec<usize>,
}

impl fmt::Debug for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{:?}->{:?}", self.table, self.dom, self.cod)
    }
}

impl FiniteFunction {
    pub fn new(dom: FiniteSet, cod: FiniteSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() {
            return Err(Error::LengthMismatch {
                len: table.len(),
                dom: dom.size(),
            });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= cod.size()) {
            return Err(Error::OutOfRange {
                index,
                value,
                cod: cod.size(),
            });
        }
        Ok(FiniteFunction { dom, cod, table })
    }

    /// Builds a function from sizes alone; mostly for tests and examples.
    pub fn from_table(dom: usize, cod: usize, table: Vec<usize>) -> Result<Self> {
        FiniteFunction::new(FiniteSet::new(dom), FiniteSet::new(cod), table)
    }

    pub(crate) fn from_fn(dom: &FiniteSet, cod: &FiniteSet, f: impl Fn(usize) -> usize) -> Self {
        let table: Vec<usize> = dom.elements().map(f).collect();
        debug_assert!(table.iter().all(|&v| v < cod.size()));
        FiniteFunction {
            dom: dom.clone(),
            cod: cod.clone(),
            table,
        }
    }

    pub fn identity(set: &FiniteSet) -> Self {
        FiniteFunction::from_fn(set, set, |i| i)
    }

    /// The unique function into the one-point set.
    pub fn to_point(set: &FiniteSet) -> Self {
        FiniteFunction::from_fn(set, &FiniteSet::point(), |_| 0)
    }

    /// The unique function out of the empty set.
    pub fn from_empty(set: &FiniteSet) -> Self {
        FiniteFunction::from_fn(&FiniteSet::empty(), set, |_| 0)
    }

    pub fn dom(&self) -> &FiniteSet {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self` followed by `next`, i.e. `next ∘ self`.
    pub fn then(&self, next: &FiniteFunction) -> Result<FiniteFunction> {
        compose_fn(self, next)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        self.table
            .iter()
            .all(|&v| !std::mem::replace(&mut hit[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &v in &self.table {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijection(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<FiniteFunction> {
        if !self.is_bijection() {
            return Err(Error::NotBijection);
        }
        let mut table = vec![0; self.dom.size()];
        for (i, &v) in self.table.iter().enumerate() {
            table[v] = i;
        }
        Ok(FiniteFunction {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table,
        })
    }

    /// Elements of the domain mapped to `y`, in increasing order.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        self.dom.elements().filter(|&i| self.table[i] == y).collect()
    }
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose_fn(f: &FiniteFunction, g: &FiniteFunction) -> Result<FiniteFunction> {
    if f.cod != g.dom {
        return Err(Error::BoundaryMismatch(format!(
            "cannot compose {:?} with {:?}",
            f, g
        )));
    }
    Ok(FiniteFunction {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table: f.table.iter().map(|&i| g.table[i]).collect(),
    })
}

/// A cone over some diagram: an apex together with its legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: FiniteSet,
    pub legs: Vec<FiniteFunction>,
}

impl Cone {
    /// Factors a competing cone through this one.
    ///
    /// The legs of `self` must be jointly injective, which is the case for
    /// every limit cone built in this module. Fails when some element of the
    /// competing apex has no preimage.
    pub fn mediate(&self, legs: &[FiniteFunction]) -> Result<FiniteFunction> {
        if legs.len() != self.legs.len() {
            return Err(Error::BoundaryMismatch(format!(
                "cone has {} legs, competitor has {}",
                self.legs.len(),
                legs.len()
            )));
        }
        let Some(source) = legs.first().map(|l| l.dom().clone()) else {
            return Err(Error::Precondition("cannot mediate a cone with no legs".into()));
        };
        for (mine, theirs) in self.legs.iter().zip(legs) {
            if mine.cod() != theirs.cod() || theirs.dom() != &source {
                return Err(Error::BoundaryMismatch(
                    "competing cone does not match the diagram".into(),
                ));
            }
        }
        let index: HashMap<Vec<usize>, usize> = self
            .apex
            .elements()
            .map(|p| (self.legs.iter().map(|l| l.apply(p)).collect(), p))
            .collect();
        let mut table = Vec::with_capacity(source.size());
        for t in source.elements() {
            let key: Vec<usize> = legs.iter().map(|l| l.apply(t)).collect();
            match index.get(&key) {
                Some(&p) => table.push(p),
                None => {
                    return Err(Error::NoMediator(format!(
                        "element {t} lands on {key:?}, which is not in the apex"
                    )))
                }
            }
        }
        FiniteFunction::new(source, self.apex.clone(), table)
    }
}

/// Cartesian product with the pair `(i, j)` encoded as `i·|B| + j`.
#[derive(Clone, Debug)]
pub struct Product {
    pub set: FiniteSet,
    pub proj1: FiniteFunction,
    pub proj2: FiniteFunction,
}

pub fn encode_pair(i: usize, j: usize, right_size: usize) -> usize {
    i * right_size + j
}

pub fn decode_pair(k: usize, right_size: usize) -> (usize, usize) {
    (k / right_size, k % right_size)
}

pub fn product(a: &FiniteSet, b: &FiniteSet) -> Product {
    let set = FiniteSet::new(a.size() * b.size());
    let n = b.size();
    Product {
        proj1: FiniteFunction::from_fn(&set, a, |k| k / n),
        proj2: FiniteFunction::from_fn(&set, b, |k| k % n),
        set,
    }
}

/// The pairing `⟨f, g⟩: T → A×B`.
pub fn pair(f: &FiniteFunction, g: &FiniteFunction) -> Result<FiniteFunction> {
    if f.dom() != g.dom() {
        return Err(Error::BoundaryMismatch(
            "pairing needs a common domain".into(),
        ));
    }
    let n = g.cod().size();
    let cod = FiniteSet::new(f.cod().size() * n);
    Ok(FiniteFunction::from_fn(f.dom(), &cod, |t| {
        encode_pair(f.apply(t), g.apply(t), n)
    }))
}

/// `f × g: A×B → C×D`.
pub fn product_map(f: &FiniteFunction, g: &FiniteFunction) -> FiniteFunction {
    let dom = FiniteSet::new(f.dom().size() * g.dom().size());
    let cod = FiniteSet::new(f.cod().size() * g.cod().size());
    let (m, n) = (g.dom().size(), g.cod().size());
    FiniteFunction::from_fn(&dom, &cod, |k| {
        let (i, j) = decode_pair(k, m);
        encode_pair(f.apply(i), g.apply(j), n)
    })
}

/// The diagonal `d_A = ⟨1, 1⟩: A → A×A`.
pub fn diagonal(a: &FiniteSet) -> FiniteFunction {
    let id = FiniteFunction::identity(a);
    pair(&id, &id).expect("identity pairs with itself")
}

/// All pairs `(a, b)` with `f(a) = g(b)`, in lexicographic order.
pub fn pullback(f: &FiniteFunction, g: &FiniteFunction) -> Result<Cone> {
    if f.cod() != g.cod() {
        return Err(Error::BoundaryMismatch(format!(
            "pullback needs a common codomain, got {:?} and {:?}",
            f.cod(),
            g.cod()
        )));
    }
    // Bucket the right-hand side by value; scanning `a` in order and each
    // bucket in order yields the lexicographic enumeration.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); f.cod().size()];
    for b in g.dom().elements() {
        buckets[g.apply(b)].push(b);
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in f.dom().elements() {
        for &b in &buckets[f.apply(a)] {
            left.push(a);
            right.push(b);
        }
    }
    let apex = FiniteSet::new(left.len());
    Ok(Cone {
        legs: vec![
            FiniteFunction::new(apex.clone(), f.dom().clone(), left)?,
            FiniteFunction::new(apex.clone(), g.dom().clone(), right)?,
        ],
        apex,
    })
}

/// The subset where `f` and `g` agree, with its inclusion.
pub fn equalizer(f: &FiniteFunction, g: &FiniteFunction) -> Result<Cone> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::BoundaryMismatch(
            "equalizer needs a parallel pair".into(),
        ));
    }
    let kept: Vec<usize> = f
        .dom()
        .elements()
        .filter(|&a| f.apply(a) == g.apply(a))
        .collect();
    let apex = FiniteSet::new(kept.len());
    Ok(Cone {
        legs: vec![FiniteFunction::new(apex.clone(), f.dom().clone(), kept)?],
        apex,
    })
}

/// Disjoint union laid out as the block of `A` followed by the block of `B`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub set: FiniteSet,
    pub inj1: FiniteFunction,
    pub inj2: FiniteFunction,
}

pub fn coproduct(a: &FiniteSet, b: &FiniteSet) -> Coproduct {
    let set = FiniteSet::new(a.size() + b.size());
    let offset = a.size();
    Coproduct {
        inj1: FiniteFunction::from_fn(a, &set, |i| i),
        inj2: FiniteFunction::from_fn(b, &set, |j| offset + j),
        set,
    }
}

/// `[f, g]: A+B → T`.
pub fn copair(f: &FiniteFunction, g: &FiniteFunction) -> Result<FiniteFunction> {
    if f.cod() != g.cod() {
        return Err(Error::BoundaryMismatch(
            "copairing needs a common codomain".into(),
        ));
    }
    let dom = FiniteSet::new(f.dom().size() + g.dom().size());
    let table = f.table().iter().chain(g.table()).copied().collect();
    FiniteFunction::new(dom, f.cod().clone(), table)
}

/// `f + g: A+B → C+D`.
pub fn coproduct_map(f: &FiniteFunction, g: &FiniteFunction) -> FiniteFunction {
    let dom = FiniteSet::new(f.dom().size() + g.dom().size());
    let cod = FiniteSet::new(f.cod().size() + g.cod().size());
    let offset = f.cod().size();
    let table = f
        .table()
        .iter()
        .copied()
        .chain(g.table().iter().map(|&j| offset + j))
        .collect();
    FiniteFunction { dom, cod, table }
}

/// The codiagonal `∇ = [1, 1]: A+A → A`.
pub fn codiagonal(a: &FiniteSet) -> FiniteFunction {
    let id = FiniteFunction::identity(a);
    copair(&id, &id).expect("identity copairs with itself")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fun(dom: usize, cod: usize, table: &[usize]) -> FiniteFunction {
        FiniteFunction::from_table(dom, cod, table.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id2 = FiniteFunction::identity(&FiniteSet::new(2));
        assert_eq!(compose_fn(&id2, &id2).unwrap(), id2);
        let f = fun(2, 1, &[0, 0]);
        let g = fun(1, 2, &[1]);
        assert_eq!(compose_fn(&f, &g).unwrap(), fun(2, 2, &[1, 1]));
        let swap = fun(2, 2, &[1, 0]);
        assert_eq!(compose_fn(&swap, &swap).unwrap(), id2);
    }

    #[test]
    fn compose_rejects_mismatched_boundary() {
        let f = fun(2, 3, &[0, 2]);
        let g = fun(2, 2, &[0, 1]);
        assert!(matches!(compose_fn(&f, &g), Err(Error::BoundaryMismatch(_))));
    }

    #[test]
    fn construction_validates_tables() {
        assert!(matches!(
            FiniteFunction::from_table(2, 2, vec![0, 2]),
            Err(Error::OutOfRange { index: 1, value: 2, cod: 2 })
        ));
        assert!(matches!(
            FiniteFunction::from_table(2, 2, vec![0]),
            Err(Error::LengthMismatch { len: 1, dom: 2 })
        ));
        assert!(matches!(
            FiniteSet::with_labels(vec!["a".into(), "a".into()]),
            Err(Error::BadLabels)
        ));
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let labelled = FiniteSet::with_labels(vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(labelled, FiniteSet::new(2));
        assert_eq!(labelled.name_of(1), "y");
    }

    #[test]
    fn product_examples() {
        let p = product(&FiniteSet::new(2), &FiniteSet::new(3));
        assert_eq!(p.set.size(), 6);
        assert_eq!(p.proj1.table(), &[0, 0, 0, 1, 1, 1]);
        assert_eq!(p.proj2.table(), &[0, 1, 2, 0, 1, 2]);
        assert_eq!(product(&FiniteSet::new(0), &FiniteSet::new(3)).set.size(), 0);
        let unit = product(&FiniteSet::new(1), &FiniteSet::new(4));
        assert!(unit.proj2.is_bijection());
    }

    #[test]
    fn pair_examples() {
        let a = FiniteSet::new(3);
        let id = FiniteFunction::identity(&a);
        assert_eq!(pair(&id, &id).unwrap(), diagonal(&a));
        let p = product(&a, &FiniteSet::new(2));
        assert_eq!(
            pair(&p.proj1, &p.proj2).unwrap(),
            FiniteFunction::identity(&p.set)
        );
        assert_eq!(
            pair(&fun(1, 2, &[0]), &fun(1, 3, &[2])).unwrap().table(),
            &[2]
        );
        assert!(pair(&fun(1, 2, &[0]), &fun(2, 3, &[2, 0])).is_err());
    }

    #[test]
    fn pullback_examples() {
        let a = FiniteSet::new(3);
        let id = FiniteFunction::identity(&a);
        let cone = pullback(&id, &id).unwrap();
        assert_eq!(cone.apex.size(), 3);
        assert!(cone.legs[0].is_bijection());
        assert_eq!(cone.legs[0], cone.legs[1]);

        let cone = pullback(&fun(2, 1, &[0, 0]), &fun(3, 1, &[0, 0, 0])).unwrap();
        assert_eq!(cone.apex.size(), 6);

        let cone = pullback(&fun(2, 2, &[0, 1]), &fun(2, 2, &[1, 0])).unwrap();
        assert_eq!(cone.legs[0].table(), &[0, 1]);
        assert_eq!(cone.legs[1].table(), &[1, 0]);

        assert!(pullback(&fun(1, 2, &[0]), &fun(1, 3, &[0])).is_err());
    }

    #[test]
    fn pullback_is_deterministic() {
        let f = fun(4, 3, &[2, 0, 2, 1]);
        let g = fun(3, 3, &[2, 2, 0]);
        assert_eq!(pullback(&f, &g).unwrap(), pullback(&f, &g).unwrap());
    }

    #[test]
    fn equalizer_examples() {
        let f = fun(3, 2, &[0, 1, 1]);
        assert_eq!(equalizer(&f, &f).unwrap().apex.size(), 3);
        let id = fun(2, 2, &[0, 1]);
        let swap = fun(2, 2, &[1, 0]);
        assert_eq!(equalizer(&id, &swap).unwrap().apex.size(), 0);
        let cone = equalizer(&fun(2, 2, &[0, 0]), &fun(2, 2, &[0, 1])).unwrap();
        assert_eq!(cone.legs[0].table(), &[0]);
        assert!(cone.legs[0].is_injective());
        assert!(equalizer(&id, &fun(2, 3, &[0, 1])).is_err());
    }

    #[test]
    fn coproduct_examples() {
        let (a, b) = (FiniteSet::new(2), FiniteSet::new(3));
        let c = coproduct(&a, &b);
        assert_eq!(c.set.size(), 5);
        assert_eq!(c.inj2.table(), &[2, 3, 4]);
        let id = FiniteFunction::identity(&a);
        assert_eq!(copair(&id, &id).unwrap(), codiagonal(&a));
        assert!(coproduct(&a, &FiniteSet::empty()).inj1.is_bijection());
        let f = fun(2, 4, &[3, 1]);
        let g = fun(3, 4, &[0, 0, 2]);
        let h = copair(&f, &g).unwrap();
        assert_eq!(compose_fn(&c.inj1, &h).unwrap(), f);
        assert_eq!(compose_fn(&c.inj2, &h).unwrap(), g);
        assert!(copair(&f, &fun(1, 3, &[0])).is_err());
    }

    #[test]
    fn bijection_examples() {
        assert!(FiniteFunction::identity(&FiniteSet::new(4)).is_bijection());
        assert!(!fun(2, 1, &[0, 0]).is_bijection());
        let swap = fun(2, 2, &[1, 0]);
        assert_eq!(swap.inverse().unwrap(), swap);
        assert_eq!(fun(2, 1, &[0, 0]).inverse(), Err(Error::NotBijection));
        let p = fun(3, 3, &[2, 0, 1]);
        let q = p.inverse().unwrap();
        assert_eq!(compose_fn(&p, &q).unwrap(), FiniteFunction::identity(p.dom()));
        assert_eq!(compose_fn(&q, &p).unwrap(), FiniteFunction::identity(p.dom()));
    }

    #[test]
    fn mediate_factors_through_pullback() {
        let f = fun(3, 2, &[0, 1, 1]);
        let g = fun(2, 2, &[1, 0]);
        let cone = pullback(&f, &g).unwrap();
        let h = fun(2, 3, &[2, 0]);
        let k = fun(2, 2, &[0, 1]);
        let m = cone.mediate(&[h.clone(), k.clone()]).unwrap();
        assert_eq!(compose_fn(&m, &cone.legs[0]).unwrap(), h);
        assert_eq!(compose_fn(&m, &cone.legs[1]).unwrap(), k);
        // (1, 1) is not in the pullback since f(1) = 1 ≠ g(1) = 0.
        let bad = cone.mediate(&[fun(1, 3, &[1]), fun(1, 2, &[1])]);
        assert!(matches!(bad, Err(Error::NoMediator(_))));
    }
}
