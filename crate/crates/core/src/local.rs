//! Finite products inside each hom-category of spans `X → A`.

use crate::composite::{Cell, Composite, Factor};
use crate::enumerate::spans_up_to_iso;
use crate::error::{Error, Result};
use crate::finset::{self, decode_pair, diagonal, encode_pair, FiniteFunction, FiniteSet};
use crate::maps::{make_adjunction, map_from_function, paste_horizontal, tracked, GSquare};
use crate::span::{
    compose_path, count_morphisms, for_each_morphism, opposite, tensor, vertical_compose, Span,
    SpanMorphism,
};

/// A chosen product `R∧S` with its projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalProduct {
    product: Span,
    pi: SpanMorphism,
    rho: SpanMorphism,
}

impl LocalProduct {
    pub fn product(&self) -> &Span {
        &self.product
    }

    pub fn pi(&self) -> &SpanMorphism {
        &self.pi
    }

    pub fn rho(&self) -> &SpanMorphism {
        &self.rho
    }

    /// The 2-cell `T ⇒ R∧S` induced by `alpha: T ⇒ R` and `beta: T ⇒ S`.
    pub fn pair(&self, alpha: &SpanMorphism, beta: &SpanMorphism) -> Result<SpanMorphism> {
        if alpha.target() != self.pi.target() || beta.target() != self.rho.target() {
            return Err(Error::BoundaryMismatch(
                "the 2-cells must land in the factors of the product".into(),
            ));
        }
        let cone = finset::Cone {
            apex: self.product.apex().clone(),
            legs: vec![self.pi.map().clone(), self.rho.map().clone()],
        };
        let map = cone.mediate(&[alpha.map().clone(), beta.map().clone()])?;
        SpanMorphism::new(alpha.source().clone(), self.product.clone(), map)
    }
}

fn check_parallel(r: &Span, s: &Span) -> Result<()> {
    if r.src() != s.src() || r.tgt() != s.tgt() {
        return Err(Error::BoundaryMismatch(
            "local products need parallel spans".into(),
        ));
    }
    Ok(())
}

fn legs_into_product(r: &Span) -> FiniteFunction {
    finset::pair(r.left(), r.right()).expect("legs share a domain")
}

pub fn local_product(r: &Span, s: &Span) -> Result<LocalProduct> {
    check_parallel(r, s)?;
    let cone = finset::pullback(&legs_into_product(r), &legs_into_product(s))?;
    let product = Span::new(
        finset::compose_fn(&cone.legs[0], r.left())?,
        finset::compose_fn(&cone.legs[0], r.right())?,
    )?;
    Ok(LocalProduct {
        pi: SpanMorphism::new(product.clone(), r.clone(), cone.legs[0].clone())?,
        rho: SpanMorphism::new(product.clone(), s.clone(), cone.legs[1].clone())?,
        product,
    })
}

/// `X ← X×A → A`.
pub fn local_terminal(x: &FiniteSet, a: &FiniteSet) -> Span {
    let p = finset::product(x, a);
    Span::new(p.proj1, p.proj2).expect("projections share a domain")
}

/// The unique 2-cell into the terminal span.
pub fn to_terminal(r: &Span) -> SpanMorphism {
    SpanMorphism::new(
        r.clone(),
        local_terminal(r.src(), r.tgt()),
        legs_into_product(r),
    )
    .expect("pairing of legs commutes")
}

pub fn diagonal_map(a: &FiniteSet) -> Span {
    map_from_function(&diagonal(a))
}

/// `d⊗1: A⊗A → A⊗A⊗A`.
pub fn diagonal_tensor_one(a: &FiniteSet) -> Span {
    map_from_function(&finset::product_map(&diagonal(a), &FiniteFunction::identity(a)))
}

/// `1⊗d: A⊗A → A⊗A⊗A`.
pub fn one_tensor_diagonal(a: &FiniteSet) -> Span {
    map_from_function(&finset::product_map(&FiniteFunction::identity(a), &diagonal(a)))
}

/// The threefold diagonal `A → A⊗A⊗A`.
pub fn triple_diagonal(a: &FiniteSet) -> Span {
    let n = a.size();
    let aaa = FiniteSet::new(n * n * n);
    map_from_function(&FiniteFunction::from_fn(a, &aaa, |x| (x * n + x) * n + x))
}

/// `d_X ; (R⊗S) ; d_A*`.
pub fn local_product_via_tensor(r: &Span, s: &Span) -> Result<Span> {
    check_parallel(r, s)?;
    compose_path(&[
        diagonal_map(r.src()),
        tensor(r, s),
        opposite(&diagonal_map(r.tgt())),
    ])
}

/// The square with `d_X` on top, `R∧S` on the left, `R⊗S` on the right and
/// `d_A` along the bottom, filled by the mate of `R∧S ≅ d_X;(R⊗S);d_A*`.
pub fn tensor_comparison(r: &Span, s: &Span) -> Result<GSquare> {
    let lp = local_product(r, s)?;
    let (dx, da) = (diagonal_map(r.src()), diagonal_map(r.tgt()));
    let adj = make_adjunction(&da)?;
    let rs = tensor(r, s);
    let width = s.apex().size();
    let iso = Cell::from_fn(
        &Composite::single(tracked(lp.product())),
        &Composite::new(vec![tracked(&dx), tracked(&rs), tracked(adj.right())])?,
        |t| {
            let k = t[0];
            let (x, a) = lp.product().legs_at(k);
            vec![x, encode_pair(lp.pi.map().apply(k), lp.rho.map().apply(k), width), a]
        },
    )?;
    let whiskered = iso.whisker(&[], &[tracked(&da)])?;
    let eps = adj.counit_cell().at(whiskered.target(), 2)?;
    let end = Composite::new(vec![tracked(&dx), tracked(&rs)])?;
    let fill = whiskered
        .then(&eps)?
        .then(&Cell::canonical(eps.target(), &end)?)?
        .to_morphism();
    GSquare::new(dx, lp.product, rs, da, fill)
}

fn projection_square(r: &Span, s: &Span, first: bool) -> Result<GSquare> {
    let (x, a) = (r.src(), r.tgt());
    let (px, pa) = (finset::product(x, x), finset::product(a, a));
    let (px, pa) = if first {
        (px.proj1, pa.proj1)
    } else {
        (px.proj2, pa.proj2)
    };
    let (pxm, pam) = (map_from_function(&px), map_from_function(&pa));
    let rs = tensor(r, s);
    let side = if first { r } else { s };
    let width = s.apex().size();
    let fill = Cell::from_fn(
        &Composite::new(vec![tracked(&rs), tracked(&pam)])?,
        &Composite::new(vec![tracked(&pxm), tracked(side)])?,
        |t| {
            let (i, j) = decode_pair(t[0], width);
            vec![rs.left().apply(t[0]), if first { i } else { j }]
        },
    )?
    .to_morphism();
    GSquare::new(pxm, rs, side.clone(), pam, fill)
}

/// Pastes the tensor comparison with the projection square and reads the
/// result as 2-cells `R∧S ⇒ R` and `R∧S ⇒ S`.
pub fn recovered_projections(r: &Span, s: &Span) -> Result<(SpanMorphism, SpanMorphism)> {
    let comparison = tensor_comparison(r, s)?;
    let read = |first: bool| -> Result<SpanMorphism> {
        let pasted = paste_horizontal(&comparison, &projection_square(r, s, first)?)?;
        let side = if first { r } else { s };
        let source = Composite::new(vec![
            tracked(pasted.left()),
            Factor::plain(pasted.bottom()),
        ])?;
        let target = Composite::new(vec![Factor::plain(pasted.top()), tracked(side)])?;
        let cell = Cell::from_morphism(&source, &target, pasted.fill())?;
        Cell::canonical(&Composite::single(tracked(pasted.left())), &source)?
            .then(&cell)?
            .then(&Cell::canonical(&target, &Composite::single(tracked(side)))?)
            .map(|c| c.to_morphism())
    };
    Ok((read(true)?, read(false)?))
}

/// At most one 2-cell into `r` from every parallel span with apex at most
/// `r`'s apex plus `extra`.
pub fn is_subterminal(r: &Span, extra: usize) -> bool {
    spans_up_to_iso(r.src().size(), r.tgt().size(), r.apex().size() + extra)
        .iter()
        .all(|t| count_morphisms(t, r) <= 1)
}

/// Brute-force product check: for every test span `T` with apex at most
/// `bound` and every pair `T ⇒ R`, `T ⇒ S`, exactly one `T ⇒ P` factors it.
pub fn is_product_diagram(p: &SpanMorphism, q: &SpanMorphism, bound: usize) -> bool {
    if p.source() != q.source() {
        return false;
    }
    let apex = p.source();
    spans_up_to_iso(apex.src().size(), apex.tgt().size(), bound)
        .iter()
        .all(|t| {
            let into_p: Vec<SpanMorphism> = crate::span::morphisms_between(t, apex);
            let mut ok = true;
            for_each_morphism(t, p.target(), |alpha| {
                for_each_morphism(t, q.target(), |beta| {
                    let count = into_p
                        .iter()
                        .filter(|g| {
                            vertical_compose(g, p).as_ref() == Ok(&alpha)
                                && vertical_compose(g, q).as_ref() == Ok(&beta)
                        })
                        .count();
                    ok = count == 1;
                    ok
                });
                ok
            });
            ok
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span::{find_iso, id_span};

    fn span(src: usize, tgt: usize, left: &[usize], right: &[usize]) -> Span {
        Span::from_tables(src, tgt, left.to_vec(), right.to_vec()).unwrap()
    }

    #[test]
    fn local_product_examples() {
        let r = span(2, 2, &[0, 1, 1], &[1, 0, 0]);
        let top = local_terminal(r.src(), r.tgt());
        assert!(find_iso(local_product(&r, &top).unwrap().product(), &r).is_some());

        let one = id_span(&FiniteSet::new(3));
        let lp = local_product(&one, &one).unwrap();
        assert_eq!(lp.product(), &one);
        assert!(lp.pi().is_identity() && lp.rho().is_identity());

        let two = span(1, 1, &[0, 0], &[0, 0]);
        let three = span(1, 1, &[0, 0, 0], &[0, 0, 0]);
        assert_eq!(local_product(&two, &three).unwrap().product().apex().size(), 6);
    }

    #[test]
    fn terminal_examples() {
        assert_eq!(local_terminal(&FiniteSet::point(), &FiniteSet::point()).apex().size(), 1);
        let a = FiniteSet::new(3);
        let t = crate::finset::FiniteFunction::to_point(&a);
        let tm = map_from_function(&t);
        let composite = crate::span::compose_spans(&tm, &opposite(&tm)).unwrap();
        assert!(find_iso(&composite, &local_terminal(&a, &a)).is_some());
        for r in spans_up_to_iso(2, 2, 3) {
            assert_eq!(count_morphisms(&r, &local_terminal(r.src(), r.tgt())), 1);
            assert_eq!(to_terminal(&r).source(), &r);
        }
    }

    #[test]
    fn via_tensor_examples() {
        let one = id_span(&FiniteSet::new(2));
        assert!(find_iso(&local_product_via_tensor(&one, &one).unwrap(), &one).is_some());
        let two = span(1, 1, &[0, 0], &[0, 0]);
        let three = span(1, 1, &[0, 0, 0], &[0, 0, 0]);
        let via = local_product_via_tensor(&two, &three).unwrap();
        assert!(find_iso(&via, local_product(&two, &three).unwrap().product()).is_some());
        let top = local_terminal(&FiniteSet::new(2), &FiniteSet::new(2));
        assert!(find_iso(&local_product_via_tensor(&top, &top).unwrap(), &top).is_some());
    }

    #[test]
    fn projections_are_recovered() {
        let r = span(2, 2, &[0, 1, 1], &[1, 0, 1]);
        let s = span(2, 2, &[1, 1, 0, 0], &[0, 0, 1, 1]);
        let lp = local_product(&r, &s).unwrap();
        let (pi, rho) = recovered_projections(&r, &s).unwrap();
        assert_eq!(&pi, lp.pi());
        assert_eq!(&rho, lp.rho());
    }

    #[test]
    fn subterminal_examples() {
        assert!(is_subterminal(&id_span(&FiniteSet::new(2)), 2));
        assert!(is_subterminal(&map_from_function(&FiniteFunction::from_table(2, 2, vec![1, 1]).unwrap()), 2));
        assert!(is_subterminal(&local_terminal(&FiniteSet::new(2), &FiniteSet::new(2)), 1));
        assert!(!is_subterminal(&span(1, 1, &[0, 0], &[0, 0]), 0));
    }

    #[test]
    fn product_diagram_check() {
        let r = span(1, 2, &[0, 0], &[0, 1]);
        let s = span(1, 2, &[0], &[1]);
        let lp = local_product(&r, &s).unwrap();
        assert!(is_product_diagram(lp.pi(), lp.rho(), 3));
        let pi2 = SpanMorphism::identity(&r);
        let to_s = morphisms_into(&r, &s);
        assert!(to_s.is_empty() || !is_product_diagram(&pi2, &to_s[0], 3));
        let pair = lp.pair(&SpanMorphism::identity(lp.product()).then(lp.pi()).unwrap(), lp.rho());
        assert_eq!(pair.unwrap(), SpanMorphism::identity(lp.product()));
    }

    fn morphisms_into(r: &Span, s: &Span) -> Vec<SpanMorphism> {
        crate::span::morphisms_between(r, s)
    }
}
