//! Comonads on objects of spans, their Eilenberg-Moore objects, the comonad
//! `G(R)` attached to a span, and tabulations.
//!
//! A comonad here is an endospan whose two legs coincide; its counit is the
//! shared leg and its comultiplication sends `s` to `(s, s)`.

use crate::axioms::frobenius_mate;
use crate::composite::{Cell, Composite, Factor};
use crate::enumerate::all_functions;
use crate::error::{Error, Result};
use crate::finset::{self, FiniteFunction, FiniteSet};
use crate::local::{
    diagonal_map, diagonal_tensor_one, local_product, one_tensor_diagonal, triple_diagonal,
    is_product_diagram,
};
use crate::maps::{make_adjunction, map_from_function, path, tracked, transpose_left};
use crate::report::{AxiomReport, Counterexample, Witness};
use crate::span::{
    compose_spans, find_iso, for_each_morphism, id_span, morphisms_between, opposite, Span,
    SpanMorphism,
};

/// The unique 2-cell `G ⇒ 1_A`, present exactly when both legs agree.
pub fn find_copoint(g: &Span) -> Option<SpanMorphism> {
    if !g.is_endo() || g.left() != g.right() {
        return None;
    }
    Some(
        SpanMorphism::new(g.clone(), id_span(g.src()), g.left().clone())
            .expect("the shared leg commutes with the identity span"),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comonad {
    carrier: Span,
    counit: SpanMorphism,
    comult: SpanMorphism,
}

fn single(s: &Span) -> Composite {
    Composite::single(tracked(s))
}

fn counit_cell_of(g: &Span, eps: &SpanMorphism) -> Cell {
    Cell::from_morphism(&single(g), &Composite::identity(g.src()), eps)
        .expect("counit runs from the carrier to the identity")
}

fn comult_cell_of(g: &Span, delta: &SpanMorphism) -> Result<Cell> {
    Cell::from_morphism(&single(g), &path(&[g, g])?, delta)
}

/// Both counit laws for a candidate comultiplication.
fn counit_laws(g: &Span, eps: &SpanMorphism, delta: &SpanMorphism) -> Result<bool> {
    let d = comult_cell_of(g, delta)?;
    let e = counit_cell_of(g, eps);
    let id = Cell::identity(&single(g));
    let left = d.then(&e.at(d.target(), 0)?)?;
    let left = left.then(&Cell::canonical(left.target(), &single(g))?)?;
    let right = d.then(&e.at(d.target(), 1)?)?;
    let right = right.then(&Cell::canonical(right.target(), &single(g))?)?;
    Ok(left == id && right == id)
}

fn coassociative(g: &Span, delta: &SpanMorphism) -> Result<bool> {
    let d = comult_cell_of(g, delta)?;
    let first = d.then(&d.at(d.target(), 0)?)?;
    let second = d.then(&d.at(d.target(), 1)?)?;
    Ok(first == second)
}

/// Builds the comonad structure on a copointed endospan.
pub fn comultiplication(g: &Span, eps: &SpanMorphism) -> Result<Comonad> {
    let expected = find_copoint(g).ok_or(Error::NoCopoint)?;
    if eps != &expected {
        return Err(Error::NotACell("the given counit is not the copoint".into()));
    }
    let delta = Cell::from_fn(&single(g), &path(&[g, g])?, |t| vec![t[0], t[0]])?.to_morphism();
    let comonad = Comonad {
        carrier: g.clone(),
        counit: expected,
        comult: delta,
    };
    if !comonad.laws_hold()? {
        return Err(Error::Precondition("comonad laws fail".into()));
    }
    Ok(comonad)
}

impl Comonad {
    pub fn new(g: &Span) -> Result<Comonad> {
        let eps = find_copoint(g).ok_or(Error::NoCopoint)?;
        comultiplication(g, &eps)
    }

    pub fn carrier(&self) -> &Span {
        &self.carrier
    }

    pub fn object(&self) -> &FiniteSet {
        self.carrier.src()
    }

    pub fn counit(&self) -> &SpanMorphism {
        &self.counit
    }

    pub fn comult(&self) -> &SpanMorphism {
        &self.comult
    }

    pub fn counit_cell(&self) -> Cell {
        counit_cell_of(&self.carrier, &self.counit)
    }

    pub fn comult_cell(&self) -> Cell {
        comult_cell_of(&self.carrier, &self.comult).expect("comultiplication is well typed")
    }

    pub fn laws_hold(&self) -> Result<bool> {
        Ok(counit_laws(&self.carrier, &self.counit, &self.comult)?
            && coassociative(&self.carrier, &self.comult)?)
    }
}

/// Number of 2-cells `G ⇒ G;G` satisfying both counit laws and
/// coassociativity, found by exhaustive search.
pub fn count_comultiplications(g: &Span) -> Result<usize> {
    let eps = find_copoint(g).ok_or(Error::NoCopoint)?;
    let gg = compose_spans(g, g)?;
    let mut count = 0;
    let mut failure = None;
    for_each_morphism(g, &gg, |delta| {
        match counit_laws(g, &eps, &delta).and_then(|ok| {
            Ok(ok && coassociative(g, &delta)?)
        }) {
            Ok(true) => count += 1,
            Ok(false) => {}
            Err(e) => failure = Some(e),
        }
        failure.is_none()
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

/// The comultiplication obtained by pasting: the local triple diagonal, the
/// counit in the middle tensor factor, the structural identifications, the
/// inverse of the Frobenius 2-cell, and finally `G∧1 ≅ G ≅ 1∧G`.
pub fn comultiplication_by_pasting(g: &Span) -> Result<SpanMorphism> {
    let eps = find_copoint(g).ok_or(Error::NoCopoint)?;
    let a = g.src().clone();
    let m = g.apex().size();
    let gf = tracked(g);
    let one = Factor::identity(&a);
    let plain = |s: &Span| Factor::plain(s);
    let d = diagonal_map(&a);
    let ds = opposite(&d);
    let d3 = triple_diagonal(&a);
    let d3s = opposite(&d3);
    let one_d = one_tensor_diagonal(&a);
    let d_one_s = opposite(&diagonal_tensor_one(&a));
    let ggg = Factor::tensor_all(&[gf.clone(), gf.clone(), gf.clone()]);
    let g11 = Factor::tensor_all(&[gf.clone(), one.clone(), one.clone()]);
    let i1g = Factor::tensor_all(&[one.clone(), one.clone(), gf.clone()]);
    let g1g = Factor::tensor_all(&[gf.clone(), one.clone(), gf.clone()]);
    let g1 = Factor::tensor(&gf, &one);
    let ig = Factor::tensor(&one, &gf);
    let new = |f: Vec<Factor>| Composite::new(f);

    // G ⇒ d_3;(G⊗G⊗G);d_3*
    let triple = new(vec![plain(&d3), ggg, plain(&d3s)])?;
    let delta3 = Cell::from_fn(&Composite::single(gf.clone()), &triple, |t| {
        let (s, x) = (t[0], g.left().apply(t[0]));
        vec![x, (s * m + s) * m + s, x]
    })?;
    // G⊗ε⊗G
    let eps_cell = counit_cell_of(g, &eps);
    let id_g = Cell::identity(&Composite::single(gf.clone()));
    let geg = Cell::tensor(&Cell::tensor(&id_g, &eps_cell), &id_g);
    let mut cell = delta3.then(&geg.at(delta3.target(), 1)?)?;
    let step = |piece: Cell, at: usize, cell: &mut Cell| -> Result<()> {
        *cell = cell.then(&piece.at(cell.target(), at)?)?;
        Ok(())
    };
    // G⊗1⊗G ≅ (G⊗1⊗1);(1⊗1⊗G)
    step(
        Cell::canonical(&Composite::single(g1g), &new(vec![g11.clone(), i1g.clone()])?)?,
        1,
        &mut cell,
    )?;
    // d_3 ≅ d;(1⊗d) and d_3* ≅ (d*⊗1);d*
    step(
        Cell::canonical(&Composite::single(plain(&d3)), &new(vec![plain(&d), plain(&one_d)])?)?,
        0,
        &mut cell,
    )?;
    step(
        Cell::canonical(
            &Composite::single(plain(&d3s)),
            &new(vec![plain(&d_one_s), plain(&ds)])?,
        )?,
        4,
        &mut cell,
    )?;
    // (1⊗d);(G⊗1⊗1) ≅ (G⊗1);(1⊗d)
    step(
        Cell::canonical(
            &new(vec![plain(&one_d), g11])?,
            &new(vec![g1.clone(), plain(&one_d)])?,
        )?,
        1,
        &mut cell,
    )?;
    // (1⊗1⊗G);(d*⊗1) ≅ (d*⊗1);(1⊗G)
    step(
        Cell::canonical(
            &new(vec![i1g, plain(&d_one_s)])?,
            &new(vec![plain(&d_one_s), ig.clone()])?,
        )?,
        3,
        &mut cell,
    )?;
    // (1⊗d);(d*⊗1) ⇒ d*;d, inverse of the Frobenius 2-cell
    let frobenius = frobenius_mate(&a)?.inverse()?;
    step(
        Cell::from_morphism(
            &new(vec![plain(&one_d), plain(&d_one_s)])?,
            &new(vec![plain(&ds), plain(&d)])?,
            &frobenius,
        )?,
        2,
        &mut cell,
    )?;
    // d;(G⊗1);d* ≅ G and d;(1⊗G);d* ≅ G
    step(
        Cell::canonical(
            &new(vec![plain(&d), g1, plain(&ds)])?,
            &Composite::single(gf.clone()),
        )?,
        0,
        &mut cell,
    )?;
    step(
        Cell::canonical(
            &new(vec![plain(&d), ig, plain(&ds)])?,
            &Composite::single(gf.clone()),
        )?,
        1,
        &mut cell,
    )?;
    Ok(cell.to_morphism())
}

/// `δ_H ∘ φ = (φ;φ) ∘ δ_G` for a 2-cell `φ: G ⇒ H` between copointed endospans.
pub fn naturality_holds(gc: &Comonad, hc: &Comonad, phi: &SpanMorphism) -> Result<bool> {
    let (g, h) = (gc.carrier(), hc.carrier());
    let phi = Cell::from_morphism(&single(g), &single(h), phi)?;
    let lhs = phi.then(&hc.comult_cell())?;
    let doubled = phi.whisker(&[], &[tracked(g)])?;
    let doubled = doubled.then(&phi.at(doubled.target(), 1)?)?;
    let rhs = gc.comult_cell().then(&doubled)?;
    Ok(lhs == rhs)
}

/// The composite `H;G` of copointed endospans with its two projections
/// `H;G ⇒ G` (counit of `H`) and `H;G ⇒ H` (counit of `G`).
pub fn wedge_projections(gc: &Comonad, hc: &Comonad) -> Result<(SpanMorphism, SpanMorphism)> {
    let (g, h) = (gc.carrier(), hc.carrier());
    let hg = path(&[h, g])?;
    let to_g = hc.counit_cell().at(&hg, 0)?;
    let to_g = to_g.then(&Cell::canonical(to_g.target(), &single(g))?)?;
    let to_h = gc.counit_cell().at(&hg, 1)?;
    let to_h = to_h.then(&Cell::canonical(to_h.target(), &single(h))?)?;
    Ok((to_g.to_morphism(), to_h.to_morphism()))
}

/// Pairing `K ⇒ K;K ⇒ H;G` of `alpha: K ⇒ G` and `beta: K ⇒ H`.
pub fn wedge_pairing(
    kc: &Comonad,
    gc: &Comonad,
    hc: &Comonad,
    alpha: &SpanMorphism,
    beta: &SpanMorphism,
) -> Result<SpanMorphism> {
    let (k, g, h) = (kc.carrier(), gc.carrier(), hc.carrier());
    let alpha = Cell::from_morphism(&single(k), &single(g), alpha)?;
    let beta = Cell::from_morphism(&single(k), &single(h), beta)?;
    let both = beta.beside(&alpha)?;
    Ok(kc.comult_cell().then(&both)?.to_morphism())
}

/// `δ_{H;G}` followed by the two counits is the identity of `H;G`.
pub fn wedge_triangle_holds(gc: &Comonad, hc: &Comonad) -> Result<bool> {
    let (g, h) = (gc.carrier(), hc.carrier());
    let hg = path(&[h, g])?;
    let delta = Cell::from_fn(&hg, &path(&[h, g, h, g])?, |t| vec![t[0], t[1], t[0], t[1]])?;
    let kill_g = gc.counit_cell().at(delta.target(), 1)?;
    let kill_h = hc.counit_cell().at(kill_g.target(), 2)?;
    let back = Cell::canonical(kill_h.target(), &hg)?;
    let total = delta.then(&kill_g)?.then(&kill_h)?.then(&back)?;
    Ok(total == Cell::identity(&hg))
}

/// The composite `H;G` of copointed endospans is their product in the hom
/// category, checked by brute force over test spans with apex at most `bound`.
pub fn check_wedge_of_copointed(g: &Span, h: &Span, bound: usize) -> Result<AxiomReport> {
    let (gc, hc) = (Comonad::new(g)?, Comonad::new(h)?);
    let subject = format!("composite of copointed endospans is a product (bound {bound})");
    let (p, q) = wedge_projections(&gc, &hc)?;
    if !is_product_diagram(&p, &q, bound) {
        return Ok(AxiomReport::fail(
            subject,
            Counterexample::new("not-a-product", "universal property fails")
                .with_spans([g, h]),
        )
        .bounded());
    }
    let lp = local_product(g, h)?;
    match find_iso(p.source(), lp.product()) {
        Some(iso) => Ok(AxiomReport::pass(subject, Witness::iso(&*iso)).bounded()),
        None => Ok(AxiomReport::fail(
            subject,
            Counterexample::new("no-iso", "composite is not isomorphic to the local product")
                .with_spans([g, h]),
        )
        .bounded()),
    }
}

/// The two equations for a comonad arrow `(f, φ)` with `φ: G;f ⇒ f;H`.
pub fn d_arrow_equations_hold(
    f: &Span,
    gc: &Comonad,
    hc: &Comonad,
    phi: &SpanMorphism,
) -> Result<bool> {
    let (g, h) = (gc.carrier(), hc.carrier());
    let source = path(&[g, f])?;
    let target = path(&[f, h])?;
    if phi.source() != source.span() || phi.target() != target.span() {
        return Err(Error::BoundaryMismatch(
            "phi must run from G;f to f;H".into(),
        ));
    }
    let phi = Cell::from_morphism(&source, &target, phi)?;
    let fc = single(f);

    let lhs = gc.counit_cell().at(&source, 0)?;
    let lhs = lhs.then(&Cell::canonical(lhs.target(), &fc)?)?;
    let rhs = phi.then(&hc.counit_cell().at(&target, 1)?)?;
    let rhs = rhs.then(&Cell::canonical(rhs.target(), &fc)?)?;
    let first = lhs == rhs;

    let dup = gc.comult_cell().at(&source, 0)?;
    let step = phi.at(dup.target(), 1)?;
    let step2 = phi.at(step.target(), 0)?;
    let lhs = dup.then(&step)?.then(&step2)?;
    let rhs = phi.then(&hc.comult_cell().at(&target, 1)?)?;
    Ok(first && lhs == rhs)
}

/// As [`d_arrow_equations_hold`], but `phi` is a raw apex table that is
/// validated first; a table that is not a 2-cell is a precondition violation.
pub fn d_arrow_equations_hold_table(
    f: &Span,
    gc: &Comonad,
    hc: &Comonad,
    table: Vec<usize>,
) -> Result<bool> {
    let source = compose_spans(gc.carrier(), f)?;
    let target = compose_spans(f, hc.carrier())?;
    let phi = SpanMorphism::from_table(&source, &target, table)
        .map_err(|e| Error::Precondition(format!("phi is not a 2-cell: {e}")))?;
    d_arrow_equations_hold(f, gc, hc, &phi)
}

/// The Eilenberg-Moore object of a comonad with its universal coalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMObject {
    object: FiniteSet,
    projection: Span,
    coalgebra: SpanMorphism,
}

impl EMObject {
    pub fn object(&self) -> &FiniteSet {
        &self.object
    }

    /// The map `A_G → A`.
    pub fn projection(&self) -> &Span {
        &self.projection
    }

    /// `γ: g ⇒ g;G`.
    pub fn coalgebra(&self) -> &SpanMorphism {
        &self.coalgebra
    }

    /// The transpose `g*;g ⇒ G` of the coalgebra.
    pub fn mate(&self, c: &Comonad) -> Result<SpanMorphism> {
        let cell = Cell::from_morphism(
            &single(&self.projection),
            &path(&[&self.projection, c.carrier()])?,
            &self.coalgebra,
        )?;
        Ok(transpose_left(&cell, &make_adjunction(&self.projection)?)?.to_morphism())
    }

    /// `g ≅ 1;g ⇒ g;g*;g ≅ g;G`, built from the unit of `g ⊣ g*`.
    pub fn coalgebra_via_unit(&self, c: &Comonad) -> Result<SpanMorphism> {
        let g = &self.projection;
        let adj = make_adjunction(g)?;
        let start = Composite::new(vec![Factor::identity(g.src()), tracked(g)])?;
        let eta = adj.unit_cell().at(&start, 0)?;
        let collapse = Cell::from_fn(&path(&[adj.right(), g])?, &single(c.carrier()), |t| {
            vec![t[0]]
        })?;
        let collapsed = collapse.at(eta.target(), 1)?;
        Ok(Cell::canonical(&single(g), &start)?
            .then(&eta)?
            .then(&collapsed)?
            .to_morphism())
    }

    /// Functions `k: T → A_G` through which a coalgebra `(h, θ)` factors,
    /// found by trying every function.
    pub fn mediators(
        &self,
        c: &Comonad,
        h: &Span,
        theta: &SpanMorphism,
    ) -> Result<Vec<FiniteFunction>> {
        let target = path(&[h, c.carrier()])?;
        let theta = Cell::from_morphism(&single(h), &target, theta)?;
        let h_fn = crate::maps::function_from_map(h)?;
        let g_fn = crate::maps::function_from_map(&self.projection)?;
        Ok(all_functions(h.src().size(), self.object.size())
            .into_iter()
            .filter(|k| {
                finset::compose_fn(k, &g_fn).as_ref() == Ok(&h_fn)
                    && (0..theta.source().size())
                        .all(|t| theta.target().tuple(theta.map()[t])[1] == k.apply(t))
            })
            .collect())
    }
}

pub fn em_object(c: &Comonad) -> Result<EMObject> {
    if !c.laws_hold()? {
        return Err(Error::Precondition("invalid comonad data".into()));
    }
    let g = c.carrier();
    let projection = map_from_function(g.left());
    let coalgebra = Cell::from_fn(&single(&projection), &path(&[&projection, g])?, |t| {
        vec![t[0], t[0]]
    })?
    .to_morphism();
    let em = EMObject {
        object: g.apex().clone(),
        projection,
        coalgebra,
    };
    if !em.mate(c)?.is_invertible() {
        return Err(Error::Precondition(
            "the transpose of the coalgebra is not invertible".into(),
        ));
    }
    Ok(em)
}

/// Counit and coassociativity laws for a coalgebra `θ: h ⇒ h;G` on a map `h`.
pub fn is_coalgebra(c: &Comonad, h: &Span, theta: &SpanMorphism) -> Result<bool> {
    let hc = single(h);
    let target = path(&[h, c.carrier()])?;
    let theta = Cell::from_morphism(&hc, &target, theta)?;
    let counit = theta.then(&c.counit_cell().at(&target, 1)?)?;
    let counit = counit.then(&Cell::canonical(counit.target(), &hc)?)?;
    if counit != Cell::identity(&hc) {
        return Ok(false);
    }
    let twice = theta.then(&theta.at(&target, 0)?)?;
    let dup = theta.then(&c.comult_cell().at(&target, 1)?)?;
    Ok(twice == dup)
}

/// Every coalgebra on a map into the comonad's object, with domain of size
/// at most `bound`, factors through the Eilenberg-Moore object by exactly
/// one function.
pub fn check_em_universal(c: &Comonad, em: &EMObject, bound: usize) -> Result<AxiomReport> {
    let subject = format!("Eilenberg-Moore universal property (test domains up to {bound})");
    let a = c.object().size();
    let mut checked = 0;
    for t in 0..=bound {
        for h_fn in all_functions(t, a) {
            let h = map_from_function(&h_fn);
            let hg = compose_spans(&h, c.carrier())?;
            for theta in morphisms_between(&h, &hg) {
                if !is_coalgebra(c, &h, &theta)? {
                    continue;
                }
                checked += 1;
                let found = em.mediators(c, &h, &theta)?;
                if found.len() != 1 {
                    return Ok(AxiomReport::fail(
                        subject,
                        Counterexample::new(
                            "mediator-count",
                            format!("{} mediating functions", found.len()),
                        )
                        .with_cell((&theta).into()),
                    )
                    .bounded());
                }
            }
        }
    }
    Ok(AxiomReport::pass(subject, Witness::Exhaustive { checked }).bounded())
}

/// `G(R) = (d_X⊗1_A);(1_X⊗R⊗1_A);(1_X⊗d_A*)` on `X⊗A`, with the function
/// sending each apex element of `G(R)` to the element of `R` it came from.
pub fn g_of_r_with_source(r: &Span) -> Result<(Comonad, Vec<usize>)> {
    let (x, a) = (r.src(), r.tgt());
    let first = map_from_function(&finset::product_map(
        &finset::diagonal(x),
        &FiniteFunction::identity(a),
    ));
    let middle = crate::span::tensor_all(&[id_span(x), r.clone(), id_span(a)]);
    let last = opposite(&one_tensor_diagonal_between(x, a));
    let composite = Composite::new(vec![
        Factor::plain(&first),
        Factor::plain(&middle),
        Factor::plain(&last),
    ])?;
    let (ns, na) = (r.apex().size(), a.size());
    let source = (0..composite.size())
        .map(|k| (composite.tuple(k)[1] / na) % ns)
        .collect();
    Ok((Comonad::new(composite.span())?, source))
}

/// `1_X⊗d_A: X⊗A → X⊗A⊗A`.
fn one_tensor_diagonal_between(x: &FiniteSet, a: &FiniteSet) -> Span {
    map_from_function(&finset::product_map(
        &FiniteFunction::identity(x),
        &finset::diagonal(a),
    ))
}

pub fn g_of_r(r: &Span) -> Result<Comonad> {
    g_of_r_with_source(r).map(|(c, _)| c)
}

/// The counit `μ: G(R);r ⇒ p;R` and its transpose `p*;G(R);r ⇒ R`, where
/// `p` and `r` are the projections of `X⊗A`.
pub fn g_of_r_counit(r: &Span) -> Result<(SpanMorphism, SpanMorphism)> {
    let (c, source) = g_of_r_with_source(r)?;
    let prod = finset::product(r.src(), r.tgt());
    let p = map_from_function(&prod.proj1);
    let q = map_from_function(&prod.proj2);
    let gr = c.carrier();
    let mu = Cell::from_fn(&path(&[gr, &q])?, &path(&[&p, r])?, |t| {
        vec![gr.left().apply(t[0]), source[t[0]]]
    })?;
    let mate = transpose_left(&mu, &make_adjunction(&p)?)?;
    Ok((mu.to_morphism(), mate.to_morphism()))
}

/// `(x,a)*;(x,a)` for a span `X ←x S →a A`.
pub fn paired_legs_comonad(r: &Span) -> Result<Span> {
    let xa = map_from_function(&finset::pair(r.left(), r.right())?);
    compose_spans(&opposite(&xa), &xa)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tabulation {
    apex_object: FiniteSet,
    u: Span,
    v: Span,
    omega: SpanMorphism,
}

impl Tabulation {
    pub fn apex_object(&self) -> &FiniteSet {
        &self.apex_object
    }

    pub fn u(&self) -> &Span {
        &self.u
    }

    pub fn v(&self) -> &Span {
        &self.v
    }

    /// `ω: v ⇒ u;R`.
    pub fn omega(&self) -> &SpanMorphism {
        &self.omega
    }

    /// The transpose `u*;v ⇒ R` of `ω`.
    pub fn mate(&self, r: &Span) -> Result<SpanMorphism> {
        let cell = Cell::from_morphism(&single(&self.v), &path(&[&self.u, r])?, &self.omega)?;
        Ok(transpose_left(&cell, &make_adjunction(&self.u)?)?.to_morphism())
    }
}

pub fn tabulate(r: &Span) -> Result<Tabulation> {
    let u = map_from_function(r.left());
    let v = map_from_function(r.right());
    let omega =
        Cell::from_fn(&single(&v), &path(&[&u, r])?, |t| vec![t[0], t[0]])?.to_morphism();
    Ok(Tabulation {
        apex_object: r.apex().clone(),
        u,
        v,
        omega,
    })
}

/// `ω` rebuilt as `a η_x`: `v ≅ 1;v ⇒ x;x*;v ≅ u;R`.
pub fn tabulation_counit_via_unit(r: &Span) -> Result<SpanMorphism> {
    let u = map_from_function(r.left());
    let v = map_from_function(r.right());
    let adj = make_adjunction(&u)?;
    let start = Composite::new(vec![Factor::identity(u.src()), tracked(&v)])?;
    let eta = adj.unit_cell().at(&start, 0)?;
    let to_r = Cell::from_fn(&path(&[adj.right(), &v])?, &single(r), |t| vec![t[0]])?;
    let moved = to_r.at(eta.target(), 1)?;
    Ok(Cell::canonical(&single(&v), &start)?
        .then(&eta)?
        .then(&moved)?
        .to_morphism())
}

/// Every span of maps `(u', v')` out of a test object `T` with a 2-cell
/// `v' ⇒ u';R` factors through the tabulation by exactly one function.
pub fn check_tabulation_couniversal(r: &Span, bound: usize) -> Result<AxiomReport> {
    let subject = format!("tabulation is couniversal (test domains up to {bound})");
    let (x, a, s) = (r.src().size(), r.tgt().size(), r.apex().size());
    let mut checked = 0;
    for t in 0..=bound {
        let all_s = all_functions(t, s);
        for u_fn in all_functions(t, x) {
            for v_fn in all_functions(t, a) {
                let (u2, v2) = (map_from_function(&u_fn), map_from_function(&v_fn));
                let ur = compose_spans(&u2, r)?;
                for omega in morphisms_between(&v2, &ur) {
                    checked += 1;
                    let target = path(&[&u2, r])?;
                    let cell = Cell::from_morphism(&single(&v2), &target, &omega)?;
                    let count = all_s
                        .iter()
                        .filter(|k| {
                            finset::compose_fn(k, r.left()).as_ref() == Ok(&u_fn)
                                && finset::compose_fn(k, r.right()).as_ref() == Ok(&v_fn)
                                && (0..t).all(|e| cell.target().tuple(cell.map()[e])[1] == k.apply(e))
                        })
                        .count();
                    if count != 1 {
                        return Ok(AxiomReport::fail(
                            subject,
                            Counterexample::new("mediator-count", format!("{count} mediators"))
                                .with_cell((&omega).into()),
                        )
                        .bounded());
                    }
                }
            }
        }
    }
    Ok(AxiomReport::pass(subject, Witness::Exhaustive { checked }).bounded())
}

/// Reads `(u, v)` off the Eilenberg-Moore object of `G(R)` and compares the
/// resulting span of maps with `tabulate(R)`.
pub fn tabulation_via_em_agrees(r: &Span) -> Result<bool> {
    let c = g_of_r(r)?;
    let em = em_object(&c)?;
    let g = crate::maps::function_from_map(em.projection())?;
    let prod = finset::product(r.src(), r.tgt());
    let u = finset::compose_fn(&g, &prod.proj1)?;
    let v = finset::compose_fn(&g, &prod.proj2)?;
    let tab = tabulate(r)?;
    let direct = Span::new(
        crate::maps::function_from_map(tab.u())?,
        crate::maps::function_from_map(tab.v())?,
    )?;
    Ok(find_iso(&Span::new(u, v)?, &direct).is_some())
}

/// Exhaustive check that an endospan admits a comonad structure exactly when
/// its legs agree, and then exactly one.
pub fn copoint_criterion_holds(g: &Span) -> Result<bool> {
    let copoints = morphisms_between(g, &id_span(g.src()));
    let equal_legs = g.left() == g.right();
    if equal_legs != !copoints.is_empty() || copoints.len() > 1 {
        return Ok(false);
    }
    if !equal_legs {
        return Ok(find_copoint(g).is_none());
    }
    Ok(count_comultiplications(g)? == 1)
}
