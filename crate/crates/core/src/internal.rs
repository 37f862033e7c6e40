//! Categories internal to finite sets: an object of objects, an object of
//! arrows, boundary and identity maps, and a composition map whose domain
//! is the pullback of composable pairs.
//!
//! Pairs are ordered outer-first: an element of the composable-pair object
//! is `(g, f)` with `dom(g) = cod(f)`, and the composition map sends it to
//! `g ∘ f`. Splits of idempotents are carried as explicit retraction and
//! section maps out of the subobject of idempotent arrows; canonicity of a
//! split is a further property checked elementwise.

use std::collections::HashMap;

use thiserror::Error;

use crate::finset::{
    compose, hom_maps, mediate_equalizer, pullback, subset_where, Element, FinMap, FinObj,
};
use crate::plaincat::{arrow_tokens, FinCat, KaroubiCat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InternalError {
    #[error("malformed internal data: {0}")]
    Shape(String),
    #[error("enumeration exceeded the budget of {0} candidates")]
    SizeBudgetExceeded(u64),
}

/// An internal category presented by its structure maps. Construction
/// checks only shapes: the boundary, identity, and composition maps must
/// have the stated endpoints, with composition total on exactly the
/// composable pairs. Lawfulness is [`check_internal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalCat {
    a0: FinObj,
    a1: FinObj,
    dom: FinMap,
    cod: FinMap,
    ident: FinMap,
    comp: FinMap,
    a2: FinObj,
    pi1: FinMap,
    pi2: FinMap,
}

impl InternalCat {
    pub fn new(
        a0: FinObj,
        a1: FinObj,
        dom: FinMap,
        cod: FinMap,
        ident: FinMap,
        comp: FinMap,
    ) -> Result<Self, InternalError> {
        let endpoints = [
            (&dom, &a1, &a0, "dom"),
            (&cod, &a1, &a0, "cod"),
            (&ident, &a0, &a1, "ident"),
        ];
        for (map, d, c, name) in endpoints {
            if map.dom() != d || map.cod() != c {
                return Err(InternalError::Shape(format!(
                    "{name} must go from {d} to {c}"
                )));
            }
        }
        let (a2, pi1, pi2) = pullback(&dom, &cod).expect("dom and cod share the object of objects");
        if comp.dom() != &a2 {
            return Err(InternalError::Shape(
                "composition must be defined on exactly the composable pairs".into(),
            ));
        }
        if comp.cod() != &a1 {
            return Err(InternalError::Shape(
                "composition must land in the object of arrows".into(),
            ));
        }
        Ok(InternalCat {
            a0,
            a1,
            dom,
            cod,
            ident,
            comp,
            a2,
            pi1,
            pi2,
        })
    }

    pub fn a0(&self) -> &FinObj {
        &self.a0
    }

    pub fn a1(&self) -> &FinObj {
        &self.a1
    }

    pub fn dom_map(&self) -> &FinMap {
        &self.dom
    }

    pub fn cod_map(&self) -> &FinMap {
        &self.cod
    }

    pub fn ident_map(&self) -> &FinMap {
        &self.ident
    }

    pub fn comp_map(&self) -> &FinMap {
        &self.comp
    }

    /// The object of composable pairs `(g, f)` with `dom(g) = cod(f)`.
    pub fn a2(&self) -> &FinObj {
        &self.a2
    }

    /// Projection onto the outer arrow `g`.
    pub fn pi1(&self) -> &FinMap {
        &self.pi1
    }

    /// Projection onto the inner arrow `f`.
    pub fn pi2(&self) -> &FinMap {
        &self.pi2
    }

    pub fn dom_of<'a>(&'a self, u: &Element) -> &'a Element {
        self.dom.apply(u)
    }

    pub fn cod_of<'a>(&'a self, u: &Element) -> &'a Element {
        self.cod.apply(u)
    }

    pub fn ident_of<'a>(&'a self, x: &Element) -> &'a Element {
        self.ident.apply(x)
    }

    pub fn composable(&self, g: &Element, f: &Element) -> bool {
        self.dom_of(g) == self.cod_of(f)
    }

    /// `g ∘ f`; the pair must be composable.
    pub fn c_apply(&self, g: &Element, f: &Element) -> Element {
        self.comp
            .apply(&Element::pair(g.clone(), f.clone()))
            .clone()
    }
}

/// All law violations, one line each: identity boundaries, composite
/// boundaries, units, and associativity over composable triples.
pub fn internal_violations(a: &InternalCat) -> Vec<String> {
    let mut out = Vec::new();
    for x in a.a0.elems() {
        let i = a.ident_of(x);
        if a.dom_of(i) != x {
            out.push(format!("identity {i} of {x} does not start at {x}"));
        }
        if a.cod_of(i) != x {
            out.push(format!("identity {i} of {x} does not end at {x}"));
        }
    }
    for p in a.a2.elems() {
        let (g, f) = p.expect_pair();
        let h = a.comp.apply(p);
        if a.dom_of(h) != a.dom_of(f) {
            out.push(format!(
                "composite {g} ∘ {f} = {h} does not start where {f} does"
            ));
        }
        if a.cod_of(h) != a.cod_of(g) {
            out.push(format!(
                "composite {g} ∘ {f} = {h} does not end where {g} does"
            ));
        }
    }
    for u in a.a1.elems() {
        let lid = a.ident_of(a.cod_of(u)).clone();
        if a.composable(&lid, u) && &a.c_apply(&lid, u) != u {
            out.push(format!("left unit fails: {lid} ∘ {u} ≠ {u}"));
        }
        let rid = a.ident_of(a.dom_of(u)).clone();
        if a.composable(u, &rid) && &a.c_apply(u, &rid) != u {
            out.push(format!("right unit fails: {u} ∘ {rid} ≠ {u}"));
        }
    }
    // Composable triples, walked as a composable pair plus one more arrow
    // out of the outer codomain. Boundary failures above can make a derived
    // pair non-composable; those triples are skipped rather than compounded.
    let mut by_dom: HashMap<&Element, Vec<&Element>> = HashMap::new();
    for u in a.a1.elems() {
        by_dom.entry(a.dom_of(u)).or_default().push(u);
    }
    for p in a.a2.elems() {
        let (g, f) = p.expect_pair();
        let gf = a.comp.apply(p).clone();
        for &h in by_dom.get(a.cod_of(g)).into_iter().flatten() {
            if !a.composable(h, &gf) || !a.composable(h, g) {
                continue;
            }
            let hg = a.c_apply(h, g);
            if !a.composable(&hg, f) {
                continue;
            }
            if a.c_apply(h, &gf) != a.c_apply(&hg, f) {
                out.push(format!("associativity fails on ({h}, {g}, {f})"));
            }
        }
    }
    out
}

pub fn check_internal(a: &InternalCat) -> bool {
    internal_violations(a).is_empty()
}

/// The subobject of endoarrows (`dom = cod`) with its inclusion.
pub fn endo_object(a: &InternalCat) -> (FinObj, FinMap) {
    subset_where(a.a1(), |u| a.dom_of(u) == a.cod_of(u)).expect("endoarrows form a subset")
}

/// The subobject of idempotent arrows with its inclusion into the arrows.
pub fn idem_object(a: &InternalCat) -> (FinObj, FinMap) {
    subset_where(a.a1(), |u| {
        a.dom_of(u) == a.cod_of(u) && &a.c_apply(u, u) == u
    })
    .expect("idempotents form a subset")
}

/// A choice of split for every idempotent: the retraction carries `u` (an
/// idempotent on `x`) to an arrow `x → mid`, the section to `mid → x`, and
/// the two compose back to `u` one way and to the identity of `mid` the
/// other way. Shapes are validated on construction; the equations are
/// [`check_split`], and the further naturality of the choice is
/// [`check_canonical`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData {
    endo_obj: FinObj,
    endo_incl: FinMap,
    idem_obj: FinObj,
    idem_incl: FinMap,
    idem_into_endo: FinMap,
    retraction: FinMap,
    section: FinMap,
    iota_star: FinMap,
}

impl SplitData {
    pub fn new(
        a: &InternalCat,
        retraction: FinMap,
        section: FinMap,
    ) -> Result<Self, InternalError> {
        let (endo_obj, endo_incl) = endo_object(a);
        let (idem_obj, idem_incl) = idem_object(a);
        for (map, name) in [(&retraction, "retraction"), (&section, "section")] {
            if map.dom() != &idem_obj || map.cod() != a.a1() {
                return Err(InternalError::Shape(format!(
                    "{name} must go from the idempotents to the arrows"
                )));
            }
        }
        let idem_into_endo =
            mediate_equalizer(&endo_incl, &idem_incl).expect("idempotents are endoarrows");
        let iota_star = mediate_equalizer(&idem_incl, a.ident_map())
            .map_err(|_| InternalError::Shape("some identity arrow is not idempotent".into()))?;
        Ok(SplitData {
            endo_obj,
            endo_incl,
            idem_obj,
            idem_incl,
            idem_into_endo,
            retraction,
            section,
            iota_star,
        })
    }

    pub fn endo_obj(&self) -> &FinObj {
        &self.endo_obj
    }

    pub fn endo_incl(&self) -> &FinMap {
        &self.endo_incl
    }

    pub fn idem_obj(&self) -> &FinObj {
        &self.idem_obj
    }

    pub fn idem_incl(&self) -> &FinMap {
        &self.idem_incl
    }

    pub fn idem_into_endo(&self) -> &FinMap {
        &self.idem_into_endo
    }

    pub fn retraction(&self) -> &FinMap {
        &self.retraction
    }

    pub fn section(&self) -> &FinMap {
        &self.section
    }

    /// Objects viewed as their identity idempotents.
    pub fn iota_star(&self) -> &FinMap {
        &self.iota_star
    }

    /// The retraction of an idempotent arrow `u` (not `Sub`-wrapped).
    pub fn retraction_of<'a>(&'a self, u: &Element) -> &'a Element {
        self.retraction.apply(&Element::sub(u.clone()))
    }

    /// The section of an idempotent arrow `u` (not `Sub`-wrapped).
    pub fn section_of<'a>(&'a self, u: &Element) -> &'a Element {
        self.section.apply(&Element::sub(u.clone()))
    }
}

/// All violations of the split equations, one line per failing idempotent
/// and equation: for `u` idempotent on `x`, the retraction `r` must go
/// `x → mid`, the section `s` must go `mid → x`, `s ∘ r = u`, and
/// `r ∘ s = ι(mid)`.
pub fn split_violations(a: &InternalCat, sp: &SplitData) -> Vec<String> {
    let mut out = Vec::new();
    for su in sp.idem_obj.elems() {
        let u = sp.idem_incl.apply(su);
        let r = sp.retraction.apply(su);
        let s = sp.section.apply(su);
        if a.dom_of(r) != a.dom_of(u) {
            out.push(format!(
                "retraction {r} of {u} does not start where {u} does"
            ));
        }
        if a.cod_of(s) != a.dom_of(u) {
            out.push(format!("section {s} of {u} does not end where {u} starts"));
        }
        if a.cod_of(r) != a.dom_of(s) {
            out.push(format!(
                "retraction {r} and section {s} of {u} do not meet in the middle"
            ));
            continue;
        }
        if a.c_apply(s, r) != *u {
            out.push(format!("{s} ∘ {r} ≠ {u}"));
        }
        if a.composable(r, s) {
            let mid = a.dom_of(s);
            if a.c_apply(r, s) != *a.ident_of(mid) {
                out.push(format!("{r} ∘ {s} is not the identity of {mid}"));
            }
        }
    }
    out
}

pub fn check_split(a: &InternalCat, sp: &SplitData) -> bool {
    split_violations(a, sp).is_empty()
}

/// Which pairs of idempotents the transport equation of canonicity ranges
/// over. For idempotents `f`, `g` on one object, the side condition looks
/// at the sandwich `f ∘ g ∘ f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CanonMode {
    /// Pairs with `f ∘ g ∘ f = g`.
    #[default]
    SandwichGivesG,
    /// Pairs with `f ∘ g ∘ f = f`.
    SandwichGivesF,
}

/// All violations of canonicity, one line each. A split is canonical when
/// (1) both halves of an identity idempotent are that identity, and (2)
/// for every pair of idempotents `f`, `g` on one object selected by the
/// mode's side condition, the conjugate `h = R(f) ∘ g ∘ S(f)` is again
/// idempotent with `R(h) = R(g) ∘ S(f)` and `S(h) = R(f) ∘ S(g)`.
pub fn canonical_violations(a: &InternalCat, sp: &SplitData, mode: CanonMode) -> Vec<String> {
    let mut out = Vec::new();
    for x in a.a0.elems() {
        let su = sp.iota_star.apply(x);
        let i = a.ident_of(x);
        let r = sp.retraction.apply(su);
        if r != i {
            out.push(format!("retraction of the identity idempotent {i} is {r}"));
        }
        let s = sp.section.apply(su);
        if s != i {
            out.push(format!("section of the identity idempotent {i} is {s}"));
        }
    }
    for sf in sp.idem_obj.elems() {
        let f = sp.idem_incl.apply(sf);
        for sg in sp.idem_obj.elems() {
            let g = sp.idem_incl.apply(sg);
            if a.dom_of(f) != a.dom_of(g) {
                continue;
            }
            let sandwich = a.c_apply(f, &a.c_apply(g, f));
            let selected = match mode {
                CanonMode::SandwichGivesG => &sandwich == g,
                CanonMode::SandwichGivesF => &sandwich == f,
            };
            if !selected {
                continue;
            }
            let rf = sp.retraction.apply(sf);
            let s_f = sp.section.apply(sf);
            let rg = sp.retraction.apply(sg);
            let sg_sec = sp.section.apply(sg);
            let h = a.c_apply(rf, &a.c_apply(g, s_f));
            let sh = Element::sub(h.clone());
            if !sp.idem_obj.contains(&sh) {
                out.push(format!("conjugate {h} of {g} along {f} is not idempotent"));
                continue;
            }
            let expected_r = a.c_apply(rg, s_f);
            if sp.retraction.apply(&sh) != &expected_r {
                out.push(format!(
                    "retraction of the conjugate {h} of {g} along {f} is not {expected_r}"
                ));
            }
            let expected_s = a.c_apply(rf, sg_sec);
            if sp.section.apply(&sh) != &expected_s {
                out.push(format!(
                    "section of the conjugate {h} of {g} along {f} is not {expected_s}"
                ));
            }
        }
    }
    out
}

pub fn check_canonical(a: &InternalCat, sp: &SplitData, mode: CanonMode) -> bool {
    canonical_violations(a, sp, mode).is_empty()
}

/// The split in which both halves of every idempotent are the idempotent
/// itself. This is only a lawful split when every idempotent is an
/// identity, so that is required up front.
pub fn identity_split(a: &InternalCat) -> Result<SplitData, InternalError> {
    let (idem_obj, idem_incl) = idem_object(a);
    for su in idem_obj.elems() {
        let u = idem_incl.apply(su);
        if a.ident_of(a.dom_of(u)) != u {
            return Err(InternalError::Shape(format!(
                "non-identity idempotent {u} cannot split through itself"
            )));
        }
    }
    SplitData::new(a, idem_incl.clone(), idem_incl)
}

/// A functor between internal categories: a map on objects and a map on
/// arrows. Lawfulness is [`check_internal_functor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalFunctor {
    pub f0: FinMap,
    pub f1: FinMap,
}

pub fn internal_functor_violations(
    f: &InternalFunctor,
    a: &InternalCat,
    b: &InternalCat,
) -> Vec<String> {
    if f.f0.dom() != a.a0() || f.f0.cod() != b.a0() || f.f1.dom() != a.a1() || f.f1.cod() != b.a1()
    {
        return vec!["functor maps have the wrong endpoints".into()];
    }
    let mut out = Vec::new();
    for u in a.a1().elems() {
        let v = f.f1.apply(u);
        if b.dom_of(v) != f.f0.apply(a.dom_of(u)) {
            out.push(format!("image {v} of {u} starts at the wrong object"));
        }
        if b.cod_of(v) != f.f0.apply(a.cod_of(u)) {
            out.push(format!("image {v} of {u} ends at the wrong object"));
        }
    }
    for x in a.a0().elems() {
        let lhs = f.f1.apply(a.ident_of(x));
        let rhs = b.ident_of(f.f0.apply(x));
        if lhs != rhs {
            out.push(format!("identity of {x} is sent to {lhs}, not {rhs}"));
        }
    }
    for p in a.a2().elems() {
        let (g, h) = p.expect_pair();
        let vg = f.f1.apply(g);
        let vh = f.f1.apply(h);
        if !b.composable(vg, vh) {
            continue;
        }
        if f.f1.apply(&a.comp_map().apply(p).clone()) != &b.c_apply(vg, vh) {
            out.push(format!("composition fails on ({g}, {h})"));
        }
    }
    out
}

pub fn check_internal_functor(f: &InternalFunctor, a: &InternalCat, b: &InternalCat) -> bool {
    internal_functor_violations(f, a, b).is_empty()
}

pub fn identity_internal_functor(a: &InternalCat) -> InternalFunctor {
    InternalFunctor {
        f0: FinMap::identity(a.a0()),
        f1: FinMap::identity(a.a1()),
    }
}

/// `g` after `f`.
pub fn compose_internal_functors(g: &InternalFunctor, f: &InternalFunctor) -> InternalFunctor {
    InternalFunctor {
        f0: compose(&g.f0, &f.f0).expect("object maps are composable"),
        f1: compose(&g.f1, &f.f1).expect("arrow maps are composable"),
    }
}

/// The restriction of a functor's arrow map to the idempotent subobjects,
/// obtained by factoring through the inclusion on the target side. Fails
/// when some idempotent's image is not idempotent, which cannot happen for
/// a lawful functor.
pub fn functor_idem_restriction(
    f: &InternalFunctor,
    sa: &SplitData,
    sb: &SplitData,
) -> Result<FinMap, InternalError> {
    let on_idems =
        compose(&f.f1, sa.idem_incl()).map_err(|e| InternalError::Shape(e.to_string()))?;
    mediate_equalizer(sb.idem_incl(), &on_idems)
        .map_err(|_| InternalError::Shape("an idempotent image is not idempotent".into()))
}

/// Does `f` carry the chosen split of `a` to the chosen split of `b`? That
/// is, on every idempotent `u`: `R_b(f u) = f(R_a u)` and
/// `S_b(f u) = f(S_a u)`.
pub fn check_split_preserving(f: &InternalFunctor, sa: &SplitData, sb: &SplitData) -> bool {
    let idem_map = match functor_idem_restriction(f, sa, sb) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let r_then = compose(sb.retraction(), &idem_map).expect("retraction after restriction");
    let then_r = compose(&f.f1, sa.retraction()).expect("arrow map after retraction");
    let s_then = compose(sb.section(), &idem_map).expect("section after restriction");
    let then_s = compose(&f.f1, sa.section()).expect("arrow map after section");
    r_then == then_r && s_then == then_s
}

/// Every lawful functor `a → b` that carries the split of `a` to the split
/// of `b`. See [`enumerate_internal_functors`] for the search strategy.
pub fn enumerate_split_preserving_functors(
    a: &InternalCat,
    sa: &SplitData,
    b: &InternalCat,
    sb: &SplitData,
    budget: u64,
) -> Result<Vec<InternalFunctor>, InternalError> {
    enumerate_functors_where(a, b, budget, |f| check_split_preserving(f, sa, sb))
}

/// Every lawful functor `a → b`, by brute force over object maps and arrow
/// maps. Arrow images are pruned per arrow by the boundary constraints and
/// forced on identities, so the search space is the product of the
/// remaining candidate lists; the budget bounds the number of candidates
/// examined. The output is in lexicographic order of the search.
pub fn enumerate_internal_functors(
    a: &InternalCat,
    b: &InternalCat,
    budget: u64,
) -> Result<Vec<InternalFunctor>, InternalError> {
    enumerate_functors_where(a, b, budget, |_| true)
}

fn enumerate_functors_where(
    a: &InternalCat,
    b: &InternalCat,
    budget: u64,
    keep: impl Fn(&InternalFunctor) -> bool,
) -> Result<Vec<InternalFunctor>, InternalError> {
    let mut spent: u64 = 0;
    let charge = |spent: &mut u64, amount: u64| {
        *spent = spent.saturating_add(amount);
        if *spent > budget {
            Err(InternalError::SizeBudgetExceeded(budget))
        } else {
            Ok(())
        }
    };

    // Identity arrows force their images; precompute which arrows those are.
    let mut identity_of: HashMap<&Element, &Element> = HashMap::new();
    for x in a.a0().elems() {
        identity_of.insert(a.ident_of(x), x);
    }

    let mut out = Vec::new();
    let object_maps = hom_maps(a.a0(), b.a0());
    charge(&mut spent, object_maps.len() as u64)?;
    for f0 in object_maps {
        let mut slot_candidates: Vec<Vec<&Element>> = Vec::with_capacity(a.a1().len());
        let mut dead_end = false;
        for u in a.a1().elems() {
            let want_dom = f0.apply(a.dom_of(u));
            let want_cod = f0.apply(a.cod_of(u));
            let candidates: Vec<&Element> = if let Some(x) = identity_of.get(u) {
                vec![b.ident_of(f0.apply(x))]
            } else {
                b.a1()
                    .elems()
                    .iter()
                    .filter(|v| b.dom_of(v) == want_dom && b.cod_of(v) == want_cod)
                    .collect()
            };
            charge(&mut spent, candidates.len() as u64)?;
            if candidates.is_empty() {
                dead_end = true;
                break;
            }
            slot_candidates.push(candidates);
        }
        if dead_end {
            continue;
        }
        let n_slots = slot_candidates.len();
        let mut choice = vec![0usize; n_slots];
        'product: loop {
            charge(&mut spent, 1)?;
            let table: Vec<Element> = (0..n_slots)
                .map(|i| slot_candidates[i][choice[i]].clone())
                .collect();
            let f1 = FinMap::new(a.a1().clone(), b.a1().clone(), table)
                .expect("candidate images lie in the target arrows");
            let cand = InternalFunctor { f0: f0.clone(), f1 };
            if check_internal_functor(&cand, a, b) && keep(&cand) {
                out.push(cand);
            }
            let mut i = n_slots;
            loop {
                if i == 0 {
                    break 'product;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < slot_candidates[i].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }
    Ok(out)
}

/// View a plain category as an internal one: objects and arrow tokens
/// become atoms and the structure maps read off the tables.
pub fn internal_of_plain(c: &FinCat) -> InternalCat {
    let tokens = arrow_tokens(c);
    let a0 = FinObj::from_atoms(c.objects().iter().cloned()).expect("object names are distinct");
    let a1 = FinObj::from_atoms(tokens.iter().cloned()).expect("arrow tokens are distinct");
    let token_index: HashMap<&String, usize> =
        tokens.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let arrow_of = |e: &Element| -> usize {
        match e {
            Element::Atom(s) => token_index[s],
            _ => unreachable!("arrow atoms only"),
        }
    };
    let dom = FinMap::from_fn(a1.clone(), a0.clone(), |e| {
        Element::atom(c.objects()[c.arrow(arrow_of(e)).dom].clone())
    })
    .expect("dom lands in the objects");
    let cod = FinMap::from_fn(a1.clone(), a0.clone(), |e| {
        Element::atom(c.objects()[c.arrow(arrow_of(e)).cod].clone())
    })
    .expect("cod lands in the objects");
    let obj_index: HashMap<&String, usize> = c
        .objects()
        .iter()
        .enumerate()
        .map(|(i, o)| (o, i))
        .collect();
    let ident = FinMap::from_fn(a0.clone(), a1.clone(), |e| match e {
        Element::Atom(s) => Element::atom(tokens[c.ident(obj_index[s])].clone()),
        _ => unreachable!("object atoms only"),
    })
    .expect("identities land in the arrows");
    let (a2, _, _) = pullback(&dom, &cod).expect("boundary maps share a codomain");
    let comp = FinMap::from_fn(a2, a1.clone(), |p| {
        let (g, f) = p.expect_pair();
        let h = c
            .compose(arrow_of(g), arrow_of(f))
            .expect("composable arrows have a composite");
        Element::atom(tokens[h].clone())
    })
    .expect("composites land in the arrows");
    InternalCat::new(a0, a1, dom, cod, ident, comp)
        .expect("a plain category views as internal data")
}

/// The idempotent-splitting completion of a plain category as an internal
/// category, together with its canonical split: every idempotent of the
/// completion splits through the object carrying its base idempotent, with
/// both halves carried by that base arrow.
pub fn karoubi_internal(k: &KaroubiCat) -> (InternalCat, SplitData) {
    let a = internal_of_plain(&k.cat);
    let tokens = arrow_tokens(&k.cat);
    let token_index: HashMap<&String, usize> =
        tokens.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let (idem_obj, _) = idem_object(&a);
    let witness_of = |su: &Element| {
        let idx = match su.expect_sub() {
            Element::Atom(s) => token_index[s],
            _ => unreachable!("arrow atoms only"),
        };
        k.split(idx).expect("idempotents of the completion split")
    };
    let retraction = FinMap::from_fn(idem_obj.clone(), a.a1().clone(), |su| {
        Element::atom(tokens[witness_of(su).retraction].clone())
    })
    .expect("retractions are arrows of the completion");
    let section = FinMap::from_fn(idem_obj, a.a1().clone(), |su| {
        Element::atom(tokens[witness_of(su).section].clone())
    })
    .expect("sections are arrows of the completion");
    let sp = SplitData::new(&a, retraction, section).expect("halves have the right shape");
    (a, sp)
}
