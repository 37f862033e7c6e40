//! The ambient world: finite sets, total functions, and the handful of
//! limits and colimits every other module builds on.
//!
//! Elements are structured values rather than bare indices so that derived
//! objects (products, coproducts, subsets) remember where their elements
//! came from. All constructions fix a canonical element order, which makes
//! every downstream structure byte-for-byte reproducible:
//!
//! * `product(x, y)` lists pairs with the first coordinate varying slowest;
//! * `coproduct(family)` lists summands in family order, tagged by index;
//! * `equalizer`, and every other subset, keeps the order of the host object;
//! * `pullback(f, g)` filters `product(dom f, dom g)` in product order.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// A value in a finite set. `Atom` is an opaque named point; the other
/// constructors record provenance: `Pair` for products, `Tag` for coproduct
/// summands, `Sub` for elements of a distinguished subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Atom(String),
    Pair(Box<Element>, Box<Element>),
    Tag(usize, Box<Element>),
    Sub(Box<Element>),
}

impl Element {
    pub fn atom(name: impl Into<String>) -> Self {
        Element::Atom(name.into())
    }

    pub fn pair(a: Element, b: Element) -> Self {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn tag(i: usize, e: Element) -> Self {
        Element::Tag(i, Box::new(e))
    }

    pub fn sub(e: Element) -> Self {
        Element::Sub(Box::new(e))
    }

    /// The two components of a `Pair`. Panics on any other constructor;
    /// callers use this only on elements drawn from a product they built.
    pub fn expect_pair(&self) -> (&Element, &Element) {
        match self {
            Element::Pair(a, b) => (a, b),
            other => panic!("expected a pair element, found {other}"),
        }
    }

    pub fn expect_tag(&self) -> (usize, &Element) {
        match self {
            Element::Tag(i, e) => (*i, e),
            other => panic!("expected a tagged element, found {other}"),
        }
    }

    pub fn expect_sub(&self) -> &Element {
        match self {
            Element::Sub(e) => e,
            other => panic!("expected a subset element, found {other}"),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Atom(name) => write!(f, "{name}"),
            Element::Pair(a, b) => write!(f, "({a},{b})"),
            Element::Tag(i, e) => write!(f, "{i}#{e}"),
            Element::Sub(e) => write!(f, "[{e}]"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FinSetError {
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("table for {0} has {1} entries but the domain has {2} elements")]
    TableArity(String, usize, usize),
    #[error("table entry {0} is not an element of the codomain")]
    TableEntry(String),
    #[error("composition mismatch: inner codomain differs from outer domain")]
    CompositionMismatch,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("parallel pair mismatch: maps do not share domain and codomain")]
    ParallelPairMismatch,
    #[error("cospan mismatch: maps do not share a codomain")]
    CospanMismatch,
    #[error("map does not factor: {0}")]
    NotFactorable(String),
    #[error("codomain is not the coproduct of the given family")]
    CodomainNotCoproduct,
    #[error("index {index} out of range for a family of {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// A finite set: an ordered list of distinct elements. The order is part of
/// the data and is preserved by every construction in this module.
#[derive(Clone, Debug)]
pub struct FinObj {
    elems: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl PartialEq for FinObj {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for FinObj {}

impl FinObj {
    pub fn new(elems: Vec<Element>) -> Result<Self, FinSetError> {
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(FinSetError::DuplicateElement(e.to_string()));
            }
        }
        Ok(FinObj { elems, index })
    }

    pub fn empty() -> Self {
        FinObj {
            elems: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// The chosen terminal object: a single point named `*`.
    pub fn terminal() -> Self {
        FinObj::new(vec![Element::atom("*")]).expect("terminal object is well formed")
    }

    pub fn from_atoms<I: IntoIterator<Item = S>, S: Into<String>>(
        names: I,
    ) -> Result<Self, FinSetError> {
        FinObj::new(names.into_iter().map(Element::atom).collect())
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Element] {
        &self.elems
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }
}

impl fmt::Display for FinObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A total function between finite sets, tabulated on the domain's element
/// order. Entries are stored as codomain indices; use [`FinMap::apply`] or
/// [`FinMap::entries`] to see them as elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMap {
    dom: FinObj,
    cod: FinObj,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(dom: FinObj, cod: FinObj, images: Vec<Element>) -> Result<Self, FinSetError> {
        if images.len() != dom.len() {
            return Err(FinSetError::TableArity(
                "map".into(),
                images.len(),
                dom.len(),
            ));
        }
        let mut table = Vec::with_capacity(images.len());
        for image in &images {
            match cod.index_of(image) {
                Some(i) => table.push(i),
                None => return Err(FinSetError::TableEntry(image.to_string())),
            }
        }
        Ok(FinMap { dom, cod, table })
    }

    /// Tabulate `f` over the domain. Fails if some image is outside the
    /// codomain, which is how most "does this land where it should" checks
    /// in the category modules are expressed.
    pub fn from_fn(
        dom: FinObj,
        cod: FinObj,
        f: impl FnMut(&Element) -> Element,
    ) -> Result<Self, FinSetError> {
        let images: Vec<Element> = dom.elems.iter().map(f).collect();
        FinMap::new(dom, cod, images)
    }

    pub fn identity(x: &FinObj) -> Self {
        FinMap {
            dom: x.clone(),
            cod: x.clone(),
            table: (0..x.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FinObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinObj {
        &self.cod
    }

    /// Image of `e`, which must belong to the domain.
    pub fn apply(&self, e: &Element) -> &Element {
        let i = self
            .dom
            .index_of(e)
            .unwrap_or_else(|| panic!("element {e} is not in the domain of this map"));
        &self.cod.elems[self.table[i]]
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Element, &Element)> {
        self.dom
            .elems
            .iter()
            .zip(self.table.iter().map(|&i| &self.cod.elems[i]))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &i in &self.table {
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        for &i in &self.table {
            seen[i] = true;
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<FinMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.cod.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j] = i;
        }
        Some(FinMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table,
        })
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, y) in self.entries() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{x} -> {y}")?;
            first = false;
        }
        Ok(())
    }
}

/// A cone: an apex with a list of legs out of it. Used as the input to the
/// mediating-map operations.
#[derive(Clone, Debug)]
pub struct ConeLeg {
    pub apex: FinObj,
    pub legs: Vec<FinMap>,
}

/// `g` after `f`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap, FinSetError> {
    if f.cod != g.dom {
        return Err(FinSetError::CompositionMismatch);
    }
    let table = f.table.iter().map(|&i| g.table[i]).collect();
    Ok(FinMap {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table,
    })
}

/// Binary product with its projections. Pairs are listed with the first
/// coordinate varying slowest.
pub fn product(x: &FinObj, y: &FinObj) -> (FinObj, FinMap, FinMap) {
    let mut elems = Vec::with_capacity(x.len() * y.len());
    for a in &x.elems {
        for b in &y.elems {
            elems.push(Element::pair(a.clone(), b.clone()));
        }
    }
    let obj = FinObj::new(elems).expect("product elements are distinct pairs");
    let p1 = FinMap::from_fn(obj.clone(), x.clone(), |e| e.expect_pair().0.clone())
        .expect("first projection lands in the first factor");
    let p2 = FinMap::from_fn(obj.clone(), y.clone(), |e| e.expect_pair().1.clone())
        .expect("second projection lands in the second factor");
    (obj, p1, p2)
}

/// Coproduct of a family with its injections. Summands keep their order and
/// are distinguished by the index in the `Tag`.
pub fn coproduct(family: &[FinObj]) -> (FinObj, Vec<FinMap>) {
    let mut elems = Vec::new();
    for (i, x) in family.iter().enumerate() {
        for e in &x.elems {
            elems.push(Element::tag(i, e.clone()));
        }
    }
    let obj = FinObj::new(elems).expect("tags keep coproduct elements distinct");
    let injections = family
        .iter()
        .enumerate()
        .map(|(i, x)| {
            FinMap::from_fn(x.clone(), obj.clone(), |e| Element::tag(i, e.clone()))
                .expect("injection lands in the coproduct")
        })
        .collect();
    (obj, injections)
}

/// The induced map `∐ dom(f_i) → ∐ cod(f_i)` acting as `f_i` on the i-th
/// summand.
pub fn coproduct_map(family: &[FinMap]) -> FinMap {
    let doms: Vec<FinObj> = family.iter().map(|f| f.dom.clone()).collect();
    let cods: Vec<FinObj> = family.iter().map(|f| f.cod.clone()).collect();
    let (dom, _) = coproduct(&doms);
    let (cod, _) = coproduct(&cods);
    FinMap::from_fn(dom, cod, |e| {
        let (i, x) = e.expect_tag();
        Element::tag(i, family[i].apply(x).clone())
    })
    .expect("summand images land in the codomain coproduct")
}

/// The map out of the coproduct of the domains induced by a family of maps
/// sharing one codomain.
pub fn cotuple(family: &[FinMap]) -> Result<FinMap, FinSetError> {
    let cod = match family.first() {
        Some(f) => f.cod.clone(),
        None => FinObj::empty(),
    };
    if family.iter().any(|f| f.cod != cod) {
        return Err(FinSetError::CospanMismatch);
    }
    let doms: Vec<FinObj> = family.iter().map(|f| f.dom.clone()).collect();
    let (dom, _) = coproduct(&doms);
    FinMap::from_fn(dom, cod, |e| {
        let (i, x) = e.expect_tag();
        family[i].apply(x).clone()
    })
}

/// Equalizer of a parallel pair, as a subset of the shared domain.
pub fn equalizer(f: &FinMap, g: &FinMap) -> Result<(FinObj, FinMap), FinSetError> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(FinSetError::ParallelPairMismatch);
    }
    subset_where(&f.dom, |e| f.apply(e) == g.apply(e))
}

/// Joint equalizer of three parallel maps.
pub fn equalizer3(f: &FinMap, g: &FinMap, h: &FinMap) -> Result<(FinObj, FinMap), FinSetError> {
    if f.dom != g.dom || f.cod != g.cod || f.dom != h.dom || f.cod != h.cod {
        return Err(FinSetError::ParallelPairMismatch);
    }
    subset_where(&f.dom, |e| {
        let a = f.apply(e);
        a == g.apply(e) && a == h.apply(e)
    })
}

/// The subset of `host` satisfying `keep`, wrapped in `Sub`, with its
/// inclusion map.
pub fn subset_where(
    host: &FinObj,
    mut keep: impl FnMut(&Element) -> bool,
) -> Result<(FinObj, FinMap), FinSetError> {
    let elems: Vec<Element> = host
        .elems
        .iter()
        .filter(|e| keep(e))
        .map(|e| Element::sub(e.clone()))
        .collect();
    let obj = FinObj::new(elems)?;
    let incl = FinMap::from_fn(obj.clone(), host.clone(), |e| e.expect_sub().clone())?;
    Ok((obj, incl))
}

/// Pullback of a cospan, as the subset of `dom(f) × dom(g)` where the two
/// legs agree, with its projections.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<(FinObj, FinMap, FinMap), FinSetError> {
    if f.cod != g.cod {
        return Err(FinSetError::CospanMismatch);
    }
    let mut elems = Vec::new();
    for a in &f.dom.elems {
        for b in &g.dom.elems {
            if f.apply(a) == g.apply(b) {
                elems.push(Element::pair(a.clone(), b.clone()));
            }
        }
    }
    let obj = FinObj::new(elems).expect("pullback elements are distinct pairs");
    let p1 = FinMap::from_fn(obj.clone(), f.dom.clone(), |e| e.expect_pair().0.clone())?;
    let p2 = FinMap::from_fn(obj.clone(), g.dom.clone(), |e| e.expect_pair().1.clone())?;
    Ok((obj, p1, p2))
}

/// Factor `h` through an injective map `incl` with the same codomain.
/// This is the universal property of equalizers and of every other subset
/// in this crate; it is the only way the category modules land an element
/// inside a distinguished subobject.
pub fn mediate_equalizer(incl: &FinMap, h: &FinMap) -> Result<FinMap, FinSetError> {
    if incl.cod != h.cod {
        return Err(FinSetError::NotFactorable(
            "the map and the inclusion have different codomains".into(),
        ));
    }
    let mut preimage: HashMap<usize, usize> = HashMap::with_capacity(incl.table.len());
    for (i, &j) in incl.table.iter().enumerate() {
        preimage.insert(j, i);
    }
    let mut table = Vec::with_capacity(h.table.len());
    for (x, &j) in h.dom.elems.iter().zip(&h.table) {
        match preimage.get(&j) {
            Some(&i) => table.push(i),
            None => {
                return Err(FinSetError::NotFactorable(format!(
                    "image of {x} is outside the subset"
                )))
            }
        }
    }
    Ok(FinMap {
        dom: h.dom.clone(),
        cod: incl.dom.clone(),
        table,
    })
}

/// The mediating map into a product, from a cone with exactly two legs.
pub fn mediate_product(
    prod: &(FinObj, FinMap, FinMap),
    cone: &ConeLeg,
) -> Result<FinMap, FinSetError> {
    let [u, v] = two_legs(cone)?;
    FinMap::from_fn(cone.apex.clone(), prod.0.clone(), |e| {
        Element::pair(u.apply(e).clone(), v.apply(e).clone())
    })
}

/// The mediating map into a pullback, from a cone with exactly two legs.
/// Fails with `NotFactorable` when the legs do not actually agree on the
/// cospan, since then some pair falls outside the pullback.
pub fn mediate_pullback(
    pb: &(FinObj, FinMap, FinMap),
    cone: &ConeLeg,
) -> Result<FinMap, FinSetError> {
    let [u, v] = two_legs(cone)?;
    FinMap::from_fn(cone.apex.clone(), pb.0.clone(), |e| {
        Element::pair(u.apply(e).clone(), v.apply(e).clone())
    })
    .map_err(|_| FinSetError::NotFactorable("cone legs do not agree on the cospan".into()))
}

fn two_legs(cone: &ConeLeg) -> Result<[&FinMap; 2], FinSetError> {
    match cone.legs.as_slice() {
        [u, v] => {
            if u.dom != cone.apex || v.dom != cone.apex {
                return Err(FinSetError::ArityMismatch(
                    "cone legs must start at the apex".into(),
                ));
            }
            Ok([u, v])
        }
        legs => Err(FinSetError::ArityMismatch(format!(
            "expected a cone with 2 legs, found {}",
            legs.len()
        ))),
    }
}

/// All points of `x`: maps from the terminal object, in `x`'s order.
pub fn elements(x: &FinObj) -> Vec<FinMap> {
    let one = FinObj::terminal();
    x.elems
        .iter()
        .map(|e| FinMap::new(one.clone(), x.clone(), vec![e.clone()]).expect("point lands in x"))
        .collect()
}

/// Every map from `x` to `y`, in lexicographic order of their tables.
/// Exponential in `|x|`; meant for small oracles and uniqueness checks.
pub fn hom_maps(x: &FinObj, y: &FinObj) -> Vec<FinMap> {
    if x.is_empty() {
        return vec![FinMap {
            dom: x.clone(),
            cod: y.clone(),
            table: Vec::new(),
        }];
    }
    if y.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; x.len()];
    loop {
        out.push(FinMap {
            dom: x.clone(),
            cod: y.clone(),
            table: table.clone(),
        });
        let mut i = x.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < y.len() {
                break;
            }
            table[i] = 0;
        }
    }
}

/// Search for a bijection `h: x → y` with `v ∘ h = u` for every constraint
/// pair `(u, v)`. Returns the first solution in backtracking order, so the
/// result is deterministic.
pub fn find_commuting_bijection(
    x: &FinObj,
    y: &FinObj,
    constraints: &[(FinMap, FinMap)],
) -> Option<FinMap> {
    if x.len() != y.len() {
        return None;
    }
    let n = x.len();
    let mut assignment: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    // Depth-first: assignment[i] is the candidate image index for element i.
    loop {
        let i = assignment.len();
        if i == n {
            return Some(FinMap {
                dom: x.clone(),
                cod: y.clone(),
                table: assignment,
            });
        }
        let start = 0;
        match next_candidate(x, y, constraints, &assignment, &used, i, start) {
            Some(j) => {
                used[j] = true;
                assignment.push(j);
            }
            None => {
                // Backtrack to the previous element and advance it.
                loop {
                    let j = assignment.pop()?;
                    used[j] = false;
                    let i = assignment.len();
                    if let Some(k) = next_candidate(x, y, constraints, &assignment, &used, i, j + 1)
                    {
                        used[k] = true;
                        assignment.push(k);
                        break;
                    }
                }
            }
        }
    }
}

fn next_candidate(
    x: &FinObj,
    y: &FinObj,
    constraints: &[(FinMap, FinMap)],
    _assignment: &[usize],
    used: &[bool],
    i: usize,
    start: usize,
) -> Option<usize> {
    (start..y.len()).find(|&j| {
        !used[j]
            && constraints
                .iter()
                .all(|(u, v)| u.apply(&x.elems[i]) == v.apply(&y.elems[j]))
    })
}

/// Does the commuting square `f ∘ u = g ∘ v` exhibit `dom(u)` as the
/// pullback of `f` and `g`? Decided by mediating into the canonical
/// pullback and checking bijectivity.
pub fn square_is_pullback(
    f: &FinMap,
    g: &FinMap,
    u: &FinMap,
    v: &FinMap,
) -> Result<bool, FinSetError> {
    if u.dom != v.dom || u.cod != f.dom || v.cod != g.dom {
        return Err(FinSetError::ArityMismatch(
            "square legs do not line up".into(),
        ));
    }
    let fu = compose(f, u)?;
    let gv = compose(g, v)?;
    if fu != gv {
        return Ok(false);
    }
    let pb = pullback(f, g)?;
    let cone = ConeLeg {
        apex: u.dom.clone(),
        legs: vec![u.clone(), v.clone()],
    };
    let mediating = mediate_pullback(&pb, &cone)?;
    Ok(mediating.is_bijective())
}

/// First extensivity condition: for a family `f_i: y_i → x_i`, every square
/// formed by the injections into the two coproducts and `∐ f_i` is a
/// pullback.
pub fn check_e1(family: &[FinMap]) -> bool {
    let xs: Vec<FinObj> = family.iter().map(|f| f.cod.clone()).collect();
    let ys: Vec<FinObj> = family.iter().map(|f| f.dom.clone()).collect();
    let (_, inj_x) = coproduct(&xs);
    let (_, inj_y) = coproduct(&ys);
    let big = coproduct_map(family);
    family
        .iter()
        .enumerate()
        .all(|(i, f)| square_is_pullback(&big, &inj_x[i], &inj_y[i], f).unwrap_or(false))
}

/// Second extensivity condition (universality of coproducts): pulling a map
/// `f: Y → ∐ x_i` back along each injection decomposes `Y` as the coproduct
/// of the fibers. Fails with `CodomainNotCoproduct` when the codomain of
/// `f` is not literally the coproduct of `family`.
pub fn check_e2_universal(f: &FinMap, family: &[FinObj]) -> Result<bool, FinSetError> {
    let (cop, injections) = coproduct(family);
    if f.cod != cop {
        return Err(FinSetError::CodomainNotCoproduct);
    }
    let mut fibers = Vec::with_capacity(family.len());
    for inj in &injections {
        fibers.push(pullback(f, inj)?);
    }
    check_e2_given(f, &fibers)
}

/// The decision step of `check_e2_universal`, with the fiber pullbacks
/// supplied by the caller: the cotuple of their first legs must be a
/// bijection onto `dom(f)`.
fn check_e2_given(f: &FinMap, fibers: &[(FinObj, FinMap, FinMap)]) -> Result<bool, FinSetError> {
    let legs: Vec<FinMap> = fibers.iter().map(|pb| pb.1.clone()).collect();
    if legs.iter().any(|leg| leg.cod != f.dom) {
        return Ok(false);
    }
    let canonical = cotuple(&legs)?;
    Ok(canonical.is_bijective())
}

/// Third extensivity condition (disjointness of coproducts): distinct
/// injections pull back to the empty set, and every injection is monic.
pub fn check_e3_disjoint(family: &[FinObj]) -> bool {
    let (_, injections) = coproduct(family);
    for (i, inj_i) in injections.iter().enumerate() {
        if !inj_i.is_injective() {
            return false;
        }
        for inj_j in injections.iter().skip(i + 1) {
            match pullback(inj_i, inj_j) {
                Ok((obj, _, _)) if obj.is_empty() => {}
                _ => return false,
            }
        }
    }
    true
}

/// Distributivity: the canonical comparison `∐ (y × x_i) → y × (∐ x_i)` is
/// an isomorphism.
pub fn check_distributive(y: &FinObj, family: &[FinObj]) -> bool {
    let summands: Vec<FinObj> = family.iter().map(|x| product(y, x).0).collect();
    let (lhs, _) = coproduct(&summands);
    let (cop, _) = coproduct(family);
    let (rhs, _, _) = product(y, &cop);
    let canonical = FinMap::from_fn(lhs, rhs, |e| {
        let (i, pair) = e.expect_tag();
        let (a, b) = pair.expect_pair();
        Element::pair(a.clone(), Element::tag(i, b.clone()))
    });
    match canonical {
        Ok(map) => map.is_bijective(),
        Err(_) => false,
    }
}

/// Strictness of the initial object: maps into the empty set exist only
/// from the empty set, and the one that exists is an isomorphism.
pub fn check_strict_initial(x: &FinObj) -> bool {
    let maps = hom_maps(x, &FinObj::empty());
    if x.is_empty() {
        maps.len() == 1 && maps[0].is_bijective()
    } else {
        maps.is_empty()
    }
}

/// Coproducts commute with equalizers taken along a shared cospan: given
/// parallel pairs `f_i, g_i: x_i → y` into one common codomain, the
/// coproduct of the equalizers is the equalizer of the cotupled maps.
pub fn check_coproduct_of_equalizers(fs: &[FinMap], gs: &[FinMap]) -> Result<bool, FinSetError> {
    if fs.len() != gs.len() {
        return Err(FinSetError::ArityMismatch(format!(
            "{} maps against {}",
            fs.len(),
            gs.len()
        )));
    }
    let mut parts = Vec::with_capacity(fs.len());
    for (f, g) in fs.iter().zip(gs) {
        parts.push(equalizer(f, g)?);
    }
    let big_f = cotuple(fs)?;
    let big_g = cotuple(gs)?;
    let (whole, _) = equalizer(&big_f, &big_g)?;

    let summands: Vec<FinObj> = parts.iter().map(|(e, _)| e.clone()).collect();
    let (lhs, _) = coproduct(&summands);
    let canonical = FinMap::from_fn(lhs, whole, |e| {
        let (i, sub) = e.expect_tag();
        Element::sub(Element::tag(i, sub.expect_sub().clone()))
    });
    match canonical {
        Ok(map) => Ok(map.is_bijective()),
        Err(_) => Ok(false),
    }
}

/// Sub-coproduct over an index set, with its canonical map into the full
/// coproduct. Indices are normalized to increasing order without
/// duplicates; the summands keep local tags `0..k`.
pub fn subcoproduct(family: &[FinObj], indices: &[usize]) -> Result<(FinObj, FinMap), FinSetError> {
    let idx = normalize_indices(family.len(), indices)?;
    let selected: Vec<FinObj> = idx.iter().map(|&j| family[j].clone()).collect();
    let (obj, _) = coproduct(&selected);
    let (full, _) = coproduct(family);
    let into_full = FinMap::from_fn(obj.clone(), full, |e| {
        let (k, x) = e.expect_tag();
        Element::tag(idx[k], x.clone())
    })?;
    Ok((obj, into_full))
}

/// Intersection law for sub-coproducts: the sub-coproduct over `j1 ∩ j2`
/// is the pullback of the two sub-coproduct inclusions.
pub fn check_subcoproduct_intersection(
    family: &[FinObj],
    j1: &[usize],
    j2: &[usize],
) -> Result<bool, FinSetError> {
    let (s1, u1) = subcoproduct(family, j1)?;
    let (s2, u2) = subcoproduct(family, j2)?;
    let idx1 = normalize_indices(family.len(), j1)?;
    let idx2 = normalize_indices(family.len(), j2)?;
    let common: Vec<usize> = idx1.iter().copied().filter(|j| idx2.contains(j)).collect();
    let (s12, _) = subcoproduct(family, &common)?;

    let leg = |target: &FinObj, idx: &[usize]| {
        FinMap::from_fn(s12.clone(), target.clone(), |e| {
            let (k, x) = e.expect_tag();
            let j = common[k];
            let pos = idx
                .iter()
                .position(|&i| i == j)
                .expect("common index is in both sets");
            Element::tag(pos, x.clone())
        })
        .expect("retagging lands in the sub-coproduct")
    };
    let a = leg(&s1, &idx1);
    let b = leg(&s2, &idx2);
    square_is_pullback(&u1, &u2, &a, &b)
}

fn normalize_indices(len: usize, indices: &[usize]) -> Result<Vec<usize>, FinSetError> {
    for &i in indices {
        if i >= len {
            return Err(FinSetError::IndexOutOfRange { index: i, len });
        }
    }
    let mut idx = indices.to_vec();
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn obj(names: &[&str]) -> FinObj {
        FinObj::from_atoms(names.iter().copied()).unwrap()
    }

    fn map(dom: &FinObj, cod: &FinObj, images: &[&str]) -> FinMap {
        FinMap::new(
            dom.clone(),
            cod.clone(),
            images.iter().map(|s| Element::atom(*s)).collect(),
        )
        .unwrap()
    }

    fn rand_obj(rng: &mut ChaCha8Rng, prefix: &str, max_len: usize) -> FinObj {
        let n = rng.gen_range(0..=max_len);
        FinObj::from_atoms((0..n).map(|i| format!("{prefix}{i}"))).unwrap()
    }

    fn rand_map(rng: &mut ChaCha8Rng, dom: &FinObj, cod: &FinObj) -> Option<FinMap> {
        if cod.is_empty() && !dom.is_empty() {
            return None;
        }
        let images = dom
            .elems()
            .iter()
            .map(|_| cod.elems()[rng.gen_range(0..cod.len().max(1))].clone())
            .collect();
        Some(FinMap::new(dom.clone(), cod.clone(), images).unwrap())
    }

    #[test]
    fn duplicate_elements_are_rejected() {
        let err = FinObj::from_atoms(["a", "b", "a"]).unwrap_err();
        assert_eq!(err, FinSetError::DuplicateElement("a".into()));
    }

    #[test]
    fn map_tables_are_validated() {
        let x = obj(&["p", "q"]);
        let y = obj(&["u"]);
        assert!(FinMap::new(x.clone(), y.clone(), vec![Element::atom("u")]).is_err());
        assert!(FinMap::new(x, y, vec![Element::atom("u"), Element::atom("nope")]).is_err());
    }

    #[test]
    fn compose_matches_pointwise_evaluation() {
        let x = obj(&["a", "b", "c", "d"]);
        let y = obj(&["u", "v", "w", "z"]);
        let z = obj(&["m", "n", "o", "p"]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let f = rand_map(&mut rng, &x, &y).unwrap();
            let g = rand_map(&mut rng, &y, &z).unwrap();
            let gf = compose(&g, &f).unwrap();
            for e in x.elems() {
                assert_eq!(gf.apply(e), g.apply(f.apply(e)));
            }
        }
    }

    #[test]
    fn compose_requires_matching_middle_object() {
        let x = obj(&["a"]);
        let y = obj(&["u"]);
        let z = obj(&["m"]);
        let f = map(&x, &y, &["u"]);
        let h = map(&z, &z, &["m"]);
        assert_eq!(
            compose(&h, &f).unwrap_err(),
            FinSetError::CompositionMismatch
        );
    }

    #[test]
    fn product_order_is_first_coordinate_major() {
        let x = obj(&["a", "b"]);
        let y = obj(&["u", "v"]);
        let (p, p1, p2) = product(&x, &y);
        let expected: Vec<Element> = [("a", "u"), ("a", "v"), ("b", "u"), ("b", "v")]
            .iter()
            .map(|(a, b)| Element::pair(Element::atom(*a), Element::atom(*b)))
            .collect();
        assert_eq!(p.elems(), expected.as_slice());
        for e in p.elems() {
            let (a, b) = e.expect_pair();
            assert_eq!(p1.apply(e), a);
            assert_eq!(p2.apply(e), b);
        }
    }

    #[test]
    fn product_with_empty_factor_is_empty() {
        let x = obj(&["a", "b"]);
        let (p, _, _) = product(&x, &FinObj::empty());
        assert!(p.is_empty());
    }

    #[test]
    fn coproduct_order_and_tags() {
        let x = obj(&["a"]);
        let y = obj(&["a", "b"]);
        let (c, inj) = coproduct(&[x.clone(), y.clone()]);
        assert_eq!(c.len(), 3);
        assert_eq!(c.elems()[0], Element::tag(0, Element::atom("a")));
        assert_eq!(c.elems()[1], Element::tag(1, Element::atom("a")));
        assert_eq!(
            inj[1].apply(&Element::atom("b")),
            &Element::tag(1, Element::atom("b"))
        );
    }

    #[test]
    fn coproduct_of_empty_family_is_initial() {
        let (c, inj) = coproduct(&[]);
        assert!(c.is_empty());
        assert!(inj.is_empty());
    }

    #[test]
    fn coproduct_map_acts_summandwise() {
        let x = obj(&["a", "b"]);
        let y = obj(&["u"]);
        let f = map(&x, &y, &["u", "u"]);
        let g = map(&y, &x, &["b"]);
        let big = coproduct_map(&[f.clone(), g.clone()]);
        assert_eq!(
            big.apply(&Element::tag(0, Element::atom("a"))),
            &Element::tag(0, Element::atom("u"))
        );
        assert_eq!(
            big.apply(&Element::tag(1, Element::atom("u"))),
            &Element::tag(1, Element::atom("b"))
        );
    }

    #[test]
    fn equalizer_of_equal_maps_is_whole_domain() {
        let x = obj(&["a", "b"]);
        let f = map(&x, &x, &["b", "a"]);
        let (e, incl) = equalizer(&f, &f).unwrap();
        assert_eq!(e.len(), x.len());
        assert!(incl.is_bijective());
    }

    #[test]
    fn equalizer_picks_agreement_in_domain_order() {
        let x = obj(&["p", "q", "r"]);
        let y = obj(&["0", "1"]);
        let f = map(&x, &y, &["0", "1", "0"]);
        let g = map(&x, &y, &["0", "0", "0"]);
        let (e, incl) = equalizer(&f, &g).unwrap();
        assert_eq!(
            e.elems(),
            &[
                Element::sub(Element::atom("p")),
                Element::sub(Element::atom("r"))
            ]
        );
        assert_eq!(incl.apply(&e.elems()[1]), &Element::atom("r"));
    }

    #[test]
    fn equalizer_rejects_non_parallel_pairs() {
        let x = obj(&["a"]);
        let y = obj(&["u", "v"]);
        let f = map(&x, &y, &["u"]);
        let g = map(&x, &x, &["a"]);
        assert_eq!(
            equalizer(&f, &g).unwrap_err(),
            FinSetError::ParallelPairMismatch
        );
    }

    #[test]
    fn equalizer3_is_pairwise_intersection() {
        let x = obj(&["a", "b", "c", "d", "e"]);
        let y = obj(&["0", "1", "2"]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let f = rand_map(&mut rng, &x, &y).unwrap();
            let g = rand_map(&mut rng, &x, &y).unwrap();
            let h = rand_map(&mut rng, &x, &y).unwrap();
            let (triple, _) = equalizer3(&f, &g, &h).unwrap();
            // Oracle: elementwise filter on the two pairwise conditions.
            let expected: Vec<Element> = x
                .elems()
                .iter()
                .filter(|e| f.apply(e) == g.apply(e) && f.apply(e) == h.apply(e))
                .map(|e| Element::sub(e.clone()))
                .collect();
            assert_eq!(triple.elems(), expected.as_slice());
        }
    }

    #[test]
    fn pullback_matches_filtering_all_pairs() {
        let x = obj(&["a", "b", "c"]);
        let y = obj(&["u", "v", "w", "z"]);
        let z = obj(&["0", "1"]);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..40 {
            let f = rand_map(&mut rng, &x, &z).unwrap();
            let g = rand_map(&mut rng, &y, &z).unwrap();
            let (pb, p1, p2) = pullback(&f, &g).unwrap();
            let mut expected = Vec::new();
            for a in x.elems() {
                for b in y.elems() {
                    if f.apply(a) == g.apply(b) {
                        expected.push(Element::pair(a.clone(), b.clone()));
                    }
                }
            }
            assert_eq!(pb.elems(), expected.as_slice());
            for e in pb.elems() {
                assert_eq!(f.apply(p1.apply(e)), g.apply(p2.apply(e)));
            }
        }
    }

    #[test]
    fn pullback_along_identity_recovers_the_domain() {
        let x = obj(&["a", "b", "c"]);
        let y = obj(&["u", "v"]);
        let f = map(&x, &y, &["u", "v", "u"]);
        let (pb, p1, _) = pullback(&f, &FinMap::identity(&y)).unwrap();
        assert_eq!(pb.len(), x.len());
        assert!(p1.is_bijective());
    }

    #[test]
    fn mediate_equalizer_factors_and_detects_failure() {
        let x = obj(&["p", "q", "r"]);
        let y = obj(&["0", "1"]);
        let f = map(&x, &y, &["0", "1", "0"]);
        let g = map(&x, &y, &["0", "0", "0"]);
        let (e, incl) = equalizer(&f, &g).unwrap();

        // The inclusion factors through itself via the identity.
        let through = mediate_equalizer(&incl, &incl).unwrap();
        assert_eq!(through, FinMap::identity(&e));

        // A map hitting q cannot factor.
        let one = FinObj::terminal();
        let h = FinMap::new(one, x.clone(), vec![Element::atom("q")]).unwrap();
        assert!(matches!(
            mediate_equalizer(&incl, &h),
            Err(FinSetError::NotFactorable(_))
        ));
    }

    #[test]
    fn mediating_map_through_an_equalizer_is_unique() {
        let x = obj(&["a", "b", "c", "d"]);
        let y = obj(&["0", "1"]);
        let z = obj(&["s", "t"]);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut factorable_seen = 0;
        for _ in 0..60 {
            let f = rand_map(&mut rng, &x, &y).unwrap();
            let g = rand_map(&mut rng, &x, &y).unwrap();
            let (e, incl) = equalizer(&f, &g).unwrap();
            let h = match rand_map(&mut rng, &z, &x) {
                Some(h) => h,
                None => continue,
            };
            let Ok(mediating) = mediate_equalizer(&incl, &h) else {
                continue;
            };
            factorable_seen += 1;
            // Oracle: enumerate every map z → e and count the factorizations.
            let all: Vec<FinMap> = hom_maps(&z, &e)
                .into_iter()
                .filter(|u| compose(&incl, u).unwrap() == h)
                .collect();
            assert_eq!(all, vec![mediating]);
        }
        assert!(factorable_seen > 0, "no factorable instance was generated");
    }

    #[test]
    fn elements_enumerate_points_in_order() {
        let x = obj(&["a", "b"]);
        let y = obj(&["u", "v", "w"]);
        assert_eq!(elements(&FinObj::empty()).len(), 0);
        let (p, _, _) = product(&x, &y);
        let points = elements(&p);
        assert_eq!(points.len(), x.len() * y.len());
        assert_eq!(points[0].apply(&Element::atom("*")), &p.elems()[0]);
    }

    #[test]
    fn hom_maps_counts() {
        let x = obj(&["a", "b"]);
        let y = obj(&["0", "1", "2"]);
        assert_eq!(hom_maps(&x, &y).len(), 9);
        assert_eq!(hom_maps(&FinObj::empty(), &y).len(), 1);
        assert_eq!(hom_maps(&x, &FinObj::empty()).len(), 0);
    }

    #[test]
    fn e1_holds_for_a_singleton_family() {
        let x = obj(&["a", "b"]);
        let y = obj(&["u"]);
        let f = map(&y, &x, &["b"]);
        assert!(check_e1(&[f]));
    }

    #[test]
    fn e1_matches_an_explicit_pullback_computation() {
        // Two summands; verify the first square against a hand-rolled
        // filter of pairs rather than through square_is_pullback.
        let y0 = obj(&["p", "q"]);
        let x0 = obj(&["a", "b"]);
        let y1 = obj(&["r"]);
        let x1 = obj(&["c"]);
        let f0 = map(&y0, &x0, &["a", "a"]);
        let f1 = map(&y1, &x1, &["c"]);
        assert!(check_e1(&[f0.clone(), f1]));

        let big = coproduct_map(&[f0.clone(), map(&y1, &x1, &["c"])]);
        let (_, inj_x) = coproduct(&[x0.clone(), x1.clone()]);
        let (pb, _, _) = pullback(&big, &inj_x[0]).unwrap();
        let mut expected = 0;
        for w in big.dom().elems() {
            for v in x0.elems() {
                if big.apply(w) == inj_x[0].apply(v) {
                    expected += 1;
                }
            }
        }
        assert_eq!(pb.len(), expected);
        assert_eq!(pb.len(), y0.len());
    }

    #[test]
    fn e1_holds_on_random_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..30 {
            let k = rng.gen_range(0..4);
            let mut family = Vec::new();
            for i in 0..k {
                let y = rand_obj(&mut rng, &format!("y{i}_"), 3);
                let x = if y.is_empty() {
                    rand_obj(&mut rng, &format!("x{i}_"), 3)
                } else {
                    let mut x = rand_obj(&mut rng, &format!("x{i}_"), 3);
                    if x.is_empty() {
                        x = FinObj::from_atoms([format!("x{i}_0")]).unwrap();
                    }
                    x
                };
                family.push(rand_map(&mut rng, &y, &x).unwrap());
            }
            assert!(check_e1(&family));
        }
    }

    #[test]
    fn e2_decomposes_domains_into_fibers() {
        let x0 = obj(&["a", "b"]);
        let x1 = obj(&["c"]);
        let (cop, inj) = coproduct(&[x0.clone(), x1.clone()]);

        // An injection into its own coproduct.
        assert!(check_e2_universal(&inj[0], &[x0.clone(), x1.clone()]).unwrap());

        // A random map from a larger domain.
        let y = obj(&["p", "q", "r", "s"]);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let f = rand_map(&mut rng, &y, &cop).unwrap();
            assert!(check_e2_universal(&f, &[x0.clone(), x1.clone()]).unwrap());
        }
    }

    #[test]
    fn e2_rejects_wrong_codomains_and_corrupted_fibers() {
        let x0 = obj(&["a"]);
        let x1 = obj(&["b"]);
        let y = obj(&["p", "q"]);
        let (cop, _) = coproduct(&[x0.clone(), x1.clone()]);
        let f = FinMap::from_fn(y.clone(), cop.clone(), |_| {
            Element::tag(0, Element::atom("a"))
        })
        .unwrap();

        assert_eq!(
            check_e2_universal(&f, std::slice::from_ref(&x0)).unwrap_err(),
            FinSetError::CodomainNotCoproduct
        );

        // Corrupt one fiber: drop an element from the first pullback leg.
        let (_, injections) = coproduct(&[x0.clone(), x1.clone()]);
        let mut fibers = Vec::new();
        for inj in &injections {
            fibers.push(pullback(&f, inj).unwrap());
        }
        let (whole, p1, p2) = fibers[0].clone();
        let (cut, incl) = subset_where(&whole, |e| e != &whole.elems()[0]).unwrap();
        fibers[0] = (
            cut,
            compose(&p1, &incl).unwrap(),
            compose(&p2, &incl).unwrap(),
        );
        assert!(!check_e2_given(&f, &fibers).unwrap());
    }

    #[test]
    fn e3_disjointness_including_repeated_summands() {
        let x = obj(&["a", "b"]);
        assert!(check_e3_disjoint(&[x.clone(), x.clone()]));
        assert!(check_e3_disjoint(&[]));
        assert!(check_e3_disjoint(&[x, FinObj::empty(), obj(&["c"])]));
    }

    #[test]
    fn subcoproduct_intersections_are_pullbacks() {
        let family = [obj(&["a", "b"]), obj(&["c"]), obj(&["d", "e"])];
        assert!(check_subcoproduct_intersection(&family, &[0, 1], &[1, 2]).unwrap());
        assert!(check_subcoproduct_intersection(&family, &[0], &[2]).unwrap());
        assert!(check_subcoproduct_intersection(&family, &[0, 1, 2], &[0, 1, 2]).unwrap());
        assert!(check_subcoproduct_intersection(&family, &[], &[1]).unwrap());
        assert_eq!(
            check_subcoproduct_intersection(&family, &[0, 3], &[1]).unwrap_err(),
            FinSetError::IndexOutOfRange { index: 3, len: 3 }
        );
    }

    #[test]
    fn distributivity_including_degenerate_shapes() {
        let y = obj(&["u", "v"]);
        let family = [obj(&["a"]), obj(&["b", "c"]), FinObj::empty()];
        assert!(check_distributive(&y, &family));
        assert!(check_distributive(&FinObj::empty(), &family));
        assert!(check_distributive(&y, &[]));
    }

    #[test]
    fn strict_initial_object() {
        assert!(check_strict_initial(&FinObj::empty()));
        assert!(check_strict_initial(&obj(&["a"])));
        assert!(check_strict_initial(&obj(&["a", "b", "c"])));
    }

    #[test]
    fn coproducts_of_equalizers_along_a_shared_cospan() {
        let y = obj(&["0", "1"]);
        let x0 = obj(&["a", "b", "c"]);
        let x1 = obj(&["d"]);
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..30 {
            let fs = [
                rand_map(&mut rng, &x0, &y).unwrap(),
                rand_map(&mut rng, &x1, &y).unwrap(),
            ];
            let gs = [
                rand_map(&mut rng, &x0, &y).unwrap(),
                rand_map(&mut rng, &x1, &y).unwrap(),
            ];
            assert!(check_coproduct_of_equalizers(&fs, &gs).unwrap());
        }
        assert!(check_coproduct_of_equalizers(&[], &[]).unwrap());
    }

    #[test]
    fn commuting_bijection_search_finds_constrained_solutions() {
        let x = obj(&["a", "b", "c"]);
        let y = obj(&["p", "q", "r"]);
        let z = obj(&["0", "1"]);
        let u = map(&x, &z, &["0", "1", "0"]);
        let v = map(&y, &z, &["1", "0", "0"]);
        let h = find_commuting_bijection(&x, &y, &[(u.clone(), v.clone())]).unwrap();
        assert!(h.is_bijective());
        for e in x.elems() {
            assert_eq!(u.apply(e), v.apply(h.apply(e)));
        }
        // Impossible when the fiber sizes disagree.
        let w = map(&y, &z, &["1", "1", "0"]);
        assert!(find_commuting_bijection(&x, &y, &[(u, w)]).is_none());
    }

    #[test]
    fn mediate_product_builds_the_pairing() {
        let x = obj(&["a", "b"]);
        let y = obj(&["u"]);
        let z = obj(&["s", "t"]);
        let prod = product(&x, &y);
        let f = map(&z, &x, &["b", "a"]);
        let g = map(&z, &y, &["u", "u"]);
        let m = mediate_product(
            &prod,
            &ConeLeg {
                apex: z.clone(),
                legs: vec![f.clone(), g],
            },
        )
        .unwrap();
        assert_eq!(compose(&prod.1, &m).unwrap(), f);
    }

    proptest! {
        #[test]
        fn composition_is_associative(
            sizes in proptest::collection::vec(1usize..4, 4),
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let objs: Vec<FinObj> = sizes
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    FinObj::from_atoms((0..n).map(|j| format!("o{i}e{j}"))).unwrap()
                })
                .collect();
            let f = rand_map(&mut rng, &objs[0], &objs[1]).unwrap();
            let g = rand_map(&mut rng, &objs[1], &objs[2]).unwrap();
            let h = rand_map(&mut rng, &objs[2], &objs[3]).unwrap();
            let left = compose(&h, &compose(&g, &f).unwrap()).unwrap();
            let right = compose(&compose(&h, &g).unwrap(), &f).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn identities_are_neutral(
            n in 1usize..5,
            m in 1usize..5,
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = FinObj::from_atoms((0..n).map(|j| format!("x{j}"))).unwrap();
            let y = FinObj::from_atoms((0..m).map(|j| format!("y{j}"))).unwrap();
            let f = rand_map(&mut rng, &x, &y).unwrap();
            prop_assert_eq!(compose(&FinMap::identity(&y), &f).unwrap(), f.clone());
            prop_assert_eq!(compose(&f, &FinMap::identity(&x)).unwrap(), f);
        }

        #[test]
        fn extensivity_laws_on_random_families(
            sizes in proptest::collection::vec(0usize..4, 0..4),
            y_size in 0usize..4,
            seed in any::<u64>(),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let family: Vec<FinObj> = sizes
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    FinObj::from_atoms((0..n).map(|j| format!("f{i}e{j}"))).unwrap()
                })
                .collect();
            let y = FinObj::from_atoms((0..y_size).map(|j| format!("y{j}"))).unwrap();
            prop_assert!(check_e3_disjoint(&family));
            prop_assert!(check_distributive(&y, &family));
            let (cop, _) = coproduct(&family);
            if let Some(f) = rand_map(&mut rng, &y, &cop) {
                prop_assert!(check_e2_universal(&f, &family).unwrap());
            }
        }
    }
}
