//! The correspondence between the two functor hom-sets attached to an
//! enriched category `M` and an internal category `A` with a chosen split:
//! split-preserving internal functors out of the idempotent-splitting
//! construction on one side, enriched functors into the hom-wise view of
//! `A` on the other.
//!
//! Reading back ([`psi`]) restricts an internal functor to identity-framed
//! data; rebuilding ([`phi`]) uses the split of `A` to re-assemble an
//! internal functor from hom data. Both directions are verified — never
//! assumed — to be mutually inverse by exhaustive enumeration
//! ([`adjunction_report`]), and natural in both corners
//! ([`check_naturality`]).

use std::fmt::Write as _;

use thiserror::Error;

use crate::enrich::{en_of_functor, enrich, EnrichError, Enrichment};
use crate::enriched::{
    compose_enriched_functors, enriched_functor_violations, enumerate_enriched_functors,
    EnrichedCat, EnrichedError, EnrichedFunctor,
};
use crate::finset::{compose, mediate_equalizer, FinMap};
use crate::internal::{
    canonical_violations, check_split_preserving, compose_internal_functors,
    enumerate_split_preserving_functors, internal_functor_violations, internal_violations,
    split_violations, CanonMode, InternalCat, InternalError, InternalFunctor, SplitData,
};
use crate::internalize::{inter_of_functor, InterBuild, InterError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AdjError {
    #[error("the internal side's split is not canonical: {0}")]
    NotCanonicalSplit(String),
    #[error("a required factorization failed: {0}")]
    NotFactorable(String),
    #[error("not a lawful functor: {0}")]
    UnlawfulFunctor(String),
    #[error("construction failed: {0}")]
    Build(String),
    #[error("the enumeration exceeded the budget of {0} candidates")]
    SizeBudgetExceeded(u64),
}

impl From<InterError> for AdjError {
    fn from(e: InterError) -> Self {
        match e {
            InterError::SizeBudgetExceeded(b) => AdjError::SizeBudgetExceeded(b),
            other => AdjError::Build(other.to_string()),
        }
    }
}

impl From<InternalError> for AdjError {
    fn from(e: InternalError) -> Self {
        match e {
            InternalError::SizeBudgetExceeded(b) => AdjError::SizeBudgetExceeded(b),
            other => AdjError::Build(other.to_string()),
        }
    }
}

impl From<EnrichedError> for AdjError {
    fn from(e: EnrichedError) -> Self {
        match e {
            EnrichedError::SizeBudgetExceeded(b) => AdjError::SizeBudgetExceeded(b),
            other => AdjError::Build(other.to_string()),
        }
    }
}

impl From<EnrichError> for AdjError {
    fn from(e: EnrichError) -> Self {
        AdjError::Build(e.to_string())
    }
}

/// One side of the correspondence fixed: the enriched category `M` with
/// its idempotent-splitting construction, and the internal category `A`
/// with its chosen split and its hom-wise view.
#[derive(Clone, Debug)]
pub struct AdjunctionInstance {
    m: EnrichedCat,
    inter_m: InterBuild,
    a: InternalCat,
    split_a: SplitData,
    enr_a: Enrichment,
}

impl AdjunctionInstance {
    pub fn new(m: &EnrichedCat, a: &InternalCat, split_a: &SplitData) -> Result<Self, AdjError> {
        let inter_m = InterBuild::build(m)?;
        if let Some(v) = internal_violations(a).first() {
            return Err(AdjError::Build(format!(
                "the internal side is unlawful: {v}"
            )));
        }
        if let Some(v) = split_violations(a, split_a).first() {
            return Err(AdjError::Build(format!(
                "the chosen split is unlawful: {v}"
            )));
        }
        let enr_a = enrich(a)?;
        Ok(AdjunctionInstance {
            m: m.clone(),
            inter_m,
            a: a.clone(),
            split_a: split_a.clone(),
            enr_a,
        })
    }

    /// The instance whose internal side is the construction on `M` itself,
    /// with its canonical split.
    pub fn self_instance(m: &EnrichedCat) -> Result<Self, AdjError> {
        let inter_m = InterBuild::build(m)?;
        let a = inter_m.cat().clone();
        let split_a = inter_m.split().clone();
        let enr_a = enrich(&a)?;
        Ok(AdjunctionInstance {
            m: m.clone(),
            inter_m,
            a,
            split_a,
            enr_a,
        })
    }

    pub fn enriched_side(&self) -> &EnrichedCat {
        &self.m
    }

    pub fn inter_m(&self) -> &InterBuild {
        &self.inter_m
    }

    pub fn internal_side(&self) -> &InternalCat {
        &self.a
    }

    pub fn split(&self) -> &SplitData {
        &self.split_a
    }

    pub fn enriched_view(&self) -> &Enrichment {
        &self.enr_a
    }

    /// Lift an enriched functor `M → en(A)`'s hom map through the hom
    /// subset inclusion, giving a plain map into the arrows of `A`.
    fn lift(&self, g: &EnrichedFunctor, x: usize, y: usize) -> FinMap {
        compose(&self.enr_a.gamma(g.obj(x), g.obj(y)).up, g.hom_map(x, y))
            .expect("hom images include into the arrows")
    }
}

/// Read an internal functor out of the construction back as an enriched
/// functor into the hom-wise view: objects go to the images of the
/// identity-idempotent objects, and a hom element `m` goes to the image of
/// its identity-framed arrow, landed in the hom subset the boundaries call
/// for.
pub fn psi(inst: &AdjunctionInstance, f: &InternalFunctor) -> Result<EnrichedFunctor, AdjError> {
    if let Some(v) = internal_functor_violations(f, inst.inter_m.cat(), &inst.a).first() {
        return Err(AdjError::UnlawfulFunctor(v.clone()));
    }
    let n = inst.m.n_objects();
    let mut obj_map = Vec::with_capacity(n);
    for x in 0..n {
        let img = f.f0.apply(&inst.inter_m.identity_object_elem(x));
        let idx = inst.enr_a.object_index(img).ok_or_else(|| {
            AdjError::Build(format!("object image {img} is not an object of the target"))
        })?;
        obj_map.push(idx);
    }
    let mut hom_maps = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let path =
                compose(&f.f1, inst.inter_m.nu(x, y)).expect("arrow map follows the hom embedding");
            let gamma = inst.enr_a.gamma(obj_map[x], obj_map[y]);
            let landed = mediate_equalizer(&gamma.up, &path).map_err(|_| {
                AdjError::NotFactorable(format!(
                    "images of hom ({x}, {y}) do not respect the boundaries"
                ))
            })?;
            row.push(landed);
        }
        hom_maps.push(row);
    }
    Ok(EnrichedFunctor { obj_map, hom_maps })
}

/// Rebuild an internal functor out of the construction from an enriched
/// functor into the hom-wise view, using the chosen split of the internal
/// side: an object `(x, p)` goes to the target of the retraction of the
/// image idempotent of `p`, and an arrow `(q, m, p)` goes to
/// `R(image of q) ∘ image of m ∘ S(image of p)`.
///
/// The split must be canonical unless `allow_noncanonical` is set; it is
/// never re-derived or repaired here.
pub fn phi(
    inst: &AdjunctionInstance,
    g: &EnrichedFunctor,
    allow_noncanonical: bool,
) -> Result<InternalFunctor, AdjError> {
    if !allow_noncanonical {
        if let Some(v) =
            canonical_violations(&inst.a, &inst.split_a, CanonMode::SandwichGivesG).first()
        {
            return Err(AdjError::NotCanonicalSplit(v.clone()));
        }
    }
    if let Some(v) = enriched_functor_violations(g, &inst.m, inst.enr_a.cat()).first() {
        return Err(AdjError::UnlawfulFunctor(v.clone()));
    }
    let n = inst.m.n_objects();
    let lifted: Vec<Vec<FinMap>> = (0..n)
        .map(|x| (0..n).map(|y| inst.lift(g, x, y)).collect())
        .collect();
    let mut idem_maps = Vec::with_capacity(n);
    for (x, lifted_row) in lifted.iter().enumerate() {
        let on = compose(&lifted_row[x], inst.inter_m.eps(x))
            .expect("idempotent carriers include into the endo-hom");
        let landed = mediate_equalizer(inst.split_a.idem_incl(), &on).map_err(|_| {
            AdjError::NotFactorable(format!(
                "an idempotent image of object {x} is not idempotent"
            ))
        })?;
        idem_maps.push(landed);
    }
    let f0 = FinMap::from_fn(inst.inter_m.cat().a0().clone(), inst.a.a0().clone(), |e| {
        let (x, p) = e.expect_tag();
        let r = inst.split_a.retraction().apply(idem_maps[x].apply(p));
        inst.a.cod_of(r).clone()
    })
    .expect("retraction targets are objects");
    let f1 = FinMap::from_fn(inst.inter_m.cat().a1().clone(), inst.a.a1().clone(), |u| {
        let (x, y, q, mid, p) = inst.inter_m.decompose(u);
        let s = inst.split_a.section().apply(idem_maps[x].apply(p));
        let r = inst.split_a.retraction().apply(idem_maps[y].apply(q));
        let gm = lifted[x][y].apply(mid);
        inst.a.c_apply(r, &inst.a.c_apply(gm, s))
    })
    .expect("rebuilt arrows are arrows");
    Ok(InternalFunctor { f0, f1 })
}

/// Does reading back then rebuilding recover `f`?
pub fn roundtrip_phi_psi(
    inst: &AdjunctionInstance,
    f: &InternalFunctor,
    allow_noncanonical: bool,
) -> Result<bool, AdjError> {
    let g = psi(inst, f)?;
    let back = phi(inst, &g, allow_noncanonical)?;
    Ok(&back == f)
}

/// Does rebuilding then reading back recover `g`?
pub fn roundtrip_psi_phi(
    inst: &AdjunctionInstance,
    g: &EnrichedFunctor,
    allow_noncanonical: bool,
) -> Result<bool, AdjError> {
    let f = phi(inst, g, allow_noncanonical)?;
    let back = psi(inst, &f)?;
    Ok(&back == g)
}

/// Naturality of the correspondence in both corners: for `u : M2 → M`
/// enriched, `v : A → A2` internal, and `f` out of the construction on
/// `M`, reading back `v ∘ f ∘ inter(u)` agrees with
/// `en(v) ∘ (read-back of f) ∘ u`.
pub fn check_naturality(
    inst: &AdjunctionInstance,
    inst2: &AdjunctionInstance,
    u: &EnrichedFunctor,
    v: &InternalFunctor,
    f: &InternalFunctor,
) -> Result<bool, AdjError> {
    let iu = inter_of_functor(u, &inst2.inter_m, &inst.inter_m)?;
    let composite = compose_internal_functors(v, &compose_internal_functors(f, &iu));
    let left = psi(inst2, &composite)?;
    let ev = en_of_functor(v, &inst.enr_a, &inst2.enr_a)?;
    let right = compose_enriched_functors(&ev, &compose_enriched_functors(&psi(inst, f)?, u));
    Ok(left == right)
}

/// Both hom-sets enumerated in full, with the index tables of the two
/// directions. Built only if every image is found among the enumerated
/// functors on the other side; whether the rebuilt functors preserve the
/// splits is checked directly and recorded, never assumed.
#[derive(Clone, Debug)]
pub struct HomSetReport {
    pub left: Vec<InternalFunctor>,
    pub right: Vec<EnrichedFunctor>,
    /// For each left index, the right index of its read-back.
    pub psi_table: Vec<usize>,
    /// For each right index, the left index of its rebuild.
    pub phi_table: Vec<usize>,
    pub phi_images_split_preserving: bool,
}

impl HomSetReport {
    pub fn mutually_inverse(&self) -> bool {
        self.psi_table.len() == self.left.len()
            && self.phi_table.len() == self.right.len()
            && self
                .psi_table
                .iter()
                .enumerate()
                .all(|(i, &j)| self.phi_table.get(j) == Some(&i))
            && self
                .phi_table
                .iter()
                .enumerate()
                .all(|(j, &i)| self.psi_table.get(i) == Some(&j))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "internal side: {} split-preserving functors",
            self.left.len()
        );
        let _ = writeln!(s, "enriched side: {} functors", self.right.len());
        let _ = writeln!(s, "read-back table: {:?}", self.psi_table);
        let _ = writeln!(s, "rebuild table: {:?}", self.phi_table);
        let _ = writeln!(
            s,
            "rebuilt functors split-preserving: {}",
            self.phi_images_split_preserving
        );
        let _ = writeln!(s, "mutually inverse: {}", self.mutually_inverse());
        s
    }
}

/// Enumerate both hom-sets within the budget, map each functor across, and
/// record the index tables.
pub fn adjunction_report(
    inst: &AdjunctionInstance,
    budget: u64,
    allow_noncanonical: bool,
) -> Result<HomSetReport, AdjError> {
    let left = enumerate_split_preserving_functors(
        inst.inter_m.cat(),
        inst.inter_m.split(),
        &inst.a,
        &inst.split_a,
        budget,
    )?;
    let right = enumerate_enriched_functors(&inst.m, inst.enr_a.cat(), budget)?;
    let mut psi_table = Vec::with_capacity(left.len());
    for f in &left {
        let g = psi(inst, f)?;
        let j = right.iter().position(|h| h == &g).ok_or_else(|| {
            AdjError::Build("a read-back is missing from the enumerated enriched functors".into())
        })?;
        psi_table.push(j);
    }
    let mut phi_table = Vec::with_capacity(right.len());
    let mut split_ok = true;
    for g in &right {
        let f = phi(inst, g, allow_noncanonical)?;
        if !check_split_preserving(&f, inst.inter_m.split(), &inst.split_a) {
            split_ok = false;
        }
        let i = left.iter().position(|h| h == &f).ok_or_else(|| {
            AdjError::Build("a rebuild is missing from the enumerated internal functors".into())
        })?;
        phi_table.push(i);
    }
    Ok(HomSetReport {
        left,
        right,
        psi_table,
        phi_table,
        phi_images_split_preserving: split_ok,
    })
}

/// For every carrier element `p` of every source object, the read-back of
/// `f` lifted on the diagonal agrees with `f` applied to the
/// identity-framed idempotent of `p`, and the common value is idempotent.
pub fn psi_diagonal_agreement_violations(
    inst: &AdjunctionInstance,
    f: &InternalFunctor,
) -> Result<Vec<String>, AdjError> {
    let g = psi(inst, f)?;
    let mut out = Vec::new();
    for x in 0..inst.m.n_objects() {
        let bracket = inst.inter_m.bracket_iota_star(x);
        let gamma = inst.enr_a.gamma(g.obj(x), g.obj(x));
        for p in inst.inter_m.carrier(x).elems() {
            let lifted = gamma
                .up
                .apply(g.hom_map(x, x).apply(inst.inter_m.eps(x).apply(p)));
            let framed = inst.inter_m.split().idem_incl().apply(bracket.apply(p));
            let via_f = f.f1.apply(framed);
            if lifted != via_f {
                out.push(format!(
                    "diagonal image of {p} disagrees: {lifted} vs {via_f}"
                ));
            }
            if &inst.a.c_apply(lifted, lifted) != lifted {
                out.push(format!("diagonal image {lifted} of {p} is not idempotent"));
            }
        }
    }
    Ok(out)
}

/// An enriched functor into the hom-wise view sends each identity element
/// to the identity arrow of the image object.
pub fn identity_image_violations(inst: &AdjunctionInstance, g: &EnrichedFunctor) -> Vec<String> {
    let mut out = Vec::new();
    for x in 0..inst.m.n_objects() {
        let lifted = inst.lift(g, x, x).apply(inst.m.ident(x)).clone();
        let target = &inst.enr_a.object_elems()[g.obj(x)];
        let expected = inst.a.ident_of(target);
        if &lifted != expected {
            out.push(format!(
                "identity of object {x} is sent to {lifted}, not {expected}"
            ));
        }
    }
    out
}
