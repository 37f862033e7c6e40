//! Viewing an internal category hom-wise: each pair of object elements
//! `(α, β)` gets the subset of arrows from `α` to `β`, and the composition
//! maps are obtained by factoring the internal composition through those
//! subsets. The result is an enriched category whose objects are the
//! printed object elements.
//!
//! The construction requires the boundary laws of the input: without them
//! a composite can land outside its hom subset and the factoring fails.

use thiserror::Error;

use crate::enriched::{EnrichedCat, EnrichedFunctor};
use crate::finset::{
    compose, mediate_equalizer, mediate_pullback, product, ConeLeg, Element, FinMap, FinObj,
};
use crate::internal::{InternalCat, InternalFunctor};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnrichError {
    #[error("the arrows do not organize into homs: {0}")]
    NotEnrichable(String),
}

/// One hom subset of an internal category: the arrows from `source` to
/// `target`, as a subobject of the arrows.
#[derive(Clone, Debug)]
pub struct GammaHom {
    pub source: Element,
    pub target: Element,
    pub hom_obj: FinObj,
    /// Inclusion of the hom subset into the object of arrows.
    pub up: FinMap,
}

/// An internal category together with its hom-wise view. The enriched side
/// names objects by printing the object elements; `object_elems` and the
/// inclusions tie everything back to the internal side.
#[derive(Clone, Debug)]
pub struct Enrichment {
    cat: EnrichedCat,
    object_elems: Vec<Element>,
    homs: Vec<Vec<GammaHom>>,
}

impl Enrichment {
    pub fn cat(&self) -> &EnrichedCat {
        &self.cat
    }

    pub fn object_elems(&self) -> &[Element] {
        &self.object_elems
    }

    pub fn object_index(&self, x: &Element) -> Option<usize> {
        self.object_elems.iter().position(|e| e == x)
    }

    pub fn gamma(&self, a: usize, b: usize) -> &GammaHom {
        &self.homs[a][b]
    }
}

/// The hom-wise view of `a`. Fails when some composite lands outside the
/// hom subset its boundaries call for, which is exactly a failure of the
/// boundary laws.
pub fn enrich(a: &InternalCat) -> Result<Enrichment, EnrichError> {
    let object_elems: Vec<Element> = a.a0().elems().to_vec();
    let n = object_elems.len();
    let homs: Vec<Vec<GammaHom>> = object_elems
        .iter()
        .map(|alpha| {
            object_elems
                .iter()
                .map(|beta| {
                    let (hom_obj, up) = crate::finset::subset_where(a.a1(), |u| {
                        a.dom_of(u) == alpha && a.cod_of(u) == beta
                    })
                    .expect("arrows with fixed boundaries form a subset");
                    GammaHom {
                        source: alpha.clone(),
                        target: beta.clone(),
                        hom_obj,
                        up,
                    }
                })
                .collect()
        })
        .collect();

    let pb = (a.a2().clone(), a.pi1().clone(), a.pi2().clone());
    let mut comps: Vec<Vec<Vec<FinMap>>> = Vec::with_capacity(n);
    for alpha in 0..n {
        let mut plane = Vec::with_capacity(n);
        for beta in 0..n {
            let mut line = Vec::with_capacity(n);
            for gamma in 0..n {
                let outer = &homs[beta][gamma];
                let inner = &homs[alpha][beta];
                let (prod, p1, p2) = product(&outer.hom_obj, &inner.hom_obj);
                let leg1 = compose(&outer.up, &p1).expect("outer leg reaches the arrows");
                let leg2 = compose(&inner.up, &p2).expect("inner leg reaches the arrows");
                let cone = ConeLeg {
                    apex: prod,
                    legs: vec![leg1, leg2],
                };
                let into_pairs = mediate_pullback(&pb, &cone).map_err(|_| {
                    EnrichError::NotEnrichable(format!(
                        "arrows {beta} → {gamma} do not meet arrows {alpha} → {beta}"
                    ))
                })?;
                let composed =
                    compose(a.comp_map(), &into_pairs).expect("pairs reach the composition");
                let comp = mediate_equalizer(&homs[alpha][gamma].up, &composed).map_err(|e| {
                    EnrichError::NotEnrichable(format!("a composite escapes its hom: {e}"))
                })?;
                line.push(comp);
            }
            plane.push(line);
        }
        comps.push(plane);
    }

    let idents: Vec<Element> = object_elems
        .iter()
        .map(|x| Element::sub(a.ident_of(x).clone()))
        .collect();
    let objs: Vec<String> = object_elems.iter().map(|x| x.to_string()).collect();
    let hom_objs: Vec<Vec<FinObj>> = homs
        .iter()
        .map(|row| row.iter().map(|g| g.hom_obj.clone()).collect())
        .collect();
    let cat = EnrichedCat::new(objs, hom_objs, comps, idents)
        .map_err(|e| EnrichError::NotEnrichable(e.to_string()))?;
    Ok(Enrichment {
        cat,
        object_elems,
        homs,
    })
}

/// The hom-wise view of an internal functor: the object map is read off
/// element by element and each hom map is the arrow map factored through
/// the target hom inclusion.
pub fn en_of_functor(
    f: &InternalFunctor,
    ea: &Enrichment,
    eb: &Enrichment,
) -> Result<EnrichedFunctor, EnrichError> {
    let obj_map: Vec<usize> = ea
        .object_elems
        .iter()
        .map(|x| {
            eb.object_index(f.f0.apply(x)).ok_or_else(|| {
                EnrichError::NotEnrichable(format!("object image of {x} is unknown"))
            })
        })
        .collect::<Result<_, _>>()?;
    let n = ea.object_elems.len();
    let mut hom_maps = Vec::with_capacity(n);
    for a in 0..n {
        let mut row = Vec::with_capacity(n);
        for b in 0..n {
            let on_arrows =
                compose(&f.f1, &ea.homs[a][b].up).expect("hom inclusion reaches the arrow map");
            let target = &eb.homs[obj_map[a]][obj_map[b]].up;
            let map = mediate_equalizer(target, &on_arrows).map_err(|_| {
                EnrichError::NotEnrichable(format!(
                    "an arrow image escapes the hom of its boundaries ({a}, {b})"
                ))
            })?;
            row.push(map);
        }
        hom_maps.push(row);
    }
    Ok(EnrichedFunctor { obj_map, hom_maps })
}
