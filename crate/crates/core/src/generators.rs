//! Seeded generators of lawful category data for the property and
//! acceptance suites, plus shrinkers toward smaller instances.
//!
//! Plain categories are generated concretely: objects are small finite
//! sets, arrows are functions between them, and the arrow set is closed
//! under composition, so associativity and unit laws hold by construction
//! instead of by rejection over raw tables. Enriched and internal
//! instances are views of the plain ones. Everything is a pure function of
//! the seed.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::enriched::{enriched_of_plain, EnrichedCat};
use crate::finset::{
    check_coproduct_of_equalizers, check_distributive, check_e1, check_e2_universal,
    check_e3_disjoint, check_strict_initial, check_subcoproduct_intersection, coproduct, Element,
    FinMap, FinObj,
};
use crate::internal::{internal_of_plain, InternalCat};
use crate::plaincat::{Arrow, FinCat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_objects: usize,
    pub max_hom_size: usize,
    pub max_arrows: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("no lawful instance found within {0} attempts")]
    GenerationExhausted(usize),
}

const MAX_ATTEMPTS: usize = 64;

/// A concrete function between the element sets of two objects.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Func {
    dom: usize,
    cod: usize,
    table: Vec<usize>,
}

fn composite(g: &Func, f: &Func) -> Func {
    Func {
        dom: f.dom,
        cod: g.cod,
        table: f.table.iter().map(|&x| g.table[x]).collect(),
    }
}

/// Extend `funcs` with every composite of its members; `false` when the
/// closure would exceed `budget` arrows.
fn close_under_composition(funcs: &mut Vec<Func>, budget: usize) -> bool {
    if funcs.len() > budget {
        return false;
    }
    loop {
        let mut added = false;
        let snapshot = funcs.len();
        for gi in 0..snapshot {
            for fi in 0..snapshot {
                if funcs[gi].dom != funcs[fi].cod {
                    continue;
                }
                let h = composite(&funcs[gi], &funcs[fi]);
                if !funcs.contains(&h) {
                    funcs.push(h);
                    added = true;
                    if funcs.len() > budget {
                        return false;
                    }
                }
            }
        }
        if !added {
            return true;
        }
    }
}

fn assemble(n: usize, funcs: &[Func]) -> FinCat {
    let objects: Vec<String> = (0..n).map(|o| format!("x{o}")).collect();
    let mut arrows = Vec::with_capacity(funcs.len());
    let mut next = 0usize;
    for (i, f) in funcs.iter().enumerate() {
        let label = if i < n {
            format!("id{i}")
        } else {
            let l = format!("f{next}");
            next += 1;
            l
        };
        arrows.push(Arrow {
            label,
            dom: f.dom,
            cod: f.cod,
        });
    }
    let mut comp = HashMap::new();
    for (gi, g) in funcs.iter().enumerate() {
        for (fi, f) in funcs.iter().enumerate() {
            if g.dom != f.cod {
                continue;
            }
            let h = composite(g, f);
            let hi = funcs
                .iter()
                .position(|k| k == &h)
                .expect("closed under composition");
            comp.insert((gi, fi), hi);
        }
    }
    FinCat::new(objects, arrows, &comp, (0..n).collect())
        .expect("generated presentation is well-formed")
}

fn attempt_plain(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<FinCat> {
    let max_objects = cfg.max_objects.max(1);
    let n = rng.gen_range(1..=max_objects);
    let budget = cfg.max_arrows.max(n);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut funcs: Vec<Func> = (0..n)
        .map(|o| Func {
            dom: o,
            cod: o,
            table: (0..sizes[o]).collect(),
        })
        .collect();
    let generators = rng.gen_range(0..=3);
    for _ in 0..generators {
        let d = rng.gen_range(0..n);
        let c = rng.gen_range(0..n);
        let table: Vec<usize> = (0..sizes[d]).map(|_| rng.gen_range(0..sizes[c])).collect();
        let cand = Func {
            dom: d,
            cod: c,
            table,
        };
        if funcs.contains(&cand) {
            continue;
        }
        let mut trial = funcs.clone();
        trial.push(cand);
        if close_under_composition(&mut trial, budget) {
            funcs = trial;
        }
    }
    let mut hom_count: HashMap<(usize, usize), usize> = HashMap::new();
    for f in &funcs {
        *hom_count.entry((f.dom, f.cod)).or_insert(0) += 1;
    }
    if hom_count.values().any(|&k| k > cfg.max_hom_size.max(1)) {
        return None;
    }
    Some(assemble(n, &funcs))
}

/// A lawful plain category within the configured bounds.
pub fn gen_plain(cfg: &GenConfig) -> Result<FinCat, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(c) = attempt_plain(cfg, &mut rng) {
            return Ok(c);
        }
    }
    Err(GenError::GenerationExhausted(MAX_ATTEMPTS))
}

/// A lawful enriched category within the configured bounds, as the
/// hom-set view of a generated plain category.
pub fn gen_enriched(cfg: &GenConfig) -> Result<EnrichedCat, GenError> {
    Ok(enriched_of_plain(&gen_plain(cfg)?))
}

/// A lawful internal category within the configured bounds, as the view
/// of a generated plain category — never by rejection over raw tables.
pub fn gen_internal(cfg: &GenConfig) -> Result<InternalCat, GenError> {
    Ok(internal_of_plain(&gen_plain(cfg)?))
}

/// Strictly smaller lawful plain categories: full subcategories on one
/// fewer object, and the category minus one non-identity arrow whenever
/// the rest stays closed under composition.
pub fn shrink_plain(c: &FinCat) -> Vec<FinCat> {
    let mut out = Vec::new();
    let n = c.n_objects();
    if n >= 2 {
        for drop in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&o| o != drop).collect();
            out.push(full_subcategory(c, &keep));
        }
    }
    for drop in 0..c.n_arrows() {
        if (0..n).any(|o| c.ident(o) == drop) {
            continue;
        }
        if let Some(smaller) = without_arrow(c, drop) {
            out.push(smaller);
        }
    }
    out
}

fn full_subcategory(c: &FinCat, keep: &[usize]) -> FinCat {
    let objects: Vec<String> = keep.iter().map(|&o| c.objects()[o].clone()).collect();
    let obj_pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let kept_arrows: Vec<usize> = (0..c.n_arrows())
        .filter(|&a| obj_pos.contains_key(&c.arrow(a).dom) && obj_pos.contains_key(&c.arrow(a).cod))
        .collect();
    let arrow_pos: HashMap<usize, usize> = kept_arrows
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i))
        .collect();
    let arrows: Vec<Arrow> = kept_arrows
        .iter()
        .map(|&a| {
            let old = c.arrow(a);
            Arrow {
                label: old.label.clone(),
                dom: obj_pos[&old.dom],
                cod: obj_pos[&old.cod],
            }
        })
        .collect();
    let mut comp = HashMap::new();
    for &g in &kept_arrows {
        for &f in &kept_arrows {
            if let Some(h) = c.compose(g, f) {
                comp.insert((arrow_pos[&g], arrow_pos[&f]), arrow_pos[&h]);
            }
        }
    }
    let idents: Vec<usize> = keep.iter().map(|&o| arrow_pos[&c.ident(o)]).collect();
    FinCat::new(objects, arrows, &comp, idents).expect("full subcategory is well-formed")
}

fn without_arrow(c: &FinCat, drop: usize) -> Option<FinCat> {
    let kept: Vec<usize> = (0..c.n_arrows()).filter(|&a| a != drop).collect();
    // The rest must stay closed: no composite of kept arrows may be the
    // dropped one.
    for &g in &kept {
        for &f in &kept {
            if c.compose(g, f) == Some(drop) {
                return None;
            }
        }
    }
    let arrow_pos: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let arrows: Vec<Arrow> = kept.iter().map(|&a| c.arrow(a).clone()).collect();
    let mut comp = HashMap::new();
    for &g in &kept {
        for &f in &kept {
            if let Some(h) = c.compose(g, f) {
                comp.insert((arrow_pos[&g], arrow_pos[&f]), arrow_pos[&h]);
            }
        }
    }
    let idents: Vec<usize> = (0..c.n_objects()).map(|o| arrow_pos[&c.ident(o)]).collect();
    Some(
        FinCat::new(c.objects().to_vec(), arrows, &comp, idents)
            .expect("arrow-dropped category is well-formed"),
    )
}

/// Strictly smaller lawful enriched categories: full sub-categories on one
/// fewer object, and the category minus one non-identity hom element
/// whenever every composite of remaining elements remains.
pub fn shrink_enriched(m: &EnrichedCat) -> Vec<EnrichedCat> {
    let mut out = Vec::new();
    let n = m.n_objects();
    if n >= 2 {
        for drop in 0..n {
            let keep: Vec<usize> = (0..n).filter(|&o| o != drop).collect();
            if let Some(sub) = enriched_restriction(m, &keep, None) {
                out.push(sub);
            }
        }
    }
    let keep_all: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in 0..n {
            for e in m.hom(a, b).elems() {
                if a == b && e == m.ident(a) {
                    continue;
                }
                if let Some(sub) = enriched_restriction(m, &keep_all, Some((a, b, e))) {
                    out.push(sub);
                }
            }
        }
    }
    out
}

/// The enriched category on the kept objects, optionally minus one hom
/// element; `None` when some composite of surviving elements escapes.
fn enriched_restriction(
    m: &EnrichedCat,
    keep: &[usize],
    without: Option<(usize, usize, &Element)>,
) -> Option<EnrichedCat> {
    let objs: Vec<String> = keep.iter().map(|&o| m.objects()[o].clone()).collect();
    let hom_of = |a: usize, b: usize| -> Option<FinObj> {
        let dropped = match without {
            Some((x, y, e)) if x == a && y == b => Some(e),
            _ => None,
        };
        let elems: Vec<Element> = m
            .hom(a, b)
            .elems()
            .iter()
            .filter(|e| Some(*e) != dropped)
            .cloned()
            .collect();
        FinObj::new(elems).ok()
    };
    let mut homs = Vec::with_capacity(keep.len());
    for &a in keep {
        let mut row = Vec::with_capacity(keep.len());
        for &b in keep {
            row.push(hom_of(a, b)?);
        }
        homs.push(row);
    }
    let mut comps = Vec::with_capacity(keep.len());
    for (ai, &a) in keep.iter().enumerate() {
        let mut plane = Vec::with_capacity(keep.len());
        for (bi, &b) in keep.iter().enumerate() {
            let mut row = Vec::with_capacity(keep.len());
            for (ci, &c) in keep.iter().enumerate() {
                let (dom, _, _) = crate::finset::product(&homs[bi][ci], &homs[ai][bi]);
                let map = FinMap::from_fn(dom, homs[ai][ci].clone(), |p| {
                    let (g, f) = p.expect_pair();
                    m.compose_elems(a, b, c, g, f)
                })
                .ok()?;
                row.push(map);
            }
            plane.push(row);
        }
        comps.push(plane);
    }
    let idents: Vec<Element> = keep.iter().map(|&o| m.ident(o).clone()).collect();
    EnrichedCat::new(objs, homs, comps, idents).ok()
}

/// One seeded run of the coproduct-law suite on random families of finite
/// sets and maps: pullback squares along injections, universality and
/// disjointness of coproducts, distributivity over products, strictness of
/// the empty set, commutation with equalizers along a shared cospan, and
/// the intersection law for sub-coproducts. Returns one line per failed
/// law; empty means everything holds.
pub fn run_extensivity_selftest(seed: u64, cases: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let k = rng.gen_range(1..=4);
        let mut total = 0usize;
        let family: Vec<FinObj> = (0..k)
            .map(|i| {
                let size = rng.gen_range(0..=3.min(12 - total.min(12)));
                total += size;
                numbered_obj(&format!("s{i}"), size)
            })
            .collect();

        // Pullback squares along the injections of a coproduct of maps.
        let maps: Vec<FinMap> = family
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let ysize = if x.is_empty() {
                    0
                } else {
                    rng.gen_range(0..=3)
                };
                let y = numbered_obj(&format!("y{i}"), ysize);
                random_map(&mut rng, &y, x).expect("empty domain or inhabited codomain")
            })
            .collect();
        if !check_e1(&maps) {
            failures.push(format!("case {case}: injection squares are not pullbacks"));
        }

        // Universality: any map into the coproduct decomposes its domain.
        let (cop, _) = coproduct(&family);
        let wsize = if cop.is_empty() {
            0
        } else {
            rng.gen_range(0..=4)
        };
        let w = numbered_obj("w", wsize);
        let f = random_map(&mut rng, &w, &cop).expect("empty domain or inhabited codomain");
        if !check_e2_universal(&f, &family).unwrap_or(false) {
            failures.push(format!("case {case}: coproduct is not universal"));
        }

        if !check_e3_disjoint(&family) {
            failures.push(format!(
                "case {case}: coproduct injections are not disjoint"
            ));
        }

        let y = numbered_obj("d", rng.gen_range(0..=3));
        if !check_distributive(&y, &family) {
            failures.push(format!("case {case}: products do not distribute"));
        }

        if !check_strict_initial(&numbered_obj("z", rng.gen_range(0..=3)))
            || !check_strict_initial(&FinObj::empty())
        {
            failures.push(format!("case {case}: empty set is not strictly initial"));
        }

        // Equalizers along a shared cospan commute with coproducts.
        let shared = numbered_obj("t", rng.gen_range(1..=3));
        let fs: Vec<FinMap> = family
            .iter()
            .map(|x| random_map(&mut rng, x, &shared).expect("codomain inhabited"))
            .collect();
        let gs: Vec<FinMap> = family
            .iter()
            .map(|x| random_map(&mut rng, x, &shared).expect("codomain inhabited"))
            .collect();
        if !check_coproduct_of_equalizers(&fs, &gs).unwrap_or(false) {
            failures.push(format!(
                "case {case}: equalizers do not commute with coproducts"
            ));
        }

        let j1: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
        let j2: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
        if !check_subcoproduct_intersection(&family, &j1, &j2).unwrap_or(false) {
            failures.push(format!(
                "case {case}: sub-coproducts do not intersect correctly"
            ));
        }
    }
    failures
}

fn numbered_obj(prefix: &str, size: usize) -> FinObj {
    FinObj::from_atoms((0..size).map(|j| format!("{prefix}e{j}")))
        .expect("numbered names are distinct")
}

/// A uniformly random map; `None` only when the codomain is empty and the
/// domain is not.
fn random_map(rng: &mut ChaCha8Rng, dom: &FinObj, cod: &FinObj) -> Option<FinMap> {
    if cod.is_empty() && !dom.is_empty() {
        return None;
    }
    let images: Vec<Element> = dom
        .elems()
        .iter()
        .map(|_| cod.elems()[rng.gen_range(0..cod.len())].clone())
        .collect();
    Some(FinMap::new(dom.clone(), cod.clone(), images).expect("images drawn from the codomain"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::check_enriched;
    use crate::internal::check_internal;
    use crate::plaincat::check_category;

    fn cfg(seed: u64, objects: usize, hom: usize, arrows: usize) -> GenConfig {
        GenConfig {
            seed,
            max_objects: objects,
            max_hom_size: hom,
            max_arrows: arrows,
        }
    }

    #[test]
    fn same_seed_same_instance() {
        for seed in 0..10 {
            let c = cfg(seed, 3, 3, 9);
            assert_eq!(gen_plain(&c).unwrap(), gen_plain(&c).unwrap());
            assert_eq!(gen_enriched(&c).unwrap(), gen_enriched(&c).unwrap());
            assert_eq!(gen_internal(&c).unwrap(), gen_internal(&c).unwrap());
        }
    }

    #[test]
    fn generated_instances_are_lawful() {
        for seed in 0..100 {
            let c = cfg(seed, 3, 3, 9);
            assert!(check_category(&gen_plain(&c).unwrap()), "seed {seed}");
            assert!(check_enriched(&gen_enriched(&c).unwrap()), "seed {seed}");
            assert!(check_internal(&gen_internal(&c).unwrap()), "seed {seed}");
        }
    }

    #[test]
    fn tight_bounds_give_the_one_object_one_arrow_category() {
        for seed in 0..10 {
            let m = gen_enriched(&cfg(seed, 1, 1, 1)).unwrap();
            assert_eq!(m.n_objects(), 1);
            assert_eq!(m.hom(0, 0).len(), 1);
        }
    }

    #[test]
    fn arrow_budget_at_object_count_forces_discreteness() {
        for seed in 0..20 {
            let c = gen_plain(&cfg(seed, 3, 3, 0)).unwrap();
            assert_eq!(c.n_arrows(), c.n_objects());
            for a in 0..c.n_arrows() {
                assert_eq!(c.arrow(a).dom, c.arrow(a).cod);
            }
        }
    }

    #[test]
    fn the_nonidentity_idempotent_monoid_occurs_in_the_stream() {
        let mut found = false;
        for seed in 0..200 {
            let m = gen_enriched(&cfg(seed, 1, 2, 2)).unwrap();
            if m.hom(0, 0).len() != 2 {
                continue;
            }
            let other = m
                .hom(0, 0)
                .elems()
                .iter()
                .find(|e| *e != m.ident(0))
                .cloned()
                .unwrap();
            if m.compose_elems(0, 0, 0, &other, &other) == other {
                found = true;
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn a_two_object_category_with_one_cross_arrow_occurs() {
        let mut found = false;
        for seed in 0..300 {
            let c = gen_plain(&cfg(seed, 2, 2, 3)).unwrap();
            if c.n_objects() == 2
                && c.n_arrows() == 3
                && (0..3).any(|a| c.arrow(a).dom != c.arrow(a).cod)
            {
                found = true;
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn shrinks_are_lawful_and_strictly_smaller() {
        for seed in 0..30 {
            let c = gen_plain(&cfg(seed, 3, 3, 9)).unwrap();
            for s in shrink_plain(&c) {
                assert!(check_category(&s), "seed {seed}");
                assert!(
                    s.n_objects() < c.n_objects() || s.n_arrows() < c.n_arrows(),
                    "seed {seed}"
                );
            }
            let m = enriched_of_plain(&c);
            let total = |x: &EnrichedCat| -> usize { x.total_hom_size() + x.n_objects() };
            for s in shrink_enriched(&m) {
                assert!(check_enriched(&s), "seed {seed}");
                assert!(total(&s) < total(&m), "seed {seed}");
            }
        }
    }

    #[test]
    fn the_idempotent_monoid_shrinks_to_the_one_arrow_category() {
        let m = crate::enriched::tests::idem_monoid();
        let shrunk = shrink_enriched(&m);
        assert!(shrunk
            .iter()
            .any(|s| s.n_objects() == 1 && s.hom(0, 0).len() == 1));
        let t = crate::enriched::tests::trivial();
        assert!(shrink_enriched(&t).is_empty());
    }

    #[test]
    fn extensivity_selftest_passes() {
        assert_eq!(run_extensivity_selftest(0, 50), Vec::<String>::new());
    }
}
