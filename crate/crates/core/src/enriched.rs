//! Categories enriched in finite sets: every hom is a [`FinObj`] and
//! composition is a family of explicit maps out of binary products.
//!
//! The composition map for `(a, b, c)` consumes `hom(b, c) × hom(a, b)`,
//! outer arrow first, and the product is taken in exactly that order; all
//! structural expectations about domains are enforced at construction so
//! that the law checkers only ever speak about equations.

use std::collections::HashMap;

use thiserror::Error;

use crate::finset::{compose, hom_maps, product, Element, FinMap, FinObj};
use crate::plaincat::{arrow_tokens, Arrow, FinCat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnrichedError {
    #[error("malformed enriched data: {0}")]
    Shape(String),
    #[error("enumeration exceeded the budget of {0} candidates")]
    SizeBudgetExceeded(u64),
}

/// An enriched category over finite sets. Lawfulness (units and
/// associativity) is a separate question answered by [`check_enriched`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedCat {
    objs: Vec<String>,
    homs: Vec<Vec<FinObj>>,
    comps: Vec<Vec<Vec<FinMap>>>,
    idents: Vec<Element>,
}

impl EnrichedCat {
    pub fn new(
        objs: Vec<String>,
        homs: Vec<Vec<FinObj>>,
        comps: Vec<Vec<Vec<FinMap>>>,
        idents: Vec<Element>,
    ) -> Result<Self, EnrichedError> {
        let n = objs.len();
        {
            let mut seen = HashMap::new();
            for (i, o) in objs.iter().enumerate() {
                if seen.insert(o.clone(), i).is_some() {
                    return Err(EnrichedError::Shape(format!("duplicate object {o}")));
                }
            }
        }
        if homs.len() != n || homs.iter().any(|row| row.len() != n) {
            return Err(EnrichedError::Shape("hom table is not square".into()));
        }
        if comps.len() != n
            || comps
                .iter()
                .any(|p| p.len() != n || p.iter().any(|r| r.len() != n))
        {
            return Err(EnrichedError::Shape(
                "composition table is not cubic".into(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let map = &comps[a][b][c];
                    let (expected, _, _) = product(&homs[b][c], &homs[a][b]);
                    if map.dom() != &expected {
                        return Err(EnrichedError::Shape(format!(
                            "composition for ({a},{b},{c}) is not defined on hom({b},{c}) × hom({a},{b})"
                        )));
                    }
                    if map.cod() != &homs[a][c] {
                        return Err(EnrichedError::Shape(format!(
                            "composition for ({a},{b},{c}) does not land in hom({a},{c})"
                        )));
                    }
                }
            }
        }
        if idents.len() != n {
            return Err(EnrichedError::Shape(
                "one identity element per object".into(),
            ));
        }
        for (a, i) in idents.iter().enumerate() {
            if !homs[a][a].contains(i) {
                return Err(EnrichedError::Shape(format!(
                    "identity {i} of object {} is not in hom({a},{a})",
                    objs[a]
                )));
            }
        }
        Ok(EnrichedCat {
            objs,
            homs,
            comps,
            idents,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.objs.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objs
    }

    pub fn hom(&self, a: usize, b: usize) -> &FinObj {
        &self.homs[a][b]
    }

    pub fn comp_map(&self, a: usize, b: usize, c: usize) -> &FinMap {
        &self.comps[a][b][c]
    }

    pub fn ident(&self, a: usize) -> &Element {
        &self.idents[a]
    }

    /// `g ∘ f` for `g ∈ hom(b, c)` and `f ∈ hom(a, b)`.
    pub fn compose_elems(&self, a: usize, b: usize, c: usize, g: &Element, f: &Element) -> Element {
        self.comps[a][b][c]
            .apply(&Element::pair(g.clone(), f.clone()))
            .clone()
    }

    /// Total number of hom elements; a convenient size measure.
    pub fn total_hom_size(&self) -> usize {
        self.homs.iter().flatten().map(|h| h.len()).sum()
    }
}

/// All unit and associativity violations, one line each.
pub fn enriched_violations(m: &EnrichedCat) -> Vec<String> {
    let mut out = Vec::new();
    let n = m.n_objects();
    for a in 0..n {
        for b in 0..n {
            for f in m.hom(a, b).elems() {
                let right = m.compose_elems(a, a, b, f, m.ident(a));
                if &right != f {
                    out.push(format!("unit fails: {f} ∘ id_{} = {right}", m.objs[a]));
                }
                let left = m.compose_elems(a, b, b, m.ident(b), f);
                if &left != f {
                    out.push(format!("unit fails: id_{} ∘ {f} = {left}", m.objs[b]));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for h in m.hom(c, d).elems() {
                        for g in m.hom(b, c).elems() {
                            for f in m.hom(a, b).elems() {
                                let gf = m.compose_elems(a, b, c, g, f);
                                let hg = m.compose_elems(b, c, d, h, g);
                                if m.compose_elems(a, c, d, h, &gf)
                                    != m.compose_elems(a, b, d, &hg, f)
                                {
                                    out.push(format!("associativity fails on ({h}, {g}, {f})"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn check_enriched(m: &EnrichedCat) -> bool {
    enriched_violations(m).is_empty()
}

/// An enriched functor: an object assignment plus one map per hom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedFunctor {
    pub obj_map: Vec<usize>,
    pub hom_maps: Vec<Vec<FinMap>>,
}

impl EnrichedFunctor {
    pub fn obj(&self, a: usize) -> usize {
        self.obj_map[a]
    }

    pub fn hom_map(&self, a: usize, b: usize) -> &FinMap {
        &self.hom_maps[a][b]
    }
}

/// All violations of functoriality for `f: m → n`, including shape problems.
pub fn enriched_functor_violations(
    f: &EnrichedFunctor,
    m: &EnrichedCat,
    n: &EnrichedCat,
) -> Vec<String> {
    let mut out = Vec::new();
    let k = m.n_objects();
    if f.obj_map.len() != k || f.obj_map.iter().any(|&x| x >= n.n_objects()) {
        return vec!["object assignment has the wrong shape".into()];
    }
    if f.hom_maps.len() != k || f.hom_maps.iter().any(|row| row.len() != k) {
        return vec!["hom assignment has the wrong shape".into()];
    }
    for a in 0..k {
        for b in 0..k {
            let map = f.hom_map(a, b);
            if map.dom() != m.hom(a, b) || map.cod() != n.hom(f.obj(a), f.obj(b)) {
                out.push(format!("hom map ({a},{b}) has the wrong endpoints"));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for a in 0..k {
        let image = f.hom_map(a, a).apply(m.ident(a));
        if image != n.ident(f.obj(a)) {
            out.push(format!(
                "identity of object {} is sent to {image}",
                m.objs[a]
            ));
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for g in m.hom(b, c).elems() {
                    for h in m.hom(a, b).elems() {
                        let lhs = f
                            .hom_map(a, c)
                            .apply(&m.compose_elems(a, b, c, g, h))
                            .clone();
                        let rhs = n.compose_elems(
                            f.obj(a),
                            f.obj(b),
                            f.obj(c),
                            f.hom_map(b, c).apply(g),
                            f.hom_map(a, b).apply(h),
                        );
                        if lhs != rhs {
                            out.push(format!("composition fails on ({g}, {h})"));
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn check_enriched_functor(f: &EnrichedFunctor, m: &EnrichedCat, n: &EnrichedCat) -> bool {
    enriched_functor_violations(f, m, n).is_empty()
}

pub fn identity_enriched_functor(m: &EnrichedCat) -> EnrichedFunctor {
    let k = m.n_objects();
    EnrichedFunctor {
        obj_map: (0..k).collect(),
        hom_maps: (0..k)
            .map(|a| (0..k).map(|b| FinMap::identity(m.hom(a, b))).collect())
            .collect(),
    }
}

/// `g` after `f`.
pub fn compose_enriched_functors(g: &EnrichedFunctor, f: &EnrichedFunctor) -> EnrichedFunctor {
    let obj_map: Vec<usize> = f.obj_map.iter().map(|&a| g.obj_map[a]).collect();
    let hom_maps = f
        .hom_maps
        .iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(|(b, fm)| {
                    compose(&g.hom_maps[f.obj(a)][f.obj(b)], fm)
                        .expect("functor hom maps are composable")
                })
                .collect()
        })
        .collect();
    EnrichedFunctor { obj_map, hom_maps }
}

/// Every enriched functor `m → n`, by brute force over object assignments
/// and hom maps, pruned by the identity constraint slot by slot. The output
/// is in lexicographic order of the search, so it is deterministic; the
/// budget bounds the number of candidate maps examined.
pub fn enumerate_enriched_functors(
    m: &EnrichedCat,
    n: &EnrichedCat,
    budget: u64,
) -> Result<Vec<EnrichedFunctor>, EnrichedError> {
    let k = m.n_objects();
    let mut spent: u64 = 0;
    let mut charge = |spent: &mut u64, amount: u64| {
        *spent = spent.saturating_add(amount);
        if *spent > budget {
            Err(EnrichedError::SizeBudgetExceeded(budget))
        } else {
            Ok(())
        }
    };

    let mut out = Vec::new();
    let mut obj_map = vec![0usize; k];
    loop {
        charge(&mut spent, 1)?;
        if let Some(functors) = enumerate_with_objects(m, n, &obj_map, &mut spent, &mut charge)? {
            out.extend(functors);
        }
        // Advance the object assignment odometer.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            obj_map[i] += 1;
            if obj_map[i] < n.n_objects() {
                break;
            }
            obj_map[i] = 0;
        }
    }
}

fn enumerate_with_objects(
    m: &EnrichedCat,
    n: &EnrichedCat,
    obj_map: &[usize],
    spent: &mut u64,
    charge: &mut impl FnMut(&mut u64, u64) -> Result<(), EnrichedError>,
) -> Result<Option<Vec<EnrichedFunctor>>, EnrichedError> {
    let k = m.n_objects();
    if k > 0 && n.n_objects() == 0 {
        return Ok(None);
    }
    // Candidate maps per hom slot, diagonal slots filtered by the identity
    // constraint up front.
    let mut slot_candidates: Vec<Vec<FinMap>> = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            let all = hom_maps(m.hom(a, b), n.hom(obj_map[a], obj_map[b]));
            charge(spent, all.len() as u64)?;
            let filtered: Vec<FinMap> = if a == b {
                all.into_iter()
                    .filter(|map| map.apply(m.ident(a)) == n.ident(obj_map[a]))
                    .collect()
            } else {
                all
            };
            if filtered.is_empty() && !m.hom(a, b).is_empty() {
                return Ok(Some(Vec::new()));
            }
            slot_candidates.push(filtered);
        }
    }
    if slot_candidates.iter().any(|c| c.is_empty()) {
        // Only possible when some hom of m is empty and the target hom is
        // empty too; the unique empty map still exists.
        for (slot, cands) in slot_candidates.iter_mut().enumerate() {
            if cands.is_empty() {
                let (a, b) = (slot / k, slot % k);
                cands.push(
                    FinMap::new(
                        m.hom(a, b).clone(),
                        n.hom(obj_map[a], obj_map[b]).clone(),
                        vec![],
                    )
                    .expect("empty hom admits the empty map"),
                );
            }
        }
    }

    let mut out = Vec::new();
    let mut choice = vec![0usize; k * k];
    'product: loop {
        charge(spent, 1)?;
        let hom_maps_chosen: Vec<Vec<FinMap>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| slot_candidates[a * k + b][choice[a * k + b]].clone())
                    .collect()
            })
            .collect();
        let candidate = EnrichedFunctor {
            obj_map: obj_map.to_vec(),
            hom_maps: hom_maps_chosen,
        };
        if check_enriched_functor(&candidate, m, n) {
            out.push(candidate);
        }
        let mut i = k * k;
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
    Ok(Some(out))
}

/// View a plain category hom-wise: arrows become atoms named by their
/// tokens and the composition table becomes a family of maps.
pub fn enriched_of_plain(c: &FinCat) -> EnrichedCat {
    let tokens = arrow_tokens(c);
    let n = c.n_objects();
    let hom_indices: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|a| (0..n).map(|b| c.hom(a, b)).collect())
        .collect();
    let homs: Vec<Vec<FinObj>> = hom_indices
        .iter()
        .map(|row| {
            row.iter()
                .map(|arrows| {
                    FinObj::from_atoms(arrows.iter().map(|&i| tokens[i].clone()))
                        .expect("arrow tokens are distinct")
                })
                .collect()
        })
        .collect();
    let comps: Vec<Vec<Vec<FinMap>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..n)
                        .map(|c_| {
                            let (dom, _, _) = product(&homs[b][c_], &homs[a][b]);
                            FinMap::from_fn(dom, homs[a][c_].clone(), |e| {
                                let (g, f) = e.expect_pair();
                                let gi = hom_indices[b][c_]
                                    [homs[b][c_].index_of(g).expect("element of hom")];
                                let fi = hom_indices[a][b]
                                    [homs[a][b].index_of(f).expect("element of hom")];
                                let h = c
                                    .compose(gi, fi)
                                    .expect("composable arrows have a composite");
                                Element::atom(tokens[h].clone())
                            })
                            .expect("composites stay in the right hom")
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let idents: Vec<Element> = (0..n)
        .map(|a| Element::atom(tokens[c.ident(a)].clone()))
        .collect();
    EnrichedCat::new(c.objects().to_vec(), homs, comps, idents)
        .expect("a plain category views as enriched data")
}

/// Flatten an enriched category into a plain one; the inverse direction of
/// [`enriched_of_plain`] up to renaming. Arrow labels are the printed hom
/// elements, which is unambiguous because arrows are identified by their
/// endpoints as well.
pub fn plain_of_enriched(m: &EnrichedCat) -> FinCat {
    let n = m.n_objects();
    let mut arrows = Vec::new();
    let mut index: HashMap<(usize, usize, Element), usize> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for e in m.hom(a, b).elems() {
                index.insert((a, b, e.clone()), arrows.len());
                arrows.push(Arrow {
                    label: e.to_string(),
                    dom: a,
                    cod: b,
                });
            }
        }
    }
    let mut comp = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for g in m.hom(b, c).elems() {
                    for f in m.hom(a, b).elems() {
                        let h = m.compose_elems(a, b, c, g, f);
                        let gi = index[&(b, c, g.clone())];
                        let fi = index[&(a, b, f.clone())];
                        comp.insert((gi, fi), index[&(a, c, h)]);
                    }
                }
            }
        }
    }
    let idents: Vec<usize> = (0..n).map(|a| index[&(a, a, m.ident(a).clone())]).collect();
    FinCat::new(m.objs.clone(), arrows, &comp, idents)
        .expect("an enriched category flattens to plain data")
}
