//! Ordinary finite categories presented by labeled arrows and an explicit
//! composition table, together with the idempotent-splitting completion.
//!
//! Arrows are identified by index; the `(label, dom, cod)` triple must be
//! unique but the label alone need not be. The completion reuses one base
//! arrow in many hom-sets, so this looseness is load-bearing: the arrow `f`
//! of the base category appears as an arrow `e → d` for every pair of
//! idempotents `e`, `d` absorbing it.

use std::collections::HashMap;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub dom: usize,
    pub cod: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatError {
    #[error("duplicate object label {0}")]
    DuplicateObject(String),
    #[error("duplicate arrow {0}")]
    DuplicateArrow(String),
    #[error("index out of range in category data")]
    BadIndex,
    #[error("missing composite for the composable pair ({g}, {f})")]
    MissingComposite { g: usize, f: usize },
    #[error("composite listed for the non-composable pair ({g}, {f})")]
    SpuriousComposite { g: usize, f: usize },
    #[error("arrow {0} is not an idempotent")]
    NotIdempotent(String),
    #[error("arrow {0} does not belong to this completion")]
    NotInCompletion(String),
}

/// A finite category: object labels, arrows, a total composition table on
/// composable pairs, and a chosen identity arrow per object. Laws are not
/// enforced at construction; see [`check_category`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    comp: Vec<Vec<Option<usize>>>,
    idents: Vec<usize>,
}

impl FinCat {
    /// `comp` maps composable index pairs `(g, f)` with `dom g = cod f` to
    /// the index of `g ∘ f`. The table must cover exactly those pairs.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        comp: &HashMap<(usize, usize), usize>,
        idents: Vec<usize>,
    ) -> Result<Self, CatError> {
        let mut seen_objects = HashMap::new();
        for (i, label) in objects.iter().enumerate() {
            if seen_objects.insert(label.clone(), i).is_some() {
                return Err(CatError::DuplicateObject(label.clone()));
            }
        }
        let mut seen_arrows = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.dom >= objects.len() || a.cod >= objects.len() {
                return Err(CatError::BadIndex);
            }
            if seen_arrows
                .insert((a.label.clone(), a.dom, a.cod), i)
                .is_some()
            {
                return Err(CatError::DuplicateArrow(format!(
                    "{}: {} -> {}",
                    a.label, objects[a.dom], objects[a.cod]
                )));
            }
        }
        if idents.len() != objects.len() || idents.iter().any(|&i| i >= arrows.len()) {
            return Err(CatError::BadIndex);
        }
        let n = arrows.len();
        let mut table = vec![vec![None; n]; n];
        for (&(g, f), &h) in comp {
            if g >= n || f >= n || h >= n {
                return Err(CatError::BadIndex);
            }
            if arrows[g].dom != arrows[f].cod {
                return Err(CatError::SpuriousComposite { g, f });
            }
            table[g][f] = Some(h);
        }
        for g in 0..n {
            for f in 0..n {
                if arrows[g].dom == arrows[f].cod && table[g][f].is_none() {
                    return Err(CatError::MissingComposite { g, f });
                }
            }
        }
        Ok(FinCat {
            objects,
            arrows,
            comp: table,
            idents,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn ident(&self, object: usize) -> usize {
        self.idents[object]
    }

    /// `g ∘ f` when the pair is composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g][f]
    }

    /// Arrow indices from `x` to `y`, in arrow order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| self.arrows[i].dom == x && self.arrows[i].cod == y)
            .collect()
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }
}

/// All law violations of the presented data, one line each. Empty means the
/// data is a category.
pub fn category_violations(c: &FinCat) -> Vec<String> {
    let mut out = Vec::new();
    for (x, &i) in c.idents.iter().enumerate() {
        let a = &c.arrows[i];
        if a.dom != x || a.cod != x {
            out.push(format!(
                "identity of {} is {}: {} -> {}, not an endo-arrow of {}",
                c.objects[x], a.label, c.objects[a.dom], c.objects[a.cod], c.objects[x]
            ));
        }
    }
    let n = c.arrows.len();
    for g in 0..n {
        for f in 0..n {
            let Some(h) = c.comp[g][f] else { continue };
            let (ag, af, ah) = (&c.arrows[g], &c.arrows[f], &c.arrows[h]);
            if ah.dom != af.dom || ah.cod != ag.cod {
                out.push(format!(
                    "composite {} of ({}, {}) has the wrong endpoints",
                    ah.label, ag.label, af.label
                ));
            }
        }
    }
    for (f, a) in c.arrows.iter().enumerate() {
        if c.idents.get(a.dom).map(|&i| c.comp[f][i]) != Some(Some(f)) {
            out.push(format!("{} ∘ id is not {0}", a.label));
        }
        if c.idents.get(a.cod).map(|&i| c.comp[i][f]) != Some(Some(f)) {
            out.push(format!("id ∘ {} is not {0}", a.label));
        }
    }
    for h in 0..n {
        for g in 0..n {
            let Some(hg) = c.comp[h][g] else { continue };
            for f in 0..n {
                let Some(gf) = c.comp[g][f] else { continue };
                if c.comp[h][gf] != c.comp[hg][f] {
                    out.push(format!(
                        "associativity fails on ({}, {}, {})",
                        c.arrows[h].label, c.arrows[g].label, c.arrows[f].label
                    ));
                }
            }
        }
    }
    out
}

pub fn check_category(c: &FinCat) -> bool {
    category_violations(c).is_empty()
}

/// A distinct textual token per arrow: the label when it is unique in the
/// category, otherwise the label qualified by its endpoints. Used whenever
/// arrows must become set elements or file tokens.
pub fn arrow_tokens(c: &FinCat) -> Vec<String> {
    let mut uses: HashMap<&str, usize> = HashMap::new();
    for a in &c.arrows {
        *uses.entry(a.label.as_str()).or_insert(0) += 1;
    }
    c.arrows
        .iter()
        .map(|a| {
            if uses[a.label.as_str()] == 1 {
                a.label.clone()
            } else {
                format!("{}@{}>{}", a.label, c.objects[a.dom], c.objects[a.cod])
            }
        })
        .collect()
}

/// Arrow indices of the idempotents (`e ∘ e = e` on an endo-arrow), in
/// arrow order.
pub fn idempotents(c: &FinCat) -> Vec<usize> {
    (0..c.arrows.len())
        .filter(|&e| {
            let a = &c.arrows[e];
            a.dom == a.cod && c.comp[e][e] == Some(e)
        })
        .collect()
}

/// A verified splitting of an idempotent: `retraction ∘ section` is the
/// identity of `mid` and `section ∘ retraction` is the idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub mid: usize,
    pub retraction: usize,
    pub section: usize,
}

/// The idempotent-splitting completion of a category, with the bookkeeping
/// that ties its objects and arrows back to the base. The canonical split
/// of every idempotent is recoverable from this structure via
/// [`KaroubiCat::split`]; it is never re-derived by search.
#[derive(Clone, Debug)]
pub struct KaroubiCat {
    pub cat: FinCat,
    pub base: FinCat,
    /// Completion object -> base idempotent arrow.
    pub object_idems: Vec<usize>,
    /// Completion arrow -> (base arrow f, dom idempotent, cod idempotent),
    /// satisfying `f = d ∘ f ∘ e` in the base.
    pub arrow_base: Vec<(usize, usize, usize)>,
}

/// Split the idempotents of `c`: objects become the idempotents of `c`, and
/// an arrow `e → d` is any base arrow absorbed by `d` on the left and `e`
/// on the right. The identity of the object `e` is `e` itself.
pub fn karoubi(c: &FinCat) -> KaroubiCat {
    let idems = idempotents(c);

    let mut label_uses: HashMap<&str, usize> = HashMap::new();
    for &e in &idems {
        *label_uses.entry(c.arrows[e].label.as_str()).or_insert(0) += 1;
    }
    let objects: Vec<String> = idems
        .iter()
        .map(|&e| {
            let a = &c.arrows[e];
            if label_uses[a.label.as_str()] == 1 {
                a.label.clone()
            } else {
                format!("{}@{}", a.label, c.objects[a.dom])
            }
        })
        .collect();

    let mut arrows = Vec::new();
    let mut arrow_base = Vec::new();
    let mut lookup: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (ei, &e) in idems.iter().enumerate() {
        for (di, &d) in idems.iter().enumerate() {
            for f in 0..c.n_arrows() {
                let absorbed = c.compose(f, e).and_then(|fe| c.compose(d, fe));
                if absorbed == Some(f) {
                    lookup.insert((f, ei, di), arrows.len());
                    arrows.push(Arrow {
                        label: c.arrows[f].label.clone(),
                        dom: ei,
                        cod: di,
                    });
                    arrow_base.push((f, ei, di));
                }
            }
        }
    }

    let mut comp = HashMap::new();
    for (gj, &(g, ge, gd)) in arrow_base.iter().enumerate() {
        for (fj, &(f, fe, fd)) in arrow_base.iter().enumerate() {
            if ge != fd {
                continue;
            }
            let h = c
                .compose(g, f)
                .expect("base arrows with a shared middle object compose");
            let hj = lookup[&(h, fe, gd)];
            comp.insert((gj, fj), hj);
        }
    }

    let idents: Vec<usize> = idems
        .iter()
        .enumerate()
        .map(|(ei, &e)| lookup[&(e, ei, ei)])
        .collect();

    let cat = FinCat::new(objects, arrows, &comp, idents)
        .expect("completion data is structurally well formed");
    KaroubiCat {
        cat,
        base: c.clone(),
        object_idems: idems,
        arrow_base,
    }
}

impl KaroubiCat {
    /// The completion arrow carried by base arrow `f` from idempotent-object
    /// `e` to idempotent-object `d`, if `f` is absorbed by that pair.
    pub fn arrow_index(&self, f: usize, e_obj: usize, d_obj: usize) -> Option<usize> {
        self.arrow_base
            .iter()
            .position(|&(bf, be, bd)| bf == f && be == e_obj && bd == d_obj)
    }

    /// The canonical split of an idempotent arrow of the completion: the mid
    /// object is the underlying base idempotent and both halves are carried
    /// by that same base arrow.
    pub fn split(&self, arrow: usize) -> Result<SplitWitness, CatError> {
        let label = || self.cat.arrows[arrow].label.clone();
        let &(f, e_obj, d_obj) = self
            .arrow_base
            .get(arrow)
            .ok_or_else(|| CatError::NotInCompletion(label()))?;
        if e_obj != d_obj || self.cat.compose(arrow, arrow) != Some(arrow) {
            return Err(CatError::NotIdempotent(label()));
        }
        let mid = self
            .object_idems
            .iter()
            .position(|&i| i == f)
            .ok_or_else(|| CatError::NotInCompletion(label()))?;
        let retraction = self
            .arrow_index(f, e_obj, mid)
            .ok_or_else(|| CatError::NotInCompletion(label()))?;
        let section = self
            .arrow_index(f, mid, e_obj)
            .ok_or_else(|| CatError::NotInCompletion(label()))?;
        Ok(SplitWitness {
            mid,
            retraction,
            section,
        })
    }
}

/// Check that the witness really splits `e`, that the section is an
/// equalizer of `(e, id)`, and that the retraction is a coequalizer of
/// `(e, id)`. Universal properties are verified by enumerating every arrow
/// of the category.
pub fn verify_split_equalizer(c: &FinCat, w: &SplitWitness, e: usize) -> bool {
    let ea = &c.arrows[e];
    if ea.dom != ea.cod || c.compose(e, e) != Some(e) {
        return false;
    }
    let x = ea.dom;
    let r = &c.arrows[w.retraction];
    let s = &c.arrows[w.section];
    if r.dom != x || r.cod != w.mid || s.dom != w.mid || s.cod != x {
        return false;
    }
    if c.compose(w.retraction, w.section) != Some(c.ident(w.mid))
        || c.compose(w.section, w.retraction) != Some(e)
    {
        return false;
    }

    // Section as equalizer: every t with e ∘ t = t factors uniquely
    // through s.
    for t in 0..c.n_arrows() {
        if c.arrows[t].cod != x || c.compose(e, t) != Some(t) {
            continue;
        }
        let factorizations = (0..c.n_arrows())
            .filter(|&u| {
                c.arrows[u].dom == c.arrows[t].dom
                    && c.arrows[u].cod == w.mid
                    && c.compose(w.section, u) == Some(t)
            })
            .count();
        if factorizations != 1 {
            return false;
        }
    }

    // Retraction as coequalizer: every t with t ∘ e = t factors uniquely
    // through r.
    for t in 0..c.n_arrows() {
        if c.arrows[t].dom != x || c.compose(t, e) != Some(t) {
            continue;
        }
        let factorizations = (0..c.n_arrows())
            .filter(|&u| {
                c.arrows[u].cod == c.arrows[t].cod
                    && c.arrows[u].dom == w.mid
                    && c.compose(u, w.retraction) == Some(t)
            })
            .count();
        if factorizations != 1 {
            return false;
        }
    }
    true
}

/// Every witness splitting `e`, found by exhaustive search over mid objects
/// and arrow pairs. Used to check uniqueness up to isomorphism.
pub fn find_splits(c: &FinCat, e: usize) -> Vec<SplitWitness> {
    let ea = &c.arrows[e];
    if ea.dom != ea.cod {
        return Vec::new();
    }
    let x = ea.dom;
    let mut out = Vec::new();
    for mid in 0..c.n_objects() {
        for r in c.hom(x, mid) {
            for s in c.hom(mid, x) {
                if c.compose(r, s) == Some(c.ident(mid)) && c.compose(s, r) == Some(e) {
                    out.push(SplitWitness {
                        mid,
                        retraction: r,
                        section: s,
                    });
                }
            }
        }
    }
    out
}

/// Is there an isomorphism between the mid objects of two witnesses
/// commuting with both halves?
pub fn splits_isomorphic(c: &FinCat, a: &SplitWitness, b: &SplitWitness) -> bool {
    for h in c.hom(a.mid, b.mid) {
        let back = c.hom(b.mid, a.mid).into_iter().find(|&k| {
            c.compose(k, h) == Some(c.ident(a.mid)) && c.compose(h, k) == Some(c.ident(b.mid))
        });
        if back.is_none() {
            continue;
        }
        if c.compose(h, a.retraction) == Some(b.retraction)
            && c.compose(a.section, back.unwrap()) == Some(b.section)
        {
            return true;
        }
    }
    false
}
