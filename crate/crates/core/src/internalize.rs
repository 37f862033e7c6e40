//! Turning an enriched category into an internal one by splitting all of
//! its idempotents at once.
//!
//! Objects are pairs of a source object `a` and an idempotent `p` of its
//! endo-hom, encoded `Tag(a, Sub(p))`. Arrows from `(a, p)` to `(b, q)` are
//! triples `(q, m, p)` with `q ∘ m ∘ p = m`, held per `(a, b)` block as the
//! fixed points of the normalization self-map of `𝔐_b × (M_ab × 𝔐_a)` and
//! tagged `a·n + b` in the arrow object, so a full arrow element reads
//! `Tag(a·n + b, Sub(Pair(Sub(q), Pair(m, Sub(p)))))`.
//!
//! The canonical split sends an idempotent `(p, m, p)` to the object
//! carried by its middle: retraction `(m, m, p)` and section `(p, m, m)`.
//! The carrier of the middle is never assembled by syntax: the map `ω`
//! that extracts it is obtained by factoring through the idempotent
//! carriers, so idempotency of middles is checked, not assumed.

use thiserror::Error;

use crate::enriched::{enriched_violations, EnrichedCat, EnrichedFunctor};
use crate::finset::{
    compose, coproduct, coproduct_map, cotuple, equalizer, equalizer3, mediate_equalizer, product,
    pullback, Element, FinMap, FinObj,
};
use crate::internal::{idem_object, InternalCat, InternalFunctor, SplitData};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InterError {
    #[error("the source enriched category is unlawful: {0}")]
    SourceUnlawful(String),
    #[error("construction failed on malformed data: {0}")]
    Shape(String),
    #[error("an idempotent image fails idempotency: {0}")]
    NotFactorable(String),
    #[error("the check exceeded the budget of {0} elements")]
    SizeBudgetExceeded(u64),
}

/// The idempotents of the endo-hom of `a`, as the subset of elements fixed
/// by squaring, with their inclusion.
pub fn idem_carrier(m: &EnrichedCat, a: usize) -> (FinObj, FinMap) {
    let haa = m.hom(a, a);
    let square = FinMap::from_fn(haa.clone(), haa.clone(), |u| m.compose_elems(a, a, a, u, u))
        .expect("squares stay in the endo-hom");
    equalizer(&square, &FinMap::identity(haa)).expect("squaring is parallel to the identity")
}

/// The object of objects: the coproduct of the idempotent carriers, with
/// its injections.
pub fn inter_objects(m: &EnrichedCat) -> (FinObj, Vec<FinMap>) {
    let carriers: Vec<FinObj> = (0..m.n_objects()).map(|a| idem_carrier(m, a).0).collect();
    coproduct(&carriers)
}

/// The normalization of middles on the triple carrier of the `(a, b)`
/// block: `(q, m, p) ↦ q ∘ (m ∘ p)` with the outer components included
/// into their homs first.
pub fn alpha(m: &EnrichedCat, a: usize, b: usize) -> FinMap {
    let (mb, _) = idem_carrier(m, b);
    let (ma, _) = idem_carrier(m, a);
    let (inner, _, _) = product(m.hom(a, b), &ma);
    let (t, _, _) = product(&mb, &inner);
    alpha_on(m, a, b, &t)
}

fn alpha_on(m: &EnrichedCat, a: usize, b: usize, t: &FinObj) -> FinMap {
    FinMap::from_fn(t.clone(), m.hom(a, b).clone(), |e| {
        let (sq, rest) = e.expect_pair();
        let (mid, sp) = rest.expect_pair();
        let q = sq.expect_sub();
        let p = sp.expect_sub();
        m.compose_elems(a, b, b, q, &m.compose_elems(a, a, b, mid, p))
    })
    .expect("normalized middles stay in their hom")
}

fn make_triple(q: Element, mid: Element, p: Element) -> Element {
    Element::pair(q, Element::pair(mid, p))
}

/// One `(a, b)` block of the arrow object: the triple carrier, the middle
/// normalization, and the fixed points with their inclusion.
#[derive(Clone, Debug)]
pub struct ArrowBlock {
    pub a: usize,
    pub b: usize,
    /// Summand index in the arrow object: `a · n + b`.
    pub tag: usize,
    /// `𝔐_b × (M_ab × 𝔐_a)`.
    pub carrier: FinObj,
    /// The middle normalization `carrier → M_ab`.
    pub alpha_mid: FinMap,
    /// Fixed points of `(q, m, p) ↦ (q, q∘m∘p, p)`, `Sub`-wrapped.
    pub obj: FinObj,
    pub incl: FinMap,
}

/// The full construction: carriers, blocks, the assembled internal
/// category, its canonical split, and the hom embeddings `ν`.
#[derive(Clone, Debug)]
pub struct InterBuild {
    source: EnrichedCat,
    carriers: Vec<(FinObj, FinMap)>,
    object_obj: FinObj,
    object_injections: Vec<FinMap>,
    blocks: Vec<Vec<ArrowBlock>>,
    arrow_injections: Vec<Vec<FinMap>>,
    cat: InternalCat,
    split: SplitData,
    nus: Vec<Vec<FinMap>>,
}

impl InterBuild {
    pub fn build(m: &EnrichedCat) -> Result<Self, InterError> {
        let violations = enriched_violations(m);
        if let Some(first) = violations.first() {
            return Err(InterError::SourceUnlawful(first.clone()));
        }
        let n = m.n_objects();

        let carriers: Vec<(FinObj, FinMap)> = (0..n).map(|a| idem_carrier(m, a)).collect();
        let carrier_objs: Vec<FinObj> = carriers.iter().map(|(o, _)| o.clone()).collect();
        let (object_obj, object_injections) = coproduct(&carrier_objs);

        let mut blocks: Vec<Vec<ArrowBlock>> = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let (inner, _, _) = product(m.hom(a, b), &carriers[a].0);
                let (t, _, _) = product(&carriers[b].0, &inner);
                let alpha_mid = alpha_on(m, a, b, &t);
                let bar_alpha = FinMap::from_fn(t.clone(), t.clone(), |e| {
                    let (sq, rest) = e.expect_pair();
                    let (_, sp) = rest.expect_pair();
                    make_triple(sq.clone(), alpha_mid.apply(e).clone(), sp.clone())
                })
                .expect("normalization keeps the outer components");
                let (obj, incl) = equalizer(&bar_alpha, &FinMap::identity(&t))
                    .expect("normalization is parallel to the identity");
                row.push(ArrowBlock {
                    a,
                    b,
                    tag: a * n + b,
                    carrier: t,
                    alpha_mid,
                    obj,
                    incl,
                });
            }
            blocks.push(row);
        }

        let block_objs: Vec<FinObj> = blocks
            .iter()
            .flat_map(|row| row.iter().map(|bl| bl.obj.clone()))
            .collect();
        let (a1, arrow_injections_flat) = coproduct(&block_objs);
        let arrow_injections: Vec<Vec<FinMap>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| arrow_injections_flat[a * n + b].clone())
                    .collect()
            })
            .collect();

        let third = |su: &Element| -> Element {
            let (_, rest) = su.expect_sub().expect_pair();
            rest.expect_pair().1.clone()
        };
        let first = |su: &Element| -> Element { su.expect_sub().expect_pair().0.clone() };
        let mut d0_legs = Vec::with_capacity(n * n);
        let mut d1_legs = Vec::with_capacity(n * n);
        for row in &blocks {
            for bl in row {
                let p_leg = FinMap::from_fn(bl.obj.clone(), carriers[bl.a].0.clone(), &third)
                    .expect("sources are idempotent carriers");
                let q_leg = FinMap::from_fn(bl.obj.clone(), carriers[bl.b].0.clone(), &first)
                    .expect("targets are idempotent carriers");
                d0_legs
                    .push(compose(&object_injections[bl.a], &p_leg).expect("source leg composes"));
                d1_legs
                    .push(compose(&object_injections[bl.b], &q_leg).expect("target leg composes"));
            }
        }
        let dom = cotuple(&d0_legs).expect("source legs share the object of objects");
        let cod = cotuple(&d1_legs).expect("target legs share the object of objects");

        let mut iota_legs = Vec::with_capacity(n);
        for (a, (ma, eps)) in carriers.iter().enumerate() {
            let raw = FinMap::from_fn(ma.clone(), blocks[a][a].carrier.clone(), |p| {
                make_triple(p.clone(), eps.apply(p).clone(), p.clone())
            })
            .expect("diagonal triples live in the carrier");
            let landed = mediate_equalizer(&blocks[a][a].incl, &raw).map_err(|e| {
                InterError::Shape(format!("an identity triple is not normalized: {e}"))
            })?;
            iota_legs
                .push(compose(&arrow_injections[a][a], &landed).expect("identity leg composes"));
        }
        let ident = cotuple(&iota_legs).expect("identity legs share the arrow object");

        let (a2, _, _) = pullback(&dom, &cod).expect("boundaries share the object of objects");
        let comp = FinMap::from_fn(a2, a1.clone(), |pr| {
            let (outer, inner) = pr.expect_pair();
            let (tag2, s_out) = outer.expect_tag();
            let (tag1, s_in) = inner.expect_tag();
            let a = tag1 / n;
            let b = tag1 % n;
            let c = tag2 % n;
            let (q_out, rest_out) = s_out.expect_sub().expect_pair();
            let m_out = &rest_out.expect_pair().0;
            let (_, rest_in) = s_in.expect_sub().expect_pair();
            let (m_in, p_in) = rest_in.expect_pair();
            let mid = m.compose_elems(a, b, c, m_out, m_in);
            Element::tag(
                a * n + c,
                Element::sub(make_triple(q_out.clone(), mid, p_in.clone())),
            )
        })
        .map_err(|e| InterError::Shape(format!("a composite is not normalized: {e}")))?;

        let cat = InternalCat::new(object_obj.clone(), a1.clone(), dom, cod, ident, comp)
            .expect("the assembled structure maps have the right endpoints");

        let (idem_obj, _) = idem_object(&cat);
        let diag_homs: Vec<FinObj> = (0..n).map(|a| m.hom(a, a).clone()).collect();
        let (diag_cop, _) = coproduct(&diag_homs);
        let mid_raw = FinMap::from_fn(idem_obj.clone(), diag_cop, |su| {
            let (tag, inner) = su.expect_sub().expect_tag();
            let (_, rest) = inner.expect_sub().expect_pair();
            Element::tag(tag / n, rest.expect_pair().0.clone())
        })
        .expect("middles live in the diagonal homs");
        let eps_cop = coproduct_map(
            &carriers
                .iter()
                .map(|(_, eps)| eps.clone())
                .collect::<Vec<_>>(),
        );
        let omega = mediate_equalizer(&eps_cop, &mid_raw).map_err(|e| {
            InterError::Shape(format!(
                "an idempotent arrow has a non-idempotent middle: {e}"
            ))
        })?;

        let half = |keep_p: bool| -> Result<FinMap, InterError> {
            FinMap::from_fn(idem_obj.clone(), a1.clone(), |su| {
                let (tag, inner) = su.expect_sub().expect_tag();
                let (q, rest) = inner.expect_sub().expect_pair();
                let (mid, p) = rest.expect_pair();
                let (_, mid_carrier) = omega.apply(su).expect_tag();
                let triple = if keep_p {
                    make_triple(mid_carrier.clone(), mid.clone(), p.clone())
                } else {
                    make_triple(q.clone(), mid.clone(), mid_carrier.clone())
                };
                Element::tag(tag, Element::sub(triple))
            })
            .map_err(|e| InterError::Shape(format!("a split half is not an arrow: {e}")))
        };
        let retraction = half(true)?;
        let section = half(false)?;
        let split = SplitData::new(&cat, retraction, section)
            .map_err(|e| InterError::Shape(e.to_string()))?;

        let mut nus: Vec<Vec<FinMap>> = Vec::with_capacity(n);
        for a in 0..n {
            let mut row = Vec::with_capacity(n);
            for b in 0..n {
                let ia = Element::sub(m.ident(a).clone());
                let ib = Element::sub(m.ident(b).clone());
                let raw =
                    FinMap::from_fn(m.hom(a, b).clone(), blocks[a][b].carrier.clone(), |mid| {
                        make_triple(ib.clone(), mid.clone(), ia.clone())
                    })
                    .expect("identity-framed triples live in the carrier");
                let landed = mediate_equalizer(&blocks[a][b].incl, &raw).map_err(|e| {
                    InterError::Shape(format!("an identity-framed triple is not normalized: {e}"))
                })?;
                row.push(
                    compose(&arrow_injections[a][b], &landed).expect("hom embedding composes"),
                );
            }
            nus.push(row);
        }

        Ok(InterBuild {
            source: m.clone(),
            carriers,
            object_obj,
            object_injections,
            blocks,
            arrow_injections,
            cat,
            split,
            nus,
        })
    }

    pub fn source(&self) -> &EnrichedCat {
        &self.source
    }

    pub fn cat(&self) -> &InternalCat {
        &self.cat
    }

    pub fn split(&self) -> &SplitData {
        &self.split
    }

    pub fn n_source_objects(&self) -> usize {
        self.source.n_objects()
    }

    /// The idempotent carrier of source object `a`.
    pub fn carrier(&self, a: usize) -> &FinObj {
        &self.carriers[a].0
    }

    /// The inclusion of the carrier of `a` into the endo-hom of `a`.
    pub fn eps(&self, a: usize) -> &FinMap {
        &self.carriers[a].1
    }

    pub fn object_obj(&self) -> &FinObj {
        &self.object_obj
    }

    pub fn object_injection(&self, a: usize) -> &FinMap {
        &self.object_injections[a]
    }

    pub fn block(&self, a: usize, b: usize) -> &ArrowBlock {
        &self.blocks[a][b]
    }

    pub fn arrow_injection(&self, a: usize, b: usize) -> &FinMap {
        &self.arrow_injections[a][b]
    }

    /// The embedding of the hom `M_ab` as the arrows framed by identity
    /// idempotents: `m ↦ (i_b, m, i_a)` between the total objects.
    pub fn nu(&self, a: usize, b: usize) -> &FinMap {
        &self.nus[a][b]
    }

    /// The object carried by the identity idempotent of source object `a`.
    pub fn identity_object_elem(&self, a: usize) -> Element {
        self.object_injections[a]
            .apply(&Element::sub(self.source.ident(a).clone()))
            .clone()
    }

    /// The embedding of the carrier of `a` into the idempotent arrows as
    /// identity-framed idempotents `p ↦ (i_a, p, i_a)`, obtained by
    /// factoring `ν ∘ ε` through the idempotent inclusion.
    pub fn bracket_iota_star(&self, a: usize) -> FinMap {
        let path = compose(&self.nus[a][a], &self.carriers[a].1)
            .expect("hom embedding follows the carrier inclusion");
        mediate_equalizer(self.split.idem_incl(), &path)
            .expect("identity-framed idempotents are idempotent arrows")
    }

    /// The a-component of the identity-idempotent map: the carrier element
    /// `p` goes to the identity arrow of the object `(a, p)`, viewed among
    /// the idempotents.
    pub fn iota_star_component(&self, a: usize) -> FinMap {
        compose(self.split.iota_star(), &self.object_injections[a])
            .expect("object injection reaches the identity idempotents")
    }

    /// Split an arrow element into its block and components:
    /// `(a, b, q, m, p)` with `q` and `p` still carrier-wrapped.
    pub fn decompose<'e>(
        &self,
        u: &'e Element,
    ) -> (usize, usize, &'e Element, &'e Element, &'e Element) {
        let n = self.source.n_objects();
        let (tag, inner) = u.expect_tag();
        let (q, rest) = inner.expect_sub().expect_pair();
        let (mid, p) = rest.expect_pair();
        (tag / n, tag % n, q, mid, p)
    }
}

/// Builds the one-shot definition of the object of objects — the joint
/// equalizer of outer projection, inner projection, and composition over
/// all composable hom pairs — and checks it is isomorphic to the coproduct
/// of idempotent carriers, compatibly with the inclusions. Also checks
/// that no equalizer element sits over a mixed block.
pub fn verify_triple_equalizer_iso(m: &EnrichedCat, budget: u64) -> Result<bool, InterError> {
    let n = m.n_objects();
    let mut pair_family: Vec<FinObj> = Vec::new();
    let mut pair_tags: Vec<(usize, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                pair_family.push(product(m.hom(b, c), m.hom(a, b)).0);
                pair_tags.push((a, b, c));
            }
        }
    }
    let total: u64 = pair_family.iter().map(|o| o.len() as u64).sum();
    if total > budget {
        return Err(InterError::SizeBudgetExceeded(budget));
    }
    let hom_family: Vec<FinObj> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| m.hom(a, b).clone())
        .collect();
    let (pairs_cop, _) = coproduct(&pair_family);
    let (homs_cop, _) = coproduct(&hom_family);
    let hom_tag = |a: usize, b: usize| a * n + b;

    let project = |pick_outer: bool| {
        FinMap::from_fn(pairs_cop.clone(), homs_cop.clone(), |e| {
            let (t, pr) = e.expect_tag();
            let (a, b, c) = pair_tags[t];
            let (g, f) = pr.expect_pair();
            if pick_outer {
                Element::tag(hom_tag(b, c), g.clone())
            } else {
                Element::tag(hom_tag(a, b), f.clone())
            }
        })
        .expect("projections land in the hom coproduct")
    };
    let p_outer = project(true);
    let p_inner = project(false);
    let composition = FinMap::from_fn(pairs_cop.clone(), homs_cop.clone(), |e| {
        let (t, pr) = e.expect_tag();
        let (a, b, c) = pair_tags[t];
        let (g, f) = pr.expect_pair();
        Element::tag(hom_tag(a, c), m.compose_elems(a, b, c, g, f))
    })
    .expect("composites land in the hom coproduct");

    let (eq, eq_incl) =
        equalizer3(&p_outer, &p_inner, &composition).expect("the three maps are parallel");

    // Every element must sit over a block with all three indices equal.
    for e in eq.elems() {
        let (t, _) = e.expect_sub().expect_tag();
        let (a, b, c) = pair_tags[t];
        if a != b || b != c {
            return Ok(false);
        }
    }

    let (reduced, _) = inter_objects(m);
    if eq.len() != reduced.len() {
        return Ok(false);
    }
    let forward = FinMap::from_fn(eq.clone(), reduced.clone(), |e| {
        let (t, pr) = e.expect_sub().expect_tag();
        let (a, _, _) = pair_tags[t];
        Element::tag(a, Element::sub(pr.expect_pair().1.clone()))
    });
    let forward = match forward {
        Ok(f) => f,
        Err(_) => return Ok(false),
    };
    let backward = FinMap::from_fn(reduced.clone(), eq.clone(), |e| {
        let (a, sm) = e.expect_tag();
        let mm = sm.expect_sub().clone();
        let t = (a * n + a) * n + a;
        Element::sub(Element::tag(t, Element::pair(mm.clone(), mm)))
    });
    let backward = match backward {
        Ok(b) => b,
        Err(_) => return Ok(false),
    };
    let round1 = compose(&backward, &forward).expect("round trip composes");
    let round2 = compose(&forward, &backward).expect("round trip composes");
    if round1 != FinMap::identity(&eq) || round2 != FinMap::identity(&reduced) {
        return Ok(false);
    }

    // Compatibility with the inclusions: following the isomorphism and the
    // carrier inclusion picks out the same hom element as the one-shot
    // inclusion followed by the inner projection.
    let carrier_incls: Vec<FinMap> = (0..n).map(|a| idem_carrier(m, a).1).collect();
    let diag = FinMap::from_fn(reduced, homs_cop, |e| {
        let (a, sm) = e.expect_tag();
        Element::tag(hom_tag(a, a), carrier_incls[a].apply(sm).clone())
    })
    .expect("carrier elements include into the hom coproduct");
    let via_iso = compose(&diag, &forward).expect("iso path composes");
    let via_incl = compose(&p_inner, &eq_incl).expect("inclusion path composes");
    Ok(via_iso == via_incl)
}

/// The action on functors: carriers map to carriers and triples map
/// componentwise, each landing re-checked by factoring through the target
/// subobjects.
pub fn inter_of_functor(
    f: &EnrichedFunctor,
    mb: &InterBuild,
    nb: &InterBuild,
) -> Result<InternalFunctor, InterError> {
    let k = mb.n_source_objects();
    let mut idem_maps: Vec<FinMap> = Vec::with_capacity(k);
    for a in 0..k {
        let on = compose(f.hom_map(a, a), mb.eps(a)).map_err(|e| {
            InterError::Shape(format!("the endo hom map does not follow the carrier: {e}"))
        })?;
        let landed = mediate_equalizer(nb.eps(f.obj(a)), &on).map_err(|_| {
            InterError::NotFactorable(format!("an idempotent of object {a} maps off the carrier"))
        })?;
        idem_maps.push(landed);
    }

    let f0_legs: Vec<FinMap> = (0..k)
        .map(|a| {
            compose(nb.object_injection(f.obj(a)), &idem_maps[a])
                .expect("carrier map reaches the target objects")
        })
        .collect();
    let f0 = cotuple(&f0_legs).expect("object legs share the target objects");

    let mut f1_legs = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            let target = nb.block(f.obj(a), f.obj(b));
            let raw = FinMap::from_fn(mb.block(a, b).obj.clone(), target.carrier.clone(), |su| {
                let (q, rest) = su.expect_sub().expect_pair();
                let (mid, p) = rest.expect_pair();
                make_triple(
                    idem_maps[b].apply(q).clone(),
                    f.hom_map(a, b).apply(mid).clone(),
                    idem_maps[a].apply(p).clone(),
                )
            })
            .expect("image triples live in the target carrier");
            let landed = mediate_equalizer(&target.incl, &raw).map_err(|_| {
                InterError::NotFactorable(format!(
                    "an arrow image of block ({a}, {b}) is not normalized"
                ))
            })?;
            f1_legs.push(
                compose(nb.arrow_injection(f.obj(a), f.obj(b)), &landed)
                    .expect("arrow legs reach the target arrows"),
            );
        }
    }
    let f1 = cotuple(&f1_legs).expect("arrow legs share the target arrows");
    Ok(InternalFunctor { f0, f1 })
}

/// Both factorization equations around an arrow's middle, elementwise over
/// all arrows `(q, m, p)`: framing the middle with identities and the
/// section of the source idempotent recovers `(i_b, m, p)`, and following
/// with the retraction of the target idempotent recovers the arrow:
/// `ν(m) ∘ S((i_a, p, i_a)) = (i_b, m, p)` and
/// `R((i_b, q, i_b)) ∘ (i_b, m, p) = (q, m, p)`.
pub fn arrow_factorization_violations(mb: &InterBuild) -> Vec<String> {
    let mut out = Vec::new();
    let cat = mb.cat();
    let n = mb.n_source_objects();
    let brackets: Vec<FinMap> = (0..n).map(|a| mb.bracket_iota_star(a)).collect();
    for u in cat.a1().elems() {
        let (a, b, q, mid, p) = mb.decompose(u);
        let framed = Element::tag(
            a * n + b,
            Element::sub(make_triple(
                Element::sub(mb.source.ident(b).clone()),
                mid.clone(),
                p.clone(),
            )),
        );
        if !cat.a1().contains(&framed) {
            out.push(format!("identity-framed form of {u} is not an arrow"));
            continue;
        }
        let nu_mid = mb.nus[a][b].apply(mid);
        let s_p = mb.split.section().apply(brackets[a].apply(p));
        if cat.c_apply(nu_mid, s_p) != framed {
            out.push(format!(
                "embedding then sectioning {u} misses its framed form"
            ));
        }
        let r_q = mb.split.retraction().apply(brackets[b].apply(q));
        if &cat.c_apply(r_q, &framed) != u {
            out.push(format!("retracting the framed form of {u} misses it"));
        }
    }
    out
}

/// The identity-framed embedding of a carrier agrees with embedding its
/// underlying hom element: `ν_{aa}(ε_a(p)) = (i_a, p, i_a)` elementwise.
pub fn nu_embedding_violations(mb: &InterBuild) -> Vec<String> {
    let mut out = Vec::new();
    let n = mb.n_source_objects();
    for a in 0..n {
        let ia = Element::sub(mb.source.ident(a).clone());
        for p in mb.carrier(a).elems() {
            let via_nu = mb.nus[a][a].apply(mb.eps(a).apply(p));
            let literal = Element::tag(
                a * n + a,
                Element::sub(make_triple(
                    ia.clone(),
                    mb.eps(a).apply(p).clone(),
                    ia.clone(),
                )),
            );
            if via_nu != &literal {
                out.push(format!("embedding of carrier element {p} is {via_nu}"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::tests::{idem_monoid, interval, trivial};
    use crate::enriched::{
        check_enriched_functor, enumerate_enriched_functors, identity_enriched_functor,
        plain_of_enriched,
    };
    use crate::internal::{
        canonical_violations, check_internal, check_internal_functor, check_split_preserving,
        compose_internal_functors, endo_object, identity_internal_functor, split_violations,
        CanonMode,
    };
    use crate::plaincat::karoubi;

    fn triple_elem(n: usize, a: usize, b: usize, q: &str, m: &str, p: &str) -> Element {
        Element::tag(
            a * n + b,
            Element::sub(make_triple(
                Element::sub(Element::atom(q)),
                Element::atom(m),
                Element::sub(Element::atom(p)),
            )),
        )
    }

    #[test]
    fn idempotent_monoid_arrows_are_exactly_the_normalized_triples() {
        let mb = InterBuild::build(&idem_monoid()).unwrap();
        let expect: Vec<Element> = [
            ("1", "1", "1"),
            ("1", "e", "1"),
            ("1", "e", "e"),
            ("e", "e", "1"),
            ("e", "e", "e"),
        ]
        .iter()
        .map(|(q, m, p)| triple_elem(1, 0, 0, q, m, p))
        .collect();
        assert_eq!(mb.cat().a1().elems(), expect.as_slice());
        assert!(check_internal(mb.cat()));
        assert_eq!(mb.object_obj().len(), 2);
    }

    #[test]
    fn object_counts() {
        assert_eq!(inter_objects(&trivial()).0.len(), 1);
        assert_eq!(inter_objects(&idem_monoid()).0.len(), 2);
        assert_eq!(inter_objects(&interval()).0.len(), 2);
    }

    #[test]
    fn builds_are_lawful_split_and_canonical() {
        for m in [trivial(), idem_monoid(), interval()] {
            let mb = InterBuild::build(&m).unwrap();
            assert!(check_internal(mb.cat()));
            assert_eq!(split_violations(mb.cat(), mb.split()), Vec::<String>::new());
            assert_eq!(
                canonical_violations(mb.cat(), mb.split(), CanonMode::SandwichGivesG),
                Vec::<String>::new()
            );
        }
    }

    #[test]
    fn split_of_the_nonidentity_idempotent_is_frozen() {
        let mb = InterBuild::build(&idem_monoid()).unwrap();
        let cat = mb.cat();
        let u = triple_elem(1, 0, 0, "1", "e", "1");
        let s = mb.split().section_of(&u).clone();
        let r = mb.split().retraction_of(&u).clone();
        assert_eq!(s, triple_elem(1, 0, 0, "1", "e", "e"));
        assert_eq!(r, triple_elem(1, 0, 0, "e", "e", "1"));
        assert_eq!(cat.c_apply(&s, &r), u);
        let e_obj = Element::tag(0, Element::sub(Element::atom("e")));
        assert_eq!(cat.c_apply(&r, &s), *cat.ident_of(&e_obj));
        assert_eq!(cat.c_apply(&r, &s), triple_elem(1, 0, 0, "e", "e", "e"));

        // Identity idempotents split through themselves.
        let one_obj = Element::tag(0, Element::sub(Element::atom("1")));
        let i = cat.ident_of(&one_obj).clone();
        assert_eq!(mb.split().retraction_of(&i), &i);
        assert_eq!(mb.split().section_of(&i), &i);
    }

    #[test]
    fn one_object_case_matches_the_splitting_completion() {
        let m = idem_monoid();
        let mb = InterBuild::build(&m).unwrap();
        let k = karoubi(&plain_of_enriched(&m));
        assert_eq!(mb.cat().a1().len(), k.cat.n_arrows());
        assert_eq!(mb.object_obj().len(), k.cat.n_objects());
        let (idems, _) = idem_object(mb.cat());
        let plain_idems = crate::plaincat::idempotents(&k.cat);
        assert_eq!(idems.len(), plain_idems.len());
    }

    #[test]
    fn endoarrows_are_the_diagonal_triples_with_matching_ends() {
        let mb = InterBuild::build(&idem_monoid()).unwrap();
        let (endo, _) = endo_object(mb.cat());
        assert_eq!(endo.len(), 3);
        let mut diagonal_matching = 0;
        for u in mb.cat().a1().elems() {
            let (a, b, q, _, p) = mb.decompose(u);
            let is_endo = endo.contains(&Element::sub(u.clone()));
            let diag = a == b && q == p;
            assert_eq!(is_endo, diag, "endo membership of {u}");
            if diag {
                diagonal_matching += 1;
            }
        }
        assert_eq!(diagonal_matching, endo.len());
    }

    #[test]
    fn middles_absorb_their_frame() {
        for m in [idem_monoid(), interval()] {
            let mb = InterBuild::build(&m).unwrap();
            for u in mb.cat().a1().elems() {
                let (a, b, q, mid, p) = mb.decompose(u);
                let eq = mb.eps(a).apply(p);
                let eqb = mb.eps(b).apply(q);
                assert_eq!(&m.compose_elems(a, a, b, mid, eq), mid);
                assert_eq!(&m.compose_elems(a, b, b, eqb, mid), mid);
            }
        }
    }

    #[test]
    fn arrows_factor_around_their_middles() {
        for m in [trivial(), idem_monoid(), interval()] {
            let mb = InterBuild::build(&m).unwrap();
            assert_eq!(arrow_factorization_violations(&mb), Vec::<String>::new());
            assert_eq!(nu_embedding_violations(&mb), Vec::<String>::new());
        }
    }

    #[test]
    fn triple_equalizer_matches_the_reduced_objects() {
        assert!(verify_triple_equalizer_iso(&trivial(), 1_000_000).unwrap());
        assert!(verify_triple_equalizer_iso(&idem_monoid(), 1_000_000).unwrap());
        assert!(verify_triple_equalizer_iso(&interval(), 1_000_000).unwrap());
        assert_eq!(
            verify_triple_equalizer_iso(&idem_monoid(), 3).unwrap_err(),
            InterError::SizeBudgetExceeded(3)
        );
    }

    #[test]
    fn functor_action_preserves_identity_and_composition() {
        let m = idem_monoid();
        let mb = InterBuild::build(&m).unwrap();
        let id = identity_enriched_functor(&m);
        let iid = inter_of_functor(&id, &mb, &mb).unwrap();
        assert_eq!(iid, identity_internal_functor(mb.cat()));

        let endos = enumerate_enriched_functors(&m, &m, 10_000).unwrap();
        assert_eq!(endos.len(), 2);
        for f in &endos {
            let fi = inter_of_functor(f, &mb, &mb).unwrap();
            assert!(check_internal_functor(&fi, mb.cat(), mb.cat()));
            assert!(check_split_preserving(&fi, mb.split(), mb.split()));
            for g in &endos {
                let gi = inter_of_functor(g, &mb, &mb).unwrap();
                let gf = crate::enriched::compose_enriched_functors(g, f);
                let gfi = inter_of_functor(&gf, &mb, &mb).unwrap();
                assert_eq!(gfi, compose_internal_functors(&gi, &fi));
            }
        }
    }

    #[test]
    fn collapse_functor_lands_every_arrow_on_the_identity() {
        let m = idem_monoid();
        let t = trivial();
        let mb = InterBuild::build(&m).unwrap();
        let tb = InterBuild::build(&t).unwrap();
        let collapse = enumerate_enriched_functors(&m, &t, 10_000)
            .unwrap()
            .remove(0);
        assert!(check_enriched_functor(&collapse, &m, &t));
        let ci = inter_of_functor(&collapse, &mb, &tb).unwrap();
        assert!(check_internal_functor(&ci, mb.cat(), tb.cat()));
        assert_eq!(tb.cat().a1().len(), 1);
        for u in mb.cat().a1().elems() {
            assert_eq!(ci.f1.apply(u), &tb.cat().a1().elems()[0]);
        }
        assert!(check_split_preserving(&ci, mb.split(), tb.split()));
    }

    #[test]
    fn unlawful_sources_are_rejected() {
        use crate::finset::{product, FinMap, FinObj};
        let hom = FinObj::from_atoms(["1", "e"]).unwrap();
        let (dom, _, _) = product(&hom, &hom);
        let comp = FinMap::from_fn(dom, hom.clone(), |_| Element::atom("e")).unwrap();
        let bad = EnrichedCat::new(
            vec!["a".into()],
            vec![vec![hom]],
            vec![vec![vec![comp]]],
            vec![Element::atom("1")],
        )
        .unwrap();
        assert!(matches!(
            InterBuild::build(&bad).unwrap_err(),
            InterError::SourceUnlawful(_)
        ));
    }
}
