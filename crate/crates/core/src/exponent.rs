//! Wide subcategories of Set^G usable as exponent restrictions: builtins
//! (all, isos, monos, epis), predicates from indexing systems, and bounded
//! user tables; plus the property checks (wide / pullback stable /
//! coproduct complete) and the indexing-system ↔ subcategory round trip.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{subgroup_lattice, Group, Subgroup};
use crate::gset::{
    all_gmaps, canonicalize, coproduct, orbit, orbit_with_cosets, pullback, restrict,
    restrict_map, subgroup_as_group, GMap, GSet,
};
use crate::indexing::{map_in_category, IndexingSystem};

/// Isomorphism-class key of an equivariant map (an object of the arrow
/// category up to iso): per target orbit, the stabilizer class together with
/// the fiber over the orbit representative as a canonical H-set, minimized
/// over all transports onto the class representative; sorted multiset.
pub type ArrowKey = Vec<(usize, Vec<usize>)>;

pub fn arrow_key(f: &GMap) -> Result<ArrowKey> {
    let group = f.source().group().clone();
    let mut key = Vec::new();
    for o in f.target().orbit_decompose()? {
        let lat = subgroup_lattice(&group)?;
        let h_c = lat.subgroup(lat.class_rep(o.class)).clone();
        let fiber: Vec<usize> = (0..f.source().size())
            .filter(|&s| f.apply(s) == o.rep)
            .collect();
        let pos = |p: usize| fiber.binary_search(&p).expect("fiber closed");
        let emb = subgroup_as_group(&group, &h_c)?;
        // minimize over every w with w·Stab(rep)·w⁻¹ = H_c (this quotients
        // out the Weyl-group twist coming from automorphisms of the orbit)
        let mut best: Option<Vec<usize>> = None;
        for w in 0..group.order() {
            if o.stabilizer.conjugate(&group, w) != h_c {
                continue;
            }
            // w and ws (s in the stabilizer) give isomorphic transports; keep
            // one representative per coset
            if o.stabilizer
                .elements()
                .iter()
                .any(|&s| group.mul(w, s) < w)
            {
                continue;
            }
            let winv = group.inv(w);
            let mut action = Vec::with_capacity(emb.group.order() * fiber.len());
            for &h in &emb.elements {
                let conj = group.mul(group.mul(winv, h), w);
                for &p in &fiber {
                    action.push(pos(f.source().act(conj, p)));
                }
            }
            let hset = GSet::new(emb.group.clone(), fiber.len(), action)?;
            let table = canonicalize(&hset)?.object.action_table().to_vec();
            if best.as_ref().map_or(true, |b| table < *b) {
                best = Some(table);
            }
        }
        key.push((o.class, best.expect("some conjugator exists")));
    }
    key.sort();
    Ok(key)
}

#[derive(Debug, Clone)]
pub enum PredicateKind {
    /// All equivariant maps.
    All,
    /// Isomorphisms only.
    Iso,
    /// Monomorphisms (injective maps).
    Mono,
    /// Epimorphisms (surjective maps).
    Epi,
    /// Set^G_I for an indexing system.
    Indexing(IndexingSystem),
    /// A user table of maps, certified only up to a point bound.
    Table(UserTable),
}

/// A membership list given up to arrow isomorphism, valid only for maps whose
/// endpoints have at most `bound` points.
#[derive(Debug, Clone)]
pub struct UserTable {
    pub bound: usize,
    keys: BTreeSet<ArrowKey>,
}

impl UserTable {
    pub fn new(bound: usize, maps: &[GMap]) -> Result<UserTable> {
        let mut keys = BTreeSet::new();
        for f in maps {
            if f.source().size() > bound || f.target().size() > bound {
                return Err(Error::Resource(format!(
                    "table entry with more than {bound} points"
                )));
            }
            keys.insert(arrow_key(f)?);
        }
        Ok(UserTable { bound, keys })
    }
}

/// A wide subcategory of Set^G used to restrict bispan exponents.
#[derive(Debug, Clone)]
pub struct ExponentPredicate {
    group: Group,
    kind: PredicateKind,
}

impl ExponentPredicate {
    pub fn new(group: Group, kind: PredicateKind) -> ExponentPredicate {
        ExponentPredicate { group, kind }
    }

    pub fn all(group: Group) -> ExponentPredicate {
        ExponentPredicate::new(group, PredicateKind::All)
    }

    pub fn from_indexing(i: IndexingSystem) -> ExponentPredicate {
        let group = i.group().clone();
        ExponentPredicate::new(group, PredicateKind::Indexing(i))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn kind(&self) -> &PredicateKind {
        &self.kind
    }

    pub fn contains(&self, f: &GMap) -> Result<bool> {
        if f.source().group() != &self.group {
            return Err(Error::Shape("map over the wrong group".into()));
        }
        match &self.kind {
            PredicateKind::All => Ok(true),
            PredicateKind::Iso => Ok(f.is_bijective()),
            PredicateKind::Mono => Ok(f.is_injective()),
            PredicateKind::Epi => Ok(f.is_surjective()),
            PredicateKind::Indexing(i) => map_in_category(i, f),
            PredicateKind::Table(t) => {
                if f.source().size() > t.bound || f.target().size() > t.bound {
                    return Err(Error::Resource(format!(
                        "user table is certified only up to {} points",
                        t.bound
                    )));
                }
                Ok(t.keys.contains(&arrow_key(f)?))
            }
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            PredicateKind::All => "all maps".into(),
            PredicateKind::Iso => "isomorphisms".into(),
            PredicateKind::Mono => "monomorphisms".into(),
            PredicateKind::Epi => "epimorphisms".into(),
            PredicateKind::Indexing(i) => format!("indexing system with {} pairs", i.len()),
            PredicateKind::Table(t) => format!("user table (bound {})", t.bound),
        }
    }
}

/// Canonical scan objects: the empty set, every orbit, and every two-orbit
/// coproduct, with at most `bound` points.
pub fn scan_objects(group: &Group, bound: usize) -> Result<Vec<GSet>> {
    let lat = subgroup_lattice(group)?;
    let mut orbits = Vec::new();
    for c in 0..lat.classes().len() {
        let h = lat.subgroup(lat.class_rep(c));
        let o = orbit(group, h);
        if o.size() <= bound {
            orbits.push(o);
        }
    }
    let mut out = vec![GSet::empty(group.clone())];
    out.extend(orbits.iter().cloned());
    for i in 0..orbits.len() {
        for j in i..orbits.len() {
            if orbits[i].size() + orbits[j].size() <= bound {
                let (obj, _, _) = coproduct(&orbits[i], &orbits[j])?;
                out.push(obj);
            }
        }
    }
    Ok(out)
}

/// Report for the wide / pullback-stable / coproduct-complete check.
#[derive(Debug, Clone)]
pub struct SubcategoryReport {
    pub bound: usize,
    pub objects_scanned: usize,
    pub wide: bool,
    pub pullback_stable: bool,
    pub composition_closed: bool,
    pub coproduct_complete: bool,
    /// Checked only when ∅→* and the fold *⊔*→* are present.
    pub monos_admitted: Option<bool>,
    pub witness: Option<String>,
    pub note: String,
}

impl SubcategoryReport {
    /// The hypotheses needed for the indexing-system correspondence.
    pub fn passes(&self) -> bool {
        self.wide && self.pullback_stable && self.composition_closed && self.coproduct_complete
    }
}

/// Verify the subcategory axioms on all diagrams whose objects are scan
/// objects (≤ two orbits) with at most `bound` points each.
pub fn subcategory_properties(d: &ExponentPredicate, bound: usize) -> Result<SubcategoryReport> {
    let group = d.group();
    let objects = scan_objects(group, bound)?;
    let mut report = SubcategoryReport {
        bound,
        objects_scanned: objects.len(),
        wide: true,
        pullback_stable: true,
        composition_closed: true,
        coproduct_complete: true,
        monos_admitted: None,
        witness: None,
        note: format!(
            "checked on canonical objects with at most two orbits and {bound} points"
        ),
    };
    let fail = |flag: &mut bool, witness: String, stash: &mut Option<String>| {
        if *flag {
            *flag = false;
            if stash.is_none() {
                *stash = Some(witness);
            }
        }
    };

    // wideness: identities
    for x in &objects {
        if !d.contains(&GMap::identity(x))? {
            let w = format!("identity of a {}-point object missing", x.size());
            fail(&mut report.wide, w, &mut report.witness);
        }
    }

    // member maps between scan objects
    let mut members: Vec<GMap> = Vec::new();
    let mut all_maps: Vec<GMap> = Vec::new();
    for a in &objects {
        for b in &objects {
            for f in all_gmaps(a, b)? {
                if d.contains(&f)? {
                    members.push(f.clone());
                }
                all_maps.push(f);
            }
        }
    }

    // composition closure
    for f in &members {
        for g in &members {
            if f.target() == g.source() {
                let fg = f.then(g)?;
                if !d.contains(&fg)? {
                    let w = format!(
                        "composite {:?} ∘ {:?} escapes the subcategory",
                        g, f
                    );
                    fail(&mut report.composition_closed, w, &mut report.witness);
                }
            }
        }
    }

    // pullback stability: the base change of a member along any map is a member
    for f in &members {
        for g in &all_maps {
            if f.target() != g.target() {
                continue;
            }
            let sq = pullback(f, g)?;
            if sq.object.size() > bound {
                continue; // outside the certified diagram bound
            }
            if !d.contains(&sq.p2)? {
                let w = format!(
                    "pullback of member {:?} along {:?} has leg {:?} outside",
                    f, g, sq.p2
                );
                fail(&mut report.pullback_stable, w, &mut report.witness);
            }
        }
    }

    // coproduct completeness: initial maps and coproducts of members
    let pt = GSet::point(group.clone());
    if !d.contains(&GMap::from_empty(&pt))? {
        fail(
            &mut report.coproduct_complete,
            "the map ∅ → * is absent".into(),
            &mut report.witness,
        );
    }
    for x in &objects {
        if !d.contains(&GMap::from_empty(x))? {
            let w = format!("initial map into a {}-point object absent", x.size());
            fail(&mut report.coproduct_complete, w, &mut report.witness);
        }
    }
    for f in &members {
        for g in &members {
            let src = f.source().size() + g.source().size();
            let tgt = f.target().size() + g.target().size();
            if src > bound || tgt > bound {
                continue;
            }
            let (s, _, _) = coproduct(f.source(), g.source())?;
            let (_, i1, i2) = coproduct(f.target(), g.target())?;
            let fg = crate::gset::copair(
                &s,
                &f.then(&i1)?,
                &g.then(&i2)?,
            )?;
            if !d.contains(&fg)? {
                fail(
                    &mut report.coproduct_complete,
                    format!("coproduct of members {:?} ⊔ {:?} escapes", f, g),
                    &mut report.witness,
                );
            }
        }
    }

    // mono consequence: ∅→* and *⊔*→* in D force all (bounded) monos in D
    let (two, _, _) = coproduct(&pt, &pt)?;
    let fold = GMap::new(two, pt.clone(), vec![0, 0])?;
    if d.contains(&GMap::from_empty(&pt))? && d.contains(&fold)? {
        let mut ok = true;
        'outer: for f in &all_maps {
            if f.is_injective() && !d.contains(f)? {
                ok = false;
                report
                    .witness
                    .get_or_insert_with(|| format!("mono {:?} not admitted", f));
                break 'outer;
            }
        }
        report.monos_admitted = Some(ok);
    }
    Ok(report)
}

/// The indexing system O_D of a wide pullback-stable coproduct-complete
/// subcategory: (H, K) admissible iff the projection G/K → G/H lies in D.
/// User tables are property-checked first; builtins and indexing-derived
/// predicates carry their certificates by construction.
pub fn indexing_from_subcategory(d: &ExponentPredicate) -> Result<IndexingSystem> {
    if let PredicateKind::Table(t) = &d.kind {
        let report = subcategory_properties(d, t.bound)?;
        if !report.passes() {
            return Err(Error::InvalidSubcategory(format!(
                "user table fails the subcategory check: {}",
                report.witness.unwrap_or_else(|| "unknown".into())
            )));
        }
    }
    let group = d.group();
    let lat = subgroup_lattice(group)?;
    let mut pairs = Vec::new();
    for h in 0..lat.len() {
        for k in 0..lat.len() {
            if !lat.leq(k, h) {
                continue;
            }
            if projection_in(d, lat.subgroup(h), lat.subgroup(k))? {
                pairs.push((h, k));
            }
        }
    }
    let sys = IndexingSystem::new(group.clone(), pairs)?;
    if let Some(v) = sys.validate()? {
        return Err(Error::InvalidSubcategory(format!(
            "derived orbit pairs do not form an indexing system: {v}"
        )));
    }
    Ok(sys)
}

/// Is the canonical projection G/K → G/H (gK ↦ gH) in D?
fn projection_in(d: &ExponentPredicate, h: &Subgroup, k: &Subgroup) -> Result<bool> {
    let group = d.group();
    let (gk, _) = orbit_with_cosets(group, k);
    let (gh, coset_h) = orbit_with_cosets(group, h);
    let (gk2, coset_k) = orbit_with_cosets(group, k);
    debug_assert_eq!(gk, gk2);
    // point i of G/K is the coset of its least representative r; map to rH
    let mut rep = vec![usize::MAX; gk.size()];
    for g in (0..group.order()).rev() {
        rep[coset_k[g]] = g;
    }
    let map = rep.iter().map(|&r| coset_h[r]).collect();
    let f = GMap::new(gk, gh, map)?;
    d.contains(&f)
}

/// Result of the poset round trip of the classification theorem.
#[derive(Debug, Clone)]
pub struct RoundTripReport {
    pub systems: usize,
    pub mismatches: Vec<String>,
    pub order_preserved: bool,
}

impl RoundTripReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.order_preserved
    }
}

/// For every enumerated indexing system I over G, check that
/// indexing_from_subcategory(Set^G_I) = I, and that inclusion of systems
/// matches inclusion of the associated subcategories both ways.
pub fn round_trip_check(group: &Group) -> Result<RoundTripReport> {
    let systems = crate::indexing::enumerate(group)?;
    let mut mismatches = Vec::new();
    let mut recovered = Vec::new();
    for (n, i) in systems.iter().enumerate() {
        let d = ExponentPredicate::from_indexing(i.clone());
        let back = indexing_from_subcategory(&d)?;
        if &back != i {
            mismatches.push(format!("system #{n} does not round-trip"));
        }
        recovered.push(back);
    }
    // order preservation both ways: I ⊆ J iff O_{D_I} ⊆ O_{D_J}
    let mut order_preserved = true;
    for (a, ra) in systems.iter().zip(&recovered) {
        for (b, rb) in systems.iter().zip(&recovered) {
            if a.is_subsystem_of(b) != ra.is_subsystem_of(rb) {
                order_preserved = false;
            }
        }
    }
    Ok(RoundTripReport {
        systems: systems.len(),
        mismatches,
        order_preserved,
    })
}

/// Restrict an exponent predicate along H ≤ G (only defined for predicates
/// that restrict: builtins restrict to themselves, Set^G_I to Set^H_{i*I}).
pub fn restrict_predicate(
    emb: &crate::gset::SubgroupEmbedding,
    d: &ExponentPredicate,
) -> Result<ExponentPredicate> {
    let kind = match &d.kind {
        PredicateKind::All => PredicateKind::All,
        PredicateKind::Iso => PredicateKind::Iso,
        PredicateKind::Mono => PredicateKind::Mono,
        PredicateKind::Epi => PredicateKind::Epi,
        PredicateKind::Indexing(i) => {
            PredicateKind::Indexing(crate::indexing::restrict_indexing(emb, i)?)
        }
        PredicateKind::Table(_) => {
            return Err(Error::InvalidSubcategory(
                "user tables do not restrict to subgroups".into(),
            ))
        }
    };
    Ok(ExponentPredicate::new(emb.group.clone(), kind))
}

/// Convenience: does the restricted map i_H^*(f) lie in the restricted
/// predicate?  (Used by the restriction-closure property tests.)
pub fn restricted_map_in(
    emb: &crate::gset::SubgroupEmbedding,
    d: &ExponentPredicate,
    f: &GMap,
) -> Result<bool> {
    let rd = restrict_predicate(emb, d)?;
    let rf = restrict_map(emb, f)?;
    let _ = restrict(emb, f.source())?;
    rd.contains(&rf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::indexing::enumerate;

    #[test]
    fn round_trip_small_groups() {
        for g in [
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::cyclic(4).unwrap(),
            FiniteGroup::klein4(),
        ] {
            let r = round_trip_check(&g).unwrap();
            assert!(r.ok(), "{}: {:?}", g.name(), r.mismatches);
        }
    }

    #[test]
    fn builtin_subcategories() {
        let g = FiniteGroup::cyclic(2).unwrap();
        // all maps → complete system
        let d = ExponentPredicate::all(g.clone());
        let sys = indexing_from_subcategory(&d).unwrap();
        assert_eq!(sys, IndexingSystem::complete(&g).unwrap());

        // monos between orbits are isos → trivial system
        let d = ExponentPredicate::new(g.clone(), PredicateKind::Mono);
        let sys = indexing_from_subcategory(&d).unwrap();
        assert_eq!(sys, IndexingSystem::trivial(&g).unwrap());
    }

    #[test]
    fn properties_of_indexing_predicates() {
        let g = FiniteGroup::cyclic(4).unwrap();
        for i in enumerate(&g).unwrap() {
            let d = ExponentPredicate::from_indexing(i);
            let r = subcategory_properties(&d, 6).unwrap();
            assert!(r.passes(), "witness: {:?}", r.witness);
            assert_eq!(r.monos_admitted, Some(true));
        }
    }

    #[test]
    fn epi_predicate_flagged() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let d = ExponentPredicate::new(g, PredicateKind::Epi);
        let r = subcategory_properties(&d, 4).unwrap();
        assert!(r.wide);
        assert!(r.pullback_stable);
        assert!(r.composition_closed);
        assert!(!r.coproduct_complete, "∅ → * is not epi");
    }

    #[test]
    fn iso_predicate_is_wide_and_stable() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let d = ExponentPredicate::new(g, PredicateKind::Iso);
        let r = subcategory_properties(&d, 4).unwrap();
        assert!(r.wide && r.pullback_stable && r.composition_closed);
    }

    #[test]
    fn arrow_key_is_iso_invariant() {
        use crate::gset::{coproduct, orbit, GMap, GSet};
        use crate::group::Subgroup;
        let g = FiniteGroup::cyclic(2).unwrap();
        let free = orbit(&g, &Subgroup::trivial(&g));
        let pt = GSet::point(g.clone());
        // the two projections (free ⊔ pt) → pt assembled in both orders
        let (a, _, _) = coproduct(&free, &pt).unwrap();
        let (b, _, _) = coproduct(&pt, &free).unwrap();
        let fa = GMap::to_point(&a);
        let fb = GMap::to_point(&b);
        assert_eq!(arrow_key(&fa).unwrap(), arrow_key(&fb).unwrap());
        // and differs from the fold of two points
        let (two, _, _) = coproduct(&pt, &pt).unwrap();
        let f2 = GMap::to_point(&two);
        assert_ne!(arrow_key(&fa).unwrap(), arrow_key(&f2).unwrap());
    }

    #[test]
    fn user_table_round_trip() {
        // Set^{C4}_I as a user table for each of the 5 systems gives back I
        let g = FiniteGroup::cyclic(4).unwrap();
        let bound = 4; // large enough to contain every orbit projection of C4
        for i in enumerate(&g).unwrap() {
            let from_i = ExponentPredicate::from_indexing(i.clone());
            let mut maps = Vec::new();
            let objects = crate::gset::all_canonical_gsets(&g, bound).unwrap();
            for a in &objects {
                for b in &objects {
                    for f in all_gmaps(&a, &b).unwrap() {
                        if from_i.contains(&f).unwrap() {
                            maps.push(f);
                        }
                    }
                }
            }
            let table = UserTable::new(bound, &maps).unwrap();
            let d = ExponentPredicate::new(g.clone(), PredicateKind::Table(table));
            let sys = indexing_from_subcategory(&d).unwrap();
            assert_eq!(sys, i);
        }
    }
}
