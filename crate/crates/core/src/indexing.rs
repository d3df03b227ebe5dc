//! Indexing systems: admissible orbit pairs with closure validation, an
//! optimized closure-based enumerator, a brute-force subset oracle, and the
//! fiberwise admissibility test for equivariant maps.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{subgroup_lattice, Group, Subgroup, SubgroupLattice};
use crate::gset::{GMap, SubgroupEmbedding};

/// An indexing system, stored as the set of admissible orbit pairs (H, K)
/// with K ≤ H, as subgroup-lattice indices.  The pair (h, k) means the H-set
/// H/K is admissible.
#[derive(Debug, Clone)]
pub struct IndexingSystem {
    group: Group,
    pairs: BTreeSet<(usize, usize)>,
}

impl PartialEq for IndexingSystem {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.pairs == other.pairs
    }
}
impl Eq for IndexingSystem {}

impl PartialOrd for IndexingSystem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for IndexingSystem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.pairs.len(), &self.pairs).cmp(&(other.pairs.len(), &other.pairs))
    }
}

/// A failed axiom with a witness, for report-style validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} violated: {}", self.axiom, self.witness)
    }
}

fn fmt_subgroup(lat: &SubgroupLattice, i: usize) -> String {
    format!("{:?}", lat.subgroup(i).elements())
}

impl IndexingSystem {
    pub fn new(group: Group, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let lat = subgroup_lattice(&group)?;
        let mut set = BTreeSet::new();
        for (h, k) in pairs {
            if h >= lat.len() || k >= lat.len() {
                return Err(Error::InvalidIndexing(format!(
                    "pair ({h}, {k}) out of lattice range"
                )));
            }
            if !lat.leq(k, h) {
                return Err(Error::InvalidIndexing(format!(
                    "pair requires K ≤ H, got K = {}, H = {}",
                    fmt_subgroup(lat, k),
                    fmt_subgroup(lat, h)
                )));
            }
            set.insert((h, k));
        }
        Ok(IndexingSystem { group, pairs: set })
    }

    /// Only the forced trivial pairs (H, H).
    pub fn trivial(group: &Group) -> Result<Self> {
        let lat = subgroup_lattice(group)?;
        IndexingSystem::new(group.clone(), (0..lat.len()).map(|h| (h, h)))
    }

    /// All pairs K ≤ H.
    pub fn complete(group: &Group) -> Result<Self> {
        let lat = subgroup_lattice(group)?;
        let mut pairs = Vec::new();
        for h in 0..lat.len() {
            for k in 0..lat.len() {
                if lat.leq(k, h) {
                    pairs.push((h, k));
                }
            }
        }
        IndexingSystem::new(group.clone(), pairs)
    }

    pub fn from_subgroup_pairs(group: Group, pairs: &[(Subgroup, Subgroup)]) -> Result<Self> {
        let lat = subgroup_lattice(&group)?;
        let mut idx = Vec::new();
        for (h, k) in pairs {
            let hi = lat
                .index_of(h)
                .ok_or_else(|| Error::InvalidIndexing("H is not a subgroup".into()))?;
            let ki = lat
                .index_of(k)
                .ok_or_else(|| Error::InvalidIndexing("K is not a subgroup".into()))?;
            idx.push((hi, ki));
        }
        IndexingSystem::new(group, idx)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_admissible_indices(&self, h: usize, k: usize) -> bool {
        self.pairs.contains(&(h, k))
    }

    /// Is H/K admissible?  False when K is not a subgroup of H.
    pub fn is_admissible(&self, h: &Subgroup, k: &Subgroup) -> Result<bool> {
        let lat = subgroup_lattice(&self.group)?;
        let (Some(hi), Some(ki)) = (lat.index_of(h), lat.index_of(k)) else {
            return Err(Error::InvalidIndexing("subgroup not in lattice".into()));
        };
        Ok(lat.leq(ki, hi) && self.pairs.contains(&(hi, ki)))
    }

    pub fn is_subsystem_of(&self, other: &IndexingSystem) -> bool {
        self.group == other.group && self.pairs.is_subset(&other.pairs)
    }

    /// Check the four axioms; `None` means valid, otherwise the first
    /// violated axiom with a witness.
    pub fn validate(&self) -> Result<Option<Violation>> {
        let g = &self.group;
        let lat = subgroup_lattice(g)?;
        // axiom 1: trivial pairs
        for h in 0..lat.len() {
            if !self.pairs.contains(&(h, h)) {
                return Ok(Some(Violation {
                    axiom: "trivial-sets",
                    witness: format!("missing pair (H, H) for H = {}", fmt_subgroup(lat, h)),
                }));
            }
        }
        // axiom 2: conjugation closure
        for &(h, k) in &self.pairs {
            for x in 0..g.order() {
                let hc = lat.index_of(&lat.subgroup(h).conjugate(g, x)).unwrap();
                let kc = lat.index_of(&lat.subgroup(k).conjugate(g, x)).unwrap();
                if !self.pairs.contains(&(hc, kc)) {
                    return Ok(Some(Violation {
                        axiom: "conjugation-closure",
                        witness: format!(
                            "({}, {}) admissible but its conjugate by {x} is not",
                            fmt_subgroup(lat, h),
                            fmt_subgroup(lat, k)
                        ),
                    }));
                }
            }
        }
        // axiom 3: restriction closure — restricting H/K to J ≤ H decomposes
        // into orbits J/(J ∩ xKx⁻¹) over double cosets, all of which must be
        // admissible
        for &(h, k) in &self.pairs {
            for j in 0..lat.len() {
                if !lat.leq(j, h) {
                    continue;
                }
                for &x in lat.subgroup(h).elements() {
                    let kx = lat.subgroup(k).conjugate(g, x);
                    let meet = lat.subgroup(j).intersect(&kx);
                    let mi = lat.index_of(&meet).unwrap();
                    if !self.pairs.contains(&(j, mi)) {
                        return Ok(Some(Violation {
                            axiom: "restriction-closure",
                            witness: format!(
                                "({}, {}) admissible, J = {} demands pair (J, J∩{}K{}⁻¹) = ({}, {})",
                                fmt_subgroup(lat, h),
                                fmt_subgroup(lat, k),
                                fmt_subgroup(lat, j),
                                x,
                                x,
                                fmt_subgroup(lat, j),
                                fmt_subgroup(lat, mi)
                            ),
                        }));
                    }
                }
            }
        }
        // axiom 4: transitivity (self-induction)
        for &(h, k) in &self.pairs {
            for &(k2, l) in &self.pairs {
                if k2 == k && !self.pairs.contains(&(h, l)) {
                    return Ok(Some(Violation {
                        axiom: "transitivity",
                        witness: format!(
                            "({}, {}) and ({}, {}) admissible but ({}, {}) is not",
                            fmt_subgroup(lat, h),
                            fmt_subgroup(lat, k),
                            fmt_subgroup(lat, k),
                            fmt_subgroup(lat, l),
                            fmt_subgroup(lat, h),
                            fmt_subgroup(lat, l)
                        ),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// The smallest valid indexing system containing `self`'s pairs.
    pub fn closure(&self) -> Result<IndexingSystem> {
        let g = &self.group;
        let lat = subgroup_lattice(g)?;
        let mut pairs: BTreeSet<(usize, usize)> =
            (0..lat.len()).map(|h| (h, h)).collect();
        pairs.extend(self.pairs.iter().copied());
        loop {
            let mut grew = false;
            let snapshot: Vec<(usize, usize)> = pairs.iter().copied().collect();
            for &(h, k) in &snapshot {
                for x in 0..g.order() {
                    let hc = lat.index_of(&lat.subgroup(h).conjugate(g, x)).unwrap();
                    let kc = lat.index_of(&lat.subgroup(k).conjugate(g, x)).unwrap();
                    grew |= pairs.insert((hc, kc));
                }
                for j in 0..lat.len() {
                    if !lat.leq(j, h) {
                        continue;
                    }
                    for &x in lat.subgroup(h).elements() {
                        let kx = lat.subgroup(k).conjugate(g, x);
                        let mi = lat.index_of(&lat.subgroup(j).intersect(&kx)).unwrap();
                        grew |= pairs.insert((j, mi));
                    }
                }
            }
            let snapshot: Vec<(usize, usize)> = pairs.iter().copied().collect();
            for &(h, k) in &snapshot {
                for &(k2, l) in &snapshot {
                    if k2 == k {
                        grew |= pairs.insert((h, l));
                    }
                }
            }
            if !grew {
                break;
            }
        }
        IndexingSystem::new(g.clone(), pairs)
    }
}

/// Conjugacy classes of nontrivial pairs (H, K), K < H, under simultaneous
/// conjugation; each class is returned sorted.
fn pair_classes(group: &Group) -> Result<Vec<Vec<(usize, usize)>>> {
    let lat = subgroup_lattice(group)?;
    let mut seen = BTreeSet::new();
    let mut classes = Vec::new();
    for h in 0..lat.len() {
        for k in 0..lat.len() {
            if k == h || !lat.leq(k, h) || seen.contains(&(h, k)) {
                continue;
            }
            let mut class = BTreeSet::new();
            for x in 0..group.order() {
                let hc = lat.index_of(&lat.subgroup(h).conjugate(group, x)).unwrap();
                let kc = lat.index_of(&lat.subgroup(k).conjugate(group, x)).unwrap();
                class.insert((hc, kc));
            }
            seen.extend(class.iter().copied());
            classes.push(class.into_iter().collect());
        }
    }
    Ok(classes)
}

/// All indexing systems over `group`, via closure generation from seed pair
/// classes, in a deterministic (size-then-lexicographic) order.
pub fn enumerate(group: &Group) -> Result<Vec<IndexingSystem>> {
    let classes = pair_classes(group)?;
    let bottom = IndexingSystem::trivial(group)?;
    let mut found: BTreeSet<IndexingSystem> = BTreeSet::new();
    found.insert(bottom.clone());
    let mut frontier = vec![bottom];
    while let Some(sys) = frontier.pop() {
        for class in &classes {
            if class.iter().all(|p| sys.pairs.contains(p)) {
                continue;
            }
            let mut seed = sys.clone();
            seed.pairs.extend(class.iter().copied());
            let closed = seed.closure()?;
            if found.insert(closed.clone()) {
                frontier.push(closed);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Independent oracle: filter all unions of pair classes through `validate`.
/// Exponential in the number of pair classes; intended for |G| ≤ 8.
pub fn enumerate_bruteforce(group: &Group) -> Result<Vec<IndexingSystem>> {
    let classes = pair_classes(group)?;
    if classes.len() > 20 {
        return Err(Error::Resource(format!(
            "{} pair classes is too many for the brute-force oracle",
            classes.len()
        )));
    }
    let trivial = IndexingSystem::trivial(group)?;
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << classes.len()) {
        let mut sys = trivial.clone();
        for (i, class) in classes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sys.pairs.extend(class.iter().copied());
            }
        }
        if sys.validate()?.is_none() {
            out.insert(sys);
        }
    }
    Ok(out.into_iter().collect())
}

/// Hasse-diagram edges (covering relations) of the inclusion poset.
pub fn hasse_edges(systems: &[IndexingSystem]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, a) in systems.iter().enumerate() {
        for (j, b) in systems.iter().enumerate() {
            if i == j || !a.is_subsystem_of(b) {
                continue;
            }
            let covered = systems.iter().enumerate().any(|(k, c)| {
                k != i && k != j && a.is_subsystem_of(c) && c.is_subsystem_of(b)
            });
            if !covered {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Is f in Set^G_I?  True iff for every point s of the source, the orbit
/// G_{f(s)}·s inside the fiber — the pair (G_{f(s)}, G_s) — is admissible.
pub fn map_in_category(i: &IndexingSystem, f: &GMap) -> Result<bool> {
    if f.source().group() != i.group() {
        return Err(Error::Shape("map over the wrong group".into()));
    }
    let lat = subgroup_lattice(i.group())?;
    for s in 0..f.source().size() {
        let gs = f.source().stabilizer(s);
        let gt = f.target().stabilizer(f.apply(s));
        let hi = lat.index_of(&gt).unwrap();
        let ki = lat.index_of(&gs).unwrap();
        if !i.is_admissible_indices(hi, ki) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The restricted indexing system i_H^* I over H: a pair of subgroups of H is
/// admissible iff it is admissible in I viewed inside G.
pub fn restrict_indexing(emb: &SubgroupEmbedding, i: &IndexingSystem) -> Result<IndexingSystem> {
    if &emb.parent != i.group() {
        return Err(Error::Shape("embedding over the wrong group".into()));
    }
    let hlat = subgroup_lattice(&emb.group)?;
    let to_parent = |s: &Subgroup| -> Result<Subgroup> {
        Subgroup::new(
            &emb.parent,
            s.elements().iter().map(|&x| emb.elements[x]).collect(),
        )
    };
    let mut pairs = Vec::new();
    for a in 0..hlat.len() {
        for b in 0..hlat.len() {
            if !hlat.leq(b, a) {
                continue;
            }
            let pa = to_parent(hlat.subgroup(a))?;
            let pb = to_parent(hlat.subgroup(b))?;
            if i.is_admissible(&pa, &pb)? {
                pairs.push((a, b));
            }
        }
    }
    IndexingSystem::new(emb.group.clone(), pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::gset::{copair, coproduct, orbit, GMap, GSet};

    #[test]
    fn validate_examples_over_c4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let lat = subgroup_lattice(&g).unwrap();
        let e = lat.index_of(&Subgroup::trivial(&g)).unwrap();
        let c2 = lat.index_of(&Subgroup::generated(&g, &[2])).unwrap();
        let c4 = lat.index_of(&Subgroup::full(&g)).unwrap();

        let mut trivial_pairs = vec![(e, e), (c2, c2), (c4, c4)];
        // {(C4,C2)} + trivial: valid (restricting C4/C2 to C2 is trivial)
        let mut p = trivial_pairs.clone();
        p.push((c4, c2));
        let sys = IndexingSystem::new(g.clone(), p).unwrap();
        assert_eq!(sys.validate().unwrap(), None);

        // {(C4,e)} + trivial: restriction-closure demands (C2, e)
        trivial_pairs.push((c4, e));
        let sys = IndexingSystem::new(g.clone(), trivial_pairs).unwrap();
        let v = sys.validate().unwrap().expect("violation");
        assert_eq!(v.axiom, "restriction-closure");
        assert!(v.witness.contains("[0, 2]"), "{}", v.witness);
    }

    #[test]
    fn enumerate_counts_cyclic() {
        for (n, expected) in [(2usize, 2usize), (3, 2), (4, 5), (8, 14)] {
            let g = FiniteGroup::cyclic(n).unwrap();
            let systems = enumerate(&g).unwrap();
            assert_eq!(systems.len(), expected, "C{n}");
            for s in &systems {
                assert_eq!(s.validate().unwrap(), None);
            }
        }
    }

    #[test]
    fn enumerator_agrees_with_oracle() {
        for g in [
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::cyclic(4).unwrap(),
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::cyclic(8).unwrap(),
            FiniteGroup::klein4(),
            FiniteGroup::symmetric(3).unwrap(),
        ] {
            let fast = enumerate(&g).unwrap();
            let slow = enumerate_bruteforce(&g).unwrap();
            assert_eq!(fast, slow, "{}", g.name());
        }
    }

    #[test]
    fn poset_has_bottom_and_top() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let systems = enumerate(&g).unwrap();
        let bottom = IndexingSystem::trivial(&g).unwrap();
        let top = IndexingSystem::complete(&g).unwrap();
        assert!(systems.contains(&bottom));
        assert!(systems.contains(&top));
        for s in &systems {
            assert!(bottom.is_subsystem_of(s));
            assert!(s.is_subsystem_of(&top));
        }
        // antisymmetry
        for a in &systems {
            for b in &systems {
                if a.is_subsystem_of(b) && b.is_subsystem_of(a) {
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn hasse_edges_of_c4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let systems = enumerate(&g).unwrap();
        let edges = hasse_edges(&systems);
        // 5 systems; trivial is covered by the two one-generator systems
        let bottom = systems
            .iter()
            .position(|s| *s == IndexingSystem::trivial(&g).unwrap())
            .unwrap();
        assert_eq!(edges.iter().filter(|&&(a, _)| a == bottom).count(), 2);
    }

    #[test]
    fn map_in_category_examples() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let free = orbit(&g, &Subgroup::trivial(&g));
        let systems = enumerate(&g).unwrap();

        // fold maps are always admissible
        let (tt, _, _) = coproduct(&free, &free).unwrap();
        let fold = copair(&tt, &GMap::identity(&free), &GMap::identity(&free)).unwrap();
        for i in &systems {
            assert!(map_in_category(i, &fold).unwrap());
        }

        // π: C2/e → pt admissible iff (C2, e) is admissible
        let pi = GMap::to_point(&free);
        let lat = subgroup_lattice(&g).unwrap();
        let e = lat.index_of(&Subgroup::trivial(&g)).unwrap();
        let c2 = lat.index_of(&Subgroup::full(&g)).unwrap();
        for i in &systems {
            assert_eq!(
                map_in_category(i, &pi).unwrap(),
                i.is_admissible_indices(c2, e)
            );
        }

        // empty map is in every system
        for i in &systems {
            assert!(map_in_category(i, &GMap::from_empty(&GSet::point(g.clone()))).unwrap());
        }
    }

    #[test]
    fn counit_is_admissible_when_pair_is() {
        // ε_T: G ×_H i*T → T over C4 with H = C2, T = C4/C2
        use crate::gset::{induction_counit, subgroup_as_group};
        let g = FiniteGroup::cyclic(4).unwrap();
        let h = Subgroup::generated(&g, &[2]);
        let emb = subgroup_as_group(&g, &h).unwrap();
        let t = orbit(&g, &h);
        let (_, counit) = induction_counit(&emb, &t).unwrap();
        for i in enumerate(&g).unwrap() {
            let lat = subgroup_lattice(&g).unwrap();
            let c4 = lat.index_of(&Subgroup::full(&g)).unwrap();
            let c2 = lat.index_of(&h).unwrap();
            if i.is_admissible_indices(c4, c2) {
                assert!(map_in_category(&i, &counit).unwrap());
            }
        }
    }

    #[test]
    fn restricted_system_is_valid() {
        use crate::gset::subgroup_as_group;
        let g = FiniteGroup::cyclic(8).unwrap();
        let h = Subgroup::generated(&g, &[2]); // C4 inside C8
        let emb = subgroup_as_group(&g, &h).unwrap();
        for i in enumerate(&g).unwrap() {
            let ri = restrict_indexing(&emb, &i).unwrap();
            assert_eq!(ri.validate().unwrap(), None);
        }
    }
}
