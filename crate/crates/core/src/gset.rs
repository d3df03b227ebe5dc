//! Finite G-sets and equivariant maps, with the limit/adjunction toolkit the
//! polynomial category needs: coproducts, products, pullbacks, dependent
//! products (exponential diagrams), induction/restriction/coinduction, and
//! canonical forms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{subgroup_lattice, FiniteGroup, Group, Subgroup};

/// A finite set with a left action of a fixed finite group, stored pointwise.
#[derive(Clone)]
pub struct GSet {
    group: Group,
    size: usize,
    /// Row-major: `action[g * size + x]` is g·x.
    action: Vec<usize>,
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GSet({} points over {})", self.size, self.group.name())
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.action == other.action
            && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}
impl Eq for GSet {}

impl GSet {
    pub fn new(group: Group, size: usize, action: Vec<usize>) -> Result<GSet> {
        if action.len() != group.order() * size {
            return Err(Error::InvalidGSet(format!(
                "action table has {} entries, expected {}",
                action.len(),
                group.order() * size
            )));
        }
        let x = GSet {
            group,
            size,
            action,
        };
        for p in 0..size {
            if x.act(x.group.identity(), p) != p {
                return Err(Error::InvalidGSet(format!(
                    "identity moves point {p}"
                )));
            }
        }
        for g in 0..x.group.order() {
            for h in 0..x.group.order() {
                let gh = x.group.mul(g, h);
                for p in 0..size {
                    let q = x.action[h * size + p];
                    if q >= size {
                        return Err(Error::InvalidGSet(format!(
                            "action sends point {p} out of range"
                        )));
                    }
                    if x.action[g * size + q] != x.action[gh * size + p] {
                        return Err(Error::InvalidGSet(format!(
                            "action not compatible with multiplication at (g={g}, h={h}, x={p})"
                        )));
                    }
                }
            }
        }
        Ok(x)
    }

    /// Build without re-validating; used internally where the axioms hold by
    /// construction.
    fn raw(group: Group, size: usize, action: Vec<usize>) -> GSet {
        debug_assert!(GSet::new(group.clone(), size, action.clone()).is_ok());
        GSet {
            group,
            size,
            action,
        }
    }

    pub fn empty(group: Group) -> GSet {
        GSet::raw(group, 0, Vec::new())
    }

    /// `n` points with trivial action.
    pub fn trivial(group: Group, n: usize) -> GSet {
        let order = group.order();
        let mut action = Vec::with_capacity(order * n);
        for _ in 0..order {
            action.extend(0..n);
        }
        GSet::raw(group, n, action)
    }

    pub fn point(group: Group) -> GSet {
        GSet::trivial(group, 1)
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn action_table(&self) -> &[usize] {
        &self.action
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let elems = (0..self.group.order())
            .filter(|&g| self.act(g, x) == x)
            .collect();
        Subgroup::new(&self.group, elems).expect("stabilizers are subgroups")
    }

    /// The orbit of `x`, as a sorted point list.
    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let mut pts: Vec<usize> = (0..self.group.order()).map(|g| self.act(g, x)).collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    /// Partition into orbits, ordered by (stabilizer conjugacy class of the
    /// least point, least point).
    pub fn orbit_decompose(&self) -> Result<Vec<Orbit>> {
        let lat = subgroup_lattice(&self.group)?;
        let mut seen = vec![false; self.size];
        let mut orbits = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            let points = self.orbit_of(x);
            for &p in &points {
                seen[p] = true;
            }
            let stabilizer = self.stabilizer(x);
            let class = lat.class_of(lat.index_of(&stabilizer).expect("stabilizer in lattice"));
            orbits.push(Orbit {
                rep: x,
                points,
                stabilizer,
                class,
            });
        }
        orbits.sort_by_key(|o| (o.class, o.rep));
        Ok(orbits)
    }

    /// Isomorphism invariant: sorted multiset of stabilizer conjugacy classes.
    pub fn orbit_type(&self) -> Result<OrbitType> {
        let mut classes: Vec<usize> = self.orbit_decompose()?.iter().map(|o| o.class).collect();
        classes.sort_unstable();
        Ok(OrbitType { classes })
    }

    /// Points fixed by every element of `h`.
    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| h.elements().iter().all(|&g| self.act(g, x) == x))
            .collect()
    }
}

/// One orbit of a G-set.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub rep: usize,
    pub points: Vec<usize>,
    pub stabilizer: Subgroup,
    /// Conjugacy-class label of the stabilizer in the subgroup lattice.
    pub class: usize,
}

/// Sorted multiset of stabilizer conjugacy-class labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitType {
    pub classes: Vec<usize>,
}

/// The orbit G/H: points are left cosets, labeled by their least element.
pub fn orbit(group: &Group, h: &Subgroup) -> GSet {
    orbit_with_cosets(group, h).0
}

/// As `orbit`, also returning the element → coset-index table.
pub fn orbit_with_cosets(group: &Group, h: &Subgroup) -> (GSet, Vec<usize>) {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut count = 0usize;
    for g in 0..n {
        if coset_of[g] == usize::MAX {
            for &x in h.elements() {
                coset_of[group.mul(g, x)] = count;
            }
            count += 1;
        }
    }
    let mut rep = vec![usize::MAX; count];
    for g in (0..n).rev() {
        rep[coset_of[g]] = g; // least element wins
    }
    let mut action = vec![0usize; n * count];
    for g in 0..n {
        for (c, &r) in rep.iter().enumerate() {
            action[g * count + c] = coset_of[group.mul(g, r)];
        }
    }
    (GSet::raw(group.clone(), count, action), coset_of)
}

/// An equivariant map of G-sets.
#[derive(Clone, PartialEq, Eq)]
pub struct GMap {
    source: GSet,
    target: GSet,
    map: Vec<usize>,
}

impl std::fmt::Debug for GMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GMap({} -> {} points, {:?})",
            self.source.size, self.target.size, self.map
        )
    }
}

impl GMap {
    pub fn new(source: GSet, target: GSet, map: Vec<usize>) -> Result<GMap> {
        if !same_group(&source, &target) {
            return Err(Error::Shape("map between sets over different groups".into()));
        }
        if map.len() != source.size {
            return Err(Error::Shape(format!(
                "map table has {} entries for {} points",
                map.len(),
                source.size
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.size) {
            return Err(Error::Shape(format!("map value {v} out of range")));
        }
        for g in 0..source.group.order() {
            for x in 0..source.size {
                if map[source.act(g, x)] != target.act(g, map[x]) {
                    return Err(Error::NotEquivariant(format!(
                        "at group element {g}, point {x}"
                    )));
                }
            }
        }
        Ok(GMap {
            source,
            target,
            map,
        })
    }

    fn raw(source: GSet, target: GSet, map: Vec<usize>) -> GMap {
        debug_assert!(GMap::new(source.clone(), target.clone(), map.clone()).is_ok());
        GMap {
            source,
            target,
            map,
        }
    }

    pub fn identity(x: &GSet) -> GMap {
        GMap::raw(x.clone(), x.clone(), (0..x.size).collect())
    }

    /// The unique map to the one-point set.
    pub fn to_point(x: &GSet) -> GMap {
        GMap::raw(x.clone(), GSet::point(x.group.clone()), vec![0; x.size])
    }

    pub fn from_empty(y: &GSet) -> GMap {
        GMap::raw(GSet::empty(y.group.clone()), y.clone(), Vec::new())
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// `self.then(g)` is g∘self.
    pub fn then(&self, g: &GMap) -> Result<GMap> {
        if self.target != g.source {
            return Err(Error::Shape("composition endpoints do not match".into()));
        }
        Ok(GMap::raw(
            self.source.clone(),
            g.target.clone(),
            self.map.iter().map(|&x| g.map[x]).collect(),
        ))
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.size];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size == self.target.size && self.is_injective()
    }

    pub fn inverse(&self) -> Result<GMap> {
        if !self.is_bijective() {
            return Err(Error::Shape("inverse of a non-bijective map".into()));
        }
        let mut inv = vec![0usize; self.source.size];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Ok(GMap::raw(self.target.clone(), self.source.clone(), inv))
    }
}

fn same_group(x: &GSet, y: &GSet) -> bool {
    Arc::ptr_eq(&x.group, &y.group) || x.group == y.group
}

/// Disjoint union with its two injections; Y's points are shifted up by |X|.
pub fn coproduct(x: &GSet, y: &GSet) -> Result<(GSet, GMap, GMap)> {
    if !same_group(x, y) {
        return Err(Error::Shape("coproduct over different groups".into()));
    }
    let size = x.size + y.size;
    let order = x.group.order();
    let mut action = Vec::with_capacity(order * size);
    for g in 0..order {
        for p in 0..x.size {
            action.push(x.act(g, p));
        }
        for p in 0..y.size {
            action.push(x.size + y.act(g, p));
        }
    }
    let obj = GSet::raw(x.group.clone(), size, action);
    let inl = GMap::raw(x.clone(), obj.clone(), (0..x.size).collect());
    let inr = GMap::raw(y.clone(), obj.clone(), (x.size..size).collect());
    Ok((obj, inl, inr))
}

/// Case analysis out of a coproduct built by `coproduct`.
pub fn copair(obj: &GSet, f: &GMap, g: &GMap) -> Result<GMap> {
    if f.target != g.target {
        return Err(Error::Shape("copair targets differ".into()));
    }
    if obj.size != f.source.size + g.source.size {
        return Err(Error::Shape("copair source is not the coproduct".into()));
    }
    let mut map = Vec::with_capacity(obj.size);
    map.extend_from_slice(&f.map);
    map.extend_from_slice(&g.map);
    GMap::new(obj.clone(), f.target.clone(), map)
}

/// Cartesian product with diagonal action; point (a,b) has index a·|Y| + b.
pub fn product(x: &GSet, y: &GSet) -> Result<(GSet, GMap, GMap)> {
    if !same_group(x, y) {
        return Err(Error::Shape("product over different groups".into()));
    }
    let size = x.size * y.size;
    let order = x.group.order();
    let mut action = Vec::with_capacity(order * size);
    for g in 0..order {
        for a in 0..x.size {
            for b in 0..y.size {
                action.push(x.act(g, a) * y.size + y.act(g, b));
            }
        }
    }
    let obj = GSet::raw(x.group.clone(), size, action);
    let p1 = GMap::raw(
        obj.clone(),
        x.clone(),
        (0..size).map(|i| i / y.size).collect(),
    );
    let p2 = GMap::raw(
        obj.clone(),
        y.clone(),
        (0..size).map(|i| i % y.size).collect(),
    );
    Ok((obj, p1, p2))
}

/// ⟨f, g⟩ : W → X×Y into the product built by `product`.
pub fn pairing(f: &GMap, g: &GMap) -> Result<GMap> {
    if f.source != g.source {
        return Err(Error::Shape("pairing sources differ".into()));
    }
    let (obj, _, _) = product(&f.target, &g.target)?;
    let map = (0..f.source.size)
        .map(|w| f.map[w] * g.target.size + g.map[w])
        .collect();
    GMap::new(f.source.clone(), obj, map)
}

/// A pullback square with its projections and point bookkeeping.
#[derive(Debug, Clone)]
pub struct PullbackSquare {
    pub object: GSet,
    /// Projection to the source of the first leg.
    pub p1: GMap,
    /// Projection to the source of the second leg.
    pub p2: GMap,
    /// Point i of `object` is the pair `pairs[i]`.
    pub pairs: Vec<(usize, usize)>,
}

impl PullbackSquare {
    /// The unique mediating map for a cone (a, b) with f∘a = g∘b.
    pub fn mediate(&self, a: &GMap, b: &GMap) -> Result<GMap> {
        if a.source != b.source {
            return Err(Error::Shape("cone legs have different sources".into()));
        }
        let mut index = HashMap::new();
        for (i, &pr) in self.pairs.iter().enumerate() {
            index.insert(pr, i);
        }
        let mut map = Vec::with_capacity(a.source.size);
        for w in 0..a.source.size {
            let key = (a.map[w], b.map[w]);
            let &i = index
                .get(&key)
                .ok_or_else(|| Error::Shape(format!("cone does not commute at point {w}")))?;
            map.push(i);
        }
        GMap::new(a.source.clone(), self.object.clone(), map)
    }
}

/// Pullback of f: A → C against g: B → C.
pub fn pullback(f: &GMap, g: &GMap) -> Result<PullbackSquare> {
    if f.target != g.target {
        return Err(Error::Shape("pullback legs have different targets".into()));
    }
    let group = f.source.group.clone();
    let mut pairs = Vec::new();
    for a in 0..f.source.size {
        for b in 0..g.source.size {
            if f.map[a] == g.map[b] {
                pairs.push((a, b));
            }
        }
    }
    let mut index = HashMap::new();
    for (i, &pr) in pairs.iter().enumerate() {
        index.insert(pr, i);
    }
    let size = pairs.len();
    let order = group.order();
    let mut action = Vec::with_capacity(order * size);
    for k in 0..order {
        for &(a, b) in &pairs {
            action.push(index[&(f.source.act(k, a), g.source.act(k, b))]);
        }
    }
    let object = GSet::raw(group, size, action);
    let p1 = GMap::raw(
        object.clone(),
        f.source.clone(),
        pairs.iter().map(|&(a, _)| a).collect(),
    );
    let p2 = GMap::raw(
        object.clone(),
        g.source.clone(),
        pairs.iter().map(|&(_, b)| b).collect(),
    );
    Ok(PullbackSquare {
        object,
        p1,
        p2,
        pairs,
    })
}

/// The distributivity data for N_g ∘ T_h: given h: A → X and g: X → Y, the
/// dependent product Π_g A → Y together with the pullback X ×_Y Π_g A and the
/// evaluation map into A.  The outer rectangle (over X → Y and Π → Y) is a
/// pullback.
#[derive(Debug, Clone)]
pub struct ExponentialDiagram {
    pub g: GMap,
    pub h: GMap,
    /// Π_g A: points are pairs (y, section of h over the fiber of g at y).
    pub pi: GSet,
    /// h′: Π_g A → Y.
    pub h_prime: GMap,
    /// The pullback X ×_Y Π_g A, with p1 → X and p2 → Π_g A (= g′).
    pub square: PullbackSquare,
    /// Evaluation f′: X ×_Y Π_g A → A, (x, (y,s)) ↦ s(x).
    pub eval: GMap,
    /// Point i of `pi` is `sections[i]`: the base point y and the section as a
    /// full-length table over X (usize::MAX off the fiber).
    pub sections: Vec<(usize, Vec<usize>)>,
}

/// Dependent product Π_g A for h: A → X along g: X → Y.
pub fn dependent_product(h: &GMap, g: &GMap) -> Result<ExponentialDiagram> {
    if h.target != g.source {
        return Err(Error::Shape(
            "dependent product requires h: A → X and g: X → Y".into(),
        ));
    }
    let group = g.source.group.clone();
    let x_size = g.source.size;
    let y_size = g.target.size;

    // size guard: the section count is a product over fibers
    let mut total: u128 = 0;
    for y in 0..y_size {
        let mut count: u128 = 1;
        for x in (0..x_size).filter(|&x| g.map[x] == y) {
            count *= h.map.iter().filter(|&&a| a == x).count() as u128;
            if count > 250_000 {
                return Err(Error::Resource(
                    "dependent product has more than 250000 sections".into(),
                ));
            }
        }
        total += count;
        if total > 250_000 {
            return Err(Error::Resource(
                "dependent product has more than 250000 sections".into(),
            ));
        }
    }

    // enumerate sections fiber by fiber
    let mut sections: Vec<(usize, Vec<usize>)> = Vec::new();
    for y in 0..y_size {
        let fiber: Vec<usize> = (0..x_size).filter(|&x| g.map[x] == y).collect();
        let options: Vec<Vec<usize>> = fiber
            .iter()
            .map(|&x| (0..h.source.size).filter(|&a| h.map[a] == x).collect())
            .collect();
        if options.iter().any(|o| o.is_empty()) {
            continue; // an empty fiber of h kills every section over y
        }
        // cartesian product over the fiber, odometer-style
        let mut choice = vec![0usize; fiber.len()];
        loop {
            let mut table = vec![usize::MAX; x_size];
            for (i, &x) in fiber.iter().enumerate() {
                table[x] = options[i][choice[i]];
            }
            sections.push((y, table));
            let mut i = fiber.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
            if fiber.is_empty() {
                break;
            }
        }
    }

    let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    for (i, s) in sections.iter().enumerate() {
        index.insert(s.clone(), i);
    }

    // action: k·(y, s) = (k·y, x ↦ k·s(k⁻¹·x))
    let size = sections.len();
    let order = group.order();
    let mut action = Vec::with_capacity(order * size);
    for k in 0..order {
        let kinv = group.inv(k);
        for (y, table) in &sections {
            let ky = g.target.act(k, *y);
            let mut moved = vec![usize::MAX; x_size];
            for x in 0..x_size {
                if g.map[x] == ky {
                    let pre = g.source.act(kinv, x);
                    moved[x] = h.source.act(k, table[pre]);
                }
            }
            action.push(index[&(ky, moved)]);
        }
    }
    let pi = GSet::raw(group, size, action);
    let h_prime = GMap::new(
        pi.clone(),
        g.target.clone(),
        sections.iter().map(|&(y, _)| y).collect(),
    )?;
    let square = pullback(g, &h_prime)?;
    let eval_map = square
        .pairs
        .iter()
        .map(|&(x, p)| sections[p].1[x])
        .collect();
    let eval = GMap::new(square.object.clone(), h.source.clone(), eval_map)?;
    Ok(ExponentialDiagram {
        g: g.clone(),
        h: h.clone(),
        pi,
        h_prime,
        square,
        eval,
        sections,
    })
}

/// A subgroup H ≤ G realized as a standalone group, with translation tables.
#[derive(Debug, Clone)]
pub struct SubgroupEmbedding {
    pub parent: Group,
    pub subgroup: Subgroup,
    /// H with its own element indices 0..|H|.
    pub group: Group,
    /// H index → parent element.
    pub elements: Vec<usize>,
    index_of: Vec<Option<usize>>,
}

impl SubgroupEmbedding {
    pub fn index_of(&self, parent_element: usize) -> Option<usize> {
        self.index_of[parent_element]
    }
}

pub fn subgroup_as_group(parent: &Group, h: &Subgroup) -> Result<SubgroupEmbedding> {
    let elements: Vec<usize> = h.elements().to_vec();
    let pos = |e: usize| elements.binary_search(&e).expect("closed");
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|&a| elements.iter().map(|&b| pos(parent.mul(a, b))).collect())
        .collect();
    let name = format!("{}<{}>", parent.name(), elements.len());
    let group = FiniteGroup::from_table(&table, name)?;
    let mut index_of = vec![None; parent.order()];
    for (i, &e) in elements.iter().enumerate() {
        index_of[e] = Some(i);
    }
    Ok(SubgroupEmbedding {
        parent: parent.clone(),
        subgroup: h.clone(),
        group,
        elements,
        index_of,
    })
}

/// Restrict a G-set to an H-set along the embedding.
pub fn restrict(emb: &SubgroupEmbedding, x: &GSet) -> Result<GSet> {
    if !(Arc::ptr_eq(&x.group, &emb.parent) || x.group == emb.parent) {
        return Err(Error::Shape("restriction of a set over the wrong group".into()));
    }
    let mut action = Vec::with_capacity(emb.group.order() * x.size);
    for &e in &emb.elements {
        for p in 0..x.size {
            action.push(x.act(e, p));
        }
    }
    GSet::new(emb.group.clone(), x.size, action)
}

/// Restrict a G-map to an H-map.
pub fn restrict_map(emb: &SubgroupEmbedding, f: &GMap) -> Result<GMap> {
    GMap::new(
        restrict(emb, &f.source)?,
        restrict(emb, &f.target)?,
        f.map.clone(),
    )
}

/// G ×_H X with its slot decomposition recorded.  Point index = slot·|X| + x,
/// where slot runs over left H-coset representatives (identity coset first,
/// represented by the identity element).
#[derive(Debug, Clone)]
pub struct Induced {
    pub emb: SubgroupEmbedding,
    pub base: GSet,
    pub total: GSet,
    /// Parent-element representative for each slot; `reps[0]` is the identity.
    pub reps: Vec<usize>,
}

impl Induced {
    #[inline]
    pub fn point(&self, slot: usize, x: usize) -> usize {
        slot * self.base.size + x
    }

    #[inline]
    pub fn decode(&self, p: usize) -> (usize, usize) {
        (p / self.base.size, p % self.base.size)
    }
}

pub fn induce(emb: &SubgroupEmbedding, x: &GSet) -> Result<Induced> {
    if !(Arc::ptr_eq(&x.group, &emb.group) || x.group == emb.group) {
        return Err(Error::Shape("induction of a set over the wrong group".into()));
    }
    let parent = &emb.parent;
    let mut reps = emb.subgroup.coset_reps(parent);
    // normalize: the identity coset is represented by the identity, first
    let id_pos = reps
        .iter()
        .position(|&r| emb.subgroup.contains(r))
        .expect("identity coset present");
    reps.remove(id_pos);
    reps.insert(0, parent.identity());
    // slot_of/witness: parent element g lies in coset reps[slot_of[g]]·H with
    // g = reps[slot] · h_of[g]
    let mut slot_of = vec![usize::MAX; parent.order()];
    let mut h_of = vec![usize::MAX; parent.order()];
    for (slot, &r) in reps.iter().enumerate() {
        for &h in emb.subgroup.elements() {
            let g = parent.mul(r, h);
            slot_of[g] = slot;
            h_of[g] = emb.index_of(h).expect("subgroup element");
        }
    }
    let size = reps.len() * x.size;
    let order = parent.order();
    let mut action = Vec::with_capacity(order * size);
    for g in 0..order {
        for slot in 0..reps.len() {
            let gr = parent.mul(g, reps[slot]);
            let (new_slot, h) = (slot_of[gr], h_of[gr]);
            for p in 0..x.size {
                action.push(new_slot * x.size + x.act(h, p));
            }
        }
    }
    let total = GSet::new(parent.clone(), size, action)?;
    Ok(Induced {
        emb: emb.clone(),
        base: x.clone(),
        total,
        reps,
    })
}

/// Apply G ×_H (−) to an H-map, between already-induced source and target.
pub fn induce_map(src: &Induced, tgt: &Induced, f: &GMap) -> Result<GMap> {
    if f.source != src.base || f.target != tgt.base {
        return Err(Error::Shape("induce_map endpoints do not match".into()));
    }
    if src.reps != tgt.reps {
        return Err(Error::Shape("inductions use different coset labels".into()));
    }
    let mut map = Vec::with_capacity(src.total.size);
    for p in 0..src.total.size {
        let (slot, x) = src.decode(p);
        map.push(tgt.point(slot, f.map[x]));
    }
    GMap::new(src.total.clone(), tgt.total.clone(), map)
}

/// Counit ε_T : G ×_H i*T → T, (r, t) ↦ r·t.
pub fn induction_counit(emb: &SubgroupEmbedding, t: &GSet) -> Result<(Induced, GMap)> {
    let ind = induce(emb, &restrict(emb, t)?)?;
    let mut map = Vec::with_capacity(ind.total.size);
    for p in 0..ind.total.size {
        let (slot, x) = ind.decode(p);
        map.push(t.act(ind.reps[slot], x));
    }
    let counit = GMap::new(ind.total.clone(), t.clone(), map)?;
    Ok((ind, counit))
}

/// Map_H(G, X) with its function-table points recorded.  A point is the tuple
/// of values on right-coset representatives Hq (identity first).
#[derive(Debug, Clone)]
pub struct Coinduced {
    pub emb: SubgroupEmbedding,
    pub base: GSet,
    pub total: GSet,
    /// Right-coset representatives; `reps[0]` is the identity.
    pub reps: Vec<usize>,
    /// Point i of `total` takes value `points[i][j]` at `reps[j]`.
    pub points: Vec<Vec<usize>>,
}

impl Coinduced {
    /// Evaluate point `p` of the coinduced set at an arbitrary group element:
    /// write g = h·reps[j], then f(g) = h·f(reps[j]).
    pub fn value_at(&self, p: usize, g: usize) -> usize {
        let parent = &self.emb.parent;
        for (j, &q) in self.reps.iter().enumerate() {
            // g = h q  ⇔  h = g q⁻¹ ∈ H
            let h = parent.mul(g, parent.inv(q));
            if let Some(hi) = self.emb.index_of(h) {
                return self.base.act(hi, self.points[p][j]);
            }
        }
        unreachable!("right cosets cover the group")
    }
}

pub fn coinduce(emb: &SubgroupEmbedding, x: &GSet) -> Result<Coinduced> {
    if !(Arc::ptr_eq(&x.group, &emb.group) || x.group == emb.group) {
        return Err(Error::Shape("coinduction of a set over the wrong group".into()));
    }
    let parent = &emb.parent;
    // right-coset representatives Hq, identity first
    let mut covered = vec![false; parent.order()];
    let mut reps = vec![parent.identity()];
    for &h in emb.subgroup.elements() {
        covered[h] = true;
    }
    for q in 0..parent.order() {
        if !covered[q] {
            reps.push(q);
            for &h in emb.subgroup.elements() {
                covered[parent.mul(h, q)] = true;
            }
        }
    }
    let m = reps.len();
    // points: all tuples X^m
    let count = x.size.checked_pow(m as u32).ok_or_else(|| {
        Error::Resource("coinduced set too large".into())
    })?;
    let mut points = Vec::with_capacity(count);
    let mut tuple = vec![0usize; m];
    if x.size > 0 || m == 0 {
        loop {
            points.push(tuple.clone());
            let mut i = m;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                tuple[i] += 1;
                if tuple[i] < x.size {
                    break;
                }
                tuple[i] = 0;
            }
            if tuple.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    for (i, t) in points.iter().enumerate() {
        index.insert(t.clone(), i);
    }
    // (g'·f)(q_i) = f(q_i g') = h · f(q_j)  where  q_i g' = h q_j
    let mut decomp = vec![(0usize, 0usize); m * parent.order()];
    for (i, &q) in reps.iter().enumerate() {
        for gp in 0..parent.order() {
            let qg = parent.mul(q, gp);
            let j = reps
                .iter()
                .position(|&r| emb.index_of(parent.mul(qg, parent.inv(r))).is_some())
                .expect("cover");
            let h = emb
                .index_of(parent.mul(qg, parent.inv(reps[j])))
                .expect("in H");
            decomp[i * parent.order() + gp] = (j, h);
        }
    }
    let size = points.len();
    let mut action = Vec::with_capacity(parent.order() * size);
    for gp in 0..parent.order() {
        for t in &points {
            let moved: Vec<usize> = (0..m)
                .map(|i| {
                    let (j, h) = decomp[i * parent.order() + gp];
                    x.act(h, t[j])
                })
                .collect();
            action.push(index[&moved]);
        }
    }
    let total = GSet::new(parent.clone(), size, action)?;
    Ok(Coinduced {
        emb: emb.clone(),
        base: x.clone(),
        total,
        reps,
        points,
    })
}

/// The constructive content of "induction is essentially a sieve": any
/// equivariant map into an induced G-set is itself induced.
#[derive(Debug, Clone)]
pub struct SieveFactorization {
    /// The H-set T carved out of T′ (its points, in T′ labels).
    pub t_points: Vec<usize>,
    /// T as an H-set.
    pub t: GSet,
    /// The H-map T → S.
    pub map: GMap,
    /// G ×_H T.
    pub induced_t: Induced,
    /// The equivariant isomorphism G ×_H T → T′.
    pub iso: GMap,
}

pub fn sieve_factorization(ind: &Induced, f: &GMap) -> Result<SieveFactorization> {
    if f.target != ind.total {
        return Err(Error::Shape(
            "sieve factorization requires a map into the induced set".into(),
        ));
    }
    let emb = &ind.emb;
    // T = the preimage of the identity slot (the pullback of S → i*Ind S ← i*T′)
    let t_points: Vec<usize> = (0..f.source.size)
        .filter(|&p| ind.decode(f.map[p]).0 == 0)
        .collect();
    let pos = |p: usize| t_points.binary_search(&p).expect("closed under H");
    let mut t_action = Vec::with_capacity(emb.group.order() * t_points.len());
    for &h in &emb.elements {
        for &p in &t_points {
            t_action.push(pos(f.source.act(h, p)));
        }
    }
    let t = GSet::new(emb.group.clone(), t_points.len(), t_action)?;
    let map = GMap::new(
        t.clone(),
        ind.base.clone(),
        t_points.iter().map(|&p| ind.decode(f.map[p]).1).collect(),
    )?;
    let induced_t = induce(emb, &t)?;
    // iso: (slot, t) ↦ reps[slot] · t  in T′
    let mut iso_map = Vec::with_capacity(induced_t.total.size);
    for p in 0..induced_t.total.size {
        let (slot, ti) = induced_t.decode(p);
        iso_map.push(f.source.act(induced_t.reps[slot], t_points[ti]));
    }
    let iso = GMap::new(induced_t.total.clone(), f.source.clone(), iso_map)?;
    if !iso.is_bijective() {
        return Err(Error::Shape(
            "sieve factorization failed to produce an isomorphism".into(),
        ));
    }
    Ok(SieveFactorization {
        t_points,
        t,
        map,
        induced_t,
        iso,
    })
}

/// A canonical representative of the isomorphism class of a G-set, with the
/// relabeling onto it.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub object: GSet,
    /// Bijection: point x of the input ↦ point relabel[x] of `object`.
    pub relabel: Vec<usize>,
}

/// Canonical form: the disjoint union of orbits G/H_c, one per orbit of X,
/// with H_c the lexicographically-least representative of the stabilizer's
/// conjugacy class, blocks sorted by class label.
pub fn canonicalize(x: &GSet) -> Result<Canonical> {
    let group = &x.group;
    let lat = subgroup_lattice(group)?;
    let orbits = x.orbit_decompose()?; // already sorted by (class, rep)
    let mut object = GSet::empty(group.clone());
    let mut relabel = vec![usize::MAX; x.size];
    for o in &orbits {
        let h_c = lat.subgroup(lat.class_rep(o.class)).clone();
        // w conjugates the stabilizer onto the class representative
        let w = (0..group.order())
            .find(|&w| o.stabilizer.conjugate(group, w) == h_c)
            .expect("conjugate to class representative");
        let (block, coset_of) = orbit_with_cosets(group, &h_c);
        let offset = object.size;
        // y = u·rep  ↦  coset of u·w⁻¹ in G/H_c
        let winv = group.inv(w);
        for u in 0..group.order() {
            let y = x.act(u, o.rep);
            if relabel[y] == usize::MAX {
                relabel[y] = offset + coset_of[group.mul(u, winv)];
            }
        }
        let (next, _, _) = coproduct(&object, &block)?;
        object = next;
    }
    // sanity: relabel must be an equivariant bijection
    debug_assert!(GMap::new(x.clone(), object.clone(), relabel.clone())
        .map(|m| m.is_bijective())
        .unwrap_or(false));
    Ok(Canonical { object, relabel })
}

/// Isomorphism test with witness.
pub fn is_isomorphic(x: &GSet, y: &GSet) -> Result<Option<GMap>> {
    if !same_group(x, y) {
        return Err(Error::Shape("isomorphism test over different groups".into()));
    }
    let cx = canonicalize(x)?;
    let cy = canonicalize(y)?;
    if cx.object != cy.object {
        return Ok(None);
    }
    let to_canon = GMap::new(x.clone(), cx.object.clone(), cx.relabel)?;
    let from_canon = GMap::new(y.clone(), cy.object, cy.relabel)?.inverse()?;
    Ok(Some(to_canon.then(&from_canon)?))
}

/// One representative per isomorphism class of G-sets with at most `bound`
/// points: every multiset of canonical orbits, in a deterministic order.
pub fn all_canonical_gsets(group: &Group, bound: usize) -> Result<Vec<GSet>> {
    let lat = subgroup_lattice(group)?;
    let orbits: Vec<GSet> = (0..lat.classes().len())
        .map(|c| orbit(group, lat.subgroup(lat.class_rep(c))))
        .filter(|o| o.size() <= bound)
        .collect();
    let mut out = Vec::new();
    // multisets as non-decreasing sequences of orbit-class indices
    fn rec(
        orbits: &[GSet],
        from: usize,
        current: &GSet,
        remaining: usize,
        out: &mut Vec<GSet>,
    ) -> Result<()> {
        out.push(current.clone());
        for i in from..orbits.len() {
            if orbits[i].size() <= remaining {
                let (next, _, _) = coproduct(current, &orbits[i])?;
                rec(orbits, i, &next, remaining - orbits[i].size(), out)?;
            }
        }
        Ok(())
    }
    rec(&orbits, 0, &GSet::empty(group.clone()), bound, &mut out)?;
    Ok(out)
}

/// All equivariant maps X → Y, in a deterministic order.
pub fn all_gmaps(x: &GSet, y: &GSet) -> Result<Vec<GMap>> {
    if !same_group(x, y) {
        return Err(Error::Shape("maps between sets over different groups".into()));
    }
    let group = &x.group;
    let orbits = {
        // plain scan order (least point first) keeps the output deterministic
        let mut seen = vec![false; x.size];
        let mut list = Vec::new();
        for p in 0..x.size {
            if !seen[p] {
                let pts = x.orbit_of(p);
                for &q in &pts {
                    seen[q] = true;
                }
                list.push(p);
            }
        }
        list
    };
    // for each orbit rep, the valid images: y with Stab(rep) ⊆ Stab(y)
    let choices: Vec<Vec<usize>> = orbits
        .iter()
        .map(|&rep| {
            let s = x.stabilizer(rep);
            (0..y.size)
                .filter(|&q| s.elements().iter().all(|&g| y.act(g, q) == q))
                .collect()
        })
        .collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; orbits.len()];
    loop {
        let mut map = vec![usize::MAX; x.size];
        for (i, &rep) in orbits.iter().enumerate() {
            let target = choices[i][pick[i]];
            for g in 0..group.order() {
                map[x.act(g, rep)] = y.act(g, target);
            }
        }
        out.push(GMap::new(x.clone(), y.clone(), map)?);
        let mut i = orbits.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
        }
        if pick.iter().all(|&c| c == 0) {
            break;
        }
        if orbits.is_empty() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn c2() -> Group {
        FiniteGroup::cyclic(2).unwrap()
    }
    fn c4() -> Group {
        FiniteGroup::cyclic(4).unwrap()
    }

    fn free_orbit(g: &Group) -> GSet {
        orbit(g, &Subgroup::trivial(g))
    }

    #[test]
    fn orbits_basic() {
        let g = c2();
        let fixed = orbit(&g, &Subgroup::full(&g));
        assert_eq!(fixed.size(), 1);
        let free = free_orbit(&g);
        assert_eq!(free.size(), 2);
        assert_eq!(free.stabilizer(0).order(), 1);

        // orbit(C2) in cyclic(4): 2 points, each stabilized by C2
        let g4 = c4();
        let c2_in_c4 = Subgroup::generated(&g4, &[2]);
        let o = orbit(&g4, &c2_in_c4);
        assert_eq!(o.size(), 2);
        for p in 0..2 {
            assert_eq!(o.stabilizer(p), c2_in_c4);
        }
    }

    #[test]
    fn orbit_decompose_examples() {
        let g = c2();
        let free = free_orbit(&g);
        let d = free.orbit_decompose().unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].stabilizer.order(), 1);

        assert!(GSet::empty(g.clone()).orbit_decompose().unwrap().is_empty());

        // 2 fixed points + 1 free orbit on C2 (the Map(C2,{a,b}) shape)
        let (xy, _, _) = coproduct(&GSet::trivial(g.clone(), 2), &free).unwrap();
        let d = xy.orbit_decompose().unwrap();
        assert_eq!(d.len(), 3);
        let mut stab_orders: Vec<usize> = d.iter().map(|o| o.stabilizer.order()).collect();
        stab_orders.sort_unstable();
        assert_eq!(stab_orders, vec![1, 2, 2]);
    }

    #[test]
    fn coproduct_examples() {
        let g = c2();
        let x = free_orbit(&g);
        let (xe, inl, _) = coproduct(&x, &GSet::empty(g.clone())).unwrap();
        assert_eq!(xe.size(), x.size());
        assert!(inl.is_bijective());

        let pt = GSet::point(g.clone());
        let (two_fixed, _, _) = coproduct(&pt, &pt).unwrap();
        assert_eq!(two_fixed.orbit_decompose().unwrap().len(), 2);

        let (mixed, _, _) = coproduct(&x, &pt).unwrap();
        let ot = mixed.orbit_type().unwrap();
        assert_eq!(ot.classes.len(), 2);
    }

    #[test]
    fn pullback_examples() {
        let g = c2();
        let x = free_orbit(&g);
        let pt = GSet::point(g.clone());
        // X → pt ← pt is X
        let sq = pullback(&GMap::to_point(&x), &GMap::identity(&pt)).unwrap();
        assert!(sq.p1.is_bijective());

        // free against free over the point: 4 points, all free
        let sq = pullback(&GMap::to_point(&x), &GMap::to_point(&x)).unwrap();
        assert_eq!(sq.object.size(), 4);
        let d = sq.object.orbit_decompose().unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|o| o.stabilizer.order() == 1));

        // pullback of id against f is the source of f
        let f = GMap::to_point(&x);
        let sq = pullback(&GMap::identity(&pt), &f).unwrap();
        assert!(sq.p2.is_bijective());
    }

    #[test]
    fn pullback_mediating_map() {
        let g = c2();
        let x = free_orbit(&g);
        let f = GMap::to_point(&x);
        let sq = pullback(&f, &f).unwrap();
        // cone: (id, id) through the diagonal
        let m = sq.mediate(&GMap::identity(&x), &GMap::identity(&x)).unwrap();
        assert!(m.then(&sq.p1).unwrap() == GMap::identity(&x));
        assert!(m.then(&sq.p2).unwrap() == GMap::identity(&x));
    }

    #[test]
    fn dependent_product_identity() {
        let g = c2();
        let x = free_orbit(&g);
        let h = GMap::to_point(&x); // A = X over pt? use h: X → pt, g = id on pt
        let e = dependent_product(&h, &GMap::identity(&GSet::point(g.clone()))).unwrap();
        // Π_id A ≅ A
        assert_eq!(e.pi.size(), x.size());
        assert!(is_isomorphic(&e.pi, &x).unwrap().is_some());
    }

    #[test]
    fn dependent_product_c2_fold() {
        // g: C2/e → pt, h: C2/e ⊔ C2/e → C2/e the fold map.
        let g2 = c2();
        let free = free_orbit(&g2);
        let (two_free, i1, i2) = coproduct(&free, &free).unwrap();
        let h = copair(&two_free, &GMap::identity(&free), &GMap::identity(&free)).unwrap();
        let _ = (i1, i2);
        let g = GMap::to_point(&free);
        let e = dependent_product(&h, &g).unwrap();
        assert_eq!(e.pi.size(), 4);
        let d = e.pi.orbit_decompose().unwrap();
        assert_eq!(d.len(), 3);
        let mut sizes: Vec<usize> = d.iter().map(|o| o.points.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2]);
    }

    #[test]
    fn dependent_product_c4_double_cover() {
        // g: C4/e → pt, h: the 2-fold cover (C4/e ⊔ C4/e → C4/e).
        let g4 = c4();
        let free = free_orbit(&g4);
        let (cover, _, _) = coproduct(&free, &free).unwrap();
        let h = copair(&cover, &GMap::identity(&free), &GMap::identity(&free)).unwrap();
        let e = dependent_product(&h, &GMap::to_point(&free)).unwrap();
        assert_eq!(e.pi.size(), 16);
        let d = e.pi.orbit_decompose().unwrap();
        let mut sizes: Vec<usize> = d.iter().map(|o| o.points.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 4, 4, 4]);
    }

    #[test]
    fn exponential_outer_rectangle_is_pullback() {
        // compare X ×_Y Π against the pullback of (g∘h, h′) directly
        let g2 = c2();
        let free = free_orbit(&g2);
        let (two_free, _, _) = coproduct(&free, &free).unwrap();
        let h = copair(&two_free, &GMap::identity(&free), &GMap::identity(&free)).unwrap();
        let g = GMap::to_point(&free);
        let e = dependent_product(&h, &g).unwrap();
        // outer rectangle: top edge h∘f′ must agree with the pullback
        // projection to X, so that P really is the pullback of g along h′
        assert_eq!(e.eval.then(&e.h).unwrap(), e.square.p1);
        // and the square over Y commutes
        assert_eq!(
            e.square.p1.then(&e.g).unwrap(),
            e.square.p2.then(&e.h_prime).unwrap()
        );
    }

    #[test]
    fn change_of_groups_examples() {
        // induce(e ≤ C2, pt) → C2/e
        let g2 = c2();
        let emb = subgroup_as_group(&g2, &Subgroup::trivial(&g2)).unwrap();
        let ind = induce(&emb, &GSet::point(emb.group.clone())).unwrap();
        assert_eq!(ind.total.size(), 2);
        assert_eq!(ind.total.stabilizer(0).order(), 1);

        // restrict(C2 ≤ C4, C4/e) → two free C2-orbits
        let g4 = c4();
        let emb = subgroup_as_group(&g4, &Subgroup::generated(&g4, &[2])).unwrap();
        let r = restrict(&emb, &free_orbit(&g4)).unwrap();
        let d = r.orbit_decompose().unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|o| o.stabilizer.order() == 1));

        // coinduce(e ≤ C2, 2 trivial points) → 4 points, 2 fixed + 1 free
        let emb = subgroup_as_group(&g2, &Subgroup::trivial(&g2)).unwrap();
        let co = coinduce(&emb, &GSet::trivial(emb.group.clone(), 2)).unwrap();
        assert_eq!(co.total.size(), 4);
        let d = co.total.orbit_decompose().unwrap();
        let mut sizes: Vec<usize> = d.iter().map(|o| o.points.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2]);
    }

    #[test]
    fn induction_counit_is_surjective_equivariant() {
        let g4 = c4();
        let emb = subgroup_as_group(&g4, &Subgroup::generated(&g4, &[2])).unwrap();
        for t in [
            free_orbit(&g4),
            orbit(&g4, &Subgroup::generated(&g4, &[2])),
            GSet::point(g4.clone()),
        ] {
            let (_, counit) = induction_counit(&emb, &t).unwrap();
            assert!(counit.is_surjective());
        }
    }

    #[test]
    fn sieve_factorization_examples() {
        // identity on an induced set recovers the base
        let g2 = c2();
        let emb = subgroup_as_group(&g2, &Subgroup::trivial(&g2)).unwrap();
        let s = GSet::point(emb.group.clone());
        let ind = induce(&emb, &s).unwrap();
        let f = GMap::identity(&ind.total);
        let sf = sieve_factorization(&ind, &f).unwrap();
        assert_eq!(sf.t.size(), 1);
        assert!(is_isomorphic(&sf.t, &s).unwrap().is_some());

        // C4, H = C2: T′ = C4/e mapping onto Ind_{C2}^{C4}(C2/e) ≅ C4/e
        let g4 = c4();
        let emb = subgroup_as_group(&g4, &Subgroup::generated(&g4, &[2])).unwrap();
        let h_free = orbit(&emb.group, &Subgroup::trivial(&emb.group));
        let ind = induce(&emb, &h_free).unwrap();
        assert_eq!(ind.total.size(), 4);
        let tp = free_orbit(&g4);
        let f = all_gmaps(&tp, &ind.total)
            .unwrap()
            .into_iter()
            .next()
            .expect("a map exists");
        let sf = sieve_factorization(&ind, &f).unwrap();
        assert_eq!(sf.t.size(), 2);
        assert!(is_isomorphic(&sf.t, &h_free).unwrap().is_some());
        // the triangle commutes: iso then f equals induced map then counit shape;
        // check pointwise that f(iso(slot,t)) = slot-translate of map(t)
        for p in 0..sf.induced_t.total.size() {
            let (slot, ti) = sf.induced_t.decode(p);
            let lhs = f.apply(sf.iso.apply(p));
            let rhs = ind
                .total
                .act(sf.induced_t.reps[slot], ind.point(0, sf.map.apply(ti)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn canonicalize_and_isomorphism() {
        let g = c2();
        let free = free_orbit(&g);
        let pt = GSet::point(g.clone());
        // two different labelings of C2/e ⊔ pt
        let (a, _, _) = coproduct(&free, &pt).unwrap();
        let (b, _, _) = coproduct(&pt, &free).unwrap();
        let w = is_isomorphic(&a, &b).unwrap().expect("isomorphic");
        assert!(w.is_bijective());

        // X vs itself: identity-quality witness
        let w = is_isomorphic(&a, &a).unwrap().expect("isomorphic");
        assert!(w.is_bijective());

        // C2/e vs pt ⊔ pt: not isomorphic
        let (two_pts, _, _) = coproduct(&pt, &pt).unwrap();
        assert!(is_isomorphic(&free, &two_pts).unwrap().is_none());

        // idempotence
        let c1 = canonicalize(&a).unwrap();
        let c2_ = canonicalize(&c1.object).unwrap();
        assert_eq!(c1.object, c2_.object);
        assert_eq!(c2_.relabel, (0..c1.object.size()).collect::<Vec<_>>());
    }

    #[test]
    fn all_gmaps_counts() {
        let g = c2();
        let free = free_orbit(&g);
        let pt = GSet::point(g.clone());
        assert_eq!(all_gmaps(&free, &free).unwrap().len(), 2);
        assert_eq!(all_gmaps(&free, &pt).unwrap().len(), 1);
        assert_eq!(all_gmaps(&pt, &free).unwrap().len(), 0);
        assert_eq!(all_gmaps(&GSet::empty(g.clone()), &pt).unwrap().len(), 1);
    }

    #[test]
    fn product_and_pairing() {
        let g = c2();
        let free = free_orbit(&g);
        let (p, p1, p2) = product(&free, &free).unwrap();
        assert_eq!(p.size(), 4);
        let diag = pairing(&GMap::identity(&free), &GMap::identity(&free)).unwrap();
        assert_eq!(diag.then(&p1).unwrap(), GMap::identity(&free));
        assert_eq!(diag.then(&p2).unwrap(), GMap::identity(&free));
    }
}
