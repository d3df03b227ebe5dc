//! Finite groups as explicit multiplication tables, with subgroup lattice,
//! conjugacy, and double-coset combinatorics.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Orders beyond this make exhaustive lattice/bispan work intractable.
pub const MAX_GROUP_ORDER: usize = 64;

pub type Group = Arc<FiniteGroup>;

pub struct FiniteGroup {
    order: usize,
    /// Row-major table: `mul[a * order + b] = a * b`.
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
    name: String,
    lattice: OnceLock<SubgroupLattice>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.mul == other.mul
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validate an explicit multiplication table and wrap it up.
    ///
    /// Fails (naming the first offending triple) rather than returning an
    /// invalid table.
    pub fn from_table(table: &[Vec<usize>], name: impl Into<String>) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!(
                "table is not square ({n} rows)"
            )));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in table {
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!(
                        "entry {v} out of range 0..{n}"
                    )));
                }
                mul.push(v);
            }
        }
        // two-sided identity
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity element".into()))?;
        // two-sided inverses
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| mul[x * n + y] == identity && mul[y * n + x] == identity) {
                Some(y) => inv[x] = y,
                None => {
                    return Err(Error::InvalidGroup(format!(
                        "element {x} has no two-sided inverse"
                    )))
                }
            }
        }
        // associativity, exhaustively
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at triple ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(FiniteGroup {
            order: n,
            mul,
            inv,
            identity,
            name: name.into(),
            lattice: OnceLock::new(),
        }))
    }

    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic(0) is empty".into()));
        }
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_table(&table, format!("C{n}"))
    }

    pub fn klein4() -> Group {
        let a = FiniteGroup::cyclic(2).expect("C2");
        let b = FiniteGroup::cyclic(2).expect("C2");
        let g = FiniteGroup::product(&a, &b).expect("C2xC2");
        Arc::new(FiniteGroup {
            name: "V4".into(),
            order: g.order,
            mul: g.mul.clone(),
            inv: g.inv.clone(),
            identity: g.identity,
            lattice: OnceLock::new(),
        })
    }

    /// Symmetric group on `n` letters, `n <= 4`.  Element 0 is the identity;
    /// permutations are ordered lexicographically by their one-line notation.
    pub fn symmetric(n: usize) -> Result<Group> {
        if n == 0 || n > 4 {
            return Err(Error::InvalidGroup(format!(
                "symmetric({n}) unsupported; need 1 <= n <= 4"
            )));
        }
        let perms = permutations(n);
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).expect("perm");
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (a*b)(i) = a(b(i))
                        let comp: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                        index_of(&comp)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table, format!("S{n}"))
    }

    pub fn product(a: &Group, b: &Group) -> Result<Group> {
        let n = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut table = vec![vec![0usize; n]; n];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        table[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                    }
                }
            }
        }
        FiniteGroup::from_table(&table, format!("{}x{}", a.name, b.name))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Multiplication table rows, for serialization.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

/// All permutations of 0..n in lexicographic order, identity first.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<usize>, // sorted
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.sort_unstable();
        elements.dedup();
        if !elements.contains(&group.identity()) {
            return Err(Error::InvalidGroup(
                "subgroup does not contain the identity".into(),
            ));
        }
        for &a in &elements {
            if a >= group.order() {
                return Err(Error::InvalidGroup(format!("element {a} out of range")));
            }
            if elements.binary_search(&group.inv(a)).is_err() {
                return Err(Error::InvalidGroup(format!(
                    "subgroup not closed under inverse of {a}"
                )));
            }
            for &b in &elements {
                if elements.binary_search(&group.mul(a, b)).is_err() {
                    return Err(Error::InvalidGroup(format!(
                        "subgroup not closed under product {a}*{b}"
                    )));
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; group.order()];
        seen[group.identity()] = true;
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [group.mul(x, g), group.mul(x, group.inv(g))] {
                    if !seen[y] {
                        seen[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        let elements = (0..group.order()).filter(|&x| seen[x]).collect();
        Subgroup { elements }
    }

    pub fn trivial(group: &FiniteGroup) -> Subgroup {
        Subgroup {
            elements: vec![group.identity()],
        }
    }

    pub fn full(group: &FiniteGroup) -> Subgroup {
        Subgroup {
            elements: (0..group.order()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_contained_in(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn conjugate(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut elements: Vec<usize> = self
            .elements
            .iter()
            .map(|&x| group.conjugate(g, x))
            .collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elements = self
            .elements
            .iter()
            .copied()
            .filter(|&g| other.contains(g))
            .collect();
        Subgroup { elements }
    }

    /// Left-coset representatives of this subgroup, each coset represented by
    /// its least element, in increasing order.  The identity coset comes first.
    pub fn coset_reps(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut covered = vec![false; group.order()];
        let mut reps = Vec::new();
        for g in 0..group.order() {
            if !covered[g] {
                reps.push(g);
                for &h in &self.elements {
                    covered[group.mul(g, h)] = true;
                }
            }
        }
        reps
    }
}

/// The complete subgroup lattice of a finite group.
#[derive(Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

impl SubgroupLattice {
    fn build(group: &FiniteGroup) -> SubgroupLattice {
        // BFS over generated subgroups: every subgroup arises by repeatedly
        // adjoining a generator to a smaller one.
        let mut found: Vec<Subgroup> = vec![Subgroup::trivial(group)];
        let mut queue: Vec<Subgroup> = found.clone();
        while let Some(h) = queue.pop() {
            for g in 0..group.order() {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.elements.clone();
                gens.push(g);
                let bigger = Subgroup::generated(group, &gens);
                if !found.contains(&bigger) {
                    found.push(bigger.clone());
                    queue.push(bigger);
                }
            }
        }
        found.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));

        let n = found.len();
        let index_of = |s: &Subgroup| found.iter().position(|t| t == s).expect("lattice member");
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = Vec::new();
            for g in 0..group.order() {
                let j = index_of(&found[i].conjugate(group, g));
                if !members.contains(&j) {
                    members.push(j);
                }
            }
            members.sort_unstable();
            for &j in &members {
                class_of[j] = c;
            }
            classes.push(members);
        }
        let leq = found
            .iter()
            .map(|a| found.iter().map(|b| a.is_contained_in(b)).collect())
            .collect();
        SubgroupLattice {
            subgroups: found,
            class_of,
            classes,
            leq,
        }
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.subgroups
            .binary_search_by(|t| (t.order(), t.elements()).cmp(&(s.order(), s.elements())))
            .ok()
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    /// Containment: `subgroup(i)` is contained in `subgroup(j)`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Lexicographically least member of a conjugacy class.
    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }
}

/// The subgroup lattice of `group`, computed once and cached.
pub fn subgroup_lattice(group: &FiniteGroup) -> Result<&SubgroupLattice> {
    if group.order() > MAX_GROUP_ORDER {
        return Err(Error::Resource(format!(
            "group order {} exceeds the lattice bound {}",
            group.order(),
            MAX_GROUP_ORDER
        )));
    }
    Ok(group.lattice.get_or_init(|| SubgroupLattice::build(group)))
}

/// True iff some conjugate of `k` is contained in `h`.
pub fn is_subconjugate(group: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> bool {
    if k.order() > h.order() || h.order() % k.order() != 0 {
        return false;
    }
    (0..group.order()).any(|g| k.conjugate(group, g).is_contained_in(h))
}

/// One representative per H\G/K double coset, least-first.
pub fn double_cosets(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let mut covered = vec![false; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if covered[g] {
            continue;
        }
        reps.push(g);
        for &a in h.elements() {
            for &b in k.elements() {
                covered[group.mul(group.mul(a, g), b)] = true;
            }
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_4_basics() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.inv(1), 3);
    }

    #[test]
    fn klein4_nonidentity_elements_self_inverse() {
        let g = FiniteGroup::klein4();
        assert_eq!(g.order(), 4);
        for x in 1..4 {
            assert_eq!(g.inv(x), x);
            assert_eq!(g.element_order(x), 2);
        }
    }

    #[test]
    fn symmetric_3_element_orders() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        // exhaustive order computation over the table
        let mut counts = [0usize; 7];
        for x in 0..6 {
            counts[g.element_order(x)] += 1;
        }
        assert_eq!(counts[1], 1);
        assert_eq!(counts[2], 3);
        assert_eq!(counts[3], 2);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // non-associative magma with identity: a "subtraction-like" table
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        let err = FiniteGroup::from_table(&table, "bad").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("associativity") || msg.contains("inverse"), "{msg}");

        // missing identity
        let table = vec![vec![1, 0], vec![1, 0]];
        assert!(FiniteGroup::from_table(&table, "bad").is_err());
    }

    #[test]
    fn lattice_cyclic_4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let lat = subgroup_lattice(&g).unwrap();
        assert_eq!(lat.len(), 3);
        let orders: Vec<usize> = lat.subgroups().iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
    }

    #[test]
    fn lattice_cyclic_2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(subgroup_lattice(&g).unwrap().len(), 2);
    }

    /// Independent oracle: enumerate all subsets of S3 and keep the ones
    /// closed under the group operations.
    #[test]
    fn lattice_sym3_against_subset_oracle() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let lat = subgroup_lattice(&g).unwrap();
        let mut oracle = 0usize;
        for mask in 0u32..(1 << 6) {
            let elems: Vec<usize> = (0..6).filter(|&i| mask & (1 << i) != 0).collect();
            if elems.is_empty() {
                continue;
            }
            if Subgroup::new(&g, elems).is_ok() {
                oracle += 1;
            }
        }
        assert_eq!(lat.len(), oracle);
        assert_eq!(lat.len(), 6);
        // 1 + 3 + 1 + 1 by order 1, 2, 3, 6
        let mut by_order = std::collections::BTreeMap::new();
        for s in lat.subgroups() {
            *by_order.entry(s.order()).or_insert(0usize) += 1;
        }
        assert_eq!(by_order.get(&1), Some(&1));
        assert_eq!(by_order.get(&2), Some(&3));
        assert_eq!(by_order.get(&3), Some(&1));
        assert_eq!(by_order.get(&6), Some(&1));
    }

    #[test]
    fn lattice_is_conjugation_stable() {
        for g in [
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::klein4(),
        ] {
            let lat = subgroup_lattice(&g).unwrap();
            for s in lat.subgroups() {
                for x in 0..g.order() {
                    let c = s.conjugate(&g, x);
                    let i = lat.index_of(&c).expect("conjugate in lattice");
                    assert_eq!(
                        lat.class_of(i),
                        lat.class_of(lat.index_of(s).unwrap()),
                        "conjugation must preserve classes"
                    );
                }
            }
        }
    }

    #[test]
    fn subconjugacy() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let lat = subgroup_lattice(&g).unwrap();
        let order2: Vec<&Subgroup> = lat.subgroups().iter().filter(|s| s.order() == 2).collect();
        assert_eq!(order2.len(), 3);
        // all order-2 subgroups of S3 are conjugate
        assert!(is_subconjugate(&g, order2[0], order2[1]));
        assert!(is_subconjugate(&g, order2[1], order2[2]));
        // trivial subgroup is subconjugate to anything
        let e = Subgroup::trivial(&g);
        for s in lat.subgroups() {
            assert!(is_subconjugate(&g, &e, s));
        }

        let c4 = FiniteGroup::cyclic(4).unwrap();
        let full = Subgroup::full(&c4);
        let c2 = Subgroup::generated(&c4, &[2]);
        assert!(!is_subconjugate(&c4, &full, &c2));
        assert!(is_subconjugate(&c4, &c2, &full));
    }

    #[test]
    fn subconjugacy_reflexive_transitive() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let lat = subgroup_lattice(&g).unwrap();
        for a in lat.subgroups() {
            assert!(is_subconjugate(&g, a, a));
        }
        for a in lat.subgroups() {
            for b in lat.subgroups() {
                for c in lat.subgroups() {
                    if is_subconjugate(&g, a, b) && is_subconjugate(&g, b, c) {
                        assert!(is_subconjugate(&g, a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn double_coset_partition() {
        // Sum over double cosets of |HgK| must equal |G|, for every pair.
        for g in [
            FiniteGroup::cyclic(12).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::klein4(),
        ] {
            let lat = subgroup_lattice(&g).unwrap();
            for h in lat.subgroups() {
                for k in lat.subgroups() {
                    let reps = double_cosets(&g, h, k);
                    let mut covered = vec![false; g.order()];
                    let mut total = 0usize;
                    for &r in &reps {
                        let mut size = 0usize;
                        for &a in h.elements() {
                            for &b in k.elements() {
                                let x = g.mul(g.mul(a, r), b);
                                if !covered[x] {
                                    covered[x] = true;
                                    size += 1;
                                }
                            }
                        }
                        assert!(size > 0, "double cosets must be pairwise disjoint");
                        total += size;
                    }
                    assert_eq!(total, g.order());
                }
            }
        }
    }

    #[test]
    fn double_coset_examples() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let full = Subgroup::full(&g);
        assert_eq!(double_cosets(&g, &full, &full).len(), 1);

        let c2 = FiniteGroup::cyclic(2).unwrap();
        let e = Subgroup::trivial(&c2);
        assert_eq!(double_cosets(&c2, &e, &e).len(), 2);

        // H of order 2, K of order 3 in S3: one double coset of size 6
        let lat = subgroup_lattice(&g).unwrap();
        let h = lat.subgroups().iter().find(|s| s.order() == 2).unwrap();
        let k = lat.subgroups().iter().find(|s| s.order() == 3).unwrap();
        assert_eq!(double_cosets(&g, h, k).len(), 1);
    }
}
