//! The acceptance suite: nine independently checkable criteria covering
//! classification, closure, functoriality, reciprocity, the free-functor
//! relations, adjunction transport, norm arithmetic, structural predicates,
//! and ideal discrimination.  Each criterion returns a pass/fail report; the
//! CLI `selftest` verb and the acceptance test target both run these.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bispan::{enumerate_hom, transport_forward, transport_inverse, Bispan};
use crate::error::Result;
use crate::exponent::{round_trip_check, ExponentPredicate};
use crate::group::{subgroup_lattice, FiniteGroup, Group, Subgroup};
use crate::gset::{
    all_canonical_gsets, coproduct, copair, dependent_product, induce, orbit, restrict,
    subgroup_as_group, GMap, GSet,
};
use crate::indexing::{self, IndexingSystem};
use crate::model::{
    burnside_model, coinduced_model, family_ideal_c2, fixed_point_model, is_o_ideal, over_keys,
    reciprocity_sum, reciprocity_transfer, verify_reciprocity, GRing, TambaraModel, Value,
};

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub index: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} — {} ({:.2}s) {}",
            self.index,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.seconds,
            self.detail
        )
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}

fn report(
    index: usize,
    name: &'static str,
    start: Instant,
    outcome: Result<std::result::Result<String, String>>,
) -> CriterionReport {
    let seconds = start.elapsed().as_secs_f64();
    match outcome {
        Ok(Ok(detail)) => CriterionReport {
            index,
            name,
            pass: true,
            detail,
            seconds,
        },
        Ok(Err(detail)) => CriterionReport {
            index,
            name,
            pass: false,
            detail,
            seconds,
        },
        Err(e) => CriterionReport {
            index,
            name,
            pass: false,
            detail: format!("error: {e}"),
            seconds,
        },
    }
}

/// Criterion 1: classification of indexing systems.
pub fn criterion_1() -> CriterionReport {
    let start = Instant::now();
    let run = || -> Result<std::result::Result<String, String>> {
        let cases: Vec<(Group, Option<usize>)> = vec![
            (FiniteGroup::cyclic(2)?, Some(2)),
            (FiniteGroup::cyclic(3)?, Some(2)),
            (FiniteGroup::cyclic(4)?, Some(5)),
            (FiniteGroup::klein4(), None),
            (FiniteGroup::cyclic(8)?, Some(14)),
            (FiniteGroup::symmetric(3)?, None),
        ];
        let mut counts = Vec::new();
        for (g, expected) in &cases {
            let systems = indexing::enumerate(g)?;
            let oracle = indexing::enumerate_bruteforce(g)?;
            if systems != oracle {
                return Ok(Err(format!("{}: enumerator disagrees with oracle", g.name())));
            }
            if let Some(n) = expected {
                if systems.len() != *n {
                    return Ok(Err(format!(
                        "{}: expected {n} systems, found {}",
                        g.name(),
                        systems.len()
                    )));
                }
            }
            let rt = round_trip_check(g)?;
            if !rt.ok() {
                return Ok(Err(format!(
                    "{}: round trip failed ({} mismatches, order_preserved={})",
                    g.name(),
                    rt.mismatches.len(),
                    rt.order_preserved
                )));
            }
            counts.push(format!("{}={}", g.name(), systems.len()));
        }
        if start.elapsed().as_secs_f64() >= 60.0 {
            return Ok(Err(format!("runtime exceeded 60s: {:.1}s", start.elapsed().as_secs_f64())));
        }
        Ok(Ok(format!("counts {}", counts.join(", "))))
    };
    report(1, "classification of indexing systems", start, run())
}

/// A uniformly random element of a pre-enumerated object pool.
pub fn random_object(rng: &mut ChaCha8Rng, pool: &[GSet]) -> GSet {
    pool[rng.gen_range(0..pool.len())].clone()
}

/// A random equivariant map x → y, or `None` if no map exists.
pub fn random_gmap(rng: &mut ChaCha8Rng, x: &GSet, y: &GSet) -> Option<GMap> {
    let group = x.group();
    let mut table = vec![usize::MAX; x.size()];
    for o in x.orbit_decompose().ok()? {
        let candidates: Vec<usize> = (0..y.size())
            .filter(|&p| {
                o.stabilizer
                    .elements()
                    .iter()
                    .all(|&s| y.act(s, p) == p)
            })
            .collect();
        if candidates.is_empty() {
            return None;
        }
        let y0 = candidates[rng.gen_range(0..candidates.len())];
        for g in 0..group.order() {
            table[x.act(g, o.rep)] = y.act(g, y0);
        }
    }
    GMap::new(x.clone(), y.clone(), table).ok()
}

/// A random bispan x → y with exponent in d; resamples the middle objects
/// until all three legs exist and the exponent is admissible.
pub fn random_bispan(
    rng: &mut ChaCha8Rng,
    pool: &[GSet],
    d: &ExponentPredicate,
    x: &GSet,
    y: &GSet,
) -> Result<Bispan> {
    for _ in 0..500 {
        let t = random_object(rng, pool);
        let s = random_object(rng, pool);
        let Some(h) = random_gmap(rng, &t, y) else { continue };
        let Some(g) = random_gmap(rng, &s, &t) else { continue };
        let Some(f) = random_gmap(rng, &s, x) else { continue };
        if d.contains(&g)? {
            return Bispan::new(f, g, h);
        }
    }
    // the empty bispan is always admissible
    Bispan::new(
        GMap::from_empty(x),
        GMap::from_empty(&GSet::empty(x.group().clone())),
        GMap::from_empty(y),
    )
}

/// Criterion 2: exponent closure of composition under every enumerated
/// system over C4 and S3.
pub fn criterion_2() -> CriterionReport {
    let start = Instant::now();
    let run = || -> Result<std::result::Result<String, String>> {
        let mut total = 0usize;
        for (seed, group) in [(11u64, FiniteGroup::cyclic(4)?), (12, FiniteGroup::symmetric(3)?)] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let systems = indexing::enumerate(&group)?;
            let pool = all_canonical_gsets(&group, group.order())?;
            for i in 0..1000usize {
                let sys = systems[i % systems.len()].clone();
                let d = ExponentPredicate::from_indexing(sys);
                let x = random_object(&mut rng, &pool);
                let y = random_object(&mut rng, &pool);
                let z = random_object(&mut rng, &pool);
                let p = random_bispan(&mut rng, &pool, &d, &x, &y)?;
                let q = random_bispan(&mut rng, &pool, &d, &y, &z)?;
                let c = Bispan::compose(&p, &q, &d)?;
                if !d.contains(c.g())? {
                    return Ok(Err(format!(
                        "{}: composite exponent escaped its system",
                        group.name()
                    )));
                }
                total += 1;
            }
        }
        Ok(Ok(format!("{total} composites, zero violations")))
    };
    report(2, "composition stays in the exponent subcategory", start, run())
}

/// Criterion 3: functoriality of evaluation on random composable pairs.
pub fn criterion_3() -> CriterionReport {
    let start = Instant::now();
    let run = || -> Result<std::result::Result<String, String>> {
        let c2 = FiniteGroup::cyclic(2)?;
        let mut models: Vec<(Group, TambaraModel, u64, usize)> = Vec::new();
        for (seed, group, share) in [
            (21u64, FiniteGroup::cyclic(2)?, 240usize),
            (22, FiniteGroup::cyclic(4)?, 330),
            (23, FiniteGroup::symmetric(3)?, 330),
        ] {
            let m = fixed_point_model(
                GRing::cyclic(group.clone(), 6)?,
                IndexingSystem::complete(&group)?,
            )?;
            models.push((group, m, seed, share));
        }
        // the swap model over C2 takes the remaining share
        let swap = fixed_point_model(
            GRing::square_with_swap(c2.clone(), 3, &Subgroup::trivial(&c2))?,
            IndexingSystem::complete(&c2)?,
        )?;
        models.push((c2, swap, 24, 100));
        let mut total = 0usize;
        for (group, m, seed, share) in models {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = ExponentPredicate::all(group.clone());
            let pool = all_canonical_gsets(&group, group.order())?;
            for _ in 0..share {
                let x = random_object(&mut rng, &pool);
                let y = random_object(&mut rng, &pool);
                let z = random_object(&mut rng, &pool);
                let p = random_bispan(&mut rng, &pool, &d, &x, &y)?;
                let q = random_bispan(&mut rng, &pool, &d, &y, &z)?;
                let c = Bispan::compose(&p, &q, &d)?;
                let grid = m.value_grid(&x, 1)?;
                for _ in 0..3 {
                    let v = &grid[rng.gen_range(0..grid.len())];
                    let direct = m.eval(&c, v)?;
                    let staged = m.eval(&q, &m.eval(&p, v)?)?;
                    if direct != staged {
                        return Ok(Err(format!(
                            "{}: eval(q∘p) ≠ eval(q)∘eval(p) at {}",
                            group.name(),
                            v.format()
                        )));
                    }
                }
                total += 1;
            }
        }
        if start.elapsed().as_secs_f64() >= 120.0 {
            return Ok(Err(format!("runtime exceeded 120s: {:.1}s", start.elapsed().as_secs_f64())));
        }
        Ok(Ok(format!("{total} pairs, exact agreement")))
    };
    report(3, "evaluation is functorial", start, run())
}

/// Criterion 4: Tambara reciprocity formulas and their verification.
pub fn criterion_4() -> CriterionReport {
    let start = Instant::now();
    let run = || -> Result<std::result::Result<String, String>> {
        let c2 = FiniteGroup::cyclic(2)?;
        let c4 = FiniteGroup::cyclic(4)?;
        let f2 = reciprocity_sum(
            &c2,
            &Subgroup::trivial(&c2),
            &Subgroup::full(&c2),
            &IndexingSystem::complete(&c2)?,
        )?;
        if f2.summands.len() != 3 {
            return Ok(Err(format!("e ≤ C2: expected 3 summands, got {}", f2.summands.len())));
        }
        let f4 = reciprocity_sum(
            &c4,
            &Subgroup::trivial(&c4),
            &Subgroup::full(&c4),
            &IndexingSystem::complete(&c4)?,
        )?;
        if f4.summands.len() != 6 {
            return Ok(Err(format!("e ≤ C4: expected 6 summands, got {}", f4.summands.len())));
        }
        let z6 = fixed_point_model(GRing::cyclic(c2.clone(), 6)?, IndexingSystem::complete(&c2)?)?;
        let rep = verify_reciprocity(&z6, &f2, 2)?;
        if !rep.ok || rep.cases != 36 {
            return Ok(Err(format!(
                "Z/6 verification failed: ok={}, cases={}, {:?}",
                rep.ok, rep.cases, rep.failure
            )));
        }
        let burnside = burnside_model(&c2, IndexingSystem::complete(&c2)?, None)?;
        let rep_b = verify_reciprocity(&burnside, &f2, 2)?;
        if !rep_b.ok {
            return Ok(Err(format!("Burnside verification failed: {:?}", rep_b.failure)));
        }
        // transfer reciprocity for e ≤ C2 ≤ C4
        let lattice = subgroup_lattice(&c4)?;
        let c2_in_c4 = lattice
            .subgroups()
            .iter()
            .find(|s| s.order() == 2)
            .expect("C4 has a subgroup of order 2")
            .clone();
        let ft = reciprocity_transfer(
            &c4,
            &Subgroup::trivial(&c4),
            &c2_in_c4,
            &IndexingSystem::complete(&c4)?,
        )?;
        let z6_c4 = fixed_point_model(GRing::cyclic(c4.clone(), 6)?, IndexingSystem::complete(&c4)?)?;
        let rep_t = verify_reciprocity(&z6_c4, &ft, 2)?;
        if !rep_t.ok {
            return Ok(Err(format!("transfer verification failed: {:?}", rep_t.failure)));
        }
        Ok(Ok(format!(
            "3 and 6 summands; {} + {} + {} cases verified",
            rep.cases, rep_b.cases, rep_t.cases
        )))
    };
    report(4, "Tambara reciprocity", start, run())
}

/// Criterion 5: the free-functor relations over C2.
pub fn criterion_5() -> CriterionReport {
    let start = Instant::now();
    let run = || -> Result<std::result::Result<String, String>> {
        let g = FiniteGroup::cyclic(2)?;
        let d = ExponentPredicate::all(g.clone());
        let free = orbit(&g, &Subgroup::trivial(&g));
        let pt = GSet::point(g.clone());
        let pi = GMap::to_point(&free);
        let t = Bispan::new(GMap::from_empty(&pt), GMap::from_empty(&free), pi.clone())?
            .hom_class()?;
        let nx = Bispan::new(pi.clone(), pi.clone(), GMap::identity(&pt))?.hom_class()?;
        let x = Bispan::identity(&pt).hom_class()?;
        if t.mul(&t, &d)? != t.add(&t)? {
            return Ok(Err("t·t ≠ t + t".into()));
        }
        let x2 = x.mul(&x, &d)?;
        if t.mul(&nx, &d)? != t.mul(&x2, &d)? {
            return Ok(Err("t·nx ≠ t·x²".into()));
        }
        if nx == x2 {
            return Ok(Err("nx and x² must stay distinct classes".into()));
        }
        let r_pi = Bispan::restriction(&pi);
        let res_nx = Bispan::compose(nx.rep(), &r_pi, &d)?.hom_class()?;
        let res_x = r_pi.hom_class()?;
        if res_nx != res_x.mul(&res_x, &d)? {
            return Ok(Err("R_π∘nx ≠ x·x at the underlying level".into()));
        }
        Ok(Ok("t·t = t+t, t·nx = t·x², R_π∘nx = x·x".into()))
    };
    report(5, "free-functor relations (Z[t]/(t²−2t))", start, run())
}

/// Criterion 6: adjunction transport and coinduction values.
pub fn criterion_6() -> CriterionReport {
    let start = Instant::now();
    let run = || -> Result<std::result::Result<String, String>> {
        let mut details = Vec::new();
        // transport bijections at bounds (2,2)
        let c2 = FiniteGroup::cyclic(2)?;
        let c4 = FiniteGroup::cyclic(4)?;
        let lattice4 = subgroup_lattice(&c4)?;
        let c2_in_c4 = lattice4
            .subgroups()
            .iter()
            .find(|s| s.order() == 2)
            .expect("C4 has C2")
            .clone();
        for (group, sub) in [(c2.clone(), Subgroup::trivial(&c2)), (c4.clone(), c2_in_c4)] {
            let emb = subgroup_as_group(&group, &sub)?;
            let h_pt = GSet::point(emb.group.clone());
            let ind_y = induce(&emb, &h_pt)?;
            let x = ind_y.total.clone();
            let d_h = ExponentPredicate::all(emb.group.clone());
            let d_g = ExponentPredicate::all(group.clone());
            let h_classes = enumerate_hom(&restrict(&emb, &x)?, &h_pt, &d_h, 2, 2)?;
            let index = group.order() / sub.order();
            let g_classes = enumerate_hom(&x, &ind_y.total, &d_g, 2 * index, 2 * index)?;
            let mut images = BTreeSet::new();
            for c in &h_classes {
                let fw = transport_forward(&emb, &x, c.rep())?;
                let back = transport_inverse(&emb, &x, &ind_y, &fw.bispan)?;
                if back.hom_class()? != *c {
                    return Ok(Err(format!("{}: inverse∘forward ≠ id", group.name())));
                }
                images.insert(fw.bispan.hom_class()?);
            }
            for c in &g_classes {
                let back = transport_inverse(&emb, &x, &ind_y, c.rep())?;
                let fw = transport_forward(&emb, &x, &back)?;
                if fw.bispan.hom_class()? != *c {
                    return Ok(Err(format!("{}: forward∘inverse ≠ id", group.name())));
                }
            }
            if images.len() != h_classes.len() || g_classes.len() != h_classes.len() {
                return Ok(Err(format!(
                    "{}: hom sets do not biject ({} vs {})",
                    group.name(),
                    h_classes.len(),
                    g_classes.len()
                )));
            }
            details.push(format!("{}: {} classes biject", group.name(), h_classes.len()));
        }
        // CoInd_e^{C2}(Z/4): values equal M(i*T) on all T with ≤ 4 points
        let emb = subgroup_as_group(&c2, &Subgroup::trivial(&c2))?;
        let inner = fixed_point_model(
            GRing::cyclic(emb.group.clone(), 4)?,
            IndexingSystem::complete(&emb.group)?,
        )?;
        let m = coinduced_model(&emb, inner)?;
        for t in all_canonical_gsets(&c2, 4)? {
            // over the trivial group M(i*T) = Map(points of T, Z/4)
            let expected = 4u64.pow(t.size() as u32);
            let got = m.value_set(&t)?.len() as u64;
            if got != expected {
                return Ok(Err(format!(
                    "CoInd value count at a {}-point object: {} ≠ {}",
                    t.size(),
                    got,
                    expected
                )));
            }
        }
        details.push("CoInd values = M(i*T) for |T| ≤ 4".into());
        Ok(Ok(details.join("; ")))
    };
    report(6, "adjunction transport and coinduction", start, run())
}

/// Criterion 7: the norm-of-two Burnside identity N(2) = 2 + t.
pub fn criterion_7() -> CriterionReport {
    let start = Instant::now();
    let run = || -> Result<std::result::Result<String, String>> {
        let g = FiniteGroup::cyclic(2)?;
        let m = burnside_model(&g, IndexingSystem::complete(&g)?, None)?;
        let free = orbit(&g, &Subgroup::trivial(&g));
        let pt = GSet::point(g.clone());
        let pi = GMap::to_point(&free);
        let one = m.one_value(&free)?;
        let two = m.add_values(&free, &one, &one)?;
        let n = m.eval(&Bispan::norm(&pi), &two)?;
        let keys = over_keys(&pt)?;
        let trivial_key = keys
            .iter()
            .find(|(b, _)| b.len() == 2)
            .expect("pt admits a trivial orbit")
            .clone();
        let free_key = keys
            .iter()
            .find(|(b, _)| b.len() == 1)
            .expect("pt admits a free orbit")
            .clone();
        let expected = Value::Virt([(trivial_key, 2), (free_key, 1)].into_iter().collect());
        if n != expected {
            return Ok(Err(format!("N(2) = {} ≠ 2 + t", n.format())));
        }
        // the underlying dependent product has orbit type 2 fixed + 1 free
        let (two_obj, _, _) = coproduct(&free, &free)?;
        let fold = copair(&two_obj, &GMap::identity(&free), &GMap::identity(&free))?;
        let e = dependent_product(&fold, &pi)?;
        let orbits = e.pi.orbit_decompose()?;
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.points.len()).collect();
        sizes.sort_unstable();
        if sizes != vec![1, 1, 2] {
            return Ok(Err(format!("section orbit sizes {sizes:?} ≠ [1, 1, 2]")));
        }
        Ok(Ok("N(2) = 2·[pt] + [C2/e]; sections are 2 fixed + 1 free".into()))
    };
    report(7, "norm of two in the Burnside model", start, run())
}

fn all_injective_gmaps(x: &GSet, y: &GSet) -> Result<Vec<GMap>> {
    let group = x.group();
    let orbits = x.orbit_decompose()?;
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>, Vec<bool>)> = vec![(0, vec![usize::MAX; x.size()], vec![false; y.size()])];
    while let Some((i, table, used)) = stack.pop() {
        if i == orbits.len() {
            out.push(GMap::new(x.clone(), y.clone(), table)?);
            continue;
        }
        let o = &orbits[i];
        for y0 in 0..y.size() {
            if used[y0] {
                continue;
            }
            // an injective image orbit must have the same stabilizer
            if y.stabilizer(y0) != o.stabilizer {
                continue;
            }
            let mut t = table.clone();
            let mut u = used.clone();
            let mut ok = true;
            for g in 0..group.order() {
                let src = x.act(g, o.rep);
                let dst = y.act(g, y0);
                if t[src] == usize::MAX {
                    if u[dst] {
                        ok = false;
                        break;
                    }
                    t[src] = dst;
                    u[dst] = true;
                } else if t[src] != dst {
                    ok = false;
                    break;
                }
            }
            if ok {
                stack.push((i + 1, t, u));
            }
        }
    }
    Ok(out)
}

/// Criterion 8: structural predicates — monos are always admitted, products
/// are created by the injections, and Frobenius/norm-multiplicativity hold.
pub fn criterion_8() -> CriterionReport {
    let start = Instant::now();
    let run = || -> Result<std::result::Result<String, String>> {
        // monos up to 8 points are admitted in every system over C4
        let c4 = FiniteGroup::cyclic(4)?;
        let systems = indexing::enumerate(&c4)?;
        let objects = all_canonical_gsets(&c4, 8)?;
        let mut monos = 0usize;
        for s in &objects {
            for t in &objects {
                if s.size() > t.size() {
                    continue;
                }
                for f in all_injective_gmaps(s, t)? {
                    monos += 1;
                    for sys in &systems {
                        if !indexing::map_in_category(sys, &f)? {
                            return Ok(Err("a mono was rejected by an indexing system".into()));
                        }
                    }
                }
            }
        }
        // products: hom(X, Y1⊔Y2) ≅ hom(X,Y1) × hom(X,Y2) at bounds (2,2)
        let c2 = FiniteGroup::cyclic(2)?;
        let d2 = ExponentPredicate::all(c2.clone());
        let pt = GSet::point(c2.clone());
        let free = orbit(&c2, &Subgroup::trivial(&c2));
        let (yy, i1, i2) = coproduct(&pt, &free)?;
        let joint = enumerate_hom(&pt, &yy, &d2, 2, 2)?;
        let left = enumerate_hom(&pt, &pt, &d2, 2, 2)?;
        let right = enumerate_hom(&pt, &free, &d2, 2, 2)?;
        let mut seen = BTreeSet::new();
        for c in &joint {
            let a = Bispan::compose(c.rep(), &Bispan::restriction(&i1), &d2)?.hom_class()?;
            let b = Bispan::compose(c.rep(), &Bispan::restriction(&i2), &d2)?.hom_class()?;
            if !left.contains(&a) || !right.contains(&b) {
                return Ok(Err("a projected class escaped the factor hom sets".into()));
            }
            if !seen.insert((a, b)) {
                return Ok(Err("the projection to the factors is not injective".into()));
            }
        }
        // restriction: joint classes have S,T ≤ 2 but their projections do
        // too, so the image lands in pairs with compatible bounds; surjectivity
        // onto all in-bound pairs follows from the count
        let in_bound_pairs = left.len() * right.len();
        let surjective = joint.len() == in_bound_pairs
            || joint.len() == seen.len() && {
                // count pairs actually reachable: pairs whose total sizes fit 2
                let mut reachable = 0usize;
                for a in &left {
                    for b in &right {
                        if a.rep().s().size() + b.rep().s().size() <= 2
                            && a.rep().t().size() + b.rep().t().size() <= 2
                        {
                            reachable += 1;
                        }
                    }
                }
                reachable == joint.len()
            };
        if !surjective {
            return Ok(Err(format!(
                "product bijection count mismatch: joint {} vs factors {}×{}",
                joint.len(),
                left.len(),
                right.len()
            )));
        }
        // Frobenius and norm multiplicativity on 500 random cases
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        let mut cases = 0usize;
        let z6 = fixed_point_model(GRing::cyclic(c2.clone(), 6)?, IndexingSystem::complete(&c2)?)?;
        let burn = burnside_model(&c2, IndexingSystem::complete(&c2)?, None)?;
        let pool = all_canonical_gsets(&c2, 3)?;
        while cases < 500 {
            let s = random_object(&mut rng, &pool);
            let t = random_object(&mut rng, &pool);
            let Some(f) = random_gmap(&mut rng, &s, &t) else { continue };
            for m in [&z6, &burn] {
                let grid_s = m.value_grid(&s, 1)?;
                let grid_t = m.value_grid(&t, 1)?;
                if grid_s.is_empty() || grid_t.is_empty() {
                    continue;
                }
                let a = grid_t[rng.gen_range(0..grid_t.len())].clone();
                let b = grid_s[rng.gen_range(0..grid_s.len())].clone();
                // Frobenius: a · T_f(b) = T_f(R_f(a) · b)
                let tr = Bispan::transfer(&f);
                let rs = Bispan::restriction(&f);
                let lhs = m.mul_values(&t, &a, &m.eval(&tr, &b)?)?;
                let rhs = m.eval(&tr, &m.mul_values(&s, &m.eval(&rs, &a)?, &b)?)?;
                if lhs != rhs {
                    return Ok(Err("Frobenius failed".into()));
                }
                // N(ab) = N(a)N(b), N(1) = 1
                let nm = Bispan::norm(&f);
                let a2 = grid_s[rng.gen_range(0..grid_s.len())].clone();
                let n_ab = m.eval(&nm, &m.mul_values(&s, &a2, &b)?)?;
                let n_a_n_b = m.mul_values(&t, &m.eval(&nm, &a2)?, &m.eval(&nm, &b)?)?;
                if n_ab != n_a_n_b {
                    return Ok(Err("norm multiplicativity failed".into()));
                }
                if m.eval(&nm, &m.one_value(&s)?)? != m.one_value(&t)? {
                    return Ok(Err("N(1) ≠ 1".into()));
                }
            }
            cases += 1;
        }
        Ok(Ok(format!(
            "{monos} monos admitted; product bijection at (2,2); {cases} Frobenius/norm cases"
        )))
    };
    report(8, "structural predicates", start, run())
}

/// Criterion 9: the family O-ideal discriminates trivial from complete.
pub fn criterion_9() -> CriterionReport {
    let start = Instant::now();
    let run = || -> Result<std::result::Result<String, String>> {
        let g = FiniteGroup::cyclic(2)?;
        let m_triv = burnside_model(&g, IndexingSystem::trivial(&g)?, Some(8))?;
        let j = family_ideal_c2(&m_triv)?;
        let rep = is_o_ideal(&m_triv, &j, 2)?;
        if !rep.ok {
            return Ok(Err(format!(
                "trivial system: expected an ideal, got witness {:?}",
                rep.witness
            )));
        }
        let m_full = burnside_model(&g, IndexingSystem::complete(&g)?, Some(8))?;
        let j = family_ideal_c2(&m_full)?;
        let rep = is_o_ideal(&m_full, &j, 2)?;
        if rep.ok {
            return Ok(Err("complete system: expected a norm-closure failure".into()));
        }
        let witness = rep.witness.unwrap_or_default();
        Ok(Ok(format!("trivial: ideal; complete: not an ideal — {witness}")))
    };
    report(9, "O-ideal discrimination", start, run())
}
