//! Text formats for groups, G-sets, equivariant maps, bispans, indexing
//! systems, and G-rings.  Parsers report line-numbered errors; every emitter
//! round-trips through its parser.

use crate::bispan::Bispan;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group, Subgroup};
use crate::gset::{GMap, GSet};
use crate::indexing::IndexingSystem;
use crate::model::GRing;

/// Build a group from a builder reference: `cyclic:<n>`, `klein4`,
/// `sym:<n>`, or `product:<a>x<b>` (cyclic factors).
pub fn builder_group(s: &str) -> Result<Group> {
    if s == "klein4" {
        return Ok(FiniteGroup::klein4());
    }
    if let Some(n) = s.strip_prefix("cyclic:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::parse(1, format!("bad cyclic order in group ref '{s}'")))?;
        return FiniteGroup::cyclic(n);
    }
    if let Some(n) = s.strip_prefix("sym:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::parse(1, format!("bad symmetric degree in group ref '{s}'")))?;
        return FiniteGroup::symmetric(n);
    }
    if let Some(spec) = s.strip_prefix("product:") {
        let (a, b) = spec
            .split_once('x')
            .ok_or_else(|| Error::parse(1, format!("product ref '{s}' needs the form a x b")))?;
        let a: usize = a
            .parse()
            .map_err(|_| Error::parse(1, format!("bad factor in group ref '{s}'")))?;
        let b: usize = b
            .parse()
            .map_err(|_| Error::parse(1, format!("bad factor in group ref '{s}'")))?;
        return FiniteGroup::product(&FiniteGroup::cyclic(a)?, &FiniteGroup::cyclic(b)?);
    }
    Err(Error::parse(
        1,
        format!("unknown group reference '{s}' (expected cyclic:<n>, klein4, sym:<n>, product:<a>x<b>)"),
    ))
}

/// Generator element indices for refs whose groups have a canonical small
/// generating set, enabling abbreviated G-set files.
pub fn builder_generators(s: &str) -> Option<Vec<usize>> {
    if s == "klein4" {
        return Some(vec![2, 1]);
    }
    if let Some(n) = s.strip_prefix("cyclic:") {
        let n: usize = n.parse().ok()?;
        return Some(if n <= 1 { vec![] } else { vec![1] });
    }
    if let Some(spec) = s.strip_prefix("product:") {
        let (_, b) = spec.split_once('x')?;
        let b: usize = b.parse().ok()?;
        return Some(vec![b, 1]); // (1,0) and (0,1)
    }
    None
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { lines, pos: 0 }
    }

    fn next(&mut self) -> Result<(usize, &'a str)> {
        let item = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| Error::parse(self.lines.last().map_or(1, |(n, _)| *n), "unexpected end of input"))?;
        self.pos += 1;
        Ok(item)
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn done(&self) -> bool {
        self.pos == self.lines.len()
    }
}

fn parse_indices(line_no: usize, s: &str, expect: usize, bound: usize) -> Result<Vec<usize>> {
    let vals: Vec<usize> = s
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("expected an index, found '{t}'")))
        })
        .collect::<Result<_>>()?;
    if vals.len() != expect {
        return Err(Error::parse(
            line_no,
            format!("expected {expect} indices, found {}", vals.len()),
        ));
    }
    if let Some(&v) = vals.iter().find(|&&v| v >= bound) {
        return Err(Error::parse(line_no, format!("index {v} out of range (< {bound})")));
    }
    Ok(vals)
}

/// Parse the `group <n>` multiplication-table format.
pub fn parse_group(text: &str) -> Result<Group> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next()?;
    let n = header
        .strip_prefix("group ")
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::parse(ln, "expected header 'group <n>'"))?;
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, row) = lines.next()?;
        table.push(parse_indices(ln, row, n, n)?);
    }
    if let Some((ln, _)) = lines.peek() {
        return Err(Error::parse(ln, "trailing content after the multiplication table"));
    }
    let g = FiniteGroup::from_table(&table, "file")?;
    if g.mul(0, 0) != 0 || (0..g.order()).any(|a| g.mul(0, a) != a) {
        return Err(Error::InvalidGroup("element 0 must be the identity".into()));
    }
    Ok(g)
}

pub fn emit_group(g: &Group) -> String {
    let n = g.order();
    let mut out = format!("group {n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Resolve a group reference using builders only; callers that accept file
/// paths should supply their own resolver to `parse_gset_with` and friends.
pub fn resolve_group_ref(s: &str) -> Result<Group> {
    builder_group(s)
}

fn parse_gset_block(
    lines: &mut Lines<'_>,
    resolve: &dyn Fn(&str) -> Result<Group>,
) -> Result<GSet> {
    let (ln, header) = lines.next()?;
    let rest = header
        .strip_prefix("gset ")
        .ok_or_else(|| Error::parse(ln, "expected header 'gset <group-ref> <n>'"))?;
    let (group_ref, n) = rest
        .rsplit_once(' ')
        .ok_or_else(|| Error::parse(ln, "expected 'gset <group-ref> <n>'"))?;
    let group_ref = group_ref.trim();
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| Error::parse(ln, "bad point count in gset header"))?;
    let group = resolve(group_ref)?;
    // collect permutation lines until the next keyword or end of input
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    while let Some((ln2, l)) = lines.peek() {
        if l.starts_with("gset") || l.starts_with("gmap") || l.starts_with("bispan") {
            break;
        }
        lines.next()?;
        rows.push((ln2, parse_indices(ln2, l, n, n.max(1))?));
        if rows.len() == group.order() {
            break;
        }
    }
    if n == 0 {
        return Ok(GSet::empty(group));
    }
    let order = group.order();
    let action: Vec<usize> = if rows.len() == order {
        rows.into_iter().flat_map(|(_, r)| r).collect()
    } else {
        let gens = builder_generators(group_ref).ok_or_else(|| {
            Error::parse(
                rows.last().map_or(1, |(l, _)| *l),
                format!(
                    "expected {order} permutation lines (generator shorthand needs a cyclic/product group ref)"
                ),
            )
        })?;
        if rows.len() != gens.len() {
            return Err(Error::parse(
                rows.last().map_or(1, |(l, _)| *l),
                format!("expected {} generator lines or {order} full lines, found {}", gens.len(), rows.len()),
            ));
        }
        // close the generator actions under multiplication
        let mut acts: Vec<Option<Vec<usize>>> = vec![None; order];
        acts[0] = Some((0..n).collect());
        for (&g, (_, row)) in gens.iter().zip(&rows) {
            acts[g] = Some(row.clone());
        }
        let mut changed = true;
        while changed {
            changed = false;
            for g in 0..order {
                if acts[g].is_none() {
                    continue;
                }
                for &s in &gens {
                    let gs = group.mul(g, s);
                    if acts[gs].is_none() {
                        let ag = acts[g].as_ref().unwrap();
                        let as_ = acts[s].as_ref().unwrap();
                        acts[gs] = Some((0..n).map(|x| ag[as_[x]]).collect());
                        changed = true;
                    }
                }
            }
        }
        if acts.iter().any(|a| a.is_none()) {
            return Err(Error::parse(1, "generator lines do not generate the group"));
        }
        acts.into_iter().flat_map(|a| a.unwrap()).collect()
    };
    GSet::new(group, n, action)
}

/// Parse a standalone gset file.
pub fn parse_gset_with(text: &str, resolve: &dyn Fn(&str) -> Result<Group>) -> Result<GSet> {
    let mut lines = Lines::new(text);
    let x = parse_gset_block(&mut lines, resolve)?;
    if let Some((ln, _)) = lines.peek() {
        return Err(Error::parse(ln, "trailing content after the gset block"));
    }
    Ok(x)
}

pub fn parse_gset(text: &str) -> Result<GSet> {
    parse_gset_with(text, &resolve_group_ref)
}

pub fn emit_gset(x: &GSet, group_ref: &str) -> String {
    let mut out = format!("gset {group_ref} {}\n", x.size());
    for g in 0..x.group().order() {
        let row: Vec<String> = (0..x.size()).map(|p| x.act(g, p).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_gmap_block(lines: &mut Lines<'_>, src: &GSet, tgt: &GSet) -> Result<GMap> {
    let (ln, header) = lines.next()?;
    if !header.starts_with("gmap") {
        return Err(Error::parse(ln, "expected header 'gmap <src> <tgt>'"));
    }
    let mut vals: Vec<usize> = Vec::new();
    while vals.len() < src.size() {
        let (ln2, l) = lines.next()?;
        for t in l.split_whitespace() {
            let v: usize = t
                .parse()
                .map_err(|_| Error::parse(ln2, format!("expected an index, found '{t}'")))?;
            if v >= tgt.size() {
                return Err(Error::parse(ln2, format!("target index {v} out of range")));
            }
            vals.push(v);
        }
        if vals.len() > src.size() {
            return Err(Error::parse(ln2, "too many map entries"));
        }
    }
    GMap::new(src.clone(), tgt.clone(), vals)
}

/// Parse a standalone gmap file given its endpoints.
pub fn parse_gmap(text: &str, src: &GSet, tgt: &GSet) -> Result<GMap> {
    let mut lines = Lines::new(text);
    let f = parse_gmap_block(&mut lines, src, tgt)?;
    if let Some((ln, _)) = lines.peek() {
        return Err(Error::parse(ln, "trailing content after the gmap entries"));
    }
    Ok(f)
}

pub fn emit_gmap(f: &GMap, src_name: &str, tgt_name: &str) -> String {
    let row: Vec<String> = f.table().iter().map(|v| v.to_string()).collect();
    format!("gmap {src_name} {tgt_name}\n{}\n", row.join(" "))
}

/// Parse a bispan file: `bispan`, four gset blocks X, S, T, Y, then three
/// gmap blocks f: S→X, g: S→T, h: T→Y.
pub fn parse_bispan_with(text: &str, resolve: &dyn Fn(&str) -> Result<Group>) -> Result<Bispan> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next()?;
    if header != "bispan" {
        return Err(Error::parse(ln, "expected header 'bispan'"));
    }
    let x = parse_gset_block(&mut lines, resolve)?;
    let s = parse_gset_block(&mut lines, resolve)?;
    let t = parse_gset_block(&mut lines, resolve)?;
    let y = parse_gset_block(&mut lines, resolve)?;
    let f = parse_gmap_block(&mut lines, &s, &x)?;
    let g = parse_gmap_block(&mut lines, &s, &t)?;
    let h = parse_gmap_block(&mut lines, &t, &y)?;
    if !lines.done() {
        let (ln, _) = lines.peek().unwrap();
        return Err(Error::parse(ln, "trailing content after the bispan blocks"));
    }
    Bispan::new(f, g, h)
}

pub fn parse_bispan(text: &str) -> Result<Bispan> {
    parse_bispan_with(text, &resolve_group_ref)
}

pub fn emit_bispan(b: &Bispan, group_ref: &str) -> String {
    let mut out = String::from("bispan\n");
    out.push_str(&emit_gset(b.x(), group_ref));
    out.push_str(&emit_gset(b.s(), group_ref));
    out.push_str(&emit_gset(b.t(), group_ref));
    out.push_str(&emit_gset(b.y(), group_ref));
    out.push_str(&emit_gmap(b.f(), "S", "X"));
    out.push_str(&emit_gmap(b.g(), "S", "T"));
    out.push_str(&emit_gmap(b.h(), "T", "Y"));
    out
}

pub fn parse_element_list(line_no: usize, s: &str, order: usize) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            let v: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, format!("expected an element index, found '{t}'")))?;
            if v >= order {
                return Err(Error::parse(line_no, format!("element {v} out of range")));
            }
            Ok(v)
        })
        .collect()
}

/// Parse an indexing system: `indexing <group-ref>` followed by lines
/// `adm <H-elements> <K-elements>` with comma-separated element lists.
pub fn parse_indexing_with(
    text: &str,
    resolve: &dyn Fn(&str) -> Result<Group>,
) -> Result<IndexingSystem> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next()?;
    let group_ref = header
        .strip_prefix("indexing ")
        .ok_or_else(|| Error::parse(ln, "expected header 'indexing <group-ref>'"))?
        .trim();
    let group = resolve(group_ref)?;
    let mut pairs: Vec<(Subgroup, Subgroup)> = Vec::new();
    while let Some((ln, l)) = lines.peek() {
        lines.next()?;
        let rest = l
            .strip_prefix("adm ")
            .ok_or_else(|| Error::parse(ln, "expected 'adm <H-elements> <K-elements>'"))?;
        let (h, k) = rest
            .trim()
            .split_once(' ')
            .ok_or_else(|| Error::parse(ln, "expected two element lists"))?;
        let h = Subgroup::new(&group, parse_element_list(ln, h.trim(), group.order())?)
            .map_err(|e| Error::parse(ln, format!("bad H subgroup: {e}")))?;
        let k = Subgroup::new(&group, parse_element_list(ln, k.trim(), group.order())?)
            .map_err(|e| Error::parse(ln, format!("bad K subgroup: {e}")))?;
        pairs.push((h, k));
    }
    IndexingSystem::from_subgroup_pairs(group, &pairs)
}

pub fn parse_indexing(text: &str) -> Result<IndexingSystem> {
    parse_indexing_with(text, &resolve_group_ref)
}

pub fn emit_indexing(i: &IndexingSystem, group_ref: &str) -> String {
    let group = i.group().clone();
    let lattice = crate::group::subgroup_lattice(&group).expect("validated group");
    let mut out = format!("indexing {group_ref}\n");
    for (h, k) in i.pairs() {
        let fmt = |s: &Subgroup| {
            s.elements()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        out.push_str(&format!(
            "adm {} {}\n",
            fmt(lattice.subgroup(h)),
            fmt(lattice.subgroup(k))
        ));
    }
    out
}

/// Parse a G-ring over a known group: `ring <n>`, n addition rows, n
/// multiplication rows, then one automorphism line per group element.
pub fn parse_ring(group: &Group, text: &str) -> Result<GRing> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next()?;
    let n = header
        .strip_prefix("ring ")
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::parse(ln, "expected header 'ring <n>'"))?;
    let mut add = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (ln, row) = lines.next()?;
        add.extend(parse_indices(ln, row, n, n)?);
    }
    let mut mul = Vec::with_capacity(n * n);
    for _ in 0..n {
        let (ln, row) = lines.next()?;
        mul.extend(parse_indices(ln, row, n, n)?);
    }
    let mut autos = Vec::with_capacity(group.order());
    for _ in 0..group.order() {
        let (ln, row) = lines.next()?;
        autos.push(parse_indices(ln, row, n, n)?);
    }
    if let Some((ln, _)) = lines.peek() {
        return Err(Error::parse(ln, "trailing content after the automorphism lines"));
    }
    GRing::new(group.clone(), n, add, mul, autos)
}

pub fn emit_ring(r: &GRing) -> String {
    let n = r.size();
    let mut out = format!("ring {n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| r.add(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| r.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for g in 0..r.group().order() {
        let row: Vec<String> = r.auto(g).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gset::orbit;
    use crate::indexing;

    #[test]
    fn group_round_trip() {
        for r in ["cyclic:4", "klein4", "sym:3", "product:2x3"] {
            let g = builder_group(r).unwrap();
            let text = emit_group(&g);
            let back = parse_group(&text).unwrap();
            assert_eq!(back.order(), g.order());
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(back.mul(a, b), g.mul(a, b));
                }
            }
        }
    }

    #[test]
    fn group_rejects_bad_identity() {
        // a valid C2 table written with the identity at index 1
        let text = "group 2\n1 0\n0 1\n";
        assert!(parse_group(text).is_err());
    }

    #[test]
    fn gset_round_trip_and_generator_shorthand() {
        let g = builder_group("cyclic:4").unwrap();
        let x = orbit(&g, &Subgroup::trivial(&g));
        let text = emit_gset(&x, "cyclic:4");
        let back = parse_gset(&text).unwrap();
        assert_eq!(back, x);
        // shorthand: a single generator line for a cyclic group
        let short = "gset cyclic:4 4\n1 2 3 0\n";
        let y = parse_gset(short).unwrap();
        assert_eq!(y, x);
    }

    #[test]
    fn gmap_round_trip() {
        let g = builder_group("cyclic:2").unwrap();
        let x = orbit(&g, &Subgroup::trivial(&g));
        let pt = GSet::point(g.clone());
        let f = GMap::to_point(&x);
        let text = emit_gmap(&f, "X", "pt");
        let back = parse_gmap(&text, &x, &pt).unwrap();
        assert_eq!(back, f);
        // non-equivariant data is rejected
        assert!(parse_gmap("gmap X Y\n0 0\n", &x, &x).is_err());
        // out-of-range target indices are a parse error
        assert!(parse_gmap("gmap X Y\n9 9\n", &x, &pt).is_err());
    }

    #[test]
    fn bispan_round_trip() {
        let g = builder_group("cyclic:2").unwrap();
        let x = orbit(&g, &Subgroup::trivial(&g));
        let pi = GMap::to_point(&x);
        let b = Bispan::new(pi.clone(), GMap::identity(&x), pi.clone()).unwrap();
        let text = emit_bispan(&b, "cyclic:2");
        let back = parse_bispan(&text).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn indexing_round_trip() {
        let g = builder_group("cyclic:4").unwrap();
        for sys in indexing::enumerate(&g).unwrap() {
            let text = emit_indexing(&sys, "cyclic:4");
            let back = parse_indexing(&text).unwrap();
            assert_eq!(back, sys);
        }
    }

    #[test]
    fn ring_round_trip() {
        let g = builder_group("cyclic:2").unwrap();
        let r = GRing::square_with_swap(g.clone(), 3, &Subgroup::trivial(&g)).unwrap();
        let text = emit_ring(&r);
        let back = parse_ring(&g, &text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_group("group 2\n0 1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected a parse error, got {other}"),
        }
        let err = parse_indexing("indexing cyclic:2\nbad line\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected a parse error, got {other}"),
        }
    }
}
