//! `tambara`: command-line front end for the bispan calculus, indexing-system
//! classification, and Tambara-functor model evaluation.
//!
//! Exit codes: 0 = success/verified, 1 = verified-false (with witness),
//! 2 = usage or input error, 3 = resource bound exceeded.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tambara_core::bispan::Bispan;
use tambara_core::exponent::ExponentPredicate;
use tambara_core::group::{subgroup_lattice, Group, Subgroup};
use tambara_core::indexing::{self, IndexingSystem};
use tambara_core::model::{
    burnside_model, family_ideal_c2, fixed_point_model, is_o_ideal, reciprocity_sum,
    reciprocity_transfer, verify_reciprocity, TambaraModel,
};
use tambara_core::selftest;
use tambara_core::text;
use tambara_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "tambara",
    about = "Bispan calculus, indexing systems, and Tambara-functor models over finite groups",
    version
)]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (accepted for compatibility; output is deterministic
    /// regardless of the value).
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Inspect or emit finite groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Enumerate, validate, and render indexing systems.
    #[command(subcommand)]
    Indexing(IndexingCmd),
    /// Compose, canonicalize, count, and check bispans.
    #[command(subcommand)]
    Bispan(BispanCmd),
    /// Evaluate and verify Tambara-functor models.
    #[command(subcommand)]
    Tambara(TambaraCmd),
    /// Run the full acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Order, subgroup lattice, and conjugacy classes of subgroups.
    Info { group: String },
    /// Emit the group in the text file format (round-trips).
    Emit { group: String },
}

#[derive(Subcommand)]
enum IndexingCmd {
    /// Enumerate all indexing systems over a group.
    Enumerate {
        group: String,
        /// Print only the number of systems.
        #[arg(long)]
        count: bool,
        /// Emit the inclusion poset of systems as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Check the closure axioms of an indexing-system file.
    Validate { file: String },
    /// Render one indexing-system file (admissible pairs; DOT optional).
    Show {
        file: String,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Subcommand)]
enum BispanCmd {
    /// Compose two bispans (endpoints must match); emits the composite.
    Compose {
        first: String,
        second: String,
        /// Restrict exponents to this indexing-system file.
        #[arg(long)]
        indexing: Option<String>,
    },
    /// Emit the canonical representative of a bispan's isomorphism class.
    Canon { file: String },
    /// Count isomorphism classes of bispans X → Y within size bounds.
    Homcount {
        x: String,
        y: String,
        #[arg(long, default_value_t = 2)]
        sbound: usize,
        #[arg(long, default_value_t = 2)]
        tbound: usize,
        /// Restrict exponents to this indexing-system file.
        #[arg(long)]
        indexing: Option<String>,
    },
    /// Verify that a bispan's exponent lies in an indexing system.
    CheckExponent {
        file: String,
        #[arg(long)]
        indexing: String,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Ambient group (builder like `cyclic:2` or a group file).
    #[arg(long)]
    group: String,
    /// `burnside` or the path to a ring file (fixed-point model).
    #[arg(long, default_value = "burnside")]
    model: String,
    /// Reduce Burnside coefficients modulo n (ideal checks only).
    #[arg(long)]
    modulus: Option<i64>,
    /// Indexing system: `trivial`, `complete`, or a file path.
    #[arg(long, default_value = "complete")]
    system: String,
}

#[derive(Subcommand)]
enum TambaraCmd {
    /// Tabulate a bispan's action on the model's value grid.
    Eval {
        bispan: String,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1)]
        coeff_bound: i64,
    },
    /// Print the Tambara reciprocity formula for a subgroup pair.
    Reciprocity {
        #[arg(long)]
        group: String,
        /// Sum reciprocity for H ≤ K: two subgroup names.
        #[arg(long, num_args = 2, value_names = ["H", "K"])]
        sum: Option<Vec<String>>,
        /// Transfer reciprocity for H ≤ K ≤ G: two subgroup names.
        #[arg(long, num_args = 2, value_names = ["H", "K"])]
        transfer: Option<Vec<String>>,
        /// Indexing system: `trivial`, `complete`, or a file path.
        #[arg(long, default_value = "complete")]
        system: String,
    },
    /// Exhaustively verify a reciprocity formula in a model.
    VerifyReciprocity {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, num_args = 2, value_names = ["H", "K"])]
        sum: Option<Vec<String>>,
        #[arg(long, num_args = 2, value_names = ["H", "K"])]
        transfer: Option<Vec<String>>,
        #[arg(long, default_value_t = 1)]
        coeff_bound: i64,
    },
    /// Check the family ideal over C2 in a finite-ized Burnside model.
    IdealCheck {
        #[command(flatten)]
        model: ModelArgs,
        /// Largest object (point count) quantified over.
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
}

/// Resolve a group reference: builder syntax first, then a file path.
fn resolve_group(s: &str) -> Result<Group> {
    if let Ok(g) = text::builder_group(s) {
        return Ok(g);
    }
    if std::path::Path::new(s).exists() {
        return text::parse_group(&read(s)?);
    }
    text::builder_group(s)
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::parse(0, format!("cannot read {path}: {e}")))
}

/// The `<group-ref>` token of the first `gset` header in a file, used when
/// re-emitting artifacts.
fn group_ref_of(textual: &str) -> String {
    for line in textual.lines() {
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() >= 2 && (t[0] == "gset" || t[0] == "indexing") {
            return t[1].to_string();
        }
    }
    "group".to_string()
}

/// Subgroup lookup by name: `e` (trivial), `G` (full), `<prefix><order>`
/// (e.g. `C2`), or a comma-separated element list.  When several conjugacy
/// classes share an order the lattice-least subgroup is chosen.
fn resolve_subgroup(group: &Group, name: &str) -> Result<Subgroup> {
    if name == "e" || name == "1" {
        return Ok(Subgroup::trivial(group));
    }
    if name == "G" || name.eq_ignore_ascii_case(group.name()) {
        return Ok(Subgroup::full(group));
    }
    if name.contains(',') || name.chars().all(|c| c.is_ascii_digit()) {
        let elems = text::parse_element_list(0, name, group.order())?;
        return Ok(Subgroup::generated(group, &elems));
    }
    let digits: String = name.chars().filter(|c| c.is_ascii_digit()).collect();
    let order: usize = digits
        .parse()
        .map_err(|_| Error::Shape(format!("cannot read subgroup name `{name}`")))?;
    let lat = subgroup_lattice(group)?;
    lat.subgroups()
        .iter()
        .find(|s| s.order() == order)
        .cloned()
        .ok_or_else(|| Error::Shape(format!("no subgroup of order {order} in {}", group.name())))
}

fn resolve_system(group: &Group, s: &str) -> Result<IndexingSystem> {
    match s {
        "trivial" => IndexingSystem::trivial(group),
        "complete" => IndexingSystem::complete(group),
        path => {
            let sys = text::parse_indexing_with(&read(path)?, &resolve_group)?;
            if sys.group() != group {
                return Err(Error::Shape(
                    "indexing system is over a different group".into(),
                ));
            }
            Ok(sys)
        }
    }
}

fn build_model(a: &ModelArgs) -> Result<(Group, TambaraModel)> {
    let group = resolve_group(&a.group)?;
    let system = resolve_system(&group, &a.system)?;
    let model = if a.model == "burnside" {
        burnside_model(&group, system, a.modulus)?
    } else {
        let ring = text::parse_ring(&group, &read(&a.model)?)?;
        fixed_point_model(ring, system)?
    };
    Ok((group, model))
}

fn subgroup_label(group: &Group, s: &Subgroup) -> String {
    if s.order() == 1 {
        "e".to_string()
    } else if s.order() == group.order() {
        group.name().to_string()
    } else {
        format!(
            "[{}]",
            s.elements()
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A command's result: human text, JSON mirror, and the exit code.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Outcome { text, json, code: 0 }
    }
    fn falsified(text: String, json: serde_json::Value) -> Self {
        Outcome { text, json, code: 1 }
    }
}

fn run_group(cmd: &GroupCmd) -> Result<Outcome> {
    match cmd {
        GroupCmd::Info { group } => {
            let g = resolve_group(group)?;
            let lat = subgroup_lattice(&g)?;
            let mut lines = vec![format!("group {} of order {}", g.name(), g.order())];
            let mut subs = Vec::new();
            for (i, s) in lat.subgroups().iter().enumerate() {
                let label = subgroup_label(&g, s);
                lines.push(format!(
                    "subgroup {i}: order {} class {} {}",
                    s.order(),
                    lat.class_of(i),
                    label
                ));
                subs.push(json!({
                    "index": i,
                    "order": s.order(),
                    "class": lat.class_of(i),
                    "elements": s.elements(),
                }));
            }
            Ok(Outcome::ok(
                lines.join("\n"),
                json!({"name": g.name(), "order": g.order(), "subgroups": subs}),
            ))
        }
        GroupCmd::Emit { group } => {
            let g = resolve_group(group)?;
            let out = text::emit_group(&g);
            let j = json!({"group": out.clone()});
            Ok(Outcome::ok(out, j))
        }
    }
}

fn systems_dot(systems: &[IndexingSystem]) -> String {
    let edges = indexing::hasse_edges(systems);
    let mut s = String::from("digraph indexing_systems {\n  rankdir=BT;\n");
    for (i, sys) in systems.iter().enumerate() {
        let n = sys.pairs().count();
        s.push_str(&format!("  I{i} [label=\"I{i} ({n} pairs)\"];\n"));
    }
    for (a, b) in edges {
        s.push_str(&format!("  I{a} -> I{b};\n"));
    }
    s.push_str("}\n");
    s
}

fn run_indexing(cmd: &IndexingCmd) -> Result<Outcome> {
    match cmd {
        IndexingCmd::Enumerate { group, count, dot } => {
            let g = resolve_group(group)?;
            let systems = indexing::enumerate(&g)?;
            if *count {
                return Ok(Outcome::ok(
                    systems.len().to_string(),
                    json!({"count": systems.len()}),
                ));
            }
            if *dot {
                let d = systems_dot(&systems);
                let j = json!({"count": systems.len(), "dot": d.clone()});
                return Ok(Outcome::ok(d, j));
            }
            let mut lines = Vec::new();
            let mut emitted = Vec::new();
            for (i, sys) in systems.iter().enumerate() {
                let body = text::emit_indexing(sys, group);
                lines.push(format!("# system {i}\n{body}"));
                emitted.push(body);
            }
            Ok(Outcome::ok(
                lines.join("\n"),
                json!({"count": systems.len(), "systems": emitted}),
            ))
        }
        IndexingCmd::Validate { file } => {
            let content = read(file)?;
            let sys = text::parse_indexing_with(&content, &resolve_group)?;
            match sys.validate()? {
                None => Ok(Outcome::ok(
                    "OK (all closure axioms hold)".into(),
                    json!({"valid": true}),
                )),
                Some(v) => Ok(Outcome::falsified(
                    format!("NOT an indexing system: {v}"),
                    json!({"valid": false, "witness": v.to_string()}),
                )),
            }
        }
        IndexingCmd::Show { file, dot } => {
            let content = read(file)?;
            let sys = text::parse_indexing_with(&content, &resolve_group)?;
            let g = sys.group().clone();
            let lat = subgroup_lattice(&g)?;
            let mut pairs = Vec::new();
            for (h, k) in sys.pairs() {
                pairs.push((
                    subgroup_label(&g, lat.subgroup(h)),
                    subgroup_label(&g, lat.subgroup(k)),
                ));
            }
            if *dot {
                let mut s = String::from("digraph admissible_pairs {\n  rankdir=BT;\n");
                for (i, sub) in lat.subgroups().iter().enumerate() {
                    s.push_str(&format!(
                        "  S{i} [label=\"{}\"];\n",
                        subgroup_label(&g, sub)
                    ));
                }
                for (h, k) in sys.pairs() {
                    s.push_str(&format!("  S{k} -> S{h};\n"));
                }
                s.push_str("}\n");
                let j = json!({"pairs": pairs, "dot": s.clone()});
                return Ok(Outcome::ok(s, j));
            }
            let lines: Vec<String> = pairs
                .iter()
                .map(|(h, k)| format!("adm {k} <= {h}"))
                .collect();
            Ok(Outcome::ok(lines.join("\n"), json!({"pairs": pairs})))
        }
    }
}

fn load_predicate(group: &Group, indexing: &Option<String>) -> Result<ExponentPredicate> {
    match indexing {
        None => Ok(ExponentPredicate::all(group.clone())),
        Some(path) => {
            let sys = resolve_system(group, path)?;
            Ok(ExponentPredicate::from_indexing(sys))
        }
    }
}

fn run_bispan(cmd: &BispanCmd) -> Result<Outcome> {
    match cmd {
        BispanCmd::Compose {
            first,
            second,
            indexing,
        } => {
            let a_text = read(first)?;
            let b_text = read(second)?;
            let p = text::parse_bispan_with(&a_text, &resolve_group)?;
            let q = text::parse_bispan_with(&b_text, &resolve_group)?;
            if p.y() != q.x() {
                return Err(Error::Shape(format!(
                    "endpoint mismatch: first bispan ends at a {}-point object, second starts at a {}-point object",
                    p.y().size(),
                    q.x().size()
                )));
            }
            let d = load_predicate(p.x().group(), indexing)?;
            let c = Bispan::compose(&p, &q, &d)?;
            let out = text::emit_bispan(&c, &group_ref_of(&a_text));
            let j = json!({"bispan": out.clone()});
            Ok(Outcome::ok(out, j))
        }
        BispanCmd::Canon { file } => {
            let content = read(file)?;
            let b = text::parse_bispan_with(&content, &resolve_group)?;
            let c = b.hom_class()?;
            let out = text::emit_bispan(c.rep(), &group_ref_of(&content));
            let j = json!({"bispan": out.clone()});
            Ok(Outcome::ok(out, j))
        }
        BispanCmd::Homcount {
            x,
            y,
            sbound,
            tbound,
            indexing,
        } => {
            let x_text = read(x)?;
            let xs = text::parse_gset_with(&x_text, &resolve_group)?;
            let ys = text::parse_gset_with(&read(y)?, &resolve_group)?;
            let d = load_predicate(xs.group(), indexing)?;
            let classes = tambara_core::bispan::enumerate_hom(&xs, &ys, &d, *sbound, *tbound)?;
            Ok(Outcome::ok(
                classes.len().to_string(),
                json!({"count": classes.len(), "sbound": sbound, "tbound": tbound}),
            ))
        }
        BispanCmd::CheckExponent { file, indexing } => {
            let content = read(file)?;
            let b = text::parse_bispan_with(&content, &resolve_group)?;
            let d = load_predicate(b.x().group(), &Some(indexing.clone()))?;
            if d.contains(b.g())? {
                Ok(Outcome::ok(
                    "OK (exponent is admissible)".into(),
                    json!({"admissible": true}),
                ))
            } else {
                let witness = format!(
                    "exponent escapes: the middle map ({} -> {} points) has an inadmissible fiber; predicate: {}",
                    b.s().size(),
                    b.t().size(),
                    d.describe()
                );
                Ok(Outcome::falsified(
                    witness.clone(),
                    json!({"admissible": false, "witness": witness}),
                ))
            }
        }
    }
}

fn rec_args(
    group: &Group,
    sum: &Option<Vec<String>>,
    transfer: &Option<Vec<String>>,
) -> Result<(bool, Subgroup, Subgroup)> {
    match (sum, transfer) {
        (Some(hk), None) => Ok((
            true,
            resolve_subgroup(group, &hk[0])?,
            resolve_subgroup(group, &hk[1])?,
        )),
        (None, Some(hk)) => Ok((
            false,
            resolve_subgroup(group, &hk[0])?,
            resolve_subgroup(group, &hk[1])?,
        )),
        _ => Err(Error::Shape(
            "exactly one of --sum or --transfer is required".into(),
        )),
    }
}

fn run_tambara(cmd: &TambaraCmd) -> Result<Outcome> {
    match cmd {
        TambaraCmd::Eval {
            bispan,
            model,
            coeff_bound,
        } => {
            let (_, m) = build_model(model)?;
            let b = text::parse_bispan_with(&read(bispan)?, &resolve_group)?;
            let grid = m.value_grid(b.x(), *coeff_bound)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for v in &grid {
                let out = m.eval(&b, v)?;
                lines.push(format!("{} -> {}", v.format(), out.format()));
                rows.push(json!({"input": v.format(), "output": out.format()}));
            }
            Ok(Outcome::ok(lines.join("\n"), json!({"table": rows})))
        }
        TambaraCmd::Reciprocity {
            group,
            sum,
            transfer,
            system,
        } => {
            let g = resolve_group(group)?;
            let sys = resolve_system(&g, system)?;
            let (is_sum, h, k) = rec_args(&g, sum, transfer)?;
            let formula = if is_sum {
                reciprocity_sum(&g, &h, &k, &sys)?
            } else {
                reciprocity_transfer(&g, &h, &k, &sys)?
            };
            let mut lines = vec![format!(
                "{} reciprocity for {} <= {}: {} indecomposable summands",
                if is_sum { "sum" } else { "transfer" },
                subgroup_label(&g, &h),
                subgroup_label(&g, &k),
                formula.summands.len()
            )];
            let mut emitted = Vec::new();
            for (i, s) in formula.summands.iter().enumerate() {
                let body = text::emit_bispan(s.rep(), group);
                lines.push(format!("# summand {i}\n{body}"));
                emitted.push(body);
            }
            Ok(Outcome::ok(
                lines.join("\n"),
                json!({"summands": formula.summands.len(), "terms": emitted}),
            ))
        }
        TambaraCmd::VerifyReciprocity {
            model,
            sum,
            transfer,
            coeff_bound,
        } => {
            let (g, m) = build_model(model)?;
            let (is_sum, h, k) = rec_args(&g, sum, transfer)?;
            let formula = if is_sum {
                reciprocity_sum(&g, &h, &k, m.system())?
            } else {
                reciprocity_transfer(&g, &h, &k, m.system())?
            };
            let rep = verify_reciprocity(&m, &formula, *coeff_bound)?;
            if rep.ok {
                Ok(Outcome::ok(
                    format!("OK ({} cases)", rep.cases),
                    json!({"verified": true, "cases": rep.cases}),
                ))
            } else {
                let w = rep.failure.unwrap_or_default();
                Ok(Outcome::falsified(
                    format!("FAILED after {} cases: {w}", rep.cases),
                    json!({"verified": false, "cases": rep.cases, "witness": w}),
                ))
            }
        }
        TambaraCmd::IdealCheck { model, bound } => {
            let (_, m) = build_model(model)?;
            let j = family_ideal_c2(&m)?;
            let rep = is_o_ideal(&m, &j, *bound)?;
            if rep.ok {
                Ok(Outcome::ok(
                    format!("OK: the family ideal is an O-ideal (objects up to {bound} points)"),
                    json!({"ideal": true, "object_bound": bound}),
                ))
            } else {
                let w = rep.witness.unwrap_or_default();
                Ok(Outcome::falsified(
                    format!("NOT an O-ideal: {w}"),
                    json!({"ideal": false, "witness": w, "object_bound": bound}),
                ))
            }
        }
    }
}

fn run_selftest() -> Outcome {
    let reports = selftest::run_all();
    let mut lines = Vec::new();
    let mut records = Vec::new();
    let mut all = true;
    for r in &reports {
        lines.push(r.line());
        records.push(json!({
            "criterion": r.index,
            "name": r.name,
            "pass": r.pass,
            "detail": r.detail,
            "seconds": r.seconds,
        }));
        all &= r.pass;
    }
    let j = json!({"pass": all, "criteria": records});
    if all {
        Outcome::ok(lines.join("\n"), j)
    } else {
        Outcome::falsified(lines.join("\n"), j)
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.verb {
        Verb::Group(c) => run_group(c),
        Verb::Indexing(c) => run_indexing(c),
        Verb::Bispan(c) => run_bispan(c),
        Verb::Tambara(c) => run_tambara(c),
        Verb::Selftest => Ok(run_selftest()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.threads; // accepted for compatibility; execution is single-pass
    match dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                let mut j = out.json.clone();
                if let Some(obj) = j.as_object_mut() {
                    obj.insert("exit".into(), json!(out.code));
                }
                println!("{j}");
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code: u8 = match e {
                Error::Resource(_) => 3,
                _ => 2,
            };
            if cli.json {
                println!("{}", json!({"error": e.to_string(), "exit": code}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
