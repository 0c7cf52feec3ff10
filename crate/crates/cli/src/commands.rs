use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use burnside_core::burnside::{hom_basis, Span};
use burnside_core::doc::{
    self, class_entries, compose_all, parse_group, Category, CategoryDoc, FreeMorphismDoc, GObjectDoc, GroupoidDoc,
    SpanDoc,
};
use burnside_core::group::perm::parse_cycles;
use burnside_core::group::{double_cosets, CosetSystem, FiniteGroup, Limits, Subgroup};
use burnside_core::gset::burnside_ring;
use burnside_core::mackey::{
    burnside_mackey, check_functoriality, compare_main_theorem, double_coset_sweep, swan_mackey, EvaluationReport,
    MackeyData, MackeyDocument,
};
use burnside_core::symmon::{iso_classes, norm, GObject, Permutative};

use crate::args::{Cli, Command, MackeyArgs, NormArgs};
use crate::error::{CliError, CliResult};
use crate::output::{cell, Outcome, Table};

const DEFAULT_MAX_OBJECT: usize = 6;

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let limits = Limits::from_env();
    match &cli.command {
        Command::Hom { source, target } => hom(source, target, cli.bound, &limits),
        Command::Compose { spans } => {
            let docs: Vec<SpanDoc> = doc::from_value(load(spans)?)?;
            let spans = docs.iter().map(|d| d.build(&limits)).collect::<Result<Vec<_>, _>>()?;
            classes(&compose_all(&spans)?)
        }
        Command::SpanCanon { span } => classes(&doc::from_value::<SpanDoc>(load(span)?)?.build(&limits)?),
        Command::BurnsideRing { group } => ring(&load_group(group, &limits)?, &limits),
        Command::DoubleCoset { group, left, right } => double_coset(&load_group(group, &limits)?, left, right),
        Command::Swan { category, group } => {
            let group = load_group(group, &limits)?;
            match load_category(category, &limits)? {
                Category::Free(cat) => swan(&cat, &group, &limits),
                Category::Table(cat) => swan(&cat, &group, &limits),
            }
        }
        Command::Norm(args) => run_norm(args, &limits),
        Command::MackeyCheck(args) => mackey_check(args, cli.seed, &limits),
        Command::VerifyMain { coefficients, groups } => {
            let coefficients = load_group(coefficients, &limits)?;
            let groups = groups.iter().map(|g| load_group(g, &limits)).collect::<CliResult<Vec<_>>>()?;
            let report = compare_main_theorem(&coefficients, &groups, cli.bound.unwrap_or(DEFAULT_MAX_OBJECT), &limits)?;
            Ok(reports(json!({ "coefficients_order": coefficients.order() }), vec![report]))
        }
    }
}

/// Inline JSON when the argument looks like JSON, otherwise the contents of the named file.
fn load(arg: &str) -> CliResult<Value> {
    Ok(doc::from_str(&read_arg(arg)?)?)
}

fn read_arg(arg: &str) -> CliResult<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|source| CliError::Io { path: arg.to_string(), source })
}

/// A group document, a file holding one, or a bare preset name.
fn load_group(arg: &str, limits: &Limits) -> CliResult<Arc<FiniteGroup>> {
    let looks_like_file = !arg.trim_start().starts_with('{') && Path::new(arg).is_file();
    let text = if looks_like_file { read_arg(arg)? } else { arg.to_string() };
    Ok(parse_group(&text, limits)?)
}

/// A category document, a file holding one, or a bare preset such as `finset:4`.
fn load_category(arg: &str, limits: &Limits) -> CliResult<Category> {
    let trimmed = arg.trim_start();
    let doc = if trimmed.starts_with('{') || Path::new(arg).is_file() {
        doc::from_value::<CategoryDoc>(load(arg)?)?
    } else {
        CategoryDoc::Preset { preset: arg.to_string() }
    };
    Ok(doc.build(limits)?)
}

/// Resolves a cycle string like "(1 2)(3 4)" or a plain element index inside `group`.
fn element(group: &FiniteGroup, text: &str) -> CliResult<usize> {
    let text = text.trim();
    if let Ok(index) = text.parse::<usize>() {
        if index < group.order() {
            return Ok(index);
        }
        return Err(CliError::Usage(format!("element index {index} out of range for a group of order {}", group.order())));
    }
    let degree = group
        .permutation_degree()
        .ok_or_else(|| CliError::Usage(format!("{text:?}: this group has no permutation labels, use element indices")))?;
    let perm = parse_cycles(text, degree)?;
    group
        .element_of_permutation(&perm)
        .ok_or_else(|| CliError::Usage(format!("{text:?} is not an element of the group")))
}

fn subgroup(group: &FiniteGroup, gens: &[String]) -> CliResult<Subgroup> {
    let gens = gens.iter().map(|g| element(group, g)).collect::<CliResult<Vec<_>>>()?;
    Ok(Subgroup::generated_by(group, &gens))
}

fn hom(source: &str, target: &str, bound: Option<usize>, limits: &Limits) -> CliResult<Outcome> {
    let source = doc::from_value::<GroupoidDoc>(load_groupoid(source)?)?.build(limits)?;
    let target = doc::from_value::<GroupoidDoc>(load_groupoid(target)?)?.build(limits)?;
    let basis = hom_basis(&source, &target, bound, limits)?;
    let mut table = Table::new(vec!["i", "j", "L", "phi"]);
    let entries: Vec<Value> = basis
        .classes
        .iter()
        .map(|c| {
            table.push(vec![c.i.to_string(), c.j.to_string(), cell(&c.key.subgroup), cell(&c.key.map)]);
            json!({ "i": c.i, "j": c.j, "L": c.key.subgroup, "phi": c.key.map })
        })
        .collect();
    Ok(Outcome::ok(json!({ "basis": entries, "rank": basis.rank(), "bound": bound }), table))
}

/// Groupoid arguments also accept bare group presets.
fn load_groupoid(arg: &str) -> CliResult<Value> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') || Path::new(arg).is_file() {
        load(arg)
    } else {
        Ok(json!({ "preset": arg }))
    }
}

fn classes(span: &Span) -> CliResult<Outcome> {
    let entries = class_entries(&span.class()?);
    let mut table = Table::new(vec!["i", "j", "L", "phi", "mult"]);
    for e in &entries {
        table.push(vec![e.i.to_string(), e.j.to_string(), cell(&e.subgroup), cell(&e.phi), e.mult.to_string()]);
    }
    Ok(Outcome::ok(json!({ "classes": entries }), table))
}

fn ring(group: &Arc<FiniteGroup>, limits: &Limits) -> CliResult<Outcome> {
    let ring = burnside_ring(group, limits)?;
    let labels: Vec<String> = ring.basis.iter().map(|l| format!("G/{}", cell(l))).collect();
    let mut table = Table::new(std::iter::once("x").chain(labels.iter().map(String::as_str)).collect());
    for (label, row) in labels.iter().zip(&ring.multiplication) {
        table.push(std::iter::once(label.clone()).chain(row.iter().map(cell)).collect());
    }
    Ok(Outcome::ok(
        json!({
            "order": group.order(),
            "rank": ring.rank(),
            "basis": ring.basis,
            "labels": labels,
            "marks": ring.marks,
            "multiplication": ring.multiplication,
        }),
        table,
    ))
}

fn double_coset(group: &Arc<FiniteGroup>, left: &[String], right: &[String]) -> CliResult<Outcome> {
    let k = subgroup(group, left)?;
    let h = subgroup(group, right)?;
    let cosets = double_cosets(group, &k, &h)?;
    let mut table = Table::new(vec!["rep", "label", "size", "intersection"]);
    let entries: Vec<Value> = cosets
        .iter()
        .map(|d| {
            let label = group.element_label(d.rep);
            table.push(vec![d.rep.to_string(), label.clone(), d.size.to_string(), cell(d.intersection.elements())]);
            json!({ "rep": d.rep, "label": label, "size": d.size, "intersection": d.intersection.elements() })
        })
        .collect();
    Ok(Outcome::ok(
        json!({ "left": k.elements(), "right": h.elements(), "count": cosets.len(), "double_cosets": entries }),
        table,
    ))
}

fn swan<C: Permutative>(cat: &C, group: &Arc<FiniteGroup>, limits: &Limits) -> CliResult<Outcome> {
    let monoid = iso_classes(group, cat, limits)?;
    let mut table = Table::new(vec!["label", "object", "action"]);
    let entries: Vec<Value> = monoid
        .basis
        .iter()
        .map(|b| {
            table.push(vec![b.label.clone(), b.object.object().to_string(), cell(b.object.action())]);
            json!({ "label": b.label, "object": GObjectDoc::of(&b.object) })
        })
        .collect();
    Ok(Outcome::ok(
        json!({ "category": cat.name(), "order": group.order(), "rank": entries.len(), "basis": entries }),
        table,
    ))
}

fn run_norm(args: &NormArgs, limits: &Limits) -> CliResult<Outcome> {
    let group = load_group(&args.group, limits)?;
    let h = subgroup(&group, &args.subgroup)?;
    let cs = if args.reps.is_empty() {
        CosetSystem::canonical(&group, &h)
    } else {
        let reps = args.reps.iter().map(|r| element(&group, r)).collect::<CliResult<Vec<_>>>()?;
        CosetSystem::new(&group, &h, &reps)?
    };
    let object = load(&args.object)?;
    let hg = h.as_group(&group);
    match load_category(&args.category, limits)? {
        Category::Free(cat) => {
            let x = doc::from_value::<GObjectDoc<FreeMorphismDoc>>(object)?.build_free(&cat, &hg)?;
            norm_outcome(&cat, &group, &h, &cs, &x)
        }
        Category::Table(cat) => {
            let x = doc::from_value::<GObjectDoc<usize>>(object)?.build_table(&cat, &hg)?;
            norm_outcome(&cat, &group, &h, &cs, &x)
        }
    }
}

fn norm_outcome<C: Permutative>(
    cat: &C,
    group: &Arc<FiniteGroup>,
    h: &Subgroup,
    cs: &CosetSystem,
    x: &GObject<C::Mor>,
) -> CliResult<Outcome> {
    let result = norm(cat, group, h, cs, x)?;
    let mut table = Table::new(vec!["element", "morphism"]);
    for (g, m) in result.action().iter().enumerate() {
        table.push(vec![group.element_label(g), cell(m)]);
    }
    Ok(Outcome::ok(
        json!({ "category": cat.name(), "reps": cs.reps(), "object": result.object(), "action": result.action() }),
        table,
    ))
}

fn mackey_check(args: &MackeyArgs, seed: u64, limits: &Limits) -> CliResult<Outcome> {
    let data = match &args.data {
        Some(path) => MackeyData::from_document(&doc::from_value::<MackeyDocument>(load(path)?)?)?,
        None => {
            if args.groups.is_empty() {
                return Err(CliError::Usage("give --data or at least one --group".into()));
            }
            let groups = args.groups.iter().map(|g| load_group(g, limits)).collect::<CliResult<Vec<_>>>()?;
            match args.functor.as_str() {
                "burnside" => burnside_mackey(&groups, limits)?,
                "swan" => {
                    let category =
                        args.category.as_deref().ok_or_else(|| CliError::Usage("--functor swan needs --category".into()))?;
                    match load_category(category, limits)? {
                        Category::Free(cat) => swan_mackey(cat, &groups, limits)?,
                        Category::Table(cat) => swan_mackey(cat, &groups, limits)?,
                    }
                }
                other => return Err(CliError::Usage(format!("unknown functor {other:?}; expected burnside or swan"))),
            }
        }
    };
    if let Some(path) = &args.emit {
        let text = serde_json::to_string_pretty(&data.to_document()).expect("documents serialize");
        std::fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    let mut found = vec![data.check_axioms(), double_coset_sweep(&data, args.max_order, limits)?];
    if args.samples > 0 {
        found.push(check_functoriality(&data, args.samples, seed, limits)?);
    }
    let names: Vec<&str> = data.family().iter().map(|f| f.name.as_str()).collect();
    Ok(reports(json!({ "functor": data.functor_name(), "family": names }), found))
}

fn reports(mut header: Value, found: Vec<EvaluationReport>) -> Outcome {
    let passed = found.iter().all(EvaluationReport::passed);
    let mut table = Table::new(vec!["check", "status", "checked"]);
    for r in &found {
        table.push(vec![r.check.clone(), cell(&r.status), r.checked.to_string()]);
    }
    header["status"] = json!(if passed { "pass" } else { "fail" });
    header["reports"] = json!(found);
    Outcome { json: header, table, passed }
}
