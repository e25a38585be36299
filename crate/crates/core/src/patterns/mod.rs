//! Lints for the reification patterns: inherence, relators, time points,
//! situations, domains and ranges, historical dependence.

mod temporal;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::rdf::TermId;
use crate::rules::{run_selected, Context, RuleConfig, RuleId, Severity, Violation};
use crate::vocab::{gufo, DisjointOrigin};

pub use temporal::{l3_temporal_ordering, TemporalError, TemporalKind, TemporalValue};

/// Distinct objects per subject of a vocabulary property's closure.
fn objects_by_subject(ctx: &Context, property: &str) -> BTreeMap<u32, BTreeSet<u32>> {
    let mut map: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    if let Some(p) = ctx.id(property) {
        for &(s, o) in ctx.closures.effective(p) {
            map.entry(s).or_default().insert(o);
        }
    }
    map
}

/// An aspect inheres in exactly one bearer.
pub fn l1_inherence_cardinality(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    objects_by_subject(ctx, gufo::INHERES_IN)
        .into_iter()
        .filter(|(_, bearers)| bearers.len() > 1)
        .map(|(s, bearers)| {
            let secondary = ctx.sorted_terms(bearers);
            let names: Vec<String> = secondary.iter().map(|t| ctx.compact_term(t)).collect();
            let message = format!("{} inheres in more than one bearer: {}.", ctx.compact(s), names.join(", "));
            Violation::new(RuleId::L1, Severity::Error, ctx.term(s).clone(), message).with_secondary(secondary)
        })
        .collect()
}

/// A relator mediates at least two individuals. Open world: warning only.
pub fn l2_relator_arity(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    let Some(relator) = ctx.id(gufo::RELATOR) else { return Vec::new() };
    let mediated = objects_by_subject(ctx, gufo::MEDIATES);
    let mut out = Vec::new();
    for x in ctx.closures.instances_of_id(relator) {
        let found = mediated.get(&x).map_or(0, BTreeSet::len);
        if found < 2 {
            let message = format!("Relator {} mediates fewer than two individuals ({found} found).", ctx.compact(x));
            out.push(
                Violation::new(RuleId::L2, Severity::Warning, ctx.term(x).clone(), message)
                    .with_secondary(ctx.sorted_terms(mediated.get(&x).into_iter().flatten().copied())),
            );
        }
    }
    out
}

/// Quality value attribution situations name a quality type and a value;
/// the quality type specializes `gufo:Quality`.
pub fn l4_situation_completeness(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    let quality_type = objects_by_subject(ctx, gufo::CONCERNS_QUALITY_TYPE);
    let value = objects_by_subject(ctx, gufo::CONCERNS_QUALITY_VALUE);
    let reified = objects_by_subject(ctx, gufo::HAS_REIFIED_QUALITY_VALUE);
    if let Some(situation) = ctx.id(gufo::QUALITY_VALUE_ATTRIBUTION_SITUATION) {
        for x in ctx.closures.instances_of_id(situation) {
            let mut missing = Vec::new();
            if !quality_type.contains_key(&x) {
                missing.push("gufo:concernsQualityType");
            }
            if !value.contains_key(&x) && !reified.contains_key(&x) {
                missing.push("a quality value (gufo:concernsQualityValue or gufo:hasReifiedQualityValue)");
            }
            if !missing.is_empty() {
                let message = format!("Quality value attribution {} lacks {}.", ctx.compact(x), missing.join(" and "));
                out.push(Violation::new(RuleId::L4, Severity::Warning, ctx.term(x).clone(), message));
            }
        }
    }
    if let Some(quality) = ctx.id(gufo::QUALITY) {
        for (s, types) in &quality_type {
            for &t in types {
                if t == quality || ctx.closures.class_above(t).contains(&quality) {
                    continue;
                }
                let message = format!(
                    "{} is used as a quality type by {} but does not specialize gufo:Quality.",
                    ctx.compact(t),
                    ctx.compact(*s)
                );
                out.push(
                    Violation::new(RuleId::L4, Severity::Error, ctx.term(*s).clone(), message)
                        .with_secondary(vec![ctx.term(t).clone()]),
                );
            }
        }
    }
    out
}

/// Subjects and objects of gUFO properties must not be typed by a class
/// disjoint with the property's domain or range. Untyped terms get a note.
pub fn l5_domain_range_conformance(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    // predicate id -> (domains, ranges) it inherits from the vocabulary
    let mut constraints: BTreeMap<u32, (BTreeSet<u32>, BTreeSet<u32>)> = BTreeMap::new();
    for (p, d, r) in ctx.vocab.domain_range_entries() {
        let Some(pid) = ctx.id(p) else { continue };
        for q in std::iter::once(pid).chain(ctx.closures.prop_below(pid).iter().copied()) {
            let entry = constraints.entry(q).or_default();
            entry.0.extend(d.and_then(|d| ctx.id(d)));
            entry.1.extend(r.and_then(|r| ctx.id(r)));
        }
    }

    let mut out = Vec::new();
    let mut untyped: BTreeSet<(u32, u32, bool)> = BTreeSet::new();
    let graph_terms = ctx.graph.term_count() as u32;
    for (&q, (domains, ranges)) in &constraints {
        if q >= graph_terms {
            continue;
        }
        for [s, _, o] in ctx.graph.match_ids(None, Some(TermId(q)), None) {
            let triple_location = ctx
                .graph
                .location(&crate::rdf::Triple {
                    subject: ctx.term(s).clone(),
                    predicate: ctx.term(q).clone(),
                    object: ctx.term(o).clone(),
                })
                .and_then(|l| ctx.resolve(l));
            for (term, expected, is_subject) in [(s, domains, true), (o, ranges, false)] {
                if expected.is_empty() || ctx.term(term).is_literal() {
                    continue;
                }
                let types = ctx.closures.types_of(term);
                if types.is_empty() {
                    for &c in expected {
                        untyped.insert((term, c, is_subject));
                    }
                    continue;
                }
                let clash = expected.iter().find_map(|&c| {
                    ctx.closures
                        .disjoint_closure(c)
                        .into_iter()
                        .find(|e| types.binary_search(&e.other).is_ok())
                        .map(|e| (c, e))
                });
                if let Some((c, entry)) = clash {
                    let role = if is_subject { "subject" } else { "object" };
                    let message = format!(
                        "{} cannot be a {} as the {role} of {}, because it is a {}.",
                        ctx.compact(term),
                        ctx.compact(c),
                        ctx.compact(q),
                        ctx.compact(entry.other)
                    );
                    let severity = match entry.origin {
                        DisjointOrigin::Inferred => Severity::Warning,
                        _ => Severity::Error,
                    };
                    out.push(
                        Violation::new(RuleId::L5, severity, ctx.term(term).clone(), message)
                            .with_secondary(vec![ctx.term(q).clone(), ctx.term(c).clone(), ctx.term(entry.other).clone()])
                            .at(triple_location.clone()),
                    );
                }
            }
        }
    }
    for (term, class, is_subject) in untyped {
        let role = if is_subject { "domain" } else { "range" };
        let message = format!("{} has no type; a gUFO {role} expects a {}.", ctx.compact(term), ctx.compact(class));
        out.push(
            Violation::new(RuleId::L5, Severity::Info, ctx.term(term).clone(), message)
                .with_secondary(vec![ctx.term(class).clone()]),
        );
    }
    out
}

/// Historical dependence cycles, one warning per strongly connected group
/// with a shortest witness path through its first member.
pub fn l6_dependence_cycles(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    let Some(p) = ctx.id(gufo::HISTORICALLY_DEPENDS_ON) else { return Vec::new() };
    let pairs = ctx.closures.effective(p);
    let mut g: DiGraph<u32, ()> = DiGraph::new();
    let mut nodes: HashMap<u32, NodeIndex> = HashMap::new();
    for &(a, b) in pairs {
        let na = *nodes.entry(a).or_insert_with(|| g.add_node(a));
        let nb = *nodes.entry(b).or_insert_with(|| g.add_node(b));
        g.add_edge(na, nb, ());
    }
    let mut out = Vec::new();
    for component in tarjan_scc(&g) {
        let members: BTreeSet<u32> = component.iter().map(|&n| g[n]).collect();
        let first = *members.iter().min_by_key(|&&m| ctx.term(m)).expect("non-empty component");
        let self_loop = pairs.binary_search(&(first, first)).is_ok();
        if members.len() == 1 && !self_loop {
            continue;
        }
        let path = shortest_cycle(pairs, &members, first);
        let mut names: Vec<String> = path.iter().map(|&x| ctx.compact(x)).collect();
        names.push(ctx.compact(first));
        let message = format!("Historical dependence cycle: {}.", names.join(" -> "));
        out.push(
            Violation::new(RuleId::L6, Severity::Warning, ctx.term(first).clone(), message)
                .with_secondary(path.iter().skip(1).map(|&x| ctx.term(x).clone()).collect()),
        );
    }
    out
}

/// Breadth-first search from `start` back to itself, staying inside `scc`.
/// Returns the visited nodes starting with `start`, without the repeat.
fn shortest_cycle(pairs: &[(u32, u32)], scc: &BTreeSet<u32>, start: u32) -> Vec<u32> {
    let succ = |x: u32| {
        let lo = pairs.partition_point(|&(a, _)| a < x);
        pairs[lo..].iter().take_while(move |&&(a, _)| a == x).map(|&(_, b)| b)
    };
    let mut parent: HashMap<u32, u32> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for y in succ(x) {
            if !scc.contains(&y) {
                continue;
            }
            if y == start {
                let mut path = vec![x];
                let mut cur = x;
                while cur != start {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(y) {
                e.insert(x);
                queue.push_back(y);
            }
        }
    }
    vec![start]
}

/// Every enabled L* lint.
pub fn run_lints(ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    let ids: Vec<RuleId> = RuleId::ALL.into_iter().filter(|r| r.is_lint()).collect();
    run_selected(ctx, cfg, &ids)
}
