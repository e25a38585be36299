//! R6, R7 and R9: semantics of high-order types.

use std::collections::BTreeMap;

use super::{Context, RuleConfig, RuleId, Severity, Violation, MSG_R6, MSG_R7_TEMPLATE};
use crate::rdf::{ns, Term};
use crate::vocab::{gufo, DisjointOrigin};

/// Base types per categorizing type, over the given property's closure.
fn categorized(ctx: &Context, property: &str) -> BTreeMap<u32, Vec<u32>> {
    let mut by_subject: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    if let Some(p) = ctx.id(property) {
        for &(h, b) in ctx.closures.effective(p) {
            by_subject.entry(h).or_default().push(b);
        }
    }
    by_subject
}

/// Every instance of a categorizing type must specialize the base type.
/// An instance that is the base type itself is accepted.
pub(super) fn r6_categorization_subclassing(ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    for (h, bases) in categorized(ctx, gufo::CATEGORIZES) {
        let instances = ctx.closures.instances_of_id(h);
        for &b in &bases {
            for &x in &instances {
                if x == b || ctx.supers(x, cfg).contains(&b) {
                    continue;
                }
                out.push(
                    Violation::new(RuleId::R6, Severity::Error, ctx.term(h).clone(), MSG_R6)
                        .with_secondary(vec![ctx.term(x).clone(), ctx.term(b).clone()]),
                );
            }
        }
    }
    out
}

fn asserted_either_way(ctx: &Context, predicate: &str, a: &Term, b: &Term) -> bool {
    let p = Term::iri(predicate);
    ctx.graph.matches(Some(a), Some(&p), Some(b)).next().is_some()
        || ctx.graph.matches(Some(b), Some(&p), Some(a)).next().is_some()
}

/// Instances of a partitioning type must be pairwise declared disjoint.
pub(super) fn r7_partition_disjointness(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    for (owner, err) in ctx.closures.list_errors() {
        out.push(Violation::new(
            RuleId::R7,
            Severity::Error,
            ctx.term(*owner).clone(),
            format!("Malformed disjointness list: {err}."),
        ));
    }
    for h in categorized(ctx, gufo::PARTITIONS).into_keys() {
        let mut instances: Vec<&Term> = ctx.closures.instances_of_id(h).into_iter().map(|x| ctx.term(x)).collect();
        instances.sort();
        for (i, &t1) in instances.iter().enumerate() {
            for &t2 in &instances[i + 1..] {
                if asserted_either_way(ctx, ns::OWL_EQUIVALENT_CLASS, t1, t2)
                    || asserted_either_way(ctx, ns::OWL_SAME_AS, t1, t2)
                {
                    continue;
                }
                let declared = match (ctx.id_of(t1), ctx.id_of(t2)) {
                    (Some(a), Some(b)) => ctx
                        .closures
                        .disjoint_with(a)
                        .iter()
                        .any(|e| e.other == b && e.origin == DisjointOrigin::External),
                    _ => false,
                };
                if declared {
                    continue;
                }
                let message = MSG_R7_TEMPLATE
                    .replace("{?type1}", &ctx.compact_term(t1))
                    .replace("{?type2}", &ctx.compact_term(t2))
                    .replace("{$this}", &ctx.compact(h));
                out.push(
                    Violation::new(RuleId::R7, Severity::Error, ctx.term(h).clone(), message)
                        .with_secondary(vec![t1.clone(), t2.clone()]),
                );
            }
        }
    }
    out
}

/// A categorizing type must not itself be a first-order type.
pub(super) fn r9_categorizer_not_first_order(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    let first_order = ctx.ids(&[gufo::ABSTRACT_INDIVIDUAL_TYPE, gufo::CONCRETE_INDIVIDUAL_TYPE]);
    let mut out = Vec::new();
    for (h, bases) in categorized(ctx, gufo::CATEGORIZES) {
        let Some(&witness) = first_order.iter().find(|&&t| ctx.closures.has_type(h, t)) else { continue };
        let message = format!(
            "{} categorizes other types but is itself a first-order type (an instance of {}).",
            ctx.compact(h),
            ctx.compact(witness)
        );
        out.push(
            Violation::new(RuleId::R9, Severity::Error, ctx.term(h).clone(), message)
                .with_secondary(ctx.sorted_terms(bases)),
        );
    }
    out
}
