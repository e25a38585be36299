//! Advisory notes: cycles, unfollowed imports, rejected vocabulary axioms.

use super::{Context, RuleConfig, RuleId, Severity, Violation};
use crate::rdf::{ns, Term};

pub(super) fn a1_cycles(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    for (kind, cycles) in [("Subclass", ctx.closures.class_cycles()), ("Subproperty", ctx.closures.property_cycles())] {
        for cycle in cycles {
            let mut members = ctx.sorted_terms(cycle.iter().copied());
            let focus = members.remove(0);
            let names: Vec<String> = std::iter::once(&focus).chain(&members).map(|t| ctx.compact_term(t)).collect();
            let message = format!("{kind} cycle; these terms are mutually specialized: {}.", names.join(", "));
            out.push(Violation::new(RuleId::A1, Severity::Info, focus, message).with_secondary(members));
        }
    }
    out
}

pub(super) fn a2_unresolved_imports(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    ctx.graph
        .matches(None, Some(&Term::iri(ns::OWL_IMPORTS)), None)
        .map(|t| {
            let message = format!(
                "Import of {} was not followed; its axioms are not checked.",
                ctx.compact_term(t.object)
            );
            Violation::new(RuleId::A2, Severity::Info, t.subject.clone(), message).with_secondary(vec![t.object.clone()])
        })
        .collect()
}

pub(super) fn a3_merge_conflicts(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    ctx.vocab
        .merge_conflicts()
        .iter()
        .map(|c| {
            let focus = Term::iri(&c.subject);
            let object = Term::iri(&c.object);
            let message = format!(
                "Ignored external axiom {} {} {}: {}.",
                ctx.compact_term(&focus),
                ctx.compact_term(&Term::iri(&c.predicate)),
                ctx.compact_term(&object),
                c.reason
            );
            Violation::new(RuleId::A3, Severity::Warning, focus, message).with_secondary(vec![object])
        })
        .collect()
}
