//! R8 and R10: constraints on what a single individual may instantiate.

use std::collections::HashSet;

use super::{Context, RuleConfig, RuleId, Severity, Violation};
use crate::rdf::{ns, Term};
use crate::vocab::{gufo, DisjointOrigin};

const SCHEMA_TYPES: &[&str] = &[
    ns::OWL_CLASS,
    ns::RDFS_CLASS,
    ns::OWL_RESTRICTION,
    ns::OWL_OBJECT_PROPERTY,
    ns::OWL_DATATYPE_PROPERTY,
    ns::OWL_ONTOLOGY,
    ns::OWL_ALL_DISJOINT_CLASSES,
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property",
    "http://www.w3.org/2002/07/owl#AnnotationProperty",
    "http://www.w3.org/2002/07/owl#TransitiveProperty",
    "http://www.w3.org/2002/07/owl#FunctionalProperty",
];

/// Typed terms that look like first-order individuals: never used as a
/// class (no subclass triples, not the object of `rdf:type`), not typed as
/// a schema construct and not an instance of `gufo:Type`. Sorted by id.
pub fn individuals(ctx: &Context) -> Vec<u32> {
    let mut classy: HashSet<u32> = HashSet::new();
    for p in [ns::RDFS_SUBCLASS_OF, ns::RDFS_SUBPROPERTY_OF] {
        let p = Term::iri(p);
        for t in ctx.graph.matches(None, Some(&p), None) {
            classy.extend(ctx.id_of(t.subject));
            classy.extend(ctx.id_of(t.object));
        }
    }
    for t in ctx.graph.matches(None, Some(&Term::iri(ns::RDF_TYPE)), None) {
        classy.extend(ctx.id_of(t.object));
    }
    let schema = ctx.ids(SCHEMA_TYPES);
    let type_id = ctx.id(gufo::TYPE);
    ctx.closures
        .typed()
        .filter(|x| !classy.contains(x))
        .filter(|&x| !ctx.typed_by_any(x, &schema))
        .filter(|&x| type_id.is_none_or(|t| !ctx.closures.has_type(x, t)))
        .filter(|&x| ctx.term(x).as_iri().is_none_or(|i| !ctx.vocab.contains(i)))
        .collect()
}

pub(super) fn r8_multiple_kinds(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    let Some(kind) = ctx.id(gufo::KIND) else { return Vec::new() };
    let mut out = Vec::new();
    for x in individuals(ctx) {
        let kinds: Vec<u32> = ctx
            .closures
            .types_of(x)
            .iter()
            .copied()
            .filter(|&c| ctx.closures.has_type(c, kind))
            .collect();
        if kinds.len() > 1 {
            let secondary = ctx.sorted_terms(kinds);
            let names: Vec<String> = secondary.iter().map(|t| ctx.compact_term(t)).collect();
            let message = format!("{} instantiates more than one kind: {}.", ctx.compact(x), names.join(", "));
            out.push(Violation::new(RuleId::R8, Severity::Error, ctx.term(x).clone(), message).with_secondary(secondary));
        }
    }
    out
}

/// No term may instantiate two disjoint classes. Pairs only implied by the
/// intrinsic/extrinsic split are reported as warnings.
pub(super) fn r10_disjointness_violations(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    for a in 0..ctx.closures.len() as u32 {
        for entry in ctx.closures.disjoint_with(a) {
            let b = entry.other;
            if ctx.term(a) >= ctx.term(b) {
                continue;
            }
            for x in ctx.closures.instances_of_id(a) {
                if !ctx.closures.has_type(x, b) {
                    continue;
                }
                let severity = match entry.origin {
                    DisjointOrigin::Inferred => Severity::Warning,
                    _ => Severity::Error,
                };
                let message = format!(
                    "{} instantiates {} and {}, which are disjoint.",
                    ctx.compact(x),
                    ctx.compact(a),
                    ctx.compact(b)
                );
                out.push(
                    Violation::new(RuleId::R10, severity, ctx.term(x).clone(), message)
                        .with_secondary(vec![ctx.term(a).clone(), ctx.term(b).clone()]),
                );
            }
        }
    }
    out
}
