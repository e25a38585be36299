//! R1 to R5: specialization constraints of the typology of types.

use super::{Context, RuleConfig, RuleId, Severity, Violation, MSG_R1, MSG_R2, MSG_R3, MSG_R4, MSG_R5};
use crate::rdf::ns;
use crate::vocab::{gufo, Group};

/// One violation per class typed by `targets` that has superclasses
/// matching `offends`; the offenders become the secondary terms.
fn specialization_rule(
    ctx: &Context,
    cfg: &RuleConfig,
    rule: RuleId,
    targets: &[u32],
    message: &str,
    offends: impl Fn(u32) -> bool,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for x in ctx.closures.typed() {
        if !ctx.typed_by_any(x, targets) {
            continue;
        }
        let offenders: Vec<u32> = ctx.supers(x, cfg).iter().copied().filter(|&s| s != x && offends(s)).collect();
        if !offenders.is_empty() {
            out.push(
                Violation::new(rule, Severity::Error, ctx.term(x).clone(), message)
                    .with_secondary(ctx.sorted_terms(offenders)),
            );
        }
    }
    out
}

pub(super) fn r1_rigid_specializes_antirigid(ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    let mut targets = ctx.group(Group::Rigid);
    targets.extend(ctx.group(Group::SemiRigid));
    targets.sort_unstable();
    let anti = ctx.group(Group::AntiRigid);
    specialization_rule(ctx, cfg, RuleId::R1, &targets, MSG_R1, |s| ctx.typed_by_any(s, &anti))
}

pub(super) fn r2_nonsortal_specializes_sortal(ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    let targets = ctx.group(Group::NonSortal);
    let sortal = ctx.group(Group::Sortal);
    specialization_rule(ctx, cfg, RuleId::R2, &targets, MSG_R2, |s| ctx.typed_by_any(s, &sortal))
}

/// Every SubKind, Phase or Role needs a sortal superclass. Unless running
/// closed-world, a superclass we know nothing about (an IRI outside the
/// vocabulary whose types never reach the types taxonomy) may be a sortal
/// declared elsewhere, and is given the benefit of the doubt.
pub(super) fn r3_sortal_missing_identity_provider(ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    let targets = ctx.group(Group::BaseSortal);
    let sortal = ctx.group(Group::Sortal);
    let type_id = ctx.id(gufo::TYPE);
    let restriction = ctx.id(ns::OWL_RESTRICTION);
    let unknown = |s: u32| {
        let term = ctx.term(s);
        let Some(iri) = term.as_iri() else { return false };
        if ctx.vocab.contains(iri) {
            return false;
        }
        let types = ctx.closures.types_of(s);
        !types.iter().any(|&t| Some(t) == type_id || Some(t) == restriction)
            && !types.iter().any(|&t| ctx.term(t).as_iri().is_some_and(|i| ctx.vocab.contains(i)))
    };
    let mut out = Vec::new();
    for x in ctx.closures.typed() {
        if !ctx.typed_by_any(x, &targets) {
            continue;
        }
        let supers = ctx.supers(x, cfg);
        let provided = supers
            .iter()
            .any(|&s| s != x && (ctx.typed_by_any(s, &sortal) || (!cfg.closed_world && unknown(s))));
        if !provided {
            out.push(Violation::new(RuleId::R3, Severity::Error, ctx.term(x).clone(), MSG_R3));
        }
    }
    out
}

/// Kinds may not sit below a SubKind, Phase, Role or another Kind.
pub(super) fn r4_kind_specializes_sortal(ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    let Some(kind) = ctx.id(gufo::KIND) else { return Vec::new() };
    let mut forbidden = ctx.group(Group::BaseSortal);
    forbidden.push(kind);
    forbidden.sort_unstable();
    specialization_rule(ctx, cfg, RuleId::R4, &[kind], MSG_R4, |s| ctx.typed_by_any(s, &forbidden))
}

pub(super) fn r5_endurant_type_bad_specialization(ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    let targets = ctx.group(Group::EndurantTypeTargets);
    let banned = ctx.ids(ctx.vocab.endurant_disjoint_list());
    specialization_rule(ctx, cfg, RuleId::R5, &targets, MSG_R5, |s| banned.binary_search(&s).is_ok())
}
