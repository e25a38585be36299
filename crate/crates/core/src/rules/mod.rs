//! Constraint rules over a graph, the vocabulary and its closures.
//!
//! Every rule is a pure function of a [`Context`] and a [`RuleConfig`];
//! [`check`] runs the enabled ones in parallel and merges the findings in a
//! fixed order.

mod advisory;
mod instances;
mod multilevel;
mod taxonomy;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::inference::ClosureSet;
use crate::patterns;
use crate::rdf::{Graph, SourceLocation, Term};
use crate::vocab::{Group, Vocabulary};

pub use instances::individuals;

pub const MSG_R1: &str = "Rigid and semi-rigid types can't specialize anti-rigid types.";
pub const MSG_R2: &str = "Non-Sortal types can't specialize Sortal types.";
pub const MSG_R3: &str = "Sortal types must specialize a kind or some other sortal.";
pub const MSG_R4: &str =
    "Kinds cannot specialize sortal types (i.e., types that already set or inherit an identity principle).";
pub const MSG_R5: &str = "Endurant types cannot specialize classes disjoint from Endurant.";
pub const MSG_R6: &str =
    "Instances of a categorizing higher-order type (focus node) must be subclasses of the categorized base type.";
/// Template with `{?type1}`, `{?type2}` and `{$this}` placeholders.
pub const MSG_R7_TEMPLATE: &str =
    "Instances {?type1} and {?type2} of the partitioning type {$this} are not declared disjoint.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown severity '{0}' (expected error, warning or info)")]
pub struct UnknownSeverity(pub String);

impl FromStr for Severity {
    type Err = UnknownSeverity;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "error" => Ok(Severity::Error),
            "warning" => Ok(Severity::Warning),
            "info" => Ok(Severity::Info),
            _ => Err(UnknownSeverity(s.to_owned())),
        }
    }
}

/// Stable rule codes. Declaration order is report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    /// Subclass or subproperty cycle.
    A1,
    /// `owl:imports` that was not followed.
    A2,
    /// External vocabulary axiom rejected during merge.
    A3,
}

impl RuleId {
    pub const ALL: [RuleId; 19] = [
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
        RuleId::R7,
        RuleId::R8,
        RuleId::R9,
        RuleId::R10,
        RuleId::L1,
        RuleId::L2,
        RuleId::L3,
        RuleId::L4,
        RuleId::L5,
        RuleId::L6,
        RuleId::A1,
        RuleId::A2,
        RuleId::A3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::R6 => "R6",
            RuleId::R7 => "R7",
            RuleId::R8 => "R8",
            RuleId::R9 => "R9",
            RuleId::R10 => "R10",
            RuleId::L1 => "L1",
            RuleId::L2 => "L2",
            RuleId::L3 => "L3",
            RuleId::L4 => "L4",
            RuleId::L5 => "L5",
            RuleId::L6 => "L6",
            RuleId::A1 => "A1",
            RuleId::A2 => "A2",
            RuleId::A3 => "A3",
        }
    }

    pub fn is_lint(self) -> bool {
        self.as_str().starts_with('L')
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule id '{0}'")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| UnknownRule(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Location {
    pub file: String,
    pub line: u32,
}

/// One finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: RuleId,
    pub severity: Severity,
    pub focus: Term,
    pub secondary: Vec<Term>,
    pub message: String,
    pub location: Option<Location>,
}

impl Violation {
    pub fn new(rule: RuleId, severity: Severity, focus: Term, message: impl Into<String>) -> Self {
        Violation {
            rule,
            severity,
            focus,
            secondary: Vec::new(),
            message: message.into(),
            location: None,
        }
    }

    pub fn with_secondary(mut self, secondary: Vec<Term>) -> Self {
        self.secondary = secondary;
        self
    }

    pub fn at(mut self, location: Option<Location>) -> Self {
        self.location = location;
        self
    }

    fn sort_key(&self) -> (Reverse<Severity>, RuleId, String, Vec<String>, &str) {
        (
            Reverse(self.severity),
            self.rule,
            self.focus.to_ntriples(),
            self.secondary.iter().map(Term::to_ntriples).collect(),
            &self.message,
        )
    }
}

/// Orders findings by severity (highest first), rule, focus, secondary
/// terms and message.
pub fn sort_violations(violations: &mut [Violation]) {
    violations.sort_by_cached_key(|v| {
        let (s, r, f, sec, m) = v.sort_key();
        (s, r, f, sec, m.to_owned())
    });
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleConfig {
    pub enabled: BTreeSet<RuleId>,
    /// Replaces the severity of a rule's non-info findings.
    pub severity: BTreeMap<RuleId, Severity>,
    /// Follow only asserted one-hop `rdfs:subClassOf` edges in R1 to R6.
    pub direct_subclass_only: bool,
    /// In R3, stop presuming that untyped superclasses may supply identity.
    pub closed_world: bool,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            enabled: RuleId::ALL.into_iter().collect(),
            severity: BTreeMap::new(),
            direct_subclass_only: false,
            closed_world: false,
        }
    }
}

impl RuleConfig {
    pub fn only(ids: impl IntoIterator<Item = RuleId>) -> Self {
        RuleConfig { enabled: ids.into_iter().collect(), ..RuleConfig::default() }
    }
}

/// Everything a rule reads.
#[derive(Clone, Copy)]
pub struct Context<'a> {
    pub graph: &'a Graph,
    pub vocab: &'a Vocabulary,
    pub closures: &'a ClosureSet,
}

impl<'a> Context<'a> {
    pub fn new(graph: &'a Graph, vocab: &'a Vocabulary, closures: &'a ClosureSet) -> Self {
        Context { graph, vocab, closures }
    }

    pub fn id(&self, iri: &str) -> Option<u32> {
        self.closures.id_iri(self.graph, iri)
    }

    pub fn id_of(&self, term: &Term) -> Option<u32> {
        self.closures.id(self.graph, term)
    }

    pub fn term(&self, id: u32) -> &'a Term {
        self.closures.term(self.graph, id)
    }

    /// Prefixed name when possible, N-Triples otherwise.
    pub fn compact(&self, id: u32) -> String {
        self.graph.prefixes().compact(self.term(id))
    }

    pub fn compact_term(&self, term: &Term) -> String {
        self.graph.prefixes().compact(term)
    }

    /// Ids of the given IRIs, skipping unknown ones; sorted.
    pub fn ids(&self, iris: &[&str]) -> Vec<u32> {
        let mut out: Vec<u32> = iris.iter().filter_map(|i| self.id(i)).collect();
        out.sort_unstable();
        out
    }

    pub fn group(&self, group: Group) -> Vec<u32> {
        self.ids(group.members())
    }

    /// True when `types_of[x]` meets `classes` (sorted).
    pub fn typed_by_any(&self, x: u32, classes: &[u32]) -> bool {
        let types = self.closures.types_of(x);
        classes.iter().any(|c| types.binary_search(c).is_ok())
    }

    /// Superclasses a taxonomy rule inspects.
    pub fn supers(&self, x: u32, cfg: &RuleConfig) -> &'a [u32] {
        if cfg.direct_subclass_only {
            self.closures.class_direct(x)
        } else {
            self.closures.class_above(x)
        }
    }

    /// Terms of `ids`, in serialization order.
    pub fn sorted_terms(&self, ids: impl IntoIterator<Item = u32>) -> Vec<Term> {
        let mut terms: Vec<Term> = ids.into_iter().map(|i| self.term(i).clone()).collect();
        terms.sort();
        terms.dedup();
        terms
    }

    pub fn location_of(&self, term: &Term) -> Option<Location> {
        self.graph.first_location(term).and_then(|l| self.resolve(l))
    }

    pub fn resolve(&self, location: SourceLocation) -> Option<Location> {
        self.graph.source_name(location).map(|file| Location { file: file.to_owned(), line: location.line })
    }
}

fn run_one(id: RuleId, ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    match id {
        RuleId::R1 => taxonomy::r1_rigid_specializes_antirigid(ctx, cfg),
        RuleId::R2 => taxonomy::r2_nonsortal_specializes_sortal(ctx, cfg),
        RuleId::R3 => taxonomy::r3_sortal_missing_identity_provider(ctx, cfg),
        RuleId::R4 => taxonomy::r4_kind_specializes_sortal(ctx, cfg),
        RuleId::R5 => taxonomy::r5_endurant_type_bad_specialization(ctx, cfg),
        RuleId::R6 => multilevel::r6_categorization_subclassing(ctx, cfg),
        RuleId::R7 => multilevel::r7_partition_disjointness(ctx, cfg),
        RuleId::R8 => instances::r8_multiple_kinds(ctx, cfg),
        RuleId::R9 => multilevel::r9_categorizer_not_first_order(ctx, cfg),
        RuleId::R10 => instances::r10_disjointness_violations(ctx, cfg),
        RuleId::L1 => patterns::l1_inherence_cardinality(ctx, cfg),
        RuleId::L2 => patterns::l2_relator_arity(ctx, cfg),
        RuleId::L3 => patterns::l3_temporal_ordering(ctx, cfg),
        RuleId::L4 => patterns::l4_situation_completeness(ctx, cfg),
        RuleId::L5 => patterns::l5_domain_range_conformance(ctx, cfg),
        RuleId::L6 => patterns::l6_dependence_cycles(ctx, cfg),
        RuleId::A1 => advisory::a1_cycles(ctx, cfg),
        RuleId::A2 => advisory::a2_unresolved_imports(ctx, cfg),
        RuleId::A3 => advisory::a3_merge_conflicts(ctx, cfg),
    }
}

/// Runs the enabled checks among `ids` concurrently; the result is sorted
/// and independent of execution order.
pub fn run_selected(ctx: &Context, cfg: &RuleConfig, ids: &[RuleId]) -> Vec<Violation> {
    let mut out: Vec<Violation> = ids
        .par_iter()
        .filter(|id| cfg.enabled.contains(id))
        .flat_map_iter(|&id| {
            run_one(id, ctx, cfg).into_iter().map(move |mut v| {
                if let (Some(&sev), false) = (cfg.severity.get(&id), v.severity == Severity::Info) {
                    v.severity = sev;
                }
                if v.location.is_none() {
                    v.location = ctx.location_of(&v.focus);
                }
                v
            })
        })
        .collect();
    sort_violations(&mut out);
    out
}

/// Enabled taxonomy, multi-level and advisory rules (everything but L*).
pub fn run_rules(ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    let ids: Vec<RuleId> = RuleId::ALL.into_iter().filter(|r| !r.is_lint()).collect();
    run_selected(ctx, cfg, &ids)
}

/// Every enabled rule and lint.
pub fn check(ctx: &Context, cfg: &RuleConfig) -> Vec<Violation> {
    run_selected(ctx, cfg, &RuleId::ALL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_ids_round_trip() {
        for id in RuleId::ALL {
            assert_eq!(id.as_str().parse::<RuleId>().unwrap(), id);
        }
        assert_eq!("r10".parse::<RuleId>().unwrap(), RuleId::R10);
        assert!("R11".parse::<RuleId>().is_err());
    }

    #[test]
    fn severities_order_and_parse() {
        assert!(Severity::Error > Severity::Warning && Severity::Warning > Severity::Info);
        assert_eq!("Warning".parse::<Severity>().unwrap(), Severity::Warning);
        assert!("fatal".parse::<Severity>().is_err());
    }

    #[test]
    fn sort_puts_errors_first() {
        let t = Term::iri("http://e/x");
        let mut v = vec![
            Violation::new(RuleId::L2, Severity::Warning, t.clone(), "w"),
            Violation::new(RuleId::R3, Severity::Error, t.clone(), "e"),
            Violation::new(RuleId::R1, Severity::Error, t, "e"),
        ];
        sort_violations(&mut v);
        let order: Vec<RuleId> = v.iter().map(|v| v.rule).collect();
        assert_eq!(order, vec![RuleId::R1, RuleId::R3, RuleId::L2]);
    }
}
