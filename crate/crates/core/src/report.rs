//! Findings plus file and graph summaries, rendered as JSON or plain text.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::rdf::{ns, PrefixMap, Term};
use crate::rules::{individuals, Context, Severity, Violation};
use crate::vocab::gufo;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub files: Vec<FileSummary>,
    pub violations: Vec<ViolationRecord>,
    pub counts: Counts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileSummary {
    pub path: String,
    pub triples: usize,
}

/// A finding with terms in N-Triples form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub rule: String,
    pub severity: String,
    pub focus: String,
    pub secondary: Vec<String>,
    pub message: String,
    pub file: Option<String>,
    pub line: Option<u32>,
}

impl From<&Violation> for ViolationRecord {
    fn from(v: &Violation) -> Self {
        ViolationRecord {
            rule: v.rule.as_str().to_owned(),
            severity: v.severity.as_str().to_owned(),
            focus: v.focus.to_ntriples(),
            secondary: v.secondary.iter().map(Term::to_ntriples).collect(),
            message: v.message.clone(),
            file: v.location.as_ref().map(|l| l.file.clone()),
            line: v.location.as_ref().map(|l| l.line),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub error: usize,
    pub warning: usize,
    pub info: usize,
}

impl Counts {
    pub fn of(violations: &[Violation]) -> Counts {
        let mut c = Counts::default();
        for v in violations {
            match v.severity {
                Severity::Error => c.error += 1,
                Severity::Warning => c.warning += 1,
                Severity::Info => c.info += 1,
            }
        }
        c
    }

    /// Findings at or above `level`.
    pub fn at_least(&self, level: Severity) -> usize {
        match level {
            Severity::Error => self.error,
            Severity::Warning => self.error + self.warning,
            Severity::Info => self.error + self.warning + self.info,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub triples: usize,
    pub classes: usize,
    pub individuals: usize,
    /// Instances per gUFO metatype, keyed by prefixed name; zero counts omitted.
    pub metatypes: BTreeMap<String, usize>,
}

const SYSTEM_NAMESPACES: &[&str] = &[
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "http://www.w3.org/2000/01/rdf-schema#",
    "http://www.w3.org/2002/07/owl#",
    "http://www.w3.org/2001/XMLSchema#",
];

impl Stats {
    pub fn collect(ctx: &Context) -> Stats {
        let graph = ctx.graph;
        let mut classes: BTreeSet<&Term> = BTreeSet::new();
        for t in graph.matches(None, Some(&Term::iri(ns::RDFS_SUBCLASS_OF)), None) {
            classes.insert(t.subject);
            classes.insert(t.object);
        }
        for t in graph.matches(None, Some(&Term::iri(ns::RDF_TYPE)), None) {
            classes.insert(t.object);
            if matches!(t.object.as_iri(), Some(ns::OWL_CLASS | ns::RDFS_CLASS)) {
                classes.insert(t.subject);
            }
        }
        let user_class = |t: &&Term| match t.as_iri() {
            Some(iri) => !ctx.vocab.contains(iri) && !SYSTEM_NAMESPACES.iter().any(|n| iri.starts_with(n)),
            None => !t.is_literal(),
        };
        let class_count = classes.into_iter().filter(user_class).count();

        let mut metatypes = BTreeMap::new();
        if let Some(ty) = ctx.id(gufo::TYPE) {
            let mut metas: Vec<u32> = ctx.closures.class_below(ty).to_vec();
            metas.push(ty);
            for m in metas {
                let Some(iri) = ctx.term(m).as_iri() else { continue };
                if !ctx.vocab.contains(iri) {
                    continue;
                }
                let n = ctx.closures.instances_of_id(m).len();
                if n > 0 {
                    metatypes.insert(ctx.compact(m), n);
                }
            }
        }
        Stats {
            triples: graph.len(),
            classes: class_count,
            individuals: individuals(ctx).len(),
            metatypes,
        }
    }
}

impl Report {
    pub fn new(files: Vec<FileSummary>, violations: &[Violation], stats: Option<Stats>) -> Report {
        Report {
            version: VERSION.to_owned(),
            files,
            violations: violations.iter().map(ViolationRecord::from).collect(),
            counts: Counts::of(violations),
            stats,
        }
    }
}

/// Pretty-printed JSON with a trailing newline. Field order is fixed by the
/// struct definitions, so equal reports give equal bytes.
pub fn emit_json(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn parse_json(text: &str) -> serde_json::Result<Report> {
    serde_json::from_str(text)
}

/// Shortens an N-Triples IRI with `prefixes`; other terms pass through.
fn compact_nt(nt: &str, prefixes: &PrefixMap) -> String {
    match nt.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
        Some(iri) => match Term::try_iri(iri) {
            Ok(term) => prefixes.compact(&term),
            Err(_) => nt.to_owned(),
        },
        None => nt.to_owned(),
    }
}

pub fn emit_human(report: &Report, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    for v in &report.violations {
        let _ = write!(out, "{}[{}] {}: {}", v.severity, v.rule, compact_nt(&v.focus, prefixes), v.message);
        match (&v.file, v.line) {
            (Some(file), Some(line)) => {
                let _ = write!(out, " ({file}:{line})");
            }
            (Some(file), None) => {
                let _ = write!(out, " ({file})");
            }
            _ => {}
        }
        out.push('\n');
        if !v.secondary.is_empty() {
            let related: Vec<String> = v.secondary.iter().map(|s| compact_nt(s, prefixes)).collect();
            let _ = writeln!(out, "    related: {}", related.join(", "));
        }
    }
    let triples: usize = report.files.iter().map(|f| f.triples).sum();
    let c = report.counts;
    let _ = writeln!(
        out,
        "{} error(s), {} warning(s), {} note(s) in {} file(s), {} triple(s) read.",
        c.error,
        c.warning,
        c.info,
        report.files.len(),
        triples
    );
    if let Some(stats) = &report.stats {
        let _ = writeln!(
            out,
            "Graph: {} triples, {} classes, {} individuals.",
            stats.triples, stats.classes, stats.individuals
        );
        for (meta, n) in &stats.metatypes {
            let _ = writeln!(out, "    {meta}: {n}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::RuleId;

    #[test]
    fn empty_report_has_zero_counts() {
        let r = Report::new(vec![], &[], None);
        let json = emit_json(&r);
        assert!(json.contains("\"violations\": []"));
        assert_eq!(r.counts, Counts::default());
        assert!(!json.contains("stats"));
        assert_eq!(parse_json(&json).unwrap(), r);
    }

    #[test]
    fn json_field_order_is_fixed() {
        let v = Violation::new(RuleId::R1, Severity::Error, Term::iri("http://example.org/S"), "m");
        let json = emit_json(&Report::new(vec![FileSummary { path: "a.ttl".into(), triples: 2 }], &[v], None));
        let keys = ["\"version\"", "\"files\"", "\"violations\"", "\"counts\""];
        let positions: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let fields = ["\"rule\"", "\"severity\"", "\"focus\"", "\"secondary\"", "\"message\"", "\"file\"", "\"line\""];
        let positions: Vec<usize> = fields.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn human_output_compacts_focus() {
        let mut prefixes = PrefixMap::default();
        prefixes.insert("", "http://example.org/");
        let v = Violation::new(RuleId::R2, Severity::Warning, Term::iri("http://example.org/S"), "msg");
        let text = emit_human(&Report::new(vec![], &[v], None), &prefixes);
        assert!(text.starts_with("warning[R2] :S: msg\n"), "{text}");
    }
}
