//! Random graphs and naive oracles for property tests.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use gufo_check::rdf::{ns, Graph, GraphBuilder, Literal, Term, Triple};
use proptest::prelude::*;

use super::{EX, GUFO};

const LOCALS: &[&str] = &["a", "b", "c", "Person", "has-part", "x_1", "9lives", "p/q", "frag#id", "tilde~"];

pub fn iri_strategy() -> impl Strategy<Value = Term> {
    prop_oneof![
        4 => proptest::sample::select(LOCALS).prop_map(|l| Term::iri(format!("{EX}{l}"))),
        1 => proptest::sample::select(&["Kind", "inheresIn", "Event"][..]).prop_map(|l| Term::iri(format!("{GUFO}{l}"))),
        1 => Just(Term::iri("urn:isbn:0451450523")),
    ]
}

pub fn literal_strategy() -> impl Strategy<Value = Term> {
    let text = "[a-zA-Z0-9 \"'\\\\\n\r\t\u{e9}\u{4e2d}\u{1F600}]{0,8}";
    prop_oneof![
        text.prop_map(|s| Term::literal(Literal::simple(s))),
        (text, proptest::sample::select(&["en", "pt-BR", "de"][..]))
            .prop_map(|(s, l)| Term::literal(Literal::lang_tagged(s, l))),
        any::<i32>().prop_map(|n| Term::literal(Literal::typed(n.to_string(), ns::XSD_INTEGER))),
        (1900i32..2100, 1u32..13, 1u32..29).prop_map(|(y, m, d)| {
            Term::literal(Literal::typed(format!("{y:04}-{m:02}-{d:02}"), ns::XSD_DATE))
        }),
    ]
}

pub fn triple_strategy() -> impl Strategy<Value = Triple> {
    (
        iri_strategy(),
        iri_strategy(),
        prop_oneof![2 => iri_strategy(), 1 => literal_strategy()],
    )
        .prop_map(|(s, p, o)| Triple::new(s, p, o).unwrap())
}

pub fn triples_strategy(max: usize) -> impl Strategy<Value = Vec<Triple>> {
    proptest::collection::vec(triple_strategy(), 0..max)
}

pub fn graph_of(triples: &[Triple]) -> Graph {
    let mut b = GraphBuilder::new();
    for t in triples {
        b.insert(t.clone(), None);
    }
    b.build()
}

fn escape(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

fn turtle_term(t: &Term) -> String {
    if let Some(iri) = t.as_iri() {
        if let Some(local) = iri.strip_prefix(EX) {
            if !local.is_empty() && local.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                return format!(":{local}");
            }
        }
        if iri == ns::RDF_TYPE {
            return "a".to_owned();
        }
        return format!("<{iri}>");
    }
    let lit = t.as_literal().expect("no blank nodes here");
    let body = format!("\"{}\"", escape(lit.lexical()));
    match (lit.language(), lit.datatype()) {
        (Some(lang), _) => format!("{body}@{lang}"),
        (None, dt) if dt == ns::XSD_STRING => body,
        (None, dt) if dt == ns::XSD_INTEGER => lit.lexical().to_owned(),
        (None, dt) => format!("{body}^^<{dt}>"),
    }
}

/// Turtle with `;` and `,` grouping, written independently of the crate.
pub fn to_turtle(triples: &[Triple]) -> String {
    let mut grouped: BTreeMap<String, BTreeMap<String, BTreeSet<String>>> = BTreeMap::new();
    for t in triples {
        grouped
            .entry(turtle_term(&t.subject))
            .or_default()
            .entry(turtle_term(&t.predicate))
            .or_default()
            .insert(turtle_term(&t.object));
    }
    let mut out = format!("@prefix : <{EX}> .\n");
    for (s, preds) in grouped {
        // `a` is only valid in predicate position; elsewhere spell rdf:type out.
        let s = if s == "a" { format!("<{}>", ns::RDF_TYPE) } else { s };
        let body: Vec<String> = preds
            .into_iter()
            .map(|(p, os)| {
                let os: Vec<String> =
                    os.into_iter().map(|o| if o == "a" { format!("<{}>", ns::RDF_TYPE) } else { o }).collect();
                format!("{p} {}", os.join(" , "))
            })
            .collect();
        let _ = writeln!(out, "{s} {} .", body.join(" ;\n    "));
    }
    out
}

/// Edges `i -> j` with `i < j`, at most `max_edges`, over `1..=max_nodes` nodes.
pub fn dag_strategy(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_nodes).prop_flat_map(move |n| {
        let edges = proptest::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(|pairs| {
            let set: BTreeSet<(usize, usize)> =
                pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
            set.into_iter().collect::<Vec<_>>()
        });
        (Just(n), edges)
    })
}

/// Arbitrary directed graphs, self-loops and cycles included.
pub fn digraph_strategy(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_nodes).prop_flat_map(move |n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..=max_edges)))
}

/// Cubic reachability: `r[i][j]` iff a non-empty path leads from i to j.
pub fn reach_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for &(a, b) in edges {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

pub fn node(prefix: &str, i: usize) -> Term {
    Term::iri(format!("{EX}{prefix}{i}"))
}

pub fn edge_triples(prefix: &str, predicate: &str, edges: &[(usize, usize)]) -> Vec<Triple> {
    edges
        .iter()
        .map(|&(a, b)| Triple::new(node(prefix, a), Term::iri(predicate), node(prefix, b)).unwrap())
        .collect()
}
