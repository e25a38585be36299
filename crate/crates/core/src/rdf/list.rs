//! Walking `rdf:first`/`rdf:rest` chains.

use std::collections::HashSet;

use thiserror::Error;

use super::graph::Graph;
use super::term::{ns, Term};

/// A malformed list; every variant names the offending node.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("list node {0} has no rdf:first")]
    MissingFirst(String),
    #[error("list node {0} has more than one rdf:first")]
    MultipleFirst(String),
    #[error("list node {0} has no rdf:rest")]
    MissingRest(String),
    #[error("list node {0} has more than one rdf:rest")]
    BranchingRest(String),
    #[error("list revisits node {0}")]
    Cycle(String),
}

/// Elements of the list starting at `head`, in order.
pub fn read_list(graph: &Graph, head: &Term) -> Result<Vec<Term>, ListError> {
    let first = Term::iri(ns::RDF_FIRST);
    let rest = Term::iri(ns::RDF_REST);
    let nil = Term::iri(ns::RDF_NIL);

    let mut items = Vec::new();
    let mut seen = HashSet::new();
    let mut node = head.clone();
    while node != nil {
        if !seen.insert(node.clone()) {
            return Err(ListError::Cycle(node.to_ntriples()));
        }
        let mut firsts = graph.objects(&node, &first);
        let item = firsts.next().ok_or_else(|| ListError::MissingFirst(node.to_ntriples()))?;
        if firsts.next().is_some() {
            return Err(ListError::MultipleFirst(node.to_ntriples()));
        }
        let mut rests = graph.objects(&node, &rest);
        let next = rests.next().ok_or_else(|| ListError::MissingRest(node.to_ntriples()))?;
        if rests.next().is_some() {
            return Err(ListError::BranchingRest(node.to_ntriples()));
        }
        items.push(item.clone());
        node = next.clone();
    }
    Ok(items)
}
