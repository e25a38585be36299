//! Canonical, sorted N-Triples output.

use super::graph::Graph;

/// One line per triple, LF-terminated, in serialization order.
///
/// N-Triples is a subset of Turtle, so the output reads back with
/// [`super::parse_turtle`].
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut out = String::new();
    for t in graph.triples() {
        out.push_str(&t.subject.to_ntriples());
        out.push(' ');
        out.push_str(&t.predicate.to_ntriples());
        out.push(' ');
        out.push_str(&t.object.to_ntriples());
        out.push_str(" .\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;

    #[test]
    fn empty_graph_is_empty_text() {
        assert_eq!(serialize_ntriples(&Graph::new()), "");
    }

    #[test]
    fn lines_are_sorted_and_reparse() {
        let doc = "@prefix : <http://e/> .\n:b :p \"x\\\"y\" .\n:a :p :b , :a .\n:a :q \"1\"^^<http://e/t> , \"z\"@en .";
        let g = parse_turtle(doc, None).unwrap();
        let text = serialize_ntriples(&g);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(parse_turtle(&text, None).unwrap(), g);
    }
}
