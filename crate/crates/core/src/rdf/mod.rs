//! RDF data model, Turtle input and N-Triples output.

mod graph;
mod list;
mod ntriples;
mod term;
mod turtle;

pub use graph::{Graph, GraphBuilder, PrefixMap, SourceLocation, TermId, TripleRef};
pub use list::{read_list, ListError};
pub use ntriples::serialize_ntriples;
pub use term::{ns, Literal, Term, TermError, Triple};
pub use turtle::{parse_turtle, parse_turtle_into, ParseError, ParseErrorKind};
