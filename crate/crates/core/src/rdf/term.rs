//! RDF terms and triples.
//!
//! Terms order lexicographically by their N-Triples serialization, which is
//! what makes match results and reports reproducible.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Well-known namespace IRIs and the handful of terms the checker needs.
pub mod ns {
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const TIME: &str = "http://www.w3.org/2006/time#";

    pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const RDF_FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
    pub const RDF_REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
    pub const RDF_NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
    pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

    pub const RDFS_CLASS: &str = "http://www.w3.org/2000/01/rdf-schema#Class";
    pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    pub const RDFS_SUBPROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
    pub const RDFS_DOMAIN: &str = "http://www.w3.org/2000/01/rdf-schema#domain";
    pub const RDFS_RANGE: &str = "http://www.w3.org/2000/01/rdf-schema#range";

    pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
    pub const OWL_RESTRICTION: &str = "http://www.w3.org/2002/07/owl#Restriction";
    pub const OWL_OBJECT_PROPERTY: &str = "http://www.w3.org/2002/07/owl#ObjectProperty";
    pub const OWL_DATATYPE_PROPERTY: &str = "http://www.w3.org/2002/07/owl#DatatypeProperty";
    pub const OWL_DISJOINT_WITH: &str = "http://www.w3.org/2002/07/owl#disjointWith";
    pub const OWL_ALL_DISJOINT_CLASSES: &str = "http://www.w3.org/2002/07/owl#AllDisjointClasses";
    pub const OWL_MEMBERS: &str = "http://www.w3.org/2002/07/owl#members";
    pub const OWL_DISJOINT_UNION_OF: &str = "http://www.w3.org/2002/07/owl#disjointUnionOf";
    pub const OWL_EQUIVALENT_CLASS: &str = "http://www.w3.org/2002/07/owl#equivalentClass";
    pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
    pub const OWL_IMPORTS: &str = "http://www.w3.org/2002/07/owl#imports";
    pub const OWL_ONTOLOGY: &str = "http://www.w3.org/2002/07/owl#Ontology";

    pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
    pub const XSD_DATE: &str = "http://www.w3.org/2001/XMLSchema#date";
    pub const XSD_DATE_TIME_STAMP: &str = "http://www.w3.org/2001/XMLSchema#dateTimeStamp";

    pub const TIME_INSTANT: &str = "http://www.w3.org/2006/time#Instant";
    pub const TIME_IN_XSD_DATE: &str = "http://www.w3.org/2006/time#inXSDDate";
    pub const TIME_IN_XSD_DATE_TIME_STAMP: &str = "http://www.w3.org/2006/time#inXSDDateTimeStamp";
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("IRI must not be empty")]
    EmptyIri,
    #[error("IRI <{0}> contains whitespace")]
    WhitespaceInIri(String),
    #[error("predicate must be an IRI, found {0}")]
    NonIriPredicate(String),
    #[error("subject must not be a literal, found {0}")]
    LiteralSubject(String),
}

/// A literal: lexical form, datatype IRI and optional language tag.
///
/// Language-tagged literals always carry `rdf:langString`; everything else
/// carries an explicit datatype, defaulting to `xsd:string`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Arc<str>,
    language: Option<Arc<str>>,
}

impl Literal {
    pub fn simple(lexical: impl Into<Arc<str>>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Arc::from(ns::XSD_STRING),
            language: None,
        }
    }

    pub fn typed(lexical: impl Into<Arc<str>>, datatype: impl Into<Arc<str>>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: datatype.into(),
            language: None,
        }
    }

    pub fn lang_tagged(lexical: impl Into<Arc<str>>, language: impl Into<Arc<str>>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: Arc::from(ns::RDF_LANG_STRING),
            language: Some(language.into()),
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &str {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Arc<str>),
    Blank(Arc<str>),
    Literal(Literal),
}

impl Term {
    /// Builds an IRI term, panicking on an invalid IRI. Meant for constants;
    /// use [`Term::try_iri`] for untrusted input.
    pub fn iri(iri: impl AsRef<str>) -> Term {
        Term::try_iri(iri).expect("invalid IRI constant")
    }

    pub fn try_iri(iri: impl AsRef<str>) -> Result<Term, TermError> {
        let iri = iri.as_ref();
        if iri.is_empty() {
            return Err(TermError::EmptyIri);
        }
        if iri.chars().any(char::is_whitespace) {
            return Err(TermError::WhitespaceInIri(iri.to_owned()));
        }
        Ok(Term::Iri(Arc::from(iri)))
    }

    pub fn blank(label: impl AsRef<str>) -> Term {
        Term::Blank(Arc::from(label.as_ref()))
    }

    pub fn literal(literal: Literal) -> Term {
        Term::Literal(literal)
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    /// Bytes of the canonical N-Triples form, produced lazily.
    fn nt_bytes(&self) -> impl Iterator<Item = u8> + '_ {
        const EMPTY: &[u8] = b"";
        let (head, body, tail): (&'static [u8], &[u8], [&[u8]; 4]) = match self {
            Term::Iri(iri) => (b"<", iri.as_bytes(), [b">", EMPTY, EMPTY, EMPTY]),
            Term::Blank(label) => (b"_:", label.as_bytes(), [EMPTY; 4]),
            Term::Literal(lit) => {
                let tail: [&[u8]; 4] = match (&lit.language, &*lit.datatype) {
                    (Some(lang), _) => [b"\"", b"@", lang.as_bytes(), EMPTY],
                    (None, ns::XSD_STRING) => [b"\"", EMPTY, EMPTY, EMPTY],
                    (None, dt) => [b"\"^^<", dt.as_bytes(), b">", EMPTY],
                };
                (b"\"", lit.lexical.as_bytes(), tail)
            }
        };
        let escape = matches!(self, Term::Literal(_));
        head.iter()
            .copied()
            .chain(body.iter().flat_map(move |&b| {
                let (buf, len) = if escape { escape_byte(b) } else { ([b, 0], 1) };
                buf.into_iter().take(len)
            }))
            .chain(tail.into_iter().flat_map(|part| part.iter().copied()))
    }

    /// Canonical N-Triples form, e.g. `<http://x/a>`, `_:b0`, `"1"^^<...>`.
    pub fn to_ntriples(&self) -> String {
        String::from_utf8(self.nt_bytes().collect()).expect("terms are valid UTF-8")
    }
}

fn escape_byte(b: u8) -> ([u8; 2], usize) {
    match b {
        b'"' => (*b"\\\"", 2),
        b'\\' => (*b"\\\\", 2),
        b'\n' => (*b"\\n", 2),
        b'\r' => (*b"\\r", 2),
        _ => ([b, 0], 1),
    }
}

/// Compares `a ++ [end]` with `b ++ [end]` without building either.
fn cmp_terminated(a: &[u8], b: &[u8], end: Option<u8>) -> Ordering {
    let common = a.len().min(b.len());
    match a[..common].cmp(&b[..common]) {
        Ordering::Equal => {}
        other => return other,
    }
    let next = |s: &[u8]| s.get(common).copied().or(end);
    match (next(a), next(b)) {
        (Some(x), Some(y)) if a.len() != b.len() => x.cmp(&y).then(a.len().cmp(&b.len())),
        _ => a.len().cmp(&b.len()),
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Term::Iri(a), Term::Iri(b)) => cmp_terminated(a.as_bytes(), b.as_bytes(), Some(b'>')),
            (Term::Blank(a), Term::Blank(b)) => cmp_terminated(a.as_bytes(), b.as_bytes(), None),
            _ => self.nt_bytes().cmp(other.nt_bytes()),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

/// An RDF triple. The constructor enforces the positional invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Triple, TermError> {
        if subject.is_literal() {
            return Err(TermError::LiteralSubject(subject.to_ntriples()));
        }
        if !predicate.is_iri() {
            return Err(TermError::NonIriPredicate(predicate.to_ntriples()));
        }
        Ok(Triple { subject, predicate, object })
    }

    pub fn to_ntriples(&self) -> String {
        format!("{} {} {} .", self.subject, self.predicate, self.object)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iri_invariants() {
        assert_eq!(Term::try_iri(""), Err(TermError::EmptyIri));
        assert!(matches!(Term::try_iri("http://a b"), Err(TermError::WhitespaceInIri(_))));
        assert!(Term::try_iri("http://example.org/a").is_ok());
    }

    #[test]
    fn literal_defaults() {
        let plain = Literal::simple("x");
        assert_eq!(plain.datatype(), ns::XSD_STRING);
        let tagged = Literal::lang_tagged("chat", "fr");
        assert_eq!(tagged.datatype(), ns::RDF_LANG_STRING);
        assert_eq!(tagged.language(), Some("fr"));
    }

    #[test]
    fn ntriples_forms() {
        assert_eq!(Term::iri("http://x/a").to_ntriples(), "<http://x/a>");
        assert_eq!(Term::blank("b3").to_ntriples(), "_:b3");
        assert_eq!(Term::literal(Literal::simple("a\"b\n")).to_ntriples(), "\"a\\\"b\\n\"");
        assert_eq!(Term::literal(Literal::lang_tagged("hi", "en")).to_ntriples(), "\"hi\"@en");
        assert_eq!(
            Term::literal(Literal::typed("1", ns::XSD_INTEGER)).to_ntriples(),
            "\"1\"^^<http://www.w3.org/2001/XMLSchema#integer>"
        );
    }

    #[test]
    fn ordering_follows_serialization() {
        let mut terms = vec![
            Term::blank("b1"),
            Term::iri("http://x/a"),
            Term::iri("http://x/a#b"),
            Term::literal(Literal::simple("z")),
            Term::blank("b10"),
        ];
        terms.sort();
        let mut by_string = terms.clone();
        by_string.sort_by_key(|t| t.to_ntriples());
        assert_eq!(terms, by_string);
    }

    #[test]
    fn triple_positions() {
        let lit = Term::literal(Literal::simple("x"));
        let iri = Term::iri("http://x/p");
        assert!(Triple::new(lit.clone(), iri.clone(), iri.clone()).is_err());
        assert!(Triple::new(iri.clone(), Term::blank("b"), iri.clone()).is_err());
        assert!(Triple::new(Term::blank("b"), iri.clone(), lit).is_ok());
    }
}
