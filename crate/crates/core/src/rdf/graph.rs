//! Immutable, indexed triple store.
//!
//! A [`GraphBuilder`] collects triples; [`GraphBuilder::build`] freezes them
//! into a [`Graph`] whose term ids follow the serialization order, so sorted
//! id triples are also sorted term triples.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::ops::Range;

use super::term::{Term, Triple};

/// Dense id of a term inside one [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermId(pub u32);

impl TermId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Where a triple was read from: source file index and 1-based line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceLocation {
    pub source: u32,
    pub line: u32,
}

/// Prefix name → namespace IRI, as declared in the parsed documents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: BTreeMap<String, String>,
}

impl PrefixMap {
    pub fn insert(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.entries.insert(prefix.into(), namespace.into());
    }

    pub fn get(&self, prefix: &str) -> Option<&str> {
        self.entries.get(prefix).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(p, n)| (p.as_str(), n.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Short human form of a term: `prefix:local` when a declared namespace
    /// matches (longest namespace wins), otherwise the N-Triples form.
    pub fn compact(&self, term: &Term) -> String {
        if let Term::Iri(iri) = term {
            let best = self
                .entries
                .iter()
                .filter(|(_, ns)| !ns.is_empty() && iri.starts_with(ns.as_str()))
                .filter(|(_, ns)| is_simple_local(&iri[ns.len()..]))
                .max_by_key(|(p, ns)| (ns.len(), std::cmp::Reverse(p.as_str())));
            if let Some((prefix, ns)) = best {
                return format!("{prefix}:{}", &iri[ns.len()..]);
            }
        }
        term.to_ntriples()
    }
}

fn is_simple_local(local: &str) -> bool {
    !local.is_empty()
        && !local.ends_with('.')
        && local
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

/// Borrowed view of one triple in a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleRef<'a> {
    pub subject: &'a Term,
    pub predicate: &'a Term,
    pub object: &'a Term,
}

impl TripleRef<'_> {
    pub fn to_owned(&self) -> Triple {
        Triple {
            subject: self.subject.clone(),
            predicate: self.predicate.clone(),
            object: self.object.clone(),
        }
    }
}

#[derive(Debug, Default)]
pub struct GraphBuilder {
    terms: Vec<Term>,
    ids: HashMap<Term, u32>,
    triples: Vec<[u32; 3]>,
    seen: HashSet<[u32; 3]>,
    locations: Vec<Option<SourceLocation>>,
    sources: Vec<String>,
    prefixes: PrefixMap,
    blank_counter: u64,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, term: Term) -> u32 {
        if let Some(&id) = self.ids.get(&term) {
            return id;
        }
        let id = self.terms.len() as u32;
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }

    /// Inserts a triple; returns false when it was already present.
    pub fn insert(&mut self, triple: Triple, location: Option<SourceLocation>) -> bool {
        let key = [
            self.intern(triple.subject),
            self.intern(triple.predicate),
            self.intern(triple.object),
        ];
        if !self.seen.insert(key) {
            return false;
        }
        self.triples.push(key);
        self.locations.push(location);
        true
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Registers a source name (usually a file path) for locations.
    pub fn add_source(&mut self, name: impl Into<String>) -> u32 {
        self.sources.push(name.into());
        (self.sources.len() - 1) as u32
    }

    /// Records a prefix declaration; the first declaration of a name wins.
    pub fn declare_prefix(&mut self, prefix: &str, namespace: &str) {
        if self.prefixes.get(prefix).is_none() {
            self.prefixes.insert(prefix, namespace);
        }
    }

    /// A blank node label never handed out before by this builder. Labels
    /// are global to the builder, which keeps documents merged into the same
    /// graph apart.
    pub fn fresh_blank(&mut self) -> Term {
        let label = format!("b{}", self.blank_counter);
        self.blank_counter += 1;
        Term::blank(label)
    }

    /// Copies every triple of `graph` in, renaming its blank nodes apart.
    pub fn merge(&mut self, graph: &Graph) {
        let mut renamed: HashMap<&Term, Term> = HashMap::new();
        let source_offset = self.sources.len() as u32;
        self.sources.extend(graph.sources.iter().cloned());
        for (prefix, ns) in graph.prefixes.iter() {
            self.declare_prefix(prefix, ns);
        }
        for (i, &[s, p, o]) in graph.spo.iter().enumerate() {
            let mut rename = |id: u32, this: &mut Self| {
                let term = &graph.terms[id as usize];
                if term.is_blank() {
                    renamed.entry(term).or_insert_with(|| this.fresh_blank()).clone()
                } else {
                    term.clone()
                }
            };
            let subject = rename(s, self);
            let predicate = rename(p, self);
            let object = rename(o, self);
            let location = graph.spo_locations[i].map(|loc| SourceLocation {
                source: loc.source + source_offset,
                line: loc.line,
            });
            self.insert(Triple { subject, predicate, object }, location);
        }
    }

    pub fn build(self) -> Graph {
        let GraphBuilder { terms, triples, locations, sources, prefixes, .. } = self;

        let mut order: Vec<u32> = (0..terms.len() as u32).collect();
        order.sort_by(|&a, &b| terms[a as usize].cmp(&terms[b as usize]));
        let mut remap = vec![0u32; terms.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old as usize] = new as u32;
        }
        let mut sorted_terms = Vec::with_capacity(terms.len());
        let mut slots: Vec<Option<Term>> = terms.into_iter().map(Some).collect();
        for &old in &order {
            sorted_terms.push(slots[old as usize].take().expect("each term moved once"));
        }
        let ids = sorted_terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();

        let mut with_loc: Vec<([u32; 3], Option<SourceLocation>)> = triples
            .into_iter()
            .zip(locations)
            .map(|([s, p, o], loc)| ([remap[s as usize], remap[p as usize], remap[o as usize]], loc))
            .collect();
        with_loc.sort_unstable_by_key(|(t, _)| *t);
        let spo: Vec<[u32; 3]> = with_loc.iter().map(|(t, _)| *t).collect();
        let spo_locations = with_loc.into_iter().map(|(_, l)| l).collect();

        let mut pos: Vec<[u32; 3]> = spo.iter().map(|&[s, p, o]| [p, o, s]).collect();
        pos.sort_unstable();
        let mut osp: Vec<[u32; 3]> = spo.iter().map(|&[s, p, o]| [o, s, p]).collect();
        osp.sort_unstable();

        Graph {
            terms: sorted_terms,
            ids,
            spo,
            pos,
            osp,
            spo_locations,
            sources,
            prefixes,
        }
    }
}

/// An immutable RDF graph with subject, predicate-object and object indexes.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    terms: Vec<Term>,
    ids: HashMap<Term, u32>,
    spo: Vec<[u32; 3]>,
    pos: Vec<[u32; 3]>,
    osp: Vec<[u32; 3]>,
    spo_locations: Vec<Option<SourceLocation>>,
    sources: Vec<String>,
    prefixes: PrefixMap,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.triples().eq(other.triples())
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn sources(&self) -> &[String] {
        &self.sources
    }

    /// Number of distinct terms; ids run from 0 to `term_count() - 1`.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn id_of(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).map(|&id| TermId(id))
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id.index()]
    }

    fn view(&self, [s, p, o]: [u32; 3]) -> TripleRef<'_> {
        TripleRef {
            subject: &self.terms[s as usize],
            predicate: &self.terms[p as usize],
            object: &self.terms[o as usize],
        }
    }

    /// All triples in (subject, predicate, object) serialization order.
    pub fn triples(&self) -> impl Iterator<Item = TripleRef<'_>> + '_ {
        self.spo.iter().map(|&t| self.view(t))
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.matches(Some(&triple.subject), Some(&triple.predicate), Some(&triple.object))
            .next()
            .is_some()
    }

    /// Triples agreeing with every bound slot, in serialization order.
    pub fn matches(
        &self,
        s: Option<&Term>,
        p: Option<&Term>,
        o: Option<&Term>,
    ) -> impl Iterator<Item = TripleRef<'_>> + '_ {
        let resolve = |t: Option<&Term>| match t {
            None => Some(None),
            Some(t) => self.id_of(t).map(Some),
        };
        let ids = match (resolve(s), resolve(p), resolve(o)) {
            (Some(s), Some(p), Some(o)) => self.match_ids(s, p, o),
            _ => Vec::new(),
        };
        ids.into_iter().map(move |t| self.view(t))
    }

    /// Id-level match. Results are sorted by (subject, predicate, object).
    pub fn match_ids(&self, s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> Vec<[u32; 3]> {
        let (s, p, o) = (s.map(|x| x.0), p.map(|x| x.0), o.map(|x| x.0));
        match (s, p, o) {
            (None, None, None) => self.spo.clone(),
            (Some(s), None, None) => self.spo[prefix_range(&self.spo, &[s])].to_vec(),
            (Some(s), Some(p), None) => self.spo[prefix_range(&self.spo, &[s, p])].to_vec(),
            (Some(s), Some(p), Some(o)) => self.spo[prefix_range(&self.spo, &[s, p, o])].to_vec(),
            (None, Some(p), None) => {
                let mut out: Vec<[u32; 3]> = self.pos[prefix_range(&self.pos, &[p])]
                    .iter()
                    .map(|&[p, o, s]| [s, p, o])
                    .collect();
                out.sort_unstable();
                out
            }
            (None, Some(p), Some(o)) => self.pos[prefix_range(&self.pos, &[p, o])]
                .iter()
                .map(|&[p, o, s]| [s, p, o])
                .collect(),
            (None, None, Some(o)) => self.osp[prefix_range(&self.osp, &[o])]
                .iter()
                .map(|&[o, s, p]| [s, p, o])
                .collect(),
            (Some(s), None, Some(o)) => self.osp[prefix_range(&self.osp, &[o, s])]
                .iter()
                .map(|&[o, s, p]| [s, p, o])
                .collect(),
        }
    }

    /// Objects of `(subject, predicate, ?)`, sorted.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.matches(Some(subject), Some(predicate), None).map(|t| t.object)
    }

    /// Subjects of `(?, predicate, object)`, sorted.
    pub fn subjects<'a>(&'a self, predicate: &Term, object: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.matches(None, Some(predicate), Some(object)).map(|t| t.subject)
    }

    /// Location of one triple, if it was parsed from a source.
    pub fn location(&self, triple: &Triple) -> Option<SourceLocation> {
        let key = [
            self.id_of(&triple.subject)?.0,
            self.id_of(&triple.predicate)?.0,
            self.id_of(&triple.object)?.0,
        ];
        let idx = self.spo.binary_search(&key).ok()?;
        self.spo_locations[idx]
    }

    /// Earliest location among triples having `term` as subject, falling
    /// back to triples mentioning it as object.
    pub fn first_location(&self, term: &Term) -> Option<SourceLocation> {
        let id = self.id_of(term)?.0;
        let as_subject = prefix_range(&self.spo, &[id]);
        let best = self.spo_locations[as_subject]
            .iter()
            .flatten()
            .min_by_key(|l| (l.source, l.line))
            .copied();
        best.or_else(|| {
            self.osp[prefix_range(&self.osp, &[id])]
                .iter()
                .filter_map(|&[o, s, p]| {
                    let idx = self.spo.binary_search(&[s, p, o]).ok()?;
                    self.spo_locations[idx]
                })
                .min_by_key(|l| (l.source, l.line))
        })
    }

    pub fn source_name(&self, location: SourceLocation) -> Option<&str> {
        self.sources.get(location.source as usize).map(String::as_str)
    }
}

fn prefix_range(index: &[[u32; 3]], prefix: &[u32]) -> Range<usize> {
    let n = prefix.len();
    let start = index.partition_point(|t| t[..n] < *prefix);
    let end = index.partition_point(|t| t[..n] <= *prefix);
    start..end
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::term::Literal;

    fn iri(s: &str) -> Term {
        Term::iri(format!("http://example.org/{s}"))
    }

    fn triple(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(iri(s), iri(p), iri(o)).unwrap()
    }

    fn sample() -> Graph {
        let mut b = GraphBuilder::new();
        b.insert(triple("a", "p", "b"), None);
        b.insert(triple("a", "q", "c"), None);
        b.insert(triple("b", "p", "c"), None);
        b.insert(Triple::new(iri("c"), iri("p"), Term::literal(Literal::simple("x"))).unwrap(), None);
        b.build()
    }

    #[test]
    fn duplicate_insert_is_idempotent() {
        let mut b = GraphBuilder::new();
        assert!(b.insert(triple("a", "p", "b"), None));
        assert!(!b.insert(triple("a", "p", "b"), None));
        assert_eq!(b.build().len(), 1);
    }

    #[test]
    fn fully_bound_match_is_zero_or_one() {
        let g = sample();
        assert_eq!(g.matches(Some(&iri("a")), Some(&iri("p")), Some(&iri("b"))).count(), 1);
        assert_eq!(g.matches(Some(&iri("a")), Some(&iri("p")), Some(&iri("c"))).count(), 0);
        assert_eq!(g.matches(Some(&iri("zz")), None, None).count(), 0);
    }

    #[test]
    fn empty_graph_matches_nothing() {
        let g = Graph::new();
        assert_eq!(g.matches(None, None, None).count(), 0);
    }

    #[test]
    fn pattern_results_are_sorted() {
        let g = sample();
        let by_p: Vec<Triple> = g.matches(None, Some(&iri("p")), None).map(|t| t.to_owned()).collect();
        assert_eq!(by_p.len(), 3);
        assert!(by_p.windows(2).all(|w| w[0] < w[1]));
        let by_o: Vec<_> = g.matches(None, None, Some(&iri("c"))).collect();
        assert_eq!(by_o.len(), 2);
    }

    #[test]
    fn merge_renames_blank_nodes_apart() {
        let mut one = GraphBuilder::new();
        let b = one.fresh_blank();
        one.insert(Triple::new(b, iri("p"), iri("x")).unwrap(), None);
        let one = one.build();

        let mut merged = GraphBuilder::new();
        merged.merge(&one);
        merged.merge(&one);
        assert_eq!(merged.build().len(), 2);
    }

    #[test]
    fn compact_uses_longest_namespace() {
        let mut p = PrefixMap::default();
        p.insert("ex", "http://example.org/");
        p.insert("exa", "http://example.org/a/");
        assert_eq!(p.compact(&Term::iri("http://example.org/a/b")), "exa:b");
        assert_eq!(p.compact(&Term::iri("http://example.org/x")), "ex:x");
        assert_eq!(p.compact(&Term::iri("http://other.org/x")), "<http://other.org/x>");
    }
}
