//! Subclass, subproperty and type closures over a graph plus the vocabulary.
//!
//! Every term is addressed by a dense `u32` id: ids below
//! `graph.term_count()` are the graph's own ids, vocabulary IRIs missing
//! from the graph are appended after them.

use std::collections::{BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::rdf::{ns, read_list, Graph, ListError, Term, TermId};
use crate::vocab::{gufo, DisjointOrigin, Vocabulary};

/// Knobs that change what the closures contain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Add the vocabulary's domain and range classes to the asserted types
    /// of subjects and objects before closing.
    pub infer_domains: bool,
}

/// One disjointness fact, as seen from one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DisjointEntry {
    pub other: u32,
    pub origin: DisjointOrigin,
}

#[derive(Debug, Clone)]
pub struct ClosureSet {
    graph_terms: usize,
    extra: Vec<Term>,
    extra_ids: HashMap<Term, u32>,
    class_above: Vec<Vec<u32>>,
    class_below: Vec<Vec<u32>>,
    class_direct: Vec<Vec<u32>>,
    prop_above: Vec<Vec<u32>>,
    prop_below: Vec<Vec<u32>>,
    asserted_types: Vec<Vec<u32>>,
    asserted_instances: Vec<Vec<u32>>,
    types_of: Vec<Vec<u32>>,
    effective: HashMap<u32, Vec<(u32, u32)>>,
    disjoint: Vec<Vec<DisjointEntry>>,
    class_cycles: Vec<Vec<u32>>,
    property_cycles: Vec<Vec<u32>>,
    list_errors: Vec<(u32, ListError)>,
}

fn empty<T>(n: usize) -> Vec<Vec<T>> {
    (0..n).map(|_| Vec::new()).collect()
}

fn sort_dedup(v: &mut Vec<u32>) {
    v.sort_unstable();
    v.dedup();
}

/// Strict reachability over `edges` (sub → super) for `n` nodes, plus the
/// non-trivial strongly connected components (cycles and self-loops).
fn reachability(n: usize, edges: &[(u32, u32)]) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let mut direct: Vec<Vec<u32>> = empty(n);
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(0, edges.len());
    let mut node_of: HashMap<u32, NodeIndex> = HashMap::new();
    let mut id_of: Vec<u32> = Vec::new();
    for &(a, b) in edges {
        for x in [a, b] {
            node_of.entry(x).or_insert_with(|| {
                id_of.push(x);
                g.add_node(())
            });
        }
        g.add_edge(node_of[&a], node_of[&b], ());
        direct[a as usize].push(b);
    }
    for d in &mut direct {
        sort_dedup(d);
    }

    let mut above: Vec<Vec<u32>> = empty(n);
    let mut cycles = Vec::new();
    // Tarjan yields components in reverse topological order: everything a
    // component points at has already been finished.
    for component in tarjan_scc(&g) {
        let members: Vec<u32> = component.iter().map(|ix| id_of[ix.index()]).collect();
        let cyclic = members.len() > 1 || direct[members[0] as usize].contains(&members[0]);
        let mut reach = Vec::new();
        for &m in &members {
            for &sup in &direct[m as usize] {
                reach.push(sup);
                reach.extend_from_slice(&above[sup as usize]);
            }
        }
        if cyclic {
            reach.extend_from_slice(&members);
            let mut sorted = members.clone();
            sorted.sort_unstable();
            cycles.push(sorted);
        }
        sort_dedup(&mut reach);
        for &m in &members {
            above[m as usize] = reach.clone();
        }
    }
    cycles.sort();
    (above, cycles)
}

fn invert(n: usize, forward: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut back: Vec<Vec<u32>> = empty(n);
    for (a, ups) in forward.iter().enumerate() {
        for &b in ups {
            back[b as usize].push(a as u32);
        }
    }
    back
}

/// Transitive closure of a binary relation given as pairs.
pub fn transitive_pairs(pairs: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let n = pairs.iter().map(|&(a, b)| a.max(b) as usize + 1).max().unwrap_or(0);
    let (above, _) = reachability(n, pairs);
    let mut out = Vec::new();
    for (a, reach) in above.iter().enumerate() {
        out.extend(reach.iter().map(|&b| (a as u32, b)));
    }
    out
}

impl ClosureSet {
    /// Total number of ids (graph terms plus appended vocabulary IRIs).
    pub fn len(&self) -> usize {
        self.graph_terms + self.extra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn id(&self, graph: &Graph, term: &Term) -> Option<u32> {
        graph.id_of(term).map(|t| t.0).or_else(|| self.extra_ids.get(term).copied())
    }

    pub fn id_iri(&self, graph: &Graph, iri: &str) -> Option<u32> {
        self.id(graph, &Term::iri(iri))
    }

    pub fn term<'a>(&'a self, graph: &'a Graph, id: u32) -> &'a Term {
        if (id as usize) < self.graph_terms {
            graph.term(TermId(id))
        } else {
            &self.extra[id as usize - self.graph_terms]
        }
    }

    /// Strict superclasses (contains the class itself only on a cycle).
    pub fn class_above(&self, id: u32) -> &[u32] {
        &self.class_above[id as usize]
    }

    pub fn class_below(&self, id: u32) -> &[u32] {
        &self.class_below[id as usize]
    }

    /// One-hop superclasses, from graph and vocabulary edges.
    pub fn class_direct(&self, id: u32) -> &[u32] {
        &self.class_direct[id as usize]
    }

    pub fn prop_above(&self, id: u32) -> &[u32] {
        &self.prop_above[id as usize]
    }

    pub fn prop_below(&self, id: u32) -> &[u32] {
        &self.prop_below[id as usize]
    }

    pub fn asserted_types(&self, id: u32) -> &[u32] {
        &self.asserted_types[id as usize]
    }

    /// Asserted types closed upward; sorted by id.
    pub fn types_of(&self, id: u32) -> &[u32] {
        &self.types_of[id as usize]
    }

    pub fn has_type(&self, id: u32, class: u32) -> bool {
        self.types_of[id as usize].binary_search(&class).is_ok()
    }

    /// Ids carrying at least one type.
    pub fn typed(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len() as u32).filter(|&i| !self.types_of[i as usize].is_empty())
    }

    /// `{ x : class ∈ types_of[x] }`, sorted by id.
    pub fn instances_of_id(&self, class: u32) -> Vec<u32> {
        let mut out = self.asserted_instances[class as usize].clone();
        for &sub in &self.class_below[class as usize] {
            out.extend_from_slice(&self.asserted_instances[sub as usize]);
        }
        sort_dedup(&mut out);
        out
    }

    /// Subject/object pairs asserted with `property` or any property below
    /// it. Sorted; empty for unused properties.
    pub fn effective(&self, property: u32) -> &[(u32, u32)] {
        self.effective.get(&property).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Classes declared disjoint with `class` (directly, not via closure).
    pub fn disjoint_with(&self, class: u32) -> &[DisjointEntry] {
        &self.disjoint[class as usize]
    }

    /// Classes that cannot share an instance with `class`: everything
    /// declared disjoint with it or with one of its superclasses.
    pub fn disjoint_closure(&self, class: u32) -> Vec<DisjointEntry> {
        let mut out: Vec<DisjointEntry> = Vec::new();
        for c in std::iter::once(class).chain(self.class_above(class).iter().copied()) {
            out.extend_from_slice(&self.disjoint[c as usize]);
        }
        out.sort_unstable_by_key(|e| (e.other, e.origin));
        out.dedup_by_key(|e| e.other);
        out
    }

    /// Sorted members of each subclass cycle.
    pub fn class_cycles(&self) -> &[Vec<u32>] {
        &self.class_cycles
    }

    pub fn property_cycles(&self) -> &[Vec<u32>] {
        &self.property_cycles
    }

    /// Malformed `owl:members` / `owl:disjointUnionOf` lists, by owner node.
    pub fn list_errors(&self) -> &[(u32, ListError)] {
        &self.list_errors
    }
}

/// Builds every closure the rules need. Pure in its inputs.
pub fn compute_closures(graph: &Graph, vocab: &Vocabulary, options: ClosureOptions) -> ClosureSet {
    let graph_terms = graph.term_count();
    let mut extra_iris: BTreeSet<&str> = BTreeSet::new();
    let mut vocab_iris: Vec<&str> = vocab.classes().chain(vocab.properties()).collect();
    for (a, b) in vocab.subclass_edges().chain(vocab.subproperty_edges()) {
        vocab_iris.push(a);
        vocab_iris.push(b);
    }
    for (_, d, r) in vocab.domain_range_entries() {
        vocab_iris.extend(d);
        vocab_iris.extend(r);
    }
    for iri in vocab_iris {
        if graph.id_of(&Term::iri(iri)).is_none() {
            extra_iris.insert(iri);
        }
    }
    let extra: Vec<Term> = extra_iris.into_iter().map(Term::iri).collect();
    let extra_ids: HashMap<Term, u32> = extra
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), (graph_terms + i) as u32))
        .collect();
    let n = graph_terms + extra.len();
    let lookup = |iri: &str| -> u32 {
        let t = Term::iri(iri);
        graph.id_of(&t).map(|x| x.0).unwrap_or_else(|| extra_ids[&t])
    };
    let graph_iri = |iri: &str| graph.id_of(&Term::iri(iri));

    // Subclass and subproperty edges.
    let mut class_edges: Vec<(u32, u32)> = vocab.subclass_edges().map(|(a, b)| (lookup(a), lookup(b))).collect();
    if let Some(p) = graph_iri(ns::RDFS_SUBCLASS_OF) {
        class_edges.extend(graph.match_ids(None, Some(p), None).into_iter().map(|[s, _, o]| (s, o)));
    }
    let mut prop_edges: Vec<(u32, u32)> = vocab.subproperty_edges().map(|(a, b)| (lookup(a), lookup(b))).collect();
    if let Some(p) = graph_iri(ns::RDFS_SUBPROPERTY_OF) {
        prop_edges.extend(graph.match_ids(None, Some(p), None).into_iter().map(|[s, _, o]| (s, o)));
    }
    let (class_above, class_cycles) = reachability(n, &class_edges);
    let class_below = invert(n, &class_above);
    let mut class_direct: Vec<Vec<u32>> = empty(n);
    for &(a, b) in &class_edges {
        class_direct[a as usize].push(b);
    }
    for d in &mut class_direct {
        sort_dedup(d);
    }
    let (prop_above, property_cycles) = reachability(n, &prop_edges);
    let prop_below = invert(n, &prop_above);

    // Effective assertions: each triple counts for its predicate and every
    // property above it.
    let mut effective: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
    for [s, p, o] in graph.match_ids(None, None, None) {
        effective.entry(p).or_default().push((s, o));
        for &q in &prop_above[p as usize] {
            effective.entry(q).or_default().push((s, o));
        }
    }
    for pairs in effective.values_mut() {
        pairs.sort_unstable();
        pairs.dedup();
    }

    // Asserted (and optionally injected) types.
    let mut asserted_types: Vec<Vec<u32>> = empty(n);
    if let Some(p) = graph_iri(ns::RDF_TYPE) {
        for [s, _, o] in graph.match_ids(None, Some(p), None) {
            asserted_types[s as usize].push(o);
        }
    }
    if options.infer_domains {
        for (p, d, r) in vocab.domain_range_entries() {
            let Some(pairs) = effective.get(&lookup(p)) else { continue };
            for &(s, o) in pairs {
                if let Some(d) = d {
                    asserted_types[s as usize].push(lookup(d));
                }
                let object_is_resource = !graph.term(TermId(o)).is_literal();
                if let (Some(r), true) = (r, object_is_resource) {
                    asserted_types[o as usize].push(lookup(r));
                }
            }
        }
    }
    for t in &mut asserted_types {
        sort_dedup(t);
    }
    let asserted_instances = invert(n, &asserted_types);
    let types_of: Vec<Vec<u32>> = asserted_types
        .iter()
        .map(|ts| {
            let mut all = ts.clone();
            for &c in ts {
                all.extend_from_slice(&class_above[c as usize]);
            }
            sort_dedup(&mut all);
            all
        })
        .collect();

    // Disjointness: vocabulary pairs plus user declarations.
    let mut disjoint: Vec<Vec<DisjointEntry>> = empty(n);
    let mut add_pair = |a: u32, b: u32, origin: DisjointOrigin| {
        disjoint[a as usize].push(DisjointEntry { other: b, origin });
        disjoint[b as usize].push(DisjointEntry { other: a, origin });
    };
    for (a, b, origin) in vocab.disjoint_pairs() {
        add_pair(lookup(a), lookup(b), origin);
    }
    if let Some(p) = graph_iri(ns::OWL_DISJOINT_WITH) {
        for [s, _, o] in graph.match_ids(None, Some(p), None) {
            add_pair(s, o, DisjointOrigin::External);
        }
    }
    let mut list_errors = Vec::new();
    for group in disjoint_groups(graph, &mut list_errors) {
        for (i, &a) in group.iter().enumerate() {
            for &b in &group[i + 1..] {
                if a != b {
                    add_pair(a, b, DisjointOrigin::External);
                }
            }
        }
    }
    for d in &mut disjoint {
        d.sort_unstable_by_key(|e| (e.other, e.origin));
        d.dedup_by_key(|e| e.other);
    }

    ClosureSet {
        graph_terms,
        extra,
        extra_ids,
        class_above,
        class_below,
        class_direct,
        prop_above,
        prop_below,
        asserted_types,
        asserted_instances,
        types_of,
        effective,
        disjoint,
        class_cycles,
        property_cycles,
        list_errors,
    }
}

/// Member lists of `owl:AllDisjointClasses` and `owl:disjointUnionOf`
/// axioms, as graph ids. Malformed lists are recorded and skipped.
pub fn disjoint_groups(graph: &Graph, errors: &mut Vec<(u32, ListError)>) -> Vec<Vec<u32>> {
    let mut groups = Vec::new();
    let id = |t: &Term| graph.id_of(t).map(|x| x.0);
    let mut read = |owner: &Term, head: &Term, errors: &mut Vec<(u32, ListError)>| match read_list(graph, head) {
        Ok(items) => groups.push(items.iter().filter_map(id).collect::<Vec<u32>>()),
        Err(e) => errors.push((id(owner).expect("owner is in the graph"), e)),
    };
    let all_disjoint = Term::iri(ns::OWL_ALL_DISJOINT_CLASSES);
    let rdf_type = Term::iri(ns::RDF_TYPE);
    let members = Term::iri(ns::OWL_MEMBERS);
    for axiom in graph.subjects(&rdf_type, &all_disjoint) {
        for head in graph.objects(axiom, &members) {
            read(axiom, head, errors);
        }
    }
    for t in graph.matches(None, Some(&Term::iri(ns::OWL_DISJOINT_UNION_OF)), None) {
        read(t.subject, t.object, errors);
    }
    groups
}

/// Transitive closure of the asserted `gufo:historicallyDependsOn` triples.
pub fn historical_closure(graph: &Graph) -> BTreeSet<(Term, Term)> {
    let Some(p) = graph.id_of(&Term::iri(gufo::HISTORICALLY_DEPENDS_ON)) else {
        return BTreeSet::new();
    };
    let pairs: Vec<(u32, u32)> = graph.match_ids(None, Some(p), None).into_iter().map(|[s, _, o]| (s, o)).collect();
    transitive_pairs(&pairs)
        .into_iter()
        .map(|(a, b)| (graph.term(TermId(a)).clone(), graph.term(TermId(b)).clone()))
        .collect()
}

/// `{ x : class ∈ types_of[x] }` as terms.
pub fn instances_of(closures: &ClosureSet, graph: &Graph, class: &Term) -> BTreeSet<Term> {
    let Some(c) = closures.id(graph, class) else { return BTreeSet::new() };
    closures
        .instances_of_id(c)
        .into_iter()
        .map(|x| closures.term(graph, x).clone())
        .collect()
}
