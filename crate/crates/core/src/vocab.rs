//! The gUFO term table: class and property IRIs, internal subclass and
//! subproperty edges, metatype groups, disjointness and domain/range facts.

use std::collections::{BTreeMap, BTreeSet};

use crate::rdf::{ns, Graph, Term};

pub const GUFO_NS: &str = "http://purl.org/nemo/gufo#";

macro_rules! gufo_terms {
    ($($name:ident = $local:literal),* $(,)?) => {
        $(pub const $name: &str = concat!("http://purl.org/nemo/gufo#", $local);)*
    };
}

/// IRIs of the gUFO terms the checker knows about.
pub mod gufo {
    gufo_terms! {
        // taxonomy of individuals
        INDIVIDUAL = "Individual",
        CONCRETE_INDIVIDUAL = "ConcreteIndividual",
        ABSTRACT_INDIVIDUAL = "AbstractIndividual",
        ENDURANT = "Endurant",
        OBJECT = "Object",
        FUNCTIONAL_COMPLEX = "FunctionalComplex",
        COLLECTION = "Collection",
        VARIABLE_COLLECTION = "VariableCollection",
        FIXED_COLLECTION = "FixedCollection",
        QUANTITY = "Quantity",
        ASPECT = "Aspect",
        INTRINSIC_ASPECT = "IntrinsicAspect",
        QUALITY = "Quality",
        INTRINSIC_MODE = "IntrinsicMode",
        EXTRINSIC_ASPECT = "ExtrinsicAspect",
        RELATOR = "Relator",
        EXTRINSIC_MODE = "ExtrinsicMode",
        EVENT = "Event",
        PARTICIPATION = "Participation",
        SITUATION = "Situation",
        QUALITY_VALUE_ATTRIBUTION_SITUATION = "QualityValueAttributionSituation",
        TEMPORARY_CONSTITUTION_SITUATION = "TemporaryConstitutionSituation",
        TEMPORARY_INSTANTIATION_SITUATION = "TemporaryInstantiationSituation",
        TEMPORARY_PARTHOOD_SITUATION = "TemporaryParthoodSituation",
        TEMPORARY_RELATIONSHIP_SITUATION = "TemporaryRelationshipSituation",
        QUALITY_VALUE = "QualityValue",
        // taxonomy of types
        TYPE = "Type",
        ABSTRACT_INDIVIDUAL_TYPE = "AbstractIndividualType",
        CONCRETE_INDIVIDUAL_TYPE = "ConcreteIndividualType",
        ENDURANT_TYPE = "EndurantType",
        EVENT_TYPE = "EventType",
        RIGID_TYPE = "RigidType",
        NON_RIGID_TYPE = "NonRigidType",
        ANTI_RIGID_TYPE = "AntiRigidType",
        SEMI_RIGID_TYPE = "SemiRigidType",
        SORTAL = "Sortal",
        NON_SORTAL = "NonSortal",
        KIND = "Kind",
        SUB_KIND = "SubKind",
        PHASE = "Phase",
        ROLE = "Role",
        CATEGORY = "Category",
        PHASE_MIXIN = "PhaseMixin",
        ROLE_MIXIN = "RoleMixin",
        MIXIN = "Mixin",
        // object properties
        INHERES_IN = "inheresIn",
        MEDIATES = "mediates",
        EXTERNALLY_DEPENDS_ON = "externallyDependsOn",
        IS_ASPECT_PROPER_PART_OF = "isAspectProperPartOf",
        IS_OBJECT_PROPER_PART_OF = "isObjectProperPartOf",
        IS_COMPONENT_OF = "isComponentOf",
        IS_COLLECTION_MEMBER_OF = "isCollectionMemberOf",
        IS_SUB_COLLECTION_OF = "isSubCollectionOf",
        IS_SUB_QUANTITY_OF = "isSubQuantityOf",
        IS_EVENT_PROPER_PART_OF = "isEventProperPartOf",
        PARTICIPATED_IN = "participatedIn",
        WAS_CREATED_IN = "wasCreatedIn",
        WAS_TERMINATED_IN = "wasTerminatedIn",
        MANIFESTED_IN = "manifestedIn",
        HISTORICALLY_DEPENDS_ON = "historicallyDependsOn",
        STANDS_IN_QUALIFIED_ATTRIBUTION = "standsInQualifiedAttribution",
        CONCERNS_QUALITY_TYPE = "concernsQualityType",
        CATEGORIZES = "categorizes",
        PARTITIONS = "partitions",
        HAS_BEGIN_POINT = "hasBeginPoint",
        HAS_END_POINT = "hasEndPoint",
        HAS_REIFIED_QUALITY_VALUE = "hasReifiedQualityValue",
        HAS_VALUE_COMPONENT = "hasValueComponent",
        // data properties
        HAS_QUALITY_VALUE = "hasQualityValue",
        CONCERNS_QUALITY_VALUE = "concernsQualityValue",
        HAS_BEGIN_POINT_IN_XSD_DATE = "hasBeginPointInXSDDate",
        HAS_BEGIN_POINT_IN_XSD_DATE_TIME_STAMP = "hasBeginPointInXSDDateTimeStamp",
        HAS_END_POINT_IN_XSD_DATE = "hasEndPointInXSDDate",
        HAS_END_POINT_IN_XSD_DATE_TIME_STAMP = "hasEndPointInXSDDateTimeStamp",
    }
}

use gufo::*;

const CLASSES: &[&str] = &[
    INDIVIDUAL, CONCRETE_INDIVIDUAL, ABSTRACT_INDIVIDUAL, ENDURANT, OBJECT, FUNCTIONAL_COMPLEX,
    COLLECTION, VARIABLE_COLLECTION, FIXED_COLLECTION, QUANTITY, ASPECT, INTRINSIC_ASPECT, QUALITY,
    INTRINSIC_MODE, EXTRINSIC_ASPECT, RELATOR, EXTRINSIC_MODE, EVENT, PARTICIPATION, SITUATION,
    QUALITY_VALUE_ATTRIBUTION_SITUATION, TEMPORARY_CONSTITUTION_SITUATION,
    TEMPORARY_INSTANTIATION_SITUATION, TEMPORARY_PARTHOOD_SITUATION,
    TEMPORARY_RELATIONSHIP_SITUATION, QUALITY_VALUE, TYPE, ABSTRACT_INDIVIDUAL_TYPE,
    CONCRETE_INDIVIDUAL_TYPE, ENDURANT_TYPE, EVENT_TYPE, RIGID_TYPE, NON_RIGID_TYPE,
    ANTI_RIGID_TYPE, SEMI_RIGID_TYPE, SORTAL, NON_SORTAL, KIND, SUB_KIND, PHASE, ROLE, CATEGORY,
    PHASE_MIXIN, ROLE_MIXIN, MIXIN,
    // Not gUFO, but a member of the Endurant disjointness list.
    ns::TIME_INSTANT,
];

const OBJECT_PROPERTIES: &[&str] = &[
    INHERES_IN, MEDIATES, EXTERNALLY_DEPENDS_ON, IS_ASPECT_PROPER_PART_OF, IS_OBJECT_PROPER_PART_OF,
    IS_COMPONENT_OF, IS_COLLECTION_MEMBER_OF, IS_SUB_COLLECTION_OF, IS_SUB_QUANTITY_OF,
    IS_EVENT_PROPER_PART_OF, PARTICIPATED_IN, WAS_CREATED_IN, WAS_TERMINATED_IN, MANIFESTED_IN,
    HISTORICALLY_DEPENDS_ON, STANDS_IN_QUALIFIED_ATTRIBUTION, CONCERNS_QUALITY_TYPE, CATEGORIZES,
    PARTITIONS, HAS_BEGIN_POINT, HAS_END_POINT, HAS_REIFIED_QUALITY_VALUE, HAS_VALUE_COMPONENT,
];

const DATA_PROPERTIES: &[&str] = &[
    HAS_QUALITY_VALUE, CONCERNS_QUALITY_VALUE, HAS_BEGIN_POINT_IN_XSD_DATE,
    HAS_BEGIN_POINT_IN_XSD_DATE_TIME_STAMP, HAS_END_POINT_IN_XSD_DATE,
    HAS_END_POINT_IN_XSD_DATE_TIME_STAMP,
];

const SUBCLASS_EDGES: &[(&str, &str)] = &[
    (CONCRETE_INDIVIDUAL, INDIVIDUAL),
    (ABSTRACT_INDIVIDUAL, INDIVIDUAL),
    (ENDURANT, CONCRETE_INDIVIDUAL),
    (EVENT, CONCRETE_INDIVIDUAL),
    (SITUATION, CONCRETE_INDIVIDUAL),
    (OBJECT, ENDURANT),
    (ASPECT, ENDURANT),
    (FUNCTIONAL_COMPLEX, OBJECT),
    (COLLECTION, OBJECT),
    (QUANTITY, OBJECT),
    (VARIABLE_COLLECTION, COLLECTION),
    (FIXED_COLLECTION, COLLECTION),
    (INTRINSIC_ASPECT, ASPECT),
    (EXTRINSIC_ASPECT, ASPECT),
    (QUALITY, INTRINSIC_ASPECT),
    (INTRINSIC_MODE, INTRINSIC_ASPECT),
    (RELATOR, EXTRINSIC_ASPECT),
    (EXTRINSIC_MODE, EXTRINSIC_ASPECT),
    (PARTICIPATION, EVENT),
    (QUALITY_VALUE_ATTRIBUTION_SITUATION, SITUATION),
    (TEMPORARY_CONSTITUTION_SITUATION, SITUATION),
    (TEMPORARY_INSTANTIATION_SITUATION, SITUATION),
    (TEMPORARY_PARTHOOD_SITUATION, SITUATION),
    (TEMPORARY_RELATIONSHIP_SITUATION, SITUATION),
    (QUALITY_VALUE, ABSTRACT_INDIVIDUAL),
    (ABSTRACT_INDIVIDUAL_TYPE, TYPE),
    (CONCRETE_INDIVIDUAL_TYPE, TYPE),
    (ENDURANT_TYPE, CONCRETE_INDIVIDUAL_TYPE),
    (EVENT_TYPE, CONCRETE_INDIVIDUAL_TYPE),
    (RIGID_TYPE, ENDURANT_TYPE),
    (NON_RIGID_TYPE, ENDURANT_TYPE),
    (SORTAL, ENDURANT_TYPE),
    (NON_SORTAL, ENDURANT_TYPE),
    (ANTI_RIGID_TYPE, NON_RIGID_TYPE),
    (SEMI_RIGID_TYPE, NON_RIGID_TYPE),
    (KIND, RIGID_TYPE),
    (SUB_KIND, RIGID_TYPE),
    (CATEGORY, RIGID_TYPE),
    (PHASE, ANTI_RIGID_TYPE),
    (ROLE, ANTI_RIGID_TYPE),
    (PHASE_MIXIN, ANTI_RIGID_TYPE),
    (ROLE_MIXIN, ANTI_RIGID_TYPE),
    (MIXIN, SEMI_RIGID_TYPE),
    (KIND, SORTAL),
    (SUB_KIND, SORTAL),
    (PHASE, SORTAL),
    (ROLE, SORTAL),
    (CATEGORY, NON_SORTAL),
    (PHASE_MIXIN, NON_SORTAL),
    (ROLE_MIXIN, NON_SORTAL),
    (MIXIN, NON_SORTAL),
];

const SUBPROPERTY_EDGES: &[(&str, &str)] = &[
    (IS_COMPONENT_OF, IS_OBJECT_PROPER_PART_OF),
    (IS_COLLECTION_MEMBER_OF, IS_OBJECT_PROPER_PART_OF),
    (IS_SUB_COLLECTION_OF, IS_OBJECT_PROPER_PART_OF),
    (IS_SUB_QUANTITY_OF, IS_OBJECT_PROPER_PART_OF),
    (PARTITIONS, CATEGORIZES),
];

const ENDURANT_DISJOINT_LIST: &[&str] = &[
    ABSTRACT_INDIVIDUAL,
    QUALITY_VALUE,
    ns::TIME_INSTANT,
    EVENT,
    PARTICIPATION,
    SITUATION,
    QUALITY_VALUE_ATTRIBUTION_SITUATION,
    TEMPORARY_CONSTITUTION_SITUATION,
    TEMPORARY_INSTANTIATION_SITUATION,
    TEMPORARY_PARTHOOD_SITUATION,
    TEMPORARY_RELATIONSHIP_SITUATION,
];

const DOMAIN_RANGE: &[(&str, Option<&str>, Option<&str>)] = &[
    (INHERES_IN, Some(ASPECT), Some(CONCRETE_INDIVIDUAL)),
    (MEDIATES, Some(RELATOR), Some(CONCRETE_INDIVIDUAL)),
    (PARTICIPATED_IN, Some(OBJECT), Some(EVENT)),
    (WAS_CREATED_IN, Some(ENDURANT), Some(EVENT)),
    (WAS_TERMINATED_IN, Some(ENDURANT), Some(EVENT)),
    (MANIFESTED_IN, Some(ASPECT), Some(EVENT)),
    (CONCERNS_QUALITY_TYPE, Some(QUALITY_VALUE_ATTRIBUTION_SITUATION), Some(TYPE)),
    (CONCERNS_QUALITY_VALUE, Some(QUALITY_VALUE_ATTRIBUTION_SITUATION), None),
    (IS_OBJECT_PROPER_PART_OF, Some(OBJECT), Some(OBJECT)),
    (IS_COMPONENT_OF, Some(OBJECT), Some(FUNCTIONAL_COMPLEX)),
    (IS_COLLECTION_MEMBER_OF, Some(OBJECT), Some(COLLECTION)),
    (IS_SUB_COLLECTION_OF, Some(COLLECTION), Some(COLLECTION)),
    (IS_SUB_QUANTITY_OF, Some(QUANTITY), Some(QUANTITY)),
    (IS_EVENT_PROPER_PART_OF, Some(EVENT), Some(EVENT)),
    (IS_ASPECT_PROPER_PART_OF, Some(ASPECT), Some(ASPECT)),
    (EXTERNALLY_DEPENDS_ON, Some(EXTRINSIC_MODE), Some(CONCRETE_INDIVIDUAL)),
    (HISTORICALLY_DEPENDS_ON, Some(CONCRETE_INDIVIDUAL), Some(CONCRETE_INDIVIDUAL)),
    (STANDS_IN_QUALIFIED_ATTRIBUTION, Some(ENDURANT), Some(QUALITY_VALUE_ATTRIBUTION_SITUATION)),
    (HAS_QUALITY_VALUE, Some(QUALITY), None),
    (HAS_REIFIED_QUALITY_VALUE, Some(QUALITY), Some(QUALITY_VALUE)),
    (HAS_VALUE_COMPONENT, Some(QUALITY_VALUE), None),
    (CATEGORIZES, Some(TYPE), Some(TYPE)),
    (PARTITIONS, Some(TYPE), Some(TYPE)),
    (HAS_BEGIN_POINT, Some(CONCRETE_INDIVIDUAL), Some(ns::TIME_INSTANT)),
    (HAS_END_POINT, Some(CONCRETE_INDIVIDUAL), Some(ns::TIME_INSTANT)),
    (HAS_BEGIN_POINT_IN_XSD_DATE, Some(CONCRETE_INDIVIDUAL), None),
    (HAS_BEGIN_POINT_IN_XSD_DATE_TIME_STAMP, Some(CONCRETE_INDIVIDUAL), None),
    (HAS_END_POINT_IN_XSD_DATE, Some(CONCRETE_INDIVIDUAL), None),
    (HAS_END_POINT_IN_XSD_DATE_TIME_STAMP, Some(CONCRETE_INDIVIDUAL), None),
];

/// Named metatype groups, read from the target and value lists of the
/// published constraint shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Rigid,
    SemiRigid,
    AntiRigid,
    Sortal,
    NonSortal,
    BaseSortal,
    EndurantTypeTargets,
}

impl Group {
    pub const ALL: [Group; 7] = [
        Group::Rigid,
        Group::SemiRigid,
        Group::AntiRigid,
        Group::Sortal,
        Group::NonSortal,
        Group::BaseSortal,
        Group::EndurantTypeTargets,
    ];

    pub fn members(self) -> &'static [&'static str] {
        match self {
            Group::Rigid => &[RIGID_TYPE, CATEGORY, KIND, SUB_KIND],
            Group::SemiRigid => &[SEMI_RIGID_TYPE, MIXIN],
            Group::AntiRigid => &[ANTI_RIGID_TYPE, PHASE, PHASE_MIXIN, ROLE, ROLE_MIXIN],
            Group::Sortal => &[SORTAL, KIND, SUB_KIND, PHASE, ROLE],
            Group::NonSortal => &[NON_SORTAL, CATEGORY, PHASE_MIXIN, ROLE_MIXIN, MIXIN],
            Group::BaseSortal => &[SUB_KIND, PHASE, ROLE],
            Group::EndurantTypeTargets => &[
                ENDURANT_TYPE, RIGID_TYPE, NON_RIGID_TYPE, ANTI_RIGID_TYPE, SEMI_RIGID_TYPE, PHASE,
                PHASE_MIXIN, ROLE, ROLE_MIXIN, MIXIN, NON_SORTAL, CATEGORY, SORTAL, KIND, SUB_KIND,
            ],
        }
    }
}

/// Where a disjointness fact comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DisjointOrigin {
    Builtin,
    /// Implied by the intrinsic/extrinsic split but not an asserted axiom.
    Inferred,
    External,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DeclaredCounts {
    pub classes: usize,
    pub object_properties: usize,
    pub data_properties: usize,
}

/// An external fact that was rejected because it contradicts the built-ins.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MergeConflict {
    pub subject: String,
    pub predicate: String,
    pub object: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    classes: BTreeSet<String>,
    object_properties: BTreeSet<String>,
    data_properties: BTreeSet<String>,
    subclass_edges: BTreeSet<(String, String)>,
    subproperty_edges: BTreeSet<(String, String)>,
    disjoint_pairs: BTreeMap<(String, String), DisjointOrigin>,
    domain_range: BTreeMap<String, (Option<String>, Option<String>)>,
    declared: DeclaredCounts,
    conflicts: Vec<MergeConflict>,
}

fn ordered(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

/// The built-in table. Pure; every call returns an equal value.
pub fn builtin_vocabulary() -> Vocabulary {
    let own = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    let edges = |xs: &[(&str, &str)]| {
        xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<BTreeSet<_>>()
    };

    let mut disjoint_pairs = BTreeMap::new();
    let mut add = |a: &str, b: &str, origin| {
        disjoint_pairs.insert(ordered(a, b), origin);
    };
    add(INDIVIDUAL, TYPE, DisjointOrigin::Builtin);
    add(CONCRETE_INDIVIDUAL, ABSTRACT_INDIVIDUAL, DisjointOrigin::Builtin);
    for other in ENDURANT_DISJOINT_LIST {
        add(ENDURANT, other, DisjointOrigin::Builtin);
    }
    add(EVENT, SITUATION, DisjointOrigin::Builtin);
    add(OBJECT, ASPECT, DisjointOrigin::Builtin);
    add(INTRINSIC_ASPECT, EXTRINSIC_ASPECT, DisjointOrigin::Inferred);

    Vocabulary {
        classes: own(CLASSES),
        object_properties: own(OBJECT_PROPERTIES),
        data_properties: own(DATA_PROPERTIES),
        subclass_edges: edges(SUBCLASS_EDGES),
        subproperty_edges: edges(SUBPROPERTY_EDGES),
        disjoint_pairs,
        domain_range: DOMAIN_RANGE
            .iter()
            .map(|(p, d, r)| (p.to_string(), (d.map(str::to_owned), r.map(str::to_owned))))
            .collect(),
        declared: DeclaredCounts::default(),
        conflicts: Vec::new(),
    }
}

impl Vocabulary {
    pub fn classes(&self) -> impl Iterator<Item = &str> {
        self.classes.iter().map(String::as_str)
    }

    pub fn object_properties(&self) -> impl Iterator<Item = &str> {
        self.object_properties.iter().map(String::as_str)
    }

    pub fn data_properties(&self) -> impl Iterator<Item = &str> {
        self.data_properties.iter().map(String::as_str)
    }

    pub fn properties(&self) -> impl Iterator<Item = &str> {
        self.object_properties().chain(self.data_properties())
    }

    pub fn is_class(&self, iri: &str) -> bool {
        self.classes.contains(iri)
    }

    pub fn is_property(&self, iri: &str) -> bool {
        self.object_properties.contains(iri) || self.data_properties.contains(iri)
    }

    /// True for any IRI in the class or property tables.
    pub fn contains(&self, iri: &str) -> bool {
        self.is_class(iri) || self.is_property(iri)
    }

    pub fn subclass_edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.subclass_edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn subproperty_edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.subproperty_edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn has_subclass_edge(&self, sub: &str, sup: &str) -> bool {
        self.subclass_edges.contains(&(sub.to_owned(), sup.to_owned()))
    }

    pub fn has_subproperty_edge(&self, sub: &str, sup: &str) -> bool {
        self.subproperty_edges.contains(&(sub.to_owned(), sup.to_owned()))
    }

    /// Unordered pairs, each reported once with the smaller IRI first.
    pub fn disjoint_pairs(&self) -> impl Iterator<Item = (&str, &str, DisjointOrigin)> {
        self.disjoint_pairs.iter().map(|((a, b), o)| (a.as_str(), b.as_str(), *o))
    }

    pub fn are_disjoint(&self, a: &str, b: &str) -> bool {
        self.disjoint_pairs.contains_key(&ordered(a, b))
    }

    pub fn endurant_disjoint_list(&self) -> &'static [&'static str] {
        ENDURANT_DISJOINT_LIST
    }

    pub fn group(&self, group: Group) -> &'static [&'static str] {
        group.members()
    }

    pub fn domain_range(&self, property: &str) -> Option<(Option<&str>, Option<&str>)> {
        self.domain_range
            .get(property)
            .map(|(d, r)| (d.as_deref(), r.as_deref()))
    }

    pub fn domain_range_entries(&self) -> impl Iterator<Item = (&str, Option<&str>, Option<&str>)> {
        self.domain_range
            .iter()
            .map(|(p, (d, r))| (p.as_str(), d.as_deref(), r.as_deref()))
    }

    /// gUFO-namespace declarations seen by [`Vocabulary::merge_external`].
    pub fn declared_counts(&self) -> DeclaredCounts {
        self.declared
    }

    pub fn merge_conflicts(&self) -> &[MergeConflict] {
        &self.conflicts
    }

    /// Strict ancestors of `class` under the current subclass edges.
    fn ancestors(&self, class: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![class.to_owned()];
        while let Some(c) = stack.pop() {
            for (sub, sup) in &self.subclass_edges {
                if *sub == c && seen.insert(sup.clone()) {
                    stack.push(sup.clone());
                }
            }
        }
        seen
    }

    /// A built-in disjoint pair that would both be ancestors-or-self of
    /// `class` once `extra` is added above it.
    fn clash_above(&self, class: &str, extra: &str) -> Option<(String, String)> {
        let mut up = self.ancestors(class);
        up.insert(class.to_owned());
        up.insert(extra.to_owned());
        up.extend(self.ancestors(extra));
        self.disjoint_pairs
            .keys()
            .find(|(a, b)| up.contains(a) && up.contains(b))
            .cloned()
    }

    /// Extends the table with the gUFO-namespace axioms of `graph`.
    ///
    /// Built-in facts are never removed. External facts that contradict a
    /// built-in disjointness are dropped and recorded as conflicts; external
    /// domains and ranges only fill gaps.
    pub fn merge_external(&self, graph: &Graph) -> Vocabulary {
        let mut v = self.clone();
        let in_ns = |t: &Term| t.as_iri().filter(|i| i.starts_with(GUFO_NS)).map(str::to_owned);
        let iri_obj = |t: &Term| t.as_iri().map(str::to_owned);
        let pred = |p: &str| Term::iri(p);

        let mut declared_classes = BTreeSet::new();
        let mut declared_obj = BTreeSet::new();
        let mut declared_data = BTreeSet::new();
        for t in graph.matches(None, Some(&pred(ns::RDF_TYPE)), None) {
            let Some(s) = in_ns(t.subject) else { continue };
            match t.object.as_iri() {
                Some(ns::OWL_CLASS) | Some(ns::RDFS_CLASS) => {
                    declared_classes.insert(s.clone());
                    v.classes.insert(s);
                }
                Some(ns::OWL_OBJECT_PROPERTY) => {
                    declared_obj.insert(s.clone());
                    if !v.data_properties.contains(&s) {
                        v.object_properties.insert(s);
                    }
                }
                Some(ns::OWL_DATATYPE_PROPERTY) => {
                    declared_data.insert(s.clone());
                    if !v.object_properties.contains(&s) {
                        v.data_properties.insert(s);
                    }
                }
                _ => {}
            }
        }
        v.declared = DeclaredCounts {
            classes: v.declared.classes.max(declared_classes.len()),
            object_properties: v.declared.object_properties.max(declared_obj.len()),
            data_properties: v.declared.data_properties.max(declared_data.len()),
        };

        for t in graph.matches(None, Some(&pred(ns::RDFS_SUBCLASS_OF)), None) {
            let (Some(sub), Some(sup)) = (in_ns(t.subject), iri_obj(t.object)) else { continue };
            if sub == sup || v.has_subclass_edge(&sub, &sup) {
                continue;
            }
            if let Some((a, b)) = v.clash_above(&sub, &sup) {
                v.conflicts.push(MergeConflict {
                    subject: sub,
                    predicate: ns::RDFS_SUBCLASS_OF.to_owned(),
                    object: sup,
                    reason: format!("it would place the subject under both <{a}> and <{b}>, which are disjoint"),
                });
                continue;
            }
            v.classes.insert(sub.clone());
            if sup.starts_with(GUFO_NS) {
                v.classes.insert(sup.clone());
            }
            v.subclass_edges.insert((sub, sup));
        }

        for t in graph.matches(None, Some(&pred(ns::RDFS_SUBPROPERTY_OF)), None) {
            let (Some(sub), Some(sup)) = (in_ns(t.subject), iri_obj(t.object)) else { continue };
            if sub == sup {
                continue;
            }
            if !v.is_property(&sub) {
                v.object_properties.insert(sub.clone());
            }
            v.subproperty_edges.insert((sub, sup));
        }

        for t in graph.matches(None, Some(&pred(ns::OWL_DISJOINT_WITH)), None) {
            let (Some(a), Some(b)) = (in_ns(t.subject), iri_obj(t.object)) else { continue };
            if v.are_disjoint(&a, &b) {
                continue;
            }
            let up_a = v.ancestors(&a);
            let up_b = v.ancestors(&b);
            if a == b || up_a.contains(&b) || up_b.contains(&a) {
                v.conflicts.push(MergeConflict {
                    subject: a,
                    predicate: ns::OWL_DISJOINT_WITH.to_owned(),
                    object: b,
                    reason: "the built-in taxonomy places one class under the other".to_owned(),
                });
                continue;
            }
            v.classes.insert(a.clone());
            v.disjoint_pairs.insert(ordered(&a, &b), DisjointOrigin::External);
        }

        for (predicate, is_domain) in [(ns::RDFS_DOMAIN, true), (ns::RDFS_RANGE, false)] {
            for t in graph.matches(None, Some(&pred(predicate)), None) {
                let (Some(p), Some(c)) = (in_ns(t.subject), iri_obj(t.object)) else { continue };
                if !v.is_property(&p) {
                    v.object_properties.insert(p.clone());
                }
                let entry = v.domain_range.entry(p).or_insert((None, None));
                let slot = if is_domain { &mut entry.0 } else { &mut entry.1 };
                if slot.is_none() {
                    *slot = Some(c);
                }
            }
        }
        v.conflicts.sort();
        v.conflicts.dedup();
        v
    }
}
