//! One test per acceptance criterion. Each prints a PASS/FAIL line.

mod common;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::gen::*;
use common::*;
use gufo_check::cli::{run, FailOn, Format, RunConfig};
use gufo_check::inference::{compute_closures, ClosureOptions};
use gufo_check::rdf::{ns, parse_turtle, read_list, serialize_ntriples, Graph, Term, Triple};
use gufo_check::rules::{check, Context, RuleConfig, RuleId, Severity, Violation};
use gufo_check::vocab::builtin_vocabulary;
use proptest::strategy::{Just, Strategy};
use proptest::test_runner::{Config, TestRunner};

fn verdict(n: u32, name: &str, result: Result<String, String>) {
    match result {
        Ok(detail) => println!("criterion {n:2} {name}: PASS ({detail})"),
        Err(detail) => {
            println!("criterion {n:2} {name}: FAIL ({detail})");
            panic!("criterion {n} failed: {detail}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn summary(v: &[Violation]) -> String {
    v.iter().map(|x| format!("{}/{}: {}", x.rule, x.severity, x.message)).collect::<Vec<_>>().join("; ")
}

#[test]
fn criterion_01_corpus_soundness() {
    let result = (|| {
        let mut config = RunConfig::new(corpus_files());
        config.format = Format::Json;
        config.fail_on = FailOn::Error;
        let start = Instant::now();
        let out = run(&config).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(out.report.files.len() == 23, || format!("{} files", out.report.files.len()))?;
        let errors: Vec<_> = out.report.violations.iter().filter(|v| v.severity == "error").collect();
        ensure(errors.is_empty(), || format!("{errors:?}"))?;
        ensure(out.exit_code == 0, || format!("exit {}", out.exit_code))?;
        ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
        Ok(format!("0 errors over 23 files in {elapsed:.2?}"))
    })();
    verdict(1, "corpus soundness", result);
}

#[test]
fn criterion_02_rule_fidelity() {
    let cases = [
        (RuleId::R1, "r1", "antirigid"),
        (RuleId::R2, "r2", "sortality"),
        (RuleId::R3, "r3", "kindexists"),
        (RuleId::R4, "r4", "kindcantspecialize"),
        (RuleId::R5, "r5", "powertype"),
        (RuleId::R6, "r6", "categorization"),
        (RuleId::R7, "r7", "partitioning2"),
    ];
    let result = (|| {
        for (rule, stem, shape) in cases {
            let invalid = rule_fixture(&format!("{stem}_invalid"));
            let size = load(&invalid).len();
            ensure(size <= 8, || format!("{stem}_invalid has {size} triples"))?;
            let mut expected = shape_message(shape);
            if rule == RuleId::R7 {
                expected = expected
                    .replace("{?type1}", ":Cat")
                    .replace("{?type2}", ":Dog")
                    .replace("{$this}", ":AnimalSpecies");
            }
            let v = check_paths(&[invalid]);
            ensure(v.len() == 1 && v[0].rule == rule && v[0].message == expected, || {
                format!("{stem}_invalid: {}", summary(&v))
            })?;
            let v = check_fixture(&format!("{stem}_valid"));
            ensure(v.is_empty(), || format!("{stem}_valid: {}", summary(&v)))?;
        }
        Ok("R1-R7 fire once with the shape message; twins clean".into())
    })();
    verdict(2, "rule fidelity", result);
}

#[test]
fn criterion_03_prose_rule_fidelity() {
    let result = (|| {
        let corpus = check_paths(&corpus_files());
        let fixture = check_fixture("r8_invalid");
        let r8 = of_rule(&fixture, RuleId::R8);
        ensure(r8.len() == 1 && r8[0].focus == ex("Rex"), || format!("R8 on two kinds: {r8:?}"))?;
        let john: Vec<_> = of_rule(&corpus, RuleId::R8).into_iter().filter(|v| v.focus == ex("John")).collect();
        ensure(john.is_empty(), || format!("R8 on :John: {john:?}"))?;
        ensure(of_rule(&corpus, RuleId::R8).is_empty(), || "R8 on corpus".into())?;

        let fixture = check_fixture("r9_invalid");
        let r9 = of_rule(&fixture, RuleId::R9);
        ensure(r9.len() == 1 && r9[0].focus == ex("Dog"), || format!("R9 on Kind categorizer: {r9:?}"))?;
        let ship = check_paths(&[corpus_file("highorder2")]);
        ensure(of_rule(&ship, RuleId::R9).is_empty(), || "R9 on ShipType".into())?;
        ensure(of_rule(&corpus, RuleId::R9).is_empty(), || "R9 on corpus".into())?;

        let fixture = check_fixture("r10_invalid");
        let r10 = of_rule(&fixture, RuleId::R10);
        ensure(r10.len() == 1 && r10[0].severity == Severity::Error, || format!("R10: {r10:?}"))?;
        Ok("R8, R9 and R10 fire on their fixtures only".into())
    })();
    verdict(3, "prose-rule fidelity", result);
}

/// Unordered pairs of `AnimalSpecies` instances with no disjointness
/// declaration, read straight off the triples.
fn undeclared_pairs(g: &Graph) -> usize {
    let ty = Term::iri(ns::RDF_TYPE);
    let species: Vec<Term> = g.subjects(&ty, &ex("AnimalSpecies")).cloned().collect();
    let mut covered: BTreeSet<(Term, Term)> = BTreeSet::new();
    let mut cover_all = |members: &[Term]| {
        for a in members {
            for b in members {
                covered.insert((a.clone(), b.clone()));
            }
        }
    };
    for t in g.matches(None, Some(&Term::iri(ns::OWL_DISJOINT_WITH)), None) {
        cover_all(&[t.subject.clone(), t.object.clone()]);
    }
    for adc in g.subjects(&ty, &Term::iri(ns::OWL_ALL_DISJOINT_CLASSES)) {
        for list in g.objects(adc, &Term::iri(ns::OWL_MEMBERS)) {
            cover_all(&read_list(g, list).unwrap());
        }
    }
    for t in g.matches(None, Some(&Term::iri(ns::OWL_DISJOINT_UNION_OF)), None) {
        cover_all(&read_list(g, t.object).unwrap());
    }
    let mut n = 0;
    for (i, a) in species.iter().enumerate() {
        for b in &species[i + 1..] {
            if !covered.contains(&(a.clone(), b.clone())) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn criterion_04_partition_semantics() {
    let result = (|| {
        let mut detail = String::new();
        for (name, expected) in [("partition_three", 2), ("partition_all_disjoint", 0), ("partition_disjoint_union", 0)] {
            let path = rule_fixture(name);
            let oracle = undeclared_pairs(&load(&path));
            ensure(oracle == expected, || format!("{name}: oracle enumerates {oracle} pairs"))?;
            let got = of_rule(&check_paths(&[path]), RuleId::R7).len();
            ensure(got == expected, || format!("{name}: R7 reported {got}, expected {expected}"))?;
            let _ = write!(detail, "{name}={got} ");
        }
        Ok(detail.trim_end().to_owned())
    })();
    verdict(4, "partition semantics", result);
}

fn closure_case(n: usize, edges: &[(usize, usize)], typings: &[(usize, usize)]) -> Result<(), String> {
    let r = reach_matrix(n, edges);
    let vocab = builtin_vocabulary();
    let expected_above = |i: usize, prefix: &str| -> BTreeSet<Term> {
        (0..n).filter(|&j| r[i][j]).map(|j| node(prefix, j)).collect()
    };

    // Subclass closure and instance typing.
    let mut triples = edge_triples("C", ns::RDFS_SUBCLASS_OF, edges);
    for &(x, c) in typings {
        triples.push(Triple::new(node("x", x), Term::iri(ns::RDF_TYPE), node("C", c)).unwrap());
    }
    let g = graph_of(&triples);
    let c = compute_closures(&g, &vocab, ClosureOptions::default());
    let terms = |ids: &[u32]| -> BTreeSet<Term> { ids.iter().map(|&i| c.term(&g, i).clone()).collect() };
    for i in 0..n {
        let got = c.id(&g, &node("C", i)).map(|id| terms(c.class_above(id))).unwrap_or_default();
        ensure(got == expected_above(i, "C"), || format!("subclass above C{i}: {got:?}"))?;
        let below: BTreeSet<Term> = (0..n).filter(|&j| r[j][i]).map(|j| node("C", j)).collect();
        let got = c.id(&g, &node("C", i)).map(|id| terms(c.class_below(id))).unwrap_or_default();
        ensure(got == below, || format!("subclass below C{i}: {got:?}"))?;
    }
    let xs: BTreeSet<usize> = typings.iter().map(|&(x, _)| x).collect();
    for x in xs {
        let mut expected = BTreeSet::new();
        for &(y, cls) in typings {
            if y == x {
                expected.insert(node("C", cls));
                expected.extend(expected_above(cls, "C"));
            }
        }
        let id = c.id(&g, &node("x", x)).unwrap();
        let got = terms(c.types_of(id));
        ensure(got == expected, || format!("types of x{x}: {got:?} vs {expected:?}"))?;
    }

    // Subproperty closure, and assertions lifted along it.
    let mut triples = edge_triples("P", ns::RDFS_SUBPROPERTY_OF, edges);
    for i in 0..n {
        triples.push(Triple::new(node("s", i), node("P", i), node("o", i)).unwrap());
    }
    let g = graph_of(&triples);
    let c = compute_closures(&g, &vocab, ClosureOptions::default());
    for i in 0..n {
        let id = c.id(&g, &node("P", i)).unwrap();
        let got: BTreeSet<Term> = c.prop_above(id).iter().map(|&x| c.term(&g, x).clone()).collect();
        ensure(got == expected_above(i, "P"), || format!("subproperty above P{i}: {got:?}"))?;
        let effective: BTreeSet<Term> = c.effective(id).iter().map(|&(s, _)| c.term(&g, s).clone()).collect();
        let expected: BTreeSet<Term> = (0..n).filter(|&j| j == i || r[j][i]).map(|j| node("s", j)).collect();
        ensure(effective == expected, || format!("effective P{i}: {effective:?}"))?;
    }
    Ok(())
}

#[test]
fn criterion_05_closure_oracle() {
    let mut runner = TestRunner::new(Config { cases: 200, failure_persistence: None, ..Config::default() });
    let strategy = dag_strategy(30, 60).prop_flat_map(|(n, edges)| {
        (Just(n), Just(edges), proptest::collection::vec((0usize..10, 0..n), 0..20))
    });
    let result = runner
        .run(&strategy, |(n, edges, typings)| {
            closure_case(n, &edges, &typings).map_err(proptest::test_runner::TestCaseError::fail)
        })
        .map(|()| "200 random DAGs, subclass/subproperty/type closures equal the cubic oracle".to_owned())
        .map_err(|e| e.to_string());
    verdict(5, "closure oracle equivalence", result);
}

#[test]
fn criterion_06_parser_properties() {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    let round_trip = runner.run(&triples_strategy(40), |triples| {
        let g = graph_of(&triples);
        let nt = serialize_ntriples(&g);
        let g1 = parse_turtle(&nt, None).map_err(|e| proptest::test_runner::TestCaseError::fail(e.to_string()))?;
        proptest::prop_assert_eq!(&g1, &g);
        let g2 = parse_turtle(&serialize_ntriples(&g1), None).unwrap();
        proptest::prop_assert_eq!(&g2, &g1);
        let from_turtle = parse_turtle(&to_turtle(&triples), None).unwrap();
        proptest::prop_assert_eq!(&from_turtle, &g);
        Ok(())
    });

    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    let query = (
        triples_strategy(40),
        proptest::option::of(iri_strategy()),
        proptest::option::of(iri_strategy()),
        proptest::option::of(proptest::prop_oneof![iri_strategy(), literal_strategy()]),
    );
    let matching = runner.run(&query, |(triples, s, p, o)| {
        let g = graph_of(&triples);
        let mut distinct: Vec<Triple> = triples.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        distinct.sort_by_key(|t| (t.subject.to_ntriples(), t.predicate.to_ntriples(), t.object.to_ntriples()));
        for mask in 0..8u8 {
            let qs = (mask & 1 != 0).then_some(s.as_ref()).flatten();
            let qp = (mask & 2 != 0).then_some(p.as_ref()).flatten();
            let qo = (mask & 4 != 0).then_some(o.as_ref()).flatten();
            let got: Vec<Triple> = g.matches(qs, qp, qo).map(|t| t.to_owned()).collect();
            let want: Vec<Triple> = distinct
                .iter()
                .filter(|t| {
                    qs.is_none_or(|x| &t.subject == x)
                        && qp.is_none_or(|x| &t.predicate == x)
                        && qo.is_none_or(|x| &t.object == x)
                })
                .cloned()
                .collect();
            proptest::prop_assert_eq!(got, want, "mask {}", mask);
        }
        Ok(())
    });
    let result = match (round_trip, matching) {
        (Ok(()), Ok(())) => Ok("100 round trips; 8 slot combinations equal a linear scan".to_owned()),
        (Err(e), _) => Err(format!("round trip: {e}")),
        (_, Err(e)) => Err(format!("match: {e}")),
    };
    verdict(6, "parser property suite", result);
}

#[test]
fn criterion_07_temporal_lint() {
    let result = (|| {
        let l3 = |paths: &[PathBuf]| -> Vec<Violation> {
            check_paths(paths).into_iter().filter(|v| v.rule == RuleId::L3).collect()
        };
        let wedding = l3(&[corpus_file("wedding")]);
        ensure(wedding.is_empty(), || format!("wedding: {}", summary(&wedding)))?;
        let reversed = l3(&[rule_fixture("temporal_reversed")]);
        ensure(reversed.len() == 1 && reversed[0].severity == Severity::Error, || {
            format!("reversed: {}", summary(&reversed))
        })?;
        let mixed = l3(&[rule_fixture("temporal_mixed")]);
        ensure(mixed.len() == 1 && mixed[0].severity == Severity::Info, || format!("mixed: {}", summary(&mixed)))?;
        Ok("equal dates accepted, reversed dates rejected, mixed kinds noted".into())
    })();
    verdict(7, "temporal lint", result);
}

/// 10,000 classes in a random tree plus 80,000 typing triples: 100,000 in all.
fn synthetic_graph(seed: u64) -> String {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::with_capacity(6_000_000);
    text.push_str("@prefix : <http://example.org/> .\n@prefix gufo: <http://purl.org/nemo/gufo#> .\n");
    text.push_str("@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n");
    text.push_str(":C0 a gufo:Kind .\n");
    for i in 1..10_000 {
        let parent = rng.gen_range(0..i);
        let _ = writeln!(text, ":C{i} a gufo:SubKind ; rdfs:subClassOf :C{parent} .");
    }
    for k in 0..80_000 {
        let _ = writeln!(text, ":i{k} a :C{} .", rng.gen_range(0..10_000));
    }
    text.push_str(":i0 rdfs:label \"first\" .\n");
    text
}

#[test]
fn criterion_08_performance() {
    let text = synthetic_graph(7);
    let result = (|| {
        let start = Instant::now();
        let graph = parse_turtle(&text, None).map_err(|e| e.to_string())?;
        let vocab = builtin_vocabulary();
        let closures = compute_closures(&graph, &vocab, ClosureOptions::default());
        let v = check(&Context::new(&graph, &vocab, &closures), &RuleConfig::default());
        let elapsed = start.elapsed();
        ensure(graph.len() == 100_000, || format!("{} triples", graph.len()))?;
        let errors = v.iter().filter(|x| x.severity == Severity::Error).count();
        ensure(errors == 0, || format!("{errors} errors on a well-formed tree"))?;
        ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:.2?}"))?;
        Ok(format!("100,000 triples parsed and checked in {elapsed:.2?}"))
    })();
    verdict(8, "desk-scale performance", result);
}

#[test]
fn criterion_09_vocabulary_coverage() {
    let result = (|| {
        let vocab = builtin_vocabulary();
        let re = regex::Regex::new(r"gufo:([A-Za-z][A-Za-z0-9]*)|<http://purl\.org/nemo/gufo#([A-Za-z0-9]+)>").unwrap();
        let mut seen = BTreeSet::new();
        for path in corpus_files().into_iter().chain(ttl_files("shapes")) {
            let text = std::fs::read_to_string(&path).unwrap();
            for cap in re.captures_iter(&text) {
                let local = cap.get(1).or(cap.get(2)).unwrap().as_str().to_owned();
                seen.insert(local);
            }
        }
        let missing: Vec<_> = seen.iter().filter(|l| !vocab.contains(&format!("{GUFO}{l}"))).collect();
        ensure(missing.is_empty(), || format!("unknown gUFO terms: {missing:?}"))?;
        let mut detail = format!("{} distinct gUFO terms resolve", seen.len());

        match std::env::var_os("GUFO_TTL") {
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
                let graph = parse_turtle(&text, Some("http://purl.org/nemo/gufo")).map_err(|e| e.to_string())?;
                let merged = vocab.merge_external(&graph);
                ensure(merged.merge_conflicts().is_empty(), || format!("{:?}", merged.merge_conflicts()))?;
                let counts = merged.declared_counts();
                let got = (counts.classes, counts.object_properties, counts.data_properties);
                ensure(got == (51, 40, 7), || format!("declared counts {got:?}"))?;
                detail.push_str("; official file merges without conflict, 51/40/7 declared");
            }
            None => detail.push_str("; merge path skipped (set GUFO_TTL to run it)"),
        }
        Ok(detail)
    })();
    verdict(9, "vocabulary coverage", result);
}

#[test]
fn criterion_10_determinism() {
    let result = (|| {
        let run_once = || {
            Command::new(env!("CARGO_BIN_EXE_gufo-check"))
                .args(["--format", "json", "--stats"])
                .args(corpus_files())
                .output()
                .unwrap()
        };
        let (a, b) = (run_once(), run_once());
        ensure(a.status.code() == Some(0), || format!("exit {:?}", a.status.code()))?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "reports differ".into())?;
        Ok(format!("two runs, {} identical bytes", a.stdout.len()))
    })();
    verdict(10, "determinism", result);
}
