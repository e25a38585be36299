#![allow(dead_code)]

pub mod gen;

use std::fs;
use std::path::{Path, PathBuf};

use gufo_check::inference::{compute_closures, ClosureOptions};
use gufo_check::rdf::{parse_turtle, parse_turtle_into, Graph, GraphBuilder, Term};
use gufo_check::rules::{check, Context, RuleConfig, RuleId, Severity, Violation};
use gufo_check::vocab::builtin_vocabulary;

pub fn fixture_dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(sub)
}

/// Sorted `.ttl` files of one fixture directory.
pub fn ttl_files(sub: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(fixture_dir(sub))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "ttl"))
        .collect();
    files.sort();
    files
}

pub fn corpus_files() -> Vec<PathBuf> {
    ttl_files("corpus")
}

pub fn corpus_file(label: &str) -> PathBuf {
    corpus_files()
        .into_iter()
        .find(|p| p.file_stem().unwrap().to_str().unwrap().ends_with(&format!("_{label}")))
        .unwrap_or_else(|| panic!("no corpus file {label}"))
}

pub fn load(path: &Path) -> Graph {
    let text = fs::read_to_string(path).unwrap();
    parse_turtle(&text, None).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn load_all(paths: &[PathBuf]) -> Graph {
    let mut builder = GraphBuilder::new();
    for path in paths {
        let text = fs::read_to_string(path).unwrap();
        parse_turtle_into(&mut builder, &text, None, &path.display().to_string())
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
    builder.build()
}

pub const EX: &str = "http://example.org/";
pub const GUFO: &str = "http://purl.org/nemo/gufo#";

pub fn rule_fixture(name: &str) -> PathBuf {
    fixture_dir("rules").join(format!("{name}.ttl"))
}

pub fn shape_file(name: &str) -> PathBuf {
    fixture_dir("shapes").join(format!("{name}.ttl"))
}

/// All findings on the merged `paths` under `cfg` and `options`.
pub fn check_with(paths: &[PathBuf], cfg: &RuleConfig, options: ClosureOptions) -> Vec<Violation> {
    let graph = load_all(paths);
    let vocab = builtin_vocabulary();
    let closures = compute_closures(&graph, &vocab, options);
    check(&Context::new(&graph, &vocab, &closures), cfg)
}

pub fn check_paths(paths: &[PathBuf]) -> Vec<Violation> {
    check_with(paths, &RuleConfig::default(), ClosureOptions::default())
}

pub fn check_fixture(name: &str) -> Vec<Violation> {
    check_paths(&[rule_fixture(name)])
}

pub fn of_rule(violations: &[Violation], rule: RuleId) -> Vec<&Violation> {
    violations.iter().filter(|v| v.rule == rule).collect()
}

pub fn errors(violations: &[Violation]) -> Vec<&Violation> {
    violations.iter().filter(|v| v.severity == Severity::Error).collect()
}

/// The `sh:message` literal of a shapes file.
pub fn shape_message(name: &str) -> String {
    let text = fs::read_to_string(shape_file(name)).unwrap();
    let re = regex::Regex::new(r#"sh:message "(.*)""#).unwrap();
    re.captures(&text).unwrap_or_else(|| panic!("no sh:message in {name}"))[1].to_owned()
}

pub fn ex(local: &str) -> Term {
    Term::iri(format!("{EX}{local}"))
}

/// A Turtle file that lives as long as the returned handle.
pub fn temp_ttl(text: &str) -> tempfile::TempPath {
    let mut file = tempfile::Builder::new().suffix(".ttl").tempfile().unwrap();
    std::io::Write::write_all(&mut file, text.as_bytes()).unwrap();
    file.into_temp_path()
}
