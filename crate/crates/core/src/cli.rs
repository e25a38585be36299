//! Argument handling and the end-to-end run: load, close, check, report.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::inference::{compute_closures, ClosureOptions};
use crate::rdf::{parse_turtle, parse_turtle_into, GraphBuilder, ParseError, PrefixMap};
use crate::report::{emit_human, emit_json, FileSummary, Report, Stats};
use crate::rules::{check, Context, RuleConfig, RuleId, Severity};
use crate::vocab::builtin_vocabulary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FailOn {
    Error,
    Warning,
    Never,
}

/// Validate gUFO-based Turtle knowledge graphs.
#[derive(Debug, Parser)]
#[command(name = "gufo-check", version, about)]
pub struct Args {
    /// Turtle files, merged into one graph.
    #[arg(required = true, value_name = "FILE")]
    pub inputs: Vec<PathBuf>,

    /// Official gUFO Turtle file to merge into the built-in vocabulary.
    #[arg(long, value_name = "FILE")]
    pub gufo: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,

    /// Lowest severity that makes the exit code 1.
    #[arg(long, value_enum, default_value = "error")]
    pub fail_on: FailOn,

    /// Run only these rules (comma-separated ids such as R1,L3).
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    pub enable: Vec<RuleId>,

    /// Skip these rules.
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    pub disable: Vec<RuleId>,

    /// Follow only asserted one-hop rdfs:subClassOf edges in R1 to R6.
    #[arg(long)]
    pub direct_subclass_only: bool,

    /// Type subjects and objects from gUFO property domains and ranges.
    #[arg(long)]
    pub infer_domains: bool,

    /// Treat untyped superclasses as supplying no identity in R3.
    #[arg(long)]
    pub closed_world: bool,

    /// Append graph statistics to the report.
    #[arg(long)]
    pub stats: bool,

    /// Base IRI for relative references (default: each file's URL).
    #[arg(long, value_name = "IRI")]
    pub base: Option<String>,

    /// Override a rule's severity, e.g. R3=warning. Repeatable.
    #[arg(long = "severity", value_name = "ID=LEVEL", value_parser = parse_override)]
    pub severity: Vec<(RuleId, Severity)>,
}

fn parse_override(s: &str) -> Result<(RuleId, Severity), String> {
    let (id, level) = s.split_once('=').ok_or_else(|| format!("expected ID=LEVEL, got '{s}'"))?;
    let id = id.trim().parse::<RuleId>().map_err(|e| e.to_string())?;
    let level = level.trim().parse::<Severity>().map_err(|e| e.to_string())?;
    Ok((id, level))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub gufo_path: Option<PathBuf>,
    pub format: Format,
    pub fail_on: FailOn,
    /// Empty means every rule.
    pub enabled: Vec<RuleId>,
    pub disabled: Vec<RuleId>,
    pub direct_subclass_only: bool,
    pub infer_domains: bool,
    pub closed_world: bool,
    pub stats: bool,
    pub base: Option<String>,
    pub severity: BTreeMap<RuleId, Severity>,
}

impl RunConfig {
    pub fn new(inputs: impl IntoIterator<Item = impl Into<PathBuf>>) -> Self {
        RunConfig {
            inputs: inputs.into_iter().map(Into::into).collect(),
            gufo_path: None,
            format: Format::Human,
            fail_on: FailOn::Error,
            enabled: Vec::new(),
            disabled: Vec::new(),
            direct_subclass_only: false,
            infer_domains: false,
            closed_world: false,
            stats: false,
            base: None,
            severity: BTreeMap::new(),
        }
    }

    pub fn rule_config(&self) -> RuleConfig {
        let mut cfg = if self.enabled.is_empty() {
            RuleConfig::default()
        } else {
            RuleConfig::only(self.enabled.iter().copied())
        };
        for id in &self.disabled {
            cfg.enabled.remove(id);
        }
        cfg.severity = self.severity.clone();
        cfg.direct_subclass_only = self.direct_subclass_only;
        cfg.closed_world = self.closed_world;
        cfg
    }
}

impl From<Args> for RunConfig {
    fn from(a: Args) -> Self {
        RunConfig {
            inputs: a.inputs,
            gufo_path: a.gufo,
            format: a.format,
            fail_on: a.fail_on,
            enabled: a.enable,
            disabled: a.disable,
            direct_subclass_only: a.direct_subclass_only,
            infer_domains: a.infer_domains,
            closed_world: a.closed_world,
            stats: a.stats,
            base: a.base,
            severity: a.severity.into_iter().collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: Report,
    pub exit_code: i32,
    pub prefixes: PrefixMap,
}

impl RunOutput {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => emit_json(&self.report),
            Format::Human => emit_human(&self.report, &self.prefixes),
        }
    }
}

fn read(path: &Path) -> Result<String, RunError> {
    fs::read_to_string(path).map_err(|source| RunError::Io { path: path.display().to_string(), source })
}

fn file_base(path: &Path) -> Option<String> {
    let absolute = fs::canonicalize(path).ok()?;
    url::Url::from_file_path(absolute).ok().map(String::from)
}

pub fn run(config: &RunConfig) -> Result<RunOutput, RunError> {
    if config.inputs.is_empty() {
        return Err(RunError::Usage("no input files".into()));
    }
    let mut vocab = builtin_vocabulary();
    if let Some(path) = &config.gufo_path {
        let text = read(path)?;
        let base = config.base.clone().or_else(|| file_base(path));
        let graph = parse_turtle(&text, base.as_deref())
            .map_err(|source| RunError::Parse { path: path.display().to_string(), source })?;
        vocab = vocab.merge_external(&graph);
    }

    let mut builder = GraphBuilder::new();
    let mut files = Vec::new();
    for path in &config.inputs {
        let text = read(path)?;
        let name = path.display().to_string();
        let base = config.base.clone().or_else(|| file_base(path));
        let triples = parse_turtle_into(&mut builder, &text, base.as_deref(), &name)
            .map_err(|source| RunError::Parse { path: name.clone(), source })?;
        files.push(FileSummary { path: name, triples });
    }
    let graph = builder.build();

    let closures = compute_closures(&graph, &vocab, ClosureOptions { infer_domains: config.infer_domains });
    let ctx = Context::new(&graph, &vocab, &closures);
    let violations = check(&ctx, &config.rule_config());
    let stats = config.stats.then(|| Stats::collect(&ctx));
    let report = Report::new(files, &violations, stats);

    let exit_code = match config.fail_on {
        FailOn::Never => 0,
        FailOn::Error => i32::from(report.counts.at_least(Severity::Error) > 0),
        FailOn::Warning => i32::from(report.counts.at_least(Severity::Warning) > 0),
    };
    Ok(RunOutput { report, exit_code, prefixes: graph.prefixes().clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enable_and_disable_combine() {
        let mut c = RunConfig::new(["x.ttl"]);
        c.enabled = vec![RuleId::R1, RuleId::R2];
        c.disabled = vec![RuleId::R2];
        assert_eq!(c.rule_config().enabled.into_iter().collect::<Vec<_>>(), vec![RuleId::R1]);
    }

    #[test]
    fn unknown_rule_is_a_usage_error() {
        let err = Args::try_parse_from(["gufo-check", "--enable", "R99", "x.ttl"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = Args::try_parse_from(["gufo-check", "--severity", "R3=loud", "x.ttl"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn args_convert() {
        let args = Args::try_parse_from([
            "gufo-check", "--format", "json", "--fail-on", "never", "--enable", "r1,L3", "--severity", "R3=warning", "a.ttl",
        ])
        .unwrap();
        let c = RunConfig::from(args);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.fail_on, FailOn::Never);
        assert_eq!(c.enabled, vec![RuleId::R1, RuleId::L3]);
        assert_eq!(c.severity.get(&RuleId::R3), Some(&Severity::Warning));
    }
}
