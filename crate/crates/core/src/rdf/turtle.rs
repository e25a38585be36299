//! Recursive-descent parser for the Turtle subset used by gUFO models.
//!
//! Supported: `@prefix`/`@base` and their SPARQL-style spellings, IRIs,
//! prefixed names, blank node labels, `a`, predicate-object and object
//! lists, `[ ... ]`, collections, string/numeric/boolean literals and
//! comments. Quoted triples and graph blocks are rejected.

use std::collections::HashMap;

use thiserror::Error;
use url::Url;

use super::graph::{Graph, GraphBuilder, SourceLocation};
use super::term::{ns, Literal, Term, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Syntax { expected: &'static str, found: String },
    #[error("undefined prefix '{0}:'")]
    UndefinedPrefix(String),
    #[error("unterminated string literal")]
    UnterminatedLiteral,
    #[error("unterminated IRI")]
    UnterminatedIri,
    #[error("invalid IRI <{0}>")]
    InvalidIri(String),
    #[error("relative IRI <{0}> with no base")]
    RelativeIri(String),
    #[error("invalid escape sequence '{0}'")]
    InvalidEscape(String),
    #[error("unsupported Turtle feature: {0}")]
    Unsupported(&'static str),
}

/// Parses one document into a fresh graph.
pub fn parse_turtle(text: &str, base: Option<&str>) -> Result<Graph, ParseError> {
    let mut builder = GraphBuilder::new();
    parse_turtle_into(&mut builder, text, base, "<input>")?;
    Ok(builder.build())
}

/// Parses one document into `builder`, recording `source_name` for triple
/// locations. Blank node labels are scoped to this document. Returns the
/// number of triples the document asserts (duplicates included).
pub fn parse_turtle_into(
    builder: &mut GraphBuilder,
    text: &str,
    base: Option<&str>,
    source_name: &str,
) -> Result<usize, ParseError> {
    let source = builder.add_source(source_name);
    let mut parser = Parser {
        text,
        pos: 0,
        line: 1,
        line_start: 0,
        base: base.map(str::to_owned),
        prefixes: HashMap::new(),
        blanks: HashMap::new(),
        builder,
        source,
        emitted: 0,
    };
    parser.document()?;
    Ok(parser.emitted)
}

struct Parser<'a, 'b> {
    text: &'a str,
    pos: usize,
    line: usize,
    line_start: usize,
    base: Option<String>,
    prefixes: HashMap<String, String>,
    blanks: HashMap<String, Term>,
    builder: &'b mut GraphBuilder,
    source: u32,
    emitted: usize,
}

fn is_pn_chars_base(c: char) -> bool {
    c.is_alphabetic() || (c as u32 >= 0xC0 && !c.is_whitespace() && !c.is_control())
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c) || c == '-' || c.is_ascii_digit() || c == '\u{B7}'
}

const LOCAL_ESCAPABLE: &str = "_~.-!$&'()*+,;=/?#@%";

fn is_absolute_iri(iri: &str) -> bool {
    let mut chars = iri.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    for c in chars {
        if c == ':' {
            return true;
        }
        if !(c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
            return false;
        }
    }
    false
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.text[self.pos..].chars().nth(n)
    }

    fn starts_with(&self, s: &str) -> bool {
        self.text[self.pos..].starts_with(s)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.line_start = self.pos;
        }
        Some(c)
    }

    fn column(&self) -> usize {
        self.text[self.line_start..self.pos].chars().count() + 1
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.column(), kind }
    }

    fn found(&self) -> String {
        let rest = &self.text[self.pos..];
        if rest.is_empty() {
            return "end of input".to_owned();
        }
        let token: String = rest
            .chars()
            .take_while(|c| !c.is_whitespace())
            .take(24)
            .collect();
        format!("'{token}'")
    }

    fn syntax(&self, expected: &'static str) -> ParseError {
        self.error(ParseErrorKind::Syntax { expected, found: self.found() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(expected))
        }
    }

    fn emit(&mut self, subject: Term, predicate: Term, object: Term, line: usize) {
        let location = SourceLocation { source: self.source, line: line as u32 };
        self.builder.insert(Triple { subject, predicate, object }, Some(location));
        self.emitted += 1;
    }

    fn document(&mut self) -> Result<(), ParseError> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some('@') {
            let at = (self.line, self.column());
            self.bump();
            let word = self.bare_word();
            match word.as_str() {
                "prefix" => self.prefix_decl()?,
                "base" => self.base_decl()?,
                _ => {
                    return Err(ParseError {
                        line: at.0,
                        column: at.1,
                        kind: ParseErrorKind::Syntax { expected: "@prefix or @base", found: format!("'@{word}'") },
                    })
                }
            }
            return self.expect('.', "'.' after directive");
        }
        if self.keyword_ahead("PREFIX") {
            self.pos += "PREFIX".len();
            return self.prefix_decl();
        }
        if self.keyword_ahead("BASE") {
            self.pos += "BASE".len();
            return self.base_decl();
        }
        self.triples()?;
        self.expect('.', "'.' at end of statement")
    }

    /// Case-insensitive SPARQL-style directive keyword followed by a space.
    fn keyword_ahead(&self, kw: &str) -> bool {
        let rest = &self.text[self.pos..];
        rest.len() > kw.len()
            && rest.is_char_boundary(kw.len())
            && rest[..kw.len()].eq_ignore_ascii_case(kw)
            && rest[kw.len()..].starts_with(|c: char| c.is_whitespace())
    }

    fn bare_word(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
            self.bump();
        }
        self.text[start..self.pos].to_owned()
    }

    fn prefix_decl(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if is_pn_chars(c) || c == '.') {
            self.bump();
        }
        let prefix = self.text[start..self.pos].to_owned();
        if self.peek() != Some(':') || prefix.ends_with('.') {
            return Err(self.syntax("prefix name ending in ':'"));
        }
        self.bump();
        self.skip_ws();
        if self.peek() != Some('<') {
            return Err(self.syntax("namespace IRI"));
        }
        let namespace = self.iriref()?;
        self.builder.declare_prefix(&prefix, &namespace);
        self.prefixes.insert(prefix, namespace);
        Ok(())
    }

    fn base_decl(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() != Some('<') {
            return Err(self.syntax("base IRI"));
        }
        let base = self.iriref()?;
        self.base = Some(base);
        Ok(())
    }

    fn triples(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                let subject = self.blank_node_property_list()?;
                self.skip_ws();
                if self.peek() != Some('.') {
                    self.predicate_object_list(&subject)?;
                }
                Ok(())
            }
            _ => {
                let subject = self.subject()?;
                self.predicate_object_list(&subject)
            }
        }
    }

    fn subject(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('<') if self.peek_at(1) == Some('<') => Err(self.error(ParseErrorKind::Unsupported("quoted triples"))),
            Some('{') => Err(self.error(ParseErrorKind::Unsupported("graph blocks"))),
            Some('<') => Ok(Term::Iri(self.iriref()?.into())),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label(),
            Some('(') => self.collection(),
            Some(c) if c == ':' || is_pn_chars_base(c) => {
                let save = (self.pos, self.line, self.line_start);
                match self.name_or_keyword()? {
                    Name::Iri(iri) => Ok(Term::Iri(iri.into())),
                    Name::Keyword(_) => {
                        (self.pos, self.line, self.line_start) = save;
                        Err(self.syntax("subject"))
                    }
                }
            }
            _ => Err(self.syntax("subject")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), ParseError> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> Result<(), ParseError> {
        loop {
            self.skip_ws();
            let line = self.line;
            let object = self.object()?;
            self.emit(subject.clone(), predicate.clone(), object, line);
            self.skip_ws();
            if self.peek() == Some(',') {
                self.bump();
            } else {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?.into())),
            Some(c) if c == ':' || is_pn_chars_base(c) => {
                let save = (self.pos, self.line, self.line_start);
                match self.name_or_keyword()? {
                    Name::Iri(iri) => Ok(Term::Iri(iri.into())),
                    Name::Keyword(kw) if kw == "a" => Ok(Term::iri(ns::RDF_TYPE)),
                    Name::Keyword(_) => {
                        (self.pos, self.line, self.line_start) = save;
                        Err(self.syntax("predicate"))
                    }
                }
            }
            _ => Err(self.syntax("predicate")),
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('<') if self.peek_at(1) == Some('<') => Err(self.error(ParseErrorKind::Unsupported("quoted triples"))),
            Some('{') => Err(self.error(ParseErrorKind::Unsupported("graph blocks"))),
            Some('<') => Ok(Term::Iri(self.iriref()?.into())),
            Some('_') if self.peek_at(1) == Some(':') => self.blank_label(),
            Some('[') => self.blank_node_property_list(),
            Some('(') => self.collection(),
            Some('"') | Some('\'') => self.rdf_literal(),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => self.numeric(),
            Some(c) if c == ':' || is_pn_chars_base(c) => {
                let save = (self.pos, self.line, self.line_start);
                match self.name_or_keyword()? {
                    Name::Iri(iri) => Ok(Term::Iri(iri.into())),
                    Name::Keyword(kw) if kw == "true" || kw == "false" => {
                        Ok(Term::Literal(Literal::typed(kw, ns::XSD_BOOLEAN)))
                    }
                    Name::Keyword(_) => {
                        (self.pos, self.line, self.line_start) = save;
                        Err(self.syntax("object"))
                    }
                }
            }
            _ => Err(self.syntax("object")),
        }
    }

    fn blank_node_property_list(&mut self) -> Result<Term, ParseError> {
        self.bump(); // '['
        let node = self.builder.fresh_blank();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(node);
        }
        self.predicate_object_list(&node)?;
        self.expect(']', "']'")?;
        Ok(node)
    }

    fn collection(&mut self) -> Result<Term, ParseError> {
        self.bump(); // '('
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    break;
                }
                None => return Err(self.syntax("')'")),
                _ => {
                    let line = self.line;
                    items.push((self.object()?, line));
                }
            }
        }
        let mut head = Term::iri(ns::RDF_NIL);
        for (item, line) in items.into_iter().rev() {
            let node = self.builder.fresh_blank();
            self.emit(node.clone(), Term::iri(ns::RDF_FIRST), item, line);
            self.emit(node.clone(), Term::iri(ns::RDF_REST), head, line);
            head = node;
        }
        Ok(head)
    }

    fn blank_label(&mut self) -> Result<Term, ParseError> {
        self.bump();
        self.bump(); // "_:"
        let start = self.pos;
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                self.bump();
            }
            _ => return Err(self.syntax("blank node label")),
        }
        while let Some(c) = self.peek() {
            // A dot belongs to the label only when more label follows.
            if is_pn_chars(c) || (c == '.' && matches!(self.peek_at(1), Some(n) if is_pn_chars(n) || n == '.')) {
                self.bump();
            } else {
                break;
            }
        }
        let label = self.text[start..self.pos].to_owned();
        if let Some(term) = self.blanks.get(&label) {
            return Ok(term.clone());
        }
        let term = self.builder.fresh_blank();
        self.blanks.insert(label, term.clone());
        Ok(term)
    }

    fn iriref(&mut self) -> Result<String, ParseError> {
        let (line, column) = (self.line, self.column());
        self.bump(); // '<'
        let mut iri = String::new();
        loop {
            match self.peek() {
                None | Some('\n') => {
                    return Err(ParseError { line, column, kind: ParseErrorKind::UnterminatedIri })
                }
                Some('>') => {
                    self.bump();
                    break;
                }
                Some('\\') => {
                    self.bump();
                    let c = self.unicode_escape()?;
                    iri.push(c);
                }
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error(ParseErrorKind::InvalidIri(iri)));
                }
                Some(c) => {
                    self.bump();
                    iri.push(c);
                }
            }
        }
        self.resolve(iri, line, column)
    }

    fn resolve(&self, iri: String, line: usize, column: usize) -> Result<String, ParseError> {
        if is_absolute_iri(&iri) {
            return Ok(iri);
        }
        let fail = |kind| ParseError { line, column, kind };
        let Some(base) = &self.base else {
            return Err(fail(ParseErrorKind::RelativeIri(iri)));
        };
        let base = Url::parse(base).map_err(|_| fail(ParseErrorKind::InvalidIri(base.clone())))?;
        let joined = base.join(&iri).map_err(|_| fail(ParseErrorKind::InvalidIri(iri.clone())))?;
        Ok(joined.into())
    }

    /// After a backslash: `uXXXX` or `UXXXXXXXX`.
    fn unicode_escape(&mut self) -> Result<char, ParseError> {
        let width = match self.peek() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error(ParseErrorKind::InvalidEscape(format!("\\{}", self.peek().unwrap_or(' '))))),
        };
        self.bump();
        let start = self.pos;
        for _ in 0..width {
            match self.peek() {
                Some(c) if c.is_ascii_hexdigit() => {
                    self.bump();
                }
                _ => return Err(self.error(ParseErrorKind::InvalidEscape(self.text[start - 2..self.pos].to_owned()))),
            }
        }
        let hex = &self.text[start..self.pos];
        u32::from_str_radix(hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.error(ParseErrorKind::InvalidEscape(format!("\\u{hex}"))))
    }

    fn name_or_keyword(&mut self) -> Result<Name, ParseError> {
        let (line, column) = (self.line, self.column());
        let start = self.pos;
        while matches!(self.peek(), Some(c) if is_pn_chars(c) || c == '.') {
            self.bump();
        }
        let mut prefix_end = self.pos;
        // Dots may not end a name; give them back.
        while prefix_end > start && self.text[..prefix_end].ends_with('.') {
            prefix_end -= 1;
        }
        if self.peek() != Some(':') || prefix_end != self.pos {
            self.pos = prefix_end;
            return Ok(Name::Keyword(self.text[start..prefix_end].to_owned()));
        }
        let prefix = self.text[start..self.pos].to_owned();
        self.bump(); // ':'
        let local = self.local_name()?;
        let Some(namespace) = self.prefixes.get(&prefix) else {
            return Err(ParseError { line, column, kind: ParseErrorKind::UndefinedPrefix(prefix) });
        };
        Ok(Name::Iri(format!("{namespace}{local}")))
    }

    fn local_name(&mut self) -> Result<String, ParseError> {
        let mut local = String::new();
        // Byte length of `local` at the last point it could legally end.
        let mut committed = (0usize, self.pos, self.line, self.line_start);
        let mut first = true;
        loop {
            match self.peek() {
                Some(c) if is_pn_chars(c) || c == ':' => {
                    if first && c == '-' {
                        break;
                    }
                    self.bump();
                    local.push(c);
                }
                Some('.') if !first => {
                    self.bump();
                    local.push('.');
                    first = false;
                    continue;
                }
                Some('%') => {
                    let hex: String = self.text[self.pos + 1..].chars().take(2).collect();
                    if hex.len() != 2 || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                        return Err(self.error(ParseErrorKind::InvalidEscape(format!("%{hex}"))));
                    }
                    self.bump();
                    self.bump();
                    self.bump();
                    local.push('%');
                    local.push_str(&hex);
                }
                Some('\\') => match self.peek_at(1) {
                    Some(c) if LOCAL_ESCAPABLE.contains(c) => {
                        self.bump();
                        self.bump();
                        local.push(c);
                    }
                    other => {
                        return Err(self.error(ParseErrorKind::InvalidEscape(format!("\\{}", other.unwrap_or(' ')))));
                    }
                },
                _ => break,
            }
            first = false;
            committed = (local.len(), self.pos, self.line, self.line_start);
        }
        local.truncate(committed.0);
        (_, self.pos, self.line, self.line_start) = committed;
        Ok(local)
    }

    fn rdf_literal(&mut self) -> Result<Term, ParseError> {
        let lexical = self.string()?;
        match self.peek() {
            Some('@') => {
                self.bump();
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                    self.bump();
                }
                let tag = &self.text[start..self.pos];
                if tag.is_empty() || !tag.starts_with(|c: char| c.is_ascii_alphabetic()) || tag.ends_with('-') {
                    return Err(self.syntax("language tag"));
                }
                Ok(Term::Literal(Literal::lang_tagged(lexical, tag)))
            }
            Some('^') if self.starts_with("^^") => {
                self.bump();
                self.bump();
                let datatype = match self.peek() {
                    Some('<') => self.iriref()?,
                    Some(c) if c == ':' || is_pn_chars_base(c) => match self.name_or_keyword()? {
                        Name::Iri(iri) => iri,
                        Name::Keyword(_) => return Err(self.syntax("datatype IRI")),
                    },
                    _ => return Err(self.syntax("datatype IRI")),
                };
                Ok(Term::Literal(Literal::typed(lexical, datatype)))
            }
            _ => Ok(Term::Literal(Literal::simple(lexical))),
        }
    }

    fn string(&mut self) -> Result<String, ParseError> {
        let (line, column) = (self.line, self.column());
        let quote = self.bump().expect("caller saw a quote");
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        }
        let unterminated = ParseError { line, column, kind: ParseErrorKind::UnterminatedLiteral };
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return Err(unterminated),
                Some('\n') | Some('\r') if !long => return Err(unterminated),
                Some(c) if c == quote => {
                    if !long {
                        self.bump();
                        return Ok(out);
                    }
                    if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                        // Quotes right before the closing delimiter belong to the body.
                        while self.peek_at(3) == Some(quote) {
                            self.bump();
                            out.push(quote);
                        }
                        self.bump();
                        self.bump();
                        self.bump();
                        return Ok(out);
                    }
                    self.bump();
                    out.push(c);
                }
                Some('\\') => {
                    self.bump();
                    let c = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') | Some('U') => {
                            out.push(self.unicode_escape()?);
                            continue;
                        }
                        other => {
                            return Err(self.error(ParseErrorKind::InvalidEscape(format!("\\{}", other.unwrap_or(' ')))))
                        }
                    };
                    self.bump();
                    out.push(c);
                }
                Some(c) => {
                    self.bump();
                    out.push(c);
                }
            }
        }
    }

    fn numeric(&mut self) -> Result<Term, ParseError> {
        let start = self.pos;
        if matches!(self.peek(), Some('+') | Some('-')) {
            self.bump();
        }
        let digits = |p: &mut Self| {
            let s = p.pos;
            while matches!(p.peek(), Some(c) if c.is_ascii_digit()) {
                p.bump();
            }
            p.pos - s
        };
        let int_digits = digits(self);
        let mut datatype = ns::XSD_INTEGER;
        if self.peek() == Some('.') && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit()) {
            self.bump();
            digits(self);
            datatype = ns::XSD_DECIMAL;
        } else if int_digits == 0 {
            self.pos = start;
            return Err(self.syntax("object"));
        }
        if matches!(self.peek(), Some('e') | Some('E')) {
            let save = self.pos;
            self.bump();
            if matches!(self.peek(), Some('+') | Some('-')) {
                self.bump();
            }
            if digits(self) == 0 {
                self.pos = save;
                return Err(self.syntax("exponent digits"));
            }
            datatype = ns::XSD_DOUBLE;
        }
        let lexical = &self.text[start..self.pos];
        Ok(Term::Literal(Literal::typed(lexical, datatype)))
    }
}

enum Name {
    Iri(String),
    Keyword(String),
}
