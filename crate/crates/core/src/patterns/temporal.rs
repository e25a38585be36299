//! Begin/end points and the L3 ordering lint.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use chrono::{DateTime, NaiveDate, Utc};
use thiserror::Error;

use crate::rdf::{ns, Term};
use crate::rules::{Context, RuleConfig, RuleId, Severity, Violation};
use crate::vocab::gufo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemporalKind {
    Date,
    DateTimeStamp,
}

impl TemporalKind {
    pub fn datatype(self) -> &'static str {
        match self {
            TemporalKind::Date => ns::XSD_DATE,
            TemporalKind::DateTimeStamp => ns::XSD_DATE_TIME_STAMP,
        }
    }

    fn name(self) -> &'static str {
        match self {
            TemporalKind::Date => "xsd:date",
            TemporalKind::DateTimeStamp => "xsd:dateTimeStamp",
        }
    }
}

/// A calendar date, or an instant normalized to UTC. Values of different
/// kinds are unordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemporalValue {
    Date(NaiveDate),
    DateTimeStamp(DateTime<Utc>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("'{lexical}' is not a valid {expected}")]
pub struct TemporalError {
    pub lexical: String,
    pub expected: &'static str,
}

impl TemporalValue {
    pub fn parse(kind: TemporalKind, lexical: &str) -> Result<Self, TemporalError> {
        let fail = || TemporalError { lexical: lexical.to_owned(), expected: kind.name() };
        match kind {
            TemporalKind::Date => parse_date(lexical).map(TemporalValue::Date).ok_or_else(fail),
            TemporalKind::DateTimeStamp => {
                // RFC 3339 also admits a space or 't' as separator; XSD does not.
                if !lexical.contains('T') || lexical.contains(' ') || lexical.ends_with('z') {
                    return Err(fail());
                }
                DateTime::parse_from_rfc3339(lexical)
                    .map(|dt| TemporalValue::DateTimeStamp(dt.with_timezone(&Utc)))
                    .map_err(|_| fail())
            }
        }
    }

    pub fn kind(&self) -> TemporalKind {
        match self {
            TemporalValue::Date(_) => TemporalKind::Date,
            TemporalValue::DateTimeStamp(_) => TemporalKind::DateTimeStamp,
        }
    }
}

impl PartialOrd for TemporalValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (TemporalValue::Date(a), TemporalValue::Date(b)) => Some(a.cmp(b)),
            (TemporalValue::DateTimeStamp(a), TemporalValue::DateTimeStamp(b)) => Some(a.cmp(b)),
            _ => None,
        }
    }
}

/// `-?YYYY-MM-DD` with an optional, ignored timezone.
fn parse_date(lexical: &str) -> Option<NaiveDate> {
    let body = strip_timezone(lexical)?;
    let (negative, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body),
    };
    let mut parts = body.split('-');
    let (y, m, d) = (parts.next()?, parts.next()?, parts.next()?);
    if parts.next().is_some() || y.len() < 4 || m.len() != 2 || d.len() != 2 {
        return None;
    }
    if ![y, m, d].iter().all(|p| p.bytes().all(|b| b.is_ascii_digit())) {
        return None;
    }
    if y.len() > 4 && y.starts_with('0') {
        return None;
    }
    let year: i32 = y.parse().ok()?;
    NaiveDate::from_ymd_opt(if negative { -year } else { year }, m.parse().ok()?, d.parse().ok()?)
}

fn strip_timezone(lexical: &str) -> Option<&str> {
    if let Some(body) = lexical.strip_suffix('Z') {
        return Some(body);
    }
    let n = lexical.len();
    if n > 6 && lexical.is_char_boundary(n - 6) {
        let tz = &lexical.as_bytes()[n - 6..];
        if matches!(tz[0], b'+' | b'-') && tz[3] == b':' {
            let digits = [tz[1], tz[2], tz[4], tz[5]];
            if !digits.iter().all(u8::is_ascii_digit) {
                return None;
            }
            let hours = (tz[1] - b'0') * 10 + (tz[2] - b'0');
            let minutes = (tz[4] - b'0') * 10 + (tz[5] - b'0');
            if hours > 14 || minutes > 59 || (hours == 14 && minutes > 0) {
                return None;
            }
            return Some(&lexical[..n - 6]);
        }
    }
    Some(lexical)
}

#[derive(Default)]
struct Points {
    begins: Vec<(TemporalValue, Term)>,
    ends: Vec<(TemporalValue, Term)>,
}

/// Compares begin and end points of the same granularity on each node.
pub fn l3_temporal_ordering(ctx: &Context, _cfg: &RuleConfig) -> Vec<Violation> {
    use TemporalKind::{Date, DateTimeStamp};
    let direct = [
        (gufo::HAS_BEGIN_POINT_IN_XSD_DATE, Date, true),
        (gufo::HAS_BEGIN_POINT_IN_XSD_DATE_TIME_STAMP, DateTimeStamp, true),
        (gufo::HAS_END_POINT_IN_XSD_DATE, Date, false),
        (gufo::HAS_END_POINT_IN_XSD_DATE_TIME_STAMP, DateTimeStamp, false),
    ];
    let via_instant = [(gufo::HAS_BEGIN_POINT, true), (gufo::HAS_END_POINT, false)];
    let instant_values = [(ns::TIME_IN_XSD_DATE, Date), (ns::TIME_IN_XSD_DATE_TIME_STAMP, DateTimeStamp)];

    // (subject, value term, kind, is_begin)
    let mut raw: Vec<(u32, Term, TemporalKind, bool)> = Vec::new();
    for (iri, kind, begin) in direct {
        let Some(p) = ctx.id(iri) else { continue };
        for &(s, o) in ctx.closures.effective(p) {
            raw.push((s, ctx.term(o).clone(), kind, begin));
        }
    }
    for (iri, begin) in via_instant {
        let Some(p) = ctx.id(iri) else { continue };
        for &(s, instant) in ctx.closures.effective(p) {
            for (value_iri, kind) in instant_values {
                for value in ctx.graph.objects(ctx.term(instant), &Term::iri(value_iri)) {
                    raw.push((s, value.clone(), kind, begin));
                }
            }
        }
    }
    raw.sort_by(|a, b| (a.0, &a.1, a.2, a.3).cmp(&(b.0, &b.1, b.2, b.3)));
    raw.dedup();

    let mut out = Vec::new();
    let mut points: BTreeMap<u32, Points> = BTreeMap::new();
    for (s, term, kind, begin) in raw {
        let parsed = match term.as_literal() {
            Some(lit) => TemporalValue::parse(kind, lit.lexical()).map_err(|e| e.to_string()),
            None => Err(format!("{} is not a literal", ctx.compact_term(&term))),
        };
        match parsed {
            Ok(value) => {
                let entry = points.entry(s).or_default();
                if begin {
                    entry.begins.push((value, term));
                } else {
                    entry.ends.push((value, term));
                }
            }
            Err(reason) => {
                let message = format!("Unreadable time point on {}: {reason}.", ctx.compact(s));
                out.push(Violation::new(RuleId::L3, Severity::Error, ctx.term(s).clone(), message).with_secondary(vec![term]));
            }
        }
    }

    let lexical = |t: &Term| t.as_literal().map(|l| l.lexical().to_owned()).unwrap_or_default();
    for (s, p) in points {
        let mut mixed = false;
        for (b, bt) in &p.begins {
            for (e, et) in &p.ends {
                match b.partial_cmp(e) {
                    None => mixed = true,
                    Some(Ordering::Greater) => {
                        let message = format!(
                            "{} ends before it begins: begin {} is later than end {}.",
                            ctx.compact(s),
                            lexical(bt),
                            lexical(et)
                        );
                        out.push(
                            Violation::new(RuleId::L3, Severity::Error, ctx.term(s).clone(), message)
                                .with_secondary(vec![bt.clone(), et.clone()]),
                        );
                    }
                    Some(_) => {}
                }
            }
        }
        if mixed {
            let message = format!(
                "{} has begin and end points of different granularity; they were not compared.",
                ctx.compact(s)
            );
            out.push(Violation::new(RuleId::L3, Severity::Info, ctx.term(s).clone(), message));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(s: &str) -> TemporalValue {
        TemporalValue::parse(TemporalKind::Date, s).unwrap()
    }

    fn stamp(s: &str) -> TemporalValue {
        TemporalValue::parse(TemporalKind::DateTimeStamp, s).unwrap()
    }

    #[test]
    fn dates_parse_and_order() {
        assert!(date("2015-01-01") < date("2015-12-31"));
        assert_eq!(date("2001-12-12"), date("2001-12-12Z"));
        assert_eq!(date("2001-12-12+02:00"), date("2001-12-12"));
        assert!(TemporalValue::parse(TemporalKind::Date, "2001-13-01").is_err());
        assert!(TemporalValue::parse(TemporalKind::Date, "01-12-2001").is_err());
        assert!(TemporalValue::parse(TemporalKind::Date, "2001-12-12+15:00").is_err());
    }

    #[test]
    fn stamps_normalize_to_utc() {
        assert_eq!(stamp("1985-09-19T13:17:50Z"), stamp("1985-09-19T15:17:50+02:00"));
        assert!(TemporalValue::parse(TemporalKind::DateTimeStamp, "1985-09-19T13:17:50").is_err());
        assert!(TemporalValue::parse(TemporalKind::DateTimeStamp, "1985-09-19 13:17:50Z").is_err());
    }

    #[test]
    fn kinds_are_unordered() {
        assert_eq!(date("2001-01-01").partial_cmp(&stamp("2001-01-01T00:00:00Z")), None);
    }
}
