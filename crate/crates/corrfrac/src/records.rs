//! Line-delimited machine-readable records: one record per line,
//! `kind key=value ...`, values quoted when they contain spaces.
//! Deterministic (no timestamps), and exact: rationals print in canonical
//! reduced form and re-parse bit-for-bit.

use crate::cf::{CorrectionState, Layer};
use crate::error::{Error, Result};
use crate::guess::GuessReport;
use crate::rational::{format_rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record {
            kind: kind.to_string(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl Into<String>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn rat(self, key: &str, value: &Rat) -> Self {
        self.field(key, format_rat(value))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = self.kind.clone();
        for (k, v) in &self.fields {
            out.push(' ');
            out.push_str(k);
            out.push('=');
            if v.is_empty() || v.contains([' ', '"', '=']) {
                out.push('"');
                out.push_str(&v.replace('\\', "\\\\").replace('"', "\\\""));
                out.push('"');
            } else {
                out.push_str(v);
            }
        }
        out
    }
}

/// Parses one record line.
pub fn parse_record(line: &str) -> Result<Record> {
    let line = line.trim();
    if line.is_empty() {
        return Err(Error::Parse("empty record line".into()));
    }
    let mut chars = line.chars().peekable();
    let mut kind = String::new();
    while let Some(&ch) = chars.peek() {
        if ch.is_whitespace() {
            break;
        }
        kind.push(ch);
        chars.next();
    }
    if kind.is_empty() || kind.contains('=') {
        return Err(Error::Parse(format!("bad record kind in `{line}`")));
    }
    let mut rec = Record::new(&kind);
    loop {
        while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
            chars.next();
        }
        if chars.peek().is_none() {
            break;
        }
        let mut key = String::new();
        loop {
            match chars.next() {
                Some('=') => break,
                Some(c) if c.is_whitespace() => {
                    return Err(Error::Parse(format!("space in record key near `{key}`")))
                }
                Some(c) => key.push(c),
                None => return Err(Error::Parse(format!("record key `{key}` has no value"))),
            }
        }
        if key.is_empty() {
            return Err(Error::Parse("empty record key".into()));
        }
        let mut value = String::new();
        if matches!(chars.peek(), Some('"')) {
            chars.next();
            loop {
                match chars.next() {
                    Some('\\') => match chars.next() {
                        Some(c) => value.push(c),
                        None => return Err(Error::Parse("dangling escape in record".into())),
                    },
                    Some('"') => break,
                    Some(c) => value.push(c),
                    None => return Err(Error::Parse("unterminated quote in record".into())),
                }
            }
        } else {
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                value.push(c);
                chars.next();
            }
        }
        rec.fields.push((key, value));
    }
    Ok(rec)
}

pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_record)
        .collect()
}

/// The record stream for a solved correction state.
pub fn state_records(state: &CorrectionState) -> Vec<Record> {
    let mut out = Vec::new();
    let coeffs: Vec<String> = state.phi0.coeffs().iter().map(format_rat).collect();
    out.push(
        Record::new("phi0")
            .field("spec", &state.label)
            .field("nu", state.nu.to_string())
            .field("coeffs", coeffs.join(",")),
    );
    for (k, layer) in state.layers.iter().enumerate() {
        let rec = Record::new("layer")
            .field("spec", &state.label)
            .field("k", k.to_string());
        let rec = match layer {
            Layer::TypeI { kappa, lambda } => rec
                .field("type", "I")
                .rat("kappa", kappa)
                .rat("lambda", lambda),
            Layer::TypeII { kappa, l1, l2 } => rec
                .field("type", "II")
                .rat("kappa", kappa)
                .rat("lambda1", l1)
                .rat("lambda2", l2),
        };
        out.push(rec);
    }
    if let Some(mc) = crate::cf::detect_mc_point(state) {
        out.push(
            Record::new("mcpoint")
                .field("spec", &state.label)
                .rat("omega", &mc.omega),
        );
    }
    if let Some(reason) = &state.stopped {
        out.push(
            Record::new("stop")
                .field("spec", &state.label)
                .field("reason", reason.to_string()),
        );
    }
    out
}

pub fn guess_records(label: &str, which: &str, report: &GuessReport) -> Vec<Record> {
    let seq: Vec<String> = report.sequence.iter().map(format_rat).collect();
    let mut rec = Record::new("guess")
        .field("spec", label)
        .field("seq", which)
        .field("terms", seq.join(","))
        .field("skip", report.skip.to_string())
        .rat("factor", &report.factor)
        .field("method", &report.method);
    rec = match &report.form {
        Some(f) => rec.field("form", f.to_string()),
        None => rec.field("form", "none"),
    };
    rec = rec
        .field("verified", report.verified.to_string())
        .field(
            "through",
            report
                .verified_through
                .map_or("none".to_string(), |v| v.to_string()),
        );
    vec![rec]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn roundtrip_simple() {
        let r = Record::new("layer")
            .field("spec", "brouncker")
            .field("k", "0")
            .rat("kappa", &rat(1, 32))
            .rat("lambda", &rat(1, 4));
        let line = r.render();
        assert_eq!(line, "layer spec=brouncker k=0 kappa=1/32 lambda=1/4");
        let back = parse_record(&line).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.get("kappa"), Some("1/32"));
    }

    #[test]
    fn roundtrip_quoted() {
        let r = Record::new("check")
            .field("point", "E0 lower x=6")
            .field("detail", "margin +1.2e-8 \"tight\"");
        let line = r.render();
        let back = parse_record(&line).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_record("").is_err());
        assert!(parse_record("kind key").is_err());
        assert!(parse_record("kind key=\"unterminated").is_err());
        assert!(parse_record("=x a=b").is_err());
    }
}
