//! JSON instance documents and map tables.
//!
//! Parsing never normalizes: a value that is not already canonical is an
//! error carrying a machine-readable code and a JSON path.

use std::fmt;

use serde_json::{json, Map, Value};

use crate::circle::{CirclePoint, Chord, Sign, Status};
use crate::instance::{validate, LamInstance, Mode, Violation};
use crate::plane::{MapError, MapTable};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub code: &'static str,
    pub path: String,
    pub message: String,
}

impl ParseError {
    fn new(code: &'static str, path: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError { code, path: path.into(), message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "code": self.code, "path": self.path, "message": self.message })
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}: {}", self.code, self.message)
        } else {
            write!(f, "{} at {}: {}", self.code, self.path, self.message)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub instance: LamInstance,
    pub metadata: Map<String, Value>,
}

pub fn parse_point(s: &str, path: &str) -> Result<CirclePoint, ParseError> {
    CirclePoint::parse(s).map_err(|e| {
        let message = match e.code() {
            "non-lowest-terms" => format!("non-lowest-terms rational `{s}`"),
            _ => e.to_string(),
        };
        ParseError::new(e.code(), path, message)
    })
}

fn field<'v>(obj: &'v Map<String, Value>, key: &str, path: &str, errs: &mut Vec<ParseError>) -> Option<&'v Value> {
    let v = obj.get(key);
    if v.is_none() {
        errs.push(ParseError::new("missing-field", format!("{path}.{key}"), format!("missing `{key}`")));
    }
    v
}

fn string<'v>(v: &'v Value, path: &str, errs: &mut Vec<ParseError>) -> Option<&'v str> {
    let s = v.as_str();
    if s.is_none() {
        errs.push(ParseError::new("wrong-type", path, "expected a string"));
    }
    s
}

fn parse_chord(v: &Value, path: &str, errs: &mut Vec<ParseError>) -> Option<Chord> {
    let Some(obj) = v.as_object() else {
        errs.push(ParseError::new("wrong-type", path, "expected an object"));
        return None;
    };
    let before = errs.len();
    let sign = field(obj, "sign", path, errs).and_then(|v| string(v, &format!("{path}.sign"), errs)).and_then(
        |s| match s {
            "+" => Some(Sign::Plus),
            "-" => Some(Sign::Minus),
            _ => {
                errs.push(ParseError::new("bad-sign", format!("{path}.sign"), format!("sign must be \"+\" or \"-\", got `{s}`")));
                None
            }
        },
    );
    let point = |key: &str, errs: &mut Vec<ParseError>| {
        let p = format!("{path}.{key}");
        field(obj, key, path, errs)
            .and_then(|v| string(v, &p, errs))
            .and_then(|s| parse_point(s, &p).map_err(|e| errs.push(e)).ok())
    };
    let a = point("a", errs);
    let b = point("b", errs);
    let status = match obj.get("status") {
        None => Some(Status::Leaf),
        Some(v) => string(v, &format!("{path}.status"), errs).and_then(|s| match s {
            "leaf" => Some(Status::Leaf),
            "phantom" => Some(Status::Phantom),
            _ => {
                errs.push(ParseError::new("bad-status", format!("{path}.status"), format!("unknown status `{s}`")));
                None
            }
        }),
    };
    let acc = match obj.get("acc") {
        None => Some([false, false]),
        Some(Value::Array(items)) if items.len() == 2 && items.iter().all(Value::is_boolean) => {
            Some([items[0].as_bool().unwrap_or(false), items[1].as_bool().unwrap_or(false)])
        }
        Some(_) => {
            errs.push(ParseError::new("wrong-type", format!("{path}.acc"), "acc must be two booleans"));
            None
        }
    };
    if errs.len() > before {
        return None;
    }
    let (a, b, sign, status, acc) = (a?, b?, sign?, status?, acc?);
    if a >= b {
        if a == b {
            errs.push(ParseError::new("degenerate-chord", path.to_string(), format!("both endpoints are {a}")));
        } else {
            errs.push(ParseError::new("unordered-endpoints", path.to_string(), "a must be smaller than b"));
        }
        return None;
    }
    Chord::new(a, b, sign, status, acc).ok()
}

/// Parses and validates a document.
pub fn parse_document(bytes: &[u8]) -> Result<Document, Vec<ParseError>> {
    let root: Value = serde_json::from_slice(bytes)
        .map_err(|e| vec![ParseError::new("invalid-json", "", e.to_string())])?;
    let Some(obj) = root.as_object() else {
        return Err(vec![ParseError::new("wrong-type", "", "document must be an object")]);
    };
    let mut errs = Vec::new();
    if let Some(v) = field(obj, "version", "", &mut errs).and_then(|v| string(v, "version", &mut errs)) {
        if v != FORMAT_VERSION {
            errs.push(ParseError::new("unsupported-version", "version", format!("unsupported version `{v}`")));
        }
    }
    let mode = match obj.get("mode") {
        None => Mode::Frontier,
        Some(v) => match string(v, "mode", &mut errs).map(|s| (s, Mode::parse(s))) {
            Some((_, Some(m))) => m,
            Some((s, None)) => {
                errs.push(ParseError::new("bad-mode", "mode", format!("unknown mode `{s}`")));
                Mode::Frontier
            }
            None => Mode::Frontier,
        },
    };
    let metadata = match obj.get("metadata") {
        None => Map::new(),
        Some(Value::Object(m)) => m.clone(),
        Some(_) => {
            errs.push(ParseError::new("wrong-type", "metadata", "metadata must be an object"));
            Map::new()
        }
    };
    let mut chords = Vec::new();
    match field(obj, "chords", "", &mut errs) {
        Some(Value::Array(items)) => {
            for (i, item) in items.iter().enumerate() {
                if let Some(c) = parse_chord(item, &format!("chords[{i}]"), &mut errs) {
                    chords.push((i, c));
                }
            }
        }
        Some(_) => errs.push(ParseError::new("wrong-type", "chords", "chords must be an array")),
        None => {}
    }
    for e in errs.iter_mut().filter(|e| e.path.starts_with('.')) {
        e.path.remove(0);
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    let instance = LamInstance::new(mode, chords.iter().map(|(_, c)| c.clone()));
    let report = validate(&instance);
    if !report.is_empty() {
        // Point validation errors back at document positions.
        // Duplicates resolve to their last listing, everything else to the first.
        let position_at = |id: crate::instance::ChordId, last: bool| {
            let c = instance.chord(id);
            let mut hits = chords.iter().filter(|(_, d)| d.sign == c.sign && d.a == c.a && d.b == c.b);
            let hit = if last { hits.last() } else { hits.next() };
            hit.map_or(String::new(), |(i, _)| format!("chords[{i}]"))
        };
        let position = |id| position_at(id, false);
        return Err(report
            .violations
            .iter()
            .map(|v| {
                let at = match v {
                    Violation::SameSignCrossing { second, .. } => position(*second),
                    Violation::DuplicateChord { second, .. } => position_at(*second, true),
                    Violation::Transversality { minus, .. } => position(*minus),
                    Violation::PhantomUnaccumulated { chord } => position(*chord),
                };
                ParseError::new(v.code(), at, v.describe(&instance))
            })
            .collect());
    }
    Ok(Document { instance, metadata })
}

pub fn chord_to_json(c: &Chord) -> Value {
    json!({
        "sign": c.sign.symbol(),
        "a": c.a.to_string(),
        "b": c.b.to_string(),
        "status": c.status.name(),
        "acc": [c.acc[0], c.acc[1]],
    })
}

pub fn document_to_json(inst: &LamInstance, metadata: &Map<String, Value>) -> Value {
    json!({
        "version": FORMAT_VERSION,
        "mode": inst.mode.name(),
        "chords": inst.chords().map(chord_to_json).collect::<Vec<_>>(),
        "metadata": metadata,
    })
}

/// Pretty-printed document text with a trailing newline.
pub fn serialize_document(inst: &LamInstance, metadata: &Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&document_to_json(inst, metadata)).expect("json");
    s.push('\n');
    s
}

/// Parses a map table: a JSON array of `{"from": "p/q", "to": "p/q"}`.
pub fn parse_map_table(bytes: &[u8]) -> Result<MapTable, Vec<ParseError>> {
    let root: Value = serde_json::from_slice(bytes)
        .map_err(|e| vec![ParseError::new("invalid-json", "", e.to_string())])?;
    let Some(items) = root.as_array() else {
        return Err(vec![ParseError::new("wrong-type", "", "map table must be an array")]);
    };
    let mut errs = Vec::new();
    let mut pairs = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let path = format!("[{i}]");
        let Some(obj) = item.as_object() else {
            errs.push(ParseError::new("wrong-type", path, "expected an object"));
            continue;
        };
        let get = |key: &str, errs: &mut Vec<ParseError>| {
            let p = format!("{path}.{key}");
            field(obj, key, &path, errs)
                .and_then(|v| string(v, &p, errs))
                .and_then(|s| parse_point(s, &p).map_err(|e| errs.push(e)).ok())
        };
        if let (Some(f), Some(t)) = (get("from", &mut errs), get("to", &mut errs)) {
            pairs.push((f, t));
        }
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    MapTable::new(pairs).map_err(|e| {
        let code = match e {
            MapError::DuplicateSource(_) => "duplicate-source",
            MapError::NotInjective(_) => "not-injective",
            MapError::NotMonotone => "not-monotone",
            MapError::Undefined(_) => "undefined-point",
            MapError::Invalid(_) => "invalid-image",
        };
        vec![ParseError::new(code, "", e.to_string())]
    })
}

pub fn map_table_to_json(map: &MapTable) -> Value {
    Value::Array(
        map.pairs()
            .map(|(f, t)| json!({ "from": f.to_string(), "to": t.to_string() }))
            .collect(),
    )
}
