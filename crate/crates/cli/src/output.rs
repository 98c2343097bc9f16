use raviolo::config::ConfigForm;
use raviolo::Error;
use serde_json::{json, Map, Value};

/// A finished computation: `ok` is false when a verification failed.
pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub payload: Map<String, Value>,
}

impl Outcome {
    pub fn new(ok: bool, text: String, payload: Value) -> Self {
        let Value::Object(payload) = payload else { panic!("payloads are objects") };
        Outcome { ok, text, payload }
    }

    pub fn document(&self, command: &str) -> Value {
        let mut doc = Map::new();
        doc.insert("command".into(), command.into());
        doc.insert("ok".into(), self.ok.into());
        doc.extend(self.payload.clone());
        Value::Object(doc)
    }
}

/// Rejected input. Syntax and semantic errors keep separate codes.
#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Range(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    pub fn code(&self) -> &'static str {
        match self {
            Failure::Lib(Error::Syntax { .. }) => "E_SYNTAX",
            Failure::Lib(Error::Semantic(_)) => "E_SEMANTIC",
            Failure::Lib(_) => "E_DOMAIN",
            Failure::Range(_) => "E_RANGE",
            Failure::Usage(_) => "E_USAGE",
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Lib(Error::Syntax { .. }) => "syntax",
            Failure::Lib(Error::Semantic(_)) => "semantic",
            _ => "input",
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Range(m) | Failure::Usage(m) => m.clone(),
        }
    }

    pub fn document(&self, command: &str) -> Value {
        let mut err = json!({ "kind": self.kind(), "code": self.code(), "message": self.message() });
        if let Failure::Lib(Error::Syntax { line, col, .. }) = self {
            err["line"] = (*line).into();
            err["col"] = (*col).into();
        }
        json!({ "command": command, "ok": false, "error": err })
    }
}

pub fn check_range<T: PartialOrd + std::fmt::Display>(name: &str, x: T, lo: T, hi: T) -> Result<T, Failure> {
    if x < lo || x > hi {
        return Err(Failure::Range(format!("{name} = {x} is outside {lo}..={hi}")));
    }
    Ok(x)
}

/// Terms as coefficient, exponent vector and wedge mask.
pub fn form_json(f: &ConfigForm) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(m, c)| json!({ "coefficient": c.to_string(), "monomial": m.exps, "wedge": m.wedge }))
        .collect();
    json!({ "space": f.space().to_string(), "text": f.to_string(), "terms": terms })
}
