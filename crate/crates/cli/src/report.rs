//! Line-oriented key-value reports with nested indentation.
//!
//! Every value is an exact integer, rational or symbolic string, so the
//! rendering is byte-for-byte deterministic.

use std::fmt::{self, Display, Write};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(String),
    Map(Fields),
    List(Vec<Value>),
}

impl Value {
    pub fn scalar(x: impl Display) -> Self {
        Value::Scalar(x.to_string())
    }

    pub fn scalars<T: Display>(xs: impl IntoIterator<Item = T>) -> Self {
        Value::List(xs.into_iter().map(Value::scalar).collect())
    }
}

/// Ordered key-value pairs; insertion order is rendering order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fields(pub Vec<(String, Value)>);

impl Fields {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &str, value: impl Display) -> Self {
        self.0.push((key.to_string(), Value::scalar(value)));
        self
    }

    pub fn value(mut self, key: &str, value: Value) -> Self {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn section(self, key: &str, fields: Fields) -> Self {
        self.value(key, Value::Map(fields))
    }

    pub fn list<T: Display>(self, key: &str, xs: impl IntoIterator<Item = T>) -> Self {
        self.value(key, Value::scalars(xs))
    }

    pub fn push(&mut self, key: &str, value: Value) {
        self.0.push((key.to_string(), value));
    }
}

/// The outcome class, which fixes the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Certified,
    True,
    Refuted,
    False,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Certified | Status::True => 0,
            Status::Refuted | Status::False => 1,
            Status::BudgetExceeded => 3,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Status::True
        } else {
            Status::False
        }
    }
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Certified => "certified",
            Status::True => "true",
            Status::Refuted => "refuted",
            Status::False => "false",
            Status::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    /// Seed of any sampling performed; `None` when the run is exhaustive
    /// or seed-free.
    pub seed: Option<u64>,
    pub payload: Fields,
}

impl Report {
    pub fn new(status: Status, payload: Fields) -> Self {
        Self {
            command: String::new(),
            status,
            seed: None,
            payload,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Joins arguments, double-quoting any that are empty or contain whitespace.
pub fn echo(args: &[String]) -> String {
    args.iter()
        .map(|a| {
            if a.is_empty() || a.chars().any(char::is_whitespace) {
                format!("\"{a}\"")
            } else {
                a.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_fields(out: &mut String, fields: &Fields, depth: usize) {
    for (k, v) in &fields.0 {
        render_entry(out, &format!("{k}:"), v, depth);
    }
}

fn render_entry(out: &mut String, head: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Scalar(s) => writeln!(out, "{pad}{head} {s}").unwrap(),
        Value::Map(m) if m.0.is_empty() => writeln!(out, "{pad}{head} {{}}").unwrap(),
        Value::Map(m) => {
            writeln!(out, "{pad}{head}").unwrap();
            render_fields(out, m, depth + 1);
        }
        Value::List(xs) if xs.is_empty() => writeln!(out, "{pad}{head} []").unwrap(),
        Value::List(xs) => {
            writeln!(out, "{pad}{head}").unwrap();
            for x in xs {
                render_entry(out, "-", x, depth + 1);
            }
        }
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command)?;
        writeln!(out, "version: {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(out, "status: {}", self.status)?;
        match self.seed {
            Some(s) => writeln!(out, "seed: {s}")?,
            None => writeln!(out, "seed: none")?,
        }
        render_entry(&mut out, "payload:", &Value::Map(self.payload.clone()), 0);
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_rendering() {
        let payload = Fields::new()
            .field("rank", 2)
            .list("torsion", [2])
            .list("empty", Vec::<u32>::new())
            .section("witness", Fields::new().field("index", 2))
            .value(
                "items",
                Value::List(vec![Value::Map(Fields::new().field("a", 1).field("b", 2))]),
            );
        let mut r = Report::new(Status::Refuted, payload);
        r.command = echo(&["ttf".into(), "x y".into()]);
        let text = r.to_string();
        let expected = format!(
            "command: ttf \"x y\"\nversion: {}\nstatus: refuted\nseed: none\npayload:\n  rank: 2\n  torsion:\n    - 2\n  empty: []\n  witness:\n    index: 2\n  items:\n    -\n      a: 1\n      b: 2\n",
            env!("CARGO_PKG_VERSION")
        );
        assert_eq!(text, expected);
        assert_eq!(r.status.exit_code(), 1);
    }
}
