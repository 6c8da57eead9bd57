//! Report trees and their two renderings.
//!
//! A report is a list of nodes. The human rendering indents groups; the
//! structured rendering writes one `dotted.key = value` line per leaf.

use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    Int(u64),
    Float(f64),
    Bool(bool),
    /// Member names; rendered `{a,b}` in the given order.
    Set(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Value(Value),
    List(Vec<Value>),
    Group(Vec<Node>),
    /// A list of records, each a small group.
    Records(Vec<Vec<Node>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub key: String,
    pub body: Body,
}

pub fn text(key: &str, v: impl Into<String>) -> Node {
    Node { key: key.into(), body: Body::Value(Value::Text(v.into())) }
}

pub fn int(key: &str, v: usize) -> Node {
    Node { key: key.into(), body: Body::Value(Value::Int(v as u64)) }
}

pub fn float(key: &str, v: f64) -> Node {
    Node { key: key.into(), body: Body::Value(Value::Float(v)) }
}

pub fn flag(key: &str, v: bool) -> Node {
    Node { key: key.into(), body: Body::Value(Value::Bool(v)) }
}

pub fn set(key: &str, v: Vec<String>) -> Node {
    Node { key: key.into(), body: Body::Value(Value::Set(v)) }
}

pub fn list(key: &str, v: Vec<Value>) -> Node {
    Node { key: key.into(), body: Body::List(v) }
}

pub fn group(key: &str, v: Vec<Node>) -> Node {
    Node { key: key.into(), body: Body::Group(v) }
}

pub fn records(key: &str, v: Vec<Vec<Node>>) -> Node {
    Node { key: key.into(), body: Body::Records(v) }
}

/// `%.12g`: twelve significant digits, trailing zeros dropped.
pub fn format_float(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{sign}{:02}", trim(mantissa.to_string()), exp.abs());
    }
    trim(format!("{v:.*}", (11 - exp) as usize))
}

fn render_value(v: &Value) -> String {
    match v {
        Value::Text(s) => s.replace('\\', "\\\\").replace('\n', "\\n"),
        Value::Int(i) => i.to_string(),
        Value::Float(f) => format_float(*f),
        Value::Bool(b) => b.to_string(),
        Value::Set(items) => format!("{{{}}}", items.join(",")),
    }
}

pub fn render_human(nodes: &[Node]) -> String {
    let mut out = String::new();
    human(&mut out, nodes, 0);
    out
}

fn human(out: &mut String, nodes: &[Node], depth: usize) {
    let pad = "  ".repeat(depth);
    for n in nodes {
        match &n.body {
            Body::Value(v) => writeln!(out, "{pad}{}: {}", n.key, render_value(v)).unwrap(),
            Body::List(vs) if vs.is_empty() => writeln!(out, "{pad}{}: (none)", n.key).unwrap(),
            Body::List(vs) => {
                writeln!(out, "{pad}{}:", n.key).unwrap();
                for v in vs {
                    writeln!(out, "{pad}  {}", render_value(v)).unwrap();
                }
            }
            Body::Group(children) => {
                writeln!(out, "{pad}{}", n.key).unwrap();
                human(out, children, depth + 1);
            }
            Body::Records(rs) if rs.is_empty() => writeln!(out, "{pad}{}: (none)", n.key).unwrap(),
            Body::Records(rs) => {
                writeln!(out, "{pad}{}:", n.key).unwrap();
                for r in rs {
                    let mut block = String::new();
                    human(&mut block, r, depth + 2);
                    let inner = "  ".repeat(depth + 2);
                    for (i, line) in block.lines().enumerate() {
                        let line = line.strip_prefix(inner.as_str()).unwrap_or(line);
                        let lead = if i == 0 { "- " } else { "  " };
                        writeln!(out, "{pad}  {lead}{line}").unwrap();
                    }
                }
            }
        }
    }
}

pub fn render_structured(nodes: &[Node]) -> String {
    let mut out = String::new();
    structured(&mut out, nodes, "");
    out
}

fn structured(out: &mut String, nodes: &[Node], prefix: &str) {
    for n in nodes {
        let path = if prefix.is_empty() { n.key.clone() } else { format!("{prefix}.{}", n.key) };
        match &n.body {
            Body::Value(v) => writeln!(out, "{path} = {}", render_value(v)).unwrap(),
            Body::List(vs) => {
                writeln!(out, "{path}.count = {}", vs.len()).unwrap();
                for (i, v) in vs.iter().enumerate() {
                    writeln!(out, "{path}.{i} = {}", render_value(v)).unwrap();
                }
            }
            Body::Group(children) => structured(out, children, &path),
            Body::Records(rs) => {
                writeln!(out, "{path}.count = {}", rs.len()).unwrap();
                for (i, r) in rs.iter().enumerate() {
                    structured(out, r, &format!("{path}.{i}"));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_float(0.75), "0.75");
        assert_eq!(format_float(0.7499999999999999), "0.75");
        assert_eq!(format_float(1.2345678901), "1.2345678901");
        assert_eq!(format_float(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(4.440892098500626e-16), "4.4408920985e-16");
        assert_eq!(format_float(123456789012345.0), "1.23456789012e+14");
        assert_eq!(format_float(0.0001), "0.0001");
        assert_eq!(format_float(0.00001), "1e-05");
    }

    #[test]
    fn both_renderings() {
        let r = vec![group(
            "closures",
            vec![
                text("kind", "eigen"),
                list("members", vec![Value::Set(vec![]), Value::Set(vec!["p".into(), "q".into()])]),
                records("checks", vec![vec![text("name", "a b"), flag("passed", true)]]),
            ],
        )];
        assert_eq!(
            render_structured(&r),
            "closures.kind = eigen\nclosures.members.count = 2\nclosures.members.0 = {}\nclosures.members.1 = {p,q}\n\
             closures.checks.count = 1\nclosures.checks.0.name = a b\nclosures.checks.0.passed = true\n"
        );
        assert_eq!(
            render_human(&r),
            "closures\n  kind: eigen\n  members:\n    {}\n    {p,q}\n  checks:\n    - name: a b\n      passed: true\n"
        );
    }
}
