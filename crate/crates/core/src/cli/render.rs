//! Report tree and its text, JSON and CSV renderings.
//!
//! Exact values (integers, polynomials) and approximations are separate
//! node kinds, so a field never mixes the two. Approximations are printed
//! with 9 significant digits.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::exact::IntPolynomial;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Null,
    Bool(bool),
    Int(i128),
    /// Exact value rendered as text: big integers, polynomials.
    Exact(String),
    Text(String),
    Approx(f64),
    /// Serialized as `[re, im]`.
    ApproxComplex(Complex64),
    List(Vec<Node>),
    Object(Vec<(String, Node)>),
}

impl Node {
    pub fn object() -> Self {
        Node::Object(Vec::new())
    }

    /// Appends a field to an object node.
    pub fn with(mut self, key: &str, value: impl Into<Node>) -> Self {
        match &mut self {
            Node::Object(fields) => fields.push((key.to_owned(), value.into())),
            _ => panic!("with() on a non-object node"),
        }
        self
    }

    pub fn poly(p: &IntPolynomial) -> Self {
        Node::Exact(p.to_string())
    }

    pub fn list<T: Into<Node>>(items: impl IntoIterator<Item = T>) -> Self {
        Node::List(items.into_iter().map(Into::into).collect())
    }

    fn is_scalar(&self) -> bool {
        !matches!(self, Node::List(_) | Node::Object(_))
    }

    /// Scalar rendering for text and CSV.
    fn scalar_text(&self) -> String {
        match self {
            Node::Null => "none".into(),
            Node::Bool(b) => b.to_string(),
            Node::Int(i) => i.to_string(),
            Node::Exact(s) | Node::Text(s) => s.clone(),
            Node::Approx(x) => format_sig9(*x),
            Node::ApproxComplex(z) => format_complex(*z),
            Node::List(_) | Node::Object(_) => unreachable!("not a scalar"),
        }
    }
}

impl From<bool> for Node {
    fn from(b: bool) -> Self {
        Node::Bool(b)
    }
}

macro_rules! int_node {
    ($($t:ty),*) => {$(
        impl From<$t> for Node {
            fn from(i: $t) -> Self {
                Node::Int(i as i128)
            }
        }
    )*};
}
int_node!(i32, i64, u32, u64, usize);

impl From<&str> for Node {
    fn from(s: &str) -> Self {
        Node::Text(s.to_owned())
    }
}

impl From<String> for Node {
    fn from(s: String) -> Self {
        Node::Text(s)
    }
}

impl From<f64> for Node {
    fn from(x: f64) -> Self {
        Node::Approx(x)
    }
}

impl From<Complex64> for Node {
    fn from(z: Complex64) -> Self {
        Node::ApproxComplex(z)
    }
}

impl<T: Into<Node>> From<Option<T>> for Node {
    fn from(v: Option<T>) -> Self {
        v.map_or(Node::Null, Into::into)
    }
}

/// `x` rounded to 9 significant digits, as the shortest decimal.
fn round9(x: f64) -> f64 {
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// Like C's `%.9g`.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_owned()
        } else {
            s.to_owned()
        }
    };
    if !(-4..9).contains(&exp) {
        format!("{}e{exp}", trim(mantissa))
    } else {
        let decimals = (8 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return format_sig9(z.re);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", format_sig9(z.re), format_sig9(z.im.abs()))
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Node::Null => s.serialize_none(),
            Node::Bool(b) => s.serialize_bool(*b),
            Node::Int(i) => match i64::try_from(*i) {
                Ok(v) => s.serialize_i64(v),
                Err(_) => s.serialize_str(&i.to_string()),
            },
            Node::Exact(t) | Node::Text(t) => s.serialize_str(t),
            Node::Approx(x) => serialize_approx(*x, s),
            Node::ApproxComplex(z) => {
                let mut seq = s.serialize_seq(Some(2))?;
                seq.serialize_element(&Approx(z.re))?;
                seq.serialize_element(&Approx(z.im))?;
                seq.end()
            }
            Node::List(items) => {
                let mut seq = s.serialize_seq(Some(items.len()))?;
                for item in items {
                    seq.serialize_element(item)?;
                }
                seq.end()
            }
            Node::Object(fields) => {
                let mut map = s.serialize_map(Some(fields.len()))?;
                for (k, v) in fields {
                    map.serialize_entry(k, v)?;
                }
                map.end()
            }
        }
    }
}

struct Approx(f64);

impl Serialize for Approx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_approx(self.0, s)
    }
}

fn serialize_approx<S: Serializer>(x: f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round9(x))
    } else {
        s.serialize_none()
    }
}

pub fn write_json(out: &mut dyn Write, node: &Node) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, node)?;
    writeln!(out)
}

/// Indented `key: value` lines; lists of scalars stay on one line.
pub fn write_text(out: &mut dyn Write, node: &Node) -> io::Result<()> {
    write_text_at(out, node, 0)
}

fn write_text_at(out: &mut dyn Write, node: &Node, depth: usize) -> io::Result<()> {
    let pad = "  ".repeat(depth);
    match node {
        Node::Object(fields) => {
            for (key, value) in fields {
                match value {
                    v if v.is_scalar() => writeln!(out, "{pad}{key}: {}", v.scalar_text())?,
                    Node::List(items) if items.iter().all(Node::is_scalar) => {
                        let parts: Vec<String> = items.iter().map(Node::scalar_text).collect();
                        writeln!(out, "{pad}{key}: [{}]", parts.join(", "))?;
                    }
                    v => {
                        writeln!(out, "{pad}{key}:")?;
                        write_text_at(out, v, depth + 1)?;
                    }
                }
            }
        }
        Node::List(items) => {
            for (i, item) in items.iter().enumerate() {
                if item.is_scalar() {
                    writeln!(out, "{pad}- {}", item.scalar_text())?;
                } else {
                    writeln!(out, "{pad}- [{i}]")?;
                    write_text_at(out, item, depth + 1)?;
                }
            }
        }
        scalar => writeln!(out, "{pad}{}", scalar.scalar_text())?,
    }
    Ok(())
}

/// Two-column `path,value` CSV of every scalar leaf.
pub fn write_csv(out: &mut dyn Write, node: &Node) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["path", "value"])?;
    let mut leaves = Vec::new();
    flatten(node, String::new(), &mut leaves);
    for (path, value) in leaves {
        w.write_record([path, value])?;
    }
    w.flush()
}

fn flatten(node: &Node, path: String, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_owned()
        } else {
            format!("{path}.{key}")
        }
    };
    match node {
        Node::Object(fields) => {
            for (k, v) in fields {
                flatten(v, join(k), out);
            }
        }
        Node::List(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, join(&i.to_string()), out);
            }
        }
        scalar => out.push((path, scalar.scalar_text())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_sig9(3.618_033_988_749_895), "3.61803399");
        assert_eq!(format_sig9(4.0), "4");
        assert_eq!(format_sig9(-0.000_012_345_678_91), "-1.23456789e-5");
        assert_eq!(format_sig9(123_456_789_012.0), "1.23456789e11");
        assert_eq!(format_sig9(0.5), "0.5");
        assert_eq!(format_complex(Complex64::new(1.0, -0.5)), "1-0.5i");
    }

    #[test]
    fn renderings() {
        let node = Node::object()
            .with("verdict", "NotObstructed")
            .with("roots", Node::list([1.0, 2.5]))
            .with(
                "nested",
                Node::object()
                    .with("witness", 1usize)
                    .with("z", Complex64::new(0.0, 1.0)),
            );
        let mut text = Vec::new();
        write_text(&mut text, &node).unwrap();
        assert_eq!(
            String::from_utf8(text).unwrap(),
            "verdict: NotObstructed\nroots: [1, 2.5]\nnested:\n  witness: 1\n  z: 0+1i\n"
        );
        let json = serde_json::to_string(&node).unwrap();
        assert_eq!(
            json,
            r#"{"verdict":"NotObstructed","roots":[1.0,2.5],"nested":{"witness":1,"z":[0.0,1.0]}}"#
        );
        let mut csv = Vec::new();
        write_csv(&mut csv, &node).unwrap();
        assert_eq!(
            String::from_utf8(csv).unwrap(),
            "path,value\nverdict,NotObstructed\nroots.0,1\nroots.1,2.5\nnested.witness,1\nnested.z,0+1i\n"
        );
    }
}
