//! Fragment file formats.
//!
//! JSON: `{"width":m,"period":2n,"rows":[[...],...]}`, rows top to bottom,
//! written compactly on one line followed by a newline.
//!
//! Text grid: whitespace-separated integers, one frieze row per line,
//! optionally framed by the two border rows of ones. Lines starting with
//! `#` are comments.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use super::{Fragment, FriezeError};

#[derive(Serialize, Deserialize)]
struct FragmentJson {
    width: usize,
    period: usize,
    rows: Vec<Vec<Number>>,
}

fn to_number(v: &BigInt) -> Number {
    v.to_string().parse().expect("integer literal is a JSON number")
}

fn from_number(n: &Number) -> Result<BigInt, FriezeError> {
    n.to_string()
        .parse()
        .map_err(|_| FriezeError::Parse(format!("entry {n} is not an integer")))
}

impl Fragment {
    /// Compact JSON document, newline-terminated.
    pub fn to_json(&self) -> String {
        let doc = FragmentJson {
            width: self.width(),
            period: self.period(),
            rows: self.rows().iter().map(|r| r.iter().map(to_number).collect()).collect(),
        };
        let mut s = serde_json::to_string(&doc).expect("fragment serializes");
        s.push('\n');
        s
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.to_json()).expect("own output parses")
    }

    pub fn from_json(text: &str) -> Result<Self, FriezeError> {
        let doc: FragmentJson = serde_json::from_str(text).map_err(|e| FriezeError::Parse(e.to_string()))?;
        Self::from_json_doc(doc)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, FriezeError> {
        let doc: FragmentJson =
            serde_json::from_value(value.clone()).map_err(|e| FriezeError::Parse(e.to_string()))?;
        Self::from_json_doc(doc)
    }

    fn from_json_doc(doc: FragmentJson) -> Result<Self, FriezeError> {
        let expected = super::period_of(doc.width);
        if doc.period != expected {
            return Err(FriezeError::Shape(format!(
                "period {} does not match width {} (expected {})",
                doc.period, doc.width, expected
            )));
        }
        let rows = doc
            .rows
            .iter()
            .map(|r| r.iter().map(from_number).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Fragment::new(doc.width, rows)
    }

    /// Grid including both border rows of ones. With `pretty`, columns are
    /// right-aligned to a common width.
    pub fn to_text(&self, pretty: bool) -> String {
        let period = self.period();
        let ones = vec![BigInt::one(); period];
        let mut all: Vec<&Vec<BigInt>> = vec![&ones];
        all.extend(self.rows().iter());
        all.push(&ones);
        let cell_width = if pretty {
            all.iter().flat_map(|r| r.iter()).map(|v| v.to_string().len()).max().unwrap_or(1)
        } else {
            0
        };
        let mut out = String::new();
        for row in all {
            let cells: Vec<String> = row.iter().map(|v| format!("{:>w$}", v.to_string(), w = cell_width)).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Reads a text grid; border rows of ones are stripped when present on
    /// both sides.
    pub fn from_text(text: &str) -> Result<Self, FriezeError> {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>()
                        .map_err(|_| FriezeError::Parse(format!("line {}: bad entry {tok:?}", lineno + 1)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        let all_ones = |r: &Vec<BigInt>| r.iter().all(|v| v.is_one());
        if rows.len() >= 2 && all_ones(&rows[0]) && all_ones(&rows[rows.len() - 1]) {
            rows.remove(0);
            rows.pop();
        }
        let width = rows.len();
        Fragment::new(width, rows)
    }

    /// Accepts either format, deciding by the first non-blank character.
    pub fn parse_any(text: &str) -> Result<Self, FriezeError> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::from_text(text)
        }
    }
}
