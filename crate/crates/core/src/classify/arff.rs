//! ARFF reading and writing: @RELATION / @ATTRIBUTE / @DATA with
//! comma-delimited rows, `%` comments, and `?` for a missing class label
//! in test files.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ClassifyError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum AttrKind {
    Nominal(Vec<String>),
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArffAttribute {
    pub name: String,
    pub kind: AttrKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ArffValue {
    Nominal(String),
    Numeric(f64),
    Missing,
}

impl ArffValue {
    pub fn as_nominal(&self) -> Option<&str> {
        match self {
            ArffValue::Nominal(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_numeric(&self) -> Option<f64> {
        match self {
            ArffValue::Numeric(v) => Some(*v),
            _ => None,
        }
    }
}

/// A parsed dataset. The last attribute is the class label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArffDataset {
    pub relation: String,
    pub attributes: Vec<ArffAttribute>,
    pub instances: Vec<Vec<ArffValue>>,
}

impl ArffDataset {
    pub fn class_index(&self) -> usize {
        self.attributes.len().saturating_sub(1)
    }

    pub fn class_attribute(&self) -> Option<&ArffAttribute> {
        self.attributes.last()
    }

    /// Declared class values; classifiers require a nominal class.
    pub fn class_values(&self) -> Result<&[String], ClassifyError> {
        match self.class_attribute().map(|a| &a.kind) {
            Some(AttrKind::Nominal(values)) => Ok(values),
            _ => Err(ClassifyError::state(
                "the last attribute must be a nominal class label",
            )),
        }
    }

    /// The class label of one instance, when present.
    pub fn class_of(&self, row: usize) -> Option<&str> {
        self.instances
            .get(row)
            .and_then(|r| r.get(self.class_index()))
            .and_then(ArffValue::as_nominal)
    }
}

pub fn parse_arff(path: impl AsRef<Path>) -> Result<ArffDataset, ClassifyError> {
    let path = path.as_ref();
    let raw = std::fs::read_to_string(path).map_err(|source| ClassifyError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&raw, &path.display().to_string())
}

pub fn parse_arff_str(raw: &str) -> Result<ArffDataset, ClassifyError> {
    parse(raw, "<string>")
}

fn parse(raw: &str, origin: &str) -> Result<ArffDataset, ClassifyError> {
    let err = |line: usize, message: String| ClassifyError::Parse {
        path: origin.to_string(),
        line,
        message,
    };
    let mut relation = String::new();
    let mut attributes: Vec<ArffAttribute> = Vec::new();
    let mut instances: Vec<Vec<ArffValue>> = Vec::new();
    let mut in_data = false;
    for (lineno, line) in raw.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let lower = line.to_ascii_lowercase();
        if lower.starts_with("@relation") {
            relation = unquote(line[9..].trim()).to_string();
        } else if lower.starts_with("@attribute") {
            let rest = line[10..].trim();
            let (name, kind_text) = split_attribute(rest)
                .ok_or_else(|| err(lineno, format!("malformed attribute line {line:?}")))?;
            let kind_lower = kind_text.trim().to_ascii_lowercase();
            let kind = if kind_text.trim_start().starts_with('{') {
                let body = kind_text
                    .trim()
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| err(lineno, "unterminated nominal value list".to_string()))?;
                let values: Vec<String> = body
                    .split(',')
                    .map(|v| unquote(v.trim()).to_string())
                    .filter(|v| !v.is_empty())
                    .collect();
                if values.is_empty() {
                    return Err(err(lineno, "nominal attribute needs values".to_string()));
                }
                let mut seen = std::collections::HashSet::new();
                for v in &values {
                    if !seen.insert(v.clone()) {
                        return Err(err(lineno, format!("duplicate nominal value {v:?}")));
                    }
                }
                AttrKind::Nominal(values)
            } else if matches!(kind_lower.as_str(), "numeric" | "real" | "integer") {
                AttrKind::Numeric
            } else {
                return Err(err(lineno, format!("unsupported attribute type {kind_text:?}")));
            };
            attributes.push(ArffAttribute {
                name: unquote(name).to_string(),
                kind,
            });
        } else if lower.starts_with("@data") {
            if attributes.is_empty() {
                return Err(err(lineno, "@data before any @attribute".to_string()));
            }
            in_data = true;
        } else if in_data {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != attributes.len() {
                return Err(err(
                    lineno,
                    format!(
                        "row has {} values but {} attributes are declared",
                        cells.len(),
                        attributes.len()
                    ),
                ));
            }
            let class_index = attributes.len() - 1;
            let mut row = Vec::with_capacity(cells.len());
            for (i, cell) in cells.iter().enumerate() {
                let cell = unquote(cell);
                if cell == "?" {
                    if i != class_index {
                        return Err(err(
                            lineno,
                            "'?' is only allowed in the class column of test files".to_string(),
                        ));
                    }
                    row.push(ArffValue::Missing);
                    continue;
                }
                match &attributes[i].kind {
                    AttrKind::Numeric => {
                        let value: f64 = cell.parse().map_err(|_| {
                            err(lineno, format!("bad numeric value {cell:?}"))
                        })?;
                        row.push(ArffValue::Numeric(value));
                    }
                    AttrKind::Nominal(values) => {
                        if !values.iter().any(|v| v == cell) {
                            return Err(err(
                                lineno,
                                format!(
                                    "value {cell:?} not declared for attribute {:?}",
                                    attributes[i].name
                                ),
                            ));
                        }
                        row.push(ArffValue::Nominal(cell.to_string()));
                    }
                }
            }
            instances.push(row);
        } else {
            return Err(err(lineno, format!("unexpected line {line:?}")));
        }
    }
    if attributes.is_empty() {
        return Err(err(0, "no attributes declared".to_string()));
    }
    Ok(ArffDataset {
        relation,
        attributes,
        instances,
    })
}

/// Attribute names may be quoted and may contain spaces when quoted.
fn split_attribute(rest: &str) -> Option<(&str, &str)> {
    let rest = rest.trim();
    if rest.starts_with('\'') || rest.starts_with('"') {
        let quote = rest.chars().next().unwrap();
        let close = rest[1..].find(quote)? + 1;
        return Some((&rest[..=close], rest[close + 1..].trim()));
    }
    let space = rest.find(char::is_whitespace)?;
    Some((&rest[..space], rest[space..].trim()))
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    if s.len() >= 2
        && ((s.starts_with('\'') && s.ends_with('\'')) || (s.starts_with('"') && s.ends_with('"')))
    {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

/// Render a dataset back to ARFF text. `parse(arff_to_string(ds))`
/// reproduces `ds` field for field.
pub fn arff_to_string(ds: &ArffDataset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "@RELATION {}", quote_if_needed(&ds.relation));
    for attr in &ds.attributes {
        match &attr.kind {
            AttrKind::Numeric => {
                let _ = writeln!(out, "@ATTRIBUTE {} NUMERIC", quote_if_needed(&attr.name));
            }
            AttrKind::Nominal(values) => {
                let body: Vec<String> = values.iter().map(|v| quote_if_needed(v)).collect();
                let _ = writeln!(
                    out,
                    "@ATTRIBUTE {} {{{}}}",
                    quote_if_needed(&attr.name),
                    body.join(",")
                );
            }
        }
    }
    let _ = writeln!(out, "@DATA");
    for row in &ds.instances {
        let cells: Vec<String> = row
            .iter()
            .map(|v| match v {
                ArffValue::Missing => "?".to_string(),
                ArffValue::Numeric(n) => format_numeric(*n),
                ArffValue::Nominal(s) => quote_if_needed(s),
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn write_arff(ds: &ArffDataset, path: impl AsRef<Path>) -> Result<(), ClassifyError> {
    let path = path.as_ref();
    std::fs::write(path, arff_to_string(ds)).map_err(|source| ClassifyError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn quote_if_needed(s: &str) -> String {
    if s.is_empty() || s.contains(|c: char| c.is_whitespace() || c == ',' || c == '{' || c == '}')
    {
        format!("'{s}'")
    } else {
        s.to_string()
    }
}

fn format_numeric(n: f64) -> String {
    if n == n.trunc() && n.abs() < 1e15 {
        format!("{}", n as i64)
    } else {
        format!("{n}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
@RELATION weather
@ATTRIBUTE outlook {sunny,rainy}
@ATTRIBUTE play {yes,no}
@DATA
sunny,yes
rainy,no
";

    #[test]
    fn minimal_file() {
        let ds = parse_arff_str(MINIMAL).unwrap();
        assert_eq!(ds.relation, "weather");
        assert_eq!(ds.instances.len(), 2);
        assert_eq!(ds.class_values().unwrap(), &["yes", "no"]);
        assert_eq!(ds.class_of(0), Some("yes"));
    }

    #[test]
    fn keywords_case_insensitive() {
        let ds = parse_arff_str(
            "@relation r\n@attribute x numeric\n@attribute c {a,b}\n@data\n1,a\n",
        )
        .unwrap();
        assert_eq!(ds.attributes[0].kind, AttrKind::Numeric);
    }

    #[test]
    fn arity_mismatch_reports_line() {
        let raw = "@RELATION r\n@ATTRIBUTE a {x,y}\n@ATTRIBUTE c {p,q}\n@DATA\nx,p\nx,p,y\n";
        match parse_arff_str(raw) {
            Err(ClassifyError::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_nominal_value_is_an_error() {
        let raw = "@RELATION r\n@ATTRIBUTE a {x,y}\n@ATTRIBUTE c {p,q}\n@DATA\nz,p\n";
        assert!(parse_arff_str(raw).is_err());
    }

    #[test]
    fn question_mark_only_in_class_column() {
        let ok = "@RELATION r\n@ATTRIBUTE a {x,y}\n@ATTRIBUTE c {p,q}\n@DATA\nx,?\n";
        let ds = parse_arff_str(ok).unwrap();
        assert_eq!(ds.instances[0][1], ArffValue::Missing);

        let bad = "@RELATION r\n@ATTRIBUTE a {x,y}\n@ATTRIBUTE c {p,q}\n@DATA\n?,p\n";
        assert!(parse_arff_str(bad).is_err());
    }

    #[test]
    fn round_trip() {
        let raw = "@RELATION 'two words'\n@ATTRIBUTE temp NUMERIC\n@ATTRIBUTE c {p,q}\n@DATA\n3.5,p\n2,?\n";
        let ds = parse_arff_str(raw).unwrap();
        let again = parse_arff_str(&arff_to_string(&ds)).unwrap();
        assert_eq!(ds, again);
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let raw = "% header comment\n@RELATION r\n\n@ATTRIBUTE c {p}\n@DATA\n% data comment\np\n";
        assert_eq!(parse_arff_str(raw).unwrap().instances.len(), 1);
    }
}
