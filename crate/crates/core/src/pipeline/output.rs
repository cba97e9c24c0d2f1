//! result.xml and records.json emission, plus structural validation of
//! the XML against the shipped schema.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde_json::Value;

use super::{CurationRecord, PipelineError};
use crate::html::{parse as parse_xmlish, Element, Node};

/// Output formats for [`write_records`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Xml,
    Json,
}

impl OutputFormat {
    /// Infer from a file extension; `.xml` is the default.
    pub fn from_path(path: &Path) -> OutputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => OutputFormat::Json,
            _ => OutputFormat::Xml,
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "xml" => Ok(OutputFormat::Xml),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format {other:?}")),
        }
    }
}

/// Write enriched records to disk. The record list must be non-empty.
pub fn write_records(
    records: &[CurationRecord],
    format: OutputFormat,
    path: impl AsRef<Path>,
) -> Result<(), PipelineError> {
    let path = path.as_ref();
    let body = match format {
        OutputFormat::Xml => records_to_xml(records)?,
        OutputFormat::Json => records_to_json(records)?,
    };
    std::fs::write(path, body).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Records as a JSON array; reading it back reconstructs them exactly.
pub fn records_to_json(records: &[CurationRecord]) -> Result<String, PipelineError> {
    if records.is_empty() {
        return Err(PipelineError::Argument(
            "cannot write an empty record list".to_string(),
        ));
    }
    Ok(serde_json::to_string_pretty(records)? + "\n")
}

pub fn read_records_json(path: impl AsRef<Path>) -> Result<Vec<CurationRecord>, PipelineError> {
    let path = path.as_ref();
    let raw = std::fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&raw)?)
}

fn esc(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn esc_attr(text: &str) -> String {
    esc(text).replace('"', "&quot;")
}

/// Render records as result.xml: `<results>` with one `<tweet id=...>`
/// per record.
pub fn records_to_xml(records: &[CurationRecord]) -> Result<String, PipelineError> {
    if records.is_empty() {
        return Err(PipelineError::Argument(
            "cannot write an empty record list".to_string(),
        ));
    }
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<results>\n");
    for record in records {
        let _ = writeln!(out, "  <tweet id=\"{}\">", esc_attr(&record.tweet.id));

        out.push_str("    <entities>\n");
        for e in &record.entities {
            let _ = writeln!(
                out,
                "      <entity type=\"{}\" start=\"{}\" end=\"{}\">{}</entity>",
                e.ner,
                e.start,
                e.end,
                esc(&e.word)
            );
        }
        out.push_str("    </entities>\n");

        out.push_str("    <keywords>\n");
        for k in &record.keywords {
            let _ = writeln!(
                out,
                "      <keyword term=\"{}\" frequency=\"{}\" score=\"{}\"/>",
                esc_attr(&k.term),
                k.frequency,
                k.score
            );
        }
        out.push_str("    </keywords>\n");

        out.push_str("    <pos>\n");
        for t in &record.pos {
            let _ = writeln!(
                out,
                "      <token tag=\"{}\">{}</token>",
                t.tag,
                esc(&t.word_part)
            );
        }
        out.push_str("    </pos>\n");

        out.push_str("    <stems>\n");
        for (token, stemmed) in &record.stems {
            let _ = writeln!(
                out,
                "      <stem token=\"{}\">{}</stem>",
                esc_attr(token),
                esc(stemmed)
            );
        }
        out.push_str("    </stems>\n");

        out.push_str("    <synonyms>\n");
        for (word, syns) in &record.synonyms {
            let _ = writeln!(out, "      <word term=\"{}\">", esc_attr(word));
            for syn in syns {
                let _ = writeln!(out, "        <synonym>{}</synonym>", esc(syn));
            }
            out.push_str("      </word>\n");
        }
        out.push_str("    </synonyms>\n");

        out.push_str("    <urls>\n");
        for u in &record.url_extracts {
            match (&u.extract, &u.error) {
                (Some(page), _) => {
                    let _ = writeln!(out, "      <url source=\"{}\">", esc_attr(&u.url));
                    if let Some(title) = &page.title {
                        let _ = writeln!(out, "        <title>{}</title>", esc(title));
                    }
                    for h in &page.headings {
                        let _ = writeln!(
                            out,
                            "        <heading level=\"{}\">{}</heading>",
                            h.level,
                            esc(&h.text)
                        );
                    }
                    for p in &page.paragraphs {
                        let _ = writeln!(out, "        <paragraph>{}</paragraph>", esc(p));
                    }
                    for a in &page.anchor_texts {
                        let _ = writeln!(out, "        <anchor>{}</anchor>", esc(a));
                    }
                    for alt in &page.image_alts {
                        let _ = writeln!(out, "        <alt>{}</alt>", esc(alt));
                    }
                    for item in &page.list_items {
                        let _ = writeln!(out, "        <item>{}</item>", esc(item));
                    }
                    out.push_str("      </url>\n");
                }
                (None, error) => {
                    let _ = writeln!(
                        out,
                        "      <url source=\"{}\" error=\"{}\"/>",
                        esc_attr(&u.url),
                        esc_attr(error.as_deref().unwrap_or("unknown"))
                    );
                }
            }
        }
        out.push_str("    </urls>\n");

        out.push_str("    <links>\n");
        for link in &record.links {
            let _ = writeln!(
                out,
                "      <candidate mention=\"{}\" provider=\"{}\" id=\"{}\" score=\"{}\" metric=\"{}\">{}</candidate>",
                esc_attr(&link.mention),
                link.entity.provider,
                esc_attr(&link.entity.id),
                link.score,
                esc_attr(&link.metric),
                esc(&link.entity.label)
            );
        }
        out.push_str("    </links>\n");

        out.push_str("  </tweet>\n");
    }
    out.push_str("</results>\n");
    Ok(out)
}

const SCHEMA: &str = include_str!("../../resources/result-schema.json");

/// Validate result.xml structure against the shipped schema: element
/// nesting, required children and attributes. Returns every violation.
pub fn validate_result_xml(xml: &str) -> Result<(), Vec<String>> {
    let schema: Value = serde_json::from_str(SCHEMA).expect("bundled schema is valid JSON");
    let root_name = schema["root"].as_str().unwrap_or("results");
    let elements = &schema["elements"];

    let doc = parse_xmlish(xml);
    let top: Vec<&Element> = doc
        .root
        .children
        .iter()
        .filter_map(|n| match n {
            Node::Element(e) => Some(e),
            Node::Text(_) => None,
        })
        .collect();
    let mut errors = Vec::new();
    if top.len() != 1 || top[0].name != root_name {
        errors.push(format!(
            "expected a single <{root_name}> root, found {:?}",
            top.iter().map(|e| e.name.as_str()).collect::<Vec<_>>()
        ));
        return Err(errors);
    }
    check_element(top[0], elements, &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

fn strings_at(spec: &Value, key: &str) -> Vec<String> {
    spec.get(key)
        .and_then(Value::as_array)
        .map(|a| {
            a.iter()
                .filter_map(Value::as_str)
                .map(str::to_string)
                .collect()
        })
        .unwrap_or_default()
}

fn check_element(el: &Element, elements: &Value, errors: &mut Vec<String>) {
    let Some(spec) = elements.get(&el.name) else {
        errors.push(format!("element <{}> is not in the schema", el.name));
        return;
    };
    let allowed_children = strings_at(spec, "children");
    let required_children = strings_at(spec, "required_children");
    let required_attrs = strings_at(spec, "required_attrs");
    let optional_attrs = strings_at(spec, "optional_attrs");
    let allows_text = spec.get("text").and_then(Value::as_bool).unwrap_or(false);

    for (name, _) in &el.attrs {
        if !required_attrs.contains(name) && !optional_attrs.contains(name) {
            errors.push(format!("<{}> has unexpected attribute {name:?}", el.name));
        }
    }
    for required in &required_attrs {
        if el.attr(required).is_none() {
            errors.push(format!("<{}> is missing attribute {required:?}", el.name));
        }
    }

    let mut present: Vec<&str> = Vec::new();
    for child in &el.children {
        match child {
            Node::Text(t) => {
                if !allows_text && !t.trim().is_empty() {
                    errors.push(format!("<{}> must not contain text", el.name));
                }
            }
            Node::Element(c) => {
                if !allowed_children.contains(&c.name) {
                    errors.push(format!(
                        "<{}> must not contain <{}>",
                        el.name, c.name
                    ));
                } else {
                    present.push(&c.name);
                    check_element(c, elements, errors);
                }
            }
        }
    }
    for required in &required_children {
        if !present.iter().any(|n| *n == required) {
            errors.push(format!("<{}> is missing child <{required}>", el.name));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{enrich, Resources, TweetRecord, TweetUser};

    fn sample_records() -> Vec<CurationRecord> {
        let resources = Resources::builtin();
        ["Obama visited Honolulu", "begin the day in Paris"]
            .iter()
            .enumerate()
            .map(|(i, text)| {
                enrich(
                    &TweetRecord {
                        id: format!("t{i}"),
                        text: text.to_string(),
                        user: TweetUser {
                            handle: format!("u{i}"),
                            ..TweetUser::default()
                        },
                        ..TweetRecord::default()
                    },
                    &resources,
                )
            })
            .collect()
    }

    #[test]
    fn xml_validates_against_schema() {
        let xml = records_to_xml(&sample_records()).unwrap();
        if let Err(errors) = validate_result_xml(&xml) {
            panic!("schema violations: {errors:#?}");
        }
    }

    #[test]
    fn empty_record_list_is_an_argument_error() {
        assert!(records_to_xml(&[]).is_err());
        assert!(records_to_json(&[]).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let records = sample_records();
        let json = records_to_json(&records).unwrap();
        let back: Vec<CurationRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(records, back);
    }

    #[test]
    fn xml_escapes_special_characters() {
        let resources = Resources::builtin();
        let record = enrich(
            &TweetRecord {
                id: "a&b".to_string(),
                text: "cats < dogs & \"quotes\"".to_string(),
                ..TweetRecord::default()
            },
            &resources,
        );
        let xml = records_to_xml(&[record]).unwrap();
        assert!(xml.contains("id=\"a&amp;b\""));
        assert!(!xml.contains("cats < dogs"));
        validate_result_xml(&xml).unwrap();
    }

    #[test]
    fn validator_reports_violations() {
        let bad = "<results><tweet id=\"1\"><entities></entities></tweet></results>";
        let errors = validate_result_xml(bad).unwrap_err();
        assert!(errors.iter().any(|e| e.contains("missing child")));

        let unknown = "<results><mystery/></results>";
        assert!(validate_result_xml(unknown).is_err());
    }
}
