//! Gazetteer- and pattern-based named-entity extraction.
//!
//! Three extraction stages with a fixed priority: dictionary hits
//! (leftmost-longest over the token sequence), then pattern hits for
//! dates, money and percentages, then a capitalization heuristic for
//! persons and organizations. Later stages never overlap earlier ones.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{split_sentences, tokenize_all, Token};

#[derive(Debug, Error)]
pub enum NerError {
    #[error("failed to read gazetteer {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("gazetteer {path} line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
}

/// The closed set of entity types understood by the gazetteer file format
/// and the extractors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EntityType {
    Person,
    Organization,
    Location,
    City,
    Country,
    Continent,
    Company,
    Drug,
    Crime,
    Sport,
    Holiday,
    Product,
    Disaster,
    Os,
    SportEv,
    Geo,
    Region,
    State,
    Degree,
    Media,
    Disease,
    Money,
    Date,
    Time,
    Percent,
    Email,
    IpAddr,
}

impl EntityType {
    pub const ALL: [EntityType; 27] = [
        EntityType::Person,
        EntityType::Organization,
        EntityType::Location,
        EntityType::City,
        EntityType::Country,
        EntityType::Continent,
        EntityType::Company,
        EntityType::Drug,
        EntityType::Crime,
        EntityType::Sport,
        EntityType::Holiday,
        EntityType::Product,
        EntityType::Disaster,
        EntityType::Os,
        EntityType::SportEv,
        EntityType::Geo,
        EntityType::Region,
        EntityType::State,
        EntityType::Degree,
        EntityType::Media,
        EntityType::Disease,
        EntityType::Money,
        EntityType::Date,
        EntityType::Time,
        EntityType::Percent,
        EntityType::Email,
        EntityType::IpAddr,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EntityType::Person => "PERSON",
            EntityType::Organization => "ORGANIZATION",
            EntityType::Location => "LOCATION",
            EntityType::City => "CITY",
            EntityType::Country => "COUNTRY",
            EntityType::Continent => "CONTINENT",
            EntityType::Company => "COMPANY",
            EntityType::Drug => "DRUG",
            EntityType::Crime => "CRIME",
            EntityType::Sport => "SPORT",
            EntityType::Holiday => "HOLIDAY",
            EntityType::Product => "PRODUCT",
            EntityType::Disaster => "DISASTER",
            EntityType::Os => "OS",
            EntityType::SportEv => "SPORTEV",
            EntityType::Geo => "GEO",
            EntityType::Region => "REGION",
            EntityType::State => "STATE",
            EntityType::Degree => "DEGREE",
            EntityType::Media => "MEDIA",
            EntityType::Disease => "DISEASE",
            EntityType::Money => "MONEY",
            EntityType::Date => "DATE",
            EntityType::Time => "TIME",
            EntityType::Percent => "PERCENT",
            EntityType::Email => "EMAIL",
            EntityType::IpAddr => "IPADDR",
        }
    }
}

impl FromStr for EntityType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        EntityType::ALL
            .iter()
            .find(|t| t.as_str() == upper)
            .copied()
            .ok_or_else(|| format!("unknown entity type {s:?}"))
    }
}

impl fmt::Display for EntityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One dictionary row: a surface form (possibly multi-word) and its type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GazetteerEntry {
    pub surface: String,
    pub entity_type: EntityType,
}

/// Dictionary indexed for case-insensitive longest-prefix lookup over
/// token sequences.
#[derive(Debug, Clone, Default)]
pub struct Gazetteer {
    // first lowercased token -> entries starting with it (token form).
    by_first: HashMap<String, Vec<(Vec<String>, EntityType, String)>>,
    entry_count: usize,
    warnings: usize,
    max_tokens: usize,
}

const BUILTIN_GAZETTEER: &str = include_str!("../resources/gazetteer.tsv");

impl Gazetteer {
    /// The sample dictionary shipped with the crate (~500 entries across
    /// every category).
    pub fn builtin() -> Self {
        Gazetteer::parse(BUILTIN_GAZETTEER, "<builtin>").expect("bundled gazetteer is valid")
    }

    /// Load a tab-delimited `surface<TAB>type` file. Lines without a tab
    /// are skipped and counted in [`Gazetteer::warnings`].
    pub fn load(path: impl AsRef<Path>) -> Result<Self, NerError> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|source| NerError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Gazetteer::parse(&raw, &path.display().to_string())
    }

    pub fn parse(raw: &str, origin: &str) -> Result<Self, NerError> {
        let mut gaz = Gazetteer::default();
        for (lineno, line) in raw.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((surface, type_label)) = line.split_once('\t') else {
                gaz.warnings += 1;
                continue;
            };
            let surface = surface.trim();
            let entity_type =
                EntityType::from_str(type_label).map_err(|message| NerError::Parse {
                    path: origin.to_string(),
                    line: lineno + 1,
                    message,
                })?;
            if surface.is_empty() {
                gaz.warnings += 1;
                continue;
            }
            gaz.insert(surface, entity_type);
        }
        Ok(gaz)
    }

    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = GazetteerEntry>,
    {
        let mut gaz = Gazetteer::default();
        for entry in entries {
            gaz.insert(&entry.surface, entry.entity_type);
        }
        gaz
    }

    fn insert(&mut self, surface: &str, entity_type: EntityType) {
        let tokens: Vec<String> = tokenize_all(surface)
            .into_iter()
            .map(|t| t.surface)
            .collect();
        if tokens.is_empty() {
            self.warnings += 1;
            return;
        }
        self.max_tokens = self.max_tokens.max(tokens.len());
        self.entry_count += 1;
        let first = tokens[0].clone();
        self.by_first
            .entry(first)
            .or_default()
            .push((tokens, entity_type, surface.to_string()));
    }

    pub fn entry_count(&self) -> usize {
        self.entry_count
    }

    /// Lines skipped during load (no tab, or no tokens in the surface).
    pub fn warnings(&self) -> usize {
        self.warnings
    }

    /// Types recorded for an exact surface, case-insensitive.
    pub fn lookup(&self, surface: &str) -> Vec<EntityType> {
        let tokens: Vec<String> = tokenize_all(surface)
            .into_iter()
            .map(|t| t.surface)
            .collect();
        let Some(first) = tokens.first() else {
            return Vec::new();
        };
        let mut types: Vec<EntityType> = self
            .by_first
            .get(first)
            .map(|entries| {
                entries
                    .iter()
                    .filter(|(entry_tokens, _, _)| *entry_tokens == tokens)
                    .map(|(_, t, _)| *t)
                    .collect()
            })
            .unwrap_or_default();
        types.sort();
        types.dedup();
        types
    }

    /// Longest token-sequence match starting at `tokens[at]`; returns the
    /// matched length and the types at that length.
    fn longest_match(&self, tokens: &[Token], at: usize) -> Option<(usize, Vec<EntityType>)> {
        let entries = self.by_first.get(&tokens[at].surface)?;
        let mut best_len = 0;
        let mut types: Vec<EntityType> = Vec::new();
        for (entry_tokens, entity_type, _) in entries {
            let len = entry_tokens.len();
            if len < best_len || at + len > tokens.len() {
                continue;
            }
            let window = &tokens[at..at + len];
            if entry_tokens
                .iter()
                .zip(window)
                .all(|(e, t)| *e == t.surface)
            {
                if len > best_len {
                    best_len = len;
                    types.clear();
                }
                types.push(*entity_type);
            }
        }
        if best_len == 0 {
            return None;
        }
        types.sort();
        types.dedup();
        Some((best_len, types))
    }
}

/// A typed extraction span. `word` is the exact source slice; offsets are
/// character offsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedEntity {
    pub word: String,
    pub ner: EntityType,
    pub start: usize,
    pub end: usize,
}

static DATE_PATTERNS: Lazy<Vec<Regex>> = Lazy::new(|| {
    let month = "(?:January|February|March|April|May|June|July|August|September|October|November|December)";
    vec![
        Regex::new(&format!(r"\b{month}\s+\d{{1,2}}(?:\s*,\s*\d{{4}})?\b")).unwrap(),
        Regex::new(&format!(r"\b\d{{1,2}}\s+{month}(?:\s+\d{{4}})?\b")).unwrap(),
        Regex::new(r"\b\d{1,2}/\d{1,2}/\d{2,4}\b").unwrap(),
    ]
});

static MONEY_PATTERN: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"[$£€]\s?\d+(?:,\d{3})*(?:\.\d+)?").unwrap());

static PERCENT_PATTERN: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\b\d+(?:\.\d+)?\s?%").unwrap());

static EMAIL_PATTERN: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"[A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(?:\.[A-Za-z0-9-]+)*\.[A-Za-z]{2,}").unwrap());

static IP_CANDIDATE: Lazy<Regex> = Lazy::new(|| Regex::new(r"\d{1,3}(?:\.\d{1,3}){3}").unwrap());

/// Words whose sentence-initial capitalization carries no entity signal.
const FUNCTION_WORDS: &[&str] = &[
    "the", "a", "an", "this", "that", "these", "those", "he", "she", "it", "we", "they", "you",
    "his", "her", "its", "our", "their", "my", "your", "in", "on", "at", "by", "for", "with",
    "from", "to", "of", "and", "or", "but", "if", "when", "while", "after", "before", "as", "is",
    "are", "was", "were", "be", "do", "did", "does", "have", "has", "had", "not", "no", "yes",
    "there", "here", "what", "who", "how", "why", "where", "which", "so", "then", "now", "today",
    "some", "all", "every", "each", "one", "two", "many", "most", "more", "new",
];

const ORG_CUES: &[&str] = &["hospital", "inc", "ltd", "university", "bank", "department"];

/// Extract typed entities: gazetteer hits, then date/money/percent
/// patterns, then capitalized-run persons/organizations; sorted by start
/// offset. Spans from different stages never overlap.
pub fn extract_entities(text: &str, gazetteer: &Gazetteer) -> Vec<NamedEntity> {
    if text.is_empty() {
        return Vec::new();
    }
    let tokens = tokenize_all(text);
    let chars: Vec<char> = text.chars().collect();
    let slice = |start: usize, end: usize| -> String { chars[start..end].iter().collect() };

    let mut entities: Vec<NamedEntity> = Vec::new();
    // Spans already claimed, kept per stage for the overlap rule.
    let mut claimed: Vec<(usize, usize)> = Vec::new();

    // Stage 1: leftmost-longest gazetteer matching over tokens.
    let mut i = 0;
    while i < tokens.len() {
        match gazetteer.longest_match(&tokens, i) {
            Some((len, types)) => {
                let start = tokens[i].start;
                let end = tokens[i + len - 1].end;
                for entity_type in types {
                    entities.push(NamedEntity {
                        word: slice(start, end),
                        ner: entity_type,
                        start,
                        end,
                    });
                }
                claimed.push((start, end));
                i += len;
            }
            None => i += 1,
        }
    }

    // Stage 2: pattern hits that do not overlap gazetteer spans.
    let byte_starts: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
    let to_char = |byte: usize| -> usize {
        byte_starts.partition_point(|b| *b < byte)
    };
    let mut pattern_hits: Vec<(usize, usize, EntityType)> = Vec::new();
    for re in DATE_PATTERNS.iter() {
        for m in re.find_iter(text) {
            pattern_hits.push((to_char(m.start()), to_char(m.end()), EntityType::Date));
        }
    }
    for m in MONEY_PATTERN.find_iter(text) {
        pattern_hits.push((to_char(m.start()), to_char(m.end()), EntityType::Money));
    }
    for m in PERCENT_PATTERN.find_iter(text) {
        pattern_hits.push((to_char(m.start()), to_char(m.end()), EntityType::Percent));
    }
    // Longest-first so "August 4, 1961" beats the bare "August 4".
    pattern_hits.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| (b.1 - b.0).cmp(&(a.1 - a.0)))
    });
    for (start, end, entity_type) in pattern_hits {
        if overlaps_any(&claimed, start, end) {
            continue;
        }
        entities.push(NamedEntity {
            word: slice(start, end),
            ner: entity_type,
            start,
            end,
        });
        claimed.push((start, end));
    }

    // Stage 3: capitalized runs not claimed above. A sentence-initial
    // token only joins a run when it is not a plain function word.
    let sentence_starts: Vec<usize> = sentence_initial_tokens(text, &tokens);
    let mut run: Vec<usize> = Vec::new();
    let flush = |run: &mut Vec<usize>, entities: &mut Vec<NamedEntity>| {
        if run.is_empty() {
            return;
        }
        let start = tokens[run[0]].start;
        let end = tokens[*run.last().unwrap()].end;
        if !overlaps_any(&claimed, start, end) {
            let has_cue = run
                .iter()
                .any(|&t| ORG_CUES.contains(&tokens[t].surface.as_str()));
            let ner = if has_cue {
                EntityType::Organization
            } else {
                EntityType::Person
            };
            entities.push(NamedEntity {
                word: slice(start, end),
                ner,
                start,
                end,
            });
        }
        run.clear();
    };
    for (idx, token) in tokens.iter().enumerate() {
        let capitalized = first_alpha_uppercase(&slice(token.start, token.end));
        let sentence_initial = sentence_starts.contains(&idx);
        let function_word = FUNCTION_WORDS.contains(&token.surface.as_str());
        let pronoun_i = token.surface == "i";
        let eligible = capitalized
            && !pronoun_i
            && !(sentence_initial && function_word)
            && !claimed
                .iter()
                .any(|&(s, e)| token.start < e && s < token.end);
        let adjacent = run.last().is_none_or(|&prev| prev + 1 == idx);
        if eligible && adjacent {
            run.push(idx);
        } else {
            flush(&mut run, &mut entities);
            if eligible {
                run.push(idx);
            }
        }
    }
    flush(&mut run, &mut entities);

    entities.sort_by(|a, b| a.start.cmp(&b.start).then_with(|| a.ner.cmp(&b.ner)));
    entities
}

fn overlaps_any(claimed: &[(usize, usize)], start: usize, end: usize) -> bool {
    claimed.iter().any(|&(s, e)| start < e && s < end)
}

fn first_alpha_uppercase(word: &str) -> bool {
    word.chars()
        .find(|c| c.is_alphabetic())
        .map(|c| c.is_uppercase())
        .unwrap_or(false)
}

fn sentence_initial_tokens(text: &str, tokens: &[Token]) -> Vec<usize> {
    let mut starts = Vec::new();
    for sentence in split_sentences(text) {
        if let Some((idx, _)) = tokens
            .iter()
            .enumerate()
            .find(|(_, t)| t.start >= sentence.start && t.end <= sentence.end)
        {
            starts.push(idx);
        }
    }
    starts
}

/// The `word` fields of [`extract_entities`] filtered to one type, in
/// document order, duplicates preserved.
pub fn extract_by_type(text: &str, gazetteer: &Gazetteer, ty: EntityType) -> Vec<String> {
    extract_entities(text, gazetteer)
        .into_iter()
        .filter(|e| e.ner == ty)
        .map(|e| e.word)
        .collect()
}

/// Email addresses in document order (non-overlapping).
pub fn extract_emails(text: &str) -> Vec<String> {
    EMAIL_PATTERN
        .find_iter(text)
        .map(|m| m.as_str().to_string())
        .collect()
}

/// Dotted-quad IPv4 addresses whose octets are all in 0..=255, in document
/// order. Candidates embedded in longer digit runs are rejected whole.
pub fn extract_ips(text: &str) -> Vec<String> {
    let bytes = text.as_bytes();
    IP_CANDIDATE
        .find_iter(text)
        .filter(|m| {
            let before = m.start().checked_sub(1).map(|i| bytes[i] as char);
            let after = bytes.get(m.end()).map(|b| *b as char);
            let boundary_ok = !matches!(before, Some(c) if c.is_ascii_digit() || c == '.')
                && !matches!(after, Some(c) if c.is_ascii_digit() || c == '.');
            boundary_ok
                && m.as_str()
                    .split('.')
                    .all(|octet| octet.parse::<u16>().map(|v| v <= 255).unwrap_or(false))
        })
        .map(|m| m.as_str().to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaz(rows: &[(&str, EntityType)]) -> Gazetteer {
        Gazetteer::from_entries(rows.iter().map(|(s, t)| GazetteerEntry {
            surface: s.to_string(),
            entity_type: *t,
        }))
    }

    #[test]
    fn type_labels_parse_case_insensitively() {
        assert_eq!(EntityType::from_str("continent").unwrap(), EntityType::Continent);
        assert_eq!(EntityType::from_str("State").unwrap(), EntityType::State);
        assert_eq!(EntityType::from_str("sportev").unwrap(), EntityType::SportEv);
        assert!(EntityType::from_str("nope").is_err());
    }

    #[test]
    fn obama_block() {
        let g = gaz(&[("Honolulu", EntityType::City)]);
        let text = "Obama was born on August 4, 1961, at Gynecological Hospital in Honolulu";
        let entities = extract_entities(text, &g);
        let got: Vec<(&str, EntityType)> = entities
            .iter()
            .map(|e| (e.word.as_str(), e.ner))
            .collect();
        assert_eq!(
            got,
            vec![
                ("Obama", EntityType::Person),
                ("August 4, 1961", EntityType::Date),
                ("Gynecological Hospital", EntityType::Organization),
                ("Honolulu", EntityType::City),
            ]
        );
    }

    #[test]
    fn empty_text() {
        assert!(extract_entities("", &gaz(&[])).is_empty());
    }

    #[test]
    fn money_and_percent_patterns() {
        let entities = extract_entities("He paid $5 which is 10% of it", &gaz(&[]));
        let got: Vec<(&str, EntityType)> = entities
            .iter()
            .map(|e| (e.word.as_str(), e.ner))
            .collect();
        assert_eq!(
            got,
            vec![("$5", EntityType::Money), ("10%", EntityType::Percent)]
        );
    }

    #[test]
    fn gazetteer_beats_heuristic_and_spans_are_disjoint() {
        let g = gaz(&[("Paris", EntityType::City), ("Asia", EntityType::Continent)]);
        let entities = extract_entities("I flew from Paris to Asia", &g);
        let got: Vec<(&str, EntityType)> = entities
            .iter()
            .map(|e| (e.word.as_str(), e.ner))
            .collect();
        assert_eq!(
            got,
            vec![
                ("Paris", EntityType::City),
                ("Asia", EntityType::Continent)
            ]
        );
        for (i, a) in entities.iter().enumerate() {
            for b in entities.iter().skip(i + 1) {
                let same_span = a.start == b.start && a.end == b.end;
                let disjoint = a.end <= b.start || b.end <= a.start;
                assert!(same_span || disjoint);
            }
        }
    }

    #[test]
    fn multiword_and_longest_match() {
        let g = gaz(&[
            ("New South Wales", EntityType::State),
            ("New South", EntityType::Region),
            ("Wales", EntityType::Country),
        ]);
        let entities = extract_entities("she moved to New South Wales lately", &g);
        assert_eq!(entities.len(), 1);
        assert_eq!(entities[0].word, "New South Wales");
        assert_eq!(entities[0].ner, EntityType::State);
    }

    #[test]
    fn duplicate_surfaces_keep_all_types_at_one_span() {
        let g = gaz(&[
            ("Victoria", EntityType::State),
            ("Victoria", EntityType::City),
        ]);
        let entities = extract_entities("they visited Victoria", &g);
        assert_eq!(entities.len(), 2);
        assert_eq!(entities[0].start, entities[1].start);
        let types: Vec<EntityType> = entities.iter().map(|e| e.ner).collect();
        assert!(types.contains(&EntityType::City) && types.contains(&EntityType::State));
    }

    #[test]
    fn case_insensitive_matching() {
        let g = gaz(&[("Paris", EntityType::City)]);
        let lower = extract_entities("i saw paris", &g);
        let upper = extract_entities("i saw PARIS", &g);
        assert_eq!(lower.len(), 1);
        assert_eq!(lower[0].ner, EntityType::City);
        assert_eq!(upper.len(), 1);
        assert_eq!((lower[0].start, lower[0].end), (upper[0].start, upper[0].end));
    }

    #[test]
    fn by_type_filters_and_is_subset() {
        let g = gaz(&[("Paris", EntityType::City), ("Asia", EntityType::Continent)]);
        let text = "I flew from Paris to Asia";
        assert_eq!(extract_by_type(text, &g, EntityType::City), vec!["Paris"]);
        assert!(extract_by_type(text, &gaz(&[]), EntityType::Drug).is_empty());
        let all: Vec<String> = extract_entities(text, &g).into_iter().map(|e| e.word).collect();
        for word in extract_by_type(text, &g, EntityType::Continent) {
            assert!(all.contains(&word));
        }
    }

    #[test]
    fn company_row() {
        let g = gaz(&[("Asus", EntityType::Company)]);
        assert_eq!(
            extract_by_type("Asus makes laptops", &g, EntityType::Company),
            vec!["Asus"]
        );
    }

    #[test]
    fn sentence_initial_function_word_is_not_a_person() {
        let entities = extract_entities("The report was short. He paid cash.", &gaz(&[]));
        assert!(entities.is_empty(), "{entities:?}");
    }

    #[test]
    fn emails() {
        assert_eq!(extract_emails("mail a@b.co now"), vec!["a@b.co"]);
        assert_eq!(
            extract_emails("x first.last@sub.example.org y"),
            vec!["first.last@sub.example.org"]
        );
        assert!(extract_emails("").is_empty());
    }

    #[test]
    fn ips_respect_octet_range() {
        assert_eq!(extract_ips("256.1.1.1 10.0.0.1"), vec!["10.0.0.1"]);
        assert_eq!(extract_ips("255.255.255.255"), vec!["255.255.255.255"]);
        assert!(extract_ips("1.2.3.4.5").is_empty());
        assert!(extract_ips("").is_empty());
    }

    #[test]
    fn loader_counts_warnings_and_entries() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.txt");
        std::fs::write(&path, "Paris\tCITY\nno tab here\nAsia\tcontinent\n").unwrap();
        let g = Gazetteer::load(&path).unwrap();
        assert_eq!(g.entry_count(), 2);
        assert_eq!(g.warnings(), 1);
        assert_eq!(g.lookup("paris"), vec![EntityType::City]);
        assert_eq!(g.lookup("Paris"), g.lookup("paris"));
        assert!(Gazetteer::load(dir.path().join("missing.txt")).is_err());
    }

    #[test]
    fn empty_gazetteer_file() {
        let g = Gazetteer::parse("", "<test>").unwrap();
        assert_eq!(g.entry_count(), 0);
    }

    #[test]
    fn builtin_contains_reference_rows() {
        let g = Gazetteer::builtin();
        assert!(g.entry_count() >= 400);
        assert_eq!(g.lookup("Paris"), vec![EntityType::City]);
        assert_eq!(g.lookup("New South Wales"), vec![EntityType::State]);
        assert_eq!(g.lookup("Honolulu"), vec![EntityType::City]);
    }

    #[test]
    fn every_builtin_entry_found_when_embedded() {
        let g = Gazetteer::builtin();
        for line in BUILTIN_GAZETTEER.lines() {
            let Some((surface, type_label)) = line.split_once('\t') else {
                continue;
            };
            let expected = EntityType::from_str(type_label).unwrap();
            let text = format!("x {surface} y");
            let entities = extract_entities(&text, &g);
            assert!(
                entities.iter().any(|e| e.word == surface && e.ner == expected),
                "entry {surface:?} ({expected}) not recovered from {entities:?}"
            );
        }
    }
}
