//! Part-of-speech tagging over a word lexicon with suffix fallback rules,
//! plus phrase chunking and quotation tagging.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LexicalError;
use crate::text::tokenize_with_punct;

/// Coarse part-of-speech tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    Pron,
    Det,
    Prep,
    Conj,
    Num,
    Interj,
    Punct,
    Other,
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "NOUN" => Ok(PosTag::Noun),
            "VERB" => Ok(PosTag::Verb),
            "ADJ" => Ok(PosTag::Adj),
            "ADV" => Ok(PosTag::Adv),
            "PRON" => Ok(PosTag::Pron),
            "DET" => Ok(PosTag::Det),
            "PREP" => Ok(PosTag::Prep),
            "CONJ" => Ok(PosTag::Conj),
            "NUM" => Ok(PosTag::Num),
            "INTERJ" => Ok(PosTag::Interj),
            "PUNCT" => Ok(PosTag::Punct),
            "OTHER" => Ok(PosTag::Other),
            other => Err(format!("unknown POS tag {other:?}")),
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PosTag::Noun => "NOUN",
            PosTag::Verb => "VERB",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Pron => "PRON",
            PosTag::Det => "DET",
            PosTag::Prep => "PREP",
            PosTag::Conj => "CONJ",
            PosTag::Num => "NUM",
            PosTag::Interj => "INTERJ",
            PosTag::Punct => "PUNCT",
            PosTag::Other => "OTHER",
        };
        f.write_str(name)
    }
}

/// A token with its assigned tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub word_part: String,
    pub tag: PosTag,
}

/// word -> ordered candidate tags (most frequent first), plus suffix rules
/// applied to unknown words (longest suffix wins).
#[derive(Debug, Clone)]
pub struct PosLexicon {
    words: HashMap<String, Vec<PosTag>>,
    suffixes: Vec<(String, PosTag)>,
}

const DEFAULT_LEXICON: &str = include_str!("../../resources/pos_lexicon.tsv");
const DEFAULT_SUFFIX_RULES: &str = include_str!("../../resources/pos_suffix_rules.tsv");

impl PosLexicon {
    /// The lexicon shipped with the crate.
    pub fn builtin() -> Self {
        PosLexicon::parse(DEFAULT_LEXICON, DEFAULT_SUFFIX_RULES, "<builtin>")
            .expect("bundled POS lexicon is valid")
    }

    /// Load from TSV files: `word<TAB>tag1,tag2,...` and `suffix<TAB>tag`.
    pub fn from_files(
        words_path: impl AsRef<Path>,
        suffixes_path: impl AsRef<Path>,
    ) -> Result<Self, LexicalError> {
        let words_path = words_path.as_ref();
        let suffixes_path = suffixes_path.as_ref();
        let words = std::fs::read_to_string(words_path)
            .map_err(|e| LexicalError::io(words_path, e))?;
        let suffixes = std::fs::read_to_string(suffixes_path)
            .map_err(|e| LexicalError::io(suffixes_path, e))?;
        PosLexicon::parse(&words, &suffixes, &words_path.display().to_string())
    }

    fn parse(words_tsv: &str, suffixes_tsv: &str, origin: &str) -> Result<Self, LexicalError> {
        let mut words = HashMap::new();
        for (lineno, line) in words_tsv.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tags) = line.split_once('\t').ok_or_else(|| LexicalError::Parse {
                path: origin.to_string(),
                line: lineno + 1,
                message: "expected word<TAB>tags".to_string(),
            })?;
            let tags: Result<Vec<PosTag>, _> = tags
                .split(',')
                .map(|t| PosTag::from_str(t.trim()))
                .collect();
            let tags = tags.map_err(|message| LexicalError::Parse {
                path: origin.to_string(),
                line: lineno + 1,
                message,
            })?;
            if tags.is_empty() {
                return Err(LexicalError::Parse {
                    path: origin.to_string(),
                    line: lineno + 1,
                    message: "every word needs at least one tag".to_string(),
                });
            }
            words.insert(word.trim().to_lowercase(), tags);
        }
        let mut suffixes = Vec::new();
        for (lineno, line) in suffixes_tsv.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (suffix, tag) = line.split_once('\t').ok_or_else(|| LexicalError::Parse {
                path: origin.to_string(),
                line: lineno + 1,
                message: "expected suffix<TAB>tag".to_string(),
            })?;
            let tag = PosTag::from_str(tag.trim()).map_err(|message| LexicalError::Parse {
                path: origin.to_string(),
                line: lineno + 1,
                message,
            })?;
            suffixes.push((suffix.trim().to_lowercase(), tag));
        }
        // Longest suffix first so "-fully" wins over "-ly".
        suffixes.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        Ok(PosLexicon { words, suffixes })
    }

    pub fn tags(&self, word: &str) -> Option<&[PosTag]> {
        self.words.get(&word.to_lowercase()).map(Vec::as_slice)
    }

    fn suffix_tag(&self, word: &str) -> Option<PosTag> {
        let lower = word.to_lowercase();
        self.suffixes
            .iter()
            .find(|(suffix, _)| lower.len() > suffix.len() && lower.ends_with(suffix))
            .map(|(_, tag)| *tag)
    }
}

/// Tag every token of `text` (stopwords retained, punctuation tagged
/// PUNCT). Known words take their first lexicon tag, except that a word
/// directly after a determiner that could be a noun is tagged NOUN.
/// Unknown words fall back to the longest matching suffix rule, then NOUN.
pub fn tag_pos(text: &str, lexicon: &PosLexicon) -> Vec<TaggedToken> {
    let mut out: Vec<TaggedToken> = Vec::new();
    let mut prev_tag: Option<PosTag> = None;
    for token in tokenize_with_punct(text) {
        let tag = if !token.is_word {
            PosTag::Punct
        } else if token.text.chars().all(|c| c.is_ascii_digit()) {
            PosTag::Num
        } else {
            match lexicon.tags(&token.text) {
                Some(tags) => {
                    if prev_tag == Some(PosTag::Det) && tags.contains(&PosTag::Noun) {
                        PosTag::Noun
                    } else {
                        tags[0]
                    }
                }
                None => lexicon.suffix_tag(&token.text).unwrap_or(PosTag::Noun),
            }
        };
        prev_tag = Some(tag);
        out.push(TaggedToken {
            word_part: token.text,
            tag,
        });
    }
    out
}

/// The word parts of [`tag_pos`] filtered to one open class.
pub fn extract_pos_class(
    text: &str,
    lexicon: &PosLexicon,
    class: PosTag,
) -> Result<Vec<String>, LexicalError> {
    if !matches!(class, PosTag::Noun | PosTag::Verb | PosTag::Adj | PosTag::Adv) {
        return Err(LexicalError::argument(format!(
            "unsupported POS class {class}; expected NOUN, VERB, ADJ or ADV"
        )));
    }
    Ok(tag_pos(text, lexicon)
        .into_iter()
        .filter(|t| t.tag == class)
        .map(|t| t.word_part)
        .collect())
}

/// Chunk labels: noun phrase, verb phrase, or everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChunkLabel {
    #[serde(rename = "NP")]
    Np,
    #[serde(rename = "VP")]
    Vp,
    #[serde(rename = "O")]
    Other,
}

impl fmt::Display for ChunkLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChunkLabel::Np => write!(f, "NP"),
            ChunkLabel::Vp => write!(f, "VP"),
            ChunkLabel::Other => write!(f, "O"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chunk {
    pub label: ChunkLabel,
    pub tokens: Vec<TaggedToken>,
}

/// A flat sequence of labelled chunks partitioning the token sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChunkTree {
    pub chunks: Vec<Chunk>,
}

impl ChunkTree {
    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }
}

/// Greedy chunking: `DET? ADJ* NOUN+` becomes NP, `ADV* VERB+` becomes VP,
/// everything else groups into O chunks.
pub fn extract_phrases(text: &str, lexicon: &PosLexicon) -> ChunkTree {
    let tagged = tag_pos(text, lexicon);
    let mut chunks: Vec<Chunk> = Vec::new();
    let mut i = 0;
    while i < tagged.len() {
        if let Some(end) = match_np(&tagged, i) {
            chunks.push(Chunk {
                label: ChunkLabel::Np,
                tokens: tagged[i..end].to_vec(),
            });
            i = end;
        } else if let Some(end) = match_vp(&tagged, i) {
            chunks.push(Chunk {
                label: ChunkLabel::Vp,
                tokens: tagged[i..end].to_vec(),
            });
            i = end;
        } else {
            match chunks.last_mut() {
                Some(chunk) if chunk.label == ChunkLabel::Other => {
                    chunk.tokens.push(tagged[i].clone())
                }
                _ => chunks.push(Chunk {
                    label: ChunkLabel::Other,
                    tokens: vec![tagged[i].clone()],
                }),
            }
            i += 1;
        }
    }
    ChunkTree { chunks }
}

fn match_np(tagged: &[TaggedToken], mut i: usize) -> Option<usize> {
    if tagged.get(i).map(|t| t.tag) == Some(PosTag::Det) {
        i += 1;
    }
    while tagged.get(i).map(|t| t.tag) == Some(PosTag::Adj) {
        i += 1;
    }
    let nouns_start = i;
    while tagged.get(i).map(|t| t.tag) == Some(PosTag::Noun) {
        i += 1;
    }
    (i > nouns_start).then_some(i)
}

fn match_vp(tagged: &[TaggedToken], mut i: usize) -> Option<usize> {
    while tagged.get(i).map(|t| t.tag) == Some(PosTag::Adv) {
        i += 1;
    }
    let verbs_start = i;
    while tagged.get(i).map(|t| t.tag) == Some(PosTag::Verb) {
        i += 1;
    }
    (i > verbs_start).then_some(i)
}

/// Tag the text spans between paired double quotes. An unpaired final
/// quote is ignored.
pub fn extract_quotation(text: &str, lexicon: &PosLexicon) -> Vec<TaggedToken> {
    let chars: Vec<char> = text.chars().collect();
    let quote_positions: Vec<usize> = chars
        .iter()
        .enumerate()
        .filter(|(_, c)| **c == '"')
        .map(|(i, _)| i)
        .collect();
    let mut out = Vec::new();
    for pair in quote_positions.chunks(2) {
        if let [open, close] = pair {
            let span: String = chars[open + 1..*close].iter().collect();
            out.extend(tag_pos(&span, lexicon));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex() -> PosLexicon {
        PosLexicon::builtin()
    }

    #[test]
    fn tags_known_words() {
        let tags = tag_pos("the cat runs", &lex());
        let got: Vec<(&str, PosTag)> = tags.iter().map(|t| (t.word_part.as_str(), t.tag)).collect();
        assert_eq!(
            got,
            vec![
                ("the", PosTag::Det),
                ("cat", PosTag::Noun),
                ("runs", PosTag::Verb)
            ]
        );
    }

    #[test]
    fn empty_text() {
        assert!(tag_pos("", &lex()).is_empty());
    }

    #[test]
    fn unknown_word_uses_suffix_rule() {
        let tags = tag_pos("glorbly", &lex());
        assert_eq!(tags[0].tag, PosTag::Adv);
        let tags = tag_pos("zorblation", &lex());
        assert_eq!(tags[0].tag, PosTag::Noun);
        // No matching suffix defaults to NOUN.
        assert_eq!(tag_pos("xyzzq", &lex())[0].tag, PosTag::Noun);
    }

    #[test]
    fn determiner_context_prefers_noun() {
        // "sleep" lists VERB first but follows a determiner here.
        let tags = tag_pos("the sleep helps", &lex());
        assert_eq!(tags[1].tag, PosTag::Noun);
    }

    #[test]
    fn punctuation_and_numbers() {
        let tags = tag_pos("wait, 42 dogs!", &lex());
        let got: Vec<PosTag> = tags.iter().map(|t| t.tag).collect();
        assert_eq!(
            got,
            vec![
                PosTag::Verb,
                PosTag::Punct,
                PosTag::Num,
                PosTag::Noun,
                PosTag::Punct
            ]
        );
    }

    #[test]
    fn output_length_matches_token_count() {
        let text = "The big cat, which slept soundly, ignored 3 dogs!";
        assert_eq!(
            tag_pos(text, &lex()).len(),
            crate::text::tokenize_with_punct(text).len()
        );
    }

    #[test]
    fn pos_class_filters() {
        assert_eq!(
            extract_pos_class("the cat runs", &lex(), PosTag::Verb).unwrap(),
            vec!["runs"]
        );
        assert_eq!(
            extract_pos_class("big red ball", &lex(), PosTag::Adj).unwrap(),
            vec!["big", "red"]
        );
        assert!(extract_pos_class("", &lex(), PosTag::Noun).unwrap().is_empty());
        assert!(extract_pos_class("x", &lex(), PosTag::Punct).is_err());
    }

    #[test]
    fn pos_class_is_subset_of_tagging() {
        let text = "the big cat runs quickly";
        let all: Vec<String> = tag_pos(text, &lex()).into_iter().map(|t| t.word_part).collect();
        for class in [PosTag::Noun, PosTag::Verb, PosTag::Adj, PosTag::Adv] {
            for word in extract_pos_class(text, &lex(), class).unwrap() {
                assert!(all.contains(&word));
            }
        }
    }

    #[test]
    fn chunking_examples() {
        let tree = extract_phrases("the big cat runs", &lex());
        let shape: Vec<(ChunkLabel, Vec<&str>)> = tree
            .chunks
            .iter()
            .map(|c| {
                (
                    c.label,
                    c.tokens.iter().map(|t| t.word_part.as_str()).collect(),
                )
            })
            .collect();
        assert_eq!(
            shape,
            vec![
                (ChunkLabel::Np, vec!["the", "big", "cat"]),
                (ChunkLabel::Vp, vec!["runs"]),
            ]
        );

        assert!(extract_phrases("", &lex()).is_empty());

        let tree = extract_phrases("cats sleep soundly", &lex());
        let labels: Vec<ChunkLabel> = tree.chunks.iter().map(|c| c.label).collect();
        assert_eq!(labels, vec![ChunkLabel::Np, ChunkLabel::Vp, ChunkLabel::Other]);
    }

    #[test]
    fn chunks_cover_all_tokens_in_order() {
        let text = "the quick dog saw a very old friend yesterday!";
        let tagged = tag_pos(text, &lex());
        let tree = extract_phrases(text, &lex());
        let flattened: Vec<TaggedToken> = tree.chunks.into_iter().flat_map(|c| c.tokens).collect();
        assert_eq!(flattened, tagged);
    }

    #[test]
    fn quotation_spans() {
        let tags = extract_quotation("he said \"cats sleep\"", &lex());
        let words: Vec<&str> = tags.iter().map(|t| t.word_part.as_str()).collect();
        assert_eq!(words, vec!["cats", "sleep"]);

        assert!(extract_quotation("no quotes", &lex()).is_empty());

        let tags = extract_quotation("\"a\" and \"b\"", &lex());
        let words: Vec<&str> = tags.iter().map(|t| t.word_part.as_str()).collect();
        assert_eq!(words, vec!["a", "b"]);

        // Unpaired trailing quote ignored.
        let tags = extract_quotation("\"a\" oops \"", &lex());
        let words: Vec<&str> = tags.iter().map(|t| t.word_part.as_str()).collect();
        assert_eq!(words, vec!["a"]);
    }
}
