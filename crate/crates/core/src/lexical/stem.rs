//! Two-stage suffix-stripping stemmer.
//!
//! Stage 1 removes inflection (-s/-es, then -ed/-ing, with e-restoration
//! and doubled-consonant undoing). Stage 2 removes one derivational suffix
//! when the residue keeps at least three letters. The output is stable
//! under re-stemming.

use super::LexicalError;

/// Derivational suffixes, matched longest-first.
const DERIVATIONAL: &[&str] = &[
    "fulness", "ships", "fully", "ship", "ness", "ment", "tion", "iest", "ier", "ful", "ly",
];

/// Stem a single word: lowercase, strip inflectional endings, then one
/// derivational suffix, repeated until the result is stable. The
/// fixpoint keeps re-stemming a stem a no-op (a derivational strip can
/// expose another strippable ending, e.g. feedment -> feed -> fee).
pub fn stem(word: &str) -> Result<String, LexicalError> {
    if word.is_empty() {
        return Err(LexicalError::argument("cannot stem an empty word"));
    }
    let mut w = word.to_lowercase();
    loop {
        // Terminates: every modifying pass strictly shortens the word.
        let next = stem_pass(&w);
        if next == w {
            return Ok(w);
        }
        debug_assert!(next.len() < w.len());
        w = next;
    }
}

fn stem_pass(word: &str) -> String {
    let w = strip_plural(word);
    let w = strip_ed_ing(&w);
    strip_derivational(&w)
}

fn has_vowel(s: &str) -> bool {
    s.chars().any(|c| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y'))
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn strip_plural(w: &str) -> String {
    let n = w.len();
    if !w.ends_with('s') || n < 4 {
        return w.to_string();
    }
    if w.ends_with("ss") || w.ends_with("us") || w.ends_with("is") {
        return w.to_string();
    }
    if w.ends_with("ies") {
        // studies -> study, but ties -> tie via the generic rule below.
        if n >= 5 {
            return format!("{}y", &w[..n - 3]);
        }
        return w[..n - 1].to_string();
    }
    for group in ["ches", "shes", "sses", "xes", "zes", "oes"] {
        if w.ends_with(group) {
            return w[..n - 2].to_string();
        }
    }
    w[..n - 1].to_string()
}

fn strip_ed_ing(w: &str) -> String {
    if let Some(residue) = w.strip_suffix("ing") {
        if w.len() >= 5 && residue.len() >= 2 && has_vowel(residue) {
            return repair(residue);
        }
        return w.to_string();
    }
    if w.ends_with("ed") && w.len() >= 4 {
        if let Some(residue) = w.strip_suffix("ied") {
            return format!("{residue}y"); // tried -> try
        }
        if w.ends_with("eed") {
            return w[..w.len() - 1].to_string(); // agreed -> agree
        }
        let residue = &w[..w.len() - 2];
        if residue.len() >= 2 && has_vowel(residue) {
            return repair(residue);
        }
    }
    w.to_string()
}

/// Undo consonant doubling and restore a dropped final e on short stems.
fn repair(residue: &str) -> String {
    let chars: Vec<char> = residue.chars().collect();
    let n = chars.len();
    if !chars.iter().all(|c| c.is_ascii_alphabetic()) {
        return residue.to_string();
    }
    if n >= 2 && chars[n - 1] == chars[n - 2] && !is_vowel(chars[n - 1]) {
        // running -> runn -> run; falling keeps its ll.
        if !matches!(chars[n - 1], 'l' | 's' | 'z') {
            return residue[..residue.len() - 1].to_string();
        }
        return residue.to_string();
    }
    // mak -> make, writ -> write, us -> use; longer stems stay (visit, walk).
    let cvc = n >= 3
        && !is_vowel(chars[n - 1])
        && is_vowel(chars[n - 2])
        && !is_vowel(chars[n - 3])
        && !matches!(chars[n - 1], 'w' | 'x' | 'y');
    let short_vc = n == 2 && is_vowel(chars[0]) && !is_vowel(chars[1]);
    if (cvc && n <= 4) || short_vc {
        return format!("{residue}e");
    }
    residue.to_string()
}

fn strip_derivational(w: &str) -> String {
    for suffix in DERIVATIONAL {
        if let Some(residue) = w.strip_suffix(suffix) {
            if residue.chars().count() >= 3 {
                return residue.to_string();
            }
        }
    }
    w.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(word: &str) -> String {
        stem(word).unwrap()
    }

    #[test]
    fn friendships_to_friend() {
        assert_eq!(s("friendships"), "friend");
        assert_eq!(s("friendship"), "friend");
    }

    #[test]
    fn bare_word_unchanged() {
        assert_eq!(s("cat"), "cat");
        assert_eq!(s("go"), "go");
    }

    #[test]
    fn inflection_with_repair() {
        assert_eq!(s("running"), "run");
        assert_eq!(s("hopped"), "hop");
        assert_eq!(s("making"), "make");
        assert_eq!(s("falling"), "fall");
        assert_eq!(s("walked"), "walk");
        assert_eq!(s("used"), "use");
        assert_eq!(s("agreed"), "agree");
        assert_eq!(s("tried"), "try");
        assert_eq!(s("meeting"), "meet");
        assert_eq!(s("visiting"), "visit");
    }

    #[test]
    fn plural_forms() {
        assert_eq!(s("cats"), "cat");
        assert_eq!(s("studies"), "study");
        assert_eq!(s("ties"), "tie");
        assert_eq!(s("churches"), "church");
        assert_eq!(s("classes"), "class");
        assert_eq!(s("class"), "class");
        assert_eq!(s("basis"), "basis");
        assert_eq!(s("virus"), "virus");
    }

    #[test]
    fn derivational_family() {
        assert_eq!(s("healthful"), "health");
        assert_eq!(s("healthfully"), "health");
        assert_eq!(s("healthfulness"), "health");
        assert_eq!(s("healthier"), "health");
        assert_eq!(s("healthiest"), "health");
        assert_eq!(s("quickly"), "quick");
        assert_eq!(s("government"), "govern");
        assert_eq!(s("happiness"), "happi");
    }

    #[test]
    fn residue_floor_blocks_short_strips() {
        assert_eq!(s("nation"), "nation"); // residue "na" too short
        assert_eq!(s("moment"), "moment"); // residue "mo" too short
        assert_eq!(s("ly"), "ly");
    }

    #[test]
    fn case_folding() {
        assert_eq!(s("Friendships"), "friend");
        assert_eq!(s("RUNNING"), "run");
    }

    #[test]
    fn empty_input_is_argument_error() {
        assert!(stem("").is_err());
    }

    #[test]
    fn idempotent_over_sample() {
        let words = [
            "friendships",
            "running",
            "meetings",
            "healthfulness",
            "governments",
            "happiness",
            "studies",
            "classes",
            "playfully",
            "statements",
            "relations",
            "nation",
        ];
        for word in words {
            let once = s(word);
            assert_eq!(s(&once), once, "stem not stable for {word}");
        }
    }

    #[test]
    fn idempotent_on_stacked_suffixes() {
        let stacked = format!("friend{}", "ship".repeat(12));
        let once = s(&stacked);
        assert_eq!(once, "friend");
        assert_eq!(s(&once), once);
        let wild = format!("feed{}ness{}", "ment".repeat(6), "ly".repeat(4));
        let once = s(&wild);
        assert_eq!(s(&once), once, "not stable for {wild}");
    }
}
