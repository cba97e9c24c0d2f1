//! Edit-distance, Jaro, Soundex, q-gram and token-set metrics.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SimilarityError;
use crate::text::tokenize_all;

/// Minimal number of edits turning `a` into `b`. With
/// `allow_transposition`, swapping two adjacent characters counts as a
/// single edit.
pub fn levenshtein(a: &str, b: &str, allow_transposition: bool) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let (n, m) = (a.len(), b.len());
    if n == 0 {
        return m;
    }
    if m == 0 {
        return n;
    }
    // Rolling rows; keep one extra row for the transposition lookback.
    let mut prev2 = vec![0usize; m + 1];
    let mut prev: Vec<usize> = (0..=m).collect();
    let mut cur = vec![0usize; m + 1];
    for i in 1..=n {
        cur[0] = i;
        for j in 1..=m {
            let cost = usize::from(a[i - 1] != b[j - 1]);
            let mut best = (prev[j] + 1).min(cur[j - 1] + 1).min(prev[j - 1] + cost);
            if allow_transposition && i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]
            {
                best = best.min(prev2[j - 2] + 1);
            }
            cur[j] = best;
        }
        std::mem::swap(&mut prev2, &mut prev);
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// `1 - d / max(|a|, |b|)`; two empty strings are fully similar.
pub fn levenshtein_normalized(a: &str, b: &str, allow_transposition: bool) -> f64 {
    let max_len = a.chars().count().max(b.chars().count());
    if max_len == 0 {
        return 1.0;
    }
    1.0 - levenshtein(a, b, allow_transposition) as f64 / max_len as f64
}

/// Standard Jaro similarity in `[0, 1]`, case-insensitive.
pub fn jaro(a: &str, b: &str) -> f64 {
    let a: Vec<char> = a.to_lowercase().chars().collect();
    let b: Vec<char> = b.to_lowercase().chars().collect();
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut a_matched = vec![false; a.len()];
    let mut b_matched = vec![false; b.len()];
    let mut matches = 0usize;
    for (i, ca) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        for j in lo..hi {
            if !b_matched[j] && b[j] == *ca {
                a_matched[i] = true;
                b_matched[j] = true;
                matches += 1;
                break;
            }
        }
    }
    if matches == 0 {
        return 0.0;
    }
    let mut transpositions = 0usize;
    let mut k = 0usize;
    for (i, matched) in a_matched.iter().enumerate() {
        if !matched {
            continue;
        }
        while !b_matched[k] {
            k += 1;
        }
        if a[i] != b[k] {
            transpositions += 1;
        }
        k += 1;
    }
    let m = matches as f64;
    let t = (transpositions / 2) as f64;
    (m / a.len() as f64 + m / b.len() as f64 + (m - t) / m) / 3.0
}

/// A Soundex code: one uppercase letter followed by three digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SoundexCode(String);

impl SoundexCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SoundexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn soundex_digit(c: u8) -> Option<u8> {
    match c {
        b'b' | b'f' | b'p' | b'v' => Some(b'1'),
        b'c' | b'g' | b'j' | b'k' | b'q' | b's' | b'x' | b'z' => Some(b'2'),
        b'd' | b't' => Some(b'3'),
        b'l' => Some(b'4'),
        b'm' | b'n' => Some(b'5'),
        b'r' => Some(b'6'),
        _ => None,
    }
}

/// Classic Soundex. Non-letters are ignored; a word without any ASCII
/// letter is an argument error.
pub fn soundex(word: &str) -> Result<SoundexCode, SimilarityError> {
    let letters: Vec<u8> = word
        .chars()
        .filter(|c| c.is_ascii_alphabetic())
        .map(|c| c.to_ascii_lowercase() as u8)
        .collect();
    if letters.is_empty() {
        return Err(SimilarityError::argument(format!(
            "soundex requires at least one ASCII letter, got {word:?}"
        )));
    }
    let mut code = String::with_capacity(4);
    code.push(letters[0].to_ascii_uppercase() as char);
    let mut last_digit = soundex_digit(letters[0]);
    for &c in &letters[1..] {
        match soundex_digit(c) {
            Some(d) => {
                if last_digit != Some(d) {
                    code.push(d as char);
                    if code.len() == 4 {
                        break;
                    }
                }
                last_digit = Some(d);
            }
            None => {
                // h and w are transparent: a repeated code across them is
                // still collapsed. Vowels reset the run.
                if c != b'h' && c != b'w' {
                    last_digit = None;
                }
            }
        }
    }
    while code.len() < 4 {
        code.push('0');
    }
    Ok(SoundexCode(code))
}

/// Token-wise Soundex match: 1 when any token of `a` shares a code with
/// any token of `b`, else 0.
pub fn soundex_sim(a: &str, b: &str) -> Result<f64, SimilarityError> {
    let codes = |s: &str| -> Result<Vec<SoundexCode>, SimilarityError> {
        let codes: Vec<SoundexCode> = tokenize_all(s)
            .iter()
            .filter_map(|t| soundex(&t.surface).ok())
            .collect();
        if codes.is_empty() {
            return Err(SimilarityError::argument(format!(
                "soundex_sim requires at least one ASCII letter in {s:?}"
            )));
        }
        Ok(codes)
    };
    let left = codes(a)?;
    let right: HashSet<SoundexCode> = codes(b)?.into_iter().collect();
    Ok(if left.iter().any(|c| right.contains(c)) {
        1.0
    } else {
        0.0
    })
}

/// Jaccard similarity over the sets of q-grams, with `q - 1` boundary
/// markers (`#`) padded on each side of both strings.
pub fn qgram(a: &str, b: &str, q: usize) -> Result<f64, SimilarityError> {
    if q < 1 {
        return Err(SimilarityError::argument("q must be >= 1"));
    }
    let grams = |s: &str| -> HashSet<Vec<char>> {
        let pad: Vec<char> = std::iter::repeat_n('#', q - 1).collect();
        let mut chars = pad.clone();
        chars.extend(s.chars());
        chars.extend(pad);
        chars.windows(q).map(|w| w.to_vec()).collect()
    };
    Ok(jaccard_sets(&grams(a), &grams(b)))
}

/// `|A ∩ B| / |A ∪ B|`; 1 when both sets are empty.
pub fn jaccard_sets<T: std::hash::Hash + Eq>(a: &HashSet<T>, b: &HashSet<T>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let inter = a.intersection(b).count() as f64;
    let union = (a.len() + b.len()) as f64 - inter;
    inter / union
}

/// `2|A ∩ B| / (|A| + |B|)`; 1 when both sets are empty.
pub fn dice_sets<T: std::hash::Hash + Eq>(a: &HashSet<T>, b: &HashSet<T>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let inter = a.intersection(b).count() as f64;
    2.0 * inter / (a.len() + b.len()) as f64
}

fn token_set(s: &str) -> HashSet<String> {
    tokenize_all(s).into_iter().map(|t| t.surface).collect()
}

/// Jaccard similarity of the token sets of two texts.
pub fn jaccard_tokens(a: &str, b: &str) -> f64 {
    jaccard_sets(&token_set(a), &token_set(b))
}

/// Dice similarity of the token sets of two texts.
pub fn dice_tokens(a: &str, b: &str) -> f64 {
    dice_sets(&token_set(a), &token_set(b))
}

/// Count of positions at which two equal-length strings differ.
pub fn hamming(a: &str, b: &str) -> Result<usize, SimilarityError> {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.len() != b.len() {
        return Err(SimilarityError::argument(format!(
            "hamming requires equal lengths, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(&b).filter(|(x, y)| x != y).count())
}
