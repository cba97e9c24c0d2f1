//! Character-entity decoding shared by the format stripper and the HTML parser.

/// Named entities we decode. Anything unknown is left verbatim.
const NAMED: &[(&str, &str)] = &[
    ("amp", "&"),
    ("lt", "<"),
    ("gt", ">"),
    ("quot", "\""),
    ("apos", "'"),
    ("nbsp", " "),
    ("copy", "\u{a9}"),
    ("reg", "\u{ae}"),
    ("trade", "\u{2122}"),
    ("hellip", "\u{2026}"),
    ("mdash", "\u{2014}"),
    ("ndash", "\u{2013}"),
    ("lsquo", "\u{2018}"),
    ("rsquo", "\u{2019}"),
    ("ldquo", "\u{201c}"),
    ("rdquo", "\u{201d}"),
];

/// Decode `&name;`, `&#NN;` and `&#xHH;` references in `input`.
pub fn decode(input: &str) -> String {
    if !input.contains('&') {
        return input.to_string();
    }
    let mut out = String::with_capacity(input.len());
    let mut rest = input;
    while let Some(pos) = rest.find('&') {
        out.push_str(&rest[..pos]);
        rest = &rest[pos..];
        match decode_one(rest) {
            Some((decoded, consumed)) => {
                out.push_str(decoded);
                rest = &rest[consumed..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

/// Try to decode one entity at the start of `s` (which begins with `&`).
/// Returns the replacement text and the number of bytes consumed.
fn decode_one(s: &str) -> Option<(&'static str, usize)> {
    let end = s[1..].find(';')? + 1;
    let body = &s[1..end];
    if body.is_empty() || body.len() > 10 {
        return None;
    }
    if let Some(num) = body.strip_prefix('#') {
        let code = if let Some(hex) = num.strip_prefix('x').or_else(|| num.strip_prefix('X')) {
            u32::from_str_radix(hex, 16).ok()?
        } else {
            num.parse::<u32>().ok()?
        };
        let ch = char::from_u32(code)?;
        // Leak-free static storage is not worth it for one char; use a
        // small cache of common cases and fall back to allocation via
        // the caller when needed.
        return Some((leak_char(ch), end + 1));
    }
    NAMED
        .iter()
        .find(|(name, _)| *name == body)
        .map(|(_, rep)| (*rep, end + 1))
}

/// Numeric references are rare; interning the handful of distinct chars a
/// document uses keeps `decode_one` allocation-free on the hot path.
fn leak_char(ch: char) -> &'static str {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: once_cell::sync::Lazy<Mutex<HashMap<char, &'static str>>> =
        once_cell::sync::Lazy::new(|| Mutex::new(HashMap::new()));
    let mut cache = CACHE.lock().unwrap();
    cache
        .entry(ch)
        .or_insert_with(|| Box::leak(ch.to_string().into_boxed_str()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_and_numeric() {
        assert_eq!(decode("a&amp;b"), "a&b");
        assert_eq!(decode("&lt;p&gt;"), "<p>");
        assert_eq!(decode("&#65;&#x42;"), "AB");
    }

    #[test]
    fn unknown_left_verbatim() {
        assert_eq!(decode("&bogus; & x"), "&bogus; & x");
        assert_eq!(decode("a & b"), "a & b");
    }
}
