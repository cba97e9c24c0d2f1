//! Hand-rolled tolerant tag scanner building an element tree.

use serde::{Deserialize, Serialize};

use crate::entities;

/// An element node: lowercased tag name, attributes in source order,
/// children.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub children: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Node {
    Element(Element),
    Text(String),
}

/// A parsed document: a synthetic root holding the top-level nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HtmlDocument {
    pub root: Element,
    pub source: Option<String>,
}

impl Element {
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
    }

    /// Concatenated descendant text (script/style bodies were dropped at
    /// parse time).
    pub fn text_content(&self) -> String {
        let mut out = String::new();
        self.collect_text(&mut out);
        out
    }

    fn collect_text(&self, out: &mut String) {
        for child in &self.children {
            match child {
                Node::Text(t) => out.push_str(t),
                Node::Element(el) => el.collect_text(out),
            }
        }
    }
}

impl HtmlDocument {
    /// Every element with the given (lowercase) name, in document order.
    pub fn find_all(&self, name: &str) -> Vec<&Element> {
        let mut out = Vec::new();
        fn rec<'a>(el: &'a Element, name: &str, out: &mut Vec<&'a Element>) {
            for child in &el.children {
                if let Node::Element(e) = child {
                    if e.name == name {
                        out.push(e);
                    }
                    rec(e, name, out);
                }
            }
        }
        rec(&self.root, name, &mut out);
        out
    }

    /// Depth-first visit of every element.
    pub fn walk<F: FnMut(&Element)>(&self, visit: &mut F) {
        fn rec<F: FnMut(&Element)>(el: &Element, visit: &mut F) {
            for child in &el.children {
                if let Node::Element(e) = child {
                    visit(e);
                    rec(e, visit);
                }
            }
        }
        rec(&self.root, visit);
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }
}

const VOID_TAGS: &[&str] = &[
    "br", "img", "hr", "meta", "link", "input", "area", "base", "col", "embed", "source", "track",
    "wbr",
];

/// Tags closed implicitly when a sibling of the same name opens.
const SELF_NESTING: &[&str] = &["p", "li", "option", "tr", "td", "th"];

/// Parse any input into a document tree. Never fails.
pub fn parse(html: &str) -> HtmlDocument {
    let mut stack: Vec<Element> = vec![Element {
        name: String::new(),
        attrs: Vec::new(),
        children: Vec::new(),
    }];
    let mut i = 0;
    let len = html.len();
    let bytes = html.as_bytes();
    let mut text_start = 0;

    let flush_text = |stack: &mut Vec<Element>, from: usize, to: usize| {
        if from < to {
            let decoded = entities::decode(&html[from..to]);
            stack
                .last_mut()
                .unwrap()
                .children
                .push(Node::Text(decoded));
        }
    };

    while i < len {
        if bytes[i] != b'<' {
            i += next_char_len(html, i);
            continue;
        }
        let Some(tag) = scan(&html[i..]) else {
            i += 1; // literal '<'
            continue;
        };
        flush_text(&mut stack, text_start, i);
        match tag.kind {
            TagKind::CommentOrDecl => {}
            TagKind::Close => {
                close_tag(&mut stack, &tag.name);
            }
            TagKind::Open => {
                if SELF_NESTING.contains(&tag.name.as_str())
                    && stack.last().map(|e| e.name == tag.name).unwrap_or(false)
                {
                    pop_into_parent(&mut stack);
                }
                let element = Element {
                    name: tag.name.clone(),
                    attrs: tag.attrs,
                    children: Vec::new(),
                };
                let void = VOID_TAGS.contains(&tag.name.as_str()) || tag.self_closing;
                if void {
                    stack.last_mut().unwrap().children.push(Node::Element(element));
                } else if matches!(tag.name.as_str(), "script" | "style") {
                    // Swallow the raw body up to the matching close tag.
                    let after = i + tag.len;
                    let close = format!("</{}", tag.name);
                    let lower = html[after..].to_ascii_lowercase();
                    let end = match lower.find(&close) {
                        Some(p) => {
                            let tail = after + p;
                            html[tail..].find('>').map(|q| tail + q + 1).unwrap_or(len)
                        }
                        None => len,
                    };
                    stack.last_mut().unwrap().children.push(Node::Element(element));
                    i = end;
                    text_start = i;
                    continue;
                } else {
                    stack.push(element);
                }
            }
        }
        i += tag.len;
        text_start = i;
    }
    flush_text(&mut stack, text_start, len);
    // Close everything still open at end of input.
    while stack.len() > 1 {
        pop_into_parent(&mut stack);
    }
    HtmlDocument {
        root: stack.pop().unwrap(),
        source: None,
    }
}

fn pop_into_parent(stack: &mut Vec<Element>) {
    let el = stack.pop().expect("non-empty stack");
    stack
        .last_mut()
        .expect("root always present")
        .children
        .push(Node::Element(el));
}

/// Close the innermost matching open element, auto-closing anything opened
/// inside it. A close tag with no matching open element is ignored.
fn close_tag(stack: &mut Vec<Element>, name: &str) {
    let Some(depth) = stack.iter().rposition(|el| el.name == name) else {
        return;
    };
    if depth == 0 {
        return; // never close the synthetic root
    }
    while stack.len() > depth {
        pop_into_parent(stack);
    }
}

enum TagKind {
    Open,
    Close,
    CommentOrDecl,
}

struct Tag {
    kind: TagKind,
    name: String,
    attrs: Vec<(String, String)>,
    self_closing: bool,
    len: usize,
}

/// Scan one construct starting at `<`; `None` means the `<` is text.
fn scan(s: &str) -> Option<Tag> {
    let bytes = s.as_bytes();
    if bytes.len() < 2 {
        return None;
    }
    if s.starts_with("<!--") {
        let len = s.find("-->").map(|p| p + 3).unwrap_or(s.len());
        return Some(Tag {
            kind: TagKind::CommentOrDecl,
            name: String::new(),
            attrs: Vec::new(),
            self_closing: false,
            len,
        });
    }
    if bytes[1] == b'!' || bytes[1] == b'?' {
        let len = s.find('>').map(|p| p + 1).unwrap_or(s.len());
        return Some(Tag {
            kind: TagKind::CommentOrDecl,
            name: String::new(),
            attrs: Vec::new(),
            self_closing: false,
            len,
        });
    }
    let (is_close, mut at) = if bytes[1] == b'/' { (true, 2) } else { (false, 1) };
    if at >= bytes.len() || !bytes[at].is_ascii_alphabetic() {
        return None;
    }
    let name_start = at;
    while at < bytes.len() && (bytes[at].is_ascii_alphanumeric() || bytes[at] == b'-') {
        at += 1;
    }
    let name = s[name_start..at].to_ascii_lowercase();
    let body_end = s.find('>').unwrap_or(s.len());
    let len = if body_end == s.len() { s.len() } else { body_end + 1 };
    if is_close {
        return Some(Tag {
            kind: TagKind::Close,
            name,
            attrs: Vec::new(),
            self_closing: false,
            len,
        });
    }
    let body = &s[at..body_end.min(s.len())];
    let self_closing = body.trim_end().ends_with('/');
    let attrs = parse_attrs(body);
    Some(Tag {
        kind: TagKind::Open,
        name,
        attrs,
        self_closing,
        len,
    })
}

fn parse_attrs(body: &str) -> Vec<(String, String)> {
    let mut attrs = Vec::new();
    let chars: Vec<char> = body.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        while i < chars.len() && !is_attr_name_char(chars[i]) {
            i += 1;
        }
        let name_start = i;
        while i < chars.len() && is_attr_name_char(chars[i]) {
            i += 1;
        }
        if name_start == i {
            break;
        }
        let name: String = chars[name_start..i].iter().collect::<String>().to_ascii_lowercase();
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        let mut value = String::new();
        if i < chars.len() && chars[i] == '=' {
            i += 1;
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '"' || chars[i] == '\'') {
                let quote = chars[i];
                i += 1;
                let start = i;
                while i < chars.len() && chars[i] != quote {
                    i += 1;
                }
                value = chars[start..i].iter().collect();
                i += 1; // past the closing quote
            } else {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && chars[i] != '/' {
                    i += 1;
                }
                value = chars[start..i].iter().collect();
            }
        }
        if name != "/" {
            attrs.push((name, entities::decode(&value)));
        }
    }
    attrs
}

fn is_attr_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == ':'
}

fn next_char_len(s: &str, at: usize) -> usize {
    s[at..].chars().next().map(char::len_utf8).unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(children: &[Node]) -> Vec<&str> {
        children
            .iter()
            .filter_map(|n| match n {
                Node::Element(e) => Some(e.name.as_str()),
                Node::Text(_) => None,
            })
            .collect()
    }

    #[test]
    fn sibling_paragraphs_auto_close() {
        let doc = parse("<p>a<p>b");
        assert_eq!(names(&doc.root.children), vec!["p", "p"]);
    }

    #[test]
    fn empty_input() {
        let doc = parse("");
        assert!(doc.root.children.is_empty());
    }

    #[test]
    fn nested_well_formed() {
        let doc = parse("<div><b>x</b></div>");
        let div = doc.find_all("div");
        assert_eq!(div.len(), 1);
        assert_eq!(names(&div[0].children), vec!["b"]);
        assert_eq!(div[0].text_content(), "x");
    }

    #[test]
    fn tag_names_lowercased_and_attrs_parsed() {
        let doc = parse("<IMG SRC='x.png' alt=\"An image\" data-x=1>");
        let img = &doc.find_all("img")[0];
        assert_eq!(img.attr("src"), Some("x.png"));
        assert_eq!(img.attr("alt"), Some("An image"));
        assert_eq!(img.attr("data-x"), Some("1"));
    }

    #[test]
    fn script_bodies_never_reach_text() {
        let doc = parse("<div>a<script>if (x < 2) alert('<p>')</script>b</div>");
        assert_eq!(doc.find_all("div")[0].text_content(), "ab");
        assert!(doc.find_all("p").is_empty());
    }

    #[test]
    fn stray_close_ignored_and_unclosed_autoclosed() {
        let doc = parse("</b><div><i>x");
        assert_eq!(names(&doc.root.children), vec!["div"]);
        assert_eq!(doc.find_all("i")[0].text_content(), "x");
    }

    #[test]
    fn any_bytes_parse() {
        for junk in ["<", "<<<>", "a<b c<", "<!doctype html><x", "< p>hmm</ p>", "\u{fffd}<>"] {
            let _ = parse(junk);
        }
    }

    #[test]
    fn entities_decoded_in_text() {
        let doc = parse("<p>a&amp;b &#65;</p>");
        assert_eq!(doc.find_all("p")[0].text_content(), "a&b A");
    }
}
