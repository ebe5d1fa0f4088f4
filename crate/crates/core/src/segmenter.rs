//! Tokenization and span-exact segmentation of text.
//!
//! All offsets are in Unicode scalar values (`char`s) of the decoded text, not
//! bytes. [`SourceText`] converts them back to string slices.

use std::fmt;
use std::num::NonZeroUsize;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Half-open character range `[start, end)` into a source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TextSpan {
    pub start: usize,
    pub end: usize,
}

impl TextSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start < end, "empty span {start}..{end}");
        TextSpan { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    pub fn contains(&self, other: &TextSpan) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for TextSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// A text with a char-offset → byte-offset table, for O(1) span slicing.
#[derive(Debug, Clone)]
pub struct SourceText<'a> {
    text: &'a str,
    // byte offset of every char, plus a trailing entry for text.len()
    offsets: Vec<usize>,
}

impl<'a> SourceText<'a> {
    pub fn new(text: &'a str) -> Self {
        let mut offsets: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
        offsets.push(text.len());
        SourceText { text, offsets }
    }

    pub fn as_str(&self) -> &'a str {
        self.text
    }

    /// Length in characters.
    pub fn char_len(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Panics if the span runs past the end of the text.
    pub fn slice(&self, span: TextSpan) -> &'a str {
        &self.text[self.offsets[span.start]..self.offsets[span.end]]
    }

    pub fn byte_range(&self, span: TextSpan) -> Range<usize> {
        self.offsets[span.start]..self.offsets[span.end]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub span: TextSpan,
    pub surface: String,
    pub normalized: String,
}

/// Unit of text aggregation, from finest to coarsest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Granularity {
    Word,
    /// Consecutive non-overlapping groups of `n` tokens.
    Window(NonZeroUsize),
    Sentence,
    Paragraph,
    Document,
}

impl Granularity {
    pub fn window(n: usize) -> Option<Self> {
        NonZeroUsize::new(n).map(Granularity::Window)
    }
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Granularity::Word => f.write_str("word"),
            Granularity::Window(n) => write!(f, "window:{n}"),
            Granularity::Sentence => f.write_str("sentence"),
            Granularity::Paragraph => f.write_str("paragraph"),
            Granularity::Document => f.write_str("document"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid granularity {0:?}: expected word, window:<n> (n >= 1), sentence, paragraph or document")]
pub struct GranularityParseError(pub String);

impl FromStr for Granularity {
    type Err = GranularityParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GranularityParseError(s.to_string());
        match s {
            "word" => Ok(Granularity::Word),
            "sentence" => Ok(Granularity::Sentence),
            "paragraph" => Ok(Granularity::Paragraph),
            "document" => Ok(Granularity::Document),
            _ => {
                let n = s.strip_prefix("window:").ok_or_else(err)?;
                n.parse::<NonZeroUsize>()
                    .map(Granularity::Window)
                    .map_err(|_| err())
            }
        }
    }
}

impl Serialize for Granularity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Granularity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub span: TextSpan,
    pub level: Granularity,
    /// Indices into the token list of the whole text.
    pub token_range: Range<usize>,
}

fn is_joiner(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-')
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '\u{2026}')
}

fn is_closer(c: char) -> bool {
    matches!(
        c,
        '"' | '\'' | ')' | ']' | '}' | '\u{201D}' | '\u{2019}' | '\u{00BB}'
    )
}

/// Maximal runs of alphabetic characters; `'`, `’` and `-` are kept when they
/// sit between two letters.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    tokenize_chars(&chars)
}

fn tokenize_chars(chars: &[char]) -> Vec<Token> {
    let mut tokens = Vec::new();
    let n = chars.len();
    let mut i = 0;
    while i < n {
        if !chars[i].is_alphabetic() {
            i += 1;
            continue;
        }
        let start = i;
        i += 1;
        loop {
            if i < n && chars[i].is_alphabetic() {
                i += 1;
            } else if i + 1 < n && is_joiner(chars[i]) && chars[i + 1].is_alphabetic() {
                i += 2;
            } else {
                break;
            }
        }
        let surface: String = chars[start..i].iter().collect();
        let normalized = surface.to_lowercase();
        tokens.push(Token {
            span: TextSpan::new(start, i),
            surface,
            normalized,
        });
    }
    tokens
}

/// Paragraphs are runs of non-blank lines; a blank line holds only whitespace.
/// Spans are trimmed of surrounding whitespace.
pub fn split_paragraphs(text: &str) -> Vec<TextSpan> {
    let chars: Vec<char> = text.chars().collect();
    paragraphs_chars(&chars)
}

fn paragraphs_chars(chars: &[char]) -> Vec<TextSpan> {
    let mut out = Vec::new();
    let mut current: Option<TextSpan> = None;
    let mut line_start = 0;

    let mut close_line = |line: &[char], offset: usize, current: &mut Option<TextSpan>| {
        let first = line.iter().position(|c| !c.is_whitespace());
        match first {
            None => {
                if let Some(p) = current.take() {
                    out.push(p);
                }
            }
            Some(first) => {
                let last = line.iter().rposition(|c| !c.is_whitespace()).unwrap();
                let end = offset + last + 1;
                match current {
                    Some(p) => p.end = end,
                    None => *current = Some(TextSpan::new(offset + first, end)),
                }
            }
        }
    };

    for (i, &c) in chars.iter().enumerate() {
        if c == '\n' {
            close_line(&chars[line_start..i], line_start, &mut current);
            line_start = i + 1;
        }
    }
    close_line(&chars[line_start..], line_start, &mut current);
    if let Some(p) = current {
        out.push(p);
    }
    out
}

/// Sentence spans, split independently inside each paragraph.
///
/// A sentence ends after a terminator (`.`, `!`, `?`, `…`) plus any closing
/// quotes or brackets, when that is followed by whitespace and an uppercase
/// letter, or by the end of the paragraph.
pub fn split_sentences(text: &str) -> Vec<TextSpan> {
    let chars: Vec<char> = text.chars().collect();
    sentences_chars(&chars, &paragraphs_chars(&chars))
}

fn sentences_chars(chars: &[char], paragraphs: &[TextSpan]) -> Vec<TextSpan> {
    let mut out = Vec::new();
    for para in paragraphs {
        let end = para.end;
        let mut start: Option<usize> = None;
        let mut i = para.start;
        while i < end {
            let c = chars[i];
            if start.is_none() && !c.is_whitespace() {
                start = Some(i);
            }
            if is_terminator(c) {
                let mut j = i + 1;
                while j < end && is_closer(chars[j]) {
                    j += 1;
                }
                let boundary = j == end || {
                    let mut k = j;
                    while k < end && chars[k].is_whitespace() {
                        k += 1;
                    }
                    k > j && k < end && chars[k].is_uppercase()
                };
                if boundary {
                    if let Some(s) = start.take() {
                        out.push(TextSpan::new(s, j));
                    }
                    i = j;
                    continue;
                }
            }
            i += 1;
        }
        if let Some(s) = start {
            // paragraph spans are trimmed, so the tail ends on a non-space char
            out.push(TextSpan::new(s, end));
        }
    }
    out
}

fn trimmed_span(chars: &[char]) -> Option<TextSpan> {
    let first = chars.iter().position(|c| !c.is_whitespace())?;
    let last = chars.iter().rposition(|c| !c.is_whitespace())?;
    Some(TextSpan::new(first, last + 1))
}

/// Tokenizes `text` and segments it at `granularity`.
pub fn segments_for(text: &str, granularity: Granularity) -> Vec<Segment> {
    let chars: Vec<char> = text.chars().collect();
    let tokens = tokenize_chars(&chars);
    segments_with_chars(&chars, &tokens, granularity)
}

/// Tokens and segments in one pass over the text.
pub fn tokenize_and_segment(text: &str, granularity: Granularity) -> (Vec<Token>, Vec<Segment>) {
    let chars: Vec<char> = text.chars().collect();
    let tokens = tokenize_chars(&chars);
    let segments = segments_with_chars(&chars, &tokens, granularity);
    (tokens, segments)
}

fn segments_with_chars(chars: &[char], tokens: &[Token], level: Granularity) -> Vec<Segment> {
    match level {
        Granularity::Word => tokens
            .iter()
            .enumerate()
            .map(|(i, t)| Segment {
                span: t.span,
                level,
                token_range: i..i + 1,
            })
            .collect(),
        Granularity::Window(n) => {
            let n = n.get();
            (0..tokens.len())
                .step_by(n)
                .map(|first| {
                    let last = (first + n).min(tokens.len());
                    Segment {
                        span: TextSpan::new(tokens[first].span.start, tokens[last - 1].span.end),
                        level,
                        token_range: first..last,
                    }
                })
                .collect()
        }
        Granularity::Sentence => {
            let paragraphs = paragraphs_chars(chars);
            assign_tokens(&sentences_chars(chars, &paragraphs), tokens, level)
        }
        Granularity::Paragraph => assign_tokens(&paragraphs_chars(chars), tokens, level),
        Granularity::Document => match trimmed_span(chars) {
            Some(span) => vec![Segment {
                span,
                level,
                token_range: 0..tokens.len(),
            }],
            None => Vec::new(),
        },
    }
}

/// Assigns tokens to ordered, disjoint spans by containment.
fn assign_tokens(spans: &[TextSpan], tokens: &[Token], level: Granularity) -> Vec<Segment> {
    let mut next = 0;
    let segments: Vec<Segment> = spans
        .iter()
        .map(|&span| {
            let first = next;
            while next < tokens.len() && span.contains(&tokens[next].span) {
                next += 1;
            }
            Segment {
                span,
                level,
                token_range: first..next,
            }
        })
        .collect();
    debug_assert_eq!(next, tokens.len(), "token outside every {level} span");
    segments
}
