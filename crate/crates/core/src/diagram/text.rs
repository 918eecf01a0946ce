//! Line-oriented link files.
//!
//! ```text
//! # comment
//! link <name>                    starts a named block
//! braid <n> : s<i> S<i> ...      trace-closed braid, S = inverse generator
//! cup <p> | cap <p> | x+ <p> | x- <p>
//! framing <c>=<int>
//! special <c>
//! ```
//!
//! Every braid line and every maximal run of Morse lines is one piece; the
//! pieces of a block are combined by distant union in file order. Component
//! indices count from 0 in that union. Lines before the first `link` form a
//! block named `main`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{BraidWord, DiagramError, EventKind, FramedLinkDiagram, MorseEvent, MorseWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("generator s{index} out of range for a braid on {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("unbalanced Morse word: event needs two open strands, {width} open")]
    Unbalanced { width: usize },
    #[error("position {position} out of range for {width} open strands")]
    PositionOutOfRange { position: usize, width: usize },
    #[error("Morse word ends with {width} open strands")]
    Unclosed { width: usize },
    #[error("component {component} does not exist ({count} components)")]
    UnknownComponent { component: usize, count: usize },
    #[error("framing of component {component} given twice")]
    DuplicateFraming { component: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }
}

/// One named link of a link file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkBlock {
    pub name: String,
    pub diagram: FramedLinkDiagram,
    /// Components declared `special`, ascending.
    pub special: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        let sep = ch.is_whitespace() || ch == ':' || ch == '=';
        if sep {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
            }
            if ch == ':' || ch == '=' {
                out.push(Token {
                    text: &line[i..i + 1],
                    column: i + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

fn parse_uint(tok: &Token<'_>, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.text
        .parse::<usize>()
        .map_err(|_| ParseError::syntax(line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

fn parse_int(tok: &Token<'_>, line: usize, what: &str) -> Result<i64, ParseError> {
    tok.text
        .parse::<i64>()
        .map_err(|_| ParseError::syntax(line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

fn expect_end(toks: &[Token<'_>], at: usize, line: usize) -> Result<(), ParseError> {
    match toks.get(at) {
        None => Ok(()),
        Some(t) => Err(ParseError::syntax(line, t.column, format!("unexpected `{}`", t.text))),
    }
}

fn missing(line: usize, toks: &[Token<'_>], what: &str) -> ParseError {
    let col = toks
        .last()
        .map(|t| t.column + t.text.len())
        .unwrap_or(1);
    ParseError::syntax(line, col, format!("missing {what}"))
}

fn braid_from_tokens(toks: &[Token<'_>], line: usize) -> Result<BraidWord, ParseError> {
    let n_tok = toks.get(1).ok_or_else(|| missing(line, toks, "strand count"))?;
    let strands = parse_uint(n_tok, line, "strand count")?;
    if strands == 0 {
        return Err(ParseError {
            line,
            column: n_tok.column,
            kind: ParseErrorKind::NoStrands,
        });
    }
    match toks.get(2) {
        Some(t) if t.text == ":" => {}
        Some(t) => return Err(ParseError::syntax(line, t.column, format!("expected `:`, found `{}`", t.text))),
        None => return Err(missing(line, toks, "`:`")),
    }
    let mut letters = Vec::new();
    for t in &toks[3..] {
        let (sign, rest) = match t.text.as_bytes().first() {
            Some(b's') => (1, &t.text[1..]),
            Some(b'S') => (-1, &t.text[1..]),
            _ => {
                return Err(ParseError::syntax(
                    line,
                    t.column,
                    format!("expected generator s<i> or S<i>, found `{}`", t.text),
                ))
            }
        };
        let index: usize = rest.parse().map_err(|_| {
            ParseError::syntax(line, t.column, format!("bad generator `{}`", t.text))
        })?;
        if index == 0 || index >= strands {
            return Err(ParseError {
                line,
                column: t.column,
                kind: ParseErrorKind::GeneratorOutOfRange { index, strands },
            });
        }
        letters.push((index, sign));
    }
    BraidWord::new(strands, letters).map_err(|e| ParseError::syntax(line, 1, e.to_string()))
}

enum Piece {
    Braid(FramedLinkDiagram),
    Morse(Vec<(MorseEvent, usize, usize)>),
}

struct BlockBuilder {
    name: String,
    pieces: Vec<Piece>,
    framings: Vec<(usize, usize, usize, i64)>,
    special: Vec<(usize, usize, usize)>,
    morse_open: bool,
}

impl BlockBuilder {
    fn new(name: String) -> Self {
        BlockBuilder {
            name,
            pieces: Vec::new(),
            framings: Vec::new(),
            special: Vec::new(),
            morse_open: false,
        }
    }

    fn is_blank(&self) -> bool {
        self.pieces.is_empty() && self.framings.is_empty() && self.special.is_empty()
    }

    fn finish(self) -> Result<LinkBlock, ParseError> {
        let mut diagram = FramedLinkDiagram::empty();
        for piece in self.pieces {
            let d = match piece {
                Piece::Braid(d) => d,
                Piece::Morse(events) => morse_piece(events)?,
            };
            diagram = diagram.distant_union(&d);
        }
        let count = diagram.component_count();
        let mut framings = diagram.framings().to_vec();
        let mut seen = BTreeSet::new();
        for (line, column, c, f) in self.framings {
            if c >= count {
                return Err(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::UnknownComponent { component: c, count },
                });
            }
            if !seen.insert(c) {
                return Err(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::DuplicateFraming { component: c },
                });
            }
            framings[c] = f;
        }
        let mut special = BTreeSet::new();
        for (line, column, c) in self.special {
            if c >= count {
                return Err(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::UnknownComponent { component: c, count },
                });
            }
            special.insert(c);
        }
        Ok(LinkBlock {
            name: self.name,
            diagram: diagram
                .with_framings(framings)
                .expect("framing count matches components"),
            special: special.into_iter().collect(),
        })
    }
}

fn morse_piece(events: Vec<(MorseEvent, usize, usize)>) -> Result<FramedLinkDiagram, ParseError> {
    let last_line = events.last().map(|e| e.1).unwrap_or(1);
    let lines: Vec<(usize, usize)> = events.iter().map(|e| (e.1, e.2)).collect();
    let word = MorseWord::new(events.into_iter().map(|e| e.0).collect()).map_err(|e| match e {
        DiagramError::Unbalanced { index, width } => ParseError {
            line: lines[index].0,
            column: 1,
            kind: ParseErrorKind::Unbalanced { width },
        },
        DiagramError::PositionOutOfRange {
            index,
            position,
            width,
        } => ParseError {
            line: lines[index].0,
            column: lines[index].1,
            kind: ParseErrorKind::PositionOutOfRange { position, width },
        },
        DiagramError::Unclosed { width } => ParseError {
            line: last_line,
            column: 1,
            kind: ParseErrorKind::Unclosed { width },
        },
        other => ParseError::syntax(last_line, 1, other.to_string()),
    })?;
    Ok(FramedLinkDiagram::blackboard(word))
}

/// Parse a link file into its blocks.
pub fn parse_link_file(text: &str) -> Result<Vec<LinkBlock>, ParseError> {
    let mut blocks: Vec<BlockBuilder> = Vec::new();
    let mut current = BlockBuilder::new("main".to_string());
    let mut saw_link = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "link" => {
                let name = toks.get(1).ok_or_else(|| missing(line, &toks, "link name"))?;
                expect_end(&toks, 2, line)?;
                if saw_link || !current.is_blank() {
                    blocks.push(current);
                }
                saw_link = true;
                current = BlockBuilder::new(name.text.to_string());
            }
            "braid" => {
                let b = braid_from_tokens(&toks, line)?;
                current.pieces.push(Piece::Braid(b.closure()));
                current.morse_open = false;
            }
            "cup" | "cap" | "x+" | "x-" => {
                let kind = match head.text {
                    "cup" => EventKind::Cup,
                    "cap" => EventKind::Cap,
                    "x+" => EventKind::CrossPos,
                    _ => EventKind::CrossNeg,
                };
                let p_tok = toks.get(1).ok_or_else(|| missing(line, &toks, "position"))?;
                let position = parse_uint(p_tok, line, "position")?;
                expect_end(&toks, 2, line)?;
                let ev = (MorseEvent { kind, position }, line, p_tok.column);
                match (current.morse_open, current.pieces.last_mut()) {
                    (true, Some(Piece::Morse(evs))) => evs.push(ev),
                    _ => {
                        current.pieces.push(Piece::Morse(vec![ev]));
                        current.morse_open = true;
                    }
                }
            }
            "framing" => {
                let c_tok = toks.get(1).ok_or_else(|| missing(line, &toks, "component"))?;
                let c = parse_uint(c_tok, line, "component index")?;
                match toks.get(2) {
                    Some(t) if t.text == "=" => {}
                    Some(t) => {
                        return Err(ParseError::syntax(line, t.column, format!("expected `=`, found `{}`", t.text)))
                    }
                    None => return Err(missing(line, &toks, "`=`")),
                }
                let f_tok = toks.get(3).ok_or_else(|| missing(line, &toks, "framing value"))?;
                let f = parse_int(f_tok, line, "integer framing")?;
                expect_end(&toks, 4, line)?;
                current.framings.push((line, c_tok.column, c, f));
            }
            "special" => {
                let c_tok = toks.get(1).ok_or_else(|| missing(line, &toks, "component"))?;
                let c = parse_uint(c_tok, line, "component index")?;
                expect_end(&toks, 2, line)?;
                current.special.push((line, c_tok.column, c));
            }
            other => {
                return Err(ParseError::syntax(
                    line,
                    head.column,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    blocks.push(current);
    blocks.into_iter().map(BlockBuilder::finish).collect()
}

/// Parse text holding exactly one braid line.
pub fn parse_braid(text: &str) -> Result<BraidWord, ParseError> {
    let mut found = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokenize(content);
        let Some(head) = toks.first() else { continue };
        if head.text != "braid" {
            return Err(ParseError::syntax(line, head.column, format!("expected `braid`, found `{}`", head.text)));
        }
        if found.is_some() {
            return Err(ParseError::syntax(line, head.column, "more than one braid line"));
        }
        found = Some(braid_from_tokens(&toks, line)?);
    }
    found.ok_or_else(|| ParseError::syntax(1, 1, "no braid line"))
}

/// Parse a single Morse-word link, with optional `framing` lines.
pub fn parse_morse(text: &str) -> Result<FramedLinkDiagram, ParseError> {
    let mut blocks = parse_link_file(text)?;
    if blocks.len() != 1 {
        return Err(ParseError::syntax(1, 1, "expected a single link"));
    }
    Ok(blocks.remove(0).diagram)
}

struct BlockText<'a>(&'a LinkBlock);

impl fmt::Display for BlockText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.0;
        writeln!(f, "link {}", b.name)?;
        for ev in b.diagram.word().events() {
            let op = match ev.kind {
                EventKind::Cup => "cup",
                EventKind::Cap => "cap",
                EventKind::CrossPos => "x+",
                EventKind::CrossNeg => "x-",
            };
            writeln!(f, "{op} {}", ev.position)?;
        }
        for (c, fr) in b.diagram.framings().iter().enumerate() {
            writeln!(f, "framing {c}={fr}")?;
        }
        for c in &b.special {
            writeln!(f, "special {c}")?;
        }
        Ok(())
    }
}

/// Serialize a block as Morse lines with explicit framings.
pub fn write_link_block(block: &LinkBlock) -> String {
    BlockText(block).to_string()
}
