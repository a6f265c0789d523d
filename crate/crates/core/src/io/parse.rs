use std::collections::HashMap;
use std::fmt;

use super::{EdgeDecl, KgDocument, SetDecl, SquareDecl};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    SyntaxError,
    UnknownId,
    DuplicateId,
    BadColor,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::SyntaxError => "syntax error",
            ParseErrorKind::UnknownId => "unknown id",
            ParseErrorKind::DuplicateId => "duplicate id",
            ParseErrorKind::BadColor => "bad colour",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Arrow,
    At,
    Dot,
    Eq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::At => "`@`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eq => "`=`".into(),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '+'
}

fn syntax(line: usize, col: usize, message: impl Into<String>, expected: &[&str]) -> ParseError {
    ParseError {
        kind: ParseErrorKind::SyntaxError,
        line,
        col,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

/// Tokens of one line with their 1-based columns; `#` starts a comment.
fn lex(line_no: usize, text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            ':' => {
                out.push((Tok::Colon, col));
                i += 1;
            }
            '@' => {
                out.push((Tok::At, col));
                i += 1;
            }
            '.' => {
                out.push((Tok::Dot, col));
                i += 1;
            }
            '=' => {
                out.push((Tok::Eq, col));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((Tok::Arrow, col));
                i += 2;
            }
            c if is_ident_char(c) => {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(syntax(
                    line_no,
                    col,
                    format!("unexpected character {other:?}"),
                    &[],
                ));
            }
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    line: usize,
    toks: &'a [(Tok, usize)],
    pos: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn found(&self) -> String {
        self.toks
            .get(self.pos)
            .map(|t| t.0.describe())
            .unwrap_or_else(|| "end of line".into())
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Ident(s), col)) => {
                self.pos += 1;
                Ok((s.clone(), *col))
            }
            _ => Err(syntax(
                self.line,
                self.col(),
                format!("found {}", self.found()),
                &[what],
            )),
        }
    }

    fn punct(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some((t, _)) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(syntax(
                self.line,
                self.col(),
                format!("found {}", self.found()),
                &[want.describe().as_str()],
            )),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some((Tok::Ident(s), _)) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(syntax(
                self.line,
                self.col(),
                format!("found {}", self.found()),
                &[&format!("`{word}`")],
            )),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            return Err(syntax(
                self.line,
                self.col(),
                format!("trailing {}", self.found()),
                &["end of line"],
            ));
        }
        Ok(())
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

/// A reference to be resolved once every declaration has been read.
struct Ref {
    name: String,
    line: usize,
    col: usize,
    vertex: bool,
}

const STATEMENTS: &[&str] = &["`vertex`", "`edge`", "`square`", "`set`"];

pub fn parse(text: &str) -> Result<KgDocument, ParseError> {
    let mut rank: Option<usize> = None;
    let mut doc = KgDocument {
        rank: 0,
        vertices: Vec::new(),
        edges: Vec::new(),
        squares: Vec::new(),
        sets: Vec::new(),
    };
    let mut vertex_seen: HashMap<String, ()> = HashMap::new();
    let mut edge_seen: HashMap<String, ()> = HashMap::new();
    let mut set_seen: HashMap<String, ()> = HashMap::new();
    let mut refs: Vec<Ref> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = lex(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor {
            line,
            toks: &toks,
            pos: 0,
            end_col: raw.chars().count() + 1,
        };
        let duplicate = |col: usize, what: &str, name: &str| ParseError {
            kind: ParseErrorKind::DuplicateId,
            line,
            col,
            message: format!("{what} {name} is already declared"),
            expected: Vec::new(),
        };

        let Some(k) = rank else {
            cur.keyword("kgraph")?;
            cur.keyword("rank")?;
            cur.punct(Tok::Eq)?;
            let (num, col) = cur.ident("rank")?;
            let k: usize = num.parse().ok().filter(|&k| k >= 1).ok_or_else(|| {
                syntax(
                    line,
                    col,
                    format!("rank {num} is not a positive integer"),
                    &["rank"],
                )
            })?;
            cur.finish()?;
            rank = Some(k);
            doc.rank = k;
            continue;
        };

        let (word, col) = cur.ident("statement")?;
        match word.as_str() {
            "vertex" => {
                let (name, col) = cur.ident("vertex id")?;
                cur.finish()?;
                if vertex_seen.insert(name.clone(), ()).is_some() {
                    return Err(duplicate(col, "vertex", &name));
                }
                doc.vertices.push(name);
            }
            "edge" => {
                let (name, ncol) = cur.ident("edge id")?;
                cur.punct(Tok::Colon)?;
                let (source, scol) = cur.ident("source vertex")?;
                cur.punct(Tok::Arrow)?;
                let (range, rcol) = cur.ident("range vertex")?;
                cur.punct(Tok::At)?;
                let (c, ccol) = cur.ident("colour")?;
                cur.finish()?;
                let color = c
                    .parse::<usize>()
                    .ok()
                    .filter(|&c| c >= 1 && c <= k)
                    .ok_or(ParseError {
                        kind: ParseErrorKind::BadColor,
                        line,
                        col: ccol,
                        message: format!("colour {c} is not in 1..={k}"),
                        expected: vec![format!("1..={k}")],
                    })?;
                if edge_seen.insert(name.clone(), ()).is_some() {
                    return Err(duplicate(ncol, "edge", &name));
                }
                refs.push(Ref {
                    name: source.clone(),
                    line,
                    col: scol,
                    vertex: true,
                });
                refs.push(Ref {
                    name: range.clone(),
                    line,
                    col: rcol,
                    vertex: true,
                });
                doc.edges.push(EdgeDecl {
                    name,
                    source,
                    range,
                    color,
                });
            }
            "square" => {
                let mut names = Vec::new();
                for (t, what) in ["edge id", "edge id", "edge id", "edge id"]
                    .iter()
                    .enumerate()
                {
                    if t == 1 || t == 3 {
                        cur.punct(Tok::Dot)?;
                    }
                    if t == 2 {
                        cur.punct(Tok::Eq)?;
                    }
                    let (n, c) = cur.ident(what)?;
                    refs.push(Ref {
                        name: n.clone(),
                        line,
                        col: c,
                        vertex: false,
                    });
                    names.push(n);
                }
                cur.finish()?;
                let [f, g2, g, f2]: [String; 4] = names.try_into().expect("four names");
                doc.squares.push(SquareDecl { f, g2, g, f2 });
            }
            "set" => {
                let (name, ncol) = cur.ident("set name")?;
                cur.punct(Tok::Eq)?;
                let mut members = Vec::new();
                while !cur.at_end() {
                    let (m, c) = cur.ident("vertex id")?;
                    refs.push(Ref {
                        name: m.clone(),
                        line,
                        col: c,
                        vertex: true,
                    });
                    members.push(m);
                }
                if set_seen.insert(name.clone(), ()).is_some() {
                    return Err(duplicate(ncol, "set", &name));
                }
                doc.sets.push(SetDecl { name, members });
            }
            "kgraph" => {
                return Err(syntax(line, col, "second header", STATEMENTS));
            }
            other => {
                return Err(syntax(
                    line,
                    col,
                    format!("unknown statement `{other}`"),
                    STATEMENTS,
                ));
            }
        }
    }

    if rank.is_none() {
        return Err(syntax(last_line.max(1), 1, "missing header", &["`kgraph`"]));
    }
    for r in refs {
        let known = if r.vertex {
            vertex_seen.contains_key(&r.name)
        } else {
            edge_seen.contains_key(&r.name)
        };
        if !known {
            return Err(ParseError {
                kind: ParseErrorKind::UnknownId,
                line: r.line,
                col: r.col,
                message: format!(
                    "{} {} is not declared",
                    if r.vertex { "vertex" } else { "edge" },
                    r.name
                ),
                expected: vec![if r.vertex { "vertex id" } else { "edge id" }.to_string()],
            });
        }
    }
    Ok(doc)
}
