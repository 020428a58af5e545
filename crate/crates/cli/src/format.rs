//! The line-oriented poset file format.
//!
//! ```text
//! # comment
//! poset 4
//! rel 0 1
//! rel 2 1
//! pin a 0
//! pin b 1
//! ```
//!
//! `rel i j` means `i < j`; the order is the transitive closure of the listed
//! pairs. Indices are 0-based.

use std::fmt::Write;

use indeco::{Error as CoreError, PinnedTriple, Poset};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("relations form a cycle through element {0}")]
    Cycle(usize),
    #[error("line {line}: pin {pin} given twice")]
    DuplicatePin { pin: char, line: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PosetFile {
    pub n: usize,
    pub relations: Vec<(usize, usize)>,
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub comments: Vec<String>,
}

impl PosetFile {
    pub fn from_poset(p: &Poset) -> PosetFile {
        PosetFile {
            n: p.len(),
            relations: p.hasse_covers(),
            ..PosetFile::default()
        }
    }

    pub fn from_triple(t: &PinnedTriple) -> PosetFile {
        PosetFile {
            a: Some(t.a),
            b: Some(t.b),
            ..PosetFile::from_poset(&t.poset)
        }
    }

    pub fn poset(&self) -> Result<Poset, FileError> {
        Poset::from_relations(self.n, &self.relations).map_err(|e| match e {
            CoreError::Cycle(x) => FileError::Cycle(x),
            other => FileError::Parse {
                line: 0,
                msg: other.to_string(),
            },
        })
    }

    /// The pinned triple, when both pins are present.
    pub fn triple(&self) -> Result<Option<PinnedTriple>, FileError> {
        let p = self.poset()?;
        match (self.a, self.b) {
            (Some(a), Some(b)) => {
                PinnedTriple::new(p, a, b)
                    .map(Some)
                    .map_err(|e| FileError::Parse {
                        line: 0,
                        msg: e.to_string(),
                    })
            }
            _ => Ok(None),
        }
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            let _ = writeln!(s, "#{c}");
        }
        let _ = writeln!(s, "poset {}", self.n);
        for (i, j) in &self.relations {
            let _ = writeln!(s, "rel {i} {j}");
        }
        if let Some(a) = self.a {
            let _ = writeln!(s, "pin a {a}");
        }
        if let Some(b) = self.b {
            let _ = writeln!(s, "pin b {b}");
        }
        s
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> FileError {
    FileError::Parse {
        line,
        msg: msg.into(),
    }
}

fn index(tok: Option<&str>, n: usize, line: usize) -> Result<usize, FileError> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing index"))?;
    let i: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("bad index {tok:?}")))?;
    if i >= n {
        return Err(parse_err(
            line,
            format!("index {i} out of range for {n} elements"),
        ));
    }
    Ok(i)
}

/// Parses a single poset file. Line numbers in errors start at 1.
pub fn parse(text: &str) -> Result<PosetFile, FileError> {
    let mut files = parse_stream(text)?;
    match files.len() {
        0 => Err(parse_err(1, "missing `poset <n>` line")),
        1 => Ok(files.pop().unwrap()),
        _ => Err(parse_err(
            second_header_line(text),
            "more than one `poset` line",
        )),
    }
}

fn second_header_line(text: &str) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.trim_start().starts_with("poset"))
        .nth(1)
        .map_or(0, |(i, _)| i + 1)
}

/// Parses consecutive files; each `poset` line starts a new one and takes
/// the comments above it.
pub fn parse_stream(text: &str) -> Result<Vec<PosetFile>, FileError> {
    let mut out: Vec<PosetFile> = Vec::new();
    let mut comments = Vec::new();
    let mut cur: Option<PosetFile> = None;
    let mut pin_lines = (0usize, 0usize);
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(c) = trimmed.strip_prefix('#') {
            comments.push(c.to_string());
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match toks.next() {
            Some("poset") => {
                if let Some(f) = cur.take() {
                    f.poset()?;
                    out.push(f);
                }
                let n_tok = toks.next().ok_or_else(|| parse_err(line, "missing size"))?;
                let n: usize = n_tok
                    .parse()
                    .map_err(|_| parse_err(line, format!("bad size {n_tok:?}")))?;
                if n == 0 || n > indeco::MAX_ELEMENTS {
                    return Err(parse_err(line, format!("size {n} outside 1..=64")));
                }
                cur = Some(PosetFile {
                    n,
                    comments: std::mem::take(&mut comments),
                    ..PosetFile::default()
                });
                pin_lines = (0, 0);
            }
            Some(kw @ ("rel" | "pin")) => {
                let f = cur
                    .as_mut()
                    .ok_or_else(|| parse_err(line, "expected `poset <n>` first"))?;
                if kw == "rel" {
                    let i = index(toks.next(), f.n, line)?;
                    let j = index(toks.next(), f.n, line)?;
                    if i == j {
                        return Err(FileError::Cycle(i));
                    }
                    f.relations.push((i, j));
                } else {
                    let which = toks.next();
                    let x = index(toks.next(), f.n, line)?;
                    let (slot, seen, pin) = match which {
                        Some("a") => (&mut f.a, &mut pin_lines.0, 'a'),
                        Some("b") => (&mut f.b, &mut pin_lines.1, 'b'),
                        _ => return Err(parse_err(line, "expected `pin a <i>` or `pin b <i>`")),
                    };
                    if slot.is_some() {
                        return Err(FileError::DuplicatePin { pin, line });
                    }
                    *slot = Some(x);
                    *seen = line;
                }
            }
            Some(other) => return Err(parse_err(line, format!("unknown keyword {other:?}"))),
            None => unreachable!(),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    if let Some(f) = cur {
        f.poset()?;
        if let (Some(a), Some(b)) = (f.a, f.b) {
            if a == b {
                return Err(parse_err(
                    pin_lines.1.max(pin_lines.0),
                    "pins a and b coincide",
                ));
            }
        }
        out.push(f);
    }
    Ok(out)
}

/// The poset and its pins, closure taken.
pub fn parse_poset_file(text: &str) -> Result<(Poset, Option<usize>, Option<usize>), FileError> {
    let f = parse(text)?;
    Ok((f.poset()?, f.a, f.b))
}
