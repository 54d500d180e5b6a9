//! Plain-text documents for simplicial sets, simplicial maps and linked spans.
//!
//! ```text
//! # comments run to the end of the line
//! simplicial-set Delta[1]
//! max-dim 1
//! dim 0
//!   0
//!   1
//! dim 1
//!   0<1 : ([], 1) ([], 0)
//! end
//!
//! simplicial-map at0 : point -> Delta[1]
//!   pt -> ([], 0)
//! end
//!
//! linked-span example
//!   lower point
//!   link point
//!   upper Delta[1]
//!   pi id
//!   iota at0
//! end
//! ```
//!
//! A generator line is `LABEL`, followed for dimension n ≥ 1 by `:` and its
//! n+1 faces `d_0 .. d_n`, each written `(WORD, LABEL)` where `WORD` is the
//! degeneracy word `[i1,...,it]` (strictly increasing, `s_it ... s_i1` applied
//! to the generator). An optional provenance tag follows `@`: `low X`,
//! `upper X` or `exit J (WORD, X)`. Document, set and map names are single
//! whitespace-free tokens; labels additionally exclude `()[],:@#`. A map
//! line sends a domain generator to `(WORD, LABEL)` in the codomain. Maps
//! name their sets, and spans name their sets and maps, so a bundle lists
//! sets before the maps and spans that use them.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::exit::LinkedSpan;
use crate::simplicial::{FormalSimplex, SimplicialMap, SimplicialSet, SimplicialSetBuilder, SourceTag, Surjection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Everything read from one input: sets, maps and spans in document order.
#[derive(Clone, Debug, Default)]
pub struct Bundle {
    pub sets: Vec<Arc<SimplicialSet>>,
    pub maps: Vec<SimplicialMap>,
    pub spans: Vec<LinkedSpan>,
}

impl Bundle {
    pub fn set(&self, name: &str) -> Option<&Arc<SimplicialSet>> {
        self.sets.iter().find(|s| s.name() == name)
    }

    pub fn map(&self, name: &str) -> Option<&SimplicialMap> {
        self.maps.iter().find(|m| m.name() == name)
    }

    pub fn span(&self, name: &str) -> Option<&LinkedSpan> {
        self.spans.iter().find(|s| s.name() == name)
    }
}

fn word_text(word: &[usize]) -> String {
    let inner: Vec<String> = word.iter().map(usize::to_string).collect();
    format!("[{}]", inner.join(","))
}

fn simplex_text(x: &SimplicialSet, s: &FormalSimplex) -> String {
    format!("({}, {})", word_text(&s.degeneracy.word()), x.label(s.generator))
}

pub fn print_set(x: &SimplicialSet) -> String {
    let mut out = String::new();
    writeln!(out, "simplicial-set {}", x.name()).unwrap();
    match x.max_gen_dim() {
        None => writeln!(out, "max-dim none").unwrap(),
        Some(top) => {
            writeln!(out, "max-dim {top}").unwrap();
            for d in 0..=top {
                writeln!(out, "dim {d}").unwrap();
                for g in x.generators(d) {
                    let mut line = format!("  {}", g.label);
                    if !g.faces.is_empty() {
                        line.push_str(" :");
                        for f in &g.faces {
                            line.push(' ');
                            line.push_str(&simplex_text(x, f));
                        }
                    }
                    match &g.tag {
                        None => {}
                        Some(SourceTag::Low { source }) => write!(line, " @ low {source}").unwrap(),
                        Some(SourceTag::Upper { source }) => write!(line, " @ upper {source}").unwrap(),
                        Some(SourceTag::Exit { index, word, source }) => {
                            write!(line, " @ exit {index} ({}, {source})", word_text(word)).unwrap()
                        }
                    }
                    writeln!(out, "{line}").unwrap();
                }
            }
        }
    }
    writeln!(out, "end").unwrap();
    out
}

pub fn print_map(f: &SimplicialMap) -> String {
    let mut out = String::new();
    writeln!(out, "simplicial-map {} : {} -> {}", f.name(), f.domain().name(), f.codomain().name()).unwrap();
    for id in f.domain().gen_ids() {
        let image = f.image_of_generator(id);
        writeln!(out, "  {} -> {}", f.domain().label(id), simplex_text(f.codomain(), image)).unwrap();
    }
    writeln!(out, "end").unwrap();
    out
}

/// Assigns document names so that equal objects share one and distinct
/// objects never do; a clash is resolved by suffixing the role.
fn unique_names(entries: &[(&str, &str, String)]) -> Vec<String> {
    let mut taken: Vec<(String, &str)> = Vec::new();
    let mut names = Vec::new();
    for (name, role, body) in entries {
        let mut candidate = name.to_string();
        loop {
            match taken.iter().find(|(n, _)| *n == candidate) {
                Some((_, b)) if b == body => break,
                Some(_) => candidate = format!("{candidate}-{role}"),
                None => {
                    taken.push((candidate.clone(), body));
                    break;
                }
            }
        }
        names.push(candidate);
    }
    names
}

fn renamed(text: String, keyword: &str, old: &str, new: &str) -> String {
    text.replacen(&format!("{keyword} {old}"), &format!("{keyword} {new}"), 1)
}

/// A span together with the sets and maps it references, as one bundle.
pub fn print_span(span: &LinkedSpan) -> String {
    let sets = [("lower", span.lower()), ("link", span.link()), ("upper", span.upper())];
    // Bodies without the header line, so identical content under one name is shared.
    let body = |t: String| t.split_once('\n').map(|(_, b)| b.to_string()).unwrap_or_default();
    let set_entries: Vec<_> = sets.iter().map(|(role, x)| (x.name(), *role, body(print_set(x)))).collect();
    let set_names = unique_names(&set_entries);

    let mut out = String::new();
    let mut printed: Vec<&str> = Vec::new();
    for ((_, x), name) in sets.iter().zip(&set_names) {
        if !printed.contains(&name.as_str()) {
            printed.push(name);
            out.push_str(&renamed(print_set(x), "simplicial-set", x.name(), name));
            out.push('\n');
        }
    }

    let (lower, link, upper) = (&set_names[0], &set_names[1], &set_names[2]);
    // Map headers name the sets as printed above.
    let map_text = |f: &SimplicialMap, cod: &str| {
        let text = print_map(f);
        let rest = text.split_once('\n').map_or("", |(_, r)| r).to_string();
        format!("simplicial-map {} : {link} -> {cod}\n{rest}", f.name())
    };
    let map_entries = [
        (span.pi().name(), "pi", map_text(span.pi(), lower)),
        (span.iota().name(), "iota", map_text(span.iota(), upper)),
    ];
    let map_names = unique_names(&map_entries);
    for (i, (old, _, text)) in map_entries.iter().enumerate() {
        if i == 1 && map_names[1] == map_names[0] {
            break;
        }
        out.push_str(&renamed(text.clone(), "simplicial-map", old, &map_names[i]));
        out.push('\n');
    }

    writeln!(out, "linked-span {}", span.name()).unwrap();
    writeln!(out, "  lower {lower}").unwrap();
    writeln!(out, "  link {link}").unwrap();
    writeln!(out, "  upper {upper}").unwrap();
    writeln!(out, "  pi {}", map_names[0]).unwrap();
    writeln!(out, "  iota {}", map_names[1]).unwrap();
    writeln!(out, "end").unwrap();
    out
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Word(&'a str),
    Punct(char),
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    tok: Tok<'a>,
    column: usize,
}

const PUNCT: &[char] = &['(', ')', '[', ']', ',', ':', '@'];

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        let column = line[..start].chars().count() + 1;
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            chars.next();
        } else if PUNCT.contains(&c) {
            chars.next();
            out.push(Token { tok: Tok::Punct(c), column });
        } else if c == '-' && line[start..].starts_with("->") {
            chars.next();
            chars.next();
            out.push(Token { tok: Tok::Word("->"), column });
        } else {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_whitespace() || PUNCT.contains(&c) || c == '#' || line[i..].starts_with("->") {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            out.push(Token { tok: Tok::Word(&line[start..end]), column });
        }
    }
    out
}

/// Header and name tokens are whitespace-delimited only, so that set names
/// such as `Delta[1]` or `Ex(cone)` survive.
fn raw_words(line: &str) -> Vec<(&str, usize)> {
    let code = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in code.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((&code[s..i], code[..s].chars().count() + 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((&code[s..], code[..s].chars().count() + 1));
    }
    out
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

struct Cursor<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: &Line<'a>) -> Self {
        Self { line: line.number, tokens: tokenize(line.text), pos: 0, end_column: line.text.chars().count() + 1 }
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column(), message: message.into() }
    }

    fn peek(&self) -> Option<Tok<'a>> {
        self.tokens.get(self.pos).map(|t| t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos == self.tokens.len()
    }

    fn punct(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.peek() == Some(Tok::Punct(c));
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn word(&mut self, what: &str) -> Result<&'a str, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if w != "->" => {
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{kw}`"))),
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        let column = self.column();
        let w = self.word(what)?;
        w.parse().map_err(|_| ParseError { line: self.line, column, message: format!("expected {what}, found `{w}`") })
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    /// `[i1,...,it]`
    fn word_list(&mut self) -> Result<Vec<usize>, ParseError> {
        self.punct('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.number("a degeneracy index")?);
            if self.eat(']') {
                return Ok(out);
            }
            self.punct(',')?;
        }
    }

    /// `(WORD, LABEL)`, with the column of its opening parenthesis.
    fn simplex_ref(&mut self) -> Result<(Vec<usize>, &'a str, usize), ParseError> {
        let column = self.column();
        self.punct('(')?;
        let word = self.word_list()?;
        self.punct(',')?;
        let label = self.word("a generator label")?;
        self.punct(')')?;
        Ok((word, label, column))
    }
}

fn resolve(
    x: &SimplicialSet,
    line: usize,
    (word, label, column): (Vec<usize>, &str, usize),
) -> Result<FormalSimplex, ParseError> {
    let err = |message: String| ParseError { line, column, message };
    let id = x.find(label).ok_or_else(|| err(format!("unknown generator `{label}` in `{}`", x.name())))?;
    let degeneracy = Surjection::from_word(id.dim, &word).map_err(|e| err(e.to_string()))?;
    FormalSimplex::new(id, degeneracy).map_err(|e| err(e.to_string()))
}

fn resolve_in_builder(
    b: &SimplicialSetBuilder,
    line: usize,
    (word, label, column): (Vec<usize>, &str, usize),
) -> Result<FormalSimplex, ParseError> {
    let err = |message: String| ParseError { line, column, message };
    let id = b.find(label).ok_or_else(|| err(format!("unknown generator `{label}`")))?;
    let degeneracy = Surjection::from_word(id.dim, &word).map_err(|e| err(e.to_string()))?;
    FormalSimplex::new(id, degeneracy).map_err(|e| err(e.to_string()))
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines: Vec<Line<'a>> = text
            .lines()
            .enumerate()
            .map(|(i, text)| Line { number: i + 1, text })
            .filter(|l| !raw_words(l.text).is_empty())
            .collect();
        Self { lines, pos: 0, last_line: text.lines().count().max(1) }
    }

    fn next_line(&mut self, what: &str) -> Result<&Line<'a>, ParseError> {
        let line = self.lines.get(self.pos).ok_or_else(|| ParseError {
            line: self.last_line,
            column: 1,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn peek_line(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    /// `keyword VALUE` on one line, value whitespace-delimited.
    fn header(&mut self, keyword: &str) -> Result<(&'a str, usize), ParseError> {
        let line = self.next_line(&format!("`{keyword}`"))?;
        let (number, text) = (line.number, line.text);
        let words = raw_words(text);
        let err = |column: usize, message: String| ParseError { line: number, column, message };
        if words[0].0 != keyword {
            return Err(err(words[0].1, format!("expected `{keyword}`, found `{}`", words[0].0)));
        }
        match words.as_slice() {
            [_, value] => Ok((value.0, number)),
            [_] => Err(err(text.chars().count() + 1, format!("`{keyword}` needs a name"))),
            [_, _, extra, ..] => Err(err(extra.1, "unexpected trailing input".into())),
            [] => unreachable!(),
        }
    }

    fn is_end(line: &Line<'_>) -> bool {
        raw_words(line.text).first().is_some_and(|w| w.0 == "end")
    }

    fn end(&mut self) -> Result<(), ParseError> {
        let line = self.next_line("`end`")?;
        let words = raw_words(line.text);
        if words.len() == 1 && words[0].0 == "end" {
            Ok(())
        } else {
            Err(ParseError { line: line.number, column: words[0].1, message: "expected `end`".into() })
        }
    }

    fn set(&mut self) -> Result<SimplicialSet, ParseError> {
        let (name, _) = self.header("simplicial-set")?;
        let (top, top_line) = self.header("max-dim")?;
        let top = match top {
            "none" => None,
            t => Some(t.parse::<usize>().map_err(|_| ParseError {
                line: top_line,
                column: raw_words(self.lines[self.pos - 1].text)[1].1,
                message: format!("expected a dimension or `none`, found `{t}`"),
            })?),
        };
        let mut b = SimplicialSetBuilder::new(name);
        for d in 0..top.map_or(0, |t| t + 1) {
            let (value, number) = self.header("dim")?;
            if value != d.to_string() {
                return Err(ParseError {
                    line: number,
                    column: raw_words(self.lines[self.pos - 1].text)[1].1,
                    message: format!("expected `dim {d}`"),
                });
            }
            while let Some(line) = self.peek_line() {
                let first = raw_words(line.text)[0].0;
                if first == "dim" || first == "end" {
                    break;
                }
                let line = self.next_line("a generator")?;
                let mut c = Cursor::new(line);
                let label_column = c.column();
                let label = c.word("a generator label")?;
                let mut faces = Vec::new();
                if c.eat(':') {
                    while c.peek() == Some(Tok::Punct('(')) {
                        faces.push(resolve_in_builder(&b, c.line, c.simplex_ref()?)?);
                    }
                }
                let tag = if c.eat('@') {
                    let kind = c.word("`low`, `upper` or `exit`")?;
                    Some(match kind {
                        "low" => SourceTag::Low { source: c.word("a source label")?.to_string() },
                        "upper" => SourceTag::Upper { source: c.word("a source label")?.to_string() },
                        "exit" => {
                            let index = c.number("an exit index")?;
                            let (word, source, _) = c.simplex_ref()?;
                            SourceTag::Exit { index, word, source: source.to_string() }
                        }
                        other => return Err(c.error(format!("unknown tag `{other}`"))),
                    })
                } else {
                    None
                };
                c.finish()?;
                let expected = if d == 0 { 0 } else { d + 1 };
                if faces.len() != expected {
                    return Err(ParseError {
                        line: c.line,
                        column: label_column,
                        message: format!("generator `{label}` of dimension {d} needs {expected} faces, found {}", faces.len()),
                    });
                }
                b.add_tagged(label, faces, tag).map_err(|e| ParseError {
                    line: c.line,
                    column: label_column,
                    message: e.to_string(),
                })?;
            }
        }
        if let Some(line) = self.peek_line() {
            if !Self::is_end(line) {
                let words = raw_words(line.text);
                return Err(ParseError {
                    line: line.number,
                    column: words[0].1,
                    message: "expected `end` after the last dimension".into(),
                });
            }
        }
        self.end()?;
        let set = b.build_unaudited();
        if let Some(d) = top.filter(|_| set.max_gen_dim() != top) {
            return Err(ParseError {
                line: top_line,
                column: 1,
                message: format!("max-dim is {d} but dimension {d} has no generators"),
            });
        }
        Ok(set)
    }

    fn map(&mut self, sets: &HashMap<String, Arc<SimplicialSet>>) -> Result<SimplicialMap, ParseError> {
        let line = self.next_line("`simplicial-map`")?;
        let number = line.number;
        let words = raw_words(line.text);
        let err = |column: usize, message: String| ParseError { line: number, column, message };
        let shape_ok = words.len() == 6 && words[2].0 == ":" && words[4].0 == "->";
        if !shape_ok {
            let column = words.get(1).map_or(1, |w| w.1);
            return Err(err(column, "expected `simplicial-map NAME : DOMAIN -> CODOMAIN`".into()));
        }
        let lookup = |(name, column): (&str, usize)| {
            sets.get(name).cloned().ok_or_else(|| err(column, format!("unknown simplicial set `{name}`")))
        };
        let name = words[1].0;
        let domain = lookup(words[3])?;
        let codomain = lookup(words[5])?;
        let mut assignment = Vec::new();
        while let Some(line) = self.peek_line() {
            if Self::is_end(line) {
                break;
            }
            let line = self.next_line("a map line")?;
            let mut c = Cursor::new(line);
            let column = c.column();
            let label = c.word("a domain generator label")?;
            c.keyword("->")?;
            let image = resolve(&codomain, c.line, c.simplex_ref()?)?;
            c.finish()?;
            if domain.find(label).is_none() {
                return Err(ParseError { line: c.line, column, message: format!("unknown generator `{label}` in `{}`", domain.name()) });
            }
            if assignment.iter().any(|(l, _): &(&str, _)| *l == label) {
                return Err(ParseError { line: c.line, column, message: format!("generator `{label}` assigned twice") });
            }
            assignment.push((label, image));
        }
        self.end()?;
        SimplicialMap::from_labels(name, domain, codomain, &assignment).map_err(|e| err(1, e.to_string()))
    }

    fn span(&mut self, sets: &HashMap<String, Arc<SimplicialSet>>, maps: &HashMap<String, SimplicialMap>) -> Result<LinkedSpan, ParseError> {
        let (name, number) = self.header("linked-span")?;
        let mut fields: HashMap<&str, (&str, usize, usize)> = HashMap::new();
        for key in ["lower", "link", "upper", "pi", "iota"] {
            let (value, line) = self.header(key)?;
            let column = raw_words(self.lines[self.pos - 1].text)[1].1;
            fields.insert(key, (value, line, column));
        }
        self.end()?;
        let map_of = |key: &str| {
            let (v, line, column) = fields[key];
            maps.get(v).cloned().ok_or_else(|| ParseError { line, column, message: format!("unknown simplicial map `{v}`") })
        };
        let pi = map_of("pi")?;
        let iota = map_of("iota")?;
        let check = |key: &str, actual: &SimplicialSet| {
            let (v, line, column) = fields[key];
            match sets.get(v) {
                None => Err(ParseError { line, column, message: format!("unknown simplicial set `{v}`") }),
                Some(s) if **s != *actual => Err(ParseError {
                    line,
                    column,
                    message: format!("`{v}` does not match the {key} of the span's maps (`{}`)", actual.name()),
                }),
                Some(_) => Ok(()),
            }
        };
        check("lower", pi.codomain())?;
        check("link", pi.domain())?;
        check("upper", iota.codomain())?;
        LinkedSpan::new(name, pi, iota).map_err(|e| ParseError { line: number, column: 1, message: e.to_string() })
    }
}

/// Parses any sequence of set, map and span documents.
pub fn parse_bundle(text: &str) -> Result<Bundle, ParseError> {
    let mut p = Parser::new(text);
    let mut bundle = Bundle::default();
    let mut sets: HashMap<String, Arc<SimplicialSet>> = HashMap::new();
    let mut maps: HashMap<String, SimplicialMap> = HashMap::new();
    while let Some(line) = p.peek_line() {
        let (number, words) = (line.number, raw_words(line.text));
        let duplicate = |kind: &str, name: &str| ParseError {
            line: number,
            column: words.get(1).map_or(1, |w| w.1),
            message: format!("a {kind} named `{name}` was already defined differently"),
        };
        match words[0].0 {
            "simplicial-set" => {
                let set = p.set()?;
                if let Some(prev) = sets.get(set.name()) {
                    if **prev != set {
                        return Err(duplicate("simplicial set", set.name()));
                    }
                    continue;
                }
                let set = Arc::new(set);
                sets.insert(set.name().to_string(), set.clone());
                bundle.sets.push(set);
            }
            "simplicial-map" => {
                let map = p.map(&sets)?;
                if let Some(prev) = maps.get(map.name()) {
                    if *prev != map {
                        return Err(duplicate("simplicial map", map.name()));
                    }
                    continue;
                }
                maps.insert(map.name().to_string(), map.clone());
                bundle.maps.push(map);
            }
            "linked-span" => {
                let span = p.span(&sets, &maps)?;
                if bundle.span(span.name()).is_some() {
                    return Err(duplicate("linked span", span.name()));
                }
                bundle.spans.push(span);
            }
            other => {
                return Err(ParseError {
                    line: number,
                    column: words[0].1,
                    message: format!(
                        "expected `simplicial-set`, `simplicial-map` or `linked-span`, found `{other}`"
                    ),
                })
            }
        }
    }
    Ok(bundle)
}

fn exactly_one<T>(items: Vec<T>, kind: &str) -> Result<T, ParseError> {
    let n = items.len();
    let mut it = items.into_iter();
    match (it.next(), n) {
        (Some(x), 1) => Ok(x),
        _ => Err(ParseError { line: 1, column: 1, message: format!("expected exactly one {kind}, found {n}") }),
    }
}

/// Parses a single set document.
pub fn parse_set(text: &str) -> Result<SimplicialSet, ParseError> {
    let mut p = Parser::new(text);
    let set = p.set()?;
    if let Some(line) = p.peek_line() {
        return Err(ParseError { line: line.number, column: 1, message: "unexpected input after `end`".into() });
    }
    Ok(set)
}

/// Parses a bundle holding exactly one linked span.
pub fn parse_span(text: &str) -> Result<LinkedSpan, ParseError> {
    exactly_one(parse_bundle(text)?.spans, "linked span")
}
