//! Reader and writer for the Turtle subset used by the ontology files.
//!
//! Supported: `@prefix` / `PREFIX` directives, `<iri>` references, prefixed
//! names, the `a` keyword, `;` predicate lists, `,` object lists, quoted
//! string literals (optionally typed `xsd:string` or `xsd:double`) and bare
//! numbers, which become doubles. Blank nodes, collections, `@base`,
//! language tags and other datatypes are rejected with a positioned error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::graph::Graph;
use super::term::{escape_string, Datatype, Iri, Literal, Term, Triple, RDF_TYPE, XSD_DOUBLE, XSD_STRING};
use super::RdfError;

pub fn parse_turtle(text: &str) -> Result<Graph, RdfError> {
    let mut parser = Parser::new(text);
    parser.document()?;
    Ok(parser.graph)
}

/// Writes the graph deterministically: prefix header sorted by prefix name,
/// then statements sorted by subject, predicate and object, grouped per
/// subject with `;` and per predicate with `,`.
pub fn serialize_turtle(graph: &Graph) -> String {
    let prefixes = graph.prefixes();
    let mut out = String::new();
    for (prefix, ns) in prefixes {
        let _ = writeln!(out, "@prefix {prefix}: <{ns}> .");
    }
    let mut sorted: Vec<&Triple> = graph.iter().collect();
    sorted.sort_by_cached_key(|t| (t.subject.to_string(), t.predicate.to_string(), t.object.to_string()));
    if !sorted.is_empty() && !prefixes.is_empty() {
        out.push('\n');
    }

    let mut i = 0;
    while i < sorted.len() {
        let subject = &sorted[i].subject;
        let mut j = i;
        while j < sorted.len() && &sorted[j].subject == subject {
            j += 1;
        }
        let _ = write!(out, "{}", compact_iri(subject, prefixes));
        let group = &sorted[i..j];
        let mut k = 0;
        let mut first_predicate = true;
        while k < group.len() {
            let predicate = &group[k].predicate;
            let mut m = k;
            while m < group.len() && &group[m].predicate == predicate {
                m += 1;
            }
            if !first_predicate {
                out.push_str(" ;\n   ");
            }
            first_predicate = false;
            let pred = if predicate.as_str() == RDF_TYPE {
                "a".to_string()
            } else {
                compact_iri(predicate, prefixes)
            };
            let objects: Vec<String> = group[k..m].iter().map(|t| write_object(&t.object, prefixes)).collect();
            let _ = write!(out, " {pred} {}", objects.join(" , "));
            k = m;
        }
        out.push_str(" .\n");
        i = j;
    }
    out
}

fn write_object(term: &Term, prefixes: &BTreeMap<String, String>) -> String {
    match term {
        Term::Iri(iri) => compact_iri(iri, prefixes),
        Term::Literal(lit) => match lit.datatype() {
            Datatype::PlainString => format!("\"{}\"", escape_string(lit.lexical())),
            Datatype::Double if is_bare_number(lit.lexical()) => lit.lexical().to_string(),
            Datatype::Double => format!("\"{}\"^^<{XSD_DOUBLE}>", escape_string(lit.lexical())),
        },
    }
}

fn compact_iri(iri: &Iri, prefixes: &BTreeMap<String, String>) -> String {
    let value = iri.as_str();
    // Longest namespace wins so nested namespaces compact predictably.
    let best = prefixes
        .iter()
        .filter(|(_, ns)| value.starts_with(ns.as_str()) && is_safe_local(&value[ns.len()..]))
        .max_by_key(|(p, ns)| (ns.len(), std::cmp::Reverse((*p).clone())));
    match best {
        Some((prefix, ns)) => format!("{prefix}:{}", &value[ns.len()..]),
        None => format!("<{value}>"),
    }
}

fn is_safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        }
        _ => false,
    }
}

fn is_bare_number(s: &str) -> bool {
    let mut p = NumberScan::new(s);
    p.scan() == Some(s.len())
}

/// Recognizes `[+-]? (digits ('.' digits?)? | '.' digits) ([eE] [+-]? digits)?`
/// with the constraint that a trailing `.` is never consumed.
struct NumberScan<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> NumberScan<'a> {
    fn new(s: &'a str) -> Self {
        NumberScan { bytes: s.as_bytes(), pos: 0 }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.pos - start
    }

    /// Returns the length of the numeric prefix, if any.
    fn scan(&mut self) -> Option<usize> {
        if matches!(self.bytes.first(), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let int = self.digits();
        let mut frac = 0;
        if self.bytes.get(self.pos) == Some(&b'.') && self.bytes.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
            frac = self.digits();
        }
        if int == 0 && frac == 0 {
            return None;
        }
        if matches!(self.bytes.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                self.pos = save;
            }
        }
        Some(self.pos)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
    graph: Graph,
    prefixes: BTreeMap<String, String>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            line: 1,
            column: 1,
            graph: Graph::new(),
            prefixes: BTreeMap::new(),
        }
    }

    fn err(&self, message: impl Into<String>) -> RdfError {
        RdfError::TurtleSyntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn advance(&mut self, n_bytes: usize) {
        let target = self.pos + n_bytes;
        while self.pos < target {
            self.bump();
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), RdfError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn keyword(&self, kw: &str, case_insensitive: bool) -> bool {
        let rest = self.rest();
        if rest.len() < kw.len() || !rest.is_char_boundary(kw.len()) {
            return false;
        }
        let head = &rest[..kw.len()];
        let matches = if case_insensitive { head.eq_ignore_ascii_case(kw) } else { head == kw };
        matches
            && rest[kw.len()..]
                .chars()
                .next()
                .is_none_or(|c| c.is_whitespace() || c == '<' || c == '#')
    }

    fn document(&mut self) -> Result<(), RdfError> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            if self.keyword("@prefix", false) {
                self.advance("@prefix".len());
                self.prefix_decl()?;
                self.expect('.')?;
            } else if self.keyword("PREFIX", true) {
                self.advance("PREFIX".len());
                self.prefix_decl()?;
            } else if self.rest().starts_with('@') {
                return Err(self.err("unsupported directive"));
            } else {
                self.statement()?;
            }
        }
    }

    fn prefix_decl(&mut self) -> Result<(), RdfError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if !(c.is_alphanumeric() || c == '_' || c == '-' || c == '.') {
                return Err(self.err("malformed prefix name"));
            }
            self.bump();
        }
        let prefix = self.src[start..self.pos].to_string();
        if self.peek() != Some(':') {
            return Err(self.err("expected ':' after prefix name"));
        }
        self.bump();
        self.skip_ws();
        let ns = self.iri_ref_raw()?;
        self.graph.set_prefix(prefix.clone(), ns.clone());
        self.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn iri_ref_raw(&mut self) -> Result<String, RdfError> {
        if self.peek() != Some('<') {
            return Err(self.err("expected '<'"));
        }
        self.bump();
        let start = self.pos;
        loop {
            match self.peek() {
                Some('>') => break,
                Some(c) if c.is_whitespace() || c == '<' => return Err(self.err("illegal character in IRI")),
                Some(_) => {
                    self.bump();
                }
                None => return Err(self.err("unterminated IRI")),
            }
        }
        let value = self.src[start..self.pos].to_string();
        self.bump();
        Ok(value)
    }

    fn statement(&mut self) -> Result<(), RdfError> {
        let subject = self.iri_term("subject")?;
        loop {
            self.skip_ws();
            let predicate = if self.keyword("a", false) {
                self.bump();
                Iri::new(RDF_TYPE).expect("rdf:type")
            } else {
                self.iri_term("predicate")?
            };
            loop {
                let object = self.object()?;
                self.graph.insert(Triple::new(subject.clone(), predicate.clone(), object));
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                    continue;
                }
                break;
            }
            self.skip_ws();
            match self.peek() {
                Some(';') => {
                    while self.peek() == Some(';') {
                        self.bump();
                        self.skip_ws();
                    }
                    if self.peek() == Some('.') {
                        self.bump();
                        return Ok(());
                    }
                }
                Some('.') => {
                    self.bump();
                    return Ok(());
                }
                _ => return Err(self.err("expected ',', ';' or '.'")),
            }
        }
    }

    fn reject_unsupported(&self) -> Result<(), RdfError> {
        let rest = self.rest();
        if rest.starts_with('[') || rest.starts_with("_:") {
            return Err(self.err("blank nodes are not supported"));
        }
        if rest.starts_with('(') {
            return Err(self.err("collections are not supported"));
        }
        Ok(())
    }

    fn iri_term(&mut self, role: &str) -> Result<Iri, RdfError> {
        self.skip_ws();
        self.reject_unsupported()?;
        match self.peek() {
            Some('<') => {
                let (line, column) = (self.line, self.column);
                let raw = self.iri_ref_raw()?;
                Iri::new(raw).ok_or(RdfError::TurtleSyntax {
                    line,
                    column,
                    message: "IRI is not absolute".into(),
                })
            }
            Some(_) => self.prefixed_name(role),
            None => Err(self.err(format!("expected {role}"))),
        }
    }

    fn prefixed_name(&mut self, role: &str) -> Result<Iri, RdfError> {
        let (line, column) = (self.line, self.column);
        let rest = self.rest();
        let mut end = 0;
        for (i, c) in rest.char_indices() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%') {
                end = i + c.len_utf8();
            } else {
                break;
            }
        }
        let mut token = &rest[..end];
        while token.ends_with('.') {
            token = &token[..token.len() - 1];
        }
        let Some(colon) = token.find(':') else {
            return Err(self.err(format!("expected {role}")));
        };
        let (prefix, local) = (&token[..colon], &token[colon + 1..]);
        let Some(ns) = self.prefixes.get(prefix) else {
            return Err(RdfError::UnknownPrefix {
                prefix: prefix.to_string(),
                line,
                column,
            });
        };
        let iri = Iri::new(format!("{ns}{local}")).ok_or_else(|| self.err("prefixed name does not expand to an absolute IRI"))?;
        self.advance(token.len());
        Ok(iri)
    }

    fn object(&mut self) -> Result<Term, RdfError> {
        self.skip_ws();
        self.reject_unsupported()?;
        match self.peek() {
            Some('"') => self.string_literal().map(Term::Literal),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => {
                let mut scan = NumberScan::new(self.rest());
                match scan.scan() {
                    Some(len) => {
                        let lexical = self.rest()[..len].to_string();
                        let lit = Literal::double_lexical(lexical).ok_or_else(|| self.err("number is not finite"))?;
                        self.advance(len);
                        Ok(Term::Literal(lit))
                    }
                    None => Err(self.err("malformed number")),
                }
            }
            Some(_) if self.keyword("true", false) || self.keyword("false", false) => {
                Err(self.err("boolean literals are not supported"))
            }
            Some(_) => self.iri_term("object").map(Term::Iri),
            None => Err(self.err("expected object")),
        }
    }

    fn string_literal(&mut self) -> Result<Literal, RdfError> {
        if self.rest().starts_with("\"\"\"") {
            return Err(self.err("long string literals are not supported"));
        }
        self.bump();
        let mut value = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => return Err(self.err("unterminated string literal")),
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some('"') => value.push('"'),
                    Some('\\') => value.push('\\'),
                    Some('n') => value.push('\n'),
                    Some('r') => value.push('\r'),
                    Some('t') => value.push('\t'),
                    Some('\'') => value.push('\''),
                    _ => return Err(self.err("unsupported escape sequence")),
                },
                Some(c) => value.push(c),
            }
        }
        if self.peek() == Some('@') {
            return Err(self.err("language-tagged literals are not supported"));
        }
        if self.rest().starts_with("^^") {
            self.advance(2);
            let (line, column) = (self.line, self.column);
            let datatype = self.iri_term("datatype")?;
            return match datatype.as_str() {
                XSD_DOUBLE => Literal::double_lexical(value).ok_or(RdfError::TurtleSyntax {
                    line,
                    column,
                    message: "double literal is not a finite number".into(),
                }),
                XSD_STRING => Ok(Literal::string(value)),
                other => Err(RdfError::TurtleSyntax {
                    line,
                    column,
                    message: format!("unsupported datatype <{other}>"),
                }),
            };
        }
        Ok(Literal::string(value))
    }
}
