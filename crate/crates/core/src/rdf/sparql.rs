//! Basic graph pattern queries: `PREFIX` declarations, `SELECT ?v ...` and a
//! `WHERE { ... }` block of triple patterns. Results always have set
//! semantics and come back sorted.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use super::graph::Graph;
use super::term::{Iri, Literal, Term, RDF_TYPE, XSD_DOUBLE, XSD_STRING};
use super::RdfError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Self {
        Variable(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Var(Variable),
    Term(Term),
}

impl PatternTerm {
    pub fn var(name: &str) -> Self {
        PatternTerm::Var(Variable::new(name))
    }

    fn as_var(&self) -> Option<&Variable> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Term(_) => None,
        }
    }
}

impl From<Iri> for PatternTerm {
    fn from(iri: Iri) -> Self {
        PatternTerm::Term(Term::Iri(iri))
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Term(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(subject: impl Into<PatternTerm>, predicate: impl Into<PatternTerm>, object: impl Into<PatternTerm>) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    /// Distinct variables in subject, predicate, object order.
    pub fn variables(&self) -> Vec<Variable> {
        let mut out: Vec<Variable> = Vec::new();
        for t in [&self.subject, &self.predicate, &self.object] {
            if let Some(v) = t.as_var() {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub projection: Vec<Variable>,
    pub patterns: Vec<TriplePattern>,
}

impl Query {
    /// Checks that there is at least one pattern and every projected
    /// variable occurs in some pattern.
    pub fn new(projection: Vec<Variable>, patterns: Vec<TriplePattern>) -> Result<Self, RdfError> {
        if patterns.is_empty() {
            return Err(RdfError::MalformedQuery {
                position: 0,
                message: "WHERE clause has no triple patterns".into(),
            });
        }
        let bound: BTreeSet<Variable> = patterns.iter().flat_map(TriplePattern::variables).collect();
        if let Some(v) = projection.iter().find(|v| !bound.contains(*v)) {
            return Err(RdfError::MalformedQuery {
                position: 0,
                message: format!("projected variable {v} does not occur in any pattern"),
            });
        }
        Ok(Query { projection, patterns })
    }
}

/// Distinct solution rows, each binding exactly `variables` (in order).
/// Rows are kept sorted by the string form of their terms.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct BindingSet {
    variables: Vec<String>,
    rows: Vec<Vec<Term>>,
}

impl BindingSet {
    fn from_rows(variables: &[Variable], rows: impl IntoIterator<Item = Vec<Term>>) -> Self {
        let unique: BTreeSet<(Vec<String>, Vec<Term>)> = rows
            .into_iter()
            .map(|r| (r.iter().map(ToString::to_string).collect(), r))
            .collect();
        BindingSet {
            variables: variables.iter().map(|v| v.name().to_string()).collect(),
            rows: unique.into_iter().map(|(_, r)| r).collect(),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn rows(&self) -> &[Vec<Term>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// All values bound to `var`, in row order.
    pub fn column(&self, var: &str) -> Vec<&Term> {
        match self.variables.iter().position(|v| v == var) {
            Some(i) => self.rows.iter().map(|r| &r[i]).collect(),
            None => Vec::new(),
        }
    }

    /// Each row as a variable → term map.
    pub fn maps(&self) -> Vec<BTreeMap<&str, &Term>> {
        self.rows
            .iter()
            .map(|r| self.variables.iter().map(String::as_str).zip(r.iter()).collect())
            .collect()
    }
}

type Solution = HashMap<Variable, Term>;

fn unify(pattern: &TriplePattern, triple: &super::term::Triple, seed: &Solution) -> Option<Solution> {
    let mut out = seed.clone();
    let pairs = [
        (&pattern.subject, Term::Iri(triple.subject.clone())),
        (&pattern.predicate, Term::Iri(triple.predicate.clone())),
        (&pattern.object, triple.object.clone()),
    ];
    for (pt, value) in pairs {
        match pt {
            PatternTerm::Term(t) => {
                if *t != value {
                    return None;
                }
            }
            PatternTerm::Var(v) => match out.get(v) {
                Some(existing) if *existing != value => return None,
                Some(_) => {}
                None => {
                    out.insert(v.clone(), value);
                }
            },
        }
    }
    Some(out)
}

fn resolve<'a>(pt: &'a PatternTerm, solution: &'a Solution) -> Option<&'a Term> {
    match pt {
        PatternTerm::Term(t) => Some(t),
        PatternTerm::Var(v) => solution.get(v),
    }
}

fn extend(graph: &Graph, pattern: &TriplePattern, seed: &Solution) -> Vec<Solution> {
    let s = resolve(&pattern.subject, seed);
    let p = resolve(&pattern.predicate, seed);
    let o = resolve(&pattern.object, seed);
    // A literal in subject or predicate position can never match.
    let s_iri = match s {
        Some(Term::Iri(i)) => Some(i),
        Some(Term::Literal(_)) => return Vec::new(),
        None => None,
    };
    let p_iri = match p {
        Some(Term::Iri(i)) => Some(i),
        Some(Term::Literal(_)) => return Vec::new(),
        None => None,
    };
    graph
        .lookup(s_iri, p_iri, o)
        .filter_map(|t| unify(pattern, t, seed))
        .collect()
}

/// All triples unifying with a single pattern, projected onto its variables.
pub fn match_pattern(graph: &Graph, pattern: &TriplePattern) -> BindingSet {
    let vars = pattern.variables();
    let rows = extend(graph, pattern, &Solution::new())
        .into_iter()
        .map(|sol| vars.iter().map(|v| sol[v].clone()).collect::<Vec<_>>());
    BindingSet::from_rows(&vars, rows)
}

/// Joins the pattern matches in listed order, projects, deduplicates and
/// sorts.
pub fn evaluate(graph: &Graph, query: &Query) -> BindingSet {
    let mut solutions = vec![Solution::new()];
    for pattern in &query.patterns {
        solutions = solutions.iter().flat_map(|seed| extend(graph, pattern, seed)).collect();
        if solutions.is_empty() {
            break;
        }
    }
    let rows = solutions
        .into_iter()
        .map(|sol| query.projection.iter().map(|v| sol[v].clone()).collect::<Vec<_>>());
    BindingSet::from_rows(&query.projection, rows)
}

/// Parses and evaluates in one step.
pub fn query(graph: &Graph, text: &str) -> Result<BindingSet, RdfError> {
    let q = parse_sparql_with_prefixes(text, graph.prefixes())?;
    Ok(evaluate(graph, &q))
}

pub fn parse_sparql(text: &str) -> Result<Query, RdfError> {
    parse_sparql_with_prefixes(text, &BTreeMap::new())
}

/// Like [`parse_sparql`], with `defaults` available as pre-declared
/// prefixes. Declarations in the query text override them.
pub fn parse_sparql_with_prefixes(text: &str, defaults: &BTreeMap<String, String>) -> Result<Query, RdfError> {
    let mut p = QueryParser {
        src: text,
        pos: 0,
        prefixes: defaults.clone(),
    };
    p.query()
}

struct QueryParser<'a> {
    src: &'a str,
    pos: usize,
    prefixes: BTreeMap<String, String>,
}

impl<'a> QueryParser<'a> {
    fn err(&self, message: impl Into<String>) -> RdfError {
        RdfError::MalformedQuery {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') {
                match trimmed.find('\n') {
                    Some(n) => self.pos += n + 1,
                    None => self.pos = self.src.len(),
                }
            } else {
                break;
            }
        }
    }

    fn try_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if rest.len() >= kw.len()
            && rest.is_char_boundary(kw.len())
            && rest[..kw.len()].eq_ignore_ascii_case(kw)
            && rest[kw.len()..]
                .chars()
                .next()
                .is_none_or(|c| !(c.is_alphanumeric() || c == '_' || c == ':'))
        {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expect_char(&mut self, c: char) -> Result<(), RdfError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn query(&mut self) -> Result<Query, RdfError> {
        while self.try_keyword("PREFIX") {
            self.skip_ws();
            let start = self.pos;
            let colon = self.rest().find(':').ok_or_else(|| self.err("expected prefix name"))?;
            let prefix = self.rest()[..colon].to_string();
            if !prefix.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-') {
                self.pos = start;
                return Err(self.err("malformed prefix name"));
            }
            self.pos += colon + 1;
            self.skip_ws();
            let ns = self.iri_ref()?;
            self.prefixes.insert(prefix, ns);
        }
        if !self.try_keyword("SELECT") {
            return Err(self.err("expected SELECT"));
        }
        self.try_keyword("DISTINCT");
        let select_pos = self.pos;
        let mut projection = Vec::new();
        let mut star = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('?') | Some('$') => projection.push(self.variable()?),
                Some('*') if projection.is_empty() && !star => {
                    self.pos += 1;
                    star = true;
                }
                _ => break,
            }
        }
        if projection.is_empty() && !star {
            return Err(self.err("SELECT needs at least one variable"));
        }
        if !self.try_keyword("WHERE") {
            self.skip_ws();
            if self.peek() != Some('{') {
                return Err(self.err("expected WHERE"));
            }
        }
        self.expect_char('{')?;
        let mut patterns = Vec::new();
        let mut separated = true;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('}') => {
                    self.pos += 1;
                    break;
                }
                None => return Err(self.err("unterminated WHERE block")),
                _ => {}
            }
            if !separated {
                return Err(self.err("expected '.' between triple patterns"));
            }
            for kw in ["FILTER", "OPTIONAL", "UNION", "GRAPH", "BIND", "VALUES", "MINUS"] {
                if self.try_keyword(kw) {
                    return Err(self.err(format!("{kw} is not supported")));
                }
            }
            let s = self.pattern_term(false)?;
            let p = self.pattern_term(true)?;
            let o = self.pattern_term(false)?;
            patterns.push(TriplePattern::new(s, p, o));
            self.skip_ws();
            separated = self.peek() == Some('.');
            if separated {
                self.pos += 1;
            }
        }
        self.skip_ws();
        if !self.rest().is_empty() {
            return Err(self.err("unexpected trailing input"));
        }
        if patterns.is_empty() {
            return Err(self.err("WHERE clause has no triple patterns"));
        }
        if star {
            let mut seen = Vec::new();
            for v in patterns.iter().flat_map(TriplePattern::variables) {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
            projection = seen;
        }
        Query::new(projection, patterns).map_err(|e| match e {
            RdfError::MalformedQuery { message, .. } => RdfError::MalformedQuery {
                position: select_pos,
                message,
            },
            other => other,
        })
    }

    fn variable(&mut self) -> Result<Variable, RdfError> {
        self.pos += 1;
        let name: String = self.rest().chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
        if name.is_empty() {
            return Err(self.err("empty variable name"));
        }
        self.pos += name.len();
        Ok(Variable(name))
    }

    fn iri_ref(&mut self) -> Result<String, RdfError> {
        if self.peek() != Some('<') {
            return Err(self.err("expected '<'"));
        }
        let end = self.rest().find('>').ok_or_else(|| self.err("unterminated IRI"))?;
        let value = self.rest()[1..end].to_string();
        if value.chars().any(char::is_whitespace) {
            return Err(self.err("illegal character in IRI"));
        }
        self.pos += end + 1;
        Ok(value)
    }

    fn iri(&mut self) -> Result<Iri, RdfError> {
        let start = self.pos;
        if self.peek() == Some('<') {
            let raw = self.iri_ref()?;
            return Iri::new(raw).ok_or(RdfError::MalformedQuery {
                position: start,
                message: "IRI is not absolute".into(),
            });
        }
        let token: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':'))
            .collect();
        let token = token.trim_end_matches('.');
        let colon = token.find(':').ok_or_else(|| self.err("expected term"))?;
        let (prefix, local) = (&token[..colon], &token[colon + 1..]);
        let ns = self.prefixes.get(prefix).ok_or_else(|| RdfError::UnknownPrefix {
            prefix: prefix.to_string(),
            line: 1,
            column: self.src[..start].chars().count() + 1,
        })?;
        let iri = Iri::new(format!("{ns}{local}")).ok_or_else(|| self.err("prefixed name does not expand to an absolute IRI"))?;
        self.pos += token.len();
        Ok(iri)
    }

    fn pattern_term(&mut self, predicate: bool) -> Result<PatternTerm, RdfError> {
        self.skip_ws();
        match self.peek() {
            Some('?') | Some('$') => Ok(PatternTerm::Var(self.variable()?)),
            Some('"') if !predicate => Ok(PatternTerm::Term(Term::Literal(self.literal()?))),
            Some(c) if !predicate && (c.is_ascii_digit() || c == '-' || c == '+') => {
                let len = self
                    .rest()
                    .char_indices()
                    .take_while(|(i, c)| {
                        c.is_ascii_digit() || matches!(c, 'e' | 'E') || (*i == 0 && matches!(c, '+' | '-')) || *c == '.'
                    })
                    .map(|(i, c)| i + c.len_utf8())
                    .last()
                    .unwrap_or(0);
                let lexical = self.rest()[..len].trim_end_matches('.').to_string();
                let lit = Literal::double_lexical(lexical.clone()).ok_or_else(|| self.err("malformed number"))?;
                self.pos += lexical.len();
                Ok(PatternTerm::Term(Term::Literal(lit)))
            }
            Some('a') if predicate && self.rest()[1..].chars().next().is_none_or(char::is_whitespace) => {
                self.pos += 1;
                Ok(PatternTerm::Term(Term::Iri(Iri::new(RDF_TYPE).expect("rdf:type"))))
            }
            Some('[') | Some('(') => Err(self.err("blank nodes and collections are not supported")),
            Some('_') if self.rest().starts_with("_:") => Err(self.err("blank nodes are not supported")),
            Some(_) => Ok(PatternTerm::Term(Term::Iri(self.iri()?))),
            None => Err(self.err("unexpected end of query")),
        }
    }

    fn literal(&mut self) -> Result<Literal, RdfError> {
        self.pos += 1;
        let mut value = String::new();
        loop {
            let c = self.peek().ok_or_else(|| self.err("unterminated string literal"))?;
            self.pos += c.len_utf8();
            match c {
                '"' => break,
                '\\' => {
                    let e = self.peek().ok_or_else(|| self.err("unterminated escape"))?;
                    self.pos += e.len_utf8();
                    value.push(match e {
                        'n' => '\n',
                        't' => '\t',
                        'r' => '\r',
                        other => other,
                    });
                }
                c => value.push(c),
            }
        }
        if self.rest().starts_with("^^") {
            self.pos += 2;
            let dt = self.iri()?;
            return match dt.as_str() {
                XSD_DOUBLE => Literal::double_lexical(value).ok_or_else(|| self.err("malformed double")),
                XSD_STRING => Ok(Literal::string(value)),
                _ => Err(self.err("unsupported datatype")),
            };
        }
        Ok(Literal::string(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::turtle::parse_turtle;

    const PREFIX: &str = "PREFIX hg: <http://hg.ex/>\n";

    fn ontology() -> Graph {
        parse_turtle(
            "@prefix hg: <http://hg.ex/> .
             hg:hit hg:hasCrimeLevel hg:Level2 .
             hg:rape hg:hasCrimeLevel hg:Level3 .
             hg:Level2 hg:hasService hg:Hospital, hg:Lawyer, hg:Police .
             hg:Level3 hg:hasService hg:Hospital, hg:Lawyer, hg:Police, hg:NGO .",
        )
        .unwrap()
    }

    fn locals(b: &BindingSet, var: &str) -> Vec<String> {
        b.column(var).iter().map(|t| t.as_iri().unwrap().local_name().to_string()).collect()
    }

    #[test]
    fn two_pattern_join() {
        let q = parse_sparql(&format!(
            "{PREFIX}SELECT ?svc WHERE {{ hg:hit hg:hasCrimeLevel ?lvl . ?lvl hg:hasService ?svc }}"
        ))
        .unwrap();
        assert_eq!(q.patterns.len(), 2);
        let out = evaluate(&ontology(), &q);
        assert_eq!(locals(&out, "svc"), vec!["Hospital", "Lawyer", "Police"]);
    }

    #[test]
    fn single_pattern_match() {
        let g = parse_turtle("@prefix hg: <http://hg.ex/> . hg:hit hg:hasCrimeLevel hg:Level2 .").unwrap();
        let p = TriplePattern::new(
            Iri::new("http://hg.ex/hit").unwrap(),
            Iri::new("http://hg.ex/hasCrimeLevel").unwrap(),
            PatternTerm::var("l"),
        );
        let out = match_pattern(&g, &p);
        assert_eq!(out.variables(), ["l"]);
        assert_eq!(locals(&out, "l"), vec!["Level2"]);

        let none = TriplePattern::new(PatternTerm::var("s"), Iri::new("http://hg.ex/nothing").unwrap(), PatternTerm::var("o"));
        assert!(match_pattern(&g, &none).is_empty());
    }

    #[test]
    fn repeated_variable_binds_consistently() {
        let g = parse_turtle("@prefix hg: <http://hg.ex/> . hg:a hg:p hg:a . hg:a hg:p hg:b .").unwrap();
        let p = TriplePattern::new(PatternTerm::var("x"), Iri::new("http://hg.ex/p").unwrap(), PatternTerm::var("x"));
        assert_eq!(locals(&match_pattern(&g, &p), "x"), vec!["a"]);
    }

    #[test]
    fn empty_graph_gives_empty_result() {
        let q = parse_sparql(&format!("{PREFIX}SELECT ?s WHERE {{ ?s hg:p ?o }}")).unwrap();
        assert!(evaluate(&Graph::new(), &q).is_empty());
    }

    #[test]
    fn empty_where_is_malformed() {
        assert!(matches!(parse_sparql("SELECT ?x WHERE { }"), Err(RdfError::MalformedQuery { .. })));
    }

    #[test]
    fn undeclared_prefix() {
        assert!(matches!(
            parse_sparql("SELECT ?x WHERE { ?x zz:p ?y }"),
            Err(RdfError::UnknownPrefix { ref prefix, .. }) if prefix == "zz"
        ));
    }

    #[test]
    fn unsupported_features_rejected() {
        for q in [
            "SELECT ?x WHERE { ?x <http://a/p> ?y . FILTER(?y) }",
            "SELECT ?x WHERE { OPTIONAL { ?x <http://a/p> ?y } }",
            "SELECT ?z WHERE { ?x <http://a/p> ?y }",
            "SELECT WHERE { ?x <http://a/p> ?y }",
            "SELECT ?x WHERE { ?x <http://a/p> ?y ?x <http://a/p> ?y }",
            "SELECT ?x { ?x <http://a/p> [] }",
        ] {
            assert!(parse_sparql(q).is_err(), "{q}");
        }
    }

    #[test]
    fn literal_and_a_keyword_in_patterns() {
        let g = parse_turtle(
            "@prefix hg: <http://hg.ex/> . hg:run_over a hg:Violence ; hg:label \"run over\" ; hg:weight 3 .",
        )
        .unwrap();
        let out = query(&g, "SELECT ?t WHERE { ?t a hg:Violence . ?t hg:label \"run over\" . ?t hg:weight 3 }").unwrap();
        assert_eq!(locals(&out, "t"), vec!["run_over"]);
    }

    #[test]
    fn select_star_projects_all_variables() {
        let out = query(&ontology(), "SELECT * WHERE { ?t hg:hasCrimeLevel ?l }").unwrap();
        assert_eq!(out.variables(), ["t", "l"]);
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn rows_are_sorted_and_distinct() {
        let out = query(&ontology(), "SELECT ?svc WHERE { ?l hg:hasService ?svc }").unwrap();
        assert_eq!(locals(&out, "svc"), vec!["Hospital", "Lawyer", "NGO", "Police"]);
    }
}
