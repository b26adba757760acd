//! A small, independent DOT-language checker.
//!
//! Parses the graph-description subset of DOT — graph header, node and edge
//! statements with attribute lists, `name=value` graph attributes,
//! `graph`/`node`/`edge` attribute statements, and (nested) subgraphs — and
//! rejects anything outside the language: bare keywords as ids, `--` edges
//! inside a digraph, unbalanced brackets, trailing junk. Deliberately shares
//! no code with the emitter under test.
//!
//! Unsupported DOT features (ports, HTML strings, string concatenation with
//! `+`) are parse errors; the emitters never produce them.

use std::collections::BTreeSet;

/// An explicit node statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotNode {
    pub id: String,
    pub attrs: Vec<(String, String)>,
    /// Innermost enclosing `cluster*` subgraph, if any.
    pub cluster: Option<String>,
}

/// One edge (chains `a -> b -> c` contribute one entry per hop).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotEdge {
    pub from: String,
    pub to: String,
    pub attrs: Vec<(String, String)>,
    pub cluster: Option<String>,
}

/// A checked DOT document.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DotGraph {
    pub directed: bool,
    pub name: Option<String>,
    pub nodes: Vec<DotNode>,
    pub edges: Vec<DotEdge>,
    /// Names of subgraphs whose name starts with `cluster`.
    pub clusters: Vec<String>,
}

impl DotGraph {
    /// Every node id in the document: explicit statements plus edge
    /// endpoints (DOT declares nodes implicitly on first mention).
    pub fn node_ids(&self) -> BTreeSet<&str> {
        let mut ids: BTreeSet<&str> = self.nodes.iter().map(|n| n.id.as_str()).collect();
        for e in &self.edges {
            ids.insert(&e.from);
            ids.insert(&e.to);
        }
        ids
    }

    /// First explicit statement for a node id.
    pub fn node(&self, id: &str) -> Option<&DotNode> {
        self.nodes.iter().find(|n| n.id == id)
    }

    /// Value of a node's attribute, e.g. `shape`.
    pub fn node_attr(&self, id: &str, key: &str) -> Option<&str> {
        self.node(id)?
            .attrs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Id(String),
    /// Quoted or numeral form of an ID; never a keyword even if it spells one.
    QuotedId(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Eq,
    DirectedEdge,
    UndirectedEdge,
}

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '/' if bytes.get(i + 1) == Some(&'/') => {
                while i < bytes.len() && bytes[i] != '\n' {
                    i += 1;
                }
            }
            '/' if bytes.get(i + 1) == Some(&'*') => {
                i += 2;
                loop {
                    if i + 1 >= bytes.len() {
                        return Err("unterminated block comment".to_string());
                    }
                    if bytes[i] == '*' && bytes[i + 1] == '/' {
                        i += 2;
                        break;
                    }
                    i += 1;
                }
            }
            '{' => {
                toks.push(Tok::LBrace);
                i += 1;
            }
            '}' => {
                toks.push(Tok::RBrace);
                i += 1;
            }
            '[' => {
                toks.push(Tok::LBracket);
                i += 1;
            }
            ']' => {
                toks.push(Tok::RBracket);
                i += 1;
            }
            ';' => {
                toks.push(Tok::Semi);
                i += 1;
            }
            ',' => {
                toks.push(Tok::Comma);
                i += 1;
            }
            '=' => {
                toks.push(Tok::Eq);
                i += 1;
            }
            '-' => match bytes.get(i + 1) {
                Some('>') => {
                    toks.push(Tok::DirectedEdge);
                    i += 2;
                }
                Some('-') => {
                    toks.push(Tok::UndirectedEdge);
                    i += 2;
                }
                Some(d) if d.is_ascii_digit() || *d == '.' => {
                    let (num, next) = lex_numeral(&bytes, i)?;
                    toks.push(Tok::QuotedId(num));
                    i = next;
                }
                _ => return Err("stray '-'".to_string()),
            },
            '"' => {
                let mut value = String::new();
                i += 1;
                loop {
                    match bytes.get(i) {
                        None => return Err("unterminated quoted string".to_string()),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => match bytes.get(i + 1) {
                            Some('"') => {
                                value.push('"');
                                i += 2;
                            }
                            Some('\\') => {
                                value.push('\\');
                                i += 2;
                            }
                            // DOT keeps unknown escapes verbatim.
                            Some(other) => {
                                value.push('\\');
                                value.push(*other);
                                i += 2;
                            }
                            None => return Err("unterminated quoted string".to_string()),
                        },
                        Some(other) => {
                            value.push(*other);
                            i += 1;
                        }
                    }
                }
                toks.push(Tok::QuotedId(value));
            }
            c if c.is_ascii_digit() || c == '.' => {
                let (num, next) = lex_numeral(&bytes, i)?;
                toks.push(Tok::QuotedId(num));
                i = next;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    name.push(bytes[i]);
                    i += 1;
                }
                toks.push(Tok::Id(name));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(toks)
}

fn lex_numeral(bytes: &[char], start: usize) -> Result<(String, usize), String> {
    let mut i = start;
    let mut num = String::new();
    if bytes[i] == '-' {
        num.push('-');
        i += 1;
    }
    let mut digits = 0;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        num.push(bytes[i]);
        i += 1;
        digits += 1;
    }
    if i < bytes.len() && bytes[i] == '.' {
        num.push('.');
        i += 1;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            num.push(bytes[i]);
            i += 1;
            digits += 1;
        }
    }
    if digits == 0 {
        return Err("malformed numeral".to_string());
    }
    Ok((num, i))
}

const KEYWORDS: [&str; 6] = ["graph", "digraph", "subgraph", "node", "edge", "strict"];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s.to_ascii_lowercase().as_str())
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    graph: DotGraph,
    /// Subgraph name stack (None for anonymous subgraphs).
    scopes: Vec<Option<String>>,
}

/// Checks that `text` is a well-formed DOT graph document.
pub fn parse_dot(text: &str) -> Result<DotGraph, String> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        graph: DotGraph::default(),
        scopes: Vec::new(),
    };
    p.document()?;
    Ok(p.graph)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), String> {
        match self.next() {
            Some(t) if t == tok => Ok(()),
            other => Err(format!("expected {what}, found {other:?}")),
        }
    }

    /// Is the next token the given case-insensitive keyword?
    fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Id(name)) if name.eq_ignore_ascii_case(word))
    }

    /// An ID in id position: bare non-keyword identifier, quoted string, or
    /// numeral.
    fn id(&mut self, what: &str) -> Result<String, String> {
        match self.next() {
            Some(Tok::Id(name)) => {
                if is_keyword(&name) {
                    Err(format!("keyword {name:?} cannot be used as {what}"))
                } else {
                    Ok(name)
                }
            }
            Some(Tok::QuotedId(value)) => Ok(value),
            other => Err(format!("expected {what}, found {other:?}")),
        }
    }

    fn document(&mut self) -> Result<(), String> {
        if self.at_keyword("strict") {
            self.pos += 1;
        }
        self.graph.directed = if self.at_keyword("digraph") {
            self.pos += 1;
            true
        } else if self.at_keyword("graph") {
            self.pos += 1;
            false
        } else {
            return Err("expected 'graph' or 'digraph'".to_string());
        };
        if !matches!(self.peek(), Some(Tok::LBrace)) {
            self.graph.name = Some(self.id("graph name")?);
        }
        self.expect(Tok::LBrace, "'{'")?;
        self.stmt_list()?;
        self.expect(Tok::RBrace, "'}'")?;
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(format!("trailing input after graph body: {t:?}")),
        }
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        loop {
            match self.peek() {
                Some(Tok::RBrace) | None => return Ok(()),
                Some(Tok::Semi) => {
                    self.pos += 1;
                }
                _ => self.stmt()?,
            }
        }
    }

    fn current_cluster(&self) -> Option<String> {
        self.scopes
            .iter()
            .rev()
            .flatten()
            .find(|name| name.starts_with("cluster"))
            .cloned()
    }

    fn stmt(&mut self) -> Result<(), String> {
        // Attribute statements: graph/node/edge [ ... ].
        if self.at_keyword("graph") || self.at_keyword("node") || self.at_keyword("edge") {
            self.pos += 1;
            return self.attr_list().map(|_| ());
        }
        if self.at_keyword("subgraph") || matches!(self.peek(), Some(Tok::LBrace)) {
            return self.subgraph();
        }
        if self.at_keyword("strict") || self.at_keyword("digraph") {
            return Err("graph keyword inside a body".to_string());
        }

        let first = self.id("a node id or attribute name")?;
        match self.peek() {
            Some(Tok::Eq) => {
                // name = value (graph attribute)
                self.pos += 1;
                self.id("an attribute value")?;
                Ok(())
            }
            Some(Tok::DirectedEdge) | Some(Tok::UndirectedEdge) => {
                let mut chain = vec![first];
                while matches!(
                    self.peek(),
                    Some(Tok::DirectedEdge) | Some(Tok::UndirectedEdge)
                ) {
                    let op = self.next().unwrap();
                    if self.graph.directed && op == Tok::UndirectedEdge {
                        return Err("'--' edge in a digraph".to_string());
                    }
                    if !self.graph.directed && op == Tok::DirectedEdge {
                        return Err("'->' edge in an undirected graph".to_string());
                    }
                    chain.push(self.id("an edge endpoint")?);
                }
                let attrs = if matches!(self.peek(), Some(Tok::LBracket)) {
                    self.attr_list()?
                } else {
                    Vec::new()
                };
                let cluster = self.current_cluster();
                for pair in chain.windows(2) {
                    self.graph.edges.push(DotEdge {
                        from: pair[0].clone(),
                        to: pair[1].clone(),
                        attrs: attrs.clone(),
                        cluster: cluster.clone(),
                    });
                }
                Ok(())
            }
            _ => {
                let attrs = if matches!(self.peek(), Some(Tok::LBracket)) {
                    self.attr_list()?
                } else {
                    Vec::new()
                };
                let cluster = self.current_cluster();
                self.graph.nodes.push(DotNode {
                    id: first,
                    attrs,
                    cluster,
                });
                Ok(())
            }
        }
    }

    fn subgraph(&mut self) -> Result<(), String> {
        let mut name = None;
        if self.at_keyword("subgraph") {
            self.pos += 1;
            if !matches!(self.peek(), Some(Tok::LBrace)) {
                name = Some(self.id("a subgraph name")?);
            }
        }
        if let Some(n) = &name {
            if n.starts_with("cluster") {
                self.graph.clusters.push(n.clone());
            }
        }
        self.expect(Tok::LBrace, "'{'")?;
        self.scopes.push(name);
        self.stmt_list()?;
        self.scopes.pop();
        self.expect(Tok::RBrace, "'}'")
    }

    /// One or more bracket groups; returns the flattened key/value pairs.
    fn attr_list(&mut self) -> Result<Vec<(String, String)>, String> {
        if !matches!(self.peek(), Some(Tok::LBracket)) {
            return Err("expected '[' to open an attribute list".to_string());
        }
        let mut attrs = Vec::new();
        while matches!(self.peek(), Some(Tok::LBracket)) {
            self.pos += 1;
            loop {
                match self.peek() {
                    Some(Tok::RBracket) => {
                        self.pos += 1;
                        break;
                    }
                    Some(Tok::Comma) | Some(Tok::Semi) => {
                        self.pos += 1;
                    }
                    _ => {
                        let key = self.id("an attribute name")?;
                        self.expect(Tok::Eq, "'='")?;
                        let value = self.id("an attribute value")?;
                        attrs.push((key, value));
                    }
                }
            }
        }
        Ok(attrs)
    }
}
