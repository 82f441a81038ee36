//! A checker for the DOT language grammar (graphs, subgraphs, node, edge
//! and attribute statements; ports and HTML labels are not needed here).

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
    Colon,
    Edge(&'static str),
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let punct = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '=' => Some(Tok::Eq),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '-' if chars.get(i + 1) == Some(&'>') => Some(Tok::Edge("->")),
            '-' if chars.get(i + 1) == Some(&'-') => Some(Tok::Edge("--")),
            _ => None,
        };
        if let Some(t) = punct {
            i += if matches!(t, Tok::Edge(_)) { 2 } else { 1 };
            out.push(t);
            continue;
        }
        match c {
            c if c.is_whitespace() => i += 1,
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                i += 2;
                while i + 1 < chars.len() && !(chars[i] == '*' && chars[i + 1] == '/') {
                    i += 1;
                }
                if i + 1 >= chars.len() {
                    return Err("unterminated comment".into());
                }
                i += 2;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('"') => break,
                        Some('\\') => {
                            let next = *chars.get(i + 1).ok_or("dangling escape")?;
                            if next != '"' {
                                s.push('\\');
                            }
                            s.push(next);
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                out.push(Tok::Id(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' || !c.is_ascii() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || !chars[i].is_ascii())
                {
                    i += 1;
                }
                out.push(Tok::Id(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_digit() || c == '.' || c == '-' => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                if num.matches('.').count() > 1 || num == "-" || num == "." {
                    return Err(format!("bad numeral {num:?}"));
                }
                out.push(Tok::Id(num));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

/// Parsed shape of a graph, enough for structural assertions.
#[derive(Debug, Default)]
pub struct DotGraph {
    pub directed: bool,
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    directed: bool,
    graph: DotGraph,
}

fn keyword(t: &Tok, kw: &str) -> bool {
    matches!(t, Tok::Id(s) if s.eq_ignore_ascii_case(kw))
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.bump() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(format!("expected {t:?}, got {got:?}")),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.bump() {
            Some(Tok::Id(s)) => Ok(s),
            got => Err(format!("expected an identifier, got {got:?}")),
        }
    }

    fn graph(&mut self) -> Result<(), String> {
        if self.peek().is_some_and(|t| keyword(t, "strict")) {
            self.bump();
        }
        match self.bump() {
            Some(t) if keyword(&t, "digraph") => self.directed = true,
            Some(t) if keyword(&t, "graph") => self.directed = false,
            got => return Err(format!("expected graph or digraph, got {got:?}")),
        }
        if matches!(self.peek(), Some(Tok::Id(_))) {
            self.bump();
        }
        self.expect(Tok::LBrace)?;
        self.stmt_list()?;
        self.expect(Tok::RBrace)?;
        if self.pos != self.toks.len() {
            return Err("trailing tokens after the graph".into());
        }
        Ok(())
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while !matches!(self.peek(), Some(Tok::RBrace) | None) {
            self.stmt()?;
            if self.peek() == Some(&Tok::Semi) {
                self.bump();
            }
        }
        Ok(())
    }

    fn attr_list(&mut self) -> Result<(), String> {
        while self.peek() == Some(&Tok::LBracket) {
            self.bump();
            while self.peek() != Some(&Tok::RBracket) {
                self.id()?;
                self.expect(Tok::Eq)?;
                self.id()?;
                if matches!(self.peek(), Some(Tok::Comma | Tok::Semi)) {
                    self.bump();
                }
            }
            self.expect(Tok::RBracket)?;
        }
        Ok(())
    }

    /// A node id (with optional port) or a subgraph; returns the node name.
    fn operand(&mut self) -> Result<Option<String>, String> {
        if matches!(self.peek(), Some(Tok::LBrace))
            || self.peek().is_some_and(|t| keyword(t, "subgraph"))
        {
            self.subgraph()?;
            return Ok(None);
        }
        let name = self.id()?;
        if self.peek() == Some(&Tok::Colon) {
            self.bump();
            self.id()?;
            if self.peek() == Some(&Tok::Colon) {
                self.bump();
                self.id()?;
            }
        }
        Ok(Some(name))
    }

    fn subgraph(&mut self) -> Result<(), String> {
        if self.peek().is_some_and(|t| keyword(t, "subgraph")) {
            self.bump();
            if matches!(self.peek(), Some(Tok::Id(_))) {
                self.bump();
            }
        }
        self.expect(Tok::LBrace)?;
        self.stmt_list()?;
        self.expect(Tok::RBrace)
    }

    fn stmt(&mut self) -> Result<(), String> {
        let head = self.peek().cloned().ok_or("unexpected end of input")?;
        if ["graph", "node", "edge"].iter().any(|k| keyword(&head, k))
            && self.toks.get(self.pos + 1) == Some(&Tok::LBracket)
        {
            self.bump();
            return self.attr_list();
        }
        if matches!(head, Tok::Id(_)) && self.toks.get(self.pos + 1) == Some(&Tok::Eq) {
            self.bump();
            self.bump();
            self.id()?;
            return Ok(());
        }
        let first = self.operand()?;
        let mut prev = first.clone();
        let mut is_edge = false;
        while let Some(Tok::Edge(op)) = self.peek().cloned() {
            if (op == "->") != self.directed {
                return Err(format!("edge operator {op} in the wrong kind of graph"));
            }
            self.bump();
            is_edge = true;
            let next = self.operand()?;
            if let (Some(a), Some(b)) = (&prev, &next) {
                self.graph.edges.push((a.clone(), b.clone()));
            }
            prev = next;
        }
        if !is_edge {
            if let Some(n) = first {
                self.graph.nodes.push(n);
            }
        }
        self.attr_list()
    }
}

/// Parses `src` as DOT, returning its declared nodes and edges.
pub fn parse(src: &str) -> Result<DotGraph, String> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        directed: false,
        graph: DotGraph::default(),
    };
    p.graph()?;
    p.graph.directed = p.directed;
    Ok(p.graph)
}

#[test]
fn checker_accepts_and_rejects() {
    assert!(parse("digraph { a -> b; b -> c [color=red] }").is_ok());
    assert!(parse("strict graph g { a -- b -- c; node [shape=box]; x = y }").is_ok());
    assert!(parse("digraph { subgraph s { a } -> b }").is_ok());
    assert!(parse("digraph { a -- b }").is_err());
    assert!(parse("digraph { a -> }").is_err());
    assert!(parse("digraph { a [label=\"x] }").is_err());
    assert!(parse("digraph { a } }").is_err());
    assert!(parse("tree { }").is_err());
}
