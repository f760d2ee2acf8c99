//! Tokenizer and recursive-descent parser for the s-expression surface.

use crate::model::MaximalIdealData;

use super::ast::{Def, Expr, ExprKind, Pos, Program, Query, QueryKind, Span};
use super::Diagnostic;

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    LParen,
    RParen,
    Nat(u32),
    Ident(String),
    /// `:name`, stored without the colon.
    Keyword(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Keyword(s) => format!("`:{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '-' | '_' | '\'' | '.')
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.char_indices().peekable(),
            src,
            line: 1,
            col: 1,
        }
    }

    fn pos(&mut self) -> Pos {
        let offset = self.chars.peek().map_or(self.src.len(), |(i, _)| *i);
        Pos {
            line: self.line,
            col: self.col,
            offset,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|(_, c)| *c)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| f(*c)) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn tokens(mut self) -> Result<Vec<Token>, Diagnostic> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                    continue;
                }
                Some(';') => {
                    self.take_while(|c| c != '\n');
                    continue;
                }
                _ => {}
            }
            let start = self.pos();
            let tok = match self.peek() {
                None => {
                    out.push(Token {
                        tok: Tok::Eof,
                        span: Span::new(start, start),
                    });
                    return Ok(out);
                }
                Some('(') => {
                    self.bump();
                    Tok::LParen
                }
                Some(')') => {
                    self.bump();
                    Tok::RParen
                }
                Some(c) if c.is_ascii_digit() => {
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    let n = digits.parse().map_err(|_| {
                        Diagnostic::syntax(
                            Span::new(start, self.pos()),
                            format!("number `{digits}` is too large"),
                            Vec::new(),
                        )
                    })?;
                    Tok::Nat(n)
                }
                Some(':') => {
                    self.bump();
                    let name = self.take_while(is_name_char);
                    if name.is_empty() {
                        return Err(Diagnostic::syntax(
                            Span::new(start, self.pos()),
                            "`:` must be followed by a keyword name",
                            Vec::new(),
                        ));
                    }
                    Tok::Keyword(name)
                }
                Some(c) if c.is_alphabetic() || c == '_' => Tok::Ident(self.take_while(is_name_char)),
                Some(c) => {
                    self.bump();
                    return Err(Diagnostic::syntax(
                        Span::new(start, self.pos()),
                        format!("unexpected character `{c}`"),
                        Vec::new(),
                    ));
                }
            };
            out.push(Token {
                tok,
                span: Span::new(start, self.pos()),
            });
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

const EXPR_HEADS: [&str; 5] = ["k", "field", "af", "poly", "pullback"];

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn peek2(&self) -> &Token {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, Diagnostic> {
        let t = self.peek();
        let expected: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
        Err(Diagnostic::syntax(
            t.span,
            format!("expected {}, found {}", one_of(&expected), t.tok.describe()),
            expected,
        ))
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<Span, Diagnostic> {
        if self.peek().tok == tok {
            Ok(self.next().span)
        } else {
            self.error(&[label])
        }
    }

    fn keyword(&mut self, name: &str) -> Result<Span, Diagnostic> {
        self.expect(Tok::Keyword(name.into()), &format!(":{name}"))
    }

    fn nat(&mut self) -> Result<u32, Diagnostic> {
        match self.peek().tok {
            Tok::Nat(n) => {
                self.next();
                Ok(n)
            }
            _ => self.error(&["a natural number"]),
        }
    }

    fn program(&mut self) -> Result<Program, Diagnostic> {
        let mut program = Program::default();
        loop {
            let (first, second) = (self.peek().tok.clone(), self.peek2().tok.clone());
            match (first, second) {
                (Tok::Eof, _) => return Ok(program),
                (Tok::LParen, Tok::Ident(head)) if head == "def" => {
                    if let Some(q) = program.queries.last() {
                        let span = self.peek().span;
                        return Err(Diagnostic::syntax(
                            span,
                            format!("definitions must precede queries (last query at {})", q.span),
                            vec!["a query".into()],
                        ));
                    }
                    program.defs.push(self.def()?);
                }
                (Tok::LParen, Tok::Ident(head)) if QueryKind::from_keyword(&head).is_some() => {
                    program.queries.push(self.query()?);
                }
                (Tok::LParen, _) => {
                    self.next();
                    let mut expected = Vec::new();
                    if program.queries.is_empty() {
                        expected.push("def");
                    }
                    expected.extend(QueryKind::ALL.iter().map(|q| q.keyword()));
                    return self.error(&expected);
                }
                _ => return self.error(&["`(`", "end of input"]),
            }
        }
    }

    fn def(&mut self) -> Result<Def, Diagnostic> {
        let open = self.next().span;
        self.next();
        let (name, name_span) = match self.peek().tok.clone() {
            Tok::Ident(n) => (n, self.next().span),
            _ => return self.error(&["a name"]),
        };
        let expr = self.expr()?;
        let close = self.expect(Tok::RParen, "`)`")?;
        Ok(Def {
            name,
            name_span,
            expr,
            span: open.to(close),
        })
    }

    fn query(&mut self) -> Result<Query, Diagnostic> {
        let open = self.next().span;
        let Tok::Ident(head) = self.next().tok else {
            unreachable!("checked by caller")
        };
        let kind = QueryKind::from_keyword(&head).expect("checked by caller");
        let mut args = Vec::with_capacity(kind.arity());
        for _ in 0..kind.arity() {
            args.push(self.expr()?);
        }
        let close = self.expect(Tok::RParen, "`)`")?;
        Ok(Query {
            kind,
            args,
            span: open.to(close),
        })
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        let start = self.peek().span;
        match self.peek().tok.clone() {
            Tok::Ident(name) => {
                self.next();
                return Ok(Expr {
                    kind: ExprKind::Name(name),
                    span: start,
                });
            }
            Tok::LParen => {
                self.next();
            }
            _ => return self.error(&["a name", "`(`"]),
        }
        let head = match self.peek().tok.clone() {
            Tok::Ident(h) if EXPR_HEADS.contains(&h.as_str()) => {
                self.next();
                h
            }
            _ => return self.error(&EXPR_HEADS),
        };
        let kind = match head.as_str() {
            "k" => ExprKind::K,
            "field" => ExprKind::Field(self.nat()?),
            "af" => {
                self.keyword("tdeg")?;
                let tdeg = self.nat()?;
                self.keyword("dim")?;
                let dim = self.nat()?;
                let maximal = if self.peek().tok == Tok::Keyword("maximal".into()) {
                    self.next();
                    Some(self.maximal()?)
                } else {
                    None
                };
                ExprKind::Af { tdeg, dim, maximal }
            }
            "poly" => {
                let base = self.expr()?;
                let n_span = self.peek().span;
                let n = self.nat()?;
                if n == 0 {
                    return Err(Diagnostic::syntax(
                        n_span,
                        "the number of variables must be at least 1",
                        vec!["a natural number >= 1".into()],
                    ));
                }
                ExprKind::Poly(Box::new(base), n)
            }
            "pullback" => {
                self.keyword("T")?;
                let t = self.expr()?;
                self.keyword("D")?;
                let d = self.expr()?;
                ExprKind::Pullback(Box::new(t), Box::new(d))
            }
            _ => unreachable!("head checked against EXPR_HEADS"),
        };
        if self.peek().tok != Tok::RParen {
            let extra: &[&str] = match &kind {
                ExprKind::Af { maximal: None, .. } => &["`)`", ":maximal"],
                _ => &["`)`"],
            };
            return self.error(extra);
        }
        let close = self.next().span;
        Ok(Expr {
            kind,
            span: start.to(close),
        })
    }

    fn maximal(&mut self) -> Result<MaximalIdealData, Diagnostic> {
        self.expect(Tok::LParen, "`(`")?;
        self.keyword("ht")?;
        let height = self.nat()?;
        self.keyword("res-tdeg")?;
        let residue = self.nat()?;
        let unique = if self.peek().tok == Tok::Keyword("unique".into()) {
            self.next();
            true
        } else {
            false
        };
        if self.peek().tok != Tok::RParen {
            return self.error(if unique { &["`)`"] } else { &["`)`", ":unique"] });
        }
        self.next();
        Ok(MaximalIdealData::new(height, residue, unique))
    }
}

fn one_of(items: &[String]) -> String {
    match items {
        [] => "something else".into(),
        [one] => one.clone(),
        _ => format!("one of {}", items.join(", ")),
    }
}

pub fn parse(src: &str) -> Result<Program, Diagnostic> {
    let toks = Lexer::new(src).tokens()?;
    Parser { toks, at: 0 }.program()
}
