use std::fmt;

use crate::model::{AlgebraExpr, MaximalIdealData};

/// 1-based line and column of a character, plus its byte offset.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
    pub offset: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub fn new(start: Pos, end: Pos) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start, other.end)
    }
}

/// Spans never take part in structural comparison.
impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start.line, self.start.col)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExprKind {
    Name(String),
    K,
    Field(u32),
    Af {
        tdeg: u32,
        dim: u32,
        maximal: Option<MaximalIdealData>,
    },
    Poly(Box<Expr>, u32),
    Pullback(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span::default(),
        }
    }

    /// The surface form of a term, without names.
    pub fn from_algebra(e: &AlgebraExpr) -> Self {
        Expr::new(match e {
            AlgebraExpr::BaseK => ExprKind::K,
            AlgebraExpr::Field { tdeg } => ExprKind::Field(*tdeg),
            AlgebraExpr::Af { tdeg, dim, maximal } => ExprKind::Af {
                tdeg: *tdeg,
                dim: *dim,
                maximal: *maximal,
            },
            AlgebraExpr::Poly { base, vars } => ExprKind::Poly(Box::new(Expr::from_algebra(base)), *vars),
            AlgebraExpr::Pullback { ambient, subring } => ExprKind::Pullback(
                Box::new(Expr::from_algebra(ambient)),
                Box::new(Expr::from_algebra(subring)),
            ),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum QueryKind {
    Invariants,
    Dim,
    Vdim,
    Jaffard,
    TensorDim,
    TensorVdim,
    TensorJaffard,
    Alphas,
    RawThm19,
}

impl QueryKind {
    pub const ALL: [QueryKind; 9] = [
        QueryKind::Invariants,
        QueryKind::Dim,
        QueryKind::Vdim,
        QueryKind::Jaffard,
        QueryKind::TensorDim,
        QueryKind::TensorVdim,
        QueryKind::TensorJaffard,
        QueryKind::Alphas,
        QueryKind::RawThm19,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            QueryKind::Invariants => "invariants",
            QueryKind::Dim => "dim",
            QueryKind::Vdim => "vdim",
            QueryKind::Jaffard => "jaffard",
            QueryKind::TensorDim => "tensor-dim",
            QueryKind::TensorVdim => "tensor-vdim",
            QueryKind::TensorJaffard => "tensor-jaffard",
            QueryKind::Alphas => "alphas",
            QueryKind::RawThm19 => "raw-thm19",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        QueryKind::ALL.into_iter().find(|q| q.keyword() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            QueryKind::Invariants | QueryKind::Dim | QueryKind::Vdim | QueryKind::Jaffard => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Query {
    pub kind: QueryKind,
    pub args: Vec<Expr>,
    pub span: Span,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Def {
    pub name: String,
    pub name_span: Span,
    pub expr: Expr,
    pub span: Span,
}

/// Definitions come first, then queries.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Program {
    pub defs: Vec<Def>,
    pub queries: Vec<Query>,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Name(n) => f.write_str(n),
            ExprKind::K => f.write_str("(k)"),
            ExprKind::Field(t) => write!(f, "(field {t})"),
            ExprKind::Af { tdeg, dim, maximal } => {
                write!(f, "(af :tdeg {tdeg} :dim {dim}")?;
                if let Some(m) = maximal {
                    write!(f, " :maximal (:ht {} :res-tdeg {}", m.height, m.residue_tdeg)?;
                    if m.unique {
                        f.write_str(" :unique")?;
                    }
                    f.write_str(")")?;
                }
                f.write_str(")")
            }
            ExprKind::Poly(b, n) => write!(f, "(poly {b} {n})"),
            ExprKind::Pullback(t, d) => write!(f, "(pullback :T {t} :D {d})"),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.kind.keyword())?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Def {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(def {} {})", self.name, self.expr)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.defs {
            writeln!(f, "{d}")?;
        }
        for q in &self.queries {
            writeln!(f, "{q}")?;
        }
        Ok(())
    }
}
