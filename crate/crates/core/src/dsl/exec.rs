use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::dim::{DimValue, TriState};
use crate::error::Error;
use crate::invariants::{self, InvariantBundle};
use crate::model::{validate, AlgebraExpr};
use crate::tensor::{self, Alphas, Evaluation, HypothesisCheck, RuleId, Trace, Verdict};

use super::ast::{Expr, ExprKind, Program, Query, QueryKind, Span};
use super::{Diagnostic, DiagnosticKind};

/// The answer to one query, in the shape of machine-readable output.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QueryResult {
    pub query: String,
    pub value: Answer,
    pub rule: String,
    pub trace: Option<Trace>,
    pub hypothesis_checks: Vec<HypothesisCheck>,
    /// Short rule description for text output.
    #[serde(skip)]
    pub label: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(untagged)]
pub enum Answer {
    Dim(DimValue),
    Status(TriState),
    Invariants(InvariantBundle),
    Alphas(Alphas),
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Answer::Dim(v) => write!(f, "{v}"),
            Answer::Status(s) => write!(f, "{s}"),
            Answer::Invariants(b) => {
                write!(
                    f,
                    "tdeg {}, dim {}, vdim {}, AF {}, Jaffard {}",
                    b.tdeg, b.krull_dim, b.valuative_dim, b.is_af, b.is_jaffard
                )?;
                if let Some(m) = b.maximal {
                    write!(f, ", maximal ht {} res-tdeg {}", m.height, m.residue_tdeg)?;
                    if m.unique {
                        f.write_str(" unique")?;
                    }
                }
                Ok(())
            }
            Answer::Alphas(a) => write!(f, "alpha1 {}, alpha2 {}, alpha3 {}", a.alpha1, a.alpha2, a.alpha3),
        }
    }
}

impl QueryResult {
    /// `(query) = value [rule]`.
    pub fn line(&self) -> String {
        format!("{} = {} [{}]", self.query, self.value, self.label)
    }
}

/// Results of a program run, in source order.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    /// Errors in definitions; when present no query is run.
    pub def_errors: Vec<Diagnostic>,
    pub results: Vec<Result<QueryResult, Diagnostic>>,
}

impl Outcome {
    pub fn diagnostics(&self) -> impl Iterator<Item = &Diagnostic> {
        self.def_errors
            .iter()
            .chain(self.results.iter().filter_map(|r| r.as_ref().err()))
    }

    /// 0 on success, 2 if any internal consistency check failed, else 1.
    pub fn exit_code(&self) -> i32 {
        self.diagnostics().map(Diagnostic::exit_code).max().unwrap_or(0)
    }

    pub fn successes(&self) -> impl Iterator<Item = &QueryResult> {
        self.results.iter().filter_map(|r| r.as_ref().ok())
    }

    /// One line per answered query, followed by its derivation when
    /// `trace` is set.
    pub fn render_text(&self, trace: bool) -> String {
        let mut out = String::new();
        for r in self.successes() {
            let _ = writeln!(out, "{}", r.line());
            if let (true, Some(t)) = (trace, &r.trace) {
                for l in t.render().lines() {
                    let _ = writeln!(out, "    {l}");
                }
            }
        }
        out
    }
}

type Env = HashMap<String, (AlgebraExpr, Span)>;

pub fn execute(program: &Program) -> Outcome {
    let mut env = Env::new();
    let mut outcome = Outcome::default();
    for def in &program.defs {
        if let Some((_, first)) = env.get(&def.name) {
            outcome.def_errors.push(Diagnostic::new(
                DiagnosticKind::Redefinition,
                def.name_span,
                format!("`{}` is already defined at {first}", def.name),
            ));
            continue;
        }
        match resolve(&def.expr, &env).and_then(|e| checked(&def.expr, e, &env)) {
            Ok(e) => {
                env.insert(def.name.clone(), (e, def.name_span));
            }
            Err(d) => outcome.def_errors.push(d),
        }
    }
    if !outcome.def_errors.is_empty() {
        return outcome;
    }
    outcome.results = program.queries.iter().map(|q| answer(q, &env)).collect();
    outcome
}

fn resolve(expr: &Expr, env: &Env) -> Result<AlgebraExpr, Diagnostic> {
    Ok(match &expr.kind {
        ExprKind::Name(n) => match env.get(n) {
            Some((e, _)) => e.clone(),
            None => {
                return Err(Diagnostic::new(
                    DiagnosticKind::UnboundName,
                    expr.span,
                    format!("unbound name `{n}`"),
                ))
            }
        },
        ExprKind::K => AlgebraExpr::k(),
        ExprKind::Field(t) => AlgebraExpr::field(*t),
        ExprKind::Af { tdeg, dim, maximal } => match maximal {
            Some(m) => AlgebraExpr::af_local(*tdeg, *dim, *m),
            None => AlgebraExpr::af(*tdeg, *dim),
        },
        ExprKind::Poly(b, n) => AlgebraExpr::poly(resolve(b, env)?, *n),
        ExprKind::Pullback(t, d) => AlgebraExpr::pullback(resolve(t, env)?, resolve(d, env)?),
    })
}

/// Validates a resolved term, pointing each violation at the subterm it
/// concerns (or at the name that brought it in).
fn checked(surface: &Expr, e: AlgebraExpr, env: &Env) -> Result<AlgebraExpr, Diagnostic> {
    let violations = validate(&e);
    let Some(v) = violations.first() else {
        return Ok(e);
    };
    let mut node = surface;
    for step in &v.path {
        node = match (&node.kind, *step) {
            (ExprKind::Poly(b, _), "base") => b,
            (ExprKind::Pullback(t, _), "T") => t,
            (ExprKind::Pullback(_, d), "D") => d,
            _ => break,
        };
    }
    let mut message = Error::Invalid(violations.clone()).to_string();
    if let ExprKind::Name(n) = &node.kind {
        if let Some((_, at)) = env.get(n) {
            let _ = write!(message, " (inside `{n}` defined at {at})");
        }
    }
    Err(Diagnostic::new(DiagnosticKind::Invalid, node.span, message))
}

fn answer(q: &Query, env: &Env) -> Result<QueryResult, Diagnostic> {
    let args = q
        .args
        .iter()
        .map(|a| resolve(a, env).and_then(|e| checked(a, e, env)))
        .collect::<Result<Vec<_>, _>>()?;
    let fail = |e: Error| Diagnostic::from_error(q.span, e);
    let text = q.to_string();

    let from_invariants = |value: Answer| QueryResult {
        query: text.clone(),
        value,
        rule: "invariants".into(),
        trace: None,
        hypothesis_checks: Vec::new(),
        label: "invariants".into(),
    };
    let from_eval = |ev: Evaluation, label: &str| QueryResult {
        query: text.clone(),
        value: Answer::Dim(ev.value),
        rule: ev.rule().to_string(),
        hypothesis_checks: ev.trace.hypothesis_checks.clone(),
        trace: Some(ev.trace),
        label: label.into(),
    };

    let a = &args[0];
    Ok(match q.kind {
        QueryKind::Invariants => from_invariants(Answer::Invariants(invariants::infer(a).map_err(fail)?)),
        QueryKind::Dim => from_invariants(Answer::Dim(invariants::krull_dim(a).map_err(fail)?)),
        QueryKind::Vdim => from_invariants(Answer::Dim(invariants::valuative_dim(a).map_err(fail)?)),
        QueryKind::Jaffard => from_invariants(Answer::Status(invariants::jaffard_status(a).map_err(fail)?)),
        QueryKind::TensorDim => {
            let ev = tensor::tensor_krull_dim(a, &args[1]).map_err(fail)?;
            let label = ev.rule().summary();
            from_eval(ev, label)
        }
        QueryKind::TensorVdim => {
            let ev = tensor::tensor_valuative_dim(a, &args[1]).map_err(fail)?;
            let label = ev.rule().summary();
            from_eval(ev, label)
        }
        QueryKind::TensorJaffard => {
            let Verdict { value, trace } = tensor::tensor_jaffard(a, &args[1]).map_err(fail)?;
            let (rule, label) = if trace.applied {
                (RuleId::J1Criterion.to_string(), RuleId::J1Criterion.summary().to_string())
            } else {
                ("dim-vs-vdim".to_string(), "dim vs dim_v".to_string())
            };
            QueryResult {
                query: text.clone(),
                value: Answer::Status(value),
                rule,
                hypothesis_checks: trace.hypothesis_checks.clone(),
                trace: Some(trace),
                label,
            }
        }
        QueryKind::Alphas => {
            let al = tensor::alpha_values(a, &args[1]).map_err(fail)?;
            QueryResult {
                rule: "alphas".into(),
                label: "alphas".into(),
                ..from_invariants(Answer::Alphas(al))
            }
        }
        QueryKind::RawThm19 => {
            let ev = tensor::raw_theorem19(a, &args[1]).map_err(fail)?;
            from_eval(ev, "Thm 1.9 formula, unchecked")
        }
    })
}
