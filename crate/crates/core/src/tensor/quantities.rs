//! Auxiliary quantities attached to a pair of pullbacks.

use serde::Serialize;

use crate::dim::DimValue;
use crate::error::{Error, Result};
use crate::invariants::{check, PullbackData};
use crate::model::AlgebraExpr;

use super::compute_d::compute_d_unchecked;
use super::trace::{RuleId, Trace};
use super::{af_pullback_pair_checks, all_pass, Evaluation};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Alphas {
    pub alpha1: u32,
    pub alpha2: u32,
    pub alpha3: u32,
}

/// `a` and `b` bound `dim((R1/M1) ⊗ R2)` and `dim(R1 ⊗ (R2/M2))` from
/// below; `c` is `dim((R1/M1) ⊗ (R2/M2))`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Lemma18Bounds {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

/// `(d, d', t, r, s)` of one pullback factor, with `d = dim T`.
#[derive(Clone, Copy, Debug)]
struct Numbers {
    d: u32,
    d_sub: u32,
    t: u32,
    r: u32,
    s: u32,
}

impl Numbers {
    fn of(expr: &AlgebraExpr, p: &PullbackData<'_>) -> Result<Self> {
        let exact = |v: DimValue, what: &str| {
            v.as_exact().ok_or_else(|| {
                Error::HypothesisNotMet(format!("{what} of {expr} is only known to lie in {v}"))
            })
        };
        Ok(Numbers {
            d: exact(p.ambient.krull_dim, "dim T")?,
            d_sub: exact(p.subring.krull_dim, "dim D")?,
            t: p.tdeg(),
            r: p.residue_tdeg(),
            s: p.subring_tdeg(),
        })
    }

    fn gap(&self) -> u32 {
        self.r - self.s
    }
}

fn pullback<'a>(expr: &'a AlgebraExpr) -> Result<PullbackData<'a>> {
    PullbackData::of(expr).ok_or_else(|| Error::HypothesisNotMet(format!("{expr} is not a pullback")))
}

fn numbers(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<(Numbers, Numbers)> {
    check(a)?;
    check(b)?;
    Ok((Numbers::of(a, &pullback(a)?)?, Numbers::of(b, &pullback(b)?)?))
}

fn mixed(n1: &Numbers, n2: &Numbers) -> u32 {
    (n1.s + n2.d_sub).min(n1.d_sub + n2.s)
}

/// The three quantities `α1`, `α2`, `α3` by direct arithmetic.
pub fn alpha_values(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Alphas> {
    let (n1, n2) = numbers(a, b)?;
    let m = mixed(&n1, &n2);
    Ok(Alphas {
        alpha1: n1.d + n2.t.min(n1.gap()) + n2.d + n1.s.min(n2.gap()) + m,
        alpha2: n2.d + n1.t.min(n2.gap()) + n1.d + n2.s.min(n1.gap()) + m,
        alpha3: n1.d + n2.d + n1.r.min(n2.r) + m,
    })
}

pub fn lemma18_bounds(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Lemma18Bounds> {
    check(a)?;
    check(b)?;
    let (p1, p2) = (pullback(a)?, pullback(b)?);
    let failed: Vec<_> = af_pullback_pair_checks(&p1, &p2)
        .into_iter()
        .filter(|c| !c.passed)
        .map(|c| c.condition)
        .collect();
    if !failed.is_empty() {
        return Err(Error::HypothesisNotMet(failed.join("; ")));
    }
    let (n1, n2) = (Numbers::of(a, &p1)?, Numbers::of(b, &p2)?);
    let m = mixed(&n1, &n2);
    Ok(Lemma18Bounds {
        a: n2.d + n1.s.min(n2.gap()) + m,
        b: n1.d + n2.s.min(n1.gap()) + m,
        c: m,
    })
}

/// The pullback-pair formula
/// `max{ht M1 + min(t2, r1 - s1) + D(s1, d'1, R2), ht M2 + min(t1, r2 - s2) + D(s2, d'2, R1)}`
/// evaluated without checking its hypotheses. The trace node is marked
/// applied only when they do hold.
pub fn raw_theorem19(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Evaluation> {
    check(a)?;
    check(b)?;
    let (p1, p2) = (pullback(a)?, pullback(b)?);
    let checks = af_pullback_pair_checks(&p1, &p2);
    let valid = all_pass(&checks);

    let mut value = DimValue::ZERO;
    let mut notes = Vec::new();
    let mut children = Vec::new();
    for (i, p, other, t_other) in [(1, &p1, b, p2.tdeg()), (2, &p2, a, p1.tdeg())] {
        let d_sub = p.subring.krull_dim.as_exact().ok_or_else(|| {
            Error::HypothesisNotMet(format!(
                "dim D{i} is only known to lie in {}",
                p.subring.krull_dim
            ))
        })?;
        let inner = compute_d_unchecked(p.subring_tdeg(), d_sub, other)?;
        let htm = p.height() + t_other.min(p.gap());
        let term = inner.value + htm;
        notes.push(format!(
            "ht M{i} + min(t, r{i} - s{i}) + D(s{i}, d'{i}, other) = {htm} + {} = {term}",
            inner.value
        ));
        children.push(inner.trace);
        value = value.max(term);
    }

    let mut trace = if valid {
        Trace::applied(RuleId::F4PullbackPair, checks)
    } else {
        Trace::rejected(RuleId::F4PullbackPair, checks)
            .note("hypotheses not met: formula evaluated unchecked")
    };
    for n in notes {
        trace = trace.note(n);
    }
    for c in children {
        trace = trace.child(c);
    }
    Ok(Evaluation::new(value, trace.with_value(value)))
}
