use crate::dim::DimValue;
use crate::error::{Error, Result};
use crate::invariants::{check, InvariantBundle, PullbackData};
use crate::model::AlgebraExpr;

use super::compute_d::compute_d_unchecked;
use super::trace::{HypothesisCheck, RuleId, Trace};
use super::{af_pullback_pair_checks, all_pass, Evaluation, Pair};

enum Attempt {
    Applied(Evaluation),
    /// The rule matched the shape of the pair but a hypothesis failed.
    Rejected(Trace),
    NotApplicable,
}

type Rule = fn(&Pair<'_>) -> Result<Attempt>;

/// Dispatch order. The unit rule is a special case of the one-AF rule
/// (`k` is AF with `tdeg 0`, and `D(0, 0, A) = dim A`).
const RULES: [Rule; 6] = [unit, af_pair, one_af, self_tensor, pullback_pair, recursive];

/// `dim(A1 ⊗_k A2)` with its derivation.
pub fn tensor_krull_dim(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Evaluation> {
    check(a)?;
    check(b)?;
    krull(a, b)
}

/// Runs every rule whose hypotheses hold and returns each value, including
/// the bounds fallback. Used to cross-check the theorems against each other.
pub fn applicable_rules(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Vec<(RuleId, DimValue)>> {
    check(a)?;
    check(b)?;
    let pair = Pair::new(a, b);
    let mut out = Vec::new();
    for rule in RULES {
        if let Attempt::Applied(ev) = rule(&pair)? {
            out.push((ev.rule(), ev.value));
        }
    }
    let fb = bounds(&pair)?;
    out.push((fb.rule(), fb.value));
    Ok(out)
}

/// Runs one rule in isolation; `None` when its hypotheses fail.
pub fn evaluate_rule(rule: RuleId, a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Option<Evaluation>> {
    check(a)?;
    check(b)?;
    let pair = Pair::new(a, b);
    let attempt = match rule {
        RuleId::F1Sharp | RuleId::F2Wadsworth => af_pair(&pair)?,
        RuleId::F3OneAf => match unit(&pair)? {
            Attempt::Applied(ev) => Attempt::Applied(ev),
            _ => one_af(&pair)?,
        },
        RuleId::F4PullbackPair => pullback_pair(&pair)?,
        RuleId::F5Recursive => recursive(&pair)?,
        RuleId::F6SelfTensor => self_tensor(&pair)?,
        RuleId::FbBounds => Attempt::Applied(bounds(&pair)?),
        other => {
            return Err(Error::PreconditionViolated(format!(
                "{other} is not a rule for dim(A1 ⊗ A2)"
            )))
        }
    };
    Ok(match attempt {
        Attempt::Applied(ev) if ev.rule() == rule => Some(ev),
        _ => None,
    })
}

pub(crate) fn krull(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Evaluation> {
    let pair = Pair::new(a, b);
    let mut rejected = Vec::new();
    for rule in RULES {
        match rule(&pair)? {
            Attempt::Applied(ev) => return finish(&pair, ev, rejected),
            Attempt::Rejected(t) => rejected.push(t),
            Attempt::NotApplicable => {}
        }
    }
    let ev = bounds(&pair)?;
    finish(&pair, ev, rejected)
}

/// Clamps to the certified envelope `[max(dim A1, dim A2), dim_v bound]`
/// and attaches the records of rules rejected on the way.
fn finish(pair: &Pair<'_>, mut ev: Evaluation, rejected: Vec<Trace>) -> Result<Evaluation> {
    let envelope = DimValue::interval(pair.flat_lower(), pair.vdim_upper()).ok_or_else(|| {
        Error::Inconsistent(format!(
            "empty envelope [{}, {}] for {} ⊗ {}",
            pair.flat_lower(),
            pair.vdim_upper(),
            pair.a,
            pair.b
        ))
    })?;
    let value = ev.value.intersect(envelope).ok_or_else(|| {
        Error::Inconsistent(format!(
            "{} gave {} outside the envelope {envelope} for {} ⊗ {}",
            ev.rule(),
            ev.value,
            pair.a,
            pair.b
        ))
    })?;
    if value != ev.value {
        ev.trace = ev
            .trace
            .note(format!("clamped {} to envelope {envelope}", ev.value));
        ev.trace.value = Some(value);
        ev.value = value;
    }
    if !rejected.is_empty() {
        let mut children = rejected;
        children.append(&mut ev.trace.children);
        ev.trace.children = children;
    }
    Ok(ev)
}

fn exact_dim(b: &InvariantBundle) -> Option<u32> {
    b.krull_dim.as_exact()
}

fn unit(pair: &Pair<'_>) -> Result<Attempt> {
    let other = match (pair.a.is_base_k(), pair.b.is_base_k()) {
        (true, _) => pair.b,
        (_, true) => pair.a,
        _ => return Ok(Attempt::NotApplicable),
    };
    let inner = compute_d_unchecked(0, 0, other)?;
    let trace = Trace::applied(
        RuleId::F3OneAf,
        vec![HypothesisCheck::new("one factor is k (AF, tdeg 0, dim 0)", true)],
    )
    .note("k ⊗ A = A: D(0, 0, A) = dim A")
    .child(inner.trace)
    .with_value(inner.value);
    Ok(Attempt::Applied(Evaluation::new(inner.value, trace)))
}

fn af_pair(pair: &Pair<'_>) -> Result<Attempt> {
    let (ia, ib) = (&pair.ia, &pair.ib);
    let checks = vec![
        HypothesisCheck::new("A1 is AF-certified", ia.is_af.is_yes()),
        HypothesisCheck::new("A2 is AF-certified", ib.is_af.is_yes()),
    ];
    let raw = (ia.krull_dim + ib.tdeg).min(ib.krull_dim + ia.tdeg);
    if !all_pass(&checks) {
        let mut t = Trace::rejected(RuleId::F2Wadsworth, checks);
        if raw.is_exact() {
            t = t
                .note(format!(
                    "unchecked min(dim A1 + tdeg A2, dim A2 + tdeg A1) = min({} + {}, {} + {}) = {raw}",
                    ia.krull_dim, ib.tdeg, ib.krull_dim, ia.tdeg
                ))
                .with_value(raw);
        }
        return Ok(Attempt::Rejected(t));
    }
    if ia.is_field && ib.is_field {
        let value = DimValue::exact(ia.tdeg.min(ib.tdeg));
        let trace = Trace::applied(
            RuleId::F1Sharp,
            vec![
                HypothesisCheck::new("A1 is a field", true),
                HypothesisCheck::new("A2 is a field", true),
            ],
        )
        .note(format!("min(tdeg A1, tdeg A2) = min({}, {}) = {value}", ia.tdeg, ib.tdeg))
        .with_value(value);
        return Ok(Attempt::Applied(Evaluation::new(value, trace)));
    }
    let trace = Trace::applied(RuleId::F2Wadsworth, checks)
        .note(format!(
            "min(dim A1 + tdeg A2, dim A2 + tdeg A1) = min({} + {}, {} + {}) = {raw}",
            ia.krull_dim, ib.tdeg, ib.krull_dim, ia.tdeg
        ))
        .with_value(raw);
    Ok(Attempt::Applied(Evaluation::new(raw, trace)))
}

fn one_af(pair: &Pair<'_>) -> Result<Attempt> {
    let (af, af_inv, other) = match (pair.ia.is_af.is_yes(), pair.ib.is_af.is_yes()) {
        (true, false) => (pair.a, &pair.ia, pair.b),
        (false, true) => (pair.b, &pair.ib, pair.a),
        _ => return Ok(Attempt::NotApplicable),
    };
    let Some(d) = exact_dim(af_inv) else {
        return Ok(Attempt::NotApplicable);
    };
    let t = af_inv.tdeg;
    let mut checks = vec![
        HypothesisCheck::new(format!("{af} is AF-certified"), true),
        HypothesisCheck::new(format!("{other} is not AF-certified"), true),
    ];
    match compute_d_unchecked(t, d, other) {
        Ok(inner) => {
            checks.push(HypothesisCheck::new("D(s, d, A) has a closed form", true));
            let trace = Trace::applied(RuleId::F3OneAf, checks)
                .note(format!("dim = D(tdeg, dim, other) = D({t}, {d}, A) = {}", inner.value))
                .child(inner.trace)
                .with_value(inner.value);
            Ok(Attempt::Applied(Evaluation::new(inner.value, trace)))
        }
        Err(Error::UnsupportedAlgebraClass(msg)) => {
            checks.push(HypothesisCheck::new(
                format!("D(s, d, A) has a closed form ({msg})"),
                false,
            ));
            Ok(Attempt::Rejected(Trace::rejected(RuleId::F3OneAf, checks)))
        }
        Err(e) => Err(e),
    }
}

fn self_tensor(pair: &Pair<'_>) -> Result<Attempt> {
    if pair.a != pair.b {
        return Ok(Attempt::NotApplicable);
    }
    let Some(p) = PullbackData::of(pair.a) else {
        return Ok(Attempt::NotApplicable);
    };
    let checks = vec![
        HypothesisCheck::new("R1 = R2 is a pullback", true),
        HypothesisCheck::new("T is AF-certified", p.ambient_is_af()),
        HypothesisCheck::new(
            format!("ht M = dim T ({} vs {})", p.height(), p.ambient.krull_dim),
            p.height_is_dim(),
        ),
        HypothesisCheck::new("D is Jaffard-certified", p.subring.is_jaffard.is_yes()),
    ];
    if !all_pass(&checks) {
        return Ok(Attempt::Rejected(Trace::rejected(RuleId::F6SelfTensor, checks)));
    }
    let t = p.tdeg();
    let htm = p.htm_poly(t);
    let inner = krull(p.subring_expr, pair.a)?;
    let recursive = inner.value + htm;
    let mut trace = Trace::applied(RuleId::F6SelfTensor, checks)
        .note(format!(
            "htM[t] + dim(D ⊗ R) = {htm} + {} = {recursive}",
            inner.value
        ))
        .child(inner.trace);

    let mut value = recursive;
    let vdim = pair.ia.valuative_dim.as_exact();
    if let (true, Some(v)) = (p.gap() <= p.subring_tdeg(), vdim) {
        let shortcut = t + v;
        trace = trace.note(format!(
            "tdeg(K:D) = {} <= tdeg D = {}: t + dim_v R = {t} + {v} = {shortcut}",
            p.gap(),
            p.subring_tdeg()
        ));
        if !recursive.contains(shortcut) {
            return Err(Error::Inconsistent(format!(
                "self-tensor paths disagree for {}: recursive {recursive}, shortcut {shortcut}",
                pair.a
            )));
        }
        value = DimValue::exact(shortcut);
    }
    Ok(Attempt::Applied(Evaluation::new(value, trace.with_value(value))))
}

fn pullback_pair(pair: &Pair<'_>) -> Result<Attempt> {
    let Some((p1, p2)) = pair.pullbacks() else {
        return Ok(Attempt::NotApplicable);
    };
    let checks = af_pullback_pair_checks(&p1, &p2);
    if !all_pass(&checks) {
        return Ok(Attempt::Rejected(Trace::rejected(RuleId::F4PullbackPair, checks)));
    }
    let (t1, t2) = (p1.tdeg(), p2.tdeg());
    let (h1, h2) = (p1.htm_poly(t2), p2.htm_poly(t1));
    let d1 = pullback_subring_dim(&p1)?;
    let d2 = pullback_subring_dim(&p2)?;
    let first = compute_d_unchecked(p1.subring_tdeg(), d1, pair.b)?;
    let second = compute_d_unchecked(p2.subring_tdeg(), d2, pair.a)?;
    let (v1, v2) = (first.value + h1, second.value + h2);
    let value = v1.max(v2);
    let trace = Trace::applied(RuleId::F4PullbackPair, checks)
        .note(format!(
            "max{{htM1[t2] + D(s1, d'1, R2), htM2[t1] + D(s2, d'2, R1)}} = max{{{h1} + {}, {h2} + {}}} = {value}",
            first.value, second.value
        ))
        .child(first.trace)
        .child(second.trace)
        .with_value(value);
    Ok(Attempt::Applied(Evaluation::new(value, trace)))
}

fn pullback_subring_dim(p: &PullbackData<'_>) -> Result<u32> {
    exact_dim(&p.subring).ok_or_else(|| {
        Error::Inconsistent(format!(
            "AF-certified subring {} has non-exact dimension {}",
            p.subring_expr, p.subring.krull_dim
        ))
    })
}

fn recursive(pair: &Pair<'_>) -> Result<Attempt> {
    let Some((p1, p2)) = pair.pullbacks() else {
        return Ok(Attempt::NotApplicable);
    };
    let (s1, s2) = (p1.subring_tdeg(), p2.subring_tdeg());
    let checks = vec![
        HypothesisCheck::new("T1 is AF-certified", p1.ambient_is_af()),
        HypothesisCheck::new("T2 is AF-certified", p2.ambient_is_af()),
        HypothesisCheck::new(
            format!("ht M1 = dim T1 ({} vs {})", p1.height(), p1.ambient.krull_dim),
            p1.height_is_dim(),
        ),
        HypothesisCheck::new(
            format!("ht M2 = dim T2 ({} vs {})", p2.height(), p2.ambient.krull_dim),
            p2.height_is_dim(),
        ),
        HypothesisCheck::new(
            format!(
                "s1 <= r2 - s2 or s2 <= r1 - s1 ({s1} <= {} or {s2} <= {})",
                p2.gap(),
                p1.gap()
            ),
            s1 <= p2.gap() || s2 <= p1.gap(),
        ),
    ];
    if !all_pass(&checks) {
        return Ok(Attempt::Rejected(Trace::rejected(RuleId::F5Recursive, checks)));
    }
    let (h1, h2) = (p1.htm_poly(p2.tdeg()), p2.htm_poly(p1.tdeg()));
    let first = krull(p1.subring_expr, pair.b)?;
    let second = krull(pair.a, p2.subring_expr)?;
    let value = (first.value + h1).max(second.value + h2);
    let trace = Trace::applied(RuleId::F5Recursive, checks)
        .note(format!(
            "max{{htM1[t2] + dim(D1 ⊗ R2), htM2[t1] + dim(R1 ⊗ D2)}} = max{{{h1} + {}, {h2} + {}}} = {value}",
            first.value, second.value
        ))
        .child(first.trace)
        .child(second.trace)
        .with_value(value);
    Ok(Attempt::Applied(Evaluation::new(value, trace)))
}

/// Certified bounds when no closed form applies.
///
/// Upper: `min(dim_v A1 + tdeg A2, dim_v A2 + tdeg A1)`. Lower: the larger
/// factor dimension. The pullback-pair quantities that could raise the lower
/// bound need the same hypotheses as the closed form, which has already
/// failed here. When exactly one ambient ring is AF no formula is known, and
/// these bounds stay apart for pullback pairs since each `dim Ai >= 1`.
fn bounds(pair: &Pair<'_>) -> Result<Evaluation> {
    let lo = pair.flat_lower();
    let hi = pair.vdim_upper();
    let trace = Trace::applied(RuleId::FbBounds, Vec::new())
        .note(format!("lower: max(dim A1, dim A2) = {lo} (flat base change)"))
        .note(format!("upper: min(dim_v A1 + tdeg A2, dim_v A2 + tdeg A1) = {hi}"));
    let value = DimValue::interval(lo, hi).ok_or_else(|| {
        Error::Inconsistent(format!(
            "lower bound {lo} exceeds upper bound {hi} for {} ⊗ {}",
            pair.a, pair.b
        ))
    })?;
    Ok(Evaluation::new(value, trace.with_value(value)))
}
