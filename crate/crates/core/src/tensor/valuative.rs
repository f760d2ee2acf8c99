use crate::dim::DimValue;
use crate::error::{Error, Result};
use crate::invariants::check;
use crate::model::AlgebraExpr;

use super::krull::krull;
use super::trace::{HypothesisCheck, RuleId, Trace};
use super::{af_pullback_pair_checks, all_pass, Evaluation, Pair};

/// `dim_v(A1 ⊗_k A2)` with its derivation.
pub fn tensor_valuative_dim(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Evaluation> {
    check(a)?;
    check(b)?;
    valuative(a, b)
}

/// The pullback-pair formula `min(dim_v R1 + t2, dim_v R2 + t1)`, or `None`
/// when its hypotheses fail. Also checked against the closed form
/// `t1 - s1 + t2 - s2 + min(s1 + d'2, d'1 + s2)`.
pub fn pullback_pair_vdim(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Option<Evaluation>> {
    check(a)?;
    check(b)?;
    pullback_pair(&Pair::new(a, b))
}

pub(crate) fn valuative(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Evaluation> {
    let pair = Pair::new(a, b);
    let dim = krull(a, b)?;

    let ev = if pair.ia.is_af.is_yes() && pair.ib.is_af.is_yes() {
        // A tensor product of AF-domains is an AF-ring, hence Jaffard.
        let checks = vec![
            HypothesisCheck::new("A1 is AF-certified", true),
            HypothesisCheck::new("A2 is AF-certified", true),
        ];
        let trace = Trace::applied(RuleId::V3AfRing, checks)
            .note("AF ⊗ AF is an AF-ring: dim_v = dim")
            .child(dim.trace.clone())
            .with_value(dim.value);
        Evaluation::new(dim.value, trace)
    } else if let Some(ev) = pullback_pair(&pair)? {
        ev
    } else {
        upper_bound(&pair, &dim)?
    };

    if !dim.value.le_boundwise(ev.value) {
        return Err(Error::Inconsistent(format!(
            "dim {} not below dim_v {} for {a} ⊗ {b}",
            dim.value, ev.value
        )));
    }
    Ok(ev)
}

fn pullback_pair(pair: &Pair<'_>) -> Result<Option<Evaluation>> {
    let Some((p1, p2)) = pair.pullbacks() else {
        return Ok(None);
    };
    let checks = af_pullback_pair_checks(&p1, &p2);
    if !all_pass(&checks) {
        return Ok(None);
    }
    let (t1, t2) = (p1.tdeg(), p2.tdeg());
    let (v1, v2) = (pair.ia.valuative_dim, pair.ib.valuative_dim);
    let value = (v1 + t2).min(v2 + t1);

    let (s1, s2) = (p1.subring_tdeg(), p2.subring_tdeg());
    let (d1, d2) = (p1.subring.krull_dim, p2.subring.krull_dim);
    let closed = (d2 + s1).min(d1 + s2) + (t1 - s1 + t2 - s2);
    if value != closed || !value.is_exact() {
        return Err(Error::Inconsistent(format!(
            "dim_v formula {value} and closed form {closed} disagree for {} ⊗ {}",
            pair.a, pair.b
        )));
    }
    let trace = Trace::applied(RuleId::V1PullbackPair, checks)
        .note(format!(
            "min(dim_v R1 + t2, dim_v R2 + t1) = min({v1} + {t2}, {v2} + {t1}) = {value}"
        ))
        .note(format!(
            "closed form t1 - s1 + t2 - s2 + min(s1 + d'2, d'1 + s2) = {t1} - {s1} + {t2} - {s2} + min({s1} + {d2}, {d1} + {s2}) = {closed}"
        ))
        .with_value(value);
    Ok(Some(Evaluation::new(value, trace)))
}

fn upper_bound(pair: &Pair<'_>, dim: &Evaluation) -> Result<Evaluation> {
    let hi = pair.vdim_upper();
    let mut lo = dim.value.lo();
    let mut trace = Trace::applied(RuleId::V2UpperBound, Vec::new())
        .note(format!("lower: dim(A1 ⊗ A2) >= {lo}"));
    // k ⊗ A = A
    for (x, other) in [(pair.a, &pair.ib), (pair.b, &pair.ia)] {
        if x.is_base_k() {
            lo = lo.max(other.valuative_dim.lo());
            trace = trace.note(format!("lower: k ⊗ A = A, dim_v A >= {}", other.valuative_dim.lo()));
        }
    }
    trace = trace.note(format!(
        "upper: min(dim_v A1 + tdeg A2, dim_v A2 + tdeg A1) = {hi}"
    ));
    let value = DimValue::interval(lo, hi).ok_or_else(|| {
        Error::Inconsistent(format!(
            "dim_v lower bound {lo} exceeds upper bound {hi} for {} ⊗ {}",
            pair.a, pair.b
        ))
    })?;
    Ok(Evaluation::new(value, trace.child(dim.trace.clone()).with_value(value)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MaximalIdealData;

    fn local(tdeg: u32, dim: u32, ht: u32, res: u32) -> AlgebraExpr {
        AlgebraExpr::af_local(tdeg, dim, MaximalIdealData::new(ht, res, true))
    }

    #[test]
    fn pullback_pair_closed_form() {
        let r1 = AlgebraExpr::pullback(local(3, 1, 1, 2), AlgebraExpr::field(1));
        let r2 = AlgebraExpr::pullback(local(2, 1, 1, 1), AlgebraExpr::k());
        let ev = tensor_valuative_dim(&r1, &r2).unwrap();
        assert_eq!(ev.value, DimValue::exact(4));
        assert_eq!(ev.rule(), RuleId::V1PullbackPair);
    }

    #[test]
    fn tower_gets_upper_bound() {
        let r1 = AlgebraExpr::pullback(local(2, 1, 1, 1), AlgebraExpr::k());
        let r2 = AlgebraExpr::pullback(local(4, 1, 1, 3), r1.clone());
        let ev = tensor_valuative_dim(&r1, &r2).unwrap();
        assert_eq!(ev.rule(), RuleId::V2UpperBound);
        assert_eq!(ev.value.hi(), 6);
        assert_eq!(ev.value.lo(), 5);
        assert!(pullback_pair_vdim(&r1, &r2).unwrap().is_none());
    }

    #[test]
    fn af_pair_equals_krull() {
        let a = AlgebraExpr::af(4, 2);
        let ev = tensor_valuative_dim(&a, &AlgebraExpr::field(3)).unwrap();
        assert_eq!(ev.rule(), RuleId::V3AfRing);
        // min(dim A + tdeg F, dim F + tdeg A) = min(2 + 3, 0 + 4)
        assert_eq!(ev.value, DimValue::exact(4));
    }

    #[test]
    fn unit_factor_keeps_valuative_dim() {
        let r = AlgebraExpr::pullback(local(3, 1, 1, 2), AlgebraExpr::field(1));
        let ev = tensor_valuative_dim(&AlgebraExpr::k(), &r).unwrap();
        assert_eq!(ev.value, DimValue::exact(2));
    }
}
