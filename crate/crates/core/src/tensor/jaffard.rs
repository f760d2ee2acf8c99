use crate::dim::TriState;
use crate::error::Result;
use crate::invariants::{check, PullbackData};
use crate::model::AlgebraExpr;

use super::krull::krull;
use super::trace::{HypothesisCheck, RuleId, Trace};
use super::valuative::valuative;
use super::{af_pullback_pair_checks, all_pass, Verdict};

/// Whether `A1 ⊗_k A2` is a Jaffard ring.
///
/// For pullbacks with AF data, local ambient rings and `ht Mi = dim Ti` the
/// answer is the criterion on transcendence degrees. Otherwise the certified
/// values of `dim` and `dim_v` are compared.
pub fn tensor_jaffard(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Verdict> {
    check(a)?;
    check(b)?;
    let (checks, criterion) = criterion(a, b);
    if let Some(yes) = criterion {
        let trace = Trace::applied(RuleId::J1Criterion, checks).note(criterion_note(a, b, yes));
        return Ok(Verdict {
            value: TriState::from_bool(yes),
            trace,
        });
    }

    let dim = krull(a, b)?;
    let vdim = valuative(a, b)?;
    let (k, v) = (dim.value, vdim.value);
    let (value, why) = match (k.as_exact(), v.as_exact()) {
        (Some(x), Some(y)) => (TriState::from_bool(x == y), format!("dim = {x}, dim_v = {y}")),
        _ if k.hi() < v.lo() => (TriState::No, format!("dim <= {} < {} <= dim_v", k.hi(), v.lo())),
        _ => (TriState::Unknown, format!("dim in {k}, dim_v in {v}: not decided")),
    };
    let trace = Trace::rejected(RuleId::J1Criterion, checks)
        .note(format!("decided by comparing certified values: {why}"))
        .child(dim.trace)
        .child(vdim.trace);
    Ok(Verdict { value, trace })
}

/// The criterion alone; `None` when its hypotheses fail.
pub fn jaffard_criterion(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Option<bool>> {
    check(a)?;
    check(b)?;
    Ok(criterion(a, b).1)
}

fn criterion(a: &AlgebraExpr, b: &AlgebraExpr) -> (Vec<HypothesisCheck>, Option<bool>) {
    let (Some(p1), Some(p2)) = (PullbackData::of(a), PullbackData::of(b)) else {
        return (
            vec![HypothesisCheck::new("both factors are pullbacks", false)],
            None,
        );
    };
    let mut checks = af_pullback_pair_checks(&p1, &p2);
    checks.push(HypothesisCheck::new("M1 is the unique maximal ideal of T1", p1.unique_maximal()));
    checks.push(HypothesisCheck::new("M2 is the unique maximal ideal of T2", p2.unique_maximal()));
    if !all_pass(&checks) {
        return (checks, None);
    }
    (checks, Some(holds(&p1, &p2)))
}

fn holds(p1: &PullbackData<'_>, p2: &PullbackData<'_>) -> bool {
    let (g1, g2) = (p1.gap(), p2.gap());
    (g1 <= p2.tdeg() && g2 <= p1.subring_tdeg()) || (g1 <= p2.subring_tdeg() && g2 <= p1.tdeg())
}

fn criterion_note(a: &AlgebraExpr, b: &AlgebraExpr, yes: bool) -> String {
    let p1 = PullbackData::of(a).expect("checked");
    let p2 = PullbackData::of(b).expect("checked");
    let (g1, g2) = (p1.gap(), p2.gap());
    let (t1, t2, s1, s2) = (p1.tdeg(), p2.tdeg(), p1.subring_tdeg(), p2.subring_tdeg());
    format!(
        "(r1 - s1 <= t2 and r2 - s2 <= s1) or (r1 - s1 <= s2 and r2 - s2 <= t1): \
         ({g1} <= {t2} and {g2} <= {s1}) or ({g1} <= {s2} and {g2} <= {t1}) is {yes}"
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MaximalIdealData;

    fn local(tdeg: u32, dim: u32, ht: u32, res: u32) -> AlgebraExpr {
        AlgebraExpr::af_local(tdeg, dim, MaximalIdealData::new(ht, res, true))
    }

    #[test]
    fn criterion_holds_on_mixed_pair() {
        let r1 = AlgebraExpr::pullback(local(3, 1, 1, 2), AlgebraExpr::field(1));
        let r2 = AlgebraExpr::pullback(local(2, 1, 1, 1), AlgebraExpr::k());
        let v = tensor_jaffard(&r1, &r2).unwrap();
        assert_eq!(v.value, TriState::Yes);
        assert!(v.trace.applied);
        assert_eq!(jaffard_criterion(&r1, &r2).unwrap(), Some(true));
    }

    #[test]
    fn criterion_fails_with_large_gaps() {
        // r - s = 3 exceeds both s and t of the partner.
        let r = AlgebraExpr::pullback(local(4, 1, 1, 3), AlgebraExpr::k());
        let s = AlgebraExpr::pullback(local(2, 1, 1, 1), AlgebraExpr::k());
        assert_eq!(jaffard_criterion(&r, &s).unwrap(), Some(false));
        assert_eq!(tensor_jaffard(&r, &s).unwrap().value, TriState::No);
    }

    #[test]
    fn undecided_tower() {
        let r1 = AlgebraExpr::pullback(local(2, 1, 1, 1), AlgebraExpr::k());
        let r2 = AlgebraExpr::pullback(local(4, 1, 1, 3), r1.clone());
        let v = tensor_jaffard(&r1, &r2).unwrap();
        assert_eq!(v.value, TriState::Unknown);
        assert!(!v.trace.applied);
        assert_eq!(jaffard_criterion(&r1, &r2).unwrap(), None);
    }

    #[test]
    fn af_pair_is_jaffard() {
        let v = tensor_jaffard(&AlgebraExpr::af(3, 2), &AlgebraExpr::field(1)).unwrap();
        assert_eq!(v.value, TriState::Yes);
    }
}
