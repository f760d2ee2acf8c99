use crate::dim::DimValue;
use crate::error::{Error, Result};
use crate::invariants::{self, PullbackData};
use crate::model::AlgebraExpr;
use crate::tensor::{
    alpha_values, applicable_rules, compute_d, evaluate_rule, jaffard_criterion, lemma18_bounds,
    pullback_pair_vdim, tensor_jaffard, tensor_krull_dim, tensor_valuative_dim, RuleId,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Check {
    NotApplicable,
    Pass,
    Fail(String),
}

impl Check {
    fn from_result(r: Result<Check>) -> Check {
        r.unwrap_or_else(|e| Check::Fail(format!("engine error: {e}")))
    }

    fn expect(ok: bool, msg: impl FnOnce() -> String) -> Check {
        if ok {
            Check::Pass
        } else {
            Check::Fail(msg())
        }
    }
}

pub struct Property {
    pub id: &'static str,
    pub description: &'static str,
    check: fn(&AlgebraExpr, &AlgebraExpr) -> Result<Check>,
}

impl Property {
    pub fn check(&self, a: &AlgebraExpr, b: &AlgebraExpr) -> Check {
        Check::from_result((self.check)(a, b))
    }
}

pub const PROPERTIES: [Property; 8] = [
    Property {
        id: "P1",
        description: "dim <= dim_v bound-wise",
        check: p1_ordering,
    },
    Property {
        id: "P2",
        description: "symmetry of dim, dim_v and Jaffard status",
        check: p2_symmetry,
    },
    Property {
        id: "P3",
        description: "pullback-pair value dominates the alpha and lemma bounds",
        check: p3_alpha_dominance,
    },
    Property {
        id: "P4",
        description: "pullback-pair dim_v equals its closed form",
        check: p4_vdim_closed_form,
    },
    Property {
        id: "P5",
        description: "Jaffard criterion agrees with dim = dim_v",
        check: p5_criterion,
    },
    Property {
        id: "P6",
        description: "all applicable rules agree",
        check: p6_dispatch_agreement,
    },
    Property {
        id: "P7",
        description: "D(s, d, A) nondecreasing in d and D(0, d, A) = dim A",
        check: p7_compute_d,
    },
    Property {
        id: "TI",
        description: "exact results carry only passing hypothesis checks",
        check: trace_integrity,
    },
];

fn p1_ordering(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Check> {
    let k = tensor_krull_dim(a, b)?.value;
    let v = tensor_valuative_dim(a, b)?.value;
    Ok(Check::expect(k.le_boundwise(v), || format!("dim {k} vs dim_v {v}")))
}

fn p2_symmetry(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Check> {
    let k = (tensor_krull_dim(a, b)?.value, tensor_krull_dim(b, a)?.value);
    let v = (tensor_valuative_dim(a, b)?.value, tensor_valuative_dim(b, a)?.value);
    let j = (tensor_jaffard(a, b)?.value, tensor_jaffard(b, a)?.value);
    Ok(Check::expect(k.0 == k.1 && v.0 == v.1 && j.0 == j.1, || {
        format!("dim {k:?}, dim_v {v:?}, Jaffard {j:?}")
    }))
}

fn p3_alpha_dominance(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Check> {
    let Some(f4) = evaluate_rule(RuleId::F4PullbackPair, a, b)? else {
        return Ok(Check::NotApplicable);
    };
    let value = f4.value.lo();
    let al = alpha_values(a, b)?;
    let l = lemma18_bounds(a, b)?;
    let t1 = invariants::tdeg(a)?;
    let t2 = invariants::tdeg(b)?;
    let h1 = invariants::htm_poly(a, t2)?;
    let h2 = invariants::htm_poly(b, t1)?;
    let (p1, p2) = (PullbackData::of(a).expect("F4 applied"), PullbackData::of(b).expect("F4 applied"));

    let mut bounds = vec![
        ("alpha1", al.alpha1),
        ("alpha2", al.alpha2),
        ("htM1[t2] + a", h1 + l.a),
        ("htM2[t1] + b", h2 + l.b),
        ("c", l.c),
    ];
    // The inequality for alpha3 only follows through alpha1 or alpha2.
    if p1.subring_tdeg() <= p2.gap() || p2.subring_tdeg() <= p1.gap() {
        bounds.push(("alpha3", al.alpha3));
    }
    let broken: Vec<_> = bounds.iter().filter(|(_, x)| *x > value).collect();
    Ok(Check::expect(broken.is_empty(), || {
        format!("value {value} below {broken:?}")
    }))
}

fn p4_vdim_closed_form(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Check> {
    let v1 = match pullback_pair_vdim(a, b) {
        Ok(Some(ev)) => ev.value,
        Ok(None) => return Ok(Check::NotApplicable),
        Err(e @ Error::Inconsistent(_)) => return Ok(Check::Fail(e.to_string())),
        Err(e) => return Err(e),
    };
    let (p1, p2) = (PullbackData::of(a).expect("V1 applied"), PullbackData::of(b).expect("V1 applied"));
    let exact = |v: DimValue| v.as_exact().expect("AF-certified subring has exact dim");
    let (s1, s2) = (p1.subring_tdeg(), p2.subring_tdeg());
    let (d1, d2) = (exact(p1.subring.krull_dim), exact(p2.subring.krull_dim));
    let closed = p1.tdeg() - s1 + p2.tdeg() - s2 + (s1 + d2).min(d1 + s2);
    Ok(Check::expect(v1 == DimValue::exact(closed), || {
        format!("formula {v1}, closed form {closed}")
    }))
}

fn p5_criterion(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Check> {
    let Some(criterion) = jaffard_criterion(a, b)? else {
        return Ok(Check::NotApplicable);
    };
    let f4 = evaluate_rule(RuleId::F4PullbackPair, a, b)?;
    let v1 = pullback_pair_vdim(a, b)?;
    let (Some(f4), Some(v1)) = (f4, v1) else {
        return Ok(Check::Fail("criterion applies but F4 or V1 does not".into()));
    };
    let equal = f4.value == v1.value;
    Ok(Check::expect(criterion == equal, || {
        format!("criterion {criterion}, dim {} vs dim_v {}", f4.value, v1.value)
    }))
}

fn p6_dispatch_agreement(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Check> {
    let rules = applicable_rules(a, b)?;
    let exact: Vec<_> = rules.iter().filter(|(_, v)| v.is_exact()).collect();
    if exact.len() < 2 {
        return Ok(Check::NotApplicable);
    }
    let first = exact[0].1;
    let agree = rules.iter().all(|(_, v)| v.contains(first.lo()));
    Ok(Check::expect(agree, || format!("rule values disagree: {rules:?}")))
}

fn p7_compute_d(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Check> {
    let mut applicable = false;
    for x in [a, b] {
        let dim = invariants::krull_dim(x)?;
        for s in 0..=4u32 {
            let mut prev: Option<DimValue> = None;
            for d in 0..=s {
                let v = match compute_d(s, d, x) {
                    Ok(ev) => ev.value,
                    Err(Error::UnsupportedAlgebraClass(_)) => break,
                    Err(e) => return Err(e),
                };
                applicable = true;
                if s == 0 && v != dim {
                    return Ok(Check::Fail(format!("D(0, 0, {x}) = {v} but dim = {dim}")));
                }
                if let Some(p) = prev {
                    if !p.le_boundwise(v) {
                        return Ok(Check::Fail(format!(
                            "D({s}, {}, {x}) = {p} > D({s}, {d}, {x}) = {v}",
                            d - 1
                        )));
                    }
                }
                prev = Some(v);
            }
        }
    }
    Ok(if applicable { Check::Pass } else { Check::NotApplicable })
}

fn trace_integrity(a: &AlgebraExpr, b: &AlgebraExpr) -> Result<Check> {
    let k = tensor_krull_dim(a, b)?;
    let v = tensor_valuative_dim(a, b)?;
    let j = tensor_jaffard(a, b)?;
    let bad: Vec<_> = [
        (k.value.is_exact(), &k.trace),
        (v.value.is_exact(), &v.trace),
        (true, &j.trace),
    ]
    .into_iter()
    .filter(|(exact, t)| *exact && !t.is_sound())
    .map(|(_, t)| t.rule_id)
    .collect();
    Ok(Check::expect(bad.is_empty(), || format!("unsound traces under {bad:?}")))
}
