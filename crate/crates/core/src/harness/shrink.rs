//! Greedy shrinking of failing pairs: numbers move toward 0 first, then
//! pullbacks collapse to their ambient ring.

use crate::model::{validate, AlgebraExpr, MaximalIdealData};

/// Valid terms one step simpler than `e`, numeric reductions first.
pub fn candidates(e: &AlgebraExpr) -> Vec<AlgebraExpr> {
    let mut numeric = Vec::new();
    let mut structural = Vec::new();
    collect(e, &mut numeric, &mut structural);
    numeric.extend(structural);
    numeric.retain(|c| validate(c).is_empty());
    numeric
}

fn collect(e: &AlgebraExpr, numeric: &mut Vec<AlgebraExpr>, structural: &mut Vec<AlgebraExpr>) {
    match e {
        AlgebraExpr::BaseK => {}
        AlgebraExpr::Field { tdeg } => {
            if *tdeg > 0 {
                numeric.push(AlgebraExpr::field(tdeg - 1));
            }
            structural.push(AlgebraExpr::k());
        }
        AlgebraExpr::Af { tdeg, dim, maximal } => {
            let (t, d) = (*tdeg, *dim);
            match maximal {
                None => {
                    if t > 0 {
                        numeric.push(AlgebraExpr::af(t - 1, d.min(t - 1)));
                    }
                    if d > 0 {
                        numeric.push(AlgebraExpr::af(t, d - 1));
                    }
                }
                Some(m) => {
                    let with = |t, d, h, r| AlgebraExpr::af_local(t, d, MaximalIdealData::new(h, r, m.unique));
                    if m.residue_tdeg > 0 {
                        numeric.push(with(t - 1, d.min(t - 1), m.height, m.residue_tdeg - 1));
                    }
                    if m.height > 1 {
                        numeric.push(with(t - 1, d - 1, m.height - 1, m.residue_tdeg));
                    }
                    if d > m.height {
                        numeric.push(with(t, d - 1, m.height, m.residue_tdeg));
                    }
                    if !m.unique {
                        numeric.push(AlgebraExpr::af_local(t, d, MaximalIdealData::new(m.height, m.residue_tdeg, true)));
                    }
                }
            }
            structural.push(AlgebraExpr::field(t));
        }
        AlgebraExpr::Poly { base, vars } => {
            if *vars > 1 {
                numeric.push(AlgebraExpr::poly((**base).clone(), vars - 1));
            }
            for b in candidates(base) {
                numeric.push(AlgebraExpr::poly(b, *vars));
            }
            structural.push((**base).clone());
        }
        AlgebraExpr::Pullback { ambient, subring } => {
            for t in candidates(ambient) {
                numeric.push(AlgebraExpr::pullback(t, (**subring).clone()));
            }
            for d in candidates(subring) {
                numeric.push(AlgebraExpr::pullback((**ambient).clone(), d));
            }
            structural.push((**ambient).clone());
        }
    }
}

/// Shrinks `(a, b)` while `fails` keeps returning true.
pub fn shrink_pair(
    mut a: AlgebraExpr,
    mut b: AlgebraExpr,
    fails: impl Fn(&AlgebraExpr, &AlgebraExpr) -> bool,
) -> (AlgebraExpr, AlgebraExpr) {
    // Each accepted step strictly decreases size or a numeric field.
    'outer: for _ in 0..1000 {
        for c in candidates(&a) {
            if fails(&c, &b) {
                a = c;
                continue 'outer;
            }
        }
        for c in candidates(&b) {
            if fails(&a, &c) {
                b = c;
                continue 'outer;
            }
        }
        break;
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidates_are_valid_and_smaller() {
        let t = AlgebraExpr::af_local(4, 2, MaximalIdealData::new(2, 2, false));
        let r = AlgebraExpr::pullback(t.clone(), AlgebraExpr::field(2));
        let cs = candidates(&r);
        assert!(!cs.is_empty());
        assert!(cs.iter().all(|c| validate(c).is_empty()));
        assert!(cs.contains(&t));
    }

    #[test]
    fn shrinks_to_a_minimal_witness() {
        // "fails" whenever the first term has tdeg at least 2.
        let r = AlgebraExpr::pullback(
            AlgebraExpr::af_local(6, 3, MaximalIdealData::new(3, 3, true)),
            AlgebraExpr::af(3, 1),
        );
        let (a, b) = shrink_pair(r, AlgebraExpr::field(5), |a, _| crate::invariants::tdeg(a).unwrap() >= 2);
        assert_eq!(crate::invariants::tdeg(&a).unwrap(), 2);
        assert_eq!(b, AlgebraExpr::k());
    }
}
