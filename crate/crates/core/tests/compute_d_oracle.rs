//! `D(s, d, A)` against a brute-force maximum over a model of `Spec A`.
//!
//! For an AF-domain every prime of height `h` has `ht p[s] = h` and
//! `tdeg(A/p) = t - h`. For `A = φ⁻¹(D0)` with `T`, `D0` AF and
//! `ht M = dim T`, a prime over a prime `q` of `D0` of height `j` has
//! `ht p[s] = ht M + min(s, r - s0) + j` and `tdeg(A/p) = s0 - j`; the other
//! primes come from `T` with height below `dim T`, or up to `dim T` when `T`
//! has other maximal ideals.

use dimcalc_core::tensor::compute_d;
use dimcalc_core::{AlgebraExpr, DimValue, MaximalIdealData};
use proptest::prelude::*;

fn delta(ht_s: u32, s: u32, d: u32, residue_tdeg: u32) -> u32 {
    ht_s + s.min(d + residue_tdeg)
}

fn af_oracle(s: u32, d: u32, t: u32, dim: u32) -> u32 {
    (0..=dim).map(|h| delta(h, s, d, t - h)).max().unwrap()
}

#[derive(Clone, Debug)]
struct PullbackShape {
    dim_t: u32,
    residue: u32,
    unique: bool,
    s0: u32,
    d0: u32,
}

impl PullbackShape {
    fn expr(&self) -> AlgebraExpr {
        let t = AlgebraExpr::af_local(
            self.dim_t + self.residue,
            self.dim_t,
            MaximalIdealData::new(self.dim_t, self.residue, self.unique),
        );
        AlgebraExpr::pullback(t, AlgebraExpr::af(self.s0, self.d0))
    }

    fn oracle(&self, s: u32, d: u32) -> u32 {
        let t = self.dim_t + self.residue;
        let gap = self.residue - self.s0;
        let over_m = (0..=self.d0).map(|j| delta(self.dim_t + s.min(gap) + j, s, d, self.s0 - j));
        let top = if self.unique { self.dim_t - 1 } else { self.dim_t };
        let off_m = (0..=top).map(|h| delta(h, s, d, t - h));
        over_m.chain(off_m).max().unwrap()
    }
}

fn shape() -> impl Strategy<Value = PullbackShape> {
    (1u32..5, 0u32..5, any::<bool>())
        .prop_flat_map(|(dim_t, residue, unique)| {
            (Just(dim_t), Just(residue), Just(unique), 0..=residue)
        })
        .prop_flat_map(|(dim_t, residue, unique, s0)| {
            (0..=s0).prop_map(move |d0| PullbackShape {
                dim_t,
                residue,
                unique,
                s0,
                d0,
            })
        })
}

fn s_and_d() -> impl Strategy<Value = (u32, u32)> {
    (0u32..7).prop_flat_map(|s| (Just(s), 0..=s))
}

proptest! {
    #[test]
    fn af_domains_match_enumeration((s, d) in s_and_d(), t in 0u32..8, dim_frac in 0u32..8) {
        let dim = dim_frac.min(t);
        let got = compute_d(s, d, &AlgebraExpr::af(t, dim)).unwrap().value;
        prop_assert_eq!(got, DimValue::exact(af_oracle(s, d, t, dim)));
    }

    #[test]
    fn pullbacks_match_enumeration((s, d) in s_and_d(), p in shape()) {
        let got = compute_d(s, d, &p.expr()).unwrap().value;
        prop_assert_eq!(got, DimValue::exact(p.oracle(s, d)));
    }

    #[test]
    fn nondecreasing_in_d((s, d) in s_and_d(), p in shape()) {
        prop_assume!(d < s);
        let lo = compute_d(s, d, &p.expr()).unwrap().value;
        let hi = compute_d(s, d + 1, &p.expr()).unwrap().value;
        prop_assert!(lo.le_boundwise(hi));
    }
}
