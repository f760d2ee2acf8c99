use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::invariants::maximal_data_raw;
use crate::model::{validate, AlgebraExpr, MaximalIdealData};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorConfig {
    /// Bound on pullback nesting, at least 1.
    pub max_depth: u32,
    pub max_tdeg: u32,
    pub max_dim: u32,
    pub seed: u64,
    pub count: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_depth: 3,
            max_tdeg: 8,
            max_dim: 4,
            seed: 42,
            count: 1000,
        }
    }
}

/// Deterministic source of valid terms.
pub struct Generator {
    cfg: GeneratorConfig,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(cfg: GeneratorConfig) -> Self {
        assert!(cfg.max_depth >= 1, "max_depth must be at least 1");
        Generator {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        }
    }

    /// One valid term with pullback nesting at most `max_depth`.
    pub fn term(&mut self) -> AlgebraExpr {
        let depth = self.rng.gen_range(0..=self.cfg.max_depth);
        let e = self.expr(depth, self.cfg.max_tdeg);
        debug_assert!(validate(&e).is_empty(), "generated invalid term {e}");
        e
    }

    /// A pair of terms; about one pair in six is a term with itself.
    pub fn pair(&mut self) -> (AlgebraExpr, AlgebraExpr) {
        let a = self.term();
        if self.rng.gen_ratio(1, 6) {
            (a.clone(), a)
        } else {
            (a, self.term())
        }
    }

    fn expr(&mut self, depth: u32, max_tdeg: u32) -> AlgebraExpr {
        if depth > 0 && max_tdeg >= 1 && self.rng.gen_ratio(3, 5) {
            return self.pullback(depth, max_tdeg);
        }
        if max_tdeg >= 1 && self.rng.gen_ratio(1, 6) {
            let vars = self.rng.gen_range(1..=max_tdeg.min(3));
            let base = self.expr(depth, max_tdeg - vars);
            return AlgebraExpr::poly(base, vars);
        }
        self.leaf(max_tdeg)
    }

    fn leaf(&mut self, max_tdeg: u32) -> AlgebraExpr {
        match self.rng.gen_range(0..4) {
            0 => AlgebraExpr::k(),
            1 => AlgebraExpr::field(self.rng.gen_range(0..=max_tdeg)),
            2 => {
                let tdeg = self.rng.gen_range(0..=max_tdeg);
                let dim = self.rng.gen_range(0..=tdeg.min(self.cfg.max_dim));
                AlgebraExpr::af(tdeg, dim)
            }
            _ => match self.local(max_tdeg) {
                Some(e) => e,
                None => AlgebraExpr::field(max_tdeg),
            },
        }
    }

    /// An AF-domain with a distinguished maximal ideal; `None` if
    /// `max_tdeg = 0` leaves no room for one.
    fn local(&mut self, max_tdeg: u32) -> Option<AlgebraExpr> {
        if max_tdeg == 0 || self.cfg.max_dim == 0 {
            return None;
        }
        let tdeg = self.rng.gen_range(1..=max_tdeg);
        let dim = self.rng.gen_range(1..=tdeg.min(self.cfg.max_dim));
        // Favour ht M = dim T, the hypothesis of most closed forms.
        let height = if self.rng.gen_ratio(2, 3) {
            dim
        } else {
            self.rng.gen_range(1..=dim)
        };
        let unique = self.rng.gen_ratio(2, 3);
        Some(AlgebraExpr::af_local(
            tdeg,
            dim,
            MaximalIdealData::new(height, tdeg - height, unique),
        ))
    }

    fn pullback(&mut self, depth: u32, max_tdeg: u32) -> AlgebraExpr {
        let ambient = self.ambient(depth - 1, max_tdeg);
        let Some(m) = maximal_data_raw(&ambient) else {
            return ambient;
        };
        let subring = self.subring(depth - 1, m.residue_tdeg);
        AlgebraExpr::pullback(ambient, subring)
    }

    fn ambient(&mut self, depth: u32, max_tdeg: u32) -> AlgebraExpr {
        if depth > 0 && self.rng.gen_ratio(1, 4) {
            for _ in 0..4 {
                let t = self.pullback(depth, max_tdeg);
                if t.as_pullback().is_some() && maximal_data_raw(&t).is_some() {
                    return t;
                }
            }
        }
        self.local(max_tdeg).expect("max_tdeg >= 1")
    }

    /// A domain of transcendence degree at most `r`.
    fn subring(&mut self, depth: u32, r: u32) -> AlgebraExpr {
        let choices: &[u8] = if depth > 0 && r >= 1 { &[0, 0, 1, 1, 2, 3] } else { &[0, 0, 1, 1, 2] };
        match choices.choose(&mut self.rng).copied().unwrap_or(0) {
            0 => {
                let s = self.rng.gen_range(0..=r);
                if s == 0 {
                    AlgebraExpr::k()
                } else {
                    AlgebraExpr::field(s)
                }
            }
            1 => {
                let s = self.rng.gen_range(0..=r);
                let d = self.rng.gen_range(0..=s.min(self.cfg.max_dim));
                AlgebraExpr::af(s, d)
            }
            2 => self.expr(0, r),
            _ => self.pullback(depth, r),
        }
    }
}

/// The first `cfg.count` terms of the seeded stream.
pub fn generate(cfg: &GeneratorConfig) -> Vec<AlgebraExpr> {
    let mut g = Generator::new(*cfg);
    (0..cfg.count).map(|_| g.term()).collect()
}

/// The first `cfg.count` pairs of the seeded stream.
pub fn generate_pairs(cfg: &GeneratorConfig) -> Vec<(AlgebraExpr, AlgebraExpr)> {
    let mut g = Generator::new(*cfg);
    (0..cfg.count).map(|_| g.pair()).collect()
}
