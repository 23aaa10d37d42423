//! Seeded random instances: monomial semigroups with `e ≤ 8`, `F ≤ 40`, and
//! perturbations `t^g + λ t^{g+d}` with `λ ∈ {-2..2}`.
#![allow(dead_code)]

use curvegr::semigroup::sg_enumerate;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::{render, Terms};

pub const MAX_E: u32 = 8;
pub const MAX_F: u32 = 40;

#[derive(Clone, Debug)]
pub struct Instance {
    pub terms: Vec<Terms>,
    /// Minimal generators of the unperturbed semigroup.
    pub base: Vec<u32>,
    pub monomial: bool,
}

impl Instance {
    pub fn generators(&self) -> Vec<String> {
        self.terms.iter().map(render).collect()
    }

    pub fn e(&self) -> u32 {
        self.base[0]
    }

    /// Conductor of the unperturbed semigroup; bounds the ring's conductor.
    pub fn naive_conductor(&self) -> u32 {
        let s = curvegr::sg_from_generators(&self.base).unwrap();
        s.conductor()
    }

    /// Truncation that keeps `m^i` for `i ≤ e + 1` exact.
    pub fn window(&self) -> usize {
        let e = self.e();
        (self.naive_conductor() + (e + 3) * e + 1) as usize
    }
}

/// `monomial` samples from all semigroups in range; `perturbed` samples with
/// `e ≤ max_perturbed_e` and at most four generators.
pub fn sample(seed: u64, monomial: usize, perturbed: usize, max_perturbed_e: u32) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = sg_enumerate(MAX_E, MAX_F);
    let mut out = Vec::new();
    for s in all.choose_multiple(&mut rng, monomial) {
        let base = s.minimal_generators().to_vec();
        out.push(Instance {
            terms: base.iter().map(|&g| vec![(g, 1)]).collect(),
            base,
            monomial: true,
        });
    }
    let small: Vec<_> = all
        .iter()
        .filter(|s| {
            s.multiplicity() >= 2
                && s.multiplicity() <= max_perturbed_e
                && s.minimal_generators().len() <= 4
        })
        .collect();
    while out.len() < monomial + perturbed {
        let base = small
            .choose(&mut rng)
            .unwrap()
            .minimal_generators()
            .to_vec();
        let mut terms: Vec<Terms> = vec![vec![(base[0], 1)]];
        let mut touched = false;
        for &g in &base[1..] {
            let lambda: i64 = rng.gen_range(-2..=2);
            let d: u32 = rng.gen_range(1..=6);
            if lambda != 0 {
                touched = true;
                terms.push(vec![(g, 1), (g + d, lambda)]);
            } else {
                terms.push(vec![(g, 1)]);
            }
        }
        if touched {
            out.push(Instance {
                terms,
                base,
                monomial: false,
            });
        }
    }
    out
}
