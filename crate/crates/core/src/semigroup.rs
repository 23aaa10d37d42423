//! Numerical semigroups: Apéry sets, sumset filtrations `iM`, reduction
//! numbers and the three-generated complete-intersection classification.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::values::ValueSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u32>,
    minimal_generators: Vec<u32>,
    apery: Vec<u32>,
    values: ValueSet,
}

impl NumericalSemigroup {
    /// The semigroup with Apéry vector `apery` (class-indexed, `apery[0] = 0`).
    pub(crate) fn from_apery(apery: Vec<u32>) -> Self {
        let values = ValueSet::from_apery(&apery);
        let minimal_generators = minimal_generators_of(&values, apery.len() as u32);
        NumericalSemigroup {
            generators: minimal_generators.clone(),
            minimal_generators,
            apery,
            values,
        }
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn minimal_generators(&self) -> &[u32] {
        &self.minimal_generators
    }

    pub fn multiplicity(&self) -> u32 {
        self.apery.len() as u32
    }

    pub fn embedding_dimension(&self) -> usize {
        self.minimal_generators.len()
    }

    /// Class-indexed: `apery()[j] ≡ j (mod e)`.
    pub fn apery(&self) -> &[u32] {
        &self.apery
    }

    pub fn conductor(&self) -> u32 {
        self.values.tail()
    }

    /// Largest gap; `-1` for ℕ.
    pub fn frobenius(&self) -> i64 {
        self.conductor() as i64 - 1
    }

    pub fn contains(&self, n: u32) -> bool {
        self.values.contains(n)
    }

    pub fn values(&self) -> &ValueSet {
        &self.values
    }

    pub fn gaps(&self) -> Vec<u32> {
        (0..self.conductor())
            .filter(|&n| !self.contains(n))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let c = self.conductor();
        c.is_multiple_of(2) && self.gaps().len() as u32 == c / 2
    }
}

/// Least positive members not expressible as a sum of two positive members.
fn minimal_generators_of(values: &ValueSet, e: u32) -> Vec<u32> {
    let bound = values.tail() + e + 1;
    let members: Vec<u32> = (1..bound).filter(|&n| values.contains(n)).collect();
    members
        .iter()
        .copied()
        .filter(|&n| {
            !members
                .iter()
                .take_while(|&&a| 2 * a <= n)
                .any(|&a| values.contains(n - a))
        })
        .collect()
}

pub fn sg_from_generators(gens: &[u32]) -> Result<NumericalSemigroup> {
    if gens.is_empty() {
        return Err(Error::NotNumericalSemigroup("no generators".into()));
    }
    if gens.contains(&0) {
        return Err(Error::NotNumericalSemigroup("generator 0".into()));
    }
    let g = gens.iter().fold(0u32, |acc, &x| acc.gcd(&x));
    if g != 1 {
        return Err(Error::NotNumericalSemigroup(format!(
            "gcd of {gens:?} is {g}, conductor is infinite"
        )));
    }
    let mut sorted = gens.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let e = sorted[0];
    // shortest paths on residues mod e
    let mut apery = vec![u32::MAX; e as usize];
    apery[0] = 0;
    let mut done = vec![false; e as usize];
    for _ in 0..e {
        let (j, w) = apery
            .iter()
            .enumerate()
            .filter(|(j, _)| !done[*j])
            .min_by_key(|(_, w)| **w)
            .map(|(j, w)| (j, *w))
            .unwrap();
        done[j] = true;
        for &g in &sorted[1..] {
            let k = ((w + g) % e) as usize;
            if w + g < apery[k] {
                apery[k] = w + g;
            }
        }
    }
    let mut s = NumericalSemigroup::from_apery(apery);
    s.generators = sorted;
    Ok(s)
}

/// The ideal `iM` (sums of `i` nonzero members) of a semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupIdealPower {
    pub i: u32,
    pub values: ValueSet,
    pub apery: Vec<u32>,
}

/// All numerical semigroups with multiplicity at most `max_e` and Frobenius
/// number at most `max_f`, by Kunz coordinates: `w_i = k_i·m + i` with
/// `k_i + k_j ≥ k_{i+j}` and `k_i + k_j + 1 ≥ k_{i+j-m}`. Sorted by
/// multiplicity, then Apéry set.
pub fn sg_enumerate(max_e: u32, max_f: u32) -> Vec<NumericalSemigroup> {
    let mut out = Vec::new();
    if max_e >= 1 {
        out.push(NumericalSemigroup::from_apery(vec![0]));
    }
    for m in 2..=max_e.min(max_f + 1) {
        let mut k = vec![0u32; m as usize];
        kunz(m, max_f, 1, &mut k, &mut out);
    }
    out
}

fn kunz(m: u32, max_f: u32, i: u32, k: &mut Vec<u32>, out: &mut Vec<NumericalSemigroup>) {
    if i == m {
        let apery = (0..m)
            .map(|j| if j == 0 { 0 } else { k[j as usize] * m + j })
            .collect();
        out.push(NumericalSemigroup::from_apery(apery));
        return;
    }
    // w_i - m ≤ F
    for ki in 1..=(max_f + m - i) / m {
        let at = |j: u32| k[j as usize];
        let below = (1..i).all(|a| at(a) + at(i - a) >= ki);
        let wrap = (1..=i)
            .filter(|&b| i + b > m)
            .all(|b| ki + if b == i { ki } else { at(b) } + 1 >= at(i + b - m));
        if below && wrap {
            k[i as usize] = ki;
            kunz(m, max_f, i + 1, k, out);
        }
    }
}

/// All `iM` for `i = 0..=max_i`, by the class-wise min-plus recurrence.
pub fn sg_power_table(s: &NumericalSemigroup, max_i: u32) -> Vec<SemigroupIdealPower> {
    let e = s.multiplicity() as usize;
    let mut step = s.apery().to_vec();
    step[0] = e as u32;
    let mut out = Vec::with_capacity(max_i as usize + 1);
    let mut current = s.apery().to_vec();
    for i in 0..=max_i {
        if i > 0 {
            current = (0..e)
                .map(|j| {
                    (0..e)
                        .map(|k| current[k] + step[(j + e - k) % e])
                        .min()
                        .unwrap()
                })
                .collect();
        }
        out.push(SemigroupIdealPower {
            i,
            values: ValueSet::from_apery(&current),
            apery: current.clone(),
        });
    }
    out
}

pub fn sg_power_values(s: &NumericalSemigroup, i: u32) -> SemigroupIdealPower {
    sg_power_table(s, i).pop().unwrap()
}

pub(crate) fn reduction_cap(conductor: u32, e: u32) -> u32 {
    4 * conductor / e + 16
}

/// Least `n` with `(n+1)M = e + nM`.
pub fn sg_reduction_number(s: &NumericalSemigroup) -> Result<u32> {
    let e = s.multiplicity();
    let cap = reduction_cap(s.conductor(), e);
    let table = sg_power_table(s, cap + 1);
    for n in 0..=cap {
        let a = &table[n as usize].apery;
        let b = &table[n as usize + 1].apery;
        if a.iter().zip(b).all(|(x, y)| x + e == *y) {
            return Ok(n);
        }
    }
    Err(Error::Defect(format!(
        "reduction number exceeds cap {cap} for {:?}",
        s.generators()
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CICase {
    /// `⟨na, nb, n1·a⟩` with `n < n1`.
    ALargeN1,
    /// `⟨na, nb, n1·a⟩` with `n1 < n`.
    ASmallN1,
    B,
    C,
    None,
}

impl CICase {
    pub fn tag(self) -> &'static str {
        match self {
            CICase::ALargeN1 => "a (n<n1)",
            CICase::ASmallN1 => "a (n1<n)",
            CICase::B => "b",
            CICase::C => "c",
            CICase::None => "none",
        }
    }
}

/// One way of writing the generators as `{na, nb, n1·a + n2·b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CIRepresentation {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub n1: u32,
    pub n2: u32,
    pub case: CICase,
}

impl CIRepresentation {
    pub fn generators(&self) -> [u32; 3] {
        [
            self.n * self.a,
            self.n * self.b,
            self.n1 * self.a + self.n2 * self.b,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CIClassification {
    pub is_ci: bool,
    pub gr_ci: bool,
    pub plane: bool,
    /// Preferred representation: the first matching a case (a, then b, then
    /// c), else the first found.
    pub primary: Option<CIRepresentation>,
    pub representations: Vec<CIRepresentation>,
}

impl CIClassification {
    pub fn case(&self) -> CICase {
        self.primary.map(|r| r.case).unwrap_or(CICase::None)
    }
}

fn classify(n: u32, a: u32, b: u32, n1: u32, n2: u32) -> CICase {
    let third = n1 * a + n2 * b;
    if n2 == 0 {
        if n < n1 {
            CICase::ALargeN1
        } else {
            CICase::ASmallN1
        }
    } else if n <= n1 + n2 && n * a < third && third < n * b {
        CICase::B
    } else if n <= n1 + n2 && third > n * b {
        CICase::C
    } else {
        CICase::None
    }
}

pub fn sg_three_gen_ci(s: &NumericalSemigroup) -> Result<CIClassification> {
    let gens = s.minimal_generators();
    if gens.len() <= 2 {
        return Ok(CIClassification {
            is_ci: true,
            gr_ci: true,
            plane: true,
            primary: None,
            representations: Vec::new(),
        });
    }
    if gens.len() > 3 {
        return Err(Error::Unsupported(format!(
            "CI classification needs at most 3 minimal generators, got {gens:?}"
        )));
    }
    let mut reps = Vec::new();
    for (p, q, t) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let (gp, gq, third) = (gens[p], gens[q], gens[t]);
        let n = gp.gcd(&gq);
        if n <= 1 {
            continue;
        }
        let (a, b) = (gp / n, gq / n);
        for n2 in 0..=third / b {
            let rest = third - n2 * b;
            if rest % a == 0 {
                let n1 = rest / a;
                reps.push(CIRepresentation {
                    n,
                    a,
                    b,
                    n1,
                    n2,
                    case: classify(n, a, b, n1, n2),
                });
            }
        }
    }
    let primary = reps
        .iter()
        .filter(|r| r.case != CICase::None)
        .min_by_key(|r| r.case)
        .or(reps.first())
        .copied();
    Ok(CIClassification {
        is_ci: !reps.is_empty(),
        gr_ci: reps.iter().any(|r| r.case != CICase::None),
        plane: false,
        primary,
        representations: reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apery_of_6_7_15() {
        let s = sg_from_generators(&[6, 7, 15]).unwrap();
        assert_eq!(s.apery(), &[0, 7, 14, 15, 22, 29]);
        assert_eq!(s.frobenius(), 23);
        assert_eq!(s.conductor(), 24);
        assert_eq!(s.minimal_generators(), &[6, 7, 15]);
    }

    #[test]
    fn trivial_semigroup() {
        let s = sg_from_generators(&[1]).unwrap();
        assert_eq!(s.multiplicity(), 1);
        assert_eq!(s.frobenius(), -1);
        assert_eq!(s.apery(), &[0]);
        assert_eq!(sg_reduction_number(&s).unwrap(), 0);
    }

    #[test]
    fn gcd_rejected() {
        assert!(matches!(
            sg_from_generators(&[4, 6]),
            Err(Error::NotNumericalSemigroup(_))
        ));
        assert!(sg_from_generators(&[]).is_err());
    }

    #[test]
    fn powers_of_6_7_15() {
        let s = sg_from_generators(&[6, 7, 15]).unwrap();
        assert_eq!(sg_power_values(&s, 0).apery, s.apery());
        assert_eq!(sg_power_values(&s, 2).apery, vec![12, 13, 14, 21, 22, 29]);
        assert_eq!(sg_power_values(&s, 4).apery, vec![24, 25, 26, 27, 28, 35]);
        assert_eq!(sg_reduction_number(&s).unwrap(), 5);
    }

    #[test]
    fn reduction_number_of_2_3() {
        let s = sg_from_generators(&[2, 3]).unwrap();
        assert_eq!(sg_reduction_number(&s).unwrap(), 1);
    }

    #[test]
    fn non_minimal_generators_dropped() {
        let s = sg_from_generators(&[3, 5, 6, 10]).unwrap();
        assert_eq!(s.minimal_generators(), &[3, 5]);
    }

    #[test]
    fn ci_cases() {
        let c = sg_three_gen_ci(&sg_from_generators(&[4, 6, 7]).unwrap()).unwrap();
        let p = c.primary.unwrap();
        assert!(c.is_ci && c.gr_ci);
        assert_eq!(
            (p.n, p.a, p.b, p.n1, p.n2, p.case),
            (2, 2, 3, 2, 1, CICase::C)
        );

        let c = sg_three_gen_ci(&sg_from_generators(&[6, 7, 15]).unwrap()).unwrap();
        assert!(c.is_ci && !c.gr_ci);
        let p = c.primary.unwrap();
        assert_eq!((p.n, p.a, p.b, p.n1, p.n2), (3, 2, 5, 1, 1));

        let c = sg_three_gen_ci(&sg_from_generators(&[2, 3]).unwrap()).unwrap();
        assert!(c.plane && c.gr_ci);

        let c = sg_three_gen_ci(&sg_from_generators(&[3, 4, 5]).unwrap()).unwrap();
        assert!(!c.is_ci);
    }

    #[test]
    fn ci_preferred_case_order() {
        let p = sg_three_gen_ci(&sg_from_generators(&[6, 8, 9]).unwrap())
            .unwrap()
            .primary
            .unwrap();
        assert_eq!(
            (p.n, p.a, p.b, p.n1, p.case),
            (2, 3, 4, 3, CICase::ALargeN1)
        );
        let p = sg_three_gen_ci(&sg_from_generators(&[4, 6, 9]).unwrap())
            .unwrap()
            .primary
            .unwrap();
        assert_eq!(
            (p.n, p.a, p.b, p.n1, p.case),
            (3, 2, 3, 2, CICase::ASmallN1)
        );
        let p = sg_three_gen_ci(&sg_from_generators(&[6, 7, 9]).unwrap())
            .unwrap()
            .primary
            .unwrap();
        assert_eq!(
            (p.n, p.a, p.b, p.n1, p.n2, p.case),
            (3, 2, 3, 2, 1, CICase::B)
        );
    }

    /// Gap sets `G ⊆ [1, F]` with `F ∈ G` whose complement is closed under
    /// addition.
    fn brute_force_by_frobenius(max_f: u32) -> Vec<usize> {
        let mut counts = vec![0usize; max_f as usize + 1];
        for f in 1..=max_f {
            for mask in 0u32..(1 << (f - 1)) {
                let gap = |n: u32| n == f || (n < f && n >= 1 && mask >> (n - 1) & 1 == 1);
                let closed = (1..=f).filter(|&a| !gap(a)).all(|a| {
                    (1..=f)
                        .filter(|&b| !gap(b))
                        .all(|b| a + b > f || !gap(a + b))
                });
                if closed {
                    counts[f as usize] += 1;
                }
            }
        }
        counts
    }

    #[test]
    fn enumeration_matches_gap_set_oracle() {
        let max_f = 13;
        let oracle = brute_force_by_frobenius(max_f);
        let mut counts = vec![0usize; max_f as usize + 1];
        let all = sg_enumerate(max_f + 1, max_f);
        for s in &all {
            if s.frobenius() > 0 {
                counts[s.frobenius() as usize] += 1;
            }
        }
        assert_eq!(counts, oracle);
        assert_eq!(&oracle[1..13], &[1, 1, 2, 2, 5, 4, 11, 10, 21, 22, 51, 40]);
        assert_eq!(all.iter().filter(|s| s.frobenius() == -1).count(), 1);
    }

    #[test]
    fn enumeration_respects_the_multiplicity_bound() {
        let all = sg_enumerate(4, 20);
        assert!(all
            .iter()
            .all(|s| s.multiplicity() <= 4 && s.frobenius() <= 20));
        assert!(all.iter().any(|s| s.minimal_generators() == [4, 6, 7]));
        assert!(sg_enumerate(0, 10).is_empty());
    }
}
