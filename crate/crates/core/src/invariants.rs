//! The invariant vectors `w, w', a, b, c, ε` and the Hilbert data of `R` and
//! `R/xR`. All lengths are counted through value sets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::echelon::EchelonBasis;
use crate::error::{Error, Result};
use crate::ring::{
    power_intersect_reduction, power_plus_reduction, power_span, vord, CurveRing, PowerSpan,
    ReductionElement,
};
use crate::values::ValueSet;

/// `m^i + xR` and `m^i ∩ xR` for `i = 0..=r+1`.
#[derive(Clone, Debug)]
pub struct ReductionSpans {
    pub x: ReductionElement,
    pub sums: Vec<PowerSpan>,
    pub intersections: Vec<PowerSpan>,
}

impl ReductionSpans {
    pub fn compute(ring: &CurveRing, x: &ReductionElement) -> Result<Self> {
        let top = ring.reduction_number() + 1;
        let pairs: Vec<Result<(PowerSpan, PowerSpan)>> = (0..=top)
            .into_par_iter()
            .map(|i| {
                Ok((
                    power_plus_reduction(ring, x, i)?,
                    power_intersect_reduction(ring, x, i)?,
                ))
            })
            .collect();
        let mut sums = Vec::new();
        let mut intersections = Vec::new();
        for p in pairs {
            let (s, t) = p?;
            sums.push(s);
            intersections.push(t);
        }
        Ok(ReductionSpans {
            x: x.clone(),
            sums,
            intersections,
        })
    }

    /// Only the sums, enough for `c_j`.
    pub fn sums_only(ring: &CurveRing, x: &ReductionElement) -> Result<Self> {
        let top = ring.reduction_number() + 1;
        let sums = (0..=top)
            .into_par_iter()
            .map(|i| power_plus_reduction(ring, x, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReductionSpans {
            x: x.clone(),
            sums,
            intersections: Vec::new(),
        })
    }
}

/// `b_j = vord(w_j)` and `c_j = max{i : w_j ∈ v(m^i + xR)}`.
pub fn compute_bc(ring: &CurveRing, spans: &ReductionSpans) -> Result<(Vec<u32>, Vec<u32>)> {
    let b = ring
        .apery()
        .iter()
        .map(|&w| vord(ring, w))
        .collect::<Result<Vec<_>>>()?;
    let c = ring
        .apery()
        .iter()
        .map(|&w| {
            spans
                .sums
                .iter()
                .rev()
                .find(|s| s.values.contains(w))
                .map(|s| s.i)
                .ok_or_else(|| Error::Defect(format!("w = {w} not in v(R)")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((b, c))
}

/// The blowup `R' = x^{-r} m^r`.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub values: ValueSet,
    pub apery: Vec<u32>,
    pub a: Vec<u32>,
    /// `R' mod t^c`.
    pub basis: EchelonBasis,
}

pub fn blowup_profile(ring: &CurveRing, x: &ReductionElement) -> Result<Blowup> {
    let e = ring.multiplicity();
    let r = ring.reduction_number();
    let c = ring.conductor();
    let power = power_span(ring, r)?;
    let values = power.values.shift_down(r * e);
    let apery = values.apery(e);
    let a = ring
        .apery()
        .iter()
        .zip(&apery)
        .map(|(w, wp)| {
            if wp > w || (w - wp) % e != 0 {
                Err(Error::Defect(format!(
                    "w' = {wp} does not sit below w = {w}"
                )))
            } else {
                Ok((w - wp) / e)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let xr = x.x.pow(r)?;
    let mut basis = EchelonBasis::new(ring.field(), c);
    for row in power.basis.rows() {
        let q = row.div(&xr)?;
        if q.order().is_some_and(|o| o < c) {
            basis.insert(&q.truncate(c))?;
        }
    }
    let from_rows = ValueSet::from_members(basis.leads(), c);
    if from_rows != ValueSet::from_members(values.members_below(c), c) {
        return Err(Error::Defect(
            "x^{-r}·m^r rows disagree with v(m^r) - re".into(),
        ));
    }
    Ok(Blowup {
        values,
        apery,
        a,
        basis,
    })
}

/// Elias microinvariants from `d_n = ℓ(R' / (R + x^n R'))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Microinvariants {
    /// Sorted multiset.
    pub eps: Vec<u32>,
    /// `d_0, d_1, …` until stable.
    pub d: Vec<u32>,
}

pub fn microinvariants(
    ring: &CurveRing,
    x: &ReductionElement,
    blowup: &Blowup,
) -> Result<Microinvariants> {
    let e = ring.multiplicity();
    let c = ring.conductor();
    let r = ring.reduction_number();
    let sum_a: u32 = blowup.a.iter().sum();
    let count_missing = |n: u32| -> Result<u32> {
        let xn = x.x.pow(n)?;
        let mut b = ring.ring_basis().clone();
        for row in blowup.basis.rows() {
            let p = row.mul(&xn)?.truncate(c);
            if !p.is_zero() {
                b.insert(&p)?;
            }
        }
        Ok(blowup.basis.len() as u32 - b.len() as u32)
    };
    let d = (0..=r + 1).map(count_missing).collect::<Result<Vec<_>>>()?;
    if d[0] != 0 || d[r as usize] != d[r as usize + 1] {
        return Err(Error::Defect(format!(
            "length sequence {d:?} does not stabilize"
        )));
    }
    if d[r as usize] != sum_a {
        return Err(Error::Defect(format!(
            "ℓ(R'/R) = {} but Σa = {sum_a}",
            d[r as usize]
        )));
    }
    // #{ε ≥ n} = d_n - d_{n-1}
    let at_least: Vec<u32> = d.windows(2).map(|w| w[1] - w[0]).collect();
    if at_least.windows(2).any(|w| w[1] > w[0]) || at_least.first().is_some_and(|&k| k > e) {
        return Err(Error::Defect(format!(
            "length sequence {d:?} is not concave"
        )));
    }
    let mut eps = Vec::with_capacity(e as usize);
    let mut previous = e;
    for (n, &k) in at_least.iter().enumerate() {
        for _ in k..previous {
            eps.push(n as u32);
        }
        previous = k;
    }
    eps.sort_unstable();
    let mut stable = d.clone();
    while stable.len() > 1 && stable[stable.len() - 1] == stable[stable.len() - 2] {
        stable.pop();
    }
    Ok(Microinvariants { eps, d: stable })
}

/// Coefficients of `Hilb_R` up to the stable range, and of `Hilb_{R/xR}`.
pub fn hilbert(ring: &CurveRing, c: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let e = ring.multiplicity();
    let r = ring.reduction_number();
    let hilb_r = (0..=r)
        .map(|i| {
            let lo = ring.power_apery(i);
            let hi = ring.power_apery(i + 1);
            lo.iter().zip(&hi).map(|(a, b)| (b - a) / e).sum()
        })
        .collect();
    let top = c.iter().copied().max().unwrap_or(0);
    let hilb_mod = (0..=top)
        .map(|i| c.iter().filter(|&&cj| cj == i).count() as u32)
        .collect();
    (hilb_r, hilb_mod)
}

/// Coefficient `i` of a Hilbert series given by its coefficients up to the
/// stable range `stable`.
pub fn coefficient(series: &[u32], i: usize, stable: u32) -> u32 {
    series.get(i).copied().unwrap_or(stable)
}

/// Coefficients of `(1 - z)·Hilb_R` (finitely many nonzero).
pub fn first_difference(hilb_r: &[u32]) -> Vec<i64> {
    let mut out = Vec::with_capacity(hilb_r.len());
    let mut prev = 0i64;
    for &h in hilb_r {
        out.push(h as i64 - prev);
        prev = h as i64;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub e: u32,
    pub r: u32,
    pub reduction: String,
    pub w: Vec<u32>,
    pub w_prime: Vec<u32>,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub eps: Vec<u32>,
    /// Per-class `ε_j`, only when the multiset forces the matching.
    pub eps_by_class: Option<Vec<u32>>,
    pub length_sequence: Vec<u32>,
    /// `Hilb_R` coefficients `0..=r`; every later coefficient is `e`.
    pub hilb_r: Vec<u32>,
    pub hilb_mod: Vec<u32>,
    /// `Ap(v(m^i))` for `i = 0..=r+1`.
    pub power_apery: Vec<Vec<u32>>,
    /// `|v(R') \ v(R)|`.
    pub blowup_colength: u32,
}

impl InvariantProfile {
    pub fn compute(ring: &CurveRing, spans: &ReductionSpans) -> Result<Self> {
        let (b, c) = compute_bc(ring, spans)?;
        let blowup = blowup_profile(ring, &spans.x)?;
        let micro = microinvariants(ring, &spans.x, &blowup)?;
        let (hilb_r, hilb_mod) = hilbert(ring, &c);
        let mut sorted_a = blowup.a.clone();
        sorted_a.sort_unstable();
        let eps_by_class = (sorted_a == micro.eps).then(|| blowup.a.clone());
        let blowup_colength = blowup.values.difference(ring.semigroup().values()).len() as u32;
        let profile = InvariantProfile {
            e: ring.multiplicity(),
            r: ring.reduction_number(),
            reduction: spans.x.x.to_string(),
            w: ring.apery().to_vec(),
            w_prime: blowup.apery,
            a: blowup.a,
            b,
            c,
            eps: micro.eps,
            eps_by_class,
            length_sequence: micro.d,
            hilb_r,
            hilb_mod,
            power_apery: (0..=ring.reduction_number() + 1)
                .map(|i| ring.power_apery(i))
                .collect(),
            blowup_colength,
        };
        profile.check(spans)?;
        Ok(profile)
    }

    /// `(1-z)·Hilb_R` coefficient `i`.
    pub fn hilbert_difference(&self, i: usize) -> i64 {
        let h = |k: usize| coefficient(&self.hilb_r, k, self.e) as i64;
        if i == 0 {
            h(0)
        } else {
            h(i) - h(i - 1)
        }
    }

    /// Highest index where `(1-z)·Hilb_R` or `Hilb_{R/xR}` can be nonzero.
    pub fn hilbert_range(&self) -> usize {
        self.hilb_r.len().max(self.hilb_mod.len())
    }

    /// First `i` where `(1-z)·Hilb_R` and `Hilb_{R/xR}` differ.
    pub fn hilbert_mismatch(&self) -> Option<usize> {
        (0..=self.hilbert_range())
            .find(|&i| self.hilbert_difference(i) != coefficient(&self.hilb_mod, i, 0) as i64)
    }

    /// First `n` with `Σ_{k≤n} (1-z)Hilb_R > Σ_{k≤n} Hilb_{R/xR}`, i.e.
    /// `Hilb_R ≤ Hilb_{R/xR}/(1-z)` failing.
    pub fn cumulative_hilbert_violation(&self) -> Option<usize> {
        (0..=self.hilbert_range()).find(|&n| {
            let lhs = coefficient(&self.hilb_r, n, self.e);
            let rhs = self.c.iter().filter(|&&cj| cj as usize <= n).count() as u32;
            lhs > rhs
        })
    }

    /// First `i` with coefficient of `(1-z)·Hilb_R` exceeding that of
    /// `Hilb_{R/xR}`.
    pub fn coefficientwise_hilbert_violation(&self) -> Option<usize> {
        (0..=self.hilbert_range())
            .find(|&i| self.hilbert_difference(i) > coefficient(&self.hilb_mod, i, 0) as i64)
    }

    fn check(&self, spans: &ReductionSpans) -> Result<()> {
        let defect = |m: String| Err(Error::Defect(m));
        for j in 0..self.e as usize {
            if self.a[j] < self.b[j] {
                return defect(format!("a_{j} = {} < b_{j} = {}", self.a[j], self.b[j]));
            }
            if self.b[j] > self.c[j] || self.c[j] > self.r {
                return defect(format!(
                    "b_{j} = {}, c_{j} = {}, r = {} out of order",
                    self.b[j], self.c[j], self.r
                ));
            }
        }
        let sum_a: u32 = self.a.iter().sum();
        let sum_eps: u32 = self.eps.iter().sum();
        if sum_a != sum_eps || sum_a != self.blowup_colength {
            return defect(format!(
                "Σa = {sum_a}, Σε = {sum_eps}, |v(R')∖v(R)| = {}",
                self.blowup_colength
            ));
        }
        if self.hilb_mod.iter().sum::<u32>() != self.e {
            return defect(format!(
                "Hilb(R/xR) = {:?} does not sum to e",
                self.hilb_mod
            ));
        }
        // Hilb_{R/xR} again, from the filtration m^i + xR itself
        for (i, &h) in self.hilb_mod.iter().enumerate() {
            let Some(next) = spans.sums.get(i + 1) else {
                break;
            };
            let here = &spans.sums[i];
            let len: u32 = here
                .apery
                .iter()
                .zip(&next.apery)
                .map(|(a, b)| (b - a) / self.e)
                .sum();
            if len != h {
                return defect(format!(
                    "ℓ(m^{i}+xR / m^{}+xR) = {len} but #{{j : c_j = {i}}} = {h}",
                    i + 1
                ));
            }
        }
        if let Some(&last) = self.hilb_r.last() {
            if last != self.e {
                return defect(format!("Hilb_R coefficient at r is {last}, not e"));
            }
        }
        if let Some(n) = self.cumulative_hilbert_violation() {
            return defect(format!("Hilb_R exceeds Hilb(R/xR)/(1-z) at z^{n}"));
        }
        Ok(())
    }
}
