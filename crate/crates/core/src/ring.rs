//! The ring `R = k[[g_1, …, g_ν]] ⊆ k[[t]]` and its `m`-adic value filtration.
//!
//! Every ideal `I` handled here contains `t^T k[[t]]` for a known threshold
//! `T` (`T = c + i·e` for `m^i`, `c + e` for `xR`). Such an ideal is stored
//! as an echelon basis of `I mod t^T`; the truncation of any element of `I`
//! below `T` is again in `I`, so rows double as genuine ring elements.

use std::borrow::Cow;
use std::collections::BTreeSet;

use num_integer::Integer;

use serde::{Deserialize, Serialize};

use crate::echelon::{intersect, EchelonBasis};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::semigroup::{
    reduction_cap, sg_from_generators, sg_power_table, sg_reduction_number, NumericalSemigroup,
};
use crate::series::{parse_series, TruncatedSeries};
use crate::values::ValueSet;

/// Precision used for exact polynomial inputs; larger than any threshold.
pub const EXACT: u32 = 1 << 20;

/// Largest admissible working precision.
pub const PRECISION_CAP: u32 = 1 << 14;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    pub precision: Option<u32>,
    /// Run the echelon computation even for monomial generators.
    pub force_echelon: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanKind {
    Power,
    Sum,
    Intersection,
}

/// One step of a filtration: `m^i`, `m^i + xR` or `m^i ∩ xR`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSpan {
    pub i: u32,
    pub kind: SpanKind,
    pub basis: EchelonBasis,
    pub values: ValueSet,
    pub apery: Vec<u32>,
}

impl PowerSpan {
    fn new(i: u32, kind: SpanKind, basis: EchelonBasis, e: u32) -> Self {
        let values = ValueSet::from_members(basis.leads(), basis.precision());
        let apery = values.apery(e);
        PowerSpan {
            i,
            kind,
            basis,
            values,
            apery,
        }
    }

    /// Every `n >= threshold()` is a value.
    pub fn threshold(&self) -> u32 {
        self.basis.precision()
    }

    /// Span element of value `n`, lifted to an exact element of the ideal.
    pub fn element_of_value(&self, n: u32) -> Option<TruncatedSeries> {
        if n >= self.threshold() {
            return Some(TruncatedSeries::monomial(
                self.basis.field(),
                self.basis.field().one(),
                n,
                EXACT,
            ));
        }
        self.basis.row(n).map(|r| r.lift(EXACT))
    }
}

/// Certified element of value `e` generating a minimal reduction `xR`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionElement {
    pub x: TruncatedSeries,
    pub is_default: bool,
}

/// `f_0..f_{e-1}` indexed by class, with `ord(f_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperyBasis {
    pub elements: Vec<TruncatedSeries>,
    pub orders: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct CurveRing {
    field: Field,
    generators: Vec<TruncatedSeries>,
    semigroup: NumericalSemigroup,
    naive_conductor: Option<u32>,
    precision: u32,
    r: u32,
    nu: u32,
    monomial: bool,
    fast_path: bool,
    ring_basis: EchelonBasis,
    powers: Vec<PowerSpan>,
    default_x: usize,
}

pub fn ring_build(field: Field, generators: &[&str], options: BuildOptions) -> Result<CurveRing> {
    let gens = generators
        .iter()
        .map(|g| parse_series(g, field, EXACT))
        .collect::<Result<Vec<_>>>()?;
    CurveRing::from_series(field, gens, options)
}

/// `I mod t^target` from `I mod t^base` when `t^base k[[t]] ⊆ I`.
fn extend_basis(basis: &EchelonBasis, target: u32) -> EchelonBasis {
    let base = basis.precision();
    if target <= base {
        return basis.truncate(target);
    }
    let field = basis.field();
    let mut out = EchelonBasis::new(field, target);
    for row in basis.rows() {
        out.insert_fresh(row.lift(target));
    }
    for k in base..target {
        out.insert_fresh(TruncatedSeries::monomial(field, field.one(), k, target));
    }
    out
}

fn monomial_basis(field: Field, values: &ValueSet, threshold: u32) -> EchelonBasis {
    let mut b = EchelonBasis::new(field, threshold);
    for s in values.members_below(threshold) {
        b.insert_fresh(TruncatedSeries::monomial(field, field.one(), s, threshold));
    }
    b
}

/// Echelon basis of `Σ_k g_k·I mod t^threshold`.
fn multiply_span(
    prev: &EchelonBasis,
    gens: &[TruncatedSeries],
    threshold: u32,
) -> Result<EchelonBasis> {
    let mut b = EchelonBasis::new(prev.field(), threshold);
    for g in gens {
        for row in prev.rows() {
            let p = row.mul(g)?;
            if p.order().is_none_or(|o| o >= threshold) {
                continue;
            }
            b.insert(&p)?;
        }
    }
    Ok(b)
}

impl CurveRing {
    pub fn from_series(
        field: Field,
        generators: Vec<TruncatedSeries>,
        options: BuildOptions,
    ) -> Result<CurveRing> {
        if generators.is_empty() {
            return Err(Error::InvalidGenerator("no generators".into()));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.field() != field {
                return Err(Error::MixedFields(g.field().label(), field.label()));
            }
            match g.order() {
                None => return Err(Error::InvalidGenerator("zero generator".into())),
                Some(0) => {
                    return Err(Error::InvalidGenerator(format!(
                        "{g} has a constant term; generators must lie in the maximal ideal"
                    )))
                }
                Some(_) => gens.push(g.lift(EXACT)),
            }
        }
        gens.sort_by_key(|g| g.order().unwrap());
        let orders: Vec<u32> = gens.iter().map(|g| g.order().unwrap()).collect();
        let e = orders[0];
        let exponent_gcd = gens
            .iter()
            .flat_map(|g| g.terms().iter().map(|(k, _)| *k))
            .fold(0u32, |acc, k| acc.gcd(&k));
        if exponent_gcd != 1 {
            return Err(Error::NotNumericalSemigroup(format!(
                "every exponent is divisible by {exponent_gcd}; R ⊆ k[[t^{exponent_gcd}]]"
            )));
        }
        let naive = sg_from_generators(&orders).ok();
        let monomial = gens.iter().all(|g| g.is_monomial());
        let fast_path = monomial && !options.force_echelon;

        let (semigroup, ring_basis) = if fast_path {
            let s = naive
                .clone()
                .expect("monomial generators with coprime exponents");
            let b = monomial_basis(field, s.values(), s.conductor());
            (s, b)
        } else {
            value_semigroup(field, &gens, naive.as_ref().map(|s| s.conductor()))?
        };
        let c = semigroup.conductor();
        let naive_conductor = naive.as_ref().map(|s| s.conductor());

        let cap = reduction_cap(c, e) + 2;
        let mut powers = vec![PowerSpan::new(0, SpanKind::Power, ring_basis.clone(), e)];
        let table = fast_path.then(|| sg_power_table(&semigroup, cap + 2));
        let mut r = None;
        let mut i = 0u32;
        while r.is_none_or(|r| i < r + 2) {
            i += 1;
            if i > cap + 2 {
                return Err(Error::Defect(format!("reduction number exceeds cap {cap}")));
            }
            let threshold = c + i * e;
            if threshold > PRECISION_CAP {
                return Err(Error::PrecisionCap {
                    needed: threshold,
                    cap: PRECISION_CAP,
                });
            }
            let basis = match &table {
                Some(t) => monomial_basis(field, &t[i as usize].values, threshold),
                None => multiply_span(&powers[i as usize - 1].basis, &gens, threshold)?,
            };
            powers.push(PowerSpan::new(i, SpanKind::Power, basis, e));
            let (prev, cur) = (&powers[i as usize - 1].apery, &powers[i as usize].apery);
            if r.is_none() && prev.iter().zip(cur).all(|(a, b)| a + e == *b) {
                r = Some(i - 1);
            }
        }
        let r = r.unwrap();

        let certificate = c + (r + 3) * e;
        let initial = match &naive {
            Some(s) => s.conductor() + (sg_reduction_number(s)? + 3) * e,
            None => certificate,
        };
        let max_degree = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
        let mut precision = options
            .precision
            .unwrap_or(initial.max(max_degree + 1))
            .max(1);
        while precision < certificate {
            precision *= 2;
        }
        if precision > PRECISION_CAP {
            return Err(Error::PrecisionCap {
                needed: precision,
                cap: PRECISION_CAP,
            });
        }

        let nu = (0..e as usize)
            .map(|j| (powers[2].apery[j] - powers[1].apery[j]) / e)
            .sum();
        let default_x = gens
            .iter()
            .position(|g| g.order() == Some(e) && g.is_monomial())
            .unwrap_or(0);

        let ring = CurveRing {
            field,
            generators: gens,
            semigroup,
            naive_conductor,
            precision,
            r,
            nu,
            monomial,
            fast_path,
            ring_basis,
            powers,
            default_x,
        };
        ring.check_invariants()?;
        Ok(ring)
    }

    fn check_invariants(&self) -> Result<()> {
        let e = self.multiplicity();
        let c = self.conductor();
        for w in self.powers.windows(2) {
            if !w[1].values.is_subset(&w[0].values) {
                return Err(Error::Defect(format!(
                    "v(m^{}) is not contained in v(m^{})",
                    w[1].i, w[0].i
                )));
            }
        }
        for p in &self.powers {
            let tail = c + p.i * e;
            if (tail..tail + e).any(|n| !p.values.contains(n)) {
                return Err(Error::Defect(format!("tail of v(m^{}) below {tail}", p.i)));
            }
            if p.apery.iter().zip(self.apery()).any(|(a, w)| a < w) {
                return Err(Error::Defect(format!("Ap(m^{}) below Ap(S)", p.i)));
            }
        }
        if !(c..c + e).all(|n| self.semigroup.contains(n)) {
            return Err(Error::Defect(
                "value semigroup not stable at conductor".into(),
            ));
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[TruncatedSeries] {
        &self.generators
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn multiplicity(&self) -> u32 {
        self.semigroup.multiplicity()
    }

    pub fn apery(&self) -> &[u32] {
        self.semigroup.apery()
    }

    pub fn conductor(&self) -> u32 {
        self.semigroup.conductor()
    }

    /// Conductor of the semigroup generated by the generator orders, when
    /// finite; it bounds `conductor()` from above.
    pub fn naive_conductor(&self) -> Option<u32> {
        self.naive_conductor
    }

    pub fn embedding_dimension(&self) -> u32 {
        self.nu
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn reduction_number(&self) -> u32 {
        self.r
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    pub fn uses_monomial_path(&self) -> bool {
        self.fast_path
    }

    pub fn ring_basis(&self) -> &EchelonBasis {
        &self.ring_basis
    }

    /// `power_span(i)` for `i ≤ r + 2`, computed at build.
    pub fn cached_powers(&self) -> &[PowerSpan] {
        &self.powers
    }

    pub fn threshold(&self, i: u32) -> u32 {
        self.conductor() + i * self.multiplicity()
    }

    /// Class-wise `Ap(v(m^i))` for any `i`, using `m^{i+1} = x·m^i` past `r`.
    pub fn power_apery(&self, i: u32) -> Vec<u32> {
        let top = self.powers.len() as u32 - 1;
        if i <= top {
            return self.powers[i as usize].apery.clone();
        }
        let e = self.multiplicity();
        self.powers[top as usize]
            .apery
            .iter()
            .map(|a| a + (i - top) * e)
            .collect()
    }

    pub fn power_values(&self, i: u32) -> ValueSet {
        ValueSet::from_apery(&self.power_apery(i))
    }

    pub fn contains(&self, a: &TruncatedSeries) -> Result<bool> {
        if a.is_zero() {
            return Ok(true);
        }
        if a.order().unwrap() >= self.conductor() {
            return Ok(true);
        }
        self.ring_basis.contains(a)
    }

    pub fn parse(&self, text: &str) -> Result<TruncatedSeries> {
        parse_series(text, self.field, EXACT)
    }

    /// `a ∈ m^i`, for any `i`.
    pub fn in_power(&self, a: &TruncatedSeries, i: u32) -> Result<bool> {
        let Some(v) = a.order() else { return Ok(true) };
        let e = self.multiplicity();
        if v < i * e {
            return Ok(false);
        }
        if v >= self.threshold(i) {
            return Ok(true);
        }
        if let Some(p) = self.powers.get(i as usize) {
            return p.basis.contains(a);
        }
        let x = self.default_x();
        let t = self.threshold(i);
        self.in_power(&a.truncate(t).div(&x.x.truncate(t))?, i - 1)
    }

    /// `a / b` modulo `t^N`, lifted to a polynomial. It differs from the true
    /// quotient by an element of `t^N k[[t]] ⊆ m^{r+3}`.
    pub fn quotient(&self, a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
        let k = b.order().ok_or(Error::ZeroElement)?;
        let n = self.precision();
        Ok(a.truncate(n + k)
            .div(&b.truncate(n + k))?
            .truncate(n)
            .lift(EXACT))
    }
}

/// `S = v(R)` and `R mod t^c`. The closure at precision `P` yields exactly
/// `S ∩ [0, P)`; a run of `e` consecutive values certifies the conductor
/// because `S + e ⊆ S`.
fn value_semigroup(
    field: Field,
    gens: &[TruncatedSeries],
    naive_conductor: Option<u32>,
) -> Result<(NumericalSemigroup, EchelonBasis)> {
    let e = gens[0].order().unwrap();
    let mut p = match naive_conductor {
        Some(c) => c + e,
        None => 4 * gens.last().unwrap().order().unwrap() + e,
    };
    loop {
        let closure = ring_closure(field, gens, p)?;
        let leads = closure.span_orders();
        let mut start = p;
        while start > 0 && leads.contains(&(start - 1)) {
            start -= 1;
        }
        if p - start >= e {
            let values = ValueSet::from_members(leads.iter().copied(), p);
            let s = NumericalSemigroup::from_apery(values.apery(e));
            let basis = closure.truncate(s.conductor());
            return Ok((s, basis));
        }
        if p >= PRECISION_CAP {
            let g = leads.iter().fold(0u32, |acc, &k| acc.gcd(&k));
            return Err(Error::NotNumericalSemigroup(format!(
                "no conductor below {p} (values found have gcd {g})"
            )));
        }
        p = (2 * p).min(PRECISION_CAP);
    }
}

/// Echelon basis of `R mod t^precision` by closure under multiplication.
fn ring_closure(field: Field, gens: &[TruncatedSeries], precision: u32) -> Result<EchelonBasis> {
    let mut basis = EchelonBasis::new(field, precision);
    if precision == 0 {
        return Ok(basis);
    }
    let mut queue = std::collections::VecDeque::new();
    let one = TruncatedSeries::one(field, precision);
    basis.insert(&one)?;
    queue.push_back(one);
    while let Some(row) = queue.pop_front() {
        for g in gens {
            let p = row.mul(g)?.truncate(precision);
            if p.is_zero() {
                continue;
            }
            let rem = basis.insert(&p)?;
            if !rem.is_zero() {
                queue.push_back(rem.monic());
            }
        }
    }
    Ok(basis)
}

pub fn power_span(ring: &CurveRing, i: u32) -> Result<Cow<'_, PowerSpan>> {
    if let Some(p) = ring.powers.get(i as usize) {
        return Ok(Cow::Borrowed(p));
    }
    let threshold = ring.threshold(i);
    if threshold > ring.precision {
        return Err(Error::OutOfWindow {
            index: i,
            max: (ring.precision - ring.conductor()) / ring.multiplicity(),
        });
    }
    let r = ring.r;
    let x = &ring.default_x().x;
    let shift = x.pow(i - r)?;
    let mut b = EchelonBasis::new(ring.field, threshold);
    for row in ring.powers[r as usize].basis.rows() {
        b.insert_fresh(row.mul(&shift)?.truncate(threshold));
    }
    // x^{i-r}·t^{c+re}k[[t]] = t^{c+ie}k[[t]], so the rows alone span m^i mod t^{c+ie}
    Ok(Cow::Owned(PowerSpan::new(
        i,
        SpanKind::Power,
        b,
        ring.multiplicity(),
    )))
}

/// `vord(s) = max{i : s ∈ v(m^i)}`.
pub fn vord(ring: &CurveRing, s: u32) -> Result<u32> {
    if !ring.semigroup.contains(s) {
        return Err(Error::NotInSemigroup(s));
    }
    let e = ring.multiplicity();
    let j = (s % e) as usize;
    let r = ring.r;
    let top = ring.powers[r as usize].apery[j];
    if s >= top {
        return Ok(r + (s - top) / e);
    }
    Ok((0..r)
        .rev()
        .find(|&i| ring.powers[i as usize].apery[j] <= s)
        .expect("s ∈ S = v(m^0)"))
}

/// `ord(a) = max{i : a ∈ m^i}`.
pub fn element_order(ring: &CurveRing, a: &TruncatedSeries) -> Result<u32> {
    let v = a.order().ok_or(Error::ZeroElement)?;
    if !ring.contains(a)? {
        return Err(Error::NotInRing(a.to_string()));
    }
    let top = vord(ring, v)?;
    for i in (0..=top).rev() {
        if ring.in_power(a, i)? {
            return Ok(i);
        }
    }
    Err(Error::Defect(format!("{a} is in R but not in m^0")))
}

impl CurveRing {
    pub fn default_x(&self) -> ReductionElement {
        ReductionElement {
            x: self.generators[self.default_x].clone(),
            is_default: true,
        }
    }
}

/// Validates `x` (`"default"` or a series expression) as a minimal reduction.
pub fn make_reduction(ring: &CurveRing, expression: &str) -> Result<ReductionElement> {
    if expression.trim() == "default" {
        return Ok(ring.default_x());
    }
    let x = ring.parse(expression)?;
    reduction_from_series(ring, x)
}

pub fn reduction_from_series(ring: &CurveRing, x: TruncatedSeries) -> Result<ReductionElement> {
    let e = ring.multiplicity();
    match x.order() {
        Some(v) if v == e => {}
        other => {
            return Err(Error::InvalidReduction(format!(
                "{x} has value {}, the multiplicity is {e}",
                other.map_or("∞".to_string(), |v| v.to_string())
            )))
        }
    }
    if !ring.contains(&x)? {
        return Err(Error::InvalidReduction(format!("{x} is not in R")));
    }
    let is_default = x == ring.default_x().x;
    let red = ReductionElement { x, is_default };
    verify_reduction(ring, &red)?;
    Ok(red)
}

/// Checks `x·m^r = m^{r+1}`: containment row by row, equality by values.
pub fn verify_reduction(ring: &CurveRing, x: &ReductionElement) -> Result<()> {
    let r = ring.r as usize;
    let next = &ring.powers[r + 1];
    for row in ring.powers[r].basis.rows() {
        let p = row.mul(&x.x)?;
        if !next.basis.contains(&p)? {
            return Err(Error::Defect(format!(
                "x·m^r is not contained in m^(r+1) for x = {}",
                x.x
            )));
        }
    }
    Ok(())
}

pub fn ring_reduction_number(ring: &CurveRing) -> u32 {
    ring.r
}

/// `xR mod t^threshold`, `threshold ≥ c + e`.
fn reduction_ideal(ring: &CurveRing, x: &ReductionElement, threshold: u32) -> Result<EchelonBasis> {
    let e = ring.multiplicity();
    let base = extend_basis(&ring.ring_basis, threshold - e);
    let mut b = EchelonBasis::new(ring.field, threshold);
    for row in base.rows() {
        b.insert(&row.mul(&x.x)?.truncate(threshold))?;
    }
    Ok(b)
}

/// `m^i + xR`, stored modulo `t^{c+e}`.
pub fn power_plus_reduction(ring: &CurveRing, x: &ReductionElement, i: u32) -> Result<PowerSpan> {
    let e = ring.multiplicity();
    let threshold = ring.conductor() + e;
    let power = power_span(ring, i)?;
    let mut b = extend_basis(&power.basis, threshold);
    for row in reduction_ideal(ring, x, threshold)?.rows() {
        b.insert(row)?;
    }
    Ok(PowerSpan::new(i, SpanKind::Sum, b, e))
}

/// `m^i ∩ xR`, stored modulo `t^{c + max(i,1)·e}`.
pub fn power_intersect_reduction(
    ring: &CurveRing,
    x: &ReductionElement,
    i: u32,
) -> Result<PowerSpan> {
    let e = ring.multiplicity();
    let threshold = ring.threshold(i.max(1));
    let power = power_span(ring, i)?;
    let u = extend_basis(&power.basis, threshold);
    let v = reduction_ideal(ring, x, threshold)?;
    let w = intersect(&u, &v)?;
    Ok(PowerSpan::new(i, SpanKind::Intersection, w, e))
}

/// `v(xR) = e + S`.
pub fn reduction_values(ring: &CurveRing) -> ValueSet {
    ring.semigroup.values().shift_up(ring.multiplicity())
}

/// Outcome of the sum/intersection equivalence check at one index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub i: u32,
    pub sum_is_union: bool,
    pub intersection_is_intersection: bool,
}

impl LemmaCheck {
    pub fn equivalent(&self) -> bool {
        self.sum_is_union == self.intersection_is_intersection
    }
}

pub fn lemma_sum_intersect_check(
    sum: &PowerSpan,
    inter: &PowerSpan,
    power: &ValueSet,
    xr: &ValueSet,
) -> LemmaCheck {
    LemmaCheck {
        i: sum.i,
        sum_is_union: sum.values == power.union(xr),
        intersection_is_intersection: inter.values == power.intersection(xr),
    }
}

/// For each class, the row of `m^{b_j}` with value `w_j`.
pub fn apery_basis_extract(ring: &CurveRing) -> Result<AperyBasis> {
    let mut elements = Vec::new();
    let mut orders = Vec::new();
    for &w in ring.apery() {
        let b = vord(ring, w)?;
        let f = ring.powers[b as usize]
            .element_of_value(w)
            .ok_or_else(|| Error::Defect(format!("no row of value {w} in m^{b}")))?;
        elements.push(f);
        orders.push(b);
    }
    Ok(AperyBasis { elements, orders })
}

/// Arranges elements by value class; values must be exactly `Ap(S)`.
pub fn basis_from_elements(
    ring: &CurveRing,
    elements: Vec<TruncatedSeries>,
) -> Result<Vec<TruncatedSeries>> {
    let e = ring.multiplicity() as usize;
    if elements.len() != e {
        return Err(Error::InvalidBasis(format!(
            "expected {e} elements, got {}",
            elements.len()
        )));
    }
    let mut slots: Vec<Option<TruncatedSeries>> = vec![None; e];
    for f in elements {
        let v = f.order().ok_or(Error::ZeroElement)?;
        let j = v as usize % e;
        if v != ring.apery()[j] {
            return Err(Error::InvalidBasis(format!(
                "{f} has value {v}, Apéry element of class {j} is {}",
                ring.apery()[j]
            )));
        }
        if slots[j].is_some() {
            return Err(Error::InvalidBasis(format!("two elements in class {j}")));
        }
        if !ring.contains(&f)? {
            return Err(Error::InvalidBasis(format!("{f} is not in R")));
        }
        slots[j] = Some(f);
    }
    Ok(slots.into_iter().map(|f| f.unwrap()).collect())
}

/// Values `{v(s) : s ∈ span}` of a finite family (for tests and reports).
pub fn leads_of(basis: &EchelonBasis) -> BTreeSet<u32> {
    basis.span_orders()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(gens: &[&str]) -> CurveRing {
        ring_build(Field::Rational, gens, BuildOptions::default()).unwrap()
    }

    #[test]
    fn bryant_apery() {
        let r = q(&["t^6", "t^8+t^9", "t^19"]);
        let set: BTreeSet<u32> = r.apery().iter().copied().collect();
        assert_eq!(set, [0, 8, 16, 19, 27, 29].into_iter().collect());
        assert_eq!(r.apery(), &[0, 19, 8, 27, 16, 29]);
    }

    #[test]
    fn monomial_fast_path() {
        let r = q(&["t^6", "t^7", "t^15"]);
        assert!(r.uses_monomial_path());
        assert_eq!(r.apery(), &[0, 7, 14, 15, 22, 29]);
        assert_eq!(r.reduction_number(), 5);
        assert_eq!(
            power_span(&r, 4).unwrap().apery,
            vec![24, 25, 26, 27, 28, 35]
        );
    }

    #[test]
    fn echelon_path_on_monomials_agrees() {
        let fast = q(&["t^6", "t^7", "t^15"]);
        let slow = ring_build(
            Field::Rational,
            &["t^6", "t^7", "t^15"],
            BuildOptions {
                force_echelon: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!slow.uses_monomial_path());
        for (a, b) in fast.cached_powers().iter().zip(slow.cached_powers()) {
            assert_eq!(a.values, b.values);
        }
    }

    #[test]
    fn apery_of_4_6p7_13() {
        let r = q(&["t^4", "t^6+t^7", "t^13"]);
        let set: BTreeSet<u32> = r.apery().iter().copied().collect();
        assert_eq!(set, [0, 6, 13, 15].into_iter().collect());
    }

    #[test]
    fn bryant_orders() {
        let r = q(&["t^6", "t^8+t^9", "t^19"]);
        let y = r.parse("t^8+t^9").unwrap();
        let x = r.parse("t^6").unwrap();
        let g = y.pow(3).unwrap().sub(&x.pow(4).unwrap()).unwrap();
        assert_eq!(g.order(), Some(25));
        assert_eq!(element_order(&r, &g).unwrap(), 3);
        assert_eq!(element_order(&r, &r.parse("t^25").unwrap()).unwrap(), 2);
        assert_eq!(element_order(&r, &r.parse("1").unwrap()).unwrap(), 0);
        assert_eq!(vord(&r, 25).unwrap(), 3);
    }

    #[test]
    fn vord_examples() {
        let r = q(&["t^6", "t^7", "t^15"]);
        assert_eq!(vord(&r, 22).unwrap(), 2);
        assert_eq!(vord(&r, 6).unwrap(), 1);
        assert!(matches!(vord(&r, 23), Err(Error::NotInSemigroup(23))));
    }

    #[test]
    fn reductions_validated() {
        let r = q(&["t^6", "t^7", "t^15"]);
        assert!(make_reduction(&r, "t^6").unwrap().is_default);
        assert!(!make_reduction(&r, "t^6+t^7").unwrap().is_default);
        assert!(matches!(
            make_reduction(&r, "t^7"),
            Err(Error::InvalidReduction(_))
        ));
        assert!(matches!(
            make_reduction(&r, "t^6+t^8"),
            Err(Error::InvalidReduction(_))
        ));
    }

    #[test]
    fn sum_and_intersection_spans() {
        let r = q(&["t^6", "t^7", "t^15"]);
        let x = make_reduction(&r, "t^6+t^7").unwrap();
        let sum = power_plus_reduction(&r, &x, 3).unwrap();
        assert!(sum.values.contains(22));
        let inter = power_intersect_reduction(&r, &x, 3).unwrap();
        let xr = reduction_values(&r);
        let naive = r.power_values(3).intersection(&xr);
        assert!(inter.values.is_subset(&naive) && inter.values != naive);

        let x6 = make_reduction(&r, "t^6").unwrap();
        let inter = power_intersect_reduction(&r, &x6, 2).unwrap();
        assert_eq!(inter.values, r.power_values(2).intersection(&xr));
        let sum0 = power_plus_reduction(&r, &x6, 0).unwrap();
        assert_eq!(&sum0.values, r.semigroup().values());
        let inter0 = power_intersect_reduction(&r, &x6, 0).unwrap();
        assert_eq!(inter0.values, xr);
    }

    #[test]
    fn extracted_bases() {
        let r = q(&["t^6", "t^8+t^9"]);
        let b = apery_basis_extract(&r).unwrap();
        let values: BTreeSet<u32> = b.elements.iter().map(|f| f.order().unwrap()).collect();
        assert_eq!(values, [0, 8, 16, 25, 33, 41].into_iter().collect());
        assert_eq!(b.orders[1], 3);
        assert_eq!(b.elements[1].order(), Some(25));

        let m = q(&["t^6", "t^7", "t^15"]);
        let b = apery_basis_extract(&m).unwrap();
        assert!(b.elements.iter().all(|f| f.is_monomial()));

        let r = q(&["t^4", "t^6+t^7", "t^13"]);
        let b = apery_basis_extract(&r).unwrap();
        assert_eq!(b.elements[1].order(), Some(13));
        assert_eq!(b.orders[1], 2);
    }

    #[test]
    fn trivial_ring() {
        let r = q(&["t"]);
        assert_eq!(r.multiplicity(), 1);
        assert_eq!(r.reduction_number(), 0);
        assert_eq!(r.conductor(), 0);
    }

    #[test]
    fn gcd_and_constant_rejected() {
        assert!(ring_build(Field::Rational, &["t^4", "t^6"], BuildOptions::default()).is_err());
        assert!(matches!(
            ring_build(Field::Rational, &["1+t^2", "t^3"], BuildOptions::default()),
            Err(Error::InvalidGenerator(_))
        ));
    }
}
