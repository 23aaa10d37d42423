//! Echelon bases of finite-dimensional subspaces of `k[[t]]/(t^N)`.
//!
//! Rows are monic and have pairwise distinct orders, so the set of leading
//! exponents is exactly the set of values of nonzero span elements.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    field: Field,
    precision: u32,
    rows: BTreeMap<u32, TruncatedSeries>,
}

impl EchelonBasis {
    pub fn new(field: Field, precision: u32) -> Self {
        EchelonBasis {
            field,
            precision,
            rows: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, lead: u32) -> Option<&TruncatedSeries> {
        self.rows.get(&lead)
    }

    /// Rows in increasing order of leading exponent.
    pub fn rows(&self) -> impl Iterator<Item = &TruncatedSeries> {
        self.rows.values()
    }

    fn check(&self, s: &TruncatedSeries) -> Result<()> {
        if s.field() != self.field {
            return Err(Error::MixedFields(s.field().label(), self.field.label()));
        }
        if s.precision() < self.precision {
            return Err(Error::Precision {
                needed: self.precision,
                available: s.precision(),
            });
        }
        Ok(())
    }

    /// Leading-term elimination of `s` (truncated to the basis precision).
    /// The remainder is zero exactly when `s` lies in the span.
    pub fn reduce(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(s)?;
        let mut r = s.truncate(self.precision);
        while let Some(k) = r.order() {
            let Some(row) = self.rows.get(&k) else { break };
            let c = r.leading_coefficient().unwrap().neg();
            r = r.combine(row, &c);
        }
        Ok(r)
    }

    pub fn contains(&self, s: &TruncatedSeries) -> Result<bool> {
        Ok(self.reduce(s)?.is_zero())
    }

    /// Reduces `s` and, when a nonzero remainder survives, adds it (monic) as
    /// a new row. Returns the remainder.
    pub fn insert(&mut self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        let r = self.reduce(s)?;
        if let Some(k) = r.order() {
            self.rows.insert(k, r.monic());
        }
        Ok(r)
    }

    /// Inserts a row whose leading exponent is known to be new; skips reduction.
    pub(crate) fn insert_fresh(&mut self, s: TruncatedSeries) {
        let s = s.truncate(self.precision);
        let k = s.order().expect("fresh row is nonzero");
        debug_assert!(!self.rows.contains_key(&k));
        self.rows.insert(k, s.monic());
    }

    pub fn span_orders(&self) -> BTreeSet<u32> {
        self.rows.keys().copied().collect()
    }

    pub fn leads(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.keys().copied()
    }

    /// The same span modulo a smaller power of `t`.
    pub fn truncate(&self, precision: u32) -> EchelonBasis {
        let p = precision.min(self.precision);
        EchelonBasis {
            field: self.field,
            precision: p,
            rows: self
                .rows
                .range(..p)
                .map(|(k, r)| (*k, r.truncate(p)))
                .collect(),
        }
    }
}

/// Values of `U ∩ V` for two echelon bases of equal precision, together with
/// an echelon basis of witnesses (one element of `U ∩ V` per value).
///
/// Rows are processed in decreasing leading exponent. At exponent `u` a row
/// of `U` always opens a new pivot; a row of `V` then lands in the running
/// span exactly when `u` is the value of some element of `U ∩ V`. Each running
/// row carries its `U`-component so the witness can be read off.
pub fn intersect(u_basis: &EchelonBasis, v_basis: &EchelonBasis) -> Result<EchelonBasis> {
    if u_basis.field != v_basis.field {
        return Err(Error::MixedFields(
            u_basis.field.label(),
            v_basis.field.label(),
        ));
    }
    if u_basis.precision != v_basis.precision {
        return Err(Error::Precision {
            needed: u_basis.precision.max(v_basis.precision),
            available: u_basis.precision.min(v_basis.precision),
        });
    }
    let field = u_basis.field;
    let precision = u_basis.precision;
    let mut running: BTreeMap<u32, (TruncatedSeries, TruncatedSeries)> = BTreeMap::new();
    let mut witnesses = EchelonBasis::new(field, precision);

    let mut leads: BTreeSet<u32> = u_basis.span_orders();
    leads.extend(v_basis.leads());
    for &lead in leads.iter().rev() {
        if let Some(a) = u_basis.row(lead) {
            running.insert(lead, (a.clone(), a.clone()));
        }
        let Some(b) = v_basis.row(lead) else { continue };
        let mut r = b.clone();
        let mut upart = TruncatedSeries::zero(field, precision);
        while let Some(k) = r.order() {
            let Some((row, row_u)) = running.get(&k) else {
                break;
            };
            let c = r.leading_coefficient().unwrap().neg();
            r = r.combine(row, &c);
            upart = upart.combine(row_u, &c);
        }
        match r.order() {
            None => {
                // b + (combination) = 0, so the U-part of the combination,
                // negated, lies in U and equals b minus V-rows: a common element.
                let w = upart.neg();
                if w.order() != Some(lead) {
                    return Err(Error::Defect(format!(
                        "intersection witness at {lead} has order {:?}",
                        w.order()
                    )));
                }
                witnesses.insert_fresh(w);
            }
            Some(k) => {
                let c = r.leading_coefficient().unwrap().inv();
                running.insert(k, (r.scale(&c), upart.scale(&c)));
            }
        }
    }
    Ok(witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse_series;

    fn q(text: &str) -> TruncatedSeries {
        parse_series(text, Field::Rational, 40).unwrap()
    }

    #[test]
    fn second_insert_reduces_to_next_term() {
        let mut b = EchelonBasis::new(Field::Rational, 40);
        b.insert(&q("t^12+2*t^13+t^14")).unwrap();
        let rem = b.insert(&q("t^12")).unwrap();
        assert_eq!(rem, q("-2*t^13-t^14"));
        assert_eq!(b.span_orders(), [12, 13].into_iter().collect());
        assert_eq!(b.row(13).unwrap(), &q("t^13+1/2*t^14"));
    }

    #[test]
    fn reinserting_gives_zero_remainder() {
        let mut b = EchelonBasis::new(Field::Rational, 40);
        let s = q("3*t^2 - t^7 + t^9");
        b.insert(&s).unwrap();
        assert!(b.insert(&s).unwrap().is_zero());
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn empty_basis_has_no_orders() {
        assert!(EchelonBasis::new(Field::Rational, 10)
            .span_orders()
            .is_empty());
    }

    #[test]
    fn low_precision_rejected() {
        let b = EchelonBasis::new(Field::Rational, 50);
        assert!(matches!(b.reduce(&q("t")), Err(Error::Precision { .. })));
    }

    #[test]
    fn intersection_of_two_planes() {
        // U = <t, t^2>, V = <t + t^2, t^3>: U ∩ V = <t + t^2>
        let mut u = EchelonBasis::new(Field::Rational, 10);
        u.insert(&q("t")).unwrap();
        u.insert(&q("t^2")).unwrap();
        let mut v = EchelonBasis::new(Field::Rational, 10);
        v.insert(&q("t+t^2")).unwrap();
        v.insert(&q("t^3")).unwrap();
        let u = u.truncate(10);
        let v = v.truncate(10);
        let w = intersect(&u, &v).unwrap();
        assert_eq!(w.span_orders(), [1].into_iter().collect());
        assert_eq!(
            w.row(1).unwrap(),
            &parse_series("t+t^2", Field::Rational, 10).unwrap()
        );
    }

    #[test]
    fn intersection_sees_cancellation_below_common_leads() {
        // U = <t^2 + t^3>, V = <t^2>: both have value 2 but meet trivially
        let mut u = EchelonBasis::new(Field::Rational, 10);
        u.insert(&parse_series("t^2+t^3", Field::Rational, 10).unwrap())
            .unwrap();
        let mut v = EchelonBasis::new(Field::Rational, 10);
        v.insert(&parse_series("t^2", Field::Rational, 10).unwrap())
            .unwrap();
        assert!(intersect(&u, &v).unwrap().is_empty());
    }
}
