//! Truncated q-expansions Σ_{n<prec} a(n)qⁿ with coefficients in a fixed
//! number field. The struct knows nothing about weights; it is the plain
//! truncated power-series ring K[[q]]/(q^prec).

use crate::{QmfError, Result};
use exact_arith::{NumberField, NumberFieldElem, Rat};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    field: Arc<NumberField>,
    a: Vec<NumberFieldElem>,
}

impl QExpansion {
    pub fn new(field: &Arc<NumberField>, coeffs: Vec<NumberFieldElem>) -> Self {
        for c in &coeffs {
            assert_eq!(
                c.field().minpoly(),
                field.minpoly(),
                "q-expansion coefficients must all live in the stated field"
            );
        }
        QExpansion { field: field.clone(), a: coeffs }
    }

    pub fn zero(field: &Arc<NumberField>, prec: usize) -> Self {
        let z = NumberFieldElem::from_i64(field, 0);
        QExpansion { field: field.clone(), a: vec![z; prec] }
    }

    /// A rational series embedded in the rationals field.
    pub fn from_rat_coeffs(coeffs: &[Rat]) -> Self {
        let field = NumberField::rationals();
        let a = coeffs.iter().map(|r| NumberFieldElem::from_rat(&field, r)).collect();
        QExpansion { field, a }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn prec(&self) -> usize {
        self.a.len()
    }

    pub fn coeff(&self, n: usize) -> Result<&NumberFieldElem> {
        self.a.get(n).ok_or(QmfError::InsufficientPrecision { needed: n + 1, have: self.a.len() })
    }

    pub fn coeffs(&self) -> &[NumberFieldElem] {
        &self.a
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let n = prec.min(self.a.len());
        QExpansion { field: self.field.clone(), a: self.a[..n].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|c| c.is_zero())
    }

    /// Re-express a series with rational coefficients inside a larger field.
    pub fn lift(&self, field: &Arc<NumberField>) -> Result<Self> {
        let a = self
            .a
            .iter()
            .map(|c| {
                c.to_rat().map(|r| NumberFieldElem::from_rat(field, &r)).ok_or_else(|| {
                    QmfError::Domain("cannot lift a non-rational coefficient across fields".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QExpansion { field: field.clone(), a })
    }

    fn assert_same_field(&self, o: &Self) {
        assert_eq!(self.field.minpoly(), o.field.minpoly(), "mixed coefficient fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.assert_same_field(o);
        let n = self.prec().min(o.prec());
        let a = (0..n).map(|i| self.a[i].add(&o.a[i])).collect();
        QExpansion { field: self.field.clone(), a }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.assert_same_field(o);
        let n = self.prec().min(o.prec());
        let a = (0..n).map(|i| self.a[i].sub(&o.a[i])).collect();
        QExpansion { field: self.field.clone(), a }
    }

    pub fn scale(&self, c: &NumberFieldElem) -> Self {
        let a = self.a.iter().map(|x| x.mul(c)).collect();
        QExpansion { field: self.field.clone(), a }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        let a = self.a.iter().map(|x| x.mul_rat(r)).collect();
        QExpansion { field: self.field.clone(), a }
    }

    /// Truncated Cauchy product. Output precision is the shorter operand's.
    pub fn mul(&self, o: &Self) -> Self {
        self.assert_same_field(o);
        let n = self.prec().min(o.prec());
        let conv = |k: usize| -> NumberFieldElem {
            let mut s = NumberFieldElem::from_i64(&self.field, 0);
            for i in 0..=k {
                if !self.a[i].is_zero() && !o.a[k - i].is_zero() {
                    s = s.add(&self.a[i].mul(&o.a[k - i]));
                }
            }
            s
        };
        #[cfg(feature = "parallel")]
        let a: Vec<NumberFieldElem> = if n >= 128 {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(conv).collect()
        } else {
            (0..n).map(conv).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let a: Vec<NumberFieldElem> = (0..n).map(conv).collect();
        QExpansion { field: self.field.clone(), a }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rational::rat;

    fn series(c: &[i64]) -> QExpansion {
        QExpansion::from_rat_coeffs(&c.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>())
    }

    #[test]
    fn ring_operations() {
        let f = series(&[1, 2, 3, 4]);
        let g = series(&[0, 1, 0, -1]);
        assert_eq!(f.add(&g), series(&[1, 3, 3, 3]));
        assert_eq!(f.sub(&g), series(&[1, 1, 3, 5]));
        // (1+2q+3q²+4q³)(q−q³) = q + 2q² + 3q³ − q³ = q + 2q² + 2q³ + O(q⁴)
        assert_eq!(f.mul(&g), series(&[0, 1, 2, 2]));
        assert_eq!(f.truncate(2), series(&[1, 2]));
        assert_eq!(f.scale_rat(&rat(1, 2)).coeff(3).unwrap().to_rat().unwrap(), rat(2, 1));
    }

    #[test]
    fn geometric_series_inverse_identity() {
        // (1−q)·(1+q+q²+…) = 1
        let one_minus_q = series(&[1, -1, 0, 0, 0, 0]);
        let geo = series(&[1, 1, 1, 1, 1, 1]);
        let mut expect = vec![rat(0, 1); 6];
        expect[0] = rat(1, 1);
        assert_eq!(one_minus_q.mul(&geo), QExpansion::from_rat_coeffs(&expect));
    }

    #[test]
    fn precision_errors_are_loud() {
        let f = series(&[1, 2]);
        assert!(matches!(
            f.coeff(5),
            Err(QmfError::InsufficientPrecision { needed: 6, have: 2 })
        ));
    }

    #[test]
    fn lift_into_quadratic_field() {
        let fld = NumberField::quadratic(&rat(0, 1), &rat(2, 1)).unwrap(); // x² − 2
        let f = series(&[1, 5]);
        let g = f.lift(&fld).unwrap();
        let th = NumberFieldElem::theta(&fld);
        let h = g.scale(&th); // (1+5q)·θ
        assert_eq!(h.coeff(1).unwrap(), &th.mul_rat(&rat(5, 1)));
        // θ² = 2 stays rational.
        assert_eq!(h.scale(&th).coeff(0).unwrap().to_rat().unwrap(), rat(2, 1));
    }
}
