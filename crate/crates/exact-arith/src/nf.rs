//! Number fields Q(θ) presented by a monic integral-style minimal polynomial,
//! with exact element arithmetic (reduction mod the minimal polynomial),
//! field norms via multiplication matrices, and quadratic conjugation. The
//! degree-two case x² − t·x − n (Hecke eigenvalue fields) is the main client;
//! degree one degenerates to plain rationals.

use crate::matrix::{FieldOps, Mat};
use crate::poly::{self, Poly};
use crate::rational::{Rat, rat_to_string};
use crate::{ArithError, Result};
use num::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// A number field Q[x]/(m(x)), m monic and squarefree; irreducibility is
/// verified for degrees one and two (the degrees constructed here).
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    minpoly: Poly,
    degree: usize,
}

impl NumberField {
    pub fn new(minpoly_in: &Poly) -> Result<Arc<NumberField>> {
        let deg = poly::degree(minpoly_in)
            .ok_or_else(|| ArithError::Domain("zero polynomial".into()))?;
        if deg == 0 {
            return Err(ArithError::Domain("constant minimal polynomial".into()));
        }
        // Normalize to monic.
        let lead = minpoly_in[deg].clone();
        let minpoly: Poly = minpoly_in.iter().map(|c| c / &lead).collect();
        if !poly::is_squarefree(&minpoly) {
            return Err(ArithError::Domain("minimal polynomial is not squarefree".into()));
        }
        if deg == 2 {
            // x² + bx + c irreducible over Q iff b² − 4c is not a rational square.
            let disc = &minpoly[1] * &minpoly[1] - Rat::from(num::BigInt::from(4)) * &minpoly[0];
            if is_rational_square(&disc) {
                return Err(ArithError::Domain(
                    "quadratic minimal polynomial is reducible".into(),
                ));
            }
        }
        Ok(Arc::new(NumberField { minpoly, degree: deg }))
    }

    /// The rational field presented as Q[x]/(x).
    pub fn rationals() -> Arc<NumberField> {
        Arc::new(NumberField { minpoly: vec![Rat::zero(), Rat::one()], degree: 1 })
    }

    /// Q[x]/(x² − t·x − n).
    pub fn quadratic(t: &Rat, n: &Rat) -> Result<Arc<NumberField>> {
        NumberField::new(&vec![-n.clone(), -t.clone(), Rat::one()])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    /// For degree two x² − t·x − n: (t, disc) with disc = t² + 4n.
    pub fn quadratic_parts(&self) -> Option<(Rat, Rat)> {
        if self.degree != 2 {
            return None;
        }
        let t = -self.minpoly[1].clone();
        let n = -self.minpoly[0].clone();
        let disc = &t * &t + Rat::from(num::BigInt::from(4)) * n;
        Some((t, disc))
    }

    pub fn minpoly_string(&self) -> String {
        // "x^2-8640*x-454569984" style, low-noise and stable.
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.minpoly.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match i {
                0 => rat_to_string(&mag),
                1 => {
                    if mag.is_one() {
                        "x".to_string()
                    } else {
                        format!("{}*x", rat_to_string(&mag))
                    }
                }
                _ => {
                    if mag.is_one() {
                        format!("x^{}", i)
                    } else {
                        format!("{}*x^{}", rat_to_string(&mag), i)
                    }
                }
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{}", body) } else { body });
            } else {
                parts.push(format!("{}{}", if c.is_negative() { "-" } else { "+" }, body));
            }
        }
        parts.join("")
    }
}

fn is_rational_square(q: &Rat) -> bool {
    if q.is_negative() {
        return false;
    }
    crate::rational::int_sqrt_exact(q.numer()).is_some()
        && crate::rational::int_sqrt_exact(q.denom()).is_some()
}

/// An element of a number field, stored as coordinates in the power basis
/// 1, θ, …, θ^{d−1}.
#[derive(Clone, Debug)]
pub struct NumberFieldElem {
    field: Arc<NumberField>,
    c: Vec<Rat>,
}

impl PartialEq for NumberFieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.minpoly == other.field.minpoly && self.c == other.c
    }
}
impl Eq for NumberFieldElem {}

impl NumberFieldElem {
    pub fn new(field: &Arc<NumberField>, coords: Vec<Rat>) -> Self {
        let mut c = coords;
        assert!(c.len() <= field.degree, "coordinate vector too long");
        c.resize(field.degree, Rat::zero());
        NumberFieldElem { field: field.clone(), c }
    }

    pub fn from_rat(field: &Arc<NumberField>, r: &Rat) -> Self {
        let mut c = vec![Rat::zero(); field.degree];
        c[0] = r.clone();
        NumberFieldElem { field: field.clone(), c }
    }

    pub fn from_i64(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rat(field, &Rat::from(num::BigInt::from(n)))
    }

    pub fn theta(field: &Arc<NumberField>) -> Self {
        assert!(field.degree >= 2, "theta undefined for a degree-one field");
        let mut c = vec![Rat::zero(); field.degree];
        c[1] = Rat::one();
        NumberFieldElem { field: field.clone(), c }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn to_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn assert_compatible(&self, o: &Self) {
        assert!(
            self.field.minpoly == o.field.minpoly,
            "elements of different number fields"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.assert_compatible(o);
        NumberFieldElem {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.assert_compatible(o);
        NumberFieldElem {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        NumberFieldElem { field: self.field.clone(), c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.assert_compatible(o);
        let prod = poly::mul(&self.c, &o.c);
        let red = poly::rem(&prod, &self.field.minpoly);
        Self::new(&self.field, red)
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        NumberFieldElem { field: self.field.clone(), c: self.c.iter().map(|a| a * r).collect() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(ArithError::NotInvertible);
        }
        let (g, s, _t) = poly::xgcd(&self.c, &self.field.minpoly);
        match poly::degree(&g) {
            Some(0) => {
                let ginv = g[0].recip();
                let coords: Poly = s.iter().map(|x| x * &ginv).collect();
                Ok(Self::new(&self.field, poly::rem(&coords, &self.field.minpoly)))
            }
            _ => Err(ArithError::NotInvertible),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_rat(&self.field, &Rat::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by self on the power basis.
    pub fn mult_matrix(&self) -> Mat<Rat> {
        let d = self.field.degree;
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(d);
        let mut cur = self.c.clone();
        for _ in 0..d {
            let mut col = cur.clone();
            col.resize(d, Rat::zero());
            cols.push(col);
            // multiply by θ: shift then reduce
            let mut shifted = vec![Rat::zero()];
            shifted.extend(cur.iter().cloned());
            cur = poly::rem(&shifted, &self.field.minpoly);
            cur.resize(d, Rat::zero());
        }
        // cols[j] = coords of self·θʲ; assemble with entries (i,j).
        let rows: Vec<Vec<Rat>> =
            (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        Mat::from_rows(rows)
    }

    /// Field norm N(self) ∈ Q (determinant of the multiplication matrix).
    pub fn norm(&self) -> Rat {
        self.mult_matrix().det()
    }

    pub fn trace(&self) -> Rat {
        self.mult_matrix().trace()
    }

    /// Galois conjugate for degree ≤ 2 (θ ↦ t − θ); identity in degree one.
    pub fn conjugate(&self) -> Result<Self> {
        match self.field.degree {
            1 => Ok(self.clone()),
            2 => {
                let (t, _) = self.field.quadratic_parts().unwrap();
                let c0 = &self.c[0] + &self.c[1] * &t;
                Ok(Self::new(&self.field, vec![c0, -self.c[1].clone()]))
            }
            d => Err(ArithError::Domain(format!(
                "conjugation unsupported for degree {d}"
            ))),
        }
    }
}

/// Free-function form of the field norm.
pub fn nf_norm(x: &NumberFieldElem) -> Rat {
    x.norm()
}

impl fmt::Display for NumberFieldElem {
    /// "a/b" for rationals; "c0+c1*theta" (signs folded) in degree two;
    /// explicit powers beyond.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 || self.is_rational() {
            return write!(f, "{}", rat_to_string(&self.c[0]));
        }
        if self.field.degree == 2 {
            let c0 = rat_to_string(&self.c[0]);
            let c1 = &self.c[1];
            let sign = if c1.is_negative() { "-" } else { "+" };
            let mag = rat_to_string(&c1.abs());
            return write!(f, "{}{}{}*theta", c0, sign, mag);
        }
        let mut out = rat_to_string(&self.c[0]);
        for (i, ci) in self.c.iter().enumerate().skip(1) {
            let sign = if ci.is_negative() { "-" } else { "+" };
            out.push_str(&format!("{}{}*theta^{}", sign, rat_to_string(&ci.abs()), i));
        }
        write!(f, "{}", out)
    }
}

impl FieldOps for NumberFieldElem {
    fn zero_like(&self) -> Self {
        Self::from_rat(&self.field, &Rat::zero())
    }
    fn one_like(&self) -> Self {
        Self::from_rat(&self.field, &Rat::one())
    }
    fn add_f(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_f(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_f(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_f(&self) -> Self {
        self.neg()
    }
    fn inv_f(&self) -> Result<Self> {
        self.inv()
    }
    fn is_zero_f(&self) -> bool {
        self.is_zero()
    }
}
