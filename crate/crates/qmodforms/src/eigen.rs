//! Hecke eigenforms of S_k(SL₂(Z)) with exact coefficients.
//!
//! The splitting is driven by T(2) on the echelon basis: its characteristic
//! polynomial must be squarefree (multiplicity one guarantees it for level
//! one), and each root θ determines the eigenform q + θq² + … directly,
//! because a normalized eigenform satisfies a(n) = (coordinates in the
//! echelon basis) for n ≤ dim. Degree ≤ 2 eigenvalue fields are supported,
//! which covers every weight below 36.

use crate::basis::{cusp_basis, delta_z, dim_cusp_forms, eisenstein_like_z, mul_z, pow_z};
use crate::qexp::QExpansion;
use crate::{QmfError, Result};
use exact_arith::rational::{int_pow, int_sqrt_exact, rat_to_string};
use exact_arith::{ArithError, Int, NumberField, NumberFieldElem, Rat};
use num::{One, Signed, Zero};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenLabel {
    /// The only eigenform of its weight.
    Unique,
    /// a(2) = (t + √disc)/2, the larger root of the T(2) minimal polynomial.
    Plus,
    /// a(2) = (t − √disc)/2.
    Minus,
}

impl EigenLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            EigenLabel::Unique => "unique",
            EigenLabel::Plus => "plus",
            EigenLabel::Minus => "minus",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenform {
    weight: u64,
    label: EigenLabel,
    field: Arc<NumberField>,
    a: Vec<NumberFieldElem>,
}

impl Eigenform {
    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn label(&self) -> EigenLabel {
        self.label
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn prec(&self) -> usize {
        self.a.len()
    }

    /// a(n); errors past the stored truncation rather than inventing zeros.
    pub fn coefficient(&self, n: usize) -> Result<&NumberFieldElem> {
        self.a.get(n).ok_or(QmfError::InsufficientPrecision { needed: n + 1, have: self.a.len() })
    }

    /// T(m) eigenvalue = a(m), valid because a(1) = 1.
    pub fn hecke_eigenvalue(&self, m: u64) -> Result<&NumberFieldElem> {
        if m == 0 {
            return Err(QmfError::Domain("T_0 is not a Hecke operator".into()));
        }
        self.coefficient(m as usize)
    }

    pub fn series(&self) -> QExpansion {
        QExpansion::new(&self.field, self.a.clone())
    }

    pub fn minpoly_string(&self) -> String {
        self.field.minpoly_string()
    }

    /// The Galois conjugate: θ ↦ t − θ coefficientwise, Plus ↔ Minus.
    pub fn conjugate(&self) -> Result<Eigenform> {
        let a = self
            .a
            .iter()
            .map(|c| c.conjugate().map_err(QmfError::from))
            .collect::<Result<Vec<_>>>()?;
        let label = match self.label {
            EigenLabel::Unique => EigenLabel::Unique,
            EigenLabel::Plus => EigenLabel::Minus,
            EigenLabel::Minus => EigenLabel::Plus,
        };
        Ok(Eigenform { weight: self.weight, label, field: self.field.clone(), a })
    }
}

/// All normalized Hecke eigenforms of S_k, coefficients to `prec`.
///
/// Ordering: `Unique` alone, or `Plus` then `Minus`.
pub fn eigenforms(weight: u64, prec: usize) -> Result<Vec<Eigenform>> {
    let d = dim_cusp_forms(weight);
    if d == 0 {
        return Ok(vec![]);
    }
    if d > 2 {
        return Err(QmfError::Domain(format!(
            "eigenform splitting is implemented for dim S_k <= 2; dim S_{weight} = {d}"
        )));
    }
    let need = prec.max(2 * d + 1);
    let basis = cusp_basis(weight, need)?;
    let two_pow = Rat::from_integer(int_pow(&Int::from(2), weight as u32 - 1));
    // a(i, T₂f_j) = a(2i, f_j) + [2 | i]·2^{k−1}·a(i/2, f_j)
    let t2_entry = |i: usize, j: usize| -> Result<Rat> {
        let mut v = basis[j].coeff(2 * i)?.to_rat().expect("rational basis");
        if i % 2 == 0 {
            v += basis[j].coeff(i / 2)?.to_rat().expect("rational basis") * &two_pow;
        }
        Ok(v)
    };

    if d == 1 {
        let lambda = t2_entry(1, 0)?;
        let field = NumberField::rationals();
        let a = basis[0]
            .coeffs()
            .iter()
            .take(prec)
            .map(|c| NumberFieldElem::from_rat(&field, &c.to_rat().expect("rational basis")))
            .collect::<Vec<_>>();
        // Sanity: a(2) must equal the T(2) eigenvalue read off the matrix.
        assert_eq!(a[2].to_rat().unwrap(), lambda);
        return Ok(vec![Eigenform { weight, label: EigenLabel::Unique, field, a }]);
    }

    // d = 2: characteristic polynomial x² − t·x + det of the 2×2 T(2) matrix.
    let m11 = t2_entry(1, 0)?;
    let m12 = t2_entry(1, 1)?;
    let m21 = t2_entry(2, 0)?;
    let m22 = t2_entry(2, 1)?;
    let t = &m11 + &m22;
    let det = &m11 * &m22 - &m12 * &m21;
    let disc = &t * &t - Rat::from_integer(Int::from(4)) * &det;
    if disc.is_zero() {
        return Err(QmfError::Arith(ArithError::NotSquarefree));
    }

    let f1 = &basis[0];
    let f2 = &basis[1];
    let build = |field: &Arc<NumberField>, theta: &NumberFieldElem, label: EigenLabel| {
        let a = (0..prec.min(f1.prec()))
            .map(|n| {
                let c1 = f1.coeff(n).unwrap().to_rat().unwrap();
                let c2 = f2.coeff(n).unwrap().to_rat().unwrap();
                NumberFieldElem::from_rat(field, &c1).add(&theta.mul_rat(&c2))
            })
            .collect::<Vec<_>>();
        Eigenform { weight, label, field: field.clone(), a }
    };

    let sqrt_disc = if disc.is_positive() {
        match (int_sqrt_exact(disc.numer()), int_sqrt_exact(disc.denom())) {
            (Some(sn), Some(sd)) => Some(Rat::new(sn, sd)),
            _ => None,
        }
    } else {
        None
    };

    if let Some(s) = sqrt_disc {
        // Rational split: two eigenforms over Q, larger eigenvalue first.
        let field = NumberField::rationals();
        let half = Rat::new(Int::one(), Int::from(2));
        let r_plus = (&t + &s) * &half;
        let r_minus = (&t - &s) * &half;
        let e_plus = NumberFieldElem::from_rat(&field, &r_plus);
        let e_minus = NumberFieldElem::from_rat(&field, &r_minus);
        Ok(vec![
            build(&field, &e_plus, EigenLabel::Plus),
            build(&field, &e_minus, EigenLabel::Minus),
        ])
    } else {
        // Irreducible quadratic: θ is the abstract root, embedded as the
        // larger real root (t + √disc)/2 whenever a real embedding is needed.
        let field = NumberField::quadratic(&t, &(-&det))?;
        let theta = NumberFieldElem::theta(&field);
        let conj = theta.conjugate()?; // t − θ
        Ok(vec![
            build(&field, &theta, EigenLabel::Plus),
            build(&field, &conj, EigenLabel::Minus),
        ])
    }
}

/// First coefficient index where the closed form
/// E₆³Δ + (a(2) + 1536)·E₆Δ² fails to reproduce the weight-30 eigenforms,
/// with the linear coefficient of the weight-6 series and the Δ-power both
/// adjustable so regression tests can pin down *where* wrong variants break.
///
/// `None` means the identity holds through `prec` coefficients.
pub fn verify_phi_with(
    e6_linear_coeff: i64,
    use_delta_cubed: bool,
    prec: usize,
) -> Result<Option<usize>> {
    let forms = eigenforms(30, prec)?;
    let e6 = eisenstein_like_z(6, &Int::from(e6_linear_coeff), prec);
    let dz = delta_z(prec);
    let base = mul_z(&pow_z(&e6, 3, prec), &dz, prec);
    let second = mul_z(&e6, &pow_z(&dz, if use_delta_cubed { 3 } else { 2 }, prec), prec);
    for n in 0..prec {
        for f in &forms {
            let theta = f.coefficient(2)?;
            let shift = theta.add(&NumberFieldElem::from_i64(f.field(), 1536));
            let cand = NumberFieldElem::from_rat(f.field(), &Rat::from_integer(base[n].clone()))
                .add(&shift.mul_rat(&Rat::from_integer(second[n].clone())));
            if &cand != f.coefficient(n)? {
                return Ok(Some(n));
            }
        }
    }
    Ok(None)
}

/// Assert the weight-30 eigenform identity φ± = E₆³Δ + (a(2)±1536… )E₆Δ²
/// exactly through `prec` coefficients.
pub fn verify_phi_pm(prec: usize) -> Result<()> {
    match verify_phi_with(-504, false, prec)? {
        None => Ok(()),
        Some(n) => Err(QmfError::Domain(format!(
            "weight-30 eigenform identity failed at coefficient index {n}"
        ))),
    }
}

/// Plain-text cache form of an eigenform: a header line
/// `weight <k> prec <n> minpoly <poly> label <label>` followed by one
/// `index c0[,c1]` line per coefficient.
pub fn eigenform_to_cache(f: &Eigenform) -> String {
    let mut s = format!(
        "weight {} prec {} minpoly {} label {}\n",
        f.weight(),
        f.prec(),
        f.minpoly_string(),
        f.label().as_str()
    );
    for (n, c) in f.a.iter().enumerate() {
        let coords: Vec<String> = c.coords().iter().map(rat_to_string).collect();
        s.push_str(&format!("{} {}\n", n, coords.join(",")));
    }
    s
}

/// Inverse of [`eigenform_to_cache`]; validates the header shape.
pub fn eigenform_from_cache(text: &str) -> Result<Eigenform> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| QmfError::Domain("empty eigenform cache".into()))?;
    let tok: Vec<&str> = header.split_whitespace().collect();
    if tok.len() != 8 || tok[0] != "weight" || tok[2] != "prec" || tok[4] != "minpoly" || tok[6] != "label" {
        return Err(QmfError::Domain(format!("malformed eigenform cache header: {header}")));
    }
    let weight: u64 =
        tok[1].parse().map_err(|_| QmfError::Domain("bad weight in cache header".into()))?;
    let prec: usize =
        tok[3].parse().map_err(|_| QmfError::Domain("bad prec in cache header".into()))?;
    let field = field_from_minpoly_string(tok[5])?;
    let label = match tok[7] {
        "unique" => EigenLabel::Unique,
        "plus" => EigenLabel::Plus,
        "minus" => EigenLabel::Minus,
        other => return Err(QmfError::Domain(format!("unknown eigenform label {other}"))),
    };
    let mut a = vec![NumberFieldElem::from_i64(&field, 0); prec];
    let mut seen = 0usize;
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (idx_s, val_s) = line
            .split_once(' ')
            .ok_or_else(|| QmfError::Domain(format!("malformed cache line: {line}")))?;
        let idx: usize =
            idx_s.parse().map_err(|_| QmfError::Domain(format!("bad index: {idx_s}")))?;
        if idx >= prec {
            return Err(QmfError::Domain(format!("cache index {idx} out of range {prec}")));
        }
        let coords = val_s
            .split(',')
            .map(|t| {
                exact_arith::rational::rat_from_str(t)
                    .ok_or_else(|| QmfError::Domain(format!("bad rational: {t}")))
            })
            .collect::<Result<Vec<Rat>>>()?;
        a[idx] = NumberFieldElem::new(&field, coords);
        seen += 1;
    }
    if seen != prec {
        return Err(QmfError::Domain(format!(
            "eigenform cache holds {seen} coefficients, header promises {prec}"
        )));
    }
    Ok(Eigenform { weight, label, field, a })
}

/// Parse "x^2-8640*x-454569984" / "x" style monic minimal polynomials.
fn field_from_minpoly_string(s: &str) -> Result<Arc<NumberField>> {
    if s == "x" {
        return Ok(NumberField::rationals());
    }
    // Tokenize on explicit signs; each term is c, c*x or c*x^e (monic lead).
    let mut coeffs: Vec<(usize, Rat)> = Vec::new();
    let norm = s.replace('-', "+-");
    for term in norm.split('+').filter(|t| !t.is_empty()) {
        let (c_str, pow) = if let Some(rest) = term.split_once("*x") {
            let e = match rest.1.strip_prefix('^') {
                Some(e) => e.parse::<usize>().map_err(|_| {
                    QmfError::Domain(format!("bad exponent in minpoly term {term}"))
                })?,
                None if rest.1.is_empty() => 1,
                _ => return Err(QmfError::Domain(format!("bad minpoly term {term}"))),
            };
            (rest.0.to_string(), e)
        } else if let Some(rest) = term.strip_suffix("x^2") {
            let c = if rest.is_empty() || rest == "-" { format!("{rest}1") } else { rest.into() };
            (c.trim_end_matches('*').to_string(), 2)
        } else if let Some(rest) = term.strip_suffix('x') {
            let c = if rest.is_empty() || rest == "-" { format!("{rest}1") } else { rest.into() };
            (c.trim_end_matches('*').to_string(), 1)
        } else {
            (term.to_string(), 0)
        };
        let c = exact_arith::rational::rat_from_str(&c_str)
            .ok_or_else(|| QmfError::Domain(format!("bad coefficient in minpoly term {term}")))?;
        coeffs.push((pow, c));
    }
    let deg = coeffs.iter().map(|(p, _)| *p).max().unwrap_or(0);
    let mut poly = vec![Rat::zero(); deg + 1];
    for (p, c) in coeffs {
        poly[p] += c;
    }
    Ok(NumberField::new(&poly)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rational::rat;

    #[test]
    fn unique_eigenforms_match_classical_tables() {
        // (weight, a(2), a(3)) for the six one-dimensional cusp spaces.
        let table: [(u64, i64, i64); 6] = [
            (12, -24, 252),
            (16, 216, -3348),
            (18, -528, -4284),
            (20, 456, 50652),
            (22, -288, -128844),
            (26, -48, -195804),
        ];
        for (k, a2, a3) in table {
            let forms = eigenforms(k, 8).unwrap();
            assert_eq!(forms.len(), 1, "dim S_{k}");
            let f = &forms[0];
            assert_eq!(f.label(), EigenLabel::Unique);
            assert_eq!(f.coefficient(1).unwrap().to_rat().unwrap(), rat(1, 1));
            assert_eq!(f.coefficient(2).unwrap().to_rat().unwrap(), rat(a2, 1), "a(2) wt {k}");
            assert_eq!(f.coefficient(3).unwrap().to_rat().unwrap(), rat(a3, 1), "a(3) wt {k}");
            // a(4) = a(2)² − 2^{k−1} and a(6) = a(2)a(3): Hecke relations.
            let a4 = rat(a2, 1) * rat(a2, 1) - Rat::from_integer(int_pow(&Int::from(2), k as u32 - 1));
            assert_eq!(f.coefficient(4).unwrap().to_rat().unwrap(), a4, "a(4) wt {k}");
            assert_eq!(
                f.coefficient(6).unwrap().to_rat().unwrap(),
                rat(a2, 1) * rat(a3, 1),
                "a(6) wt {k}"
            );
        }
    }

    #[test]
    fn weight_30_quadratic_pair() {
        let forms = eigenforms(30, 16).unwrap();
        assert_eq!(forms.len(), 2);
        let plus = &forms[0];
        let minus = &forms[1];
        assert_eq!(plus.label(), EigenLabel::Plus);
        assert_eq!(minus.label(), EigenLabel::Minus);
        assert_eq!(plus.minpoly_string(), "x^2-8640*x-454569984");
        // a(2) = θ for plus, 8640 − θ for minus.
        let th = NumberFieldElem::theta(plus.field());
        assert_eq!(plus.coefficient(2).unwrap(), &th);
        assert_eq!(minus.coefficient(2).unwrap(), &th.conjugate().unwrap());
        // a(3) = −552θ − 99180 on the plus form.
        let a3 = NumberFieldElem::new(plus.field(), vec![rat(-99180, 1), rat(-552, 1)]);
        assert_eq!(plus.coefficient(3).unwrap(), &a3);
        assert_eq!(minus.coefficient(3).unwrap(), &a3.conjugate().unwrap());
        // Hecke relations inside the field: a(6) = a(2)a(3), a(4) = a(2)² − 2²⁹.
        let a6 = plus.coefficient(2).unwrap().mul(plus.coefficient(3).unwrap());
        assert_eq!(plus.coefficient(6).unwrap(), &a6);
        let a4 = plus
            .coefficient(2)
            .unwrap()
            .mul(plus.coefficient(2).unwrap())
            .sub(&NumberFieldElem::from_rat(
                plus.field(),
                &Rat::from_integer(int_pow(&Int::from(2), 29)),
            ));
        assert_eq!(plus.coefficient(4).unwrap(), &a4);
        // Trace of a(2) over the pair = trace of T(2) = 8640.
        let tr = plus.coefficient(2).unwrap().add(minus.coefficient(2).unwrap());
        assert_eq!(tr.to_rat().unwrap(), rat(8640, 1));
    }

    #[test]
    fn weight_30_closed_form_holds_and_typos_break_at_index_2() {
        assert!(verify_phi_pm(24).is_ok());
        assert_eq!(verify_phi_with(-504, false, 24).unwrap(), None);
        // Wrong weight-6 linear coefficient +240: first divergence at a(2).
        assert_eq!(verify_phi_with(240, false, 24).unwrap(), Some(2));
        // Δ³ in place of Δ²: also diverges first at a(2).
        assert_eq!(verify_phi_with(-504, true, 24).unwrap(), Some(2));
    }

    #[test]
    fn conjugation_swaps_labels() {
        let forms = eigenforms(30, 8).unwrap();
        let c = forms[0].conjugate().unwrap();
        assert_eq!(c.label(), EigenLabel::Minus);
        assert_eq!(c.coefficient(2).unwrap(), forms[1].coefficient(2).unwrap());
        assert_eq!(c.coefficient(5).unwrap(), forms[1].coefficient(5).unwrap());
    }

    #[test]
    fn cache_round_trip() {
        for weight in [12u64, 30] {
            let forms = eigenforms(weight, 9).unwrap();
            for f in &forms {
                let text = eigenform_to_cache(f);
                let back = eigenform_from_cache(&text).unwrap();
                assert_eq!(&back, f);
            }
        }
        assert!(eigenform_from_cache("garbage header\n").is_err());
        // Truncated body must be rejected.
        let f = &eigenforms(12, 5).unwrap()[0];
        let text = eigenform_to_cache(f);
        let cut: String = text.lines().take(4).map(|l| format!("{l}\n")).collect();
        assert!(eigenform_from_cache(&cut).is_err());
    }

    #[test]
    fn minpoly_parser_round_trips() {
        for s in ["x", "x^2-8640*x-454569984", "x^2-2", "x^2+3*x+1"] {
            let f = field_from_minpoly_string(s).unwrap();
            if s == "x" {
                assert_eq!(f.degree(), 1);
            } else {
                assert_eq!(f.minpoly_string(), s);
            }
        }
    }
}
