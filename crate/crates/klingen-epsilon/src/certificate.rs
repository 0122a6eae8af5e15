//! The determinant test: a degree-one prime 𝔭 with residue characteristic
//! p > 2k'−2 that divides neither ζ(9−2l) nor the determinant
//!
//!   α = det [ ε(m_i)  |  λ_{F_j}(T(m_i)) ]_{i=1..d, j=2..d}
//!
//! cannot divide the product of the normalized standard L-value and the
//! distinguished Fourier coefficients obstructing the Klingen–Eisenstein
//! congruence.  Here F₁, …, F_d are the Hecke eigen-systems of the ambient
//! degree-two space of weight k' (F₁ the lift under test, which supplies no
//! column), and ε(m) is the index-m recursion value on the default matrices.

use crate::params::EpsilonParams;
use crate::recursion::{epsilon_m_with, RecursionConfig};
use crate::{EpsilonError, Result};
use exact_arith::rational::{rat_ord_p, rat_to_string};
use exact_arith::{
    nf_norm, nf_ord, zeta_negative, DegreeOnePrime, Mat, NumberField, NumberFieldElem, Rat,
};
use qmodforms::{
    dim_cusp_forms_degree2, dim_modular_forms_degree2, eigenforms, Degree2Form, Eigenform,
};
use std::sync::Arc;

/// α as a number-field element: the determinant of the d×d matrix whose
/// first column holds the ε-values and whose remaining columns hold the
/// eigenvalue rows, in the given order.
pub fn alpha_det(e: &[Rat], lambda: &[Vec<NumberFieldElem>]) -> Result<NumberFieldElem> {
    let d = e.len();
    if d == 0 {
        return Err(EpsilonError::Domain("empty epsilon vector".into()));
    }
    if lambda.len() != d || lambda.iter().any(|row| row.len() != d - 1) {
        return Err(EpsilonError::Domain(format!(
            "lambda must be {d} rows of {} eigenvalues each",
            d - 1
        )));
    }
    let field = if d == 1 {
        NumberField::rationals()
    } else {
        lambda[0][0].field().clone()
    };
    let mut m = Mat::<NumberFieldElem>::from_rows(
        (0..d)
            .map(|i| {
                let mut row = Vec::with_capacity(d);
                row.push(NumberFieldElem::from_rat(&field, &e[i]));
                row.extend(lambda[i].iter().cloned());
                row
            })
            .collect(),
    );
    for i in 0..d {
        for j in 0..d {
            if !Arc::ptr_eq(m.at(i, j).field(), &field) {
                let x = m.at(i, j).clone();
                let moved = x
                    .to_rat()
                    .map(|r| NumberFieldElem::from_rat(&field, &r))
                    .ok_or_else(|| {
                        EpsilonError::Domain(
                            "eigenvalue rows live in incompatible Hecke fields".into(),
                        )
                    })?;
                m.set(i, j, moved);
            }
        }
    }
    Ok(m.det())
}

/// Outcome of the determinant test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C3Status {
    /// ord_𝔭 ζ(9−2l) = 0 and ord_𝔭 α = 0.
    Verified,
    /// The test could not decide (vanishing determinant, unlucky ordinal,
    /// or a space this implementation cannot span); the reason is recorded.
    Inconclusive(String),
}

/// Options for the determinant test; `Default` reproduces the canonical run.
#[derive(Clone, Debug, Default)]
pub struct C3Options {
    /// Row indices m₁ < … < m_d; defaults to 1..=d.
    pub m_list: Option<Vec<u64>>,
    /// q-expansion length for the eigenform layers.
    pub qexp_prec: Option<usize>,
    /// Peel order and coset transversal for the ε recursion.
    pub recursion: RecursionConfig,
}

/// Everything the determinant test produced, for reporting and auditing.
#[derive(Clone, Debug)]
pub struct C3Certificate {
    pub status: C3Status,
    /// The Klingen weight l = j/2 + 4.
    pub l: u64,
    pub zeta_arg: i64,
    pub zeta_value: Rat,
    pub zeta_ord: i64,
    pub m_list: Vec<u64>,
    /// The eigen-system labels in column order (the tested lift first).
    pub system_labels: Vec<String>,
    pub alpha: NumberFieldElem,
    pub alpha_norm: Rat,
    pub alpha_ord: Option<i64>,
    pub notes: Vec<String>,
}

/// Run the determinant test for the weight pair (k, j) on the eigenform f
/// of weight 2k + j − 2 at the degree-one prime 𝔭.
pub fn c3_certificate(
    k: u64,
    j: u64,
    f: &Eigenform,
    prime: &DegreeOnePrime,
    opts: &C3Options,
) -> Result<C3Certificate> {
    if k % 2 != 0 || k < 4 {
        return Err(EpsilonError::Domain(format!("k = {k} must be even and ≥ 4")));
    }
    if j % 4 != 0 || j == 0 {
        return Err(EpsilonError::Domain(format!(
            "j = {j} must be a positive multiple of 4"
        )));
    }
    if f.weight() != 2 * k + j - 2 {
        return Err(EpsilonError::Domain(format!(
            "form has weight {}, the pair (k, j) = ({k}, {j}) needs {}",
            f.weight(),
            2 * k + j - 2
        )));
    }
    if !Arc::ptr_eq(prime.field(), f.field()) {
        return Err(EpsilonError::Domain(
            "the prime lives in a different Hecke field than the form".into(),
        ));
    }
    let kp = k + j / 2;
    let l = j / 2 + 4;
    let mut notes = Vec::new();

    // ζ(9 − 2l) and its p-order.
    let zeta_arg = 9 - 2 * (l as i64);
    let zeta_value = zeta_negative(zeta_arg)?;
    let zeta_ord = rat_ord_p(&zeta_value, prime.p());

    // The ambient eigen-systems of weight k'.
    let (systems, lift_index) = ambient_systems(kp, l, f, opts)?;
    let d = systems.len();
    let system_labels: Vec<String> = {
        let mut labels: Vec<String> = systems.iter().map(|s| s.describe()).collect();
        labels.swap(0, lift_index);
        labels
    };

    let m_list = match &opts.m_list {
        Some(list) => {
            if list.len() != d {
                return Err(EpsilonError::Domain(format!(
                    "m_list has {} entries, the space needs {d}",
                    list.len()
                )));
            }
            list.clone()
        }
        None => (1..=d as u64).collect(),
    };

    // ε(m_i) on the default matrices for (k', l).
    let params = EpsilonParams::with_default_matrices(kp, l)?;
    let a0 = params.a0().clone();
    let mut e = Vec::with_capacity(d);
    for &m in &m_list {
        e.push(epsilon_m_with(m, &a0, &params, opts.recursion)?);
    }

    // Eigenvalue columns from every system except the tested lift.
    let mut lambda = vec![Vec::with_capacity(d - 1); d];
    for (idx, system) in systems.iter().enumerate() {
        if idx == lift_index {
            continue;
        }
        for (i, &m) in m_list.iter().enumerate() {
            lambda[i].push(embed(system.lambda(m)?, f.field())?);
        }
    }

    let alpha = alpha_det(&e, &lambda)?;
    let alpha_norm = nf_norm(&alpha);
    if alpha.is_zero() {
        notes.push("determinant vanished for this m_list; try another".into());
        return Ok(C3Certificate {
            status: C3Status::Inconclusive("alpha = 0".into()),
            l,
            zeta_arg,
            zeta_value,
            zeta_ord,
            m_list,
            system_labels,
            alpha,
            alpha_norm,
            alpha_ord: None,
            notes,
        });
    }
    let alpha_ord = nf_ord(&alpha, prime)?;

    let status = if zeta_ord != 0 {
        C3Status::Inconclusive(format!(
            "ord_p zeta({zeta_arg}) = {zeta_ord} at p = {}",
            prime.p()
        ))
    } else if alpha_ord != 0 {
        C3Status::Inconclusive(format!("ord_p alpha = {alpha_ord} at p = {}", prime.p()))
    } else {
        C3Status::Verified
    };
    if status == C3Status::Verified {
        notes.push(format!(
            "alpha norm {} is prime to {}",
            rat_to_string(&alpha_norm),
            prime.p()
        ));
    }
    Ok(C3Certificate {
        status,
        l,
        zeta_arg,
        zeta_value,
        zeta_ord,
        m_list,
        system_labels,
        alpha,
        alpha_norm,
        alpha_ord: Some(alpha_ord),
        notes,
    })
}

/// The Hecke eigen-systems spanning the ambient degree-two space of weight
/// k', together with the index of the lift of f among them.
///
/// For k' > l the ambient space is cuspidal and this implementation requires
/// it to be spanned by Saito–Kurokawa lifts (true through weight 18); for
/// k' = l the Eisenstein systems join and the full space must be spanned by
/// the lifts together with the Klingen and Siegel Eisenstein series.
fn ambient_systems(
    kp: u64,
    l: u64,
    f: &Eigenform,
    opts: &C3Options,
) -> Result<(Vec<Degree2Form>, usize)> {
    let d_target = if kp > l {
        dim_cusp_forms_degree2(kp)?
    } else {
        dim_modular_forms_degree2(kp)?
    } as usize;

    let max_m = opts.m_list.iter().flatten().copied().max().unwrap_or(8);
    let prec = opts.qexp_prec.unwrap_or_else(|| (max_m as usize + 4).max(8));

    let inputs = eigenforms(2 * kp - 2, prec)?;
    let mut systems: Vec<Degree2Form> = Vec::new();
    let mut lift_index = None;
    for g in &inputs {
        if g.label() == f.label() {
            lift_index = Some(systems.len());
        }
        systems.push(Degree2Form::saito_kurokawa(kp, g.clone())?);
    }
    let lift_index = lift_index.ok_or_else(|| {
        EpsilonError::Domain(format!(
            "form {} is not among the weight-{} eigenforms",
            f.label().as_str(),
            2 * kp - 2
        ))
    })?;

    if kp == l {
        for h in &eigenforms(kp, prec)? {
            systems.push(Degree2Form::klingen(kp, h.clone())?);
        }
        systems.push(Degree2Form::SiegelEisenstein { k: kp });
    }

    if systems.len() != d_target {
        return Err(EpsilonError::Domain(format!(
            "weight-{kp} space has dimension {d_target} but only {} lift/Eisenstein \
             systems are available; the determinant test does not apply",
            systems.len()
        )));
    }
    Ok((systems, lift_index))
}

/// Move an eigenvalue into the Hecke field of the tested form; rationals
/// embed, anything else must already live there.
fn embed(x: NumberFieldElem, field: &Arc<NumberField>) -> Result<NumberFieldElem> {
    if Arc::ptr_eq(x.field(), field) {
        return Ok(x);
    }
    match x.to_rat() {
        Some(r) => Ok(NumberFieldElem::from_rat(field, &r)),
        None => Err(EpsilonError::Domain(
            "eigen-system lives in an incompatible Hecke field".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rational::rat;

    #[test]
    fn alpha_det_on_rationals_is_the_plain_determinant() {
        // [[2, 5], [3, 7]] → 2·7 − 5·3 = −1.
        let field = NumberField::rationals();
        let e = vec![rat(2, 1), rat(3, 1)];
        let lambda = vec![
            vec![NumberFieldElem::from_rat(&field, &rat(5, 1))],
            vec![NumberFieldElem::from_rat(&field, &rat(7, 1))],
        ];
        let alpha = alpha_det(&e, &lambda).unwrap();
        assert_eq!(alpha.to_rat().unwrap(), rat(-1, 1));
    }

    #[test]
    fn alpha_det_validates_shapes() {
        let field = NumberField::rationals();
        let e = vec![rat(1, 1), rat(2, 1)];
        assert!(alpha_det(&e, &[]).is_err());
        let ragged = vec![vec![], vec![NumberFieldElem::from_rat(&field, &rat(1, 1))]];
        assert!(alpha_det(&e, &ragged).is_err());
        assert!(alpha_det(&[], &[]).is_err());
    }

    #[test]
    fn one_dimensional_alpha_is_the_epsilon_value_itself() {
        let alpha = alpha_det(&[rat(22, 7)], &[vec![]]).unwrap();
        assert_eq!(alpha.to_rat().unwrap(), rat(22, 7));
    }

    #[test]
    fn quadratic_field_determinant_mixes_columns_correctly() {
        // Field Q(√5); matrix [[1, θ], [2, 3]] → det = 3 − 2θ.
        let field = NumberField::quadratic(&rat(0, 1), &rat(5, 1)).unwrap();
        let theta = NumberFieldElem::theta(&field);
        let e = vec![rat(1, 1), rat(2, 1)];
        let lambda = vec![
            vec![theta.clone()],
            vec![NumberFieldElem::from_rat(&field, &rat(3, 1))],
        ];
        let alpha = alpha_det(&e, &lambda).unwrap();
        let expected = NumberFieldElem::from_rat(&field, &rat(3, 1))
            .sub(&theta.mul_rat(&rat(2, 1)));
        assert_eq!(alpha, expected);
        // Norm of 3 − 2θ over Q(√5): (3 − 2√5)(3 + 2√5) = 9 − 20 = −11.
        assert_eq!(nf_norm(&alpha), rat(-11, 1));
    }
}
