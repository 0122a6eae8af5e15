//! Hecke eigenvalues of the three degree-two eigenvalue systems that occur
//! inside M_k(Sp₄(Z)) alongside genuinely new forms: the Siegel Eisenstein
//! series, Klingen–Eisenstein series attached to a weight-k eigenform, and
//! Saito–Kurokawa lifts of weight 2k−2 eigenforms.
//!
//! Each system is determined by its spinor Euler factor L_p(X) of degree 4
//! through Σ_{δ≥0} λ(T(p^δ))·X^δ = (1 − p^{2k−4}X²) / L_p(X), and λ(T(m)) is
//! multiplicative across coprime m.

use crate::eigen::Eigenform;
use crate::{QmfError, Result};
use exact_arith::rational::int_pow;
use exact_arith::{factorize, is_prime_int, Int, NumberField, NumberFieldElem, Rat};
use std::sync::Arc;

/// λ(T(p)) of the Saito–Kurokawa lift of g ∈ S_{2k−2}:
/// a(p, g) + p^{k−1} + p^{k−2}. Requires p prime and weight(g) = 2k − 2.
pub fn sk_eigenvalue(g: &Eigenform, k: u64, p: u64) -> Result<NumberFieldElem> {
    if g.weight() != 2 * k - 2 {
        return Err(QmfError::Domain(format!(
            "Saito-Kurokawa lift into weight {k} needs an input of weight {}, got {}",
            2 * k - 2,
            g.weight()
        )));
    }
    if !is_prime_int(&Int::from(p)) {
        return Err(QmfError::Domain(format!("sk_eigenvalue requires a prime, got {p}")));
    }
    let pk = int_pow(&Int::from(p), k as u32 - 1) + int_pow(&Int::from(p), k as u32 - 2);
    Ok(g.hecke_eigenvalue(p)?.add(&NumberFieldElem::from_rat(
        g.field(),
        &Rat::from_integer(pk),
    )))
}

/// A degree-two Hecke eigen-system of weight k, presented by its spin factor.
#[derive(Clone, Debug)]
pub enum Degree2Form {
    SiegelEisenstein { k: u64 },
    KlingenEisenstein { k: u64, f: Eigenform },
    SaitoKurokawa { k: u64, g: Eigenform },
}

impl Degree2Form {
    pub fn klingen(k: u64, f: Eigenform) -> Result<Self> {
        if f.weight() != k {
            return Err(QmfError::Domain(format!(
                "Klingen-Eisenstein series of weight {k} needs an eigenform of weight {k}, got {}",
                f.weight()
            )));
        }
        Ok(Degree2Form::KlingenEisenstein { k, f })
    }

    pub fn saito_kurokawa(k: u64, g: Eigenform) -> Result<Self> {
        if g.weight() != 2 * k - 2 {
            return Err(QmfError::Domain(format!(
                "Saito-Kurokawa lift into weight {k} needs weight {}, got {}",
                2 * k - 2,
                g.weight()
            )));
        }
        Ok(Degree2Form::SaitoKurokawa { k, g })
    }

    pub fn weight(&self) -> u64 {
        match self {
            Degree2Form::SiegelEisenstein { k }
            | Degree2Form::KlingenEisenstein { k, .. }
            | Degree2Form::SaitoKurokawa { k, .. } => *k,
        }
    }

    pub fn field(&self) -> Arc<NumberField> {
        match self {
            Degree2Form::SiegelEisenstein { .. } => NumberField::rationals(),
            Degree2Form::KlingenEisenstein { f, .. } => f.field().clone(),
            Degree2Form::SaitoKurokawa { g, .. } => g.field().clone(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Degree2Form::SiegelEisenstein { k } => format!("siegel-eisenstein k={k}"),
            Degree2Form::KlingenEisenstein { k, f } => {
                format!("klingen-eisenstein k={k} [{}]", f.label().as_str())
            }
            Degree2Form::SaitoKurokawa { k, g } => {
                format!("saito-kurokawa k={k} [{}]", g.label().as_str())
            }
        }
    }

    /// The degree-4 spinor factor L_p(X), low-order first, constant term 1.
    fn spin_factor(&self, p: u64) -> Result<Vec<NumberFieldElem>> {
        let field = self.field();
        let k = self.weight();
        let c = |e: u32| -> NumberFieldElem {
            NumberFieldElem::from_rat(&field, &Rat::from_integer(int_pow(&Int::from(p), e)))
        };
        let one = NumberFieldElem::from_i64(&field, 1);
        let lin = |a: NumberFieldElem| vec![one.clone(), a.neg()]; // 1 − a·X
        let ks = k as u32;
        Ok(match self {
            Degree2Form::SiegelEisenstein { .. } => {
                // (1 − X)(1 − p^{k−1}X)(1 − p^{k−2}X)(1 − p^{2k−3}X)
                let f1 = lin(one.clone());
                let f2 = lin(c(ks - 1));
                let f3 = lin(c(ks - 2));
                let f4 = lin(c(2 * ks - 3));
                poly_mul(&poly_mul(&f1, &f2), &poly_mul(&f3, &f4))
            }
            Degree2Form::KlingenEisenstein { f, .. } => {
                // (1 − a_p X + p^{k−1}X²)(1 − a_p p^{k−2} X + p^{3k−5}X²)
                let ap = f.hecke_eigenvalue(p as u64)?.clone();
                let f1 = vec![one.clone(), ap.neg(), c(ks - 1)];
                let f2 = vec![one.clone(), ap.mul(&c(ks - 2)).neg(), c(3 * ks - 5)];
                poly_mul(&f1, &f2)
            }
            Degree2Form::SaitoKurokawa { g, .. } => {
                // (1 − p^{k−1}X)(1 − p^{k−2}X)(1 − a_p X + p^{2k−3}X²)
                let ap = g.hecke_eigenvalue(p as u64)?.clone();
                let f1 = lin(c(ks - 1));
                let f2 = lin(c(ks - 2));
                let f3 = vec![one.clone(), ap.neg(), c(2 * ks - 3)];
                poly_mul(&poly_mul(&f1, &f2), &f3)
            }
        })
    }

    /// λ(T(p^δ)): coefficient of X^δ in (1 − p^{2k−4}X²)/L_p(X).
    fn lambda_prime_power(&self, p: u64, delta: u32) -> Result<NumberFieldElem> {
        let field = self.field();
        let lp = self.spin_factor(p)?;
        let inv = series_inverse(&lp, delta as usize + 1, &field);
        let k = self.weight() as u32;
        let p2k4 = NumberFieldElem::from_rat(
            &field,
            &Rat::from_integer(int_pow(&Int::from(p), 2 * k - 4)),
        );
        let mut num = vec![NumberFieldElem::from_i64(&field, 1)];
        num.push(NumberFieldElem::from_i64(&field, 0));
        num.push(p2k4.neg());
        let prod = poly_mul_trunc(&num, &inv, delta as usize + 1);
        Ok(prod[delta as usize].clone())
    }

    /// λ(T(m)) for any m ≥ 1, by multiplicativity across coprime factors.
    pub fn lambda(&self, m: u64) -> Result<NumberFieldElem> {
        if m == 0 {
            return Err(QmfError::Domain("T_0 is not a Hecke operator".into()));
        }
        let field = self.field();
        let mut acc = NumberFieldElem::from_i64(&field, 1);
        if m == 1 {
            return Ok(acc);
        }
        let fac = factorize(&Int::from(m));
        if !fac.unfactored.is_empty() {
            return Err(QmfError::Domain(format!("could not fully factor {m}")));
        }
        for (p, e) in &fac.primes {
            let pu: u64 = p.to_string().parse().expect("prime fits u64 since m: u64");
            acc = acc.mul(&self.lambda_prime_power(pu, *e)?);
        }
        Ok(acc)
    }
}

fn poly_mul(a: &[NumberFieldElem], b: &[NumberFieldElem]) -> Vec<NumberFieldElem> {
    poly_mul_trunc(a, b, a.len() + b.len() - 1)
}

fn poly_mul_trunc(
    a: &[NumberFieldElem],
    b: &[NumberFieldElem],
    n: usize,
) -> Vec<NumberFieldElem> {
    let field = a[0].field().clone();
    let mut out = vec![NumberFieldElem::from_i64(&field, 0); n.min(a.len() + b.len() - 1)];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j < out.len() && !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// 1/f mod X^n for f with constant term 1.
fn series_inverse(f: &[NumberFieldElem], n: usize, field: &Arc<NumberField>) -> Vec<NumberFieldElem> {
    assert!(f[0] == NumberFieldElem::from_i64(field, 1), "series inverse needs unit constant term");
    let mut g = vec![NumberFieldElem::from_i64(field, 0); n];
    g[0] = NumberFieldElem::from_i64(field, 1);
    for i in 1..n {
        let mut s = NumberFieldElem::from_i64(field, 0);
        for j in 1..=i.min(f.len() - 1) {
            if !f[j].is_zero() {
                s = s.add(&f[j].mul(&g[i - j]));
            }
        }
        g[i] = s.neg();
    }
    g
}

/// dim M_k(Sp₄(ℤ)) for even k ≥ 0: the number of monomials E₄^a E₆^b χ₁₀^c χ₁₂^d
/// of weight k, i.e. solutions of 4a + 6b + 10c + 12d = k in nonnegative
/// integers (Igusa's generator theorem; the ring is free for even weight).
pub fn dim_modular_forms_degree2(k: u64) -> Result<u64> {
    igusa_count(k, false)
}

/// dim S_k(Sp₄(ℤ)) for even k: the monomials divisible by χ₁₀ or χ₁₂.
pub fn dim_cusp_forms_degree2(k: u64) -> Result<u64> {
    igusa_count(k, true)
}

fn igusa_count(k: u64, cuspidal: bool) -> Result<u64> {
    if k % 2 != 0 {
        return Err(QmfError::Domain(format!(
            "degree-two dimension formula implemented for even weight only, got {k}"
        )));
    }
    let mut count = 0;
    for d in 0..=(k / 12) {
        for c in 0..=((k - 12 * d) / 10) {
            if cuspidal && c + d == 0 {
                continue;
            }
            let rest = k - 12 * d - 10 * c;
            // 4a + 6b = rest: b must have the parity fixed by rest mod 4.
            for b in 0..=(rest / 6) {
                if (rest - 6 * b) % 4 == 0 {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
