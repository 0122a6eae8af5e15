//! Generators and bases for level-one modular forms: E_k, Δ, dimension
//! formulas, the echelonized cusp basis, and Hecke operators on q-expansions.

use crate::qexp::QExpansion;
use crate::{QmfError, Result};
use exact_arith::rational::{int_pow, rat_int};
use exact_arith::{bernoulli, Int, QMat, Rat};
use num::{One, Zero};

/// dim M_k(SL₂(Z)) = ⌊k/12⌋ + [k mod 12 ≠ 2] for even k ≥ 0, else 0.
pub fn dim_modular_forms(k: u64) -> usize {
    if k % 2 == 1 {
        return 0;
    }
    (k / 12) as usize + usize::from(k % 12 != 2)
}

/// dim S_k(SL₂(Z)); one less than dim M_k once Eisenstein series exist.
pub fn dim_cusp_forms(k: u64) -> usize {
    dim_modular_forms(k).saturating_sub(1)
}

/// Divisor power sums σ_e(1), …, σ_e(prec−1), by a divisor sieve.
fn divisor_power_sums(e: u32, prec: usize) -> Vec<Int> {
    let mut s = vec![Int::zero(); prec];
    for d in 1..prec {
        let dp = int_pow(&Int::from(d), e);
        let mut m = d;
        while m < prec {
            s[m] += &dp;
            m += d;
        }
    }
    s
}

/// 1 + c·Σ_{m≥1} σ_{k−1}(m)qᵐ with an arbitrary integer linear coefficient.
/// The genuine Eisenstein series has c = −2k/B_k; other values of c produce
/// deliberately wrong series for regression tests of the eigenform identity.
pub(crate) fn eisenstein_like_z(k: u64, c: &Int, prec: usize) -> Vec<Int> {
    let mut a = divisor_power_sums(k as u32 - 1, prec);
    for x in a.iter_mut().skip(1) {
        *x *= c;
    }
    a[0] = Int::one();
    a
}

/// The normalized Eisenstein series E_k = 1 − (2k/B_k) Σ σ_{k−1}(m)qᵐ,
/// with rational coefficients (integral exactly when 2k/B_k is).
pub fn eisenstein(k: u64, prec: usize) -> Result<QExpansion> {
    if k < 4 || k % 2 == 1 {
        return Err(QmfError::Domain(format!(
            "E_k requires even k >= 4, got k = {k}"
        )));
    }
    let c = -rat_int(2 * k as i64) / bernoulli(k);
    let sig = divisor_power_sums(k as u32 - 1, prec);
    let mut a = vec![Rat::one(); prec.max(1)];
    for m in 1..prec {
        a[m] = &c * Rat::from_integer(sig[m].clone());
    }
    a.truncate(prec);
    Ok(QExpansion::from_rat_coeffs(&a))
}

/// Truncated product of two integer series.
pub(crate) fn mul_z(f: &[Int], g: &[Int], prec: usize) -> Vec<Int> {
    let n = prec.min(f.len()).min(g.len());
    let conv = |k: usize| -> Int {
        let mut s = Int::zero();
        for i in 0..=k {
            if !f[i].is_zero() && !g[k - i].is_zero() {
                s += &f[i] * &g[k - i];
            }
        }
        s
    };
    #[cfg(feature = "parallel")]
    {
        if n >= 128 {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(conv).collect();
        }
    }
    (0..n).map(conv).collect()
}

pub(crate) fn pow_z(f: &[Int], e: u32, prec: usize) -> Vec<Int> {
    let mut acc = vec![Int::zero(); prec.min(f.len())];
    if !acc.is_empty() {
        acc[0] = Int::one();
    }
    let mut base = f[..prec.min(f.len())].to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_z(&acc, &base, prec);
        }
        e >>= 1;
        if e > 0 {
            base = mul_z(&base, &base, prec);
        }
    }
    acc
}

/// Integer coefficients of Δ = q·Π_{n≥1}(1 − qⁿ)²⁴.
pub(crate) fn delta_z(prec: usize) -> Vec<Int> {
    if prec == 0 {
        return vec![];
    }
    // Π(1−qⁿ) to prec−1 by sparse in-place multiplications.
    let inner = prec - 1;
    let mut p = vec![Int::zero(); inner.max(1)];
    p[0] = Int::one();
    for n in 1..inner {
        for m in (n..inner).rev() {
            let t = p[m - n].clone();
            p[m] -= t;
        }
    }
    let p24 = pow_z(&p, 24, inner.max(1));
    let mut out = Vec::with_capacity(prec);
    out.push(Int::zero());
    out.extend(p24.into_iter().take(prec - 1));
    out
}

/// Δ = q − 24q² + 252q³ − 1472q⁴ + … as a rational-coefficient series.
pub fn delta(prec: usize) -> QExpansion {
    let z = delta_z(prec);
    QExpansion::from_rat_coeffs(&z.into_iter().map(Rat::from_integer).collect::<Vec<_>>())
}

/// Integer series of the monomial E₄^a E₆^b Δ^c to the given precision.
fn monomial_z(a: u32, b: u32, c: u32, prec: usize) -> Vec<Int> {
    let e4 = eisenstein_like_z(4, &Int::from(240), prec);
    let e6 = eisenstein_like_z(6, &Int::from(-504), prec);
    let mut s = delta_z(prec);
    for _ in 1..c {
        s = mul_z(&s, &delta_z(prec), prec);
    }
    if a > 0 {
        s = mul_z(&s, &pow_z(&e4, a, prec), prec);
    }
    if b > 0 {
        s = mul_z(&s, &pow_z(&e6, b, prec), prec);
    }
    s
}

/// The echelonized basis f₁, …, f_d of S_k: a(j, f_i) = δ_{ij} for j ≤ d.
///
/// Spanning set: every monomial E₄^a E₆^b Δ^c with 4a + 6b + 12c = k, c ≥ 1.
/// These span S_k (they number ≥ d and row-reduce to full rank); Gaussian
/// elimination over Q puts the coefficient rows into reduced echelon form,
/// whose pivots land exactly in columns 1..d.
pub fn cusp_basis(weight: u64, prec: usize) -> Result<Vec<QExpansion>> {
    let d = dim_cusp_forms(weight);
    if d == 0 {
        return Ok(vec![]);
    }
    if prec < d + 1 {
        return Err(QmfError::InsufficientPrecision { needed: d + 1, have: prec });
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for c in 1..=(weight / 12) as u32 {
        let rem = weight - 12 * c as u64;
        for b in 0..=(rem / 6) as u32 {
            let left = rem - 6 * b as u64;
            if left % 4 != 0 {
                continue;
            }
            let a = (left / 4) as u32;
            let series = monomial_z(a, b, c, prec);
            // Row records a(1), …, a(prec−1); a(0) = 0 for every cusp form.
            rows.push(series[1..].iter().cloned().map(Rat::from_integer).collect());
        }
    }
    let m = QMat::from_rows(rows);
    let (r, pivots) = m.rref();
    if pivots.len() != d || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(QmfError::Domain(format!(
            "echelon basis of S_{weight} did not produce pivots 1..{d}; got {pivots:?}"
        )));
    }
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let mut coeffs = Vec::with_capacity(prec);
        coeffs.push(Rat::zero());
        coeffs.extend(r.row(i).iter().cloned());
        out.push(QExpansion::from_rat_coeffs(&coeffs));
    }
    Ok(out)
}

/// T_m on a weight-k q-expansion: a(n, T_m F) = Σ_{d | gcd(m,n)} d^{k−1}·a(mn/d², F).
///
/// Requires prec(F) ≥ m·(out_prec−1) + 1, since the d = 1 term reads a(mn).
pub fn hecke_ts(f: &QExpansion, weight: u64, m: u64, out_prec: usize) -> Result<QExpansion> {
    if m == 0 {
        return Err(QmfError::Domain("T_0 is not a Hecke operator".into()));
    }
    let needed = (m as usize) * (out_prec.saturating_sub(1)) + 1;
    if f.prec() < needed {
        return Err(QmfError::InsufficientPrecision { needed, have: f.prec() });
    }
    let field = f.field().clone();
    let mut out = Vec::with_capacity(out_prec);
    for n in 0..out_prec as u64 {
        let mut s = exact_arith::NumberFieldElem::from_i64(&field, 0);
        let g = num::integer::gcd(m, n);
        let divisor_bound = if n == 0 { m } else { g };
        for d in 1..=divisor_bound {
            let divides = if n == 0 { m % d == 0 } else { g % d == 0 };
            if !divides {
                continue;
            }
            let idx = (m * n / (d * d)) as usize;
            let c = f.coeff(idx)?;
            if !c.is_zero() {
                let scale = int_pow(&Int::from(d), weight as u32 - 1);
                s = s.add(&c.mul_rat(&Rat::from_integer(scale)));
            }
        }
        out.push(s);
    }
    Ok(QExpansion::new(&field, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rational::rat;

    #[test]
    fn dimension_tables() {
        // (k, dim M_k, dim S_k) for the classical small-weight table.
        let table = [
            (0, 1, 0),
            (2, 0, 0),
            (4, 1, 0),
            (6, 1, 0),
            (8, 1, 0),
            (10, 1, 0),
            (12, 2, 1),
            (14, 1, 0),
            (16, 2, 1),
            (18, 2, 1),
            (20, 2, 1),
            (22, 2, 1),
            (24, 3, 2),
            (26, 2, 1),
            (28, 3, 2),
            (30, 3, 2),
            (32, 3, 2),
            (34, 3, 2),
            (36, 4, 3),
        ];
        for (k, dm, ds) in table {
            assert_eq!(dim_modular_forms(k), dm, "dim M_{k}");
            assert_eq!(dim_cusp_forms(k), ds, "dim S_{k}");
        }
        assert_eq!(dim_modular_forms(7), 0);
    }

    #[test]
    fn eisenstein_series_coefficients() {
        let e4 = eisenstein(4, 5).unwrap();
        let want4 = [1, 240, 2160, 6720, 17520];
        for (n, w) in want4.iter().enumerate() {
            assert_eq!(e4.coeff(n).unwrap().to_rat().unwrap(), rat(*w, 1), "E4 a({n})");
        }
        let e6 = eisenstein(6, 4).unwrap();
        let want6 = [1, -504, -16632, -122976];
        for (n, w) in want6.iter().enumerate() {
            assert_eq!(e6.coeff(n).unwrap().to_rat().unwrap(), rat(*w, 1), "E6 a({n})");
        }
        // E12 has non-integral coefficients: −2·12/B₁₂ = 65520/691.
        let e12 = eisenstein(12, 2).unwrap();
        assert_eq!(e12.coeff(1).unwrap().to_rat().unwrap(), rat(65520, 691));
        assert!(eisenstein(2, 4).is_err());
        assert!(eisenstein(5, 4).is_err());
    }

    #[test]
    fn delta_has_ramanujan_tau_coefficients() {
        let d = delta(8);
        let tau = [0, 1, -24, 252, -1472, 4830, -6048, -16744];
        for (n, t) in tau.iter().enumerate() {
            assert_eq!(d.coeff(n).unwrap().to_rat().unwrap(), rat(*t, 1), "τ({n})");
        }
    }

    #[test]
    fn delta_matches_e4_e6_discriminant_formula() {
        // Δ = (E₄³ − E₆²)/1728, an entirely different route than the product.
        let prec = 20;
        let e4 = eisenstein(4, prec).unwrap();
        let e6 = eisenstein(6, prec).unwrap();
        let d = e4
            .mul(&e4)
            .mul(&e4)
            .sub(&e6.mul(&e6))
            .scale_rat(&rat(1, 1728));
        assert_eq!(d, delta(prec));
    }

    #[test]
    fn echelon_basis_shape_and_weight_12() {
        let b = cusp_basis(12, 10).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0], delta(10)); // Δ is already echelonized
        let b30 = cusp_basis(30, 12).unwrap();
        assert_eq!(b30.len(), 2);
        for (i, f) in b30.iter().enumerate() {
            for j in 1..=2usize {
                let want = if j == i + 1 { rat(1, 1) } else { rat(0, 1) };
                assert_eq!(f.coeff(j).unwrap().to_rat().unwrap(), want, "a({j}, f_{})", i + 1);
            }
        }
        assert!(cusp_basis(2, 10).unwrap().is_empty());
    }

    #[test]
    fn hecke_operator_on_delta() {
        // T₂Δ = −24Δ and T₃Δ = 252Δ (Δ is an eigenform).
        let d = delta(41);
        let t2 = hecke_ts(&d, 12, 2, 20).unwrap();
        assert_eq!(t2, d.truncate(20).scale_rat(&rat(-24, 1)));
        let t3 = hecke_ts(&d, 12, 3, 13).unwrap();
        assert_eq!(t3, d.truncate(13).scale_rat(&rat(252, 1)));
        // Insufficient precision is an error, not a wrong answer.
        assert!(matches!(
            hecke_ts(&d, 12, 2, 40),
            Err(QmfError::InsufficientPrecision { needed: 79, have: 41 })
        ));
    }

    #[test]
    fn hecke_composition_t2_t3_equals_t6() {
        let d = delta(80);
        let t3 = hecke_ts(&d, 12, 3, 25).unwrap();
        let t2t3 = hecke_ts(&t3, 12, 2, 12).unwrap();
        let t6 = hecke_ts(&d, 12, 6, 12).unwrap();
        assert_eq!(t2t3, t6);
    }
}
