//! Period vectors of eigenforms and exact ratios of critical L-values.
//!
//! For a weight-k eigenform f with Hecke field K, the even/odd period
//! polynomials r_f^± span the a(2)-eigenlines of T_2 inside W_w^± ⊗ K
//! (w = k − 2). We compute those eigenlines exactly and normalize the lowest
//! nonzero coordinate to 1; the resulting vectors equal
//!   v_n = c_n / ω_ε,  c_n = (−1)^n C(w,n) i^{n+1} Λ(n+1),
//! for unknowable transcendental scalars ω± depending only on (f, parity).
//! Every quantity exposed here is a combination in which the ω± cancel, so
//! the answers are honest elements of K.

use crate::hecke::hecke_matrix;
use crate::space::PeriodSpace;
use crate::{PeriodError, Result};
use exact_arith::nf::{NumberField, NumberFieldElem};
use exact_arith::rational::binomial;
use exact_arith::{Mat, QMat, Rat};
use num::{One, Zero};
use qmodforms::Eigenform;
use std::sync::Arc;

/// The ± period vectors of an eigenform in monomial coordinates on V_w,
/// each scaled so its lowest-index nonzero coordinate is 1.
pub struct PeriodVectors {
    w: usize,
    field: Arc<NumberField>,
    plus: Vec<NumberFieldElem>,
    minus: Vec<NumberFieldElem>,
}

/// Compute the period vectors of `f` from the T_2-eigenstructure of W_w^±.
pub fn eigen_periods(f: &Eigenform) -> Result<PeriodVectors> {
    let k = f.weight();
    if k < 12 {
        return Err(PeriodError::Domain(format!(
            "no cusp forms of weight {k}; period vectors undefined"
        )));
    }
    let w = (k - 2) as usize;
    let sp = PeriodSpace::new(w)?;
    let t2 = hecke_matrix(2, w)?;
    let a2 = f.hecke_eigenvalue(2)?.clone();
    let field = f.field().clone();
    let plus = eigvec_in(sp.plus_basis(), &t2, &a2, &field, w)?;
    let minus = eigvec_in(sp.minus_basis(), &t2, &a2, &field, w)?;
    Ok(PeriodVectors { w, field, plus, minus })
}

/// The unique (up to scale) vector of the a(2)-eigenline of T_2 restricted
/// to span(basis) ⊗ K, in V_w coordinates, lowest nonzero coordinate = 1.
fn eigvec_in(
    basis: &[Vec<Rat>],
    t2: &QMat,
    a2: &NumberFieldElem,
    field: &Arc<NumberField>,
    w: usize,
) -> Result<Vec<NumberFieldElem>> {
    let r = PeriodSpace::restrict_to_span(t2, basis)?;
    let d = basis.len();
    let mut rows = Vec::with_capacity(d);
    for i in 0..d {
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            let mut e = NumberFieldElem::from_rat(field, r.at(i, j));
            if i == j {
                e = e.sub(a2);
            }
            row.push(e);
        }
        rows.push(row);
    }
    let ker = Mat::from_rows(rows).kernel();
    if ker.len() != 1 {
        return Err(PeriodError::Domain(format!(
            "a(2)-eigenspace has dimension {} (expected 1); eigenvalue not simple",
            ker.len()
        )));
    }
    let x = &ker[0];
    let mut v = vec![NumberFieldElem::from_rat(field, &Rat::zero()); w + 1];
    for (j, xj) in x.iter().enumerate() {
        for (n, bn) in basis[j].iter().enumerate() {
            if !bn.is_zero() {
                v[n] = v[n].add(&xj.mul_rat(bn));
            }
        }
    }
    let piv = v
        .iter()
        .position(|e| !e.is_zero())
        .ok_or_else(|| PeriodError::Domain("zero period vector".into()))?;
    let inv = v[piv].inv()?;
    Ok(v.iter().map(|e| e.mul(&inv)).collect())
}

impl PeriodVectors {
    pub fn w(&self) -> usize {
        self.w
    }

    pub fn weight(&self) -> u64 {
        self.w as u64 + 2
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn plus(&self) -> &[NumberFieldElem] {
        &self.plus
    }

    pub fn minus(&self) -> &[NumberFieldElem] {
        &self.minus
    }

    /// Λ(m)/Λ(m′) ∈ K for critical 1 ≤ m, m′ ≤ k − 1 with m ≡ m′ (mod 2),
    /// where Λ(s) = Γ(s)(2π)^{−s} L(f, s) is the completed L-function.
    ///
    /// From v_n = c_n/ω: Λ(m)/Λ(m′) = (−1)^{(m−m′)/2} ·
    /// (v_{m−1} C(w,m′−1)) / (v_{m′−1} C(w,m−1)); the sign and binomials
    /// undo the i^{n+1} and C(w,n) factors inside c_n. The ratio is invariant
    /// under the reversal n ↔ w − n by the functional equation, so no
    /// orientation choice enters.
    pub fn critical_ratio(&self, m: u64, mp: u64) -> Result<NumberFieldElem> {
        let w = self.w as u64;
        let k = w + 2;
        for s in [m, mp] {
            if s < 1 || s > k - 1 {
                return Err(PeriodError::Domain(format!(
                    "critical point must satisfy 1 ≤ s ≤ {}, got {s}",
                    k - 1
                )));
            }
        }
        if m % 2 != mp % 2 {
            return Err(PeriodError::Domain(format!(
                "critical ratio needs m ≡ m′ (mod 2), got ({m}, {mp})"
            )));
        }
        if m == mp {
            return Ok(NumberFieldElem::from_rat(&self.field, &Rat::one()));
        }
        let v = if (m - 1) % 2 == 0 { &self.plus } else { &self.minus };
        let num = &v[(m - 1) as usize];
        let den = &v[(mp - 1) as usize];
        if den.is_zero() {
            return Err(PeriodError::Domain(format!(
                "critical value at s = {mp} vanishes; ratio undefined"
            )));
        }
        let mut r = num.mul(&den.inv()?);
        let scale = Rat::new(binomial(w, mp - 1), binomial(w, m - 1));
        r = r.mul_rat(&scale);
        if ((m as i64 - mp as i64) / 2).rem_euclid(2) == 1 {
            r = r.neg();
        }
        Ok(r)
    }
}

/// Λ(m)/Λ(m′) for the eigenform `f`; see [`PeriodVectors::critical_ratio`].
pub fn critical_ratio(f: &Eigenform, m: u64, mp: u64) -> Result<NumberFieldElem> {
    eigen_periods(f)?.critical_ratio(m, mp)
}

/// The SL₂(Z)-invariant pairing on V_w ⊗ K:
/// ⟨X^{w−i}Y^i, X^{w−j}Y^j⟩ = (−1)^i C(w,i)^{−1} if i + j = w, else 0.
///
/// Since w is even this couples coordinates of equal parity, so it vanishes
/// identically between opposite-parity vectors; the nondegenerate coupling
/// of r⁺ with r⁻ is [`period_pairing`].
pub fn haberland_pair(p: &[NumberFieldElem], q: &[NumberFieldElem]) -> Result<NumberFieldElem> {
    if p.len() != q.len() || p.is_empty() {
        return Err(PeriodError::Domain("pairing needs equal nonzero lengths".into()));
    }
    let w = p.len() - 1;
    let field = p[0].field().clone();
    let mut acc = NumberFieldElem::from_rat(&field, &Rat::zero());
    for (i, pi) in p.iter().enumerate() {
        if pi.is_zero() || q[w - i].is_zero() {
            continue;
        }
        let mut term = pi.mul(&q[w - i]);
        let mut c = Rat::new(int_one(), binomial(w as u64, i as u64));
        if i % 2 == 1 {
            c = -c;
        }
        term = term.mul_rat(&c);
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn int_one() -> exact_arith::Int {
    exact_arith::Int::from(1)
}

/// Apply a rational matrix to a vector over the Hecke field.
fn apply_q(m: &QMat, v: &[NumberFieldElem]) -> Vec<NumberFieldElem> {
    let field = v[0].field().clone();
    (0..m.nrows())
        .map(|i| {
            let mut acc = NumberFieldElem::from_rat(&field, &Rat::zero());
            for (j, vj) in v.iter().enumerate() {
                let c = m.at(i, j);
                if !c.is_zero() && !vj.is_zero() {
                    acc = acc.add(&vj.mul_rat(c));
                }
            }
            acc
        })
        .collect()
}

/// Haberland's T-twisted coupling ⟨P, Q|(T − T⁻¹)⟩, the pairing that links
/// the two parities: for an eigenform it is a nonzero multiple of the
/// Petersson norm divided by ω⁺ω⁻, hence cancels both period scalars.
pub fn period_pairing(p: &[NumberFieldElem], q: &[NumberFieldElem]) -> Result<NumberFieldElem> {
    if p.len() != q.len() || p.is_empty() {
        return Err(PeriodError::Domain("pairing needs equal nonzero lengths".into()));
    }
    let w = p.len() - 1;
    let a_t = crate::space::action_matrix(&crate::space::MAT_T, w);
    let a_tinv = crate::space::action_matrix(&[[1, -1], [0, 1]], w);
    let qt = apply_q(&a_t, q);
    let qti = apply_q(&a_tinv, q);
    let twisted: Vec<NumberFieldElem> =
        qt.iter().zip(qti.iter()).map(|(x, y)| x.sub(y)).collect();
    haberland_pair(p, &twisted)
}

/// A normalized product of two critical values of opposite parity:
///   (c_{l₁−1}/C(w,l₁−1)) · (c_{l₂−1}/C(w,l₂−1)) / ⟨r⁺, r⁻|(T − T⁻¹)⟩,
/// the exact-arithmetic avatar of Λ(l₁)Λ(l₂) divided by the product of both
/// periods. Both ω± cancel between numerator and denominator.
pub struct BoldL {
    pub value: NumberFieldElem,
    /// Normalization caveat: the value is canonical only up to a nonzero
    /// factor supported at primes below the weight (binomial and pairing
    /// constants) and a fixed power of i; 𝔭-adic orders at primes above any
    /// p > weight are therefore well-defined.
    pub note: &'static str,
}

const BOLD_L_NOTE: &str =
    "canonical up to rational factors at primes < weight; ord at p > weight is well-defined";

/// The normalized two-sided critical value product for `pv` at (l₁, l₂),
/// requiring l₁ + l₂ odd so that one index is of each parity.
pub fn bold_l_pair(pv: &PeriodVectors, l1: u64, l2: u64) -> Result<BoldL> {
    let w = pv.w as u64;
    let k = w + 2;
    for s in [l1, l2] {
        if s < 1 || s > k - 1 {
            return Err(PeriodError::Domain(format!(
                "critical point must satisfy 1 ≤ s ≤ {}, got {s}",
                k - 1
            )));
        }
    }
    if (l1 + l2) % 2 == 0 {
        return Err(PeriodError::Domain(format!(
            "bold-L pairing needs l₁ + l₂ odd, got ({l1}, {l2})"
        )));
    }
    let pairing = period_pairing(&pv.plus, &pv.minus)?;
    if pairing.is_zero() {
        return Err(PeriodError::Domain(
            "⟨r⁺, r⁻|(T − T⁻¹)⟩ vanishes; period normalization broke".into(),
        ));
    }
    let coeff = |l: u64| -> &NumberFieldElem {
        let n = (l - 1) as usize;
        if n % 2 == 0 {
            &pv.plus[n]
        } else {
            &pv.minus[n]
        }
    };
    let mut val = coeff(l1).mul(coeff(l2));
    let scale = Rat::new(int_one(), binomial(w, l1 - 1) * binomial(w, l2 - 1));
    val = val.mul_rat(&scale);
    val = val.mul(&pairing.inv()?);
    Ok(BoldL { value: val, note: BOLD_L_NOTE })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{action_matrix, MAT_S, MAT_T, MAT_U};
    use exact_arith::rational::rat;
    use qmodforms::{eigenforms, EigenLabel};

    fn lift(field: &Arc<NumberField>, v: &[Rat]) -> Vec<NumberFieldElem> {
        v.iter().map(|x| NumberFieldElem::from_rat(field, x)).collect()
    }

    #[test]
    fn pairing_is_invariant_under_generators() {
        let w = 8usize;
        let q = NumberField::rationals();
        // Two arbitrary integer vectors.
        let p1: Vec<Rat> = (0..=w).map(|i| rat((i * i + 3) as i64, 1)).collect();
        let p2: Vec<Rat> = (0..=w).map(|i| rat(2 * i as i64 - 5, 1)).collect();
        let base = haberland_pair(&lift(&q, &p1), &lift(&q, &p2)).unwrap();
        for g in [MAT_S, MAT_U, MAT_T] {
            let a = action_matrix(&g, w);
            let gp1 = a.mul_vec(&p1);
            let gp2 = a.mul_vec(&p2);
            let moved = haberland_pair(&lift(&q, &gp1), &lift(&q, &gp2)).unwrap();
            assert_eq!(moved.coords(), base.coords());
        }
    }

    #[test]
    fn weight12_period_vectors() {
        let fs = eigenforms(12, 8).unwrap();
        let pv = eigen_periods(&fs[0]).unwrap();
        assert_eq!(pv.w(), 10);
        // Odd vector is the classical one, normalized at n = 1.
        let m: Vec<Rat> = pv.minus().iter().map(|e| e.to_rat().unwrap()).collect();
        assert_eq!(m[3], rat(-25, 4));
        assert_eq!(m[5], rat(21, 2));
        // Plus vector is supported on even n, minus on odd n.
        assert!(pv.plus().iter().skip(1).step_by(2).all(|e| e.is_zero()));
        assert!(pv.minus().iter().step_by(2).all(|e| e.is_zero()));
    }

    #[test]
    fn pairing_parity_structure() {
        // The invariant pairing couples i with w − i (equal parity for even
        // w), so it is identically zero across parities; the T-twisted
        // pairing is the one that couples r⁺ with r⁻, and must not vanish.
        for weight in [12u64, 16, 30] {
            let fs = eigenforms(weight, 8).unwrap();
            let pv = eigen_periods(&fs[0]).unwrap();
            let pm = haberland_pair(pv.plus(), pv.minus()).unwrap();
            assert!(pm.is_zero(), "⟨r⁺,r⁻⟩ = 0 structurally at weight {weight}");
            let tw = period_pairing(pv.plus(), pv.minus()).unwrap();
            assert!(!tw.is_zero(), "⟨r⁺,r⁻|(T−T⁻¹)⟩ ≠ 0 at weight {weight}");
        }
    }

    #[test]
    fn ratio_domain_checks() {
        let fs = eigenforms(12, 8).unwrap();
        let pv = eigen_periods(&fs[0]).unwrap();
        assert!(pv.critical_ratio(3, 4).is_err(), "parity mismatch");
        assert!(pv.critical_ratio(0, 2).is_err(), "below range");
        assert!(pv.critical_ratio(12, 2).is_err(), "above range");
        let one = pv.critical_ratio(7, 7).unwrap();
        assert!(one.is_rational() && one.to_rat().unwrap() == rat(1, 1));
    }

    #[test]
    fn ratio_multiplicativity_and_inversion() {
        let fs = eigenforms(18, 8).unwrap();
        let pv = eigen_periods(&fs[0]).unwrap();
        let r_95 = pv.critical_ratio(9, 5).unwrap();
        let r_53 = pv.critical_ratio(5, 3).unwrap();
        let r_93 = pv.critical_ratio(9, 3).unwrap();
        assert_eq!(r_95.mul(&r_53).coords(), r_93.coords());
        let r_35 = pv.critical_ratio(3, 5).unwrap();
        assert_eq!(r_53.mul(&r_35).coords(), &[rat(1, 1)]);
    }

    #[test]
    fn functional_equation_on_exact_ratios() {
        // Λ(s) = (−1)^{k/2} Λ(k − s) ⟹ Λ(m)/Λ(m′) = Λ(k−m)/Λ(k−m′).
        for weight in [12u64, 16, 30] {
            let fs = eigenforms(weight, 8).unwrap();
            let pv = eigen_periods(&fs[0]).unwrap();
            for (m, mp) in [(weight - 1, 1), (weight - 3, 3), (weight - 2, 2)] {
                let a = pv.critical_ratio(m, mp).unwrap();
                let b = pv.critical_ratio(weight - m, weight - mp).unwrap();
                assert_eq!(a.mul(&b).to_rat(), Some(rat(1, 1)), "weight {weight} ({m},{mp})");
            }
        }
    }

    #[test]
    fn galois_conjugate_ratios_match() {
        let fs = eigenforms(30, 8).unwrap();
        let plus = fs.iter().find(|f| f.label() == EigenLabel::Plus).unwrap();
        let minus = fs.iter().find(|f| f.label() == EigenLabel::Minus).unwrap();
        let rp = critical_ratio(plus, 21, 17).unwrap();
        let rm = critical_ratio(minus, 21, 17).unwrap();
        assert!(!rp.is_rational());
        assert_eq!(rp.conjugate().unwrap().coords(), rm.coords());
    }

    #[test]
    fn bold_l_requires_opposite_parity() {
        let fs = eigenforms(12, 8).unwrap();
        let pv = eigen_periods(&fs[0]).unwrap();
        assert!(bold_l_pair(&pv, 3, 5).is_err());
        assert!(bold_l_pair(&pv, 3, 6).is_ok());
    }

    #[test]
    fn bold_l_galois_equivariance() {
        let fs = eigenforms(30, 8).unwrap();
        let plus = fs.iter().find(|f| f.label() == EigenLabel::Plus).unwrap();
        let minus = fs.iter().find(|f| f.label() == EigenLabel::Minus).unwrap();
        let pv_p = eigen_periods(plus).unwrap();
        let pv_m = eigen_periods(minus).unwrap();
        let bp = bold_l_pair(&pv_p, 16, 19).unwrap();
        let bm = bold_l_pair(&pv_m, 16, 19).unwrap();
        assert_eq!(bp.value.conjugate().unwrap().coords(), bm.value.coords());
    }
}
