//! The coefficient space V_w of degree-w binary forms, the substitution
//! action, and the period-polynomial subspace W_w with its parity split.
//!
//! Coordinates: index n ∈ {0, …, w} ↔ monomial X^{w−n} Y^n.

use crate::{PeriodError, Result};
use exact_arith::rational::binomial;
use exact_arith::{Int, QMat, Rat};
use num::{One, Zero};

/// Matrix of P ↦ P|γ = P(aX + bY, cX + dY) on V_w in monomial coordinates.
///
/// Column n holds the coefficients of (aX+bY)^{w−n}(cX+dY)^n. This is a right
/// action: A_{γδ} = A_δ·A_γ.
pub fn action_matrix(g: &[[i64; 2]; 2], w: usize) -> QMat {
    let [a, b] = [Int::from(g[0][0]), Int::from(g[0][1])];
    let [c, d] = [Int::from(g[1][0]), Int::from(g[1][1])];
    let mut m = QMat::zeros(w + 1, w + 1);
    for n in 0..=w {
        // (aX+bY)^{w−n} = Σ_i C(w−n,i) a^{w−n−i} b^i X^{w−n−i} Y^i
        // (cX+dY)^n    = Σ_j C(n,j)   c^{n−j}   d^j X^{n−j}   Y^j
        for i in 0..=(w - n) {
            let ca = binomial((w - n) as u64, i as u64)
                * pow_int(&a, w - n - i)
                * pow_int(&b, i);
            if ca.is_zero() {
                continue;
            }
            for j in 0..=n {
                let cb = binomial(n as u64, j as u64) * pow_int(&c, n - j) * pow_int(&d, j);
                if cb.is_zero() {
                    continue;
                }
                let row = i + j; // exponent of Y in the product
                let cur = m.at(row, n).clone() + Rat::from_integer(&ca * &cb);
                m.set(row, n, cur);
            }
        }
    }
    m
}

fn pow_int(b: &Int, e: usize) -> Int {
    exact_arith::rational::int_pow(b, e as u32)
}

pub const MAT_S: [[i64; 2]; 2] = [[0, -1], [1, 0]];
pub const MAT_U: [[i64; 2]; 2] = [[1, -1], [1, 0]];
pub const MAT_T: [[i64; 2]; 2] = [[1, 1], [0, 1]];

/// W_w = ker(1 + S) ∩ ker(1 + U + U²) with its parity eigenspaces.
///
/// `plus` collects the (X, Y) ↦ (X, −Y)-invariant vectors (even Y-exponents),
/// `minus` the anti-invariant ones. dim plus = dim S_{w+2} + 1 (the extra
/// line is the Eisenstein/coboundary direction), dim minus = dim S_{w+2}.
pub struct PeriodSpace {
    w: usize,
    plus: Vec<Vec<Rat>>,
    minus: Vec<Vec<Rat>>,
}

impl PeriodSpace {
    pub fn new(w: usize) -> Result<PeriodSpace> {
        if w % 2 != 0 {
            return Err(PeriodError::Domain(format!(
                "period spaces require even w = weight − 2; got w = {w}"
            )));
        }
        let id = QMat::identity(w + 1);
        let s = action_matrix(&MAT_S, w);
        let u = action_matrix(&MAT_U, w);
        let rel_s = s.add(&id);
        let rel_u = u.mul(&u).add(&u).add(&id);
        let parity: Vec<Rat> =
            (0..=w).map(|n| if n % 2 == 0 { Rat::one() } else { -Rat::one() }).collect();

        let stack = |extra_sign: i64| -> QMat {
            // Rows of (1+S), rows of (1+U+U²), rows of (P ∓ 1).
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for i in 0..=w {
                rows.push(rel_s.row(i).to_vec());
            }
            for i in 0..=w {
                rows.push(rel_u.row(i).to_vec());
            }
            for i in 0..=w {
                let mut r = vec![Rat::zero(); w + 1];
                r[i] = parity[i].clone() - Rat::from_integer(Int::from(extra_sign));
                rows.push(r);
            }
            QMat::from_rows(rows)
        };
        let plus = stack(1).kernel();
        let minus = stack(-1).kernel();
        Ok(PeriodSpace { w, plus, minus })
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn plus_basis(&self) -> &[Vec<Rat>] {
        &self.plus
    }

    pub fn minus_basis(&self) -> &[Vec<Rat>] {
        &self.minus
    }

    /// Matrix of `op` restricted to the span of `basis`, in that basis.
    /// Errors if the span is not invariant under `op`.
    pub fn restrict_to_span(op: &QMat, basis: &[Vec<Rat>]) -> Result<QMat> {
        let d = basis.len();
        let b = QMat::from_rows(basis.to_vec()).transpose();
        let mut out = QMat::zeros(d, d);
        for (j, v) in basis.iter().enumerate() {
            let image = op.mul_vec(v);
            let x = b
                .solve(&image)
                .ok_or_else(|| PeriodError::Domain("operator does not preserve the span".into()))?;
            for (i, xi) in x.into_iter().enumerate() {
                out.set(i, j, xi);
            }
        }
        Ok(out)
    }

    /// Does v satisfy both defining relations of W_w?
    pub fn contains(&self, v: &[Rat]) -> bool {
        let w = self.w;
        let id = QMat::identity(w + 1);
        let s = action_matrix(&MAT_S, w);
        let u = action_matrix(&MAT_U, w);
        let z1 = s.add(&id).mul_vec(v);
        let z2 = u.mul(&u).add(&u).add(&id).mul_vec(v);
        z1.iter().all(Rat::is_zero) && z2.iter().all(Rat::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::rational::rat;
    use qmodforms::dim_cusp_forms;

    #[test]
    fn action_is_right_composition() {
        let w = 6;
        let s = action_matrix(&MAT_S, w);
        let u = action_matrix(&MAT_U, w);
        // S·U = [[0,−1],[1,0]]·[[1,−1],[1,0]] = [[−1,0],[1,−1]]
        let a_su = action_matrix(&[[-1, 0], [1, -1]], w);
        assert_eq!(a_su, u.mul(&s), "A_(SU) = A_U · A_S (right action)");
    }

    #[test]
    fn s_and_u_have_finite_order() {
        let w = 8;
        let id = QMat::identity(w + 1);
        let s = action_matrix(&MAT_S, w);
        // S² = −1 acts trivially on even-degree forms.
        assert_eq!(s.mul(&s), id);
        let u = action_matrix(&MAT_U, w);
        assert_eq!(u.mul(&u).mul(&u), id, "U³ = 1 on V_w");
    }

    #[test]
    fn dimensions_match_cusp_spaces() {
        for w in [10usize, 14, 16, 18, 20, 24, 28] {
            let sp = PeriodSpace::new(w).unwrap();
            let d = dim_cusp_forms(w as u64 + 2);
            assert_eq!(sp.minus_basis().len(), d, "dim W_{w}^-");
            assert_eq!(sp.plus_basis().len(), d + 1, "dim W_{w}^+");
            for v in sp.plus_basis().iter().chain(sp.minus_basis()) {
                assert!(sp.contains(v));
            }
            // Parity purity of the bases.
            for v in sp.plus_basis() {
                assert!(v.iter().skip(1).step_by(2).all(Rat::is_zero));
            }
            for v in sp.minus_basis() {
                assert!(v.iter().step_by(2).all(Rat::is_zero));
            }
        }
    }

    #[test]
    fn known_w10_minus_vector() {
        // W_10^- is one-dimensional, spanned by the classical odd period
        // polynomial of the discriminant form:
        //   4X⁹Y − 25X⁷Y³ + 42X⁵Y⁵ − 25X³Y⁷ + 4XY⁹.
        let sp = PeriodSpace::new(10).unwrap();
        assert_eq!(sp.minus_basis().len(), 1);
        let b = &sp.minus_basis()[0];
        let s = &b[1];
        assert!(!s.is_zero());
        let v: Vec<Rat> = b.iter().map(|x| x / s * rat(4, 1)).collect();
        let mut want = vec![rat(0, 1); 11];
        want[1] = rat(4, 1);
        want[3] = rat(-25, 1);
        want[5] = rat(42, 1);
        want[7] = rat(-25, 1);
        want[9] = rat(4, 1);
        assert_eq!(v, want);
    }
}
