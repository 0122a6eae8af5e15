//! Exact dense linear algebra. `Mat<F>` works over any exact field (rationals
//! or a number field) and provides rref/kernel/solve/det/charpoly; `Mat<Rat>`
//! additionally has a pivoted-LDL positive-semidefiniteness certificate and
//! congruence transforms. Integer-lattice routines (Hermite and Smith normal
//! forms with unimodular transforms) live at the bottom; sizes here are tiny
//! (n ≤ 8), so clarity beats asymptotics throughout.

use crate::rational::{Int, Rat};
use crate::{ArithError, Result};
use num::{Integer, One, Signed, Zero};

/// Exact field operations, instance-based so elements can carry their field
/// (a number-field element knows its minimal polynomial; plain rationals
/// ignore the context).
pub trait FieldOps: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_f(&self, o: &Self) -> Self;
    fn sub_f(&self, o: &Self) -> Self;
    fn mul_f(&self, o: &Self) -> Self;
    fn neg_f(&self) -> Self;
    fn inv_f(&self) -> Result<Self>;
    fn is_zero_f(&self) -> bool;
}

impl FieldOps for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn add_f(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_f(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_f(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_f(&self) -> Self {
        -self
    }
    fn inv_f(&self) -> Result<Self> {
        if self.is_zero() {
            Err(ArithError::NotInvertible)
        } else {
            Ok(self.recip())
        }
    }
    fn is_zero_f(&self) -> bool {
        self.is_zero()
    }
}

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F> {
    nr: usize,
    nc: usize,
    a: Vec<F>,
}

/// Matrices over the rationals (the workhorse instantiation).
pub type QMat = Mat<Rat>;

impl<F: FieldOps> Mat<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let nr = rows.len();
        assert!(nr > 0, "empty matrix");
        let nc = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Mat { nr, nc, a: rows.into_iter().flatten().collect() }
    }

    pub fn zeros_like(nr: usize, nc: usize, sample: &F) -> Self {
        Mat { nr, nc, a: vec![sample.zero_like(); nr * nc] }
    }

    pub fn identity_like(n: usize, sample: &F) -> Self {
        let mut m = Self::zeros_like(n, n, sample);
        for i in 0..n {
            m.a[i * n + i] = sample.one_like();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nr
    }
    pub fn ncols(&self) -> usize {
        self.nc
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.a[i * self.nc + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.a[i * self.nc + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.a[i * self.nc..(i + 1) * self.nc]
    }

    /// Any element, used to mint zeros/ones of the right field.
    fn sample(&self) -> &F {
        &self.a[0]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros_like(self.nc, self.nr, self.sample());
        for i in 0..self.nr {
            for j in 0..self.nc {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.nr, self.nc), (o.nr, o.nc));
        Mat {
            nr: self.nr,
            nc: self.nc,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x.add_f(y)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.nr, self.nc), (o.nr, o.nc));
        Mat {
            nr: self.nr,
            nc: self.nc,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x.sub_f(y)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Mat { nr: self.nr, nc: self.nc, a: self.a.iter().map(|x| x.mul_f(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nc, o.nr, "dimension mismatch in matrix product");
        let mut out = Self::zeros_like(self.nr, o.nc, self.sample());
        for i in 0..self.nr {
            for k in 0..self.nc {
                let lik = self.at(i, k);
                if lik.is_zero_f() {
                    continue;
                }
                for j in 0..o.nc {
                    let t = out.at(i, j).add_f(&lik.mul_f(o.at(k, j)));
                    out.set(i, j, t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.nc, v.len());
        (0..self.nr)
            .map(|i| {
                let mut s = self.sample().zero_like();
                for j in 0..self.nc {
                    s = s.add_f(&self.at(i, j).mul_f(&v[j]));
                }
                s
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot-column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.nc {
            if r == m.nr {
                break;
            }
            let Some(pr) = (r..m.nr).find(|&i| !m.at(i, c).is_zero_f()) else {
                continue;
            };
            for j in 0..m.nc {
                let tmp = m.at(r, j).clone();
                m.set(r, j, m.at(pr, j).clone());
                m.set(pr, j, tmp);
            }
            let inv = m.at(r, c).inv_f().expect("nonzero pivot");
            for j in 0..m.nc {
                let v = m.at(r, j).mul_f(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.nr {
                if i != r && !m.at(i, c).is_zero_f() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.nc {
                        let v = m.at(i, j).sub_f(&f.mul_f(m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : Mv = 0}.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let zero = self.sample().zero_like();
        let one = self.sample().one_like();
        let free: Vec<usize> = (0..self.nc).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![zero.clone(); self.nc];
                v[fc] = one.clone();
                for (rr, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.at(rr, fc).neg_f();
                }
                v
            })
            .collect()
    }

    /// One solution of Mx = b, or None if inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(self.nr, b.len());
        let mut aug = Self::zeros_like(self.nr, self.nc + 1, self.sample());
        for i in 0..self.nr {
            for j in 0..self.nc {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.nc, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.nc) {
            return None; // pivot in augmented column
        }
        let zero = self.sample().zero_like();
        let mut x = vec![zero; self.nc];
        for (rr, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(rr, self.nc).clone();
        }
        Some(x)
    }

    /// Determinant by Gaussian elimination (square matrices).
    pub fn det(&self) -> F {
        assert_eq!(self.nr, self.nc);
        let mut m = self.clone();
        let n = self.nr;
        let mut det = self.sample().one_like();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.at(i, c).is_zero_f()) else {
                return self.sample().zero_like();
            };
            if pr != c {
                for j in 0..n {
                    let tmp = m.at(c, j).clone();
                    m.set(c, j, m.at(pr, j).clone());
                    m.set(pr, j, tmp);
                }
                det = det.neg_f();
            }
            det = det.mul_f(m.at(c, c));
            let inv = m.at(c, c).inv_f().expect("nonzero pivot");
            for i in c + 1..n {
                if m.at(i, c).is_zero_f() {
                    continue;
                }
                let f = m.at(i, c).mul_f(&inv);
                for j in c..n {
                    let v = m.at(i, j).sub_f(&f.mul_f(m.at(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.nr, self.nc);
        let n = self.nr;
        let mut aug = Self::zeros_like(n, 2 * n, self.sample());
        let one = self.sample().one_like();
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, one.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ArithError::NotInvertible);
        }
        let mut out = Self::zeros_like(n, n, self.sample());
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.at(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Monic characteristic polynomial, low-degree-first, by the
    /// Faddeev–LeVerrier recursion (valid in characteristic zero).
    pub fn charpoly(&self) -> Vec<F> {
        assert_eq!(self.nr, self.nc);
        let n = self.nr;
        let one = self.sample().one_like();
        let mut coeffs = vec![self.sample().zero_like(); n + 1];
        coeffs[n] = one.clone();
        let mut m = Self::identity_like(n, self.sample());
        for k in 1..=n {
            m = self.mul(&m);
            // c_{n−k} = −tr(M)/k
            let mut tr = self.sample().zero_like();
            for i in 0..n {
                tr = tr.add_f(m.at(i, i));
            }
            let mut kf = self.sample().zero_like();
            for _ in 0..k {
                kf = kf.add_f(&one);
            }
            let c = tr.mul_f(&kf.inv_f().expect("k nonzero")).neg_f();
            coeffs[n - k] = c.clone();
            for i in 0..n {
                let v = m.at(i, i).add_f(&c);
                m.set(i, i, v);
            }
        }
        coeffs
    }

    pub fn trace(&self) -> F {
        assert_eq!(self.nr, self.nc);
        let mut t = self.sample().zero_like();
        for i in 0..self.nr {
            t = t.add_f(self.at(i, i));
        }
        t
    }
}

/// Outcome of the exact pivoted LDL pass on a symmetric rational matrix.
#[derive(Debug, Clone)]
pub struct LdlCert {
    /// Diagonal pivots actually used, in elimination order.
    pub pivots: Vec<Rat>,
    /// Rank established (number of pivots) — meaningful only when `psd`.
    pub rank: usize,
    /// Whether the matrix is positive semidefinite.
    pub psd: bool,
}

impl Mat<Rat> {
    pub fn zeros(nr: usize, nc: usize) -> Self {
        Self::zeros_like(nr, nc, &Rat::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::identity_like(n, &Rat::zero())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rat::from(Int::from(x))).collect()).collect(),
        )
    }

    pub fn is_symmetric(&self) -> bool {
        self.nr == self.nc
            && (0..self.nr).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// B[U] = Uᵗ·B·U.
    pub fn congruence(&self, u: &Mat<Rat>) -> Mat<Rat> {
        u.transpose().mul(self).mul(u)
    }

    /// Exact pivoted LDL decomposition restricted to what a semidefiniteness
    /// proof needs. A symmetric matrix is psd iff the pass below consumes it
    /// with positive pivots only: a psd matrix with a zero diagonal entry has
    /// a zero row, so when no positive pivot remains the residue must vanish.
    /// Leading principal minors alone cannot certify semidefiniteness.
    pub fn ldl_pivoted(&self) -> LdlCert {
        assert!(self.is_symmetric(), "ldl requires a symmetric matrix");
        let n = self.nr;
        let mut m = self.clone();
        let mut live: Vec<usize> = (0..n).collect();
        let mut pivots = Vec::new();
        while !live.is_empty() {
            if let Some(pos) = live.iter().position(|&i| m.at(i, i).is_positive()) {
                let p = live[pos];
                let d = m.at(p, p).clone();
                let others: Vec<usize> = live.iter().copied().filter(|&i| i != p).collect();
                for &r in &others {
                    for &c in &others {
                        let v = m.at(r, c) - m.at(r, p) * m.at(c, p) / &d;
                        m.set(r, c, v);
                    }
                }
                pivots.push(d);
                live.remove(pos);
            } else {
                // No positive diagonal left: psd iff the residual block is 0.
                let clean = live
                    .iter()
                    .all(|&r| live.iter().all(|&c| m.at(r, c).is_zero()));
                return LdlCert { rank: pivots.len(), psd: clean, pivots };
            }
        }
        LdlCert { rank: pivots.len(), psd: true, pivots }
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.ldl_pivoted().psd
    }

    pub fn is_positive_definite(&self) -> bool {
        let cert = self.ldl_pivoted();
        cert.psd && cert.rank == self.nr
    }

    pub fn is_integral(&self) -> bool {
        self.a.iter().all(|x| x.is_integer())
    }

    pub fn to_int_rows(&self) -> Result<Vec<Vec<Int>>> {
        if !self.is_integral() {
            return Err(ArithError::Domain("matrix is not integral".into()));
        }
        Ok((0..self.nr)
            .map(|i| (0..self.nc).map(|j| self.at(i, j).to_integer()).collect())
            .collect())
    }

    pub fn from_int_rows(rows: &[Vec<Int>]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|x| Rat::from(x.clone())).collect()).collect(),
        )
    }
}

/// Row-style Hermite normal form of the row lattice: nonzero rows with
/// positive pivots, entries above each pivot reduced into [0, pivot).
/// Canonical for a given row lattice, hence usable as a dedup key.
pub fn hnf_rows(mut m: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    if m.is_empty() {
        return m;
    }
    let nc = m[0].len();
    let nr = m.len();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        // Euclidean reduction in column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..nr {
                if !m[i][c].is_zero()
                    && best.map_or(true, |b| m[i][c].abs() < m[b][c].abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut again = false;
            for i in r + 1..nr {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    for j in 0..nc {
                        let t = &m[i][j] - &q * &m[r][j];
                        m[i][j] = t;
                    }
                    again = !m[i][c].is_zero();
                }
            }
            if !again {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for j in 0..nc {
                m[r][j] = -m[r][j].clone();
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                for j in 0..nc {
                    let t = &m[i][j] - &q * &m[r][j];
                    m[i][j] = t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Smith normal form with transforms: returns (u, d, v) with u·a·v = d,
/// u and v unimodular, d diagonal with d₁ | d₂ | … (nonnegative).
pub fn smith_with_transforms(
    a: &[Vec<Int>],
) -> (Vec<Vec<Int>>, Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let nr = a.len();
    let nc = a[0].len();
    let mut d: Vec<Vec<Int>> = a.to_vec();
    let mut u = ident(nr);
    let mut v = ident(nc);

    fn ident(n: usize) -> Vec<Vec<Int>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect()
    }
    fn swap_rows(m: &mut [Vec<Int>], i: usize, j: usize) {
        m.swap(i, j);
    }
    fn swap_cols(m: &mut [Vec<Int>], i: usize, j: usize) {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    }
    fn addmul_row(m: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
        // hold borrows apart via split
        let srow = m[src].clone();
        for (x, s) in m[dst].iter_mut().zip(srow.iter()) {
            *x += q * s;
        }
    }
    fn addmul_col(m: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
        for row in m.iter_mut() {
            let t = &row[dst] + q * &row[src];
            row[dst] = t;
        }
    }

    let t = nr.min(nc);
    for k in 0..t {
        'outer: loop {
            // Find a nonzero pivot in the trailing block; finish if none.
            let mut found = None;
            'search: for i in k..nr {
                for j in k..nc {
                    if !d[i][j].is_zero() {
                        if found
                            .map_or(true, |(bi, bj): (usize, usize)| d[i][j].abs() < d[bi][bj].abs())
                        {
                            found = Some((i, j));
                        }
                        if d[i][j].abs().is_one() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
            }
            let Some((pi, pj)) = found else { break 'outer };
            if pi != k {
                swap_rows(&mut d, pi, k);
                swap_rows(&mut u, pi, k);
            }
            if pj != k {
                swap_cols(&mut d, pj, k);
                swap_cols(&mut v, pj, k);
            }
            // Clear column k below and row k to the right.
            let mut dirty = false;
            for i in k + 1..nr {
                if !d[i][k].is_zero() {
                    let q = -d[i][k].div_floor(&d[k][k]);
                    addmul_row(&mut d, i, k, &q);
                    addmul_row(&mut u, i, k, &q);
                    if !d[i][k].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..nc {
                if !d[k][j].is_zero() {
                    let q = -d[k][j].div_floor(&d[k][k]);
                    addmul_col(&mut d, j, k, &q);
                    addmul_col(&mut v, j, k, &q);
                    if !d[k][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Enforce divisibility d[k][k] | d[i][j] on the trailing block.
            for i in k + 1..nr {
                for j in k + 1..nc {
                    if !(&d[i][j] % &d[k][k]).is_zero() {
                        // Fold row i into row k and restart this pivot.
                        addmul_row(&mut d, k, i, &Int::one());
                        addmul_row(&mut u, k, i, &Int::one());
                        continue 'outer;
                    }
                }
            }
            break;
        }
        if d[k][k].is_negative() {
            for j in 0..nc {
                d[k][j] = -d[k][j].clone();
            }
            for j in 0..nr {
                u[k][j] = -u[k][j].clone();
            }
        }
    }
    (u, d, v)
}

/// Saturated integer basis (as rows) of the rational right kernel of `m`:
/// primitive vectors spanning ker(m) ∩ Zⁿ with the quotient torsion-free.
pub fn kernel_saturated(m: &Mat<Rat>) -> Vec<Vec<Int>> {
    let ker = m.kernel();
    if ker.is_empty() {
        return vec![];
    }
    // Clear denominators vector by vector.
    let rows: Vec<Vec<Int>> = ker
        .iter()
        .map(|v| {
            let lcm = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
            v.iter().map(|x| (x * Rat::from(lcm.clone())).to_integer()).collect()
        })
        .collect();
    // Saturate: with rows = U·D·V (Smith), the saturation of the row lattice
    // is spanned by the first rank rows of V⁻¹... equivalently of D⁻¹·U⁻¹·rows;
    // cheaper: the saturation equals the kernel lattice spanned by V's columns
    // structure. We instead use: saturated basis rows = first r rows of
    // (U·rows) each divided by its elementary divisor.
    let (u, d, _v) = smith_with_transforms(&rows);
    let r = (0..rows.len().min(rows[0].len()))
        .take_while(|&i| !d[i][i].is_zero())
        .count();
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        // (u·rows) row i equals d_i times a primitive saturated generator.
        let mut acc = vec![Int::zero(); rows[0].len()];
        for (k, row) in rows.iter().enumerate() {
            if !u[i][k].is_zero() {
                for (a, b) in acc.iter_mut().zip(row.iter()) {
                    *a += &u[i][k] * b;
                }
            }
        }
        let di = &d[i][i];
        out.push(acc.into_iter().map(|x| x / di).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn qm(rows: &[&[i64]]) -> QMat {
        QMat::from_i64_rows(rows)
    }

    #[test]
    fn det_inverse_rank() {
        let m = qm(&[&[2, 1], &[1, 2]]);
        assert_eq!(m.det(), rat(3, 1));
        let minv = m.inverse().unwrap();
        assert_eq!(m.mul(&minv), QMat::identity(2));
        assert_eq!(m.rank(), 2);
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).det(), rat(0, 1));
    }

    #[test]
    fn kernel_and_solve() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let m = qm(&[&[2, 0], &[0, 4]]);
        let x = m.solve(&[rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
        assert!(qm(&[&[1, 0], &[1, 0]]).solve(&[rat(0, 1), rat(1, 1)]).is_none());
    }

    #[test]
    fn charpoly_matches_det_and_trace() {
        let m = qm(&[&[2, 1], &[1, 2]]);
        // x² − 4x + 3
        assert_eq!(m.charpoly(), vec![rat(3, 1), rat(-4, 1), rat(1, 1)]);
        let m3 = qm(&[&[1, 2, 0], &[0, 3, 1], &[1, 0, 1]]);
        let cp = m3.charpoly();
        assert_eq!(cp[0], -m3.det()); // (−1)³·det for n = 3
        assert_eq!(cp[2], -m3.trace());
    }

    #[test]
    fn psd_certificates() {
        assert!(qm(&[&[2, 2], &[2, 2]]).is_positive_semidefinite());
        assert!(!qm(&[&[2, 2], &[2, 2]]).is_positive_definite());
        assert_eq!(qm(&[&[2, 2], &[2, 2]]).ldl_pivoted().rank, 1);
        assert!(!qm(&[&[0, 1], &[1, 0]]).is_positive_semidefinite());
        assert!(!qm(&[&[1, 0], &[0, -1]]).is_positive_semidefinite());
        assert!(qm(&[&[1, 0], &[0, 0]]).is_positive_semidefinite());
        assert!(qm(&[&[2, 1], &[1, 2]]).is_positive_definite());
        // Leading minors both zero but indefinite: the classic trap.
        assert!(!qm(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]).is_positive_semidefinite());
    }

    #[test]
    fn smith_and_hnf() {
        let a = vec![vec![int(2), int(4)], vec![int(6), int(8)]];
        let (u, d, v) = smith_with_transforms(&a);
        // u·a·v = d, diagonal, divisibility chain.
        let um = QMat::from_int_rows(&u);
        let am = QMat::from_int_rows(&a);
        let vm = QMat::from_int_rows(&v);
        let dm = QMat::from_int_rows(&d);
        assert_eq!(um.mul(&am).mul(&vm), dm);
        assert_eq!(um.det().to_integer().abs(), int(1));
        assert_eq!(vm.det().to_integer().abs(), int(1));
        assert_eq!(d[0][0], int(2));
        assert_eq!(d[1][1], int(4)); // det = 16 ⇒ 2·4, 2 | 4
        let h = hnf_rows(vec![vec![int(2), int(4)], vec![int(2), int(2)]]);
        assert_eq!(h, vec![vec![int(2), int(0)], vec![int(0), int(2)]]);
        // HNF is lattice-canonical: different bases, same form.
        let h2 = hnf_rows(vec![vec![int(4), int(6)], vec![int(2), int(2)]]);
        let h3 = hnf_rows(vec![vec![int(2), int(2)], vec![int(6), int(4)]]);
        assert_eq!(h2, h3);
    }

    #[test]
    fn saturated_kernel_is_primitive() {
        // Kernel of (1 2 3) contains (3,0,−1)/(0,3,−2) non-saturated combos;
        // saturation must produce a basis with unit elementary divisors.
        let m = qm(&[&[1, 2, 3]]);
        let k = kernel_saturated(&m);
        assert_eq!(k.len(), 2);
        let (_, d, _) = smith_with_transforms(&k);
        assert_eq!(d[0][0], int(1));
        assert_eq!(d[1][1], int(1));
        for v in &k {
            let vr: Vec<Rat> = v.iter().map(|x| Rat::from(x.clone())).collect();
            assert!(m.mul_vec(&vr)[0].is_zero());
        }
    }

    #[test]
    fn congruence_transform() {
        let b = qm(&[&[2, 2], &[2, 2]]);
        let u = qm(&[&[1, -1], &[0, 1]]);
        assert_eq!(b.congruence(&u), qm(&[&[2, 0], &[0, 0]]));
    }
}
