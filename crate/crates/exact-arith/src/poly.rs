//! Dense univariate polynomials over Q — just enough for number-field
//! arithmetic: reduction, extended gcd, derivative, resultant.
//!
//! Coefficient vectors are low-degree-first and normalized (no trailing
//! zeros); the zero polynomial is the empty vector.

use crate::rational::Rat;
use num::{One, Signed, Zero};

pub type Poly = Vec<Rat>;

pub fn normalize(mut f: Poly) -> Poly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn degree(f: &Poly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn add(f: &Poly, g: &Poly) -> Poly {
    let mut out = vec![Rat::zero(); f.len().max(g.len())];
    for (i, c) in f.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in g.iter().enumerate() {
        out[i] += c;
    }
    normalize(out)
}

pub fn neg(f: &Poly) -> Poly {
    f.iter().map(|c| -c).collect()
}

pub fn sub(f: &Poly, g: &Poly) -> Poly {
    add(f, &neg(g))
}

pub fn mul(f: &Poly, g: &Poly) -> Poly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    normalize(out)
}

pub fn scale(f: &Poly, c: &Rat) -> Poly {
    if c.is_zero() {
        return vec![];
    }
    f.iter().map(|a| a * c).collect()
}

/// Euclidean division: returns (quotient, remainder) with deg r < deg g.
pub fn div_rem(f: &Poly, g: &Poly) -> (Poly, Poly) {
    let dg = degree(g).expect("division by zero polynomial");
    let lead = g[dg].clone();
    let mut r = f.clone();
    let mut q = vec![Rat::zero(); f.len().saturating_sub(dg)];
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = &r[dr] / &lead;
        q[dr - dg] = c.clone();
        for i in 0..=dg {
            let t = &g[i] * &c;
            r[dr - dg + i] -= t;
        }
        r = normalize(r);
    }
    (normalize(q), r)
}

pub fn rem(f: &Poly, g: &Poly) -> Poly {
    div_rem(f, g).1
}

/// Monic gcd.
pub fn gcd(f: &Poly, g: &Poly) -> Poly {
    let (mut a, mut b) = (normalize(f.clone()), normalize(g.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = degree(&a) {
        let lead = a[d].clone();
        a = scale(&a, &lead.recip());
    }
    a
}

/// Extended gcd: returns (g, s, t) with s·f + t·h = g, g monic.
pub fn xgcd(f: &Poly, h: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (normalize(f.clone()), normalize(h.clone()));
    let (mut s0, mut s1) = (vec![Rat::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![Rat::one()]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(d) = degree(&r0) {
        let lead = r0[d].clone();
        let inv = lead.recip();
        r0 = scale(&r0, &inv);
        s0 = scale(&s0, &inv);
        t0 = scale(&t0, &inv);
    }
    (r0, s0, t0)
}

pub fn derivative(f: &Poly) -> Poly {
    if f.len() <= 1 {
        return vec![];
    }
    normalize(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect(),
    )
}

pub fn eval(f: &Poly, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Resultant of f and g via the Euclidean remainder sequence.
pub fn resultant(f: &Poly, g: &Poly) -> Rat {
    let (a, b) = (normalize(f.clone()), normalize(g.clone()));
    match (degree(&a), degree(&b)) {
        (None, _) | (_, None) => Rat::zero(),
        (Some(0), Some(db)) => num::pow::pow(a[0].clone(), db),
        (Some(da), Some(0)) => num::pow::pow(b[0].clone(), da),
        (Some(da), Some(db)) => {
            let r = rem(&a, &b);
            match degree(&r) {
                None => Rat::zero(),
                Some(dr) => {
                    let sign = if (da * db) % 2 == 1 { -Rat::one() } else { Rat::one() };
                    let lead = num::pow::pow(b[db].clone(), da - dr);
                    sign * lead * resultant(&b, &r)
                }
            }
        }
    }
}

/// disc(f) = (−1)^{d(d−1)/2} res(f, f′) / lc(f).
pub fn discriminant(f: &Poly) -> Rat {
    let d = degree(f).expect("discriminant of zero polynomial");
    let res = resultant(f, &derivative(f));
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rat::one() } else { Rat::one() };
    sign * res / f[d].clone()
}

pub fn is_squarefree(f: &Poly) -> bool {
    degree(&gcd(f, &derivative(f))) == Some(0)
}

pub fn abs_max_coeff(f: &Poly) -> Rat {
    f.iter().map(Signed::abs).max().unwrap_or_else(Rat::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(v: &[i64]) -> Poly {
        normalize(v.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn division_invariant() {
        let f = p(&[3, 0, -2, 7, 1]);
        let g = p(&[-1, 2, 1]);
        let (q, r) = div_rem(&f, &g);
        assert_eq!(add(&mul(&q, &g), &r), f);
        assert!(degree(&r) < degree(&g));
    }

    #[test]
    fn xgcd_bezout() {
        let f = p(&[-2, 0, 1]); // x² − 2
        let h = p(&[1, 1]); // x + 1
        let (g, s, t) = xgcd(&f, &h);
        assert_eq!(g, p(&[1]));
        assert_eq!(add(&mul(&s, &f), &mul(&t, &h)), p(&[1]));
    }

    #[test]
    fn discriminants() {
        // x² − 2: disc 8
        assert_eq!(discriminant(&p(&[-2, 0, 1])), rat_int(8));
        // x² − 8640x − 454569984: b² + 4·454569984 = 1892920320 + ... = 4·(4320² + 454569984)
        let f = p(&[-454569984, -8640, 1]);
        assert_eq!(discriminant(&f), rat_int(8640 * 8640 + 4 * 454569984));
        // = 4·51349·96² as used for Q(√51349)
        assert_eq!(discriminant(&f), rat(4 * 51349 * 96 * 96, 1));
    }

    #[test]
    fn squarefree_detection() {
        assert!(is_squarefree(&p(&[-2, 0, 1])));
        assert!(!is_squarefree(&mul(&p(&[1, 1]), &p(&[1, 1]))));
    }
}
