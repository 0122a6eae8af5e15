//! Degree-one primes 𝔭 of a number field and 𝔭-adic valuations. A degree-one
//! prime above p corresponds to a simple root r of the minimal polynomial mod
//! p; the valuation of an element is the p-adic valuation of its image under
//! θ ↦ r in Z_p, computed through Hensel lifts of r to increasing precision.

use crate::factor::is_prime_int;
use crate::nf::{NumberField, NumberFieldElem};
use crate::rational::{Int, Rat, int_ord_p};
use crate::{ArithError, Result};
use num::{Integer, One, Signed, Zero};
use std::sync::Arc;

/// A degree-one (residue degree 1, unramified) prime of a number field.
#[derive(Clone, Debug)]
pub struct DegreeOnePrime {
    field: Arc<NumberField>,
    p: Int,
    root: Int, // root of the minimal polynomial mod p, in [0, p)
}

/// Maximal Hensel precision exponent before giving up on a valuation.
const MAX_HENSEL_E: u32 = 4096;

fn modpow(base: &Int, exp: &Int, m: &Int) -> Int {
    let mut b = base.mod_floor(m);
    let mut e = exp.clone();
    let mut acc = Int::one();
    while e.is_positive() {
        if e.is_odd() {
            acc = (&acc * &b).mod_floor(m);
        }
        b = (&b * &b).mod_floor(m);
        e >>= 1;
    }
    acc
}

fn modinv(a: &Int, m: &Int) -> Result<Int> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(ArithError::NotInvertible);
    }
    Ok(e.x.mod_floor(m))
}

/// Square root mod an odd prime by Tonelli–Shanks; None for non-residues.
fn sqrt_mod_p(a: &Int, p: &Int) -> Option<Int> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(Int::zero());
    }
    let one = Int::one();
    let pm1 = p - &one;
    let half = &pm1 / Int::from(2);
    if modpow(&a, &half, p) != one {
        return None;
    }
    // p ≡ 3 (mod 4): direct exponent.
    if (p % Int::from(4)) == Int::from(3) {
        return Some(modpow(&a, &((p + &one) / Int::from(4)), p));
    }
    // Tonelli–Shanks.
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    // Find a quadratic non-residue z.
    let mut z = Int::from(2);
    while modpow(&z, &half, p) == one {
        z += 1;
    }
    let mut m = s;
    let mut c = modpow(&z, &q, p);
    let mut t = modpow(&a, &q, p);
    let mut r = modpow(&a, &((&q + &one) / Int::from(2)), p);
    while !t.is_one() {
        // Find least i with t^(2^i) = 1.
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2).mod_floor(p);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b).mod_floor(p);
        }
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    Some(r)
}

/// The degree-one primes of `field` above the rational prime p, sorted by
/// root. Errors: non-prime p, ramification (p dividing the discriminant of
/// the minimal polynomial), p in a coefficient denominator, or field degree
/// beyond the supported root-finding range.
pub fn degree_one_primes_above(
    field: &Arc<NumberField>,
    p: &Int,
) -> Result<Vec<DegreeOnePrime>> {
    if !is_prime_int(p) {
        return Err(ArithError::Domain(format!("{p} is not prime")));
    }
    let mp = field.minpoly();
    for c in mp.iter() {
        if int_ord_p(c.denom(), p) > 0 {
            return Err(ArithError::Domain(
                "minimal polynomial has p in a denominator".into(),
            ));
        }
    }
    match field.degree() {
        1 => {
            // Q[x]/(x − a): the unique prime above p, root = a mod p.
            let a = -mp[0].clone();
            let root = rat_mod(&a, p)?;
            Ok(vec![DegreeOnePrime { field: field.clone(), p: p.clone(), root }])
        }
        2 => {
            // x² + bx + c; disc = b² − 4c. Simple roots mod p require p ∤ disc.
            let b = &mp[1];
            let c = &mp[0];
            let disc = b * b - Rat::from(Int::from(4)) * c;
            if int_ord_p(disc.numer(), p) > 0 {
                return Err(ArithError::RamifiedPrime { p: p.clone() });
            }
            let mut roots: Vec<Int> = Vec::new();
            if p == &Int::from(2) {
                for r in [Int::zero(), Int::one()] {
                    let val = &r * &r + rat_mod(b, p)? * &r + rat_mod(c, p)?;
                    if val.mod_floor(p).is_zero() {
                        roots.push(r);
                    }
                }
            } else {
                let d = rat_mod(&disc, p)?;
                if let Some(s) = sqrt_mod_p(&d, p) {
                    let inv2 = modinv(&Int::from(2), p)?;
                    let nb = rat_mod(&-b.clone(), p)?;
                    roots.push(((&nb + &s) * &inv2).mod_floor(p));
                    roots.push(((&nb - &s) * &inv2).mod_floor(p));
                }
            }
            roots.sort();
            roots.dedup();
            Ok(roots
                .into_iter()
                .map(|root| DegreeOnePrime { field: field.clone(), p: p.clone(), root })
                .collect())
        }
        d => Err(ArithError::RootFindingUnsupported { degree: d, p: p.clone() }),
    }
}

/// r mod p for a rational with p-free denominator.
fn rat_mod(r: &Rat, p: &Int) -> Result<Int> {
    if int_ord_p(r.denom(), p) > 0 {
        return Err(ArithError::Domain("denominator divisible by p".into()));
    }
    let dinv = modinv(&r.denom().mod_floor(p), p)?;
    Ok((r.numer().mod_floor(p) * dinv).mod_floor(p))
}

impl DegreeOnePrime {
    pub fn p(&self) -> &Int {
        &self.p
    }

    pub fn root(&self) -> &Int {
        &self.root
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Hensel lift of the root to a solution of the minimal polynomial
    /// mod p^e (Newton iteration; the derivative is a unit mod p).
    pub fn lift_root(&self, e: u32) -> Result<Int> {
        let mp = self.field.minpoly();
        if self.field.degree() == 1 {
            let m = pow_int(&self.p, e);
            let a = -mp[0].clone();
            return rat_mod_pk(&a, &self.p, &m);
        }
        let mut cur_e = 1u32;
        let mut r = self.root.clone();
        while cur_e < e {
            cur_e = (cur_e * 2).min(e); // Newton doubles the precision per step
            let m = pow_int(&self.p, cur_e);
            let f = eval_poly_mod(mp, &r, &self.p, &m)?;
            let fp = eval_poly_deriv_mod(mp, &r, &self.p, &m)?;
            let fp_inv = modinv(&fp, &m)?;
            r = (&r - f * fp_inv).mod_floor(&m);
        }
        Ok(r)
    }

    /// Image of a p-integral element in Z/p (reduction mod 𝔭).
    pub fn residue(&self, x: &NumberFieldElem) -> Result<Int> {
        assert!(
            x.field().minpoly() == self.field.minpoly(),
            "element from a different field"
        );
        let mut acc = Int::zero();
        let mut pw = Int::one();
        for c in x.coords() {
            acc = (acc + rat_mod(c, &self.p)? * &pw).mod_floor(&self.p);
            pw = (&pw * &self.root).mod_floor(&self.p);
        }
        Ok(acc)
    }
}

fn pow_int(p: &Int, e: u32) -> Int {
    num::pow::pow(p.clone(), e as usize)
}

fn rat_mod_pk(r: &Rat, p: &Int, m: &Int) -> Result<Int> {
    if int_ord_p(r.denom(), p) > 0 {
        return Err(ArithError::Domain("denominator divisible by p".into()));
    }
    let dinv = modinv(&r.denom().mod_floor(m), m)?;
    Ok((r.numer().mod_floor(m) * dinv).mod_floor(m))
}

fn eval_poly_mod(poly: &[Rat], x: &Int, p: &Int, m: &Int) -> Result<Int> {
    let mut acc = Int::zero();
    for c in poly.iter().rev() {
        acc = (acc * x + rat_mod_pk(c, p, m)?).mod_floor(m);
    }
    Ok(acc)
}

fn eval_poly_deriv_mod(poly: &[Rat], x: &Int, p: &Int, m: &Int) -> Result<Int> {
    let mut acc = Int::zero();
    for (i, c) in poly.iter().enumerate().rev().take_while(|(i, _)| *i >= 1) {
        let ci = rat_mod_pk(c, p, m)? * Int::from(i as u64);
        acc = (acc * x + ci).mod_floor(m);
    }
    Ok(acc)
}

/// 𝔭-adic valuation of a nonzero element at a degree-one prime: the p-adic
/// valuation of its embedding θ ↦ r ∈ Z_p, computed at growing Hensel
/// precision until the value is pinned down.
pub fn nf_ord(x: &NumberFieldElem, prime: &DegreeOnePrime) -> Result<i64> {
    if x.is_zero() {
        return Err(ArithError::OrdOfZero);
    }
    assert!(
        x.field().minpoly() == prime.field.minpoly(),
        "element from a different field"
    );
    let p = &prime.p;
    if x.field().degree() == 1 || x.is_rational() {
        return Ok(crate::rational::rat_ord_p(&x.coords()[0], p));
    }
    // Clear p from denominators: x = p^{−v}·y with y p-integral.
    let v = x
        .coords()
        .iter()
        .map(|c| int_ord_p(c.denom(), p) as i64)
        .max()
        .unwrap_or(0);
    let scale = Rat::from(pow_int(p, v as u32));
    let y: Vec<Rat> = x.coords().iter().map(|c| c * &scale).collect();

    let mut e: u32 = 16;
    loop {
        let m = pow_int(p, e);
        let r = prime.lift_root(e)?;
        let mut acc = Int::zero();
        let mut pw = Int::one();
        for c in &y {
            acc = (acc + rat_mod_pk(c, p, &m)? * &pw).mod_floor(&m);
            pw = (&pw * &r).mod_floor(&m);
        }
        if !acc.is_zero() {
            let ord = int_ord_p(&acc, p);
            if (ord as i64) < e as i64 {
                return Ok(ord as i64 - v);
            }
        }
        if e >= MAX_HENSEL_E {
            return Err(ArithError::HenselPrecisionExceeded { max_e: MAX_HENSEL_E });
        }
        e *= 2;
    }
}
