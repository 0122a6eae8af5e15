//! Certified fixed-point interval arithmetic on decimal mantissas: a value is
//! an integer interval [lo, hi] at a fixed scale, representing
//! [lo·10^(−scale), hi·10^(−scale)]. Every operation rounds outward, so any
//! real number once enclosed stays enclosed; widths certify error bounds.
//! Enough machinery for completed-L-function evaluation: π, exp, sqrt,
//! integral powers, and exact rational injection.

use crate::rational::{Int, Rat};
use crate::{ArithError, Result};
use num::{Integer, One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct BigFloat {
    lo: Int,
    hi: Int,
    scale: u32,
}

fn pow10(e: u32) -> Int {
    num::pow::pow(Int::from(10), e as usize)
}

/// Floor of a/b for BigInt (num's div truncates toward zero).
fn div_floor_int(a: &Int, b: &Int) -> Int {
    a.div_floor(b)
}

fn div_ceil_int(a: &Int, b: &Int) -> Int {
    -div_floor_int(&-a.clone(), b)
}

impl BigFloat {
    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn lo(&self) -> &Int {
        &self.lo
    }

    pub fn hi(&self) -> &Int {
        &self.hi
    }

    pub fn from_int(n: &Int, scale: u32) -> Self {
        let m = n * pow10(scale);
        BigFloat { lo: m.clone(), hi: m, scale }
    }

    pub fn from_i64(n: i64, scale: u32) -> Self {
        Self::from_int(&Int::from(n), scale)
    }

    /// Tight outward-rounded enclosure of an exact rational.
    pub fn from_rat(r: &Rat, scale: u32) -> Self {
        let num = r.numer() * pow10(scale);
        let lo = div_floor_int(&num, r.denom());
        let hi = div_ceil_int(&num, r.denom());
        BigFloat { lo, hi, scale }
    }

    /// The interval [r − eps, r + eps] with eps = 10^(−eps_digits).
    pub fn from_rat_with_eps(r: &Rat, scale: u32, eps_digits: u32) -> Self {
        let mut x = Self::from_rat(r, scale);
        assert!(eps_digits <= scale);
        let pad = pow10(scale - eps_digits);
        x.lo -= &pad;
        x.hi += &pad;
        x
    }

    pub fn zero(scale: u32) -> Self {
        BigFloat { lo: Int::zero(), hi: Int::zero(), scale }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.scale, o.scale, "mixed scales");
        debug_assert!(self.lo <= self.hi);
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        BigFloat { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, scale: self.scale }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        BigFloat { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, scale: self.scale }
    }

    pub fn neg(&self) -> Self {
        BigFloat { lo: -self.hi.clone(), hi: -self.lo.clone(), scale: self.scale }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo_raw = cands.iter().min().unwrap();
        let hi_raw = cands.iter().max().unwrap();
        let d = pow10(self.scale);
        BigFloat {
            lo: div_floor_int(lo_raw, &d),
            hi: div_ceil_int(hi_raw, &d),
            scale: self.scale,
        }
    }

    pub fn mul_int(&self, n: &Int) -> Self {
        let a = &self.lo * n;
        let b = &self.hi * n;
        if n.is_negative() {
            BigFloat { lo: b, hi: a, scale: self.scale }
        } else {
            BigFloat { lo: a, hi: b, scale: self.scale }
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o);
        if o.contains_zero() {
            return Err(ArithError::Domain(
                "interval division by an interval containing zero".into(),
            ));
        }
        let d = pow10(self.scale);
        let mut lo: Option<Int> = None;
        let mut hi: Option<Int> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let num = a * &d;
                let fl = div_floor_int(&num, b);
                let ce = div_ceil_int(&num, b);
                lo = Some(match lo {
                    None => fl.clone(),
                    Some(x) => x.min(fl.clone()),
                });
                hi = Some(match hi {
                    None => ce.clone(),
                    Some(x) => x.max(ce.clone()),
                });
            }
        }
        Ok(BigFloat { lo: lo.unwrap(), hi: hi.unwrap(), scale: self.scale })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::from_i64(1, self.scale).div(self)
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Self::from_i64(1, self.scale);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// x^e for signed e (negative via reciprocal; interval must avoid 0).
    pub fn powi_signed(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.powi(e as u32))
        } else {
            self.powi((-e) as u32).recip()
        }
    }

    /// Enclosure of √x for x ≥ 0 (lower endpoint clamped at zero).
    pub fn sqrt(&self) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(ArithError::Domain("sqrt of a negative interval".into()));
        }
        let d = pow10(self.scale);
        let lo_in = if self.lo.is_negative() { Int::zero() } else { self.lo.clone() };
        // √(m·10^−s) = √(m·10^s)·10^−s
        let lo = (&lo_in * &d).sqrt(); // floor sqrt
        let hi_base = (&self.hi * &d).sqrt();
        let hi = if &hi_base * &hi_base == &self.hi * &d { hi_base } else { hi_base + 1 };
        Ok(BigFloat { lo, hi, scale: self.scale })
    }

    /// Widen symmetrically by 10^(−digits).
    pub fn widen_pow10(&self, digits: u32) -> Self {
        assert!(digits <= self.scale);
        let pad = pow10(self.scale - digits);
        BigFloat { lo: &self.lo - &pad, hi: &self.hi + &pad, scale: self.scale }
    }

    /// Widen symmetrically by a nonnegative rational amount: [lo − b, hi + b].
    pub fn widen_by_rat(&self, b: &Rat) -> Self {
        assert!(!b.is_negative(), "widening amount must be ≥ 0");
        let pad = (b * Rat::from_integer(pow10(self.scale))).ceil().to_integer();
        BigFloat { lo: &self.lo - &pad, hi: &self.hi + &pad, scale: self.scale }
    }

    /// Width hi − lo in absolute value terms: width ≤ 10^(−digits)?
    pub fn width_le_pow10(&self, digits: u32) -> bool {
        if digits > self.scale {
            return false;
        }
        (&self.hi - &self.lo) <= pow10(self.scale - digits)
    }

    /// |x| ≤ 10^(−digits) guaranteed?
    pub fn abs_le_pow10(&self, digits: u32) -> bool {
        if digits > self.scale {
            return false;
        }
        let bound = pow10(self.scale - digits);
        self.lo >= -bound.clone() && self.hi <= bound
    }

    /// Upper bound for |x| as a rational.
    pub fn abs_hi_rat(&self) -> Rat {
        let m = self.lo.abs().max(self.hi.abs());
        Rat::new(m, pow10(self.scale))
    }

    pub fn contains_rat(&self, r: &Rat) -> bool {
        // lo·10^−s ≤ r ≤ hi·10^−s  ⟺  lo·den ≤ num·10^s ≤ hi·den (den > 0)
        let num_scaled = r.numer() * pow10(self.scale);
        &self.lo * r.denom() <= num_scaled && num_scaled <= &self.hi * r.denom()
    }

    /// Midpoint as an exact rational (for display only; not certified).
    pub fn midpoint_rat(&self) -> Rat {
        Rat::new(&self.lo + &self.hi, Int::from(2) * pow10(self.scale))
    }

    /// Decimal rendering of the midpoint to `digits` places.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let digits = digits.min(self.scale);
        let mid2 = &self.lo + &self.hi; // midpoint·2·10^scale
        let den = Int::from(2) * pow10(self.scale - digits);
        let q = div_floor_int(&mid2, &den); // midpoint·10^digits, floored
        let neg = q.is_negative();
        let qa = q.abs();
        let ten = pow10(digits);
        let (ip, fp) = (qa.div_floor(&ten), qa.mod_floor(&ten));
        let frac = format!("{:0>width$}", fp.to_string(), width = digits as usize);
        format!("{}{}.{}", if neg { "-" } else { "" }, ip, frac)
    }
}

/// Enclosure of π by Machin's formula 16·atan(1/5) − 4·atan(1/239),
/// alternating series with first-omitted-term tail bounds.
pub fn pi(scale: u32) -> BigFloat {
    fn atan_inv(x: i64, scale: u32) -> BigFloat {
        // Σ (−1)^k / ((2k+1) x^(2k+1)), exact partial sum + tail ≤ next term.
        let mut sum = Rat::zero();
        let xx = Rat::from(Int::from(x * x));
        let mut pw = Rat::new(Int::one(), Int::from(x)); // x^{-(2k+1)}
        let mut k: u64 = 0;
        let cutoff = Rat::new(Int::one(), pow10(scale + 6));
        loop {
            let term = &pw / Rat::from(Int::from(2 * k as i64 + 1));
            if term < cutoff {
                // |tail| ≤ term: widen by it.
                let enc = BigFloat::from_rat(&sum, scale);
                let pad = BigFloat::from_rat(&term, scale);
                return BigFloat {
                    lo: &enc.lo - &pad.hi - Int::one(),
                    hi: &enc.hi + &pad.hi + Int::one(),
                    scale,
                };
            }
            if k % 2 == 0 {
                sum += &term;
            } else {
                sum -= &term;
            }
            pw /= &xx;
            k += 1;
        }
    }
    let a = atan_inv(5, scale).mul_int(&Int::from(16));
    let b = atan_inv(239, scale).mul_int(&Int::from(4));
    a.sub(&b)
}

/// Enclosure of exp(x) by the Taylor series with a geometric tail bound.
/// Requires a bounded argument (|x| ≤ 40 is plenty here: arguments are
/// ±2π-sized; larger magnitudes should be assembled from integer powers).
pub fn exp(x: &BigFloat) -> BigFloat {
    let scale = x.scale;
    assert!(
        x.abs_hi_rat() <= Rat::from(Int::from(40)),
        "exp argument out of the supported range"
    );
    let one = BigFloat::from_i64(1, scale);
    let mut term = one.clone();
    let mut sum = one;
    let mut k: u32 = 1;
    loop {
        term = term.mul(x).mul(&BigFloat::from_rat(&Rat::new(Int::one(), Int::from(k)), scale));
        sum = sum.add(&term);
        // Stop when |x|/(k+1) ≤ 1/2 and the term is below the target; then
        // |tail| ≤ |term_k|·Σ 2^{−j} = |term_k|.
        let small_ratio = x.abs_hi_rat() <= Rat::new(Int::from(k as i64 + 1), Int::from(2));
        let term_bound = term.abs_hi_rat();
        if small_ratio && term_bound < Rat::new(Int::one(), pow10(scale.saturating_sub(2))) {
            let pad = BigFloat::from_rat(&term_bound, scale);
            return BigFloat {
                lo: &sum.lo - &pad.hi - Int::one(),
                hi: &sum.hi + &pad.hi + Int::one(),
                scale,
            };
        }
        k += 1;
        assert!(k < 10_000, "exp series failed to converge");
    }
}

/// ln(10)-free helper: an enclosure of e^(−2π), the building block for
/// q-expansion evaluation at the standard point.
pub fn exp_neg_two_pi(scale: u32) -> BigFloat {
    // Work at a guarded scale to absorb inversion loss.
    let s2 = scale + 10;
    let two_pi = pi(s2).mul_int(&Int::from(2));
    let e2pi = exp(&two_pi);
    let inv = e2pi.recip().expect("e^{2π} > 0");
    rescale(&inv, scale)
}

/// Change scale with outward rounding.
pub fn rescale(x: &BigFloat, scale: u32) -> BigFloat {
    if scale == x.scale {
        return x.clone();
    }
    if scale > x.scale {
        let f = pow10(scale - x.scale);
        BigFloat { lo: &x.lo * &f, hi: &x.hi * &f, scale }
    } else {
        let f = pow10(x.scale - scale);
        BigFloat { lo: div_floor_int(&x.lo, &f), hi: div_ceil_int(&x.hi, &f), scale }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use std::str::FromStr;

    fn known_rat(digits: &str) -> Rat {
        // "3.14159..." → rational
        let (ip, fp) = digits.split_once('.').unwrap();
        let den = pow10(fp.len() as u32);
        let num = Int::from_str(&format!("{}{}", ip, fp)).unwrap();
        Rat::new(num, den)
    }

    const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974945";
    const SQRT2_50: &str = "1.41421356237309504880168872420969807856967187537695";
    const E_50: &str = "2.71828182845904523536028747135266249775724709369996";

    #[test]
    fn pi_encloses_reference() {
        let p = pi(80);
        // The reference decimal is π to 60 places, so their difference is
        // below 10^{−59} once enclosure width is accounted for.
        let diff = p.sub(&BigFloat::from_rat(&known_rat(PI_60), 80));
        assert!(diff.abs_le_pow10(59));
        assert!(p.width_le_pow10(75));
    }

    #[test]
    fn sqrt_and_exp_enclose_references() {
        let two = BigFloat::from_i64(2, 70);
        let s = two.sqrt().unwrap();
        let ds = s.sub(&BigFloat::from_rat(&known_rat(SQRT2_50), 70));
        assert!(ds.abs_le_pow10(49));
        assert!(s.width_le_pow10(65));

        let one = BigFloat::from_i64(1, 70);
        let e = exp(&one);
        let de = e.sub(&BigFloat::from_rat(&known_rat(E_50), 70));
        assert!(de.abs_le_pow10(49));
    }

    #[test]
    fn interval_algebra_soundness() {
        let a = BigFloat::from_rat(&rat(1, 3), 40);
        let b = BigFloat::from_rat(&rat(-2, 7), 40);
        let c = a.mul(&b);
        assert!(c.contains_rat(&(rat(1, 3) * rat(-2, 7))));
        let d = a.sub(&b);
        assert!(d.contains_rat(&(rat(1, 3) + rat(2, 7))));
        let q = a.div(&b).unwrap();
        assert!(q.contains_rat(&(rat(1, 3) / rat(-2, 7))));
        let z = BigFloat::from_rat(&rat(0, 1), 40);
        assert!(a.div(&z).is_err());
        // powi enclosure
        let p = b.powi(3);
        assert!(p.contains_rat(&(rat(-2, 7) * rat(-2, 7) * rat(-2, 7))));
        // signed power through reciprocal
        let pn = b.powi_signed(-2).unwrap();
        assert!(pn.contains_rat(&(rat(49, 4))));
    }

    #[test]
    fn exp_neg_two_pi_value() {
        let v = exp_neg_two_pi(60);
        // Multiplicative self-consistency: v·e^{2π} must enclose 1.
        let e2pi = exp(&pi(60).mul_int(&Int::from(2)));
        assert!(v.mul(&e2pi).contains_rat(&rat(1, 1)));
        // Leading digits: e^{−2π} = 0.0018674427317…
        let d = v.sub(&BigFloat::from_rat(&known_rat("0.0018674427317"), 60));
        assert!(d.abs_le_pow10(10));
        assert!(v.width_le_pow10(55));
    }

    #[test]
    fn decimal_rendering() {
        let x = BigFloat::from_rat(&rat(-7, 4), 30);
        assert_eq!(x.to_decimal_string(4), "-1.7500");
        let y = BigFloat::from_rat(&rat(1, 3), 30);
        assert_eq!(y.to_decimal_string(6), "0.333333");
    }
}
