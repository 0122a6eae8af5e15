//! Quadratic Dirichlet characters via the Kronecker symbol, the fundamental
//! discriminant attached to √q, χ-twisted Bernoulli numbers, and Dirichlet
//! L-values at integers s ≤ 0 through L(s, χ) = −B_{1−s,χ}/(1−s).

use crate::bernoulli::{bernoulli_poly, bernoulli_upto};
use crate::factor::squarefree_kernel;
use crate::rational::{Int, Rat};
use crate::{ArithError, Result};
use num::{Integer, One, Signed, Zero};

/// Kronecker symbol (a|n), extending the Jacobi symbol to all integers.
///
/// Conventions: (a|0) = 1 iff a = ±1; (a|2) follows a mod 8; (a|−1) is the
/// sign character. For a fundamental discriminant D, n ↦ (D|n) is the
/// quadratic character of conductor |D|.
pub fn kronecker(a: &Int, n: &Int) -> i32 {
    let mut a = a.clone();
    let mut n = n.clone();
    if n.is_zero() {
        return if a.magnitude().is_one() { 1 } else { 0 };
    }
    if a.is_even() && n.is_even() {
        return 0;
    }
    let mut k = 1i32;
    let mut v = 0u32;
    while n.is_even() {
        n /= 2;
        v += 1;
    }
    if v % 2 == 1 {
        // (2|a) for odd a: +1 iff a ≡ ±1 (mod 8).
        let m = a.mod_floor(&Int::from(8));
        if m == Int::from(3) || m == Int::from(5) {
            k = -k;
        }
    }
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            k = -k;
        }
    }
    // Invariant: n positive and odd.
    let four = Int::from(4);
    let eight = Int::from(8);
    let three = Int::from(3);
    let five = Int::from(5);
    loop {
        a = a.mod_floor(&n);
        if a.is_zero() {
            return if n.is_one() { k } else { 0 };
        }
        let mut v = 0u32;
        while a.is_even() {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 {
            let m = n.mod_floor(&eight);
            if m == three || m == five {
                k = -k;
            }
        }
        // Reciprocity for positive odd a, n.
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            k = -k;
        }
        std::mem::swap(&mut a, &mut n);
    }
}

/// The quadratic character χ_D(n) = (D|n) of a fundamental discriminant D.
///
/// D = 1 is the trivial character of conductor 1 (so its L-function is the
/// Riemann zeta function).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadCharacter {
    d: Int,
}

impl QuadCharacter {
    /// Wrap a value already known to be a fundamental discriminant
    /// (1, or D ≡ 1 mod 4 squarefree, or D = 4m with m ≡ 2,3 mod 4 squarefree).
    pub fn from_discriminant(d: Int) -> Result<Self> {
        let ok = if d.is_one() {
            true
        } else if d.mod_floor(&Int::from(4)).is_one() {
            squarefree_kernel(&d)? == d
        } else if (&d).mod_floor(&Int::from(4)).is_zero() {
            let m = &d / Int::from(4);
            let r = m.mod_floor(&Int::from(4));
            (r == Int::from(2) || r == Int::from(3)) && squarefree_kernel(&m)? == m
        } else {
            false
        };
        if !ok {
            return Err(ArithError::Domain(format!("{d} is not a fundamental discriminant")));
        }
        Ok(QuadCharacter { d })
    }

    pub fn discriminant(&self) -> &Int {
        &self.d
    }

    /// Conductor f = |D|.
    pub fn conductor(&self) -> Int {
        self.d.abs()
    }

    pub fn is_trivial(&self) -> bool {
        self.d.is_one()
    }

    /// χ(−1) = sign of D: −1 for odd characters (D < 0), +1 otherwise.
    pub fn sign(&self) -> i32 {
        if self.d.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn eval(&self, n: &Int) -> i32 {
        kronecker(&self.d, n)
    }
}

/// The quadratic character attached to Q(√q)/Q, as a fundamental discriminant.
///
/// q is reduced to its squarefree kernel s (numerator·denominator works since
/// √(a/b) and √(ab) generate the same field); then D = s or 4s by s mod 4.
pub fn fundamental_discriminant(q: &Rat) -> Result<QuadCharacter> {
    if q.is_zero() {
        return Err(ArithError::Domain("square root of 0 generates no quadratic field".into()));
    }
    let s = squarefree_kernel(&(q.numer() * q.denom()))?;
    let d = if s.mod_floor(&Int::from(4)).is_one() {
        s
    } else {
        s * 4
    };
    QuadCharacter::from_discriminant(d)
}

/// Twisted Bernoulli number B_{n,χ} = f^{n−1} Σ_{a=1}^{f} χ(a)·B_n(a/f).
///
/// For the trivial character this is B_n, except B_{1,1} = +1/2; that sign is
/// exactly what makes L(s,χ) = −B_{1−s,χ}/(1−s) reduce to ζ at conductor 1.
pub fn generalized_bernoulli(n: u64, chi: &QuadCharacter) -> Rat {
    let f = chi.conductor();
    let f_rat = Rat::from_integer(f.clone());
    let mut sum = Rat::zero();
    let mut a = Int::one();
    while a <= f {
        let c = chi.eval(&a);
        if c != 0 {
            let x = Rat::new(a.clone(), f.clone());
            let term = bernoulli_poly(n, &x);
            sum += if c > 0 { term } else { -term };
        }
        a += 1;
    }
    if n == 0 {
        // f^{−1} as an exact rational.
        return sum / f_rat;
    }
    let mut scale = Rat::one();
    for _ in 0..n - 1 {
        scale *= &f_rat;
    }
    scale * sum
}

/// L(s, χ) at integers s ≤ 0, via L(1−n, χ) = −B_{n,χ}/n.
///
/// Uniform in χ: for the trivial character this is the Riemann zeta function
/// (ζ(0) = −1/2, ζ(−1) = −1/12, trivial zeros at negative even s appear as
/// honest zeros of B_{n}).
#[allow(non_snake_case)]
pub fn dirichlet_L_negative(s: i64, chi: &QuadCharacter) -> Result<Rat> {
    if s > 0 {
        return Err(ArithError::Domain(format!(
            "dirichlet_L_negative is defined for s <= 0 only, got s = {s}"
        )));
    }
    let n = (1 - s) as u64;
    Ok(-generalized_bernoulli(n, chi) / Rat::from_integer(Int::from(n)))
}

/// All plain Bernoulli numbers up to B_n (re-export point for callers that
/// want the whole table rather than one value).
pub fn bernoulli_table(n: u64) -> Vec<Rat> {
    bernoulli_upto(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::bernoulli;
    use crate::rational::{int, rat};

    #[test]
    fn kronecker_base_cases() {
        // (1|n) = 1 for every n, including 0.
        for n in -12i64..=12 {
            assert_eq!(kronecker(&int(1), &int(n)), 1);
        }
        assert_eq!(kronecker(&int(-4), &int(3)), -1);
        assert_eq!(kronecker(&int(2), &int(0)), 0);
        assert_eq!(kronecker(&int(-1), &int(0)), 1);
        // (2|p) by p mod 8: 7 → +1, 3 → −1, 17 → +1, 5 → −1.
        assert_eq!(kronecker(&int(2), &int(7)), 1);
        assert_eq!(kronecker(&int(2), &int(3)), -1);
        assert_eq!(kronecker(&int(2), &int(17)), 1);
        assert_eq!(kronecker(&int(2), &int(5)), -1);
        // Squares are nonresidues never: (4|p) = 1 for odd p.
        assert_eq!(kronecker(&int(4), &int(31)), 1);
    }

    #[test]
    fn kronecker_multiplicative_both_arguments() {
        let range = -20i64..=20;
        for a in range.clone() {
            for b in range.clone() {
                for n in [3i64, 5, 7, 9, 15, -7] {
                    let lhs = kronecker(&int(a * b), &int(n));
                    let rhs = kronecker(&int(a), &int(n)) * kronecker(&int(b), &int(n));
                    assert_eq!(lhs, rhs, "({a}·{b} | {n})");
                }
            }
        }
        for m in 1i64..=15 {
            for n in 1i64..=15 {
                for a in [-11i64, -2, 3, 10] {
                    let lhs = kronecker(&int(a), &int(m * n));
                    let rhs = kronecker(&int(a), &int(m)) * kronecker(&int(a), &int(n));
                    assert_eq!(lhs, rhs, "({a} | {m}·{n})");
                }
            }
        }
    }

    #[test]
    fn kronecker_periodicity_of_fundamental_characters() {
        for d in [-4i64, -3, 5, 8, -8, -7, 13] {
            let dd = int(d);
            let period = d.unsigned_abs() as i64;
            for n in 1..=4 * period {
                assert_eq!(
                    kronecker(&dd, &int(n)),
                    kronecker(&dd, &int(n + period)),
                    "χ_{d} not {period}-periodic at n = {n}"
                );
            }
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(*fundamental_discriminant(&rat(-1, 1)).unwrap().discriminant(), int(-4));
        let triv = fundamental_discriminant(&rat(4, 1)).unwrap();
        assert!(triv.is_trivial());
        assert_eq!(*triv.discriminant(), int(1));
        assert_eq!(*fundamental_discriminant(&rat(-3, 1)).unwrap().discriminant(), int(-3));
        // Rational inputs reduce through the squarefree kernel of num·den.
        assert_eq!(*fundamental_discriminant(&rat(-1, 4)).unwrap().discriminant(), int(-4));
        assert_eq!(*fundamental_discriminant(&rat(8, 9)).unwrap().discriminant(), int(8));
        assert_eq!(*fundamental_discriminant(&rat(-20, 1)).unwrap().discriminant(), int(-20));
        assert!(fundamental_discriminant(&rat(0, 1)).is_err());
        // 12 = disc Q(√3) is fundamental; 20 = 4·5 with 5 ≡ 1 (mod 4) is not
        // (5 itself is the discriminant), nor is 9 (not squarefree).
        assert!(QuadCharacter::from_discriminant(int(12)).is_ok());
        assert!(QuadCharacter::from_discriminant(int(20)).is_err());
        assert!(QuadCharacter::from_discriminant(int(9)).is_err());
        assert!(QuadCharacter::from_discriminant(int(-20)).is_ok());
    }

    #[test]
    fn twisted_bernoulli_values() {
        let triv = QuadCharacter::from_discriminant(int(1)).unwrap();
        assert_eq!(generalized_bernoulli(2, &triv), rat(1, 6));
        assert_eq!(generalized_bernoulli(1, &triv), rat(1, 2)); // +1/2, not −1/2
        let chi4 = QuadCharacter::from_discriminant(int(-4)).unwrap();
        assert_eq!(generalized_bernoulli(1, &chi4), rat(-1, 2));
        assert_eq!(generalized_bernoulli(2, &chi4), rat(0, 1)); // parity: odd χ, even n
        assert_eq!(generalized_bernoulli(3, &chi4), rat(3, 2));
        // Trivial χ matches plain Bernoulli for all n ≥ 2.
        for n in 2..=20 {
            assert_eq!(generalized_bernoulli(n, &triv), bernoulli(n), "n = {n}");
        }
    }

    #[test]
    fn dirichlet_l_values() {
        let triv = QuadCharacter::from_discriminant(int(1)).unwrap();
        let chi4 = QuadCharacter::from_discriminant(int(-4)).unwrap();
        assert_eq!(dirichlet_L_negative(0, &chi4).unwrap(), rat(1, 2));
        assert_eq!(dirichlet_L_negative(-1, &triv).unwrap(), rat(-1, 12));
        assert_eq!(dirichlet_L_negative(0, &triv).unwrap(), rat(-1, 2));
        assert!(!dirichlet_L_negative(-4, &chi4).unwrap().is_zero());
        // Trivial zeros of ζ appear as honest zeros.
        assert_eq!(dirichlet_L_negative(-2, &triv).unwrap(), rat(0, 1));
        // Even χ (D = 5): L(−1, χ) = −B_{2,χ}/2 must be nonzero.
        let chi5 = QuadCharacter::from_discriminant(int(5)).unwrap();
        assert!(!dirichlet_L_negative(-1, &chi5).unwrap().is_zero());
        assert!(dirichlet_L_negative(1, &chi4).is_err());
    }
}
