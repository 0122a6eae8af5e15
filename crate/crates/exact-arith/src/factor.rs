//! Integer factorization for norm scans: trial division to 10^6, then
//! Brent–Pollard rho. Composites that survive both are reported as explicit
//! unfactored cofactors instead of aborting the scan.

use crate::rational::{Int, int_ord_p};
use num::{BigUint, Integer, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Sign of the input (−1, 0, or 1).
    pub sign: i32,
    /// (prime, exponent) pairs, primes strictly increasing.
    pub primes: Vec<(Int, u32)>,
    /// Composite cofactors that resisted factoring (usually empty).
    pub unfactored: Vec<Int>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }
}

const TRIAL_BOUND: u64 = 1_000_000;
/// Rho restart budget per composite; beyond this the cofactor is reported.
const RHO_ATTEMPTS: u64 = 24;

/// Factor `n` by trial division then Brent–Pollard rho.
pub fn factorize(n: &Int) -> Factorization {
    let sign = if n.is_zero() {
        0
    } else if n.is_negative() {
        -1
    } else {
        1
    };
    let mut out = Factorization { sign, primes: vec![], unfactored: vec![] };
    if n.is_zero() {
        return out;
    }
    let mut m: BigUint = n.magnitude().clone();
    let one = BigUint::one();
    if m == one {
        return out;
    }
    let push = |p: BigUint, e: u32, primes: &mut Vec<(Int, u32)>| {
        primes.push((Int::from(p), e));
    };
    // Trial division.
    let mut d: u64 = 2;
    while d <= TRIAL_BOUND {
        let dd = BigUint::from(d);
        if &dd * &dd > m {
            break;
        }
        if (&m % &dd).is_zero() {
            let mut e = 0;
            while (&m % &dd).is_zero() {
                m /= &dd;
                e += 1;
            }
            push(dd, e, &mut out.primes);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m == one {
        return out;
    }
    // What remains has no factor ≤ 10^6; split recursively with rho.
    let mut stack = vec![m];
    let mut found: Vec<BigUint> = vec![];
    while let Some(c) = stack.pop() {
        if is_probable_prime(&c) {
            found.push(c);
            continue;
        }
        match rho_split(&c) {
            Some(f) => {
                let q = &c / &f;
                stack.push(f);
                stack.push(q);
            }
            None => out.unfactored.push(Int::from(c)),
        }
    }
    found.sort();
    let mut i = 0;
    while i < found.len() {
        let mut j = i;
        while j < found.len() && found[j] == found[i] {
            j += 1;
        }
        push(found[i].clone(), (j - i) as u32, &mut out.primes);
        i = j;
    }
    out.primes.sort_by(|a, b| a.0.cmp(&b.0));
    out.unfactored.sort();
    out
}

/// Miller–Rabin with the deterministic witness set for n < 3.3·10^24, used
/// probabilistically beyond that range.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u8);
    if n < &two {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - BigUint::one();
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_int(n: &Int) -> bool {
    !n.is_negative() && is_probable_prime(n.magnitude())
}

/// One Brent-cycle rho split attempt family with deterministic parameters.
fn rho_split(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1..=RHO_ATTEMPTS {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u8);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut count = 0u64;
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle collapsed; retry with next c
            }
            d = diff.gcd(n);
            count += 1;
            if count > 50_000_000 {
                break;
            }
        }
        if d != one && &d != n {
            return Some(d);
        }
    }
    None
}

/// Squarefree kernel of a nonzero integer: d with n = d·(square), d squarefree.
/// Errors if a composite cofactor cannot be certified.
pub fn squarefree_kernel(n: &Int) -> crate::Result<Int> {
    let f = factorize(n);
    if !f.is_complete() {
        return Err(crate::ArithError::IncompleteFactorization(f.unfactored[0].clone()));
    }
    let mut d = Int::from(f.sign);
    for (p, e) in &f.primes {
        if e % 2 == 1 {
            d *= p;
        }
    }
    Ok(d)
}

/// Convenience: exponent of `p` in `n!`-free contexts (re-export of ord).
pub fn ord_in(n: &Int, p: &Int) -> u32 {
    int_ord_p(n, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn small_and_medium_factorizations() {
        let f = factorize(&int(-720));
        assert_eq!(f.sign, -1);
        assert_eq!(f.primes, vec![(int(2), 4), (int(3), 2), (int(5), 1)]);
        assert!(f.is_complete());

        // 67021 and 6701 are prime (Table-1 scan hinges on this).
        assert!(is_prime_int(&int(67021)));
        assert!(is_prime_int(&int(6701)));
        assert!(!is_prime_int(&int(67023)));
    }

    #[test]
    fn rho_splits_semiprime_beyond_trial_range() {
        // 1000003 · 1000033 are both prime and above the trial bound.
        let n = int(1000003) * int(1000033);
        let f = factorize(&n);
        assert!(f.is_complete());
        assert_eq!(f.primes, vec![(int(1000003), 1), (int(1000033), 1)]);
    }

    #[test]
    fn squarefree_kernels() {
        assert_eq!(squarefree_kernel(&int(-4)).unwrap(), int(-1));
        assert_eq!(squarefree_kernel(&int(48)).unwrap(), int(3));
        assert_eq!(squarefree_kernel(&int(51349)).unwrap(), int(51349));
    }
}
