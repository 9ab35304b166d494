//! Modular arithmetic utilities: primality testing, search for primes
//! `l = 1 (mod n)`, integer factorization, Euler phi, modular square roots
//! and discrete logarithms.

pub mod dlog;
pub mod roots;

pub use dlog::{dlog, DlogError, DlogStrategy};
pub use roots::{root_of_unity, sqrt_mod, RootOfUnity, RootOfUnityError};

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Complete prime factorization, stored as `(prime, exponent)` pairs sorted
/// by prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn product(&self) -> u64 {
        self.pairs
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Largest prime factor, or 1 for the empty factorization.
    pub fn largest_prime(&self) -> u64 {
        self.pairs.last().map_or(1, |&(p, _)| p)
    }
}

#[derive(Debug, Error)]
pub enum PrimeSearchError {
    #[error("sampling budget exceeded while searching for a prime l = 1 mod {n}")]
    BudgetExceeded { n: u64 },
}

fn small_primes() -> &'static [u64] {
    &[
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
        181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
    ]
}

fn mr_witness(x: &BigUint, d: &BigUint, s: u32, a: &BigUint) -> bool {
    // Returns true when `a` witnesses compositeness of `x`.
    let one = BigUint::one();
    let xm1 = x - &one;
    let a = a % x;
    if a.is_zero() {
        return false;
    }
    let mut y = a.modpow(d, x);
    if y == one || y == xm1 {
        return false;
    }
    for _ in 1..s {
        y = (&y * &y) % x;
        if y == xm1 {
            return false;
        }
    }
    true
}

/// Miller-Rabin primality test.
///
/// Below 3.3e24 the fixed witness set {2, 3, ..., 37} is known to be
/// deterministic; above that, `rounds` pseudo-random bases are drawn from a
/// generator seeded by `x` itself so the answer is reproducible.
pub fn is_probable_prime(x: &BigUint, rounds: u32) -> bool {
    if x < &BigUint::from(2u32) {
        return false;
    }
    for &p in small_primes() {
        let p = BigUint::from(p);
        if *x == p {
            return true;
        }
        if (x % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let xm1 = x - &one;
    let s = xm1.trailing_zeros().unwrap_or(0) as u32;
    let d = &xm1 >> s;

    let deterministic_bound = BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap();
    if *x < deterministic_bound {
        let witnesses: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        return witnesses
            .iter()
            .all(|&a| !mr_witness(x, &d, s, &BigUint::from(a)));
    }
    let mut seed = 0u64;
    for (i, b) in x.to_bytes_le().into_iter().enumerate().take(8) {
        seed |= (b as u64) << (8 * i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    for _ in 0..rounds {
        let a = rng.gen_biguint_range(&BigUint::from(2u32), &xm1);
        if mr_witness(x, &d, s, &a) {
            return false;
        }
    }
    true
}

/// Convenience wrapper for machine-word inputs.
pub fn is_probable_prime_u64(x: u64, rounds: u32) -> bool {
    is_probable_prime(&BigUint::from(x), rounds)
}

pub const DEFAULT_MR_ROUNDS: u32 = 40;

/// Searches for a prime `l = 1 (mod n)` by sampling `l = 1 + c*n` uniformly
/// with `l` in `[n+1, n^3]`, widening the window geometrically if the budget
/// for one window is exhausted. Returns the prime together with the number of
/// samples drawn (used by the statistical smoke tests).
pub fn find_prime_1modn(n: u64, seed: u64) -> Result<(BigUint, u32), PrimeSearchError> {
    assert!(n >= 2, "find_prime_1modn requires n >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nb = BigUint::from(n);
    let mut hi = &nb * &nb; // c ranges in [1, hi); l = 1 + c n <= n^3 roughly
    let mut samples = 0u32;
    for _round in 0..16 {
        let budget = 4096u32;
        for _ in 0..budget {
            samples += 1;
            let c = rng.gen_biguint_range(&BigUint::one(), &hi);
            let ell = BigUint::one() + &c * &nb;
            if is_probable_prime(&ell, DEFAULT_MR_ROUNDS) {
                return Ok((ell, samples));
            }
        }
        hi <<= 3;
    }
    Err(PrimeSearchError::BudgetExceeded { n })
}

/// Deterministic ascending scan: the least prime `l > n` with `l = 1 (mod n)`.
pub fn first_prime_1modn(n: u64) -> BigUint {
    assert!(n >= 2);
    let nb = BigUint::from(n);
    let mut ell = &nb + BigUint::one();
    loop {
        if is_probable_prime(&ell, DEFAULT_MR_ROUNDS) {
            return ell;
        }
        ell += &nb;
    }
}

fn pollard_rho(n: u64, rng: &mut ChaCha8Rng) -> u64 {
    // Brent's variant; n must be odd composite and not a prime power of 2.
    let nb = n as u128;
    loop {
        let c = rng.gen_range(1..n) as u128;
        let f = |x: u128| (x * x % nb + c) % nb;
        let mut x = rng.gen_range(0..n) as u128;
        let mut y = x;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = if x > y { x - y } else { y - x };
            d = (diff as u64).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
}

/// Complete factorization by trial division and Pollard rho.
pub fn factor(x: u64) -> Factorization {
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    if x <= 1 {
        return Factorization { pairs };
    }
    let mut rest = x;
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    }
    let mut stack = vec![rest];
    let mut rng = ChaCha8Rng::seed_from_u64(x ^ 0xfeed_5eed);
    let mut extra: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_probable_prime_u64(m, DEFAULT_MR_ROUNDS) {
            extra.push(m);
            continue;
        }
        let d = pollard_rho(m, &mut rng);
        stack.push(d);
        stack.push(m / d);
    }
    extra.sort_unstable();
    for p in extra {
        match pairs.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => pairs.push((p, 1)),
        }
    }
    pairs.sort_unstable();
    debug_assert_eq!(Factorization { pairs: pairs.clone() }.product(), x);
    Factorization { pairs }
}

/// Euler phi from a factorization.
pub fn euler_phi(f: &Factorization) -> u64 {
    f.pairs
        .iter()
        .fold(1u64, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// Modular exponentiation helper on u64 (modulus below 2^63).
pub fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % mm;
        }
        b = b * b % mm;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m` (coprime inputs), via extended Euclid.
pub fn inv_mod_u64(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "inv_mod_u64: inputs not coprime");
    t.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_basics() {
        assert!(is_probable_prime_u64(29, 40));
        assert!(!is_probable_prime_u64(561, 40)); // Carmichael number
        assert!(is_probable_prime_u64((1u64 << 61) - 1, 40)); // Mersenne prime
        assert!(!is_probable_prime_u64(1, 40));
        assert!(is_probable_prime_u64(2, 40));
    }

    #[test]
    fn ascending_prime_scan() {
        assert_eq!(first_prime_1modn(7), BigUint::from(29u32)); // 8, 15, 22 composite
        assert_eq!(first_prime_1modn(2), BigUint::from(3u32));
    }

    #[test]
    fn sampled_prime_search_postconditions() {
        for n in [2u64, 7, 12, 101, 4096] {
            let (ell, _) = find_prime_1modn(n, 1).unwrap();
            assert!(is_probable_prime(&ell, 40));
            assert!(((&ell - BigUint::one()) % BigUint::from(n)).is_zero());
        }
    }

    #[test]
    fn factor_basics() {
        assert_eq!(factor(12).pairs, vec![(2, 2), (3, 1)]);
        assert!(factor(1).pairs.is_empty());
        let f = factor(600851475143);
        assert_eq!(f.product(), 600851475143);
        for p in f.primes() {
            assert!(is_probable_prime_u64(p, 40));
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(&factor(12)), 4);
        assert_eq!(euler_phi(&factor(97)), 96);
        assert_eq!(euler_phi(&factor(1)), 1);
    }

    #[test]
    fn phi_lower_bound_sweep() {
        // phi(n)/n > 1/(pi log log n) for 67 <= n <= 1e5, via a smallest-prime
        // factor sieve.
        let lim = 100_000usize;
        let mut spf = vec![0u32; lim + 1];
        for i in 2..=lim {
            if spf[i] == 0 {
                let mut j = i;
                while j <= lim {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        for n in 67..=lim {
            let mut m = n;
            let mut phi = 1u64;
            while m > 1 {
                let p = spf[m] as usize;
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                phi *= (p as u64 - 1) * (p as u64).pow(e - 1);
            }
            let lhs = phi as f64 / n as f64;
            let rhs = 1.0 / (std::f64::consts::PI * (n as f64).ln().ln());
            assert!(lhs > rhs, "phi bound fails at n={n}: {lhs} <= {rhs}");
        }
    }
}
