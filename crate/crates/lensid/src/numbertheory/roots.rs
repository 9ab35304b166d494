//! Roots of unity in `Z/l` and Tonelli-Shanks modular square roots.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::Factorization;

/// An element of known multiplicative order in `Z/l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnity {
    pub ell: BigUint,
    pub zeta: BigUint,
    pub order: u64,
}

impl RootOfUnity {
    /// Checks `zeta^order = 1` and `zeta^(order/p) != 1` for each prime `p`.
    pub fn check(&self, order_factors: &Factorization) -> bool {
        if self.zeta.modpow(&BigUint::from(self.order), &self.ell) != BigUint::one() {
            return false;
        }
        order_factors.primes().all(|p| {
            self.order % p != 0
                || self
                    .zeta
                    .modpow(&BigUint::from(self.order / p), &self.ell)
                    != BigUint::one()
        })
    }

    pub fn pow(&self, e: u64) -> BigUint {
        self.zeta.modpow(&BigUint::from(e % self.order.max(1)), &self.ell)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootOfUnityError {
    #[error("n = {n} does not divide l - 1")]
    NotDividing { n: u64 },
    #[error("sampled element has order {0}, smaller than requested")]
    OrderTooSmall(u64),
}

/// Raises a random alpha to the power `(l-1)/n` and verifies the order is
/// exactly `n` using the maximal-divisor tests. On failure the actual order
/// is reported so the caller can resample (or combine partial orders).
pub fn root_of_unity(
    ell: &BigUint,
    n: u64,
    n_factors: &Factorization,
    seed: u64,
) -> Result<RootOfUnity, RootOfUnityError> {
    let ell_m1 = ell - BigUint::one();
    let nb = BigUint::from(n);
    if !(&ell_m1 % &nb).is_zero() {
        return Err(RootOfUnityError::NotDividing { n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exp = &ell_m1 / &nb;
    let alpha = if ell > &BigUint::from(3u32) {
        rng.gen_biguint_range(&BigUint::from(2u32), &ell_m1)
    } else {
        BigUint::from(2u32) % ell
    };
    root_of_unity_from_alpha(ell, n, n_factors, &alpha)
}

/// Deterministic version used by verifiers: `zeta = alpha^((l-1)/n)`.
pub fn root_of_unity_from_alpha(
    ell: &BigUint,
    n: u64,
    n_factors: &Factorization,
    alpha: &BigUint,
) -> Result<RootOfUnity, RootOfUnityError> {
    let ell_m1 = ell - BigUint::one();
    let nb = BigUint::from(n);
    if !(&ell_m1 % &nb).is_zero() {
        return Err(RootOfUnityError::NotDividing { n });
    }
    let zeta = alpha.modpow(&(&ell_m1 / &nb), ell);
    let order = order_dividing(ell, &zeta, n, n_factors);
    if order != n {
        return Err(RootOfUnityError::OrderTooSmall(order));
    }
    Ok(RootOfUnity {
        ell: ell.clone(),
        zeta,
        order,
    })
}

/// Exact order of an element known to satisfy `x^n = 1`, given the
/// factorization of `n`.
pub fn order_dividing(ell: &BigUint, x: &BigUint, n: u64, n_factors: &Factorization) -> u64 {
    let mut order = n;
    for &(p, e) in &n_factors.pairs {
        for _ in 0..e {
            if order % p == 0
                && x.modpow(&BigUint::from(order / p), ell) == BigUint::one()
            {
                order /= p;
            } else {
                break;
            }
        }
    }
    order
}

/// Both square roots of `x` mod an odd prime `l`, or `None` for a
/// quadratic non-residue. Deterministic: the Tonelli-Shanks non-residue is
/// found by scanning 2, 3, 4, ...
pub fn sqrt_mod(x: &BigUint, ell: &BigUint) -> Option<(BigUint, BigUint)> {
    let x = x % ell;
    if x.is_zero() {
        return Some((BigUint::zero(), BigUint::zero()));
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let ell_m1 = ell - &one;
    let half = &ell_m1 / &two;
    if x.modpow(&half, ell) != one {
        return None; // Euler criterion
    }
    // l = 3 mod 4 shortcut
    if (ell % BigUint::from(4u32)) == BigUint::from(3u32) {
        let r = x.modpow(&((ell + &one) / BigUint::from(4u32)), ell);
        let other = ell - &r;
        return Some(sorted_pair(r, other));
    }
    // Tonelli-Shanks
    let s = ell_m1.trailing_zeros().unwrap_or(0);
    let q = &ell_m1 >> s;
    let mut z = two.clone();
    while z.modpow(&half, ell) == one {
        z += &one;
    }
    let mut m = s;
    let mut c = z.modpow(&q, ell);
    let mut t = x.modpow(&q, ell);
    let mut r = x.modpow(&((&q + &one) / &two), ell);
    while t != one {
        let mut i = 0u64;
        let mut tt = t.clone();
        while tt != one {
            tt = (&tt * &tt) % ell;
            i += 1;
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), ell);
        m = i;
        c = (&b * &b) % ell;
        t = (&t * &c) % ell;
        r = (&r * &b) % ell;
    }
    let other = ell - &r;
    Some(sorted_pair(r, other))
}

fn sorted_pair(a: BigUint, b: BigUint) -> (BigUint, BigUint) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbertheory::factor;

    #[test]
    fn sqrt_examples() {
        let ell = BigUint::from(29u32);
        let (a, b) = sqrt_mod(&BigUint::from(7u32), &ell).unwrap();
        assert_eq!((a, b), (BigUint::from(6u32), BigUint::from(23u32)));
        assert_eq!(
            sqrt_mod(&BigUint::zero(), &ell),
            Some((BigUint::zero(), BigUint::zero()))
        );
        // Euler criterion says 2 is a non-residue mod 29: 2^14 = -1.
        assert_eq!(
            BigUint::from(2u32).modpow(&BigUint::from(14u32), &ell),
            BigUint::from(28u32)
        );
        assert_eq!(sqrt_mod(&BigUint::from(2u32), &ell), None);
    }

    #[test]
    fn sqrt_roundtrip_many() {
        for &ell in &[29u64, 97, 101, 65537, 1000003] {
            let lb = BigUint::from(ell);
            for x in 1u64..40 {
                let xb = BigUint::from(x % ell);
                match sqrt_mod(&xb, &lb) {
                    Some((r, s)) => {
                        assert_eq!((&r * &r) % &lb, xb);
                        assert_eq!((&s * &s) % &lb, xb);
                    }
                    None => {
                        // verify non-residue by Euler criterion
                        let half = (&lb - BigUint::one()) / BigUint::from(2u32);
                        assert_ne!(xb.modpow(&half, &lb), BigUint::one());
                    }
                }
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let ell = BigUint::from(29u32);
        let f7 = factor(7);
        let r = root_of_unity_from_alpha(&ell, 7, &f7, &BigUint::from(2u32)).unwrap();
        assert_eq!(r.zeta, BigUint::from(16u32)); // 2^4 = 16
        assert_eq!(r.order, 7);
        assert!(r.check(&f7));

        assert_eq!(
            root_of_unity_from_alpha(&ell, 7, &f7, &BigUint::one()),
            Err(RootOfUnityError::OrderTooSmall(1))
        );

        let f28 = factor(28);
        let r = root_of_unity_from_alpha(&ell, 28, &f28, &BigUint::from(2u32)).unwrap();
        assert_eq!(r.zeta, BigUint::from(2u32)); // 2 is a primitive root mod 29
        assert_eq!(r.order, 28);
    }
}
