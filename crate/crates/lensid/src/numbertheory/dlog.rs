//! Discrete logarithms in `(Z/l)^x` by Pohlig-Hellman reduction, with
//! baby-step giant-step or exhaustive search per prime factor.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use super::{inv_mod_u64, Factorization, RootOfUnity};

/// How each prime-order sub-logarithm is solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlogStrategy {
    /// Baby-step giant-step, O(sqrt(p)) time and memory per prime p.
    Bsgs,
    /// Plain exhaustive search, O(p) per prime; only sensible for smooth
    /// orders. `max_subsearch` records the largest search actually run.
    Exhaustive,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DlogError {
    #[error("target is not in the subgroup generated by the base")]
    NotInSubgroup,
    #[error("internal search failed to locate a digit (inconsistent inputs)")]
    DigitNotFound,
}

/// Statistics from a discrete logarithm run.
#[derive(Debug, Clone, Copy, Default)]
pub struct DlogAudit {
    /// Largest exhaustive sub-search performed (0 when BSGS was used).
    pub max_subsearch: u64,
}

/// Solves `base.zeta^e = target` for `e` in `Z/order`, given the
/// factorization of the order.
pub fn dlog(
    base: &RootOfUnity,
    target: &BigUint,
    order_factors: &Factorization,
    strategy: DlogStrategy,
) -> Result<u64, DlogError> {
    Ok(dlog_with_audit(base, target, order_factors, strategy)?.0)
}

pub fn dlog_with_audit(
    base: &RootOfUnity,
    target: &BigUint,
    order_factors: &Factorization,
    strategy: DlogStrategy,
) -> Result<(u64, DlogAudit), DlogError> {
    let ell = &base.ell;
    let n = base.order;
    let target = target % ell;
    if target.modpow(&BigUint::from(n), ell) != BigUint::one() {
        return Err(DlogError::NotInSubgroup);
    }
    let mut audit = DlogAudit::default();
    // CRT over prime powers of the order.
    let mut residues: Vec<(u64, u64)> = Vec::new(); // (e mod p^e, p^e)
    for &(p, e) in &order_factors.pairs {
        let pe = p.pow(e);
        let g = base.zeta.modpow(&BigUint::from(n / pe), ell); // order p^e
        let h = target.modpow(&BigUint::from(n / pe), ell);
        let x = dlog_prime_power(ell, &g, &h, p, e, strategy, &mut audit)?;
        residues.push((x, pe));
    }
    let mut x: u64 = 0;
    let mut modulus: u64 = 1;
    for (r, m) in residues {
        x = crt_pair(x, modulus, r, m);
        modulus *= m;
    }
    // order may be 1 (trivial group): x = 0 then.
    debug_assert_eq!(base.zeta.modpow(&BigUint::from(x), ell), target % ell);
    Ok((x, audit))
}

fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> u64 {
    // m, n coprime; result mod m*n
    if m == 1 {
        return b % n.max(1);
    }
    let m_inv = inv_mod_u64(m % n, n);
    let mm = m as u128;
    let diff = ((b as i128 - (a % n) as i128).rem_euclid(n as i128)) as u128;
    let t = diff * m_inv as u128 % n as u128;
    (a as u128 + t * mm) as u64
}

/// Digit-by-digit lift for order p^e: mirrors the recursion
/// `a' = a + n b / m` with each digit solved in the order-p subgroup.
fn dlog_prime_power(
    ell: &BigUint,
    g: &BigUint,
    h: &BigUint,
    p: u64,
    e: u32,
    strategy: DlogStrategy,
    audit: &mut DlogAudit,
) -> Result<u64, DlogError> {
    let pe = p.pow(e);
    let gamma = g.modpow(&BigUint::from(pe / p), ell); // order exactly p (or 1)
    let mut x: u64 = 0;
    let g_inv = mod_inverse(g, ell);
    for k in 0..e {
        // h_k = (h * g^(-x))^(p^(e-1-k)) lies in <gamma>
        let shifted = (h * g_inv.modpow(&BigUint::from(x), ell)) % ell;
        let hk = shifted.modpow(&BigUint::from(p.pow(e - 1 - k)), ell);
        let d = match strategy {
            DlogStrategy::Bsgs => bsgs(ell, &gamma, &hk, p)?,
            DlogStrategy::Exhaustive => {
                audit.max_subsearch = audit.max_subsearch.max(p);
                exhaustive(ell, &gamma, &hk, p)?
            }
        };
        x += d * p.pow(k);
    }
    Ok(x)
}

fn mod_inverse(a: &BigUint, ell: &BigUint) -> BigUint {
    a.modpow(&(ell - BigUint::from(2u32)), ell)
}

fn exhaustive(ell: &BigUint, g: &BigUint, h: &BigUint, p: u64) -> Result<u64, DlogError> {
    let mut acc = BigUint::one();
    for d in 0..p {
        if &acc == h {
            return Ok(d);
        }
        acc = (&acc * g) % ell;
    }
    Err(DlogError::DigitNotFound)
}

fn fingerprint(x: &BigUint) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

/// Baby-step giant-step in the order-p subgroup generated by g. On 64-bit
/// fingerprint collisions the candidate exponents are re-verified, so a
/// collision costs time but never correctness.
fn bsgs(ell: &BigUint, g: &BigUint, h: &BigUint, p: u64) -> Result<u64, DlogError> {
    if p < 64 {
        return exhaustive(ell, g, h, p);
    }
    let m = (p as f64).sqrt().ceil() as u64;
    let mut table: Vec<(u64, u32)> = Vec::with_capacity(m as usize);
    let mut acc = BigUint::one();
    for j in 0..m {
        table.push((fingerprint(&acc), j as u32));
        acc = (&acc * g) % ell;
    }
    table.sort_unstable();
    // giant factor g^(-m)
    let gm_inv = mod_inverse(g, ell).modpow(&BigUint::from(m), ell);
    let mut gamma = h.clone();
    for i in 0..=m {
        let fp = fingerprint(&gamma);
        let mut idx = table.partition_point(|&(f, _)| f < fp);
        while idx < table.len() && table[idx].0 == fp {
            let j = table[idx].1 as u64;
            let cand = (i * m + j) % p;
            if g.modpow(&BigUint::from(cand), ell) == h % ell {
                return Ok(cand);
            }
            idx += 1;
        }
        gamma = (&gamma * &gm_inv) % ell;
    }
    Err(DlogError::DigitNotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbertheory::{factor, first_prime_1modn, roots::root_of_unity_from_alpha};

    #[test]
    fn worked_example_mod_29() {
        let ell = BigUint::from(29u32);
        let f7 = factor(7);
        let base = root_of_unity_from_alpha(&ell, 7, &f7, &BigUint::from(2u32)).unwrap();
        assert_eq!(base.zeta, BigUint::from(16u32));
        // 16^3 = 4096 = 7 mod 29
        assert_eq!(
            dlog(&base, &BigUint::from(7u32), &f7, DlogStrategy::Bsgs).unwrap(),
            3
        );
        assert_eq!(
            dlog(&base, &BigUint::one(), &f7, DlogStrategy::Bsgs).unwrap(),
            0
        );
        // 3 has order 28, not in <16>
        assert_eq!(
            dlog(&base, &BigUint::from(3u32), &f7, DlogStrategy::Bsgs),
            Err(DlogError::NotInSubgroup)
        );
    }

    #[test]
    fn round_trip_orders() {
        for n in [2u64, 12, 36, 97, 360, 1009, 5040] {
            let ell = first_prime_1modn(n);
            let nf = factor(n);
            let mut alpha = BigUint::from(2u32);
            let base = loop {
                match root_of_unity_from_alpha(&ell, n, &nf, &alpha) {
                    Ok(r) => break r,
                    Err(_) => alpha += BigUint::one(),
                }
            };
            for e in [0u64, 1, n / 2, n - 1, 17 % n] {
                let target = base.zeta.modpow(&BigUint::from(e), &ell);
                assert_eq!(dlog(&base, &target, &nf, DlogStrategy::Bsgs).unwrap(), e);
                assert_eq!(
                    dlog(&base, &target, &nf, DlogStrategy::Exhaustive).unwrap(),
                    e
                );
            }
        }
    }

    #[test]
    fn exhaustive_matches_bsgs_on_all_exponents() {
        let n = 210u64; // 2*3*5*7, exercises CRT
        let ell = first_prime_1modn(n);
        let nf = factor(n);
        let mut alpha = BigUint::from(2u32);
        let base = loop {
            match root_of_unity_from_alpha(&ell, n, &nf, &alpha) {
                Ok(r) => break r,
                Err(_) => alpha += BigUint::one(),
            }
        };
        for e in 0..n {
            let target = base.zeta.modpow(&BigUint::from(e), &ell);
            assert_eq!(dlog(&base, &target, &nf, DlogStrategy::Bsgs).unwrap(), e);
        }
    }
}
