//! Field contexts for the torsion engine: rationals, small prime fields on
//! machine words, and big prime fields.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Field operations over an element type, context style: the context carries
/// the modulus (or nothing, for Q).
pub trait FieldOps {
    type El: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    /// None when `a` is zero (or a zero divisor, which fields lack).
    fn inv(&self, a: &Self::El) -> Option<Self::El>;
    fn is_zero(&self, a: &Self::El) -> bool {
        *a == self.zero()
    }
    fn from_i64(&self, x: i64) -> Self::El;
}

/// The rational field with exact arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl FieldOps for Rationals {
    type El = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }
}

/// `Z/p` for p below 2^31, with u64 elements and u128 intermediates.
#[derive(Debug, Clone, Copy)]
pub struct Fp64 {
    pub p: u64,
}

impl Fp64 {
    pub fn new(p: u64) -> Self {
        assert!(p > 1 && p < (1 << 31));
        Fp64 { p }
    }
}

impl FieldOps for Fp64 {
    type El = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            Some(crate::numbertheory::pow_mod_u64(*a, self.p - 2, self.p))
        }
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
}

/// `Z/l` for arbitrary prime moduli.
#[derive(Debug, Clone)]
pub struct FpBig {
    pub p: BigUint,
}

impl FpBig {
    pub fn new(p: BigUint) -> Self {
        FpBig { p }
    }
}

impl FieldOps for FpBig {
    type El = BigUint;
    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one() % &self.p
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % &self.p
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        ((a % &self.p) + &self.p - (b % &self.p)) % &self.p
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.p
    }
    fn neg(&self, a: &BigUint) -> BigUint {
        (&self.p - (a % &self.p)) % &self.p
    }
    fn inv(&self, a: &BigUint) -> Option<BigUint> {
        if (a % &self.p).is_zero() {
            None
        } else {
            Some(a.modpow(&(&self.p - BigUint::from(2u32)), &self.p))
        }
    }
    fn from_i64(&self, x: i64) -> BigUint {
        let m = x.rem_euclid(0); // placeholder, replaced below
        let _ = m;
        let p_i = &self.p;
        if x >= 0 {
            BigUint::from(x as u64) % p_i
        } else {
            let r = BigUint::from((-x) as u64) % p_i;
            (p_i - r) % p_i
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp64_ops() {
        let f = Fp64::new(29);
        assert_eq!(f.inv(&16).map(|i| f.mul(&i, &16)), Some(1));
        assert_eq!(f.from_i64(-3), 26);
        assert_eq!(f.sub(&3, &5), 27);
    }

    #[test]
    fn fpbig_matches_fp64() {
        let a = Fp64::new(101);
        let b = FpBig::new(BigUint::from(101u32));
        for x in [-5i64, 0, 1, 57, 100, 202] {
            assert_eq!(BigUint::from(a.from_i64(x)), b.from_i64(x));
        }
        let i1 = a.inv(&37).unwrap();
        let i2 = b.inv(&BigUint::from(37u32)).unwrap();
        assert_eq!(BigUint::from(i1), i2);
    }
}
