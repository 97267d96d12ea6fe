//! Exact scalar arithmetic over a prime field F_p or the rationals.
//!
//! Every computation in this crate is exact; there is no floating point
//! anywhere. Scalars do not carry their field around, so all arithmetic
//! goes through a [`FieldSpec`] value.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// The coefficient field of a category presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    /// F_p for a prime modulus p.
    Prime(u64),
    /// The rational numbers with exact fraction arithmetic.
    Rationals,
}

/// A field element. `Fp` values are kept reduced into `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::BadField(format!("{p} is not prime")))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Fp(0),
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Fp(1),
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let p = *p as i64;
                Scalar::Fp(v.rem_euclid(p) as u64)
            }
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(v))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(x) => *x == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x * y) % p),
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                // Fermat: x^(p-2) mod p.
                let mut acc: u64 = 1;
                let mut base = *x % p;
                let mut e = p - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Some(Scalar::Fp(acc))
            }
            (FieldSpec::Rationals, Scalar::Rat(x)) => Some(Scalar::Rat(x.recip())),
            _ => panic!("scalar does not belong to field {self:?}"),
        }
    }

    /// Number of field elements, when finite.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            FieldSpec::Rationals => None,
        }
    }

    /// All field elements in a fixed order, for finite fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Prime(p) => Some((0..*p).map(Scalar::Fp).collect()),
            FieldSpec::Rationals => None,
        }
    }

    /// A deterministic pseudo-random element driven by the caller's RNG.
    /// For the rationals this draws small fractions, which is enough for
    /// fuzzing linear identities.
    pub fn random(&self, rng: &mut impl rand::Rng) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp(rng.gen_range(0..*p)),
            FieldSpec::Rationals => {
                let num = rng.gen_range(-4i64..=4);
                let den = rng.gen_range(1i64..=3);
                Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
        }
    }

    /// Render a scalar for reports. Rationals print as `a/b` with positive
    /// denominator; prime field elements as their canonical representative.
    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Fp(x) => x.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else if r.denom().is_negative() {
                    format!("{}/{}", -r.numer(), -r.denom())
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_arithmetic() {
        let f = FieldSpec::prime(5).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), Scalar::Fp(2));
        assert_eq!(f.mul(&a, &b), Scalar::Fp(2));
        assert_eq!(f.neg(&a), Scalar::Fp(2));
        assert_eq!(f.inv(&a), Some(Scalar::Fp(2)));
        assert_eq!(f.inv(&f.zero()), None);
        assert_eq!(f.from_i64(-1), Scalar::Fp(4));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(FieldSpec::prime(6).is_err());
        assert!(FieldSpec::prime(1).is_err());
    }

    #[test]
    fn rational_arithmetic_is_reduced() {
        let f = FieldSpec::Rationals;
        let half = Scalar::Rat(BigRational::new(BigInt::from(2), BigInt::from(4)));
        assert_eq!(f.render(&half), "1/2");
        let one = f.add(&half, &half);
        assert_eq!(one, f.one());
        assert_eq!(f.inv(&half), Some(Scalar::Rat(BigRational::from(BigInt::from(2)))));
    }
}
