//! Quadratic and quartic residue symbols over Z and over the ground
//! rings, plus the unit-group symbol (E/a).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::element::RingElement;
use crate::error::{Error, Result};
use crate::field::GroundField;
use crate::finite::Fq;
use crate::primes::{factor_element, is_prime_u64, primary_associate, PrimePlace};

/// A value in {+1, -1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Sign {
        match v {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => panic!("sign must be ±1, got {v}"),
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Jacobi symbol (a/n) for odd positive n coprime to a.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<Sign> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::BadModulus(format!("{n} is not odd positive")));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = Sign::Plus;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                sign = sign * Sign::Minus;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32().unwrap() == 3 && (&n % 4u32).to_u32().unwrap() == 3 {
            sign = sign * Sign::Minus;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        Ok(sign)
    } else {
        Err(Error::SharedFactor)
    }
}

pub fn jacobi_i64(a: i64, n: u64) -> Result<Sign> {
    jacobi(&BigInt::from(a), &BigInt::from(n))
}

/// Quadratic residue symbol [alpha/place] by Euler's congruence in the
/// residue field.
pub fn quad_symbol(alpha: &RingElement, place: &PrimePlace) -> Result<Sign> {
    if !place.is_odd() {
        return Err(Error::EvenPlace);
    }
    let fq = Fq::from_place(place);
    let img = fq.embed(alpha);
    match fq.legendre(img) {
        0 => Err(Error::SharedFactor),
        v => Ok(Sign::from_i8(v)),
    }
}

/// [alpha/a] extended multiplicatively over the prime factorization of an
/// odd ideal (a) of the ground ring.
pub fn quad_symbol_ideal(
    field: GroundField,
    alpha: &RingElement,
    modulus: &RingElement,
) -> Result<Sign> {
    if field.norm(modulus).is_even() {
        return Err(Error::EvenPlace);
    }
    let (_, factors) = factor_element(field, modulus)?;
    let mut sign = Sign::Plus;
    for (place, e) in factors {
        if e % 2 == 1 {
            sign = sign * quad_symbol(alpha, &place)?;
        } else {
            // even exponent contributes trivially, but coprimality must hold
            if place.divides(alpha) {
                return Err(Error::SharedFactor);
            }
        }
    }
    Ok(sign)
}

/// Rational quartic symbol (a/q)_4 for q = 1 mod 4 prime and a a
/// quadratic residue mod q: the quadratic symbol of a square root of a.
pub fn quartic_rational(a: &BigInt, q: u64) -> Result<Sign> {
    if q % 4 != 1 || !is_prime_u64(q) {
        return Err(Error::BadModulus(format!("{q} is not a 1 mod 4 prime")));
    }
    match jacobi(a, &BigInt::from(q))? {
        Sign::Minus => Err(Error::NotAResidue),
        Sign::Plus => {
            let fp = crate::finite::Fp::new(q);
            let ar = fp.reduce_bigint(a);
            let r = fp.sqrt(ar).expect("residue by the Jacobi test");
            Ok(Sign::from_i8(fp.legendre(r)))
        }
    }
}

/// True when the element is in the canonical primary normalization of its
/// field (the fixed point of `primary_associate`).
pub fn is_primary_normalized(field: GroundField, pi: &RingElement) -> bool {
    matches!(primary_associate(field, pi), Ok(p) if p == *pi)
}

/// Degree-1 place generated by a prime element of the ground ring, with
/// residue-field data derived from the element itself. Inert rational
/// primes give the degree-2 place.
pub fn place_of_prime_element(field: GroundField, pi: &RingElement) -> Result<PrimePlace> {
    let n = field.norm(pi).abs();
    let n64 = n
        .to_u64()
        .ok_or_else(|| Error::EffortExceeded("prime norm too large".into()))?;
    if field == GroundField::Q {
        if !is_prime_u64(n64) {
            return Err(Error::NotPrime(n64));
        }
        return Ok(PrimePlace {
            field,
            gen: field.canonical_associate(pi),
            p: n64,
            f: 1,
            ramified: false,
            omega_image: 0,
        });
    }
    if is_prime_u64(n64) {
        let p = n64;
        let fp = crate::finite::Fp::new(p);
        let xb = fp.reduce_bigint(&pi.x);
        let yb = fp.reduce_bigint(&pi.y);
        debug_assert!(yb != 0, "split prime has invertible omega coordinate");
        let z = fp.mul(fp.sub(0, xb), fp.inv(yb));
        return Ok(PrimePlace {
            field,
            gen: field.canonical_associate(pi),
            p,
            f: 1,
            ramified: field.discriminant().unsigned_abs() % p == 0,
            omega_image: z,
        });
    }
    // inert rational prime: norm p^2
    let p = n.sqrt().to_u64().ok_or(Error::NotPrime(n64))?;
    if p * p == n64 && is_prime_u64(p) && field.is_associate(pi, &RingElement::from_int(p)) {
        return Ok(PrimePlace {
            field,
            gen: field.canonical_associate(pi),
            p,
            f: 2,
            ramified: false,
            omega_image: 0,
        });
    }
    Err(Error::NotPrime(n64))
}

/// Rational biquadratic symbol (pi1/pi2)_4 for primary primes of the
/// ground ring with [pi1/pi2] = +1. Sign-independence of the square root
/// comes from (-1/pi2) = +1, which holds because N(pi2) = 1 mod 4 for
/// primary pi2.
pub fn quartic_primary(
    field: GroundField,
    pi1: &RingElement,
    pi2: &RingElement,
) -> Result<Sign> {
    if !is_primary_normalized(field, pi1) || !is_primary_normalized(field, pi2) {
        return Err(Error::NotPrimary);
    }
    let place2 = place_of_prime_element(field, pi2)?;
    if quad_symbol(pi1, &place2)? == Sign::Minus {
        return Err(Error::NotAResidue);
    }
    let fq = Fq::from_place(&place2);
    let img = fq.embed(pi1);
    let r = fq.sqrt(img).expect("residue checked above");
    Ok(Sign::from_i8(fq.legendre(r)))
}

/// Generators of a unit group modulo squares: the torsion generator and
/// optionally one infinite-order unit.
#[derive(Debug, Clone)]
pub struct UnitGroupDescription {
    pub field: GroundField,
    pub torsion_gen: RingElement,
    pub infinite_gen: Option<RingElement>,
}

impl UnitGroupDescription {
    /// The unit group of the ground ring itself.
    pub fn ground(field: GroundField) -> Self {
        UnitGroupDescription {
            field,
            torsion_gen: field.torsion_generator(),
            infinite_gen: None,
        }
    }

    pub fn generators(&self) -> Vec<RingElement> {
        let mut g = vec![self.torsion_gen.clone()];
        if let Some(inf) = &self.infinite_gen {
            g.push(inf.clone());
        }
        g
    }
}

/// The symbol (E/a): +1 iff every generator of E is a quadratic residue
/// modulo the odd ideal (a).
pub fn unit_group_symbol(
    units: &UnitGroupDescription,
    modulus: &RingElement,
) -> Result<Sign> {
    let mut sign = Sign::Plus;
    for g in units.generators() {
        if quad_symbol_ideal(units.field, &g, modulus)? == Sign::Minus {
            sign = Sign::Minus;
        }
    }
    Ok(sign)
}

/// (E_F/place) for a single place.
pub fn unit_group_symbol_at(units: &UnitGroupDescription, place: &PrimePlace) -> Result<Sign> {
    let mut sign = Sign::Plus;
    for g in units.generators() {
        if quad_symbol(&g, place)? == Sign::Minus {
            sign = Sign::Minus;
        }
    }
    Ok(sign)
}
