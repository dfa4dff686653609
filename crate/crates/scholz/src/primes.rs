//! Rational and ground-ring primes: primality testing, factorization,
//! splitting of rational primes, and primary normalization of prime
//! elements.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::element::RingElement;
use crate::error::{Error, Result};
use crate::field::GroundField;
use crate::finite::Fp;

/// Deterministic Miller-Rabin for u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set is deterministic for all n < 3.3 * 10^24.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Primality for arbitrary-precision inputs: Miller-Rabin for anything
/// that fits in 64 bits, Baillie-PSW above.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    bpsw(n)
}

fn bpsw(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    if n.is_even() {
        return *n == two;
    }
    for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
        if (n % p).is_zero() {
            return *n == BigInt::from(p);
        }
    }
    // Strong base-2 Miller-Rabin.
    let nm1: BigInt = n - 1;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = two.modpow(&d, n);
    let mut passed = x.is_one() || x == nm1;
    if !passed {
        for _ in 0..s - 1 {
            x = (&x * &x) % n;
            if x == nm1 {
                passed = true;
                break;
            }
        }
    }
    if !passed {
        return false;
    }
    // Strong Lucas test with Selfridge parameters.
    let mut d_sel = BigInt::from(5);
    let mut sign = 1i64;
    loop {
        let dd = &d_sel * sign;
        let j = jacobi_bigint(&dd, n);
        if j == 0 {
            // d shares a factor with n
            return (&dd).abs() == *n;
        }
        if j == -1 {
            break;
        }
        d_sel += 2;
        sign = -sign;
        if d_sel > BigInt::from(1_000_000) {
            // perfect square fallback
            let r = n.sqrt();
            if &r * &r == *n {
                return false;
            }
        }
    }
    let dd = d_sel * sign;
    strong_lucas(n, &dd)
}

fn strong_lucas(n: &BigInt, d: &BigInt) -> bool {
    // P = 1, Q = (1 - d) / 4
    let q: BigInt = (BigInt::one() - d) / 4;
    let np1: BigInt = n + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let t = &np1 >> s;

    let modn = |v: BigInt| -> BigInt { v.mod_floor(n) };
    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = q.mod_floor(n);
    let inv2 = BigInt::from(2).modpow(&(n - 2), n);

    let bits: Vec<bool> = (0..t.bits()).rev().map(|i| t.bit(i)).collect();
    let mut first = true;
    for &bit in &bits {
        if first {
            first = false;
            // (u, v) = (1, 1) corresponds to index 1 already
            if bit {
                // leading bit
            }
            continue;
        }
        // double: U_{2k} = U_k V_k, V_{2k} = V_k^2 - 2 Q^k
        let u2 = modn(&u * &v);
        let v2 = modn(&v * &v - 2 * &qk);
        qk = modn(&qk * &qk);
        u = u2;
        v = v2;
        if bit {
            // increment: U_{k+1} = (P U_k + V_k)/2, V_{k+1} = (D U_k + P V_k)/2
            let un = modn((&u + &v) * &inv2);
            let vn = modn((d * &u + &v) * &inv2);
            qk = modn(&qk * &q);
            u = un;
            v = vn;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 0..s.saturating_sub(1) {
        let v2 = modn(&v * &v - 2 * &qk);
        qk = modn(&qk * &qk);
        v = v2;
        if v.is_zero() {
            return true;
        }
    }
    false
}

fn jacobi_bigint(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32().unwrap() == 3 && (&n % 4u32).to_u32().unwrap() == 3 {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Simple sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return vec![];
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Factor a u64 with trial division plus Brent-Pollard rho.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// How a rational prime decomposes in the ground ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// A prime of the ground ring together with its residue-field data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePlace {
    pub field: GroundField,
    /// Canonical-associate generator of the prime ideal.
    pub gen: RingElement,
    /// Residue characteristic.
    pub p: u64,
    /// Residue degree.
    pub f: u8,
    pub ramified: bool,
    /// Image of omega in F_p (residue degree 1 only).
    pub omega_image: u64,
}

impl PrimePlace {
    pub fn norm_u64(&self) -> u64 {
        if self.f == 1 {
            self.p
        } else {
            self.p * self.p
        }
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    pub fn divides(&self, a: &RingElement) -> bool {
        self.field.divides(&self.gen, a)
    }

    /// Valuation of a nonzero element at this place.
    pub fn valuation(&self, a: &RingElement) -> u32 {
        assert!(!a.is_zero());
        let mut v = 0;
        let mut cur = a.clone();
        while let Some(next) = self.field.div_exact(&cur, &self.gen) {
            v += 1;
            cur = next;
        }
        v
    }
}

/// Decompose an odd rational prime in the ground ring.
///
/// Over Q every prime is its own (degree-1) place; over the complex
/// fields p splits iff the field discriminant is a square mod p, and
/// ramifies iff p divides it.
pub fn factor_rational_prime(p: u64, field: GroundField) -> Result<(Splitting, Vec<PrimePlace>)> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(decompose_prime(p, field))
}

/// Internal decomposition; also valid at p = 2.
pub fn decompose_prime(p: u64, field: GroundField) -> (Splitting, Vec<PrimePlace>) {
    #[cfg(debug_assertions)]
    {
        use std::sync::Once;
        static CHECK: Once = Once::new();
        CHECK.call_once(|| {
            for f in crate::field::ALL_FIELDS {
                f.check_class_number_one();
            }
        });
    }
    if field == GroundField::Q {
        return (
            Splitting::Split,
            vec![PrimePlace {
                field,
                gen: RingElement::from_int(p),
                p,
                f: 1,
                ramified: false,
                omega_image: 0,
            }],
        );
    }
    let (s, _t) = field.omega_sq();
    let d = field.discriminant();
    if p == 2 {
        return decompose_two(field);
    }
    let ramified = d.unsigned_abs() % p == 0;
    let fp = Fp::new(p);
    // Splitting is governed by the roots of x^2 - s x - t mod p.
    let disc = fp.reduce_i64(d);
    if !ramified && fp.legendre(disc) == -1 {
        return (
            Splitting::Inert,
            vec![PrimePlace {
                field,
                gen: RingElement::from_int(p),
                p,
                f: 2,
                ramified: false,
                omega_image: 0,
            }],
        );
    }
    let r = fp.sqrt(disc).expect("square by the Legendre test");
    let inv2 = fp.inv(2 % p);
    let z1 = fp.mul(fp.add(fp.reduce_i64(s), r), inv2);
    let z2 = fp.mul(fp.sub(fp.reduce_i64(s), r), inv2);
    let mut places = Vec::new();
    for z in [z1, z2] {
        let gen = field.gcd(
            &RingElement::from_int(p),
            &RingElement::new(BigInt::from(-(z as i128)), BigInt::one()),
        );
        let place = PrimePlace {
            field,
            gen,
            p,
            f: 1,
            ramified,
            omega_image: z,
        };
        if !places.contains(&place) {
            places.push(place);
        }
    }
    if ramified {
        debug_assert_eq!(places.len(), 1);
        (Splitting::Ramified, places)
    } else {
        debug_assert_eq!(places.len(), 2);
        (Splitting::Split, places)
    }
}

fn decompose_two(field: GroundField) -> (Splitting, Vec<PrimePlace>) {
    let (s, _t) = field.omega_sq();
    // Factor x^2 - s x - t over F_2.
    let eval = |z: i64| (z * z - s * z - _t).rem_euclid(2);
    let r: Vec<i64> = (0..2i64).filter(|&z| eval(z) == 0).collect();
    match r.len() {
        0 => (
            Splitting::Inert,
            vec![PrimePlace {
                field,
                gen: RingElement::from_int(2),
                p: 2,
                f: 2,
                ramified: false,
                omega_image: 0,
            }],
        ),
        _ => {
            let d = field.discriminant();
            let ramified = d % 2 == 0;
            let mut places = Vec::new();
            for &z in &r {
                let gen = field.gcd(
                    &RingElement::from_int(2),
                    &RingElement::new(BigInt::from(-z), BigInt::one()),
                );
                let place = PrimePlace {
                    field,
                    gen,
                    p: 2,
                    f: 1,
                    ramified,
                    omega_image: z as u64,
                };
                if !places.contains(&place) {
                    places.push(place);
                }
            }
            if ramified {
                (Splitting::Ramified, places)
            } else {
                (Splitting::Split, places)
            }
        }
    }
}

/// All places of the ground field above p, at any residue characteristic.
pub fn places_above(p: u64, field: GroundField) -> Vec<PrimePlace> {
    decompose_prime(p, field).1
}

/// Whether some ideal of the ground ring has the given (small) norm.
/// Only used by the debug-build class-number check, which needs norms up
/// to the Minkowski bound (< 3 for every supported field).
pub(crate) fn norm_is_attained(field: GroundField, n: u64) -> bool {
    match n {
        0 => false,
        1 => true,
        _ if is_prime_u64(n) => !matches!(decompose_prime(n, field).0, Splitting::Inert),
        4 => true,
        _ => false,
    }
}

/// Factor a nonzero element into prime places. Returns the unit cofactor
/// and (place, exponent) pairs ordered by (p, generator).
pub fn factor_element(
    field: GroundField,
    a: &RingElement,
) -> Result<(RingElement, Vec<(PrimePlace, u32)>)> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = field.norm(a).abs();
    let n64 = n
        .to_u64()
        .ok_or_else(|| Error::EffortExceeded("element norm too large to factor".into()))?;
    let mut result = Vec::new();
    let mut cur = a.clone();
    for (p, _) in factor_u64(n64) {
        for place in places_above(p, field) {
            let mut v = 0u32;
            while let Some(next) = field.div_exact(&cur, &place.gen) {
                cur = next;
                v += 1;
            }
            if v > 0 {
                result.push((place, v));
            }
        }
    }
    if !field.is_unit(&cur) {
        return Err(Error::EffortExceeded("incomplete factorization".into()));
    }
    Ok((cur, result))
}

/// Is the element squarefree (no prime place divides it twice)?
pub fn is_squarefree(field: GroundField, a: &RingElement) -> Result<bool> {
    let (_, factors) = factor_element(field, a)?;
    Ok(factors.iter().all(|(_, e)| *e == 1))
}

/// 2-primary test: alpha = xi^2 mod 4 for some xi in the ring. This is
/// exactly "no ramification above 2 in F(sqrt(alpha))".
pub fn two_primary(field: GroundField, a: &RingElement) -> bool {
    let four = RingElement::from_int(4);
    for xx in 0..4i64 {
        let yrange = if field == GroundField::Q { 0..1 } else { 0..4 };
        for yy in yrange {
            let xi = RingElement::from_i64(xx, yy);
            let diff = field.sub(&field.mul(&xi, &xi), a);
            if field.divides(&four, &diff) {
                return true;
            }
        }
    }
    false
}

/// Primary (strict) test for elements: 2-primary and totally positive.
/// Positivity is vacuous over the complex fields.
pub fn element_primary(field: GroundField, a: &RingElement) -> bool {
    let positive = if field == GroundField::Q {
        a.x.is_positive()
    } else {
        true
    };
    positive && two_primary(field, a)
}

/// The canonical primary associate-or-conjugate of a prime element.
///
/// Normalization per field: over Q positive and 1 mod 4; in Z[i]
/// congruent to 1 mod 4; in Z[sqrt(-2)] coordinate sum 1 mod 4; in the
/// remaining fields any 2-primary representative. Ties are broken by
/// preferring a positive omega coordinate, then lexicographically.
pub fn primary_associate(field: GroundField, pi: &RingElement) -> Result<RingElement> {
    if field.norm(pi).is_even() {
        return Err(Error::EvenElement);
    }
    let mut candidates = Vec::new();
    let conj = field.conj(pi);
    for u in field.torsion_units() {
        for base in [pi, &conj] {
            let c = field.mul(base, &u);
            if !candidates.contains(&c) {
                candidates.push(c);
            }
        }
    }
    let four = BigInt::from(4);
    let ok = |c: &RingElement| -> bool {
        match field {
            GroundField::Q => c.x.is_positive() && c.x.mod_floor(&four).is_one(),
            GroundField::Qi => {
                c.x.mod_floor(&four).is_one() && c.y.mod_floor(&four).is_zero()
            }
            GroundField::Qsqrt2 => (&c.x + &c.y).mod_floor(&four).is_one(),
            _ => two_primary(field, c),
        }
    };
    let mut valid: Vec<RingElement> = candidates.into_iter().filter(|c| ok(c)).collect();
    if valid.is_empty() {
        return Err(Error::NoPrimaryAssociate);
    }
    valid.sort_by(|a, b| {
        let ka = (a.y.is_positive(), a.clone());
        let kb = (b.y.is_positive(), b.clone());
        kb.0.cmp(&ka.0).then_with(|| ka.1.x.cmp(&kb.1.x)).then_with(|| ka.1.y.cmp(&kb.1.y))
    });
    Ok(valid.into_iter().next().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ALL_FIELDS, COMPLEX_FIELDS};

    #[test]
    fn primality_basics() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(17));
        assert!(is_prime_u64(4294967291));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(4294967295));
        // BPSW on a big prime and a big composite
        let p: BigInt = BigInt::from(10u8).pow(30) + 57u32;
        assert!(is_prime(&p));
        assert!(!is_prime(&(p.clone() * 3u32)));
    }

    #[test]
    fn factoring_roundtrip() {
        for n in [2u64, 12, 97, 1_000_000_007, 600851475143, 4294967291 * 3] {
            let fs = factor_u64(n);
            let back: u64 = fs.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(back, n);
            for (p, _) in fs {
                assert!(is_prime_u64(p));
            }
        }
    }

    #[test]
    fn splitting_spot_values() {
        // 17 splits in Q(i) as (1+4i)(1-4i); Cornacchia oracle 17 = 1 + 16.
        let (s, places) = factor_rational_prime(17, GroundField::Qi).unwrap();
        assert_eq!(s, Splitting::Split);
        assert_eq!(places.len(), 2);
        for pl in &places {
            assert_eq!(GroundField::Qi.norm(&pl.gen), BigInt::from(17));
        }
        // 3 is inert in Q(i)
        let (s, _) = factor_rational_prime(3, GroundField::Qi).unwrap();
        assert_eq!(s, Splitting::Inert);
        // 41 = 9 + 2*16 splits in Q(sqrt(-2))
        let (s, places) = factor_rational_prime(41, GroundField::Qsqrt2).unwrap();
        assert_eq!(s, Splitting::Split);
        for pl in &places {
            assert_eq!(GroundField::Qsqrt2.norm(&pl.gen), BigInt::from(41));
        }
        // ramified odd primes: 3, 7, 11 in their fields
        for (f, p) in [
            (GroundField::Qsqrt3, 3),
            (GroundField::Qsqrt7, 7),
            (GroundField::Qsqrt11, 11),
        ] {
            let (s, places) = factor_rational_prime(p, f).unwrap();
            assert_eq!(s, Splitting::Ramified);
            assert_eq!(places.len(), 1);
            assert_eq!(f.norm(&places[0].gen), BigInt::from(p));
        }
    }

    #[test]
    fn splitting_matches_cornacchia_oracle() {
        // Brute-force representation oracle for split primes.
        let norm_form = |f: GroundField, p: u64| -> bool {
            let lim = (p as f64).sqrt() as i64 + 2;
            for x in -lim..=lim {
                for y in -lim..=lim {
                    if f.norm(&RingElement::from_i64(x, y)) == BigInt::from(p) {
                        return true;
                    }
                }
            }
            false
        };
        for f in COMPLEX_FIELDS {
            for p in sieve_primes(200).into_iter().filter(|&p| p > 2) {
                let (s, places) = factor_rational_prime(p, f).unwrap();
                let representable = norm_form(f, p);
                match s {
                    Splitting::Split | Splitting::Ramified => {
                        assert!(representable, "{f:?} {p}");
                        let prod = places
                            .iter()
                            .fold(RingElement::one(), |acc, pl| f.mul(&acc, &pl.gen));
                        let prod = if s == Splitting::Ramified {
                            f.mul(&prod, &places[0].gen)
                        } else {
                            prod
                        };
                        assert!(f.is_associate(&prod, &RingElement::from_int(p)));
                    }
                    Splitting::Inert => assert!(!representable, "{f:?} {p}"),
                }
            }
        }
    }

    #[test]
    fn recombination_below_10k() {
        for f in ALL_FIELDS {
            for p in sieve_primes(10_000).into_iter().filter(|&p| p > 2) {
                let (s, places) = factor_rational_prime(p, f).unwrap();
                let mut prod = RingElement::one();
                for pl in &places {
                    let e = if s == Splitting::Ramified { 2 } else { 1 };
                    for _ in 0..e {
                        prod = f.mul(&prod, &pl.gen);
                    }
                }
                if s == Splitting::Inert {
                    assert_eq!(prod, RingElement::from_int(p));
                } else {
                    assert!(
                        f.is_associate(&prod, &RingElement::from_int(p)),
                        "{f:?} {p} {s:?}"
                    );
                }
                // omega image must satisfy the minimal polynomial
                for pl in &places {
                    if pl.f == 1 {
                        let fp = Fp::new(p);
                        let (ss, tt) = f.omega_sq();
                        let z = pl.omega_image;
                        assert_eq!(
                            fp.sub(fp.mul(z, z), fp.add(fp.mul(fp.reduce_i64(ss), z), fp.reduce_i64(tt))),
                            0
                        );
                        // the generator must divide omega - z
                        assert!(pl.divides(&RingElement::new(BigInt::from(-(z as i128)), BigInt::one())));
                    }
                }
            }
        }
    }

    #[test]
    fn primary_associate_spot_values() {
        // 5+4i is already 1 mod 4
        let qi = GroundField::Qi;
        let p = primary_associate(qi, &RingElement::from_i64(5, 4)).unwrap();
        assert_eq!(p, RingElement::from_i64(5, 4));
        // oracle: enumerate all eight unit multiples / conjugates
        let mut count = 0;
        for u in qi.torsion_units() {
            for base in [RingElement::from_i64(5, 4), qi.conj(&RingElement::from_i64(5, 4))] {
                let c = qi.mul(&base, &u);
                let x4 = c.x.mod_floor(&BigInt::from(4));
                let y4 = c.y.mod_floor(&BigInt::from(4));
                if x4.is_one() && y4.is_zero() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 2); // 5+4i and 5-4i; tie broken to positive y

        // 3+4sqrt(-2) normalizes to -3+4sqrt(-2)
        let f2 = GroundField::Qsqrt2;
        let p = primary_associate(f2, &RingElement::from_i64(3, 4)).unwrap();
        assert_eq!(p, RingElement::from_i64(-3, 4));
        // -13 in Z -> 13
        let q = GroundField::Q;
        let p = primary_associate(q, &RingElement::from_i64(-13, 0)).unwrap();
        assert_eq!(p, RingElement::from_i64(13, 0));
        // 7 = 3 mod 4 has no positive primary associate over Q
        assert_eq!(
            primary_associate(q, &RingElement::from_i64(7, 0)),
            Err(Error::NoPrimaryAssociate)
        );
    }

    #[test]
    fn primary_associate_idempotent_and_norm_preserving() {
        for f in ALL_FIELDS {
            for p in sieve_primes(500).into_iter().filter(|&p| p % 2 == 1) {
                let (_, places) = factor_rational_prime(p, f).unwrap();
                for pl in places {
                    if let Ok(pr) = primary_associate(f, &pl.gen) {
                        assert_eq!(primary_associate(f, &pr).unwrap(), pr);
                        assert_eq!(f.norm(&pr).abs(), f.norm(&pl.gen).abs());
                        // associate-or-conjugate of the input
                        let is_assoc = f.is_associate(&pr, &pl.gen)
                            || f.is_associate(&pr, &f.conj(&pl.gen));
                        assert!(is_assoc);
                    }
                }
            }
        }
    }

    #[test]
    fn primary_exists_iff_one_mod_eight() {
        for f in [GroundField::Qi, GroundField::Qsqrt2] {
            for p in sieve_primes(2000).into_iter().filter(|&p| p > 2) {
                let (s, places) = factor_rational_prime(p, f).unwrap();
                if s != Splitting::Split {
                    continue;
                }
                let ok = primary_associate(f, &places[0].gen).is_ok();
                assert_eq!(ok, p % 8 == 1, "{f:?} {p}");
            }
        }
    }

    #[test]
    fn two_primary_spot_values() {
        let q = GroundField::Q;
        assert!(two_primary(q, &RingElement::from_i64(-3, 0)));
        assert!(!element_primary(q, &RingElement::from_i64(-3, 0)));
        assert!(element_primary(q, &RingElement::from_i64(13, 0)));
        let qi = GroundField::Qi;
        assert!(two_primary(qi, &RingElement::from_i64(1, 4)));
        assert!(two_primary(qi, &RingElement::from_i64(-1, -4)));
        assert!(!two_primary(qi, &RingElement::from_i64(1, 2)));
    }
}
