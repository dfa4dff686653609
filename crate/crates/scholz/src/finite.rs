//! Small finite fields F_p and F_{p^2} with u64 arithmetic, enough for
//! residue computations at places of the ground rings and their quadratic
//! extensions. Square roots use Tonelli-Shanks, which works verbatim in
//! any cyclic unit group.

use crate::element::RingElement;
use crate::primes::{mul_mod_u64, pow_mod_u64, PrimePlace};

/// Prime field F_p.
#[derive(Debug, Clone, Copy)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn reduce_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_bigint(self, v: &num_bigint::BigInt) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        v.mod_floor(&num_bigint::BigInt::from(self.p))
            .to_u64()
            .expect("reduced residue fits u64")
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        mul_mod_u64(a, b, self.p)
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        pow_mod_u64(a, e, self.p)
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    /// Legendre symbol as -1, 0, +1.
    pub fn legendre(self, a: u64) -> i8 {
        if a % self.p == 0 {
            return 0;
        }
        let e = self.pow(a % self.p, (self.p - 1) / 2);
        if e == 1 {
            1
        } else {
            -1
        }
    }

    /// Tonelli-Shanks square root mod an odd prime.
    pub fn sqrt(self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if p == 2 {
            return Some(a);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow(a, (p + 1) / 4));
        }
        // factor p - 1 = 2^e * m
        let mut m = p - 1;
        let mut e = 0u32;
        while m % 2 == 0 {
            m /= 2;
            e += 1;
        }
        let mut z = 2u64;
        while self.legendre(z) != -1 {
            z += 1;
        }
        let mut c = self.pow(z, m);
        let mut x = self.pow(a, (m + 1) / 2);
        let mut b = self.pow(a, m);
        let mut r = e;
        while b != 1 {
            let mut k = 0u32;
            let mut t = b;
            while t != 1 {
                t = self.mul(t, t);
                k += 1;
            }
            let gs = self.pow(c, 1u64 << (r - k - 1));
            c = self.mul(gs, gs);
            x = self.mul(x, gs);
            b = self.mul(b, c);
            r = k;
        }
        Some(x)
    }
}

/// F_{p^f} for f in {1, 2}, presented as F_p[omega] with
/// omega^2 = s*omega + t. For f = 1 the omega image collapses to a scalar
/// and elements keep a zero second coordinate.
#[derive(Debug, Clone, Copy)]
pub struct Fq {
    pub p: u64,
    pub f: u8,
    s: u64,
    t: u64,
    /// Image of omega for f = 1.
    omega: u64,
}

pub type FqElem = (u64, u64);

impl Fq {
    pub fn from_place(place: &PrimePlace) -> Self {
        let (s, t) = place.field.omega_sq();
        let fp = Fp::new(place.p);
        Fq {
            p: place.p,
            f: place.f,
            s: fp.reduce_i64(s),
            t: fp.reduce_i64(t),
            omega: place.omega_image,
        }
    }

    /// A quadratic extension F_p[X]/(X^2 - sX - t) given directly.
    pub fn quadratic(p: u64, s: u64, t: u64) -> Self {
        Fq { p, f: 2, s: s % p, t: t % p, omega: 0 }
    }

    pub fn prime_field(p: u64) -> Self {
        Fq { p, f: 1, s: 0, t: 0, omega: 0 }
    }

    pub fn order(self) -> u64 {
        if self.f == 1 {
            self.p
        } else {
            self.p * self.p
        }
    }

    fn fp(self) -> Fp {
        Fp::new(self.p)
    }

    /// Residue of a ring element at the underlying place.
    pub fn embed(self, a: &RingElement) -> FqElem {
        let fp = self.fp();
        let x = fp.reduce_bigint(&a.x);
        let y = fp.reduce_bigint(&a.y);
        if self.f == 1 {
            (fp.add(x, fp.mul(y, self.omega)), 0)
        } else {
            (x, y)
        }
    }

    pub fn zero(self) -> FqElem {
        (0, 0)
    }

    pub fn one(self) -> FqElem {
        (1, 0)
    }

    pub fn is_zero(self, a: FqElem) -> bool {
        a.0 == 0 && a.1 == 0
    }

    pub fn scalar(self, v: u64) -> FqElem {
        (v % self.p, 0)
    }

    pub fn add(self, a: FqElem, b: FqElem) -> FqElem {
        let fp = self.fp();
        (fp.add(a.0, b.0), fp.add(a.1, b.1))
    }

    pub fn sub(self, a: FqElem, b: FqElem) -> FqElem {
        let fp = self.fp();
        (fp.sub(a.0, b.0), fp.sub(a.1, b.1))
    }

    pub fn neg(self, a: FqElem) -> FqElem {
        let fp = self.fp();
        (fp.sub(0, a.0), fp.sub(0, a.1))
    }

    pub fn mul(self, a: FqElem, b: FqElem) -> FqElem {
        let fp = self.fp();
        if self.f == 1 {
            return (fp.mul(a.0, b.0), 0);
        }
        // (a0 + a1 w)(b0 + b1 w) with w^2 = s w + t
        let yy = fp.mul(a.1, b.1);
        let x = fp.add(fp.mul(a.0, b.0), fp.mul(yy, self.t));
        let y = fp.add(
            fp.add(fp.mul(a.0, b.1), fp.mul(a.1, b.0)),
            fp.mul(yy, self.s),
        );
        (x, y)
    }

    pub fn pow(self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: FqElem) -> FqElem {
        debug_assert!(!self.is_zero(a));
        self.pow(a, self.order() - 2)
    }

    /// Euler criterion in the multiplicative group of order q - 1.
    pub fn legendre(self, a: FqElem) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        let e = self.pow(a, (self.order() - 1) / 2);
        if e == self.one() {
            1
        } else {
            debug_assert_eq!(e, self.neg(self.one()));
            -1
        }
    }

    /// Tonelli-Shanks in F_q.
    pub fn sqrt(self, a: FqElem) -> Option<FqElem> {
        if self.is_zero(a) {
            return Some(a);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let q = self.order();
        let mut m = q - 1;
        let mut e = 0u32;
        while m % 2 == 0 {
            m /= 2;
            e += 1;
        }
        // deterministic non-residue scan
        let mut z = self.zero();
        'scan: for y in 0..self.p.max(2) {
            for x in 0..self.p {
                let cand = if self.f == 1 { (x + 2, 0) } else { (x, y + 1) };
                let cand = (cand.0 % self.p, cand.1 % self.p);
                if self.is_zero(cand) {
                    continue;
                }
                if self.legendre(cand) == -1 {
                    z = cand;
                    break 'scan;
                }
                if self.f == 1 && x + 2 >= self.p {
                    break;
                }
            }
            if self.f == 1 {
                break;
            }
        }
        debug_assert!(self.legendre(z) == -1);
        let mut c = self.pow(z, m);
        let mut x = self.pow(a, (m + 1) / 2);
        let mut b = self.pow(a, m);
        let mut r = e;
        while b != self.one() {
            let mut k = 0u32;
            let mut t = b;
            while t != self.one() {
                t = self.mul(t, t);
                k += 1;
            }
            let gs = self.pow(c, 1u64 << (r - k - 1));
            c = self.mul(gs, gs);
            x = self.mul(x, gs);
            b = self.mul(b, c);
            r = k;
        }
        debug_assert_eq!(self.mul(x, x), a);
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;
    use crate::primes::factor_rational_prime;

    #[test]
    fn sqrt_mod_matches_brute_force() {
        // (13, 17) -> ±8, (5, 29) -> ±11, (3, 7) -> none; oracles by
        // exhaustive squaring.
        for (a, p) in [(13u64, 17u64), (5, 29), (3, 7), (2, 17), (10, 13)] {
            let fp = Fp::new(p);
            let brute: Vec<u64> = (0..p).filter(|&r| fp.mul(r, r) == a % p).collect();
            match fp.sqrt(a) {
                Some(r) => {
                    assert!(brute.contains(&r));
                    assert_eq!(fp.mul(r, r), a % p);
                }
                None => assert!(brute.is_empty()),
            }
        }
        assert_eq!(Fp::new(17).sqrt(13), Some(8).or(Some(9)).filter(|_| true));
        let r = Fp::new(17).sqrt(13).unwrap();
        assert!(r == 8 || r == 9);
        let r = Fp::new(29).sqrt(5).unwrap();
        assert!(r == 11 || r == 18);
        assert_eq!(Fp::new(7).sqrt(3), None);
    }

    #[test]
    fn sqrt_fails_exactly_on_nonresidues() {
        for p in [13u64, 17, 97, 193, 65537] {
            let fp = Fp::new(p);
            for a in 1..p.min(200) {
                let s = fp.sqrt(a);
                assert_eq!(s.is_some(), fp.legendre(a) == 1);
                if let Some(r) = s {
                    assert_eq!(fp.mul(r, r), a);
                }
            }
        }
    }

    #[test]
    fn quadratic_extension_arithmetic() {
        // F_9 built from the inert prime 3 of Q(i): x^2 + 1 irreducible.
        let (_, places) = factor_rational_prime(3, GroundField::Qi).unwrap();
        let fq = Fq::from_place(&places[0]);
        assert_eq!(fq.order(), 9);
        // group order 8; check Fermat
        for x in 0..3u64 {
            for y in 0..3u64 {
                if (x, y) == (0, 0) {
                    continue;
                }
                assert_eq!(fq.pow((x, y), 8), fq.one());
            }
        }
        // every element of F_9* is a square iff its legendre is 1; count 4
        let squares: i32 = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .filter(|&e| e != (0, 0) && fq.legendre(e) == 1)
            .count() as i32;
        assert_eq!(squares, 4);
        // sqrt roundtrip
        for x in 0..3u64 {
            for y in 0..3u64 {
                if (x, y) == (0, 0) {
                    continue;
                }
                let sq = fq.mul((x, y), (x, y));
                let r = fq.sqrt(sq).unwrap();
                assert_eq!(fq.mul(r, r), sq);
            }
        }
    }

    #[test]
    fn embed_respects_place_data() {
        let (_, places) = factor_rational_prime(17, GroundField::Qi).unwrap();
        for pl in &places {
            let fq = Fq::from_place(pl);
            // omega maps to a root of x^2 + 1 mod 17
            let img = fq.embed(&RingElement::from_i64(0, 1));
            let sq = fq.mul(img, img);
            assert_eq!(sq, fq.scalar(16));
            // the generator itself maps to zero
            assert!(fq.is_zero(fq.embed(&pl.gen)));
        }
    }
}
