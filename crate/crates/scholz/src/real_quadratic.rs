//! Fundamental units and narrow/wide class groups of real quadratic
//! fields Q(sqrt(d)).
//!
//! Units come from the continued fraction of sqrt(d) (plus an exact cube
//! root test for the half-integral units when d = 1 mod 4). Class groups
//! are computed with reduced indefinite binary quadratic forms: the
//! rho-reduction cycles give h+, Gauss composition on cycle
//! representatives gives the group structure, everything in exact integer
//! arithmetic.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::finite::Fp;
use crate::primes::{factor_u64, is_prime_u64};
use crate::symbols::{jacobi_i64, Sign};

/// Fundamental unit eps_d of the maximal order of Q(sqrt(d)), stored in
/// the (1, omega_d) integral basis with omega_d = sqrt(d) or
/// (1+sqrt(d))/2.
#[derive(Debug, Clone, PartialEq)]
pub struct PellUnit {
    pub d: u64,
    pub x: BigInt,
    pub y: BigInt,
    pub norm: i8,
    /// log of the positive embedding; diagnostics only.
    pub regulator: f64,
}

impl PellUnit {
    /// Coordinates over (1, sqrt(d)) as (numerator pair, denominator 2 or 1).
    pub fn sqrt_basis(&self) -> (BigInt, BigInt, u8) {
        if self.d % 4 == 1 {
            // x + y*(1+sqrt d)/2 = (2x + y)/2 + (y/2) sqrt d
            (&self.x * 2 + &self.y, self.y.clone(), 2)
        } else {
            (self.x.clone(), self.y.clone(), 1)
        }
    }

    /// Image of the unit in F_q under sqrt(d) -> r.
    pub fn image_mod(&self, q: u64, r: u64) -> u64 {
        let fp = Fp::new(q);
        let (u, v, den) = self.sqrt_basis();
        let num = fp.add(fp.reduce_bigint(&u), fp.mul(fp.reduce_bigint(&v), r));
        if den == 2 {
            fp.mul(num, fp.inv(2))
        } else {
            num
        }
    }
}

fn ln_bigint(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 52 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 52;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Minimal solution of x^2 - d y^2 = ±1 by the continued fraction of
/// sqrt(d). Returns (x, y, norm).
fn pell_min_solution(d: u64) -> (BigInt, BigInt, i8) {
    let a0 = d.sqrt();
    debug_assert!(a0 * a0 != d);
    let d_big = BigInt::from(d);
    let mut p = BigInt::zero();
    let mut q = BigInt::one();
    let mut a = BigInt::from(a0);
    let mut h_prev = BigInt::one();
    let mut h = BigInt::from(a0);
    let mut k_prev = BigInt::zero();
    let mut k = BigInt::one();
    let mut i = 0u64;
    loop {
        i += 1;
        p = &a * &q - &p;
        q = (&d_big - &p * &p) / &q;
        a = (&p + a0) / &q;
        if q.is_one() {
            let norm = if i % 2 == 1 { -1 } else { 1 };
            return (h, k, norm);
        }
        let h_new = &a * &h + &h_prev;
        h_prev = std::mem::replace(&mut h, h_new);
        let k_new = &a * &k + &k_prev;
        k_prev = std::mem::replace(&mut k, k_new);
    }
}

/// Exact cube root of a + b sqrt(d) among half-integral units, if any:
/// solves ((x + y sqrt d)/2)^3 = a + b sqrt d using
/// 2a = x(N + d y^2), 2b = y(d y^2 + 3N) for N = ±1.
fn half_unit_cube_root(d: u64, a: &BigInt, b: &BigInt, norm: i8) -> Option<(BigInt, BigInt)> {
    let d_big = BigInt::from(d);
    let n = BigInt::from(norm);
    let target: BigInt = b * 2;
    // d y^3 + 3N y = 2b; y near cbrt(2b/d), search a small neighborhood.
    let approx = (target.clone() / &d_big).cbrt();
    for dy in -2i64..=2 {
        let y: BigInt = &approx + dy;
        if !y.is_positive() || y.is_even() {
            continue;
        }
        let lhs: BigInt = &d_big * &y * &y * &y + &n * 3 * &y;
        if lhs != target {
            continue;
        }
        // 2a = x (N + d y^2)
        let den: BigInt = &n + &d_big * &y * &y;
        if den.is_zero() {
            continue;
        }
        let num: BigInt = a * 2;
        let (x, rem) = num.div_rem(&den);
        if !rem.is_zero() || x.is_even() {
            continue;
        }
        // verify the norm equation x^2 - d y^2 = 4N
        if &x * &x - &d_big * &y * &y == &n * 4 {
            return Some((x, y));
        }
    }
    None
}

/// Least unit > 1 of the maximal order of Q(sqrt(d)), via the PQa
/// continued-fraction algorithm.
pub fn fundamental_unit(d: u64) -> Result<PellUnit> {
    {
        let cache = pell_cache().lock().unwrap();
        if let Some(u) = cache.get(&d) {
            return Ok(u.clone());
        }
    }
    if d < 2 {
        return Err(Error::NotSquarefree);
    }
    if factor_u64(d).iter().any(|(_, e)| *e > 1) {
        return Err(Error::NotSquarefree);
    }
    let (a, b, norm0) = pell_min_solution(d);
    let unit = if d % 4 == 1 {
        match half_unit_cube_root(d, &a, &b, norm0) {
            Some((x, y)) => {
                // norm of the half unit: x^2 - d y^2 = 4N with N^3 = norm0
                let n = norm0; // cube preserves sign
                let cx: BigInt = (&x - &y) / 2;
                let reg = regulator_half(d, &x, &y);
                PellUnit { d, x: cx, y, norm: n, regulator: reg }
            }
            None => {
                let cx: BigInt = &a - &b;
                let cy: BigInt = &b * 2;
                let reg = regulator_half(d, &(&a * 2), &(&b * 2));
                PellUnit { d, x: cx, y: cy, norm: norm0, regulator: reg }
            }
        }
    } else {
        let reg = {
            let scale: u32 = 40;
            let sd = (BigInt::from(d) << (2 * scale)).sqrt();
            let t: BigInt = (&a << scale) + &b * sd;
            ln_bigint(&t) - (scale as f64) * std::f64::consts::LN_2
        };
        PellUnit { d, x: a, y: b, norm: norm0, regulator: reg }
    };
    debug_assert_eq!(pell_norm(&unit), BigInt::from(unit.norm));
    pell_cache().lock().unwrap().insert(d, unit.clone());
    Ok(unit)
}

fn regulator_half(d: u64, x2: &BigInt, y2: &BigInt) -> f64 {
    // value (x2 + y2 sqrt d) / 2 with 2^40 fixed point
    let scale: u32 = 40;
    let sd = (BigInt::from(d) << (2 * scale)).sqrt();
    let t: BigInt = (x2 << scale) + y2 * sd;
    ln_bigint(&t) - (scale as f64 + 1.0) * std::f64::consts::LN_2
}

/// Norm of a unit in the (1, omega_d) basis.
fn pell_norm(u: &PellUnit) -> BigInt {
    if u.d % 4 == 1 {
        let t = BigInt::from((u.d - 1) / 4);
        &u.x * &u.x + &u.x * &u.y - &u.y * &u.y * t
    } else {
        &u.x * &u.x - &u.y * &u.y * BigInt::from(u.d)
    }
}

static PELL_CACHE: Lazy<Mutex<HashMap<u64, PellUnit>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn pell_cache() -> &'static Mutex<HashMap<u64, PellUnit>> {
    &PELL_CACHE
}

/// The residue symbol (eps_p / q) for primes p = q = 1 mod 4 with
/// (p/q) = +1: map sqrt(p) to a square root mod q and take the Legendre
/// symbol of the image. Independent of the root choice.
pub fn eps_symbol(p: u64, q: u64) -> Result<Sign> {
    if !is_prime_u64(p) || !is_prime_u64(q) || p == q {
        return Err(Error::BadResidueClass(format!("need distinct primes, got {p}, {q}")));
    }
    if p % 4 != 1 || q % 4 != 1 {
        return Err(Error::BadResidueClass(format!("{p}, {q} must be 1 mod 4")));
    }
    if jacobi_i64(p as i64, q)? != Sign::Plus {
        return Err(Error::NotSplit);
    }
    let unit = fundamental_unit(p)?;
    let fp = Fp::new(q);
    let r = fp.sqrt(p % q).expect("split by the Jacobi test");
    let img = unit.image_mod(q, r);
    debug_assert_eq!(
        fp.legendre(img),
        fp.legendre(unit.image_mod(q, fp.sub(0, r))),
        "symbol must not depend on the root choice"
    );
    Ok(Sign::from_i8(fp.legendre(img)))
}

// ---------------------------------------------------------------------
// Binary quadratic forms
// ---------------------------------------------------------------------

/// An integral binary quadratic form a x^2 + b xy + c y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl QuadForm {
    pub fn disc(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i128, y: i128) -> i128 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }
}

fn isqrt_i128(n: i128) -> i128 {
    debug_assert!(n >= 0);
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Reducedness for indefinite forms: 0 < b < sqrt(D) and
/// sqrt(D) - b < 2|a| < sqrt(D) + b.
pub fn is_reduced(f: &QuadForm, d: i128) -> bool {
    if f.b <= 0 || f.b * f.b >= d {
        return false;
    }
    let ta = 2 * f.a.abs();
    // sqrt(D) - b < 2|a|  <=>  D < (2|a| + b)^2
    if d >= (ta + f.b) * (ta + f.b) {
        return false;
    }
    // 2|a| < sqrt(D) + b  <=>  (2|a| - b)^2 < D when 2|a| > b
    if ta > f.b && (ta - f.b) * (ta - f.b) >= d {
        return false;
    }
    true
}

/// One rho-reduction step: (a, b, c) -> (c, b', c').
pub fn rho(f: &QuadForm, d: i128) -> QuadForm {
    let ca = f.c.abs();
    let s = isqrt_i128(d);
    // normalization target for b': the unique residue of -b mod 2|c| in
    // the right window
    let bp = if ca > s {
        // -|c| < b' <= |c|
        let m = (-f.b).rem_euclid(2 * ca);
        if m > ca {
            m - 2 * ca
        } else {
            m
        }
    } else {
        // s - 2|c| < b' <= s
        s - (s + f.b).rem_euclid(2 * ca)
    };
    let cp = (bp * bp - d) / (4 * f.c);
    debug_assert_eq!(bp * bp - 4 * f.c * cp, d);
    QuadForm { a: f.c, b: bp, c: cp }
}

pub fn reduce_form(f: &QuadForm, d: i128) -> QuadForm {
    let mut g = *f;
    let mut guard = 0;
    while !is_reduced(&g, d) {
        g = rho(&g, d);
        guard += 1;
        assert!(guard < 10_000, "reduction did not terminate for {f:?}");
    }
    g
}

/// Narrow class group data of a fundamental discriminant D > 0.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    pub disc: i64,
    pub h_plus: u64,
    pub h: u64,
    /// Invariant factors of Cl+ (ascending divisibility, factors > 1).
    pub narrow_invariants: Vec<u64>,
    /// Invariant factors of the wide class group.
    pub wide_invariants: Vec<u64>,
    /// Canonical representative of each cycle.
    pub reps: Vec<QuadForm>,
    pub principal: usize,
    pub negative_principal: usize,
    form_cycle: HashMap<QuadForm, usize>,
}

impl FormClassGroup {
    pub fn class_of(&self, f: &QuadForm) -> usize {
        let red = reduce_form(f, self.disc as i128);
        *self
            .form_cycle
            .get(&red)
            .expect("reduced form of the right discriminant")
    }

    /// Gauss composition on classes.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        let f1 = self.reps[i];
        let f2 = self.reps[j];
        let d = self.disc as i128;
        // find g2 ~ f2 primitively representing a value coprime to 2 a1
        let mut found: Option<(i128, i128)> = None;
        'search: for bound in 1..=24i128 {
            for x in -bound..=bound {
                for y in -bound..=bound {
                    if x.abs().max(y.abs()) != bound && bound > 1 {
                        continue;
                    }
                    if gcd_i128(x, y) != 1 {
                        continue;
                    }
                    let v = f2.eval(x, y);
                    if v != 0 && gcd_i128(v, 2 * f1.a) == 1 {
                        found = Some((x, y));
                        break 'search;
                    }
                }
            }
        }
        let (x, y) = found.expect("primitive value coprime to 2a1 exists");
        // complete (x, y) to a unimodular matrix [[x, r], [y, s]]
        let (_, s0, t0) = xgcd_i128(x, y);
        let (r, s) = (-t0, s0);
        debug_assert_eq!(x * s - y * r, 1);
        let a2 = f2.eval(x, y);
        let b2 = 2 * (f2.a * x * r + f2.c * y * s) + f2.b * (x * s + y * r);
        let c2 = f2.eval(r, s);
        debug_assert_eq!(b2 * b2 - 4 * a2 * c2, d);
        // united forms: B = b1 mod 2a1, B = b2 mod 2a2, A = a1 a2
        let a1 = f1.a;
        let b1 = f1.b;
        let m = a2.abs();
        let t = ((b2 - b1).div_euclid(2)).rem_euclid(m) * inv_mod_i128(a1.rem_euclid(m), m) % m;
        let b = b1 + 2 * a1 * t;
        let a = a1 * a2;
        debug_assert_eq!((b * b - d).rem_euclid(4 * a.abs()), 0);
        let c = (b * b - d) / (4 * a);
        self.class_of(&QuadForm { a, b, c })
    }

    fn pow(&self, i: usize, e: u64) -> usize {
        let mut acc = self.principal;
        for _ in 0..e {
            acc = self.compose(acc, i);
        }
        acc
    }

    /// Order of a class element.
    pub fn class_order(&self, i: usize) -> u64 {
        let n = self.h_plus;
        let mut e = n;
        for (q, _) in factor_u64(n) {
            while e % q == 0 && self.pow(i, e / q) == self.principal {
                e /= q;
            }
        }
        e
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i128(b, a % b)
    }
}

fn xgcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (g, s, t) = xgcd_i128(b, a % b);
    (g, t, s - (a / b) * t)
}

fn inv_mod_i128(a: i128, m: i128) -> i128 {
    let (g, s, _) = xgcd_i128(a, m);
    debug_assert_eq!(g, 1);
    s.rem_euclid(m)
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d <= 1 {
        return false;
    }
    let squarefree = |n: u64| factor_u64(n).iter().all(|(_, e)| *e == 1);
    if d % 4 == 1 {
        squarefree(d as u64)
    } else if d % 4 == 0 {
        let q = d / 4;
        let r = q.rem_euclid(4);
        (r == 2 || r == 3) && squarefree(q as u64)
    } else {
        false
    }
}

/// Enumerate all reduced forms of discriminant D, partition them into
/// rho-cycles, and compute the narrow and wide group structures by Gauss
/// composition.
pub fn narrow_class_group(disc: i64) -> Result<FormClassGroup> {
    {
        let cache = form_cache().lock().unwrap();
        if let Some(g) = cache.get(&disc) {
            return Ok(g.clone());
        }
    }
    if !is_fundamental_discriminant(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let d = disc as i128;
    let s = isqrt_i128(d);
    // enumerate reduced forms
    let mut forms: Vec<QuadForm> = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let m4 = d - b * b;
        if m4 % 4 == 0 {
            let m = m4 / 4; // -a c = m
            let mut e = 1;
            while e * e <= m {
                if m % e == 0 {
                    for aa in [e, m / e] {
                        for a in [aa, -aa] {
                            let c = -m / a;
                            let f = QuadForm { a, b, c };
                            if is_reduced(&f, d) && !forms.contains(&f) {
                                forms.push(f);
                            }
                        }
                    }
                }
                e += 1;
            }
        }
        b += 2;
    }
    // partition into cycles
    let mut form_cycle: HashMap<QuadForm, usize> = HashMap::new();
    let mut reps: Vec<QuadForm> = Vec::new();
    for &f in &forms {
        if form_cycle.contains_key(&f) {
            continue;
        }
        let idx = reps.len();
        let mut cycle = vec![f];
        let mut cur = rho(&f, d);
        let mut guard = 0;
        while cur != f {
            debug_assert!(is_reduced(&cur, d));
            cycle.push(cur);
            cur = rho(&cur, d);
            guard += 1;
            assert!(guard < 1_000_000, "cycle walk did not close");
        }
        // canonical representative: lexicographically smallest (|a|, b, sign a)
        let rep = *cycle
            .iter()
            .min_by_key(|g| (g.a.abs(), g.b, g.a.signum()))
            .unwrap();
        reps.push(rep);
        for g in cycle {
            form_cycle.insert(g, idx);
        }
    }
    let h_plus = reps.len() as u64;
    // principal and negative principal classes
    let b0 = if (s - d).rem_euclid(2) == 0 { s } else { s - 1 };
    let principal_form = QuadForm { a: 1, b: b0, c: (b0 * b0 - d) / 4 };
    let negative_form = QuadForm { a: -1, b: b0, c: (d - b0 * b0) / 4 };
    let mut group = FormClassGroup {
        disc,
        h_plus,
        h: 0,
        narrow_invariants: vec![],
        wide_invariants: vec![],
        reps,
        principal: 0,
        negative_principal: 0,
        form_cycle,
    };
    group.principal = group.class_of(&principal_form);
    group.negative_principal = group.class_of(&negative_form);

    // group structures
    let n = h_plus as usize;
    let narrow_invariants = {
        let mul = |i: usize, j: usize| group.compose(i, j);
        abelian_invariants(n, group.principal, &mul)
    };
    group.narrow_invariants = narrow_invariants;
    // wide group: quotient by <negative principal>
    let neg = group.negative_principal;
    if neg == group.principal {
        group.h = h_plus;
        group.wide_invariants = group.narrow_invariants.clone();
    } else {
        // cosets {i, i*neg}
        let mut coset_of = vec![usize::MAX; n];
        let mut coset_reps = Vec::new();
        for i in 0..n {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let idx = coset_reps.len();
            coset_of[i] = idx;
            coset_of[group.compose(i, neg)] = idx;
            coset_reps.push(i);
        }
        let h = coset_reps.len();
        group.h = h as u64;
        let (wide, hval) = {
            let qmul =
                |i: usize, j: usize| coset_of[group.compose(coset_reps[i], coset_reps[j])];
            let qid = coset_of[group.principal];
            (abelian_invariants(h, qid, &qmul), h as u64)
        };
        group.h = hval;
        group.wide_invariants = wide;
    }
    form_cache().lock().unwrap().insert(disc, group.clone());
    Ok(group)
}

static FORM_CACHE: Lazy<Mutex<HashMap<i64, FormClassGroup>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn form_cache() -> &'static Mutex<HashMap<i64, FormClassGroup>> {
    &FORM_CACHE
}

/// Invariant factors (ascending divisibility, nontrivial) of a finite
/// abelian group given by a multiplication table oracle. Uses the
/// order-counting characterization of abelian groups.
pub fn abelian_invariants(n: usize, id: usize, mul: &dyn Fn(usize, usize) -> usize) -> Vec<u64> {
    if n <= 1 {
        return vec![];
    }
    // element orders
    let order_of = |i: usize| -> u64 {
        let mut e = n as u64;
        for (q, _) in factor_u64(n as u64) {
            loop {
                if e % q != 0 {
                    break;
                }
                // i^(e/q)
                let mut acc = id;
                for _ in 0..e / q {
                    acc = mul(acc, i);
                }
                if acc == id {
                    e /= q;
                } else {
                    break;
                }
            }
        }
        e
    };
    let orders: Vec<u64> = (0..n).map(order_of).collect();
    // per-prime partitions
    let mut parts: Vec<Vec<u32>> = Vec::new();
    let mut primes: Vec<u64> = Vec::new();
    for (q, _) in factor_u64(n as u64) {
        // a_j = #elements with q-part of order dividing q^j
        let qpart = |o: u64| -> u32 {
            let mut v = 0u32;
            let mut o = o;
            while o % q == 0 {
                v += 1;
                o /= q;
            }
            v
        };
        let max_v = orders.iter().map(|&o| qpart(o)).max().unwrap_or(0);
        let mut lambda: Vec<u32> = Vec::new();
        let count_le = |j: u32| orders.iter().filter(|&&o| qpart(o) <= j).count() as u64;
        let mut prev_count = count_le(0);
        for j in 1..=max_v {
            let cj = count_le(j);
            // number of lambda_i >= j equals log_q(c_j / c_{j-1})
            let ratio = cj / prev_count;
            let mut k = 0u32;
            let mut r = ratio;
            while r % q == 0 {
                r /= q;
                k += 1;
            }
            debug_assert_eq!(r, 1, "order counts must be q-power ratios");
            lambda.push(k);
            prev_count = cj;
        }
        // lambda[j-1] = number of parts >= j; convert to partition
        let mut partition: Vec<u32> = Vec::new();
        if let Some(&maxparts) = lambda.first() {
            for i in 0..maxparts {
                let size = lambda.iter().filter(|&&cnt| cnt > i).count() as u32;
                partition.push(size);
            }
        }
        partition.sort_unstable_by(|a, b| b.cmp(a));
        parts.push(partition);
        primes.push(q);
    }
    // combine: largest-with-largest
    let rows = parts.iter().map(|p| p.len()).max().unwrap_or(0);
    let mut invariants: Vec<u64> = Vec::new();
    for r in 0..rows {
        let mut v = 1u64;
        for (pi, q) in parts.iter().zip(&primes) {
            if r < pi.len() {
                v *= q.pow(pi[r]);
            }
        }
        invariants.push(v);
    }
    invariants.sort_unstable();
    debug_assert_eq!(invariants.iter().product::<u64>(), n as u64);
    invariants
}

/// Assembled wide-field data for a fundamental discriminant.
pub fn wide_class_data(disc: i64) -> Result<(u64, u64, u64, i8)> {
    let g = narrow_class_group(disc)?;
    let d = if disc % 4 == 1 { disc as u64 } else { disc as u64 / 4 };
    let eps = fundamental_unit(d)?;
    // h+ = h iff N eps = -1
    let expected = if eps.norm == -1 { g.h } else { 2 * g.h };
    assert_eq!(g.h_plus, expected, "h+/h relation violated at D = {disc}");
    Ok((g.h, g.h % 4, g.h % 8, eps.norm))
}
