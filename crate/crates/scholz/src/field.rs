//! The six ground fields: Q and the five norm-Euclidean imaginary
//! quadratic fields. All have class number one, which is what makes the
//! rest of the crate work over a PID.

use crate::element::RingElement;
use crate::error::{Error, Result};

/// Ground field identifier. The ring of integers is Z[omega] with
/// omega = 0, i, sqrt(-2) or (1+sqrt(-d))/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroundField {
    Q,
    Qi,
    Qsqrt2,
    Qsqrt3,
    Qsqrt7,
    Qsqrt11,
}

pub const ALL_FIELDS: [GroundField; 6] = [
    GroundField::Q,
    GroundField::Qi,
    GroundField::Qsqrt2,
    GroundField::Qsqrt3,
    GroundField::Qsqrt7,
    GroundField::Qsqrt11,
];

pub const COMPLEX_FIELDS: [GroundField; 5] = [
    GroundField::Qi,
    GroundField::Qsqrt2,
    GroundField::Qsqrt3,
    GroundField::Qsqrt7,
    GroundField::Qsqrt11,
];

impl GroundField {
    /// Minimal polynomial of omega: omega^2 = s*omega + t.
    pub fn omega_sq(self) -> (i64, i64) {
        match self {
            GroundField::Q => (0, 0),
            GroundField::Qi => (0, -1),
            GroundField::Qsqrt2 => (0, -2),
            GroundField::Qsqrt3 => (1, -1),
            GroundField::Qsqrt7 => (1, -2),
            GroundField::Qsqrt11 => (1, -3),
        }
    }

    /// Field discriminant.
    pub fn discriminant(self) -> i64 {
        match self {
            GroundField::Q => 1,
            GroundField::Qi => -4,
            GroundField::Qsqrt2 => -8,
            GroundField::Qsqrt3 => -3,
            GroundField::Qsqrt7 => -7,
            GroundField::Qsqrt11 => -11,
        }
    }

    /// Order of the torsion unit group.
    pub fn torsion_order(self) -> u32 {
        match self {
            GroundField::Qi => 4,
            GroundField::Qsqrt3 => 6,
            _ => 2,
        }
    }

    pub fn is_complex(self) -> bool {
        self != GroundField::Q
    }

    /// All torsion units, starting from 1 and going through powers of the
    /// generator returned by `torsion_generator`.
    pub fn torsion_units(self) -> Vec<RingElement> {
        let gen = self.torsion_generator();
        let mut units = vec![RingElement::one()];
        let mut cur = gen.clone();
        while !cur.is_one() {
            units.push(cur.clone());
            cur = self.mul(&cur, &gen);
        }
        units
    }

    /// A generator of the torsion unit group: -1, i, or the sixth root of
    /// unity (1+sqrt(-3))/2.
    pub fn torsion_generator(self) -> RingElement {
        match self {
            GroundField::Qi => RingElement::from_i64(0, 1),
            GroundField::Qsqrt3 => RingElement::from_i64(0, 1),
            _ => RingElement::from_i64(-1, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroundField::Q => "q",
            GroundField::Qi => "qi",
            GroundField::Qsqrt2 => "qsqrt-2",
            GroundField::Qsqrt3 => "qsqrt-3",
            GroundField::Qsqrt7 => "qsqrt-7",
            GroundField::Qsqrt11 => "qsqrt-11",
        }
    }

    /// Symbol used for omega when printing and parsing elements.
    pub fn omega_symbol(self) -> char {
        match self {
            GroundField::Qi => 'i',
            _ => 'w',
        }
    }

    pub fn parse_name(s: &str) -> Result<GroundField> {
        match s.to_ascii_lowercase().as_str() {
            "q" => Ok(GroundField::Q),
            "qi" | "q(i)" | "gauss" => Ok(GroundField::Qi),
            "qsqrt-2" | "qsqrt2" | "q(sqrt-2)" => Ok(GroundField::Qsqrt2),
            "qsqrt-3" | "qsqrt3" | "q(sqrt-3)" | "eisenstein" => Ok(GroundField::Qsqrt3),
            "qsqrt-7" | "qsqrt7" | "q(sqrt-7)" => Ok(GroundField::Qsqrt7),
            "qsqrt-11" | "qsqrt11" | "q(sqrt-11)" => Ok(GroundField::Qsqrt11),
            other => Err(Error::Parse(format!("unknown field `{other}`"))),
        }
    }

    /// Debug-build sanity check: the Minkowski bound argument for h = 1.
    /// Every ideal class contains an ideal of norm <= (2/pi) sqrt(|d|); we
    /// verify each such norm is attained by a principal ideal.
    #[cfg(debug_assertions)]
    pub(crate) fn check_class_number_one(self) {
        if self == GroundField::Q {
            return;
        }
        let bound = (2.0 / std::f64::consts::PI) * (self.discriminant().abs() as f64).sqrt();
        let mut n = 2u64;
        while (n as f64) <= bound {
            // Look for an element of norm n with small coordinates.
            let mut found = false;
            'outer: for x in -4i64..=4 {
                for y in -4i64..=4 {
                    let e = RingElement::from_i64(x, y);
                    if self.norm(&e) == n.into() {
                        found = true;
                        break 'outer;
                    }
                }
            }
            // Norm n may simply not be represented (no ideal of that norm
            // unless the rational prime below is non-inert).
            let represented = crate::primes::norm_is_attained(self, n);
            assert!(
                !represented || found,
                "class number check failed for {:?} at norm {n}",
                self
            );
            n += 1;
        }
    }
}
