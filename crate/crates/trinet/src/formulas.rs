//! Closed forms and recurrences for pentagon and hexagon counts.
//!
//! The counts obey an order-2 linear recurrence `S(n) = 2 S(n-1) - S(n-2) +
//! forcing(n)`, where the forcing term counts the polygons of the class with
//! vertices on both sides meeting at corner `O`. Both the counts and the
//! forcing terms also have closed forms given as separate polynomials in `k`
//! for even `n = 2k` and odd `n = 2k + 1`, with small rational prefactors.
//!
//! Everything here is exact 128-bit integer arithmetic: rational prefactors
//! are applied as multiply-then-divide with the remainder asserted zero, and
//! every polynomial evaluation is overflow-checked.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::net::NetSize;

/// An exact nonnegative polygon count. Backed by `i128`, which holds every
/// hexagon count up to nets of order well beyond `10^6`; the 64-bit range is
/// already exceeded near order `4.5 * 10^3`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExactCount(i128);

impl ExactCount {
    pub const ZERO: ExactCount = ExactCount(0);

    pub fn new(value: i128) -> ExactCount {
        assert!(value >= 0, "counts are nonnegative, got {value}");
        ExactCount(value)
    }

    pub fn get(self) -> i128 {
        self.0
    }
}

impl From<u64> for ExactCount {
    fn from(value: u64) -> ExactCount {
        ExactCount(value as i128)
    }
}

impl fmt::Display for ExactCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

// Counts can exceed what JSON numbers carry losslessly, so they serialize as
// decimal strings.
impl Serialize for ExactCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for ExactCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<ExactCount, D::Error> {
        struct CountVisitor;

        impl Visitor<'_> for CountVisitor {
            type Value = ExactCount;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or decimal string")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactCount, E> {
                let value: i128 = v.parse().map_err(E::custom)?;
                if value < 0 {
                    return Err(E::custom("count must be nonnegative"));
                }
                Ok(ExactCount(value))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactCount, E> {
                Ok(ExactCount(v as i128))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactCount, E> {
                if v < 0 {
                    return Err(E::custom("count must be nonnegative"));
                }
                Ok(ExactCount(v as i128))
            }
        }

        deserializer.deserialize_any(CountVisitor)
    }
}

/// Horner evaluation with overflow checks; coefficients in ascending degree.
fn eval_poly(coeffs: &[i128], x: i128) -> i128 {
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc
            .checked_mul(x)
            .and_then(|v| v.checked_add(c))
            .expect("polynomial evaluation exceeds 128-bit range");
    }
    acc
}

/// Divides exactly, panicking on a nonzero remainder. A remainder here means
/// a transcribed polynomial is wrong, never a bad input.
fn exact_div(numerator: i128, divisor: i128) -> i128 {
    assert_eq!(
        numerator % divisor,
        0,
        "inexact division: {numerator} is not divisible by {divisor}"
    );
    numerator / divisor
}

/// A parity-split closed form: an integer polynomial in `k` and an exact
/// divisor for each parity, with `n = 2k + 1` selecting the odd polynomial
/// and `n = 2k` the even one.
#[derive(Clone, Copy, Debug)]
pub struct ParityForm {
    /// Coefficients for odd `n = 2k + 1`, ascending degree in `k`.
    pub odd: &'static [i128],
    pub odd_divisor: i128,
    /// Coefficients for even `n = 2k`, ascending degree in `k`.
    pub even: &'static [i128],
    pub even_divisor: i128,
}

impl ParityForm {
    /// Evaluates the form at net order `n`, checking the division is exact
    /// and the result nonnegative.
    pub fn eval(&self, n: NetSize) -> ExactCount {
        let n = n.get() as i128;
        let (coeffs, divisor, k) = if n % 2 == 1 {
            (self.odd, self.odd_divisor, (n - 1) / 2)
        } else {
            (self.even, self.even_divisor, n / 2)
        };
        ExactCount::new(exact_div(eval_poly(coeffs, k), divisor))
    }

    /// Remainder of the numerator modulo the divisor at order `n`; zero for
    /// a correctly transcribed form. Used by validation to report divisibility
    /// without panicking.
    pub fn remainder(&self, n: NetSize) -> i128 {
        let n = n.get() as i128;
        let (coeffs, divisor, k) = if n % 2 == 1 {
            (self.odd, self.odd_divisor, (n - 1) / 2)
        } else {
            (self.even, self.even_divisor, n / 2)
        };
        eval_poly(coeffs, k).rem_euclid(divisor)
    }
}

/// Convex pentagon count: parity-split quintics over 10.
pub const PENTAGON_FORM: ParityForm = ParityForm {
    odd: &[0, -2, -10, 5, 25, 12],
    odd_divisor: 10,
    even: &[0, 3, 5, -15, -5, 12],
    even_divisor: 10,
};

/// Convex hexagon count: parity-split sextics over 60.
pub const HEXAGON_FORM: ParityForm = ParityForm {
    odd: &[0, -4, -3, 10, 25, 24, 8],
    odd_divisor: 60,
    even: &[0, 0, -3, 0, -5, 0, 8],
    even_divisor: 60,
};

/// Pentagons with vertices on both sides meeting at corner `O` (the forcing
/// term of the pentagon recurrence): parity-split cubics over 2.
pub const PENTAGON_FORCING_FORM: ParityForm = ParityForm {
    odd: &[0, -3, -3, 12],
    odd_divisor: 2,
    even: &[0, 9, -21, 12],
    even_divisor: 2,
};

/// Hexagons with vertices on both sides meeting at corner `O` (the forcing
/// term of the hexagon recurrence): `k^4` for odd `n`, a quartic over 2 for
/// even `n`.
pub const HEXAGON_FORCING_FORM: ParityForm = ParityForm {
    odd: &[0, 0, 0, 0, 1],
    odd_divisor: 1,
    even: &[0, -1, 3, -4, 2],
    even_divisor: 2,
};

pub fn pentagon_closed(n: NetSize) -> ExactCount {
    PENTAGON_FORM.eval(n)
}

pub fn hexagon_closed(n: NetSize) -> ExactCount {
    HEXAGON_FORM.eval(n)
}

/// Closed form for the pentagon forcing term; equals the oracle's count of
/// pentagons touching both sides `OA` and `OB`.
pub fn pentagon_forcing_closed(n: NetSize) -> ExactCount {
    PENTAGON_FORCING_FORM.eval(n)
}

/// Closed form for the hexagon forcing term; equals the oracle's count of
/// hexagons touching both sides `OA` and `OB`.
pub fn hexagon_forcing_closed(n: NetSize) -> ExactCount {
    HEXAGON_FORCING_FORM.eval(n)
}

/// The recurrence `S(n) = 2 S(n-1) - S(n-2) + forcing(n)` for `n >= 3`, with
/// given values at `n = 1` and `n = 2`.
#[derive(Clone, Copy, Debug)]
pub struct Order2Recurrence<F> {
    pub base1: ExactCount,
    pub base2: ExactCount,
    pub forcing: F,
}

impl Order2Recurrence<fn(NetSize) -> ExactCount> {
    /// The pentagon recurrence: zero bases, pentagon forcing.
    pub fn pentagon() -> Self {
        Order2Recurrence {
            base1: ExactCount::ZERO,
            base2: ExactCount::ZERO,
            forcing: pentagon_forcing_closed,
        }
    }

    /// The hexagon recurrence: zero bases, hexagon forcing.
    pub fn hexagon() -> Self {
        Order2Recurrence {
            base1: ExactCount::ZERO,
            base2: ExactCount::ZERO,
            forcing: hexagon_forcing_closed,
        }
    }
}

impl<F: Fn(NetSize) -> ExactCount> Order2Recurrence<F> {
    /// Telescopes the recurrence to `S(n)` in `O(n)` exact additions; no
    /// closed form is consulted.
    pub fn solve(&self, n: NetSize) -> ExactCount {
        self.values_to(n)
            .last()
            .expect("range 1..=n is never empty")
            .1
    }

    /// Streams `(m, S(m))` for `m = 1..=n` without materializing the sequence.
    pub fn values_to(&self, n: NetSize) -> RecurrenceIter<'_, F> {
        RecurrenceIter {
            rec: self,
            next_n: 1,
            n_max: n.get(),
            prev: 0,
            prev2: 0,
        }
    }
}

/// Iterator over successive values of an [`Order2Recurrence`].
pub struct RecurrenceIter<'a, F> {
    rec: &'a Order2Recurrence<F>,
    next_n: u32,
    n_max: u32,
    prev: i128,
    prev2: i128,
}

impl<F: Fn(NetSize) -> ExactCount> Iterator for RecurrenceIter<'_, F> {
    type Item = (u32, ExactCount);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next_n > self.n_max {
            return None;
        }
        let n = self.next_n;
        let value = match n {
            1 => self.rec.base1.get(),
            2 => self.rec.base2.get(),
            _ => {
                let forced = (self.rec.forcing)(NetSize::new(n).unwrap()).get();
                (2 * self.prev)
                    .checked_sub(self.prev2)
                    .and_then(|v| v.checked_add(forced))
                    .expect("recurrence value exceeds 128-bit range")
            }
        };
        self.prev2 = self.prev;
        self.prev = value;
        self.next_n += 1;
        Some((n, ExactCount::new(value)))
    }
}

/// Solves an order-2 recurrence with forcing at order `n` by iteration.
pub fn solve_order2<F: Fn(NetSize) -> ExactCount>(
    rec: &Order2Recurrence<F>,
    n: NetSize,
) -> ExactCount {
    rec.solve(n)
}

/// Pentagon count via the recurrence route.
pub fn pentagon_recurrence(n: NetSize) -> ExactCount {
    Order2Recurrence::pentagon().solve(n)
}

/// Hexagon count via the recurrence route.
pub fn hexagon_recurrence(n: NetSize) -> ExactCount {
    Order2Recurrence::hexagon().solve(n)
}
