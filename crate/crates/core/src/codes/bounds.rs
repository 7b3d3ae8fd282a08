use std::fmt;

use num_traits::Zero;

use crate::exact::{binom_int, Int};

fn ball(n: i64, q: i64, radius: i64) -> Int {
    (0..=radius)
        .map(|k| binom_int(n, k) * num_traits::pow(Int::from(q - 1), k as usize))
        .sum()
}

/// Rao lower bound on the size of an OA of strength `t` in `H(n, q)`.
pub fn rao_bound(n: i64, q: i64, t: i64) -> Int {
    if t <= 0 {
        return Int::from(1);
    }
    let e = (t + 1) / 2;
    if t % 2 == 0 {
        ball(n, q, e)
    } else {
        ball(n, q, e - 1) + binom_int(n - 1, e - 1) * num_traits::pow(Int::from(q - 1), e as usize)
    }
}

/// Upper bound on the size of a code with `s` distinct nonzero distances.
pub fn degree_upper_bound(n: i64, q: i64, s: i64) -> Int {
    ball(n, q, s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TightnessClass {
    TightOdd,
    NontightOdd,
    TightEven,
    NontightEven,
}

impl TightnessClass {
    pub fn classify(size: &Int, n: i64, q: i64, t: i64) -> Self {
        let tight = *size == rao_bound(n, q, t);
        match (t % 2 == 1, tight) {
            (true, true) => TightnessClass::TightOdd,
            (true, false) => TightnessClass::NontightOdd,
            (false, true) => TightnessClass::TightEven,
            (false, false) => TightnessClass::NontightEven,
        }
    }

    pub fn is_tight(self) -> bool {
        matches!(self, TightnessClass::TightOdd | TightnessClass::TightEven)
    }
}

impl fmt::Display for TightnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TightnessClass::TightOdd => "tight (odd strength)",
            TightnessClass::NontightOdd => "non-tight (odd strength)",
            TightnessClass::TightEven => "tight (even strength)",
            TightnessClass::NontightEven => "non-tight (even strength)",
        })
    }
}

/// Whether `a` divides `b`; zero divides only zero.
pub fn divides(a: &Int, b: &Int) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}
