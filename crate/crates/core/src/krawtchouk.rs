//! Krawtchouk polynomials `K_{n,q,j}(x) = sum_l (-1)^l (q-1)^(j-l) C(x,l) C(n-x,j-l)`.

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{binom_int, Factorials, Int, Rat, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KrawError {
    #[error("alphabet size q = {0} must be at least 2")]
    Alphabet(i64),
    #[error("degree j = {j} outside 0..={n}")]
    Degree { n: i64, j: i64 },
    #[error("point x = {x} outside 0..={n}")]
    Point { n: i64, x: i64 },
    #[error("partial sum length s = {0} must be positive")]
    Length(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KrawSpec {
    pub n: i64,
    pub q: i64,
    pub j: i64,
}

impl KrawSpec {
    pub fn new(n: i64, q: i64, j: i64) -> Result<Self, KrawError> {
        if q < 2 {
            return Err(KrawError::Alphabet(q));
        }
        if j < 0 || j > n {
            return Err(KrawError::Degree { n, j });
        }
        Ok(KrawSpec { n, q, j })
    }
}

/// Integer value of `K_{n,q,j}(x)` for any integer `x`, using the
/// convention `C(m, l) = 0` for `0 <= m < l`. No range checks.
pub fn kraw_int(n: i64, q: i64, j: i64, x: i64) -> Int {
    let mut acc = Int::zero();
    let qm1 = Int::from(q - 1);
    for l in 0..=j {
        let a = binom_int(x, l);
        if a.is_zero() {
            continue;
        }
        let b = binom_int(n - x, j - l);
        if b.is_zero() {
            continue;
        }
        let term = num_traits::pow(qm1.clone(), (j - l) as usize) * a * b;
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn kraw_eval(spec: KrawSpec, x: i64) -> Result<Rat, KrawError> {
    if x < 0 || x > spec.n {
        return Err(KrawError::Point { n: spec.n, x });
    }
    Ok(Rat::from_integer(kraw_int(spec.n, spec.q, spec.j, x)))
}

/// `K_{n,q,j}` as a polynomial of degree `j` in `x`.
pub fn kraw_poly(spec: KrawSpec) -> UniPoly {
    let x = UniPoly::x();
    let n_minus_x = &UniPoly::constant(Rat::from_integer(spec.n.into())) - &x;
    let mut acc = UniPoly::zero();
    for l in 0..=spec.j as usize {
        let weight = num_traits::pow(Int::from(spec.q - 1), spec.j as usize - l);
        let sign = if l % 2 == 0 { weight } else { -weight };
        let term = &x.binom(l) * &n_minus_x.binom(spec.j as usize - l);
        acc = &acc + &term.scale(&Rat::from_integer(sign));
    }
    acc
}

/// `sum_{l<s} K_{n,q,l}(x)`.
pub fn kraw_partial_sum(n: i64, q: i64, s: i64, x: i64) -> Result<Rat, KrawError> {
    if s < 1 {
        return Err(KrawError::Length(s));
    }
    if q < 2 {
        return Err(KrawError::Alphabet(q));
    }
    if x < 0 || x > n {
        return Err(KrawError::Point { n, x });
    }
    Ok(Rat::from_integer(
        (0..s).map(|l| kraw_int(n, q, l, x)).sum::<Int>(),
    ))
}
