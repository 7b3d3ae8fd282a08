use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::{factorial, Factorials, Rat};

/// Dense univariate polynomial; `coeffs[i]` multiplies `x^i`. The highest
/// stored coefficient is nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        UniPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> Rat {
        self.eval(&Rat::from_integer(x.into()))
    }

    pub fn scale(&self, k: &Rat) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &UniPoly) -> UniPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(), |acc, c| &(&acc * other) + &UniPoly::constant(c.clone()))
    }

    /// Divides by a monic linear factor `x - root`, returning the quotient
    /// and the remainder.
    pub fn div_linear(&self, root: &Rat) -> (UniPoly, Rat) {
        if self.is_zero() {
            return (UniPoly::zero(), Rat::zero());
        }
        let mut q = vec![Rat::zero(); self.coeffs.len() - 1];
        let mut carry = Rat::zero();
        for i in (0..self.coeffs.len()).rev() {
            let v = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return (UniPoly::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }
}

impl Factorials for UniPoly {
    fn falling(&self, i: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for k in 0..i {
            let shifted = self - &UniPoly::constant(Rat::from_integer(k.into()));
            acc = &acc * &shifted;
        }
        acc
    }

    fn binom(&self, l: usize) -> UniPoly {
        self.falling(l)
            .scale(&Rat::from_integer(factorial(l as u64)).recip())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};
    use proptest::prelude::*;

    #[test]
    fn binom_of_indeterminate() {
        let x = UniPoly::x();
        assert_eq!(x.binom(0), UniPoly::one());
        assert_eq!(
            x.binom(2),
            UniPoly::new(vec![rat(0), rat_frac(-1, 2), rat_frac(1, 2)])
        );
        assert_eq!(x.falling(1), x);
        assert_eq!(x.binom(3).eval_i64(7), rat(35));
    }

    #[test]
    fn display_and_degree() {
        let p = UniPoly::from_i64(&[2, 0, -3, 1]);
        assert_eq!(p.to_string(), "x^3 - 3x^2 + 2");
        assert_eq!(p.degree(), Some(3));
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(UniPoly::from_i64(&[0, 0]), UniPoly::zero());
    }

    #[test]
    fn linear_division() {
        // (x-2)(x-4) = x^2 - 6x + 8
        let p = UniPoly::from_i64(&[8, -6, 1]);
        let (q, r) = p.div_linear(&rat(2));
        assert_eq!(q, UniPoly::from_i64(&[-4, 1]));
        assert_eq!(r, rat(0));
        assert_eq!(p.div_linear(&rat(3)).1, rat(-1));
    }

    proptest! {
        #[test]
        fn falling_recurrence(j in 1usize..8) {
            // j (x-1)_{j-1} + (x-1)_j = (x)_j
            let x = UniPoly::x();
            let xm1 = &x - &UniPoly::one();
            let lhs = &xm1.falling(j - 1).scale(&rat(j as i64)) + &xm1.falling(j);
            prop_assert_eq!(lhs, x.falling(j));
        }

        #[test]
        fn binom_times_factorial_is_falling(l in 0usize..9) {
            let x = UniPoly::x();
            let lhs = x.binom(l).scale(&Rat::from_integer(factorial(l as u64)));
            prop_assert_eq!(lhs, x.falling(l));
        }

        #[test]
        fn binom_poly_matches_scalar(n in 0i64..20, l in 0usize..8) {
            prop_assert_eq!(UniPoly::x().binom(l).eval_i64(n), rat(n).binom(l));
        }
    }
}
