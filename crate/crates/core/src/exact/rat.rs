use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn pow_int(base: i64, exp: u32) -> Int {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn factorial(k: u64) -> Int {
    (1..=k).fold(Int::one(), |acc, i| acc * i)
}

/// Parses `a`, `-a` or `a/b`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().ok()?;
            let d: Int = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

/// Binomial coefficient C(n, k) for integer `n` (possibly negative) via the
/// falling-factorial definition; zero for `k < 0` and for `0 <= n < k`.
pub fn binom_int(n: i64, k: i64) -> Int {
    if k < 0 {
        return Int::zero();
    }
    if n >= 0 && n < k {
        return Int::zero();
    }
    let mut num = Int::one();
    for i in 0..k {
        num *= n - i;
    }
    num / factorial(k as u64)
}

/// Falling factorial `(z)_i = z(z-1)...(z-i+1)` and the generalized
/// binomial `C(z, l) = (z)_l / l!`.
pub trait Factorials: Sized {
    fn falling(&self, i: usize) -> Self;
    fn binom(&self, l: usize) -> Self;
}

impl Factorials for Rat {
    fn falling(&self, i: usize) -> Rat {
        let mut acc = Rat::one();
        for k in 0..i {
            acc *= self - Rat::from_integer(BigInt::from(k));
        }
        acc
    }

    fn binom(&self, l: usize) -> Rat {
        if self.is_integer() && !self.is_negative() && *self < Rat::from_integer(l.into()) {
            return Rat::zero();
        }
        self.falling(l) / Rat::from_integer(factorial(l as u64))
    }
}

impl Factorials for Int {
    fn falling(&self, i: usize) -> Int {
        let mut acc = Int::one();
        for k in 0..i {
            acc *= self - BigInt::from(k);
        }
        acc
    }

    fn binom(&self, l: usize) -> Int {
        self.falling(l) / factorial(l as u64)
    }
}

impl Factorials for i64 {
    fn falling(&self, i: usize) -> i64 {
        (0..i as i64).map(|k| self - k).product()
    }

    fn binom(&self, l: usize) -> i64 {
        use num_traits::ToPrimitive;
        binom_int(*self, l as i64).to_i64().expect("binomial overflows i64")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_binomials() {
        assert_eq!(5i64.binom(2), 10);
        assert_eq!(rat(5).binom(2), rat(10));
        assert_eq!(rat(3).binom(5), rat(0));
        assert_eq!(binom_int(-2, 2), int(3));
        assert_eq!(binom_int(4, -1), int(0));
    }

    #[test]
    fn scalar_falling() {
        assert_eq!(11i64.falling(2), 110);
        assert_eq!(4i64.falling(5), 0);
        assert_eq!(rat(7).falling(0), rat(1));
        assert_eq!(int(11).falling(2), int(110));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("-3/6"), Some(rat_frac(-1, 2)));
        assert_eq!(parse_rat(" 22 "), Some(rat(22)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
        let r = parse_rat("4/-8").unwrap();
        assert!(r.denom().is_positive());
        assert_eq!(r, rat_frac(-1, 2));
    }
}
