use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::rat::Rat;

/// Exponent vector, one entry per variable. Comparing two monomials as
/// slices is the lexicographic order with variable 0 the largest.
pub type Monomial = Vec<u32>;

/// Sparse polynomial over the rationals in a fixed variable frame, ordered
/// lexicographically by variable index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rat>,
}

pub(crate) fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn mono_sub(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn mono_add(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl MultiPoly {
    pub fn frame<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
        names.iter().map(|s| s.as_ref().to_string()).collect()
    }

    pub fn zero(vars: &Arc<[String]>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<[String]>, c: Rat) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &Arc<[String]>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        MultiPoly::from_terms(vars, [(e, Rat::one())])
    }

    pub fn from_terms(
        vars: &Arc<[String]>,
        terms: impl IntoIterator<Item = (Monomial, Rat)>,
    ) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `var`.
    pub fn from_unipoly(vars: &Arc<[String]>, var: usize, u: &UniPoly) -> Self {
        MultiPoly::from_terms(
            vars,
            u.coeffs().iter().enumerate().map(|(d, c)| {
                let mut e = vec![0; vars.len()];
                e[var] = d as u32;
                (e, c.clone())
            }),
        )
    }

    fn add_term(&mut self, e: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&d| d == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the leading one downwards.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn scale(&self, k: &Rat) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul_term(&self, e: &[u32], k: &Rat) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (mono_add(m, e), c * k))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(&self.vars, Rat::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&d, x)| acc * num_traits::pow(x.clone(), d as usize))
            })
            .sum()
    }

    /// Substitutes a value for one variable; the frame is unchanged.
    pub fn substitute(&self, var: usize, value: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = std::mem::replace(&mut e2[var], 0);
            out.add_term(e2, c * num_traits::pow(value.clone(), d as usize));
        }
        out
    }

    /// The polynomial as a univariate one in `var`, if no other variable
    /// occurs.
    pub fn as_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rat::zero(); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &d)| i != var && d > 0) {
                return None;
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Multivariate division by a single polynomial. Returns the quotient if
    /// the division is exact.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (dlm, dlc) = divisor.leading_term()?;
        let dlc_inv = dlc.recip();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        while let Some((lm, lc)) = rem.leading_term() {
            if !mono_divides(dlm, lm) {
                return None;
            }
            let e = mono_sub(lm, dlm);
            let k = lc * &dlc_inv;
            rem = &rem - &divisor.mul_term(&e, &k);
            quot.add_term(e, k);
        }
        Some(quot)
    }

    /// Divides out the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// `self -= k * x^e * g` in place.
    pub(crate) fn sub_shifted(&mut self, g: &MultiPoly, e: &[u32], k: &Rat) {
        for (m, c) in &g.terms {
            self.add_term(mono_add(m, e), -(c * k));
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rat)> {
        self.terms.pop_last()
    }

    pub(crate) fn push_term(&mut self, e: Monomial, c: Rat) {
        self.add_term(e, c);
    }

    /// Scales to integer coefficients with unit content and a positive
    /// leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        use num_integer::Integer;
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        let mut den = super::Int::one();
        let mut num = super::Int::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut k = Rat::new(den, num);
        if lc.is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    fn check_frame(&self, other: &MultiPoly) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials live in different variable frames"
        );
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_frame(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_frame(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_frame(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(mono_add(a, b), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| {
                    if d == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], d)
                    }
                })
                .collect();
            if factors.is_empty() || !abs.is_one() {
                if abs.is_integer() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
                if !factors.is_empty() {
                    f.write_str("*")?;
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_frac};

    fn frame() -> Arc<[String]> {
        MultiPoly::frame(&["a", "b"])
    }

    #[test]
    fn arithmetic_and_order() {
        let v = frame();
        let a = MultiPoly::var(&v, 0);
        let b = MultiPoly::var(&v, 1);
        // lex with a > b: a*b beats b^5
        let p = &(&a * &b) + &b.pow(5);
        assert_eq!(p.leading_term().unwrap().0, &vec![1, 1]);
        assert_eq!(p.to_string(), "a*b + b^5");
        let sq = (&a - &b).pow(2);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.eval(&[rat(5), rat(2)]), rat(9));
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn exact_division() {
        let v = frame();
        let a = MultiPoly::var(&v, 0);
        let b = MultiPoly::var(&v, 1);
        let f = &a - &b;
        let g = &(&b * &b) - &MultiPoly::constant(&v, rat(3));
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&f), Some(g.clone()));
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        assert_eq!((&prod + &MultiPoly::constant(&v, rat(1))).div_exact(&f), None);
    }

    #[test]
    fn substitution_and_univariate() {
        let v = frame();
        let a = MultiPoly::var(&v, 0);
        let b = MultiPoly::var(&v, 1);
        let p = &(&a * &b) + &b.scale(&rat_frac(1, 2));
        let q = p.substitute(0, &rat(2));
        assert_eq!(q.as_univariate(1), Some(UniPoly::new(vec![rat(0), rat_frac(5, 2)])));
        assert_eq!(p.as_univariate(1), None);
        assert_eq!(
            MultiPoly::from_unipoly(&v, 0, &UniPoly::from_i64(&[1, 2])).to_string(),
            "2*a + 1"
        );
    }
}
