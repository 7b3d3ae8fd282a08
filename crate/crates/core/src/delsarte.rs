//! Eigenmatrices of the Delsarte scheme of a design and of its fission
//! scheme, with the associated determinant and divisibility tests.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::codes::{degree_upper_bound, divides, TightnessClass};
use crate::exact::{factorial, ExactMatrix, Int, Rat, UniPoly};
use crate::krawtchouk::{kraw_int, kraw_poly, KrawSpec};
use crate::scheme::{SchemeError, SchemeParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DelsarteError {
    #[error("alphabet size q = {0} must be at least 2")]
    Alphabet(i64),
    #[error("degree set must be strictly increasing within 1..={n}")]
    DegreeSet { n: i64 },
    #[error("strength t = {t} is impossible for degree s = {s} (need 0 <= t <= 2s)")]
    Strength { t: i64, s: usize },
    #[error("size {size} outside 1..={upper}")]
    Size { size: Int, upper: Int },
    #[error("this construction needs strength {needed}, got {t}")]
    NeedsStrength { needed: String, t: i64 },
    #[error("a tight design of odd strength must have largest distance n = {n}")]
    TightLargestDistance { n: i64 },
    #[error("point {x} outside 0..={max}")]
    Point { x: i64, max: i64 },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// A putative design: size `N`, length `n`, alphabet `q`, degree set and
/// strength `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DesignParams {
    size: Int,
    n: i64,
    q: i64,
    alphas: Vec<i64>,
    t: i64,
}

impl DesignParams {
    pub fn new(size: Int, n: i64, q: i64, alphas: Vec<i64>, t: i64) -> Result<Self, DelsarteError> {
        if q < 2 {
            return Err(DelsarteError::Alphabet(q));
        }
        let increasing = alphas.windows(2).all(|w| w[0] < w[1]);
        if alphas.is_empty() || !increasing || alphas[0] < 1 || *alphas.last().unwrap() > n {
            return Err(DelsarteError::DegreeSet { n });
        }
        let s = alphas.len();
        if t < 0 || t > 2 * s as i64 {
            return Err(DelsarteError::Strength { t, s });
        }
        let upper = degree_upper_bound(n, q, s as i64);
        if !size.is_positive() || size > upper {
            return Err(DelsarteError::Size { size, upper });
        }
        Ok(DesignParams { size, n, q, alphas, t })
    }

    /// Degree set `{alpha_i}` with `t = 2s - 1`.
    pub fn extremal(size: Int, n: i64, q: i64, alphas: Vec<i64>) -> Result<Self, DelsarteError> {
        let t = 2 * alphas.len() as i64 - 1;
        Self::new(size, n, q, alphas, t)
    }

    pub fn size(&self) -> &Int {
        &self.size
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn alphas(&self) -> &[i64] {
        &self.alphas
    }

    pub fn degree(&self) -> usize {
        self.alphas.len()
    }

    pub fn strength(&self) -> i64 {
        self.t
    }

    pub fn tightness(&self) -> TightnessClass {
        TightnessClass::classify(&self.size, self.n, self.q, self.t)
    }

    /// Same parameters with a different degree set (no validation of the
    /// size bound beyond the constructor's).
    pub fn with_alphas(&self, alphas: Vec<i64>) -> Result<Self, DelsarteError> {
        Self::new(self.size.clone(), self.n, self.q, alphas, self.t)
    }
}

impl fmt::Display for DesignParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.alphas.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "N={} n={} q={} S={{{}}} t={}",
            self.size,
            self.n,
            self.q,
            a.join(","),
            self.t
        )
    }
}

fn ri(x: Int) -> Rat {
    Rat::from_integer(x)
}

/// Second eigenmatrix of the Delsarte scheme, rows indexed by
/// `0, alpha_1, ..., alpha_s`.
pub fn delsarte_q_matrix(size: &Int, n: i64, q: i64, alphas: &[i64]) -> ExactMatrix {
    let s = alphas.len() as i64;
    let rows = std::iter::once(0)
        .chain(alphas.iter().copied())
        .enumerate()
        .map(|(i, x)| {
            let mut row: Vec<Rat> = (0..s).map(|l| ri(kraw_int(n, q, l, x))).collect();
            let partial: Rat = row.iter().sum();
            let head = if i == 0 { ri(size.clone()) } else { Rat::zero() };
            row.push(head - partial);
            row
        })
        .collect();
    ExactMatrix::from_rows(rows)
}

pub fn delsarte_q(d: &DesignParams) -> Result<SchemeParams, DelsarteError> {
    let s = d.degree() as i64;
    if d.t < 2 * s - 2 {
        return Err(DelsarteError::NeedsStrength {
            needed: format!(">= {}", 2 * s - 2),
            t: d.t,
        });
    }
    let q = delsarte_q_matrix(&d.size, d.n, d.q, &d.alphas);
    Ok(SchemeParams::from_q(q, d.size.clone())?)
}

/// `(K_{n-1,q,j}(x_i))` for `j = 0..s-1`.
pub fn m_matrix(n_minus_1: i64, q: i64, xs: &[i64]) -> Result<ExactMatrix, DelsarteError> {
    if q < 2 {
        return Err(DelsarteError::Alphabet(q));
    }
    if let Some(&x) = xs.iter().find(|&&x| x < 0 || x > n_minus_1) {
        return Err(DelsarteError::Point { x, max: n_minus_1 });
    }
    let s = xs.len() as i64;
    Ok(ExactMatrix::from_rows(
        xs.iter()
            .map(|&x| (0..s).map(|j| ri(kraw_int(n_minus_1, q, j, x))).collect())
            .collect(),
    ))
}

/// Second eigenmatrix of the fission scheme of an extremal design.
///
/// Rows: `A_{0,i}` for `alpha_0 = 0, alpha_1, ...` (up to `alpha_{s-1}` when
/// tight, `alpha_s` otherwise), then `A_{1,i}` for `alpha_1, ..., alpha_s`.
/// Columns: `E_{0,0..s-1}`, the extra column `E_{0,s}` when non-tight, then
/// `E_{1,0..s-1}`, whose Krawtchouk degrees run `s-1` down to `0`.
pub fn fission_q_matrix(d: &DesignParams) -> Result<ExactMatrix, DelsarteError> {
    let s = d.degree() as i64;
    if d.t != 2 * s - 1 {
        return Err(DelsarteError::NeedsStrength {
            needed: format!("= {}", 2 * s - 1),
            t: d.t,
        });
    }
    let tight = d.tightness() == TightnessClass::TightOdd;
    if tight && *d.alphas.last().unwrap() != d.n {
        return Err(DelsarteError::TightLargestDistance { n: d.n });
    }
    let (n1, q) = (d.n - 1, d.q);
    let k = |l: i64, x: i64| ri(kraw_int(n1, q, l, x));
    let top: Vec<i64> = std::iter::once(0)
        .chain(d.alphas.iter().copied())
        .take(if tight { d.degree() } else { d.degree() + 1 })
        .collect();
    let qr = ri(Int::from(q));
    let mut rows = Vec::new();
    for (i, &x) in top.iter().enumerate() {
        let mut row: Vec<Rat> = (0..s).map(|l| k(l, x)).collect();
        if !tight {
            let partial: Rat = row.iter().sum();
            let head = if i == 0 { ri(d.size.clone()) } else { Rat::zero() };
            row.push(head - &qr * partial);
        }
        row.extend((0..s).rev().map(|l| ri(Int::from(q - 1)) * k(l, x)));
        rows.push(row);
    }
    for &a in &d.alphas {
        let mut row: Vec<Rat> = (0..s).map(|l| k(l, a - 1)).collect();
        if !tight {
            row.push(Rat::zero());
        }
        row.extend((0..s).rev().map(|l| -k(l, a - 1)));
        rows.push(row);
    }
    Ok(ExactMatrix::from_rows(rows))
}

pub fn fission_q(d: &DesignParams) -> Result<SchemeParams, DelsarteError> {
    let q = fission_q_matrix(d)?;
    Ok(SchemeParams::from_q(q, d.size.clone())?)
}

/// `q^{s(s-1)/2} prod_{i<j} (a_i - a_j) / prod_{i<s} i!`, the determinant of
/// `(K_{m,q,k}(a_i))` for any length `m`.
pub fn kraw_vandermonde(q: i64, xs: &[i64]) -> Rat {
    let s = xs.len();
    let mut num = num_traits::pow(Int::from(q), s * s.saturating_sub(1) / 2);
    for i in 0..s {
        for j in i + 1..s {
            num *= xs[i] - xs[j];
        }
    }
    let den: Int = (1..s as u64).map(factorial).product();
    Rat::new(num, den)
}

/// Closed form for `|det Q|` of the fission scheme.
pub fn det_fission_closed(d: &DesignParams) -> Rat {
    let s = d.degree();
    let qs = ri(num_traits::pow(Int::from(d.q), s));
    if d.tightness() == TightnessClass::TightOdd {
        let mut head = vec![0];
        head.extend_from_slice(&d.alphas[..s - 1]);
        (qs * kraw_vandermonde(d.q, &head) * kraw_vandermonde(d.q, &d.alphas)).abs()
    } else {
        let dv = kraw_vandermonde(d.q, &d.alphas);
        ri(d.size.clone()) * qs * &dv * &dv
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityCheck {
    pub name: &'static str,
    pub value: Rat,
    pub modulus: Int,
    pub integral: bool,
    pub divides: bool,
}

impl DivisibilityCheck {
    fn new(name: &'static str, value: Rat, modulus: Int) -> Self {
        let integral = value.is_integer();
        let divides = integral && divides(&value.to_integer().abs(), &modulus);
        DivisibilityCheck {
            name,
            value,
            modulus,
            integral,
            divides,
        }
    }

    pub fn passed(&self) -> bool {
        self.integral && self.divides
    }
}

impl fmt::Display for DivisibilityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: value {} {} {} ({})",
            self.name,
            self.value,
            if self.divides { "divides" } else { "does not divide" },
            self.modulus,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

/// Divisibility conditions applicable to the design's strength and
/// tightness.
pub fn divisibility_tests(d: &DesignParams) -> Vec<DivisibilityCheck> {
    let s = d.degree();
    let n_pow = |e: usize| num_traits::pow(d.size.clone(), e);
    let qs = ri(num_traits::pow(Int::from(d.q), s));
    let mut out = Vec::new();
    if d.t >= 2 * s as i64 - 2 {
        out.push(DivisibilityCheck::new(
            "calderbank-goethals",
            kraw_vandermonde(d.q, &d.alphas),
            n_pow(s),
        ));
    }
    if d.t == 2 * s as i64 - 1 {
        match d.tightness() {
            TightnessClass::TightOdd => {
                let dv = kraw_vandermonde(d.q, &d.alphas[..s - 1]);
                out.push(DivisibilityCheck::new(
                    "fission-tight",
                    qs * &dv * &dv,
                    n_pow(2 * s - 1),
                ));
            }
            _ => {
                let dv = kraw_vandermonde(d.q, &d.alphas);
                out.push(DivisibilityCheck::new(
                    "fission-nontight",
                    qs * &dv * &dv,
                    n_pow(2 * s),
                ));
            }
        }
    }
    out
}

/// Whether `N prod (1 - x/alpha_i) = sum_{j<=e} K_{n,q,j}(x)` holds as
/// polynomials in `x`.
pub fn wilson_identity(d: &DesignParams) -> bool {
    let e = d.degree() as i64;
    let mut lhs = UniPoly::constant(ri(d.size.clone()));
    for &a in &d.alphas {
        let factor = UniPoly::new(vec![Rat::one(), -Rat::new(Int::one(), Int::from(a))]);
        lhs = &lhs * &factor;
    }
    let mut rhs = UniPoly::zero();
    for j in 0..=e.min(d.n) {
        rhs = &rhs + &kraw_poly(KrawSpec { n: d.n, q: d.q, j });
    }
    lhs == rhs
}
