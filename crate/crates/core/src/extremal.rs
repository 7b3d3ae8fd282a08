//! Identities and inequalities for extremal designs: the `F`-table, the
//! determinant of `M_s`, the design identities satisfied by the complement
//! distances, and the bounds on their sum.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::codes::{degree_upper_bound, DistanceProfile};
use crate::exact::{binom_int, ExactMatrix, Factorials, Int, Rat, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtremalError {
    #[error("values must be strictly increasing and nonnegative")]
    NotIncreasing,
    #[error("expected {expected} coefficients a_0..a_s, got {got}")]
    Coefficients { expected: usize, got: usize },
    #[error("need s >= {min} and n > s (got n = {n}, s = {s})")]
    Range { n: i64, s: i64, min: i64 },
    #[error("alphabet size q = {0} must be at least 2")]
    Alphabet(i64),
}

fn ri(x: impl Into<Int>) -> Rat {
    Rat::from_integer(x.into())
}

fn falling(z: i64, i: usize) -> Rat {
    ri(Int::from(z).falling(i))
}

fn q_pow(q: i64, e: i64) -> Rat {
    ri(num_traits::pow(Int::from(q), e as usize))
}

/// `F_j^{(k)}` for `1 <= k <= s`, `0 <= j <= k`, built by the recurrence
/// `F_j^{(k)} = F_j^{(k-1)} + (x_k - k + j) F_{j-1}^{(k-1)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTable {
    xs: Vec<i64>,
    rows: Vec<Vec<Int>>,
}

impl FTable {
    pub fn new(xs: &[i64]) -> Result<Self, ExtremalError> {
        if xs.iter().any(|&x| x < 0) || xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ExtremalError::NotIncreasing);
        }
        Ok(Self::build(xs))
    }

    /// The recurrence without the ordering requirement.
    fn build(xs: &[i64]) -> Self {
        let mut rows = vec![vec![Int::one()]];
        for (k0, &x) in xs.iter().enumerate() {
            let k = k0 as i64 + 1;
            let prev = &rows[k0];
            let row: Vec<Int> = (0..=k)
                .map(|j| {
                    let keep = prev.get(j as usize).cloned().unwrap_or_default();
                    if j == 0 {
                        keep
                    } else {
                        keep + Int::from(x - k + j) * &prev[j as usize - 1]
                    }
                })
                .collect();
            rows.push(row);
        }
        FTable { xs: xs.to_vec(), rows }
    }

    pub fn s(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[i64] {
        &self.xs
    }

    /// `F_j^{(k)}`.
    pub fn get(&self, k: usize, j: usize) -> &Int {
        &self.rows[k][j]
    }

    /// `F_0^{(s)}, ..., F_s^{(s)}`.
    pub fn last(&self) -> &[Int] {
        &self.rows[self.s()]
    }

    /// `sum_j (-1)^j F_j^{(s)} (z)_{s-j}`.
    pub fn p_s(&self) -> UniPoly {
        let s = self.s();
        let z = UniPoly::x();
        let mut acc = UniPoly::zero();
        for (j, f) in self.last().iter().enumerate() {
            let c = if j % 2 == 0 { ri(f.clone()) } else { -ri(f.clone()) };
            acc = &acc + &z.falling(s - j).scale(&c);
        }
        acc
    }

    /// `prod (z - x_i)`.
    pub fn root_product(&self) -> UniPoly {
        self.xs.iter().fold(UniPoly::one(), |acc, &x| {
            &acc * &UniPoly::new(vec![ri(-x), Rat::one()])
        })
    }
}

/// `M_s(x; a)`: first column `a_0..a_s`, then column `(x_j)_i` for rows
/// `i = 0..s`.
pub fn ms_matrix(xs: &[i64], a: &[Rat]) -> Result<ExactMatrix, ExtremalError> {
    let s = xs.len();
    if a.len() != s + 1 {
        return Err(ExtremalError::Coefficients { expected: s + 1, got: a.len() });
    }
    Ok(ExactMatrix::from_rows(
        (0..=s)
            .map(|i| {
                std::iter::once(a[i].clone())
                    .chain(xs.iter().map(|&x| falling(x, i)))
                    .collect()
            })
            .collect(),
    ))
}

/// Closed form `(-1)^s prod_{i<j} (x_j - x_i) sum_j (-1)^j a_{s-j} F_j^{(s)}`.
/// The `x_i` may be any integers.
pub fn det_ms(xs: &[i64], a: &[Rat]) -> Result<Rat, ExtremalError> {
    let s = xs.len();
    if a.len() != s + 1 {
        return Err(ExtremalError::Coefficients { expected: s + 1, got: a.len() });
    }
    let table = FTable::build(xs);
    let mut vdm = Int::one();
    for i in 0..s {
        for j in i + 1..s {
            vdm *= xs[j] - xs[i];
        }
    }
    let mut sum = Rat::zero();
    for (j, f) in table.last().iter().enumerate() {
        let term = &a[s - j] * ri(f.clone());
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let sign = if s % 2 == 0 { Rat::one() } else { -Rat::one() };
    Ok(sign * ri(vdm) * sum)
}

/// `b_0 = a_0`, `b_i = i a_{i-1} + a_i`.
pub fn shift_coefficients(a: &[Rat]) -> Vec<Rat> {
    (0..a.len())
        .map(|i| {
            if i == 0 {
                a[0].clone()
            } else {
                ri(i as i64) * &a[i - 1] + &a[i]
            }
        })
        .collect()
}

/// Residuals of the design identities for a code of size `N` in
/// `H(n, q)` whose complement distances are `xs`:
/// `r_0 = sum_j (-1)^j (n)_{s-j} lambda_{s-j} F_j - P_s(n)` and
/// `r_l = sum_j (-1)^j (n-l)_{s-j} lambda_{s-j} F_j` for `l = 1..s-1`.
pub fn design_identity_residuals(
    size: &Int,
    n: i64,
    q: i64,
    xs: &[i64],
) -> Result<Vec<Rat>, ExtremalError> {
    let table = FTable::new(xs)?;
    let s = xs.len();
    let lambda = |i: usize| Rat::new(size.clone(), num_traits::pow(Int::from(q), i));
    let sum_at = |m: i64| -> Rat {
        table
            .last()
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let t = falling(m, s - j) * lambda(s - j) * ri(f.clone());
                if j % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    };
    let mut out = vec![sum_at(n) - table.p_s().eval_i64(n)];
    out.extend((1..s as i64).map(|l| sum_at(n - l)));
    Ok(out)
}

pub fn profile_residuals(p: &DistanceProfile) -> Result<Vec<Rat>, ExtremalError> {
    design_identity_residuals(&p.size, p.n, p.q, &p.complement)
}

/// `F_0, ..., F_s` predicted from `F_1` alone.
pub fn e5_predict(n: i64, q: i64, s: i64, f1: &Rat) -> Vec<Rat> {
    let mut out = vec![Rat::one()];
    for j in 1..=s {
        let b1 = ri(binom_int(s - 1, j - 1));
        let b2 = ri(binom_int(s - 1, j));
        let inner = &b1 * f1 - (ri(s - 1) * &b1 - b2) * ri(n - s) / ri(q);
        out.push(falling(n - s + j - 1, (j - 1) as usize) / q_pow(q, j - 1) * inner);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumBounds {
    pub lower: Rat,
    pub upper: Rat,
    pub sum: i64,
    pub within: bool,
    pub equal_lower: bool,
    pub equal_upper: bool,
}

/// `(s-1)(n-s)/q + s(s-1)/2 <= sum x_i <= s(n-s)/q + s(s-1)/2`.
pub fn e2_bounds(n: i64, q: i64, s: i64) -> Result<(Rat, Rat), ExtremalError> {
    if s < 1 || n <= s {
        return Err(ExtremalError::Range { n, s, min: 1 });
    }
    if q < 2 {
        return Err(ExtremalError::Alphabet(q));
    }
    let shift = ri(s * (s - 1) / 2);
    Ok((
        Rat::new(Int::from((s - 1) * (n - s)), Int::from(q)) + &shift,
        Rat::new(Int::from(s * (n - s)), Int::from(q)) + &shift,
    ))
}

pub fn e2_check(n: i64, q: i64, xs: &[i64]) -> Result<SumBounds, ExtremalError> {
    let (lower, upper) = e2_bounds(n, q, xs.len() as i64)?;
    let sum: i64 = xs.iter().sum();
    let s = ri(sum);
    Ok(SumBounds {
        within: lower <= s && s <= upper,
        equal_lower: s == lower,
        equal_upper: s == upper,
        lower,
        upper,
        sum,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSum {
    pub m: usize,
    pub sum: i64,
    pub bound: i64,
    pub holds: bool,
    /// Equality together with `x_i = 2i - 2` for all `i <= m`.
    pub equality: bool,
}

/// `sum_{i<=m} x_i >= m(m-1)` for every `m`.
pub fn e3_check(xs: &[i64]) -> Result<Vec<PartialSum>, ExtremalError> {
    if xs.iter().any(|&x| x < 0) || xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExtremalError::NotIncreasing);
    }
    Ok((1..=xs.len())
        .map(|m| {
            let sum: i64 = xs[..m].iter().sum();
            let bound = (m * (m - 1)) as i64;
            PartialSum {
                m,
                sum,
                bound,
                holds: sum >= bound,
                equality: sum == bound
                    && xs[..m].iter().enumerate().all(|(i, &x)| x == 2 * i as i64),
            }
        })
        .collect())
}

/// `A = ((-1)^{s-j} (n-l)_j lambda_j)` for rows `l = 1..s-1` and columns
/// `j = 0..s`, with `lambda_j = N / q^j`.
pub fn a_matrix(size: &Int, n: i64, q: i64, s: i64) -> ExactMatrix {
    ExactMatrix::from_rows(
        (1..s)
            .map(|l| {
                (0..=s)
                    .map(|j| {
                        let v = falling(n - l, j as usize) * ri(size.clone()) / q_pow(q, j);
                        if (s - j) % 2 == 0 {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect(),
    )
}

/// The predicted reduced row echelon form `[I | c_s | c_{s+1}]` of `A`.
pub fn a_matrix_rref_closed(n: i64, q: i64, s: i64) -> ExactMatrix {
    ExactMatrix::from_rows(
        (1..s)
            .map(|i| {
                let mut row: Vec<Rat> = (1..s).map(|c| if c == i { Rat::one() } else { Rat::zero() }).collect();
                row.push(
                    -ri(binom_int(s - 1, i - 1)) * falling(n - i, (s - i) as usize) / q_pow(q, s - i),
                );
                let coef = ri(s - 1) * ri(binom_int(s - 1, i - 1)) - ri(binom_int(s - 1, i - 2));
                row.push(coef * falling(n - i, (s - i + 1) as usize) / q_pow(q, s - i + 1));
                row
            })
            .collect(),
    )
}

/// Both sides of the two summation identities with
/// `M = sum_{k<=s} C(n,k)(q-1)^k`.
pub fn melzak_sides(n: i64, q: i64, s: i64) -> Result<[(Rat, Rat); 2], ExtremalError> {
    if s < 2 || n <= s {
        return Err(ExtremalError::Range { n, s, min: 2 });
    }
    if q < 2 {
        return Err(ExtremalError::Alphabet(q));
    }
    let m = ri(degree_upper_bound(n, q, s));
    let sign = |j: i64| if (j + 1) % 2 == 0 { Rat::one() } else { -Rat::one() };
    let factor = |j: i64| &m / q_pow(q, s - j) - Rat::one();
    let lhs1: Rat = (1..=s)
        .map(|j| {
            factor(j) * sign(j) / (ri(n - s + j) * q_pow(q, j - 1)) * ri(binom_int(s - 1, j - 1))
        })
        .sum();
    let rhs1 = q_pow(q - 1, s) / (ri(s) * q_pow(q, s - 1));
    let lhs2: Rat = (0..=s)
        .map(|j| {
            let c = ri(s - 1) * ri(binom_int(s - 1, j - 1)) - ri(binom_int(s - 1, j));
            factor(j) * sign(j) * ri(n - s) / (ri(n - s + j) * q_pow(q, j)) * c
        })
        .sum();
    let rhs2 = ri(n - s) * q_pow(q - 1, s) / q_pow(q, s);
    Ok([(lhs1, rhs1), (lhs2, rhs2)])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefMelzakReport {
    pub rref: Option<ExactMatrix>,
    pub rref_matches: bool,
    pub melzak: [(Rat, Rat); 2],
}

impl RrefMelzakReport {
    pub fn all_hold(&self) -> bool {
        self.rref_matches && self.melzak.iter().all(|(l, r)| l == r)
    }
}

pub fn rref_a_and_melzak(n: i64, q: i64, s: i64) -> Result<RrefMelzakReport, ExtremalError> {
    let melzak = melzak_sides(n, q, s)?;
    let rref = a_matrix(&Int::one(), n, q, s).rref();
    let rref_matches = rref == a_matrix_rref_closed(n, q, s);
    Ok(RrefMelzakReport {
        rref: Some(rref),
        rref_matches,
        melzak,
    })
}

/// Whether the sum bound classification agrees with the design: equality on
/// the left exactly when `x_1 = 0`, on the right exactly when `N` meets the
/// degree bound.
pub fn e2_classification_consistent(p: &DistanceProfile) -> Result<bool, ExtremalError> {
    let b = e2_check(p.n, p.q, &p.complement)?;
    let x1_zero = p.complement.first() == Some(&0);
    let at_upper = p.size == degree_upper_bound(p.n, p.q, p.degree() as i64);
    Ok(b.equal_lower == x1_zero && b.equal_upper == at_upper)
}
