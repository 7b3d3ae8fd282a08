//! Enumeration of feasible parameters `(N, n, q, alpha_1..alpha_s)` for
//! `(2s-1)`-designs with degree `s`, by Gröbner elimination of the design
//! equations, and the symmetric-degree-set solvers.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::codes::{degree_upper_bound, rao_bound};
use crate::delsarte::{delsarte_q, divisibility_tests, DesignParams};
use crate::exact::{Factorials, Int, MultiPoly, Rat};
use crate::extremal::{e2_check, e5_predict};
use crate::groebner::{
    buchberger, eliminate_univariate, integer_points, vandermonde, vandermonde_split, Elimination,
    Ideal, Split,
};
use crate::krawtchouk::{kraw_int, kraw_poly, KrawSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("need n > s (got n = {n}, s = {s})")]
    Length { n: i64, s: i64 },
    #[error("alphabet size q = {0} must be at least 2")]
    Alphabet(i64),
    #[error("degree s = {0} must be positive")]
    Degree(i64),
    #[error("the symmetric solver handles s in 2..=4 (got {0})")]
    Symmetric(i64),
    #[error("empty range {0}")]
    Range(&'static str),
}

fn check(n: i64, q: i64, s: i64) -> Result<(), SearchError> {
    if s < 1 {
        return Err(SearchError::Degree(s));
    }
    if q < 2 {
        return Err(SearchError::Alphabet(q));
    }
    if n <= s {
        return Err(SearchError::Length { n, s });
    }
    Ok(())
}

fn ri(x: impl Into<Int>) -> Rat {
    Rat::from_integer(x.into())
}

/// All `N` in `[L, U]` divisible by `q^{2s-1}`, where `L` is the Rao bound
/// for strength `2s-1` and `U` the bound for `s` distances.
pub fn candidate_sizes(n: i64, q: i64, s: i64) -> Result<Vec<Int>, SearchError> {
    check(n, q, s)?;
    let step = num_traits::pow(Int::from(q), (2 * s - 1) as usize);
    let lower = rao_bound(n, q, 2 * s - 1);
    let upper = degree_upper_bound(n, q, s);
    let mut x = lower.div_ceil(&step) * &step;
    let mut out = Vec::new();
    while x <= upper {
        out.push(x.clone());
        x += &step;
    }
    Ok(out)
}

/// The candidates left once `F_1 = sum x_i - s(s-1)/2` ranges over the
/// integers allowed by the sum bounds and `N` is recovered from `F_1`.
/// Falls back to every candidate size when `N` is not pinned down.
pub fn prefiltered_sizes(n: i64, q: i64, s: i64) -> Result<Vec<Int>, SearchError> {
    check(n, q, s)?;
    let step = num_traits::pow(Int::from(q), (2 * s - 1) as usize);
    let lower = rao_bound(n, q, 2 * s - 1);
    let upper = degree_upper_bound(n, q, s);
    let lo = Rat::new(Int::from((s - 1) * (n - s)), Int::from(q)).ceil().to_integer();
    let hi = Rat::new(Int::from(s * (n - s)), Int::from(q)).floor().to_integer();
    let lo = lo.to_i64().expect("small range");
    let hi = hi.to_i64().expect("small range");
    let mut out = BTreeSet::new();
    for f1 in lo..=hi {
        let f = e5_predict(n, q, s, &ri(f1));
        let at = |z: i64, scaled: bool| -> Rat {
            (0..=s as usize)
                .map(|j| {
                    let mut t = &f[j] * ri(Int::from(z).falling(s as usize - j));
                    if scaled {
                        t /= ri(num_traits::pow(Int::from(q), s as usize - j));
                    }
                    if j % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        };
        let (num, den) = (at(n, false), at(n, true));
        if den.is_zero() {
            if num.is_zero() {
                return candidate_sizes(n, q, s);
            }
            continue;
        }
        let size = num / den;
        if !size.is_integer() {
            continue;
        }
        let size = size.to_integer();
        if size >= lower && size <= upper && size.is_multiple_of(&step) {
            out.insert(size);
        }
    }
    Ok(out.into_iter().collect())
}

fn poly_det(m: &[Vec<MultiPoly>], vars: &Arc<[String]>) -> MultiPoly {
    let k = m.len();
    if k == 0 {
        return MultiPoly::constant(vars, Rat::one());
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(vars);
    for c in 0..k {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * &poly_det(&minor, vars);
        acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

pub fn alpha_frame(s: usize) -> Arc<[String]> {
    let names: Vec<String> = (1..=s).map(|i| format!("alpha_{i}")).collect();
    MultiPoly::frame(&names)
}

/// `p_1, ..., p_{2s-1}`: `p_i` vanishes exactly when
/// `sum_{x,y in C} K_i(d(x,y)) = 0` is compatible with the valencies
/// forced by `sum_{x,y} K_r(d(x,y)) = 0` for `r < s`. Each `p_i` is the
/// bordered Krawtchouk determinant divided by `prod_{i<j}(alpha_i - alpha_j)`;
/// `p_1..p_{s-1}` are identically zero.
pub fn design_polynomials(size: &Int, n: i64, q: i64, s: i64) -> Result<Vec<MultiPoly>, SearchError> {
    check(n, q, s)?;
    let vars = alpha_frame(s as usize);
    let su = s as usize;
    let kp = |j: i64, v: usize| {
        MultiPoly::from_unipoly(&vars, v, &kraw_poly(KrawSpec { n, q, j }))
    };
    let border = |r: i64| {
        let mut c = -ri(kraw_int(n, q, r, 0));
        if r == 0 {
            c += ri(size.clone());
        }
        MultiPoly::constant(&vars, c)
    };
    let vdm = vandermonde(&MultiPoly::zero(&vars));
    let mut out = Vec::new();
    for i in 1..2 * s {
        if i < s {
            out.push(MultiPoly::zero(&vars));
            continue;
        }
        let rows: Vec<Vec<MultiPoly>> = (0..s)
            .chain(std::iter::once(i))
            .map(|r| {
                (0..su)
                    .map(|v| kp(r, v))
                    .chain(std::iter::once(border(r)))
                    .collect()
            })
            .collect();
        let det = poly_det(&rows, &vars);
        let p = det.div_exact(&vdm).expect("alternating polynomial");
        out.push(p.primitive());
    }
    Ok(out)
}

/// The design identities `r_0, ..., r_{s-1}` as polynomials in the
/// `alpha_i`, with `x_i = n - alpha_i` and `F_j` built by the recurrence.
pub fn identity_polynomials(size: &Int, n: i64, q: i64, s: i64) -> Result<Vec<MultiPoly>, SearchError> {
    check(n, q, s)?;
    let su = s as usize;
    let vars = alpha_frame(su);
    let c = |v: Rat| MultiPoly::constant(&vars, v);
    let mut f: Vec<MultiPoly> = vec![c(Rat::one())];
    for k in 1..=su {
        let x = &c(ri(n)) - &MultiPoly::var(&vars, k - 1);
        let mut next = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let keep = f.get(j).cloned().unwrap_or_else(|| MultiPoly::zero(&vars));
            if j == 0 {
                next.push(keep);
            } else {
                let shift = &x - &c(ri(k as i64 - j as i64));
                next.push(&keep + &(&shift * &f[j - 1]));
            }
        }
        f = next;
    }
    let lambda = |i: usize| Rat::new(size.clone(), num_traits::pow(Int::from(q), i));
    let combo = |m: i64, weighted: bool| -> MultiPoly {
        let mut acc = MultiPoly::zero(&vars);
        for (j, fj) in f.iter().enumerate() {
            let mut k = ri(Int::from(m).falling(su - j));
            if weighted {
                k *= lambda(su - j);
            }
            if j % 2 == 1 {
                k = -k;
            }
            acc = &acc + &fj.scale(&k);
        }
        acc
    };
    let mut out = vec![(&combo(n, true) - &combo(n, false)).primitive()];
    out.extend((1..s).map(|l| combo(n - l, true).primitive()));
    Ok(out)
}

/// `sum_{x,y} K_i(d(x,y)) / N = K_i(0) + sum_j A_j K_i(alpha_j)` for
/// `i = 1..=2s`, with `A_j` the valencies of the Delsarte scheme.
pub fn krawtchouk_sums(d: &DesignParams, valencies: &[Rat]) -> Vec<Rat> {
    let s = d.degree() as i64;
    (1..=2 * s)
        .map(|i| {
            ri(kraw_int(d.n(), d.q(), i, 0))
                + d.alphas()
                    .iter()
                    .zip(&valencies[1..])
                    .map(|(&a, k)| k * ri(kraw_int(d.n(), d.q(), i, a)))
                    .sum::<Rat>()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Section {
    Main,
    /// `s = 2`, `q = 2`, `N = 2n`, degree set `{n/2, n}`.
    Hadamard,
    /// `s >= 3` and `N` equal to the bound for `s` distances, so the design
    /// is a tight `2s`-design.
    Tight2s,
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Section::Main => "main",
            Section::Hadamard => "hadamard",
            Section::Tight2s => "tight 2s-designs",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleTuple {
    pub size: Int,
    pub n: i64,
    pub q: i64,
    pub alphas: Vec<i64>,
    /// `(v, k, lambda, mu)` for `s = 2`.
    pub srg: Option<[Int; 4]>,
    /// `N` equals the Rao bound for strength `2s - 1`.
    pub tight: bool,
    pub section: Section,
}

impl FeasibleTuple {
    pub fn s(&self) -> usize {
        self.alphas.len()
    }

    pub fn key(&self) -> (i64, i64, Int, Vec<i64>) {
        (self.q, self.n, self.size.clone(), self.alphas.clone())
    }

    pub fn csv_row(&self) -> String {
        let mut cells = vec![self.size.to_string(), self.n.to_string(), self.q.to_string()];
        cells.extend(self.alphas.iter().map(|a| a.to_string()));
        if let Some(srg) = &self.srg {
            cells.extend(srg.iter().map(|x| x.to_string()));
        }
        cells.push(self.tight.to_string());
        cells.join(",")
    }
}

pub fn csv_header(s: usize) -> String {
    let mut cells: Vec<String> = ["N", "n", "q"].iter().map(|c| c.to_string()).collect();
    cells.extend((1..=s).map(|i| format!("alpha_{i}")));
    if s == 2 {
        cells.extend(["v", "k", "lambda", "mu"].iter().map(|c| c.to_string()));
    }
    cells.push("tight".into());
    cells.join(",")
}

pub fn render_csv(s: usize, rows: &[FeasibleTuple]) -> String {
    let mut out = csv_header(s);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unresolved {
    pub size: Int,
    pub n: i64,
    pub q: i64,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct SearchOutcome {
    pub rows: Vec<FeasibleTuple>,
    pub unresolved: Vec<Unresolved>,
    pub ideals: usize,
}

impl SearchOutcome {
    pub fn section(&self, section: Section) -> Vec<FeasibleTuple> {
        self.rows.iter().filter(|r| r.section == section).cloned().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchRange {
    pub s: i64,
    pub q_min: i64,
    pub q_max: i64,
    pub n_min: i64,
    pub n_max: i64,
    /// Run the Gröbner pipeline on every candidate size instead of the
    /// prefiltered ones.
    pub exhaustive: bool,
}

/// Root sets of the design ideal for one `(N, n, q)`: strictly increasing
/// tuples in `1..=n`. The ideal is generated by the design identities and
/// the polynomials `p_i`.
pub fn solve_design_ideal(size: &Int, n: i64, q: i64, s: i64) -> Result<Vec<Vec<i64>>, String> {
    let mut polys = identity_polynomials(size, n, q, s).map_err(|e| e.to_string())?;
    polys.extend(design_polynomials(size, n, q, s).map_err(|e| e.to_string())?);
    let ideal = match Ideal::new(polys.clone()) {
        Ok(i) => i,
        Err(e) => return Err(e.to_string()),
    };
    let basis = buchberger(&ideal);
    let increasing = |pts: Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        pts.into_iter().filter(|p| p.windows(2).all(|w| w[0] < w[1])).collect()
    };
    match eliminate_univariate(&basis) {
        Elimination::Empty => Ok(vec![]),
        Elimination::Univariate(_) => Ok(increasing(integer_points(&basis, 1, n))),
        Elimination::PositiveDimensional => {
            if s != 4 {
                return Err("positive-dimensional variety".into());
            }
            match vandermonde_split(&basis) {
                Ok(Split::Resolved(g)) => {
                    let roots = crate::groebner::integer_roots(&g, 1, n).map_err(|e| e.to_string())?;
                    let mut out = Vec::new();
                    for combo in increasing_tuples(&roots, s as usize) {
                        let pt: Vec<Rat> = combo.iter().map(|&x| ri(x)).collect();
                        if polys.iter().all(|p| p.eval(&pt).is_zero()) {
                            out.push(combo);
                        }
                    }
                    Ok(out)
                }
                _ => Err("positive-dimensional variety without a Vandermonde factor".into()),
            }
        }
    }
}

fn increasing_tuples(values: &[i64], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        for mut rest in increasing_tuples(&values[i + 1..], k - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// Runs every check on one parameter tuple; `None` if any fails.
pub fn validate(size: &Int, n: i64, q: i64, alphas: &[i64]) -> Option<FeasibleTuple> {
    let s = alphas.len();
    let d = DesignParams::extremal(size.clone(), n, q, alphas.to_vec()).ok()?;
    let scheme = delsarte_q(&d).ok()?;
    let valencies = scheme.valencies().to_vec();
    let sums = krawtchouk_sums(&d, &valencies);
    if sums[..2 * s - 1].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let upper = degree_upper_bound(n, q, s as i64);
    if sums[2 * s - 1].is_zero() != (*size == upper) {
        return None;
    }
    if !scheme.feasibility().is_feasible() {
        return None;
    }
    if !divisibility_tests(&d).iter().all(|c| c.passed()) {
        return None;
    }
    let xs: Vec<i64> = alphas.iter().rev().map(|a| n - a).collect();
    if !e2_check(n, q, &xs).ok()?.within {
        return None;
    }
    let srg = if s == 2 {
        let p = scheme.srg_parameters()?;
        Some(p.map(|x| x.to_integer()))
    } else {
        None
    };
    let section = if s == 2 && q == 2 && *size == Int::from(2 * n) && alphas == [n / 2, n] && n % 2 == 0 {
        Section::Hadamard
    } else if s >= 3 && *size == upper {
        Section::Tight2s
    } else {
        Section::Main
    };
    Some(FeasibleTuple {
        size: size.clone(),
        n,
        q,
        alphas: alphas.to_vec(),
        srg,
        tight: *size == rao_bound(n, q, 2 * s as i64 - 1),
        section,
    })
}

/// Full pipeline for one `(q, n)`.
pub fn search_cell(s: i64, q: i64, n: i64, exhaustive: bool) -> Result<SearchOutcome, SearchError> {
    let sizes = if exhaustive {
        candidate_sizes(n, q, s)?
    } else {
        prefiltered_sizes(n, q, s)?
    };
    let mut out = SearchOutcome::default();
    for size in sizes {
        out.ideals += 1;
        match solve_design_ideal(&size, n, q, s) {
            Ok(tuples) => {
                out.rows.extend(tuples.iter().filter_map(|a| validate(&size, n, q, a)));
            }
            Err(reason) => out.unresolved.push(Unresolved { size, n, q, reason }),
        }
    }
    Ok(out)
}

/// All feasible tuples in the range, sorted by `(q, n, N, alphas)`.
pub fn feasible_tuples(range: &SearchRange) -> Result<SearchOutcome, SearchError> {
    let s = range.s;
    if range.q_min > range.q_max {
        return Err(SearchError::Range("q"));
    }
    let n_min = range.n_min.max(s + 1);
    if n_min > range.n_max {
        return Err(SearchError::Range("n"));
    }
    check(n_min, range.q_min.max(2), s)?;
    if range.q_min < 2 {
        return Err(SearchError::Alphabet(range.q_min));
    }
    let cells: Vec<(i64, i64)> = (range.q_min..=range.q_max)
        .flat_map(|q| (n_min..=range.n_max).map(move |n| (q, n)))
        .collect();
    let parts: Vec<SearchOutcome> = cells
        .par_iter()
        .map(|&(q, n)| search_cell(s, q, n, range.exhaustive))
        .collect::<Result<_, _>>()?;
    let mut out = SearchOutcome::default();
    for p in parts {
        out.rows.extend(p.rows);
        out.unresolved.extend(p.unresolved);
        out.ideals += p.ideals;
    }
    out.rows.sort_by_key(FeasibleTuple::key);
    out.unresolved.sort_by(|a, b| (a.q, a.n, &a.size).cmp(&(b.q, b.n, &b.size)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSolution {
    pub n: i64,
    pub size: Int,
    pub a: i64,
    /// `sqrt(n - 2)` for `s = 3`, `sqrt(3n - 8)` for `s = 4`.
    pub m: Option<i64>,
    pub alphas: Vec<i64>,
    /// Existence depends on a Hadamard matrix of order `n`.
    pub conditional: bool,
}

/// Closed forms for a symmetric degree set: `(n, N, a)` from `m`.
/// `s = 3`: `n = m^2 + 2`, `N = n^2 - n + 2`, `a = (n - m)/2`.
/// `s = 4`: `n = (m^2 + 8)/3`, `N = n(n^2 - 3n + 8)/3`, `a = (n - m)/2`.
pub fn symmetric_closed_form(s: i64, m: i64) -> Option<(i64, Int, i64)> {
    let (n, num, den) = match s {
        3 => {
            let n = m * m + 2;
            (n, n * n - n + 2, 1)
        }
        4 => {
            if (m * m + 8) % 3 != 0 {
                return None;
            }
            let n = (m * m + 8) / 3;
            (n, n * (n * n - 3 * n + 8), 3)
        }
        _ => return None,
    };
    ((n - m) % 2 == 0 && num % den == 0).then(|| (n, Int::from(num / den), (n - m) / 2))
}

fn symmetric_alphas(s: i64, n: i64, a: i64) -> Option<Vec<i64>> {
    match s {
        2 => (n % 2 == 0).then(|| vec![n / 2, n]),
        3 => Some(vec![a, n - a, n]),
        _ => (n % 2 == 0).then(|| vec![a, n / 2, n - a, n]),
    }
}

/// Integrality of the `(4,1)` entry of the first eigenmatrix:
/// `(m^2 + 2)/m` for `s = 3`, `n/m` for `s = 4`.
pub fn symmetric_entry_integral(s: i64, m: i64) -> bool {
    match s {
        3 => (m * m + 2) % m == 0,
        4 => ((m * m + 8) / 3) % m == 0,
        _ => false,
    }
}

/// Binary `(2s-1)`-designs of degree `s` whose degree set together with 0 is
/// symmetric about `n/2`, for `2s <= n <= n_max`.
pub fn symmetric_search(s: i64, n_max: i64) -> Result<Vec<SymmetricSolution>, SearchError> {
    if !(2..=4).contains(&s) {
        return Err(SearchError::Symmetric(s));
    }
    let step = num_traits::pow(Int::from(2), (2 * s - 1) as usize);
    let mut candidates: Vec<(i64, Int, i64, Option<i64>)> = Vec::new();
    if s == 2 {
        for n in 4..=n_max {
            candidates.push((n, Int::from(2 * n), n / 2, None));
        }
    } else {
        let mut m = 1;
        loop {
            let n_of_m = if s == 3 { m * m + 2 } else { (m * m + 8) / 3 };
            if n_of_m > n_max {
                break;
            }
            if symmetric_entry_integral(s, m) {
                if let Some((n, size, a)) = symmetric_closed_form(s, m) {
                    candidates.push((n, size, a, Some(m)));
                }
            }
            m += 1;
        }
    }
    let mut out = Vec::new();
    for (n, size, a, m) in candidates {
        let Some(alphas) = symmetric_alphas(s, n, a) else {
            continue;
        };
        if n < 2 * s || a < 1 || alphas.windows(2).any(|w| w[0] >= w[1]) {
            continue;
        }
        if !size.is_multiple_of(&step) {
            continue;
        }
        if validate(&size, n, 2, &alphas).is_some() {
            out.push(SymmetricSolution {
                n,
                size,
                a,
                m,
                alphas,
                conditional: s == 2,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn candidate_examples() {
        assert_eq!(candidate_sizes(5, 2, 2).unwrap(), vec![int(16)]);
        assert!(candidate_sizes(11, 3, 2).unwrap().contains(&int(243)));
        assert_eq!(candidate_sizes(2, 2, 2), Err(SearchError::Length { n: 2, s: 2 }));
        assert_eq!(prefiltered_sizes(5, 2, 2).unwrap(), vec![int(16)]);
        assert!(prefiltered_sizes(11, 3, 2).unwrap().contains(&int(243)));
    }

    #[test]
    fn polynomials_16_5_2() {
        let ps = design_polynomials(&int(16), 5, 2, 2).unwrap();
        assert_eq!(ps.len(), 3);
        assert!(ps[0].is_zero());
        let at = |a: i64, b: i64| ps.iter().all(|p| p.eval(&[rat(a), rat(b)]).is_zero());
        let hits: Vec<(i64, i64)> = (1..=5)
            .flat_map(|a| (a + 1..=5).map(move |b| (a, b)))
            .filter(|&(a, b)| at(a, b))
            .collect();
        assert_eq!(hits, vec![(2, 4)]);
        assert_eq!(solve_design_ideal(&int(16), 5, 2, 2).unwrap(), vec![vec![2, 4]]);
    }

    #[test]
    fn eliminant_16_5_2() {
        let ps = design_polynomials(&int(16), 5, 2, 2).unwrap();
        let gb = buchberger(&Ideal::new(ps).unwrap());
        let Elimination::Univariate(g) = eliminate_univariate(&gb) else {
            panic!("expected an eliminant")
        };
        assert!(g.eval_i64(4).is_zero());
        assert_eq!(integer_points(&gb, 1, 5)[..].iter().filter(|p| p[0] < p[1]).count(), 1);
    }

    #[test]
    fn golay_rows() {
        assert_eq!(solve_design_ideal(&int(243), 11, 3, 2).unwrap(), vec![vec![6, 9]]);
        assert_eq!(solve_design_ideal(&int(729), 12, 3, 3).unwrap(), vec![vec![6, 9, 12]]);
        let row = validate(&int(243), 11, 3, &[6, 9]).unwrap();
        assert_eq!(row.srg, Some([int(243), int(110), int(37), int(60)]));
        assert!(!row.tight);
        assert_eq!(row.csv_row(), "243,11,3,6,9,243,110,37,60,false");
    }

    #[test]
    fn sections() {
        assert_eq!(validate(&int(16), 8, 2, &[4, 8]).unwrap().section, Section::Hadamard);
        let t = validate(&int(64), 7, 2, &[2, 4, 6]).unwrap();
        assert_eq!(t.section, Section::Tight2s);
        let t = validate(&int(64), 6, 4, &[4, 6]).unwrap();
        assert!(t.tight);
        assert_eq!(t.section, Section::Main);
    }

    #[test]
    fn symmetric() {
        let s3 = symmetric_search(3, 60).unwrap();
        assert_eq!(s3.iter().map(|x| (x.n, x.size.clone(), x.a)).collect::<Vec<_>>(), vec![(6, int(32), 2)]);
        let s4 = symmetric_search(4, 100).unwrap();
        assert_eq!(
            s4.iter().map(|x| (x.n, x.size.clone(), x.a)).collect::<Vec<_>>(),
            vec![(8, int(128), 2), (24, int(4096), 8)]
        );
        let s2 = symmetric_search(2, 20).unwrap();
        assert_eq!(s2.iter().map(|x| x.n).collect::<Vec<_>>(), vec![4, 8, 12, 16, 20]);
        assert!(s2.iter().all(|x| x.conditional && x.size == int(2 * x.n)));
        assert_eq!(symmetric_search(5, 10), Err(SearchError::Symmetric(5)));
        let m3: Vec<i64> = (1..20).filter(|&m| symmetric_entry_integral(3, m)).collect();
        assert_eq!(m3, vec![1, 2]);
        let m4: Vec<i64> = (1..40).filter(|&m| (m * m + 8) % 3 == 0 && symmetric_entry_integral(4, m)).collect();
        assert_eq!(m4, vec![1, 2, 4, 8]);
        let small: Vec<(i64, i64, i64)> = [1, 2]
            .iter()
            .filter_map(|&m| symmetric_closed_form(3, m))
            .map(|(n, size, a)| (n, size.to_i64().unwrap(), a))
            .collect();
        assert_eq!(small, vec![(3, 8, 1), (6, 32, 2)]);
        let small: Vec<(i64, i64, i64)> = [1, 2, 4, 8]
            .iter()
            .filter_map(|&m| symmetric_closed_form(4, m))
            .map(|(n, size, a)| (n, size.to_i64().unwrap(), a))
            .collect();
        assert_eq!(small, vec![(3, 8, 1), (4, 16, 1), (8, 128, 2), (24, 4096, 8)]);
    }
}
