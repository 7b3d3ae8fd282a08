//! A small Buchberger engine over the rationals with lexicographic order.

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{Monomial, MultiPoly, Rat, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("generators live in different variable frames")]
    Frame,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("the Vandermonde split is only defined for four variables (got {0})")]
    SplitArity(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<MultiPoly>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(generators: Vec<MultiPoly>) -> Result<Self, GroebnerError> {
        let first = generators.first().ok_or(GroebnerError::NoGenerators)?;
        if generators.iter().any(|g| g.vars() != first.vars()) {
            return Err(GroebnerError::Frame);
        }
        let nonzero: Vec<MultiPoly> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        Ok(Ideal {
            generators: if nonzero.is_empty() {
                vec![first.clone()]
            } else {
                nonzero
            },
        })
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.generators[0].nvars()
    }
}

fn lm(p: &MultiPoly) -> &Monomial {
    p.leading_term().expect("nonzero polynomial").0
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Full reduction of `f` modulo `basis`.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut p = f.clone();
    let mut rem = MultiPoly::zero(f.vars());
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|g| !g.is_zero() && divides(lm(g), &m)) {
            Some(g) => {
                let (gm, gc) = g.leading_term().unwrap();
                let e: Monomial = m.iter().zip(gm).map(|(a, b)| a - b).collect();
                p.sub_shifted(g, &e, &(c / gc));
            }
            None => {
                let (m, c) = p.pop_leading().unwrap();
                rem.push_term(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = lcm(fm, gm);
    let ef: Monomial = l.iter().zip(fm).map(|(a, b)| a - b).collect();
    let eg: Monomial = l.iter().zip(gm).map(|(a, b)| a - b).collect();
    &f.mul_term(&ef, &fc.recip()) - &g.mul_term(&eg, &gc.recip())
}

/// Reduced Gröbner basis, monic, sorted by ascending leading monomial.
pub fn buchberger(ideal: &Ideal) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = ideal.generators.iter().map(MultiPoly::primitive).collect();
    if basis.iter().all(MultiPoly::is_zero) {
        return vec![];
    }
    basis.retain(|g| !g.is_zero());
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while let Some((i, j)) = select_pair(&pairs, &basis) {
        pairs.remove(&(i, j));
        let (mi, mj) = (lm(&basis[i]).clone(), lm(&basis[j]).clone());
        if coprime(&mi, &mj) {
            continue;
        }
        let l = lcm(&mi, &mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(lm(&basis[k]), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let h = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis).primitive();
        if h.is_zero() {
            continue;
        }
        let k = basis.len();
        basis.push(h);
        for i in 0..k {
            pairs.insert((i, k));
        }
    }
    reduce_basis(basis)
}

/// Normal strategy: the pair whose lcm has the smallest total degree, then
/// the smallest lcm in the monomial order.
fn select_pair(pairs: &BTreeSet<(usize, usize)>, basis: &[MultiPoly]) -> Option<(usize, usize)> {
    pairs
        .iter()
        .map(|&(i, j)| {
            let l = lcm(lm(&basis[i]), lm(&basis[j]));
            (l.iter().sum::<u32>(), l, (i, j))
        })
        .min()
        .map(|(_, _, p)| p)
}

fn reduce_basis(basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != i && divides(lm(h), lm(g)) && (lm(h) != lm(g) || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<MultiPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, h)| h.clone())
                .collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| lm(a).cmp(lm(b)));
    reduced
}

/// What the basis says about the variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elimination {
    /// The univariate element in the last variable.
    Univariate(UniPoly),
    /// The basis is `{1}`.
    Empty,
    /// Some variable has no pure-power leading monomial.
    PositiveDimensional,
}

pub fn is_zero_dimensional(basis: &[MultiPoly]) -> bool {
    let Some(first) = basis.first() else {
        return false;
    };
    (0..first.nvars()).all(|v| {
        basis.iter().any(|g| {
            let m = lm(g);
            m[v] > 0 && m.iter().enumerate().all(|(i, &d)| i == v || d == 0)
        })
    })
}

pub fn eliminate_univariate(basis: &[MultiPoly]) -> Elimination {
    if basis.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Elimination::Empty;
    }
    if !is_zero_dimensional(basis) {
        return Elimination::PositiveDimensional;
    }
    let last = basis[0].nvars() - 1;
    basis
        .iter()
        .find_map(|g| g.as_univariate(last).filter(|u| u.degree().unwrap_or(0) > 0))
        .map_or(Elimination::PositiveDimensional, Elimination::Univariate)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Split {
    Resolved(UniPoly),
    Unresolved,
}

/// `prod_{i<j} (x_i - x_j)` in the frame of `like`.
pub fn vandermonde(like: &MultiPoly) -> MultiPoly {
    let vars = like.vars();
    let mut acc = MultiPoly::constant(vars, Rat::from_integer(1.into()));
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            let d = &MultiPoly::var(vars, i) - &MultiPoly::var(vars, j);
            acc = &acc * &d;
        }
    }
    acc
}

/// Divides the largest basis element by the Vandermonde product and
/// returns the cofactor when it is univariate in the last variable.
pub fn vandermonde_split(basis: &[MultiPoly]) -> Result<Split, GroebnerError> {
    let Some(top) = basis.last() else {
        return Ok(Split::Unresolved);
    };
    if top.nvars() != 4 {
        return Err(GroebnerError::SplitArity(top.nvars()));
    }
    Ok(top
        .div_exact(&vandermonde(top))
        .and_then(|g| g.as_univariate(3))
        .filter(|g| g.degree().unwrap_or(0) > 0)
        .map_or(Split::Unresolved, Split::Resolved))
}

/// Integer roots in `lo..=hi` by direct evaluation.
pub fn integer_roots(p: &UniPoly, lo: i64, hi: i64) -> Result<Vec<i64>, GroebnerError> {
    if p.is_zero() {
        return Err(GroebnerError::ZeroPolynomial);
    }
    Ok((lo..=hi).filter(|&x| p.eval_i64(x).is_zero()).collect())
}

/// All integer points of the variety in the box `[lo, hi]^k`, found by
/// solving the basis from the last variable upwards.
pub fn integer_points(basis: &[MultiPoly], lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let Some(first) = basis.first() else {
        return vec![];
    };
    let k = first.nvars();
    let mut out = Vec::new();
    let mut point = vec![0i64; k];
    descend(basis.to_vec(), k, lo, hi, &mut point, &mut out);
    out
}

fn descend(
    polys: Vec<MultiPoly>,
    level: usize,
    lo: i64,
    hi: i64,
    point: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if polys.iter().any(|p| p.is_constant() && !p.is_zero()) {
        return;
    }
    if level == 0 {
        out.push(point.clone());
        return;
    }
    let v = level - 1;
    let local: Vec<UniPoly> = polys
        .iter()
        .filter(|p| !p.is_zero() && p.involves(v))
        .filter_map(|p| p.as_univariate(v))
        .collect();
    let candidates: Vec<i64> = (lo..=hi)
        .filter(|&x| local.iter().all(|u| u.eval_i64(x).is_zero()))
        .collect();
    for x in candidates {
        point[v] = x;
        let next: Vec<MultiPoly> = polys
            .iter()
            .map(|p| p.substitute(v, &Rat::from_integer(x.into())))
            .filter(|p| !p.is_zero())
            .collect();
        descend(next, v, lo, hi, point, out);
    }
}
