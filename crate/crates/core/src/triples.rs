//! Triple intersection numbers `[r s t]` with respect to a fixed vertex
//! triple, constrained by double counting and by the vanishing Krein
//! parameters.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::delsarte::{fission_q, DesignParams, DelsarteError};
use crate::exact::{ExactMatrix, Int, Rat};
use crate::scheme::{SchemeParams, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error("relation index out of range 1..={0}")]
    Relation(usize),
    #[error("no vertex triple realises ({a}, {b}, {c}): p^{a}_{b}{c} = 0")]
    Inadmissible { a: usize, b: usize, c: usize },
    #[error(transparent)]
    Design(#[from] DelsarteError),
}

/// Unknown `[r s t]` with `1 <= r, s, t <= D`.
pub type Triple = (usize, usize, usize);

#[derive(Debug, Clone)]
pub struct TripleSystem {
    classes: usize,
    base: Triple,
    unknowns: Vec<Triple>,
    matrix: ExactMatrix,
    rhs: Vec<Rat>,
    caps: Vec<Rat>,
    krein_equations: usize,
}

fn delta(a: usize, b: usize) -> bool {
    a == b
}

impl TripleSystem {
    /// The system for vertices `u, v, w` with `(u,v) in R_a`,
    /// `(u,w) in R_b`, `(v,w) in R_c`.
    pub fn new(scheme: &SchemeParams, a: usize, b: usize, c: usize) -> Result<Self, TripleError> {
        let d = scheme.classes();
        for x in [a, b, c] {
            if x == 0 || x > d {
                return Err(TripleError::Relation(d));
            }
        }
        if !scheme.p(b, c, a).is_positive() {
            return Err(TripleError::Inadmissible { a, b, c });
        }
        let boundary = |r: usize, s: usize, t: usize| -> Rat {
            let hit = match (r, s, t) {
                (0, s, t) => delta(s, a) && delta(t, b),
                (r, 0, t) => delta(r, a) && delta(t, c),
                (r, s, 0) => delta(r, b) && delta(s, c),
                _ => false,
            };
            if hit {
                Rat::one()
            } else {
                Rat::zero()
            }
        };
        let unknowns: Vec<Triple> = (1..=d)
            .flat_map(|r| (1..=d).flat_map(move |s| (1..=d).map(move |t| (r, s, t))))
            .collect();
        let index = |r: usize, s: usize, t: usize| ((r - 1) * d + (s - 1)) * d + (t - 1);
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut rhs = Vec::new();
        let blank = || vec![Rat::zero(); unknowns.len()];
        for x in 1..=d {
            for y in 1..=d {
                let mut row = blank();
                for z in 1..=d {
                    row[index(x, y, z)] = Rat::one();
                }
                rows.push(row);
                rhs.push(scheme.p(x, y, a) - boundary(x, y, 0));
                let mut row = blank();
                for z in 1..=d {
                    row[index(x, z, y)] = Rat::one();
                }
                rows.push(row);
                rhs.push(scheme.p(x, y, b) - boundary(x, 0, y));
                let mut row = blank();
                for z in 1..=d {
                    row[index(z, x, y)] = Rat::one();
                }
                rows.push(row);
                rhs.push(scheme.p(x, y, c) - boundary(0, x, y));
            }
        }
        let qm = scheme.q_matrix();
        let mut krein_equations = 0;
        for i in 1..=d {
            for j in 1..=d {
                for k in 1..=d {
                    if !scheme.krein(i, j, k).is_zero() {
                        continue;
                    }
                    krein_equations += 1;
                    let mut row = blank();
                    let mut constant = Rat::zero();
                    for r in 0..=d {
                        for s in 0..=d {
                            for t in 0..=d {
                                let w = qm.get(r, i) * qm.get(s, j) * qm.get(t, k);
                                if r == 0 || s == 0 || t == 0 {
                                    constant += w * boundary(r, s, t);
                                } else {
                                    row[index(r, s, t)] += w;
                                }
                            }
                        }
                    }
                    rows.push(row);
                    rhs.push(-constant);
                }
            }
        }
        let caps = unknowns
            .iter()
            .map(|&(r, s, t)| {
                let m1 = scheme.p(r, s, a) - boundary(r, s, 0);
                let m2 = scheme.p(r, t, b) - boundary(r, 0, t);
                let m3 = scheme.p(s, t, c) - boundary(0, s, t);
                m1.min(m2).min(m3)
            })
            .collect();
        Ok(TripleSystem {
            classes: d,
            base: (a, b, c),
            unknowns,
            matrix: ExactMatrix::from_rows(rows),
            rhs,
            caps,
            krein_equations,
        })
    }

    pub fn base(&self) -> Triple {
        self.base
    }

    pub fn unknowns(&self) -> &[Triple] {
        &self.unknowns
    }

    pub fn equations(&self) -> (&ExactMatrix, &[Rat]) {
        (&self.matrix, &self.rhs)
    }

    pub fn krein_equation_count(&self) -> usize {
        self.krein_equations
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn unknown_index(&self, t: Triple) -> usize {
        let d = self.classes;
        ((t.0 - 1) * d + (t.1 - 1)) * d + (t.2 - 1)
    }

    pub fn solve(&self) -> TripleSolution {
        let sol = self
            .matrix
            .solve_affine(&self.rhs)
            .expect("dimensions agree by construction");
        TripleSolution {
            unknowns: self.unknowns.clone(),
            solution: sol,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TripleSolution {
    unknowns: Vec<Triple>,
    solution: Option<crate::exact::AffineSolution>,
}

impl TripleSolution {
    pub fn is_consistent(&self) -> bool {
        self.solution.is_some()
    }

    pub fn is_unique(&self) -> bool {
        self.solution.as_ref().is_some_and(|s| s.is_unique())
    }

    pub fn kernel_dimension(&self) -> Option<usize> {
        self.solution.as_ref().map(|s| s.kernel.len())
    }

    /// The value of `[r s t]` when it does not depend on the free
    /// parameters.
    pub fn value(&self, t: Triple) -> Option<Rat> {
        let sol = self.solution.as_ref()?;
        let i = self.unknowns.iter().position(|&u| u == t)?;
        if sol.kernel.iter().any(|k| !k[i].is_zero()) {
            return None;
        }
        Some(sol.particular[i].clone())
    }

    /// Every coordinate determined by the system, in unknown order.
    pub fn determined(&self) -> Vec<(Triple, Rat)> {
        self.unknowns
            .iter()
            .filter_map(|&t| self.value(t).map(|v| (t, v)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Feasible(Vec<Rat>),
    Infeasible(Witness),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A determined coordinate that is negative or not an integer.
    Value { base: Triple, triple: Triple, value: Rat },
    /// The linear system has no solution at all.
    Inconsistent { base: Triple },
    /// The box search found no nonnegative integer point.
    EmptyBox { base: Triple },
    /// The scheme parameters themselves fail.
    Parameters(Violation),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Value { base, triple, value } => write!(
                f,
                "[{} {} {}] = {} at triple ({},{},{})",
                triple.0, triple.1, triple.2, value, base.0, base.1, base.2
            ),
            Witness::Inconsistent { base } => {
                write!(f, "inconsistent system at triple ({},{},{})", base.0, base.1, base.2)
            }
            Witness::EmptyBox { base } => write!(
                f,
                "no nonnegative integer solution at triple ({},{},{})",
                base.0, base.1, base.2
            ),
            Witness::Parameters(v) => write!(f, "{v}"),
        }
    }
}

fn bad(v: &Rat) -> bool {
    v.is_negative() || !v.is_integer()
}

/// Upper bound on the number of box points visited before giving up.
pub const BOX_LIMIT: u64 = 2_000_000;

/// Decides whether the system has a nonnegative integer solution.
pub fn verdict(system: &TripleSystem) -> Verdict {
    let solved = system.solve();
    let base = system.base;
    let Some(sol) = &solved.solution else {
        return Verdict::Infeasible(Witness::Inconsistent { base });
    };
    for (triple, value) in solved.determined() {
        if bad(&value) {
            return Verdict::Infeasible(Witness::Value { base, triple, value });
        }
    }
    if sol.is_unique() {
        return Verdict::Feasible(sol.particular.clone());
    }
    let mut ranges = Vec::new();
    let mut total: u64 = 1;
    for &f in &sol.free {
        let cap = system.caps[f].floor().to_integer().to_i64().unwrap_or(i64::MAX).max(-1);
        if cap < 0 {
            return Verdict::Infeasible(Witness::EmptyBox { base });
        }
        total = total.saturating_mul(cap as u64 + 1);
        ranges.push(cap);
    }
    if total > BOX_LIMIT {
        return Verdict::Unknown;
    }
    let mut point = vec![0i64; ranges.len()];
    loop {
        let mut x = sol.particular.clone();
        for (k, &p) in point.iter().enumerate() {
            if p != 0 {
                let pr = Rat::from_integer(Int::from(p));
                for (xi, ki) in x.iter_mut().zip(&sol.kernel[k]) {
                    *xi += &pr * ki;
                }
            }
        }
        if x.iter().all(|v| !bad(v)) {
            return Verdict::Feasible(x);
        }
        let mut k = 0;
        loop {
            if k == point.len() {
                return Verdict::Infeasible(Witness::EmptyBox { base });
            }
            if point[k] < ranges[k] {
                point[k] += 1;
                break;
            }
            point[k] = 0;
            k += 1;
        }
    }
}

/// Runs every admissible base triple; the reported witness is the first in
/// lexicographic order of the base triple.
pub fn triple_feasible(scheme: &SchemeParams) -> SchemeVerdict {
    let report = scheme.feasibility();
    if let Some(v) = report.violations.first() {
        return SchemeVerdict {
            verdict: Verdict::Infeasible(Witness::Parameters(v.clone())),
            checked: vec![],
        };
    }
    let d = scheme.classes();
    let bases: Vec<Triple> = (1..=d)
        .flat_map(|a| (1..=d).flat_map(move |b| (1..=d).map(move |c| (a, b, c))))
        .filter(|&(a, b, c)| scheme.p(b, c, a).is_positive())
        .collect();
    let checked: Vec<(Triple, Verdict)> = bases
        .par_iter()
        .map(|&(a, b, c)| {
            let system = TripleSystem::new(scheme, a, b, c).expect("admissible");
            ((a, b, c), verdict(&system))
        })
        .collect();
    let verdict = checked
        .iter()
        .find_map(|(_, v)| matches!(v, Verdict::Infeasible(_)).then(|| v.clone()))
        .or_else(|| {
            checked
                .iter()
                .any(|(_, v)| *v == Verdict::Unknown)
                .then_some(Verdict::Unknown)
        })
        .unwrap_or(Verdict::Feasible(vec![]));
    SchemeVerdict { verdict, checked }
}

#[derive(Debug, Clone)]
pub struct SchemeVerdict {
    pub verdict: Verdict,
    pub checked: Vec<(Triple, Verdict)>,
}

/// Second eigenmatrix of the fission scheme of a tight 3-design in
/// `H(q+2, q)`.
pub fn tight3_q_matrix(q: i64) -> ExactMatrix {
    ExactMatrix::from_i64_rows(&[
        vec![1, q * q - 1, (q - 1) * (q - 1) * (q + 1), q - 1],
        vec![1, -1, 1 - q, q - 1],
        vec![1, q - 1, 1 - q, -1],
        vec![1, -q - 1, q + 1, -1],
    ])
}

#[derive(Debug, Clone)]
pub struct Tight3Report {
    pub q: i64,
    pub scheme: SchemeParams,
    pub matches_closed_form: bool,
    pub krein_array: Option<String>,
    pub p222: Rat,
    pub value_123: Option<Rat>,
    /// The integrality obstruction: `p_{22}^2` first, then `[1 2 3]` and
    /// the remaining triple numbers at `(2, 2, 2)`.
    pub verdict: Verdict,
    /// Every intersection number and Krein parameter, independently of the
    /// obstruction above.
    pub parameters: crate::scheme::FeasibilityReport,
}

impl Tight3Report {
    pub fn rejected(&self) -> bool {
        matches!(self.verdict, Verdict::Infeasible(_))
    }
}

/// Builds the fission scheme of a putative tight 3-design
/// `(q^3, q+2, q, {q, q+2})` and tests `p_{22}^2` and the triple
/// intersection numbers at `(2, 2, 2)` for integrality.
pub fn tight3(q: i64) -> Result<Tight3Report, TripleError> {
    let size = num_traits::pow(Int::from(q), 3);
    let design = DesignParams::extremal(size, q + 2, q, vec![q, q + 2])?;
    let scheme = fission_q(&design)?;
    let matches_closed_form = *scheme.q_matrix() == tight3_q_matrix(q);
    let krein_array = scheme.qpoly_orderings().first().map(|o| o.krein_array());
    let p222 = scheme.p(2, 2, 2).clone();
    let parameters = scheme.feasibility();
    let (value_123, verdict) = if bad(&p222) {
        let v = Violation {
            tensor: crate::scheme::Tensor::Intersection,
            index: (2, 2, 2),
            value: p222.clone(),
        };
        (None, Verdict::Infeasible(Witness::Parameters(v)))
    } else if p222.is_zero() {
        (None, Verdict::Unknown)
    } else {
        let system = TripleSystem::new(&scheme, 2, 2, 2)?;
        let value = system.solve().value((1, 2, 3));
        let verdict = match &value {
            Some(v) if bad(v) => Verdict::Infeasible(Witness::Value {
                base: (2, 2, 2),
                triple: (1, 2, 3),
                value: v.clone(),
            }),
            _ => verdict(&system),
        };
        (value, verdict)
    };
    Ok(Tight3Report {
        q,
        scheme,
        matches_closed_form,
        krein_array,
        p222,
        value_123,
        verdict,
        parameters,
    })
}
