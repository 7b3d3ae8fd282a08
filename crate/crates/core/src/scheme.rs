//! Association schemes at the parameter level: eigenmatrices, intersection
//! numbers, Krein parameters, and Q-polynomial orderings.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{ExactMatrix, Int, LinalgError, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("first column of the eigenmatrix must be all ones")]
    FirstColumn,
    #[error("scheme size must be positive")]
    Size,
}

#[derive(Clone, PartialEq, Eq)]
pub struct SchemeParams {
    classes: usize,
    v: Int,
    p: ExactMatrix,
    q: ExactMatrix,
    p_tensor: Vec<Rat>,
    q_tensor: Vec<Rat>,
}

impl fmt::Debug for SchemeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SchemeParams")
            .field("classes", &self.classes)
            .field("v", &self.v)
            .field("Q", &self.q)
            .finish_non_exhaustive()
    }
}

/// Solves `M x = b` for each pair `(i, j)`, where `b_l = M_{li} M_{lj}`,
/// given `M^{-1}`. The result is stored at `(i * d + j) * d + k`.
fn structure_constants(m: &ExactMatrix, m_inv: &ExactMatrix) -> Vec<Rat> {
    let d = m.rows();
    let mut out = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let b: Vec<Rat> = (0..d).map(|l| m.get(l, i) * m.get(l, j)).collect();
            out.extend(m_inv.mul_vec(&b).expect("square"));
        }
    }
    out
}

impl SchemeParams {
    /// Builds a scheme from its second eigenmatrix; `P = v Q^{-1}`.
    pub fn from_q(q: ExactMatrix, v: Int) -> Result<Self, SchemeError> {
        if !v.is_positive() {
            return Err(SchemeError::Size);
        }
        let q_inv = q.inverse()?;
        if q.column(0).iter().any(|x| !x.is_one()) {
            return Err(SchemeError::FirstColumn);
        }
        let vr = Rat::from_integer(v.clone());
        let p = q_inv.scale(&vr);
        let p_inv = q.scale(&vr.recip());
        Ok(Self::assemble(p, q, q_inv, p_inv, v))
    }

    /// Builds a scheme from its first eigenmatrix; `Q = v P^{-1}`.
    pub fn from_p(p: ExactMatrix, v: Int) -> Result<Self, SchemeError> {
        if !v.is_positive() {
            return Err(SchemeError::Size);
        }
        let p_inv = p.inverse()?;
        if p.column(0).iter().any(|x| !x.is_one()) {
            return Err(SchemeError::FirstColumn);
        }
        let vr = Rat::from_integer(v.clone());
        let q = p_inv.scale(&vr);
        let q_inv = p.scale(&vr.recip());
        Ok(Self::assemble(p, q, q_inv, p_inv, v))
    }

    fn assemble(
        p: ExactMatrix,
        q: ExactMatrix,
        q_inv: ExactMatrix,
        p_inv: ExactMatrix,
        v: Int,
    ) -> Self {
        let p_tensor = structure_constants(&p, &p_inv);
        let q_tensor = structure_constants(&q, &q_inv);
        SchemeParams {
            classes: p.rows() - 1,
            v,
            p,
            q,
            p_tensor,
            q_tensor,
        }
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn size(&self) -> &Int {
        &self.v
    }

    pub fn p_matrix(&self) -> &ExactMatrix {
        &self.p
    }

    pub fn q_matrix(&self) -> &ExactMatrix {
        &self.q
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let d = self.classes + 1;
        (i * d + j) * d + k
    }

    /// Intersection number `p_{ij}^k`.
    pub fn p(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.p_tensor[self.idx(i, j, k)]
    }

    /// Krein parameter `q_{ij}^k`.
    pub fn krein(&self, i: usize, j: usize, k: usize) -> &Rat {
        &self.q_tensor[self.idx(i, j, k)]
    }

    pub fn valencies(&self) -> &[Rat] {
        self.p.row(0)
    }

    pub fn multiplicities(&self) -> &[Rat] {
        self.q.row(0)
    }

    pub fn feasibility(&self) -> FeasibilityReport {
        let d = self.classes + 1;
        let mut violations = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let x = self.p(i, j, k);
                    if !x.is_integer() || x.is_negative() {
                        violations.push(Violation {
                            tensor: Tensor::Intersection,
                            index: (i, j, k),
                            value: x.clone(),
                        });
                    }
                    let y = self.krein(i, j, k);
                    if y.is_negative() {
                        violations.push(Violation {
                            tensor: Tensor::Krein,
                            index: (i, j, k),
                            value: y.clone(),
                        });
                    }
                }
            }
        }
        let p_viol = violations.iter().filter(|v| v.tensor == Tensor::Intersection);
        FeasibilityReport {
            p_integral: p_viol.clone().all(|v| v.value.is_integer()),
            p_nonnegative: p_viol.clone().all(|v| !v.value.is_negative()),
            krein_nonnegative: violations.iter().all(|v| v.tensor != Tensor::Krein),
            violations,
        }
    }

    /// The Krein matrix `L_i*` with `(a, b)` entry `q_{i b}^a`.
    pub fn krein_matrix(&self, i: usize) -> ExactMatrix {
        let d = self.classes + 1;
        let rows = (0..d)
            .map(|a| (0..d).map(|b| self.krein(i, b, a).clone()).collect())
            .collect();
        ExactMatrix::from_rows(rows)
    }

    /// Every ordering `0, o_1, ..., o_D` of the idempotents under which
    /// `L_{o_1}*` is irreducible tridiagonal.
    pub fn qpoly_orderings(&self) -> Vec<QPolyOrdering> {
        let d = self.classes;
        let mut out = Vec::new();
        for first in 1..=d {
            let mut order = vec![0, first];
            let mut used = vec![false; d + 1];
            used[0] = true;
            used[first] = true;
            self.extend_ordering(&mut order, &mut used, &mut out);
        }
        if d == 0 {
            out.push(self.ordering_data(vec![0]));
        }
        out
    }

    fn extend_ordering(
        &self,
        order: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<QPolyOrdering>,
    ) {
        let d = self.classes;
        let e1 = order[1];
        let pos = order.len();
        // Check the newest row/column against all earlier ones.
        let last = order[pos - 1];
        for (a, &oa) in order.iter().enumerate().take(pos - 1) {
            let nonzero_ab = !self.krein(e1, last, oa).is_zero();
            let nonzero_ba = !self.krein(e1, oa, last).is_zero();
            let adjacent = a + 2 == pos;
            if adjacent != nonzero_ab || adjacent != nonzero_ba {
                return;
            }
        }
        if pos == d + 1 {
            out.push(self.ordering_data(order.clone()));
            return;
        }
        for next in 1..=d {
            if !used[next] {
                used[next] = true;
                order.push(next);
                self.extend_ordering(order, used, out);
                order.pop();
                used[next] = false;
            }
        }
    }

    fn ordering_data(&self, order: Vec<usize>) -> QPolyOrdering {
        let d = self.classes;
        if d == 0 {
            return QPolyOrdering {
                order,
                b: vec![],
                c: vec![],
                q_antipodal: false,
            };
        }
        let e1 = order[1];
        let b: Vec<Rat> = (0..d)
            .map(|i| self.krein(e1, order[i + 1], order[i]).clone())
            .collect();
        let c: Vec<Rat> = (1..=d)
            .map(|i| self.krein(e1, order[i - 1], order[i]).clone())
            .collect();
        // b_i* = c_{D-i}* for all i != floor(D/2), 0 <= i < D.
        let q_antipodal = (0..d)
            .filter(|&i| i != d / 2)
            .all(|i| b[i] == c[d - i - 1]);
        QPolyOrdering {
            order,
            b,
            c,
            q_antipodal,
        }
    }

    /// `(v, k, lambda, mu)` for a two-class scheme, taken on the relation of
    /// smaller valency.
    pub fn srg_parameters(&self) -> Option<[Rat; 4]> {
        if self.classes != 2 {
            return None;
        }
        let k = self.valencies();
        let (i, j) = if k[1] <= k[2] { (1, 2) } else { (2, 1) };
        Some([
            Rat::from_integer(self.v.clone()),
            k[i].clone(),
            self.p(i, i, i).clone(),
            self.p(i, i, j).clone(),
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tensor {
    Intersection,
    Krein,
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tensor::Intersection => "p",
            Tensor::Krein => "q",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub tensor: Tensor,
    pub index: (usize, usize, usize),
    pub value: Rat,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.index;
        write!(f, "{}_{{{},{}}}^{} = {}", self.tensor, i, j, k, self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub p_integral: bool,
    pub p_nonnegative: bool,
    pub krein_nonnegative: bool,
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.p_integral && self.p_nonnegative && self.krein_nonnegative
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolyOrdering {
    pub order: Vec<usize>,
    pub b: Vec<Rat>,
    pub c: Vec<Rat>,
    pub q_antipodal: bool,
}

impl QPolyOrdering {
    pub fn krein_array(&self) -> String {
        let j = |v: &[Rat]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        format!("{{{};{}}}", j(&self.b), j(&self.c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, rat_frac};
    use proptest::prelude::*;

    fn golay() -> SchemeParams {
        let q = ExactMatrix::from_i64_rows(&[vec![1, 22, 220], vec![1, 4, -5], vec![1, -5, 4]]);
        SchemeParams::from_q(q, int(243)).unwrap()
    }

    #[test]
    fn golay_dual_scheme() {
        let s = golay();
        assert_eq!(s.valencies(), &[rat(1), rat(132), rat(110)]);
        assert_eq!(
            s.srg_parameters().unwrap(),
            [rat(243), rat(110), rat(37), rat(60)]
        );
        assert!(s.feasibility().is_feasible());
        let pq = s.p_matrix().mul(s.q_matrix()).unwrap();
        assert_eq!(pq, ExactMatrix::identity(3).scale(&rat(243)));
    }

    #[test]
    fn trivial_schemes() {
        let q = ExactMatrix::from_i64_rows(&[vec![1, 1], vec![1, -1]]);
        let s = SchemeParams::from_q(q.clone(), int(2)).unwrap();
        assert_eq!(s.p_matrix(), &q);
        let ords = s.qpoly_orderings();
        assert_eq!(ords.len(), 1);
        for j in 0..2 {
            for k in 0..2 {
                let delta = if j == k { rat(1) } else { rat(0) };
                assert_eq!(s.p(0, j, k), &delta);
                assert_eq!(s.krein(0, j, k), &delta);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let q = ExactMatrix::from_i64_rows(&[vec![2, 1], vec![1, -1]]);
        assert_eq!(SchemeParams::from_q(q, int(2)), Err(SchemeError::FirstColumn));
        let q = ExactMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(
            SchemeParams::from_q(q, int(2)),
            Err(SchemeError::Linalg(LinalgError::Singular))
        );
    }

    #[test]
    fn infeasible_report_lists_violations() {
        // Q of a putative SRG with fractional intersection numbers.
        let q = ExactMatrix::from_i64_rows(&[vec![1, 4, 4], vec![1, 1, -2], vec![1, -2, 1]]);
        let s = SchemeParams::from_q(q, int(9)).unwrap();
        assert!(s.feasibility().is_feasible());
        let q = ExactMatrix::new(
            3,
            3,
            vec![
                rat(1), rat(4), rat(4),
                rat(1), rat_frac(3, 2), rat_frac(-5, 2),
                rat(1), rat(-2), rat(1),
            ],
        );
        let s = SchemeParams::from_q(q, int(9)).unwrap();
        let rep = s.feasibility();
        assert!(!rep.is_feasible());
        assert!(!rep.violations.is_empty());
    }

    fn check_identities(s: &SchemeParams) -> Result<(), TestCaseError> {
        let d = s.classes() + 1;
        let v = Rat::from_integer(s.size().clone());
        let k = s.valencies();
        prop_assert_eq!(k.iter().sum::<Rat>(), v.clone());
        prop_assert_eq!(
            s.p_matrix().mul(s.q_matrix()).unwrap(),
            ExactMatrix::identity(d).scale(&v)
        );
        for i in 0..d {
            for j in 0..d {
                for kk in 0..d {
                    prop_assert_eq!(s.p(i, j, kk), s.p(j, i, kk));
                    prop_assert_eq!(s.krein(i, j, kk), s.krein(j, i, kk));
                    prop_assert_eq!(&k[kk] * s.p(i, j, kk), &k[i] * s.p(kk, j, i));
                }
                let col: Rat = (0..d).map(|jj| s.p(i, jj, j).clone()).sum();
                prop_assert_eq!(col, k[i].clone());
            }
        }
        Ok(())
    }

    proptest! {
        // Hamming schemes H(n, q) are genuine schemes; check the standard
        // identities on their computed tensors.
        #[test]
        fn hamming_scheme_identities(n in 1i64..6, q in 2i64..5) {
            let rows = (0..=n)
                .map(|x| (0..=n).map(|j| Rat::from_integer(crate::krawtchouk::kraw_int(n, q, j, x))).collect())
                .collect();
            let qm = ExactMatrix::from_rows(rows);
            let s = SchemeParams::from_q(qm, num_traits::pow(int(q), n as usize)).unwrap();
            check_identities(&s)?;
            prop_assert!(s.feasibility().is_feasible());
            let ords = s.qpoly_orderings();
            prop_assert!(ords.iter().any(|o| o.order == (0..=n as usize).collect::<Vec<_>>()));
        }
    }
}
