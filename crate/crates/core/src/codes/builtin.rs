use std::fmt;
use std::str::FromStr;

use super::{Code, CodeError};

/// Multiplication in `GF(2^m)` modulo a fixed primitive polynomial.
#[derive(Debug, Clone, Copy)]
struct BinaryField {
    order: u32,
    modulus: u32,
}

impl BinaryField {
    fn new(order: u32) -> Option<Self> {
        let modulus = match order {
            2 => 0b11,
            4 => 0b111,
            8 => 0b1011,
            16 => 0b10011,
            _ => return None,
        };
        Some(BinaryField { order, modulus })
    }

    fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        let mut acc = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & self.order != 0 {
                a ^= self.modulus;
            }
        }
        acc
    }
}

/// Every `F_p`-combination of the generator rows.
fn span_mod_p(generators: &[Vec<u8>], p: u8) -> Vec<Vec<u8>> {
    let n = generators.first().map_or(0, |g| g.len());
    let mut words = vec![vec![0u8; n]];
    for g in generators {
        let mut next = Vec::with_capacity(words.len() * p as usize);
        for w in &words {
            for c in 0..p {
                next.push(
                    w.iter()
                        .zip(g)
                        .map(|(&a, &b)| ((a as u16 + c as u16 * b as u16) % p as u16) as u8)
                        .collect(),
                );
            }
        }
        words = next;
    }
    words
}

fn inv_mod(a: u8, p: u8) -> u8 {
    (1..p).find(|&x| (x as u16 * a as u16) % p as u16 == 1).expect("unit")
}

/// A basis of the dual code `{x : G x^T = 0}` over `F_p`.
pub(crate) fn dual_basis(generators: &[Vec<u8>], p: u8) -> Vec<Vec<u8>> {
    let n = generators.first().map_or(0, |g| g.len());
    let mut m: Vec<Vec<u8>> = generators.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = ((*x as u16 * inv as u16) % p as u16) as u8;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c] as u16;
                for j in 0..n {
                    let v = (m[i][j] as u16 + (p as u16 - f) * m[r][j] as u16) % p as u16;
                    m[i][j] = v as u8;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; n];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row][f]) % p;
            }
            v
        })
        .collect()
}

/// Generator rows of the cyclic code with generator polynomial `g`
/// (coefficients from degree 0 upwards).
fn cyclic_generators(g: &[u8], n: usize) -> Vec<Vec<u8>> {
    let k = n + 1 - g.len();
    (0..k)
        .map(|shift| {
            let mut row = vec![0u8; n];
            row[shift..shift + g.len()].copy_from_slice(g);
            row
        })
        .collect()
}

fn extend_zero_sum(generators: &[Vec<u8>], p: u8) -> Vec<Vec<u8>> {
    generators
        .iter()
        .map(|g| {
            let s: u32 = g.iter().map(|&x| x as u32).sum();
            let mut row = g.clone();
            row.push(((p as u32 - s % p as u32) % p as u32) as u8);
            row
        })
        .collect()
}

const TERNARY_GOLAY: [u8; 6] = [2, 0, 1, 2, 1, 1];
const BINARY_GOLAY: [u8; 12] = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1];

fn ternary_golay() -> Vec<Vec<u8>> {
    cyclic_generators(&TERNARY_GOLAY, 11)
}

fn binary_golay() -> Vec<Vec<u8>> {
    cyclic_generators(&BINARY_GOLAY, 23)
}

/// Built-in code constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    RepetitionDual(usize),
    GolayTernary,
    GolayTernaryDual,
    GolayTernaryExt,
    GolayBinary,
    GolayBinaryExt,
    GolayBinaryDual,
    /// Sylvester Hadamard matrix of the given order.
    Hadamard(usize),
    HyperovalOa(u32),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::RepetitionDual(m) => write!(f, "repetition-dual({m})"),
            Builtin::GolayTernary => f.write_str("golay-ternary"),
            Builtin::GolayTernaryDual => f.write_str("golay-ternary-dual"),
            Builtin::GolayTernaryExt => f.write_str("golay-ternary-ext"),
            Builtin::GolayBinary => f.write_str("golay-binary"),
            Builtin::GolayBinaryExt => f.write_str("golay-binary-ext"),
            Builtin::GolayBinaryDual => f.write_str("golay-binary-dual"),
            Builtin::Hadamard(n) => write!(f, "hadamard({n})"),
            Builtin::HyperovalOa(q) => write!(f, "hyperoval-oa({q})"),
        }
    }
}

impl FromStr for Builtin {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, CodeError> {
        let s = s.trim();
        let unknown = || CodeError::UnknownBuiltin(s.to_string());
        let (head, arg) = match s.split_once(['(', ':']) {
            Some((h, rest)) => (h, Some(rest.trim_end_matches(')'))),
            None => (s, None),
        };
        let num = || -> Result<usize, CodeError> {
            arg.and_then(|a| a.trim().parse().ok()).ok_or_else(unknown)
        };
        Ok(match head {
            "repetition-dual" => Builtin::RepetitionDual(num()?),
            "golay-ternary" => Builtin::GolayTernary,
            "golay-ternary-dual" => Builtin::GolayTernaryDual,
            "golay-ternary-ext" => Builtin::GolayTernaryExt,
            "golay-binary" => Builtin::GolayBinary,
            "golay-binary-ext" => Builtin::GolayBinaryExt,
            "golay-binary-dual" => Builtin::GolayBinaryDual,
            "hadamard" => Builtin::Hadamard(num()?),
            "hyperoval-oa" => Builtin::HyperovalOa(num()? as u32),
            _ => return Err(unknown()),
        })
    }
}

impl Builtin {
    pub fn build(&self) -> Result<Code, CodeError> {
        match *self {
            Builtin::RepetitionDual(m) => {
                if m < 2 {
                    return Err(CodeError::Unsupported(format!("repetition-dual({m})")));
                }
                let gens = dual_basis(&[vec![1; m]], 2);
                Code::new(m, 2, span_mod_p(&gens, 2))
            }
            Builtin::GolayTernary => Code::new(11, 3, span_mod_p(&ternary_golay(), 3)),
            Builtin::GolayTernaryDual => {
                Code::new(11, 3, span_mod_p(&dual_basis(&ternary_golay(), 3), 3))
            }
            Builtin::GolayTernaryExt => {
                Code::new(12, 3, span_mod_p(&extend_zero_sum(&ternary_golay(), 3), 3))
            }
            Builtin::GolayBinary => Code::new(23, 2, span_mod_p(&binary_golay(), 2)),
            Builtin::GolayBinaryExt => {
                Code::new(24, 2, span_mod_p(&extend_zero_sum(&binary_golay(), 2), 2))
            }
            Builtin::GolayBinaryDual => {
                Code::new(23, 2, span_mod_p(&dual_basis(&binary_golay(), 2), 2))
            }
            Builtin::Hadamard(n) => {
                if n == 0 || !n.is_power_of_two() {
                    return Err(CodeError::Unsupported(format!("hadamard({n})")));
                }
                let h: Vec<Vec<i8>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| if (i & j).count_ones() % 2 == 0 { 1 } else { -1 })
                            .collect()
                    })
                    .collect();
                hadamard_code(&h)
            }
            Builtin::HyperovalOa(q) => hyperoval_oa(q),
        }
    }
}

/// The `2n` rows of `H` and `-H`, with `+1 -> 1` and `-1 -> 2`.
pub fn hadamard_code(h: &[Vec<i8>]) -> Result<Code, CodeError> {
    let n = h.len();
    if n == 0 || h.iter().any(|r| r.len() != n || r.iter().any(|&x| x != 1 && x != -1)) {
        return Err(CodeError::NotHadamard);
    }
    for i in 0..n {
        for j in i + 1..n {
            let dot: i64 = h[i].iter().zip(&h[j]).map(|(&a, &b)| (a * b) as i64).sum();
            if dot != 0 {
                return Err(CodeError::NotHadamard);
            }
        }
    }
    let words = h
        .iter()
        .flat_map(|r| {
            let pos: Vec<u8> = r.iter().map(|&x| u8::from(x < 0)).collect();
            let neg: Vec<u8> = r.iter().map(|&x| u8::from(x > 0)).collect();
            [pos, neg]
        })
        .collect();
    Code::new(n, 2, words)
}

/// Evaluations of every linear form on `F_q^3` at the points of the
/// hyperoval `{(1,t,t^2)} + {(0,1,0), (0,0,1)}`.
pub fn hyperoval_oa(q: u32) -> Result<Code, CodeError> {
    let field = BinaryField::new(q).ok_or_else(|| CodeError::Unsupported(format!("hyperoval-oa({q})")))?;
    let mut points: Vec<[u32; 3]> = (0..q).map(|t| [1, t, field.mul(t, t)]).collect();
    points.push([0, 1, 0]);
    points.push([0, 0, 1]);
    let mut words = Vec::with_capacity((q * q * q) as usize);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                words.push(
                    points
                        .iter()
                        .map(|p| (field.mul(a, p[0]) ^ field.mul(b, p[1]) ^ field.mul(c, p[2])) as u8)
                        .collect(),
                );
            }
        }
    }
    Code::new(q as usize + 2, q as usize, words)
}
