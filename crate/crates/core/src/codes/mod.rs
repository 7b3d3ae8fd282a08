//! Explicit codes over `{1..q}`: built-in constructions, distance
//! distributions, strength, Rao bounds and contraction.

mod bounds;
mod builtin;

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

pub use bounds::{degree_upper_bound, divides, rao_bound, TightnessClass};
pub use builtin::{hadamard_code, hyperoval_oa, Builtin};

use crate::exact::{binom_int, Int, Rat};
use crate::krawtchouk::kraw_int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("word {index} has length {len}, expected {n}")]
    Length { index: usize, len: usize, n: usize },
    #[error("word {index} has symbol {symbol} outside 1..={q}")]
    Symbol { index: usize, symbol: i64, q: usize },
    #[error("word {0} is repeated")]
    Duplicate(usize),
    #[error("a code needs at least one word")]
    Empty,
    #[error("alphabet size must be between 2 and 255, got {0}")]
    Alphabet(usize),
    #[error("unknown built-in code '{0}'")]
    UnknownBuiltin(String),
    #[error("unsupported parameters for {0}")]
    Unsupported(String),
    #[error("input is not a Hadamard matrix")]
    NotHadamard,
    #[error("column {column} outside 1..={n}")]
    Column { column: usize, n: usize },
    #[error("no word carries symbol {symbol} in column {column}")]
    EmptyContraction { column: usize, symbol: usize },
    #[error("malformed code file: {0}")]
    Parse(String),
}

/// A list of distinct words of length `n` over an alphabet of size `q`.
/// Symbols are stored 0-based.
#[derive(Debug)]
pub struct Code {
    n: usize,
    q: usize,
    words: Vec<Vec<u8>>,
    distribution: OnceLock<Vec<u64>>,
}

impl Clone for Code {
    fn clone(&self) -> Self {
        Code {
            n: self.n,
            q: self.q,
            words: self.words.clone(),
            distribution: self.distribution.clone(),
        }
    }
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.q == other.q && self.words == other.words
    }
}

impl Eq for Code {}

impl Code {
    /// Builds a code from 0-based words.
    pub fn new(n: usize, q: usize, words: Vec<Vec<u8>>) -> Result<Self, CodeError> {
        if !(2..=255).contains(&q) {
            return Err(CodeError::Alphabet(q));
        }
        if words.is_empty() {
            return Err(CodeError::Empty);
        }
        let mut seen = HashSet::with_capacity(words.len());
        for (index, w) in words.iter().enumerate() {
            if w.len() != n {
                return Err(CodeError::Length { index, len: w.len(), n });
            }
            if let Some(&x) = w.iter().find(|&&x| x as usize >= q) {
                return Err(CodeError::Symbol { index, symbol: x as i64 + 1, q });
            }
            if !seen.insert(w.as_slice()) {
                return Err(CodeError::Duplicate(index));
            }
        }
        Ok(Code {
            n,
            q,
            words,
            distribution: OnceLock::new(),
        })
    }

    /// Builds a code from words over `{1..q}`.
    pub fn from_symbols(n: usize, q: usize, words: &[Vec<i64>]) -> Result<Self, CodeError> {
        let mut out = Vec::with_capacity(words.len());
        for (index, w) in words.iter().enumerate() {
            let mut row = Vec::with_capacity(w.len());
            for &x in w {
                if x < 1 || x > q as i64 {
                    return Err(CodeError::Symbol { index, symbol: x, q });
                }
                row.push((x - 1) as u8);
            }
            out.push(row);
        }
        Code::new(n, q, out)
    }

    /// Parses the text format: a header `n q N`, then `N` lines of `n`
    /// symbols in `1..q`.
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| CodeError::Parse("missing header".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| CodeError::Parse(format!("bad header '{header}'"))))
            .collect::<Result<_, _>>()?;
        let [n, q, count] = nums[..] else {
            return Err(CodeError::Parse(format!("header must be 'n q N', got '{header}'")));
        };
        let mut words = Vec::with_capacity(count);
        for line in lines {
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| CodeError::Parse(format!("bad symbol '{t}'"))))
                .collect::<Result<_, _>>()?;
            words.push(row);
        }
        if words.len() != count {
            return Err(CodeError::Parse(format!(
                "header announces {count} words, found {}",
                words.len()
            )));
        }
        Code::from_symbols(n, q, &words)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n, self.q, self.words.len());
        for w in &self.words {
            let row: Vec<String> = w.iter().map(|&x| (x + 1).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words with 0-based symbols.
    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    /// `D_d`: number of ordered pairs of words at Hamming distance `d`.
    pub fn distance_distribution(&self) -> &[u64] {
        self.distribution.get_or_init(|| {
            let n = self.n;
            self.words
                .par_iter()
                .fold(
                    || vec![0u64; n + 1],
                    |mut acc, x| {
                        for y in &self.words {
                            let d = x.iter().zip(y).filter(|(a, b)| a != b).count();
                            acc[d] += 1;
                        }
                        acc
                    },
                )
                .reduce(
                    || vec![0u64; n + 1],
                    |mut a, b| {
                        for (x, y) in a.iter_mut().zip(b) {
                            *x += y;
                        }
                        a
                    },
                )
        })
    }

    /// `sum_{x,y} K_{n,q,i}(d(x,y))`.
    pub fn krawtchouk_sum(&self, i: i64) -> Int {
        let (n, q) = (self.n as i64, self.q as i64);
        self.distance_distribution()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(d, &c)| Int::from(c) * kraw_int(n, q, i, d as i64))
            .sum()
    }

    pub fn profile(&self) -> DistanceProfile {
        let (n, q) = (self.n as i64, self.q as i64);
        let dist = self.distance_distribution().to_vec();
        let degree_set: Vec<i64> = (1..=self.n).filter(|&d| dist[d] > 0).map(|d| d as i64).collect();
        let mut complement: Vec<i64> = degree_set.iter().map(|&d| n - d).collect();
        complement.sort_unstable();
        let mut strength = 0;
        while strength < n && self.krawtchouk_sum(strength + 1).is_zero() {
            strength += 1;
        }
        let size = Int::from(self.words.len());
        let indices = (0..=strength)
            .map(|i| Rat::new(size.clone(), num_traits::pow(Int::from(q), i as usize)))
            .collect();
        DistanceProfile {
            n,
            q,
            tightness: TightnessClass::classify(&size, n, q, strength),
            size,
            distribution: dist,
            degree_set,
            complement,
            strength,
            indices,
        }
    }

    /// Rows carrying `symbol` (1-based) in `column` (1-based), with that
    /// column removed.
    pub fn contraction(&self, column: usize, symbol: usize) -> Result<Code, CodeError> {
        if column == 0 || column > self.n {
            return Err(CodeError::Column { column, n: self.n });
        }
        let words: Vec<Vec<u8>> = self
            .words
            .iter()
            .filter(|w| symbol >= 1 && w[column - 1] as usize == symbol - 1)
            .map(|w| {
                let mut v = w.clone();
                v.remove(column - 1);
                v
            })
            .collect();
        if words.is_empty() {
            return Err(CodeError::EmptyContraction { column, symbol });
        }
        Code::new(self.n - 1, self.q, words)
    }

    fn projection_balanced(&self, cols: &[usize], per_cell: usize) -> bool {
        let mut counts = vec![0usize; self.q.pow(cols.len() as u32)];
        for w in &self.words {
            let idx = cols.iter().fold(0, |acc, &c| acc * self.q + w[c] as usize);
            counts[idx] += 1;
        }
        counts.iter().all(|&c| c == per_cell)
    }

    /// Checks that every `t` columns contain each `t`-tuple equally often.
    /// All column sets are examined when `n <= 12` or there are at most
    /// 5000 of them; otherwise a seeded sample of 5000 is used.
    pub fn oa_strength_direct(&self, t: usize) -> bool {
        if t > self.n {
            return false;
        }
        let cells = match (self.q as u128).checked_pow(t as u32) {
            Some(c) if c <= self.words.len() as u128 => c as usize,
            _ => return t == 0,
        };
        if self.words.len() % cells != 0 {
            return false;
        }
        let per_cell = self.words.len() / cells;
        let total = binom_int(self.n as i64, t as i64);
        if self.n <= 12 || total <= Int::from(5000) {
            let mut cols: Vec<usize> = (0..t).collect();
            loop {
                if !self.projection_balanced(&cols, per_cell) {
                    return false;
                }
                let Some(i) = (0..t).rev().find(|&i| cols[i] != i + self.n - t) else {
                    return true;
                };
                cols[i] += 1;
                for j in i + 1..t {
                    cols[j] = cols[j - 1] + 1;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0a0a);
        (0..5000).all(|_| {
            let mut cols = sample(&mut rng, self.n, t).into_vec();
            cols.sort_unstable();
            self.projection_balanced(&cols, per_cell)
        })
    }
}

/// Distance data of a code: distribution, degree set, strength, tightness
/// and indices `lambda_i = N / q^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    pub n: i64,
    pub q: i64,
    pub size: Int,
    pub distribution: Vec<u64>,
    pub degree_set: Vec<i64>,
    /// `{n - d : d in S}`, increasing.
    pub complement: Vec<i64>,
    pub strength: i64,
    pub tightness: TightnessClass,
    pub indices: Vec<Rat>,
}

impl DistanceProfile {
    pub fn degree(&self) -> usize {
        self.degree_set.len()
    }

    /// Valencies `D_d / N` of the distance relations.
    pub fn valencies(&self) -> Vec<Rat> {
        self.degree_set
            .iter()
            .map(|&d| Rat::new(Int::from(self.distribution[d as usize]), self.size.clone()))
            .collect()
    }

    pub fn rao_bound(&self) -> Int {
        rao_bound(self.n, self.q, self.strength)
    }
}

impl fmt::Display for DistanceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        writeln!(f, "N = {}, n = {}, q = {}", self.size, self.n, self.q)?;
        writeln!(f, "degree set S = {{{}}}", join(&self.degree_set))?;
        writeln!(f, "complement S' = {{{}}}", join(&self.complement))?;
        writeln!(f, "strength t = {}", self.strength)?;
        writeln!(f, "Rao bound = {}", self.rao_bound())?;
        writeln!(f, "tightness: {}", self.tightness)?;
        let idx: Vec<String> = self.indices.iter().map(|x| x.to_string()).collect();
        write!(f, "indices lambda_0..lambda_t = {}", idx.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn build(name: &str) -> Code {
        name.parse::<Builtin>().unwrap().build().unwrap()
    }

    #[test]
    fn small_builtins() {
        let p = build("repetition-dual(6)").profile();
        assert_eq!((p.size.clone(), p.n, p.q), (int(32), 6, 2));
        assert_eq!(p.degree_set, vec![2, 4, 6]);
        assert_eq!(p.strength, 5);
        assert_eq!(p.tightness, TightnessClass::TightOdd);

        let p = build("golay-ternary-dual").profile();
        assert_eq!((p.size.clone(), p.n, p.q), (int(243), 11, 3));
        assert_eq!(p.degree_set, vec![6, 9]);
        assert_eq!(p.complement, vec![2, 5]);
        assert_eq!(p.strength, 4);
        assert_eq!(p.tightness, TightnessClass::TightEven);
        assert_eq!(p.distribution[6], 243 * 132);
        assert_eq!(p.distribution[9], 243 * 110);

        let p = build("golay-ternary-ext").profile();
        assert_eq!(p.size, int(729));
        assert_eq!(p.degree_set, vec![6, 9, 12]);
        assert_eq!(p.complement, vec![0, 3, 6]);
        assert_eq!(p.strength, 5);

        let p = build("golay-ternary").profile();
        assert_eq!(p.size, int(729));
        assert_eq!(p.degree_set, vec![5, 6, 8, 9, 11]);
    }

    #[test]
    fn hyperovals() {
        let c = build("hyperoval-oa(2)");
        let p = c.profile();
        assert_eq!(p.size, int(8));
        assert!(c.words().iter().all(|w| w.iter().filter(|&&x| x == 1).count() % 2 == 0));
        assert_eq!(p.tightness, TightnessClass::TightOdd);
        for q in [4i64, 8] {
            let p = build(&format!("hyperoval-oa({q})")).profile();
            assert_eq!(p.size, int(q * q * q));
            assert_eq!(p.degree_set, vec![q, q + 2]);
            assert_eq!(p.strength, 3);
            assert_eq!(p.tightness, TightnessClass::TightOdd);
        }
    }

    #[test]
    fn hadamard_codes() {
        for n in [4usize, 8, 16] {
            let p = build(&format!("hadamard({n})")).profile();
            assert_eq!(p.size, int(2 * n as i64));
            assert_eq!(p.degree_set, vec![n as i64 / 2, n as i64]);
            assert_eq!(p.strength, 3);
        }
    }

    #[test]
    fn direct_strength() {
        let c = build("repetition-dual(6)");
        assert!(c.oa_strength_direct(5));
        assert!(!c.oa_strength_direct(6));
        assert!(c.oa_strength_direct(0));
        let one = Code::new(3, 2, vec![vec![0, 1, 0]]).unwrap();
        assert!(one.oa_strength_direct(0));
        assert!(!one.oa_strength_direct(1));
        let p = one.profile();
        assert_eq!(p.strength, 0);
        assert!(p.degree_set.is_empty());
    }

    #[test]
    fn contraction_chain() {
        let c = build("repetition-dual(6)");
        let c1 = c.contraction(1, 1).unwrap();
        let p1 = c1.profile();
        assert_eq!((p1.size.clone(), p1.n, p1.strength), (int(16), 5, 4));
        assert_eq!(p1.degree_set, vec![2, 4]);
        assert_eq!(p1.tightness, TightnessClass::TightEven);
        let c2 = c1.contraction(1, 1).unwrap();
        let p2 = c2.profile();
        assert_eq!((p2.size.clone(), p2.n, p2.strength), (int(8), 4, 3));
        assert_eq!(p2.tightness, TightnessClass::TightOdd);

        let g = build("golay-ternary-ext").contraction(12, 2).unwrap().profile();
        assert_eq!((g.size.clone(), g.n, g.strength), (int(243), 11, 4));
        assert!(g.tightness.is_tight());

        let single = Code::new(2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        let s = single.contraction(1, 1).unwrap();
        assert_eq!(s.words(), &[vec![0], vec![1]]);
        assert_eq!(
            single.contraction(1, 2),
            Err(CodeError::EmptyContraction { column: 1, symbol: 2 })
        );
        assert!(matches!(single.contraction(3, 1), Err(CodeError::Column { .. })));
    }

    #[test]
    fn text_format() {
        let c = build("repetition-dual(4)");
        let back = Code::parse(&c.to_text()).unwrap();
        assert_eq!(back, c);
        assert!(matches!(Code::parse("2 2 1\n1 3\n"), Err(CodeError::Symbol { .. })));
        assert!(matches!(Code::parse("2 2 2\n1 2\n1 2\n"), Err(CodeError::Duplicate(1))));
        assert!(matches!(Code::parse("2 2 3\n1 2\n"), Err(CodeError::Parse(_))));
    }

    #[test]
    fn indices_integral_up_to_strength() {
        for name in ["repetition-dual(6)", "golay-ternary-dual", "hyperoval-oa(4)"] {
            let p = build(name).profile();
            assert!(p.indices.iter().all(|x| x.is_integer()), "{name}");
        }
    }
}
