//! Rank backends for the graded Jacobian linear algebra.
//!
//! Two modes:
//!
//! * `Exact` - every rank is unconditionally correct. Small matrices go
//!   through fraction-free Bareiss elimination over the integers; large ones
//!   through multi-prime elimination with enough primes that their product
//!   exceeds the Hadamard bound on all minors, which certifies the maximum
//!   of the per-prime ranks as the true rank (a larger nonzero minor would
//!   survive modulo at least one prime of the pool).
//! * `ModularCertified` - ranks are maxima over three random 62-bit primes
//!   drawn from the recorded seed; callers re-verify every rank that feeds a
//!   boolean verdict through [`RankEngine::rank_exact`]. Full column rank
//!   modulo a single prime is already unconditional (a mod-p rank never
//!   exceeds the rational rank), which the mdr scan exploits.

use std::sync::Mutex;

use num::{BigUint, Integer, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactpoly::modp::{invmod, is_prime_u64, mulmod, submod};
use crate::exactpoly::rat::{Int, Rat};

/// Dense integer matrix, row major.
#[derive(Clone, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
    /// i64 mirror when every entry fits; fast path for modular reduction.
    small: Option<Vec<i64>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
            small: None,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Int) {
        self.data[r * self.cols + c] += v;
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    /// Freeze the entry table; computes the i64 mirror if possible.
    pub fn finish(mut self) -> Self {
        let small: Option<Vec<i64>> = self
            .data
            .iter()
            .map(|v| i64::try_from(v).ok())
            .collect();
        self.small = small;
        self
    }

    pub fn transposed(&self) -> Self {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out.finish()
    }

    /// Entries reduced into `[0, p)`.
    fn reduce_mod(&self, p: u64) -> Vec<u64> {
        match &self.small {
            Some(v) => v
                .iter()
                .map(|&x| {
                    let m = x % p as i64;
                    if m < 0 {
                        (m + p as i64) as u64
                    } else {
                        m as u64
                    }
                })
                .collect(),
            None => {
                let pb = Int::from(p);
                self.data
                    .iter()
                    .map(|x| {
                        let r = x.mod_floor(&pb);
                        let (_, digits) = r.to_u64_digits();
                        digits.first().copied().unwrap_or(0)
                    })
                    .collect()
            }
        }
    }

    /// Rank over `Z/p` by Gaussian elimination.
    pub fn rank_mod(&self, p: u64) -> usize {
        let mut m = self.reduce_mod(p);
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let pivot = (row..rows).find(|&r| m[r * cols + col] != 0);
            let Some(pr) = pivot else { continue };
            if pr != row {
                for j in col..cols {
                    m.swap(pr * cols + j, row * cols + j);
                }
            }
            let inv = invmod(m[row * cols + col], p);
            for r in row + 1..rows {
                let factor = m[r * cols + col];
                if factor == 0 {
                    continue;
                }
                let f = mulmod(factor, inv, p);
                m[r * cols + col] = 0;
                for j in col + 1..cols {
                    let t = mulmod(f, m[row * cols + j], p);
                    m[r * cols + j] = submod(m[r * cols + j], t, p);
                }
            }
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Fraction-free Bareiss rank over the integers. Exact; intended for
    /// small matrices (entry growth is cubic-ish in the pivot count).
    pub fn rank_bareiss(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut m: Vec<Vec<Int>> = (0..rows)
            .map(|r| self.data[r * cols..(r + 1) * cols].to_vec())
            .collect();
        let mut prev = Int::one();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
            let Some(pr) = pivot else { continue };
            m.swap(row, pr);
            for r in row + 1..rows {
                for j in col + 1..cols {
                    let v = (&m[row][col] * &m[r][j] - &m[r][col] * &m[row][j]) / &prev;
                    m[r][j] = v;
                }
                m[r][col] = Int::zero();
            }
            prev = m[row][col].clone();
            row += 1;
        }
        row
    }

    /// log2 upper bound for the absolute value of any minor: product of the
    /// `min(rows, cols)` largest column 2-norms (Hadamard).
    fn hadamard_log2(&self) -> u64 {
        let mut norms: Vec<BigUint> = (0..self.cols)
            .map(|c| {
                let mut s = BigUint::zero();
                for r in 0..self.rows {
                    let v = self.get(r, c).magnitude();
                    s += v * v;
                }
                s
            })
            .filter(|n| !n.is_zero())
            .collect();
        norms.sort_by(|a, b| b.cmp(a));
        let take = norms.len().min(self.rows.min(self.cols));
        // sum of log2(norm^2)/2, rounded up generously
        let mut bits = 0u64;
        for n in norms.iter().take(take) {
            bits += n.bits() / 2 + 1;
        }
        bits + 1
    }

    /// Exact nullspace basis over the rationals (each vector of length
    /// `cols`, denominators cleared to primitive integer vectors).
    pub fn nullspace_exact(&self) -> Vec<Vec<Int>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut m: Vec<Vec<Rat>> = (0..rows)
            .map(|r| {
                self.data[r * cols..(r + 1) * cols]
                    .iter()
                    .map(|v| Rat::from_integer(v.clone()))
                    .collect()
            })
            .collect();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
            let Some(pr) = pivot else { continue };
            m.swap(row, pr);
            let inv = Rat::one() / m[row][col].clone();
            for j in col..cols {
                m[row][j] = &m[row][j] * &inv;
            }
            for r in 0..rows {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in col..cols {
                        let t = &f * &m[row][j];
                        m[r][j] -= t;
                    }
                }
            }
            pivot_of_col[col] = Some(row);
            row += 1;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| pivot_of_col[c].is_none()) {
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for c in 0..cols {
                if let Some(pr) = pivot_of_col[c] {
                    v[c] = -m[pr][free].clone();
                }
            }
            let scale = crate::exactpoly::rat::primitive_scale(v.iter());
            let ints: Vec<Int> = v
                .iter()
                .map(|x| {
                    let s = x * &scale;
                    debug_assert!(s.is_integer());
                    s.to_integer()
                })
                .collect();
            basis.push(ints);
        }
        basis
    }
}

/// Which backend produced the ranks.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RankMode {
    Exact,
    ModularCertified,
}

/// Metadata echoed into reports.
#[derive(Clone, Debug)]
pub struct RankBackend {
    pub mode: RankMode,
    pub seed: u64,
    pub primes_used: Vec<u64>,
    pub exact_fallback_triggered: bool,
}

/// Entry point for all rank computations. Primes are drawn deterministically
/// from the seed, so reports are replayable.
pub struct RankEngine {
    mode: RankMode,
    seed: u64,
    state: Mutex<EngineState>,
    /// matrices up to this many entries take the Bareiss path in exact rank
    bareiss_threshold: usize,
}

struct EngineState {
    rng: ChaCha8Rng,
    primes: Vec<u64>,
    fallback: bool,
}

impl RankEngine {
    pub fn new(mode: RankMode, seed: u64) -> Self {
        RankEngine {
            mode,
            seed,
            state: Mutex::new(EngineState {
                rng: ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15),
                primes: Vec::new(),
                fallback: false,
            }),
            bareiss_threshold: 2500,
        }
    }

    pub fn mode(&self) -> RankMode {
        self.mode
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn primes(&self, count: usize) -> Vec<u64> {
        let mut st = self.state.lock().unwrap();
        while st.primes.len() < count {
            let cand = st.rng.gen_range(1u64 << 61..1u64 << 62) | 1;
            if is_prime_u64(cand) && !st.primes.contains(&cand) {
                st.primes.push(cand);
            }
        }
        st.primes[..count].to_vec()
    }

    fn note_fallback(&self) {
        self.state.lock().unwrap().fallback = true;
    }

    /// Rank with the engine's default confidence: certified in `Exact` mode,
    /// three-prime maximum in `ModularCertified` mode.
    pub fn rank(&self, m: &IntMatrix) -> usize {
        match self.mode {
            RankMode::Exact => self.rank_exact(m),
            RankMode::ModularCertified => self.rank_quick(m),
        }
    }

    /// Three-prime rank (a certified lower bound on the true rank; equal to
    /// it unless all three primes divide the same maximal minor).
    pub fn rank_quick(&self, m: &IntMatrix) -> usize {
        if m.rows == 0 || m.cols == 0 {
            return 0;
        }
        self.primes(3)
            .iter()
            .map(|&p| m.rank_mod(p))
            .max()
            .unwrap()
    }

    /// Unconditionally exact rank. Records a fallback whenever the exact
    /// value differs from the quick three-prime value.
    pub fn rank_exact(&self, m: &IntMatrix) -> usize {
        if m.rows == 0 || m.cols == 0 {
            return 0;
        }
        let quick = self.rank_quick(m);
        // full column (or row) rank mod one prime is already exact
        if quick == m.cols.min(m.rows) {
            return quick;
        }
        let exact = if m.rows * m.cols <= self.bareiss_threshold {
            m.rank_bareiss()
        } else {
            let bits = m.hadamard_log2();
            let count = (bits / 61 + 2) as usize;
            let primes = self.primes(count.max(3));
            primes.iter().map(|&p| m.rank_mod(p)).max().unwrap()
        };
        if exact != quick {
            self.note_fallback();
        }
        exact
    }

    pub fn backend(&self) -> RankBackend {
        let st = self.state.lock().unwrap();
        RankBackend {
            mode: self.mode,
            seed: self.seed,
            primes_used: st.primes.clone(),
            exact_fallback_triggered: st.fallback,
        }
    }
}

/// Turn a primitive-integer rational vector into `Int`s (helper for tests
/// and the generator-degree pipeline).
pub fn rat_vec_to_int(v: &[Rat]) -> Vec<Int> {
    let scale = crate::exactpoly::rat::primitive_scale(v.iter());
    v.iter()
        .map(|x| {
            let s = x * &scale;
            debug_assert!(s.is_integer());
            s.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::int;

    fn from_rows(rows: &[&[i64]]) -> IntMatrix {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, int(v));
            }
        }
        m.finish()
    }

    #[test]
    fn ranks_agree_across_backends() {
        let m = from_rows(&[
            &[1, 2, 3, 1],
            &[2, 4, 6, 2],
            &[0, 1, 1, 0],
            &[1, 0, 1, 7],
        ]);
        let engine = RankEngine::new(RankMode::ModularCertified, 7);
        assert_eq!(m.rank_bareiss(), 3);
        assert_eq!(engine.rank_quick(&m), 3);
        assert_eq!(engine.rank_exact(&m), 3);
        let exact_engine = RankEngine::new(RankMode::Exact, 7);
        assert_eq!(exact_engine.rank(&m), 3);
        assert!(!engine.backend().exact_fallback_triggered);
    }

    #[test]
    fn rank_of_zero_and_full() {
        let z = IntMatrix::zeros(3, 5).finish();
        let engine = RankEngine::new(RankMode::Exact, 0);
        assert_eq!(engine.rank(&z), 0);
        let id = from_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(engine.rank(&id), 3);
    }

    #[test]
    fn nullspace_matches_rank() {
        let m = from_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace_exact();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in 0..m.rows {
                let mut acc = Int::zero();
                for c in 0..m.cols {
                    acc += m.get(r, c) * &v[c];
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn big_entry_matrix_falls_back_to_bigint_path() {
        let mut m = IntMatrix::zeros(2, 2);
        let huge = Int::from(2).pow(100);
        m.set(0, 0, huge.clone());
        m.set(0, 1, int(1));
        m.set(1, 0, huge);
        m.set(1, 1, int(1));
        let m = m.finish();
        let engine = RankEngine::new(RankMode::Exact, 1);
        assert_eq!(engine.rank(&m), 1);
    }

    #[test]
    fn random_matrices_bareiss_vs_modular() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let engine = RankEngine::new(RankMode::ModularCertified, 13);
        for _ in 0..25 {
            let r = rng.gen_range(1..7);
            let c = rng.gen_range(1..7);
            let mut m = IntMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, int(rng.gen_range(-9i64..=9)));
                }
            }
            let m = m.finish();
            assert_eq!(m.rank_bareiss(), engine.rank_exact(&m));
        }
    }
}
