//! Concrete string/transducer families with verifiable size bounds.
//!
//! Two constructions live here. The coin demo compresses the staircase
//! words `w_m = 1 · 01 · 0²1 ⋯ 0^m 1` with a fixed 12-state machine whose
//! loops emit zero-runs of coin-denomination lengths, so programs reduce to
//! change-making. The hierarchy witness family produces, for every `n`, a
//! string together with a 2n-state description that is provably small, the
//! constructive half of the state-size hierarchy separation.

use thiserror::Error;

use crate::bits::BitString;
use crate::codec::std_code_len;
use crate::transducer::{Transducer, Transition};

/// `w_m = 1 · 0¹1 · 0²1 ⋯ 0^m 1`, with `|w_m| = m(m+1)/2 + m + 1`.
///
/// Panics when `m == 0`.
pub fn w_string(m: usize) -> BitString {
    assert!(m >= 1, "w strings start at m = 1");
    let len = m * (m + 1) / 2 + m + 1;
    let mut out = BitString::with_capacity(len);
    out.push(1);
    for i in 1..=m {
        out.extend(&BitString::zeros(i));
        out.push(1);
    }
    debug_assert_eq!(out.len(), len);
    out
}

/// A multiset of coin denominations used for change-making.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinSystem {
    denominations: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("coin system must contain denomination 1")]
    MissingUnitCoin,
    #[error("coin program is supported for 1 <= m <= 99, got {m}")]
    CoinProgramRange { m: usize },
}

impl Default for CoinSystem {
    fn default() -> Self {
        Self { denominations: vec![1, 5, 10, 18, 25, 50] }
    }
}

impl CoinSystem {
    pub fn new(mut denominations: Vec<u64>) -> Result<Self, ConstructionError> {
        denominations.sort_unstable();
        denominations.dedup();
        if !denominations.contains(&1) {
            return Err(ConstructionError::MissingUnitCoin);
        }
        Ok(Self { denominations })
    }

    pub fn denominations(&self) -> &[u64] {
        &self.denominations
    }

    /// A minimum-cardinality multiset of denominations summing to `amount`,
    /// as `(coin, multiplicity)` pairs sorted by descending coin value.
    ///
    /// Ties between equal-cardinality decompositions go to the
    /// lexicographically largest multiset when sorted descending, so results
    /// are deterministic.
    pub fn min_decomposition(&self, amount: u64) -> Vec<(u64, u64)> {
        // dp[a] = (count, multiset sorted descending)
        let mut dp: Vec<Option<(u64, Vec<u64>)>> = vec![None; amount as usize + 1];
        dp[0] = Some((0, Vec::new()));
        for a in 1..=amount {
            let mut best: Option<(u64, Vec<u64>)> = None;
            for &coin in &self.denominations {
                if coin > a {
                    continue;
                }
                if let Some((count, multiset)) = &dp[(a - coin) as usize] {
                    let mut candidate = multiset.clone();
                    let at = candidate.partition_point(|&c| c > coin);
                    candidate.insert(at, coin);
                    let candidate = (count + 1, candidate);
                    let better = match &best {
                        None => true,
                        Some(b) => candidate.0 < b.0 || (candidate.0 == b.0 && candidate.1 > b.1),
                    };
                    if better {
                        best = Some(candidate);
                    }
                }
            }
            dp[a as usize] = best;
        }
        let (_, multiset) = dp[amount as usize].take().expect("denomination 1 makes every amount feasible");
        let mut out: Vec<(u64, u64)> = Vec::new();
        for coin in multiset {
            match out.last_mut() {
                Some((c, mult)) if *c == coin => *mult += 1,
                _ => out.push((coin, 1)),
            }
        }
        out
    }

    /// Sum of minimum decomposition cardinalities over `0..=99`.
    pub fn total_coins_0_to_99(&self) -> u64 {
        (0..=99).map(|a| self.min_decomposition(a).iter().map(|(_, mult)| mult).sum::<u64>()).sum()
    }
}

/// The 12-state coin transducer. State 1 loops on `1/1`; input 0 routes
/// silently through a binary tree to one of six coin states, whose `0`
/// self-loops emit `0^c` for `c` in 1, 5, 10, 18, 25, 50, and whose `1`
/// edges return silently to state 1.
pub fn coin_transducer() -> Transducer {
    let e = BitString::empty;
    let zeros = BitString::zeros;
    let t = Transition::new;
    let table = vec![
        // state 1: hub
        t(2, e()),
        t(1, BitString::ones(1)),
        // states 2,3,4,5,6: silent routing tree
        t(4, e()),
        t(3, e()),
        t(7, e()),
        t(8, e()),
        t(6, e()),
        t(5, e()),
        t(9, e()),
        t(10, e()),
        t(11, e()),
        t(12, e()),
        // states 7..12: coin loops, return to 1 on input 1
        t(7, zeros(1)),
        t(1, e()),
        t(8, zeros(5)),
        t(1, e()),
        t(9, zeros(10)),
        t(1, e()),
        t(10, zeros(18)),
        t(1, e()),
        t(11, zeros(25)),
        t(1, e()),
        t(12, zeros(50)),
        t(1, e()),
    ];
    Transducer::new(12, table).unwrap()
}

/// The silent input word that steers the coin transducer from state 1 to the
/// loop state of the given denomination.
fn coin_route(coin: u64) -> BitString {
    let route = match coin {
        1 => "010",
        5 => "011",
        10 => "0010",
        18 => "0011",
        25 => "0000",
        50 => "0001",
        _ => unreachable!("not a coin state denomination: {coin}"),
    };
    route.parse().unwrap()
}

/// A program `p` with `coin_transducer()(p) = w_string(m)`: each zero-run
/// `0^i` is produced by visiting the coin states of the minimum
/// decomposition of `i`, and each separator `1` by the hub loop.
pub fn coin_program(m: usize) -> Result<BitString, ConstructionError> {
    if !(1..=99).contains(&m) {
        return Err(ConstructionError::CoinProgramRange { m });
    }
    let coins = CoinSystem::default();
    let mut p = BitString::empty();
    p.push(1); // leading separator of w_m
    for i in 1..=m as u64 {
        for (coin, mult) in coins.min_decomposition(i) {
            p.extend(&coin_route(coin));
            p.extend(&BitString::zeros(mult as usize));
            p.push(1); // return to the hub
        }
        p.push(1); // emit the separator
    }
    Ok(p)
}

/// The i-th witness block `u_i = 1 0^i 1^(2n+2-i)`, of length `2n+3`.
///
/// Panics unless `1 <= i <= 2n+1`.
pub fn witness_block(i: usize, n: usize) -> BitString {
    assert!(n >= 1 && i >= 1 && i <= 2 * n + 1, "block index out of range");
    let mut out = BitString::with_capacity(2 * n + 3);
    out.push(1);
    out.extend(&BitString::zeros(i));
    out.extend(&BitString::ones(2 * n + 2 - i));
    out
}

/// The witness string `u_1^(m²) u_2^(m²) ⋯ u_(2n+1)^(m²)`, of length
/// `(2n+1) · m² · (2n+3)`.
pub fn witness_string(n: usize, m: usize) -> BitString {
    assert!(n >= 1 && m >= 1);
    let mm = m * m;
    let mut out = BitString::with_capacity((2 * n + 1) * mm * (2 * n + 3));
    for i in 1..=2 * n + 1 {
        out.extend(&witness_block(i, n).repeat(mm));
    }
    out
}

/// The 2n-state witness transducer together with its program
/// `(0^m 1)^(2n-1) 0^m 1^m`. State `j < 2n` loops `0 / u_j^m` and steps
/// silently to `j+1` on 1; state `2n` loops `0 / u_2n^m` and `1 / u_(2n+1)^m`.
pub fn witness_transducer(n: usize, m: usize) -> (Transducer, BitString) {
    assert!(n >= 1 && m >= 1);
    let states = 2 * n;
    let mut table = Vec::with_capacity(2 * states);
    for j in 1..=states {
        table.push(Transition::new(j, witness_block(j, n).repeat(m)));
        if j < states {
            table.push(Transition::new(j + 1, BitString::empty()));
        } else {
            table.push(Transition::new(j, witness_block(2 * n + 1, n).repeat(m)));
        }
    }
    let t = Transducer::new(states, table).unwrap();

    let mut program = BitString::with_capacity((2 * n + 1) * m + 2 * n - 1);
    for _ in 0..2 * n - 1 {
        program.extend(&BitString::zeros(m));
        program.push(1);
    }
    program.extend(&BitString::zeros(m));
    program.extend(&BitString::ones(m));
    (t, program)
}

/// `m` value for which the witness description provably beats every small
/// machine: `16n² + 36n + 19`.
pub fn witness_default_m(n: usize) -> usize {
    16 * n * n + 36 * n + 19
}

/// A fully built hierarchy witness instance with its measured and bound
/// quantities.
#[derive(Clone, Debug)]
pub struct HierarchyWitness {
    pub n: usize,
    pub m: usize,
    pub x: BitString,
    pub transducer: Transducer,
    pub program: BitString,
    /// Measured standard-encoding length of the transducer.
    pub code_len: u64,
    /// Closed-form bound `(8n² + 16n + 8)m + (4n - 2)(⌈log₂(2n)⌉ + 1)`.
    pub code_len_bound: u64,
    /// Expected program length `(2n + 1)m + 2n - 1`.
    pub program_len_formula: u64,
    pub output_matches: bool,
}

fn ceil_log2(k: u64) -> u64 {
    debug_assert!(k >= 1);
    64 - (k - 1).leading_zeros() as u64
}

/// Builds the witness for `n` at the given `m` and measures everything.
pub fn hierarchy_witness_with(n: usize, m: usize) -> HierarchyWitness {
    let (transducer, program) = witness_transducer(n, m);
    let x = witness_string(n, m);
    let output_matches = transducer.evaluate(&program) == x;
    let (n64, m64) = (n as u64, m as u64);
    HierarchyWitness {
        n,
        m,
        code_len: std_code_len(&transducer),
        code_len_bound: (8 * n64 * n64 + 16 * n64 + 8) * m64 + (4 * n64 - 2) * (ceil_log2(2 * n64) + 1),
        program_len_formula: (2 * n64 + 1) * m64 + 2 * n64 - 1,
        output_matches,
        x,
        transducer,
        program,
    }
}

/// Builds the witness for `n` at the default `m`.
pub fn hierarchy_witness(n: usize) -> HierarchyWitness {
    hierarchy_witness_with(n, witness_default_m(n))
}

impl HierarchyWitness {
    /// `|σ| + |p|`, an upper bound on the complexity of the witness string.
    pub fn description_size(&self) -> u64 {
        self.code_len + self.program.len() as u64
    }

    /// `description_size < m²/2`, checked exactly as `2·size < m²`.
    pub fn beats_half_m_squared(&self) -> bool {
        let m = self.m as u64;
        2 * self.description_size() < m * m
    }

    /// Every minimal description's machine has code length at most the
    /// description size, and an s-state machine has code length >= 4s, so
    /// any minimal description of the witness uses at most this many states.
    pub fn minimal_state_upper_bound(&self) -> u64 {
        self.description_size() / 4
    }

    /// All size checks: program length formula, output identity, measured
    /// code length against the closed-form bound, and the half-m² bound.
    pub fn all_bounds_hold(&self) -> bool {
        self.output_matches
            && self.program.len() as u64 == self.program_len_formula
            && self.code_len <= self.code_len_bound
            && self.beats_half_m_squared()
    }
}
