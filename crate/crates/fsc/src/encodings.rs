//! Computable encoding schemes.
//!
//! A scheme is a decidable set of code strings together with a bijective
//! decoding onto transducers. Besides the standard scheme `s0` this module
//! provides:
//!
//! * `s1` — a prime-family scheme: `bin(n)` encodes the n-state transducer
//!   `T_n` whose only nonempty output is `0^p_n` (`p_n` the n-th prime) on
//!   `(1, 0)`; every other transducer is encoded as `0 ·` its standard code.
//! * `s1p` — the polynomial-time padded variant: `T_n` is encoded as
//!   `bin(n)^† · 1^n`, everything else as `0 · e^† · 1^(2^|e|)` with `e` the
//!   standard code.
//! * `snm:<n>,<m>` — a two-anchor scheme in which the codes `10` and `11`
//!   decode to an n-state and an m-state transducer that both map the input
//!   `0` to the same witness word, and every other transducer gets the padded
//!   code `0 · e^† · 1^(2^|e|)`.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::bits::BitString;
use crate::codec::{
    self, bin, bin_len, dagger, decode_std, encode_std, std_items_of_len, EnumItem,
    OutputConstraint, StdDecodeError,
};
use crate::transducer::{Transducer, Transition};

/// Codes longer than this are kept symbolic instead of materialized.
pub const MAX_EXPLICIT_CODE_BITS: u64 = 1 << 20;

/// Hard ceiling on enumeration budgets.
pub const MAX_ENUM_BUDGET: u64 = 1 << 20;

/// Widest family index accepted when decoding: keeps decoded state counts
/// (and the prime sieve behind them) within desk scale.
const MAX_FAMILY_BITS: usize = 21;

/// Output word emitted by the `snm` anchors on input bit 0.
pub const SNM_WITNESS_LEN: usize = 64;

fn sieve_first_primes(n: usize) -> Vec<u64> {
    let limit = if n < 6 {
        16usize
    } else {
        // p_n < n (ln n + ln ln n) for n >= 6
        let nf = n as f64;
        (nf * (nf.ln() + nf.ln().ln())).ceil() as usize + 16
    };
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(n);
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            if primes.len() == n {
                break;
            }
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    assert!(primes.len() >= n, "sieve bound too small for n = {n}");
    primes
}

static PRIME_CACHE: std::sync::Mutex<Vec<u64>> = std::sync::Mutex::new(Vec::new());

/// The n-th prime (1-based: `nth_prime(1) == 2`), from a cached sieve that
/// grows geometrically on demand.
pub fn nth_prime(n: usize) -> u64 {
    assert!(n >= 1, "primes are 1-indexed");
    assert!(n <= 1 << 22, "prime index beyond supported range");
    let mut primes = PRIME_CACHE.lock().unwrap();
    if primes.len() < n {
        *primes = sieve_first_primes(n.max(2 * primes.len()).max(512));
    }
    primes[n - 1]
}

/// The n-state prime-family transducer `T_n`: `(1, 0) -> (1, 0^p_n)`,
/// `(i, 0) -> (i, ε)` for `i >= 2`, `(j, 1) -> (j+1, ε)` for `j < n`,
/// `(n, 1) -> (n, ε)`.
pub fn prime_family_transducer(n: usize) -> Transducer {
    assert!(n >= 1);
    let p = nth_prime(n) as usize;
    let mut table = Vec::with_capacity(2 * n);
    for state in 1..=n {
        let on_zero = if state == 1 {
            Transition::new(1, BitString::zeros(p))
        } else {
            Transition::new(state, BitString::empty())
        };
        let on_one = Transition::new(if state < n { state + 1 } else { state }, BitString::empty());
        table.push(on_zero);
        table.push(on_one);
    }
    Transducer::new(n, table).unwrap()
}

/// Returns `Some(n)` when `t` equals the prime-family transducer `T_n`.
pub fn prime_family_index(t: &Transducer) -> Option<usize> {
    let n = t.states();
    let first = t.transition(1, 0);
    if first.target != 1 || first.output.is_empty() || first.output.iter().any(|b| b != 0) {
        return None;
    }
    for state in 2..=n {
        let tr = t.transition(state, 0);
        if tr.target != state || !tr.output.is_empty() {
            return None;
        }
    }
    for state in 1..=n {
        let tr = t.transition(state, 1);
        let expected = if state < n { state + 1 } else { state };
        if tr.target != expected || !tr.output.is_empty() {
            return None;
        }
    }
    (first.output.len() as u64 == nth_prime(n)).then_some(n)
}

/// The anchor word the `snm` anchors emit on input 0.
pub fn snm_witness() -> BitString {
    BitString::zeros(SNM_WITNESS_LEN)
}

/// The k-state `snm` anchor: `(1,0) -> (1, witness)`, `(1,1) -> (1, ε)`,
/// every extra state an ε-self-loop sink.
pub fn snm_anchor(states: usize) -> Transducer {
    assert!(states >= 1);
    let mut table = vec![
        Transition::new(1, snm_witness()),
        Transition::new(1, BitString::empty()),
    ];
    for state in 2..=states {
        table.push(Transition::new(state, BitString::empty()));
        table.push(Transition::new(state, BitString::empty()));
    }
    Transducer::new(states, table).unwrap()
}

/// A transducer's code under some scheme, possibly too long to materialize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeRecord {
    /// The code bits, present when the code is at most
    /// [`MAX_EXPLICIT_CODE_BITS`] long.
    pub explicit: Option<BitString>,
    /// Exact code length.
    pub length: BigUint,
    /// Enough structure to rebuild the code on demand.
    pub structure: CodeStructure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeStructure {
    /// The code is the stored bits.
    Literal(BitString),
    /// `0 · inner^† · 1^pad`
    Padded { inner: BitString, pad: BigUint },
}

impl CodeRecord {
    fn literal(bits: BitString) -> Self {
        CodeRecord {
            length: BigUint::from(bits.len()),
            explicit: Some(bits.clone()),
            structure: CodeStructure::Literal(bits),
        }
    }

    fn padded(inner: BitString) -> Self {
        let pad = BigUint::from(1u32) << inner.len();
        let length = BigUint::from(1u32) + 2u32 * BigUint::from(inner.len()) + pad.clone();
        let explicit = if length <= BigUint::from(MAX_EXPLICIT_CODE_BITS) {
            let mut bits = BitString::with_capacity(1 + 2 * inner.len() + (1usize << inner.len()));
            bits.push(0);
            bits.extend(&dagger(&inner));
            bits.extend(&BitString::ones(1usize << inner.len()));
            Some(bits)
        } else {
            None
        };
        CodeRecord { explicit, length, structure: CodeStructure::Padded { inner, pad } }
    }

    /// Rebuilds the explicit code when it fits in memory.
    pub fn materialize(&self) -> Option<BitString> {
        self.explicit.clone()
    }
}

/// Scheme identifiers accepted on the command line: `s0`, `s1`, `s1p`,
/// `snm:<n>,<m>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    S0,
    S1,
    S1Prime,
    Snm { n: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeParseError {
    #[error("unknown scheme {0:?}; expected s0, s1, s1p or snm:<n>,<m>")]
    Unknown(String),
    #[error("snm parameters must satisfy 1 <= n < m")]
    BadSnmParams,
}

/// Builds the two-anchor scheme for `1 <= n < m` and returns it together
/// with its witness string.
pub fn snm_build(n: usize, m: usize) -> Result<(Scheme, BitString), SchemeParseError> {
    if n < 1 || n >= m {
        return Err(SchemeParseError::BadSnmParams);
    }
    Ok((Scheme::Snm { n, m }, snm_witness()))
}

/// Decode failures for the scheme codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeDecodeError {
    #[error("empty code")]
    EmptyCode,
    #[error(transparent)]
    Std(#[from] StdDecodeError),
    #[error("family index spans {bits} bits, beyond the supported range")]
    FamilyIndexTooLarge { bits: usize },
    #[error("padding of length {found} where {expected} was required")]
    BadPadding { expected: u64, found: u64 },
    #[error("padding bit at {pos} is 0, expected 1")]
    PadBitNotOne { pos: usize },
    #[error("the transducer has a dedicated code in this scheme; the passthrough branch excludes it")]
    DedicatedCodeRequired,
    #[error("code is not in the scheme's domain")]
    UnknownCode,
}

impl Scheme {
    pub fn parse_id(s: &str) -> Result<Scheme, SchemeParseError> {
        match s {
            "s0" => Ok(Scheme::S0),
            "s1" => Ok(Scheme::S1),
            "s1p" => Ok(Scheme::S1Prime),
            _ => {
                if let Some(params) = s.strip_prefix("snm:") {
                    let mut it = params.split(',');
                    let n = it.next().and_then(|v| v.parse::<usize>().ok());
                    let m = it.next().and_then(|v| v.parse::<usize>().ok());
                    match (n, m, it.next()) {
                        (Some(n), Some(m), None) => {
                            snm_build(n, m).map(|(scheme, _)| scheme)
                        }
                        _ => Err(SchemeParseError::Unknown(s.to_string())),
                    }
                } else {
                    Err(SchemeParseError::Unknown(s.to_string()))
                }
            }
        }
    }

    pub fn id(&self) -> String {
        match self {
            Scheme::S0 => "s0".into(),
            Scheme::S1 => "s1".into(),
            Scheme::S1Prime => "s1p".into(),
            Scheme::Snm { n, m } => format!("snm:{n},{m}"),
        }
    }

    /// Largest enumeration budget the scheme supports. The `s1` family has
    /// `2^(L-1)` members of code length `L`, so its budget is kept small.
    pub fn max_enumeration_budget(&self) -> u64 {
        match self {
            Scheme::S1 => MAX_FAMILY_BITS as u64,
            _ => MAX_ENUM_BUDGET,
        }
    }

    /// True iff `code` is in the scheme's domain.
    pub fn contains(&self, code: &BitString) -> bool {
        self.decode(code).is_ok()
    }

    /// In the `snm` scheme, the transducers the anchors must be compared
    /// against when excluding them from the passthrough branch.
    fn excluded_from_passthrough(&self, t: &Transducer) -> bool {
        match self {
            Scheme::S0 => false,
            Scheme::S1 | Scheme::S1Prime => prime_family_index(t).is_some(),
            Scheme::Snm { n, m } => *t == snm_anchor(*n) || *t == snm_anchor(*m),
        }
    }

    pub fn decode(&self, code: &BitString) -> Result<Transducer, SchemeDecodeError> {
        match self {
            Scheme::S0 => Ok(decode_std(code)?),
            Scheme::S1 => {
                if code.is_empty() {
                    return Err(SchemeDecodeError::EmptyCode);
                }
                if code.bit(0) == 1 {
                    if code.len() > MAX_FAMILY_BITS {
                        return Err(SchemeDecodeError::FamilyIndexTooLarge { bits: code.len() });
                    }
                    let mut n = 0usize;
                    for b in code.iter() {
                        n = (n << 1) | b as usize;
                    }
                    Ok(prime_family_transducer(n))
                } else {
                    let inner = code.slice(1, code.len());
                    let t = decode_std(&inner)?;
                    if self.excluded_from_passthrough(&t) {
                        return Err(SchemeDecodeError::DedicatedCodeRequired);
                    }
                    Ok(t)
                }
            }
            Scheme::S1Prime => {
                if code.is_empty() {
                    return Err(SchemeDecodeError::EmptyCode);
                }
                if code.bit(0) == 1 {
                    let bits = code.as_slice();
                    let mut pos = 0usize;
                    let payload = codec::parse_dagger_payload(bits, &mut pos)?;
                    if payload.len() > MAX_FAMILY_BITS {
                        return Err(SchemeDecodeError::FamilyIndexTooLarge { bits: payload.len() });
                    }
                    let mut n = 0usize;
                    for b in payload.iter() {
                        n = (n << 1) | b as usize;
                    }
                    check_pad(bits, pos, n as u64)?;
                    Ok(prime_family_transducer(n))
                } else {
                    self.decode_padded(code)
                }
            }
            Scheme::Snm { n, m } => {
                if code.is_empty() {
                    return Err(SchemeDecodeError::EmptyCode);
                }
                if code.bit(0) == 1 {
                    return match code.to_string().as_str() {
                        "10" => Ok(snm_anchor(*n)),
                        "11" => Ok(snm_anchor(*m)),
                        _ => Err(SchemeDecodeError::UnknownCode),
                    };
                }
                self.decode_padded(code)
            }
        }
    }

    /// `0 · e^† · 1^(2^|e|)` with `e` a standard code of a non-dedicated
    /// transducer.
    fn decode_padded(&self, code: &BitString) -> Result<Transducer, SchemeDecodeError> {
        let bits = code.as_slice();
        let mut pos = 1usize;
        let inner = codec::parse_dagger_payload(bits, &mut pos)?;
        let expected = 1u64
            .checked_shl(inner.len() as u32)
            .filter(|_| inner.len() < 64)
            .unwrap_or(u64::MAX);
        check_pad(bits, pos, expected)?;
        let t = decode_std(&inner)?;
        if self.excluded_from_passthrough(&t) {
            return Err(SchemeDecodeError::DedicatedCodeRequired);
        }
        Ok(t)
    }

    /// The unique code of `t` under the scheme.
    pub fn encode(&self, t: &Transducer) -> CodeRecord {
        match self {
            Scheme::S0 => CodeRecord::literal(encode_std(t)),
            Scheme::S1 => match prime_family_index(t) {
                Some(n) => CodeRecord::literal(bin(n as u64)),
                None => {
                    let mut code = BitString::with_capacity(1 + codec::std_code_len(t) as usize);
                    code.push(0);
                    code.extend(&encode_std(t));
                    CodeRecord::literal(code)
                }
            },
            Scheme::S1Prime => match prime_family_index(t) {
                Some(n) => {
                    let mut code = dagger(&bin(n as u64));
                    code.extend(&BitString::ones(n));
                    CodeRecord::literal(code)
                }
                None => CodeRecord::padded(encode_std(t)),
            },
            Scheme::Snm { n, m } => {
                if *t == snm_anchor(*n) {
                    CodeRecord::literal("10".parse().unwrap())
                } else if *t == snm_anchor(*m) {
                    CodeRecord::literal("11".parse().unwrap())
                } else {
                    CodeRecord::padded(encode_std(t))
                }
            }
        }
    }

    /// Streams every transducer with code length <= `budget`, once each, in
    /// (code length, lexicographic code) order. A constraint restricts the
    /// stream to machines whose every transition output lies in the allowed
    /// set; callers must only pass one when dropping such machines is
    /// provably safe for their purpose.
    pub fn enumerate(&self, budget: u64, constraint: Option<&OutputConstraint>) -> SchemeEnumeration {
        assert!(
            budget <= self.max_enumeration_budget(),
            "budget {budget} beyond the {} cap for scheme {}",
            self.max_enumeration_budget(),
            self.id()
        );
        let mut groups: Vec<Group> = Vec::new();
        match self {
            Scheme::S0 => {
                let mut len = 4;
                while len <= budget {
                    groups.push(Group::Std { len });
                    len += 2;
                }
            }
            Scheme::S1 => {
                for len in 1..=budget {
                    if len >= 5 && (len - 1) % 2 == 0 {
                        groups.push(Group::ZeroStd { len });
                    }
                    let lo = 1u64 << (len - 1);
                    let hi = (1u64 << len) - 1;
                    groups.push(Group::PrimeFamilyRange { len, lo, hi });
                }
            }
            Scheme::S1Prime | Scheme::Snm { .. } => {
                if let Scheme::Snm { .. } = self {
                    if budget >= 2 {
                        groups.push(Group::SnmAnchors { len: 2 });
                    }
                }
                if let Scheme::S1Prime = self {
                    let mut n = 1u64;
                    loop {
                        let len = n + 2 * bin_len(n);
                        if len > budget {
                            break;
                        }
                        groups.push(Group::PaddedFamily { len, n });
                        n += 1;
                    }
                }
                let mut inner_len = 4u64;
                while let Some(len) = 1u64
                    .checked_shl(inner_len as u32)
                    .and_then(|pad| (1 + 2 * inner_len).checked_add(pad))
                    .filter(|&len| len <= budget)
                {
                    groups.push(Group::Padded { len, inner_len });
                    inner_len += 2;
                }
            }
        }
        groups.sort_by_key(|g| (g.len(), g.rank()));
        SchemeEnumeration {
            scheme: *self,
            groups: groups.into(),
            constraint: constraint.cloned(),
            buffer: VecDeque::new(),
        }
    }

    /// The code length of a transducer computing the identity function,
    /// found by scanning the scheme's enumeration in code-length order.
    /// Cached per scheme; searches ask for it once per input.
    pub fn identity_overhead(&self) -> u64 {
        static CACHE: std::sync::Mutex<Vec<(Scheme, u64)>> = std::sync::Mutex::new(Vec::new());
        if let Some(&(_, overhead)) = CACHE.lock().unwrap().iter().find(|(s, _)| s == self) {
            return overhead;
        }
        let mut budget = 16u64.min(self.max_enumeration_budget());
        let overhead = 'scan: loop {
            let mut en = self.enumerate(budget, None);
            while let Some((len, batch)) = en.next_batch() {
                if batch.iter().any(|item| item.transducer.computes_identity()) {
                    break 'scan len;
                }
            }
            assert!(
                budget < self.max_enumeration_budget(),
                "no identity code within the enumeration cap for scheme {}",
                self.id()
            );
            budget = (budget * 2).min(self.max_enumeration_budget());
        };
        CACHE.lock().unwrap().push((*self, overhead));
        overhead
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

fn check_pad(bits: &[u8], pos: usize, expected: u64) -> Result<(), SchemeDecodeError> {
    let found = (bits.len() - pos) as u64;
    if found != expected {
        return Err(SchemeDecodeError::BadPadding { expected, found });
    }
    if let Some(offset) = bits[pos..].iter().position(|&b| b == 0) {
        return Err(SchemeDecodeError::PadBitNotOne { pos: pos + offset });
    }
    Ok(())
}

#[derive(Clone, Debug)]
enum Group {
    /// Standard codes of exactly this length.
    Std { len: u64 },
    /// `0 · e` with `|e| = len - 1` a standard code (s1 passthrough).
    ZeroStd { len: u64 },
    /// `bin(n)` for `n` in `lo..=hi` (s1 family; expanded in chunks).
    PrimeFamilyRange { len: u64, lo: u64, hi: u64 },
    /// `bin(n)^† 1^n` (s1p family).
    PaddedFamily { len: u64, n: u64 },
    /// `0 · e^† · 1^(2^|e|)` with `|e| = inner_len`.
    Padded { len: u64, inner_len: u64 },
    /// The codes `10` and `11`.
    SnmAnchors { len: u64 },
}

impl Group {
    fn len(&self) -> u64 {
        match self {
            Group::Std { len }
            | Group::ZeroStd { len }
            | Group::PrimeFamilyRange { len, .. }
            | Group::PaddedFamily { len, .. }
            | Group::Padded { len, .. }
            | Group::SnmAnchors { len } => *len,
        }
    }

    /// Orders groups of equal code length; zero-prefixed codes sort first.
    fn rank(&self) -> u8 {
        match self {
            Group::Std { .. } | Group::ZeroStd { .. } | Group::Padded { .. } => 0,
            Group::PrimeFamilyRange { .. } | Group::PaddedFamily { .. } | Group::SnmAnchors { .. } => 1,
        }
    }
}

/// Streams [`EnumItem`]s in (code length, lexicographic code) order.
///
/// Batches returned by [`SchemeEnumeration::next_batch`] never mix code
/// lengths; large family ranges are expanded in bounded chunks so memory
/// stays proportional to the chunk, not the range.
pub struct SchemeEnumeration {
    scheme: Scheme,
    groups: VecDeque<Group>,
    constraint: Option<OutputConstraint>,
    buffer: VecDeque<EnumItem>,
}

const CHUNK_ITEMS: usize = 1 << 14;
const CHUNK_STATES: usize = 1 << 18;

impl SchemeEnumeration {
    /// The next nonempty slice of the stream, tagged with its code length.
    pub fn next_batch(&mut self) -> Option<(u64, Vec<EnumItem>)> {
        loop {
            let len = self.groups.front()?.len();
            let mut batch: Vec<EnumItem> = Vec::new();
            while let Some(front) = self.groups.front_mut() {
                if front.len() != len {
                    break;
                }
                match front {
                    Group::Std { len } => {
                        batch.extend(std_items_of_len(*len, self.constraint.as_ref()));
                    }
                    Group::ZeroStd { len } => {
                        for item in std_items_of_len(*len - 1, None) {
                            if self.scheme.excluded_from_passthrough(&item.transducer) {
                                continue;
                            }
                            let mut code = BitString::with_capacity(item.code.len() + 1);
                            code.push(0);
                            code.extend(&item.code);
                            batch.push(EnumItem { code, transducer: item.transducer });
                        }
                    }
                    Group::PrimeFamilyRange { lo, hi, .. } => {
                        let mut states = 0usize;
                        while *lo <= *hi && batch.len() < CHUNK_ITEMS && states < CHUNK_STATES {
                            let t = prime_family_transducer(*lo as usize);
                            states += t.states();
                            batch.push(EnumItem { code: bin(*lo), transducer: t });
                            *lo += 1;
                        }
                        if *lo <= *hi {
                            // partial chunk; same length continues next call
                            return Some((len, batch));
                        }
                    }
                    Group::PaddedFamily { n, .. } => {
                        let n = *n;
                        let mut code = dagger(&bin(n));
                        code.extend(&BitString::ones(n as usize));
                        batch.push(EnumItem { code, transducer: prime_family_transducer(n as usize) });
                    }
                    Group::Padded { inner_len, .. } => {
                        for item in std_items_of_len(*inner_len, None) {
                            if self.scheme.excluded_from_passthrough(&item.transducer) {
                                continue;
                            }
                            let pad = 1usize << *inner_len;
                            let mut code = BitString::with_capacity(1 + 2 * item.code.len() + pad);
                            code.push(0);
                            code.extend(&dagger(&item.code));
                            code.extend(&BitString::ones(pad));
                            batch.push(EnumItem { code, transducer: item.transducer });
                        }
                    }
                    Group::SnmAnchors { .. } => {
                        if let Scheme::Snm { n, m } = self.scheme {
                            batch.push(EnumItem { code: "10".parse().unwrap(), transducer: snm_anchor(n) });
                            batch.push(EnumItem { code: "11".parse().unwrap(), transducer: snm_anchor(m) });
                        }
                    }
                }
                self.groups.pop_front();
            }
            if !batch.is_empty() {
                return Some((len, batch));
            }
        }
    }
}

impl Iterator for SchemeEnumeration {
    type Item = EnumItem;

    fn next(&mut self) -> Option<EnumItem> {
        loop {
            if let Some(item) = self.buffer.pop_front() {
                return Some(item);
            }
            let (_, items) = self.next_batch()?;
            self.buffer = items.into();
        }
    }
}
