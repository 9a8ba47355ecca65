//! The standard encoding of transducers as binary strings.
//!
//! A transducer with states `1..=n` is encoded by listing, for each table
//! entry `t = 1..2n` (state ⌈t/2⌉, input bit (t-1) mod 2), a block
//! `bin(i_t)^‡ · v_t^⋄` where `i_t` is the target, `v_t` the output,
//! and `‡` emits ε exactly when the transition is a self-loop.
//!
//! The two self-delimiting primitives interleave flag bits after every
//! payload bit:
//!
//! * `v^†` = `v1 0 v2 0 ... v(m-1) 0 vm 1` — flag 0 continues, 1 ends.
//! * `v^⋄` = negation of `(1v)^†` — flag 1 continues, 0 ends.
//!
//! Since `bin(i)` starts with 1 and `v^⋄` starts with 0, the first bit of a
//! block tells whether an explicit target is present, and blocks parse
//! unambiguously in 2-bit pairs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::bits::BitString;
use crate::transducer::{Transducer, Transition};

/// Standard binary representation of `i >= 1` (no leading zeros).
///
/// Panics when `i == 0`; the encoding never uses a zero state index.
pub fn bin(i: u64) -> BitString {
    assert!(i >= 1, "bin is defined for i >= 1");
    let len = bin_len(i) as usize;
    let mut out = BitString::with_capacity(len);
    for k in (0..len).rev() {
        out.push(((i >> k) & 1) as u8);
    }
    out
}

/// `|bin(i)|` without materializing the string.
pub fn bin_len(i: u64) -> u64 {
    debug_assert!(i >= 1);
    64 - u64::from(i.leading_zeros())
}

/// The self-delimiting `†` code: every payload bit is followed by a
/// continuation flag, 0 to continue and 1 to terminate. `|v^†| = 2|v|`.
///
/// Panics on ε; the code is only applied to nonempty strings.
pub fn dagger(v: &BitString) -> BitString {
    assert!(!v.is_empty(), "the dagger code is defined for nonempty strings");
    let mut out = BitString::with_capacity(2 * v.len());
    for (k, bit) in v.iter().enumerate() {
        out.push(bit);
        out.push(u8::from(k + 1 == v.len()));
    }
    out
}

/// The self-delimiting `⋄` code: the negation of `(1·v)^†`, so the result
/// starts with 0 and has length `2|v| + 2`. Defined for every `v`, ε included.
pub fn diamond(v: &BitString) -> BitString {
    let mut prefixed = BitString::with_capacity(v.len() + 1);
    prefixed.push(1);
    prefixed.extend(v);
    dagger(&prefixed).negated()
}

/// The standard encoding of `t`: one `bin(i)^‡ · v^⋄` block per table entry.
pub fn encode_std(t: &Transducer) -> BitString {
    let mut out = BitString::with_capacity(std_code_len(t) as usize);
    for (idx, tr) in t.transitions().enumerate() {
        let source = idx / 2 + 1;
        if tr.target != source {
            out.extend(&dagger(&bin(tr.target as u64)));
        }
        out.extend(&diamond(&tr.output));
    }
    out
}

/// `|encode_std(t)|`, computed arithmetically.
pub fn std_code_len(t: &Transducer) -> u64 {
    let mut len = 0u64;
    for (idx, tr) in t.transitions().enumerate() {
        let source = idx / 2 + 1;
        if tr.target != source {
            len += 2 * bin_len(tr.target as u64);
        }
        len += 2 * tr.output.len() as u64 + 2;
    }
    len
}

/// Why a string is not a valid standard encoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StdDecodeError {
    #[error("truncated pair at bit {pos}")]
    TruncatedPair { pos: usize },
    #[error("expected an output block at bit {pos}")]
    ExpectedOutputBlock { pos: usize },
    #[error("target index of transition {transition} spans {bits} bits, too large")]
    TargetTooLarge { transition: usize, bits: usize },
    #[error("state index {index} out of range 1..={states}")]
    StateIndexOutOfRange { index: u64, states: usize },
    #[error("transition {transition} spells out a self-loop target; the form requires ε")]
    SelfLoopSpelledOut { transition: usize },
    #[error("{blocks} transition blocks; a transducer needs an even count 2n >= 2")]
    BlockCount { blocks: usize },
}

/// Reads a `†`-coded payload starting at `*pos`.
pub(crate) fn parse_dagger_payload(bits: &[u8], pos: &mut usize) -> Result<BitString, StdDecodeError> {
    let mut payload = BitString::empty();
    loop {
        if *pos + 1 >= bits.len() {
            return Err(StdDecodeError::TruncatedPair { pos: *pos });
        }
        payload.push(bits[*pos]);
        let flag = bits[*pos + 1];
        *pos += 2;
        if flag == 1 {
            return Ok(payload);
        }
    }
}

/// Reads a `⋄`-coded output starting at `*pos` (first bit must be 0).
fn parse_diamond_payload(bits: &[u8], pos: &mut usize) -> Result<BitString, StdDecodeError> {
    let mut payload = BitString::empty();
    loop {
        if *pos + 1 >= bits.len() {
            return Err(StdDecodeError::TruncatedPair { pos: *pos });
        }
        payload.push(1 - bits[*pos]);
        let flag = bits[*pos + 1];
        *pos += 2;
        if flag == 0 {
            // strip the prepended 1
            debug_assert_eq!(payload.bit(0), 1);
            return Ok(payload.slice(1, payload.len()));
        }
    }
}

/// Decodes a standard encoding back into a transducer.
pub fn decode_std(code: &BitString) -> Result<Transducer, StdDecodeError> {
    let bits = code.as_slice();
    let mut pos = 0usize;
    // (explicit target if any, output) per transition block
    let mut blocks: Vec<(Option<u64>, BitString)> = Vec::new();

    while pos < bits.len() {
        let transition = blocks.len() + 1;
        let explicit = if bits[pos] == 1 {
            let payload = parse_dagger_payload(bits, &mut pos)?;
            if payload.len() > 32 {
                return Err(StdDecodeError::TargetTooLarge { transition, bits: payload.len() });
            }
            let mut value = 0u64;
            for b in payload.iter() {
                value = (value << 1) | u64::from(b);
            }
            if pos >= bits.len() || bits[pos] == 1 {
                return Err(StdDecodeError::ExpectedOutputBlock { pos });
            }
            Some(value)
        } else {
            None
        };
        let output = parse_diamond_payload(bits, &mut pos)?;
        blocks.push((explicit, output));
    }

    if blocks.len() < 2 || blocks.len() % 2 == 1 {
        return Err(StdDecodeError::BlockCount { blocks: blocks.len() });
    }
    let states = blocks.len() / 2;

    let mut table = Vec::with_capacity(blocks.len());
    for (idx, (explicit, output)) in blocks.into_iter().enumerate() {
        let source = idx / 2 + 1;
        let target = match explicit {
            Some(i) if i == source as u64 => {
                return Err(StdDecodeError::SelfLoopSpelledOut { transition: idx + 1 })
            }
            Some(i) if i < 1 || i > states as u64 => {
                return Err(StdDecodeError::StateIndexOutOfRange { index: i, states })
            }
            Some(i) => i as usize,
            None => source,
        };
        table.push(Transition::new(target, output));
    }
    Ok(Transducer::new(states, table).expect("decoded table is structurally valid"))
}

/// True iff `code` lies in the domain of the standard encoding.
pub fn is_valid_std(code: &BitString) -> bool {
    decode_std(code).is_ok()
}

/// Restriction of enumeration to a fixed set of allowed transition outputs.
///
/// The constrained stream contains exactly the unconstrained transducers
/// whose every output lies in the set, in the same order.
#[derive(Clone, Debug)]
pub struct OutputConstraint {
    by_len: BTreeMap<usize, Vec<BitString>>,
    zero_run_lens: BTreeSet<usize>,
}

impl OutputConstraint {
    /// Builds the constraint from the given outputs (deduplicated).
    pub fn new<I: IntoIterator<Item = BitString>>(allowed: I) -> Self {
        let mut by_len: BTreeMap<usize, Vec<BitString>> = BTreeMap::new();
        let mut zero_run_lens = BTreeSet::new();
        for v in allowed {
            if !v.is_empty() && v.iter().all(|b| b == 0) {
                zero_run_lens.insert(v.len());
            }
            by_len.entry(v.len()).or_default().push(v);
        }
        for group in by_len.values_mut() {
            group.sort();
            group.dedup();
        }
        Self { by_len, zero_run_lens }
    }

    /// All distinct substrings of `x`, ε included.
    pub fn substrings_of(x: &BitString) -> Self {
        let mut all = vec![BitString::empty()];
        for start in 0..x.len() {
            for end in start + 1..=x.len() {
                all.push(x.slice(start, end));
            }
        }
        Self::new(all)
    }

    pub fn allowed_of_len(&self, len: usize) -> &[BitString] {
        self.by_len.get(&len).map_or(&[], Vec::as_slice)
    }

    pub fn permits(&self, v: &BitString) -> bool {
        self.allowed_of_len(v.len()).binary_search(v).is_ok()
    }

    /// Whether `0^len` (for `len >= 1`) is in the allowed set; lets callers
    /// test zero-run outputs without materializing them.
    pub fn permits_zero_run(&self, len: usize) -> bool {
        self.zero_run_lens.contains(&len)
    }
}

/// An enumerated transducer together with its code.
#[derive(Clone, Debug)]
pub struct EnumItem {
    pub code: BitString,
    pub transducer: Transducer,
}

/// All transducers whose standard encoding has exactly the given length,
/// sorted lexicographically by code. Empty for lengths that are odd or < 4.
pub fn std_items_of_len(len: u64, constraint: Option<&OutputConstraint>) -> Vec<EnumItem> {
    let mut items = Vec::new();
    if len < 4 || len % 2 == 1 {
        return items;
    }
    // each state contributes two blocks of >= 2 bits
    for states in 1..=(len / 4) as usize {
        let mut entries: Vec<Transition> = Vec::with_capacity(2 * states);
        gen_blocks(states, 0, len, constraint, &mut entries, &mut items);
    }
    items.sort_by(|a, b| a.code.cmp(&b.code));
    items
}

fn gen_blocks(
    states: usize,
    idx: usize,
    remaining: u64,
    constraint: Option<&OutputConstraint>,
    entries: &mut Vec<Transition>,
    items: &mut Vec<EnumItem>,
) {
    if idx == 2 * states {
        if remaining == 0 {
            let t = Transducer::new(states, entries.clone()).unwrap();
            let code = encode_std(&t);
            items.push(EnumItem { code, transducer: t });
        }
        return;
    }
    let source = idx / 2 + 1;
    // later transitions need at least 2 bits each
    let reserve = 2 * (2 * states - idx - 1) as u64;

    let mut targets: Vec<(usize, u64)> = vec![(source, 0)];
    for target in 1..=states {
        if target != source {
            targets.push((target, 2 * bin_len(target as u64)));
        }
    }

    for (target, target_cost) in targets {
        let budget = match remaining.checked_sub(target_cost + 2 + reserve) {
            Some(b) => b,
            None => continue,
        };
        let max_vlen = (budget / 2) as usize;
        for vlen in 0..=max_vlen {
            let block_cost = target_cost + 2 * vlen as u64 + 2;
            match constraint {
                Some(c) => {
                    for v in c.allowed_of_len(vlen) {
                        entries.push(Transition::new(target, v.clone()));
                        gen_blocks(states, idx + 1, remaining - block_cost, constraint, entries, items);
                        entries.pop();
                    }
                }
                None => {
                    for v in BitString::all_of_len(vlen) {
                        entries.push(Transition::new(target, v));
                        gen_blocks(states, idx + 1, remaining - block_cost, constraint, entries, items);
                        entries.pop();
                    }
                }
            }
        }
    }
}

/// Streams every transducer with standard encoding length <= `budget`, each
/// exactly once, ordered by (encoding length, then lexicographic code).
pub fn enumerate_std(budget: u64, constraint: Option<&OutputConstraint>) -> StdEnumeration {
    StdEnumeration { next_len: 4, budget, constraint: constraint.cloned(), buffer: Vec::new() }
}

/// Iterator over [`EnumItem`]s in (length, code) order; also usable in
/// whole-length batches via [`StdEnumeration::next_batch`].
pub struct StdEnumeration {
    next_len: u64,
    budget: u64,
    constraint: Option<OutputConstraint>,
    buffer: Vec<EnumItem>,
}

impl StdEnumeration {
    /// All items of the next nonempty code length, with that length.
    pub fn next_batch(&mut self) -> Option<(u64, Vec<EnumItem>)> {
        while self.next_len <= self.budget {
            let len = self.next_len;
            self.next_len += 2;
            let items = std_items_of_len(len, self.constraint.as_ref());
            if !items.is_empty() {
                return Some((len, items));
            }
        }
        None
    }
}

impl Iterator for StdEnumeration {
    type Item = EnumItem;

    fn next(&mut self) -> Option<EnumItem> {
        loop {
            if let Some(item) = self.buffer.pop() {
                return Some(item);
            }
            let (_, mut items) = self.next_batch()?;
            items.reverse();
            self.buffer = items;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn bin_values() {
        assert_eq!(bin(1), bs("1"));
        assert_eq!(bin(5), bs("101"));
        assert_eq!(bin(12), bs("1100"));
        assert_eq!(bin_len(12), 4);
    }

    #[test]
    #[should_panic(expected = "i >= 1")]
    fn bin_rejects_zero() {
        bin(0);
    }

    #[test]
    fn dagger_values() {
        assert_eq!(dagger(&bs("1")), bs("11"));
        assert_eq!(dagger(&bs("10")), bs("1001"));
        assert_eq!(dagger(&bs("100")), bs("100001"));
        assert_eq!(dagger(&bs("1100")).len(), 8);
    }

    #[test]
    #[should_panic(expected = "nonempty")]
    fn dagger_rejects_empty() {
        dagger(&BitString::empty());
    }

    #[test]
    fn diamond_values() {
        assert_eq!(diamond(&BitString::empty()), bs("00"));
        assert_eq!(diamond(&bs("0")), bs("0110"));
        assert_eq!(diamond(&bs("1")), bs("0100"));
        assert_eq!(diamond(&bs("01")).len(), 6);
        assert_eq!(diamond(&bs("01")).bit(0), 0);
    }

    #[test]
    fn encode_identity() {
        assert_eq!(encode_std(&Transducer::identity()), bs("01100100"));
    }

    #[test]
    fn encode_all_epsilon_self_loops() {
        let t = Transducer::new(
            1,
            vec![Transition::new(1, BitString::empty()), Transition::new(1, BitString::empty())],
        )
        .unwrap();
        assert_eq!(encode_std(&t), bs("0000"));
    }

    #[test]
    fn decode_simple_codes() {
        let t = decode_std(&bs("0000")).unwrap();
        assert_eq!(t.states(), 1);
        assert!(t.transitions().all(|tr| tr.target == 1 && tr.output.is_empty()));
        assert_eq!(decode_std(&bs("01100100")).unwrap(), Transducer::identity());
    }

    #[test]
    fn decode_rejects_single_block() {
        assert_eq!(decode_std(&bs("00")).unwrap_err(), StdDecodeError::BlockCount { blocks: 1 });
    }

    #[test]
    fn decode_rejects_spelled_out_self_loop() {
        // "11" = bin(1)^†, then two ε outputs and a filler block: transition 1
        // of a 1-state machine naming target 1 explicitly is not in the domain.
        let err = decode_std(&bs("110000")).unwrap_err();
        assert_eq!(err, StdDecodeError::SelfLoopSpelledOut { transition: 1 });
    }

    #[test]
    fn decode_rejects_out_of_range_target() {
        // bin(2)^† = "1001" on a 1-state machine
        let err = decode_std(&bs("10010000")).unwrap_err();
        assert_eq!(err, StdDecodeError::StateIndexOutOfRange { index: 2, states: 1 });
    }

    #[test]
    fn validity_basics() {
        assert!(is_valid_std(&bs("0000")));
        assert!(!is_valid_std(&bs("0001")));
        for len in [1usize, 3, 5, 7, 9] {
            for s in BitString::all_of_len(len) {
                assert!(!is_valid_std(&s), "odd-length {s} accepted");
            }
        }
    }

    #[test]
    fn enumerate_budget_4_is_the_single_smallest_code() {
        let items: Vec<_> = enumerate_std(4, None).collect();
        assert_eq!(items.len(), 1);
        assert_eq!(items[0].code, bs("0000"));
    }

    #[test]
    fn enumerate_matches_decode_filter_and_is_sorted() {
        let budget = 10u64;
        let mut expected = BTreeSet::new();
        for len in 1..=budget as usize {
            for s in BitString::all_of_len(len) {
                if is_valid_std(&s) {
                    expected.insert(s);
                }
            }
        }
        let items: Vec<_> = enumerate_std(budget, None).collect();
        let got: BTreeSet<_> = items.iter().map(|i| i.code.clone()).collect();
        assert_eq!(got, expected);
        assert_eq!(got.len(), items.len(), "duplicates in enumeration");
        for w in items.windows(2) {
            assert!(w[0].code.shortlex(&w[1].code).is_lt());
        }
        for item in &items {
            assert_eq!(decode_std(&item.code).unwrap(), item.transducer);
            assert!(item.transducer.states() as u64 <= budget / 4);
        }
    }

    #[test]
    fn constrained_enumeration_is_a_filter() {
        let x = bs("0100");
        let constraint = OutputConstraint::substrings_of(&x);
        let constrained: Vec<_> = enumerate_std(12, Some(&constraint)).map(|i| i.code).collect();
        let filtered: Vec<_> = enumerate_std(12, None)
            .filter(|i| i.transducer.transitions().all(|tr| constraint.permits(&tr.output)))
            .map(|i| i.code)
            .collect();
        assert_eq!(constrained, filtered);
    }

    prop_compose! {
        fn arb_transducer()(states in 1usize..=4)
            (states in Just(states),
             entries in proptest::collection::vec(
                (1..=states, proptest::collection::vec(0u8..2, 0..=5)),
                2 * states,
             ))
            -> Transducer
        {
            let table = entries
                .into_iter()
                .map(|(target, bits)| Transition::new(target, BitString::from_bits(bits)))
                .collect();
            Transducer::new(states, table).unwrap()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn encode_decode_round_trip(t in arb_transducer()) {
            let code = encode_std(&t);
            prop_assert_eq!(code.len() as u64, std_code_len(&t));
            prop_assert_eq!(decode_std(&code).unwrap(), t.clone());

            // length law: Σ(2|v|+2) over transitions plus 2|bin(target)| per
            // non-self-loop
            let mut expected = 0u64;
            for (idx, tr) in t.transitions().enumerate() {
                expected += 2 * tr.output.len() as u64 + 2;
                if tr.target != idx / 2 + 1 {
                    expected += 2 * bin_len(tr.target as u64);
                }
            }
            prop_assert_eq!(code.len() as u64, expected);
            prop_assert_eq!(code.len() % 2, 0);
            prop_assert!(code.len() >= 4 * t.states());
        }
    }
}
