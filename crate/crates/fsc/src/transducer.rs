//! Deterministic sequential transducers over the binary alphabet.
//!
//! A transducer has states `1..=n` with start state 1, and a total
//! transition table: for every state and input bit there is exactly one
//! (target state, output word) entry. Every state is accepting, so every
//! input string has a well-defined output.

use std::fmt;

use thiserror::Error;

use crate::bits::BitString;

/// One entry of the transition table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    /// Target state, in `1..=n`.
    pub target: usize,
    /// Output word emitted when the transition is taken.
    pub output: BitString,
}

impl Transition {
    pub fn new(target: usize, output: BitString) -> Self {
        Self { target, output }
    }
}

/// A deterministic sequential transducer with states `1..=n`, start state 1.
///
/// The table is stored flat: index `2*(q-1) + bit` holds the entry for
/// `(state q, input bit)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transducer {
    states: usize,
    table: Vec<Transition>,
}

/// Structural violations rejected by [`Transducer::new`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidTransducer {
    #[error("a transducer needs at least one state")]
    ZeroStates,
    #[error("transition table has {got} entries, expected {expected}")]
    WrongTableSize { got: usize, expected: usize },
    #[error("transition {index} targets state {target}, but there are only {states} states")]
    TargetOutOfRange { index: usize, target: usize, states: usize },
}

impl Transducer {
    /// Builds a transducer from a complete table of `2n` transitions, ordered
    /// by `(state, input bit)`.
    pub fn new(states: usize, table: Vec<Transition>) -> Result<Self, InvalidTransducer> {
        if states == 0 {
            return Err(InvalidTransducer::ZeroStates);
        }
        if table.len() != 2 * states {
            return Err(InvalidTransducer::WrongTableSize { got: table.len(), expected: 2 * states });
        }
        for (index, tr) in table.iter().enumerate() {
            if tr.target < 1 || tr.target > states {
                return Err(InvalidTransducer::TargetOutOfRange {
                    index: index + 1,
                    target: tr.target,
                    states,
                });
            }
        }
        Ok(Self { states, table })
    }

    /// The one-state transducer computing the identity function.
    pub fn identity() -> Self {
        Self::new(
            1,
            vec![
                Transition::new(1, "0".parse().unwrap()),
                Transition::new(1, "1".parse().unwrap()),
            ],
        )
        .unwrap()
    }

    pub fn states(&self) -> usize {
        self.states
    }

    /// The table entry for `(state, bit)`; `state` is 1-based.
    pub fn transition(&self, state: usize, bit: u8) -> &Transition {
        debug_assert!(state >= 1 && state <= self.states);
        &self.table[2 * (state - 1) + bit as usize]
    }

    /// Table entries in canonical order: state 1 bit 0, state 1 bit 1, state 2 bit 0, ...
    pub fn transitions(&self) -> impl Iterator<Item = &Transition> {
        self.table.iter()
    }

    /// Runs `input` from `state`, returning the emitted output and final state.
    pub fn evaluate_from(&self, state: usize, input: &BitString) -> (BitString, usize) {
        let mut q = state;
        let mut out = BitString::empty();
        for bit in input.iter() {
            let tr = self.transition(q, bit);
            out.extend(&tr.output);
            q = tr.target;
        }
        (out, q)
    }

    /// The function computed by the transducer: output of the run of `input`
    /// from state 1.
    pub fn evaluate(&self, input: &BitString) -> BitString {
        self.evaluate_from(1, input).0
    }

    /// Length of the longest transition output.
    pub fn max_output_len(&self) -> usize {
        self.table.iter().map(|tr| tr.output.len()).max().unwrap_or(0)
    }

    /// Sum of all transition output lengths.
    pub fn total_output_len(&self) -> usize {
        self.table.iter().map(|tr| tr.output.len()).sum()
    }

    /// Whether any transition output contains the given bit value.
    pub fn emits_bit(&self, bit: u8) -> bool {
        self.table.iter().any(|tr| tr.output.iter().any(|b| b == bit))
    }

    /// The same automaton structure with every output bitwise negated.
    pub fn negate_outputs(&self) -> Transducer {
        let table = self
            .table
            .iter()
            .map(|tr| Transition::new(tr.target, tr.output.negated()))
            .collect();
        Self { states: self.states, table }
    }

    /// States reachable from the start state.
    pub fn reachable_states(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        while let Some(q) = stack.pop() {
            for bit in [0u8, 1] {
                let t = self.transition(q, bit).target;
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        (1..=self.states).filter(|&q| seen[q]).collect()
    }

    /// True when the transducer computes the identity function, i.e. every
    /// reachable transition on bit `a` outputs exactly `a`.
    pub fn computes_identity(&self) -> bool {
        self.reachable_states().into_iter().all(|q| {
            [0u8, 1].into_iter().all(|bit| {
                let out = &self.transition(q, bit).output;
                out.len() == 1 && out.bit(0) == bit
            })
        })
    }

    /// Emits the canonical text format.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str("fst v1\n");
        out.push_str(&format!("states {}\n", self.states));
        for q in 1..=self.states {
            for bit in [0u8, 1] {
                let tr = self.transition(q, bit);
                let output = if tr.output.is_empty() {
                    "-".to_string()
                } else {
                    tr.output.to_string()
                };
                out.push_str(&format!("{q} {bit} {} {output}\n", tr.target));
            }
        }
        out
    }

    /// Parses the canonical text format. See [`Transducer::serialize`] for
    /// the exact shape; errors carry the offending 1-based line number.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.split('\n').enumerate();

        let (_, header) = lines.next().ok_or(ParseError { line: 1, kind: ParseErrorKind::BadHeader })?;
        if header != "fst v1" {
            return Err(ParseError { line: 1, kind: ParseErrorKind::BadHeader });
        }

        let (_, counts) = lines
            .next()
            .ok_or(ParseError { line: 2, kind: ParseErrorKind::BadStateCount })?;
        let states: usize = counts
            .strip_prefix("states ")
            .and_then(|s| s.parse().ok())
            .filter(|&n| n >= 1)
            .ok_or(ParseError { line: 2, kind: ParseErrorKind::BadStateCount })?;

        let mut table = Vec::with_capacity(2 * states);
        for q in 1..=states {
            for bit in [0u8, 1] {
                let line_no = 2 + table.len() + 1;
                let (_, line) = lines.next().filter(|(_, l)| !l.is_empty()).ok_or(ParseError {
                    line: line_no,
                    kind: ParseErrorKind::MissingTransition { state: q, bit },
                })?;
                let fields: Vec<&str> = line.split(' ').collect();
                if fields.len() != 4 {
                    return Err(ParseError { line: line_no, kind: ParseErrorKind::MalformedTransition });
                }
                if fields[0] != q.to_string() || fields[1] != bit.to_string() {
                    return Err(ParseError {
                        line: line_no,
                        kind: ParseErrorKind::WrongTransitionLabel { state: q, bit },
                    });
                }
                let target: usize = fields[2]
                    .parse()
                    .map_err(|_| ParseError { line: line_no, kind: ParseErrorKind::MalformedTransition })?;
                if target < 1 || target > states {
                    return Err(ParseError {
                        line: line_no,
                        kind: ParseErrorKind::TargetOutOfRange { target, states },
                    });
                }
                let output = if fields[3] == "-" {
                    BitString::empty()
                } else {
                    fields[3].parse().map_err(|_| ParseError {
                        line: line_no,
                        kind: ParseErrorKind::BadOutput { token: fields[3].to_string() },
                    })?
                };
                table.push(Transition::new(target, output));
            }
        }

        for (i, rest) in lines {
            if !rest.is_empty() {
                return Err(ParseError { line: i + 1, kind: ParseErrorKind::TrailingContent });
            }
        }

        Ok(Self { states, table })
    }
}

/// A parse failure with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `fst v1`")]
    BadHeader,
    #[error("expected `states <n>` with n >= 1")]
    BadStateCount,
    #[error("missing transition line for state {state} bit {bit}")]
    MissingTransition { state: usize, bit: u8 },
    #[error("expected `<state> <bit> <target> <output>` with single spaces")]
    MalformedTransition,
    #[error("transition lines must appear in order; expected state {state} bit {bit}")]
    WrongTransitionLabel { state: usize, bit: u8 },
    #[error("state index out of range: target {target} with {states} states")]
    TargetOutOfRange { target: usize, states: usize },
    #[error("non-binary output symbol in {token:?}")]
    BadOutput { token: String },
    #[error("trailing content after the transition table")]
    TrailingContent,
}

impl fmt::Display for Transducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}
