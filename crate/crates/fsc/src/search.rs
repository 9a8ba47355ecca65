//! Exact finite-state complexity search.
//!
//! The complexity of a string `x` under a scheme is the least `|σ| + |p|`
//! over descriptions `(σ, p)` with `decode(σ)(p) = x`. The search enumerates
//! candidate machines in (code length, code) order, finds each machine's
//! shortest programs by breadth-first search on the product of the machine
//! with the positions of `x`, and stops at the proven cutoff: once every
//! remaining code is longer than `best - 1` (or `best` for `x = ε`, where
//! the empty program is admissible) no description can tie.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::bits::BitString;
use crate::codec::OutputConstraint;
use crate::encodings::Scheme;
use crate::transducer::Transducer;

/// A description of a string: a scheme code together with a program.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Description {
    pub sigma: BitString,
    pub program: BitString,
    pub states: usize,
}

impl Description {
    pub fn size(&self) -> u64 {
        (self.sigma.len() + self.program.len()) as u64
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    /// Enumerated machines examined (pruned ones included).
    pub candidates: u64,
    /// Largest code length the enumeration reached.
    pub budget_used: u64,
    pub wall: Duration,
}

/// Result of an exact (or budget-capped) complexity search.
#[derive(Clone, Debug)]
pub struct ComplexityReport {
    pub input: BitString,
    pub scheme: String,
    /// Exact complexity when `exact`, otherwise the best upper bound found.
    pub complexity: u64,
    pub exact: bool,
    /// All minimal descriptions, sorted by (|σ|, σ, program).
    pub descriptions: Vec<Description>,
    /// State counts occurring among minimal descriptions, ascending.
    pub state_sizes: Vec<usize>,
    /// Least state count among minimal descriptions.
    pub min_states: Option<usize>,
    pub stats: SearchStats,
}

#[derive(Serialize)]
struct StatsView {
    candidates: u64,
    budget_used: u64,
    wall_ms: u64,
}

#[derive(Serialize)]
struct ReportView<'a> {
    input: &'a BitString,
    scheme: &'a str,
    complexity: u64,
    exact: bool,
    descriptions: &'a [Description],
    state_sizes: &'a [usize],
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<StatsView>,
}

impl ComplexityReport {
    /// JSON per the report contract. With `all_descriptions` unset, only the
    /// tie-break witness (the first description) is listed. Stats carry wall
    /// time, so omit them when outputs must be byte-reproducible.
    pub fn to_json(&self, include_stats: bool, all_descriptions: bool) -> String {
        let shown = if all_descriptions || self.descriptions.len() <= 1 {
            &self.descriptions[..]
        } else {
            &self.descriptions[..1]
        };
        let view = ReportView {
            input: &self.input,
            scheme: &self.scheme,
            complexity: self.complexity,
            exact: self.exact,
            descriptions: shown,
            state_sizes: &self.state_sizes,
            stats: include_stats.then_some(StatsView {
                candidates: self.stats.candidates,
                budget_used: self.stats.budget_used,
                wall_ms: self.stats.wall.as_millis() as u64,
            }),
        };
        let mut s = serde_json::to_string_pretty(&view).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Search knobs. The pruning toggles never change results, only work done;
/// that is itself a tested property.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Hard cap on enumerated code length. `None` uses the proven default,
    /// identity overhead + |x|.
    pub budget: Option<u64>,
    /// Restrict candidate outputs to substrings of `x` (sound for the
    /// standard scheme only, and only applied there).
    pub shape_prune: bool,
    /// Skip machines whose program length lower bound already overshoots.
    pub bound_prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: None, shape_prune: true, bound_prune: true }
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn map_ordered<T: Sync, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> R + Send + Sync,
) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_ordered<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Runs `f` on a pool of `workers` threads (parallel builds); with the
/// parallel feature off the closure just runs on this thread.
pub fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match workers {
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .expect("worker pool")
                .install(f),
            None => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        f()
    }
}

/// Product of a machine with the matched-prefix positions of `x`.
struct Product<'a> {
    t: &'a Transducer,
    x: &'a BitString,
    width: usize, // |x| + 1
}

impl<'a> Product<'a> {
    fn new(t: &'a Transducer, x: &'a BitString) -> Self {
        Self { t, x, width: x.len() + 1 }
    }

    fn nodes(&self) -> usize {
        self.t.states() * self.width
    }

    fn node(&self, state: usize, pos: usize) -> usize {
        (state - 1) * self.width + pos
    }

    fn start(&self) -> usize {
        self.node(1, 0)
    }

    /// Successor under input bit `a`, present iff the transition output
    /// matches `x` at the current position without overrunning.
    fn edge(&self, node: usize, a: u8) -> Option<usize> {
        let state = node / self.width + 1;
        let pos = node % self.width;
        let tr = self.t.transition(state, a);
        let out = tr.output.as_slice();
        let end = pos + out.len();
        if end > self.x.len() || &self.x.as_slice()[pos..end] != out {
            return None;
        }
        Some(self.node(tr.target, end))
    }

    /// Distance from every node to the nearest goal `(_, |x|)`, by reverse
    /// breadth-first search. `u32::MAX` marks unreachable.
    fn dist_to_goal(&self) -> Vec<u32> {
        let nodes = self.nodes();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); nodes];
        for u in 0..nodes {
            for a in [0u8, 1] {
                if let Some(v) = self.edge(u, a) {
                    rev[v].push(u as u32);
                }
            }
        }
        let mut dist = vec![u32::MAX; nodes];
        let mut queue = VecDeque::new();
        for state in 1..=self.t.states() {
            let goal = self.node(state, self.x.len());
            dist[goal] = 0;
            queue.push_back(goal);
        }
        while let Some(u) = queue.pop_front() {
            for &v in &rev[u] {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u] + 1;
                    queue.push_back(v as usize);
                }
            }
        }
        dist
    }
}

/// The shortest program `p` with `t(p) = x`, ties broken toward the
/// lexicographically smallest, or `None` when no program produces `x`.
pub fn minimal_program(t: &Transducer, x: &BitString) -> Option<BitString> {
    let product = Product::new(t, x);
    let dist = product.dist_to_goal();
    let d = dist[product.start()];
    if d == u32::MAX {
        return None;
    }
    let mut program = BitString::with_capacity(d as usize);
    let mut cur = product.start();
    for step in 0..d {
        let remaining = d - step - 1;
        let next = [0u8, 1].into_iter().find_map(|a| {
            product.edge(cur, a).filter(|&v| dist[v] == remaining).map(|v| (a, v))
        });
        let (a, v) = next.expect("a shortest path exists from every on-path node");
        program.push(a);
        cur = v;
    }
    Some(program)
}

/// All shortest programs for `x` on `t`, in lexicographic order, with their
/// common length.
pub fn shortest_programs(t: &Transducer, x: &BitString) -> Option<(u64, Vec<BitString>)> {
    let product = Product::new(t, x);
    let dist = product.dist_to_goal();
    let d = dist[product.start()];
    if d == u32::MAX {
        return None;
    }
    if d == 0 {
        return Some((0, vec![BitString::empty()]));
    }
    let mut results = Vec::new();
    let mut path = BitString::empty();
    let mut stack: Vec<(usize, u8)> = vec![(product.start(), 0)];
    while !stack.is_empty() {
        let depth = stack.len() - 1;
        let remaining = d as usize - depth;
        let (node, tried) = stack.last_mut().unwrap();
        if remaining == 0 {
            results.push(path.clone());
            stack.pop();
            path.pop();
            continue;
        }
        let mut advanced = false;
        while *tried < 2 {
            let a = *tried;
            *tried += 1;
            if let Some(v) = product.edge(*node, a) {
                if dist[v] as usize == remaining - 1 {
                    path.push(a);
                    stack.push((v, 0));
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            stack.pop();
            path.pop();
        }
    }
    Some((u64::from(d), results))
}

/// An admissible lower bound on `|minimal_program(t, x)|`: at least
/// ⌈|x| / max-output-length⌉ symbols are needed, and at least one when
/// `x ≠ ε`. When `x` needs a bit value no output of `t` contains, no program
/// exists at all and the bound is `u64::MAX`.
pub fn lower_program_bound(t: &Transducer, x: &BitString) -> u64 {
    if x.is_empty() {
        return 0;
    }
    let needs = [x.iter().any(|b| b == 0), x.iter().any(|b| b == 1)];
    if (needs[0] && !t.emits_bit(0)) || (needs[1] && !t.emits_bit(1)) {
        return u64::MAX;
    }
    let max_out = t.max_output_len() as u64;
    (x.len() as u64).div_ceil(max_out)
}

fn cutoff_for(best: u64, x: &BitString) -> u64 {
    // |p| >= 1 for x != ε, so codes of length best contribute size > best
    if x.is_empty() {
        best
    } else {
        best - 1
    }
}

/// Exact complexity of `x` under `scheme`, with the complete minimal
/// description set. Results are identical for any worker count; capping the
/// budget below the proven cutoff yields an upper bound flagged `exact: false`.
pub fn complexity(x: &BitString, scheme: &Scheme, opts: &SearchOptions) -> ComplexityReport {
    let started = Instant::now();
    let overhead = scheme.identity_overhead();
    let trivial_upper = overhead + x.len() as u64;
    let hard_budget = opts
        .budget
        .unwrap_or(trivial_upper)
        .min(scheme.max_enumeration_budget());

    let constraint = (matches!(scheme, Scheme::S0) && opts.shape_prune)
        .then(|| OutputConstraint::substrings_of(x));

    let mut best = trivial_upper;
    let mut found: Vec<Description> = Vec::new();
    let mut stats = SearchStats::default();
    let mut passed_cutoff = false;

    let mut enumeration = scheme.enumerate(hard_budget, constraint.as_ref());
    while let Some((len, batch)) = enumeration.next_batch() {
        if len > cutoff_for(best, x) {
            passed_cutoff = true;
            break;
        }
        stats.budget_used = len;
        let best_snapshot = best;
        let results = map_ordered(&batch, |item| {
            if opts.bound_prune {
                let bound = lower_program_bound(&item.transducer, x);
                if len.saturating_add(bound) > best_snapshot {
                    return None;
                }
            }
            shortest_programs(&item.transducer, x)
        });
        for (item, result) in batch.iter().zip(results) {
            stats.candidates += 1;
            if let Some((program_len, programs)) = result {
                let size = len + program_len;
                if size > best {
                    continue;
                }
                if size < best {
                    best = size;
                    found.clear();
                }
                for program in programs {
                    found.push(Description {
                        sigma: item.code.clone(),
                        program,
                        states: item.transducer.states(),
                    });
                }
            }
        }
    }

    found.sort_by(|a, b| {
        a.sigma
            .len()
            .cmp(&b.sigma.len())
            .then_with(|| a.sigma.cmp(&b.sigma))
            .then_with(|| a.program.cmp(&b.program))
    });
    let exact = passed_cutoff || hard_budget >= cutoff_for(best, x);
    let state_sizes: BTreeSet<usize> = found.iter().map(|d| d.states).collect();
    stats.wall = started.elapsed();

    ComplexityReport {
        input: x.clone(),
        scheme: scheme.id(),
        complexity: best,
        exact,
        min_states: state_sizes.iter().next().copied(),
        state_sizes: state_sizes.into_iter().collect(),
        descriptions: found,
        stats,
    }
}

/// Membership of `x` in the three state-size languages at level `m`,
/// read off a completed report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    /// Some minimal description uses at most `m` states.
    pub in_leq_m: bool,
    /// `m` is the least state count over minimal descriptions.
    pub in_eq_m: bool,
    /// Some minimal description uses exactly `m` states.
    pub in_exists_min_m: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("search was incomplete; state-size membership is undecided")]
pub struct IncompleteSearch;

pub fn state_size_membership(report: &ComplexityReport, m: usize) -> Result<Membership, IncompleteSearch> {
    if !report.exact {
        return Err(IncompleteSearch);
    }
    let min = report.min_states.expect("an exact report has at least one description");
    Ok(Membership {
        in_leq_m: min <= m,
        in_eq_m: min == m,
        in_exists_min_m: report.state_sizes.contains(&m),
    })
}

/// One row of a full-scan table.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub x: BitString,
    pub complexity: u64,
    pub exact: bool,
    pub min_states: Option<usize>,
    /// The tie-break witness description, when the search completed.
    pub witness: Option<Description>,
}

/// Exact complexity of every string up to a length cap.
#[derive(Clone, Debug)]
pub struct ScanTable {
    pub scheme: String,
    pub cap: usize,
    pub rows: Vec<ScanRow>,
    pub complete: bool,
    /// For each observed minimal state count n, the length of the first
    /// (shortest, then lexicographically least) string requiring it.
    pub shortest_by_states: BTreeMap<usize, usize>,
}

/// Scans all `2^(cap+1) - 1` strings of length at most `cap` in
/// length-then-lexicographic order. Rows are independent searches, so the
/// table is deterministic for any worker count.
pub fn scan(cap: usize, scheme: &Scheme, opts: &SearchOptions) -> ScanTable {
    let xs: Vec<BitString> = (0..=cap).flat_map(BitString::all_of_len).collect();
    let reports = map_ordered(&xs, |x| complexity(x, scheme, opts));

    let mut rows = Vec::with_capacity(reports.len());
    let mut complete = true;
    let mut shortest_by_states = BTreeMap::new();
    for report in reports {
        complete &= report.exact;
        if let Some(min) = report.min_states.filter(|_| report.exact) {
            shortest_by_states.entry(min).or_insert(report.input.len());
        }
        rows.push(ScanRow {
            x: report.input,
            complexity: report.complexity,
            exact: report.exact,
            min_states: report.min_states,
            witness: report.descriptions.first().cloned(),
        });
    }
    ScanTable { scheme: scheme.id(), cap, rows, complete, shortest_by_states }
}

fn tsv_field(x: &BitString) -> String {
    if x.is_empty() {
        "-".to_string()
    } else {
        x.to_string()
    }
}

impl ScanTable {
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        if !self.complete {
            out.push_str("# incomplete: the enumeration budget was exhausted on some rows\n");
        }
        out.push_str("x\tcomplexity\tmin_states\tsigma\tprogram\n");
        for row in &self.rows {
            let (min_states, sigma, program) = match (&row.min_states, &row.witness) {
                (Some(min), Some(w)) => (min.to_string(), w.sigma.to_string(), tsv_field(&w.program)),
                _ => ("-".into(), "-".into(), "-".into()),
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                tsv_field(&row.x),
                row.complexity,
                min_states,
                sigma,
                program
            ));
        }
        for (states, len) in &self.shortest_by_states {
            out.push_str(&format!("# shortest_with_min_states\t{states}\t{len}\n"));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct PowerProbeRow {
    pub k: usize,
    pub complexity: u64,
    pub exact: bool,
    pub min_states: Option<usize>,
    /// Set when `w^k` needs strictly fewer states than `w` itself; such a
    /// row is a counterexample to the power-monotonicity conjecture.
    pub flagged: bool,
}

#[derive(Clone, Debug)]
pub struct PowerProbe {
    pub w: BitString,
    pub scheme: String,
    pub rows: Vec<PowerProbeRow>,
}

/// Complexity of `w^k` for `k = 1..=kmax`, flagging any k where the minimal
/// state count drops below that of `w`.
pub fn power_probe(w: &BitString, kmax: usize, scheme: &Scheme, opts: &SearchOptions) -> PowerProbe {
    let mut rows = Vec::with_capacity(kmax);
    let mut base_min: Option<usize> = None;
    for k in 1..=kmax {
        let report = complexity(&w.repeat(k), scheme, opts);
        if k == 1 {
            base_min = report.min_states.filter(|_| report.exact);
        }
        let flagged = match (base_min, report.min_states.filter(|_| report.exact)) {
            (Some(base), Some(min)) => min < base,
            _ => false,
        };
        rows.push(PowerProbeRow {
            k,
            complexity: report.complexity,
            exact: report.exact,
            min_states: report.min_states,
            flagged,
        });
    }
    PowerProbe { w: w.clone(), scheme: scheme.id(), rows }
}

impl PowerProbe {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("k\tcomplexity\tmin_states\tflag\n");
        for row in &self.rows {
            let min = row.min_states.map_or("-".into(), |m| m.to_string());
            let flag = if row.flagged { "COUNTEREXAMPLE" } else { "-" };
            out.push_str(&format!("{}\t{}\t{}\t{}\n", row.k, row.complexity, min, flag));
        }
        if self.rows.iter().any(|r| r.flagged) {
            out.push_str("# counterexample flagged: a power needs fewer states than its base\n");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transducer::Transition;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn t(states: usize, entries: &[(usize, &str)]) -> Transducer {
        let table = entries
            .iter()
            .map(|&(target, out)| Transition::new(target, bs(out)))
            .collect();
        Transducer::new(states, table).unwrap()
    }

    #[test]
    fn minimal_program_on_identity_is_the_string_itself() {
        let id = Transducer::identity();
        assert_eq!(minimal_program(&id, &bs("0110")), Some(bs("0110")));
        assert_eq!(minimal_program(&id, &BitString::empty()), Some(BitString::empty()));
    }

    #[test]
    fn minimal_program_uses_block_outputs() {
        let m = t(1, &[(1, "00"), (1, "")]);
        assert_eq!(minimal_program(&m, &bs("0000")), Some(bs("00")));
        assert_eq!(minimal_program(&m, &bs("000")), None);
    }

    #[test]
    fn minimal_program_on_witness_instance() {
        let (m, _) = crate::constructions::witness_transducer(1, 1);
        let x = crate::constructions::witness_string(1, 1);
        // brute force over all programs of length <= 6
        let mut expected = None;
        'outer: for len in 0..=6 {
            for p in BitString::all_of_len(len) {
                if m.evaluate(&p) == x {
                    expected = Some(p);
                    break 'outer;
                }
            }
        }
        assert_eq!(expected, Some(bs("0101")));
        assert_eq!(minimal_program(&m, &x), expected);
    }

    #[test]
    fn shortest_programs_collects_every_tie() {
        // both inputs emit "0" from a single state
        let m = t(1, &[(1, "0"), (1, "0")]);
        let (len, programs) = shortest_programs(&m, &bs("00")).unwrap();
        assert_eq!(len, 2);
        assert_eq!(programs, vec![bs("00"), bs("01"), bs("10"), bs("11")]);
        assert_eq!(minimal_program(&m, &bs("00")), Some(bs("00")));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_program_bound(&Transducer::identity(), &BitString::zeros(10)), 10);
        let wide = t(1, &[(1, "0000000"), (1, "")]);
        assert_eq!(lower_program_bound(&wide, &BitString::zeros(10)), 2);
        // x needs a 1 but the machine never emits one
        assert_eq!(lower_program_bound(&wide, &bs("01")), u64::MAX);
        assert_eq!(lower_program_bound(&wide, &BitString::empty()), 0);
    }

    #[test]
    fn complexity_of_empty_string() {
        let report = complexity(&BitString::empty(), &Scheme::S0, &SearchOptions::default());
        assert!(report.exact);
        assert_eq!(report.complexity, 4);
        assert_eq!(report.descriptions.len(), 1);
        assert_eq!(report.descriptions[0].sigma, bs("0000"));
        assert_eq!(report.descriptions[0].program, BitString::empty());
        assert_eq!(report.min_states, Some(1));
    }

    #[test]
    fn complexity_of_single_zero() {
        let report = complexity(&bs("0"), &Scheme::S0, &SearchOptions::default());
        assert!(report.exact);
        assert_eq!(report.complexity, 7);
        // two minimal descriptions: emit "0" from either input
        let got: Vec<(String, String)> = report
            .descriptions
            .iter()
            .map(|d| (d.sigma.to_string(), d.program.to_string()))
            .collect();
        assert_eq!(got, vec![("000110".into(), "1".into()), ("011000".into(), "0".into())]);
        assert_eq!(report.state_sizes, vec![1]);
    }

    #[test]
    fn pruning_toggles_do_not_change_results() {
        for x in (0..=4).flat_map(BitString::all_of_len) {
            let baseline = complexity(
                &x,
                &Scheme::S0,
                &SearchOptions { shape_prune: false, bound_prune: false, ..Default::default() },
            );
            for (shape, bound) in [(true, false), (false, true), (true, true)] {
                let other = complexity(
                    &x,
                    &Scheme::S0,
                    &SearchOptions { shape_prune: shape, bound_prune: bound, ..Default::default() },
                );
                assert_eq!(baseline.complexity, other.complexity, "x = {x}");
                assert_eq!(baseline.descriptions, other.descriptions, "x = {x}");
            }
        }
    }

    #[test]
    fn membership_of_empty_string() {
        let report = complexity(&BitString::empty(), &Scheme::S0, &SearchOptions::default());
        let m1 = state_size_membership(&report, 1).unwrap();
        assert_eq!(m1, Membership { in_leq_m: true, in_eq_m: true, in_exists_min_m: true });
        let m2 = state_size_membership(&report, 2).unwrap();
        assert_eq!(m2, Membership { in_leq_m: true, in_eq_m: false, in_exists_min_m: false });
    }

    #[test]
    fn capped_budget_reports_upper_bound() {
        let report = complexity(
            &bs("0"),
            &Scheme::S0,
            &SearchOptions { budget: Some(4), ..Default::default() },
        );
        assert!(!report.exact);
        assert_eq!(report.complexity, 9); // identity overhead + |x|
        assert!(report.descriptions.is_empty());
        assert!(state_size_membership(&report, 1).is_err());
    }

    #[test]
    fn scan_cap_zero() {
        let table = scan(0, &Scheme::S0, &SearchOptions::default());
        assert_eq!(table.rows.len(), 1);
        assert!(table.complete);
        assert_eq!(table.rows[0].complexity, 4);
        assert_eq!(table.rows[0].min_states, Some(1));
        assert_eq!(table.shortest_by_states.get(&1), Some(&0));
        assert!(table.to_tsv().starts_with("x\tcomplexity\tmin_states\tsigma\tprogram\n-\t4\t1\t0000\t-\n"));
    }

    #[test]
    fn scan_is_closed_under_negation() {
        let table = scan(4, &Scheme::S0, &SearchOptions::default());
        let by_x: BTreeMap<BitString, u64> =
            table.rows.iter().map(|r| (r.x.clone(), r.complexity)).collect();
        for row in &table.rows {
            assert_eq!(by_x[&row.x.negated()], row.complexity, "x = {}", row.x);
        }
    }

    #[test]
    fn power_probe_of_empty_word() {
        let probe = power_probe(&BitString::empty(), 3, &Scheme::S0, &SearchOptions::default());
        assert_eq!(probe.rows.len(), 3);
        for row in &probe.rows {
            assert_eq!(row.complexity, 4);
            assert_eq!(row.min_states, Some(1));
            assert!(!row.flagged);
        }
    }

    #[test]
    fn power_probe_of_zero() {
        let probe = power_probe(&bs("0"), 2, &Scheme::S0, &SearchOptions::default());
        assert_eq!(probe.rows[0].complexity, 7);
        assert!(probe.rows[1].exact);
        assert!(!probe.rows[1].flagged);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn worker_count_does_not_change_reports() {
        let x = bs("01101");
        let one = with_workers(Some(1), || complexity(&x, &Scheme::S0, &SearchOptions::default()));
        let four = with_workers(Some(4), || complexity(&x, &Scheme::S0, &SearchOptions::default()));
        assert_eq!(one.to_json(false, true), four.to_json(false, true));
    }
}
