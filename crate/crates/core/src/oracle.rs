//! Explicit-state satisfiability checking.
//!
//! A specification is read as a Büchi automaton whose states are
//! valuations of the variables that occur in it; variables that occur
//! nowhere are fixed to false. Reachable states are explored breadth first
//! (one frontier at a time, optionally in parallel), strongly connected
//! components are computed with Tarjan's algorithm, and a satisfying model
//! is a lasso into a nontrivial component that meets every acceptance set.
//!
//! Also here: an evaluator for LTL formulas on lassos, a direct check of
//! SNF clause sets with one acceptance set per eventuality, and a small
//! DPLL solver for ground clause sets.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::labelled::GroundClause;
use crate::par::{self, Execution};
use crate::snf::{SnfClauseSet, TemporalClause};
use crate::specification::{Clause, Literal, ModelParams, Signature, SpecError, Specification, VarId};

/// Upper bound on state bits, whatever [`CheckOptions::max_vars`] says.
pub const HARD_MAX_VARS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{used} variables occur in the input, the limit is {max}")]
    SignatureTooLarge { used: usize, max: usize },
    #[error("more than {0} reachable states")]
    TooManyStates(usize),
    #[error(transparent)]
    Invalid(#[from] SpecError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub max_vars: usize,
    pub max_states: Option<usize>,
    pub execution: Execution,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_vars: 16,
            max_states: None,
            execution: Execution::default(),
        }
    }
}

/// Truth values indexed by variable id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation(pub Vec<bool>);

impl Valuation {
    pub fn get(&self, var: VarId) -> bool {
        self.0.get(var.index()).copied().unwrap_or(false)
    }

    /// `p=1 q=0`.
    pub fn render(&self, sig: &Signature) -> String {
        sig.ids()
            .map(|v| format!("{}={}", sig.name(v), u8::from(self.get(v))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso {
    pub stem: Vec<Valuation>,
    pub cycle: Vec<Valuation>,
}

impl Lasso {
    /// Positions `0..len()` cover the stem and one pass of the cycle.
    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Folds any position onto `0..len()`.
    pub fn fold(&self, pos: u64) -> usize {
        let k = self.stem.len() as u64;
        if pos < k {
            pos as usize
        } else {
            (k + (pos - k) % self.cycle.len() as u64) as usize
        }
    }

    pub fn at(&self, pos: u64) -> &Valuation {
        let i = self.fold(pos);
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.cycle[i - self.stem.len()]
        }
    }

    fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.stem.len()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The goal holds at `params.offset + i * params.period` for every `i`.
    Sat { lasso: Lasso, params: ModelParams },
    Unsat,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Sat { params, .. } => write!(f, "SAT K={} L={}", params.offset, params.period),
            Verdict::Unsat => write!(f, "UNSAT"),
        }
    }
}

pub fn extract_kl(verdict: &Verdict) -> Option<ModelParams> {
    match verdict {
        Verdict::Sat { params, .. } => Some(*params),
        Verdict::Unsat => None,
    }
}

/// A clause over two consecutive states, as bit masks.
#[derive(Debug, Clone, Copy, Default)]
struct MaskClause {
    now_pos: u64,
    now_neg: u64,
    next_pos: u64,
    next_neg: u64,
}

fn holds(state: u64, pos: u64, neg: u64) -> bool {
    state & pos != 0 || !state & neg != 0
}

/// All assignments to `bits` bits satisfying every `(pos, neg)` clause.
fn models(bits: usize, clauses: &[(u64, u64)]) -> Vec<u64> {
    let mut out = Vec::new();
    if clauses.iter().any(|&(p, n)| p | n == 0) {
        return out;
    }
    // Clauses are checked once their highest bit has been assigned.
    let mut by_top: Vec<Vec<(u64, u64)>> = vec![Vec::new(); bits];
    for &(p, n) in clauses {
        let top = 63 - (p | n).leading_zeros() as usize;
        by_top[top].push((p, n));
    }
    fn go(bit: usize, val: u64, by_top: &[Vec<(u64, u64)>], out: &mut Vec<u64>) {
        if bit == by_top.len() {
            out.push(val);
            return;
        }
        for v in [val, val | 1 << bit] {
            if by_top[bit].iter().all(|&(p, n)| holds(v, p, n)) {
                go(bit + 1, v, by_top, out);
            }
        }
    }
    go(0, 0, &by_top, &mut out);
    out
}

/// Maps the variables that occur to consecutive bits.
#[derive(Debug, Clone)]
struct Encoding {
    vars: Vec<VarId>,
    bit_of: Vec<Option<u32>>,
    sig_len: usize,
}

impl Encoding {
    fn new(sig_len: usize, used: &[bool], opts: &CheckOptions) -> Result<Self, OracleError> {
        let vars: Vec<VarId> = (0..sig_len).filter(|i| used[*i]).map(|i| VarId(i as u32)).collect();
        let max = opts.max_vars.min(HARD_MAX_VARS);
        if vars.len() > max {
            return Err(OracleError::SignatureTooLarge { used: vars.len(), max });
        }
        let mut bit_of = vec![None; sig_len];
        for (b, v) in vars.iter().enumerate() {
            bit_of[v.index()] = Some(b as u32);
        }
        Ok(Encoding { vars, bit_of, sig_len })
    }

    fn bits(&self) -> usize {
        self.vars.len()
    }

    fn mask(&self, lit: &Literal) -> u64 {
        1 << self.bit_of[lit.var.index()].expect("encoded variable")
    }

    fn flat(&self, clause: &Clause) -> (u64, u64) {
        let mut pos = 0;
        let mut neg = 0;
        for lit in clause.iter() {
            if lit.positive {
                pos |= self.mask(lit);
            } else {
                neg |= self.mask(lit);
            }
        }
        (pos, neg)
    }

    fn decode(&self, state: u64) -> Valuation {
        let mut bits = vec![false; self.sig_len];
        for (b, v) in self.vars.iter().enumerate() {
            bits[v.index()] = state >> b & 1 == 1;
        }
        Valuation(bits)
    }
}

/// The Büchi automaton of a specification.
#[derive(Debug, Clone)]
pub struct Automaton {
    enc: Encoding,
    initial: Vec<(u64, u64)>,
    step: Vec<MaskClause>,
    goal: Vec<(u64, u64)>,
}

pub fn build_automaton(spec: &Specification, opts: &CheckOptions) -> Result<Automaton, OracleError> {
    spec.validate()?;
    let enc = Encoding::new(spec.signature.len(), &spec.used_variables(), opts)?;
    let step = spec
        .step
        .iter()
        .map(|c| {
            let mut m = MaskClause::default();
            for lit in c.iter() {
                let bit = enc.mask(lit);
                match (lit.degree, lit.positive) {
                    (0, true) => m.now_pos |= bit,
                    (0, false) => m.now_neg |= bit,
                    (_, true) => m.next_pos |= bit,
                    (_, false) => m.next_neg |= bit,
                }
            }
            m
        })
        .collect();
    Ok(Automaton {
        initial: spec.initial.iter().map(|c| enc.flat(c)).collect(),
        goal: spec.goal.iter().map(|c| enc.flat(c)).collect(),
        step,
        enc,
    })
}

impl Automaton {
    pub fn bits(&self) -> usize {
        self.enc.bits()
    }

    pub fn initial_states(&self) -> Vec<u64> {
        models(self.bits(), &self.initial)
    }

    pub fn successors(&self, state: u64) -> Vec<u64> {
        let residual: Vec<(u64, u64)> = self
            .step
            .iter()
            .filter(|m| !holds(state, m.now_pos, m.now_neg))
            .map(|m| (m.next_pos, m.next_neg))
            .collect();
        models(self.bits(), &residual)
    }

    pub fn accepting(&self, state: u64) -> bool {
        self.goal.iter().all(|&(p, n)| holds(state, p, n))
    }

    pub fn decode(&self, state: u64) -> Valuation {
        self.enc.decode(state)
    }
}

struct Graph {
    states: Vec<u64>,
    parent: Vec<u32>,
    offsets: Vec<usize>,
    edges: Vec<u32>,
}

impl Graph {
    fn succ(&self, v: u32) -> &[u32] {
        &self.edges[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }
}

const NO_PARENT: u32 = u32::MAX;

fn explore<F>(roots: Vec<u64>, succ: F, opts: &CheckOptions) -> Result<Graph, OracleError>
where
    F: Fn(u64) -> Vec<u64> + Sync + Send,
{
    let mut g = Graph {
        states: Vec::new(),
        parent: Vec::new(),
        offsets: vec![0],
        edges: Vec::new(),
    };
    let mut index: HashMap<u64, u32> = HashMap::new();
    for r in roots {
        if let std::collections::hash_map::Entry::Vacant(e) = index.entry(r) {
            e.insert(g.states.len() as u32);
            g.states.push(r);
            g.parent.push(NO_PARENT);
        }
    }
    let mut start = 0;
    while start < g.states.len() {
        let end = g.states.len();
        let level = par::map(opts.execution, &g.states[start..end], |s| succ(*s));
        for (i, succs) in level.into_iter().enumerate() {
            for t in succs {
                let tid = *index.entry(t).or_insert_with(|| {
                    g.states.push(t);
                    g.parent.push((start + i) as u32);
                    (g.states.len() - 1) as u32
                });
                g.edges.push(tid);
            }
            g.offsets.push(g.edges.len());
        }
        if let Some(limit) = opts.max_states {
            if g.states.len() > limit {
                return Err(OracleError::TooManyStates(limit));
            }
        }
        start = end;
    }
    Ok(g)
}

/// Component index of every node.
fn tarjan(g: &Graph) -> Vec<u32> {
    let n = g.states.len();
    let mut index = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![u32::MAX; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, usize)> = Vec::new();
    let mut next = 0u32;
    let mut ncomp = 0u32;
    for root in 0..n as u32 {
        if index[root as usize] != u32::MAX {
            continue;
        }
        index[root as usize] = next;
        low[root as usize] = next;
        next += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        call.push((root, g.offsets[root as usize]));
        while let Some(top) = call.len().checked_sub(1) {
            let (v, ei) = call[top];
            if ei < g.offsets[v as usize + 1] {
                call[top].1 += 1;
                let w = g.edges[ei];
                if index[w as usize] == u32::MAX {
                    index[w as usize] = next;
                    low[w as usize] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, g.offsets[w as usize]));
                } else if on_stack[w as usize] {
                    low[v as usize] = low[v as usize].min(index[w as usize]);
                }
                continue;
            }
            call.pop();
            if let Some(&(u, _)) = call.last() {
                low[u as usize] = low[u as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w as usize] = false;
                    comp[w as usize] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    comp
}

/// Shortest path inside component `c` from `from` to a node satisfying
/// `target`. With `nonempty`, `from` itself only counts after an edge.
fn path_within(g: &Graph, comp: &[u32], c: u32, from: u32, nonempty: bool, target: impl Fn(u32) -> bool) -> Vec<u32> {
    if !nonempty && target(from) {
        return vec![from];
    }
    let mut prev: HashMap<u32, u32> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen_from = false;
    while let Some(v) = queue.pop_front() {
        for &w in g.succ(v) {
            if comp[w as usize] != c {
                continue;
            }
            let fresh = if w == from {
                !std::mem::replace(&mut seen_from, true)
            } else if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(w) {
                e.insert(v);
                true
            } else {
                false
            };
            if !fresh {
                continue;
            }
            if target(w) {
                let mut path = vec![w];
                let mut cur = v;
                while cur != from {
                    path.push(cur);
                    cur = prev[&cur];
                }
                path.push(from);
                path.reverse();
                return path;
            }
            if w != from {
                queue.push_back(w);
            }
        }
    }
    unreachable!("component {c} is strongly connected")
}

type Accept<'a> = &'a (dyn Fn(u64) -> bool + Sync);

/// Stem and cycle of an accepting lasso, as raw states.
fn find_lasso(g: &Graph, accepts: &[Accept<'_>]) -> Option<(Vec<u64>, Vec<u64>)> {
    let comp = tarjan(g);
    let ncomp = comp.iter().map(|c| c + 1).max().unwrap_or(0) as usize;
    let mut size = vec![0usize; ncomp];
    for c in &comp {
        size[*c as usize] += 1;
    }
    let mut cyclic = vec![false; ncomp];
    let mut hits = vec![vec![false; accepts.len()]; ncomp];
    for v in 0..g.states.len() {
        let c = comp[v] as usize;
        if size[c] > 1 || g.succ(v as u32).contains(&(v as u32)) {
            cyclic[c] = true;
        }
        for (j, acc) in accepts.iter().enumerate() {
            if !hits[c][j] && acc(g.states[v]) {
                hits[c][j] = true;
            }
        }
    }
    let good = |c: usize| cyclic[c] && hits[c].iter().all(|h| *h);
    // Lowest id first: ids follow BFS order, so the stem is shortest.
    let anchor = (0..g.states.len() as u32).find(|&v| {
        let c = comp[v as usize] as usize;
        good(c) && accepts.first().is_none_or(|acc| acc(g.states[v as usize]))
    })?;
    let c = comp[anchor as usize];

    let mut stem = Vec::new();
    let mut cur = g.parent[anchor as usize];
    while cur != NO_PARENT {
        stem.push(g.states[cur as usize]);
        cur = g.parent[cur as usize];
    }
    stem.reverse();

    let mut cycle = vec![anchor];
    let mut cur = anchor;
    for acc in accepts.iter().skip(1) {
        let p = path_within(g, &comp, c, cur, false, |v| acc(g.states[v as usize]));
        cycle.extend_from_slice(&p[1..]);
        cur = *cycle.last().expect("nonempty");
    }
    let back = path_within(g, &comp, c, cur, true, |v| v == anchor);
    cycle.extend_from_slice(&back[1..back.len() - 1]);
    Some((stem, cycle.into_iter().map(|v| g.states[v as usize]).collect()))
}

pub fn check(spec: &Specification, opts: &CheckOptions) -> Result<Verdict, OracleError> {
    let aut = build_automaton(spec, opts)?;
    let g = explore(aut.initial_states(), |s| aut.successors(s), opts)?;
    let accept = |s: u64| aut.accepting(s);
    Ok(match find_lasso(&g, &[&accept]) {
        None => Verdict::Unsat,
        Some((stem, cycle)) => {
            let params = ModelParams::new(stem.len() as u64, cycle.len() as u64);
            Verdict::Sat {
                lasso: Lasso {
                    stem: stem.into_iter().map(|s| aut.decode(s)).collect(),
                    cycle: cycle.into_iter().map(|s| aut.decode(s)).collect(),
                },
                params,
            }
        }
    })
}

/// [`check`] over many specifications; parallel across inputs, each
/// individual check sequential.
pub fn check_batch(specs: &[Specification], opts: &CheckOptions) -> Vec<Result<Verdict, OracleError>> {
    let inner = CheckOptions {
        execution: Execution::Sequential,
        ..*opts
    };
    par::map(opts.execution, specs, |s| check(s, &inner))
}

fn lit_at(lasso: &Lasso, pos: u64, lit: &Literal) -> bool {
    lasso.at(pos + lit.degree as u64).get(lit.var) == lit.positive
}

fn clause_at(lasso: &Lasso, pos: u64, clause: &Clause) -> bool {
    clause.iter().any(|l| lit_at(lasso, pos, l))
}

/// Whether the lasso satisfies the specification with the goal read at
/// `params.offset + i * params.period`.
pub fn verify_model(spec: &Specification, lasso: &Lasso, params: ModelParams) -> bool {
    if lasso.is_empty() {
        return false;
    }
    if !spec.initial.iter().all(|c| clause_at(lasso, 0, c)) {
        return false;
    }
    for pos in 0..lasso.len() as u64 {
        if !spec.step.iter().all(|c| clause_at(lasso, pos, c)) {
            return false;
        }
    }
    // Past stem + period every goal position repeats an earlier one.
    let horizon = lasso.len() as u64 + params.period;
    let mut pos = params.offset;
    loop {
        if !spec.goal.iter().all(|c| clause_at(lasso, pos, c)) {
            return false;
        }
        pos += params.period;
        if pos >= horizon.max(params.offset + params.period + 1) {
            return true;
        }
    }
}

/// Truth of `f` at position 0 of the lasso. Atoms missing from `sig` are
/// false.
pub fn eval_formula_on_lasso(f: &Formula, sig: &Signature, lasso: &Lasso) -> bool {
    assert!(!lasso.is_empty(), "lasso without cycle");
    eval(f, sig, lasso)[0]
}

fn eval(f: &Formula, sig: &Signature, lasso: &Lasso) -> Vec<bool> {
    let n = lasso.len();
    let pointwise = |a: Vec<bool>, b: Vec<bool>, op: fn(bool, bool) -> bool| -> Vec<bool> {
        a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
    };
    match f {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(name) => match sig.get(name) {
            Some(v) => (0..n as u64).map(|i| lasso.at(i).get(v)).collect(),
            None => vec![false; n],
        },
        Formula::Not(a) => eval(a, sig, lasso).into_iter().map(|x| !x).collect(),
        Formula::And(a, b) => pointwise(eval(a, sig, lasso), eval(b, sig, lasso), |x, y| x && y),
        Formula::Or(a, b) => pointwise(eval(a, sig, lasso), eval(b, sig, lasso), |x, y| x || y),
        Formula::Implies(a, b) => pointwise(eval(a, sig, lasso), eval(b, sig, lasso), |x, y| !x || y),
        Formula::Iff(a, b) => pointwise(eval(a, sig, lasso), eval(b, sig, lasso), |x, y| x == y),
        Formula::Next(a) => {
            let a = eval(a, sig, lasso);
            (0..n).map(|i| a[lasso.succ(i)]).collect()
        }
        Formula::Always(a) => fixpoint(lasso, &vec![false; n], &eval(a, sig, lasso), false),
        Formula::Eventually(a) => fixpoint(lasso, &vec![true; n], &eval(a, sig, lasso), true),
        Formula::Until(a, b) => fixpoint(lasso, &eval(a, sig, lasso), &eval(b, sig, lasso), true),
        Formula::Release(a, b) => fixpoint(lasso, &eval(a, sig, lasso), &eval(b, sig, lasso), false),
    }
}

/// `a U b` as a least fixpoint, `a R b` as a greatest one.
fn fixpoint(lasso: &Lasso, a: &[bool], b: &[bool], until: bool) -> Vec<bool> {
    let n = a.len();
    let mut v = if until { b.to_vec() } else { vec![true; n] };
    loop {
        let mut changed = false;
        for i in (0..n).rev() {
            let next = v[lasso.succ(i)];
            let x = if until { b[i] || (a[i] && next) } else { b[i] && (a[i] || next) };
            if x != v[i] {
                v[i] = x;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

/// Checks an SNF clause set directly, with one acceptance set per
/// eventuality `G(C ∨ F l)`: a pending bit is raised when `C` fails
/// without `l` and cleared when `l` holds.
pub fn check_snf(snf: &SnfClauseSet, opts: &CheckOptions) -> Result<Verdict, OracleError> {
    let sig_len = snf.signature.len();
    let mut used = vec![false; sig_len];
    for tc in &snf.clauses {
        let lits: Vec<&Literal> = match tc {
            TemporalClause::Initial(c) => c.iter().collect(),
            TemporalClause::Step { now, next } => now.iter().chain(next.iter()).collect(),
            TemporalClause::Eventuality { condition, target } => condition.iter().chain([target]).collect(),
        };
        for l in lits {
            used[l.var.index()] = true;
        }
    }
    let enc = Encoding::new(sig_len, &used, opts)?;
    let bits = enc.bits();
    let mut initial = Vec::new();
    let mut step = Vec::new();
    let mut events = Vec::new();
    for tc in &snf.clauses {
        match tc {
            TemporalClause::Initial(c) => initial.push(enc.flat(c)),
            TemporalClause::Step { now, next } => {
                let (now_pos, now_neg) = enc.flat(now);
                let (next_pos, next_neg) = enc.flat(next);
                step.push(MaskClause {
                    now_pos,
                    now_neg,
                    next_pos,
                    next_neg,
                });
            }
            TemporalClause::Eventuality { condition, target } => {
                let (p, n) = enc.flat(condition);
                events.push((p, n, enc.mask(target), target.positive));
            }
        }
    }
    if bits + events.len() > HARD_MAX_VARS {
        return Err(OracleError::SignatureTooLarge {
            used: bits + events.len(),
            max: HARD_MAX_VARS,
        });
    }
    let val_mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
    let update = |pending: u64, v: u64| -> u64 {
        let mut out = 0;
        for (i, &(p, n, t, positive)) in events.iter().enumerate() {
            let raised = pending >> i & 1 == 1 || !holds(v, p, n);
            let met = (v & t != 0) == positive;
            if raised && !met {
                out |= 1 << i;
            }
        }
        out
    };
    let roots: Vec<u64> = models(bits, &initial)
        .into_iter()
        .map(|v| v | update(0, v) << bits)
        .collect();
    let succ = |s: u64| -> Vec<u64> {
        let v = s & val_mask;
        let pending = s.checked_shr(bits as u32).unwrap_or(0);
        let residual: Vec<(u64, u64)> = step
            .iter()
            .filter(|m| !holds(v, m.now_pos, m.now_neg))
            .map(|m| (m.next_pos, m.next_neg))
            .collect();
        models(bits, &residual)
            .into_iter()
            .map(|w| w | update(pending, w) << bits)
            .collect()
    };
    let g = explore(roots, succ, opts)?;
    let sets: Vec<Box<dyn Fn(u64) -> bool + Sync>> = if events.is_empty() {
        vec![Box::new(|_| true)]
    } else {
        (0..events.len())
            .map(|i| Box::new(move |s: u64| (s >> bits) >> i & 1 == 0) as Box<dyn Fn(u64) -> bool + Sync>)
            .collect()
    };
    let refs: Vec<Accept<'_>> = sets.iter().map(|b| b.as_ref()).collect();
    Ok(match find_lasso(&g, &refs) {
        None => Verdict::Unsat,
        Some((stem, cycle)) => Verdict::Sat {
            params: ModelParams::new(stem.len() as u64, cycle.len() as u64),
            lasso: Lasso {
                stem: stem.into_iter().map(|s| enc.decode(s & val_mask)).collect(),
                cycle: cycle.into_iter().map(|s| enc.decode(s & val_mask)).collect(),
            },
        },
    })
}

/// Ground atoms are `(variable, time)` pairs; a literal's degree is read as
/// its absolute time.
pub type GroundModel = HashMap<(VarId, u32), bool>;

/// DPLL over ground clauses.
pub fn mini_sat(clauses: &[Vec<Literal>]) -> Option<GroundModel> {
    let mut atoms: HashMap<(VarId, u32), usize> = HashMap::new();
    let mut names = Vec::new();
    let cnf: Vec<Vec<(usize, bool)>> = clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|l| {
                    let key = (l.var, l.degree);
                    let a = *atoms.entry(key).or_insert_with(|| {
                        names.push(key);
                        names.len() - 1
                    });
                    (a, l.positive)
                })
                .collect()
        })
        .collect();
    let mut assign = vec![None; names.len()];
    if !dpll(&cnf, &mut assign) {
        return None;
    }
    Some(
        names
            .into_iter()
            .zip(assign)
            .map(|(k, v)| (k, v.unwrap_or(false)))
            .collect(),
    )
}

fn dpll(cnf: &[Vec<(usize, bool)>], assign: &mut Vec<Option<bool>>) -> bool {
    loop {
        let mut changed = false;
        for c in cnf {
            let mut open = None;
            let mut count = 0;
            let mut sat = false;
            for &(a, pol) in c {
                match assign[a] {
                    Some(v) if v == pol => {
                        sat = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        count += 1;
                        open = Some((a, pol));
                    }
                }
            }
            if sat {
                continue;
            }
            match (count, open) {
                (0, _) => return false,
                (1, Some((a, pol))) => {
                    assign[a] = Some(pol);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let branch = cnf.iter().find_map(|c| {
        if c.iter().any(|&(a, pol)| assign[a] == Some(pol)) {
            None
        } else {
            c.iter().find(|(a, _)| assign[*a].is_none()).map(|(a, _)| *a)
        }
    });
    let Some(x) = branch else {
        return true;
    };
    for val in [true, false] {
        let saved = assign.clone();
        assign[x] = Some(val);
        if dpll(cnf, assign) {
            return true;
        }
        *assign = saved;
    }
    false
}

/// Whether the ground premises entail the ground conclusion.
pub fn entails(premises: &[GroundClause], conclusion: &GroundClause) -> bool {
    let mut cnf: Vec<Vec<Literal>> = premises.iter().map(|g| g.absolute().collect()).collect();
    for lit in conclusion.absolute() {
        cnf.push(vec![lit.negated()]);
    }
    mini_sat(&cnf).is_none()
}
