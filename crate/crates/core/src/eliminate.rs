//! Variable and clause elimination over labelled clause sets.
//!
//! Eliminating `p` replaces the clauses mentioning it by all labelled
//! resolvents on `p`; the step is committed only when it does not grow the
//! set beyond the configured allowance. Eliminations alternate with
//! labelled subsumption and self-subsuming resolution until nothing
//! changes, and forgettable labels are dropped at the very end.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::par::{self, Execution};
use crate::labelled::{initial_set, drop_forgettable, ClauseId, Label, LabelledClause, LabelledClauseSet};
use crate::specification::{Clause, Signature, Specification, VarId, VarKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EliminateError {
    #[error("variable `{0}` cannot be eliminated from this clause set")]
    NotEliminable(String),
    #[error("labelled clause `{0}` has no counterpart in a specification")]
    NotRepresentable(String),
    #[error(transparent)]
    Spec(#[from] crate::specification::SpecError),
}

/// `Safe` never shifts clauses in time, so every resolvent stays inside the
/// specification fragment. `Extended` aligns differently primed
/// occurrences by shifting one premise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Mode {
    #[default]
    Safe,
    Extended,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplifyConfig {
    /// Clauses an elimination may add beyond the ones it removes.
    pub grow: usize,
    pub max_resolvent_len: Option<usize>,
    pub mode: Mode,
    /// Never eliminate variables of the input formula.
    pub protect_original: bool,
    pub rounds_limit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct EliminationReport {
    pub eliminated_original: usize,
    pub eliminated_auxiliary: usize,
    /// Names of the eliminated variables, in elimination order.
    pub eliminated: Vec<String>,
    #[serde(skip)]
    pub eliminated_ids: Vec<VarId>,
    pub clauses_before: usize,
    pub clauses_after: usize,
    pub tautologies_removed: usize,
    pub subsumed: usize,
    pub strengthened: usize,
    pub forgotten: usize,
    pub rounds: usize,
}

impl EliminationReport {
    pub fn variables_eliminated(&self) -> usize {
        self.eliminated_original + self.eliminated_auxiliary
    }

    pub fn is_noop(&self) -> bool {
        self.variables_eliminated() == 0
            && self.clauses_before == self.clauses_after
            && self.tautologies_removed == 0
            && self.subsumed == 0
            && self.strengthened == 0
            && self.forgotten == 0
    }
}

impl fmt::Display for EliminationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variables_eliminated={}", self.variables_eliminated())?;
        writeln!(f, "eliminated_original={}", self.eliminated_original)?;
        writeln!(f, "eliminated_auxiliary={}", self.eliminated_auxiliary)?;
        writeln!(f, "eliminated={}", self.eliminated.join(","))?;
        writeln!(f, "clauses_before={}", self.clauses_before)?;
        writeln!(f, "clauses_after={}", self.clauses_after)?;
        writeln!(f, "tautologies_removed={}", self.tautologies_removed)?;
        writeln!(f, "subsumed={}", self.subsumed)?;
        writeln!(f, "strengthened={}", self.strengthened)?;
        writeln!(f, "forgotten={}", self.forgotten)?;
        write!(f, "rounds={}", self.rounds)
    }
}

/// Whether `var` may be eliminated from `set`.
///
/// Pure variables always qualify. Otherwise no clause may contain `var`
/// twice, and in safe mode all occurrences must share one degree.
pub fn eliminable(set: &LabelledClauseSet, var: VarId, sig: &Signature, cfg: &SimplifyConfig) -> bool {
    if cfg.protect_original && sig.kind(var) == VarKind::Original {
        return false;
    }
    let positive = set.occurrences_any_degree(var, true);
    let negative = set.occurrences_any_degree(var, false);
    if positive.is_empty() || negative.is_empty() {
        return true;
    }
    let mut degree = None;
    for id in positive.iter().chain(&negative) {
        let lc = set.get(*id).expect("indexed clause is live");
        let mut hits = lc.clause.iter().filter(|l| l.var == var);
        let lit = hits.next().expect("indexed clause mentions var");
        if hits.next().is_some() {
            return false;
        }
        if cfg.mode == Mode::Safe {
            match degree {
                None => degree = Some(lit.degree),
                Some(d) if d != lit.degree => return false,
                _ => {}
            }
        }
    }
    true
}

struct Resolution {
    removed: Vec<ClauseId>,
    /// Distinct non-tautological resolvents.
    resolvents: Vec<LabelledClause>,
}

fn pivot_degree(lc: &LabelledClause, var: VarId) -> u32 {
    lc.clause.iter().find(|l| l.var == var).expect("clause mentions var").degree
}

/// All labelled resolvents on `var`, aligning degrees by a time shift of
/// the less primed premise. Pairs whose shift is undefined have no ground
/// counterpart and are skipped.
fn resolve_out(set: &LabelledClauseSet, var: VarId) -> Resolution {
    let positive: Vec<ClauseId> = set.occurrences_any_degree(var, true).into_iter().collect();
    let negative: Vec<ClauseId> = set.occurrences_any_degree(var, false).into_iter().collect();
    let mut seen = HashSet::new();
    let mut resolvents = Vec::new();
    for &pid in &positive {
        let c = set.get(pid).expect("live");
        let dc = pivot_degree(c, var);
        for &nid in &negative {
            let d = set.get(nid).expect("live");
            let dd = pivot_degree(d, var);
            let (c, d) = match dc.cmp(&dd) {
                std::cmp::Ordering::Equal => (c.clone(), d.clone()),
                std::cmp::Ordering::Less => match c.shift_by(dd - dc) {
                    Ok(shifted) => (shifted, d.clone()),
                    Err(_) => continue,
                },
                std::cmp::Ordering::Greater => match d.shift_by(dc - dd) {
                    Ok(shifted) => (c.clone(), shifted),
                    Err(_) => continue,
                },
            };
            let pivot = crate::specification::Literal::new(var, true, dc.max(dd));
            let res = c.resolve(&d, pivot).expect("pivot present after alignment");
            if !res.tautology && seen.insert(res.clause.clone()) {
                resolvents.push(res.clause);
            }
        }
    }
    let mut removed = positive;
    removed.extend(negative);
    Resolution { removed, resolvents }
}

/// `(N_p ⊗ N_¬p) ∪ N_0`, without any improvement test.
pub fn eliminate_var(
    set: &LabelledClauseSet,
    var: VarId,
    sig: &Signature,
    cfg: &SimplifyConfig,
) -> Result<LabelledClauseSet, EliminateError> {
    let unprotected = SimplifyConfig {
        protect_original: false,
        ..cfg.clone()
    };
    if !eliminable(set, var, sig, &unprotected) {
        return Err(EliminateError::NotEliminable(sig.name(var).to_string()));
    }
    let res = resolve_out(set, var);
    let mut out = set.clone();
    for id in res.removed {
        out.remove(id);
    }
    for lc in res.resolvents {
        out.insert(lc);
    }
    Ok(out)
}

pub fn is_improvement(before: usize, after: usize, cfg: &SimplifyConfig) -> bool {
    after <= before + cfg.grow
}

/// Whether a labelled clause maps to an initial, step or goal clause, or
/// will be dropped by the final label filter anyway.
fn representable(lc: &LabelledClause) -> bool {
    if lc.label.is_forgettable() {
        return true;
    }
    let max = lc.clause.max_degree().unwrap_or(0);
    match lc.label {
        Label::INITIAL | Label::GOAL => max == 0,
        Label::STEP => max <= 1,
        _ => false,
    }
}

fn subsumption_candidates(set: &LabelledClauseSet, target: &LabelledClause) -> BTreeSet<ClauseId> {
    let mut ids: BTreeSet<ClauseId> = set.empty_clauses().collect();
    for lit in target.clause.iter() {
        ids.extend(set.occurrences_any_degree(lit.var, lit.positive));
    }
    ids
}

fn find_subsumer(set: &LabelledClauseSet, target: &LabelledClause, exclude: &HashSet<ClauseId>) -> Option<ClauseId> {
    subsumption_candidates(set, target)
        .into_iter()
        .filter(|id| !exclude.contains(id))
        .find(|id| set.get(*id).is_some_and(|c| c.subsumes(target)))
}

fn find_strengthening(set: &LabelledClauseSet, target: &LabelledClause, own: ClauseId) -> Option<LabelledClause> {
    let mut ids = BTreeSet::new();
    for lit in target.clause.iter() {
        ids.extend(set.clauses_with(lit.var));
    }
    ids.into_iter()
        .filter(|id| *id != own)
        .find_map(|id| set.get(id).and_then(|c| c.strengthen(target)))
}

struct Simplifier<'a> {
    set: LabelledClauseSet,
    sig: &'a Signature,
    cfg: &'a SimplifyConfig,
    report: EliminationReport,
    eliminated: HashSet<VarId>,
}

impl Simplifier<'_> {
    fn touch(&self, lc: &LabelledClause, dirty: &mut BTreeSet<VarId>) {
        for lit in lc.clause.iter() {
            if !self.eliminated.contains(&lit.var) {
                dirty.insert(lit.var);
            }
        }
    }

    /// Forward and backward subsumption plus strengthening for every clause
    /// in `queue`, until the queue drains.
    fn reduce(&mut self, mut queue: VecDeque<ClauseId>, dirty: &mut BTreeSet<VarId>) {
        while let Some(id) = queue.pop_front() {
            let Some(c) = self.set.get(id).cloned() else {
                continue;
            };
            let own: HashSet<ClauseId> = [id].into_iter().collect();
            if find_subsumer(&self.set, &c, &own).is_some() {
                self.set.remove(id);
                self.report.subsumed += 1;
                self.touch(&c, dirty);
                continue;
            }
            if let Some(stronger) = find_strengthening(&self.set, &c, id) {
                self.set.remove(id);
                self.report.strengthened += 1;
                self.touch(&c, dirty);
                if let Some(nid) = self.set.insert(stronger) {
                    queue.push_back(nid);
                }
                continue;
            }
            let candidates: Vec<ClauseId> = match c.clause.literals().first() {
                Some(first) => self.set.clauses_with(first.var).into_iter().collect(),
                None => self.set.ids(),
            };
            for did in candidates {
                if did == id {
                    continue;
                }
                let Some(d) = self.set.get(did).cloned() else {
                    continue;
                };
                if c.subsumes(&d) {
                    self.set.remove(did);
                    self.report.subsumed += 1;
                    self.touch(&d, dirty);
                } else if let Some(stronger) = c.strengthen(&d) {
                    self.set.remove(did);
                    self.report.strengthened += 1;
                    self.touch(&d, dirty);
                    if let Some(nid) = self.set.insert(stronger) {
                        queue.push_back(nid);
                    }
                }
            }
        }
    }

    fn priority(&self, var: VarId) -> (bool, usize, usize, VarId) {
        let pos = self.set.occurrences_any_degree(var, true).len();
        let neg = self.set.occurrences_any_degree(var, false).len();
        (self.sig.kind(var) == VarKind::Original, pos + neg, pos * neg, var)
    }

    /// Tries to eliminate `var`; returns the ids of inserted clauses when
    /// the elimination was committed.
    fn try_eliminate(&mut self, var: VarId, dirty: &mut BTreeSet<VarId>) -> Option<Vec<ClauseId>> {
        if !eliminable(&self.set, var, self.sig, self.cfg) {
            return None;
        }
        let res = resolve_out(&self.set, var);
        if res.removed.is_empty() {
            return None;
        }
        if let Some(limit) = self.cfg.max_resolvent_len {
            if res.resolvents.iter().any(|r| r.clause.len() > limit) {
                return None;
            }
        }
        if !is_improvement(res.removed.len(), res.resolvents.len(), self.cfg) {
            return None;
        }
        // Resolvents outside the specification fragment are only acceptable
        // when something that stays in the set subsumes them.
        let removed: HashSet<ClauseId> = res.removed.iter().copied().collect();
        let mut keep = Vec::with_capacity(res.resolvents.len());
        for (i, r) in res.resolvents.iter().enumerate() {
            if representable(r) {
                keep.push(r.clone());
                continue;
            }
            let by_resolvent = res
                .resolvents
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && representable(other) && other.subsumes(r));
            if !by_resolvent && find_subsumer(&self.set, r, &removed).is_none() {
                return None;
            }
        }

        for id in &res.removed {
            let lc = self.set.remove(*id).expect("live");
            self.touch(&lc, dirty);
        }
        let mut inserted = Vec::new();
        for lc in keep {
            self.touch(&lc, dirty);
            if let Some(id) = self.set.insert(lc) {
                inserted.push(id);
            }
        }
        self.eliminated.insert(var);
        dirty.remove(&var);
        match self.sig.kind(var) {
            VarKind::Original => self.report.eliminated_original += 1,
            VarKind::Auxiliary => self.report.eliminated_auxiliary += 1,
        }
        self.report.eliminated.push(self.sig.name(var).to_string());
        self.report.eliminated_ids.push(var);
        Some(inserted)
    }

    fn run(mut self) -> (LabelledClauseSet, EliminationReport) {
        self.report.clauses_before = self.set.len();
        for (id, lc) in self.set.iter().map(|(id, lc)| (id, lc.clone())).collect::<Vec<_>>() {
            if lc.clause.is_tautology() {
                self.set.remove(id);
                self.report.tautologies_removed += 1;
            }
        }

        let mut dirty: BTreeSet<VarId> = BTreeSet::new();
        self.reduce(self.set.ids().into_iter().collect(), &mut dirty);
        let mut dirty: BTreeSet<VarId> = self.set.variables();
        while !dirty.is_empty() {
            if self.cfg.rounds_limit.is_some_and(|limit| self.report.rounds >= limit) {
                break;
            }
            self.report.rounds += 1;
            let mut order: Vec<VarId> = std::mem::take(&mut dirty).into_iter().collect();
            order.sort_by_key(|v| self.priority(*v));
            for var in order {
                if self.eliminated.contains(&var) {
                    continue;
                }
                if let Some(inserted) = self.try_eliminate(var, &mut dirty) {
                    self.reduce(inserted.into_iter().collect(), &mut dirty);
                }
            }
        }

        let before_filter = self.set.len();
        let filtered = drop_forgettable(&self.set);
        self.report.forgotten = before_filter - filtered.len();
        self.report.clauses_after = filtered.len();
        (filtered, self.report)
    }
}

/// Saturates `set` under subsumption, strengthening and improving
/// eliminations, then applies the label filter.
pub fn simplify(
    set: &LabelledClauseSet,
    sig: &Signature,
    cfg: &SimplifyConfig,
) -> (LabelledClauseSet, EliminationReport) {
    Simplifier {
        set: set.clone(),
        sig,
        cfg,
        report: EliminationReport::default(),
        eliminated: HashSet::new(),
    }
    .run()
}

/// Reads a filtered set back as a specification over `sig`.
pub fn to_specification(set: &LabelledClauseSet, sig: &Signature) -> Result<Specification, EliminateError> {
    let mut spec = Specification::new(sig.clone());
    for (_, lc) in set.iter() {
        let max = lc.clause.max_degree().unwrap_or(0);
        let target: &mut Vec<Clause> = match lc.label {
            Label::INITIAL if max == 0 => &mut spec.initial,
            Label::STEP if max <= 1 => &mut spec.step,
            Label::GOAL if max == 0 => &mut spec.goal,
            _ => return Err(EliminateError::NotRepresentable(lc.render(sig))),
        };
        target.push(lc.clause.clone());
    }
    Ok(spec)
}

/// The whole preprocessing pipeline on a specification. Eliminated
/// variables are dropped from the signature.
pub fn simplify_specification(
    spec: &Specification,
    cfg: &SimplifyConfig,
) -> Result<(Specification, EliminationReport), EliminateError> {
    let (set, report) = simplify(&initial_set(spec), &spec.signature, cfg);
    let out = to_specification(&set, &spec.signature)?;
    let gone: HashSet<VarId> = report.eliminated_ids.iter().copied().collect();
    let out = out.restrict_signature(|v| !gone.contains(&v))?;
    Ok((out, report))
}

/// [`simplify_specification`] over many inputs, in parallel when asked.
pub fn simplify_batch(
    specs: &[Specification],
    cfg: &SimplifyConfig,
    exec: Execution,
) -> Vec<Result<(Specification, EliminationReport), EliminateError>> {
    par::map(exec, specs, |s| simplify_specification(s, cfg))
}
