//! Labelled clauses.
//!
//! For fixed model parameters `(K, L)` a specification is equivalent to an
//! infinite propositional problem over the copies `Σ, Σ', Σ'', ...` of the
//! signature. A label `(b, k, l)` finitely describes the set of time
//! indices `t` at which a clause `C` is instantiated as `C^(t)`:
//!
//! * `b = 0` restricts to `t = 0`,
//! * `k ≠ *` restricts to `t + k = K + s·L` for some `s ≥ 0`,
//! * the clause is present at all only when `L` divides `l`.
//!
//! Resolution, subsumption and strengthening on labelled clauses stand for
//! the same operations on every represented ground instance.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::specification::{Clause, Literal, ModelParams, Signature, Specification, VarId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("time shift is undefined for clauses anchored at time 0")]
    ShiftUndefined,
    #[error("pivot is not present with the required polarity")]
    PivotMissing,
}

/// First label component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    /// `*`: any time index.
    Any,
    /// `0`: only the first time index.
    Zero,
}

/// A label `(b, k, l)`; `goal_offset: None` is `k = *`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub origin: Origin,
    pub goal_offset: Option<u64>,
    pub period: u64,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Label {
    /// `(0,*,0)`, the label of initial clauses.
    pub const INITIAL: Label = Label::new(Origin::Zero, None, 0);
    /// `(*,*,0)`, the label of step clauses and the neutral element of merge.
    pub const STEP: Label = Label::new(Origin::Any, None, 0);
    /// `(*,0,0)`, the label of goal clauses.
    pub const GOAL: Label = Label::new(Origin::Any, Some(0), 0);

    pub const fn new(origin: Origin, goal_offset: Option<u64>, period: u64) -> Self {
        Label {
            origin,
            goal_offset,
            period,
        }
    }

    /// Whether index `t` is represented under `mp`.
    pub fn represents(&self, mp: ModelParams, t: u64) -> bool {
        if self.origin == Origin::Zero && t != 0 {
            return false;
        }
        if let Some(k) = self.goal_offset {
            let reached = t + k;
            if reached < mp.offset || !(reached - mp.offset).is_multiple_of(mp.period) {
                return false;
            }
        }
        self.period.is_multiple_of(mp.period)
    }

    /// All represented `t <= bound`, ascending.
    pub fn indices_upto(&self, mp: ModelParams, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&t| self.represents(mp, t)).collect()
    }

    /// Label whose represented set is the intersection of both operands'.
    pub fn merge(&self, other: &Label) -> Label {
        let origin = match (self.origin, other.origin) {
            (Origin::Any, b) | (b, Origin::Any) => b,
            _ => Origin::Zero,
        };
        let (goal_offset, period) = match (self.goal_offset, other.goal_offset) {
            (None, k) | (k, None) => (k, gcd(self.period, other.period)),
            (Some(k1), Some(k2)) => (Some(k1.min(k2)), gcd(gcd(self.period, other.period), k1.abs_diff(k2))),
        };
        Label {
            origin,
            goal_offset,
            period,
        }
    }

    /// Label of the clause moved one step into the future.
    pub fn shifted(&self) -> Result<Label, LabelError> {
        match self.origin {
            Origin::Zero => Err(LabelError::ShiftUndefined),
            Origin::Any => Ok(Label {
                goal_offset: self.goal_offset.map(|k| k + 1),
                ..*self
            }),
        }
    }

    /// Clauses with this label may be dropped once elimination is over:
    /// they are relevant only for finitely many `K` or a restricted `L`.
    pub fn is_forgettable(&self) -> bool {
        (self.origin == Origin::Zero && self.goal_offset.is_some()) || self.period != 0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match self.origin {
            Origin::Any => "*",
            Origin::Zero => "0",
        };
        match self.goal_offset {
            Some(k) => write!(f, "[{b},{k},{}]", self.period),
            None => write!(f, "[{b},*,{}]", self.period),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledClause {
    pub label: Label,
    pub clause: Clause,
}

/// `clause` moved `offset` signatures forward.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundClause {
    pub clause: Clause,
    pub offset: u64,
}

impl GroundClause {
    /// Literals with the offset folded into their degree.
    pub fn absolute(&self) -> impl Iterator<Item = Literal> + '_ {
        self.clause.iter().map(move |l| l.shifted(self.offset as u32))
    }
}

/// Outcome of [`LabelledClause::resolve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolvent {
    pub clause: LabelledClause,
    pub tautology: bool,
}

impl LabelledClause {
    pub fn new(label: Label, clause: Clause) -> Self {
        LabelledClause { label, clause }
    }

    pub fn render(&self, sig: &Signature) -> String {
        if self.clause.is_empty() {
            return format!("{} FALSE", self.label);
        }
        format!("{} {}", self.label, self.clause.render(sig))
    }

    /// Time shift: every literal gets one more prime.
    pub fn shift(&self) -> Result<LabelledClause, LabelError> {
        self.shift_by(1)
    }

    pub fn shift_by(&self, by: u32) -> Result<LabelledClause, LabelError> {
        if by == 0 {
            return Ok(self.clone());
        }
        let mut label = self.label;
        for _ in 0..by {
            label = label.shifted()?;
        }
        Ok(LabelledClause {
            label,
            clause: self.clause.shifted(by),
        })
    }

    /// Labelled resolution on `pivot`, which must occur positively in
    /// `self` and negatively (same degree) in `other`.
    pub fn resolve(&self, other: &LabelledClause, pivot: Literal) -> Result<Resolvent, LabelError> {
        let pos = Literal { positive: true, ..pivot };
        let neg = pos.negated();
        if !self.clause.contains(&pos) || !other.clause.contains(&neg) {
            return Err(LabelError::PivotMissing);
        }
        let clause = self.clause.without(&pos).union(&other.clause.without(&neg));
        let tautology = clause.is_tautology();
        Ok(Resolvent {
            clause: LabelledClause {
                label: self.label.merge(&other.label),
                clause,
            },
            tautology,
        })
    }

    /// Shift amounts worth trying when `self` (possibly shifted) is to be
    /// matched against `target`.
    fn candidate_shifts(&self, target: &LabelledClause) -> Vec<u32> {
        if self.label.origin == Origin::Zero {
            return vec![0];
        }
        match self.clause.literals().first() {
            Some(first) => {
                let mut shifts: Vec<u32> = target
                    .clause
                    .iter()
                    .filter(|l| l.var == first.var && l.degree >= first.degree)
                    .map(|l| l.degree - first.degree)
                    .collect();
                shifts.sort_unstable();
                shifts.dedup();
                shifts
            }
            // An empty clause only needs its label aligned with the target's.
            None => match (self.label.goal_offset, target.label.goal_offset) {
                (Some(k1), Some(k2)) if k2 > k1 => (0..=(k2 - k1) as u32).collect(),
                _ => vec![0],
            },
        }
    }

    /// Whether some shift of `self` subsumes `other`: its clause is a subset
    /// and merging its label into `other`'s leaves `other`'s label unchanged.
    pub fn subsumes(&self, other: &LabelledClause) -> bool {
        self.candidate_shifts(other).into_iter().any(|s| {
            let Ok(shifted) = self.shift_by(s) else {
                return false;
            };
            shifted.label.merge(&other.label) == other.label && shifted.clause.is_subset_of(&other.clause)
        })
    }

    /// Self-subsuming resolution: if some shift of `self` is `C ∨ l` with
    /// `C ⊆ other \ {¬l}`, `¬l ∈ other`, and the label condition of
    /// subsumption holds, returns `other` without `¬l`.
    pub fn strengthen(&self, other: &LabelledClause) -> Option<LabelledClause> {
        if self.clause.is_empty() {
            return None;
        }
        let mut shifts: Vec<u32> = if self.label.origin == Origin::Zero {
            vec![0]
        } else {
            let min = self.clause.min_degree().unwrap_or(0);
            let max = other.clause.max_degree().unwrap_or(0);
            (0..=max.saturating_sub(min)).collect()
        };
        shifts.dedup();
        for s in shifts {
            let Ok(shifted) = self.shift_by(s) else {
                continue;
            };
            if shifted.label.merge(&other.label) != other.label {
                continue;
            }
            for lit in shifted.clause.iter() {
                let complement = lit.negated();
                if !other.clause.contains(&complement) {
                    continue;
                }
                let rest = other.clause.without(&complement);
                if shifted.clause.without(lit).is_subset_of(&rest) {
                    return Some(LabelledClause {
                        label: other.label,
                        clause: rest,
                    });
                }
            }
        }
        None
    }

    /// `C^(t)` for every represented `t <= bound`.
    pub fn ground_instances(&self, mp: ModelParams, bound: u64) -> Vec<GroundClause> {
        self.label
            .indices_upto(mp, bound)
            .into_iter()
            .map(|offset| GroundClause {
                clause: self.clause.clone(),
                offset,
            })
            .collect()
    }
}

/// Identifier of a clause inside one [`LabelledClauseSet`]. Never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseId(pub usize);

/// Key of the occurrence index.
type OccKey = (VarId, bool, u32);

/// A set of labelled clauses with an occurrence index from
/// `(variable, polarity, degree)` to the clauses containing that literal.
#[derive(Debug, Clone, Default)]
pub struct LabelledClauseSet {
    slots: Vec<Option<LabelledClause>>,
    live: usize,
    lookup: HashMap<LabelledClause, ClauseId>,
    occurrences: BTreeMap<OccKey, BTreeSet<ClauseId>>,
    empties: BTreeSet<ClauseId>,
}

impl PartialEq for LabelledClauseSet {
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

impl LabelledClauseSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    /// Adds a clause unless an identical one is present.
    pub fn insert(&mut self, lc: LabelledClause) -> Option<ClauseId> {
        if self.lookup.contains_key(&lc) {
            return None;
        }
        let id = ClauseId(self.slots.len());
        for lit in lc.clause.iter() {
            self.occurrences
                .entry((lit.var, lit.positive, lit.degree))
                .or_default()
                .insert(id);
        }
        if lc.clause.is_empty() {
            self.empties.insert(id);
        }
        self.lookup.insert(lc.clone(), id);
        self.slots.push(Some(lc));
        self.live += 1;
        Some(id)
    }

    pub fn remove(&mut self, id: ClauseId) -> Option<LabelledClause> {
        let lc = self.slots.get_mut(id.0)?.take()?;
        for lit in lc.clause.iter() {
            let key = (lit.var, lit.positive, lit.degree);
            if let Some(ids) = self.occurrences.get_mut(&key) {
                ids.remove(&id);
                if ids.is_empty() {
                    self.occurrences.remove(&key);
                }
            }
        }
        self.empties.remove(&id);
        self.lookup.remove(&lc);
        self.live -= 1;
        Some(lc)
    }

    pub fn get(&self, id: ClauseId) -> Option<&LabelledClause> {
        self.slots.get(id.0).and_then(Option::as_ref)
    }

    pub fn contains(&self, lc: &LabelledClause) -> bool {
        self.lookup.contains_key(lc)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ClauseId, &LabelledClause)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, slot)| slot.as_ref().map(|lc| (ClauseId(i), lc)))
    }

    pub fn ids(&self) -> Vec<ClauseId> {
        self.iter().map(|(id, _)| id).collect()
    }

    /// Clauses containing exactly this literal.
    pub fn occurrences(&self, lit: Literal) -> impl Iterator<Item = ClauseId> + '_ {
        self.occurrences
            .get(&(lit.var, lit.positive, lit.degree))
            .into_iter()
            .flat_map(|ids| ids.iter().copied())
    }

    /// Clauses containing `var` with the given polarity at any degree.
    pub fn occurrences_any_degree(&self, var: VarId, positive: bool) -> BTreeSet<ClauseId> {
        self.occurrences
            .range((var, positive, 0)..=(var, positive, u32::MAX))
            .flat_map(|(_, ids)| ids.iter().copied())
            .collect()
    }

    /// Clauses mentioning `var` at all.
    pub fn clauses_with(&self, var: VarId) -> BTreeSet<ClauseId> {
        let mut ids = self.occurrences_any_degree(var, false);
        ids.extend(self.occurrences_any_degree(var, true));
        ids
    }

    pub fn empty_clauses(&self) -> impl Iterator<Item = ClauseId> + '_ {
        self.empties.iter().copied()
    }

    /// Variables with at least one occurrence, ascending.
    pub fn variables(&self) -> BTreeSet<VarId> {
        self.occurrences.keys().map(|(v, _, _)| *v).collect()
    }

    /// Recomputes the occurrence index from scratch and compares.
    pub fn index_is_consistent(&self) -> bool {
        let mut fresh: BTreeMap<OccKey, BTreeSet<ClauseId>> = BTreeMap::new();
        let mut empties = BTreeSet::new();
        for (id, lc) in self.iter() {
            for lit in lc.clause.iter() {
                fresh.entry((lit.var, lit.positive, lit.degree)).or_default().insert(id);
            }
            if lc.clause.is_empty() {
                empties.insert(id);
            }
        }
        fresh == self.occurrences
            && empties == self.empties
            && self.lookup.len() == self.live
            && self.iter().all(|(id, lc)| self.lookup.get(lc) == Some(&id))
    }

    /// Live clauses in canonical order.
    pub fn sorted(&self) -> Vec<LabelledClause> {
        let mut all: Vec<LabelledClause> = self.iter().map(|(_, lc)| lc.clone()).collect();
        all.sort();
        all
    }

    /// One clause per line as `[b,k,l] lit | lit`, in canonical order.
    pub fn dump(&self, sig: &Signature) -> String {
        let mut out = String::new();
        for lc in self.sorted() {
            out.push_str(&lc.render(sig));
            out.push('\n');
        }
        out
    }
}

impl FromIterator<LabelledClause> for LabelledClauseSet {
    fn from_iter<I: IntoIterator<Item = LabelledClause>>(iter: I) -> Self {
        let mut set = LabelledClauseSet::new();
        for lc in iter {
            set.insert(lc);
        }
        set
    }
}

/// Initial clauses get `(0,*,0)`, step clauses `(*,*,0)`, goal clauses
/// `(*,0,0)`.
pub fn initial_set(spec: &Specification) -> LabelledClauseSet {
    let with = |label: Label| move |c: &Clause| LabelledClause::new(label, c.clone());
    spec.initial
        .iter()
        .map(with(Label::INITIAL))
        .chain(spec.step.iter().map(with(Label::STEP)))
        .chain(spec.goal.iter().map(with(Label::GOAL)))
        .collect()
}

/// Drops every clause whose label has `b = 0, k ≠ *` or `l ≠ 0`.
/// Satisfiability over all `(K, L)` is unaffected.
pub fn drop_forgettable(set: &LabelledClauseSet) -> LabelledClauseSet {
    set.iter()
        .filter(|(_, lc)| !lc.label.is_forgettable())
        .map(|(_, lc)| lc.clone())
        .collect()
}
