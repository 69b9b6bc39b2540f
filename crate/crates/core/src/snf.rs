//! Separated Normal Form.
//!
//! An NNF formula `f` becomes `i ∧ τ[G(¬i ∨ f)]` for a fresh `i`, and `τ`
//! recursively splits `G(¬x ∨ φ)` by the outermost operator of `φ`:
//!
//! | φ        | emitted clauses                                    | recursion            |
//! |----------|----------------------------------------------------|----------------------|
//! | literal  | `G(¬x ∨ l)`                                        |                      |
//! | `a ∧ b`  |                                                    | `x→a`, `x→b`         |
//! | `a ∨ b`  | `G(¬x ∨ u ∨ v)`                                    | `u→a`, `v→b`         |
//! | `X a`    | `G(¬x ∨ X u)`                                      | `u→a`                |
//! | `G a`    | `G(¬x ∨ u)`, `G(¬u ∨ X u)`                         | `u→a`                |
//! | `F a`    | `G(¬x ∨ F u)`                                      | `u→a`                |
//! | `a U b`  | `G(¬x ∨ F v)`, `G(¬x ∨ v ∨ w)`, `G(¬w ∨ u)`, `G(¬w ∨ X v ∨ X w)` | `u→a`, `v→b` |
//! | `a R b`  | `G(¬x ∨ w)`, `G(¬w ∨ v)`, `G(¬w ∨ u ∨ X w)`        | `u→a`, `v→b`         |
//!
//! [`SnfMode::Naive`] applies the table verbatim. [`SnfMode::Optimized`]
//! uses literal arguments directly instead of naming them and flattens
//! nested disjunctions.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::specification::{Clause, Literal, Signature, VarId, VarKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SnfError {
    #[error("formula is not in negation normal form")]
    NotNnf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SnfMode {
    Naive,
    #[default]
    Optimized,
}

/// One temporal clause. All literals carry degree 0; `next` literals are
/// the ones under `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TemporalClause {
    /// Holds at time 0.
    Initial(Clause),
    /// `G(now ∨ X next)`.
    Step { now: Clause, next: Clause },
    /// `G(condition ∨ F target)`.
    Eventuality { condition: Clause, target: Literal },
}

impl TemporalClause {
    pub fn render(&self, sig: &Signature) -> String {
        let lits = |c: &Clause, prefix: &str| -> Vec<String> {
            c.iter().map(|l| format!("{prefix}{}", l.render(sig))).collect()
        };
        match self {
            TemporalClause::Initial(c) => c.render(sig),
            TemporalClause::Step { now, next } => {
                let mut parts = lits(now, "");
                parts.extend(lits(next, "X "));
                format!("G({})", parts.join(" | "))
            }
            TemporalClause::Eventuality { condition, target } => {
                let mut parts = lits(condition, "");
                parts.push(format!("F {}", target.render(sig)));
                format!("G({})", parts.join(" | "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SnfClauseSet {
    pub signature: Signature,
    pub clauses: Vec<TemporalClause>,
}

impl SnfClauseSet {
    pub fn eventualities(&self) -> impl Iterator<Item = (&Clause, &Literal)> {
        self.clauses.iter().filter_map(|c| match c {
            TemporalClause::Eventuality { condition, target } => Some((condition, target)),
            _ => None,
        })
    }
}

impl fmt::Display for SnfClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for clause in &self.clauses {
            writeln!(f, "{}", clause.render(&self.signature))?;
        }
        Ok(())
    }
}

/// Hands out `_u<n>`, `_v<n>`, `_w<n>` names. In naive mode the three names
/// of one rule application share an index, matching the textbook
/// presentation; in optimized mode every name takes a new index.
struct FreshVarGen {
    next_index: usize,
}

impl FreshVarGen {
    fn bump(&mut self) -> usize {
        self.next_index += 1;
        self.next_index
    }

    fn var(sig: &mut Signature, prefix: char, index: usize) -> VarId {
        sig.fresh(&format!("_{prefix}{index}"))
    }
}

struct Translator {
    mode: SnfMode,
    sig: Signature,
    gen: FreshVarGen,
    out: Vec<TemporalClause>,
}

fn step(now: impl IntoIterator<Item = Literal>, next: impl IntoIterator<Item = Literal>) -> TemporalClause {
    TemporalClause::Step {
        now: Clause::new(now),
        next: Clause::new(next),
    }
}

impl Translator {
    fn literal(&mut self, f: &Formula) -> Option<Literal> {
        match f {
            Formula::Atom(name) => Some(Literal::pos(self.sig.intern(name, VarKind::Original))),
            Formula::Not(inner) => match &**inner {
                Formula::Atom(name) => Some(Literal::neg(self.sig.intern(name, VarKind::Original))),
                _ => None,
            },
            _ => None,
        }
    }

    fn optimized(&self) -> bool {
        self.mode == SnfMode::Optimized
    }

    /// A literal standing for `f`: the literal itself when `f` is one and
    /// the mode allows it, otherwise a fresh name `u` with `τ[G(¬u ∨ f)]`
    /// queued in `pending`.
    fn name_for<'f>(
        &mut self,
        f: &'f Formula,
        prefix: char,
        index: usize,
        pending: &mut Vec<(VarId, &'f Formula)>,
    ) -> Literal {
        if self.optimized() {
            if let Some(lit) = self.literal(f) {
                return lit;
            }
        }
        let index = if self.optimized() { self.gen.bump() } else { index };
        let var = FreshVarGen::var(&mut self.sig, prefix, index);
        pending.push((var, f));
        Literal::pos(var)
    }

    /// τ[G(¬x ∨ f)]
    fn tau(&mut self, x: VarId, f: &Formula) {
        let not_x = Literal::neg(x);
        if let Some(lit) = self.literal(f) {
            self.out.push(step([not_x, lit], []));
            return;
        }
        let mut pending: Vec<(VarId, &Formula)> = Vec::new();
        match f {
            Formula::And(a, b) => {
                self.tau(x, a);
                self.tau(x, b);
            }
            Formula::Or(a, b) => {
                if self.optimized() {
                    let mut disjuncts = Vec::new();
                    flatten_or(f, &mut disjuncts);
                    let mut now = vec![not_x];
                    for d in disjuncts {
                        let lit = self.name_for(d, 'u', 0, &mut pending);
                        now.push(lit);
                    }
                    self.out.push(step(now, []));
                } else {
                    let n = self.gen.bump();
                    let u = self.name_for(a, 'u', n, &mut pending);
                    let v = self.name_for(b, 'v', n, &mut pending);
                    self.out.push(step([not_x, u, v], []));
                }
            }
            Formula::Next(a) => {
                let n = self.gen.bump();
                let u = self.name_for(a, 'u', n, &mut pending);
                self.out.push(step([not_x], [u]));
            }
            Formula::Always(a) => {
                let n = self.gen.bump();
                let u = FreshVarGen::var(&mut self.sig, 'u', n);
                self.out.push(step([not_x, Literal::pos(u)], []));
                self.out.push(step([Literal::neg(u)], [Literal::pos(u)]));
                pending.push((u, a));
            }
            Formula::Eventually(a) => {
                let n = self.gen.bump();
                let u = self.name_for(a, 'u', n, &mut pending);
                self.out.push(TemporalClause::Eventuality {
                    condition: Clause::new([not_x]),
                    target: u,
                });
            }
            Formula::Until(a, b) => {
                let n = self.gen.bump();
                let u = self.name_for(a, 'u', n, &mut pending);
                let v = self.name_for(b, 'v', n, &mut pending);
                let w = Literal::pos(FreshVarGen::var(&mut self.sig, 'w', n));
                self.out.push(TemporalClause::Eventuality {
                    condition: Clause::new([not_x]),
                    target: v,
                });
                self.out.push(step([not_x, v, w], []));
                self.out.push(step([w.negated(), u], []));
                self.out.push(step([w.negated()], [v, w]));
            }
            Formula::Release(a, b) => {
                let n = self.gen.bump();
                let u = self.name_for(a, 'u', n, &mut pending);
                let v = self.name_for(b, 'v', n, &mut pending);
                let w = Literal::pos(FreshVarGen::var(&mut self.sig, 'w', n));
                self.out.push(step([not_x, w], []));
                self.out.push(step([w.negated(), v], []));
                self.out.push(step([w.negated(), u], [w]));
            }
            Formula::True | Formula::False | Formula::Atom(_) | Formula::Not(_) | Formula::Implies(..) | Formula::Iff(..) => {
                unreachable!("checked by is_nnf")
            }
        }
        for (var, sub) in pending {
            self.tau(var, sub);
        }
    }
}

fn flatten_or<'f>(f: &'f Formula, out: &mut Vec<&'f Formula>) {
    match f {
        Formula::Or(a, b) => {
            flatten_or(a, out);
            flatten_or(b, out);
        }
        other => out.push(other),
    }
}

/// Translates an NNF formula into an equisatisfiable SNF clause set.
///
/// The signature lists the formula's atoms (original) followed by the fresh
/// variables (auxiliary) in creation order.
pub fn snf_transform(f: &Formula, mode: SnfMode) -> Result<SnfClauseSet, SnfError> {
    if !f.is_nnf() {
        return Err(SnfError::NotNnf);
    }
    let mut sig = Signature::new();
    for atom in f.atoms() {
        sig.intern(&atom, VarKind::Original);
    }
    match f {
        Formula::True => {
            return Ok(SnfClauseSet {
                signature: sig,
                clauses: Vec::new(),
            })
        }
        Formula::False => {
            return Ok(SnfClauseSet {
                signature: sig,
                clauses: vec![TemporalClause::Initial(Clause::empty())],
            })
        }
        _ => {}
    }
    let trigger = sig.fresh("_i");
    let mut tr = Translator {
        mode,
        sig,
        gen: FreshVarGen { next_index: 0 },
        out: vec![TemporalClause::Initial(Clause::new([Literal::pos(trigger)]))],
    };
    tr.tau(trigger, f);
    Ok(SnfClauseSet {
        signature: tr.sig,
        clauses: tr.out,
    })
}
