//! LTL-specifications `(Σ, I, T, G)`.
//!
//! A specification stands for the formula
//! `⋀I ∧ G ⋀(C ∨ X D) ∧ G F ⋀G` where step clauses mix current-state literals
//! (degree 0) with next-state literals (degree 1). This module holds the
//! shared propositional vocabulary (signature, literals, clauses), the
//! reduction of SNF eventualities to a single goal, and the `.spec` text
//! format.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::snf::{SnfClauseSet, TemporalClause};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: literal `{literal}` has degree above 1")]
    DegreeTooHigh { line: usize, literal: String },
    #[error("line {line}: primed literal `{literal}` outside a step clause")]
    PrimedOutsideStep { line: usize, literal: String },
    #[error("duplicate variable `{0}` in signature")]
    DuplicateVariable(String),
    #[error("variable `{0}` is not in the signature")]
    UnknownVariable(String),
    #[error("malformed SNF input: {0}")]
    MalformedSnf(String),
    #[error("{0}")]
    Invalid(String),
}

/// Index of a variable in a [`Signature`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Whether a variable came from the user's formula or was introduced by a
/// normal-form translation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VarKind {
    Original,
    Auxiliary,
}

impl VarKind {
    /// Names starting with an underscore are reserved for generated variables.
    pub fn from_name(name: &str) -> Self {
        if name.starts_with('_') {
            VarKind::Auxiliary
        } else {
            VarKind::Original
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

/// Ordered list of named variables.
#[derive(Debug, Clone, Default)]
pub struct Signature {
    vars: Vec<Variable>,
    by_name: HashMap<String, VarId>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl Eq for Signature {}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn add(&mut self, name: &str, kind: VarKind) -> Result<VarId, SpecError> {
        if self.by_name.contains_key(name) {
            return Err(SpecError::DuplicateVariable(name.to_string()));
        }
        let id = VarId(self.vars.len() as u32);
        self.vars.push(Variable {
            name: name.to_string(),
            kind,
        });
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    /// Returns the existing variable of that name or adds a new one.
    pub fn intern(&mut self, name: &str, kind: VarKind) -> VarId {
        match self.by_name.get(name) {
            Some(&id) => id,
            None => self.add(name, kind).expect("name checked above"),
        }
    }

    /// Adds an auxiliary variable named `base`, or `base_<n>` for the
    /// smallest `n` that does not collide.
    pub fn fresh(&mut self, base: &str) -> VarId {
        if !self.by_name.contains_key(base) {
            return self.add(base, VarKind::Auxiliary).expect("unused name");
        }
        let mut n = 2usize;
        loop {
            let candidate = format!("{base}_{n}");
            if !self.by_name.contains_key(&candidate) {
                return self.add(&candidate, VarKind::Auxiliary).expect("unused name");
            }
            n += 1;
        }
    }

    pub fn get(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, var: VarId) -> &str {
        &self.vars[var.index()].name
    }

    pub fn kind(&self, var: VarId) -> VarKind {
        self.vars[var.index()].kind
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.vars.len() as u32).map(VarId)
    }

    pub fn count(&self, kind: VarKind) -> usize {
        self.vars.iter().filter(|v| v.kind == kind).count()
    }
}

/// A possibly primed literal. `degree` counts the primes: 0 is the current
/// state, 1 the next one, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: VarId,
    pub degree: u32,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: VarId, positive: bool, degree: u32) -> Self {
        Literal {
            var,
            degree,
            positive,
        }
    }

    pub fn pos(var: VarId) -> Self {
        Self::new(var, true, 0)
    }

    pub fn neg(var: VarId) -> Self {
        Self::new(var, false, 0)
    }

    pub fn primed(self) -> Self {
        self.shifted(1)
    }

    pub fn shifted(self, by: u32) -> Self {
        Literal {
            degree: self.degree + by,
            ..self
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            positive: !self.positive,
            ..self
        }
    }

    pub fn with_degree(self, degree: u32) -> Self {
        Literal { degree, ..self }
    }

    /// `-p''` style text.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        if !self.positive {
            out.push('-');
        }
        out.push_str(sig.name(self.var));
        for _ in 0..self.degree {
            out.push('\'');
        }
        out
    }
}

/// A disjunction of literals, kept sorted by `(variable, degree, polarity)`
/// and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Self {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        Clause { lits }
    }

    pub fn empty() -> Self {
        Clause { lits: Vec::new() }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Literal> {
        self.lits.iter()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.lits.binary_search(lit).is_ok()
    }

    /// Contains some variable and its negation at the same degree.
    pub fn is_tautology(&self) -> bool {
        self.lits
            .windows(2)
            .any(|w| w[0].var == w[1].var && w[0].degree == w[1].degree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.lits.iter().map(|l| l.degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.lits.iter().map(|l| l.degree).min()
    }

    pub fn shifted(&self, by: u32) -> Clause {
        // uniform shift keeps the order
        Clause {
            lits: self.lits.iter().map(|l| l.shifted(by)).collect(),
        }
    }

    /// Sorted-merge subset test.
    pub fn is_subset_of(&self, other: &Clause) -> bool {
        if self.lits.len() > other.lits.len() {
            return false;
        }
        let mut rest = other.lits.iter();
        'outer: for lit in &self.lits {
            for candidate in rest.by_ref() {
                match candidate.cmp(lit) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn without(&self, lit: &Literal) -> Clause {
        Clause {
            lits: self.lits.iter().filter(|l| *l != lit).copied().collect(),
        }
    }

    pub fn union(&self, other: &Clause) -> Clause {
        Clause::new(self.lits.iter().chain(other.lits.iter()).copied())
    }

    pub fn mentions(&self, var: VarId) -> bool {
        self.lits.iter().any(|l| l.var == var)
    }

    pub fn render(&self, sig: &Signature) -> String {
        if self.lits.is_empty() {
            return "FALSE".to_string();
        }
        self.lits
            .iter()
            .map(|l| l.render(sig))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Clause::new(iter)
    }
}

/// Parameters of a `(K, L)`-model: goal clauses must hold at every index
/// `offset + i * period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModelParams {
    pub offset: u64,
    pub period: u64,
}

impl ModelParams {
    /// # Panics
    /// If `period` is zero.
    pub fn new(offset: u64, period: u64) -> Self {
        assert!(period >= 1, "model period must be positive");
        ModelParams { offset, period }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Specification {
    pub signature: Signature,
    pub initial: Vec<Clause>,
    pub step: Vec<Clause>,
    pub goal: Vec<Clause>,
}

impl Specification {
    pub fn new(signature: Signature) -> Self {
        Specification {
            signature,
            ..Default::default()
        }
    }

    pub fn clause_count(&self) -> usize {
        self.initial.len() + self.step.len() + self.goal.len()
    }

    /// Checks the structural invariants: known variables, degree 0 in
    /// initial and goal clauses, degree at most 1 in step clauses.
    pub fn validate(&self) -> Result<(), SpecError> {
        let n = self.signature.len() as u32;
        let sections: [(&str, &[Clause], u32); 3] = [
            ("initial", &self.initial, 0),
            ("step", &self.step, 1),
            ("goal", &self.goal, 0),
        ];
        for (section, clauses, max_degree) in sections {
            for clause in clauses {
                for lit in clause.iter() {
                    if lit.var.0 >= n {
                        return Err(SpecError::UnknownVariable(format!("#{}", lit.var.0)));
                    }
                    if lit.degree > max_degree {
                        return Err(SpecError::Invalid(format!(
                            "{section} clause `{}` has a literal of degree {}",
                            clause.render(&self.signature),
                            lit.degree
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Variables that occur in at least one clause.
    pub fn used_variables(&self) -> Vec<bool> {
        let mut used = vec![false; self.signature.len()];
        for clause in self.initial.iter().chain(&self.step).chain(&self.goal) {
            for lit in clause.iter() {
                used[lit.var.index()] = true;
            }
        }
        used
    }

    /// Drops the variables for which `keep` is false and renumbers the rest.
    /// Clauses mentioning a dropped variable are an error.
    pub fn restrict_signature(&self, keep: impl Fn(VarId) -> bool) -> Result<Specification, SpecError> {
        let mut signature = Signature::new();
        let mut remap: Vec<Option<VarId>> = Vec::with_capacity(self.signature.len());
        for id in self.signature.ids() {
            if keep(id) {
                let var = &self.signature.variables()[id.index()];
                remap.push(Some(signature.add(&var.name, var.kind)?));
            } else {
                remap.push(None);
            }
        }
        let map_clauses = |clauses: &[Clause]| -> Result<Vec<Clause>, SpecError> {
            clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|l| match remap[l.var.index()] {
                            Some(var) => Ok(Literal { var, ..*l }),
                            None => Err(SpecError::Invalid(format!(
                                "variable `{}` is dropped but still occurs",
                                self.signature.name(l.var)
                            ))),
                        })
                        .collect::<Result<Clause, _>>()
                })
                .collect()
        };
        Ok(Specification {
            initial: map_clauses(&self.initial)?,
            step: map_clauses(&self.step)?,
            goal: map_clauses(&self.goal)?,
            signature,
        })
    }
}

/// Replaces the eventualities of an SNF clause set by goal clauses.
///
/// Zero eventualities give an empty goal set; a single unconditional
/// `G F l` becomes the goal `{l}`. Anything else is rewritten into one
/// goal variable `m` and five step clauses per eventuality
/// `G(C_i ∨ F l_i)`, using trackers `t_i` and `s_i`:
///
/// ```text
/// C_i | l_i | t_i      -t_i | l_i' | t_i'      s_i | -t_i | -s_i'
/// -s_i | -m            s_i | -m'
/// ```
pub fn from_snf(snf: &SnfClauseSet) -> Result<Specification, SpecError> {
    let mut signature = snf.signature.clone();
    let mut spec = Specification::default();
    let mut eventualities = Vec::new();
    let n = signature.len() as u32;
    let check = |c: &Clause| -> Result<(), SpecError> {
        match c.iter().find(|l| l.var.0 >= n || l.degree != 0) {
            Some(l) => Err(SpecError::MalformedSnf(format!(
                "literal on variable #{} with degree {}",
                l.var.0, l.degree
            ))),
            None => Ok(()),
        }
    };
    for clause in &snf.clauses {
        match clause {
            TemporalClause::Initial(c) => {
                check(c)?;
                spec.initial.push(c.clone());
            }
            TemporalClause::Step { now, next } => {
                check(now)?;
                check(next)?;
                if now.is_empty() && next.is_empty() {
                    return Err(SpecError::MalformedSnf("step clause without literals".into()));
                }
                spec.step.push(now.union(&next.shifted(1)));
            }
            TemporalClause::Eventuality { condition, target } => {
                check(condition)?;
                check(&Clause::new([*target]))?;
                eventualities.push((condition.clone(), *target));
            }
        }
    }

    match eventualities.as_slice() {
        [] => {}
        [(condition, target)] if condition.is_empty() => {
            spec.goal.push(Clause::new([*target]));
        }
        _ => {
            let m = signature.fresh("_m");
            spec.goal.push(Clause::new([Literal::pos(m)]));
            for (i, (condition, target)) in eventualities.iter().enumerate() {
                let t = signature.fresh(&format!("_t{}", i + 1));
                let s = signature.fresh(&format!("_s{}", i + 1));
                let l = *target;
                spec.step.push(condition.union(&Clause::new([l, Literal::pos(t)])));
                spec.step
                    .push(Clause::new([Literal::neg(t), l.primed(), Literal::pos(t).primed()]));
                spec.step
                    .push(Clause::new([Literal::pos(s), Literal::neg(t), Literal::neg(s).primed()]));
                spec.step.push(Clause::new([Literal::neg(s), Literal::neg(m)]));
                spec.step.push(Clause::new([Literal::pos(s), Literal::neg(m).primed()]));
            }
        }
    }
    spec.signature = signature;
    Ok(spec)
}

/// Counts reported by `stats`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SpecStats {
    pub variables: usize,
    pub original_variables: usize,
    pub auxiliary_variables: usize,
    pub initial_clauses: usize,
    pub step_clauses: usize,
    pub goal_clauses: usize,
    pub literals: usize,
}

impl SpecStats {
    pub fn clauses(&self) -> usize {
        self.initial_clauses + self.step_clauses + self.goal_clauses
    }
}

impl fmt::Display for SpecStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variables={}", self.variables)?;
        writeln!(f, "original_variables={}", self.original_variables)?;
        writeln!(f, "auxiliary_variables={}", self.auxiliary_variables)?;
        writeln!(f, "initial_clauses={}", self.initial_clauses)?;
        writeln!(f, "step_clauses={}", self.step_clauses)?;
        writeln!(f, "goal_clauses={}", self.goal_clauses)?;
        write!(f, "literals={}", self.literals)
    }
}

pub fn stats(spec: &Specification) -> SpecStats {
    let all = spec.initial.iter().chain(&spec.step).chain(&spec.goal);
    SpecStats {
        variables: spec.signature.len(),
        original_variables: spec.signature.count(VarKind::Original),
        auxiliary_variables: spec.signature.count(VarKind::Auxiliary),
        initial_clauses: spec.initial.len(),
        step_clauses: spec.step.len(),
        goal_clauses: spec.goal.len(),
        literals: all.map(Clause::len).sum(),
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Initial,
    Step,
    Goal,
}

/// Parses the line-oriented `.spec` format.
///
/// ```text
/// sig p q _u1
/// init: -p | q
/// step: p | -q'
/// goal: _u1
/// ```
///
/// Without a `sig` line the signature is the clause variables in order of
/// first appearance.
pub fn parse_spec(text: &str) -> Result<Specification, SpecError> {
    let mut declared: Option<Signature> = None;
    let mut inferred = Signature::new();
    let mut raw: Vec<(usize, Section, Vec<(String, bool, u32)>)> = Vec::new();

    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match full_line.find('#') {
            Some(pos) => &full_line[..pos],
            None => full_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line == "sig" || line.starts_with("sig ") || line.starts_with("sig\t") {
            if declared.is_some() {
                return Err(SpecError::Syntax {
                    line: line_no,
                    message: "duplicate `sig` line".into(),
                });
            }
            if !raw.is_empty() {
                return Err(SpecError::Syntax {
                    line: line_no,
                    message: "`sig` must precede all clauses".into(),
                });
            }
            let mut sig = Signature::new();
            for name in line[3..].split_whitespace() {
                if !valid_name(name) {
                    return Err(SpecError::Syntax {
                        line: line_no,
                        message: format!("invalid variable name `{name}`"),
                    });
                }
                sig.add(name, VarKind::from_name(name))?;
            }
            declared = Some(sig);
            continue;
        }
        let (section, body) = if let Some(rest) = line.strip_prefix("init:") {
            (Section::Initial, rest)
        } else if let Some(rest) = line.strip_prefix("step:") {
            (Section::Step, rest)
        } else if let Some(rest) = line.strip_prefix("goal:") {
            (Section::Goal, rest)
        } else {
            return Err(SpecError::Syntax {
                line: line_no,
                message: format!("expected `sig`, `init:`, `step:` or `goal:`, found `{line}`"),
            });
        };
        let body = body.trim();
        let mut lits = Vec::new();
        if body != "FALSE" {
            for token in body.split('|') {
                let token = token.trim();
                let (positive, rest) = match token.strip_prefix('-') {
                    Some(rest) => (false, rest.trim_start()),
                    None => (true, token),
                };
                let name = rest.trim_end_matches('\'');
                let degree = (rest.len() - name.len()) as u32;
                if !valid_name(name) {
                    return Err(SpecError::Syntax {
                        line: line_no,
                        message: format!("invalid literal `{token}`"),
                    });
                }
                if degree > 1 {
                    return Err(SpecError::DegreeTooHigh {
                        line: line_no,
                        literal: token.to_string(),
                    });
                }
                if degree == 1 && section != Section::Step {
                    return Err(SpecError::PrimedOutsideStep {
                        line: line_no,
                        literal: token.to_string(),
                    });
                }
                if declared.is_none() {
                    inferred.intern(name, VarKind::from_name(name));
                }
                lits.push((name.to_string(), positive, degree));
            }
        }
        raw.push((line_no, section, lits));
    }

    let signature = declared.unwrap_or(inferred);
    let mut spec = Specification::new(signature);
    for (_, section, lits) in raw {
        let clause = lits
            .into_iter()
            .map(|(name, positive, degree)| {
                spec.signature
                    .get(&name)
                    .map(|var| Literal::new(var, positive, degree))
                    .ok_or(SpecError::UnknownVariable(name))
            })
            .collect::<Result<Clause, _>>()?;
        match section {
            Section::Initial => spec.initial.push(clause),
            Section::Step => spec.step.push(clause),
            Section::Goal => spec.goal.push(clause),
        }
    }
    Ok(spec)
}

/// Canonical text; `parse_spec(&render_spec(s)) == s`.
pub fn render_spec(spec: &Specification) -> String {
    let mut out = String::from("sig");
    for var in spec.signature.variables() {
        out.push(' ');
        out.push_str(&var.name);
    }
    out.push('\n');
    let sections = [
        ("init", &spec.initial),
        ("step", &spec.step),
        ("goal", &spec.goal),
    ];
    for (keyword, clauses) in sections {
        for clause in clauses {
            out.push_str(keyword);
            out.push_str(": ");
            out.push_str(&clause.render(&spec.signature));
            out.push('\n');
        }
    }
    out
}
