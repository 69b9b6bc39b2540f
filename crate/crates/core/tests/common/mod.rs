#![allow(dead_code)]

use ltlvce::formula::Formula;
use ltlvce::labelled::{Label, LabelledClause, Origin};
use ltlvce::specification::{Clause, Literal, Signature, Specification, VarId, VarKind};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_literal(rng: &mut ChaCha8Rng, vars: usize, primed: bool) -> Literal {
    let var = VarId(rng.gen_range(0..vars) as u32);
    let degree = u32::from(primed && rng.gen_bool(0.5));
    Literal::new(var, rng.gen_bool(0.5), degree)
}

fn random_clause(rng: &mut ChaCha8Rng, vars: usize, primed: bool) -> Clause {
    let len = match rng.gen_range(0..100) {
        0 => 0,
        1..=25 => 1,
        26..=70 => 2,
        _ => 3,
    };
    Clause::new((0..len).map(|_| random_literal(rng, vars, primed)))
}

/// A random specification over at most `max_vars` variables with at most
/// `max_clauses` clauses. Roughly half of the variables are auxiliary.
pub fn random_spec(rng: &mut ChaCha8Rng, max_vars: usize, max_clauses: usize) -> Specification {
    let n = rng.gen_range(1..=max_vars);
    let mut sig = Signature::new();
    for i in 0..n {
        let name = if rng.gen_bool(0.5) {
            format!("_x{i}")
        } else {
            format!("v{i}")
        };
        sig.add(&name, VarKind::from_name(&name)).unwrap();
    }
    let mut spec = Specification::new(sig);
    for _ in 0..rng.gen_range(1..=max_clauses) {
        match rng.gen_range(0..10) {
            0..=1 => spec.initial.push(random_clause(rng, n, false)),
            2..=7 => spec.step.push(random_clause(rng, n, true)),
            _ => spec.goal.push(random_clause(rng, n, false)),
        }
    }
    spec
}

/// Every original variable occurs with one fixed polarity; auxiliary
/// variables occur freely.
pub fn pure_spec(rng: &mut ChaCha8Rng, originals: usize, auxiliaries: usize, clauses: usize) -> Specification {
    let mut sig = Signature::new();
    for i in 0..originals {
        sig.add(&format!("p{i}"), VarKind::Original).unwrap();
    }
    for i in 0..auxiliaries {
        sig.add(&format!("_a{i}"), VarKind::Auxiliary).unwrap();
    }
    let polarity: Vec<bool> = (0..originals).map(|_| rng.gen_bool(0.5)).collect();
    let total = originals + auxiliaries;
    let mut spec = Specification::new(sig);
    for _ in 0..clauses {
        let section = rng.gen_range(0..10);
        let primed = (2..=7).contains(&section);
        let len = rng.gen_range(1..=3);
        let lits = (0..len).map(|_| {
            let v = rng.gen_range(0..total);
            let degree = u32::from(primed && rng.gen_bool(0.5));
            let positive = if v < originals { polarity[v] } else { rng.gen_bool(0.5) };
            Literal::new(VarId(v as u32), positive, degree)
        });
        let clause = Clause::new(lits);
        match section {
            0..=1 => spec.initial.push(clause),
            2..=7 => spec.step.push(clause),
            _ => spec.goal.push(clause),
        }
    }
    spec
}

pub fn random_label(rng: &mut ChaCha8Rng) -> Label {
    let origin = if rng.gen_bool(0.3) { Origin::Zero } else { Origin::Any };
    let goal = if rng.gen_bool(0.4) { None } else { Some(rng.gen_range(0..=4)) };
    let period = if rng.gen_bool(0.6) { 0 } else { rng.gen_range(1..=4) };
    Label::new(origin, goal, period)
}

/// A random labelled clause over `vars` variables with degrees up to
/// `max_degree`.
pub fn random_labelled(rng: &mut ChaCha8Rng, vars: usize, max_degree: u32) -> LabelledClause {
    let len = rng.gen_range(1..=3);
    let clause = Clause::new((0..len).map(|_| {
        Literal::new(
            VarId(rng.gen_range(0..vars) as u32),
            rng.gen_bool(0.5),
            rng.gen_range(0..=max_degree),
        )
    }));
    LabelledClause::new(random_label(rng), clause)
}

const UNARY: [fn(Formula) -> Formula; 3] = [Formula::next, Formula::always, Formula::eventually];
const BINARY: [fn(Formula, Formula) -> Formula; 4] = [Formula::and, Formula::or, Formula::until, Formula::release];

/// A random formula with exactly `nodes` nodes (at least 1) over the given
/// atoms, using every connective.
pub fn random_formula(rng: &mut ChaCha8Rng, nodes: usize, atoms: &[&str]) -> Formula {
    if nodes <= 1 {
        return match rng.gen_range(0..12) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())]),
        };
    }
    if nodes == 2 || rng.gen_bool(0.45) {
        let inner = random_formula(rng, nodes - 1, atoms);
        return match rng.gen_range(0..4) {
            0 => Formula::not(inner),
            k => UNARY[k - 1](inner),
        };
    }
    let left = rng.gen_range(1..nodes - 1);
    let a = random_formula(rng, left, atoms);
    let b = random_formula(rng, nodes - 1 - left, atoms);
    match rng.gen_range(0..6) {
        4 => Formula::implies(a, b),
        5 => Formula::iff(a, b),
        k => BINARY[k](a, b),
    }
}

/// A random NNF formula whose atoms all occur positively.
pub fn random_positive_nnf(rng: &mut ChaCha8Rng, nodes: usize, atoms: &[&str]) -> Formula {
    if nodes <= 1 {
        return Formula::atom(atoms[rng.gen_range(0..atoms.len())]);
    }
    if nodes == 2 || rng.gen_bool(0.4) {
        return UNARY[rng.gen_range(0..3)](random_positive_nnf(rng, nodes - 1, atoms));
    }
    let left = rng.gen_range(1..nodes - 1);
    let a = random_positive_nnf(rng, left, atoms);
    let b = random_positive_nnf(rng, nodes - 1 - left, atoms);
    BINARY[rng.gen_range(0..4)](a, b)
}

/// Calls `visit` on every NNF formula over `atoms` with 1 to `max_nodes`
/// nodes. Constants are left out: NNF allows them only as the whole
/// formula. Formulas of the largest size are built one at a time.
pub fn for_each_nnf(max_nodes: usize, atoms: &[&str], mut visit: impl FnMut(&Formula)) {
    let mut table: Vec<Vec<Formula>> = vec![Vec::new(); max_nodes + 1];
    for n in 1..=max_nodes {
        let keep = n < max_nodes;
        let mut emit = |f: Formula, out: &mut Vec<Formula>| {
            visit(&f);
            if keep {
                out.push(f);
            }
        };
        let mut out = Vec::new();
        if n == 1 {
            for a in atoms {
                emit(Formula::atom(a), &mut out);
            }
        }
        if n == 2 {
            for a in atoms {
                emit(Formula::not(Formula::atom(a)), &mut out);
            }
        }
        if n >= 2 {
            for f in &table[n - 1] {
                for op in UNARY {
                    emit(op(f.clone()), &mut out);
                }
            }
        }
        for left in 1..n.saturating_sub(1) {
            let right = n - 1 - left;
            for a in &table[left] {
                for b in &table[right] {
                    for op in BINARY {
                        emit(op(a.clone(), b.clone()), &mut out);
                    }
                }
            }
        }
        table[n] = out;
    }
}
