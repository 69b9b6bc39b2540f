//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use ltlvce::eliminate::{eliminate_var, simplify, simplify_specification, to_specification, Mode, SimplifyConfig};
use ltlvce::formula::{node_count, parse, to_nnf, Formula};
use ltlvce::labelled::{gcd, initial_set, drop_forgettable, Label, LabelledClause, LabelledClauseSet, Origin};
use ltlvce::oracle::{check, entails, verify_model, CheckOptions, Verdict};
use ltlvce::snf::{snf_transform, SnfClauseSet, SnfMode, TemporalClause};
use ltlvce::specification::{from_snf, Clause, Literal, ModelParams, Signature, Specification, VarId, VarKind};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn star(k: Option<u64>, l: u64) -> Label {
    Label::new(Origin::Any, k, l)
}

fn zero(k: Option<u64>, l: u64) -> Label {
    Label::new(Origin::Zero, k, l)
}

fn grid_labels() -> Vec<Label> {
    let mut out = Vec::new();
    for origin in [Origin::Any, Origin::Zero] {
        for k in std::iter::once(None).chain((0..=4).map(Some)) {
            for l in 0..=4 {
                out.push(Label::new(origin, k, l));
            }
        }
    }
    out
}

fn label_algebra() -> Outcome {
    let labels = grid_labels();
    let params: Vec<ModelParams> = (0..=5)
        .flat_map(|k| (1..=5).map(move |l| ModelParams::new(k, l)))
        .collect();
    let mut checks = 0u64;
    let mut violations = Vec::new();
    for a in &labels {
        if a.merge(a) != *a {
            violations.push(format!("{a} not idempotent"));
        }
        if a.merge(&Label::STEP) != *a || Label::STEP.merge(a) != *a {
            violations.push(format!("(*,*,0) not neutral for {a}"));
        }
        for b in &labels {
            let m = a.merge(b);
            if m != b.merge(a) {
                violations.push(format!("{a} ⋈ {b} not commutative"));
            }
            for mp in &params {
                for t in 0..=40 {
                    checks += 1;
                    if m.represents(*mp, t) != (a.represents(*mp, t) && b.represents(*mp, t)) {
                        violations.push(format!("{a} ⋈ {b} = {m} at K={} L={} t={t}", mp.offset, mp.period));
                    }
                }
            }
        }
    }
    ensure(violations.is_empty(), || {
        format!("{} violations, first: {}", violations.len(), violations[0])
    })?;
    Ok(format!("{} labels, {checks} membership checks", labels.len()))
}

fn goldens() -> Outcome {
    let p = VarId(0);
    let q = VarId(1);
    let r = VarId(2);
    let lc = |label: Label, lits: &[Literal]| LabelledClause::new(label, Clause::new(lits.iter().copied()));

    let m1 = star(Some(2), 0).merge(&star(Some(5), 0));
    ensure(m1 == star(Some(2), 3), || format!("(*,2,0) ⋈ (*,5,0) gave {m1}"))?;
    let m2 = star(Some(2), 3).merge(&zero(Some(1), 4));
    ensure(m2 == zero(Some(1), 1), || format!("(*,2,3) ⋈ (0,1,4) gave {m2}"))?;
    ensure(gcd(0, 0) == 0 && gcd(4, 0) == 4, || "gcd conventions".into())?;

    let c1 = lc(star(Some(1), 0), &[Literal::neg(p).primed(), Literal::pos(q).primed()]);
    let c2 = lc(Label::GOAL, &[Literal::pos(r), Literal::pos(p).primed()]);
    let res = c2.resolve(&c1, Literal::pos(p).primed()).map_err(|e| e.to_string())?;
    let want = lc(star(Some(0), 1), &[Literal::pos(r), Literal::pos(q).primed()]);
    ensure(!res.tautology && res.clause == want, || format!("resolvent {:?}", res.clause))?;

    let mixed_degrees: LabelledClauseSet = [
        lc(Label::INITIAL, &[Literal::pos(p), Literal::pos(q), Literal::pos(r)]),
        lc(Label::INITIAL, &[Literal::neg(p), Literal::neg(r)]),
        lc(Label::STEP, &[Literal::pos(r), Literal::neg(p).primed()]),
        lc(Label::GOAL, &[Literal::neg(p), Literal::pos(q)]),
    ]
    .into_iter()
    .collect();
    let mut sig = Signature::new();
    for n in ["p", "q", "r"] {
        sig.add(n, VarKind::Original).unwrap();
    }
    let extended = SimplifyConfig {
        mode: Mode::Extended,
        ..Default::default()
    };
    let out = eliminate_var(&mixed_degrees, p, &sig, &extended).map_err(|e| e.to_string())?;
    let want = vec![lc(zero(Some(0), 0), &[Literal::pos(q), Literal::pos(r)])];
    ensure(out.sorted() == want, || format!("mixed-degree elimination gave\n{}", out.dump(&sig)))?;

    let unit_q = lc(Label::STEP, &[Literal::pos(q)]);
    let d = lc(star(Some(1), 0), &[Literal::pos(p), Literal::pos(q).primed()]);
    ensure(unit_q.subsumes(&d), || "(*,*,0): q should subsume (*,1,0): p | q'".into())?;
    let unit_q1 = lc(Label::STEP, &[Literal::pos(q).primed()]);
    let d = lc(Label::STEP, &[Literal::pos(p), Literal::pos(q)]);
    ensure(!unit_q1.subsumes(&d), || "(*,*,0): q' must not subsume (*,*,0): p | q".into())?;

    let bottom: LabelledClauseSet = [lc(star(Some(0), 2), &[])].into_iter().collect();
    ensure(drop_forgettable(&bottom).is_empty(), || "(*,0,2): FALSE survived the filter".into())?;
    Ok("merge, resolution, mixed-degree elimination, subsumption, filter".into())
}

/// `(kind, [(name, positive, slot)])` with slot 0 for the current state,
/// 1 under `X` and 2 under `F`.
type Shape = (u8, Vec<(String, bool, u8)>);

fn snf_shapes(set: &SnfClauseSet) -> Vec<Shape> {
    let name = |l: &Literal| set.signature.name(l.var).trim_start_matches('_').to_string();
    let lits = |c: &Clause, slot: u8| -> Vec<(String, bool, u8)> { c.iter().map(|l| (name(l), l.positive, slot)).collect() };
    set.clauses
        .iter()
        .map(|tc| match tc {
            TemporalClause::Initial(c) => (0, lits(c, 0)),
            TemporalClause::Step { now, next } => {
                let mut v = lits(now, 0);
                v.extend(lits(next, 1));
                (1, v)
            }
            TemporalClause::Eventuality { condition, target } => {
                let mut v = lits(condition, 0);
                v.push((name(target), target.positive, 2));
                (2, v)
            }
        })
        .collect()
}

fn spec_shapes(spec: &Specification) -> Vec<Shape> {
    let lits = |c: &Clause| -> Vec<(String, bool, u8)> {
        c.iter()
            .map(|l| {
                let n = spec.signature.name(l.var).trim_start_matches('_').to_string();
                (n, l.positive, l.degree as u8)
            })
            .collect()
    };
    spec.initial
        .iter()
        .map(|c| (0, lits(c)))
        .chain(spec.step.iter().map(|c| (1, lits(c))))
        .chain(spec.goal.iter().map(|c| (3, lits(c))))
        .collect()
}

/// Parses `"1: -i | X u1 ; 2: -u1 | p"` style clause shapes.
fn shapes(text: &str) -> Vec<Shape> {
    text.split(';')
        .map(|c| {
            let (kind, body) = c.trim().split_once(':').unwrap();
            let lits = body
                .split('|')
                .map(|tok| {
                    let mut t = tok.trim();
                    let slot = if let Some(rest) = t.strip_prefix("X ") {
                        t = rest;
                        1
                    } else if let Some(rest) = t.strip_prefix("F ") {
                        t = rest;
                        2
                    } else {
                        0
                    };
                    let (positive, name) = match t.strip_prefix('-') {
                        Some(n) => (false, n),
                        None => (true, t),
                    };
                    (name.to_string(), positive, slot)
                })
                .collect();
            (kind.trim().parse().unwrap(), lits)
        })
        .collect()
}

/// Whether the clause lists agree up to a bijective renaming of the names
/// not listed in `fixed`.
fn isomorphic(expected: &[Shape], actual: &[Shape], fixed: &[&str]) -> bool {
    fn extend(
        e: &[(String, bool, u8)],
        a: &[(String, bool, u8)],
        fwd: &mut HashMap<String, String>,
        back: &mut HashMap<String, String>,
        fixed: &[&str],
    ) -> bool {
        // literal order within a clause is irrelevant
        fn go(
            i: usize,
            e: &[(String, bool, u8)],
            a: &[(String, bool, u8)],
            used: &mut Vec<bool>,
            fwd: &mut HashMap<String, String>,
            back: &mut HashMap<String, String>,
            fixed: &[&str],
        ) -> bool {
            if i == e.len() {
                return true;
            }
            for j in 0..a.len() {
                if used[j] || a[j].1 != e[i].1 || a[j].2 != e[i].2 {
                    continue;
                }
                let (en, an) = (&e[i].0, &a[j].0);
                if (fixed.contains(&en.as_str()) || fixed.contains(&an.as_str())) && en != an {
                    continue;
                }
                let known = fwd.get(en).cloned();
                if known.as_ref().is_some_and(|k| k != an) || back.get(an).is_some_and(|k| k != en) {
                    continue;
                }
                fwd.insert(en.clone(), an.clone());
                back.insert(an.clone(), en.clone());
                used[j] = true;
                if go(i + 1, e, a, used, fwd, back, fixed) {
                    return true;
                }
                used[j] = false;
                if known.is_none() {
                    fwd.remove(en);
                    back.remove(an);
                }
            }
            false
        }
        e.len() == a.len() && go(0, e, a, &mut vec![false; a.len()], fwd, back, fixed)
    }
    fn search(
        i: usize,
        expected: &[Shape],
        actual: &[Shape],
        used: &mut Vec<bool>,
        fwd: &HashMap<String, String>,
        back: &HashMap<String, String>,
        fixed: &[&str],
    ) -> bool {
        if i == expected.len() {
            return true;
        }
        for j in 0..actual.len() {
            if used[j] || actual[j].0 != expected[i].0 {
                continue;
            }
            let mut f = fwd.clone();
            let mut b = back.clone();
            if extend(&expected[i].1, &actual[j].1, &mut f, &mut b, fixed) {
                used[j] = true;
                if search(i + 1, expected, actual, used, &f, &b, fixed) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    expected.len() == actual.len()
        && search(0, expected, actual, &mut vec![false; actual.len()], &HashMap::new(), &HashMap::new(), fixed)
}

fn snf_goldens() -> Outcome {
    let f = parse("(F p & G (!p | X p)) & G F !p").map_err(|e| e.to_string())?;
    let set = snf_transform(&f, SnfMode::Naive).map_err(|e| e.to_string())?;
    let expected = shapes(
        "0: i ; 1: -i | F u1 ; 1: -u1 | p ; 1: -i | u2 ; 1: -u2 | X u2 ; 1: -u2 | u3 | v3 ; 1: -u3 | -p ; \
         1: -v3 | X u4 ; 1: -u4 | p ; 1: -i | u5 ; 1: -u5 | X u5 ; 1: -u5 | F u6 ; 1: -u6 | -p",
    );
    // eventualities are their own kind
    let expected: Vec<Shape> = expected
        .into_iter()
        .map(|(k, lits)| if lits.iter().any(|l| l.2 == 2) { (2, lits) } else { (k, lits) })
        .collect();
    let actual = snf_shapes(&set);
    ensure(set.clauses.len() == 13, || format!("{} clauses:\n{set}", set.clauses.len()))?;
    ensure(isomorphic(&expected, &actual, &["p"]), || format!("shape mismatch:\n{set}"))?;

    let mut sig = Signature::new();
    let mut v = |n: &str| sig.add(n, VarKind::Auxiliary).unwrap();
    let (i, u1, u5, u6) = (v("_i"), v("_u1"), v("_u5"), v("_u6"));
    let two = SnfClauseSet {
        signature: sig,
        clauses: vec![
            TemporalClause::Eventuality {
                condition: Clause::new([Literal::neg(i)]),
                target: Literal::pos(u1),
            },
            TemporalClause::Eventuality {
                condition: Clause::new([Literal::neg(u5)]),
                target: Literal::pos(u6),
            },
        ],
    };
    let spec = from_snf(&two).map_err(|e| e.to_string())?;
    let expected = shapes(
        "3: m ; \
         1: -i | u1 | t1 ; 1: -t1 | X u1 | X t1 ; 1: s1 | -t1 | X -s1 ; 1: -s1 | -m ; 1: s1 | X -m ; \
         1: -u5 | u6 | t2 ; 1: -t2 | X u6 | X t2 ; 1: s2 | -t2 | X -s2 ; 1: -s2 | -m ; 1: s2 | X -m",
    );
    ensure(spec.clause_count() == 11, || format!("{} clauses", spec.clause_count()))?;
    ensure(isomorphic(&expected, &spec_shapes(&spec), &["i", "u1", "u5", "u6"]), || {
        format!("shape mismatch:\n{}", ltlvce::render_spec(&spec))
    })?;
    Ok("13 SNF clauses and 11 specification clauses match".into())
}

fn translate(text: &str, negate: bool, mode: SnfMode) -> Result<Specification, String> {
    let mut f = parse(text).map_err(|e| e.to_string())?;
    if negate {
        f = Formula::not(f);
    }
    let snf = snf_transform(&to_nnf(&f), mode).map_err(|e| e.to_string())?;
    from_snf(&snf).map_err(|e| e.to_string())
}

fn end_to_end_unsat() -> Outcome {
    let conjecture = "(F p & G(p -> X p)) -> F G p";
    let opts = CheckOptions::default();
    let mut detail = Vec::new();
    for mode in [SnfMode::Optimized, SnfMode::Naive] {
        let spec = translate(conjecture, true, mode)?;
        let plain = check(&spec, &opts).map_err(|e| e.to_string())?;
        ensure(plain == Verdict::Unsat, || format!("{mode:?} without simplification: {plain}"))?;
        let (simple, report) = simplify_specification(&spec, &SimplifyConfig::default()).map_err(|e| e.to_string())?;
        let v = check(&simple, &opts).map_err(|e| e.to_string())?;
        ensure(v == Verdict::Unsat, || format!("{mode:?} with simplification: {v}"))?;
        ensure(report.variables_eliminated() >= 1 && simple.clause_count() < spec.clause_count(), || {
            format!("{mode:?}: simplification did nothing\n{report}")
        })?;
        detail.push(format!(
            "{mode:?} {}→{} clauses",
            spec.clause_count(),
            simple.clause_count()
        ));
    }
    Ok(format!("UNSAT with and without simplification ({})", detail.join(", ")))
}

const RANDOM_SPECS: u64 = 600;

fn satisfiability_preservation() -> Outcome {
    let start = Instant::now();
    let opts = CheckOptions::default();
    let cfg = SimplifyConfig::default();
    let (mut sat, mut eliminated, mut changed) = (0, 0, 0);
    for seed in 0..RANDOM_SPECS {
        let spec = common::random_spec(&mut common::rng(seed), 6, 20);
        let before = check(&spec, &opts).map_err(|e| e.to_string())?;
        let (simple, report) = simplify_specification(&spec, &cfg).map_err(|e| format!("seed {seed}: {e}"))?;
        let after = check(&simple, &opts).map_err(|e| e.to_string())?;
        ensure(before.is_sat() == after.is_sat(), || {
            format!(
                "seed {seed}: {before} before, {after} after\n{}\n--\n{}",
                ltlvce::render_spec(&spec),
                ltlvce::render_spec(&simple)
            )
        })?;
        for (s, v) in [(&spec, &before), (&simple, &after)] {
            if let Verdict::Sat { lasso, params } = v {
                ensure(verify_model(s, lasso, *params), || format!("seed {seed}: witness rejected"))?;
            }
        }
        sat += usize::from(before.is_sat());
        eliminated += report.variables_eliminated();
        changed += usize::from(!report.is_noop());
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{RANDOM_SPECS} specs, {sat} SAT, {changed} simplified, {eliminated} variables eliminated"
    ))
}

fn model_grid() -> Vec<ModelParams> {
    (0..=5).flat_map(|k| (1..=5).map(move |l| ModelParams::new(k, l))).collect()
}

const HORIZON: u64 = 30;

fn ground_soundness() -> Outcome {
    let mut rng = common::rng(7);
    let grid = model_grid();
    let (mut resolutions, mut subsumptions, mut strengthenings) = (0, 0, 0);
    let mut violations = Vec::new();
    let mut attempts = 0;
    while (resolutions < 250 || subsumptions < 250 || strengthenings < 100) && attempts < 100_000 {
        attempts += 1;
        let c = common::random_labelled(&mut rng, 3, 2);
        let mut d = common::random_labelled(&mut rng, 3, 2);

        // resolution, with an optional shift of the first premise
        let pivot = c.clause.literals()[0];
        let s = if c.label.origin == Origin::Any { rand::Rng::gen_range(&mut rng, 0..=1u32) } else { 0 };
        let cs = c.shift_by(s).expect("star labels shift");
        let pivot_s = pivot.shifted(s);
        d.clause = d.clause.union(&Clause::new([pivot_s.negated()]));
        let (pos, neg, lit) = if pivot_s.positive { (&cs, &d, pivot_s) } else { (&d, &cs, pivot_s.negated()) };
        if let Ok(res) = pos.resolve(neg, lit) {
            if !res.tautology {
                resolutions += 1;
                for mp in &grid {
                    for t in res.clause.label.indices_upto(*mp, HORIZON) {
                        let premises = [
                            c.ground_instances(*mp, HORIZON + 2).into_iter().find(|g| g.offset == t + s as u64),
                            d.ground_instances(*mp, HORIZON).into_iter().find(|g| g.offset == t),
                        ];
                        let conclusion = ltlvce::labelled::GroundClause {
                            clause: res.clause.clause.clone(),
                            offset: t,
                        };
                        match premises {
                            [Some(a), Some(b)] if entails(&[a.clone(), b.clone()], &conclusion) => {}
                            _ => violations.push(format!("resolvent {:?} at {t} under {mp:?}", res.clause)),
                        }
                    }
                }
            }
        }

        // subsumption: build a candidate from a shifted copy of c
        let extra = common::random_labelled(&mut rng, 3, 2);
        let s = rand::Rng::gen_range(&mut rng, 0..=2u32);
        if let Ok(shifted) = c.shift_by(s) {
            let label = if rand::Rng::gen_bool(&mut rng, 0.7) {
                shifted.label.merge(&extra.label)
            } else {
                extra.label
            };
            let target = LabelledClause::new(label, shifted.clause.union(&extra.clause));
            if c.subsumes(&target) {
                subsumptions += 1;
                for mp in &grid {
                    let instances = c.ground_instances(*mp, HORIZON + 4);
                    for g in target.ground_instances(*mp, HORIZON) {
                        let covered: Vec<Literal> = g.absolute().collect();
                        let ok = instances
                            .iter()
                            .any(|h| h.absolute().all(|l| covered.contains(&l)));
                        if !ok {
                            violations.push(format!("{c:?} does not cover {target:?} at {} under {mp:?}", g.offset));
                        }
                    }
                }
            }
            // strengthening: flip one literal of the candidate
            let mut flipped: Vec<Literal> = target.clause.literals().to_vec();
            if !flipped.is_empty() {
                let i = rand::Rng::gen_range(&mut rng, 0..flipped.len());
                flipped[i] = flipped[i].negated();
                let weaker = LabelledClause::new(target.label, Clause::new(flipped));
                if let Some(stronger) = c.strengthen(&weaker) {
                    strengthenings += 1;
                    for mp in &grid {
                        let instances = c.ground_instances(*mp, HORIZON + 4);
                        let own = weaker.ground_instances(*mp, HORIZON);
                        for g in stronger.ground_instances(*mp, HORIZON) {
                            let mut premises = instances.clone();
                            premises.extend(own.iter().filter(|o| o.offset == g.offset).cloned());
                            if !entails(&premises, &g) {
                                violations.push(format!("{stronger:?} at {} under {mp:?}", g.offset));
                            }
                        }
                    }
                }
            }
        }
    }
    ensure(violations.is_empty(), || {
        format!("{} violations, first: {}", violations.len(), violations[0])
    })?;
    ensure(resolutions + subsumptions >= 200, || format!("only {resolutions} + {subsumptions} instances"))?;
    Ok(format!(
        "{resolutions} resolutions, {subsumptions} subsumptions, {strengthenings} strengthenings replayed"
    ))
}

fn safe_mode_closure() -> Outcome {
    let allowed = [Label::INITIAL, Label::STEP, Label::GOAL];
    let extra = zero(Some(0), 0);
    let four = [Label::INITIAL, Label::STEP, Label::GOAL, extra];
    for a in four {
        for b in four {
            ensure(four.contains(&a.merge(&b)), || format!("{a} ⋈ {b} leaves the closure"))?;
        }
    }
    let cfg = SimplifyConfig::default();
    let mut clauses = 0;
    for seed in 0..RANDOM_SPECS {
        let spec = common::random_spec(&mut common::rng(seed), 6, 20);
        let (set, _) = simplify(&initial_set(&spec), &spec.signature, &cfg);
        for (_, lc) in set.iter() {
            ensure(allowed.contains(&lc.label), || format!("seed {seed}: label {}", lc.label))?;
        }
        clauses += set.len();
        to_specification(&set, &spec.signature).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok(format!("{RANDOM_SPECS} specs, {clauses} surviving clauses, all in the three labels"))
}

fn linear_size() -> Outcome {
    let mut count = 0u64;
    let mut worst = (0usize, 1usize);
    let mut failure = None;
    common::for_each_nnf(8, &["p", "q"], |f| {
        count += 1;
        let n = node_count(f);
        let clauses = snf_transform(f, SnfMode::Naive).expect("nnf").clauses.len();
        if clauses * worst.1 > worst.0 * n {
            worst = (clauses, n);
        }
        if clauses > 4 * n + 1 && failure.is_none() {
            failure = Some(format!("{f}: {clauses} clauses for {n} nodes"));
        }
    });
    if let Some(msg) = failure {
        return Err(msg);
    }
    Ok(format!(
        "{count} formulas up to 8 nodes, worst ratio {} clauses / {} nodes",
        worst.0, worst.1
    ))
}

fn pure_shrinkage() -> Outcome {
    let cfg = SimplifyConfig::default();
    let mut atoms = 0;
    let mut removed_clauses = 0;
    let mut check_one = |spec: &Specification, label: String| -> Result<(), String> {
        let originals: Vec<VarId> = spec
            .signature
            .ids()
            .filter(|v| spec.signature.kind(*v) == VarKind::Original)
            .filter(|v| spec.used_variables()[v.index()])
            .collect();
        let touching = spec
            .initial
            .iter()
            .chain(&spec.step)
            .chain(&spec.goal)
            .filter(|c| originals.iter().any(|v| c.mentions(*v)))
            .count();
        let (out, report) = simplify_specification(spec, &cfg).map_err(|e| e.to_string())?;
        let left: Vec<&str> = out
            .signature
            .ids()
            .filter(|v| out.signature.kind(*v) == VarKind::Original && out.used_variables()[v.index()])
            .map(|v| out.signature.name(v))
            .collect();
        ensure(left.is_empty(), || format!("{label}: {left:?} survive\n{report}"))?;
        ensure(report.eliminated_original <= originals.len(), || format!("{label}: report"))?;
        atoms += originals.len();
        removed_clauses += touching;
        Ok(())
    };
    let mut rng = common::rng(99);
    for i in 0..200 {
        let spec = common::pure_spec(&mut rng, 4, 3, 14);
        check_one(&spec, format!("spec {i}"))?;
    }
    for i in 0..200 {
        let nodes = rand::Rng::gen_range(&mut rng, 3..=12);
        let f = common::random_positive_nnf(&mut rng, nodes, &["a", "b", "c", "d"]);
        let snf = snf_transform(&f, SnfMode::Optimized).map_err(|e| e.to_string())?;
        let spec = from_snf(&snf).map_err(|e| e.to_string())?;
        check_one(&spec, format!("formula {i}: {f}"))?;
    }
    Ok(format!(
        "400 instances, {atoms} pure atoms and {removed_clauses} clauses containing them all gone"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("label algebra exhaustive grid", label_algebra),
        ("worked-example goldens", goldens),
        ("SNF and eventuality goldens", snf_goldens),
        ("end-to-end UNSAT", end_to_end_unsat),
        ("satisfiability preservation", satisfiability_preservation),
        ("ground soundness", ground_soundness),
        ("safe-mode closure", safe_mode_closure),
        ("linear-size bound", linear_size),
        ("pure-variable shrinkage", pure_shrinkage),
    ];
    let limits: HashMap<&str, Duration> = [
        ("label algebra exhaustive grid", Duration::from_secs(10)),
        ("satisfiability preservation", Duration::from_secs(120)),
    ]
    .into_iter()
    .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limits.get(name)) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{}] {name}: {reason} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
