use super::*;
use crate::arith::{build_clause_set, Goal, TheoryPreset};
use crate::kernel::{Quant, Signature, SymbolKind};
use crate::saturation::subsumes;

fn variant_sets_equal(a: &[Clause], b: &[Clause]) -> bool {
    a.len() == b.len()
        && a.iter().all(|c| b.iter().any(|d| subsumes(c, d) && subsumes(d, c)))
        && b.iter().all(|c| a.iter().any(|d| subsumes(c, d) && subsumes(d, c)))
}

fn comm() -> (Language, ArithSyms, Term, Term) {
    let p = build_clause_set(Goal::Comm, TheoryPreset::T).unwrap();
    let n = Term::constant(p.aliases["n"]);
    let m = Term::constant(p.aliases["m"]);
    (p.lang, p.syms, n, m)
}

fn x() -> Var {
    Var::named("x")
}

#[test]
fn first_induction_of_the_commutativity_refutation() {
    let (mut lang, a, _, m) = comm();
    let tx = Term::Var(x());
    let phi = Formula::eq(a.add(tx.clone(), m.clone()), a.add(m.clone(), tx.clone()));
    let clauses = ind_clauses(&mut lang, &a, &phi, x());
    let step = Formula::forall(
        x(),
        Formula::implies(
            phi.clone(),
            Formula::eq(a.add(a.s(tx.clone()), m.clone()), a.add(m.clone(), a.s(tx.clone()))),
        ),
    );
    let Formula::Quant(_, bx, body) = &step else { unreachable!() };
    let c = lang.skolem_term(Quant::Forall, *bx, body);
    assert!(c.args().is_empty());
    let v = Term::Var(Var::indexed(0));
    let base = Literal::neq(a.add(a.zero(), m.clone()), a.add(m.clone(), a.zero()));
    let expected = vec![
        Clause::new(vec![
            base.clone(),
            Literal::eq(a.add(c.clone(), m.clone()), a.add(m.clone(), c.clone())),
            Literal::eq(a.add(v.clone(), m.clone()), a.add(m.clone(), v.clone())),
        ]),
        Clause::new(vec![
            base,
            Literal::neq(a.add(a.s(c.clone()), m.clone()), a.add(m.clone(), a.s(c))),
            Literal::eq(a.add(v.clone(), m.clone()), a.add(m, v)),
        ]),
    ];
    assert!(variant_sets_equal(&clauses, &expected));
}

#[test]
fn axiom_closes_over_parameters() {
    let mut sig = Signature::new();
    let a = ArithSyms::declare(&mut sig).unwrap();
    let z = Var::named("z");
    let phi = Formula::eq(a.add(Term::Var(x()), Term::Var(z)), Term::Var(z));
    let ax = make_induction_axiom(&a, &phi, x());
    assert!(ax.is_sentence());
    assert!(matches!(ax, Formula::Quant(Quant::Forall, v, _) if v == z));
    let ground = Formula::eq(a.zero(), a.zero());
    let gx = make_induction_axiom(&a, &ground, x());
    assert_eq!(
        gx,
        Formula::implies(
            Formula::and(ground.clone(), Formula::forall(x(), Formula::implies(ground.clone(), ground.clone()))),
            Formula::forall(x(), ground)
        )
    );
}

#[test]
fn double_axiom_shape() {
    let mut sig = Signature::new();
    let a = ArithSyms::declare(&mut sig).unwrap();
    let (x, y, z) = (Var::named("x"), Var::named("y"), Var::named("z"));
    let g = Formula::eq(a.add(Term::Var(x), Term::Var(z)), Term::Var(y));
    let ax = make_double_induction_axiom(&a, &g, x, y).unwrap();
    assert!(matches!(ax, Formula::Quant(Quant::Forall, v, _) if v == z));
    assert!(ax.is_sentence());
    assert_eq!(make_double_induction_axiom(&a, &g, x, x), Err(InductionError::SameVariable));
}

#[test]
fn restricted_rule_checks_class_and_parameters() {
    let p = build_clause_set(Goal::Theta, TheoryPreset::T).unwrap();
    let (mut lang, a) = (p.lang, p.syms);
    let c = Term::constant(p.aliases["c"]);
    let z = Var::named("z1");
    let tx = Term::Var(x());
    let theta = Formula::implies(
        Formula::eq(a.add(Term::Var(z), tx.clone()), tx.clone()),
        Formula::eq(Term::Var(z), a.zero()),
    );
    let out = apply_ind_restricted(&mut lang, &a, GammaClass::Open, &theta, x(), &[z], &[c.clone()], true).unwrap();
    assert!(!out.is_empty());
    for conc in &out {
        assert!(conc.clause.syms().iter().all(|s| {
            let i = lang.sig.info(*s);
            !i.is_skolem() || i.arity == 0
        }));
    }
    let bad = apply_ind_restricted(&mut lang, &a, GammaClass::Literal, &theta, x(), &[z], &[c.clone()], true);
    assert!(matches!(bad, Err(InductionError::NotInGamma(..))));
    let nonground = apply_ind_restricted(&mut lang, &a, GammaClass::Open, &theta, x(), &[z], &[tx], true);
    assert!(matches!(nonground, Err(InductionError::NonGroundParameter(_))));
    // A Skolem constant inside the template is not Skolem-free.
    let with_c = theta.instantiate(z, &c);
    assert!(matches!(
        apply_ind_restricted(&mut lang, &a, GammaClass::Open, &with_c, x(), &[], &[], true),
        Err(InductionError::NotInGamma(..))
    ));
}

#[test]
fn lemma_rule_shapes() {
    let mut sig = Signature::new();
    let _ = ArithSyms::declare(&mut sig).unwrap();
    let pr = sig.add_predicate("q", 1).unwrap();
    let mut lang = Language::new(sig);
    let tx = Term::Var(x());
    let all = Formula::forall(x(), Formula::pred(pr, vec![tx.clone()]));
    let cs = lemma_clauses(&mut lang, &all);
    assert_eq!(cs.len(), 1);
    let c = &cs[0];
    assert_eq!(c.len(), 2);
    let d = c.literals().iter().find(|l| !l.positive).unwrap();
    assert!(d.is_ground());
    let ex = Formula::exists(x(), Formula::pred(pr, vec![tx.clone()]));
    let cs = lemma_clauses(&mut lang, &ex);
    assert_eq!(cs.len(), 1);
    assert!(cs[0].literals().iter().any(|l| l.positive && l.is_ground()));
    assert!(cs[0].literals().iter().any(|l| !l.positive && !l.is_ground()));
    let open = Formula::pred(pr, vec![lang.sig.lookup("0").map(Term::constant).unwrap()]);
    assert!(lemma_clauses(&mut lang, &open).is_empty());
}

#[test]
fn aind1_example_and_context() {
    let mut sig = Signature::new();
    let a = ArithSyms::declare(&mut sig).unwrap();
    let ca = sig.add_function("a", 0).unwrap();
    let cb = sig.add_function("b", 0).unwrap();
    let q = sig.add_predicate("q", 1).unwrap();
    let mut lang = Language::new(sig);
    let ta = Term::constant(ca);
    let sel = Literal::neq(a.add(ta.clone(), a.zero()), ta.clone());
    let premise = Clause::unit(sel.clone());
    let out = apply_aind1(&mut lang, &a, (7, &premise), 0, ca).unwrap();
    let clauses: Vec<Clause> = out.iter().map(|c| c.clause.clone()).collect();
    assert!(out.iter().all(|c| c.parents == vec![7]));
    let c = lang
        .sig
        .symbols()
        .find(|(_, i)| i.is_skolem() && i.kind == SymbolKind::Function)
        .map(|(s, _)| Term::constant(s))
        .unwrap();
    let z = a.zero();
    let base = Literal::neq(a.add(z.clone(), z.clone()), z.clone());
    let expected = vec![
        Clause::new(vec![base.clone(), Literal::eq(a.add(c.clone(), z.clone()), c.clone())]),
        Clause::new(vec![base, Literal::neq(a.add(a.s(c.clone()), z.clone()), a.s(c))]),
    ];
    assert!(variant_sets_equal(&clauses, &expected));

    let ctx = Literal::pos(Atom::Pred(q, vec![Term::constant(cb)]));
    let premise2 = Clause::new(vec![sel.clone(), ctx.clone()]);
    let idx = premise2.literals().iter().position(|l| l.is_equality()).unwrap();
    let out2 = apply_aind1(&mut lang, &a, (8, &premise2), idx, ca).unwrap();
    assert_eq!(out2.len(), 2);
    assert!(out2.iter().all(|c| c.clause.contains(&ctx)));

    let open = Clause::unit(Literal::neq(Term::Var(x()), ta));
    assert_eq!(
        apply_aind1(&mut lang, &a, (9, &open), 0, ca).unwrap_err(),
        InductionError::NonGroundLiteral
    );
}

#[test]
fn aind1_is_induction_resolved_against_premise() {
    let mut sig = Signature::new();
    let a = ArithSyms::declare(&mut sig).unwrap();
    let ca = sig.add_function("a", 0).unwrap();
    let mut lang = Language::new(sig);
    let ta = Term::constant(ca);
    let sel = Literal::neq(a.add(a.zero(), ta.clone()), ta.clone());
    let premise = Clause::unit(sel.clone());
    let out = apply_aind1(&mut lang, &a, (0, &premise), 0, ca).unwrap();
    let Inference::Induction(rec) = &out[0].inference else { panic!() };
    let l = rec.formula.clone();
    let analytic: Vec<Clause> = out.into_iter().map(|c| c.clause).collect();
    let ind = ind_clauses(&mut lang, &a, &l, x());
    let mut resolved = Vec::new();
    for c in &ind {
        for (i, lit) in c.literals().iter().enumerate() {
            for flip in [false, true] {
                if let Some(r) = crate::saturation::resolve_at(c, i, &premise, 0, flip) {
                    if !lit.is_ground() && !resolved.contains(&r.0) {
                        resolved.push(r.0);
                    }
                }
            }
        }
    }
    let p = lang.printer();
    assert!(
        variant_sets_equal(&analytic, &resolved),
        "{:?} vs {:?}",
        analytic.iter().map(|c| p.clause(c)).collect::<Vec<_>>(),
        resolved.iter().map(|c| p.clause(c)).collect::<Vec<_>>()
    );
}

#[test]
fn aind2_generalizes_one_occurrence() {
    let mut sig = Signature::new();
    let a = ArithSyms::declare(&mut sig).unwrap();
    let ca = sig.add_function("a", 0).unwrap();
    let mut lang = Language::new(sig);
    let ta = Term::constant(ca);
    let aa = a.add(ta.clone(), ta.clone());
    let sel = Literal::neq(a.add(ta.clone(), aa.clone()), a.add(aa.clone(), ta.clone()));
    let premise = Clause::unit(sel.clone());
    let out = apply_aind2(&mut lang, &a, (0, &premise), 0, ca, &[0]).unwrap();
    let Inference::Induction(rec) = &out[0].inference else { panic!() };
    let tx = Term::Var(x());
    assert_eq!(
        rec.formula,
        Formula::eq(a.add(tx.clone(), aa.clone()), a.add(aa, ta))
    );
    assert_eq!(
        apply_aind2(&mut lang, &a, (0, &premise), 0, ca, &[0, 1, 2, 3, 4, 5]).unwrap_err(),
        InductionError::NothingLeft
    );
    assert_eq!(
        apply_aind2(&mut lang, &a, (0, &premise), 0, ca, &[]).unwrap_err(),
        InductionError::NothingAbstracted
    );
}

#[test]
fn reapplication_is_identical() {
    let (mut lang, a, _, m) = comm();
    let tx = Term::Var(x());
    let phi = Formula::eq(a.add(tx.clone(), m.clone()), a.add(m, tx));
    let first = ind_clauses(&mut lang, &a, &phi, x());
    let n = lang.skolem.len();
    let second = ind_clauses(&mut lang, &a, &phi, x());
    assert_eq!(first, second);
    assert_eq!(lang.skolem.len(), n);
}

#[test]
fn hints_parse_print_and_alias() {
    let h = Hint::parse("induct (= (+ x m) (+ m x)) on x with (m) as c").unwrap();
    assert_eq!(h.to_string(), "induct (= (+ x m) (+ m x)) on x with (m) as c");
    assert_eq!(Hint::parse(&h.to_string()).unwrap(), h);
    let d = Hint::parse("double-induct (-> (= (* 2 x) (* 2 y)) (= x y)) on (x y) with ()").unwrap();
    assert_eq!(d.kind, HintKind::DoubleInduct { x: "x".into(), y: "y".into() });
    assert!(Hint::parse("induct (= x x) with ()").is_err());
    assert!(Hint::parse("frobnicate (= x x)").is_err());

    let (mut lang, a, _, _) = comm();
    let config = InductionConfig {
        rule: RuleKind::Ind,
        ..InductionConfig::default()
    };
    let hints = Hint::parse_file(
        "induct (= (+ x m) (+ m x)) on x with (m) as c\n; comment\n\ninduct (= (+ (s c) x) (s (+ c x))) on x with ()\n",
    )
    .unwrap();
    let out = apply_hints(&mut lang, &a, &config, &hints).unwrap();
    assert_eq!(out.len(), 4);
    assert!(lang.sig.lookup("c").is_some());
    let gamma_only = InductionConfig {
        rule: RuleKind::Aind2,
        ..InductionConfig::default()
    };
    assert!(matches!(
        apply_hints(&mut lang, &a, &gamma_only, &hints[..1]),
        Err(HintError::NotAllowed { .. })
    ));
}
