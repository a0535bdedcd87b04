//! Property tests for kernel, Skolemization, clausification, saturation,
//! the countermodel and the problem format.

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use indsat::arith::{build_goal, build_preset, holds_nat, strip_universal_prefix, Goal, TheoryPreset};
use indsat::cli::Problem;
use indsat::clausify::clausify_universal;
use indsat::countermodel::{
    atom_radius, decide_open_universal_m, eval_open_formula_m, eval_term_m, linear_profile, random_pfree_formula,
    Decision, MElem, MEnv,
};
use indsat::kernel::notation::ArithSyms;
use indsat::kernel::semantics::Interpretation;
use indsat::kernel::{
    enumerate_ground_terms, unify_terms, Atom, Clause, Formula, Literal, Signature, Subst, Sym, Term, Var,
};
use indsat::saturation::{Config, Limits, Prover, ProverResult};
use indsat::skolem::Language;

/// `a b : 0`, `g : 1`, `f : 2`, `p : 1`, `q : 2`, declared in this order.
struct Fixture {
    sig: Signature,
    a: Sym,
    b: Sym,
    g: Sym,
    f: Sym,
    p: Sym,
    q: Sym,
}

fn fixture() -> Fixture {
    let mut sig = Signature::new();
    let a = sig.add_function("a", 0).unwrap();
    let b = sig.add_function("b", 0).unwrap();
    let g = sig.add_function("g", 1).unwrap();
    let f = sig.add_function("f", 2).unwrap();
    let p = sig.add_predicate("p", 1).unwrap();
    let q = sig.add_predicate("q", 2).unwrap();
    Fixture { sig, a, b, g, f, p, q }
}

fn var(i: u32) -> Var {
    Var::named(&format!("x{i}"))
}

fn term(binary: bool) -> impl Strategy<Value = Term> {
    let fx = fixture();
    let (a, b, g, f) = (fx.a, fx.b, fx.g, fx.f);
    let leaf = prop_oneof![
        (0..3u32).prop_map(|i| Term::Var(var(i))),
        Just(Term::constant(a)),
        Just(Term::constant(b)),
    ];
    leaf.prop_recursive(3, 12, 2, move |inner| {
        if binary {
            prop_oneof![
                inner.clone().prop_map(move |t| Term::unary(g, t)),
                (inner.clone(), inner).prop_map(move |(l, r)| Term::binary(f, l, r)),
            ]
            .boxed()
        } else {
            inner.prop_map(move |t| Term::unary(g, t)).boxed()
        }
    })
}

fn subst() -> impl Strategy<Value = Subst> {
    proptest::collection::btree_map(0..3u32, term(true), 0..3)
        .prop_map(|m| Subst::from_pairs(m.into_iter().map(|(i, t)| (var(i), t))))
}

fn atom(binary: bool) -> impl Strategy<Value = Atom> {
    let fx = fixture();
    let (p, q) = (fx.p, fx.q);
    prop_oneof![
        term(binary).prop_map(move |t| Atom::Pred(p, vec![t])),
        (term(binary), term(binary)).prop_map(move |(l, r)| Atom::Pred(q, vec![l, r])),
        (term(binary), term(binary)).prop_map(|(l, r)| Atom::Eq(l, r)),
    ]
}

fn open_formula() -> impl Strategy<Value = Formula> {
    atom(false).prop_map(Formula::atom).prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::implies(l, r)),
        ]
    })
}

/// A formula skeleton whose atoms refer to enclosing binders by position,
/// so it can be instantiated with different binder names.
#[derive(Clone, Debug)]
enum Shape {
    P(usize),
    Q(usize, usize),
    Not(Box<Shape>),
    And(Box<Shape>, Box<Shape>),
    Or(Box<Shape>, Box<Shape>),
    Quant(bool, Box<Shape>),
}

fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![(0..4usize).prop_map(Shape::P), (0..4usize, 0..4usize).prop_map(|(i, j)| Shape::Q(i, j))]
        .prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|s| Shape::Not(Box::new(s))),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Shape::And(Box::new(l), Box::new(r))),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Shape::Or(Box::new(l), Box::new(r))),
                (any::<bool>(), inner).prop_map(|(e, s)| Shape::Quant(e, Box::new(s))),
            ]
        })
}

fn build(fx: &Fixture, s: &Shape, prefix: &str, scope: &mut Vec<Var>) -> Formula {
    let arg = |k: usize, scope: &Vec<Var>| {
        if scope.is_empty() {
            Term::constant(fx.a)
        } else {
            Term::Var(scope[k % scope.len()])
        }
    };
    match s {
        Shape::P(i) => Formula::pred(fx.p, vec![arg(*i, scope)]),
        Shape::Q(i, j) => Formula::pred(fx.q, vec![arg(*i, scope), arg(*j, scope)]),
        Shape::Not(s) => Formula::not(build(fx, s, prefix, scope)),
        Shape::And(l, r) => Formula::and(build(fx, l, prefix, scope), build(fx, r, prefix, scope)),
        Shape::Or(l, r) => Formula::or(build(fx, l, prefix, scope), build(fx, r, prefix, scope)),
        Shape::Quant(exists, body) => {
            let v = Var::named(&format!("{prefix}{}", scope.len()));
            scope.push(v);
            let inner = build(fx, body, prefix, scope);
            scope.pop();
            if *exists {
                Formula::exists(v, inner)
            } else {
                Formula::forall(v, inner)
            }
        }
    }
}

fn arith() -> ArithSyms {
    ArithSyms::declare(&mut Signature::new()).unwrap()
}

/// `p`-free terms over `0, s, +` with at least one occurrence of `x`.
fn pfree_term(x: Var) -> impl Strategy<Value = Term> {
    let a = arith();
    let leaf = prop_oneof![Just(Term::Var(x)), Just(Term::constant(a.zero))];
    leaf.prop_recursive(4, 16, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(move |t| Term::unary(a.succ, t)),
            (inner.clone(), inner).prop_map(move |(l, r)| Term::binary(a.plus, l, r)),
        ]
    })
    .prop_filter("contains x", move |t| t.contains_var(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_sequential_application(t in term(true), s1 in subst(), s2 in subst()) {
        prop_assert_eq!(s1.compose(&s2).apply(&t), s2.apply(&s1.apply(&t)));
    }

    #[test]
    fn unifiers_unify(l in term(true), r in term(true)) {
        if let Some(s) = unify_terms(&l, &r) {
            prop_assert_eq!(s.apply(&l), s.apply(&r));
        }
    }

    #[test]
    fn ground_instances_unify(t in term(true), s in subst()) {
        let ground = Subst::from_pairs(
            t.vars().into_iter().map(|v| (v, s.get(v).filter(|u| u.is_ground()).cloned().unwrap_or(Term::constant(fixture().a)))),
        );
        let inst = ground.apply(&t);
        let u = unify_terms(&t, &inst);
        prop_assert!(u.is_some());
        prop_assert_eq!(u.unwrap().apply(&t), inst);
    }

    #[test]
    fn ground_enumeration_is_exact_and_monotone(consts in 1..3usize, unary in 0..3usize, binary in 0..2usize, depth in 0..3usize) {
        let mut sig = Signature::new();
        for (arity, n) in [(0, consts), (1, unary), (2, binary)] {
            for i in 0..n {
                sig.add_function(&format!("f{arity}_{i}"), arity).unwrap();
            }
        }
        let small = enumerate_ground_terms(&sig, depth);
        let large = enumerate_ground_terms(&sig, depth + 1);
        prop_assert!(small.iter().all(|t| large.contains(t)));
        prop_assert!(small.iter().all(|t| t.is_ground() && t.depth() <= depth));
        let count = |d: usize| {
            let mut c = consts;
            for _ in 0..d {
                c = consts + unary * c + binary * c * c;
            }
            c
        };
        prop_assert_eq!(small.len(), count(depth));
        let mut dedup = small.clone();
        dedup.sort_by_key(|t| format!("{t:?}"));
        dedup.dedup();
        prop_assert_eq!(dedup.len(), small.len());
    }

    #[test]
    fn alpha_normalization_is_canonical(s in shape()) {
        let fx = fixture();
        let f1 = build(&fx, &s, "x", &mut Vec::new());
        let f2 = build(&fx, &s, "y", &mut Vec::new());
        let n1 = f1.alpha_normalize();
        prop_assert_eq!(n1.alpha_normalize(), n1.clone());
        prop_assert_eq!(f2.alpha_normalize(), n1);
        prop_assert!(f1.alpha_eq(&f2));
    }

    #[test]
    fn skolemization_is_idempotent_and_alpha_invariant(s in shape()) {
        let fx = fixture();
        let f1 = build(&fx, &s, "x", &mut Vec::new());
        let f2 = build(&fx, &s, "y", &mut Vec::new());
        let mut lang = Language::new(fx.sig);
        let out = lang.sk_exists(&f1);
        let symbols = lang.skolem.len();
        prop_assert_eq!(lang.sk_exists(&out), out.clone());
        prop_assert!(lang.sk_exists(&f2).alpha_eq(&out));
        prop_assert_eq!(lang.skolem.len(), symbols);
    }

    #[test]
    fn clausification_preserves_truth(f in open_formula()) {
        let fx = fixture();
        let clauses = clausify_universal(&f).unwrap();
        let syms = [fx.a, fx.b, fx.g, fx.p, fx.q];
        for size in 1..=2 {
            let count = Interpretation::count(&fx.sig, &syms, size).unwrap();
            for i in 0..count {
                let m = Interpretation::from_index(&fx.sig, &syms, size, i);
                prop_assert_eq!(m.satisfies(&f), clauses.iter().all(|c| m.satisfies_clause(c)));
            }
        }
    }

    #[test]
    fn ground_unsat_sets_refute_deterministically(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (sig, clauses) = unsat_ground_set(&mut rng);
        let r1 = saturate_ground(sig.clone(), clauses.clone());
        let r2 = saturate_ground(sig, clauses);
        prop_assert!(r1.is_refuted());
        prop_assert_eq!(r1.steps, r2.steps);
    }

    #[test]
    fn pfree_terms_are_linear(t in pfree_term(Var::named("x")), flag in any::<bool>(), n in -10i64..=10) {
        let n = if flag { n } else { n.abs() };
        let a = arith();
        let x = Var::named("x");
        let lf = linear_profile(&a, &t).unwrap();
        let value = eval_term_m(&a, &t, &MEnv::from([(x, MElem::new(flag, n).unwrap())])).unwrap();
        prop_assert_eq!(value, MElem::new(flag, lf.at(&BigInt::from(n))).unwrap());
    }

    #[test]
    fn decision_agrees_with_sampling(seed in any::<u64>()) {
        let a = arith();
        let x = Var::named("x");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_pfree_formula(&mut rng, &a, x, 7);
        let radius = phi.atoms().iter().map(|at| atom_radius(&a, at).unwrap()).max().unwrap_or(0) as i64 + 10;
        let at = |e: MElem| eval_open_formula_m(&a, &phi, &MEnv::from([(x, e)])).unwrap();
        match decide_open_universal_m(&a, &phi).unwrap() {
            Decision::Holds => {
                for n in 0..=radius {
                    prop_assert!(at(MElem::nat(n as u64)));
                }
                for n in -radius..=radius {
                    prop_assert!(at(MElem::int(n)));
                }
            }
            Decision::Counterexample(e) => prop_assert!(!at(e)),
        }
    }

    #[test]
    fn presets_and_goals_hold_in_naturals(values in proptest::collection::vec(0u64..=50, 4)) {
        let a = arith();
        let mut sentences: Vec<Formula> = build_preset(&a, TheoryPreset::TPrime).axioms.into_iter().map(|(_, f)| f).collect();
        for g in [Goal::Comm, Goal::Theta, Goal::C(2), Goal::C(3), Goal::D(2, 1), Goal::D(3, 2)] {
            sentences.push(build_goal(&a, g).unwrap());
        }
        for s in &sentences {
            let (vars, body) = strip_universal_prefix(s);
            let env = vars.iter().copied().zip(values.iter().copied()).collect();
            prop_assert_eq!(holds_nat(&a, body, &env), Some(true), "{:?}", s);
        }
    }

    #[test]
    fn problems_round_trip(
        theory in proptest::option::of(0..3usize),
        goal in proptest::option::of(0..6usize),
        rule in proptest::option::of(0..6usize),
        gamma in proptest::option::of(0..5usize),
        depth in proptest::option::of(0..6usize),
        size in proptest::option::of(0..12usize),
        axioms in proptest::sample::subsequence(AXIOMS.to_vec(), 0..=AXIOMS.len()),
        hints in proptest::sample::subsequence(HINTS.to_vec(), 0..=HINTS.len()),
    ) {
        let mut text = String::from("fun h 1.\npred r 2.\n");
        let mut line = |s: String| text.push_str(&format!("{s}.\n"));
        if let Some(i) = theory {
            line(format!("theory {}", ["T", "Tprime", "TB1"][i]));
        }
        for ax in axioms {
            line(format!("axiom {ax}"));
        }
        if let Some(i) = goal {
            line(format!("goal {}", ["comm", "theta", "C 2", "C 3", "D 2 1", "(forall x (= (h x) x))"][i]));
        }
        if let Some(i) = rule {
            line(format!("rule {}", ["ind", "ind-gamma", "aind1", "aind2", "double", "none"][i]));
        }
        if let Some(i) = gamma {
            line(format!("gamma {}", ["literal", "eq", "open", "forall1pf", "any"][i]));
        }
        if let Some(n) = depth {
            line(format!("term-depth {n}"));
        }
        if let Some(n) = size {
            line(format!("formula-size {n}"));
        }
        for h in hints {
            line(format!("hint {h}"));
        }
        let p = Problem::parse(&text).unwrap();
        prop_assert_eq!(Problem::parse(&p.to_string()).unwrap(), p);
    }
}

const AXIOMS: [&str; 3] = [
    "(forall x (= (h (h x)) x))",
    "(forall x (forall y (-> (r x y) (r y x))))",
    "(exists x (not (= (s x) (h x))))",
];

const HINTS: [&str; 3] = [
    "induct (= (+ x m) (+ m x)) on x with (m) as c",
    "double-induct (-> (= (* 2 x) (* 2 y)) (= x y)) on (x y) with ()",
    "induct (-> (= (+ c x) x) (= c 0)) on x with (c)",
];

fn saturate_ground(sig: Signature, clauses: Vec<Clause>) -> ProverResult {
    let config = Config {
        limits: Limits {
            max_generated: 10_000,
            ..Limits::default()
        },
        ..Config::default()
    };
    Prover::new(Language::new(sig), config).run(clauses)
}

/// Ground clauses of at most three literals over two constants, redrawn
/// until a truth table over the ground atoms shows them unsatisfiable.
fn unsat_ground_set(rng: &mut ChaCha8Rng) -> (Signature, Vec<Clause>) {
    let fx = fixture();
    let (a, b) = (Term::constant(fx.a), Term::constant(fx.b));
    let atoms = [
        Atom::Pred(fx.p, vec![a.clone()]),
        Atom::Pred(fx.p, vec![b.clone()]),
        Atom::Pred(fx.q, vec![a.clone(), b.clone()]),
        Atom::Eq(a, b),
    ];
    loop {
        let raw: Vec<Vec<(usize, bool)>> = (0..rng.gen_range(4..=12))
            .map(|_| (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0..atoms.len()), rng.gen_bool(0.5))).collect())
            .collect();
        let sat = (0u32..1 << atoms.len()).any(|v| raw.iter().all(|c| c.iter().any(|&(i, pos)| (v >> i & 1 == 1) == pos)));
        if sat {
            continue;
        }
        let clauses = raw
            .iter()
            .map(|c| {
                Clause::new(
                    c.iter()
                        .map(|&(i, pos)| if pos { Literal::pos(atoms[i].clone()) } else { Literal::neg(atoms[i].clone()) })
                        .collect(),
                )
            })
            .collect();
        return (fx.sig, clauses);
    }
}
