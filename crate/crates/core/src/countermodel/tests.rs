use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::arith::{build_preset, holds_nat, TheoryPreset};
use crate::kernel::{Signature, Subst};

fn setup() -> (ArithSyms, Var, Term) {
    let mut sig = Signature::new();
    let a = ArithSyms::declare(&mut sig).unwrap();
    let x = Var::named("x");
    (a, x, Term::Var(x))
}

fn env1(x: Var, e: MElem) -> MEnv {
    MEnv::from([(x, e)])
}

fn nat_env(x: Var, n: u64) -> BTreeMap<Var, u64> {
    BTreeMap::from([(x, n)])
}

fn theta_xx(a: &ArithSyms, tx: &Term) -> Formula {
    Formula::implies(
        Formula::eq(a.add(tx.clone(), tx.clone()), tx.clone()),
        Formula::eq(tx.clone(), a.zero()),
    )
}

#[test]
fn structure_operations() {
    let (a, x, tx) = setup();
    assert_eq!(MElem::int(0).add(&MElem::int(0)), MElem::int(0));
    assert_eq!(MElem::nat(0).pred(), MElem::nat(0));
    assert_eq!(MElem::int(0).pred(), MElem::int(-1));
    assert_eq!(MElem::int(-3).succ(), MElem::int(-2));
    assert!(MElem::new(false, -1).is_err());
    let e = eval_term_m(&a, &a.p(a.add(tx.clone(), a.numeral(2))), &env1(x, MElem::int(-5))).unwrap();
    assert_eq!(e, MElem::int(-4));
}

#[test]
fn theta_fails_at_the_nonstandard_zero() {
    let (a, x, tx) = setup();
    let th = theta_xx(&a, &tx);
    assert!(!eval_open_formula_m(&a, &th, &env1(x, MElem::int(0))).unwrap());
    assert!(eval_open_formula_m(&a, &Formula::eq(a.zero(), a.zero()), &MEnv::new()).unwrap());
    let y = Var::named("y");
    let ty = Term::Var(y);
    let a5 = Formula::eq(a.add(tx.clone(), a.s(ty.clone())), a.s(a.add(tx, ty)));
    let env = MEnv::from([(x, MElem::int(2)), (y, MElem::nat(3))]);
    assert!(eval_open_formula_m(&a, &a5, &env).unwrap());
}

#[test]
fn linear_profiles() {
    let (a, _, tx) = setup();
    let t = a.add(tx.clone(), a.s(a.add(tx.clone(), a.zero())));
    let l = linear_profile(&a, &t).unwrap();
    assert_eq!((l.coeff.clone(), l.offset.clone()), (2.into(), 1.into()));
    for n in 0..6 {
        let e = eval_term_m(&a, &t, &env1(Var::named("x"), MElem::int(n))).unwrap();
        assert_eq!(e.n(), &l.at(&n.into()));
    }
    let p = atom_profile(&a, &Atom::Eq(a.add(tx.clone(), tx.clone()), a.s(tx.clone()))).unwrap();
    assert_eq!(p.nat, Region::Point(1.into()));
    assert_eq!(p.int, Region::Point(1.into()));
    let p = atom_profile(&a, &Atom::Eq(tx.clone(), tx.clone())).unwrap();
    assert_eq!((p.nat, p.int), (Region::All, Region::All));
    assert_eq!(linear_profile(&a, &a.p(tx)), Err(CountermodelError::ContainsP));
}

#[test]
fn successor_shift() {
    let (a, x, tx) = setup();
    assert_eq!(shift_successor(&a, &tx).unwrap(), tx);
    assert_eq!(shift_successor(&a, &a.add(tx.clone(), a.numeral(1))).unwrap(), a.s(tx.clone()));
    assert_eq!(shift_successor(&a, &a.s(tx.clone())).unwrap(), a.s(tx.clone()));
    assert_eq!(shift_successor(&a, &a.zero()), Err(CountermodelError::Ground));
    let t = a.add(a.s(tx.clone()), a.add(tx.clone(), a.numeral(2)));
    let t1 = shift_successor(&a, &t).unwrap();
    let lhs = Subst::single(x, a.s(tx.clone())).apply(&t);
    for n in 0..=10 {
        assert_eq!(
            crate::arith::eval_nat(&a, &lhs, &nat_env(x, n)),
            crate::arith::eval_nat(&a, &a.s(t1.clone()), &nat_env(x, n))
        );
    }
}

#[test]
fn p_elimination_examples() {
    let (a, _, tx) = setup();
    assert_eq!(eliminate_p_term(&a, &a.p(tx.clone())).unwrap(), (1, tx.clone()));
    assert_eq!(eliminate_p_term(&a, &a.p(a.p(tx.clone()))).unwrap(), (2, tx.clone()));
    assert_eq!(eliminate_p_term(&a, &a.p(a.numeral(1))).unwrap(), (0, a.zero()));
    let f = Formula::eq(a.p(tx.clone()), a.zero());
    assert_eq!(eliminate_p_formula(&a, &f).unwrap(), (1, Formula::eq(tx.clone(), a.zero())));
    let g = Formula::eq(a.add(tx.clone(), a.zero()), tx.clone());
    assert_eq!(eliminate_p_formula(&a, &g).unwrap(), (0, g.clone()));
    let h = Formula::and(
        Formula::eq(a.p(tx.clone()), a.zero()),
        Formula::eq(a.p(a.p(tx.clone())), a.zero()),
    );
    let want = Formula::and(Formula::eq(a.s(tx.clone()), a.zero()), Formula::eq(tx, a.zero()));
    assert_eq!(eliminate_p_formula(&a, &h).unwrap(), (2, want));
}

#[test]
fn radii() {
    let (a, _, tx) = setup();
    let r = |at: Atom| atom_radius(&a, &at).unwrap();
    assert_eq!(r(Atom::Eq(a.add(tx.clone(), tx.clone()), a.s(tx.clone()))), 2);
    assert_eq!(r(Atom::Eq(tx.clone(), tx.clone())), 0);
    assert_eq!(r(Atom::Eq(tx.clone(), a.numeral(2))), 3);
}

#[test]
fn decisions() {
    let (a, _, tx) = setup();
    let a4 = Formula::eq(a.add(tx.clone(), a.zero()), tx.clone());
    assert_eq!(decide_open_universal_m(&a, &a4).unwrap(), Decision::Holds);
    assert_eq!(
        decide_open_universal_m(&a, &theta_xx(&a, &tx)).unwrap(),
        Decision::Counterexample(MElem::int(0))
    );
    let eq3 = Formula::eq(tx.clone(), a.numeral(3));
    assert_eq!(
        decide_open_universal_m(&a, &eq3).unwrap(),
        Decision::Counterexample(MElem::nat(0))
    );
}

#[test]
fn induction_axioms_hold() {
    let (a, _, tx) = setup();
    let a4 = Formula::eq(a.add(tx.clone(), a.zero()), tx.clone());
    assert!(check_induction_axiom_m(&a, &a4).unwrap().holds());
    let th = check_induction_axiom_m(&a, &theta_xx(&a, &tx)).unwrap();
    assert!(th.holds());
    assert!(!th.conclusion.holds());
}

#[test]
fn axiom_samples() {
    let mut sig = Signature::new();
    let a = ArithSyms::declare(&mut sig).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tb1 = build_preset(&a, TheoryPreset::TB1);
    let rep = sample_check_axioms_m(&a, &tb1, 1000, 50, &mut rng).unwrap();
    assert_eq!(rep.violations(), 0);
    let tp = build_preset(&a, TheoryPreset::TPrime);
    let rep = sample_check_axioms_m(&a, &tp, 1000, 50, &mut rng).unwrap();
    assert!(rep.get("B4").unwrap().violations > 0);
    assert_eq!(rep.violations(), rep.get("B4").unwrap().violations);
}

#[test]
fn b4_fails_at_the_listed_point() {
    let (a, x, tx) = setup();
    let (y, z) = (Var::named("y"), Var::named("z"));
    let (ty, tz) = (Term::Var(y), Term::Var(z));
    let b4 = Formula::implies(
        Formula::eq(a.add(tx.clone(), ty.clone()), a.add(tx, tz.clone())),
        Formula::eq(ty, tz),
    );
    let env = MEnv::from([(x, MElem::int(0)), (y, MElem::nat(0)), (z, MElem::int(0))]);
    assert!(!eval_open_formula_m(&a, &b4, &env).unwrap());
}

#[test]
fn linear_identity_on_generated_terms() {
    let (a, x, _) = setup();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let t = random_pfree_atom(&mut rng, &a, x, 8);
        let Atom::Eq(l, _) = t else { unreachable!() };
        if l.is_ground() || l.depth() > 4 {
            continue;
        }
        let lf = linear_profile(&a, &l).unwrap();
        for n in -10i64..=10 {
            for flag in [false, true] {
                let Ok(e) = MElem::new(flag, n) else { continue };
                let v = eval_term_m(&a, &l, &env1(x, e)).unwrap();
                assert_eq!(v, MElem::new(flag, lf.at(&BigInt::from(n))).unwrap());
            }
        }
    }
}

#[test]
fn p_elimination_identities() {
    let (a, x, tx) = setup();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let t = random_p_term(&mut rng, &a, x, 5);
        let (n, t1) = eliminate_p_term(&a, &t).unwrap();
        assert!(!t1.contains_sym(a.pred));
        let shifted = Subst::single(x, a.succ_pow(n, tx.clone())).apply(&t);
        for k in 0..=20 {
            let env = nat_env(x, k);
            assert_eq!(crate::arith::eval_nat(&a, &shifted, &env), crate::arith::eval_nat(&a, &t1, &env));
        }
        for k in -20i64..=20 {
            let env = env1(x, MElem::int(k));
            assert_eq!(eval_term_m(&a, &shifted, &env), eval_term_m(&a, &t1, &env));
        }
        let f = Formula::eq(t.clone(), random_p_term(&mut rng, &a, x, 3));
        let (m, f1) = eliminate_p_formula(&a, &f).unwrap();
        let fs = f.instantiate(x, &a.succ_pow(m, tx.clone()));
        for k in 0..=20 {
            assert_eq!(holds_nat(&a, &fs, &nat_env(x, k)), holds_nat(&a, &f1, &nat_env(x, k)));
        }
    }
}

#[test]
fn decision_agrees_with_sampling() {
    let (a, x, _) = setup();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let f = random_pfree_formula(&mut rng, &a, x, 7);
        let radius = f.atoms().iter().map(|at| atom_radius(&a, at).unwrap()).max().unwrap_or(0) as i64;
        let r = radius + 10;
        let mut first_bad = None;
        for e in (0..=r).map(|n| MElem::nat(n as u64)).chain((-r..=r).map(MElem::int)) {
            if !eval_open_formula_m(&a, &f, &env1(x, e.clone())).unwrap() {
                first_bad.get_or_insert(e);
            }
        }
        match decide_open_universal_m(&a, &f).unwrap() {
            Decision::Holds => assert!(first_bad.is_none(), "{f:?}"),
            Decision::Counterexample(e) => {
                assert!(e.n() <= &BigInt::from(r) && e.n() >= &BigInt::from(-r));
                assert!(!eval_open_formula_m(&a, &f, &env1(x, e)).unwrap());
                assert!(first_bad.is_some());
            }
        }
        assert!(check_induction_axiom_m(&a, &f).unwrap().holds(), "{f:?}");
    }
}
