use super::*;
use crate::arith::Matrix;
use crate::ncalg::{build_au, Generator};

fn p(s: &str) -> NcPoly {
    NcPoly::parse(s).unwrap()
}

fn u(i: u16, j: u16) -> NcPoly {
    NcPoly::gen(Generator::entry("u", 0, i, j))
}

fn hyper2() -> Vec<NcPoly> {
    let mut rels = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            rels.push(&u(i, j) - &u(i, j).star());
        }
    }
    for i in 1..=2u16 {
        for j in 1..=2u16 {
            for k in 1..=2u16 {
                if j != k {
                    rels.push(&u(i, j) * &u(i, k));
                    rels.push(&u(j, i) * &u(k, i));
                }
            }
        }
        let row: NcPoly = (1..=2).map(|l| &u(i, l) * &u(i, l)).sum();
        let col: NcPoly = (1..=2).map(|l| &u(l, i) * &u(l, i)).sum();
        rels.push(&row - &NcPoly::one());
        rels.push(&col - &NcPoly::one());
    }
    rels
}

fn check_sound(
    sys: &RewriteSystem,
    sources: &[NcPoly],
    target: &NcPoly,
    cert: &MembershipCertificate,
) {
    audit(sys, sources).unwrap();
    let rules = sys.rules();
    let rest = replay(target, &cert.reduction_trace, |k| {
        rules.get(k).map(Rule::poly)
    })
    .unwrap();
    assert_eq!(rest, cert.normal_form);
}

#[test]
fn circle_is_confluent() {
    let rels = vec![p("u[0;1,1] u*[0;1,1] - 1"), p("u*[0;1,1] u[0;1,1] - 1")];
    let sys = complete(&rels, RewriteConfig::new(4)).unwrap();
    assert!(sys.is_complete());
    let leads: Vec<String> = sys
        .active_rules()
        .map(|(_, r)| r.lead.to_string())
        .collect();
    assert_eq!(leads, vec!["u[0;1,1] u*[0;1,1]", "u*[0;1,1] u[0;1,1]"]);
    for (_, r) in sys.active_rules() {
        assert_eq!(r.rhs, NcPoly::one());
    }
    audit(&sys, &rels).unwrap();
}

#[test]
fn hyperoctahedral_cube_rule() {
    let rels = hyper2();
    let sys = complete(&rels, RewriteConfig::new(6)).unwrap();
    assert!(sys.is_complete());
    audit(&sys, &rels).unwrap();
    for r in &rels {
        assert!(sys.reduce(r).unwrap().1.is_proven());
    }
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let t = &u(i, j).pow(3) - &u(i, j);
        let (nf, cert) = sys.reduce(&t).unwrap();
        assert!(nf.is_zero(), "{t} -> {nf}");
        check_sound(&sys, &rels, &t, &cert);
    }
    let cube = Word::from_letters(vec![Generator::entry("u", 0, 1, 1); 3]);
    let rule = sys.rule_for(&cube).expect("u11^3 is a rule lead");
    assert_eq!(rule.rhs, u(1, 1));
    // defining relations reduce to zero
    assert!(sys.reduce(&(&u(1, 1) * &u(1, 2))).unwrap().1.is_proven());
    let row = &(&(&u(1, 1) * &u(1, 1)) + &(&u(1, 2) * &u(1, 2))) - &NcPoly::one();
    assert!(sys.reduce(&row).unwrap().1.is_proven());
}

#[test]
fn permutation_projection_rule() {
    let v = |i: u16, j: u16| NcPoly::gen(Generator::entry("v", 0, i, j));
    let mut rels = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            rels.push(&v(i, j) - &v(i, j).star());
            rels.push(&(&v(i, j) * &v(i, j)) - &v(i, j));
        }
        rels.push(&(&v(i, 1) + &v(i, 2)) - &NcPoly::one());
        rels.push(&(&v(1, i) + &v(2, i)) - &NcPoly::one());
    }
    let sys = complete(&rels, RewriteConfig::new(4)).unwrap();
    assert!(sys.is_complete());
    let sq = Word::from_letters(vec![Generator::entry("v", 0, 1, 1); 2]);
    assert_eq!(sys.rule_for(&sq).unwrap().rhs, v(1, 1));
    for i in 1..=2 {
        for j in 1..=2 {
            let t = &(&v(i, j) * &v(i, j)) - &v(i, j);
            assert!(sys.reduce(&t).unwrap().1.is_proven());
        }
    }
}

#[test]
fn orthogonal_implies_unitary_twisted() {
    let au = build_au(&Matrix::identity(2), "u", 0).unwrap();
    let mut ao: Vec<NcPoly> = au.relations[..8].to_vec();
    for i in 1..=2 {
        for j in 1..=2 {
            ao.push(&u(i, j) - &u(i, j).star());
        }
    }
    let mut prover = Prover::new(&ao, RewriteConfig::new(4)).unwrap();
    for r in &au.relations {
        let cert = prover.prove(r).unwrap();
        assert!(cert.is_proven(), "{r}");
    }
    let sys = prover.into_system();
    audit(&sys, &ao).unwrap();
}

#[test]
fn hyper_powers_are_unitary() {
    // v(n)_jk = u_jk^r with r ∈ {1, 2}: vᵗ v̄ − I lies in the ideal
    let rels = hyper2();
    let mut prover = Prover::new(&rels, RewriteConfig::new(6)).unwrap();
    for r in [1u32, 2] {
        for i in 1..=2u16 {
            for j in 1..=2u16 {
                let t: NcPoly = (1..=2u16)
                    .map(|k| &u(k, i).pow(r) * &u(k, j).pow(r).star())
                    .sum();
                let t = if i == j { &t - &NcPoly::one() } else { t };
                let cert = prover.prove(&t).unwrap();
                assert!(cert.is_proven(), "r={r} ({i},{j})");
                let rules = prover.system().rules().to_vec();
                let rest =
                    replay(&t, &cert.reduction_trace, |k| rules.get(k).map(Rule::poly)).unwrap();
                assert!(rest.is_zero());
            }
        }
    }
}

#[test]
fn empty_source_is_inconclusive() {
    let cert = implies(&[], &p("u[0;1,1] u[0;1,2]"), RewriteConfig::new(4)).unwrap();
    assert_eq!(cert.status, Status::Inconclusive);
    assert!(cert.reduction_trace.is_empty());
}

#[test]
fn degree_bounds() {
    let rels = vec![p("u[0;1,1] u[0;1,1] u[0;1,1]")];
    assert!(matches!(
        complete(&rels, RewriteConfig::new(2)),
        Err(crate::Error::DegreeOverflow {
            degree: 3,
            bound: 2
        })
    ));
    let sys = complete(&[p("u[0;1,1] u*[0;1,1] - 1")], RewriteConfig::new(2)).unwrap();
    assert!(sys.reduce(&p("u[0;1,1] u[0;1,1] u[0;1,1]")).is_err());
}

#[test]
fn tensor_legs_reduce_separately() {
    let rels = vec![p("u[0;1,1] u*[0;1,1] - 1"), p("u*[0;1,1] u[0;1,1] - 1")];
    let sys = complete(&rels, RewriteConfig::new(4)).unwrap();
    let t = p("u[0;1,1]@1 u*[0;1,1]@1 u[0;1,1]@2 u*[0;1,1]@2 - 1");
    let (nf, cert) = sys.reduce(&t).unwrap();
    assert!(nf.is_zero());
    check_sound(&sys, &rels, &t, &cert);
    // letters of different legs never combine
    let t = p("u[0;1,1]@1 u*[0;1,1]@2 - 1");
    assert!(!sys.reduce(&t).unwrap().0.is_zero());
}

#[test]
fn completion_is_deterministic() {
    let a = complete(&hyper2(), RewriteConfig::new(6)).unwrap();
    let b = complete(&hyper2(), RewriteConfig::new(6)).unwrap();
    assert_eq!(a.rules(), b.rules());
    let t = p("u[0;1,1] u[0;2,2] u[0;1,1] u[0;2,2] - u[0;1,2] u[0;1,2]");
    assert_eq!(
        a.reduce(&t).unwrap().1.digest(),
        b.reduce(&t).unwrap().1.digest()
    );
}

#[test]
fn pass_cap_leaves_system_incomplete() {
    let cfg = RewriteConfig {
        max_degree: 6,
        max_passes: 5,
    };
    let sys = complete(&hyper2(), cfg).unwrap();
    assert!(!sys.is_complete());
    assert_eq!(sys.passes(), 5);
    audit(&sys, &hyper2()).unwrap();
}

#[test]
fn tampered_trace_fails_replay() {
    let rels = hyper2();
    let sys = complete(&rels, RewriteConfig::new(6)).unwrap();
    let t = &u(1, 1).pow(3) - &u(1, 1);
    let (_, mut cert) = sys.reduce(&t).unwrap();
    cert.reduction_trace[0].coeff = crate::Scalar::from_int(7);
    let rules = sys.rules();
    assert!(replay(&t, &cert.reduction_trace, |k| rules.get(k).map(Rule::poly)).is_err());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn hyper_word() -> impl Strategy<Value = NcPoly> {
        prop::collection::vec((1u16..=2, 1u16..=2, any::<bool>()), 0..=6).prop_map(|ls| {
            NcPoly::word(Word::from_letters(
                ls.into_iter()
                    .map(|(i, j, s)| {
                        let g = Generator::entry("u", 0, i, j);
                        if s {
                            g.star()
                        } else {
                            g
                        }
                    })
                    .collect(),
            ))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn normal_form_is_strategy_independent(
            a in hyper_word(), b in hyper_word(), c in -3i64..=3, seed in any::<u64>()
        ) {
            thread_local! {
                static SYS: RewriteSystem = complete(&hyper2(), RewriteConfig::new(6)).unwrap();
            }
            let x = &a + &b.scale(&crate::Scalar::from_int(c));
            SYS.with(|sys| {
                let (nf, cert) = sys.reduce(&x).unwrap();
                prop_assert_eq!(&sys.reduce_randomized(&x, seed), &nf);
                let rules = sys.rules();
                let rest = replay(&x, &cert.reduction_trace, |k| rules.get(k).map(Rule::poly)).unwrap();
                prop_assert_eq!(rest, nf);
                Ok(())
            })?;
        }
    }
}
