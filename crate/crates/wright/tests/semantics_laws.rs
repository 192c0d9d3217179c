mod common;

use std::collections::{BTreeSet, HashSet};

use common::gen::guarded;
use common::laws::*;
use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wright::{
    alphabet, augment, build_lts, determinize, fd_model, hide, interleave, parallel, parse_process, project, Env,
    Label, Lts, ProcessExpr, Sync,
};

#[test]
fn projection_of_the_worked_trace() {
    let p = project(&linear("acadbcabc"), &set(&["a", "b"]));
    let longest = traces(&p, 9).into_iter().max_by_key(Vec::len).unwrap();
    assert_eq!(word(&longest), "aabab");
    assert_eq!(p.universe, set(&["a", "b"]));
}

#[test]
fn projection_composes_by_intersection() {
    let mut rng = StdRng::seed_from_u64(21);
    let pick = |rng: &mut StdRng| -> BTreeSet<String> {
        EVENTS.iter().filter(|_| rng.gen_bool(0.5)).map(|e| e.to_string()).collect()
    };
    for _ in 0..300 {
        let p = random_lts(&mut rng, &EVENTS);
        let (e, f) = (pick(&mut rng), pick(&mut rng));
        let twice = project(&project(&p, &e), &f);
        let once = project(&p, &e.intersection(&f).cloned().collect());
        assert_eq!(traces(&twice, 5), traces(&once, 5));
        assert_eq!(twice.universe, once.universe);
    }
}

#[test]
fn projection_keeps_projected_traces() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..200 {
        let p = random_lts(&mut rng, &EVENTS);
        let e = set(&["a", "c"]);
        let projected = traces(&project(&p, &e), 6);
        for t in traces(&p, 6) {
            let kept: Vec<Label> = t.into_iter().filter(|l| !matches!(l, Label::Ev(x) if !e.contains(x))).collect();
            assert!(projected.contains(&kept), "{kept:?}");
        }
    }
}

#[test]
fn projection_on_full_alphabet_is_identity_on_traces() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..100 {
        let p = random_lts(&mut rng, &EVENTS);
        assert_eq!(traces(&project(&p, &set(&EVENTS)), 6), traces(&p, 6));
    }
}

#[test]
fn parallel_is_symmetric_up_to_isomorphism() {
    let mut rng = StdRng::seed_from_u64(31);
    for i in 0..300 {
        let (hi, lo) = (rng.gen_range(1..=3), rng.gen_range(0..3));
        let p = random_lts(&mut rng, &EVENTS[..hi]);
        let q = random_lts(&mut rng, &EVENTS[lo..]);
        let sync = match i % 3 {
            0 => Sync::Auto,
            1 => Sync::Set(BTreeSet::new()),
            _ => Sync::Set(set(&["b"])),
        };
        assert!(isomorphic_by_swap(&p, &q, &sync), "{p:?}\n{q:?}");
    }
}

/// Interleavings of two traces; √ only as a joint last step.
fn shuffles(s: &[Label], t: &[Label]) -> Vec<Vec<Label>> {
    fn go(s: &[Label], t: &[Label], acc: &mut Vec<Label>, out: &mut Vec<Vec<Label>>) {
        out.push(acc.clone());
        if let Some((x, rest)) = s.split_first() {
            if *x != Label::Tick {
                acc.push(x.clone());
                go(rest, t, acc, out);
                acc.pop();
            }
        }
        if let Some((y, rest)) = t.split_first() {
            if *y != Label::Tick {
                acc.push(y.clone());
                go(s, rest, acc, out);
                acc.pop();
            }
        }
        if s == [Label::Tick] && t == [Label::Tick] {
            acc.push(Label::Tick);
            out.push(acc.clone());
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(s, t, &mut Vec::new(), &mut out);
    out
}

#[test]
fn interleaving_traces_are_shuffles() {
    let mut rng = StdRng::seed_from_u64(41);
    const D: usize = 4;
    for _ in 0..150 {
        let p = random_lts(&mut rng, &["a", "b"]);
        let q = random_lts(&mut rng, &["b", "c"]);
        let got = traces(&interleave(&p, &q, 10_000).unwrap(), D);
        let mut want = HashSet::new();
        for s in traces(&p, D) {
            for t in traces(&q, D) {
                want.extend(shuffles(&s, &t).into_iter().filter(|u| u.len() <= D));
            }
        }
        assert_eq!(got, want);
    }
}

#[test]
fn lock_step_parallel_equals_operand() {
    let p = parse_process("a -> §").unwrap();
    let l = lts_of(&p);
    let both = parallel(&l, &l, &Sync::Set(set(&["a"])), 100).unwrap();
    assert_eq!(traces(&both, 4), traces(&l, 4));
    assert!(wright::refines_lts(&l, &both, 100).unwrap().holds);
    assert!(wright::refines_lts(&both, &l, 100).unwrap().holds);
}

#[test]
fn hiding_examples() {
    let once = hide(&lts_of(&parse_process("a -> §").unwrap()), &set(&["a"]));
    assert_eq!(traces(&once, 3), HashSet::from([vec![], vec![Label::Tick]]));
    assert!(!(0..once.num_states()).any(|s| diverges(&once, s)));

    let forever = hide(&lts_of(&parse_process("a -> P").unwrap()), &set(&["a"]));
    assert!(diverges(&forever, forever.initial));
    assert!(fd_model(&forever, 100).unwrap().nodes[0].divergent);

    let p = lts_of(&parse_process("a -> b -> P").unwrap());
    assert_eq!(hide(&p, &BTreeSet::new()), p);
}

#[test]
fn augment_keeps_behaviour() {
    let mut rng = StdRng::seed_from_u64(51);
    for _ in 0..100 {
        let p = random_lts(&mut rng, &["a", "b"]);
        assert_eq!(augment(&p, &BTreeSet::new()), p);
        let wide = augment(&p, &set(&["z"]));
        assert!(wide.universe.contains("z"));
        let (m, w) = (fd_model(&p, 1000).unwrap(), fd_model(&wide, 1000).unwrap());
        assert_eq!(m.nodes.len(), w.nodes.len());
        for (x, y) in m.nodes.iter().zip(&w.nodes) {
            assert_eq!(x.acceptances, y.acceptances);
            assert_eq!(x.succ, y.succ);
            assert_eq!(x.divergent, y.divergent);
        }
        // z is refused wherever p is stable.
        for n in 0..w.nodes.len() {
            if !w.nodes[n].divergent {
                assert!(w.max_refusals(n).iter().all(|r| r.contains(&Label::ev("z"))));
            }
        }
    }
}

#[test]
fn augmented_success_still_only_terminates() {
    let s = augment(&Lts::success(), &set(&["a"]));
    assert_eq!(traces(&s, 3), HashSet::from([vec![], vec![Label::Tick]]));
}

#[test]
fn determinize_of_internal_choice_is_external_choice() {
    let d = determinize(&lts_of(&parse_process("a -> § |~| b -> §").unwrap()), 100).unwrap();
    let e = lts_of(&parse_process("a -> § [] b -> §").unwrap());
    assert!(wright::refines_lts(&e, &d, 100).unwrap().holds);
    assert!(wright::refines_lts(&d, &e, 100).unwrap().holds);
}

#[test]
fn determinize_of_deadlock_free_process() {
    let d = determinize(&Lts::deadlock_free(&set(&["a"])), 100).unwrap();
    let m = fd_model(&d, 100).unwrap();
    assert_eq!(m.nodes.len(), 2);
    for n in 0..m.nodes.len() {
        if m.nodes[n].succ.contains_key(&Label::Tick) {
            assert!(m.max_refusals(n).iter().all(|r| !r.contains(&Label::ev("a"))));
        }
    }
    let t = traces(&d, 5);
    assert!(t.contains(&vec![Label::ev("a"); 5]));
}

#[test]
fn lts_shapes() {
    let p = lts_of(&parse_process("a -> §").unwrap());
    assert_eq!(p.num_states(), 3);
    let r = lts_of(&parse_process("a -> P").unwrap());
    assert_eq!(r.num_states(), 1);
    assert_eq!(r.succ[0], vec![(Label::ev("a"), 0)]);
    let env = Env::new().define("P", parse_process("x -> P").unwrap()).define("Q", parse_process("y -> Q").unwrap());
    let c = build_lts(&parse_process("a -> P |~| b -> Q").unwrap(), &env, 100).unwrap();
    assert_eq!(c.succ[c.initial].len(), 2);
    assert!(c.succ[c.initial].iter().all(|(l, _)| *l == Label::Tau));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn determinize_preserves_traces(expr in guarded()) {
        prop_assert_eq!(determinize_ok(&expr, 6), Ok(()));
    }

    #[test]
    fn alphabet_matches_reachable_events(expr in guarded()) {
        let env = Env::new().define("P", expr.clone());
        let p = build_lts(&ProcessExpr::name("P"), &env, 10_000).unwrap();
        let seen: BTreeSet<String> = p.transitions().filter_map(|(_, l, _)| match l {
            Label::Ev(e) => Some(e.clone()),
            _ => None,
        }).collect();
        prop_assert_eq!(alphabet(&expr, &env).unwrap().all, seen);
    }
}
