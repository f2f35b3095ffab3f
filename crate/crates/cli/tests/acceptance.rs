//! Acceptance suite. Prints one PASS/FAIL line per criterion (with the
//! failing checks underneath) and exits nonzero if any criterion fails.

mod support;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use superrational::bk_types::{
    make_superrational_bk_space_mixed, refine_identification, BkChecker, BkSpace, PlayerState,
};
use superrational::catalog;
use superrational::choice::ChoiceMode;
use superrational::epistemic::{
    make_superrational_space_mixed, BayesianStrategy, BeliefTuple, FiniteDistribution, HarsanyiChecker,
    HarsanyiSpace, TypeVerdict,
};
use superrational::mixed::Real;
use superrational::rational::{ratio, to_f64};
use superrational::{
    diagonal_expected_payoff, is_symmetric, mixed_nash_2p, pure_nash, sr_justifiable_actions, superrational_mixed,
    superrational_profiles, ActionProfile, Game, MixedStrategy, OptimizerConfig, Rational, SrMixedStatus,
};
use support::oracles::{self, DiagonalOracle};

/// Failed checks of one criterion.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn profiles(v: &[&[usize]]) -> Vec<ActionProfile> {
    v.iter().map(|p| ActionProfile(p.to_vec())).collect()
}

fn exact(v: &[(i64, i64)]) -> Vec<Rational> {
    v.iter().map(|&(a, b)| ratio(a, b)).collect()
}

fn diagonal_exact(game: &Game, p: &[Rational], player: usize) -> Option<Rational> {
    let s = MixedStrategy::exact(p.to_vec()).ok()?;
    match diagonal_expected_payoff(game, &s, player).ok()? {
        Real::Exact(q) => Some(q),
        Real::Float(_) => None,
    }
}

fn criterion_1(c: &mut Checks) {
    let cfg = OptimizerConfig::default();

    let g = catalog::justifiable_pair();
    c.check(sr_justifiable_actions(&g).unwrap() == vec![0, 1], || "justifiable pair: justifiable actions".into());
    let sr = superrational_profiles(&g).unwrap();
    c.check(sr == profiles(&[&[0, 0], &[1, 1]]), || format!("justifiable pair: SR = {sr:?}"));
    c.check(
        pure_nash(&g) == profiles(&[&[0, 0], &[1, 1], &[2, 2]]),
        || "justifiable pair: pure Nash".into(),
    );
    c.check(
        !sr.contains(&ActionProfile(vec![0, 1])) && !sr.contains(&ActionProfile(vec![1, 0])),
        || "justifiable pair: (a,b) or (b,a) in SR".into(),
    );

    let g = catalog::battle_of_the_sexes();
    c.check(sr_justifiable_actions(&g).unwrap().is_empty(), || "battle of the sexes: justifiable actions".into());
    c.check(superrational_profiles(&g).unwrap().is_empty(), || "battle of the sexes: SR".into());
    let mixed = superrational_mixed(&g, &cfg).unwrap();
    c.check(mixed.status == SrMixedStatus::Empty, || "battle of the sexes: mixed SR not empty".into());
    let target = [exact(&[(2, 3), (1, 3)]), exact(&[(1, 3), (2, 3)])];
    let nash = mixed_nash_2p(&g).unwrap();
    let found = nash
        .equilibria
        .iter()
        .any(|eq| eq.0.iter().zip(&target).all(|(s, t)| s.as_exact() == Some(t.as_slice())));
    c.check(found, || "battle of the sexes: mixed Nash (2/3,1/3),(1/3,2/3) missing".into());

    let g = catalog::dominated_diagonal();
    c.check(
        superrational_profiles(&g).unwrap() == profiles(&[&[1, 1]]),
        || "dominated diagonal: SR".into(),
    );

    let g = catalog::anti_coordination();
    c.check(
        superrational_profiles(&g).unwrap() == profiles(&[&[0, 0], &[1, 1]]),
        || "anti-coordination: SR".into(),
    );
    c.check(pure_nash(&g) == profiles(&[&[0, 1], &[1, 0]]), || "anti-coordination: pure Nash".into());
    let report = superrational_mixed(&g, &cfg).unwrap();
    let uniform = report
        .unique_maximizer()
        .is_some_and(|m| m.strategy.iter().all(|p| (p - 0.5).abs() <= 1e-6));
    c.check(uniform, || format!("anti-coordination: mixed SR {:?}", report.maximizers));

    let g = catalog::prisoners_dilemma();
    c.check(superrational_profiles(&g).unwrap() == profiles(&[&[0, 0]]), || "prisoners dilemma: SR".into());
    c.check(pure_nash(&g) == profiles(&[&[1, 1]]), || "prisoners dilemma: Nash".into());

    let g = catalog::chicken();
    c.check(superrational_profiles(&g).unwrap() == profiles(&[&[1, 1]]), || "chicken: SR".into());
    for (num, den) in [(0, 1), (1, 4), (1, 2), (1, 1)] {
        let p = ratio(num, den);
        let sigma = vec![p.clone(), ratio(1, 1) - &p];
        let expected = ratio(-10, 1) * &p * &p;
        c.check(
            diagonal_exact(&g, &sigma, 0) == Some(expected),
            || format!("chicken: diagonal payoff at p = {num}/{den}"),
        );
    }
    let report = superrational_mixed(&g, &cfg).unwrap();
    c.check(
        report.unique_maximizer().is_some_and(|m| m.strategy[0].abs() <= 1e-9),
        || format!("chicken: maximizer {:?}", report.maximizers),
    );

    for n in 2..=10 {
        let g = catalog::platonia(n);
        let report = superrational_mixed(&g, &cfg).unwrap();
        let q = 1.0 / n as f64;
        let value = 1e6 * q * (1.0 - q).powi(n as i32 - 1);
        let ok = report.unique_maximizer().is_some_and(|m| {
            (m.strategy[0] - q).abs() <= 1e-6 && ((m.value - value) / value).abs() <= 1e-6
        });
        c.check(ok, || format!("platonia n={n}: {:?}", report.maximizers));
        let all = |a| ActionProfile::diagonal(a, n);
        c.check(
            superrational_profiles(&g).unwrap() == vec![all(0), all(1)],
            || format!("platonia n={n}: SR"),
        );
    }
    c.check(
        pure_nash(&catalog::platonia(2)) == profiles(&[&[0, 0], &[0, 1], &[1, 0]]),
        || "platonia n=2: pure Nash".into(),
    );
}

/// T1 = {r, s, t}, T2 = {u, w}; r→(C,u), s→(D,w), t→(D,u), u→(C,r), w→(D,s).
fn dissimilar_pd() -> BkSpace {
    let (cc, dd) = (0, 1);
    BkSpace::new(
        catalog::prisoners_dilemma(),
        ChoiceMode::Pure,
        vec![vec!["r".into(), "s".into(), "t".into()], vec!["u".into(), "w".into()]],
        vec![
            vec![vec![vec![(cc, 0)]], vec![vec![(dd, 1)]], vec![vec![(dd, 0)]]],
            vec![vec![vec![(cc, 0)]], vec![vec![(dd, 1)]]],
        ],
    )
    .unwrap()
}

fn criterion_2(c: &mut Checks) {
    let space = dissimilar_pd();
    let checker = BkChecker::new(&space, &OptimizerConfig::default());
    let blocks: BTreeSet<BTreeSet<String>> = checker
        .greatest_relation()
        .block_labels(&space)
        .into_iter()
        .map(|b| b.into_iter().collect())
        .collect();
    let expected: BTreeSet<BTreeSet<String>> = [vec!["r", "u"], vec!["s", "w"], vec!["t"]]
        .iter()
        .map(|b| b.iter().map(|s| s.to_string()).collect())
        .collect();
    c.check(blocks == expected, || format!("greatest relation {blocks:?}"));

    let states = |player: usize, strict: bool| -> BTreeSet<(String, String)> {
        let mut out = BTreeSet::new();
        for (t, label) in space.types(player).iter().enumerate() {
            for a in 0..2 {
                let st = PlayerState { choice: a, type_index: t };
                if checker.is_superrational_state_dissimilar(player, st, strict).unwrap() {
                    out.insert((space.game().actions(player)[a].clone(), label.clone()));
                }
            }
        }
        out
    };
    let set = |v: &[(&str, &str)]| -> BTreeSet<(String, String)> {
        v.iter().map(|(a, t)| (a.to_string(), t.to_string())).collect()
    };
    c.check(states(0, true) == set(&[("C", "r")]), || format!("player 1 strict {:?}", states(0, true)));
    c.check(states(1, true) == set(&[("C", "u")]), || format!("player 2 strict {:?}", states(1, true)));
    c.check(
        states(0, false) == set(&[("C", "r"), ("D", "s")]),
        || format!("player 1 weak {:?}", states(0, false)),
    );
    c.check(
        states(1, false) == set(&[("C", "u"), ("D", "w")]),
        || format!("player 2 weak {:?}", states(1, false)),
    );
    let out = checker
        .bk_outcome(&[PlayerState { choice: 0, type_index: 0 }, PlayerState { choice: 0, type_index: 0 }])
        .unwrap();
    c.check(out.choices == vec![0, 0] && out.theorem.flag(), || format!("outcome {out:?}"));
}

/// One property suite: runs `body` on instances drawn from a fixed seed
/// until `target` of them were accepted (`body` returns `None` to skip).
struct Suite<'a> {
    name: &'static str,
    seed: u64,
    target: usize,
    body: Box<dyn FnMut(&mut ChaCha8Rng) -> Option<Result<(), String>> + 'a>,
}

fn run_suite(suite: &mut Suite, c: &mut Checks) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(suite.seed);
    let start = Instant::now();
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < suite.target && attempts < 20 * suite.target {
        attempts += 1;
        match (suite.body)(&mut rng) {
            None => {}
            Some(Ok(())) => accepted += 1,
            Some(Err(e)) => {
                accepted += 1;
                c.failures.push(format!("{}: {e}", suite.name));
            }
        }
    }
    c.check(accepted >= suite.target, || {
        format!("{}: only {accepted} of {} instances generated", suite.name, suite.target)
    });
    format!("{}: {accepted} instances, {:.2?}", suite.name, start.elapsed())
}

fn symmetric(rng: &mut ChaCha8Rng, n: (usize, usize), m: (usize, usize)) -> Game {
    let n = rng.random_range(n.0..=n.1);
    let m = rng.random_range(m.0..=m.1);
    support::symmetric_game(rng, n, m)
}

fn unique_action(game: &Game) -> Option<usize> {
    match sr_justifiable_actions(game).unwrap().as_slice() {
        [a] => Some(*a),
        _ => None,
    }
}

fn equal_diagonal_payoffs(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (1, 4));
    if !is_symmetric(&g).is_symmetric() {
        return Some(Err("generated game is not symmetric".into()));
    }
    let n = g.players();
    for a in 0..g.actions(0).len() {
        let v = g.payoff_vector(&vec![a; n]);
        if v.iter().any(|x| x != &v[0]) {
            return Some(Err(format!("unequal diagonal payoffs at action {a}")));
        }
    }
    Some(Ok(()))
}

fn nonempty_profiles(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (1, 4));
    let n = g.players();
    let m = g.actions(0).len();
    let best = (0..m).map(|a| g.payoff(&vec![a; n], 0).clone()).max().unwrap();
    let expected: Vec<ActionProfile> = (0..m)
        .filter(|&a| g.payoff(&vec![a; n], 0) == &best)
        .map(|a| ActionProfile::diagonal(a, n))
        .collect();
    let sr = superrational_profiles(&g).unwrap();
    Some(if !sr.is_empty() && sr == expected {
        Ok(())
    } else {
        Err(format!("SR {sr:?}, expected {expected:?}"))
    })
}

fn diagonal_player_independence(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (1, 4));
    let n = g.players();
    let sigma = support::rational_point(rng, g.actions(0).len());
    let reference = oracles::expected(&g, &vec![sigma.clone(); n], 0);
    for i in 0..n {
        if diagonal_exact(&g, &sigma, i).as_ref() != Some(&reference) {
            return Some(Err(format!("player {} diagonal payoff differs at {sigma:?}", i + 1)));
        }
    }
    Some(Ok(()))
}

fn optimizer_beats_pure(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (1, 4));
    let n = g.players();
    let report = superrational_mixed(&g, &OptimizerConfig::default()).unwrap();
    let value = report.maximizers[0].value;
    let pure = (0..g.actions(0).len())
        .map(|a| to_f64(g.payoff(&vec![a; n], 0)))
        .fold(f64::NEG_INFINITY, f64::max);
    Some(if value >= pure - 1e-9 {
        Ok(())
    } else {
        Err(format!("optimizer {value} below pure {pure}"))
    })
}

fn optimizer_vs_grid(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (2, 3));
    let report = superrational_mixed(&g, &OptimizerConfig::default()).unwrap();
    let oracle = DiagonalOracle::new(&g);
    let grid = oracle.grid_maximum(g.actions(0).len());
    let found = report.maximizers[0].value;
    if (found - grid).abs() > 1e-6 {
        return Some(Err(format!("optimizer {found}, grid {grid}")));
    }
    for m in &report.maximizers {
        if (oracle.value(&m.strategy) - found).abs() > 1e-6 {
            return Some(Err(format!("maximizer {:?} evaluates off the optimum", m.strategy)));
        }
    }
    Some(Ok(()))
}

fn mixed_nash_scan(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let m = rng.random_range(1..=4);
    let g = support::any_game(rng, 2, m);
    let result = mixed_nash_2p(&g).unwrap();
    if result.equilibria.is_empty() {
        return Some(Err("no equilibrium".into()));
    }
    for eq in &result.equilibria {
        let profile: Vec<Vec<Rational>> = eq.0.iter().map(|s| s.as_exact().unwrap().to_vec()).collect();
        if !oracles::is_mixed_nash(&g, &profile) {
            return Some(Err(format!("{profile:?} admits a profitable deviation")));
        }
    }
    for p in oracles::pure_nash(&g) {
        let listed = result.equilibria.iter().any(|eq| {
            eq.0.iter()
                .zip(&p)
                .all(|(s, &a)| s == &MixedStrategy::pure(m, a))
        });
        if !listed {
            return Some(Err(format!("pure equilibrium {p:?} missing")));
        }
    }
    Some(Ok(()))
}

fn superrational_types_pure(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (1, 4));
    let a = unique_action(&g)?;
    let n = g.players();
    let m = g.actions(0).len();
    let k = rng.random_range(1..=3);
    let labels: Vec<String> = (0..k).map(|t| format!("t{t}")).collect();
    let beliefs = (0..n)
        .map(|_| {
            (0..k)
                .map(|t| {
                    let mut entries = vec![(vec![(a, t); n - 1], ratio(1, 1))];
                    if m > 1 && rng.random_bool(0.5) {
                        entries.push((vec![((a + 1) % m, (t + 1) % k); n - 1], ratio(0, 1)));
                    }
                    FiniteDistribution::new(entries).unwrap()
                })
                .collect()
        })
        .collect();
    let space = HarsanyiSpace::new(g.clone(), ChoiceMode::Pure, vec![labels; n], beliefs).unwrap();
    let checker = HarsanyiChecker::new(&space, &OptimizerConfig::default());
    let strategies: Vec<BayesianStrategy> = (0..n).map(|i| checker.superrational_strategy(i).unwrap()).collect();
    let types: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    for (i, &t) in types.iter().enumerate() {
        if checker.type_verdict(i, t).unwrap() != (TypeVerdict::Superrational { choice: a }) {
            return Some(Err(format!("type {t} of player {} not superrational", i + 1)));
        }
    }
    let out = checker.play(&types, &strategies).unwrap();
    Some(if out.choices == vec![a; n] && out.theorem.flag() {
        Ok(())
    } else {
        Err(format!("play gave {:?}", out.choices))
    })
}

fn superrational_types_mixed(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (2, 3));
    let cfg = OptimizerConfig::default();
    let report = superrational_mixed(&g, &cfg).unwrap();
    let best = report.unique_maximizer()?.strategy.clone();
    let space = make_superrational_space_mixed(&g, &cfg).unwrap();
    let candidate = space.mode().candidates()[0].to_f64();
    if candidate.iter().zip(&best).any(|(x, y)| (x - y).abs() > 1e-6) {
        return Some(Err(format!("candidate {candidate:?} is not the optimum {best:?}")));
    }
    let checker = HarsanyiChecker::new(&space, &cfg);
    let n = g.players();
    let strategies: Vec<BayesianStrategy> = (0..n).map(|i| checker.superrational_strategy(i).unwrap()).collect();
    let out = checker.play(&vec![0; n], &strategies).unwrap();
    Some(if out.choices == vec![0; n] && out.theorem.flag() {
        Ok(())
    } else {
        Err(format!("play gave {:?}", out))
    })
}

fn same_type_states(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (1, 4));
    let a = unique_action(&g)?;
    let n = g.players();
    let m = g.actions(0).len();
    let k = rng.random_range(1..=3);
    let labels: Vec<String> = (0..k).map(|t| format!("t{t}")).collect();
    let beliefs: Vec<Vec<Vec<BeliefTuple>>> = (0..n)
        .map(|_| {
            (0..k)
                .map(|t| {
                    if t == 0 {
                        vec![vec![(a, 0); n - 1]]
                    } else {
                        vec![(0..n - 1).map(|_| (rng.random_range(0..m), rng.random_range(0..k))).collect()]
                    }
                })
                .collect()
        })
        .collect();
    let space = BkSpace::new(g, ChoiceMode::Pure, vec![labels; n], beliefs).unwrap();
    let checker = BkChecker::new(&space, &OptimizerConfig::default());
    let states = vec![PlayerState { choice: a, type_index: 0 }; n];
    for (i, &st) in states.iter().enumerate() {
        if !checker.is_superrational_state(i, st).unwrap() {
            return Some(Err(format!("player {} state not superrational", i + 1)));
        }
    }
    let out = checker.bk_outcome(&states).unwrap();
    Some(if out.choices == vec![a; n] && out.theorem.flag() {
        Ok(())
    } else {
        Err(format!("outcome {out:?}"))
    })
}

fn dissimilar_states(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (1, 4));
    let a = unique_action(&g)?;
    let n = g.players();
    let m = g.actions(0).len();
    let sizes: Vec<usize> = (0..n).map(|_| rng.random_range(1..=3)).collect();
    let types: Vec<Vec<String>> = (0..n)
        .map(|i| (0..sizes[i]).map(|t| format!("p{}t{t}", i + 1)).collect())
        .collect();
    let beliefs: Vec<Vec<Vec<BeliefTuple>>> = (0..n)
        .map(|i| {
            (0..sizes[i])
                .map(|t| {
                    let opp: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                    if t == 0 {
                        vec![opp.iter().map(|_| (a, 0)).collect()]
                    } else {
                        vec![opp.iter().map(|&k| (rng.random_range(0..m), rng.random_range(0..sizes[k]))).collect()]
                    }
                })
                .collect()
        })
        .collect();
    let space = BkSpace::new(g, ChoiceMode::Pure, types, beliefs).unwrap();
    let checker = BkChecker::new(&space, &OptimizerConfig::default());
    let states = vec![PlayerState { choice: a, type_index: 0 }; n];
    for (i, &st) in states.iter().enumerate() {
        if !checker.is_superrational_state_dissimilar(i, st, true).unwrap() {
            return Some(Err(format!("player {} state fails the dissimilar test", i + 1)));
        }
    }
    let out = checker.bk_outcome(&states).unwrap();
    Some(if out.choices == vec![a; n] && out.theorem.flag() {
        Ok(())
    } else {
        Err(format!("outcome {out:?}"))
    })
}

fn mixed_bk(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let g = symmetric(rng, (2, 3), (2, 3));
    let cfg = OptimizerConfig::default();
    superrational_mixed(&g, &cfg).unwrap().unique_maximizer()?;
    let space = make_superrational_bk_space_mixed(&g, &cfg).unwrap();
    let checker = BkChecker::new(&space, &cfg);
    let n = g.players();
    let states = vec![PlayerState { choice: 0, type_index: 0 }; n];
    let out = checker.bk_outcome(&states).unwrap();
    Some(if out.theorem.flag() {
        Ok(())
    } else {
        Err(format!("outcome {out:?}"))
    })
}

fn greatest_relation(rng: &mut ChaCha8Rng) -> Option<Result<(), String>> {
    let n = rng.random_range(1..=3);
    let m = rng.random_range(1..=3);
    let sizes: Vec<usize> = (0..n).map(|_| rng.random_range(1..=6 / n)).collect();
    let space = support::random_bk_space(rng, n, m, &sizes);
    let flat = oracles::flat_types(&space);
    let refinement = refine_identification(&space);
    let mut greatest = vec![0; flat.len()];
    for (b, block) in refinement.relation.blocks().iter().enumerate() {
        for t in block {
            greatest[flat.iter().position(|&x| x == (t.player, t.index)).unwrap()] = b;
        }
    }
    if !oracles::is_identification(&space, &greatest) {
        return Some(Err(format!("greatest relation {greatest:?} fails the matching condition")));
    }
    if refinement.rounds > flat.len() {
        return Some(Err(format!("{} refinement rounds for {} types", refinement.rounds, flat.len())));
    }
    for p in oracles::set_partitions(flat.len()) {
        if oracles::is_identification(&space, &p) && !oracles::refines(&p, &greatest) {
            return Some(Err(format!("valid relation {p:?} is not contained in {greatest:?}")));
        }
    }
    Some(Ok(()))
}

fn criterion_3(c: &mut Checks) -> Vec<String> {
    let mut suites = vec![
        Suite { name: "equal diagonal payoffs", seed: 1, target: 256, body: Box::new(equal_diagonal_payoffs) },
        Suite { name: "nonempty superrational profiles", seed: 2, target: 256, body: Box::new(nonempty_profiles) },
        Suite { name: "player-independent diagonal payoff", seed: 3, target: 256, body: Box::new(diagonal_player_independence) },
        Suite { name: "optimizer beats pure diagonal", seed: 4, target: 200, body: Box::new(optimizer_beats_pure) },
        Suite { name: "optimizer vs grid oracle", seed: 5, target: 200, body: Box::new(optimizer_vs_grid) },
        Suite { name: "mixed Nash deviation scan", seed: 6, target: 200, body: Box::new(mixed_nash_scan) },
        Suite { name: "superrational types play the profile, pure", seed: 7, target: 200, body: Box::new(superrational_types_pure) },
        Suite { name: "superrational types play the profile, mixed", seed: 8, target: 200, body: Box::new(superrational_types_mixed) },
        Suite { name: "superrational states yield the profile", seed: 9, target: 200, body: Box::new(same_type_states) },
        Suite { name: "superrational states yield the profile, mixed", seed: 10, target: 200, body: Box::new(mixed_bk) },
        Suite { name: "dissimilar superrational states yield the profile", seed: 11, target: 200, body: Box::new(dissimilar_states) },
        Suite { name: "greatest identification relation", seed: 12, target: 200, body: Box::new(greatest_relation) },
    ];
    suites.iter_mut().map(|s| run_suite(s, c)).collect()
}

fn criterion_4(c: &mut Checks) {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/bos.json");
    let out = Command::new(env!("CARGO_BIN_EXE_superrational"))
        .args(["analyze", data, "--mixed", "--format", "json"])
        .output()
        .expect("binary runs");
    c.check(out.status.success(), || format!("exit status {}", out.status));
    let Ok(report) = serde_json::from_slice::<Value>(&out.stdout) else {
        c.failures.push("report is not JSON".into());
        return;
    };
    let mixed = &report["results"]["mixed"];
    c.check(mixed["status"] == "empty", || format!("status {}", mixed["status"]));
    let optimum = |i: usize| {
        let p = &mixed["per_player"][i];
        let x: Vec<f64> = p["maximizer"]
            .as_array()
            .map(|a| a.iter().filter_map(Value::as_f64).collect())
            .unwrap_or_default();
        (x, p["value"].as_f64().unwrap_or(f64::NAN))
    };
    let (x1, v1) = optimum(0);
    let (x2, v2) = optimum(1);
    c.check(
        x1.len() == 2 && (x1[0] - 1.0).abs() <= 1e-9 && (v1 - 2.0).abs() <= 1e-9,
        || format!("player 1 maximum {v1} at {x1:?}"),
    );
    c.check(
        x2.len() == 2 && x2[0].abs() <= 1e-9 && (v2 - 2.0).abs() <= 1e-9,
        || format!("player 2 maximum {v2} at {x2:?}"),
    );
    let warnings: Vec<&str> = report["warnings"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_str).collect())
        .unwrap_or_default();
    for (player, point) in [(1, "(0.333333, 0.666667)"), (2, "(0.666667, 0.333333)")] {
        let prefix = format!("player {player}: the interior critical point {point} of the diagonal payoff is a minimum");
        c.check(
            warnings.iter().any(|w| w.starts_with(&prefix)),
            || format!("no interior-minimum warning for player {player}: {warnings:?}"),
        );
    }
}

fn main() {
    let mut all_passed = true;
    let mut report = |number: usize, title: &str, limit: Option<Duration>, f: &mut dyn FnMut(&mut Checks) -> Vec<String>| {
        let mut checks = Checks::default();
        let start = Instant::now();
        let notes = f(&mut checks);
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            checks.check(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        let passed = checks.failures.is_empty();
        all_passed &= passed;
        println!(
            "{} criterion {number}: {title} ({elapsed:.2?})",
            if passed { "PASS" } else { "FAIL" }
        );
        for n in notes {
            println!("    {n}");
        }
        for f in &checks.failures {
            println!("    failed: {f}");
        }
    };
    report(1, "golden games", Some(Duration::from_secs(1)), &mut |c| {
        criterion_1(c);
        Vec::new()
    });
    report(2, "dissimilar type spaces", None, &mut |c| {
        criterion_2(c);
        Vec::new()
    });
    report(3, "property suites", Some(Duration::from_secs(60)), &mut criterion_3);
    report(4, "mixed report for the battle of the sexes", None, &mut |c| {
        criterion_4(c);
        Vec::new()
    });
    if !all_passed {
        std::process::exit(1);
    }
}
