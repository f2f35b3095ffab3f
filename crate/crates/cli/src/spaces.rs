use superrational::bk_types::{BkChecker, BkReason, BkSpace, BkTypeVerdict, PlayerState};
use superrational::choice::{ChoiceMode, Justification};
use superrational::epistemic::{HarsanyiChecker, HarsanyiSpace, NotSuperrational, TheoremCheck, TypeVerdict};
use superrational::format::{format_candidate, parse_states, parse_strategies, parse_type_profile, TypeSpace};
use superrational::{is_symmetric, Game, OptimizerConfig};

use crate::analyze::symmetry_warning;
use crate::report::{
    BkResults, CommandEcho, ConfigEcho, HarsanyiResults, IdentificationOut, OutcomeRow, PlayRow, Report, Results,
    StateRow, StrategyRow, TheoremFlag, TypeChoice, TypeRow,
};
use crate::CliError;

const HARSANYI_THEOREM: &str = "superrational types with superrational strategies play the superrational profile";
const BK_THEOREM: &str = "superrational states yield the superrational profile";

#[derive(Debug, Clone, Copy, Default)]
pub struct TypesOptions<'a> {
    /// Contents of a strategies file.
    pub strategies: Option<&'a str>,
    pub types: Option<&'a str>,
    pub states: Option<&'a str>,
    pub weak: bool,
}

fn flag(name: &str, t: TheoremCheck) -> TheoremFlag {
    TheoremFlag {
        name: name.into(),
        premises: t.premises,
        conclusion: t.conclusion,
        flag: t.flag(),
    }
}

fn choice_label(game: &Game, mode: &ChoiceMode, player: usize, c: usize) -> String {
    mode.choice_label(game, player, c)
}

fn candidates(mode: &ChoiceMode) -> Vec<String> {
    mode.candidates().iter().map(format_candidate).collect()
}

/// Justified choices in player 1's terms, or a warning when justification
/// itself is unavailable.
fn justified_choices(
    game: &Game,
    mode: &ChoiceMode,
    justification: Result<&Justification, superrational::Error>,
    warnings: &mut Vec<String>,
) -> Option<Vec<String>> {
    match justification {
        Ok(j) => {
            if j.unique().is_none() {
                warnings.push("there is no unique superrationally justifiable choice, so the theorem premises fail".into());
            }
            Some(
                (0..mode.choice_count(game, 0))
                    .filter(|&c| j.is_justified(c))
                    .map(|c| choice_label(game, mode, 0, c))
                    .collect(),
            )
        }
        Err(e) => {
            warnings.push(format!("superrational justification is unavailable: {e}"));
            None
        }
    }
}

fn harsanyi_reason(game: &Game, mode: &ChoiceMode, player: usize, r: &NotSuperrational) -> String {
    match r {
        NotSuperrational::TypeBeliefNotDirac { opponent } => {
            format!("not certain of player {}'s type", opponent + 1)
        }
        NotSuperrational::BelievesOtherType { opponent, believed } => {
            format!("believes player {} has type {believed}", opponent + 1)
        }
        NotSuperrational::ChoiceBeliefNotDirac { opponent } => {
            format!("not certain of player {}'s choice", opponent + 1)
        }
        NotSuperrational::ChoicesDisagree => "believed opponent choices differ".into(),
        NotSuperrational::NotJustified { choice } => format!(
            "believed choice {} is not superrationally justifiable",
            choice_label(game, mode, player, *choice)
        ),
        NotSuperrational::NoJustifiedChoice => "no choice is superrationally justifiable".into(),
    }
}

fn bk_reason(game: &Game, mode: &ChoiceMode, player: usize, r: &BkReason) -> String {
    match r {
        BkReason::NotSingleton { size } => format!("belief set holds {size} tuples"),
        BkReason::BelievesOtherType { opponent, believed } => {
            format!("believes player {} has type {believed}", opponent + 1)
        }
        BkReason::ChoicesDisagree => "believed opponent choices differ".into(),
        BkReason::NotJustified { choice } => format!(
            "believed choice {} is not superrationally justifiable",
            choice_label(game, mode, player, *choice)
        ),
        BkReason::NoJustifiedChoice => "no choice is superrationally justifiable".into(),
    }
}

fn different_type_sets(warnings: &mut Vec<String>) {
    warnings.push("players use different type label sets; the shared-label type test is skipped".into());
}

pub fn check_harsanyi(
    space: &HarsanyiSpace,
    opts: TypesOptions,
    cfg: &OptimizerConfig,
    warnings: &mut Vec<String>,
) -> Result<(HarsanyiResults, Vec<TheoremFlag>), CliError> {
    if opts.states.is_some() || opts.weak {
        return Err(CliError::Input(
            "--states and --weak apply to possibility (bk) spaces, this space is harsanyi".into(),
        ));
    }
    let game = space.game();
    let mode = space.mode();
    let n = game.players();
    let checker = HarsanyiChecker::new(space, cfg);
    let justified = justified_choices(game, mode, checker.justification(), warnings);

    let verdicts: Option<Vec<Vec<TypeVerdict>>> = if !space.has_common_type_sets() {
        different_type_sets(warnings);
        None
    } else if justified.is_none() {
        None
    } else {
        Some(
            (0..n)
                .map(|i| (0..space.types(i).len()).map(|t| checker.type_verdict(i, t)).collect())
                .collect::<Result<_, _>>()?,
        )
    };
    let mut types = Vec::new();
    if let Some(v) = &verdicts {
        for (i, row) in v.iter().enumerate() {
            for (t, verdict) in row.iter().enumerate() {
                types.push(TypeRow {
                    player: i + 1,
                    type_label: space.types(i)[t].clone(),
                    superrational: verdict.choice().is_some(),
                    choice: verdict.choice().map(|c| choice_label(game, mode, i, c)),
                    reason: match verdict {
                        TypeVerdict::Superrational { .. } => None,
                        TypeVerdict::NotSuperrational(r) => Some(harsanyi_reason(game, mode, i, r)),
                    },
                });
            }
        }
    }

    let (strategies, source) = match opts.strategies {
        Some(text) => (Some(parse_strategies(text, space)?), "file"),
        None if verdicts.is_some() => (
            Some((0..n).map(|i| checker.superrational_strategy(i)).collect::<Result<Vec<_>, _>>()?),
            "derived",
        ),
        None => {
            warnings.push("no strategies were given and none can be derived; play is skipped".into());
            (None, "derived")
        }
    };
    let strategy_rows = strategies
        .iter()
        .flatten()
        .map(|b| {
            let verdict = checker.is_superrational_bayesian_strategy(b).ok();
            StrategyRow {
                player: b.player + 1,
                source: source.into(),
                choices: b
                    .choices
                    .iter()
                    .enumerate()
                    .map(|(t, &c)| TypeChoice {
                        type_label: space.types(b.player)[t].clone(),
                        choice: choice_label(game, mode, b.player, c),
                    })
                    .collect(),
                superrational: verdict.as_ref().map(|v| v.superrational),
                violating_type: verdict
                    .and_then(|v| v.violating_type)
                    .map(|t| space.types(b.player)[t].clone()),
            }
        })
        .collect();

    let profile = match opts.types {
        Some(text) => parse_type_profile(text, space.type_lists())?,
        None => (0..n)
            .map(|i| {
                verdicts
                    .as_ref()
                    .and_then(|v| v[i].iter().position(|x| x.choice().is_some()))
                    .unwrap_or(0)
            })
            .collect(),
    };
    let mut flags = Vec::new();
    let play = match &strategies {
        Some(strategies) => {
            let out = checker.play(&profile, strategies)?;
            flags.push(flag(HARSANYI_THEOREM, out.theorem));
            Some(PlayRow {
                types: profile.iter().enumerate().map(|(i, &t)| space.types(i)[t].clone()).collect(),
                choices: out
                    .choices
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| choice_label(game, mode, i, c))
                    .collect(),
            })
        }
        None => None,
    };

    Ok((
        HarsanyiResults {
            kind: "harsanyi".into(),
            mode: mode.name().into(),
            candidates: candidates(mode),
            justified_choices: justified,
            types,
            strategies: strategy_rows,
            play,
        },
        flags,
    ))
}

pub fn check_bk(
    space: &BkSpace,
    opts: TypesOptions,
    cfg: &OptimizerConfig,
    warnings: &mut Vec<String>,
) -> Result<(BkResults, Vec<TheoremFlag>), CliError> {
    if opts.strategies.is_some() || opts.types.is_some() {
        return Err(CliError::Input(
            "--strategies and --types apply to probabilistic (harsanyi) spaces, this space is bk".into(),
        ));
    }
    let game = space.game();
    let mode = space.mode();
    let n = space.players();
    let checker = BkChecker::new(space, cfg);
    let justified = justified_choices(game, mode, checker.justification(), warnings);
    let judged = justified.is_some();
    let common = space.has_common_type_sets();
    if !common {
        different_type_sets(warnings);
    }

    let mut types = Vec::new();
    if common && judged {
        for i in 0..n {
            for (t, label) in space.types(i).iter().enumerate() {
                let verdict = checker.is_bk_superrational_type(i, t)?;
                types.push(TypeRow {
                    player: i + 1,
                    type_label: label.clone(),
                    superrational: verdict.choice().is_some(),
                    choice: verdict.choice().map(|c| choice_label(game, mode, i, c)),
                    reason: match &verdict {
                        BkTypeVerdict::Superrational { .. } => None,
                        BkTypeVerdict::NotSuperrational(r) => Some(bk_reason(game, mode, i, r)),
                    },
                });
            }
        }
    }

    let mut states = Vec::new();
    let mut defaults = Vec::with_capacity(n);
    for i in 0..n {
        let mut first_strict = None;
        let mut first_same = None;
        for (t, label) in space.types(i).iter().enumerate() {
            for c in 0..mode.choice_count(game, i) {
                let st = PlayerState { choice: c, type_index: t };
                let same_types = if common && judged {
                    Some(checker.is_superrational_state(i, st)?)
                } else {
                    None
                };
                let strict = judged && checker.is_superrational_state_dissimilar(i, st, true)?;
                let weak = if opts.weak {
                    Some(checker.is_superrational_state_dissimilar(i, st, false)?)
                } else {
                    None
                };
                if strict && first_strict.is_none() {
                    first_strict = Some(st);
                }
                if same_types == Some(true) && first_same.is_none() {
                    first_same = Some(st);
                }
                states.push(StateRow {
                    player: i + 1,
                    choice: choice_label(game, mode, i, c),
                    type_label: label.clone(),
                    same_types,
                    strict,
                    weak,
                });
            }
        }
        defaults.push(first_strict.or(first_same).unwrap_or(PlayerState {
            choice: 0,
            type_index: 0,
        }));
    }

    let chosen = match opts.states {
        Some(text) => parse_states(text, space)?,
        None => defaults,
    };
    let outcome = checker.bk_outcome(&chosen)?;
    let relation = checker.greatest_relation();

    Ok((
        BkResults {
            kind: "bk".into(),
            mode: mode.name().into(),
            candidates: candidates(mode),
            justified_choices: justified,
            types,
            identification: IdentificationOut {
                blocks: relation.block_labels(space),
                rounds: checker.refinement_rounds(),
            },
            states,
            outcome: OutcomeRow {
                states: chosen
                    .iter()
                    .enumerate()
                    .map(|(i, st)| {
                        format!(
                            "{}:{}",
                            choice_label(game, mode, i, st.choice),
                            space.types(i)[st.type_index]
                        )
                    })
                    .collect(),
                choices: outcome
                    .choices
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| choice_label(game, mode, i, c))
                    .collect(),
            },
        },
        vec![flag(BK_THEOREM, outcome.theorem)],
    ))
}

pub fn check_space(
    space: &TypeSpace,
    command: CommandEcho,
    opts: TypesOptions,
    cfg: &OptimizerConfig,
) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut warnings = Vec::new();
    warnings.extend(symmetry_warning(space.game(), &is_symmetric(space.game())));
    let (results, theorem_flags) = match space {
        TypeSpace::Harsanyi(s) => {
            let (r, f) = check_harsanyi(s, opts, cfg, &mut warnings)?;
            (Results::Harsanyi(r), f)
        }
        TypeSpace::Bk(s) => {
            let (r, f) = check_bk(s, opts, cfg, &mut warnings)?;
            (Results::Bk(r), f)
        }
    };
    Ok(Report {
        command,
        config: ConfigEcho::from(cfg),
        results,
        warnings,
        theorem_flags,
    })
}
