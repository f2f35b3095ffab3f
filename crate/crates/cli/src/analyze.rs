use superrational::game::{SymmetryVerdict, SymmetryWitness};
use superrational::rational::format_rational;
use superrational::{
    diagonal, is_symmetric, mixed_nash_2p, pure_nash, sr_justifiable_actions, superrational_mixed,
    superrational_profiles, ActionProfile, Error, Game, MixedStrategy, OptimizerConfig, SrMixedReport,
    SrMixedStatus,
};

use crate::report::{
    decimal, point, AnalyzeResults, CommandEcho, ConfigEcho, MaximizerOut, MixedNashSection, MixedSection,
    PlayerOptimumOut, PointOut, Profile, Report, Results,
};
use crate::CliError;

/// Coordinates below this count as zero when deciding whether a point lies
/// on the boundary of the simplex.
const BOUNDARY: f64 = 1e-9;

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub mixed: bool,
    pub nash2p: bool,
}

fn labels(game: &Game, ps: &[ActionProfile]) -> Vec<Profile> {
    ps.iter().map(|p| p.labels(game)).collect()
}

pub fn symmetry_warning(game: &Game, verdict: &SymmetryVerdict) -> Option<String> {
    match verdict {
        SymmetryVerdict::Symmetric => None,
        SymmetryVerdict::NotSymmetric(SymmetryWitness::DifferentActionSets) => {
            Some("game is not symmetric: the players have different action lists".into())
        }
        SymmetryVerdict::NotSymmetric(SymmetryWitness::PayoffMismatch {
            permutation,
            profile,
            player,
        }) => {
            let image: Vec<String> = permutation.as_slice().iter().map(|k| (k + 1).to_string()).collect();
            Some(format!(
                "game is not symmetric: player {}'s payoff at {} is not preserved by the player permutation [{}]",
                player + 1,
                profile.display(game),
                image.join(",")
            ))
        }
    }
}

fn mixed_section(report: &SrMixedReport) -> MixedSection {
    MixedSection {
        status: match report.status {
            SrMixedStatus::Found => "found".into(),
            SrMixedStatus::Empty => "empty".into(),
        },
        maximizers: report
            .maximizers
            .iter()
            .map(|m| MaximizerOut {
                strategy: m.strategy.clone(),
                value: m.value,
                player_values: m.values.clone(),
                stationarity: m.stationarity,
                converged: m.converged,
            })
            .collect(),
        per_player: report
            .per_player
            .iter()
            .map(|p| PlayerOptimumOut {
                player: p.player + 1,
                maximizer: p.maximizer.clone(),
                value: p.value,
                interior_minimizer: p.interior_minimizer.as_ref().map(|(x, v)| PointOut {
                    strategy: x.clone(),
                    value: *v,
                }),
            })
            .collect(),
        minimax_gap: report.minimax_gap,
        grid_resolution: report.grid_resolution,
        nonconvergence: report.nonconvergence,
    }
}

/// Warnings for players whose diagonal payoff has its minimum inside the
/// simplex while its maximum sits on the boundary: the interior critical
/// point is not a candidate for a superrational strategy.
fn minimizer_warnings(report: &SrMixedReport) -> Vec<String> {
    report
        .per_player
        .iter()
        .filter_map(|p| {
            let (min, min_value) = p.interior_minimizer.as_ref()?;
            if !p.maximizer.iter().any(|&x| x <= BOUNDARY) {
                return None;
            }
            Some(format!(
                "player {}: the interior critical point {} of the diagonal payoff is a minimum (value {}), not a maximum; the maximum {} is attained at {} on the boundary",
                p.player + 1,
                point(min),
                decimal(*min_value),
                decimal(p.value),
                point(&p.maximizer)
            ))
        })
        .collect()
}

fn strategy_strings(s: &MixedStrategy) -> Vec<String> {
    match s.as_exact() {
        Some(q) => q.iter().map(format_rational).collect(),
        None => s.to_f64().iter().map(|&x| decimal(x)).collect(),
    }
}

pub fn analyze_game(
    game: &Game,
    command: CommandEcho,
    opts: AnalyzeOptions,
    cfg: &OptimizerConfig,
) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut warnings = Vec::new();
    let verdict = is_symmetric(game);
    warnings.extend(symmetry_warning(game, &verdict));

    let common = game.has_common_actions();
    let (diag, justifiable, sr) = if common {
        let justifiable = sr_justifiable_actions(game)?;
        (
            Some(labels(game, &diagonal(game)?)),
            Some(justifiable.iter().map(|&a| game.actions(0)[a].clone()).collect()),
            Some(labels(game, &superrational_profiles(game)?)),
        )
    } else {
        warnings.push(
            "players have different action lists: diagonal and superrational results are not defined, only Nash equilibria are reported".into(),
        );
        (None, None, None)
    };

    let mixed = if opts.mixed {
        match superrational_mixed(game, cfg) {
            Ok(report) => {
                warnings.extend(minimizer_warnings(&report));
                if report.nonconvergence {
                    warnings.push(format!(
                        "the optimizer hit its iteration limit above tolerance (stationarity {:.1e}); mixed values may be inexact",
                        report.stationarity
                    ));
                }
                Some(mixed_section(&report))
            }
            Err(Error::DifferentActionSets) => {
                warnings.push("superrational mixed strategies need a common action list; --mixed skipped".into());
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    let mixed_nash = if opts.nash2p {
        match mixed_nash_2p(game) {
            Ok(result) => {
                if result.degenerate {
                    warnings.push(
                        "degenerate game: some supports carry a continuum of equilibria, only the extreme points are listed".into(),
                    );
                }
                Some(MixedNashSection {
                    equilibria: result
                        .equilibria
                        .iter()
                        .map(|eq| eq.0.iter().map(strategy_strings).collect())
                        .collect(),
                    degenerate: result.degenerate,
                })
            }
            Err(Error::NotTwoPlayers(n)) => {
                warnings.push(format!("--nash2p needs exactly two players, the game has {n}; skipped"));
                None
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    Ok(Report {
        command,
        config: ConfigEcho::from(cfg),
        results: Results::Analyze(AnalyzeResults {
            players: game.players(),
            actions: game.action_lists().to_vec(),
            symmetric: verdict.is_symmetric(),
            common_actions: common,
            diagonal: diag,
            sr_justifiable: justifiable,
            superrational_profiles: sr,
            pure_nash: labels(game, &pure_nash(game)),
            mixed,
            mixed_nash,
        }),
        warnings,
        theorem_flags: Vec::new(),
    })
}
