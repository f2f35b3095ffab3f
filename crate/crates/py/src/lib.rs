//! Python bindings: `Game` for normal-form analyses and `TypeSpace` for
//! the type-space checks. Players are numbered from 1, as in the file
//! formats and the command-line reports; exact quantities are rational
//! strings such as `"2/3"`. Library errors surface as `ValueError`.

use std::collections::HashMap;
use std::path::Path;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use superrational::bk_types::{
    make_superrational_bk_space, make_superrational_bk_space_mixed, BkChecker, BkSpace, BkTypeVerdict, PlayerState,
};
use superrational::epistemic::{
    make_superrational_space, make_superrational_space_mixed, BayesianStrategy, HarsanyiChecker, HarsanyiSpace,
    StrategyKind, TheoremCheck, TypeVerdict,
};
use superrational::format::{game_to_json, parse_game, parse_states, parse_type_space, type_space_to_json, TypeSpace};
use superrational::mixed::Real;
use superrational::rational::{format_rational, parse_rational};
use superrational::{
    diagonal, diagonal_expected_payoff, is_symmetric, mixed_nash_2p, pure_nash, sr_justifiable_actions,
    superrational_mixed, superrational_profiles, ActionProfile, Game, MixedStrategy, OptimizerConfig, Rational,
    SrMixedStatus,
};

fn err(e: superrational::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn config(tol: f64, grid: usize, starts: usize, seed: u64) -> PyResult<OptimizerConfig> {
    let cfg = OptimizerConfig {
        tolerance: tol,
        grid_points_per_dim: grid,
        multistarts: starts,
        rng_seed: seed,
        ..OptimizerConfig::default()
    };
    cfg.validate().map_err(err)?;
    Ok(cfg)
}

fn player_index(player: usize, n: usize) -> PyResult<usize> {
    if player == 0 || player > n {
        return Err(PyValueError::new_err(format!("player must be between 1 and {n}, got {player}")));
    }
    Ok(player - 1)
}

fn labels(game: &Game, ps: &[ActionProfile]) -> Vec<Vec<String>> {
    ps.iter().map(|p| p.labels(game)).collect()
}

fn theorem<'py>(py: Python<'py>, choices: Vec<String>, t: TheoremCheck) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("choices", choices)?;
    d.set_item("premises", t.premises)?;
    d.set_item("conclusion", t.conclusion)?;
    d.set_item("flag", t.flag())?;
    Ok(d)
}

#[derive(FromPyObject)]
enum Probabilities {
    Exact(Vec<String>),
    Float(Vec<f64>),
}

/// A finite normal-form game with exact payoffs.
///
/// `Game(actions, payoffs)` takes one action-label list per player and a
/// dict from label tuples to payoff lists (ints, strings like "1/2", or
/// `fractions.Fraction`).
#[pyclass(name = "Game", module = "superrational_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGame {
    inner: Game,
}

#[pymethods]
impl PyGame {
    #[new]
    fn new(actions: Vec<Vec<String>>, payoffs: &Bound<'_, PyDict>) -> PyResult<Self> {
        let mut table: HashMap<Vec<String>, Vec<Rational>> = HashMap::new();
        for (key, value) in payoffs.iter() {
            let profile: Vec<String> = key.extract()?;
            let values = value
                .try_iter()?
                .map(|v| parse_rational(&v?.str()?.to_string()).map_err(err))
                .collect::<PyResult<Vec<Rational>>>()?;
            table.insert(profile, values);
        }
        let mut missing = None;
        let game = Game::from_fn(actions.clone(), |p| {
            let key: Vec<String> = p.iter().enumerate().map(|(i, &a)| actions[i][a].clone()).collect();
            match table.get(&key) {
                Some(v) => v.clone(),
                None => {
                    missing.get_or_insert(key);
                    Vec::new()
                }
            }
        });
        if let Some(key) = missing {
            return Err(PyValueError::new_err(format!("payoff for profile {key:?} is missing")));
        }
        Ok(PyGame {
            inner: game.map_err(err)?,
        })
    }

    /// Parses the JSON game format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGame {
            inner: parse_game(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        game_to_json(&self.inner)
    }

    #[getter]
    fn players(&self) -> usize {
        self.inner.players()
    }

    #[getter]
    fn actions(&self) -> Vec<Vec<String>> {
        self.inner.action_lists().to_vec()
    }

    /// Payoff vector of a profile given by action labels.
    fn payoff(&self, profile: Vec<String>) -> PyResult<Vec<String>> {
        let p = self.inner.profile_from_labels(&profile).map_err(err)?;
        Ok(self.inner.payoff_vector(&p.0).iter().map(format_rational).collect())
    }

    fn is_symmetric(&self) -> bool {
        is_symmetric(&self.inner).is_symmetric()
    }

    fn diagonal(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(labels(&self.inner, &diagonal(&self.inner).map_err(err)?))
    }

    fn sr_justifiable_actions(&self) -> PyResult<Vec<String>> {
        let actions = sr_justifiable_actions(&self.inner).map_err(err)?;
        Ok(actions.iter().map(|&a| self.inner.actions(0)[a].clone()).collect())
    }

    fn superrational_profiles(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(labels(&self.inner, &superrational_profiles(&self.inner).map_err(err)?))
    }

    fn pure_nash(&self) -> Vec<Vec<String>> {
        labels(&self.inner, &pure_nash(&self.inner))
    }

    /// `Eπ_player(σ, …, σ)`: a rational string for string probabilities,
    /// a float for float probabilities.
    fn diagonal_expected_payoff<'py>(
        &self,
        py: Python<'py>,
        strategy: Probabilities,
        player: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let i = player_index(player, self.inner.players())?;
        let s = match strategy {
            Probabilities::Exact(p) => MixedStrategy::exact(
                p.iter()
                    .map(|x| parse_rational(x))
                    .collect::<superrational::Result<Vec<_>>>()
                    .map_err(err)?,
            ),
            Probabilities::Float(p) => MixedStrategy::float(p),
        }
        .map_err(err)?;
        Ok(match diagonal_expected_payoff(&self.inner, &s, i).map_err(err)? {
            Real::Exact(q) => format_rational(&q).into_pyobject(py)?.into_any(),
            Real::Float(x) => x.into_pyobject(py)?.into_any(),
        })
    }

    /// Superrational mixed strategies found by the optimizer.
    #[pyo3(signature = (tol = 1e-9, grid = 101, starts = 32, seed = 0))]
    fn superrational_mixed<'py>(
        &self,
        py: Python<'py>,
        tol: f64,
        grid: usize,
        starts: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let report = superrational_mixed(&self.inner, &config(tol, grid, starts, seed)?).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item(
            "status",
            match report.status {
                SrMixedStatus::Found => "found",
                SrMixedStatus::Empty => "empty",
            },
        )?;
        let maximizers = PyList::empty(py);
        for m in &report.maximizers {
            let e = PyDict::new(py);
            e.set_item("strategy", m.strategy.clone())?;
            e.set_item("value", m.value)?;
            e.set_item("player_values", m.values.clone())?;
            e.set_item("stationarity", m.stationarity)?;
            e.set_item("converged", m.converged)?;
            maximizers.append(e)?;
        }
        d.set_item("maximizers", maximizers)?;
        let per_player = PyList::empty(py);
        for p in &report.per_player {
            let e = PyDict::new(py);
            e.set_item("player", p.player + 1)?;
            e.set_item("maximizer", p.maximizer.clone())?;
            e.set_item("value", p.value)?;
            e.set_item("interior_minimizer", p.interior_minimizer.clone())?;
            per_player.append(e)?;
        }
        d.set_item("per_player", per_player)?;
        d.set_item("minimax_gap", report.minimax_gap)?;
        d.set_item("nonconvergence", report.nonconvergence)?;
        Ok(d)
    }

    /// Mixed Nash equilibria of a two-player game, as rational strings.
    fn mixed_nash_2p<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let result = mixed_nash_2p(&self.inner).map_err(err)?;
        let equilibria: Vec<Vec<Vec<String>>> = result
            .equilibria
            .iter()
            .map(|eq| {
                eq.0.iter()
                    .map(|s| s.as_exact().unwrap_or_default().iter().map(format_rational).collect())
                    .collect()
            })
            .collect();
        let d = PyDict::new(py);
        d.set_item("equilibria", equilibria)?;
        d.set_item("degenerate", result.degenerate)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Game(players={}, actions={:?})", self.inner.players(), self.inner.action_lists())
    }
}

/// A probabilistic (`harsanyi`) or possibility (`bk`) type space.
#[pyclass(name = "TypeSpace", module = "superrational_py", frozen)]
pub struct PyTypeSpace {
    inner: TypeSpace,
    cfg: OptimizerConfig,
}

impl PyTypeSpace {
    fn harsanyi(&self) -> PyResult<&HarsanyiSpace> {
        match &self.inner {
            TypeSpace::Harsanyi(s) => Ok(s),
            TypeSpace::Bk(_) => Err(PyValueError::new_err("operation needs a harsanyi space")),
        }
    }

    fn bk(&self) -> PyResult<&BkSpace> {
        match &self.inner {
            TypeSpace::Bk(s) => Ok(s),
            TypeSpace::Harsanyi(_) => Err(PyValueError::new_err("operation needs a bk space")),
        }
    }

    fn type_of(&self, player: usize, label: &str) -> PyResult<usize> {
        self.inner.type_lists()[player]
            .iter()
            .position(|t| t == label)
            .ok_or_else(|| PyValueError::new_err(format!("player {} has no type {label:?}", player + 1)))
    }

    fn choice_label(&self, player: usize, c: usize) -> String {
        self.inner.mode().choice_label(self.inner.game(), player, c)
    }
}

#[pymethods]
impl PyTypeSpace {
    /// Parses the JSON type-space format; a game given as a path is
    /// resolved against `base_dir`.
    #[staticmethod]
    #[pyo3(signature = (text, base_dir = None, tol = 1e-9, grid = 101, starts = 32, seed = 0))]
    fn from_json(
        text: &str,
        base_dir: Option<String>,
        tol: f64,
        grid: usize,
        starts: usize,
        seed: u64,
    ) -> PyResult<Self> {
        let inner = parse_type_space(text, base_dir.as_deref().map(Path::new)).map_err(err)?;
        Ok(PyTypeSpace {
            inner,
            cfg: config(tol, grid, starts, seed)?,
        })
    }

    /// One self-referential superrational type per player.
    #[staticmethod]
    #[pyo3(signature = (game, kind = "harsanyi", mixed = false, tol = 1e-9, grid = 101, starts = 32, seed = 0))]
    fn superrational(
        game: &PyGame,
        kind: &str,
        mixed: bool,
        tol: f64,
        grid: usize,
        starts: usize,
        seed: u64,
    ) -> PyResult<Self> {
        let cfg = config(tol, grid, starts, seed)?;
        let g = &game.inner;
        let inner = match (kind, mixed) {
            ("harsanyi", false) => TypeSpace::Harsanyi(make_superrational_space(g).map_err(err)?),
            ("harsanyi", true) => TypeSpace::Harsanyi(make_superrational_space_mixed(g, &cfg).map_err(err)?),
            ("bk", false) => TypeSpace::Bk(make_superrational_bk_space(g).map_err(err)?),
            ("bk", true) => TypeSpace::Bk(make_superrational_bk_space_mixed(g, &cfg).map_err(err)?),
            _ => return Err(PyValueError::new_err(format!("unknown kind {kind:?}, expected harsanyi or bk"))),
        };
        Ok(PyTypeSpace { inner, cfg })
    }

    fn to_json(&self) -> String {
        type_space_to_json(&self.inner)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner {
            TypeSpace::Harsanyi(_) => "harsanyi",
            TypeSpace::Bk(_) => "bk",
        }
    }

    #[getter]
    fn mode(&self) -> &'static str {
        self.inner.mode().name()
    }

    #[getter]
    fn types(&self) -> Vec<Vec<String>> {
        self.inner.type_lists().to_vec()
    }

    #[getter]
    fn game(&self) -> PyGame {
        PyGame {
            inner: self.inner.game().clone(),
        }
    }

    /// Superrational-type verdict of every type, for spaces whose players
    /// share one type label set: `(player, type, choice or None)`.
    fn type_verdicts(&self) -> PyResult<Vec<(usize, String, Option<String>)>> {
        let lists = self.inner.type_lists();
        let mut out = Vec::new();
        match &self.inner {
            TypeSpace::Harsanyi(s) => {
                let checker = HarsanyiChecker::new(s, &self.cfg);
                for (i, types) in lists.iter().enumerate() {
                    for (t, label) in types.iter().enumerate() {
                        let choice = match checker.type_verdict(i, t).map_err(err)? {
                            TypeVerdict::Superrational { choice } => Some(self.choice_label(i, choice)),
                            TypeVerdict::NotSuperrational(_) => None,
                        };
                        out.push((i + 1, label.clone(), choice));
                    }
                }
            }
            TypeSpace::Bk(s) => {
                let checker = BkChecker::new(s, &self.cfg);
                for (i, types) in lists.iter().enumerate() {
                    for (t, label) in types.iter().enumerate() {
                        let choice = match checker.is_bk_superrational_type(i, t).map_err(err)? {
                            BkTypeVerdict::Superrational { choice } => Some(self.choice_label(i, choice)),
                            BkTypeVerdict::NotSuperrational(_) => None,
                        };
                        out.push((i + 1, label.clone(), choice));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Plays a type profile with Bayesian strategies `{player: {type:
    /// choice}}`; without strategies, each type plays the choice it is
    /// certain of.
    #[pyo3(signature = (types, strategies = None))]
    fn play<'py>(
        &self,
        py: Python<'py>,
        types: Vec<String>,
        strategies: Option<HashMap<usize, HashMap<String, String>>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let space = self.harsanyi()?;
        let n = space.game().players();
        if types.len() != n {
            return Err(PyValueError::new_err(format!("{} types given for {n} players", types.len())));
        }
        let profile = types
            .iter()
            .enumerate()
            .map(|(i, l)| self.type_of(i, l))
            .collect::<PyResult<Vec<_>>>()?;
        let checker = HarsanyiChecker::new(space, &self.cfg);
        let strategies = match strategies {
            None => (0..n)
                .map(|i| checker.superrational_strategy(i).map_err(err))
                .collect::<PyResult<Vec<_>>>()?,
            Some(map) => {
                let kind = if space.mode().is_mixed() {
                    StrategyKind::Candidates
                } else {
                    StrategyKind::Actions
                };
                (0..n)
                    .map(|i| {
                        let per_type = map
                            .get(&(i + 1))
                            .ok_or_else(|| PyValueError::new_err(format!("no strategy for player {}", i + 1)))?;
                        let choices = space
                            .types(i)
                            .iter()
                            .map(|t| {
                                let c = per_type.get(t).ok_or_else(|| {
                                    PyValueError::new_err(format!("strategy of player {} misses type {t:?}", i + 1))
                                })?;
                                space.mode().parse_choice(space.game(), i, c).map_err(err)
                            })
                            .collect::<PyResult<Vec<_>>>()?;
                        Ok(BayesianStrategy { player: i, kind, choices })
                    })
                    .collect::<PyResult<Vec<_>>>()?
            }
        };
        let out = checker.play(&profile, &strategies).map_err(err)?;
        let choices = out.choices.iter().enumerate().map(|(i, &c)| self.choice_label(i, c)).collect();
        theorem(py, choices, out.theorem)
    }

    /// Blocks of the greatest identification relation, as type labels.
    fn identification_blocks(&self) -> PyResult<Vec<Vec<String>>> {
        let space = self.bk()?;
        Ok(BkChecker::new(space, &self.cfg).greatest_relation().block_labels(space))
    }

    /// State test for `player` in state `(choice, type)`. `test` is
    /// `"same-types"`, `"strict"` or `"weak"`.
    #[pyo3(signature = (player, choice, type_label, test = "strict"))]
    fn is_superrational_state(&self, player: usize, choice: &str, type_label: &str, test: &str) -> PyResult<bool> {
        let space = self.bk()?;
        let i = player_index(player, space.players())?;
        let st = PlayerState {
            choice: space.mode().parse_choice(space.game(), i, choice).map_err(err)?,
            type_index: self.type_of(i, type_label)?,
        };
        let checker = BkChecker::new(space, &self.cfg);
        match test {
            "same-types" => checker.is_superrational_state(i, st),
            "strict" => checker.is_superrational_state_dissimilar(i, st, true),
            "weak" => checker.is_superrational_state_dissimilar(i, st, false),
            _ => return Err(PyValueError::new_err(format!("unknown test {test:?}"))),
        }
        .map_err(err)
    }

    /// Outcome of a state of the world written `"C:r,C:u"`.
    fn bk_outcome<'py>(&self, py: Python<'py>, states: &str) -> PyResult<Bound<'py, PyDict>> {
        let space = self.bk()?;
        let parsed = parse_states(states, space).map_err(err)?;
        let out = BkChecker::new(space, &self.cfg).bk_outcome(&parsed).map_err(err)?;
        let choices = out.choices.iter().enumerate().map(|(i, &c)| self.choice_label(i, c)).collect();
        theorem(py, choices, out.theorem)
    }

    fn __repr__(&self) -> String {
        format!(
            "TypeSpace(kind={:?}, mode={:?}, types={:?})",
            self.kind(),
            self.mode(),
            self.inner.type_lists()
        )
    }
}

#[pymodule]
fn superrational_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGame>()?;
    m.add_class::<PyTypeSpace>()?;
    Ok(())
}
