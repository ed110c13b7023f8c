"""Scenario configuration: JSON schema, strict validation, reference setup.

A scenario bundles the two demand components, named cost structures, named
fuzzy weights, a risk-factor grid, and (optionally) a visitor-simulation
block. Unknown keys are rejected everywhere so that typos in scenario files
cannot silently corrupt a reproduction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from .demand import GaussianComponent
from .fuzzy import TrapezoidalFuzzyNumber
from .newsvendor import CostStructure
from .reviews import PopulationConfig

DEFAULT_RATING_GRID = {"start": 0.5, "stop": 4.5, "step": 0.01}


class ConfigError(ValueError):
    """Invalid scenario configuration; carries the offending field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


@dataclass(frozen=True)
class ScenarioConfig:
    c1: GaussianComponent
    c2: GaussianComponent
    costs: tuple[tuple[str, CostStructure], ...]
    weights: tuple[tuple[str, TrapezoidalFuzzyNumber], ...]
    beta_grid: tuple[float, ...]
    simulation: PopulationConfig | None
    rating_grid: tuple[float, ...]
    output_dir: str


def _as_mapping(value: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(value, dict):
        raise ConfigError(path, f"expected an object, got {type(value).__name__}")
    return value


def _check_keys(obj: Mapping[str, Any], path: str, required: set[str], optional: set[str] = frozenset()) -> None:
    unknown = sorted(set(obj) - required - optional)
    if unknown:
        raise ConfigError(path, f"unknown key(s): {', '.join(unknown)}")
    missing = sorted(required - set(obj))
    if missing:
        raise ConfigError(path, f"missing key(s): {', '.join(missing)}")


def _number(obj: Mapping[str, Any], path: str, key: str) -> float:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}", f"expected a number, got {value!r}")
    return float(value)


def _integer(obj: Mapping[str, Any], path: str, key: str) -> int:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key}", f"expected an integer, got {value!r}")
    return value


def _name(obj: Mapping[str, Any], path: str) -> str:
    value = obj["name"]
    if not isinstance(value, str) or not value:
        raise ConfigError(f"{path}.name", "expected a non-empty string")
    return value


def _parse_components(raw: Any) -> tuple[GaussianComponent, GaussianComponent]:
    obj = _as_mapping(raw, "components")
    _check_keys(obj, "components", {"mu1", "sigma1", "mu2", "sigma2"})
    try:
        c1 = GaussianComponent(_number(obj, "components", "mu1"), _number(obj, "components", "sigma1"))
        c2 = GaussianComponent(_number(obj, "components", "mu2"), _number(obj, "components", "sigma2"))
    except ValueError as err:
        if isinstance(err, ConfigError):
            raise
        raise ConfigError("components", str(err)) from err
    return c1, c2


def _parse_costs(raw: Any) -> tuple[tuple[str, CostStructure], ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("costs", "expected a non-empty array")
    out = []
    for i, entry in enumerate(raw):
        path = f"costs[{i}]"
        obj = _as_mapping(entry, path)
        _check_keys(obj, path, {"name", "cost", "price", "salvage"})
        try:
            structure = CostStructure(
                _number(obj, path, "cost"),
                _number(obj, path, "price"),
                _number(obj, path, "salvage"),
            )
        except ValueError as err:
            if isinstance(err, ConfigError):
                raise
            raise ConfigError(path, str(err)) from err
        out.append((_name(obj, path), structure))
    _require_unique_names(out, "costs")
    return tuple(out)


def _parse_weights(raw: Any) -> tuple[tuple[str, TrapezoidalFuzzyNumber], ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("weights", "expected a non-empty array")
    out = []
    for i, entry in enumerate(raw):
        path = f"weights[{i}]"
        obj = _as_mapping(entry, path)
        _check_keys(obj, path, {"name", "legs"})
        legs = obj["legs"]
        if (
            not isinstance(legs, list)
            or len(legs) != 4
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in legs)
        ):
            raise ConfigError(f"{path}.legs", "expected four numbers")
        try:
            weight = TrapezoidalFuzzyNumber(*(float(v) for v in legs))
        except ValueError as err:
            raise ConfigError(f"{path}.legs", str(err)) from err
        if not weight.is_unit_weight():
            raise ConfigError(f"{path}.legs", "weight support must lie in [0, 1]")
        out.append((_name(obj, path), weight))
    _require_unique_names(out, "weights")
    return tuple(out)


def _require_unique_names(entries: list[tuple[str, Any]], path: str) -> None:
    names = [name for name, _ in entries]
    if len(set(names)) != len(names):
        raise ConfigError(path, "names must be unique")


def _parse_beta_grid(raw: Any) -> tuple[float, ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("beta_grid", "expected a non-empty array")
    grid = []
    for i, value in enumerate(raw):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"beta_grid[{i}]", f"expected a number, got {value!r}")
        value = float(value)
        if not 0.0 <= value <= 1.0:
            raise ConfigError(f"beta_grid[{i}]", f"must be in [0, 1], got {value}")
        grid.append(value)
    if any(grid[i] > grid[i + 1] for i in range(len(grid) - 1)):
        raise ConfigError("beta_grid", "must be sorted ascending")
    return tuple(grid)


def _parse_rating_grid(raw: Any, path: str) -> tuple[float, ...]:
    obj = _as_mapping(raw, path)
    _check_keys(obj, path, {"start", "stop", "step"})
    start = _number(obj, path, "start")
    stop = _number(obj, path, "stop")
    step = _number(obj, path, "step")
    if step <= 0 or stop < start:
        raise ConfigError(path, "need step > 0 and stop >= start")
    count = int(round((stop - start) / step)) + 1
    grid = tuple(start + i * step for i in range(count))
    if any(not 0.0 <= m <= 5.0 for m in grid):
        raise ConfigError(path, "ratings must stay in [0, 5]")
    return grid


def _parse_simulation(raw: Any) -> tuple[PopulationConfig, tuple[float, ...]]:
    path = "simulation"
    obj = _as_mapping(raw, path)
    _check_keys(
        obj,
        path,
        {
            "n_visitors", "prospect_fraction", "ric_fraction",
            "rsc_q_means", "prospect_q_means", "q_std", "mean_rating", "seed",
        },
        optional={"rating_grid"},
    )
    for key in ("rsc_q_means", "prospect_q_means"):
        pair = obj[key]
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in pair)
        ):
            raise ConfigError(f"{path}.{key}", "expected a pair of numbers")
    try:
        cfg = PopulationConfig(
            n_visitors=_integer(obj, path, "n_visitors"),
            prospect_fraction=_number(obj, path, "prospect_fraction"),
            ric_fraction=_number(obj, path, "ric_fraction"),
            rsc_q_means=tuple(float(v) for v in obj["rsc_q_means"]),
            prospect_q_means=tuple(float(v) for v in obj["prospect_q_means"]),
            q_std=_number(obj, path, "q_std"),
            mean_rating=_number(obj, path, "mean_rating"),
            seed=_integer(obj, path, "seed"),
        )
    except ValueError as err:
        if isinstance(err, ConfigError):
            raise
        raise ConfigError(path, str(err)) from err
    grid = _parse_rating_grid(obj.get("rating_grid", DEFAULT_RATING_GRID), f"{path}.rating_grid")
    return cfg, grid


def parse_scenario(raw: Any) -> ScenarioConfig:
    obj = _as_mapping(raw, "")
    _check_keys(
        obj,
        "",
        {"components", "costs", "weights", "beta_grid"},
        optional={"simulation", "output_dir"},
    )
    c1, c2 = _parse_components(obj["components"])
    simulation = None
    rating_grid = _parse_rating_grid(DEFAULT_RATING_GRID, "simulation.rating_grid")
    if "simulation" in obj:
        simulation, rating_grid = _parse_simulation(obj["simulation"])
    output_dir = obj.get("output_dir", "out")
    if not isinstance(output_dir, str) or not output_dir:
        raise ConfigError("output_dir", "expected a non-empty string")
    return ScenarioConfig(
        c1=c1,
        c2=c2,
        costs=_parse_costs(obj["costs"]),
        weights=_parse_weights(obj["weights"]),
        beta_grid=_parse_beta_grid(obj["beta_grid"]),
        simulation=simulation,
        rating_grid=rating_grid,
        output_dir=output_dir,
    )


def load_scenario(path: str | Path) -> ScenarioConfig:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ConfigError("", f"cannot read {path}: {err}") from err
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(
            "", f"invalid JSON at line {err.lineno} column {err.colno}: {err.msg}"
        ) from err
    return parse_scenario(raw)


def baseline_scenario_dict() -> dict:
    """Reference numerical study: boosted and historical demand hypotheses,
    high and low margins, the two study weights (plus the tighter variant of
    the second), and the visitor simulation that motivates them."""
    return {
        "components": {"mu1": 200.0, "sigma1": 30.0, "mu2": 100.0, "sigma2": 20.0},
        "costs": [
            {"name": "high_margin", "cost": 10.0, "price": 50.0, "salvage": 5.0},
            {"name": "low_margin", "cost": 10.0, "price": 12.0, "salvage": 5.0},
        ],
        "weights": [
            {"name": "case1", "legs": [0.1, 0.2, 0.4, 0.4]},
            {"name": "case2", "legs": [0.6, 0.7, 0.9, 0.95]},
            {"name": "case2_tight", "legs": [0.6, 0.7, 0.9, 0.9]},
        ],
        "beta_grid": [round(0.05 * i, 2) for i in range(21)],
        "simulation": {
            "n_visitors": 10000,
            "prospect_fraction": 0.2,
            "ric_fraction": 0.3,
            "rsc_q_means": [1.5, 2.5],
            "prospect_q_means": [3.0, 4.0],
            "q_std": 1.0,
            "mean_rating": 3.5,
            "seed": 20240501,
        },
        "output_dir": "out",
    }


def baseline_scenario() -> ScenarioConfig:
    return parse_scenario(baseline_scenario_dict())
