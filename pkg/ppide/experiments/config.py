"""Experiment configuration: TOML file, ``--set`` overrides, strict key checks.

A config has the sections ``experiment``, ``model``, ``market``, ``grid``,
``scheme``, ``sweep`` and ``basic``. Missing keys take the defaults from
:mod:`ppide.constants`; unknown sections or keys are rejected.
"""

from __future__ import annotations

import copy
import hashlib
import json
import math
import tomllib
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from ppide import constants as C
from ppide.core.model import GtspParams, JumpSide, MarketConfig
from ppide.utils.exceptions import ConfigError, ParameterError
from ppide.utils.logger import get_logger

_log = get_logger(__name__)

# Keys whose default is None accept a float.
_SCHEMA: dict[str, dict[str, Any]] = {
    "experiment": {
        "name": "fd_vs_fft",
        "output": C.DEFAULT_OUTPUT_DIR,
    },
    "model": {
        "lambda_plus": C.DEFAULT_LAMBDA,
        "lambda_minus": C.DEFAULT_LAMBDA,
        "nu_plus": C.DEFAULT_NU,
        "nu_minus": C.DEFAULT_NU,
        "alpha_plus": C.DEFAULT_ALPHA,
        "alpha_minus": C.DEFAULT_ALPHA,
        "v_r": 1.0,
        "v_l": 1.0,
    },
    "market": {
        "strike": C.DEFAULT_STRIKE,
        "rate": C.DEFAULT_RATE,
        "vol": C.DEFAULT_VOL,
        "maturity": C.DEFAULT_MATURITY,
        "option_kind": C.DEFAULT_OPTION_KIND,
        "seed_time": None,
    },
    "grid": {
        "s_min": C.DEFAULT_S_MIN,
        "s_max": C.DEFAULT_S_MAX,
        "n_space": C.DEFAULT_N_SPACE,
        "n_time": C.DEFAULT_N_TIME,
        "x_star": C.DEFAULT_X_STAR,
        "fft_sizes": list(C.DEFAULT_FFT_SIZES),
    },
    "scheme": {
        "pade": C.DEFAULT_PADE,
        "rhs_sign": C.DEFAULT_RHS_SIGN,
        "delta_weight": C.EXPERIMENT_DELTA_WEIGHT,
        "compensated": False,
        "compensation": C.DEFAULT_COMPENSATION,
        "side": JumpSide.POSITIVE.value,
        "sides": [JumpSide.POSITIVE.value],
        "nu_star": C.DEFAULT_NU_STAR,
        "m_intervals": C.DEFAULT_M_INTERVALS,
        "time_order": C.DEFAULT_TIME_ORDER,
    },
    "sweep": {
        "alpha_real": C.DEFAULT_ALPHA_REAL,
        "anchors": [],
        "alpha_scaling": C.DEFAULT_ALPHA_SCALING,
        "reference_n": C.DEFAULT_REFERENCE_N,
        "nu_star_values": list(C.DEFAULT_NU_STAR_VALUES),
        "m_values": list(C.DEFAULT_M_VALUES),
        "infvar_nu": C.DEFAULT_INFVAR_NU,
        "stability_h": list(C.DEFAULT_STABILITY_H),
        "stability_theta": list(C.DEFAULT_STABILITY_THETA),
        "stability_alpha": list(C.DEFAULT_STABILITY_ALPHA),
        "stability_nu": list(C.DEFAULT_STABILITY_NU),
        "stability_n": C.DEFAULT_STABILITY_N,
        "vg_h": list(C.DEFAULT_VG_STABILITY_H),
        "test_alphas": list(C.DEFAULT_TEST_ALPHAS),
    },
    "basic": {
        "alpha": C.DEFAULT_BASIC_ALPHA,
        "lam": C.DEFAULT_BASIC_LAMBDA,
        "x_min": C.DEFAULT_BASIC_X_MIN,
        "x_max": C.DEFAULT_BASIC_X_MAX,
    },
}


# ──────────────────────────────────────────────────────────────────────────────
# Typed sections
# ──────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class GridSettings:
    s_min: float
    s_max: float
    n_space: int
    n_time: int
    x_star: float
    fft_sizes: tuple[int, ...]

    @property
    def x_min(self) -> float:
        return math.log(self.s_min)

    @property
    def x_max(self) -> float:
        return math.log(self.s_max)


@dataclass(frozen=True)
class SchemeSettings:
    pade: str
    rhs_sign: int
    delta_weight: float
    compensated: bool
    compensation: str
    side: JumpSide
    sides: tuple[JumpSide, ...]
    nu_star: float
    m_intervals: int
    time_order: str


@dataclass(frozen=True)
class SweepSettings:
    alpha_real: float
    anchors: tuple[int, ...]
    alpha_scaling: str
    reference_n: int
    nu_star_values: tuple[float, ...]
    m_values: tuple[int, ...]
    infvar_nu: float
    stability_h: tuple[float, ...]
    stability_theta: tuple[float, ...]
    stability_alpha: tuple[int, ...]
    stability_nu: tuple[float, ...]
    stability_n: int
    vg_h: tuple[float, ...]
    test_alphas: tuple[float, ...]


@dataclass(frozen=True)
class BasicSettings:
    alpha: float
    lam: float
    x_min: float
    x_max: float


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved experiment configuration.

    ``resolved`` is the merged section/key mapping the typed fields were built
    from; it is what the CSV header echoes and what :attr:`config_hash` digests.
    """

    experiment: str
    model: GtspParams
    market: MarketConfig
    grid: GridSettings
    scheme: SchemeSettings
    sweep: SweepSettings
    basic: BasicSettings
    output_path: Path
    resolved: Mapping[str, Mapping[str, Any]]

    @property
    def config_hash(self) -> str:
        canonical = json.dumps(self.resolved, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def flat_items(self) -> list[tuple[str, Any]]:
        """``section.key`` / value pairs in a stable order."""
        return [(f"{s}.{k}", v) for s in _SCHEMA for k, v in self.resolved[s].items()]


# ──────────────────────────────────────────────────────────────────────────────
# Parsing helpers
# ──────────────────────────────────────────────────────────────────────────────

def _coerce(key: str, default: Any, value: Any) -> Any:
    """Coerce *value* to the type of *default*; ints are accepted where floats are."""
    if default is None:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(key, f"expected a number, got {value!r}")
        return float(value)
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(key, f"expected true/false, got {value!r}")
        return value
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(key, f"expected an integer, got {value!r}")
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(key, f"expected a number, got {value!r}")
        return float(value)
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(key, f"expected a string, got {value!r}")
        return value
    if isinstance(default, list):
        if not isinstance(value, list):
            raise ConfigError(key, f"expected a list, got {value!r}")
        return list(value)
    raise ConfigError(key, f"unsupported value {value!r}")


def _merge(resolved: dict[str, dict[str, Any]], data: Mapping[str, Any], origin: str) -> None:
    for section, body in data.items():
        if section not in _SCHEMA:
            raise ConfigError(section, f"unknown section in {origin}")
        if not isinstance(body, Mapping):
            raise ConfigError(section, "section must be a table")
        for key, value in body.items():
            if key not in _SCHEMA[section]:
                raise ConfigError(f"{section}.{key}", f"unknown key in {origin}")
            resolved[section][key] = _coerce(f"{section}.{key}", _SCHEMA[section][key], value)


def parse_override(item: str) -> tuple[str, str, Any]:
    """Split ``section.key=value``; the value is read as TOML, else kept as a bare string."""
    target, sep, raw = item.partition("=")
    section, dot, key = target.strip().partition(".")
    if not sep or not dot or not section or not key:
        raise ConfigError(item, "override must look like section.key=value")
    try:
        value = tomllib.loads(f"v = {raw.strip()}")["v"]
    except tomllib.TOMLDecodeError:
        value = raw.strip()
    return section, key, value


def read_config_file(path: Path) -> dict[str, Any]:
    """Load a TOML config file.

    Raises:
        ConfigError: If the file is missing or not valid TOML.
    """
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(str(path), "file not found") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(str(path), f"invalid TOML: {exc}") from exc


def _side(key: str, value: str) -> JumpSide:
    try:
        return JumpSide(value)
    except ValueError as exc:
        raise ConfigError(key, f"unknown side {value!r}") from exc


def _build(resolved: dict[str, dict[str, Any]], out_dir: Path | None) -> ExperimentConfig:
    e, g, s, w, b = (resolved[k] for k in ("experiment", "grid", "scheme", "sweep", "basic"))
    if e["name"] not in C.EXPERIMENTS:
        raise ConfigError("experiment.name", f"must be one of {C.EXPERIMENTS}")
    for key, allowed in (("pade", C.PADE_KINDS), ("compensation", C.COMPENSATION_MODES), ("time_order", C.TIME_ORDERS)):
        if s[key] not in allowed:
            raise ConfigError(f"scheme.{key}", f"must be one of {allowed}")
    if w["alpha_scaling"] not in C.ALPHA_SCALINGS:
        raise ConfigError("sweep.alpha_scaling", f"must be one of {C.ALPHA_SCALINGS}")
    if g["n_time"] < 0:
        raise ConfigError("grid.n_time", "must be nonnegative")
    if not 0 < g["s_min"] < g["s_max"]:
        raise ConfigError("grid.s_min", "need 0 < s_min < s_max")

    try:
        model = GtspParams(**resolved["model"])
        market = MarketConfig(**resolved["market"])
    except ParameterError as exc:
        raise ConfigError(exc.name, exc.reason) from exc

    return ExperimentConfig(
        experiment=e["name"],
        model=model,
        market=market,
        grid=GridSettings(
            g["s_min"], g["s_max"], g["n_space"], g["n_time"], g["x_star"], tuple(int(n) for n in g["fft_sizes"])
        ),
        scheme=SchemeSettings(
            pade=s["pade"],
            rhs_sign=s["rhs_sign"],
            delta_weight=s["delta_weight"],
            compensated=s["compensated"],
            compensation=s["compensation"],
            side=_side("scheme.side", s["side"]),
            sides=tuple(_side("scheme.sides", v) for v in s["sides"]),
            nu_star=s["nu_star"],
            m_intervals=s["m_intervals"],
            time_order=s["time_order"],
        ),
        sweep=SweepSettings(
            alpha_real=w["alpha_real"],
            anchors=tuple(int(a) for a in w["anchors"]),
            alpha_scaling=w["alpha_scaling"],
            reference_n=w["reference_n"],
            nu_star_values=tuple(float(v) for v in w["nu_star_values"]),
            m_values=tuple(int(v) for v in w["m_values"]),
            infvar_nu=w["infvar_nu"],
            stability_h=tuple(float(v) for v in w["stability_h"]),
            stability_theta=tuple(float(v) for v in w["stability_theta"]),
            stability_alpha=tuple(int(v) for v in w["stability_alpha"]),
            stability_nu=tuple(float(v) for v in w["stability_nu"]),
            stability_n=w["stability_n"],
            vg_h=tuple(float(v) for v in w["vg_h"]),
            test_alphas=tuple(float(v) for v in w["test_alphas"]),
        ),
        basic=BasicSettings(b["alpha"], b["lam"], b["x_min"], b["x_max"]),
        output_path=out_dir if out_dir is not None else Path(e["output"]),
        resolved=resolved,
    )


# ──────────────────────────────────────────────────────────────────────────────
# Public API
# ──────────────────────────────────────────────────────────────────────────────

def default_config() -> dict[str, dict[str, Any]]:
    """Deep copy of the built-in defaults, section by section."""
    return copy.deepcopy(_SCHEMA)


def load_config(
    path: Path | None = None,
    overrides: Sequence[str] = (),
    out_dir: Path | None = None,
) -> ExperimentConfig:
    """Resolve defaults, then *path*, then each ``--set`` override, in that order.

    Raises:
        ConfigError: On unknown sections/keys, wrong value types, or invalid parameters.
    """
    resolved = default_config()
    if path is not None:
        _merge(resolved, read_config_file(path), str(path))
    for item in overrides:
        section, key, value = parse_override(item)
        _merge(resolved, {section: {key: value}}, "--set")
    cfg = _build(resolved, out_dir)
    _log.debug("Loaded config %s (hash %s)", path, cfg.config_hash[:12])
    return cfg
