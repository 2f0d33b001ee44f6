"""Run configuration: JSON loading, schema validation and flag overrides.

Precedence is built-in defaults, then the config file, then command-line flags.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .core import DEFAULT_PAYOFFS, ConfigError, DomainError, GamePreset, PayoffMatrix, ScenarioMode
from .quantum import QuantumGrid
from .sweep import Axis


def load_schema(name: str) -> dict:
    text = resources.files("bistable_games").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _field_path(path) -> str:
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def _schema_error(err: jsonschema.ValidationError) -> ConfigError:
    path = list(err.absolute_path)
    if err.validator == "additionalProperties" and isinstance(err.instance, dict):
        allowed = set(err.schema.get("properties", {}))
        extra = sorted(k for k in err.instance if k not in allowed)
        if extra:
            return ConfigError(_field_path(path + [extra[0]]), "unknown key")
    if err.validator == "required":
        missing = [k for k in err.validator_value if k not in err.instance]
        if missing:
            return ConfigError(_field_path(path + [missing[0]]), "required key is missing")
    return ConfigError(_field_path(path), err.message)


def validate_document(doc, schema_name: str = "run_config") -> None:
    validator = jsonschema.Draft202012Validator(load_schema(schema_name))
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        deepest = max(errors, key=lambda e: len(e.absolute_path))
        raise _schema_error(deepest)


def read_config_file(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("--config", f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<root>", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    validate_document(doc)
    return doc


@dataclass
class RunConfig:
    game: GamePreset = GamePreset.PRISONERS_DILEMMA
    payoffs: PayoffMatrix = field(default_factory=lambda: DEFAULT_PAYOFFS[GamePreset.PRISONERS_DILEMMA])
    scenario_mode: ScenarioMode = ScenarioMode.SYMMETRIC
    k: float | None = None
    kprime: float | None = None
    engine: str = "classical"
    axes: list[Axis] | None = None
    fixed: dict = field(default_factory=dict)
    grid: QuantumGrid = field(default_factory=QuantumGrid)
    include_phase: bool = False
    simulation: dict = field(default_factory=dict)
    claims: dict = field(default_factory=dict)
    seed: int = 0
    threads: int = 1
    format: str | None = None
    out: str | None = None

    def resolved_k(self, default: float) -> tuple[float, float]:
        k = default if self.k is None else self.k
        mode = self.scenario_mode
        if mode is ScenarioMode.INDEPENDENT:
            if self.kprime is None:
                raise ConfigError("scenario.kprime", "independent scenario needs kprime")
            return k, self.kprime
        if mode is ScenarioMode.SYMMETRIC:
            return k, k
        if mode is ScenarioMode.ONE_RATIONAL:
            return k, 1.0
        return k, 1.0 - k


def _axis(spec: dict) -> Axis:
    name = spec["name"]
    if "values" in spec:
        return Axis(name, tuple(spec["values"]))
    return Axis.linspace(name, spec["min"], spec["max"], spec["steps"])


def build_run_config(doc: dict | None = None, overrides: dict | None = None) -> RunConfig:
    """Merge a validated config document with flag overrides into a RunConfig."""
    doc = dict(doc or {})
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key in ("k", "kprime", "mode"):
            doc.setdefault("scenario", {})
            doc["scenario"] = dict(doc["scenario"], **{key: value})
        elif key in ("trials", "target"):
            doc["simulation"] = dict(doc.get("simulation", {}), **{key: value})
        else:
            doc[key] = value
    validate_document(doc)

    cfg = RunConfig()
    if "game" in doc:
        cfg.game = GamePreset(doc["game"])
    if "payoffs" in doc:
        try:
            cfg.payoffs = PayoffMatrix(**{k: float(v) for k, v in doc["payoffs"].items()})
        except DomainError as exc:
            raise ConfigError("payoffs", str(exc)) from exc
    elif cfg.game is GamePreset.CUSTOM:
        raise ConfigError("payoffs", "custom game needs explicit payoffs")
    else:
        cfg.payoffs = DEFAULT_PAYOFFS[cfg.game]
    scen = doc.get("scenario", {})
    if "mode" in scen:
        cfg.scenario_mode = ScenarioMode(scen["mode"])
    cfg.k = scen.get("k")
    cfg.kprime = scen.get("kprime")
    if cfg.scenario_mode is ScenarioMode.INDEPENDENT and cfg.kprime is None:
        raise ConfigError("scenario.kprime", "independent scenario needs kprime")
    cfg.engine = doc.get("engine", cfg.engine)
    if "axes" in doc:
        if not doc["axes"]:
            raise ConfigError("axes", "at least one axis is required")
        cfg.axes = [_axis(a) for a in doc["axes"]]
        names = [a.name for a in cfg.axes]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise ConfigError(f"axes.{sorted(dup)[0]}", "duplicate axis name")
    cfg.fixed = dict(doc.get("fixed", {}))
    if "grid" in doc:
        g = doc["grid"]
        cfg.grid = QuantumGrid(
            theta_points=g.get("theta_points", 181),
            phi_points=g.get("phi_points", 46),
            slack=g.get("slack", 1e-9),
            refine=g.get("refine", True),
        )
    cfg.include_phase = doc.get("include_phase", False)
    cfg.simulation = dict(doc.get("simulation", {}))
    cfg.claims = dict(doc.get("claims", {}))
    cfg.seed = doc.get("seed", cfg.seed)
    cfg.threads = doc.get("threads", cfg.threads)
    cfg.format = doc.get("format")
    cfg.out = doc.get("out")
    return cfg
