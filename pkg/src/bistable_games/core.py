"""Bistable probabilities, payoff structures and joint outcome distributions.

Outcome ordering is fixed everywhere in the package as
``(Y, Y), (Y, X), (X, Y), (X, X)`` with Alice's option first. "Y" is the
first option (index 0).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

ALGEBRAIC_TOL = 1e-12
CHAINED_TOL = 1e-9


class DomainError(ValueError):
    """A numeric input lies outside the domain of an operation."""


class DegenerateError(ArithmeticError):
    """A closed-form solution does not exist for the given inputs."""


class QuasiProbabilityError(ValueError):
    """Sampling was requested from a non-positive measurement."""


class ConfigError(ValueError):
    """An invalid run configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"config field '{field}': {message}")
        self.field = field


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0 or value > 1.0:
        raise DomainError(f"{name}={value!r} must lie in [0, 1]")
    return value


@dataclass(frozen=True)
class BistableParam:
    """The (ir)rationality deformation of one agent.

    ``k = 1`` is rational, ``k = 0.5`` is maximal indecision and ``k = 0``
    contradicts the rational choice outright.
    """

    k: float

    def __post_init__(self):
        _check_unit("k", self.k)

    @property
    def quantum_valid(self) -> bool:
        return 0.5 <= self.k <= 1.0


@dataclass(frozen=True)
class Probability:
    value: float

    def __post_init__(self):
        _check_unit("probability", self.value)


def _as_float(x) -> float:
    if isinstance(x, (BistableParam,)):
        return x.k
    if isinstance(x, Probability):
        return x.value
    return float(x)


def bistable_transform(p, k) -> float:
    """Deformed probability ``1 - p - k + 2kp`` of choosing the rational option."""
    p = _check_unit("p", _as_float(p))
    k = _check_unit("k", _as_float(k))
    return 1.0 - p - k + 2.0 * k * p


def complement_transform(p, k) -> float:
    """Deformed probability ``p + k - 2kp`` of the alternative option."""
    p = _check_unit("p", _as_float(p))
    k = _check_unit("k", _as_float(k))
    return p + k - 2.0 * k * p


def inverse_bistable(t: float, k: float) -> float:
    """Solve ``bistable_transform(p, k) = t`` for ``p`` (no range check on the result)."""
    if 2.0 * k - 1.0 == 0.0:
        raise DegenerateError("the bistable transform is constant at k = 0.5")
    return (t - 1.0 + k) / (2.0 * k - 1.0)


@dataclass(frozen=True)
class PayoffMatrix:
    """Symmetric two-option payoffs.

    Alice receives ``(alpha, beta, gamma, delta)`` for outcomes
    ``(Y,Y), (Y,X), (X,Y), (X,X)``; Bob receives ``(alpha, gamma, beta, delta)``.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"payoff {name} must be finite")

    @property
    def alice(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    @property
    def bob(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.gamma, self.beta, self.delta)

    @property
    def gamma_coef(self) -> float:
        """``alpha - beta + delta - gamma``, the slope of both best-response brackets."""
        return self.alpha - self.beta + self.delta - self.gamma

    @property
    def total(self) -> float:
        return self.alpha + self.beta + self.gamma + self.delta

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "delta": self.delta}


class GamePreset(enum.Enum):
    PRISONERS_DILEMMA = "PD"
    STAG_HUNT = "SH"
    CHICKEN = "CG"
    CUSTOM = "custom"


# Y is index 0 in every preset.
PRESET_LABELS = {
    GamePreset.PRISONERS_DILEMMA: {"Y": "cooperate", "X": "defect"},
    GamePreset.STAG_HUNT: {"Y": "stag", "X": "rabbit"},
    GamePreset.CHICKEN: {"Y": "swerve", "X": "straight"},
    GamePreset.CUSTOM: {"Y": "Y", "X": "X"},
}

DEFAULT_PAYOFFS = {
    GamePreset.PRISONERS_DILEMMA: PayoffMatrix(alpha=3.0, beta=0.0, gamma=1.0, delta=5.0),
    GamePreset.STAG_HUNT: PayoffMatrix(alpha=4.0, beta=0.0, gamma=3.0, delta=2.0),
    GamePreset.CHICKEN: PayoffMatrix(alpha=3.0, beta=1.0, gamma=4.0, delta=-10.0),
}


@dataclass
class ValidityReport:
    preset: GamePreset
    checks: dict[str, bool] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return all(self.checks.values())

    @property
    def violated(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]


def validate_preset(m: PayoffMatrix, g: GamePreset) -> ValidityReport:
    """Check a payoff matrix against the ordering constraints of a preset.

    Never raises; inspect ``report.valid`` and ``report.violated``.
    """
    a, b, c, d = m.alpha, m.beta, m.gamma, m.delta
    report = ValidityReport(g)
    if g is GamePreset.PRISONERS_DILEMMA:
        report.checks = {
            "delta > alpha": d > a,
            "alpha > gamma": a > c,
            "gamma > beta": c > b,
            "2*alpha > beta + gamma": 2 * a > b + c,
        }
    elif g is GamePreset.STAG_HUNT:
        report.checks = {
            "alpha > gamma": a > c,
            "gamma >= delta": c >= d,
            "delta > beta": d > b,
            "gamma + delta > alpha + beta": c + d > a + b,
        }
    elif g is GamePreset.CHICKEN:
        report.checks = {
            "gamma > alpha": c > a,
            "alpha > beta": a > b,
            "beta > delta": b > d,
            "beta > 0": b > 0,
            # vacuous whenever gamma > 0; kept as printed
            "beta < gamma + beta": b < c + b,
        }
        if b > d and (b - d) < (c - b):
            report.warnings.append(
                "beta - delta < gamma - beta: 'beta much greater than delta' is only weakly satisfied"
            )
    return report


class ScenarioMode(enum.Enum):
    INDEPENDENT = "independent"
    SYMMETRIC = "symmetric"
    ONE_RATIONAL = "one_rational"
    COMPLEMENTARY = "complementary"


@dataclass(frozen=True)
class ScenarioBinding:
    """How Bob's parameter ``kprime`` is tied to Alice's ``k``."""

    mode: ScenarioMode
    k: float
    kprime: float | None = None

    def __post_init__(self):
        _check_unit("k", self.k)
        if self.mode is ScenarioMode.INDEPENDENT:
            if self.kprime is None:
                raise DomainError("independent scenario needs kprime")
            _check_unit("kprime", self.kprime)

    def resolve(self) -> tuple[float, float]:
        k = float(self.k)
        if self.mode is ScenarioMode.INDEPENDENT:
            return k, float(self.kprime)
        if self.mode is ScenarioMode.SYMMETRIC:
            return k, k
        if self.mode is ScenarioMode.ONE_RATIONAL:
            return k, 1.0
        return k, 1.0 - k

    def with_k(self, k: float) -> "ScenarioBinding":
        return ScenarioBinding(self.mode, k, self.kprime)


@dataclass(frozen=True)
class OutcomeDistribution:
    eps1: float
    eps2: float
    eps3: float
    eps4: float

    def __post_init__(self):
        for e in self.as_tuple():
            if e < -ALGEBRAIC_TOL or e > 1 + ALGEBRAIC_TOL:
                raise DomainError(f"outcome probability {e!r} outside [0, 1]")
        if abs(sum(self.as_tuple()) - 1.0) > ALGEBRAIC_TOL:
            raise DomainError("outcome probabilities must sum to 1")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.eps1, self.eps2, self.eps3, self.eps4)

    def __iter__(self):
        return iter(self.as_tuple())


def outcome_distribution(p, q, k, kprime) -> OutcomeDistribution:
    pk = bistable_transform(p, k)
    qk = bistable_transform(q, kprime)
    return OutcomeDistribution(pk * qk, pk * (1 - qk), (1 - pk) * qk, (1 - pk) * (1 - qk))


def factorizability_defect(d: OutcomeDistribution | tuple) -> float:
    """``eps1*eps4 - eps2*eps3``; zero iff the joint law is a product of its marginals."""
    e1, e2, e3, e4 = tuple(d)
    return e1 * e4 - e2 * e3

