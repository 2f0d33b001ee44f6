"""Classical bistable games: utilities, Nash equilibria and the cooperation motive."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    ALGEBRAIC_TOL,
    CHAINED_TOL,
    ConfigError,
    DegenerateError,
    DomainError,
    PayoffMatrix,
    ScenarioBinding,
    ScenarioMode,
    _as_float,
    _check_unit,
    bistable_transform,
    inverse_bistable,
    outcome_distribution,
)
from .sweep import SweepResult, SweepSpec

GRID_POINTS = 101
NE_SLACK = 1e-9


class EquilibriumKind(enum.Enum):
    PURE = "pure"
    MIXED = "mixed"
    EVERYWHERE = "everywhere"


class Certification(enum.Enum):
    CLOSED_FORM = "closed_form"
    GRID_ORACLE = "grid_oracle"
    BOTH = "both"


@dataclass(frozen=True)
class EquilibriumPoint:
    """A Nash equilibrium ``(p_star, q_star)`` in rational-intent probabilities.

    ``p_star`` and ``q_star`` are ``None`` for the EVERYWHERE kind.
    """

    p_star: float | None
    q_star: float | None
    kind: EquilibriumKind
    certification: Certification = Certification.CLOSED_FORM

    def as_dict(self) -> dict:
        return {
            "p": self.p_star,
            "q": self.q_star,
            "kind": self.kind.value,
            "certification": self.certification.value,
        }


def utility_pair(m: PayoffMatrix, p, q, k, kprime) -> tuple[float, float]:
    e1, e2, e3, e4 = outcome_distribution(p, q, k, kprime)
    pi_a = m.alpha * e1 + m.beta * e2 + m.gamma * e3 + m.delta * e4
    pi_b = m.alpha * e1 + m.gamma * e2 + m.beta * e3 + m.delta * e4
    return pi_a, pi_b


def utility_arrays(m: PayoffMatrix, p, q, k, kprime):
    """Vectorised utilities; ``p``, ``q``, ``k``, ``kprime`` broadcast together."""
    p, q, k, kprime = (np.asarray(x, dtype=float) for x in (p, q, k, kprime))
    pk = 1.0 - p - k + 2.0 * k * p
    qk = 1.0 - q - kprime + 2.0 * kprime * q
    e1, e2, e3, e4 = pk * qk, pk * (1 - qk), (1 - pk) * qk, (1 - pk) * (1 - qk)
    pi_a = m.alpha * e1 + m.beta * e2 + m.gamma * e3 + m.delta * e4
    pi_b = m.alpha * e1 + m.gamma * e2 + m.beta * e3 + m.delta * e4
    return pi_a, pi_b


def best_response_coefficient(m: PayoffMatrix, opponent_prob, k_self, k_opp) -> float:
    """Derivative of a player's utility with respect to their own intent probability.

    Positive means the player's best response is to intend Y with certainty,
    negative means X, zero means indifference.
    """
    t = bistable_transform(opponent_prob, k_opp)
    k_self = _check_unit("k_self", _as_float(k_self))
    return (2.0 * k_self - 1.0) * (m.gamma_coef * t + m.beta - m.delta)


def _coefficient_line(m: PayoffMatrix, k_self: float, k_opp: float) -> tuple[float, float]:
    # coefficient(s) = intercept + slope * s, s the opponent's intent probability
    scale = 2.0 * k_self - 1.0
    intercept = scale * (m.gamma_coef * (1.0 - k_opp) + m.beta - m.delta)
    slope = scale * m.gamma_coef * (2.0 * k_opp - 1.0)
    return intercept, slope


def _zero_tol(m: PayoffMatrix) -> float:
    return ALGEBRAIC_TOL * max(1.0, abs(m.alpha), abs(m.beta), abs(m.gamma), abs(m.delta))


def mixed_root(m: PayoffMatrix, k: float, kprime: float) -> tuple[float, float]:
    """Unclipped interior indifference point ``(p*, q*)``.

    Raises DegenerateError when ``alpha - beta + delta - gamma = 0`` or either
    transform is non-invertible (``k = 0.5``).
    """
    g = m.gamma_coef
    if g == 0.0:
        raise DegenerateError("alpha - beta + delta - gamma = 0: no indifference point")
    t_star = (m.delta - m.beta) / g
    return inverse_bistable(t_star, k), inverse_bistable(t_star, kprime)


def find_mixed_ne(m: PayoffMatrix, k, kprime) -> EquilibriumPoint | None:
    """Mixed equilibrium obtained by inverting the bistable transform at the indifference point.

    Returns None when the payoffs give no indifference point or the root
    falls outside the unit square.
    """
    k = _check_unit("k", _as_float(k))
    kprime = _check_unit("kprime", _as_float(kprime))
    if m.gamma_coef == 0.0:
        return None
    p_star, q_star = mixed_root(m, k, kprime)
    eps = CHAINED_TOL
    if not (-eps <= p_star <= 1 + eps and -eps <= q_star <= 1 + eps):
        return None
    p_star = min(max(p_star, 0.0), 1.0)
    q_star = min(max(q_star, 0.0), 1.0)
    return EquilibriumPoint(p_star, q_star, EquilibriumKind.MIXED)


def _accepts(coef: float, choice: float, tol: float) -> bool:
    # choice 1 needs coef >= 0, choice 0 needs coef <= 0
    return coef >= -tol if choice == 1.0 else coef <= tol


def _identically_zero(line: tuple[float, float], tol: float) -> bool:
    return abs(line[0]) <= tol and abs(line[1]) <= tol


def _resolve(scenario) -> tuple[float, float]:
    if isinstance(scenario, ScenarioBinding):
        return scenario.resolve()
    k, kprime = scenario
    return _check_unit("k", k), _check_unit("kprime", kprime)


def find_equilibria(
    m: PayoffMatrix,
    scenario,
    *,
    certify: bool = True,
    grid_points: int = GRID_POINTS,
    slack: float = NE_SLACK,
) -> list[EquilibriumPoint]:
    """Enumerate the Nash equilibria of the bistable game.

    Candidates are the four pure corners (best-response sign checks) and the
    interior mixed point; a single EVERYWHERE point is returned when both
    players are indifferent to every profile.  With ``certify`` every point is
    re-checked against unilateral deviations on a ``grid_points`` grid.

    ``scenario`` is a ScenarioBinding or a resolved ``(k, kprime)`` pair.
    Continua of equilibria along an edge are described by
    :func:`equilibrium_segments`; only their endpoints appear here.
    """
    k, kprime = _resolve(scenario)
    tol = _zero_tol(m)
    line_a = _coefficient_line(m, k, kprime)
    line_b = _coefficient_line(m, kprime, k)

    if _identically_zero(line_a, tol) and _identically_zero(line_b, tol):
        cert = Certification.BOTH if certify else Certification.CLOSED_FORM
        return [EquilibriumPoint(None, None, EquilibriumKind.EVERYWHERE, cert)]

    points: list[EquilibriumPoint] = []
    for p in (0.0, 1.0):
        for q in (0.0, 1.0):
            coef_a = line_a[0] + line_a[1] * q
            coef_b = line_b[0] + line_b[1] * p
            if _accepts(coef_a, p, tol) and _accepts(coef_b, q, tol):
                points.append(EquilibriumPoint(p, q, EquilibriumKind.PURE))

    if not (2 * k - 1 == 0 or 2 * kprime - 1 == 0):
        mixed = find_mixed_ne(m, k, kprime)
        if mixed is not None and not any(
            abs(mixed.p_star - e.p_star) <= CHAINED_TOL and abs(mixed.q_star - e.q_star) <= CHAINED_TOL
            for e in points
        ):
            points.append(mixed)

    if certify:
        points = [_certify(m, e, k, kprime, grid_points, slack) for e in points]
    return points


def _certify(m, e: EquilibriumPoint, k, kprime, n, slack) -> EquilibriumPoint:
    gain_a, gain_b = deviation_gains(m, e.p_star, e.q_star, k, kprime, n)
    cert = Certification.BOTH if max(gain_a, gain_b) <= slack else Certification.CLOSED_FORM
    return EquilibriumPoint(e.p_star, e.q_star, e.kind, cert)


def equilibrium_segments(m: PayoffMatrix, scenario) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Line segments of equilibria, each ``((p0, q0), (p1, q1))``.

    Segments appear when a player is indifferent along a whole edge of the
    unit square, or against every opponent strategy (e.g. their ``k = 0.5``).
    Their endpoints are also returned by :func:`find_equilibria`.  Empty for
    generic payoffs and for the EVERYWHERE case.
    """
    k, kprime = _resolve(scenario)
    tol = _zero_tol(m)
    line_a = _coefficient_line(m, k, kprime)
    line_b = _coefficient_line(m, kprime, k)
    zero_a, zero_b = _identically_zero(line_a, tol), _identically_zero(line_b, tol)
    if zero_a and zero_b:
        return []
    if zero_a:
        # Bob's coefficient is then constant in p
        q0 = 1.0 if line_b[0] > 0 else 0.0
        return [((0.0, q0), (1.0, q0))]
    if zero_b:
        p0 = 1.0 if line_a[0] > 0 else 0.0
        return [((p0, 0.0), (p0, 1.0))]

    segments = []
    # Alice indifferent at an edge q0: any p for which Bob still accepts q0
    for q0 in _edge_roots(line_a, tol):
        lo_hi = _accepting_interval(line_b, q0, tol)
        if lo_hi is not None and lo_hi[1] - lo_hi[0] > tol:
            segments.append(((lo_hi[0], q0), (lo_hi[1], q0)))
    for p0 in _edge_roots(line_b, tol):
        lo_hi = _accepting_interval(line_a, p0, tol)
        if lo_hi is not None and lo_hi[1] - lo_hi[0] > tol:
            segments.append(((p0, lo_hi[0]), (p0, lo_hi[1])))
    return segments


def _edge_roots(line, tol) -> list[float]:
    intercept, slope = line
    if abs(slope) <= tol:
        return []
    root = -intercept / slope
    return [edge for edge in (0.0, 1.0) if abs(root - edge) <= CHAINED_TOL]


def _accepting_interval(line, choice, tol):
    """Range of own-probability s in [0, 1] for which the other player accepts ``choice``."""
    intercept, slope = line
    sign = 1.0 if choice == 1.0 else -1.0
    # need sign * (intercept + slope * s) >= -tol
    a, b = sign * intercept, sign * slope
    if abs(b) <= tol:
        return (0.0, 1.0) if a >= -tol else None
    root = -a / b
    lo, hi = (max(0.0, root), 1.0) if b > 0 else (0.0, min(1.0, root))
    return (lo, hi) if lo <= hi else None


# --- brute-force oracle -------------------------------------------------------


def deviation_gains(m: PayoffMatrix, p, q, k, kprime, n: int = GRID_POINTS) -> tuple[float, float]:
    """Largest utility gain either player obtains by deviating to a point of an ``n``-grid."""
    grid = np.linspace(0.0, 1.0, n)
    base_a, base_b = utility_arrays(m, p, q, k, kprime)
    dev_a, _ = utility_arrays(m, grid, q, k, kprime)
    _, dev_b = utility_arrays(m, p, grid, k, kprime)
    return float(dev_a.max() - base_a), float(dev_b.max() - base_b)


def grid_equilibrium_mask(m: PayoffMatrix, k, kprime, n: int = GRID_POINTS, slack: float = NE_SLACK):
    """Boolean ``(n, n)`` mask of epsilon-Nash profiles on the uniform grid, indexed ``[i_p, j_q]``."""
    grid = np.linspace(0.0, 1.0, n)
    pi_a, pi_b = utility_arrays(m, grid[:, None], grid[None, :], k, kprime)
    ok_a = pi_a >= pi_a.max(axis=0, keepdims=True) - slack
    ok_b = pi_b >= pi_b.max(axis=1, keepdims=True) - slack
    return ok_a & ok_b


# --- cooperation motive -------------------------------------------------------


@dataclass(frozen=True)
class CoopMotivation:
    b: float
    c: float
    delta_m: float

    @property
    def payoffs(self) -> PayoffMatrix:
        return PayoffMatrix(alpha=self.b - self.c, beta=-self.c, gamma=0.0, delta=self.b)


def delta_m(b: float, c: float, p, q, k, kprime) -> float:
    """Expected gain of cooperating minus expected gain of defecting under benefit ``b`` and cost ``c``."""
    if not c > 0:
        raise DomainError(f"cost c={c!r} must be positive")
    if not b > c:
        raise DomainError(f"benefit b={b!r} must exceed cost c={c!r}")
    pk = bistable_transform(p, k)
    qk = bistable_transform(q, kprime)
    return (pk * qk * (b - c) - c * pk * (1 - qk)) - b * (1 - pk) * (1 - qk)


def delta_m_arrays(b, c, p, q, k, kprime):
    b, c, p, q, k, kprime = (np.asarray(x, dtype=float) for x in (b, c, p, q, k, kprime))
    if np.any(c <= 0):
        raise DomainError("cost c must be positive")
    if np.any(b <= c):
        raise DomainError("benefit b must exceed cost c")
    pk = 1.0 - p - k + 2.0 * k * p
    qk = 1.0 - q - kprime + 2.0 * kprime * q
    return (pk * qk * (b - c) - c * pk * (1 - qk)) - b * (1 - pk) * (1 - qk)


# --- sweeps -------------------------------------------------------------------


def _resolve_kprime(spec, coords, k):
    if "kprime" in coords:
        return coords["kprime"]
    if "kprime" in spec.fixed:
        return np.full_like(k, float(spec.fixed["kprime"]))
    mode = spec.scenario_mode or ScenarioMode.SYMMETRIC
    if mode is ScenarioMode.SYMMETRIC:
        return k.copy()
    if mode is ScenarioMode.ONE_RATIONAL:
        return np.ones_like(k)
    if mode is ScenarioMode.COMPLEMENTARY:
        return 1.0 - k
    raise ConfigError("scenario.kprime", "independent scenario needs a kprime value or axis")


def _coordinate(spec, coords, name, n, default=None):
    if name in coords:
        return coords[name]
    if name in spec.fixed:
        return np.full(n, float(spec.fixed[name]))
    if default is None:
        raise ConfigError(f"axes.{name}", f"'{name}' is neither swept nor fixed")
    return np.full(n, float(default))


def _check_unit_array(name, arr):
    if np.any((arr < 0) | (arr > 1)) or not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} values must lie in [0, 1]")


def sweep_classical(spec: SweepSpec) -> SweepResult:
    """Evaluate utilities or the cooperation motive over a grid.

    Rows come out in axis-major order: the first axis varies slowest.
    """
    if not spec.axes:
        raise ConfigError("axes", "at least one axis is required")
    coords = spec.mesh()
    n = spec.size
    if spec.quantity == "utility":
        allowed = {"p", "q", "k", "kprime"}
        _reject_unknown_axes(spec, allowed)
        p = _coordinate(spec, coords, "p", n)
        q = _coordinate(spec, coords, "q", n)
        k = _coordinate(spec, coords, "k", n)
        kprime = _resolve_kprime(spec, coords, k)
        for name, arr in (("p", p), ("q", q), ("k", k), ("kprime", kprime)):
            _check_unit_array(name, arr)
        m = spec.payoffs
        pk = 1.0 - p - k + 2.0 * k * p
        qk = 1.0 - q - kprime + 2.0 * kprime * q
        eps = (pk * qk, pk * (1 - qk), (1 - pk) * qk, (1 - pk) * (1 - qk))
        pi_a, pi_b = utility_arrays(m, p, q, k, kprime)
        data = {"p": p, "q": q, "k": k, "kprime": kprime, "piA": pi_a, "piB": pi_b}
        data.update({f"eps{i + 1}": e for i, e in enumerate(eps)})
        return SweepResult(list(data), data)
    if spec.quantity == "delta_m":
        allowed = {"k", "b_over_c", "p", "q", "kprime"}
        _reject_unknown_axes(spec, allowed)
        k = _coordinate(spec, coords, "k", n)
        ratio = _coordinate(spec, coords, "b_over_c", n)
        c = float(spec.fixed.get("c", 1.0))
        p = _coordinate(spec, coords, "p", n, default=1.0)
        q = _coordinate(spec, coords, "q", n, default=1.0)
        kprime = _resolve_kprime(spec, coords, k)
        for name, arr in (("p", p), ("q", q), ("k", k), ("kprime", kprime)):
            _check_unit_array(name, arr)
        values = delta_m_arrays(ratio * c, c, p, q, k, kprime)
        data = {a.name: coords[a.name] for a in spec.axes}
        data["delta_m"] = values
        return SweepResult(list(data), data)
    raise ConfigError("quantity", f"unknown classical quantity {spec.quantity!r}")


def _reject_unknown_axes(spec, allowed):
    for a in spec.axes:
        if a.name not in allowed:
            raise ConfigError(f"axes.{a.name}", f"axis not supported for {spec.quantity}")
