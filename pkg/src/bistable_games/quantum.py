"""Two-qubit bistable quantum games.

Basis order is ``|00>, |01>, |10>, |11>`` with Alice the left tensor factor.
Expectation values are computed by direct matrix algebra; the trigonometric
closed forms in :func:`closed_form_expectations` are a cross-check only.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import (
    ALGEBRAIC_TOL,
    CHAINED_TOL,
    ConfigError,
    DomainError,
    PayoffMatrix,
    ScenarioMode,
    _as_float,
    _check_unit,
)
from .sweep import SweepResult, SweepSpec

IDENTITY2 = np.eye(2, dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
BELL_STATE = np.array([1, 0, 0, 1j], dtype=complex) / math.sqrt(2)
# Bell state written as a 2x2 coefficient matrix: psi[m, n] = sum_j U_A[m, j] U_B[n, j] d_j
_BELL_DIAG = np.array([1, 1j], dtype=complex) / math.sqrt(2)

OUTCOMES = ("cc", "cd", "dc", "dd")
THETA_MAX = math.pi
PHI_MAX = math.pi / 2
NE_SLACK = 1e-9
_ANGLE_TOL = 1e-12


class Validity(enum.Enum):
    PROPER_POVM = "proper_povm"
    QUASI_PROBABILITY = "quasi_probability"


@dataclass(frozen=True)
class QuantumStrategy:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (-_ANGLE_TOL <= self.theta <= THETA_MAX + _ANGLE_TOL):
            raise DomainError(f"theta={self.theta!r} outside [0, pi]")
        if not (-_ANGLE_TOL <= self.phi <= PHI_MAX + _ANGLE_TOL):
            raise DomainError(f"phi={self.phi!r} outside [0, pi/2]")


def _strategy(s) -> QuantumStrategy:
    if isinstance(s, QuantumStrategy):
        return s
    return QuantumStrategy(*s)


def sharp_projector(direction, sign: int = +1) -> np.ndarray:
    """Rank-one projector onto the +/- eigenvector of ``n . sigma``."""
    n = np.asarray(direction, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > CHAINED_TOL:
        raise DomainError("direction must be a unit 3-vector")
    if sign not in (+1, -1):
        raise DomainError("sign must be +1 or -1")
    n_sigma = sum(c * s for c, s in zip(n, PAULI))
    return (IDENTITY2 + sign * n_sigma) / 2


def bistable_projector(direction, sign: int, k) -> np.ndarray:
    """Unsharp projector ``(1 - k) I + (2k - 1) pi_n``."""
    k = _check_unit("k", _as_float(k))
    return (1 - k) * IDENTITY2 + (2 * k - 1) * sharp_projector(direction, sign)


def strategy_unitary(s) -> np.ndarray:
    s = _strategy(s)
    c, sn = math.cos(s.theta / 2), math.sin(s.theta / 2)
    e = complex(math.cos(s.phi), math.sin(s.phi))
    return np.array([[e * c, sn], [-sn, e.conjugate() * c]], dtype=complex)


def strategy_unitaries(theta, phi) -> np.ndarray:
    """Batch of unitaries, shape ``(n, 2, 2)``, for broadcastable angle arrays."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    c, sn = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    u = np.empty(theta.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = e * c
    u[..., 0, 1] = sn
    u[..., 1, 0] = -sn
    u[..., 1, 1] = np.conj(e) * c
    return u


def final_state(sa, sb) -> np.ndarray:
    """``(U_A kron U_B)`` applied to the Bell state ``(|00> + i|11>)/sqrt(2)``."""
    return np.kron(strategy_unitary(sa), strategy_unitary(sb)) @ BELL_STATE


def kraus_coefficients(k: float, kprime: float) -> tuple[float, float, float]:
    a1 = k * kprime + (1 - k) * (1 - kprime)
    a2 = kprime * (1 - k) + k * (1 - kprime)
    a3 = (2 * k - 1) * (2 * kprime - 1)
    return a1, a2, a3


def deformation_factor(k: float, kprime: float) -> float:
    """``1 - 2(k + k' - 2kk')``, the factor multiplying the phase-free equilibrium conditions."""
    return 1 - 2 * (k + kprime - 2 * k * kprime)


@dataclass(frozen=True)
class KrausSet:
    k: float
    kprime: float
    P_cc: np.ndarray = field(repr=False)
    P_cd: np.ndarray = field(repr=False)
    P_dc: np.ndarray = field(repr=False)
    P_dd: np.ndarray = field(repr=False)

    @property
    def coefficients(self) -> tuple[float, float, float]:
        return kraus_coefficients(self.k, self.kprime)

    @property
    def elements(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (self.P_cc, self.P_cd, self.P_dc, self.P_dd)

    def completeness_residual(self) -> float:
        return float(np.abs(sum(self.elements) - np.eye(4)).max())

    def hermiticity_residual(self) -> float:
        return float(max(np.abs(P - P.conj().T).max() for P in self.elements))

    def min_eigenvalue(self) -> float:
        return float(min(np.linalg.eigvalsh(P).min() for P in self.elements))

    @property
    def validity(self) -> Validity:
        if self.min_eigenvalue() >= -ALGEBRAIC_TOL:
            return Validity.PROPER_POVM
        return Validity.QUASI_PROBABILITY

    def positivity_diagnostic(self) -> str:
        a3 = self.coefficients[2]
        return (
            f"(2k-1)(2k'-1) = {a3:.6g} < -1/3 at k={self.k:g}, k'={self.kprime:g}: "
            f"smallest POVM eigenvalue {self.min_eigenvalue():.6g}"
        )


def kraus_set(k, kprime) -> KrausSet:
    """The four bistable POVM elements for outcomes cc, cd, dc, dd.

    Positivity is not enforced; check ``validity`` (it fails iff
    ``(2k-1)(2k'-1) < -1/3``).
    """
    k = _check_unit("k", _as_float(k))
    kprime = _check_unit("kprime", _as_float(kprime))
    a1, a2, a3 = kraus_coefficients(k, kprime)
    ia3 = 1j * a3
    cc = np.array([[a1, 0, 0, -ia3], [0, a2, 0, 0], [0, 0, a2, 0], [ia3, 0, 0, a1]]) / 2
    cd = np.array([[a2, 0, 0, 0], [0, a1, ia3, 0], [0, -ia3, a1, 0], [0, 0, 0, a2]]) / 2
    dc = np.array([[a2, 0, 0, 0], [0, a1, -ia3, 0], [0, ia3, a1, 0], [0, 0, 0, a2]]) / 2
    dd = np.array([[a1, 0, 0, ia3], [0, a2, 0, 0], [0, 0, a2, 0], [-ia3, 0, 0, a1]]) / 2
    return KrausSet(k, kprime, cc.astype(complex), cd.astype(complex), dc.astype(complex), dd.astype(complex))


def sharp_bell_projectors() -> tuple[np.ndarray, ...]:
    """Rank-one projectors onto the four maximally entangled outcome states."""
    s = 1 / math.sqrt(2)
    states = (
        np.array([1, 0, 0, 1j]) * s,  # |00> + i|11>
        np.array([0, 1, -1j, 0]) * s,  # |01> - i|10>
        np.array([0, -1j, 1, 0]) * s,  # |10> - i|01>
        np.array([1j, 0, 0, 1]) * s,  # |11> + i|00>
    )
    return tuple(np.outer(v, v.conj()) for v in states)


@dataclass(frozen=True)
class QuantumOutcome:
    probs: tuple[float, float, float, float]
    validity: Validity

    def as_dict(self) -> dict:
        return dict(zip(OUTCOMES, self.probs)) | {"validity": self.validity.value}


def outcome_probabilities(sa, sb, k, kprime) -> QuantumOutcome:
    psi = final_state(sa, sb)
    ks = kraus_set(k, kprime)
    values = []
    for P in ks.elements:
        z = np.vdot(psi, P @ psi)
        if abs(z.imag) > ALGEBRAIC_TOL:
            raise ArithmeticError(f"non-real expectation value {z!r}")
        values.append(float(z.real))
    return QuantumOutcome(tuple(values), ks.validity)


def utility_pair_quantum(m: PayoffMatrix, sa, sb, k, kprime) -> tuple[float, float]:
    cc, cd, dc, dd = outcome_probabilities(sa, sb, k, kprime).probs
    pi_a = m.alpha * cc + m.beta * cd + m.gamma * dc + m.delta * dd
    pi_b = m.alpha * cc + m.gamma * cd + m.beta * dc + m.delta * dd
    return pi_a, pi_b


def closed_form_expectations(sa, sb, k, kprime):
    """Trigonometric expressions for the four expectation values, evaluated verbatim.

    Accepts scalars or broadcastable arrays for the angles when ``sa``/``sb``
    are ``(theta, phi)`` tuples.  They agree with the matrix computation on the
    ``phi_a = phi_b = 0`` slice; with phases the cd/dc/dd cross terms differ
    (see :func:`closed_form_discrepancy`).
    """
    if isinstance(sa, QuantumStrategy):
        sa = (sa.theta, sa.phi)
    if isinstance(sb, QuantumStrategy):
        sb = (sb.theta, sb.phi)
    ta, fa = (np.asarray(x, float) for x in sa)
    tb, fb = (np.asarray(x, float) for x in sb)
    k, kprime = np.asarray(k, float), np.asarray(kprime, float)
    ca2, sa2 = np.cos(ta / 2) ** 2, np.sin(ta / 2) ** 2
    cb2, sb2 = np.cos(tb / 2) ** 2, np.sin(tb / 2) ** 2
    st = np.sin(ta) * np.sin(tb)
    w = (k + kprime - 2 * k * kprime) / 2
    fs = fa + fb
    cc = ca2 * cb2 * np.cos(fs) ** 2 + w * (sa2 + ca2 * (1 - 4 * cb2 * np.cos(fs) ** 2))
    cd = (
        ca2 * sb2 * np.cos(fa) ** 2
        + sa2 * cb2 * np.sin(fb) ** 2
        - 2 * st * np.sin(fa) * np.cos(fb)
        + w * (
            sa2 * (1 - 4 * cb2 * np.sin(fb) ** 2)
            + ca2 * (1 - 4 * sb2 * np.cos(fa) ** 2)
            + 2 * st * np.sin(fb) * np.cos(fa)
        )
    )
    dc = (
        ca2 * sb2 * np.sin(fa) ** 2
        + sa2 * cb2 * np.cos(fb) ** 2
        - 2 * st * np.sin(fa) * np.cos(fb)
        + w * (
            ca2 * (1 - 4 * sb2 * np.sin(fa) ** 2)
            + sa2 * (1 - 4 * cb2 * np.cos(fb) ** 2)
            + 2 * st * np.sin(fb) * np.cos(fa)
        )
    )
    dd = (
        ca2 * cb2 * np.sin(fs) ** 2
        + sa2 * sb2
        + 0.5 * st * np.sin(fs)
        + w * (sa2 * (1 - 4 * sb2) + ca2 * (1 - 4 * cb2 * np.sin(fs) ** 2) - st * np.sin(fs))
    )
    return cc, cd, dc, dd


# --- batched evaluation -------------------------------------------------------


def final_states(theta_a, phi_a, theta_b, phi_b) -> np.ndarray:
    """Final states for broadcastable angle arrays, shape ``(..., 4)``."""
    ua = strategy_unitaries(theta_a, phi_a)
    ub = strategy_unitaries(theta_b, phi_b)
    ua, ub = np.broadcast_arrays(ua, ub)
    psi = np.einsum("...mj,...nj,j->...mn", ua, ub, _BELL_DIAG)
    return psi.reshape(psi.shape[:-2] + (4,))


def expectations(psi: np.ndarray, ks: KrausSet) -> np.ndarray:
    """Real expectation values ``<psi|P|psi>`` for each element; shape ``(4, ...)``."""
    return np.stack([np.einsum("...i,ij,...j->...", psi.conj(), P, psi).real for P in ks.elements])


def _strategy_features(u: np.ndarray) -> np.ndarray:
    # f[s, (m, j, m', j')] = conj(u[s, m, j]) * u[s, m', j']
    return np.einsum("smj,snl->smjnl", u.conj(), u).reshape(len(u), 16)


def _pairing_kernel(M: np.ndarray) -> np.ndarray:
    """Kernel K with <psi_f|M|psi_f> = f_A @ K @ f_B for per-strategy features."""
    M4 = M.reshape(2, 2, 2, 2)  # [m, n, m', n']
    d = _BELL_DIAG
    K = np.zeros((2, 2, 2, 2, 2, 2, 2, 2), dtype=complex)  # [m, j, m', j', n, j2, n', j2']
    for j in range(2):
        for jp in range(2):
            K[:, j, :, jp, :, j, :, jp] = np.conj(d[j]) * d[jp] * M4.transpose(0, 2, 1, 3)
    return K.reshape(16, 16)


@dataclass
class StrategyGrid:
    """Discrete strategy set of one player."""

    theta: np.ndarray
    phi: np.ndarray

    @classmethod
    def product(cls, thetas, phis) -> "StrategyGrid":
        T, F = np.meshgrid(np.asarray(thetas, float), np.asarray(phis, float), indexing="ij")
        return cls(T.ravel(), F.ravel())

    def __len__(self):
        return len(self.theta)

    def unitaries(self) -> np.ndarray:
        return strategy_unitaries(self.theta, self.phi)


class UtilityPairing:
    """Exact bilinear evaluation of both utilities over strategy sets.

    Each utility is a Hermitian quadratic form in the final state, which is
    bilinear in ``U_A`` and ``U_B``; with 16 features per strategy the full
    utility table is one real matrix product.
    """

    def __init__(self, m: PayoffMatrix, k: float, kprime: float):
        ks = kraus_set(k, kprime)
        cc, cd, dc, dd = ks.elements
        self.kraus = ks
        M_a = m.alpha * cc + m.beta * cd + m.gamma * dc + m.delta * dd
        M_b = m.alpha * cc + m.gamma * cd + m.beta * dc + m.delta * dd
        self.K_a = _pairing_kernel(M_a)
        self.K_b = _pairing_kernel(M_b)

    @staticmethod
    def features(grid: StrategyGrid) -> np.ndarray:
        return _strategy_features(grid.unitaries())

    @staticmethod
    def _real_product(left: np.ndarray, right: np.ndarray) -> np.ndarray:
        return left.real @ right.real.T - left.imag @ right.imag.T

    def tables(self, fa: np.ndarray, fb: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Utility tables ``[i_a, i_b]`` for feature blocks of Alice and Bob."""
        return self._real_product(fa @ self.K_a, fb), self._real_product(fa @ self.K_b, fb)


# --- phase-free closed-form conditions ---------------------------------------


@dataclass(frozen=True)
class NEConditionReport:
    f: float
    bracket_a: float
    bracket_b: float
    x_a: float
    x_b: float
    alice_ok: bool
    bob_ok: bool

    @property
    def is_equilibrium(self) -> bool:
        return self.alice_ok and self.bob_ok


def _condition_holds(f: float, bracket: float, x_star: float, tol: float) -> bool:
    # f * (x* - x) * bracket >= 0 for every x in [0, 1]
    s = f * bracket
    if abs(s) <= tol:
        return True
    return abs(x_star - (1.0 if s > 0 else 0.0)) <= CHAINED_TOL


def ne_condition_closed_form(m: PayoffMatrix, candidate, k, kprime, phi_a=0.0, phi_b=0.0) -> NEConditionReport:
    """Sign analysis of the phase-free equilibrium inequalities at ``(theta_a*, theta_b*)``.

    The inequalities are linear in ``cos^2(theta/2)`` so holding for every
    deviation reduces to a sign check per player.
    """
    if phi_a != 0.0 or phi_b != 0.0:
        raise DomainError("closed-form equilibrium conditions cover only phi_a = phi_b = 0")
    k = _check_unit("k", _as_float(k))
    kprime = _check_unit("kprime", _as_float(kprime))
    theta_a, theta_b = candidate
    x_a, x_b = math.cos(theta_a / 2) ** 2, math.cos(theta_b / 2) ** 2
    f = deformation_factor(k, kprime)
    g = m.gamma_coef
    bracket_a = g * x_b + m.beta - m.delta
    bracket_b = g * x_a + m.beta - m.delta
    tol = CHAINED_TOL * max(1.0, abs(m.alpha), abs(m.beta), abs(m.gamma), abs(m.delta))
    return NEConditionReport(
        f, bracket_a, bracket_b, x_a, x_b,
        _condition_holds(f, bracket_a, x_a, tol),
        _condition_holds(f, bracket_b, x_b, tol),
    )


def theta_from_x(x: float) -> float:
    """Angle with ``cos^2(theta/2) = x``."""
    return 2 * math.acos(math.sqrt(min(max(x, 0.0), 1.0)))


def closed_form_candidates(m: PayoffMatrix) -> list[tuple[float, float]]:
    """Phase-free profiles that can satisfy the closed-form conditions: corners and the mixed point."""
    out = [(ta, tb) for ta in (0.0, math.pi) for tb in (0.0, math.pi)]
    g = m.gamma_coef
    if g != 0.0:
        t = (m.delta - m.beta) / g
        if 0.0 < t < 1.0:
            th = theta_from_x(t)
            out.append((th, th))
    return out


# --- grid search ----------------------------------------------------------------


@dataclass(frozen=True)
class QuantumGrid:
    theta_points: int = 181
    phi_points: int = 46
    slack: float = NE_SLACK
    refine: bool = True

    def __post_init__(self):
        if self.theta_points < 61:
            raise ConfigError("grid.theta_points", "need at least 61 points per theta axis")
        if self.phi_points < 2:
            raise ConfigError("grid.phi_points", "need at least 2 points per phi axis")

    @property
    def theta_step(self) -> float:
        return THETA_MAX / (self.theta_points - 1)

    @property
    def phi_step(self) -> float:
        return PHI_MAX / (self.phi_points - 1)

    def thetas(self, extra=()) -> np.ndarray:
        return _merge_axis(np.linspace(0.0, THETA_MAX, self.theta_points), extra)

    def phis(self, include_phase: bool, extra=()) -> np.ndarray:
        if not include_phase:
            return np.array([0.0])
        return _merge_axis(np.linspace(0.0, PHI_MAX, self.phi_points), extra)


def _merge_axis(base: np.ndarray, extra) -> np.ndarray:
    vals = np.concatenate([base, np.asarray(list(extra), float)])
    vals = np.unique(vals)
    keep = np.concatenate([[True], np.diff(vals) > 1e-14])
    return vals[keep]


@dataclass(frozen=True)
class QuantumEquilibrium:
    theta_a: float
    phi_a: float
    theta_b: float
    phi_b: float
    pi_a: float
    pi_b: float
    refined: bool | None = None

    @property
    def x(self) -> tuple[float, float]:
        return (math.cos(self.theta_a / 2) ** 2, math.cos(self.theta_b / 2) ** 2)

    def as_dict(self) -> dict:
        return {
            "theta_a": self.theta_a, "phi_a": self.phi_a,
            "theta_b": self.theta_b, "phi_b": self.phi_b,
            "piA": self.pi_a, "piB": self.pi_b, "refined": self.refined,
        }


@dataclass
class CandidateVerdict:
    profile: tuple[float, float, float, float]
    gain_a: float
    gain_b: float
    refined_gain_a: float | None
    refined_gain_b: float | None
    verdict: str

    def as_dict(self) -> dict:
        return {
            "theta_a": self.profile[0], "phi_a": self.profile[1],
            "theta_b": self.profile[2], "phi_b": self.profile[3],
            "gain_a": self.gain_a, "gain_b": self.gain_b,
            "refined_gain_a": self.refined_gain_a, "refined_gain_b": self.refined_gain_b,
            "verdict": self.verdict,
        }


@dataclass
class QuantumNEResult:
    k: float
    kprime: float
    include_phase: bool
    validity: Validity
    profiles_checked: int
    count: int
    everywhere: bool
    equilibria: list[QuantumEquilibrium]
    truncated: bool
    candidates: list[CandidateVerdict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "k": self.k, "kprime": self.kprime, "include_phase": self.include_phase,
            "validity": self.validity.value, "profiles_checked": self.profiles_checked,
            "count": self.count, "everywhere": self.everywhere, "truncated": self.truncated,
            "equilibria": [e.as_dict() for e in self.equilibria],
            "candidates": [c.as_dict() for c in self.candidates],
        }


def _as_profile(c) -> tuple[float, float, float, float]:
    if len(c) == 2:
        return (float(c[0]), 0.0, float(c[1]), 0.0)
    if len(c) == 4:
        return tuple(float(v) for v in c)
    raise DomainError("candidate must be (theta_a, theta_b) or (theta_a, phi_a, theta_b, phi_b)")


def _local_grid(center: float, step: float, hi: float, active: bool) -> np.ndarray:
    if not active:
        return np.array([center])
    pts = center + np.linspace(-step, step, 21)
    return np.unique(np.clip(pts, 0.0, hi))


def _profile_gains(pairing: UtilityPairing, profile, dev_a: StrategyGrid, dev_b: StrategyGrid):
    ta, fa, tb, fb = profile
    own_a = StrategyGrid(np.array([ta]), np.array([fa]))
    own_b = StrategyGrid(np.array([tb]), np.array([fb]))
    f_own_a, f_own_b = pairing.features(own_a), pairing.features(own_b)
    base_a, base_b = pairing.tables(f_own_a, f_own_b)
    alt_a, _ = pairing.tables(pairing.features(dev_a), f_own_b)
    _, alt_b = pairing.tables(f_own_a, pairing.features(dev_b))
    return float(alt_a.max() - base_a[0, 0]), float(alt_b.max() - base_b[0, 0])


def _refined_gains(pairing, profile, grid: QuantumGrid, include_phase: bool):
    ta, fa, tb, fb = profile
    dev_a = StrategyGrid.product(
        _local_grid(ta, grid.theta_step, THETA_MAX, True),
        _local_grid(fa, grid.phi_step, PHI_MAX, include_phase),
    )
    dev_b = StrategyGrid.product(
        _local_grid(tb, grid.theta_step, THETA_MAX, True),
        _local_grid(fb, grid.phi_step, PHI_MAX, include_phase),
    )
    return _profile_gains(pairing, profile, dev_a, dev_b)


def certify_profile(
    m: PayoffMatrix,
    k: float,
    kprime: float,
    profile,
    grid: QuantumGrid | None = None,
    include_phase: bool = False,
    pairing: UtilityPairing | None = None,
) -> CandidateVerdict:
    """Check one profile against every unilateral deviation on the strategy grid.

    Verdict is ``confirmed`` when no deviation gains more than the slack,
    including the local refinement pass, ``boundary-sensitive`` when only the
    refinement finds a profitable deviation, and ``refuted-on-grid`` otherwise.
    """
    grid = grid or QuantumGrid()
    profile = _as_profile(profile)
    pairing = pairing or UtilityPairing(m, k, kprime)
    dev_a = StrategyGrid.product(grid.thetas([profile[0]]), grid.phis(include_phase, [profile[1]]))
    dev_b = StrategyGrid.product(grid.thetas([profile[2]]), grid.phis(include_phase, [profile[3]]))
    gain_a, gain_b = _profile_gains(pairing, profile, dev_a, dev_b)
    ref_a = ref_b = None
    if max(gain_a, gain_b) > grid.slack:
        verdict = "refuted-on-grid"
    elif grid.refine:
        ref_a, ref_b = _refined_gains(pairing, profile, grid, include_phase)
        verdict = "confirmed" if max(ref_a, ref_b) <= grid.slack else "boundary-sensitive"
    else:
        verdict = "confirmed"
    return CandidateVerdict(profile, gain_a, gain_b, ref_a, ref_b, verdict)


def ne_grid_search(
    m: PayoffMatrix,
    k,
    kprime,
    grid: QuantumGrid | None = None,
    include_phase: bool = False,
    candidates=(),
    seed_closed_form: bool = True,
    max_listed: int = 5000,
    threads: int = 1,
    chunk: int = 1024,
) -> QuantumNEResult:
    """All epsilon-Nash profiles on a strategy grid.

    The theta axis holds ``grid.theta_points`` uniform points on ``[0, pi]``
    plus the angles of every candidate (and of the phase-free closed-form
    candidates when ``seed_closed_form``), so off-lattice mixed equilibria are
    representable.  With ``include_phase`` each player also ranges over
    ``grid.phi_points`` phases.  A profile is certified when neither player
    gains more than ``grid.slack`` by deviating anywhere on the grid.
    """
    grid = grid or QuantumGrid()
    k = _check_unit("k", _as_float(k))
    kprime = _check_unit("kprime", _as_float(kprime))
    cands = [_as_profile(c) for c in candidates]
    if seed_closed_form:
        cands_seed = [_as_profile(c) for c in closed_form_candidates(m)]
    else:
        cands_seed = []
    extra_theta = [c[0] for c in cands + cands_seed] + [c[2] for c in cands + cands_seed]
    extra_phi = [c[1] for c in cands] + [c[3] for c in cands]
    thetas = grid.thetas(extra_theta)
    phis = grid.phis(include_phase, extra_phi)
    strategies = StrategyGrid.product(thetas, phis)
    pairing = UtilityPairing(m, k, kprime)
    feats = pairing.features(strategies)
    n = len(strategies)
    blocks = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]

    def first_pass(block):
        lo, hi = block
        ta, tb = pairing.tables(feats[lo:hi], feats)
        return ta.max(axis=0), tb.max(axis=1)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        parts = list(pool.map(first_pass, blocks))
    best_a = np.max(np.stack([p[0] for p in parts]), axis=0)  # per Bob strategy
    best_b = np.concatenate([p[1] for p in parts])  # per Alice strategy

    def second_pass(block):
        lo, hi = block
        ta, tb = pairing.tables(feats[lo:hi], feats)
        mask = (ta >= best_a[None, :] - grid.slack) & (tb >= best_b[lo:hi, None] - grid.slack)
        ia, ib = np.nonzero(mask)
        return ia + lo, ib, ta[mask], tb[mask]

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        hits = list(pool.map(second_pass, blocks))
    ia = np.concatenate([h[0] for h in hits])
    ib = np.concatenate([h[1] for h in hits])
    va = np.concatenate([h[2] for h in hits])
    vb = np.concatenate([h[3] for h in hits])
    count = len(ia)
    everywhere = count == n * n
    listed = []
    if not everywhere:
        for i in range(min(count, max_listed)):
            a, b = ia[i], ib[i]
            profile = (strategies.theta[a], strategies.phi[a], strategies.theta[b], strategies.phi[b])
            refined = None
            if grid.refine:
                ra, rb = _refined_gains(pairing, profile, grid, include_phase)
                refined = max(ra, rb) <= grid.slack
            listed.append(QuantumEquilibrium(*(float(v) for v in profile), float(va[i]), float(vb[i]), refined))
    verdicts = [certify_profile(m, k, kprime, c, grid, include_phase, pairing) for c in cands]
    return QuantumNEResult(
        k, kprime, include_phase, pairing.kraus.validity, n * n, count, everywhere,
        listed, count > len(listed) and not everywhere, verdicts,
    )


# --- diagnostics and sweeps ------------------------------------------------------


def matrix_expectations_grid(theta_a, phi_a, theta_b, phi_b, k, kprime) -> np.ndarray:
    psi = final_states(theta_a, phi_a, theta_b, phi_b)
    return expectations(psi, kraus_set(k, kprime))


def closed_form_discrepancy(theta_points=19, phi_points=7, k_values=None, kprime_values=None) -> dict:
    """Per-outcome maximum deviation of the closed forms from the matrix computation.

    Reported separately for the ``phi = 0`` slice and for the full phase grid.
    """
    k_values = np.linspace(0.5, 1.0, 6) if k_values is None else np.asarray(k_values, float)
    kprime_values = k_values if kprime_values is None else np.asarray(kprime_values, float)
    th = np.linspace(0, THETA_MAX, theta_points)
    ph = np.linspace(0, PHI_MAX, phi_points)
    slice_err = np.zeros(4)
    phase_err = np.zeros(4)
    worst = [None] * 4
    TA, FA, TB, FB = np.meshgrid(th, ph, th, ph, indexing="ij")
    zero = (FA == 0) & (FB == 0)
    for k in k_values:
        for kp in kprime_values:
            mat = matrix_expectations_grid(TA, FA, TB, FB, k, kp)
            cf = np.stack(closed_form_expectations((TA, FA), (TB, FB), k, kp))
            err = np.abs(cf - mat)
            for i in range(4):
                slice_err[i] = max(slice_err[i], err[i][zero].max())
                e = err[i].max()
                if e > phase_err[i]:
                    phase_err[i] = e
                    j = np.unravel_index(np.argmax(err[i]), err[i].shape)
                    worst[i] = {
                        "theta_a": float(TA[j]), "phi_a": float(FA[j]),
                        "theta_b": float(TB[j]), "phi_b": float(FB[j]),
                        "k": float(k), "kprime": float(kp),
                        "closed_form": float(cf[i][j]), "matrix": float(mat[i][j]),
                    }
    return {
        "phi_zero_max_abs_error": dict(zip(OUTCOMES, slice_err.tolist())),
        "with_phase_max_abs_error": dict(zip(OUTCOMES, phase_err.tolist())),
        "with_phase_worst_case": dict(zip(OUTCOMES, worst)),
        "phi_zero_agrees": bool(slice_err.max() <= CHAINED_TOL),
    }


def sweep_quantum(spec: SweepSpec) -> SweepResult:
    """Utility surfaces over strategy angles and bistable parameters.

    Axes may be any of ``theta_a``, ``theta_b``, ``phi_a``, ``phi_b``, ``k``,
    ``kprime``; unswept phases default to 0.
    """
    allowed = {"theta_a", "theta_b", "phi_a", "phi_b", "k", "kprime"}
    for a in spec.axes:
        if a.name not in allowed:
            raise ConfigError(f"axes.{a.name}", "axis not supported for quantum sweeps")
    coords = spec.mesh()
    n = spec.size

    def coord(name, default=None):
        if name in coords:
            return coords[name]
        if name in spec.fixed:
            return np.full(n, float(spec.fixed[name]))
        if default is None:
            raise ConfigError(f"axes.{name}", f"'{name}' is neither swept nor fixed")
        return np.full(n, float(default))

    ta, tb = coord("theta_a"), coord("theta_b")
    fa, fb = coord("phi_a", 0.0), coord("phi_b", 0.0)
    k = coord("k")
    if "kprime" in coords or "kprime" in spec.fixed:
        kp = coord("kprime")
    else:
        mode = spec.scenario_mode or ScenarioMode.SYMMETRIC
        if mode is ScenarioMode.SYMMETRIC:
            kp = k.copy()
        elif mode is ScenarioMode.ONE_RATIONAL:
            kp = np.ones(n)
        elif mode is ScenarioMode.COMPLEMENTARY:
            kp = 1.0 - k
        else:
            raise ConfigError("scenario.kprime", "independent scenario needs a kprime value or axis")
    for name, arr, hi in (("theta_a", ta, THETA_MAX), ("theta_b", tb, THETA_MAX), ("phi_a", fa, PHI_MAX), ("phi_b", fb, PHI_MAX)):
        if np.any(arr < -_ANGLE_TOL) or np.any(arr > hi + _ANGLE_TOL):
            raise DomainError(f"{name} values outside [0, {hi:g}]")
    for name, arr in (("k", k), ("kprime", kp)):
        if np.any((arr < 0) | (arr > 1)):
            raise DomainError(f"{name} values must lie in [0, 1]")

    m = spec.payoffs
    probs = np.empty((4, n))
    validity = np.empty(n, dtype=object)
    psi = final_states(ta, fa, tb, fb)
    pairs = np.stack([k, kp], axis=1)
    for kk, kkp in np.unique(pairs, axis=0):
        sel = (k == kk) & (kp == kkp)
        ks = kraus_set(kk, kkp)
        probs[:, sel] = expectations(psi[sel], ks)
        validity[sel] = ks.validity.value
    cc, cd, dc, dd = probs
    pi_a = m.alpha * cc + m.beta * cd + m.gamma * dc + m.delta * dd
    pi_b = m.alpha * cc + m.gamma * cd + m.beta * dc + m.delta * dd
    cf = np.stack(closed_form_expectations((ta, fa), (tb, fb), k, kp))
    cf_pi_a = m.alpha * cf[0] + m.beta * cf[1] + m.gamma * cf[2] + m.delta * cf[3]
    data = {
        "theta_a": ta, "theta_b": tb, "phi_a": fa, "phi_b": fb, "k": k, "kprime": kp,
        "piA": pi_a, "piB": pi_b, "p_cc": cc, "p_cd": cd, "p_dc": dc, "p_dd": dd,
        "closed_form_piA": cf_pi_a, "closed_form_residual": np.abs(cf - probs).max(axis=0),
        "validity": validity,
    }
    return SweepResult(list(data), data)
