"""Evidential quantum dynamical model of categorisation-decision tasks.

Belief-action states are ordered ``[GA, GW, BA, BW, UA, UW]`` (good, bad and
uncertain category, each split into attack/withdraw). The D-alone condition
drops the uncertain block: ``[GA, GW, BA, BW]``.

The Hamiltonian is block diagonal, so every evolution reduces to 2x2 blocks
``s * [[h, 1], [1, -h]]``; they are traceless with ``H @ H = w**2 * I`` and
exponentiate in closed form. Matrices and amplitude vectors are numpy
``complex128`` arrays.

Degenerate cases worth knowing about:

* A category with zero weight has no conditional amplitude distribution.
  The prediction pipelines substitute the uniform vector ``[1, 1] / sqrt(2)``
  (the within-block split every initial state uses), so the uncertain branch
  is still defined with ``p_u = 0``.
* The uncertain-branch redistribution adds half of its attack *amplitude*
  to each certain branch before squaring, so ``P(A|G)`` can exceed 1 (9/8 at
  ``t = 0``). Only ``t`` near pi/2 gives meaningful probabilities; values
  outside [0, 1] raise :class:`ModelWarning` rather than an error.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

SCALINGS = ("paper_literal", "unit_spectrum")
ALONE_MEASURES = ("paper_literal", "attack_consistent")
CONDITIONS = ("c_then_d", "d_alone")
CATEGORIES = ("G", "B", "U")

ATTACK = np.diag([1.0, 0.0]).astype(complex)
WITHDRAW = np.diag([0.0, 1.0]).astype(complex)
UNIFORM = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)


class ModelError(ValueError):
    pass


class BadWeights(ModelError):
    pass


class ZeroBlockNorm(ModelError):
    pass


class ParamOutOfRange(ModelError):
    pass


class NotHermitian(ModelError):
    pass


class NotProjector(ModelError):
    pass


class OutOfRange(ModelError):
    pass


class ModelWarning(UserWarning):
    """A predicted probability fell outside [0, 1]."""


@dataclass(frozen=True)
class CategoryWeights:
    p_g: float
    p_b: float
    p_u: float = 0.0

    def __post_init__(self):
        values = (self.p_g, self.p_b, self.p_u)
        if not all(math.isfinite(p) and 0.0 <= p <= 1.0 for p in values):
            raise BadWeights(f"category probabilities must lie in [0, 1]: {values}")
        if abs(sum(values) - 1.0) > 1e-9:
            raise BadWeights(f"category probabilities must sum to 1, got {sum(values)!r}")


@dataclass(frozen=True)
class HamiltonianParams:
    h_g: float
    h_b: float
    h_u: float = 0.0

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.h_g, self.h_b, self.h_u)


@dataclass(frozen=True)
class ModelConfig:
    t: float = math.pi / 2
    scaling: str = "paper_literal"
    alone_measure: str = "attack_consistent"
    h_max: float = 50.0

    def __post_init__(self):
        if not (math.isfinite(self.t) and self.t >= 0):
            raise ModelError(f"evolution time must be finite and >= 0, got {self.t!r}")
        if self.scaling not in SCALINGS:
            raise ModelError(f"scaling must be one of {SCALINGS}, got {self.scaling!r}")
        if self.alone_measure not in ALONE_MEASURES:
            raise ModelError(f"alone_measure must be one of {ALONE_MEASURES}, got {self.alone_measure!r}")


@dataclass(frozen=True)
class AmplitudeState:
    amplitudes: np.ndarray
    condition: str = "c_then_d"

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        expected = 6 if self.condition == "c_then_d" else 4
        if self.condition not in CONDITIONS or amps.shape != (expected,):
            raise ModelError(f"{self.condition} state needs {expected} amplitudes, got shape {amps.shape}")
        if abs(np.vdot(amps, amps).real - 1.0) > 1e-9:
            raise ModelError("state must have unit squared length")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def block(self, category: str) -> np.ndarray:
        i = CATEGORIES.index(category)
        if 2 * i + 2 > len(self.amplitudes):
            raise ModelError(f"category {category} absent from a {self.condition} state")
        return self.amplitudes[2 * i: 2 * i + 2]


def build_initial_state(weights: CategoryWeights, condition: str = "c_then_d") -> AmplitudeState:
    """Uniform real split inside each category block, block norms sqrt(p)."""
    if condition not in CONDITIONS:
        raise ModelError(f"unknown condition {condition!r}")
    probs = [weights.p_g, weights.p_b, weights.p_u]
    if condition == "d_alone":
        if weights.p_u != 0.0:
            raise BadWeights("the D-alone state has no uncertain block; p_u must be 0")
        probs = probs[:2]
    amps = np.repeat([math.sqrt(p / 2.0) for p in probs], 2).astype(complex)
    return AmplitudeState(amps, condition)


def project_category(state: AmplitudeState, category: str) -> np.ndarray:
    block = state.block(category)
    norm = math.sqrt(np.vdot(block, block).real)
    if norm <= 1e-15:
        raise ZeroBlockNorm(f"category {category} has zero initial probability")
    return block / norm


def _category_or_uniform(state: AmplitudeState, category: str) -> np.ndarray:
    try:
        return project_category(state, category)
    except ZeroBlockNorm:
        return UNIFORM


def scale_factor(h: float, scaling: str) -> float:
    if scaling == "paper_literal":
        return 1.0 / (1.0 + h * h)
    return 1.0 / math.sqrt(1.0 + h * h)


def build_hamiltonian_block(h: float, config: ModelConfig = ModelConfig()) -> np.ndarray:
    """``s * [[h, 1], [1, -h]]`` with ``s`` set by ``config.scaling``."""
    if not math.isfinite(h) or abs(h) > config.h_max:
        raise ParamOutOfRange(f"|h| must be <= {config.h_max}, got {h!r}")
    s = scale_factor(h, config.scaling)
    return s * np.array([[h, 1.0], [1.0, -h]], dtype=complex)


def unitary_2x2(hblock: np.ndarray, t: float) -> np.ndarray:
    """``exp(-i H t)`` for a Hermitian 2x2 ``H``.

    Traceless input uses ``cos(w t) I - i sin(w t) H / w`` with
    ``w = sqrt(-det H)``; anything else goes through ``eigh``.
    """
    hblock = np.asarray(hblock, dtype=complex)
    if hblock.shape != (2, 2) or not np.allclose(hblock, hblock.conj().T, rtol=0, atol=1e-12):
        raise NotHermitian("Hamiltonian block must be a Hermitian 2x2 matrix")
    a = hblock[0, 0].real
    b = hblock[0, 1]
    if abs(hblock[0, 0] + hblock[1, 1]) <= 1e-14:
        w = math.sqrt(a * a + abs(b) ** 2)
        if w == 0.0:
            return np.eye(2, dtype=complex)
        return math.cos(w * t) * np.eye(2, dtype=complex) - 1j * (math.sin(w * t) / w) * hblock
    vals, vecs = np.linalg.eigh(hblock)
    return (vecs * np.exp(-1j * vals * t)) @ vecs.conj().T


def evolve(state2: np.ndarray, hblock: np.ndarray, t: float) -> np.ndarray:
    state2 = np.asarray(state2, dtype=complex)
    if abs(np.vdot(state2, state2).real - 1.0) > 1e-9:
        raise ModelError("evolve expects a unit-length 2-vector")
    return unitary_2x2(hblock, t) @ state2


def attack_amplitude(psi2: np.ndarray, measure: np.ndarray = ATTACK) -> np.ndarray:
    """Apply a diagonal 0/1 measurement; the result is not renormalised."""
    measure = np.asarray(measure, dtype=complex)
    diag = np.diag(measure)
    if (measure.shape != (2, 2) or np.count_nonzero(measure - np.diag(diag))
            or not np.all((diag == 0) | (diag == 1))):
        raise NotProjector("measurement must be a diagonal 0/1 matrix")
    return measure @ np.asarray(psi2, dtype=complex)


def redistribute_uncertain(phi_g: np.ndarray, phi_b: np.ndarray,
                           phi_u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Give half of the uncertain attack amplitude to each certain category."""
    half = 0.5 * np.asarray(phi_u, dtype=complex)
    return np.asarray(phi_g, dtype=complex) + half, np.asarray(phi_b, dtype=complex) + half


def _warn_range(name: str, value: float) -> None:
    if not -1e-12 <= value <= 1.0 + 1e-12:
        warnings.warn(f"{name} = {value:.6g} lies outside [0, 1]", ModelWarning, stacklevel=3)


def _propagate(psi: np.ndarray, h: float, config: ModelConfig) -> tuple[complex, complex]:
    """Closed-form ``exp(-i H t) @ psi`` on plain complex scalars.

    Same result as ``evolve(psi, build_hamiltonian_block(h, config), t)``
    without the per-call validation; the fitter calls this thousands of times.
    """
    if not math.isfinite(h) or abs(h) > config.h_max:
        raise ParamOutOfRange(f"|h| must be <= {config.h_max}, got {h!r}")
    s = scale_factor(h, config.scaling)
    w = s * math.sqrt(1.0 + h * h)
    c = math.cos(w * config.t)
    k = -1j * s * math.sin(w * config.t) / w
    a, b = complex(psi[0]), complex(psi[1])
    return c * a + k * (h * a + b), c * b + k * (a - h * b)


@dataclass(frozen=True)
class CtdPrediction:
    p_a_given_g: float
    p_a_given_b: float
    p_t: float


def predict_ctd(params: HamiltonianParams, weights: CategoryWeights,
                config: ModelConfig = ModelConfig(), warn: bool = True) -> CtdPrediction:
    """Attack probabilities under the categorise-then-decide condition.

    ``P(A|G) = |phi_G + phi_U / 2|^2`` where ``phi_X`` is the attack
    component of the category-X amplitudes after evolving under ``H_X``;
    ``P(A|B)`` likewise. ``p_t`` weights them by ``p_g`` and ``p_b``.
    """
    state = build_initial_state(weights, "c_then_d")
    attack = [
        _propagate(_category_or_uniform(state, cat), h, config)[0]
        for cat, h in zip(CATEGORIES, params.as_tuple())
    ]
    p_ag = abs(attack[0] + 0.5 * attack[2]) ** 2
    p_ab = abs(attack[1] + 0.5 * attack[2]) ** 2
    p_t = weights.p_g * p_ag + weights.p_b * p_ab
    if warn:
        _warn_range("P(A|G)", p_ag)
        _warn_range("P(A|B)", p_ab)
        _warn_range("P_T(A)", p_t)
    return CtdPrediction(p_ag, p_ab, p_t)


def alone_measures(config: ModelConfig) -> tuple[np.ndarray, np.ndarray]:
    if config.alone_measure == "paper_literal":
        return ATTACK, WITHDRAW
    return ATTACK, ATTACK


def predict_alone(params: HamiltonianParams, weights: CategoryWeights,
                  config: ModelConfig = ModelConfig(), warn: bool = True) -> float:
    """Attack probability when deciding without categorising.

    The branches are superposed with weights ``p_g`` and ``p_b`` (not their
    square roots) before squaring; ``h_u`` is unused.
    """
    state = build_initial_state(weights, "d_alone")
    kept = [0, 1 if config.alone_measure == "paper_literal" else 0]
    total = [0j, 0j]
    for cat, h, p, idx in zip("GB", params.as_tuple(), (weights.p_g, weights.p_b), kept):
        if p == 0.0:
            continue
        evolved = _propagate(_category_or_uniform(state, cat), h, config)
        total[idx] += p * evolved[idx]
    p_a = abs(total[0]) ** 2 + abs(total[1]) ** 2
    if p_a > 1.0:
        if warn:
            warnings.warn(f"P(A) = {p_a:.6g} exceeds 1; clamped", ModelWarning, stacklevel=2)
        p_a = 1.0
    return p_a


def total_probability(p_g: float, p_ag: float, p_b: float, p_ab: float) -> float:
    values = (p_g, p_ag, p_b, p_ab)
    if not all(math.isfinite(v) and 0.0 <= v <= 1.0 for v in values):
        raise OutOfRange(f"probabilities must lie in [0, 1]: {values}")
    return p_g * p_ag + p_b * p_ab
