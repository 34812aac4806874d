"""Complex-valued Dempster-Shafer calculus.

Hypotheses are bitmasks over an ordered :class:`Frame`: bit ``i`` set means
``frame.elements[i]`` is included, so index 0 is the empty set and
``2**N - 1`` the whole frame. Intersection, inclusion and cardinality are
then single integer operations.

All sums run over focal elements in ascending subset-index order so results
are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .complex_scalar import ONE, ZERO, Complex, c_abs, c_abs_sq, c_add, c_div, c_mul, c_sub

MAX_FRAME_SIZE = 20
#: Default tolerance for the sum and magnitude constraints of a CBBA.
EPS_SUM = 1e-6
#: Combination is refused when |1 - K| is at or below this.
EPS_SINGULAR = 1e-9

HypothesisLike = Union[int, str, Iterable[str]]


class EvidenceError(ValueError):
    pass


class FrameMismatch(EvidenceError):
    pass


class TotalConflict(EvidenceError):
    pass


class NotRealValued(EvidenceError):
    pass


class EmptyHypothesis(EvidenceError):
    pass


class BadGridStep(EvidenceError):
    pass


class CBBAConstraintWarning(UserWarning):
    """A combined mass has squared magnitude outside [0, 1]."""


@dataclass(frozen=True)
class Frame:
    elements: tuple[str, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise EvidenceError("frame must contain at least one element")
        if len(elements) > MAX_FRAME_SIZE:
            raise EvidenceError(f"frame size {len(elements)} exceeds {MAX_FRAME_SIZE}")
        if any(not isinstance(e, str) or not e for e in elements):
            raise EvidenceError("frame labels must be non-empty strings")
        if len(set(elements)) != len(elements):
            raise EvidenceError(f"duplicate labels in frame {elements}")
        object.__setattr__(self, "elements", elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def subset(self, labels: Iterable[str]) -> int:
        mask = 0
        for label in labels:
            try:
                mask |= 1 << self.elements.index(label)
            except ValueError:
                raise EvidenceError(f"label {label!r} not in frame {self.elements}") from None
        return mask

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(e for i, e in enumerate(self.elements) if mask >> i & 1)

    def hypothesis(self, a: HypothesisLike) -> int:
        """Canonical subset index for an int, a single label or a label iterable."""
        if isinstance(a, int):
            if not 0 <= a <= self.full:
                raise EvidenceError(f"subset index {a} out of range for frame of size {len(self)}")
            return a
        if isinstance(a, str):
            return self.subset([a])
        return self.subset(a)


def cardinality(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class CBBA:
    """Complex basic belief assignment: subset index -> complex mass.

    Keys absent from ``masses`` carry mass 0. Construction does not validate;
    use :func:`validate_cbba`.
    """

    frame: Frame
    masses: Mapping[int, Complex] = field(default_factory=dict)

    def __post_init__(self):
        canon = {}
        for key, value in self.masses.items():
            mask = self.frame.hypothesis(key)
            canon[mask] = c_add(canon.get(mask, ZERO), Complex.of(value))
        object.__setattr__(self, "masses", dict(sorted(canon.items())))

    @classmethod
    def from_labels(cls, elements: Iterable[str], masses: Mapping) -> "CBBA":
        """Build from label-keyed masses, e.g. ``{"A": 0.5, ("A", "B"): 0.5}``."""
        return cls(Frame(tuple(elements)), masses)

    @classmethod
    def vacuous(cls, frame: Frame) -> "CBBA":
        return cls(frame, {frame.full: ONE})

    def mass(self, a: HypothesisLike) -> Complex:
        return self.masses.get(self.frame.hypothesis(a), ZERO)

    def total(self) -> Complex:
        acc = ZERO
        for value in self.masses.values():
            acc = c_add(acc, value)
        return acc

    def is_real(self) -> bool:
        return all(v.im == 0.0 for v in self.masses.values())

    def labelled(self) -> dict[tuple[str, ...], Complex]:
        return {self.frame.labels(k): v for k, v in self.masses.items()}


@dataclass(frozen=True)
class ConflictReport:
    k: Complex
    k_abs: float


def validate_cbba(candidate: CBBA, tolerance: float = EPS_SUM) -> list[str]:
    """Return every violated CBBA condition; an empty list means valid."""
    violations = []
    empty = candidate.masses.get(0, ZERO)
    if empty != ZERO:
        violations.append(f"mass of the empty set is {empty}, expected 0")
    total = candidate.total()
    if c_abs(c_sub(total, ONE)) > tolerance:
        violations.append(f"masses sum to {total}, expected 1")
    for mask, value in candidate.masses.items():
        sq = c_abs_sq(value)
        if sq > 1.0 + tolerance:
            labels = "{" + ",".join(candidate.frame.labels(mask)) + "}"
            violations.append(f"|m({labels})|^2 = {sq:.6g} outside [0, 1]")
    return violations


def _check_frames(m1: CBBA, m2: CBBA) -> None:
    if m1.frame != m2.frame:
        raise FrameMismatch(f"frames differ: {m1.frame.elements} vs {m2.frame.elements}")


def conflict(m1: CBBA, m2: CBBA) -> ConflictReport:
    """Complex conflict coefficient: sum of m1(B) m2(C) over disjoint B, C."""
    _check_frames(m1, m2)
    k = ZERO
    for b, mb in m1.masses.items():
        for c, mc in m2.masses.items():
            if (b & c) == 0:
                k = c_add(k, c_mul(mb, mc))
    return ConflictReport(k, c_abs(k))


def combine(m1: CBBA, m2: CBBA, eps_singular: float = EPS_SINGULAR,
            tolerance: float = EPS_SUM) -> CBBA:
    """Generalized orthogonal sum of two CBBAs.

    Only requires ``|1 - K| > eps_singular``; K may have magnitude above 1 or
    be complex. Output masses whose squared magnitude leaves [0, 1] are
    reported through :class:`CBBAConstraintWarning`, not rejected.
    """
    _check_frames(m1, m2)
    k = ZERO
    joint: dict[int, Complex] = {}
    for b, mb in m1.masses.items():
        for c, mc in m2.masses.items():
            product = c_mul(mb, mc)
            a = b & c
            if a == 0:
                k = c_add(k, product)
            else:
                joint[a] = c_add(joint.get(a, ZERO), product)
    norm = c_sub(ONE, k)
    if c_abs(norm) <= eps_singular:
        raise TotalConflict(f"|1 - K| = {c_abs(norm):.3g} with K = {k}")
    fused = {a: c_div(v, norm) for a, v in sorted(joint.items())}
    for a, v in fused.items():
        if c_abs_sq(v) > 1.0 + tolerance:
            labels = ",".join(m1.frame.labels(a))
            warnings.warn(f"combined |m({{{labels}}})|^2 = {c_abs_sq(v):.6g} exceeds 1",
                          CBBAConstraintWarning, stacklevel=2)
    return CBBA(m1.frame, fused)


def _real_masses(m: CBBA) -> dict[int, float]:
    if not m.is_real():
        raise NotRealValued("classical combination requires all imaginary parts to be 0")
    return {k: v.re for k, v in m.masses.items()}


def classical_conflict(m1: CBBA, m2: CBBA) -> float:
    _check_frames(m1, m2)
    r1, r2 = _real_masses(m1), _real_masses(m2)
    return math.fsum(vb * vc for b, vb in r1.items() for c, vc in r2.items() if (b & c) == 0)


def combine_classical(m1: CBBA, m2: CBBA, eps_singular: float = EPS_SINGULAR) -> CBBA:
    """Dempster's rule over real masses, requiring ``K < 1``."""
    _check_frames(m1, m2)
    r1, r2 = _real_masses(m1), _real_masses(m2)
    k = 0.0
    joint: dict[int, float] = {}
    for b, vb in r1.items():
        for c, vc in r2.items():
            a = b & c
            if a == 0:
                k += vb * vc
            else:
                joint[a] = joint.get(a, 0.0) + vb * vc
    if 1.0 - k <= eps_singular:
        raise TotalConflict(f"classical rule needs K < 1, got K = {k!r}")
    return CBBA(m1.frame, {a: Complex(v / (1.0 - k)) for a, v in sorted(joint.items())})


def _nonempty(m: CBBA, a: HypothesisLike) -> int:
    mask = m.frame.hypothesis(a)
    if mask == 0:
        raise EmptyHypothesis("belief functions are undefined on the empty set")
    return mask


def _sum_where(m: CBBA, predicate) -> Complex:
    acc = ZERO
    for b, v in m.masses.items():
        if predicate(b):
            acc = c_add(acc, v)
    return acc


def belief(m: CBBA, a: HypothesisLike) -> float:
    """Magnitude of the summed mass of every focal element inside ``a``.

    Returned as a nonnegative real even though the generalized theory types
    it as complex; the definition is a magnitude.
    """
    mask = _nonempty(m, a)
    return c_abs(_sum_where(m, lambda b: (b & ~mask) == 0))


def plausibility(m: CBBA, a: HypothesisLike) -> float:
    """Magnitude of the summed mass of every focal element meeting ``a``."""
    mask = _nonempty(m, a)
    return c_abs(_sum_where(m, lambda b: (b & mask) != 0))


def plausibility_complement(m: CBBA, a: HypothesisLike) -> float:
    """``1 - Bel_c(complement of a)``.

    Agrees with :func:`plausibility` for real masses only, since
    ``|1 - z| != 1 - |z|`` in general.
    """
    mask = _nonempty(m, a)
    comp = m.frame.full & ~mask
    # Bel_c of the empty complement is |m(empty)| = 0 for valid CBBAs
    return 1.0 - c_abs(_sum_where(m, lambda b: (b & ~comp) == 0))


def pignistic(m: CBBA) -> dict[str, Complex]:
    """Split each focal mass equally among its singletons."""
    out = {e: ZERO for e in m.frame.elements}
    for b, v in m.masses.items():
        if b == 0:
            continue
        share = c_div(v, Complex(cardinality(b)))
        for e in m.frame.labels(b):
            out[e] = c_add(out[e], share)
    return out


SURFACE_FRAME = Frame(("A", "B"))
SURFACE_REFERENCE = CBBA(SURFACE_FRAME, {"A": Complex(0.5, 0.5), "B": Complex(0.5, -0.5)})


def surface_point(x: float, y: float) -> float:
    """|K| between ``{A: x+yi, B: 1-x-yi}`` and the fixed reference CBBA."""
    m1 = CBBA(SURFACE_FRAME, {"A": Complex(x, y), "B": c_sub(ONE, Complex(x, y))})
    return conflict(m1, SURFACE_REFERENCE).k_abs


def conflict_surface(grid_step: float, feasibility_tol: float = 1e-12) -> list[tuple[float, float, float]]:
    """|K| over the feasible part of a square grid on [-1, 1]^2.

    A point is kept when both ``x^2 + y^2`` and ``(1-x)^2 + y^2`` lie in
    [0, 1]. Rows are ordered by x, then y.
    """
    if not (isinstance(grid_step, (int, float)) and 0 < grid_step <= 0.5):
        raise BadGridStep(f"grid step must be in (0, 0.5], got {grid_step!r}")
    n = int(math.floor(2.0 / grid_step + 1e-9))
    axis = [-1.0 + i * grid_step for i in range(n + 1)]
    axis = [0.0 if abs(v) < 1e-12 else v for v in axis]
    rows = []
    for x in axis:
        for y in axis:
            if x * x + y * y > 1.0 + feasibility_tol:
                continue
            if (1.0 - x) ** 2 + y * y > 1.0 + feasibility_tol:
                continue
            rows.append((x, y, surface_point(x, y)))
    return rows
