"""Least-squares estimation of the payoff parameters h_G, h_B, h_U.

The two experimental conditions are fitted separately:

* C-then-D: ``(h_G, h_B, h_U)`` against the observed ``P(A|G)`` and ``P(A|B)``.
* D-alone: ``(h_G, h_B)`` against the observed ``P(A)``.

``P_T`` is derived from the fitted conditionals, never fitted itself. Each
fit runs bounded Nelder-Mead from a deterministic grid of starts and keeps
the lowest SSE, breaking ties by start index. With more parameters than
targets the optimum is usually a manifold, so only predictions (not the h
values) are meaningful to compare.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .quantum import (
    CategoryWeights,
    HamiltonianParams,
    ModelConfig,
    ModelWarning,
    ParamOutOfRange,
    predict_alone,
    predict_ctd,
)

CONDITIONS = ("c_then_d", "d_alone")


class DatasetError(ValueError):
    pass


@dataclass(frozen=True)
class ObservedDataset:
    name: str
    p_g: float
    p_a_given_g: float
    p_b: float
    p_a_given_b: float
    p_t: float
    p_a: float

    def __post_init__(self):
        values = (self.p_g, self.p_a_given_g, self.p_b, self.p_a_given_b, self.p_t, self.p_a)
        if not all(math.isfinite(v) and 0.0 <= v <= 1.0 for v in values):
            raise DatasetError(f"{self.name}: probabilities must lie in [0, 1]")
        if abs(self.p_g + self.p_b - 1.0) > 1e-6:
            raise DatasetError(f"{self.name}: P(G) + P(B) = {self.p_g + self.p_b!r}, expected 1")
        if abs(self.p_t - self.p_t_recomputed) > 0.01:
            raise DatasetError(f"{self.name}: P_T = {self.p_t} inconsistent with "
                               f"P(G)P(A|G) + P(B)P(A|B) = {self.p_t_recomputed:.4f}")

    @property
    def p_t_recomputed(self) -> float:
        return self.p_g * self.p_a_given_g + self.p_b * self.p_a_given_b

    @property
    def weights(self) -> CategoryWeights:
        # table values are rounded; renormalise so CategoryWeights accepts them
        total = self.p_g + self.p_b
        return CategoryWeights(self.p_g / total, self.p_b / total, 0.0)


@dataclass(frozen=True)
class FitConfig:
    bounds: tuple[float, float] = (-10.0, 10.0)
    starts: int = 64
    tol: float = 1e-10
    max_iters: int = 2000
    model: ModelConfig = ModelConfig()

    def __post_init__(self):
        lo, hi = self.bounds
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"bounds must be finite with lo < hi, got {self.bounds}")
        if max(abs(lo), abs(hi)) > self.model.h_max:
            raise ParamOutOfRange(f"bounds {self.bounds} exceed h_max = {self.model.h_max}")
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class Predictions:
    p_a_given_g: float
    p_a_given_b: float
    p_t: float
    p_a: float


@dataclass(frozen=True)
class StartResult:
    index: int
    x0: tuple[float, ...]
    x: tuple[float, ...]
    sse: float
    success: bool


@dataclass(frozen=True)
class FitResult:
    condition: str
    params: HamiltonianParams
    sse: float
    predictions: Predictions
    start_index: int
    converged: bool
    start_results: tuple[StartResult, ...] = field(default=(), repr=False)


def predictions_for(params: HamiltonianParams, weights: CategoryWeights,
                    model: ModelConfig) -> Predictions:
    ctd = predict_ctd(params, weights, model, warn=False)
    return Predictions(ctd.p_a_given_g, ctd.p_a_given_b, ctd.p_t,
                       predict_alone(params, weights, model, warn=False))


def sse_ctd(params: HamiltonianParams, obs: ObservedDataset, model: ModelConfig = ModelConfig()) -> float:
    pred = predict_ctd(params, obs.weights, model, warn=False)
    return (pred.p_a_given_g - obs.p_a_given_g) ** 2 + (pred.p_a_given_b - obs.p_a_given_b) ** 2


def sse_alone(params: HamiltonianParams, obs: ObservedDataset, model: ModelConfig = ModelConfig()) -> float:
    return (predict_alone(params, obs.weights, model, warn=False) - obs.p_a) ** 2


def start_grid(bounds: tuple[float, float], dims: int, starts: int) -> list[tuple[float, ...]]:
    """First ``starts`` cell centres of the coarsest cubic grid holding that many."""
    per_dim = 1
    while per_dim ** dims < starts:
        per_dim += 1
    lo, hi = bounds
    width = (hi - lo) / per_dim
    axis = [lo + (i + 0.5) * width for i in range(per_dim)]
    return list(itertools.islice(itertools.product(axis, repeat=dims), starts))


def _to_params(x, condition: str) -> HamiltonianParams:
    if condition == "c_then_d":
        return HamiltonianParams(float(x[0]), float(x[1]), float(x[2]))
    return HamiltonianParams(float(x[0]), float(x[1]), 0.0)


def _fit(obs: ObservedDataset, cfg: FitConfig, condition: str, keep_starts: bool) -> FitResult:
    objective_fn = sse_ctd if condition == "c_then_d" else sse_alone
    dims = 3 if condition == "c_then_d" else 2
    lo, hi = cfg.bounds

    def objective(x):
        x = np.clip(x, lo, hi)
        return objective_fn(_to_params(x, condition), obs, cfg.model)

    results = []
    for index, x0 in enumerate(start_grid(cfg.bounds, dims, cfg.starts)):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ModelWarning)
            res = minimize(objective, np.array(x0), method="Nelder-Mead",
                           bounds=[cfg.bounds] * dims,
                           options={"fatol": cfg.tol, "xatol": 1e-8, "maxiter": cfg.max_iters})
        x = tuple(float(v) for v in np.clip(res.x, lo, hi))
        results.append(StartResult(index, tuple(x0), x, float(objective(np.array(x))), bool(res.success)))

    best = min(results, key=lambda r: (r.sse, r.index))
    params = _to_params(best.x, condition)
    converged = best.sse <= cfg.tol or any(r.success for r in results)
    return FitResult(
        condition=condition,
        params=params,
        sse=best.sse,
        predictions=predictions_for(params, obs.weights, cfg.model),
        start_index=best.index,
        converged=converged,
        start_results=tuple(results) if keep_starts else (),
    )


def fit_ctd(obs: ObservedDataset, cfg: FitConfig = FitConfig(), keep_starts: bool = False) -> FitResult:
    return _fit(obs, cfg, "c_then_d", keep_starts)


def fit_alone(obs: ObservedDataset, cfg: FitConfig = FitConfig(), keep_starts: bool = False) -> FitResult:
    return _fit(obs, cfg, "d_alone", keep_starts)


@dataclass(frozen=True)
class ReportRow:
    dataset: str
    method: str
    p_g: float
    p_a_given_g: float
    p_b: float
    p_a_given_b: float
    p_t: float
    p_a: float

    @property
    def interference(self) -> float:
        """``P(A) - P_T``: positive when deciding alone favours attacking."""
        return self.p_a - self.p_t


@dataclass(frozen=True)
class Report:
    rows: tuple[ReportRow, ...]
    fits: dict = field(default_factory=dict, repr=False)

    def for_dataset(self, name: str, method: str) -> ReportRow:
        for row in self.rows:
            if row.dataset == name and row.method == method:
                return row
        raise KeyError((name, method))


def _average(rows: list[ReportRow], method: str) -> ReportRow:
    def mean(attr):
        return sum(getattr(r, attr) for r in rows) / len(rows)
    return ReportRow("Average", method, mean("p_g"), mean("p_a_given_g"), mean("p_b"),
                     mean("p_a_given_b"), mean("p_t"), mean("p_a"))


def evaluate_report(datasets: list[ObservedDataset], cfg: FitConfig = FitConfig()) -> Report:
    """Fit both conditions for every dataset and tabulate observed vs fitted."""
    if not datasets:
        raise ValueError("evaluate_report needs at least one dataset")
    rows, fits = [], {}
    observed, fitted = [], []
    for obs in datasets:
        ctd, alone = fit_ctd(obs, cfg), fit_alone(obs, cfg)
        fits[obs.name] = (ctd, alone)
        o = ReportRow(obs.name, "Obs", obs.p_g, obs.p_a_given_g, obs.p_b, obs.p_a_given_b,
                      obs.p_t_recomputed, obs.p_a)
        f = ReportRow(obs.name, "Fitted", obs.p_g, ctd.predictions.p_a_given_g, obs.p_b,
                      ctd.predictions.p_a_given_b, ctd.predictions.p_t, alone.predictions.p_a)
        observed.append(o)
        fitted.append(f)
        rows += [o, f]
    rows += [_average(observed, "Obs"), _average(fitted, "Fitted")]
    return Report(tuple(rows), fits)

