"""Uncertain input factors: marginal distributions and unit-cube transforms.

Every sampling design lives on the unit hypercube; a ``FactorSet`` maps each
coordinate to factor units through the inverse CDF of its marginal. Factors
are mutually independent by construction (correlated inputs are out of scope).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import InputError

# u is clamped here before normal-quantile evaluation so sampled values are
# always finite; see also inverse_transform().
TAIL_EPS = 1e-12

DISTRIBUTIONS = (
    "uniform",
    "normal",
    "truncated-normal",
    "triangular",
    "log-uniform",
    "discrete-uniform",
)

_REQUIRED_PARAMS = {
    "uniform": ("lo", "hi"),
    "normal": ("mean", "sd"),
    "truncated-normal": ("mean", "sd", "lo", "hi"),
    "triangular": ("lo", "mode", "hi"),
    "log-uniform": ("lo", "hi"),
    "discrete-uniform": ("values",),
}


def _as_finite_float(value: Any, what: str) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise InputError(f"{what} must be a real number, got {value!r}") from None
    if not np.isfinite(out):
        raise InputError(f"{what} must be finite, got {out!r}")
    return out


@dataclass(frozen=True)
class FactorSpec:
    """One uncertain input factor: name, marginal family, natural-unit parameters."""

    name: str
    distribution: str
    params: dict[str, Any]

    def __post_init__(self):
        if not self.name or not isinstance(self.name, str):
            raise InputError("factor name must be a non-empty string")
        if self.distribution not in DISTRIBUTIONS:
            raise InputError(
                f"unknown distribution {self.distribution!r}; "
                f"supported: {', '.join(DISTRIBUTIONS)}"
            )
        required = _REQUIRED_PARAMS[self.distribution]
        unknown = set(self.params) - set(required)
        if unknown:
            raise InputError(
                f"factor {self.name!r}: unknown parameter(s) {sorted(unknown)} "
                f"for {self.distribution}"
            )
        missing = set(required) - set(self.params)
        if missing:
            raise InputError(
                f"factor {self.name!r}: missing parameter(s) {sorted(missing)} "
                f"for {self.distribution}"
            )
        object.__setattr__(self, "params", dict(self.params))
        self._validate_params()

    def _validate_params(self):
        p = self.params
        d = self.distribution
        if d == "discrete-uniform":
            values = p["values"]
            try:
                arr = np.asarray(values, dtype=float)
            except (TypeError, ValueError):
                raise InputError(
                    f"factor {self.name!r}: values must be numeric"
                ) from None
            if arr.ndim != 1 or arr.size < 1:
                raise InputError(
                    f"factor {self.name!r}: values must be a non-empty list"
                )
            if not np.all(np.isfinite(arr)):
                raise InputError(f"factor {self.name!r}: values must be finite")
            p["values"] = [float(v) for v in arr]
            return
        floats = {k: _as_finite_float(p[k], f"factor {self.name!r}: {k}") for k in p}
        p.update(floats)
        if d == "uniform":
            if not p["lo"] < p["hi"]:
                raise InputError(f"factor {self.name!r}: uniform needs lo < hi")
        elif d == "normal":
            if not p["sd"] > 0:
                raise InputError(f"factor {self.name!r}: normal needs sd > 0")
        elif d == "truncated-normal":
            if not p["sd"] > 0:
                raise InputError(f"factor {self.name!r}: truncated-normal needs sd > 0")
            if not p["lo"] < p["hi"]:
                raise InputError(f"factor {self.name!r}: truncated-normal needs lo < hi")
        elif d == "triangular":
            if not (p["lo"] <= p["mode"] <= p["hi"] and p["lo"] < p["hi"]):
                raise InputError(
                    f"factor {self.name!r}: triangular needs lo <= mode <= hi, lo < hi"
                )
        elif d == "log-uniform":
            if not 0 < p["lo"] < p["hi"]:
                raise InputError(f"factor {self.name!r}: log-uniform needs 0 < lo < hi")

    def support(self) -> tuple[float, float]:
        """(lower, upper) bounds of the marginal; normal tails are clamped."""
        p = self.params
        d = self.distribution
        if d in ("uniform", "truncated-normal", "triangular", "log-uniform"):
            return p["lo"], p["hi"]
        if d == "discrete-uniform":
            return min(p["values"]), max(p["values"])
        z = float(ndtri(1.0 - TAIL_EPS))
        return p["mean"] - z * p["sd"], p["mean"] + z * p["sd"]

    def moments(self) -> tuple[float, float]:
        """Analytic (mean, sd) of the marginal distribution."""
        p = self.params
        d = self.distribution
        if d == "uniform":
            return (p["lo"] + p["hi"]) / 2, (p["hi"] - p["lo"]) / np.sqrt(12.0)
        if d == "normal":
            return p["mean"], p["sd"]
        if d == "truncated-normal":
            a = (p["lo"] - p["mean"]) / p["sd"]
            b = (p["hi"] - p["mean"]) / p["sd"]
            phi = lambda z: np.exp(-0.5 * z * z) / np.sqrt(2 * np.pi)
            z_mass = ndtr(b) - ndtr(a)
            num = phi(a) - phi(b)
            mean = p["mean"] + p["sd"] * num / z_mass
            var = p["sd"] ** 2 * (
                1 + (a * phi(a) - b * phi(b)) / z_mass - (num / z_mass) ** 2
            )
            return float(mean), float(np.sqrt(max(var, 0.0)))
        if d == "triangular":
            lo, mode, hi = p["lo"], p["mode"], p["hi"]
            mean = (lo + mode + hi) / 3
            var = (lo**2 + mode**2 + hi**2 - lo * mode - lo * hi - mode * hi) / 18
            return mean, np.sqrt(var)
        if d == "log-uniform":
            span = np.log(p["hi"] / p["lo"])
            mean = (p["hi"] - p["lo"]) / span
            second = (p["hi"] ** 2 - p["lo"] ** 2) / (2 * span)
            return float(mean), float(np.sqrt(max(second - mean**2, 0.0)))
        values = np.asarray(p["values"])
        return float(values.mean()), float(values.std())


@dataclass(frozen=True)
class FactorSet:
    """Ordered collection of factors; order defines design-matrix columns."""

    specs: tuple[FactorSpec, ...]

    def __init__(self, specs):
        specs = tuple(specs)
        if len(specs) < 1:
            raise InputError("a FactorSet needs at least one factor")
        names = [s.name for s in specs]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise InputError(f"duplicate factor name(s): {dupes}")
        object.__setattr__(self, "specs", specs)

    @property
    def k(self) -> int:
        return len(self.specs)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.specs)

    def __iter__(self) -> Iterator[FactorSpec]:
        return iter(self.specs)

    def __len__(self) -> int:
        return len(self.specs)

    def __getitem__(self, i) -> FactorSpec:
        return self.specs[i]


def _quantile_array(spec: FactorSpec, u: np.ndarray) -> np.ndarray:
    p = spec.params
    d = spec.distribution
    if d == "uniform":
        return p["lo"] + u * (p["hi"] - p["lo"])
    if d == "normal":
        uc = np.clip(u, TAIL_EPS, 1.0 - TAIL_EPS)
        return p["mean"] + p["sd"] * ndtri(uc)
    if d == "truncated-normal":
        a = (p["lo"] - p["mean"]) / p["sd"]
        b = (p["hi"] - p["mean"]) / p["sd"]
        fa, fb = ndtr(a), ndtr(b)
        inner = np.clip(fa + u * (fb - fa), TAIL_EPS, 1.0 - TAIL_EPS)
        return np.clip(p["mean"] + p["sd"] * ndtri(inner), p["lo"], p["hi"])
    if d == "triangular":
        lo, mode, hi = p["lo"], p["mode"], p["hi"]
        fc = (mode - lo) / (hi - lo)
        left = lo + np.sqrt(np.maximum(u, 0.0) * (hi - lo) * (mode - lo))
        right = hi - np.sqrt(np.maximum(1.0 - u, 0.0) * (hi - lo) * (hi - mode))
        return np.where(u < fc, left, right)
    if d == "log-uniform":
        return np.exp(np.log(p["lo"]) + u * (np.log(p["hi"]) - np.log(p["lo"])))
    # discrete-uniform: u in [j/m, (j+1)/m) -> j-th value; u=1 -> last value
    values = np.asarray(p["values"])
    m = len(values)
    j = np.minimum((u * m).astype(int), m - 1)
    return values[j]


def inverse_transform(spec: FactorSpec, u: float) -> float:
    """Map u in [0, 1] to the u-quantile of the factor's marginal.

    Monotone nondecreasing in u; u = 0 and u = 1 hit the support bounds
    (unbounded normal tails are clamped at the TAIL_EPS quantiles so the
    result is always finite).
    """
    u = float(u)
    if not np.isfinite(u) or not 0.0 <= u <= 1.0:
        raise InputError(f"u must lie in [0, 1], got {u!r}")
    return float(_quantile_array(spec, np.asarray([u]))[0])


def transform_row(factors: FactorSet, u_row) -> np.ndarray:
    """Transform one unit-cube row to factor units, column per factor."""
    u = np.asarray(u_row, dtype=float)
    if u.ndim != 1 or u.size != factors.k:
        raise InputError(f"u_row must have length k={factors.k}, got shape {u.shape}")
    if not np.all(np.isfinite(u)) or u.min() < 0.0 or u.max() > 1.0:
        raise InputError("u_row entries must be finite and in [0, 1]")
    return np.array(
        [_quantile_array(spec, u[i : i + 1])[0] for i, spec in enumerate(factors)]
    )


def transform_matrix(factors: FactorSet, u_rows: np.ndarray) -> np.ndarray:
    """Vectorized transform_row over an (n, k) unit-cube matrix."""
    u = np.asarray(u_rows, dtype=float)
    if u.ndim != 2 or u.shape[1] != factors.k:
        raise InputError(f"expected an (n, {factors.k}) matrix, got shape {u.shape}")
    if not np.all(np.isfinite(u)) or u.min() < 0.0 or u.max() > 1.0:
        raise InputError("unit-cube entries must be finite and in [0, 1]")
    out = np.empty_like(u)
    for i, spec in enumerate(factors):
        out[:, i] = _quantile_array(spec, u[:, i])
    return out
