"""Sampling designs over the unit hypercube.

Three kinds are produced here:

* ``plain``  — a low-discrepancy point set, for uncertainty analysis and
  moment-independent indices;
* ``radial`` — the paired A / B / AB(i) structure that first-order and
  total-effect estimators need, at N*(k+2) rows;
* ``oat``    — one-factor-at-a-time sweeps around a nominal point, kept as
  a deliberately deficient foil for the experiments module.

The quasi-random generator is the base-2 digital (Sobol') sequence with the
direction numbers shipped by scipy; ``seed != 0`` applies scipy's
linear-matrix scramble + digital shift, which preserves the equidistribution
properties used in the tests. ``rng="random"`` swaps the sequence for plain
pseudo-random sampling; bootstrap calibration checks need that regime, since
quasi-random designs make percentile intervals conservative.
"""
from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.stats import qmc

from .errors import CapabilityError, InputError
from .factors import FactorSet

MAX_DIMENSION = 64


@dataclass(frozen=True)
class DesignMatrix:
    """Immutable tagged matrix of unit-hypercube sample points.

    Row tags carry provenance: ``A:j`` / ``B:j`` for base-matrix rows,
    ``AB:i:j`` for the radial splice rows (A row j with column i taken
    from B row j), ``OAT:i:s`` for sweep rows and ``NOMINAL`` for the
    OAT center. Indices are zero-based.
    """

    rows: np.ndarray
    row_tags: tuple[str, ...]
    n: int
    k: int
    seed: int
    design_kind: str
    factor_names: tuple[str, ...]

    def __post_init__(self):
        rows = np.ascontiguousarray(self.rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != self.k:
            raise InputError(f"rows must be (n_total, {self.k}), got {rows.shape}")
        if len(self.row_tags) != rows.shape[0]:
            raise InputError("row_tags length must match row count")
        if rows.size and (rows.min() < 0.0 or rows.max() > 1.0):
            raise InputError("design entries must lie in [0, 1]")
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "row_tags", tuple(self.row_tags))

    @property
    def n_total(self) -> int:
        return self.rows.shape[0]


@dataclass(frozen=True)
class OatDesign:
    """One-factor-at-a-time sweeps: nominal point plus k*L single-axis rows."""

    nominal: np.ndarray
    levels_per_factor: int
    half_width: float
    matrix: DesignMatrix


def sobol_sequence(k: int, n: int, seed: int = 0) -> np.ndarray:
    """First n points of the k-dimensional base-2 digital sequence.

    seed == 0 returns the unscrambled sequence (whose first 2^m points are
    stratified one-per-bin in every 1-D projection); any other seed applies
    a digital scramble, deterministic given (k, n, seed).
    """
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise InputError(f"dimension k must be a positive integer, got {k!r}")
    if k > MAX_DIMENSION:
        raise CapabilityError(
            f"dimension {k} exceeds the supported maximum of {MAX_DIMENSION}"
        )
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"point count n must be a positive integer, got {n!r}")
    engine = qmc.Sobol(d=k, scramble=seed != 0, seed=abs(int(seed)) or None)
    with warnings.catch_warnings():
        # balance warning for non-power-of-two n; the stratification
        # guarantees we rely on only apply at n = 2^m anyway
        warnings.simplefilter("ignore", UserWarning)
        pts = engine.random(int(n))
    # scipy guarantees [0, 1); keep that half-open contract explicit
    return np.clip(pts, 0.0, np.nextafter(1.0, 0.0))


def _random_matrix(k: int, n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).random((n, k))


def radial_design(
    factors: FactorSet, n: int, seed: int = 0, rng: str = "sobol"
) -> DesignMatrix:
    """Build the N*(k+2) row design for simultaneous S_i / T_i estimation.

    A and B come from disjoint column blocks of one 2k-dimensional sequence;
    row AB:i:j equals A row j except in column i, which is taken from B row j.
    """
    k = factors.k
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InputError(f"base sample size must be an integer >= 2, got {n!r}")
    if rng not in ("sobol", "random"):
        raise InputError(f"rng must be 'sobol' or 'random', got {rng!r}")
    if rng == "sobol":
        if 2 * k > MAX_DIMENSION:
            raise CapabilityError(
                f"radial design needs a 2k={2 * k} dimensional sequence; "
                f"maximum supported is {MAX_DIMENSION}"
            )
        base = sobol_sequence(2 * k, n, seed)
    else:
        base = _random_matrix(2 * k, n, seed)
    a, b = base[:, :k], base[:, k:]
    blocks = [a, b]
    tags = [f"A:{j}" for j in range(n)] + [f"B:{j}" for j in range(n)]
    for i in range(k):
        ab = a.copy()
        ab[:, i] = b[:, i]
        blocks.append(ab)
        tags.extend(f"AB:{i}:{j}" for j in range(n))
    return DesignMatrix(
        rows=np.vstack(blocks),
        row_tags=tuple(tags),
        n=int(n),
        k=k,
        seed=int(seed),
        design_kind="radial",
        factor_names=factors.names,
    )


def plain_design(
    factors: FactorSet, n: int, seed: int = 0, rng: str = "sobol"
) -> DesignMatrix:
    """An n-row low-discrepancy (or pseudo-random) sample of the unit cube."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InputError(f"sample size must be a positive integer, got {n!r}")
    if rng == "sobol":
        rows = sobol_sequence(factors.k, n, seed)
    elif rng == "random":
        rows = _random_matrix(factors.k, n, seed)
    else:
        raise InputError(f"rng must be 'sobol' or 'random', got {rng!r}")
    return DesignMatrix(
        rows=rows,
        row_tags=tuple(f"A:{j}" for j in range(n)),
        n=int(n),
        k=factors.k,
        seed=int(seed),
        design_kind="plain",
        factor_names=factors.names,
    )


def oat_design(
    factors: FactorSet,
    levels: int,
    half_width: float,
    nominal=None,
) -> OatDesign:
    """Nominal point plus, per factor, `levels` equispaced single-axis rows.

    Sweep i covers [nominal_i - half_width, nominal_i + half_width] while
    every other coordinate stays at its nominal value.
    """
    k = factors.k
    if not isinstance(levels, (int, np.integer)) or levels < 2:
        raise InputError(f"levels must be an integer >= 2, got {levels!r}")
    half_width = float(half_width)
    if not 0.0 < half_width <= 0.5:
        raise InputError(f"half_width must lie in (0, 0.5], got {half_width!r}")
    if nominal is None:
        nominal = np.full(k, 0.5)
    else:
        nominal = np.asarray(nominal, dtype=float)
        if nominal.shape != (k,):
            raise InputError(f"nominal must have shape ({k},)")
    if (nominal - half_width).min() < 0.0 or (nominal + half_width).max() > 1.0:
        raise InputError("sweeps must stay inside the unit cube; shrink half_width")
    rows = [nominal.copy()]
    tags = ["NOMINAL"]
    for i in range(k):
        sweep = np.linspace(nominal[i] - half_width, nominal[i] + half_width, levels)
        for s, value in enumerate(sweep):
            row = nominal.copy()
            row[i] = value
            rows.append(row)
            tags.append(f"OAT:{i}:{s}")
    matrix = DesignMatrix(
        rows=np.array(rows),
        row_tags=tuple(tags),
        n=int(levels),
        k=k,
        seed=0,
        design_kind="oat",
        factor_names=factors.names,
    )
    return OatDesign(
        nominal=nominal,
        levels_per_factor=int(levels),
        half_width=half_width,
        matrix=matrix,
    )


def radial_block_slices(design: DesignMatrix) -> tuple[slice, slice, list[slice]]:
    """(A, B, [AB per factor]) row slices of a radial design, tag-verified."""
    if design.design_kind != "radial":
        raise InputError(f"expected a radial design, got {design.design_kind!r}")
    n, k = design.n, design.k
    if design.n_total != n * (k + 2):
        raise InputError("radial design is malformed: row count != N*(k+2)")
    a, b = slice(0, n), slice(n, 2 * n)
    ab = [slice((2 + i) * n, (3 + i) * n) for i in range(k)]
    tags = design.row_tags
    if tags[0] != "A:0" or tags[n] != "B:0" or tags[2 * n] != "AB:0:0":
        raise InputError("radial design is malformed: unexpected row tags")
    return a, b, ab


def design_to_csv(design: DesignMatrix, path) -> None:
    """Write the design as CSV: one column per factor plus a __tag column."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(design.factor_names) + ["__tag"])
        for row, tag in zip(design.rows, design.row_tags):
            writer.writerow([repr(float(v)) for v in row] + [tag])
