"""Entropy and classical mutual information over arrangements of a fixed spectrum.

Conventions
-----------
* All logarithms are natural.  Base-2 reporting is a presentation concern
  and is handled by the command line layer (values rescale by 1/ln 2).
* ``H(x) = -x log x`` with ``H(0) = 0`` by an explicit branch, never by
  relying on floating point ``0 * (-inf)``.
* A *spectrum* is a descending, unit-sum probability vector of length
  ``m * n``; an *arrangement* places those values in an ``m x n`` grid.
  The classical mutual information of an arrangement ``P`` is

      I(P) = sum_i H(r_i) + sum_j H(c_j) - sum_k H(lambda_k)

  where ``r_i``/``c_j`` are the row/column sums and ``lambda_k`` the
  entries themselves.  ``I`` depends only on the arrangement's row/column
  permutation class, not on the labelling of rows and columns.
"""
from __future__ import annotations

import dataclasses
import math
from typing import Sequence

import numpy as np

__all__ = [
    "EPSILON",
    "TIE_REDRAW_GAP",
    "Spectrum",
    "ProbMatrix",
    "Marginals",
    "entropy_term",
    "binary_entropy",
    "arrange",
    "marginals",
    "cmi",
    "sample_spectrum",
    "sample_spectra",
]

#: Comparison tolerance for equality/ordering assertions on information values.
EPSILON = 1e-12

#: Sampled spectrum entries closer than this are considered tied and redrawn.
TIE_REDRAW_GAP = 1e-15


def entropy_term(x: float) -> float:
    """Single entropy term ``-x log x`` (natural log), with ``H(0) = 0``.

    Raises ``ValueError`` if ``x`` lies outside ``[0, 1]`` beyond EPSILON;
    round-off underflow/overshoot within tolerance is clamped.
    """
    if x < -EPSILON or x > 1.0 + EPSILON:
        raise ValueError(f"entropy_term: argument {x!r} outside [0, 1]")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 0.0
    return -x * math.log(x)


def binary_entropy(x: float) -> float:
    """Binary entropy ``h(x) = H(x) + H(1 - x)`` in nats."""
    if x < -EPSILON or x > 1.0 + EPSILON:
        raise ValueError(f"binary_entropy: argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    return entropy_term(x) + entropy_term(1.0 - x)


def _xlogx_sum(values: np.ndarray) -> float:
    """Sum of -v log v over an array, treating v <= 0 as contributing 0."""
    v = np.asarray(values, dtype=float)
    pos = v > 0.0
    out = np.zeros_like(v)
    out[pos] = -v[pos] * np.log(v[pos])
    return float(out.sum())


@dataclasses.dataclass(frozen=True)
class Spectrum:
    """A descending, unit-sum probability vector (the fixed eigenvalues)."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise ValueError("Spectrum needs at least 2 entries")
        if any(v < -EPSILON for v in vals):
            raise ValueError(f"Spectrum has a negative entry: {min(vals)!r}")
        total = math.fsum(vals)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"Spectrum sums to {total!r}, not 1")
        for i in range(len(vals) - 1):
            if vals[i] < vals[i + 1] - EPSILON:
                raise ValueError(
                    "Spectrum values must be sorted in non-increasing order; "
                    f"entries {i} and {i + 1} are {vals[i]!r} < {vals[i + 1]!r}"
                )

    @property
    def dim(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    def entropy(self) -> float:
        """Shannon entropy of the spectrum itself, sum_k H(lambda_k)."""
        return _xlogx_sum(self.as_array())


@dataclasses.dataclass(frozen=True)
class ProbMatrix:
    """An m x n arrangement of a spectrum (a joint probability matrix)."""

    entries: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(float(v) for v in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows or not rows[0]:
            raise ValueError("ProbMatrix must be non-empty")
        n = len(rows[0])
        if any(len(row) != n for row in rows):
            raise ValueError("ProbMatrix rows have unequal lengths")
        flat = [v for row in rows for v in row]
        if any(v < -EPSILON for v in flat):
            raise ValueError(f"ProbMatrix has a negative entry: {min(flat)!r}")
        total = math.fsum(flat)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"ProbMatrix entries sum to {total!r}, not 1")

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    @classmethod
    def from_array(cls, arr: np.ndarray | Sequence[Sequence[float]]) -> "ProbMatrix":
        a = np.asarray(arr, dtype=float)
        if a.ndim != 2:
            raise ValueError("ProbMatrix.from_array expects a 2-d array")
        return cls(tuple(tuple(float(v) for v in row) for row in a))


@dataclasses.dataclass(frozen=True)
class Marginals:
    """Row and column sums of an arrangement."""

    rows: tuple[float, ...]
    cols: tuple[float, ...]


def arrange(s: Spectrum, perm: Sequence[int], m: int, n: int) -> ProbMatrix:
    """Arrange spectrum ``s`` into an ``m x n`` matrix along ``perm``.

    ``perm`` is a zero-based permutation of ``range(m * n)``: the entry at
    flat (row-major) position ``k`` is ``s.values[perm[k]]``.
    """
    if s.dim != m * n:
        raise ValueError(f"spectrum dim {s.dim} != m*n = {m * n}")
    p = tuple(int(k) for k in perm)
    if sorted(p) != list(range(m * n)):
        raise ValueError(f"perm {perm!r} is not a permutation of range({m * n})")
    flat = [s.values[p[k]] for k in range(m * n)]
    return ProbMatrix(tuple(tuple(flat[i * n + j] for j in range(n)) for i in range(m)))


def marginals(P: ProbMatrix) -> Marginals:
    """Row sums ``r_i`` and column sums ``c_j`` of the arrangement."""
    a = P.as_array()
    return Marginals(
        rows=tuple(float(v) for v in a.sum(axis=1)),
        cols=tuple(float(v) for v in a.sum(axis=0)),
    )


def cmi(P: ProbMatrix) -> float:
    """Classical mutual information of the arrangement, in nats.

    ``I(P) = sum_i H(r_i) + sum_j H(c_j) - sum_k H(lambda_k)``.
    """
    a = P.as_array()
    return (
        _xlogx_sum(a.sum(axis=1))
        + _xlogx_sum(a.sum(axis=0))
        - _xlogx_sum(a.ravel())
    )


def sample_spectrum(dim: int, rng: np.random.Generator) -> Spectrum:
    """One point uniform on the probability simplex, sorted descending.

    Uses normalized unit-rate exponential spacings (uniform on the simplex).
    Draws whose sorted entries contain a gap below ``TIE_REDRAW_GAP`` are
    redrawn so downstream strict-ordering assumptions hold.
    """
    if dim < 2:
        raise ValueError("sample_spectrum needs dim >= 2")
    while True:
        e = rng.standard_exponential(dim)
        v = np.sort(e / e.sum())[::-1]
        if float(np.min(v[:-1] - v[1:])) >= TIE_REDRAW_GAP:
            return Spectrum(tuple(float(x) for x in v))


def sample_spectra(dim: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Batch version of :func:`sample_spectrum`.

    Returns a ``(count, dim)`` array whose rows are descending unit-sum
    spectra; rows containing near-ties (gap < ``TIE_REDRAW_GAP``) are redrawn.
    """
    if dim < 2:
        raise ValueError("sample_spectra needs dim >= 2")
    if count < 0:
        raise ValueError("sample_spectra needs count >= 0")
    e = rng.standard_exponential((count, dim))
    s = e / e.sum(axis=1, keepdims=True)
    s.sort(axis=1)
    s = s[:, ::-1]
    while True:
        gaps = s[:, :-1] - s[:, 1:]
        bad = np.flatnonzero(gaps.min(axis=1) < TIE_REDRAW_GAP) if count else np.array([], int)
        if bad.size == 0:
            return np.ascontiguousarray(s)
        e = rng.standard_exponential((bad.size, dim))
        t = e / e.sum(axis=1, keepdims=True)
        t.sort(axis=1)
        s[bad] = t[:, ::-1]
