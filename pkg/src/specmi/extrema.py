"""Extremal arrangements of a spectrum: exact sweeps and randomized censuses.

The mutual information of every class of one shape is evaluated together
through a term decomposition: the distinct row/column symbol subsets that
occur across all canonical representatives become columns of a 0/1 matrix
``A`` (symbols x terms), and a count matrix ``G`` (terms x classes) says how
often each term appears among a class's marginals.  For a block of spectra
``S`` (samples x symbols, descending rows = symbol values),

    marginal entropy totals = (-(S @ A) * log(S @ A)) @ G

and the mutual information of class c is that total minus the spectrum
entropy.  The subtraction is constant across classes, so argmax/argmin and
tie detection work on the totals directly.

Censuses draw each block of spectra from its own child of the seed
(``SeedSequence(seed, spawn_key=(block,))``), so results are invariant
under the worker count, and blocks are accumulated in block order.
"""
from __future__ import annotations

import dataclasses
import functools
import json
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .classes import class_table, cross_pairs, maxima_chain_steps, r23_table
from .core import EPSILON, Spectrum, sample_spectra
from .orders import (
    RelationKind,
    RelationVerdict,
    majorisation_certificate,
    symbolic_transposition_context,
    titrate_check,
)

__all__ = [
    "ExtremaReport",
    "brute_force_extrema",
    "ConvergencePoint",
    "CensusReport",
    "CheckpointMismatchError",
    "census",
    "verify_theorem_chain",
]

#: Largest samples-x-classes block evaluated in one allocation; bigger
#: tables fall back to a two-pass sweep over class slices.
_ELEMENT_BUDGET = 40_000_000

_CHECKPOINT_SCHEMA = 1


@dataclasses.dataclass(frozen=True)
class _TermDecomposition:
    symbols_by_term: np.ndarray  # (mn, T) 0/1
    term_counts: np.ndarray  # (T, C)


@functools.lru_cache(maxsize=None)
def _decomposition(m: int, n: int) -> _TermDecomposition:
    table = class_table(m, n)
    mn = m * n
    term_index: dict[tuple[int, ...], int] = {}
    hits: list[tuple[int, int]] = []  # (term, class column)
    for col, cls in enumerate(table.classes):
        grid = cls.canonical
        signatures = [tuple(sorted(row)) for row in grid]
        signatures += [tuple(sorted(c)) for c in zip(*grid)]
        for sig in signatures:
            t = term_index.setdefault(sig, len(term_index))
            hits.append((t, col))
    A = np.zeros((mn, len(term_index)), dtype=np.float64)
    for sig, t in term_index.items():
        A[list(sig), t] = 1.0
    G = np.zeros((len(term_index), len(table)), dtype=np.float64)
    for t, col in hits:
        G[t, col] += 1.0
    return _TermDecomposition(symbols_by_term=A, term_counts=G)


def _marginal_entropy_terms(spectra: np.ndarray, A: np.ndarray) -> np.ndarray:
    sums = spectra @ A
    return -sums * np.log(sums)


def _block_extrema(
    hterms: np.ndarray, G: np.ndarray, tie: float
) -> tuple[np.ndarray, np.ndarray, int, int]:
    """Per-class argmax/argmin hit counts and tie-event counts for one block."""
    count = hterms.shape[0]
    n_classes = G.shape[1]
    if count * n_classes <= _ELEMENT_BUDGET:
        vals = hterms @ G
        mask_max = vals >= (vals.max(axis=1) - tie)[:, None]
        mask_min = vals <= (vals.min(axis=1) + tie)[:, None]
        return (
            mask_max.sum(axis=0).astype(np.int64),
            mask_min.sum(axis=0).astype(np.int64),
            int((mask_max.sum(axis=1) >= 2).sum()),
            int((mask_min.sum(axis=1) >= 2).sum()),
        )
    width = max(1, _ELEMENT_BUDGET // max(count, 1))
    row_max = np.full(count, -np.inf)
    row_min = np.full(count, np.inf)
    for c0 in range(0, n_classes, width):
        vals = hterms @ G[:, c0 : c0 + width]
        np.maximum(row_max, vals.max(axis=1), out=row_max)
        np.minimum(row_min, vals.min(axis=1), out=row_min)
    max_hits = np.zeros(n_classes, dtype=np.int64)
    min_hits = np.zeros(n_classes, dtype=np.int64)
    max_per_row = np.zeros(count, dtype=np.int64)
    min_per_row = np.zeros(count, dtype=np.int64)
    for c0 in range(0, n_classes, width):
        vals = hterms @ G[:, c0 : c0 + width]
        mask = vals >= (row_max - tie)[:, None]
        max_hits[c0 : c0 + width] = mask.sum(axis=0)
        max_per_row += mask.sum(axis=1)
        mask = vals <= (row_min + tie)[:, None]
        min_hits[c0 : c0 + width] = mask.sum(axis=0)
        min_per_row += mask.sum(axis=1)
    return max_hits, min_hits, int((max_per_row >= 2).sum()), int((min_per_row >= 2).sum())


@dataclasses.dataclass(frozen=True)
class ExtremaReport:
    """Mutual information of every class of one shape at one spectrum."""

    m: int
    n: int
    spectrum: Spectrum
    values: tuple[float, ...]  # nats, indexed by class (1-based index - 1)
    maxima: tuple[int, ...]  # 1-based class indices within EPSILON of the max
    minima: tuple[int, ...]
    max_value: float
    min_value: float


def brute_force_extrema(s: Spectrum, m: int, n: int) -> ExtremaReport:
    """Evaluate every class at one spectrum and report the extremal ones."""
    if s.dim != m * n:
        raise ValueError(f"spectrum has {s.dim} entries; a {m}x{n} grid needs {m * n}")
    dec = _decomposition(m, n)
    row = s.as_array()[None, :]
    totals = (_marginal_entropy_terms(row, dec.symbols_by_term) @ dec.term_counts)[0]
    values = totals - s.entropy()
    vmax = float(values.max())
    vmin = float(values.min())
    maxima = tuple(int(i) + 1 for i in np.flatnonzero(values >= vmax - EPSILON))
    minima = tuple(int(i) + 1 for i in np.flatnonzero(values <= vmin + EPSILON))
    return ExtremaReport(
        m=m,
        n=n,
        spectrum=s,
        values=tuple(float(v) for v in values),
        maxima=maxima,
        minima=minima,
        max_value=vmax,
        min_value=vmin,
    )


@dataclasses.dataclass(frozen=True)
class ConvergencePoint:
    """Realized argmax/argmin class counts after a number of samples."""

    samples: int
    n_max_classes: int
    n_min_classes: int


class CheckpointMismatchError(Exception):
    """A checkpoint file disagrees with the requested census parameters."""


@dataclasses.dataclass(frozen=True)
class CensusReport:
    """Result of a randomized census over one shape.

    ``max_hits[c]``/``min_hits[c]`` count the samples at which class c+1
    attained the maximum/minimum (ties within EPSILON credit every tied
    class and are also tallied as tie events).
    """

    m: int
    n: int
    samples: int
    samples_done: int
    seed: int
    block_size: int
    workers: int
    max_hits: tuple[int, ...]
    min_hits: tuple[int, ...]
    tie_events_max: int
    tie_events_min: int
    convergence: tuple[ConvergencePoint, ...]

    @property
    def max_classes(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, h in enumerate(self.max_hits) if h > 0)

    @property
    def min_classes(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, h in enumerate(self.min_hits) if h > 0)


@dataclasses.dataclass
class _CensusState:
    blocks_done: int
    max_hits: np.ndarray
    min_hits: np.ndarray
    tie_events_max: int
    tie_events_min: int
    convergence: list[ConvergencePoint]


def _checkpoint_payload(state: _CensusState, m, n, samples, seed, block_size) -> dict:
    return {
        "schema_version": _CHECKPOINT_SCHEMA,
        "m": m,
        "n": n,
        "samples": samples,
        "seed": seed,
        "block_size": block_size,
        "blocks_done": state.blocks_done,
        "max_hits": {str(i + 1): int(h) for i, h in enumerate(state.max_hits) if h},
        "min_hits": {str(i + 1): int(h) for i, h in enumerate(state.min_hits) if h},
        "tie_events_max": state.tie_events_max,
        "tie_events_min": state.tie_events_min,
        "convergence": [
            [p.samples, p.n_max_classes, p.n_min_classes] for p in state.convergence
        ],
    }


def _write_checkpoint(path: str, payload: dict) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def _load_checkpoint(path: str, m, n, samples, seed, block_size, n_classes) -> _CensusState:
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    expected = {
        "schema_version": _CHECKPOINT_SCHEMA,
        "m": m,
        "n": n,
        "samples": samples,
        "seed": seed,
        "block_size": block_size,
    }
    for key, want in expected.items():
        got = payload.get(key)
        if got != want:
            raise CheckpointMismatchError(
                f"checkpoint {path!r} has {key}={got!r}, expected {want!r}"
            )
    max_hits = np.zeros(n_classes, dtype=np.int64)
    min_hits = np.zeros(n_classes, dtype=np.int64)
    for idx, h in payload["max_hits"].items():
        max_hits[int(idx) - 1] = h
    for idx, h in payload["min_hits"].items():
        min_hits[int(idx) - 1] = h
    return _CensusState(
        blocks_done=int(payload["blocks_done"]),
        max_hits=max_hits,
        min_hits=min_hits,
        tie_events_max=int(payload["tie_events_max"]),
        tie_events_min=int(payload["tie_events_min"]),
        convergence=[ConvergencePoint(*row) for row in payload["convergence"]],
    )


def census(
    m: int,
    n: int,
    samples: int,
    seed: int,
    *,
    workers: int = 1,
    block_size: int = 2500,
    checkpoint_path: str | None = None,
    checkpoint_every: int = 10_000,
    convergence_every: int = 10_000,
    resume: bool = False,
    _max_blocks: int | None = None,
) -> CensusReport:
    """Randomized census of argmax/argmin classes over uniform spectra.

    Draws ``samples`` spectra uniformly from the simplex (each block of
    ``block_size`` from its own deterministic child of ``seed``), evaluates
    every class, and tallies which classes attain the extremes.  The result
    is independent of ``workers``.  With ``resume=True`` and an existing
    checkpoint written by the same parameters, continues where it left off;
    a checkpoint for different parameters raises CheckpointMismatchError.
    ``_max_blocks`` stops early after that many new blocks (for testing).
    """
    if samples < 1:
        raise ValueError("census needs samples >= 1")
    if workers < 1:
        raise ValueError("census needs workers >= 1")
    if block_size < 1:
        raise ValueError("census needs block_size >= 1")
    dec = _decomposition(m, n)
    n_classes = dec.term_counts.shape[1]
    mn = m * n
    n_blocks = (samples + block_size - 1) // block_size

    state = _CensusState(
        blocks_done=0,
        max_hits=np.zeros(n_classes, dtype=np.int64),
        min_hits=np.zeros(n_classes, dtype=np.int64),
        tie_events_max=0,
        tie_events_min=0,
        convergence=[],
    )
    if resume and checkpoint_path and os.path.exists(checkpoint_path):
        state = _load_checkpoint(
            checkpoint_path, m, n, samples, seed, block_size, n_classes
        )

    def run_block(b: int) -> tuple[np.ndarray, np.ndarray, int, int]:
        size = min(block_size, samples - b * block_size)
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(b,)))
        )
        spectra = sample_spectra(mn, size, rng)
        hterms = _marginal_entropy_terms(spectra, dec.symbols_by_term)
        return _block_extrema(hterms, dec.term_counts, EPSILON)

    todo = list(range(state.blocks_done, n_blocks))
    if _max_blocks is not None:
        todo = todo[:_max_blocks]

    def accumulate(b: int, result: tuple[np.ndarray, np.ndarray, int, int]) -> None:
        max_hits, min_hits, ties_max, ties_min = result
        state.max_hits += max_hits
        state.min_hits += min_hits
        state.tie_events_max += ties_max
        state.tie_events_min += ties_min
        state.blocks_done = b + 1
        done = min(state.blocks_done * block_size, samples)
        if done % convergence_every == 0 or done == samples:
            point = ConvergencePoint(
                samples=done,
                n_max_classes=int((state.max_hits > 0).sum()),
                n_min_classes=int((state.min_hits > 0).sum()),
            )
            if not state.convergence or state.convergence[-1].samples != done:
                state.convergence.append(point)
        if checkpoint_path and (done % checkpoint_every == 0 or done == samples):
            _write_checkpoint(
                checkpoint_path,
                _checkpoint_payload(state, m, n, samples, seed, block_size),
            )

    if todo:
        if workers == 1:
            for b in todo:
                accumulate(b, run_block(b))
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for b, result in zip(todo, pool.map(run_block, todo)):
                    accumulate(b, result)
        if checkpoint_path:
            _write_checkpoint(
                checkpoint_path,
                _checkpoint_payload(state, m, n, samples, seed, block_size),
            )

    return CensusReport(
        m=m,
        n=n,
        samples=samples,
        samples_done=min(state.blocks_done * block_size, samples),
        seed=seed,
        block_size=block_size,
        workers=workers,
        max_hits=tuple(int(h) for h in state.max_hits),
        min_hits=tuple(int(h) for h in state.min_hits),
        tie_events_max=state.tie_events_max,
        tie_events_min=state.tie_events_min,
        convergence=tuple(state.convergence),
    )


def verify_theorem_chain() -> list[RelationVerdict]:
    """Re-derive every certificate behind the 2x3 extremal classification.

    Returns one verdict per certified step: the four titration-certified
    transpositions walking the maximal-side candidates up to class 48, then
    the fifteen cross-hexagon majorisations that eliminate the remaining
    candidates.  All must come back ProvenForward.
    """
    table = r23_table()
    out: list[RelationVerdict] = []
    for src, pos_a, pos_b, dst in maxima_chain_steps():
        verdict = titrate_check(
            symbolic_transposition_context(table.get(src).canonical, pos_a, pos_b)
        )
        header = (
            f"chain step: class {src} -> class {dst} "
            f"(swap positions {pos_a} and {pos_b})"
        )
        out.append(RelationVerdict(verdict.kind, (header,) + verdict.certificate))
    for src, dst in cross_pairs():
        cert = majorisation_certificate(
            table.get(src).canonical, table.get(dst).canonical
        )
        header = f"cross edge: class {src} majorises class {dst}"
        if cert is None:
            out.append(
                RelationVerdict(
                    RelationKind.INCONCLUSIVE, (header, "no certificate derivable")
                )
            )
        else:
            out.append(RelationVerdict(RelationKind.PROVEN_FORWARD, (header,) + cert))
    return out
