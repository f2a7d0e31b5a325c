"""Order relations between arrangements: majorisation, a-priori certificates,
and the identric-mean transposition calculus.

Symbolic side
-------------
Arrangement entries are unknowns from an ordered alphabet
``s_0 > s_1 > ... > s_{mn-1} > 0`` (rendered ``a > b > ...``), summing to 1.
:func:`symbolic_sum_compare` proves inequalities between sums of symbols
using exactly two sound rules:

* cancellation of the common multiset, and
* greedy injective dominance matching (every residual left symbol is paired
  with a strictly larger unused right symbol; unmatched right residue is
  fine because all symbols are positive).

The prover is deliberately incomplete: a verdict of ``Inconclusive`` means
"not derivable by these rules", not "false".  Verdicts state non-strict
conclusions (``<=``) so they remain sound on degenerate spectra; equal
multisets therefore compare as ``ProvenForward``.

Numeric side
------------
The change of mutual information under a transposition of two entries
``alpha > beta`` factors through identric means of the affected row and
column sums:

    I(P^tau) - I(P) = (alpha - beta) * log[ mu(r_a^t, r_a) mu(c_a^t, c_a)
                                          / (mu(r_b, r_b^t) mu(c_b, c_b^t)) ]

with the row (column) factors dropped when the two entries share a row
(column).  :func:`titrate_check` decides the sign of that expression from
the symbol ordering alone whenever the minimum of the four base sums is
provably on the beta side and the base-sum comparison goes the right way,
or when both beta sums are dominated outright.
"""
from __future__ import annotations

import collections
import dataclasses
import enum
import itertools
import math
import threading
from typing import Iterable, Sequence

from .core import EPSILON, ProbMatrix, cmi  # noqa: F401  (cmi re-exported for callers)

__all__ = [
    "SYMBOL_LETTERS",
    "SymbolicSum",
    "RelationKind",
    "RelationVerdict",
    "symbolic_sum_compare",
    "vector_majorises",
    "matrix_majorises",
    "vector_majorisation_certificate",
    "majorisation_certificate",
    "identric_mean",
    "TranspositionContext",
    "transposition_context",
    "symbolic_transposition_context",
    "cmi_diff_transposition",
    "titrate_check",
    "derive_relation",
]

#: Letters for the ordered alphabet; index 0 ('a') is the largest value.
SYMBOL_LETTERS = "abcdefghijkl"


def _letter(sym: int) -> str:
    return SYMBOL_LETTERS[sym]


@dataclasses.dataclass(frozen=True)
class SymbolicSum:
    """A formal sum of alphabet symbols (a multiset of symbol indices)."""

    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        syms = tuple(sorted(int(s) for s in self.symbols))
        if any(s < 0 or s >= len(SYMBOL_LETTERS) for s in syms):
            raise ValueError(f"unknown symbol in {self.symbols!r}")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def of(cls, *symbols: int) -> "SymbolicSum":
        return cls(tuple(symbols))

    def __add__(self, other: "SymbolicSum") -> "SymbolicSum":
        return SymbolicSum(self.symbols + other.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def cancel(self, other: "SymbolicSum") -> tuple["SymbolicSum", "SymbolicSum", "SymbolicSum"]:
        """Remove the common multiset; returns (self residue, other residue, common)."""
        mine = collections.Counter(self.symbols)
        theirs = collections.Counter(other.symbols)
        common = mine & theirs
        return (
            SymbolicSum(tuple((mine - common).elements())),
            SymbolicSum(tuple((theirs - common).elements())),
            SymbolicSum(tuple(common.elements())),
        )

    def render(self) -> str:
        if not self.symbols:
            return "0"
        parts = []
        for sym, count in sorted(collections.Counter(self.symbols).items()):
            parts.append(_letter(sym) if count == 1 else f"{count}{_letter(sym)}")
        return "+".join(parts)


class RelationKind(enum.Enum):
    PROVEN_FORWARD = "ProvenForward"
    PROVEN_REVERSE = "ProvenReverse"
    INCONCLUSIVE = "Inconclusive"


@dataclasses.dataclass(frozen=True)
class RelationVerdict:
    """Outcome of an a-priori comparison, with its derivation trace."""

    kind: RelationKind
    certificate: tuple[str, ...]

    @property
    def is_forward(self) -> bool:
        return self.kind is RelationKind.PROVEN_FORWARD

    @property
    def is_reverse(self) -> bool:
        return self.kind is RelationKind.PROVEN_REVERSE

    @property
    def is_inconclusive(self) -> bool:
        return self.kind is RelationKind.INCONCLUSIVE

    def render(self) -> str:
        return "\n".join(self.certificate)


def _greedy_dominance(left: tuple[int, ...], right: tuple[int, ...]) -> list[tuple[int, int]] | None:
    """Match every left symbol to a strictly larger unused right symbol.

    "Larger" means larger as a value, i.e. strictly smaller alphabet index.
    Both inputs sorted ascending.  Returns the matched pairs or None.
    """
    pairs: list[tuple[int, int]] = []
    j = 0
    for s in left:
        if j < len(right) and right[j] < s:
            pairs.append((s, right[j]))
            j += 1
        else:
            return None
    return pairs


def _prove_leq(S: SymbolicSum, T: SymbolicSum) -> tuple[bool, str]:
    """Try to prove S <= T a priori; returns (ok, one-line reason)."""
    s_res, t_res, common = S.cancel(T)
    parts: list[str] = []
    if common.symbols:
        parts.append(f"cancel {common.render()}")
    if not s_res.symbols and not t_res.symbols:
        parts.append("equal multisets")
        return True, "; ".join(parts)
    if not s_res.symbols:
        parts.append(f"positive residue {t_res.render()}")
        return True, "; ".join(parts)
    pairs = _greedy_dominance(s_res.symbols, t_res.symbols)
    if pairs is None:
        return False, ""
    parts.append("match " + ", ".join(f"{_letter(s)}<{_letter(t)}" for s, t in pairs))
    leftover = collections.Counter(t_res.symbols) - collections.Counter(t for _, t in pairs)
    if leftover:
        parts.append(f"positive residue {SymbolicSum(tuple(leftover.elements())).render()}")
    return True, "; ".join(parts)


def symbolic_sum_compare(S: SymbolicSum, T: SymbolicSum) -> RelationVerdict:
    """Compare two symbol sums a priori.

    ``ProvenForward`` means S <= T for every admissible valuation of the
    alphabet, ``ProvenReverse`` means T <= S.  Equal multisets report
    ``ProvenForward`` (the conclusion is non-strict).  Sound, incomplete.
    """
    header = f"compare {S.render()} vs {T.render()}"
    ok, reason = _prove_leq(S, T)
    if ok:
        return RelationVerdict(
            RelationKind.PROVEN_FORWARD,
            (header, f"  {S.render()} <= {T.render()}  [{reason}]"),
        )
    ok, reason = _prove_leq(T, S)
    if ok:
        return RelationVerdict(
            RelationKind.PROVEN_REVERSE,
            (header, f"  {T.render()} <= {S.render()}  [{reason}]"),
        )
    return RelationVerdict(
        RelationKind.INCONCLUSIVE,
        (header, "  no dominance matching in either direction"),
    )


# ---------------------------------------------------------------------------
# Majorisation
# ---------------------------------------------------------------------------

def vector_majorises(u: Sequence[float], v: Sequence[float], eps: float = EPSILON) -> bool:
    """True iff u majorises v: descending prefix sums of u dominate v's.

    Requires equal lengths and equal totals (within eps); raises otherwise.
    """
    import numpy as np

    uu = np.sort(np.asarray(u, dtype=float))[::-1]
    vv = np.sort(np.asarray(v, dtype=float))[::-1]
    if uu.shape != vv.shape:
        raise ValueError(f"length mismatch: {len(uu)} vs {len(vv)}")
    if abs(float(uu.sum() - vv.sum())) > 1e-9:
        raise ValueError(f"sum mismatch: {float(uu.sum())!r} vs {float(vv.sum())!r}")
    cu = np.cumsum(uu)
    cv = np.cumsum(vv)
    return bool(np.all(cu >= cv - eps))


def matrix_majorises(M1: ProbMatrix, M2: ProbMatrix, eps: float = EPSILON) -> bool:
    """Row-and-column majorisation of arrangements with the same entries.

    True iff the row-sum vector of M1 majorises that of M2 and likewise for
    the column sums.  The majoriser is the more ordered arrangement and has
    the lower mutual information.
    """
    if (M1.m, M1.n) != (M2.m, M2.n):
        raise ValueError(f"shape mismatch: {(M1.m, M1.n)} vs {(M2.m, M2.n)}")
    a = sorted(v for row in M1.entries for v in row)
    b = sorted(v for row in M2.entries for v in row)
    if any(abs(x - y) > 1e-9 for x, y in zip(a, b)):
        raise ValueError("arrangements do not share an entry multiset")
    r1 = [math.fsum(row) for row in M1.entries]
    r2 = [math.fsum(row) for row in M2.entries]
    c1 = [math.fsum(col) for col in zip(*M1.entries)]
    c2 = [math.fsum(col) for col in zip(*M2.entries)]
    return vector_majorises(r1, r2, eps) and vector_majorises(c1, c2, eps)


def vector_majorisation_certificate(
    u: Sequence[SymbolicSum], v: Sequence[SymbolicSum]
) -> tuple[str, ...] | None:
    """A-priori certificate that the sums u majorise the sums v.

    Uses the subset rule: the j-th descending prefix sum of u dominates
    v's iff every j-subset of v is provably <= some j-subset of u; the
    full-length sums must be provably equal.  Returns the trace lines, or
    None when some required inequality is not derivable.
    """
    if len(u) != len(v):
        raise ValueError("length mismatch")
    k = len(u)
    lines: list[str] = []
    for j in range(1, k):
        for T in itertools.combinations(v, j):
            t_sum = SymbolicSum(tuple(s for term in T for s in term.symbols))
            t_txt = "+".join(f"({term.render()})" for term in T)
            proven = None
            for S in itertools.combinations(u, j):
                s_sum = SymbolicSum(tuple(s for term in S for s in term.symbols))
                ok, reason = _prove_leq(t_sum, s_sum)
                if ok:
                    s_txt = "+".join(f"({term.render()})" for term in S)
                    proven = f"  prefix {j}: {t_txt} <= {s_txt}  [{reason}]"
                    break
            if proven is None:
                return None
            lines.append(proven)
    u_total = SymbolicSum(tuple(s for term in u for s in term.symbols))
    v_total = SymbolicSum(tuple(s for term in v for s in term.symbols))
    fwd, _ = _prove_leq(v_total, u_total)
    rev, _ = _prove_leq(u_total, v_total)
    if not (fwd and rev):
        return None
    lines.append(f"  totals equal: {u_total.render()}")
    return tuple(lines)


def _grid_row_sums(grid: Sequence[Sequence[int]]) -> list[SymbolicSum]:
    return [SymbolicSum(tuple(row)) for row in grid]


def _grid_col_sums(grid: Sequence[Sequence[int]]) -> list[SymbolicSum]:
    return [SymbolicSum(tuple(col)) for col in zip(*grid)]


def _grid_label(grid: Sequence[Sequence[int]]) -> str:
    return "|".join("".join(_letter(s) for s in row) for row in grid)


def majorisation_certificate(
    grid_a: Sequence[Sequence[int]], grid_b: Sequence[Sequence[int]]
) -> tuple[str, ...] | None:
    """A-priori certificate that symbolic arrangement A majorises B.

    A and B are grids of symbol indices over the same alphabet.  Returns
    trace lines covering the row-sum and column-sum subset rules, or None
    if the majorisation is not derivable from the symbol ordering.
    """
    rows = vector_majorisation_certificate(_grid_row_sums(grid_a), _grid_row_sums(grid_b))
    if rows is None:
        return None
    cols = vector_majorisation_certificate(_grid_col_sums(grid_a), _grid_col_sums(grid_b))
    if cols is None:
        return None
    head = f"rule majorisation: {_grid_label(grid_a)} majorises {_grid_label(grid_b)}"
    return (head, "row sums:") + rows + ("column sums:",) + cols


# ---------------------------------------------------------------------------
# Identric mean and the transposition calculus
# ---------------------------------------------------------------------------

def identric_mean(x: float, y: float) -> float:
    """Identric (Lagrangian) mean of x and y for the entropy integrand.

    mu(x, y) = e^{-1} (y^y / x^x)^{1/(y-x)} for x != y, and x at x == y.
    Evaluated as ``x * exp((1 + 1/r) * log1p(r) - 1)`` with ``r = (y-x)/x``,
    which stays accurate down to |y - x| ~ 0 (no cancellation in the
    exponent), and lies strictly between min(x, y) and max(x, y).
    """
    if x <= 0.0 or y <= 0.0:
        raise ValueError(f"identric_mean needs positive arguments, got ({x!r}, {y!r})")
    if x > 1.0 + EPSILON or y > 1.0 + EPSILON:
        raise ValueError(f"identric_mean arguments must lie in (0, 1], got ({x!r}, {y!r})")
    if y < x:
        x, y = y, x
    t = y - x
    if t == 0.0:
        return float(x)
    r = t / x
    return x * math.exp((1.0 + 1.0 / r) * math.log1p(r) - 1.0)


@dataclasses.dataclass(frozen=True)
class TranspositionContext:
    """The quantities entering the transposition formula for I(P^tau) - I(P).

    ``alpha``/``beta`` are the two swapped entries with alpha the larger
    (numeric contexts carry values, symbolic contexts carry alphabet
    indices).  ``r_*``/``c_*`` are the row/column sums of the two entries
    before the swap and their tau-images after it; when the entries share
    a row (column) the row (column) fields are suppressed to None and the
    corresponding factor of the formula is 1.
    """

    alpha: float | int
    beta: float | int
    r_alpha: float | SymbolicSum | None
    r_beta: float | SymbolicSum | None
    c_alpha: float | SymbolicSum | None
    c_beta: float | SymbolicSum | None
    r_alpha_tau: float | SymbolicSum | None
    r_beta_tau: float | SymbolicSum | None
    c_alpha_tau: float | SymbolicSum | None
    c_beta_tau: float | SymbolicSum | None
    same_row: bool
    same_col: bool
    symbolic: bool


def _check_positions(m: int, n: int, pos_a: tuple[int, int], pos_b: tuple[int, int]) -> None:
    for (i, j) in (pos_a, pos_b):
        if not (0 <= i < m and 0 <= j < n):
            raise ValueError(f"position {(i, j)!r} outside a {m}x{n} grid")
    if pos_a == pos_b:
        raise ValueError("transposition needs two distinct positions")


def transposition_context(
    P: ProbMatrix, pos_a: tuple[int, int], pos_b: tuple[int, int]
) -> TranspositionContext:
    """Numeric context for swapping the entries at two (row, col) positions."""
    _check_positions(P.m, P.n, pos_a, pos_b)
    if P.entries[pos_a[0]][pos_a[1]] < P.entries[pos_b[0]][pos_b[1]]:
        pos_a, pos_b = pos_b, pos_a
    (ia, ja), (ib, jb) = pos_a, pos_b
    alpha = P.entries[ia][ja]
    beta = P.entries[ib][jb]
    rows = [math.fsum(row) for row in P.entries]
    cols = [math.fsum(col) for col in zip(*P.entries)]
    same_row = ia == ib
    same_col = ja == jb
    d = alpha - beta
    return TranspositionContext(
        alpha=alpha,
        beta=beta,
        r_alpha=None if same_row else rows[ia],
        r_beta=None if same_row else rows[ib],
        c_alpha=None if same_col else cols[ja],
        c_beta=None if same_col else cols[jb],
        r_alpha_tau=None if same_row else rows[ia] - d,
        r_beta_tau=None if same_row else rows[ib] + d,
        c_alpha_tau=None if same_col else cols[ja] - d,
        c_beta_tau=None if same_col else cols[jb] + d,
        same_row=same_row,
        same_col=same_col,
        symbolic=False,
    )


def symbolic_transposition_context(
    grid: Sequence[Sequence[int]], pos_a: tuple[int, int], pos_b: tuple[int, int]
) -> TranspositionContext:
    """Symbolic context for swapping two entries of a symbol grid."""
    g = tuple(tuple(int(s) for s in row) for row in grid)
    m, n = len(g), len(g[0])
    _check_positions(m, n, pos_a, pos_b)
    if g[pos_a[0]][pos_a[1]] > g[pos_b[0]][pos_b[1]]:
        # larger alphabet index = smaller value; alpha must be the larger value
        pos_a, pos_b = pos_b, pos_a
    (ia, ja), (ib, jb) = pos_a, pos_b
    alpha = g[ia][ja]
    beta = g[ib][jb]
    rows = _grid_row_sums(g)
    cols = _grid_col_sums(g)
    same_row = ia == ib
    same_col = ja == jb

    def swap_in(s: SymbolicSum, out: int, into: int) -> SymbolicSum:
        syms = list(s.symbols)
        syms.remove(out)
        return SymbolicSum(tuple(syms + [into]))

    return TranspositionContext(
        alpha=alpha,
        beta=beta,
        r_alpha=None if same_row else rows[ia],
        r_beta=None if same_row else rows[ib],
        c_alpha=None if same_col else cols[ja],
        c_beta=None if same_col else cols[jb],
        r_alpha_tau=None if same_row else swap_in(rows[ia], alpha, beta),
        r_beta_tau=None if same_row else swap_in(rows[ib], beta, alpha),
        c_alpha_tau=None if same_col else swap_in(cols[ja], alpha, beta),
        c_beta_tau=None if same_col else swap_in(cols[jb], beta, alpha),
        same_row=same_row,
        same_col=same_col,
        symbolic=True,
    )


def cmi_diff_transposition(ctx: TranspositionContext) -> float:
    """I(P^tau) - I(P) through the identric-mean product formula."""
    if ctx.symbolic:
        raise ValueError("cmi_diff_transposition needs a numeric context")
    if ctx.alpha == ctx.beta:
        return 0.0
    log_ratio = 0.0
    if not ctx.same_row:
        log_ratio += math.log(identric_mean(ctx.r_alpha_tau, ctx.r_alpha))
        log_ratio -= math.log(identric_mean(ctx.r_beta, ctx.r_beta_tau))
    if not ctx.same_col:
        log_ratio += math.log(identric_mean(ctx.c_alpha_tau, ctx.c_alpha))
        log_ratio -= math.log(identric_mean(ctx.c_beta, ctx.c_beta_tau))
    return (ctx.alpha - ctx.beta) * log_ratio


def _ctx_sum_lines(ctx: TranspositionContext) -> list[str]:
    lines = [f"context: alpha = {_letter(ctx.alpha)}, beta = {_letter(ctx.beta)}"]
    for name in ("r_alpha_tau", "c_alpha_tau", "r_beta", "c_beta"):
        val = getattr(ctx, name)
        if val is not None:
            lines.append(f"  {name} = {val.render()}")
    return lines


def titrate_check(ctx: TranspositionContext) -> RelationVerdict:
    """Decide the sign of I(P^tau) - I(P) from the symbol ordering alone.

    ``ProvenForward`` certifies I(P) <= I(P^tau) (the swap cannot decrease
    mutual information); ``ProvenReverse`` the opposite.  Rules, tried in
    order for each direction:

    * monotonicity shortcut - both beta-side base sums are injectively
      dominated by the alpha-tau-side base sums;
    * titration - the minimum of {r_alpha_tau, c_alpha_tau, r_beta, c_beta}
      is provably a beta-side sum AND r_beta + c_beta <= r_alpha_tau +
      c_alpha_tau is provable.

    When the entries share a row (column) the test degenerates to the
    single base comparison c_beta vs c_alpha_tau (r_beta vs r_alpha_tau).
    A swap of equal symbols is Inconclusive (nothing to be done; also no
    numeric change).
    """
    if not ctx.symbolic:
        raise ValueError("titrate_check needs a symbolic context")
    if ctx.alpha == ctx.beta:
        return RelationVerdict(
            RelationKind.INCONCLUSIVE,
            ("context: alpha = beta; the transposition is trivial",),
        )
    header = _ctx_sum_lines(ctx)

    if ctx.same_row or ctx.same_col:
        if ctx.same_row:
            low_name, low = "c_beta", ctx.c_beta
            high_name, high = "c_alpha_tau", ctx.c_alpha_tau
            note = "entries share a row; row factors cancel"
        else:
            low_name, low = "r_beta", ctx.r_beta
            high_name, high = "r_alpha_tau", ctx.r_alpha_tau
            note = "entries share a column; column factors cancel"
        ok, reason = _prove_leq(low, high)
        if ok:
            return RelationVerdict(
                RelationKind.PROVEN_FORWARD,
                tuple(header)
                + (
                    f"rule base-comparison ({note}):",
                    f"  {low_name} <= {high_name}: {low.render()} <= {high.render()}  [{reason}]",
                    "verdict: ProvenForward (the swap cannot decrease mutual information)",
                ),
            )
        ok, reason = _prove_leq(high, low)
        if ok:
            return RelationVerdict(
                RelationKind.PROVEN_REVERSE,
                tuple(header)
                + (
                    f"rule base-comparison ({note}):",
                    f"  {high_name} <= {low_name}: {high.render()} <= {low.render()}  [{reason}]",
                    "verdict: ProvenReverse (the swap cannot increase mutual information)",
                ),
            )
        return RelationVerdict(
            RelationKind.INCONCLUSIVE,
            tuple(header) + ("the single base comparison is not derivable",),
        )

    def attempt(
        low: tuple[tuple[str, SymbolicSum], tuple[str, SymbolicSum]],
        high: tuple[tuple[str, SymbolicSum], tuple[str, SymbolicSum]],
    ) -> tuple[str, ...] | None:
        """Prove that the 'low' pair loses to the 'high' pair."""
        # monotonicity shortcut: injective pairwise domination
        for (i0, i1) in ((0, 1), (1, 0)):
            ok0, reason0 = _prove_leq(low[0][1], high[i0][1])
            ok1, reason1 = _prove_leq(low[1][1], high[i1][1])
            if ok0 and ok1:
                return (
                    "rule monotonicity: both base sums dominated pairwise",
                    f"  {low[0][0]} <= {high[i0][0]}: {low[0][1].render()} <= {high[i0][1].render()}  [{reason0}]",
                    f"  {low[1][0]} <= {high[i1][0]}: {low[1][1].render()} <= {high[i1][1].render()}  [{reason1}]",
                )
        # titration: minimum provably on the low side + base-sum comparison
        all_sums = list(low) + list(high)
        min_lines: tuple[str, ...] | None = None
        for cand_name, cand in low:
            lines = [f"rule titration: minimum of the four base sums is {cand_name}"]
            for other_name, other in all_sums:
                if other_name == cand_name:
                    continue
                ok, reason = _prove_leq(cand, other)
                if not ok:
                    lines = []
                    break
                lines.append(
                    f"  {cand_name} <= {other_name}: {cand.render()} <= {other.render()}  [{reason}]"
                )
            if lines:
                min_lines = tuple(lines)
                break
        if min_lines is None:
            return None
        low_total = low[0][1] + low[1][1]
        high_total = high[0][1] + high[1][1]
        ok, reason = _prove_leq(low_total, high_total)
        if not ok:
            return None
        return min_lines + (
            f"rule sum-comparison: {low[0][0]} + {low[1][0]} <= {high[0][0]} + {high[1][0]}",
            f"  {low_total.render()} <= {high_total.render()}  [{reason}]",
        )

    beta_side = (("r_beta", ctx.r_beta), ("c_beta", ctx.c_beta))
    alpha_side = (("r_alpha_tau", ctx.r_alpha_tau), ("c_alpha_tau", ctx.c_alpha_tau))

    fwd = attempt(beta_side, alpha_side)
    if fwd is not None:
        return RelationVerdict(
            RelationKind.PROVEN_FORWARD,
            tuple(header)
            + fwd
            + ("verdict: ProvenForward (the swap cannot decrease mutual information)",),
        )
    rev = attempt(alpha_side, beta_side)
    if rev is not None:
        return RelationVerdict(
            RelationKind.PROVEN_REVERSE,
            tuple(header)
            + rev
            + ("verdict: ProvenReverse (the swap cannot increase mutual information)",),
        )
    return RelationVerdict(
        RelationKind.INCONCLUSIVE,
        tuple(header) + ("neither direction is derivable by these rules",),
    )


# ---------------------------------------------------------------------------
# Relation derivation over a class table
# ---------------------------------------------------------------------------

_GRAPH_CACHE: dict[tuple[int, int], dict[int, dict[int, tuple[str, ...]]]] = {}
_GRAPH_LOCK = threading.Lock()


def _relation_graph(table) -> dict[int, dict[int, tuple[str, ...]]]:
    """Directed certified edges i -> j meaning I(class i) <= I(class j).

    Edges come from symbolic matrix majorisation between class
    representatives (the majoriser has the lower mutual information) and
    from titrate-certified single transpositions of a representative.
    """
    from . import classes as _classes

    key = (table.m, table.n)
    with _GRAPH_LOCK:
        cached = _GRAPH_CACHE.get(key)
    if cached is not None:
        return cached

    grids = {c.index: c.canonical for c in table.classes}
    edges: dict[int, dict[int, tuple[str, ...]]] = {i: {} for i in grids}

    for i, gi in grids.items():
        for j, gj in grids.items():
            if i == j:
                continue
            cert = majorisation_certificate(gi, gj)
            if cert is not None:
                edges[i].setdefault(j, cert)

    mn = table.m * table.n
    positions = [(k // table.n, k % table.n) for k in range(mn)]
    for i, gi in grids.items():
        for pa, pb in itertools.combinations(positions, 2):
            verdict = titrate_check(symbolic_transposition_context(gi, pa, pb))
            if verdict.is_inconclusive:
                continue
            flat = [s for row in gi for s in row]
            ka = pa[0] * table.n + pa[1]
            kb = pb[0] * table.n + pb[1]
            flat[ka], flat[kb] = flat[kb], flat[ka]
            image = tuple(
                tuple(flat[r * table.n + c] for c in range(table.n)) for r in range(table.m)
            )
            j = _classes.canonical_form(image, table=table).index
            if j == i:
                continue
            lines = (
                f"rule transposition: swap {_letter(flat[kb])},{_letter(flat[ka])} in "
                f"{_grid_label(gi)} gives {_grid_label(image)} (class {j})",
            ) + verdict.certificate
            if verdict.is_forward:
                edges[i].setdefault(j, lines)
            else:
                edges[j].setdefault(i, lines)

    with _GRAPH_LOCK:
        _GRAPH_CACHE[key] = edges
    return edges


def _bfs_path(
    edges: dict[int, dict[int, tuple[str, ...]]], src: int, dst: int, max_depth: int
) -> list[int] | None:
    frontier = [src]
    parent: dict[int, int] = {src: src}
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        nxt: list[int] = []
        for node in frontier:
            for j in sorted(edges[node]):
                if j in parent:
                    continue
                parent[j] = node
                if j == dst:
                    path = [j]
                    while path[-1] != src:
                        path.append(parent[path[-1]])
                    return path[::-1]
                nxt.append(j)
        frontier = nxt
    return None


def derive_relation(a, b, table=None, max_depth: int = 4) -> RelationVerdict:
    """Search for an a-priori chain proving I(a) <= I(b) or the reverse.

    ``a``/``b`` are MatrixClass values or 1-based class indices (indices
    resolve against ``table``, defaulting to the 2x3 table).  The search is
    breadth-first over certified majorisation edges and titrate-certified
    single transpositions, transitively composed up to ``max_depth`` hops.
    """
    from . import classes as _classes

    if table is None:
        if isinstance(a, _classes.MatrixClass):
            table = _classes.class_table(a.m, a.n)
        else:
            table = _classes.r23_table()
    ia = a.index if isinstance(a, _classes.MatrixClass) else int(a)
    ib = b.index if isinstance(b, _classes.MatrixClass) else int(b)
    for idx in (ia, ib):
        if not 1 <= idx <= len(table.classes):
            raise ValueError(f"class index {idx} outside 1..{len(table.classes)}")
    header = f"derive: class {ia} vs class {ib}"
    if ia == ib:
        return RelationVerdict(
            RelationKind.PROVEN_FORWARD,
            (header, "identical classes; empty chain", "verdict: ProvenForward"),
        )
    edges = _relation_graph(table)

    def assemble(path: list[int], kind: RelationKind) -> RelationVerdict:
        lines: list[str] = [header]
        for hop, (x, y) in enumerate(zip(path, path[1:]), start=1):
            lines.append(f"step {hop}: class {x} -> class {y}")
            lines.extend(edges[x][y])
        if len(path) > 2:
            lines.append(f"rule transitivity: compose the {len(path) - 1} steps above")
        first, last = path[0], path[-1]
        lines.append(
            f"verdict: {kind.value} (I(class {first}) <= I(class {last}) "
            "for every admissible spectrum)"
        )
        return RelationVerdict(kind, tuple(lines))

    path = _bfs_path(edges, ia, ib, max_depth)
    if path is not None:
        return assemble(path, RelationKind.PROVEN_FORWARD)
    path = _bfs_path(edges, ib, ia, max_depth)
    if path is not None:
        return assemble(path, RelationKind.PROVEN_REVERSE)
    return RelationVerdict(
        RelationKind.INCONCLUSIVE,
        (header, "no certified chain found in either direction "
         f"(search depth {max_depth})"),
    )
