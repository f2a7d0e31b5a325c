"""Symbolic comparison, majorisation, the identric mean, and swap analysis."""
import math
from dataclasses import replace
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specmi import (
    ProbMatrix,
    RelationKind,
    Spectrum,
    SymbolicSum,
    arrange,
    cmi,
    cmi_diff_transposition,
    derive_relation,
    identric_mean,
    majorisation_certificate,
    matrix_majorises,
    r23_table,
    sample_spectrum,
    symbolic_sum_compare,
    symbolic_transposition_context,
    titrate_check,
    transposition_context,
    vector_majorisation_certificate,
    vector_majorises,
)
from specmi.classes import class_table, maxima_chain_steps, word_to_grid


# ---------------------------------------------------------------- SymbolicSum

def test_symbolic_sum_render_with_multiplicity():
    s = SymbolicSum.of(2, 2, 3, 1)
    assert s.render() == "b+2c+d"


def test_symbolic_sum_add_and_cancel():
    s = SymbolicSum.of(0, 1) + SymbolicSum.of(1)
    t = SymbolicSum.of(1, 2)
    s_res, t_res, common = s.cancel(t)
    assert common.render() == "b"
    assert s_res.render() == "a+b"
    assert t_res.render() == "c"


def test_symbolic_compare_worked_example():
    """2b+d+e+f against 2b+c+e+f: cancel the common part, then d < c."""
    s = SymbolicSum.of(1, 1, 3, 4, 5)
    t = SymbolicSum.of(1, 1, 2, 4, 5)
    verdict = symbolic_sum_compare(s, t)
    assert verdict.kind is RelationKind.PROVEN_FORWARD
    body = "\n".join(verdict.certificate)
    assert "cancel 2b+e+f" in body
    assert "match d<c" in body


def test_symbolic_compare_equal_multisets_is_forward():
    verdict = symbolic_sum_compare(SymbolicSum.of(0, 2), SymbolicSum.of(2, 0))
    assert verdict.kind is RelationKind.PROVEN_FORWARD
    assert "equal multisets" in "\n".join(verdict.certificate)


def test_symbolic_compare_reverse():
    verdict = symbolic_sum_compare(SymbolicSum.of(0), SymbolicSum.of(1))
    assert verdict.kind is RelationKind.PROVEN_REVERSE


def test_symbolic_compare_inconclusive():
    # a+d vs b+c: neither side dominates for every descending valuation.
    verdict = symbolic_sum_compare(SymbolicSum.of(0, 3), SymbolicSum.of(1, 2))
    assert verdict.kind is RelationKind.INCONCLUSIVE


@settings(max_examples=300)
@given(
    st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=6),
    st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=6),
    st.integers(min_value=0, max_value=2**31 - 1),
)
def test_symbolic_compare_sound_for_random_valuations(left, right, seed):
    """A proof must hold for every strictly descending positive valuation."""
    s = SymbolicSum.of(*left)
    t = SymbolicSum.of(*right)
    verdict = symbolic_sum_compare(s, t)
    if verdict.kind is RelationKind.INCONCLUSIVE:
        return
    rng = np.random.default_rng(seed)
    for _ in range(25):
        vals = np.sort(rng.random(6))[::-1]
        lhs = sum(vals[i] for i in s.symbols)
        rhs = sum(vals[i] for i in t.symbols)
        if verdict.kind is RelationKind.PROVEN_FORWARD:
            assert lhs <= rhs + 1e-12
        else:
            assert rhs <= lhs + 1e-12


# ----------------------------------------------------------- numeric majorise

def test_vector_majorises_basic():
    assert vector_majorises((0.7, 0.2, 0.1), (0.5, 0.3, 0.2))
    assert not vector_majorises((0.5, 0.3, 0.2), (0.7, 0.2, 0.1))
    assert vector_majorises((0.5, 0.5), (0.5, 0.5))


def test_vector_majorises_validation():
    with pytest.raises(ValueError, match="length"):
        vector_majorises((0.5, 0.5), (0.4, 0.3, 0.3))
    with pytest.raises(ValueError, match="sum"):
        vector_majorises((0.7, 0.2), (0.5, 0.3))


def test_matrix_majorises_requires_same_entry_multiset():
    a = ProbMatrix(((0.4, 0.3), (0.2, 0.1)))
    b = ProbMatrix(((0.4, 0.25), (0.25, 0.1)))
    with pytest.raises(ValueError, match="multiset"):
        matrix_majorises(a, b)


def test_matrix_majorises_on_rearrangements():
    s = (0.4, 0.3, 0.15, 0.1, 0.03, 0.02)
    hi = ProbMatrix(((s[0], s[3], s[4]), (s[5], s[2], s[1])))
    lo = ProbMatrix(((s[0], s[1], s[2]), (s[3], s[4], s[5])))
    assert matrix_majorises(lo, hi)
    assert not matrix_majorises(hi, lo)


# ------------------------------------------------------- symbolic certificates

def test_vector_majorisation_certificate_roundtrip():
    u = (SymbolicSum.of(0), SymbolicSum.of(1))
    v = (SymbolicSum.of(0, 1), SymbolicSum.of())
    assert vector_majorisation_certificate(u, v) is None
    lines = vector_majorisation_certificate(v, u)
    assert lines is not None
    assert any("totals equal" in ln for ln in lines)


def test_majorisation_certificate_example_pair():
    table = r23_table()
    top = word_to_grid(table.get(48).word, 2, 3)
    # 42 -> 48 needs the swap argument, not plain majorisation
    assert majorisation_certificate(word_to_grid(table.get(42).word, 2, 3), top) is None
    cert = majorisation_certificate(word_to_grid(table.get(1).word, 2, 3), top)
    assert cert is not None
    assert cert[0].startswith("rule majorisation")


def test_certified_majorisation_is_numerically_sound():
    """Every certified pair must satisfy the numeric comparison on samples."""
    table = r23_table()
    grids = {c.index: word_to_grid(c.word, 2, 3) for c in table.classes}
    pairs = [
        (i, j)
        for i, j in combinations(range(1, 61), 2)
        if majorisation_certificate(grids[i], grids[j]) is not None
    ]
    assert pairs
    rng = np.random.default_rng(5)
    for _ in range(50):
        s = sample_spectrum(6, rng)
        values = {c.index: cmi(c.instantiate(s)) for c in table.classes}
        for i, j in pairs:
            # the majorising arrangement carries the smaller mutual information
            assert values[i] <= values[j] + 1e-12


def test_certified_pairs_respect_the_table_order():
    table = r23_table()
    grids = {c.index: word_to_grid(c.word, 2, 3) for c in table.classes}
    forward = 0
    for i in range(1, 61):
        for j in range(1, 61):
            if i == j:
                continue
            if majorisation_certificate(grids[i], grids[j]) is not None:
                assert i < j, f"certificate against the listing order: {i} over {j}"
                forward += 1
    assert forward == 423


# -------------------------------------------------------------- identric mean

def test_identric_mean_reference_value():
    assert identric_mean(0.25, 0.75) == pytest.approx(0.47788941237673797, abs=1e-15)
    assert identric_mean(0.3, 0.7) == pytest.approx(0.48616775067084336, abs=1e-15)


def test_identric_mean_symmetry_and_diagonal():
    assert identric_mean(0.2, 0.9) == identric_mean(0.9, 0.2)
    assert identric_mean(0.4, 0.4) == 0.4


def test_identric_mean_domain():
    with pytest.raises(ValueError, match="positive"):
        identric_mean(0.0, 0.5)
    with pytest.raises(ValueError, match="lie in"):
        identric_mean(0.5, 1.5)


def test_identric_mean_between_arguments():
    rng = np.random.default_rng(17)
    for _ in range(5000):
        x, y = np.sort(rng.uniform(1e-6, 1.0, size=2))
        if y - x < 1e-9:
            continue
        ratio = (identric_mean(x, y) - x) / (y - x)
        assert 1.0 / math.e < ratio < 0.5


def test_identric_mean_monotone_and_concave_in_second_argument():
    xs = np.linspace(0.05, 0.95, 61)
    for x0 in (0.1, 0.37, 0.62):
        vals = [identric_mean(x0, float(x)) for x in xs]
        diffs = np.diff(vals)
        assert np.all(diffs > 0.0)
        assert np.all(np.diff(diffs) < 1e-12)


def test_identric_mean_nested_pair_comparison():
    """For 0 < u <= v <= w <= z with v + w >= u + z, the inner pair's
    identric mean dominates the outer pair's."""
    rng = np.random.default_rng(23)
    draws = rng.uniform(1e-4, 1.0, size=(100_000, 4))
    draws.sort(axis=1)
    u, v, w, z = draws.T
    mask = (v + w >= u + z) & (z - w > 1e-9) & (w - v > 1e-9) & (v - u > 1e-9)
    u, v, w, z = u[mask], v[mask], w[mask], z[mask]
    assert len(u) > 1000
    step = max(1, len(u) // 2000)
    for k in range(0, len(u), step):
        inner = identric_mean(float(v[k]), float(w[k]))
        outer = identric_mean(float(u[k]), float(z[k]))
        assert outer <= inner + 1e-12


def test_identric_mean_shifted_gap_is_monotone():
    """mu(x, x+t) - x increases in x for fixed t > 0."""
    for t in (0.05, 0.2, 0.5):
        xs = np.linspace(0.01, 1.0 - t, 41)
        vals = [identric_mean(float(x), float(x) + t) - float(x) for x in xs]
        assert np.all(np.diff(vals) > 0.0)


# ------------------------------------------------------- transposition context

PINNED = Spectrum((0.3, 0.25, 0.2, 0.15, 0.07, 0.03))


def _pinned_matrix() -> ProbMatrix:
    return arrange(PINNED, (0, 1, 2, 3, 4, 5), 2, 3)


def test_transposition_context_numeric_invariants():
    ctx = transposition_context(_pinned_matrix(), (0, 0), (1, 2))
    assert not ctx.symbolic
    assert ctx.alpha > ctx.beta
    assert ctx.r_alpha > ctx.r_alpha_tau
    assert ctx.r_beta_tau > ctx.r_beta
    assert ctx.c_alpha > ctx.c_alpha_tau
    assert ctx.c_beta_tau > ctx.c_beta


def test_transposition_context_same_row_suppresses_row_terms():
    ctx = transposition_context(_pinned_matrix(), (0, 0), (0, 2))
    assert ctx.same_row
    assert ctx.r_alpha is None and ctx.r_beta is None
    assert ctx.c_alpha is not None


def test_transposition_context_rejects_bad_positions():
    P = _pinned_matrix()
    with pytest.raises(ValueError, match="position"):
        transposition_context(P, (0, 0), (2, 1))
    with pytest.raises(ValueError, match="distinct"):
        transposition_context(P, (1, 1), (1, 1))


def test_cmi_diff_matches_direct_recomputation():
    """The closed form for the swap increment agrees with recomputing both sides."""
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(2000):
        s = sample_spectrum(6, rng)
        perm = tuple(int(k) for k in rng.permutation(6))
        P = arrange(s, perm, 2, 3)
        i1, j1 = int(rng.integers(2)), int(rng.integers(3))
        while True:
            i2, j2 = int(rng.integers(2)), int(rng.integers(3))
            if (i1, j1) != (i2, j2):
                break
        a = P.as_array().copy()
        a[i1, j1], a[i2, j2] = a[i2, j2], a[i1, j1]
        direct = cmi(ProbMatrix.from_array(a)) - cmi(P)
        ctx = transposition_context(P, (i1, j1), (i2, j2))
        worst = max(worst, abs(cmi_diff_transposition(ctx) - direct))
    assert worst < 1e-10


def test_titrate_check_requires_symbolic_context():
    ctx = transposition_context(_pinned_matrix(), (0, 0), (1, 2))
    with pytest.raises(ValueError, match="symbolic"):
        titrate_check(ctx)


def test_titrate_check_equal_symbols_inconclusive():
    grid = word_to_grid("abcdef", 2, 3)
    base = symbolic_transposition_context(grid, (0, 0), (1, 2))
    tied = replace(base, beta=base.alpha)
    assert titrate_check(tied).kind is RelationKind.INCONCLUSIVE


def test_titrate_check_same_row_forward():
    grid = word_to_grid("abcdef", 2, 3)
    ctx = symbolic_transposition_context(grid, (0, 0), (0, 1))
    verdict = titrate_check(ctx)
    assert verdict.kind is RelationKind.PROVEN_FORWARD
    assert any("base-comparison" in ln for ln in verdict.certificate)


def test_titrate_check_certifies_the_maxima_chain():
    table = r23_table()
    for src, pos_a, pos_b, dst in maxima_chain_steps():
        grid = word_to_grid(table.get(src).word, 2, 3)
        verdict = titrate_check(symbolic_transposition_context(grid, pos_a, pos_b))
        assert verdict.kind is RelationKind.PROVEN_FORWARD, (src, dst)
        assert verdict.certificate[-1].startswith("verdict: ProvenForward")


def test_titrate_certified_swaps_are_numerically_sound():
    """Every certified swap direction holds at sampled spectra."""
    table = r23_table()
    positions = [(i, j) for i in range(2) for j in range(3)]
    certified = []
    for cls in table.classes:
        grid = word_to_grid(cls.word, 2, 3)
        for a in range(6):
            for b in range(a + 1, 6):
                ctx = symbolic_transposition_context(grid, positions[a], positions[b])
                kind = titrate_check(ctx).kind
                if kind is not RelationKind.INCONCLUSIVE:
                    certified.append((cls.index, positions[a], positions[b], kind))
    # one directed edge per proven swap, counted over both orientations
    assert len(certified) == 660
    assert sum(1 for *_, k in certified if k is RelationKind.PROVEN_FORWARD) == 330
    rng = np.random.default_rng(13)
    sampled = certified[:: max(1, len(certified) // 200)]
    for _ in range(40):
        s = sample_spectrum(6, rng)
        for index, pos_a, pos_b, kind in sampled:
            P = table.get(index).instantiate(s)
            diff = cmi_diff_transposition(transposition_context(P, pos_a, pos_b))
            if kind is RelationKind.PROVEN_FORWARD:
                assert diff >= -1e-10
            else:
                assert diff <= 1e-10


# ------------------------------------------------------------- derive_relation

def test_derive_relation_direct_edge():
    verdict = derive_relation(42, 48)
    assert verdict.kind is RelationKind.PROVEN_FORWARD
    assert verdict.certificate[0] == "derive: class 42 vs class 48"
    assert verdict.certificate[-1].startswith("verdict: ProvenForward")


def test_derive_relation_reverse_orientation():
    assert derive_relation(48, 42).kind is RelationKind.PROVEN_REVERSE


def test_derive_relation_multi_hop_mentions_transitivity():
    verdict = derive_relation(1, 48)
    assert verdict.kind is RelationKind.PROVEN_FORWARD
    body = "\n".join(verdict.certificate)
    if "step 2:" in body:
        assert "transitivity" in body


def test_derive_relation_inconclusive_pair():
    assert derive_relation(44, 45).kind is RelationKind.INCONCLUSIVE


def test_derive_relation_identity():
    assert derive_relation(7, 7).kind is RelationKind.PROVEN_FORWARD


def test_derive_relation_validates_indices():
    with pytest.raises(ValueError, match="index"):
        derive_relation(0, 48)
    with pytest.raises(ValueError, match="index"):
        derive_relation(1, 61)


def test_derive_relation_on_the_2x2_table():
    table = class_table(2, 2)
    assert len(table.classes) == 3
    identity = table.index_of("abcd")
    for other in table.classes:
        if other.index == identity:
            continue
        verdict = derive_relation(identity, other.index, table=table)
        assert verdict.kind is RelationKind.PROVEN_FORWARD
