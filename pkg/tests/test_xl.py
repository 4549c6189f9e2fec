from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reference import D_Q4_A, D_Q4_B, D_Q5_B, E_Q4_A, E_Q4_B, E_Q5_B
from xlaqc.codes import NotNested, dual, dual_distance, is_subcode, min_distance
from xlaqc.gf import SUPPORTED_Q, make_field
from xlaqc.linalg import rank
from xlaqc.xl import (
    FAMILIES,
    SpecError,
    XlSpec,
    aux_g,
    basis_order,
    basis_poly,
    build_D,
    build_E,
    build_F,
    build_family,
    build_repetition,
    build_xl,
    codimension,
    codimension_by_rank,
    designed_delta,
    nests,
)


def _labels(q, rows):
    F = make_field(q).symbols
    return np.array([[F.parse(str(x)) for x in row] for row in rows], dtype=np.uint8)


def test_printed_D_matrix_q4():
    want = np.hstack([_labels(4, D_Q4_A), _labels(4, D_Q4_B)])
    got = build_xl(XlSpec(4, 4, 2, 1))[0].gen.entries
    assert np.array_equal(got, want)
    assert np.array_equal(build_D(4, 4).gen.entries, want)


def test_printed_E_matrix_q4():
    want = np.hstack([_labels(4, E_Q4_A), _labels(4, E_Q4_B)])
    assert np.array_equal(build_E(4, 4).gen.entries, want)


def test_printed_matrices_q5():
    assert np.array_equal(build_D(5, 0).gen.entries, _labels(5, D_Q5_B))
    assert np.array_equal(build_E(5, 0).gen.entries, _labels(5, E_Q5_B))


def test_printed_dependent_column_sets():
    G = build_D(5, 0).gen
    assert rank(G.columns([0, 6, 7])) == 2  # beta = a, a^9, a^13
    G = build_E(5, 0).gen
    assert rank(G.columns([0, 1, 7, 8])) == 3  # beta = a, a^2, a^13, a^14
    # q = 4, t = 0: the last four columns of B are dependent, any three are not
    B = build_D(4, 0).gen
    assert rank(B.columns([2, 3, 4, 5])) == 3
    assert dual_distance(build_D(4, 0), 4).value == 4


def test_basis_order_column_major():
    assert basis_order(3, 1) == [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2)]
    assert basis_order(1, 0) == [(0, 0)]
    assert basis_order(4, 0)[-1] == (0, 3)
    assert basis_poly(1, 2, 5) == (7, 11)
    assert basis_poly(2, 2, 5) == (12,)
    with pytest.raises(SpecError):
        basis_poly(2, 1, 5)


@pytest.mark.parametrize(
    "q,t,m,ell,delta",
    [
        (3, 2, 2, 0, 3),  # [[5,1,{3,2}]]_3
        (4, 4, 3, 2, 3),  # printed as the (4,3) split
        (5, 4, 4, 1, 4),  # printed (5,4)
        (5, 5, 4, 1, 5),
        (7, 0, 4, 0, 11),
        (7, 0, 5, 1, 7),
        (8, 0, 2, 1, 24),
    ],
)
def test_designed_distance_examples(q, t, m, ell, delta):
    assert designed_delta(XlSpec(q, t, m, ell)) == delta


def test_repetition_designed_distance():
    assert designed_delta(XlSpec(5, 3, 1, 0)) == 13


@given(st.sampled_from(SUPPORTED_Q).flatmap(lambda q: st.tuples(st.just(q), st.integers(0, q))))
def test_aux_g_cases_are_bounded(qt):
    q, t = qt
    for m in range(2, q):
        for ell in range(m):
            g = aux_g(XlSpec(q, t, m, ell))
            assert 0 <= g <= max(t, 2 * t - q, m - 1)


@pytest.mark.parametrize("bad", [(3, 4, 2, 0), (3, 0, 3, 0), (5, 0, 2, 2), (5, -1, 2, 0), (6, 0, 2, 0)])
def test_spec_validation(bad):
    with pytest.raises(ValueError):
        XlSpec(*bad)


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_dimension_and_length(q):
    for t in (0, q):
        for m in range(1, q):
            spec = XlSpec(q, t, m, m - 1)
            code, params = build_xl(spec)
            assert code.n == params.n == t + (q * q - q) // 2
            assert code.k == params.k == spec.k


def test_nesting_and_codimension():
    a, b = XlSpec(5, 2, 3, 1), XlSpec(5, 2, 4, 0)
    assert nests(a, b) and not nests(b, a)
    assert codimension(b, a) == 2 == codimension_by_rank(b, a)
    assert is_subcode(build_xl(a)[0], build_xl(b)[0])
    with pytest.raises(NotNested):
        codimension(a, b)


@pytest.mark.parametrize("q", [4, 5, 7])
def test_designed_distance_is_a_lower_bound(q):
    for t in (0, 1, q):
        for m in range(2, min(q, 5)):
            for ell in range(m):
                spec = XlSpec(q, t, m, ell)
                res = min_distance(build_xl(spec)[0])
                if res.exact:
                    assert res.value >= designed_delta(spec), spec


def test_special_subcodes_nest():
    for t in (0, 3, 7):
        c43 = build_xl(XlSpec(7, t, 4, 3))[0]
        E, F = build_E(7, t), build_F(7, t)
        assert is_subcode(F, c43) and is_subcode(E, build_xl(XlSpec(7, t, 3, 2))[0])
        assert build_repetition(7, t).k == 1
        assert build_family("F1", 7, t).k == 9


def test_family_gates():
    with pytest.raises(SpecError):
        build_D(3, 0)
    with pytest.raises(SpecError):
        build_F(4, 0)
    with pytest.raises(SpecError):
        build_family("G", 5, 0)
    with pytest.raises(SpecError):
        build_repetition(5, 6)
    assert set(FAMILIES) == {"rep", "D", "E", "F", "F1", "F2", "C32"}


def test_f_dual_distance_spot_values():
    assert dual_distance(build_F(5, 0), 6).value == 6
    assert dual_distance(build_F(7, 2), 6).value == 5
    assert dual_distance(build_F(8, 0), 6).value == 6


@given(
    st.sampled_from(SUPPORTED_Q).flatmap(
        lambda q: st.tuples(st.just(q), st.integers(0, q), st.integers(1, q - 1)).flatmap(
            lambda s: st.tuples(st.just(s), st.integers(0, s[2] - 1))
        )
    )
)
def test_xl_code_invariants(data):
    (q, t, m), ell = data
    spec = XlSpec(q, t, m, ell)
    code, params = build_xl(spec)
    assert code.gen.entries.max() < q  # subfield symbols only
    assert code.k == params.k == rank(code.gen)
    assert code.contains(np.ones(code.n, dtype=np.uint8))[0]
    d = dual(code)
    assert d.k + code.k == code.n
