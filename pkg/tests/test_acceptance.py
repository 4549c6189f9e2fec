"""Acceptance checks, one group of tests per criterion.

A summary with one PASS/FAIL line per criterion is printed at the end of the
pytest run (see ``conftest.py``).  Observations that do not fail a criterion
(for example a computed value that differs from a reported computational
value) are attached as notes and printed under the criterion's line.
"""

from __future__ import annotations

import itertools
import time

import numpy as np
import pytest

from reference import D_Q4_A, D_Q4_B, D_Q5_B, E_Q4_A, E_Q4_B, TABLE1
from xlaqc import golden, verify
from xlaqc.codes import EnumBudget, LinearCode, Method, dual, dual_distance, min_distance, relative_weight
from xlaqc.css import (
    FAMILY_THEOREM,
    BoundStatus,
    Theorem,
    aqc_for_spec,
    applicable_families,
    derive_aqc,
    generate_table,
    grid,
    theorem_k,
)
from xlaqc.gf import SUPPORTED_Q, canonical_points, make_field, verify_trace_norm_lemma
from xlaqc.linalg import GfMatrix, matmul
from xlaqc.xl import XlSpec, build_D, build_E, build_family, build_xl, designed_delta

GOLDEN = {
    3: "table2_q3.csv",
    4: "table2_q4.csv",
    5: "table2_q5.csv",
    7: "table3_q7.csv",
    8: "table4_q8.csv",
    9: "table5_q9.csv",
}


def _labels(q, rows):
    F = make_field(q).symbols
    return np.array([[F.parse(str(x)) for x in row] for row in rows], dtype=np.uint8)


# ------------------------------------------------------------ criterion 1
@pytest.mark.criterion(1, "field fidelity: reference presentations and points, exhaustive Zech addition, < 1 s")
def test_field_fidelity():
    start = time.perf_counter()
    for q in SUPPORTED_Q:
        poly, alphas, betas = TABLE1[q]
        ctx = make_field(q)
        pts = canonical_points(ctx)
        assert ctx.poly_string() == poly
        assert list(pts.alphas) == [ctx.parse(s) for s in alphas]
        assert [x.exp for x in pts.betas] == betas
        p = ctx.p
        elems = ctx.elements()
        lookup = {ctx.to_poly(x): x for x in elems}
        assert len(lookup) == q * q
        for x, y in itertools.product(elems, repeat=2):
            s = tuple((u + v) % p for u, v in zip(ctx.to_poly(x), ctx.to_poly(y)))
            assert ctx.add(x, y) == lookup[s], (q, x, y)
    assert time.perf_counter() - start < 1.0


# ------------------------------------------------------------ criterion 2
@pytest.mark.criterion(2, "printed generator matrices reproduced entry for entry")
def test_printed_matrices():
    want_d = np.hstack([_labels(4, D_Q4_A), _labels(4, D_Q4_B)])
    assert np.array_equal(build_xl(XlSpec(4, 4, 2, 1))[0].gen.entries, want_d)
    want_e = np.hstack([_labels(4, E_Q4_A), _labels(4, E_Q4_B)])
    assert np.array_equal(build_E(4, 4).gen.entries, want_e)
    printed = _labels(5, D_Q5_B)
    got = build_D(5, 0).gen.entries
    assert np.array_equal(got[1], printed[1])
    assert np.array_equal(got, printed)


# ------------------------------------------------------------ criterion 3
@pytest.mark.criterion(3, "trace/norm lemma exhaustive for all six fields, < 1 s")
def test_trace_norm_lemma():
    start = time.perf_counter()
    for q in SUPPORTED_Q:
        rep = verify_trace_norm_lemma(make_field(q))
        assert rep.passed, (q, rep.counterexample)
        assert rep.pairs_checked > 0
    assert time.perf_counter() - start < 1.0


# ------------------------------------------------------------ criterion 4
_PROP_START: list[float] = []


@pytest.mark.criterion(4, "dual distances of D, E, F over every (q, t), < 10 min")
@pytest.mark.parametrize("suite", ["prop3", "prop4", "prop5"])
def test_dual_distance_suites(suite, record_property):
    if not _PROP_START:
        _PROP_START.append(time.perf_counter())
    cases = verify.run_suite(suite)
    failed = [c.to_json() for c in cases if not c.passed]
    assert not failed
    for c in cases:
        if suite == "prop3":
            assert c.observed == (4 if (c.q, c.t) == (4, 0) else 3)
        elif suite == "prop4":
            assert c.observed == (6 if (c.q, c.t) == (4, 0) else 4)
        else:
            assert c.observed >= 5
    for c in cases:
        if c.finding:
            record_property("note", f"finding q={c.q} t={c.t}: {c.finding}")
    assert time.perf_counter() - _PROP_START[0] < 600


# ------------------------------------------------------------ criterion 5
@pytest.mark.criterion(5, "3-column submatrices of G_E and 4-column submatrices of G_F full rank, < 5 min")
def test_appendix_independence():
    start = time.perf_counter()
    cases = verify.run("appendixA") + verify.run("appendixB")
    assert {c.q for c in cases if c.suite == "appendixA"} == {4, 5, 7, 8, 9}
    assert {c.q for c in cases if c.suite == "appendixB"} == {5, 7, 8, 9}
    assert all(c.passed for c in cases), [c.to_json() for c in cases if not c.passed]
    assert time.perf_counter() - start < 300


# ------------------------------------------------------------ criterion 6
_T6: list[float] = []


@pytest.mark.criterion(6, "q = 3, 4, 5 golden tables reproduced exactly and purely, no VIOLATION, < 15 min")
@pytest.mark.parametrize("q", [3, 4, 5])
def test_small_field_tables_reproduced(q, record_property):
    start = time.perf_counter()
    rows = golden.load_golden(GOLDEN[q])
    records = generate_table(q, budget=EnumBudget())
    by_key = {r.key: r for r in records}
    assert not [r for r in records if r.bound_status is BoundStatus.VIOLATION]
    assert golden.compare(records, rows) == []
    for g in rows:
        r = by_key[g.key]
        assert r.exact_z and r.exact_x and r.pure is True, g.key
    _T6.append(time.perf_counter() - start)
    record_property("note", f"q={q}: {len(rows)} golden rows, {len(records)} generated, {_T6[-1]:.1f} s")
    assert sum(_T6) < 900


def test_split_entries_present():
    rows = {g.entry: g for g in golden.load_golden(GOLDEN[4]) + golden.load_golden(GOLDEN[5])}
    assert (rows[14].d_z, rows[14].delta) == (4, 3)
    assert (rows[33].d_z, rows[33].delta) == (5, 4)


# ------------------------------------------------------------ criterion 7
# A 30-minute allowance lets the engines run well past the default budget.
_SPOT_BUDGET = EnumBudget(enum_limit=60_000_000)


@pytest.mark.criterion(7, "q = 7 golden entries 1-11 and 43: d_x exact, d_z exact or a bound never below the table")
def test_q7_spot_checks(record_property):
    start = time.perf_counter()
    rows = [g for g in golden.load_golden(GOLDEN[7]) if g.entry in set(range(1, 12)) | {43}]
    assert {g.entry for g in rows} == set(range(1, 12)) | {43}
    records = {}
    for spec in golden.golden_specs(rows):
        for r in aqc_for_spec(spec, budget=_SPOT_BUDGET):
            records[r.key] = r
    lower = 0
    for g in rows:
        r = records[g.key]
        assert (r.n, r.k, r.delta) == (g.n, g.k, g.delta), g.key
        assert r.exact_x and r.d_x == g.d_x, g.key
        if r.exact_z:
            assert r.d_z == g.d_z, g.key
        else:
            lower += 1
            assert r.d_z >= max(g.delta, g.d_z), g.key
        assert r.bound_status is not BoundStatus.VIOLATION
    elapsed = time.perf_counter() - start
    record_property("note", f"{len(rows)} rows, {len(rows) - lower} with exact d_z, {elapsed:.1f} s")
    assert elapsed < 1800


# ------------------------------------------------------------ criterion 8
@pytest.mark.criterion(8, "derived k equals the closed form on the full grid for every inner family, < 1 min")
def test_theorem_dimensions(record_property):
    start = time.perf_counter()
    # a one-word budget keeps the engines out of the way: only k is checked here
    tiny = EnumBudget(enum_limit=1)
    checked = 0
    for q in SUPPORTED_Q:
        inner_dual: dict[tuple[str, int], LinearCode] = {}
        for spec in grid(q):
            c2 = build_xl(spec)[0]
            for fam in applicable_families(spec, tuple(FAMILY_THEOREM)):
                key = (fam, spec.t)
                if key not in inner_dual:
                    inner_dual[key] = dual(build_family(fam, q, spec.t))
                rec = derive_aqc(inner_dual[key], c2, tiny, spec=spec, inner=fam)
                assert rec.k == theorem_k(FAMILY_THEOREM[fam], spec), (spec, fam)
                checked += 1
    special = XlSpec(4, 2, 3, 2)
    assert "E" in applicable_families(special, ("E",))
    assert theorem_k(Theorem.THM7, special) == 1
    rec = derive_aqc(dual(build_family("E", 4, 2)), build_xl(special)[0], tiny, spec=special, inner="E")
    assert rec.k == 1
    elapsed = time.perf_counter() - start
    record_property("note", f"{checked} (spec, family) pairs, {elapsed:.1f} s")
    assert elapsed < 60


# ------------------------------------------------------------ criterion 9
@pytest.mark.criterion(9, "ceiled designed distance matches every printed delta in the golden tables")
def test_designed_distance_matches_tables(record_property):
    n_rows = 0
    wrong = []
    for name in GOLDEN.values():
        for g in golden.load_golden(name):
            delta = designed_delta(XlSpec(g.q, g.t, g.m, g.ell))
            if "pair_dz" in g.notes:
                assert g.d_z > g.delta  # printed as a (d_z, delta) pair
            if g.delta != delta:
                wrong.append(g)
                record_property(
                    "note", f"q={g.q} entry {g.entry} {g.inner}: printed {g.delta}, computed delta {delta} ({g.notes})"
                )
            n_rows += 1
    record_property("note", f"{n_rows} golden rows checked, {len(wrong)} differ")
    assert not wrong


# ----------------------------------------------------------- criterion 10
def _all_words(code: LinearCode) -> np.ndarray:
    msgs = np.array(list(itertools.product(range(code.q), repeat=code.k)), dtype=np.uint8)
    return matmul(code.field, msgs, code.gen.entries)[1:]  # drop the zero message


def _random_code(rng, q: int) -> LinearCode:
    kmax = 10 if q == 3 else 8  # q^k <= 10^5
    while True:
        n = int(rng.integers(3, 15))
        k = int(rng.integers(1, min(n, kmax) + 1))
        field = make_field(q).symbols
        code = LinearCode.from_span(GfMatrix(field, rng.integers(0, q, (k, n))))
        if code.k:
            return code


@pytest.mark.criterion(10, "engines agree with brute force on random codes and nested pairs")
def test_oracle_equivalence(record_property):
    rng = np.random.default_rng(20261018)
    for i in range(200):
        code = _random_code(rng, (3, 4)[i % 2])
        words = _all_words(code)
        brute = int(np.count_nonzero(words, axis=1).min())
        enum = min_distance(code, method=Method.ENUM)
        bz = min_distance(code, method=Method.BZ)
        coldep = min_distance(code, method=Method.COLDEP)
        via_dual = dual_distance(dual(code), code.n)
        got = [enum.value, bz.value, coldep.value, via_dual.value]
        assert all(r.exact for r in (enum, bz, coldep, via_dual))
        assert got == [brute] * 4, (i, got, brute)
    pairs = 0
    while pairs < 100:
        c2 = _random_code(rng, (3, 4)[pairs % 2])
        if c2.k < 2:
            continue
        s = int(rng.integers(1, c2.k))
        sub = matmul(c2.field, rng.integers(0, c2.q, (s, c2.k)), c2.gen.entries)
        c1perp = LinearCode.from_span(GfMatrix(c2.field, sub))
        if c1perp.k in (0, c2.k):
            continue
        words = _all_words(c2)
        outside = words[~c1perp.contains(words)]
        brute = int(np.count_nonzero(outside, axis=1).min())
        got = [relative_weight(c2, c1perp).value] + [
            relative_weight(c2, c1perp, method=m).value for m in (Method.ENUM, Method.BZ, Method.COLDEP)
        ]
        assert got == [brute] * 4, (pairs, got, brute)
        pairs += 1
    record_property("note", "200 codes and 100 nested pairs, zero mismatches")
