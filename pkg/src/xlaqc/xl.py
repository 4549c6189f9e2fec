"""Xing-Ling evaluation codes C_q(t, m, l) and the special subcodes used as
inner codes of the CSS pairs (repetition, D, E, F, F1, F2).

Polynomials are evaluated at the first ``t`` alphas followed by all betas of
:func:`xlaqc.gf.canonical_points`.  Every polynomial used here is fixed by the
Frobenius map, so evaluations land in GF(q) and are stored as subfield symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, comb
from typing import Callable, Sequence

import numpy as np

from .codes import LinearCode, NotNested
from .gf import FieldCtx, FieldElement, canonical_points, make_field
from .linalg import GfMatrix, rank

__all__ = [
    "SpecError",
    "XlSpec",
    "XlParams",
    "basis_poly",
    "basis_order",
    "aux_g",
    "designed_delta",
    "build_xl",
    "build_repetition",
    "build_D",
    "build_E",
    "build_F",
    "build_F1",
    "build_F2",
    "build_family",
    "codimension",
    "FAMILIES",
]


class SpecError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class XlSpec:
    q: int
    t: int
    m: int
    ell: int

    def __post_init__(self) -> None:
        make_field(self.q)
        if not 0 <= self.t <= self.q:
            raise SpecError(f"t={self.t} must satisfy 0 <= t <= q={self.q}")
        if not 1 <= self.m <= self.q - 1:
            raise SpecError(f"m={self.m} must satisfy 1 <= m <= q-1={self.q - 1}")
        if not 0 <= self.ell <= self.m - 1:
            raise SpecError(f"ell={self.ell} must satisfy 0 <= ell <= m-1={self.m - 1}")

    @property
    def r(self) -> int:
        return (self.q * self.q - self.q) // 2

    @property
    def n(self) -> int:
        return self.t + self.r

    @property
    def k(self) -> int:
        return self.m * (self.m - 1) // 2 + self.ell + 1

    def label(self) -> str:
        return f"C_{self.q}({self.t},{self.m},{self.ell})"


@dataclass(frozen=True)
class XlParams:
    n: int
    k: int
    delta: int
    g: int | None


def basis_poly(i: int, j: int, q: int) -> tuple[int, ...]:
    """Exponents of e_{i,j}(x) = x^(iq+j) + x^(jq+i), or x^(iq+i) when i == j."""
    if not 0 <= i <= j:
        raise SpecError(f"basis index needs 0 <= i <= j, got ({i}, {j})")
    if i == j:
        return (i * q + j,)
    return (i * q + j, j * q + i)


def basis_order(m: int, ell: int) -> list[tuple[int, int]]:
    """Index pairs (i, j) spanning V_{m,l}, column by column (j ascending, then i)."""
    pairs = [(i, j) for j in range(m - 1) for i in range(j + 1)]
    if m >= 2:
        pairs += [(i, m - 1) for i in range(ell + 1)]
    else:
        pairs = [(0, 0)]
    return pairs


def aux_g(spec: XlSpec) -> int:
    q, t, m, ell = spec.q, spec.t, spec.m, spec.ell
    if q % 2:
        return min(max(2 * (m - 2), m + ell - 1), t)
    if ell <= m - 2:
        return max(min(m - 2, t), 2 * t - q)
    return max(min(m - 1, t), 2 * t - q)


def designed_delta(spec: XlSpec) -> int:
    """Designed distance, rounded up to an integer.  m = 1 gives n (repetition)."""
    if spec.m == 1:
        return spec.n
    twice = 2 * spec.n - (spec.q * (spec.m - 1) + spec.ell + aux_g(spec))
    return ceil(twice / 2)


# ----------------------------------------------------------------- evaluation
Poly = Callable[[FieldCtx, FieldElement], FieldElement]


def _monomials(*exps: int) -> Poly:
    def f(ctx: FieldCtx, x: FieldElement) -> FieldElement:
        acc = ctx.zero
        for e in exps:
            acc = ctx.add(acc, ctx.pow(x, e))
        return acc

    return f


def _e(i: int, j: int, q: int) -> Poly:
    return _monomials(*basis_poly(i, j, q))


def _trace_pow(k: int) -> Poly:
    return lambda ctx, x: ctx.pow(ctx.trace(x), k)


def _norm_pow(k: int) -> Poly:
    return lambda ctx, x: ctx.pow(ctx.norm(x), k)


def _evaluate(q: int, t: int, polys: Sequence[Poly], name: str) -> LinearCode:
    ctx = make_field(q)
    pts = canonical_points(ctx).points(t)
    rows = [[ctx.to_symbol(f(ctx, x)) for x in pts] for f in polys]
    return LinearCode(GfMatrix(ctx.symbols, np.array(rows, dtype=np.uint8)), name=name)


def _check_t(q: int, t: int) -> None:
    make_field(q)
    if not 0 <= t <= q:
        raise SpecError(f"t={t} must satisfy 0 <= t <= q={q}")


def build_xl(spec: XlSpec) -> tuple[LinearCode, XlParams]:
    polys = [_e(i, j, spec.q) for i, j in basis_order(spec.m, spec.ell)]
    code = _evaluate(spec.q, spec.t, polys, spec.label())
    g = aux_g(spec) if spec.m >= 2 else None
    return code, XlParams(n=spec.n, k=spec.k, delta=designed_delta(spec), g=g)


def build_repetition(q: int, t: int) -> LinearCode:
    _check_t(q, t)
    return _evaluate(q, t, [_monomials(0)], f"rep_{q}({t})")


def build_D(q: int, t: int) -> LinearCode:
    if q < 4:
        raise SpecError(f"D needs q >= 4 (got q={q})")
    _check_t(q, t)
    polys = [_e(0, 0, q), _e(0, 1, q), _e(1, 1, q)]
    return _evaluate(q, t, polys, f"D_{q}({t})")


def build_E(q: int, t: int) -> LinearCode:
    if q < 4:
        raise SpecError(f"E needs q >= 4 (got q={q})")
    _check_t(q, t)
    polys = [_monomials(0), _trace_pow(1), _trace_pow(2), _norm_pow(1), _norm_pow(2)]
    return _evaluate(q, t, polys, f"E_{q}({t})")


def _f_polys(q: int) -> list[Poly]:
    return [
        _monomials(0),
        _norm_pow(1),
        _norm_pow(2),
        _norm_pow(3),
        _trace_pow(1),
        _trace_pow(2),
        _trace_pow(3),
        _monomials(2 * q + 1, q + 2),
    ]


def build_F(q: int, t: int) -> LinearCode:
    if q < 5:
        raise SpecError(f"F needs q >= 5 (got q={q})")
    _check_t(q, t)
    return _evaluate(q, t, _f_polys(q), f"F_{q}({t})")


def build_F1(q: int, t: int) -> LinearCode:
    if q < 5:
        raise SpecError(f"F1 needs q >= 5 (got q={q})")
    _check_t(q, t)
    return _evaluate(q, t, _f_polys(q) + [_e(1, 3, q)], f"F1_{q}({t})")


def build_F2(q: int, t: int) -> LinearCode:
    if q < 5:
        raise SpecError(f"F2 needs q >= 5 (got q={q})")
    _check_t(q, t)
    return _evaluate(q, t, _f_polys(q) + [_e(2, 3, q)], f"F2_{q}({t})")


def build_xl32(q: int, t: int) -> LinearCode:
    """C_q(t, 3, 2), used whole as an inner code."""
    if q < 4:
        raise SpecError(f"C_q(t,3,2) needs q >= 4 (got q={q})")
    return build_xl(XlSpec(q, t, 3, 2))[0]


FAMILIES: dict[str, Callable[[int, int], LinearCode]] = {
    "rep": build_repetition,
    "D": build_D,
    "E": build_E,
    "F": build_F,
    "F1": build_F1,
    "F2": build_F2,
    "C32": build_xl32,
}


def build_family(family: str, q: int, t: int) -> LinearCode:
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise SpecError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return builder(q, t)


def nests(inner: XlSpec, outer: XlSpec) -> bool:
    """Whether V_{inner} is a subspace of V_{outer} by the index rule."""
    if inner.q != outer.q or inner.t != outer.t:
        return False
    return inner.m < outer.m or (inner.m == outer.m and inner.ell <= outer.ell)


def codimension(spec_outer: XlSpec, spec_inner: XlSpec) -> int:
    if not nests(spec_inner, spec_outer):
        raise NotNested(f"{spec_inner.label()} is not nested in {spec_outer.label()}")
    return (
        comb(spec_outer.m, 2) - comb(spec_inner.m, 2) + spec_outer.ell - spec_inner.ell
    )


def codimension_by_rank(spec_outer: XlSpec, spec_inner: XlSpec) -> int:
    outer, _ = build_xl(spec_outer)
    inner, _ = build_xl(spec_inner)
    return rank(outer.gen) - rank(inner.gen)
