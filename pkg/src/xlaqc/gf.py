"""Arithmetic in GF(q^2) with its subfield GF(q), for q in {3, 4, 5, 7, 8, 9}.

Elements of the big field are kept in discrete-log form relative to a fixed
primitive element ``a`` (the root of the defining polynomial).  Addition goes
through a Zech-logarithm table.  A polynomial-basis copy of every element is
kept only to build and cross-check the tables.

The subfield GF(q) gets a compact symbol encoding 0..q-1 that the linear
algebra layer works with:

* prime q: the symbol is the integer value of the element;
* q = 4, 8, 9: ZERO -> 0 and a^((q+1)k) -> k+1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "FieldElement",
    "FieldCtx",
    "PointOrder",
    "SymbolField",
    "UnsupportedField",
    "FieldConstructionError",
    "SUPPORTED_Q",
    "make_field",
    "add",
    "trace",
    "norm",
    "canonical_points",
    "verify_trace_norm_lemma",
]


class UnsupportedField(ValueError):
    pass


class FieldConstructionError(RuntimeError):
    pass


# q -> (p, defining polynomial coefficients low -> high, alpha list)
# alpha entries: "0", an integer of the prime field, or "a^k".
_PRESENTATIONS: dict[int, tuple[int, tuple[int, ...], tuple[str, ...]]] = {
    3: (3, (2, 2, 1), ("1", "2", "0")),
    4: (2, (1, 1, 0, 0, 1), ("1", "0", "a^5", "a^10")),
    5: (5, (2, 4, 1), ("1", "4", "0", "2", "3")),
    7: (7, (3, 6, 1), ("1", "6", "0", "2", "5", "3", "4")),
    8: (2, (1, 1, 0, 1, 1, 0, 1), ("1", "a^45", "a^36", "a^27", "a^18", "0", "a^9", "a^54")),
    9: (3, (2, 0, 0, 2, 1), ("1", "0", "a^70", "a^60", "a^50", "2", "a^30", "a^20", "a^10")),
}

SUPPORTED_Q = tuple(sorted(_PRESENTATIONS))


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An element of GF(q^2): ``exp is None`` is zero, otherwise a**exp."""

    exp: int | None

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    def __repr__(self) -> str:
        if self.exp is None:
            return "0"
        if self.exp == 0:
            return "1"
        if self.exp == 1:
            return "a"
        return f"a^{self.exp}"


ZERO = FieldElement(None)
ONE = FieldElement(0)


@dataclass(frozen=True)
class SymbolField:
    """GF(q) on symbols 0..q-1, with lookup tables for the linear algebra layer."""

    q: int
    p: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is 0 by convention
    labels: tuple[str, ...]

    @property
    def sub(self) -> np.ndarray:
        """sub[x, y] = x - y."""
        return self.add[:, self.neg]

    def label(self, s: int) -> str:
        return self.labels[s]

    def parse(self, text: str) -> int:
        try:
            return self.labels.index(text.strip())
        except ValueError:
            raise ValueError(f"{text!r} is not an element label of GF({self.q})") from None


@dataclass(frozen=True)
class PointOrder:
    alphas: tuple[FieldElement, ...]
    betas: tuple[FieldElement, ...]

    @property
    def r(self) -> int:
        return len(self.betas)

    def points(self, t: int) -> tuple[FieldElement, ...]:
        """Evaluation points: the first ``t`` alphas followed by all betas."""
        return self.alphas[:t] + self.betas


class FieldCtx:
    """GF(q^2) as presented by a fixed defining polynomial, plus its subfield GF(q).

    Immutable after construction.
    """

    def __init__(self, q: int, p: int, poly: tuple[int, ...], alpha_labels: tuple[str, ...]):
        self.q = q
        self.p = p
        self.defining_poly = poly
        self.degree = len(poly) - 1  # extension degree of GF(q^2) over GF(p)
        self.e = self.degree // 2  # q = p**e
        self.order = q * q
        self.mult_order = self.order - 1
        if p ** self.degree != self.order or poly[-1] != 1:
            raise FieldConstructionError(f"defining polynomial {poly} does not present GF({q}^2)")

        self._exp_poly, self._log_poly = self._power_tables()
        self.zech = self._zech_table()
        self._check_zech_addition()

        # Subfield: x^q == x.  Nonzero subfield elements are a^((q+1)k).
        self.subfield_mask = [self._is_frobenius_fixed(i) for i in range(self.mult_order)]
        n_sub = 1 + sum(self.subfield_mask)
        if n_sub != q:
            raise FieldConstructionError(f"found {n_sub} elements with x^q = x, expected {q}")
        self._alpha_labels = alpha_labels
        self.symbols = self._build_symbol_field()

    # ------------------------------------------------------------------ tables
    def _poly_mul_x(self, v: int) -> int:
        """Multiply a polynomial-basis integer by x modulo the defining polynomial."""
        p, d = self.p, self.degree
        digits = [(v // p**i) % p for i in range(d)]
        top = digits[-1]
        shifted = [0] + digits[:-1]
        for i in range(d):
            shifted[i] = (shifted[i] - top * self.defining_poly[i]) % p
        return sum(c * p**i for i, c in enumerate(shifted))

    def _poly_add(self, u: int, v: int) -> int:
        p = self.p
        out, place = 0, 1
        while u or v:
            out += ((u % p + v % p) % p) * place
            u //= p
            v //= p
            place *= p
        return out

    def _power_tables(self) -> tuple[list[int], dict[int, int]]:
        exp_poly = [1]
        for _ in range(1, self.mult_order):
            exp_poly.append(self._poly_mul_x(exp_poly[-1]))
        closes = self._poly_mul_x(exp_poly[-1]) == 1
        log_poly = {v: i for i, v in enumerate(exp_poly)}
        # x generating all q^2-1 nonzero residues means every nonzero residue is
        # a unit, so the quotient ring is a field (irreducible) and a is primitive.
        if not closes or len(log_poly) != self.mult_order or 0 in log_poly:
            raise FieldConstructionError(
                f"defining polynomial {self.defining_poly} is not primitive over GF({self.p})"
            )
        return exp_poly, log_poly

    def _zech_table(self) -> list[int | None]:
        one = 1
        table: list[int | None] = []
        for i in range(self.mult_order):
            s = self._poly_add(one, self._exp_poly[i])
            table.append(None if s == 0 else self._log_poly[s])
        return table

    def _check_zech_addition(self) -> None:
        polys = [0] + self._exp_poly
        elems = [ZERO] + [FieldElement(i) for i in range(self.mult_order)]
        for x, px in zip(elems, polys):
            for y, py in zip(elems, polys):
                s = self._poly_add(px, py)
                got = self.add(x, y)
                want = None if s == 0 else self._log_poly[s]
                if got.exp != want:
                    raise FieldConstructionError(f"Zech addition disagrees at {x} + {y}")

    def _is_frobenius_fixed(self, i: int) -> bool:
        return (i * self.q) % self.mult_order == i

    # ------------------------------------------------------------- arithmetic
    def element(self, exp: int | None) -> FieldElement:
        return ZERO if exp is None else FieldElement(exp % self.mult_order)

    @property
    def zero(self) -> FieldElement:
        return ZERO

    @property
    def one(self) -> FieldElement:
        return ONE

    @property
    def a(self) -> FieldElement:
        return FieldElement(1 % self.mult_order)

    def elements(self) -> list[FieldElement]:
        return [ZERO] + [FieldElement(i) for i in range(self.mult_order)]

    def from_int(self, c: int) -> FieldElement:
        """The prime-field element c * 1."""
        c %= self.p
        return ZERO if c == 0 else FieldElement(self._log_poly[c])

    def to_poly(self, x: FieldElement) -> tuple[int, ...]:
        """Polynomial-basis coordinates of x over GF(p), low degree first."""
        v = 0 if x.exp is None else self._exp_poly[x.exp]
        return tuple((v // self.p**i) % self.p for i in range(self.degree))

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if x.exp is None:
            return y
        if y.exp is None:
            return x
        # a^i + a^j = a^i (1 + a^(j-i))
        z = self.zech[(y.exp - x.exp) % self.mult_order]
        return ZERO if z is None else FieldElement((x.exp + z) % self.mult_order)

    def neg(self, x: FieldElement) -> FieldElement:
        if x.exp is None or self.p == 2:
            return x
        return FieldElement((x.exp + self.mult_order // 2) % self.mult_order)

    def sub(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return self.add(x, self.neg(y))

    def mul(self, x: FieldElement, y: FieldElement) -> FieldElement:
        if x.exp is None or y.exp is None:
            return ZERO
        return FieldElement((x.exp + y.exp) % self.mult_order)

    def inv(self, x: FieldElement) -> FieldElement:
        if x.exp is None:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement((-x.exp) % self.mult_order)

    def pow(self, x: FieldElement, k: int) -> FieldElement:
        if k == 0:
            return ONE
        if x.exp is None:
            return ZERO
        return FieldElement((x.exp * k) % self.mult_order)

    def frobenius(self, x: FieldElement) -> FieldElement:
        return self.pow(x, self.q)

    def trace(self, x: FieldElement) -> FieldElement:
        return self.add(x, self.frobenius(x))

    def norm(self, x: FieldElement) -> FieldElement:
        return self.pow(x, self.q + 1)

    def in_subfield(self, x: FieldElement) -> bool:
        return x.exp is None or self.subfield_mask[x.exp]

    # ---------------------------------------------------------------- symbols
    def _build_symbol_field(self) -> SymbolField:
        q = self.q
        if self.e == 1:
            elems = [self.from_int(c) for c in range(q)]
            labels = tuple(str(c) for c in range(q))
        else:
            elems = [ZERO] + [FieldElement((q + 1) * k) for k in range(q - 1)]
            labels = tuple(repr(x) for x in elems)
        index = {x: s for s, x in enumerate(elems)}
        self._sym_elems = tuple(elems)
        self._sym_index = index
        add_t = np.zeros((q, q), dtype=np.uint8)
        mul_t = np.zeros((q, q), dtype=np.uint8)
        for i, x in enumerate(elems):
            for j, y in enumerate(elems):
                add_t[i, j] = index[self.add(x, y)]
                mul_t[i, j] = index[self.mul(x, y)]
        neg_t = np.array([index[self.neg(x)] for x in elems], dtype=np.uint8)
        inv_t = np.array([0] + [index[self.inv(x)] for x in elems[1:]], dtype=np.uint8)
        for arr in (add_t, mul_t, neg_t, inv_t):
            arr.setflags(write=False)
        return SymbolField(q=q, p=self.p, add=add_t, mul=mul_t, neg=neg_t, inv=inv_t, labels=labels)

    def to_symbol(self, x: FieldElement) -> int:
        try:
            return self._sym_index[x]
        except KeyError:
            raise ValueError(f"{x} is not in GF({self.q})") from None

    def from_symbol(self, s: int) -> FieldElement:
        return self._sym_elems[s]

    def parse(self, text: str) -> FieldElement:
        text = text.strip()
        m = re.fullmatch(r"a(?:\^(\d+))?", text)
        if m:
            return self.element(int(m.group(1) or 1))
        if re.fullmatch(r"\d+", text):
            return self.from_int(int(text))
        raise ValueError(f"cannot parse field element {text!r}")

    def __repr__(self) -> str:
        return f"FieldCtx(q={self.q}, poly={self.poly_string()})"

    def poly_string(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.defining_poly[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(mono if c == 1 and i > 0 else (f"{c}" if i == 0 else f"{c}{mono}"))
        return " + ".join(terms)


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldCtx:
    if q not in _PRESENTATIONS:
        raise UnsupportedField(f"q={q} is not supported; choose one of {SUPPORTED_Q}")
    p, poly, alphas = _PRESENTATIONS[q]
    return FieldCtx(q, p, poly, alphas)


def add(ctx: FieldCtx, x: FieldElement, y: FieldElement) -> FieldElement:
    return ctx.add(x, y)


def trace(ctx: FieldCtx, x: FieldElement) -> FieldElement:
    return ctx.trace(x)


def norm(ctx: FieldCtx, x: FieldElement) -> FieldElement:
    return ctx.norm(x)


@lru_cache(maxsize=None)
def canonical_points(ctx: FieldCtx) -> PointOrder:
    """Alphas in the fixed presentation order; betas are the smallest-exponent
    member of each conjugate pair {b, b^q}, in ascending exponent order."""
    alphas = tuple(ctx.parse(s) for s in ctx._alpha_labels)
    if len(set(alphas)) != ctx.q or not all(ctx.in_subfield(x) for x in alphas):
        raise FieldConstructionError(f"alpha list for q={ctx.q} is not a permutation of GF(q)")
    betas = []
    for i in range(ctx.mult_order):
        if ctx.subfield_mask[i]:
            continue
        if i < (i * ctx.q) % ctx.mult_order:
            betas.append(FieldElement(i))
    if len(betas) != (ctx.order - ctx.q) // 2:
        raise FieldConstructionError("conjugate-pair count mismatch")
    return PointOrder(alphas=alphas, betas=tuple(betas))


@dataclass(frozen=True)
class LemmaReport:
    q: int
    passed: bool
    pairs_checked: int
    counterexample: tuple[FieldElement, FieldElement] | None = None


def verify_trace_norm_lemma(ctx: FieldCtx) -> LemmaReport:
    """Check that equal trace and equal norm force a pair to be conjugate.

    Over all ordered pairs x != y of GF(q^2): tr(x) = tr(y) and N(x) = N(y)
    only when y = x^q.  On the point set alphas + betas that never happens,
    so equal trace there always means distinct norm.
    """
    elems = ctx.elements()
    tr = {x: ctx.trace(x) for x in elems}
    nm = {x: ctx.norm(x) for x in elems}
    checked = 0
    for x in elems:
        for y in elems:
            if x == y:
                continue
            checked += 1
            if tr[x] == tr[y] and nm[x] == nm[y] and y != ctx.frobenius(x):
                return LemmaReport(ctx.q, False, checked, (x, y))
    pts = canonical_points(ctx)
    s = pts.alphas + pts.betas
    for i, x in enumerate(s):
        for y in s[i + 1 :]:
            checked += 1
            if tr[x] == tr[y] and nm[x] == nm[y]:
                return LemmaReport(ctx.q, False, checked, (x, y))
    return LemmaReport(ctx.q, True, checked)
