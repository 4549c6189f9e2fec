"""Linear codes over GF(q), duals, and minimum-distance engines.

Three engines are available:

``ENUM``
    Enumerate every codeword (one representative per scalar class, in
    lexicographic message order).  Used when q^k is within budget.
``BZ``
    Brouwer-Zimmermann style enumeration over several information sets, with
    the usual lower bound from the disjoint "new" columns of each set.
``COLDEP``
    Search column subsets of a parity-check matrix in increasing size; the
    first dependent subset carries a minimum-weight codeword.

Beyond the enumeration budget, BZ and COLDEP are run side by side one weight
level at a time (cheapest level first) and share upper and lower bounds.

Every engine accepts an ``exclude`` subspace, which turns it into a search
for the minimum weight of ``code minus exclude``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from math import comb

import numpy as np

from .gf import SymbolField, make_field
from .linalg import (
    GfMatrix,
    dependent_subsets,
    first_dependent_subset,
    in_row_space,
    iter_combinations,
    matmul,
    null_space,
    rank,
    rref,
)

__all__ = [
    "Exactness",
    "Method",
    "EnumBudget",
    "DistanceResult",
    "LinearCode",
    "LengthMismatch",
    "NotNested",
    "EqualCodes",
    "dual",
    "is_subcode",
    "min_distance",
    "dual_distance",
    "relative_weight",
    "is_pure",
    "PurityCertificate",
]

_BLOCK = 1 << 22  # symbols per vectorised block


class LengthMismatch(ValueError):
    pass


class NotNested(ValueError):
    pass


class EqualCodes(ValueError):
    pass


class Exactness(str, Enum):
    EXACT = "EXACT"
    LOWER_BOUND = "LOWER_BOUND"


class Method(str, Enum):
    ENUM = "ENUM"
    BZ = "BZ"
    COLDEP = "COLDEP"


@dataclass(frozen=True)
class EnumBudget:
    """Work limits for the distance engines.

    ``enum_limit`` caps the number of codewords (or column subsets, weighted
    to the same scale) an engine may examine.  ``max_escalation`` bounds how
    many weight levels past d(C) a relative-weight search may climb.
    """

    enum_limit: int = 20_000_000
    max_escalation: int = 3

    def __post_init__(self) -> None:
        if self.enum_limit < 1:
            raise ValueError("enum_limit must be positive")


DEFAULT_BUDGET = EnumBudget()


@dataclass(frozen=True, eq=False)
class DistanceResult:
    value: int
    exactness: Exactness
    method: Method
    witness: np.ndarray | None = None
    upper_bound: int | None = None  # best weight seen when only a lower bound is proven

    @property
    def exact(self) -> bool:
        return self.exactness is Exactness.EXACT

    def to_json(self, field: SymbolField | None = None) -> dict:
        wit = None
        if self.witness is not None:
            wit = [field.labels[int(x)] for x in self.witness] if field else self.witness.tolist()
        out = {"value": self.value, "exact": self.exact, "method": self.method.value, "witness": wit}
        if self.upper_bound is not None:
            out["upper_bound"] = self.upper_bound
        return out


class LinearCode:
    """An [n, k] code over GF(q) given by a full-row-rank generator matrix."""

    def __init__(self, gen: GfMatrix, name: str | None = None):
        k = rank(gen)
        if k != gen.rows:
            raise ValueError(f"generator has {gen.rows} rows but rank {k}")
        self.gen = gen
        self.name = name
        self._distance_cache: dict[EnumBudget, DistanceResult] = {}

    @classmethod
    def from_span(cls, m: GfMatrix, name: str | None = None) -> "LinearCode":
        """Code spanned by the rows of m (redundant rows are dropped)."""
        if m.rows == 0:
            return cls(m, name)
        R, piv = rref(m.field, m.entries)
        return cls(GfMatrix(m.field, R[: len(piv)]), name)

    @classmethod
    def zero(cls, q: int, n: int) -> "LinearCode":
        return cls(GfMatrix.zeros(q, 0, n))

    @property
    def field(self) -> SymbolField:
        return self.gen.field

    @property
    def q(self) -> int:
        return self.gen.q

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def k(self) -> int:
        return self.gen.rows

    @cached_property
    def parity_check(self) -> GfMatrix:
        """Generator of the dual code."""
        return null_space(self.gen)

    @cached_property
    def _rref(self) -> GfMatrix:
        if self.k == 0:
            return self.gen
        return GfMatrix(self.field, rref(self.field, self.gen.entries)[0])

    def contains(self, vecs: np.ndarray) -> np.ndarray:
        return in_row_space(self._rref, vecs)

    def encode(self, messages: np.ndarray) -> np.ndarray:
        return matmul(self.field, np.atleast_2d(messages), self.gen.entries)

    def same_space(self, other: "LinearCode") -> bool:
        return self.k == other.k and is_subcode(self, other)

    def to_json(self) -> dict:
        return {"q": self.q, "n": self.n, "k": self.k, "generator": self.gen.labels()}

    @classmethod
    def from_json(cls, data: dict) -> "LinearCode":
        gen = GfMatrix.from_json(
            {"q": data["q"], "rows": data["k"], "cols": data["n"], "entries": data["generator"]}
        )
        return cls(gen)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<LinearCode{label} [{self.n},{self.k}]_{self.q}>"


def dual(c: LinearCode) -> LinearCode:
    return LinearCode(c.parity_check)


def is_subcode(inner: LinearCode, outer: LinearCode) -> bool:
    if inner.q != outer.q or inner.n != outer.n:
        raise LengthMismatch(
            f"cannot compare a length-{inner.n} code over GF({inner.q}) "
            f"with a length-{outer.n} code over GF({outer.q})"
        )
    if inner.k == 0:
        return True
    return bool(outer.contains(inner.gen.entries).all())


# --------------------------------------------------------------------- helpers
def _weights(words: np.ndarray) -> np.ndarray:
    return np.count_nonzero(words, axis=-1)


def _span_table(field: SymbolField, rows: np.ndarray) -> np.ndarray:
    """All combinations of ``rows`` in lexicographic message order (first row most significant)."""
    n = rows.shape[1]
    table = np.zeros((1, n), dtype=np.uint8)
    syms = np.arange(field.q, dtype=np.uint8)
    for g in rows:
        scaled = field.mul[syms[:, None], g[None, :]]  # (q, n)
        table = field.add[table[:, None, :], scaled[None, :, :]].reshape(-1, n)
    return table


def _projective_indices(q: int, s: int) -> np.ndarray:
    """Lexicographic indices of length-s vectors whose first nonzero entry is 1."""
    parts = [np.arange(q**j, 2 * q**j) for j in range(s - 1, -1, -1)]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def projective_count(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


class _Best:
    """Running minimum over candidate words outside an optional excluded subspace."""

    def __init__(self, exclude: LinearCode | None, cap: int):
        self.exclude = exclude if exclude is not None and exclude.k > 0 else None
        self.weight = cap
        self.word: np.ndarray | None = None

    def offer(self, words: np.ndarray, weights: np.ndarray | None = None) -> None:
        """Consider ``words`` in order; ties keep the earliest word."""
        if len(words) == 0:
            return
        if weights is None:
            weights = _weights(words)
        idx = np.flatnonzero(weights < self.weight)
        if idx.size == 0:
            return
        order = idx[np.argsort(weights[idx], kind="stable")]
        if self.exclude is None:
            i = order[0]
            self.weight, self.word = int(weights[i]), words[i].copy()
            return
        for v in np.unique(weights[order]):
            cand = order[weights[order] == v]
            inside = self.exclude.contains(words[cand])
            outside = cand[~inside]
            if outside.size:
                self.weight, self.word = int(v), words[outside[0]].copy()
                return


# ------------------------------------------------------------------------ ENUM
def _enum_engine(code: LinearCode, exclude: LinearCode | None) -> DistanceResult:
    field, n, k = code.field, code.n, code.k
    G = code.gen.entries
    k_right = k // 2
    k_left = k - k_right
    right = _span_table(field, G[k_left:])  # (q^k_right, n)
    left = _span_table(field, G[:k_left])
    best = _Best(exclude, n + 1)
    # left half zero: right half projective
    if k_right:
        best.offer(right[_projective_indices(field.q, k_right)])
    left_idx = _projective_indices(field.q, k_left)
    per = max(1, _BLOCK // max(1, right.shape[0] * n))
    for start in range(0, len(left_idx), per):
        blk = left[left_idx[start : start + per]]
        words = field.add[blk[:, None, :], right[None, :, :]].reshape(-1, n)
        best.offer(words)
    return DistanceResult(best.weight, Exactness.EXACT, Method.ENUM, best.word)


# -------------------------------------------------------------------------- BZ
class _BZState:
    """Information-set enumeration, one message weight level at a time."""

    def __init__(self, code: LinearCode):
        self.code = code
        self.field = code.field
        k, n = code.k, code.n
        self.k = k
        self.mats: list[tuple[np.ndarray, int]] = []
        used: set[int] = set()
        while len(used) < n:
            order = [c for c in range(n) if c not in used] + sorted(used)
            R, piv = rref(self.field, code.gen.entries[:, order])
            new = [order[p] for p in piv if order[p] not in used]
            if not new:
                break
            gamma = np.empty_like(R)
            gamma[:, order] = R
            self.mats.append((gamma, len(new)))
            used.update(new)
        self.level = 0  # highest completed message weight

    def lower_bound(self, level: int | None = None) -> int:
        w = self.level if level is None else level
        if w >= self.k:
            return 10**9  # everything enumerated on the first information set
        return sum(max(0, w + 1 - (self.k - r)) for _, r in self.mats)

    def _active(self, w: int) -> list[np.ndarray]:
        return [g for g, r in self.mats if w + 1 - (self.k - r) > 0]

    def level_cost(self, w: int) -> int:
        if w > self.k:
            return 0
        per = comb(self.k, w) * (self.field.q - 1) ** (w - 1)
        return per * len(self._active(w)) * self.code.n

    def next_cost(self) -> int:
        return self.level_cost(self.level + 1)

    def cost_to_reach(self, target: int) -> float:
        """Work needed before this engine's lower bound reaches ``target``."""
        total, w = 0, self.level
        while self.lower_bound(w) < target:
            w += 1
            if w > self.k:
                return float("inf")
            total += self.level_cost(w)
        return total

    def run_level(self, best: _Best) -> None:
        w = self.level + 1
        field, n = self.field, self.code.n
        nz = np.arange(1, field.q, dtype=np.uint8)
        n_coef = (field.q - 1) ** (w - 1)
        chunk = max(1, _BLOCK // max(1, n_coef * n))
        for gamma in self._active(w):
            for combos in iter_combinations(self.k, w, chunk):
                acc = gamma[combos[:, 0]][:, None, :]  # (b, 1, n)
                for i in range(1, w):
                    rows = gamma[combos[:, i]]  # (b, n)
                    scaled = field.mul[nz[:, None], rows[:, None, :]]  # (b, q-1, n)
                    acc = field.add[acc[:, :, None, :], scaled[:, None, :, :]]
                    acc = acc.reshape(acc.shape[0], -1, n)
                best.offer(acc.reshape(-1, n))
        self.level = w


# ---------------------------------------------------------------------- COLDEP
def _support_words(field: SymbolField, H_sub: np.ndarray) -> np.ndarray:
    """Vectors x with H_sub x^T = 0 and every entry nonzero (one per scalar class)."""
    w = H_sub.shape[1]
    basis = null_space(GfMatrix(field, H_sub)).entries
    kappa = basis.shape[0]
    if kappa == 0:
        return np.zeros((0, w), dtype=np.uint8)
    words = _span_table(field, basis)[_projective_indices(field.q, kappa)]
    return words[np.all(words != 0, axis=1)]


class _ColdepState:
    """Column-subset search on a parity-check matrix, one subset size at a time."""

    def __init__(self, code: LinearCode, exclude: LinearCode | None):
        self.code = code
        self.H = code.parity_check
        self.exclude = exclude
        self.level = 0

    def lower_bound(self) -> int:
        return self.level + 1

    def level_cost(self, w: int) -> int:
        if w > self.code.n:
            return 0
        # elimination on a rows x w block costs about rows * w^2 table lookups
        return comb(self.code.n, w) * max(1, self.H.rows) * w * w

    def next_cost(self) -> int:
        return self.level_cost(self.level + 1)

    def cost_to_reach(self, target: int) -> float:
        if target - 1 > self.code.n:
            return float("inf")
        return sum(self.level_cost(w) for w in range(self.level + 1, target))

    def run_level(self, best: _Best) -> None:
        w = self.level + 1
        field, n = self.code.field, self.code.n
        H = self.H
        for subset in dependent_subsets(H, w):
            if w >= best.weight:
                break
            sub_words = _support_words(field, H.entries[:, list(subset)])
            if len(sub_words) == 0:
                continue
            words = np.zeros((len(sub_words), n), dtype=np.uint8)
            words[:, list(subset)] = sub_words
            best.offer(words)
            if best.weight == w and best.exclude is None:
                break
        self.level = w


# ------------------------------------------------------------------- dispatch
def _search(
    code: LinearCode,
    exclude: LinearCode | None,
    budget: EnumBudget,
    method: Method | None,
    floor: int = 1,
    ceiling: int | None = None,
) -> DistanceResult:
    if method is Method.ENUM or (
        method is None and projective_count(code.q, code.k) <= budget.enum_limit
    ):
        return _enum_engine(code, exclude)

    best = _Best(exclude, code.n + 1)
    engines: list = []
    if method in (None, Method.BZ):
        engines.append((Method.BZ, _BZState(code)))
    if method in (None, Method.COLDEP):
        engines.append((Method.COLDEP, _ColdepState(code, exclude)))
    spent = 0
    ops_limit = budget.enum_limit * code.n
    closer = engines[0][0]
    lower = floor
    while True:
        lower = max([floor] + [eng.lower_bound() for _, eng in engines])
        if lower >= best.weight:
            break
        if ceiling is not None and lower > ceiling:
            break
        # Advance the engine with the cheapest path to lifting the shared
        # lower bound by one.
        live = [
            (eng.cost_to_reach(lower + 1), i)
            for i, (_, eng) in enumerate(engines)
            if eng.next_cost() > 0
        ]
        if not live:
            break
        _, i = min(live)
        cost = engines[i][1].next_cost()
        if method is None and spent + cost > ops_limit:
            break
        spent += cost
        before = best.weight
        engines[i][1].run_level(best)
        if best.weight < before or engines[i][1].lower_bound() >= best.weight:
            closer = engines[i][0]
    if lower >= best.weight:
        return DistanceResult(best.weight, Exactness.EXACT, closer, best.word)
    upper = best.weight if best.word is not None else None
    return DistanceResult(lower, Exactness.LOWER_BOUND, closer, None, upper_bound=upper)


def min_distance(
    c: LinearCode, budget: EnumBudget = DEFAULT_BUDGET, method: Method | None = None
) -> DistanceResult:
    """Minimum distance of c.

    With ``method=None`` the engine is chosen automatically; naming a method
    forces that engine (used to cross-check the engines against each other).
    A zero-dimensional code gets the sentinel n + 1, exact, with no witness.
    """
    if c.k == 0:
        return DistanceResult(c.n + 1, Exactness.EXACT, Method.ENUM, None)
    if method is not None:
        return _search(c, None, budget, method)
    cached = c._distance_cache.get(budget)
    if cached is None:
        cached = _search(c, None, budget, None)
        c._distance_cache[budget] = cached
    return cached


def dual_distance(c: LinearCode, w_max: int) -> DistanceResult:
    """d(C^perp) as the least number of dependent columns of a generator of C."""
    subset = first_dependent_subset(c.gen, w_max) if c.n else None
    if subset is None:
        return DistanceResult(w_max + 1, Exactness.LOWER_BOUND, Method.COLDEP)
    words = _support_words(c.field, c.gen.entries[:, list(subset)])
    witness = np.zeros(c.n, dtype=np.uint8)
    witness[list(subset)] = words[0]
    return DistanceResult(len(subset), Exactness.EXACT, Method.COLDEP, witness)


def relative_weight(
    c2: LinearCode,
    c1perp: LinearCode,
    budget: EnumBudget = DEFAULT_BUDGET,
    method: Method | None = None,
) -> DistanceResult:
    """Minimum weight of a codeword of c2 that is not in c1perp."""
    if not is_subcode(c1perp, c2):
        raise NotNested(f"{c1perp!r} is not contained in {c2!r}")
    if c1perp.k == c2.k:
        raise EqualCodes("the codes are equal, so their set difference is empty")
    if method is not None:
        return _search(c2, c1perp, budget, method)
    if projective_count(c2.q, c2.k) <= budget.enum_limit:
        return _search(c2, c1perp, budget, Method.ENUM)
    d = min_distance(c2, budget)
    if d.exact and d.witness is not None and not c1perp.contains(d.witness)[0]:
        return d
    return _search(c2, c1perp, budget, None, floor=d.value, ceiling=d.value + budget.max_escalation)


@dataclass(frozen=True)
class PurityCertificate:
    d_z: DistanceResult
    d2: DistanceResult
    d_x: DistanceResult
    d1: DistanceResult
    pure: bool = field(init=False)

    def __post_init__(self) -> None:
        ok = self.d_z.value == self.d2.value and self.d_x.value == self.d1.value
        object.__setattr__(self, "pure", ok)

    @property
    def exact(self) -> bool:
        return all(r.exact for r in (self.d_z, self.d2, self.d_x, self.d1))


def is_pure(c1: LinearCode, c2: LinearCode, budget: EnumBudget = DEFAULT_BUDGET) -> PurityCertificate:
    """Compare wt(C2 minus C1^perp) with d(C2) and wt(C1 minus C2^perp) with d(C1)."""
    c1perp, c2perp = dual(c1), dual(c2)
    return PurityCertificate(
        d_z=relative_weight(c2, c1perp, budget),
        d2=min_distance(c2, budget),
        d_x=relative_weight(c1, c2perp, budget),
        d1=min_distance(c1, budget),
    )
