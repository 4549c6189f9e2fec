"""Dense exact linear algebra over GF(q) on symbol-encoded uint8 arrays.

All arithmetic goes through the lookup tables of a :class:`SymbolField`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .gf import SymbolField, make_field

__all__ = [
    "GfMatrix",
    "matmul",
    "rref",
    "row_basis",
    "in_row_space",
    "rank",
    "null_space",
    "batched_rank",
    "min_dependent_columns",
    "first_dependent_subset",
    "dependent_subsets",
    "iter_combinations",
]

_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class GfMatrix:
    field: SymbolField
    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=np.uint8)
        if arr.ndim != 2:
            arr = arr.reshape(-1, 0) if arr.size == 0 else np.atleast_2d(arr)
        if arr.size and int(arr.max()) >= self.field.q:
            raise ValueError(f"entry out of range for GF({self.field.q})")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, q: int, rows: Sequence[Sequence[int]], cols: int | None = None) -> "GfMatrix":
        field = make_field(q).symbols
        if len(rows) == 0:
            return cls(field, np.zeros((0, cols or 0), dtype=np.uint8))
        return cls(field, np.array(rows, dtype=np.uint8))

    @classmethod
    def zeros(cls, q: int, rows: int, cols: int) -> "GfMatrix":
        return cls(make_field(q).symbols, np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, q: int, n: int) -> "GfMatrix":
        return cls(make_field(q).symbols, np.eye(n, dtype=np.uint8))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def T(self) -> "GfMatrix":
        return GfMatrix(self.field, self.entries.T)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GfMatrix):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.q, self.entries.shape, self.entries.tobytes()))

    def __matmul__(self, other: "GfMatrix") -> "GfMatrix":
        return GfMatrix(self.field, matmul(self.field, self.entries, other.entries))

    def vstack(self, other: "GfMatrix") -> "GfMatrix":
        return GfMatrix(self.field, np.vstack([self.entries, other.entries]))

    def columns(self, idx: Sequence[int]) -> "GfMatrix":
        return GfMatrix(self.field, self.entries[:, list(idx)])

    def is_zero(self) -> bool:
        return not self.entries.any()

    def labels(self) -> list[list[str]]:
        lab = self.field.labels
        return [[lab[int(x)] for x in row] for row in self.entries]

    def to_json(self) -> dict:
        return {"q": self.q, "rows": self.rows, "cols": self.cols, "entries": self.labels()}

    @classmethod
    def from_json(cls, data: dict) -> "GfMatrix":
        field = make_field(int(data["q"])).symbols
        rows, cols = int(data["rows"]), int(data["cols"])
        arr = np.array(
            [[field.parse(str(x)) for x in row] for row in data["entries"]], dtype=np.uint8
        ).reshape(rows, cols)
        return cls(field, arr)

    def __repr__(self) -> str:
        body = "\n".join(" ".join(f"{x:>5}" for x in row) for row in self.labels())
        return f"GfMatrix(q={self.q}, {self.rows}x{self.cols})\n{body}"


def matmul(field: SymbolField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product a @ b over GF(q)."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint8)
    for j in range(a.shape[1]):
        out = field.add[out, field.mul[a[:, j, None], b[None, j, :]]]
    return out


def rref(field: SymbolField, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = np.array(a, dtype=np.uint8, copy=True)
    if A.size == 0:
        return A, []
    sub = field.sub
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = A[r:, c].nonzero()[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = field.mul[field.inv[A[r, c]], A[r]]
        f = A[:, c].copy()
        f[r] = 0
        rows = f.nonzero()[0]
        if rows.size:
            A[rows] = sub[A[rows], field.mul[f[rows, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(m: GfMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(rref(m.field, m.entries)[1])


def row_basis(m: GfMatrix) -> GfMatrix:
    """Reduced row echelon basis of the row space of m."""
    if m.rows == 0:
        return m
    R, piv = rref(m.field, m.entries)
    return GfMatrix(m.field, R[: len(piv)])


def null_space(m: GfMatrix) -> GfMatrix:
    """Basis (as rows) of {x : m x^T = 0}."""
    field, n = m.field, m.cols
    if m.rows == 0:
        return GfMatrix(field, np.eye(n, dtype=np.uint8))
    R, piv = rref(field, m.entries)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = field.neg[R[r, f]]
    return GfMatrix(field, basis)


def in_row_space(m: GfMatrix, vecs: np.ndarray) -> np.ndarray:
    """Boolean mask: which rows of ``vecs`` lie in the row space of m."""
    vecs = np.atleast_2d(np.asarray(vecs, dtype=np.uint8))
    if m.rows == 0:
        return ~vecs.any(axis=1)
    R, piv = rref(m.field, m.entries)
    R = R[: len(piv)]
    field, sub = m.field, m.field.sub
    rest = vecs.copy()
    for r, c in enumerate(piv):
        f = rest[:, c]
        rest = sub[rest, field.mul[f[:, None], R[r][None, :]]]
    return ~rest.any(axis=1)


def batched_rank(field: SymbolField, stack: np.ndarray) -> np.ndarray:
    """Ranks of a stack of small matrices, shape (B, rows, cols)."""
    M = np.array(stack, dtype=np.uint8, copy=True)
    B, nrows, ncols = M.shape
    ranks = np.zeros(B, dtype=np.int64)
    used = np.zeros((B, nrows), dtype=bool)
    sub, mul, inv = field.sub, field.mul, field.inv
    for j in range(ncols):
        cand = (M[:, :, j] != 0) & ~used
        has = cand.any(axis=1)
        bi = np.flatnonzero(has)
        if bi.size == 0:
            continue
        pr = cand[bi].argmax(axis=1)
        ranks[bi] += 1
        used[bi, pr] = True
        if j + 1 == ncols:
            break
        tail = M[bi, :, j + 1 :]  # (b, rows, rest)
        prow = mul[inv[M[bi, pr, j]][:, None], M[bi, pr, j + 1 :]]
        f = M[bi, :, j] * ~used[bi]  # eliminate only unused rows
        tail = sub[tail, mul[f[:, :, None], prow[:, None, :]]]
        M[bi, :, j + 1 :] = tail
    return ranks


def iter_combinations(n: int, w: int, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
    """Lexicographic w-subsets of range(n) as int arrays of shape (<=chunk, w)."""
    it = itertools.combinations(range(n), w)
    total = comb(n, w)
    done = 0
    while done < total:
        take = min(chunk, total - done)
        flat = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(it, take)), dtype=np.int64, count=take * w
        )
        done += take
        yield flat.reshape(take, w)


def dependent_subsets(m: GfMatrix, w: int, chunk: int = _CHUNK) -> Iterator[tuple[int, ...]]:
    """All w-subsets of columns of m that are linearly dependent, lexicographically."""
    A = m.entries
    for combos in iter_combinations(m.cols, w, chunk):
        if w > m.rows:
            hits = np.arange(len(combos))
        else:
            stack = np.transpose(A[:, combos], (1, 0, 2))  # (B, rows, w)
            hits = np.flatnonzero(batched_rank(m.field, stack) < w)
        for h in hits:
            yield tuple(int(x) for x in combos[h])


def first_dependent_subset(m: GfMatrix, w_max: int) -> tuple[int, ...] | None:
    """Lexicographically least dependent column subset of minimum size <= w_max."""
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    for w in range(1, min(w_max, m.cols) + 1):
        for subset in dependent_subsets(m, w):
            return subset
    return None


def min_dependent_columns(m: GfMatrix, w_max: int) -> int | None:
    """Smallest number of linearly dependent columns of m, if it is at most w_max."""
    subset = first_dependent_subset(m, w_max)
    return None if subset is None else len(subset)
