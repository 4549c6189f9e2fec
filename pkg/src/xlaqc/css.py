"""CSS asymmetric quantum codes from nested XL codes, with bound certification.

A nested pair C1^perp < C2 of q-ary codes of length n gives a quantum code
[[n, k1 + k2 - n, {d_z, d_x}]]_q with d_z = wt(C2 minus C1^perp) and
d_x = wt(C1 minus C2^perp).  Here C2 is an XL code C_q(t, m, l) and C1^perp
is one of the special subcodes of :mod:`xlaqc.xl`.
"""

from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .codes import (
    DEFAULT_BUDGET,
    DistanceResult,
    EnumBudget,
    LinearCode,
    NotNested,
    dual,
    is_pure,
    is_subcode,
)
from .gf import make_field
from .xl import XlSpec, build_family, build_xl, designed_delta

__all__ = [
    "ZeroDimension",
    "HypothesisViolation",
    "BqTableError",
    "BoundStatus",
    "Theorem",
    "FAMILY_THEOREM",
    "INNER_ORDER",
    "AqcRecord",
    "BqTable",
    "derive_aqc",
    "theorem_k",
    "theorem_applies",
    "singleton_bound_k",
    "griesmer_upper_k",
    "upper_k",
    "certify",
    "grid",
    "applicable_families",
    "aqc_for_spec",
    "generate_table",
    "CSV_COLUMNS",
    "records_to_csv",
    "records_to_json",
    "best_known_c2",
    "DEFAULT_FAMILIES",
]

log = logging.getLogger(__name__)


class ZeroDimension(ValueError):
    """The nested pair gives a quantum code of dimension k <= 0."""


class HypothesisViolation(ValueError):
    """A parameter choice lies outside the range where a closed form holds."""


class BqTableError(ValueError):
    pass


class BoundStatus(str, Enum):
    OPTIMAL = "OPTIMAL"
    BEST_KNOWN = "BEST_KNOWN"
    WITHIN_BOUND = "WITHIN_BOUND"
    VIOLATION = "VIOLATION"
    UNKNOWN = "UNKNOWN"


class Theorem(str, Enum):
    THM5 = "THM5"
    THM6 = "THM6"
    THM7 = "THM7"
    THM8 = "THM8"


# inner family -> closed form that predicts its quantum dimension
FAMILY_THEOREM = {"rep": Theorem.THM5, "D": Theorem.THM6, "E": Theorem.THM7, "F": Theorem.THM8}
INNER_ORDER = ("rep", "D", "E", "F", "C32", "F1", "F2")
DEFAULT_FAMILIES = ("rep", "D", "E", "F", "C32")
_INNER_DIM = {"rep": 1, "D": 3, "E": 5, "F": 8, "C32": 6, "F1": 9, "F2": 9}


# ---------------------------------------------------------------- records
@dataclass(frozen=True, eq=False)
class AqcRecord:
    q: int
    t: int
    m: int
    ell: int
    inner: str
    n: int
    k: int
    d_z: int
    delta: int
    d_x: int
    pure: bool | None  # None when a distance is only a lower bound
    exact_z: bool
    exact_x: bool
    bound_status: BoundStatus = BoundStatus.UNKNOWN
    detail: dict = field(default_factory=dict, repr=False)

    @property
    def key(self) -> tuple[int, int, int, int, str]:
        return (self.q, self.t, self.m, self.ell, self.inner)

    def sort_key(self) -> tuple:
        return (self.q, self.t, self.m, self.ell, INNER_ORDER.index(self.inner))

    def params(self) -> str:
        return f"[[{self.n},{self.k},{{{self.d_z},{self.d_x}}}]]_{self.q}"

    def with_status(self, status: BoundStatus) -> "AqcRecord":
        return replace(self, bound_status=status)

    def row_dict(self, raw: bool = False) -> dict:
        d = {
            "q": self.q,
            "t": self.t,
            "m": self.m,
            "ell": self.ell,
            "inner": self.inner,
            "n": self.n,
            "k": self.k,
            "d_z": self.d_z,
            "delta": self.delta,
            "d_x": self.d_x,
            "pure": self.pure,
            "exact_z": self.exact_z,
            "exact_x": self.exact_x,
            "bound_status": self.bound_status,
        }
        if raw:
            return d
        d["pure"] = _fmt_bool(self.pure)
        d["exact_z"] = _fmt_bool(self.exact_z)
        d["exact_x"] = _fmt_bool(self.exact_x)
        d["bound_status"] = self.bound_status.value
        return d

    def to_json(self, with_detail: bool = False) -> dict:
        d = self.row_dict(raw=True)
        d["bound_status"] = self.bound_status.value
        d["params"] = self.params()
        if with_detail:
            d["detail"] = self.detail
        return d


def _fmt_bool(v: bool | None) -> str:
    return "unknown" if v is None else ("true" if v else "false")


CSV_COLUMNS = (
    "q", "t", "m", "ell", "inner", "n", "k", "d_z", "delta", "d_x",
    "pure", "exact_z", "exact_x", "bound_status",
)  # fmt: skip


def records_to_csv(records: Iterable[AqcRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.row_dict())
    return buf.getvalue()


def records_to_json(records: Iterable[AqcRecord], with_detail: bool = False) -> list[dict]:
    return [r.to_json(with_detail) for r in records]


# ---------------------------------------------------------------- derivation
def derive_aqc(
    c1: LinearCode,
    c2: LinearCode,
    budget: EnumBudget = DEFAULT_BUDGET,
    *,
    spec: XlSpec | None = None,
    inner: str = "custom",
) -> AqcRecord:
    """Quantum code from C1^perp < C2.  ``spec`` (when C2 is an XL code) supplies
    provenance and the designed distance; otherwise delta is left at 0."""
    if c1.n != c2.n:
        raise NotNested(f"lengths differ: {c1.n} != {c2.n}")
    c1perp = dual(c1)
    if not is_subcode(c1perp, c2):
        raise NotNested("dual(c1) is not contained in c2")
    k = c1.k + c2.k - c1.n
    if k <= 0:
        raise ZeroDimension(f"k = k1 + k2 - n = {k}; dual(c1) must be a proper subcode of c2")
    cert = is_pure(c1, c2, budget)
    field_ = c2.field
    pure = cert.pure if cert.exact else None
    q = c2.q
    t, m, ell = (spec.t, spec.m, spec.ell) if spec else (-1, -1, -1)
    delta = designed_delta(spec) if spec else 0
    d_z = cert.d_z.value
    if not cert.d_z.exact:
        # wt(C2 minus C1^perp) >= d(C2) >= delta, which may beat the engine's bound
        d_z = max(d_z, delta)
    return AqcRecord(
        q=q,
        t=t,
        m=m,
        ell=ell,
        inner=inner,
        n=c2.n,
        k=k,
        d_z=d_z,
        delta=delta,
        d_x=cert.d_x.value,
        pure=pure,
        exact_z=cert.d_z.exact,
        exact_x=cert.d_x.exact,
        detail={
            "k1": c1.k,
            "k2": c2.k,
            "d_z": _dist_json(cert.d_z, field_),
            "d_x": _dist_json(cert.d_x, field_),
            "d_C2": _dist_json(cert.d2, field_),
            "d_C1": _dist_json(cert.d1, field_),
        },
    )


def _dist_json(r: DistanceResult, field_) -> dict:
    return r.to_json(field_)


# ---------------------------------------------------------------- closed forms
def theorem_applies(which: Theorem | str, spec: XlSpec) -> str | None:
    """None when the closed form of ``which`` covers ``spec``; else the failed condition.

    Besides the stated ranges, E-type pairs are accepted at (m, l) = (3, 2)
    for q >= 5 and F-type pairs at (m, l) = (4, 3); in both cases the inner
    code is still a subcode and the closed form is unchanged.
    """
    which = Theorem(which)
    q, t, m, ell = spec.q, spec.t, spec.m, spec.ell
    if which is Theorem.THM5:
        return None if m >= 2 else "THM5 needs 2 <= m"
    if which is Theorem.THM6:
        if q == 4:
            return None if (1 <= t <= 4 and m == 3) else "THM6 with q=4 needs 1 <= t <= 4 and m = 3"
        if q >= 5:
            return None if m >= 3 else "THM6 with q>=5 needs m >= 3"
        return "THM6 needs q >= 4"
    if which is Theorem.THM7:
        if q == 4:
            if 1 <= t <= 4 and (m, ell) == (3, 2):
                return None
            return "THM7 with q=4 needs 1 <= t <= 4 and (m, l) = (3, 2)"
        if q >= 5:
            return None if (m >= 4 or (m, ell) == (3, 2)) else "THM7 with q>=5 needs m >= 4 or (m, l) = (3, 2)"
        return "THM7 needs q >= 4"
    if q < 5:
        return "THM8 needs q >= 5"
    return None if (m >= 5 or (m, ell) == (4, 3)) else "THM8 needs m >= 5 or (m, l) = (4, 3)"


def theorem_k(which: Theorem | str, spec: XlSpec) -> int:
    """Closed-form quantum dimension m(m-1)/2 + l - c with c = 0, 2, 4, 7."""
    which = Theorem(which)
    problem = theorem_applies(which, spec)
    if problem:
        raise HypothesisViolation(f"{problem} (got q={spec.q}, t={spec.t}, m={spec.m}, l={spec.ell})")
    offset = {Theorem.THM5: 0, Theorem.THM6: 2, Theorem.THM7: 4, Theorem.THM8: 7}[which]
    return spec.m * (spec.m - 1) // 2 + spec.ell - offset


# ---------------------------------------------------------------- bounds
def singleton_bound_k(q: int, n: int, d_x: int, d_z: int) -> int:
    """Largest k allowed when both log_q B_q(n, d) are replaced by n - d + 1."""
    for d in (d_x, d_z):
        if not 1 <= d <= n:
            raise ValueError(f"distance {d} out of range 1..{n}")
    return n - d_x - d_z + 2


def griesmer_upper_k(q: int, n: int, d: int) -> int:
    """Largest k with sum_{i<k} ceil(d / q^i) <= n."""
    if not 1 <= d <= n:
        raise ValueError(f"distance {d} out of range 1..{n}")
    total, k = 0, 0
    while True:
        total += -(-d // q**k)
        if total > n:
            return k
        k += 1


@dataclass(frozen=True)
class BqEntry:
    lower: int
    upper: int


class BqTable:
    """Best-known dimensions: (q, n, d) -> (k_lower, k_upper).

    The text format is one entry per line, ``q n d k_lower k_upper``, with
    ``#`` starting a comment.  A repeated key replaces the earlier entry.
    """

    def __init__(self, entries: dict[tuple[int, int, int], BqEntry] | None = None):
        self.entries: dict[tuple[int, int, int], BqEntry] = {}
        for key, e in (entries or {}).items():
            self.add(*key, e.lower, e.upper)

    def add(self, q: int, n: int, d: int, lower: int, upper: int, where: str = "") -> None:
        if not 1 <= d <= n:
            raise BqTableError(f"{where}distance {d} out of range 1..{n}")
        if not 0 <= lower <= upper:
            raise BqTableError(f"{where}need 0 <= k_lower <= k_upper, got {lower} > {upper}")
        if upper > n - d + 1:
            raise BqTableError(f"{where}k_upper={upper} exceeds the Singleton bound {n - d + 1}")
        key = (q, n, d)
        if key in self.entries:
            log.warning("%sduplicate BqTable key %s; the later entry wins", where, key)
        self.entries[key] = BqEntry(lower, upper)

    @classmethod
    def parse(cls, text: str, source: str = "<string>") -> "BqTable":
        table = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            where = f"{source}:{lineno}: "
            parts = line.split()
            if len(parts) != 5:
                raise BqTableError(f"{where}expected 'q n d k_lower k_upper', got {raw!r}")
            try:
                q, n, d, lo, hi = (int(p) for p in parts)
            except ValueError:
                raise BqTableError(f"{where}non-integer field in {raw!r}") from None
            table.add(q, n, d, lo, hi, where)
        return table

    @classmethod
    def load(cls, path: str | Path) -> "BqTable":
        path = Path(path)
        return cls.parse(path.read_text(encoding="utf-8"), str(path))

    def get(self, q: int, n: int, d: int) -> BqEntry | None:
        return self.entries.get((q, n, d))

    def __len__(self) -> int:
        return len(self.entries)


def upper_k(q: int, n: int, d: int, table: BqTable | None = None) -> int:
    """Best available upper bound on log_q B_q(n, d)."""
    ub = min(n - d + 1, griesmer_upper_k(q, n, d))
    entry = table.get(q, n, d) if table else None
    return min(ub, entry.upper) if entry else ub


def certify(record: AqcRecord, table: BqTable | None = None) -> BoundStatus:
    """Place ``record`` relative to the quantum dimension bound built from ``table``."""
    if not (record.exact_z and record.exact_x):
        return BoundStatus.UNKNOWN
    q, n = record.q, record.n
    if not (1 <= record.d_x <= n and 1 <= record.d_z <= n):
        return BoundStatus.UNKNOWN
    bound = upper_k(q, n, record.d_x, table) + upper_k(q, n, record.d_z, table) - n
    if record.k > bound:
        return BoundStatus.VIOLATION
    if record.k == bound:
        return BoundStatus.OPTIMAL
    if table is not None:
        ex, ez = table.get(q, n, record.d_x), table.get(q, n, record.d_z)
        if ex is not None and ez is not None and record.k >= ex.lower + ez.lower - n:
            return BoundStatus.BEST_KNOWN
    return BoundStatus.WITHIN_BOUND


# ---------------------------------------------------------------- tables
def grid(q: int) -> list[XlSpec]:
    """Every (t, m, l) with m >= 2, in table order."""
    make_field(q)
    return [
        XlSpec(q, t, m, ell)
        for t in range(q + 1)
        for m in range(2, q)
        for ell in range(m)
    ]


def applicable_families(spec: XlSpec, families: Sequence[str] = DEFAULT_FAMILIES) -> list[str]:
    """Inner families whose subcode relation (and closed form, if any) covers ``spec``."""
    out = []
    for fam in INNER_ORDER:
        if fam not in families:
            continue
        if fam in FAMILY_THEOREM:
            ok = theorem_applies(FAMILY_THEOREM[fam], spec) is None
        elif fam == "C32":
            ok = spec.q >= 5 and spec.m == 4
        else:  # F1, F2
            ok = spec.q >= 5 and spec.m >= 4 and spec.k - _INNER_DIM[fam] >= 1
        if ok:
            out.append(fam)
    return out


_INNER_CACHE: dict[tuple[str, int, int], LinearCode] = {}


def _inner_c1(family: str, q: int, t: int) -> LinearCode:
    """C1 = dual of the inner code, cached so its distance is computed once."""
    key = (family, q, t)
    if key not in _INNER_CACHE:
        _INNER_CACHE[key] = dual(build_family(family, q, t))
    return _INNER_CACHE[key]


def aqc_for_spec(
    spec: XlSpec,
    families: Sequence[str] = DEFAULT_FAMILIES,
    budget: EnumBudget = DEFAULT_BUDGET,
    table: BqTable | None = None,
    *,
    strict: bool = False,
) -> list[AqcRecord]:
    """Records for C2 = C_q(t, m, l) and each applicable inner family.

    Non-nested or zero-dimension pairs are skipped, or raised when ``strict``.
    """
    c2, _ = build_xl(spec)
    out = []
    for fam in applicable_families(spec, families):
        c1 = _inner_c1(fam, spec.q, spec.t)
        try:
            rec = derive_aqc(c1, c2, budget, spec=spec, inner=fam)
        except (NotNested, ZeroDimension):
            if strict:
                raise
            continue
        out.append(rec.with_status(certify(rec, table)))
    return out


def _worker(args: tuple) -> list[AqcRecord]:
    spec, families, budget, table = args
    return aqc_for_spec(spec, families, budget, table)


def generate_table(
    q: int,
    families: Sequence[str] | None = None,
    budget: EnumBudget = DEFAULT_BUDGET,
    table: BqTable | None = None,
    *,
    specs: Iterable[XlSpec] | None = None,
    workers: int = 1,
) -> list[AqcRecord]:
    """AQC records over the (t, m, l) grid of GF(q), sorted as in the tables.

    ``specs`` restricts the grid (for instance to the keys of a golden file).
    Output is identical for any number of workers.
    """
    families = tuple(families) if families is not None else DEFAULT_FAMILIES
    unknown = set(families) - set(INNER_ORDER)
    if unknown:
        raise ValueError(f"unknown inner families {sorted(unknown)}; choose from {list(INNER_ORDER)}")
    todo = sorted(set(specs)) if specs is not None else grid(q)
    for s in todo:
        if s.q != q:
            raise ValueError(f"spec {s.label()} is not over GF({q})")
    jobs = [(s, families, budget, table) for s in todo]
    if workers <= 1 or len(jobs) <= 1:
        chunks = [_worker(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_worker, jobs))
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=AqcRecord.sort_key)
    return records


def best_known_c2(records: Iterable[AqcRecord], table: BqTable) -> list[AqcRecord]:
    """Keep records whose outer code C2 reaches the table's best-known dimension
    for its length and exact minimum distance."""
    out = []
    for r in records:
        d2 = r.detail.get("d_C2", {})
        if not d2.get("exact"):
            continue
        entry = table.get(r.q, r.n, d2["value"])
        if entry is not None and r.detail["k2"] >= entry.lower:
            out.append(r)
    return out
