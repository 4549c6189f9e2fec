"""Golden CSV files of published AQC parameters, and comparison against generated records.

A golden row is keyed by (q, t, m, ell, inner) and carries n, k, d_z, delta,
d_x, pure and a free-text ``notes`` column that comparison ignores.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .css import AqcRecord
from .xl import XlSpec

__all__ = ["GoldenRow", "Diff", "load_golden", "bundled_golden", "golden_specs", "compare", "GOLDEN_FIELDS"]

GOLDEN_FIELDS = ("n", "k", "d_z", "delta", "d_x", "pure")
_COLUMNS = ("q", "t", "m", "ell", "inner") + GOLDEN_FIELDS + ("notes",)


@dataclass(frozen=True)
class GoldenRow:
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
    pure: bool
    notes: str = ""

    @property
    def key(self) -> tuple[int, int, int, int, str]:
        return (self.q, self.t, self.m, self.ell, self.inner)

    @property
    def entry(self) -> int | None:
        for part in self.notes.split(";"):
            if part.startswith("no="):
                return int(part[3:])
        return None


@dataclass(frozen=True)
class Diff:
    key: tuple
    field: str
    expected: object
    got: object
    kind: str  # "mismatch", "missing", or "unverified" (engine gave only a lower bound)

    def __str__(self) -> str:
        q, t, m, ell, inner = self.key
        return f"{self.kind}: C_{q}({t},{m},{ell}) inner={inner} {self.field}: expected {self.expected}, got {self.got}"


def bundled_golden() -> dict[str, Path]:
    """Golden files shipped with the package, by file name."""
    root = resources.files("xlaqc") / "golden"
    return {p.name: Path(str(p)) for p in root.iterdir() if p.name.endswith(".csv")}


def _resolve(path: str | Path) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = bundled_golden()
    if p.name in bundled:
        return bundled[p.name]
    raise FileNotFoundError(f"golden file {str(path)!r} not found (bundled: {sorted(bundled)})")


def load_golden(path: str | Path) -> list[GoldenRow]:
    p = _resolve(path)
    rows = []
    with p.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = set(_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{p}: missing golden columns {sorted(missing)}")
        for lineno, raw in enumerate(reader, 2):
            try:
                rows.append(
                    GoldenRow(
                        **{c: int(raw[c]) for c in ("q", "t", "m", "ell", "n", "k", "d_z", "delta", "d_x")},
                        inner=raw["inner"],
                        pure=raw["pure"].strip().lower() == "true",
                        notes=raw["notes"] or "",
                    )
                )
            except (TypeError, ValueError) as exc:
                raise ValueError(f"{p}:{lineno}: bad golden row ({exc})") from None
    return rows


def golden_specs(rows: Iterable[GoldenRow]) -> list[XlSpec]:
    return sorted({XlSpec(r.q, r.t, r.m, r.ell) for r in rows})


def compare(records: Sequence[AqcRecord], golden: Sequence[GoldenRow]) -> list[Diff]:
    """Differences between generated records and golden rows.

    Extra generated rows are not differences.  A distance known only as a
    lower bound that does not exceed the golden value is ``unverified``.
    """
    got = {r.key: r for r in records}
    diffs: list[Diff] = []
    for g in golden:
        r = got.get(g.key)
        if r is None:
            diffs.append(Diff(g.key, "row", "present", "absent", "missing"))
            continue
        for name in GOLDEN_FIELDS:
            exp, val = getattr(g, name), getattr(r, name)
            exact = {"d_z": r.exact_z, "d_x": r.exact_x}.get(name, True)
            if name == "pure" and val is None:
                diffs.append(Diff(g.key, name, exp, "unknown", "unverified"))
            elif not exact:
                if val > exp:
                    diffs.append(Diff(g.key, name, exp, f">={val}", "mismatch"))
                else:
                    diffs.append(Diff(g.key, name, exp, f">={val}", "unverified"))
            elif val != exp:
                diffs.append(Diff(g.key, name, exp, val, "mismatch"))
    return diffs
