"""Command-line interface: ``xlaqc <command> [options]``.

Commands: field-info, xl, verify, table, aqc, bound.  Exit status is 0 on
success, 1 when a verification fails, a golden comparison mismatches, or a
bound is violated, and 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import css, golden, verify
from .codes import EnumBudget
from .gf import SUPPORTED_Q, UnsupportedField, canonical_points, make_field
from .xl import FAMILIES, SpecError, XlSpec, build_family, build_xl

log = logging.getLogger("xlaqc")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MIN_BUDGET = 10_000


class UsageError(Exception):
    """A user-facing configuration problem; reported without a traceback."""


@dataclass(frozen=True)
class RunConfig:
    qs: tuple[int, ...]
    budget: int
    workers: int
    bq_table: Path | None
    fmt: str
    out: Path | None
    golden: str | None
    selector: str | None = None

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise UsageError(f"--workers must be >= 1 (got {self.workers})")
        if self.budget < 1:
            raise UsageError(f"--budget must be >= 1 (got {self.budget})")
        if self.budget < MIN_BUDGET:
            log.warning("--budget %d is below %d; distances may be reported as lower bounds",
                        self.budget, MIN_BUDGET)  # fmt: skip
        for q in self.qs:
            if q not in SUPPORTED_Q:
                raise UsageError(f"q={q} is not supported; choose one of {SUPPORTED_Q}")

    @property
    def enum_budget(self) -> EnumBudget:
        return EnumBudget(enum_limit=self.budget)

    def table(self) -> css.BqTable | None:
        if self.bq_table is None:
            return None
        try:
            return css.BqTable.load(self.bq_table)
        except OSError as exc:
            raise UsageError(f"cannot read --bq-table {self.bq_table}: {exc.strerror or exc}") from None


def _parse_qs(text: str | None) -> tuple[int, ...]:
    if text is None or text.strip().lower() in ("", "all"):
        return tuple(SUPPORTED_Q)
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--q expects a comma-separated list of integers or 'all', got {text!r}") from None


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        qs=_parse_qs(args.q),
        budget=args.budget,
        workers=args.workers,
        bq_table=Path(args.bq_table) if args.bq_table else None,
        fmt=args.format,
        out=Path(args.out) if args.out else None,
        golden=args.golden,
        selector=getattr(args, "selector", None),
    )


def _single_q(cfg: RunConfig) -> int:
    if len(cfg.qs) != 1:
        raise UsageError("this command needs exactly one --q value")
    return cfg.qs[0]


def _emit(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out is None:
        sys.stdout.write(text)
        return
    try:
        cfg.out.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write --out {cfg.out}: {exc.strerror or exc}") from None


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# ------------------------------------------------------------------ commands
def cmd_field_info(cfg: RunConfig) -> int:
    q = _single_q(cfg)
    ctx = make_field(q)
    pts = canonical_points(ctx)
    report = {
        "q": q,
        "p": ctx.p,
        "extension_degree": ctx.degree,
        "defining_polynomial": ctx.poly_string(),
        "alphas": [repr(x) for x in pts.alphas],
        "betas": [repr(x) for x in pts.betas],
        "subfield_symbols": list(ctx.symbols.labels),
        "elements": [
            {"label": repr(x), "poly": list(ctx.to_poly(x))} for x in ctx.elements()
        ],
        "zech": list(ctx.zech),
    }
    _emit(cfg, _json(report))
    return EXIT_OK


def cmd_xl(cfg: RunConfig, args: argparse.Namespace) -> int:
    q = _single_q(cfg)
    spec = XlSpec(q, args.t, args.m, args.ell)
    code, params = build_xl(spec)
    report: dict = {
        "spec": {"q": q, "t": args.t, "m": args.m, "ell": args.ell, "label": spec.label()},
        "params": {"n": params.n, "k": params.k, "delta": params.delta, "g": params.g},
    }
    if args.family:
        fam = build_family(args.family, q, args.t)
        report["family"] = args.family
        report["code"] = fam.to_json()
    else:
        report["code"] = code.to_json()
    _emit(cfg, _json(report))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    selector = cfg.selector or "all"
    cases = verify.run(selector, cfg.qs)
    failures = [c for c in cases if not c.passed]
    findings = [c for c in cases if c.finding]
    if cfg.fmt == "csv":
        lines = ["suite,q,t,passed,observed,expected,finding"]
        for c in cases:
            t = "" if c.t is None else c.t
            lines.append(
                f"{c.suite},{c.q},{t},{str(c.passed).lower()},{c.observed},{c.expected},{c.finding or ''}"
            )
        _emit(cfg, "\n".join(lines))
    else:
        report = {
            "selector": selector,
            "qs": list(cfg.qs),
            "passed": not failures,
            "n_cases": len(cases),
            "n_failures": len(failures),
            "findings": [c.to_json() for c in findings],
            "cases": [c.to_json() for c in cases],
        }
        _emit(cfg, _json(report))
    for c in findings:
        print(f"finding: {c.suite} q={c.q} t={c.t}: {c.finding}", file=sys.stderr)
    for c in failures:
        print(f"FAIL: {c.suite} q={c.q} t={c.t}: observed {c.observed}, expected {c.expected}, witness {c.witness}",
              file=sys.stderr)  # fmt: skip
    return EXIT_FAIL if failures else EXIT_OK


def cmd_table(cfg: RunConfig, args: argparse.Namespace) -> int:
    q = _single_q(cfg)
    table = cfg.table()
    families = list(css.DEFAULT_FAMILIES)
    if args.families:
        families = [f.strip() for f in args.families.split(",") if f.strip()]
        unknown = set(families) - set(css.INNER_ORDER)
        if unknown:
            raise UsageError(f"--families: unknown {sorted(unknown)}; choose from {list(css.INNER_ORDER)}")
    if args.include_f12:
        families += [f for f in ("F1", "F2") if f not in families]

    gold_rows = None
    if cfg.golden:
        try:
            gold_rows = golden.load_golden(cfg.golden)
        except (OSError, ValueError) as exc:
            raise UsageError(f"--golden: {exc}") from None
        if any(r.q != q for r in gold_rows):
            raise UsageError(f"--golden {cfg.golden} holds rows for another q than --q {q}")

    select = args.select or ("golden" if gold_rows is not None else "all")
    specs = None
    if select == "golden":
        if gold_rows is None:
            raise UsageError("--select golden needs --golden FILE")
        specs = golden.golden_specs(gold_rows)
    elif select == "best-known" and table is None:
        raise UsageError("--select best-known needs --bq-table FILE")

    records = css.generate_table(
        q, families, cfg.enum_budget, table, specs=specs, workers=cfg.workers
    )
    if select == "golden":
        keys = {g.key for g in gold_rows}
        records = [r for r in records if r.key in keys]
    elif select == "best-known":
        records = css.best_known_c2(records, table)

    if cfg.fmt == "json":
        _emit(cfg, _json(css.records_to_json(records)))
    else:
        _emit(cfg, css.records_to_csv(records))

    status = EXIT_OK
    violations = [r for r in records if r.bound_status is css.BoundStatus.VIOLATION]
    for r in violations:
        print(f"VIOLATION: {r.params()} from C_{r.q}({r.t},{r.m},{r.ell}) inner={r.inner}", file=sys.stderr)
        status = EXIT_FAIL
    if gold_rows is not None:
        diffs = golden.compare(records, gold_rows)
        bad = [d for d in diffs if d.kind != "unverified"]
        for d in diffs:
            print(d, file=sys.stderr)
        summary = f"golden: {len(gold_rows)} rows, {len(bad)} mismatches, {len(diffs) - len(bad)} unverified"
        print(summary, file=sys.stderr)
        if bad:
            status = EXIT_FAIL
    return status


def cmd_aqc(cfg: RunConfig, args: argparse.Namespace) -> int:
    q = _single_q(cfg)
    spec = XlSpec(q, args.t, args.m, args.ell)
    theorem = css.FAMILY_THEOREM.get(args.inner)
    if theorem is not None:
        problem = css.theorem_applies(theorem, spec)
        if problem:
            raise UsageError(f"inner={args.inner}: {problem}")
    try:
        recs = css.aqc_for_spec(spec, [args.inner], cfg.enum_budget, cfg.table(), strict=True)
    except css.NotNested as exc:
        raise UsageError(f"inner={args.inner} is not a subcode of {spec.label()}: {exc}") from None
    except css.ZeroDimension as exc:
        raise UsageError(f"inner={args.inner} with {spec.label()}: {exc}") from None
    if not recs:
        raise UsageError(f"inner={args.inner} does not apply to {spec.label()}")
    rec = recs[0]
    out = rec.to_json(with_detail=True)
    if theorem is not None:
        out["theorem"] = theorem.value
        out["theorem_k"] = css.theorem_k(theorem, spec)
    _emit(cfg, _json(out))
    return EXIT_FAIL if rec.bound_status is css.BoundStatus.VIOLATION else EXIT_OK


def cmd_bound(cfg: RunConfig, args: argparse.Namespace) -> int:
    q = _single_q(cfg)
    n, dx, dz = args.n, args.dx, args.dz
    for name, d in (("--dx", dx), ("--dz", dz)):
        if not 1 <= d <= n:
            raise UsageError(f"{name}={d} must satisfy 1 <= d <= n={n}")
    table = cfg.table()
    report: dict = {
        "q": q,
        "n": n,
        "d_x": dx,
        "d_z": dz,
        "singleton_k": css.singleton_bound_k(q, n, dx, dz),
        "griesmer_k_x": css.griesmer_upper_k(q, n, dx),
        "griesmer_k_z": css.griesmer_upper_k(q, n, dz),
        "bound_k": css.upper_k(q, n, dx, table) + css.upper_k(q, n, dz, table) - n,
    }
    status = EXIT_OK
    if args.k is not None:
        rec = css.AqcRecord(q, -1, -1, -1, "custom", n, args.k, dz, 0, dx, None, True, True)
        verdict = css.certify(rec, table)
        report["k"] = args.k
        report["bound_status"] = verdict.value
        if verdict is css.BoundStatus.VIOLATION:
            status = EXIT_FAIL
    _emit(cfg, _json(report))
    return status


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", help="field size, or a comma list / 'all' where several are allowed")
    common.add_argument("--budget", type=int, default=EnumBudget().enum_limit,
                        help="enumeration budget in codewords (default %(default)s)")  # fmt: skip
    common.add_argument("--workers", type=int, default=1, help="worker processes for table generation")
    common.add_argument("--bq-table", help="best-known dimension table: lines 'q n d k_lower k_upper'")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="output format")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--golden", help="golden CSV to compare against (path or bundled file name)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p = argparse.ArgumentParser(prog="xlaqc", description="Asymmetric quantum codes from Xing-Ling codes.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("field-info", parents=[common], help="field presentation and evaluation points")

    x = sub.add_parser("xl", parents=[common], help="build an XL code or one of its special subcodes")
    x.add_argument("action", choices=("build",))
    x.add_argument("--t", type=int, required=True)
    x.add_argument("--m", type=int, required=True)
    x.add_argument("--ell", type=int, required=True)
    x.add_argument("--family", choices=sorted(FAMILIES))

    v = sub.add_parser("verify", parents=[common], help="run exhaustive property suites")
    v.add_argument("--selector", choices=sorted(verify.SUITES) + ["all"], default="all")

    t = sub.add_parser("table", parents=[common], help="generate AQC tables over the (t, m, l) grid")
    t.add_argument("--families", help=f"comma list from {','.join(css.INNER_ORDER)}")
    t.add_argument("--include-f12", action="store_true", help="also try the F1 and F2 inner codes")
    t.add_argument("--select", choices=("all", "golden", "best-known"),
                   help="rows to emit: full grid, keys of --golden, or C2 meeting --bq-table")  # fmt: skip

    a = sub.add_parser("aqc", parents=[common], help="derive one AQC with full detail")
    a.add_argument("--t", type=int, required=True)
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--ell", type=int, required=True)
    a.add_argument("--inner", choices=list(css.INNER_ORDER), required=True)

    b = sub.add_parser("bound", parents=[common], help="evaluate the quantum dimension bound")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--dx", type=int, required=True)
    b.add_argument("--dz", type=int, required=True)
    b.add_argument("--k", type=int, help="certify this k against the bound")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    default_fmt = "csv" if args.command == "table" else "json"
    args.format = args.format or default_fmt
    try:
        if args.command in ("field-info", "xl", "table", "aqc", "bound") and args.q is None:
            raise UsageError(f"{args.command} needs --q")
        cfg = _config(args)
        if args.command == "field-info":
            return cmd_field_info(cfg)
        if args.command == "xl":
            return cmd_xl(cfg, args)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "table":
            return cmd_table(cfg, args)
        if args.command == "aqc":
            return cmd_aqc(cfg, args)
        return cmd_bound(cfg, args)
    except (UsageError, UnsupportedField, SpecError, css.HypothesisViolation, css.BqTableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
