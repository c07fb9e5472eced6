"""Command-line front end.

Exit status: 0 success, 1 bad input (flags, files, invalid manifold data),
2 hypothesis not met, 3 internal consistency check failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import TextIO

from . import analyze
from .cecomplex import build_complex
from .errors import HypothesisError, InternalCheckError, ValidationError
from .homology import BettiTable, betti, euler
from .manifold import ManifoldModel, catalog, catalog_names, dumps, load

COMMANDS = ("betti", "scan-monotone", "scan-stability", "check-decomposition", "validate", "catalog")
FORMATS = ("table", "json", "csv")
D_SQUARED_AUTO_LIMIT = 8

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    manifold: str | None = None
    manifold_file: str | None = None
    k: int | None = None
    k_max: int | None = None
    degree: int | None = None
    format: str = "table"
    check_d_squared: bool | None = None  # None: on for k <= 8
    check_euler: bool = True


class UsageError(Exception):
    pass


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _betti_rows(tables: list[BettiTable]):
    return [(t.k, i, v) for t in tables for i, v in enumerate(t.values)]


def _betti_table_text(tables: list[BettiTable]) -> list[str]:
    width = max(len(t.values) for t in tables)
    head = "k  | " + " ".join(f"b{i:<4d}" for i in range(width))
    lines = [head, "-" * len(head)]
    for t in tables:
        lines.append(f"{t.k:<3d}| " + " ".join(f"{v:<5d}" for v in t.values))
    return lines


def _load_model(cfg: RunConfig) -> ManifoldModel:
    if (cfg.manifold is None) == (cfg.manifold_file is None):
        raise UsageError("give exactly one of --manifold or --manifold-file")
    if cfg.manifold is not None:
        try:
            return catalog(cfg.manifold)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    try:
        return load(cfg.manifold_file)
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.manifold_file}: {exc.strerror}") from None


def _need(value, flag: str, minimum: int) -> int:
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    if value < minimum:
        raise UsageError(f"{flag} must be >= {minimum}")
    return value


def _verify(cfg: RunConfig, m: ManifoldModel, ks) -> None:
    for k in ks:
        dsq = cfg.check_d_squared
        if dsq is None:
            dsq = k <= D_SQUARED_AUTO_LIMIT
        if dsq and m.d % 2 == 0:
            build_complex(m, k).check_d_squared()
        if cfg.check_euler:
            euler(m, k)


def _cmd_betti(cfg: RunConfig, m: ManifoldModel) -> tuple[int, str]:
    k = _need(cfg.k, "--k", 0)
    _verify(cfg, m, [k])
    t = betti(m, k)
    if cfg.format == "json":
        return EXIT_OK, _dump_json({
            "manifold": m.name, "d": m.d, "k": k,
            "betti": [[k, list(t.values)]], "top_degree": t.top_degree,
        })
    if cfg.format == "csv":
        return EXIT_OK, _csv(_betti_rows([t]), ["k", "degree", "value"])
    lines = [f"{m.name} (d={m.d}), C_{k}: top chain degree {t.top_degree}"]
    lines += _betti_table_text([t])
    return EXIT_OK, "\n".join(lines) + "\n"


def _cmd_scan_monotone(cfg: RunConfig, m: ManifoldModel) -> tuple[int, str]:
    k_max = _need(cfg.k_max, "--k-max", 1)
    _verify(cfg, m, range(k_max + 1))
    rep = analyze.monotonicity_scan(m, k_max)
    # decreases on open or non-orientable M contradict the monotonicity theorems
    status = EXIT_INTERNAL if (rep.violations and m.v0_condition) else EXIT_OK
    if cfg.format == "json":
        return status, _dump_json({
            "manifold": m.name, "d": m.d, "k_range": list(rep.k_range),
            "betti": [[t.k, list(t.values)] for t in rep.tables],
            "violations": [{"degree": v.degree, "k": v.k, "before": v.before, "after": v.after}
                           for v in rep.violations],
            "stabilization": {str(i): s for i, s in rep.stabilization.items()},
            "monotonicity_predicted": m.v0_condition,
        })
    if cfg.format == "csv":
        return status, _csv(_betti_rows(rep.tables), ["k", "degree", "value"])
    lines = [f"{m.name} (d={m.d}), k = 0..{k_max}"]
    lines += _betti_table_text(rep.tables)
    if rep.violations:
        lines.append(f"{len(rep.violations)} violation(s):")
        for v in rep.violations:
            lines.append(f"  degree {v.degree}: k={v.k} -> {v.k + 1}: {v.before} -> {v.after}")
    else:
        lines.append("monotone in every degree")
    return status, "\n".join(lines) + "\n"


def _cmd_scan_stability(cfg: RunConfig, m: ManifoldModel) -> tuple[int, str]:
    k_max = _need(cfg.k_max, "--k-max", 2)
    _verify(cfg, m, range(k_max + 1))
    tables = analyze.betti_range(m, k_max)
    if cfg.degree is not None:
        degrees = [_need(cfg.degree, "--degree", 0)]
    else:
        degrees = list(range(max(len(t) for t in tables)))
    stab = {i: analyze.stability_scan(m, i, k_max) for i in degrees}
    if cfg.format == "json":
        return EXIT_OK, _dump_json({
            "manifold": m.name, "d": m.d, "k_range": [0, k_max],
            "betti": [[t.k, list(t.values)] for t in tables],
            "stabilization": {str(i): s for i, s in stab.items()},
        })
    if cfg.format == "csv":
        return EXIT_OK, _csv(_betti_rows(tables), ["k", "degree", "value"])
    lines = [f"{m.name} (d={m.d}), k = 0..{k_max}"]
    for i, s in stab.items():
        if s == analyze.UNRESOLVED:
            lines.append(f"  b_{i}: unresolved (last value {tables[-1][i]})")
        else:
            lines.append(f"  b_{i}: constant = {tables[-1][i]} from k = {s}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _cmd_check_decomposition(cfg: RunConfig, m: ManifoldModel) -> tuple[int, str]:
    k = _need(cfg.k, "--k", 1)
    _verify(cfg, m, [k, k - 1])
    led = analyze.decomposition_check(m, k)
    status = EXIT_OK if led.passed else EXIT_INTERNAL
    if cfg.format == "json":
        return status, _dump_json({
            "manifold": m.name, "d": m.d, "k": k, "passed": led.passed,
            "rows": [{"degree": r.degree, "b_k": r.b_k, "b_k_minus_1": r.b_prev,
                      "quotient": r.quotient, "ok": r.ok} for r in led.rows],
        })
    if cfg.format == "csv":
        return status, _csv([(r.degree, r.b_k, r.b_prev, r.quotient, int(r.ok)) for r in led.rows],
                            ["degree", "b_k", "b_k_minus_1", "quotient", "ok"])
    lines = [f"{m.name} (d={m.d}), k={k}: b(C_k) = b(C_(k-1)) + H(v0-free part)"]
    for r in led.rows:
        lines.append(f"  degree {r.degree}: {r.b_k} = {r.b_prev} + {r.quotient}  "
                     f"{'ok' if r.ok else 'FAIL'}")
    lines.append("passed" if led.passed else "FAILED")
    return status, "\n".join(lines) + "\n"


def _cmd_validate(cfg: RunConfig, m: ManifoldModel) -> tuple[int, str]:
    if cfg.format == "json":
        return EXIT_OK, _dump_json({"manifold": m.name, "valid": True, "violations": []})
    return EXIT_OK, f"{m.name}: valid\n"


def _cmd_catalog(cfg: RunConfig) -> tuple[int, str]:
    if cfg.manifold is not None or cfg.manifold_file is not None:
        return EXIT_OK, dumps(_load_model(cfg))
    names = catalog_names()
    if cfg.format == "json":
        return EXIT_OK, _dump_json({"catalog": names})
    if cfg.format == "csv":
        return EXIT_OK, _csv([(n, catalog(n).d) for n in names], ["name", "dim"])
    return EXIT_OK, "".join(f"{n}  (d={catalog(n).d})\n" for n in names)


_HANDLERS = {
    "betti": _cmd_betti,
    "scan-monotone": _cmd_scan_monotone,
    "scan-stability": _cmd_scan_stability,
    "check-decomposition": _cmd_check_decomposition,
    "validate": _cmd_validate,
}


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute one command, writing its output once; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if cfg.command not in COMMANDS:
            raise UsageError(f"unknown command {cfg.command!r}")
        if cfg.format not in FORMATS:
            raise UsageError(f"unknown format {cfg.format!r}")
        if cfg.command == "catalog":
            status, text = _cmd_catalog(cfg)
        else:
            status, text = _HANDLERS[cfg.command](cfg, _load_model(cfg))
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ValidationError as exc:
        if cfg.command == "validate" and cfg.format == "json":
            out.write(_dump_json({"manifold": None, "valid": False, "violations": exc.violations}))
        else:
            err.write("invalid manifold:\n" + "".join(f"  - {v}\n" for v in exc.violations))
        return EXIT_INPUT
    except HypothesisError as exc:
        err.write(f"hypothesis not met: {exc}\n")
        return EXIT_HYPOTHESIS
    except InternalCheckError as exc:
        err.write(f"internal check failed: {exc}\n")
        return EXIT_INTERNAL
    out.write(text)
    if status == EXIT_INTERNAL:
        err.write("internal check failed: result contradicts a proven identity\n")
    return status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="confbetti", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        src = sp.add_mutually_exclusive_group(required=name != "catalog")
        src.add_argument("--manifold", help=f"catalog name ({', '.join(catalog_names())})")
        src.add_argument("--manifold-file", help="path to a manifold JSON document")
        if name in ("betti", "check-decomposition"):
            sp.add_argument("--k", type=int, required=True)
        if name in ("scan-monotone", "scan-stability"):
            sp.add_argument("--k-max", type=int, required=True)
        if name == "scan-stability":
            sp.add_argument("--degree", type=int)
        sp.add_argument("--format", choices=FORMATS, default="table")
        if name in ("betti", "scan-monotone", "scan-stability", "check-decomposition"):
            sp.add_argument("--check-d-squared", action=argparse.BooleanOptionalAction, default=None,
                            help=f"verify d^2 = 0 (default: on for k <= {D_SQUARED_AUTO_LIMIT})")
            sp.add_argument("--check-euler", action=argparse.BooleanOptionalAction, default=True,
                            help="cross-check chain and homology Euler characteristics")
    return p


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        manifold=ns.manifold,
        manifold_file=ns.manifold_file,
        k=getattr(ns, "k", None),
        k_max=getattr(ns, "k_max", None),
        degree=getattr(ns, "degree", None),
        format=ns.format,
        check_d_squared=getattr(ns, "check_d_squared", None),
        check_euler=getattr(ns, "check_euler", True),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
