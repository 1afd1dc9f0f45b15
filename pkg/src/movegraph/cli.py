"""Command-line front end: ``movegraph <command> [options]``.

Exit status: 0 success, 1 domain error, 2 a verification returned false,
3 size budget exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import config
from .algebra import ModMatrix, zn_order
from .errors import CapacityError, ContractError, DomainError
from .graph import build, decompose, spectrum_json, weak_components
from .predictor import oeis_terms, predict, survey, survey_csv, verify_prediction
from .subadd import level_partition, tree_report, verify_level_arcs
from .suite import PRESETS, SUITES, report_json, run_suite

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_CAPACITY, EXIT_USAGE = 0, 1, 2, 3, 64

COMMANDS = ("build", "analyze", "levels", "predict", "verify", "survey", "oeis")
FORMATS = ("json", "dot", "csv", "text")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    matrix_arg: str | None = None
    n: int | None = None
    r: int | None = None
    p: int | None = None
    p_max: int | None = None
    n_max: int | None = None
    suite: str = "all"
    check: bool = False
    output_format: str | None = None
    output_path: str | None = None
    size_budget: int | None = None


def parse_matrix(text: str) -> list[list[int]]:
    """Preset name or row-major inline form such as ``1,-1;1,1``."""
    if text in PRESETS:
        return [list(row) for row in PRESETS[text]]
    try:
        rows = [[int(tok) for tok in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise UsageError(f"malformed matrix {text!r}; expected e.g. '1,-1;1,1'") from None
    if not rows or any(len(r) != len(rows) for r in rows):
        raise UsageError(f"matrix {text!r} is not square")
    return rows


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="movegraph", description="Move graphs x -> Mx over Z_n^m.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats, default):
        p.add_argument("--format", dest="output_format", choices=formats, default=default)
        p.add_argument("--output", dest="output_path")
        p.add_argument("--budget", dest="size_budget", type=int,
                       help=f"vertex budget (default ${config.BUDGET_ENV} or {config.DEFAULT_SIZE_BUDGET})")

    def matrix_args(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--preset", choices=sorted(PRESETS))
        group.add_argument("--matrix", help="inline row-major entries, e.g. '1,-1;1,1'")
        p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("build", help="successor map of a move graph")
    matrix_args(p)
    common(p, ("json", "dot", "text"), "json")

    p = sub.add_parser("analyze", help="cycle spectrum and components")
    matrix_args(p)
    common(p, ("json", "text"), "json")

    p = sub.add_parser("levels", help="level partition and tree report for n = 2^r")
    p.add_argument("--r", type=int, required=True)
    common(p, ("json", "text"), "json")

    p = sub.add_parser("predict", help="closed-form spectrum modulo an odd prime")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--check", action="store_true", help="also compare against enumeration")
    common(p, ("json", "text"), "json")

    p = sub.add_parser("verify", help="run theorem suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--n-max", dest="n_max", type=int, default=12)
    common(p, ("json",), "json")

    p = sub.add_parser("survey", help="predictions for every odd prime up to p-max")
    p.add_argument("--p-max", dest="p_max", type=int, required=True)
    common(p, ("csv", "json", "text"), "csv")

    p = sub.add_parser("oeis", help="component counts for n = 1..n-max")
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    common(p, ("text",), "text")
    return parser


def config_from_args(argv: Sequence[str]) -> RunConfig:
    ns = make_parser().parse_args(list(argv))
    values = vars(ns)
    preset, inline = values.pop("preset", None), values.pop("matrix", None)
    return RunConfig(matrix_arg=preset or inline, **values)


def _text_spectrum(spectrum: dict[int, int]) -> list[str]:
    lines = ["length  count"]
    lines += [f"{length:>6}  {count}" for length, count in sorted(spectrum.items())]
    return lines


def _dumps(doc) -> str:
    return json.dumps(doc, indent=1) + "\n"


def execute(cfg: RunConfig) -> tuple[int, str]:
    """Dispatch one command; returns (exit status, serialized output)."""
    budget = config.size_budget(cfg.size_budget)
    fmt = cfg.output_format

    if cfg.command in ("build", "analyze"):
        rows = parse_matrix(cfg.matrix_arg)
        g = build(rows, cfg.n, budget=budget)
        if cfg.command == "build":
            if fmt == "dot":
                return EXIT_OK, g.to_dot()
            if fmt == "text":
                return EXIT_OK, "".join(f"{g.label(v)} -> {g.label(w)}\n" for v, w in enumerate(g.successor.tolist()))
            return EXIT_OK, g.to_json()
        decomp = decompose(g)
        components, _ = weak_components(g)
        order = zn_order(ModMatrix.of(rows, cfg.n))
        if fmt == "text":
            lines = [f"n={g.n} m={g.m} zn_order={order if order is not None else 'none'}"]
            lines += _text_spectrum(decomp.spectrum)
            lines += [f"components: {components}", f"tail vertices: {decomp.tail_vertices}"]
            return EXIT_OK, "\n".join(lines) + "\n"
        return EXIT_OK, _dumps({
            "n": g.n, "m": g.m, "matrix": g.matrix.tolist(), "zn_order": order,
            "spectrum": spectrum_json(decomp.spectrum), "components": components,
            "tail_vertices": decomp.tail_vertices, "on_cycle": decomp.on_cycle,
        })

    if cfg.command == "levels":
        part, report = level_partition(cfg.r), tree_report(cfg.r)
        arcs_ok = verify_level_arcs(cfg.r)
        status = EXIT_OK if arcs_ok and report.is_inverted_pbt else EXIT_VERIFY
        if fmt == "text":
            lines = [f"r={cfg.r} level sizes: {part.sizes()}", f"level arcs ok: {arcs_ok}",
                     f"inverted PBT: {report.is_inverted_pbt} depth={report.depth} root={report.root}",
                     f"closing arcs: {list(report.closing_arcs)}"]
            if report.closed_form_mismatch:
                lines.append(f"note: measured depth {report.depth} != 2^r - 1 = {report.closed_form_depth}")
            return status, "\n".join(lines) + "\n"
        return status, _dumps({"level_arcs_ok": arcs_ok, "partition": part.to_dict(), "tree": report.to_dict()})

    if cfg.command == "predict":
        pred = predict(cfg.p)
        doc = pred.to_dict()
        doc["spectrum"] = spectrum_json(pred.spectrum())
        status = EXIT_OK
        if cfg.check:
            doc["verified"] = verify_prediction(cfg.p, budget=budget)
            status = EXIT_OK if doc["verified"] else EXIT_VERIFY
        if fmt == "text":
            return status, "".join(f"{k}: {v}\n" for k, v in doc.items())
        return status, _dumps(doc)

    if cfg.command == "verify":
        report = run_suite(cfg.suite, cfg.n_max)
        return (EXIT_OK if report["passed"] else EXIT_VERIFY), report_json(report)

    if cfg.command == "survey":
        rows = survey(cfg.p_max)
        if fmt == "json":
            return EXIT_OK, _dumps([dict(r.prediction.to_dict(), criterion=r.criterion.value) for r in rows])
        if fmt == "text":
            lines = [f"{r.p:>6} mod8={r.p % 8} t={r.prediction.t} k={r.prediction.k} s={r.prediction.s} "
                     f"secondary={r.prediction.secondary_exists} criterion={r.criterion.value}" for r in rows]
            return EXIT_OK, "".join(line + "\n" for line in lines)
        return EXIT_OK, survey_csv(rows)

    if cfg.command == "oeis":
        return EXIT_OK, "".join(f"{t}\n" for t in oeis_terms(cfg.n_max, budget=budget))

    raise UsageError(f"unknown command {cfg.command!r}")


def run(cfg: RunConfig) -> int:
    try:
        status, text = execute(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, ContractError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
