"""
Command-line front end.

Exit codes: ``0`` success, ``1`` file errors, ``2`` invalid input,
``3`` an ambiguous numerical rank, ``4`` any other failure including a
failing ``verify`` run.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable
from logging import Logger, getLogger
from typing import Any

import numpy as np

from spinorlab import jsonio
from spinorlab.definitions import Dictionary, JsonValueT, Space, cell_name, format_level
from spinorlab.exceptions import (
    FileError,
    SchemaError,
    SpinorLabError,
    ToleranceAmbiguous,
    ValidationError,
)
from spinorlab.fixtures import FIXTURE_SEED, fixture
from spinorlab.polynomial import PolynomialMetric, parse_polynomial_metric
from spinorlab.tolerance import ToleranceContext
from spinorlab.verify import run_suite
from spinorlab.workbench import Workbench

logger: Logger = getLogger(__name__)

EXIT_OK = 0
EXIT_FILE = 1
EXIT_VALIDATION = 2
EXIT_AMBIGUOUS = 3
EXIT_FAILURE = 4

#: Document kind expected for each ``classify`` argument.
CLASSIFY_KINDS = {"lie": "lie", "ricci": "ricci", "cotton": "cotton", "weyl": "weyl", "torsion": "connection"}

DEFAULT_VERIFY_RANGE = "2..4"


def _parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="spinorlab",
        description="Classify curvature and intrinsic torsion relative to a pure spinor.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug output to stderr")
    parser.add_argument("--tol", type=float, help="absolute tolerance for vanishing decisions")
    parser.add_argument("--seed", type=int, help="seed for every random choice")
    parser.add_argument("--json", action="store_true", help="print JSON instead of text")
    parser.add_argument("--m", type=int, help="half-dimension where no input document gives one")
    commands = parser.add_subparsers(dest="command", required=True)

    classify = commands.add_parser("classify", help="filtration level of a tensor or torsion conditions")
    classify.add_argument("kind", choices=sorted(CLASSIFY_KINDS))
    classify.add_argument("tensor", help="JSON document of the tensor or connection")
    classify.add_argument("spinor", help="JSON document of the pure spinor")

    dims = commands.add_parser("dims", help="dimensions of the irreducible pieces of a module")
    dims.add_argument("space", choices=[space.value for space in Space])
    dims.add_argument("dims_m", metavar="M", nargs="?", type=int)

    verify = commands.add_parser("verify", help="run the self-check suite")
    verify.add_argument("range", nargs="?", default=DEFAULT_VERIFY_RANGE, help="'M' or 'LOW..HIGH'")

    example = commands.add_parser("example", help="print a bundled example document")
    example.add_argument("name")

    purity = commands.add_parser("purity", help="purity report of a spinor")
    purity.add_argument("spinor")

    curvature = commands.add_parser("curvature", help="curvature of a polynomial metric at a point")
    curvature.add_argument("metric", help="metric as a JSON document or in the g[a][b] = ... text form")
    curvature.add_argument("--point", help="comma-separated coordinates; the origin by default")
    curvature.add_argument("--spinor", help="JSON document of a pure spinor in the null frame")
    return parser.parse_args(argv)


def parse_range(text: str) -> list[int]:
    """
    >>> parse_range("2..4"), parse_range("3")
    ([2, 3, 4], [3])
    """
    low, _, high = text.partition("..")
    try:
        first, last = int(low), int(high or low)
    except ValueError as exc:
        raise SchemaError(f"expected 'M' or 'LOW..HIGH'; got {text!r}") from exc
    if first > last:
        raise SchemaError(f"empty range {text!r}")
    return list(range(first, last + 1))


def _workbench(args: argparse.Namespace, m: int) -> Workbench:
    return Workbench(m, EPS_ABS=args.tol, SEED=args.seed)


def _load(path: str, kind: str, args: argparse.Namespace) -> Dictionary:
    document = jsonio.load(path, ToleranceContext.from_settings(EPS_ABS=args.tol))
    if document.kind != kind:
        raise SchemaError(f"{path} holds a {document.kind} document; expected {kind}")
    return document


def _emit(report: Any, args: argparse.Namespace, text: Callable[[Any], str]) -> None:
    if args.json:
        payload: JsonValueT = report.to_json() if hasattr(report, "to_json") else report
        print(json.dumps(payload, indent=1))
    else:
        print(text(report))


def _lines(report: Dictionary, keys: list[str]) -> str:
    return "\n".join(f"{key}: {_plain(report[key])}" for key in keys if key in report)


def _plain(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ", ".join(str(item) for item in value) or "-"
    if isinstance(value, float):
        return f"{value:.3e}"
    return str(value)


def cmd_classify(args: argparse.Namespace) -> int:
    tensor = _load(args.tensor, CLASSIFY_KINDS[args.kind], args)
    spinor = _load(args.spinor, "spinor", args)
    if tensor.m != spinor.m:
        raise SchemaError(f"tensor has m={tensor.m} but spinor has m={spinor.m}")
    wb = _workbench(args, tensor.m)
    xi = wb.spinor(spinor.value, spinor.chirality)
    if args.kind == "torsion":
        report = wb.torsion_classify(tensor.value, xi)
        _emit(report, args, lambda r: _lines(r, ["holding", "invariant_class", "foliating", "recurrent", "parallel"]))
    else:
        report = wb.curvature_classify(args.kind, tensor.value, xi)
        _emit(report, args, lambda r: f"level {r.level_name}\n" + _lines(r, ["position", "norm"]))
    return EXIT_OK


def cmd_dims(args: argparse.Namespace) -> int:
    m = args.dims_m or args.m or 2
    wb = _workbench(args, m)
    space = Space(args.space)
    dims = wb.curvature_module_dims(space)
    report = Dictionary(
        space=space.value,
        m=m,
        total=wb.curvature_total_dim(space),
        pieces={cell_name(space, *cell): dim for cell, dim in sorted(dims.items(), reverse=True)},
    )

    def text(r: Dictionary) -> str:
        rows = [f"{name:>12} {dim:>6}" for name, dim in r.pieces.items()]
        return "\n".join([*rows, f"{'total':>12} {r.total:>6}"])

    _emit(report, args, text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    m_values = parse_range(args.range)
    report = run_suite(m_values, seed=0 if args.seed is None else args.seed, tol=ToleranceContext.from_settings(EPS_ABS=args.tol))

    def text(r: Dictionary) -> str:
        rows = [f"{'PASS' if c.passed else 'FAIL'} m={c.m} {c.name}" + ("" if c.passed else f": {c.detail}") for c in r.checks]
        return "\n".join([*rows, f"{r.total - r.failures}/{r.total} checks passed"])

    _emit(report, args, text)
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_example(args: argparse.Namespace) -> int:
    document = fixture(args.name, args.m or 2, FIXTURE_SEED if args.seed is None else args.seed)
    print(json.dumps(document, indent=1))
    return EXIT_OK


def cmd_purity(args: argparse.Namespace) -> int:
    spinor = _load(args.spinor, "spinor", args)
    report = _workbench(args, spinor.m).clifford_is_pure(spinor.value, spinor.chirality)
    _emit(report, args, lambda r: _lines(r, list(r)))
    return EXIT_OK


def _read_metric(path: str, args: argparse.Namespace) -> PolynomialMetric:
    text = jsonio.read_text(path)
    if text.lstrip().startswith("{"):
        document = jsonio.loads(text)
        if document.kind != "metric":
            raise SchemaError(f"{path} holds a {document.kind} document; expected metric")
        return document.value  # type: ignore[no-any-return]
    return parse_polynomial_metric(text, args.m)


def _point(text: str | None, n: int) -> np.ndarray:
    if text is None:
        return np.zeros(n)
    try:
        point = np.array([float(part) for part in text.split(",")])
    except ValueError as exc:
        raise SchemaError(f"point must be comma-separated numbers; got {text!r}") from exc
    if point.shape != (n,):
        raise SchemaError(f"point needs {n} coordinates; got {point.size}")
    return point


def cmd_curvature(args: argparse.Namespace) -> int:
    metric = _read_metric(args.metric, args)
    wb = _workbench(args, metric.m)
    point = _point(args.point, metric.n)
    curvature = wb.geometry_curvature(metric, point)
    report = Dictionary(
        m=metric.m,
        scalar=complex(curvature.scalar),
        weyl_norm=float(np.linalg.norm(curvature.weyl)),
        cotton_norm=float(np.linalg.norm(curvature.cotton)),
        tracefree_ricci_norm=float(np.linalg.norm(curvature.tracefree_ricci)),
        identities=curvature.residuals,
    )
    xi = None
    if args.spinor is not None:
        spinor = _load(args.spinor, "spinor", args)
        if spinor.m != metric.m:
            raise SchemaError(f"spinor has m={spinor.m} but the metric has m={metric.m}")
        xi = wb.spinor(spinor.value, spinor.chirality)
        framed = wb.geometry_framed_curvature(metric, point)
        report.weyl = wb.curvature_classify(Space.WEYL, framed.weyl, xi)
        report.ricci = wb.curvature_classify(Space.RICCI, framed.tracefree_ricci, xi)
        report.cotton = wb.curvature_classify(Space.COTTON, framed.cotton, xi)
    if metric.m == 2:
        petrov = wb.geometry_petrov(metric, point, xi)
        report.petrov = Dictionary({key: petrov[key] for key in ("type", "penrose", "anti_self_dual_type", "level") if key in petrov})

    def text(r: Dictionary) -> str:
        lines = [_lines(r, ["scalar", "weyl_norm", "cotton_norm", "tracefree_ricci_norm"]), f"identities hold: {r.identities.holds}"]
        for space in ("weyl", "ricci", "cotton"):
            if space in r:
                lines.append(f"{space}: level {r[space].level_name} ({r[space].position})")
        if "petrov" in r:
            level = "" if "level" not in r.petrov else f", level {format_level(r.petrov.level)}"
            lines.append(f"petrov: type {r.petrov.type} ({r.petrov.penrose}){level}")
        return "\n".join(lines)

    _emit(report, args, text)
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "classify": cmd_classify,
    "dims": cmd_dims,
    "verify": cmd_verify,
    "example": cmd_example,
    "purity": cmd_purity,
    "curvature": cmd_curvature,
}


def exit_code(exc: SpinorLabError) -> int:
    if isinstance(exc, FileError):
        return EXIT_FILE
    if isinstance(exc, ToleranceAmbiguous):
        return EXIT_AMBIGUOUS
    if isinstance(exc, ValidationError):
        return EXIT_VALIDATION
    return EXIT_FAILURE


def main(argv: list[str] | None = None) -> int:
    args = _parse_args(argv)
    if args.verbose:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(name)s %(levelname)s: %(message)s"))
        package_logger = getLogger("spinorlab")
        package_logger.addHandler(handler)
        package_logger.setLevel(logging.DEBUG)
    try:
        return COMMANDS[args.command](args)
    except SpinorLabError as exc:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"spinorlab: error: {exc}", file=sys.stderr)
        return exit_code(exc)


if __name__ == "__main__":
    raise SystemExit(main())
