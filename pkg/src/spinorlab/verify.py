"""
Self-check suite run by ``spinorlab verify``.

Every check rebuilds a known fact from scratch: Clifford relations, purity of
the canonical spinor, dimensions of every graded piece, the arrows of every
diagram, the levels of the bundled representatives, twistor connections,
curvature identities of polynomial metrics and the low-dimensional calculi.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from fractions import Fraction
from logging import Logger, getLogger
from typing import Any

import numpy as np

from spinorlab.classification import classify, rank_table
from spinorlab.clifford import CliffordModel, build_model, clifford_residual, gamma_identity_residuals
from spinorlab.definitions import Chirality, Dictionary, List, ListEntry, Space
from spinorlab.diagrams import certify_arrows, present_cells
from spinorlab.exceptions import SpinorLabError
from spinorlab.fixtures import conformally_flat_metric, pp_wave_metric, pp_wave_spinor
from spinorlab.geometry import curvature_at
from spinorlab.lowdim import SixSpinorModel, TwoSpinorModel, petrov_at, six_cross_check
from spinorlab.pure import DualPair, PureSpinor, is_pure, make_dual_pair
from spinorlab.representatives import random_component, representative
from spinorlab.tolerance import ToleranceContext
from spinorlab.torsion import classify_torsion, construct_twistor_connection, random_companion

logger: Logger = getLogger(__name__)

#: Random trials per arrow inside the suite.
SUITE_ARROW_TRIALS = 5

CheckT = Callable[["SuiteContext"], "tuple[bool, Any]"]


class SuiteContext:
    """Model, dual pair and random generator shared by the checks for one ``m``."""

    def __init__(self, m: int, seed: int | None, tol: ToleranceContext | None):
        self.m = m
        self.seed = seed
        self.model: CliffordModel = build_model(m, tol)
        self.pair: DualPair = make_dual_pair(self.model, self.model.canonical_spinor(), seed=seed)
        self.xi: PureSpinor = self.pair.xi
        self.rng = np.random.default_rng(seed)


def _clifford(ctx: SuiteContext) -> tuple[bool, Any]:
    residual = clifford_residual(ctx.model)
    return ctx.model.tol.vanishes(residual, 1.0), residual


def _gamma_identities(ctx: SuiteContext) -> tuple[bool, Any]:
    worst = max(max(gamma_identity_residuals(ctx.model, p, ctx.seed)) for p in range(1, ctx.m + 1))
    return worst < 1e-8, worst


def _purity(ctx: SuiteContext) -> tuple[bool, Any]:
    report = is_pure(ctx.model, ctx.model.canonical_spinor(), Chirality.PLUS)
    return bool(report.pure), report.kernel_dim


def _ranks(space: Space) -> CheckT:
    def check(ctx: SuiteContext) -> tuple[bool, Any]:
        table = rank_table(space, ctx.pair, ctx.seed)
        return bool(table.agrees), table.measured

    return check


def _arrows(space: Space) -> CheckT:
    def check(ctx: SuiteContext) -> tuple[bool, Any]:
        report = certify_arrows(space, ctx.pair, SUITE_ARROW_TRIALS, ctx.seed)
        return bool(report.agrees), [f"{a.upper}->{a.lower}" for a in report.arrows if a.present != a.expected]

    return check


def _representatives(space: Space) -> CheckT:
    def check(ctx: SuiteContext) -> tuple[bool, Any]:
        wrong = []
        for cell in present_cells(space, ctx.m):
            element = representative(space, *cell, ctx.pair, random_component(space, ctx.m, *cell, ctx.rng))
            report = classify(space, element, ctx.xi)
            if report.level != cell[0]:
                wrong.append(f"{cell[0]}^{cell[1]} -> {report.level_name}")
        return not wrong, wrong

    return check


def _twistor(ctx: SuiteContext) -> tuple[bool, Any]:
    zeta = random_companion(ctx.xi, ctx.rng)
    built = construct_twistor_connection(ctx.xi, zeta, ctx.seed)
    report = classify_torsion(built.connection, ctx.xi)
    holding = report.conditions.proj_twistor.holds and report.conditions.sym_foliating.holds
    return bool(built.exact and holding and report.agrees), report.holding


def _curvature_identities(ctx: SuiteContext) -> tuple[bool, Any]:
    curvature = curvature_at(conformally_flat_metric(ctx.m), np.full(2 * ctx.m, 0.3), ctx.model.tol)
    flat = float(np.linalg.norm(curvature.weyl)) < 1e-8 and float(np.linalg.norm(curvature.cotton)) < 1e-8
    return bool(curvature.residuals.holds and flat), dict(curvature.residuals)


def _two_spinors(ctx: SuiteContext) -> tuple[bool, Any]:
    residual = TwoSpinorModel(ctx.model).identity_residual()
    report = petrov_at(pp_wave_metric(), np.zeros(4), pp_wave_spinor())
    return residual < 1e-10 and report.type == "{4}" and report.level == 2, report.type


def _six_spinors(ctx: SuiteContext) -> tuple[bool, Any]:
    six = SixSpinorModel(ctx.model)
    residuals = six.identity_residuals()
    for space in (Space.LIE, Space.RICCI, Space.COTTON, Space.WEYL):
        for cell in present_cells(space, 3):
            element = representative(space, *cell, ctx.pair, random_component(space, 3, *cell, ctx.rng))
            six_cross_check(space, element, ctx.xi, six)
    return max(residuals.values()) < 1e-10, dict(residuals)


def suite_checks(m: int) -> dict[str, CheckT]:
    checks: dict[str, CheckT] = {
        "clifford relations": _clifford,
        "gamma identities": _gamma_identities,
        "canonical spinor is pure": _purity,
    }
    for space in Space:
        checks[f"{space.value} dimensions"] = _ranks(space)
        checks[f"{space.value} arrows"] = _arrows(space)
        checks[f"{space.value} representatives"] = _representatives(space)
    checks["twistor connection"] = _twistor
    checks["curvature identities"] = _curvature_identities
    if m == 2:
        checks["two-spinor calculus"] = _two_spinors
    if m == 3:
        checks["six-dimensional spinor calculus"] = _six_spinors
    return checks


def run_suite(m_values: Iterable[int], seed: int | None = 0, tol: ToleranceContext | None = None) -> Dictionary:
    """
    Run every check for each ``m``.

    A check that raises a :class:`~spinorlab.exceptions.SpinorLabError` fails
    with the message as its detail.
    """
    entries = []
    for m in m_values:
        ctx = SuiteContext(m, seed, tol)
        for name, check in suite_checks(m).items():
            try:
                passed, detail = check(ctx)
            except SpinorLabError as exc:
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            if not passed:
                logger.warning("Check %r failed for m=%d: %s", name, m, detail)
            entries.append(ListEntry(name=name, m=m, passed=bool(passed), detail=_plain(detail)))
    checks = List(entries, entry_class=ListEntry)
    failed = [entry for entry in checks if not entry.passed]
    return Dictionary(checks=checks, passed=not failed, failures=len(failed), total=len(checks))


def _plain(detail: Any) -> Any:
    if isinstance(detail, dict):
        return {str(key): _plain(value) for key, value in detail.items()}
    if isinstance(detail, Fraction):
        return str(detail)
    if isinstance(detail, (np.floating, np.integer)):
        return detail.item()
    return detail
