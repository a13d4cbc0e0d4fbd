from fractions import Fraction

import numpy as np
import pytest

from spinorlab.exceptions import BadComponentSymmetry, NotSkew, UndefinedComponent, ZeroConformalFactor
from spinorlab.pure import make_dual_pair
from spinorlab.torsion import (
    CONDITIONS,
    check_connection,
    classify_torsion,
    companion_spinor,
    conformal_connection,
    conformal_rescale_companion,
    conformal_rescale_torsion,
    conformal_spinor_derivative,
    construct_twistor_connection,
    covariant_derivative_spinor,
    dim_torsion_components,
    invariant_torsion_classes,
    lee_form,
    parabolic_connection,
    pure_pair_check,
    random_companion,
    random_torsion_component,
    recurrent_rescaling,
    torsion_parts,
    torsion_representative,
    twistor_prolongation_residual,
    twistor_residual,
)
from tests.conftest import SEED
from tests.utils import random_complex, random_skew, random_symmetric


@pytest.fixture(scope="module")
def pair(model):
    return make_dual_pair(model, model.canonical_spinor(), seed=SEED)


def nonempty_cells(m):
    return [cell for cell, dim in dim_torsion_components(m).items() if dim]


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_dimensions_add_up(m):
    assert sum(dim_torsion_components(m).values()) == m * m * (m - 1)


@pytest.mark.parametrize("m, count", [(3, 8), (4, 7), (5, 7)])
def test_invariant_class_count(m, count):
    classes = invariant_torsion_classes(m)
    assert len(classes) == count
    assert frozenset(CONDITIONS.values()) in classes
    assert frozenset() in classes


def test_zero_connection(pair):
    n = pair.model.n
    report = classify_torsion(np.zeros((n, n, n)), pair.xi)
    assert report.holding == sorted(CONDITIONS.values())
    assert report.invariant_class == report.holding
    assert report.agrees
    assert report.foliating and report.recurrent and report.parallel
    assert report.torsion_norm == 0


def test_parabolic_connection_is_recurrent(pair, rng):
    report = classify_torsion(parabolic_connection(pair, rng), pair.xi)
    assert report.holding == sorted(CONDITIONS.values())
    assert report.recurrent
    assert not report.parallel
    assert report.torsion_norm < 1e-9


def test_representative_fails_its_own_condition(pair, rng):
    m = pair.model.m
    for cell in nonempty_cells(m):
        gamma = torsion_representative(pair, *cell, random_torsion_component(m, *cell, rng))
        report = classify_torsion(gamma + parabolic_connection(pair, rng), pair.xi)
        assert CONDITIONS[cell] not in report.holding, cell
        assert report.agrees, cell
        assert not report.recurrent


def test_lowest_pieces_are_foliating(pair, rng):
    m = pair.model.m
    for j in (0, 1):
        if not dim_torsion_components(m)[(Fraction(-1, 2), j)]:
            continue
        gamma = torsion_representative(pair, "-1/2", j, random_torsion_component(m, "-1/2", j, rng))
        assert classify_torsion(gamma, pair.xi).foliating


def test_trace_piece_class(pair, rng):
    gamma = torsion_representative(pair, "-1/2", 0, random_torsion_component(pair.model.m, "-1/2", 0, rng))
    report = classify_torsion(gamma, pair.xi)
    assert report.invariant_class == ["proj_twistor", "skew_foliating", "sym_foliating"]


def test_torsion_parts(pair, rng):
    m = pair.model.m
    trace = torsion_parts(torsion_representative(pair, "-1/2", 0, random_torsion_component(m, "-1/2", 0, rng)), pair)
    assert np.allclose(trace.upper, 0)
    assert np.allclose(trace.tracefree, 0)
    assert not np.allclose(trace.trace, 0)

    top = torsion_parts(torsion_representative(pair, "-3/2", 1, random_torsion_component(m, "-3/2", 1, rng)), pair)
    assert np.allclose(top.mixed, 0)
    assert np.allclose(top.skew, 0)
    assert not np.allclose(top.sym, 0)


def test_representative_errors(pair):
    m = pair.model.m
    with pytest.raises(UndefinedComponent):
        torsion_representative(pair, "1/2", 0, np.zeros((m, m, m)))
    with pytest.raises(BadComponentSymmetry):
        torsion_representative(pair, "-1/2", 0, np.zeros((m, m, m)))
    with pytest.raises(BadComponentSymmetry):
        torsion_representative(pair, "-3/2", 0, np.ones((m, m, m)))


def test_check_connection(model, rng):
    n = model.n
    with pytest.raises(NotSkew):
        check_connection(model, np.ones((n, n, n)))
    with pytest.raises(NotSkew):
        check_connection(model, np.zeros((n, n)))
    gamma = np.stack([random_skew(rng, n) for _ in range(n)])
    assert np.allclose(check_connection(model, gamma), gamma)


def test_twistor_connection(pair, rng):
    zeta = random_companion(pair.xi, rng)
    built = construct_twistor_connection(pair.xi, zeta, seed=SEED)
    assert built.exact
    assert np.linalg.norm(twistor_residual(built.connection, pair.xi, zeta)) < 1e-9
    assert np.allclose(companion_spinor(built.connection, pair.xi), zeta)
    report = classify_torsion(built.connection, pair.xi)
    assert report.conditions.sym_foliating.holds
    assert report.conditions.proj_twistor.holds
    assert report.agrees


def test_zero_companion_pair(pair):
    zeta = np.zeros(pair.model.half)
    assert pure_pair_check(pair.xi, zeta).holds
    built = construct_twistor_connection(pair.xi, zeta, seed=SEED)
    report = classify_torsion(built.connection, pair.xi)
    assert report.foliating
    assert report.recurrent


def test_lee_form_and_recurrent_rescaling(pair, rng):
    m = pair.model.m
    gamma = torsion_representative(pair, "-1/2", 0, random_torsion_component(m, "-1/2", 0, rng))
    gamma = gamma + parabolic_connection(pair, rng)
    assert lee_form(gamma, pair.xi).exact
    rescaling = recurrent_rescaling(gamma, pair.xi)
    assert rescaling.exact
    rescaled = conformal_rescale_torsion(gamma, pair.xi, rescaling.upsilon)
    assert not rescaled.before.recurrent
    assert rescaled.after.recurrent
    assert rescaled.after.holding == sorted(CONDITIONS.values())


def test_rescaling_keeps_foliating_verdicts(pair, rng):
    m, n = pair.model.m, pair.model.n
    for cell in nonempty_cells(m):
        gamma = torsion_representative(pair, *cell, random_torsion_component(m, *cell, rng))
        rescaled = conformal_rescale_torsion(gamma, pair.xi, random_complex(rng, n), omega=2.0)
        for name in ("skew_foliating", "sym_foliating"):
            assert rescaled.before.conditions[name].holds == rescaled.after.conditions[name].holds, (cell, name)


def test_conformal_connection_stays_skew(model, rng):
    n = model.n
    gamma = np.stack([random_skew(rng, n) for _ in range(n)])
    rescaled = conformal_connection(model, gamma, random_complex(rng, n), omega=3.0)
    assert np.allclose(rescaled, -rescaled.transpose(0, 2, 1))
    with pytest.raises(ZeroConformalFactor):
        conformal_connection(model, gamma, np.zeros(n), omega=0.0)


def rescaled_twistor_residual(connection, xi, zeta, upsilon, omega):
    """Twistor equation after ``g -> Omega^2 g`` with ``xi`` of weight one half."""
    model = xi.model
    rescaled_zeta = conformal_rescale_companion(zeta, xi, upsilon, omega)
    derivative = conformal_spinor_derivative(connection, xi, upsilon, omega)
    return derivative + np.einsum("aij,j->ai", model.to_same(xi.chirality), rescaled_zeta) / model.n


@pytest.mark.parametrize("omega", [1.0, 2.5 - 0.5j])
def test_twistor_connection_stays_twistor_after_rescaling(pair, rng, omega):
    zeta = random_companion(pair.xi, rng)
    built = construct_twistor_connection(pair.xi, zeta, seed=SEED)
    upsilon = random_complex(rng, pair.model.n)
    residual = rescaled_twistor_residual(built.connection, pair.xi, zeta, upsilon, omega)
    assert np.linalg.norm(residual) < 1e-9 * (1 + np.linalg.norm(zeta) * np.linalg.norm(upsilon))


def test_conformal_spinor_derivative(pair, rng):
    model, xi = pair.model, pair.xi
    n = model.n
    gamma = np.stack([random_skew(rng, n) for _ in range(n)])
    zeta = random_complex(rng, model.half)
    upsilon = random_complex(rng, n)
    omega = 1.5 + 0.5j
    assert np.allclose(
        rescaled_twistor_residual(gamma, xi, zeta, upsilon, omega), twistor_residual(gamma, xi, zeta) / omega
    )
    assert np.allclose(conformal_spinor_derivative(gamma, xi, np.zeros(n)), covariant_derivative_spinor(gamma, xi))
    with pytest.raises(ZeroConformalFactor):
        conformal_spinor_derivative(gamma, xi, upsilon, omega=0.0)


def test_conformal_rescale_companion(pair, rng):
    xi, n = pair.xi, pair.model.n
    zeta = random_complex(rng, pair.model.half)
    assert np.allclose(conformal_rescale_companion(zeta, xi, np.zeros(n), omega=2.0), zeta / 2)
    upsilon = random_complex(rng, n)
    shift = conformal_rescale_companion(zeta, xi, upsilon) - zeta
    assert np.allclose(shift, n / 2 * upsilon @ xi.xi_up)


def test_twistor_prolongation_residual(pair, rng):
    xi, n = pair.xi, pair.model.n
    schouten = random_symmetric(rng, n)
    balanced = -n / 2 * schouten @ xi.xi_up
    assert balanced.shape == (n, pair.model.half)
    assert np.allclose(twistor_prolongation_residual(balanced, schouten, xi), 0)
    assert np.allclose(twistor_prolongation_residual(np.zeros_like(balanced), schouten, xi), -balanced)
