import numpy as np
import pytest

from spinorlab.clifford import build_model
from spinorlab.exceptions import DegenerateMetric, UnsupportedDimension, ZeroConformalFactor
from spinorlab.fixtures import conformally_flat_metric, flat_metric, pp_wave_metric
from spinorlab.geometry import (
    conformal_metric,
    conformal_transform,
    curvature_at,
    frame_components,
    frame_connection,
    framed_curvature,
    null_frame,
    parallel_spinors,
    upsilon,
)
from spinorlab.polynomial import PolynomialMetric, parse_polynomial_metric
from tests.utils import random_symmetric

POINT = [0.1, -0.2, 0.3, 0.4]


@pytest.mark.parametrize("m", [2, 3])
def test_flat(m):
    curvature = curvature_at(flat_metric(m), np.zeros(2 * m))
    assert np.allclose(curvature.riemann, 0)
    assert curvature.scalar == 0
    assert curvature.residuals.holds


@pytest.mark.parametrize("m", [2, 3])
def test_conformally_flat(m):
    point = np.full(2 * m, 0.25)
    curvature = curvature_at(conformally_flat_metric(m), point)
    assert np.linalg.norm(curvature.riemann) > 1e-3
    assert np.linalg.norm(curvature.weyl) < 1e-8
    assert np.linalg.norm(curvature.cotton) < 1e-8
    assert curvature.residuals.holds


def test_pp_wave_is_vacuum():
    curvature = curvature_at(pp_wave_metric(), POINT)
    assert np.linalg.norm(curvature.weyl) > 1e-3
    assert np.linalg.norm(curvature.tracefree_ricci) < 1e-10
    assert abs(curvature.scalar) < 1e-10
    assert curvature.residuals.holds


def test_curved_identities():
    metric = parse_polynomial_metric("g[0][1] = 1 + x2*x3\ng[2][3] = 1 + x1^2\ng[0][0] = x4^3")
    curvature = curvature_at(metric, POINT)
    assert np.linalg.norm(curvature.cotton) > 1e-6
    assert curvature.residuals.holds


def test_low_dimension():
    with pytest.raises(UnsupportedDimension):
        curvature_at(PolynomialMetric(1, {(0, 1): 1}), [0, 0])


@pytest.mark.parametrize("omega", ["1 + x1", "2 + x1*x4 - x3^2"])
def test_conformal_transform(omega):
    report = conformal_transform(pp_wave_metric(), omega, POINT)
    assert report.residuals.holds, report.residuals
    hatted = curvature_at(conformal_metric(pp_wave_metric(), omega), POINT)
    assert np.allclose(hatted.weyl, report.omega**2 * curvature_at(pp_wave_metric(), POINT).weyl)


def test_upsilon():
    factor = upsilon("2 + x1", 4, [0, 0, 0, 0])
    assert factor.omega == 2
    assert np.allclose(factor.upsilon, [0.5, 0, 0, 0])
    assert np.allclose(factor.d_upsilon[0, 0], -0.25)
    with pytest.raises(ZeroConformalFactor):
        upsilon("x1", 4, [0, 0, 0, 0])


@pytest.mark.parametrize("m", [2, 3])
def test_null_frame(m, rng):
    model = build_model(m)
    g = random_symmetric(rng, 2 * m) + 2 * np.eye(2 * m)
    frame = null_frame(g, model)
    assert np.allclose(frame.T @ g @ frame, model.g)
    target = np.sqrt(np.linalg.det(model.g) / np.linalg.det(g) + 0j)
    assert np.isclose(np.linalg.det(frame), target)


def test_null_frame_degenerate():
    with pytest.raises(DegenerateMetric):
        null_frame(np.zeros((4, 4)), build_model(2))


def test_frame_connection():
    framed = frame_connection(pp_wave_metric(), POINT)
    assert framed.skew_residual < 1e-10
    with pytest.raises(DegenerateMetric):
        frame_connection(pp_wave_metric(), POINT, frame=np.eye(4))


def test_framed_curvature():
    framed = framed_curvature(pp_wave_metric(), POINT)
    assert np.allclose(framed.weyl, frame_components(framed.curvature.weyl, framed.frame))
    assert framed.bundle.model.m == 2


def test_parallel_spinors_of_flat_space():
    model = build_model(3)
    framed = frame_connection(flat_metric(3), np.zeros(6), model=model)
    assert np.allclose(framed.connection, 0)
    assert parallel_spinors(framed.connection, model).shape == (model.half, model.half)
