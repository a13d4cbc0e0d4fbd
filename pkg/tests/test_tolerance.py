import pytest

from spinorlab.exceptions import InvalidTolerance, ValidationError
from spinorlab.tolerance import (
    DEFAULT_EPS_ABS,
    DEFAULT_TOLERANCE,
    ToleranceContext,
)


def test_defaults():
    tol = ToleranceContext()
    assert tol.eps_abs == 1e-10
    assert tol.eps_rel == 1e-9
    assert tol.svd_rank_cutoff == 1e-8
    assert tol.raise_on_ambiguous_rank
    assert tol == DEFAULT_TOLERANCE
    assert hash(tol) == hash(DEFAULT_TOLERANCE)


@pytest.mark.parametrize("field", ["eps_abs", "eps_rel", "svd_rank_cutoff"])
@pytest.mark.parametrize("value", [0, -1e-3, "tiny", None])
def test_invalid_tolerance(field, value):
    with pytest.raises(InvalidTolerance):
        ToleranceContext(**{field: value})
    assert issubclass(InvalidTolerance, ValidationError)


def test_immutable():
    with pytest.raises(AttributeError):
        DEFAULT_TOLERANCE.eps_abs = 1.0


def test_replace():
    tol = DEFAULT_TOLERANCE.replace(eps_rel=1e-6)
    assert tol.eps_rel == 1e-6
    assert tol.eps_abs == DEFAULT_EPS_ABS
    assert DEFAULT_TOLERANCE.eps_rel == 1e-9


def test_vanishes():
    tol = ToleranceContext(eps_abs=1e-10, eps_rel=1e-6)
    assert tol.vanishes(1e-11)
    assert not tol.vanishes(1e-9)
    assert tol.vanishes(1e-9, scale=1.0)
    assert tol.threshold(100.0) == pytest.approx(1e-4)


def test_from_settings_explicit():
    tol = ToleranceContext.from_settings(EPS_ABS=1e-12, RAISE_ON_AMBIGUOUS_RANK=False)
    assert tol.eps_abs == 1e-12
    assert not tol.raise_on_ambiguous_rank


def test_from_settings_env(monkeypatch):
    monkeypatch.delenv("SPINORLAB_SVD_RANK_CUTOFF", raising=False)
    monkeypatch.setenv("SPINORLAB_EPS_REL", "1e-7")
    monkeypatch.setenv("PYTHON_SPINORLAB_SVD_RANK_CUTOFF", "1e-6")
    tol = ToleranceContext.from_settings()
    assert tol.eps_rel == 1e-7
    assert tol.svd_rank_cutoff == 1e-6
    assert ToleranceContext.from_settings(EPS_REL=1e-5).eps_rel == 1e-5


def test_from_settings_bad_env(monkeypatch):
    monkeypatch.setenv("SPINORLAB_EPS_ABS", "-1")
    with pytest.raises(InvalidTolerance):
        ToleranceContext.from_settings()
