import numpy as np

from spinorlab.tensor import skew, sym


def get_func(obj, method_name):
    """
    Retrieve a method from an object.

    For example, ``curvature_classify`` or ``curvature.classify``.
    """
    for attr in method_name.split("."):
        obj = getattr(obj, attr)
    return obj


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_skew(rng, n):
    return skew(random_complex(rng, (n, n)), [0, 1])


def random_symmetric(rng, n):
    return sym(random_complex(rng, (n, n)), [0, 1])


def close(a, b, atol=1e-8):
    """Arrays agree relative to the larger of their norms."""
    a, b = np.asarray(a), np.asarray(b)
    scale = max(1.0, float(np.linalg.norm(a)), float(np.linalg.norm(b)))
    return float(np.linalg.norm(a - b)) <= atol * scale
