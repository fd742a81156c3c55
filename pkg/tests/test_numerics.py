import math

import numpy as np
import pytest

from mixorder.errors import QuadratureError
from mixorder.numerics import (
    adaptive_simpson,
    bisect_nondecreasing,
    central_difference,
    expand_upper_bracket,
    integrate_or_raise,
    kahan_add,
)


def test_kahan_add_compensates():
    terms = [0.1] * 10_000 + [1e9] + [0.1] * 10_000
    total = comp = 0.0
    naive = 0.0
    for t in terms:
        total, comp = kahan_add(total, comp, t)
        naive += t
    exact = math.fsum(terms)
    assert abs(total - exact) <= abs(naive - exact)
    assert total == pytest.approx(exact, abs=1e-6)


def test_adaptive_simpson_polynomial_exact():
    res = adaptive_simpson(lambda x: x**2, 0.0, 1.0)
    assert res.converged
    assert res.value == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_adaptive_simpson_smooth():
    res = adaptive_simpson(math.sin, 0.0, math.pi, abs_tol=1e-10)
    assert res.converged
    assert res.value == pytest.approx(2.0, abs=1e-9)


def test_integrate_or_raise_reports_estimate():
    # power singularity that depth 8 cannot settle to 1e-12 per panel
    def nasty(x):
        return x**-0.9 if x > 0 else 0.0

    with pytest.raises(QuadratureError) as exc:
        integrate_or_raise(nasty, 0.0, 1.0, abs_tol=1e-12, max_depth=8)
    assert exc.value.estimate is not None


def test_bisection_quantile_accuracy():
    fn = lambda x: 1.0 - math.exp(-x)
    target = 0.5
    x = bisect_nondecreasing(fn, target, 0.0, 10.0, xtol=1e-12)
    assert x == pytest.approx(math.log(2.0), abs=1e-10)


def test_expand_upper_bracket():
    fn = lambda x: x / 100.0
    hi = expand_upper_bracket(fn, 0.5, 0.0, step=1.0)
    assert fn(hi) >= 0.5


def test_central_difference_step_rule():
    fn = lambda t: t**3
    t = 4.0
    assert float(central_difference(fn, t)) == pytest.approx(3 * t**2, rel=1e-9)
    arr = central_difference(fn, np.array([1.0, 2.0]))
    assert np.allclose(arr, [3.0, 12.0], rtol=1e-8)
