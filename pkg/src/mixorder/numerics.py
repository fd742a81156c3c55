"""Small numerical kernels: compensated sums, quadrature, bisection.

Everything here is deterministic and stateless. The adaptive Simpson rule
uses interval halving with a per-panel absolute tolerance, so the total
error scales with the number of accepted panels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import QuadratureError

#: absolute floor under which a denominator is treated as undefined
DENOM_FLOOR = 1e-12


def kahan_add(total, comp, term):
    """One compensated-summation step; returns updated (total, comp).

    Works elementwise on arrays as well as on scalars.
    """
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    converged: bool
    panels: int
    unconverged_panels: int


def _simpson(f, a, fa, b, fb, m, fm):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(f, a, b, abs_tol=1e-9, max_depth=40):
    """Adaptive Simpson quadrature of ``f`` on [a, b].

    Each panel is halved until the classic Richardson estimate
    |S(fine) - S(coarse)| <= 15 * abs_tol holds or ``max_depth`` is hit.
    Panels that never meet the tolerance are counted but still contribute
    their best fine estimate.
    """
    if a == b:
        return QuadratureResult(0.0, True, 0, 0)
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = _simpson(f, a, fa, b, fb, m, fm)
    stack = [(a, fa, b, fb, m, fm, whole, 0)]
    total = 0.0
    comp = 0.0
    panels = 0
    bad = 0
    while stack:
        a0, fa0, b0, fb0, m0, fm0, s0, depth = stack.pop()
        lm = 0.5 * (a0 + m0)
        rm = 0.5 * (m0 + b0)
        flm, frm = f(lm), f(rm)
        left = _simpson(f, a0, fa0, m0, fm0, lm, flm)
        right = _simpson(f, m0, fm0, b0, fb0, rm, frm)
        err = (left + right) - s0
        if abs(err) <= 15.0 * abs_tol or depth >= max_depth:
            panels += 1
            if abs(err) > 15.0 * abs_tol:
                bad += 1
            total, comp = kahan_add(total, comp, left + right + err / 15.0)
        else:
            stack.append((a0, fa0, m0, fm0, lm, flm, left, depth + 1))
            stack.append((m0, fm0, b0, fb0, rm, frm, right, depth + 1))
    return QuadratureResult(total, bad == 0, panels, bad)


def integrate_or_raise(f, a, b, abs_tol=1e-9, max_depth=40):
    res = adaptive_simpson(f, a, b, abs_tol=abs_tol, max_depth=max_depth)
    if not res.converged:
        raise QuadratureError(
            f"quadrature did not converge on [{a}, {b}] "
            f"({res.unconverged_panels} of {res.panels} panels over tolerance)",
            estimate=res.value,
        )
    return res.value


def bisect_nondecreasing(fn, target, lo, hi, xtol=1e-10, max_iter=200):
    """Smallest-x solution of fn(x) >= target for nondecreasing ``fn``.

    Plain bisection; ``lo`` must satisfy fn(lo) <= target <= fn(hi).
    """
    flo, fhi = fn(lo), fn(hi)
    if flo >= target:
        return lo
    if fhi < target:
        raise ValueError(f"bracket does not contain target: f({hi})={fhi} < {target}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if fn(mid) >= target:
            hi = mid
        else:
            lo = mid
        if hi - lo <= xtol:
            break
    return hi


def expand_upper_bracket(fn, target, lo, step=1.0, max_doublings=200):
    """Find hi > lo with fn(hi) >= target by repeated doubling."""
    hi = lo + step
    for _ in range(max_doublings):
        if fn(hi) >= target:
            return hi
        hi = lo + (hi - lo) * 2.0
    raise ValueError(f"could not bracket target {target} above {lo}")


def central_difference(fn, t, h=None):
    """Central difference with the package-wide step h = 1e-5 * max(1, |t|)."""
    t = np.asarray(t, dtype=float)
    if h is None:
        h = 1e-5 * np.maximum(1.0, np.abs(t))
    return (fn(t + h) - fn(t - h)) / (2.0 * h)
