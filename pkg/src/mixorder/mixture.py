"""Finite mixtures of exponentiated location-scale components.

The mixture CDF/PDF/SF are weighted sums of the component functions, with
contributions switching on as x crosses each component's support start.
Sums are Kahan-compensated because catalog weights span two orders of
magnitude. Also provides the two-block multiple-outlier construction and a
quadrature check that the mixture density integrates to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .els import ELSComponent
from .errors import (
    ParameterError,
    QuadratureError,
    UndefinedPointError,
    WeightError,
)
from .numerics import (
    DENOM_FLOOR,
    adaptive_simpson,
    bisect_nondecreasing,
    expand_upper_bracket,
    kahan_add,
)

#: exponent of the left-edge power substitution used by the normalization
#: quadrature; large enough to smooth F^(alpha-1) divergences for alpha*b
#: down to about 0.07
_EDGE_POWER = 16.0


class WeightPolicy(str, Enum):
    STRICT_UNIT = "strict"
    AUTO_NORMALIZE = "autonorm"


class FiniteMixture:
    """Weighted list of ELS components.

    Under ``STRICT_UNIT`` the raw weights must sum to one within 1e-12;
    under ``AUTO_NORMALIZE`` they are rescaled and the raw sum is kept for
    reporting.
    """

    def __init__(self, components, weights, policy=WeightPolicy.STRICT_UNIT):
        components = tuple(components)
        weights = np.asarray(weights, dtype=float)
        if len(components) < 1:
            raise ParameterError("a mixture needs at least one component")
        if weights.ndim != 1 or weights.size != len(components):
            raise ParameterError("weights must be a vector matching the components")
        if np.any(weights <= 0.0) or not np.all(np.isfinite(weights)):
            raise WeightError(f"weights must be strictly positive, got {weights.tolist()}")
        raw_sum = float(math.fsum(weights.tolist()))
        policy = WeightPolicy(policy)
        if policy is WeightPolicy.STRICT_UNIT:
            if abs(raw_sum - 1.0) > 1e-12:
                raise WeightError(
                    f"weights sum to {raw_sum!r}, not 1 (strict policy); "
                    "use the auto-normalize policy to rescale"
                )
            norm = weights
        else:
            norm = weights / raw_sum
        if not all(isinstance(comp, ELSComponent) for comp in components):
            raise ParameterError("components must be ELSComponent instances")
        self.components = components
        self.weights = norm
        self.raw_weights = weights
        self.raw_sum = raw_sum
        self.policy = policy

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteMixture)
            and self.components == other.components
            and np.array_equal(self.raw_weights, other.raw_weights)
            and self.policy == other.policy
        )

    @property
    def support_start(self):
        return min(c.support_start for c in self.components)

    @property
    def support_breaks(self):
        """Sorted distinct component start points (the CDF's kink locations)."""
        return sorted({c.support_start for c in self.components})

    def _weighted_sum(self, x, attr):
        arr = np.asarray(x, dtype=float)
        scalar = arr.ndim == 0
        total = np.zeros(arr.shape)
        comp = np.zeros(arr.shape)
        for w, component in zip(self.weights, self.components):
            total, comp = kahan_add(total, comp, w * getattr(component, attr)(arr))
        return float(total) if scalar else total

    def cdf(self, x):
        return self._weighted_sum(x, "cdf")

    def pdf(self, x):
        return self._weighted_sum(x, "pdf")

    def sf(self, x):
        return 1.0 - self.cdf(x)

    def rhr(self, x, floor=DENOM_FLOOR):
        arr = np.asarray(x, dtype=float)
        scalar = arr.ndim == 0
        F = np.asarray(self.cdf(arr))
        if np.any(F <= floor):
            bad = np.asarray(arr)[np.asarray(F <= floor)]
            raise UndefinedPointError(
                f"mixture cdf below floor {floor} at x={bad.flat[0]}",
                x=float(bad.flat[0]),
            )
        vals = np.asarray(self.pdf(arr)) / F
        return float(vals) if scalar else vals

    def quantile(self, p, xtol=1e-10):
        lo = self.support_start
        hi = expand_upper_bracket(self.cdf, p, lo, step=max(1.0, abs(lo)))
        return bisect_nondecreasing(self.cdf, p, lo, hi, xtol=xtol)

    def pdf_at_offset(self, origin, dx):
        """Density at origin + dx, exact in the offset.

        Components starting exactly at ``origin`` are evaluated through
        their offset path; already-active components are smooth there and
        take the rounded abscissa. Components starting later contribute
        nothing (callers keep origin + dx inside one support segment).
        """
        total = 0.0
        for w, component in zip(self.weights, self.components):
            start = component.support_start
            if start == origin:
                total += w * component.pdf_at_offset(dx)
            elif start < origin:
                total += w * component.pdf(origin + dx)
        return total


@dataclass(frozen=True)
class NormalizationReport:
    integral: float
    tol: float
    passed: bool
    panels: int
    x_hi: float


def verify_normalization(mix, tol=1e-6, panel_tol=1e-9, max_depth=40):
    """Quadrature check that the mixture density integrates to one.

    Integrates the density between consecutive support breaks up to the
    1 - 1e-10 quantile. Each segment is mapped through x = a + (b-a) u^16
    so that power-law divergences at segment starts (shape alpha < 1) stay
    integrable for the Simpson rule.
    """
    if not tol > 0:
        raise ParameterError("tolerance must be positive")
    x_hi = mix.quantile(1.0 - 1e-10)
    cuts = [b for b in mix.support_breaks if b < x_hi] + [x_hi]
    total = 0.0
    panels = 0
    for a, b in zip(cuts[:-1], cuts[1:]):
        width = b - a
        g = _EDGE_POWER

        def transformed(u, a=a, width=width, g=g):
            if u <= 0.0:
                return 0.0
            return float(mix.pdf_at_offset(a, width * u**g)) * width * g * u ** (g - 1.0)

        res = adaptive_simpson(transformed, 0.0, 1.0, abs_tol=panel_tol, max_depth=max_depth)
        if not res.converged:
            raise QuadratureError(
                f"normalization quadrature did not converge on [{a}, {b}]",
                estimate=total + res.value,
            )
        total += res.value
        panels += res.panels
    return NormalizationReport(
        integral=total,
        tol=tol,
        passed=abs(total - 1.0) <= tol,
        panels=panels,
        x_hi=x_hi,
    )


@dataclass(frozen=True)
class OutlierMixtureSpec:
    """Two-block mixture data: n1 units at weight r1, n2 units at weight r2."""

    n1: int
    n2: int
    r1: float
    r2: float
    comp1: ELSComponent
    comp2: ELSComponent

    def __post_init__(self):
        for name in ("n1", "n2"):
            v = getattr(self, name)
            if not (isinstance(v, int) and v >= 1):
                raise ParameterError(f"{name} must be a positive integer, got {v!r}")
        for name in ("r1", "r2"):
            v = getattr(self, name)
            if not v > 0:
                raise ParameterError(f"{name} must be positive, got {v!r}")

    @property
    def block_weights(self):
        return (self.n1 * self.r1, self.n2 * self.r2)

    @property
    def raw_weight_sum(self):
        return math.fsum(self.block_weights)


def build_outlier_mixture(spec, policy=WeightPolicy.STRICT_UNIT):
    """Collapse an outlier spec into its two-term mixture.

    Strict policy requires n1*r1 + n2*r2 = 1; the auto-normalize escape
    hatch rescales, preserving ratio-based order verdicts.
    """
    try:
        return FiniteMixture(
            (spec.comp1, spec.comp2), spec.block_weights, policy=policy
        )
    except WeightError as exc:
        raise WeightError(
            f"outlier weights n1*r1 + n2*r2 = {spec.raw_weight_sum!r} violate the "
            f"unit-sum requirement; {exc}"
        ) from None
