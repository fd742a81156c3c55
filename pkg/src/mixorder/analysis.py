"""Grid-based verification of stochastic orders between two mixtures.

Four checks are provided: usual stochastic (pointwise survival dominance),
reversed hazard rate (CDF-ratio monotonicity with a pointwise dual check),
likelihood ratio (density-ratio monotonicity) and ageing-faster in
reversed hazard rate (RHRF-ratio monotonicity, both sign conventions
reported).

A grid pass is a semi-decision: it certifies the order on the sampled
points only. Verdicts carry the evaluated range and point count so callers
can demand refinement stability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    AuditError,
    InsufficientDomainError,
    InvalidSampleError,
    ParameterError,
)
from .numerics import DENOM_FLOOR

DEFAULT_POINTS = 2001
#: relative tolerance for monotonicity classification
DEFAULT_REL_TOL = 1e-9
#: absolute tolerance for pointwise probability dominance
DEFAULT_POINTWISE_TOL = 1e-12


class Monotonicity(str, Enum):
    NON_DECREASING = "non_decreasing"
    NON_INCREASING = "non_increasing"
    CONSTANT = "constant"
    NON_MONOTONE = "non_monotone"


class OrderKind(str, Enum):
    ST = "st"
    RH = "rh"
    LR = "lr"
    R_RH = "r_rh"


class Direction(str, Enum):
    U_LEQ_V = "UleqV"
    V_LEQ_U = "VleqU"
    BOTH = "Both"
    NEITHER = "Neither"


@dataclass(frozen=True)
class Grid:
    x_lo: float
    x_hi: float
    n_points: int = DEFAULT_POINTS
    spacing: str = "linear"

    def __post_init__(self):
        if not self.x_lo < self.x_hi:
            raise ParameterError(f"grid needs x_lo < x_hi, got [{self.x_lo}, {self.x_hi}]")
        if self.n_points < 3:
            raise ParameterError("grid needs at least 3 points")
        if self.spacing not in ("linear", "logarithmic"):
            raise ParameterError(f"unknown spacing {self.spacing!r}")
        if self.spacing == "logarithmic" and self.x_lo <= 0:
            raise ParameterError("logarithmic spacing requires x_lo > 0")

    def points(self):
        if self.spacing == "logarithmic":
            return np.geomspace(self.x_lo, self.x_hi, self.n_points)
        return np.linspace(self.x_lo, self.x_hi, self.n_points)

    def signature(self):
        return (self.x_lo, self.x_hi, self.n_points, self.spacing)


def auto_grid(u, v, n_points=DEFAULT_POINTS, quantile=1.0 - 1e-6):
    """Default evaluation window for a mixture pair.

    Starts just above the later of the two support starts and ends at the
    larger of the two upper quantiles, so heavy tails stay bounded.
    """
    lo = max(u.support_start, v.support_start)
    lo = lo + 1e-9 * (1.0 + abs(lo))
    hi = max(u.quantile(quantile), v.quantile(quantile))
    return Grid(lo, hi, n_points)


@dataclass(frozen=True)
class MonotonicityVerdict:
    classification: Monotonicity
    max_up: float
    max_down: float
    witness_up: float | None
    witness_down: float | None
    rel_tol: float
    scale: float


def classify_monotonicity(x, values, rel_tol=DEFAULT_REL_TOL):
    """Classify a sampled sequence as monotone, constant, or neither.

    Consecutive differences are compared against rel_tol * max|value|.
    Witnesses are the midpoints of the extremal up and down steps.
    """
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.shape != values.shape:
        raise ParameterError("samples must be two matching 1-d arrays")
    if x.size < 3:
        raise InsufficientDomainError(f"need at least 3 samples, got {x.size}")
    if np.any(np.diff(x) <= 0):
        raise ParameterError("sample abscissae must be strictly increasing")
    bad = ~np.isfinite(values)
    if bad.any():
        idx = int(np.argmax(bad))
        raise InvalidSampleError(
            f"non-finite sample value {values[idx]!r} at index {idx} (x={x[idx]!r})",
            index=idx,
        )
    diffs = np.diff(values)
    scale = float(np.max(np.abs(values)))
    tol = rel_tol * scale
    max_up = float(np.max(diffs, initial=0.0))
    max_down = float(-np.min(diffs, initial=0.0))
    mids = 0.5 * (x[:-1] + x[1:])
    witness_up = float(mids[int(np.argmax(diffs))]) if max_up > tol else None
    witness_down = float(mids[int(np.argmin(diffs))]) if max_down > tol else None
    up_ok = max_down <= tol  # no significant decrease
    down_ok = max_up <= tol  # no significant increase
    if up_ok and down_ok:
        cls = Monotonicity.CONSTANT
    elif up_ok:
        cls = Monotonicity.NON_DECREASING
    elif down_ok:
        cls = Monotonicity.NON_INCREASING
    else:
        cls = Monotonicity.NON_MONOTONE
    return MonotonicityVerdict(
        classification=cls,
        max_up=max_up,
        max_down=max_down,
        witness_up=witness_up,
        witness_down=witness_down,
        rel_tol=rel_tol,
        scale=scale,
    )


@dataclass(frozen=True)
class Witness:
    x: float
    value_u: float
    value_v: float


@dataclass(frozen=True)
class OrderVerdict:
    order: OrderKind
    direction: Direction
    evaluated_range: tuple
    points_used: int
    grid_signature: tuple
    pair_id: str = ""
    violation_witness: Witness | None = None
    ratio_classification: MonotonicityVerdict | None = None
    pointwise_agrees: bool | None = None
    readings: dict = field(default_factory=dict)


def _direction_from_monotone(cls):
    return {
        Monotonicity.NON_DECREASING: Direction.U_LEQ_V,
        Monotonicity.NON_INCREASING: Direction.V_LEQ_U,
        Monotonicity.CONSTANT: Direction.BOTH,
        Monotonicity.NON_MONOTONE: Direction.NEITHER,
    }[cls]


def check_usual_stochastic(u, v, grid, tol=DEFAULT_POINTWISE_TOL, pair_id=""):
    """U <=st V iff cdf_U >= cdf_V - tol at every grid point."""
    x = grid.points()
    fu = np.asarray(u.cdf(x))
    fv = np.asarray(v.cdf(x))
    u_le_v = fu >= fv - tol  # U smaller: its CDF dominates
    v_le_u = fv >= fu - tol
    holds_uv = bool(np.all(u_le_v))
    holds_vu = bool(np.all(v_le_u))
    if holds_uv and holds_vu:
        direction = Direction.BOTH
    elif holds_uv:
        direction = Direction.U_LEQ_V
    elif holds_vu:
        direction = Direction.V_LEQ_U
    else:
        direction = Direction.NEITHER
    witness = None
    if direction is Direction.NEITHER:
        i = int(np.argmax(~u_le_v))
        witness = Witness(float(x[i]), float(fu[i]), float(fv[i]))
    return OrderVerdict(
        order=OrderKind.ST,
        direction=direction,
        evaluated_range=(float(x[0]), float(x[-1])),
        points_used=int(x.size),
        grid_signature=grid.signature(),
        pair_id=pair_id,
        violation_witness=witness,
    )


def _restrict(x, *masks):
    keep = np.logical_and.reduce(masks)
    if int(np.count_nonzero(keep)) < 3:
        raise InsufficientDomainError(
            f"only {int(np.count_nonzero(keep))} usable grid points after restriction"
        )
    return keep


def check_reversed_hazard(
    u, v, grid, rel_tol=DEFAULT_REL_TOL, floor=DENOM_FLOOR, pair_id=""
):
    """Classify F_V/F_U on the part of the grid where F_U exceeds the floor.

    A nondecreasing ratio means U <=rh V. The pointwise dual (reversed
    hazard rates compared directly where both CDFs are positive) is
    evaluated as well and its agreement is recorded.
    """
    x = grid.points()
    fu = np.asarray(u.cdf(x))
    fv = np.asarray(v.cdf(x))
    keep = _restrict(x, fu > floor)
    xs = x[keep]
    ratio = fv[keep] / fu[keep]
    mono = classify_monotonicity(xs, ratio, rel_tol=rel_tol)
    direction = _direction_from_monotone(mono.classification)

    # pointwise dual: h_U <= h_V where both CDFs are usable
    both = keep & (fv > floor)
    agrees = None
    if int(np.count_nonzero(both)) >= 3:
        hu = np.asarray(u.pdf(x[both])) / fu[both]
        hv = np.asarray(v.pdf(x[both])) / fv[both]
        # pointwise-relative slack: a global scale would be inflated by
        # the divergence at a later support start and mask genuine flips
        h_tol = rel_tol * np.maximum(np.abs(hu), np.abs(hv))
        pw_uv = bool(np.all(hu <= hv + h_tol))
        pw_vu = bool(np.all(hv <= hu + h_tol))
        if pw_uv and pw_vu:
            pw_direction = Direction.BOTH
        elif pw_uv:
            pw_direction = Direction.U_LEQ_V
        elif pw_vu:
            pw_direction = Direction.V_LEQ_U
        else:
            pw_direction = Direction.NEITHER
        agrees = _directions_compatible(direction, pw_direction)
    witness = None
    if mono.classification is Monotonicity.NON_MONOTONE:
        wx = mono.witness_down if mono.witness_down is not None else mono.witness_up
        witness = Witness(float(wx), float(u.cdf(wx)), float(v.cdf(wx)))
    return OrderVerdict(
        order=OrderKind.RH,
        direction=direction,
        evaluated_range=(float(xs[0]), float(xs[-1])),
        points_used=int(xs.size),
        grid_signature=grid.signature(),
        pair_id=pair_id,
        violation_witness=witness,
        ratio_classification=mono,
        pointwise_agrees=agrees,
    )


def _directions_compatible(a, b):
    """The ratio and pointwise readings agree up to ties."""
    if a == b:
        return True
    return Direction.BOTH in (a, b) and Direction.NEITHER not in (a, b)


def check_likelihood_ratio(
    u, v, grid, rel_tol=DEFAULT_REL_TOL, floor=DENOM_FLOOR, pair_id=""
):
    """Classify f_V/f_U where f_U exceeds the floor; nondecreasing means U <=lr V."""
    x = grid.points()
    fu = np.asarray(u.pdf(x))
    fv = np.asarray(v.pdf(x))
    keep = _restrict(x, fu > floor, np.isfinite(fu), np.isfinite(fv))
    xs = x[keep]
    ratio = fv[keep] / fu[keep]
    mono = classify_monotonicity(xs, ratio, rel_tol=rel_tol)
    direction = _direction_from_monotone(mono.classification)
    witness = None
    if mono.classification is Monotonicity.NON_MONOTONE:
        wx = mono.witness_down if mono.witness_down is not None else mono.witness_up
        witness = Witness(float(wx), float(u.pdf(wx)), float(v.pdf(wx)))
    return OrderVerdict(
        order=OrderKind.LR,
        direction=direction,
        evaluated_range=(float(xs[0]), float(xs[-1])),
        points_used=int(xs.size),
        grid_signature=grid.signature(),
        pair_id=pair_id,
        violation_witness=witness,
        ratio_classification=mono,
    )


def check_aging_faster_rhr(
    u, v, grid, rel_tol=DEFAULT_REL_TOL, floor=DENOM_FLOOR, pair_id=""
):
    """Classify the RHRF ratio h_U/h_V where both CDFs and PDFs are usable.

    The source definition declares U ages faster than V when the ratio is
    increasing, but the multiple-outlier theorem and its worked example
    treat a decreasing ratio as the validated conclusion. Both readings
    are recorded; ``direction`` follows the definition.
    """
    x = grid.points()
    fu = np.asarray(u.cdf(x))
    fv = np.asarray(v.cdf(x))
    du = np.asarray(u.pdf(x))
    dv = np.asarray(v.pdf(x))
    keep = _restrict(
        x, fu > floor, fv > floor, dv > floor, np.isfinite(du), np.isfinite(dv)
    )
    xs = x[keep]
    ratio = (du[keep] / fu[keep]) / (dv[keep] / fv[keep])
    mono = classify_monotonicity(xs, ratio, rel_tol=rel_tol)
    direction = _direction_from_monotone(mono.classification)
    readings = {
        "definition": f"ratio increasing means U ages faster (direction {direction.value})",
        "theorem_usage": "ratio decreasing is the validated multiple-outlier conclusion",
        "ratio_classification": mono.classification.value,
    }
    witness = None
    if mono.classification is Monotonicity.NON_MONOTONE:
        wx = mono.witness_down if mono.witness_down is not None else mono.witness_up
        witness = Witness(float(wx), float(u.rhr(wx)), float(v.rhr(wx)))
    return OrderVerdict(
        order=OrderKind.R_RH,
        direction=direction,
        evaluated_range=(float(xs[0]), float(xs[-1])),
        points_used=int(xs.size),
        grid_signature=grid.signature(),
        pair_id=pair_id,
        violation_witness=witness,
        ratio_classification=mono,
        readings=readings,
    )


@dataclass(frozen=True)
class ImplicationAudit:
    consistent: bool
    failures: tuple
    detail: str


def _holds(verdict, direction):
    return verdict.direction in (direction, Direction.BOTH)


def implication_audit(st, rh, lr):
    """Check the lr => rh => st chain across three verdicts of one pair.

    Audited in the UleqV direction, the orientation every comparison here
    uses: the first mixture's support extends at least as far left as the
    second's, which is also the premise the chain theorem needs. The
    chain only constrains downward: a stronger order holding while a
    weaker one fails is a numerical inconsistency worth surfacing, never
    silently repaired.
    """
    for verdict, kind in ((st, OrderKind.ST), (rh, OrderKind.RH), (lr, OrderKind.LR)):
        if verdict.order is not kind:
            raise AuditError(f"expected a {kind.value} verdict, got {verdict.order.value}")
    if not (st.pair_id == rh.pair_id == lr.pair_id):
        raise AuditError(
            f"verdicts come from different pairs: "
            f"{st.pair_id!r}, {rh.pair_id!r}, {lr.pair_id!r}"
        )
    if not (st.grid_signature == rh.grid_signature == lr.grid_signature):
        raise AuditError("verdicts come from different grids")
    failures = []
    direction = Direction.U_LEQ_V
    if _holds(lr, direction) and not _holds(rh, direction):
        failures.append(f"lr {direction.value} holds but rh does not")
    if _holds(rh, direction) and not _holds(st, direction):
        failures.append(f"rh {direction.value} holds but st does not")
    return ImplicationAudit(
        consistent=not failures,
        failures=tuple(failures),
        detail="; ".join(failures) if failures else "chain consistent",
    )


CHECKERS = {
    OrderKind.ST: check_usual_stochastic,
    OrderKind.RH: check_reversed_hazard,
    OrderKind.LR: check_likelihood_ratio,
    OrderKind.R_RH: check_aging_faster_rhr,
}


def check_order(kind, u, v, grid, pair_id="", **kwargs):
    """Dispatch to the checker for ``kind``."""
    return CHECKERS[OrderKind(kind)](u, v, grid, pair_id=pair_id, **kwargs)
