"""Mechanical evaluation of the sufficient conditions behind each theorem.

Every hypothesis becomes one named pass/fail item; a report never claims
more than "all hypotheses hold numerically". Monotonicity hypotheses on
the baseline (t*rhr decreasing, density log-slope behaviour) are sampled
on a grid from just above the support bound to the 1 - 1e-6 quantile and
recorded as numerically supported, not proved.

Failed hypotheses are meaningful output, so vector-shape problems inside
a hypothesis (for instance majorization of unequal-sum vectors) mark the
item failed instead of raising. Only applying an evaluator to mixtures of
the wrong shape raises ``TheoremShapeError``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .analysis import (
    DEFAULT_POINTS,
    Direction,
    Grid,
    Monotonicity,
    OrderKind,
    classify_monotonicity,
)
from .errors import TheoremShapeError

MAJORIZATION_TOL = 1e-12
_SCALAR_TOL = 1e-12


class Cone(str, Enum):
    E_PLUS = "E_plus"  # 0 <= v1 <= ... <= vn
    D_PLUS = "D_plus"  # v1 >= ... >= vn >= 0


def check_cone_membership(v, cone):
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        return False
    if np.any(v < 0.0):
        return False
    diffs = np.diff(v)
    if Cone(cone) is Cone.E_PLUS:
        return bool(np.all(diffs >= 0.0))
    return bool(np.all(diffs <= 0.0))


@dataclass(frozen=True)
class MajorizationResult:
    x_majorized_by_y: bool
    y_majorized_by_x: bool
    prefix_x: tuple
    prefix_y: tuple
    sums_equal: bool


def check_majorization(x, y, tol=MAJORIZATION_TOL):
    """Compare sorted prefix sums of two equal-length vectors.

    x is majorized by y when, after sorting both increasingly, every
    proper prefix sum of x is at least that of y and the totals agree.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1 or x.size < 1:
        raise TheoremShapeError("majorization needs two equal-length vectors")
    px = np.cumsum(np.sort(x))
    py = np.cumsum(np.sort(y))
    sums_equal = abs(px[-1] - py[-1]) <= tol
    x_by_y = sums_equal and bool(np.all(px[:-1] >= py[:-1] - tol))
    y_by_x = sums_equal and bool(np.all(py[:-1] >= px[:-1] - tol))
    return MajorizationResult(
        x_majorized_by_y=x_by_y,
        y_majorized_by_x=y_by_x,
        prefix_x=tuple(px.tolist()),
        prefix_y=tuple(py.tolist()),
        sums_equal=sums_equal,
    )


def majorizes(x, y, tol=MAJORIZATION_TOL):
    """True when x majorizes y (y is majorized by x)."""
    return check_majorization(x, y, tol=tol).y_majorized_by_x


def _baseline_grid(model, n_points=DEFAULT_POINTS, quantile=1.0 - 1e-6):
    c = model.support_low
    # keep the low end where F is representable, else t*f/F is undefined
    lo = max(c + 1e-9 * (1.0 + abs(c)), model.quantile(1e-9))
    hi = model.quantile(quantile)
    return Grid(lo, hi, n_points)


def check_t_rhr_decreasing(model, grid=None, rel_tol=1e-9):
    """Classify t * f(t)/F(t) on a grid of the baseline support."""
    grid = grid or _baseline_grid(model)
    t = grid.points()
    return classify_monotonicity(t, t * np.asarray(model.rhr(t)), rel_tol=rel_tol)


def check_t_logpdf_slope_decreasing(model, grid=None, rel_tol=1e-9):
    """Classify t * f'(t)/f(t) on a grid of the baseline support."""
    grid = grid or _baseline_grid(model)
    t = grid.points()
    f = np.asarray(model.pdf(t))
    return classify_monotonicity(
        t, t * np.asarray(model.pdf_prime(t)) / f, rel_tol=rel_tol
    )


def check_logpdf_slope_increasing(model, grid=None, rel_tol=1e-9):
    """Classify f'(t)/f(t) on a grid of the baseline support."""
    grid = grid or _baseline_grid(model)
    t = grid.points()
    f = np.asarray(model.pdf(t))
    return classify_monotonicity(t, np.asarray(model.pdf_prime(t)) / f, rel_tol=rel_tol)


def _is_nonincreasing(verdict):
    return verdict.classification in (Monotonicity.NON_INCREASING, Monotonicity.CONSTANT)


def _is_nondecreasing(verdict):
    return verdict.classification in (Monotonicity.NON_DECREASING, Monotonicity.CONSTANT)


@dataclass(frozen=True)
class ConditionItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ConditionReport:
    theorem_id: str
    items: tuple
    predicted_order: OrderKind
    predicted_direction: Direction
    notes: dict

    @property
    def all_pass(self):
        return all(item.passed for item in self.items)

    def item(self, name):
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)


def _vectors(mixture):
    alphas = np.array([c.alpha for c in mixture.components])
    sigmas = np.array([c.sigma for c in mixture.components])
    lams = np.array([c.lam for c in mixture.components])
    return alphas, sigmas, lams


def _shared_baseline(u, v):
    models = {c.baseline for c in u.components} | {c.baseline for c in v.components}
    if len(models) != 1:
        raise TheoremShapeError(
            "theorem evaluators require one common baseline across both mixtures"
        )
    return next(iter(models))


def _common_scalar(values, what):
    values = np.asarray(values, dtype=float)
    if np.max(values) - np.min(values) > _SCALAR_TOL:
        raise TheoremShapeError(f"{what} must be common across components, got {values.tolist()}")
    return float(values[0])


def _fmt_vec(v):
    return "(" + ", ".join(f"{x:g}" for x in v) + ")"


def eval_theorem_3_1(u, v):
    """Componentwise-dominance conditions for the usual stochastic order.

    Requires common weights; the (sigma, lambda) vectors of both mixtures
    must share a cone, either all nondecreasing-nonnegative or all
    nonincreasing-nonnegative.
    """
    baseline = _shared_baseline(u, v)
    if len(u) != len(v):
        raise TheoremShapeError("mixtures must have equal length")
    alphas, sigmas, lams = _vectors(u)
    betas, mus, thetas = _vectors(v)
    common_w = u.weights.shape == v.weights.shape and bool(
        np.all(np.abs(u.weights - v.weights) <= _SCALAR_TOL)
    )
    e_branch = all(
        check_cone_membership(vec, Cone.E_PLUS) for vec in (sigmas, lams, mus, thetas)
    )
    d_branch = all(
        check_cone_membership(vec, Cone.D_PLUS) for vec in (sigmas, lams, mus, thetas)
    )
    branch = "E_plus" if e_branch else ("D_plus" if d_branch else "none")
    items = (
        ConditionItem(
            "common_weights",
            common_w,
            f"r={_fmt_vec(u.weights)} vs s={_fmt_vec(v.weights)}",
        ),
        ConditionItem(
            "location_scale_cone",
            e_branch or d_branch,
            f"sigma,lambda,mu,theta jointly in {branch}",
        ),
        ConditionItem(
            "alpha_leq_beta",
            bool(np.all(alphas <= betas)),
            f"alpha={_fmt_vec(alphas)} beta={_fmt_vec(betas)}",
        ),
        ConditionItem(
            "sigma_leq_mu",
            bool(np.all(sigmas <= mus)),
            f"sigma={_fmt_vec(sigmas)} mu={_fmt_vec(mus)}",
        ),
        ConditionItem(
            "lambda_leq_theta",
            bool(np.all(lams <= thetas)),
            f"lambda={_fmt_vec(lams)} theta={_fmt_vec(thetas)}",
        ),
    )
    return ConditionReport(
        theorem_id="T3.1",
        items=items,
        predicted_order=OrderKind.ST,
        predicted_direction=Direction.U_LEQ_V,
        notes={"cone_branch": branch, "baseline": baseline.family},
    )


def eval_theorem_3_2(u, v, grid=None):
    """Block-separation conditions (max of U's vector below min of V's) for
    the reversed hazard rate order, valid where t*rhr(t) decreases."""
    baseline = _shared_baseline(u, v)
    alphas, sigmas, lams = _vectors(u)
    betas, mus, thetas = _vectors(v)
    rhr_mono = check_t_rhr_decreasing(baseline, grid)
    m1 = float(min(c.support_start for c in u.components))
    m2 = float(min(c.support_start for c in v.components))
    items = (
        ConditionItem(
            "max_alpha_leq_min_beta",
            bool(np.max(alphas) <= np.min(betas)),
            f"max alpha={np.max(alphas):g}, min beta={np.min(betas):g}",
        ),
        ConditionItem(
            "max_sigma_leq_min_mu",
            bool(np.max(sigmas) <= np.min(mus)),
            f"max sigma={np.max(sigmas):g}, min mu={np.min(mus):g}",
        ),
        ConditionItem(
            "max_lambda_leq_min_theta",
            bool(np.max(lams) <= np.min(thetas)),
            f"max lambda={np.max(lams):g}, min theta={np.min(thetas):g}",
        ),
        ConditionItem(
            "t_rhr_decreasing",
            _is_nonincreasing(rhr_mono),
            f"t*rhr classified {rhr_mono.classification.value} (numerically supported)",
        ),
    )
    return ConditionReport(
        theorem_id="T3.2",
        items=items,
        predicted_order=OrderKind.RH,
        predicted_direction=Direction.U_LEQ_V,
        notes={"restriction_m1": m1, "m2": m2, "baseline": baseline.family},
    )


def eval_theorem_3_3(u, v):
    """Shape-separation condition for the likelihood ratio order under a
    common location and scale shared by every component of both mixtures."""
    baseline = _shared_baseline(u, v)
    alphas, sigmas, lams = _vectors(u)
    betas, mus, thetas = _vectors(v)
    sigma = _common_scalar(np.concatenate([sigmas, mus]), "location")
    lam = _common_scalar(np.concatenate([lams, thetas]), "scale")
    items = (
        ConditionItem(
            "common_location_scale",
            True,
            f"sigma={sigma:g}, lambda={lam:g} shared by all components",
        ),
        ConditionItem(
            "max_alpha_leq_min_beta",
            bool(np.max(alphas) <= np.min(betas)),
            f"max alpha={np.max(alphas):g}, min beta={np.min(betas):g}",
        ),
    )
    support = sigma + baseline.support_low * lam
    return ConditionReport(
        theorem_id="T3.3",
        items=items,
        predicted_order=OrderKind.LR,
        predicted_direction=Direction.U_LEQ_V,
        notes={"restriction": support, "baseline": baseline.family},
    )


def eval_theorem_3_4(u, v):
    """Majorization conditions (weights and shapes) for the usual
    stochastic order with per-mixture scalar location and scale."""
    baseline = _shared_baseline(u, v)
    alphas, sigmas, lams = _vectors(u)
    betas, mus, thetas = _vectors(v)
    sigma = _common_scalar(sigmas, "location of U")
    mu = _common_scalar(mus, "location of V")
    lam = _common_scalar(lams, "scale of U")
    theta = _common_scalar(thetas, "scale of V")
    r = u.weights
    s = v.weights
    maj_w = check_majorization(s, r)  # r majorizes s
    maj_a = check_majorization(betas, alphas)  # alpha majorizes beta
    items = (
        ConditionItem("weights_in_D_plus", check_cone_membership(r, Cone.D_PLUS)
                      and check_cone_membership(s, Cone.D_PLUS),
                      f"r={_fmt_vec(r)}, s={_fmt_vec(s)}"),
        ConditionItem("shapes_in_E_plus", check_cone_membership(alphas, Cone.E_PLUS)
                      and check_cone_membership(betas, Cone.E_PLUS),
                      f"alpha={_fmt_vec(alphas)}, beta={_fmt_vec(betas)}"),
        ConditionItem("r_majorizes_s", maj_w.x_majorized_by_y,
                      f"prefix sums {maj_w.prefix_y} vs {maj_w.prefix_x}"),
        ConditionItem("alpha_majorizes_beta", maj_a.x_majorized_by_y,
                      "sums differ" if not maj_a.sums_equal
                      else f"prefix sums {maj_a.prefix_y} vs {maj_a.prefix_x}"),
        ConditionItem("sigma_leq_mu", sigma <= mu, f"sigma={sigma:g}, mu={mu:g}"),
        ConditionItem("lambda_leq_theta", lam <= theta, f"lambda={lam:g}, theta={theta:g}"),
    )
    return ConditionReport(
        theorem_id="T3.4",
        items=items,
        predicted_order=OrderKind.ST,
        predicted_direction=Direction.U_LEQ_V,
        notes={"baseline": baseline.family},
    )


def _component_pair(spec):
    return (spec.comp1, spec.comp2)


def _outlier_common(spec_u, spec_v):
    if _component_pair(spec_u) != _component_pair(spec_v):
        return False
    return True


def _outlier_products(spec_u, spec_v):
    """Left and right sides n1*r1*n2'*s2 vs n2*r2*n1'*s1 of the weight
    product condition, from the raw per-unit proportions."""
    lhs = spec_u.n1 * spec_u.r1 * spec_v.n2 * spec_v.r2
    rhs = spec_u.n2 * spec_u.r2 * spec_v.n1 * spec_v.r1
    return float(lhs), float(rhs)


def eval_theorem_4_1(spec_u, spec_v, grid=None):
    """Outlier-mixture conditions for the reversed hazard rate order.

    Ascending parameter pairs require the product inequality lhs >= rhs;
    descending pairs flip it. Both product sides are reported.
    """
    shared = _outlier_common(spec_u, spec_v)
    if not shared:
        raise TheoremShapeError(
            "outlier comparison requires identical component pairs in both mixtures"
        )
    comp1, comp2 = _component_pair(spec_u)
    baseline = _shared_baseline_pair(comp1, comp2)
    alphas = (comp1.alpha, comp2.alpha)
    sigmas = (comp1.sigma, comp2.sigma)
    lams = (comp1.lam, comp2.lam)
    e_branch = all(check_cone_membership(v, Cone.E_PLUS) for v in (alphas, lams, sigmas))
    d_branch = all(check_cone_membership(v, Cone.D_PLUS) for v in (alphas, lams, sigmas))
    lhs, rhs = _outlier_products(spec_u, spec_v)
    if e_branch:
        product_ok, rel = lhs >= rhs, ">="
        branch = "E_plus"
    elif d_branch:
        product_ok, rel = lhs <= rhs, "<="
        branch = "D_plus"
    else:
        product_ok, rel = lhs >= rhs, ">="
        branch = "none"
    rhr_mono = check_t_rhr_decreasing(baseline, grid)
    items = (
        ConditionItem("shared_components", True, "component pairs are distribution-equal"),
        ConditionItem(
            "parameter_cones",
            e_branch or d_branch,
            f"alpha={_fmt_vec(alphas)}, lambda={_fmt_vec(lams)}, "
            f"sigma={_fmt_vec(sigmas)} jointly in {branch}",
        ),
        ConditionItem(
            "t_rhr_decreasing",
            _is_nonincreasing(rhr_mono),
            f"t*rhr classified {rhr_mono.classification.value} (numerically supported)",
        ),
        ConditionItem(
            "weight_product",
            product_ok,
            f"n1*r1*n2'*s2 = {lhs:.17g} {rel} {rhs:.17g} = n2*r2*n1'*s1",
        ),
    )
    return ConditionReport(
        theorem_id="T4.1",
        items=items,
        predicted_order=OrderKind.RH,
        predicted_direction=Direction.U_LEQ_V,
        notes={
            "product_lhs": lhs,
            "product_rhs": rhs,
            "cone_branch": branch,
            "baseline": baseline.family,
        },
    )


def eval_theorem_4_2(spec_u, spec_v, grid=None):
    """Outlier-mixture conditions for the (reversed-direction) likelihood
    ratio order: ascending pairs, shapes at least one, product <=."""
    if not _outlier_common(spec_u, spec_v):
        raise TheoremShapeError(
            "outlier comparison requires identical component pairs in both mixtures"
        )
    comp1, comp2 = _component_pair(spec_u)
    baseline = _shared_baseline_pair(comp1, comp2)
    alphas = (comp1.alpha, comp2.alpha)
    sigmas = (comp1.sigma, comp2.sigma)
    lams = (comp1.lam, comp2.lam)
    lhs, rhs = _outlier_products(spec_u, spec_v)
    rhr_mono = check_t_rhr_decreasing(baseline, grid)
    slope_mono = check_t_logpdf_slope_decreasing(baseline, grid)
    items = (
        ConditionItem("shared_components", True, "component pairs are distribution-equal"),
        ConditionItem(
            "parameter_cones",
            all(check_cone_membership(v, Cone.E_PLUS) for v in (alphas, lams, sigmas)),
            f"alpha={_fmt_vec(alphas)}, lambda={_fmt_vec(lams)}, sigma={_fmt_vec(sigmas)}",
        ),
        ConditionItem(
            "alpha_at_least_one",
            bool(min(alphas) >= 1.0),
            f"alpha={_fmt_vec(alphas)}",
        ),
        ConditionItem(
            "weight_product",
            lhs <= rhs,
            f"n1*r1*n2'*s2 = {lhs:.17g} <= {rhs:.17g} = n2*r2*n1'*s1",
        ),
        ConditionItem(
            "t_rhr_decreasing",
            _is_nonincreasing(rhr_mono),
            f"t*rhr classified {rhr_mono.classification.value} (numerically supported)",
        ),
        ConditionItem(
            "t_logpdf_slope_decreasing",
            _is_nonincreasing(slope_mono),
            f"t*f'/f classified {slope_mono.classification.value} (numerically supported)",
        ),
    )
    return ConditionReport(
        theorem_id="T4.2",
        items=items,
        predicted_order=OrderKind.LR,
        predicted_direction=Direction.V_LEQ_U,
        notes={"product_lhs": lhs, "product_rhs": rhs, "baseline": baseline.family},
    )


def eval_theorem_4_3(spec_u, spec_v, grid=None):
    """Ageing-faster conditions: zero support bound, one shared shape in
    (0, 1], U located above V, U's scales above V's."""
    comp_u = _component_pair(spec_u)
    comp_v = _component_pair(spec_v)
    baseline = _shared_baseline_pair(*comp_u, *comp_v)
    alphas = [c.alpha for c in comp_u + comp_v]
    alpha = _common_scalar(alphas, "shape")
    sigma = _common_scalar([c.sigma for c in comp_u], "location of U")
    mu = _common_scalar([c.sigma for c in comp_v], "location of V")
    lams = tuple(c.lam for c in comp_u)
    thetas = tuple(c.lam for c in comp_v)
    rhr_mono = check_t_rhr_decreasing(baseline, grid)
    slope_mono = check_logpdf_slope_increasing(baseline, grid)
    items = (
        ConditionItem(
            "support_bound_zero",
            baseline.support_low == 0.0,
            f"c={baseline.support_low:g}",
        ),
        ConditionItem("alpha_in_unit_interval", 0.0 < alpha <= 1.0, f"alpha={alpha:g}"),
        ConditionItem("sigma_geq_mu", sigma >= mu, f"sigma={sigma:g}, mu={mu:g}"),
        ConditionItem(
            "min_lambda_geq_max_theta",
            min(lams) >= max(thetas),
            f"lambda={_fmt_vec(lams)}, theta={_fmt_vec(thetas)}",
        ),
        ConditionItem(
            "logpdf_slope_increasing",
            _is_nondecreasing(slope_mono),
            f"f'/f classified {slope_mono.classification.value} (numerically supported)",
        ),
        ConditionItem(
            "t_rhr_decreasing",
            _is_nonincreasing(rhr_mono),
            f"t*rhr classified {rhr_mono.classification.value} (numerically supported)",
        ),
    )
    return ConditionReport(
        theorem_id="T4.3",
        items=items,
        predicted_order=OrderKind.R_RH,
        predicted_direction=Direction.V_LEQ_U,
        notes={
            "baseline": baseline.family,
            "direction_caveat": (
                "predicted conclusion is a nonincreasing RHRF ratio h_U/h_V; the "
                "defining convention reads an increasing ratio as U ageing faster, "
                "so the direction label follows that reading with this caveat"
            ),
            "predicted_ratio": Monotonicity.NON_INCREASING.value,
        },
    )


def _shared_baseline_pair(*components):
    models = {c.baseline for c in components}
    if len(models) != 1:
        raise TheoremShapeError("components must share one baseline model")
    return next(iter(models))


THEOREM_EVALUATORS = {
    "T3.1": eval_theorem_3_1,
    "T3.2": eval_theorem_3_2,
    "T3.3": eval_theorem_3_3,
    "T3.4": eval_theorem_3_4,
    "T4.1": eval_theorem_4_1,
    "T4.2": eval_theorem_4_2,
    "T4.3": eval_theorem_4_3,
}

#: theorems whose evaluators take outlier specs instead of mixtures
OUTLIER_THEOREMS = {"T4.1", "T4.2", "T4.3"}
