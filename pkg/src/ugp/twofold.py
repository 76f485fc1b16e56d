"""Two-fold uncertain variables and their reduction to single-fold UDs.

A two-fold variable is one whose distribution value at each point is
itself uncertain: at every x strictly inside a ramp of the base family
the distribution level is a linear UD over a band [A(x), B(x)] whose
width is controlled by the left/right uncertainty degrees theta_l and
theta_r.  At the slope-change abscissas of the base family the band
collapses to the plateau constant, and outside the support the value is
the crisp 0 or 1.

Reduction collapses the band at each x to a single level using one of
three criteria applied to the linear band:

* optimistic at level alpha:   alpha*A + (1-alpha)*B
* pessimistic at level alpha:  (1-alpha)*A + alpha*B
* expected:                    (A + B) / 2

All three produce ``base(x) - k * band_halfwidth_term(x)`` with a single
scalar multiplier k, so the reduced distribution is an exact piecewise
object: the quadratic ramps split where the band-width minimum switches
branch (at a + (b-a)/sqrt(2) style points), the affine ramp of a
trapezoid splits at (b+c)/2.  Since the band width vanishes at the
plateau abscissas, every reduced distribution is continuous and, for
admissible alpha, strictly increasing on its support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import (
    AffineSegment,
    ConstantSegment,
    PiecewiseDistribution,
    QuadraticSegment,
    Segment,
    TrapezoidalDistribution,
    TriangularDistribution,
)
from .errors import AlphaOutOfRange, YOutOfRange

__all__ = [
    "ReductionCriterion",
    "TwoFoldVariable",
    "TwoFoldSurfacePoint",
    "surface_at",
    "twofold_cdf",
    "reduce_twofold",
    "reduced_inverse",
    "curve_samples",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ReductionCriterion:
    """Reduction rule: optimistic(alpha), pessimistic(alpha) or expected."""

    kind: str
    alpha: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("optimistic", "pessimistic", "expected"):
            raise ValueError(f"unknown reduction kind {self.kind!r}")
        if self.kind == "expected":
            if self.alpha is not None:
                raise ValueError("expected reduction takes no alpha")
        else:
            if self.alpha is None or not (0.0 < self.alpha < 1.0):
                raise AlphaOutOfRange(
                    f"alpha must lie strictly inside (0, 1), got {self.alpha!r}"
                )

    @classmethod
    def optimistic(cls, alpha: float) -> "ReductionCriterion":
        return cls("optimistic", alpha)

    @classmethod
    def pessimistic(cls, alpha: float) -> "ReductionCriterion":
        return cls("pessimistic", alpha)

    @classmethod
    def expected(cls) -> "ReductionCriterion":
        return cls("expected")

    def multiplier(self, theta_l: float, theta_r: float) -> float:
        """Scalar k such that the reduced level is base - k * band_term."""
        if self.kind == "optimistic":
            return self.alpha * theta_l - (1.0 - self.alpha) * theta_r
        if self.kind == "pessimistic":
            return (1.0 - self.alpha) * theta_l - self.alpha * theta_r
        return (theta_l - theta_r) / 2.0


@dataclass(frozen=True)
class TwoFoldVariable:
    """Triangular or trapezoidal two-fold uncertain variable.

    ``params`` is (a, b, c) or (a, b, c, d), strictly increasing;
    theta_l and theta_r in [0, 1] scale the downward/upward half-widths
    of the per-x distribution band.  theta_l = theta_r = 0 collapses the
    band everywhere and the variable degenerates to its base family.
    """

    family: str  # "triangular" | "trapezoidal"
    params: tuple[float, ...]
    theta_l: float
    theta_r: float

    def __post_init__(self) -> None:
        expected_len = {"triangular": 3, "trapezoidal": 4}.get(self.family)
        if expected_len is None:
            raise ValueError(f"unknown family {self.family!r}")
        if len(self.params) != expected_len:
            raise ValueError(
                f"{self.family} family takes {expected_len} parameters, "
                f"got {len(self.params)}"
            )
        for left, right in zip(self.params, self.params[1:]):
            if not left < right:
                raise ValueError(
                    f"family parameters must be strictly increasing, got {self.params}"
                )
        for name, theta in (("theta_l", self.theta_l), ("theta_r", self.theta_r)):
            if not 0.0 <= theta <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {theta}")

    @classmethod
    def triangular(
        cls, a: float, b: float, c: float, theta_l: float, theta_r: float
    ) -> "TwoFoldVariable":
        return cls("triangular", (a, b, c), theta_l, theta_r)

    @classmethod
    def trapezoidal(
        cls, a: float, b: float, c: float, d: float, theta_l: float, theta_r: float
    ) -> "TwoFoldVariable":
        return cls("trapezoidal", (a, b, c, d), theta_l, theta_r)

    @property
    def support(self) -> tuple[float, float]:
        return self.params[0], self.params[-1]

    def base_distribution(self) -> TriangularDistribution | TrapezoidalDistribution:
        if self.family == "triangular":
            return TriangularDistribution(*self.params)
        return TrapezoidalDistribution(*self.params)


@dataclass(frozen=True)
class TwoFoldSurfacePoint:
    """Band (or crisp constant) of distribution levels at a fixed abscissa."""

    x: float
    kind: str  # "constant" | "band"
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if self.kind not in ("constant", "band"):
            raise ValueError(f"unknown envelope kind {self.kind!r}")
        if not 0.0 <= self.lower <= self.upper <= 1.0:
            raise ValueError(
                f"envelope must satisfy 0 <= lower <= upper <= 1, "
                f"got ({self.lower}, {self.upper})"
            )

    @property
    def value(self) -> float:
        if self.kind != "constant":
            raise ValueError("band envelopes carry no single value")
        return self.lower


def _constant(x: float, v: float) -> TwoFoldSurfacePoint:
    return TwoFoldSurfacePoint(x, "constant", v, v)


def _band(x: float, base: float, halfterm: float, tl: float, tr: float) -> TwoFoldSurfacePoint:
    return TwoFoldSurfacePoint(x, "band", base - tl * halfterm, base + tr * halfterm)


def surface_at(tf: TwoFoldVariable, x: float) -> TwoFoldSurfacePoint:
    """Envelope of distribution levels at x.

    Strictly inside a ramp the level is a linear band around the base
    family's value, with half-width theta * min(distance to the ramp's
    bottom level, distance to the ramp's top level).  At the support
    boundaries and slope-change abscissas the level is a crisp constant.
    """
    tl, tr = tf.theta_l, tf.theta_r
    if tf.family == "triangular":
        a, b, c = tf.params
        if x <= a:
            return _constant(x, 0.0)
        if x >= c:
            return _constant(x, 1.0)
        plateau = (b - a) / (c - a)
        if x == b:
            return _constant(x, plateau)
        if x < b:
            q = (x - a) ** 2 / ((b - a) * (c - a))
            return _band(x, q, min(q, plateau - q), tl, tr)
        r = (c - x) ** 2 / ((c - a) * (c - b))
        top = (c - b) / (c - a)
        return _band(x, 1.0 - r, min(top - r, r), tl, tr)

    a, b, c, d = tf.params
    s = d + c - a - b
    if x <= a:
        return _constant(x, 0.0)
    if x >= d:
        return _constant(x, 1.0)
    plateau_b = (b - a) / s
    plateau_c = (2.0 * c - a - b) / s
    if x == b:
        return _constant(x, plateau_b)
    if x == c:
        return _constant(x, plateau_c)
    if x < b:
        q = (x - a) ** 2 / (s * (b - a))
        return _band(x, q, min(q, plateau_b - q), tl, tr)
    if x < c:
        m = (2.0 * x - a - b) / s
        return _band(x, m, min(m - plateau_b, plateau_c - m), tl, tr)
    r = (d - x) ** 2 / (s * (d - c))
    top = (d - c) / s
    return _band(x, 1.0 - r, min(top - r, r), tl, tr)


def twofold_cdf(tf: TwoFoldVariable, x: float, y: float) -> float:
    """Two-fold distribution surface: the measure that the level at x is <= y.

    Inside a band this is the linear ramp of the band; at plateau
    abscissas the crisp plateau constant is returned for every y (the
    plateau convention of the surface definition).
    """
    if not 0.0 <= y <= 1.0:
        raise YOutOfRange(f"y must lie in [0, 1], got {y!r}")
    point = surface_at(tf, x)
    if point.kind == "constant":
        return point.value
    lo, hi = point.lower, point.upper
    if hi == lo:
        return 1.0 if y >= hi else 0.0
    if y <= lo:
        return 0.0
    if y >= hi:
        return 1.0
    return (y - lo) / (hi - lo)


def _quad(offset: float, curvature: float, center: float) -> Segment:
    if curvature == 0.0:
        return ConstantSegment(offset)
    return QuadraticSegment(offset, curvature, center)


def _affine(intercept: float, slope: float) -> Segment:
    if slope == 0.0:
        return ConstantSegment(intercept)
    return AffineSegment(intercept, slope)


def reduce_twofold(
    tf: TwoFoldVariable, criterion: ReductionCriterion
) -> PiecewiseDistribution:
    """Collapse a two-fold variable to its reduced single-fold distribution.

    The result is exact: reduced(x) = base(x) - k * band_term(x) with
    k = criterion.multiplier(theta_l, theta_r), materialized as segment
    descriptors.  Interior split points sit where the band-width minimum
    changes branch: at a + (b-a)/sqrt(2) and c - (c-b)/sqrt(2) for a
    triangular variable; a trapezoidal variable adds (b+c)/2 and
    d - (d-c)/sqrt(2).
    """
    k = criterion.multiplier(tf.theta_l, tf.theta_r)
    if tf.family == "triangular":
        a, b, c = tf.params
        up = (b - a) * (c - a)
        down = (c - a) * (c - b)
        plateau = (b - a) / (c - a)
        top = (c - b) / (c - a)
        m1 = a + (b - a) / _SQRT2
        m2 = c - (c - b) / _SQRT2
        return PiecewiseDistribution(
            (a, m1, b, m2, c),
            (
                _quad(0.0, (1.0 - k) / up, a),
                _quad(-k * plateau, (1.0 + k) / up, a),
                _quad(1.0 - k * top, -(1.0 - k) / down, c),
                _quad(1.0, -(1.0 + k) / down, c),
            ),
        )

    a, b, c, d = tf.params
    s = d + c - a - b
    up = s * (b - a)
    down = s * (d - c)
    plateau_b = (b - a) / s
    plateau_c = (2.0 * c - a - b) / s
    top = (d - c) / s
    m1 = a + (b - a) / _SQRT2
    mid = (b + c) / 2.0
    m3 = d - (d - c) / _SQRT2
    return PiecewiseDistribution(
        (a, m1, b, mid, c, m3, d),
        (
            _quad(0.0, (1.0 - k) / up, a),
            _quad(-k * plateau_b, (1.0 + k) / up, a),
            _affine(k * plateau_b - (1.0 - k) * (a + b) / s, 2.0 * (1.0 - k) / s),
            _affine(-k * plateau_c - (1.0 + k) * (a + b) / s, 2.0 * (1.0 + k) / s),
            _quad(1.0 - k * top, -(1.0 - k) / down, d),
            _quad(1.0, -(1.0 + k) / down, d),
        ),
    )


def reduced_inverse(
    tf: TwoFoldVariable, criterion: ReductionCriterion, gamma: float
) -> float:
    """Inverse of the reduced distribution at gamma in (0, 1)."""
    return reduce_twofold(tf, criterion).inverse(gamma)


def curve_samples(
    tf: TwoFoldVariable,
    criteria: list[ReductionCriterion],
    samples: int = 1000,
) -> tuple[list[float], list[list[float]]]:
    """Sample reduced distribution curves for plotting/CSV dumps.

    Returns the shared abscissa grid across the support and one column of
    distribution values per criterion.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    lo, hi = tf.support
    step = (hi - lo) / (samples - 1)
    xs = [lo + i * step for i in range(samples)]
    xs[-1] = hi
    columns = []
    for criterion in criteria:
        reduced = reduce_twofold(tf, criterion)
        columns.append([reduced.cdf(x) for x in xs])
    return xs, columns
