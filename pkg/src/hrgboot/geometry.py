"""Native-disk hyperbolic geometry: model parameters, sampling, distances.

Points live in a disk of radius ``R = 2 ln(N / nu)`` with polar coordinates
``(r, theta)``.  Radii follow the density ``alpha sinh(alpha r) / (cosh(alpha
R) - 1)``; angles are uniform.  Two vertices are adjacent iff their hyperbolic
distance is strictly below ``R``.

A vertex's *type* is ``t = R - r``; high type means close to the origin and
high degree.  For ``alpha`` in (1/2, 1) the degree sequence follows a power
law with density exponent ``2 alpha + 1``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .rng import VERTEX_STREAM, CounterStream

TWO_PI = 2.0 * math.pi

# Adjacency-window constants: pair windows derived from the exponential
# angle bound are asymptotic in nature (stated for N above DEFAULT_N0 and
# type sums below R - DEFAULT_C0), but with eps = 0.1 the two-sided window
# already brackets the exact threshold for every R >= 5, which the
# windowed-vs-bruteforce tests pin down empirically.
DEFAULT_EPSILON = 0.1
DEFAULT_C0 = 15.0
DEFAULT_N0 = 10_000


@dataclass(frozen=True)
class ModelParams:
    """Parameters of one sampled graph; ``R`` is derived, never stored."""

    N: int
    alpha: float
    nu: float
    seed: int
    R: float = field(init=False)

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or self.N < 1:
            raise ParameterError(f"N must be a positive integer, got {self.N!r}")
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ParameterError(f"alpha must be positive, got {self.alpha!r}")
        if not (self.nu > 0.0 and math.isfinite(self.nu)):
            raise ParameterError(f"nu must be positive, got {self.nu!r}")
        if not (0 <= int(self.seed) < 2**64):
            raise ParameterError("seed must fit in 64 bits")
        object.__setattr__(self, "R", 2.0 * math.log(self.N / self.nu))
        if self.R <= 0.0:
            raise ParameterError("R = 2 ln(N/nu) must be positive; increase N or decrease nu")
        if not self.alpha_in_theory_range:
            warnings.warn(
                f"alpha={self.alpha} outside (0.5, 1); degree power law and "
                "band guarantees no longer apply",
                stacklevel=3,
            )

    @property
    def alpha_in_theory_range(self) -> bool:
        return 0.5 < self.alpha < 1.0


@dataclass(frozen=True)
class PolarPoint:
    r: float
    theta: float


def _arcosh1p(x):
    """arcosh(1 + x) for x >= 0, accurate down to x = 0."""
    return np.log1p(x + np.sqrt(x * (x + 2.0)))


def sample_radius(u, params: ModelParams):
    """Inverse-CDF radius: CDF(r) = (cosh(alpha r) - 1) / (cosh(alpha R) - 1).

    Accepts scalars or arrays of ``u`` in [0, 1]; u=0 maps to 0, u=1 to R.
    """
    a = params.alpha
    # cosh(aR) - 1 via sinh^2 keeps precision for tiny u * (cosh(aR) - 1).
    span = 2.0 * math.sinh(a * params.R / 2.0) ** 2
    return _arcosh1p(np.asarray(u, dtype=np.float64) * span) / a


def radius_cdf(r, params: ModelParams):
    """Probability a sampled radius is <= r (exact model law)."""
    a = params.alpha
    num = np.sinh(a * np.asarray(r, dtype=np.float64) / 2.0) ** 2
    return num / math.sinh(a * params.R / 2.0) ** 2


def sample_point(stream: CounterStream, params: ModelParams) -> PolarPoint:
    """Draw one point, consuming two uniforms in fixed order: theta, then r."""
    u = stream.uniforms(2)
    theta = TWO_PI * u[0]
    if theta >= TWO_PI:  # guard the half-open interval against rounding
        theta = 0.0
    return PolarPoint(r=float(sample_radius(u[1], params)), theta=theta)


def sample_points(params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """All N vertex coordinates for ``params``, in sampling order.

    Equivalent to N ``sample_point`` calls on the vertex stream of
    ``params.seed``; returns ``(r, theta)`` arrays.
    """
    stream = CounterStream(params.seed, VERTEX_STREAM)
    u = stream.uniforms(2 * params.N).reshape(params.N, 2)
    theta = TWO_PI * u[:, 0]
    theta[theta >= TWO_PI] = 0.0
    r = sample_radius(u[:, 1], params)
    return r, theta


def relative_angle(theta_a, theta_b):
    """Angular distance on the circle, in [0, pi]."""
    d = np.abs(np.asarray(theta_a, dtype=np.float64) - theta_b)
    return np.minimum(d, TWO_PI - d)


def cosh_distance(r_a, theta_a, r_b, theta_b):
    """cosh of the hyperbolic distance, the canonical adjacency quantity.

    Evaluated as  s * cosh(r_a + r_b) + (1 - s) * cosh(r_a - r_b)  with
    s = sin^2(dtheta / 2).  Both cosh terms are computed without cancellation
    (the sum via a product expansion of positives, the difference directly
    from r_a - r_b), so comparisons against cosh(R) are stable even when the
    naive law-of-cosines form loses all precision.  Edge tests throughout the
    package compare this value to cosh(R); ``hyperbolic_distance`` applies
    arcosh to the same value, keeping the two views consistent.
    """
    r_a = np.asarray(r_a, dtype=np.float64)
    r_b = np.asarray(r_b, dtype=np.float64)
    half = relative_angle(theta_a, theta_b) / 2.0
    s = np.sin(half) ** 2
    cosh_sum = np.cosh(r_a) * np.cosh(r_b) + np.sinh(r_a) * np.sinh(r_b)
    return s * cosh_sum + (1.0 - s) * np.cosh(r_a - r_b)


def hyperbolic_distance(a: PolarPoint | tuple, b: PolarPoint | tuple) -> float:
    """Distance between two points; exact 0 for coincident points."""
    r_a, th_a = (a.r, a.theta) if isinstance(a, PolarPoint) else a
    r_b, th_b = (b.r, b.theta) if isinstance(b, PolarPoint) else b
    x = cosh_distance(r_a, th_a, r_b, th_b) - 1.0
    return float(_arcosh1p(np.maximum(x, 0.0)))


def distance_matrix(r, theta):
    """Dense pairwise distances for small point sets (testing helper)."""
    r = np.asarray(r, dtype=np.float64)
    theta = np.asarray(theta, dtype=np.float64)
    x = cosh_distance(r[:, None], theta[:, None], r[None, :], theta[None, :]) - 1.0
    return _arcosh1p(np.maximum(x, 0.0))


def angle_threshold(t_u, t_v, params: ModelParams, epsilon: float = DEFAULT_EPSILON):
    """Two-sided adjacency window for the relative angle of a type pair.

    Returns ``(lower, upper)`` with
    ``lower = 2 (1 - eps) exp((t_u + t_v - R) / 2)`` and the symmetric upper
    bound using ``1 + eps``: relative angle below ``lower`` implies adjacency,
    above ``upper`` implies non-adjacency (for type sums comfortably below R;
    see DEFAULT_C0).  Rejects ``t_u + t_v >= R``, where the window shape is
    meaningless.
    """
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    tsum = t_u + t_v
    if np.any(np.asarray(tsum) >= params.R):
        raise ParameterError("angle_threshold requires t_u + t_v < R")
    base = 2.0 * np.exp((np.asarray(tsum, dtype=np.float64) - params.R) / 2.0)
    return (1.0 - epsilon) * base, (1.0 + epsilon) * base


def adjacency_angle_exact(r_a, r_b, R: float):
    """Exact threshold angle: adjacency iff relative angle < this value.

    Solves cosh(d) = cosh(R) for the relative angle at fixed radii.  Returns
    pi where the pair is adjacent at every angle, 0 where never.  The
    threshold decreases in each radius, which the windowed builder exploits:
    evaluating at bucket-minimum radii gives a superset window.
    """
    r_a = np.asarray(r_a, dtype=np.float64)
    r_b = np.asarray(r_b, dtype=np.float64)
    denom = np.sinh(r_a) * np.sinh(r_b)
    num = np.cosh(r_a) * np.cosh(r_b) - math.cosh(R)
    with np.errstate(divide="ignore", invalid="ignore"):
        c = np.where(denom > 0.0, num / np.maximum(denom, 1e-300), -2.0)
    # Nudge down before arccos so rounding can only widen the window.
    c = np.clip(c - 1e-12, -1.0, 1.0)
    return np.arccos(c)
