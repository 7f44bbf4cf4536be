"""
Geometry of the circle represented as the interval [-pi, pi) with its
endpoints identified.

All functions accept scalars or numpy arrays. Scalars in give floats out.
"""
import math
from dataclasses import dataclass, field

import numpy as np

PI = math.pi
TWO_PI = 2.0 * math.pi

# Angles are plain floats in [-pi, pi); the alias only documents intent.
Angle = float


def _is_scalar(x):
    return np.ndim(x) == 0


def wrap(x):
    """Reduce radians to the canonical representative in [-pi, pi).

    ``pi`` maps to ``-pi``; the result is never ``pi``.
    """
    if _is_scalar(x):
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"cannot wrap non-finite angle {x!r}")
        v = math.remainder(x, TWO_PI)
        if v >= PI:
            v -= TWO_PI
        elif v < -PI:
            v += TWO_PI
        return v
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("cannot wrap non-finite angles")
    v = x - TWO_PI * np.round(x / TWO_PI)
    v = np.where(v >= PI, v - TWO_PI, v)
    v = np.where(v < -PI, v + TWO_PI, v)
    return v


def antipode(x):
    """The diametrically opposite point, ``wrap(x + pi)``."""
    if _is_scalar(x):
        return wrap(float(x) + PI)
    return wrap(np.asarray(x, dtype=float) + PI)


def nu(mu, x):
    """Winding indicator selecting the short-arc representative of ``mu - x``.

    Returns 1 if ``mu > 0`` and ``x`` lies in ``[-pi, mu - pi)``, -1 if
    ``mu < 0`` and ``x`` lies in ``(mu + pi, pi)``, and 0 otherwise.
    """
    mu_a = np.asarray(mu, dtype=float)
    x_a = np.asarray(x, dtype=float)
    pos = (mu_a > 0) & (x_a < mu_a - PI)
    neg = (mu_a < 0) & (x_a > mu_a + PI)
    out = pos.astype(int) - neg.astype(int)
    if out.ndim == 0:
        return int(out)
    return out


def signed_distance(mu, x):
    """Signed arc ``mu - x`` reduced to [-pi, pi].

    Exactly antipodal pairs return ``+pi``.
    """
    mu_a = np.asarray(mu, dtype=float)
    x_a = np.asarray(x, dtype=float)
    d = mu_a - x_a - TWO_PI * nu(mu_a, x_a)
    d = np.clip(d, -PI, PI)
    d = np.where(d == -PI, PI, d)
    if d.ndim == 0:
        return float(d)
    return d


def intrinsic_distance(mu, x):
    """Arc-length distance on the unit circle, in [0, pi]."""
    d = np.abs(signed_distance(mu, x))
    if np.ndim(d) == 0:
        return float(d)
    return d


def compensated_cumsum(x):
    """Prefix sums with a running error-free correction.

    ``np.cumsum`` adds sequentially, so each rounding error can be
    recovered exactly with TwoSum and accumulated separately.
    """
    x = np.asarray(x, dtype=float)
    s = np.cumsum(x)
    if x.size < 2:
        return s
    a = s[:-1]
    b = x[1:]
    t = s[1:]
    bb = t - a
    err = (a - (t - bb)) + (b - bb)
    corr = np.concatenate(([0.0], np.cumsum(err)))
    return s + corr


@dataclass(frozen=True)
class SortedSample:
    """Angles sorted ascending in [-pi, pi) together with their prefix sums.

    Use :meth:`from_angles` for arbitrary input; the direct constructor
    validates but does not sort.
    """

    points: np.ndarray
    prefix_sums: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("sample must be a nonempty 1-d array")
        if pts[0] < -PI or pts[-1] >= PI:
            raise ValueError("sample points must lie in [-pi, pi)")
        if np.any(np.diff(pts) < 0):
            raise ValueError("sample points must be sorted nondecreasing")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.prefix_sums is None:
            ps = compensated_cumsum(pts)
        else:
            ps = np.asarray(self.prefix_sums, dtype=float)
            if ps.shape != pts.shape:
                raise ValueError("prefix_sums must match points in length")
        ps.setflags(write=False)
        object.__setattr__(self, "prefix_sums", ps)

    @classmethod
    def from_angles(cls, angles):
        """Wrap and sort arbitrary angles (O(n log n))."""
        a = np.atleast_1d(wrap(np.asarray(angles, dtype=float)))
        return cls(np.sort(a))

    @property
    def n(self):
        return self.points.size

    @property
    def mean(self):
        """Plain arithmetic average of the representatives."""
        return float(self.prefix_sums[-1] / self.n)

    def __len__(self):
        return self.n


def frechet_value(sample, mu):
    """Sample Frechet functional: mean squared intrinsic distance to ``mu``.

    ``sample`` may be a :class:`SortedSample` or any array of angles; ``mu``
    may be an array, in which case one value per entry is returned.
    """
    pts = sample.points if isinstance(sample, SortedSample) else wrap(np.atleast_1d(sample))
    mu_a = np.asarray(mu, dtype=float)
    d = signed_distance(mu_a[..., None], pts)
    v = np.mean(np.square(d), axis=-1)
    if np.ndim(v) == 0:
        return float(v)
    return v
