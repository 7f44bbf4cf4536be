"""
Exact intrinsic sample means on the circle.

Every local minimizer of the sample Frechet functional sits on one vertex of
the regular n-gon ``mean + 2*pi*i/n``. On the arc where exactly ``i`` data
points lie "behind" the candidate the functional is a parabola with vertex
at that polygon point, so a vertex is a local minimizer iff it falls inside
its own arc. Given sorted data each check is O(1) from prefix sums, which
makes the whole search linear in n.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .circle import PI, TWO_PI, SortedSample, frechet_value, wrap

DEFAULT_TIE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Candidate:
    index: int
    location: float
    value: float
    is_local_min: bool


@dataclass(frozen=True)
class MeanResult:
    global_means: list
    global_value: float
    local_minima: list
    tie_tolerance: float

    @property
    def is_unique(self):
        return len(self.global_means) == 1

    @property
    def mean(self):
        """The smallest global mean; the only one when unique."""
        return self.global_means[0]


def _as_sample(sample):
    if isinstance(sample, SortedSample):
        return sample
    return SortedSample.from_angles(sample)


def _candidate_arrays(sample):
    x = sample.points
    n = x.size
    ps = sample.prefix_sums
    total = ps[-1]
    xbar = total / n
    ss = np.mean(np.square(x - xbar))

    m = np.arange(n)
    raw = xbar + TWO_PI * m / n
    # raw lies in [-pi, 3*pi); fold once by hand so the branch is known.
    upper = raw >= PI
    loc = np.where(upper, raw - TWO_PI, raw)
    loc = np.where(loc < -PI, -PI, loc)
    pos = loc >= 0

    # Number of points expected below the antipode: i = m on both
    # branches, except that the unshifted vertex with negative location
    # belongs to the i = n piece of the negative branch.
    i = np.where(~pos & ~upper, n, m)
    # A vertex that changes sign under folding would need an index outside
    # 0..n on its branch, so it can never be a minimizer.
    admissible = np.where(pos, ~upper, upper | (m == 0))

    xpad = np.concatenate(([-np.inf], x, [np.inf]))
    lower_pt = xpad[i]          # X_i (1-based), -inf when i == 0
    upper_pt = xpad[i + 1]      # X_{i+1}, +inf when i == n
    edge = np.where(pos, loc - PI, loc + PI)
    local = admissible & (lower_pt < edge) & (edge < upper_pt)

    ps0 = np.concatenate(([0.0], ps))
    head = ps0[i]
    values = np.empty(n)
    with np.errstate(invalid="ignore", divide="ignore"):
        # positive branch: i points wrapped forward
        a = TWO_PI * i / n
        head_mean = np.where(i > 0, head / np.maximum(i, 1), 0.0)
        vpos = ss - a * a + 2.0 * a * (PI + head_mean - xbar)
        vpos = np.where(i > 0, vpos, ss)
        # negative branch: n - i points wrapped backward
        r = n - i
        b = TWO_PI * r / n
        tail_mean = np.where(r > 0, (total - head) / np.maximum(r, 1), 0.0)
        vneg = ss - b * b + 2.0 * b * (PI - tail_mean + xbar)
        vneg = np.where(r > 0, vneg, ss)
    values = np.where(pos, vpos, vneg)
    return loc, values, local


def enumerate_candidates(sample):
    """All n polygon vertices with their closed-form values.

    ``value`` equals the Frechet functional at ``location`` only for
    entries flagged ``is_local_min``.
    """
    sample = _as_sample(sample)
    loc, values, local = _candidate_arrays(sample)
    return [
        Candidate(int(j), float(loc[j]), float(values[j]), bool(local[j]))
        for j in range(loc.size)
    ]


def intrinsic_sample_mean(sample, tie_tolerance=DEFAULT_TIE_TOLERANCE):
    """Global and local minimizers of the sample Frechet functional.

    Linear time for a :class:`SortedSample`; other inputs are wrapped and
    sorted first.

    Parameters
    ----------
    sample : SortedSample or array_like
        The data, in radians.
    tie_tolerance : float
        Local minima whose values lie within this absolute distance of the
        smallest value are all reported as global means.

    Returns
    -------
    MeanResult
    """
    if tie_tolerance < 0:
        raise ValueError("tie_tolerance must be nonnegative")
    sample = _as_sample(sample)
    loc, values, local = _candidate_arrays(sample)
    idx = np.flatnonzero(local)
    if idx.size == 0:
        # Only reachable when rounding puts every vertex on an arc
        # boundary; fall back to the direct functional at all vertices.
        direct = frechet_value(sample, loc)
        idx = np.array([int(np.argmin(direct))])
        values = values.copy()
        values[idx] = direct[idx]
    minima = [Candidate(int(j), float(loc[j]), float(values[j]), True) for j in idx]
    best = min(c.value for c in minima)
    means = sorted(c.location for c in minima if c.value <= best + tie_tolerance)
    return MeanResult(means, best, minima, tie_tolerance)


def oracle_mean(sample, grid_points=100_000, tie_tolerance=DEFAULT_TIE_TOLERANCE):
    """Brute-force minimizer search, for testing only.

    Evaluates the functional directly on a uniform grid augmented with the
    polygon vertices and the data antipodes, then polishes every discrete
    local minimum with a bounded scalar search.
    """
    sample = _as_sample(sample)
    n = sample.n
    if grid_points < 4 * n:
        raise ValueError("grid_points must be at least 4 * n")
    x = sample.points
    grid = -PI + TWO_PI * np.arange(grid_points) / grid_points
    extra = np.concatenate([
        wrap(sample.mean + TWO_PI * np.arange(n) / n),
        wrap(x + PI),
    ])
    mus = np.unique(np.concatenate([grid, extra]))
    vals = _direct_values(mus, x)

    prev = np.roll(vals, 1)
    nxt = np.roll(vals, -1)
    basins = np.flatnonzero((vals <= prev) & (vals <= nxt))

    step = TWO_PI / grid_points
    found = []
    for j in basins:
        lo = mus[j - 1] if j > 0 else mus[-1] - TWO_PI
        hi = mus[j + 1] if j + 1 < mus.size else mus[0] + TWO_PI
        res = minimize_scalar(
            lambda t: float(_direct_values(np.array([wrap(t)]), x)[0]),
            bounds=(lo, hi), method="bounded", options={"xatol": 1e-13},
        )
        cand = [(float(vals[j]), float(mus[j])), (float(res.fun), wrap(float(res.x)))]
        v, mu = min(cand)
        if any(abs(wrap(mu - m)) < 2 * step for _, m in found):
            continue
        found.append((v, mu))

    best = min(v for v, _ in found)
    minima = [Candidate(-1, mu, v, True) for v, mu in sorted(found, key=lambda p: p[1])]
    means = sorted(mu for v, mu in found if v <= best + tie_tolerance)
    return MeanResult(means, best, minima, tie_tolerance)


def _direct_values(mus, x, chunk=4096):
    # min of the two arc lengths, squared and averaged; independent of
    # the winding-indicator route used elsewhere.
    out = np.empty(mus.size)
    for s in range(0, mus.size, chunk):
        t = np.abs(mus[s:s + chunk, None] - x[None, :])
        d = np.minimum(t, TWO_PI - t)
        out[s:s + chunk] = np.mean(d * d, axis=1)
    return out
