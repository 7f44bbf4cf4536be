"""
Circular distributions made of point masses and piecewise-polynomial
densities, with exact integrals, sampling, the population Frechet
functional and the search for its minimizers.

Each density segment covers a half-open interval ``[start, end)`` inside
``[-pi, pi]`` and stores its density as a polynomial in the local
coordinate ``t = x - start``.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from .circle import PI, TWO_PI, antipode, wrap

UNIFORM_LEVEL = 1.0 / TWO_PI
MASS_TOLERANCE = 1e-12
FLAT_TOLERANCE = 1e-14
DERIVATIVE_TOLERANCE = 1e-10
STATIONARY_TOLERANCE = 1e-12
# excess over the uniform level below this counts as touching it
LEVEL_NOISE = 1e-13
ANTIPODE_TOLERANCE = 1e-12


class DistributionError(ValueError):
    """Raised for invalid distribution definitions."""


@dataclass(frozen=True)
class Segment:
    start: float
    end: float
    poly: Polynomial = field(compare=False)

    @property
    def length(self):
        return self.end - self.start

    @property
    def coefficients(self):
        return tuple(float(c) for c in self.poly.coef)

    def mass(self):
        return float(self.poly.integ()(self.length))

    def extreme_points(self):
        """Endpoints plus interior critical points, in local coordinates."""
        pts = [0.0, self.length]
        if self.poly.degree() >= 2:
            for r in self.poly.deriv().roots():
                if abs(r.imag) < 1e-12 and 0.0 < r.real < self.length:
                    pts.append(float(r.real))
        return np.array(pts)

    def maximum(self):
        return float(np.max(self.poly(self.extreme_points())))

    def minimum(self):
        return float(np.min(self.poly(self.extreme_points())))

    def is_flat(self, level=UNIFORM_LEVEL):
        """True if the density equals ``level`` identically on the segment."""
        c = (self.poly - level).coef
        scale = self.length ** np.arange(c.size)
        return bool(np.all(np.abs(c * scale) <= FLAT_TOLERANCE))


def _poly(coefs):
    return Polynomial(np.asarray(coefs, dtype=float))


def _split_segment(start, end, poly):
    """Place an arc on the canonical line, splitting it at the seam."""
    if not (math.isfinite(start) and math.isfinite(end)):
        raise DistributionError("segment endpoints must be finite")
    if not end > start:
        raise DistributionError(f"segment end {end} must exceed start {start}")
    if end - start > TWO_PI + 1e-12:
        raise DistributionError("segment longer than the full circle")
    shift = wrap(start) - start
    s, e = start + shift, end + shift
    if e <= PI:
        return [Segment(s, min(e, PI), poly)]
    # the part beyond pi continues at -pi; re-center its local coordinate
    head = Segment(s, PI, poly)
    offset = PI - s
    tail_poly = poly(Polynomial([offset, 1.0]))
    return [head, Segment(-PI, e - TWO_PI, tail_poly)]


class CircularDistribution:
    """Mixture of point masses and polynomial density segments.

    Parameters
    ----------
    atoms : iterable of (location, weight)
        Point masses. Locations are wrapped; zero weights are dropped.
    segments : iterable of (start, end, coefficients)
        Density pieces on ``[start, end)`` with coefficients in ascending
        order in ``t = x - start``. Arcs crossing the seam are split.
    check : bool
        Validate normalization, nonnegativity and non-overlap.
    """

    def __init__(self, atoms=(), segments=(), check=True):
        merged = {}
        for loc, w in atoms:
            w = float(w)
            if not math.isfinite(w) or w < 0:
                raise DistributionError(f"atom weight {w} must be a nonnegative number")
            if w == 0:
                continue
            loc = wrap(float(loc))
            merged[loc] = merged.get(loc, 0.0) + w
        self.atoms = tuple(sorted(merged.items()))

        segs = []
        for item in segments:
            if isinstance(item, Segment):
                start, end, poly = item.start, item.end, item.poly
            else:
                start, end, coefs = item
                poly = _poly(coefs)
            if np.all(poly.coef == 0):
                continue
            segs.extend(_split_segment(float(start), float(end), poly))
        segs.sort(key=lambda s: s.start)
        self.segments = tuple(segs)
        self._atom_locs = np.array([a for a, _ in self.atoms])
        self._atom_weights = np.array([w for _, w in self.atoms])
        self._seg_mass = np.array([s.mass() for s in self.segments])
        self._antiderivs = [s.poly.integ() for s in self.segments]
        if check:
            self.validate()

    def validate(self):
        for prev, nxt in zip(self.segments, self.segments[1:]):
            if nxt.start < prev.end - 1e-15:
                raise DistributionError(
                    f"segments [{prev.start}, {prev.end}) and [{nxt.start}, {nxt.end}) overlap")
        for s in self.segments:
            if s.minimum() < -1e-12:
                raise DistributionError(
                    f"density negative on segment [{s.start}, {s.end})")
        total = self.total_mass
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise DistributionError(f"total mass {total!r} differs from 1")

    @property
    def total_mass(self):
        return float(math.fsum(self._atom_weights) + math.fsum(self._seg_mass))

    @property
    def continuous_mass(self):
        return float(math.fsum(self._seg_mass))

    @property
    def atom_mass(self):
        return float(math.fsum(self._atom_weights))

    def _segment_at(self, x, side=1):
        # side=+1: segment with start <= x < end; side=-1: start < x <= end
        for j, s in enumerate(self.segments):
            if side > 0 and s.start <= x < s.end:
                return j
            if side < 0 and s.start < x <= s.end:
                return j
        return None

    def __repr__(self):
        return (f"CircularDistribution(atoms={len(self.atoms)}, "
                f"segments={len(self.segments)})")

    def to_dict(self):
        return {
            "atoms": [[loc, w] for loc, w in self.atoms],
            "segments": [[s.start, s.end, list(s.coefficients)] for s in self.segments],
        }


# --------------------------------------------------------------------------
# evaluation and integration

def density_at(dist, x):
    """Density of the continuous part; atoms are not included."""
    xa = wrap(np.asarray(x, dtype=float))
    out = np.zeros(np.shape(xa))
    for s in dist.segments:
        inside = (xa >= s.start) & (xa < s.end)
        if np.any(inside):
            out = np.where(inside, s.poly(xa - s.start), out)
    if np.ndim(out) == 0:
        return float(out)
    return out


def cdf(dist, x, closed=True):
    """``P{-pi <= X <= x}`` for ``x`` in ``[-pi, pi]`` (``<`` if not closed)."""
    xa = np.asarray(x, dtype=float)
    out = np.zeros(np.shape(xa))
    for s, antider in zip(dist.segments, dist._antiderivs):
        t = np.clip(xa - s.start, 0.0, s.length)
        out = out + antider(t)
    if dist.atoms:
        side = "right" if closed else "left"
        cw = np.concatenate(([0.0], np.cumsum(dist._atom_weights)))
        out = out + cw[np.searchsorted(dist._atom_locs, xa, side=side)]
    if np.ndim(out) == 0:
        return float(out)
    return out


def arc_mass(dist, a, b, direction=1, closed=False):
    """Mass of the arc traversed from ``a`` to ``b``.

    With ``direction=1`` the arc runs counter-clockwise and covers
    ``[a, b)`` (``[a, b]`` if ``closed``); ``a=-pi, b=pi`` is the full
    circle. ``direction=-1`` runs clockwise.
    """
    a, b = float(a), float(b)
    if direction < 0:
        return arc_mass(dist, b, a, 1, closed)
    if b - a > TWO_PI:
        raise ValueError("arc longer than the full circle")
    if b - a == TWO_PI:
        return dist.total_mass
    wa, wb = wrap(a), wrap(b)
    lo = cdf(dist, wa, closed=False)
    hi = cdf(dist, wb, closed=closed)
    if wb >= wa:
        return float(hi - lo)
    # crosses the seam: [a, pi) then [-pi, b)
    return float(dist.total_mass - lo + hi)


def _pieces(dist, mu):
    """Yield (segment, t0, t1, centre) with the distance constant in form.

    On each piece the signed distance to ``mu`` is ``centre - x``.
    """
    cut = antipode(mu)
    for s in dist.segments:
        bounds = [s.start, s.end]
        if s.start < cut < s.end:
            bounds = [s.start, cut, s.end]
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            mid = 0.5 * (lo + hi)
            if mu > 0 and mid < mu - PI:
                centre = mu - TWO_PI
            elif mu < 0 and mid > mu + PI:
                centre = mu + TWO_PI
            else:
                centre = mu
            yield s, lo - s.start, hi - s.start, centre


def _atom_signed(dist, mu, side):
    from .circle import signed_distance
    d = np.atleast_1d(signed_distance(mu, dist._atom_locs))
    if side != 0:
        # an antipodal atom sits at +pi just below mu and at -pi just
        # above; mu may come from wrapped arithmetic, so allow rounding
        anti = np.abs(d) >= PI - ANTIPODE_TOLERANCE
        d = np.where(anti, PI if side < 0 else -PI, d)
    return d


def population_frechet(dist, mu):
    """Exact ``E d(mu, X)^2`` by polynomial integration."""
    mu = wrap(float(mu))
    total = []
    if dist.atoms:
        d = _atom_signed(dist, mu, 0)
        total.extend(dist._atom_weights * d * d)
    for s, t0, t1, centre in _pieces(dist, mu):
        lin = Polynomial([centre - s.start, -1.0])
        q = (s.poly * lin * lin).integ()
        total.append(q(t1) - q(t0))
    return float(math.fsum(total))


def stationarity(dist, mu, side=0):
    """Expected signed distance ``E[mu - X]`` reduced to the short arc.

    This is half the derivative of the population functional where it is
    differentiable. ``side=+1``/``-1`` gives the limit from above/below,
    which differs from the value only if an atom sits at ``antipode(mu)``.
    """
    mu = wrap(float(mu))
    total = []
    if dist.atoms:
        total.extend(dist._atom_weights * _atom_signed(dist, mu, side))
    for s, t0, t1, centre in _pieces(dist, mu):
        q = (s.poly * Polynomial([centre - s.start, -1.0])).integ()
        total.append(q(t1) - q(t0))
    return float(math.fsum(total))


# --------------------------------------------------------------------------
# simulation family

@dataclass(frozen=True)
class SimFamilyParams:
    """Atom at 0 plus a density touching the uniform level near +-pi.

    ``alpha`` scales the density, ``k`` is the order of contact with the
    uniform level at the antipode and ``delta * pi`` the half-width of the
    inner piece.
    """

    alpha: float
    k: int
    delta: float

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 0:
            raise DistributionError(f"k must be a nonnegative integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))
        if not 0.0 <= self.delta <= 0.5:
            raise DistributionError(f"delta must lie in [0, 1/2], got {self.delta}")
        if self.alpha < 0 or self.alpha * self.delta > 1.0 + 1e-15:
            raise DistributionError(
                f"alpha must lie in [0, 1/delta], got alpha={self.alpha}, delta={self.delta}")


CASES = {
    "0a": SimFamilyParams(0.9, 0, 0.4),
    "0b": SimFamilyParams(1.0, 0, 0.4),
    "1a": SimFamilyParams(0.9, 1, 0.4),
    "1b": SimFamilyParams(1.0, 1, 0.4),
    "2": SimFamilyParams(1.0, 2, 0.4),
    "3": SimFamilyParams(1.0, 3, 0.4),
}


def sim_family(params, k=None, delta=None):
    """Build the simulation-family distribution.

    Accepts a :class:`SimFamilyParams`, a standard case label such as
    ``"1b"``, or ``sim_family(alpha, k, delta)`` positionally.
    """
    if isinstance(params, str):
        params = CASES[params]
    elif not isinstance(params, SimFamilyParams):
        params = SimFamilyParams(params, k, delta)
    a, k, d = params.alpha, params.k, params.delta
    atoms = [(0.0, 1.0 - a * d)]
    w = d * PI
    if a == 0 or d == 0:
        return CircularDistribution(atoms, [])
    level = a / TWO_PI
    if k == 0:
        segs = [(-PI, -PI + w, [level]), (PI - w, PI, [level])]
        return CircularDistribution(atoms, segs)
    q = a / (4.0 * PI)
    u = Polynomial([0.0, 1.0 / w])          # t / (delta*pi)
    one_minus_u = Polynomial([1.0, -1.0 / w])
    segs = [
        # inner piece next to -pi, t measured away from -pi
        Segment(-PI, -PI + w, level - q * u ** k),
        Segment(-PI + w, -PI + 2 * w, q * one_minus_u ** k),
        # mirror images approaching +pi
        Segment(PI - 2 * w, PI - w, q * u ** k),
        Segment(PI - w, PI, level - q * one_minus_u ** k),
    ]
    return CircularDistribution(atoms, segs)


def example_family(alpha, delta):
    """Uniform arcs of level ``alpha/(2 pi)`` around +-pi plus an atom at 0."""
    return sim_family(SimFamilyParams(alpha, 0, delta))


# --------------------------------------------------------------------------
# sampling

def sample(dist, rng, size=None):
    """Draw i.i.d. angles from ``dist``.

    The continuous part uses rejection against the piecewise-constant
    envelope given by each segment's maximum, so the overall acceptance
    rate is ``continuous_mass / envelope_area``.
    """
    m = 1 if size is None else int(size)
    weights = np.concatenate((dist._atom_weights, [dist.continuous_mass]))
    weights = np.clip(weights, 0.0, None)
    counts = rng.multinomial(m, weights / weights.sum())
    parts = [np.full(c, loc) for loc, c in zip(dist._atom_locs, counts[:-1])]
    parts.append(_sample_continuous(dist, rng, counts[-1]))
    out = np.concatenate(parts)
    if len(dist.atoms) > 0 and counts[-1] < m:
        out = rng.permutation(out)
    if size is None:
        return float(out[0])
    return out


def envelope(dist):
    """Per-segment envelope heights and areas."""
    heights = np.array([s.maximum() for s in dist.segments])
    lengths = np.array([s.length for s in dist.segments])
    return heights, heights * lengths


def acceptance_rate(dist):
    heights, areas = envelope(dist)
    return dist.continuous_mass / areas.sum() if areas.size else 1.0


def _sample_continuous(dist, rng, count):
    if count == 0:
        return np.empty(0)
    heights, areas = envelope(dist)
    probs = areas / areas.sum()
    starts = np.array([s.start for s in dist.segments])
    lengths = np.array([s.length for s in dist.segments])
    out = []
    need = count
    rate = acceptance_rate(dist)
    while need > 0:
        batch = int(need / rate * 1.1) + 16
        seg = rng.choice(len(probs), size=batch, p=probs)
        t = rng.random(batch) * lengths[seg]
        u = rng.random(batch) * heights[seg]
        dens = np.empty(batch)
        for j, s in enumerate(dist.segments):
            mask = seg == j
            dens[mask] = s.poly(t[mask])
        keep = (starts[seg] + t)[u < dens]
        out.append(keep[:need])
        need -= min(need, keep.size)
    x = np.concatenate(out)
    return np.where(x >= PI, x - TWO_PI, x)


# --------------------------------------------------------------------------
# antipode classification

@dataclass(frozen=True)
class AntipodeClassification:
    """Behaviour of the distribution at ``antipode(mu)``.

    ``kind`` is one of ``atom_present``, ``superuniform``,
    ``locally_uniform``, ``subuniform`` or ``order_k``. ``k_plus`` and
    ``k_minus`` are the orders of the first derivative of
    ``density - 1/(2 pi)`` that does not vanish on the counter-clockwise
    and clockwise side; ``deriv_plus`` and ``deriv_minus`` are those
    derivatives (in x) at the point.
    """

    kind: str
    point: float
    limit_plus: float = None
    limit_minus: float = None
    k_plus: int = None
    k_minus: int = None
    deriv_plus: float = None
    deriv_minus: float = None

    @property
    def symmetric(self):
        return self.k_plus is not None and self.k_plus == self.k_minus

    @property
    def k(self):
        return self.k_plus

    @property
    def can_be_minimum(self):
        return self.kind in ("subuniform", "order_k", "locally_uniform")


def _one_sided(dist, a, side):
    """(limit, order, derivative) of density - 1/(2 pi) at ``a`` from one side.

    ``order`` is None when the deviation vanishes identically.
    """
    if side < 0 and a == -PI:
        a = PI
    j = dist._segment_at(a, side)
    if j is None:
        return 0.0, 0, -UNIFORM_LEVEL
    s = dist.segments[j]
    t0 = a - s.start
    g = s.poly - UNIFORM_LEVEL
    limit = float(s.poly(t0))
    if s.is_flat():
        return limit, None, 0.0
    p = g
    for order in range(g.degree() + 1):
        val = float(p(t0))
        tol = DERIVATIVE_TOLERANCE * math.factorial(order)
        if abs(val) > tol:
            return limit, order, val
        p = p.deriv()
    return limit, None, 0.0


def classify_antipode(dist, mu):
    """Classify the distribution near the antipode of ``mu``."""
    a = antipode(float(mu))
    if dist.atoms and np.any(np.abs(wrap(dist._atom_locs - a)) <= 1e-12):
        return AntipodeClassification("atom_present", a)
    lp, kp, dp = _one_sided(dist, a, +1)
    lm, km, dm = _one_sided(dist, a, -1)
    info = dict(point=a, limit_plus=lp, limit_minus=lm, k_plus=kp,
                k_minus=km, deriv_plus=dp, deriv_minus=dm)
    if kp is None or km is None:
        return AntipodeClassification("locally_uniform", **info)
    # moving away from the point on either side the excess mass must be
    # negative: f^(k)(a+) < 0 and (-1)^k f^(k)(a-) < 0
    if not (dp < 0 and (-1) ** km * dm < 0):
        return AntipodeClassification("superuniform", **info)
    if kp == 0 and km == 0:
        return AntipodeClassification("subuniform", **info)
    return AntipodeClassification("order_k", **info)


# --------------------------------------------------------------------------
# population means

@dataclass(frozen=True)
class PopulationMeanResult:
    global_means: list
    flat_intervals: list
    local_minima: list
    classifications: list
    global_value: float

    @property
    def is_unique(self):
        return len(self.global_means) == 1 and not self.flat_intervals

    @property
    def mean(self):
        if not self.is_unique:
            raise ValueError("population mean is not unique")
        return self.global_means[0]


def _level_crossings(seg):
    """Interior points where a segment's density meets the uniform level.

    Multiple roots come back from the eigenvalue solver scattered by about
    ``eps ** (1 / multiplicity)``; they are clustered and roots close to
    the segment ends are dropped.
    """
    tol = 1e-4 * seg.length
    roots = sorted(float(r.real) for r in (seg.poly - UNIFORM_LEVEL).roots()
                   if abs(r.imag) <= tol)
    out = []
    for r in roots:
        if r <= tol or r >= seg.length - tol:
            continue
        if out and r - out[-1][-1] <= tol:
            out[-1].append(r)
        else:
            out.append([r])
    return [sum(c) / len(c) for c in out]


def _elementary_intervals(dist):
    """Cut [-pi, pi) into intervals of constant density class.

    Returns (breakpoints, classes, barrier) where classes[j] describes
    (b[j], b[j+1]) as 'sub', 'flat' or 'super' relative to the uniform
    level and barrier[j] tells whether b[j] carries an atom.
    """
    pts = {-PI, PI}
    pts.update(loc for loc, _ in dist.atoms)
    for s in dist.segments:
        pts.update((s.start, s.end))
        if not s.is_flat():
            pts.update(s.start + r for r in _level_crossings(s))
    b = np.array(sorted(p for p in pts if -PI <= p <= PI))
    classes = []
    for lo, hi in zip(b[:-1], b[1:]):
        mid = 0.5 * (lo + hi)
        j = dist._segment_at(mid)
        if j is not None and dist.segments[j].is_flat():
            classes.append("flat")
        elif density_at(dist, mid) - UNIFORM_LEVEL < LEVEL_NOISE:
            classes.append("sub")
        else:
            classes.append("super")
    atom_set = set(loc for loc, _ in dist.atoms)
    barrier = [float(p) in atom_set or (p == PI and -PI in atom_set) for p in b]
    return b, classes, barrier


def density_arcs(dist):
    """Maximal arcs of constant class, split at atoms.

    Each arc is ``(lo, hi, cls)`` with ``lo`` in ``[-pi, pi)`` and
    ``lo < hi <= lo + 2 pi``; arcs may run past ``pi``. Boundaries where
    the density only touches the uniform level (or where two pieces of the
    same class meet) are merged away.
    """
    b, classes, barrier = _elementary_intervals(dist)
    arcs = []
    for j, cls in enumerate(classes):
        lo, hi = float(b[j]), float(b[j + 1])
        if arcs and arcs[-1][2] == cls and not barrier[j]:
            arcs[-1][1] = hi
        else:
            arcs.append([lo, hi, cls])
    if len(arcs) > 1 and arcs[0][2] == arcs[-1][2] and not barrier[0]:
        first = arcs.pop(0)
        arcs[-1][1] = first[1] + TWO_PI
    return [tuple(a) for a in arcs]


def _bisect_root(dist, lo, hi, tol=1e-12):
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if stationarity(dist, wrap(mid)) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _touching_root(dist, lo, hi, breakpoints):
    """Antipode of an interior breakpoint of (lo, hi) that is numerically
    stationary, or None.

    Near a point where the density touches the uniform level the
    stationarity function is flat to high order, so bisection alone only
    locates the zero to about ``eps ** (1 / (k + 1))``.
    """
    best = None
    for p in breakpoints:
        for q in (p, p + TWO_PI):
            if lo < q < hi:
                mu = antipode(q)
                h = abs(stationarity(dist, mu))
                if h <= STATIONARY_TOLERANCE and (best is None or h < best[0]):
                    best = (h, mu)
    return None if best is None else best[1]


def population_means(dist, tol=1e-9):
    """Locate all local and global minimizers of the population functional.

    On each maximal arc where the density stays below the uniform level
    (touching it at isolated points at most) and which carries no atom,
    the stationarity function increases strictly over the antipodal arc,
    so bisection finds its only possible zero. Arcs of exactly uniform
    density give intervals of constant value, reported when their value
    is locally minimal.
    """
    if abs(dist.total_mass - 1.0) > MASS_TOLERANCE:
        raise DistributionError("distribution is not normalized")
    arcs = density_arcs(dist)
    breakpoints = _elementary_intervals(dist)[0][:-1]
    points = []
    flats = []

    if len(arcs) == 1 and arcs[0][1] - arcs[0][0] >= TWO_PI and arcs[0][2] == "flat":
        flats.append(((-PI, PI), population_frechet(dist, 0.0)))

    for idx, (lo, hi, cls) in enumerate(arcs):
        if cls == "sub":
            a, b = lo + PI, hi + PI
            if stationarity(dist, wrap(a), side=+1) >= -STATIONARY_TOLERANCE:
                continue
            if stationarity(dist, wrap(b), side=-1) <= STATIONARY_TOLERANCE:
                continue
            root = _touching_root(dist, lo, hi, breakpoints)
            if root is None:
                root = wrap(_bisect_root(dist, a, b))
            points.append(root)
        elif cls == "flat" and len(arcs) > 1:
            mid = wrap(0.5 * (lo + hi) + PI)
            if abs(stationarity(dist, mid)) > STATIONARY_TOLERANCE:
                continue
            prev_arc = arcs[idx - 1]
            next_arc = arcs[(idx + 1) % len(arcs)]
            left_open = not _is_atom(dist, lo) and prev_arc[2] == "sub"
            right_open = not _is_atom(dist, wrap(hi)) and next_arc[2] == "sub"
            if left_open and right_open:
                start = wrap(lo + PI)
                flats.append(((start, start + (hi - lo)), population_frechet(dist, mid)))

    minima = []
    classes = []
    for mu in points:
        c = classify_antipode(dist, mu)
        if not c.can_be_minimum:
            continue
        minima.append((mu, population_frechet(dist, mu)))
        classes.append(c)

    if not minima and not flats:
        minima = _exhaustive_scan(dist)
        classes = [classify_antipode(dist, mu) for mu, _ in minima]

    values = [v for _, v in minima] + [v for _, v in flats]
    best = min(values)
    global_means = sorted(mu for mu, v in minima if v <= best + tol)
    flat_intervals = [iv for iv, v in flats if v <= best + tol]
    order = np.argsort([mu for mu, _ in minima])
    return PopulationMeanResult(
        global_means=global_means,
        flat_intervals=flat_intervals,
        local_minima=[minima[j] for j in order],
        classifications=[classes[j] for j in order],
        global_value=best,
    )


def _is_atom(dist, x):
    return bool(dist.atoms) and bool(np.any(np.abs(wrap(dist._atom_locs - x)) <= 1e-12))


def _exhaustive_scan(dist, grid_points=4096):
    from scipy.optimize import minimize_scalar

    grid = -PI + TWO_PI * np.arange(grid_points) / grid_points
    vals = np.array([population_frechet(dist, g) for g in grid])
    idx = np.flatnonzero((vals <= np.roll(vals, 1)) & (vals <= np.roll(vals, -1)))
    step = TWO_PI / grid_points
    found = []
    for j in idx:
        res = minimize_scalar(lambda t: population_frechet(dist, wrap(t)),
                              bounds=(grid[j] - step, grid[j] + step), method="bounded",
                              options={"xatol": 1e-12})
        mu = wrap(float(res.x))
        if all(abs(wrap(mu - m)) > 2 * step for m, _ in found):
            found.append((mu, float(res.fun)))
    return found


# --------------------------------------------------------------------------
# file format

def parse_distribution(obj):
    """Build a distribution from a JSON-compatible mapping.

    Accepted forms::

        {"atoms": [[loc, w], ...], "segments": [[start, end, [c0, c1, ...]], ...]}
        {"family": "sim", "alpha": a, "k": k, "delta": d}
        {"family": "example", "alpha": a, "delta": d}
        {"case": "1b"}

    Raises
    ------
    DistributionError
        Describing the first violation found.
    """
    if not isinstance(obj, dict):
        raise DistributionError("distribution must be a JSON object")
    if "case" in obj:
        label = str(obj["case"])
        if label not in CASES:
            raise DistributionError(f"unknown case {label!r}; expected one of {sorted(CASES)}")
        return sim_family(CASES[label])
    if "family" in obj:
        family = obj["family"]
        keys = {"sim": ("alpha", "k", "delta"), "example": ("alpha", "delta")}.get(family)
        if keys is None:
            raise DistributionError(f"unknown family {family!r}; expected 'sim' or 'example'")
        missing = [key for key in keys if key not in obj]
        if missing:
            raise DistributionError(f"{family} family is missing {missing[0]!r}")
        if family == "example":
            return example_family(float(obj["alpha"]), float(obj["delta"]))
        return sim_family(SimFamilyParams(float(obj["alpha"]), obj["k"], float(obj["delta"])))

    unknown = set(obj) - {"atoms", "segments"}
    if unknown:
        raise DistributionError(f"unknown key {sorted(unknown)[0]!r}")
    atoms = []
    for i, item in enumerate(obj.get("atoms", [])):
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise DistributionError(f"atoms[{i}] must be [location, weight]")
        loc, w = item
        if not _is_number(loc) or not _is_number(w) or w <= 0:
            raise DistributionError(f"atoms[{i}] needs a finite location and positive weight")
        atoms.append((float(loc), float(w)))
    segments = []
    for i, item in enumerate(obj.get("segments", [])):
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise DistributionError(f"segments[{i}] must be [start, end, coefficients]")
        start, end, coefs = item
        if not _is_number(start) or not _is_number(end):
            raise DistributionError(f"segments[{i}] endpoints must be finite numbers")
        if not isinstance(coefs, (list, tuple)) or not coefs or not all(map(_is_number, coefs)):
            raise DistributionError(f"segments[{i}] coefficients must be a nonempty list of numbers")
        if not end > start:
            raise DistributionError(f"segments[{i}] end must exceed start")
        segments.append((float(start), float(end), [float(c) for c in coefs]))
    try:
        return CircularDistribution(atoms, segments)
    except DistributionError as err:
        raise DistributionError(str(err)) from None


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def load_distribution(path):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as err:
            raise DistributionError(f"invalid JSON: {err}") from None
    return parse_distribution(obj)
