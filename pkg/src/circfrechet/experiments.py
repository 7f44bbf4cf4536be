"""
Seeded Monte Carlo harness for the behaviour of intrinsic sample means.

Every replication draws from its own Philox stream keyed by
``(master_seed, case label, n, replication)``, so results do not depend
on execution order or on how replications are split across workers.
"""
import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import PredictionError, normal_ppf, predict, predicted_mad
from .circle import PI, TWO_PI, SortedSample, wrap
from .distributions import CircularDistribution, SimFamilyParams, CASES, population_means, sample, sim_family
from .frechet import intrinsic_sample_mean

OUTPUTS = ("mad_curve", "histogram", "qq")
DEFAULT_N_GRID = (100, 316, 1000, 3162, 10000)
DEFAULT_SEED = 20110415
MIN_REPLICATIONS = 30


def stream(master_seed, case, n, replication):
    """Independent generator for one cell of the experiment.

    The case label's bytes are followed by the out-of-range separator 256,
    which keeps the spawn key injective in (case, n, replication).
    """
    key = tuple(str(case).encode()) + (256, int(n), int(replication))
    ss = np.random.SeedSequence(int(master_seed), spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))


def _replicate(dist, n, rng):
    x = np.sort(sample(dist, rng, n))
    res = intrinsic_sample_mean(SortedSample(x))
    return res.global_means[0], len(res.global_means) > 1


def run_replication(dist, n, seed, case="custom", replication=0):
    """Intrinsic mean of ``n`` i.i.d. draws; ties resolve to the smallest mean."""
    mean, _ = _replicate(dist, n, stream(seed, case, n, replication))
    return mean


def _chunk(args):
    dist, n, seed, case, reps = args
    out = []
    for r in reps:
        out.append(_replicate(dist, n, stream(seed, case, n, r)))
    return out


def replicate_means(dist, n, replications, seed, case="custom", workers=1):
    """Means of ``replications`` independent samples of size ``n``.

    Returns
    -------
    means : ndarray
    ties : int
        Number of replications whose sample mean was not unique.
    """
    reps = list(range(replications))
    if workers <= 1:
        results = _chunk((dist, n, seed, case, reps))
    else:
        parts = [reps[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_chunk, [(dist, n, seed, case, p) for p in parts]))
        results = [None] * replications
        for p, chunk in zip(parts, chunks):
            for r, item in zip(p, chunk):
                results[r] = item
    means = np.array([m for m, _ in results])
    ties = sum(t for _, t in results)
    return means, ties


def mad(values):
    """Median absolute deviation about the median (unscaled)."""
    v = np.asarray(values, dtype=float)
    return float(np.median(np.abs(v - np.median(v))))


@dataclass
class ExperimentConfig:
    """Settings for one simulation study.

    ``params`` is usually a :class:`SimFamilyParams`; any
    :class:`CircularDistribution` is accepted as well.
    """

    case: str
    params: SimFamilyParams
    n_grid: tuple = DEFAULT_N_GRID
    replications: int = 300
    master_seed: int = DEFAULT_SEED
    outputs: tuple = ("mad_curve",)
    workers: int = 1

    def __post_init__(self):
        self.n_grid = tuple(int(n) for n in self.n_grid)
        if not self.n_grid or any(n < 1 for n in self.n_grid):
            raise ValueError("n_grid must contain positive sample sizes")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ValueError("n_grid must be strictly increasing")
        if self.replications < MIN_REPLICATIONS:
            raise ValueError(f"replications must be at least {MIN_REPLICATIONS}")
        if not 0 <= int(self.master_seed) < 2 ** 64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        bad = set(self.outputs) - set(OUTPUTS)
        if bad:
            raise ValueError(f"unknown output {sorted(bad)[0]!r}")

    @classmethod
    def for_case(cls, case, **kwargs):
        return cls(case=case, params=CASES[case], **kwargs)

    @property
    def distribution(self):
        if isinstance(self.params, CircularDistribution):
            return self.params
        return sim_family(self.params)


@dataclass
class MadRow:
    n: int
    empirical_mad: float
    predicted_mad: float
    replications: int
    ties: int = 0


@dataclass
class MadCurve:
    case: str
    rows: list = field(default_factory=list)

    @property
    def n(self):
        return np.array([r.n for r in self.rows])

    @property
    def empirical(self):
        return np.array([r.empirical_mad for r in self.rows])


def limit_law(dist):
    """Prediction around the unique population mean, or None if none applies."""
    res = population_means(dist)
    if res.flat_intervals or not res.is_unique:
        return None
    try:
        return predict(dist, res.global_means[0])
    except PredictionError:
        return None


def mad_experiment(config, means_by_n=None):
    """Empirical MAD of the sample mean across ``config.n_grid``.

    ``means_by_n`` may hold already simulated replicate means keyed by n.
    """
    dist = config.distribution
    pred = limit_law(dist)
    curve = MadCurve(config.case)
    for n in config.n_grid:
        if means_by_n is not None and n in means_by_n:
            means, ties = means_by_n[n]
        else:
            means, ties = replicate_means(dist, n, config.replications, config.master_seed,
                                          config.case, config.workers)
        curve.rows.append(MadRow(
            n=n,
            empirical_mad=mad(means),
            predicted_mad=None if pred is None else predicted_mad(pred, n),
            replications=config.replications,
            ties=ties,
        ))
    return curve


def estimate_rate(curve):
    """Least-squares slope of log MAD against log n."""
    rows = [r for r in curve.rows if r.empirical_mad > 0]
    if len(rows) < 3:
        raise ValueError("need at least three rows with positive MAD")
    x = np.log([r.n for r in rows])
    y = np.log([r.empirical_mad for r in rows])
    return float(np.polyfit(x, y, 1)[0])


def histogram_experiment(config, bins=100, means=None):
    """Counts of replicate means over equal-width bins covering [-pi, pi).

    Uses the largest sample size in ``config.n_grid``.
    """
    n = config.n_grid[-1]
    if means is None:
        means, _ = replicate_means(config.distribution, n, config.replications,
                                   config.master_seed, config.case, config.workers)
    edges = -PI + TWO_PI * np.arange(bins + 1) / bins
    counts, _ = np.histogram(means, bins=edges)
    return edges, counts


def qq_experiment(config, means=None):
    """Transformed, standardized means against normal plotting positions.

    Each mean is mapped to ``sqrt(n) sign(mu) |mu|**(k+1) / scale`` at the
    largest ``n`` in the grid.
    """
    dist = config.distribution
    pred = limit_law(dist)
    if pred is None:
        raise PredictionError("no limit law for this distribution", "degenerate_flat")
    center = population_means(dist).global_means[0]
    n = config.n_grid[-1]
    if means is None:
        means, _ = replicate_means(dist, n, config.replications, config.master_seed,
                                   config.case, config.workers)
    observed = np.sort(standardize(means, n, pred, center))
    r = observed.size
    theo = np.array([normal_ppf((i - 0.5) / r) for i in range(1, r + 1)])
    return list(zip(theo.tolist(), observed.tolist()))


def standardize(means, n, prediction, center=0.0):
    """``sqrt(n) sign(d) |d|**p / scale`` with ``d`` the wrapped offset from ``center``."""
    m = wrap(np.asarray(means, dtype=float) - center)
    p = prediction.transform_order
    return math.sqrt(n) * np.sign(m) * np.abs(m) ** p / prediction.scale


def run(config):
    """Run every requested output, sharing replicate means across outputs."""
    dist = config.distribution
    needed = set(config.n_grid) if "mad_curve" in config.outputs else set()
    if {"histogram", "qq"} & set(config.outputs):
        needed.add(config.n_grid[-1])
    cache = {}
    for n in sorted(needed):
        cache[n] = replicate_means(dist, n, config.replications, config.master_seed,
                                   config.case, config.workers)
    out = {}
    if "mad_curve" in config.outputs:
        out["mad_curve"] = mad_experiment(config, cache)
    last = cache.get(config.n_grid[-1], (None, 0))[0]
    if "histogram" in config.outputs:
        out["histogram"] = histogram_experiment(config, means=last)
    if "qq" in config.outputs:
        out["qq"] = qq_experiment(config, means=last)
    return out


# --------------------------------------------------------------------------
# CSV output

def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return ""
    return format(v, ".17g")


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def mad_curve_csv(curve):
    rows = []
    for j, r in enumerate(curve.rows):
        partial = MadCurve(curve.case, curve.rows[:j + 1])
        try:
            slope = estimate_rate(partial)
        except ValueError:
            slope = None
        rows.append((curve.case, r.n, r.replications, r.empirical_mad, r.predicted_mad, slope))
    return _csv(["case", "n", "replications", "empirical_mad", "predicted_mad", "slope_so_far"],
                rows)


def histogram_csv(edges, counts):
    return _csv(["bin_left", "bin_right", "count"],
                [(lo, hi, int(c)) for lo, hi, c in zip(edges[:-1], edges[1:], counts)])


def qq_csv(pairs):
    return _csv(["theoretical_q", "observed"], pairs)
