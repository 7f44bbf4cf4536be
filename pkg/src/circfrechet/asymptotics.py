"""
Limiting distributions of the intrinsic sample mean.

Below the uniform level at the antipode the mean is asymptotically normal
at the usual root-n rate, inflated by ``1 / (1 - 2 pi f)``. When the
density touches the uniform level and first departs from it in its k-th
derivative, ``sqrt(n) * sign(mu_n) * |mu_n|**(k+1)`` is asymptotically
normal instead, so the mean itself converges at ``n**(-1/(2(k+1)))``.
"""
import math
from dataclasses import dataclass

from .circle import TWO_PI, wrap
from .distributions import (
    SimFamilyParams, classify_antipode, population_frechet, population_means,
)

STANDARD = "standard_rate"
SLOWED = "slowed_rate"
FLAT = "degenerate_flat"
UNSUPPORTED = "unsupported"


class PredictionError(ValueError):
    """Raised when no asymptotic prediction applies."""

    def __init__(self, message, kind=UNSUPPORTED):
        super().__init__(message)
        self.kind = kind


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Normal limit of ``sqrt(n) * sign(mu_n) |mu_n|**transform_order``.

    ``scale`` is the standard deviation of that limit; ``scale`` is None
    for the flat case, where no limit law exists.
    """

    case_tag: str
    transform_order: int
    scale: float
    rate_exponent: float
    sigma_sq: float = None

    @property
    def k(self):
        return self.transform_order - 1


def normal_cdf(x):
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def normal_ppf(p, tol=1e-12):
    """Standard normal quantile by bisection on :func:`normal_cdf`."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    lo, hi = -40.0, 40.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if normal_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


NORMAL_Q3 = normal_ppf(0.75)


def _check_mean(dist, mean, tol=1e-9):
    result = population_means(dist)
    if not any(abs(wrap(mean - m)) <= tol for m in result.global_means):
        raise ValueError(f"{mean!r} is not a global intrinsic mean of the distribution")
    return result


def euclidean_variance(dist, mean):
    """Variance about a global intrinsic mean, i.e. the minimal functional value."""
    _check_mean(dist, mean)
    return population_frechet(dist, mean)


def sigma_sq_closed_form(params):
    """Variance of the simulation family in closed form.

    For ``k > 0`` the density has two polynomial pieces on each side of the
    antipode; for ``k = 0`` only the constant inner piece remains.
    """
    a, k, d = params.alpha, params.k, params.delta
    pi2 = math.pi ** 2
    base = a * pi2 / 3.0 * (1.0 - (1.0 - d) ** 3)
    if k == 0:
        return base
    return (base
            - a * d * pi2 / (2.0 * (k + 1)) * (1.0 - (1.0 - 2.0 * d) ** 2)
            + a * (d * math.pi) ** 2 / (k + 2) * (2.0 - 2.0 * d))


def fk_at_antipode(params):
    """k-th derivative of the simulation-family density just past the antipode."""
    if params.k < 1:
        raise ValueError("derivative order k must be at least 1; use the density level for k = 0")
    k = params.k
    return -params.alpha * math.factorial(k) / (4.0 * math.pi * (params.delta * math.pi) ** k)


def predict(dist, mean, tol=1e-10):
    """Asymptotic law of the sample mean around a unique population mean.

    Raises
    ------
    PredictionError
        With ``kind`` ``degenerate_flat`` when the mean is not locally
        unique, or ``unsupported`` for asymmetric contact orders and other
        cases outside the theory.
    """
    result = population_means(dist)
    if result.flat_intervals:
        raise PredictionError(
            "the minimal set is an interval of constant value; no limit law applies", FLAT)
    if not result.is_unique:
        raise ValueError("the population mean is not unique")
    if abs(wrap(mean - result.global_means[0])) > 1e-9:
        raise ValueError(f"{mean!r} is not the intrinsic mean")

    c = classify_antipode(dist, mean)
    if c.kind == "atom_present":
        raise ValueError("a point mass sits opposite the supposed mean")
    if c.kind == "locally_uniform":
        raise PredictionError("density is uniform on one side of the antipode", FLAT)
    if c.kind == "superuniform":
        raise ValueError("density exceeds the uniform level at the antipode")
    sigma_sq = population_frechet(dist, mean)
    sigma = math.sqrt(sigma_sq)

    if c.kind == "subuniform":
        if abs(c.limit_plus - c.limit_minus) > tol:
            raise PredictionError("one-sided density limits at the antipode differ")
        f = c.limit_plus
        return AsymptoticPrediction(STANDARD, 1, sigma / (1.0 - TWO_PI * f), 0.5, sigma_sq)

    if not c.symmetric:
        raise PredictionError(
            f"contact orders differ on the two sides (k={c.k_plus}, k~={c.k_minus})")
    k = c.k_plus
    # mirror symmetry: (-1)^k f^(k)(a-) must equal f^(k)(a+)
    mirrored = (-1) ** k * c.deriv_minus
    if abs(mirrored - c.deriv_plus) > tol * max(1.0, abs(c.deriv_plus)):
        raise PredictionError("k-th derivatives at the antipode are not mirror images")
    scale = sigma * math.factorial(k + 1) / (TWO_PI * abs(c.deriv_plus))
    return AsymptoticPrediction(SLOWED, k + 1, scale, 1.0 / (2 * (k + 1)), sigma_sq)


def predicted_mad(prediction, n):
    """Median absolute deviation of the sample mean implied by the limit law.

    The odd power transform commutes with the median of absolute values,
    so the normal MAD ``q3 * scale / sqrt(n)`` is mapped back through the
    ``1 / transform_order`` root.
    """
    if prediction.case_tag == FLAT or prediction.scale is None:
        raise PredictionError("no prediction for the flat case", FLAT)
    if n < 1:
        raise ValueError("n must be positive")
    return (NORMAL_Q3 * prediction.scale / math.sqrt(n)) ** (1.0 / prediction.transform_order)


def predict_sim_family(params):
    """Closed-form prediction for a simulation-family member (mean 0)."""
    if not isinstance(params, SimFamilyParams):
        raise TypeError("expected SimFamilyParams")
    sigma_sq = sigma_sq_closed_form(params)
    sigma = math.sqrt(sigma_sq)
    if params.alpha < 1.0:
        return AsymptoticPrediction(STANDARD, 1, sigma / (1.0 - params.alpha), 0.5, sigma_sq)
    if params.alpha > 1.0:
        raise PredictionError("0 is not the intrinsic mean when alpha > 1")
    if params.k == 0:
        raise PredictionError("uniform density around the antipode; no limit law", FLAT)
    k = params.k
    scale = sigma * math.factorial(k + 1) / (TWO_PI * abs(fk_at_antipode(params)))
    return AsymptoticPrediction(SLOWED, k + 1, scale, 1.0 / (2 * (k + 1)), sigma_sq)
