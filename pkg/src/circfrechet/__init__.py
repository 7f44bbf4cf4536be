"""Intrinsic (Frechet) means on the circle.

The package computes exact sample means in linear time, locates and
classifies population means of piecewise-polynomial distributions,
predicts the limiting law of the sample mean, and runs seeded Monte
Carlo studies of its convergence.
"""
from .asymptotics import (
    AsymptoticPrediction, PredictionError, euclidean_variance, fk_at_antipode, predict,
    predict_sim_family, predicted_mad, sigma_sq_closed_form,
)
from .circle import (
    Angle, SortedSample, antipode, compensated_cumsum, frechet_value, intrinsic_distance,
    nu, signed_distance, wrap,
)
from .distributions import (
    CASES, AntipodeClassification, CircularDistribution, DistributionError,
    PopulationMeanResult, SimFamilyParams, arc_mass, cdf, classify_antipode, density_at,
    example_family, load_distribution, parse_distribution, population_frechet,
    population_means, sample, sim_family, stationarity,
)
from .experiments import (
    ExperimentConfig, MadCurve, estimate_rate, histogram_experiment, mad, mad_experiment,
    qq_experiment, run_replication,
)
from .frechet import (
    Candidate, MeanResult, enumerate_candidates, intrinsic_sample_mean, oracle_mean,
)

__version__ = "0.1.0"
