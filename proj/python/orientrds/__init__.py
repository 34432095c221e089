"""Regularised diffusion-shock filtering on position-orientation space."""

from ._orientrds import (
    DiagonalMetric,
    InstabilityError,
    Rds2dParams,
    RdsParams,
    WaveletStack,
    build_cake_wavelets,
    circle_fixture,
    correlated_noise,
    crossing_fixture,
    dice,
    inpaint,
    lift,
    precision,
    project,
    psnr,
    run_rds,
    run_rds2d,
    spiral_fixture,
    stable_timestep,
)

__all__ = [
    "DiagonalMetric",
    "InstabilityError",
    "Rds2dParams",
    "RdsParams",
    "WaveletStack",
    "build_cake_wavelets",
    "circle_fixture",
    "correlated_noise",
    "crossing_fixture",
    "dice",
    "inpaint",
    "lift",
    "precision",
    "project",
    "psnr",
    "run_rds",
    "run_rds2d",
    "spiral_fixture",
    "stable_timestep",
]
