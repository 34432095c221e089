import math

import numpy as np
import pytest

import orientrds as ords


def test_lift_project_shapes_and_reconstruction():
    w = ords.build_cake_wavelets(16, 21)
    y, x = np.mgrid[0:32, 0:40]
    f = np.exp(-((x - 20.0) ** 2 + (y - 16.0) ** 2) / 18.0)
    v = ords.lift(f, w)
    assert v.shape == (16, 32, 40)
    g = ords.project(v)
    assert g.shape == f.shape
    assert ords.psnr(g, f) > 40.0


def test_timestep_examples():
    p = ords.RdsParams()
    for m in (p.metric_D, p.metric_M, p.metric_g, p.metric_S):
        assert m.g11 == pytest.approx(0.01)
    unit = ords.RdsParams()
    unit.metric_D = unit.metric_M = unit.metric_g = unit.metric_S = ords.DiagonalMetric(1.0, 1.0, 1.0)
    assert ords.stable_timestep(unit, 1.0, 1.0) == pytest.approx(1.0 / 6.0)


def test_run_rds_stays_in_range():
    rng = np.random.default_rng(0)
    f = rng.random((24, 24))
    w = ords.build_cake_wavelets(8, 15)
    p = ords.RdsParams.from_anisotropy(0.5, 0.5)
    p.lam = 0.1
    image, volume, steps, tau = ords.run_rds(f, w, p, 0.05)
    lifted = ords.lift(f, w)
    assert steps == math.ceil(0.05 / tau - 1e-9)
    span = lifted.max() - lifted.min()
    assert volume.min() >= lifted.min() - 1e-6 * span
    assert volume.max() <= lifted.max() + 1e-6 * span
    assert image.shape == f.shape


def test_inpainting_keeps_cells_outside_the_hole():
    clean, damaged, hole = ords.crossing_fixture(32, 8)
    assert hole.dtype == bool and hole.sum() == 64
    w = ords.build_cake_wavelets(8, 15)
    p = ords.RdsParams.from_anisotropy(0.5, 0.5)
    out = ords.inpaint(damaged, hole, w, p, 0.2)
    assert out.shape == damaged.shape


def test_metrics_and_noise():
    a = np.zeros((4, 1), dtype=bool)
    b = np.zeros((4, 1), dtype=bool)
    a[0] = b[0] = True
    a[1] = True
    b[2] = True
    assert ords.dice(a, b, 0.0) == 0.5
    n1 = ords.correlated_noise(16, 16, 1.0, 2.0, 5)
    n2 = ords.correlated_noise(16, 16, 1.0, 2.0, 5)
    assert np.array_equal(n1, n2)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        ords.RdsParams.from_anisotropy(0.0, 1.0)
    with pytest.raises(ValueError):
        ords.lift(np.zeros((4, 4, 4)), ords.build_cake_wavelets(8, 15))
