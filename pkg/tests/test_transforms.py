import numpy as np
import pytest
from scipy.special import ndtri

from hpikit.data import ValidationError
from hpikit.rankstats import spearman
from hpikit.transforms import (
    FittedTransform,
    copula_fit,
    fit_transform,
    normal_quantile,
    qq_r2,
)


def test_probit_against_scipy():
    p = np.concatenate(
        [
            np.linspace(1e-12, 0.02, 200),
            np.linspace(0.021, 0.979, 2000),
            np.linspace(0.98, 1 - 1e-12, 200),
        ]
    )
    got = normal_quantile(p)
    want = ndtri(p)
    assert np.max(np.abs(got - want)) < 1.2e-9
    # scalar path
    assert normal_quantile(0.5) == pytest.approx(0.0, abs=1e-15)


def test_probit_domain():
    with pytest.raises(ValidationError):
        normal_quantile(0.0)
    with pytest.raises(ValidationError):
        normal_quantile(1.0)


def test_log_transform_roundtrip():
    t = fit_transform("log", np.array([0.0, 1.0, 5.0]))
    y = np.array([0.0, np.e - 1.0, 99.0])
    z = t.forward(y)
    assert z[0] == 0.0
    assert z[1] == pytest.approx(1.0, abs=1e-12)
    assert z[2] == pytest.approx(np.log(100.0), abs=1e-12)
    assert np.max(np.abs(t.inverse(z) - y)) < 1e-12
    with pytest.raises(ValidationError):
        t.forward(np.array([-0.1]))


def test_raw_transform_identity(rng):
    t = fit_transform("raw", rng.normal(size=5))
    y = rng.normal(size=8)
    assert np.array_equal(t.forward(y), y)
    assert np.array_equal(t.inverse(y), y)


def test_copula_fit_three_point_case():
    t = copula_fit(np.array([5.0, 1.0, 9.0]))
    # ranks (2,1,3) -> u=(0.5,0.25,0.75) -> z=(0, -0.67449, +0.67449)
    assert t.y_knots.tolist() == [1.0, 5.0, 9.0]
    assert t.z_knots[1] == pytest.approx(0.0, abs=1e-12)
    assert t.z_knots[0] == pytest.approx(-0.6744897501960817, abs=1e-9)
    assert t.z_knots[2] == pytest.approx(+0.6744897501960817, abs=1e-9)


def test_copula_tie_handling():
    t = copula_fit(np.array([1.0, 1.0, 3.0]))
    # average ranks (1.5, 1.5, 3) -> u = (0.375, 0.375, 0.75)
    assert t.y_knots.tolist() == [1.0, 3.0]
    assert t.z_knots[0] == pytest.approx(normal_quantile(0.375), abs=0)
    assert t.z_knots[1] == pytest.approx(normal_quantile(0.75), abs=0)


def test_copula_permutation_invariance(rng):
    y = rng.lognormal(1, 0.8, size=31)
    t1 = copula_fit(y)
    t2 = copula_fit(y[rng.permutation(31)])
    assert np.array_equal(t1.y_knots, t2.y_knots)
    assert np.array_equal(t1.z_knots, t2.z_knots)


def test_copula_training_values_exact_and_roundtrip(rng):
    y = rng.lognormal(2, 1.0, size=96)
    t = copula_fit(y)
    z = t.forward(y)
    assert np.max(np.abs(t.inverse(z) - y)) < 1e-9
    # training knots map exactly
    assert np.array_equal(t.forward(t.y_knots), t.z_knots)


def test_copula_interpolation_and_clamping():
    y = np.array([1.0, 2.0, 4.0, 8.0])
    t = copula_fit(y)
    mid = t.forward(np.array([3.0]))[0]
    assert mid == pytest.approx(0.5 * (t.z_knots[1] + t.z_knots[2]), abs=1e-15)
    assert t.forward(np.array([100.0]))[0] == t.z_knots[-1]
    assert t.forward(np.array([-5.0]))[0] == t.z_knots[0]
    assert t.inverse(np.array([99.0]))[0] == 8.0


def test_copula_median_maps_to_zero(rng):
    y = rng.normal(size=13)  # odd n, distinct with probability 1
    t = copula_fit(y)
    assert t.inverse(np.array([0.0]))[0] == pytest.approx(np.median(y), abs=1e-12)


def test_copula_scores_mean_zero_and_rank_preserving(rng):
    y = rng.lognormal(0, 1.2, size=51)
    t = copula_fit(y)
    z = t.forward(y)
    assert abs(z.mean()) < 1e-10
    assert spearman(y, z) == 1.0


def test_copula_degenerate_rejected():
    with pytest.raises(ValidationError):
        copula_fit(np.array([2.0, 2.0, 2.0]))
    with pytest.raises(ValidationError):
        copula_fit(np.array([1.0, 2.0]))


def test_transform_serialisation_roundtrip(rng):
    y = rng.lognormal(0, 1, size=10)
    for kind in ("raw", "log", "copula"):
        t = fit_transform(kind, y)
        t2 = FittedTransform.from_dict(t.to_dict())
        probe = rng.lognormal(0, 1, size=5)
        assert np.array_equal(t.forward(probe), t2.forward(probe))


def test_qq_r2_perfect_line():
    n = 41
    vals = normal_quantile(np.arange(1, n + 1) / (n + 1.0))
    diag = qq_r2(vals)
    assert diag.r2 == pytest.approx(1.0, abs=1e-12)


def test_qq_r2_orders_transforms(rng):
    y = rng.lognormal(0, 1.5, size=96)
    raw = qq_r2(y, "raw").r2
    logd = qq_r2(np.log1p(y), "log").r2
    cop = qq_r2(copula_fit(y).forward(y), "copula").r2
    assert cop >= logd >= raw
    assert raw < 0.9  # strongly lognormal stays visibly non-normal


def test_qq_r2_constant_rejected():
    with pytest.raises(ValidationError):
        qq_r2(np.ones(5))
