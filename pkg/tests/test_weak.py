import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from measureboost.measures import LabeledDataset, Measure
from measureboost.regions import Ball, SmoothParams
from measureboost.weak import (
    GridSpec,
    SmoothTrainConfig,
    WeakClassifier,
    cross_entropy_grad,
    cross_entropy_loss,
    default_thresholds,
    exhaustive_search,
    kmeans_centers,
    smooth_train,
    weighted_error,
)


def unit(points):
    return Measure(np.asarray(points, dtype=float))


def random_dataset(seed, n=20, pts=4, d=2):
    rng = np.random.default_rng(seed)
    measures = tuple(Measure(rng.uniform(-1, 2, size=(pts, d))) for _ in range(n))
    return LabeledDataset(measures, rng.integers(0, 2, size=n))


def separable_toy():
    rng = np.random.default_rng(0)
    ms, ys = [], []
    for _ in range(10):
        ms.append(Measure(rng.uniform(0, 1, size=(5, 2))))
        ys.append(1)
        ms.append(Measure(rng.uniform(2, 3, size=(5, 2))))
        ys.append(0)
    return LabeledDataset(tuple(ms), np.array(ys))


def test_predict_strict_threshold():
    h = WeakClassifier(Ball(np.zeros(2), 1.0), 2.0, 1)
    two_in = unit([[0, 0], [0.5, 0]])
    three_in = unit([[0, 0], [0.5, 0], [0, 0.5]])
    assert h.predict(two_in) == 0  # mass == threshold -> 0
    assert h.predict(three_in) == 1
    flipped = WeakClassifier(Ball(np.zeros(2), 1.0), 2.0, -1)
    assert flipped.predict(two_in) == 0
    assert flipped.predict(unit([[5, 5]])) == 1


def test_exhaustive_separable_toy():
    data = separable_toy()
    grid = GridSpec.balls([np.array([0.5, 0.5])], [1.0], thresholds=(0.5,))
    h, err = exhaustive_search(data, grid)
    assert err == 0.0
    assert weighted_error(h, data) == 0.0


def test_exhaustive_orientation_symmetry():
    data = random_dataset(5)
    flipped = LabeledDataset(data.measures, 1 - data.labels)
    grid = GridSpec.balls(
        [np.array([0.0, 0.0]), np.array([1.0, 1.0])], [0.5, 1.0, 2.0]
    )
    _, e1 = exhaustive_search(data, grid)
    _, e2 = exhaustive_search(flipped, grid)
    assert e1 == pytest.approx(e2)


def test_exhaustive_matches_bruteforce():
    # returned error equals the min over every (region, threshold, sign) outcome
    data = random_dataset(7)
    centers = [np.array([0.0, 0.0]), np.array([0.5, 1.0]), np.array([1.5, 0.0])]
    radii = [0.5, 1.0, 1.5]
    thresholds = (0.5, 1.5, 2.5)
    grid = GridSpec.balls(centers, radii, thresholds=thresholds)
    h, err = exhaustive_search(data, grid)
    best = min(
        weighted_error(WeakClassifier(A, t, s), data)
        for A in grid.regions
        for t in thresholds
        for s in (1, -1)
    )
    assert err == pytest.approx(best)
    assert weighted_error(h, data) == pytest.approx(err)


def test_exhaustive_reported_error_is_true_error():
    # masses tie with quantile thresholds often; the search must score the
    # same strict rule predict() applies
    for seed in range(5):
        data = random_dataset(seed, n=16, pts=3)
        grid = GridSpec.balls([np.array([0.5, 0.5])], [0.7, 1.2])
        h, err = exhaustive_search(data, grid)
        assert err == pytest.approx(weighted_error(h, data))


def test_exhaustive_weighted():
    data = separable_toy()
    n = len(data)
    w = np.zeros(n)
    w[0] = 1.0  # all weight on one example
    grid = GridSpec.balls([np.array([0.5, 0.5])], [1.0], thresholds=(0.5,))
    _, err = exhaustive_search(data, grid, w=w)
    assert err == 0.0
    with pytest.raises(ValueError):
        exhaustive_search(data, grid, w=np.full(n, 1.0))  # does not sum to 1


def test_default_thresholds_cover_extremes():
    masses = np.array([0.0, 1.0, 3.0, 3.0, 7.0])
    thr = default_thresholds(masses)
    assert thr.min() == 0.0 and thr.max() == 7.0
    assert np.all(np.diff(thr) > 0)


def test_kmeans_deterministic_and_reasonable():
    rng = np.random.default_rng(0)
    pts = np.vstack([rng.normal(0, 0.1, size=(30, 2)), rng.normal(5, 0.1, size=(30, 2))])
    c1 = kmeans_centers(pts, 2, seed=3)
    c2 = kmeans_centers(pts, 2, seed=3)
    np.testing.assert_array_equal(c1, c2)
    centers = sorted(c1.tolist())
    assert np.linalg.norm(np.array(centers[0])) < 0.5
    assert np.linalg.norm(np.array(centers[1]) - 5) < 0.5


def test_kmeans_k_too_large():
    with pytest.raises(ValueError):
        kmeans_centers(np.zeros((2, 2)), 3)


# --- smoothed objective -----------------------------------------------------


def test_cross_entropy_loss_positive():
    data = random_dataset(1, n=6)
    p = SmoothParams(np.zeros(2), 1.0, 1.0, 0.5)
    assert cross_entropy_loss(p, data) > 0


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(2)
    data = random_dataset(3, n=5, pts=3)
    p = SmoothParams(rng.normal(size=2), 0.8, 1.2, 0.6)
    gc, gr, gs, gsig = cross_entropy_grad(p, data)
    eps = 1e-5

    def loss_at(center, radius, threshold, scale):
        return cross_entropy_loss(SmoothParams(center, radius, threshold, scale), data)

    for j in range(2):
        dv = np.zeros(2)
        dv[j] = eps
        fd = (loss_at(p.center + dv, p.radius, p.threshold, p.scale)
              - loss_at(p.center - dv, p.radius, p.threshold, p.scale)) / (2 * eps)
        assert gc[j] == pytest.approx(fd, rel=1e-4, abs=1e-7)
    fd_r = (loss_at(p.center, p.radius + eps, p.threshold, p.scale)
            - loss_at(p.center, p.radius - eps, p.threshold, p.scale)) / (2 * eps)
    assert gr == pytest.approx(fd_r, rel=1e-4, abs=1e-7)
    fd_s = (loss_at(p.center, p.radius, p.threshold + eps, p.scale)
            - loss_at(p.center, p.radius, p.threshold - eps, p.scale)) / (2 * eps)
    assert gs == pytest.approx(fd_s, rel=1e-4, abs=1e-7)
    fd_sig = (loss_at(p.center, p.radius, p.threshold, p.scale + eps)
              - loss_at(p.center, p.radius, p.threshold, p.scale - eps)) / (2 * eps)
    assert gsig == pytest.approx(fd_sig, rel=1e-4, abs=1e-7)


def test_smooth_train_separable_reaches_zero():
    data = separable_toy()
    cfg = SmoothTrainConfig(restarts=10, epochs=40, seed=1)
    h, err = smooth_train(data, cfg)
    assert err == 0.0
    assert weighted_error(h, data) == 0.0


def test_smooth_train_single_example():
    data = LabeledDataset((unit([[0.0, 0.0]]),), np.array([1]))
    _, err = smooth_train(data, SmoothTrainConfig(restarts=2, epochs=10, seed=0))
    assert err == 0.0


def test_smooth_train_deterministic():
    data = random_dataset(11, n=8)
    cfg = SmoothTrainConfig(restarts=2, epochs=5, seed=42)
    h1, e1 = smooth_train(data, cfg)
    h2, e2 = smooth_train(data, cfg)
    assert e1 == e2
    np.testing.assert_array_equal(h1.region.center, h2.region.center)
    assert (h1.region.radius, h1.threshold, h1.sign) == (h2.region.radius, h2.threshold, h2.sign)


def test_smooth_train_loss_descends():
    # a couple of plain gradient steps from a fixed start lower the loss
    data = separable_toy()
    p = SmoothParams(np.array([1.5, 1.5]), 1.0, 2.0, 0.5)
    losses = [cross_entropy_loss(p, data)]
    for _ in range(5):
        gc, gr, gs, gsig = cross_entropy_grad(p, data)
        p = SmoothParams(
            p.center - 0.01 * gc,
            max(0.0, p.radius - 0.01 * gr),
            p.threshold - 0.01 * gs,
            max(1e-3, p.scale - 0.01 * gsig),
        )
        losses.append(cross_entropy_loss(p, data))
    assert losses[-1] < losses[0]


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=20, deadline=None)
def test_weak_json_roundtrip(seed):
    rng = np.random.default_rng(seed)
    h = WeakClassifier(
        Ball(rng.normal(size=3), float(rng.uniform(0, 2))),
        float(rng.normal()),
        int(rng.choice([-1, 1])),
    )
    back = WeakClassifier.from_json(h.to_json())
    np.testing.assert_array_equal(back.region.center, h.region.center)
    assert (back.region.radius, back.threshold, back.sign) == (
        h.region.radius,
        h.threshold,
        h.sign,
    )


def test_grid_rects_include_truncated_quadrants():
    grid = GridSpec.rects_from_axes([[0.0, 1.0], [0.0, 1.0]])
    assert any(np.isinf(r.maxs).any() for r in grid.regions)
    assert all(np.all(r.mins <= r.maxs) for r in grid.regions)
