import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from measureboost.measures import Measure
from measureboost.ph import cech_filtration, persistence, rips_filtration
from measureboost.ph.complexes import miniball_radius
from measureboost.ph.diagrams import (
    PersistenceDiagram,
    diagram_to_measure,
    load_diagrams_jsonl,
    persistence_weight,
    rotate_diagram,
    save_diagrams_jsonl,
)
from measureboost.ph.persistence import betti_oracle


def equilateral():
    return np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2]])


def test_equilateral_golden_values():
    fc = cech_filtration(equilateral(), max_dim=2, max_value=np.inf)
    dgms = persistence(fc)
    d1 = next(d for d in dgms if d.dim == 1)
    assert d1.pairs.shape == (1, 2)
    birth, death = d1.pairs[0]
    assert birth == pytest.approx(0.5, abs=1e-9)
    assert death == pytest.approx(1 / np.sqrt(3), abs=1e-9)


def test_two_points_h0():
    pts = np.array([[0.0, 0.0], [2.0, 0.0]])
    fc = cech_filtration(pts, max_dim=1, max_value=np.inf)
    d0 = next(d for d in persistence(fc) if d.dim == 0)
    finite = d0.pairs[np.isfinite(d0.pairs[:, 1])]
    essential = d0.pairs[~np.isfinite(d0.pairs[:, 1])]
    assert len(essential) == 1
    assert finite[0][1] == pytest.approx(1.0)  # merge at half the distance


def test_filtration_monotone_and_sorted():
    rng = np.random.default_rng(0)
    fc = cech_filtration(rng.normal(size=(10, 3)), max_dim=3, max_value=1.5)
    fc.check_monotone()  # raises on a face/value violation
    vals = [v for _, v in fc.simplices]
    assert vals == sorted(vals)


def test_rips_matches_cech_on_edges():
    rng = np.random.default_rng(1)
    pts = rng.normal(size=(8, 2))
    c = cech_filtration(pts, max_dim=1, max_value=np.inf)
    r = rips_filtration(pts, max_dim=1, max_value=np.inf)
    ce = {v: val for v, val in c.simplices if len(v) == 2}
    re = {v: val for v, val in r.simplices if len(v) == 2}
    assert ce.keys() == re.keys()
    for k in ce:
        assert ce[k] == pytest.approx(re[k], abs=1e-12)


def test_rips_triangle_value_is_half_diameter():
    pts = equilateral()
    r = rips_filtration(pts, max_dim=2, max_value=np.inf)
    tri = next(s for s in r.simplices if len(s[0]) == 3)
    assert tri[1] == pytest.approx(0.5)


def test_miniball_obtuse_triangle():
    # obtuse: minimal enclosing ball is the half longest edge
    pts = np.array([[0.0, 0.0], [4.0, 0.0], [1.0, 0.3]])
    assert miniball_radius(pts) == pytest.approx(2.0, abs=1e-9)


def test_max_value_truncates():
    rng = np.random.default_rng(2)
    pts = rng.normal(size=(12, 2))
    fc = cech_filtration(pts, max_dim=2, max_value=0.4)
    assert all(v <= 0.4 for _, v in fc.simplices)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=15, deadline=None)
def test_diagram_counts_match_betti_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 8))
    d = int(rng.choice([2, 3]))
    pts = rng.uniform(0, 1, size=(n, d))
    fc = cech_filtration(pts, max_dim=min(d + 1, 3), max_value=np.inf)
    dgms = persistence(fc, include_zero_length=True)
    scales = np.linspace(0.05, 1.2, 7)
    for dg in dgms:
        for r in scales:
            assert dg.persistent_betti(r) == betti_oracle(fc, r, dg.dim)


def test_include_zero_length_flag():
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    fc = cech_filtration(pts, max_dim=2, max_value=np.inf)
    strict = persistence(fc)
    loose = persistence(fc, include_zero_length=True)
    for dg in strict:
        finite = dg.pairs[np.isfinite(dg.pairs[:, 1])]
        assert np.all(finite[:, 1] > finite[:, 0])
    n_strict = sum(len(d.pairs) for d in strict)
    n_loose = sum(len(d.pairs) for d in loose)
    assert n_loose >= n_strict


def test_duplicate_points_are_handled():
    pts = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    fc = cech_filtration(pts, max_dim=2, max_value=np.inf)
    dgms = persistence(fc)
    d0 = next(d for d in dgms if d.dim == 0)
    assert np.sum(~np.isfinite(d0.pairs[:, 1])) == 1  # one essential component


def test_stability_smoke():
    # tiny perturbations move the H1 diagram by at most a comparable amount
    from measureboost.ph.bottleneck import bottleneck

    rng = np.random.default_rng(5)
    theta = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    pts = np.column_stack([np.cos(theta), np.sin(theta)])
    noisy = pts + rng.normal(scale=1e-3, size=pts.shape)
    d1 = next(d for d in persistence(cech_filtration(pts, 2, np.inf)) if d.dim == 1)
    d1n = next(d for d in persistence(cech_filtration(noisy, 2, np.inf)) if d.dim == 1)
    assert bottleneck(d1, d1n) < 5e-3


def test_rotate_diagram_and_measure():
    dg = PersistenceDiagram(1, np.array([[0.2, 0.9], [0.1, np.inf]]))
    m = rotate_diagram(dg, truncation=2.0)
    assert isinstance(m, Measure)
    got = sorted(map(tuple, m.points.tolist()))
    assert got == [(0.1, pytest.approx(1.9)), (0.2, pytest.approx(0.7))]


def test_diagram_to_measure_requires_truncation_for_inf():
    dg = PersistenceDiagram(0, np.array([[0.0, np.inf]]))
    with pytest.raises(ValueError):
        diagram_to_measure(dg)


def test_persistence_weighting():
    dg = PersistenceDiagram(1, np.array([[0.0, 2.0], [1.0, 1.5]]))
    m = diagram_to_measure(dg, weight=persistence_weight(2.0))
    np.testing.assert_allclose(sorted(m.weights), [0.25, 4.0])


def test_diagrams_jsonl_roundtrip(tmp_path):
    dgs = [
        PersistenceDiagram(0, np.array([[0.0, 1.0], [0.0, np.inf]])),
        PersistenceDiagram(1, np.array([[0.5, 0.75]])),
    ]
    path = tmp_path / "d.jsonl"
    save_diagrams_jsonl(dgs, path, metas=[{"cloud": 0}, {"cloud": 0}])
    back, metas = load_diagrams_jsonl(path)
    assert [d.dim for d in back] == [0, 1]
    np.testing.assert_array_equal(back[0].pairs, dgs[0].pairs)
    assert metas[0] == {"cloud": 0}


def test_persistent_betti_counts_open_interval():
    dg = PersistenceDiagram(0, np.array([[0.0, 1.0], [0.0, np.inf]]))
    assert dg.persistent_betti(0.5) == 2
    assert dg.persistent_betti(1.0) == 1  # death at exactly r is dead
    assert dg.persistent_betti(5.0) == 1
