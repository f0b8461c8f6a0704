import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from measureboost.ph.bottleneck import bottleneck, bottleneck_bruteforce
from measureboost.ph.diagrams import PersistenceDiagram


def random_diagram(rng, max_pts=5, p_inf=0.15):
    n = int(rng.integers(0, max_pts + 1))
    births = rng.uniform(0, 1, size=n)
    deaths = births + rng.uniform(0, 1, size=n)
    deaths[rng.uniform(size=n) < p_inf] = np.inf
    return PersistenceDiagram(1, np.column_stack([births, deaths]).reshape(-1, 2))


def test_identical_diagrams_zero():
    d = PersistenceDiagram(1, np.array([[0.1, 0.8], [0.3, 0.4]]))
    assert bottleneck(d, d) == 0.0


def test_empty_vs_one_point():
    e = PersistenceDiagram(1, np.empty((0, 2)))
    d = PersistenceDiagram(1, np.array([[0.0, 1.0]]))
    # unmatched point goes to the diagonal at half its persistence
    assert bottleneck(e, d) == pytest.approx(0.5)
    assert bottleneck(e, e) == 0.0


def test_hand_worked_shift():
    d1 = PersistenceDiagram(1, np.array([[0.0, 1.0]]))
    d2 = PersistenceDiagram(1, np.array([[0.1, 1.2]]))
    # match cost max(0.1, 0.2) = 0.2 beats killing both (0.5 vs 0.55)
    assert bottleneck(d1, d2) == pytest.approx(0.2)


def test_essential_count_mismatch_is_inf():
    d1 = PersistenceDiagram(0, np.array([[0.0, np.inf]]))
    d2 = PersistenceDiagram(0, np.array([[0.0, np.inf], [0.0, np.inf]]))
    assert bottleneck(d1, d2) == np.inf


def test_essential_points_match_on_birth():
    d1 = PersistenceDiagram(0, np.array([[0.0, np.inf], [0.2, 0.5]]))
    d2 = PersistenceDiagram(0, np.array([[0.3, np.inf], [0.2, 0.5]]))
    assert bottleneck(d1, d2) == pytest.approx(0.3)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=200, deadline=None)
def test_matches_bruteforce(seed):
    rng = np.random.default_rng(seed)
    d1 = random_diagram(rng)
    d2 = random_diagram(rng)
    fast = bottleneck(d1, d2)
    slow = bottleneck_bruteforce(d1, d2)
    if np.isinf(slow):
        assert np.isinf(fast)
    else:
        assert fast == pytest.approx(slow, abs=1e-12)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=60, deadline=None)
def test_pseudometric_properties(seed):
    rng = np.random.default_rng(seed)
    d1 = random_diagram(rng, p_inf=0.0)
    d2 = random_diagram(rng, p_inf=0.0)
    d3 = random_diagram(rng, p_inf=0.0)
    ab = bottleneck(d1, d2)
    ba = bottleneck(d2, d1)
    assert ab == pytest.approx(ba, abs=1e-12)
    assert ab >= 0
    ac = bottleneck(d1, d3)
    cb = bottleneck(d3, d2)
    assert ab <= ac + cb + 1e-9
    assert bottleneck(d1, d1) == 0.0
