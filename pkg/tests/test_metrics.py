import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supertok.metrics import (
    LineStats,
    MetricError,
    TokenHistogram,
    bytes_per_token,
    count_words,
    fertility,
    nsl,
    renyi_efficiency,
    renyi_entropy,
)

L = LineStats


def test_fertility_examples():
    assert fertility([L(5, 2, 10)]) == 2.5
    assert fertility([L(3, 3, 0), L(9, 3, 0)]) == 2.0
    assert fertility([L(3, 3, 0), L(9, 3, 0)], micro=False) == 2.0
    assert fertility([L(2, 1, 0), L(2, 2, 0)]) == pytest.approx(4 / 3)
    assert fertility([L(2, 1, 0), L(2, 2, 0)], micro=False) == 1.5
    assert fertility([L(4, 4, 0), L(1, 1, 0)]) == 1.0


def test_fertility_skips_wordless_lines():
    assert fertility([L(3, 0, 3), L(4, 2, 8)]) == 2.0


def test_fertility_no_words():
    with pytest.raises(MetricError, match="no words"):
        fertility([L(2, 0, 2)])
    with pytest.raises(MetricError, match="no words"):
        fertility([])


def test_nsl_examples():
    a = [L(4, 2, 8), L(6, 3, 9)]
    assert nsl(a, a) == 1.0
    assert nsl([L(2, 2, 8), L(3, 3, 9)], a) == 0.5
    with pytest.raises(MetricError):
        nsl(a, a[:1])
    with pytest.raises(MetricError):
        nsl(a, [L(0, 2, 8), L(0, 3, 9)])


def test_nsl_rejects_different_lines():
    with pytest.raises(MetricError):
        nsl([L(2, 1, 3)], [L(2, 1, 4)])


def test_bytes_per_token():
    assert bytes_per_token([L(1, 1, 2)]) == 2.0
    assert bytes_per_token([L(7, 2, 7), L(3, 1, 3)]) == 1.0
    with pytest.raises(MetricError):
        bytes_per_token([L(0, 0, 0)])


@pytest.mark.parametrize("text, n", [("a b  c", 3), ("", 0), ("  \t", 0), ("नमस्ते दुनिया", 2), ("a　b", 2)])
def test_count_words(text, n):
    assert count_words(text) == n


@pytest.mark.parametrize("alpha", [0.5, 1, 2, 2.5, 7])
def test_uniform_over_eight(alpha):
    assert renyi_entropy({i: 5 for i in range(8)}, alpha) == pytest.approx(3.0, abs=1e-12)


def test_entropy_degenerate_and_errors():
    assert renyi_entropy({3: 10}, 2.5) == 0.0
    assert renyi_entropy({3: 10}, 1) == 0.0
    with pytest.raises(MetricError):
        renyi_entropy({1: 1}, 0)
    with pytest.raises(MetricError):
        renyi_entropy({}, 2)
    assert renyi_entropy({1: 2, 2: 0, 3: 2}, 2) == pytest.approx(1.0)


def test_efficiency_examples():
    assert renyi_efficiency({i: 1 for i in range(16)}, 2.5, 16) == pytest.approx(1.0)
    assert renyi_efficiency({0: 9}, 2.5, 16) == 0.0
    for k in (3, 5, 8):
        half = {i: 1 for i in range(2 ** (k - 1))}
        assert renyi_efficiency(half, 2.5, 2**k) == pytest.approx((k - 1) / k)
    with pytest.raises(MetricError):
        renyi_efficiency({0: 1}, 2.5, 1)


def test_histogram():
    h = TokenHistogram.from_sequences([[1, 2, 2], [2, 3]])
    assert h == {1: 1, 2: 3, 3: 1}
    assert h.total() == 5
    assert h.probabilities().sum() == pytest.approx(1.0)


histograms = st.lists(st.integers(0, 1000), min_size=1, max_size=40).filter(lambda c: sum(c) > 0)


@settings(max_examples=200)
@given(histograms, st.floats(0.05, 20), st.floats(0.05, 20))
def test_renyi_nonincreasing_in_alpha(counts, a, b):
    lo, hi = sorted((a, b))
    assert renyi_entropy(counts, hi) <= renyi_entropy(counts, lo) + 1e-9


@given(histograms)
def test_renyi_near_one_matches_shannon(counts):
    assert abs(renyi_entropy(counts, 1.001) - renyi_entropy(counts, 1)) < 1e-3


@given(histograms)
def test_shannon_matches_direct_formula(counts):
    total = sum(counts)
    direct = -sum(c / total * math.log2(c / total) for c in counts if c)
    assert renyi_entropy(counts, 1) == pytest.approx(direct, abs=1e-9)


def test_large_alpha_stays_finite():
    counts = np.array([1, 10**6, 3])
    assert math.isfinite(renyi_entropy(counts, 500))
