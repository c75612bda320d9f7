"""
Test interval entropies, union matchings, mutual/tripartite information and the EWCS proxy
"""
import math

import numpy as np
import pytest

from lib.errors import DomainError
from lib.geometry import BulkGeometry, UnitsConvention
from lib.measures import (
    IntervalSet,
    Phase,
    entanglement_entropy_interval,
    entanglement_wedge_cross_section,
    multipartite_correlation,
    multipartite_phase,
    mutual_information,
    n_partite_information,
    negativity_proxy,
    tripartite_information,
    union_entropy_intervals,
)
from lib.minimal_surface import entropy_of_strip

EPS = 0.01
TRIPLE = ((0.0, 1.0), (1.1, 2.1), (2.2, 3.2))


@pytest.fixture
def vacuum():
    return BulkGeometry.pure_ads(d=2)


@pytest.fixture
def btz():
    return BulkGeometry.black_brane(z_h=1.0, d=2)


def random_pair(rng):
    la, lb, gap = rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0), rng.uniform(0.05, 2.0)
    start = rng.uniform(-1.0, 1.0)
    return (start, start + la), (start + la + gap, start + la + gap + lb)


def random_triple(rng):
    lengths = rng.uniform(0.1, 1.5, size=3)
    gaps = rng.uniform(0.05, 1.0, size=2)
    a = (0.0, lengths[0])
    b = (a[1] + gaps[0], a[1] + gaps[0] + lengths[1])
    c = (b[1] + gaps[1], b[1] + gaps[1] + lengths[2])
    return a, b, c


def enumerate_matchings(points):
    """Every non-crossing perfect matching of points on a line"""
    if not points:
        yield []
        return
    for k in range(1, len(points), 2):
        for inside in enumerate_matchings(points[1:k]):
            for outside in enumerate_matchings(points[k + 1:]):
                yield [(points[0], points[k])] + inside + outside


def test_interval_set_validation():
    with pytest.raises(DomainError):
        IntervalSet.of((0.0, 1.0), (0.5, 2.0))
    with pytest.raises(DomainError):
        IntervalSet.of((2.0, 3.0), (0.0, 1.0))
    with pytest.raises(DomainError):
        IntervalSet.of((1.0, 1.0))
    with pytest.raises(DomainError):
        IntervalSet.of((0.0, math.inf))
    regions = IntervalSet.from_lengths([1.0, 1.0], 0.1)
    assert regions.intervals == ((0.0, 1.0), (1.1, 2.1))
    assert regions.gaps == pytest.approx((0.1,))


def test_interval_entropy(vacuum, btz):
    assert entanglement_entropy_interval(vacuum, (0.0, 1.0), EPS) == pytest.approx(9.210340, abs=1e-6)
    assert entanglement_entropy_interval(vacuum, (5.0, 6.0), EPS) == entanglement_entropy_interval(vacuum, (0.0, 1.0), EPS)
    assert entanglement_entropy_interval(btz, (0.0, 1.0), EPS) == pytest.approx(9.292990, abs=1e-6)


def test_interval_measures_need_d2():
    with pytest.raises(DomainError):
        entanglement_entropy_interval(BulkGeometry.pure_ads(d=3), (0.0, 1.0), EPS)


def test_union_of_one_interval(vacuum):
    union = union_entropy_intervals(vacuum, IntervalSet.of((0.0, 1.5)), EPS)
    assert union.entropy == entanglement_entropy_interval(vacuum, (0.0, 1.5), EPS)
    assert union.matching == ((0.0, 1.5),)


def test_union_far_intervals_disconnect(vacuum):
    regions = IntervalSet.from_lengths([1.0, 1.0], 1.0)
    union = union_entropy_intervals(vacuum, regions, EPS)
    assert union.entropy == pytest.approx(2.0 * 2.0 * math.log(1.0 / EPS), rel=1e-9)
    assert set(union.matching) == set(regions.intervals)


def test_union_three_intervals(vacuum):
    union = union_entropy_intervals(vacuum, IntervalSet(TRIPLE), EPS)
    assert union.entropy == pytest.approx(20.746980, abs=1e-5)
    assert set(union.matching) == {(0.0, 3.2), (1.0, 1.1), (2.1, 2.2)}


def test_union_matches_enumeration_oracle(vacuum, btz):
    rng = np.random.default_rng(7)
    for geom in (vacuum, btz):
        for _ in range(12):
            n = int(rng.integers(1, 5))
            lengths = rng.uniform(0.1, 1.5, size=n)
            gaps = rng.uniform(0.05, 1.0, size=n)
            intervals, left = [], 0.0
            for length, gap in zip(lengths, gaps):
                intervals.append((left, left + length))
                left += length + gap
            regions = IntervalSet(tuple(intervals))

            oracle = min(
                sum(entropy_of_strip(geom, b - a, EPS).entropy for a, b in matching)
                for matching in enumerate_matchings(list(regions.endpoints))
            )
            assert union_entropy_intervals(geom, regions, EPS).entropy == pytest.approx(oracle, abs=1e-10)


def test_union_size_limit(vacuum):
    with pytest.raises(DomainError):
        union_entropy_intervals(vacuum, IntervalSet.from_lengths([0.5] * 9, 0.5), EPS)


def test_mutual_information_vacuum(vacuum):
    result = mutual_information(vacuum, (0.0, 1.0), (1.1, 2.1), EPS)
    assert result.value == pytest.approx(3.121295, abs=1e-5)
    assert result.value == pytest.approx(2.0 * math.log(1.0 / (0.1 * 2.1)), rel=1e-8)
    assert result.phase is Phase.CONNECTED
    assert result.cutoff == EPS
    assert result.geometry_id == vacuum.geometry_id


def test_mutual_information_disconnected(vacuum):
    result = mutual_information(vacuum, (0.0, 1.0), (2.0, 3.0), EPS)
    assert result.value == 0.0
    assert result.phase is Phase.DISCONNECTED
    assert result.raw_value == pytest.approx(0.0, abs=1e-9)


def test_mutual_information_btz(btz):
    expected = 2.0 * (2.0 * math.log(math.sinh(0.5)) - math.log(math.sinh(0.05)) - math.log(math.sinh(1.05)))
    result = mutual_information(btz, (0.0, 1.0), (1.1, 2.1), EPS)
    assert result.value == pytest.approx(expected, rel=1e-7)
    assert result.value == pytest.approx(2.930894, abs=1e-5)


def test_mutual_information_is_cutoff_independent(vacuum, btz):
    for geom in (vacuum, btz):
        coarse = mutual_information(geom, (0.0, 1.0), (1.1, 2.1), 1e-2).value
        fine = mutual_information(geom, (0.0, 1.0), (1.1, 2.1), 1e-3).value
        assert abs(coarse - fine) < 1e-6


def test_mutual_information_symmetric_and_nonnegative(vacuum, btz):
    rng = np.random.default_rng(11)
    for geom in (vacuum, btz):
        for _ in range(500):
            A, B = random_pair(rng)
            forward = mutual_information(geom, A, B, EPS)
            backward = mutual_information(geom, B, A, EPS)
            assert forward.value == backward.value
            assert forward.phase is backward.phase
            assert forward.value >= 0.0


def test_mutual_information_decreases_with_gap(vacuum):
    values = [
        mutual_information(vacuum, (0.0, 1.0), (1.0 + gap, 2.0 + gap), EPS).value
        for gap in np.linspace(0.05, 1.5, 50)
    ]
    assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))
    assert values[-1] == 0.0


def test_ewcs_symmetric_configuration(vacuum):
    value = entanglement_wedge_cross_section(vacuum, (-2.2, -0.2), (0.2, 2.2))
    assert value == pytest.approx(math.log(11.0), abs=1e-4)
    assert entanglement_wedge_cross_section(vacuum, (0.2, 2.2), (-2.2, -0.2)) == value


def btz_ewcs(length_a, length_b, gap):
    """Closed form at z_h = 1 through the thermal cross ratio"""
    x = (math.sinh(length_a / 2.0) * math.sinh(length_b / 2.0)
         / (math.sinh(gap / 2.0) * math.sinh((length_a + length_b + gap) / 2.0)))
    return math.log(1.0 + 2.0 * x + 2.0 * math.sqrt(x * (x + 1.0)))


@pytest.mark.parametrize("length_a,length_b,gap", [
    (4.0, 4.0, 0.5),
    (3.0, 3.0, 0.5),
    (1.0, 2.0, 0.2),
])
def test_ewcs_btz_matches_closed_form(btz, length_a, length_b, gap):
    A = (0.0, length_a)
    B = (length_a + gap, length_a + gap + length_b)
    value = entanglement_wedge_cross_section(btz, A, B)
    assert value == pytest.approx(btz_ewcs(length_a, length_b, gap), abs=1e-6)


def test_ewcs_btz_near_horizon_reference(btz):
    assert entanglement_wedge_cross_section(btz, (0.0, 4.0), (4.5, 8.5)) == pytest.approx(2.056101, abs=1e-6)


def test_ewcs_vanishes_when_disconnected(vacuum):
    assert entanglement_wedge_cross_section(vacuum, (0.0, 1.0), (2.0, 3.0)) == 0.0


def test_ewcs_hard_wall_ends_on_wall():
    geom = BulkGeometry.hard_wall(z_w=0.3)
    value = entanglement_wedge_cross_section(geom, (0.0, 0.225), (0.275, 0.5))
    assert value == pytest.approx(math.log(12.0), abs=1e-4)


def test_negativity_proxy(vacuum):
    result = negativity_proxy(vacuum, (-2.2, -0.2), (0.2, 2.2))
    assert result.value == pytest.approx(3.596843, abs=2e-4)
    assert result.phase is Phase.CONNECTED

    doubled = negativity_proxy(vacuum, (-2.2, -0.2), (0.2, 2.2), units=UnitsConvention(four_G_N=2.0))
    assert doubled.value == pytest.approx(result.value / 2.0, rel=1e-12)

    off = negativity_proxy(vacuum, (0.0, 1.0), (2.0, 3.0))
    assert off.value == 0.0
    assert off.phase is Phase.DISCONNECTED


def test_negativity_and_mi_vanish_together(vacuum):
    rng = np.random.default_rng(3)
    for _ in range(20):
        A, B = random_pair(rng)
        mi = mutual_information(vacuum, A, B, EPS).value
        proxy = negativity_proxy(vacuum, A, B).value
        assert (proxy > 0.0) == (mi > 0.0)


def test_negativity_proxy_is_nonnegative(vacuum, btz):
    rng = np.random.default_rng(23)
    for geom in (vacuum, btz):
        for _ in range(15):
            A, B = random_pair(rng)
            assert negativity_proxy(geom, A, B).value >= 0.0


def test_multipartite_correlation_is_nonnegative(vacuum, btz):
    rng = np.random.default_rng(29)
    for geom in (vacuum, btz):
        for _ in range(200):
            assert multipartite_correlation(geom, *random_triple(rng), EPS) >= 0.0


def test_tripartite_information(vacuum):
    i3 = tripartite_information(vacuum, *TRIPLE, EPS)
    assert i3 == pytest.approx(-0.641448, abs=1e-5)
    assert multipartite_correlation(vacuum, *TRIPLE, EPS) == pytest.approx(0.641448, abs=1e-5)
    assert multipartite_phase(vacuum, *TRIPLE, EPS) is Phase.CONNECTED


def test_tripartite_information_far_apart(vacuum):
    far = ((0.0, 0.1), (1.0, 1.1), (2.0, 2.1))
    assert tripartite_information(vacuum, *far, EPS) == pytest.approx(0.0, abs=1e-10)
    assert multipartite_correlation(vacuum, *far, EPS) == pytest.approx(0.0, abs=1e-10)
    assert multipartite_phase(vacuum, *far, EPS) is Phase.DISCONNECTED


def test_tripartite_information_is_cutoff_independent(vacuum):
    coarse = tripartite_information(vacuum, *TRIPLE, 1e-2)
    fine = tripartite_information(vacuum, *TRIPLE, 1e-3)
    assert abs(coarse - fine) < 1e-6


def test_monogamy_of_mutual_information(vacuum, btz):
    rng = np.random.default_rng(5)
    for geom in (vacuum, btz):
        for _ in range(500):
            assert tripartite_information(geom, *random_triple(rng), EPS) <= 1e-10


def test_n_partite_information(vacuum):
    single = IntervalSet.of((0.0, 1.0))
    assert n_partite_information(vacuum, single, EPS) == entanglement_entropy_interval(vacuum, (0.0, 1.0), EPS)

    pair = IntervalSet.of((0.0, 1.0), (1.1, 2.1))
    assert n_partite_information(vacuum, pair, EPS) == pytest.approx(3.121295, abs=1e-5)

    assert n_partite_information(vacuum, IntervalSet(TRIPLE), EPS) == pytest.approx(-0.641448, abs=1e-5)

    four = IntervalSet.from_lengths([1.0] * 4, 0.1)
    assert math.isfinite(n_partite_information(vacuum, four, EPS))

    with pytest.raises(DomainError):
        n_partite_information(vacuum, IntervalSet.from_lengths([1.0] * 5, 0.1), EPS)
