import io
import math

import numpy as np
import pytest
from scipy.optimize import linprog

from conftest import random_rotation
from zonolab.errors import DegenerateZonotopeError
from zonolab.errors import ParameterRangeError
from zonolab.functionals import intrinsic_volume
from zonolab.geometry import ball_intrinsic_volume
from zonolab.radii import circumradius
from zonolab.radii import inradius
from zonolab.stochastic import BOUNDS_FROM_N
from zonolab.stochastic import MCEstimate
from zonolab.stochastic import ProbeFamily
from zonolab.stochastic import asymptotic_probe
from zonolab.stochastic import cauchy_surface_integral
from zonolab.stochastic import expected_random_wedge
from zonolab.stochastic import expected_volume_random_zonotope
from zonolab.stochastic import fit_decay_exponent
from zonolab.stochastic import kubota_constant
from zonolab.stochastic import kubota_intrinsic_integral
from zonolab.stochastic import polarization_asymptotic
from zonolab.stochastic import random_wedge_constant
from zonolab.stochastic import regular_polygon_gaps
from zonolab.stochastic import steiner_mc_volume
from zonolab.stochastic import u_d
from zonolab.stochastic import write_estimates_csv
from zonolab.stochastic import write_probe_csv
from zonolab.stochastic import zonotope_distance
from zonolab.zonotope import GeneratorSet
from zonolab.zonotope import make_cube
from zonolab.zonotope import make_regular_zonogon
from zonolab.zonotope import rotate


class TestMCEstimate:
    def test_from_values(self):
        estimate = MCEstimate.from_values("x", np.array([1.0, 2.0, 3.0, 4.0]), 5, 2.5)

        assert estimate.mean == 2.5
        assert estimate.std_error == pytest.approx(np.std([1, 2, 3, 4], ddof=1) / 2)
        assert estimate.samples == 4
        assert estimate.deviation == 0.0
        assert estimate.agrees()

    def test_without_closed_form(self):
        estimate = MCEstimate.from_values("x", np.ones(3), 0)

        assert estimate.deviation is None
        assert not estimate.agrees()

    def test_exact_mismatch(self):
        assert MCEstimate.from_values("x", np.ones(3), 0, 2.0).deviation == math.inf


class TestRandomWedge:
    def test_constants(self):
        assert random_wedge_constant(2) == pytest.approx(2 / math.pi)
        assert random_wedge_constant(3) == pytest.approx(math.pi / 8)

    @pytest.mark.parametrize("d", [2, 3])
    def test_estimate(self, d):
        estimate = expected_random_wedge(d, 100_000, seed=11)

        assert estimate.agrees()
        assert estimate.samples == 100_000

    def test_reproducible(self):
        first = expected_random_wedge(3, 10_000, seed=4, workers=1)
        second = expected_random_wedge(3, 10_000, seed=4, workers=3)

        assert first == second

    def test_seed_matters(self):
        assert expected_random_wedge(2, 5000, seed=1).mean != expected_random_wedge(
            2, 5000, seed=2
        ).mean

    def test_too_few_samples(self):
        with pytest.raises(ParameterRangeError):
            expected_random_wedge(2, 999)

    def test_dimension(self):
        with pytest.raises(ParameterRangeError):
            expected_random_wedge(1, 1000)


class TestRandomZonotopeVolume:
    def test_hexagons(self):
        estimate = expected_volume_random_zonotope(6, 2, 10_000, seed=3)

        assert estimate.closed_form == pytest.approx(15 * 2 / math.pi)
        assert estimate.agrees()

    def test_single_subset(self):
        estimate = expected_volume_random_zonotope(3, 3, 2000, seed=3)

        assert estimate.closed_form == pytest.approx(math.pi / 8)

    def test_range(self):
        with pytest.raises(ParameterRangeError):
            expected_volume_random_zonotope(2, 3)


class TestCauchy:
    def test_cube(self, cube3):
        estimate = cauchy_surface_integral(cube3, 10_000, seed=5)

        assert estimate.closed_form == pytest.approx(6.0)
        assert estimate.agrees()

    def test_square(self, unit_square):
        estimate = cauchy_surface_integral(unit_square, 10_000, seed=5)

        assert estimate.closed_form == pytest.approx(4.0)
        assert estimate.agrees()

    def test_rotation(self, cube3, rng):
        turned = rotate(cube3, random_rotation(rng, 3))
        first = cauchy_surface_integral(cube3, 10_000, seed=8)
        second = cauchy_surface_integral(turned, 10_000, seed=9)

        assert abs(first.mean - second.mean) <= 4 * math.hypot(
            first.std_error, second.std_error
        )

    def test_flat(self):
        with pytest.raises(DegenerateZonotopeError):
            cauchy_surface_integral(GeneratorSet([[1, 0, 0], [0, 1, 0]]), 100)


class TestKubota:
    def test_constant(self):
        assert kubota_constant(3, 1, 2) == pytest.approx(4 / math.pi)

    def test_cube_mean_width(self, cube3):
        estimate = kubota_intrinsic_integral(cube3, 1, 2, 10_000, seed=6)

        assert estimate.closed_form == pytest.approx(3.0)
        assert estimate.agrees()

    def test_random_body(self, rng):
        gs = GeneratorSet(rng.standard_normal((5, 4)))
        estimate = kubota_intrinsic_integral(gs, 2, 3, 10_000, seed=6)

        assert estimate.agrees()

    def test_full_subspace_dimension(self, rng):
        gs = GeneratorSet(rng.standard_normal((4, 3)))

        assert kubota_intrinsic_integral(gs, 2, 2, 10_000, seed=1).agrees()

    def test_range(self, cube3):
        with pytest.raises(ParameterRangeError):
            kubota_intrinsic_integral(cube3, 2, 3)

        with pytest.raises(ParameterRangeError):
            kubota_intrinsic_integral(cube3, 2, 1)


def lp_contains(gs: GeneratorSet, point: np.ndarray) -> bool:
    result = linprog(
        np.zeros(gs.n),
        A_eq=gs.generators.T,
        b_eq=point,
        bounds=[(0.0, 1.0)] * gs.n,
        method="highs",
    )

    return result.status == 0


class TestDistance:
    def test_outside_point(self, cube3):
        certificate = zonotope_distance(cube3, np.array([[2.0, 0.5, 0.5]]))

        assert certificate.upper[0] == pytest.approx(1.0)
        assert certificate.lower[0] == pytest.approx(1.0)
        assert certificate.converged[0]

    def test_inside_point(self, cube3):
        certificate = zonotope_distance(cube3, np.array([[0.2, 0.7, 0.4]]))

        assert certificate.upper[0] == pytest.approx(0.0, abs=1e-12)
        assert certificate.within(0.0, 1e-12)[0] == 1.0

    def test_bracket(self, rng):
        gs = GeneratorSet(rng.standard_normal((4, 3)))
        certificate = zonotope_distance(gs, 3 * rng.standard_normal((200, 3)))

        assert np.all(certificate.lower <= certificate.upper)
        assert np.all(certificate.lower >= 0.0)

    @pytest.mark.parametrize(
        "generators",
        [
            [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]],
        ],
    )
    def test_membership_matches_lp(self, rng, generators):
        gs = GeneratorSet(generators)
        vectors = gs.generators
        low = np.minimum(vectors, 0.0).sum(axis=0)
        high = np.maximum(vectors, 0.0).sum(axis=0)
        points = low + (high - low) * rng.random((1000, gs.dim))

        decision = zonotope_distance(gs, points).within(0.0, 1e-12)
        decided = ~np.isnan(decision)

        assert decided.mean() >= 0.9

        for point, inside in zip(points[decided], decision[decided]):
            assert bool(inside) == lp_contains(gs, point)


class TestSteiner:
    def test_square(self, unit_square):
        estimate = steiner_mc_volume(unit_square, 1.0, 100_000, seed=2)

        assert estimate.closed_form == pytest.approx(5 + math.pi)
        assert estimate.mean == pytest.approx(5 + math.pi, rel=0.01)
        assert estimate.agrees()

    def test_cube(self, cube3):
        estimate = steiner_mc_volume(cube3, 0.5, 40_000, seed=2)

        assert estimate.mean == pytest.approx(estimate.closed_form, rel=0.01)

    def test_zero_radius(self, three_planar):
        estimate = steiner_mc_volume(three_planar, 0.0, 20_000, seed=2)

        assert estimate.closed_form == pytest.approx(3.0)
        assert estimate.agrees()

    def test_worker_count(self, unit_square):
        assert steiner_mc_volume(unit_square, 0.5, 10_000, seed=1, workers=1) == (
            steiner_mc_volume(unit_square, 0.5, 10_000, seed=1, workers=4)
        )

    def test_dimension_limit(self):
        with pytest.raises(ParameterRangeError):
            steiner_mc_volume(make_cube(5), 1.0, 100)

    def test_negative_radius(self, unit_square):
        with pytest.raises(ParameterRangeError):
            steiner_mc_volume(unit_square, -1.0, 100)


class TestPlanarBounds:
    def test_closed_forms_hold(self):
        for n in range(2, 65):
            assert regular_polygon_gaps(n).holds, n

    @pytest.mark.parametrize("n", [2, 3, 7, 16, 64])
    def test_closed_forms_match_zonogons(self, n):
        gs = make_regular_zonogon(n)
        gaps = regular_polygon_gaps(n)
        ir = inradius(gs).value
        cirr = circumradius(gs).value

        assert intrinsic_volume(gs, 2) / (math.pi * ir**2) - 1 == pytest.approx(
            gaps.area_gap, abs=1e-12
        )
        assert 1 - intrinsic_volume(gs, 1) / (
            ball_intrinsic_volume(2, 1) * cirr
        ) == pytest.approx(gaps.perimeter_gap, abs=1e-12)


class TestAsymptoticProbe:
    def test_planar_regular(self):
        sizes = [2, 4, 8, 16, 32, 64]
        rows = asymptotic_probe("planar-regular", 2, sizes)

        assert [row.n for row in rows] == sizes

        for row in rows:
            gaps = regular_polygon_gaps(row.n)

            assert row.inner_gaps[1] == pytest.approx(gaps.area_gap, abs=1e-11)
            assert row.outer_gaps[0] == pytest.approx(gaps.perimeter_gap, abs=1e-11)
            assert row.lower_bounds_hold is (True if row.n >= BOUNDS_FROM_N else None)

    def test_random_uniform(self):
        first = asymptotic_probe(ProbeFamily.RANDOM_UNIFORM, 3, [8, 16], seed=7)
        second = asymptotic_probe(ProbeFamily.RANDOM_UNIFORM, 3, [8, 16], seed=7, workers=2)

        assert first == second
        assert all(row.lower_bounds_hold for row in first)

    def test_fibonacci(self):
        (row,) = asymptotic_probe("fibonacci-sphere", 3, [12])

        assert row.ratio_minus_one > 0.0
        assert row.lower_bounds_hold

    @pytest.mark.parametrize(
        "family, d", [("fibonacci-sphere", 4), ("planar-regular", 3), ("spiral", 3)]
    )
    def test_family_mismatch(self, family, d):
        with pytest.raises(ParameterRangeError):
            asymptotic_probe(family, d, [8])

    def test_table(self):
        rows = asymptotic_probe("planar-regular", 2, [4, 8])
        table = io.StringIO()

        write_probe_csv(table, rows)
        lines = table.getvalue().splitlines()

        assert lines[0] == "n,quantity,value,bound,rate"
        assert len(lines) == 1 + 2 * (1 + 2 + 2)


class TestRates:
    def test_fit(self):
        ns = [8, 16, 32, 64]

        assert fit_decay_exponent(ns, [3 * n**-2.0 for n in ns]) == pytest.approx(-2.0)

    def test_fit_needs_points(self):
        with pytest.raises(ParameterRangeError):
            fit_decay_exponent([8, 16], [1.0, 0.0])

    def test_u_d(self):
        assert u_d(10, 2) == pytest.approx(10**-2)
        assert u_d(10, 3) == pytest.approx(math.sqrt(math.log(10)) * 10**-1.25)
        assert u_d(10, 5) == pytest.approx(10 ** (-7 / 8))

    def test_polarization_asymptotic(self):
        assert polarization_asymptotic(10, 2) == pytest.approx(20 / math.pi)
        assert polarization_asymptotic(10, 3) == pytest.approx(5.0)

    def test_estimate_table(self):
        table = io.StringIO()
        estimates = [expected_random_wedge(2, 1000, seed=0)]

        write_estimates_csv(table, estimates)

        assert table.getvalue().splitlines()[0].startswith("quantity,estimate,std_error")
