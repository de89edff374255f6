import io
import math

import numpy as np
import pytest

from zonolab.errors import DegenerateZonotopeError
from zonolab.errors import FormatError
from zonolab.errors import GeneralPositionError
from zonolab.errors import NonUnitDirectionError
from zonolab.functionals import intrinsic_volume
from zonolab.functionals import mean_width
from zonolab.functionals import surface_area
from zonolab.geometry import ball_mean_width_constant
from zonolab.rng import make_generator
from zonolab.zonotope import GeneratorSet
from zonolab.zonotope import center
from zonolab.zonotope import classify
from zonolab.zonotope import load_generator_set
from zonolab.zonotope import make_cube
from zonolab.zonotope import make_fibonacci_hemisphere
from zonolab.zonotope import make_regular_rhombic_dodecahedron
from zonolab.zonotope import make_regular_zonogon
from zonolab.zonotope import parse_generator_set
from zonolab.zonotope import project
from zonolab.zonotope import project_to_frame
from zonolab.zonotope import projection_body
from zonolab.zonotope import random_centered_rhombic_dodecahedron
from zonolab.zonotope import random_rhombic_dodecahedron
from zonolab.zonotope import random_unit_generators
from zonolab.zonotope import save_generator_set
from zonolab.zonotope import scale


class TestConstructors:
    def test_cube(self):
        assert np.array_equal(make_cube(3).generators, np.eye(3))
        assert np.array_equal(make_cube(2, 2.0).generators, [[2, 0], [0, 2]])

    def test_cube_classification(self):
        flags = classify(make_cube(4, 1.0))

        assert flags.is_equilateral
        assert flags.is_unit_edge
        assert not flags.is_centered
        assert flags.is_cubical_candidate
        assert flags.full_dimensional

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("edge", [1.0, 2.5])
    def test_regular_rhombic_dodecahedron_gram(self, d, edge):
        gs = make_regular_rhombic_dodecahedron(d, edge)
        gram = gs.generators @ gs.generators.T
        expected = edge**2 * ((1 + 1 / d) * np.eye(d + 1) - np.ones((d + 1, d + 1)) / d)

        assert gram == pytest.approx(expected, abs=1e-12 * max(edge**2, 1))
        assert np.linalg.norm(gs.generators.sum(axis=0)) < 1e-12 * edge

    def test_planar_rhombic_dodecahedron_is_hexagon(self):
        gs = make_regular_rhombic_dodecahedron(2, 1.0)

        for i in range(3):
            for j in range(i + 1, 3):
                cosine = gs.generators[i] @ gs.generators[j]
                assert math.degrees(math.acos(cosine)) == pytest.approx(120.0)

    def test_zonogon_hexagon_area(self):
        assert intrinsic_volume(make_regular_zonogon(3), 2) == pytest.approx(
            3 * math.sqrt(3) / 2
        )

    def test_fibonacci_hemisphere(self):
        gs = make_fibonacci_hemisphere(50)

        assert gs.norms == pytest.approx(np.ones(50))
        assert np.all(gs.generators[:, 2] > 0)

    def test_random_unit_generators(self):
        gs = random_unit_generators(10_000, 3, 5)

        assert gs.norms == pytest.approx(np.ones(10_000), abs=1e-12)
        assert np.all(np.abs(gs.generators.mean(axis=0)) < 4 / math.sqrt(10_000))

    def test_random_unit_generators_reproducible(self):
        first = random_unit_generators(3, 2, 42)
        second = random_unit_generators(3, 2, 42)

        assert np.array_equal(first.generators, second.generators)
        assert not np.array_equal(
            first.generators, random_unit_generators(3, 2, 43).generators
        )

    def test_random_rhombic_dodecahedron_contains_origin(self):
        generator = make_generator(3)

        for _ in range(20):
            points = random_rhombic_dodecahedron(3, generator).generators
            system = np.vstack((points.T, np.ones(4)))
            weights = np.linalg.solve(system, [0, 0, 0, 1])

            assert np.all(weights >= 0)

    def test_random_centered(self):
        gs = random_centered_rhombic_dodecahedron(4, make_generator(1))

        assert classify(gs).is_centered


class TestCenter:
    def test_cube_translate(self, cube3):
        centered = center(cube3)

        assert centered.translate == pytest.approx([0.5, 0.5, 0.5])
        assert np.array_equal(centered.generators, cube3.generators)

    def test_regular_rhombic_dodecahedron(self):
        centered = center(make_regular_rhombic_dodecahedron(3))

        assert centered.translate == pytest.approx(np.zeros(3), abs=1e-12)

    def test_opposite_pair(self):
        centered = center(GeneratorSet([[1.0, 0.0], [-1.0, 0.0]]))

        assert list(centered.translate) == [0.0, 0.0]


class TestProject:
    def test_cube_along_axis(self, cube3):
        projected = project(cube3, np.array([0.0, 0.0, 1.0]))

        assert projected.dim == 2
        assert projected.n == 3
        assert projected.generators == pytest.approx([[1, 0], [0, 1], [0, 0]])
        assert classify(projected).has_zero_generators

    def test_rejects_non_unit(self, cube3):
        with pytest.raises(NonUnitDirectionError):
            project(cube3, np.array([1.0, 1.0, 0.0]))

    def test_mean_width_monotone(self, rng):
        for _ in range(20):
            gs = GeneratorSet(rng.standard_normal((6, 4)))
            u = rng.standard_normal(4)
            u /= np.linalg.norm(u)

            assert intrinsic_volume(project(gs, u), 1) <= intrinsic_volume(gs, 1) + 1e-12

    def test_frame(self, cube3):
        projected = project_to_frame(cube3, np.eye(3)[:2])

        assert projected.generators == pytest.approx([[1, 0], [0, 1], [0, 0]])


class TestProjectionBody:
    @pytest.mark.parametrize("d", [2, 3, 4])
    @pytest.mark.parametrize("edge", [1.0, 2.0])
    def test_cube(self, d, edge):
        body = projection_body(make_cube(d, edge))
        lengths = sorted(body.norms)

        assert len(lengths) == d
        assert lengths == pytest.approx([2 * edge ** (d - 1)] * d)
        assert classify(body).is_cubical_candidate

    def test_width_matches_surface(self, rng):
        for _ in range(5):
            gs = GeneratorSet(rng.standard_normal((6, 3)))
            body = projection_body(gs)

            assert mean_width(body) == pytest.approx(
                ball_mean_width_constant(3) * surface_area(gs), rel=1e-9
            )

    def test_planar_rotation(self):
        gs = make_regular_zonogon(5, 1.3)
        body = projection_body(gs)

        assert intrinsic_volume(body, 1) == pytest.approx(2 * intrinsic_volume(gs, 1))

    def test_general_position_required(self):
        gs = GeneratorSet([[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 0, 0]])

        with pytest.raises(GeneralPositionError):
            projection_body(gs)

    def test_degenerate(self):
        with pytest.raises(DegenerateZonotopeError):
            projection_body(GeneratorSet([[1, 0, 0], [0, 1, 0]]))


class TestSerialization:
    def test_round_trip_is_exact(self, rng):
        gs = GeneratorSet(rng.standard_normal((5, 3)) / 3.0, "fixture")
        buffer = io.StringIO()
        save_generator_set(buffer, gs)
        buffer.seek(0)

        assert load_generator_set(buffer) == gs

    def test_invalid_json_reports_position(self):
        with pytest.raises(FormatError, match="line 2"):
            parse_generator_set('{"dim": 2,\n "generators": [[1, 0],, ]}')

    def test_wrong_vector_length_names_field(self):
        with pytest.raises(FormatError) as info:
            parse_generator_set('{"dim": 2, "label": null, "generators": [[1, 0], [1]]}')

        assert info.value.field == "generators[1]"

    def test_missing_dim(self):
        with pytest.raises(FormatError) as info:
            parse_generator_set('{"generators": [[1, 0]]}')

        assert info.value.field == "dim"

    def test_schema_major_mismatch(self):
        with pytest.raises(FormatError):
            parse_generator_set(
                '{"schema_version": "2.0.0", "dim": 1, "generators": [[1]]}'
            )

    def test_scale_is_homogeneous(self, cube3):
        assert scale(cube3, 2.0).generators == pytest.approx(2 * np.eye(3))
