import io
import json
import math

import numpy as np
import pytest

from zonolab.errors import ConfigError
from zonolab.errors import NonUnitDirectionError
from zonolab.errors import ParameterRangeError
from zonolab.functionals import intrinsic_volume
from zonolab.functionals import mean_width
from zonolab.radii import circumradius
from zonolab.radii import inradius
from zonolab.search import Constraint
from zonolab.search import Objective
from zonolab.search import ProbeBody
from zonolab.search import SearchConfig
from zonolab.search import Sense
from zonolab.search import constrained_minimize
from zonolab.search import counterexample_trend
from zonolab.search import evaluate
from zonolab.search import load_search_config
from zonolab.search import local_optimality_probe
from zonolab.search import minimize_polarization
from zonolab.search import normalize
from zonolab.search import polarization_value
from zonolab.search import save_search_config
from zonolab.search import thm5_counterexample
from zonolab.search import write_run_directory
from zonolab.zonotope import GeneratorSet
from zonolab.zonotope import make_cube
from zonolab.zonotope import make_regular_rhombic_dodecahedron
from zonolab.zonotope import make_regular_zonogon


def polarization_config(n: int, d: int = 2, restarts: int = 8, **kwargs) -> SearchConfig:
    return SearchConfig(
        objective=Objective.POLARIZATION,
        constraints=(Constraint.UNIT_GENERATORS,),
        n=n,
        d=d,
        restarts=restarts,
        seed=kwargs.pop("seed", 3),
        **kwargs,
    )


class TestPolarizationValue:
    def test_orthonormal(self, unit_square):
        assert polarization_value(unit_square) == pytest.approx(math.sqrt(2))

    def test_hexagon(self):
        assert polarization_value(make_regular_zonogon(3)) == pytest.approx(2.0)

    def test_matches_circumradius(self, rng):
        vectors = rng.standard_normal((6, 3))
        gs = GeneratorSet(vectors / np.linalg.norm(vectors, axis=1)[:, None])

        assert polarization_value(gs) == 2 * circumradius(gs).value

    def test_squared(self, cube3):
        # sum <e_i, u>^2 = 1 for every unit u
        assert polarization_value(cube3, 2.0, directions=2000) == pytest.approx(1.0)

    def test_numerical_lower_bound(self, rng):
        vectors = rng.standard_normal((5, 3))
        gs = GeneratorSet(vectors / np.linalg.norm(vectors, axis=1)[:, None])
        value = polarization_value(gs, 3.0, directions=5000)

        for u in vectors / np.linalg.norm(vectors, axis=1)[:, None]:
            assert value >= float((np.abs(gs.generators @ u) ** 3).sum()) - 1e-12

    def test_non_unit(self):
        with pytest.raises(NonUnitDirectionError):
            polarization_value(make_cube(2, 2.0))

    @pytest.mark.parametrize("p", [0.0, -1.0, math.inf])
    def test_bad_exponent(self, unit_square, p):
        with pytest.raises(ParameterRangeError):
            polarization_value(unit_square, p)


class TestSearchConfig:
    def test_coerces_strings(self):
        config = SearchConfig(
            objective="cirr", constraints=("fixed-mean-width",), n=3, d=3, sense="minimize"
        )

        assert config.objective == Objective.CIRCUMRADIUS
        assert config.constraints == (Constraint.FIXED_MEAN_WIDTH,)
        assert config.scaling == Constraint.FIXED_MEAN_WIDTH

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"objective": "polarization", "constraints": ("fixed-mean-width",)},
            {"objective": "cirr", "constraints": ()},
            {"objective": "cirr", "constraints": ("fixed-volume", "fixed-mean-width")},
            {"objective": "cirr", "constraints": ("unit-generators", "fixed-volume")},
            {"objective": "cirr", "constraints": ("centered", "centered", "fixed-volume")},
            {"objective": "V_k", "constraints": ("fixed-volume",)},
            {"objective": "V_k", "constraints": ("fixed-volume",), "k": 4},
            {"objective": "power2-ratio", "constraints": (), "k": 2, "m": 2},
            {"objective": "simplex", "constraints": ()},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            SearchConfig(n=4, d=3, **kwargs)

    def test_volume_needs_full_dimension(self):
        with pytest.raises(ConfigError):
            SearchConfig(objective="cirr", constraints=("fixed-volume",), n=2, d=3)

    def test_power2_ratio_is_scale_free(self):
        config = SearchConfig(objective="power2-ratio", constraints=(), n=5, d=3, k=1, m=2)

        assert config.scaling is None

    def test_yaml_round_trip(self):
        config = polarization_config(4, seed=11, max_iters=50)
        buffer = io.StringIO()
        save_search_config(buffer, config)
        buffer.seek(0)

        assert load_search_config(buffer) == config

    def test_yaml_defaults(self):
        config = load_search_config(
            io.StringIO("objective: cirr\nconstraints: fixed-mean-width\nn: 3\nd: 3\n")
        )

        assert config.restarts == 32
        assert config.max_iters == 200
        assert config.step_a == 0.1
        assert config.step_b == 50.0
        assert config.seed is None

    @pytest.mark.parametrize(
        "text",
        [
            "objective: cirr\nconstraints: [fixed-mean-width]\nd: 3\n",
            "objective: cirr\nconstraints: [fixed-mean-width]\nn: three\nd: 3\n",
            "objective: cirr\nconstraints: [fixed-mean-width]\nn: 3\nd: 3\nstep_a: -1\n",
            "objective: cirr\nconstraints: [sideways]\nn: 3\nd: 3\n",
            "schema_version: 2.0.0\nobjective: cirr\nconstraints: [fixed-mean-width]\nn: 3\nd: 3\n",
            "- just\n- a list\n",
            "objective: [unclosed\n",
        ],
    )
    def test_bad_documents(self, text):
        with pytest.raises(ConfigError):
            load_search_config(io.StringIO(text))

    def test_digest_tracks_seed(self):
        config = polarization_config(3)

        assert config.digest() == polarization_config(3).digest()
        assert config.digest() != config.with_seed(4).digest()


class TestNormalize:
    def test_unit(self, rng):
        config = polarization_config(5, d=3)
        X = normalize(config, rng.standard_normal((5, 3)))

        assert np.allclose(np.linalg.norm(X, axis=1), 1.0)

    def test_zero_generator_is_rejected(self):
        config = polarization_config(2)

        assert normalize(config, np.array([[1.0, 0.0], [0.0, 0.0]])) is None

    def test_centered_width(self, rng):
        config = SearchConfig(
            objective="cirr",
            constraints=("fixed-mean-width", "centered"),
            n=4,
            d=3,
            target=2.0,
        )
        X = normalize(config, rng.standard_normal((4, 3)))

        assert np.allclose(X.sum(axis=0), 0.0, atol=1e-12)
        assert mean_width(GeneratorSet(X)) == pytest.approx(2.0, rel=1e-12)

    def test_volume(self, rng):
        config = SearchConfig(objective="cirr", constraints=("fixed-volume",), n=4, d=3, target=2.0)
        X = normalize(config, rng.standard_normal((4, 3)))

        assert intrinsic_volume(GeneratorSet(X), 3) == pytest.approx(2.0, rel=1e-10)

    def test_degenerate_volume(self):
        config = SearchConfig(objective="cirr", constraints=("fixed-volume",), n=3, d=3)

        assert normalize(config, np.array([[1.0, 0, 0], [0, 1.0, 0], [1.0, 1.0, 0]])) is None

    def test_inradius(self, rng):
        config = SearchConfig(
            objective="V_k", constraints=("fixed-inradius",), n=4, d=3, k=3, target=0.5
        )
        X = normalize(config, rng.standard_normal((4, 3)))

        assert inradius(GeneratorSet(X)).value == pytest.approx(0.5, rel=1e-10)


class TestPolarizationSearch:
    def test_two_planar(self):
        outcome = minimize_polarization(polarization_config(2, max_iters=100))

        assert outcome.value == pytest.approx(math.sqrt(2), abs=1e-6)
        assert np.allclose(np.linalg.norm(outcome.best.generators, axis=1), 1.0)

    def test_three_planar(self):
        outcome = minimize_polarization(polarization_config(3, max_iters=150))

        assert outcome.value == pytest.approx(2.0, abs=1e-6)

    @pytest.mark.slow
    def test_four_planar(self):
        outcome = minimize_polarization(polarization_config(4, restarts=32, seed=0))

        assert outcome.value == pytest.approx(1 / math.sin(math.pi / 8), abs=1e-5)

    @pytest.mark.slow
    def test_four_spatial_within_simplex(self):
        outcome = minimize_polarization(polarization_config(4, d=3, restarts=16, seed=0))

        assert outcome.value <= 4 / math.sqrt(3) + 1e-6

    def test_value_is_reproducible_from_best(self):
        outcome = minimize_polarization(polarization_config(3, max_iters=50))

        assert evaluate(outcome.config, outcome.best) == outcome.value
        assert outcome.certificate.value == pytest.approx(outcome.value / 2, rel=1e-12)
        assert len(outcome.trace) == outcome.config.restarts
        assert outcome.trace[outcome.best_restart].best_value == pytest.approx(
            outcome.value, rel=1e-9
        )

    def test_deterministic(self):
        first = minimize_polarization(polarization_config(3, max_iters=40, workers=1))
        second = minimize_polarization(polarization_config(3, max_iters=40, workers=3))

        assert first.value == second.value
        assert np.array_equal(first.best.generators, second.best.generators)
        assert first.trace == second.trace

    def test_fresh_seed_is_recorded(self):
        outcome = minimize_polarization(polarization_config(2, max_iters=10, restarts=2, seed=None))

        assert outcome.config.seed is not None

    def test_wrong_objective(self):
        config = SearchConfig(objective="cirr", constraints=("fixed-mean-width",), n=3, d=3)

        with pytest.raises(ConfigError):
            minimize_polarization(config)

    def test_wrong_exponent(self):
        with pytest.raises(ConfigError):
            minimize_polarization(polarization_config(3, p=2.0))


class TestConstrainedMinimize:
    def test_parallelotope_circumradius(self):
        config = SearchConfig(
            objective="cirr",
            constraints=("fixed-mean-width",),
            n=3,
            d=3,
            target=mean_width(make_cube(3)),
            restarts=8,
            seed=5,
        )
        outcome = constrained_minimize(config)

        assert config.target == pytest.approx(1.5)
        assert outcome.value == pytest.approx(math.sqrt(3) / 2, rel=1e-4)
        assert mean_width(outcome.best) == pytest.approx(1.5, rel=1e-9)

    def test_centered_rhombic_dodecahedron(self):
        config = SearchConfig(
            objective="cirr",
            constraints=("centered", "fixed-mean-width"),
            n=4,
            d=3,
            target=2.0,
            restarts=8,
            seed=5,
        )
        outcome = constrained_minimize(config)

        assert outcome.value == pytest.approx(2 / math.sqrt(3), rel=1e-4)
        assert np.allclose(outcome.best.generators.sum(axis=0), 0.0, atol=1e-9)

    def test_parallelotope_at_fixed_volume(self):
        config = SearchConfig(
            objective="cirr",
            constraints=("fixed-volume",),
            n=3,
            d=3,
            target=1.0,
            restarts=4,
            max_iters=100,
            seed=2,
        )
        outcome = constrained_minimize(config)

        assert intrinsic_volume(outcome.best, 3) == pytest.approx(1.0, rel=1e-9)
        assert outcome.value >= math.sqrt(3) / 2 * (1 - 1e-9)
        assert outcome.value >= 0.5 * mean_width(outcome.best) * (1 - 1e-9)

    @pytest.mark.slow
    def test_volume_at_fixed_inradius(self):
        regular = make_regular_rhombic_dodecahedron(3)
        expected = intrinsic_volume(regular, 3) * (0.5 / inradius(regular).value) ** 3
        config = SearchConfig(
            objective="V_k",
            constraints=("fixed-inradius",),
            n=4,
            d=3,
            k=3,
            target=0.5,
            restarts=16,
            seed=1,
        )
        outcome = constrained_minimize(config)

        assert outcome.value == pytest.approx(expected, rel=1e-3)

    def test_maximize_sense(self):
        config = SearchConfig(
            objective="V_k",
            constraints=("unit-generators",),
            n=3,
            d=3,
            k=2,
            sense=Sense.MAXIMIZE,
            restarts=4,
            max_iters=60,
            seed=2,
        )
        outcome = constrained_minimize(config)

        assert outcome.value <= 3.0 + 1e-9
        assert outcome.value == pytest.approx(3.0, rel=1e-3)

    def test_run_directory(self, tmp_path):
        outcome = minimize_polarization(polarization_config(2, max_iters=10, restarts=3))
        path = write_run_directory(tmp_path / "run", outcome, {"argv": ["search"]})

        assert sorted(p.name for p in path.iterdir()) == [
            "config.yml",
            "manifest.json",
            "outcome.json",
            "trace.csv",
        ]

        with (path / "config.yml").open() as file:
            assert load_search_config(file) == outcome.config

        document = json.loads((path / "outcome.json").read_text())

        assert document["value"] == outcome.value
        assert document["config_digest"] == outcome.config.digest()
        assert len((path / "trace.csv").read_text().splitlines()) == 4


class TestCounterexample:
    def test_three(self):
        record = thm5_counterexample(3)

        assert record.cirr_reg == pytest.approx(2 / math.sqrt(3))
        assert record.cirr_prime < record.cirr_reg
        assert record.width_check
        assert record.beats_regular

    def test_five(self):
        assert thm5_counterexample(5, 1e-3).beats_regular

    @pytest.mark.parametrize("d", [2, 4, 1])
    def test_even(self, d):
        with pytest.raises(ParameterRangeError):
            thm5_counterexample(d)

    def test_bad_scale(self):
        with pytest.raises(ParameterRangeError):
            thm5_counterexample(3, 0.0)

    def test_trend(self):
        records = counterexample_trend(3)
        gaps = [record.cirr_reg - record.cirr_prime for record in records]

        assert all(gap > 0 for gap in gaps)
        assert gaps == sorted(gaps, reverse=True)


class TestLocalProbe:
    def test_rhombic_dodecahedron_volume(self):
        report = local_optimality_probe(ProbeBody.REGULAR_RD, Constraint.FIXED_VOLUME, 3)

        assert report.trials == 1000
        assert report.improving == 0
        assert report.sense == Sense.MINIMIZE

    def test_rhombic_dodecahedron_volume_mean_width(self):
        report = local_optimality_probe("regular_rd", "fixed-volume", 2, trials=200)

        assert report.improving == 0

    def test_cube_mean_width(self):
        report = local_optimality_probe("cube", "fixed-mean-width", 2, trials=300, seed=4)

        assert report.improving == 0
        assert report.regular_value == pytest.approx(3.0)
        assert report.sense == Sense.MAXIMIZE

    def test_cube_unit(self):
        report = local_optimality_probe("cube", "unit-generators", 2, trials=300)

        assert report.improving == 0

    def test_exploratory(self):
        report = local_optimality_probe("regular_rd", "fixed-mean-width", 2, trials=50)

        assert 0 <= report.improving_fraction <= 1
        assert report.to_json()["trials"] == 50

    @pytest.mark.parametrize(
        "body, constraint",
        [("cube", "centered"), ("cube", "fixed-inradius"), ("sphere", "fixed-volume")],
    )
    def test_unrecognized(self, body, constraint):
        with pytest.raises(ParameterRangeError):
            local_optimality_probe(body, constraint, 2)

    def test_bad_index(self):
        with pytest.raises(ParameterRangeError):
            local_optimality_probe("cube", "fixed-volume", 4)
