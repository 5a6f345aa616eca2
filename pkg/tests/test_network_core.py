"""Tests for network representation, structural invariants and file formats."""

import json

import numpy as np
import pytest

from src.core.exceptions import NetworkValidationError, SingularTransformError
from src.services.network import (
    RateVector,
    ReactionNetwork,
    affine_transform,
    complex_matrix,
    deficiency,
    example_network,
    is_weakly_reversible,
    linkage_classes,
    list_examples,
    load_network,
    load_rates,
    parse_network,
    parse_rates,
    reaction_vectors,
    resolve_network,
    serialize_network,
    stoichiometric_space,
)

from tests.conftest import random_weakly_reversible_network

TRIANGLE_JSON = json.dumps(
    {
        "species": ["X1", "X2"],
        "complexes": [[0, 0], [1, 0], [0, 1]],
        "edges": [[0, 1], [1, 2], [2, 0]],
    }
)


class TestParseNetwork:
    def test_triangle_counts(self):
        net = parse_network(TRIANGLE_JSON)
        assert (net.n, net.m, net.num_edges) == (2, 3, 3)
        assert net.edges == ((0, 1), (1, 2), (2, 0))

    def test_four_cycle_is_one_class(self):
        text = json.dumps(
            {
                "species": ["A", "B"],
                "complexes": [[0, 0], [2, 0], [2, 3], [0, 1]],
                "edges": [[0, 1], [1, 2], [2, 3], [3, 0]],
            }
        )
        net = parse_network(text)
        assert net.num_edges == 4
        assert linkage_classes(net).l == 1

    @pytest.mark.parametrize(
        "payload, fragment",
        [
            ({"species": ["X"], "complexes": [[0], [1]], "edges": [[1, 1]]}, "self-loop"),
            (
                {"species": ["X"], "complexes": [[0], [1]], "edges": [[0, 1], [0, 1]]},
                "duplicate edge",
            ),
            ({"species": ["X"], "complexes": [[0], [0]], "edges": []}, "duplicate complex"),
            ({"species": ["X", "Y"], "complexes": [[0, 0], [1]], "edges": []}, "dimension"),
            ({"species": ["X"], "complexes": [[0], [1]], "edges": [[0, 5]]}, "missing vertex"),
        ],
    )
    def test_invalid_networks(self, payload, fragment):
        with pytest.raises(NetworkValidationError, match=fragment):
            parse_network(json.dumps(payload))

    def test_malformed_json(self):
        with pytest.raises(NetworkValidationError):
            parse_network("{not json")

    def test_unknown_field_rejected(self):
        payload = json.loads(TRIANGLE_JSON)
        payload["rates"] = [1, 2, 3]
        with pytest.raises(NetworkValidationError):
            parse_network(json.dumps(payload))

    def test_serialize_reproduces_network(self, rng):
        for _ in range(10):
            net = random_weakly_reversible_network(rng)
            assert parse_network(serialize_network(net)) == net


class TestRates:
    def test_parse_rates(self, triangle):
        k = parse_rates('{"rates": [1, 2.5, 3]}', triangle)
        np.testing.assert_array_equal(k.k, [1.0, 2.5, 3.0])

    @pytest.mark.parametrize("rates", [[1, 2], [1, 0, 1], [1, -2, 1]])
    def test_rejects_bad_rates(self, triangle, rates):
        with pytest.raises(NetworkValidationError):
            parse_rates(json.dumps({"rates": rates}), triangle)

    def test_rate_vector_is_read_only(self):
        k = RateVector([1.0, 2.0])
        with pytest.raises(ValueError):
            k.k[0] = 5.0

    def test_file_loaders(self, tmp_path, triangle):
        net_path = tmp_path / "net.json"
        net_path.write_text(serialize_network(triangle))
        rates_path = tmp_path / "rates.json"
        rates_path.write_text('{"rates": [1, 1, 2]}')
        loaded = load_network(net_path)
        assert loaded == triangle
        assert load_rates(rates_path, loaded).k.tolist() == [1.0, 1.0, 2.0]

    def test_missing_file(self, tmp_path):
        with pytest.raises(NetworkValidationError, match="cannot read"):
            load_network(tmp_path / "absent.json")


class TestStructure:
    def test_linkage_classes(self, triangle, two_class_network):
        assert linkage_classes(triangle).l == 1
        decomposition = linkage_classes(two_class_network)
        assert decomposition.l == 2
        assert decomposition.classes == [[0, 1, 2, 3], [4, 5]]

    def test_isolated_vertices(self):
        net = ReactionNetwork.build(["X"], [[0], [1], [2]], [])
        assert linkage_classes(net).l == 3
        assert stoichiometric_space(net).s == 0
        assert deficiency(net) == 0
        assert is_weakly_reversible(net)

    def test_weak_reversibility(self, triangle, one_way_edge, two_class_network):
        assert is_weakly_reversible(triangle)
        assert not is_weakly_reversible(one_way_edge)
        assert is_weakly_reversible(two_class_network)

    def test_two_disjoint_reversible_pairs(self):
        net = ReactionNetwork.build(
            ["X", "Y"], [[1, 0], [0, 1], [2, 0], [0, 2]], [[0, 1], [1, 0], [2, 3], [3, 2]]
        )
        assert linkage_classes(net).l == 2

    def test_stoichiometric_space(self, triangle, reversible_pair):
        space = stoichiometric_space(triangle)
        assert space.s == 2
        np.testing.assert_allclose(space.basis.T @ space.basis, np.eye(2), atol=1e-12)
        assert stoichiometric_space(reversible_pair).s == 1

    def test_reaction_vectors_in_span(self, rng):
        for _ in range(10):
            net = random_weakly_reversible_network(rng)
            space = stoichiometric_space(net)
            vectors = reaction_vectors(net)
            residual = vectors.T - space.basis @ (space.basis.T @ vectors.T)
            assert np.max(np.abs(residual), initial=0.0) < 1e-10

    def test_complex_matrix(self, triangle):
        np.testing.assert_array_equal(complex_matrix(triangle), [[0, 1, 0], [0, 0, 1]])

    @pytest.mark.parametrize(
        "name, expected",
        [
            ("triangle", 0),
            ("square-cycle", 1),
            ("line-cycle", 2),
            ("bidirected-triangle", 1),
            ("reversible-pair", 0),
        ],
    )
    def test_deficiency(self, name, expected):
        assert deficiency(example_network(name)) == expected

    def test_deficiency_identity(self, rng):
        for _ in range(20):
            net = random_weakly_reversible_network(rng)
            assert (
                deficiency(net)
                == net.m - stoichiometric_space(net).s - linkage_classes(net).l
                >= 0
            )


class TestAffineTransform:
    def test_identity(self, triangle):
        assert affine_transform(triangle, np.eye(2), np.zeros(2)) == triangle

    def test_scale_and_shift(self, triangle):
        image = affine_transform(triangle, 2 * np.eye(2), [1, 1])
        np.testing.assert_array_equal(image.complexes, [[1, 1], [3, 1], [1, 3]])
        assert image.edges == triangle.edges

    def test_singular(self, triangle):
        with pytest.raises(SingularTransformError):
            affine_transform(triangle, np.zeros((2, 2)), [0, 0])

    def test_wrong_shape(self, triangle):
        with pytest.raises(SingularTransformError):
            affine_transform(triangle, np.eye(3), [0, 0, 0])

    def test_structure_preserved(self, rng):
        for _ in range(10):
            net = random_weakly_reversible_network(rng)
            A = rng.normal(size=(3, 3)) + 3 * np.eye(3)
            image = affine_transform(net, A, rng.normal(size=3))
            assert linkage_classes(image).l == linkage_classes(net).l
            assert stoichiometric_space(image).s == stoichiometric_space(net).s
            assert is_weakly_reversible(image) == is_weakly_reversible(net)
            assert deficiency(image) == deficiency(net)


class TestCatalogue:
    def test_names(self):
        assert list_examples() == [
            "bidirected-triangle",
            "line-cycle",
            "reversible-pair",
            "square-cycle",
            "triangle",
        ]

    def test_unknown(self):
        with pytest.raises(NetworkValidationError, match="Unknown example"):
            example_network("pentagon")

    def test_resolve_example_prefix(self, triangle):
        assert resolve_network("example:triangle") == triangle
