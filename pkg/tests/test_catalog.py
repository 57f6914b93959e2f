import math

import numpy as np
import pytest

from conftest import ALL_FAMILIES, POLYHEDRA, povm_for
from hspovm.bloch import BlochVector
from hspovm.catalog import (
    HsPovm,
    interpolation_set,
    make_hs_povm,
    make_rectangle_povm,
    spherical_design_order,
    validate_povm,
)
from hspovm.groups import TAU, double_coset_profile

SQRT5 = math.sqrt(5.0)

EXPECTED_K = {"digon": 2, "tetrahedron": 4, "octahedron": 6, "cube": 8,
              "cuboctahedron": 12, "icosahedron": 12, "dodecahedron": 20,
              "icosidodecahedron": 30}

EXPECTED_NODES = {
    "digon": [-1, 1],
    "tetrahedron": [-1, 1 / 3],
    "octahedron": [-1, 0, 1],
    "cube": [-1, -1 / 3, 1 / 3, 1],
    "cuboctahedron": [-1, -0.5, 0, 0.5, 1],
    "icosahedron": [-1, -1 / SQRT5, 1 / SQRT5, 1],
    "dodecahedron": [-1, -SQRT5 / 3, -1 / 3, 1 / 3, SQRT5 / 3, 1],
    "icosidodecahedron": [-1, -TAU / 2, -0.5, -1 / (2 * TAU), 0,
                          1 / (2 * TAU), 0.5, TAU / 2, 1],
}


class TestConstruction:
    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_cardinality(self, family):
        assert povm_for(family).k == EXPECTED_K[family]

    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_unit_vectors_zero_centroid(self, family):
        coords = povm_for(family).matrix()
        assert np.allclose(np.linalg.norm(coords, axis=1), 1.0, atol=1e-12)
        assert np.linalg.norm(coords.sum(axis=0)) < 1e-12 * len(coords)

    def test_digon_is_z_axis(self):
        coords = povm_for("digon").matrix()
        assert np.allclose(sorted(coords[:, 2]), [-1.0, 1.0])

    def test_tetrahedron_pairwise_dot(self):
        coords = povm_for("tetrahedron").matrix()
        dots = coords @ coords.T
        off = dots[~np.eye(4, dtype=bool)]
        assert np.allclose(off, -1.0 / 3.0, atol=1e-12)

    def test_ngon_first_vertex(self):
        p = make_hs_povm("n-gon", 7)
        assert p.vectors[0].as_array() == pytest.approx([1, 0, 0])
        assert np.max(np.abs(p.matrix()[:, 2])) == 0.0

    def test_ngon_needs_n(self):
        with pytest.raises(ValueError):
            make_hs_povm("n-gon")

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            make_hs_povm("hexagonal-prism")

    def test_named_ngon_string(self):
        assert make_hs_povm("12-gon").k == 12

    def test_centroid_enforced(self):
        with pytest.raises(ValueError):
            HsPovm(vectors=(BlochVector(0, 0, 1), BlochVector(0, 0, 1)),
                   family="custom")

    def test_json_round_trip(self):
        p = povm_for("cube")
        q = HsPovm.from_json(p.to_json())
        assert np.allclose(p.matrix(), q.matrix())


class TestRectangle:
    def test_construction(self):
        p = make_rectangle_povm(1.0)
        assert p.k == 4
        assert p.vectors[0].dot(p.vectors[2]) == pytest.approx(math.cos(1.0))
        assert np.linalg.norm(p.matrix().sum(axis=0)) < 1e-12

    def test_square_flagged_as_4gon(self):
        assert make_rectangle_povm(math.pi / 2).family == "4-gon"

    def test_range_validation(self):
        with pytest.raises(ValueError):
            make_rectangle_povm(0.0)
        with pytest.raises(ValueError):
            make_rectangle_povm(math.pi)


class TestValidate:
    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_catalog_passes(self, family):
        report = validate_povm(povm_for(family).vectors)
        assert report.is_povm

    @pytest.mark.parametrize("family", POLYHEDRA)
    def test_polyhedra_informationally_complete(self, family):
        assert validate_povm(povm_for(family).vectors).informationally_complete

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_polygons_not_informationally_complete(self, n):
        report = validate_povm(make_hs_povm("n-gon", n).vectors)
        assert report.is_povm and not report.informationally_complete

    def test_repeated_vector_not_povm(self):
        report = validate_povm([BlochVector(0, 0, 1), BlochVector(0, 0, 1)])
        assert not report.is_povm

    def test_tetragonal_disphenoid_frame_not_tight(self):
        e = np.eye(3)
        vs = [(e[0] + e[1]) / math.sqrt(2), (e[0] - e[1]) / math.sqrt(2),
              (-e[0] + e[2]) / math.sqrt(2), (-e[0] - e[2]) / math.sqrt(2)]
        report = validate_povm(vs)
        assert report.is_povm
        assert report.informationally_complete   # spans R^3: a frame
        assert report.design_order < 2           # but not a tight one


class TestDesignOrders:
    @pytest.mark.parametrize("family,minimum", [
        ("tetrahedron", 2), ("octahedron", 3), ("cube", 3),
        ("cuboctahedron", 3), ("icosahedron", 5), ("dodecahedron", 5),
        ("icosidodecahedron", 5),
    ])
    def test_lower_bounds(self, family, minimum):
        assert spherical_design_order(povm_for(family).vectors) >= minimum

    def test_octahedron_is_exactly_3(self):
        assert spherical_design_order(povm_for("octahedron").vectors) == 3

    def test_icosahedron_is_5(self):
        assert spherical_design_order(povm_for("icosahedron").vectors) == 5


class TestInterpolationSet:
    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_table_values(self, family):
        got = interpolation_set(povm_for(family))
        want = EXPECTED_NODES[family]
        assert len(got) == len(want)
        assert max(abs(a - b) for a, b in zip(got, want)) < 1e-12

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 9, 12])
    def test_polygon_nodes(self, n):
        got = interpolation_set(make_hs_povm("n-gon", n))
        sign = 1.0 if n % 2 == 0 else -1.0
        want = sorted({round(sign * math.cos(2 * math.pi * j / n), 12)
                       for j in range(1, n + 1)})
        assert len(got) == len(want)
        assert max(abs(a - b) for a, b in zip(got, want)) < 1e-9

    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_size_bounded_by_coset_count(self, family):
        povm = povm_for(family)
        group = povm.rotation_group()
        profile = double_coset_profile(group, povm.fiducial)
        assert len(interpolation_set(povm)) <= profile.n_v
