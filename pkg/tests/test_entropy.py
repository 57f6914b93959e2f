import math

import numpy as np
import pytest

from conftest import ALL_FAMILIES, povm_for
from hspovm.bloch import BlochVector, EntropyKernel, eta
from hspovm.catalog import make_hs_povm, make_rectangle_povm
from hspovm.entropy import (
    _entropy_values,
    classify_inert_point,
    entropy_at,
    fibonacci_sphere,
    find_extrema,
    landscape,
    rectangle_bifurcation_threshold,
    relative_entropy_at,
)
from hspovm.groups import TAU

LN2 = math.log(2.0)


def _entropy_by_definition(u, povm):
    """Independent oracle: H = sum_j eta(p_j) with p_j = (1 + u.v_j)/k."""
    dots = povm.matrix() @ np.asarray(u)
    return math.fsum(eta((1.0 + t) / povm.k) for t in dots)


class TestPointValues:
    def test_digon_pole_certain(self):
        p = povm_for("digon")
        assert entropy_at(BlochVector(0, 0, 1), p) == 0.0
        assert relative_entropy_at(BlochVector(0, 0, 1), p) == pytest.approx(LN2)

    def test_tetrahedron_antipode_is_ln3(self):
        p = povm_for("tetrahedron")
        value = entropy_at(-p.vectors[0], p)
        assert value == pytest.approx(math.log(3), abs=1e-12)
        assert value == pytest.approx(
            _entropy_by_definition(-p.vectors[0].as_array(), p), abs=1e-12)

    def test_octahedron_cube_direction(self):
        p = povm_for("octahedron")
        u = np.ones(3) / math.sqrt(3)
        value = entropy_at(BlochVector.from_array(u), p)
        assert value == pytest.approx(_entropy_by_definition(u, p), abs=1e-12)
        assert value == pytest.approx(1.6143190251316641, abs=1e-12)

    def test_square_vertex_half_ln2(self):
        p = make_hs_povm("n-gon", 4)
        assert relative_entropy_at(p.vectors[0], p) == pytest.approx(
            0.5 * LN2, abs=1e-12)

    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_matches_probability_definition(self, family):
        povm = povm_for(family)
        rng = np.random.default_rng(11)
        for _ in range(50):
            u = rng.normal(size=3)
            u /= np.linalg.norm(u)
            assert entropy_at(BlochVector.from_array(u), povm) == pytest.approx(
                _entropy_by_definition(u, povm), abs=1e-12)

    def test_alpha_kernels(self):
        povm = povm_for("tetrahedron")
        u = BlochVector(0, 0, 1)
        dots = povm.matrix() @ u.as_array()
        probs = (1.0 + dots) / povm.k
        for kernel in (EntropyKernel("renyi", 2.0), EntropyKernel("tsallis", 0.5)):
            assert entropy_at(u, povm, kernel) == pytest.approx(
                kernel.entropy(probs), abs=1e-12)


class TestInvariants:
    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_group_invariance(self, family):
        povm = povm_for(family)
        group = povm.rotation_group()
        rng = np.random.default_rng(13)
        mats = group.matrix_stack()
        for _ in range(100):
            u = rng.normal(size=3)
            u /= np.linalg.norm(u)
            g = mats[rng.integers(0, len(mats))]
            a = entropy_at(BlochVector.from_array(u), povm)
            b = entropy_at(BlochVector.from_array(g @ u), povm)
            assert abs(a - b) < 1e-12

    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_entropy_bounds(self, family):
        povm = povm_for(family)
        values = _entropy_values(fibonacci_sphere(2000), povm)
        assert values.min() >= math.log(povm.k / 2.0) - 1e-12
        assert values.max() <= math.log(povm.k) + 1e-12

    def test_concavity_in_state_space(self):
        povm = povm_for("cuboctahedron")
        rng = np.random.default_rng(17)
        for _ in range(1000):
            u1, u2 = rng.normal(size=(2, 3))
            u1 *= rng.uniform(0, 1) / np.linalg.norm(u1)   # mixed states
            u2 *= rng.uniform(0, 1) / np.linalg.norm(u2)
            lam = rng.uniform(0, 1)
            mix = lam * u1 + (1 - lam) * u2
            H_mix = _entropy_values(mix[None, :], povm)[0]
            H1 = _entropy_values(u1[None, :], povm)[0]
            H2 = _entropy_values(u2[None, :], povm)[0]
            assert H_mix >= lam * H1 + (1 - lam) * H2 - 1e-12

    @pytest.mark.parametrize("n", [3, 6, 9])
    def test_coplanar_reduction(self, n):
        povm = make_hs_povm("n-gon", n)
        rng = np.random.default_rng(19)
        for _ in range(1000):
            u = rng.normal(size=3)
            u /= np.linalg.norm(u)
            projected = np.array([u[0], u[1], 0.0])
            a = _entropy_values(u[None, :], povm)[0]
            b = _entropy_values(projected[None, :], povm)[0]
            assert abs(a - b) < 1e-12


class TestFindExtrema:
    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_minima_are_antipodal_orbit(self, family):
        povm = povm_for(family)
        minima = find_extrema(povm, "min")
        antipodes = -povm.matrix()
        assert len(minima) == povm.k
        for point in minima:
            dist = np.min(np.linalg.norm(
                antipodes - point.location.as_array()[None, :], axis=1))
            assert 2 * math.asin(dist / 2) < 1e-6   # angular distance
            assert point.type_label == "I"

    def test_polygon_minima_on_circle(self):
        povm = make_hs_povm("n-gon", 5)
        minima = find_extrema(povm, "min")
        assert len(minima) == 5
        for point in minima:
            assert abs(point.location.z) < 1e-9

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            find_extrema(povm_for("digon"), "inflection")

    def test_max_mode_digon(self):
        maxima = find_extrema(povm_for("digon"), "max")
        assert all(abs(c.location.z) < 1e-6 for c in maxima)
        assert maxima[0].value == pytest.approx(LN2, abs=1e-9)

    def test_max_mode_cube_at_octahedron_vertices(self):
        # H for the cube POVM peaks on the 4-fold axes (the dual orbit)
        maxima = find_extrema(povm_for("cube"), "max", n_scan=50_000)
        assert len(maxima) == 6
        for point in maxima:
            coords = np.abs(point.location.as_array())
            assert np.sort(coords)[:2] == pytest.approx([0.0, 0.0], abs=1e-6)
            assert point.type_label == "II"
            assert point.classifier_statistic < 1.0


class TestRectangle:
    def test_threshold_value(self):
        threshold = rectangle_bifurcation_threshold()
        assert threshold == pytest.approx(1.17056, abs=1e-5)
        residual = math.cos(threshold / 2) * math.log(
            math.tan(threshold / 4) ** 2) + 2.0
        assert abs(residual) < 1e-10

    def test_defining_function_bracket(self):
        f = lambda a: math.cos(a / 2) * math.log(math.tan(a / 4) ** 2) + 2.0
        assert f(0.5) * f(1.5) < 0.0

    def test_below_threshold_inert_minima(self):
        povm = make_rectangle_povm(0.8)
        minima = find_extrema(povm, "min")
        assert len(minima) == 2
        v1, v2 = povm.vectors[0].as_array(), povm.vectors[2].as_array()
        long_diag = (v1 + v2) / np.linalg.norm(v1 + v2)
        for point in minima:
            dist = min(np.linalg.norm(point.location.as_array() - s * long_diag)
                       for s in (1.0, -1.0))
            assert dist < 1e-6

    def test_above_threshold_non_inert_quadruple(self):
        povm = make_rectangle_povm(1.4)
        minima = find_extrema(povm, "min")
        assert len(minima) == 4
        v1, v2 = povm.vectors[0].as_array(), povm.vectors[2].as_array()
        inert = [(v1 + v2) / np.linalg.norm(v1 + v2),
                 (v1 - v2) / np.linalg.norm(v1 - v2)]
        for point in minima:
            assert point.type_label == "non-inert"
            for axis in inert:
                dist = min(np.linalg.norm(point.location.as_array() - s * axis)
                           for s in (1.0, -1.0))
                assert dist > 1e-3
        # symmetric about the long diagonal, in the polygon plane
        assert all(abs(p.location.z) < 1e-9 for p in minima)

    def test_inert_saddles_above_threshold(self):
        povm = make_rectangle_povm(1.4)
        v1, v2 = povm.vectors[0].as_array(), povm.vectors[2].as_array()
        for diag in (v1 + v2, v1 - v2):
            direction = diag / np.linalg.norm(diag)
            point = classify_inert_point(BlochVector.from_array(direction), povm)
            assert point.kind == "saddle"
            assert point.type_label == "III"
        poles = classify_inert_point(BlochVector(0, 0, 1), povm)
        assert poles.kind == "max"

    def test_type_one_locations_exact(self):
        # type-I minimizers coincide with the antipodal orbit to 1e-8
        for family in ("tetrahedron", "icosidodecahedron"):
            povm = povm_for(family)
            antipodes = -povm.matrix()
            for point in find_extrema(povm, "min"):
                assert point.type_label == "I"
                dist = np.min(np.linalg.norm(
                    antipodes - point.location.as_array()[None, :], axis=1))
                assert dist < 1e-8


class TestClassifier:
    def test_octahedron_antipode_type_one(self):
        povm = povm_for("octahedron")
        point = classify_inert_point(BlochVector(0, 0, -1), povm)
        assert point.kind == "min" and point.type_label == "I"

    def test_cube_povm_at_octahedron_vertex(self):
        # compare the one-line criterion against a finite-difference Hessian
        povm = povm_for("cube")
        u = np.array([0.0, 0.0, 1.0])
        point = classify_inert_point(BlochVector.from_array(u), povm)
        step = 1e-4
        direction = np.array([1.0, 0.0, 0.0])

        def along(delta):
            p = math.cos(delta) * u + math.sin(delta) * direction
            return _entropy_values(p[None, :], povm)[0]

        second = (along(step) - 2 * along(0.0) + along(-step)) / step**2
        assert point.type_label == "II"
        assert (point.kind == "min") == (second > 0)
        # quantitative agreement: d2 = (s - 1)/2 along any geodesic
        assert second == pytest.approx(
            (point.classifier_statistic - 1.0) / 2.0, abs=1e-5)

    def test_icosahedral_povm_at_dodecahedron_vertex(self):
        povm = povm_for("icosahedron")
        u = np.array([0.0, 1.0 / TAU, TAU]) / math.sqrt(3.0)
        point = classify_inert_point(BlochVector.from_array(u), povm)
        step = 1e-4
        direction = np.array([1.0, 0.0, 0.0])

        def along(delta):
            p = math.cos(delta) * u + math.sin(delta) * direction
            return _entropy_values(p[None, :], povm)[0]

        second = (along(step) - 2 * along(0.0) + along(-step)) / step**2
        assert (point.kind == "min") == (second > 0)

    def test_off_axis_rejected(self):
        povm = povm_for("octahedron")
        u = np.array([0.3, 0.5, 0.9])
        u /= np.linalg.norm(u)
        with pytest.raises(ValueError):
            classify_inert_point(BlochVector.from_array(u), povm)

    def test_polygon_pole_is_max(self):
        povm = make_hs_povm("n-gon", 5)
        point = classify_inert_point(BlochVector(0, 0, 1), povm)
        assert point.kind == "max"


class TestLandscape:
    def test_samples_and_bounds(self):
        povm = povm_for("octahedron")
        scape = landscape(povm, n_samples=500)
        assert len(scape.samples) == 500
        values = [v for _, v in scape.samples]
        assert min(values) >= math.log(3) - 1e-12
        assert max(values) <= math.log(6) + 1e-12

    def test_with_extrema(self):
        povm = povm_for("tetrahedron")
        scape = landscape(povm, n_samples=100, with_extrema=True)
        assert len(scape.extrema) == 4
        assert all(c.kind == "min" for c in scape.extrema)
