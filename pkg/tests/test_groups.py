import math

import numpy as np
import pytest

from hspovm.bloch import BlochVector
from hspovm.groups import (
    TAU,
    degree_bound,
    double_coset_profile,
    generate_group,
    orbit,
    rotation_matrix,
    stabilizer,
)


def _unit(*coords):
    a = np.array(coords, dtype=float)
    return BlochVector.from_array(a / np.linalg.norm(a))


# (family, group tag, seed, |orbit|, |stab|, n_a, n_s, n(v), deg bound)
TABLE_ROWS = [
    ("tetrahedron", "T", (1, 1, 1), 4, 3, 0, 2, 2.0, 2),
    ("octahedron", "O", (0, 0, 1), 6, 4, 0, 3, 3.0, 3),
    ("cube", "O", (1, 1, 1), 8, 3, 0, 4, 4.0, 5),
    ("cuboctahedron", "O", (0, 1, 1), 12, 2, 4, 3, 5.0, 7),
    ("icosahedron", "I", (0, TAU, 1), 12, 5, 0, 4, 4.0, 5),
    ("dodecahedron", "I", (0, 1 / TAU, TAU), 20, 3, 4, 4, 6.0, 9),
    ("icosidodecahedron", "I", (0, 0, 1), 30, 2, 14, 2, 9.0, 15),
]


class TestGeneration:
    @pytest.mark.parametrize("tag,n,order", [
        ("C", 1, 1), ("C", 5, 5), ("C", 12, 12),
        ("T", None, 12), ("O", None, 24), ("I", None, 60),
    ])
    def test_orders(self, tag, n, order):
        assert generate_group(tag, n).order == order

    def test_elements_orthogonal(self):
        for tag in ("T", "O", "I"):
            for m in generate_group(tag):
                assert np.linalg.norm(m @ m.T - np.eye(3)) < 1e-10
                assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-10)

    def test_closed_under_product(self):
        g = generate_group("O")
        mats = list(g.elements)
        rng = np.random.default_rng(3)
        for _ in range(50):
            a, b = rng.integers(0, len(mats), size=2)
            prod = mats[a] @ mats[b]
            assert min(np.linalg.norm(prod - m) for m in mats) < 1e-8

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            generate_group("H")

    def test_cn_needs_n(self):
        with pytest.raises(ValueError):
            generate_group("C")


class TestOrbitsAndStabilizers:
    @pytest.mark.parametrize("fam,tag,seed,osize,ssize,na,ns,nv,bound", TABLE_ROWS)
    def test_table_rows(self, fam, tag, seed, osize, ssize, na, ns, nv, bound):
        group = generate_group(tag)
        v = _unit(*seed)
        orb = orbit(group, v)
        stab = stabilizer(group, v)
        assert len(orb) == osize
        assert stab.order == ssize
        profile = double_coset_profile(group, v)
        assert (profile.n_a, profile.n_s, profile.n_v) == (na, ns, nv)
        assert degree_bound(profile, osize, ssize) == bound

    @pytest.mark.parametrize("n,na,ns,nv,bound", [
        (4, 2, 2, 3.0, 3), (5, 4, 1, 3.0, 4), (6, 4, 2, 4.0, 5),
        (7, 6, 1, 4.0, 6), (12, 10, 2, 7.0, 11),
    ])
    def test_polygon_rows(self, n, na, ns, nv, bound):
        group = generate_group("C", n)
        v = BlochVector(1, 0, 0)
        profile = double_coset_profile(group, v)
        assert (profile.n_a, profile.n_s, profile.n_v) == (na, ns, nv)
        assert degree_bound(profile, n, 1) == bound
        assert stabilizer(group, v).order == 1

    def test_orbit_stabilizer_theorem(self):
        for fam, tag, seed, *_ in TABLE_ROWS:
            group = generate_group(tag)
            v = _unit(*seed)
            assert len(orbit(group, v)) * stabilizer(group, v).order == group.order

    def test_orbit_deterministic_order(self):
        group = generate_group("I")
        v = _unit(0, 0, 1)
        first = [p.as_array() for p in orbit(group, v)]
        second = [p.as_array() for p in orbit(group, v)]
        assert all(np.array_equal(a, b) for a, b in zip(first, second))

    def test_orbit_centroid_zero(self):
        for fam, tag, seed, *_ in TABLE_ROWS:
            group = generate_group(tag)
            pts = np.array([p.as_array() for p in orbit(group, _unit(*seed))])
            assert np.linalg.norm(pts.sum(axis=0)) < 1e-12 * len(pts)


class TestDoubleCosets:
    @pytest.mark.parametrize("fam,tag,seed,osize,ssize,na,ns,nv,bound", TABLE_ROWS)
    def test_coset_sizes_partition(self, fam, tag, seed, osize, ssize, na, ns,
                                   nv, bound):
        group = generate_group(tag)
        profile = double_coset_profile(group, _unit(*seed))
        assert sum(profile.coset_sizes) == group.order
        assert set(profile.coset_sizes) <= {ssize, ssize * ssize}

    def test_antipodal_flags(self):
        assert double_coset_profile(generate_group("O"),
                                    _unit(0, 0, 1)).antipodal_in_orbit
        assert not double_coset_profile(generate_group("T"),
                                        _unit(1, 1, 1)).antipodal_in_orbit


class TestRotationMatrix:
    def test_rodrigues_round_trip(self):
        axis = np.array([1.0, 2.0, 2.0]) / 3.0
        m = rotation_matrix(axis, 0.7)
        assert np.allclose(m @ axis, axis)
        assert np.linalg.det(m) == pytest.approx(1.0)

    def test_angle(self):
        m = rotation_matrix([0, 0, 1], 2 * math.pi / 5)
        trace_angle = math.acos((np.trace(m) - 1) / 2)
        assert trace_angle == pytest.approx(2 * math.pi / 5, abs=1e-12)
