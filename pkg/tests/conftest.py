import pytest

from hspovm.catalog import make_hs_povm

POLYHEDRA = ("tetrahedron", "octahedron", "cube", "cuboctahedron",
             "icosahedron", "dodecahedron", "icosidodecahedron")
ALL_FAMILIES = ("digon",) + POLYHEDRA

_cache = {}


def povm_for(family, n=None):
    key = (family, n)
    if key not in _cache:
        _cache[key] = make_hs_povm(family, n)
    return _cache[key]


@pytest.fixture(params=ALL_FAMILIES)
def named_povm(request):
    return povm_for(request.param)
