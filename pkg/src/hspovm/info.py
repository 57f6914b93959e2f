"""Informational power, entropy bounds, and average relative entropy.

For a symmetric POVM the maximal relative entropy over input states is the
informational power W of the measurement (the classical capacity of the
induced quantum-classical channel), and for the highly symmetric catalog
the maximizers are known analytically, giving the closed form

    W = ln 2 - (2/k) sum_j eta((1 - v_j . v)/2)

with v any fiducial vector.  All values are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import eta
from .catalog import HsPovm
from .entropy import _entropy_values, fibonacci_sphere

#: families the closed form applies to (the entropy minimizers are the
#: antipodal orbit; rectangles and custom sets must go through the
#: numerical optimizer instead)
_HS_FAMILY_PREFIXES = ("digon", "tetrahedron", "octahedron", "cube",
                       "cuboctahedron", "icosahedron", "dodecahedron",
                       "icosidodecahedron")


@dataclass(frozen=True)
class InfoPowerReport:
    family: str
    W: float
    H_min: float
    average_relative_entropy: float
    uncertainty_bound: float = None   # type: ignore[assignment]


def _is_hs_family(povm: HsPovm) -> bool:
    return povm.family in _HS_FAMILY_PREFIXES or povm.family.endswith("-gon")


def informational_power(povm: HsPovm) -> float:
    """Closed-form informational power of a highly symmetric POVM."""
    if not _is_hs_family(povm):
        raise ValueError(
            f"no closed form for family {povm.family!r}; minimize the "
            "entropy numerically (entropy.find_extrema) instead")
    v = povm.fiducial.as_array()
    dots = povm.matrix() @ v
    return math.log(2.0) - (2.0 / povm.k) * math.fsum(
        eta((1.0 - t) / 2.0) for t in dots)


def ngon_informational_power(n: int) -> float:
    """W = ln 2 - (2/n) sum_j eta(sin^2(pi j / n)) for the regular n-gon."""
    if n < 2:
        raise ValueError("polygons need n >= 2")
    return math.log(2.0) - (2.0 / n) * math.fsum(
        eta(math.sin(math.pi * j / n) ** 2) for j in range(1, n + 1))


def average_relative_entropy(d: int) -> float:
    """Sphere average of the relative entropy: ln d - sum_{j=2}^d 1/j.

    Independent of the measurement; tends to 1 - gamma (Euler-Mascheroni)
    as d grows.
    """
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if d <= 10_000_000:
        harmonic_tail = math.fsum(1.0 / j for j in range(2, d + 1))
    else:   # digamma asymptotics, well below any tolerance we use
        harmonic_tail = (math.log(d) + 0.5772156649015329
                         + 1.0 / (2 * d) - 1.0 / (12 * d * d) - 1.0)
    return math.log(d) - harmonic_tail


def uncertainty_upper_bound(povm1: HsPovm, povm2: HsPovm) -> float:
    """Upper bound ln 2 + ln max |cos theta_jl| for the relative entropy
    of the aggregated POVM (1/2 Pi^1, 1/2 Pi^2), where theta_jl is half
    the Bloch angle between elements of the two parts."""
    dots = povm1.matrix() @ povm2.matrix().T
    max_cos = math.sqrt((1.0 + float(dots.max())) / 2.0)
    return math.log(2.0) + math.log(max_cos)


def uncertainty_upper_bound_general(d: int, max_normalized_dot: float) -> float:
    """General-dimension form: ln d + (1/2) ln((1-1/d) c + 1/d) with c the
    largest normalized Bloch inner product between the two parts."""
    return math.log(d) + 0.5 * math.log((1.0 - 1.0 / d) * max_normalized_dot
                                        + 1.0 / d)


def entropy_bounds(povm: HsPovm) -> tuple:
    """(ln(k/2), ln k): the a priori range of H over pure states."""
    return (math.log(povm.k / 2.0), math.log(povm.k))


def sphere_average_relative_entropy(povm: HsPovm, n_points: int = 1_000_000) -> float:
    """Quasi-random estimate of the sphere average of the relative entropy
    (which should match average_relative_entropy(2) for any POVM)."""
    points = fibonacci_sphere(n_points)
    values = _entropy_values(points, povm)
    return math.log(povm.k) - float(np.mean(values))


def info_power_report(povm: HsPovm) -> InfoPowerReport:
    W = informational_power(povm)
    return InfoPowerReport(
        family=povm.family,
        W=W,
        H_min=math.log(povm.k) - W,
        average_relative_entropy=average_relative_entropy(2),
    )


#: five-digit reference values for the nine catalog families
TABLE_REFERENCE = {
    "digon": 0.69315,
    "tetrahedron": 0.28768,
    "octahedron": 0.23105,
    "cube": 0.21576,
    "cuboctahedron": 0.20273,
    "icosahedron": 0.20189,
    "dodecahedron": 0.19686,
    "icosidodecahedron": 0.19486,
}
