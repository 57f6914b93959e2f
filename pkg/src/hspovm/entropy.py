"""Entropy of measurement on the Bloch sphere and its global optimization.

For a k-outcome normalized rank-1 POVM with unit Bloch vectors v_j, the
entropy of measurement at a pure state u is

    H(u) = ln(k/2) + (2/k) sum_j h(u . v_j),

and the relative entropy is ln k - H(u).  Global extrema are located by a
Fibonacci-lattice scan refined with derivative-free local search (H fails
to be twice differentiable exactly at the entropy minima, the antipodes of
the POVM vectors, so gradient steps are not trusted there).  Critical
points forced by symmetry (inert states) are classified by the sign of a
one-line statistic wherever the isotropy group acts irreducibly on the
tangent plane, and by geodesic second-difference probing otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .bloch import BlochVector, EntropyKernel, SHANNON, h_array
from .catalog import HsPovm
from .groups import orbit as group_orbit
from .groups import stabilizer as group_stabilizer

DEFAULT_GRID = 200_000
REFINE_FTOL = 1e-13
CLUSTER_ANGLE = 1e-4


@dataclass(frozen=True)
class CriticalPoint:
    """Located extremum or saddle of the entropy of measurement."""

    location: BlochVector
    value: float
    kind: str                 # min | max | saddle | unclassified
    type_label: str = ""      # I | II | III | non-inert | degenerate
    classifier_statistic: float = math.nan
    converged: bool = True    # local refinement hit its tolerance


@dataclass(frozen=True)
class EntropyLandscape:
    povm: HsPovm
    samples: tuple            # (BlochVector, H) pairs
    extrema: tuple = field(default_factory=tuple)


def _entropy_values(points: np.ndarray, povm: HsPovm,
                    kernel: EntropyKernel = SHANNON) -> np.ndarray:
    """Vectorized entropy at an (n, 3) array of Bloch points (norm <= 1)."""
    k = povm.k
    dots = points @ povm.matrix().T
    if kernel.kind == "shannon":
        return math.log(k / 2.0) + (2.0 / k) * np.sum(h_array(dots), axis=-1)
    probs = (dots + 1.0) / k
    return np.apply_along_axis(kernel.entropy, -1, probs)


def entropy_at(u: BlochVector, povm: HsPovm,
               kernel: EntropyKernel = SHANNON) -> float:
    """Entropy of measurement at the pure state u."""
    return float(_entropy_values(u.as_array()[None, :], povm, kernel)[0])


def relative_entropy_at(u: BlochVector, povm: HsPovm) -> float:
    """Relative entropy ln k - H(u), in [0, ln 2]."""
    return math.log(povm.k) - entropy_at(u, povm)


def fibonacci_sphere(n: int) -> np.ndarray:
    """Deterministic low-discrepancy lattice of n points on the sphere."""
    i = np.arange(n)
    z = 1.0 - (2.0 * i + 1.0) / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    golden = math.pi * (3.0 - math.sqrt(5.0))
    phi = golden * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def landscape(povm: HsPovm, n_samples: int = 1000,
              kernel: EntropyKernel = SHANNON,
              with_extrema: bool = False) -> EntropyLandscape:
    points = fibonacci_sphere(n_samples)
    values = _entropy_values(points, povm, kernel)
    samples = tuple((BlochVector.from_array(p), float(v))
                    for p, v in zip(points, values))
    extrema = tuple(find_extrema(povm, "min")) if with_extrema else ()
    return EntropyLandscape(povm=povm, samples=samples, extrema=extrema)


def _tangent_frame(c: np.ndarray) -> tuple:
    a = np.array([1.0, 0.0, 0.0]) if abs(c[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(c, a)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(c, e1)


def _refine_on_sphere(start: np.ndarray, objective, max_recenter: int = 6):
    """Nelder-Mead on local tangent charts, re-centred until stationary."""
    center = start / np.linalg.norm(start)
    value = objective(center)
    for _ in range(max_recenter):
        e1, e2 = _tangent_frame(center)

        def chart(st):
            p = center + st[0] * e1 + st[1] * e2
            return objective(p / np.linalg.norm(p))

        res = minimize(chart, np.zeros(2), method="Nelder-Mead",
                       options={"fatol": REFINE_FTOL, "xatol": 1e-9,
                                "maxiter": 600})
        new = center + res.x[0] * e1 + res.x[1] * e2
        new /= np.linalg.norm(new)
        moved = np.linalg.norm(new - center)
        center, value = new, res.fun
        if moved < 1e-10:
            break
    return center, value, bool(res.success)


def _cluster_points(points, values, angle_tol: float = CLUSTER_ANGLE):
    clusters = []
    for p, val in sorted(zip(points, values), key=lambda t: t[1]):
        for rep, best in clusters:
            if np.arccos(np.clip(rep @ p, -1.0, 1.0)) < angle_tol:
                break
        else:
            clusters.append((p, val))
    return clusters


def _recenter_on_inert(p, value, povm: HsPovm, objective):
    """Re-center a cluster on the exact antipodal inert point when the
    refined location already coincides with it to optimizer accuracy and
    the inert point's value is no worse (it is a known critical point, so
    this only sharpens the reported location)."""
    antipodes = -povm.matrix()
    idx = int(np.argmin(np.linalg.norm(antipodes - p[None, :], axis=1)))
    candidate = antipodes[idx]
    if np.linalg.norm(candidate - p) < 1e-6:
        candidate_value = objective(candidate)
        if candidate_value <= value + 1e-10:
            return candidate, candidate_value
    return p, value


def _find_extrema_circle(povm: HsPovm, sign: float, n_scan: int,
                         kernel: EntropyKernel) -> list:
    """1D search for coplanar POVMs: the minimum over the sphere lies on
    the containing circle (H depends on u only through its projection and
    is concave in the Bloch ball)."""
    coords = povm.matrix()
    if np.max(np.abs(coords[:, 2])) < 1e-12:
        axis = None                      # z = 0 plane
    else:                                # digon: vectors along an axis
        axis = coords[0]

    if axis is None:
        phis = np.linspace(0.0, 2.0 * math.pi, max(n_scan, 4096), endpoint=False)
        pts = np.column_stack([np.cos(phis), np.sin(phis), np.zeros_like(phis)])
        vals = sign * _entropy_values(pts, povm, kernel)

        def obj(phi):
            p = np.array([math.cos(phi), math.sin(phi), 0.0])
            return sign * _entropy_values(p[None, :], povm, kernel)[0]

        order = np.argsort(vals)
        window = vals[order[0]] + 1e-3
        spacing = 2.0 * math.pi / len(phis)
        candidates = [phis[i] for i in order[: 4 * povm.k] if vals[i] <= window]
        refined = []
        for phi0 in candidates:
            res = minimize_scalar(obj, bounds=(phi0 - 2 * spacing, phi0 + 2 * spacing),
                                  method="bounded", options={"xatol": 1e-12})
            refined.append((np.array([math.cos(res.x), math.sin(res.x), 0.0]),
                            res.fun))
        pts_r = [p for p, _ in refined]
        vals_r = [v for _, v in refined]
    else:
        ts = np.linspace(-1.0, 1.0, max(n_scan, 4096))
        e1, e2 = _tangent_frame(axis)

        def embed(t):
            return float(t) * axis + math.sqrt(max(0.0, 1.0 - t * t)) * e1

        def obj(t):
            return sign * _entropy_values(embed(t)[None, :], povm, kernel)[0]

        pts = ts[:, None] * axis[None, :] + np.sqrt(1 - ts**2)[:, None] * e1[None, :]
        vals = sign * _entropy_values(pts, povm, kernel)
        # entropy depends on u . axis only; extrema sit at grid-local minima
        # plus the two poles, each refined in the 1D parameter
        pts_r, vals_r = [pts[0], pts[-1]], [float(vals[0]), float(vals[-1])]
        spacing = ts[1] - ts[0]
        for i in range(1, len(ts) - 1):
            if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]:
                res = minimize_scalar(
                    obj, bounds=(max(-1.0, ts[i] - 2 * spacing),
                                 min(1.0, ts[i] + 2 * spacing)),
                    method="bounded", options={"xatol": 1e-12})
                pts_r.append(embed(res.x))
                vals_r.append(float(res.fun))

    def objective(p):
        return sign * _entropy_values(p[None, :], povm, kernel)[0]

    clusters = _cluster_points(pts_r, vals_r)
    clusters = [_recenter_on_inert(p, v, povm, objective) for p, v in clusters]
    best = min(v for _, v in clusters)
    return [(p, sign * v) for p, v in clusters if v <= best + 1e-8]


def find_extrema(povm: HsPovm, mode: str = "min", n_scan: int = DEFAULT_GRID,
                 kernel: EntropyKernel = SHANNON,
                 n_candidates: int = 2000) -> list:
    """Locate the global extrema of H over pure states.

    Fibonacci-lattice scan followed by Nelder-Mead refinement on tangent
    charts; refined points are clustered into orbits (angular tolerance
    1e-4) and only clusters within 1e-8 of the best value are returned.
    """
    if mode not in ("min", "max"):
        raise ValueError("mode must be 'min' or 'max'")
    sign = 1.0 if mode == "min" else -1.0

    if povm.is_coplanar() or povm.family == "digon":
        located = _find_extrema_circle(povm, sign, n_scan // 16, kernel)
    else:
        points = fibonacci_sphere(n_scan)
        values = sign * _entropy_values(points, povm, kernel)
        order = np.argsort(values)[:n_candidates]

        def objective(p):
            return sign * _entropy_values(p[None, :], povm, kernel)[0]

        # thin the candidate list: keep scan points not adjacent to an
        # already accepted candidate (waste-free multistart)
        accepted = []
        for idx in order:
            p = points[idx]
            if all(rep @ p < math.cos(0.05) for rep in accepted):
                accepted.append(p)
        refined, refined_vals, converged = [], [], {}
        for p in accepted:
            loc, val, ok = _refine_on_sphere(p, objective)
            refined.append(loc)
            refined_vals.append(val)
            converged[loc.tobytes()] = ok
        clusters = _cluster_points(refined, refined_vals)
        flags = [converged.get(p.tobytes(), True) for p, _ in clusters]
        clusters = [_recenter_on_inert(p, v, povm, objective) for p, v in clusters]
        best = min(v for _, v in clusters)
        located = [(p, sign * v, ok) for (p, v), ok in zip(clusters, flags)
                   if v <= best + 1e-8]

    out = []
    for p, value, *rest in located:
        u = BlochVector.from_array(p)
        label, stat = _type_of_point(u, povm)
        out.append(CriticalPoint(location=u, value=float(value),
                                 kind=mode, type_label=label,
                                 classifier_statistic=stat,
                                 converged=rest[0] if rest else True))
    out.sort(key=lambda c: tuple(np.round(c.location.as_array(), 8)))
    return out


def _type_of_point(u: BlochVector, povm: HsPovm) -> tuple:
    # refined extrema are accurate to ~1e-8; classify with a looser net
    arr = u.as_array()
    coords = povm.matrix()
    if np.min(np.linalg.norm(coords + arr[None, :], axis=1)) < 1e-6:
        return "I", math.nan
    try:
        group = povm.rotation_group()
    except ValueError:
        return "non-inert", math.nan
    stab_order = sum(1 for m in group.elements
                     if np.linalg.norm(m @ arr - arr) < 1e-6)
    on_orbit = np.min(np.linalg.norm(coords - arr[None, :], axis=1)) < 1e-6
    if stab_order < 2 and not on_orbit:
        return "non-inert", math.nan
    stat = _criterion_statistic(u, povm)
    fixing = tuple(m for m in group.elements
                   if np.linalg.norm(m @ arr - arr) < 1e-6)
    return ("II" if _max_rotation_order(fixing) > 2 else "III"), stat


def _max_rotation_order(matrices) -> int:
    orders = [1]
    for m in matrices:
        angle = math.acos(min(1.0, max(-1.0, (np.trace(m) - 1.0) / 2.0)))
        if angle > 1e-9:
            orders.append(int(round(2.0 * math.pi / angle)))
    return max(orders)


def _criterion_statistic(u: BlochVector, povm: HsPovm) -> float:
    """s = (2/|orbit(u)|) sum over the orbit of (w . v) ln(1 + w . v)."""
    group = povm.rotation_group()
    orb = group_orbit(group, u)
    v = povm.fiducial.as_array()
    total = 0.0
    for w in orb:
        t = float(np.clip(w.as_array() @ v, -1.0, 1.0))
        if t <= -1.0 + 1e-15:
            return -math.inf           # type I geometry, criterion inapplicable
        total += t * math.log1p(t)
    return 2.0 * total / len(orb)


def _geodesic_second_difference(u: np.ndarray, direction: np.ndarray,
                                povm: HsPovm, step: float = 1e-4) -> float:
    def at(delta):
        p = math.cos(delta) * u + math.sin(delta) * direction
        return _entropy_values(p[None, :], povm)[0]

    return (at(step) - 2.0 * at(0.0) + at(-step)) / (step * step)


def classify_inert_point(u: BlochVector, povm: HsPovm) -> CriticalPoint:
    """Classify a symmetry-forced critical point of H.

    Antipodes of POVM vectors (type I) are local minima of H.  Points
    whose stabilizer contains a rotation of order > 2 are classified by
    the statistic s = (2/|Gu|) sum (w.v) ln(1 + w.v): s > 1 means local
    minimum of H, s < 1 local maximum.  Remaining axis points (type III)
    are probed along several geodesics with second differences.
    """
    arr = u.as_array()
    coords = povm.matrix()
    value = entropy_at(u, povm)
    if np.min(np.linalg.norm(coords + arr[None, :], axis=1)) < 1e-8:
        return CriticalPoint(location=u, value=value, kind="min",
                             type_label="I")
    group = povm.rotation_group()
    stab = group_stabilizer(group, u)
    on_orbit = np.min(np.linalg.norm(coords - arr[None, :], axis=1)) < 1e-8
    if stab.order < 2 and not on_orbit:
        raise ValueError("point is not on a rotation axis of the POVM symmetry")
    stat = _criterion_statistic(u, povm)
    if _max_rotation_order(stab.elements) > 2:
        if abs(stat - 1.0) < 1e-9:
            return CriticalPoint(location=u, value=value, kind="unclassified",
                                 type_label="degenerate",
                                 classifier_statistic=stat)
        kind = "min" if stat > 1.0 else "max"
        return CriticalPoint(location=u, value=value, kind=kind,
                             type_label="II", classifier_statistic=stat)
    # type III: probe curvature along a fan of geodesics
    e1, e2 = _tangent_frame(arr)
    signs = []
    for j in range(8):
        direction = math.cos(j * math.pi / 8) * e1 + math.sin(j * math.pi / 8) * e2
        signs.append(_geodesic_second_difference(arr, direction, povm))
    if all(s > 1e-7 for s in signs):
        kind = "min"
    elif all(s < -1e-7 for s in signs):
        kind = "max"
    else:
        kind = "saddle"
    return CriticalPoint(location=u, value=value, kind=kind,
                         type_label="III", classifier_statistic=stat)


def rectangle_bifurcation_threshold(tol: float = 1e-12) -> float:
    """Root of cos(a/2) ln(tan^2(a/4)) + 2 on (0, pi/2), by bisection.

    Below the root the rectangle POVM has its entropy minima at the inert
    states along the long diagonal; above it those become saddles and two
    pairs of non-inert minimizers take over.
    """

    def f(a):
        return math.cos(a / 2.0) * math.log(math.tan(a / 4.0) ** 2) + 2.0

    lo, hi = 1e-9, math.pi / 2.0 - 1e-9
    if f(lo) >= 0.0 or f(hi) <= 0.0:
        raise RuntimeError("bisection bracket lost")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
