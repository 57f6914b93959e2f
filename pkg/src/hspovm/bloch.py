"""Qubit states on the Bloch sphere and the elementary entropy kernel.

Pure qubit states are represented by unit vectors in R^3 (the Bloch
representation, normalized to radius 1).  Everything downstream — outcome
probabilities, the measurement-entropy summand h, and the pluggable
Shannon/Renyi/Tsallis kernels — lives here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

UNIT_TOL = 1e-12       # tolerance for "is a unit vector" invariants
RENORM_TOL = 1e-9      # construction renormalizes within this, errors beyond
NEG_DUST = 1e-12       # probabilities may undershoot 0 by rounding


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class BlochVector:
    """Unit vector in R^3 representing a pure qubit state."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(norm - 1.0) > RENORM_TOL:
            raise ValueError(f"Bloch vector norm {norm} too far from 1")
        if norm != 1.0:
            object.__setattr__(self, "x", self.x / norm)
            object.__setattr__(self, "y", self.y / norm)
            object.__setattr__(self, "z", self.z / norm)

    @classmethod
    def from_array(cls, a) -> "BlochVector":
        a = np.asarray(a, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "BlochVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def __neg__(self) -> "BlochVector":
        return BlochVector(-self.x, -self.y, -self.z)


@dataclass(frozen=True)
class ProbabilityVector:
    """Outcome distribution of a k-element normalized rank-1 POVM.

    Entries are bounded by d/k (the extreme value for a coincident state)
    and sum to one; tiny negative rounding dust is clamped to zero.
    """

    p: tuple
    d: int = 2

    def __post_init__(self):
        k = len(self.p)
        upper = self.d / k + NEG_DUST
        clamped = []
        for value in self.p:
            if value < -NEG_DUST or value > upper:
                raise ValueError(f"probability {value} outside [0, {self.d}/{k}]")
            clamped.append(0.0 if value < 0.0 else value)
        total = math.fsum(clamped)
        if abs(total - 1.0) > UNIT_TOL * max(1, k):
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "p", tuple(clamped))

    def __len__(self):
        return len(self.p)

    def as_array(self) -> np.ndarray:
        return np.array(self.p)


def eta(x: float) -> float:
    """Shannon summand eta(x) = -x ln x, with eta(0) = 0.

    Values in (-1e-12, 0) are clamped to 0 (dot-product rounding dust);
    anything further outside [0, 1] raises DomainError.
    """
    if x < 0.0:
        if x < -NEG_DUST:
            raise DomainError(f"eta undefined for x={x}")
        return 0.0
    if x > 1.0:
        if x > 1.0 + NEG_DUST:
            raise DomainError(f"eta undefined for x={x}")
        return 0.0
    if x == 0.0:
        return 0.0
    return -x * math.log(x)


def eta_array(x: np.ndarray) -> np.ndarray:
    """Vectorized eta with the same clamping rules (no domain checking)."""
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -x * np.log(x)
    return np.nan_to_num(out, nan=0.0, posinf=0.0, neginf=0.0, copy=False)


def probability(u: BlochVector, v: BlochVector, d: int = 2, k: int = 2) -> float:
    """Outcome probability ((d-1) u.v + 1)/k for normalized Bloch vectors.

    d is kept general so the same affine rule serves the d>2 bookkeeping in
    the informational-power formulas; for BlochVector inputs d=2.
    """
    if k < d:
        raise ValueError("normalized rank-1 POVMs need k >= d")
    return ((d - 1) * u.dot(v) + 1.0) / k


def h(t: float, d: int = 2) -> float:
    """Entropy summand h(t) = eta(((d-1) t + 1)/d) on [-1/(d-1), 1]."""
    lo = -1.0 / (d - 1)
    if t < lo - NEG_DUST or t > 1.0 + NEG_DUST:
        raise DomainError(f"h undefined for t={t} (d={d})")
    return eta(((d - 1) * t + 1.0) / d)


def h_array(t: np.ndarray) -> np.ndarray:
    """Vectorized h for d=2: eta((t+1)/2)."""
    return eta_array((t + 1.0) * 0.5)


def h_derivative(t: float, order: int = 1) -> float:
    """Exact derivative of h (d=2) of the given order.

    h'(t) = -(1/2)(ln((t+1)/2) + 1); for order n >= 2,
    h^(n)(t) = (1/2)(-1)^(n-1) (n-2)! (1+t)^(1-n).  Even orders are
    strictly negative and odd orders >= 3 strictly positive on (-1, 1),
    which is what makes the interpolation certificates one-sided.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order == 0:
        return h(t)
    if t <= -1.0:
        raise DomainError("h derivatives are singular at t=-1")
    if t > 1.0 + NEG_DUST:
        raise DomainError(f"h undefined for t={t}")
    if order == 1:
        return -0.5 * (math.log((t + 1.0) / 2.0) + 1.0)
    sign = 1.0 if (order - 1) % 2 == 0 else -1.0
    return 0.5 * sign * math.factorial(order - 2) * (1.0 + t) ** (1 - order)


def fubini_study_distance(u: BlochVector, v: BlochVector) -> float:
    """Fubini-Study distance arccos sqrt((1 + u.v)/2), in [0, pi/2]."""
    overlap = (1.0 + u.dot(v)) / 2.0
    overlap = min(max(overlap, 0.0), 1.0)
    return math.acos(math.sqrt(overlap))


@dataclass(frozen=True)
class EntropyKernel:
    """Entropy functional applied to POVM outcome distributions.

    kind:
        "shannon"  sum of eta(p_j)
        "tsallis"  (1 - sum p_j^alpha)/(alpha - 1)
        "renyi"    ln(sum p_j^alpha)/(1 - alpha)

    Renyi entropy is a monotone function of the Tsallis power sum, so both
    share the additive summand (x - x^alpha)/(alpha - 1) wherever only the
    location of extrema matters (in particular in the interpolation
    certificates, valid for alpha in (0, 2]).
    """

    kind: str = "shannon"
    alpha: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.kind not in ("shannon", "renyi", "tsallis"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "shannon":
            if self.alpha is not None:
                raise ValueError("shannon kernel takes no alpha")
        else:
            if self.alpha is None or not 0.0 < self.alpha or self.alpha == 1.0:
                raise ValueError("renyi/tsallis kernels need alpha > 0, alpha != 1")

    # ---- additive summand (used by certificates and Tsallis entropy) ----

    def pointwise(self, x: float) -> float:
        """Summand applied to a single probability."""
        if self.kind == "shannon":
            return eta(x)
        x = min(max(x, 0.0), 1.0)
        return (x - x ** self.alpha) / (self.alpha - 1.0)

    def pointwise_prime(self, x: float) -> float:
        if self.kind == "shannon":
            if x <= 0.0:
                raise DomainError("eta' singular at 0")
            return -(math.log(x) + 1.0)
        if x <= 0.0 and self.alpha < 1.0:
            raise DomainError("power summand derivative singular at 0")
        return (1.0 - self.alpha * x ** (self.alpha - 1.0)) / (self.alpha - 1.0)

    def h(self, t: float) -> float:
        """Summand composed with the qubit probability map, h(t) = f((1+t)/2)."""
        return self.pointwise((1.0 + t) / 2.0)

    def h_prime(self, t: float) -> float:
        return 0.5 * self.pointwise_prime((1.0 + t) / 2.0)

    # ---- full entropy of a distribution ----

    def entropy(self, p: np.ndarray) -> float:
        p = np.asarray(p, dtype=float)
        if self.kind == "shannon":
            return float(np.sum(eta_array(p)))
        power_sum = float(np.sum(np.clip(p, 0.0, 1.0) ** self.alpha))
        if self.kind == "tsallis":
            return (1.0 - power_sum) / (self.alpha - 1.0)
        return math.log(power_sum) / (1.0 - self.alpha)


SHANNON = EntropyKernel("shannon")
