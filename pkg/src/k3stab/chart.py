"""Standard stability conditions and their chart ``C - [0, +inf)``.

A point of the projectivised stability manifold is stored as a twist exponent
``n`` together with a chart parameter ``z``: it stands for ``T^n sigma_z``.
Central charges are normalised by ``Z(k_x) = -1`` and ``phi(k_x) = 1``, so
``Z(O_X) = -z``.  For ``Im z < 0`` the heart is ``Coh X`` (region ``W_-``),
for ``Im z > 0`` it is the tilt (``W_+``) and the negative real axis is the
wall ``W_0``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .errors import DomainError, NotStable
from .lattice import Atom, AtomKind, MukaiVector

EPS_DOM = 1e-12
EPS_WALL = 1e-12


class Region(enum.Enum):
    W_MINUS = "WMinus"
    W_ZERO = "WZero"
    W_PLUS = "WPlus"


def _ray_distance(z: complex) -> float:
    return abs(z.imag) if z.real >= 0 else abs(z)


def region(z: complex, tol: float = 0.0) -> Region:
    """Which of ``W_-``, ``W_0``, ``W_+`` the parameter ``z`` belongs to.

    ``tol`` is the half-width of the band around the negative real axis that
    counts as the wall; literals use 0, computed values ``EPS_WALL``.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"chart parameter {z} is not finite")
    if _ray_distance(z) < EPS_DOM:
        raise DomainError(f"chart parameter {z} lies on the forbidden ray [0, +inf)")
    if abs(z.imag) <= tol:
        return Region.W_ZERO
    return Region.W_MINUS if z.imag < 0 else Region.W_PLUS


@dataclass(frozen=True)
class ChartPoint:
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        region(self.z)

    @property
    def region(self) -> Region:
        return region(self.z)


@dataclass(frozen=True)
class StabilityPoint:
    """The stability condition ``T^twist sigma_z`` up to the C-action."""

    twist: int
    chart: ChartPoint

    @property
    def is_canonical(self) -> bool:
        return self.chart.region is not Region.W_PLUS


def as_chart(p) -> ChartPoint:
    return p if isinstance(p, ChartPoint) else ChartPoint(complex(p))


def central_charge(p, v: MukaiVector) -> complex:
    """``Z(v) = -v1 z - v2 + v1``, the linear extension of ``Z(k)=-1``, ``Z(O)=-z``."""
    z = as_chart(p).z
    return -v.v1 * z - v.v2 + v.v1


def _upper_arg(w: complex) -> float:
    # argument in (0, pi] for w in the closed upper half plane minus [0, inf)
    if w.imag == 0.0 and w.real < 0:
        return math.pi
    return cmath.phase(w)


def phase_of_stable(p, atom: Atom) -> float:
    """Normalised phase of an atom that is (semi)stable at the chart point.

    The phase is read from the region table rather than from ``arg Z`` modulo
    2, which pins the branch for every atom.  ``T^t k_x`` with ``|t| <= 1`` and
    shifts of ``O_X`` are covered in every region where they are semistable;
    ``I_{m,n}`` is covered on ``W_-``.
    """
    p = as_chart(p)
    z, reg = p.z, p.region
    if atom.kind is AtomKind.STRUCTURE:
        if reg is Region.W_MINUS:
            base = cmath.phase(-z) / math.pi
        elif reg is Region.W_PLUS:
            base = cmath.phase(z) / math.pi - 1.0
        else:
            base = 0.0
    elif atom.kind is AtomKind.SKY_TWIST:
        t = atom.twist
        if t == 0:
            base = 1.0
        elif reg is Region.W_ZERO and t in (-1, 1):
            base = 1.0
        elif reg is Region.W_MINUS and t == 1:
            base = 1.0 + cmath.phase(1 - z) / math.pi
        elif reg is Region.W_PLUS and t == -1:
            base = cmath.phase(z - 1) / math.pi
        else:
            raise NotStable(f"{Atom.sky(t)} is not semistable in {reg.value}")
    else:
        if reg is not Region.W_MINUS:
            raise NotStable(f"{atom} is only tabulated on WMinus")
        base = _upper_arg(atom.n - atom.m * z) / math.pi
    return base + atom.shift


def stable_atoms(p) -> list[Atom]:
    """The region-table atoms stable (or semistable, on the wall) at ``p``."""
    reg = as_chart(p).region
    if reg is Region.W_MINUS:
        return [Atom.sky(0), Atom.structure(), Atom.sky(1)]
    if reg is Region.W_PLUS:
        return [Atom.sky(0), Atom.structure(), Atom.sky(-1)]
    return [Atom.sky(0), Atom.structure(), Atom.sky(1), Atom.sky(-1)]


def cosine_rule_minus(a: float, b: float, c: float) -> complex:
    """Chart parameter in ``-H`` (or on the wall) from masses of ``k_x, T k_x, O_X``."""
    cos_t = (a * a + b * b - c * c) / (2 * a * b)
    theta = math.acos(min(1.0, max(-1.0, cos_t)))
    return -(b / a * cmath.exp(1j * theta) - 1)


def cosine_rule_plus(a: float, b: float, c: float) -> complex:
    """Chart parameter in ``H`` from masses of ``T^-1 k_x, k_x, O_X``."""
    cos_t = (b * b + c * c - a * a) / (2 * b * c)
    theta = math.acos(min(1.0, max(-1.0, cos_t)))
    return c / b * cmath.exp(1j * theta)


def canonicalize(twist: int, z) -> StabilityPoint:
    """Rewrite ``T^twist sigma_z`` with the chart parameter off ``W_+``.

    ``T`` carries ``W_+`` onto ``W_-``, so a point ``z`` in the upper half plane
    becomes ``(twist - 1, w)`` where ``sigma_w`` is ``T sigma_z`` up to rotation.
    ``w`` is recovered from the masses ``(|z - 1|, 1, |z|)`` of
    ``(T^-1 k_x, k_x, O_X)`` with the cosine rule.
    """
    p = as_chart(z)
    if p.region is not Region.W_PLUS:
        return StabilityPoint(twist, p)
    w = cosine_rule_minus(abs(p.z - 1), 1.0, abs(p.z))
    if w.imag >= 0:
        # cancellation for z extremely close to the forbidden ray; the Mobius
        # form of the same map is exact here
        w = p.z / (p.z - 1)
    if _ray_distance(w) < EPS_DOM:
        raise DomainError(f"{p.z} is numerically on the wall; its canonical image {w} leaves the chart")
    return StabilityPoint(twist - 1, ChartPoint(w))


def twist_action_on_chart(z: complex) -> complex:
    """Closed form of the chart map induced by ``T`` on ``W_+``: ``z -> z/(z-1)``.

    ``Z'(k) = Z(T^-1 k) = z - 1`` and ``Z'(O) = Z(O[1]) = z``; normalising
    ``Z'(k) = -1`` gives ``Z'(O) = z/(1-z) = -w``.
    """
    return z / (z - 1)

