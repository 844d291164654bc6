"""The closure of the mass image and the lax points on its boundary.

The closure is parametrised by a strip ``[-inf, +inf] x I`` where ``I`` is the
segment of rays ``[v:w]`` with ``v, w >= 0``.  Integer abscissas map to the
edges ``P_n Q`` and the columns between them sweep out the triangles.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .chart import ChartPoint, Region, as_chart
from .errors import DomainError
from .mass import DEFAULT_WINDOW, MassFunction, Tail


def vertex_P(n: int, q: float = 1.0, window=DEFAULT_WINDOW) -> MassFunction:
    """``P_n``: zero at ``n``, ``1 + q + ... + q^(j-1)`` at ``n - j``, ``1 + ... + q^-(j-1)`` at ``n + j``."""
    return MassFunction.from_tails(Tail(n, 0.0, 1.0, q), Tail(n, 0.0, 1.0, 1.0 / q), q, window)


def vertex_Q(window=DEFAULT_WINDOW, q: float = 1.0, anchor: int = 0) -> MassFunction:
    """The all-ones function.  ``anchor`` only places the tail descriptors."""
    return MassFunction.from_tails(Tail(anchor, 1.0, 0.0, q), Tail(anchor, 1.0, 0.0, 1.0 / q), q, window)


def hom_functional(n: int, q: float = 1.0) -> float:
    """Graded dimension of ``Hom*(O_X, T^n k_x) = C[-n]``, i.e. ``q^-n``."""
    return 1.0 if q == 1.0 else q ** (-n)


def blue_point(q: float, window=DEFAULT_WINDOW) -> MassFunction:
    """The q-hom functional ``n -> q^-n`` as a mass function."""
    return MassFunction.from_tails(Tail(0, 1.0, q - 1.0, q), Tail(0, 1.0, 1.0 / q - 1.0, 1.0 / q), q, window)


def delta(q: float) -> float:
    """``1 + 1/q + 1/q^2 + ...`` for ``q > 1``."""
    if q <= 1:
        raise DomainError("delta needs q > 1")
    return q / (q - 1.0)


@dataclass(frozen=True)
class SquareCoord:
    u: float
    v: float
    w: float
    q: float = 1.0

    def __post_init__(self):
        if self.v < 0 or self.w < 0 or (self.v == 0 and self.w == 0):
            raise DomainError(f"ray [{self.v}:{self.w}] is not in I")
        if math.isnan(self.u) or self.q <= 0:
            raise DomainError("bad square coordinate")

    @property
    def is_collapsed(self) -> bool:
        """Whether the point lies on the set that ``pi`` contracts to ``Q``."""
        if self.v == 0:
            return True
        if self.q == 1.0:
            return math.isinf(self.u)
        # the blue end sits at +inf for q > 1 and at -inf for q < 1
        return self.u == (-math.inf if self.q > 1 else math.inf)


def _blue_end(q: float) -> float:
    return math.inf if q > 1 else -math.inf


def _blue_weight(q: float) -> float:
    # limit of q^-n P_n towards the blue end is this multiple of q^-k
    return 1.0 / (q - 1.0) if q > 1 else q / (1.0 - q)


def pi_param(s: SquareCoord, window=DEFAULT_WINDOW) -> MassFunction:
    """``pi_q(x, [v:w]) = w Q + (1-u) q^-n v P_n + u q^-(n+1) v P_(n+1)`` with ``x = n + u``.

    At the blue end (``+inf`` for ``q > 1``) the value is ``w Q + v kappa hom_q``
    with ``kappa`` the limit constant of ``q^-n P_n``, which keeps the map
    continuous; every other point at infinity goes to ``Q``.
    """
    q = s.q
    if math.isinf(s.u):
        Q = vertex_Q(window, q)
        if q != 1.0 and s.u == _blue_end(q):
            return s.w * Q + (s.v * _blue_weight(q)) * blue_point(q, window)
        return Q
    n = math.floor(s.u)
    u = s.u - n
    out = s.w * vertex_Q(window, q, anchor=n) + ((1 - u) * s.v * q ** (-n)) * vertex_P(n, q, window)
    if u:
        out = out + (u * s.v * q ** (-n - 1)) * vertex_P(n + 1, q, window)
    return out


@dataclass(frozen=True)
class LaxDescriptor:
    Z_O: complex
    Z_k: complex
    massless: frozenset = field(default_factory=frozenset)
    support_property: bool = True

    def central_charge(self, r: int, m: int) -> complex:
        """``Z(r [O_X] + m [k_x])``."""
        return r * self.Z_O + m * self.Z_k


RED_POINT = LaxDescriptor(0j, -1 + 0j, frozenset({"O_X"}), True)
VERTEX_P0 = LaxDescriptor(1 + 0j, 0j, frozenset({"k_x"}), False)


def support_ratio(r: int, m: int, lax: LaxDescriptor) -> float:
    """``|Z(E)| / ||E||`` for ``[E] = r [O_X] + m [k_x]``, basis orthonormal."""
    return abs(lax.central_charge(r, m)) / math.hypot(r, m)


def support_minimum(lax: LaxDescriptor, r_max: int = 50, m_max: int = 500) -> tuple[float, tuple[int, int]]:
    """Minimum support ratio over classes ``1 <= r <= r_max``, ``2r <= -m <= m_max``.

    These are the classes of bundles without sub-bundles allowed by
    ``chi(O_X, E) <= 0``.  Returns the minimum and the first ``(r, m)`` attaining it.
    """
    best, arg = math.inf, None
    for r in range(1, r_max + 1):
        for m in range(-2 * r, -m_max - 1, -1):
            v = support_ratio(r, m, lax)
            # ratios along a ray r : m agree up to rounding; keep the first
            if v < best * (1 - 1e-12):
                best, arg = v, (r, m)
    return best, arg


def imn_phase(chart, m: int, n: int) -> float:
    """Phase of the stable sheaf ``I_{m,n}`` (class ``(m, m-n)``): ``arg(n - m z)/pi``."""
    p = as_chart(chart)
    if p.region is not Region.W_MINUS:
        raise DomainError("I_{m,n} phases are tabulated on WMinus charts")
    if not (n >= m >= 1):
        raise DomainError("need n >= m >= 1")
    return cmath.phase(n - m * p.z) / math.pi


def threshold_witness(chart, t: float, depth: int) -> tuple[float, float]:
    """Phases of ``I_{m,n}`` approaching the slope ``1 + t`` from both sides.

    Returns ``(sup_below, inf_above)``: the supremum of the phases with
    ``n/m > 1 + t`` and the infimum of those with ``n/m < 1 + t``, over
    ``m <= depth``.  Both tend to ``arg((1+t) - z)/pi``.
    """
    p = as_chart(chart)
    if p.region is not Region.W_MINUS:
        raise DomainError("threshold_witness runs on WMinus charts")
    if t <= 0 or depth < 1:
        raise DomainError("need t > 0 and depth >= 1")
    s = 1 + Fraction(t)
    sup_below, inf_above = -math.inf, math.inf
    for m in range(1, depth + 1):
        # the phase decreases in n/m, so only the nearest n on each side matters
        n_up = math.floor(s * m) + 1
        sup_below = max(sup_below, imn_phase(p, m, n_up))
        n_dn = math.ceil(s * m) - 1
        if n_dn >= m:
            inf_above = min(inf_above, imn_phase(p, m, n_dn))
    return sup_below, inf_above


def threshold_limit(chart, t: float) -> float:
    return cmath.phase((1 + t) - as_chart(chart).z) / math.pi


def semistable_class_predicate(r: int, n: int) -> bool:
    """Whether ``r [O_X] + n [k_x]`` carries semistable sheaves on a ``W_-`` chart."""
    return (r == 0 and n >= 1) or (r >= 1 and n == 0) or (r >= 1 and -n >= r)


def class_phase(chart, r: int, n: int) -> float:
    """Phase in ``(0, 1]`` of the class ``r [O_X] + n [k_x]`` from its central charge."""
    z = as_chart(chart).z
    Z = -r * z - n
    if Z.imag == 0 and Z.real < 0:
        return 1.0
    return cmath.phase(Z) / math.pi


def phase_cloud(chart, r_max: int, n_max: int, include_shifts: bool = False) -> list[tuple[tuple[int, int], float]]:
    """Phases of the semistable classes with ``|r| <= r_max``, ``|n| <= n_max``.

    Sorted by ``(r, n)``.  With ``include_shifts`` the shifted classes
    ``(-r, -n)`` are added with phase increased by one.
    """
    p = as_chart(chart)
    if p.region is not Region.W_MINUS:
        raise DomainError("the phase cloud is drawn on WMinus charts")
    rows = []
    for r in range(0, r_max + 1):
        for n in range(-n_max, n_max + 1):
            if semistable_class_predicate(r, n):
                ph = class_phase(p, r, n)
                rows.append(((r, n), ph))
                if include_shifts:
                    rows.append(((-r, -n), ph + 1.0))
    rows.sort(key=lambda row: row[0])
    return rows


def format_phase(x: float) -> str:
    """Twelve significant digits in positional notation, trailing zeros kept."""
    s = format(x, "#.12g")
    if "e" in s:
        s = format(x, f".{11 - math.floor(math.log10(abs(x)))}f")
    return s


def phase_cloud_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "n", "phase"])
    for (r, n), ph in rows:
        w.writerow([r, n, format_phase(ph)])
    return buf.getvalue()


def red_limit_chart(c: float) -> ChartPoint:
    """Wall chart with ``|Z(O_X)| = c``, tending to the red point as ``c -> 0``."""
    return ChartPoint(complex(-c, 0.0))


def p0_limit_chart(modulus: float) -> ChartPoint:
    """Wall chart ``z = -modulus``, tending to ``P_0`` as the modulus grows."""
    return ChartPoint(complex(-modulus, 0.0))
