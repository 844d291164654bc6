"""Mass and q-mass embeddings of the stability manifold.

A point of projective mass space is a function on ``{T^n k_x | n in Z}``.
Every function that occurs here is geometric (affine when ``q == 1``) away
from a bounded stretch of indices, so it is stored as an explicit window of
values plus one tail descriptor per side.  A tail anchored at ``A`` with
base ``B``, coefficient ``C`` and ratio ``r`` has value
``B + C (1 + r + ... + r^(j-1))`` at distance ``j`` from ``A``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from .chart import (
    ChartPoint,
    Region,
    StabilityPoint,
    as_chart,
    canonicalize,
    cosine_rule_minus,
    cosine_rule_plus,
    phase_of_stable,
)
from .errors import AmbiguousWindow, DomainError, NoConvergence, TriangleViolation
from .hn import factor_mass, hn_oracle
from .lattice import Atom

DEFAULT_WINDOW = (-16, 16)
EPS_TRI = 1e-12
PROJ_TOL = 1e-9
ZERO_TOL = 1e-10
KINK_TOL = 1e-10
INVERT_RESIDUAL = 1e-9
MAX_ITER = 200


def geometric_sum(r: float, j: int) -> float:
    """``1 + r + ... + r^(j-1)``; ``j`` for ``r == 1``."""
    if j <= 0:
        return 0.0
    if r == 1.0:
        return float(j)
    if abs(r - 1.0) < 0.5:
        # cancellation-free near r = 1
        return math.expm1(j * math.log(r)) / (r - 1.0)
    return (r**j - 1.0) / (r - 1.0)


@dataclass(frozen=True)
class Tail:
    anchor: int
    base: float
    coefficient: float
    ratio: float

    @property
    def kind(self) -> str:
        return "affine" if self.ratio == 1.0 else "geometric"

    def at_distance(self, j: int) -> float:
        return self.base + self.coefficient * geometric_sum(self.ratio, j)

    def step_out(self, steps: int = 1) -> Tail:
        """Same sequence, re-anchored ``steps`` further from the centre."""
        t = self
        for _ in range(steps):
            t = Tail(t.anchor, t.base + t.coefficient, t.coefficient * t.ratio, t.ratio)
        return t

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "anchor": self.anchor,
            "base": self.base,
            "coefficient": self.coefficient,
            "ratio": self.ratio,
        }

    @classmethod
    def from_json(cls, d: dict) -> Tail:
        return cls(int(d["anchor"]), float(d["base"]), float(d["coefficient"]), float(d["ratio"]))


def _scaled(t: Tail, s: float) -> Tail:
    return Tail(t.anchor, s * t.base, s * t.coefficient, t.ratio)


def _align(t: Tail, anchor: int, leftward: bool) -> Tail:
    steps = (t.anchor - anchor) if leftward else (anchor - t.anchor)
    if steps < 0:
        raise ValueError("tails can only be re-anchored outward")
    moved = t.step_out(steps)
    return Tail(anchor, moved.base, moved.coefficient, moved.ratio)


@dataclass(frozen=True)
class MassFunction:
    """A point of ``R^S`` restricted to a window, with closed-form tails.

    ``left`` is valid at every index ``<= left.anchor`` and ``right`` at every
    index ``>= right.anchor``.  Either may be ``None`` for data read from
    outside, in which case only the window is known.
    """

    q: float
    window: tuple[int, int]
    values: tuple[float, ...]
    left: Tail | None = None
    right: Tail | None = None

    def __post_init__(self):
        lo, hi = self.window
        if hi < lo:
            raise ValueError(f"empty window {self.window}")
        if len(self.values) != hi - lo + 1:
            raise ValueError("window and values disagree in length")

    @classmethod
    def from_tails(cls, left: Tail, right: Tail, q: float, window=DEFAULT_WINDOW) -> MassFunction:
        if right.anchor > left.anchor + 1:
            raise ValueError("tails leave a gap between their anchors")
        lo, hi = window
        f = cls(q, (lo, hi), (0.0,) * (hi - lo + 1), left, right)
        return cls(q, (lo, hi), tuple(f._tail_value(k) for k in range(lo, hi + 1)), left, right)

    def _tail_value(self, k: int) -> float:
        if self.left is not None and k <= self.left.anchor:
            return self.left.at_distance(self.left.anchor - k)
        if self.right is not None and k >= self.right.anchor:
            return self.right.at_distance(k - self.right.anchor)
        raise IndexError(f"index {k} is outside the window and not covered by a tail")

    def value_at(self, k: int) -> float:
        lo, hi = self.window
        if lo <= k <= hi:
            return self.values[k - lo]
        return self._tail_value(k)

    def __getitem__(self, k: int) -> float:
        return self.value_at(k)

    @property
    def has_tails(self) -> bool:
        return self.left is not None and self.right is not None

    def indices(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def restrict(self, window) -> MassFunction:
        lo, hi = window
        return MassFunction(self.q, (lo, hi), tuple(self.value_at(k) for k in range(lo, hi + 1)), self.left, self.right)

    def shifted(self, steps: int = 1) -> MassFunction:
        """Action of ``T^steps``: coordinates move right, the window stays put."""
        def mv(t):
            return None if t is None else Tail(t.anchor + steps, t.base, t.coefficient, t.ratio)

        lo, hi = self.window
        moved = MassFunction(self.q, (lo + steps, hi + steps), self.values, mv(self.left), mv(self.right))
        return moved.restrict(self.window)

    def normalized(self) -> tuple[float, ...]:
        m = max(abs(v) for v in self.values)
        if m == 0:
            raise ValueError("the zero function has no projective class")
        return tuple(v / m for v in self.values)

    def scale(self, s: float) -> MassFunction:
        return MassFunction(
            self.q,
            self.window,
            tuple(s * v for v in self.values),
            None if self.left is None else _scaled(self.left, s),
            None if self.right is None else _scaled(self.right, s),
        )

    __rmul__ = scale

    def __mul__(self, s: float) -> MassFunction:
        return self.scale(s)

    def __add__(self, other: MassFunction) -> MassFunction:
        if self.window != other.window or self.q != other.q:
            raise ValueError("can only add mass functions with the same window and q")
        left = right = None
        if self.has_tails and other.has_tails:
            la = min(self.left.anchor, other.left.anchor)
            ra = max(self.right.anchor, other.right.anchor)
            l1, l2 = _align(self.left, la, True), _align(other.left, la, True)
            r1, r2 = _align(self.right, ra, False), _align(other.right, ra, False)
            if ra <= la + 1:
                left = Tail(la, l1.base + l2.base, l1.coefficient + l2.coefficient, l1.ratio)
                right = Tail(ra, r1.base + r2.base, r1.coefficient + r2.coefficient, r1.ratio)
        values = tuple(x + y for x, y in zip(self.values, other.values))
        return MassFunction(self.q, self.window, values, left, right)

    def distance(self, other: MassFunction) -> float:
        """Sup distance between sup-normalised values on the common window."""
        lo = max(self.window[0], other.window[0])
        hi = min(self.window[1], other.window[1])
        if hi < lo:
            raise ValueError("windows do not overlap")
        a = self.restrict((lo, hi)).normalized()
        b = other.restrict((lo, hi)).normalized()
        return max(abs(x - y) for x, y in zip(a, b))

    def proportional_to(self, other: MassFunction, tol: float = PROJ_TOL) -> bool:
        return self.distance(other) <= tol

    def to_json(self) -> dict:
        tail = {}
        if self.left is not None:
            tail["left"] = self.left.to_json()
        if self.right is not None:
            tail["right"] = self.right.to_json()
        return {
            "q": self.q,
            "window": [self.window[0], self.window[1]],
            "values": list(self.values),
            "tail": tail,
        }

    @classmethod
    def from_json(cls, d: dict) -> MassFunction:
        tail = d.get("tail") or {}
        left = Tail.from_json(tail["left"]) if "left" in tail else None
        right = Tail.from_json(tail["right"]) if "right" in tail else None
        lo, hi = d["window"]
        return cls(float(d["q"]), (int(lo), int(hi)), tuple(float(v) for v in d["values"]), left, right)


class TriangleStatus(enum.Enum):
    STRICT_INTERIOR = "StrictInterior"
    ON_WALL = "OnWallBeqAplusQC"
    VIOLATED = "Violated"


def triangle_check(a: float, b: float, c: float, q: float = 1.0) -> TriangleStatus:
    """Classify ``(a, b, c)`` against the q-triangle inequalities.

    ``b < a + q c``, ``a < b + c`` and ``c < a + b / q``; the wall is where
    the first becomes an equality.  The tolerance is relative to the size of
    the coordinates since only their ratios matter.
    """
    if min(a, b, c) <= 0 or q <= 0:
        return TriangleStatus.VIOLATED
    tol = EPS_TRI * max(a, b, q * c)
    if not (a < b + c - tol and c < a + b / q - tol * max(1.0, 1.0 / q)):
        return TriangleStatus.VIOLATED
    gap = a + q * c - b
    if abs(gap) <= tol:
        return TriangleStatus.ON_WALL
    return TriangleStatus.STRICT_INTERIOR if gap > 0 else TriangleStatus.VIOLATED


def mass_abc(chart, q: float = 1.0) -> tuple[float, float, float]:
    """q-masses ``(a, b, c)`` of ``(k_x, T k_x, O_X)`` at a canonical chart.

    For a chart in ``W_+`` the triple returned is the matching coordinate on
    ``Delta_{-1}``: the q-masses of ``(T^-1 k_x, k_x, O_X[1])``, which is
    proportional to the triple of the canonical form.
    """
    p = as_chart(chart)
    z = p.z
    phi_o = phase_of_stable(p, Atom.structure())
    if p.region is Region.W_PLUS:
        a = abs(z - 1) * q ** phase_of_stable(p, Atom.sky(-1))
        b = q ** 1.0
        c = abs(z) * q ** (phi_o + 1)
        return a, b, c
    a = q ** 1.0
    b = abs(1 - z) * q ** phase_of_stable(p, Atom.sky(1))
    c = abs(z) * q ** phi_o
    return a, b, c


def _profile(a: float, b: float, c: float, q: float, offset: int) -> tuple[Tail, Tail]:
    return Tail(offset, a, c * q, q), Tail(offset + 1, b, c, 1.0 / q)


def mass_vector(point, q: float = 1.0, window=DEFAULT_WINDOW) -> MassFunction:
    """The (q-)mass function of ``T^twist sigma_z`` on ``S = {T^n k_x}``.

    ``point`` is a ``StabilityPoint`` or a bare chart parameter (twist 0).  The
    value at index ``n`` is ``a + c (q + ... + q^-n)`` for ``n <= 0`` and
    ``b + c (1 + ... + q^(-n+2))`` for ``n >= 1``, shifted by the twist.  A
    ``W_+`` chart is read on ``Delta_{-1}``, one index to the left.
    """
    if not isinstance(point, StabilityPoint):
        point = StabilityPoint(0, as_chart(point))
    if q <= 0:
        raise DomainError("q must be positive")
    offset = point.twist
    if point.chart.region is Region.W_PLUS:
        offset -= 1
    a, b, c = mass_abc(point.chart, q)
    left, right = _profile(a, b, c, q, offset)
    return MassFunction.from_tails(left, right, q, window)


def mass_from_factors(chart, n: int, q: float = 1.0) -> float:
    """Sum of ``|Z| q^phase`` over the oracle HN factors of ``T^n k_x``."""
    p = as_chart(chart)
    return math.fsum(factor_mass(p, f, q) for f in hn_oracle(p, n))


class InvertCell(enum.Enum):
    DELTA0 = "delta0"
    DELTA_MINUS1 = "delta-1"
    I0 = "i0"


def _abc_residual(target, got) -> float:
    ta, ga = max(target), max(got)
    return max(abs(x / ta - y / ga) for x, y in zip(target, got))


def _solve_minus(a: float, b: float, c: float, q: float) -> complex:
    # Write -w = r e^{i pi phi} with phi = phase(O_X) in (0, 1).  The ratio c/a
    # fixes r as a function of phi, leaving one equation in phi for b/a.
    rho_c, log_rho_b, log_q = c / a, math.log(b / a), math.log(q)

    def w_of(phi: float) -> complex:
        return -rho_c * q ** (1.0 - phi) * cmath.exp(1j * math.pi * phi)

    def g(phi: float) -> float:
        s = 1 - w_of(phi)
        return math.log(abs(s)) + cmath.phase(s) / math.pi * log_q - log_rho_b

    lo, hi = 0.0, 1.0 - 1e-12
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo > 0 > g_hi):
        raise NoConvergence(f"no sign change for the q-inverse (g={g_lo:.3g}, {g_hi:.3g})")
    try:
        phi = brentq(g, lo, hi, xtol=1e-16, rtol=4 * 2.0**-52, maxiter=MAX_ITER)
    except RuntimeError as exc:
        raise NoConvergence(str(exc)) from exc
    return w_of(phi)


def invert_cell(a: float, b: float, c: float, cell, q: float = 1.0) -> ChartPoint:
    """Recover the chart parameter from mass coordinates on one cell.

    ``DELTA0`` reads ``(a, b, c)`` as masses of ``(k_x, T k_x, O_X)`` and
    returns a point of ``-H``; ``DELTA_MINUS1`` reads them as masses of
    ``(T^-1 k_x, k_x, O_X)`` and returns a point of ``H``; ``I0`` returns a
    point of the wall.  For ``q != 1`` the ``Delta`` inverses are solved
    numerically.
    """
    cell = InvertCell(cell)
    status = triangle_check(a, b, c, q)
    if cell is InvertCell.I0:
        if status is not TriangleStatus.ON_WALL:
            raise TriangleViolation(f"({a}, {b}, {c}) is not on the wall b = a + qc")
        return ChartPoint(complex(-q * c / a, 0.0))
    if status is not TriangleStatus.STRICT_INTERIOR:
        raise TriangleViolation(f"({a}, {b}, {c}) violates the strict q-triangle inequalities")
    if q == 1.0:
        if cell is InvertCell.DELTA0:
            return ChartPoint(cosine_rule_minus(a, b, c))
        return ChartPoint(cosine_rule_plus(a, b, c))
    w = _solve_minus(a, b, c, q)
    res = _abc_residual((a, b, c), mass_abc(w, q))
    if res > INVERT_RESIDUAL:
        raise NoConvergence(f"q-inverse residual {res:.3g} above {INVERT_RESIDUAL}")
    if cell is InvertCell.DELTA0:
        return ChartPoint(w)
    return ChartPoint(w / (w - 1))


def invert_residual(a: float, b: float, c: float, p: ChartPoint, q: float = 1.0) -> float:
    """Projective mismatch between ``(a, b, c)`` and the masses of ``p``."""
    return _abc_residual((a, b, c), mass_abc(p, q))


def locate(f: MassFunction) -> StabilityPoint:
    """Inverse of the mass map on ``D``: the canonical point with mass ``f``."""
    cell = classify_mass_point(f)
    if cell.kind not in (CellKind.DELTA, CellKind.INTERVAL):
        raise TriangleViolation(f"{cell} is not in the image of the mass map")
    n, q = cell.index, f.q
    a, b = f[n], f[n + 1]
    c = (f[n - 1] - f[n]) / q
    which = InvertCell.DELTA0 if cell.kind is CellKind.DELTA else InvertCell.I0
    return StabilityPoint(n, invert_cell(a, b, c, which, q))


class CellKind(enum.Enum):
    DELTA = "Delta"
    INTERVAL = "Interval"
    EDGE_PP = "EdgePP"
    VERTEX_P = "VertexP"
    RED_POINT = "RedPoint"
    BLUE_QHOM = "BlueQHom"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class CellId:
    kind: CellKind
    index: int | None = field(default=None)

    def __str__(self) -> str:
        return self.kind.value if self.index is None else f"{self.kind.value}({self.index})"


def _classification_window(f: MassFunction) -> tuple[int, int]:
    lo, hi = f.window
    if f.has_tails:
        lo = min(lo, f.left.anchor - 2)
        hi = max(hi, f.right.anchor + 2)
    return lo, hi


def classify_mass_point(f: MassFunction) -> CellId:
    """Which stratum of the closure of ``D`` a mass function lies on.

    Interior points are found from the q-second difference
    ``L_k = x_{k-1} - (1+q) x_k + q x_{k+1}``, which vanishes along both tails
    and is positive exactly at ``n`` and ``n+1`` on ``Delta_n`` (only at ``n`` on
    ``I_n``).  Ties go to the smallest index.
    """
    q = f.q
    lo, hi = _classification_window(f)
    idx = list(range(lo, hi + 1))
    x = [f.value_at(k) for k in idx]
    top = max(x)
    if top <= 0 or min(x) < -ZERO_TOL * top:
        return CellId(CellKind.OUTSIDE)

    def neighbour_max(i):
        return max(x[j] for j in (i - 1, i + 1) if 0 <= j < len(x))

    zeros = [k for i, k in enumerate(idx) if x[i] <= ZERO_TOL * neighbour_max(i)]
    if len(zeros) == 1:
        return CellId(CellKind.VERTEX_P, zeros[0])
    if zeros:
        return CellId(CellKind.OUTSIDE)

    if top / min(x) - 1 <= PROJ_TOL:
        return CellId(CellKind.RED_POINT)
    if q != 1.0 and all(abs(x[i + 1] * q / x[i] - 1) <= PROJ_TOL for i in range(len(x) - 1)):
        return CellId(CellKind.BLUE_QHOM)

    kinks = []
    for i in range(1, len(x) - 1):
        L = x[i - 1] - (1 + q) * x[i] + q * x[i + 1]
        tol = KINK_TOL * (x[i - 1] + (1 + q) * x[i] + q * x[i + 1])
        if L > tol:
            kinks.append(idx[i])
        elif L < -tol:
            return CellId(CellKind.OUTSIDE)
    if not kinks:
        if f.has_tails:
            return CellId(CellKind.OUTSIDE)
        raise AmbiguousWindow("no kink inside the window; the cell may lie outside it")
    if len(kinks) > 2 or kinks[-1] - kinks[0] != len(kinks) - 1:
        return CellId(CellKind.OUTSIDE)

    n = kinks[0]
    need_hi = n + 2 if len(kinks) == 2 else n + 1
    # L must have been evaluated on both sides of the kink run
    if n - 1 < lo + 1 or need_hi > hi - 1:
        raise AmbiguousWindow(f"kink at {kinks} touches the edge of window {(lo, hi)}")

    val = dict(zip(idx, x))
    a, b = val[n], val[n + 1]
    c = (val[n - 1] - a) / q
    c_right = val[n + 2] - b
    if c <= 0 or abs(c_right - c) > PROJ_TOL * max(a, b, c):
        return CellId(CellKind.OUTSIDE)
    status = triangle_check(a, b, c, q)
    if len(kinks) == 1:
        if status is TriangleStatus.ON_WALL:
            return CellId(CellKind.INTERVAL, n)
        return CellId(CellKind.OUTSIDE)
    if status is TriangleStatus.STRICT_INTERIOR:
        return CellId(CellKind.DELTA, n)
    scale = max(a, b, c)
    if abs(c - (a + b / q)) <= PROJ_TOL * scale and a < b + c and b < a + q * c:
        return CellId(CellKind.EDGE_PP, n)
    return CellId(CellKind.OUTSIDE)


def canonical_cell(point: StabilityPoint) -> CellId:
    """Cell that the mass map sends ``point`` to."""
    p = canonicalize(point.twist, point.chart.z)
    kind = CellKind.INTERVAL if p.chart.region is Region.W_ZERO else CellKind.DELTA
    return CellId(kind, p.twist)
