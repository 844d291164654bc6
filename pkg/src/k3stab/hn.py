"""Harder-Narasimhan factors of the semi-rigid objects ``T^n k_x``.

Two independent routes produce the factor lists:

* ``hn_closed_form`` writes the lists down from the index ranges directly;
* ``hn_oracle`` grows them one exact triangle at a time,
  ``T^(n-1) k -> T^n k -> O[-n+2]`` upwards and ``O[-n] -> T^n k -> T^(n+1) k``
  downwards, checking the phase order after every step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chart import Region, as_chart, central_charge, phase_of_stable
from .errors import DomainError, PhaseOrderViolation
from .lattice import Atom, AtomKind

ORDER_SLACK = 1e-12

K = Atom.sky(0)
TK = Atom.sky(1)
TINV_K = Atom.sky(-1)


@dataclass(frozen=True)
class Factor:
    atom: Atom
    phase: float

    def __str__(self) -> str:
        return f"{self.atom} @ {self.phase:.6g}"


def O(shift: int) -> Atom:
    return Atom.structure(shift)


def hn_closed_form(reg: Region, n: int) -> tuple[Atom, ...]:
    """Factor atoms of ``T^n k_x`` in decreasing phase order.

    On the wall the objects with ``n`` in ``{-1, 0, 1}`` come back as a single
    semistable factor.
    """
    reg = Region(reg)
    if reg is Region.W_PLUS:
        raise DomainError("closed forms are tabulated on WMinus and WZero; canonicalize first")
    if reg is Region.W_MINUS:
        if n in (0, 1):
            return (Atom.sky(n),)
        if n >= 2:
            return (TK,) + tuple(O(i) for i in range(0, -n + 1, -1))
        return tuple(O(i) for i in range(-n, 0, -1)) + (K,)
    if n in (-1, 0, 1):
        return (Atom.sky(n),)
    if n >= 2:
        return (TK,) + tuple(O(i) for i in range(0, -n + 1, -1))
    return tuple(O(i) for i in range(-n, 1, -1)) + (TINV_K,)


_BASES = {
    Region.W_MINUS: (0, 1),
    Region.W_ZERO: (-1, 0, 1),
    Region.W_PLUS: (-1, 0),
}


def _check_order(reg: Region, hi: Factor, lo: Factor, n: int) -> None:
    if reg is Region.W_ZERO:
        ok = lo.phase <= hi.phase + ORDER_SLACK
    else:
        ok = lo.phase < hi.phase
    if not ok:
        raise PhaseOrderViolation(
            f"T^{n} k_x: {lo} does not sit below {hi} in {reg.value}"
        )


def hn_oracle(chart, n: int) -> tuple[Factor, ...]:
    """HN factors of ``T^n k_x`` built by iterating the key exact triangles.

    Starting from the semistable base objects of the region, each step up
    appends ``O_X[-m+2]`` at the bottom of the list and each step down
    prepends ``O_X[-m]`` at the top.  Works on ``W_+`` as well, where the
    base objects are ``T^-1 k_x`` and ``k_x``.
    """
    p = as_chart(chart)
    reg = p.region
    bases = _BASES[reg]

    def factor(atom: Atom) -> Factor:
        return Factor(atom, phase_of_stable(p, atom))

    if n in bases:
        return (factor(Atom.sky(n)),)
    if n > bases[-1]:
        m = bases[-1]
        factors = [factor(Atom.sky(m))]
        while m < n:
            m += 1
            new = factor(O(-m + 2))
            _check_order(reg, factors[-1], new, m)
            factors.append(new)
    else:
        m = bases[0]
        factors = [factor(Atom.sky(m))]
        while m > n:
            m -= 1
            new = factor(O(-m))
            _check_order(reg, new, factors[0], m)
            factors.insert(0, new)
    return tuple(factors)


def hn_factors(chart, n: int) -> tuple[Factor, ...]:
    """Closed-form factor list with phases attached (canonical charts only)."""
    p = as_chart(chart)
    return tuple(Factor(a, phase_of_stable(p, a)) for a in hn_closed_form(p.region, n))


def factor_mass(chart, f: Factor, q: float = 1.0) -> float:
    return abs(central_charge(chart, f.atom.mukai_class())) * q ** f.phase


def phase_spread(chart, n: int) -> tuple[float, float]:
    """Highest and lowest phases ``(phi+, phi-)`` among the HN factors."""
    phases = [f.phase for f in hn_factors(chart, n)]
    return max(phases), min(phases)


def is_semistable(chart, n: int) -> bool:
    return len(hn_closed_form(as_chart(chart).region, n)) == 1


def twist_reduce(chart, n: int) -> tuple[int, int]:
    """Count twists needed to make ``T^n k_x`` semistable on a ``W_-`` chart.

    While the object is not semistable one of its extremal HN factors is a
    shift of ``O_X``; twisting by ``T`` (top factor) or ``T^-1`` (bottom
    factor) strictly shrinks the phase spread.  Returns ``(steps, direction)``,
    with direction ``+1`` when no step is needed.
    """
    p = as_chart(chart)
    if p.region is not Region.W_MINUS:
        raise DomainError("twist_reduce runs on WMinus charts")
    steps, direction = 0, 0
    while not is_semistable(p, n):
        factors = hn_factors(p, n)
        if factors[0].atom.kind is AtomKind.STRUCTURE:
            d = 1
        elif factors[-1].atom.kind is AtomKind.STRUCTURE:
            d = -1
        else:
            raise PhaseOrderViolation(f"no extremal O_X factor in HN list of T^{n} k_x")
        if direction and d != direction:
            raise PhaseOrderViolation("twist direction flipped during reduction")
        hi, lo = phase_spread(p, n)
        n += d
        hi2, lo2 = phase_spread(p, n)
        if not hi2 - lo2 < hi - lo:
            raise PhaseOrderViolation(f"phase spread did not shrink at T^{n} k_x")
        steps, direction = steps + 1, d
    return steps, direction or 1


def factor_count(reg: Region, n: int) -> int:
    return len(hn_closed_form(reg, n))

