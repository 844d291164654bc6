"""Numerical Mukai lattice of a K3 surface with trivial Picard group.

The lattice is Z + Z, spanned by the classes of the structure sheaf
``O_X = (1, 1)`` and a skyscraper sheaf ``k_x = (0, 1)``.  Objects are not
modelled as sheaves; a small vocabulary of atoms (twisted skyscrapers, the
structure sheaf and the ideal sheaves ``I_{m,n}``) carries everything the
rest of the package needs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

# Coordinates stay inside this bound; python ints cannot overflow, so the bound
# is a sanity limit on inputs rather than a machine constraint.
COORD_LIMIT = 2**62


@dataclass(frozen=True, order=True)
class MukaiVector:
    v1: int
    v2: int

    def __post_init__(self):
        for c in (self.v1, self.v2):
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"Mukai coordinates must be integers, got {c!r}")
            if abs(c) > COORD_LIMIT:
                raise OverflowError(f"coordinate {c} exceeds {COORD_LIMIT}")

    def __add__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.v1 + other.v1, self.v2 + other.v2)

    def __sub__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.v1 - other.v1, self.v2 - other.v2)

    def __neg__(self) -> MukaiVector:
        return MukaiVector(-self.v1, -self.v2)

    def __mul__(self, k: int) -> MukaiVector:
        return MukaiVector(k * self.v1, k * self.v2)

    __rmul__ = __mul__

    def basis_coefficients(self) -> tuple[int, int]:
        """Coefficients ``(r, n)`` with ``self = r [O_X] + n [k_x]``."""
        return self.v1, self.v2 - self.v1

    @classmethod
    def from_basis(cls, r: int, n: int) -> MukaiVector:
        return cls(r, r + n)


O_CLASS = MukaiVector(1, 1)
K_CLASS = MukaiVector(0, 1)


def pairing(u: MukaiVector, v: MukaiVector) -> int:
    """Mukai pairing ``u1 v2 + u2 v1``.

    With the sign convention used here this is the Euler characteristic, so
    ``pairing(O, O) == 2`` and ``pairing(O, k) == 1``.
    """
    return u.v1 * v.v2 + u.v2 * v.v1


def twist_class(v: MukaiVector) -> MukaiVector:
    """Action of the spherical twist in ``O_X`` on classes.

    This is the reflection ``v - (v . O) O``; it is an involution because
    ``O . O = 2``.  With ``T k_x = I_x[1]`` the class of ``T k_x`` is ``(-1, 0)``.
    """
    return v - O_CLASS * pairing(v, O_CLASS)


class ClassType(enum.Enum):
    SPHERICAL = "Spherical"
    SEMI_RIGID = "SemiRigid"
    OTHER = "Other"


def classify_class(v: MukaiVector) -> ClassType:
    sq = pairing(v, v)
    if sq == 2:
        return ClassType.SPHERICAL
    if sq == 0 and v != MukaiVector(0, 0):
        return ClassType.SEMI_RIGID
    return ClassType.OTHER


class AtomKind(enum.Enum):
    SKY_TWIST = "SkyTwist"
    STRUCTURE = "Structure"
    IDEAL_MN = "IdealMN"


@dataclass(frozen=True)
class Atom:
    """A named object up to homological shift.

    ``SKY_TWIST`` with ``twist=t`` is ``T^t k_x``; ``IDEAL_MN`` with ``(m, n)``
    is the kernel of a generic map ``O_X^m -> O_R`` for ``n`` distinct points.
    """

    kind: AtomKind
    shift: int = 0
    twist: int = 0
    m: int = 0
    n: int = 0

    def __post_init__(self):
        if self.kind is AtomKind.IDEAL_MN and (self.m < 1 or self.n < 1):
            raise ValueError("I_{m,n} needs positive m and n")
        if self.kind is not AtomKind.SKY_TWIST and self.twist != 0:
            raise ValueError("twist exponent only applies to SkyTwist atoms")

    @classmethod
    def sky(cls, twist: int = 0, shift: int = 0) -> Atom:
        return cls(AtomKind.SKY_TWIST, shift=shift, twist=twist)

    @classmethod
    def structure(cls, shift: int = 0) -> Atom:
        return cls(AtomKind.STRUCTURE, shift=shift)

    @classmethod
    def ideal(cls, m: int, n: int, shift: int = 0) -> Atom:
        return cls(AtomKind.IDEAL_MN, shift=shift, m=m, n=n)

    def shifted(self, s: int) -> Atom:
        return Atom(self.kind, self.shift + s, self.twist, self.m, self.n)

    def unshifted_class(self) -> MukaiVector:
        if self.kind is AtomKind.STRUCTURE:
            return O_CLASS
        if self.kind is AtomKind.IDEAL_MN:
            return MukaiVector(self.m, self.m - self.n)
        # twist_class is an involution, so only the parity of t matters
        return K_CLASS if self.twist % 2 == 0 else twist_class(K_CLASS)

    def mukai_class(self) -> MukaiVector:
        v = self.unshifted_class()
        return v if self.shift % 2 == 0 else -v

    def __str__(self) -> str:
        if self.kind is AtomKind.STRUCTURE:
            base = "O_X"
        elif self.kind is AtomKind.IDEAL_MN:
            base = f"I_{{{self.m},{self.n}}}"
        elif self.twist == 0:
            base = "k_x"
        elif self.twist == 1:
            base = "T k_x"
        else:
            base = f"T^{self.twist} k_x"
        return base if self.shift == 0 else f"{base}[{self.shift}]"
