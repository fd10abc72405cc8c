"""Integral quadratic lattices and the rank-2 hyperbolic geometry.

The degree-2 lattice of a hyper-Kahler fourfold restricts, on the span of the
two distinguished isotropic-ish classes l and m, to a rank-2 sublattice.  This
module provides the Gram-matrix calculus, the normalization m -> +-m + r*l,
the (-2)-reflection, the enumeration of prime exceptional classes, and the
four cones of divisor classes in the two combinatorial cases t0 = 0, 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Optional, Sequence

from .rationals import Q

Vector = tuple[int, ...]


@dataclass(frozen=True)
class QuadLattice:
    """Integral quadratic lattice given by a symmetric Gram matrix."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pair(self, v: Sequence[int], w: Sequence[int]) -> int:
        """The bilinear form q(v, w) = v^T G w (exact integer)."""
        if len(v) != self.rank or len(w) != self.rank:
            raise ValueError("vector length does not match lattice rank")
        return sum(v[i] * self.gram[i][j] * w[j] for i in range(self.rank) for j in range(self.rank))

    def q(self, v: Sequence[int]) -> int:
        """The quadratic form q(v) = v^T G v."""
        return self.pair(v, v)

    def is_even(self) -> bool:
        """True iff q takes only even values, i.e. all diagonal entries are even."""
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @staticmethod
    def from_json(data: dict) -> "QuadLattice":
        gram = data["gram"]
        lat = QuadLattice(tuple(tuple(row) for row in gram))
        if "rank" in data and int(data["rank"]) != lat.rank:
            raise ValueError("declared rank does not match Gram matrix")
        return lat


#: The hyperbolic plane: even, unimodular, rank 2.
U = QuadLattice(((0, 1), (1, 0)))

#: Two orthogonal hyperbolic planes, basis (l, m, e', f').
U2 = QuadLattice(
    (
        (0, 1, 0, 0),
        (1, 0, 0, 0),
        (0, 0, 0, 1),
        (0, 0, 1, 0),
    )
)


def is_primitive(v: Sequence[int]) -> bool:
    """A class is primitive when the gcd of its coordinates is 1."""
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


@dataclass(frozen=True)
class PairNormalization:
    """Result of normalizing a pair (l, m) with q(l) = 0.

    After replacing m by (-m if sign_flip else m) + shift * l, the new pair
    satisfies q(l, m) > 0 and -q(l, m) < q(m) <= q(l, m); gamma is the ratio
    q(m)/q(l, m) of the normalized pair, so gamma lies in (-1, 1].
    """

    gamma: Q
    sign_flip: bool
    shift: int
    q_lm: int
    q_m: int


def hyperbolic_pair_normalize(q_l: int, q_m: int, q_lm: int) -> PairNormalization:
    """Normalize (q(l)=0, q(m), q(l,m)) by m -> +-m + r*l.

    Flipping m fixes q(m) and negates q(l,m); adding r*l moves q(m) by
    2*r*q(l,m).  The window -q(l,m) < q(m) <= q(l,m) pins r uniquely.
    """
    if q_l != 0:
        raise ValueError("normalization requires q(l) = 0")
    if q_lm == 0:
        raise ValueError("degenerate pair: q(l, m) = 0")
    flip = q_lm < 0
    p = abs(q_lm)
    # choose r with q_m + 2 r p in (-p, p]
    r = -((q_m + p - 1) // (2 * p))
    new_qm = q_m + 2 * r * p
    assert -p < new_qm <= p
    return PairNormalization(gamma=Q(new_qm, p), sign_flip=flip, shift=r, q_lm=p, q_m=new_qm)


@dataclass(frozen=True)
class Reflection:
    """The integral involution v -> v + q(v, e) * e for a class e with q(e) = -2."""

    e: Vector
    lattice: QuadLattice

    def __post_init__(self):
        if self.lattice.q(self.e) != -2:
            raise ValueError("reflection requires a class of square -2")

    def __call__(self, v: Sequence[int]) -> Vector:
        c = self.lattice.pair(v, self.e)
        return tuple(v[i] + c * self.e[i] for i in range(self.lattice.rank))


def reflection_about(e: Sequence[int], lattice: QuadLattice = U) -> Reflection:
    return Reflection(tuple(int(x) for x in e), lattice)


@dataclass(frozen=True)
class PrimeExceptionalScan:
    """Window enumeration of prime exceptional candidates plus the exact argument.

    For a class E = t*l + u*m on the hyperbolic plane with q(E) < 0, the dual
    linear form -2 q(E, .)/q(E) must be integral; evaluated on l and m it has
    values 1/t and 1/u, so |t| = |u| = 1 and (q < 0) forces t = -u.  The
    window scan makes this a runnable check; the divisibility argument is what
    proves the window is exhaustive.
    """

    classes: frozenset[Vector]
    window: int
    rejected: tuple[tuple[Vector, str], ...]
    divisibility_argument: str = (
        "integrality of -2 q(E,.)/q(E) on {l, m} gives 1/t, 1/u in Z, "
        "hence |t| = |u| = 1, and q(E) < 0 forces t = -u"
    )


def prime_exceptional_candidates(lattice: QuadLattice = U, window: int = 10) -> frozenset[Vector]:
    """Classes t*l + u*m with q < 0 whose dual form -2q(E,.)/q(E) is integral.

    Requires the hyperbolic plane (q(l) = q(m) = 0, q(l, m) = 1); returns
    {-l + m, l - m}.
    """
    return prime_exceptional_scan(lattice, window).classes


def prime_exceptional_scan(lattice: QuadLattice = U, window: int = 10) -> PrimeExceptionalScan:
    if lattice.gram != U.gram:
        raise ValueError("prime exceptional enumeration is specific to the hyperbolic plane")
    found = []
    rejected = []
    basis = ((1, 0), (0, 1))
    for t in range(-window, window + 1):
        for u in range(-window, window + 1):
            v = (t, u)
            qe = lattice.q(v)
            if qe >= 0:
                continue
            if not is_primitive(v):
                rejected.append((v, "not primitive"))
                continue
            # dual form values -2 q(E, b)/q(E) on the basis
            ok = True
            for b in basis:
                val = Q(-2 * lattice.pair(v, b), qe)
                if val.denominator != 1:
                    rejected.append((v, f"dual form value {val} on basis not integral"))
                    ok = False
                    break
            if ok:
                found.append(v)
    # keep only a small deterministic sample of rejections for the report
    sample = tuple(rejected[:6])
    return PrimeExceptionalScan(classes=frozenset(found), window=window, rejected=sample)


Ray = tuple[Vector, Vector]


@dataclass(frozen=True)
class ConeReport:
    """The four cones of divisor classes over the basis (l, m)."""

    t0: int
    positive_rays: Ray
    movable_rays: Ray
    nef_rays: Ray
    psef_rays: Ray
    exceptional_class: Optional[Vector]
    case_tag: str

    def duality_products(self) -> tuple[int, ...]:
        """q-pairings of each movable ray against each pseudoeffective ray."""
        out = []
        for v in self.movable_rays:
            for w in self.psef_rays:
                out.append(U.pair(v, w))
        return tuple(out)


def cone_report(t0: int) -> ConeReport:
    """Cone structure for the two cases: all cones equal (t0=0), or a unique
    prime exceptional divisor -l+m supported outside the positive cone (t0=1)."""
    if t0 not in (0, 1):
        raise ValueError("t0 must be 0 or 1")
    l, m = (1, 0), (0, 1)
    mov = (l, (t0, 1))
    psef = (l, (-t0, 1))
    return ConeReport(
        t0=t0,
        positive_rays=(l, m),
        movable_rays=mov,
        nef_rays=mov,
        psef_rays=psef,
        exceptional_class=(-1, 1) if t0 == 1 else None,
        case_tag="C1" if t0 == 0 else "C2",
    )


def saturation_check(a: int, n: int) -> bool:
    """True iff no integer d >= 2 has d^n dividing a (then Zl + Zm is saturated)."""
    if a < 1 or n < 1:
        raise ValueError("saturation_check requires a >= 1 and n >= 1")
    if n == 1:
        return a == 1
    d = 2
    while d**n <= a:
        if a % (d**n) == 0:
            return False
        d += 1
    return True
