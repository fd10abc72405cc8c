"""Fujiki calculus and the Riemann-Roch polynomial engine.

For a hyper-Kahler manifold of dimension 2n the top self-intersection of a
degree-2 class is c_X * q(alpha)^n for a positive rational constant c_X; this
module implements that relation, its polarization, the dimension-4 four-class
identity, the degree-n Riemann-Roch polynomial with its three structural
properties (constant term n+1, leading coefficient c_X/(2n)!, positive
coefficients), and the Betti/Chern constraint arithmetic built on
A_X = (7 c2^2 - 4 c4)/5760.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Optional, Sequence, Union

from .lattices import QuadLattice
from .rationals import (
    Q,
    RatPoly,
    binom_poly,
    divisors,
    is_integer,
    linear_poly,
    sqrt_rational,
)

#: 288*A_X is an integer (c4 is divisible by 12); the admissible values are
#: the singleton 225 (rank-23 branch, A_X = 25/32) together with the integer
#: window [240, 262] (low-rank branch, 5/6 <= A_X <= 131/144).
ADMISSIBLE_288AX: tuple[int, ...] = (225,) + tuple(range(240, 263))


def admissible_ax_values() -> tuple[Q, ...]:
    return tuple(Q(n, 288) for n in ADMISSIBLE_288AX)


@dataclass(frozen=True)
class FujikiData:
    """Half-dimension n and Fujiki constant c_X > 0."""

    n: int
    c_X: Q

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if Q(self.c_X) <= 0:
            raise ValueError("the Fujiki constant is positive")
        object.__setattr__(self, "c_X", Q(self.c_X))


def fujiki_degree(n: int, c_X, q_value) -> Q:
    """Top self-intersection: integral of alpha^(2n) = c_X * q(alpha)^n."""
    return Q(c_X) * Q(q_value) ** n


def polarized_pairing_n(n: int, c_X, q_lm) -> Q:
    """The mixed degree integral of l^n m^n for isotropic l.

    Polarizing the Fujiki relation at q(l) = 0 gives
    (1/2^n) binom(2n, n) * integral(l^n m^n) = c_X q(l, m)^n.
    """
    return Q(c_X) * Q(q_lm) ** n * Q(2**n * factorial(n) ** 2, factorial(2 * n))


def a_from_fujiki(n: int, c_X, q_lm) -> Q:
    """The fiber polarization degree a = (1/n!) * integral(l^n m^n).

    Equals c_X * (2 q(l,m))^n * n!/(2n)!; integral whenever l, m are integral
    classes, which the caller asserts.
    """
    return Q(c_X) * (2 * Q(q_lm)) ** n * Q(factorial(n), factorial(2 * n))


def fujiki4_pairing(c_X, lattice: QuadLattice, a1, a2, a3, a4) -> Q:
    """Four-class intersection number in dimension 4.

    3 * integral(a1 a2 a3 a4) = c_X * (q12 q34 + q13 q24 + q14 q23).
    """
    q = lattice.pair
    s = q(a1, a2) * q(a3, a4) + q(a1, a3) * q(a2, a4) + q(a1, a4) * q(a2, a3)
    return Q(c_X) * s / 3


@dataclass(frozen=True)
class RRPolynomial:
    """Degree-n Riemann-Roch polynomial in the degree-2 quadratic invariant T.

    chi(X, L) = P(q(c1(L))).  Structural properties checked by
    :meth:`violations`: constant term n+1 (= chi(O_X)), leading coefficient
    c_X/(2n)!, and positivity of every coefficient.
    """

    base: RatPoly
    n: int

    @property
    def c_X(self) -> Q:
        """Fujiki constant implied by the leading coefficient."""
        return self.base.coefficient(self.n) * factorial(2 * self.n)

    def __call__(self, t) -> Q:
        return self.base(Q(t))

    def violations(self) -> tuple[str, ...]:
        out = []
        if self.base.degree != self.n:
            out.append(f"degree {self.base.degree} != n = {self.n}")
        if self.base.coefficient(0) != self.n + 1:
            out.append(f"constant term {self.base.coefficient(0)} != n+1 = {self.n + 1}")
        if any(self.base.coefficient(k) <= 0 for k in range(self.n + 1)):
            out.append("not all coefficients are positive")
        return tuple(out)

    def pretty(self) -> str:
        return self.base.pretty("T")


@dataclass(frozen=True)
class IrrationalCoefficient:
    """Witness that the linear RR coefficient sqrt(2 c_X A_X / 3) is irrational.

    Carries the non-square rational under the root; this is itself a
    classifier signal (rationality of sqrt(2 a A_X) is forced).
    """

    non_square: Q


def rr_from_cx_ax(c_X, A_X) -> Union[RRPolynomial, IrrationalCoefficient]:
    """n = 2 Riemann-Roch polynomial (c_X/24) T^2 + sqrt(2 c_X A_X/3) T + 3."""
    c_X, A_X = Q(c_X), Q(A_X)
    mid_sq = 2 * c_X * A_X / 3
    mid = sqrt_rational(mid_sq)
    if mid is None:
        return IrrationalCoefficient(non_square=mid_sq)
    return RRPolynomial(base=RatPoly((Q(3), mid, c_X / 24)), n=2)


def rr_lagrangian_form(n: int, d: int, q_lm: int, q_m: int) -> RRPolynomial:
    """The fibration form binom(d + (T - q(m))/(2 q(l,m)) + n, n).

    With d = 1, q(l,m) = 1, q(m) = 0 this is binom(T/2 + n + 1, n), the
    polynomial of a principally polarized fibration.
    """
    if q_lm <= 0:
        raise ValueError("q(l, m) must be positive")
    x = linear_poly(Q(1, 2 * q_lm), Q(d + n) - Q(q_m, 2 * q_lm))
    return RRPolynomial(base=binom_poly(x, n), n=n)


def rr_constant_solutions(n: int) -> frozenset[Q]:
    """Rational solutions of binom(x + n, n) = n + 1.

    Equivalent to the monic integral equation prod_{i=1..n} (x+i) = (n+1)!,
    so every rational solution is an integer dividing the constant term
    n! - (n+1)! = -n*n! of the shifted polynomial; the scan over those
    divisors is exhaustive.  Returns {1} for n odd and {1, -n-2} for n even.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    target = factorial(n + 1)
    poly = RatPoly.constant(Q(1))
    for i in range(1, n + 1):
        poly = poly * linear_poly(1, i)
    sols = set()
    for dv in divisors(factorial(n) - target):
        for x in (Q(dv), Q(-dv)):
            if poly(x) == target:
                sols.add(x)
    return frozenset(sols)


@dataclass(frozen=True)
class BettiProfile:
    """Betti/Chern bookkeeping of a hyper-Kahler fourfold from (b2, b3).

    c4 = 3(4 b2 + 16 - b3); the topological Euler characteristic c4 equals
    2 + 2 b2 - 2 b3 + b4 (simply connected, Poincare duality), which fixes
    b4; and A_X = (7 - c4/432)/8 with 288 A_X an integer.
    """

    b2: int
    b3: int
    b4: int
    c4: int
    A_X: Q
    violations: tuple[str, ...]

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.b2, self.b3, self.b4)


def betti_profile(b2: int, b3: int) -> BettiProfile:
    """Fill c4, b4, A_X from (b2, b3); reject negative b4, report violations.

    Violations are reported rather than silently filtered so the gate stays
    auditable; only b4 < 0 (and malformed input) raise.
    """
    if b2 < 3:
        raise ValueError("b2 >= 3 is required")
    if b3 < 0 or b3 % 2 != 0:
        raise ValueError("b3 must be a nonnegative even integer")
    c4 = 3 * (4 * b2 + 16 - b3)
    b4 = c4 - 2 - 2 * b2 + 2 * b3
    if b4 < 0:
        raise ValueError(f"negative b4 = {b4}")
    A_X = (7 - Q(c4, 432)) / 8
    violations = []
    if not is_integer(288 * A_X):
        violations.append(f"288*A_X = {288 * A_X} is not an integer (c4 not divisible by 12)")
    if b2 == 23:
        if b3 != 0:
            violations.append("rank-23 branch requires b3 = 0")
    elif b2 > 8:
        violations.append("b2 must be 23 or at most 8")
    else:
        if not (Q(5, 6) <= A_X <= Q(131, 144)):
            violations.append(f"A_X = {A_X} outside [5/6, 131/144] on the low-rank branch")
    return BettiProfile(b2=b2, b3=b3, b4=b4, c4=c4, A_X=A_X, violations=tuple(violations))


def guan_gate(t) -> frozenset[Q]:
    """Admissible A_X values with 4*A_X - t an integer, for t in [0, 1/3).

    Scans the exact admissible set {225/288} union {N/288 : 240 <= N <= 262};
    the unique hit over all such t is t = 1/8 with A_X = 25/32.
    """
    t = Q(t)
    if not (0 <= t < Q(1, 3)):
        raise ValueError("guan_gate requires t in [0, 1/3)")
    return frozenset(ax for ax in admissible_ax_values() if is_integer(4 * ax - t))
