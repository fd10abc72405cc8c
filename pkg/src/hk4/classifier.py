"""Bounded Diophantine classification of fourfolds by the polarization degree a.

Given a = (1/2) * integral(l^2 m^2) with q(l) = 0, the value polynomial
P(k) = P_RR(q(k*l + m)) expands as (a/2) k^2 + b k + c with

    b = (a/2) gamma + beta,      beta = 2 sqrt(2 a A_X),
    c = (a/8) gamma^2 + (gamma/2) beta + 3,   gamma = q(m)/q(l,m) in (-1, 1],

and P taking integer values on Z forces a/2 + b in Z, c in Z, and
4 A_X - b^2/(2a) = 3 - c in Z.  Together with the admissible A_X set
(288 A_X integral plus the two Betti branches) and the rationality of
sqrt(2 a A_X), this makes the classification for each a a finite exact
search.  The engine applies the constraints in a fixed order (sqrt gate,
then the b-window scan, then admissibility of q(l, m)) and records every
killed candidate in the trace.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from math import isqrt
from typing import Optional, Sequence

from .fujiki import (
    ADMISSIBLE_288AX,
    IrrationalCoefficient,
    RRPolynomial,
    betti_profile,
    rr_from_cx_ax,
)
from .rationals import (
    Q,
    RatPoly,
    integer_valued_on,
    integrality_witness,
    is_integer,
    is_perfect_square,
    sqrt_rational,
    squarefree_part,
)

EVEN = "EVEN"
UNCONSTRAINED = "UNCONSTRAINED"


@dataclass(frozen=True)
class TraceEntry:
    stage: str
    candidate: str
    constraint: str
    value: str


@dataclass(frozen=True)
class ClassifierState:
    """One surviving (A_X, gamma) branch of the b-window scan."""

    a: int
    A_X: Q
    beta: Q
    gamma: Q
    b: Q
    c: Q

    @property
    def value_poly(self) -> RatPoly:
        """P(k) = (a/2) k^2 + b k + c; integer valued on Z by construction."""
        return RatPoly((self.c, self.b, Q(self.a, 2)))


@dataclass(frozen=True)
class QOption:
    """An admitted pairing value q = q(l, m) with its forced data."""

    q_lm: int
    c_X: Q
    parity: str  # EVEN (only the even value model passes) or UNCONSTRAINED
    rr: RRPolynomial


@dataclass(frozen=True)
class Solution:
    state: ClassifierState
    q_options: tuple[QOption, ...]
    betti_options: tuple[tuple[int, int, int], ...]
    betti_builtin_only: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class CaseReport:
    a: int
    verdict: str  # EMPTY or SOLUTIONS
    solutions: tuple[Solution, ...]
    trace: tuple[TraceEntry, ...]
    notes: tuple[str, ...]


def sqrt_gate(a: int, killed: Optional[list] = None) -> list[Q]:
    """Admissible A_X with sqrt(2 a A_X) rational.

    Writing 288 A_X = N, rationality of sqrt(2 a A_X) = sqrt(a N)/12 is
    equivalent to a*N being a perfect square; N ranges over the admissible
    set {225} union [240, 262].  Rejected N go to `killed` as (N, a*N).
    """
    if a < 1:
        raise ValueError("a must be a positive integer")
    out = []
    for n288 in ADMISSIBLE_288AX:
        if is_perfect_square(a * n288):
            out.append(Q(n288, 288))
        elif killed is not None:
            killed.append((n288, a * n288))
    return out


def gamma_search(a: int, A_X: Q, killed: Optional[list] = None) -> list[ClassifierState]:
    """Scan the finite b-window (beta - a/2, beta + a/2] forced by gamma in (-1, 1].

    Candidates step by 1 from the residue forced by a/2 + b in Z (so b = k - a/2
    with k an integer in (beta, beta + a]); each candidate is kept iff
    4 A_X - b^2/(2a) is an integer, which makes c = 3 - that value integral.
    Killed candidates go to `killed` as (b, defect).
    """
    A_X = Q(A_X)
    beta = sqrt_rational(8 * a * A_X)
    if beta is None:
        raise ValueError("gamma_search requires sqrt(2aA_X) rational; run sqrt_gate first")
    states = []
    k0 = math.floor(beta) + 1
    for k in range(k0, k0 + a):
        if not (beta < k <= beta + a):
            continue
        b = k - Q(a, 2)
        defect = 4 * A_X - b * b / (2 * a)  # equals 3 - c
        if is_integer(defect):
            gamma = 2 * (b - beta) / a
            states.append(
                ClassifierState(a=a, A_X=A_X, beta=beta, gamma=gamma, b=b, c=3 - defect)
            )
        elif killed is not None:
            killed.append((b, defect))
    return states


def admissible_qlm(
    a: int, A_X: Q, gamma: Q, killed: Optional[list] = None
) -> dict[int, QOption]:
    """Decide which pairing values q = q(l, m) the value model admits.

    For each q, c_X = 3a/q^2 and the Riemann-Roch polynomial must take
    integer values on the set of values of the quadratic form; the engine
    models that set as all even integers (even form) or all integers (odd
    form), the two a rank-2-hyperbolic-plus-hyperbolic sublattice realizes.
    A candidate q is admitted with the parities whose model passes the exact
    integer-valuedness test; parity EVEN means only the even model survives.
    Candidates range over 1 <= q <= floor(sqrt(3a)): any admitted q forces
    c_X = 3a/q^2 >= 3 through the leading-coefficient integrality, so the
    window is generous.  Kills go to `killed` as (q, parity, witness T).
    """
    A_X = Q(A_X)
    out: dict[int, QOption] = {}
    for q in range(1, isqrt(3 * a) + 1):
        c_X = Q(3 * a, q * q)
        rr = rr_from_cx_ax(c_X, A_X)
        if isinstance(rr, IrrationalCoefficient):
            if killed is not None:
                killed.append((q, "ANY", f"sqrt({rr.non_square}) irrational"))
            continue
        odd_ok = integer_valued_on(rr.base, 1, 0)
        even_ok = odd_ok or integer_valued_on(rr.base, 2, 0)
        if odd_ok:
            parity = UNCONSTRAINED
        elif even_ok:
            parity = EVEN
            if killed is not None:
                w = integrality_witness(rr.base, 2, 1)
                killed.append((q, "ODD", f"P_RR({w}) not an integer"))
        else:
            if killed is not None:
                w = integrality_witness(rr.base, 2, 0)
                killed.append((q, "EVEN", f"P_RR({w}) not an integer"))
            continue
        out[q] = QOption(q_lm=q, c_X=c_X, parity=parity, rr=rr)
    return out


def load_betti_table(path: Optional[str] = None) -> list[dict]:
    """Betti data file: JSON array of {"b2": int, "b3": int, "source": str}."""
    if path is None:
        text = resources.files("hk4.data").joinpath("betti.json").read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("Betti data file must be a JSON array")
    for entry in data:
        betti_profile(int(entry["b2"]), int(entry["b3"]))  # validate eagerly
    return data


def _betti_candidates(A_X: Q) -> list[tuple[int, int, int]]:
    """All (b2, b3, b4) the built-in constraints admit for this A_X.

    Scans b2 = 23 and 3 <= b2 <= 8 with b3 even and c4 >= 0; a candidate must
    produce a violation-free profile whose A_X matches.
    """
    found = []
    for b2 in list(range(3, 9)) + [23]:
        for b3 in range(0, 4 * b2 + 17, 2):
            try:
                prof = betti_profile(b2, b3)
            except ValueError:
                continue
            if prof.violations or prof.A_X != A_X:
                continue
            found.append(prof.triple)
    return found


def betti_options_for(A_X: Q, table: Sequence[dict]) -> tuple[list, list]:
    """Split the built-in candidate triples into (listed in data file, builtin only)."""
    listed_pairs = {(int(e["b2"]), int(e["b3"])) for e in table}
    in_table, builtin_only = [], []
    for triple in _betti_candidates(Q(A_X)):
        (in_table if (triple[0], triple[1]) in listed_pairs else builtin_only).append(triple)
    return in_table, builtin_only


def classify(
    a: int,
    betti_table: Optional[Sequence[dict]] = None,
    restrict_ax: Optional[Q] = None,
) -> CaseReport:
    """Full case analysis for one value of a: sqrt gate, b-window, q admissibility.

    Returns EMPTY with the complete kill trace, or the surviving solutions
    with their admitted pairings, forced Fujiki constants, value polynomials,
    and Betti options from the data table.
    """
    if a < 1:
        raise ValueError("a must be a positive integer")
    if betti_table is None:
        betti_table = load_betti_table()
    trace: list[TraceEntry] = []
    notes: list[str] = []

    sqrt_kills: list = []
    ax_values = sqrt_gate(a, killed=sqrt_kills)
    for n288, prod in sqrt_kills:
        trace.append(
            TraceEntry(
                stage="sqrt_gate",
                candidate=f"A_X={Q(n288, 288)}",
                constraint="288*a*A_X must be a perfect square (rationality of sqrt(2aA_X))",
                value=f"{prod} is not a perfect square",
            )
        )
    if restrict_ax is not None:
        restrict_ax = Q(restrict_ax)
        for ax in ax_values:
            if ax != restrict_ax:
                trace.append(
                    TraceEntry(
                        stage="restrict",
                        candidate=f"A_X={ax}",
                        constraint="A_X pinned by scenario override",
                        value=f"override A_X={restrict_ax}",
                    )
                )
        ax_values = [ax for ax in ax_values if ax == restrict_ax]

    solutions: list[Solution] = []
    killed_even_b = False
    for ax in ax_values:
        gamma_kills: list = []
        states = gamma_search(a, ax, killed=gamma_kills)
        for b, defect in gamma_kills:
            if is_integer(b) and int(b) % 2 == 0:
                killed_even_b = True
            trace.append(
                TraceEntry(
                    stage="gamma_search",
                    candidate=f"A_X={ax}, b={b}",
                    constraint="4*A_X - b^2/(2a) must be an integer",
                    value=f"{defect}",
                )
            )
        for state in states:
            q_kills: list = []
            q_options = admissible_qlm(a, ax, state.gamma, killed=q_kills)
            for q, parity, reason in q_kills:
                trace.append(
                    TraceEntry(
                        stage="admissible_qlm",
                        candidate=f"A_X={ax}, gamma={state.gamma}, q={q}, parity={parity}",
                        constraint="P_RR must be integer valued on the value model",
                        value=reason,
                    )
                )
            if not q_options:
                trace.append(
                    TraceEntry(
                        stage="admissible_qlm",
                        candidate=f"A_X={ax}, gamma={state.gamma}",
                        constraint="at least one admissible q(l, m)",
                        value="none",
                    )
                )
                continue
            in_table, builtin_only = betti_options_for(ax, betti_table)
            solutions.append(
                Solution(
                    state=state,
                    q_options=tuple(q_options[q] for q in sorted(q_options)),
                    betti_options=tuple(in_table),
                    betti_builtin_only=tuple(builtin_only),
                )
            )

    if solutions:
        bs = [s.state.b for s in solutions]
        if (
            a % 2 == 0
            and killed_even_b
            and all(is_integer(b) and int(b) % 2 == 1 for b in bs)
        ):
            notes.append("integrality of 4*A_X - b^2/(2a) forces b odd")
        for s in solutions:
            if s.betti_builtin_only:
                extra = ", ".join(str(t) for t in s.betti_builtin_only)
                note = (
                    f"Betti triples admitted by built-in constraints but absent from "
                    f"the data table for A_X={s.state.A_X}: {extra}"
                )
                if note not in notes:
                    notes.append(note)
    return CaseReport(
        a=a,
        verdict="SOLUTIONS" if solutions else "EMPTY",
        solutions=tuple(solutions),
        trace=tuple(trace),
        notes=tuple(notes),
    )


def squarefree_a_filter() -> frozenset[int]:
    """Square-free a for which some admissible N = 288*A_X makes a*N a square.

    For square-free a, a*N being a square is the same as a equaling the
    square-free part of N, so the filter is the set of square-free parts of
    the admissible values.  Every element is at most 262.
    """
    return frozenset(squarefree_part(n) for n in ADMISSIBLE_288AX)


def fujiki_degree_bound(n: int, a: int) -> Q:
    """Bound a*3^n*(2n)!/(2^n n!) on integral((l+m)^(2n)) after normalization.

    With -q(l,m) < q(m) <= q(l,m) one has q(l+m) <= 3 q(l,m), and the Fujiki
    relation turns that into the stated bound.
    """
    if n < 1 or a < 1:
        raise ValueError("fujiki_degree_bound requires n >= 1 and a >= 1")
    return Q(a) * 3**n * Q(math.factorial(2 * n), 2**n * math.factorial(n))
