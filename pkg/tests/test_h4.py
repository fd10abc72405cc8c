"""Degree-4 Hodge algebra and the three UNSAT certificates."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hk4.fujiki import fujiki4_pairing
from hk4.h4 import (
    LM,
    L2,
    M2,
    OMEGA,
    QDUAL,
    BoundaryWitness,
    H4Class,
    boundary_value,
    contracted_surface_certificate,
    h4_pair,
    intersection_matrix,
    lagrangian_plane_certificate,
    ns_product,
    primitive_integer_form,
    resultant,
    sigma_split_certificate,
)
from hk4.lattices import U
from hk4.rationals import Q, RatPoly, is_integer

small_rats = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def h4_classes():
    return st.builds(H4Class, small_rats, small_rats, small_rats, small_rats)


class TestPairing:
    def test_table(self):
        assert h4_pair(LM, QDUAL) == 25
        assert h4_pair(QDUAL, QDUAL) == 575
        assert h4_pair(L2, L2) == 0
        assert h4_pair(L2, M2) == 2
        assert h4_pair(LM, LM) == 2
        assert h4_pair(L2, LM) == 0
        assert h4_pair(M2, M2) == 0
        assert h4_pair(LM, M2) == 0
        assert h4_pair(L2, QDUAL) == 0
        assert h4_pair(M2, QDUAL) == 0

    def test_sigma_square_value(self):
        # <(1/2) lm + w (q-dual - (25/2) lm), same> = 1/2 + (525/2) w^2
        for w in (Q(0), Q(1, 5), Q(2, 5), Q(1), Q(-3, 5)):
            eta = H4Class(lm=Q(1, 2)) + H4Class(lm=-Q(25, 2), qdual=1).scale(w)
            assert h4_pair(eta, eta) == Q(1, 2) + Q(525, 2) * w * w

    @given(h4_classes(), h4_classes())
    @settings(max_examples=80)
    def test_symmetric(self, a, b):
        assert h4_pair(a, b) == h4_pair(b, a)

    @given(h4_classes(), h4_classes(), h4_classes(), small_rats)
    @settings(max_examples=80)
    def test_bilinear(self, a, b, c, t):
        left = h4_pair(a + b.scale(t), c)
        assert left == h4_pair(a, c) + t * h4_pair(b, c)

    def test_oracle_equivalence_with_fujiki4(self):
        rng = random.Random(20260810)
        for _ in range(50):
            alpha, beta, gamma, delta = (
                (rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(4)
            )
            assert h4_pair(ns_product(alpha, beta), ns_product(gamma, delta)) == fujiki4_pairing(
                3, U, alpha, beta, gamma, delta
            )


class TestIntersectionMatrix:
    def test_table(self):
        assert intersection_matrix(LM) == ((0, 2), (2, 0))
        assert intersection_matrix(QDUAL) == ((0, 25), (25, 0))
        assert intersection_matrix(L2) == ((0, 0), (0, 2))
        assert intersection_matrix(M2) == ((2, 0), (0, 0))

    def test_symmetric_and_integral_for_integral_classes(self):
        rng = random.Random(3)
        for _ in range(25):
            eta = ns_product(
                (rng.randint(-4, 4), rng.randint(-4, 4)),
                (rng.randint(-4, 4), rng.randint(-4, 4)),
            )
            m = intersection_matrix(eta)
            assert m[0][1] == m[1][0]
            assert all(is_integer(x) for row in m for x in row)


class TestBoundaryWitness:
    def test_default_witness(self):
        assert OMEGA.q() == 0
        assert OMEGA.x == OMEGA.y == 1

    def test_rejects_nonisotropic(self):
        with pytest.raises(ValueError):
            BoundaryWitness(1, 1, 1, 1)

    def test_rejects_negative_pairing(self):
        with pytest.raises(ValueError):
            BoundaryWitness(-1, 1, 1, 1)

    def test_values(self):
        assert boundary_value(LM, OMEGA) == 2
        assert boundary_value(QDUAL, OMEGA) == 0
        for w in (Q(0), Q(1, 5), Q(2)):
            eta = H4Class(lm=Q(1, 2)) - H4Class(lm=-Q(25, 2), qdual=1).scale(w)
            assert boundary_value(eta, OMEGA) == 1 + 25 * w

    def test_nontrivial_witness(self):
        # q = 2*2*1 + 2*2*(-1) = 0
        w = BoundaryWitness(2, 1, 2, -1)
        assert boundary_value(LM, w) == 2 * 1 * 2
        assert boundary_value(L2, w) == 2
        assert boundary_value(M2, w) == 8

    def test_positivity_is_not_an_identity(self):
        # nonnegativity against boundary classes is an effectivity assumption;
        # the pairing itself happily goes negative on non-effective classes
        assert boundary_value(LM.scale(-1), OMEGA) == -2


class TestResultantMachinery:
    def test_univariate_resultant(self):
        # Res of (x - 2)(x - 3) and (x - 3) styles: common root makes it vanish
        p = [Q(6), Q(-5), Q(1)]  # x^2 - 5x + 6
        q = [Q(-3), Q(1)]  # x - 3
        assert resultant(p, q, Q(0)) == 0
        q2 = [Q(-4), Q(1)]  # x - 4
        assert resultant(p, q2, Q(0)) == (4 - 2) * (4 - 3)

    def test_primitive_integer_form(self):
        p = RatPoly((0, 0, Q(-525, 7), Q(20, 7), Q(92, 7)))
        prim, k = primitive_integer_form(p)
        assert k == 2
        assert prim == RatPoly((-525, 20, 92))


class TestLagrangianPlane:
    def test_certificate(self):
        res = lagrangian_plane_certificate()
        assert res.status == "UNSAT"
        v = res.values
        assert v["quadratic"] == [Q(-525), Q(20), Q(92)]
        assert v["quadratic_resultant"] == [Q(-525), Q(20), Q(92)]
        assert v["roots"] == [Q(-5, 2), Q(105, 46)]
        assert v["integer_roots"] == []
        assert v["rational_roots"] == [Q(-5, 2), Q(105, 46)]
        assert v["discriminant"] == 193600 == 440**2

    def test_back_substitution(self):
        res = lagrangian_plane_certificate()
        back = res.values["back_substitution"]
        assert len(back) == 2 and all(b["consistent"] for b in back)
        # spot-check the x = -5/2 branch
        b = next(e for e in back if e["x"] == Q(-5, 2))
        assert (b["t"], b["u"]) == (Q(1, 2), Q(1, 20))


class TestContractedSurface:
    def test_certificate(self):
        res = contracted_surface_certificate()
        assert res.status == "UNSAT"
        cases = {c["t"]: c for c in res.values["cases"]}
        for t in (1, 2, 3, 4):
            c = cases[t]
            assert c["verdict"] == "UNSAT"
            assert c["forced_w"] == Q(t, 25)
            assert not is_integer(c["five_w"])
            assert c["M_S"] == ((t, -t), (-t, t))
            # 2 [S]^2 = 3 t^2 + 525 w^2
            assert c["two_S_sq"] == [3 * t * t, 0, 525]
            # boundary values t - 25w and 25w - t
            assert c["boundary_S"] == [t, -25]
            assert c["boundary_S_prime"] == [-t, 25]

    def test_probe_is_not_vacuous(self):
        res = contracted_surface_certificate()
        probe = next(c for c in res.values["cases"] if c["probe"])
        assert probe["t"] == 5
        assert probe["verdict"] == "SAT-candidate"
        assert probe["five_w"] == 1


class TestSigmaSplit:
    def test_certificate(self):
        res = sigma_split_certificate()
        assert res.status == "UNSAT"
        v = res.values
        assert v["sigma1_sq"] == [Q(1, 2), 0, Q(525, 2)]
        assert v["sigma2_sq"] == v["sigma1_sq"]
        assert v["sigma1_sigma2"] == [Q(1, 2), 0, Q(-525, 2)]
        assert v["two_sigma1_sq"] == [1, 0, 525]
        assert v["two_sigma1_sigma2"] == [1, 0, -525]
        assert v["boundary_sigma2"] == [1, -25]
        assert v["boundary_sigma1"] == [1, 25]
        assert v["w_min_integrality"] == Q(1, 5)
        assert v["w_max_witness"] == Q(1, 25)

    def test_both_kill_paths_fire(self):
        v = sigma_split_certificate().values
        by_w = {c["w"]: c for c in v["candidates"]}
        assert all(c["killed"] for c in v["candidates"])
        # w = 0: integrality kill (Sigma_1^2 = 1/2)
        assert any("integrality" in k for k in by_w[Q(0)]["kills"])
        # w = 2/5: 525 w^2 = 84 is even, integrality kill fires
        assert any("integrality" in k for k in by_w[Q(2, 5)]["kills"])
        # w = 1/5: 525 w^2 = 21 is an odd integer, so only the witness kills
        kills_15 = by_w[Q(1, 5)]["kills"]
        assert not any("integrality" in k for k in kills_15)
        assert any("witness" in k for k in kills_15)

    def test_sigma_sum_is_lm(self):
        # the two modeled classes always add up to the class of the surface lm,
        # and Sigma_1 . (Sigma_1 + Sigma_2) = Sigma_1 . lm = 1 for every w
        for w in (Q(0), Q(1, 5), Q(7, 5)):
            s1 = H4Class(lm=Q(1, 2)) + H4Class(lm=-Q(25, 2), qdual=1).scale(-w)
            s2 = H4Class(lm=Q(1, 2)) + H4Class(lm=-Q(25, 2), qdual=1).scale(w)
            assert s1 + s2 == LM
            assert h4_pair(s1, LM) == 1
