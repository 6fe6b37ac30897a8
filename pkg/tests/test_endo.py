from fractions import Fraction as F

import pytest
from mpmath import mp, mpc, mpf, pi

from motivedim import (Bounds, EndoField, KElement, compute_tor, detect_cm,
                       is_antisymmetric, k_basis_extraction, k_coefficient,
                       make_lattice)
from motivedim.endo import LogOracle, k_mul, k_trace

from conftest import AMBIENT, PREC, generic_log


class TestDetectCM:
    def test_gaussian(self, gauss, bounds):
        e = detect_cm(gauss, bounds)
        assert (e.dim_q, e.disc, e.certificate) == (2, -4, (1, 0, 1))

    def test_hexagonal(self, hexlat, bounds):
        e = detect_cm(hexlat, bounds)
        assert (e.dim_q, e.disc, e.certificate) == (2, -3, (1, -1, 1))

    def test_pi_i_lattice_is_generic(self, bounds):
        lat = make_lattice(mpc(1), pi * mpc(0, 1), PREC)
        assert detect_cm(lat, bounds).dim_q == 1

    def test_random_tau_is_generic(self, noncm, bounds):
        assert detect_cm(noncm, bounds).dim_q == 1

    def test_rational_tau_is_genuinely_cm(self, bounds):
        # (3 + 17i)/10 satisfies 50 tau^2 - 30 tau + 149 = 0: such rational
        # inputs are CM and must be reported as such
        lat = make_lattice(mpc(1), mpc(mpf(3) / 10, mpf(17) / 10), PREC)
        e = detect_cm(lat, bounds)
        assert e.dim_q == 2 and e.certificate == (50, -30, 149)

    def test_scale_invariance(self, gauss, bounds):
        base = detect_cm(gauss, bounds)
        for lam in (mpc(2), 1 + gauss.tau):
            lat2 = make_lattice(lam * gauss.omega1, lam * gauss.omega2, PREC)
            assert detect_cm(lat2, bounds) == base


class TestKElement:
    def test_antisymmetric_on_gaussian(self, gauss_endo):
        assert is_antisymmetric(KElement(F(0), F(1)), gauss_endo)
        assert not is_antisymmetric(KElement(F(1), F(1)), gauss_endo)

    def test_trace_arithmetic_on_disc_three(self, hexlat, bounds):
        e = detect_cm(hexlat, bounds)
        # alpha = 2 tau - 1: trace = 2*(-1) + 2*Tr(tau) = 0
        assert k_trace(KElement(F(-1), F(2)), e) == 0
        assert is_antisymmetric(KElement(F(-1), F(2)), e)

    def test_rational_field_never_antisymmetric(self, noncm_endo):
        assert not is_antisymmetric(KElement(F(3, 2)), noncm_endo)
        with pytest.raises(ValueError):
            is_antisymmetric(KElement(F(0)), noncm_endo)

    def test_mul(self, gauss_endo):
        i = KElement(F(0), F(1))
        assert k_mul(i, i, gauss_endo) == KElement(F(-1), F(0))


class TestKCoefficient:
    def test_planted_tau_multiple(self, gauss, gauss_endo, bounds, rng):
        y = generic_log(rng, gauss)
        assert k_coefficient(gauss.tau * y, y, gauss_endo, gauss, bounds) \
            == KElement(F(0), F(1))

    def test_planted_with_torsion_offset(self, gauss, gauss_endo, bounds, rng):
        y = generic_log(rng, gauss)
        x = (1 + gauss.tau) * y + gauss.omega1 / 2
        assert k_coefficient(x, y, gauss_endo, gauss, bounds) \
            == KElement(F(1), F(1))

    def test_generic_pair_has_none(self, gauss, gauss_endo, bounds, rng):
        assert k_coefficient(generic_log(rng, gauss), generic_log(rng, gauss),
                             gauss_endo, gauss, bounds) is None

    def test_transitivity(self, gauss, gauss_endo, bounds, rng):
        z = generic_log(rng, gauss)
        beta = KElement(F(1), F(2))       # y = beta z
        alpha = KElement(F(0), F(1))      # x = alpha y
        y = (1 + 2 * gauss.tau) * z
        x = gauss.tau * y
        a = k_coefficient(x, y, gauss_endo, gauss, bounds)
        b = k_coefficient(y, z, gauss_endo, gauss, bounds)
        c = k_coefficient(x, z, gauss_endo, gauss, bounds)
        assert (a, b) == (alpha, beta)
        assert c == k_mul(a, b, gauss_endo)

    def test_rational_coefficient_non_cm(self, noncm, noncm_endo, bounds, rng):
        y = generic_log(rng, noncm)
        x = 3 * y + noncm.omega2 / 5
        assert k_coefficient(x, y, noncm_endo, noncm, bounds) == KElement(F(3))


class TestBasisExtraction:
    def test_dependent_pair_keeps_first(self, gauss, gauss_endo, bounds, rng):
        p = generic_log(rng, gauss)
        assert k_basis_extraction([p, gauss.tau * p], gauss_endo, gauss,
                                  bounds) == [0]

    def test_generic_pair_keeps_both(self, gauss, gauss_endo, bounds, rng):
        vals = [generic_log(rng, gauss), generic_log(rng, gauss)]
        assert k_basis_extraction(vals, gauss_endo, gauss, bounds) == [0, 1]

    def test_planted_multiple_dropped(self, gauss, gauss_endo, bounds, rng):
        p1 = generic_log(rng, gauss)
        q = generic_log(rng, gauss)
        assert k_basis_extraction([p1, 2 * p1, q], gauss_endo, gauss,
                                  bounds) == [0, 2]

    def test_torsion_classes_never_kept(self, gauss, gauss_endo, bounds, rng):
        vals = [gauss.omega1 / 2, generic_log(rng, gauss)]
        assert k_basis_extraction(vals, gauss_endo, gauss, bounds) == [1]

    def test_stable_under_precision_doubling(self, gauss, gauss_endo, rng):
        with mp.workprec(650):
            p = generic_log(rng, gauss)
            vals = [p, gauss.tau * p, generic_log(rng, gauss)]
            k1 = k_basis_extraction(vals, gauss_endo, gauss,
                                    Bounds(256, 1000, 60))
            k2 = k_basis_extraction(vals, gauss_endo, gauss,
                                    Bounds(512, 1000, 60))
        assert k1 == k2 == [0, 2]


class TestComputeTor:
    def test_empty(self, noncm, noncm_endo, bounds):
        assert compute_tor([], noncm_endo, noncm, bounds) == 0

    def test_generic_value(self, noncm, noncm_endo, bounds, rng):
        v = noncm.omega1 + generic_log(rng, noncm)
        assert compute_tor([v], noncm_endo, noncm, bounds) == 0

    def test_planted_sum_to_period(self, noncm, noncm_endo, bounds, rng):
        v1 = generic_log(rng, noncm)
        assert compute_tor([v1, noncm.omega1 - v1], noncm_endo, noncm,
                           bounds) == 1

    def test_period_itself_counts(self, noncm, noncm_endo, bounds, rng):
        vals = [noncm.omega1, noncm.omega2, generic_log(rng, noncm)]
        assert compute_tor(vals, noncm_endo, noncm, bounds) == 2

    def test_cm_planted_is_at_most_one(self, gauss, gauss_endo, bounds):
        v = gauss.omega1 / (1 + gauss.tau)
        assert compute_tor([v], gauss_endo, gauss, bounds) == 1

    def test_dependent_values_rejected(self, gauss, gauss_endo, bounds, rng):
        p = generic_log(rng, gauss)
        with pytest.raises(ValueError):
            compute_tor([p, 2 * p], gauss_endo, gauss, bounds)


class TestLogOracleInternals:
    def test_torsion_orders(self, gauss, gauss_endo, bounds, rng):
        oc = LogOracle([gauss.omega1 / 2,
                        mpf(3) / 10 * gauss.omega1 + mpf(1) / 4 * gauss.omega2,
                        generic_log(rng, gauss)], gauss, gauss_endo, bounds)
        assert oc.torsion_order(0) == 2
        assert oc.torsion_order(1) == 20
        assert oc.torsion_order(2) is None

    def test_class_rank_matches_basis_size(self, gauss, gauss_endo, bounds,
                                           rng):
        p = generic_log(rng, gauss)
        oc = LogOracle([p, gauss.tau * p, generic_log(rng, gauss)],
                       gauss, gauss_endo, bounds)
        assert oc.class_rank([0, 1, 2]) == len(oc.basis_greedy()) == 2

    def test_period_in_k_span(self, gauss, gauss_endo, noncm, noncm_endo,
                              bounds, rng):
        v = gauss.omega1 / (1 + gauss.tau)
        oc = LogOracle([v], gauss, gauss_endo, bounds)
        # omega1 = (1 + tau) v: in the k-span; CM makes omega2 follow
        assert oc.period_in_k_span(0, [0]) and oc.period_in_k_span(1, [0])
        oc2 = LogOracle([generic_log(rng, noncm)], noncm, noncm_endo, bounds)
        assert not oc2.period_in_k_span(0, [0])
